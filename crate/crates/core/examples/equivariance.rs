//! Exact infinitesimal and quadrature-based finite equivariance of the conformal mass.

use ahmass::exactcore::field::qr;
use ahmass::invariants::{check_equivariance_all, check_equivariance_finite, equivariance_residual_unchecked, Family};
use ahmass::lorentz::{Generator, LorentzElement};
use ahmass::massaspect::{random_transverse, SphereTensor};

fn main() -> ahmass::Result<()> {
    let n = 3;
    for n1 in 0..=2 {
        let m = random_transverse(n, Family::Conformal.weight(n, n1), 17 + n1 as u64)?;
        let all_zero = check_equivariance_all(Family::Conformal, &m, n1)?.iter().all(|(_, r)| r.is_zero());
        let a = LorentzElement::rational_boost(n, 1, qr(13, 12), qr(5, 12))?;
        let finite = check_equivariance_finite(Family::Conformal, &m, n1, &a, 64)?;
        println!("n1 = {n1}: infinitesimal residuals all zero {all_zero}; finite residual {finite:.2e}");

        // negative control: the wrong decay order breaks equivariance
        let wrong = SphereTensor { k: m.k + 1, ..m.clone() };
        let r = equivariance_residual_unchecked(Family::Conformal, &wrong, n1, Generator::Boost(1))?;
        println!("        wrong weight: {} of {} basis values nonzero", r.nonzero, r.checked);
    }
    Ok(())
}
