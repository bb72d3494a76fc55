//! Wave-harmonic polynomials H_p: dimensions, signatures and the harmonic decomposition.

use ahmass::exactcore::field::q;
use ahmass::harmonic::{build_hp, dim_formula, harmonic_decompose, signature_formula, signature_hp};
use ahmass::Poly;

fn main() -> ahmass::Result<()> {
    let n: usize = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(3);
    println!("{:>3} {:>5} {:>10} {:>12}", "p", "dim", "signature", "closed form");
    for p in 0..=5 {
        let dim = build_hp(n, p).basis.len();
        let sig = signature_hp(n, p);
        println!("{:>3} {:>5} {:>10} {:>12}", p, dim, format!("{:?}", sig), format!("{} {:?}", dim_formula(n, p), signature_formula(n, p)));
    }

    // (X^1)^2 = H + (X.X) Q with H wave-harmonic
    let x1 = Poly::var(n + 1, 1);
    let (h, rest) = harmonic_decompose(&x1.mul(&x1))?;
    println!("(X^1)^2 = [{}] + (X.X) [{}]", h, rest);
    assert_eq!(rest, Poly::constant(n + 1, q(1) / q(n as i64 + 1)));
    Ok(())
}
