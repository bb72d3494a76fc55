//! Reconstructing a linearized metric from a polynomial Weyl tensor, and the Poincare homotopy.

use ahmass::exactcore::field::{q, qr};
use ahmass::weylspace::space::build_wp;
use ahmass::weylspace::{linearized_riemann, poincare_homotopy, weyl_to_potential, PolyForm};
use ahmass::Poly;

fn main() -> ahmass::Result<()> {
    let ws = build_wp(4, 1);
    let w = ws.tensor(0).add(&ws.tensor(7).scale(&qr(-3, 2)));
    let h = weyl_to_potential(&w)?;
    println!("W in W_1 (n = 4): R(h) = -W/2 holds: {}", linearized_riemann(&h) == w.scale(&qr(-1, 2)));

    let mut f = PolyForm::zero(4, 2, 4);
    f.add_term(&[0, 2], &Poly::var(4, 1).mul(&Poly::var(4, 3)));
    f.add_term(&[3, 1], &Poly::var(4, 0).scale(&q(5)));
    let lhs = poincare_homotopy(&f)?.d().add(&poincare_homotopy(&f.d())?);
    println!("dI + Id = id on a 2-form: {}", lhs == f);
    Ok(())
}
