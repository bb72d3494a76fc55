//! Rational Lorentz boosts acting on the ball, the sphere and polynomials.

use ahmass::exactcore::field::{q, q_string, qr};
use ahmass::lorentz::{act_on_poly, algebra_act_on_poly, ball_action, sphere_action, u_of_a, AlgebraElement, LorentzElement};
use ahmass::Poly;

fn show(v: &[ahmass::Q]) -> String {
    format!("({})", v.iter().map(q_string).collect::<Vec<_>>().join(", "))
}

fn main() -> ahmass::Result<()> {
    let n = 3;
    let a = LorentzElement::rational_boost(n, 1, qr(5, 4), qr(3, 4))?;
    let x = vec![qr(1, 3), q(0), qr(1, 4)];
    println!("ball point {} -> {}", show(&x), show(&ball_action(&a, &x)?));
    let s = vec![q(0), q(1), q(0)];
    println!("sphere point {} -> {}, conformal factor {}", show(&s), show(&sphere_action(&a, &s)), u_of_a(&a, &s));

    let p = Poly::var(n + 1, 0).mul(&Poly::var(n + 1, 1));
    println!("A.(X^0 X^1) = {}", act_on_poly(&a, &p));
    let boost = AlgebraElement::<ahmass::Q>::boost(n, 1);
    println!("a_1.(X^0 X^1) = {}", algebra_act_on_poly(&boost, &p));
    let r = AlgebraElement::<ahmass::Q>::rotation(n, 2, 3);
    println!("r_23.X^2 = {}", algebra_act_on_poly(&r, &Poly::var(n + 1, 2)));
    Ok(())
}
