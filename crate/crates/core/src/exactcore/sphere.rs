//! Exact integration on the unit sphere and reductions modulo the two fixed quadrics.

use super::field::{Field, Q};
use super::poly::Poly;
use num_bigint::BigInt;

/// Mean value of x^alpha over S^{n-1}, n = alpha.len(); relative to Vol(S^{n-1}).
pub fn sphere_monomial_integral(alpha: &[u8]) -> Q {
    let n = alpha.len() as i64;
    if alpha.iter().any(|a| a % 2 == 1) {
        return Q::zero();
    }
    let mut num = BigInt::from(1);
    for &a in alpha {
        // (a-1)!!
        let mut k = a as i64 - 1;
        while k > 1 {
            num *= k;
            k -= 2;
        }
    }
    let total: i64 = alpha.iter().map(|&a| a as i64).sum();
    let mut den = BigInt::from(1);
    let mut k = n;
    while k <= n + total - 2 {
        den *= k;
        k += 2;
    }
    Q::new(num, den)
}

/// Mean value over S^{n-1} of a polynomial in x^1..x^n.
pub fn sphere_integral<C: Field>(p: &Poly<C>) -> C {
    let mut s = C::zero();
    for (e, c) in p.terms() {
        let w = sphere_monomial_integral(e);
        if !w.is_zero() {
            s.add_assign(&c.mul_q(&w));
        }
    }
    s
}

/// True when p restricted to the unit sphere is identically zero (mean of |p|^2 vanishes).
pub fn vanishes_on_sphere<C: Field>(p: &Poly<C>) -> bool {
    if p.is_zero() {
        return true;
    }
    let conj = p.map_coeffs(|c| c.conj());
    sphere_integral(&p.mul(&conj)).is_zero()
}

/// Canonical remainder modulo |x|^2 - 1: eliminates (x^n)^2.
pub fn sphere_normal_form<C: Field>(p: &Poly<C>) -> Poly<C> {
    let n = p.nvars();
    let last = n - 1;
    let mut out = Poly::zero(n);
    // (x_n)^2 -> 1 - sum_{i<n} x_i^2
    let mut sub = Poly::one(n);
    for i in 0..last {
        sub = sub.sub(&Poly::var(n, i).pow(2));
    }
    let mut powers = vec![Poly::one(n)];
    for (e, c) in p.terms() {
        let a = e[last] as usize;
        let half = a / 2;
        while powers.len() <= half {
            let nx = powers.last().unwrap().mul(&sub);
            powers.push(nx);
        }
        let mut rest = e.clone();
        rest[last] = (a % 2) as u8;
        let base = Poly::monomial(rest, c.clone());
        out.add_scaled(&base.mul(&powers[half]), &C::one());
    }
    out
}

/// Remainder modulo 1 + X^mu X_mu (unit hyperboloid): eliminates (X^0)^2.
pub fn hyperboloid_normal_form<C: Field>(p: &Poly<C>) -> Poly<C> {
    let n1 = p.nvars();
    let mut sub = Poly::one(n1);
    for i in 1..n1 {
        sub = sub.add(&Poly::var(n1, i).pow(2));
    }
    let mut powers = vec![Poly::one(n1)];
    let mut out = Poly::zero(n1);
    for (e, c) in p.terms() {
        let a = e[0] as usize;
        let half = a / 2;
        while powers.len() <= half {
            let nx = powers.last().unwrap().mul(&sub);
            powers.push(nx);
        }
        let mut rest = e.clone();
        rest[0] = (a % 2) as u8;
        let base = Poly::monomial(rest, c.clone());
        out.add_scaled(&base.mul(&powers[half]), &C::one());
    }
    out
}

/// Wave operator -d0^2 + sum_i di^2 on polynomials in X^0..X^n.
pub fn wave_operator<C: Field>(p: &Poly<C>) -> Poly<C> {
    let mut r = p.deriv(0).deriv(0).neg();
    for i in 1..p.nvars() {
        r = r.add(&p.deriv(i).deriv(i));
    }
    r
}

/// Euclidean Laplacian.
pub fn laplacian<C: Field>(p: &Poly<C>) -> Poly<C> {
    let mut r = Poly::zero(p.nvars());
    for i in 0..p.nvars() {
        r = r.add(&p.deriv(i).deriv(i));
    }
    r
}

/// Minkowski square X^mu X_mu.
pub fn minkowski_square<C: Field>(n1: usize) -> Poly<C> {
    let mut r = Poly::var(n1, 0).pow(2).neg();
    for i in 1..n1 {
        r = r.add(&Poly::var(n1, i).pow(2));
    }
    r
}

/// Euclidean |x|^2.
pub fn euclid_square<C: Field>(n: usize) -> Poly<C> {
    let mut r = Poly::zero(n);
    for i in 0..n {
        r = r.add(&Poly::var(n, i).pow(2));
    }
    r
}

/// Substitution X^0 -> 1, X^i -> x^i turning an ambient polynomial into P(1, x).
pub fn restrict_to_sphere<C: Field>(p: &Poly<C>) -> Poly<C> {
    p.dehomogenize()
}

/// Vol(S^{n-1}) in floating point, for display.
pub fn sphere_volume(n: usize) -> f64 {
    // Vol(S^0)=2, Vol(S^1)=2pi, Vol(S^{k+1}) = 2pi/k Vol(S^{k-1})
    let mut v = [2.0, 2.0 * std::f64::consts::PI];
    if n == 1 {
        return v[0];
    }
    let mut dim = 1;
    while dim < n - 1 {
        let next = 2.0 * std::f64::consts::PI / dim as f64 * v[(dim - 1) % 2];
        v[(dim + 1) % 2] = next;
        dim += 1;
    }
    v[(n - 1) % 2]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactcore::field::{q, qr};

    /// Recursion mean(f) = mean(Laplacian f) / (d (d + n - 2)) for homogeneous f of degree d.
    fn divergence_oracle(p: &Poly<Q>) -> Q {
        let n = p.nvars() as i64;
        let mut total = Q::zero();
        let mut byd: std::collections::BTreeMap<usize, Poly<Q>> = Default::default();
        for (e, c) in p.terms() {
            let d: usize = e.iter().map(|&a| a as usize).sum();
            byd.entry(d).or_insert_with(|| Poly::zero(p.nvars())).add_term(e.clone(), c.clone());
        }
        for (d, f) in byd {
            if d == 0 {
                total += f.coeff(&vec![0; p.nvars()]);
            } else if d % 2 == 0 {
                let d = d as i64;
                total += divergence_oracle(&laplacian(&f)) / q(d * (d + n - 2));
            }
        }
        total
    }

    #[test]
    fn spec_values() {
        assert_eq!(sphere_monomial_integral(&[0, 0, 0]), q(1));
        assert_eq!(sphere_monomial_integral(&[2, 0, 0]), qr(1, 3));
        assert_eq!(sphere_monomial_integral(&[4, 0, 0]), qr(1, 5));
        assert_eq!(sphere_monomial_integral(&[2, 2, 0]), qr(1, 15));
    }

    #[test]
    fn closed_form_matches_divergence_recursion() {
        for n in 2..6usize {
            for d in 0..7 {
                for e in crate::exactcore::poly::monomials_of_degree(n, d) {
                    let p = Poly::<Q>::monomial(e.clone(), q(1));
                    assert_eq!(sphere_monomial_integral(&e), divergence_oracle(&p), "{:?}", e);
                }
            }
        }
    }

    #[test]
    fn sphere_vanishing() {
        let r2 = euclid_square::<Q>(3);
        let ideal = r2.sub(&Poly::one(3));
        assert!(vanishes_on_sphere(&ideal));
        assert!(!vanishes_on_sphere(&Poly::<Q>::var(3, 0)));
        let m = ideal.mul(&Poly::var(3, 0)).mul(&Poly::var(3, 1));
        assert!(vanishes_on_sphere(&m));
        assert!(sphere_normal_form(&m).is_zero());
    }

    #[test]
    fn hyperboloid_forms() {
        let s = minkowski_square::<Q>(4);
        assert_eq!(hyperboloid_normal_form(&s), Poly::constant(4, q(-1)));
        let x0sq = Poly::<Q>::var(4, 0).pow(2);
        let expect = Poly::one(4).add(&euclid_square::<Q>(4)).sub(&x0sq);
        assert_eq!(hyperboloid_normal_form(&x0sq), expect);
    }

    #[test]
    fn wave_values() {
        let x0 = Poly::<Q>::var(4, 0);
        let x1 = Poly::<Q>::var(4, 1);
        assert!(wave_operator(&x0.mul(&x1)).is_zero());
        assert_eq!(wave_operator(&x0.pow(2)), Poly::constant(4, q(-2)));
        assert_eq!(wave_operator(&minkowski_square::<Q>(4)), Poly::constant(4, q(8)));
    }

    #[test]
    fn volumes() {
        assert!((sphere_volume(3) - 4.0 * std::f64::consts::PI).abs() < 1e-12);
        assert!((sphere_volume(4) - 2.0 * std::f64::consts::PI.powi(2)).abs() < 1e-12);
        assert!((sphere_volume(2) - 2.0 * std::f64::consts::PI).abs() < 1e-12);
    }
}
