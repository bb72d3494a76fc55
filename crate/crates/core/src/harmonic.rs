//! Wave-harmonic polynomial spaces H_p, the harmonic decomposition, and the
//! invariant quadratic form on H_p.
//!
//! The invariant form pairs monomials diagonally with weight (alpha!/p!)(-1)^{alpha_0};
//! this is the full eta-contraction of the symmetric coefficient tensors.

use crate::error::{Error, Result};
use crate::exactcore::field::{binomial, factorial};
use crate::exactcore::linalg::{nullspace, signature_of_form, SparseMatrix};
use crate::exactcore::sphere::{minkowski_square, wave_operator};
use crate::exactcore::{monomials_of_degree, Field, Mono, Poly, Q};
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeMap;

#[derive(Clone, Debug)]
pub struct HarmonicSpace {
    pub n: usize,
    pub p: usize,
    pub basis: Vec<Poly<Q>>,
}

/// dim H_p = C(p+n-2, p)(2p+n-1)/(n-1).
pub fn dim_formula(n: usize, p: usize) -> usize {
    let (n, p) = (n as i64, p as i64);
    let b = binomial(p + n - 2, p) * (2 * p + n - 1) / (n - 1);
    b.to_string().parse().unwrap()
}

/// (C(p+n-1, n-1), C(p+n-2, n-1)).
pub fn signature_formula(n: usize, p: usize) -> (usize, usize) {
    let (n, p) = (n as i64, p as i64);
    let a = binomial(p + n - 1, n - 1).to_string().parse().unwrap();
    let b = binomial(p + n - 2, n - 1).to_string().parse().unwrap();
    (a, b)
}

fn parity(e: &[u8]) -> u32 {
    e.iter().enumerate().fold(0, |acc, (j, &a)| acc | (((a as u32) & 1) << j))
}

/// Basis of ker(wave operator) on degree-p polynomials in n+1 variables.
pub fn build_hp(n: usize, p: usize) -> HarmonicSpace {
    let n1 = n + 1;
    let monos = monomials_of_degree(n1, p);
    let mut classes: BTreeMap<u32, Vec<Mono>> = BTreeMap::new();
    for e in monos {
        classes.entry(parity(&e)).or_default().push(e);
    }
    let mut basis = Vec::new();
    for (_, cols) in classes {
        let mut row_ix: BTreeMap<Mono, usize> = BTreeMap::new();
        let mut entries: Vec<Vec<(usize, Q)>> = Vec::new();
        for (j, e) in cols.iter().enumerate() {
            let img = wave_operator(&Poly::monomial(e.clone(), Q::one()));
            for (m, c) in img.terms() {
                let nr = row_ix.len();
                let r = *row_ix.entry(m.clone()).or_insert(nr);
                if r == entries.len() {
                    entries.push(Vec::new());
                }
                entries[r].push((j, c.clone()));
            }
        }
        let mut mat = SparseMatrix::new(cols.len());
        for r in entries {
            mat.push_row(r);
        }
        for v in nullspace(&mat) {
            let mut poly = Poly::zero(n1);
            for (c, e) in v.iter().zip(&cols) {
                poly.add_term(e.clone(), c.clone());
            }
            basis.push(poly);
        }
    }
    HarmonicSpace { n, p, basis }
}

/// Decomposition P = sum_k eta^k H_k with H_k harmonic of degree d - 2k.
pub fn harmonic_components(p: &Poly<Q>) -> Result<Vec<Poly<Q>>> {
    let n1 = p.nvars();
    let d = match p.degree() {
        None => return Ok(vec![]),
        Some(d) => d,
    };
    if !p.is_homogeneous_of(d) {
        return Err(Error::Invalid("harmonic decomposition needs a homogeneous polynomial".into()));
    }
    let box_p = wave_operator(p);
    let g = if d >= 2 { harmonic_components(&box_p)? } else { vec![] };
    let eta = minkowski_square::<Q>(n1);
    let mut comps = vec![Poly::zero(n1)];
    let mut rest = Poly::zero(n1);
    let mut eta_k = Poly::one(n1);
    for (j, gj) in g.iter().enumerate() {
        let k = (j + 1) as i64;
        eta_k = eta_k.mul(&eta);
        let ck = Q::from_i64(2 * k * (n1 as i64 + 2 * d as i64 - 2 * k - 2));
        let hk = gj.scale(&ck.inv());
        rest = rest.add(&eta_k.mul(&hk));
        comps.push(hk);
    }
    comps[0] = p.sub(&rest);
    Ok(comps)
}

/// Returns (H, Q) with P = H + (X^mu X_mu) Q and H wave-harmonic.
pub fn harmonic_decompose(p: &Poly<Q>) -> Result<(Poly<Q>, Poly<Q>)> {
    let n1 = p.nvars();
    let comps = harmonic_components(p)?;
    if comps.is_empty() {
        return Ok((Poly::zero(n1), Poly::zero(n1)));
    }
    let eta = minkowski_square::<Q>(n1);
    let mut q = Poly::zero(n1);
    let mut eta_k = Poly::one(n1);
    for hk in comps.iter().skip(1) {
        q = q.add(&eta_k.mul(hk));
        eta_k = eta_k.mul(&eta);
    }
    Ok((comps[0].clone(), q))
}

/// Weight alpha!/p! (-1)^{alpha_0} of a monomial in the invariant form.
pub fn monomial_weight(e: &[u8]) -> Q {
    let p: u32 = e.iter().map(|&a| a as u32).sum();
    let num = e.iter().fold(num_bigint::BigInt::from(1), |acc, &a| acc * factorial(a as u32));
    let w = Q::new(num, factorial(p));
    if e[0] % 2 == 1 {
        -w
    } else {
        w
    }
}

/// Invariant symmetric form on homogeneous polynomials of equal degree.
pub fn invariant_form_q(p1: &Poly<Q>, p2: &Poly<Q>) -> Result<Q> {
    let (d1, d2) = (p1.degree(), p2.degree());
    if let (Some(a), Some(b)) = (d1, d2) {
        if a != b || !p1.is_homogeneous_of(a) || !p2.is_homogeneous_of(b) {
            return Err(Error::Invalid("inputs are not in the same H_p".into()));
        }
    }
    let mut s = Q::zero();
    for (e, c) in p1.terms() {
        let c2 = p2.coeff(e);
        if !c2.is_zero() {
            s += c * &c2 * monomial_weight(e);
        }
    }
    Ok(s)
}

/// Unweighted monomial form: distinct monomials orthogonal, norm (-1)^{alpha_0}.
pub fn unweighted_monomial_form(p1: &Poly<Q>, p2: &Poly<Q>) -> Q {
    let mut s = Q::zero();
    for (e, c) in p1.terms() {
        let c2 = p2.coeff(e);
        if !c2.is_zero() {
            let v = c * &c2;
            s += if e[0] % 2 == 1 { -v } else { v };
        }
    }
    s
}

pub fn gram_matrix(basis: &[Poly<Q>], form: impl Fn(&Poly<Q>, &Poly<Q>) -> Q) -> Vec<Vec<Q>> {
    basis.iter().map(|a| basis.iter().map(|b| form(a, b)).collect()).collect()
}

/// Signature of the invariant form on H_p, computed per reflection-parity class.
pub fn signature_hp(n: usize, p: usize) -> (usize, usize) {
    let sp = build_hp(n, p);
    sig_blocked(&sp.basis, |a, b| invariant_form_q(a, b).unwrap())
}

/// Signature of the unweighted monomial form on H_p (for comparison only).
pub fn signature_hp_unweighted(n: usize, p: usize) -> (usize, usize) {
    let sp = build_hp(n, p);
    sig_blocked(&sp.basis, unweighted_monomial_form)
}

fn sig_blocked(basis: &[Poly<Q>], form: impl Fn(&Poly<Q>, &Poly<Q>) -> Q) -> (usize, usize) {
    let mut classes: BTreeMap<u32, Vec<Poly<Q>>> = BTreeMap::new();
    for b in basis {
        let cls = b.terms().next().map(|(e, _)| parity(e)).unwrap_or(0);
        classes.entry(cls).or_default().push(b.clone());
    }
    let (mut pl, mut mi) = (0, 0);
    for (_, bs) in classes {
        let (a, b, _) = signature_of_form(&gram_matrix(&bs, &form)).expect("symmetric");
        pl += a;
        mi += b;
    }
    (pl, mi)
}

/// lambda with q((X^mu X_mu)^k Q) = lambda q(Q).
pub fn metric_multiplication_scaling(qp: &Poly<Q>, k: usize) -> Result<Q> {
    let base = invariant_form_q(qp, qp)?;
    if base.is_zero() {
        return Err(Error::Invalid("q(Q) = 0; use the polarized version".into()));
    }
    let eta_k = minkowski_square::<Q>(qp.nvars()).pow(k as u32);
    let m = eta_k.mul(qp);
    Ok(invariant_form_q(&m, &m)? / base)
}

/// Polarized scaling: q(m_k Q1, m_k Q2) / q(Q1, Q2).
pub fn metric_multiplication_scaling_polarized(q1: &Poly<Q>, q2: &Poly<Q>, k: usize) -> Result<Q> {
    let base = invariant_form_q(q1, q2)?;
    if base.is_zero() {
        return Err(Error::Invalid("q(Q1, Q2) = 0".into()));
    }
    let eta_k = minkowski_square::<Q>(q1.nvars()).pow(k as u32);
    Ok(invariant_form_q(&eta_k.mul(q1), &eta_k.mul(q2))? / base)
}

/// Max |Delta_b u - p(p+n-1) u| over sample points of the ball, u the restriction of P.
/// Uses 4th-order central differences with step 1e-3.
pub fn check_restriction_eigenfunction(p: &Poly<Q>, seed: u64) -> Result<f64> {
    let n1 = p.nvars();
    let n = n1 - 1;
    let deg = p.degree().unwrap_or(0);
    if !p.is_zero() && !p.is_homogeneous_of(deg) {
        return Err(Error::Invalid("polynomial must be homogeneous".into()));
    }
    let lambda = (deg * (deg + n - 1)) as f64;
    let u = |x: &[f64]| -> f64 {
        let r2: f64 = x.iter().map(|a| a * a).sum();
        let d = 1.0 - r2;
        let mut y = vec![(1.0 + r2) / d];
        y.extend(x.iter().map(|a| 2.0 * a / d));
        p.eval_f64(&y).0
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let h = 1e-3;
    let mut worst: f64 = 0.0;
    for _ in 0..20 {
        // rational point with |x| <= 3/4
        let x: Vec<f64> = loop {
            let c: Vec<f64> = (0..n).map(|_| rng.random_range(-40i64..=40) as f64 / 100.0).collect();
            if c.iter().map(|a| a * a).sum::<f64>() <= 0.5625 {
                break c;
            }
        };
        let r2: f64 = x.iter().map(|a| a * a).sum();
        if r2.sqrt() > 0.9 {
            return Err(Error::Invalid("sample point too close to the boundary".into()));
        }
        let u0 = u(&x);
        let mut lap = 0.0;
        let mut grad_dot_x = 0.0;
        for i in 0..n {
            let at = |t: f64| {
                let mut y = x.clone();
                y[i] += t;
                u(&y)
            };
            let (p1, m1, p2, m2) = (at(h), at(-h), at(2.0 * h), at(-2.0 * h));
            lap += (-p2 + 16.0 * p1 - 30.0 * u0 + 16.0 * m1 - m2) / (12.0 * h * h);
            let d1 = (-p2 + 8.0 * p1 - 8.0 * m1 + m2) / (12.0 * h);
            grad_dot_x += d1 * x[i];
        }
        let rho = (1.0 - r2) / 2.0;
        let lap_b = rho * rho * (lap + (n as f64 - 2.0) * 2.0 / (1.0 - r2) * grad_dot_x);
        worst = worst.max((lap_b - lambda * u0).abs());
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactcore::field::{q, qr};
    use crate::lorentz::hw::{highest_weight_vectors, z_coord};
    use crate::lorentz::{act_on_poly, algebra_act_on_poly, generators, AlgebraElement, LorentzElement};
    use crate::exactcore::{PolyTensor, GQ};

    #[test]
    fn dims_match_formula() {
        assert_eq!(build_hp(3, 0).basis.len(), 1);
        assert_eq!(build_hp(3, 1).basis.len(), 4);
        assert_eq!(build_hp(3, 2).basis.len(), 9);
        assert_eq!(build_hp(4, 2).basis.len(), 14);
        for n in 3..=5 {
            for p in 0..=4 {
                let sp = build_hp(n, p);
                assert_eq!(sp.basis.len(), dim_formula(n, p));
                for b in &sp.basis {
                    assert!(wave_operator(b).is_zero());
                }
            }
        }
    }

    #[test]
    fn decomposition_examples() {
        let n1 = 4;
        let x0 = Poly::<Q>::var(n1, 0);
        let (h, qq) = harmonic_decompose(&x0.pow(2)).unwrap();
        let eta = minkowski_square::<Q>(n1);
        assert_eq!(h, x0.pow(2).add(&eta.scale(&qr(1, 4))));
        assert_eq!(qq, Poly::constant(n1, qr(-1, 4)));
        let (h, qq) = harmonic_decompose(&eta).unwrap();
        assert!(h.is_zero());
        assert_eq!(qq, Poly::one(n1));
        for b in build_hp(3, 3).basis {
            let (h, qq) = harmonic_decompose(&b).unwrap();
            assert_eq!(h, b);
            assert!(qq.is_zero());
        }
    }

    #[test]
    fn decomposition_recursion_agrees_with_nullspace() {
        // every monomial splits into a harmonic part in the nullspace-built H_p
        let n = 4;
        for d in 2..=4 {
            let sp = build_hp(n, d);
            let ambient: Vec<_> = sp.basis.iter().map(|b| PolyTensor::scalar(b.clone(), n + 1)).collect();
            let mut ix = crate::exactcore::Indexer::new();
            let rows: Vec<_> = ambient.iter().map(|t| t.to_coords(&mut ix)).collect();
            for e in monomials_of_degree(n + 1, d) {
                let p = Poly::monomial(e, Q::one());
                let (h, qq) = harmonic_decompose(&p).unwrap();
                assert_eq!(h.add(&minkowski_square::<Q>(n + 1).mul(&qq)), p);
                assert!(wave_operator(&h).is_zero());
                let mut ix2 = ix.clone();
                let hv = PolyTensor::scalar(h, n + 1).to_coords(&mut ix2);
                let total = ix2.len();
                let sub = crate::exactcore::Subspace::new(total, &rows).unwrap();
                assert!(sub.contains(&hv));
            }
        }
    }

    #[test]
    fn signatures() {
        assert_eq!(signature_hp(3, 1), (3, 1));
        assert_eq!(signature_hp(3, 0), (1, 0));
        assert_eq!(signature_hp(3, 2), (6, 3));
        for n in 3..=5 {
            for p in 0..=4 {
                assert_eq!(signature_hp(n, p), signature_formula(n, p), "n={} p={}", n, p);
            }
        }
    }

    #[test]
    fn invariant_form_is_invariant() {
        for n in [3, 4] {
            for p in 0..=3 {
                let sp = build_hp(n, p);
                for g in generators(n) {
                    let a = AlgebraElement::<Q>::from_generator(n, g);
                    let acted: Vec<_> = sp.basis.iter().map(|b| algebra_act_on_poly(&a, b)).collect();
                    for i in 0..sp.basis.len() {
                        for j in 0..sp.basis.len() {
                            let r = invariant_form_q(&acted[i], &sp.basis[j]).unwrap()
                                + invariant_form_q(&sp.basis[i], &acted[j]).unwrap();
                            assert!(r.is_zero());
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn unweighted_form_is_not_invariant() {
        let x0 = Poly::<Q>::var(2, 0);
        let x1 = Poly::<Q>::var(2, 1);
        let a = AlgebraElement::<Q>::boost(1, 1);
        let p1 = x0.pow(2);
        let p2 = x0.mul(&x1);
        let r = unweighted_monomial_form(&algebra_act_on_poly(&a, &p1), &p2)
            + unweighted_monomial_form(&p1, &algebra_act_on_poly(&a, &p2));
        assert!(!r.is_zero());
    }

    #[test]
    fn group_action_preserves_hp() {
        let b = LorentzElement::rational_boost(3, 2, qr(13, 12), qr(5, 12)).unwrap();
        for p in build_hp(3, 3).basis {
            assert!(wave_operator(&act_on_poly(&b, &p)).is_zero());
        }
    }

    #[test]
    fn scaling_positive() {
        assert_eq!(metric_multiplication_scaling(&Poly::one(4), 0).unwrap(), q(1));
        let l = metric_multiplication_scaling(&Poly::one(4), 1).unwrap();
        assert!(l > q(0));
        let sp = build_hp(3, 2);
        let mut vals = Vec::new();
        for b in &sp.basis {
            if let Ok(v) = metric_multiplication_scaling(b, 2) {
                vals.push(v);
            }
        }
        assert!(vals.windows(2).all(|w| w[0] == w[1]));
        assert!(vals[0] > q(0));
        let null = z_coord(3, -1).poly().map_coeffs(|c| c.re.clone());
        assert!(metric_multiplication_scaling(&null, 1).is_err());
    }

    #[test]
    fn highest_weights_of_hp() {
        for p in 0..=3 {
            let sp = build_hp(3, p);
            let basis: Vec<_> = sp.basis.iter().map(|b| PolyTensor::scalar(b.to_gq(), 4)).collect();
            let hw = highest_weight_vectors(3, &basis, &[p as i64, 0]).unwrap();
            assert_eq!(hw.len(), 1);
            let z = z_coord(3, -1).poly().pow(p as u32);
            let lead = vec![p as u8, 0, 0, 0];
            let c = hw[0].comps[0].coeff(&lead);
            assert_eq!(hw[0].comps[0], z.scale(&c));
            let _ = GQ::one();
        }
    }

    #[test]
    fn eigenfunction_residuals() {
        let one = Poly::<Q>::one(4);
        assert!(check_restriction_eigenfunction(&one, 1).unwrap() < 1e-12);
        let x0 = Poly::<Q>::var(4, 0);
        assert!(check_restriction_eigenfunction(&x0, 2).unwrap() < 1e-6);
        for b in build_hp(3, 2).basis {
            assert!(check_restriction_eigenfunction(&b, 3).unwrap() < 1e-5);
        }
    }
}
