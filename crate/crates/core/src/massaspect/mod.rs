//! Mass-aspect tensors on S^{n-1} and the Lorentz actions of weight k.
//!
//! Tensors are ambient polynomial 2-tensors in x^1..x^n; equalities are taken modulo |x|^2 = 1.

pub mod input;
pub mod quadrature;

pub use input::{load_mass_aspect, parse_mass_aspect, MassAspectFile};
pub use quadrature::SphereQuadrature;

use crate::error::{Error, Result};
use crate::exactcore::field::{q, qr};
use crate::exactcore::{sphere_normal_form, Field, Poly, PolyTensor, Q};
use crate::lorentz::LorentzElement;
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

/// Symmetric 2-tensor on S^{n-1} with decay order k.
#[derive(Clone, Debug, PartialEq)]
pub struct SphereTensor {
    pub n: usize,
    pub k: u32,
    pub m: PolyTensor<Q>,
}

/// Ambient polynomial vector field on R^n.
#[derive(Clone, Debug, PartialEq)]
pub struct TangentField {
    pub n: usize,
    pub v: Vec<Poly<Q>>,
}

fn reduce(t: &PolyTensor<Q>) -> PolyTensor<Q> {
    t.map(sphere_normal_form)
}

fn x(n: usize, i: usize) -> Poly<Q> {
    Poly::var(n, i)
}

/// Projection P = delta - x (x) x.
fn projector(n: usize) -> Vec<Vec<Poly<Q>>> {
    (0..n)
        .map(|a| {
            (0..n)
                .map(|b| {
                    let xx = x(n, a).mul(&x(n, b));
                    if a == b {
                        Poly::one(n).sub(&xx)
                    } else {
                        xx.neg()
                    }
                })
                .collect()
        })
        .collect()
}

/// P T P for a 2-tensor.
fn project2(t: &PolyTensor<Q>) -> PolyTensor<Q> {
    let n = t.dim;
    let p = projector(n);
    let mut half = PolyTensor::zero(n, 2, n);
    for i in 0..n {
        for b in 0..n {
            let mut s = Poly::zero(n);
            for a in 0..n {
                s = s.add(&p[i][a].mul(t.get(&[a, b])));
            }
            half.set(&[i, b], sphere_normal_form(&s));
        }
    }
    let mut out = PolyTensor::zero(n, 2, n);
    for i in 0..n {
        for j in 0..n {
            let mut s = Poly::zero(n);
            for b in 0..n {
                s = s.add(&half.get(&[i, b]).mul(&p[b][j]));
            }
            out.set(&[i, j], sphere_normal_form(&s));
        }
    }
    out
}

impl TangentField {
    pub fn new(v: Vec<Poly<Q>>) -> Result<Self> {
        let n = v.len();
        let f = TangentField { n, v };
        if !f.is_tangent() {
            return Err(Error::Invalid("vector field is not tangent to the sphere".into()));
        }
        Ok(f)
    }

    pub fn is_tangent(&self) -> bool {
        let mut s = Poly::zero(self.n);
        for (i, c) in self.v.iter().enumerate() {
            s = s.add(&c.mul_var(i));
        }
        sphere_normal_form(&s).is_zero()
    }

    /// Boost field (1+|x|^2)/2 d_i - x^i x^a d_a, i 1-based.
    pub fn boost(n: usize, i: usize) -> Self {
        let i = i - 1;
        let mut half = Poly::one(n);
        for a in 0..n {
            half = half.add(&x(n, a).pow(2));
        }
        let half = half.scale(&Q::new(1.into(), 2.into()));
        let v = (0..n)
            .map(|a| {
                let t = x(n, i).mul(&x(n, a)).neg();
                if a == i {
                    t.add(&half)
                } else {
                    t
                }
            })
            .collect();
        TangentField { n, v }
    }

    /// Rotation field x^i d_j - x^j d_i, indices 1-based.
    pub fn rotation(n: usize, i: usize, j: usize) -> Self {
        let mut v = vec![Poly::zero(n); n];
        v[j - 1] = x(n, i - 1);
        v[i - 1] = x(n, j - 1).neg();
        TangentField { n, v }
    }

    pub fn apply(&self, f: &Poly<Q>) -> Poly<Q> {
        let mut s = Poly::zero(self.n);
        for (a, c) in self.v.iter().enumerate() {
            s = s.add(&c.mul(&f.deriv(a)));
        }
        s
    }

    pub fn bracket(&self, o: &Self) -> Self {
        let v = (0..self.n).map(|c| self.apply(&o.v[c]).sub(&o.apply(&self.v[c]))).collect();
        TangentField { n: self.n, v }
    }

    pub fn sub(&self, o: &Self) -> Self {
        TangentField { n: self.n, v: self.v.iter().zip(&o.v).map(|(a, b)| a.sub(b)).collect() }
    }

    pub fn reduced(&self) -> Self {
        TangentField { n: self.n, v: self.v.iter().map(sphere_normal_form).collect() }
    }
}

/// Covariant derivative of a function: X(f).
pub fn covariant_derivative_scalar(f: &Poly<Q>, x: &TangentField) -> Result<Poly<Q>> {
    if !x.is_tangent() {
        return Err(Error::Invalid("direction is not tangent".into()));
    }
    Ok(sphere_normal_form(&x.apply(f)))
}

/// Tangential part P V.
pub fn project_vector(v: &TangentField) -> TangentField {
    let n = v.n;
    let p = projector(n);
    let out = (0..n)
        .map(|i| {
            let mut s = Poly::zero(n);
            for a in 0..n {
                s = s.add(&p[i][a].mul(&v.v[a]));
            }
            sphere_normal_form(&s)
        })
        .collect();
    TangentField { n, v: out }
}

/// Levi-Civita derivative of a tangent field on the sphere: P (D_X V).
pub fn covariant_derivative_vector(v: &TangentField, x: &TangentField) -> Result<TangentField> {
    if !x.is_tangent() {
        return Err(Error::Invalid("direction is not tangent".into()));
    }
    let dv = TangentField { n: v.n, v: v.v.iter().map(|c| x.apply(c)).collect() };
    Ok(project_vector(&dv))
}

/// Levi-Civita derivative of a covariant 2-tensor restricted to the sphere:
/// P P [X(T_ab) - X_a T(x, .)_b - X_b T(., x)_a].
pub fn covariant_derivative_tensor(t: &PolyTensor<Q>, x: &TangentField) -> Result<PolyTensor<Q>> {
    if !x.is_tangent() {
        return Err(Error::Invalid("direction is not tangent".into()));
    }
    let n = t.dim;
    let mut tx = vec![Poly::zero(n); n];
    let mut xt = vec![Poly::zero(n); n];
    for a in 0..n {
        for c in 0..n {
            tx[a] = tx[a].add(&t.get(&[c, a]).mul_var(c));
            xt[a] = xt[a].add(&t.get(&[a, c]).mul_var(c));
        }
    }
    let mut raw = PolyTensor::zero(n, 2, n);
    for a in 0..n {
        for b in 0..n {
            let s = x.apply(t.get(&[a, b])).sub(&x.v[a].mul(&tx[b])).sub(&x.v[b].mul(&xt[a]));
            raw.set(&[a, b], sphere_normal_form(&s));
        }
    }
    Ok(project2(&raw))
}

/// Equality of two 2-tensors as tangential tensors on the sphere.
pub fn tangentially_equal(a: &PolyTensor<Q>, b: &PolyTensor<Q>) -> bool {
    project2(&a.sub(b)).is_zero()
}

impl SphereTensor {
    pub fn new(n: usize, k: u32, m: PolyTensor<Q>) -> Result<Self> {
        if m.dim != n || m.rank != 2 || m.nvars != n {
            return Err(Error::Invalid("mass aspect must be a rank-2 tensor in n variables".into()));
        }
        if m != m.permute(&[1, 0]) {
            return Err(Error::Invalid("mass aspect is not symmetric".into()));
        }
        if k == 0 {
            return Err(Error::Invalid("decay order k must be positive".into()));
        }
        Ok(SphereTensor { n, k, m })
    }

    /// Round metric delta - x (x) x.
    pub fn round(n: usize, k: u32) -> Self {
        let p = projector(n);
        let mut m = PolyTensor::zero(n, 2, n);
        for a in 0..n {
            for b in 0..n {
                m.set(&[a, b], p[a][b].clone());
            }
        }
        SphereTensor { n, k, m }
    }

    pub fn with_tensor(&self, m: PolyTensor<Q>) -> Self {
        SphereTensor { n: self.n, k: self.k, m }
    }

    /// m(x, .) vanishes on the sphere.
    pub fn is_transverse(&self) -> bool {
        (0..self.n).all(|i| {
            let mut s = Poly::zero(self.n);
            for j in 0..self.n {
                s = s.add(&self.m.get(&[i, j]).mul_var(j));
            }
            sphere_normal_form(&s).is_zero()
        })
    }

    /// Trace against the round metric: sum m_ii - m(x, x).
    pub fn sigma_trace(&self) -> Poly<Q> {
        let n = self.n;
        let mut s = Poly::zero(n);
        for i in 0..n {
            s = s.add(self.m.get(&[i, i]));
            for j in 0..n {
                s = s.sub(&self.m.get(&[i, j]).mul_var(i).mul_var(j));
            }
        }
        sphere_normal_form(&s)
    }

    /// Equality as tensors on the sphere.
    pub fn equals_on_sphere(&self, o: &SphereTensor) -> bool {
        reduce(&self.m.sub(&o.m)).is_zero()
    }

    pub fn reduced(&self) -> Self {
        self.with_tensor(reduce(&self.m))
    }

    fn require_transverse(&self) -> Result<()> {
        if self.is_transverse() {
            Ok(())
        } else {
            Err(Error::Invalid("mass aspect is not transverse; apply transversalize first".into()))
        }
    }
}

/// Leading-order adjustment to a transverse tensor:
/// m_ij - m_aj x^a x_i - m_ia x^a x_j + m_ab x^a x^b ((k-1) x_i x_j + delta_ij) / k.
pub fn transversalize(m: &SphereTensor) -> Result<SphereTensor> {
    if m.k == 0 {
        return Err(Error::Invalid("decay order k must be positive".into()));
    }
    let n = m.n;
    let k = q(m.k as i64);
    let t = &m.m;
    let mut mx = vec![Poly::zero(n); n];
    let mut mxx = Poly::zero(n);
    for i in 0..n {
        for a in 0..n {
            mx[i] = mx[i].add(&t.get(&[a, i]).mul_var(a));
        }
        mxx = mxx.add(&mx[i].mul_var(i));
    }
    let mxx_k = mxx.scale(&(Q::from_i64(1) / &k));
    let mut out = PolyTensor::zero(n, 2, n);
    for i in 0..n {
        for j in 0..n {
            let mut c = t.get(&[i, j]).sub(&mx[j].mul_var(i)).sub(&mx[i].mul_var(j));
            let mut tail = x(n, i).mul(&x(n, j)).scale(&(&k - q(1)));
            if i == j {
                tail = tail.add(&Poly::one(n));
            }
            c = c.add(&mxx_k.mul(&tail));
            out.set(&[i, j], sphere_normal_form(&c));
        }
    }
    Ok(m.with_tensor(out))
}

/// Seeded random transverse mass aspect: sparse rational entries of degree at most 2, then transversalized.
pub fn random_transverse(n: usize, k: u32, seed: u64) -> Result<SphereTensor> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut t = PolyTensor::<Q>::zero(n, 2, n);
    for a in 0..n {
        for b in a..n {
            let mut p = Poly::zero(n);
            for _ in 0..2 {
                let mut e = vec![0u8; n];
                e[rng.random_range(0..n)] += rng.random_range(0..2u8);
                e[rng.random_range(0..n)] += rng.random_range(0..2u8);
                p.add_term(e, qr(rng.random_range(-5..6), rng.random_range(1..4)));
            }
            t.set(&[a, b], p.clone());
            t.set(&[b, a], p);
        }
    }
    transversalize(&SphereTensor::new(n, k, t)?)
}

/// a_i . m = -nabla_{a_i} m + k x^i m, i 1-based.
pub fn boost_action(i: usize, m: &SphereTensor) -> Result<SphereTensor> {
    if i == 0 || i > m.n {
        return Err(Error::Invalid(format!("boost direction {} outside 1..={}", i, m.n)));
    }
    m.require_transverse()?;
    let field = TangentField::boost(m.n, i);
    let d = covariant_derivative_tensor(&m.m, &field)?;
    let w = m.m.mul_poly(&x(m.n, i - 1)).scale(&q(m.k as i64));
    Ok(m.with_tensor(reduce(&w.sub(&d))))
}

/// (m(r., .))_ab = delta_ai m_jb - delta_aj m_ib.
fn rotated_slot(m: &PolyTensor<Q>, i: usize, j: usize) -> PolyTensor<Q> {
    let n = m.dim;
    let mut out = PolyTensor::zero(n, 2, n);
    for b in 0..n {
        out.set(&[i, b], m.get(&[j, b]).clone());
        out.set(&[j, b], m.get(&[i, b]).neg());
    }
    out
}

/// r_ij . m = -nabla_{r_ij} m - m(r_ij ., .) - m(., r_ij .), indices 1-based.
pub fn rotation_action(i: usize, j: usize, m: &SphereTensor) -> Result<SphereTensor> {
    if i == 0 || j == 0 || i > m.n || j > m.n || i == j {
        return Err(Error::Invalid("rotation plane indices invalid".into()));
    }
    m.require_transverse()?;
    let field = TangentField::rotation(m.n, i, j);
    let d = covariant_derivative_tensor(&m.m, &field)?;
    let r = rotated_slot(&m.m, i - 1, j - 1);
    let rr = r.add(&r.permute(&[1, 0]));
    Ok(m.with_tensor(project2(&d.add(&rr)).scale(&q(-1))))
}

/// Action of a named generator.
pub fn generator_action(g: crate::lorentz::Generator, m: &SphereTensor) -> Result<SphereTensor> {
    use crate::lorentz::Generator;
    match g {
        Generator::Boost(i) => boost_action(i, m),
        Generator::Rotation(i, j) => rotation_action(i, j, m),
    }
}

/// Samples u[A]^{k-2} (A_bar_* m) at the given points of the sphere; each entry is a row-major n x n matrix.
pub fn group_action_numeric(a: &LorentzElement, m: &SphereTensor, points: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let n = m.n;
    let inv = a.inverse().matrix_f64();
    let comps: Vec<&Poly<Q>> = m.m.comps.iter().collect();
    points
        .par_iter()
        .map(|y| {
            let mut v = vec![1.0];
            v.extend_from_slice(y);
            let big: Vec<f64> = (0..=n).map(|r| (0..=n).map(|c| inv[r][c] * v[c]).sum()).collect();
            let xp: Vec<f64> = big[1..].iter().map(|c| c / big[0]).collect();
            // J_ab = d(A_bar^{-1})^a / dy^b
            let jac: Vec<Vec<f64>> = (0..n)
                .map(|r| (0..n).map(|c| (inv[r + 1][c + 1] - xp[r] * inv[0][c + 1]) / big[0]).collect())
                .collect();
            let mv: Vec<f64> = comps.iter().map(|p| p.eval_f64(&xp).0).collect();
            // J^T m J
            let mut pulled = vec![0.0; n * n];
            for r in 0..n {
                for c in 0..n {
                    let mut s = 0.0;
                    for p in 0..n {
                        for q in 0..n {
                            s += jac[p][r] * mv[p * n + q] * jac[q][c];
                        }
                    }
                    pulled[r * n + c] = s;
                }
            }
            let proj = |r: usize, c: usize| if r == c { 1.0 } else { 0.0 } - y[r] * y[c];
            let u = 1.0 / big[0];
            let scale = u.powi(m.k as i32 - 2);
            let mut out = vec![0.0; n * n];
            for r in 0..n {
                for c in 0..n {
                    let mut s = 0.0;
                    for p in 0..n {
                        for q in 0..n {
                            s += proj(r, p) * pulled[p * n + q] * proj(q, c);
                        }
                    }
                    out[r * n + c] = scale * s;
                }
            }
            out
        })
        .collect()
}

/// Rational boost on the unit hyperbola parametrized by t: rapidity 2 artanh t.
pub fn hyperbola_boost(n: usize, i: usize, t: &Q) -> LorentzElement {
    let t2 = t * t;
    let den = q(1) - &t2;
    let c = (q(1) + &t2) / &den;
    let s = (q(2) * t) / &den;
    LorentzElement::rational_boost(n, i, c, s).expect("hyperbola point")
}

/// Largest deviation between the rapidity derivative of the sampled boost family at 0
/// (symmetric differences with one Richardson step) and the exact boost_action.
pub fn boost_derivative_error(i: usize, m: &SphereTensor, points: &[Vec<f64>]) -> Result<f64> {
    let exact = boost_action(i, m)?;
    let n = m.n;
    let sample = |t: Q| group_action_numeric(&hyperbola_boost(n, i, &t), m, points);
    let h = Q::new(1.into(), 1000.into());
    let hf = 1e-3;
    let diff = |h: Q, hf: f64| {
        let plus = sample(h.clone());
        let minus = sample(-h);
        plus.iter()
            .zip(&minus)
            .map(|(p, q)| p.iter().zip(q).map(|(a, b)| (a - b) / (2.0 * hf)).collect::<Vec<f64>>())
            .collect::<Vec<_>>()
    };
    let d1 = diff(h.clone(), hf);
    let d2 = diff(h / q(2), hf / 2.0);
    let mut worst: f64 = 0.0;
    for (pt, (a, b)) in points.iter().zip(d1.iter().zip(&d2)) {
        for idx in 0..n * n {
            // d/dt = 2 d/d(rapidity) at t = 0
            let rich = (4.0 * b[idx] - a[idx]) / 3.0 / 2.0;
            let e = exact.m.comps[idx].eval_f64(pt).0;
            worst = worst.max((rich - e).abs());
        }
    }
    Ok(worst)
}
