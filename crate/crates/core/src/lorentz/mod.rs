//! Lorentz group elements and algebra generators of O(n,1), their actions on the
//! ball model, on polynomials and on polynomial tensor fields.
//!
//! Conventions: eta = diag(-1, 1, ..., 1). The boost generator a_i has matrix entries
//! (0,i) and (i,0) equal to 1; the rotation generator r_ij sends e_i to e_j and e_j to -e_i.
//! An algebra element acts on functions by a.P = d/ds P(exp(-s a) X) at s = 0,
//! that is a.P = -(aX)^mu d_mu P, and on covariant tensors through the pushforward.

pub mod hw;

use crate::error::{Error, Result};
use crate::exactcore::{Field, Poly, PolyTensor, GQ, Q};
use num_traits::Signed;

/// Minkowski metric sign at index mu.
pub fn eta(mu: usize) -> i64 {
    if mu == 0 {
        -1
    } else {
        1
    }
}

/// Element of the orthochronous Lorentz group acting on column vectors (X^0, ..., X^n).
#[derive(Clone, Debug, PartialEq)]
pub struct LorentzElement {
    pub n: usize,
    pub m: Vec<Vec<Q>>,
}

fn identity(n1: usize) -> Vec<Vec<Q>> {
    (0..n1).map(|i| (0..n1).map(|j| if i == j { Q::one() } else { Q::zero() }).collect()).collect()
}

fn matmul<C: Field>(a: &[Vec<C>], b: &[Vec<C>]) -> Vec<Vec<C>> {
    let n = a.len();
    let k = b.len();
    let m = b[0].len();
    let mut r = vec![vec![C::zero(); m]; n];
    for i in 0..n {
        for l in 0..k {
            if a[i][l].is_zero() {
                continue;
            }
            for j in 0..m {
                if !b[l][j].is_zero() {
                    r[i][j].add_assign(&a[i][l].mul(&b[l][j]));
                }
            }
        }
    }
    r
}

fn matvec<C: Field>(a: &[Vec<C>], v: &[C]) -> Vec<C> {
    a.iter()
        .map(|row| {
            let mut s = C::zero();
            for (x, y) in row.iter().zip(v) {
                s.add_assign(&x.mul(y));
            }
            s
        })
        .collect()
}

impl LorentzElement {
    pub fn identity(n: usize) -> Self {
        LorentzElement { n, m: identity(n + 1) }
    }

    /// Validates A^T eta A = eta and time orientation.
    pub fn new(n: usize, m: Vec<Vec<Q>>) -> Result<Self> {
        let a = LorentzElement { n, m };
        if !a.is_isometry() {
            return Err(Error::Invalid("matrix does not preserve eta".into()));
        }
        if !a.m[0][0].is_positive() {
            return Err(Error::Invalid("matrix is not orthochronous".into()));
        }
        Ok(a)
    }

    fn is_isometry(&self) -> bool {
        let n1 = self.n + 1;
        for i in 0..n1 {
            for j in 0..n1 {
                let mut s = Q::zero();
                for k in 0..n1 {
                    s += &self.m[k][i] * &self.m[k][j] * Q::from_i64(eta(k));
                }
                let expect = if i == j { Q::from_i64(eta(i)) } else { Q::zero() };
                if s != expect {
                    return false;
                }
            }
        }
        true
    }

    /// Boost in direction i (1-based) with cosh -> c, sinh -> s; requires c^2 - s^2 = 1, c > 0.
    pub fn rational_boost(n: usize, i: usize, c: Q, s: Q) -> Result<Self> {
        if i == 0 || i > n {
            return Err(Error::Invalid(format!("boost direction {} outside 1..={}", i, n)));
        }
        if &c * &c - &s * &s != Q::one() || !c.is_positive() {
            return Err(Error::Invalid("(c, s) is not on the unit hyperbola".into()));
        }
        let mut m = identity(n + 1);
        m[0][0] = c.clone();
        m[i][i] = c;
        m[0][i] = s.clone();
        m[i][0] = s;
        Ok(LorentzElement { n, m })
    }

    /// Rotation exp(theta r_ij) with cos -> c, sin -> s; 1 <= i, j <= n distinct.
    pub fn rational_rotation(n: usize, i: usize, j: usize, c: Q, s: Q) -> Result<Self> {
        if i == 0 || j == 0 || i > n || j > n || i == j {
            return Err(Error::Invalid("rotation plane indices invalid".into()));
        }
        if &c * &c + &s * &s != Q::one() {
            return Err(Error::Invalid("(c, s) is not on the unit circle".into()));
        }
        let mut m = identity(n + 1);
        m[i][i] = c.clone();
        m[j][j] = c;
        m[j][i] = s.clone();
        m[i][j] = -s;
        Ok(LorentzElement { n, m })
    }

    pub fn compose(&self, other: &Self) -> Self {
        LorentzElement { n: self.n, m: matmul(&self.m, &other.m) }
    }

    /// eta A^T eta.
    pub fn inverse(&self) -> Self {
        let n1 = self.n + 1;
        let mut m = vec![vec![Q::zero(); n1]; n1];
        for i in 0..n1 {
            for j in 0..n1 {
                m[i][j] = &self.m[j][i] * Q::from_i64(eta(i) * eta(j));
            }
        }
        LorentzElement { n: self.n, m }
    }

    pub fn apply(&self, x: &[Q]) -> Vec<Q> {
        matvec(&self.m, x)
    }

    pub fn apply_f64(&self, x: &[f64]) -> Vec<f64> {
        self.m
            .iter()
            .map(|row| row.iter().zip(x).map(|(a, b)| crate::exactcore::field::q_to_f64(a) * b).sum())
            .collect()
    }

    pub fn matrix_f64(&self) -> Vec<Vec<f64>> {
        self.m.iter().map(|r| r.iter().map(crate::exactcore::field::q_to_f64).collect()).collect()
    }
}

/// Hyperboloid point for a ball point: p^{-1}(x).
pub fn ball_to_hyperboloid(x: &[Q]) -> Vec<Q> {
    let r2: Q = x.iter().map(|a| a * a).sum();
    let den = Q::one() - &r2;
    let mut out = vec![(Q::one() + &r2) / &den];
    out.extend(x.iter().map(|a| Q::from_i64(2) * a / &den));
    out
}

/// Ball point for a hyperboloid point: p(X) = X_spatial / (1 + X^0).
pub fn hyperboloid_to_ball(y: &[Q]) -> Vec<Q> {
    let d = Q::one() + &y[0];
    y[1..].iter().map(|a| a / &d).collect()
}

/// Action of A on the Poincare ball, conjugated through the hyperboloid.
pub fn ball_action(a: &LorentzElement, x: &[Q]) -> Result<Vec<Q>> {
    let r2: Q = x.iter().map(|v| v * v).sum();
    if r2 >= Q::one() {
        return Err(Error::Invalid("point is not inside the unit ball".into()));
    }
    let out = hyperboloid_to_ball(&a.apply(&ball_to_hyperboloid(x)));
    let r2o: Q = out.iter().map(|v| v * v).sum();
    if r2o >= Q::one() {
        return Err(Error::Internal("ball action left the unit ball".into()));
    }
    Ok(out)
}

/// Boundary action on the sphere: x -> spatial part of A(1, x) divided by its time part.
pub fn sphere_action(a: &LorentzElement, x: &[Q]) -> Vec<Q> {
    let mut v = vec![Q::one()];
    v.extend_from_slice(x);
    let y = a.apply(&v);
    y[1..].iter().map(|c| c / &y[0]).collect()
}

pub fn sphere_action_f64(a: &LorentzElement, x: &[f64]) -> Vec<f64> {
    let mut v = vec![1.0];
    v.extend_from_slice(x);
    let y = a.apply_f64(&v);
    y[1..].iter().map(|c| c / y[0]).collect()
}

/// Conformal factor u[A](x) = 1 / X^0(A^{-1}(1, x)).
pub fn u_of_a(a: &LorentzElement, x: &[Q]) -> Q {
    let mut v = vec![Q::one()];
    v.extend_from_slice(x);
    let y = a.inverse().apply(&v);
    Q::one() / &y[0]
}

pub fn u_of_a_f64(a: &LorentzElement, x: &[f64]) -> f64 {
    let mut v = vec![1.0];
    v.extend_from_slice(x);
    1.0 / a.inverse().apply_f64(&v)[0]
}

/// Group action on polynomials: P o A^{-1}.
pub fn act_on_poly<C: Field>(a: &LorentzElement, p: &Poly<C>) -> Poly<C> {
    let inv = a.inverse();
    let m: Vec<Vec<C>> = inv.m.iter().map(|r| r.iter().map(|x| C::from_q(x.clone())).collect()).collect();
    p.linear_substitute(&m)
}

/// Group action on covariant tensors: (A.T)_{mu..}(X) = T_{alpha..}(A^{-1}X) (A^{-1})^alpha_mu ...
pub fn act_on_tensor<C: Field>(a: &LorentzElement, t: &PolyTensor<C>) -> PolyTensor<C> {
    let inv = a.inverse();
    let b: Vec<Vec<C>> = inv.m.iter().map(|r| r.iter().map(|x| C::from_q(x.clone())).collect()).collect();
    let mut cur = t.map(|p| p.linear_substitute(&b));
    let dim = t.dim;
    for s in 0..t.rank {
        let mut next = PolyTensor::zero(dim, t.rank, t.nvars);
        for f in 0..cur.comps.len() {
            let idx = cur.unflat(f);
            let mu = idx[s];
            for (alpha, row) in b.iter().enumerate() {
                let c = &row[mu];
                if c.is_zero() {
                    continue;
                }
                let mut src = idx.clone();
                src[s] = alpha;
                let comp = cur.get(&src);
                if !comp.is_zero() {
                    next.comps[f].add_scaled(comp, c);
                }
            }
        }
        cur = next;
    }
    cur
}

/// Infinitesimal generator of so(n,1), possibly complexified.
#[derive(Clone, Debug, PartialEq)]
pub struct AlgebraElement<C: Field> {
    pub n: usize,
    pub m: Vec<Vec<C>>,
}

/// Named real generators.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Generator {
    Boost(usize),
    Rotation(usize, usize),
}

impl std::fmt::Display for Generator {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Generator::Boost(i) => write!(f, "a{}", i),
            Generator::Rotation(i, j) => write!(f, "r{}{}", i, j),
        }
    }
}

/// All boosts a_1..a_n and rotations r_ij (i < j).
pub fn generators(n: usize) -> Vec<Generator> {
    let mut g: Vec<Generator> = (1..=n).map(Generator::Boost).collect();
    for i in 1..=n {
        for j in i + 1..=n {
            g.push(Generator::Rotation(i, j));
        }
    }
    g
}

impl<C: Field> AlgebraElement<C> {
    pub fn zero(n: usize) -> Self {
        AlgebraElement { n, m: vec![vec![C::zero(); n + 1]; n + 1] }
    }

    pub fn boost(n: usize, i: usize) -> Self {
        let mut a = Self::zero(n);
        a.m[0][i] = C::one();
        a.m[i][0] = C::one();
        a
    }

    pub fn rotation(n: usize, i: usize, j: usize) -> Self {
        let mut a = Self::zero(n);
        a.m[j][i] = C::one();
        a.m[i][j] = C::one().neg();
        a
    }

    pub fn from_generator(n: usize, g: Generator) -> Self {
        match g {
            Generator::Boost(i) => Self::boost(n, i),
            Generator::Rotation(i, j) => Self::rotation(n, i, j),
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        AlgebraElement {
            n: self.n,
            m: self.m.iter().zip(&o.m).map(|(a, b)| a.iter().zip(b).map(|(x, y)| x.add(y)).collect()).collect(),
        }
    }

    pub fn scale(&self, s: &C) -> Self {
        AlgebraElement { n: self.n, m: self.m.iter().map(|r| r.iter().map(|x| x.mul(s)).collect()).collect() }
    }

    pub fn bracket(&self, o: &Self) -> Self {
        let ab = matmul(&self.m, &o.m);
        let ba = matmul(&o.m, &self.m);
        AlgebraElement {
            n: self.n,
            m: ab.iter().zip(&ba).map(|(a, b)| a.iter().zip(b).map(|(x, y)| x.sub(y)).collect()).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.m.iter().all(|r| r.iter().all(|x| x.is_zero()))
    }

    /// (eta a)^T = -(eta a).
    pub fn is_infinitesimal_isometry(&self) -> bool {
        let n1 = self.n + 1;
        (0..n1).all(|i| {
            (0..n1).all(|j| {
                let a = self.m[i][j].mul(&C::from_i64(eta(i)));
                let b = self.m[j][i].mul(&C::from_i64(eta(j)));
                a.add(&b).is_zero()
            })
        })
    }

    /// Vector field xi^rho = (aX)^rho as polynomials.
    pub fn vector_field(&self) -> Vec<Poly<C>> {
        self.m.iter().map(|row| Poly::linear(row)).collect()
    }
}

impl AlgebraElement<Q> {
    pub fn to_gq(&self) -> AlgebraElement<GQ> {
        AlgebraElement { n: self.n, m: self.m.iter().map(|r| r.iter().map(|x| GQ::real(x.clone())).collect()).collect() }
    }
}

/// a.P = -(aX)^mu d_mu P.
pub fn algebra_act_on_poly<C: Field>(a: &AlgebraElement<C>, p: &Poly<C>) -> Poly<C> {
    let xi = a.vector_field();
    let mut r = Poly::zero(p.nvars());
    for (rho, x) in xi.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        r = r.sub(&x.mul(&p.deriv(rho)));
    }
    r
}

/// Pushforward action on covariant tensors: -xi^rho d_rho T - sum over slots a^rho_mu T_{..rho..}.
pub fn algebra_act_on_tensor<C: Field>(a: &AlgebraElement<C>, t: &PolyTensor<C>) -> PolyTensor<C> {
    let mut r = t.map(|p| algebra_act_on_poly(a, p));
    let dim = t.dim;
    for f in 0..t.comps.len() {
        let idx = t.unflat(f);
        for s in 0..t.rank {
            let mu = idx[s];
            for rho in 0..dim {
                let c = &a.m[rho][mu];
                if c.is_zero() {
                    continue;
                }
                let mut src = idx.clone();
                src[s] = rho;
                let comp = t.get(&src);
                if !comp.is_zero() {
                    r.comps[f].add_scaled(comp, &c.neg());
                }
            }
        }
    }
    r
}

/// Null vector field e_+ = (1, x^1, ..., x^n) along the sphere, as polynomials in x.
pub fn null_vector_field<C: Field>(n: usize) -> Vec<Poly<C>> {
    let mut v = vec![Poly::one(n)];
    for i in 0..n {
        v.push(Poly::var(n, i));
    }
    v
}
