//! Michel charges of the model metrics b + e, e = (sinh r)^{2-k} m in geodesic polar coordinates
//! b = dr^2 + sinh(r)^2 sigma, with m a transverse tensor on S^{n-1} and k its decay order.
//!
//! With S = sinh r, C = cosh r, t = tr^sigma m and T = tr^b e = S^{-k} t:
//!   (div e)(d_r) = -(C/S) T,
//!   div div e   = [(k-n+1) S^{-k} + (k-n+2) S^{-k-2}] t + S^{-k-2} div div^sigma m,
//!   Lap T       = [k(k-n+1) S^{-k} + k(k-n+2) S^{-k-2}] t + S^{-k-2} Lap^sigma t.
//! The Scal integrand is u[div e - d tr e](d_r) - e(grad u, d_r) + T du(d_r) and the F_p integrand is
//! u ds(d_r) - s du(d_r) with s = DScal(e) = div div e - Lap T + (n-1) T.

use crate::error::{Error, Result};
use crate::exactcore::field::q_to_f64;
use crate::exactcore::sphere::{laplacian, sphere_volume};
use crate::exactcore::{hyperboloid_normal_form, sphere_normal_form, wave_operator, Field, Poly, PolyTensor, Q};
use crate::invariants::conformal_mass;
use crate::massaspect::{covariant_derivative_tensor, covariant_derivative_vector, SphereQuadrature, SphereTensor, TangentField};
use rayon::prelude::*;

fn euler(p: &Poly<Q>) -> Poly<Q> {
    let mut s = Poly::zero(p.nvars());
    for i in 0..p.nvars() {
        s = s.add(&p.deriv(i).mul_var(i));
    }
    s
}

/// Laplacian of the round sphere on the restriction of f: Lap f - E^2 f - (n-2) E f on |x| = 1.
pub fn sigma_laplacian(f: &Poly<Q>) -> Poly<Q> {
    let n = f.nvars() as i64;
    let ef = euler(f);
    let r = laplacian(f).sub(&euler(&ef)).sub(&ef.scale(&Q::from_i64(n - 2)));
    sphere_normal_form(&r)
}

fn frame_field(n: usize, c: usize) -> TangentField {
    let v = (0..n)
        .map(|d| {
            let xx = Poly::var(n, c).mul(&Poly::var(n, d)).neg();
            if c == d {
                xx.add(&Poly::one(n))
            } else {
                xx
            }
        })
        .collect();
    TangentField { n, v }
}

/// div^sigma m as a tangent vector field.
pub fn sigma_divergence(m: &SphereTensor) -> Result<TangentField> {
    let n = m.n;
    let mut v = vec![Poly::zero(n); n];
    for c in 0..n {
        let d = covariant_derivative_tensor(&m.m, &frame_field(n, c))?;
        for (b, vb) in v.iter_mut().enumerate() {
            *vb = vb.add(d.get(&[c, b]));
        }
    }
    Ok(TangentField { n, v: v.iter().map(sphere_normal_form).collect() })
}

/// div^sigma div^sigma m.
pub fn sigma_divdiv(m: &SphereTensor) -> Result<Poly<Q>> {
    let n = m.n;
    let w = sigma_divergence(m)?;
    let mut s = Poly::zero(n);
    for c in 0..n {
        s = s.add(&covariant_derivative_vector(&w, &frame_field(n, c))?.v[c]);
    }
    Ok(sphere_normal_form(&s))
}

/// Printed F_p charge constant ((p+n-1)^2 - (n-1)) (2p+n-1).
pub fn fp_constant_printed(n: usize, p: usize) -> f64 {
    let (n, p) = (n as f64, p as f64);
    ((p + n - 1.0).powi(2) - (n - 1.0)) * (2.0 * p + n - 1.0)
}

/// Limit of the exact F_p integrand: (p-1)(p+n-1)(2p+n-1).
pub fn fp_constant_derived(n: usize, p: usize) -> f64 {
    let (n, p) = (n as f64, p as f64);
    (p - 1.0) * (p + n - 1.0) * (2.0 * p + n - 1.0)
}

/// Printed Scal charge constant n + 1 (from the factor n u + d_r u).
pub fn scal_constant_printed(n: usize) -> f64 {
    n as f64 + 1.0
}

/// Limit of the exact Scal integrand for linear u: n.
pub fn scal_constant_derived(n: usize) -> f64 {
    n as f64
}

/// Model metric with precomputed sphere data of its mass aspect.
#[derive(Clone, Debug)]
pub struct ModelMetric {
    pub n: usize,
    pub k: u32,
    pub m: SphereTensor,
    pub trace: Poly<Q>,
    pub divdiv: Poly<Q>,
    pub lap_trace: Poly<Q>,
}

struct PolyF64 {
    terms: Vec<(Vec<u8>, f64)>,
}

impl PolyF64 {
    fn new(p: &Poly<Q>) -> Self {
        PolyF64 { terms: p.terms().map(|(e, c)| (e.clone(), q_to_f64(c))).collect() }
    }

    fn eval(&self, x: &[f64]) -> f64 {
        self.terms.iter().map(|(e, c)| c * e.iter().zip(x).map(|(&k, v)| v.powi(k as i32)).product::<f64>()).sum()
    }
}

/// u = P(cosh r, sinh r x) and its radial derivative.
struct Radial {
    p: PolyF64,
    grad: Vec<PolyF64>,
}

impl Radial {
    fn new(u: &Poly<Q>) -> Self {
        Radial { p: PolyF64::new(u), grad: (0..u.nvars()).map(|i| PolyF64::new(&u.deriv(i))).collect() }
    }

    fn eval(&self, r: f64, x: &[f64]) -> (f64, f64) {
        let (s, c) = (r.sinh(), r.cosh());
        let mut pt = vec![c];
        pt.extend(x.iter().map(|v| s * v));
        let mut dr = s * self.grad[0].eval(&pt);
        for (i, v) in x.iter().enumerate() {
            dr += c * v * self.grad[i + 1].eval(&pt);
        }
        (self.p.eval(&pt), dr)
    }
}

fn check_radius(r: f64) -> Result<()> {
    if !(r >= 1.0) || !r.is_finite() {
        return Err(Error::Invalid(format!("radius must be finite and at least 1, got {r}")));
    }
    Ok(())
}

impl ModelMetric {
    pub fn new(m: &SphereTensor) -> Result<Self> {
        if !m.is_transverse() {
            return Err(Error::Invalid("mass aspect is not transverse; apply transversalize first".into()));
        }
        let trace = m.sigma_trace();
        Ok(ModelMetric {
            n: m.n,
            k: m.k,
            m: m.clone(),
            divdiv: sigma_divdiv(m)?,
            lap_trace: sigma_laplacian(&trace),
            trace,
        })
    }

    fn check_u(&self, u: &Poly<Q>) -> Result<usize> {
        if u.nvars() != self.n + 1 {
            return Err(Error::Invalid("u must be a polynomial on R^{n,1}".into()));
        }
        let d = u.degree().unwrap_or(0);
        if !u.is_homogeneous_of(d) || !wave_operator(u).is_zero() {
            return Err(Error::Invalid("u must be a homogeneous solution of the wave equation".into()));
        }
        Ok(d)
    }

    /// Scal integrand U(u, e)(d_r) at (r, x).
    fn scal_point(&self, t: &PolyF64, u: &Radial, r: f64, x: &[f64]) -> f64 {
        let a = self.k as f64;
        let (s, c) = (r.sinh(), r.cosh());
        let tt = s.powf(-a) * t.eval(x);
        let (uv, du) = u.eval(r, x);
        tt * ((a - 1.0) * (c / s) * uv + du)
    }

    /// F_p integrand u ds(d_r) - s du(d_r) at (r, x).
    fn fp_point(&self, d: &[PolyF64; 3], u: &Radial, r: f64, x: &[f64]) -> f64 {
        let (a, n) = (self.k as f64, self.n as f64);
        let (s, c) = (r.sinh(), r.cosh());
        let (t, dd, lt) = (d[0].eval(x), d[1].eval(x), d[2].eval(x));
        let alpha = t * ((a - n + 1.0) - a * (a - n + 1.0) + (n - 1.0));
        let beta = t * ((a - n + 2.0) - a * (a - n + 2.0)) + dd - lt;
        let sv = alpha * s.powf(-a) + beta * s.powf(-a - 2.0);
        let ds = -c * (a * alpha * s.powf(-a - 1.0) + (a + 2.0) * beta * s.powf(-a - 3.0));
        let (uv, du) = u.eval(r, x);
        uv * ds - sv * du
    }

    /// Pointwise Scal integrand at radius r and unit vector x.
    pub fn scal_integrand(&self, u: &Poly<Q>, r: f64, x: &[f64]) -> Result<f64> {
        self.check_u(u)?;
        Ok(self.scal_point(&PolyF64::new(&self.trace), &Radial::new(u), r, x))
    }

    /// Pointwise F_p integrand at radius r and unit vector x.
    pub fn fp_integrand(&self, u: &Poly<Q>, r: f64, x: &[f64]) -> Result<f64> {
        self.check_u(u)?;
        Ok(self.fp_point(&self.sphere_data(), &Radial::new(u), r, x))
    }

    fn sphere_data(&self) -> [PolyF64; 3] {
        [PolyF64::new(&self.trace), PolyF64::new(&self.divdiv), PolyF64::new(&self.lap_trace)]
    }

    /// Integral of the Scal integrand over the geodesic sphere of radius r.
    pub fn scal_charge(&self, u: &Poly<Q>, r: f64, quad: &SphereQuadrature) -> Result<f64> {
        check_radius(r)?;
        if 2 * self.k as usize <= self.n {
            return Err(Error::Invalid(format!("decay order k = {} must exceed n/2", self.k)));
        }
        self.check_u(u)?;
        let (t, ur) = (PolyF64::new(&self.trace), Radial::new(u));
        let area = sphere_volume(self.n) * r.sinh().powi(self.n as i32 - 1);
        Ok(area * quad.integrate(|x| self.scal_point(&t, &ur, r, x)))
    }

    /// Integral of the F_p integrand over the geodesic sphere of radius r; u must lie in H_p with
    /// k = p + n - 1.
    pub fn fp_charge(&self, u: &Poly<Q>, r: f64, quad: &SphereQuadrature) -> Result<f64> {
        check_radius(r)?;
        let p = self.check_u(u)?;
        if self.k as usize != p + self.n - 1 {
            return Err(Error::Invalid(format!("weight mismatch: k = {} but p + n - 1 = {}", self.k, p + self.n - 1)));
        }
        let (d, ur) = (self.sphere_data(), Radial::new(u));
        let area = sphere_volume(self.n) * r.sinh().powi(self.n as i32 - 1);
        Ok(area * quad.integrate(|x| self.fp_point(&d, &ur, r, x)))
    }
}

/// Richardson extrapolation of values on r_j = r_0 + j h assuming a remainder series in e^{-2r}.
pub fn ladder_limit(values: &[f64], h: f64) -> f64 {
    let mut row: Vec<f64> = values.to_vec();
    let mut level = 1;
    while row.len() > 1 {
        let q = (-2.0 * level as f64 * h).exp();
        row = row.windows(2).map(|w| (w[1] - q * w[0]) / (1.0 - q)).collect();
        level += 1;
    }
    row[0]
}

/// One rung of a convergence table.
#[derive(Clone, Debug)]
pub struct ChargeRow {
    pub r: f64,
    pub charge: f64,
    pub ratio: f64,
}

/// Convergence of a charge against its classified mass.
#[derive(Clone, Debug)]
pub struct ChargeConvergence {
    pub rows: Vec<ChargeRow>,
    pub limit: f64,
    /// Vol(S^{n-1}) times the conformal mass of m against u.
    pub reference: f64,
    pub constant_printed: f64,
    pub constant_derived: f64,
    pub ratio_printed: f64,
    pub ratio_derived: f64,
    /// log(|F_j - F_{j+1}| / |F_{j+1} - F_{j+2}|) / h on the last rungs, in units of r.
    pub observed_rate: Option<f64>,
}

/// Ladder r = rmax - (len-1), ..., rmax with unit spacing.
pub fn r_ladder(rmax: f64, len: usize) -> Vec<f64> {
    (0..len).map(|j| rmax - (len - 1 - j) as f64).collect()
}

fn converge(rs: &[f64], charges: Vec<f64>, reference: f64, printed: f64, derived: f64) -> ChargeConvergence {
    let h = if rs.len() > 1 { rs[1] - rs[0] } else { 1.0 };
    let limit = ladder_limit(&charges, h);
    let rows = rs.iter().zip(&charges).map(|(&r, &c)| ChargeRow { r, charge: c, ratio: c / (printed * reference) }).collect();
    let observed_rate = if charges.len() >= 3 {
        let l = charges.len();
        let d1 = (charges[l - 3] - charges[l - 2]).abs();
        let d2 = (charges[l - 2] - charges[l - 1]).abs();
        if d1 > 0.0 && d2 > 0.0 {
            Some((d1 / d2).ln() / h)
        } else {
            None
        }
    } else {
        None
    };
    ChargeConvergence {
        rows,
        limit,
        reference,
        constant_printed: printed,
        constant_derived: derived,
        ratio_printed: limit / (printed * reference),
        ratio_derived: limit / (derived * reference),
        observed_rate,
    }
}

/// F_p charge on a ladder of radii up to rmax, compared with C(n,p) Vol Phi_c(m)(u).
pub fn fp_convergence(m: &SphereTensor, u: &Poly<Q>, rmax: f64, quad: &SphereQuadrature) -> Result<ChargeConvergence> {
    let g = ModelMetric::new(m)?;
    let p = g.check_u(u)?;
    let rs = r_ladder(rmax, 5);
    let charges = rs.par_iter().map(|&r| g.fp_charge(u, r, quad)).collect::<Result<Vec<_>>>()?;
    let reference = sphere_volume(m.n) * q_to_f64(&conformal_mass(m, u)?);
    Ok(converge(&rs, charges, reference, fp_constant_printed(m.n, p), fp_constant_derived(m.n, p)))
}

/// Scal charge on a ladder of radii up to rmax for linear u, compared with Vol Phi_c(m)(u).
pub fn scal_convergence(m: &SphereTensor, u: &Poly<Q>, rmax: f64, quad: &SphereQuadrature) -> Result<ChargeConvergence> {
    let g = ModelMetric::new(m)?;
    let rs = r_ladder(rmax, 5);
    let charges = rs.par_iter().map(|&r| g.scal_charge(u, r, quad)).collect::<Result<Vec<_>>>()?;
    let reference = sphere_volume(m.n) * q_to_f64(&conformal_mass(m, u)?);
    Ok(converge(&rs, charges, reference, scal_constant_printed(m.n), scal_constant_derived(m.n)))
}

/// Scal charges for u = X^0, ..., X^n at radius r.
pub fn scal_mass_vector(m: &SphereTensor, r: f64, quad: &SphereQuadrature) -> Result<Vec<f64>> {
    let g = ModelMetric::new(m)?;
    (0..=m.n).into_par_iter().map(|mu| g.scal_charge(&Poly::var(m.n + 1, mu), r, quad)).collect()
}

/// Hess^b u - u b on the unit hyperboloid, computed extrinsically: for tangent X, Y,
/// Hess^b u(X, Y) = D^2 u(X, Y) + b(X, Y) (X^a d_a u). Returns the tangential part modulo 1 + X.X.
pub fn ker_dscal_star_check(u: &Poly<Q>) -> Result<PolyTensor<Q>> {
    let nv = u.nvars();
    if u.is_zero() || !u.is_homogeneous_of(1) {
        return Err(Error::Invalid("u must be a linear function on R^{n,1}".into()));
    }
    let xl = |a: usize| if a == 0 { Poly::var(nv, 0).neg() } else { Poly::var(nv, a) };
    let eta = |a: usize, b: usize| -> Q {
        if a != b {
            Q::zero()
        } else if a == 0 {
            Q::from_i64(-1)
        } else {
            Q::one()
        }
    };
    let radial = euler(u).sub(u);
    let mut h = PolyTensor::zero(nv, 2, nv);
    for a in 0..nv {
        for b in 0..nv {
            let bab = xl(a).mul(&xl(b)).add(&Poly::constant(nv, eta(a, b)));
            h.set(&[a, b], u.deriv(a).deriv(b).add(&bab.mul(&radial)));
        }
    }
    // tangential projection Pi_a^c = delta_a^c + x_a X^c applied to both slots
    let mut half = PolyTensor::zero(nv, 2, nv);
    for a in 0..nv {
        for b in 0..nv {
            let mut s = h.get(&[a, b]).clone();
            for c in 0..nv {
                s = s.add(&xl(a).mul_var(c).mul(h.get(&[c, b])));
            }
            half.set(&[a, b], s);
        }
    }
    let mut out = PolyTensor::zero(nv, 2, nv);
    for a in 0..nv {
        for b in 0..nv {
            let mut s = half.get(&[a, b]).clone();
            for c in 0..nv {
                s = s.add(&xl(b).mul_var(c).mul(half.get(&[a, c])));
            }
            out.set(&[a, b], hyperboloid_normal_form(&s));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactcore::field::{q, qr};
    use crate::invariants::wang_mass_vector;
    use crate::massaspect::transversalize;
    use std::ops::{Add, Div, Mul, Neg, Sub};

    // Forward-mode dual numbers, nestable for higher derivatives; used only by the ball-model oracle.
    trait Num: Copy + Add<Output = Self> + Sub<Output = Self> + Mul<Output = Self> + Div<Output = Self> + Neg<Output = Self> {
        fn c(x: f64) -> Self;
        fn sqrt(self) -> Self;
    }

    impl Num for f64 {
        fn c(x: f64) -> Self {
            x
        }
        fn sqrt(self) -> Self {
            f64::sqrt(self)
        }
    }

    #[derive(Clone, Copy)]
    struct Dual<T> {
        v: T,
        d: T,
    }

    impl<T: Num> Add for Dual<T> {
        type Output = Self;
        fn add(self, o: Self) -> Self {
            Dual { v: self.v + o.v, d: self.d + o.d }
        }
    }
    impl<T: Num> Sub for Dual<T> {
        type Output = Self;
        fn sub(self, o: Self) -> Self {
            Dual { v: self.v - o.v, d: self.d - o.d }
        }
    }
    impl<T: Num> Mul for Dual<T> {
        type Output = Self;
        fn mul(self, o: Self) -> Self {
            Dual { v: self.v * o.v, d: self.v * o.d + self.d * o.v }
        }
    }
    impl<T: Num> Div for Dual<T> {
        type Output = Self;
        fn div(self, o: Self) -> Self {
            Dual { v: self.v / o.v, d: (self.d * o.v - self.v * o.d) / (o.v * o.v) }
        }
    }
    impl<T: Num> Neg for Dual<T> {
        type Output = Self;
        fn neg(self) -> Self {
            Dual { v: -self.v, d: -self.d }
        }
    }
    impl<T: Num> Num for Dual<T> {
        fn c(x: f64) -> Self {
            Dual { v: T::c(x), d: T::c(0.0) }
        }
        fn sqrt(self) -> Self {
            let s = self.v.sqrt();
            Dual { v: s, d: self.d / (T::c(2.0) * s) }
        }
    }

    fn powi<T: Num>(x: T, k: i32) -> T {
        let mut r = T::c(1.0);
        for _ in 0..k.unsigned_abs() {
            r = r * x;
        }
        if k < 0 {
            T::c(1.0) / r
        } else {
            r
        }
    }

    fn dd<T: Num>(f: impl Fn(&[Dual<T>]) -> Dual<T>, y: &[T], dir: &[T]) -> T {
        let z: Vec<Dual<T>> = y.iter().zip(dir).map(|(&v, &d)| Dual { v, d }).collect();
        f(&z).d
    }

    fn partial<T: Num>(f: impl Fn(&[Dual<T>]) -> Dual<T>, y: &[T], i: usize) -> T {
        let dir: Vec<T> = (0..y.len()).map(|j| T::c(if i == j { 1.0 } else { 0.0 })).collect();
        dd(f, y, &dir)
    }

    type Terms = Vec<(Vec<u8>, f64)>;

    fn terms(p: &Poly<Q>) -> Terms {
        p.terms().map(|(e, c)| (e.clone(), q_to_f64(c))).collect()
    }

    fn eval<T: Num>(t: &Terms, x: &[T]) -> T {
        let mut s = T::c(0.0);
        for (e, c) in t {
            let mut m = T::c(*c);
            for (&k, &v) in e.iter().zip(x) {
                m = m * powi(v, k as i32);
            }
            s = s + m;
        }
        s
    }

    /// The model metric in the Poincare ball, b = (2 / (1 - |y|^2))^2 delta, computed with
    /// the conformally flat Christoffel symbols and automatic differentiation.
    struct Ball {
        n: usize,
        a: i32,
        m: Vec<Vec<Terms>>,
        u: Terms,
    }

    impl Ball {
        fn new(m: &SphereTensor, u: &Poly<Q>) -> Self {
            let n = m.n;
            Ball { n, a: m.k as i32, m: (0..n).map(|i| (0..n).map(|j| terms(m.m.get(&[i, j]))).collect()).collect(), u: terms(u) }
        }

        fn rho2<T: Num>(y: &[T]) -> T {
            y.iter().fold(T::c(0.0), |s, &v| s + v * v)
        }

        fn e<T: Num>(&self, y: &[T], i: usize, j: usize) -> T {
            let n = self.n;
            let r2 = Self::rho2(y);
            let rho = r2.sqrt();
            let x: Vec<T> = y.iter().map(|&v| v / rho).collect();
            let m = |a: usize, b: usize| eval(&self.m[a][b], &x);
            let mx = |a: usize| (0..n).fold(T::c(0.0), |s, b| s + m(a, b) * x[b]);
            let xmx = (0..n).fold(T::c(0.0), |s, a| s + mx(a) * x[a]);
            let pmp = m(i, j) - x[i] * mx(j) - mx(i) * x[j] + x[i] * x[j] * xmx;
            let s = T::c(2.0) * rho / (T::c(1.0) - r2);
            powi(s, 2 - self.a) / r2 * pmp
        }

        fn conf<T: Num>(y: &[T]) -> T {
            let w = T::c(1.0) - Self::rho2(y);
            w * w / T::c(4.0)
        }

        fn dphi<T: Num>(y: &[T], j: usize) -> T {
            T::c(2.0) * y[j] / (T::c(1.0) - Self::rho2(y))
        }

        fn flat_trace<T: Num>(&self, y: &[T]) -> T {
            (0..self.n).fold(T::c(0.0), |s, i| s + self.e(y, i, i))
        }

        fn tr<T: Num>(&self, y: &[T]) -> T {
            Self::conf(y) * self.flat_trace(y)
        }

        fn omega<T: Num>(&self, y: &[T], j: usize) -> T {
            let n = self.n;
            let mut s = T::c(0.0);
            for i in 0..n {
                s = s + partial(|z| self.e(z, i, j), y, i);
                s = s + T::c(n as f64 - 2.0) * Self::dphi(y, i) * self.e(y, i, j);
            }
            Self::conf(y) * (s - Self::dphi(y, j) * self.flat_trace(y))
        }

        fn divdiv<T: Num>(&self, y: &[T]) -> T {
            let n = self.n;
            let mut s = T::c(0.0);
            for j in 0..n {
                s = s + partial(|z| self.omega(z, j), y, j) + T::c(n as f64 - 2.0) * Self::dphi(y, j) * self.omega(y, j);
            }
            Self::conf(y) * s
        }

        fn lap_tr<T: Num>(&self, y: &[T]) -> T {
            let n = self.n;
            let mut s = T::c(0.0);
            for j in 0..n {
                let g = |z: &[Dual<T>]| partial(|w| self.tr(w), z, j);
                s = s + partial(g, y, j) + T::c(n as f64 - 2.0) * Self::dphi(y, j) * partial(|z| self.tr(z), y, j);
            }
            Self::conf(y) * s
        }

        fn dscal<T: Num>(&self, y: &[T]) -> T {
            self.divdiv(y) - self.lap_tr(y) + T::c(self.n as f64 - 1.0) * self.tr(y)
        }

        fn u<T: Num>(&self, y: &[T]) -> T {
            let r2 = Self::rho2(y);
            let w = T::c(1.0) - r2;
            let mut pt = vec![(T::c(1.0) + r2) / w];
            pt.extend(y.iter().map(|&v| T::c(2.0) * v / w));
            eval(&self.u, &pt)
        }

        fn nu(y: &[f64]) -> Vec<f64> {
            let r2 = Ball::rho2(y);
            let f = (1.0 - r2) / (2.0 * r2.sqrt());
            y.iter().map(|v| f * v).collect()
        }

        fn fp_integrand(&self, y: &[f64]) -> f64 {
            let nu = Self::nu(y);
            let ds = dd(|z| self.dscal(z), y, &nu);
            let du = dd(|z| self.u(z), y, &nu);
            self.u(y) * ds - self.dscal(y) * du
        }

        fn scal_integrand(&self, y: &[f64]) -> f64 {
            let n = self.n;
            let nu = Self::nu(y);
            let (uv, du) = (self.u(y), dd(|z| self.u(z), y, &nu));
            let div_nu: f64 = (0..n).map(|j| self.omega(y, j) * nu[j]).sum();
            let dtr = dd(|z| self.tr(z), y, &nu);
            let mut e_grad = 0.0;
            for i in 0..n {
                let gi = Self::conf(y) * partial(|z| self.u(z), y, i);
                for j in 0..n {
                    e_grad += self.e(y, i, j) * gi * nu[j];
                }
            }
            uv * (div_nu - dtr) - e_grad + self.tr(y) * du
        }
    }

    fn sym(n: usize, entries: &[(usize, usize, Poly<Q>)]) -> PolyTensor<Q> {
        let mut t = PolyTensor::zero(n, 2, n);
        for (i, j, p) in entries {
            t.add_to(&[*i, *j], p, &q(1));
            if i != j {
                t.add_to(&[*j, *i], p, &q(1));
            }
        }
        t
    }

    fn sample_aspect(n: usize, k: u32) -> SphereTensor {
        let x = |i: usize| Poly::<Q>::var(n, i);
        let raw = sym(
            n,
            &[
                (0, 1, x(2).add(&Poly::constant(n, qr(1, 2)))),
                (1, 1, x(0).mul(&x(1)).scale(&q(3))),
                (2, 2, x(0).add(&x(2).mul(&x(2)))),
                (0, 0, Poly::constant(n, qr(2, 3))),
            ],
        );
        transversalize(&SphereTensor::new(n, k, raw).unwrap()).unwrap()
    }

    fn unit(v: &[f64]) -> Vec<f64> {
        let r = v.iter().map(|c| c * c).sum::<f64>().sqrt();
        v.iter().map(|c| c / r).collect()
    }

    fn assert_close(a: f64, b: f64, tol: f64) {
        assert!((a - b).abs() <= tol * (1.0 + b.abs()), "{a} vs {b}");
    }

    fn h(n: usize, mono: &[(usize, u8)], extra: Option<(usize, u8)>) -> Poly<Q> {
        let mut e = vec![0u8; n + 1];
        for &(i, k) in mono {
            e[i] = k;
        }
        let mut p = Poly::monomial(e, q(1));
        if let Some((i, k)) = extra {
            let mut f = vec![0u8; n + 1];
            f[i] = k;
            p = p.sub(&Poly::monomial(f, q(1)));
        }
        p
    }

    #[test]
    fn sphere_operators() {
        for n in [3, 4] {
            let x1 = Poly::<Q>::var(n, 0);
            assert_eq!(sigma_laplacian(&x1), x1.scale(&q(-(n as i64 - 1))));
            let x12 = x1.mul(&Poly::var(n, 1));
            assert_eq!(sigma_laplacian(&x12), x12.scale(&q(-2 * n as i64)));
            let round = SphereTensor::round(n, 3);
            let f = SphereTensor::new(n, 3, round.m.mul_poly(&x1)).unwrap();
            assert!(sigma_divdiv(&round).unwrap().is_zero());
            assert_eq!(sigma_divdiv(&f).unwrap(), sigma_laplacian(&x1));
        }
    }

    #[test]
    fn polar_integrands_match_ball_oracle() {
        let dirs = [vec![0.3, -0.5, 0.8], vec![-0.9, 0.2, 0.1], vec![0.1, 0.7, -0.4]];
        for (n, k, u) in [
            (3usize, 2u32, h(3, &[], None)),
            (3, 3, h(3, &[(1, 1)], None)),
            (3, 4, h(3, &[(0, 1), (2, 1)], None)),
            (3, 5, h(3, &[(1, 2)], Some((3, 2)))),
        ] {
            let m = sample_aspect(n, k);
            let g = ModelMetric::new(&m).unwrap();
            let ball = Ball::new(&m, &u);
            for r in [1.2, 2.0] {
                for d in &dirs {
                    let x = unit(d);
                    let y: Vec<f64> = x.iter().map(|c| c * (r / 2.0f64).tanh()).collect();
                    assert_close(g.fp_integrand(&u, r, &x).unwrap(), ball.fp_integrand(&y), 1e-8);
                    if u.is_homogeneous_of(1) {
                        assert_close(g.scal_integrand(&u, r, &x).unwrap(), ball.scal_integrand(&y), 1e-9);
                    }
                }
            }
        }
        let m = sample_aspect(4, 4);
        let u = h(4, &[(0, 1)], None);
        let (g, ball) = (ModelMetric::new(&m).unwrap(), Ball::new(&m, &u));
        let x = unit(&[0.2, -0.4, 0.5, 0.7]);
        let y: Vec<f64> = x.iter().map(|c| c * 0.6).collect();
        let r = 2.0 * 0.6f64.atanh();
        assert_close(g.scal_integrand(&u, r, &x).unwrap(), ball.scal_integrand(&y), 1e-9);
        assert_close(g.fp_integrand(&u, r, &x).unwrap(), ball.fp_integrand(&y), 1e-8);
    }

    #[test]
    fn scal_charge_examples() {
        let quad = SphereQuadrature::new(3, 24);
        let zero = SphereTensor::new(3, 3, PolyTensor::zero(3, 2, 3)).unwrap();
        let g = ModelMetric::new(&zero).unwrap();
        assert_eq!(g.scal_charge(&h(3, &[(0, 1)], None), 4.0, &quad).unwrap(), 0.0);
        let round = ModelMetric::new(&SphereTensor::round(3, 3)).unwrap();
        let odd = round.scal_charge(&h(3, &[(1, 1)], None), 8.0, &quad).unwrap();
        assert!(odd.abs() < 1e-12);
        // tr m = 2, u = X^0: the limit is n * 2 * Vol(S^2)
        let c = round.scal_charge(&h(3, &[(0, 1)], None), 12.0, &quad).unwrap();
        let vol = sphere_volume(3);
        assert!((c / (3.0 * 2.0 * vol) - 1.0).abs() < 1e-3);
        assert!((c / (scal_constant_printed(3) * 2.0 * vol) - 0.75).abs() < 1e-3);
        assert!(round.scal_charge(&h(3, &[(0, 1)], None), 0.5, &quad).is_err());
    }

    #[test]
    fn scal_charges_reproduce_wang_vector() {
        let quad = SphereQuadrature::new(3, 32);
        let m = sample_aspect(3, 3);
        let exact: Vec<f64> = wang_mass_vector(&m).unwrap().iter().map(q_to_f64).collect();
        let num = scal_mass_vector(&m, 14.0, &quad).unwrap();
        let scale = scal_constant_derived(3) * sphere_volume(3);
        for (a, b) in num.iter().zip(&exact) {
            assert!((a - scale * b).abs() <= 1e-6 * scale * b.abs().max(1e-3), "{a} {b}");
        }
    }

    #[test]
    fn fp_charge_limits() {
        let quad = SphereQuadrature::new(3, 32);
        for (p, u) in [(0usize, h(3, &[], None)), (1, h(3, &[(1, 1)], None)), (2, h(3, &[(0, 1), (1, 1)], None))] {
            let m = sample_aspect(3, p as u32 + 2);
            let conv = fp_convergence(&m, &u, 14.0, &quad).unwrap();
            if p == 1 {
                assert!(conv.limit.abs() < 1e-6 * conv.reference.abs().max(1.0), "{conv:?}");
            } else {
                assert!((conv.ratio_derived - 1.0).abs() < 1e-6, "{conv:?}");
            }
            if let Some(rate) = conv.observed_rate {
                assert!(rate >= 1.0 || conv.rows.last().unwrap().charge.abs() < 1e-9);
            }
        }
        let m = sample_aspect(3, 3);
        let g = ModelMetric::new(&m).unwrap();
        assert!(g.fp_charge(&h(3, &[(0, 1), (1, 1)], None), 3.0, &quad).is_err());
    }

    #[test]
    fn ladder_recovers_limit() {
        let rs = r_ladder(8.0, 5);
        let v: Vec<f64> = rs.iter().map(|r| 2.5 + 3.0 * (-2.0 * r).exp() - 7.0 * (-4.0 * r).exp()).collect();
        assert!((ladder_limit(&v, 1.0) - 2.5).abs() < 1e-13);
    }

    #[test]
    fn hessian_identity_for_linear_functions() {
        for u in [h(3, &[(0, 1)], None), h(3, &[(0, 1)], None).add(&h(3, &[(1, 1)], None)), h(4, &[(2, 1)], None)] {
            assert!(ker_dscal_star_check(&u).unwrap().is_zero());
        }
        assert!(ker_dscal_star_check(&h(3, &[(0, 2)], None)).is_err());
    }
}
