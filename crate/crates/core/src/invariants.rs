//! Linear masses: conformal, Weyl and (n = 3) chiral Weyl masses, with equivariance checks.
//!
//! All integrals are relative to Vol(S^{n-1}).

use crate::error::{Error, Result};
use crate::exactcore::field::{q, q_to_f64};
use crate::exactcore::{sphere_integral, sphere_normal_form, Field, Poly, PolyTensor, GQ, Q};
use crate::harmonic::build_hp;
use crate::lorentz::{
    act_on_poly, act_on_tensor, algebra_act_on_poly, algebra_act_on_tensor, eta, generators, AlgebraElement, Generator,
    LorentzElement,
};
use crate::massaspect::{
    covariant_derivative_tensor, generator_action, group_action_numeric, tangentially_equal, SphereQuadrature,
    SphereTensor, TangentField,
};
use crate::weylspace::space::build_wp;
use crate::weylspace::tensors::check_weyl_constraints;
use num_traits::Signed;
use rayon::prelude::*;
use std::fmt;
use std::str::FromStr;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    Conformal,
    Weyl,
    WeylPlus,
    WeylMinus,
}

impl Family {
    /// Decay order k matching the dual space H_{n1} or W_{n1}.
    pub fn weight(&self, n: usize, n1: usize) -> u32 {
        match self {
            Family::Conformal => (n - 1 + n1) as u32,
            _ => (n + 1 + n1) as u32,
        }
    }

    pub fn is_chiral(&self) -> bool {
        matches!(self, Family::WeylPlus | Family::WeylMinus)
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Family::Conformal => "conformal",
            Family::Weyl => "weyl",
            Family::WeylPlus => "weyl+",
            Family::WeylMinus => "weyl-",
        };
        f.write_str(s)
    }
}

impl FromStr for Family {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "conformal" => Ok(Family::Conformal),
            "weyl" => Ok(Family::Weyl),
            "weyl+" | "weyl_plus" | "weylplus" => Ok(Family::WeylPlus),
            "weyl-" | "weyl_minus" | "weylminus" => Ok(Family::WeylMinus),
            _ => Err(format!("unknown family {:?} (conformal, weyl, weyl+, weyl-)", s)),
        }
    }
}

/// Dual vector of a mass against the stored basis of H_{n1} or W_{n1}.
#[derive(Clone, Debug, PartialEq)]
pub struct MassValue {
    pub family: Family,
    pub n: usize,
    pub n1: usize,
    pub k: u32,
    pub coefficients: Vec<GQ>,
}

fn check_weight(family: Family, m: &SphereTensor, n1: usize) -> Result<()> {
    let want = family.weight(m.n, n1);
    if m.k != want {
        return Err(Error::Invalid(format!(
            "{} mass with n1 = {} needs decay order k = {}, got {}",
            family, n1, want, m.k
        )));
    }
    if !m.is_transverse() {
        return Err(Error::Invalid("mass aspect is not transverse".into()));
    }
    Ok(())
}

fn degree_of_poly(p: &Poly<Q>) -> Result<usize> {
    let d = p.degree().unwrap_or(0);
    if !p.is_homogeneous_of(d) && !p.is_zero() {
        return Err(Error::Invalid("dual polynomial is not homogeneous".into()));
    }
    Ok(d)
}

fn degree_of_tensor(w: &PolyTensor<Q>) -> usize {
    w.comps.iter().filter_map(|p| p.degree()).max().unwrap_or(0)
}

/// Integral of P(1, x) tr^sigma(m); no weight check.
fn conformal_pairing(m: &SphereTensor, p: &Poly<Q>) -> Q {
    sphere_integral(&p.dehomogenize().mul(&m.sigma_trace()))
}

/// Conformal mass against P in H_{n1}.
pub fn conformal_mass(m: &SphereTensor, p: &Poly<Q>) -> Result<Q> {
    if p.nvars() != m.n + 1 {
        return Err(Error::Invalid("dual polynomial must live on R^{n,1}".into()));
    }
    let n1 = degree_of_poly(p)?;
    check_weight(Family::Conformal, m, n1)?;
    Ok(conformal_pairing(m, p))
}

/// Energy-momentum vector (p_0, ..., p_n) for k = n.
pub fn wang_mass_vector(m: &SphereTensor) -> Result<Vec<Q>> {
    if m.k as usize != m.n {
        return Err(Error::Invalid(format!("mass vector needs k = n = {}, got {}", m.n, m.k)));
    }
    (0..=m.n).map(|mu| conformal_mass(m, &Poly::var(m.n + 1, mu))).collect()
}

/// J from the Hodge star: star(e_+ ^ X) = e_+ ^ J(X), volume form eps_{0123} = +1.
/// Returns the 3 x 3 matrix J^c_a (column a is J(d_a)) with entries linear in x.
pub fn hodge_j() -> Vec<Vec<Poly<Q>>> {
    let n = 3;
    let e: Vec<Poly<Q>> = crate::lorentz::null_vector_field(n);
    let mut j = vec![vec![Poly::zero(n); n]; n];
    for a in 0..n {
        // bivector B = e_+ ^ d_a
        let mut b = vec![vec![Poly::zero(n); 4]; 4];
        for r in 0..4 {
            for s in 0..4 {
                let mut v = Poly::zero(n);
                if s == a + 1 {
                    v = v.add(&e[r]);
                }
                if r == a + 1 {
                    v = v.sub(&e[s]);
                }
                b[r][s] = v;
            }
        }
        let star = hodge_star(&b);
        for c in 0..n {
            j[c][a] = star[0][c + 1].clone();
        }
    }
    j
}

pub(crate) fn perm_sign(p: [usize; 4]) -> i64 {
    let mut s = 1;
    for i in 0..4 {
        for k in i + 1..4 {
            if p[i] == p[k] {
                return 0;
            }
            if p[i] > p[k] {
                s = -s;
            }
        }
    }
    s
}

/// (star B)^{mu nu} = (1/2) eta^{mu mu} eta^{nu nu} eps_{mu nu rho sigma} B^{rho sigma}.
pub fn hodge_star(b: &[Vec<Poly<Q>>]) -> Vec<Vec<Poly<Q>>> {
    let nv = b[0][0].nvars();
    let mut out = vec![vec![Poly::zero(nv); 4]; 4];
    for mu in 0..4 {
        for nu in 0..4 {
            let mut s = Poly::zero(nv);
            for rho in 0..4 {
                for sg in 0..4 {
                    let sign = perm_sign([mu, nu, rho, sg]);
                    if sign != 0 {
                        s.add_scaled(&b[rho][sg], &q(sign * eta(mu) * eta(nu)));
                    }
                }
            }
            out[mu][nu] = s.scale(&crate::exactcore::qr(1, 2));
        }
    }
    out
}

/// C_ab(x) = W(e_+, d_a, e_+, d_b) at X = (1, x), spatial a, b; optional J on the second slot.
fn weyl_contraction(w: &PolyTensor<Q>, n: usize, j: Option<&[Vec<Poly<Q>>]>) -> Vec<Vec<Poly<Q>>> {
    let e: Vec<Poly<Q>> = crate::lorentz::null_vector_field(n);
    let wd: Vec<Poly<Q>> = w.comps.iter().map(|p| p.dehomogenize()).collect();
    let at = |i: [usize; 4]| &wd[w.flat(&i)];
    let mut c = vec![vec![Poly::zero(n); n]; n];
    for a in 0..n {
        for b in 0..n {
            let mut s = Poly::zero(n);
            for mu in 0..=n {
                for nu in 0..=n {
                    let comp = at([mu, a + 1, nu, b + 1]);
                    if comp.is_zero() {
                        continue;
                    }
                    s = s.add(&e[mu].mul(&e[nu]).mul(comp));
                }
            }
            c[a][b] = s;
        }
    }
    match j {
        None => c,
        Some(j) => {
            // C'_ab = sum_c J^c_a C_cb
            let mut out = vec![vec![Poly::zero(n); n]; n];
            for a in 0..n {
                for b in 0..n {
                    let mut s = Poly::zero(n);
                    for cc in 0..n {
                        s = s.add(&j[cc][a].mul(&c[cc][b]));
                    }
                    out[a][b] = s;
                }
            }
            out
        }
    }
}

fn pair_with(m: &SphereTensor, c: &[Vec<Poly<Q>>]) -> Q {
    let n = m.n;
    let mut s = Poly::zero(n);
    for a in 0..n {
        for b in 0..n {
            s = s.add(&m.m.get(&[a, b]).mul(&c[a][b]));
        }
    }
    sphere_integral(&sphere_normal_form(&s))
}

fn weyl_pairing(m: &SphereTensor, w: &PolyTensor<Q>, with_j: bool) -> Q {
    if with_j {
        let j = hodge_j();
        pair_with(m, &weyl_contraction(w, m.n, Some(&j)))
    } else {
        pair_with(m, &weyl_contraction(w, m.n, None))
    }
}

/// Weyl mass against W in W_{n1}.
pub fn weyl_mass(m: &SphereTensor, w: &PolyTensor<Q>) -> Result<Q> {
    if w.dim != m.n + 1 || w.rank != 4 || w.nvars != m.n + 1 {
        return Err(Error::Invalid("W must be a 4-tensor on R^{n,1}".into()));
    }
    check_weyl_constraints(w)?;
    check_weight(Family::Weyl, m, degree_of_tensor(w))?;
    Ok(weyl_pairing(m, w, false))
}

/// Chiral Weyl mass (n = 3): W(e_+, (Id - iJ) ., e_+, .) for `plus`, Id + iJ otherwise.
pub fn weyl_mass_chiral(m: &SphereTensor, w: &PolyTensor<Q>, plus: bool) -> Result<GQ> {
    if m.n != 3 {
        return Err(Error::Invalid("chiral Weyl masses exist only for n = 3".into()));
    }
    let re = weyl_mass(m, w)?;
    let im = weyl_pairing(m, w, true);
    Ok(GQ::new(re, if plus { -im } else { im }))
}

/// Full dual vector against the stored basis.
pub fn mass_value(family: Family, m: &SphereTensor, n1: usize) -> Result<MassValue> {
    check_weight(family, m, n1)?;
    if family.is_chiral() && m.n != 3 {
        return Err(Error::Invalid("chiral Weyl masses exist only for n = 3".into()));
    }
    let coefficients: Vec<GQ> = match family {
        Family::Conformal => build_hp(m.n, n1).basis.par_iter().map(|p| GQ::real(conformal_pairing(m, p))).collect(),
        _ => {
            let ws = build_wp(m.n, n1);
            (0..ws.dim())
                .into_par_iter()
                .map(|i| chiral_value(family, m, &ws.tensor(i)))
                .collect()
        }
    };
    Ok(MassValue { family, n: m.n, n1, k: m.k, coefficients })
}

fn chiral_value(family: Family, m: &SphereTensor, w: &PolyTensor<Q>) -> GQ {
    let re = weyl_pairing(m, w, false);
    match family {
        Family::WeylPlus => GQ::new(re, -weyl_pairing(m, w, true)),
        Family::WeylMinus => GQ::new(re, weyl_pairing(m, w, true)),
        _ => GQ::real(re),
    }
}

/// Residual of an equivariance check.
#[derive(Clone, Debug, PartialEq)]
pub struct Residual {
    /// max over basis elements of max(|Re|, |Im|)
    pub max_abs: Q,
    pub nonzero: usize,
    pub checked: usize,
}

impl Residual {
    pub fn is_zero(&self) -> bool {
        self.nonzero == 0
    }
}

fn residual_of(values: &[GQ]) -> Residual {
    let mut max_abs = Q::zero();
    let mut nonzero = 0;
    for v in values {
        if !v.is_zero() {
            nonzero += 1;
        }
        for part in [v.real_part().abs(), v.imag_part().abs()] {
            if part > max_abs {
                max_abs = part;
            }
        }
    }
    Residual { max_abs, nonzero, checked: values.len() }
}

/// Phi(a.m)(v) + Phi(m)(a.v) over the basis of the dual space, with the weight check.
pub fn check_equivariance_infinitesimal(family: Family, m: &SphereTensor, n1: usize, g: Generator) -> Result<Residual> {
    check_weight(family, m, n1)?;
    equivariance_residual_unchecked(family, m, n1, g)
}

/// Same as `check_equivariance_infinitesimal` without the weight check (negative controls).
pub fn equivariance_residual_unchecked(family: Family, m: &SphereTensor, n1: usize, g: Generator) -> Result<Residual> {
    let basis = DualBasis::new(family, m.n, n1)?;
    Ok(basis.residual(family, m, g)?)
}

/// Runs the infinitesimal check over every generator, building the dual basis once.
pub fn check_equivariance_all(family: Family, m: &SphereTensor, n1: usize) -> Result<Vec<(Generator, Residual)>> {
    check_weight(family, m, n1)?;
    let basis = DualBasis::new(family, m.n, n1)?;
    generators(m.n).into_iter().map(|g| Ok((g, basis.residual(family, m, g)?))).collect()
}

enum DualBasis {
    Harmonic(Vec<Poly<Q>>),
    Weyl(Vec<PolyTensor<Q>>),
}

impl DualBasis {
    fn new(family: Family, n: usize, n1: usize) -> Result<Self> {
        Ok(match family {
            Family::Conformal => DualBasis::Harmonic(build_hp(n, n1).basis),
            _ => {
                if family.is_chiral() && n != 3 {
                    return Err(Error::Invalid("chiral Weyl masses exist only for n = 3".into()));
                }
                let ws = build_wp(n, n1);
                DualBasis::Weyl((0..ws.dim()).map(|i| ws.tensor(i)).collect())
            }
        })
    }

    fn residual(&self, family: Family, m: &SphereTensor, g: Generator) -> Result<Residual> {
        let am = generator_action(g, m)?;
        let alg = AlgebraElement::<Q>::from_generator(m.n, g);
        let values: Vec<GQ> = match self {
            DualBasis::Harmonic(b) => b
                .par_iter()
                .map(|p| GQ::real(conformal_pairing(&am, p) + conformal_pairing(m, &algebra_act_on_poly(&alg, p))))
                .collect(),
            DualBasis::Weyl(b) => b
                .par_iter()
                .map(|w| {
                    let aw = algebra_act_on_tensor(&alg, w);
                    chiral_value(family, &am, w).add(&chiral_value(family, m, &aw))
                })
                .collect(),
        };
        Ok(residual_of(&values))
    }
}

fn eval_at_null(p: &Poly<Q>, x: &[f64]) -> f64 {
    let mut v = vec![1.0];
    v.extend_from_slice(x);
    p.eval_f64(&v).0
}

/// max over the basis of |Phi(A.m)(A.v) - Phi(m)(v)|, by quadrature of the given order.
pub fn check_equivariance_finite(
    family: Family,
    m: &SphereTensor,
    n1: usize,
    a: &LorentzElement,
    order: usize,
) -> Result<f64> {
    check_weight(family, m, n1)?;
    let n = m.n;
    let quad = SphereQuadrature::new(n, order);
    let am = group_action_numeric(a, m, &quad.nodes);
    let exact_m: Vec<Vec<f64>> = quad.nodes.par_iter().map(|x| m.m.comps.iter().map(|p| p.eval_f64(x).0).collect()).collect();
    let e_plus = |x: &[f64]| {
        let mut v = vec![1.0];
        v.extend_from_slice(x);
        v
    };
    let j = if family.is_chiral() { Some(hodge_j()) } else { None };
    // integral of sum_ab M_ab C_ab(x), C from W at (1, x)
    let weyl_num = |w: &PolyTensor<Q>, sampled: &[Vec<f64>]| -> (f64, f64) {
        let mut re = 0.0;
        let mut im = 0.0;
        for ((x, wt), mm) in quad.nodes.iter().zip(&quad.weights).zip(sampled) {
            let ep = e_plus(x);
            let mut c = vec![0.0; n * n];
            for a in 0..n {
                for b in 0..n {
                    let mut s = 0.0;
                    for mu in 0..=n {
                        for nu in 0..=n {
                            let p = w.get(&[mu, a + 1, nu, b + 1]);
                            if !p.is_zero() {
                                s += ep[mu] * ep[nu] * p.eval_f64(&ep).0;
                            }
                        }
                    }
                    c[a * n + b] = s;
                }
            }
            for a in 0..n {
                for b in 0..n {
                    re += wt * mm[a * n + b] * c[a * n + b];
                    if let Some(j) = &j {
                        let jc: f64 = (0..n).map(|cc| j[cc][a].eval_f64(x).0 * c[cc * n + b]).sum();
                        im += wt * mm[a * n + b] * jc;
                    }
                }
            }
        }
        (re, im)
    };
    let worst = match family {
        Family::Conformal => build_hp(n, n1)
            .basis
            .par_iter()
            .map(|p| {
                let pa = act_on_poly(a, p);
                let mut lhs = 0.0;
                let mut rhs = 0.0;
                for (((x, wt), s), e) in quad.nodes.iter().zip(&quad.weights).zip(&am).zip(&exact_m) {
                    let tr_a: f64 = (0..n).map(|i| s[i * n + i]).sum();
                    lhs += wt * eval_at_null(&pa, x) * tr_a;
                    let xx: f64 = (0..n).flat_map(|i| (0..n).map(move |k| (i, k))).map(|(i, k)| e[i * n + k] * x[i] * x[k]).sum();
                    let tr: f64 = (0..n).map(|i| e[i * n + i]).sum::<f64>() - xx;
                    rhs += wt * eval_at_null(p, x) * tr;
                }
                (lhs - rhs).abs()
            })
            .reduce(|| 0.0, f64::max),
        _ => {
            let ws = build_wp(n, n1);
            (0..ws.dim())
                .into_par_iter()
                .map(|i| {
                    let w = ws.tensor(i);
                    let wa = act_on_tensor(a, &w);
                    let (l_re, l_im) = weyl_num(&wa, &am);
                    let (r_re, r_im) = weyl_num(&w, &exact_m);
                    (l_re - r_re).abs().max((l_im - r_im).abs())
                })
                .reduce(|| 0.0, f64::max)
        }
    };
    Ok(worst)
}

/// V-valued symmetric 2-tensor density with a representation of the generators on V.
#[derive(Clone, Debug)]
pub struct Density {
    pub n: usize,
    pub comps: Vec<PolyTensor<Q>>,
    pub rep: Vec<(Generator, Vec<Vec<Q>>)>,
}

impl Density {
    /// sigma (x) v for the trivial representation.
    pub fn trivial(n: usize) -> Self {
        let rep = generators(n).into_iter().map(|g| (g, vec![vec![Q::zero()]])).collect();
        Density { n, comps: vec![SphereTensor::round(n, 1).m], rep }
    }

    /// e_+^{(x) n1} sigma in the tensor power of the vector representation.
    pub fn null_power(n: usize, n1: usize) -> Self {
        let d = n + 1;
        let size = d.pow(n1 as u32);
        let e: Vec<Poly<Q>> = crate::lorentz::null_vector_field(n);
        let sigma = SphereTensor::round(n, 1).m;
        let unflat = |mut f: usize| {
            let mut idx = vec![0; n1];
            for s in (0..n1).rev() {
                idx[s] = f % d;
                f /= d;
            }
            idx
        };
        let flat = |idx: &[usize]| idx.iter().fold(0, |acc, &i| acc * d + i);
        let comps = (0..size)
            .map(|f| {
                let c = unflat(f).iter().fold(Poly::one(n), |acc, &mu| acc.mul(&e[mu]));
                sigma.mul_poly(&c)
            })
            .collect();
        let rep = generators(n)
            .into_iter()
            .map(|g| {
                let a = AlgebraElement::<Q>::from_generator(n, g);
                let mut mat = vec![vec![Q::zero(); size]; size];
                for f in 0..size {
                    let idx = unflat(f);
                    for s in 0..n1 {
                        for nu in 0..d {
                            let c = &a.m[idx[s]][nu];
                            if c.is_zero() {
                                continue;
                            }
                            let mut src = idx.clone();
                            src[s] = nu;
                            mat[f][flat(&src)] += c;
                        }
                    }
                }
                (g, mat)
            })
            .collect();
        Density { n, comps, rep }
    }
}

/// Counts of failing components of the two intertwining identities:
/// a_i . Phi = nabla_{a_i} Phi + (k+1-n) x^i Phi and
/// r_ij . Phi = nabla_{r_ij} Phi + Phi(r_ij ., .) + Phi(., r_ij .).
pub fn intertwining_density_residual(d: &Density, k: u32) -> Result<(usize, usize)> {
    let n = d.n;
    let mut boost_bad = 0;
    let mut rot_bad = 0;
    for (g, mat) in &d.rep {
        for (alpha, row) in mat.iter().enumerate() {
            let mut lhs = PolyTensor::zero(n, 2, n);
            for (beta, c) in row.iter().enumerate() {
                if !c.is_zero() {
                    lhs = lhs.add(&d.comps[beta].scale(c));
                }
            }
            let phi = &d.comps[alpha];
            let rhs = match *g {
                Generator::Boost(i) => {
                    let nab = covariant_derivative_tensor(phi, &TangentField::boost(n, i))?;
                    let w = q(k as i64 + 1 - n as i64);
                    nab.add(&phi.mul_poly(&Poly::var(n, i - 1)).scale(&w))
                }
                Generator::Rotation(i, j) => {
                    let nab = covariant_derivative_tensor(phi, &TangentField::rotation(n, i, j))?;
                    let (i, j) = (i - 1, j - 1);
                    let mut r = PolyTensor::zero(n, 2, n);
                    for b in 0..n {
                        r.set(&[i, b], phi.get(&[j, b]).clone());
                        r.set(&[j, b], phi.get(&[i, b]).neg());
                    }
                    nab.add(&r).add(&r.permute(&[1, 0]))
                }
            };
            if !tangentially_equal(&lhs, &rhs) {
                match g {
                    Generator::Boost(_) => boost_bad += 1,
                    Generator::Rotation(..) => rot_bad += 1,
                }
            }
        }
    }
    Ok((boost_bad, rot_bad))
}

/// Float summary of a dual vector.
pub fn to_f64(v: &GQ) -> (f64, f64) {
    (q_to_f64(&v.real_part()), q_to_f64(&v.imag_part()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactcore::field::qr;
    use crate::massaspect::random_transverse;

    fn random_aspect(n: usize, k: u32, seed: u64) -> SphereTensor {
        random_transverse(n, k, seed).unwrap()
    }

    fn with_trace(n: usize, k: u32, f: Poly<Q>) -> SphereTensor {
        let g = SphereTensor::round(n, k);
        g.with_tensor(g.m.mul_poly(&f.scale(&(q(1) / q(n as i64 - 1)))))
    }

    #[test]
    fn conformal_examples() {
        let n = 3;
        let g = SphereTensor::round(n, 2);
        assert_eq!(conformal_mass(&g, &Poly::one(4)).unwrap(), q(2));
        let g3 = SphereTensor::round(n, 3);
        assert_eq!(conformal_mass(&g3, &Poly::var(4, 1)).unwrap(), q(0));
        let m = with_trace(n, 3, Poly::var(3, 0));
        assert_eq!(m.sigma_trace(), Poly::var(3, 0));
        assert_eq!(conformal_mass(&m, &Poly::var(4, 1)).unwrap(), qr(1, 3));
        assert!(conformal_mass(&g, &Poly::var(4, 1)).is_err());
    }

    #[test]
    fn wang_vector() {
        let g = SphereTensor::round(3, 3);
        assert_eq!(wang_mass_vector(&g).unwrap(), vec![q(2), q(0), q(0), q(0)]);
        let m = with_trace(3, 3, Poly::var(3, 0));
        assert_eq!(wang_mass_vector(&m).unwrap(), vec![q(0), qr(1, 3), q(0), q(0)]);
        let a = random_aspect(3, 3, 1);
        let b = random_aspect(3, 3, 2);
        let sum = wang_mass_vector(&a.with_tensor(a.m.add(&b.m))).unwrap();
        let sep: Vec<Q> = wang_mass_vector(&a).unwrap().iter().zip(wang_mass_vector(&b).unwrap()).map(|(x, y)| x + y).collect();
        assert_eq!(sum, sep);
        assert!(wang_mass_vector(&SphereTensor::round(3, 2)).is_err());
    }

    #[test]
    fn conformal_sees_only_trace() {
        let m = random_aspect(3, 3, 5);
        let tr = m.sigma_trace();
        let tf = m.with_tensor(m.m.sub(&with_trace(3, 3, tr).m));
        for p in build_hp(3, 1).basis {
            assert!(conformal_mass(&tf, &p).unwrap().is_zero());
        }
    }

    #[test]
    fn conformal_equivariance_exact() {
        for n1 in 0..=2 {
            let k = Family::Conformal.weight(3, n1);
            let m = random_aspect(3, k, 10 + n1 as u64);
            for (g, r) in check_equivariance_all(Family::Conformal, &m, n1).unwrap() {
                assert!(r.is_zero(), "n1={n1} {g} {:?}", r);
            }
            let wrong = SphereTensor { k: k + 1, ..m.clone() };
            assert!(check_equivariance_infinitesimal(Family::Conformal, &wrong, n1, Generator::Boost(1)).is_err());
            let bad = generators(3)
                .into_iter()
                .any(|g| !equivariance_residual_unchecked(Family::Conformal, &wrong, n1, g).unwrap().is_zero());
            assert!(bad, "wrong weight must break equivariance");
            let zero = m.with_tensor(PolyTensor::zero(3, 2, 3));
            assert!(check_equivariance_all(Family::Conformal, &zero, n1).unwrap().iter().all(|(_, r)| r.is_zero()));
        }
    }

    #[test]
    fn weyl_equivariance_exact_n4() {
        let n = 4;
        let k = Family::Weyl.weight(n, 0);
        let m = random_aspect(n, k, 21);
        for (g, r) in check_equivariance_all(Family::Weyl, &m, 0).unwrap() {
            assert!(r.is_zero(), "{g} {:?}", r);
        }
        let wrong = SphereTensor { k: k - 1, ..m };
        let bad = generators(n).into_iter().any(|g| !equivariance_residual_unchecked(Family::Weyl, &wrong, 0, g).unwrap().is_zero());
        assert!(bad);
    }

    #[test]
    fn chiral_equivariance_exact_n3() {
        let m = random_aspect(3, 4, 31);
        for fam in [Family::WeylPlus, Family::WeylMinus] {
            for (g, r) in check_equivariance_all(fam, &m, 0).unwrap() {
                assert!(r.is_zero(), "{fam} {g} {:?}", r);
            }
        }
    }

    #[test]
    fn weyl_kills_pure_trace_and_zero() {
        for (n, fam) in [(4usize, Family::Weyl), (3, Family::WeylPlus)] {
            let k = fam.weight(n, 0);
            let m = with_trace(n, k, Poly::var(n, 0).mul(&Poly::var(n, 1)).add(&Poly::one(n)));
            let v = mass_value(fam, &m, 0).unwrap();
            assert!(v.coefficients.iter().all(|c| c.is_zero()));
            let w0 = PolyTensor::zero(n + 1, 4, n + 1);
            assert!(weyl_mass(&random_aspect(n, k, 3), &w0).unwrap().is_zero());
        }
    }

    #[test]
    fn chiral_conjugate_pair() {
        let m = random_aspect(3, 4, 41);
        let ws = build_wp(3, 0);
        let mut nonzero = false;
        for i in 0..ws.dim() {
            let w = ws.tensor(i);
            let p = weyl_mass_chiral(&m, &w, true).unwrap();
            let mm = weyl_mass_chiral(&m, &w, false).unwrap();
            assert_eq!(p.conj(), mm);
            nonzero |= !p.imag_part().is_zero();
        }
        assert!(nonzero);
        assert!(weyl_mass_chiral(&random_aspect(4, 5, 1), &PolyTensor::zero(5, 4, 5), true).is_err());
    }

    #[test]
    fn hodge_j_properties() {
        let j = hodge_j();
        // south pole -e_1: J(d_2) = d_3, J^2 = -Id on the tangent plane
        let sp = [q(-1), q(0), q(0)];
        let jm: Vec<Vec<Q>> = j.iter().map(|r| r.iter().map(|p| p.eval(&sp)).collect()).collect();
        assert_eq!((jm[0][1].clone(), jm[1][1].clone(), jm[2][1].clone()), (q(0), q(0), q(1)));
        for a in [1, 2] {
            for c in [1, 2] {
                let s: Q = (0..3).map(|b| &jm[c][b] * &jm[b][a]).sum();
                assert_eq!(s, if a == c { q(-1) } else { q(0) });
            }
        }
        // star(e_+ ^ X) = e_+ ^ J(X) at a rational point for tangent X
        let x = [qr(2, 7), qr(3, 7), qr(6, 7)];
        let xv = [qr(3, 7), qr(-2, 7), q(0)];
        let jx: Vec<Q> = (0..3).map(|c| (0..3).map(|a| j[c][a].eval(&x) * &xv[a]).sum()).collect();
        let ep = [q(1), x[0].clone(), x[1].clone(), x[2].clone()];
        let wedge = |u: &[Q], v: &[Q]| -> Vec<Vec<Poly<Q>>> {
            (0..4).map(|r| (0..4).map(|s| Poly::constant(1, &u[r] * &v[s] - &u[s] * &v[r])).collect()).collect()
        };
        let mut xv4 = vec![q(0)];
        xv4.extend_from_slice(&xv);
        let mut jx4 = vec![q(0)];
        jx4.extend(jx);
        let lhs = hodge_star(&wedge(&ep, &xv4));
        assert_eq!(lhs, wedge(&ep, &jx4));
        // star^2 = -Id on bivectors
        assert_eq!(hodge_star(&lhs), wedge(&ep, &xv4).iter().map(|r| r.iter().map(|p| p.neg()).collect::<Vec<_>>()).collect::<Vec<Vec<Poly<Q>>>>());
    }

    #[test]
    fn weyl_mass_quadrature_oracle() {
        let n = 4;
        let ws = build_wp(n, 0);
        let w = ws.tensor(0);
        let m = random_aspect(n, 5, 77);
        let exact = q_to_f64(&weyl_mass(&m, &w).unwrap());
        let quad = SphereQuadrature::new(n, 12);
        let num = quad.integrate(|x| {
            let mut ep = vec![1.0];
            ep.extend_from_slice(x);
            let mut s = 0.0;
            for a in 0..n {
                for b in 0..n {
                    let mab = m.m.get(&[a, b]).eval_f64(x).0;
                    for mu in 0..=n {
                        for nu in 0..=n {
                            s += mab * ep[mu] * ep[nu] * w.get(&[mu, a + 1, nu, b + 1]).eval_f64(&ep).0;
                        }
                    }
                }
            }
            s
        });
        assert!((exact - num).abs() < 1e-10, "{exact} {num}");
        assert!(exact.abs() > 1e-6);
    }

    #[test]
    fn finite_equivariance_converges() {
        let m = random_aspect(3, 3, 91);
        let b = LorentzElement::rational_boost(3, 1, qr(5, 4), qr(3, 4)).unwrap();
        let id = LorentzElement::identity(3);
        assert!(check_equivariance_finite(Family::Conformal, &m, 1, &id, 8).unwrap() < 1e-12);
        let r64 = check_equivariance_finite(Family::Conformal, &m, 1, &b, 64).unwrap();
        let r16 = check_equivariance_finite(Family::Conformal, &m, 1, &b, 16).unwrap();
        assert!(r64 < 1e-9, "{r64}");
        assert!(r64 < r16, "{r64} {r16}");
    }

    #[test]
    fn densities() {
        for n in [3usize, 4] {
            assert_eq!(intertwining_density_residual(&Density::trivial(n), n as u32 - 1).unwrap(), (0, 0));
            let (b, r) = intertwining_density_residual(&Density::trivial(n), n as u32).unwrap();
            assert!(b > 0 && r == 0);
            for n1 in 1..=2 {
                let d = Density::null_power(n, n1);
                assert_eq!(intertwining_density_residual(&d, (n - 1 + n1) as u32).unwrap(), (0, 0));
            }
        }
    }
}
