//! Highest-weight vectors in H_{p+2} (x) Sym^2_0 and comparison with closed-form candidates.
//!
//! Fundamental weights: for n > 3, w1 = eps_1 and w2 = eps_1 + eps_2. For n = 3 the label
//! a w1 + b w2 is the weight ((a + b)/2, (b - a)/2).

use super::tensors::{divergence, linearized_riemann, sym_grad, trace2, wave_tensor};
use crate::error::{Error, Result};
use crate::exactcore::linalg::{nullspace, SparseMatrix, Subspace};
use crate::exactcore::{Field, Indexer, Mono, Poly, PolyTensor, GQ, Q};
use crate::harmonic;
use crate::lorentz::hw::{highest_weight_vectors, label_to_weight_n3, rank, weyl_dimension, z_coordinates, ZCoord};

/// Linear conditions imposed on symmetric tensors before extracting highest-weight vectors.
#[derive(Clone, Copy, Debug, Default)]
pub struct Conditions {
    pub harmonic: bool,
    pub traceless: bool,
    pub divergence_free: bool,
    pub transverse: bool,
}

impl Conditions {
    pub fn harmonic_traceless() -> Self {
        Conditions { harmonic: true, traceless: true, ..Default::default() }
    }
}

fn monomials_over(nz: usize, deg: usize) -> Vec<Mono> {
    crate::exactcore::monomials_of_degree(nz, deg)
}

/// Rank-1 constant tensor dZ^label.
pub fn dz(n: usize, z: &ZCoord) -> PolyTensor<GQ> {
    let mut t = PolyTensor::zero(n + 1, 1, n + 1);
    for (mu, c) in z.coeffs.iter().enumerate() {
        if !c.is_zero() {
            t.set(&[mu], Poly::constant(n + 1, c.clone()));
        }
    }
    t
}

/// a (x) b for rank-1 tensors.
pub fn outer(a: &PolyTensor<GQ>, b: &PolyTensor<GQ>) -> PolyTensor<GQ> {
    let mut t = PolyTensor::zero(a.dim, 2, a.nvars);
    for mu in 0..a.dim {
        for nu in 0..a.dim {
            let p = a.get(&[mu]).mul(b.get(&[nu]));
            if !p.is_zero() {
                t.set(&[mu, nu], p);
            }
        }
    }
    t
}

/// Symmetric product a b = (a (x) b + b (x) a)/2.
pub fn sym_product(a: &PolyTensor<GQ>, b: &PolyTensor<GQ>) -> PolyTensor<GQ> {
    outer(a, b).add(&outer(b, a)).scale(&GQ::from_q(Q::new(1.into(), 2.into())))
}

/// Weight-space basis of degree-deg symmetric 2-tensors, built from Z-monomials.
fn weight_candidates(n: usize, deg: usize, weight: &[i64]) -> Vec<PolyTensor<GQ>> {
    let zs = z_coordinates(n);
    let nz = zs.len();
    let l = rank(n);
    let mut out = Vec::new();
    for m in monomials_over(nz, deg) {
        let mut wm = vec![0i64; l];
        for (k, &e) in m.iter().enumerate() {
            for j in 0..l {
                wm[j] += zs[k].weight[j] * e as i64;
            }
        }
        for a in 0..nz {
            for b in a..nz {
                let w: Vec<i64> = (0..l).map(|j| wm[j] + zs[a].weight[j] + zs[b].weight[j]).collect();
                if w != weight {
                    continue;
                }
                let mut poly = Poly::one(n + 1);
                for (k, &e) in m.iter().enumerate() {
                    if e > 0 {
                        poly = poly.mul(&zs[k].poly().pow(e as u32));
                    }
                }
                out.push(sym_product(&dz(n, &zs[a]), &dz(n, &zs[b])).mul_poly(&poly));
            }
        }
    }
    out
}

/// Kernel, as combinations of `basis`, of the linear maps listed in `maps`.
fn kernel_in_span(basis: &[PolyTensor<GQ>], maps: &[&dyn Fn(&PolyTensor<GQ>) -> PolyTensor<GQ>]) -> Vec<PolyTensor<GQ>> {
    if maps.is_empty() || basis.is_empty() {
        return basis.to_vec();
    }
    let mut ix: Indexer<(usize, usize, Mono)> = Indexer::new();
    let mut cols = Vec::new();
    for b in basis {
        let mut col = Vec::new();
        for (k, f) in maps.iter().enumerate() {
            let img = f(b);
            for (fl, p) in img.comps.iter().enumerate() {
                for (e, c) in p.terms() {
                    col.push((ix.index((k, fl, e.clone())), c.clone()));
                }
            }
        }
        cols.push(col);
    }
    let mut rows: Vec<Vec<(usize, GQ)>> = vec![Vec::new(); ix.len()];
    for (j, col) in cols.iter().enumerate() {
        for (r, c) in col {
            rows[*r].push((j, c.clone()));
        }
    }
    let mut m = SparseMatrix::new(basis.len());
    for r in rows {
        m.push_row(r);
    }
    nullspace(&m)
        .iter()
        .map(|c| {
            let terms: Vec<(GQ, &PolyTensor<GQ>)> = c.iter().cloned().zip(basis.iter()).collect();
            PolyTensor::linear_combination(&terms)
        })
        .collect()
}

fn position_contraction(h: &PolyTensor<GQ>) -> PolyTensor<GQ> {
    let mut r = PolyTensor::zero(h.dim, 1, h.nvars);
    for nu in 0..h.dim {
        let mut s = Poly::zero(h.nvars);
        for mu in 0..h.dim {
            s = s.add(&h.get(&[mu, nu]).mul_var(mu));
        }
        r.set(&[nu], s);
    }
    r
}

/// The weight space of degree-deg symmetric tensors cut out by `cond`.
pub fn constrained_weight_space(n: usize, deg: usize, weight: &[i64], cond: Conditions) -> Vec<PolyTensor<GQ>> {
    let cands = weight_candidates(n, deg, weight);
    let wave = |h: &PolyTensor<GQ>| wave_tensor(h);
    let tr = |h: &PolyTensor<GQ>| PolyTensor::scalar(trace2(h), h.dim);
    let div = |h: &PolyTensor<GQ>| divergence(h);
    let tv = |h: &PolyTensor<GQ>| position_contraction(h);
    let mut maps: Vec<&dyn Fn(&PolyTensor<GQ>) -> PolyTensor<GQ>> = Vec::new();
    if cond.harmonic {
        maps.push(&wave);
    }
    if cond.traceless {
        maps.push(&tr);
    }
    if cond.divergence_free {
        maps.push(&div);
    }
    if cond.transverse {
        maps.push(&tv);
    }
    kernel_in_span(&cands, &maps)
}

/// Highest-weight vectors of the given weight among degree-deg symmetric tensors satisfying `cond`.
pub fn hw_vectors(n: usize, deg: usize, weight: &[i64], cond: Conditions) -> Result<Vec<PolyTensor<GQ>>> {
    let ws = constrained_weight_space(n, deg, weight, cond);
    if ws.is_empty() {
        return Ok(Vec::new());
    }
    highest_weight_vectors(n, &ws, weight)
}

/// True if `v` lies in the span of `vs` (both nonzero-checked by the caller).
pub fn in_span(vs: &[PolyTensor<GQ>], v: &PolyTensor<GQ>) -> bool {
    let mut ix = Indexer::new();
    let rows: Vec<_> = vs.iter().map(|t| t.to_coords(&mut ix)).collect();
    let target = v.to_coords(&mut ix);
    match Subspace::new(ix.len(), &rows) {
        Ok(s) => s.contains(&target),
        Err(_) => false,
    }
}

/// Weight label and its eps-coordinates.
#[derive(Clone, Debug)]
pub struct WeightLabel {
    pub label: String,
    pub weight: Vec<i64>,
}

fn eps_weight(n: usize, a: i64, b: i64) -> Vec<i64> {
    // a w1 + b w2 with w1 = eps_1, w2 = eps_1 + eps_2 (n > 3)
    let mut w = vec![0; rank(n)];
    w[0] = a + b;
    w[1] = b;
    w
}

/// The summands of H_{p+2} (x) Sym^2_0 in decreasing order.
pub fn decomposition_labels(n: usize, p: i64) -> Vec<WeightLabel> {
    let mk = |label: String, weight: Vec<i64>| WeightLabel { label, weight };
    if n == 3 {
        let pairs = [(p + 4, p + 4), (p + 2, p + 4), (p + 4, p + 2), (p, p + 4), (p + 4, p), (p + 2, p + 2), (p + 2, p), (p, p + 2), (p, p)];
        pairs.iter().map(|&(a, b)| mk(format!("{a}w1+{b}w2"), label_to_weight_n3(a, b).unwrap())).collect()
    } else {
        vec![
            mk(format!("{}w1", p + 4), eps_weight(n, p + 4, 0)),
            mk(format!("{}w1+w2", p + 2), eps_weight(n, p + 2, 1)),
            mk(format!("{}w1+2w2", p), eps_weight(n, p, 2)),
            mk(format!("{}w1", p + 2), eps_weight(n, p + 2, 0)),
            mk(format!("{}w1+w2", p), eps_weight(n, p, 1)),
            mk(format!("{}w1", p), eps_weight(n, p, 0)),
        ]
    }
}

/// Label of the summand identified with W_p.
pub fn weyl_labels(n: usize, p: i64) -> Vec<WeightLabel> {
    let all = decomposition_labels(n, p);
    if n == 3 {
        vec![all[3].clone(), all[4].clone()]
    } else {
        vec![all[2].clone()]
    }
}

#[derive(Clone, Debug)]
pub struct HwEntry {
    pub label: String,
    pub weight: Vec<i64>,
    pub vectors: Vec<PolyTensor<GQ>>,
    pub de_donder: bool,
    pub transverse: bool,
    pub weyl_dimension: Q,
}

#[derive(Clone, Debug)]
pub struct Comparison {
    pub name: String,
    pub matches: bool,
    pub note: String,
}

#[derive(Clone, Debug)]
pub struct HwReport {
    pub n: usize,
    pub p: usize,
    pub entries: Vec<HwEntry>,
    pub comparisons: Vec<Comparison>,
    pub dimension_sum: Q,
    pub dimension_expected: usize,
    pub weyl_space_dimension: Q,
    pub flags: Vec<String>,
}

fn zpoly(n: usize, label: i32) -> Poly<GQ> {
    crate::lorentz::hw::z_coord(n, label).poly()
}

fn dzl(n: usize, label: i32) -> PolyTensor<GQ> {
    dz(n, &crate::lorentz::hw::z_coord(n, label))
}

fn zpow(n: usize, label: i32, e: i64) -> Poly<GQ> {
    if e < 0 {
        Poly::zero(n + 1)
    } else {
        zpoly(n, label).pow(e as u32)
    }
}

fn gq(a: i64, b: i64) -> GQ {
    GQ::from_q(Q::new(a.into(), b.into()))
}

/// Closed-form candidates for n > 3, keyed by summand index.
fn printed_general(n: usize, p: i64) -> Vec<(usize, String, PolyTensor<GQ>)> {
    let d1 = dzl(n, -1);
    let d2 = dzl(n, -2);
    let z2 = zpoly(n, -2);
    let s11 = outer(&d1, &d1);
    let s12 = outer(&d1, &d2).add(&outer(&d2, &d1));
    let s22 = outer(&d2, &d2);
    let h_a = s11.mul_poly(&zpow(n, -1, p + 2));
    let h_b = s11.mul_poly(&zpow(n, -1, p + 1).mul(&z2)).sub(&s12.mul_poly(&zpow(n, -1, p + 2)).scale(&gq(1, 2)));
    let h_c = s22
        .mul_poly(&zpow(n, -1, p + 2))
        .sub(&s12.mul_poly(&z2.mul(&zpow(n, -1, p + 1))))
        .add(&s11.mul_poly(&zpow(n, -1, p).mul(&z2.pow(2))));
    // h_{(p+2)w1}, transcribed literally (first sum pairs Z^j with dZ^j)
    let labels: Vec<i32> = z_coordinates(n).iter().map(|z| z.label).collect();
    let mut t1 = PolyTensor::zero(n + 1, 2, n + 1);
    let mut t1b = PolyTensor::zero(n + 1, 2, n + 1);
    let mut zz = Poly::zero(n + 1);
    let mut eta_t = PolyTensor::zero(n + 1, 2, n + 1);
    for &j in &labels {
        let dj = dzl(n, j);
        t1 = t1.add(&outer(&d1, &dj).add(&outer(&dj, &d1)).mul_poly(&zpoly(n, j)));
        let dmj = dzl(n, -j);
        t1b = t1b.add(&outer(&d1, &dmj).add(&outer(&dmj, &d1)).mul_poly(&zpoly(n, j)));
        zz = zz.add(&zpoly(n, j).mul(&zpoly(n, -j)));
        eta_t = eta_t.add(&outer(&dj, &dzl(n, -j)));
    }
    let np = 2 * p + n as i64 + 1;
    let tail = s11
        .mul_poly(&zpow(n, -1, p).mul(&zz))
        .scale(&gq(p + 1, np))
        .add(&eta_t.mul_poly(&zpow(n, -1, p + 2)).scale(&gq(1, n as i64 + 1)));
    let h_d = t1.mul_poly(&zpow(n, -1, p + 1)).scale(&gq(1, 2)).sub(&tail);
    let h_d2 = t1b.mul_poly(&zpow(n, -1, p + 1)).scale(&gq(1, 2)).sub(&tail);
    vec![
        (0, "H_(p+4)w1".into(), h_a),
        (1, "H_(p+2)w1+w2".into(), h_b),
        (2, "H_pw1+2w2".into(), h_c),
        (3, "h_(p+2)w1".into(), h_d),
        (3, "h_(p+2)w1 with Z^j paired with dZ^-j".into(), h_d2),
    ]
}

/// Closed-form candidates for n = 3 (real coordinates X^2 +- i X^3), keyed by summand index.
fn printed_n3(p: i64) -> Vec<(usize, String, PolyTensor<GQ>)> {
    let n = 3;
    let z1 = zpoly(n, -1);
    let d1 = dzl(n, -1);
    let w = zpoly(n, -2);
    let dw = dzl(n, -2);
    let wb = zpoly(n, 2).scale(&GQ::from_i64(2));
    let dwb = dzl(n, 2).scale(&GQ::from_i64(2));
    let s11 = outer(&d1, &d1);
    let h1 = s11.mul_poly(&z1.pow((p + 2) as u32));
    let h2 = s11.mul_poly(&zpow(n, -1, p + 1).mul(&w)).sub(&sym_product(&d1, &dw).mul_poly(&z1.pow((p + 2) as u32)));
    let h3 = s11.mul_poly(&zpow(n, -1, p + 1).mul(&wb)).sub(&sym_product(&d1, &dwb).mul_poly(&z1.pow((p + 2) as u32)));
    let sq = |a: &PolyTensor<GQ>| outer(a, a);
    let b4 = d1.mul_poly(&w).sub(&dw.mul_poly(&w));
    let h4 = sq(&b4).mul_poly(&zpow(n, -1, p));
    let b5 = d1.mul_poly(&wb).sub(&dw.mul_poly(&wb));
    let h5 = sq(&b5).mul_poly(&zpow(n, -1, p));
    vec![
        (0, "H_(p+4)w1+(p+4)w2".into(), h1),
        (1, "H_(p+2)w1+(p+4)w2".into(), h2),
        (2, "H_(p+4)w1+(p+2)w2".into(), h3),
        (3, "H_pw1+(p+4)w2".into(), h4),
        (4, "H_(p+4)w1+pw2".into(), h5),
    ]
}

/// Candidate for H_{p w1 + (p+4) w2}, n = 3, with (X^0 + X^1) in the second bracket term.
pub fn corrected_chiral_candidate(p: i64) -> PolyTensor<GQ> {
    let n = 3;
    let z1 = zpoly(n, -1);
    let b = dzl(n, -1).mul_poly(&zpoly(n, -2)).sub(&dzl(n, -2).mul_poly(&z1));
    outer(&b, &b).mul_poly(&zpow(n, -1, p))
}

/// Lowered vector fields xi with L_xi eta = 2 sym(d xi).
fn lie_derivative_checks(n: usize, p: i64, out: &mut Vec<Comparison>) {
    let d1 = dzl(n, -1);
    let d2 = dzl(n, -2);
    let z2 = zpoly(n, -2);
    let xi_a = d1.mul_poly(&zpow(n, -1, p + 3)).scale(&gq(1, 2 * (p + 3)));
    let h_a = outer(&d1, &d1).mul_poly(&zpow(n, -1, p + 2));
    let ok_a = sym_grad(&xi_a) == h_a;
    out.push(Comparison {
        name: "L_xi eta for xi_(p+4)w1".into(),
        matches: ok_a,
        note: if ok_a {
            "(Z^-1)^(p+3) e_+1 / (2(p+3)) generates H_(p+4)w1; the subscript (p+4)w1 is the consistent label".into()
        } else {
            "Lie derivative does not reproduce H_(p+4)w1".into()
        },
    });
    let xi_b = d1
        .mul_poly(&zpow(n, -1, p + 2).mul(&z2))
        .sub(&d2.mul_poly(&zpow(n, -1, p + 3)))
        .scale(&gq(1, 2 * (p + 2)));
    let s12 = outer(&d1, &d2).add(&outer(&d2, &d1));
    let h_b = outer(&d1, &d1).mul_poly(&zpow(n, -1, p + 1).mul(&z2)).sub(&s12.mul_poly(&zpow(n, -1, p + 2)).scale(&gq(1, 2)));
    let ok_b = sym_grad(&xi_b) == h_b;
    out.push(Comparison {
        name: "L_xi eta for xi_(p+2)w1+w2".into(),
        matches: ok_b,
        note: if ok_b { "identity holds with e_1 read as e_+1".into() } else { "identity fails".into() },
    });
}

/// Builds all highest-weight vectors of H_{p+2} (x) Sym^2_0 and compares closed-form candidates.
pub fn hw_vectors_weyl(n: usize, p: usize) -> Result<HwReport> {
    if !(3..=6).contains(&n) {
        return Err(Error::Invalid("n must lie in 3..=6".into()));
    }
    let pi = p as i64;
    let labels = decomposition_labels(n, pi);
    let mut entries = Vec::new();
    let mut flags = Vec::new();
    let mut dsum = Q::zero();
    for wl in &labels {
        let vs = hw_vectors(n, p + 2, &wl.weight, Conditions::harmonic_traceless())?;
        if vs.len() != 1 {
            flags.push(format!("summand {} has {} highest-weight vectors", wl.label, vs.len()));
        }
        let dd = vs.iter().all(|v| divergence(v).is_zero());
        let tv = vs.iter().all(|v| position_contraction(v).is_zero());
        let wd = weyl_dimension(n, &wl.weight);
        dsum += wd.clone() * Q::from_i64(vs.len() as i64);
        entries.push(HwEntry { label: wl.label.clone(), weight: wl.weight.clone(), vectors: vs, de_donder: dd, transverse: tv, weyl_dimension: wd });
    }
    let n1 = n + 1;
    let expected = harmonic::dim_formula(n, p + 2) * (n1 * (n1 + 1) / 2 - 1);
    let mut comparisons = Vec::new();
    let printed = if n == 3 { printed_n3(pi) } else { printed_general(n, pi) };
    for (k, name, t) in printed {
        let e = &entries[k];
        let ok = !t.is_zero() && !e.vectors.is_empty() && in_span(&e.vectors, &t);
        let note = if ok {
            "proportional to the constructed vector".to_string()
        } else {
            "printed expression is not a highest-weight vector of this summand; constructed vector is authoritative".to_string()
        };
        if !ok {
            flags.push(format!("closed form {} does not match", name));
        }
        comparisons.push(Comparison { name, matches: ok, note });
    }
    if n == 3 {
        let c = corrected_chiral_candidate(pi);
        let ok = in_span(&entries[3].vectors, &c);
        comparisons.push(Comparison {
            name: "H_pw1+(p+4)w2 with (X^0+X^1) in the second term".into(),
            matches: ok,
            note: "(X^0+X^1)^p [(X^2+iX^3) dZ^-1 - (X^0+X^1) dZ^-2]^2".into(),
        });
    }
    lie_derivative_checks(n, pi, &mut comparisons);
    if comparisons.iter().any(|c| c.name == "L_xi eta for xi_(p+4)w1" && c.matches) {
        flags.push("vector-field subscript xi_(p+2)w1 is inconsistent: its Lie derivative lies in the (p+4)w1 summand".into());
    }
    // Riemann component on the summand identified with W_p (n > 3)
    if n > 3 {
        if let Some(h) = printed_general(n, pi).into_iter().find(|x| x.0 == 2).map(|x| x.2) {
            let r = linearized_riemann(&h);
            let e1 = frame_vector(n, -1);
            let e2 = frame_vector(n, -2);
            let comp = contract4(&r, [&e1, &e2, &e1, &e2]);
            let target = zpow(n, -1, pi).scale(&GQ::from_i64((pi + 2) * (pi + 3)));
            let ratio = ratio_of(&comp, &target);
            // the printed value omits the -1/2 prefactor of the linearized Riemann operator
            let ok = ratio.as_ref().map(|r| *r == GQ::one() || *r == gq(-1, 2)).unwrap_or(false);
            comparisons.push(Comparison {
                name: "R(H_pw1+2w2)(e-1,e-2,e-1,e-2) = (p+2)(p+3)(Z^-1)^p".into(),
                matches: ok,
                note: match ratio {
                    Some(r) => format!(
                        "computed / printed = {} (the operator carries a -1/2 prefactor)",
                        crate::exactcore::json::scalar_json(&r)
                    ),
                    None => "not proportional".into(),
                },
            });
        }
    }
    let wdim = weyl_labels(n, pi).iter().map(|w| weyl_dimension(n, &w.weight)).fold(Q::zero(), |a, b| a + b);
    Ok(HwReport { n, p, entries, comparisons, dimension_sum: dsum, dimension_expected: expected, weyl_space_dimension: wdim, flags })
}

/// Frame vector e_label dual to the Z-coordinates: dZ^a(e_b) = delta^a_b.
pub fn frame_vector(n: usize, label: i32) -> Vec<GQ> {
    // solve the linear system C v = e_label where rows of C are the Z-coefficient vectors
    let zs = z_coordinates(n);
    let n1 = n + 1;
    let rows: Vec<Vec<GQ>> = zs.iter().map(|z| z.coeffs.clone()).collect();
    let rhs: Vec<GQ> = zs.iter().map(|z| if z.label == label { GQ::one() } else { GQ::zero() }).collect();
    let m = SparseMatrix::from_dense(&rows);
    let mut mm = SparseMatrix::new(n1);
    for r in &m.rows {
        mm.rows.push(r.clone());
    }
    crate::exactcore::linalg::solve(&mm, &rhs).expect("Z-frame is invertible")
}

fn contract4(t: &PolyTensor<GQ>, v: [&Vec<GQ>; 4]) -> Poly<GQ> {
    let mut s = Poly::zero(t.nvars);
    for idx in t.indices() {
        let c = v[0][idx[0]].mul(&v[1][idx[1]]).mul(&v[2][idx[2]]).mul(&v[3][idx[3]]);
        if !c.is_zero() {
            s.add_scaled(t.get(&idx), &c);
        }
    }
    s
}

fn ratio_of(a: &Poly<GQ>, b: &Poly<GQ>) -> Option<GQ> {
    let (e, c) = b.terms().next()?;
    let r = a.coeff(e).div(c);
    if *a == b.scale(&r) {
        Some(r)
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn frame_is_dual() {
        for n in [3, 4, 5] {
            for z in z_coordinates(n) {
                let v = frame_vector(n, z.label);
                for w in z_coordinates(n) {
                    let s = w.coeffs.iter().zip(&v).fold(GQ::zero(), |a, (x, y)| a.add(&x.mul(y)));
                    assert_eq!(s, if w.label == z.label { GQ::one() } else { GQ::zero() });
                }
            }
        }
    }

    #[test]
    fn general_n_report() {
        let r = hw_vectors_weyl(4, 0).unwrap();
        assert!(r.entries.iter().all(|e| e.vectors.len() == 1));
        assert_eq!(r.dimension_sum, Q::from_i64(r.dimension_expected as i64));
        assert_eq!(r.weyl_space_dimension, Q::from_i64(35));
        let by = |s: &str| r.comparisons.iter().find(|c| c.name.starts_with(s)).unwrap().matches;
        assert!(by("H_(p+4)w1"));
        assert!(by("H_(p+2)w1+w2"));
        assert!(by("H_pw1+2w2"));
        assert!(by("L_xi eta for xi_(p+4)w1"));
        assert!(by("L_xi eta for xi_(p+2)w1+w2"));
        // the first three summands satisfy the gauge condition, the pure-gauge ones are not transverse
        assert!(r.entries[..3].iter().all(|e| e.de_donder));
        assert!(r.entries[2].transverse);
    }

    #[test]
    fn n3_report() {
        let r = hw_vectors_weyl(3, 0).unwrap();
        assert!(r.entries.iter().all(|e| e.vectors.len() == 1));
        assert_eq!(r.dimension_sum, Q::from_i64(r.dimension_expected as i64));
        assert_eq!(r.weyl_space_dimension, Q::from_i64(10));
        let by = |s: &str| r.comparisons.iter().find(|c| c.name == s).unwrap().matches;
        assert!(by("H_(p+4)w1+(p+4)w2"));
        assert!(by("H_pw1+(p+4)w2 with (X^0+X^1) in the second term"));
        assert!(!by("H_pw1+(p+4)w2"));
        assert!(r.entries[..5].iter().all(|e| e.de_donder));
    }
}
