//! Cartan subalgebra, root vectors and highest-weight vectors of so(n+1, C).
//!
//! Cartan generators: H_1 = -a_1 and H_k = i r_{2k-2, 2k-1} for k >= 2.
//! Null coordinates: Z^{-1} = X^0 + X^1, Z^{+1} = (X^1 - X^0)/2,
//! Z^{-k} = X^{2k-2} + i X^{2k-1}, Z^{+k} = (X^{2k-2} - i X^{2k-1})/2, and Z^0 = X^n for even n.
//! Z^{-k} has weight +eps_k, Z^{+k} has weight -eps_k.

use super::{algebra_act_on_tensor, generators, AlgebraElement};
use crate::error::{Error, Result};
use crate::exactcore::linalg::{nullspace, SparseMatrix};
use crate::exactcore::{Field, Indexer, Poly, PolyTensor, GQ, Q};

/// Rank of so(n+1, C).
pub fn rank(n: usize) -> usize {
    (n + 1) / 2
}

pub fn cartan(n: usize) -> Vec<AlgebraElement<GQ>> {
    let mut hs = vec![AlgebraElement::<GQ>::boost(n, 1).scale(&GQ::from_i64(-1))];
    for k in 2..=rank(n) {
        hs.push(AlgebraElement::<GQ>::rotation(n, 2 * k - 2, 2 * k - 1).scale(&GQ::i()));
    }
    hs
}

/// Positive roots eps_i +- eps_j (i < j), plus eps_i when n + 1 is odd.
pub fn positive_roots(n: usize) -> Vec<Vec<i64>> {
    let l = rank(n);
    let mut out = Vec::new();
    for i in 0..l {
        for j in i + 1..l {
            for s in [-1, 1] {
                let mut r = vec![0; l];
                r[i] = 1;
                r[j] = s;
                out.push(r);
            }
        }
        if (n + 1) % 2 == 1 {
            let mut r = vec![0; l];
            r[i] = 1;
            out.push(r);
        }
    }
    out
}

/// Root vector for the given root, solved from [H_j, E] = alpha_j E.
pub fn root_vector(n: usize, root: &[i64]) -> Result<AlgebraElement<GQ>> {
    let gens: Vec<AlgebraElement<GQ>> =
        generators(n).into_iter().map(|g| AlgebraElement::<GQ>::from_generator(n, g)).collect();
    let hs = cartan(n);
    let n1 = n + 1;
    let mut mat = SparseMatrix::<GQ>::new(gens.len());
    for (j, h) in hs.iter().enumerate() {
        let al = GQ::from_i64(root[j]);
        let cols: Vec<AlgebraElement<GQ>> =
            gens.iter().map(|g| h.bracket(g).add(&g.scale(&al.neg()))).collect();
        for r in 0..n1 {
            for c in 0..n1 {
                mat.push_row(cols.iter().enumerate().map(|(k, e)| (k, e.m[r][c].clone())));
            }
        }
    }
    let ns = nullspace(&mat);
    if ns.len() != 1 {
        return Err(Error::Internal(format!("root space for {:?} has dimension {}", root, ns.len())));
    }
    let mut e = AlgebraElement::<GQ>::zero(n);
    for (c, g) in ns[0].iter().zip(&gens) {
        e = e.add(&g.scale(c));
    }
    Ok(e)
}

pub fn raising_operators(n: usize) -> Result<Vec<AlgebraElement<GQ>>> {
    positive_roots(n).iter().map(|r| root_vector(n, r)).collect()
}

/// Root of an algebra element relative to the Cartan, if it is a root vector.
pub fn root_of(n: usize, e: &AlgebraElement<GQ>) -> Option<Vec<GQ>> {
    let mut out = Vec::new();
    let (r0, c0) = (0..=n).flat_map(|r| (0..=n).map(move |c| (r, c))).find(|&(r, c)| !e.m[r][c].is_zero())?;
    for h in cartan(n) {
        let b = h.bracket(e);
        let lam = b.m[r0][c0].div(&e.m[r0][c0]);
        if b != e.scale(&lam) {
            return None;
        }
        out.push(lam);
    }
    Some(out)
}

/// Translation-type generators s_A = a_A + r_{1A} and the ladder combinations
/// (1/2)(s_{2k-2} + i s_{2k-1}), s_{2k-2} - i s_{2k-1}, and s_n for even n.
pub fn ladder_operators(n: usize) -> Vec<(String, AlgebraElement<GQ>)> {
    let s = |a: usize| AlgebraElement::<GQ>::boost(n, a).add(&AlgebraElement::<GQ>::rotation(n, 1, a));
    let half = GQ::from_q(Q::new(1.into(), 2.into()));
    let mut out = Vec::new();
    for k in 2..=rank(n) {
        let (a, b) = (2 * k - 2, 2 * k - 1);
        out.push((format!("(s{}+i s{})/2", a, b), s(a).add(&s(b).scale(&GQ::i())).scale(&half)));
        out.push((format!("s{}-i s{}", a, b), s(a).add(&s(b).scale(&GQ::i().neg()))));
    }
    if n % 2 == 0 {
        out.push((format!("s{}", n), s(n)));
    }
    out
}

/// Apply an algebra element to every basis vector and collect ambient coordinates as columns.
fn columns(
    ops: &[(AlgebraElement<GQ>, GQ)],
    basis: &[PolyTensor<GQ>],
    ix: &mut Indexer<(usize, crate::exactcore::Mono)>,
) -> Vec<Vec<crate::exactcore::SparseRow<GQ>>> {
    ops.iter()
        .map(|(op, shift)| {
            basis
                .iter()
                .map(|v| {
                    let w = algebra_act_on_tensor(op, v).sub(&v.scale(shift));
                    w.to_coords(ix)
                })
                .collect()
        })
        .collect()
}

/// Kernel (in basis coordinates) of the stacked linear maps given as per-basis-vector columns.
fn joint_kernel(cols: &[Vec<crate::exactcore::SparseRow<GQ>>], k: usize, nrows: usize) -> Vec<Vec<GQ>> {
    // rows = (op, ambient index); columns = basis index
    let mut rows: Vec<Vec<(usize, GQ)>> = vec![Vec::new(); cols.len() * nrows];
    for (o, per) in cols.iter().enumerate() {
        for (i, col) in per.iter().enumerate() {
            for (a, c) in col {
                rows[o * nrows + a].push((i, c.clone()));
            }
        }
    }
    let mut m = SparseMatrix::<GQ>::new(k);
    for r in rows {
        m.push_row(r);
    }
    nullspace(&m)
}

fn combine(basis: &[PolyTensor<GQ>], coeffs: &[GQ]) -> PolyTensor<GQ> {
    let terms: Vec<(GQ, &PolyTensor<GQ>)> = coeffs.iter().cloned().zip(basis.iter()).collect();
    PolyTensor::linear_combination(&terms)
}

/// Weight-space of the span of `basis` for the given weight.
pub fn weight_space(n: usize, basis: &[PolyTensor<GQ>], weight: &[i64]) -> Vec<PolyTensor<GQ>> {
    let ops: Vec<(AlgebraElement<GQ>, GQ)> =
        cartan(n).into_iter().zip(weight).map(|(h, &w)| (h, GQ::from_i64(w))).collect();
    let mut ix = Indexer::new();
    let cols = columns(&ops, basis, &mut ix);
    let ker = joint_kernel(&cols, basis.len(), ix.len());
    ker.iter().map(|c| combine(basis, c)).collect()
}

/// Highest-weight vectors of the given weight inside the span of `basis`.
/// The span must be closed under the complexified algebra action.
pub fn highest_weight_vectors(n: usize, basis: &[PolyTensor<GQ>], weight: &[i64]) -> Result<Vec<PolyTensor<GQ>>> {
    if weight.len() != rank(n) {
        return Err(Error::Invalid(format!("weight must have {} components", rank(n))));
    }
    let ws = weight_space(n, basis, weight);
    if ws.is_empty() {
        return Err(Error::Invalid(format!("weight space {:?} is empty", weight)));
    }
    let ops: Vec<(AlgebraElement<GQ>, GQ)> = raising_operators(n)?.into_iter().map(|e| (e, GQ::zero())).collect();
    let mut ix = Indexer::new();
    let cols = columns(&ops, &ws, &mut ix);
    let ker = joint_kernel(&cols, ws.len(), ix.len());
    Ok(ker.iter().map(|c| combine(&ws, c)).collect())
}

/// Weight of a tensor if it is a Cartan eigenvector.
pub fn weight_of(n: usize, v: &PolyTensor<GQ>) -> Option<Vec<GQ>> {
    let f = v.comps.iter().position(|p| !p.is_zero())?;
    let (e, c) = v.comps[f].terms().next().map(|(e, c)| (e.clone(), c.clone()))?;
    let mut out = Vec::new();
    for h in cartan(n) {
        let w = algebra_act_on_tensor(&h, v);
        let lam = w.comps[f].coeff(&e).div(&c);
        if w != v.scale(&lam) {
            return None;
        }
        out.push(lam);
    }
    Some(out)
}

/// One null or spatial coordinate of the Cartan-adapted frame.
#[derive(Clone, Debug)]
pub struct ZCoord {
    /// -k for Z^{-k}, +k for Z^{+k}, 0 for Z^0
    pub label: i32,
    pub weight: Vec<i64>,
    /// coefficients of the linear form in X^0..X^n
    pub coeffs: Vec<GQ>,
}

impl ZCoord {
    pub fn poly(&self) -> Poly<GQ> {
        Poly::linear(&self.coeffs)
    }
}

pub fn z_coordinates(n: usize) -> Vec<ZCoord> {
    let n1 = n + 1;
    let l = rank(n);
    let half = GQ::from_q(Q::new(1.into(), 2.into()));
    let mut out = Vec::new();
    for k in 1..=l {
        let (a, b) = if k == 1 { (0, 1) } else { (2 * k - 2, 2 * k - 1) };
        let mut minus = vec![GQ::zero(); n1];
        let mut plus = vec![GQ::zero(); n1];
        if k == 1 {
            minus[0] = GQ::one();
            minus[1] = GQ::one();
            plus[0] = half.neg();
            plus[1] = half.clone();
        } else {
            minus[a] = GQ::one();
            minus[b] = GQ::i();
            plus[a] = half.clone();
            plus[b] = GQ::i().neg().mul(&half);
        }
        let mut wm = vec![0; l];
        wm[k - 1] = 1;
        let wp: Vec<i64> = wm.iter().map(|x| -x).collect();
        out.push(ZCoord { label: -(k as i32), weight: wm, coeffs: minus });
        out.push(ZCoord { label: k as i32, weight: wp, coeffs: plus });
    }
    if n % 2 == 0 {
        let mut c = vec![GQ::zero(); n1];
        c[n] = GQ::one();
        out.push(ZCoord { label: 0, weight: vec![0; l], coeffs: c });
    }
    out
}

pub fn z_coord(n: usize, label: i32) -> ZCoord {
    z_coordinates(n).into_iter().find(|z| z.label == label).expect("label in range")
}

/// Dimension of the irreducible so(n+1, C) module with the given highest weight.
pub fn weyl_dimension(n: usize, weight: &[i64]) -> Q {
    let l = rank(n);
    let odd = (n + 1) % 2 == 1;
    let two = Q::from_i64(2);
    let rho: Vec<Q> = (0..l)
        .map(|i| {
            let base = Q::from_i64((l - 1 - i) as i64);
            if odd {
                base + Q::one() / &two
            } else {
                base
            }
        })
        .collect();
    let lr: Vec<Q> = (0..l).map(|i| Q::from_i64(weight[i]) + &rho[i]).collect();
    let mut num = Q::one();
    let mut den = Q::one();
    for alpha in positive_roots(n) {
        let dot = |v: &[Q]| -> Q { v.iter().zip(&alpha).map(|(a, &b)| a * Q::from_i64(b)).sum() };
        num *= dot(&lr);
        den *= dot(&rho);
    }
    num / den
}

/// Highest weight (p, 0, ..., 0) with label convention: n = 3 weights (l1, l2) correspond to
/// a w1 + b w2 with l1 = (a + b)/2, l2 = (b - a)/2.
pub fn label_to_weight_n3(a: i64, b: i64) -> Option<Vec<i64>> {
    if (a + b) % 2 != 0 {
        return None;
    }
    Some(vec![(a + b) / 2, (b - a) / 2])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactcore::poly::monomials_of_degree;
    use crate::exactcore::sphere::minkowski_square;

    fn hp_basis_all_monomials(n: usize, p: usize) -> Vec<PolyTensor<GQ>> {
        // full degree-p polynomial space (closed under the action)
        monomials_of_degree(n + 1, p)
            .into_iter()
            .map(|e| PolyTensor::scalar(Poly::monomial(e, GQ::one()), n + 1))
            .collect()
    }

    #[test]
    fn cartan_commutes_and_roots_are_roots() {
        for n in 3..=6 {
            let hs = cartan(n);
            for a in &hs {
                for b in &hs {
                    assert!(a.bracket(b).is_zero());
                }
            }
            for r in positive_roots(n) {
                let e = root_vector(n, &r).unwrap();
                let got = root_of(n, &e).unwrap();
                assert_eq!(got, r.iter().map(|&x| GQ::from_i64(x)).collect::<Vec<_>>());
            }
        }
    }

    #[test]
    fn ladder_operators_are_positive_root_vectors() {
        for n in 3..=6 {
            let pos = positive_roots(n);
            for (name, e) in ladder_operators(n) {
                let r = root_of(n, &e).unwrap_or_else(|| panic!("{} not a root vector", name));
                let r: Vec<i64> = r.iter().map(|x| crate::exactcore::field::q_to_f64(&x.re) as i64).collect();
                assert!(pos.contains(&r), "{} has root {:?}", name, r);
                assert_eq!(r[0], 1, "{} does not raise eps_1", name);
            }
        }
    }

    #[test]
    fn z_weights() {
        for n in 3..=6 {
            for z in z_coordinates(n) {
                let t = PolyTensor::scalar(z.poly(), n + 1);
                let w = weight_of(n, &t).unwrap();
                assert_eq!(w, z.weight.iter().map(|&x| GQ::from_i64(x)).collect::<Vec<_>>());
            }
            // eta = 2 sum Z^{+j} Z^{-j} + (Z^0)^2
            let mut s = Poly::<GQ>::zero(n + 1);
            for z in z_coordinates(n) {
                if z.label < 0 {
                    let zp = z_coord(n, -z.label);
                    s = s.add(&z.poly().mul(&zp.poly()).scale(&GQ::from_i64(2)));
                } else if z.label == 0 {
                    s = s.add(&z.poly().pow(2));
                }
            }
            assert_eq!(s, minkowski_square::<Q>(n + 1).to_gq());
        }
    }

    #[test]
    fn hw_of_linear_and_quadratic() {
        let n = 3;
        let b1 = hp_basis_all_monomials(n, 1);
        let hw = highest_weight_vectors(n, &b1, &[1, 0]).unwrap();
        assert_eq!(hw.len(), 1);
        let z = z_coord(n, -1).poly();
        // proportional to X^0 + X^1
        let c = hw[0].comps[0].coeff(&[1, 0, 0, 0]);
        assert_eq!(hw[0].comps[0], z.scale(&c));
        let b0 = hp_basis_all_monomials(n, 0);
        assert_eq!(highest_weight_vectors(n, &b0, &[0, 0]).unwrap().len(), 1);
        assert!(highest_weight_vectors(n, &b1, &[2, 0]).is_err());
    }

    #[test]
    fn weyl_dimensions() {
        // vector rep, adjoint, and the Weyl tensor rep of so(4) and so(5)
        assert_eq!(weyl_dimension(3, &[1, 0]), Q::from_i64(4));
        assert_eq!(weyl_dimension(4, &[1, 0]), Q::from_i64(5));
        assert_eq!(weyl_dimension(3, &[1, 1]), Q::from_i64(3));
        assert_eq!(weyl_dimension(4, &[1, 1]), Q::from_i64(10));
        assert_eq!(weyl_dimension(4, &[2, 2]), Q::from_i64(35));
        assert_eq!(weyl_dimension(3, &[2, 2]) + weyl_dimension(3, &[2, -2]), Q::from_i64(10));
    }
}
