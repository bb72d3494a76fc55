//! The spaces W_p of polynomial Weyl tensors, stored in reduced coordinates.
//!
//! Unknowns are the components W_{mu nu alpha beta} with mu < nu, alpha < beta and
//! (mu, nu) <= (alpha, beta) lexicographically, times the degree-p monomials.

use crate::error::{Error, Result};
use crate::exactcore::field::binomial;
use crate::exactcore::linalg::{normalize_row, nullspace, signature_of_form, SparseMatrix, SparseRow, Subspace};
use crate::exactcore::{monomials_of_degree, Field, Mono, Poly, PolyTensor, Q};
use crate::harmonic::monomial_weight;
use crate::lorentz::{algebra_act_on_tensor, eta, generators, AlgebraElement};
use num_bigint::BigInt;
use rayon::prelude::*;
use std::collections::{BTreeMap, HashMap};

#[derive(Clone, Debug)]
pub struct WeylSpace {
    pub n: usize,
    pub p: usize,
    pub pairs: Vec<(usize, usize)>,
    pub pair_pairs: Vec<(usize, usize)>,
    pub monos: Vec<Mono>,
    mono_index: HashMap<Mono, usize>,
    pp_map: HashMap<(usize, usize), usize>,
    pub basis: Vec<SparseRow<Q>>,
}

/// 1/2 (n+1)/(n-1) C(p+n, p+3) (p+1)(p+n+2)(2p+n+3)/(p+n).
pub fn dim_formula(n: usize, p: usize) -> usize {
    let (n, p) = (n as i64, p as i64);
    let num = BigInt::from(n + 1) * binomial(p + n, p + 3) * (p + 1) * (p + n + 2) * (2 * p + n + 3);
    let den = BigInt::from(2 * (n - 1) * (p + n));
    let q: BigInt = num / den;
    q.try_into().unwrap()
}

/// Closed formulas (n_+, n_-) for the invariant form on W_p.
pub fn signature_formula(n: usize, p: usize) -> (usize, usize) {
    let (ni, pi) = (n as i64, p as i64);
    let f = Q::new(
        BigInt::from((pi + 1) * (pi + ni + 2)) * binomial(pi + ni, pi + 3),
        BigInt::from((ni - 1) * (pi + ni)),
    );
    let plus = f.clone() * Q::from_i64(ni * ni + (ni + 1) * pi + 3) * Q::new(1.into(), 2.into());
    let minus = f * Q::from_i64(ni * pi + 4 * ni + pi) * Q::new(1.into(), 2.into());
    let to_usize = |x: Q| -> usize {
        assert!(x.is_integer());
        x.to_integer().try_into().unwrap()
    };
    (to_usize(plus), to_usize(minus))
}

fn pair_index(pairs: &[(usize, usize)], a: usize, b: usize) -> Option<(i64, usize)> {
    if a == b {
        return None;
    }
    let (s, a, b) = if a < b { (1, a, b) } else { (-1, b, a) };
    pairs.iter().position(|&x| x == (a, b)).map(|i| (s, i))
}

impl WeylSpace {
    fn skeleton(n: usize, p: usize) -> Self {
        let d = n + 1;
        let mut pairs = Vec::new();
        for a in 0..d {
            for b in a + 1..d {
                pairs.push((a, b));
            }
        }
        let mut pair_pairs = Vec::new();
        for i in 0..pairs.len() {
            for j in i..pairs.len() {
                pair_pairs.push((i, j));
            }
        }
        let monos = monomials_of_degree(d, p);
        let mono_index = monos.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
        let pp_map = pair_pairs.iter().enumerate().map(|(k, &x)| (x, k)).collect();
        WeylSpace { n, p, pairs, pair_pairs, monos, mono_index, pp_map, basis: Vec::new() }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn ncols(&self) -> usize {
        self.pair_pairs.len() * self.monos.len()
    }

    /// Reduced column of component W_{a b c d} and its sign, None if identically zero.
    fn component(&self, a: usize, b: usize, c: usize, e: usize) -> Option<(i64, usize)> {
        let (s1, i) = pair_index(&self.pairs, a, b)?;
        let (s2, j) = pair_index(&self.pairs, c, e)?;
        Some((s1 * s2, self.pp_lookup(i, j)))
    }

    fn pp_lookup(&self, i: usize, j: usize) -> usize {
        let key = if i <= j { (i, j) } else { (j, i) };
        self.pp_map[&key]
    }

    fn col(&self, pp: usize, mono: usize) -> usize {
        pp * self.monos.len() + mono
    }

    /// Tensor of a reduced coordinate vector.
    pub fn to_tensor(&self, v: &SparseRow<Q>) -> PolyTensor<Q> {
        let d = self.n + 1;
        let mut polys: BTreeMap<usize, Poly<Q>> = BTreeMap::new();
        for (c, x) in v {
            let pp = c / self.monos.len();
            let m = c % self.monos.len();
            polys.entry(pp).or_insert_with(|| Poly::zero(d)).add_term(self.monos[m].clone(), x.clone());
        }
        let mut t = PolyTensor::zero(d, 4, d);
        for (pp, poly) in polys {
            let (i, j) = self.pair_pairs[pp];
            let (a, b) = self.pairs[i];
            let (c, e) = self.pairs[j];
            let neg = poly.neg();
            let mut put = |x: [usize; 4], p: &Poly<Q>| t.set(&x, p.clone());
            put([a, b, c, e], &poly);
            put([b, a, c, e], &neg);
            put([a, b, e, c], &neg);
            put([b, a, e, c], &poly);
            put([c, e, a, b], &poly);
            put([e, c, a, b], &neg);
            put([c, e, b, a], &neg);
            put([e, c, b, a], &poly);
        }
        t
    }

    /// Reduced coordinates of a tensor (reads the stored components only).
    pub fn coords(&self, t: &PolyTensor<Q>) -> SparseRow<Q> {
        let mut row = Vec::new();
        for (pp, &(i, j)) in self.pair_pairs.iter().enumerate() {
            let (a, b) = self.pairs[i];
            let (c, e) = self.pairs[j];
            for (m, x) in t.get(&[a, b, c, e]).terms() {
                row.push((self.col(pp, self.mono_index[m]), x.clone()));
            }
        }
        normalize_row(row)
    }

    pub fn tensor(&self, i: usize) -> PolyTensor<Q> {
        self.to_tensor(&self.basis[i])
    }

    /// Diagonal weight of each reduced column in the invariant form.
    fn column_weight(&self, c: usize) -> Q {
        let pp = c / self.monos.len();
        let m = &self.monos[c % self.monos.len()];
        let (i, j) = self.pair_pairs[pp];
        let (a, b) = self.pairs[i];
        let (cc, e) = self.pairs[j];
        let mult = if i == j { 4 } else { 8 };
        let sign = eta(a) * eta(b) * eta(cc) * eta(e);
        monomial_weight(m) * Q::from_i64(mult * sign)
    }

    /// Invariant form: full eta-contraction with the weighted monomial form.
    pub fn form(&self, u: &SparseRow<Q>, v: &SparseRow<Q>) -> Q {
        let mut s = Q::zero();
        let vm: HashMap<usize, &Q> = v.iter().map(|(c, x)| (*c, x)).collect();
        for (c, x) in u {
            if let Some(y) = vm.get(c) {
                s += self.column_weight(*c) * x * *y;
            }
        }
        s
    }
}

fn parity_class(idx: &[usize], m: &[u8]) -> u32 {
    let mut bits = 0u32;
    for &i in idx {
        bits ^= 1 << i;
    }
    for (i, &e) in m.iter().enumerate() {
        if e % 2 == 1 {
            bits ^= 1 << i;
        }
    }
    bits
}

/// Builds W_p as the joint kernel of the trace and Bianchi constraints.
pub fn build_wp(n: usize, p: usize) -> WeylSpace {
    let mut ws = WeylSpace::skeleton(n, p);
    let d = n + 1;
    let nm = ws.monos.len();
    // parity class of every column
    let mut class_of = vec![0u32; ws.ncols()];
    for (pp, &(i, j)) in ws.pair_pairs.iter().enumerate() {
        let (a, b) = ws.pairs[i];
        let (c, e) = ws.pairs[j];
        for (mi, m) in ws.monos.iter().enumerate() {
            class_of[ws.col(pp, mi)] = parity_class(&[a, b, c, e], m);
        }
    }
    let mut rows: Vec<SparseRow<Q>> = Vec::new();
    // eta-trace: sum_mu eta(mu) W_{mu nu mu beta} = 0 for nu <= beta
    for nu in 0..d {
        for be in nu..d {
            for mi in 0..nm {
                let mut row = Vec::new();
                for mu in 0..d {
                    if let Some((s, pp)) = ws.component(mu, nu, mu, be) {
                        row.push((ws.col(pp, mi), Q::from_i64(s * eta(mu))));
                    }
                }
                rows.push(normalize_row(row));
            }
        }
    }
    // first Bianchi on distinct indices
    for a in 0..d {
        for b in a + 1..d {
            for c in b + 1..d {
                for e in c + 1..d {
                    for mi in 0..nm {
                        let mut row = Vec::new();
                        for (x, y, z, w) in [(a, b, c, e), (a, c, e, b), (a, e, b, c)] {
                            let (s, pp) = ws.component(x, y, z, w).unwrap();
                            row.push((ws.col(pp, mi), Q::from_i64(s)));
                        }
                        rows.push(normalize_row(row));
                    }
                }
            }
        }
    }
    // second Bianchi: d_l W_{m n a b} + cyclic(l m n) = 0
    if p > 0 {
        let lower = monomials_of_degree(d, p - 1);
        for l in 0..d {
            for m in l + 1..d {
                for nn in m + 1..d {
                    for &(a, b) in &ws.pairs.clone() {
                        for mo in &lower {
                            let mut row = Vec::new();
                            for (x, y, z) in [(l, m, nn), (m, nn, l), (nn, l, m)] {
                                let (s, pp) = ws.component(y, z, a, b).unwrap();
                                let mut e = mo.clone();
                                e[x] += 1;
                                let mi = ws.mono_index[&e];
                                row.push((ws.col(pp, mi), Q::from_i64(s * e[x] as i64)));
                            }
                            rows.push(normalize_row(row));
                        }
                    }
                }
            }
        }
    }
    // split by parity class
    let mut class_cols: BTreeMap<u32, Vec<usize>> = BTreeMap::new();
    for (c, &k) in class_of.iter().enumerate() {
        class_cols.entry(k).or_default().push(c);
    }
    let mut class_rows: BTreeMap<u32, Vec<SparseRow<Q>>> = BTreeMap::new();
    for r in rows {
        if r.is_empty() {
            continue;
        }
        let k = class_of[r[0].0];
        debug_assert!(r.iter().all(|(c, _)| class_of[*c] == k));
        class_rows.entry(k).or_default().push(r);
    }
    let blocks: Vec<(u32, Vec<usize>)> = class_cols.into_iter().collect();
    let mut results: Vec<Vec<SparseRow<Q>>> = blocks
        .par_iter()
        .map(|(k, cols)| {
            let local: HashMap<usize, usize> = cols.iter().enumerate().map(|(i, c)| (*c, i)).collect();
            let mut m = SparseMatrix::new(cols.len());
            for r in class_rows.get(k).map(|v| v.as_slice()).unwrap_or(&[]) {
                m.push_row(r.iter().map(|(c, x)| (local[c], x.clone())));
            }
            nullspace(&m)
                .into_iter()
                .map(|v| {
                    v.into_iter()
                        .enumerate()
                        .filter(|(_, x)| !x.is_zero())
                        .map(|(i, x)| (cols[i], x))
                        .collect::<SparseRow<Q>>()
                })
                .collect()
        })
        .collect();
    for r in results.iter_mut() {
        ws.basis.append(r);
    }
    ws
}

/// Signature (n_+, n_-) of the invariant form on W_p.
pub fn signature_wp(ws: &WeylSpace) -> Result<(usize, usize)> {
    // the form is diagonal in reduced columns, so parity classes are orthogonal
    let mut by_class: BTreeMap<u32, Vec<usize>> = BTreeMap::new();
    for (i, v) in ws.basis.iter().enumerate() {
        let c = v[0].0;
        let pp = c / ws.monos.len();
        let (a, b) = ws.pairs[ws.pair_pairs[pp].0];
        let (cc, e) = ws.pairs[ws.pair_pairs[pp].1];
        by_class.entry(parity_class(&[a, b, cc, e], &ws.monos[c % ws.monos.len()])).or_default().push(i);
    }
    let mut plus = 0;
    let mut minus = 0;
    for idx in by_class.values() {
        let g: Vec<Vec<Q>> = idx.iter().map(|&i| idx.iter().map(|&j| ws.form(&ws.basis[i], &ws.basis[j])).collect()).collect();
        let (p, m, z) = signature_of_form(&g).map_err(Error::Internal)?;
        if z != 0 {
            return Err(Error::Check("degenerate invariant form on W_p".into()));
        }
        plus += p;
        minus += m;
    }
    Ok((plus, minus))
}

/// Max number of basis vectors whose generator image leaves the span (0 means closed).
pub fn closure_failures(ws: &WeylSpace) -> Result<usize> {
    let sub = Subspace::new(ws.ncols(), &ws.basis).map_err(Error::Internal)?;
    let d = ws.n + 1;
    let mut fails = 0;
    for g in generators(ws.n) {
        let a = AlgebraElement::<Q>::from_generator(ws.n, g);
        for i in 0..ws.dim() {
            let img = algebra_act_on_tensor(&a, &ws.tensor(i));
            debug_assert_eq!(img.dim, d);
            if !sub.contains(&ws.coords(&img)) {
                fails += 1;
            }
        }
    }
    Ok(fails)
}

/// Largest |q(a.u, v) + q(u, a.v)| numerator test: returns true if the form is invariant.
pub fn form_is_invariant(ws: &WeylSpace) -> bool {
    let imgs: Vec<Vec<SparseRow<Q>>> = generators(ws.n)
        .into_iter()
        .map(|g| {
            let a = AlgebraElement::<Q>::from_generator(ws.n, g);
            (0..ws.dim()).map(|i| ws.coords(&algebra_act_on_tensor(&a, &ws.tensor(i)))).collect()
        })
        .collect();
    for img in &imgs {
        for i in 0..ws.dim() {
            for j in i..ws.dim() {
                let s = ws.form(&img[i], &ws.basis[j]) + ws.form(&ws.basis[i], &img[j]);
                if !s.is_zero() {
                    return false;
                }
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weylspace::tensors::check_weyl_constraints;

    #[test]
    fn formula_values() {
        assert_eq!(dim_formula(3, 0), 10);
        assert_eq!(dim_formula(3, 1), 24);
        assert_eq!(dim_formula(4, 0), 35);
        assert_eq!(dim_formula(5, 2), 729);
        assert_eq!(signature_formula(3, 0), (5, 5));
        assert_eq!(signature_formula(4, 0), (19, 16));
        for n in 3..7usize {
            let (a, b) = signature_formula(n, 0);
            assert_eq!((a as i64 - b as i64) * 12, ((n + 2) * (n - 1) * (n - 2) * (n - 3)) as i64);
        }
    }

    #[test]
    fn pair_pair_indexing() {
        let ws = WeylSpace::skeleton(4, 0);
        for (k, &(i, j)) in ws.pair_pairs.iter().enumerate() {
            assert_eq!(ws.pp_lookup(i, j), k);
            assert_eq!(ws.pp_lookup(j, i), k);
        }
    }

    #[test]
    fn small_spaces() {
        for (n, p) in [(3, 0), (3, 1), (4, 0), (4, 1)] {
            let ws = build_wp(n, p);
            assert_eq!(ws.dim(), dim_formula(n, p), "n={n} p={p}");
            for i in 0..ws.dim() {
                let t = ws.tensor(i);
                check_weyl_constraints(&t).unwrap();
                assert_eq!(ws.coords(&t), ws.basis[i]);
            }
            assert_eq!(signature_wp(&ws).unwrap(), signature_formula(n, p));
            assert_eq!(closure_failures(&ws).unwrap(), 0);
            assert!(form_is_invariant(&ws));
        }
    }
}
