//! Covariant tensor fields on R^{n,1} with polynomial components.

use super::field::{Field, GQ, Q};
use super::linalg::SparseRow;
use super::poly::{Mono, Poly};
use std::collections::BTreeMap;

/// Rank-r covariant tensor on R^{N}, components stored row-major over index tuples.
#[derive(Clone, Debug, PartialEq)]
pub struct PolyTensor<C: Field> {
    pub dim: usize,
    pub rank: usize,
    pub nvars: usize,
    pub comps: Vec<Poly<C>>,
}

/// Symmetric 2-tensor field (stored in full).
pub type PolySym2<C> = PolyTensor<C>;
/// 4-tensor field with Weyl-type symmetries (stored in full).
pub type PolyTensor4<C> = PolyTensor<C>;

impl<C: Field> PolyTensor<C> {
    pub fn zero(dim: usize, rank: usize, nvars: usize) -> Self {
        PolyTensor { dim, rank, nvars, comps: vec![Poly::zero(nvars); dim.pow(rank as u32)] }
    }

    pub fn scalar(p: Poly<C>, dim: usize) -> Self {
        PolyTensor { dim, rank: 0, nvars: p.nvars(), comps: vec![p] }
    }

    pub fn flat(&self, idx: &[usize]) -> usize {
        idx.iter().fold(0, |acc, &i| acc * self.dim + i)
    }

    pub fn unflat(&self, mut f: usize) -> Vec<usize> {
        let mut idx = vec![0; self.rank];
        for s in (0..self.rank).rev() {
            idx[s] = f % self.dim;
            f /= self.dim;
        }
        idx
    }

    pub fn get(&self, idx: &[usize]) -> &Poly<C> {
        &self.comps[self.flat(idx)]
    }

    pub fn set(&mut self, idx: &[usize], p: Poly<C>) {
        let f = self.flat(idx);
        self.comps[f] = p;
    }

    pub fn add_to(&mut self, idx: &[usize], p: &Poly<C>, s: &C) {
        let f = self.flat(idx);
        self.comps[f].add_scaled(p, s);
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(|p| p.is_zero())
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut r = self.clone();
        for (a, b) in r.comps.iter_mut().zip(&o.comps) {
            a.add_scaled(b, &C::one());
        }
        r
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(&C::one().neg()))
    }

    pub fn scale(&self, s: &C) -> Self {
        self.map(|p| p.scale(s))
    }

    pub fn map(&self, f: impl Fn(&Poly<C>) -> Poly<C>) -> Self {
        PolyTensor { dim: self.dim, rank: self.rank, nvars: self.nvars, comps: self.comps.iter().map(f).collect() }
    }

    pub fn map_coeffs<D: Field>(&self, f: impl Fn(&C) -> D + Copy) -> PolyTensor<D> {
        PolyTensor {
            dim: self.dim,
            rank: self.rank,
            nvars: self.nvars,
            comps: self.comps.iter().map(|p| p.map_coeffs(f)).collect(),
        }
    }

    /// Iterate over all index tuples.
    pub fn indices(&self) -> impl Iterator<Item = Vec<usize>> + '_ {
        (0..self.comps.len()).map(move |f| self.unflat(f))
    }

    /// Gradient, new index appended in the first slot: (dT)_{rho mu...} = d_rho T_{mu...}.
    pub fn gradient(&self) -> Self {
        let mut r = PolyTensor::zero(self.dim, self.rank + 1, self.nvars);
        let block = self.comps.len();
        for rho in 0..self.dim {
            for (f, p) in self.comps.iter().enumerate() {
                r.comps[rho * block + f] = p.deriv(rho);
            }
        }
        r
    }

    /// Multiply every component by a polynomial.
    pub fn mul_poly(&self, p: &Poly<C>) -> Self {
        self.map(|c| c.mul(p))
    }

    /// Permute slots: the index in result slot s is read from slot perm[s] of self.
    pub fn permute(&self, perm: &[usize]) -> Self {
        let mut r = self.clone();
        for f in 0..self.comps.len() {
            let idx = self.unflat(f);
            let mut src = vec![0; self.rank];
            for s in 0..self.rank {
                src[perm[s]] = idx[s];
            }
            r.comps[f] = self.get(&src).clone();
        }
        r
    }

    /// Ambient coordinates keyed by (component, monomial).
    pub fn to_coords(&self, ix: &mut Indexer<(usize, Mono)>) -> SparseRow<C> {
        let mut row = Vec::new();
        for (f, p) in self.comps.iter().enumerate() {
            for (e, c) in p.terms() {
                row.push((ix.index((f, e.clone())), c.clone()));
            }
        }
        super::linalg::normalize_row(row)
    }

    /// Coordinates with a fixed indexer; None if some key is absent.
    pub fn to_coords_fixed(&self, ix: &Indexer<(usize, Mono)>) -> Option<SparseRow<C>> {
        let mut row = Vec::new();
        for (f, p) in self.comps.iter().enumerate() {
            for (e, c) in p.terms() {
                row.push((ix.get(&(f, e.clone()))?, c.clone()));
            }
        }
        Some(super::linalg::normalize_row(row))
    }

    pub fn linear_combination(terms: &[(C, &PolyTensor<C>)]) -> Self {
        let first = terms[0].1;
        let mut r = PolyTensor::zero(first.dim, first.rank, first.nvars);
        for (s, t) in terms {
            if s.is_zero() {
                continue;
            }
            for (a, b) in r.comps.iter_mut().zip(&t.comps) {
                a.add_scaled(b, s);
            }
        }
        r
    }

    pub fn max_coeff_abs(&self) -> f64 {
        self.comps.iter().map(|p| p.max_coeff_abs()).fold(0.0, f64::max)
    }
}

impl PolyTensor<Q> {
    pub fn to_gq(&self) -> PolyTensor<GQ> {
        self.map_coeffs(|c| GQ::real(c.clone()))
    }
}

impl PolyTensor<GQ> {
    pub fn real_part(&self) -> PolyTensor<Q> {
        self.map_coeffs(|c| c.re.clone())
    }
    pub fn imag_part(&self) -> PolyTensor<Q> {
        self.map_coeffs(|c| c.im.clone())
    }
    pub fn conj(&self) -> Self {
        self.map_coeffs(|c| c.conj())
    }
}

/// Assigns consecutive indices to keys on first sight.
#[derive(Clone, Debug, Default)]
pub struct Indexer<K: Ord + Clone> {
    map: BTreeMap<K, usize>,
}

impl<K: Ord + Clone> Indexer<K> {
    pub fn new() -> Self {
        Indexer { map: BTreeMap::new() }
    }
    pub fn index(&mut self, k: K) -> usize {
        let n = self.map.len();
        *self.map.entry(k).or_insert(n)
    }
    pub fn get(&self, k: &K) -> Option<usize> {
        self.map.get(k).cloned()
    }
    pub fn len(&self) -> usize {
        self.map.len()
    }
    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactcore::field::q;

    #[test]
    fn flat_roundtrip_and_permute() {
        let mut t = PolyTensor::<Q>::zero(3, 2, 3);
        t.set(&[0, 2], Poly::var(3, 1));
        assert_eq!(t.unflat(t.flat(&[2, 1])), vec![2, 1]);
        let tt = t.permute(&[1, 0]);
        assert_eq!(tt.get(&[2, 0]), &Poly::var(3, 1));
        assert!(tt.get(&[0, 2]).is_zero());
    }

    #[test]
    fn gradient_slot_order() {
        let mut t = PolyTensor::<Q>::zero(2, 1, 2);
        t.set(&[1], Poly::var(2, 0).mul(&Poly::var(2, 1)));
        let g = t.gradient();
        assert_eq!(g.get(&[0, 1]), &Poly::var(2, 1));
        assert_eq!(g.get(&[1, 1]), &Poly::var(2, 0));
        assert_eq!(g.get(&[1, 0]), &Poly::zero(2));
        let _ = q(0);
    }
}
