//! Exterior forms with polynomial coefficients and the radial homotopy operator.

use crate::error::{Error, Result};
use crate::exactcore::{Field, Poly, PolyTensor};
use std::collections::BTreeMap;

/// omega = sum over increasing index sets I of omega_I dX^I.
#[derive(Clone, Debug, PartialEq)]
pub struct PolyForm<C: Field> {
    pub dim: usize,
    pub degree: usize,
    pub nvars: usize,
    pub comps: BTreeMap<Vec<usize>, Poly<C>>,
}

fn increasing_sets(dim: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, dim: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..dim {
            cur.push(i);
            rec(i + 1, dim, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, dim, k, &mut Vec::new(), &mut out);
    out
}

/// Sign of the permutation sorting idx, or None if an index repeats.
fn sort_sign(idx: &[usize]) -> Option<(i64, Vec<usize>)> {
    let mut v = idx.to_vec();
    let mut sign = 1;
    for i in 0..v.len() {
        for j in 0..v.len() - 1 - i {
            if v[j] > v[j + 1] {
                v.swap(j, j + 1);
                sign = -sign;
            } else if v[j] == v[j + 1] {
                return None;
            }
        }
    }
    if v.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    Some((sign, v))
}

impl<C: Field> PolyForm<C> {
    pub fn zero(dim: usize, degree: usize, nvars: usize) -> Self {
        PolyForm { dim, degree, nvars, comps: BTreeMap::new() }
    }

    /// Coefficient in front of dX^{i_1} ^ ... ^ dX^{i_k} for arbitrary index order.
    pub fn get(&self, idx: &[usize]) -> Poly<C> {
        match sort_sign(idx) {
            None => Poly::zero(self.nvars),
            Some((s, v)) => self.comps.get(&v).map(|p| p.scale(&C::from_i64(s))).unwrap_or_else(|| Poly::zero(self.nvars)),
        }
    }

    /// Adds c * dX^{idx} (any order).
    pub fn add_term(&mut self, idx: &[usize], p: &Poly<C>) {
        if let Some((s, v)) = sort_sign(idx) {
            let e = self.comps.entry(v).or_insert_with(|| Poly::zero(p.nvars()));
            e.add_scaled(p, &C::from_i64(s));
        }
        self.comps.retain(|_, p| !p.is_zero());
    }

    pub fn is_zero(&self) -> bool {
        self.comps.values().all(|p| p.is_zero())
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut r = self.clone();
        for (k, p) in &o.comps {
            r.add_term(k, p);
        }
        r
    }

    pub fn sub(&self, o: &Self) -> Self {
        let mut r = self.clone();
        for (k, p) in &o.comps {
            r.add_term(k, &p.neg());
        }
        r
    }

    /// Exterior derivative.
    pub fn d(&self) -> Self {
        let mut r = PolyForm::zero(self.dim, self.degree + 1, self.nvars);
        for (idx, p) in &self.comps {
            for mu in 0..self.dim {
                let dp = p.deriv(mu);
                if dp.is_zero() {
                    continue;
                }
                let mut full = vec![mu];
                full.extend_from_slice(idx);
                r.add_term(&full, &dp);
            }
        }
        r
    }

    /// Antisymmetric tensor with T_{i_1..i_k} = omega_I.
    pub fn to_tensor(&self) -> PolyTensor<C> {
        let mut t = PolyTensor::zero(self.dim, self.degree, self.nvars);
        let comps: Vec<_> = t.indices().collect();
        for idx in comps {
            t.set(&idx, self.get(&idx));
        }
        t
    }

    /// Reads the increasing-index components of an antisymmetric tensor.
    pub fn from_tensor(t: &PolyTensor<C>) -> Result<Self> {
        let mut f = PolyForm::zero(t.dim, t.rank, t.nvars);
        for idx in increasing_sets(t.dim, t.rank) {
            let p = t.get(&idx);
            if !p.is_zero() {
                f.comps.insert(idx, p.clone());
            }
        }
        if f.to_tensor() != *t {
            return Err(Error::Invalid("tensor is not antisymmetric".into()));
        }
        Ok(f)
    }
}

/// Divides each term of total degree l by (k + l).
fn radial_average<C: Field>(p: &Poly<C>, k: usize) -> Poly<C> {
    let mut r = Poly::zero(p.nvars());
    for (e, c) in p.terms() {
        let l: usize = e.iter().map(|&x| x as usize).sum();
        r.add_term(e.clone(), c.mul_q(&crate::exactcore::Q::new(1.into(), ((k + l) as i64).into())));
    }
    r
}

/// Homotopy operator I_k: (I_k omega)_{nu...} = integral of t^{k-1} X^mu omega_{mu nu...}(tX) dt.
pub fn poincare_homotopy<C: Field>(w: &PolyForm<C>) -> Result<PolyForm<C>> {
    if w.degree == 0 {
        return Err(Error::Invalid("homotopy operator needs a form of degree at least 1".into()));
    }
    let k = w.degree;
    let mut r = PolyForm::zero(w.dim, k - 1, w.nvars);
    for (idx, p) in &w.comps {
        let avg = radial_average(p, k);
        for (s, &i) in idx.iter().enumerate() {
            let mut rest = idx.clone();
            rest.remove(s);
            let sign = if s % 2 == 0 { C::one() } else { C::one().neg() };
            r.add_term(&rest, &avg.mul_var(i).scale(&sign));
        }
    }
    Ok(r)
}

/// Homotopy applied to the antisymmetric slot pair/triple `slots` of a tensor, others kept as labels.
/// The contracted slot is slots[0]; output slots keep their order with slots[0] removed.
pub fn homotopy_on_slots<C: Field>(t: &PolyTensor<C>, slots: &[usize]) -> PolyTensor<C> {
    let k = slots.len();
    let first = slots[0];
    let mut r = PolyTensor::zero(t.dim, t.rank - 1, t.nvars);
    let out: Vec<_> = r.indices().collect();
    for idx in out {
        let mut s = Poly::zero(t.nvars);
        for mu in 0..t.dim {
            let mut full = idx.clone();
            full.insert(first, mu);
            s = s.add(&radial_average(t.get(&full), k).mul_var(mu));
        }
        r.set(&idx, s);
    }
    r
}
