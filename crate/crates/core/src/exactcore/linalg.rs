//! Exact sparse linear algebra: echelon forms, nullspaces, solves, coordinates and signatures.

use super::field::{Field, Q};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Signed;
use std::collections::BTreeMap;

/// Sparse row: (column, value) pairs sorted by column, no zeros.
pub type SparseRow<C> = Vec<(usize, C)>;

#[derive(Clone, Debug)]
pub struct SparseMatrix<C: Field> {
    pub ncols: usize,
    pub rows: Vec<SparseRow<C>>,
}

impl<C: Field> SparseMatrix<C> {
    pub fn new(ncols: usize) -> Self {
        SparseMatrix { ncols, rows: Vec::new() }
    }

    pub fn from_dense(d: &[Vec<C>]) -> Self {
        let ncols = d.first().map(|r| r.len()).unwrap_or(0);
        let rows = d
            .iter()
            .map(|r| r.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(j, c)| (j, c.clone())).collect())
            .collect();
        SparseMatrix { ncols, rows }
    }

    /// Push a row given in any order; duplicates are summed.
    pub fn push_row(&mut self, entries: impl IntoIterator<Item = (usize, C)>) {
        let r = normalize_row(entries);
        if !r.is_empty() {
            debug_assert!(r.last().unwrap().0 < self.ncols);
            self.rows.push(r);
        }
    }

    pub fn mul_vec(&self, v: &[C]) -> Vec<C> {
        self.rows
            .iter()
            .map(|r| {
                let mut s = C::zero();
                for (j, c) in r {
                    if !v[*j].is_zero() {
                        s.add_assign(&c.mul(&v[*j]));
                    }
                }
                s
            })
            .collect()
    }
}

pub fn normalize_row<C: Field>(entries: impl IntoIterator<Item = (usize, C)>) -> SparseRow<C> {
    let mut acc: BTreeMap<usize, C> = BTreeMap::new();
    for (j, c) in entries {
        if c.is_zero() {
            continue;
        }
        match acc.get_mut(&j) {
            Some(v) => v.add_assign(&c),
            None => {
                acc.insert(j, c);
            }
        }
    }
    acc.into_iter().filter(|(_, c)| !c.is_zero()).collect()
}

/// row <- row - s * other
fn axpy<C: Field>(row: &SparseRow<C>, s: &C, other: &SparseRow<C>) -> SparseRow<C> {
    let mut out = Vec::with_capacity(row.len() + other.len());
    let (mut a, mut b) = (0, 0);
    while a < row.len() || b < other.len() {
        let ca = row.get(a).map(|x| x.0).unwrap_or(usize::MAX);
        let cb = other.get(b).map(|x| x.0).unwrap_or(usize::MAX);
        if ca < cb {
            out.push(row[a].clone());
            a += 1;
        } else if cb < ca {
            out.push((cb, other[b].1.mul(s).neg()));
            b += 1;
        } else {
            let v = row[a].1.sub(&other[b].1.mul(s));
            if !v.is_zero() {
                out.push((ca, v));
            }
            a += 1;
            b += 1;
        }
    }
    out
}

/// Row echelon form with unit pivots, built incrementally.
#[derive(Clone, Debug)]
pub struct Echelon<C: Field> {
    pub ncols: usize,
    /// pivot column -> row (leading entry 1 at the pivot column)
    pub pivots: BTreeMap<usize, SparseRow<C>>,
    /// columns at or beyond this index are never chosen as pivots
    pub pivot_limit: usize,
}

impl<C: Field> Echelon<C> {
    pub fn new(ncols: usize) -> Self {
        Echelon { ncols, pivots: BTreeMap::new(), pivot_limit: ncols }
    }

    pub fn with_pivot_limit(ncols: usize, limit: usize) -> Self {
        Echelon { ncols, pivots: BTreeMap::new(), pivot_limit: limit }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Reduce a row against current pivots (leading part only, below pivot_limit).
    pub fn reduce(&self, row: &SparseRow<C>) -> SparseRow<C> {
        let mut r = row.clone();
        let mut pos = 0;
        while pos < r.len() {
            let (col, val) = (r[pos].0, r[pos].1.clone());
            if col >= self.pivot_limit {
                break;
            }
            if let Some(p) = self.pivots.get(&col) {
                r = axpy(&r, &val, p);
                // entries before pos are unchanged, entry at pos eliminated
            } else {
                pos += 1;
            }
        }
        r
    }

    /// Insert a row; returns the new pivot column, or None if dependent.
    pub fn insert(&mut self, row: &SparseRow<C>) -> Option<usize> {
        let r = self.reduce(row);
        let lead = r.iter().position(|_| true)?;
        let (col, val) = (r[lead].0, r[lead].1.clone());
        if col >= self.pivot_limit {
            return None;
        }
        let inv = val.inv();
        let r: SparseRow<C> = r.into_iter().map(|(j, c)| (j, c.mul(&inv))).collect();
        self.pivots.insert(col, r);
        Some(col)
    }

    /// Back-substitute to reduced row echelon form.
    pub fn make_reduced(&mut self) {
        let cols: Vec<usize> = self.pivots.keys().rev().cloned().collect();
        for &c in &cols {
            let prow = self.pivots[&c].clone();
            let others: Vec<usize> = self.pivots.range(..c).map(|(k, _)| *k).collect();
            for o in others {
                let row = &self.pivots[&o];
                if let Ok(idx) = row.binary_search_by_key(&c, |x| x.0) {
                    let s = row[idx].1.clone();
                    let nr = axpy(row, &s, &prow);
                    self.pivots.insert(o, nr);
                }
            }
        }
    }
}

pub fn echelon<C: Field>(m: &SparseMatrix<C>) -> Echelon<C> {
    let mut e = Echelon::new(m.ncols);
    for r in &m.rows {
        e.insert(r);
    }
    e
}

pub fn rank<C: Field>(m: &SparseMatrix<C>) -> usize {
    echelon(m).rank()
}

/// Basis of {v : M v = 0}, one vector per free column (value 1 there).
pub fn nullspace<C: Field>(m: &SparseMatrix<C>) -> Vec<Vec<C>> {
    let mut e = echelon(m);
    e.make_reduced();
    nullspace_from_rref(&e)
}

fn nullspace_from_rref<C: Field>(e: &Echelon<C>) -> Vec<Vec<C>> {
    let n = e.ncols;
    let mut out = Vec::new();
    for f in 0..n {
        if e.pivots.contains_key(&f) {
            continue;
        }
        let mut v = vec![C::zero(); n];
        v[f] = C::one();
        for (pc, row) in &e.pivots {
            if let Ok(idx) = row.binary_search_by_key(&f, |x| x.0) {
                v[*pc] = row[idx].1.neg();
            }
        }
        out.push(v);
    }
    out
}

/// Solution of M v = b with free variables set to zero, or None if inconsistent.
pub fn solve<C: Field>(m: &SparseMatrix<C>, b: &[C]) -> Option<Vec<C>> {
    assert_eq!(m.rows.len(), b.len());
    let n = m.ncols;
    let mut e = Echelon::with_pivot_limit(n + 1, n);
    for (r, bi) in m.rows.iter().zip(b) {
        let mut row = r.clone();
        if !bi.is_zero() {
            row.push((n, bi.clone()));
        }
        let red = e.reduce(&row);
        if red.is_empty() {
            continue;
        }
        if red[0].0 == n {
            return None;
        }
        e.insert(&red);
    }
    e.make_reduced();
    let mut v = vec![C::zero(); n];
    for (pc, row) in &e.pivots {
        if let Ok(idx) = row.binary_search_by_key(&n, |x| x.0) {
            v[*pc] = row[idx].1.clone();
        }
    }
    Some(v)
}

/// Span of a fixed list of vectors with exact coordinate extraction.
#[derive(Clone, Debug)]
pub struct Subspace<C: Field> {
    dim_ambient: usize,
    k: usize,
    ech: Echelon<C>,
}

impl<C: Field> Subspace<C> {
    /// Basis vectors must be linearly independent.
    pub fn new(dim_ambient: usize, basis: &[SparseRow<C>]) -> Result<Self, String> {
        let k = basis.len();
        let mut ech = Echelon::with_pivot_limit(dim_ambient + k, dim_ambient);
        for (j, b) in basis.iter().enumerate() {
            let mut row = b.clone();
            row.push((dim_ambient + j, C::one()));
            if ech.insert(&row).is_none() {
                return Err(format!("basis vector {} is dependent", j));
            }
        }
        Ok(Subspace { dim_ambient, k, ech })
    }

    pub fn dim(&self) -> usize {
        self.k
    }

    /// Coordinates of v in the basis, or None if v is outside the span.
    pub fn coordinates(&self, v: &SparseRow<C>) -> Option<Vec<C>> {
        let red = self.ech.reduce(v);
        if red.iter().any(|(j, _)| *j < self.dim_ambient) {
            return None;
        }
        // red = v - sum c_r E_r ; tail of E_r holds the basis combination
        // so v = -(tail of red) applied to basis
        let mut out = vec![C::zero(); self.k];
        for (j, c) in red {
            out[j - self.dim_ambient] = c.neg();
        }
        Some(out)
    }

    pub fn contains(&self, v: &SparseRow<C>) -> bool {
        self.coordinates(v).is_some()
    }
}

/// Signature (n_plus, n_minus, n_zero) of a symmetric rational matrix by congruence diagonalization.
pub fn signature_of_form(g: &[Vec<Q>]) -> Result<(usize, usize, usize), String> {
    let n = g.len();
    for (i, r) in g.iter().enumerate() {
        if r.len() != n {
            return Err("matrix not square".into());
        }
        for j in 0..n {
            if r[j] != g[j][i] {
                return Err("non-symmetric input".into());
            }
        }
    }
    let mut a: Vec<Vec<Q>> = g.to_vec();
    let (mut pos, mut neg) = (0, 0);
    let mut active: Vec<usize> = (0..n).collect();
    while !active.is_empty() {
        let piv = active.iter().cloned().find(|&i| !a[i][i].is_zero());
        let p = match piv {
            Some(p) => p,
            None => {
                // find off-diagonal nonzero and replace row/col i by i + j
                let mut found = None;
                'outer: for &i in &active {
                    for &j in &active {
                        if i != j && !a[i][j].is_zero() {
                            found = Some((i, j));
                            break 'outer;
                        }
                    }
                }
                match found {
                    None => break,
                    Some((i, j)) => {
                        for k in 0..n {
                            let v = a[j][k].clone();
                            a[i][k] += v;
                        }
                        for k in 0..n {
                            let v = a[k][j].clone();
                            a[k][i] += v;
                        }
                        i
                    }
                }
            }
        };
        let d = a[p][p].clone();
        if d.is_positive() {
            pos += 1;
        } else {
            neg += 1;
        }
        active.retain(|&x| x != p);
        for &i in &active {
            if a[i][p].is_zero() {
                continue;
            }
            let f = &a[i][p] / &d;
            for &j in &active {
                if a[p][j].is_zero() {
                    continue;
                }
                let t = &f * &a[p][j];
                a[i][j] -= t;
            }
            a[i][p] = Q::zero();
        }
        for &j in &active {
            a[p][j] = Q::zero();
        }
    }
    Ok((pos, neg, n - pos - neg))
}

/// Fraction-free elimination over the integers; returns rank. Used as an independent check.
pub fn rank_fraction_free(m: &SparseMatrix<Q>) -> usize {
    let mut pivots: BTreeMap<usize, Vec<(usize, BigInt)>> = BTreeMap::new();
    for r in &m.rows {
        let mut row = integer_row(r);
        loop {
            let Some(&(col, ref lead)) = row.first() else { break };
            let Some(p) = pivots.get(&col) else {
                pivots.insert(col, row);
                break;
            };
            let plead = p[0].1.clone();
            let lead = lead.clone();
            row = primitive(int_combine(&row, &plead, p, &lead));
        }
    }
    pivots.len()
}

fn integer_row(r: &SparseRow<Q>) -> Vec<(usize, BigInt)> {
    let mut l = BigInt::from(1);
    for (_, c) in r {
        l = l.lcm(c.denom());
    }
    primitive(r.iter().map(|(j, c)| (*j, c.numer() * (&l / c.denom()))).collect())
}

fn primitive(r: Vec<(usize, BigInt)>) -> Vec<(usize, BigInt)> {
    let mut g = BigInt::from(0);
    for (_, c) in &r {
        g = g.gcd(c);
    }
    if g == BigInt::from(0) || g == BigInt::from(1) {
        return r;
    }
    r.into_iter().map(|(j, c)| (j, c / &g)).collect()
}

/// a*row - b*other
fn int_combine(row: &[(usize, BigInt)], a: &BigInt, other: &[(usize, BigInt)], b: &BigInt) -> Vec<(usize, BigInt)> {
    let mut acc: BTreeMap<usize, BigInt> = BTreeMap::new();
    for (j, c) in row {
        *acc.entry(*j).or_insert_with(|| BigInt::from(0)) += a * c;
    }
    for (j, c) in other {
        *acc.entry(*j).or_insert_with(|| BigInt::from(0)) -= b * c;
    }
    acc.into_iter().filter(|(_, c)| *c != BigInt::from(0)).collect()
}

pub fn dense_to_sparse<C: Field>(v: &[C]) -> SparseRow<C> {
    v.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(j, c)| (j, c.clone())).collect()
}
