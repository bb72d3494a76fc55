//! Sparse multivariate polynomials with exact coefficients.

use super::field::{Field, Q};
use std::collections::BTreeMap;
use std::fmt;

/// Exponent vector.
pub type Mono = Vec<u8>;

#[derive(Clone, PartialEq, Debug)]
pub struct Poly<C: Field> {
    nvars: usize,
    terms: BTreeMap<Mono, C>,
}

impl<C: Field> Poly<C> {
    pub fn zero(nvars: usize) -> Self {
        Poly { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: C) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(vec![0; nvars], c);
        p
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, C::one())
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0u8; nvars];
        e[i] = 1;
        Self::monomial(e, C::one())
    }

    pub fn monomial(exps: Mono, c: C) -> Self {
        let mut p = Self::zero(exps.len());
        p.add_term(exps, c);
        p
    }

    /// Linear form sum_i c_i X^i.
    pub fn linear(coeffs: &[C]) -> Self {
        let n = coeffs.len();
        let mut p = Self::zero(n);
        for (i, c) in coeffs.iter().enumerate() {
            let mut e = vec![0u8; n];
            e[i] = 1;
            p.add_term(e, c.clone());
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &C)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, e: &[u8]) -> C {
        self.terms.get(e).cloned().unwrap_or_else(C::zero)
    }

    pub fn add_term(&mut self, e: Mono, c: C) {
        debug_assert_eq!(e.len(), self.nvars);
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(v) => {
                v.add_assign(&c);
                if v.is_zero() {
                    self.terms.remove(&e);
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    pub fn add_scaled(&mut self, other: &Self, s: &C) {
        if s.is_zero() {
            return;
        }
        for (e, c) in &other.terms {
            self.add_term(e.clone(), c.mul(s));
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut r = self.clone();
        r.add_scaled(o, &C::one());
        r
    }

    pub fn sub(&self, o: &Self) -> Self {
        let mut r = self.clone();
        r.add_scaled(o, &C::one().neg());
        r
    }

    pub fn neg(&self) -> Self {
        self.scale(&C::one().neg())
    }

    pub fn scale(&self, s: &C) -> Self {
        if s.is_zero() {
            return Self::zero(self.nvars);
        }
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c.mul(s))).collect(),
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut r = Self::zero(self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                let e: Mono = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                r.add_term(e, c1.mul(c2));
            }
        }
        r
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut r = Self::one(self.nvars);
        for _ in 0..k {
            r = r.mul(self);
        }
        r
    }

    pub fn mul_var(&self, i: usize) -> Self {
        Poly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    let mut e = e.clone();
                    e[i] += 1;
                    (e, c.clone())
                })
                .collect(),
        }
    }

    pub fn deriv(&self, i: usize) -> Self {
        let mut r = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            if e[i] > 0 {
                let mut e2 = e.clone();
                e2[i] -= 1;
                r.add_term(e2, c.mul(&C::from_i64(e[i] as i64)));
            }
        }
        r
    }

    /// Total degree, or None for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().map(|e| e.iter().map(|&a| a as usize).sum()).max()
    }

    pub fn is_homogeneous_of(&self, d: usize) -> bool {
        self.terms.keys().all(|e| e.iter().map(|&a| a as usize).sum::<usize>() == d)
    }

    pub fn map_coeffs<D: Field>(&self, f: impl Fn(&C) -> D) -> Poly<D> {
        let mut r = Poly::<D>::zero(self.nvars);
        for (e, c) in &self.terms {
            r.add_term(e.clone(), f(c));
        }
        r
    }

    /// Substitute X^i -> subs[i]; all substitutes share one variable count.
    pub fn compose(&self, subs: &[Poly<C>]) -> Poly<C> {
        assert_eq!(subs.len(), self.nvars);
        let m = subs.first().map(|p| p.nvars).unwrap_or(0);
        let mut cache: Vec<Vec<Poly<C>>> = subs.iter().map(|s| vec![Poly::one(s.nvars)]).collect();
        let mut r = Poly::zero(m);
        for (e, c) in &self.terms {
            let mut t = Poly::constant(m, c.clone());
            for (i, &a) in e.iter().enumerate() {
                if a == 0 {
                    continue;
                }
                while cache[i].len() <= a as usize {
                    let next = cache[i].last().unwrap().mul(&subs[i]);
                    cache[i].push(next);
                }
                t = t.mul(&cache[i][a as usize]);
            }
            r.add_scaled(&t, &C::one());
        }
        r
    }

    /// Linear change of variables X^i -> sum_j m[i][j] Y^j.
    pub fn linear_substitute(&self, m: &[Vec<C>]) -> Poly<C> {
        let subs: Vec<Poly<C>> = m.iter().map(|row| Poly::linear(row)).collect();
        self.compose(&subs)
    }

    pub fn eval(&self, x: &[C]) -> C {
        let mut s = C::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (i, &a) in e.iter().enumerate() {
                for _ in 0..a {
                    t = t.mul(&x[i]);
                }
            }
            s.add_assign(&t);
        }
        s
    }

    /// Floating evaluation as (re, im).
    pub fn eval_f64(&self, x: &[f64]) -> (f64, f64) {
        let mut re = 0.0;
        let mut im = 0.0;
        for (e, c) in &self.terms {
            let mut t = 1.0;
            for (i, &a) in e.iter().enumerate() {
                t *= x[i].powi(a as i32);
            }
            let (cr, ci) = c.to_c64();
            re += cr * t;
            im += ci * t;
        }
        (re, im)
    }

    /// Drop the first variable after setting it to 1: P(1, x).
    pub fn dehomogenize(&self) -> Poly<C> {
        let mut r = Poly::zero(self.nvars - 1);
        for (e, c) in &self.terms {
            r.add_term(e[1..].to_vec(), c.clone());
        }
        r
    }

    /// Embed into a ring with extra trailing variables.
    pub fn extend_vars(&self, nvars: usize) -> Poly<C> {
        let mut r = Poly::zero(nvars);
        for (e, c) in &self.terms {
            let mut e2 = e.clone();
            e2.resize(nvars, 0);
            r.add_term(e2, c.clone());
        }
        r
    }

    pub fn max_coeff_abs(&self) -> f64 {
        self.terms
            .values()
            .map(|c| {
                let (a, b) = c.to_c64();
                a.hypot(b)
            })
            .fold(0.0, f64::max)
    }
}

impl Poly<Q> {
    pub fn to_gq(&self) -> Poly<super::field::GQ> {
        self.map_coeffs(|c| super::field::GQ::real(c.clone()))
    }
}

impl<C: Field + fmt::Display> fmt::Display for Poly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({})", c)?;
            for (i, &a) in e.iter().enumerate() {
                match a {
                    0 => {}
                    1 => write!(f, "*X{}", i)?,
                    _ => write!(f, "*X{}^{}", i, a)?,
                }
            }
        }
        Ok(())
    }
}

/// All exponent vectors of total degree d in nvars variables, lexicographically descending.
pub fn monomials_of_degree(nvars: usize, d: usize) -> Vec<Mono> {
    fn rec(i: usize, left: usize, cur: &mut Mono, out: &mut Vec<Mono>) {
        let n = cur.len();
        if i == n - 1 {
            cur[i] = left as u8;
            out.push(cur.clone());
            return;
        }
        for a in (0..=left).rev() {
            cur[i] = a as u8;
            rec(i + 1, left - a, cur, out);
        }
        cur[i] = 0;
    }
    let mut out = Vec::new();
    if nvars == 0 {
        if d == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    let mut cur = vec![0u8; nvars];
    rec(0, d, &mut cur, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactcore::field::{q, GQ};

    fn x(i: usize) -> Poly<Q> {
        Poly::var(3, i)
    }

    #[test]
    fn product_rule() {
        let p = x(0).mul(&x(1)).add(&x(2).pow(3));
        let r = x(0).add(&x(1).scale(&q(2)));
        let lhs = p.mul(&r).deriv(1);
        let rhs = p.deriv(1).mul(&r).add(&p.mul(&r.deriv(1)));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn compose_matches_eval() {
        let p = x(0).pow(2).mul(&x(2)).sub(&x(1));
        let subs = vec![x(1).add(&x(2)), x(0), x(0).mul(&x(1))];
        let c = p.compose(&subs);
        let pt = [q(2), q(-3), q(5)];
        let inner: Vec<Q> = subs.iter().map(|s| s.eval(&pt)).collect();
        assert_eq!(c.eval(&pt), p.eval(&inner));
    }

    #[test]
    fn monomial_counts() {
        assert_eq!(monomials_of_degree(4, 3).len(), 20);
        assert_eq!(monomials_of_degree(1, 5), vec![vec![5u8]]);
    }

    #[test]
    fn gaussian_coefficients() {
        let z = Poly::linear(&[GQ::one(), GQ::i()]);
        let zb = Poly::linear(&[GQ::one(), GQ::i().neg()]);
        let r = z.mul(&zb);
        let expect = Poly::<Q>::var(2, 0).pow(2).add(&Poly::var(2, 1).pow(2)).to_gq();
        assert_eq!(r, expect);
    }
}
