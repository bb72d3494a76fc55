//! Exact scalar fields: rationals and Gaussian rationals.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};
use std::fmt;

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn qr(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn q_to_f64(x: &Q) -> f64 {
    match (x.numer().to_f64(), x.denom().to_f64()) {
        (Some(a), Some(b)) if a.is_finite() && b.is_finite() => a / b,
        _ => {
            // huge numerator/denominator: scale down by bit length
            let shift = x.numer().bits().max(x.denom().bits()) as i64 - 900;
            let s = shift.max(0) as u64;
            let a = (x.numer() >> s).to_f64().unwrap_or(0.0);
            let b = (x.denom() >> s).to_f64().unwrap_or(1.0);
            a / b
        }
    }
}

/// Render a rational as "n" or "n/d".
pub fn q_string(x: &Q) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Gaussian rational a + b i.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct GQ {
    pub re: Q,
    pub im: Q,
}

impl GQ {
    pub fn new(re: Q, im: Q) -> Self {
        GQ { re, im }
    }
    pub fn i() -> Self {
        GQ::new(Q::zero(), Q::one())
    }
    pub fn real(re: Q) -> Self {
        GQ::new(re, Q::zero())
    }
    pub fn norm_sq(&self) -> Q {
        &self.re * &self.re + &self.im * &self.im
    }
}

impl fmt::Display for GQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            write!(f, "{}", q_string(&self.re))
        } else if self.re.is_zero() {
            write!(f, "{}i", q_string(&self.im))
        } else {
            let sign = if self.im.is_negative() { "-" } else { "+" };
            write!(f, "{}{}{}i", q_string(&self.re), sign, q_string(&self.im.abs()))
        }
    }
}

/// Operations shared by the exact scalar types.
pub trait Field: Clone + PartialEq + fmt::Debug + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    /// Panics on division by zero.
    fn div(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    fn from_q(x: Q) -> Self;
    fn conj(&self) -> Self;
    fn to_c64(&self) -> (f64, f64);
    fn real_part(&self) -> Q;
    fn imag_part(&self) -> Q;

    fn from_i64(n: i64) -> Self {
        Self::from_q(q(n))
    }
    fn add_assign(&mut self, o: &Self) {
        *self = self.add(o);
    }
    fn sub_assign(&mut self, o: &Self) {
        *self = self.sub(o);
    }
    fn mul_q(&self, x: &Q) -> Self {
        self.mul(&Self::from_q(x.clone()))
    }
    fn inv(&self) -> Self {
        Self::one().div(self)
    }
}

impl Field for Q {
    fn zero() -> Self {
        num_traits::Zero::zero()
    }
    fn one() -> Self {
        num_traits::One::one()
    }
    fn is_zero(&self) -> bool {
        num_traits::Zero::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn div(&self, o: &Self) -> Self {
        assert!(!num_traits::Zero::is_zero(o), "division by zero");
        self / o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn from_q(x: Q) -> Self {
        x
    }
    fn conj(&self) -> Self {
        self.clone()
    }
    fn to_c64(&self) -> (f64, f64) {
        (q_to_f64(self), 0.0)
    }
    fn real_part(&self) -> Q {
        self.clone()
    }
    fn imag_part(&self) -> Q {
        num_traits::Zero::zero()
    }
    fn add_assign(&mut self, o: &Self) {
        *self += o;
    }
    fn sub_assign(&mut self, o: &Self) {
        *self -= o;
    }
    fn mul_q(&self, x: &Q) -> Self {
        self * x
    }
}

impl Field for GQ {
    fn zero() -> Self {
        GQ::new(Q::zero(), Q::zero())
    }
    fn one() -> Self {
        GQ::new(Q::one(), Q::zero())
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
    fn add(&self, o: &Self) -> Self {
        GQ::new(&self.re + &o.re, &self.im + &o.im)
    }
    fn sub(&self, o: &Self) -> Self {
        GQ::new(&self.re - &o.re, &self.im - &o.im)
    }
    fn mul(&self, o: &Self) -> Self {
        if self.im.is_zero() && o.im.is_zero() {
            return GQ::real(&self.re * &o.re);
        }
        GQ::new(
            &self.re * &o.re - &self.im * &o.im,
            &self.re * &o.im + &self.im * &o.re,
        )
    }
    fn div(&self, o: &Self) -> Self {
        let d = o.norm_sq();
        assert!(!d.is_zero(), "division by zero");
        let num = self.mul(&o.conj());
        GQ::new(num.re / &d, num.im / &d)
    }
    fn neg(&self) -> Self {
        GQ::new(-&self.re, -&self.im)
    }
    fn from_q(x: Q) -> Self {
        GQ::real(x)
    }
    fn conj(&self) -> Self {
        GQ::new(self.re.clone(), -&self.im)
    }
    fn to_c64(&self) -> (f64, f64) {
        (q_to_f64(&self.re), q_to_f64(&self.im))
    }
    fn real_part(&self) -> Q {
        self.re.clone()
    }
    fn imag_part(&self) -> Q {
        self.im.clone()
    }
    fn add_assign(&mut self, o: &Self) {
        self.re += &o.re;
        self.im += &o.im;
    }
    fn sub_assign(&mut self, o: &Self) {
        self.re -= &o.re;
        self.im -= &o.im;
    }
    fn mul_q(&self, x: &Q) -> Self {
        GQ::new(&self.re * x, &self.im * x)
    }
}

pub fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::from(1), |acc, k| acc * BigInt::from(k))
}

pub fn binomial(n: i64, k: i64) -> BigInt {
    if k < 0 || n < 0 || k > n {
        return BigInt::from(0);
    }
    let k = k.min(n - k);
    let mut acc = BigInt::from(1);
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gaussian_division_roundtrip() {
        let a = GQ::new(qr(3, 2), q(-1));
        let b = GQ::new(q(2), qr(1, 3));
        let c = a.mul(&b).div(&b);
        assert_eq!(c, a);
        assert_eq!(GQ::i().mul(&GQ::i()), GQ::from_i64(-1));
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(6, 3), BigInt::from(20));
        assert_eq!(binomial(3, 4), BigInt::from(0));
        assert_eq!(factorial(5), BigInt::from(120));
    }

    #[test]
    fn display_forms() {
        assert_eq!(q_string(&qr(-6, 4)), "-3/2");
        assert_eq!(GQ::new(q(1), q(-2)).to_string(), "1-2i");
    }
}
