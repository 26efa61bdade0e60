//! Exact arithmetic in the cyclotomic fields Q(zeta_N).
//!
//! Elements are stored in the power basis `1, zeta, ..., zeta^(d-1)` with a
//! shared denominator, always in lowest terms, so equality is structural.

mod constants;
mod poly;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::ser::{SerializeStruct, Serializer};
use serde::Serialize;

use crate::error::ArithError;

pub use constants::{approx_constants, constants, ApproxConstants, ExactConstants};
pub use poly::cyclotomic_polynomial;

/// Arbitrary-precision rational number, always reduced with positive denominator.
pub type Rational = BigRational;

/// An element of Q(zeta_N), zeta_N = exp(2 pi i / N).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CycNum {
    order: u32,
    num: Vec<BigInt>,
    den: BigInt,
}

impl CycNum {
    pub fn zero(order: u32) -> Self {
        let degree = poly::field(order).degree;
        CycNum { order, num: vec![BigInt::zero(); degree], den: BigInt::one() }
    }

    pub fn one(order: u32) -> Self {
        Self::from_int(order, 1)
    }

    pub fn from_int(order: u32, value: i64) -> Self {
        let mut z = Self::zero(order);
        z.num[0] = BigInt::from(value);
        z
    }

    pub fn from_rational(order: u32, value: &Rational) -> Self {
        let mut z = Self::zero(order);
        z.num[0] = value.numer().clone();
        z.den = value.denom().clone();
        z
    }

    /// Builds an element from power-basis coefficients (length = field degree).
    pub fn from_coeffs(order: u32, coeffs: &[Rational]) -> Result<Self, ArithError> {
        let degree = poly::field(order).degree;
        if coeffs.len() != degree {
            return Err(ArithError::Shape(format!(
                "Q(zeta_{order}) has degree {degree}, got {} coefficients",
                coeffs.len()
            )));
        }
        let den = coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let num = coeffs.iter().map(|c| c.numer() * (&den / c.denom())).collect();
        Ok(CycNum { order, num, den }.normalized())
    }

    /// zeta_N^k for any integer k.
    pub fn zeta(order: u32, k: i64) -> Self {
        let f = poly::field(order);
        let idx = k.rem_euclid(order as i64) as usize;
        CycNum { order, num: f.powers[idx].clone(), den: BigInt::one() }
    }

    /// The element zeta_N^(N/8) + zeta_N^(-N/8) = sqrt(2); requires 8 | N.
    pub fn sqrt2(order: u32) -> Self {
        assert!(order % 8 == 0, "sqrt(2) needs 8 | N, got N = {order}");
        let e = (order / 8) as i64;
        Self::zeta(order, e) + Self::zeta(order, -e)
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn degree(&self) -> usize {
        self.num.len()
    }

    pub fn coeffs(&self) -> Vec<Rational> {
        self.num.iter().map(|n| Rational::new(n.clone(), self.den.clone())).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.num[0].is_one() && self.num[1..].iter().all(Zero::is_zero)
    }

    /// Returns the rational value if the element lies in Q.
    pub fn as_rational(&self) -> Option<Rational> {
        if self.num[1..].iter().all(Zero::is_zero) {
            Some(Rational::new(self.num[0].clone(), self.den.clone()))
        } else {
            None
        }
    }

    fn normalized(mut self) -> Self {
        if self.is_zero() {
            self.den = BigInt::one();
            return self;
        }
        if self.den.is_negative() {
            self.den = -self.den;
            for c in self.num.iter_mut() {
                *c = -&*c;
            }
        }
        if !self.den.is_one() {
            let mut g = self.den.clone();
            for c in &self.num {
                if g.is_one() {
                    break;
                }
                if !c.is_zero() {
                    g = g.gcd(c);
                }
            }
            if !g.is_one() {
                self.den /= &g;
                for c in self.num.iter_mut() {
                    *c /= &g;
                }
            }
        }
        self
    }

    fn check(&self, other: &Self) -> Result<(), ArithError> {
        if self.order == other.order {
            Ok(())
        } else {
            Err(ArithError::OrderMismatch { left: self.order, right: other.order })
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, ArithError> {
        self.check(other)?;
        Ok(self.add_unchecked(other, false))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, ArithError> {
        self.check(other)?;
        Ok(self.add_unchecked(other, true))
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, ArithError> {
        self.check(other)?;
        Ok(self.mul_unchecked(other))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self, ArithError> {
        self.check(other)?;
        Ok(self.mul_unchecked(&other.inv()?))
    }

    fn add_unchecked(&self, other: &Self, subtract: bool) -> Self {
        if other.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return if subtract { -other.clone() } else { other.clone() };
        }
        let (num, den) = if self.den == other.den {
            let num = self
                .num
                .iter()
                .zip(&other.num)
                .map(|(a, b)| if subtract { a - b } else { a + b })
                .collect();
            (num, self.den.clone())
        } else {
            let num = self
                .num
                .iter()
                .zip(&other.num)
                .map(|(a, b)| {
                    let l = a * &other.den;
                    let r = b * &self.den;
                    if subtract {
                        l - r
                    } else {
                        l + r
                    }
                })
                .collect();
            (num, &self.den * &other.den)
        };
        CycNum { order: self.order, num, den }.normalized()
    }

    fn mul_unchecked(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.order);
        }
        let f = poly::field(self.order);
        let d = f.degree;
        let mut prod = vec![BigInt::zero(); 2 * d - 1];
        for (i, a) in self.num.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.num.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] += a * b;
                }
            }
        }
        for k in (d..2 * d - 1).rev() {
            let top = std::mem::take(&mut prod[k]);
            if top.is_zero() {
                continue;
            }
            for (i, m) in f.modulus.iter().take(d).enumerate() {
                if *m != 0 {
                    prod[k - d + i] -= &top * *m;
                }
            }
        }
        prod.truncate(d);
        CycNum { order: self.order, num: prod, den: &self.den * &other.den }.normalized()
    }

    /// Multiplicative inverse, found by solving the linear system of multiplication by `self`.
    pub fn inv(&self) -> Result<Self, ArithError> {
        if self.is_zero() {
            return Err(ArithError::DivisionByZero { order: self.order });
        }
        let f = poly::field(self.order);
        let d = f.degree;
        // Column j of the system is self * zeta^j.
        let cols: Vec<CycNum> = (0..d)
            .map(|j| self.mul_unchecked(&CycNum::zeta(self.order, j as i64)))
            .collect();
        let mut m: Vec<Vec<Rational>> = (0..d)
            .map(|i| {
                let mut row: Vec<Rational> = cols.iter().map(|c| Rational::new(c.num[i].clone(), c.den.clone())).collect();
                row.push(if i == 0 { Rational::one() } else { Rational::zero() });
                row
            })
            .collect();
        let x = solve_augmented(&mut m).ok_or(ArithError::DivisionByZero { order: self.order })?;
        CycNum::from_coeffs(self.order, &x)
    }

    /// Complex conjugation zeta -> zeta^-1.
    pub fn conj(&self) -> Self {
        let f = poly::field(self.order);
        let n = self.order as usize;
        let mut acc = vec![BigInt::zero(); f.degree];
        for (i, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let p = &f.powers[(n - i) % n];
            for (a, b) in acc.iter_mut().zip(p) {
                if !b.is_zero() {
                    *a += c * b;
                }
            }
        }
        CycNum { order: self.order, num: acc, den: self.den.clone() }.normalized()
    }

    pub fn pow(&self, exp: i64) -> Result<Self, ArithError> {
        let base = if exp < 0 { self.inv()? } else { self.clone() };
        let mut e = exp.unsigned_abs();
        let mut result = Self::one(self.order);
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul_unchecked(&sq);
            }
            e >>= 1;
            if e > 0 {
                sq = sq.mul_unchecked(&sq);
            }
        }
        Ok(result)
    }

    pub fn scale_int(&self, k: i64) -> Self {
        let k = BigInt::from(k);
        CycNum { order: self.order, num: self.num.iter().map(|c| c * &k).collect(), den: self.den.clone() }.normalized()
    }

    /// Re-expresses the element in Q(zeta_M) for a multiple M of the current order.
    pub fn coerce(&self, to: u32) -> Result<Self, ArithError> {
        if to % self.order != 0 {
            return Err(ArithError::IncompatibleCoercion { from: self.order, to });
        }
        let step = (to / self.order) as i64;
        let mut acc = Self::zero(to);
        for (i, c) in self.num.iter().enumerate() {
            if !c.is_zero() {
                let term = CycNum::zeta(to, i as i64 * step).scale_big(c);
                acc = acc.add_unchecked(&term, false);
            }
        }
        acc.den = self.den.clone();
        Ok(acc.normalized())
    }

    fn scale_big(&self, k: &BigInt) -> Self {
        CycNum { order: self.order, num: self.num.iter().map(|c| c * k).collect(), den: self.den.clone() }.normalized()
    }

    /// Complex embedding under zeta_N -> exp(2 pi i / N).
    pub fn approx(&self) -> Complex64 {
        let den = self.den.to_f64().unwrap_or(f64::INFINITY);
        let n = self.order as f64;
        let mut z = Complex64::new(0.0, 0.0);
        for (k, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let angle = 2.0 * std::f64::consts::PI * k as f64 / n;
            let v = rational_to_f64(c, &self.den, den);
            z += Complex64::from_polar(v, angle);
        }
        z
    }

    /// If `self` is a root of unity of order dividing N, returns the exponent k with self = zeta_N^k.
    pub fn root_of_unity_exponent(&self) -> Option<u32> {
        (0..self.order).find(|&k| *self == CycNum::zeta(self.order, k as i64))
    }
}

fn rational_to_f64(num: &BigInt, den: &BigInt, den_f: f64) -> f64 {
    match (num.to_f64(), den_f.is_finite()) {
        (Some(n), true) if n.is_finite() => n / den_f,
        _ => Rational::new(num.clone(), den.clone()).to_f64().unwrap_or(f64::NAN),
    }
}

/// Gauss-Jordan on an augmented d x (d+1) rational system; None if singular.
fn solve_augmented(m: &mut [Vec<Rational>]) -> Option<Vec<Rational>> {
    let d = m.len();
    for col in 0..d {
        let pivot = (col..d).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, pivot);
        let inv = m[col][col].recip();
        for x in m[col].iter_mut() {
            *x = &*x * &inv;
        }
        for r in 0..d {
            if r != col && !m[r][col].is_zero() {
                let factor = m[r][col].clone();
                for c in col..=d {
                    let delta = &factor * &m[col][c];
                    m[r][c] -= delta;
                }
            }
        }
    }
    Some(m.iter().map(|row| row[d].clone()).collect())
}

impl fmt::Debug for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})z{}", self.order)?,
                _ => write!(f, "({c})z{}^{k}", self.order)?,
            }
        }
        Ok(())
    }
}

impl Serialize for CycNum {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let z = self.approx();
        let mut s = serializer.serialize_struct("CycNum", 3)?;
        s.serialize_field("order", &self.order)?;
        let coeffs: Vec<String> = self.coeffs().iter().map(|c| c.to_string()).collect();
        s.serialize_field("coeffs", &coeffs)?;
        s.serialize_field("approx", &[z.re, z.im])?;
        s.end()
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $body:expr) => {
        impl<'a> $tr<&'a CycNum> for &'a CycNum {
            type Output = CycNum;
            fn $method(self, rhs: &'a CycNum) -> CycNum {
                if let Err(e) = self.check(rhs) {
                    panic!("{e}");
                }
                $body(self, rhs)
            }
        }
        impl $tr<CycNum> for CycNum {
            type Output = CycNum;
            fn $method(self, rhs: CycNum) -> CycNum {
                $tr::$method(&self, &rhs)
            }
        }
        impl<'a> $tr<&'a CycNum> for CycNum {
            type Output = CycNum;
            fn $method(self, rhs: &'a CycNum) -> CycNum {
                $tr::$method(&self, rhs)
            }
        }
    };
}

// Operator forms panic on an order mismatch; use the checked_* methods where orders may differ.
forward_binop!(Add, add, |a: &CycNum, b: &CycNum| a.add_unchecked(b, false));
forward_binop!(Sub, sub, |a: &CycNum, b: &CycNum| a.add_unchecked(b, true));
forward_binop!(Mul, mul, |a: &CycNum, b: &CycNum| a.mul_unchecked(b));

impl Neg for CycNum {
    type Output = CycNum;
    fn neg(mut self) -> CycNum {
        for c in self.num.iter_mut() {
            *c = -&*c;
        }
        self
    }
}

impl Neg for &CycNum {
    type Output = CycNum;
    fn neg(self) -> CycNum {
        -self.clone()
    }
}

impl std::iter::Sum for CycNum {
    fn sum<I: Iterator<Item = CycNum>>(mut iter: I) -> CycNum {
        let first = iter.next().expect("sum of an empty CycNum iterator has no order");
        iter.fold(first, |a, b| a + b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z16(k: i64) -> CycNum {
        CycNum::zeta(16, k)
    }

    #[test]
    fn zeta4_squared_is_minus_one() {
        assert_eq!(&z16(4) * &z16(4), CycNum::from_int(16, -1));
    }

    #[test]
    fn sqrt2_squares_to_two() {
        let s = &z16(2) - &z16(6);
        assert_eq!(s, CycNum::sqrt2(16));
        assert_eq!(&s * &s, CycNum::from_int(16, 2));
        let half = Rational::new(1.into(), 2.into());
        assert_eq!(s.inv().unwrap(), &s * &CycNum::from_rational(16, &half));
    }

    #[test]
    fn approx_embedding() {
        let z = z16(1).approx();
        let a = std::f64::consts::PI / 8.0;
        assert!((z.re - a.cos()).abs() < 1e-15 && (z.im - a.sin()).abs() < 1e-15);
        let m = CycNum::from_int(16, -1).approx();
        assert_eq!((m.re, m.im), (-1.0, 0.0));
        let s = CycNum::sqrt2(16).approx();
        assert!((s.re - 2f64.sqrt()).abs() < 1e-12 && s.im.abs() < 1e-12);
    }

    #[test]
    fn division_by_zero_is_an_error() {
        assert_eq!(CycNum::zero(16).inv(), Err(ArithError::DivisionByZero { order: 16 }));
    }

    #[test]
    fn order_mismatch_is_an_error() {
        let e = CycNum::one(16).checked_add(&CycNum::one(20)).unwrap_err();
        assert_eq!(e, ArithError::OrderMismatch { left: 16, right: 20 });
    }

    #[test]
    fn conj_inverts_zeta() {
        assert_eq!(z16(3).conj(), z16(-3));
        assert_eq!(z16(3).conj(), z16(13));
    }

    #[test]
    fn coercion_embeds_subfield() {
        let i4 = CycNum::zeta(4, 1);
        assert_eq!(i4.coerce(16).unwrap(), z16(4));
        assert!(z16(1).coerce(20).is_err());
    }

    #[test]
    fn non_power_of_two_orders() {
        let z = CycNum::zeta(20, 1);
        assert_eq!(z.pow(20).unwrap(), CycNum::one(20));
        assert_eq!(&z * &z.inv().unwrap(), CycNum::one(20));
        let w = CycNum::zeta(12, 5);
        assert_eq!(w.pow(-12).unwrap(), CycNum::one(12));
    }

    #[test]
    fn root_of_unity_detection() {
        assert_eq!(z16(-3).root_of_unity_exponent(), Some(13));
        assert_eq!(CycNum::sqrt2(16).root_of_unity_exponent(), None);
    }
}
