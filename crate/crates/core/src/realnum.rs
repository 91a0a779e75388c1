//! Arbitrary-precision real numbers.
//!
//! [`Real`] wraps an `astro_float::BigFloat` together with the decimal
//! [`Precision`] it was computed at. Binary operations run at the larger of
//! the two operand precisions, so precision is carried by values rather than
//! held in global state.
//!
//! The binary mantissa is sized with guard bits above the requested decimal
//! precision, so correctly rounded `+ - * /` stay well inside one unit of the
//! last working digit, and the elementary functions (which `astro_float`
//! rounds correctly) inside two.

use std::cell::RefCell;
use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use astro_float::{BigFloat, Consts, Radix, RoundingMode};
use num_bigint::{BigInt, BigUint, Sign};
use num_traits::{One, Zero};

use crate::error::{Error, Result};

const RM: RoundingMode = RoundingMode::ToEven;
const GUARD_BITS: usize = 32;
const WORD_BITS: usize = 64;

thread_local! {
    static CONSTS: RefCell<Consts> = RefCell::new(Consts::new().expect("allocate constant cache"));
}

fn with_consts<R>(f: impl FnOnce(&mut Consts) -> R) -> R {
    CONSTS.with(|cc| f(&mut cc.borrow_mut()))
}

/// Working precision in significant decimal digits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Precision(u32);

impl Precision {
    pub const DEFAULT: Precision = Precision(64);
    /// Digits reserved between the working precision and any displayed result.
    pub const GUARD_DIGITS: u32 = 8;
    pub const MIN: u32 = 16;

    pub fn new(digits: u32) -> Self {
        Precision(digits.max(Self::MIN))
    }

    pub fn digits(self) -> u32 {
        self.0
    }

    /// Largest number of output digits this precision can honour.
    pub fn output_cap(self) -> u32 {
        self.0 - Self::GUARD_DIGITS
    }

    pub fn extended(self, extra: u32) -> Self {
        Precision(self.0 + extra)
    }

    pub(crate) fn bits(self) -> usize {
        let raw = (self.0 as f64 * std::f64::consts::LOG2_10).ceil() as usize + GUARD_BITS;
        raw.div_ceil(WORD_BITS) * WORD_BITS
    }
}

impl Default for Precision {
    fn default() -> Self {
        Self::DEFAULT
    }
}

impl fmt::Display for Precision {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} digits", self.0)
    }
}

/// Rounding applied when rendering a [`Real`] in fixed-point decimal.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DecimalRounding {
    HalfAwayFromZero,
    Truncate,
}

#[derive(Clone)]
pub struct Real {
    value: BigFloat,
    prec: Precision,
}

impl Real {
    fn wrap(value: BigFloat, prec: Precision) -> Self {
        Real { value, prec }
    }

    pub fn zero(prec: Precision) -> Self {
        Self::from_i64(0, prec)
    }

    pub fn one(prec: Precision) -> Self {
        Self::from_i64(1, prec)
    }

    pub fn from_i64(v: i64, prec: Precision) -> Self {
        Self::wrap(BigFloat::from_i64(v, prec.bits()), prec)
    }

    pub fn from_u64(v: u64, prec: Precision) -> Self {
        Self::wrap(BigFloat::from_u64(v, prec.bits()), prec)
    }

    /// Exact conversion of an `f64`; only finite inputs are meaningful.
    pub fn from_f64(v: f64, prec: Precision) -> Self {
        Self::wrap(BigFloat::from_f64(v, prec.bits()), prec)
    }

    /// Parses a decimal literal such as `"1.4513692346"` or `"1e6"`.
    pub fn parse(s: &str, prec: Precision) -> Result<Self> {
        let trimmed = s.trim();
        let value =
            with_consts(|cc| BigFloat::parse(trimmed, Radix::Dec, prec.bits(), RM, cc));
        if value.is_nan() || value.is_inf() {
            return Err(Error::Domain(format!("not a finite decimal number: {s:?}")));
        }
        Ok(Self::wrap(value, prec))
    }

    /// `10^k` at the given precision.
    pub fn pow10(k: i32, prec: Precision) -> Self {
        let ten = Self::from_i64(10, prec);
        ten.powi(k as i64)
    }

    pub fn pi(prec: Precision) -> Self {
        Self::wrap(with_consts(|cc| cc.pi(prec.bits(), RM)), prec)
    }

    pub fn precision(&self) -> Precision {
        self.prec
    }

    /// Re-rounds the value to another working precision.
    pub fn with_precision(&self, prec: Precision) -> Self {
        let mut value = self.value.clone();
        value.set_precision(prec.bits(), RM).expect("set precision");
        Self::wrap(value, prec)
    }

    /// `10^-digits` at this value's precision: one unit in the last working digit
    /// of a number of order one.
    pub fn epsilon(prec: Precision) -> Self {
        Self::pow10(-(prec.digits() as i32), prec)
    }

    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        !self.is_zero() && self.value.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        !self.is_zero() && self.value.is_positive()
    }

    pub fn is_finite(&self) -> bool {
        !self.value.is_nan() && !self.value.is_inf()
    }

    pub fn abs(&self) -> Self {
        Self::wrap(self.value.abs(), self.prec)
    }

    pub fn max(&self, other: &Real) -> Real {
        if self >= other {
            self.clone()
        } else {
            other.clone()
        }
    }

    pub fn min(&self, other: &Real) -> Real {
        if self <= other {
            self.clone()
        } else {
            other.clone()
        }
    }

    pub fn ln(&self) -> Result<Self> {
        if !self.is_positive() {
            return Err(Error::Domain(format!("ln of non-positive value {}", self.to_f64())));
        }
        let p = self.prec.bits();
        Ok(Self::wrap(with_consts(|cc| self.value.ln(p, RM, cc)), self.prec))
    }

    pub fn exp(&self) -> Result<Self> {
        if !self.is_finite() {
            return Err(Error::Domain("exp of a non-finite value".into()));
        }
        let p = self.prec.bits();
        let value = with_consts(|cc| self.value.exp(p, RM, cc));
        if value.is_inf() || value.is_nan() {
            return Err(Error::Overflow(format!("exp({}) out of range", self.to_f64())));
        }
        Ok(Self::wrap(value, self.prec))
    }

    pub fn sqrt(&self) -> Result<Self> {
        if self.is_negative() {
            return Err(Error::Domain("sqrt of negative value".into()));
        }
        Ok(Self::wrap(self.value.sqrt(self.prec.bits(), RM), self.prec))
    }

    /// `self^exponent` for `self > 0`.
    pub fn pow(&self, exponent: &Real) -> Result<Self> {
        if !self.is_positive() {
            return Err(Error::Domain("pow requires a positive base".into()));
        }
        let prec = self.prec.max(exponent.prec);
        (exponent * &self.ln()?).exp().map(|r| r.with_precision(prec))
    }

    pub fn powi(&self, n: i64) -> Self {
        let p = self.prec.bits();
        let mag = self.value.powi(n.unsigned_abs() as usize, p, RM);
        if n < 0 {
            Self::wrap(BigFloat::from_i64(1, p).div(&mag, p, RM), self.prec)
        } else {
            Self::wrap(mag, self.prec)
        }
    }

    pub fn sin(&self) -> Self {
        let p = self.prec.bits();
        Self::wrap(with_consts(|cc| self.value.sin(p, RM, cc)), self.prec)
    }

    pub fn cos(&self) -> Self {
        let p = self.prec.bits();
        Self::wrap(with_consts(|cc| self.value.cos(p, RM, cc)), self.prec)
    }

    pub fn atan(&self) -> Self {
        let p = self.prec.bits();
        Self::wrap(with_consts(|cc| self.value.atan(p, RM, cc)), self.prec)
    }

    /// Angle of the point `(x, y)` in `(-pi, pi]`, with `atan2(0, x<0) = pi`.
    pub fn atan2(y: &Real, x: &Real) -> Real {
        let prec = y.prec.max(x.prec);
        let pi = Real::pi(prec);
        if x.is_zero() {
            return if y.is_negative() {
                -(pi / 2i64)
            } else if y.is_zero() {
                Real::zero(prec)
            } else {
                pi / 2i64
            };
        }
        let base = (y / x).atan();
        if x.is_positive() {
            base
        } else if y.is_negative() {
            base - pi
        } else {
            base + pi
        }
    }

    /// Nearest `f64`; loses everything beyond 53 bits.
    pub fn to_f64(&self) -> f64 {
        if self.value.is_nan() {
            return f64::NAN;
        }
        if self.value.is_inf() {
            return if self.value.is_negative() { f64::NEG_INFINITY } else { f64::INFINITY };
        }
        let Some((words, _, sign, exponent, _)) = self.value.as_raw_parts() else {
            return 0.0;
        };
        let Some(&top) = words.last() else {
            return 0.0;
        };
        if top == 0 {
            return 0.0;
        }
        let next = if words.len() > 1 { words[words.len() - 2] } else { 0 };
        let frac = top as f64 / 2f64.powi(64) + next as f64 / 2f64.powi(128);
        let mag = frac * 2f64.powi(exponent);
        if sign.is_negative() {
            -mag
        } else {
            mag
        }
    }

    /// Exact `round(self * 10^decimals)` as an integer.
    pub fn scaled_integer(&self, decimals: u32, mode: DecimalRounding) -> BigInt {
        let Some((words, _, sign, exponent, _)) = self.value.as_raw_parts() else {
            return BigInt::zero();
        };
        if words.iter().all(|w| *w == 0) {
            return BigInt::zero();
        }
        let digits: Vec<u32> = words
            .iter()
            .flat_map(|w| [(*w & 0xffff_ffff) as u32, (*w >> 32) as u32])
            .collect();
        let mantissa = BigUint::from_slice(&digits) * BigUint::from(10u32).pow(decimals);
        let shift = exponent as i64 - (WORD_BITS * words.len()) as i64;
        let magnitude = if shift >= 0 {
            mantissa << (shift as usize)
        } else {
            let s = (-shift) as usize;
            let q = &mantissa >> s;
            match mode {
                DecimalRounding::Truncate => q,
                DecimalRounding::HalfAwayFromZero => {
                    let half = BigUint::one() << (s - 1);
                    let rem = &mantissa - (&q << s);
                    if rem >= half {
                        q + 1u32
                    } else {
                        q
                    }
                }
            }
        };
        let s = if sign.is_negative() { Sign::Minus } else { Sign::Plus };
        BigInt::from_biguint(s, magnitude)
    }

    /// Fixed-point decimal rendering with `decimals` places, rounded half away from zero.
    pub fn to_fixed(&self, decimals: u32) -> String {
        self.to_decimal(decimals, DecimalRounding::HalfAwayFromZero)
    }

    /// Fixed-point decimal rendering with the digits beyond `decimals` dropped.
    pub fn to_fixed_truncated(&self, decimals: u32) -> String {
        self.to_decimal(decimals, DecimalRounding::Truncate)
    }

    pub fn to_decimal(&self, decimals: u32, mode: DecimalRounding) -> String {
        let n = self.scaled_integer(decimals, mode);
        let negative = n.sign() == Sign::Minus;
        let mut digits = n.magnitude().to_str_radix(10);
        let width = decimals as usize + 1;
        if digits.len() < width {
            digits = "0".repeat(width - digits.len()) + &digits;
        }
        let split = digits.len() - decimals as usize;
        let mut out = String::with_capacity(digits.len() + 2);
        if negative {
            out.push('-');
        }
        out.push_str(&digits[..split]);
        if decimals > 0 {
            out.push('.');
            out.push_str(&digits[split..]);
        }
        out
    }

    /// Nearest integer, ties away from zero.
    pub fn round_to_i64(&self) -> i64 {
        let n = self.scaled_integer(0, DecimalRounding::HalfAwayFromZero);
        i64::try_from(n).expect("rounded value fits in i64")
    }
}

impl fmt::Debug for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Real({}, {})", self.value, self.prec)
    }
}

impl fmt::Display for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match f.precision() {
            Some(d) => f.write_str(&self.to_fixed(d as u32)),
            None => write!(f, "{}", self.value),
        }
    }
}

impl PartialEq for Real {
    fn eq(&self, other: &Self) -> bool {
        self.value == other.value
    }
}

impl PartialOrd for Real {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.value.partial_cmp(&other.value)
    }
}

impl PartialEq<i64> for Real {
    fn eq(&self, other: &i64) -> bool {
        *self == Real::from_i64(*other, self.prec)
    }
}

impl PartialOrd<i64> for Real {
    fn partial_cmp(&self, other: &i64) -> Option<Ordering> {
        self.partial_cmp(&Real::from_i64(*other, self.prec))
    }
}

macro_rules! binary_op {
    ($trait:ident, $method:ident) => {
        impl $trait<&Real> for &Real {
            type Output = Real;
            fn $method(self, rhs: &Real) -> Real {
                let prec = self.prec.max(rhs.prec);
                Real::wrap(self.value.$method(&rhs.value, prec.bits(), RM), prec)
            }
        }

        impl $trait<Real> for Real {
            type Output = Real;
            fn $method(self, rhs: Real) -> Real {
                (&self).$method(&rhs)
            }
        }

        impl $trait<&Real> for Real {
            type Output = Real;
            fn $method(self, rhs: &Real) -> Real {
                (&self).$method(rhs)
            }
        }

        impl $trait<Real> for &Real {
            type Output = Real;
            fn $method(self, rhs: Real) -> Real {
                self.$method(&rhs)
            }
        }

        impl $trait<i64> for &Real {
            type Output = Real;
            fn $method(self, rhs: i64) -> Real {
                self.$method(&Real::from_i64(rhs, self.prec))
            }
        }

        impl $trait<i64> for Real {
            type Output = Real;
            fn $method(self, rhs: i64) -> Real {
                (&self).$method(&Real::from_i64(rhs, self.prec))
            }
        }
    };
}

binary_op!(Add, add);
binary_op!(Sub, sub);
binary_op!(Mul, mul);
binary_op!(Div, div);

impl Neg for Real {
    type Output = Real;
    fn neg(self) -> Real {
        let mut value = self.value;
        value.inv_sign();
        Real::wrap(value, self.prec)
    }
}

impl Neg for &Real {
    type Output = Real;
    fn neg(self) -> Real {
        -(self.clone())
    }
}

impl std::iter::Sum for Real {
    fn sum<I: Iterator<Item = Real>>(mut iter: I) -> Real {
        let first = iter.next().unwrap_or_else(|| Real::zero(Precision::DEFAULT));
        iter.fold(first, |acc, x| acc + x)
    }
}
