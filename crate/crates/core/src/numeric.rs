//! Exact rational and binary-float coefficients.
//!
//! [`Rational`] is always stored reduced with a positive denominator, so
//! structural equality is value equality. [`Coefficient`] tags a value as
//! either exact or `f64`; arithmetic between the two variants is refused.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NumericError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("value {0} is outside the range of a 64-bit float")]
    Overflow(String),
    #[error("float arithmetic produced NaN")]
    NotANumber,
    #[error("cannot combine an exact rational with a float")]
    MixedVariants,
    #[error("cannot parse {0:?} as a number")]
    Parse(String),
}

/// Arbitrary-size rational number in lowest terms.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Rational(BigRational);

impl Rational {
    /// Builds `numer/denom`, reducing to lowest terms.
    pub fn new(numer: impl Into<BigInt>, denom: impl Into<BigInt>) -> Result<Self, NumericError> {
        let denom = denom.into();
        if denom.is_zero() {
            return Err(NumericError::DivisionByZero);
        }
        Ok(Rational(BigRational::new(numer.into(), denom)))
    }

    pub fn from_integer(n: impl Into<BigInt>) -> Self {
        Rational(BigRational::from_integer(n.into()))
    }

    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    /// Always positive.
    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    pub fn checked_div(&self, rhs: &Rational) -> Result<Rational, NumericError> {
        if rhs.is_zero() {
            return Err(NumericError::DivisionByZero);
        }
        Ok(Rational(&self.0 / &rhs.0))
    }

    pub fn recip(&self) -> Result<Rational, NumericError> {
        Rational::one().checked_div(self)
    }

    pub fn pow(&self, exp: i32) -> Result<Rational, NumericError> {
        if exp < 0 && self.is_zero() {
            return Err(NumericError::DivisionByZero);
        }
        Ok(Rational(num_traits::Pow::pow(&self.0, exp)))
    }

    /// Exact square root when `self` is the square of a rational.
    pub fn sqrt_exact(&self) -> Option<Rational> {
        if self.is_negative() {
            return None;
        }
        let n = self.numer().sqrt();
        let d = self.denom().sqrt();
        if &(&n * &n) == self.numer() && &(&d * &d) == self.denom() {
            Some(Rational(BigRational::new_raw(n, d)))
        } else {
            None
        }
    }

    /// Nearest `f64`, ties to even. Subnormal results are rounded the same
    /// way; magnitudes beyond `f64::MAX` after rounding are an error.
    pub fn to_f64(&self) -> Result<f64, NumericError> {
        if self.is_zero() {
            return Ok(0.0);
        }
        let negative = self.is_negative();
        let n = self.numer().magnitude();
        let d = self.denom().magnitude();
        let magnitude =
            positive_ratio_to_f64(n, d).ok_or_else(|| NumericError::Overflow(self.to_string()))?;
        Ok(if negative { -magnitude } else { magnitude })
    }

    /// `sum a_i * b_i`, accumulated over a common denominator and reduced once.
    pub fn dot<'a>(pairs: impl IntoIterator<Item = (&'a Rational, &'a Rational)>) -> Rational {
        let mut numer = BigInt::zero();
        let mut denom = BigInt::one();
        for (a, b) in pairs {
            if a.is_zero() || b.is_zero() {
                continue;
            }
            let n = a.numer() * b.numer();
            let d = a.denom() * b.denom();
            if d == denom {
                numer += n;
            } else if d.is_one() {
                numer += n * &denom;
            } else {
                numer = numer * &d + n * &denom;
                denom *= d;
            }
        }
        Rational(BigRational::new(numer, denom))
    }

    /// Serialized form, always `num/den` (e.g. `3/1`, `-5/14`).
    pub fn to_fraction_string(&self) -> String {
        format!("{}/{}", self.numer(), self.denom())
    }
}

fn positive_ratio_to_f64(n: &BigUint, d: &BigUint) -> Option<f64> {
    const MANTISSA_BITS: i64 = 52;
    const MIN_LSB_EXP: i64 = -1074;

    // Scale so the integer quotient carries at least 56 significant bits.
    let shift = 56 - (n.bits() as i64 - d.bits() as i64);
    let (scaled_n, scaled_d) = if shift >= 0 {
        (n << shift as usize, d.clone())
    } else {
        (n.clone(), d << (-shift) as usize)
    };
    let (q, r) = scaled_n.div_rem(&scaled_d);
    let sticky = !r.is_zero();

    // value = q * 2^-shift
    let msb_exp = q.bits() as i64 - 1 - shift;
    let lsb_exp = (msb_exp - MANTISSA_BITS).max(MIN_LSB_EXP);
    let drop = (lsb_exp + shift) as usize;
    debug_assert!(drop >= 1);

    let mut mantissa = &q >> drop;
    let low = &q - (&mantissa << drop);
    let half = BigUint::one() << (drop - 1);
    let round_up = match low.cmp(&half) {
        Ordering::Greater => true,
        Ordering::Equal => sticky || mantissa.is_odd(),
        Ordering::Less => false,
    };
    if round_up {
        mantissa += 1u32;
    }

    let mut mantissa = mantissa.to_u64()?;
    let mut lsb_exp = lsb_exp;
    if mantissa == 1 << (MANTISSA_BITS + 1) {
        mantissa >>= 1;
        lsb_exp += 1;
    }
    if mantissa < 1 << MANTISSA_BITS {
        // subnormal (or rounded up into the smallest normal)
        return Some(f64::from_bits(mantissa));
    }
    let biased = lsb_exp + MANTISSA_BITS + 1023;
    if biased >= 2047 {
        return None;
    }
    let bits = ((biased as u64) << MANTISSA_BITS) | (mantissa - (1 << MANTISSA_BITS));
    Some(f64::from_bits(bits))
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.numer())
        } else {
            write!(f, "{}/{}", self.numer(), self.denom())
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Rational {
    type Err = NumericError;

    /// Accepts `p`, `p/q` and finite decimals such as `-0.125`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || NumericError::Parse(s.to_string());
        let t = s.trim();
        if let Some((p, q)) = t.split_once('/') {
            let p: BigInt = p.trim().parse().map_err(|_| err())?;
            let q: BigInt = q.trim().parse().map_err(|_| err())?;
            return Rational::new(p, q);
        }
        if let Some((whole, frac)) = t.split_once('.') {
            let (negative, whole) = match whole.strip_prefix('-') {
                Some(rest) => (true, rest),
                None => (false, whole.strip_prefix('+').unwrap_or(whole)),
            };
            let all_digits = |x: &str| x.bytes().all(|b| b.is_ascii_digit());
            if frac.is_empty() || !all_digits(whole) || !all_digits(frac) {
                return Err(err());
            }
            let digits: BigInt = format!("{whole}{frac}").parse().map_err(|_| err())?;
            let scale = num_traits::pow(BigInt::from(10), frac.len());
            let value = Rational::new(digits, scale)?;
            return Ok(if negative { -value } else { value });
        }
        let n: BigInt = t.parse().map_err(|_| err())?;
        Ok(Rational::from_integer(n))
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::from_integer(n)
    }
}

impl From<BigInt> for Rational {
    fn from(n: BigInt) -> Self {
        Rational::from_integer(n)
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl<'a> $trait<&'a Rational> for &'a Rational {
            type Output = Rational;
            fn $method(self, rhs: &'a Rational) -> Rational {
                Rational($trait::$method(&self.0, &rhs.0))
            }
        }
        impl $trait for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational($trait::$method(self.0, rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-&self.0)
    }
}

/// A series entry: exact rational or a non-NaN `f64`.
#[derive(Clone, PartialEq)]
pub enum Coefficient {
    Rational(Rational),
    Float(f64),
}

impl Coefficient {
    pub fn float(x: f64) -> Result<Self, NumericError> {
        if x.is_nan() {
            Err(NumericError::NotANumber)
        } else {
            Ok(Coefficient::Float(x))
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Coefficient::Rational(_))
    }

    pub fn same_variant(&self, other: &Coefficient) -> bool {
        self.is_exact() == other.is_exact()
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Coefficient::Rational(r) => r.is_zero(),
            Coefficient::Float(x) => *x == 0.0,
        }
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        match self {
            Coefficient::Rational(r) => Some(r),
            Coefficient::Float(_) => None,
        }
    }

    /// Zero in the same variant as `self`.
    pub fn zero_like(&self) -> Coefficient {
        self.int_like(0)
    }

    pub fn one_like(&self) -> Coefficient {
        self.int_like(1)
    }

    pub fn int_like(&self, n: i64) -> Coefficient {
        match self {
            Coefficient::Rational(_) => Coefficient::Rational(Rational::from(n)),
            Coefficient::Float(_) => Coefficient::Float(n as f64),
        }
    }

    /// Converts an exact integer into the variant of `self`.
    pub fn bigint_like(&self, n: &BigInt) -> Result<Coefficient, NumericError> {
        match self {
            Coefficient::Rational(_) => Ok(Coefficient::Rational(Rational::from(n.clone()))),
            Coefficient::Float(_) => Rational::from(n.clone()).to_f64().map(Coefficient::Float),
        }
    }

    pub fn to_f64(&self) -> Result<f64, NumericError> {
        match self {
            Coefficient::Rational(r) => r.to_f64(),
            Coefficient::Float(x) => Ok(*x),
        }
    }

    pub fn add(&self, rhs: &Coefficient) -> Result<Coefficient, NumericError> {
        match (self, rhs) {
            (Coefficient::Rational(a), Coefficient::Rational(b)) => {
                Ok(Coefficient::Rational(a + b))
            }
            (Coefficient::Float(a), Coefficient::Float(b)) => Coefficient::float(a + b),
            _ => Err(NumericError::MixedVariants),
        }
    }

    pub fn sub(&self, rhs: &Coefficient) -> Result<Coefficient, NumericError> {
        match (self, rhs) {
            (Coefficient::Rational(a), Coefficient::Rational(b)) => {
                Ok(Coefficient::Rational(a - b))
            }
            (Coefficient::Float(a), Coefficient::Float(b)) => Coefficient::float(a - b),
            _ => Err(NumericError::MixedVariants),
        }
    }

    pub fn mul(&self, rhs: &Coefficient) -> Result<Coefficient, NumericError> {
        match (self, rhs) {
            (Coefficient::Rational(a), Coefficient::Rational(b)) => {
                Ok(Coefficient::Rational(a * b))
            }
            (Coefficient::Float(a), Coefficient::Float(b)) => Coefficient::float(a * b),
            _ => Err(NumericError::MixedVariants),
        }
    }

    pub fn div(&self, rhs: &Coefficient) -> Result<Coefficient, NumericError> {
        match (self, rhs) {
            (Coefficient::Rational(a), Coefficient::Rational(b)) => {
                a.checked_div(b).map(Coefficient::Rational)
            }
            (Coefficient::Float(a), Coefficient::Float(b)) => {
                if *b == 0.0 {
                    return Err(NumericError::DivisionByZero);
                }
                Coefficient::float(a / b)
            }
            _ => Err(NumericError::MixedVariants),
        }
    }

    /// `sum a_i * b_i`; all terms must share the variant of `self`.
    pub fn dot<'a>(
        &self,
        pairs: impl IntoIterator<Item = (&'a Coefficient, &'a Coefficient)>,
    ) -> Result<Coefficient, NumericError> {
        match self {
            Coefficient::Rational(_) => {
                let mut rational_pairs = Vec::new();
                for (a, b) in pairs {
                    match (a, b) {
                        (Coefficient::Rational(x), Coefficient::Rational(y)) => {
                            rational_pairs.push((x, y))
                        }
                        _ => return Err(NumericError::MixedVariants),
                    }
                }
                Ok(Coefficient::Rational(Rational::dot(rational_pairs)))
            }
            Coefficient::Float(_) => {
                let mut acc = 0.0;
                for (a, b) in pairs {
                    match (a, b) {
                        (Coefficient::Float(x), Coefficient::Float(y)) => acc += x * y,
                        _ => return Err(NumericError::MixedVariants),
                    }
                }
                Coefficient::float(acc)
            }
        }
    }

    pub fn neg(&self) -> Coefficient {
        match self {
            Coefficient::Rational(r) => Coefficient::Rational(-r),
            Coefficient::Float(x) => Coefficient::Float(-x),
        }
    }

    pub fn scale(&self, k: i64) -> Result<Coefficient, NumericError> {
        self.mul(&self.int_like(k))
    }

    /// Serialized form: `num/den` for rationals, shortest round-trip decimal for floats.
    pub fn to_serial_string(&self) -> String {
        match self {
            Coefficient::Rational(r) => r.to_fraction_string(),
            Coefficient::Float(x) => format!("{x}"),
        }
    }

    /// Inverse of [`Coefficient::to_serial_string`]: a `/` marks a rational.
    pub fn from_serial_str(s: &str) -> Result<Coefficient, NumericError> {
        if s.contains('/') {
            s.parse::<Rational>().map(Coefficient::Rational)
        } else {
            let x: f64 = s
                .trim()
                .parse()
                .map_err(|_| NumericError::Parse(s.to_string()))?;
            Coefficient::float(x)
        }
    }
}

impl From<Rational> for Coefficient {
    fn from(r: Rational) -> Self {
        Coefficient::Rational(r)
    }
}

impl fmt::Display for Coefficient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coefficient::Rational(r) => fmt::Display::fmt(r, f),
            Coefficient::Float(x) => write!(f, "{x}"),
        }
    }
}

impl fmt::Debug for Coefficient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coefficient::Rational(r) => write!(f, "{r}"),
            Coefficient::Float(x) => write!(f, "{x:?}"),
        }
    }
}

impl serde::Serialize for Coefficient {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_serial_string())
    }
}

impl<'de> serde::Deserialize<'de> for Coefficient {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        Coefficient::from_serial_str(&s).map_err(serde::de::Error::custom)
    }
}

/// `n!` as an exact integer.
pub fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}
