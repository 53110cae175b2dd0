//! Truncated power series `c0 + c1 (x - a) + ... + cK (x - a)^K`.
//!
//! Every series carries its trusted order `K`. Binary operations keep the
//! smaller of the two orders, and differentiation consumes one order, so a
//! result never contains a coefficient that its inputs could not determine.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::numeric::{Coefficient, NumericError};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SeriesError {
    #[error("a series needs at least one coefficient")]
    EmptyCoefficients,
    #[error("a series cannot mix exact and float coefficients")]
    MixedVariants,
    #[error("series are expanded about different centers ({0} and {1})")]
    CenterMismatch(String, String),
    #[error("cannot differentiate a series of order 0")]
    OrderExhausted,
    #[error("constant term is zero, so the series has no reciprocal")]
    ZeroConstantTerm,
    #[error("inner constant term {inner} does not match outer center {outer}")]
    CompositionMismatch { outer: String, inner: String },
    #[error(transparent)]
    Numeric(#[from] NumericError),
}

#[derive(Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "SeriesRepr", into = "SeriesRepr")]
pub struct TruncatedSeries {
    center: Coefficient,
    coeffs: Vec<Coefficient>,
}

impl TruncatedSeries {
    /// Builds a series of order `coeffs.len() - 1`.
    pub fn new(center: Coefficient, coeffs: Vec<Coefficient>) -> Result<Self, SeriesError> {
        if coeffs.is_empty() {
            return Err(SeriesError::EmptyCoefficients);
        }
        if coeffs.iter().any(|c| !c.same_variant(&center)) {
            return Err(SeriesError::MixedVariants);
        }
        Ok(TruncatedSeries { center, coeffs })
    }

    /// Constant `value` known to `order`.
    pub fn constant(
        center: Coefficient,
        value: Coefficient,
        order: usize,
    ) -> Result<Self, SeriesError> {
        let zero = center.zero_like();
        let mut coeffs = vec![zero; order + 1];
        coeffs[0] = value;
        TruncatedSeries::new(center, coeffs)
    }

    /// The series of `x` itself about `center`.
    pub fn variable(center: Coefficient, order: usize) -> Self {
        let mut coeffs = vec![center.zero_like(); order + 1];
        coeffs[0] = center.clone();
        if order >= 1 {
            coeffs[1] = center.one_like();
        }
        TruncatedSeries { center, coeffs }
    }

    pub fn center(&self) -> &Coefficient {
        &self.center
    }

    pub fn coeffs(&self) -> &[Coefficient] {
        &self.coeffs
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, k: usize) -> Option<&Coefficient> {
        self.coeffs.get(k)
    }

    pub fn constant_term(&self) -> &Coefficient {
        &self.coeffs[0]
    }

    pub fn is_exact(&self) -> bool {
        self.center.is_exact()
    }

    /// Drops coefficients above `order`. Orders at or above the current one
    /// return the series unchanged.
    pub fn truncate(&self, order: usize) -> Self {
        let keep = order.min(self.order()) + 1;
        TruncatedSeries {
            center: self.center.clone(),
            coeffs: self.coeffs[..keep].to_vec(),
        }
    }

    /// Same coefficients, different expansion point.
    pub fn with_center(&self, center: Coefficient) -> Result<Self, SeriesError> {
        TruncatedSeries::new(center, self.coeffs.clone())
    }

    fn check_compatible(&self, other: &Self) -> Result<(), SeriesError> {
        if !self.center.same_variant(&other.center) {
            return Err(SeriesError::MixedVariants);
        }
        if self.center != other.center {
            return Err(SeriesError::CenterMismatch(
                self.center.to_string(),
                other.center.to_string(),
            ));
        }
        Ok(())
    }

    fn with_coeffs(&self, coeffs: Vec<Coefficient>) -> Self {
        TruncatedSeries {
            center: self.center.clone(),
            coeffs,
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, SeriesError> {
        self.zip_with(other, Coefficient::add)
    }

    pub fn sub(&self, other: &Self) -> Result<Self, SeriesError> {
        self.zip_with(other, Coefficient::sub)
    }

    fn zip_with(
        &self,
        other: &Self,
        op: impl Fn(&Coefficient, &Coefficient) -> Result<Coefficient, NumericError>,
    ) -> Result<Self, SeriesError> {
        self.check_compatible(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| op(a, b))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(self.with_coeffs(coeffs))
    }

    pub fn neg(&self) -> Self {
        self.with_coeffs(self.coeffs.iter().map(Coefficient::neg).collect())
    }

    pub fn scale(&self, factor: &Coefficient) -> Result<Self, SeriesError> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| c.mul(factor))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(self.with_coeffs(coeffs))
    }

    /// Cauchy product, truncated at the smaller order.
    pub fn mul(&self, other: &Self) -> Result<Self, SeriesError> {
        self.check_compatible(other)?;
        let order = self.order().min(other.order());
        let mut coeffs = Vec::with_capacity(order + 1);
        for k in 0..=order {
            let terms = (0..=k).map(|j| (&self.coeffs[j], &other.coeffs[k - j]));
            coeffs.push(self.center.dot(terms)?);
        }
        Ok(self.with_coeffs(coeffs))
    }

    /// `self^n` by repeated squaring.
    pub fn powi(&self, n: u32) -> Result<Self, SeriesError> {
        let mut result =
            TruncatedSeries::constant(self.center.clone(), self.center.one_like(), self.order())?;
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                result = result.mul(&base)?;
            }
            n >>= 1;
            if n > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(result)
    }

    /// Termwise derivative; the result has order one less.
    pub fn derivative(&self) -> Result<Self, SeriesError> {
        if self.order() == 0 {
            return Err(SeriesError::OrderExhausted);
        }
        let coeffs = self.coeffs[1..]
            .iter()
            .enumerate()
            .map(|(k, c)| c.scale(k as i64 + 1))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(self.with_coeffs(coeffs))
    }

    /// Multiplicative inverse via `b0 = 1/c0`, `bk = -(sum_{j=1..k} cj b_{k-j}) / c0`.
    pub fn reciprocal(&self) -> Result<Self, SeriesError> {
        let c0 = &self.coeffs[0];
        if c0.is_zero() {
            return Err(SeriesError::ZeroConstantTerm);
        }
        let mut out: Vec<Coefficient> = Vec::with_capacity(self.coeffs.len());
        out.push(c0.one_like().div(c0)?);
        for k in 1..self.coeffs.len() {
            let acc = c0.dot((1..=k).map(|j| (&self.coeffs[j], &out[k - j])))?;
            out.push(acc.neg().div(c0)?);
        }
        Ok(self.with_coeffs(out))
    }

    /// Multiplies by `(x - a)^shift`; the product is exact, so the order grows by `shift`.
    pub fn shift_up(&self, shift: usize) -> Self {
        let mut coeffs = vec![self.center.zero_like(); shift];
        coeffs.extend(self.coeffs.iter().cloned());
        self.with_coeffs(coeffs)
    }

    /// Divides by `(x - a)^shift`. Returns `None` unless the low `shift`
    /// coefficients are all zero and the order exceeds `shift - 1`.
    pub fn shift_down(&self, shift: usize) -> Option<Self> {
        if shift > self.order() || self.coeffs[..shift].iter().any(|c| !c.is_zero()) {
            return None;
        }
        Some(self.with_coeffs(self.coeffs[shift..].to_vec()))
    }

    /// `outer(inner(x))`, centered at `inner`'s center.
    ///
    /// `inner`'s constant term must equal `outer`'s center. The result is
    /// trusted to `min(outer.order, inner.order)`.
    pub fn compose(outer: &Self, inner: &Self) -> Result<Self, SeriesError> {
        if !outer.center.same_variant(&inner.center) {
            return Err(SeriesError::MixedVariants);
        }
        if inner.constant_term() != &outer.center {
            return Err(SeriesError::CompositionMismatch {
                outer: outer.center.to_string(),
                inner: inner.constant_term().to_string(),
            });
        }
        let order = outer.order().min(inner.order());
        let mut offset = inner.truncate(order);
        offset.coeffs[0] = inner.center.zero_like();

        let mut acc =
            TruncatedSeries::constant(inner.center.clone(), outer.coeffs[order].clone(), order)?;
        for k in (0..order).rev() {
            acc = acc.mul(&offset)?;
            acc.coeffs[0] = acc.coeffs[0].add(&outer.coeffs[k])?;
        }
        Ok(acc)
    }

    /// Horner evaluation of the truncated polynomial at the absolute point `x`.
    pub fn eval_f64(&self, x: f64) -> Result<f64, NumericError> {
        let dx = x - self.center.to_f64()?;
        let mut acc = 0.0;
        for c in self.coeffs.iter().rev() {
            acc = acc * dx + c.to_f64()?;
        }
        Ok(acc)
    }

    /// Converts exact coefficients to floats; float series are returned as is.
    pub fn to_float(&self) -> Result<Self, NumericError> {
        let as_float = |c: &Coefficient| c.to_f64().and_then(Coefficient::float);
        Ok(TruncatedSeries {
            center: as_float(&self.center)?,
            coeffs: self.coeffs.iter().map(as_float).collect::<Result<_, _>>()?,
        })
    }
}

impl std::fmt::Debug for TruncatedSeries {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Series@{:?}{:?}", self.center, self.coeffs)
    }
}

#[derive(Serialize, Deserialize)]
struct SeriesRepr {
    center: Coefficient,
    order: usize,
    coeffs: Vec<Coefficient>,
}

impl From<TruncatedSeries> for SeriesRepr {
    fn from(s: TruncatedSeries) -> Self {
        SeriesRepr {
            order: s.order(),
            center: s.center,
            coeffs: s.coeffs,
        }
    }
}

impl TryFrom<SeriesRepr> for TruncatedSeries {
    type Error = String;

    fn try_from(r: SeriesRepr) -> Result<Self, String> {
        if r.coeffs.len() != r.order + 1 {
            return Err(format!(
                "order {} does not match {} coefficients",
                r.order,
                r.coeffs.len()
            ));
        }
        TruncatedSeries::new(r.center, r.coeffs).map_err(|e| e.to_string())
    }
}
