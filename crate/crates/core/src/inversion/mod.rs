//! Series reversion: given the Taylor series of `f` about `z0`, produce the
//! Taylor series of the inverse `g` about `u0 = f(z0)`.
//!
//! Three independent backends are provided:
//!
//! * [`invert_new_formula`] applies the operator `(1/f') d/dz` repeatedly to
//!   `1/f'` and reads off constant terms.
//! * [`invert_lagrange`] extracts `[w^(n-1)] (w/phi(w))^n / n` from the
//!   recentered series `phi(w) = f(z0 + w) - u0`.
//! * [`invert_newton`] runs Newton's iteration on the composition
//!   `f(g(u)) = u`, doubling the number of correct terms per step.
//!
//! All three return an [`InversionResult`] whose series is in powers of
//! `u - u0` with constant term `z0`.

mod compare;
mod lagrange;
mod new_formula;
mod newton;
mod radius;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::numeric::{Coefficient, NumericError};
use crate::series::{SeriesError, TruncatedSeries};

pub use compare::{compare_methods, ComparisonReport, FLOAT_AGREEMENT_RTOL};
pub use lagrange::invert_lagrange;
pub use new_formula::{invert_new_formula, operator_iterates};
pub use newton::invert_newton;
pub use radius::{estimate_radius, DEFAULT_RADIUS_WINDOW, MIN_RADIUS_WINDOW};

/// Hint attached to every vanishing-derivative error.
pub const TRANSLATION_HINT: &str =
    "the first derivative vanishes at the center; a translation to a nearby point should be made (re-expand f at a different --center)";

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum MethodKind {
    NewFormula,
    LagrangeBurmann,
    NewtonReversion,
}

impl MethodKind {
    pub const ALL: [MethodKind; 3] = [
        MethodKind::NewFormula,
        MethodKind::LagrangeBurmann,
        MethodKind::NewtonReversion,
    ];

    /// Short name used on the command line and in serialized output.
    pub fn name(self) -> &'static str {
        match self {
            MethodKind::NewFormula => "new",
            MethodKind::LagrangeBurmann => "lb",
            MethodKind::NewtonReversion => "newton",
        }
    }

    pub fn invert(
        self,
        f_series: &TruncatedSeries,
        order: usize,
    ) -> Result<InversionResult, InversionError> {
        match self {
            MethodKind::NewFormula => invert_new_formula(f_series, order),
            MethodKind::LagrangeBurmann => invert_lagrange(f_series, order),
            MethodKind::NewtonReversion => invert_newton(f_series, order),
        }
    }
}

impl fmt::Display for MethodKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for MethodKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        MethodKind::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| format!("unknown method {s:?} (expected new, lb or newton)"))
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum InversionError {
    #[error("f'({center}) = 0: {hint}", hint = TRANSLATION_HINT)]
    DerivativeVanishesAtCenter { center: String },
    #[error("f must be supplied to order {required} to produce that many inverse coefficients (got order {supplied})")]
    InsufficientOrder { required: usize, supplied: usize },
    #[error("the inverse order must be at least 1")]
    ZeroOrder,
    #[error("at least two methods are needed for a comparison")]
    TooFewMethods,
    #[error("radius window must satisfy 4 <= window <= order (window {window}, order {order})")]
    InvalidWindow { window: usize, order: usize },
    #[error("fewer than 4 nonzero coefficients in the radius window")]
    InsufficientData,
    #[error("{method}: {source}")]
    MethodFailed {
        method: MethodKind,
        #[source]
        source: Box<InversionError>,
    },
    #[error("internal inconsistency: {0}")]
    Internal(String),
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error(transparent)]
    Numeric(#[from] NumericError),
}

impl InversionError {
    /// Strips `MethodFailed` wrappers.
    pub fn root(&self) -> &InversionError {
        match self {
            InversionError::MethodFailed { source, .. } => source.root(),
            other => other,
        }
    }
}

/// Returns `f'(z0)`, the linear coefficient, when it is nonzero.
pub fn check_first_derivative(f_series: &TruncatedSeries) -> Result<Coefficient, InversionError> {
    let c1 = f_series.coeff(1).ok_or(InversionError::InsufficientOrder {
        required: 1,
        supplied: f_series.order(),
    })?;
    if c1.is_zero() {
        return Err(InversionError::DerivativeVanishesAtCenter {
            center: f_series.center().to_string(),
        });
    }
    Ok(c1.clone())
}

/// Shared preconditions of every backend; returns `f'(z0)`.
fn validate(f_series: &TruncatedSeries, order: usize) -> Result<Coefficient, InversionError> {
    if order == 0 {
        return Err(InversionError::ZeroOrder);
    }
    let f_prime = check_first_derivative(f_series)?;
    if f_series.order() < order {
        return Err(InversionError::InsufficientOrder {
            required: order,
            supplied: f_series.order(),
        });
    }
    Ok(f_prime)
}

/// The inverse series `g(u) = z0 + sum_n b_n (u - u0)^n` with its provenance.
#[derive(Debug, Clone, PartialEq)]
pub struct InversionResult {
    pub method: MethodKind,
    pub center_z0: Coefficient,
    pub u0: Coefficient,
    pub series: TruncatedSeries,
    pub f_prime_at_center: Coefficient,
    pub radius_estimate: Option<f64>,
}

impl InversionResult {
    fn assemble(
        method: MethodKind,
        f_series: &TruncatedSeries,
        f_prime: Coefficient,
        tail: Vec<Coefficient>,
    ) -> Result<Self, InversionError> {
        let z0 = f_series.center().clone();
        let u0 = f_series.constant_term().clone();
        let mut coeffs = Vec::with_capacity(tail.len() + 1);
        coeffs.push(z0.clone());
        coeffs.extend(tail);
        Ok(InversionResult {
            method,
            series: TruncatedSeries::new(u0.clone(), coeffs)?,
            center_z0: z0,
            u0,
            f_prime_at_center: f_prime,
            radius_estimate: None,
        })
    }

    pub fn order(&self) -> usize {
        self.series.order()
    }

    pub fn coeffs(&self) -> &[Coefficient] {
        self.series.coeffs()
    }

    /// Fills `radius_estimate`; a window without enough nonzero terms leaves it empty.
    pub fn attach_radius_estimate(&mut self, window: usize) -> Result<(), InversionError> {
        self.radius_estimate = match estimate_radius(&self.series, window) {
            Ok(r) => Some(r),
            Err(InversionError::InsufficientData) => None,
            Err(e) => return Err(e),
        };
        Ok(())
    }

    /// Checks `g(f(z)) = z`: composes the inverse with `f_series` and returns
    /// the first index where the result differs from `z0 + (z - z0)`, or
    /// `None` when the identity holds through the shared order. Float series
    /// are compared with [`FLOAT_AGREEMENT_RTOL`].
    pub fn round_trip_defect(
        &self,
        f_series: &TruncatedSeries,
    ) -> Result<Option<usize>, InversionError> {
        let composed = TruncatedSeries::compose(&self.series, f_series)?;
        let identity = TruncatedSeries::variable(f_series.center().clone(), composed.order());
        for (k, (got, want)) in composed.coeffs().iter().zip(identity.coeffs()).enumerate() {
            if !compare::coefficients_agree(got, want)? {
                return Ok(Some(k));
            }
        }
        Ok(None)
    }
}

#[derive(Serialize, Deserialize)]
struct InversionResultRepr {
    method: String,
    z0: Coefficient,
    u0: Coefficient,
    order: usize,
    coeffs: Vec<Coefficient>,
    f_prime_at_z0: Coefficient,
    radius_estimate: Option<f64>,
}

impl Serialize for InversionResult {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        InversionResultRepr {
            method: self.method.name().to_string(),
            z0: self.center_z0.clone(),
            u0: self.u0.clone(),
            order: self.order(),
            coeffs: self.coeffs().to_vec(),
            f_prime_at_z0: self.f_prime_at_center.clone(),
            radius_estimate: self.radius_estimate,
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for InversionResult {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let r = InversionResultRepr::deserialize(deserializer)?;
        if r.coeffs.len() != r.order + 1 {
            return Err(D::Error::custom(
                "order does not match the number of coefficients",
            ));
        }
        if r.coeffs[0] != r.z0 {
            return Err(D::Error::custom("constant coefficient must equal z0"));
        }
        Ok(InversionResult {
            method: r.method.parse().map_err(D::Error::custom)?,
            series: TruncatedSeries::new(r.u0.clone(), r.coeffs).map_err(D::Error::custom)?,
            center_z0: r.z0,
            u0: r.u0,
            f_prime_at_center: r.f_prime_at_z0,
            radius_estimate: r.radius_estimate,
        })
    }
}
