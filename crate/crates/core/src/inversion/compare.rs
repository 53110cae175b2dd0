use std::collections::BTreeSet;

use serde::ser::SerializeMap;
use serde::Serialize;

use super::{InversionError, MethodKind};
use crate::numeric::{Coefficient, NumericError};
use crate::series::TruncatedSeries;

/// Float coefficients agree when `|a - b| <= rtol * max(1, |a|, |b|)`.
pub const FLOAT_AGREEMENT_RTOL: f64 = 1e-9;

pub(crate) fn coefficients_agree(a: &Coefficient, b: &Coefficient) -> Result<bool, NumericError> {
    match (a, b) {
        (Coefficient::Rational(x), Coefficient::Rational(y)) => Ok(x == y),
        (Coefficient::Float(x), Coefficient::Float(y)) => {
            let scale = 1f64.max(x.abs()).max(y.abs());
            Ok((x - y).abs() <= FLOAT_AGREEMENT_RTOL * scale)
        }
        _ => Err(NumericError::MixedVariants),
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ComparisonReport {
    pub order: usize,
    /// In `MethodKind` order, independent of how the set was supplied.
    pub coefficients: Vec<(MethodKind, Vec<Coefficient>)>,
    pub agreement: bool,
    pub first_divergence: Option<usize>,
    /// Largest pairwise absolute difference; float series only.
    pub max_abs_diff: Option<f64>,
}

/// Runs every requested backend (concurrently) and compares their
/// coefficient vectors: exactly for rationals, to [`FLOAT_AGREEMENT_RTOL`]
/// for floats.
pub fn compare_methods(
    f_series: &TruncatedSeries,
    order: usize,
    methods: &BTreeSet<MethodKind>,
) -> Result<ComparisonReport, InversionError> {
    if methods.len() < 2 {
        return Err(InversionError::TooFewMethods);
    }
    let outcomes: Vec<_> = std::thread::scope(|scope| {
        let handles: Vec<_> = methods
            .iter()
            .map(|&m| (m, scope.spawn(move || m.invert(f_series, order))))
            .collect();
        handles
            .into_iter()
            .map(|(m, h)| (m, h.join().expect("inversion backend panicked")))
            .collect()
    });

    let mut coefficients = Vec::with_capacity(outcomes.len());
    for (method, outcome) in outcomes {
        let result = outcome.map_err(|e| InversionError::MethodFailed {
            method,
            source: Box::new(e),
        })?;
        coefficients.push((method, result.coeffs().to_vec()));
    }

    let mut first_divergence = None;
    'index: for k in 0..=order {
        for (i, (_, a)) in coefficients.iter().enumerate() {
            for (_, b) in &coefficients[i + 1..] {
                if !coefficients_agree(&a[k], &b[k])? {
                    first_divergence = Some(k);
                    break 'index;
                }
            }
        }
    }

    let max_abs_diff = if f_series.is_exact() {
        None
    } else {
        let mut max = 0f64;
        for (i, (_, a)) in coefficients.iter().enumerate() {
            for (_, b) in &coefficients[i + 1..] {
                for (x, y) in a.iter().zip(b) {
                    max = max.max((x.to_f64()? - y.to_f64()?).abs());
                }
            }
        }
        Some(max)
    };

    Ok(ComparisonReport {
        order,
        coefficients,
        agreement: first_divergence.is_none(),
        first_divergence,
        max_abs_diff,
    })
}

struct MethodMap<'a>(&'a [(MethodKind, Vec<Coefficient>)]);

impl Serialize for MethodMap<'_> {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(self.0.len()))?;
        for (method, coeffs) in self.0 {
            map.serialize_entry(method.name(), coeffs)?;
        }
        map.end()
    }
}

impl Serialize for ComparisonReport {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(5))?;
        map.serialize_entry("order", &self.order)?;
        map.serialize_entry("coefficients", &MethodMap(&self.coefficients))?;
        map.serialize_entry("agreement", &self.agreement)?;
        map.serialize_entry("first_divergence", &self.first_divergence)?;
        map.serialize_entry("max_abs_diff", &self.max_abs_diff)?;
        map.end()
    }
}
