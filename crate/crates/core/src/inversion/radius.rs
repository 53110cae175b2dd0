//! Root-test estimate of the radius of convergence.
//!
//! Takes the median of `|c_n|^(-1/n)` over the nonzero coefficients among
//! the last `window` indices. The median tolerates series with structurally
//! zero terms (odd or even functions), which break ratio tests.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};

use super::InversionError;
use crate::numeric::{Coefficient, NumericError};
use crate::series::TruncatedSeries;

pub const DEFAULT_RADIUS_WINDOW: usize = 16;
pub const MIN_RADIUS_WINDOW: usize = 4;

/// `ln |n|` for `n != 0` without overflowing `f64`.
fn ln_abs_bigint(n: &BigInt) -> f64 {
    let n = n.abs();
    let bits = n.bits();
    if bits <= 1000 {
        return n.to_f64().expect("fits").ln();
    }
    let shift = bits - 64;
    let top = (&n >> shift).to_f64().expect("64 bits");
    top.ln() + shift as f64 * std::f64::consts::LN_2
}

fn ln_abs(c: &Coefficient) -> Result<f64, NumericError> {
    match c {
        Coefficient::Rational(r) => Ok(ln_abs_bigint(r.numer()) - ln_abs_bigint(r.denom())),
        Coefficient::Float(x) if x.is_finite() => Ok(x.abs().ln()),
        Coefficient::Float(x) => Err(NumericError::Overflow(x.to_string())),
    }
}

pub fn estimate_radius(series: &TruncatedSeries, window: usize) -> Result<f64, InversionError> {
    let order = series.order();
    if window < MIN_RADIUS_WINDOW || window > order {
        return Err(InversionError::InvalidWindow { window, order });
    }
    let mut samples = Vec::with_capacity(window);
    for n in (order + 1 - window)..=order {
        let c = &series.coeffs()[n];
        if c.is_zero() {
            continue;
        }
        samples.push((-ln_abs(c)? / n as f64).exp());
    }
    if samples.len() < MIN_RADIUS_WINDOW {
        return Err(InversionError::InsufficientData);
    }
    samples.sort_by(f64::total_cmp);
    let mid = samples.len() / 2;
    Ok(if samples.len() % 2 == 0 {
        (samples[mid - 1] + samples[mid]) / 2.0
    } else {
        samples[mid]
    })
}
