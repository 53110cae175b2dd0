//! Lagrange-Bürmann inversion by coefficient extraction.
//!
//! With `phi(w) = f(z0 + w) - u0 = w * psi(w)` and `psi(0) = f'(z0)`, the
//! inverse coefficients are `b_n = [w^(n-1)] (1/psi(w))^n / n`. This is the
//! limit in the classical statement of the formula, evaluated on series so
//! no limit needs to be taken.

use super::{validate, InversionError, InversionResult, MethodKind};
use crate::series::TruncatedSeries;

pub fn invert_lagrange(
    f_series: &TruncatedSeries,
    n: usize,
) -> Result<InversionResult, InversionError> {
    let f_prime = validate(f_series, n)?;
    // psi = phi(w)/w: drop the constant term u0 and shift down
    let psi = TruncatedSeries::new(f_series.center().clone(), f_series.coeffs()[1..].to_vec())?;
    let w_over_phi = psi.truncate(n - 1).reciprocal()?;

    let mut power = w_over_phi.clone();
    let mut tail = Vec::with_capacity(n);
    for k in 1..=n {
        let extracted = power.coeff(k - 1).expect("power has order n - 1");
        tail.push(extracted.div(&extracted.int_like(k as i64))?);
        if k < n {
            power = power.mul(&w_over_phi)?;
        }
    }
    InversionResult::assemble(MethodKind::LagrangeBurmann, f_series, f_prime, tail)
}
