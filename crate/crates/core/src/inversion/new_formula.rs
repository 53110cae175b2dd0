//! Inversion by repeated application of the operator `(1/f') d/dz`.
//!
//! With `h = 1/f'` expanded about `z0`, the iterates are `T_1 = h` and
//! `T_n = h * T_{n-1}'`. Evaluating `T_n` at `z0` (its constant term) gives
//! the n-th derivative of the inverse at `u0`, so `b_n = T_n(z0) / n!`.
//! Each iterate consumes one trusted order of `f`, which is why `f` must be
//! known to order `N` for `N` inverse coefficients.

use num_bigint::BigInt;

use super::{validate, InversionError, InversionResult, MethodKind};
use crate::series::TruncatedSeries;

/// `T_1, ..., T_N` for `f_series`. The trusted order of `T_n` is
/// `f_series.order() - n`.
pub fn operator_iterates(
    f_series: &TruncatedSeries,
    n: usize,
) -> Result<Vec<TruncatedSeries>, InversionError> {
    validate(f_series, n)?;
    let h = f_series.derivative()?.reciprocal()?;
    let mut iterates = Vec::with_capacity(n);
    iterates.push(h.clone());
    for _ in 1..n {
        let prev = iterates.last().expect("non-empty");
        let next = h.mul(&prev.derivative()?)?;
        iterates.push(next);
    }
    Ok(iterates)
}

pub fn invert_new_formula(
    f_series: &TruncatedSeries,
    n: usize,
) -> Result<InversionResult, InversionError> {
    let f_prime = validate(f_series, n)?;
    let iterates = operator_iterates(f_series, n)?;
    let mut factorial = BigInt::from(1);
    let mut tail = Vec::with_capacity(n);
    for (k, t) in iterates.iter().enumerate() {
        factorial *= k + 1;
        let divisor = f_prime.bigint_like(&factorial)?;
        tail.push(t.constant_term().div(&divisor)?);
    }
    InversionResult::assemble(MethodKind::NewFormula, f_series, f_prime, tail)
}
