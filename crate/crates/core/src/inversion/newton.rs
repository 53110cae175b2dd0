//! Series reversion by Newton's iteration on `f(g(u)) = u`.
//!
//! Independent of both closed formulas: it only uses composition and the
//! reciprocal. Starting from `g = z0 + (u - u0)/f'(z0)`, each step
//! `g <- g - (f(g) - u) / f'(g)` doubles the number of correct terms.

use super::{validate, InversionError, InversionResult, MethodKind};
use crate::series::TruncatedSeries;

pub fn invert_newton(
    f_series: &TruncatedSeries,
    n: usize,
) -> Result<InversionResult, InversionError> {
    let f_prime = validate(f_series, n)?;
    let z0 = f_series.center().clone();
    let u0 = f_series.constant_term().clone();
    let f_deriv = f_series.derivative()?;

    let seed = vec![z0.clone(), z0.one_like().div(&f_prime)?];
    let mut g = TruncatedSeries::new(u0.clone(), seed)?;
    let mut correct = 1;
    while correct < n {
        let target = (2 * correct + 1).min(n);
        let mut padded = g.coeffs().to_vec();
        padded.resize(target + 1, z0.zero_like());
        let g_pad = TruncatedSeries::new(u0.clone(), padded)?;

        let identity = TruncatedSeries::variable(u0.clone(), target);
        let residual = TruncatedSeries::compose(f_series, &g_pad)?.sub(&identity)?;
        // residual = (u - u0)^(correct+1) * scaled; 1/f'(g) is only needed to
        // the complementary order, which f' (one order short of f) supplies.
        // Float residuals carry roundoff in the low terms; only exact ones are checked.
        let low = &residual.coeffs()[..=correct];
        if residual.is_exact() && low.iter().any(|c| !c.is_zero()) {
            return Err(InversionError::Internal(format!(
                "Newton residual not small to order {correct}"
            )));
        }
        let scaled = TruncatedSeries::new(u0.clone(), residual.coeffs()[correct + 1..].to_vec())?;
        let slope = TruncatedSeries::compose(&f_deriv, &g_pad.truncate(scaled.order()))?;
        let step = scaled.mul(&slope.reciprocal()?)?.shift_up(correct + 1);
        g = g_pad.sub(&step)?;
        correct = target;
    }
    InversionResult::assemble(
        MethodKind::NewtonReversion,
        f_series,
        f_prime,
        g.coeffs()[1..].to_vec(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::{Coefficient, Rational};

    fn q(n: i64, d: i64) -> Coefficient {
        Coefficient::Rational(Rational::new(n, d).unwrap())
    }

    fn series(coeffs: &[(i64, i64)]) -> TruncatedSeries {
        TruncatedSeries::new(q(0, 1), coeffs.iter().map(|&(n, d)| q(n, d)).collect()).unwrap()
    }

    #[test]
    fn catalan_and_round_trip() {
        let f = series(&[(0, 1), (1, 1), (1, 1), (0, 1), (0, 1), (0, 1)]);
        let g = invert_newton(&f, 5).unwrap();
        let expected: Vec<_> = [0, 1, -1, 2, -5, 14].iter().map(|&n| q(n, 1)).collect();
        assert_eq!(g.coeffs(), expected.as_slice());
        assert_eq!(g.round_trip_defect(&f).unwrap(), None);
    }

    #[test]
    fn arcsin_from_sine() {
        let sin = series(&[(0, 1), (1, 1), (0, 1), (-1, 6), (0, 1), (1, 120)]);
        let g = invert_newton(&sin, 5).unwrap();
        assert_eq!(
            g.coeffs(),
            &[q(0, 1), q(1, 1), q(0, 1), q(1, 6), q(0, 1), q(3, 40)]
        );
        assert_eq!(g.round_trip_defect(&sin).unwrap(), None);
    }

    #[test]
    fn identity_every_order() {
        for n in 1..8 {
            let mut coeffs = vec![(0, 1), (1, 1)];
            coeffs.resize(n + 1, (0, 1));
            let f = series(&coeffs);
            let g = invert_newton(&f, n).unwrap();
            assert_eq!(g.coeffs(), f.coeffs());
        }
    }
}
