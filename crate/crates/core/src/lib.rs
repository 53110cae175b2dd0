//! Truncated power series and series reversion.
//!
//! The pipeline is: [`parser::parse`] an expression in `z`, expand it with
//! [`taylor::taylor_series`] about a rational center, then invert the series
//! with one of the backends in [`inversion`]. Exact rational arithmetic is
//! the default, so the backends can be checked against one another for
//! exact equality.

pub mod cli;
pub mod expr;
pub mod inversion;
pub mod numeric;
pub mod parser;
pub mod series;
pub mod taylor;

pub use expr::Expression;
pub use inversion::{
    check_first_derivative, compare_methods, estimate_radius, invert_lagrange, invert_new_formula,
    invert_newton, ComparisonReport, InversionError, InversionResult, MethodKind,
};
pub use numeric::{Coefficient, NumericError, Rational};
pub use parser::{parse, ParseError};
pub use series::{SeriesError, TruncatedSeries};
pub use taylor::{taylor_series, Mode, TaylorError};
