//! Taylor-mode expansion of an [`Expression`] about a rational center.
//!
//! Series are propagated bottom-up through the tree with the usual
//! first-order recurrences, so every node costs `O(K^2)` coefficient
//! operations. In exact mode an elementary function is only expanded when
//! its value at the center is rational: `exp`, `sin`, `cos` and `tan` need
//! an argument vanishing at the center, `log` needs it equal to one, and
//! `sqrt` needs the square of a rational.

use thiserror::Error;

use crate::expr::Expression;
use crate::numeric::{Coefficient, NumericError, Rational};
use crate::series::{SeriesError, TruncatedSeries};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Mode {
    #[default]
    Exact,
    Float,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum TaylorError {
    #[error("{what} is singular at the expansion center")]
    PoleAtCenter { what: String },
    #[error("{function} of {argument} is irrational; expand at another center or use float mode")]
    NonRationalExpansion {
        function: &'static str,
        argument: String,
    },
    #[error("{function} of {argument} is not real")]
    OutsideRealDomain {
        function: &'static str,
        argument: String,
    },
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error(transparent)]
    Numeric(#[from] NumericError),
}

/// Taylor coefficients of `f` about `center` up to `order`.
pub fn taylor_series(
    f: &Expression,
    center: &Rational,
    order: usize,
    mode: Mode,
) -> Result<TruncatedSeries, TaylorError> {
    let center = match mode {
        Mode::Exact => Coefficient::Rational(center.clone()),
        Mode::Float => Coefficient::float(center.to_f64()?)?,
    };
    Expander { center, order }.expand(f)
}

struct Expander {
    center: Coefficient,
    order: usize,
}

impl Expander {
    fn constant(&self, value: Coefficient) -> Result<TruncatedSeries, TaylorError> {
        Ok(TruncatedSeries::constant(
            self.center.clone(),
            value,
            self.order,
        )?)
    }

    fn lift(&self, r: &Rational) -> Result<Coefficient, TaylorError> {
        Ok(match self.center {
            Coefficient::Rational(_) => Coefficient::Rational(r.clone()),
            Coefficient::Float(_) => Coefficient::float(r.to_f64()?)?,
        })
    }

    fn expand(&self, f: &Expression) -> Result<TruncatedSeries, TaylorError> {
        use Expression as E;
        match f {
            E::Const(c) => self.constant(self.lift(c)?),
            E::Var => Ok(TruncatedSeries::variable(self.center.clone(), self.order)),
            E::Neg(a) => Ok(self.expand(a)?.neg()),
            E::Add(a, b) => Ok(self.expand(a)?.add(&self.expand(b)?)?),
            E::Sub(a, b) => Ok(self.expand(a)?.sub(&self.expand(b)?)?),
            E::Mul(a, b) => Ok(self.expand(a)?.mul(&self.expand(b)?)?),
            E::Div(a, b) => {
                let denominator = self.expand(b)?;
                let recip = reciprocal_or_pole(&denominator, || format!("1/({b})"))?;
                Ok(self.expand(a)?.mul(&recip)?)
            }
            E::IntPow(a, k) => {
                let base = self.expand(a)?;
                if *k >= 0 {
                    Ok(base.powi(k.unsigned_abs())?)
                } else {
                    let recip = reciprocal_or_pole(&base, || format!("({a})^{k}"))?;
                    Ok(recip.powi(k.unsigned_abs())?)
                }
            }
            E::Exp(a) => exp_series(&self.expand(a)?),
            E::Log(a) => log_series(&self.expand(a)?),
            E::Sin(a) => Ok(sin_cos_series(&self.expand(a)?)?.0),
            E::Cos(a) => Ok(sin_cos_series(&self.expand(a)?)?.1),
            E::Tan(a) => {
                let (sin, cos) = sin_cos_series(&self.expand(a)?)?;
                let sec = reciprocal_or_pole(&cos, || format!("tan({a})"))?;
                Ok(sin.mul(&sec)?)
            }
            E::Sqrt(a) => sqrt_series(&self.expand(a)?),
        }
    }
}

fn reciprocal_or_pole(
    s: &TruncatedSeries,
    what: impl FnOnce() -> String,
) -> Result<TruncatedSeries, TaylorError> {
    s.reciprocal().map_err(|e| match e {
        SeriesError::ZeroConstantTerm => TaylorError::PoleAtCenter { what: what() },
        other => other.into(),
    })
}

/// `(1/k) * sum_{j=1..k} j * a_j * b_{k-j}`, the convolution shared by the
/// exp and sin/cos recurrences.
fn weighted_convolution(
    a: &[Coefficient],
    b: &[Coefficient],
    k: usize,
) -> Result<Coefficient, NumericError> {
    let mut acc = a[0].zero_like();
    for j in 1..=k {
        if a[j].is_zero() {
            continue;
        }
        acc = acc.add(&a[j].scale(j as i64)?.mul(&b[k - j])?)?;
    }
    acc.div(&acc.int_like(k as i64))
}

fn with_coeffs(
    like: &TruncatedSeries,
    coeffs: Vec<Coefficient>,
) -> Result<TruncatedSeries, TaylorError> {
    Ok(TruncatedSeries::new(like.center().clone(), coeffs)?)
}

fn exp_series(arg: &TruncatedSeries) -> Result<TruncatedSeries, TaylorError> {
    let a = arg.coeffs();
    let s0 = match &a[0] {
        Coefficient::Rational(r) if r.is_zero() => a[0].one_like(),
        Coefficient::Rational(r) => {
            return Err(TaylorError::NonRationalExpansion {
                function: "exp",
                argument: r.to_string(),
            })
        }
        Coefficient::Float(x) => Coefficient::float(x.exp())?,
    };
    let mut s = vec![s0];
    for k in 1..a.len() {
        let next = weighted_convolution(a, &s, k)?;
        s.push(next);
    }
    with_coeffs(arg, s)
}

fn sin_cos_series(
    arg: &TruncatedSeries,
) -> Result<(TruncatedSeries, TruncatedSeries), TaylorError> {
    let a = arg.coeffs();
    let (s0, c0) = match &a[0] {
        Coefficient::Rational(r) if r.is_zero() => (a[0].zero_like(), a[0].one_like()),
        Coefficient::Rational(r) => {
            return Err(TaylorError::NonRationalExpansion {
                function: "sin/cos",
                argument: r.to_string(),
            })
        }
        Coefficient::Float(x) => (Coefficient::float(x.sin())?, Coefficient::float(x.cos())?),
    };
    let mut s = vec![s0];
    let mut c = vec![c0];
    for k in 1..a.len() {
        let sk = weighted_convolution(a, &c, k)?;
        let ck = weighted_convolution(a, &s, k)?.neg();
        s.push(sk);
        c.push(ck);
    }
    Ok((with_coeffs(arg, s)?, with_coeffs(arg, c)?))
}

fn log_series(arg: &TruncatedSeries) -> Result<TruncatedSeries, TaylorError> {
    let a = arg.coeffs();
    let a0 = &a[0];
    if a0.is_zero() {
        return Err(TaylorError::PoleAtCenter { what: "log".into() });
    }
    let s0 = match a0 {
        Coefficient::Rational(r) if r.is_negative() => {
            return Err(TaylorError::OutsideRealDomain {
                function: "log",
                argument: r.to_string(),
            })
        }
        Coefficient::Rational(r) if r.is_one() => a0.zero_like(),
        Coefficient::Rational(r) => {
            return Err(TaylorError::NonRationalExpansion {
                function: "log",
                argument: r.to_string(),
            })
        }
        Coefficient::Float(x) if *x < 0.0 => {
            return Err(TaylorError::OutsideRealDomain {
                function: "log",
                argument: x.to_string(),
            })
        }
        Coefficient::Float(x) => Coefficient::float(x.ln())?,
    };
    // a * s' = a'  =>  k a0 s_k = k a_k - sum_{j=1..k-1} (k - j) a_j s_{k-j}
    let mut s = vec![s0];
    for k in 1..a.len() {
        let mut acc = a[k].scale(k as i64)?;
        for j in 1..k {
            if a[j].is_zero() {
                continue;
            }
            acc = acc.sub(&a[j].mul(&s[k - j])?.scale((k - j) as i64)?)?;
        }
        s.push(acc.div(&a0.scale(k as i64)?)?);
    }
    with_coeffs(arg, s)
}

fn sqrt_series(arg: &TruncatedSeries) -> Result<TruncatedSeries, TaylorError> {
    let a = arg.coeffs();
    let a0 = &a[0];
    if a0.is_zero() {
        return Err(TaylorError::PoleAtCenter {
            what: "sqrt".into(),
        });
    }
    let s0 = match a0 {
        Coefficient::Rational(r) if r.is_negative() => {
            return Err(TaylorError::OutsideRealDomain {
                function: "sqrt",
                argument: r.to_string(),
            })
        }
        Coefficient::Rational(r) => match r.sqrt_exact() {
            Some(root) => Coefficient::Rational(root),
            None => {
                return Err(TaylorError::NonRationalExpansion {
                    function: "sqrt",
                    argument: r.to_string(),
                })
            }
        },
        Coefficient::Float(x) if *x < 0.0 => {
            return Err(TaylorError::OutsideRealDomain {
                function: "sqrt",
                argument: x.to_string(),
            })
        }
        Coefficient::Float(x) => Coefficient::float(x.sqrt())?,
    };
    // s^2 = a  =>  2 s0 s_k = a_k - sum_{j=1..k-1} s_j s_{k-j}
    let two_s0 = s0.scale(2)?;
    let mut s = vec![s0];
    for k in 1..a.len() {
        let mut acc = a[k].clone();
        for j in 1..k {
            acc = acc.sub(&s[j].mul(&s[k - j])?)?;
        }
        s.push(acc.div(&two_s0)?);
    }
    with_coeffs(arg, s)
}
