//! Expression trees in one variable `z`, and a printer whose output parses
//! back to the same tree.

use std::fmt;

use crate::numeric::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Expression {
    Const(Rational),
    Var,
    Neg(Box<Expression>),
    Add(Box<Expression>, Box<Expression>),
    Sub(Box<Expression>, Box<Expression>),
    Mul(Box<Expression>, Box<Expression>),
    Div(Box<Expression>, Box<Expression>),
    IntPow(Box<Expression>, i32),
    Exp(Box<Expression>),
    Log(Box<Expression>),
    Sin(Box<Expression>),
    Cos(Box<Expression>),
    Tan(Box<Expression>),
    Sqrt(Box<Expression>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Function {
    Exp,
    Log,
    Sin,
    Cos,
    Tan,
    Sqrt,
}

impl Function {
    pub const ALL: [Function; 6] = [
        Function::Exp,
        Function::Log,
        Function::Sin,
        Function::Cos,
        Function::Tan,
        Function::Sqrt,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Function::Exp => "exp",
            Function::Log => "log",
            Function::Sin => "sin",
            Function::Cos => "cos",
            Function::Tan => "tan",
            Function::Sqrt => "sqrt",
        }
    }

    pub fn from_name(name: &str) -> Option<Function> {
        Function::ALL.into_iter().find(|f| f.name() == name)
    }

    pub fn apply(self, arg: Expression) -> Expression {
        let arg = Box::new(arg);
        match self {
            Function::Exp => Expression::Exp(arg),
            Function::Log => Expression::Log(arg),
            Function::Sin => Expression::Sin(arg),
            Function::Cos => Expression::Cos(arg),
            Function::Tan => Expression::Tan(arg),
            Function::Sqrt => Expression::Sqrt(arg),
        }
    }
}

impl Expression {
    pub fn constant(value: impl Into<Rational>) -> Self {
        Expression::Const(value.into())
    }

    #[allow(clippy::should_implement_trait)]
    pub fn add(self, rhs: Expression) -> Self {
        Expression::Add(Box::new(self), Box::new(rhs))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn sub(self, rhs: Expression) -> Self {
        Expression::Sub(Box::new(self), Box::new(rhs))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn mul(self, rhs: Expression) -> Self {
        Expression::Mul(Box::new(self), Box::new(rhs))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn div(self, rhs: Expression) -> Self {
        Expression::Div(Box::new(self), Box::new(rhs))
    }

    pub fn powi(self, k: i32) -> Self {
        Expression::IntPow(Box::new(self), k)
    }

    /// The function head and argument of a call node.
    pub fn as_call(&self) -> Option<(Function, &Expression)> {
        match self {
            Expression::Exp(a) => Some((Function::Exp, a)),
            Expression::Log(a) => Some((Function::Log, a)),
            Expression::Sin(a) => Some((Function::Sin, a)),
            Expression::Cos(a) => Some((Function::Cos, a)),
            Expression::Tan(a) => Some((Function::Tan, a)),
            Expression::Sqrt(a) => Some((Function::Sqrt, a)),
            _ => None,
        }
    }
}

// Binding strength of each printed form; an operand is parenthesized when it
// binds more loosely than its slot requires.
const SUM: u8 = 1;
const PRODUCT: u8 = 2;
const FACTOR: u8 = 3;
const ATOM: u8 = 4;

fn level(e: &Expression) -> u8 {
    match e {
        Expression::Add(..) | Expression::Sub(..) => SUM,
        Expression::Mul(..) | Expression::Div(..) => PRODUCT,
        Expression::Neg(_) | Expression::IntPow(..) => FACTOR,
        _ => ATOM,
    }
}

/// Non-integer and negative literals are always printed in parentheses, so
/// they can never fuse with a neighbouring `/` or unary minus on re-parse.
fn write_const(f: &mut fmt::Formatter<'_>, c: &Rational) -> fmt::Result {
    if c.is_integer() && !c.is_negative() {
        write!(f, "{c}")
    } else {
        write!(f, "({c})")
    }
}

fn write_at(f: &mut fmt::Formatter<'_>, e: &Expression, min: u8) -> fmt::Result {
    if level(e) < min {
        write!(f, "(")?;
        write_expr(f, e)?;
        write!(f, ")")
    } else {
        write_expr(f, e)
    }
}

fn write_expr(f: &mut fmt::Formatter<'_>, e: &Expression) -> fmt::Result {
    match e {
        Expression::Const(c) => write_const(f, c),
        Expression::Var => write!(f, "z"),
        Expression::Neg(a) => {
            write!(f, "-")?;
            match a.as_ref() {
                // `-3` would read back as the literal -3
                Expression::Const(c) if c.is_integer() && !c.is_negative() => write!(f, "({c})"),
                _ => write_at(f, a, FACTOR),
            }
        }
        Expression::Add(a, b) => {
            write_at(f, a, SUM)?;
            write!(f, " + ")?;
            write_at(f, b, PRODUCT)
        }
        Expression::Sub(a, b) => {
            write_at(f, a, SUM)?;
            write!(f, " - ")?;
            write_at(f, b, PRODUCT)
        }
        Expression::Mul(a, b) => {
            write_at(f, a, PRODUCT)?;
            write!(f, "*")?;
            write_at(f, b, FACTOR)
        }
        Expression::Div(a, b) => {
            match a.as_ref() {
                // `1/2` would read back as a fraction literal
                Expression::Const(c) if c.is_integer() && !c.is_negative() => write!(f, "({c})")?,
                _ => write_at(f, a, PRODUCT)?,
            }
            write!(f, "/")?;
            write_at(f, b, FACTOR)
        }
        Expression::IntPow(a, k) => {
            write_at(f, a, ATOM)?;
            write!(f, "^{k}")
        }
        call => {
            let (func, arg) = call.as_call().expect("remaining variants are calls");
            write!(f, "{}(", func.name())?;
            write_expr(f, arg)?;
            write!(f, ")")
        }
    }
}

impl fmt::Display for Expression {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_expr(f, self)
    }
}
