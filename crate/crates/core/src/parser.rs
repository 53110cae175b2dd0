//! Recursive-descent parser for expressions in `z`.
//!
//! ```text
//! expr   := term (('+'|'-') term)*
//! term   := factor (('*'|'/') factor)*
//! factor := '-' factor | base ('^' integer)?
//! base   := number | 'z' | func '(' expr ')' | '(' expr ')'
//! number := integer | integer '/' positive-integer | decimal
//! ```
//!
//! A fraction literal `p/q` is only recognized in the first factor of a
//! term and never when `q` is followed by `^`, so `z/2/3` stays
//! left-associative and `3/2^2` means `3/(2^2)`. A unary minus directly in
//! front of a literal folds into the constant (`-3` is `Const(-3)`), while
//! `-(3)` stays a negation. Positions are zero-based character offsets.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use thiserror::Error;

use crate::expr::{Expression, Function};
use crate::numeric::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at position {position}: {message}")]
    SyntaxError { position: usize, message: String },
    #[error("unknown function {name:?} at position {position}")]
    UnknownFunction { name: String, position: usize },
    #[error(
        "exponent at position {position} must be an integer literal (use sqrt for square roots)"
    )]
    NonIntegerExponent { position: usize },
}

impl ParseError {
    pub fn position(&self) -> usize {
        match self {
            ParseError::SyntaxError { position, .. }
            | ParseError::UnknownFunction { position, .. }
            | ParseError::NonIntegerExponent { position } => *position,
        }
    }

    fn syntax(position: usize, message: impl Into<String>) -> Self {
        ParseError::SyntaxError {
            position,
            message: message.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Integer(BigInt),
    Decimal(Rational),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    End,
}

impl Token {
    fn describe(&self) -> String {
        match self {
            Token::Integer(n) => format!("number {n}"),
            Token::Decimal(r) => format!("number {r}"),
            Token::Ident(name) => format!("identifier {name:?}"),
            Token::Plus => "'+'".into(),
            Token::Minus => "'-'".into(),
            Token::Star => "'*'".into(),
            Token::Slash => "'/'".into(),
            Token::Caret => "'^'".into(),
            Token::LParen => "'('".into(),
            Token::RParen => "')'".into(),
            Token::End => "end of input".into(),
        }
    }
}

fn tokenize(text: &str) -> Result<Vec<(Token, usize)>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut tokens = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let start = i;
        let single = match c {
            '+' => Some(Token::Plus),
            '-' => Some(Token::Minus),
            '*' => Some(Token::Star),
            '/' => Some(Token::Slash),
            '^' => Some(Token::Caret),
            '(' => Some(Token::LParen),
            ')' => Some(Token::RParen),
            _ => None,
        };
        if let Some(tok) = single {
            tokens.push((tok, start));
            i += 1;
        } else if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() || c == '.' {
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            if i < chars.len() && chars[i] == '.' {
                let dot = i;
                i += 1;
                let frac_start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                if i == frac_start || dot == start {
                    return Err(ParseError::syntax(dot, "malformed decimal literal"));
                }
                let literal: String = chars[start..i].iter().collect();
                let value = literal
                    .parse::<Rational>()
                    .map_err(|_| ParseError::syntax(start, "malformed decimal literal"))?;
                tokens.push((Token::Decimal(value), start));
            } else {
                let literal: String = chars[start..i].iter().collect();
                let value = literal.parse::<BigInt>().expect("digits only");
                tokens.push((Token::Integer(value), start));
            }
        } else if c.is_alphabetic() || c == '_' {
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            tokens.push((Token::Ident(chars[start..i].iter().collect()), start));
        } else {
            return Err(ParseError::syntax(
                start,
                format!("unexpected character {c:?}"),
            ));
        }
    }
    tokens.push((Token::End, chars.len()));
    Ok(tokens)
}

struct Parser {
    tokens: Vec<(Token, usize)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Token {
        &self.tokens[self.pos].0
    }

    fn peek_at(&self, ahead: usize) -> &Token {
        let i = (self.pos + ahead).min(self.tokens.len() - 1);
        &self.tokens[i].0
    }

    fn position(&self) -> usize {
        self.tokens[self.pos].1
    }

    fn advance(&mut self) -> Token {
        let tok = self.tokens[self.pos].0.clone();
        if self.pos + 1 < self.tokens.len() {
            self.pos += 1;
        }
        tok
    }

    fn unexpected(&self, expected: &str) -> ParseError {
        ParseError::syntax(
            self.position(),
            format!("expected {expected}, found {}", self.peek().describe()),
        )
    }

    fn expect(&mut self, tok: Token, what: &str) -> Result<(), ParseError> {
        if *self.peek() == tok {
            self.advance();
            Ok(())
        } else {
            Err(self.unexpected(what))
        }
    }

    fn expr(&mut self) -> Result<Expression, ParseError> {
        let mut lhs = self.factor_chain()?;
        loop {
            match self.peek() {
                Token::Plus => {
                    self.advance();
                    lhs = lhs.add(self.factor_chain()?);
                }
                Token::Minus => {
                    self.advance();
                    lhs = lhs.sub(self.factor_chain()?);
                }
                _ => return Ok(lhs),
            }
        }
    }

    /// `term` in the grammar.
    fn factor_chain(&mut self) -> Result<Expression, ParseError> {
        let mut lhs = self.factor(true)?;
        loop {
            match self.peek() {
                Token::Star => {
                    self.advance();
                    lhs = lhs.mul(self.factor(false)?);
                }
                Token::Slash => {
                    self.advance();
                    lhs = lhs.div(self.factor(false)?);
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn factor(&mut self, term_start: bool) -> Result<Expression, ParseError> {
        if *self.peek() == Token::Minus {
            self.advance();
            if matches!(self.peek(), Token::Integer(_) | Token::Decimal(_)) {
                let (literal, width) = self.literal_ahead(term_start);
                if *self.peek_at(width) != Token::Caret {
                    for _ in 0..width {
                        self.advance();
                    }
                    return Ok(Expression::Const(-literal));
                }
            }
            let inner = self.factor(term_start)?;
            return Ok(Expression::Neg(Box::new(inner)));
        }
        let base = self.base(term_start)?;
        if *self.peek() == Token::Caret {
            self.advance();
            let k = self.exponent()?;
            return Ok(base.powi(k));
        }
        Ok(base)
    }

    /// Looks at the literal starting at the current token without consuming
    /// it; returns its value and how many tokens it spans.
    fn literal_ahead(&self, allow_fraction: bool) -> (Rational, usize) {
        match self.peek() {
            Token::Integer(p) => {
                if allow_fraction {
                    if let (Token::Slash, Token::Integer(q)) = (self.peek_at(1), self.peek_at(2)) {
                        let positive = q > &BigInt::from(0);
                        if positive && *self.peek_at(3) != Token::Caret {
                            let value = Rational::new(p.clone(), q.clone()).expect("q > 0");
                            return (value, 3);
                        }
                    }
                }
                (Rational::from(p.clone()), 1)
            }
            Token::Decimal(r) => (r.clone(), 1),
            _ => unreachable!("caller checked for a literal"),
        }
    }

    fn exponent(&mut self) -> Result<i32, ParseError> {
        let negative = if *self.peek() == Token::Minus {
            self.advance();
            true
        } else {
            false
        };
        let at = self.position();
        match self.peek().clone() {
            Token::Integer(n) => {
                self.advance();
                let n = if negative { -n } else { n };
                n.to_i32().ok_or_else(|| {
                    ParseError::syntax(at, "exponent does not fit in a 32-bit integer")
                })
            }
            Token::Decimal(_) | Token::LParen | Token::Ident(_) => {
                Err(ParseError::NonIntegerExponent { position: at })
            }
            _ => Err(self.unexpected("an integer exponent")),
        }
    }

    fn base(&mut self, term_start: bool) -> Result<Expression, ParseError> {
        let at = self.position();
        match self.peek().clone() {
            Token::Integer(_) | Token::Decimal(_) => {
                let (value, width) = self.literal_ahead(term_start);
                for _ in 0..width {
                    self.advance();
                }
                Ok(Expression::Const(value))
            }
            Token::LParen => {
                self.advance();
                let inner = self.expr()?;
                self.expect(Token::RParen, "')'")?;
                Ok(inner)
            }
            Token::Ident(name) => {
                self.advance();
                if name == "z" {
                    return Ok(Expression::Var);
                }
                if *self.peek() != Token::LParen {
                    return match Function::from_name(&name) {
                        Some(_) => Err(self.unexpected("'('")),
                        None => Err(ParseError::syntax(
                            at,
                            format!("unknown identifier {name:?}; the variable is z"),
                        )),
                    };
                }
                let func = Function::from_name(&name).ok_or(ParseError::UnknownFunction {
                    name: name.clone(),
                    position: at,
                })?;
                self.advance();
                let arg = self.expr()?;
                self.expect(Token::RParen, "')'")?;
                Ok(func.apply(arg))
            }
            _ => Err(self.unexpected("a number, z, a function call or '('")),
        }
    }
}

/// Parses `text` into an [`Expression`].
pub fn parse(text: &str) -> Result<Expression, ParseError> {
    let mut parser = Parser {
        tokens: tokenize(text)?,
        pos: 0,
    };
    let expr = parser.expr()?;
    if *parser.peek() != Token::End {
        return Err(parser.unexpected("an operator or end of input"));
    }
    Ok(expr)
}
