#![allow(dead_code)]

//! Test-only oracles that do not share code paths with the library's
//! inversion backends.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use revseries::{parse, taylor_series, Coefficient, Mode, Rational, TruncatedSeries};

pub fn q(n: i64, d: i64) -> Rational {
    Rational::new(n, d).unwrap()
}

pub fn parse_q(s: &str) -> Rational {
    s.parse().unwrap()
}

pub fn qs(items: &[&str]) -> Vec<Rational> {
    items.iter().map(|s| parse_q(s)).collect()
}

pub fn expand(expr: &str, center: i64, order: usize) -> TruncatedSeries {
    taylor_series(
        &parse(expr).unwrap(),
        &Rational::from(center),
        order,
        Mode::Exact,
    )
    .unwrap()
}

pub fn exact(coeffs: &[Coefficient]) -> Vec<Rational> {
    coeffs
        .iter()
        .map(|c| c.as_rational().expect("exact coefficient").clone())
        .collect()
}

fn to_big(r: &Rational) -> BigRational {
    BigRational::new(r.numer().clone(), r.denom().clone())
}

fn from_big(r: &BigRational) -> Rational {
    Rational::new(r.numer().clone(), r.denom().clone()).unwrap()
}

fn truncated_mul(a: &[BigRational], b: &[BigRational], len: usize) -> Vec<BigRational> {
    let mut out = vec![BigRational::zero(); len];
    for (i, x) in a.iter().enumerate().take(len) {
        for (j, y) in b.iter().enumerate().take(len - i) {
            out[i + j] += x * y;
        }
    }
    out
}

/// Reversion by undetermined coefficients: with `phi(w) = sum_{k>=1} c_k w^k`,
/// choose `b_n` so that the `w^n` coefficient of `phi(b_1 w + ... + b_n w^n)`
/// vanishes for `n >= 2`. Returns `[z0, b_1, ..., b_n]`.
pub fn revert_by_undetermined_coefficients(
    f: &[Rational],
    z0: &Rational,
    n: usize,
) -> Vec<Rational> {
    let c: Vec<BigRational> = f.iter().map(to_big).collect();
    let len = n + 1;
    let mut b = vec![BigRational::zero(); len];
    b[1] = BigRational::one() / &c[1];
    for m in 2..=n {
        // coefficient of w^m in sum_k c_k g^k with b_m still zero
        let mut power = b.clone();
        let mut acc = BigRational::zero();
        for (k, ck) in c.iter().enumerate().skip(1).take(m) {
            if k > 1 {
                power = truncated_mul(&power, &b, len);
            }
            acc += ck * &power[m];
        }
        b[m] = -acc / &c[1];
    }
    let mut out = vec![z0.clone()];
    out.extend(b[1..].iter().map(from_big));
    out
}

/// `(-n)^(n-1) / n!`, the inverse of `z e^z`.
pub fn lambert_w_coeffs(n: usize) -> Vec<Rational> {
    let mut out = vec![Rational::zero()];
    let mut fact = BigInt::one();
    for k in 1..=n {
        fact *= k;
        let num = num_traits::pow(BigInt::from(-(k as i64)), k - 1);
        out.push(Rational::new(num, fact.clone()).unwrap());
    }
    out
}

/// `[0, 1, -1, 2, -5, 14, ...]`: signed Catalan numbers, the inverse of `z + z^2`.
pub fn signed_catalan_coeffs(n: usize) -> Vec<Rational> {
    let mut out = vec![Rational::zero()];
    let mut catalan = BigInt::one();
    for k in 1..=n {
        let sign = if k % 2 == 1 { 1 } else { -1 };
        out.push(Rational::from(catalan.clone() * sign));
        // C_k = C_{k-1} * 2(2k-1)/(k+1)
        let j = k as i64;
        catalan = catalan * BigInt::from(2 * (2 * j - 1)) / BigInt::from(j + 1);
    }
    out
}

/// `(-1)^(n+1)/n`: log(1 + u).
pub fn log1p_coeffs(n: usize) -> Vec<Rational> {
    let mut out = vec![Rational::zero()];
    for k in 1..=n as i64 {
        out.push(q(if k % 2 == 1 { 1 } else { -1 }, k));
    }
    out
}

/// Inverse of each corpus function to order 12, as produced by a computer
/// algebra system from closed forms (or, for `z + z^3`, from the
/// Fuss-Catalan numbers `binom(3k, k)/(2k+1)`).
pub fn frozen_inverse(name: &str) -> Vec<Rational> {
    match name {
        "z+z^2" => qs(&[
            "0", "1", "-1", "2", "-5", "14", "-42", "132", "-429", "1430", "-4862", "16796",
            "-58786",
        ]),
        "z-z^2" => qs(&[
            "0", "1", "1", "2", "5", "14", "42", "132", "429", "1430", "4862", "16796", "58786",
        ]),
        "exp(z)-1" => qs(&[
            "0", "1", "-1/2", "1/3", "-1/4", "1/5", "-1/6", "1/7", "-1/8", "1/9", "-1/10", "1/11",
            "-1/12",
        ]),
        "sin(z)" => qs(&[
            "0", "1", "0", "1/6", "0", "3/40", "0", "5/112", "0", "35/1152", "0", "63/2816", "0",
        ]),
        "tan(z)" => qs(&[
            "0", "1", "0", "-1/3", "0", "1/5", "0", "-1/7", "0", "1/9", "0", "-1/11", "0",
        ]),
        "z*exp(z)" => qs(&[
            "0",
            "1",
            "-1",
            "3/2",
            "-8/3",
            "125/24",
            "-54/5",
            "16807/720",
            "-16384/315",
            "531441/4480",
            "-156250/567",
            "2357947691/3628800",
            "-2985984/1925",
        ]),
        "z/(1-z)" => qs(&[
            "0", "1", "-1", "1", "-1", "1", "-1", "1", "-1", "1", "-1", "1", "-1",
        ]),
        "z+z^3" => qs(&[
            "0", "1", "0", "-1", "0", "3", "0", "-12", "0", "55", "0", "-273", "0",
        ]),
        "2*z+3" => qs(&[
            "0", "1/2", "0", "0", "0", "0", "0", "0", "0", "0", "0", "0", "0",
        ]),
        "z^2-2*z" => qs(&[
            "3",
            "1/4",
            "-1/64",
            "1/512",
            "-5/16384",
            "7/131072",
            "-21/2097152",
            "33/16777216",
            "-429/1073741824",
            "715/8589934592",
            "-2431/137438953472",
            "4199/1099511627776",
            "-29393/35184372088832",
        ]),
        other => panic!("no frozen inverse for {other}"),
    }
}

/// `(expression, center)` pairs with rational expansions and `f'(z0) != 0`.
pub const CORPUS: [(&str, i64); 10] = [
    ("z+z^2", 0),
    ("z-z^2", 0),
    ("exp(z)-1", 0),
    ("sin(z)", 0),
    ("tan(z)", 0),
    ("z*exp(z)", 0),
    ("z/(1-z)", 0),
    ("z+z^3", 0),
    ("2*z+3", 0),
    ("z^2-2*z", 3),
];
