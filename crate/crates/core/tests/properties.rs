mod common;

use std::collections::BTreeSet;

use proptest::prelude::*;

use common::{exact, expand};
use revseries::expr::Function;
use revseries::{
    compare_methods, parse, taylor_series, Coefficient, Expression, MethodKind, Mode, Rational,
    TruncatedSeries,
};

fn rational() -> impl Strategy<Value = Rational> {
    (-1000i64..1000, 1i64..200).prop_map(|(n, d)| Rational::new(n, d).unwrap())
}

fn nonzero_rational() -> impl Strategy<Value = Rational> {
    rational().prop_filter("nonzero", |r| !r.is_zero())
}

fn exact_series(order: usize) -> impl Strategy<Value = TruncatedSeries> {
    prop::collection::vec(rational(), order + 1).prop_map(|c| {
        TruncatedSeries::new(
            Coefficient::Rational(Rational::zero()),
            c.into_iter().map(Coefficient::Rational).collect(),
        )
        .unwrap()
    })
}

fn expression() -> impl Strategy<Value = Expression> {
    let leaf = prop_oneof![
        Just(Expression::Var),
        rational().prop_map(Expression::Const),
    ];
    leaf.prop_recursive(4, 24, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(|a| Expression::Neg(Box::new(a))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| a.add(b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| a.sub(b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| a.mul(b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| a.div(b)),
            (inner.clone(), -4i32..5).prop_map(|(a, k)| a.powi(k)),
            (inner, 0..Function::ALL.len()).prop_map(|(a, i)| Function::ALL[i].apply(a)),
        ]
    })
}

proptest! {
    #![proptest_config(ProptestConfig {
        failure_persistence: None,
        ..ProptestConfig::with_cases(64)
    })]

    #[test]
    fn rational_field_axioms(a in rational(), b in rational(), c in rational()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a - &a, Rational::zero());
        if !a.is_zero() {
            prop_assert!((&a * &a.recip().unwrap()).is_one());
        }
    }

    #[test]
    fn rationals_are_canonical(n in -10_000i64..10_000, d in 1i64..10_000, k in 1i64..50) {
        let r = Rational::new(n * k, d * k).unwrap();
        prop_assert_eq!(&r, &Rational::new(n, d).unwrap());
        prop_assert!(num_integer::Integer::gcd(r.numer(), r.denom()) == 1.into());
        prop_assert!(r.denom() > &0.into());
        prop_assert_eq!(r.to_fraction_string().parse::<Rational>().unwrap(), r);
    }

    #[test]
    fn small_rationals_convert_like_one_division(n in -(1i64 << 53) + 1..(1i64 << 53), d in 1i64..(1i64 << 53)) {
        let r = Rational::new(n, d).unwrap();
        let (rn, rd): (i64, i64) = (r.numer().try_into().unwrap(), r.denom().try_into().unwrap());
        prop_assert_eq!(r.to_f64().unwrap(), rn as f64 / rd as f64);
    }

    #[test]
    fn dot_matches_folded_sum(pairs in prop::collection::vec((rational(), rational()), 0..12)) {
        let folded = pairs.iter().fold(Rational::zero(), |acc, (a, b)| acc + a * b);
        prop_assert_eq!(Rational::dot(pairs.iter().map(|(a, b)| (a, b))), folded);
    }

    #[test]
    fn series_product_is_commutative_and_associative(
        a in exact_series(6), b in exact_series(6), c in exact_series(4)
    ) {
        prop_assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
        let left = a.mul(&b).unwrap().mul(&c).unwrap();
        let right = a.mul(&b.mul(&c).unwrap()).unwrap();
        prop_assert_eq!(left.order(), 4);
        prop_assert_eq!(left, right);
    }

    #[test]
    fn reciprocal_is_an_inverse(a in exact_series(7), c0 in nonzero_rational()) {
        let mut coeffs = a.coeffs().to_vec();
        coeffs[0] = Coefficient::Rational(c0);
        let a = TruncatedSeries::new(a.center().clone(), coeffs).unwrap();
        let one = TruncatedSeries::constant(a.center().clone(), a.center().one_like(), 7).unwrap();
        prop_assert_eq!(a.mul(&a.reciprocal().unwrap()).unwrap(), one);
    }

    #[test]
    fn derivative_undoes_integration(coeffs in prop::collection::vec(rational(), 1..10)) {
        // antiderivative with zero constant: c_k / (k + 1) at index k + 1
        let mut integrated = vec![Coefficient::Rational(Rational::zero())];
        for (k, c) in coeffs.iter().enumerate() {
            integrated.push(Coefficient::Rational(c.checked_div(&Rational::from(k as i64 + 1)).unwrap()));
        }
        let zero = Coefficient::Rational(Rational::zero());
        let s = TruncatedSeries::new(zero.clone(), integrated).unwrap();
        let d = s.derivative().unwrap();
        prop_assert_eq!(d.order(), s.order() - 1);
        prop_assert_eq!(exact(d.coeffs()), coeffs);
    }

    #[test]
    fn truncation_commutes_with_expansion(center in -3i64..4, low in 1usize..8, extra in 0usize..6) {
        for text in ["exp(z)*sin(z)", "1/(2 + z)", "tan(z) + z^3", "cos(z)^2"] {
            let f = parse(text).unwrap();
            let c = Rational::from(center);
            let high = taylor_series(&f, &c, low + extra, Mode::Exact);
            let short = taylor_series(&f, &c, low, Mode::Exact);
            match (high, short) {
                (Ok(high), Ok(short)) => prop_assert_eq!(high.truncate(low), short),
                (Err(_), Err(_)) => {}
                (high, short) => prop_assert!(false, "{text}: {high:?} vs {short:?}"),
            }
        }
    }

    #[test]
    fn parse_print_round_trip(e in expression()) {
        let printed = e.to_string();
        let back = parse(&printed);
        prop_assert_eq!(back.as_ref(), Ok(&e), "printed as {:?}", printed);
    }

    #[test]
    fn backends_agree_on_random_polynomials(
        c1 in nonzero_rational(), rest in prop::collection::vec(rational(), 0..6), c0 in rational()
    ) {
        let mut coeffs = vec![Coefficient::Rational(c0), Coefficient::Rational(c1)];
        coeffs.extend(rest.into_iter().map(Coefficient::Rational));
        let n = coeffs.len() - 1;
        let f = TruncatedSeries::new(Coefficient::Rational(Rational::zero()), coeffs).unwrap();
        let all: BTreeSet<_> = MethodKind::ALL.into_iter().collect();
        let report = compare_methods(&f, n, &all).unwrap();
        prop_assert!(report.agreement, "diverge at {:?}", report.first_divergence);
        let g = MethodKind::NewFormula.invert(&f, n).unwrap();
        prop_assert_eq!(g.round_trip_defect(&f).unwrap(), None);
    }

    #[test]
    fn comparison_ignores_method_order(k in 0usize..3) {
        let f = expand("z*exp(z)", 0, 6);
        let pick: Vec<MethodKind> = MethodKind::ALL.iter().copied().filter(|&m| m != MethodKind::ALL[k]).collect();
        let forward: BTreeSet<_> = pick.iter().copied().collect();
        let backward: BTreeSet<_> = pick.iter().rev().copied().collect();
        let a = compare_methods(&f, 6, &forward).unwrap();
        let b = compare_methods(&f, 6, &backward).unwrap();
        prop_assert_eq!(&a, &b);
        prop_assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
    }

    #[test]
    fn translated_inverse_matches_closed_form(du in -0.1f64..0.1) {
        // z^2 - 2z about 3 inverts to 1 + sqrt(1 + u) near u0 = 3
        let f = expand("z^2-2*z", 3, 24);
        let g = MethodKind::NewFormula.invert(&f, 24).unwrap();
        let u = 3.0 + du;
        let approx = g.series.eval_f64(u).unwrap();
        prop_assert!((approx - (1.0 + (1.0 + u).sqrt())).abs() <= 1e-9);
    }
}

#[test]
fn exp_series_satisfies_its_differential_equation() {
    let e = expand("exp(sin(z))", 0, 14);
    // (exp s)' = s' exp s
    let s = expand("sin(z)", 0, 14);
    let lhs = e.derivative().unwrap();
    let rhs = s.derivative().unwrap().mul(&e).unwrap();
    assert_eq!(lhs, rhs);
}

#[test]
fn log_series_satisfies_its_differential_equation() {
    let l = expand("log(1+z+z^2)", 0, 14);
    let inner = expand("1+z+z^2", 0, 14);
    // inner * (log inner)' = inner'
    let lhs = inner.truncate(13).mul(&l.derivative().unwrap()).unwrap();
    assert_eq!(lhs, inner.derivative().unwrap());
}

#[test]
fn pythagorean_identity() {
    let f = parse("sin(z)^2 + cos(z)^2").unwrap();
    let s = taylor_series(&f, &Rational::zero(), 16, Mode::Exact).unwrap();
    assert!(s.coeffs()[0].as_rational().unwrap().is_one());
    assert!(s.coeffs()[1..].iter().all(Coefficient::is_zero));

    let s = taylor_series(&f, &Rational::from(2), 16, Mode::Float).unwrap();
    assert!((s.coeffs()[0].to_f64().unwrap() - 1.0).abs() < 1e-12);
    for c in &s.coeffs()[1..] {
        assert!(c.to_f64().unwrap().abs() < 1e-12, "{c:?}");
    }
}
