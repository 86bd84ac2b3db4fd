use hodge_stringy::{FactoredRational, Poly};
use num_rational::BigRational;
use num_traits::One;
use proptest::prelude::*;

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn poly_strategy() -> impl Strategy<Value = Poly> {
    prop::collection::vec(((0u32..4, 0u32..4), -6i64..=6, 1i64..=3), 0..6)
        .prop_map(|terms| Poly::from_terms(terms.into_iter().map(|(m, n, d)| (m, rat(n, d)))))
}

fn nonzero_poly() -> impl Strategy<Value = Poly> {
    poly_strategy().prop_filter("nonzero", |p| !p.is_zero())
}

/// Denominator shapes with nonzero constant term.
fn factor_strategy() -> impl Strategy<Value = Poly> {
    let q = Poly::uv_pow(1);
    prop::sample::select(vec![
        Poly::one() - &q,
        Poly::one() + &q,
        Poly::one() - Poly::uv_pow(2),
        Poly::one() - Poly::u(),
        Poly::one() + Poly::v(),
        Poly::from_int(2) + Poly::u(),
        q - Poly::one(),
    ])
}

fn fraction_strategy() -> impl Strategy<Value = FactoredRational> {
    (poly_strategy(), prop::collection::vec((factor_strategy(), 1u32..=2), 0..3))
        .prop_map(|(num, den)| FactoredRational::new(num, &den).unwrap())
}

fn point() -> impl Strategy<Value = (BigRational, BigRational)> {
    ((-7i64..=7, 1i64..=5), (-7i64..=7, 1i64..=5)).prop_map(|((a, b), (c, d))| (rat(a, b), rat(c, d)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn ring_axioms(a in poly_strategy(), b in poly_strategy(), c in poly_strategy()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a + &Poly::zero(), a.clone());
        prop_assert_eq!(&a * &Poly::one(), a.clone());
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn product_evaluates_pointwise(a in poly_strategy(), b in poly_strategy(), (u, v) in point()) {
        prop_assert_eq!((&a * &b).eval(&u, &v), a.eval(&u, &v) * b.eval(&u, &v));
        prop_assert_eq!((&a + &b).eval(&u, &v), a.eval(&u, &v) + b.eval(&u, &v));
    }

    #[test]
    fn exact_division_inverts_multiplication(a in poly_strategy(), b in nonzero_poly()) {
        prop_assert_eq!((&a * &b).div_exact(&b), Some(a));
    }

    #[test]
    fn fraction_arithmetic_evaluates_pointwise(a in fraction_strategy(), b in fraction_strategy(), (u, v) in point()) {
        if let (Some(x), Some(y)) = (a.eval(&u, &v), b.eval(&u, &v)) {
            prop_assert_eq!((&a + &b).eval(&u, &v), Some(&x + &y));
            prop_assert_eq!((&a - &b).eval(&u, &v), Some(&x - &y));
            prop_assert_eq!((&a * &b).eval(&u, &v), Some(&x * &y));
        }
    }

    #[test]
    fn rat_eq_is_an_equivalence(a in fraction_strategy(), f in factor_strategy(), h in factor_strategy()) {
        // the same value written three ways
        let b = a.mul_poly(&f) * FactoredRational::new(Poly::one(), &[(f.clone(), 1)]).unwrap();
        let c = b.mul_poly(&h) * FactoredRational::new(Poly::one(), &[(h.clone(), 2)]).unwrap().mul_poly(&h);
        prop_assert!(a.rat_eq(&a));
        prop_assert!(a.rat_eq(&b) && b.rat_eq(&a));
        prop_assert!(b.rat_eq(&c) && c.rat_eq(&b));
        prop_assert!(a.rat_eq(&c));
        prop_assert!(!a.rat_eq(&(&a + &FactoredRational::one())));
    }

    #[test]
    fn recovered_polynomial_equals_fraction(p in poly_strategy(), den in prop::collection::vec((factor_strategy(), 1u32..=2), 0..3)) {
        let product = den.iter().fold(Poly::one(), |acc, (f, m)| acc * f.pow(*m));
        let a = FactoredRational::new(&p * &product, &den).unwrap();
        let recovered = a.as_polynomial();
        prop_assert_eq!(recovered.clone(), Some(p));
        prop_assert!(a.rat_eq(&FactoredRational::from_poly(recovered.unwrap())));
    }

    #[test]
    fn any_recovered_polynomial_is_equal(a in fraction_strategy()) {
        if let Some(p) = a.as_polynomial() {
            prop_assert!(a.rat_eq(&FactoredRational::from_poly(p)));
        }
    }

    #[test]
    fn limit_of_polynomial_is_value(p in poly_strategy()) {
        let one = BigRational::one();
        prop_assert_eq!(FactoredRational::from_poly(p.clone()).limit_at_one(), Ok(p.eval(&one, &one)));
    }

    #[test]
    fn limit_agrees_with_value_away_from_poles(a in fraction_strategy()) {
        let one = BigRational::one();
        if let Some(value) = a.eval(&one, &one) {
            prop_assert_eq!(a.limit_at_one(), Ok(value));
        }
    }

    #[test]
    fn diagonal_is_multiplicative(a in fraction_strategy(), b in fraction_strategy()) {
        let lhs = (&a * &b).diagonal();
        let (da, db) = (a.diagonal(), b.diagonal());
        let rhs = hodge_stringy::UnivariateRational::new(
            da.numerator() * db.numerator(),
            da.denominator() * db.denominator(),
        ).unwrap();
        prop_assert!(lhs.equals(&rhs));
    }

    #[test]
    fn json_round_trip(a in fraction_strategy()) {
        let s = serde_json::to_string(&a).unwrap();
        let back: FactoredRational = serde_json::from_str(&s).unwrap();
        prop_assert_eq!(&back, &a);
        prop_assert_eq!(serde_json::to_string(&back).unwrap(), s);
    }

    #[test]
    fn swap_is_an_involution(a in fraction_strategy()) {
        prop_assert_eq!(a.swap_uv().swap_uv(), a.clone());
        prop_assert!((&a + &a.swap_uv()).is_symmetric());
    }
}
