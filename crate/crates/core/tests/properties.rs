use proptest::prelude::*;
use selfdual::algebra::{Monomial, Polynomial, PrimeField, QuotientRing};
use selfdual::script::{parse_expression, Expr};

const P: u32 = 101;

fn field() -> PrimeField {
    PrimeField::new(P as u64).unwrap()
}

fn ring() -> QuotientRing {
    QuotientRing::polynomial_ring(101, &["x", "y", "z"], None).unwrap()
}

/// A homogeneous polynomial of degree `d` in three variables.
fn homogeneous(d: u32) -> impl Strategy<Value = Polynomial> {
    let mons = Monomial::all_of_degree(d, &[1, 1, 1]);
    proptest::collection::vec((0..mons.len(), 0..P), 0..6).prop_map(move |terms| {
        let terms = terms.into_iter().map(|(i, c)| (mons[i], c)).collect();
        Polynomial::from_terms(terms, &field())
    })
}

fn expr() -> impl Strategy<Value = Expr> {
    let leaf = prop_oneof![
        (0u64..200).prop_map(Expr::Int),
        prop_oneof![Just("x"), Just("y"), Just("z")].prop_map(|v| Expr::Var(v.into()))
    ];
    leaf.prop_recursive(4, 24, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(|e| Expr::Neg(Box::new(e))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Add(Box::new(a), Box::new(b))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Sub(Box::new(a), Box::new(b))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Mul(Box::new(a), Box::new(b))),
            (inner, 0u32..4).prop_map(|(a, e)| Expr::Pow(Box::new(a), e)),
        ]
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn field_axioms(a in 0..P, b in 0..P, c in 0..P) {
        let f = field();
        prop_assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
        prop_assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
        prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
        prop_assert_eq!(f.add(a, f.neg(a)), 0);
        prop_assert_eq!(f.sub(a, b), f.add(a, f.neg(b)));
        if a != 0 {
            prop_assert_eq!(f.mul(a, f.inv(a)), 1);
        }
        prop_assert_eq!(f.mul(a, b) as u64, (a as u64 * b as u64) % P as u64);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn polynomial_ring_laws(
        (da, a) in (0u32..4).prop_flat_map(|d| (Just(d), homogeneous(d))),
        (db, b) in (0u32..4).prop_flat_map(|d| (Just(d), homogeneous(d))),
        c in homogeneous(2),
    ) {
        let f = field();
        prop_assert_eq!(a.mul(&b, &f), b.mul(&a, &f));
        prop_assert_eq!(a.mul(&b, &f).mul(&c, &f), a.mul(&b.mul(&c, &f), &f));
        prop_assert_eq!(a.mul(&b.add(&b, &f), &f), a.mul(&b, &f).add(&a.mul(&b, &f), &f));
        let ab = a.mul(&b, &f);
        if !ab.is_zero() {
            prop_assert_eq!(ab.homogeneous_degree(), Some(da + db));
        }
        prop_assert!(a.sub(&a, &f).is_zero());
    }

    #[test]
    fn expressions_print_and_parse_back(e in expr()) {
        let text = e.to_string();
        let back = parse_expression(&text).unwrap();
        prop_assert_eq!(&back, &e, "{}", text);
        // Printing and evaluating agree too.
        let r = ring();
        prop_assert_eq!(back.eval(&r).unwrap(), e.eval(&r).unwrap());
    }

    #[test]
    fn formatted_polynomials_parse_back(a in homogeneous(3)) {
        let r = ring();
        prop_assert_eq!(r.parse(&r.format(&a)).unwrap(), a);
    }
}

#[test]
fn gb_of_gb_is_itself() {
    for ideal in [
        &["x^2 - y*z", "x*y - z^2"][..],
        &["x^3", "x*y^2 + z^3", "y^4"],
        &["x^2", "y^2", "z^2"],
    ] {
        let r = QuotientRing::new(101, &["x", "y", "z"], &[1, 1, 1], ideal).unwrap();
        let gb: Vec<Polynomial> = r.groebner_basis().to_vec();
        let again = r.ambient().quotient(&gb).unwrap();
        assert_eq!(again.groebner_basis(), &gb[..]);
    }
}
