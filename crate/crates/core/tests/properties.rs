use std::cmp::Ordering;
use std::sync::Arc;

use charpreg::cli::parse_polynomial;
use charpreg::ring::{Gauge, Monomial, MonomialOrder, Polynomial, Ring};
use proptest::prelude::*;

const N: usize = 3;

fn monomial() -> impl Strategy<Value = Monomial> {
    prop::collection::vec(0u32..5, N).prop_map(|e| Monomial::new(&e).unwrap())
}

fn order() -> impl Strategy<Value = MonomialOrder> {
    prop_oneof![
        Just(MonomialOrder::Grevlex),
        Just(MonomialOrder::Lex),
        (1usize..N).prop_map(|block| MonomialOrder::Elimination { block }),
    ]
}

fn ring_for(p: u64) -> Arc<Ring> {
    Ring::new(p, &["x", "y", "z"], MonomialOrder::Grevlex).unwrap()
}

fn poly(p: u64) -> impl Strategy<Value = Polynomial> {
    prop::collection::vec((monomial(), 0i64..p as i64), 0..5)
        .prop_map(move |terms| Polynomial::from_terms(&ring_for(p), terms))
}

fn gauge_value(g: Gauge) -> Option<u32> {
    match g {
        Gauge::NegInfinity => None,
        Gauge::Finite(d) => Some(d),
    }
}

proptest! {
    #[test]
    fn orders_are_multiplicative(o in order(), a in monomial(), b in monomial(), c in monomial()) {
        prop_assert_eq!(o.compare(&a, &b), o.compare(&a.mul(&c), &b.mul(&c)));
        prop_assert_eq!(o.compare(&a.mul(&c), &a), if c.degree() == 0 { Ordering::Equal } else { Ordering::Greater });
    }

    #[test]
    fn orders_are_total_and_antisymmetric(o in order(), a in monomial(), b in monomial()) {
        prop_assert_eq!(o.compare(&a, &b), o.compare(&b, &a).reverse());
        prop_assert_eq!(o.compare(&a, &b) == Ordering::Equal, a == b);
    }

    #[test]
    fn frobenius_is_a_ring_map(f in poly(3), g in poly(3), e in 0u32..3) {
        let fr = |h: &Polynomial| h.frobenius_pow(e).unwrap();
        prop_assert_eq!(fr(&(&f + &g)), &fr(&f) + &fr(&g));
        prop_assert_eq!(fr(&(&f * &g)), &fr(&f) * &fr(&g));
    }

    #[test]
    fn frobenius_matches_repeated_powering(f in poly(2), e in 0u32..3) {
        let mut by_pow = f.clone();
        for _ in 0..e {
            by_pow = by_pow.pow(2);
        }
        prop_assert_eq!(f.frobenius_pow(e).unwrap(), by_pow);
    }

    #[test]
    fn gauge_is_submultiplicative(f in poly(5), g in poly(5)) {
        let prod = gauge_value((&f * &g).gauge());
        match (gauge_value(f.gauge()), gauge_value(g.gauge())) {
            (Some(a), Some(b)) => prop_assert!(prod.unwrap() <= a + b),
            _ => prop_assert_eq!(prod, None),
        }
        if let (Some(gf), Some(d)) = (gauge_value(f.gauge()), f.degree()) {
            prop_assert!(gf <= d);
        }
    }

    #[test]
    fn printing_round_trips(f in poly(7)) {
        let text = f.to_string();
        prop_assert_eq!(parse_polynomial(f.ring(), &text).unwrap(), f);
    }
}

#[test]
fn gauge_examples() {
    let r = ring_for(5);
    let xyz = parse_polynomial(&r, "x*y*z").unwrap();
    assert_eq!(xyz.gauge(), Gauge::Finite(1));
    assert_eq!(Polynomial::zero(&r).gauge(), Gauge::NegInfinity);
    assert_eq!(parse_polynomial(&r, "x^3*y + z^2").unwrap().gauge(), Gauge::Finite(3));
}
