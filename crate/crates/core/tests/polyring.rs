#[path = "support/properties.rs"]
mod properties;

use std::cmp::Ordering;

use properties::poly;
use proptest::prelude::*;
use syzforms::poly::rat;
use syzforms::{Monomial, MonomialOrder, OrderKind, Polynomial};

fn p(s: &str, n: usize) -> Polynomial {
    Polynomial::parse(s, n).unwrap()
}

/// Inhomogeneous sums of homogeneous pieces of degrees 0 to 3.
fn any_poly(n: usize) -> impl Strategy<Value = Polynomial> {
    (poly(n, 0), poly(n, 1), poly(n, 2), poly(n, 3)).prop_map(|(a, b, c, d)| &(&(&a + &b) + &c) + &d)
}

fn monomial_strategy(n: usize) -> impl Strategy<Value = Monomial> {
    prop::collection::vec(0u32..4, n).prop_map(|e| Monomial::from_exponents(&e))
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 200, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn ring_axioms(a in any_poly(3), b in any_poly(3), c in any_poly(3)) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn euler_identity(f in (0usize..5).prop_flat_map(|k| poly(4, k))) {
        if let Some(d) = f.homogeneous_degree() {
            prop_assert_eq!(f.euler_operator(), f.scale(&rat(d as i64)));
        }
    }

    #[test]
    fn parse_format_round_trip(f in any_poly(4)) {
        prop_assert_eq!(Polynomial::parse(&f.to_string(), 4).unwrap(), f);
    }

    #[test]
    fn monomial_orders(a in monomial_strategy(3), b in monomial_strategy(3), c in monomial_strategy(3), o in 0usize..3) {
        let kind = [OrderKind::Degrevlex, OrderKind::Deglex, OrderKind::Lex][o];
        let order = MonomialOrder::new(kind, 3);
        // Total: antisymmetric, equal only on equal monomials, transitive.
        prop_assert_eq!(order.cmp(&a, &b), order.cmp(&b, &a).reverse());
        prop_assert_eq!(order.cmp(&a, &b) == Ordering::Equal, a == b);
        if order.cmp(&a, &b) != Ordering::Greater && order.cmp(&b, &c) != Ordering::Greater {
            prop_assert_ne!(order.cmp(&a, &c), Ordering::Greater);
        }
        // Multiplicative.
        prop_assert_eq!(order.cmp(&a.mul(&c), &b.mul(&c)), order.cmp(&a, &b));
        prop_assert_ne!(order.cmp(&Monomial::one(), &c), Ordering::Greater);
        if kind != OrderKind::Lex && a.degree() != b.degree() {
            prop_assert_eq!(order.cmp(&a, &b), a.degree().cmp(&b.degree()));
        }
    }
}

#[test]
fn grammar_examples() {
    let f = p("x0*x1 - x2^2", 3);
    assert_eq!(f.num_terms(), 2);
    assert_eq!(f.coefficient(&Monomial::from_exponents(&[1, 1, 0])), rat(1));
    assert_eq!(f.coefficient(&Monomial::from_exponents(&[0, 0, 2])), rat(-1));
    assert!(p("0", 3).is_zero());
    let cubic = p("x_0*(x_2^2-x_3^2) - x_1*x_3*x_2", 4);
    assert_eq!(cubic.num_terms(), 3);
    assert_eq!(cubic.homogeneous_degree(), Some(3));
    assert_eq!(cubic.to_string(), "x_0*x_2^2 - x_1*x_2*x_3 - x_0*x_3^2");
}

#[test]
fn arithmetic_examples() {
    let n = 4;
    assert_eq!(&p("x0 + x1", n) * &p("x0 - x1", n), p("x0^2 - x1^2", n));
    assert!((&p("x0 + 3", n) * &Polynomial::zero(n)).is_zero());
    assert_eq!(&p("x1*x3 - x2^2", n) + &p("x2^2", n), p("x1*x3", n));
    assert_eq!(p("x0 + x0*x1", n).homogeneous_component(2), p("x0*x1", n));
    assert!(Polynomial::zero(n).homogeneous_component(3).is_zero());
    assert!(p("x0^2", n).homogeneous_component(1).is_zero());
    assert_eq!(p("x0^2*x1", n).partial_derivative(0).unwrap(), p("2*x0*x1", n));
    assert!(p("x1", n).partial_derivative(0).unwrap().is_zero());
    let f = p("x0*x1*x2", n);
    assert_eq!(f.euler_operator(), f.scale(&rat(3)));
}
