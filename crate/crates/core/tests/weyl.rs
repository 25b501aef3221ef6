mod common;

use common::*;
use monoweyl::exactnum::{int, GenPolynomial, Rational};
use monoweyl::{euler_to_terms, grade_decompose, terms_to_euler, DiffOperator, Mode};
use proptest::prelude::*;

/// Test exponents for faithfulness: integers, and halves in rational mode.
fn probes(mode: Mode) -> Vec<Rational> {
    let mut v: Vec<Rational> = (0..7).map(int).collect();
    if mode == Mode::Rational {
        v.extend([-5, -3, -1, 1, 3, 7].iter().map(|&n| monoweyl::exactnum::rat(n, 2)));
    }
    v
}

fn apply_twice(a: &DiffOperator, b: &DiffOperator, s: &Rational) -> GenPolynomial {
    a.apply(&b.apply(&GenPolynomial::x_pow(s.clone())))
}

proptest! {
    #[test]
    fn product_is_composition(a in seeded(any_op), b in seeded(any_op)) {
        let ab = &a * &b;
        let mode = a.mode().join(b.mode());
        for s in probes(mode) {
            prop_assert_eq!(ab.apply(&GenPolynomial::x_pow(s.clone())), apply_twice(&a, &b, &s));
        }
    }

    #[test]
    fn associative_and_distributive(a in seeded(natural_op), b in seeded(natural_op), c in seeded(natural_op)) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
    }

    #[test]
    fn euler_round_trip(t in seeded(graded_op)) {
        let g = terms_to_euler(&t).unwrap();
        prop_assert_eq!(euler_to_terms(&g, Mode::Natural).unwrap(), t.clone());
        for s in probes(Mode::Natural) {
            let img = t.apply(&GenPolynomial::x_pow(s.clone()));
            prop_assert_eq!(img.coeff(&(&s + &g.degree)), g.euler.eval(&s));
        }
    }

    #[test]
    fn composition_of_components(a in seeded(graded_op), b in seeded(graded_op)) {
        let ga = terms_to_euler(&a).unwrap();
        let gb = terms_to_euler(&b).unwrap();
        let gab = terms_to_euler(&(&a * &b)).unwrap();
        prop_assert_eq!(gab, ga.compose(&gb));
    }

    #[test]
    fn decomposition_sums_back(t in seeded(any_op)) {
        let parts = grade_decompose(&t);
        let mut sum = DiffOperator::zero(t.mode());
        for w in parts.windows(2) {
            prop_assert!(w[0].degree > w[1].degree);
        }
        for g in &parts {
            sum = &sum + &g.to_operator(t.mode()).unwrap();
        }
        prop_assert_eq!(sum, t);
    }

    #[test]
    fn order_of_product(a in seeded(any_op), b in seeded(any_op)) {
        let ab = &a * &b;
        prop_assert!(ab.order() <= a.order() + b.order());
        if !a.is_zero() && !b.is_zero() {
            prop_assert_eq!(ab.order(), a.order() + b.order());
        }
    }
}

#[test]
fn commutator_relation() {
    let x = DiffOperator::x_pow(int(1), Mode::Natural).unwrap();
    let d = DiffOperator::d_pow(1, Mode::Natural);
    assert_eq!(&(&d * &x) - &(&x * &d), DiffOperator::one(Mode::Natural));
}
