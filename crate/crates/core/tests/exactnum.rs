use monoweyl::exactnum::{falling_factorial, int, rat, span_contains, GenPolynomial, RatMatrix, Rational, UniPoly};
use num_integer::Integer;
use num_traits::{One, Zero};
use proptest::prelude::*;

fn small_rat() -> impl Strategy<Value = Rational> {
    (-40i64..=40, 1i64..=40).prop_map(|(n, d)| rat(n, d))
}

fn gen_poly() -> impl Strategy<Value = GenPolynomial> {
    prop::collection::vec(((-6i64..=6, 1i64..=3), small_rat()), 0..5).prop_map(|ts| {
        GenPolynomial::from_terms(ts.into_iter().map(|((n, d), c)| (rat(n, d), c)))
    })
}

fn uni() -> impl Strategy<Value = UniPoly> {
    prop::collection::vec(small_rat(), 0..6).prop_map(UniPoly::new)
}

proptest! {
    #[test]
    fn rationals_stay_in_lowest_terms(a in small_rat(), b in small_rat()) {
        for q in [&a + &b, &a * &b, &a - &b] {
            prop_assert!(q.numer().gcd(q.denom()).is_one());
            prop_assert!(q.denom() > &Zero::zero());
        }
    }

    #[test]
    fn polynomial_ring_laws(p in gen_poly(), q in gen_poly(), r in gen_poly()) {
        prop_assert_eq!(&p * &(&q + &r), &(&p * &q) + &(&p * &r));
        prop_assert_eq!(&(&p * &q) * &r, &p * &(&q * &r));
        prop_assert_eq!(&p * &q, &q * &p);
        prop_assert!((&p - &p).is_zero());
        prop_assert!(p.terms().all(|(_, c)| !c.is_zero()));
    }

    #[test]
    fn unipoly_shift_is_evaluation(p in uni(), l in small_rat(), s in small_rat()) {
        prop_assert_eq!(p.shift(&l).eval(&s), p.eval(&(&s + &l)));
        prop_assert_eq!(p.scale_arg(&l).eval(&s), p.eval(&(&l * &s)));
    }

    #[test]
    fn division_by_linear_factor(p in uni(), a in small_rat()) {
        let (q, rem) = p.div_linear(&a);
        prop_assert_eq!(&rem, &p.eval(&a));
        prop_assert_eq!(&(&q * &UniPoly::linear(&a)) + &UniPoly::constant(rem), p);
    }

    #[test]
    fn falling_basis_matches_falling_factorial(j in 0u32..6, s in small_rat()) {
        prop_assert_eq!(UniPoly::falling(j).eval(&s), falling_factorial(&s, j));
    }

    #[test]
    fn nullspace_vectors_are_killed(
        rows in prop::collection::vec(prop::collection::vec(-5i64..=5, 4), 1..5)
    ) {
        let m = RatMatrix::from_rows(rows.iter().map(|r| r.iter().map(|&v| int(v)).collect()).collect());
        let ns = m.nullspace();
        prop_assert_eq!(ns.len() + m.rank(), 4);
        for v in &ns {
            prop_assert!(m.mul_vec(v).iter().all(Zero::is_zero));
        }
    }

    #[test]
    fn span_coordinates_reconstruct(ps in prop::collection::vec(gen_poly(), 1..4), cs in prop::collection::vec(small_rat(), 4)) {
        let target = ps.iter().zip(&cs).fold(GenPolynomial::zero(), |acc, (p, c)| &acc + &p.scale(c));
        let coords = span_contains(&ps, &target);
        prop_assert!(coords.is_some());
        let back = ps.iter().zip(coords.unwrap()).fold(GenPolynomial::zero(), |acc, (p, c)| &acc + &p.scale(&c));
        prop_assert_eq!(back, target);
    }
}

#[test]
fn span_contains_examples() {
    let x = |e| GenPolynomial::x_pow(int(e));
    let basis = [&x(0) + &x(1), x(2)];
    let p = &(&x(0) + &x(1)) + &x(2).scale(&int(3));
    assert_eq!(span_contains(&basis, &p), Some(vec![int(1), int(3)]));
    assert_eq!(span_contains(&basis, &x(1)), None);
    assert_eq!(span_contains(&[], &GenPolynomial::zero()), Some(vec![]));
}

#[test]
fn nullspace_example() {
    let m = RatMatrix::from_rows(vec![vec![int(1), int(2)], vec![int(2), int(4)]]);
    let ns = m.nullspace();
    assert_eq!(ns.len(), 1);
    assert_eq!(&ns[0][0] / &ns[0][1], int(-2));
}
