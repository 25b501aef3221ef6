//! Monomial gauge transformations and power changes of variable.
//!
//! Both act componentwise on Euler forms. Conjugation
//! `x^(-l) T x^l` turns `(m, P(s))` into `(m, P(s + l))` and maps the
//! operators preserving `<x^I>` onto those preserving `<x^(I - l)>`. The
//! substitution `x' = x^m` turns `xD` into `m x'D'`, so `(d, P(s))` becomes
//! `(d / m, P(m s))` and `<x^I>` becomes `<x'^(I / m)>`.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exactnum::Rational;
use crate::invariant::ExponentSet;
use crate::weyl::{grade_decompose, DiffOperator, GradedComponent, Mode};

fn rebuild<F>(op: &DiffOperator, mode: Mode, f: F) -> Result<DiffOperator>
where
    F: Fn(&GradedComponent) -> GradedComponent,
{
    grade_decompose(op)
        .iter()
        .try_fold(DiffOperator::zero(mode), |acc, g| {
            Ok(&acc + &f(g).to_operator(mode)?)
        })
}

/// `x^(-l) T x^l`. The result keeps the operator's mode and fails in
/// natural mode if a coefficient leaves the polynomials.
pub fn gauge(op: &DiffOperator, l: &Rational) -> Result<DiffOperator> {
    rebuild(op, op.mode(), |g| gauge_component(g, l))
}

pub fn gauge_component(g: &GradedComponent, l: &Rational) -> GradedComponent {
    GradedComponent::new(g.degree.clone(), g.euler.shift(l))
}

/// The change of variable `x' = x^m`, written back in terms of `x`. The
/// result is always a rational-mode operator.
pub fn change_variable(op: &DiffOperator, m: &Rational) -> Result<DiffOperator> {
    if m.is_zero() {
        return Err(Error::ZeroScale);
    }
    rebuild(op, Mode::Rational, |g| change_variable_component(g, m))
}

/// Panics if `m == 0`.
pub fn change_variable_component(g: &GradedComponent, m: &Rational) -> GradedComponent {
    GradedComponent::new(&g.degree / m, g.euler.scale_arg(m))
}

/// `I - l`, the set matching [`gauge`].
pub fn gauge_set(set: &ExponentSet, l: &Rational) -> Result<ExponentSet> {
    set.shifted(l)
}

/// `I / m`, the set matching [`change_variable`], in rational mode.
pub fn change_variable_set(set: &ExponentSet, m: &Rational) -> Result<ExponentSet> {
    set.with_mode(Mode::Rational)?.scaled_down(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{int, rat, UniPoly};
    use crate::invariant::{im_set, is_invariant};
    use crate::weyl::terms_to_euler;

    const R: Mode = Mode::Rational;

    #[test]
    fn gauge_examples() {
        let e = DiffOperator::euler(Mode::Natural);
        assert_eq!(gauge(&e, &int(1)).unwrap(), &e + &DiffOperator::one(Mode::Natural));
        assert_eq!(gauge(&e, &int(0)).unwrap(), e);
        let t = &DiffOperator::monomial(int(3), int(2), 2, R).unwrap() + &DiffOperator::d_pow(1, R);
        let l = rat(5, 3);
        assert_eq!(gauge(&gauge(&t, &l).unwrap(), &-&l).unwrap(), t);
    }

    #[test]
    fn gauge_in_natural_mode_can_fail() {
        // x^(-1) D x = D + x^(-1)
        let d = DiffOperator::d_pow(1, Mode::Natural);
        assert!(matches!(gauge(&d, &int(1)), Err(Error::NaturalModeViolation(_))));
        let r = gauge(&d.clone().with_mode(R).unwrap(), &int(1)).unwrap();
        assert_eq!(r, &d + &DiffOperator::x_pow(int(-1), R).unwrap());
    }

    #[test]
    fn change_variable_examples() {
        let e = DiffOperator::euler(R);
        assert_eq!(change_variable(&e, &int(2)).unwrap(), e.scale(&int(2)));

        let x = DiffOperator::x_pow(int(2), R).unwrap();
        let t = &(&x * &e) * &(&e - &DiffOperator::constant(int(3), R));
        assert_eq!(change_variable(&t, &int(1)).unwrap(), t);

        // x (xD - 1/2) with scale 1/2
        let u = &DiffOperator::x_pow(int(1), R).unwrap()
            * &(&e - &DiffOperator::constant(rat(1, 2), R));
        let c = change_variable(&u, &rat(1, 2)).unwrap();
        let g = terms_to_euler(&c).unwrap();
        assert_eq!(g.degree, int(2));
        assert_eq!(g.euler, UniPoly::new(vec![rat(-1, 2), rat(1, 2)]));
        assert_eq!(change_variable(&u, &Rational::zero()), Err(Error::ZeroScale));
    }

    #[test]
    fn invariance_moves_with_the_set() {
        let i = ExponentSet::new(vec![int(0), int(1), int(3)], R).unwrap();
        let t = DiffOperator::d_pow(2, R);
        let l = rat(1, 2);
        assert!(is_invariant(&t, &i));
        assert!(is_invariant(&gauge(&t, &l).unwrap(), &gauge_set(&i, &l).unwrap()));
        let m = rat(2, 3);
        assert!(is_invariant(
            &change_variable(&t, &m).unwrap(),
            &change_variable_set(&i, &m).unwrap()
        ));
        let shifted = gauge_set(&i, &l).unwrap();
        let transported: Vec<Rational> = im_set(&i, &int(2)).iter().map(|a| a - &l).collect();
        assert_eq!(im_set(&shifted, &int(2)), transported);
    }
}
