//! Generators and independent oracles shared by the integration tests and
//! the acceptance harness.
#![allow(dead_code)]

use std::collections::BTreeSet;

use monoweyl::exactnum::{int, rat, GenPolynomial, RatMatrix, Rational};
use monoweyl::{DiffOperator, ExponentSet, Mode, OperatorTerm, PolySubspace};
use num_traits::{One, Zero};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Lifts a seeded generator into a strategy.
pub fn seeded<T: std::fmt::Debug>(f: fn(&mut ChaCha8Rng) -> T) -> impl Strategy<Value = T> {
    any::<u64>().prop_map(move |s| f(&mut rng(s)))
}

/// `p/q` with `|p| <= bound`, `1 <= q <= bound`, possibly zero.
pub fn coeff(r: &mut impl Rng, bound: i64) -> Rational {
    rat(r.gen_range(-bound..=bound), r.gen_range(1..=bound))
}

pub fn nonzero_coeff(r: &mut impl Rng, bound: i64) -> Rational {
    loop {
        let c = coeff(r, bound);
        if !c.is_zero() {
            return c;
        }
    }
}

/// Exponent with denominator up to 3, in `[-lim, lim]`.
pub fn rational_exp(r: &mut impl Rng, lim: i64) -> Rational {
    let d = r.gen_range(1..=3);
    rat(r.gen_range(-lim * d..=lim * d), d)
}

pub fn term(c: Rational, e: Rational, j: u32) -> OperatorTerm {
    OperatorTerm {
        coeff: c,
        x_exp: e,
        d_order: j,
    }
}

pub fn op(terms: Vec<OperatorTerm>, mode: Mode) -> DiffOperator {
    DiffOperator::from_terms(terms, mode).expect("valid terms")
}

/// Natural-mode operator with up to 5 terms, x exponents in `0..=5`,
/// order at most 3.
pub fn natural_op(r: &mut impl Rng) -> DiffOperator {
    let n = r.gen_range(1..=5);
    let terms = (0..n)
        .map(|_| term(coeff(r, 9), int(r.gen_range(0..=5)), r.gen_range(0..=3)))
        .collect();
    op(terms, Mode::Natural)
}

/// Rational-mode operator with exponents of denominator up to 3.
pub fn rational_op(r: &mut impl Rng) -> DiffOperator {
    let n = r.gen_range(1..=4);
    let terms = (0..n)
        .map(|_| term(coeff(r, 9), rational_exp(r, 3), r.gen_range(0..=3)))
        .collect();
    op(terms, Mode::Rational)
}

pub fn any_op(r: &mut impl Rng) -> DiffOperator {
    if r.gen_bool(0.5) {
        natural_op(r)
    } else {
        rational_op(r)
    }
}

/// A nonzero graded natural-mode operator of degree in `-4..=6` and order
/// at most 4. Half of them have Euler polynomials with planted rational
/// roots so factorization has something to find.
pub fn graded_op(r: &mut impl Rng) -> DiffOperator {
    let m: i64 = r.gen_range(-4..=6);
    let lo = (-m).max(0) as u32;
    if lo > 4 {
        return graded_op(r);
    }
    let top = r.gen_range(lo..=4);
    loop {
        let t = if r.gen_bool(0.5) {
            let terms = (lo..=top)
                .map(|j| term(coeff(r, 50), int(m + j as i64), j))
                .collect();
            op(terms, Mode::Natural)
        } else {
            // x^m' * prod (x*D - a) with x^m' D^lo in front for m < 0
            let theta = op(vec![term(int(1), int(1), 1)], Mode::Natural);
            let mut t = op(
                vec![term(nonzero_coeff(r, 50), int(m.max(0)), 0)],
                Mode::Natural,
            );
            t = &t * &DiffOperator::d_pow(lo, Mode::Natural);
            for _ in lo..top {
                let a = coeff(r, 6);
                t = &t * &(&theta - &DiffOperator::constant(a, Mode::Natural));
            }
            t
        };
        if !t.is_zero() {
            return t;
        }
    }
}

pub fn natural_set(r: &mut impl Rng, max: u32, min_len: usize, max_len: usize) -> ExponentSet {
    let want = r.gen_range(min_len..=max_len).min(max as usize + 1);
    let mut s = BTreeSet::new();
    while s.len() < want {
        s.insert(r.gen_range(0..=max));
    }
    ExponentSet::natural(s).expect("nonempty")
}

pub fn set_of(v: &[i64]) -> ExponentSet {
    ExponentSet::natural(v.iter().map(|&e| e as u32)).unwrap()
}

/// Random element of `span{x^e : e in set}` with coefficients up to 9.
pub fn poly_in(r: &mut impl Rng, set: &[Rational]) -> GenPolynomial {
    GenPolynomial::from_terms(set.iter().map(|e| (e.clone(), coeff(r, 9))))
}

/// An operator preserving `<x^set>` by construction: it sends each `x^j`,
/// `j <= max(set)`, into the span, through [`monoweyl::realize_on_monomials`].
pub fn invariant_op(r: &mut impl Rng, set: &ExponentSet) -> DiffOperator {
    let top = monoweyl::exactnum::to_natural(set.max()).unwrap();
    let imgs: Vec<(u32, GenPolynomial)> = (0..=top)
        .map(|j| {
            if set.contains(&int(j as i64)) {
                (j, poly_in(r, set.exponents()))
            } else {
                let e = int(r.gen_range(0..=top as i64 + 3));
                (j, poly_in(r, &[e]))
            }
        })
        .collect();
    monoweyl::realize_on_monomials(&imgs).unwrap().with_mode(set.mode()).unwrap()
}

/// Oracle: `T(x^i) in <x^set>` for every `i`, read off the support of the
/// image.
pub fn preserves_monomials(t: &DiffOperator, set: &ExponentSet) -> bool {
    set.iter().all(|i| {
        t.apply(&GenPolynomial::x_pow(i.clone()))
            .terms()
            .all(|(e, _)| set.contains(e))
    })
}

/// Oracle: `T(V) in V`, by solving for coordinates of each image.
pub fn preserves_subspace(t: &DiffOperator, v: &PolySubspace) -> bool {
    v.basis().iter().all(|b| {
        monoweyl::exactnum::span_contains(v.basis(), &t.apply(b)).is_some()
    })
}

/// Oracle: the dimension of `{T : order <= k, T(<x^I>) in <x^I>}` for a
/// natural set, as the nullspace of the linear conditions on the raw
/// coefficients `c_{e,j}` of `x^e D^j`. Uses no Euler polynomials, no
/// degree bookkeeping and no knowledge of which degrees can occur beyond
/// the finite window `-k..=max(I) + k`.
pub fn invariant_dimension(set: &ExponentSet, k: u32) -> usize {
    let top = monoweyl::exactnum::to_natural(set.max()).unwrap() as i64;
    let mut unknowns = Vec::new();
    for j in 0..=k as i64 {
        for e in 0..=top + 2 * k as i64 {
            if e - j >= -(k as i64) && e - j <= top + k as i64 {
                unknowns.push((e, j as u32));
            }
        }
    }
    // rows indexed by (input i, output exponent outside I)
    let mut rows: std::collections::BTreeMap<(Rational, Rational), Vec<Rational>> = Default::default();
    for (col, (e, j)) in unknowns.iter().enumerate() {
        let mono = op(vec![term(int(1), int(*e), *j)], Mode::Natural);
        for i in set.iter() {
            for (out, c) in mono.apply(&GenPolynomial::x_pow(i.clone())).terms() {
                if !set.contains(out) {
                    let row = rows
                        .entry((i.clone(), out.clone()))
                        .or_insert_with(|| vec![Rational::zero(); unknowns.len()]);
                    row[col] = c.clone();
                }
            }
        }
    }
    if rows.is_empty() {
        return unknowns.len();
    }
    RatMatrix::from_rows(rows.into_values().collect()).nullspace().len()
}

/// Random polynomial subspace of dimension `2..=min(4, k)` inside degree
/// `<= k`, forced to be non-monomial (a proper subspace, hence `k >= 2`).
pub fn non_monomial_subspace(r: &mut impl Rng, k: u32) -> PolySubspace {
    assert!(k >= 2, "every subspace of full dimension is monomial");
    loop {
        let dim = r.gen_range(2..=4.min(k as usize));
        let polys: Vec<GenPolynomial> = (0..dim)
            .map(|_| {
                let n = r.gen_range(1..=3);
                GenPolynomial::from_terms(
                    (0..n).map(|_| (int(r.gen_range(0..=k as i64)), coeff(r, 7))),
                )
            })
            .collect();
        if let Ok(v) = PolySubspace::new(polys) {
            if !v.is_monomial() {
                return v;
            }
        }
    }
}

pub fn one() -> Rational {
    Rational::one()
}
