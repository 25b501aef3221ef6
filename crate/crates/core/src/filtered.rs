//! Subspaces without a monomial basis, and operators built to act on them.
//!
//! Any prescribed images of `1, x, ..., x^k` are realized by an operator
//! `sum_{i<=k} P_i D^i`, solving for the coefficients `P_i` one after the
//! other. For a subspace `V` whose basis has distinct leading exponents,
//! the top homogeneous part of an operator preserving `V` preserves the
//! monomial space spanned by those leading exponents.

use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactnum::{factorial, int, span_contains, to_natural, GenPolynomial, RatMatrix, Rational};
use crate::invariant::{is_invariant, ExponentSet};
use crate::weyl::{grade_decompose, DiffOperator, GradedComponent, Mode, OperatorTerm};

/// A subspace of ordinary polynomials, kept in echelon form: the basis
/// elements have pairwise distinct leading exponents, each leading
/// coefficient is 1, and no basis element contains another one's leading
/// monomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolySubspace {
    basis: Vec<GenPolynomial>,
}

impl PolySubspace {
    pub fn new(polys: Vec<GenPolynomial>) -> Result<Self> {
        if polys.is_empty() {
            return Err(Error::InvalidSubspace("no basis vectors".into()));
        }
        if let Some(p) = polys.iter().find(|p| !p.is_natural()) {
            return Err(Error::InvalidSubspace(format!("{p} is not a polynomial")));
        }
        let degree = polys
            .iter()
            .filter_map(|p| p.degree().and_then(to_natural))
            .max()
            .unwrap_or(0) as usize;
        // columns indexed by exponent, highest first, so that rref yields
        // distinct leading exponents
        let rows: Vec<Vec<Rational>> = polys
            .iter()
            .map(|p| (0..=degree).rev().map(|e| p.coeff(&int(e as i64))).collect())
            .collect();
        let (r, pivots) = RatMatrix::from_rows(rows).rref();
        if pivots.len() < polys.len() {
            return Err(Error::InvalidSubspace("basis is linearly dependent".into()));
        }
        let mut basis: Vec<GenPolynomial> = (0..pivots.len())
            .map(|row| {
                GenPolynomial::from_terms(
                    r.row(row)
                        .iter()
                        .enumerate()
                        .map(|(c, v)| (int((degree - c) as i64), v.clone())),
                )
            })
            .collect();
        basis.sort_by(|a, b| a.degree().cmp(&b.degree()));
        Ok(Self { basis })
    }

    pub fn basis(&self) -> &[GenPolynomial] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn contains(&self, p: &GenPolynomial) -> bool {
        span_contains(&self.basis, p).is_some()
    }

    /// The exponents of the leading monomials, spanning the associated
    /// graded space.
    pub fn leading_exponents(&self) -> ExponentSet {
        ExponentSet::new(
            self.basis
                .iter()
                .map(|p| p.degree().expect("nonzero").clone())
                .collect(),
            Mode::Natural,
        )
        .expect("leading exponents are distinct naturals")
    }

    /// Whether every basis element is a single monomial.
    pub fn is_monomial(&self) -> bool {
        self.basis.iter().all(|p| p.len() == 1)
    }

    /// An operator sending the `i`-th basis element to `images[i]` and
    /// every monomial `x^j`, `j` not a leading exponent and `j` at most the
    /// top degree, to zero.
    pub fn realize_map(&self, images: &[GenPolynomial]) -> Result<DiffOperator> {
        if images.len() != self.basis.len() {
            return Err(Error::PreconditionFailed(format!(
                "{} images for a basis of size {}",
                images.len(),
                self.basis.len()
            )));
        }
        let top = self
            .basis
            .iter()
            .filter_map(|p| p.degree().and_then(to_natural))
            .max()
            .unwrap_or(0);
        let mut mono: Vec<GenPolynomial> = vec![GenPolynomial::zero(); top as usize + 1];
        // basis sorted by leading exponent; b = x^e + lower, so
        // T(x^e) = T(b) - sum lower_c T(x^lower)
        for (b, img) in self.basis.iter().zip(images) {
            let e = to_natural(b.degree().expect("nonzero")).expect("natural") as usize;
            let mut v = img.clone();
            for (k, c) in b.terms() {
                let k = to_natural(k).expect("natural") as usize;
                if k != e {
                    v = &v - &mono[k].scale(c);
                }
            }
            mono[e] = v;
        }
        realize_on_monomials(&mono.into_iter().enumerate().map(|(j, p)| (j as u32, p)).collect::<Vec<_>>())
    }
}

impl fmt::Display for PolySubspace {
    /// Semicolon-separated basis, the form the parser reads.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v: Vec<String> = self.basis.iter().map(ToString::to_string).collect();
        f.write_str(&v.join("; "))
    }
}

/// The operator `sum_{i<=k} P_i D^i` with `T(x^j) = image_j` for
/// `j = 0..=k`, where
/// `P_j = (image_j - sum_{i<j} P_i j!/(j-i)! x^(j-i)) / j!`.
/// The assignments may come in any order but must cover `0..=k` exactly
/// once.
pub fn realize_on_monomials(assignments: &[(u32, GenPolynomial)]) -> Result<DiffOperator> {
    let mut images: Vec<Option<&GenPolynomial>> = vec![None; assignments.len()];
    for (j, p) in assignments {
        match images.get_mut(*j as usize) {
            Some(slot @ None) => *slot = Some(p),
            _ => {
                return Err(Error::PreconditionFailed(format!(
                    "assignments must cover 0..={} exactly once (bad index {j})",
                    assignments.len().saturating_sub(1)
                )))
            }
        }
    }
    let mut coeffs: Vec<GenPolynomial> = Vec::with_capacity(images.len());
    for (j, img) in images.into_iter().enumerate() {
        let mut rest = img.expect("all slots filled").clone();
        for (i, p) in coeffs.iter().enumerate() {
            let ff = factorial(j as u32) / factorial((j - i) as u32);
            rest = &rest - &p.shift(&int((j - i) as i64)).scale(&ff);
        }
        coeffs.push(rest.scale(&(Rational::one() / factorial(j as u32))));
    }
    let mode = if coeffs.iter().all(GenPolynomial::is_natural) {
        Mode::Natural
    } else {
        Mode::Rational
    };
    let terms = coeffs.iter().enumerate().flat_map(|(i, p)| {
        p.terms().map(move |(e, c)| OperatorTerm {
            coeff: c.clone(),
            x_exp: e.clone(),
            d_order: i as u32,
        })
    });
    DiffOperator::from_terms(terms.collect::<Vec<_>>(), mode)
}

/// An operator with `T v = lambda v`: with `j0` the least exponent of `v`,
/// it sends `x^j0` to `(lambda / v_j0) v` and every other `x^j`,
/// `j <= deg v`, to zero.
pub fn eigen_operator(v: &GenPolynomial, lambda: &Rational) -> Result<DiffOperator> {
    let (Some(lo), Some(hi)) = (v.low_degree(), v.degree()) else {
        return Err(Error::ZeroVector);
    };
    if !v.is_natural() {
        return Err(Error::NaturalModeViolation(format!("{v} is not a polynomial")));
    }
    let lo_n = to_natural(lo).expect("natural");
    let hi_n = to_natural(hi).expect("natural");
    let pivot = v.scale(&(lambda / v.coeff(lo)));
    let assignments: Vec<(u32, GenPolynomial)> = (0..=hi_n)
        .map(|j| {
            let img = if j == lo_n {
                pivot.clone()
            } else {
                GenPolynomial::zero()
            };
            (j, img)
        })
        .collect();
    realize_on_monomials(&assignments)
}

/// The component of highest degree.
pub fn associated_graded(op: &DiffOperator) -> Result<GradedComponent> {
    grade_decompose(op)
        .into_iter()
        .next()
        .ok_or(Error::ZeroOperator("the zero operator has no associated graded part"))
}

/// Whether `T` maps every basis element of `V` back into `V`.
pub fn check_filtered_invariance(op: &DiffOperator, v: &PolySubspace) -> bool {
    v.basis().iter().all(|b| v.contains(&op.apply(b)))
}

/// For `T` preserving `V`, whether the associated graded part of `T`
/// preserves the monomial space of `V`'s leading exponents. This always
/// holds; a `false` would be a counterexample.
pub fn graded_invariance_holds(op: &DiffOperator, v: &PolySubspace) -> Result<bool> {
    if !check_filtered_invariance(op, v) {
        return Err(Error::PreconditionFailed(
            "the operator does not preserve the subspace".into(),
        ));
    }
    let top = associated_graded(op)?.to_operator(Mode::Natural)?;
    Ok(is_invariant(&top, &v.leading_exponents()))
}

/// Necessary condition for infinitely many independent polynomial
/// eigenvectors: the degree is at most 0 and the degree-0 part is nonzero.
pub fn infinite_eigenbasis_necessary(op: &DiffOperator) -> Result<bool> {
    let top = op
        .degree()
        .ok_or(Error::ZeroOperator("the zero operator has no eigenvectors to count"))?;
    Ok(top.is_zero())
}
