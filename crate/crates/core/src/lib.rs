//! Exact algebra of differential operators that preserve a
//! finite-dimensional space of monomials.
//!
//! The crate works with normal-ordered operators `sum c x^e D^j` over the
//! rationals, splits them into homogeneous components, factors each
//! component into Euler factors `(x D - a)`, decides whether an operator
//! maps `<x^i : i in I>` into itself, builds bases of such operators and
//! classifies all second-order ones.
//!
//! ```
//! use monoweyl::{parse_operator, ExponentSet, Mode, is_invariant};
//!
//! let set: ExponentSet = "0,1,3".parse().unwrap();
//! let op = parse_operator("D^2", Mode::Natural).unwrap();
//! assert!(is_invariant(&op, &set));
//! ```

pub mod classify;
pub mod cli;
pub mod error;
pub mod exactnum;
pub mod factor;
pub mod filtered;
pub mod invariant;
pub mod transform;
pub mod weyl;

pub use classify::{
    check_exhaustiveness, classify_second_order, find_chain_splittings, generic_family_terms,
    symmetric_family_rational, CaseLabel, ChainSplitting, ExhaustivenessReport, SecondOrderFamily,
};
pub use cli::{parse_exponent_set, parse_operator, parse_polynomial, parse_subspace};
pub use error::{Error, Result};
pub use exactnum::{GenPolynomial, RatMatrix, Rational, UniPoly};
pub use factor::{factor_graded, partial_power_identity, FactoredOperator};
pub use filtered::{
    associated_graded, check_filtered_invariance, eigen_operator, infinite_eigenbasis_necessary,
    graded_invariance_holds, realize_on_monomials, PolySubspace,
};
pub use invariant::{
    brute_force_basis, im_set, is_invariant, minimal_operator, normalize, operator_basis,
    same_span, ExponentSet, Normalization,
};
pub use transform::{change_variable, gauge};
pub use weyl::{
    euler_to_terms, grade_decompose, normal_order_mul, terms_to_euler, DiffOperator,
    GradedComponent, Mode, OperatorTerm,
};
