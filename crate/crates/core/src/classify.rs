//! Second-order operators preserving a space of monomials.
//!
//! A nonzero degree-`m` operator of order at most 2 that preserves `<x^I>`
//! must vanish on `I^(m)`, so `|I^(m)| <= 2`. For `m > 0` this happens
//! only when `I` splits into one or two arithmetic chains of step `m`; the
//! tops of the chains are the elements of `I^(m)`. The basis returned by
//! [`classify_second_order`] comes from scanning every degree that can
//! carry such an operator; the case label names the shape of `I`.

use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactnum::{int, Rational};
use crate::factor::FactoredOperator;
use crate::exactnum::UniPoly;
use crate::invariant::{im_set, is_normalized, operator_basis, ExponentSet};
use crate::weyl::{DiffOperator, Mode};

/// A partition of `I` into chains `t, t-m, t-2m, ...` of common step `m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainSplitting {
    pub step: Rational,
    /// Each chain runs downward from its top; chains are ordered by
    /// decreasing top.
    pub chains: Vec<Vec<Rational>>,
}

impl ChainSplitting {
    pub fn tops(&self) -> Vec<Rational> {
        self.chains.iter().map(|c| c[0].clone()).collect()
    }

    pub fn bottoms(&self) -> Vec<Rational> {
        self.chains
            .iter()
            .map(|c| c.last().expect("chains are nonempty").clone())
            .collect()
    }

    pub fn is_two_chain(&self) -> bool {
        self.chains.len() == 2
    }
}

impl fmt::Display for ChainSplitting {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let chains: Vec<String> = self
            .chains
            .iter()
            .map(|c| {
                let v: Vec<String> = c.iter().map(ToString::to_string).collect();
                format!("{{{}}}", v.join(","))
            })
            .collect();
        write!(f, "step {}: {}", self.step, chains.join(" | "))
    }
}

fn tops(set: &ExponentSet, m: &Rational) -> Vec<Rational> {
    set.iter()
        .rev()
        .filter(|i| !set.contains(&(*i + m)))
        .cloned()
        .collect()
}

fn splitting_for(set: &ExponentSet, m: &Rational) -> Option<ChainSplitting> {
    let tops = tops(set, m);
    if tops.len() > 2 {
        return None;
    }
    let chains = tops
        .into_iter()
        .map(|t| {
            let mut chain = vec![t];
            loop {
                let next = chain.last().expect("nonempty") - m;
                if !set.contains(&next) {
                    break chain;
                }
                chain.push(next);
            }
        })
        .collect();
    Some(ChainSplitting {
        step: m.clone(),
        chains,
    })
}

/// Every step `m > 0` for which `I` is a union of at most two chains,
/// with the chains. Only differences of elements of `I` are tried; any
/// other step leaves all of `I` as tops.
pub fn find_chain_splittings(set: &ExponentSet) -> Vec<ChainSplitting> {
    set.positive_differences()
        .iter()
        .filter_map(|m| splitting_for(set, m))
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GenericExtra {
    None,
    /// Step 1: an extra term `D (xD - b)`.
    A,
    /// Step 2 with chain bottoms `{0, 1}`: an extra term `D^2`.
    B,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CaseASub {
    None,
    A,
    B,
    C,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CaseBSub {
    None,
    A,
}

/// Shape of the exponent set, as far as second-order operators go.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CaseLabel {
    /// No operator of positive degree survives.
    ExactlySolvable,
    /// `I = {0, 1, ..., n-1}`.
    FullPolynomialSpace,
    /// Exactly one splitting into two chains.
    GenericTwoChain(GenericExtra),
    /// `I = {0, m, m+l}`.
    CaseA(CaseASub),
    /// `I = {0, m, m+l, 2m+l}`.
    CaseB(CaseBSub),
    /// `I = {0, 1, ..., n-2, n}`.
    CaseC,
    /// `I = {0, 2, 3, ..., n}`.
    CaseD,
    /// Four exponents with several two-chain splittings and none of the
    /// shapes above.
    SmallSet,
    /// Five or more exponents, several two-chain splittings, and neither
    /// shape C nor D. Never produced for a normalized set.
    Unlabeled,
}

impl CaseLabel {
    pub fn as_str(&self) -> &'static str {
        use CaseLabel::*;
        match self {
            ExactlySolvable => "exactly-solvable",
            FullPolynomialSpace => "full-polynomial-space",
            GenericTwoChain(GenericExtra::None) => "generic",
            GenericTwoChain(GenericExtra::A) => "generic.a",
            GenericTwoChain(GenericExtra::B) => "generic.b",
            CaseA(CaseASub::None) => "A",
            CaseA(CaseASub::A) => "A.a",
            CaseA(CaseASub::B) => "A.b",
            CaseA(CaseASub::C) => "A.c",
            CaseB(CaseBSub::None) => "B",
            CaseB(CaseBSub::A) => "B.a",
            CaseC => "C",
            CaseD => "D",
            SmallSet => "small-set",
            Unlabeled => "unlabeled",
        }
    }
}

impl fmt::Display for CaseLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// All operators of order at most 2 preserving `<x^I>`, as a basis.
#[derive(Clone, Debug)]
pub struct SecondOrderFamily {
    pub set: ExponentSet,
    /// Ordered by decreasing degree.
    pub basis: Vec<DiffOperator>,
    pub parameter_count: usize,
    pub case_label: CaseLabel,
    pub splittings: Vec<ChainSplitting>,
}

/// Degrees that can carry a nonzero operator of order at most 2.
///
/// Positive degrees must be differences of exponents (otherwise every
/// element of `I` is in `I^(m)` and `|I| >= 3` roots are too many). In
/// natural mode a degree `m < 0` forces order `>= -m`, leaving `-1` and
/// `-2`; in rational mode `|I^(m)| == |I^(-m)|` mirrors the positive side.
fn degree_window(set: &ExponentSet) -> Vec<Rational> {
    let pos = set.positive_differences();
    let mut out: Vec<Rational> = pos.iter().rev().cloned().collect();
    out.push(Rational::zero());
    match set.mode() {
        Mode::Natural => out.extend([int(-1), int(-2)]),
        Mode::Rational => out.extend(pos.iter().map(|m| -m)),
    }
    out
}

/// Classifies the order-at-most-2 part of the invariance algebra of a
/// normalized set with at least three exponents.
pub fn classify_second_order(set: &ExponentSet) -> Result<SecondOrderFamily> {
    if set.len() < 3 {
        return Err(Error::TooSmall(set.len()));
    }
    if !is_normalized(set) {
        return Err(Error::NotNormalized(set.to_string()));
    }
    let basis: Vec<DiffOperator> = degree_window(set)
        .iter()
        .flat_map(|m| operator_basis(set, m, 2))
        .collect();
    let splittings = find_chain_splittings(set);
    let case_label = label(set, &splittings);
    Ok(SecondOrderFamily {
        set: set.clone(),
        parameter_count: basis.len(),
        basis,
        case_label,
        splittings,
    })
}

fn label(set: &ExponentSet, splittings: &[ChainSplitting]) -> CaseLabel {
    let e = set.exponents();
    let n = set.len();
    if splittings.is_empty() {
        return CaseLabel::ExactlySolvable;
    }
    if set.is_initial_segment() {
        return CaseLabel::FullPolynomialSpace;
    }
    if n == 3 {
        let (m, l) = (e[1].clone(), &e[2] - &e[1]);
        let sub = if m.is_one() && l > int(2) {
            CaseASub::A
        } else if m.is_one() && l == int(2) {
            CaseASub::B
        } else if l.is_one() {
            CaseASub::C
        } else {
            CaseASub::None
        };
        return CaseLabel::CaseA(sub);
    }
    if n == 4 && e[3] == &e[1] + &e[2] {
        let sub = if e[1].is_one() {
            CaseBSub::A
        } else {
            CaseBSub::None
        };
        return CaseLabel::CaseB(sub);
    }
    if is_case_c(set) {
        return CaseLabel::CaseC;
    }
    if is_case_d(set) {
        return CaseLabel::CaseD;
    }
    let two: Vec<&ChainSplitting> = splittings.iter().filter(|s| s.is_two_chain()).collect();
    match (two.len(), n) {
        (1, _) => CaseLabel::GenericTwoChain(generic_extra(two[0])),
        (_, 4) => CaseLabel::SmallSet,
        _ => CaseLabel::Unlabeled,
    }
}

fn generic_extra(split: &ChainSplitting) -> GenericExtra {
    let mut bottoms = split.bottoms();
    bottoms.sort();
    if split.step.is_one() {
        GenericExtra::A
    } else if split.step == int(2) && bottoms == [int(0), int(1)] {
        GenericExtra::B
    } else {
        GenericExtra::None
    }
}

/// `{0, 1, ..., n-2, n}` with `n >= 3`.
fn is_case_c(set: &ExponentSet) -> bool {
    let n = set.len();
    let e = set.exponents();
    n >= 3
        && e[..n - 1].iter().enumerate().all(|(k, v)| *v == int(k as i64))
        && e[n - 1] == int(n as i64)
}

/// `{0, 2, 3, ..., n}` with `n >= 3`.
fn is_case_d(set: &ExponentSet) -> bool {
    let n = set.len();
    let e = set.exponents();
    n >= 3
        && e[0].is_zero()
        && e[1..].iter().enumerate().all(|(k, v)| *v == int(k as i64 + 2))
}

fn product(degree: Rational, roots: Vec<Rational>, prefix: Option<u32>, mode: Mode) -> DiffOperator {
    FactoredOperator {
        scalar: Rational::one(),
        degree,
        prefix,
        roots,
        residual: UniPoly::one(),
    }
    .expand(mode)
    .expect("chain factors are valid in the set's mode")
}

fn trivial_part(mode: Mode) -> Vec<DiffOperator> {
    let x2d2 = DiffOperator::monomial(Rational::one(), int(2), 2, mode).expect("natural");
    vec![x2d2, DiffOperator::euler(mode), DiffOperator::one(mode)]
}

fn require_two_chains(split: &ChainSplitting) -> Result<()> {
    if split.is_two_chain() {
        Ok(())
    } else {
        Err(Error::PreconditionFailed(format!(
            "splitting with step {} has {} chain(s), two are needed",
            split.step,
            split.chains.len()
        )))
    }
}

/// The explicit terms of the generic two-chain family:
/// `x^m (xD - i1)(xD - i2)`, `x^2 D^2`, `xD`, `1`, plus `D (xD - b)` for
/// step 1 (`b` the nonzero chain bottom) and `D^2` for step 2 with bottoms
/// `{0, 1}`. The extras exist only in natural mode.
pub fn generic_family_terms(set: &ExponentSet, split: &ChainSplitting) -> Result<Vec<DiffOperator>> {
    require_two_chains(split)?;
    let mode = set.mode();
    let mut out = vec![product(split.step.clone(), split.tops(), None, mode)];
    out.extend(trivial_part(mode));
    if mode == Mode::Natural {
        match generic_extra(split) {
            GenericExtra::A => {
                let b = split.bottoms().into_iter().max().expect("two bottoms");
                out.push(product(int(-1), vec![b], Some(1), mode));
            }
            GenericExtra::B => out.push(DiffOperator::d_pow(2, mode)),
            GenericExtra::None => {}
        }
    }
    Ok(out)
}

/// The symmetric rational-mode family
/// `x^m (xD - i1)(xD - i2)`, `x^2 D^2`, `xD`, `1`,
/// `x^(-m) (xD - b1)(xD - b2)` with `i1, i2` the chain tops and `b1, b2`
/// the chain bottoms. It is the complete order-2 family when no other
/// positive step has `|I^(l)| <= 2`, which is checked.
pub fn symmetric_family_rational(
    set: &ExponentSet,
    split: &ChainSplitting,
) -> Result<Vec<DiffOperator>> {
    if set.mode() != Mode::Rational {
        return Err(Error::PreconditionFailed(
            "the symmetric family needs a rational-mode set".into(),
        ));
    }
    require_two_chains(split)?;
    if let Some(l) = set
        .positive_differences()
        .into_iter()
        .find(|l| *l != split.step && im_set(set, l).len() <= 2)
    {
        return Err(Error::PreconditionFailed(format!(
            "step {l} also splits the set into at most two chains"
        )));
    }
    let mode = Mode::Rational;
    let mut out = vec![product(split.step.clone(), split.tops(), None, mode)];
    out.extend(trivial_part(mode));
    out.push(product(-&split.step, split.bottoms(), None, mode));
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExhaustivenessReport {
    /// Zero or one splitting into two chains: nothing exceptional.
    Unique { two_chain_splittings: usize },
    CaseC { n: u32 },
    CaseD { n: u32 },
    /// Several two-chain splittings and neither shape C nor D.
    Counterexample { steps: Vec<Rational> },
}

/// Checks that a set with several two-chain splittings has shape C or D.
pub fn check_exhaustiveness(set: &ExponentSet) -> ExhaustivenessReport {
    let steps: Vec<Rational> = find_chain_splittings(set)
        .into_iter()
        .filter(ChainSplitting::is_two_chain)
        .map(|s| s.step)
        .collect();
    let n = set.max().to_integer().try_into().unwrap_or(u32::MAX);
    if steps.len() < 2 {
        ExhaustivenessReport::Unique {
            two_chain_splittings: steps.len(),
        }
    } else if is_case_c(set) {
        ExhaustivenessReport::CaseC { n }
    } else if is_case_d(set) {
        ExhaustivenessReport::CaseD { n }
    } else {
        ExhaustivenessReport::Counterexample { steps }
    }
}
