//! Operators preserving `V = <x^i : i in I>` for a finite exponent set `I`.
//!
//! A homogeneous operator of degree `m` with Euler polynomial `P` sends
//! `x^i` to `P(i) x^(i+m)`. It preserves `V` exactly when `P` vanishes on
//! `I^(m)`, the exponents whose image `i + m` leaves `I`. In natural mode
//! images with `i + m < 0` are excluded from `I^(m)`, because a
//! polynomial-coefficient operator of degree `m` already kills those
//! monomials.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exactnum::{
    falling_factorial, int, is_integer, is_natural, to_natural, RatMatrix,
    Rational, UniPoly,
};
use crate::factor::FactoredOperator;
use crate::weyl::{grade_decompose, DiffOperator, GradedComponent, Mode, OperatorTerm};

/// A nonempty set of distinct exponents, kept sorted.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExponentSet {
    exps: Vec<Rational>,
    mode: Mode,
}

impl ExponentSet {
    pub fn new(exps: Vec<Rational>, mode: Mode) -> Result<Self> {
        if exps.is_empty() {
            return Err(Error::InvalidExponentSet("the set is empty".into()));
        }
        if mode == Mode::Natural {
            if let Some(bad) = exps.iter().find(|e| !is_natural(e)) {
                return Err(Error::InvalidExponentSet(format!(
                    "{bad} is not a natural number"
                )));
            }
        }
        let mut sorted = exps;
        sorted.sort();
        if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::InvalidExponentSet(format!("{} is repeated", w[0])));
        }
        Ok(Self { exps: sorted, mode })
    }

    pub fn natural<I: IntoIterator<Item = u32>>(exps: I) -> Result<Self> {
        Self::new(exps.into_iter().map(|e| int(e as i64)).collect(), Mode::Natural)
    }

    pub fn exponents(&self) -> &[Rational] {
        &self.exps
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Rational> {
        self.exps.iter()
    }

    pub fn len(&self) -> usize {
        self.exps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn with_mode(&self, mode: Mode) -> Result<Self> {
        Self::new(self.exps.clone(), mode)
    }

    pub fn contains(&self, e: &Rational) -> bool {
        self.exps.binary_search(e).is_ok()
    }

    pub fn min(&self) -> &Rational {
        &self.exps[0]
    }

    pub fn max(&self) -> &Rational {
        self.exps.last().expect("nonempty")
    }

    /// `{i - l}`, in the same mode.
    pub fn shifted(&self, l: &Rational) -> Result<Self> {
        Self::new(self.exps.iter().map(|e| e - l).collect(), self.mode)
    }

    /// `{i / m}`, in the same mode.
    pub fn scaled_down(&self, m: &Rational) -> Result<Self> {
        if m.is_zero() {
            return Err(Error::ZeroScale);
        }
        Self::new(self.exps.iter().map(|e| e / m).collect(), self.mode)
    }

    /// All positive differences `i - j` with `i, j` in the set.
    pub fn positive_differences(&self) -> Vec<Rational> {
        let mut out = BTreeSet::new();
        for (a, i) in self.exps.iter().enumerate() {
            for j in &self.exps[..a] {
                out.insert(i - j);
            }
        }
        out.into_iter().collect()
    }

    /// For natural sets `{0, 1, ..., n-1}`.
    pub fn is_initial_segment(&self) -> bool {
        self.exps.iter().enumerate().all(|(k, e)| *e == int(k as i64))
    }
}

impl fmt::Display for ExponentSet {
    /// Comma-separated, the same form [`FromStr`] reads.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.exps.iter().map(ToString::to_string).collect();
        f.write_str(&s.join(","))
    }
}

impl FromStr for ExponentSet {
    type Err = Error;

    /// Parses `0,1,3` as a natural set; a set that needs fractional or
    /// negative exponents, such as `0,1/2,3/2`, must go through
    /// [`crate::parse_exponent_set`] with rational mode.
    fn from_str(s: &str) -> Result<Self> {
        crate::cli::parse_exponent_set(s, Mode::Natural)
    }
}

/// `I^(m)`. Natural-mode sets use `{i : i+m >= 0, i+m not in I}`, rational
/// sets `{i : i+m not in I}`.
pub fn im_set(set: &ExponentSet, m: &Rational) -> Vec<Rational> {
    im_set_in(set, m, set.mode)
}

fn im_set_in(set: &ExponentSet, m: &Rational, mode: Mode) -> Vec<Rational> {
    set.iter()
        .filter(|i| {
            let target = *i + m;
            let leaves = !set.contains(&target);
            match mode {
                Mode::Natural => leaves && !target.is_negative(),
                Mode::Rational => leaves,
            }
        })
        .cloned()
        .collect()
}

/// Whether `op` maps `<x^I>` into itself: every component `(m, P)` must
/// vanish on `I^(m)`.
///
/// The natural definition of `I^(m)` is used only when both the operator
/// and the set are natural; a rational operator can send `x^i` to a
/// negative power, so it is always tested against the rational definition.
pub fn is_invariant(op: &DiffOperator, set: &ExponentSet) -> bool {
    let mode = op.mode().join(set.mode);
    grade_decompose(op).iter().all(|g| {
        im_set_in(set, &g.degree, mode)
            .iter()
            .all(|a| g.euler.eval(a).is_zero())
    })
}

fn kill_factor(set: &ExponentSet, m: &Rational) -> UniPoly {
    UniPoly::from_roots(&im_set(set, m))
}

fn natural_degree(set: &ExponentSet, m: &Rational) -> Result<Option<u32>> {
    if set.mode == Mode::Natural && m.is_negative() {
        if !is_integer(m) {
            return Err(Error::NaturalModeViolation(format!(
                "degree {m} is not an integer"
            )));
        }
        return Ok(to_natural(&-m));
    }
    if set.mode == Mode::Natural && !is_integer(m) {
        return Err(Error::NaturalModeViolation(format!(
            "degree {m} is not an integer"
        )));
    }
    Ok(None)
}

/// The monic element of least order among degree-`m` operators preserving
/// the set. Its order is `|I^(m)|`, plus `-m` for natural negative degrees
/// where the leading factor is `D^(-m)`.
pub fn minimal_operator(set: &ExponentSet, m: &Rational) -> Result<DiffOperator> {
    minimal_factored(set, m)?.expand(set.mode)
}

/// [`minimal_operator`] before expansion.
pub fn minimal_factored(set: &ExponentSet, m: &Rational) -> Result<FactoredOperator> {
    let prefix = natural_degree(set, m)?;
    Ok(FactoredOperator {
        scalar: Rational::one(),
        degree: m.clone(),
        prefix,
        roots: im_set(set, m),
        residual: UniPoly::one(),
    })
}

/// Basis of the degree-`m` operators of order at most `k` that preserve the
/// set: the Euler polynomials `A(s) s^t prod_{a in I^(m)} (s - a)` where
/// `A(s) = s(s-1)...(s+m+1)` for natural negative `m` and `A = 1` otherwise.
pub fn operator_basis(set: &ExponentSet, m: &Rational, k: u32) -> Vec<DiffOperator> {
    operator_basis_components(set, m, k)
        .iter()
        .map(|g| g.to_operator(set.mode).expect("basis component is valid in its mode"))
        .collect()
}

/// [`operator_basis`] in Euler form.
pub fn operator_basis_components(set: &ExponentSet, m: &Rational, k: u32) -> Vec<GradedComponent> {
    let prefix = match natural_degree(set, m) {
        Ok(p) => p.unwrap_or(0),
        // natural operators only have integer degrees
        Err(_) => return Vec::new(),
    };
    let base = &UniPoly::falling(prefix) * &kill_factor(set, m);
    let fixed = base.degree().unwrap_or(0) as u32;
    let dim = (k + 1).saturating_sub(fixed);
    (0..dim)
        .map(|t| GradedComponent::new(m.clone(), &UniPoly::s_pow(t as usize) * &base))
        .collect()
}

/// Independent oracle for [`operator_basis`]: writes the general operator
/// `sum_j c_j x^(j+m) D^j`, imposes `sum_j c_j i(i-1)...(i-j+1) = 0` for
/// every `i in I` with `i + m` outside `I`, and returns a nullspace basis.
/// In natural mode the unknowns with `j + m < 0` are left out.
pub fn brute_force_basis(set: &ExponentSet, m: &Rational, k: u32) -> Vec<DiffOperator> {
    if set.mode == Mode::Natural && !is_integer(m) {
        return Vec::new();
    }
    let orders: Vec<u32> = (0..=k)
        .filter(|&j| set.mode == Mode::Rational || !(m + int(j as i64)).is_negative())
        .collect();
    if orders.is_empty() {
        return Vec::new();
    }
    let rows: Vec<Vec<Rational>> = set
        .iter()
        .filter(|i| !set.contains(&(*i + m)))
        .map(|i| orders.iter().map(|&j| falling_factorial(i, j)).collect())
        .collect();
    let null = if rows.is_empty() {
        (0..orders.len())
            .map(|r| {
                let mut v = vec![Rational::zero(); orders.len()];
                v[r] = Rational::one();
                v
            })
            .collect()
    } else {
        RatMatrix::from_rows(rows).nullspace()
    };
    null.into_iter()
        .map(|v| {
            let terms = orders.iter().zip(v).map(|(&j, c)| OperatorTerm {
                coeff: c,
                x_exp: m + int(j as i64),
                d_order: j,
            });
            DiffOperator::from_terms(terms, set.mode).expect("exponents checked above")
        })
        .collect()
}

/// Whether two lists of operators span the same space, compared through
/// their coefficient vectors.
pub fn same_span(a: &[DiffOperator], b: &[DiffOperator]) -> bool {
    let keys: BTreeSet<(Rational, u32)> = a
        .iter()
        .chain(b)
        .flat_map(|op| op.terms().map(|t| (t.x_exp, t.d_order)).collect::<Vec<_>>())
        .collect();
    let keys: Vec<_> = keys.into_iter().collect();
    let rank = |ops: &mut dyn Iterator<Item = &DiffOperator>| {
        let rows: Vec<Vec<Rational>> = ops
            .map(|op| keys.iter().map(|(e, j)| op.coeff(e, *j)).collect())
            .collect();
        if rows.is_empty() || keys.is_empty() {
            0
        } else {
            RatMatrix::from_rows(rows).rank()
        }
    };
    let ra = rank(&mut a.iter());
    let rb = rank(&mut b.iter());
    ra == rb && rank(&mut a.iter().chain(b)) == ra
}

/// Result of [`normalize`]: `set = (original - shift) / scale`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Normalization {
    pub set: ExponentSet,
    pub shift: Rational,
    pub scale: Rational,
}

/// Moves the least exponent to 0 and divides by the positive generator of
/// the group spanned by the shifted exponents (gcd of numerators over lcm
/// of denominators). The scale is 1 for a one-element set.
pub fn normalize(set: &ExponentSet) -> Normalization {
    let shift = set.min().clone();
    let shifted: Vec<Rational> = set.iter().map(|e| e - &shift).collect();
    let num_gcd = shifted
        .iter()
        .fold(BigInt::zero(), |acc, e| acc.gcd(e.numer()));
    let den_lcm = shifted
        .iter()
        .fold(BigInt::one(), |acc, e| acc.lcm(e.denom()));
    let scale = if num_gcd.is_zero() {
        Rational::one()
    } else {
        Rational::new(num_gcd, den_lcm)
    };
    let set = ExponentSet::new(shifted.iter().map(|e| e / &scale).collect(), set.mode)
        .expect("normalized exponents are distinct natural numbers");
    Normalization { set, shift, scale }
}

/// Whether `0` belongs to the set and the exponents have no common factor.
pub fn is_normalized(set: &ExponentSet) -> bool {
    let n = normalize(set);
    n.shift.is_zero() && n.scale.is_one()
}
