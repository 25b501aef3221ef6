//! Differential operators with power coefficients.
//!
//! An operator is stored in normal order, as a finite sum of terms
//! `c * x^e * D^j` with every power of `x` to the left of every power of
//! `D`. The key of a term is `(e - j, j)`: its degree (how far it moves
//! exponents, since `x^e D^j` sends `x^s` into the line of `x^(s+e-j)`)
//! and its order.
//!
//! A homogeneous piece of degree `m` acts on monomials as
//! `T x^s = P(s) x^(s+m)` for a polynomial `P`, its Euler polynomial. The
//! terms and the Euler polynomial are related through the falling
//! factorial basis: `P(s) = sum_j c_j s(s-1)...(s-j+1)` where `c_j` is the
//! coefficient of `x^(j+m) D^j`.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exactnum::{
    binomial, factorial, falling_factorial, fmt_power, int, is_integer, is_natural, GenPolynomial,
    Rational, UniPoly,
};

/// Which exponents are allowed: nonnegative integers (ordinary
/// polynomial coefficients) or arbitrary rationals.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Mode {
    #[default]
    Natural,
    Rational,
}

impl Mode {
    /// The mode of a result built from two operands; natural operators are
    /// also valid rational operators.
    pub fn join(self, other: Mode) -> Mode {
        if self == Mode::Natural && other == Mode::Natural {
            Mode::Natural
        } else {
            Mode::Rational
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Natural => "natural",
            Mode::Rational => "rational",
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// One term `coeff * x^x_exp * D^d_order`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OperatorTerm {
    pub coeff: Rational,
    pub x_exp: Rational,
    pub d_order: u32,
}

impl OperatorTerm {
    pub fn degree(&self) -> Rational {
        &self.x_exp - int(self.d_order as i64)
    }
}

/// A normal-ordered differential operator.
///
/// Equality compares terms only; the mode records which exponents the
/// operator may legally carry.
#[derive(Clone, Debug, Default)]
pub struct DiffOperator {
    terms: BTreeMap<(Rational, u32), Rational>,
    mode: Mode,
}

impl PartialEq for DiffOperator {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms
    }
}

impl Eq for DiffOperator {}

fn natural_check(x_exp: &Rational, d_order: u32) -> Result<()> {
    if is_natural(x_exp) {
        Ok(())
    } else {
        Err(Error::NaturalModeViolation(format!(
            "term x^({x_exp})*D^{d_order} has a non-polynomial coefficient"
        )))
    }
}

impl DiffOperator {
    pub fn zero(mode: Mode) -> Self {
        Self {
            terms: BTreeMap::new(),
            mode,
        }
    }

    pub fn constant(c: Rational, mode: Mode) -> Self {
        let mut t = Self::zero(mode);
        t.add_raw(Rational::zero(), 0, c);
        t
    }

    pub fn one(mode: Mode) -> Self {
        Self::constant(Rational::one(), mode)
    }

    /// Multiplication by `x^e`.
    pub fn x_pow(e: Rational, mode: Mode) -> Result<Self> {
        Self::monomial(Rational::one(), e, 0, mode)
    }

    /// `D^j`.
    pub fn d_pow(j: u32, mode: Mode) -> Self {
        let mut t = Self::zero(mode);
        t.add_raw(-int(j as i64), j, Rational::one());
        t
    }

    /// The Euler operator `x D`.
    pub fn euler(mode: Mode) -> Self {
        let mut t = Self::zero(mode);
        t.add_raw(Rational::zero(), 1, Rational::one());
        t
    }

    /// `c * x^e * D^j`.
    pub fn monomial(c: Rational, e: Rational, j: u32, mode: Mode) -> Result<Self> {
        if mode == Mode::Natural && !c.is_zero() {
            natural_check(&e, j)?;
        }
        let mut t = Self::zero(mode);
        t.add_raw(e - int(j as i64), j, c);
        Ok(t)
    }

    pub fn from_terms<I: IntoIterator<Item = OperatorTerm>>(terms: I, mode: Mode) -> Result<Self> {
        let mut t = Self::zero(mode);
        for term in terms {
            let deg = term.degree();
            t.add_raw(deg, term.d_order, term.coeff);
        }
        t.check_mode()?;
        Ok(t)
    }

    fn check_mode(&self) -> Result<()> {
        if self.mode == Mode::Natural {
            for term in self.terms() {
                natural_check(&term.x_exp, term.d_order)?;
            }
        }
        Ok(())
    }

    /// Adds `c * x^(degree + j) D^j` without any mode check.
    fn add_raw(&mut self, degree: Rational, j: u32, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry((degree, j)) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    /// Re-tags the operator; fails when asked for natural mode and some
    /// exponent is not a nonnegative integer.
    pub fn with_mode(mut self, mode: Mode) -> Result<Self> {
        self.mode = mode;
        self.check_mode()?;
        Ok(self)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in increasing `(degree, order)`.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = OperatorTerm> + '_ {
        self.terms.iter().map(|((deg, j), c)| OperatorTerm {
            coeff: c.clone(),
            x_exp: deg + int(*j as i64),
            d_order: *j,
        })
    }

    /// Coefficient of `x^e D^j`.
    pub fn coeff(&self, e: &Rational, j: u32) -> Rational {
        self.terms
            .get(&(e - int(j as i64), j))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    /// Highest power of `D`; 0 for the zero operator.
    pub fn order(&self) -> u32 {
        self.terms.keys().map(|(_, j)| *j).max().unwrap_or(0)
    }

    /// Largest degree among the terms; `None` for the zero operator.
    pub fn degree(&self) -> Option<Rational> {
        self.terms.keys().next_back().map(|(d, _)| d.clone())
    }

    /// Distinct degrees, decreasing.
    pub fn degrees(&self) -> Vec<Rational> {
        let mut out: Vec<Rational> = Vec::new();
        for (d, _) in self.terms.keys().rev() {
            if out.last() != Some(d) {
                out.push(d.clone());
            }
        }
        out
    }

    /// The homogeneous part of the given degree.
    pub fn component(&self, degree: &Rational) -> DiffOperator {
        DiffOperator {
            terms: self
                .terms
                .iter()
                .filter(|((d, _), _)| d == degree)
                .map(|(k, v)| (k.clone(), v.clone()))
                .collect(),
            mode: self.mode,
        }
    }

    pub fn is_homogeneous(&self) -> bool {
        self.degrees().len() <= 1
    }

    pub fn scale(&self, c: &Rational) -> DiffOperator {
        let mut out = DiffOperator::zero(self.mode);
        for (k, v) in &self.terms {
            out.add_raw(k.0.clone(), k.1, v * c);
        }
        out
    }

    pub fn pow(&self, n: u32) -> DiffOperator {
        (0..n).fold(DiffOperator::one(self.mode), |acc, _| &acc * self)
    }

    /// Image of a generalized polynomial:
    /// `x^e D^j (x^i) = i(i-1)...(i-j+1) x^(i+e-j)`.
    pub fn apply(&self, p: &GenPolynomial) -> GenPolynomial {
        let mut out = GenPolynomial::zero();
        for ((deg, j), c) in &self.terms {
            for (i, a) in p.terms() {
                let ff = falling_factorial(i, *j);
                if ff.is_zero() {
                    continue;
                }
                out.add_term(i + deg, c * a * ff);
            }
        }
        out
    }
}

/// Normal-ordered product `A B` (apply `B` first), using
/// `D^j x^f = sum_t C(j,t) f(f-1)...(f-t+1) x^(f-t) D^(j-t)`.
///
/// When both operands are natural the falling factorials vanish before a
/// negative exponent can appear, so the product is natural as well.
pub fn normal_order_mul(a: &DiffOperator, b: &DiffOperator) -> DiffOperator {
    let mut out = DiffOperator::zero(a.mode.join(b.mode));
    for ((deg_a, j), ca) in &a.terms {
        for ((deg_b, l), cb) in &b.terms {
            let f = deg_b + int(*l as i64);
            let cab = ca * cb;
            for t in 0..=*j {
                let ff = falling_factorial(&f, t);
                if ff.is_zero() {
                    break;
                }
                out.add_raw(deg_a + deg_b, j - t + l, &cab * binomial(*j, t) * ff);
            }
        }
    }
    out
}

impl Mul for &DiffOperator {
    type Output = DiffOperator;

    fn mul(self, rhs: &DiffOperator) -> DiffOperator {
        normal_order_mul(self, rhs)
    }
}

impl Add for &DiffOperator {
    type Output = DiffOperator;

    fn add(self, rhs: &DiffOperator) -> DiffOperator {
        let mut out = self.clone();
        out.mode = self.mode.join(rhs.mode);
        for (k, v) in &rhs.terms {
            out.add_raw(k.0.clone(), k.1, v.clone());
        }
        out
    }
}

impl Sub for &DiffOperator {
    type Output = DiffOperator;

    fn sub(self, rhs: &DiffOperator) -> DiffOperator {
        self + &(-rhs)
    }
}

impl Neg for &DiffOperator {
    type Output = DiffOperator;

    fn neg(self) -> DiffOperator {
        self.scale(&-Rational::one())
    }
}

macro_rules! forward_owned {
    ($($tr:ident :: $m:ident),*) => {$(
        impl $tr for DiffOperator {
            type Output = DiffOperator;
            fn $m(self, rhs: DiffOperator) -> DiffOperator {
                (&self).$m(&rhs)
            }
        }
    )*};
}
forward_owned!(Add::add, Sub::sub, Mul::mul);

impl fmt::Display for DiffOperator {
    /// Terms by decreasing degree, then decreasing order:
    /// `x^4*D^2 - 2*x^3*D`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (n, ((deg, j), c)) in self.terms.iter().rev().enumerate() {
            let e = deg + int(*j as i64);
            let mut parts = Vec::new();
            if !e.is_zero() {
                parts.push(fmt_power("x", &e));
            }
            match j {
                0 => {}
                1 => parts.push("D".to_string()),
                _ => parts.push(format!("D^{j}")),
            }
            let mag = c.abs();
            let body = if parts.is_empty() {
                mag.to_string()
            } else if mag.is_one() {
                parts.join("*")
            } else {
                format!("{mag}*{}", parts.join("*"))
            };
            match (n, c.is_negative()) {
                (0, true) => write!(f, "-{body}")?,
                (0, false) => write!(f, "{body}")?,
                (_, true) => write!(f, " - {body}")?,
                (_, false) => write!(f, " + {body}")?,
            }
        }
        Ok(())
    }
}

/// A homogeneous operator of degree `degree`, stored through its Euler
/// polynomial: `T x^s = euler(s) x^(s + degree)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GradedComponent {
    pub degree: Rational,
    pub euler: UniPoly,
}

impl GradedComponent {
    pub fn new(degree: Rational, euler: UniPoly) -> Self {
        Self { degree, euler }
    }

    pub fn is_zero(&self) -> bool {
        self.euler.is_zero()
    }

    /// Order of the represented operator.
    pub fn order(&self) -> u32 {
        self.euler.degree().unwrap_or(0) as u32
    }

    pub fn to_operator(&self, mode: Mode) -> Result<DiffOperator> {
        euler_to_terms(self, mode)
    }

    /// `self` after `other`: degrees add and
    /// `P(s) = P_self(s + m_other) P_other(s)`.
    pub fn compose(&self, other: &GradedComponent) -> GradedComponent {
        GradedComponent {
            degree: &self.degree + &other.degree,
            euler: &self.euler.shift(&other.degree) * &other.euler,
        }
    }
}

impl fmt::Display for GradedComponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "degree {}: P(s) = {}", self.degree, self.euler)
    }
}

/// Euler polynomial of a homogeneous operator.
pub fn terms_to_euler(op: &DiffOperator) -> Result<GradedComponent> {
    let degrees = op.degrees();
    match degrees.len() {
        0 => Err(Error::ZeroOperator("a zero operator has no degree")),
        1 => Ok(euler_of(op, &degrees[0])),
        _ => Err(Error::NotHomogeneous(
            degrees
                .iter()
                .map(ToString::to_string)
                .collect::<Vec<_>>()
                .join(", "),
        )),
    }
}

fn euler_of(op: &DiffOperator, degree: &Rational) -> GradedComponent {
    let mut p = UniPoly::zero();
    for ((d, j), c) in &op.terms {
        if d == degree {
            p = &p + &UniPoly::falling(*j).scale(c);
        }
    }
    GradedComponent::new(degree.clone(), p)
}

/// Inverse of [`terms_to_euler`]: `c_j = (Delta^j P)(0) / j!` with the
/// forward difference `Delta`.
///
/// In natural mode the degree must be an integer and every `c_j` with
/// `j + m < 0` must vanish, otherwise the component is not an operator with
/// polynomial coefficients.
pub fn euler_to_terms(g: &GradedComponent, mode: Mode) -> Result<DiffOperator> {
    let m = &g.degree;
    let mut out = DiffOperator::zero(mode);
    let Some(n) = g.euler.degree() else {
        return Ok(out);
    };
    if mode == Mode::Natural && !is_integer(m) {
        return Err(Error::NaturalModeViolation(format!(
            "degree {m} is not an integer"
        )));
    }
    let mut diffs: Vec<Rational> = (0..=n).map(|t| g.euler.eval(&int(t as i64))).collect();
    for j in 0..=n {
        let c = diffs[0].clone() / factorial(j as u32);
        if !c.is_zero() {
            let e = m + int(j as i64);
            if mode == Mode::Natural && e.is_negative() {
                return Err(Error::NaturalModeViolation(format!(
                    "component of degree {m} needs the term x^({e})*D^{j}"
                )));
            }
            out.add_raw(m.clone(), j as u32, c);
        }
        for t in 0..diffs.len() - 1 {
            diffs[t] = &diffs[t + 1] - &diffs[t];
        }
        diffs.pop();
    }
    Ok(out)
}

/// Homogeneous components, by decreasing degree. The zero operator has
/// none.
pub fn grade_decompose(op: &DiffOperator) -> Vec<GradedComponent> {
    op.degrees().iter().map(|d| euler_of(op, d)).collect()
}
