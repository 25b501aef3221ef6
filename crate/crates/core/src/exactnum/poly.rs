use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::rational::{fmt_power, is_natural, Rational};

/// A finite linear combination of powers `x^e` with rational exponents and
/// rational coefficients. Zero coefficients are never stored, so two
/// polynomials are equal iff their term maps are equal.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct GenPolynomial {
    terms: BTreeMap<Rational, Rational>,
}

impl GenPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(c, Rational::zero())
    }

    /// `c * x^e`.
    pub fn monomial(c: Rational, e: Rational) -> Self {
        let mut p = Self::zero();
        p.add_term(e, c);
        p
    }

    pub fn x_pow(e: Rational) -> Self {
        Self::monomial(Rational::one(), e)
    }

    /// Builds a polynomial from `(exponent, coefficient)` pairs, merging
    /// repeated exponents.
    pub fn from_terms<I: IntoIterator<Item = (Rational, Rational)>>(terms: I) -> Self {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    pub(crate) fn add_term(&mut self, e: Rational, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
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

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in increasing exponent order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Rational, &Rational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, e: &Rational) -> Rational {
        self.terms.get(e).cloned().unwrap_or_else(Rational::zero)
    }

    /// Largest exponent; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<&Rational> {
        self.terms.keys().next_back()
    }

    /// Smallest exponent; `None` for the zero polynomial.
    pub fn low_degree(&self) -> Option<&Rational> {
        self.terms.keys().next()
    }

    pub fn leading_coeff(&self) -> Option<&Rational> {
        self.terms.values().next_back()
    }

    /// Whether every exponent is a nonnegative integer, i.e. this is an
    /// ordinary polynomial.
    pub fn is_natural(&self) -> bool {
        self.terms.keys().all(is_natural)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect(),
        }
    }

    /// Multiplies by `x^e`.
    pub fn shift(&self, e: &Rational) -> Self {
        Self {
            terms: self.terms.iter().map(|(k, v)| (k + e, v.clone())).collect(),
        }
    }
}

impl Add for &GenPolynomial {
    type Output = GenPolynomial;

    fn add(self, rhs: &GenPolynomial) -> GenPolynomial {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl Sub for &GenPolynomial {
    type Output = GenPolynomial;

    fn sub(self, rhs: &GenPolynomial) -> GenPolynomial {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), -c);
        }
        out
    }
}

impl Neg for &GenPolynomial {
    type Output = GenPolynomial;

    fn neg(self) -> GenPolynomial {
        GenPolynomial {
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }
}

impl Mul for &GenPolynomial {
    type Output = GenPolynomial;

    fn mul(self, rhs: &GenPolynomial) -> GenPolynomial {
        let mut out = GenPolynomial::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }
}

macro_rules! forward_owned {
    ($($tr:ident :: $m:ident),*) => {$(
        impl $tr for GenPolynomial {
            type Output = GenPolynomial;
            fn $m(self, rhs: GenPolynomial) -> GenPolynomial {
                (&self).$m(&rhs)
            }
        }
    )*};
}
forward_owned!(Add::add, Sub::sub, Mul::mul);

impl fmt::Display for GenPolynomial {
    /// Descending exponents with explicit `*`, e.g. `2*x^3 - 1/2*x^(1/2) + 1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (n, (e, c)) in self.terms.iter().rev().enumerate() {
            let body = if e.is_zero() {
                c.abs().to_string()
            } else if c.abs().is_one() {
                fmt_power("x", e)
            } else {
                format!("{}*{}", c.abs(), fmt_power("x", e))
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
