//! Factorization of homogeneous operators into commuting Euler factors.
//!
//! A component of degree `m` with Euler polynomial
//! `P(s) = c (s - a_1) ... (s - a_k) R(s)` is the operator
//! `c x^m (xD - a_1) ... (xD - a_k) R(xD)`. For natural negative degrees the
//! power `x^m` is not available and `D^(-m)` takes its place; the roots
//! `0, 1, ..., -m-1` that `D^(-m)` contributes are then left out of the
//! factor list. Roots are extracted over the rationals only; whatever does
//! not split stays in the monic residual `R`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exactnum::{fmt_power, int, is_integer, Rational, UniPoly};
use crate::weyl::{euler_to_terms, DiffOperator, GradedComponent, Mode};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FactoredOperator {
    pub scalar: Rational,
    pub degree: Rational,
    /// `Some(s)` when the operator is written `D^s (...)`; then `degree == -s`.
    pub prefix: Option<u32>,
    /// Rational roots with multiplicity, sorted increasingly.
    pub roots: Vec<Rational>,
    /// Monic, with no rational roots. Constant 1 when `P` splits.
    pub residual: UniPoly,
}

impl FactoredOperator {
    /// Euler polynomial of the product.
    pub fn euler_poly(&self) -> UniPoly {
        let prefix = UniPoly::falling(self.prefix.unwrap_or(0));
        let roots = UniPoly::from_roots(&self.roots);
        (&(&prefix * &roots) * &self.residual).scale(&self.scalar)
    }

    pub fn component(&self) -> GradedComponent {
        GradedComponent::new(self.degree.clone(), self.euler_poly())
    }

    /// Multiplies the factors back out into normal order.
    pub fn expand(&self, mode: Mode) -> Result<DiffOperator> {
        euler_to_terms(&self.component(), mode)
    }
}

impl fmt::Display for FactoredOperator {
    /// `c*x^m*(x*D - a)^k*...*[R(s)]` or `c*D^s*(...)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.prefix {
            Some(1) => parts.push("D".to_string()),
            Some(s) => parts.push(format!("D^{s}")),
            None if self.degree.is_zero() => {}
            None => parts.push(fmt_power("x", &self.degree)),
        }
        let mut i = 0;
        while i < self.roots.len() {
            let a = &self.roots[i];
            let mult = self.roots[i..].iter().take_while(|b| *b == a).count();
            let base = if a.is_zero() {
                "(x*D)".to_string()
            } else if a.is_negative() {
                format!("(x*D + {})", -a)
            } else {
                format!("(x*D - {a})")
            };
            parts.push(if mult == 1 {
                base
            } else {
                format!("{base}^{mult}")
            });
            i += mult;
        }
        if self.residual.degree().unwrap_or(0) > 0 {
            parts.push(format!("[{}]", self.residual));
        }
        let body = parts.join("*");
        if parts.is_empty() {
            write!(f, "{}", self.scalar)
        } else if self.scalar.is_one() {
            f.write_str(&body)
        } else if (-&self.scalar).is_one() {
            write!(f, "-{body}")
        } else {
            write!(f, "{}*{body}", self.scalar)
        }
    }
}

/// Factors a nonzero homogeneous component.
pub fn factor_graded(g: &GradedComponent, mode: Mode) -> Result<FactoredOperator> {
    let Some(lc) = g.euler.leading().cloned() else {
        return Err(Error::ZeroOperator("the zero component has no factorization"));
    };
    let (mut roots, residual) = rational_roots(&g.euler);
    let mut prefix = None;
    if mode == Mode::Natural && g.degree.is_negative() {
        if !is_integer(&g.degree) {
            return Err(Error::NaturalModeViolation(format!(
                "degree {} is not an integer",
                g.degree
            )));
        }
        let s = (-&g.degree).to_integer().to_u32().ok_or_else(|| {
            Error::NaturalModeViolation(format!("degree {} is out of range", g.degree))
        })?;
        for t in 0..s {
            let t = int(t as i64);
            let pos = roots.iter().position(|r| *r == t).ok_or_else(|| {
                Error::NaturalModeViolation(format!(
                    "degree {} component does not vanish at {t}",
                    g.degree
                ))
            })?;
            roots.remove(pos);
        }
        prefix = Some(s);
    }
    Ok(FactoredOperator {
        scalar: lc,
        degree: g.degree.clone(),
        prefix,
        roots,
        residual,
    })
}

/// `D^s` and its factorization `x^(-s) (xD - (s-1)) ... (xD - 1) xD`.
pub fn partial_power_identity(s: u32) -> (DiffOperator, FactoredOperator) {
    let lhs = DiffOperator::d_pow(s, Mode::Rational);
    let rhs = FactoredOperator {
        scalar: Rational::one(),
        degree: -int(s as i64),
        prefix: None,
        roots: (0..s).map(|t| int(t as i64)).collect(),
        residual: UniPoly::one(),
    };
    (lhs, rhs)
}

/// All rational roots of a nonzero `p`, with multiplicity and sorted, plus
/// the monic cofactor.
///
/// Rather than enumerating divisors of the end coefficients, which needs
/// integer factorization, the real roots of the squarefree part are
/// isolated with a Sturm sequence. A rational root `a/b` has `b | L`, the
/// leading coefficient of the primitive integer form, and two fractions
/// with denominators at most `L` are at least `1/L^2` apart; so once an
/// isolating interval is narrower than that, the simplest fraction in it
/// is the only possible rational root there.
pub fn rational_roots(p: &UniPoly) -> (Vec<Rational>, UniPoly) {
    let mut q = p.monic();
    let mut roots = Vec::new();
    while q.degree().unwrap_or(0) > 0 && q.coeff(0).is_zero() {
        roots.push(Rational::zero());
        q = q.div_linear(&Rational::zero()).0;
    }
    if q.degree().unwrap_or(0) > 0 {
        let square_free = q.div_rem(&q.gcd(&q.derivative())).0;
        for r in isolate_rational_roots(&square_free) {
            while q.degree().unwrap_or(0) > 0 && q.eval(&r).is_zero() {
                roots.push(r.clone());
                q = q.div_linear(&r).0;
            }
        }
    }
    roots.sort();
    (roots, q)
}

/// Rational roots of a squarefree polynomial of positive degree.
fn isolate_rational_roots(g: &UniPoly) -> Vec<Rational> {
    if g.degree() == Some(1) {
        return vec![-g.coeff(0) / g.coeff(1)];
    }
    let lead = primitive_integer_form(g).pop().expect("nonconstant").abs();
    let lead = Rational::from_integer(lead);
    let resolution = Rational::one() / (&lead * &lead);
    let sturm: Vec<Vec<BigInt>> = sturm_sequence(g).iter().map(primitive_integer_form).collect();
    // Cauchy: every root lies strictly inside (-bound, bound)
    let lc = g.leading().expect("nonzero").abs();
    let bound = Rational::one()
        + g.coeffs()
            .iter()
            .map(|c| c.abs() / &lc)
            .fold(Rational::zero(), |a, b| a.max(b));
    let mut out = Vec::new();
    let (vlo, vhi) = (variations(&sturm, &-&bound), variations(&sturm, &bound));
    let mut stack = vec![(-bound.clone(), vlo, bound, vhi)];
    while let Some((lo, vlo, hi, vhi)) = stack.pop() {
        let count = vlo - vhi;
        if count == 0 {
            continue;
        }
        if count == 1 {
            let guess = simplest_between(&lo, &hi);
            if g.eval(&guess).is_zero() {
                out.push(guess);
                continue;
            }
            if &hi - &lo < resolution {
                continue;
            }
        }
        let mid = split_point(g, &lo, &hi);
        let vmid = variations(&sturm, &mid);
        stack.push((lo, vlo, mid.clone(), vmid));
        stack.push((mid, vmid, hi, vhi));
    }
    out
}

/// A non-root near the midpoint, so Sturm counts stay well defined.
fn split_point(g: &UniPoly, lo: &Rational, hi: &Rational) -> Rational {
    let width = hi - lo;
    std::iter::once(int(2))
        .chain((3..).map(int))
        .map(|k| lo + &width / k)
        .find(|c| !g.eval(c).is_zero())
        .expect("finitely many roots")
}

fn sturm_sequence(g: &UniPoly) -> Vec<UniPoly> {
    let mut seq = vec![g.clone(), g.derivative()];
    loop {
        let n = seq.len();
        let r = seq[n - 2].div_rem(&seq[n - 1]).1;
        if r.is_zero() {
            return seq;
        }
        seq.push(-&r);
    }
}

fn variations(seq: &[Vec<BigInt>], x: &Rational) -> i64 {
    let mut last = 0;
    let mut n = 0;
    for p in seq {
        let s = sign_at(p, x);
        if s == 0 {
            continue;
        }
        if last != 0 && s != last {
            n += 1;
        }
        last = s;
    }
    n
}

/// Sign of an integer polynomial at `x = a/b`, from the homogenized value
/// `sum c_i a^i b^(n-i)`, which has the same sign since `b > 0`.
fn sign_at(coeffs: &[BigInt], x: &Rational) -> i8 {
    let (a, b) = (x.numer(), x.denom());
    let mut acc = BigInt::zero();
    let mut bpow = BigInt::one();
    for c in coeffs.iter().rev() {
        acc = acc * a + c * &bpow;
        bpow *= b;
    }
    match acc.sign() {
        num_bigint::Sign::Plus => 1,
        num_bigint::Sign::Minus => -1,
        num_bigint::Sign::NoSign => 0,
    }
}

/// The fraction with the least denominator in `[lo, hi]`, `lo <= hi`.
fn simplest_between(lo: &Rational, hi: &Rational) -> Rational {
    if lo.is_positive() {
        let c = lo.ceil();
        if &c <= hi {
            return c;
        }
        let f = lo.floor();
        // same integer part: recurse on the reciprocals of the fractional parts
        let inner = simplest_between(&(Rational::one() / (hi - &f)), &(Rational::one() / (lo - &f)));
        f + Rational::one() / inner
    } else if hi.is_negative() {
        -simplest_between(&-hi, &-lo)
    } else {
        Rational::zero()
    }
}

/// Integer coefficients with content 1, proportional to `p`.
fn primitive_integer_form(p: &UniPoly) -> Vec<BigInt> {
    let lcm = p
        .coeffs()
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = p
        .coeffs()
        .iter()
        .map(|c| (c * Rational::from_integer(lcm.clone())).to_integer())
        .collect();
    let content = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    ints.into_iter().map(|c| c / &content).collect()
}
