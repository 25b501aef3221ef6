use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Arbitrary-precision rational, always in lowest terms with a positive
/// denominator.
pub type Rational = BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `num / den`; panics if `den == 0`.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn is_integer(q: &Rational) -> bool {
    q.denom().is_one()
}

pub fn is_natural(q: &Rational) -> bool {
    is_integer(q) && !q.is_negative()
}

/// The value as a `u32`, if it is a natural number that fits.
pub fn to_natural(q: &Rational) -> Option<u32> {
    if is_natural(q) {
        q.numer().to_u32()
    } else {
        None
    }
}

/// `s (s-1) ... (s-j+1)`, the empty product being 1.
pub fn falling_factorial(s: &Rational, j: u32) -> Rational {
    let mut acc = Rational::one();
    let mut t = s.clone();
    for _ in 0..j {
        if acc.is_zero() {
            break;
        }
        acc *= &t;
        t -= Rational::one();
    }
    acc
}

pub fn factorial(n: u32) -> Rational {
    (1..=n).fold(Rational::one(), |acc, k| acc * int(k as i64))
}

pub fn binomial(n: u32, k: u32) -> Rational {
    if k > n {
        return Rational::zero();
    }
    falling_factorial(&int(n as i64), k) / factorial(k)
}

/// Parses `p`, `-p`, `p/q` or `-p/q` (decimal digits, `q > 0`), tolerating
/// surrounding whitespace.
pub fn parse_rational(text: &str) -> Option<Rational> {
    let text = text.trim();
    let (neg, body) = match text.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, text),
    };
    let (num, den) = match body.split_once('/') {
        Some((n, d)) => (n, d),
        None => (body, "1"),
    };
    let digits = |s: &str| !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit());
    if !digits(num) || !digits(den) {
        return None;
    }
    let num: BigInt = num.parse().ok()?;
    let den: BigInt = den.parse().ok()?;
    if den.is_zero() {
        return None;
    }
    let q = Rational::new(num, den);
    Some(if neg { -q } else { q })
}

/// Prints `base^e` the way the parser reads it back: `x`, `x^3`,
/// `x^(1/2)`, `x^(-2)`. The caller handles `e == 0`.
pub fn fmt_power(base: &str, e: &Rational) -> String {
    if e.is_one() {
        base.to_string()
    } else if is_natural(e) {
        format!("{base}^{e}")
    } else {
        format!("{base}^({e})")
    }
}
