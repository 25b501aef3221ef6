//! Recursive-descent parser for operator and polynomial expressions.
//!
//! ```text
//! expr     := term (('+' | '-') term)*
//! term     := factor ('*' factor)*
//! factor   := ['-'] atom ['^' exponent]
//! atom     := number | 'x' | 'D' | '(' expr ')'
//! exponent := integer | '(' ['-'] number ')'
//! number   := digits ['/' digits]
//! ```
//!
//! Multiplication must be written out. Products evaluate left to right in
//! normal order, so `D*x` is `x*D + 1`.

use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exactnum::{int, is_integer, is_natural, parse_rational, GenPolynomial, Rational};
use crate::filtered::PolySubspace;
use crate::invariant::ExponentSet;
use crate::weyl::{DiffOperator, Mode};

/// Largest integer power accepted on `D`, a number or a group.
pub const MAX_POWER: u32 = 64;
/// Deepest parenthesis nesting accepted.
pub const MAX_DEPTH: usize = 64;
/// Bound on the number of non-constant factors an expression multiplies
/// out to, counting `x^e` as one; keeps nested powers from exploding.
pub const MAX_EXPANSION: u64 = 64;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Num(Rational),
    X,
    D,
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    /// Exponents of anything but `x` are nonnegative integers (integers
    /// for numbers), enforced by the parser.
    Pow(Box<Expr>, Rational),
    Neg(Box<Expr>),
    Group(Box<Expr>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Num(Rational),
    X,
    D,
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
}

fn syntax(pos: usize, msg: impl Into<String>) -> Error {
    Error::Syntax {
        pos,
        msg: msg.into(),
    }
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let tok = match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'x' => Tok::X,
            b'D' => Tok::D,
            b'+' => Tok::Plus,
            b'-' => Tok::Minus,
            b'*' => Tok::Star,
            b'^' => Tok::Caret,
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            b'0'..=b'9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                if i + 1 < bytes.len() && bytes[i] == b'/' && bytes[i + 1].is_ascii_digit() {
                    i += 1;
                    while i < bytes.len() && bytes[i].is_ascii_digit() {
                        i += 1;
                    }
                }
                let q = parse_rational(&text[start..i])
                    .ok_or_else(|| syntax(start, "division by zero in a number"))?;
                out.push((start, Tok::Num(q)));
                continue;
            }
            _ => {
                let ch = text[i..].chars().next().unwrap_or('?');
                return Err(syntax(i, format!("unexpected character '{ch}'")));
            }
        };
        out.push((i, tok));
        i += 1;
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    at: usize,
    end: usize,
    depth: usize,
    first_d: Option<usize>,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|(_, t)| t)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map_or(self.end, |(p, _)| *p)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.at).map(|(_, t)| t.clone());
        self.at += 1;
        t
    }

    fn expect(&mut self, want: Tok, what: &str) -> Result<()> {
        let pos = self.pos();
        match self.bump() {
            Some(t) if t == want => Ok(()),
            Some(_) => Err(syntax(pos, format!("expected {what}"))),
            None => Err(syntax(pos, format!("expected {what}, found end of input"))),
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.bump();
                    lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Some(Tok::Minus) => {
                    self.bump();
                    lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.factor()?;
        while self.peek() == Some(&Tok::Star) {
            self.bump();
            lhs = Expr::Mul(Box::new(lhs), Box::new(self.factor()?));
        }
        Ok(lhs)
    }

    fn factor(&mut self) -> Result<Expr> {
        let neg = if self.peek() == Some(&Tok::Minus) {
            self.bump();
            true
        } else {
            false
        };
        let mut base = self.atom()?;
        if self.peek() == Some(&Tok::Caret) {
            self.bump();
            let pos = self.pos();
            let e = self.exponent()?;
            let ok = match &base {
                Expr::X => true,
                Expr::Num(q) => is_integer(&e) && !(q.is_zero() && e.is_negative()),
                _ => is_natural(&e),
            };
            if !ok {
                return Err(syntax(pos, format!("exponent {e} is not allowed here")));
            }
            if !matches!(base, Expr::X) && e > int(MAX_POWER as i64) {
                return Err(syntax(pos, format!("exponent {e} exceeds {MAX_POWER}")));
            }
            base = Expr::Pow(Box::new(base), e);
        }
        Ok(if neg { Expr::Neg(Box::new(base)) } else { base })
    }

    fn atom(&mut self) -> Result<Expr> {
        let pos = self.pos();
        match self.bump() {
            Some(Tok::Num(q)) => Ok(Expr::Num(q)),
            Some(Tok::X) => Ok(Expr::X),
            Some(Tok::D) => {
                self.first_d.get_or_insert(pos);
                Ok(Expr::D)
            }
            Some(Tok::LParen) => {
                self.depth += 1;
                if self.depth > MAX_DEPTH {
                    return Err(syntax(pos, "parentheses nested too deeply"));
                }
                let inner = self.expr()?;
                self.expect(Tok::RParen, "')'")?;
                self.depth -= 1;
                Ok(Expr::Group(Box::new(inner)))
            }
            Some(_) => Err(syntax(pos, "expected a number, 'x', 'D' or '('")),
            None => Err(syntax(pos, "unexpected end of input")),
        }
    }

    fn exponent(&mut self) -> Result<Rational> {
        let pos = self.pos();
        match self.bump() {
            Some(Tok::Num(q)) if is_integer(&q) => Ok(q),
            Some(Tok::Num(_)) => Err(syntax(pos, "fractional exponents need parentheses")),
            Some(Tok::LParen) => {
                let neg = if self.peek() == Some(&Tok::Minus) {
                    self.bump();
                    true
                } else {
                    false
                };
                let npos = self.pos();
                let q = match self.bump() {
                    Some(Tok::Num(q)) => q,
                    _ => return Err(syntax(npos, "expected a number in the exponent")),
                };
                self.expect(Tok::RParen, "')'")?;
                Ok(if neg { -q } else { q })
            }
            _ => Err(syntax(pos, "expected an exponent")),
        }
    }
}

fn parse_tree(text: &str) -> Result<(Expr, Option<usize>)> {
    let toks = lex(text)?;
    let mut p = Parser {
        toks,
        at: 0,
        end: text.len(),
        depth: 0,
        first_d: None,
    };
    let e = p.expr()?;
    if p.at < p.toks.len() {
        return Err(syntax(p.pos(), "unexpected trailing input"));
    }
    if expansion(&e) > MAX_EXPANSION {
        return Err(syntax(0, format!("expression multiplies out past {MAX_EXPANSION} factors")));
    }
    Ok((e, p.first_d))
}

fn expansion(e: &Expr) -> u64 {
    match e {
        Expr::Num(_) => 0,
        Expr::X | Expr::D => 1,
        Expr::Add(a, b) | Expr::Sub(a, b) => expansion(a).max(expansion(b)),
        Expr::Mul(a, b) => expansion(a).saturating_add(expansion(b)),
        Expr::Neg(a) | Expr::Group(a) => expansion(a),
        Expr::Pow(base, n) => match base.as_ref() {
            Expr::X => 1,
            other => expansion(other).saturating_mul(n.to_integer().to_u64().unwrap_or(0)),
        },
    }
}

/// Parses an expression into its syntax tree.
pub fn parse_expr(text: &str) -> Result<Expr> {
    parse_tree(text).map(|(e, _)| e)
}

/// Evaluates a tree into a normal-ordered operator.
pub fn eval_operator(e: &Expr, mode: Mode) -> Result<DiffOperator> {
    Ok(match e {
        Expr::Num(q) => DiffOperator::constant(q.clone(), mode),
        Expr::X => DiffOperator::x_pow(int(1), mode)?,
        Expr::D => DiffOperator::d_pow(1, mode),
        Expr::Add(a, b) => &eval_operator(a, mode)? + &eval_operator(b, mode)?,
        Expr::Sub(a, b) => &eval_operator(a, mode)? - &eval_operator(b, mode)?,
        Expr::Mul(a, b) => &eval_operator(a, mode)? * &eval_operator(b, mode)?,
        Expr::Neg(a) => -&eval_operator(a, mode)?,
        Expr::Group(a) => eval_operator(a, mode)?,
        Expr::Pow(base, n) => match base.as_ref() {
            Expr::X => DiffOperator::x_pow(n.clone(), mode)?,
            Expr::D => DiffOperator::d_pow(n.to_u32().expect("checked by the parser"), mode),
            Expr::Num(q) => {
                let k = n.to_integer().to_i32().expect("checked by the parser");
                DiffOperator::constant(num_traits::pow::Pow::pow(q, k), mode)
            }
            other => eval_operator(other, mode)?.pow(n.to_u32().expect("checked by the parser")),
        },
    })
}

/// Parses an operator such as `x^4*D^2 - 2*x^3*D`.
pub fn parse_operator(text: &str, mode: Mode) -> Result<DiffOperator> {
    eval_operator(&parse_expr(text)?, mode)
}

/// Parses a polynomial such as `2*x^3 - 1/2*x^(1/2) + 1`; `D` is
/// rejected.
pub fn parse_polynomial(text: &str, mode: Mode) -> Result<GenPolynomial> {
    let (e, first_d) = parse_tree(text)?;
    if let Some(pos) = first_d {
        return Err(syntax(pos, "'D' is not allowed in a polynomial"));
    }
    let op = eval_operator(&e, mode)?;
    Ok(GenPolynomial::from_terms(op.terms().map(|t| (t.x_exp, t.coeff))))
}

/// Parses `0,1,3` or `0,1/2,3/2`.
pub fn parse_exponent_set(text: &str, mode: Mode) -> Result<ExponentSet> {
    let mut exps = Vec::new();
    let mut offset = 0;
    for piece in text.split(',') {
        let lead = piece.len() - piece.trim_start().len();
        let q = parse_rational(piece).ok_or_else(|| {
            syntax(offset + lead, format!("'{}' is not an exact number", piece.trim()))
        })?;
        exps.push(q);
        offset += piece.len() + 1;
    }
    ExponentSet::new(exps, mode)
}

/// Parses a semicolon-separated polynomial basis such as `1; x + x^2`.
pub fn parse_subspace(text: &str) -> Result<PolySubspace> {
    PolySubspace::new(parse_poly_list(text, Mode::Natural)?)
}

/// Parses a semicolon-separated list of polynomials, reporting positions
/// relative to the whole text.
pub fn parse_poly_list(text: &str, mode: Mode) -> Result<Vec<GenPolynomial>> {
    let mut out = Vec::new();
    let mut offset = 0;
    for piece in text.split(';') {
        let p = parse_polynomial(piece, mode).map_err(|e| match e {
            Error::Syntax { pos, msg } => Error::Syntax {
                pos: pos + offset,
                msg,
            },
            other => other,
        })?;
        out.push(p);
        offset += piece.len() + 1;
    }
    Ok(out)
}
