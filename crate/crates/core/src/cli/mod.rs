//! Text parsing and the `monoweyl` command-line front end.

mod parse;

use std::ffi::OsString;

use clap::{Args, Parser, Subcommand};
use num_traits::ToPrimitive;
use serde_json::{json, Value};

pub use parse::{
    eval_operator, parse_expr, parse_exponent_set, parse_operator, parse_poly_list,
    parse_polynomial, parse_subspace, Expr, MAX_DEPTH, MAX_EXPANSION, MAX_POWER,
};

use crate::classify::{classify_second_order, find_chain_splittings, ChainSplitting};
use crate::error::{Error, Result};
use crate::exactnum::{is_integer, parse_rational, GenPolynomial, Rational};
use crate::factor::{factor_graded, FactoredOperator};
use crate::filtered::{
    associated_graded, check_filtered_invariance, eigen_operator, graded_invariance_holds,
    realize_on_monomials,
};
use crate::invariant::{im_set, is_invariant, minimal_factored, operator_basis, ExponentSet};
use crate::transform::{change_variable, change_variable_set, gauge, gauge_set};
use crate::weyl::{grade_decompose, terms_to_euler, DiffOperator, GradedComponent, Mode};

const AFTER_HELP: &str = "\
Operators are written in x and D = d/dx with explicit '*', for example
  'x^4*D^2 - 2*x^3*D'   '(x*D - 1)*(x*D - 3)'   'x^(1/2)*D'
Products are taken in order, so 'D*x' means x*D + 1. Exponents of x may be
rational in --rational mode and must be parenthesized unless they are
nonnegative integers. Numbers are exact: 3, -2, 7/4.

Exit status: 0 on success, 1 on a domain error, 2 on a parse or usage error.";

#[derive(Parser, Debug)]
#[command(
    name = "monoweyl",
    version,
    about = "Exact computations with differential operators preserving spaces of monomials",
    after_help = AFTER_HELP
)]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Debug, Clone, Copy)]
struct Common {
    /// Exponents are natural numbers (default)
    #[arg(long, global = true, conflicts_with = "rational")]
    natural: bool,
    /// Exponents are arbitrary rationals
    #[arg(long, global = true)]
    rational: bool,
    /// Emit one JSON document instead of text
    #[arg(long, global = true)]
    json: bool,
}

impl Common {
    fn mode(&self) -> Mode {
        if self.rational {
            Mode::Rational
        } else {
            Mode::Natural
        }
    }
}

fn rational_arg(s: &str) -> std::result::Result<Rational, String> {
    parse_rational(s).ok_or_else(|| format!("'{s}' is not an exact rational"))
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Apply an operator to a polynomial
    Apply {
        #[arg(long)]
        op: String,
        #[arg(long)]
        poly: String,
    },
    /// Print an operator in normal order
    Normal {
        #[arg(long)]
        op: String,
    },
    /// Split an operator into graded components with their Euler polynomials
    Grade {
        #[arg(long)]
        op: String,
    },
    /// Factor each graded component into Euler-operator factors
    Factor {
        #[arg(long)]
        op: String,
    },
    /// List the exponents i of the set with i + degree outside it
    Imset {
        #[arg(long)]
        set: String,
        #[arg(long, value_parser = rational_arg, allow_hyphen_values = true)]
        degree: Rational,
    },
    /// Decide whether an operator preserves the span of x^i, i in the set
    Member {
        #[arg(long)]
        set: String,
        #[arg(long)]
        op: String,
    },
    /// Lowest-order invariant operator of a given degree
    Minimal {
        #[arg(long)]
        set: String,
        #[arg(long, value_parser = rational_arg, allow_hyphen_values = true)]
        degree: Rational,
    },
    /// Basis of invariant operators of a given degree and bounded order
    Basis {
        #[arg(long)]
        set: String,
        #[arg(long, value_parser = rational_arg, allow_hyphen_values = true)]
        degree: Rational,
        #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u32).range(0..=64))]
        order: u32,
    },
    /// Classify the invariant operators of order at most 2
    Classify {
        #[arg(long)]
        set: String,
    },
    /// List the splittings of a set into one or two chains
    Chains {
        #[arg(long)]
        set: String,
    },
    /// Conjugate by x^shift: T -> x^(-shift) T x^shift
    Gauge {
        #[arg(long)]
        op: String,
        #[arg(long, value_parser = rational_arg, allow_hyphen_values = true)]
        shift: Rational,
        /// Also transport this exponent set
        #[arg(long)]
        set: Option<String>,
    },
    /// Substitute x -> x^scale
    Chvar {
        #[arg(long)]
        op: String,
        #[arg(long, value_parser = rational_arg, allow_hyphen_values = true)]
        scale: Rational,
        /// Also transport this exponent set
        #[arg(long)]
        set: Option<String>,
    },
    /// Build the operator sending x^j to the j-th polynomial of a ';' list
    Realize {
        #[arg(long)]
        poly: String,
    },
    /// Build an operator with the given polynomial as an eigenvector
    Eigenop {
        #[arg(long)]
        poly: String,
        #[arg(long, value_parser = rational_arg, allow_hyphen_values = true)]
        lambda: Rational,
    },
    /// Top-degree graded component of an operator
    AssocGraded {
        #[arg(long)]
        op: String,
    },
    /// Decide whether an operator preserves the span of a ';' list of polynomials
    CheckFiltered {
        #[arg(long)]
        op: String,
        #[arg(long)]
        poly: String,
    },
}

/// Exit status and captured output of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: u8,
    pub stdout: String,
    pub stderr: String,
}

/// Runs the command line `args`, whose first element is the program name.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let parsed = match Cli::try_parse_from(args) {
        Ok(p) => p,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => Outcome {
                    code: 0,
                    stdout: text,
                    stderr: String::new(),
                },
                _ => Outcome {
                    code: 2,
                    stdout: String::new(),
                    stderr: text,
                },
            };
        }
    };
    match execute(&parsed.cmd, parsed.common) {
        Ok(mut out) => {
            if !out.ends_with('\n') {
                out.push('\n');
            }
            Outcome {
                code: 0,
                stdout: out,
                stderr: String::new(),
            }
        }
        Err(e) => Outcome {
            code: if e.is_syntax() { 2 } else { 1 },
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}

/// Integers become JSON numbers when they fit, everything else `"p/q"`.
fn q(r: &Rational) -> Value {
    if is_integer(r) {
        if let Some(n) = r.numer().to_i64() {
            return json!(n);
        }
    }
    json!(r.to_string())
}

fn qs<'a>(rs: impl IntoIterator<Item = &'a Rational>) -> Value {
    Value::Array(rs.into_iter().map(q).collect())
}

fn csv<'a>(rs: impl IntoIterator<Item = &'a Rational>) -> String {
    rs.into_iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
}

fn factored_json(f: &FactoredOperator) -> Value {
    json!({
        "degree": q(&f.degree),
        "scalar": q(&f.scalar),
        "prefix": f.prefix,
        "roots": qs(&f.roots),
        "residual": f.residual.to_string(),
        "factored": f.to_string(),
    })
}

fn component_json(g: &GradedComponent, mode: Mode) -> Result<Value> {
    Ok(json!({
        "degree": q(&g.degree),
        "euler": g.euler.to_string(),
        "operator": g.to_operator(mode)?.to_string(),
    }))
}

/// Expanded and factored forms of a homogeneous operator.
fn basis_entry(op: &DiffOperator) -> Result<(Rational, String, String)> {
    let g = terms_to_euler(op)?;
    let f = factor_graded(&g, op.mode())?;
    Ok((g.degree, op.to_string(), f.to_string()))
}

fn splitting_json(s: &ChainSplitting) -> Value {
    json!({
        "step": q(&s.step),
        "chains": s.chains.iter().map(qs).collect::<Vec<_>>(),
        "tops": qs(&s.tops()),
    })
}

/// Largest `D` power a command may be asked to build.
const MAX_DERIVED_ORDER: i64 = 256;

/// Natural negative degrees force a `D^(-m)` factor; refuse absurd ones.
fn check_degree(mode: Mode, m: &Rational) -> Result<()> {
    if mode == Mode::Natural && m < &Rational::from_integer((-MAX_DERIVED_ORDER).into()) {
        return Err(Error::PreconditionFailed(format!(
            "degree {m} needs an operator of order above {MAX_DERIVED_ORDER}"
        )));
    }
    Ok(())
}

fn render(c: Common, v: Value, text: impl FnOnce() -> String) -> String {
    if c.json {
        v.to_string()
    } else {
        text()
    }
}

fn execute(cmd: &Cmd, c: Common) -> Result<String> {
    let mode = c.mode();
    let mname = mode.as_str();
    let set_of = |s: &str| parse_exponent_set(s, mode);
    let op_of = |s: &str| parse_operator(s, mode);
    Ok(match cmd {
        Cmd::Apply { op, poly } => {
            let t = op_of(op)?;
            let p = parse_polynomial(poly, mode)?;
            let r = t.apply(&p);
            render(c, json!({"mode": mname, "op": t.to_string(), "poly": p.to_string(), "result": r.to_string()}), || r.to_string())
        }
        Cmd::Normal { op } => {
            let t = op_of(op)?;
            let terms: Vec<Value> = t
                .terms()
                .rev()
                .map(|t| json!({"coeff": q(&t.coeff), "x": q(&t.x_exp), "d": t.d_order}))
                .collect();
            render(c, json!({"mode": mname, "normal": t.to_string(), "order": t.order(), "terms": terms}), || t.to_string())
        }
        Cmd::Grade { op } => {
            let t = op_of(op)?;
            let comps = grade_decompose(&t);
            let js = comps.iter().map(|g| component_json(g, mode)).collect::<Result<Vec<_>>>()?;
            render(c, json!({"mode": mname, "components": js}), || {
                comps.iter().map(|g| format!("degree {}: P(s) = {}", g.degree, g.euler)).collect::<Vec<_>>().join("\n")
            })
        }
        Cmd::Factor { op } => {
            let t = op_of(op)?;
            if t.is_zero() {
                return Err(Error::ZeroOperator("factor"));
            }
            let fs = grade_decompose(&t)
                .iter()
                .map(|g| factor_graded(g, mode))
                .collect::<Result<Vec<_>>>()?;
            render(c, json!({"mode": mname, "factors": fs.iter().map(factored_json).collect::<Vec<_>>()}), || {
                fs.iter().map(ToString::to_string).collect::<Vec<_>>().join("\n")
            })
        }
        Cmd::Imset { set, degree } => {
            let s = set_of(set)?;
            let im = im_set(&s, degree);
            render(c, json!({"mode": mname, "set": qs(s.iter()), "degree": q(degree), "imset": qs(&im)}), || csv(&im))
        }
        Cmd::Member { set, op } => {
            let s = set_of(set)?;
            let t = op_of(op)?;
            let b = is_invariant(&t, &s);
            render(c, json!({"mode": mname, "set": qs(s.iter()), "op": t.to_string(), "member": b}), || b.to_string())
        }
        Cmd::Minimal { set, degree } => {
            check_degree(mode, degree)?;
            let s = set_of(set)?;
            let f = minimal_factored(&s, degree)?;
            let t = f.expand(mode)?;
            render(c, json!({"mode": mname, "set": qs(s.iter()), "degree": q(degree), "order": t.order(), "expanded": t.to_string(), "factored": f.to_string()}), || {
                format!("{t}\n{f}")
            })
        }
        Cmd::Basis { set, degree, order } => {
            check_degree(mode, degree)?;
            let s = set_of(set)?;
            let b = operator_basis(&s, degree, *order)
                .iter()
                .map(basis_entry)
                .collect::<Result<Vec<_>>>()?;
            let js: Vec<Value> = b.iter().map(|(_, e, f)| json!({"expanded": e, "factored": f})).collect();
            render(c, json!({"mode": mname, "set": qs(s.iter()), "degree": q(degree), "order": order, "basis": js}), || {
                b.iter().map(|(_, e, f)| format!("{e}  =  {f}")).collect::<Vec<_>>().join("\n")
            })
        }
        Cmd::Classify { set } => {
            let s = set_of(set)?;
            let fam = classify_second_order(&s)?;
            let b = fam.basis.iter().map(basis_entry).collect::<Result<Vec<_>>>()?;
            let v = json!({
                "mode": mname,
                "set": qs(s.iter()),
                "case": fam.case_label.as_str(),
                "parameters": fam.parameter_count,
                "splittings": fam.splittings.iter().map(splitting_json).collect::<Vec<_>>(),
                "basis": b.iter().map(|(d, e, f)| json!({"degree": q(d), "expanded": e, "factored": f})).collect::<Vec<_>>(),
            });
            render(c, v, || {
                let mut lines = vec![
                    format!("case: {}", fam.case_label),
                    format!("parameters: {}", fam.parameter_count),
                ];
                lines.extend(fam.splittings.iter().map(|s| format!("splitting {s}")));
                lines.extend(b.iter().map(|(d, e, f)| format!("degree {d}: {e}  =  {f}")));
                lines.join("\n")
            })
        }
        Cmd::Chains { set } => {
            let s = set_of(set)?;
            let sp = find_chain_splittings(&s);
            render(c, json!({"mode": mname, "set": qs(s.iter()), "splittings": sp.iter().map(splitting_json).collect::<Vec<_>>()}), || {
                sp.iter().map(ToString::to_string).collect::<Vec<_>>().join("\n")
            })
        }
        Cmd::Gauge { op, shift, set } => {
            let t = gauge(&op_of(op)?, shift)?;
            let moved = set.as_deref().map(|s| set_of(s).and_then(|s| gauge_set(&s, shift))).transpose()?;
            transported(c, t, moved)
        }
        Cmd::Chvar { op, scale, set } => {
            let t = change_variable(&op_of(op)?, scale)?;
            let moved = set
                .as_deref()
                .map(|s| set_of(s).and_then(|s| change_variable_set(&s, scale)))
                .transpose()?;
            transported(c, t, moved)
        }
        Cmd::Realize { poly } => {
            let imgs = parse_poly_list(poly, mode)?;
            let pairs: Vec<(u32, GenPolynomial)> = imgs.into_iter().enumerate().map(|(j, p)| (j as u32, p)).collect();
            let t = realize_on_monomials(&pairs)?.with_mode(mode)?;
            render(c, json!({"mode": t.mode().as_str(), "op": t.to_string()}), || t.to_string())
        }
        Cmd::Eigenop { poly, lambda } => {
            let v = parse_polynomial(poly, mode)?;
            let t = eigen_operator(&v, lambda)?;
            render(c, json!({"mode": t.mode().as_str(), "poly": v.to_string(), "lambda": q(lambda), "op": t.to_string()}), || t.to_string())
        }
        Cmd::AssocGraded { op } => {
            let t = op_of(op)?;
            let g = associated_graded(&t)?;
            let gop = g.to_operator(mode)?;
            render(c, json!({"mode": mname, "degree": q(&g.degree), "euler": g.euler.to_string(), "operator": gop.to_string()}), || gop.to_string())
        }
        Cmd::CheckFiltered { op, poly } => {
            let t = op_of(op)?;
            let v = parse_subspace(poly)?;
            let inv = check_filtered_invariance(&t, &v);
            let graded = if inv && !t.is_zero() { Some(graded_invariance_holds(&t, &v)?) } else { None };
            render(c, json!({"mode": mname, "subspace": v.to_string(), "leading": qs(v.leading_exponents().iter()), "invariant": inv, "graded_invariant": graded}), || {
                inv.to_string()
            })
        }
    })
}

fn transported(c: Common, t: DiffOperator, set: Option<ExponentSet>) -> String {
    let v = json!({
        "mode": t.mode().as_str(),
        "op": t.to_string(),
        "set": set.as_ref().map(|s| qs(s.iter())),
    });
    render(c, v, || match &set {
        Some(s) => format!("{t}\n{s}"),
        None => t.to_string(),
    })
}
