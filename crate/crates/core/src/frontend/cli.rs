//! Command-line driver.

use std::cmp::Ordering;
use std::io::Write;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::analysis::derive_approx;
use crate::arith::{max_bound, TruncatedResult, TruncationBudget};
use crate::compose::{compose, taylor_expand};
use crate::constants::{Sign, DEFAULT_CONST_BITS};
use crate::error::{Error, Result};
use crate::series::{Monomial, Transseries};

use super::eval::{evaluate, render_result};
use super::parser::parse;
use super::serial::{to_document, SCHEMA};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_DOMAIN: i32 = 3;
pub const EXIT_UNDECIDED: i32 = 4;

#[derive(Parser, Debug)]
#[command(name = "omega", version, about = "Exact arithmetic on transseries in w")]
struct Cli {
    /// Number of leading terms kept by inexact operations.
    #[arg(long, global = true, default_value_t = 16, value_parser = clap::value_parser!(u32).range(1..))]
    terms: u32,
    /// Precision cutoff, in bits, for deciding signs of constants.
    #[arg(long = "const-bits", global = true, default_value_t = DEFAULT_CONST_BITS)]
    const_bits: u32,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the normal form of an expression.
    Normalize {
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Differentiate with respect to w.
    Diff {
        #[arg(allow_hyphen_values = true)]
        expr: String,
        /// Order of the derivative.
        #[arg(short = 'n', default_value_t = 1)]
        n: usize,
    },
    /// Substitute G for w in F.
    Compose {
        #[arg(allow_hyphen_values = true)]
        f: String,
        #[arg(allow_hyphen_values = true)]
        g: String,
    },
    /// Order and dominance of two expressions.
    Compare {
        #[arg(allow_hyphen_values = true)]
        f: String,
        #[arg(allow_hyphen_values = true)]
        g: String,
    },
    /// Taylor coefficients f^(n)(X)/n! for n up to the order.
    Taylor {
        #[arg(allow_hyphen_values = true)]
        f: String,
        #[arg(long, allow_hyphen_values = true)]
        at: String,
        #[arg(long, default_value_t = 3)]
        order: usize,
    },
    /// Leading term and asymptotic behaviour.
    Limit {
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::SyntaxError { .. } | Error::UnsupportedExponent { .. } => EXIT_PARSE,
        Error::SignUndecided { .. } | Error::BudgetExhausted(_) => EXIT_UNDECIDED,
        _ => EXIT_DOMAIN,
    }
}

/// Runs the CLI on `args` (program name first) and returns the exit status.
pub fn run<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{}", e.render());
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{}", e.render());
                    EXIT_USAGE
                }
            };
        }
    };
    let budget = TruncationBudget::new(cli.terms as usize, cli.const_bits);
    match execute(&cli.command, &budget) {
        Ok(output) => {
            let _ = match cli.format {
                Format::Text => writeln!(out, "{}", output.text),
                Format::Json => {
                    let mut v = output.json;
                    v["schema"] = json!(SCHEMA);
                    writeln!(out, "{v}")
                }
            };
            EXIT_OK
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

struct Output {
    text: String,
    json: Value,
}

fn eval_text(text: &str, budget: &TruncationBudget) -> Result<TruncatedResult> {
    Ok(evaluate(&parse(text)?, budget)?.result)
}

fn eval_exact(text: &str, what: &str, budget: &TruncationBudget) -> Result<Transseries> {
    let r = eval_text(text, budget)?;
    if !r.exact {
        return Err(Error::BudgetExhausted(format!("{what} has no finite normal form within {} terms", budget.max_terms)));
    }
    Ok(r.value)
}

fn result_json(r: &TruncatedResult, budget: &TruncationBudget) -> Value {
    json!({
        "normal_form": r.value.to_string(),
        "exact": r.exact,
        "error_bound": r.bound().map(|b| b.to_string()),
        "budget_used": budget.max_terms,
        "value": to_document(&r.value).value,
    })
}

fn result_output(r: &TruncatedResult, budget: &TruncationBudget) -> Output {
    Output { text: render_result(r), json: result_json(r, budget) }
}

fn execute(cmd: &Command, budget: &TruncationBudget) -> Result<Output> {
    let bits = budget.const_bits;
    match cmd {
        Command::Normalize { expr } => Ok(result_output(&eval_text(expr, budget)?, budget)),
        Command::Diff { expr, n } => {
            let mut r = eval_text(expr, budget)?;
            for _ in 0..*n {
                r = derive_approx(&r, bits)?.resettle(budget)?;
            }
            Ok(result_output(&r, budget))
        }
        Command::Compose { f, g } => {
            let f = eval_text(f, budget)?;
            let g = eval_exact(g, "G", budget)?;
            Ok(result_output(&compose_carried(&f, &g, budget)?, budget))
        }
        Command::Compare { f, g } => compare(&eval_text(f, budget)?, &eval_text(g, budget)?, bits),
        Command::Taylor { f, at, order } => {
            let f = eval_exact(f, "F", budget)?;
            let x = eval_exact(at, "the expansion point", budget)?;
            let expansion = taylor_expand(&f, &x, *order, budget)?;
            let lines: Vec<String> =
                expansion.coefficients.iter().enumerate().map(|(n, c)| format!("c_{n} = {}", render_result(c))).collect();
            let coeffs: Vec<Value> = expansion.coefficients.iter().map(|c| result_json(c, budget)).collect();
            Ok(Output { text: lines.join("\n"), json: json!({ "at": x.to_string(), "coefficients": coeffs }) })
        }
        Command::Limit { expr } => limit(&eval_text(expr, budget)?, bits),
    }
}

/// `f o g` where `f` is known only above its bound `B`: the dropped part
/// maps below `lead(B o g)`.
fn compose_carried(f: &TruncatedResult, g: &Transseries, budget: &TruncationBudget) -> Result<TruncatedResult> {
    let bits = budget.const_bits;
    let r = compose(&f.value, g, budget)?;
    let Some(b) = f.bound() else {
        return Ok(r);
    };
    let image = compose(&Transseries::monomial(b.clone()), g, budget)?;
    let carried = image.value.leading_monomial()?.clone();
    let below = max_bound(r.bound(), Some(&carried), bits)?;
    TruncatedResult::settle(r.value, below.as_ref(), budget)
}

fn undecided(what: &str) -> Error {
    Error::BudgetExhausted(format!("{what} is not determined by the kept terms; raise --terms"))
}

/// Leading monomial and coefficient, when they are certain.
fn lead_of(r: &TruncatedResult) -> Result<Option<(Monomial, crate::constants::ConstReal)>> {
    match r.value.leading_term() {
        Ok(t) => Ok(Some((t.monomial.clone(), t.coeff.clone()))),
        Err(_) if r.exact => Ok(None),
        Err(_) => Err(undecided("the leading term")),
    }
}

fn compare(f: &TruncatedResult, g: &TruncatedResult, bits: u32) -> Result<Output> {
    let budget = TruncationBudget::new(f.value.len() + g.value.len() + 1, bits);
    let d = f.sub(g, &budget)?;
    let order = match d.value.leading_term() {
        Ok(t) => t.coeff.sign(bits)?.to_ordering(),
        Err(_) if d.exact => Ordering::Equal,
        Err(_) => return Err(undecided("the sign of f - g")),
    };
    let order_text = match order {
        Ordering::Less => "f < g",
        Ordering::Equal => "f = g",
        Ordering::Greater => "f > g",
    };
    let (lf, lg) = (lead_of(f)?, lead_of(g)?);
    let (dom, ratio) = match (&lf, &lg) {
        (None, None) => ("f ∼ g", None),
        (None, Some(_)) => ("f ≺ g", None),
        (Some(_), None) => ("f ≻ g", None),
        (Some((mf, cf)), Some((mg, cg))) => match mf.compare(mg, bits)? {
            Ordering::Less => ("f ≺ g", None),
            Ordering::Greater => ("f ≻ g", None),
            Ordering::Equal if cf == cg => ("f ∼ g", None),
            Ordering::Equal => ("f ≍ g", Some(cf.div(cg)?)),
        },
    };
    let text = match &ratio {
        Some(c) => format!("{order_text}; {dom} (ratio → {c})"),
        None => format!("{order_text}; {dom}"),
    };
    let json = json!({
        "order": order_text,
        "dominance": dom,
        "ratio": ratio.map(|c| c.to_string()),
    });
    Ok(Output { text, json })
}

fn limit(r: &TruncatedResult, bits: u32) -> Result<Output> {
    let (lead, verdict) = match lead_of(r)? {
        None => ("0".to_string(), "0".to_string()),
        Some((m, c)) => {
            let t = Transseries::from_term(crate::series::Term::new(c.clone(), m.clone()));
            let verdict = match m.log_sign(bits)? {
                Sign::Positive if c.sign(bits)? == Sign::Positive => "+inf".to_string(),
                Sign::Positive => "-inf".to_string(),
                Sign::Zero => c.to_string(),
                Sign::Negative => "0".to_string(),
            };
            (t.to_string(), verdict)
        }
    };
    Ok(Output { text: format!("lead: {lead}; limit: {verdict}"), json: json!({ "lead": lead, "limit": verdict }) })
}
