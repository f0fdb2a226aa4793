//! Argument handling and output formatting for the `signrule` binary.
//!
//! Exit codes: 0 when the command succeeds and every checked property
//! holds, 1 when a property violation was found, 2 for usage, parse and
//! precondition errors.

use std::io::{self, Read, Write};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use signrule::fuzz::{run_fuzz, FuzzConfig, DEFAULT_COEFF_BOUND};
use signrule::isolation::{Isolator, DEFAULT_MAX_DEPTH};
use signrule::lemma::verify_lemma_traced;
use signrule::{exhaustive_table_check, pz, sc_poly, Error, Polynomial, Scalar};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATION: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "signrule",
    version,
    about = "Exact sign-change counting, rule-of-signs checks and positive root isolation"
)]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,

    /// Read coefficients highest degree first instead of constant term first.
    #[arg(long, global = true)]
    pub descending: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Number of sign changes in the coefficient list.
    Sc(Coeffs),
    /// Sign changes as an upper bound on positive roots, with the parity note.
    Bound(Coeffs),
    /// Isolate the positive roots.
    Isolate {
        /// Bisection depth limit.
        #[arg(long, default_value_t = DEFAULT_MAX_DEPTH)]
        max_depth: u32,
        #[command(flatten)]
        coeffs: Coeffs,
    },
    /// Positive roots counted with multiplicity.
    Pz(Coeffs),
    /// Check SC(f) - SC(g) - m for f = (c - x)^m g; the coefficients are g's.
    LemmaVerify {
        /// Positive root c of the linear factor.
        #[arg(long = "c", allow_hyphen_values = true)]
        c: String,
        /// Power m >= 1 of the linear factor.
        #[arg(long = "m")]
        m: u32,
        /// Print the induction trace for each factor.
        #[arg(long)]
        trace: bool,
        #[command(flatten)]
        coeffs: Coeffs,
    },
    /// Recompute alpha and beta for every row of the case table from witnesses.
    TableCheck,
    /// Randomized checks of the lemma, the single-factor step, the rule of
    /// signs and the odd-count root guarantee.
    Fuzz {
        #[arg(long, default_value_t = 1000)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 8)]
        max_degree: usize,
        /// Bound on numerators and denominators of random coefficients.
        #[arg(long, default_value_t = DEFAULT_COEFF_BOUND)]
        coeff_bound: i64,
    },
}

#[derive(Debug, clap::Args)]
pub struct Coeffs {
    /// Coefficients as integers or p/q, constant term first; `-` reads them
    /// from stdin. Options must come before the first coefficient.
    #[arg(allow_hyphen_values = true, value_name = "COEFF")]
    pub coeffs: Vec<String>,
}

/// A failed command: exit code plus a one-line diagnostic.
struct Failure(i32, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(EXIT_USAGE, e.to_string())
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure(EXIT_USAGE, e.to_string())
    }
}

struct Ctx<'a> {
    format: Format,
    descending: bool,
    stdin: &'a mut dyn Read,
}

impl Ctx<'_> {
    fn polynomial(&mut self, coeffs: &Coeffs) -> Result<Polynomial, Failure> {
        let tokens: Vec<String> = if coeffs.coeffs == ["-"] {
            let mut buf = String::new();
            self.stdin.read_to_string(&mut buf)?;
            buf.split_whitespace().map(str::to_string).collect()
        } else {
            coeffs.coeffs.clone()
        };
        let mut values = tokens
            .iter()
            .map(|t| {
                if t.starts_with("--") {
                    return Err(Failure(
                        EXIT_USAGE,
                        format!("option {t:?} after the coefficients; options go first"),
                    ));
                }
                t.parse::<Scalar>()
                    .map_err(|e| Failure(EXIT_USAGE, format!("bad coefficient {t:?}: {e}")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        if self.descending {
            values.reverse();
        }
        Ok(Polynomial::new(values))
    }
}

fn require_nonzero(f: &Polynomial, what: &str) -> Result<(), Failure> {
    if f.is_zero() {
        return Err(Failure(
            EXIT_USAGE,
            format!("{what} needs a nonzero polynomial"),
        ));
    }
    Ok(())
}

fn emit(out: &mut dyn Write, format: Format, text: &str, value: Value) -> io::Result<()> {
    match format {
        Format::Text => writeln!(out, "{}", text.trim_end()),
        Format::Json => writeln!(out, "{value}"),
    }
}

fn execute(cli: Cli, ctx: &mut Ctx, out: &mut dyn Write) -> Result<i32, Failure> {
    let format = ctx.format;
    match cli.command {
        Command::Sc(coeffs) => {
            let f = ctx.polynomial(&coeffs)?;
            let sc = sc_poly(&f);
            emit(out, format, &sc.to_string(), json!({ "sc": sc }))?;
        }
        Command::Bound(coeffs) => {
            let f = ctx.polynomial(&coeffs)?;
            require_nonzero(&f, "bound")?;
            let sc = sc_poly(&f);
            let parity = if sc.is_multiple_of(2) { "even" } else { "odd" };
            let possible: Vec<usize> = (sc % 2..=sc).step_by(2).collect();
            let listed: Vec<String> = possible.iter().map(usize::to_string).collect();
            let text = format!(
                "{sc}\nparity: {parity}; positive roots counted with multiplicity: one of {}",
                listed.join(", ")
            );
            let value = json!({ "bound": sc, "parity": parity, "possible_pz": possible });
            emit(out, format, &text, value)?;
        }
        Command::Isolate { max_depth, coeffs } => {
            let f = ctx.polynomial(&coeffs)?;
            let iso = Isolator { max_depth }.isolate(&f)?;
            let text = if iso.is_empty() {
                "no positive roots".to_string()
            } else {
                iso.to_string()
            };
            emit(
                out,
                format,
                &text,
                serde_json::to_value(&iso).expect("serializable"),
            )?;
        }
        Command::Pz(coeffs) => {
            let f = ctx.polynomial(&coeffs)?;
            let n = pz(&f)?;
            emit(out, format, &n.to_string(), json!({ "pz": n }))?;
        }
        Command::LemmaVerify {
            c,
            m,
            trace,
            coeffs,
        } => {
            let c: Scalar = c
                .parse()
                .map_err(|e| Failure(EXIT_USAGE, format!("bad value {c:?} for --c: {e}")))?;
            let g = ctx.polynomial(&coeffs)?;
            match verify_lemma_traced(&g, &c, m) {
                Ok(report) => {
                    let mut text = report.delta.to_string();
                    if trace {
                        for (i, t) in report.traces.iter().enumerate() {
                            text.push_str(&format!(
                                "\nfactor {}:\n{}",
                                i + 1,
                                t.to_string().trim_end()
                            ));
                        }
                    }
                    let mut value = json!({
                        "delta": report.delta,
                        "sc_f": report.sc_f,
                        "sc_g": report.sc_g,
                        "m": report.m,
                        "f": report.f,
                    });
                    if trace {
                        value["traces"] =
                            serde_json::to_value(&report.traces).expect("serializable");
                    }
                    emit(out, format, &text, value)?;
                }
                Err(Error::Violation(ce)) => {
                    let value = json!({ "violation": *ce.clone() });
                    emit(out, format, &ce.to_string(), value)?;
                    return Ok(EXIT_VIOLATION);
                }
                Err(e) => return Err(e.into()),
            }
        }
        Command::TableCheck => {
            let report = exhaustive_table_check();
            let mut text = report.to_string();
            for m in &report.mismatches {
                text.push_str(&format!(
                    "\nmismatch: witness {:?} row {:?} alpha={} beta={}: {}",
                    m.witness, m.row, m.alpha, m.beta, m.reason
                ));
            }
            let value = json!({
                "rows": report.rows_covered(),
                "mismatches": report.mismatches.len(),
                "witnesses": report.witnesses,
                "row_hits": report.row_hits,
                "observed": report.observed,
                "mismatch_details": report.mismatches,
            });
            emit(out, format, &text, value)?;
            if !report.is_clean() {
                return Ok(EXIT_VIOLATION);
            }
        }
        Command::Fuzz {
            trials,
            seed,
            max_degree,
            coeff_bound,
        } => {
            let config = FuzzConfig {
                trials,
                seed,
                max_degree,
                coeff_bound,
            };
            let report = run_fuzz(&config)?;
            let mut text = format!(
                "{} trials, {} checks, {} violations",
                report.trials,
                report.checks,
                report.violations.len()
            );
            for v in &report.violations {
                text.push_str(&format!("\ntrial {}:\n{}", v.trial, v.counterexample));
            }
            let value = json!({ "config": config, "report": report });
            emit(out, format, &text, value)?;
            if !report.is_clean() {
                return Ok(EXIT_VIOLATION);
            }
        }
    }
    Ok(EXIT_OK)
}

/// Runs one invocation. `argv` includes the program name.
pub fn run<I, T>(argv: I, stdin: &mut dyn Read, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(sink, "{rendered}");
            return code;
        }
    };
    let mut ctx = Ctx {
        format: cli.format,
        descending: cli.descending,
        stdin,
    };
    match execute(cli, &mut ctx, out) {
        Ok(code) => code,
        Err(Failure(code, msg)) => {
            let _ = writeln!(err, "error: {msg}");
            code
        }
    }
}
