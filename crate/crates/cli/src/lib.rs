//! Command-line front end: expression parsing, ad-hoc circle products, the
//! Ψ and h classes, jet invariants and the named verification suites.
//!
//! Exit codes are 0 when everything holds, 1 when a verification fails and
//! 2 for usage or parse errors.

pub mod suites;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};
use std::fmt::Write as _;
use voaforge_core::cohomology::{h_class, psi_class, Sl2Monomial};
use voaforge_core::fock::{FockOracle, FockVector, OracleError};
use voaforge_core::report::Report;
use voaforge_core::text::{format_plain, format_pretty, parse_with, to_json, ParseError};
use voaforge_core::weil::OperatorTable;
use voaforge_core::{sample, Engine, Expr};
use voaforge_jet::{generated_component, invariant_component, verify_appendix, weyl_generators, JetPoly, JetRing};

pub use suites::{run_suite, run_suites, UnknownSuite, SUITES};

/// Truncation weight used by `--oracle-check` and `oracle-diff`.
pub const ORACLE_TRUNCATION: i64 = 8;

#[derive(Debug, Parser)]
#[command(name = "voaforge", version, about = "Exact computations in the semi-infinite Weil complex of sl2")]
pub struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Seed for randomized suites (falls back to VOAFORGE_SEED, then 0).
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Recompute circle products in the truncated Fock space and compare.
    #[arg(long, global = true)]
    pub oracle_check: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Parse an expression and print it in the input grammar.
    Parse { expr: String },
    /// Print the canonical form in the usual notation.
    Canon { expr: String },
    /// The Wick product :ab:.
    Wick { a: String, b: String },
    /// The circle product a∘ₙb.
    Circle {
        a: String,
        b: String,
        #[arg(allow_hyphen_values = true)]
        n: i64,
    },
    /// The singular part of a(z)b(w).
    Ope { a: String, b: String },
    /// The mode op(k) applied to a target, op∘ₖtarget.
    Mode { op: String, k: u32, target: String },
    /// Weight, degree, b-number, polynomial degree and parity.
    Grade { expr: String },
    /// Run named suites (or `all`).
    Verify {
        #[arg(required = true)]
        suites: Vec<String>,
    },
    /// The cocycle Ψ(μ) for a monomial such as `y^2` or `x h`.
    PsiClass {
        #[arg(long)]
        monomial: String,
    },
    /// The Koszul cocycle h_{2n+2}.
    HClass { n: u32 },
    /// Jet-scheme invariants.
    Jet {
        #[command(subcommand)]
        command: JetCommand,
    },
    /// Compare the engine with the Fock-space oracle on one circle product.
    OracleDiff {
        a: String,
        b: String,
        #[arg(allow_hyphen_values = true)]
        n: i64,
    },
}

#[derive(Debug, Subcommand)]
pub enum JetCommand {
    /// The localization determinants and their invariant factors.
    VerifyAppendix,
    /// Invariant and generated dimensions of one slice.
    Invariants {
        #[arg(long)]
        copies: usize,
        #[arg(long)]
        level: usize,
        #[arg(long)]
        weight: usize,
        #[arg(long)]
        degree: usize,
    },
}

/// Result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome { code: 0, stdout, stderr: String::new() }
    }

    fn usage(message: String) -> Self {
        Outcome { code: 2, stdout: String::new(), stderr: message }
    }
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("{0}")]
    Parse(#[from] ParseError),
    #[error("{0}")]
    Usage(String),
}

/// Parses arguments and runs the command.
pub fn run_args<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(&cli),
        Err(e) => {
            let text = e.render().to_string();
            match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => Outcome::ok(text),
                _ => Outcome::usage(text),
            }
        }
    }
}

pub fn run(cli: &Cli) -> Outcome {
    match execute(cli) {
        Ok(out) => out,
        Err(e) => Outcome::usage(format!("error: {e}\n")),
    }
}

struct Ctx<'a> {
    table: &'a OperatorTable,
    json: bool,
    oracle_check: bool,
}

impl Ctx<'_> {
    fn expr(&self, text: &str) -> Result<Expr, CliError> {
        Ok(parse_with(text, &self.table.lie, self.table)?)
    }

    fn show(&self, e: &Expr) -> String {
        format_pretty(e, Some(&self.table.lie))
    }

    fn json_of(&self, e: &Expr) -> Value {
        to_json(e, Some(&self.table.lie))
    }

    fn single(&self, e: &Expr) -> String {
        if self.json {
            format!("{}\n", self.json_of(e))
        } else {
            format!("{}\n", self.show(e))
        }
    }
}

fn execute(cli: &Cli) -> Result<Outcome, CliError> {
    let seed = cli.seed.unwrap_or_else(sample::env_seed);
    let ctx = Ctx { table: OperatorTable::sl2(), json: cli.json, oracle_check: cli.oracle_check };
    let engine = Engine::global();
    match &cli.command {
        Command::Parse { expr } => {
            let e = ctx.expr(expr)?;
            let text = if ctx.json { ctx.json_of(&e).to_string() } else { format_plain(&e, Some(&ctx.table.lie)) };
            Ok(Outcome::ok(format!("{text}\n")))
        }
        Command::Canon { expr } => Ok(Outcome::ok(ctx.single(&ctx.expr(expr)?))),
        Command::Wick { a, b } => {
            let (a, b) = (ctx.expr(a)?, ctx.expr(b)?);
            let r = engine.wick(&a, &b);
            Ok(with_oracle(&ctx, &a, &b, &[(-1, r.clone())], ctx.single(&r)))
        }
        Command::Circle { a, b, n } => {
            let (a, b) = (ctx.expr(a)?, ctx.expr(b)?);
            let r = engine.circle(&a, &b, *n);
            Ok(with_oracle(&ctx, &a, &b, &[(*n, r.clone())], ctx.single(&r)))
        }
        Command::Ope { a, b } => {
            let (a, b) = (ctx.expr(a)?, ctx.expr(b)?);
            let terms = engine.ope_singular(&a, &b);
            let text = if ctx.json {
                let list: Vec<Value> = terms.iter().map(|(n, e)| json!({"n": n, "coefficient": ctx.json_of(e)})).collect();
                format!("{}\n", Value::Array(list))
            } else if terms.is_empty() {
                "~ 0\n".to_string()
            } else {
                let parts: Vec<String> = terms.iter().map(|(n, e)| format!("({})(z-w)^-{}", ctx.show(e), n + 1)).collect();
                format!("~ {}\n", parts.join(" + "))
            };
            let checks: Vec<(i64, Expr)> = terms.iter().map(|(n, e)| (*n as i64, e.clone())).collect();
            Ok(with_oracle(&ctx, &a, &b, &checks, text))
        }
        Command::Mode { op, k, target } => {
            let (op, target) = (ctx.expr(op)?, ctx.expr(target)?);
            let r = ctx.table.apply_mode(&op, *k, &target);
            Ok(with_oracle(&ctx, &op, &target, &[(*k as i64, r.clone())], ctx.single(&r)))
        }
        Command::Grade { expr } => Ok(Outcome::ok(grade(&ctx, &ctx.expr(expr)?))),
        Command::Verify { suites } => {
            let reports = run_suites(suites, seed).map_err(|e| CliError::Usage(e.to_string()))?;
            Ok(report_outcome(&ctx, &reports))
        }
        Command::PsiClass { monomial } => {
            let mu: Sl2Monomial = monomial.parse().map_err(|e| CliError::Usage(format!("{e}")))?;
            match psi_class(ctx.table, mu) {
                Ok(rec) => {
                    let text = if ctx.json {
                        format!("{}\n", rec.to_json(ctx.table))
                    } else {
                        format!(
                            "Ψ({mu}): weight {}, degree {}\nφ = {}\nψ = {}\n",
                            mu.weight(),
                            mu.degree(),
                            ctx.show(&rec.phi),
                            ctx.show(&rec.psi)
                        )
                    };
                    Ok(Outcome::ok(text))
                }
                Err(e) => Ok(Outcome { code: 1, stdout: String::new(), stderr: format!("error: {e}\n") }),
            }
        }
        Command::HClass { n } => {
            if *n == 0 {
                return Err(CliError::Usage("h-class needs n ≥ 1".into()));
            }
            match h_class(ctx.table, *n) {
                Ok(h) => Ok(Outcome::ok(ctx.single(&h))),
                Err(e) => Ok(Outcome { code: 1, stdout: String::new(), stderr: format!("error: {e}\n") }),
            }
        }
        Command::Jet { command } => Ok(jet(&ctx, command, seed)),
        Command::OracleDiff { a, b, n } => {
            let (a, b) = (ctx.expr(a)?, ctx.expr(b)?);
            Ok(oracle_diff(&ctx, &a, &b, *n))
        }
    }
}

fn grade(ctx: &Ctx, e: &Expr) -> String {
    let show = |g: Result<Option<i64>, _>| match g {
        Ok(Some(v)) => json!(v),
        Ok(None) => Value::Null,
        Err(_) => json!("inhomogeneous"),
    };
    let parity = match e.parity() {
        Ok(Some(true)) => json!("odd"),
        Ok(Some(false)) => json!("even"),
        Ok(None) => Value::Null,
        Err(_) => json!("inhomogeneous"),
    };
    let v = json!({
        "weight": show(e.weight()),
        "degree": show(e.degree()),
        "b_number": show(e.b_number()),
        "poly_degree": e.poly_degree(),
        "parity": parity,
    });
    if ctx.json {
        return format!("{v}\n");
    }
    let mut s = String::new();
    for key in ["weight", "degree", "b_number", "poly_degree", "parity"] {
        let val = &v[key];
        let text = val.as_str().map_or_else(|| val.to_string(), str::to_string);
        let _ = writeln!(s, "{key}: {text}");
    }
    s
}

fn report_outcome(ctx: &Ctx, reports: &[Report]) -> Outcome {
    let passed = reports.iter().all(Report::passed);
    let inconclusive = reports.iter().any(Report::has_inconclusive);
    let stdout = if ctx.json {
        let list: Vec<Value> = reports.iter().map(|r| r.to_json(Some(&ctx.table.lie))).collect();
        let v = json!({"passed": passed, "inconclusive": inconclusive, "reports": list});
        format!("{}\n", serde_json::to_string_pretty(&v).expect("JSON values serialize"))
    } else {
        reports.iter().map(|r| r.render(Some(&ctx.table.lie))).collect::<Vec<_>>().join("\n")
    };
    let stderr = if inconclusive && passed { "warning: some checks are inconclusive\n".to_string() } else { String::new() };
    Outcome { code: if passed { 0 } else { 1 }, stdout, stderr }
}

fn with_oracle(ctx: &Ctx, a: &Expr, b: &Expr, products: &[(i64, Expr)], stdout: String) -> Outcome {
    if !ctx.oracle_check {
        return Outcome::ok(stdout);
    }
    let oracle = FockOracle::new(ORACLE_TRUNCATION);
    let mut stderr = String::new();
    let mut code = 0;
    for (n, expected) in products {
        match oracle.agrees(a, b, *n, expected) {
            Ok(true) => {
                let _ = writeln!(stderr, "oracle: ∘{n} agrees");
            }
            Ok(false) => {
                code = 1;
                let _ = writeln!(stderr, "oracle: ∘{n} DISAGREES");
            }
            Err(e) => {
                let _ = writeln!(stderr, "warning: oracle: ∘{n} not checked: {e}");
            }
        }
    }
    Outcome { code, stdout, stderr }
}

fn fock_json(v: &FockVector) -> Value {
    Value::Array(
        v.iter()
            .map(|(state, c)| {
                let modes: Vec<Value> = state.iter().map(|m| json!([m.species.name(), m.index, m.n])).collect();
                json!({"coeff": voaforge_core::rational::format_q(c), "modes": modes})
            })
            .collect(),
    )
}

fn oracle_diff(ctx: &Ctx, a: &Expr, b: &Expr, n: i64) -> Outcome {
    let engine = Engine::global().circle(a, b, n);
    let oracle = FockOracle::new(ORACLE_TRUNCATION);
    let states = oracle.circle(a, b, n).and_then(|o| oracle.state_of(&engine).map(|e| (o, e)));
    match states {
        Err(OracleError::Truncation { weight, limit }) => Outcome {
            code: 0,
            stdout: ctx.single(&engine),
            stderr: format!("warning: weight {weight} exceeds the truncation {limit}; not compared\n"),
        },
        Ok((from_oracle, from_engine)) => {
            let agree = from_oracle == from_engine;
            let stdout = if ctx.json {
                let v = json!({
                    "agree": agree,
                    "engine": ctx.json_of(&engine),
                    "oracle_state": fock_json(&from_oracle),
                    "engine_state": fock_json(&from_engine),
                });
                format!("{v}\n")
            } else {
                let mut s = format!("engine: {}\n", ctx.show(&engine));
                let _ = writeln!(s, "{}", if agree { "oracle: agrees" } else { "oracle: DISAGREES" });
                if !agree {
                    let _ = writeln!(s, "oracle state: {}", fock_json(&from_oracle));
                    let _ = writeln!(s, "engine state: {}", fock_json(&from_engine));
                }
                s
            };
            Outcome { code: if agree { 0 } else { 1 }, stdout, stderr: String::new() }
        }
    }
}

fn basis_json(basis: &[JetPoly]) -> Value {
    Value::Array(basis.iter().map(|p| json!(p.to_string())).collect())
}

fn jet(ctx: &Ctx, command: &JetCommand, seed: u64) -> Outcome {
    match command {
        JetCommand::VerifyAppendix => report_outcome(ctx, &[verify_appendix(seed)]),
        JetCommand::Invariants { copies, level, weight, degree } => {
            let ring = JetRing::adjoint_copies(*copies, *level);
            let gens: Vec<JetPoly> = weyl_generators(*copies).generators().into_iter().map(|g| g.poly).collect();
            let inv = match invariant_component(&ring, *weight, *degree) {
                Ok(inv) => inv,
                Err(e) => return Outcome::usage(format!("error: {e}\n")),
            };
            let gen = match generated_component(&ring, &gens, *weight, *degree) {
                Ok(gen) => gen,
                Err(e) => return Outcome::usage(format!("error: {e}\n")),
            };
            let equal = inv.dimension == gen.dimension;
            let stdout = if ctx.json {
                let v = json!({
                    "copies": copies,
                    "level": level,
                    "weight": weight,
                    "degree": degree,
                    "slice_size": inv.slice_size,
                    "torus_neutral": inv.candidates,
                    "invariant_dimension": inv.dimension,
                    "generated_dimension": gen.dimension,
                    "equal": equal,
                    "basis": basis_json(&inv.basis),
                });
                format!("{}\n", serde_json::to_string_pretty(&v).expect("JSON values serialize"))
            } else {
                let mut s = format!(
                    "V^{copies}, level {level}, weight {weight}, degree {degree}: slice {}, torus-neutral {}\n\
                     invariant dimension {}, generated dimension {}\n",
                    inv.slice_size, inv.candidates, inv.dimension, gen.dimension
                );
                for p in &inv.basis {
                    let _ = writeln!(s, "  {p}");
                }
                s
            };
            Outcome { code: if equal { 0 } else { 1 }, stdout, stderr: String::new() }
        }
    }
}
