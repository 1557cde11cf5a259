//! `ihz`: exact integer linear algebra and circuit semantics on the command
//! line.
//!
//! Exit codes: 0 success, 1 negative answer (`eq` on unequal circuits, a
//! failing `axioms` run), 2 parse or usage error, 3 type error, 4 semantic
//! domain error.

use std::fs;
use std::io::{self, Read, Write};
use std::path::Path;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use ihz::circuit::{Circuit, Interface, TypeError};
use ihz::hnf::{hnf, kernel_basis};
use ihz::linrel::{phi, psi, Line};
use ihz::semantics::{
    classify, compare, cospan_form, frac, frac_add, frac_mul, normal_form, sem_cospan, sem_rel,
    sem_span, SemError, Verdict,
};
use ihz::span::{pullback, pushout};
use ihz::theory::{axioms, check_all, negative_controls, DEFAULT_SEED};
use ihz::{CospanZ, Int, MatZ, SpanZ};

#[derive(Parser, Debug)]
#[command(
    name = "ihz",
    version,
    about = "Exact linear algebra and circuit semantics over the integers"
)]
struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Reduced Hermite normal form H = A·U.
    Hnf { matrix: String },
    /// Integer kernel basis.
    Kernel { matrix: String },
    /// Pullback legs of f and g (common target).
    Pullback { f: String, g: String },
    /// Pushout legs of f and g (common source).
    Pushout { f: String, g: String },
    /// Denotation of a circuit.
    Sem {
        circuit: String,
        #[arg(long = "as", value_enum, default_value_t = Domain::Rel)]
        domain: Domain,
    },
    /// Exit 0 if the circuits denote the same relation, 1 otherwise.
    Eq { left: String, right: String },
    /// Span-form (or cospan-form) normal circuit.
    Normalize {
        circuit: String,
        #[arg(long)]
        cospan: bool,
    },
    /// Which subspace of Q×Q a 1->1 circuit denotes.
    Classify { circuit: String },
    /// Rational arithmetic with fraction circuits.
    Frac {
        #[arg(value_enum)]
        op: FracOp,
        #[arg(allow_hyphen_values = true)]
        x: String,
        #[arg(allow_hyphen_values = true)]
        y: String,
    },
    /// Check every registered axiom instance against the semantics.
    Axioms {
        /// Seed for the randomly drawn scalar instances.
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
    /// Parse and pretty-print a circuit.
    Fmt { circuit: String },
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum Domain {
    Rel,
    Span,
    Cospan,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum FracOp {
    Mul,
    Add,
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Parse(String),
    Type(String),
    Domain(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) | Failure::Parse(_) => 2,
            Failure::Type(_) => 3,
            Failure::Domain(_) => 4,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Parse(m) | Failure::Type(m) | Failure::Domain(m) => m,
        }
    }
}

impl From<TypeError> for Failure {
    fn from(e: TypeError) -> Self {
        Failure::Type(e.to_string())
    }
}

impl From<SemError> for Failure {
    fn from(e: SemError) -> Self {
        match e {
            SemError::Type(t) => t.into(),
            other => Failure::Domain(other.to_string()),
        }
    }
}

struct Output {
    text: String,
    code: u8,
}

impl Output {
    fn ok(text: String) -> Self {
        Output { text, code: 0 }
    }
}

fn read_source(arg: &str) -> Result<String, Failure> {
    if arg == "-" {
        let mut s = String::new();
        io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| Failure::Usage(format!("reading stdin: {e}")))?;
        return Ok(s);
    }
    fs::read_to_string(arg).map_err(|e| Failure::Usage(format!("{arg}: {e}")))
}

fn load_matrix(arg: &str) -> Result<MatZ, Failure> {
    let text = read_source(arg)?;
    MatZ::parse(&text).map_err(|e| Failure::Parse(format!("{arg}: {e}")))
}

/// A circuit from a file path if one exists, otherwise from the argument
/// itself.
fn load_circuit(arg: &str) -> Result<Circuit, Failure> {
    let text = if arg == "-" || Path::new(arg).is_file() {
        read_source(arg)?
    } else {
        arg.to_string()
    };
    Circuit::parse(&text).map_err(|e| Failure::Parse(e.to_string()))
}

fn typed(arg: &str) -> Result<(Circuit, Interface), Failure> {
    let c = load_circuit(arg)?;
    let i = c.typecheck()?;
    Ok((c, i))
}

fn labelled(parts: &[(&str, &MatZ)]) -> String {
    parts
        .iter()
        .map(|(name, m)| format!("# {name}\n{m}"))
        .collect()
}

fn span_text(s: &SpanZ) -> String {
    format!(
        "# span {} <- {} -> {}\n{}",
        s.source(),
        s.apex(),
        s.target(),
        labelled(&[("left", &s.left), ("right", &s.right)])
    )
}

fn cospan_text(c: &CospanZ) -> String {
    format!(
        "# cospan {} -> {} <- {}\n{}",
        c.source(),
        c.apex(),
        c.target(),
        labelled(&[("left", &c.left), ("right", &c.right)])
    )
}

fn legs_json(left: &MatZ, right: &MatZ) -> serde_json::Value {
    json!({ "left": left.to_json(), "right": right.to_json() })
}

fn render(json_mode: bool, text: String, value: serde_json::Value) -> String {
    if json_mode {
        format!(
            "{}\n",
            serde_json::to_string_pretty(&value).expect("json renders")
        )
    } else {
        text
    }
}

/// `p/q` or `p` as a pair of integers; `q` may be zero.
fn parse_fraction(s: &str) -> Result<(Int, Int), Failure> {
    let bad = || Failure::Parse(format!("bad fraction {s:?}, expected p/q"));
    let (p, q) = match s.split_once('/') {
        Some((p, q)) => (p, q),
        None => (s, "1"),
    };
    let p = ihz::num::parse_int(p.trim()).map_err(|_| bad())?;
    let q = ihz::num::parse_int(q.trim()).map_err(|_| bad())?;
    Ok((p, q))
}

fn run(cli: Cli) -> Result<Output, Failure> {
    let js = cli.json;
    Ok(match cli.command {
        Command::Hnf { matrix } => {
            let a = load_matrix(&matrix)?;
            let res = hnf(&a);
            let r = res.shape.zero_cols;
            let text = format!("{}# r = {r}\n", labelled(&[("H", &res.h), ("U", &res.u)]));
            let pivots: Vec<usize> = res.shape.pivot_rows.iter().map(|p| p + 1).collect();
            let value = json!({
                "h": res.h.to_json(),
                "u": res.u.to_json(),
                "r": r,
                "pivot_rows": pivots,
            });
            Output::ok(render(js, text, value))
        }
        Command::Kernel { matrix } => {
            let k = kernel_basis(&load_matrix(&matrix)?);
            Output::ok(render(js, k.to_text(), k.to_json()))
        }
        Command::Pullback { f, g } => {
            let (f, g) = (load_matrix(&f)?, load_matrix(&g)?);
            let (p, q) = pullback(&f, &g).map_err(|e| Failure::Domain(e.to_string()))?;
            Output::ok(render(
                js,
                labelled(&[("p", &p), ("q", &q)]),
                legs_json(&p, &q),
            ))
        }
        Command::Pushout { f, g } => {
            let (f, g) = (load_matrix(&f)?, load_matrix(&g)?);
            let (p, q) = pushout(&f, &g).map_err(|e| Failure::Domain(e.to_string()))?;
            Output::ok(render(
                js,
                labelled(&[("p", &p), ("q", &q)]),
                legs_json(&p, &q),
            ))
        }
        Command::Sem { circuit, domain } => {
            let (c, _) = typed(&circuit)?;
            let text = match domain {
                Domain::Rel => {
                    let r = sem_rel(&c)?;
                    render(js, r.to_text(), r.to_json())
                }
                Domain::Span => {
                    let s = sem_span(&c)?;
                    let mut v = legs_json(&s.left, &s.right);
                    v["relation"] = phi(&s).to_json();
                    render(js, span_text(&s), v)
                }
                Domain::Cospan => {
                    let k = sem_cospan(&c)?;
                    let mut v = legs_json(&k.left, &k.right);
                    v["relation"] = psi(&k).to_json();
                    render(js, cospan_text(&k), v)
                }
            };
            Output::ok(text)
        }
        Command::Eq { left, right } => {
            let (c1, _) = typed(&left)?;
            let (c2, _) = typed(&right)?;
            let verdict = compare(&c1, &c2);
            let code = if verdict.is_equal() { 0 } else { 1 };
            let (r1, r2) = (sem_rel(&c1)?, sem_rel(&c2)?);
            let text = match &verdict {
                Verdict::Equal => "equal\n".to_string(),
                v => format!("{v}\n# left\n{}# right\n{}", r1.to_text(), r2.to_text()),
            };
            let value = json!({
                "equal": verdict.is_equal(),
                "verdict": verdict.to_string(),
                "left": r1.to_json(),
                "right": r2.to_json(),
            });
            Output {
                text: render(js, text, value),
                code,
            }
        }
        Command::Normalize { circuit, cospan } => {
            let (c, _) = typed(&circuit)?;
            let n = if cospan {
                cospan_form(&c)?
            } else {
                normal_form(&c)?
            };
            Output::ok(render(
                js,
                format!("{n}\n"),
                json!({ "circuit": n.to_string() }),
            ))
        }
        Command::Classify { circuit } => {
            let (c, _) = typed(&circuit)?;
            let tag = classify(&c)?;
            Output::ok(render(js, format!("{tag}\n"), line_json(&tag)))
        }
        Command::Frac { op, x, y } => {
            let ((p, q), (r, s)) = (parse_fraction(&x)?, parse_fraction(&y)?);
            let (a, b) = (frac(p, q), frac(r, s));
            let c = match op {
                FracOp::Mul => frac_mul(a, b),
                FracOp::Add => frac_add(a, b),
            };
            let tag = classify(&c)?;
            let value = tag.value().ok_or_else(|| {
                Failure::Domain(format!("the result denotes {tag}, which is not a number"))
            })?;
            let mut v = line_json(&tag);
            v["circuit"] = json!(c.to_string());
            Output::ok(render(js, format!("{value}\n"), v))
        }
        Command::Axioms { seed } => {
            let report = check_all(&axioms(seed), &negative_controls());
            let code = if report.success() { 0 } else { 1 };
            Output {
                text: render(js, report.to_text(), report.to_json()),
                code,
            }
        }
        Command::Fmt { circuit } => {
            let c = load_circuit(&circuit)?;
            Output::ok(render(
                js,
                format!("{c}\n"),
                json!({ "circuit": c.to_string() }),
            ))
        }
    })
}

fn line_json(tag: &Line) -> serde_json::Value {
    json!({
        "tag": tag.to_string(),
        "value": tag.value().map(|v| v.to_string()),
    })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(out) => {
            let mut stdout = io::stdout().lock();
            let _ = stdout.write_all(out.text.as_bytes());
            ExitCode::from(out.code)
        }
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}
