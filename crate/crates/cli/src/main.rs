// SPDX-License-Identifier: Apache-2.0

//! `zxforge`: simulate circuits, translate and simplify ZX-diagrams, check
//! Hopf structures, and evaluate information-geometric quantities.
//!
//! Exit codes: 0 success, 1 diagrams not equivalent, 2 bad input, 3 size
//! cap exceeded, 4 soundness violation or unexpected axiom failure,
//! 5 step limit reached.

mod hopf_cmd;
mod infogeo_cmd;
mod output;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use zxforge::circuits::{circuit_unitary, parse_circuit, run_circuit, CircuitError};
use zxforge::tol::eq_tol_from_env;
use zxforge::zxgraph::random::{random_diagram, RandomConfig};
use zxforge::zxgraph::{circuit_to_zx, export, import_json, ExportFormat, ZxDiagram, ZxError};
use zxforge::zxrules::{simplify, verify_equivalence_tol, RuleError, SimplifyConfig};
use zxforge::State;

#[derive(Parser, Debug)]
#[command(name = "zxforge", version, about = "ZX-diagram rewriting, circuit simulation, Hopf checks and information geometry")]
struct Cli {
    #[command(flatten)]
    global: GlobalOpts,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct GlobalOpts {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    /// Equivalence tolerance (default: $ZXFORGE_TOL, else 1e-9).
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Maximum number of rewrite steps (default: ten times the node count).
    #[arg(long, global = true)]
    step_limit: Option<usize>,
    /// Seed for randomized inputs.
    #[arg(long, default_value_t = 0, global = true)]
    seed: u64,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Format {
    Json,
    Dot,
    Text,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print a circuit's unitary, or its output on a basis state.
    Simulate {
        file: PathBuf,
        /// Input basis state as a bitstring, qubit 0 first.
        #[arg(long)]
        input_state: Option<String>,
    },
    /// Translate a circuit into a ZX-diagram.
    ToZx { file: PathBuf },
    /// Simplify a diagram (or circuit) and check the result against the input.
    Simplify {
        /// `.zx.json` diagram or `.qc` circuit.
        file: Option<PathBuf>,
        /// Simplify a random diagram drawn from `--seed` instead of a file.
        #[arg(long, conflicts_with = "file")]
        random: bool,
        /// Check every step with the evaluator.
        #[arg(long)]
        verify_steps: bool,
    },
    /// Compare the linear maps of two diagrams or circuits.
    VerifyEquiv {
        left: PathBuf,
        right: PathBuf,
        /// Allow a global phase between the two.
        #[arg(long)]
        up_to_phase: bool,
    },
    /// Check Hopf and Frobenius axioms: `zx`, or `cyclic <n>` for the group algebra of Z_n.
    VerifyHopf {
        target: String,
        n: Option<usize>,
    },
    /// Information geometry: `fisher`, `qfi`, `qgt` or `fs` on a built-in family
    /// (`bernoulli`, `bloch-theta`, `diag-qubit`, `chart-<n>`).
    Infogeo {
        task: String,
        family: String,
        /// Parameters, comma separated (chart families take Re/Im pairs).
        #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
        theta: Option<Vec<f64>>,
        /// QFI formula: trace, eigen_sum or spectral.
        #[arg(long, default_value = "trace")]
        method: String,
    },
}

/// A failure with its exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    pub fn input(message: impl Into<String>) -> Self {
        Failure { code: 2, message: message.into() }
    }
}

impl From<CircuitError> for Failure {
    fn from(e: CircuitError) -> Self {
        let code = if matches!(e, CircuitError::TooLarge { .. }) { 3 } else { 2 };
        Failure { code, message: e.to_string() }
    }
}

impl From<ZxError> for Failure {
    fn from(e: ZxError) -> Self {
        let code = if matches!(e, ZxError::TooLarge { .. }) { 3 } else { 2 };
        Failure { code, message: e.to_string() }
    }
}

impl From<RuleError> for Failure {
    fn from(e: RuleError) -> Self {
        let code = match &e {
            RuleError::SoundnessViolation { .. } => 4,
            RuleError::StepLimitExceeded { .. } => 5,
            RuleError::Zx(z) => return Failure::from(z.clone()),
            RuleError::NoMatch { .. } | RuleError::TypeMismatch { .. } => 2,
        };
        Failure { code, message: e.to_string() }
    }
}

/// What a command produced: a document, and the exit code to report.
pub struct Outcome {
    pub body: Body,
    pub code: u8,
}

pub enum Body {
    Json(Value),
    /// Already-rendered DOT.
    Raw(String),
}

impl Outcome {
    pub fn ok(v: Value) -> Self {
        Outcome { body: Body::Json(v), code: 0 }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::input(format!("{}: {e}", path.display())))
}

fn is_circuit(path: &Path) -> bool {
    path.extension().is_some_and(|e| e == "qc")
}

/// `.qc` circuits are translated; `.zx.json` and `.json` files are read as diagrams.
fn load_diagram(path: &Path) -> Result<ZxDiagram, Failure> {
    let text = read(path)?;
    if is_circuit(path) {
        Ok(circuit_to_zx(&parse_circuit(&text)?)?)
    } else if path.extension().is_some_and(|e| e == "json") {
        Ok(import_json(&text)?)
    } else {
        Err(Failure::input(format!("{}: expected a .qc or .zx.json file", path.display())))
    }
}

fn tolerance(g: &GlobalOpts) -> Result<f64, Failure> {
    match g.tol {
        Some(t) if !(t.is_finite() && t > 0.0) => Err(Failure::input(format!("tolerance must be positive, got {t}"))),
        Some(t) => Ok(t),
        None => Ok(eq_tol_from_env()),
    }
}

fn cmd_simulate(file: &Path, input_state: Option<&str>) -> Result<Outcome, Failure> {
    let text = read(file)?;
    let circuit = parse_circuit(&text)?;
    let n = circuit.n_qubits();
    match input_state {
        None => {
            let u = circuit_unitary::<f64>(&circuit)?;
            Ok(Outcome::ok(json!({ "qubits": n, "unitary": output::matrix(&u) })))
        }
        Some(bits) => {
            let psi = State::from_bits(bits).ok_or_else(|| Failure::input(format!("bad input state {bits:?}")))?;
            let out = run_circuit(&circuit, &psi)?;
            Ok(Outcome::ok(json!({ "qubits": n, "input": bits, "state": output::vector(out.amplitudes()) })))
        }
    }
}

fn diagram_outcome(d: &ZxDiagram, format: Format) -> Outcome {
    match format {
        Format::Dot => Outcome { body: Body::Raw(export(d, ExportFormat::Dot)), code: 0 },
        _ => Outcome::ok(serde_json::from_str(&export(d, ExportFormat::Json)).expect("exported JSON parses")),
    }
}

fn cmd_to_zx(file: &Path, format: Format) -> Result<Outcome, Failure> {
    if !is_circuit(file) {
        return Err(Failure::input(format!("{}: to-zx expects a .qc circuit", file.display())));
    }
    Ok(diagram_outcome(&load_diagram(file)?, format))
}

fn cmd_simplify(file: Option<&Path>, random: bool, verify_steps: bool, g: &GlobalOpts) -> Result<Outcome, Failure> {
    let d = match (file, random) {
        (Some(f), _) => load_diagram(f)?,
        (None, true) => random_diagram(&mut ChaCha8Rng::seed_from_u64(g.seed), &RandomConfig::default()),
        (None, false) => return Err(Failure::input("simplify needs a file or --random")),
    };
    let config = SimplifyConfig { step_limit: g.step_limit, verify_steps, tol: tolerance(g)? };
    let out = simplify(&d, &config)?;
    if g.format == Format::Dot {
        return Ok(diagram_outcome(&out.diagram, Format::Dot));
    }
    let diagram: Value = serde_json::from_str(&export(&out.diagram, ExportFormat::Json)).expect("exported JSON parses");
    Ok(Outcome::ok(json!({
        "before": d.stats(),
        "after": out.diagram.stats(),
        "steps": out.steps,
        "soundness": out.verdict,
        "diagram": diagram,
    })))
}

fn cmd_verify_equiv(left: &Path, right: &Path, up_to_phase: bool, g: &GlobalOpts) -> Result<Outcome, Failure> {
    let (a, b) = (load_diagram(left)?, load_diagram(right)?);
    let report = verify_equivalence_tol(&a, &b, up_to_phase, tolerance(g)?)?;
    let code = if report.equivalent { 0 } else { 1 };
    Ok(Outcome { body: Body::Json(serde_json::to_value(report).expect("report serializes")), code })
}

fn run(cli: &Cli) -> Result<Outcome, Failure> {
    let g = &cli.global;
    if g.format == Format::Dot && !matches!(cli.command, Command::ToZx { .. } | Command::Simplify { .. }) {
        return Err(Failure::input("--format dot applies to to-zx and simplify only"));
    }
    match &cli.command {
        Command::Simulate { file, input_state } => cmd_simulate(file, input_state.as_deref()),
        Command::ToZx { file } => cmd_to_zx(file, g.format),
        Command::Simplify { file, random, verify_steps } => cmd_simplify(file.as_deref(), *random, *verify_steps, g),
        Command::VerifyEquiv { left, right, up_to_phase } => cmd_verify_equiv(left, right, *up_to_phase, g),
        Command::VerifyHopf { target, n } => hopf_cmd::run(target, *n),
        Command::Infogeo { task, family, theta, method } => infogeo_cmd::run(task, family, theta.as_deref(), method),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            let rendered = match out.body {
                Body::Raw(s) => s,
                Body::Json(v) => {
                    let v = output::rounded(v);
                    match cli.global.format {
                        Format::Text => output::text(&v),
                        _ => serde_json::to_string_pretty(&v).expect("value serializes") + "\n",
                    }
                }
            };
            print!("{rendered}");
            ExitCode::from(out.code)
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
