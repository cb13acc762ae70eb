//! Command-line front end. Every numeric result comes from the library; this
//! module only parses arguments and formats reports.

use std::f64::consts::PI;
use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::Serialize;
use serde_json::Value;

use crate::entanglement::purity_table;
use crate::error::Error;
use crate::scan::scan;
use crate::state::{parse_state_file, NamedState, PureState, NORM_REJECT_TOL};
use crate::teleport::{
    average_fidelity, criterion_check, eq5_factorization, simulate, Correction, RoleAssignment,
};
use crate::DEFAULT_TOL;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "qtele",
    version,
    about = "Faithful controlled teleportation through five-qubit channels"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Pair and single-qubit purities plus the maximal-entanglement check.
    Purity(CommonArgs),
    /// Unitarity of sigma^111 and sigma^112 for one assignment and angle.
    /// Exits 1 when the criterion fails.
    Criterion {
        #[command(flatten)]
        common: CommonArgs,
        #[command(flatten)]
        roles: RoleArgs,
        #[command(flatten)]
        angle: AngleArgs,
    },
    /// Classifies all 30 role assignments over Charlie's angle.
    Scan(CommonArgs),
    /// Simulates all 32 measurement outcomes of the protocol.
    Teleport {
        #[command(flatten)]
        common: CommonArgs,
        #[command(flatten)]
        roles: RoleArgs,
        #[command(flatten)]
        angle: AngleArgs,
        /// Input coefficients: 4 reals, 8 numbers as re,im pairs, or `random`.
        #[arg(long, default_value = "random", allow_hyphen_values = true)]
        input: String,
        /// Seed for `--input random`.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = CorrectionArg::Adjoint)]
        correction: CorrectionArg,
    },
    /// Checks the Pauli factorization of all 32 transformation operators.
    Eq5check {
        #[command(flatten)]
        common: CommonArgs,
        #[command(flatten)]
        roles: RoleArgs,
        #[command(flatten)]
        angle: AngleArgs,
    },
}

#[derive(Debug, Args)]
pub struct CommonArgs {
    /// Catalog name (man_m5, brown, ghz5, bell_*, product_zero_N) or a state
    /// file (JSON or `bitstring re im` lines).
    #[arg(long)]
    pub state: String,
    #[arg(long, value_enum, default_value_t = OutputFormat::Table)]
    pub output: OutputFormat,
    #[arg(long, default_value_t = DEFAULT_TOL)]
    pub tol: f64,
}

#[derive(Debug, Args)]
pub struct RoleArgs {
    /// Alice's qubits A1,A2.
    #[arg(long)]
    pub alice: String,
    /// Bob's qubits B1,B2.
    #[arg(long)]
    pub bob: String,
    /// Charlie's qubit.
    #[arg(long)]
    pub charlie: usize,
}

#[derive(Debug, Args)]
pub struct AngleArgs {
    /// Charlie's basis angle in radians; accepts `pi`, `pi/4`, `3pi/4`.
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    pub theta: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Table,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CorrectionArg {
    Adjoint,
    Inverse,
}

/// Result of one invocation.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn input_error(message: impl Into<String>) -> Self {
        Outcome {
            code: EXIT_INPUT,
            stdout: String::new(),
            stderr: format!("error: {}\n", message.into()),
        }
    }
}

/// Parses an angle in radians with `pi` aliases.
pub fn parse_theta(text: &str) -> Result<f64, String> {
    let t = text.trim().to_ascii_lowercase().replace(' ', "");
    let bad = || format!("cannot parse angle `{text}`");
    let value = match t.find("pi") {
        None => t.parse::<f64>().map_err(|_| bad())?,
        Some(pos) => {
            let head = t[..pos].trim_end_matches('*');
            let factor = match head {
                "" | "+" => 1.0,
                "-" => -1.0,
                h => h.parse::<f64>().map_err(|_| bad())?,
            };
            let tail = &t[pos + 2..];
            let divisor = match tail {
                "" => 1.0,
                d => d
                    .strip_prefix('/')
                    .and_then(|d| d.parse::<f64>().ok())
                    .ok_or_else(bad)?,
            };
            factor * PI / divisor
        }
    };
    if value.is_finite() {
        Ok(value)
    } else {
        Err(bad())
    }
}

fn parse_pair(text: &str, role: &str) -> Result<[usize; 2], String> {
    let parts: Vec<&str> = text.split(',').map(str::trim).collect();
    let parse = |s: &str| {
        s.parse::<usize>()
            .map_err(|_| format!("{role}: `{s}` is not a qubit label"))
    };
    match parts.as_slice() {
        [a, b] => Ok([parse(a)?, parse(b)?]),
        // `--alice 12` shorthand
        [ab] if ab.len() == 2 => {
            let (a, b) = ab.split_at(1);
            Ok([parse(a)?, parse(b)?])
        }
        _ => Err(format!("{role}: expected two qubit labels, got `{text}`")),
    }
}

fn assignment(roles: &RoleArgs) -> Result<RoleAssignment, String> {
    RoleAssignment::new(
        parse_pair(&roles.alice, "--alice")?,
        parse_pair(&roles.bob, "--bob")?,
        roles.charlie,
    )
    .map_err(|e| e.to_string())
}

/// Loads a catalog state or a state file.
pub fn load_state(source: &str) -> Result<PureState, String> {
    match source.parse::<NamedState>() {
        Ok(named) => named.build().map_err(|e| e.to_string()),
        Err(Error::UnknownState(_)) => {
            let path = PathBuf::from(source);
            let contents = std::fs::read_to_string(&path).map_err(|e| {
                format!("`{source}` is neither a catalog state nor a readable file: {e}")
            })?;
            parse_state_file(&contents).map_err(|e| format!("{}: {e}", path.display()))
        }
        Err(e) => Err(e.to_string()),
    }
}

/// Draws a state uniformly from the unit sphere of four complex
/// coefficients.
pub fn random_input(seed: u64) -> PureState {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let coefficients: Vec<Complex64> = (0..4)
        .map(|_| {
            let re: f64 = StandardNormal.sample(&mut rng);
            let im: f64 = StandardNormal.sample(&mut rng);
            Complex64::new(re, im)
        })
        .collect();
    PureState::new(2, coefficients).expect("gaussian sample is nonzero")
}

/// Parses `--input`: four reals, eight numbers as `re,im` pairs, or
/// `random`.
pub fn parse_input(text: &str, seed: u64) -> Result<PureState, String> {
    if text.trim().eq_ignore_ascii_case("random") {
        return Ok(random_input(seed));
    }
    let numbers = text
        .split(',')
        .map(|s| {
            s.trim()
                .parse::<f64>()
                .map_err(|_| format!("--input: `{}` is not a number", s.trim()))
        })
        .collect::<Result<Vec<f64>, String>>()?;
    let coefficients: Vec<Complex64> = match numbers.len() {
        4 => numbers.iter().map(|&r| Complex64::new(r, 0.0)).collect(),
        8 => numbers
            .chunks(2)
            .map(|p| Complex64::new(p[0], p[1]))
            .collect(),
        n => return Err(format!("--input: expected 4 or 8 numbers, got {n}")),
    };
    PureState::new_strict(2, coefficients, NORM_REJECT_TOL).map_err(|e| format!("--input: {e}"))
}

#[derive(Serialize)]
struct TeleportReport<'a> {
    assignment: RoleAssignment,
    theta: f64,
    seed: u64,
    input: &'a PureState,
    average_fidelity: f64,
    records: Vec<crate::teleport::TeleportationRecord>,
}

fn render(value: &Value, format: OutputFormat, table: fn(&Value) -> String) -> String {
    match format {
        OutputFormat::Json => {
            let mut s = serde_json::to_string_pretty(value).expect("report serializes");
            s.push('\n');
            s
        }
        OutputFormat::Table => table(value),
    }
}

fn num(v: &Value) -> String {
    match v {
        Value::Number(n) => n.to_string(),
        other => other.to_string(),
    }
}

fn purity_table_text(v: &Value) -> String {
    let mut out = String::from("pair  purity\n");
    for (k, p) in v["pairs"].as_object().into_iter().flatten() {
        let _ = writeln!(out, "{k:<5} {}", num(p));
    }
    out.push_str("\nqubit purity\n");
    for (k, p) in v["singles"].as_object().into_iter().flatten() {
        let _ = writeln!(out, "{k:<5} {}", num(p));
    }
    let _ = writeln!(
        out,
        "\nmmes {}  worst pair {}  max deviation {}",
        v["mmes"],
        v["worst_pair"].as_str().unwrap_or("?"),
        num(&v["max_deviation"])
    );
    out
}

fn roles_text(v: &Value) -> String {
    let pair = |x: &Value| {
        x.as_array()
            .map(|a| a.iter().map(num).collect::<String>())
            .unwrap_or_default()
    };
    format!(
        "{}|{}|{}",
        pair(&v["alice"]),
        pair(&v["bob"]),
        num(&v["charlie"])
    )
}

fn criterion_table_text(v: &Value) -> String {
    format!(
        "assignment        {}\ntheta             {}\nsigma111 defect   {}\nsigma112 defect   {}\npurity alice pair {}\npurity bob pair   {}\nverdict           {}\n",
        roles_text(&v["assignment"]),
        num(&v["theta"]),
        num(&v["sigma111_defect"]),
        num(&v["sigma112_defect"]),
        num(&v["purity_alice_pair"]),
        num(&v["purity_bob_pair"]),
        if v["pass"] == Value::Bool(true) { "PASS" } else { "FAIL" },
    )
}

fn scan_table_text(v: &Value) -> String {
    let mut out = String::from(
        "roles    kind            min_defect  argmin_theta  purity_alice  purity_bob  roots\n",
    );
    for e in v.as_array().into_iter().flatten() {
        let roots: Vec<String> = e["roots"]
            .as_array()
            .into_iter()
            .flatten()
            .map(num)
            .collect();
        let _ = writeln!(
            out,
            "{:<8} {:<15} {}  {}  {}  {}  [{}]",
            roles_text(e),
            e["kind"].as_str().unwrap_or("?"),
            num(&e["min_defect"]),
            num(&e["argmin_theta"]),
            num(&e["purity_alice"]),
            num(&e["purity_bob"]),
            roots.join(", ")
        );
    }
    out
}

fn teleport_table_text(v: &Value) -> String {
    let mut out = format!(
        "assignment {}  theta {}  seed {}\ni j n  probability  fidelity  recoverable\n",
        roles_text(&v["assignment"]),
        num(&v["theta"]),
        num(&v["seed"])
    );
    for r in v["records"].as_array().into_iter().flatten() {
        let o: Vec<String> = r["outcome"]
            .as_array()
            .into_iter()
            .flatten()
            .map(num)
            .collect();
        let _ = writeln!(
            out,
            "{}  {}  {}  {}",
            o.join(" "),
            num(&r["probability"]),
            num(&r["fidelity"]),
            r["recoverable"]
        );
    }
    let _ = writeln!(out, "average fidelity {}", num(&v["average_fidelity"]));
    out
}

fn eq5_table_text(v: &Value) -> String {
    format!(
        "assignment     {}\ntheta          {}\nlabels checked {}\nmax deviation  {}\nholds          {}\n",
        roles_text(&v["assignment"]),
        num(&v["theta"]),
        num(&v["labels_checked"]),
        num(&v["max_deviation"]),
        v["holds"]
    )
}

fn check_tol(tol: f64) -> Result<(), String> {
    if tol > 0.0 && tol.is_finite() {
        Ok(())
    } else {
        Err(format!("--tol must be positive, got {tol}"))
    }
}

fn to_value<T: Serialize>(report: &T) -> Value {
    serde_json::to_value(report).expect("report serializes")
}

fn execute(cli: &Cli) -> Result<Outcome, String> {
    let ok = |stdout: String| Outcome {
        code: EXIT_OK,
        stdout,
        stderr: String::new(),
    };
    match &cli.command {
        Command::Purity(common) => {
            check_tol(common.tol)?;
            let state = load_state(&common.state)?;
            let report = purity_table(&state, common.tol).map_err(|e| e.to_string())?;
            Ok(ok(render(
                &to_value(&report),
                common.output,
                purity_table_text,
            )))
        }
        Command::Criterion {
            common,
            roles,
            angle,
        } => {
            check_tol(common.tol)?;
            let assign = assignment(roles)?;
            let theta = parse_theta(&angle.theta)?;
            let state = load_state(&common.state)?;
            let report =
                criterion_check(&state, &assign, theta, common.tol).map_err(|e| e.to_string())?;
            Ok(Outcome {
                code: if report.pass { EXIT_OK } else { EXIT_FAIL },
                stdout: render(&to_value(&report), common.output, criterion_table_text),
                stderr: String::new(),
            })
        }
        Command::Scan(common) => {
            check_tol(common.tol)?;
            let state = load_state(&common.state)?;
            let report = scan(&state, common.tol).map_err(|e| e.to_string())?;
            Ok(ok(render(
                &to_value(&report),
                common.output,
                scan_table_text,
            )))
        }
        Command::Teleport {
            common,
            roles,
            angle,
            input,
            seed,
            correction,
        } => {
            check_tol(common.tol)?;
            let assign = assignment(roles)?;
            let theta = parse_theta(&angle.theta)?;
            let input = parse_input(input, *seed)?;
            let state = load_state(&common.state)?;
            let correction = match correction {
                CorrectionArg::Adjoint => Correction::Adjoint,
                CorrectionArg::Inverse => Correction::Inverse,
            };
            let records =
                simulate(&state, &assign, theta, &input, correction).map_err(|e| e.to_string())?;
            let report = TeleportReport {
                assignment: assign,
                theta,
                seed: *seed,
                input: &input,
                average_fidelity: average_fidelity(&records),
                records,
            };
            Ok(ok(render(
                &to_value(&report),
                common.output,
                teleport_table_text,
            )))
        }
        Command::Eq5check {
            common,
            roles,
            angle,
        } => {
            let assign = assignment(roles)?;
            let theta = parse_theta(&angle.theta)?;
            let state = load_state(&common.state)?;
            let report = eq5_factorization(&state, &assign, theta).map_err(|e| e.to_string())?;
            Ok(ok(render(
                &to_value(&report),
                common.output,
                eq5_table_text,
            )))
        }
    }
}

/// Runs one command. Exit code 0 on success, 1 when `criterion` fails, 2 on
/// bad input.
pub fn run(cli: &Cli) -> Outcome {
    execute(cli).unwrap_or_else(Outcome::input_error)
}

/// Parses `args` (including the program name) and runs.
pub fn run_args<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(&cli),
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let rendered = e.render().to_string();
            if e.use_stderr() {
                Outcome {
                    code,
                    stdout: String::new(),
                    stderr: rendered,
                }
            } else {
                Outcome {
                    code,
                    stdout: rendered,
                    stderr: String::new(),
                }
            }
        }
    }
}
