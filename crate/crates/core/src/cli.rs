//! Command-line front end: `grover`, `evolve`, `naive` and `verify`.
//!
//! Exit status is 0 on success, 1 when a verification sweep has failing
//! rows, and 2 for usage or domain errors.

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::ops::RangeInclusive;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::analog::{fg_arrival_time, h_arrival_time, naive_search, HamiltonianFamily, PlaneBasis};
use crate::error::{invalid, Error, Result};
use crate::grover::{
    grover_iterate, iteration_count, make_driver, success_trajectory, walsh_hadamard, DriverUnitary,
    SearchProblem,
};
use crate::linalg::{operator_norm, propagator, random_unitary, DenseOperator};
use crate::verify::{run_sweep, SweepOptions};
use crate::C64;

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECKS_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Largest qubit count `evolve` accepts; it builds dense propagators.
pub const MAX_EVOLVE_QUBITS: u32 = 10;

#[derive(Debug, Parser)]
#[command(name = "hamsearch", version, about = "Grover search and its Hamiltonian counterparts")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run k Grover iterations and report the success probability.
    Grover(GroverArgs),
    /// Evolve the start state under one of the search Hamiltonians.
    Evolve(EvolveArgs),
    /// Step I + eps*A from the uniform state and track the target amplitude.
    Naive(NaiveArgs),
    /// Run verification checks over a range of qubit counts.
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Args)]
pub struct Common {
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Write the report here instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Driver {
    /// Walsh-Hadamard transform.
    Hadamard,
    /// Haar-like random unitary drawn from --seed.
    Random,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IterSpec {
    Count(u64),
    Optimal,
    Paper,
}

fn parse_iter_spec(s: &str) -> std::result::Result<IterSpec, String> {
    match s {
        "optimal" => Ok(IterSpec::Optimal),
        "paper" => Ok(IterSpec::Paper),
        _ => s.parse().map(IterSpec::Count).map_err(|_| format!("expected an integer, 'optimal' or 'paper', got '{s}'")),
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TimeSpec {
    At(f64),
    T0,
    Arrival,
}

fn parse_time_spec(s: &str) -> std::result::Result<TimeSpec, String> {
    match s {
        "t0" => Ok(TimeSpec::T0),
        "arrival" => Ok(TimeSpec::Arrival),
        _ => match s.parse::<f64>() {
            Ok(t) if t.is_finite() => Ok(TimeSpec::At(t)),
            _ => Err(format!("expected a finite time, 't0' or 'arrival', got '{s}'")),
        },
    }
}

fn parse_qubits(s: &str) -> std::result::Result<u32, String> {
    let n: u32 = s.parse().map_err(|_| format!("expected a qubit count, got '{s}'"))?;
    if n == 0 {
        return Err("qubit count must be at least 1".into());
    }
    Ok(n)
}

/// `a..b` or `a..=b` (both inclusive), or a single `a`.
pub fn parse_n_range(s: &str) -> std::result::Result<RangeInclusive<u32>, String> {
    let bad = || format!("expected a range like 2..8, got '{s}'");
    let (lo, hi) = match s.split_once("..") {
        Some((lo, hi)) => (lo, hi.strip_prefix('=').unwrap_or(hi)),
        None => (s, s),
    };
    let lo: u32 = lo.trim().parse().map_err(|_| bad())?;
    let hi: u32 = hi.trim().parse().map_err(|_| bad())?;
    Ok(lo..=hi)
}

#[derive(Debug, Clone, Args)]
pub struct GroverArgs {
    #[arg(long, value_parser = parse_qubits)]
    pub n: u32,
    /// Target index.
    #[arg(long, default_value_t = 0)]
    pub w: usize,
    /// Iteration count, `optimal` or `paper`.
    #[arg(long, value_parser = parse_iter_spec, default_value = "optimal")]
    pub k: IterSpec,
    #[arg(long, value_enum, default_value_t = Driver::Hadamard)]
    pub driver: Driver,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum HamiltonianKind {
    Fg,
    Commutator,
    Augmented,
}

#[derive(Debug, Clone, Args)]
pub struct EvolveArgs {
    #[arg(long, value_parser = parse_qubits)]
    pub n: u32,
    #[arg(long, default_value_t = 0)]
    pub w: usize,
    #[arg(long, value_enum)]
    pub hamiltonian: HamiltonianKind,
    /// Evolution time, `t0` or `arrival`.
    #[arg(long, value_parser = parse_time_spec)]
    pub t: TimeSpec,
    #[arg(long, default_value_t = 1.0)]
    pub energy: f64,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Clone, Args)]
pub struct NaiveArgs {
    #[arg(long, value_parser = parse_qubits, default_value = "2")]
    pub n: u32,
    #[arg(long, default_value_t = 0)]
    pub w: usize,
    #[arg(long)]
    pub eps: f64,
    /// Defaults to ceil(1 / eps).
    #[arg(long)]
    pub max_steps: Option<usize>,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    /// Comma-separated check names, or `all`.
    #[arg(long, value_delimiter = ',', default_value = "all")]
    pub checks: Vec<String>,
    #[arg(long, value_parser = parse_n_range, default_value = "2..8")]
    pub n: RangeInclusive<u32>,
    /// Energy for the fg_arrival check.
    #[arg(long, default_value_t = 1.0)]
    pub energy: f64,
    #[command(flatten)]
    pub common: Common,
}

/// A finished command: the report text and whether every check passed.
struct Outcome {
    body: Vec<u8>,
    failures: Vec<String>,
}

impl Outcome {
    fn ok(body: Vec<u8>) -> Self {
        Self { body, failures: Vec::new() }
    }
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { stderr.write_all(text.as_bytes()) } else { stdout.write_all(text.as_bytes()) };
            return code;
        }
    };
    let common = match &cli.command {
        Command::Grover(a) => a.common.clone(),
        Command::Evolve(a) => a.common.clone(),
        Command::Naive(a) => a.common.clone(),
        Command::Verify(a) => a.common.clone(),
    };
    let outcome = match &cli.command {
        Command::Grover(a) => cmd_grover(a),
        Command::Evolve(a) => cmd_evolve(a),
        Command::Naive(a) => cmd_naive(a),
        Command::Verify(a) => cmd_verify(a),
    };
    let outcome = match outcome {
        Ok(o) => o,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            return EXIT_USAGE;
        }
    };
    if let Err(e) = emit(&outcome.body, common.out.as_ref(), stdout) {
        let _ = writeln!(stderr, "error: {e}");
        return EXIT_USAGE;
    }
    if outcome.failures.is_empty() {
        EXIT_OK
    } else {
        let _ = writeln!(stderr, "{} check(s) failed:", outcome.failures.len());
        for f in &outcome.failures {
            let _ = writeln!(stderr, "  {f}");
        }
        EXIT_CHECKS_FAILED
    }
}

fn emit(body: &[u8], out: Option<&PathBuf>, stdout: &mut dyn Write) -> io::Result<()> {
    match out {
        Some(path) => {
            let mut f = BufWriter::new(File::create(path)?);
            f.write_all(body)?;
            f.flush()
        }
        None => stdout.write_all(body),
    }
}

fn backend(e: impl std::fmt::Display) -> Error {
    Error::Backend(e.to_string())
}

fn build_driver(p: &SearchProblem, driver: Driver, seed: u64) -> Result<DriverUnitary> {
    let u = match driver {
        Driver::Hadamard => walsh_hadamard(p.qubits())?,
        Driver::Random => random_unitary(p.dim(), seed)?,
    };
    make_driver(&u, p)
}

/// Shortest round-trip form, matching the CSV rows.
fn num(v: f64) -> String {
    serde_json::Value::from(v).to_string()
}

fn summary_line(out: &mut Vec<u8>, key: &str, value: impl std::fmt::Display) -> Result<()> {
    writeln!(out, "# {key}={value}").map_err(backend)
}

fn cmd_grover(a: &GroverArgs) -> Result<Outcome> {
    let p = SearchProblem::new(a.n, a.w)?;
    let d = build_driver(&p, a.driver, a.common.seed)?;
    let counts = iteration_count(d.overlap())?;
    let k = match a.k {
        IterSpec::Count(k) => k,
        IterSpec::Optimal => counts.optimal,
        IterSpec::Paper => counts.paper,
    };
    let kmax = k.max(counts.paper).max(counts.optimal);
    let traj = success_trajectory(&p, &d, kmax)?;
    let success = traj[k as usize];
    let (p_paper, p_optimal) = (traj[counts.paper as usize], traj[counts.optimal as usize]);
    let rest = 1.0 - success;
    let largest_other = largest_non_target(&p, &d, k)?;

    let mut body = Vec::new();
    match a.common.format {
        Format::Csv => {
            summary_line(&mut body, "n", a.n)?;
            summary_line(&mut body, "N", p.dim())?;
            summary_line(&mut body, "w", a.w)?;
            summary_line(&mut body, "x", num(d.overlap()))?;
            summary_line(&mut body, "k", k)?;
            summary_line(&mut body, "k_paper", counts.paper)?;
            summary_line(&mut body, "k_optimal", counts.optimal)?;
            summary_line(&mut body, "p_paper", num(p_paper))?;
            summary_line(&mut body, "p_optimal", num(p_optimal))?;
            summary_line(&mut body, "success", num(success))?;
            summary_line(&mut body, "p_other_total", num(rest))?;
            summary_line(&mut body, "p_other_max", num(largest_other))?;
            let mut w = csv::Writer::from_writer(&mut body);
            w.write_record(["iteration", "success_probability"]).map_err(backend)?;
            for (i, prob) in traj.iter().take(k as usize + 1).enumerate() {
                w.serialize((i, prob)).map_err(backend)?;
            }
            w.flush().map_err(backend)?;
        }
        Format::Json => {
            let v = json!({
                "n": a.n, "N": p.dim(), "w": a.w, "x": d.overlap(),
                "k": k, "k_paper": counts.paper, "k_optimal": counts.optimal,
                "p_paper": p_paper, "p_optimal": p_optimal, "success": success,
                "p_other_total": rest, "p_other_max": largest_other,
                "trajectory": &traj[..=k as usize],
            });
            write_json(&mut body, &v)?;
        }
    }
    Ok(Outcome::ok(body))
}

fn largest_non_target(p: &SearchProblem, d: &DriverUnitary, k: u64) -> Result<f64> {
    let (state, _) = crate::grover::run_grover(p, d, k)?;
    Ok((0..p.dim()).filter(|&i| i != p.target()).map(|i| state.probability(i)).fold(0.0, f64::max))
}

fn write_json(body: &mut Vec<u8>, v: &serde_json::Value) -> Result<()> {
    serde_json::to_writer_pretty(&mut *body, v).map_err(backend)?;
    writeln!(body).map_err(backend)
}

fn cmd_evolve(a: &EvolveArgs) -> Result<Outcome> {
    if a.n > MAX_EVOLVE_QUBITS {
        return Err(invalid(format!("evolve supports n <= {MAX_EVOLVE_QUBITS}, got {}", a.n)));
    }
    let p = SearchProblem::new(a.n, a.w)?;
    let d = build_driver(&p, Driver::Hadamard, a.common.seed)?;
    let fam = HamiltonianFamily::new(&d.start_state(), a.w, a.energy)?;
    let x = fam.overlap();
    let t = match a.t {
        TimeSpec::At(t) => t,
        TimeSpec::T0 => fam.matching_time(),
        TimeSpec::Arrival => match a.hamiltonian {
            HamiltonianKind::Fg => fg_arrival_time(x, a.energy),
            _ => h_arrival_time(x, a.energy),
        },
    };
    let h = match a.hamiltonian {
        HamiltonianKind::Fg => fam.h_prime(),
        HamiltonianKind::Commutator => fam.h(),
        HamiltonianKind::Augmented => fam.h_tilde(),
    };
    let u = propagator(h, t)?;
    let state = u.apply(fam.sigma())?;
    let fidelity = state[a.w].norm_sqr();
    let basis = PlaneBasis::new(fam.sigma(), a.w)?;
    let c = basis.coords(&state);
    let out_of_plane = basis.out_of_plane(&state);
    let (label, distance) = match a.hamiltonian {
        HamiltonianKind::Fg => (None, None),
        HamiltonianKind::Commutator | HamiltonianKind::Augmented => {
            let g = grover_iterate(&d, &p)?;
            let (label, reference) = if a.hamiltonian == HamiltonianKind::Commutator {
                ("G+2P", &g + &fam.p().scale(C64::new(2.0, 0.0)))
            } else {
                ("G", g)
            };
            (Some(label), Some(operator_norm(&(&u - &reference as &DenseOperator))?.value()))
        }
    };

    let name = match a.hamiltonian {
        HamiltonianKind::Fg => "fg",
        HamiltonianKind::Commutator => "commutator",
        HamiltonianKind::Augmented => "augmented",
    };
    let mut body = Vec::new();
    match a.common.format {
        Format::Csv => {
            summary_line(&mut body, "hamiltonian", name)?;
            summary_line(&mut body, "n", a.n)?;
            summary_line(&mut body, "w", a.w)?;
            summary_line(&mut body, "energy", num(a.energy))?;
            summary_line(&mut body, "x", num(x))?;
            summary_line(&mut body, "t0", num(fam.t0()))?;
            if let (Some(label), Some(dist)) = (label, distance) {
                summary_line(&mut body, "reference", label)?;
                summary_line(&mut body, "distance", num(dist))?;
            }
            let mut w = csv::Writer::from_writer(&mut body);
            w.write_record([
                "t", "fidelity", "c_sigma_re", "c_sigma_im", "c_w_re", "c_w_im", "out_of_plane",
            ])
            .map_err(backend)?;
            w.serialize((t, fidelity, c.c_sigma.re, c.c_sigma.im, c.c_w.re, c.c_w.im, out_of_plane))
                .map_err(backend)?;
            w.flush().map_err(backend)?;
        }
        Format::Json => {
            let v = json!({
                "hamiltonian": name, "n": a.n, "w": a.w, "energy": a.energy, "x": x, "t0": fam.t0(),
                "t": t, "fidelity": fidelity,
                "c_sigma": [c.c_sigma.re, c.c_sigma.im], "c_w": [c.c_w.re, c.c_w.im],
                "out_of_plane": out_of_plane, "reference": label, "distance": distance,
            });
            write_json(&mut body, &v)?;
        }
    }
    Ok(Outcome::ok(body))
}

fn cmd_naive(a: &NaiveArgs) -> Result<Outcome> {
    let p = SearchProblem::new(a.n, a.w)?;
    if !(a.eps > 0.0 && a.eps <= 0.1) {
        return Err(invalid(format!("--eps must lie in (0, 0.1], got {}", a.eps)));
    }
    let steps = a.max_steps.unwrap_or((1.0 / a.eps).ceil() as usize);
    let traj = naive_search(&p, a.eps, steps)?;
    let mut body = Vec::new();
    match a.common.format {
        Format::Csv => {
            summary_line(&mut body, "n", a.n)?;
            summary_line(&mut body, "w", a.w)?;
            summary_line(&mut body, "eps", num(a.eps))?;
            summary_line(&mut body, "peak_step", traj.peak_step)?;
            summary_line(&mut body, "peak_amplitude", num(traj.peak_amplitude))?;
            let mut w = csv::Writer::from_writer(&mut body);
            w.write_record(["step", "amplitude"]).map_err(backend)?;
            for (i, amp) in traj.amplitudes.iter().enumerate() {
                w.serialize((i, amp)).map_err(backend)?;
            }
            w.flush().map_err(backend)?;
        }
        Format::Json => {
            let v = json!({
                "n": a.n, "w": a.w, "eps": a.eps,
                "peak_step": traj.peak_step, "peak_amplitude": traj.peak_amplitude,
                "amplitudes": traj.amplitudes,
            });
            write_json(&mut body, &v)?;
        }
    }
    Ok(Outcome::ok(body))
}

fn cmd_verify(a: &VerifyArgs) -> Result<Outcome> {
    let sweep = run_sweep(&a.checks, a.n.clone(), SweepOptions { seed: a.common.seed, energy: a.energy })?;
    let mut body = Vec::new();
    match a.common.format {
        Format::Csv => sweep.write_csv(&mut body)?,
        Format::Json => sweep.write_json(&mut body)?,
    }
    let failures = sweep
        .failures()
        .map(|r| {
            format!(
                "{} n={} measured={} predicted={} tolerance={}",
                r.check_name(),
                r.n(),
                r.measured(),
                r.predicted(),
                r.tolerance()
            )
        })
        .collect();
    Ok(Outcome { body, failures })
}
