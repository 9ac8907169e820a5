//! The `ewlab` command-line front end.
//!
//! Exit codes: 0 success, 1 failed check or probe, 2 invalid input.

pub mod config;
pub mod report;
pub mod verify;

use std::fmt::Write as _;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;
use serde_json::{json, Value};

use crate::construct::{self, potential_asymptotics};
use crate::kernel::{Couplings, ModelConfig};
use crate::spectral::{
    self, probe_embedded, DiscreteHamiltonian, ProbeResult, ProbeSettings, SpectralError,
    StartVector,
};
use config::RunConfig;
use verify::{run_verification, VerifySettings};

#[derive(Debug, Parser)]
#[command(name = "ewlab", version, about = "Embedded-eigenvalue potentials: build, verify, probe, expand")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Common {
    /// JSON config file.
    #[arg(long)]
    pub config: PathBuf,
    /// Output file (default: stdout). Written atomically.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Replace the config grid: `start,end,step`.
    #[arg(long, value_name = "START,END,STEP", allow_hyphen_values = true)]
    pub grid_override: Option<String>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Sample V, every v_j and W on the grid and write CSV.
    Build(Common),
    /// Run the verification suite and write a JSON report.
    Verify(Common),
    /// Inverse iteration at each mu_j^2 on the truncated grid.
    Probe {
        #[command(flatten)]
        common: Common,
        /// Also probe `k` admissible coupling vectors drawn from the seed.
        #[arg(long, value_name = "K")]
        sweep: Option<usize>,
        /// Probe the free Dirichlet Laplacian on the grid instead.
        #[arg(long)]
        free_laplacian: bool,
    },
    /// Compare V with its two-term large-radius expansion.
    Expand {
        #[command(flatten)]
        common: Common,
        /// Radii (> 0).
        #[arg(required = true, allow_hyphen_values = true)]
        radii: Vec<f64>,
    },
}

/// A command outcome that maps onto an exit code.
#[derive(Debug)]
pub enum Failure {
    /// Exit 2.
    Input(String),
    /// Exit 1.
    Check(String),
}

impl Failure {
    pub fn exit_code(&self) -> i32 {
        match self {
            Failure::Input(_) => 2,
            Failure::Check(_) => 1,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            Failure::Input(m) | Failure::Check(m) => m,
        }
    }
}

fn input<E: std::fmt::Display>(e: E) -> Failure {
    Failure::Input(e.to_string())
}

fn check<E: std::fmt::Display>(e: E) -> Failure {
    Failure::Check(e.to_string())
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    match execute(&cli.command) {
        Ok(()) => 0,
        Err(f) => {
            eprintln!("ewlab: {}", f.message());
            f.exit_code()
        }
    }
}

pub fn execute(command: &Command) -> Result<(), Failure> {
    match command {
        Command::Build(common) => {
            let run = load(common)?;
            emit(common.out.as_deref(), &build_csv(&run).map_err(input)?)
        }
        Command::Verify(common) => {
            let run = load(common)?;
            let report = run_verification(&run, &VerifySettings::default()).map_err(check)?;
            emit(common.out.as_deref(), &report.to_json())?;
            let failed = report.failures();
            if failed.is_empty() {
                eprintln!("ewlab: {} checks passed", report.checks.len());
                Ok(())
            } else {
                Err(Failure::Check(format!("failed checks: {}", failed.join(", "))))
            }
        }
        Command::Probe {
            common,
            sweep,
            free_laplacian,
        } => {
            let run = load(common)?;
            let report = if *free_laplacian {
                free_probe_report(&run)?
            } else {
                probe_report(&run, *sweep)?
            };
            let text = serde_json::to_string_pretty(&report).expect("report serializes") + "\n";
            emit(common.out.as_deref(), &text)
        }
        Command::Expand { common, radii } => {
            let run = load(common)?;
            emit(common.out.as_deref(), &expand_table(&run.model, radii)?)
        }
    }
}

fn load(common: &Common) -> Result<RunConfig, Failure> {
    let mut run = RunConfig::load(&common.config).map_err(|e| match e {
        config::ConfigError::Io { .. } => check(e),
        other => input(other),
    })?;
    if let Some(spec) = &common.grid_override {
        run.override_grid(spec).map_err(input)?;
    }
    Ok(run)
}

/// Writes to `out` via a temporary file in the same directory and a rename,
/// or to stdout.
pub fn emit(out: Option<&Path>, text: &str) -> Result<(), Failure> {
    match out {
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes()).map_err(check)?;
            stdout.flush().map_err(check)
        }
        Some(path) => write_atomic(path, text).map_err(check),
    }
}

pub fn write_atomic(path: &Path, text: &str) -> std::io::Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(text.as_bytes())?;
    tmp.as_file().sync_all()?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}

/// `r,V_re,V_im,v1_re,v1_im,...,vn_re,vn_im,W`, one row per grid node.
pub fn build_csv(run: &RunConfig) -> Result<String, construct::ConstructError> {
    let cfg = &run.model;
    let mut out = String::from("r,V_re,V_im");
    for j in 1..=cfg.n() {
        let _ = write!(out, ",v{j}_re,v{j}_im");
    }
    out.push_str(",W\n");
    for r in run.grid.nodes() {
        let f = construct::frame(cfg, r)?;
        let pot = f.potential(cfg);
        let _ = write!(out, "{:.16e},{:.16e},{:.16e}", r, pot.re, pot.im);
        for z in &f.v {
            let _ = write!(out, ",{:.16e},{:.16e}", z.re, z.im);
        }
        let _ = writeln!(out, ",{:.16e}", construct::w_function(cfg, r));
    }
    Ok(out)
}

/// `r,V_re,V_im,leading,second_re,second_im,W,remainder,remainder_r3`.
pub fn expand_table(cfg: &ModelConfig, radii: &[f64]) -> Result<String, Failure> {
    if let Some(bad) = radii.iter().find(|r| !(r.is_finite() && **r > 0.0)) {
        return Err(Failure::Input(format!("radius must be > 0, got {bad}")));
    }
    let mut out = String::from("r,V_re,V_im,leading,second_re,second_im,W,remainder,remainder_r3\n");
    for &r in radii {
        let v = construct::potential_value(cfg, r).map_err(check)?.value;
        let t = potential_asymptotics(cfg, r).map_err(input)?;
        let rem = (v - t.total()).norm();
        let _ = writeln!(
            out,
            "{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e}",
            r,
            v.re,
            v.im,
            t.leading,
            t.second.re,
            t.second.im,
            t.w_value,
            rem,
            rem * r.powi(3)
        );
    }
    Ok(out)
}

fn probe_error(e: SpectralError) -> Failure {
    match e {
        SpectralError::GridNotAtOrigin(_) | SpectralError::NoInteriorNodes => input(e),
        other => check(other),
    }
}

fn probe_json(p: &ProbeResult) -> Value {
    json!({
        "j": p.j + 1,
        "shift": p.shift,
        "eigval_estimate": [p.eigval_estimate.re, p.eigval_estimate.im],
        "error": p.error(),
        "residual": p.residual,
        "boundary_leak": p.boundary_leak,
        "correlation": p.correlation,
        "iterations": p.iterations,
        "start": p.start,
    })
}

fn header(run: &RunConfig) -> Value {
    json!({
        "tool": env!("CARGO_PKG_NAME"),
        "version": env!("CARGO_PKG_VERSION"),
        "seed": run.seed,
        "grid": {"start": run.grid.start, "end": run.grid.end, "step": run.grid.step},
        "config": run.to_file(),
    })
}

/// Probe report for the configured couplings and, with `sweep = Some(k)`,
/// for `k` further coupling vectors.
///
/// Per eigenvalue the sweep reports `floor`, the largest `|estimate - mu_j^2|`
/// over all runs, and `spread`, the largest distance between two estimates.
pub fn probe_report(run: &RunConfig, sweep: Option<usize>) -> Result<Value, Failure> {
    let settings = ProbeSettings::default();
    let base = probe_embedded(&run.model, &run.grid, settings).map_err(probe_error)?;
    let mut report = header(run);
    report["probe"] = Value::Array(base.iter().map(probe_json).collect());
    if let Some(k) = sweep {
        let mut runs = vec![(run.model.a().to_vec(), base)];
        for a in spectral::sample_couplings(run.model.n(), k, run.seed) {
            let model = run
                .model
                .with_couplings(Couplings::new(a.clone()).map_err(input)?)
                .map_err(input)?;
            runs.push((a, probe_embedded(&model, &run.grid, settings).map_err(probe_error)?));
        }
        let summary = sweep_summary(&runs);
        report["sweep"] = json!({
            "count": k,
            "couplings": runs.iter().map(|(a, _)| a.iter().map(|z| [z.re, z.im]).collect::<Vec<_>>()).collect::<Vec<_>>(),
            "per_eigenvalue": summary.iter().map(|s| json!({
                "j": s.j + 1,
                "floor": s.floor,
                "spread": s.spread,
                "spread_below_floor": s.spread < s.floor,
            })).collect::<Vec<_>>(),
        });
    }
    Ok(report)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepSummary {
    pub j: usize,
    pub floor: f64,
    pub spread: f64,
}

pub fn sweep_summary(runs: &[(Vec<Complex64>, Vec<ProbeResult>)]) -> Vec<SweepSummary> {
    let n = runs.first().map_or(0, |(_, r)| r.len());
    (0..n)
        .map(|j| {
            let est: Vec<Complex64> = runs.iter().map(|(_, r)| r[j].eigval_estimate).collect();
            let floor = runs.iter().map(|(_, r)| r[j].error()).fold(0.0, f64::max);
            let mut spread = 0.0f64;
            for (i, x) in est.iter().enumerate() {
                for y in &est[i + 1..] {
                    spread = spread.max((x - y).norm());
                }
            }
            SweepSummary { j, floor, spread }
        })
        .collect()
}

/// Inverse iteration on the free Laplacian near its first three eigenvalues.
pub fn free_probe_report(run: &RunConfig) -> Result<Value, Failure> {
    let hd = DiscreteHamiltonian::free(&run.grid).map_err(probe_error)?;
    let mut rows = Vec::new();
    let mut worst = 0.0f64;
    for k in 1..=3usize.min(hd.dim()) {
        let exact = DiscreteHamiltonian::free_eigenvalue(&run.grid, k);
        let gap = DiscreteHamiltonian::free_eigenvalue(&run.grid, k + 1) - exact;
        let it = spectral::inverse_iteration(
            &hd,
            Complex64::new(exact + 0.1 * gap, 0.0),
            1e-10,
            500,
            &StartVector::Seeded(run.seed.wrapping_add(k as u64)),
        )
        .map_err(probe_error)?;
        let err = (it.eigval - exact).norm();
        worst = worst.max(err);
        rows.push(json!({
            "k": k,
            "exact": exact,
            "estimate": [it.eigval.re, it.eigval.im],
            "error": err,
            "iterations": it.iterations,
        }));
    }
    let mut report = header(run);
    report["free_laplacian"] = json!({"eigenvalues": rows, "max_error": worst, "pass": worst <= 1e-10});
    if worst > 1e-10 {
        return Err(Failure::Check(format!("free Laplacian error {worst:e} > 1e-10")));
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::GridSpec;

    fn stock(grid: GridSpec) -> RunConfig {
        RunConfig {
            model: ModelConfig::real(&[1.0], &[1.0]).unwrap(),
            grid,
            seed: 0,
        }
    }

    #[test]
    fn csv_shape() {
        let run = stock(GridSpec::new(0.0, 10.0, 0.01).unwrap());
        let csv = build_csv(&run).unwrap();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "r,V_re,V_im,v1_re,v1_im,W");
        assert_eq!(lines.len(), 1002);
        let first: Vec<f64> = lines[1].split(',').map(|x| x.parse().unwrap()).collect();
        assert_eq!(&first[..5], &[0.0; 5]);
    }

    #[test]
    fn expand_rejects_nonpositive() {
        let cfg = ModelConfig::real(&[1.0], &[1.0]).unwrap();
        assert!(matches!(expand_table(&cfg, &[1.0, 0.0]), Err(Failure::Input(_))));
        assert_eq!(expand_table(&cfg, &[50.0]).unwrap().lines().count(), 2);
    }

    #[test]
    fn free_hook_matches() {
        let run = stock(GridSpec::new(0.0, 10.0, 0.05).unwrap());
        let report = free_probe_report(&run).unwrap();
        assert_eq!(report["free_laplacian"]["pass"], true);
    }
}
