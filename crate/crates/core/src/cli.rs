//! `kk` command-line front end.
//!
//! Exit codes: 0 on success, 1 on solver or I/O failure, 2 on usage errors.

use std::ffi::OsString;
use std::io::Write;
use std::ops::RangeInclusive;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::harness::{
    convergence_study, preset, relative_error, write_report, write_trajectory, HarnessError, InitialData, RunConfig,
    PRESET_NAMES,
};
use crate::model::{validate_phi, Grid1D, PhiModel};
use crate::riemann::{sample_on_grid, RiemannData};
use crate::schemes::{advance, BoundaryPolicy, CflPolicy, SchemeKind};

#[derive(Debug, Parser)]
#[command(
    name = "kk",
    version,
    about = "Upwind solvers for the symmetric Keyfitz-Kranzer system u_t + (u phi(|u|))_x = 0"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Advance one configuration and write a CSV snapshot per output time
    Run {
        #[command(flatten)]
        run: RunArgs,
        /// Output prefix; files are named <PATH>_t<time>.csv [default: run]
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
    },
    /// Grid-refinement study against the exact solution on 2^N cells per level
    Convergence {
        #[command(flatten)]
        run: RunArgs,
        /// Refinement levels N, inclusive
        #[arg(long, value_name = "A..B", default_value = "5..10", value_parser = parse_levels)]
        levels: RangeInclusive<u32>,
        /// Also write the report as CSV to this path [default: print only]
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
    },
    /// Run a predefined experiment end to end and report its error
    Experiment {
        /// One of exp1a, exp1b, exp2-1, exp2-2, exp2-3, exp2-4, table1
        #[arg(value_name = "PRESET")]
        name: String,
        /// Scheme to use [default: the preset's scheme]
        #[arg(long, value_name = "NAME", value_parser = parse_scheme)]
        scheme: Option<SchemeKind>,
        /// Output prefix for snapshots [default: the preset name]
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
    },
    /// Check the assumptions on phi and that every preset is well formed
    Validate {
        /// Nonlinearity, power:P means phi(r) = r^P
        #[arg(long, value_name = "power:P", default_value = "power:2", value_parser = parse_phi)]
        phi: f64,
        /// Upper end of the sampled radius interval
        #[arg(long, value_name = "R", default_value_t = 4.0)]
        r_max: f64,
        /// Number of sample radii
        #[arg(long, value_name = "K", default_value_t = 100)]
        samples: usize,
    },
}

/// Flags shared by `run` and `convergence`. Unset flags fall back to the
/// preset, then to the documented defaults.
#[derive(Debug, Args)]
pub struct RunArgs {
    /// Start from a predefined set-up (exp1a, exp1b, exp2-1..exp2-4, table1) [default: none, custom run]
    #[arg(long, value_name = "NAME")]
    pub preset: Option<String>,
    /// coupled | split-cons | split-polar | semi | semi-heun [default: preset's scheme, else coupled]
    #[arg(long, value_name = "NAME", value_parser = parse_scheme)]
    pub scheme: Option<SchemeKind>,
    /// Computational domain [default: preset's, else -1 20]
    #[arg(long, num_args = 2, value_names = ["A", "B"], allow_negative_numbers = true)]
    pub domain: Option<Vec<f64>>,
    /// Number of cells [default: preset's, else 1000]
    #[arg(long, value_name = "J")]
    pub cells: Option<usize>,
    /// CFL number in (0, 1] [default: 0.75]
    #[arg(long, value_name = "C")]
    pub cfl: Option<f64>,
    /// Final time [default: preset's, else 0.5]
    #[arg(long, value_name = "T")]
    pub tend: Option<f64>,
    /// Riemann states, comma separated, e.g. --riemann 1,1 3,1 [default: preset's; required without --preset]
    #[arg(long, num_args = 2, value_names = ["UL", "UR"], allow_negative_numbers = true)]
    pub riemann: Option<Vec<String>>,
    /// Nonlinearity, power:P means phi(r) = r^P [default: power:2]
    #[arg(long, value_name = "power:P", value_parser = parse_phi)]
    pub phi: Option<f64>,
    /// Left boundary: zero-gradient | periodic [default: zero-gradient]
    #[arg(long, value_name = "BC", value_parser = parse_bc)]
    pub bc: Option<BoundaryPolicy>,
    /// Also enforce the step restriction of the weak-BV estimate [default: off]
    #[arg(long)]
    pub strict_cfl: bool,
}

fn parse_scheme(s: &str) -> Result<SchemeKind, String> {
    s.parse()
}

fn parse_bc(s: &str) -> Result<BoundaryPolicy, String> {
    s.parse()
}

fn parse_phi(s: &str) -> Result<f64, String> {
    let p = s
        .strip_prefix("power:")
        .ok_or_else(|| format!("expected power:P, got '{s}'"))?
        .parse::<f64>()
        .map_err(|e| format!("bad exponent in '{s}': {e}"))?;
    if !(p >= 1.0 && p.is_finite()) {
        return Err(format!("exponent must be >= 1, got {p}"));
    }
    Ok(p)
}

fn parse_levels(s: &str) -> Result<RangeInclusive<u32>, String> {
    let (a, b) = s.split_once("..").ok_or_else(|| format!("expected A..B, got '{s}'"))?;
    let a: u32 = a.trim().parse().map_err(|e| format!("bad level '{a}': {e}"))?;
    let b: u32 = b.trim().parse().map_err(|e| format!("bad level '{b}': {e}"))?;
    if a > b || b > 24 {
        return Err(format!("levels must satisfy A <= B <= 24, got {a}..{b}"));
    }
    Ok(a..=b)
}

fn parse_vector(flag: &str, s: &str) -> Result<Vec<f64>, CliError> {
    s.split(',')
        .map(|c| c.trim().parse::<f64>())
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| CliError::Usage(format!("{flag}: cannot parse vector '{s}': {e}")))
}

#[derive(Debug)]
enum CliError {
    Usage(String),
    Run(String),
}

impl From<HarnessError> for CliError {
    fn from(e: HarnessError) -> Self {
        CliError::Run(e.to_string())
    }
}

impl From<crate::schemes::SchemeError> for CliError {
    fn from(e: crate::schemes::SchemeError) -> Self {
        CliError::Run(e.to_string())
    }
}

fn usage_from<E: std::fmt::Display>(flag: &str) -> impl Fn(E) -> CliError + '_ {
    move |e| CliError::Usage(format!("{flag}: {e}"))
}

impl RunArgs {
    /// Merges preset values, explicit flags and defaults into a configuration.
    fn resolve(&self) -> Result<RunConfig, CliError> {
        let mut cfg = match &self.preset {
            Some(name) => preset(name).map_err(usage_from("--preset"))?,
            None => {
                let states = self
                    .riemann
                    .as_ref()
                    .ok_or_else(|| CliError::Usage("--riemann is required when no --preset is given".into()))?;
                let ul = parse_vector("--riemann", &states[0])?;
                let ur = parse_vector("--riemann", &states[1])?;
                let data = RiemannData::new(ul, ur).map_err(usage_from("--riemann"))?;
                RunConfig {
                    scheme: SchemeKind::Coupled,
                    model: PhiModel::quadratic(1.0).map_err(usage_from("--phi"))?,
                    grid: Grid1D::new(-1.0, 20.0, 1000).map_err(usage_from("--domain"))?,
                    cfl: CflPolicy::default(),
                    bc: BoundaryPolicy::ZeroGradient,
                    t_end: 0.5,
                    initial: InitialData::Riemann(data),
                    init_rule: Default::default(),
                    output_times: vec![0.0, 0.5],
                }
            }
        };
        if self.preset.is_some() {
            if let Some(states) = &self.riemann {
                let ul = parse_vector("--riemann", &states[0])?;
                let ur = parse_vector("--riemann", &states[1])?;
                cfg.initial = InitialData::Riemann(RiemannData::new(ul, ur).map_err(usage_from("--riemann"))?);
            }
        }
        if let Some(scheme) = self.scheme {
            cfg.scheme = scheme;
        }
        if self.domain.is_some() || self.cells.is_some() {
            let (a, b) = match &self.domain {
                Some(d) => (d[0], d[1]),
                None => (cfg.grid.x_min(), cfg.grid.x_max()),
            };
            let cells = self.cells.unwrap_or(cfg.grid.num_cells());
            cfg.grid = Grid1D::new(a, b, cells).map_err(usage_from(if self.domain.is_some() {
                "--domain"
            } else {
                "--cells"
            }))?;
        }
        if let Some(t) = self.tend {
            if !(t >= 0.0 && t.is_finite()) {
                return Err(CliError::Usage(format!("--tend: final time must be non-negative, got {t}")));
            }
            cfg.t_end = t;
            cfg.output_times = if t > 0.0 { vec![0.0, t] } else { vec![0.0] };
        }
        let cfl_number = self.cfl.unwrap_or(cfg.cfl.cfl_number());
        cfg.cfl = if self.strict_cfl { CflPolicy::strict(cfl_number, None) } else { CflPolicy::practical(cfl_number) }
            .map_err(usage_from("--cfl"))?;
        if let Some(bc) = self.bc {
            cfg.bc = bc;
        }
        let r_bound = match &cfg.initial {
            InitialData::Riemann(d) => crate::model::norm(&d.u_left).max(crate::model::norm(&d.u_right)),
            _ => cfg.model.r_max() / 1.05,
        };
        let r_max = if r_bound > 0.0 { 1.05 * r_bound } else { 1.0 };
        let exponent = self.phi.or(cfg.model.power_exponent()).unwrap_or(2.0);
        cfg.model = PhiModel::power(exponent, r_max).map_err(usage_from("--phi"))?;
        cfg.validate().map_err(usage_from("configuration"))?;
        Ok(cfg)
    }
}

/// Parses `args` and runs the command, writing data to `out` and
/// diagnostics to `err`. Returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            if code == 0 {
                let _ = write!(out, "{text}");
            } else {
                let _ = write!(err, "{text}");
            }
            return code;
        }
    };
    match execute(cli.command, out, err) {
        Ok(code) => code,
        Err(CliError::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
        Err(CliError::Run(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            1
        }
    }
}

/// Entry point used by the `kk` binary.
pub fn main_with_args() -> i32 {
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run(std::env::args_os(), &mut stdout.lock(), &mut stderr.lock())
}

fn io(e: std::io::Error) -> CliError {
    CliError::Run(e.to_string())
}

fn execute(command: Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, CliError> {
    match command {
        Command::Run { run, out: prefix } => {
            let cfg = run.resolve()?;
            let prefix = prefix.unwrap_or_else(|| PathBuf::from("run"));
            run_and_write(&cfg, &prefix, out, err)?;
            Ok(0)
        }
        Command::Convergence { run, levels, out: path } => {
            let base = run.resolve()?;
            let report = convergence_study(&base, levels)?;
            writeln!(out, "scheme {}", report.scheme).map_err(io)?;
            writeln!(out, "{:>3} {:>14} {:>10} {:>6}", "N", "dx", "E(%)", "rate").map_err(io)?;
            for row in &report.rows {
                let e = row.error.map(|v| format!("{v:.4}")).unwrap_or_else(|| "failed".into());
                let rate = row.rate.map(|v| format!("{v:.2}")).unwrap_or_default();
                writeln!(out, "{:>3} {:>14.8} {:>10} {:>6}", row.level, row.dx, e, rate).map_err(io)?;
                if let Some(f) = &row.failure {
                    writeln!(err, "level {}: {f}", row.level).map_err(io)?;
                }
            }
            if let Some(path) = path {
                write_report(&report, &path)?;
                writeln!(err, "wrote {}", path.display()).map_err(io)?;
            }
            Ok(if report.rows.iter().any(|r| r.failure.is_some()) { 1 } else { 0 })
        }
        Command::Experiment { name, scheme, out: prefix } => {
            let mut cfg = preset(&name).map_err(usage_from("PRESET"))?;
            if let Some(s) = scheme {
                cfg.scheme = s;
            }
            let prefix = prefix.unwrap_or_else(|| PathBuf::from(&name));
            run_and_write(&cfg, &prefix, out, err)?;
            Ok(0)
        }
        Command::Validate { phi, r_max, samples } => {
            let model = PhiModel::power(phi, r_max).map_err(usage_from("--phi"))?;
            let report = validate_phi(&model, samples).map_err(usage_from("--phi"))?;
            let mut ok = report.passed();
            writeln!(out, "phi = r^{phi} on [0, {r_max}], {samples} samples: {}", if ok { "ok" } else { "FAILED" })
                .map_err(io)?;
            for v in &report.violations {
                writeln!(out, "  violates {} at r = {} (value {})", v.assumption, v.r, v.value).map_err(io)?;
            }
            for name in PRESET_NAMES {
                let status = preset(name).and_then(|cfg| cfg.validate());
                writeln!(
                    out,
                    "preset {name}: {}",
                    match &status {
                        Ok(()) => "ok".to_string(),
                        Err(e) => format!("FAILED ({e})"),
                    }
                )
                .map_err(io)?;
                ok &= status.is_ok();
            }
            Ok(if ok { 0 } else { 1 })
        }
    }
}

fn run_and_write(
    cfg: &RunConfig,
    prefix: &std::path::Path,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<(), CliError> {
    let traj = advance(cfg)?;
    let paths = write_trajectory(&traj, &cfg.grid, prefix)?;
    for p in &paths {
        writeln!(err, "wrote {}", p.display()).map_err(io)?;
    }
    if let Some(w) = traj.stability_warnings().next() {
        writeln!(err, "warning: sup |u| grew from {} to {} (CFL violated)", w.sup_before, w.sup_after).map_err(io)?;
    }
    writeln!(out, "scheme {} cells {} steps {} t {}", traj.scheme, cfg.grid.num_cells(), traj.steps(), traj.final_time)
        .map_err(io)?;
    if let Some(exact) = cfg.exact_solution().ok().flatten() {
        for snap in traj.snapshots.iter().filter(|s| s.time > 0.0) {
            let reference = sample_on_grid(exact.as_ref(), &cfg.grid, snap.time);
            if let Ok(e) = relative_error(&snap.u, &reference) {
                writeln!(out, "t {} relative error {e:.6}%", snap.time).map_err(io)?;
            }
        }
    }
    Ok(())
}
