//! Command-line front end: argument parsing, configuration loading,
//! experiment orchestration, and machine-readable artifacts.
//!
//! Exit codes: `0` success, `1` tolerance failure (a report was produced and
//! says "no"), `2` invalid configuration or input, `3` kernel exponent
//! overflow, `4` trace-coverage failure, `5` forward-solver constraint
//! violation. Tolerance verdicts never abort a run — reports are written
//! first, then the verdict picks the code.
//!
//! All artifacts are computed fully in memory before anything is written, so
//! a failed run leaves no partial files behind.

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use rayon::prelude::*;
use serde::Serialize;

use crate::config::{
    load_json, DecayConfig, FdtdCommandConfig, KernelCheckConfig, KernelEvalConfig,
    ReconstructConfig, SpectralConfig, TraceSource,
};
use crate::csvio::{
    read_trace_csv, write_convergence_csv, write_decay_csv, write_kernel_grid_csv,
    write_probes_csv, write_trace_csv, DecayRow, ProbePoint, TraceMeta,
};
use crate::error::{Error, Result};
use crate::fdtd::fdtd_run;
use crate::geometry::aperture_d;
use crate::kernel::{
    decay_constant_a, h_function, kernel_closed_form, kernel_fourier_oracle, KernelParams,
};
use crate::reconstruct::h_sweep;
use crate::synthetic::{
    mirror_time_even, superpose, AnalyticTrace, BoundaryTrace, Mode, SampledTrace,
};
use crate::transform::{i0_series, spectral_reconstruct};

#[derive(Parser, Debug)]
#[command(
    name = "waveback",
    version,
    about = "Regularized interior reconstruction for the sideways wave problem"
)]
struct Cli {
    /// JSON configuration file (documented defaults apply when omitted).
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<PathBuf>,

    /// Output directory for artifacts. kernel-eval prints to stdout when
    /// omitted; file-writing commands default to the current directory.
    #[arg(long, global = true, value_name = "DIR")]
    out: Option<PathBuf>,

    /// Worker-thread count (default: all cores). Results are bitwise
    /// independent of this setting.
    #[arg(long, global = true, value_name = "N")]
    threads: Option<usize>,

    /// Omit the generated_unix_seconds header comment, making repeated runs
    /// byte-identical.
    #[arg(long, global = true)]
    no_timestamp: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate the kernel K_h on an (x, t) grid (CSV)
    KernelEval,
    /// Cross-check the kernel's two representations and the Bessel identity (JSON)
    KernelCheck,
    /// Sweep h and reconstruct an interior value from boundary data (CSV + JSON)
    Reconstruct,
    /// Run the forward solver and record boundary trace and probes (CSV)
    Fdtd,
    /// Sample the kernel's decay band and its envelope across h (CSV)
    Decay,
    /// Fourier-domain reconstruction from a sampled trace (JSON)
    Spectral,
}

/// Parses `args` and runs the selected command, translating every outcome
/// into a process exit code. This is the whole binary; it is also the entry
/// point integration tests drive in-process.
pub fn run_from<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 2,
            };
            let _ = e.print();
            return code;
        }
    };
    let timestamp = if cli.no_timestamp { None } else { Some(unix_now()) };
    let run = || dispatch(&cli, timestamp);
    let outcome = match cli.threads {
        Some(0) => Err(Error::Config("--threads must be at least 1".into())),
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => pool.install(run),
            Err(e) => Err(Error::Config(format!("cannot build a {n}-thread pool: {e}"))),
        },
        None => run(),
    };
    match outcome {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

fn dispatch(cli: &Cli, timestamp: Option<u64>) -> Result<i32> {
    let cfg = cli.config.as_deref();
    let out = cli.out.as_deref();
    match cli.command {
        Command::KernelEval => cmd_kernel_eval(&load_json(cfg)?, out, timestamp),
        Command::KernelCheck => cmd_kernel_check(&load_json(cfg)?, out, timestamp),
        Command::Reconstruct => cmd_reconstruct(&load_json(cfg)?, out, timestamp),
        Command::Fdtd => cmd_fdtd(&load_json(cfg)?, out, timestamp),
        Command::Decay => cmd_decay(&load_json(cfg)?, out, timestamp),
        Command::Spectral => cmd_spectral(&load_json(cfg)?, out, timestamp),
    }
}

fn unix_now() -> u64 {
    std::time::SystemTime::now()
        .duration_since(std::time::UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0)
}

/// Writes one artifact under `dir`, creating the directory if needed.
fn write_artifact(dir: &Path, name: &str, text: &str) -> Result<PathBuf> {
    std::fs::create_dir_all(dir)?;
    let path = dir.join(name);
    std::fs::write(&path, text)?;
    println!("wrote {}", path.display());
    Ok(path)
}

fn json_artifact<T: Serialize>(value: &T) -> Result<String> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    Ok(text)
}

fn cmd_kernel_eval(
    cfg: &KernelEvalConfig,
    out: Option<&Path>,
    timestamp: Option<u64>,
) -> Result<i32> {
    let params = cfg.kernel.params()?;
    cfg.grid.validate()?;
    cfg.quad.validate()?;
    let rows: Vec<(f64, f64, f64)> = cfg
        .grid
        .points()
        .par_iter()
        .map(|&(x, t)| kernel_closed_form(x, t, &params, &cfg.quad).map(|k| (x, t, k)))
        .collect::<Result<_>>()?;
    let text = write_kernel_grid_csv(&rows, &params, timestamp);
    match out {
        Some(dir) => {
            write_artifact(dir, "kernel_eval.csv", &text)?;
        }
        None => print!("{text}"),
    }
    Ok(0)
}

#[derive(Debug, Serialize)]
struct DualWorst {
    h: f64,
    x: f64,
    t: f64,
    closed_form: f64,
    fourier: f64,
}

#[derive(Debug, Serialize)]
struct DualReport {
    max_rel_error: f64,
    worst: Option<DualWorst>,
    tolerance: f64,
    pass: bool,
}

#[derive(Debug, Serialize)]
struct BesselReport {
    max_abs_error: f64,
    worst_z: f64,
    tolerance: f64,
    pass: bool,
}

#[derive(Debug, Serialize)]
struct KernelCheckReport {
    dual: DualReport,
    bessel: BesselReport,
    pass: bool,
    config: KernelCheckConfig,
}

fn cmd_kernel_check(
    cfg: &KernelCheckConfig,
    out: Option<&Path>,
    timestamp: Option<u64>,
) -> Result<i32> {
    cfg.grid.validate()?;
    cfg.quad.validate()?;
    if cfg.h_list.is_empty() {
        return Err(Error::Config("kernel-check needs at least one h".into()));
    }
    let points = cfg.grid.points();
    let mut cases = Vec::with_capacity(cfg.h_list.len() * points.len());
    for &h in &cfg.h_list {
        let params = KernelParams::new(cfg.y0, cfg.c, h)?;
        for &(x, t) in &points {
            cases.push((params, x, t));
        }
    }
    let evaluated: Vec<(f64, f64)> = cases
        .par_iter()
        .map(|&(params, x, t)| -> Result<(f64, f64)> {
            Ok((
                kernel_closed_form(x, t, &params, &cfg.quad)?,
                kernel_fourier_oracle(x, t, &params, None, &cfg.quad)?,
            ))
        })
        .collect::<Result<_>>()?;

    let mut dual =
        DualReport { max_rel_error: 0.0, worst: None, tolerance: cfg.dual_tolerance, pass: true };
    for (&(params, x, t), &(cf, fo)) in cases.iter().zip(&evaluated) {
        // The Fourier integral cancels sums of magnitude exp(z²/(4hc)) down
        // to the kernel value; a handful of ulps of that scale is the floor
        // below which no double-precision evaluation carries information.
        // Differences under the floor count as exact agreement; the excess
        // above it must meet the relative tolerance.
        let z = params.slice_height(t)?;
        let noise_floor = 64.0 * (z * z / (4.0 * params.h * params.c)).exp() * f64::EPSILON;
        let excess = ((cf - fo).abs() - noise_floor).max(0.0);
        let rel = excess / cf.abs().max(fo.abs()).max(f64::MIN_POSITIVE);
        if rel > dual.max_rel_error {
            dual.max_rel_error = rel;
            dual.worst = Some(DualWorst { h: params.h, x, t, closed_form: cf, fourier: fo });
        }
    }
    dual.pass = dual.max_rel_error <= dual.tolerance;

    let mut bessel = BesselReport {
        max_abs_error: 0.0,
        worst_z: f64::NAN,
        tolerance: cfg.bessel_tolerance,
        pass: true,
    };
    for &z in &cfg.bessel_z {
        let defect = (h_function(z, &cfg.quad)? + h_function(-z, &cfg.quad)? - i0_series(z)).abs();
        if defect > bessel.max_abs_error || bessel.worst_z.is_nan() {
            bessel.max_abs_error = defect;
            bessel.worst_z = z;
        }
    }
    bessel.pass = bessel.max_abs_error <= bessel.tolerance;

    let pass = dual.pass && bessel.pass;
    let report = KernelCheckReport { dual, bessel, pass, config: cfg.clone() };
    let _ = timestamp; // The JSON report carries no timestamp; it is already deterministic.
    let text = json_artifact(&report)?;
    match out {
        Some(dir) => {
            write_artifact(dir, "kernel_check.json", &text)?;
        }
        None => print!("{text}"),
    }
    println!(
        "dual max rel error {:.3e} (tol {:.1e}), Bessel max defect {:.3e} (tol {:.1e}): {}",
        report.dual.max_rel_error,
        report.dual.tolerance,
        report.bessel.max_abs_error,
        report.bessel.tolerance,
        if pass { "PASS" } else { "FAIL" }
    );
    Ok(if pass { 0 } else { 1 })
}

#[derive(Debug, Serialize)]
struct ReconstructArtifact<'a> {
    config: &'a ReconstructConfig,
    report: &'a crate::reconstruct::ConvergenceReport,
}

fn cmd_reconstruct(
    cfg: &ReconstructConfig,
    out: Option<&Path>,
    timestamp: Option<u64>,
) -> Result<i32> {
    let ap = cfg.aperture.aperture()?;
    cfg.quad.validate()?;
    let (trace, auto_target) = match &cfg.trace {
        TraceSource::Modes(sections) => {
            if sections.is_empty() {
                return Err(Error::Config("mode trace source needs at least one mode".into()));
            }
            let modes: Vec<Mode> = sections.iter().map(|s| s.mode()).collect::<Result<_>>()?;
            let terms: Vec<(f64, AnalyticTrace)> =
                modes.iter().map(|m| (1.0, m.boundary_trace())).collect();
            let target: f64 = modes.iter().map(|m| m.interior_value(ap.x0, ap.y0, ap.t0)).sum();
            (BoundaryTrace::Analytic(superpose(&terms)), Some(target))
        }
        TraceSource::Zero => (BoundaryTrace::Analytic(AnalyticTrace::zero()), Some(0.0)),
        TraceSource::Csv(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| {
                Error::Io(std::io::Error::new(
                    e.kind(),
                    format!("cannot read trace {}: {e}", path.display()),
                ))
            })?;
            let (grid, meta) = read_trace_csv(&text)?;
            let grid = if cfg.mirror_time_even { mirror_time_even(&grid)? } else { grid };
            let target = meta
                .probes
                .iter()
                .find(|p| (p.x - ap.x0).abs() <= 1e-9 && (p.y - ap.y0).abs() <= 1e-9)
                .map(|p| p.value);
            (BoundaryTrace::Sampled(grid), target)
        }
    };
    let target = cfg.target.or(auto_target);
    let report = h_sweep(&trace, &ap, &cfg.h_list, &cfg.quad, target)?;

    for e in &report.entries {
        match e.estimate {
            Some(est) => println!(
                "h = {:<10.6} estimate = {est:+.10e}{}  [{:?}]",
                e.h,
                e.abs_error.map_or(String::new(), |a| format!("  abs_error = {a:.3e}")),
                e.status
            ),
            None => {
                println!("h = {:<10.6} {:?} (max exponent {:.1})", e.h, e.status, e.max_exponent)
            }
        }
    }

    let csv = write_convergence_csv(&report, timestamp);
    let json = json_artifact(&ReconstructArtifact { config: cfg, report: &report })?;
    let dir = out.unwrap_or(Path::new("."));
    write_artifact(dir, "report.csv", &csv)?;
    write_artifact(dir, "report.json", &json)?;
    Ok(0)
}

fn cmd_fdtd(cfg: &FdtdCommandConfig, out: Option<&Path>, timestamp: Option<u64>) -> Result<i32> {
    let solver = cfg.solver_config();
    let probes: Vec<(f64, f64)> = cfg.probes.iter().map(|&[x, y]| (x, y)).collect();
    let window = (
        (cfg.trace.x_range[0], cfg.trace.x_range[1]),
        (cfg.trace.t_range[0], cfg.trace.t_range[1]),
    );
    let output = fdtd_run(&solver, &probes, window)?;
    let meta = TraceMeta {
        probes: output
            .probes
            .iter()
            .map(|p| ProbePoint { x: p.x, y: p.y, value: p.values[0] })
            .collect(),
        support_margin: Some(output.support_margin),
        energy_drift: Some(output.energy_drift),
    };
    let trace_csv = write_trace_csv(&output.trace, &meta, timestamp);
    let probes_csv = write_probes_csv(&output.probes, timestamp);
    println!(
        "forward run complete: {}×{} trace, support margin {:.4}, energy drift {:.3e}",
        output.trace.nx, output.trace.nt, output.support_margin, output.energy_drift
    );
    let dir = out.unwrap_or(Path::new("."));
    write_artifact(dir, "trace.csv", &trace_csv)?;
    write_artifact(dir, "probes.csv", &probes_csv)?;
    Ok(0)
}

fn cmd_decay(cfg: &DecayConfig, out: Option<&Path>, timestamp: Option<u64>) -> Result<i32> {
    if !(cfg.y0 > 0.0) || !(cfg.c > 0.0) || !(cfg.epsilon > 0.0) || !(cfg.d > 0.0) {
        return Err(Error::Config(format!(
            "decay band needs positive y0, c, epsilon, d (got {}, {}, {}, {})",
            cfg.y0, cfg.c, cfg.epsilon, cfg.d
        )));
    }
    if cfg.nx < 2 || cfg.nt < 2 {
        return Err(Error::Config(format!(
            "decay sampling needs nx, nt ≥ 2, got {}×{}",
            cfg.nx, cfg.nt
        )));
    }
    if !(cfg.slack >= 0.0) {
        return Err(Error::Config(format!("decay slack must be ≥ 0, got {}", cfg.slack)));
    }
    if cfg.h_list.is_empty() {
        return Err(Error::Config("decay needs at least one h".into()));
    }
    for pair in cfg.h_list.windows(2) {
        if !(pair[1] < pair[0]) {
            return Err(Error::Config(format!(
                "decay h list must be strictly decreasing, got {} before {}",
                pair[0], pair[1]
            )));
        }
    }
    if !(cfg.h_list[cfg.h_list.len() - 1] > 0.0) {
        return Err(Error::Config("decay h values must be positive".into()));
    }
    cfg.quad.validate()?;

    let dir = out.unwrap_or(Path::new("."));
    let a = decay_constant_a(cfg.c, cfg.d);

    if cfg.epsilon > cfg.d {
        // The band D(z)+ε ≤ |x| ≤ d is empty — report and succeed.
        let text = write_decay_csv(&[], cfg.y0, cfg.c, cfg.epsilon, cfg.d, timestamp);
        println!("band is empty (epsilon = {} > d = {}); nothing to sample", cfg.epsilon, cfg.d);
        write_artifact(dir, "decay.csv", &text)?;
        return Ok(0);
    }

    let per_h: Vec<Vec<DecayRow>> = cfg
        .h_list
        .par_iter()
        .map(|&h| -> Result<Vec<DecayRow>> {
            let params = KernelParams::new(cfg.y0, cfg.c, h)?;
            let bound_rhs = -a * cfg.epsilon * cfg.epsilon / h - 0.5 * h.ln();
            let mut rows = Vec::new();
            let mut envelope = 0.0f64;
            for m in 0..cfg.nt {
                let t = -cfg.y0 + 2.0 * cfg.y0 * m as f64 / (cfg.nt - 1) as f64;
                let z = params.slice_height(t)?;
                let lo = aperture_d(z, cfg.c)? + cfg.epsilon;
                if lo > cfg.d {
                    continue;
                }
                for j in 0..cfg.nx {
                    let x = lo + (cfg.d - lo) * j as f64 / (cfg.nx - 1) as f64;
                    let k = kernel_closed_form(x, t, &params, &cfg.quad)?;
                    envelope = envelope
                        .max(k.abs() * h.sqrt() * (a * cfg.epsilon * cfg.epsilon / h).exp());
                    rows.push(DecayRow {
                        h,
                        x,
                        t,
                        log_abs_k: k.abs().max(f64::MIN_POSITIVE).ln(),
                        bound_rhs,
                        a,
                        envelope: 0.0, // filled below once the per-h max is known
                    });
                }
            }
            for row in &mut rows {
                row.envelope = envelope;
            }
            Ok(rows)
        })
        .collect::<Result<_>>()?;

    let envelopes: Vec<f64> =
        per_h.iter().map(|rows| rows.first().map_or(0.0, |r| r.envelope)).collect();
    let rows: Vec<DecayRow> = per_h.into_iter().flatten().collect();
    let text = write_decay_csv(&rows, cfg.y0, cfg.c, cfg.epsilon, cfg.d, timestamp);
    write_artifact(dir, "decay.csv", &text)?;

    let mut pass = true;
    for (i, pair) in envelopes.windows(2).enumerate() {
        if pair[1] > pair[0] * (1.0 + cfg.slack) {
            pass = false;
            println!(
                "envelope rises from {:.6e} (h = {}) to {:.6e} (h = {}): beyond {}% slack",
                pair[0],
                cfg.h_list[i],
                pair[1],
                cfg.h_list[i + 1],
                cfg.slack * 100.0
            );
        }
    }
    for (h, env) in cfg.h_list.iter().zip(&envelopes) {
        println!("h = {h:<10} envelope = {env:.6e}");
    }
    println!("envelope trend: {}", if pass { "non-increasing (PASS)" } else { "FAIL" });
    Ok(if pass { 0 } else { 1 })
}

#[derive(Debug, Serialize)]
struct SpectralArtifact<'a> {
    config: &'a SpectralConfig,
    value: f64,
    imag_residual: f64,
    warnings: &'a [String],
    target: Option<f64>,
    rel_error: Option<f64>,
}

fn cmd_spectral(cfg: &SpectralConfig, out: Option<&Path>, timestamp: Option<u64>) -> Result<i32> {
    let Some(path) = &cfg.csv else {
        return Err(Error::Config(
            "spectral needs a trace file: set \"csv\" in the configuration".into(),
        ));
    };
    if !(cfg.y0 > 0.0) {
        return Err(Error::Config(format!("spectral needs y0 > 0, got {}", cfg.y0)));
    }
    let text = std::fs::read_to_string(path).map_err(|e| {
        Error::Io(std::io::Error::new(
            e.kind(),
            format!("cannot read trace {}: {e}", path.display()),
        ))
    })?;
    let (grid, meta) = read_trace_csv(&text)?;
    let grid: SampledTrace = if cfg.mirror_time_even { mirror_time_even(&grid)? } else { grid };
    let result = spectral_reconstruct(&grid, cfg.y0)?;
    let target = cfg.target.or_else(|| {
        meta.probes
            .iter()
            .find(|p| p.x.abs() <= 1e-9 && (p.y - cfg.y0).abs() <= 1e-9)
            .map(|p| p.value)
    });
    let rel_error = target.map(|tv| (result.value - tv).abs() / tv.abs().max(f64::MIN_POSITIVE));

    println!("spectral value = {:+.10e}", result.value);
    if let (Some(tv), Some(rel)) = (target, rel_error) {
        println!("target = {tv:+.10e}, relative error = {rel:.4e}");
    }
    for w in &result.warnings {
        println!("warning: {w}");
    }

    let artifact = SpectralArtifact {
        config: cfg,
        value: result.value,
        imag_residual: result.imag_residual,
        warnings: &result.warnings,
        target,
        rel_error,
    };
    let _ = timestamp; // JSON artifact is deterministic; no timestamp line.
    let json = json_artifact(&artifact)?;
    if let Some(dir) = out {
        write_artifact(dir, "spectral.json", &json)?;
    }
    match (rel_error, cfg.tolerance) {
        (Some(rel), Some(tol)) if rel > tol => Ok(1),
        _ => Ok(0),
    }
}
