//! CSV artifact formats: boundary-trace grids, convergence reports, kernel
//! grids, and decay-band samplings.
//!
//! Conventions shared by every writer:
//! - comma separation, `.` decimal, 17 significant digits (`{:.16e}`), which
//!   round-trips `f64` exactly;
//! - metadata in `#`-prefixed header comments (`# key: value`), so files are
//!   self-describing;
//! - an optional `# generated_unix_seconds:` comment is the only
//!   non-deterministic line; suppressing it makes identical runs
//!   byte-identical.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::kernel::KernelParams;
use crate::reconstruct::ConvergenceReport;
use crate::synthetic::SampledTrace;

/// Formats one value with 17 significant digits (round-trip safe).
pub fn fmt_f64(v: f64) -> String {
    format!("{v:.16e}")
}

/// A probe annotation carried in a trace file: the interior value
/// `u(x, y, 0)` recorded by the forward solver, available as a
/// reconstruction target.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProbePoint {
    /// Probe abscissa.
    pub x: f64,
    /// Probe height above the boundary.
    pub y: f64,
    /// `u(x, y, 0)`.
    pub value: f64,
}

/// Optional provenance metadata embedded in a trace file's header.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct TraceMeta {
    /// Probe annotations (typically one per configured probe).
    pub probes: Vec<ProbePoint>,
    /// Distance between the initial support and the closest absorbing-free
    /// boundary at the end of the run, in grid units of the solver.
    pub support_margin: Option<f64>,
    /// Relative drift of the discrete leapfrog energy.
    pub energy_drift: Option<f64>,
}

fn push_timestamp(out: &mut String, timestamp: Option<u64>) {
    if let Some(t) = timestamp {
        let _ = writeln!(out, "# generated_unix_seconds: {t}");
    }
}

/// Serializes a sampled boundary trace with its metadata.
pub fn write_trace_csv(trace: &SampledTrace, meta: &TraceMeta, timestamp: Option<u64>) -> String {
    let mut out = String::with_capacity(trace.values.len() * 72 + 512);
    out.push_str("# waveback boundary trace\n");
    push_timestamp(&mut out, timestamp);
    let _ = writeln!(out, "# nx: {}", trace.nx);
    let _ = writeln!(out, "# nt: {}", trace.nt);
    let _ = writeln!(out, "# x_min: {}", fmt_f64(trace.x_min));
    let _ = writeln!(out, "# x_max: {}", fmt_f64(trace.x_max()));
    let _ = writeln!(out, "# t_min: {}", fmt_f64(trace.t_min));
    let _ = writeln!(out, "# t_max: {}", fmt_f64(trace.t_max()));
    let _ = writeln!(out, "# dx: {}", fmt_f64(trace.dx));
    let _ = writeln!(out, "# dt: {}", fmt_f64(trace.dt));
    for p in &meta.probes {
        let _ = writeln!(
            out,
            "# probe: x={} y={} value={}",
            fmt_f64(p.x),
            fmt_f64(p.y),
            fmt_f64(p.value)
        );
    }
    if let Some(m) = meta.support_margin {
        let _ = writeln!(out, "# support_margin: {}", fmt_f64(m));
    }
    if let Some(d) = meta.energy_drift {
        let _ = writeln!(out, "# energy_drift: {}", fmt_f64(d));
    }
    out.push_str("x,t,v\n");
    for m in 0..trace.nt {
        let t = fmt_f64(trace.t_at(m));
        for j in 0..trace.nx {
            let _ =
                writeln!(out, "{},{t},{}", fmt_f64(trace.x_at(j)), fmt_f64(trace.value_at(j, m)));
        }
    }
    out
}

fn parse_f64(s: &str, context: &str) -> Result<f64> {
    s.trim()
        .parse::<f64>()
        .map_err(|_| Error::Parse(format!("{context}: cannot parse '{s}' as a number")))
}

fn parse_usize(s: &str, context: &str) -> Result<usize> {
    s.trim()
        .parse::<usize>()
        .map_err(|_| Error::Parse(format!("{context}: cannot parse '{s}' as a count")))
}

/// Parses a trace file produced by [`write_trace_csv`].
///
/// Grid geometry comes from the header comments (`dx`/`dt` are read back
/// exactly; `x_max`/`t_max` serve as a consistency check), the body supplies
/// the samples in time-major order, and each row's coordinates are verified
/// against the declared grid.
pub fn read_trace_csv(text: &str) -> Result<(SampledTrace, TraceMeta)> {
    let mut nx = None;
    let mut nt = None;
    let mut x_min = None;
    let mut t_min = None;
    let mut x_max = None;
    let mut t_max = None;
    let mut dx = None;
    let mut dt = None;
    let mut meta = TraceMeta::default();

    let mut lines = text.lines();
    let mut header_seen = false;
    for line in lines.by_ref() {
        let line = line.trim_end();
        if let Some(comment) = line.strip_prefix('#') {
            let comment = comment.trim();
            let Some((key, value)) = comment.split_once(':') else { continue };
            let value = value.trim();
            match key.trim() {
                "nx" => nx = Some(parse_usize(value, "header nx")?),
                "nt" => nt = Some(parse_usize(value, "header nt")?),
                "x_min" => x_min = Some(parse_f64(value, "header x_min")?),
                "x_max" => x_max = Some(parse_f64(value, "header x_max")?),
                "t_min" => t_min = Some(parse_f64(value, "header t_min")?),
                "t_max" => t_max = Some(parse_f64(value, "header t_max")?),
                "dx" => dx = Some(parse_f64(value, "header dx")?),
                "dt" => dt = Some(parse_f64(value, "header dt")?),
                "support_margin" => {
                    meta.support_margin = Some(parse_f64(value, "header support_margin")?)
                }
                "energy_drift" => {
                    meta.energy_drift = Some(parse_f64(value, "header energy_drift")?)
                }
                "probe" => {
                    let mut x = None;
                    let mut y = None;
                    let mut v = None;
                    for token in value.split_whitespace() {
                        let Some((k, raw)) = token.split_once('=') else {
                            return Err(Error::Parse(format!(
                                "probe metadata token '{token}' is not key=value"
                            )));
                        };
                        match k {
                            "x" => x = Some(parse_f64(raw, "probe x")?),
                            "y" => y = Some(parse_f64(raw, "probe y")?),
                            "value" => v = Some(parse_f64(raw, "probe value")?),
                            _ => {}
                        }
                    }
                    match (x, y, v) {
                        (Some(x), Some(y), Some(value)) => {
                            meta.probes.push(ProbePoint { x, y, value })
                        }
                        _ => {
                            return Err(Error::Parse(format!(
                                "probe metadata '{value}' is missing x=, y= or value="
                            )))
                        }
                    }
                }
                _ => {} // Unknown keys (timestamps, future extensions) are fine.
            }
            continue;
        }
        if line.is_empty() {
            continue;
        }
        if line == "x,t,v" {
            header_seen = true;
            break;
        }
        return Err(Error::Parse(format!("expected the 'x,t,v' column header, found '{line}'")));
    }
    if !header_seen {
        return Err(Error::Parse("trace file has no 'x,t,v' column header".into()));
    }

    let (Some(nx), Some(nt), Some(x_min), Some(t_min)) = (nx, nt, x_min, t_min) else {
        return Err(Error::Parse("trace header must declare nx, nt, x_min and t_min".into()));
    };
    if nx < 2 || nt < 2 {
        return Err(Error::Parse(format!("trace grid {nx}×{nt} is too small")));
    }
    // Spacing: exact when declared, else derived from the extents.
    let dx = match (dx, x_max) {
        (Some(dx), _) => dx,
        (None, Some(x_max)) => (x_max - x_min) / (nx - 1) as f64,
        (None, None) => return Err(Error::Parse("trace header must declare dx or x_max".into())),
    };
    let dt = match (dt, t_max) {
        (Some(dt), _) => dt,
        (None, Some(t_max)) => (t_max - t_min) / (nt - 1) as f64,
        (None, None) => return Err(Error::Parse("trace header must declare dt or t_max".into())),
    };

    let mut values = Vec::with_capacity(nx * nt);
    for line in lines {
        let line = line.trim_end();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut fields = line.splitn(3, ',');
        let (Some(xs), Some(ts), Some(vs)) = (fields.next(), fields.next(), fields.next()) else {
            return Err(Error::Parse(format!("trace row '{line}' does not have 3 fields")));
        };
        let row = values.len();
        let (j, m) = (row % nx, row / nx);
        let x = parse_f64(xs, "trace row x")?;
        let t = parse_f64(ts, "trace row t")?;
        let expect_x = x_min + j as f64 * dx;
        let expect_t = t_min + m as f64 * dt;
        if (x - expect_x).abs() > 1e-9 * (1.0 + expect_x.abs())
            || (t - expect_t).abs() > 1e-9 * (1.0 + expect_t.abs())
        {
            return Err(Error::Parse(format!(
                "trace row {row} has coordinates ({x}, {t}), expected ({expect_x}, {expect_t}); \
                 rows must be time-major over the declared grid"
            )));
        }
        values.push(parse_f64(vs, "trace row v")?);
    }
    if values.len() != nx * nt {
        return Err(Error::Parse(format!(
            "trace body has {} rows for a declared {nx}×{nt} grid",
            values.len()
        )));
    }
    let trace = SampledTrace { x_min, dx, nx, t_min, dt, nt, values };
    trace.validate()?;
    Ok((trace, meta))
}

fn write_opt(out: &mut String, v: Option<f64>) {
    if let Some(v) = v {
        out.push_str(&fmt_f64(v));
    }
}

/// Serializes a convergence report: one row per `h`, failed entries with
/// empty estimate cells (full status detail lives in the JSON twin).
pub fn write_convergence_csv(report: &ConvergenceReport, timestamp: Option<u64>) -> String {
    let mut out = String::new();
    out.push_str("# waveback convergence report\n");
    push_timestamp(&mut out, timestamp);
    let ap = &report.aperture;
    let _ = writeln!(out, "# y0: {}", fmt_f64(ap.y0));
    let _ = writeln!(out, "# c: {}", fmt_f64(ap.c));
    let _ = writeln!(out, "# epsilon: {}", fmt_f64(ap.epsilon));
    let _ = writeln!(out, "# x0: {}", fmt_f64(ap.x0));
    let _ = writeln!(out, "# t0: {}", fmt_f64(ap.t0));
    if let Some(t) = report.target {
        let _ = writeln!(out, "# target: {}", fmt_f64(t));
    }
    out.push_str("h,estimate,abs_error,max_exponent,levels\n");
    for e in &report.entries {
        out.push_str(&fmt_f64(e.h));
        out.push(',');
        write_opt(&mut out, e.estimate);
        out.push(',');
        write_opt(&mut out, e.abs_error);
        out.push(',');
        out.push_str(&fmt_f64(e.max_exponent));
        let _ = writeln!(out, ",{}", e.levels_used);
    }
    out
}

/// Serializes a kernel grid evaluation (`x,t,K` rows).
pub fn write_kernel_grid_csv(
    rows: &[(f64, f64, f64)],
    params: &KernelParams,
    timestamp: Option<u64>,
) -> String {
    let mut out = String::new();
    out.push_str("# waveback kernel evaluation\n");
    push_timestamp(&mut out, timestamp);
    let _ = writeln!(out, "# y0: {}", fmt_f64(params.y0));
    let _ = writeln!(out, "# c: {}", fmt_f64(params.c));
    let _ = writeln!(out, "# h: {}", fmt_f64(params.h));
    out.push_str("x,t,K\n");
    for &(x, t, k) in rows {
        let _ = writeln!(out, "{},{},{}", fmt_f64(x), fmt_f64(t), fmt_f64(k));
    }
    out
}

/// One sampled point of the decay band, with its per-`h` context.
#[derive(Debug, Clone, Copy)]
pub struct DecayRow {
    /// Regularization parameter of this row's sweep entry.
    pub h: f64,
    /// Sample abscissa (in the band, positive side).
    pub x: f64,
    /// Sample time.
    pub t: f64,
    /// `log |K_h(x, t)|`.
    pub log_abs_k: f64,
    /// The bound's shape at this `h`: `−aε²/h − ½·log h` (constant over the
    /// band).
    pub bound_rhs: f64,
    /// Decay constant `a = c / (4(c² + d²))`.
    pub a: f64,
    /// Per-`h` envelope `max |K_h|·√h·e^{aε²/h}` over the band.
    pub envelope: f64,
}

/// Serializes a decay-band sweep.
pub fn write_decay_csv(
    rows: &[DecayRow],
    y0: f64,
    c: f64,
    epsilon: f64,
    d: f64,
    timestamp: Option<u64>,
) -> String {
    let mut out = String::new();
    out.push_str("# waveback kernel decay band\n");
    push_timestamp(&mut out, timestamp);
    let _ = writeln!(out, "# y0: {}", fmt_f64(y0));
    let _ = writeln!(out, "# c: {}", fmt_f64(c));
    let _ = writeln!(out, "# epsilon: {}", fmt_f64(epsilon));
    let _ = writeln!(out, "# d: {}", fmt_f64(d));
    out.push_str("h,x,t,log_abs_K,bound_rhs,a,envelope\n");
    for r in rows {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{}",
            fmt_f64(r.h),
            fmt_f64(r.x),
            fmt_f64(r.t),
            fmt_f64(r.log_abs_k),
            fmt_f64(r.bound_rhs),
            fmt_f64(r.a),
            fmt_f64(r.envelope)
        );
    }
    out
}

/// Serializes probe series (shared time column, one value column per probe).
pub fn write_probes_csv(probes: &[crate::fdtd::ProbeSeries], timestamp: Option<u64>) -> String {
    let mut out = String::new();
    out.push_str("# waveback probe series\n");
    push_timestamp(&mut out, timestamp);
    for (i, p) in probes.iter().enumerate() {
        let _ = writeln!(out, "# probe_{i}: x={} y={}", fmt_f64(p.x), fmt_f64(p.y));
    }
    out.push('t');
    for i in 0..probes.len() {
        let _ = write!(out, ",u_{i}");
    }
    out.push('\n');
    if probes.is_empty() {
        return out;
    }
    let steps = probes[0].values.len();
    for n in 0..steps {
        out.push_str(&fmt_f64(probes[0].t_at(n)));
        for p in probes {
            let _ = write!(out, ",{}", fmt_f64(p.values[n]));
        }
        out.push('\n');
    }
    out
}
