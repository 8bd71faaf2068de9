//! Per-command run configuration: one JSON document per invocation.
//!
//! Every command accepts `--config <file.json>`; with no file, the documented
//! defaults below apply. Unknown keys are rejected (typos should fail loudly,
//! not silently fall back to defaults), every section can be omitted, and the
//! effective — fully materialized — configuration is echoed into the JSON
//! artifacts each command writes, so results are self-describing.

use std::path::{Path, PathBuf};

use serde::{de::DeserializeOwned, Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fdtd::{BumpParams, FdtdConfig, InitialData};
use crate::geometry::Aperture;
use crate::kernel::KernelParams;
use crate::quad::QuadratureSpec;
use crate::synthetic::{Mode, Phase};

/// Default `h` sweep: geometric halving from 0.2. The last value sits close
/// to the practical double-precision limit for `y0 ≈ 1`, `c = 1` — the
/// kernel peak `e^{y0²/(4hc)}` eats most of the mantissa there, which the
/// convergence report surfaces via its `max_exponent` column.
pub const DEFAULT_H_SWEEP: [f64; 6] = [0.2, 0.1, 0.05, 0.025, 0.0125, 0.00625];

/// Reads a JSON config from `path`, or materializes the defaults when no
/// path is given.
pub fn load_json<T: DeserializeOwned + Default>(path: Option<&Path>) -> Result<T> {
    match path {
        None => Ok(T::default()),
        Some(p) => {
            let text = std::fs::read_to_string(p).map_err(|e| {
                Error::Io(std::io::Error::new(
                    e.kind(),
                    format!("cannot read config {}: {e}", p.display()),
                ))
            })?;
            let value = serde_json::from_str(&text)
                .map_err(|e| Error::Parse(format!("config {}: {e}", p.display())))?;
            Ok(value)
        }
    }
}

/// Kernel parameter section (`y0`, `c`, `h`).
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct KernelSection {
    /// Reconstruction height.
    pub y0: f64,
    /// Regularization shape parameter.
    pub c: f64,
    /// Regularization strength.
    pub h: f64,
}

impl Default for KernelSection {
    fn default() -> Self {
        Self { y0: 1.0, c: 1.0, h: 0.05 }
    }
}

impl KernelSection {
    /// Validated library-level parameters.
    pub fn params(&self) -> Result<KernelParams> {
        KernelParams::new(self.y0, self.c, self.h)
    }
}

/// A rectangular evaluation grid. Zero counts are allowed and produce an
/// empty grid (header-only CSV output).
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct GridSection {
    /// Leftmost abscissa.
    pub x_min: f64,
    /// Rightmost abscissa.
    pub x_max: f64,
    /// Abscissa sample count.
    pub nx: usize,
    /// Earliest time.
    pub t_min: f64,
    /// Latest time.
    pub t_max: f64,
    /// Time sample count.
    pub nt: usize,
}

impl Default for GridSection {
    fn default() -> Self {
        Self { x_min: -2.0, x_max: 2.0, nx: 10, t_min: -0.95, t_max: 0.95, nt: 10 }
    }
}

impl GridSection {
    /// Checks the ranges (counts of 0 or 1 need no range at all).
    pub fn validate(&self) -> Result<()> {
        if self.nx > 1 && !(self.x_max > self.x_min) {
            return Err(Error::Config(format!(
                "grid needs x_max > x_min for nx = {}, got [{}, {}]",
                self.nx, self.x_min, self.x_max
            )));
        }
        if self.nt > 1 && !(self.t_max > self.t_min) {
            return Err(Error::Config(format!(
                "grid needs t_max > t_min for nt = {}, got [{}, {}]",
                self.nt, self.t_min, self.t_max
            )));
        }
        Ok(())
    }

    /// All `(x, t)` grid points, time-major.
    pub fn points(&self) -> Vec<(f64, f64)> {
        let coord = |lo: f64, hi: f64, n: usize, i: usize| {
            if n <= 1 {
                lo
            } else {
                lo + (hi - lo) * i as f64 / (n - 1) as f64
            }
        };
        let mut points = Vec::with_capacity(self.nx * self.nt);
        for m in 0..self.nt {
            let t = coord(self.t_min, self.t_max, self.nt, m);
            for j in 0..self.nx {
                points.push((coord(self.x_min, self.x_max, self.nx, j), t));
            }
        }
        points
    }
}

/// `kernel-eval` configuration.
#[derive(Debug, Clone, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct KernelEvalConfig {
    /// Kernel parameters.
    pub kernel: KernelSection,
    /// Evaluation grid.
    pub grid: GridSection,
    /// Quadrature control.
    pub quad: QuadratureSpec,
}

/// `kernel-check` configuration: dual-representation comparison plus the
/// Bessel identity suite.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct KernelCheckConfig {
    /// Reconstruction height.
    pub y0: f64,
    /// Shape parameter.
    pub c: f64,
    /// Regularization strengths to compare at.
    pub h_list: Vec<f64>,
    /// Comparison grid.
    pub grid: GridSection,
    /// Maximum allowed relative discrepancy between the two kernel
    /// representations.
    pub dual_tolerance: f64,
    /// Arguments for the `H(z) + H(−z) = I₀(z)` identity.
    pub bessel_z: Vec<f64>,
    /// Maximum allowed absolute identity defect.
    pub bessel_tolerance: f64,
    /// Quadrature control.
    pub quad: QuadratureSpec,
}

impl Default for KernelCheckConfig {
    fn default() -> Self {
        Self {
            y0: 1.0,
            c: 1.0,
            h_list: vec![0.1, 0.03, 0.01],
            grid: GridSection::default(),
            dual_tolerance: 1e-6,
            bessel_z: vec![0.0, 0.5, 1.0, 2.0, 5.0, 10.0],
            bessel_tolerance: 1e-10,
            quad: QuadratureSpec::default(),
        }
    }
}

/// One standing-mode term of a synthetic trace.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ModeSection {
    /// Amplitude `A`.
    pub amplitude: f64,
    /// Lateral wavenumber `k`.
    pub k: f64,
    /// Vertical wavenumber `l > 0`.
    pub l: f64,
    /// `cos` or `sin` in `x`.
    pub x_phase: Phase,
    /// `cos` or `sin` in `t`.
    pub t_phase: Phase,
}

impl Default for ModeSection {
    fn default() -> Self {
        Self { amplitude: 1.0, k: 0.5, l: 1.0, x_phase: Phase::Cos, t_phase: Phase::Cos }
    }
}

impl ModeSection {
    /// Validated library mode.
    pub fn mode(&self) -> Result<Mode> {
        Mode::new(self.amplitude, self.k, self.l, self.x_phase, self.t_phase)
    }
}

/// Where a reconstruction gets its boundary data.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TraceSource {
    /// Analytic superposition of standing modes (exact target known).
    Modes(Vec<ModeSection>),
    /// A sampled-trace CSV, typically written by the `fdtd` command.
    Csv(PathBuf),
    /// The identically-zero trace.
    Zero,
}

impl Default for TraceSource {
    fn default() -> Self {
        TraceSource::Modes(vec![ModeSection::default()])
    }
}

/// Aperture section (adds the centre point to the kernel parameters).
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ApertureSection {
    /// Reconstruction height.
    pub y0: f64,
    /// Shape parameter.
    pub c: f64,
    /// Aperture margin.
    pub epsilon: f64,
    /// Abscissa of the reconstruction point.
    pub x0: f64,
    /// Time of the reconstruction point.
    pub t0: f64,
}

impl Default for ApertureSection {
    fn default() -> Self {
        Self { y0: 1.0, c: 1.0, epsilon: 0.5, x0: 0.0, t0: 0.0 }
    }
}

impl ApertureSection {
    /// Validated library aperture.
    pub fn aperture(&self) -> Result<Aperture> {
        Ok(Aperture::new(self.y0, self.c, self.epsilon)?.with_center(self.x0, self.t0))
    }
}

/// `reconstruct` configuration.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ReconstructConfig {
    /// Boundary data source.
    pub trace: TraceSource,
    /// Integration region and reconstruction point.
    pub aperture: ApertureSection,
    /// Decreasing sweep of regularization strengths.
    pub h_list: Vec<f64>,
    /// Quadrature control.
    pub quad: QuadratureSpec,
    /// Exact target override. When absent, mode sources use the analytic
    /// interior value and CSV sources use a probe annotation matching the
    /// reconstruction point, if present.
    pub target: Option<f64>,
    /// Extend a `t ≥ 0` trace to negative times by even reflection before
    /// reconstructing (valid for data with `u_t(·, ·, 0) = 0`).
    pub mirror_time_even: bool,
}

impl Default for ReconstructConfig {
    fn default() -> Self {
        Self {
            trace: TraceSource::default(),
            aperture: ApertureSection::default(),
            h_list: DEFAULT_H_SWEEP.to_vec(),
            quad: QuadratureSpec::default(),
            target: None,
            mirror_time_even: false,
        }
    }
}

/// Forward-solver domain section.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct FdtdDomainSection {
    /// Box half-width in `x`.
    pub x_halfwidth: f64,
    /// Box height in `y`.
    pub height: f64,
    /// Grid spacing.
    pub dx: f64,
    /// Time step.
    pub dt: f64,
    /// Final time.
    pub t_final: f64,
}

impl Default for FdtdDomainSection {
    fn default() -> Self {
        let d = FdtdConfig::default();
        Self {
            x_halfwidth: d.x_halfwidth,
            height: d.height,
            dx: d.dx,
            dt: d.dt,
            t_final: d.t_final,
        }
    }
}

/// Boundary-trace recording window.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct TraceWindowSection {
    /// Abscissa window `[x_lo, x_hi]` (snapped to grid columns).
    pub x_range: [f64; 2],
    /// Time window `[t_lo, t_hi]`, inside `[0, t_final]`.
    pub t_range: [f64; 2],
}

impl Default for TraceWindowSection {
    fn default() -> Self {
        Self { x_range: [-6.9, 6.9], t_range: [0.0, 6.0] }
    }
}

/// `fdtd` configuration.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct FdtdCommandConfig {
    /// Box geometry and discretization.
    pub domain: FdtdDomainSection,
    /// Initial-bump shape.
    pub bump: BumpParams,
    /// Interior probe points `(x, y)`.
    pub probes: Vec<[f64; 2]>,
    /// Trace recording window.
    pub trace: TraceWindowSection,
}

impl Default for FdtdCommandConfig {
    fn default() -> Self {
        Self {
            domain: FdtdDomainSection::default(),
            bump: BumpParams::default(),
            probes: vec![[0.0, 1.0]],
            trace: TraceWindowSection::default(),
        }
    }
}

impl FdtdCommandConfig {
    /// The library-level solver configuration.
    pub fn solver_config(&self) -> FdtdConfig {
        FdtdConfig {
            x_halfwidth: self.domain.x_halfwidth,
            height: self.domain.height,
            dx: self.domain.dx,
            dt: self.domain.dt,
            t_final: self.domain.t_final,
            initial: InitialData::Bump(self.bump),
        }
    }
}

/// `decay` configuration: band geometry, `h` sweep, and sampling density.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct DecayConfig {
    /// Reconstruction height.
    pub y0: f64,
    /// Shape parameter.
    pub c: f64,
    /// Aperture margin (inner edge of the band).
    pub epsilon: f64,
    /// Outer edge of the band.
    pub d: f64,
    /// Decreasing sweep of regularization strengths.
    pub h_list: Vec<f64>,
    /// Band samples per time slice.
    pub nx: usize,
    /// Time slices across `[−y0, y0]`.
    pub nt: usize,
    /// Allowed headroom for the envelope trend (0.2 = 20%).
    pub slack: f64,
    /// Quadrature control for the kernel evaluations.
    pub quad: QuadratureSpec,
}

impl Default for DecayConfig {
    fn default() -> Self {
        Self {
            y0: 1.0,
            c: 1.0,
            epsilon: 0.3,
            d: 2.0,
            h_list: vec![0.2, 0.1, 0.05, 0.025],
            nx: 24,
            nt: 21,
            slack: 0.2,
            quad: QuadratureSpec::default(),
        }
    }
}

/// `spectral` configuration.
#[derive(Debug, Clone, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct SpectralConfig {
    /// Sampled-trace CSV to transform (required).
    pub csv: Option<PathBuf>,
    /// Reconstruction height.
    pub y0: f64,
    /// Extend a `t ≥ 0` trace by even reflection first.
    pub mirror_time_even: bool,
    /// Exact target override (defaults to a matching probe annotation).
    pub target: Option<f64>,
    /// When set together with a target: exit 1 if the relative error
    /// exceeds this.
    pub tolerance: Option<f64>,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_documents_materialize_defaults() {
        let cfg: ReconstructConfig = serde_json::from_str("{}").unwrap();
        assert_eq!(cfg.h_list, DEFAULT_H_SWEEP.to_vec());
        assert!(matches!(cfg.trace, TraceSource::Modes(ref m) if m.len() == 1));
        let cfg: KernelCheckConfig = serde_json::from_str("{}").unwrap();
        assert_eq!(cfg.h_list, vec![0.1, 0.03, 0.01]);
        assert_eq!(cfg.bessel_z.len(), 6);
        let cfg: FdtdCommandConfig = serde_json::from_str("{}").unwrap();
        assert_eq!(cfg.probes, vec![[0.0, 1.0]]);
        assert_eq!(cfg.domain.dx, 0.01);
    }

    #[test]
    fn partial_overrides_keep_other_defaults() {
        let cfg: KernelEvalConfig = serde_json::from_str(r#"{"kernel": {"h": 0.01}}"#).unwrap();
        assert_eq!(cfg.kernel.h, 0.01);
        assert_eq!(cfg.kernel.y0, 1.0);
        assert_eq!(cfg.grid.nx, 10);
    }

    #[test]
    fn unknown_keys_are_rejected() {
        assert!(serde_json::from_str::<KernelEvalConfig>(r#"{"kernle": {}}"#).is_err());
        assert!(serde_json::from_str::<DecayConfig>(r#"{"epsilon": 0.3, "dd": 2.0}"#).is_err());
    }

    #[test]
    fn trace_source_forms_parse() {
        let m: TraceSource =
            serde_json::from_str(r#"{"modes": [{"k": 1.5, "t_phase": "sin"}]}"#).unwrap();
        match m {
            TraceSource::Modes(modes) => {
                assert_eq!(modes[0].k, 1.5);
                assert_eq!(modes[0].l, 1.0);
                assert!(matches!(modes[0].t_phase, Phase::Sin));
            }
            other => panic!("expected modes, got {other:?}"),
        }
        let c: TraceSource = serde_json::from_str(r#"{"csv": "trace.csv"}"#).unwrap();
        assert!(matches!(c, TraceSource::Csv(p) if p == Path::new("trace.csv")));
        let z: TraceSource = serde_json::from_str(r#""zero""#).unwrap();
        assert!(matches!(z, TraceSource::Zero));
    }

    #[test]
    fn grid_points_cover_the_rectangle_time_major() {
        let grid = GridSection { x_min: 0.0, x_max: 1.0, nx: 3, t_min: 0.0, t_max: 1.0, nt: 2 };
        let pts = grid.points();
        assert_eq!(pts.len(), 6);
        assert_eq!(pts[0], (0.0, 0.0));
        assert_eq!(pts[1], (0.5, 0.0));
        assert_eq!(pts[5], (1.0, 1.0));
        // Empty grids are legal.
        let empty = GridSection { nx: 0, ..grid };
        assert!(empty.validate().is_ok());
        assert!(empty.points().is_empty());
    }

    #[test]
    fn grid_validation_rejects_bad_ranges() {
        let grid = GridSection { x_min: 1.0, x_max: -1.0, ..GridSection::default() };
        assert!(grid.validate().is_err());
    }

    #[test]
    fn load_json_defaults_and_errors() {
        let cfg: DecayConfig = load_json(None).unwrap();
        assert_eq!(cfg.d, 2.0);
        assert!(load_json::<DecayConfig>(Some(Path::new("/nonexistent/x.json"))).is_err());
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("bad.json");
        std::fs::write(&path, "{not json").unwrap();
        assert!(matches!(load_json::<DecayConfig>(Some(&path)), Err(Error::Parse(_))));
        let path = dir.path().join("good.json");
        std::fs::write(&path, r#"{"epsilon": 0.4}"#).unwrap();
        let cfg: DecayConfig = load_json(Some(&path)).unwrap();
        assert_eq!(cfg.epsilon, 0.4);
        assert_eq!(cfg.c, 1.0);
    }
}
