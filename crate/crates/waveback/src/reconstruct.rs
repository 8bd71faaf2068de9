//! The main algorithm: evaluate the regularized reconstruction functional
//!
//! ```text
//! u_h(x0, y0, t0) = ∫∫_U K_h(x − x0, t − t0) · v(x, t) dx dt
//! ```
//!
//! over the aperture `U` and study its convergence as `h → 0`.
//!
//! Quadrature layout: outer Gauss–Legendre in time under the substitution
//! `t = t0 + y0 sin τ` (which flattens the square-root behaviour of the
//! slice geometry at `t − t0 = ±y0` and restores spectral convergence), and
//! inner Gauss–Legendre in `x` over the per-slice interval
//! `[x0 − w(t), x0 + w(t)]` — conforming to `U`'s curved shape instead of
//! masking a rectangle, which would poison the quadrature with artificial
//! discontinuities. The kernel is evaluated once per slice for all inner
//! nodes, sharing the `s`-rule.
//!
//! All reductions are ordered (node index, then slice index), so results
//! are bitwise independent of the number of worker threads.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::Aperture;
use crate::kernel::{kernel_slice, KernelParams, EXPONENT_BUDGET};
use crate::quad::{gauss_legendre, refine, QuadratureSpec};
use crate::synthetic::{BoundaryTrace, SampledTrace};

const FRAC_PI_2: f64 = std::f64::consts::FRAC_PI_2;

/// Result of a single reconstruction, with its convergence diagnostics.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Reconstruction {
    /// The estimate of `u(x0, y0, t0)`.
    pub value: f64,
    /// Whether node doubling changed the estimate by less than the
    /// tolerance (plus the rounding floor) before the refinement budget ran
    /// out.
    pub converged: bool,
    /// Refinement levels actually evaluated.
    pub levels_used: u32,
    /// The largest exponent the kernel evaluation can reach for this `h`
    /// (`y0²/(4hc)`), recorded for the convergence report.
    pub max_exponent: f64,
    /// Advisory diagnostics (e.g. trace resolution vs kernel oscillation).
    pub warnings: Vec<String>,
}

/// Per-`h` convergence status inside a sweep.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EntryStatus {
    /// Quadrature refinement reached its tolerance.
    Converged,
    /// The estimate is reported but node doubling still moved it by more
    /// than the tolerance at the last level.
    QuadratureNotConverged,
    /// The kernel exponent guard fired; no estimate at this `h`.
    KernelOverflow,
}

/// One row of a [`ConvergenceReport`].
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ConvergenceEntry {
    /// Regularization parameter.
    pub h: f64,
    /// Outcome class.
    pub status: EntryStatus,
    /// The estimate (absent when the kernel overflowed).
    pub estimate: Option<f64>,
    /// `|estimate − target|` when a target is known.
    pub abs_error: Option<f64>,
    /// Largest kernel exponent for this `h`.
    pub max_exponent: f64,
    /// Refinement levels used (0 when the kernel overflowed).
    pub levels_used: u32,
}

/// Outcome of an `h`-sweep: entries ordered by decreasing `h`, plus the
/// parameters that produced them.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ConvergenceReport {
    /// Aperture (carries `y0`, `c`, `ε`, and the reconstruction point).
    pub aperture: Aperture,
    /// Exact target value, when one is known.
    pub target: Option<f64>,
    /// Per-`h` results, in the order of the requested sweep.
    pub entries: Vec<ConvergenceEntry>,
}

impl ConvergenceReport {
    /// The best (smallest) absolute error among entries that produced an
    /// estimate, together with its `h`.
    pub fn best_entry(&self) -> Option<&ConvergenceEntry> {
        self.entries.iter().filter(|e| e.estimate.is_some()).min_by(|a, b| {
            let ae = a.abs_error.unwrap_or(f64::INFINITY);
            let be = b.abs_error.unwrap_or(f64::INFINITY);
            ae.total_cmp(&be)
        })
    }
}

/// Shared 2D quadrature pass at fixed node counts.
///
/// `x_window` selects the inner integration interval per slice: the
/// aperture's curved slice for the local formula, a fixed rectangle for the
/// extended one.
fn integrate_once(
    trace: &BoundaryTrace,
    ap: &Aperture,
    params: &KernelParams,
    nodes_t: usize,
    nodes_x: usize,
    nodes_s: usize,
    x_halfwidth: impl Fn(f64) -> Result<f64> + Sync,
) -> Result<f64> {
    let t_rule = gauss_legendre(nodes_t);
    let x_rule = gauss_legendre(nodes_x);
    let tau_nodes: Vec<(f64, f64)> = t_rule.mapped(-FRAC_PI_2, FRAC_PI_2).collect();

    let contributions: Vec<f64> = tau_nodes
        .par_iter()
        .map(|&(tau, w_tau)| -> Result<f64> {
            let (sin_tau, cos_tau) = tau.sin_cos();
            let t = ap.t0 + ap.y0 * sin_tau;
            // Kernel height for this slice; cos τ ≥ 0 on the range, and the
            // form `y0·cos τ` is bitwise even in τ, which the evenization
            // identity relies on.
            let z = ap.y0 * cos_tau;
            let w = x_halfwidth(t)?;
            let offsets: Vec<(f64, f64)> = x_rule.mapped(-w, w).collect();
            let xi: Vec<f64> = offsets.iter().map(|&(o, _)| o).collect();
            let row = kernel_slice(&xi, z, params, nodes_s)?;
            let mut slice_sum = 0.0;
            for (&(offset, w_x), &k) in offsets.iter().zip(&row) {
                slice_sum += w_x * k * trace.eval(ap.x0 + offset, t)?;
            }
            Ok(w_tau * ap.y0 * cos_tau * slice_sum)
        })
        .collect::<Result<_>>()?;
    Ok(contributions.iter().sum())
}

/// Rounding-noise floor for the refinement stop: the kernel reaches
/// `prefactor·e^{peak}`, each sample carries a relative `ε`, and the
/// quadrature weights sum to the domain area.
fn noise_floor(params: &KernelParams, peak: f64, data_scale: f64, area: f64) -> f64 {
    params.prefactor() * peak.max(0.0).exp() * f64::EPSILON * data_scale * area * 0.5
}

/// Coarse sample of `max |v|` over the integration rectangle, used only to
/// scale the noise floor.
fn data_scale(trace: &BoundaryTrace, ap: &Aperture, x_half: f64) -> Result<f64> {
    let mut scale = 0.0f64;
    for i in 0..8 {
        let t = ap.t0 + ap.y0 * (-1.0 + 2.0 * (i as f64 + 0.5) / 8.0);
        for j in 0..8 {
            let x = ap.x0 + x_half * (-1.0 + 2.0 * (j as f64 + 0.5) / 8.0);
            scale = scale.max(trace.eval(x, t)?.abs());
        }
    }
    Ok(scale)
}

fn resolution_warning(trace: &BoundaryTrace, params: &KernelParams) -> Option<String> {
    if let BoundaryTrace::Sampled(s) = trace {
        let limit = (params.h * params.c).sqrt() / 4.0;
        if s.dx > limit {
            return Some(format!(
                "trace grid spacing dx = {:.4e} exceeds √(h·c)/4 = {limit:.4e}; \
                 the kernel's oscillation near the aperture edge is under-resolved",
                s.dx
            ));
        }
    }
    None
}

/// Evaluates the local reconstruction functional at the aperture's centre
/// point `(x0, y0, t0)`.
///
/// Sampled traces must cover the aperture's bounding rectangle; the kernel
/// exponent guard fails fast for `h` too small for double precision.
pub fn reconstruct_local(
    trace: &BoundaryTrace,
    ap: &Aperture,
    h: f64,
    quad: &QuadratureSpec,
) -> Result<Reconstruction> {
    ap.validate()?;
    quad.validate()?;
    let params = KernelParams::new(ap.y0, ap.c, h)?;
    let peak = ap.y0 * ap.y0 / (4.0 * h * ap.c);
    if peak > EXPONENT_BUDGET {
        return Err(Error::Overflow { max_exponent: peak, budget: EXPONENT_BUDGET });
    }
    let w_rect = ap.rect_halfwidth();
    trace.check_covers(ap.x0 - w_rect, ap.x0 + w_rect, ap.t0 - ap.y0, ap.t0 + ap.y0)?;

    let mut warnings = Vec::new();
    if let Some(w) = resolution_warning(trace, &params) {
        warnings.push(w);
    }
    let scale = data_scale(trace, ap, w_rect)?;
    let floor = noise_floor(&params, peak, scale, 4.0 * ap.y0 * w_rect);
    let refined = refine(quad, floor, |level| {
        let (nt, nx, ns) = quad.counts_at(level);
        integrate_once(trace, ap, &params, nt, nx, ns, |t| ap.slice_halfwidth(t))
    })?;
    Ok(Reconstruction {
        value: refined.value,
        converged: refined.converged,
        levels_used: refined.levels_used,
        max_exponent: peak,
        warnings,
    })
}

/// Evaluates the extended (rectangular-domain) functional
/// `∫_{|t| ≤ y0} ∫_{|x| ≤ x_halfwidth} K_h(x, t) v(x, t) dx dt` at the
/// origin-centred point `(0, y0, 0)`.
///
/// This is the full-plane identity restricted to the data's support: it
/// requires the trace to vanish (numerically, `|v| ≤ 1e-12`) outside
/// `|x| ≤ x_halfwidth` within the time band `|t| ≤ y0`. Its difference
/// from [`reconstruct_local`] is the tail integral over the decay band,
/// which shrinks as `h → 0`.
pub fn reconstruct_extended(
    trace: &SampledTrace,
    y0: f64,
    c: f64,
    h: f64,
    x_halfwidth: f64,
    quad: &QuadratureSpec,
) -> Result<Reconstruction> {
    trace.validate()?;
    quad.validate()?;
    if !(x_halfwidth > 0.0) {
        return Err(Error::Domain(format!("x_halfwidth must be positive, got {x_halfwidth}")));
    }
    let params = KernelParams::new(y0, c, h)?;
    let peak = y0 * y0 / (4.0 * h * c);
    if peak > EXPONENT_BUDGET {
        return Err(Error::Overflow { max_exponent: peak, budget: EXPONENT_BUDGET });
    }

    // Support precondition within the integration band.
    let support_threshold = 1e-12;
    let mut support = 0.0f64;
    for m in 0..trace.nt {
        if trace.t_at(m).abs() > y0 * (1.0 + 1e-12) {
            continue;
        }
        for j in 0..trace.nx {
            if trace.value_at(j, m).abs() > support_threshold {
                support = support.max(trace.x_at(j).abs());
            }
        }
    }
    if support > x_halfwidth * (1.0 + 1e-9) {
        return Err(Error::Domain(format!(
            "trace support reaches |x| = {support:.4} inside |t| ≤ {y0}, beyond the \
             requested rectangle half-width {x_halfwidth}"
        )));
    }

    let bt = BoundaryTrace::Sampled(trace.clone());
    // A zero-centred aperture drives the slice geometry; the x-window is the
    // fixed rectangle.
    let ap = Aperture { y0, c, epsilon: x_halfwidth.min(y0), x0: 0.0, t0: 0.0 };
    bt.check_covers(-x_halfwidth, x_halfwidth, -y0, y0)?;

    let mut warnings = Vec::new();
    if let Some(w) = resolution_warning(&bt, &params) {
        warnings.push(w);
    }
    let scale = data_scale(&bt, &ap, x_halfwidth)?;
    let floor = noise_floor(&params, peak, scale, 4.0 * y0 * x_halfwidth);
    let refined = refine(quad, floor, |level| {
        let (nt, nx, ns) = quad.counts_at(level);
        integrate_once(&bt, &ap, &params, nt, nx, ns, |_| Ok(x_halfwidth))
    })?;
    Ok(Reconstruction {
        value: refined.value,
        converged: refined.converged,
        levels_used: refined.levels_used,
        max_exponent: peak,
        warnings,
    })
}

/// Runs [`reconstruct_local`] across a decreasing list of `h` values and
/// assembles a [`ConvergenceReport`].
///
/// Per-`h` kernel overflows are recorded as entries and the sweep
/// continues; structural failures (invalid aperture, trace coverage) abort
/// the whole sweep.
pub fn h_sweep(
    trace: &BoundaryTrace,
    ap: &Aperture,
    h_list: &[f64],
    quad: &QuadratureSpec,
    target: Option<f64>,
) -> Result<ConvergenceReport> {
    if h_list.is_empty() {
        return Err(Error::Domain("h sweep needs at least one h value".into()));
    }
    for pair in h_list.windows(2) {
        if !(pair[1] < pair[0]) {
            return Err(Error::Domain(format!(
                "h sweep must be strictly decreasing, got {} before {}",
                pair[0], pair[1]
            )));
        }
    }
    if !(h_list[h_list.len() - 1] > 0.0) {
        return Err(Error::Domain("h sweep values must be positive".into()));
    }

    let entries: Vec<ConvergenceEntry> = h_list
        .par_iter()
        .map(|&h| -> Result<ConvergenceEntry> {
            match reconstruct_local(trace, ap, h, quad) {
                Ok(rec) => Ok(ConvergenceEntry {
                    h,
                    status: if rec.converged {
                        EntryStatus::Converged
                    } else {
                        EntryStatus::QuadratureNotConverged
                    },
                    estimate: Some(rec.value),
                    abs_error: target.map(|t| (rec.value - t).abs()),
                    max_exponent: rec.max_exponent,
                    levels_used: rec.levels_used,
                }),
                Err(Error::Overflow { max_exponent, .. }) => Ok(ConvergenceEntry {
                    h,
                    status: EntryStatus::KernelOverflow,
                    estimate: None,
                    abs_error: None,
                    max_exponent,
                    levels_used: 0,
                }),
                Err(other) => Err(other),
            }
        })
        .collect::<Result<_>>()?;

    Ok(ConvergenceReport { aperture: *ap, target, entries })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fdtd::bump_profile;
    use crate::synthetic::{sample_trace, superpose, AnalyticTrace, Mode, Phase};
    use crate::transform::mode_spectral_value;
    use approx::assert_relative_eq;

    fn aperture() -> Aperture {
        Aperture::new(1.0, 1.0, 0.5).unwrap()
    }

    fn default_mode() -> Mode {
        Mode::new(1.0, 0.5, 1.0, Phase::Cos, Phase::Cos).unwrap()
    }

    fn quick_quad() -> QuadratureSpec {
        QuadratureSpec { nodes_t: 32, nodes_x: 32, nodes_s: 32, refinement: 4, rel_tol: 1e-8 }
    }

    /// Tolerance matched to bilinear interpolation: sampled traces carry
    /// grid-level error, so demanding 1e-8 agreement would spend the whole
    /// refinement budget chasing digits the data do not have.
    fn sampled_quad() -> QuadratureSpec {
        QuadratureSpec { nodes_t: 32, nodes_x: 32, nodes_s: 32, refinement: 2, rel_tol: 1e-4 }
    }

    #[test]
    fn zero_trace_reconstructs_to_zero() {
        let rec = reconstruct_local(
            &BoundaryTrace::Analytic(AnalyticTrace::zero()),
            &aperture(),
            0.1,
            &quick_quad(),
        )
        .unwrap();
        assert_eq!(rec.value, 0.0);
        assert!(rec.converged);
    }

    #[test]
    fn mode_estimates_approach_the_exact_value() {
        let trace = BoundaryTrace::Analytic(default_mode().boundary_trace());
        let target = mode_spectral_value(&default_mode(), 1.0);
        let q = quick_quad();
        let coarse = reconstruct_local(&trace, &aperture(), 0.2, &q).unwrap();
        let fine = reconstruct_local(&trace, &aperture(), 0.1, &q).unwrap();
        let e_coarse = (coarse.value - target).abs();
        let e_fine = (fine.value - target).abs();
        assert!(coarse.converged && fine.converged);
        assert!(e_fine < e_coarse, "error did not shrink: {e_coarse:.4e} → {e_fine:.4e}");
        assert!(e_fine <= 0.1 * target.abs(), "error at h=0.1 is {e_fine:.3e}");
    }

    #[test]
    fn functional_is_linear() {
        let m1 = default_mode();
        let m2 = Mode::new(0.8, 1.0, 2.0, Phase::Cos, Phase::Cos).unwrap();
        let q = quick_quad();
        let ap = aperture();
        let r1 = reconstruct_local(&BoundaryTrace::Analytic(m1.boundary_trace()), &ap, 0.1, &q)
            .unwrap()
            .value;
        let r2 = reconstruct_local(&BoundaryTrace::Analytic(m2.boundary_trace()), &ap, 0.1, &q)
            .unwrap()
            .value;
        let mixed = superpose(&[(2.0, m1.boundary_trace()), (-0.5, m2.boundary_trace())]);
        let rm = reconstruct_local(&BoundaryTrace::Analytic(mixed), &ap, 0.1, &q).unwrap().value;
        assert_relative_eq!(rm, 2.0 * r1 - 0.5 * r2, max_relative = 1e-9, epsilon = 1e-12);
    }

    #[test]
    fn translation_covariance() {
        let m = default_mode();
        let q = quick_quad();
        let (x0, t0) = (0.4, -0.2);
        let centred = Aperture::new(1.0, 1.0, 0.5).unwrap().with_center(x0, t0);
        let direct =
            reconstruct_local(&BoundaryTrace::Analytic(m.boundary_trace()), &centred, 0.08, &q)
                .unwrap();
        let inner = m.boundary_trace();
        let shifted = AnalyticTrace::new(move |x, t| inner.eval(x + x0, t + t0));
        let at_origin =
            reconstruct_local(&BoundaryTrace::Analytic(shifted), &aperture(), 0.08, &q).unwrap();
        assert_relative_eq!(direct.value, at_origin.value, max_relative = 1e-11);
    }

    #[test]
    fn reflection_invariance_at_the_origin() {
        // K is even in both arguments, so reflecting the trace through the
        // origin leaves the functional unchanged — for any trace.
        let asym = superpose(&[
            (1.0, default_mode().boundary_trace()),
            (0.6, Mode::new(1.0, 1.0, 2.0, Phase::Sin, Phase::Sin).unwrap().boundary_trace()),
        ]);
        let reflected = {
            let inner = asym.clone();
            AnalyticTrace::new(move |x, t| inner.eval(-x, -t))
        };
        let q = quick_quad();
        let a = reconstruct_local(&BoundaryTrace::Analytic(asym), &aperture(), 0.1, &q).unwrap();
        let b =
            reconstruct_local(&BoundaryTrace::Analytic(reflected), &aperture(), 0.1, &q).unwrap();
        assert_relative_eq!(a.value, b.value, max_relative = 1e-12, epsilon = 1e-14);
    }

    #[test]
    fn evenization_changes_nothing() {
        let mixed = superpose(&[
            (1.0, default_mode().boundary_trace()),
            (0.8, Mode::new(1.0, 0.7, 1.5, Phase::Cos, Phase::Sin).unwrap().boundary_trace()),
        ]);
        let evenized = {
            let inner = mixed.clone();
            AnalyticTrace::new(move |x, t| 0.5 * (inner.eval(x, t) + inner.eval(x, -t)))
        };
        let q = quick_quad();
        let a = reconstruct_local(&BoundaryTrace::Analytic(mixed), &aperture(), 0.05, &q).unwrap();
        let b =
            reconstruct_local(&BoundaryTrace::Analytic(evenized), &aperture(), 0.05, &q).unwrap();
        assert!(
            (a.value - b.value).abs() <= 1e-8 * (1.0 + a.value.abs()),
            "evenization moved the estimate: {} vs {}",
            a.value,
            b.value
        );
    }

    #[test]
    fn sampled_traces_work_and_warn_when_coarse() {
        let m = default_mode();
        let fine = sample_trace(&m.boundary_trace(), (-1.5, 1.5), (-1.0, 1.0), 201, 161).unwrap();
        let q = sampled_quad();
        let rec = reconstruct_local(&BoundaryTrace::Sampled(fine), &aperture(), 0.1, &q).unwrap();
        let exact =
            reconstruct_local(&BoundaryTrace::Analytic(m.boundary_trace()), &aperture(), 0.1, &q)
                .unwrap();
        assert_relative_eq!(rec.value, exact.value, max_relative = 1e-3);
        assert!(rec.warnings.is_empty(), "unexpected warnings: {:?}", rec.warnings);

        // √(hc)/4 ≈ 0.079 at h = 0.1: a dx of 0.15 must warn.
        let coarse = sample_trace(&m.boundary_trace(), (-1.5, 1.5), (-1.0, 1.0), 21, 161).unwrap();
        let rec = reconstruct_local(&BoundaryTrace::Sampled(coarse), &aperture(), 0.1, &q).unwrap();
        assert!(rec.warnings.iter().any(|w| w.contains("under-resolved")), "{:?}", rec.warnings);
    }

    #[test]
    fn missing_coverage_is_a_coverage_error() {
        let m = default_mode();
        // Rectangle needs |x| ≤ D(1)+0.5 ≈ 1.077, |t| ≤ 1.
        let small = sample_trace(&m.boundary_trace(), (-0.9, 0.9), (-1.0, 1.0), 41, 41).unwrap();
        assert!(matches!(
            reconstruct_local(&BoundaryTrace::Sampled(small), &aperture(), 0.1, &quick_quad()),
            Err(Error::Coverage(_))
        ));
    }

    #[test]
    fn exponent_guard_fires_for_tiny_h() {
        match reconstruct_local(
            &BoundaryTrace::Analytic(AnalyticTrace::zero()),
            &aperture(),
            1e-5,
            &quick_quad(),
        ) {
            Err(Error::Overflow { max_exponent, .. }) => {
                assert_relative_eq!(max_exponent, 25_000.0, max_relative = 1e-12);
            }
            other => panic!("expected overflow, got {other:?}"),
        }
    }

    #[test]
    fn sweep_records_overflow_entries_and_continues() {
        let trace = BoundaryTrace::Analytic(default_mode().boundary_trace());
        let report = h_sweep(&trace, &aperture(), &[0.1, 1e-5], &quick_quad(), Some(0.84)).unwrap();
        assert_eq!(report.entries.len(), 2);
        assert_eq!(report.entries[0].status, EntryStatus::Converged);
        assert!(report.entries[0].estimate.is_some());
        assert_eq!(report.entries[1].status, EntryStatus::KernelOverflow);
        assert!(report.entries[1].estimate.is_none());
        assert!(report.entries[1].max_exponent > EXPONENT_BUDGET);
        assert_eq!(report.best_entry().unwrap().h, 0.1);
    }

    #[test]
    fn sweep_rejects_non_decreasing_lists() {
        let trace = BoundaryTrace::Analytic(AnalyticTrace::zero());
        assert!(h_sweep(&trace, &aperture(), &[0.1, 0.1], &quick_quad(), None).is_err());
        assert!(h_sweep(&trace, &aperture(), &[], &quick_quad(), None).is_err());
        assert!(h_sweep(&trace, &aperture(), &[0.1, -0.2], &quick_quad(), None).is_err());
    }

    /// Compact windowed mode: exact inside the aperture, zero beyond |x| ≈ 1.3.
    fn windowed_mode_trace() -> AnalyticTrace {
        let m = default_mode();
        let inner = m.boundary_trace();
        AnalyticTrace::new(move |x, t| inner.eval(x, t) * bump_profile(x.abs() / 1.3, 0.15))
    }

    #[test]
    fn extended_matches_local_up_to_a_shrinking_tail() {
        let sampled =
            sample_trace(&windowed_mode_trace(), (-1.6, 1.6), (-1.0, 1.0), 321, 201).unwrap();
        let q = sampled_quad();
        let ap = aperture();
        let mut previous_gap = f64::INFINITY;
        for &h in &[0.05, 0.025] {
            let local = reconstruct_local(&BoundaryTrace::Sampled(sampled.clone()), &ap, h, &q)
                .unwrap()
                .value;
            let extended = reconstruct_extended(&sampled, 1.0, 1.0, h, 1.5, &q).unwrap().value;
            let gap = (extended - local).abs();
            assert!(gap <= 0.08, "tail gap {gap:.3e} too large at h = {h}");
            assert!(gap < previous_gap, "tail gap did not shrink at h = {h}");
            previous_gap = gap;
        }
    }

    #[test]
    fn extended_rejects_support_violations() {
        // Un-windowed mode data reach the grid edge: support exceeds the
        // requested rectangle.
        let sampled =
            sample_trace(&default_mode().boundary_trace(), (-3.0, 3.0), (-1.0, 1.0), 121, 81)
                .unwrap();
        assert!(matches!(
            reconstruct_extended(&sampled, 1.0, 1.0, 0.05, 1.5, &quick_quad()),
            Err(Error::Domain(_))
        ));
    }
}
