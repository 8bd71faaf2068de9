//! Analytic test solutions of the half-space Dirichlet wave problem.
//!
//! A *mode* is a separated solution
//!
//! ```text
//! u(x, y, t) = A · sin(l y) · Xphase(k x) · Tphase(ω t) ,   ω = √(k² + l²),
//! ```
//!
//! which satisfies `u_tt = u_xx + u_yy` and `u(x, 0, t) = 0` identically; its
//! boundary datum `v = ∂u/∂y |_{y=0}` is known in closed form, so modes give
//! exact (trace, interior-value) pairs for convergence studies. Traces come
//! in two flavours — analytic closures and uniformly sampled grids — unified
//! under [`BoundaryTrace`].

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Phase selector for one separated factor.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Phase {
    /// `cos(·)` — even factor.
    Cos,
    /// `sin(·)` — odd factor.
    Sin,
}

impl Phase {
    /// Evaluates the selected trigonometric factor.
    pub fn eval(self, arg: f64) -> f64 {
        match self {
            Phase::Cos => arg.cos(),
            Phase::Sin => arg.sin(),
        }
    }

    /// Value at argument zero (`cos → 1`, `sin → 0`).
    pub fn at_zero(self) -> f64 {
        match self {
            Phase::Cos => 1.0,
            Phase::Sin => 0.0,
        }
    }
}

/// A Dirichlet mode of the half-space wave equation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Mode {
    /// Overall amplitude `A`.
    pub amplitude: f64,
    /// Horizontal frequency `k` (any sign).
    pub k: f64,
    /// Vertical frequency `l > 0`.
    pub l: f64,
    /// Factor in `x`: `Xphase(k x)`.
    pub x_phase: Phase,
    /// Factor in `t`: `Tphase(ω t)`.
    pub t_phase: Phase,
}

impl Mode {
    /// Validated constructor (`l > 0` and finite fields).
    pub fn new(amplitude: f64, k: f64, l: f64, x_phase: Phase, t_phase: Phase) -> Result<Self> {
        if !(l > 0.0) {
            return Err(Error::Domain(format!("mode needs vertical frequency l > 0, got {l}")));
        }
        if !amplitude.is_finite() || !k.is_finite() || !l.is_finite() {
            return Err(Error::Domain("mode parameters must be finite".into()));
        }
        Ok(Self { amplitude, k, l, x_phase, t_phase })
    }

    /// Temporal frequency from the dispersion relation `ω = √(k² + l²)`.
    pub fn omega(&self) -> f64 {
        self.k.hypot(self.l)
    }

    /// Exact interior value `u(x, y, t)`.
    pub fn interior_value(&self, x: f64, y: f64, t: f64) -> f64 {
        self.amplitude
            * (self.l * y).sin()
            * self.x_phase.eval(self.k * x)
            * self.t_phase.eval(self.omega() * t)
    }

    /// Exact boundary datum `v(x, t) = ∂u/∂y|_{y=0} = A·l·Xphase(kx)·Tphase(ωt)`.
    pub fn boundary_trace(&self) -> AnalyticTrace {
        let m = *self;
        AnalyticTrace::new(move |x, t| {
            m.amplitude * m.l * m.x_phase.eval(m.k * x) * m.t_phase.eval(m.omega() * t)
        })
    }
}

/// A boundary trace given as an exact closure `(x, t) → v`.
#[derive(Clone)]
pub struct AnalyticTrace {
    f: Arc<dyn Fn(f64, f64) -> f64 + Send + Sync>,
}

impl AnalyticTrace {
    /// Wraps a closure.
    pub fn new(f: impl Fn(f64, f64) -> f64 + Send + Sync + 'static) -> Self {
        Self { f: Arc::new(f) }
    }

    /// The identically-zero trace.
    pub fn zero() -> Self {
        Self::new(|_, _| 0.0)
    }

    /// Evaluates `v(x, t)`.
    pub fn eval(&self, x: f64, t: f64) -> f64 {
        (self.f)(x, t)
    }
}

impl fmt::Debug for AnalyticTrace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("AnalyticTrace(closure)")
    }
}

/// Pointwise weighted sum of analytic traces; the matching interior value is
/// the same weighted sum of the members' interior values (linearity of the
/// wave equation). An empty list yields the zero trace.
pub fn superpose(terms: &[(f64, AnalyticTrace)]) -> AnalyticTrace {
    let owned: Vec<(f64, AnalyticTrace)> = terms.to_vec();
    AnalyticTrace::new(move |x, t| owned.iter().map(|(w, tr)| w * tr.eval(x, t)).sum())
}

/// A boundary trace sampled on a uniform rectangular grid.
///
/// `values` is row-major with one row per time sample:
/// `values[m·nx + j] = v(x_min + j·dx, t_min + m·dt)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SampledTrace {
    /// Leftmost abscissa.
    pub x_min: f64,
    /// Abscissa spacing (`> 0`).
    pub dx: f64,
    /// Number of abscissa samples (`≥ 2`).
    pub nx: usize,
    /// Earliest time.
    pub t_min: f64,
    /// Time spacing (`> 0`).
    pub dt: f64,
    /// Number of time samples (`≥ 2`).
    pub nt: usize,
    /// Samples, row-major by time.
    pub values: Vec<f64>,
}

impl SampledTrace {
    /// Checks grid invariants and the value-count consistency.
    pub fn validate(&self) -> Result<()> {
        if !(self.dx > 0.0) || !(self.dt > 0.0) {
            return Err(Error::Domain(format!(
                "sampled trace needs positive spacings, got dx = {}, dt = {}",
                self.dx, self.dt
            )));
        }
        if self.nx < 2 || self.nt < 2 {
            return Err(Error::Domain(format!(
                "sampled trace needs at least a 2×2 grid, got {}×{}",
                self.nx, self.nt
            )));
        }
        if self.values.len() != self.nx * self.nt {
            return Err(Error::Domain(format!(
                "sampled trace carries {} values for a {}×{} grid",
                self.values.len(),
                self.nx,
                self.nt
            )));
        }
        Ok(())
    }

    /// Abscissa of column `j`.
    pub fn x_at(&self, j: usize) -> f64 {
        self.x_min + j as f64 * self.dx
    }

    /// Time of row `m`.
    pub fn t_at(&self, m: usize) -> f64 {
        self.t_min + m as f64 * self.dt
    }

    /// Rightmost abscissa.
    pub fn x_max(&self) -> f64 {
        self.x_at(self.nx - 1)
    }

    /// Latest time.
    pub fn t_max(&self) -> f64 {
        self.t_at(self.nt - 1)
    }

    /// Sample at column `j`, row `m`.
    pub fn value_at(&self, j: usize, m: usize) -> f64 {
        self.values[m * self.nx + j]
    }

    /// Whether the grid covers the closed rectangle
    /// `[x_lo, x_hi] × [t_lo, t_hi]` (with a round-off allowance of half a
    /// cell so that rectangles flush with the grid edge count as covered).
    pub fn covers(&self, x_lo: f64, x_hi: f64, t_lo: f64, t_hi: f64) -> bool {
        let fuzz_x = 0.5 * self.dx * 1e-9;
        let fuzz_t = 0.5 * self.dt * 1e-9;
        self.x_min <= x_lo + fuzz_x
            && self.x_max() >= x_hi - fuzz_x
            && self.t_min <= t_lo + fuzz_t
            && self.t_max() >= t_hi - fuzz_t
    }

    /// Bilinear interpolation at `(x, t)`. Points outside the grid are a
    /// coverage error — callers are expected to have checked [`covers`]
    /// (points within one part in 10⁹ of the edge are clamped).
    ///
    /// [`covers`]: SampledTrace::covers
    pub fn bilinear(&self, x: f64, t: f64) -> Result<f64> {
        let fx = (x - self.x_min) / self.dx;
        let ft = (t - self.t_min) / self.dt;
        let max_fx = (self.nx - 1) as f64;
        let max_ft = (self.nt - 1) as f64;
        let tol = 1e-9;
        if fx < -tol * max_fx.max(1.0)
            || fx > max_fx * (1.0 + tol)
            || ft < -tol * max_ft.max(1.0)
            || ft > max_ft * (1.0 + tol)
        {
            return Err(Error::Coverage(format!(
                "interpolation point (x = {x}, t = {t}) lies outside the sampled grid \
                 [{}, {}] × [{}, {}]",
                self.x_min,
                self.x_max(),
                self.t_min,
                self.t_max()
            )));
        }
        let fx = fx.clamp(0.0, max_fx);
        let ft = ft.clamp(0.0, max_ft);
        let j = (fx.floor() as usize).min(self.nx - 2);
        let m = (ft.floor() as usize).min(self.nt - 2);
        let ax = fx - j as f64;
        let at = ft - m as f64;
        let v00 = self.value_at(j, m);
        let v10 = self.value_at(j + 1, m);
        let v01 = self.value_at(j, m + 1);
        let v11 = self.value_at(j + 1, m + 1);
        Ok((1.0 - at) * ((1.0 - ax) * v00 + ax * v10) + at * ((1.0 - ax) * v01 + ax * v11))
    }

    /// Largest `|v|` over the grid.
    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0f64, |acc, v| acc.max(v.abs()))
    }

    /// Half-width of the numerical support in `x`: the largest `|x_j|` over
    /// columns holding any `|v| > threshold` (0 when none do).
    pub fn support_halfwidth(&self, threshold: f64) -> f64 {
        let mut half = 0.0f64;
        for j in 0..self.nx {
            let col_max = (0..self.nt).fold(0.0f64, |acc, m| acc.max(self.value_at(j, m).abs()));
            if col_max > threshold {
                half = half.max(self.x_at(j).abs());
            }
        }
        half
    }
}

/// A boundary trace in either representation.
#[derive(Debug, Clone)]
pub enum BoundaryTrace {
    /// Exact closure.
    Analytic(AnalyticTrace),
    /// Uniform grid with bilinear interpolation between samples.
    Sampled(SampledTrace),
}

impl BoundaryTrace {
    /// Evaluates `v(x, t)` — exactly for analytic traces, bilinearly for
    /// sampled ones (where leaving the grid is a coverage error).
    pub fn eval(&self, x: f64, t: f64) -> Result<f64> {
        match self {
            BoundaryTrace::Analytic(a) => Ok(a.eval(x, t)),
            BoundaryTrace::Sampled(s) => s.bilinear(x, t),
        }
    }

    /// Verifies that the closed rectangle is inside the trace's domain
    /// (always true for analytic traces).
    pub fn check_covers(&self, x_lo: f64, x_hi: f64, t_lo: f64, t_hi: f64) -> Result<()> {
        match self {
            BoundaryTrace::Analytic(_) => Ok(()),
            BoundaryTrace::Sampled(s) => {
                if s.covers(x_lo, x_hi, t_lo, t_hi) {
                    Ok(())
                } else {
                    Err(Error::Coverage(format!(
                        "trace grid [{}, {}] × [{}, {}] does not cover the required \
                         rectangle [{x_lo}, {x_hi}] × [{t_lo}, {t_hi}]",
                        s.x_min,
                        s.x_max(),
                        s.t_min,
                        s.t_max()
                    )))
                }
            }
        }
    }
}

/// Samples an analytic trace on a uniform grid including both endpoints.
pub fn sample_trace(
    trace: &AnalyticTrace,
    x_range: (f64, f64),
    t_range: (f64, f64),
    nx: usize,
    nt: usize,
) -> Result<SampledTrace> {
    if nx < 2 || nt < 2 {
        return Err(Error::Domain(format!("sampling needs nx, nt ≥ 2, got {nx}×{nt}")));
    }
    if !(x_range.1 > x_range.0) || !(t_range.1 > t_range.0) {
        return Err(Error::Domain(format!(
            "degenerate sampling range [{}, {}] × [{}, {}]",
            x_range.0, x_range.1, t_range.0, t_range.1
        )));
    }
    let dx = (x_range.1 - x_range.0) / (nx - 1) as f64;
    let dt = (t_range.1 - t_range.0) / (nt - 1) as f64;
    let mut values = Vec::with_capacity(nx * nt);
    for m in 0..nt {
        let t = t_range.0 + m as f64 * dt;
        for j in 0..nx {
            values.push(trace.eval(x_range.0 + j as f64 * dx, t));
        }
    }
    Ok(SampledTrace { x_min: x_range.0, dx, nx, t_min: t_range.0, dt, nt, values })
}

/// Extends a trace sampled on `t ∈ [0, T]` to `[−T, T]` by even reflection
/// in time — exact for data from zero-initial-velocity problems, whose
/// solutions are even in `t`.
pub fn mirror_time_even(half: &SampledTrace) -> Result<SampledTrace> {
    half.validate()?;
    if half.t_min.abs() > 1e-12 * half.dt {
        return Err(Error::Domain(format!(
            "even-mirroring expects the trace to start at t = 0, got t_min = {}",
            half.t_min
        )));
    }
    let nt_full = 2 * half.nt - 1;
    let mut values = Vec::with_capacity(half.nx * nt_full);
    // Rows for t < 0 mirror rows nt−1 … 1, then the t ≥ 0 rows follow.
    for m in (1..half.nt).rev() {
        values.extend_from_slice(&half.values[m * half.nx..(m + 1) * half.nx]);
    }
    values.extend_from_slice(&half.values);
    Ok(SampledTrace {
        x_min: half.x_min,
        dx: half.dx,
        nx: half.nx,
        t_min: -half.t_at(half.nt - 1),
        dt: half.dt,
        nt: nt_full,
        values,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn base_mode() -> Mode {
        Mode::new(1.0, 0.0, 1.0, Phase::Cos, Phase::Cos).unwrap()
    }

    #[test]
    fn mode_rejects_bad_frequencies() {
        assert!(Mode::new(1.0, 0.5, 0.0, Phase::Cos, Phase::Cos).is_err());
        assert!(Mode::new(1.0, 0.5, -1.0, Phase::Cos, Phase::Cos).is_err());
        assert!(Mode::new(f64::NAN, 0.5, 1.0, Phase::Cos, Phase::Cos).is_err());
    }

    #[test]
    fn dispersion_relation_is_exact() {
        let m = Mode::new(2.0, 0.5, 1.0, Phase::Cos, Phase::Sin).unwrap();
        let w = m.omega();
        assert_relative_eq!(w * w, m.k * m.k + m.l * m.l, max_relative = 1e-15);
    }

    #[test]
    fn interior_value_reference_point() {
        // (A=1, k=0, l=1, cos, cos) at (0, 1, 0) → sin(1).
        assert_relative_eq!(
            base_mode().interior_value(0.0, 1.0, 0.0),
            0.8414709848078965,
            max_relative = 1e-15
        );
    }

    #[test]
    fn dirichlet_condition_holds_exactly() {
        let modes = [
            base_mode(),
            Mode::new(-2.0, 1.0, 2.0, Phase::Sin, Phase::Cos).unwrap(),
            Mode::new(0.7, 0.5, 0.5, Phase::Cos, Phase::Sin).unwrap(),
        ];
        for m in &modes {
            for i in 0..10 {
                let x = -3.0 + 0.7 * i as f64;
                let t = -1.0 + 0.25 * i as f64;
                assert_eq!(m.interior_value(x, 0.0, t), 0.0);
            }
        }
    }

    #[test]
    fn pde_residual_vanishes_to_stencil_order() {
        // 5-point second differences with step 1e-3: |u_tt − u_xx − u_yy| ≤ 1e-5.
        let modes = [
            base_mode(),
            Mode::new(1.3, 1.0, 2.0, Phase::Sin, Phase::Sin).unwrap(),
            Mode::new(-0.4, 0.5, 1.0, Phase::Cos, Phase::Sin).unwrap(),
        ];
        let d = 1e-3;
        let second = |f: &dyn Fn(f64) -> f64, a: f64| (f(a + d) - 2.0 * f(a) + f(a - d)) / (d * d);
        let points = [(0.3, 0.9, 0.1), (-1.1, 1.7, 0.6), (2.0, 0.4, -0.8)];
        for m in &modes {
            for &(x, y, t) in &points {
                let u_tt = second(&|s| m.interior_value(x, y, s), t);
                let u_xx = second(&|s| m.interior_value(s, y, t), x);
                let u_yy = second(&|s| m.interior_value(x, s, t), y);
                assert!(
                    (u_tt - u_xx - u_yy).abs() <= 1e-5,
                    "PDE residual too large for mode {m:?} at ({x}, {y}, {t})"
                );
            }
        }
    }

    #[test]
    fn boundary_trace_matches_centered_difference() {
        // v = ∂u/∂y at y=0, compared with (u(x,δ,t) − u(x,−δ,t))/(2δ) using
        // the odd continuation u(x,−y,t) = −u(x,y,t).
        let m = Mode::new(1.0, 0.5, 1.0, Phase::Cos, Phase::Cos).unwrap();
        let v = m.boundary_trace();
        let delta = 1e-4;
        for i in 0..8 {
            let x = -2.0 + 0.6 * i as f64;
            let t = -0.9 + 0.3 * i as f64;
            let numeric =
                (m.interior_value(x, delta, t) - (-m.interior_value(x, delta, t))) / (2.0 * delta);
            assert!((v.eval(x, t) - numeric).abs() <= 1e-7 * (1.0 + numeric.abs()));
        }
    }

    #[test]
    fn odd_time_modes_vanish_at_time_zero() {
        let m = Mode::new(3.0, 1.0, 2.0, Phase::Cos, Phase::Sin).unwrap();
        let v = m.boundary_trace();
        for i in 0..10 {
            assert_eq!(v.eval(-2.0 + 0.5 * i as f64, 0.0), 0.0);
        }
    }

    #[test]
    fn superpose_identity_and_cancellation() {
        let m = base_mode();
        let tr = m.boundary_trace();
        let same = superpose(&[(1.0, tr.clone())]);
        let cancel = superpose(&[(1.0, tr.clone()), (-1.0, tr.clone())]);
        let empty = superpose(&[]);
        for i in 0..6 {
            let (x, t) = (-1.0 + 0.4 * i as f64, -0.5 + 0.2 * i as f64);
            assert_eq!(same.eval(x, t), tr.eval(x, t));
            assert_eq!(cancel.eval(x, t), 0.0);
            assert_eq!(empty.eval(x, t), 0.0);
        }
    }

    #[test]
    fn sampling_round_trip_at_nodes() {
        let m = Mode::new(1.0, 1.0, 1.0, Phase::Cos, Phase::Cos).unwrap();
        let tr = m.boundary_trace();
        let s = sample_trace(&tr, (-2.0, 2.0), (-1.0, 1.0), 33, 17).unwrap();
        s.validate().unwrap();
        for m_idx in 0..s.nt {
            for j in 0..s.nx {
                let exact = tr.eval(s.x_at(j), s.t_at(m_idx));
                assert_relative_eq!(
                    s.bilinear(s.x_at(j), s.t_at(m_idx)).unwrap(),
                    exact,
                    max_relative = 1e-12
                );
            }
        }
    }

    #[test]
    fn sampling_rejects_degenerate_requests() {
        let tr = AnalyticTrace::zero();
        assert!(sample_trace(&tr, (1.0, 1.0), (0.0, 1.0), 8, 8).is_err());
        assert!(sample_trace(&tr, (0.0, 1.0), (0.0, 1.0), 1, 8).is_err());
    }

    #[test]
    fn bilinear_interpolation_converges_at_second_order() {
        let m = Mode::new(1.0, 1.0, 1.0, Phase::Cos, Phase::Cos).unwrap();
        let tr = m.boundary_trace();
        // Max interpolation error at off-node probes, for two resolutions.
        let probe = |s: &SampledTrace| -> f64 {
            let mut worst = 0.0f64;
            for i in 0..40 {
                for j in 0..40 {
                    let x = -1.9 + 3.8 * (i as f64 + 0.37) / 40.0;
                    let t = -0.9 + 1.8 * (j as f64 + 0.61) / 40.0;
                    worst = worst.max((s.bilinear(x, t).unwrap() - tr.eval(x, t)).abs());
                }
            }
            worst
        };
        let coarse = probe(&sample_trace(&tr, (-2.0, 2.0), (-1.0, 1.0), 41, 21).unwrap());
        let fine = probe(&sample_trace(&tr, (-2.0, 2.0), (-1.0, 1.0), 81, 41).unwrap());
        let order = (coarse / fine).log2();
        assert!(order >= 1.9, "observed interpolation order {order:.2} < 1.9");
    }

    #[test]
    fn bilinear_rejects_points_off_the_grid() {
        let s = sample_trace(&AnalyticTrace::zero(), (-1.0, 1.0), (0.0, 1.0), 5, 5).unwrap();
        assert!(matches!(s.bilinear(1.5, 0.5), Err(Error::Coverage(_))));
        assert!(matches!(s.bilinear(0.0, -0.5), Err(Error::Coverage(_))));
        // Edge points are fine.
        assert_eq!(s.bilinear(1.0, 1.0).unwrap(), 0.0);
    }

    #[test]
    fn coverage_checks_respect_edges() {
        let s = sample_trace(&AnalyticTrace::zero(), (-2.0, 2.0), (-1.0, 1.0), 9, 9).unwrap();
        assert!(s.covers(-2.0, 2.0, -1.0, 1.0));
        assert!(s.covers(-1.0, 1.0, -0.5, 0.5));
        assert!(!s.covers(-2.5, 2.0, -1.0, 1.0));
        assert!(!s.covers(-2.0, 2.0, -1.0, 1.2));
        let bt = BoundaryTrace::Sampled(s);
        assert!(bt.check_covers(-2.0, 2.0, -1.0, 1.0).is_ok());
        assert!(matches!(bt.check_covers(-3.0, 3.0, -1.0, 1.0), Err(Error::Coverage(_))));
        assert!(BoundaryTrace::Analytic(AnalyticTrace::zero())
            .check_covers(-100.0, 100.0, -50.0, 50.0)
            .is_ok());
    }

    #[test]
    fn time_mirroring_reproduces_even_modes() {
        // Sample an even-in-t mode on t ∈ [0, 1], mirror, and compare with
        // direct sampling of [−1, 1].
        let m = Mode::new(1.0, 0.5, 1.0, Phase::Cos, Phase::Cos).unwrap();
        let tr = m.boundary_trace();
        let half = sample_trace(&tr, (-2.0, 2.0), (0.0, 1.0), 17, 9).unwrap();
        let full = mirror_time_even(&half).unwrap();
        let direct = sample_trace(&tr, (-2.0, 2.0), (-1.0, 1.0), 17, 17).unwrap();
        assert_eq!(full.nt, 17);
        assert_relative_eq!(full.t_min, -1.0, max_relative = 1e-15);
        for mi in 0..full.nt {
            for j in 0..full.nx {
                assert_relative_eq!(
                    full.value_at(j, mi),
                    direct.value_at(j, mi),
                    max_relative = 1e-12,
                    epsilon = 1e-14
                );
            }
        }
    }

    #[test]
    fn time_mirroring_requires_a_zero_start() {
        let s = sample_trace(&AnalyticTrace::zero(), (-1.0, 1.0), (0.5, 1.0), 5, 5).unwrap();
        assert!(mirror_time_even(&s).is_err());
    }

    #[test]
    fn support_halfwidth_finds_the_outermost_active_column() {
        let tr = AnalyticTrace::new(|x, _| if x.abs() <= 1.0 { 1.0 } else { 0.0 });
        let s = sample_trace(&tr, (-4.0, 4.0), (0.0, 1.0), 81, 5).unwrap();
        assert_relative_eq!(s.support_halfwidth(1e-12), 1.0, max_relative = 1e-12);
        assert_eq!(
            SampledTrace {
                x_min: -1.0,
                dx: 1.0,
                nx: 3,
                t_min: 0.0,
                dt: 1.0,
                nt: 2,
                values: vec![0.0; 6],
            }
            .support_halfwidth(1e-12),
            0.0
        );
    }
}
