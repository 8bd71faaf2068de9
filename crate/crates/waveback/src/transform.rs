//! Fourier-side machinery: the transfer factor, the `G±` pair behind the
//! kernel bounds, and a direct spectral reconstruction of the interior value.
//!
//! For a boundary datum `v` with transform `ṽ(k, ω)` (forward convention
//! `e^{−i(kx+ωt)}`, measure `dx·dt`), the interior value at `(0, y0, 0)` is
//!
//! ```text
//! u(0, y0, 0) = (1/4π²) ∫∫ ṽ(k, ω) · sin(y0 √(ω²−k²)) / √(ω²−k²) dk dω ,
//! ```
//!
//! where `ṽ` is supported in `|ω| ≥ |k|` (waves travel no faster than the
//! light cone). The multiplier `sin(y0√q)/√q`, `q = ω²−k²`, is
//! [`transfer_factor`]; it is entire in `q`, equal to `y0` at `q = 0`, and
//! continues to `sinh` for `q < 0` — a branch used only for identity tests,
//! never applied to data.

use num_complex::Complex64;
use rustfft::FftPlanner;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quad::{gauss_legendre, refine, QuadratureSpec};
use crate::synthetic::{Mode, SampledTrace};

const PI: f64 = std::f64::consts::PI;
const FRAC_PI_2: f64 = std::f64::consts::FRAC_PI_2;

/// One point of a discrete `(k, ω)` spectrum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralPoint {
    /// Spatial frequency.
    pub k: f64,
    /// Temporal frequency.
    pub omega: f64,
    /// Complex amplitude `ṽ(k, ω)`.
    pub value: Complex64,
}

impl SpectralPoint {
    /// Whether the point satisfies the propagating-support condition
    /// `|ω| ≥ |k|`; amplitudes of valid wave data vanish elsewhere.
    pub fn is_propagating(&self) -> bool {
        self.omega.abs() >= self.k.abs()
    }
}

/// `sin(y0·√(ω²−k²)) / √(ω²−k²)`, analytically continued across the cone.
///
/// Near `q = ω²−k² = 0` the power series
/// `y0 · Σₙ (−1)ⁿ (q y0²)ⁿ / (2n+1)!` avoids the 0/0 cancellation; away from
/// it the closed sine/sinh forms apply. Even in `k` and in `ω`, continuous
/// in `q` (entire, in fact).
pub fn transfer_factor(k: f64, omega: f64, y0: f64) -> f64 {
    let q = omega * omega - k * k;
    let qy2 = q * y0 * y0;
    if qy2.abs() <= 0.5 {
        // y0·(1 − qy0²/3! + (qy0²)²/5! − …); converges in a few terms.
        let mut term = 1.0;
        let mut sum = 1.0;
        let mut n = 1u32;
        loop {
            term *= -qy2 / ((2 * n) as f64 * (2 * n + 1) as f64);
            let next = sum + term;
            if next == sum || n > 30 {
                return y0 * next;
            }
            sum = next;
            n += 1;
        }
    } else if q > 0.0 {
        let r = q.sqrt();
        (y0 * r).sin() / r
    } else {
        let r = (-q).sqrt();
        (y0 * r).sinh() / r
    }
}

/// Modified Bessel function `I₀(z)` by its power series
/// `Σₙ (z²/4)ⁿ / (n!)²` — deliberately independent of the quadrature-based
/// `H` evaluation it cross-checks.
pub fn i0_series(z: f64) -> f64 {
    let w = 0.25 * z * z;
    let mut term = 1.0f64;
    let mut sum = 1.0f64;
    let mut n = 1u32;
    loop {
        term *= w / ((n * n) as f64);
        let next = sum + term;
        if next == sum || n > 500 {
            return next;
        }
        sum = next;
        n += 1;
    }
}

/// The pair
///
/// ```text
/// G±(k, ω) = (1/2π²) ∫_{−y0}^{y0} e^{iωt} ∫₀^{π/2} e^{±k √(y0²−t²) sin s} ds dt ,
/// ```
///
/// real because the `t`-integrand pairs conjugate points. Satisfies
/// `G₊ + G₋ = transfer_factor(k, ω, y0)/π`.
///
/// The outer integral is computed under the substitution `t = y0 sin τ`,
/// which removes the square-root derivative singularity at `t = ±y0` and
/// restores spectral Gauss–Legendre convergence.
pub fn g_functions(k: f64, omega: f64, y0: f64, quad: &QuadratureSpec) -> Result<(f64, f64)> {
    quad.validate()?;
    if !(y0 > 0.0) {
        return Err(Error::Domain(format!("g_functions needs y0 > 0, got {y0}")));
    }
    let peak = k.abs() * y0;
    if peak > crate::kernel::EXPONENT_BUDGET {
        return Err(Error::Overflow { max_exponent: peak, budget: crate::kernel::EXPONENT_BUDGET });
    }
    let floor = peak.exp() * f64::EPSILON * 4.0;
    let one = |signed_k: f64| -> Result<f64> {
        let refined = refine(quad, floor, |level| {
            let (nt, _, ns) = quad.counts_at(level);
            let t_rule = gauss_legendre(nt);
            let s_rule = gauss_legendre(ns);
            let sins: Vec<(f64, f64)> =
                s_rule.mapped(0.0, FRAC_PI_2).map(|(s, w)| (s.sin(), w)).collect();
            // t = y0 sin τ, z = y0 cos τ, dt = y0 cos τ dτ; e^{iωt} reduces
            // to cos(ωt) against the even-in-t inner factor.
            Ok(t_rule.integrate(-FRAC_PI_2, FRAC_PI_2, |tau| {
                let (sin_tau, cos_tau) = tau.sin_cos();
                let z = y0 * cos_tau;
                let inner: f64 =
                    sins.iter().map(|&(sigma, w)| w * (signed_k * z * sigma).exp()).sum();
                y0 * cos_tau * (omega * y0 * sin_tau).cos() * inner
            }) / (2.0 * PI * PI))
        })?;
        Ok(refined.value)
    };
    Ok((one(k)?, one(-k)?))
}

/// Exact interior value `u(0, y0, 0)` predicted by the transfer identity for
/// a single Dirichlet mode: `A · sin(l y0) · Xphase(0) · Tphase(0)`.
pub fn mode_spectral_value(mode: &Mode, y0: f64) -> f64 {
    mode.amplitude * (mode.l * y0).sin() * mode.x_phase.at_zero() * mode.t_phase.at_zero()
}

/// Outcome of [`spectral_reconstruct`]: the estimate plus diagnostics.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SpectralReconstruction {
    /// Estimate of `u(0, y0, 0)`.
    pub value: f64,
    /// Magnitude of the imaginary residual discarded by the final real part
    /// (should be at round-off scale for real, well-sampled data).
    pub imag_residual: f64,
    /// Advisory diagnostics (boundary energy, Nyquist energy).
    pub warnings: Vec<String>,
}

/// Reconstructs `u(0, y0, 0)` directly on the Fourier side: DFT of the
/// sampled trace, multiplication by [`transfer_factor`], inverse sum at the
/// origin. Modes with `|ω| < |k|` are zeroed per the propagating-support
/// condition — continuing them with `sinh` would amplify discretization
/// noise catastrophically.
///
/// Entirely independent of the kernel pipeline; used to cross-validate it.
pub fn spectral_reconstruct(trace: &SampledTrace, y0: f64) -> Result<SpectralReconstruction> {
    trace.validate()?;
    if !(y0 > 0.0) {
        return Err(Error::Domain(format!("spectral reconstruction needs y0 > 0, got {y0}")));
    }
    let (nx, nt) = (trace.nx, trace.nt);

    let mut warnings = Vec::new();
    let max_abs = trace.max_abs();
    if max_abs > 0.0 {
        let mut edge = 0.0f64;
        for j in 0..nx {
            edge = edge.max(trace.value_at(j, 0).abs()).max(trace.value_at(j, nt - 1).abs());
        }
        for m in 0..nt {
            edge = edge.max(trace.value_at(0, m).abs()).max(trace.value_at(nx - 1, m).abs());
        }
        if edge > 1e-3 * max_abs {
            warnings.push(format!(
                "trace magnitude at the grid boundary is {:.2e} of the peak; \
                 the data's support may not be captured",
                edge / max_abs
            ));
        }
    }

    // Forward 2D DFT (e^{−2πi jn/N} per axis), time axis first.
    let mut planner = FftPlanner::new();
    let fft_x = planner.plan_fft_forward(nx);
    let fft_t = planner.plan_fft_forward(nt);
    let mut grid: Vec<Complex64> = trace.values.iter().map(|&v| Complex64::new(v, 0.0)).collect();
    for row in grid.chunks_exact_mut(nx) {
        fft_x.process(row);
    }
    let mut column = vec![Complex64::new(0.0, 0.0); nt];
    for j in 0..nx {
        for m in 0..nt {
            column[m] = grid[m * nx + j];
        }
        fft_t.process(&mut column);
        for m in 0..nt {
            grid[m * nx + j] = column[m];
        }
    }

    if max_abs > 0.0 {
        let spectral_peak = grid.iter().fold(0.0f64, |acc, c| acc.max(c.norm()));
        let near_nyquist = |idx: usize, n: usize| {
            let half = n / 2;
            idx.abs_diff(half) <= 1
        };
        let mut nyq = 0.0f64;
        for m in 0..nt {
            for j in 0..nx {
                if near_nyquist(j, nx) || near_nyquist(m, nt) {
                    nyq = nyq.max(grid[m * nx + j].norm());
                }
            }
        }
        if nyq > 1e-3 * spectral_peak {
            warnings.push(format!(
                "spectral magnitude near the Nyquist frequencies is {:.2e} of the peak; \
                 the sampling may be aliased",
                nyq / spectral_peak
            ));
        }
    }

    // u(0,y0,0) = (1/(nx·nt)) Σ F_{m,j} e^{−i(k_j x_min + ω_m t_min)} · TF(k_j, ω_m),
    // with the DFT frequencies wrapped to the symmetric range.
    let freq = |idx: usize, n: usize, step: f64| -> f64 {
        let signed = if idx <= n / 2 { idx as f64 } else { idx as f64 - n as f64 };
        2.0 * PI * signed / (n as f64 * step)
    };
    let mut total = Complex64::new(0.0, 0.0);
    for m in 0..nt {
        let omega = freq(m, nt, trace.dt);
        for j in 0..nx {
            let k = freq(j, nx, trace.dx);
            // Support condition: data of valid solutions vanishes for
            // |ω| < |k|, and the sinh continuation there would amplify
            // discretization noise — zero those modes instead. Cone-diagonal
            // modes (|ω| = |k|) are kept; the series branch of the transfer
            // factor handles them smoothly.
            if omega.abs() < k.abs() {
                continue;
            }
            let point = SpectralPoint { k, omega, value: grid[m * nx + j] };
            let phase = Complex64::from_polar(1.0, -(k * trace.x_min + omega * trace.t_min));
            total += point.value * phase * transfer_factor(k, omega, y0);
        }
    }
    total /= (nx * nt) as f64;
    Ok(SpectralReconstruction { value: total.re, imag_residual: total.im.abs(), warnings })
}
