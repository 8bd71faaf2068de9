//! The regularizing kernel `K_h` and its two representations.
//!
//! The closed form evaluated here is
//!
//! ```text
//! K_h(x, t) = (1 / (2 π^{3/2} √h)) ·
//!             Re[ (c + ix)^{−1/2} · ∫₀^{π/2} exp(−(x + i z sin s)² / (4h(c + ix))) ds ]
//! ```
//!
//! with `z = √(y0² − t²)` and the square root taken with `Re √(c+ix) > 0`
//! (the principal branch suffices, because `Re(c + ix) = c > 0`). `K_h` is
//! real and even in both `x` and `t`.
//!
//! An independent Fourier-side representation,
//!
//! ```text
//! K_h(x, t) = (1 / 4π) Σ_± ∫ e^{−ikx − hk²(c ± ix)} · H(±k z) dk ,
//! H(z) = (1/π) ∫₀^{π/2} e^{z sin s} ds ,
//! ```
//!
//! is implemented as [`kernel_fourier_oracle`] and used for cross-validation
//! only — the two paths share no quadrature machinery beyond the Gauss rule
//! itself.
//!
//! Inside the aperture the kernel grows like `exp(z²/(4hc))`, so every entry
//! point first computes the largest exponent it would need (the maximum of
//! `Re F` over `σ = sin s ∈ [0, 1]`, which by convexity of `Re F` in `σ` is
//! attained at an endpoint) and fails fast with a structured overflow error
//! when it exceeds [`EXPONENT_BUDGET`]. The same exponent bounds the
//! rounding-noise floor: at `exp(M)` magnitude, double precision carries an
//! absolute error of order `exp(M)·ε`, and refinement loops must not demand
//! agreement below that floor.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::aperture_d;
use crate::quad::{gauss_legendre, refine, QuadratureSpec, Refined};

/// Exponent guard: `exp(700)` is still finite in double precision
/// (`ln f64::MAX ≈ 709.8`), with headroom for the prefactor.
pub const EXPONENT_BUDGET: f64 = 700.0;

const FRAC_PI_2: f64 = std::f64::consts::FRAC_PI_2;
const PI: f64 = std::f64::consts::PI;

/// Parameters every kernel evaluation depends on.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KernelParams {
    /// Height of the reconstruction point (`y0 > 0`).
    pub y0: f64,
    /// Regularization shape parameter (`c > 0`).
    pub c: f64,
    /// Regularization strength (`h > 0`); the kernel concentrates as `h → 0`.
    pub h: f64,
}

impl KernelParams {
    /// Validated constructor.
    pub fn new(y0: f64, c: f64, h: f64) -> Result<Self> {
        let p = Self { y0, c, h };
        p.validate()?;
        Ok(p)
    }

    /// Checks the positivity invariants.
    pub fn validate(&self) -> Result<()> {
        if !(self.y0 > 0.0) {
            return Err(Error::Domain(format!("kernel needs y0 > 0, got {}", self.y0)));
        }
        if !(self.c > 0.0) {
            return Err(Error::Domain(format!("kernel needs c > 0, got {}", self.c)));
        }
        if !(self.h > 0.0) {
            return Err(Error::Domain(format!("kernel needs h > 0, got {}", self.h)));
        }
        Ok(())
    }

    /// The height coordinate `z = √(y0² − t²)`, with the radicand clamped at
    /// zero; `|t| > y0` is a domain error.
    pub fn slice_height(&self, t: f64) -> Result<f64> {
        if t.abs() > self.y0 {
            return Err(Error::Domain(format!(
                "kernel is defined for |t| ≤ y0 = {}, got t = {t}",
                self.y0
            )));
        }
        Ok((self.y0 * self.y0 - t * t).max(0.0).sqrt())
    }

    /// `1 / (2 π^{3/2} √h)`, the closed-form prefactor.
    pub fn prefactor(&self) -> f64 {
        1.0 / (2.0 * PI.powf(1.5) * self.h.sqrt())
    }
}

/// `H(z) = (1/π) ∫₀^{π/2} e^{z sin s} ds` — the entire function carrying the
/// kernel's Fourier representation. `H(0) = 1/2`, `H` is strictly
/// increasing, and `H(z) + H(−z) = I₀(z)` (the modified Bessel function).
pub fn h_function(z: f64, quad: &QuadratureSpec) -> Result<f64> {
    quad.validate()?;
    if z > EXPONENT_BUDGET {
        return Err(Error::Overflow { max_exponent: z, budget: EXPONENT_BUDGET });
    }
    // Noise floor: the integrand peaks at e^{max(z,0)}.
    let floor = z.max(0.0).exp() * f64::EPSILON * 4.0;
    let refined = refine(quad, floor, |level| {
        let n = (quad.nodes_s << level).min(QuadratureSpec::NODES_S_CAP * 4);
        let rule = gauss_legendre(n);
        Ok(rule.integrate(0.0, FRAC_PI_2, |s| (z * s.sin()).exp()) / PI)
    })?;
    Ok(refined.value)
}

/// `Re F(x, z, σ) = (c(−x² + z²σ²) − 2x²zσ) / (4h(c² + x²))` — the real part
/// of the closed-form exponent at `σ = sin s`. Convex in `σ`, so its maximum
/// over `[0, 1]` sits at an endpoint.
pub fn re_f(x: f64, z: f64, sigma: f64, params: &KernelParams) -> f64 {
    let c = params.c;
    (c * (-x * x + z * z * sigma * sigma) - 2.0 * x * x * z * sigma)
        / (4.0 * params.h * (c * c + x * x))
}

/// Maximum of `Re F` over `σ ∈ [0, 1]` — by convexity, the larger endpoint.
pub fn max_re_f(x: f64, z: f64, params: &KernelParams) -> f64 {
    re_f(x, z, 0.0, params).max(re_f(x, z, 1.0, params))
}

/// Checks the exponent guard for a whole slice (the slice-wide maximum of
/// `Re F` is attained at `x = 0`, `σ = 1`, where it equals `z²/(4hc)`).
fn guard_slice_exponent(z: f64, params: &KernelParams) -> Result<f64> {
    let peak = z * z / (4.0 * params.h * params.c);
    if peak > EXPONENT_BUDGET {
        return Err(Error::Overflow { max_exponent: peak, budget: EXPONENT_BUDGET });
    }
    Ok(peak)
}

/// Evaluates the closed-form kernel at many abscissa offsets on one time
/// slice (fixed `z`), sharing the `s`-rule across offsets. This is the hot
/// path of reconstruction; no internal refinement — the caller owns the
/// convergence policy.
pub fn kernel_slice(
    offsets: &[f64],
    z: f64,
    params: &KernelParams,
    nodes_s: usize,
) -> Result<Vec<f64>> {
    guard_slice_exponent(z, params)?;
    let rule = gauss_legendre(nodes_s);
    // s-nodes mapped to [0, π/2] once per slice.
    let sins: Vec<(f64, f64)> = rule.mapped(0.0, FRAC_PI_2).map(|(s, w)| (s.sin(), w)).collect();
    let pref = params.prefactor();
    let mut out = Vec::with_capacity(offsets.len());
    for &x in offsets {
        let cx = Complex64::new(params.c, x);
        let denom_inv = (4.0 * params.h * cx).finv();
        let mut sum = Complex64::new(0.0, 0.0);
        for &(sigma, w) in &sins {
            let head = Complex64::new(x, z * sigma);
            let e = -(head * head) * denom_inv;
            sum += w * e.exp();
        }
        // Principal branch: Re(c + ix) = c > 0 ensures Re √(c+ix) > 0.
        out.push(pref * (sum / cx.sqrt()).re);
    }
    Ok(out)
}

/// Closed-form kernel value at one point, with `s`-refinement to the
/// requested tolerance (plus the `exp(Re F)`-scaled rounding floor).
pub fn kernel_closed_form(
    x: f64,
    t: f64,
    params: &KernelParams,
    quad: &QuadratureSpec,
) -> Result<f64> {
    params.validate()?;
    quad.validate()?;
    let z = params.slice_height(t)?;
    let m = max_re_f(x, z, params);
    if m > EXPONENT_BUDGET {
        return Err(Error::Overflow { max_exponent: m, budget: EXPONENT_BUDGET });
    }
    let floor = params.prefactor() * m.max(0.0).exp() * f64::EPSILON * 8.0;
    let refined = refine(quad, floor, |level| {
        let n = (quad.nodes_s << level).min(QuadratureSpec::NODES_S_CAP * 4);
        Ok(kernel_slice(&[x], z, params, n)?[0])
    })?;
    Ok(refined.value)
}

/// Default Fourier-integral cutoff: beyond
/// `k* = √(35/(hc)) + y0/(hc)` the Gaussian factor `e^{−hck²}` has beaten
/// `H`'s exponential growth by at least `e^{−35}`, well under the 1e-14 tail
/// requirement.
pub fn default_k_cutoff(params: &KernelParams) -> f64 {
    let hc = params.h * params.c;
    (35.0 / hc).sqrt() + params.y0 / hc
}

/// Independent Fourier-representation evaluation of `K_h(x, t)`.
///
/// The `k`-integral is oscillatory with a chirped phase `kx + hk²x`; it is
/// integrated over uniform composite panels whose width tracks the fastest
/// local oscillation (`≤ π/(4(|x| + h·k_cutoff))`), 16-point Gauss per panel,
/// and the panel count doubles per refinement level. Pass `None` for
/// `k_cutoff` to use [`default_k_cutoff`]; an explicit cutoff is validated
/// against the tail bound `e^{−hc·k² + k·y0} ≤ 1e-14`.
pub fn kernel_fourier_oracle(
    x: f64,
    t: f64,
    params: &KernelParams,
    k_cutoff: Option<f64>,
    quad: &QuadratureSpec,
) -> Result<f64> {
    params.validate()?;
    quad.validate()?;
    let z = params.slice_height(t)?;
    let hc = params.h * params.c;
    let cutoff = match k_cutoff {
        Some(k) => {
            if !(k > 0.0) {
                return Err(Error::Domain(format!("k_cutoff must be positive, got {k}")));
            }
            let tail_exponent = -hc * k * k + k * params.y0;
            if tail_exponent > (1e-14f64).ln() {
                return Err(Error::Domain(format!(
                    "k_cutoff = {k} leaves a non-negligible tail \
                     (exp({tail_exponent:.2}) > 1e-14); increase it"
                )));
            }
            k
        }
        None => default_k_cutoff(params),
    };
    // The integrand magnitude peaks at exp(z²/(4hc)) (at k = z/(2hc)); that
    // also guards the exponent and sets the rounding floor.
    let peak = guard_slice_exponent(z, params)?;
    let floor = peak.exp() * f64::EPSILON * 0.5;

    let width_rule = PI / (4.0 * (x.abs() + params.h * cutoff).max(1e-3));
    let base_panels = ((2.0 * cutoff / width_rule).ceil() as usize).max(8);
    let panel_rule = gauss_legendre(16);

    let refined: Refined = refine(quad, floor, |level| {
        let panels = base_panels << level;
        let n_s = (quad.nodes_s << level).min(QuadratureSpec::NODES_S_CAP);
        let s_rule = gauss_legendre(n_s);
        let sins: Vec<(f64, f64)> =
            s_rule.mapped(0.0, FRAC_PI_2).map(|(s, w)| (s.sin(), w)).collect();
        // H(ζ) with the slice's fixed s-rule (refined together with panels).
        let h_at = |zeta: f64| -> f64 {
            let mut sum = 0.0;
            for &(sigma, w) in &sins {
                sum += w * (zeta * sigma).exp();
            }
            sum / PI
        };
        let dk = 2.0 * cutoff / panels as f64;
        let mut total = Complex64::new(0.0, 0.0);
        for p in 0..panels {
            let a = -cutoff + p as f64 * dk;
            for (k, w) in panel_rule.mapped(a, a + dk) {
                // Σ±  e^{−ikx − hk²(c ± ix)} H(±kz)
                let gauss = -params.h * k * k;
                let phase = Complex64::new(0.0, -k * x);
                let plus = (phase + gauss * Complex64::new(params.c, x)).exp() * h_at(k * z);
                let minus = (phase + gauss * Complex64::new(params.c, -x)).exp() * h_at(-k * z);
                total += w * (plus + minus);
            }
        }
        Ok((total / (4.0 * PI)).re)
    })?;
    Ok(refined.value)
}

/// Decay constant `a = c / (4(c² + d²))` from the aperture-tail bound
/// `|K_h| ≤ C·h^{−1/2}·e^{−aε²/h}` on the band `D(z)+ε ≤ |x| ≤ d`.
pub fn decay_constant_a(c: f64, d: f64) -> f64 {
    c / (4.0 * (c * c + d * d))
}

/// Exponent diagnostics on the decay band: `Re F` at the `σ` endpoints, the
/// convexity maximum, and the bound's right-hand side `−aε²/h`.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct ExponentDiagnostics {
    /// `Re F` at `σ = 0`.
    pub re_f_at_sigma0: f64,
    /// `Re F` at `σ = 1`.
    pub re_f_at_sigma1: f64,
    /// `max_{σ ∈ [0,1]} Re F` — by convexity, the larger endpoint.
    pub re_f_max_over_sigma: f64,
    /// `−aε²/h` with `a = c/(4(c² + d²))`.
    pub bound_rhs: f64,
}

/// Evaluates [`ExponentDiagnostics`] at a point of the band
/// `D(√(y0²−t²)) + ε ≤ |x| ≤ d`, `|t| ≤ y0`. Points outside the band are a
/// domain error (inside the aperture the kernel *grows*; beyond `d` the
/// data's support assumption is violated).
pub fn decay_diagnostics(
    x: f64,
    t: f64,
    params: &KernelParams,
    epsilon: f64,
    d: f64,
) -> Result<ExponentDiagnostics> {
    params.validate()?;
    if !(epsilon > 0.0) || !(d > 0.0) {
        return Err(Error::Domain(format!(
            "decay band needs ε > 0 and d > 0, got ε = {epsilon}, d = {d}"
        )));
    }
    let z = params.slice_height(t)?;
    let inner = aperture_d(z, params.c)? + epsilon;
    if x.abs() < inner || x.abs() > d {
        return Err(Error::Domain(format!(
            "point (x = {x}, t = {t}) is outside the decay band \
             {inner:.6} ≤ |x| ≤ {d}"
        )));
    }
    let s0 = re_f(x, z, 0.0, params);
    let s1 = re_f(x, z, 1.0, params);
    let a = decay_constant_a(params.c, d);
    Ok(ExponentDiagnostics {
        re_f_at_sigma0: s0,
        re_f_at_sigma1: s1,
        re_f_max_over_sigma: s0.max(s1),
        bound_rhs: -a * epsilon * epsilon / params.h,
    })
}
