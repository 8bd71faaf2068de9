//! The aperture: where boundary data is required.
//!
//! Reconstruction of `u(x0, y0, t0)` integrates boundary data over the set
//!
//! ```text
//! U = { (x, t) : |x − x0| ≤ D(√(y0² − (t − t0)²)) + ε,  |t − t0| ≤ y0 }
//! ```
//!
//! where `D(z) = z·√(c/(c + 2z))` and `ε > 0` is a safety margin. `U` is a
//! lens-shaped neighbourhood of the point `(x0, t0)` on the boundary,
//! contained in the rectangle `|x − x0| ≤ D(y0) + ε`, `|t − t0| ≤ y0`. Since
//! `D(z) < z`, the aperture is strictly smaller than the light cone of the
//! reconstruction point: the method needs *less* than the full domain of
//! dependence, at the price of regularization.
//!
//! Conventions: boundary points with equality are considered inside
//! (quadrature does not care about measure-zero sets, and a closed set makes
//! [`Aperture::contains`] deterministic), and the radicand `y0² − (t − t0)²`
//! is clamped at zero to absorb floating-point dust at `|t − t0| = y0`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Evaluates the aperture half-width profile `D(z) = z·√(c/(c + 2z))`.
///
/// `D` is zero exactly at `z = 0`, strictly increasing, and satisfies
/// `D(z) < z` for `z > 0`; as `c → ∞` it approaches `z` (the aperture opens
/// up to the light cone) and as `c → 0` it collapses to zero.
pub fn aperture_d(z: f64, c: f64) -> Result<f64> {
    if !(z >= 0.0) {
        return Err(Error::Domain(format!("aperture_d needs z ≥ 0, got z = {z}")));
    }
    if !(c > 0.0) {
        return Err(Error::Domain(format!("aperture_d needs c > 0, got c = {c}")));
    }
    Ok(z * (c / (c + 2.0 * z)).sqrt())
}

/// The integration set `U`: target height `y0`, shape parameter `c`, margin
/// `ε`, and the boundary point `(x0, t0)` the reconstruction is centred on.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Aperture {
    /// Height of the reconstruction point above the boundary (`y0 > 0`).
    pub y0: f64,
    /// Regularization shape parameter (`c > 0`).
    pub c: f64,
    /// Margin added to every slice half-width (`ε > 0`).
    pub epsilon: f64,
    /// Abscissa of the centre of the aperture.
    pub x0: f64,
    /// Time the reconstruction refers to.
    pub t0: f64,
}

impl Aperture {
    /// Creates an aperture centred at `(x0, t0) = (0, 0)`.
    pub fn new(y0: f64, c: f64, epsilon: f64) -> Result<Self> {
        let ap = Self { y0, c, epsilon, x0: 0.0, t0: 0.0 };
        ap.validate()?;
        Ok(ap)
    }

    /// Moves the centre to `(x0, t0)`.
    pub fn with_center(mut self, x0: f64, t0: f64) -> Self {
        self.x0 = x0;
        self.t0 = t0;
        self
    }

    /// Checks the positivity invariants.
    pub fn validate(&self) -> Result<()> {
        if !(self.y0 > 0.0) {
            return Err(Error::Domain(format!("aperture needs y0 > 0, got {}", self.y0)));
        }
        if !(self.c > 0.0) {
            return Err(Error::Domain(format!("aperture needs c > 0, got {}", self.c)));
        }
        if !(self.epsilon > 0.0) {
            return Err(Error::Domain(format!("aperture needs ε > 0, got {}", self.epsilon)));
        }
        Ok(())
    }

    /// The height coordinate `z(t) = √(y0² − (t − t0)²)`, clamped at zero.
    pub fn slice_height(&self, t: f64) -> Result<f64> {
        let dt = t - self.t0;
        if dt.abs() > self.y0 {
            return Err(Error::Domain(format!(
                "time {t} is outside the aperture window |t − {}| ≤ {}",
                self.t0, self.y0
            )));
        }
        Ok((self.y0 * self.y0 - dt * dt).max(0.0).sqrt())
    }

    /// Half-width of the slice of `U` at time `t`:
    /// `D(√(y0² − (t − t0)²)) + ε`. Exactly `ε` at the cone tips
    /// `|t − t0| = y0`.
    pub fn slice_halfwidth(&self, t: f64) -> Result<f64> {
        let z = self.slice_height(t)?;
        Ok(aperture_d(z, self.c)? + self.epsilon)
    }

    /// Whether `(x, t)` lies in `U` (boundary included).
    pub fn contains(&self, x: f64, t: f64) -> bool {
        match self.slice_halfwidth(t) {
            Ok(w) => (x - self.x0).abs() <= w,
            Err(_) => false,
        }
    }

    /// Half-width of the bounding rectangle: `D(y0) + ε`. Every point of `U`
    /// satisfies `|x − x0| ≤ rect_halfwidth()` and `|t − t0| ≤ y0`.
    pub fn rect_halfwidth(&self) -> f64 {
        aperture_d(self.y0, self.c).expect("validated parameters") + self.epsilon
    }
}
