//! Gauss–Legendre quadrature and the shared refinement policy.
//!
//! Every integral in this crate — the kernel's inner `s`-integral, the
//! oscillatory Fourier `k`-integral, and the two-dimensional aperture
//! integral — is evaluated with Gauss–Legendre rules. Rules are generated by
//! Newton iteration on the Legendre recurrence, cached per node count, and
//! built *symmetrically*: nodes come in exact `±` pairs with equal weights,
//! so an odd integrand cancels to the bit. Several reconstruction properties
//! (notably the time-evenization identity) rely on that exactness.
//!
//! Accuracy is controlled by [`QuadratureSpec`]: a starting node count per
//! integration direction, a maximum number of doubling refinements, and a
//! relative tolerance two successive levels must meet. The refinement loop is
//! policy, not mathematics: callers decide what "converged" means for their
//! data (analytic traces support tight tolerances; traces interpolated from a
//! grid are only as faithful as the grid and deserve looser ones).

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A Gauss–Legendre rule on the reference interval `[-1, 1]`.
#[derive(Debug, Clone)]
pub struct GaussLegendre {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl GaussLegendre {
    /// Computes the `n`-point rule by Newton iteration on the Legendre
    /// polynomial `P_n`, seeded with the Chebyshev-like estimate
    /// `cos(π(i + 3/4)/(n + 1/2))`. Nodes are computed for one half of the
    /// interval and mirrored, so the rule is symmetric to the last bit.
    pub fn new(n: usize) -> Self {
        assert!(n >= 1, "a quadrature rule needs at least one node");
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        for i in 0..n.div_ceil(2) {
            let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (p, d) = legendre_with_derivative(n, x);
                dp = d;
                let step = p / d;
                x -= step;
                if step.abs() <= 1e-16 * x.abs().max(1.0) {
                    // One polishing step after convergence.
                    let (p2, d2) = legendre_with_derivative(n, x);
                    dp = d2;
                    x -= p2 / d2;
                    break;
                }
            }
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            // `x` is in (0, 1]; mirror it onto the negative half.
            nodes[i] = -x;
            weights[i] = w;
            nodes[n - 1 - i] = x;
            weights[n - 1 - i] = w;
        }
        if n % 2 == 1 {
            nodes[n / 2] = 0.0;
            let (_, d) = legendre_with_derivative(n, 0.0);
            weights[n / 2] = 2.0 / (d * d);
        }
        Self { nodes, weights }
    }

    /// Number of nodes.
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    /// True if the rule is empty (never, by construction).
    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Reference nodes on `[-1, 1]`, ascending.
    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    /// Reference weights, matching [`Self::nodes`].
    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Integrates `f` over `[a, b]`.
    pub fn integrate<F: FnMut(f64) -> f64>(&self, a: f64, b: f64, mut f: F) -> f64 {
        let mid = 0.5 * (a + b);
        let half = 0.5 * (b - a);
        let mut sum = 0.0;
        for (&x, &w) in self.nodes.iter().zip(&self.weights) {
            sum += w * f(mid + half * x);
        }
        half * sum
    }

    /// Nodes and weights mapped to `[a, b]`, in ascending node order.
    pub fn mapped(&self, a: f64, b: f64) -> impl Iterator<Item = (f64, f64)> + '_ {
        let mid = 0.5 * (a + b);
        let half = 0.5 * (b - a);
        self.nodes.iter().zip(&self.weights).map(move |(&x, &w)| (mid + half * x, half * w))
    }
}

/// Legendre polynomial `P_n(x)` and derivative `P_n'(x)` via the three-term
/// recurrence.
fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p_prev = 1.0;
    let mut p = x;
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let kf = k as f64;
        let p_next = ((2.0 * kf - 1.0) * x * p - (kf - 1.0) * p_prev) / kf;
        p_prev = p;
        p = p_next;
    }
    let d = n as f64 * (p_prev - x * p) / (1.0 - x * x);
    (p, d)
}

/// Process-wide cache of Gauss–Legendre rules, keyed by node count. Kernel
/// evaluation requests the same handful of counts millions of times; Newton
/// solves are cheap but not free.
pub fn gauss_legendre(n: usize) -> Arc<GaussLegendre> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<GaussLegendre>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(rule) = cache.lock().unwrap().get(&n) {
        return rule.clone();
    }
    let rule = Arc::new(GaussLegendre::new(n));
    cache.lock().unwrap().entry(n).or_insert(rule).clone()
}

/// Node counts, refinement depth, and tolerance for the crate's integrals.
///
/// `nodes_t`, `nodes_x`, `nodes_s` are the *starting* counts for the outer
/// time integral, the per-slice abscissa integral, and the kernel's inner
/// `s`-integral. A refinement level doubles all of them at once (the
/// `s`-count saturates at 1024 — that integrand is entire, so its Gauss error
/// is already far below every other term by then), and refinement stops when
/// two successive levels agree to `rel_tol` or `refinement` doublings have
/// been spent.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct QuadratureSpec {
    /// Starting node count for the outer (time) direction.
    pub nodes_t: usize,
    /// Starting node count for the inner (abscissa) direction.
    pub nodes_x: usize,
    /// Starting node count for the kernel's `s`-integral.
    pub nodes_s: usize,
    /// Maximum number of doubling refinements (0 disables refinement).
    pub refinement: u32,
    /// Relative agreement two successive levels must reach.
    pub rel_tol: f64,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self { nodes_t: 64, nodes_x: 64, nodes_s: 64, refinement: 4, rel_tol: 1e-9 }
    }
}

impl QuadratureSpec {
    /// Ceiling for the `s`-node count under refinement.
    pub const NODES_S_CAP: usize = 1024;

    /// Validates the structural invariants: all counts at least 4 and a
    /// positive tolerance.
    pub fn validate(&self) -> Result<()> {
        if self.nodes_t < 4 || self.nodes_x < 4 || self.nodes_s < 4 {
            return Err(Error::Config(format!(
                "quadrature node counts must be at least 4 (got t={}, x={}, s={})",
                self.nodes_t, self.nodes_x, self.nodes_s
            )));
        }
        if !(self.rel_tol > 0.0) {
            return Err(Error::Config(format!(
                "quadrature rel_tol must be positive (got {})",
                self.rel_tol
            )));
        }
        Ok(())
    }

    /// Node counts `(t, x, s)` at refinement level `level`.
    pub fn counts_at(&self, level: u32) -> (usize, usize, usize) {
        let f = 1usize << level.min(30);
        (self.nodes_t * f, self.nodes_x * f, (self.nodes_s * f).min(Self::NODES_S_CAP))
    }
}

/// Outcome of a refinement loop: the last value, how many levels were used,
/// and whether two successive levels met the tolerance.
#[derive(Debug, Clone, Copy)]
pub struct Refined {
    /// Value at the finest level evaluated.
    pub value: f64,
    /// Levels actually evaluated (1 = no refinement was needed or allowed).
    pub levels_used: u32,
    /// True when the last two levels agreed to tolerance.
    pub converged: bool,
}

/// Runs the shared refinement policy: evaluates `eval(level)` for
/// `level = 0, 1, …` until two successive values agree to
/// `rel_tol · (1 + |value|) + abs_floor` or the budget is exhausted.
///
/// `abs_floor` is the caller's estimate of the evaluation noise floor —
/// for exponentially large integrands, rounding noise scales with
/// `exp(max Re F)`, and demanding agreement below that floor would loop
/// forever on digits that do not exist.
pub fn refine<E>(spec: &QuadratureSpec, abs_floor: f64, mut eval: E) -> Result<Refined>
where
    E: FnMut(u32) -> Result<f64>,
{
    let mut prev = eval(0)?;
    let mut levels_used = 1;
    for level in 1..=spec.refinement {
        let value = eval(level)?;
        levels_used += 1;
        if (value - prev).abs() <= spec.rel_tol * (1.0 + value.abs()) + abs_floor {
            return Ok(Refined { value, levels_used, converged: true });
        }
        prev = value;
    }
    Ok(Refined { value: prev, levels_used, converged: spec.refinement == 0 })
}
