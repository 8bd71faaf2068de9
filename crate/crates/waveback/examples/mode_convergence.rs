//! Convergence of the regularized reconstruction on an exact Dirichlet mode.
//!
//! The boundary data of the separated solution
//! `u = sin(l y) · cos(k x) · cos(ω t)` (with `ω² = k² + l²`) is known in
//! closed form, and so is the interior value `u(0, y0, 0) = sin(l y0)`. The
//! h-sweep below shows the regularization error decreasing essentially
//! linearly in `h` until it meets the double-precision wall — the point
//! where the kernel's internal exponent `y0²/(4hc)` has eaten all 52
//! mantissa bits.
//!
//! Run with `cargo run --release --example mode_convergence`.

use waveback::geometry::Aperture;
use waveback::quad::QuadratureSpec;
use waveback::reconstruct::h_sweep;
use waveback::synthetic::{BoundaryTrace, Mode, Phase};
use waveback::Result;

fn main() -> Result<()> {
    let mode = Mode::new(1.0, 0.5, 1.0, Phase::Cos, Phase::Cos)?;
    let target = mode.interior_value(0.0, 1.0, 0.0);
    println!("mode: A = 1, k = 0.5, l = 1  =>  u(0, 1, 0) = sin(1) = {target:.15}");

    let ap = Aperture::new(1.0, 1.0, 0.5)?;
    let report = h_sweep(
        &BoundaryTrace::Analytic(mode.boundary_trace()),
        &ap,
        &[0.2, 0.1, 0.05, 0.025, 0.0125, 0.00625],
        &QuadratureSpec::default(),
        Some(target),
    )?;

    println!();
    println!(
        "{:>9} {:>20} {:>12} {:>10} {:>8} {:>24}",
        "h", "estimate", "abs error", "exponent", "levels", "status"
    );
    for e in &report.entries {
        println!(
            "{:>9} {:>20.15} {:>12.3e} {:>10.1} {:>8} {:>24}",
            e.h,
            e.estimate.unwrap_or(f64::NAN),
            e.abs_error.unwrap_or(f64::NAN),
            e.max_exponent,
            e.levels_used,
            format!("{:?}", e.status),
        );
    }

    println!();
    println!(
        "The error shrinks by roughly the h-ratio per step until the kernel\n\
         exponent (fourth column) approaches ln(1/eps_f64) ~ 36: at h = 0.00625\n\
         the exponent is 40, the integrand cancels through 17 decimal digits,\n\
         and the printed estimate is dominated by rounding noise — the sweep\n\
         reports it faithfully rather than hiding it. Stable deep sweeps need\n\
         larger c (see the forward-solver pipeline example)."
    );
    Ok(())
}
