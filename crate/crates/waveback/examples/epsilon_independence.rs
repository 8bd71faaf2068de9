//! The aperture margin ε does not bias the limit.
//!
//! The margin widens every time-slice of the integration region beyond the
//! theoretical half-width `D(√(y0² − t²))`, so a larger ε means strictly
//! more boundary data enters the integral. The kernel decays like
//! `e^{−a·(x − D)²/h}` outside the core region, so the extra strip
//! contributes less and less as `h → 0`: two reconstructions with very
//! different margins must agree in the limit. This example runs the same
//! sweep with ε = 0.3 and ε = 0.6 and prints the gap between them.
//!
//! Run with `cargo run --release --example epsilon_independence`.

use waveback::geometry::Aperture;
use waveback::quad::QuadratureSpec;
use waveback::reconstruct::h_sweep;
use waveback::synthetic::{BoundaryTrace, Mode, Phase};
use waveback::Result;

fn main() -> Result<()> {
    let mode = Mode::new(1.0, 0.5, 1.0, Phase::Cos, Phase::Cos)?;
    let target = mode.interior_value(0.0, 1.0, 0.0);
    let trace = BoundaryTrace::Analytic(mode.boundary_trace());
    let hs = [0.2, 0.1, 0.05, 0.025];
    let quad = QuadratureSpec::default();

    let narrow = h_sweep(&trace, &Aperture::new(1.0, 1.0, 0.3)?, &hs, &quad, Some(target))?;
    let wide = h_sweep(&trace, &Aperture::new(1.0, 1.0, 0.6)?, &hs, &quad, Some(target))?;

    println!("target u(0, 1, 0) = {target:.15}");
    println!();
    println!(
        "{:>7} {:>20} {:>20} {:>12} {:>12}",
        "h", "estimate (eps=0.3)", "estimate (eps=0.6)", "|gap|", "err (0.3)"
    );
    for (a, b) in narrow.entries.iter().zip(&wide.entries) {
        let ea = a.estimate.unwrap_or(f64::NAN);
        let eb = b.estimate.unwrap_or(f64::NAN);
        println!(
            "{:>7} {:>20.15} {:>20.15} {:>12.3e} {:>12.3e}",
            a.h,
            ea,
            eb,
            (ea - eb).abs(),
            a.abs_error.unwrap_or(f64::NAN),
        );
    }

    println!();
    println!(
        "The gap column shrinks with h: the reconstruction forgets how much\n\
         margin it was given, which is what makes ε a safe knob — generous\n\
         margins only cost quadrature nodes, never accuracy in the limit."
    );
    Ok(())
}
