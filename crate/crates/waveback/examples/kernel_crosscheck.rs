//! Two independent evaluations of the same kernel.
//!
//! The closed form integrates `e^{F(σ)}` over the unit interval; the Fourier
//! representation integrates an oscillatory integral over the dual variable
//! against the exponential-average function `H`. They share no code path, so
//! their agreement — reported here point by point — validates both. The `H`
//! function itself is checked against the modified Bessel function through
//! `H(z) + H(−z) = I₀(z)`, with `I₀` from an independent power series.
//!
//! Run with `cargo run --example kernel_crosscheck`.

use waveback::kernel::{h_function, kernel_closed_form, kernel_fourier_oracle, KernelParams};
use waveback::quad::QuadratureSpec;
use waveback::transform::i0_series;
use waveback::Result;

fn main() -> Result<()> {
    let quad = QuadratureSpec::default();

    println!("kernel dual representation (y0 = 1, c = 1)");
    println!(
        "{:>6} {:>6} {:>6} {:>16} {:>16} {:>10}",
        "h", "x", "t", "closed form", "Fourier", "|diff|"
    );
    for &h in &[0.1, 0.03] {
        let params = KernelParams::new(1.0, 1.0, h)?;
        for &(x, t) in &[(0.0, 0.0), (0.5, 0.0), (1.0, 0.4), (0.25, 0.9), (1.5, 0.2)] {
            let cf = kernel_closed_form(x, t, &params, &quad)?;
            let fo = kernel_fourier_oracle(x, t, &params, None, &quad)?;
            println!("{h:>6} {x:>6} {t:>6} {cf:>16.9e} {fo:>16.9e} {:>10.2e}", (cf - fo).abs());
        }
    }

    println!();
    println!("Bessel identity H(z) + H(-z) = I0(z)");
    println!("{:>6} {:>18} {:>18} {:>10}", "z", "H(z)+H(-z)", "I0 series", "|defect|");
    for &z in &[0.0, 0.5, 1.0, 2.0, 5.0, 10.0] {
        let sum = h_function(z, &quad)? + h_function(-z, &quad)?;
        let i0 = i0_series(z);
        println!("{z:>6} {sum:>18.12} {i0:>18.12} {:>10.2e}", (sum - i0).abs());
    }

    println!();
    println!(
        "For a machine-checked version of this table over a full grid, run the\n\
         `kernel-check` command of the waveback binary; it writes a JSON verdict\n\
         and exits nonzero on disagreement."
    );
    Ok(())
}
