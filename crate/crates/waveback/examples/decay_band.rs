//! Kernel decay on the band between the aperture and the data support.
//!
//! The reconstruction only integrates over the aperture `|x| ≤ D(z) + ε`,
//! yet the boundary data may extend out to `|x| = d`. The method is honest
//! because the kernel is exponentially small on the neglected band: on
//! `D(z) + ε ≤ |x| ≤ d` it obeys `|K_h| ≤ C·h^{−1/2}·e^{−aε²/h}` with the
//! explicit decay constant `a = c / (4(c² + d²))`. This example measures
//! the normalized envelope `max |K_h| · √h · e^{aε²/h}` over the band for
//! a ladder of `h` values; the bound says it stays below a fixed constant,
//! and the table shows it does.
//!
//! Run with `cargo run --release --example decay_band`.

use waveback::geometry::aperture_d;
use waveback::kernel::{decay_constant_a, decay_diagnostics, kernel_closed_form, KernelParams};
use waveback::quad::QuadratureSpec;
use waveback::Result;

fn main() -> Result<()> {
    let (y0, c, epsilon, d) = (1.0, 1.0, 0.3, 2.0);
    let a = decay_constant_a(c, d);
    println!("band: D(z) + {epsilon} <= |x| <= {d},  decay constant a = c/(4(c^2+d^2)) = {a}");
    println!();

    let quad = QuadratureSpec::default();
    println!(
        "{:>7} {:>13} {:>13} {:>13} {:>12}",
        "h", "max |K|", "bound exp", "worst Re F", "envelope"
    );
    for &h in &[0.2, 0.1, 0.05, 0.025] {
        let params = KernelParams::new(y0, c, h)?;
        let mut max_abs: f64 = 0.0;
        let mut worst_re_f = f64::NEG_INFINITY;
        for i in 0..21 {
            let t = -y0 + 2.0 * y0 * i as f64 / 20.0;
            let z = params.slice_height(t)?;
            let inner = aperture_d(z, c)? + epsilon;
            for j in 0..24 {
                let x = inner + (d - inner) * j as f64 / 23.0;
                max_abs = max_abs.max(kernel_closed_form(x, t, &params, &quad)?.abs());
                let diag = decay_diagnostics(x, t, &params, epsilon, d)?;
                worst_re_f = worst_re_f.max(diag.re_f_max_over_sigma);
            }
        }
        // The bound reads |K| ≤ C·h^{−1/2}·e^{−aε²/h}; the envelope is the
        // measured C, which must not grow as h shrinks.
        let bound_exp = -a * epsilon * epsilon / h;
        let envelope = max_abs * h.sqrt() * (a * epsilon * epsilon / h).exp();
        println!("{h:>7} {max_abs:>13.4e} {bound_exp:>13.4} {worst_re_f:>13.4} {envelope:>12.4}");
    }

    println!();
    println!(
        "The envelope column is the measured constant C of the bound, and it\n\
         does not grow as h shrinks — that uniformity is the whole claim.\n\
         (Raw max |K| may still creep up at moderate h: the h^{{-1/2}} prefactor\n\
         beats the exponential until h drops below a*eps^2 = {:.4}.) The\n\
         worst Re F column shows the sharper pointwise exponent, always more\n\
         negative than the bound's -a*eps^2/h. The `decay` command writes this\n\
         survey to CSV for plotting.",
        a * epsilon * epsilon
    );
    Ok(())
}
