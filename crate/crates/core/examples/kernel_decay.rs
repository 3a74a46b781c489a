//! Walk-on-spheres exits from the axis of a cylinder and the fitted axial
//! decay rate of harmonic measure against `√λ`.
//!
//! cargo run --release --example kernel_decay -- [walks] [seed]

use cylharm::mc::{decay_fit_records, wos_exit, DecayFitConfig, WalkConfig};
use cylharm::spectral::disk_lambda;
use cylharm::DomainSpec;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let walks: u64 = args.next().map_or(Ok(100_000), |s| s.parse())?;
    let seed: u64 = args.next().map_or(Ok(42), |s| s.parse())?;

    let domain = DomainSpec::unit_circular_cylinder(3);
    let cfg = WalkConfig::at_origin(3, walks, seed);
    let t = std::time::Instant::now();
    let out = wos_exit(&domain, &cfg)?;
    let mean_steps = out.records.iter().map(|r| r.steps as f64).sum::<f64>() / out.records.len() as f64;
    println!(
        "{} exits ({} discarded), mean {mean_steps:.1} steps, {:.2?}",
        out.records.len(),
        out.discarded,
        t.elapsed()
    );

    let fit = decay_fit_records(&out.records, disk_lambda(1.0), &DecayFitConfig::default())?;
    println!(
        "nu_hat = {:.4} ± {:.4}   sqrt(lambda) = {:.6}   relative error {:+.2}%",
        fit.nu_hat,
        fit.stderr,
        fit.reference_rate,
        100.0 * fit.relative_error
    );
    println!(
        "window [{}, {}] over {} grid points, curvature z = {:.2}",
        fit.fit_window.0, fit.fit_window.1, fit.fit_points, fit.curvature_z
    );
    for (k, s) in fit.survival.iter().step_by(10) {
        println!("  P(|y| > {:4.2}) = {s:.5}", f64::from(*k) * fit.dt);
    }
    Ok(())
}
