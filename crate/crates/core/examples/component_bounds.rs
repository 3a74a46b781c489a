//! Homogeneous parts of harmonic polynomials against the whole:
//! `max|v_k| / (k^{n/2} max|v|)` on the unit sphere.
//!
//! cargo run --release --example component_bounds -- [seed] [count]

use cylharm::corpus::harmonic_item;
use cylharm::series::{homog_component_bound_check, real_power_harmonic};
use cylharm::Polynomial;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let seed: u64 = args.next().map_or(Ok(1), |s| s.parse())?;
    let count: u64 = args.next().map_or(Ok(20), |s| s.parse())?;

    // Re((x1 + i x2)^k) is homogeneous: one ratio, k^{-3/2}
    let v = real_power_harmonic(3, 4);
    let r = homog_component_bound_check(&v, 1e-9)?;
    println!("Re((x1 + i x2)^4): ratios {:?}", r.ratios);

    let mut worst = (0.0, 0, 0);
    for i in 0..count {
        let v: Polynomial = harmonic_item(seed, i, 3, 12)?;
        let r = homog_component_bound_check(&v, 1e-9)?;
        if r.max_ratio > worst.0 {
            worst = (r.max_ratio, r.argmax, i);
        }
    }
    println!(
        "corpus seed {seed}, {count} polynomials: max ratio {:.4} at k = {} (item {})",
        worst.0, worst.1, worst.2
    );
    Ok(())
}
