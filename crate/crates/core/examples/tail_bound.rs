//! The explicit tail majorant in the log domain and its j-th roots.
//!
//! cargo run --example tail_bound -- [delta1]

use std::collections::BTreeMap;

use cylharm::series::{jth_root_sequence, majorant_sequence, tail_bound, TailBoundParams};
use cylharm::spectral::disk_lambda;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let delta1: f64 = std::env::args().nth(1).map_or(Ok(0.25), |s| s.parse())?;
    let params = TailBoundParams::new(3, 1.0, disk_lambda(1.0), delta1, 0.25)?;
    let seq = jth_root_sequence(&majorant_sequence(&params, 2..=1000));
    println!(
        "delta1 = {delta1}: argmax j = {}, decreasing after it: {}",
        seq.argmax, seq.decreasing_after_argmax
    );
    for j in [2, 10, 50, 100, 200, 500, 1000] {
        println!("  j = {j:<4} root = {:.5}", seq.roots[&j]);
    }
    match seq.first_below(0.05) {
        Some(j) => println!("first j with root below 0.05: {j}"),
        None => println!("root stays above 0.05 up to j = 1000"),
    }

    // audit against data with M_m = 1/(m!)^2
    let ln_m: BTreeMap<u32, f64> = (0..=60u32)
        .map(|m| (m, -2.0 * (2..=m).map(|k| f64::from(k).ln()).sum::<f64>()))
        .collect();
    let b = tail_bound(&params, &ln_m, 20)?;
    println!(
        "j = 20: ln bound {:.3}, {} audit terms, factorial estimate dominates: {}",
        b.ln_value,
        b.audit.len(),
        b.stirling_dominates
    );
    Ok(())
}
