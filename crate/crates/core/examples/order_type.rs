//! Order and type from the decay of the homogeneous norms `M_m`, fed either
//! a coefficient sequence or actual data components.
//!
//! cargo run --example order_type

use std::collections::BTreeMap;

use cylharm::poly::rat;
use cylharm::series::{order_type_estimate, order_type_from_log_norms, HomogeneousSeries};

/// Name, `m ↦ ln M_m`, exact order, exact type.
type Case = (&'static str, fn(u32) -> f64, f64, f64);

fn ln_factorial(m: u32) -> f64 {
    (2..=m).map(|k| f64::from(k).ln()).sum()
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let cases: [Case; 3] = [
        ("1/(m!)^2", |m| -2.0 * ln_factorial(m), 0.5, 2.0),
        (
            "m^(-2m)",
            |m| -2.0 * f64::from(m) * f64::from(m).ln(),
            0.5,
            2.0 / std::f64::consts::E,
        ),
        ("1/m!", |m| -ln_factorial(m), 1.0, 1.0),
    ];
    for (name, ln_mm, rho, tau) in cases {
        let seq: BTreeMap<u32, f64> = (1..=200).map(|m| (m, ln_mm(m))).collect();
        let est = order_type_from_log_norms(&seq)?;
        println!(
            "M_m = {name:<9} rho_hat = {:.4} (exact {rho})  type_hat = {:.4} (exact {tau:.4})  window {:?}",
            est.rho_hat, est.type_hat, est.window
        );
    }

    let data = HomogeneousSeries::powfact2(3, rat(1, 1), 0, 40)?;
    let est = order_type_estimate(&data, 1e-9)?;
    println!(
        "powfact2 data, M = 40: rho_hat = {:.4}, type_hat = {:.4}",
        est.rho_hat, est.type_hat
    );
    match order_type_estimate(&HomogeneousSeries::geom(3, rat(1, 2), 40)?, 1e-9) {
        Ok(e) => println!("geometric data: rho_hat = {}", e.rho_hat),
        Err(e) => println!("geometric data: {e}"),
    }
    Ok(())
}
