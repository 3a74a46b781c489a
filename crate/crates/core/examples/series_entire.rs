//! Entire data of order 1/2 solved degree by degree on the unit cylinder:
//! the j-th roots of the solution components shrink with j.
//!
//! cargo run --release --example series_entire

use cylharm::poly::rat;
use cylharm::series::{convergence_diagnostic, series_solve, DiagnosticConfig, HomogeneousSeries};
use cylharm::DomainSpec;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let domain = DomainSpec::unit_circular_cylinder(3);
    for m in [16, 24, 32] {
        let data = HomogeneousSeries::powfact2(3, rat(1, 1), 0, m)?;
        let t = std::time::Instant::now();
        let sol = series_solve(&domain, &data)?;
        let diag = convergence_diagnostic(&sol, &DiagnosticConfig::default());
        println!(
            "M = {m}: certificates {}, window {:?}, non-increasing {}, r_M = {:.5}, radius {}, {:.2?}",
            sol.certificates_hold(&data),
            diag.window,
            diag.non_increasing,
            diag.last().unwrap_or(0.0),
            diag.radius_estimate,
            t.elapsed()
        );
        if m == 32 {
            for (j, r) in diag.r.iter().step_by(4) {
                println!("  r_{j:<2} = {r:.5}");
            }
        }
    }
    Ok(())
}
