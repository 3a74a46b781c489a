//! Principal Dirichlet eigenvalue of disk and ellipse bases, with a grid
//! refinement study against the Bessel closed form.
//!
//! cargo run --release --example spectral_eigen -- [a b]

use cylharm::spectral::{disk_lambda, fd_dirichlet_eigen, BaseDomain};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args: Vec<f64> = std::env::args()
        .skip(1)
        .map(|s| s.parse())
        .collect::<Result<_, _>>()?;
    let exact = disk_lambda(1.0);
    println!("unit disk, closed form  lambda = {exact:.12}");
    let mut prev: Option<f64> = None;
    for n in [65, 129, 257, 513] {
        let eig = fd_dirichlet_eigen(&BaseDomain::disk(1.0), n)?;
        let err = (eig.lambda - exact).abs();
        let ratio = prev.map(|p| format!("{:.2}", p / err)).unwrap_or_default();
        println!(
            "N = {n:4}  lambda = {:.10}  error = {err:.3e}  ratio = {ratio:>5}  cg = {}",
            eig.lambda, eig.cg_iterations
        );
        prev = Some(err);
    }

    let (a, b) = match args.as_slice() {
        [a, b] => (*a, *b),
        _ => (2.0, 1.0),
    };
    let eig = fd_dirichlet_eigen(&BaseDomain::ellipse(a, b), 257)?;
    println!(
        "ellipse ({a}, {b}), N = 257: lambda = {:.8}, bracket [{:.8}, {:.8}]",
        eig.lambda,
        disk_lambda(a.max(b)),
        disk_lambda(a.min(b))
    );
    Ok(())
}
