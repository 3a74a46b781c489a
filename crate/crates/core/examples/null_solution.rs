//! The null solution `ψ(x′) e^{√λ x_n}` on the unit-disk cylinder: its
//! discrete Laplacian shrinks at second order, and it round-trips through
//! the grid file format.
//!
//! cargo run --release --example null_solution

use cylharm::spectral::{fd_dirichlet_eigen, null_solution_sample, read_grid, write_grid, BaseDomain};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let base = BaseDomain::disk(1.0);
    let mut prev: Option<f64> = None;
    for n in [65, 129, 257] {
        let eig = fd_dirichlet_eigen(&base, n)?;
        let s = null_solution_sample(&base, &eig, 1.0)?;
        let order = prev.map(|p| (p / s.max_residual).log2());
        println!(
            "N = {n:<3} lambda = {:.6}  max residual = {:.3e}  order {}",
            s.lambda,
            s.max_residual,
            order.map_or("-".into(), |o| format!("{o:.2}"))
        );
        prev = Some(s.max_residual);
        if n == 65 {
            let mut buf = Vec::new();
            write_grid(&mut buf, &s.to_grid_file())?;
            let back = read_grid(&buf[..])?;
            println!(
                "  grid file {} bytes, round trip exact: {}",
                buf.len(),
                back == s.to_grid_file()
            );
        }
    }
    Ok(())
}
