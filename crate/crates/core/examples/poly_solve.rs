//! Exact Dirichlet solves on cylinders and ellipsoids, with certificates.
//!
//! cargo run --example poly_solve

use cylharm::corpus::dirichlet_item;
use cylharm::poly::parse_polynomial;
use cylharm::{solve_dirichlet_poly, verify_solution, DomainSpec};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let ucyl = DomainSpec::unit_circular_cylinder(3);
    for text in [
        "dim 3\n1 2 0 0\n",
        "dim 3\n1 2 0 0\n1 0 2 0\n",
        "dim 3\n1 0 0 4\n-3 1 1 1\n",
    ] {
        let f = parse_polynomial(text)?;
        let (u, cert) = solve_dirichlet_poly(&ucyl, &f)?;
        println!("{ucyl}\n  f = {f}\n  u = {u}\n  q = {}", cert.boundary_quotient);
        println!("  certificate holds: {}", cert.holds(&ucyl, &f, &u));
    }

    let ell: DomainSpec = "ellipsoid:n=3:axes2=4,1,9/4".parse()?;
    let f = parse_polynomial("dim 3\n1 1 1 1\n2/3 3 0 0\n")?;
    let (u, _) = solve_dirichlet_poly(&ell, &f)?;
    println!("{ell}\n  f = {f}\n  u = {u}");
    println!("  independent check: {}", verify_solution(&ell, &f, &u).is_ok());

    // a random item from the seeded corpus
    let (domain, f) = dirichlet_item(1, 0, 4, 6);
    let t = std::time::Instant::now();
    let (u, cert) = solve_dirichlet_poly(&domain, &f)?;
    println!(
        "{domain}: degree {} data, {} solution terms, holds {}, {:.1?}",
        f.degree(),
        u.len(),
        cert.holds(&domain, &f, &u),
        t.elapsed()
    );
    println!("  digest {}", cert.digest());
    Ok(())
}
