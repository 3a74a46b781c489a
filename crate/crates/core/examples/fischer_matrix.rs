//! The Fischer operator `q ↦ Δ(p q)` as an exact matrix, its block
//! structure and the nonsingularity of its homogeneous blocks.
//!
//! cargo run --example fischer_matrix

use cylharm::corpus::random_domain;
use cylharm::fischer::homogeneous_block_nonsingular;
use cylharm::mc::walk_rng;
use cylharm::poly::format_rational;
use cylharm::{fischer_matrix, DomainKind, DomainSpec};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let domain = DomainSpec::unit_circular_cylinder(3);
    let fm = fischer_matrix(&domain, 2)?;
    println!("{domain}, degree ≤ 2: {0}×{0}", fm.size());
    let labels: Vec<String> = fm.basis.iter().map(|e| format!("{e:?}")).collect();
    for (i, row) in fm.to_dense().iter().enumerate() {
        let cells: Vec<String> = row.iter().map(|c| format!("{:>4}", format_rational(c))).collect();
        println!("  {:>10} {}", labels[i], cells.join(" "));
    }
    println!("block upper-triangular by degree: {}", fm.check_block_structure());

    let mut rng = walk_rng(7, 0);
    for kind in [DomainKind::Cylinder, DomainKind::Ellipsoid] {
        for _ in 0..3 {
            let d = random_domain(&mut rng, kind, 3);
            let ok = (0..=8).all(|k| homogeneous_block_nonsingular(&d, k));
            println!("{d}: blocks 0..=8 nonsingular: {ok}");
        }
    }
    Ok(())
}
