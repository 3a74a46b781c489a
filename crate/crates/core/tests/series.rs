use cylharm::poly::rat;
use cylharm::series::{
    convergence_diagnostic, root_test, series_solve, DiagnosticConfig, HomogeneousSeries, Radius,
};
use cylharm::DomainSpec;

#[test]
fn geometric_radii_at_forty() {
    for (c, r) in [(rat(2, 1), 0.5), (rat(1, 1), 1.0), (rat(1, 2), 2.0)] {
        let data = HomogeneousSeries::geom(3, c, 40).unwrap();
        let est = root_test(data.components(), 40, &DiagnosticConfig::default()).radius_estimate;
        let Radius::Finite(got) = est else {
            panic!("R = {r}: estimated infinite")
        };
        assert!(((got - r) / r).abs() < 0.05, "R = {r}: {got}");
    }
}

#[test]
fn regrouped_total_matches_solution_of_sum() {
    let d: DomainSpec = "cylinder:n=3:axes2=4,1".parse().unwrap();
    let data = HomogeneousSeries::powfact2(3, rat(1, 2), 1, 10).unwrap();
    let sol = series_solve(&d, &data).unwrap();
    assert!(sol.certificates_hold(&data));
    let (u, _) = cylharm::solve_dirichlet_poly(&d, &data.sum()).unwrap();
    assert_eq!(sol.total(), u);
    for (j, p) in &sol.components {
        assert!(p.is_homogeneous() && p.degree().finite() == Some(*j));
    }
}

#[test]
fn entire_data_looks_entire() {
    let d = DomainSpec::unit_circular_cylinder(3);
    let data = HomogeneousSeries::powfact2(3, rat(1, 1), 0, 20).unwrap();
    let sol = series_solve(&d, &data).unwrap();
    let diag = convergence_diagnostic(&sol, &DiagnosticConfig::default());
    assert!(diag.entire() && diag.non_increasing);
}
