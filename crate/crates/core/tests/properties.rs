use proptest::prelude::*;

use cylharm::poly::{rat, MultiIndex, Polynomial, Rational};
use cylharm::{homogeneous_decompose, solve_dirichlet_poly, DomainSpec};

fn arb_rational() -> impl Strategy<Value = Rational> {
    (-6i64..=6, 1i64..=4).prop_map(|(p, q)| rat(p, q))
}

fn arb_poly(dim: usize, max_deg: u32) -> impl Strategy<Value = Polynomial> {
    prop::collection::vec((prop::collection::vec(0..=max_deg, dim), arb_rational()), 0..6).prop_map(
        move |terms| {
            let mut p = Polynomial::zero(dim);
            for (e, c) in terms {
                if e.iter().sum::<u32>() <= max_deg {
                    p.add_term(MultiIndex::new(&e), c);
                }
            }
            p
        },
    )
}

fn arb_domain() -> impl Strategy<Value = DomainSpec> {
    (prop::bool::ANY, prop::collection::vec((1i64..=9, 1i64..=9), 3)).prop_map(|(cyl, axes)| {
        let a: Vec<Rational> = axes.into_iter().map(|(p, q)| rat(p, q)).collect();
        if cyl {
            DomainSpec::cylinder(3, a[..2].to_vec()).unwrap()
        } else {
            DomainSpec::ellipsoid(3, a).unwrap()
        }
    })
}

fn gradient_dot(f: &Polynomial, g: &Polynomial) -> Polynomial {
    (0..f.dim()).fold(Polynomial::zero(f.dim()), |acc, i| {
        &acc + &(&f.partial(i) * &g.partial(i))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms(f in arb_poly(3, 3), g in arb_poly(3, 3), h in arb_poly(3, 3)) {
        prop_assert_eq!(&f + &g, &g + &f);
        prop_assert_eq!(&f * &g, &g * &f);
        prop_assert_eq!(&(&f * &g) * &h, &f * &(&g * &h));
        prop_assert_eq!(&f * &(&g + &h), &(&f * &g) + &(&f * &h));
        prop_assert!((&f - &f).is_zero());
    }

    #[test]
    fn leibniz_rules(f in arb_poly(3, 3), g in arb_poly(3, 3), i in 0usize..3) {
        prop_assert_eq!((&f * &g).partial(i), &(&f.partial(i) * &g) + &(&f * &g.partial(i)));
        let two = Polynomial::constant(3, rat(2, 1));
        let rhs = &(&(&f.laplacian() * &g) + &(&f * &g.laplacian())) + &(&two * &gradient_dot(&f, &g));
        prop_assert_eq!((&f * &g).laplacian(), rhs);
    }

    #[test]
    fn evaluation_is_a_homomorphism(f in arb_poly(3, 3), g in arb_poly(3, 3), x in prop::collection::vec(arb_rational(), 3)) {
        let fg = (&f * &g).evaluate(&x).unwrap();
        prop_assert_eq!(fg, f.evaluate(&x).unwrap() * g.evaluate(&x).unwrap());
    }

    #[test]
    fn decomposition_recomposes(f in arb_poly(4, 5)) {
        let d = homogeneous_decompose(&f);
        prop_assert_eq!(d.recompose(), f);
    }

    #[test]
    fn solver_is_linear(d in arb_domain(), f in arb_poly(3, 4), g in arb_poly(3, 4), a in arb_rational(), b in arb_rational()) {
        let (uf, _) = solve_dirichlet_poly(&d, &f).unwrap();
        let (ug, _) = solve_dirichlet_poly(&d, &g).unwrap();
        let comb = &f.scale(&a) + &g.scale(&b);
        let (u, cert) = solve_dirichlet_poly(&d, &comb).unwrap();
        prop_assert_eq!(&u, &(&uf.scale(&a) + &ug.scale(&b)));
        prop_assert!(cert.holds(&d, &comb, &u));
    }

    #[test]
    fn solver_is_idempotent(d in arb_domain(), f in arb_poly(3, 4)) {
        let (u, _) = solve_dirichlet_poly(&d, &f).unwrap();
        let (uu, cert) = solve_dirichlet_poly(&d, &u).unwrap();
        prop_assert_eq!(&uu, &u);
        prop_assert!(cert.boundary_quotient.is_zero());
    }

    #[test]
    fn solution_degree_never_grows(d in arb_domain(), f in arb_poly(3, 5)) {
        let (u, _) = solve_dirichlet_poly(&d, &f).unwrap();
        prop_assert!(u.degree() <= f.degree());
    }
}
