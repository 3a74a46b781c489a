//! Seeded random data: polynomials, axis configurations and harmonic corpora.
//!
//! Item `i` of a corpus with seed `s` is drawn from ChaCha8 key `s`, stream
//! `i`, so corpora with different seeds are independent and any single item
//! can be regenerated on its own.

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::fischer::{solve_dirichlet_poly, DomainKind, DomainSpec, SolveError};
use crate::mc::walk_rng;
use crate::poly::{MultiIndex, Polynomial, Rational};

/// `p/q` with `p ∈ ±[1, 9]`, `q ∈ [1, 9]`.
pub fn random_rational(rng: &mut ChaCha8Rng) -> Rational {
    let p: i64 = rng.random_range(1..=9);
    let q: i64 = rng.random_range(1..=9);
    let sign = if rng.random::<bool>() { 1 } else { -1 };
    Rational::new((sign * p).into(), q.into())
}

/// Positive `p/q` with `p, q ∈ [1, 9]`.
pub fn random_axis_squared(rng: &mut ChaCha8Rng) -> Rational {
    Rational::new(
        rng.random_range(1i64..=9).into(),
        rng.random_range(1i64..=9).into(),
    )
}

fn random_exponents(rng: &mut ChaCha8Rng, dim: usize, degree: u32) -> MultiIndex {
    let mut e = vec![0u32; dim];
    for _ in 0..degree {
        e[rng.random_range(0..dim)] += 1;
    }
    MultiIndex::new(&e)
}

/// `terms` random terms of degree at most `degree`, the first of degree exactly `degree`.
pub fn random_polynomial(rng: &mut ChaCha8Rng, dim: usize, degree: u32, terms: usize) -> Polynomial {
    let mut p = Polynomial::zero(dim);
    while p.degree().finite() != Some(degree) {
        p = Polynomial::zero(dim);
        for t in 0..terms.max(1) {
            let d = if t == 0 {
                degree
            } else {
                rng.random_range(0..=degree)
            };
            p.add_term(random_exponents(rng, dim, d), random_rational(rng));
        }
    }
    p
}

/// A random cylinder or ellipsoid in `dim` variables.
pub fn random_domain(rng: &mut ChaCha8Rng, kind: DomainKind, dim: usize) -> DomainSpec {
    let k = match kind {
        DomainKind::Cylinder => dim - 1,
        DomainKind::Ellipsoid => dim,
    };
    let axes = (0..k).map(|_| random_axis_squared(rng)).collect();
    DomainSpec::new(kind, dim, axes).expect("positive axes")
}

/// Item `index` of the Dirichlet corpus with this seed: a random cylinder in
/// `dim` variables and data of degree in `1..=max_degree`.
pub fn dirichlet_item(seed: u64, index: u64, dim: usize, max_degree: u32) -> (DomainSpec, Polynomial) {
    let mut rng = walk_rng(seed, index);
    let domain = random_domain(&mut rng, DomainKind::Cylinder, dim);
    let degree = rng.random_range(1..=max_degree);
    let terms = rng.random_range(1..=8);
    let f = random_polynomial(&mut rng, dim, degree, terms);
    (domain, f)
}

/// Item `index` of the harmonic corpus: the solution of random data of degree
/// in `1..=max_degree` on a random ellipsoid, which is a harmonic polynomial
/// of the same degree or lower. Constant solutions are redrawn.
pub fn harmonic_item(seed: u64, index: u64, dim: usize, max_degree: u32) -> Result<Polynomial, SolveError> {
    let mut rng = walk_rng(seed, index);
    loop {
        let domain = random_domain(&mut rng, DomainKind::Ellipsoid, dim);
        let degree = rng.random_range(1..=max_degree);
        let terms = rng.random_range(2..=8);
        let f = random_polynomial(&mut rng, dim, degree, terms);
        let (u, _) = solve_dirichlet_poly(&domain, &f)?;
        if u.degree().finite().is_some_and(|d| d > 0) {
            return Ok(u);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn items_are_reproducible() {
        assert_eq!(dirichlet_item(3, 7, 3, 6), dirichlet_item(3, 7, 3, 6));
        assert_ne!(dirichlet_item(3, 7, 3, 6), dirichlet_item(4, 7, 3, 6));
        let (d, f) = dirichlet_item(1, 0, 4, 10);
        assert_eq!((d.dim(), f.dim()), (4, 4));
        assert!(f.degree().finite().unwrap() <= 10);
    }

    #[test]
    fn harmonic_items_are_harmonic() {
        for i in 0..5 {
            let u = harmonic_item(9, i, 3, 6).unwrap();
            assert!(u.laplacian().is_zero());
            assert!(u.degree().finite().unwrap() >= 1);
        }
    }
}
