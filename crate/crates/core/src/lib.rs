//! Exact Dirichlet solver for ellipsoidal cylinders and ellipsoids.
//!
//! Polynomial data is solved exactly through the Fischer operator
//! `q ↦ Δ(p·q)`, where `p` is the defining polynomial of the boundary.
//! Entire data of order below one is handled degree by degree, with
//! root-test, order/type and tail-bound diagnostics on the resulting
//! homogeneous expansion. The numeric side covers the principal Dirichlet
//! eigenpair of the base, the non-uniqueness null solution, and a
//! walk-on-spheres estimate of the axial decay of harmonic measure.
//!
//! Every runnable capability has a matching program under `examples/`.

#![allow(clippy::neg_cmp_op_on_partial_ord)] // `!(x > 0.0)` also rejects NaN

pub mod cli;
pub mod corpus;
pub mod error;
pub mod fischer;
pub mod mc;
mod numeric;
pub mod poly;
pub mod series;
pub mod spectral;

pub use error::Error;
pub use fischer::{
    defining_polynomial, fischer_apply, fischer_matrix, solve_dirichlet_poly, verify_solution,
    DirichletCertificate, DomainKind, DomainSpec, FischerMatrix,
};
pub use poly::{
    homogeneous_decompose, sphere_max, Degree, HomogeneousDecomposition, MultiIndex, Polynomial, Rational,
};
