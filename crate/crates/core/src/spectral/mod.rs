//! Principal Dirichlet eigenpair of the cylinder base and the null solution
//! `ψ(x′) e^{√λ x_n}` built from it.

mod bessel;
mod fd;
mod grid;

use serde::Serialize;
use thiserror::Error;

use crate::fischer::{DomainKind, DomainSpec};
use crate::poly::rational_to_f64;
use crate::series::{OrderTypeEstimate, SeriesError};

pub use bessel::{disk_lambda, j0, j0_first_zero};
pub use fd::{fd_dirichlet_eigen, fd_dirichlet_eigen_with, EigenConfig, EigenResult};
pub use grid::{read_grid, write_grid, GridFile, GRID_MAGIC};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SpectralError {
    #[error("invalid base: {0}")]
    InvalidBase(String),
    #[error("grid size {0} below the minimum of 33")]
    GridTooSmall(usize),
    #[error("eigen iteration did not converge after {iterations} iterations")]
    NoConvergence { iterations: usize },
    #[error("hypothesis not established: {0}")]
    HypothesisNotEstablished(String),
    #[error("grid file: {0}")]
    Format(String),
}

/// Ellipsoidal base `D` of a cylinder, given by its semi-axes.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BaseDomain {
    pub semi_axes: Vec<f64>,
}

impl BaseDomain {
    pub fn new(semi_axes: Vec<f64>) -> Result<Self, SpectralError> {
        if semi_axes.is_empty() || semi_axes.iter().any(|a| !(*a > 0.0) || !a.is_finite()) {
            return Err(SpectralError::InvalidBase(format!("{semi_axes:?}")));
        }
        Ok(BaseDomain { semi_axes })
    }

    pub fn ellipse(a: f64, b: f64) -> Self {
        Self::new(vec![a, b]).expect("positive semi-axes")
    }

    pub fn disk(a: f64) -> Self {
        Self::ellipse(a, a)
    }

    /// Base of a cylinder domain; semi-axes are square roots of `a_j²`.
    pub fn from_domain(domain: &DomainSpec) -> Result<Self, SpectralError> {
        if domain.kind() != DomainKind::Cylinder {
            return Err(SpectralError::InvalidBase("not a cylinder".into()));
        }
        Self::new(
            domain
                .axes_squared()
                .iter()
                .map(|a2| rational_to_f64(a2).sqrt())
                .collect(),
        )
    }

    pub fn is_disk(&self) -> bool {
        self.semi_axes.windows(2).all(|w| w[0] == w[1])
    }

    pub fn max_semi_axis(&self) -> f64 {
        self.semi_axes.iter().copied().fold(0.0, f64::max)
    }

    pub(crate) fn check_planar(&self) -> Result<(), SpectralError> {
        if self.semi_axes.len() != 2 {
            return Err(SpectralError::InvalidBase(format!(
                "finite differences need a planar base, got {} semi-axes",
                self.semi_axes.len()
            )));
        }
        Ok(())
    }
}

impl std::str::FromStr for BaseDomain {
    type Err = SpectralError;

    /// `a,b` or a single radius.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let axes = s
            .split(',')
            .map(|t| t.trim().parse::<f64>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| SpectralError::InvalidBase(format!("'{s}': {e}")))?;
        let axes = if axes.len() == 1 { vec![axes[0]; 2] } else { axes };
        Self::new(axes)
    }
}

/// `ψ(x′) e^{√λ x_n}` on the base grid crossed with `x_n = k h`, `|k| ≤ K`.
#[derive(Clone, Debug)]
pub struct NullSolutionSample {
    pub n: usize,
    pub nz: usize,
    pub h: f64,
    pub extent: f64,
    /// Requested half-length; the sampled range is `[−K h, K h] ⊂ [−L, L]`.
    pub length: f64,
    pub lambda: f64,
    /// `x` fastest, then `y`, then `x_n`.
    pub values: Vec<f64>,
    /// Largest |discrete Laplacian| over nodes with a full stencil.
    pub max_residual: f64,
}

impl NullSolutionSample {
    pub fn slice(&self, k: usize) -> &[f64] {
        let s = self.n * self.n;
        &self.values[k * s..(k + 1) * s]
    }

    pub fn z(&self, k: usize) -> f64 {
        (k as f64 - (self.nz / 2) as f64) * self.h
    }

    pub fn to_grid_file(&self) -> GridFile {
        GridFile {
            dims: [self.n, self.n, self.nz],
            h: self.h,
            length: self.length,
            lambda: self.lambda,
            values: self.values.clone(),
        }
    }
}

/// Samples the null solution and measures its discrete Laplacian.
///
/// The base part of the Laplacian is the same boundary-weighted operator the
/// eigenpair was computed with; the axial part is the standard second
/// difference, so the residual is `ψ e^{√λ z}(λ − (2cosh(√λ h) − 2)/h²)`
/// up to the eigen-solve error, i.e. `O(λ² h²)`.
pub fn null_solution_sample(
    base: &BaseDomain,
    eig: &EigenResult,
    length: f64,
) -> Result<NullSolutionSample, SpectralError> {
    base.check_planar()?;
    if !(length >= 0.0) {
        return Err(SpectralError::InvalidBase(format!("length {length}")));
    }
    let op = fd::GridOperator::new(base, eig.n);
    let (n, h) = (eig.n, eig.h);
    let half = (length / h + 1e-9).floor() as usize;
    let nz = 2 * half + 1;
    let c = eig.lambda.sqrt();
    let growth: Vec<f64> = (0..nz)
        .map(|k| (c * (k as f64 - half as f64) * h).exp())
        .collect();

    let psi_u: Vec<f64> = op.nodes.iter().map(|&g| eig.psi[g]).collect();
    let mut base_lap = vec![0.0; op.len()];
    op.apply(&psi_u, &mut base_lap);

    let slice = n * n;
    let mut values = vec![0.0; slice * nz];
    for (k, g) in growth.iter().enumerate() {
        for (u, &node) in op.nodes.iter().enumerate() {
            values[k * slice + node] = psi_u[u] * g;
        }
    }
    let ih2 = 1.0 / (h * h);
    let mut max_residual = 0.0f64;
    for (k, g) in growth.iter().enumerate().take(nz.saturating_sub(1)).skip(1) {
        for (u, &node) in op.nodes.iter().enumerate() {
            let v = |kk: usize| values[kk * slice + node];
            // −Δ' is what the operator approximates
            let lap = -base_lap[u] * g + (v(k + 1) - 2.0 * v(k) + v(k - 1)) * ih2;
            max_residual = max_residual.max(lap.abs());
        }
    }
    Ok(NullSolutionSample {
        n,
        nz,
        h,
        extent: eig.extent,
        length,
        lambda: eig.lambda,
        values,
        max_residual,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct GrowthCertificate {
    pub rho_hat: f64,
    pub margin: f64,
    pub lambda: f64,
    pub polynomial: bool,
}

/// Relative gap between the order fitted on the whole window and on its
/// upper half beyond which the estimate counts as unstable.
pub const RHO_STABILITY: f64 = 0.1;

/// Order below one means sub-exponential data, integrable against `e^{−√λ|x_n|}`.
pub fn growth_condition_certify(
    est: &OrderTypeEstimate,
    lambda: f64,
) -> Result<GrowthCertificate, SpectralError> {
    if !(lambda > 0.0) {
        return Err(SpectralError::InvalidBase(format!("lambda {lambda}")));
    }
    if !est.polynomial {
        if !(est.rho_hat < 1.0) {
            return Err(SpectralError::HypothesisNotEstablished(format!(
                "estimated order {} is not below 1",
                est.rho_hat
            )));
        }
        if est.rho_spread > RHO_STABILITY {
            return Err(SpectralError::HypothesisNotEstablished(format!(
                "order estimate unstable across the window (relative spread {:.3})",
                est.rho_spread
            )));
        }
    }
    Ok(GrowthCertificate {
        rho_hat: est.rho_hat,
        margin: 1.0 - est.rho_hat,
        lambda,
        polynomial: est.polynomial,
    })
}

/// As [`growth_condition_certify`], mapping a failed estimate to
/// "hypothesis not established".
pub fn growth_condition_from(
    est: Result<&OrderTypeEstimate, &SeriesError>,
    lambda: f64,
) -> Result<GrowthCertificate, SpectralError> {
    match est {
        Ok(e) => growth_condition_certify(e, lambda),
        Err(e) => Err(SpectralError::HypothesisNotEstablished(e.to_string())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::ln_factorial;
    use crate::series::order_type_from_log_norms;
    use std::collections::BTreeMap;

    #[test]
    fn base_parsing() {
        assert_eq!(
            "2,1".parse::<BaseDomain>().unwrap(),
            BaseDomain::ellipse(2.0, 1.0)
        );
        assert_eq!("1.5".parse::<BaseDomain>().unwrap(), BaseDomain::disk(1.5));
        assert!("0,1".parse::<BaseDomain>().is_err());
        assert!("a".parse::<BaseDomain>().is_err());
        let d = DomainSpec::unit_circular_cylinder(3);
        assert!(BaseDomain::from_domain(&d).unwrap().is_disk());
    }

    #[test]
    fn null_solution_slices() {
        let base = BaseDomain::disk(1.0);
        let eig = fd_dirichlet_eigen(&base, 41).unwrap();
        let s = null_solution_sample(&base, &eig, 0.5).unwrap();
        let mid = s.nz / 2;
        assert_eq!(s.z(mid), 0.0);
        assert_eq!(s.slice(mid), &eig.psi[..]);
        // boundary samples vanish
        for k in 0..s.nz {
            let sl = s.slice(k);
            assert_eq!(sl[0], 0.0);
            assert_eq!(sl[20], 0.0);
        }
        let factor = (eig.lambda.sqrt() * s.h).exp();
        for k in 1..s.nz {
            let m0 = s.slice(k - 1).iter().copied().fold(0.0, f64::max);
            let m1 = s.slice(k).iter().copied().fold(0.0, f64::max);
            assert!((m1 / m0 / factor - 1.0).abs() < 1e-6);
        }
    }

    #[test]
    fn null_solution_residual_matches_leading_term() {
        let base = BaseDomain::disk(1.0);
        let eig = fd_dirichlet_eigen(&base, 65).unwrap();
        let s = null_solution_sample(&base, &eig, 0.5).unwrap();
        let c = eig.lambda.sqrt();
        let predicted = (2.0 * (c * s.h).cosh() - 2.0) / (s.h * s.h) - eig.lambda;
        let zmax = s.z(s.nz - 2);
        let want = predicted * (c * zmax).exp();
        assert!(
            (s.max_residual - want).abs() < 0.05 * want,
            "{} vs {want}",
            s.max_residual
        );
    }

    fn estimate(f: impl Fn(u32) -> f64, top: u32) -> Result<OrderTypeEstimate, SeriesError> {
        let ln: BTreeMap<u32, f64> = (1..=top).map(|m| (m, f(m))).collect();
        order_type_from_log_norms(&ln)
    }

    #[test]
    fn growth_certificates() {
        let lambda = disk_lambda(1.0);
        let est = estimate(|m| -2.0 * ln_factorial(m), 60).unwrap();
        let cert = growth_condition_certify(&est, lambda).unwrap();
        assert!((cert.margin - 0.5).abs() < 0.05);

        let geo = estimate(|m| -f64::from(m) * 2f64.ln(), 60);
        assert!(matches!(
            growth_condition_from(geo.as_ref(), lambda),
            Err(SpectralError::HypothesisNotEstablished(_))
        ));

        let cert = growth_condition_certify(&OrderTypeEstimate::polynomial(), 3.0).unwrap();
        assert_eq!(cert.margin, 1.0);

        // order 2: M_m = m^{-m/2}
        let fast = estimate(|m| -0.5 * f64::from(m) * f64::from(m).ln(), 60).unwrap();
        assert!(growth_condition_certify(&fast, lambda).is_err());
    }
}
