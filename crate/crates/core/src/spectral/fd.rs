//! Principal Dirichlet eigenpair of an ellipse by finite differences.
//!
//! Grid nodes inside the ellipse are unknowns. Where a stencil arm leaves
//! the domain, the boundary crossing along that arm at distance `d ≤ h` is
//! used instead of the outside node: the arm contributes `1/(h d)` to the
//! diagonal and nothing off it. The operator stays symmetric positive
//! definite and its eigenvalues converge at second order.

use serde::Serialize;

use super::{BaseDomain, SpectralError};

#[derive(Clone, Debug)]
pub(crate) struct GridOperator {
    pub h: f64,
    pub extent: f64,
    /// Grid index `j*n + i` of each unknown.
    pub nodes: Vec<usize>,
    pub diag: Vec<f64>,
    /// Interior neighbours of each unknown, all coupled with `−1/h²`.
    pub neighbours: Vec<[usize; 4]>,
}

const NONE: usize = usize::MAX;

impl GridOperator {
    pub(crate) fn new(base: &BaseDomain, n: usize) -> Self {
        let (a, b) = (base.semi_axes[0], base.semi_axes[1]);
        let extent = a.max(b);
        let h = 2.0 * extent / (n - 1) as f64;
        let coord = |i: usize| -extent + i as f64 * h;
        let inside = |x: f64, y: f64| (x / a).powi(2) + (y / b).powi(2) < 1.0;

        let mut index = vec![NONE; n * n];
        let mut nodes = Vec::new();
        for j in 0..n {
            for i in 0..n {
                if inside(coord(i), coord(j)) {
                    index[j * n + i] = nodes.len();
                    nodes.push(j * n + i);
                }
            }
        }
        let ih2 = 1.0 / (h * h);
        let mut diag = Vec::with_capacity(nodes.len());
        let mut neighbours = Vec::with_capacity(nodes.len());
        for &g in &nodes {
            let (i, j) = (g % n, g / n);
            let (x, y) = (coord(i), coord(j));
            // boundary crossings along the horizontal and vertical lines
            let xb = a * (1.0 - (y / b).powi(2)).max(0.0).sqrt();
            let yb = b * (1.0 - (x / a).powi(2)).max(0.0).sqrt();
            let arms = [
                (i + 1 < n, g + 1, xb - x),
                (i > 0, g.wrapping_sub(1), x + xb),
                (j + 1 < n, g + n, yb - y),
                (j > 0, g.wrapping_sub(n), y + yb),
            ];
            let mut d = 0.0;
            let mut nb = [NONE; 4];
            for (k, (exists, ng, dist)) in arms.into_iter().enumerate() {
                let u = if exists { index[ng] } else { NONE };
                if u != NONE {
                    nb[k] = u;
                    d += ih2;
                } else {
                    d += 1.0 / (h * dist.clamp(f64::MIN_POSITIVE, h));
                }
            }
            diag.push(d);
            neighbours.push(nb);
        }
        GridOperator {
            h,
            extent,
            nodes,
            diag,
            neighbours,
        }
    }

    pub(crate) fn len(&self) -> usize {
        self.nodes.len()
    }

    pub(crate) fn apply(&self, x: &[f64], out: &mut [f64]) {
        let ih2 = 1.0 / (self.h * self.h);
        for (k, o) in out.iter_mut().enumerate() {
            let mut acc = self.diag[k] * x[k];
            for &u in &self.neighbours[k] {
                if u != NONE {
                    acc -= ih2 * x[u];
                }
            }
            *o = acc;
        }
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Jacobi-preconditioned conjugate gradients; returns the iteration count or
/// `None` when `max_iter` is exhausted.
pub(crate) fn pcg(op: &GridOperator, b: &[f64], x: &mut [f64], tol: f64, max_iter: usize) -> Option<usize> {
    let n = op.len();
    let mut r = vec![0.0; n];
    op.apply(x, &mut r);
    r.iter_mut().zip(b).for_each(|(ri, bi)| *ri = bi - *ri);
    let bnorm = dot(b, b).sqrt().max(f64::MIN_POSITIVE);
    let mut z: Vec<f64> = r.iter().zip(&op.diag).map(|(ri, d)| ri / d).collect();
    let mut p = z.clone();
    let mut rz = dot(&r, &z);
    let mut ap = vec![0.0; n];
    for it in 0..max_iter {
        if dot(&r, &r).sqrt() <= tol * bnorm {
            return Some(it);
        }
        op.apply(&p, &mut ap);
        let alpha = rz / dot(&p, &ap);
        for k in 0..n {
            x[k] += alpha * p[k];
            r[k] -= alpha * ap[k];
        }
        for k in 0..n {
            z[k] = r[k] / op.diag[k];
        }
        let rz_new = dot(&r, &z);
        let beta = rz_new / rz;
        rz = rz_new;
        for k in 0..n {
            p[k] = z[k] + beta * p[k];
        }
    }
    (dot(&r, &r).sqrt() <= tol * bnorm).then_some(max_iter)
}

#[derive(Clone, Debug, Serialize)]
pub struct EigenConfig {
    pub cg_tol: f64,
    pub cg_max_iter: usize,
    /// Cap on inverse power iterations.
    pub max_iter: usize,
    /// Stop once `‖L_h v − ρ v‖ ≤ tol·ρ` for the unit iterate `v` and its Rayleigh quotient `ρ`.
    pub tol: f64,
}

impl Default for EigenConfig {
    fn default() -> Self {
        EigenConfig {
            cg_tol: 1e-10,
            cg_max_iter: 500,
            max_iter: 500,
            tol: 1e-9,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct EigenResult {
    pub lambda: f64,
    /// `n × n` samples over `[−A, A]²`, `x` fastest; zero outside the base.
    #[serde(skip)]
    pub psi: Vec<f64>,
    pub n: usize,
    pub h: f64,
    /// Half-width `A` of the sampled square.
    pub extent: f64,
    /// `‖L_h ψ − λ ψ‖ / ‖ψ‖` over the unknowns.
    pub residual: f64,
    pub iterations: usize,
    pub cg_iterations: usize,
    pub unknowns: usize,
}

impl EigenResult {
    pub fn psi_at(&self, i: usize, j: usize) -> f64 {
        self.psi[j * self.n + i]
    }
}

pub fn fd_dirichlet_eigen(base: &BaseDomain, n: usize) -> Result<EigenResult, SpectralError> {
    fd_dirichlet_eigen_with(base, n, &EigenConfig::default())
}

/// The CG budget applies per inner solve and is raised to `10 n` on fine grids.
pub fn fd_dirichlet_eigen_with(
    base: &BaseDomain,
    n: usize,
    cfg: &EigenConfig,
) -> Result<EigenResult, SpectralError> {
    base.check_planar()?;
    if n < 33 {
        return Err(SpectralError::GridTooSmall(n));
    }
    let op = GridOperator::new(base, n);
    let len = op.len();
    // CG iterations grow like n for this operator
    let cg_cap = cfg.cg_max_iter.max(10 * n);
    let mut v = vec![1.0 / (len as f64).sqrt(); len];
    let mut w = vec![0.0; len];
    let mut av = vec![0.0; len];
    let mut lambda = f64::INFINITY;
    let mut cg_total = 0;
    let mut iterations = 0;
    let mut converged = false;
    let mut residual = f64::INFINITY;
    for it in 1..=cfg.max_iter {
        iterations = it;
        // warm start from the scaled previous iterate
        let guess = if lambda.is_finite() { 1.0 / lambda } else { 0.0 };
        w.iter_mut().zip(&v).for_each(|(wi, vi)| *wi = guess * vi);
        cg_total += pcg(&op, &v, &mut w, cfg.cg_tol, cg_cap)
            .ok_or(SpectralError::NoConvergence { iterations: it })?;
        let norm = dot(&w, &w).sqrt();
        v.iter_mut().zip(&w).for_each(|(vi, wi)| *vi = wi / norm);
        op.apply(&v, &mut av);
        lambda = dot(&v, &av);
        residual = av
            .iter()
            .zip(&v)
            .map(|(a, x)| (a - lambda * x).powi(2))
            .sum::<f64>()
            .sqrt();
        if residual <= cfg.tol * lambda {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(SpectralError::NoConvergence { iterations });
    }

    let sign = if v.iter().sum::<f64>() < 0.0 { -1.0 } else { 1.0 };
    let max = v.iter().map(|x| (sign * x).abs()).fold(0.0, f64::max);
    let mut psi = vec![0.0; n * n];
    for (k, &g) in op.nodes.iter().enumerate() {
        psi[g] = sign * v[k] / max;
    }
    Ok(EigenResult {
        lambda,
        psi,
        n,
        h: op.h,
        extent: op.extent,
        residual,
        iterations,
        cg_iterations: cg_total,
        unknowns: len,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::disk_lambda;

    #[test]
    fn operator_is_symmetric() {
        let op = GridOperator::new(&BaseDomain::ellipse(1.3, 0.7), 41);
        for (k, nb) in op.neighbours.iter().enumerate() {
            for &u in nb.iter().filter(|u| **u != NONE) {
                assert!(op.neighbours[u].contains(&k));
            }
        }
        assert!(op.diag.iter().all(|d| *d >= 4.0 / (op.h * op.h) - 1e-9));
    }

    #[test]
    fn coarse_disk_is_close() {
        let eig = fd_dirichlet_eigen(&BaseDomain::disk(1.0), 65).unwrap();
        let exact = disk_lambda(1.0);
        assert!((eig.lambda - exact).abs() < 0.01 * exact, "{}", eig.lambda);
        assert!(eig.residual <= 1e-9 * eig.lambda);
    }

    #[test]
    fn eigenfunction_is_positive_and_normalized() {
        let eig = fd_dirichlet_eigen(&BaseDomain::ellipse(2.0, 1.0), 49).unwrap();
        assert!(eig.psi.iter().all(|v| *v >= 0.0));
        let max = eig.psi.iter().copied().fold(0.0, f64::max);
        assert!((max - 1.0).abs() < 1e-15);
        // corners lie outside
        assert_eq!(eig.psi_at(0, 0), 0.0);
        assert_eq!(eig.psi_at(48, 48), 0.0);
    }

    #[test]
    fn rejects_small_grid() {
        assert!(matches!(
            fd_dirichlet_eigen(&BaseDomain::disk(1.0), 32),
            Err(SpectralError::GridTooSmall(32))
        ));
    }
}
