//! Polynomial Dirichlet problems on ellipsoidal cylinders and ellipsoids.
//!
//! With `p = p₂ − 1` the defining polynomial of the boundary, the Fischer
//! operator `F(q) = Δ(p·q)` is a bijection of `P_m`. Polynomial data `f` is
//! then solved by `u = f − p·F⁻¹(Δf)`.
//!
//! `F` splits by homogeneous degree as `F(q)_k = Δ(p₂ q_k) − Δ q_{k+2}`, so
//! the solve runs from the top degree down, one homogeneous block at a time.
//! Each block is further split into exact sub-blocks:
//!
//! * `p₂` is even in every variable, so exponent parities are preserved;
//! * for cylinders `p₂` does not involve `x_n`, so the block never raises the
//!   `x_n` exponent and is block-triangular in it.

pub mod elim;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::poly::{
    format_rational, parse_rational, rational_to_f64, write_polynomial, Degree, MultiIndex, PolyError,
    Polynomial, Rational,
};

/// Default guard on `dim(P_m)` for full matrix assembly.
pub const DEFAULT_BASIS_CAP: usize = 200_000;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SolveError {
    #[error("dimension mismatch: domain has {expected} variables, data has {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("invalid domain: {0}")]
    InvalidDomain(String),
    #[error("homogeneous Fischer block of degree {degree} is singular")]
    SingularBlock { degree: u32 },
    #[error("basis of size {size} exceeds cap {cap}")]
    BasisTooLarge { size: usize, cap: usize },
    #[error("internal certificate failure: {0}")]
    Certificate(String),
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum VerifyError {
    #[error("not harmonic: Laplacian residual {residual}")]
    NotHarmonic { residual: Polynomial },
    #[error("boundary mismatch: u - f leaves remainder {remainder} modulo p")]
    BoundaryMismatch { remainder: Polynomial },
    #[error(transparent)]
    Dimension(#[from] PolyError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DomainKind {
    Cylinder,
    Ellipsoid,
}

/// `{ Σ x_j²/a_j² < 1 }` over the first `n − 1` variables (cylinder) or all
/// `n` variables (ellipsoid). Squared semi-axes are exact rationals.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DomainSpec {
    kind: DomainKind,
    dim: usize,
    axes_squared: Vec<Rational>,
}

impl DomainSpec {
    pub fn new(kind: DomainKind, dim: usize, axes_squared: Vec<Rational>) -> Result<Self, SolveError> {
        if dim < 2 {
            return Err(SolveError::InvalidDomain(format!(
                "dimension must be at least 2, got {dim}"
            )));
        }
        let want = match kind {
            DomainKind::Cylinder => dim - 1,
            DomainKind::Ellipsoid => dim,
        };
        if axes_squared.len() != want {
            return Err(SolveError::InvalidDomain(format!(
                "{kind:?} in dimension {dim} needs {want} squared semi-axes, got {}",
                axes_squared.len()
            )));
        }
        if let Some(bad) = axes_squared.iter().find(|a| !a.is_positive()) {
            return Err(SolveError::InvalidDomain(format!(
                "squared semi-axes must be positive, got {}",
                format_rational(bad)
            )));
        }
        Ok(DomainSpec {
            kind,
            dim,
            axes_squared,
        })
    }

    pub fn cylinder(dim: usize, axes_squared: Vec<Rational>) -> Result<Self, SolveError> {
        Self::new(DomainKind::Cylinder, dim, axes_squared)
    }

    pub fn ellipsoid(dim: usize, axes_squared: Vec<Rational>) -> Result<Self, SolveError> {
        Self::new(DomainKind::Ellipsoid, dim, axes_squared)
    }

    pub fn unit_circular_cylinder(dim: usize) -> Self {
        Self::cylinder(dim, vec![Rational::one(); dim - 1]).expect("valid unit cylinder")
    }

    pub fn kind(&self) -> DomainKind {
        self.kind
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn axes_squared(&self) -> &[Rational] {
        &self.axes_squared
    }

    /// Coefficients `1/a_j²` of `p₂`, one per ambient variable (zero for the
    /// cylinder axis).
    pub fn weights(&self) -> Vec<Rational> {
        let mut w: Vec<Rational> = self.axes_squared.iter().map(|a| a.recip()).collect();
        w.resize(self.dim, Rational::zero());
        w
    }

    /// Largest semi-axis `A = max_j a_j`.
    pub fn max_semi_axis(&self) -> f64 {
        self.axes_squared
            .iter()
            .map(|a| rational_to_f64(a).sqrt())
            .fold(0.0, f64::max)
    }

    fn check_dim(&self, p: &Polynomial) -> Result<(), SolveError> {
        if p.dim() != self.dim {
            return Err(SolveError::DimensionMismatch {
                expected: self.dim,
                found: p.dim(),
            });
        }
        Ok(())
    }
}

impl fmt::Display for DomainSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = match self.kind {
            DomainKind::Cylinder => "cylinder",
            DomainKind::Ellipsoid => "ellipsoid",
        };
        let axes: Vec<String> = self.axes_squared.iter().map(format_rational).collect();
        write!(f, "{kind}:n={}:axes2={}", self.dim, axes.join(","))
    }
}

impl FromStr for DomainSpec {
    type Err = SolveError;

    /// `cylinder:n=<n>:axes2=<r1>,<r2>,...` or `ellipsoid:n=<n>:axes2=...`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = |m: &str| SolveError::InvalidDomain(format!("{m} in '{s}'"));
        let mut parts = s.trim().split(':');
        let kind = match parts.next() {
            Some("cylinder") => DomainKind::Cylinder,
            Some("ellipsoid") => DomainKind::Ellipsoid,
            _ => return Err(bad("expected 'cylinder' or 'ellipsoid'")),
        };
        let mut dim = None;
        let mut axes = None;
        for part in parts {
            match part.split_once('=') {
                Some(("n", v)) => dim = Some(v.parse::<usize>().map_err(|_| bad("invalid n"))?),
                Some(("axes2", v)) => {
                    let list = v
                        .split(',')
                        .map(parse_rational)
                        .collect::<Result<Vec<_>, _>>()
                        .map_err(|e| bad(&e))?;
                    axes = Some(list);
                }
                _ => return Err(bad(&format!("unknown field '{part}'"))),
            }
        }
        let dim = dim.ok_or_else(|| bad("missing n"))?;
        let axes = axes.ok_or_else(|| bad("missing axes2"))?;
        Self::new(kind, dim, axes)
    }
}

/// `p(x) = Σ x_j²/a_j² − 1`.
pub fn defining_polynomial(domain: &DomainSpec) -> Polynomial {
    let mut p = Polynomial::constant(domain.dim, -Rational::one());
    for (j, w) in domain.weights().into_iter().enumerate() {
        if !w.is_zero() {
            p.add_term(MultiIndex::zero(domain.dim).with(j, 2), w);
        }
    }
    p
}

/// `F(q) = Δ(p·q)`.
pub fn fischer_apply(domain: &DomainSpec, q: &Polynomial) -> Result<Polynomial, SolveError> {
    domain.check_dim(q)?;
    Ok((&defining_polynomial(domain) * q).laplacian())
}

/// Image of a single monomial under `q ↦ Δ(p₂ q)`, accumulated into `out`
/// with factor `c`. Only the output terms accepted by `keep` are added.
fn leading_fischer_monomial(
    weights: &[Rational],
    alpha: &MultiIndex,
    c: &Rational,
    out: &mut Polynomial,
    keep: impl Fn(&MultiIndex) -> bool,
) {
    let dim = alpha.dim();
    for (i, w) in weights.iter().enumerate() {
        if w.is_zero() {
            continue;
        }
        let gamma = alpha.with(i, alpha.get(i) + 2);
        let wc = w * c;
        for j in 0..dim {
            let g = u64::from(gamma.get(j));
            if g < 2 {
                continue;
            }
            let e = gamma.with(j, gamma.get(j) - 2);
            if keep(&e) {
                out.add_term(e, &wc * Rational::from_integer((g * (g - 1)).into()));
            }
        }
    }
}

/// `q ↦ Δ(p₂ q)`, the degree-preserving part of the Fischer operator.
pub fn leading_fischer_apply(domain: &DomainSpec, q: &Polynomial) -> Result<Polynomial, SolveError> {
    domain.check_dim(q)?;
    let weights = domain.weights();
    let mut out = Polynomial::zero(domain.dim);
    for (alpha, c) in q.terms() {
        leading_fischer_monomial(&weights, alpha, c, &mut out, |_| true);
    }
    Ok(out)
}

/// The Fischer operator on `P_m` as an exact matrix in the graded-lex basis.
#[derive(Clone, Debug)]
pub struct FischerMatrix {
    pub m: u32,
    pub basis: Vec<MultiIndex>,
    /// Sparse columns: `columns[j]` lists `(row, value)` for basis monomial `j`.
    pub columns: Vec<Vec<(usize, Rational)>>,
    pub domain: DomainSpec,
}

pub fn fischer_matrix(domain: &DomainSpec, m: u32) -> Result<FischerMatrix, SolveError> {
    fischer_matrix_capped(domain, m, DEFAULT_BASIS_CAP)
}

pub fn fischer_matrix_capped(domain: &DomainSpec, m: u32, cap: usize) -> Result<FischerMatrix, SolveError> {
    let size = binomial(domain.dim as u64 + u64::from(m), domain.dim as u64);
    if size > cap as u128 {
        return Err(SolveError::BasisTooLarge {
            size: usize::try_from(size).unwrap_or(usize::MAX),
            cap,
        });
    }
    let basis = MultiIndex::graded_basis(domain.dim, m);
    let index: BTreeMap<&MultiIndex, usize> = basis.iter().enumerate().map(|(i, e)| (e, i)).collect();
    let p = defining_polynomial(domain);
    let columns = basis
        .par_iter()
        .map(|b| {
            let img = (&p * &Polynomial::monomial(b.clone(), Rational::one())).laplacian();
            img.terms().map(|(e, c)| (index[e], c.clone())).collect()
        })
        .collect();
    Ok(FischerMatrix {
        m,
        basis,
        columns,
        domain: domain.clone(),
    })
}

impl FischerMatrix {
    pub fn size(&self) -> usize {
        self.basis.len()
    }

    pub fn entry(&self, row: usize, col: usize) -> Rational {
        self.columns[col]
            .iter()
            .find(|(r, _)| *r == row)
            .map_or_else(Rational::zero, |(_, v)| v.clone())
    }

    pub fn to_dense(&self) -> Vec<Vec<Rational>> {
        let n = self.size();
        let mut d = vec![vec![Rational::zero(); n]; n];
        for (j, col) in self.columns.iter().enumerate() {
            for (i, v) in col {
                d[*i][j] = v.clone();
            }
        }
        d
    }

    /// Rows of degree `k_out` against columns of degree `k_in`.
    pub fn block(&self, k_out: u32, k_in: u32) -> Vec<Vec<Rational>> {
        let rows: Vec<usize> = (0..self.size())
            .filter(|&i| self.basis[i].degree() == k_out)
            .collect();
        let cols: Vec<usize> = (0..self.size())
            .filter(|&j| self.basis[j].degree() == k_in)
            .collect();
        rows.iter()
            .map(|&i| cols.iter().map(|&j| self.entry(i, j)).collect())
            .collect()
    }

    /// Checks the graded structure: degree-k columns only hit degree k and
    /// k − 2 rows, and the k → k block is `Δ(p₂ ·)`.
    pub fn check_block_structure(&self) -> bool {
        let weights = self.domain.weights();
        self.basis.iter().zip(&self.columns).all(|(b, col)| {
            let k = b.degree();
            let graded = col.iter().all(|(i, _)| {
                let d = self.basis[*i].degree();
                d == k || d + 2 == k
            });
            let mut lead = Polynomial::zero(self.domain.dim);
            leading_fischer_monomial(&weights, b, &Rational::one(), &mut lead, |_| true);
            let diag: Polynomial = Polynomial::from_terms(
                self.domain.dim,
                col.iter()
                    .filter(|(i, _)| self.basis[*i].degree() == k)
                    .map(|(i, v)| (self.basis[*i].clone(), v.clone())),
            )
            .expect("basis dimension");
            graded && diag == lead
        })
    }
}

fn binomial(n: u64, k: u64) -> u128 {
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * u128::from(n - i) / u128::from(i + 1))
}

/// Basis of one exact sub-block of the degree-k leading operator.
fn sub_block_basis(dim: usize, k: u32, parity: u64, axial: Option<u32>) -> Vec<MultiIndex> {
    MultiIndex::homogeneous_basis(dim, k)
        .into_iter()
        .filter(|e| e.parity() == parity && axial.is_none_or(|a| e.get(dim - 1) == a))
        .collect()
}

/// Dense matrix of `Δ(p₂ ·)` on one sub-block, keeping only outputs in the
/// same sub-block.
fn sub_block_matrix(weights: &[Rational], basis: &[MultiIndex]) -> Vec<Vec<Rational>> {
    let index: BTreeMap<&MultiIndex, usize> = basis.iter().enumerate().map(|(i, e)| (e, i)).collect();
    let n = basis.len();
    let mut m = vec![vec![Rational::zero(); n]; n];
    for (j, b) in basis.iter().enumerate() {
        let mut img = Polynomial::zero(b.dim());
        leading_fischer_monomial(weights, b, &Rational::one(), &mut img, |e| index.contains_key(e));
        for (e, c) in img.terms() {
            m[index[e]][j] = c.clone();
        }
    }
    m
}

/// All exact sub-blocks of the degree-k homogeneous Fischer block, split by
/// exponent parity only.
pub fn homogeneous_block_parts(domain: &DomainSpec, k: u32) -> Vec<Vec<Vec<Rational>>> {
    let weights = domain.weights();
    let parities: BTreeSet<u64> = MultiIndex::homogeneous_basis(domain.dim, k)
        .iter()
        .map(MultiIndex::parity)
        .collect();
    parities
        .into_iter()
        .map(|par| sub_block_matrix(&weights, &sub_block_basis(domain.dim, k, par, None)))
        .collect()
}

/// Exact nonsingularity of the degree-k homogeneous Fischer block.
pub fn homogeneous_block_nonsingular(domain: &DomainSpec, k: u32) -> bool {
    homogeneous_block_parts(domain, k)
        .iter()
        .all(|m| elim::is_nonsingular(m))
}

/// Solves `Δ(p₂ q) = rhs` for homogeneous `q` of degree `k`.
fn solve_leading_block(domain: &DomainSpec, k: u32, rhs: &Polynomial) -> Result<Polynomial, SolveError> {
    let dim = domain.dim;
    let weights = domain.weights();
    let axis = dim - 1;
    let mut q = Polynomial::zero(dim);
    let mut residual = rhs.clone();

    let levels: Vec<Option<u32>> = match domain.kind {
        DomainKind::Cylinder => (0..=k).rev().map(Some).collect(),
        DomainKind::Ellipsoid => vec![None],
    };
    for level in levels {
        let part: Vec<(MultiIndex, Rational)> = residual
            .terms()
            .filter(|(e, _)| level.is_none_or(|a| e.get(axis) == a))
            .map(|(e, c)| (e.clone(), c.clone()))
            .collect();
        if part.is_empty() {
            continue;
        }
        let parities: BTreeSet<u64> = part.iter().map(|(e, _)| e.parity()).collect();
        let mut q_level = Polynomial::zero(dim);
        for par in parities {
            let basis = sub_block_basis(dim, k, par, level);
            let m = sub_block_matrix(&weights, &basis);
            let b: Vec<Rational> = basis.iter().map(|e| residual.coeff(e)).collect();
            let x = elim::solve(&m, &b).ok_or(SolveError::SingularBlock { degree: k })?;
            for (e, c) in basis.into_iter().zip(x) {
                q_level.add_term(e, c);
            }
        }
        let img = leading_fischer_apply(domain, &q_level)?;
        residual = &residual - &img;
        q = &q + &q_level;
    }
    if !residual.is_zero() {
        return Err(SolveError::Certificate(format!(
            "degree {k} block left residual {residual}"
        )));
    }
    Ok(q)
}

/// Solves `Δ(p q) = g` for `q` of degree at most `deg g`.
pub fn fischer_inverse(domain: &DomainSpec, g: &Polynomial) -> Result<Polynomial, SolveError> {
    domain.check_dim(g)?;
    let top = match g.degree() {
        Degree::NegInfinity => return Ok(Polynomial::zero(domain.dim)),
        Degree::Finite(d) => d,
    };
    // F(q)_k = Δ(p₂ q_k) − Δ q_{k+2}
    let mut q = Polynomial::zero(domain.dim);
    let mut q_above: [Polynomial; 2] = [Polynomial::zero(domain.dim), Polynomial::zero(domain.dim)];
    for k in (0..=top).rev() {
        let slot = (k % 2) as usize;
        let rhs = &g.homogeneous_part(k) + &q_above[slot].laplacian();
        let qk = solve_leading_block(domain, k, &rhs)?;
        q = &q + &qk;
        q_above[slot] = qk;
    }
    Ok(q)
}

/// Exact witness that `u` solves the Dirichlet problem with data `f`:
/// `Δu = 0` and `u − f = p · boundary_quotient`.
#[derive(Clone, Debug, PartialEq)]
pub struct DirichletCertificate {
    pub residual_laplacian: Polynomial,
    pub boundary_quotient: Polynomial,
}

impl DirichletCertificate {
    /// Re-checks both identities from scratch.
    pub fn holds(&self, domain: &DomainSpec, f: &Polynomial, u: &Polynomial) -> bool {
        self.residual_laplacian.is_zero()
            && u.laplacian().is_zero()
            && &(&defining_polynomial(domain) * &self.boundary_quotient) + f == *u
    }

    /// SHA-256 of the canonical text of both fields.
    pub fn digest(&self) -> String {
        let mut h = Sha256::new();
        h.update(write_polynomial(&self.residual_laplacian).as_bytes());
        h.update(b"--\n");
        h.update(write_polynomial(&self.boundary_quotient).as_bytes());
        h.finalize().iter().map(|b| format!("{b:02x}")).collect()
    }
}

/// `u = f − p·F⁻¹(Δf)` together with its certificate.
pub fn solve_dirichlet_poly(
    domain: &DomainSpec,
    f: &Polynomial,
) -> Result<(Polynomial, DirichletCertificate), SolveError> {
    domain.check_dim(f)?;
    let q = fischer_inverse(domain, &f.laplacian())?;
    let p = defining_polynomial(domain);
    let u = f - &(&p * &q);
    let cert = DirichletCertificate {
        residual_laplacian: u.laplacian(),
        boundary_quotient: -&q,
    };
    if !cert.residual_laplacian.is_zero() {
        return Err(SolveError::Certificate(format!(
            "Laplacian residual {}",
            cert.residual_laplacian
        )));
    }
    Ok((u, cert))
}

/// Exact division by `p`, eliminating `x₁²` through its coefficient `1/a₁²`.
/// Returns `(quotient, remainder)` with `deg_{x₁} remainder < 2`.
pub fn divide_by_defining(domain: &DomainSpec, r: &Polynomial) -> (Polynomial, Polynomial) {
    let dim = domain.dim;
    let p = defining_polynomial(domain);
    let lead_exp = MultiIndex::zero(dim).with(0, 2);
    let lead = p.coeff(&lead_exp);
    let mut rest = p.clone();
    rest.add_term(lead_exp, -&lead);

    let mut rem = r.clone();
    let mut quot = Polynomial::zero(dim);
    loop {
        let top = rem.terms().map(|(e, _)| e.get(0)).max().unwrap_or(0);
        if top < 2 {
            break;
        }
        let level: Vec<(MultiIndex, Rational)> = rem
            .terms()
            .filter(|(e, _)| e.get(0) == top)
            .map(|(e, c)| (e.clone(), c.clone()))
            .collect();
        let mut t = Polynomial::zero(dim);
        for (e, c) in level {
            rem.add_term(e.clone(), -&c);
            t.add_term(e.with(0, top - 2), c / &lead);
        }
        rem = &rem - &(&t * &rest);
        quot = &quot + &t;
    }
    (quot, rem)
}

/// Checks `Δu = 0` and `p | (u − f)` exactly.
pub fn verify_solution(
    domain: &DomainSpec,
    f: &Polynomial,
    u: &Polynomial,
) -> Result<DirichletCertificate, VerifyError> {
    for poly in [f, u] {
        if poly.dim() != domain.dim {
            return Err(PolyError::DimensionMismatch {
                expected: domain.dim,
                found: poly.dim(),
            }
            .into());
        }
    }
    let residual = u.laplacian();
    if !residual.is_zero() {
        return Err(VerifyError::NotHarmonic { residual });
    }
    let (quotient, remainder) = divide_by_defining(domain, &(u - f));
    if !remainder.is_zero() {
        return Err(VerifyError::BoundaryMismatch { remainder });
    }
    Ok(DirichletCertificate {
        residual_laplacian: residual,
        boundary_quotient: quotient,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{int, parse_polynomial, rat};

    fn x(dim: usize, i: usize) -> Polynomial {
        Polynomial::var(dim, i)
    }

    fn ucyl3() -> DomainSpec {
        DomainSpec::unit_circular_cylinder(3)
    }

    #[test]
    fn defining_polynomials() {
        let p = defining_polynomial(&ucyl3());
        assert_eq!(
            p,
            parse_polynomial("dim 3\n1 2 0 0\n1 0 2 0\n-1 0 0 0\n").unwrap()
        );
        let e = DomainSpec::ellipsoid(2, vec![int(4), int(1)]).unwrap();
        assert_eq!(
            defining_polynomial(&e),
            parse_polynomial("dim 2\n1/4 2 0\n1 0 2\n-1 0 0\n").unwrap()
        );
        let c4 = DomainSpec::cylinder(4, vec![int(1); 3]).unwrap();
        let p4 = defining_polynomial(&c4);
        assert_eq!(p4.len(), 4);
        assert!(p4.partial(3).is_zero());
    }

    #[test]
    fn domain_grammar() {
        let d: DomainSpec = "cylinder:n=3:axes2=1,9/4".parse().unwrap();
        assert_eq!(d.kind(), DomainKind::Cylinder);
        assert_eq!(d.axes_squared(), &[int(1), rat(9, 4)]);
        assert_eq!(d.to_string(), "cylinder:n=3:axes2=1,9/4");
        assert!((d.max_semi_axis() - 1.5).abs() < 1e-15);
        assert!("ellipsoid:n=3:axes2=1,2".parse::<DomainSpec>().is_err());
        assert!("cylinder:n=3:axes2=1,-2".parse::<DomainSpec>().is_err());
        assert!("torus:n=3:axes2=1,1".parse::<DomainSpec>().is_err());
        assert!("cylinder:n=1:axes2=".parse::<DomainSpec>().is_err());
        assert!("cylinder:axes2=1,1".parse::<DomainSpec>().is_err());
    }

    #[test]
    fn fischer_apply_examples() {
        let one = Polynomial::constant(3, int(1));
        assert_eq!(
            fischer_apply(&ucyl3(), &one).unwrap(),
            Polynomial::constant(3, int(4))
        );
        let d = DomainSpec::ellipsoid(3, vec![int(2), rat(1, 3), int(5)]).unwrap();
        let want = (rat(1, 2) + int(3) + rat(1, 5)) * int(2);
        assert_eq!(fischer_apply(&d, &one).unwrap(), Polynomial::constant(3, want));
        // Δ((x1²+x2²−1)x3) = 4 x3, expanded by hand
        assert_eq!(fischer_apply(&ucyl3(), &x(3, 2)).unwrap(), x(3, 2).scale(&int(4)));
        assert!(fischer_apply(&ucyl3(), &x(2, 0)).is_err());
    }

    #[test]
    fn leading_operator_matches_generic_route() {
        let d = DomainSpec::cylinder(4, vec![rat(2, 3), int(5), rat(1, 7)]).unwrap();
        for b in MultiIndex::homogeneous_basis(4, 4) {
            let q = Polynomial::monomial(b.clone(), rat(3, 2));
            let p2 = &defining_polynomial(&d) + &Polynomial::constant(4, int(1));
            assert_eq!(leading_fischer_apply(&d, &q).unwrap(), (&p2 * &q).laplacian());
        }
    }

    #[test]
    fn matrix_small_cases() {
        let m0 = fischer_matrix(&ucyl3(), 0).unwrap();
        assert_eq!(m0.to_dense(), vec![vec![int(4)]]);
        let d = DomainSpec::cylinder(3, vec![rat(1, 2), int(3)]).unwrap();
        let m0 = fischer_matrix(&d, 0).unwrap();
        assert_eq!(m0.to_dense(), vec![vec![int(2) * (int(2) + rat(1, 3))]]);

        let m2 = fischer_matrix(&ucyl3(), 2).unwrap();
        assert_eq!(m2.size(), 10);
        assert!(m2.check_block_structure());
        for (j, b) in m2.basis.iter().enumerate() {
            let img = fischer_apply(&ucyl3(), &Polynomial::monomial(b.clone(), int(1))).unwrap();
            for (i, e) in m2.basis.iter().enumerate() {
                assert_eq!(m2.entry(i, j), img.coeff(e));
            }
        }
    }

    #[test]
    fn matrix_cap_guard() {
        let err = fischer_matrix_capped(&ucyl3(), 10, 100).unwrap_err();
        assert_eq!(err, SolveError::BasisTooLarge { size: 286, cap: 100 });
    }

    #[test]
    fn harmonic_data_is_fixed() {
        let f = &x(3, 0) * &x(3, 1);
        let (u, cert) = solve_dirichlet_poly(&ucyl3(), &f).unwrap();
        assert_eq!(u, f);
        assert!(cert.holds(&ucyl3(), &f, &u));
    }

    #[test]
    fn worked_square_fixture() {
        let f = &x(3, 0) * &x(3, 0);
        let (u, cert) = solve_dirichlet_poly(&ucyl3(), &f).unwrap();
        let want = parse_polynomial("dim 3\n1/2 0 0 0\n1/2 2 0 0\n-1/2 0 2 0\n").unwrap();
        assert_eq!(u, want);
        assert_eq!(cert.boundary_quotient, Polynomial::constant(3, rat(-1, 2)));
        assert!(cert.holds(&ucyl3(), &f, &u));
    }

    #[test]
    fn radial_square_gives_constant() {
        let f = &(&x(3, 0) * &x(3, 0)) + &(&x(3, 1) * &x(3, 1));
        let (u, _) = solve_dirichlet_poly(&ucyl3(), &f).unwrap();
        assert_eq!(u, Polynomial::constant(3, int(1)));
    }

    #[test]
    fn verify_failures() {
        let f = &x(3, 0) * &x(3, 0);
        match verify_solution(&ucyl3(), &f, &f).unwrap_err() {
            VerifyError::NotHarmonic { residual } => assert_eq!(residual, Polynomial::constant(3, int(2))),
            e => panic!("unexpected {e}"),
        }
        let one = Polynomial::constant(3, int(1));
        match verify_solution(&ucyl3(), &one, &Polynomial::zero(3)).unwrap_err() {
            VerifyError::BoundaryMismatch { remainder } => {
                assert_eq!(remainder, Polynomial::constant(3, int(-1)))
            }
            e => panic!("unexpected {e}"),
        }
    }

    #[test]
    fn verify_round_trip() {
        let d = DomainSpec::cylinder(3, vec![rat(4, 9), int(2)]).unwrap();
        let f = parse_polynomial("dim 3\n3/7 4 1 0\n-2 0 0 3\n1 2 2 2\n5 0 0 0\n").unwrap();
        let (u, cert) = solve_dirichlet_poly(&d, &f).unwrap();
        let again = verify_solution(&d, &f, &u).unwrap();
        assert_eq!(again, cert);
    }

    #[test]
    fn ellipsoid_harmonic_data() {
        let d = DomainSpec::ellipsoid(3, vec![int(2), int(3), rat(1, 2)]).unwrap();
        let f = parse_polynomial("dim 3\n1 3 0 0\n-3 1 2 0\n1 0 0 1\n").unwrap();
        assert!(f.laplacian().is_zero());
        assert_eq!(solve_dirichlet_poly(&d, &f).unwrap().0, f);
    }

    #[test]
    fn block_nonsingular_small_degrees() {
        for k in 0..=6 {
            assert!(homogeneous_block_nonsingular(&ucyl3(), k));
        }
    }
}
