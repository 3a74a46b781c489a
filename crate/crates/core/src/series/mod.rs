//! Degree-by-degree solution of entire data on a cylinder.
//!
//! Data is a truncated homogeneous series `f = Σ_{m ≤ M} f_m`. Each `f_m` is
//! solved exactly, `u_m = Σ_k u_{m,k}`, and the output is regrouped into
//! homogeneous components `U_j = Σ_{m ≥ j} u_{m,j}`.

mod diagnostics;
mod tail;

use std::collections::BTreeMap;
use std::path::Path;

use num_bigint::BigInt;
use num_traits::One;
use rayon::prelude::*;
use thiserror::Error;

use crate::fischer::{solve_dirichlet_poly, DirichletCertificate, DomainSpec, SolveError};
use crate::poly::{
    format_rational, homogeneous_decompose, parse_polynomial, parse_rational, MultiIndex, PolyError,
    Polynomial, Rational,
};

pub use diagnostics::{
    convergence_diagnostic, homog_component_bound_check, order_type_estimate, order_type_from_log_norms,
    root_test, ComponentBoundReport, ConvergenceDiagnostic, DiagnosticConfig, OrderTypeEstimate, Radius,
};
pub use tail::{
    jth_root_sequence, majorant_sequence, tail_bound, AuditTerm, JthRootSequence, TailBound, TailBoundParams,
};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SeriesError {
    #[error("insufficient data: {found} nonzero components, at least {required} required")]
    InsufficientData { found: usize, required: usize },
    #[error("not entire-like: {0}")]
    NotEntireLike(String),
    #[error("divergent configuration: {0}")]
    DivergentConfiguration(String),
    #[error("not harmonic: Laplacian {0}")]
    NotHarmonic(Polynomial),
    #[error("invalid family: {0}")]
    Family(String),
    #[error("component {m} is not homogeneous of degree {m}")]
    NotHomogeneous { m: u32 },
    #[error(transparent)]
    Solve(#[from] SolveError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// Named data families with their parameters.
#[derive(Clone, Debug, PartialEq)]
pub enum Generator {
    /// `f_m = (c·x_var)^m / (m!)²`, order 1/2.
    PowFact2 { c: Rational, var: usize },
    /// `f_m = c^m Re((x_1 + i x_2)^m)`, radius of convergence `1/|c|`.
    Geom { c: Rational },
    /// Explicit polynomial files.
    File { dir: String },
}

impl std::fmt::Display for Generator {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Generator::PowFact2 { c, var } => write!(f, "powfact2:c={},var={}", format_rational(c), var + 1),
            Generator::Geom { c } => write!(f, "geom:c={}", format_rational(c)),
            Generator::File { dir } => write!(f, "file:{dir}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct HomogeneousSeries {
    dim: usize,
    truncation: u32,
    components: BTreeMap<u32, Polynomial>,
    generator: Option<Generator>,
}

fn factorial(m: u32) -> BigInt {
    (1..=m).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

/// `Re((x_1 + i x_2)^m)` in `dim` variables; harmonic with sphere max 1.
pub fn real_power_harmonic(dim: usize, m: u32) -> Polynomial {
    let mut p = Polynomial::zero(dim);
    let mut binom = BigInt::one();
    for k in 0..=m {
        if k % 2 == 0 {
            let sign = if (k / 2) % 2 == 0 { 1 } else { -1 };
            let e = MultiIndex::zero(dim).with(0, m - k).with(1, k);
            p.add_term(e, Rational::from_integer(&binom * BigInt::from(sign)));
        }
        binom = binom * BigInt::from(m - k) / BigInt::from(k + 1);
    }
    p
}

impl HomogeneousSeries {
    /// Components beyond `truncation` and zero components are dropped.
    pub fn new(
        dim: usize,
        truncation: u32,
        components: impl IntoIterator<Item = (u32, Polynomial)>,
    ) -> Result<Self, SeriesError> {
        let mut map = BTreeMap::new();
        for (m, f) in components {
            if f.dim() != dim {
                return Err(PolyError::DimensionMismatch {
                    expected: dim,
                    found: f.dim(),
                }
                .into());
            }
            if f.is_zero() || m > truncation {
                continue;
            }
            if !f.is_homogeneous() || f.degree().finite() != Some(m) {
                return Err(SeriesError::NotHomogeneous { m });
            }
            map.insert(m, f);
        }
        Ok(HomogeneousSeries {
            dim,
            truncation,
            components: map,
            generator: None,
        })
    }

    pub fn from_polynomial(f: &Polynomial, truncation: u32) -> Self {
        let d = homogeneous_decompose(f);
        let comps = d.components.into_iter().enumerate().map(|(m, p)| (m as u32, p));
        Self::new(f.dim(), truncation, comps).expect("decomposition is homogeneous")
    }

    pub fn powfact2(dim: usize, c: Rational, var: usize, truncation: u32) -> Result<Self, SeriesError> {
        if var >= dim {
            return Err(SeriesError::Family(format!("variable {} out of range", var + 1)));
        }
        let comps = (0..=truncation).map(|m| {
            let fact = factorial(m);
            let coeff = num_traits::pow(c.clone(), m as usize) / Rational::from_integer(&fact * &fact);
            (m, Polynomial::monomial(MultiIndex::zero(dim).with(var, m), coeff))
        });
        let mut s = Self::new(dim, truncation, comps)?;
        s.generator = Some(Generator::PowFact2 { c, var });
        Ok(s)
    }

    pub fn geom(dim: usize, c: Rational, truncation: u32) -> Result<Self, SeriesError> {
        if dim < 2 {
            return Err(SeriesError::Family("geom needs at least two variables".into()));
        }
        let comps = (0..=truncation).map(|m| {
            (
                m,
                real_power_harmonic(dim, m).scale(&num_traits::pow(c.clone(), m as usize)),
            )
        });
        let mut s = Self::new(dim, truncation, comps)?;
        s.generator = Some(Generator::Geom { c });
        Ok(s)
    }

    /// Every `*.poly` file in `dir` is read; their sum is decomposed.
    pub fn from_dir(dim: usize, dir: &Path, truncation: u32) -> Result<Self, SeriesError> {
        let mut entries: Vec<_> = std::fs::read_dir(dir)
            .map_err(|e| SeriesError::Family(format!("{}: {e}", dir.display())))?
            .filter_map(Result::ok)
            .map(|e| e.path())
            .filter(|p| p.extension().is_some_and(|x| x == "poly"))
            .collect();
        entries.sort();
        if entries.is_empty() {
            return Err(SeriesError::Family(format!(
                "no .poly files in {}",
                dir.display()
            )));
        }
        let mut total = Polynomial::zero(dim);
        for path in entries {
            let text = std::fs::read_to_string(&path)
                .map_err(|e| SeriesError::Family(format!("{}: {e}", path.display())))?;
            let p = parse_polynomial(&text)?;
            total = total.try_add(&p)?;
        }
        let mut s = Self::from_polynomial(&total, truncation);
        s.generator = Some(Generator::File {
            dir: dir.display().to_string(),
        });
        Ok(s)
    }

    /// `powfact2:c=<r>,var=<i>`, `geom:c=<r>`, or `file:<dir>`.
    pub fn from_family(spec: &str, dim: usize, truncation: u32) -> Result<Self, SeriesError> {
        let (name, params) = spec.split_once(':').unwrap_or((spec, ""));
        if name == "file" {
            return Self::from_dir(dim, Path::new(params), truncation);
        }
        let mut c = Rational::one();
        let mut var = 0usize;
        for kv in params.split(',').filter(|s| !s.is_empty()) {
            match kv.split_once('=') {
                Some(("c", v)) => c = parse_rational(v).map_err(SeriesError::Family)?,
                Some(("var", v)) => {
                    let i: usize = v
                        .parse()
                        .map_err(|_| SeriesError::Family(format!("bad var '{v}'")))?;
                    if i == 0 {
                        return Err(SeriesError::Family("var is 1-based".into()));
                    }
                    var = i - 1;
                }
                _ => return Err(SeriesError::Family(format!("unknown parameter '{kv}'"))),
            }
        }
        match name {
            "powfact2" => Self::powfact2(dim, c, var, truncation),
            "geom" => Self::geom(dim, c, truncation),
            other => Err(SeriesError::Family(format!("unknown family '{other}'"))),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn truncation(&self) -> u32 {
        self.truncation
    }

    pub fn generator(&self) -> Option<&Generator> {
        self.generator.as_ref()
    }

    pub fn components(&self) -> &BTreeMap<u32, Polynomial> {
        &self.components
    }

    pub fn component(&self, m: u32) -> Option<&Polynomial> {
        self.components.get(&m)
    }

    pub fn nonzero_count(&self) -> usize {
        self.components.len()
    }

    pub fn sum(&self) -> Polynomial {
        self.components
            .values()
            .fold(Polynomial::zero(self.dim), |acc, p| &acc + p)
    }
}

/// Per-degree solutions and the regrouped output components.
#[derive(Clone, Debug)]
pub struct SeriesSolution {
    pub domain: DomainSpec,
    pub truncation: u32,
    /// `m ↦ u_m`, for every nonzero data component.
    pub solutions: BTreeMap<u32, Polynomial>,
    /// `m ↦` certificate of `u_m`.
    pub certificates: BTreeMap<u32, DirichletCertificate>,
    /// `j ↦ U_j`, zero components omitted.
    pub components: BTreeMap<u32, Polynomial>,
}

impl SeriesSolution {
    pub fn component(&self, j: u32) -> Polynomial {
        self.components
            .get(&j)
            .cloned()
            .unwrap_or_else(|| Polynomial::zero(self.domain.dim()))
    }

    /// Re-verifies every per-degree certificate against the data.
    pub fn certificates_hold(&self, data: &HomogeneousSeries) -> bool {
        self.solutions.iter().all(|(m, u)| {
            let f = data
                .component(*m)
                .cloned()
                .unwrap_or_else(|| Polynomial::zero(self.domain.dim()));
            self.certificates
                .get(m)
                .is_some_and(|c| c.holds(&self.domain, &f, u))
        })
    }

    /// `Σ_j U_j`, which equals `Σ_m u_m`.
    pub fn total(&self) -> Polynomial {
        self.components
            .values()
            .fold(Polynomial::zero(self.domain.dim()), |acc, p| &acc + p)
    }
}

pub fn series_solve(domain: &DomainSpec, data: &HomogeneousSeries) -> Result<SeriesSolution, SeriesError> {
    if data.dim() != domain.dim() {
        return Err(SolveError::DimensionMismatch {
            expected: domain.dim(),
            found: data.dim(),
        }
        .into());
    }
    let solved: Vec<(u32, Polynomial, DirichletCertificate)> = data
        .components()
        .par_iter()
        .map(|(m, f)| solve_dirichlet_poly(domain, f).map(|(u, c)| (*m, u, c)))
        .collect::<Result<_, _>>()?;

    let mut components: BTreeMap<u32, Polynomial> = BTreeMap::new();
    let mut solutions = BTreeMap::new();
    let mut certificates = BTreeMap::new();
    for (m, u, cert) in solved {
        for (e, c) in u.terms() {
            components
                .entry(e.degree())
                .or_insert_with(|| Polynomial::zero(domain.dim()))
                .add_term(e.clone(), c.clone());
        }
        solutions.insert(m, u);
        certificates.insert(m, cert);
    }
    components.retain(|_, p| !p.is_zero());
    Ok(SeriesSolution {
        domain: domain.clone(),
        truncation: data.truncation(),
        solutions,
        certificates,
        components,
    })
}
