//! Walk-on-spheres sampling of harmonic measure on a cylinder and the fit
//! of its axial decay rate.

mod ellipse;
mod fit;

use std::io::{BufRead, Write};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::fischer::{DomainKind, DomainSpec};
use crate::poly::rational_to_f64;

pub use ellipse::ellipse_distance;
pub use fit::{
    decay_fit, decay_fit_records, DecayFitConfig, DecayFitReport, CURVATURE_Z_THRESHOLD, RATE_NOTE,
};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum WalkError {
    #[error("walks need a cylinder domain")]
    NotCylinder,
    #[error("start point is not strictly inside the domain")]
    StartOutside,
    #[error("unsupported base: {0}")]
    Unsupported(String),
    #[error("invalid walk configuration: {0}")]
    InvalidConfig(String),
    #[error("insufficient tail mass: {0}")]
    InsufficientTailMass(String),
    #[error("exit dump line {line}: {message}")]
    Dump { line: usize, message: String },
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct WalkConfig {
    pub start: Vec<f64>,
    pub eps_shell: f64,
    pub max_steps: u64,
    pub walks: u64,
    pub seed: u64,
}

impl WalkConfig {
    pub fn new(start: Vec<f64>, walks: u64, seed: u64) -> Self {
        WalkConfig {
            start,
            eps_shell: 1e-6,
            max_steps: 1_000_000,
            walks,
            seed,
        }
    }

    /// Start at the origin of an `n`-dimensional cylinder.
    pub fn at_origin(n: usize, walks: u64, seed: u64) -> Self {
        Self::new(vec![0.0; n], walks, seed)
    }
}

/// Cross-section of the cylinder with its distance function.
#[derive(Clone, Debug, PartialEq)]
pub enum Base {
    /// Ball of the given radius in `dim` base variables.
    Ball {
        radius: f64,
        dim: usize,
    },
    Ellipse {
        a: f64,
        b: f64,
    },
}

impl Base {
    pub fn from_domain(domain: &DomainSpec) -> Result<Self, WalkError> {
        if domain.kind() != DomainKind::Cylinder {
            return Err(WalkError::NotCylinder);
        }
        let axes = domain.axes_squared();
        if axes.windows(2).all(|w| w[0] == w[1]) {
            return Ok(Base::Ball {
                radius: rational_to_f64(&axes[0]).sqrt(),
                dim: axes.len(),
            });
        }
        match axes {
            [a2, b2] => Ok(Base::Ellipse {
                a: rational_to_f64(a2).sqrt(),
                b: rational_to_f64(b2).sqrt(),
            }),
            _ => Err(WalkError::Unsupported(format!(
                "non-circular base in {} variables",
                axes.len()
            ))),
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            Base::Ball { dim, .. } => *dim,
            Base::Ellipse { .. } => 2,
        }
    }

    /// Signed distance to `∂D`, positive inside.
    pub fn distance(&self, x: &[f64]) -> f64 {
        match self {
            Base::Ball { radius, .. } => radius - x.iter().map(|v| v * v).sum::<f64>().sqrt(),
            Base::Ellipse { a, b } => {
                let (d, _) = ellipse_distance(*a, *b, x[0], x[1]);
                if (x[0] / a).powi(2) + (x[1] / b).powi(2) < 1.0 {
                    d
                } else {
                    -d
                }
            }
        }
    }

    /// Radial projection onto `∂D`.
    fn project(&self, x: &mut [f64]) {
        let rho = match self {
            Base::Ball { radius, .. } => x.iter().map(|v| v * v).sum::<f64>().sqrt() / radius,
            Base::Ellipse { a, b } => ((x[0] / a).powi(2) + (x[1] / b).powi(2)).sqrt(),
        };
        if rho > 0.0 {
            x.iter_mut().for_each(|v| *v /= rho);
        }
    }

    /// Parameter of a boundary point: `atan2(x₂/b, x₁/a)`.
    fn angle(&self, x: &[f64]) -> f64 {
        match self {
            Base::Ball { .. } => x[1].atan2(x[0]),
            Base::Ellipse { a, b } => (x[1] / b).atan2(x[0] / a),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExitRecord {
    pub y_axial: f64,
    pub angle: f64,
    pub steps: u64,
    /// Projected exit point in the base variables.
    pub base_point: Vec<f64>,
    /// Distance to `∂D` when the walk was absorbed.
    pub absorbed_at: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct WalkOutcome {
    pub records: Vec<ExitRecord>,
    /// Walks that hit `max_steps` and were dropped.
    pub discarded: u64,
}

/// RNG of walk `index`: the seed picks the key, the walk index the stream.
pub fn walk_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

fn single_walk(base: &Base, cfg: &WalkConfig, index: u64) -> Option<ExitRecord> {
    let n = cfg.start.len();
    let m = base.dim();
    let mut rng = walk_rng(cfg.seed, index);
    let mut x = cfg.start.clone();
    let mut dir = vec![0.0; n];
    let mut steps = 0u64;
    loop {
        let d = base.distance(&x[..m]);
        if d <= cfg.eps_shell {
            let mut p = x[..m].to_vec();
            base.project(&mut p);
            return Some(ExitRecord {
                y_axial: x[n - 1],
                angle: base.angle(&p),
                steps,
                base_point: p,
                absorbed_at: d,
            });
        }
        if steps >= cfg.max_steps {
            return None;
        }
        let mut norm = 0.0;
        while norm < 1e-300 {
            for v in dir.iter_mut() {
                *v = rng.sample(StandardNormal);
            }
            norm = dir.iter().map(|v| v * v).sum::<f64>().sqrt();
        }
        for (xi, di) in x.iter_mut().zip(&dir) {
            *xi += d * di / norm;
        }
        steps += 1;
    }
}

/// Exit points of `cfg.walks` independent walks, in walk-index order.
pub fn wos_exit(domain: &DomainSpec, cfg: &WalkConfig) -> Result<WalkOutcome, WalkError> {
    let base = Base::from_domain(domain)?;
    if cfg.start.len() != domain.dim() {
        return Err(WalkError::InvalidConfig(format!(
            "start has {} coordinates, domain has {}",
            cfg.start.len(),
            domain.dim()
        )));
    }
    if !(cfg.eps_shell > 0.0) {
        return Err(WalkError::InvalidConfig("eps_shell must be positive".into()));
    }
    if !(base.distance(&cfg.start[..base.dim()]) > 0.0) {
        return Err(WalkError::StartOutside);
    }
    let results: Vec<Option<ExitRecord>> = (0..cfg.walks)
        .into_par_iter()
        .map(|i| single_walk(&base, cfg, i))
        .collect();
    let discarded = results.iter().filter(|r| r.is_none()).count() as u64;
    Ok(WalkOutcome {
        records: results.into_iter().flatten().collect(),
        discarded,
    })
}

/// One record per line: `y_n angle steps`.
pub fn write_exits<W: Write>(mut w: W, records: &[ExitRecord]) -> std::io::Result<()> {
    for r in records {
        writeln!(w, "{:?} {:?} {}", r.y_axial, r.angle, r.steps)?;
    }
    Ok(())
}

/// Reads `(y_n, angle, steps)` triples; `#` comments and blank lines skipped.
pub fn read_exits<R: BufRead>(r: R) -> Result<Vec<(f64, f64, u64)>, WalkError> {
    let mut out = Vec::new();
    for (i, line) in r.lines().enumerate() {
        let err = |message: String| WalkError::Dump { line: i + 1, message };
        let line = line.map_err(|e| err(e.to_string()))?;
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let f: Vec<&str> = line.split_whitespace().collect();
        let [y, a, s] = f.as_slice() else {
            return Err(err(format!("expected 3 fields, found {}", f.len())));
        };
        out.push((
            y.parse().map_err(|e| err(format!("{e}")))?,
            a.parse().map_err(|e| err(format!("{e}")))?,
            s.parse().map_err(|e| err(format!("{e}")))?,
        ));
    }
    Ok(out)
}
