//! Exponential rate of the empirical axial survival function.

use std::collections::BTreeMap;

use serde::Serialize;

use super::{ExitRecord, WalkError};
use crate::numeric::LeastSquares;

/// Fits whose quadratic term has a z-score beyond this are flagged as curved.
pub const CURVATURE_Z_THRESHOLD: f64 = 5.0;

pub const RATE_NOTE: &str = "consistent with the upper bound; rate match is an empirical finding";

#[derive(Clone, Debug, Serialize)]
pub struct DecayFitConfig {
    pub dt: f64,
    pub t_lo: f64,
    /// `t_hi` is the largest grid point with at least this many exceedances.
    pub min_exceedances: usize,
    pub min_records: usize,
}

impl Default for DecayFitConfig {
    fn default() -> Self {
        DecayFitConfig {
            dt: 0.05,
            t_lo: 1.0,
            min_exceedances: 100,
            min_records: 10_000,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct DecayFitReport {
    pub records: usize,
    /// `t ↦ P(|y_n| > t)` on the grid `t = k dt`, keyed by `k`.
    pub survival: BTreeMap<u32, f64>,
    pub dt: f64,
    pub nu_hat: f64,
    pub stderr: f64,
    pub reference_rate: f64,
    /// `(ν̂ − √λ)/√λ`.
    pub relative_error: f64,
    pub fit_window: (f64, f64),
    pub fit_points: usize,
    /// Quadratic coefficient of a second fit over the same window, in standard errors.
    pub curvature_z: f64,
    pub curved: bool,
    pub note: &'static str,
}

impl DecayFitReport {
    pub fn accepted(&self) -> bool {
        !self.curved && self.nu_hat > 0.0
    }
}

/// Variance of `Σ wᵢ ln Sᵢ` when the `Sᵢ` come from one empirical survival
/// function: `Cov(ln Sᵢ, ln Sₖ) = (1 − S_{min})/(n S_{min})`, with `min` the
/// smaller of the two abscissae.
fn log_survival_variance(weights: &[f64], s: &[f64], n: f64) -> f64 {
    // grid is increasing in t, so for i ≤ k the covariance uses S_i
    let mut var = 0.0;
    for i in 0..s.len() {
        let c = (1.0 - s[i]) / (n * s[i]);
        let tail: f64 = weights[i + 1..].iter().sum();
        var += c * (weights[i] * weights[i] + 2.0 * weights[i] * tail);
    }
    var
}

/// [`decay_fit`] on the axial coordinates of walk records.
pub fn decay_fit_records(
    records: &[ExitRecord],
    lambda: f64,
    cfg: &DecayFitConfig,
) -> Result<DecayFitReport, WalkError> {
    let axial: Vec<f64> = records.iter().map(|r| r.y_axial).collect();
    decay_fit(&axial, lambda, cfg)
}

/// Exponential rate of `P(|y_n| > t)` on `[t_lo, t_hi]`.
pub fn decay_fit(axial: &[f64], lambda: f64, cfg: &DecayFitConfig) -> Result<DecayFitReport, WalkError> {
    let n = axial.len();
    if n < cfg.min_records {
        return Err(WalkError::InsufficientTailMass(format!(
            "{n} records, at least {} required",
            cfg.min_records
        )));
    }
    let mut abs: Vec<f64> = axial.iter().map(|y| y.abs()).collect();
    abs.sort_by(f64::total_cmp);
    let exceed = |t: f64| n - abs.partition_point(|v| *v <= t);

    let mut survival = BTreeMap::new();
    let mut k_hi = None;
    let mut k = 0u32;
    loop {
        let t = f64::from(k) * cfg.dt;
        let e = exceed(t);
        survival.insert(k, e as f64 / n as f64);
        if e >= cfg.min_exceedances {
            k_hi = Some(k);
        }
        if e == 0 {
            break;
        }
        k += 1;
    }
    let t_hi = k_hi.map_or(0.0, |k| f64::from(k) * cfg.dt);
    if t_hi <= cfg.t_lo {
        return Err(WalkError::InsufficientTailMass(format!(
            "largest t with {} exceedances is {t_hi}, not above t_lo = {}",
            cfg.min_exceedances, cfg.t_lo
        )));
    }
    let k_lo = (cfg.t_lo / cfg.dt - 1e-9).ceil() as u32;
    let pts: Vec<(f64, f64)> = survival
        .range(k_lo..=k_hi.expect("t_hi > t_lo"))
        .map(|(k, s)| (f64::from(*k) * cfg.dt, *s))
        .collect();
    let s: Vec<f64> = pts.iter().map(|p| p.1).collect();
    let y: Vec<f64> = s.iter().map(|v| v.ln()).collect();
    let nf = n as f64;

    let line = LeastSquares::new(&pts.iter().map(|(t, _)| vec![1.0, *t]).collect::<Vec<_>>())
        .ok_or_else(|| WalkError::InsufficientTailMass("fit window has fewer than 2 points".into()))?;
    let nu_hat = -line.solve(&y)[1];
    let stderr = log_survival_variance(line.weights(1), &s, nf).sqrt();

    let curvature_z =
        match LeastSquares::new(&pts.iter().map(|(t, _)| vec![1.0, *t, t * t]).collect::<Vec<_>>()) {
            Some(q) => {
                let c = q.solve(&y)[2];
                let se = log_survival_variance(q.weights(2), &s, nf).sqrt();
                if se > 0.0 {
                    c / se
                } else {
                    0.0
                }
            }
            None => 0.0,
        };
    let reference_rate = lambda.sqrt();
    Ok(DecayFitReport {
        records: n,
        survival,
        dt: cfg.dt,
        nu_hat,
        stderr,
        reference_rate,
        relative_error: (nu_hat - reference_rate) / reference_rate,
        fit_window: (cfg.t_lo, t_hi),
        fit_points: pts.len(),
        curvature_z,
        curved: curvature_z.abs() > CURVATURE_Z_THRESHOLD,
        note: RATE_NOTE,
    })
}
