//! Root-test, order/type and component-bound diagnostics.

use std::collections::BTreeMap;

use serde::{Serialize, Serializer};

use super::{HomogeneousSeries, SeriesError, SeriesSolution};
use crate::numeric::LeastSquares;
use crate::poly::{sphere_max, Polynomial};

/// Radius of convergence estimate; `Infinity` when the series looks entire.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Radius {
    Finite(f64),
    Infinity,
}

impl Radius {
    pub fn is_infinite(&self) -> bool {
        matches!(self, Radius::Infinity)
    }

    pub fn finite(&self) -> Option<f64> {
        match self {
            Radius::Finite(r) => Some(*r),
            Radius::Infinity => None,
        }
    }
}

impl std::fmt::Display for Radius {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Radius::Finite(r) => write!(f, "{r}"),
            Radius::Infinity => f.write_str("infinity"),
        }
    }
}

impl Serialize for Radius {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Radius::Finite(r) => s.serialize_f64(*r),
            Radius::Infinity => s.serialize_str("infinity"),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct DiagnosticConfig {
    /// Relative tolerance of every sphere maximum.
    pub tol: f64,
    /// The tail counts as entire when every `r_j` in the window is below this.
    pub entire_threshold: f64,
    /// Explicit `[lo, hi]` window; the upper half of the degrees when absent.
    pub window: Option<(u32, u32)>,
}

impl Default for DiagnosticConfig {
    fn default() -> Self {
        DiagnosticConfig {
            tol: 1e-9,
            entire_threshold: 0.05,
            window: None,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ConvergenceDiagnostic {
    /// `j ↦ max_{S^{n-1}} |U_j|^{1/j}`, with zero components recorded as 0.
    pub r: BTreeMap<u32, f64>,
    pub radius_estimate: Radius,
    pub window: (u32, u32),
    pub threshold: f64,
    /// `r_j` is non-increasing across the window.
    pub non_increasing: bool,
    /// Some sphere maximization hit its iteration budget.
    pub unconverged: Vec<u32>,
}

impl ConvergenceDiagnostic {
    pub fn entire(&self) -> bool {
        self.radius_estimate.is_infinite()
    }

    pub fn last(&self) -> Option<f64> {
        self.r.values().next_back().copied()
    }
}

fn upper_half(top: u32) -> (u32, u32) {
    ((top / 2).max(1), top.max(1))
}

/// Root test on the regrouped solution components `U_1 ..= U_M`.
pub fn convergence_diagnostic(sol: &SeriesSolution, cfg: &DiagnosticConfig) -> ConvergenceDiagnostic {
    root_test(&sol.components, sol.truncation, cfg)
}

/// Root test on arbitrary homogeneous components, `j` running over `1..=top`.
pub fn root_test(
    components: &BTreeMap<u32, Polynomial>,
    top: u32,
    cfg: &DiagnosticConfig,
) -> ConvergenceDiagnostic {
    let mut r = BTreeMap::new();
    let mut unconverged = Vec::new();
    for j in 1..=top {
        let value = match components.get(&j) {
            Some(p) if !p.is_zero() => {
                let m = sphere_max(p, cfg.tol).expect("nonzero polynomial");
                if !m.converged {
                    unconverged.push(j);
                }
                (m.ln_value / f64::from(j)).exp()
            }
            _ => 0.0,
        };
        r.insert(j, value);
    }
    let window = cfg.window.unwrap_or_else(|| upper_half(top));
    let tail: Vec<f64> = r.range(window.0..=window.1).map(|(_, v)| *v).collect();
    let sup = tail.iter().copied().fold(0.0, f64::max);
    let radius_estimate = if sup < cfg.entire_threshold {
        Radius::Infinity
    } else {
        Radius::Finite(1.0 / sup)
    };
    let non_increasing = tail.windows(2).all(|w| w[1] <= w[0]);
    ConvergenceDiagnostic {
        r,
        radius_estimate,
        window,
        threshold: cfg.entire_threshold,
        non_increasing,
        unconverged,
    }
}

/// Growth estimate of entire data from the sphere maxima `M_m` of its
/// homogeneous components.
#[derive(Clone, Debug, Serialize)]
pub struct OrderTypeEstimate {
    /// `m ↦ ln M_m`, for the nonzero components.
    pub ln_m: BTreeMap<u32, f64>,
    /// `m ↦ m ln m / (−ln M_m)`, for `M_m ∈ (0, 1)`.
    pub rho_seq: BTreeMap<u32, f64>,
    pub rho_hat: f64,
    /// `m ↦ m M_m^{ρ̂/m}` over the window.
    pub type_seq: BTreeMap<u32, f64>,
    pub type_hat: f64,
    pub window: (u32, u32),
    /// Relative gap between the orders fitted on the window and on its upper half.
    pub rho_spread: f64,
    /// The data has finitely many components; order 0 by convention.
    pub polynomial: bool,
}

impl OrderTypeEstimate {
    /// Polynomial data: order and type 0.
    pub fn polynomial() -> Self {
        OrderTypeEstimate {
            ln_m: BTreeMap::new(),
            rho_seq: BTreeMap::new(),
            rho_hat: 0.0,
            type_seq: BTreeMap::new(),
            type_hat: 0.0,
            window: (0, 0),
            rho_spread: 0.0,
            polynomial: true,
        }
    }

    pub fn m_seq(&self) -> BTreeMap<u32, f64> {
        self.ln_m.iter().map(|(m, l)| (*m, l.exp())).collect()
    }
}

const MIN_COMPONENTS: usize = 8;

/// Sphere maxima of the data components, then [`order_type_from_log_norms`].
pub fn order_type_estimate(data: &HomogeneousSeries, tol: f64) -> Result<OrderTypeEstimate, SeriesError> {
    let ln_m = data
        .components()
        .iter()
        .map(|(m, f)| Ok((*m, sphere_max(f, tol)?.ln_value)))
        .collect::<Result<BTreeMap<_, _>, SeriesError>>()?;
    order_type_from_log_norms(&ln_m)
}

/// Order and type from `m ↦ ln M_m`.
///
/// The order comes from a least-squares fit of
/// `−ln M_m ≈ α m ln m + β m + γ ln m + c` over the upper half of the
/// available degrees, `ρ̂ = 1/α`; the raw ratios converge like `1/ln m` and
/// are reported only. The type is `max_window m M_m^{ρ̂/m} / (e ρ̂)`.
pub fn order_type_from_log_norms(ln_m: &BTreeMap<u32, f64>) -> Result<OrderTypeEstimate, SeriesError> {
    let ln_m: BTreeMap<u32, f64> = ln_m
        .iter()
        .filter(|(_, v)| v.is_finite())
        .map(|(m, v)| (*m, *v))
        .collect();
    if ln_m.len() < MIN_COMPONENTS {
        return Err(SeriesError::InsufficientData {
            found: ln_m.len(),
            required: MIN_COMPONENTS,
        });
    }
    let rho_seq: BTreeMap<u32, f64> = ln_m
        .iter()
        .filter(|(m, l)| **m >= 2 && **l < 0.0)
        .map(|(m, l)| {
            let mf = f64::from(*m);
            (*m, mf * mf.ln() / -l)
        })
        .collect();

    let degrees: Vec<u32> = ln_m.keys().copied().collect();
    let tail = &degrees[degrees.len() / 2..];
    let window = (tail[0], *tail.last().expect("nonempty"));
    let alpha = fit_growth_slope(tail, &ln_m)
        .ok_or_else(|| SeriesError::NotEntireLike("degenerate degree window".into()))?;
    let upper = &tail[tail.len() / 2..];
    let rho_spread = match fit_growth_slope(upper, &ln_m) {
        Some(a) if a > 0.0 && alpha > 0.0 => (alpha / a - 1.0).abs(),
        _ => f64::INFINITY,
    };

    let root = |m: u32| (ln_m[&m] / f64::from(m)).exp();
    let (r_first, r_last) = (root(tail[0].max(1)), root(window.1.max(1)));
    if !(alpha > 1e-3) || r_last >= r_first * (1.0 - 1e-9) {
        return Err(SeriesError::NotEntireLike(format!(
            "M_m^(1/m) goes from {r_first:.4} to {r_last:.4} on degrees {}..={}, fitted m ln m slope {alpha:.3e}",
            window.0, window.1
        )));
    }
    let rho_hat = 1.0 / alpha;
    let type_seq: BTreeMap<u32, f64> = tail
        .iter()
        .map(|&m| {
            let mf = f64::from(m);
            (m, mf * (rho_hat * ln_m[&m] / mf).exp())
        })
        .collect();
    let t_sup = type_seq.values().copied().fold(0.0, f64::max);
    Ok(OrderTypeEstimate {
        ln_m,
        rho_seq,
        rho_hat,
        type_seq,
        type_hat: t_sup / (std::f64::consts::E * rho_hat),
        window,
        rho_spread,
        polynomial: false,
    })
}

/// Coefficient of `m ln m` in a least-squares fit of `−ln M_m` over `degrees`,
/// dropping lower-order terms when the window is too short or degenerate.
fn fit_growth_slope(degrees: &[u32], ln_m: &BTreeMap<u32, f64>) -> Option<f64> {
    let y: Vec<f64> = degrees.iter().map(|m| -ln_m[m]).collect();
    let bases: &[&[usize]] = if degrees.len() >= 8 {
        &[&[0, 1, 2, 3], &[0, 1, 3], &[0, 1]]
    } else {
        &[&[0, 1, 3], &[0, 1]]
    };
    bases.iter().find_map(|cols| {
        let rows: Vec<Vec<f64>> = degrees
            .iter()
            .map(|&m| {
                let mf = f64::from(m);
                let lm = mf.max(1.0).ln();
                let all = [mf * lm, mf, lm, 1.0];
                cols.iter().map(|&c| all[c]).collect()
            })
            .collect();
        LeastSquares::new(&rows).map(|ls| ls.solve(&y)[0])
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct ComponentBoundReport {
    pub sup_v: f64,
    /// `k ↦ max|v_k| / (k^{n/2} max|v|)` on the unit sphere.
    pub ratios: BTreeMap<u32, f64>,
    pub max_ratio: f64,
    pub argmax: u32,
}

/// Ratios of each homogeneous part of a harmonic `v` against `k^{n/2}` times
/// its sphere maximum.
pub fn homog_component_bound_check(v: &Polynomial, tol: f64) -> Result<ComponentBoundReport, SeriesError> {
    let lap = v.laplacian();
    if !lap.is_zero() {
        return Err(SeriesError::NotHarmonic(lap));
    }
    let sup = sphere_max(v, tol)?;
    let half_n = v.dim() as f64 / 2.0;
    let deg = v.degree().finite().unwrap_or(0);
    let mut ratios = BTreeMap::new();
    let (mut max_ratio, mut argmax) = (0.0f64, 0);
    for k in 1..=deg {
        let vk = v.homogeneous_part(k);
        let ratio = if vk.is_zero() {
            0.0
        } else {
            let ln = sphere_max(&vk, tol)?.ln_value - half_n * f64::from(k).ln() - sup.ln_value;
            ln.exp()
        };
        if ratio > max_ratio {
            max_ratio = ratio;
            argmax = k;
        }
        ratios.insert(k, ratio);
    }
    Ok(ComponentBoundReport {
        sup_v: sup.value,
        ratios,
        max_ratio,
        argmax,
    })
}
