//! Explicit majorant for the degree-`j` tail `Σ_{m ≥ j} u_{m,j}`.
//!
//! Everything is computed in the log domain: at `j = 1000` the majorant is
//! far below the smallest positive `f64`.

use std::collections::BTreeMap;

use serde::Serialize;

use super::SeriesError;
use crate::numeric::{ln_factorial, log_add_exp};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TailBoundParams {
    pub n: usize,
    /// Largest semi-axis of the base.
    pub a_max: f64,
    /// Principal Dirichlet eigenvalue of the base.
    pub lambda: f64,
    pub delta1: f64,
    pub delta2: f64,
    pub c_hat: f64,
    pub c_prime: f64,
    pub c_dprime: f64,
    pub c_tprime: f64,
}

impl TailBoundParams {
    /// Unspecified constants default to 1.
    pub fn new(n: usize, a_max: f64, lambda: f64, delta1: f64, delta2: f64) -> Result<Self, SeriesError> {
        let p = TailBoundParams {
            n,
            a_max,
            lambda,
            delta1,
            delta2,
            c_hat: 1.0,
            c_prime: 1.0,
            c_dprime: 1.0,
            c_tprime: 1.0,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<(), SeriesError> {
        if !(self.delta1 > 0.0) || !(self.delta2 > 0.0) {
            return Err(SeriesError::DivergentConfiguration(format!(
                "delta1 = {}, delta2 = {}; both must be positive",
                self.delta1, self.delta2
            )));
        }
        if !(self.a_max > 0.0) || !(self.lambda > 0.0) {
            return Err(SeriesError::DivergentConfiguration(
                "A and lambda must be positive".into(),
            ));
        }
        let consts = [self.c_hat, self.c_prime, self.c_dprime, self.c_tprime];
        if consts.iter().any(|c| !(*c > 0.0)) {
            return Err(SeriesError::DivergentConfiguration(
                "constants must be positive".into(),
            ));
        }
        Ok(())
    }

    pub fn delta(&self) -> f64 {
        self.delta1 + self.delta2
    }

    /// `B = 2 max(A, 1/√λ)`.
    pub fn b(&self) -> f64 {
        2.0 * self.a_max.max(1.0 / self.lambda.sqrt())
    }

    /// `ln ∫_0^∞ (A^m + y^m) e^{−√λ y} dy = ln(A^m/√λ + m!/λ^{(m+1)/2})`.
    pub fn ln_moment_integral(&self, m: u32) -> f64 {
        self.ln_moment_factor(m) - 0.5 * self.lambda.ln()
    }

    /// `ln(A^m + m!/λ^{m/2})`; the factor is 2 at `m = 0`.
    pub fn ln_moment_factor(&self, m: u32) -> f64 {
        let mf = f64::from(m);
        log_add_exp(
            mf * self.a_max.ln(),
            ln_factorial(m) - 0.5 * mf * self.lambda.ln(),
        )
    }

    /// `ln(Ĉ M_m B^m m!)`, the per-degree bound on `max_{S^{n-1}} |u_m|`.
    pub fn ln_per_degree(&self, ln_m_m: f64, m: u32) -> f64 {
        self.c_hat.ln() + ln_m_m + f64::from(m) * self.b().ln() + ln_factorial(m)
    }

    /// `ln sup_{m ≥ 1} e m (B/e)^m m^{−m δ₂}`: the size the constant absorbing
    /// the `δ₂` factor has to reach for the final sum to dominate.
    pub fn ln_absorbed_constant(&self) -> f64 {
        let lb = self.b().ln();
        let mut best = f64::NEG_INFINITY;
        let mut m = 1u32;
        loop {
            let mf = f64::from(m);
            let v = 1.0 + mf.ln() + mf * (lb - 1.0) - self.delta2 * mf * mf.ln();
            best = best.max(v);
            // past the maximum the exponent only decreases
            if self.delta2 * mf.ln() > lb + 1.0 && v < best - 50.0 {
                break;
            }
            m += 1;
            if m > 1_000_000 {
                break;
            }
        }
        best
    }

    /// `ln(C‴ j^{n/2} j^{−δ₁ j} / (1 − j^{−δ₁}))`.
    pub fn ln_majorant(&self, j: u32) -> f64 {
        let lj = f64::from(j).ln();
        self.c_tprime.ln() + 0.5 * self.n as f64 * lj
            - self.delta1 * f64::from(j) * lj
            - (-(-self.delta1 * lj).exp()).ln_1p()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct AuditTerm {
    pub m: u32,
    /// `ln(Ĉ M_m B^m m!)`.
    pub ln_per_degree: f64,
    /// The same with `m!` replaced by `e m^{m+1} e^{−m}`.
    pub ln_stirling: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct TailBound {
    pub j: u32,
    pub ln_value: f64,
    /// `exp(ln_value)`, zero once it underflows.
    pub value: f64,
    pub audit: Vec<AuditTerm>,
    /// Every audit term obeys the factorial estimate.
    pub stirling_dominates: bool,
    pub ln_absorbed_constant: f64,
}

/// Majorant of the degree-`j` tail; `ln_m_bound` maps `m ↦ ln M_m` and only
/// feeds the audit terms with `m ≥ j`.
pub fn tail_bound(
    params: &TailBoundParams,
    ln_m_bound: &BTreeMap<u32, f64>,
    j: u32,
) -> Result<TailBound, SeriesError> {
    params.validate()?;
    if j < 2 {
        return Err(SeriesError::DivergentConfiguration(format!(
            "j = {j}; need j ≥ 2"
        )));
    }
    let audit: Vec<AuditTerm> = ln_m_bound
        .range(j..)
        .map(|(&m, &l)| {
            let mf = f64::from(m);
            let ln_stirling = params.c_hat.ln() + l + mf * params.b().ln() + 1.0 + (mf + 1.0) * mf.ln() - mf;
            AuditTerm {
                m,
                ln_per_degree: params.ln_per_degree(l, m),
                ln_stirling,
            }
        })
        .collect();
    let stirling_dominates = audit.iter().all(|a| a.ln_per_degree <= a.ln_stirling + 1e-12);
    let ln_value = params.ln_majorant(j);
    Ok(TailBound {
        j,
        ln_value,
        value: ln_value.exp(),
        audit,
        stirling_dominates,
        ln_absorbed_constant: params.ln_absorbed_constant(),
    })
}

/// `j ↦ ln majorant(j)` over a range.
pub fn majorant_sequence(params: &TailBoundParams, js: impl IntoIterator<Item = u32>) -> BTreeMap<u32, f64> {
    js.into_iter().map(|j| (j, params.ln_majorant(j))).collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct JthRootSequence {
    pub roots: BTreeMap<u32, f64>,
    pub argmax: u32,
    /// Strictly decreasing from the argmax on.
    pub decreasing_after_argmax: bool,
}

impl JthRootSequence {
    pub fn first_below(&self, threshold: f64) -> Option<u32> {
        self.roots.iter().find(|(_, r)| **r < threshold).map(|(j, _)| *j)
    }
}

/// `j ↦ bound(j)^{1/j}` from `j ↦ ln bound(j)`; `j = 0` entries are skipped.
pub fn jth_root_sequence(ln_bound: &BTreeMap<u32, f64>) -> JthRootSequence {
    let roots: BTreeMap<u32, f64> = ln_bound
        .iter()
        .filter(|(j, _)| **j > 0)
        .map(|(j, l)| (*j, (l / f64::from(*j)).exp()))
        .collect();
    let argmax = roots
        .iter()
        .fold(None::<(u32, f64)>, |acc, (j, r)| match acc {
            Some((_, best)) if best >= *r => acc,
            _ => Some((*j, *r)),
        })
        .map_or(0, |(j, _)| j);
    let after: Vec<f64> = roots.range(argmax..).map(|(_, r)| *r).collect();
    JthRootSequence {
        decreasing_after_argmax: after.windows(2).all(|w| w[1] < w[0]),
        roots,
        argmax,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params() -> TailBoundParams {
        TailBoundParams::new(3, 1.0, 5.783185962947, 0.25, 0.25).unwrap()
    }

    #[test]
    fn moment_factor_at_zero_is_two() {
        for lambda in [0.3, 1.0, 5.78] {
            let p = TailBoundParams { lambda, ..params() };
            assert!((p.ln_moment_factor(0) - 2f64.ln()).abs() < 1e-15);
        }
    }

    #[test]
    fn moment_integral_matches_quadrature() {
        let p = TailBoundParams {
            a_max: 1.5,
            lambda: 2.0,
            ..params()
        };
        let s = p.lambda.sqrt();
        for m in [0u32, 1, 3, 6] {
            // composite Simpson on [0, 80]
            let n = 200_000;
            let h = 80.0 / f64::from(n);
            let g = |y: f64| (1.5f64.powi(m as i32) + y.powi(m as i32)) * (-s * y).exp();
            let mut acc = g(0.0) + g(80.0);
            for i in 1..n {
                acc += g(f64::from(i) * h) * if i % 2 == 1 { 4.0 } else { 2.0 };
            }
            let quad = acc * h / 3.0;
            let want = p.ln_moment_integral(m).exp();
            assert!((quad - want).abs() < 1e-9 * want, "m={m}: {quad} vs {want}");
        }
    }

    #[test]
    fn b_uses_larger_scale() {
        let p = params();
        assert_eq!(p.b(), 2.0);
        let p = TailBoundParams {
            lambda: 0.25,
            ..params()
        };
        assert_eq!(p.b(), 4.0);
    }

    #[test]
    fn geometric_sum_oracle() {
        let p = params();
        let j = 16u32;
        // C‴ j^{n/2} Σ_{m ≥ j} j^{−δ₁ m}, summed term by term
        let x = f64::from(j).powf(-0.25);
        let mut sum = 0.0f64;
        let mut term = x.powi(j as i32);
        while term > 1e-30 * sum.max(f64::MIN_POSITIVE) {
            sum += term;
            term *= x;
        }
        let oracle = f64::from(j).powf(1.5) * sum;
        let b = tail_bound(&p, &BTreeMap::new(), j).unwrap();
        assert!(
            (b.value - oracle).abs() <= 1e-12 * oracle,
            "{} vs {oracle}",
            b.value
        );
    }

    #[test]
    fn bound_decays_over_range() {
        let p = params();
        let ln: Vec<f64> = (2..=1000).map(|j| p.ln_majorant(j)).collect();
        assert!(ln.iter().all(|v| v.is_finite()));
        assert!(ln.last().unwrap() < &-1000.0);
        assert!(ln[100..].windows(2).all(|w| w[1] < w[0]));
    }

    #[test]
    fn root_sequence_examples() {
        let ones: BTreeMap<u32, f64> = (1..10).map(|j| (j, 0.0)).collect();
        assert!(jth_root_sequence(&ones).roots.values().all(|r| *r == 1.0));
        let geo: BTreeMap<u32, f64> = (1..10).map(|j| (j, -f64::from(j) * 3f64.ln())).collect();
        assert!(jth_root_sequence(&geo)
            .roots
            .values()
            .all(|r| (r - 1.0 / 3.0).abs() < 1e-15));
    }

    #[test]
    fn majorant_roots_drop_below_threshold() {
        let p = params();
        let seq = jth_root_sequence(&majorant_sequence(&p, 2..=400));
        assert!(seq.decreasing_after_argmax);
        // the root behaves like j^{-1/4}: 0.277 at j = 200
        assert!((seq.roots[&200] - 0.2772).abs() < 1e-3, "{}", seq.roots[&200]);
        for (j, r) in seq.roots.range(2..=400) {
            let jf = f64::from(*j);
            let direct = (jf.powf(1.5) / (1.0 - jf.powf(-0.25))).powf(1.0 / jf) * jf.powf(-0.25);
            assert!((r - direct).abs() < 1e-12 * direct);
        }
    }

    #[test]
    fn rejects_nonpositive_delta() {
        assert!(matches!(
            TailBoundParams::new(3, 1.0, 1.0, 0.0, 0.1),
            Err(SeriesError::DivergentConfiguration(_))
        ));
        assert!(tail_bound(&params(), &BTreeMap::new(), 1).is_err());
    }

    #[test]
    fn audit_terms_obey_factorial_estimate() {
        let p = params();
        let ln_m: BTreeMap<u32, f64> = (1..=60).map(|m| (m, -2.0 * ln_factorial(m))).collect();
        let b = tail_bound(&p, &ln_m, 10).unwrap();
        assert_eq!(b.audit.len(), 51);
        assert!(b.stirling_dominates);
        assert!(b.ln_absorbed_constant.is_finite());
    }
}
