//! Sup-norm of a polynomial on the unit sphere `S^{n-1}`.
//!
//! A fixed-seed cloud of normalized Gaussian points seeds the search; the
//! best seeds are then refined by projected gradient ascent on `|f|`.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use smallvec::SmallVec;

use super::{ln_abs_rational, rational_to_f64, PolyError, Polynomial};

/// Floating-point copy of a polynomial, for fast repeated evaluation.
#[derive(Clone, Debug)]
pub struct FloatPoly {
    dim: usize,
    max_exp: usize,
    terms: Vec<(SmallVec<[u32; 6]>, f64)>,
    degree: u32,
}

impl FloatPoly {
    pub fn from_poly(p: &Polynomial) -> Self {
        Self::from_poly_scaled(p, None)
    }

    /// Coefficients divided by `scale` exactly before rounding to `f64`.
    fn from_poly_scaled(p: &Polynomial, scale: Option<&super::Rational>) -> Self {
        let terms: Vec<_> = p
            .terms()
            .map(|(e, c)| {
                let v = match scale {
                    Some(s) => rational_to_f64(&(c / s)),
                    None => rational_to_f64(c),
                };
                (SmallVec::from_slice(e.exponents()), v)
            })
            .collect();
        let max_exp = terms
            .iter()
            .flat_map(|(e, _)| e.iter().copied())
            .max()
            .unwrap_or(0) as usize;
        FloatPoly {
            dim: p.dim(),
            max_exp,
            terms,
            degree: p.degree().finite().unwrap_or(0),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    fn powers(&self, x: &[f64]) -> Vec<f64> {
        let w = self.max_exp + 1;
        let mut pw = vec![1.0; self.dim * w];
        for (i, &xi) in x.iter().enumerate() {
            for k in 1..w {
                pw[i * w + k] = pw[i * w + k - 1] * xi;
            }
        }
        pw
    }

    pub fn eval(&self, x: &[f64]) -> f64 {
        let w = self.max_exp + 1;
        let pw = self.powers(x);
        self.terms
            .iter()
            .map(|(e, c)| {
                e.iter()
                    .enumerate()
                    .fold(*c, |acc, (i, &k)| acc * pw[i * w + k as usize])
            })
            .sum()
    }

    /// Value and gradient.
    pub fn eval_grad(&self, x: &[f64], grad: &mut [f64]) -> f64 {
        let w = self.max_exp + 1;
        let pw = self.powers(x);
        grad.iter_mut().for_each(|g| *g = 0.0);
        let mut val = 0.0;
        for (e, c) in &self.terms {
            val += e
                .iter()
                .enumerate()
                .fold(*c, |acc, (i, &k)| acc * pw[i * w + k as usize]);
            for (d, g) in grad.iter_mut().enumerate() {
                let kd = e[d];
                if kd == 0 {
                    continue;
                }
                let mut t = c * f64::from(kd);
                for (i, &k) in e.iter().enumerate() {
                    let k = if i == d { k - 1 } else { k };
                    t *= pw[i * w + k as usize];
                }
                *g += t;
            }
        }
        val
    }
}

#[derive(Clone, Debug)]
pub struct SphereMaxConfig {
    /// Number of quasi-random seed points.
    pub seeds: usize,
    /// How many of the best seeds are refined by local ascent.
    pub starts: usize,
    pub tol: f64,
    pub max_iter: usize,
    pub seed: u64,
}

impl Default for SphereMaxConfig {
    fn default() -> Self {
        SphereMaxConfig {
            seeds: 4096,
            starts: 24,
            tol: 1e-9,
            max_iter: 3000,
            seed: 0x5eed_cafe,
        }
    }
}

impl SphereMaxConfig {
    pub fn with_tol(tol: f64) -> Self {
        SphereMaxConfig {
            tol,
            ..Self::default()
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SphereMax {
    pub value: f64,
    /// Natural log of `value`, valid even when `value` under/overflows `f64`.
    pub ln_value: f64,
    pub argmax: Vec<f64>,
    /// False when the best local ascent hit its iteration budget.
    pub converged: bool,
}

/// `max_{θ ∈ S^{n-1}} |f(θ)|` with default configuration and the given relative tolerance.
pub fn sphere_max(f: &Polynomial, tol: f64) -> Result<SphereMax, PolyError> {
    sphere_max_with(f, &SphereMaxConfig::with_tol(tol))
}

/// Coefficients are rescaled by the largest one before rounding, so
/// `ln_value` stays meaningful for extremely small or large polynomials.
pub fn sphere_max_with(f: &Polynomial, cfg: &SphereMaxConfig) -> Result<SphereMax, PolyError> {
    let scale = f.max_abs_coeff().ok_or(PolyError::ZeroPolynomial)?;
    let ln_scale = ln_abs_rational(&scale);
    let fp = FloatPoly::from_poly_scaled(f, Some(&scale));
    let (v, argmax, converged) = maximize_abs(&fp, cfg);
    let ln_value = v.ln() + ln_scale;
    Ok(SphereMax {
        value: ln_value.exp(),
        ln_value,
        argmax,
        converged,
    })
}

pub(crate) fn seed_points(dim: usize, count: usize, seed: u64) -> Vec<Vec<f64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (dim as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let v: Vec<f64> = (0..dim).map(|_| StandardNormal.sample(&mut rng)).collect();
        let norm = v.iter().map(|a| a * a).sum::<f64>().sqrt();
        if norm > 1e-12 {
            out.push(v.into_iter().map(|a| a / norm).collect());
        }
    }
    out
}

fn normalize(v: &mut [f64]) {
    let n = v.iter().map(|a| a * a).sum::<f64>().sqrt();
    v.iter_mut().for_each(|a| *a /= n);
}

fn maximize_abs(fp: &FloatPoly, cfg: &SphereMaxConfig) -> (f64, Vec<f64>, bool) {
    let dim = fp.dim();
    let seeds = seed_points(dim, cfg.seeds.max(1), cfg.seed);
    let mut scored: Vec<(f64, usize)> = seeds
        .iter()
        .enumerate()
        .map(|(i, x)| (fp.eval(x).abs(), i))
        .collect();
    scored.sort_by(|a, b| b.0.total_cmp(&a.0).then(a.1.cmp(&b.1)));

    let mut best = (scored[0].0, seeds[scored[0].1].clone(), true);
    for &(_, idx) in scored.iter().take(cfg.starts.max(1)) {
        let (v, x, ok) = ascend(fp, &seeds[idx], cfg);
        if v > best.0 {
            best = (v, x, ok);
        }
    }
    best
}

/// Projected gradient ascent of `|f|` on the sphere from `x0`.
fn ascend(fp: &FloatPoly, x0: &[f64], cfg: &SphereMaxConfig) -> (f64, Vec<f64>, bool) {
    let dim = fp.dim();
    let deg = f64::from(fp.degree.max(1));
    let mut x = x0.to_vec();
    let mut grad = vec![0.0; dim];
    let mut val = fp.eval_grad(&x, &mut grad);
    let sign = if val < 0.0 { -1.0 } else { 1.0 };
    val *= sign;
    // |f| - f_max ≈ -(|grad_T| / (deg·|f|))² |f| / 2 near a maximum
    let grad_tol = (0.2 * cfg.tol).sqrt();
    let mut step = 1.0 / (deg * deg);
    let mut trial = vec![0.0; dim];
    let mut tgrad = vec![0.0; dim];

    for _ in 0..cfg.max_iter {
        let radial: f64 = grad.iter().zip(&x).map(|(g, a)| g * a).sum();
        for i in 0..dim {
            tgrad[i] = sign * (grad[i] - radial * x[i]);
        }
        let gn = tgrad.iter().map(|a| a * a).sum::<f64>().sqrt();
        if val == 0.0 || gn <= grad_tol * deg * val {
            return (val, x, true);
        }
        loop {
            for i in 0..dim {
                trial[i] = x[i] + step * tgrad[i] / val;
            }
            normalize(&mut trial);
            let tv = sign * fp.eval(&trial);
            if tv > val {
                x.copy_from_slice(&trial);
                val = sign * fp.eval_grad(&x, &mut grad);
                step *= 1.5;
                break;
            }
            step *= 0.5;
            if step < 1e-20 {
                // no ascent direction left at working precision
                return (val, x, true);
            }
        }
    }
    (val, x, false)
}
