//! Small dense least-squares helpers shared by the estimators.

/// Linear least-squares projector for a design matrix given by rows.
///
/// Stores `P = R⁻¹Qᵀ` from a thin QR of the column-scaled design, so the
/// coefficients of any response `y` are `P y` and linear functionals of the
/// coefficients have explicit weights (used for delta-method errors).
#[derive(Clone, Debug)]
pub(crate) struct LeastSquares {
    /// `p × N`, row `k` holds the weights of coefficient `k`.
    weights: Vec<Vec<f64>>,
}

impl LeastSquares {
    /// `None` when the design is rank deficient or has fewer rows than columns.
    pub(crate) fn new(rows: &[Vec<f64>]) -> Option<Self> {
        let n = rows.len();
        let p = rows.first()?.len();
        if n < p || p == 0 {
            return None;
        }
        let mut scale = vec![0.0f64; p];
        for r in rows {
            for (k, v) in r.iter().enumerate() {
                scale[k] = scale[k].max(v.abs());
            }
        }
        if scale.contains(&0.0) {
            return None;
        }
        // columns of the scaled design
        let mut q: Vec<Vec<f64>> = (0..p)
            .map(|k| rows.iter().map(|r| r[k] / scale[k]).collect())
            .collect();
        let mut r = vec![vec![0.0; p]; p];
        for k in 0..p {
            let before = norm(&q[k]);
            // two passes of modified Gram-Schmidt keep Q orthogonal
            for _ in 0..2 {
                for i in 0..k {
                    let d = dot(&q[i], &q[k]);
                    r[i][k] += d;
                    let (head, tail) = q.split_at_mut(k);
                    for (a, b) in tail[0].iter_mut().zip(&head[i]) {
                        *a -= d * b;
                    }
                }
            }
            let nk = norm(&q[k]);
            if nk <= 1e-12 * before.max(f64::MIN_POSITIVE) {
                return None;
            }
            r[k][k] = nk;
            q[k].iter_mut().for_each(|a| *a /= nk);
        }
        // back substitution of R X = Qᵀ, then undo the column scaling
        let mut weights = vec![vec![0.0; n]; p];
        for k in (0..p).rev() {
            for col in 0..n {
                let mut acc = q[k][col];
                for i in k + 1..p {
                    acc -= r[k][i] * weights[i][col];
                }
                weights[k][col] = acc / r[k][k];
            }
        }
        for (k, w) in weights.iter_mut().enumerate() {
            w.iter_mut().for_each(|a| *a /= scale[k]);
        }
        Some(LeastSquares { weights })
    }

    pub(crate) fn solve(&self, y: &[f64]) -> Vec<f64> {
        self.weights.iter().map(|w| dot(w, y)).collect()
    }

    pub(crate) fn weights(&self, k: usize) -> &[f64] {
        &self.weights[k]
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

/// `ln m!` by direct summation.
pub(crate) fn ln_factorial(m: u32) -> f64 {
    (2..=m).map(|k| f64::from(k).ln()).sum()
}

/// `ln(e^a + e^b)` without overflow.
pub(crate) fn log_add_exp(a: f64, b: f64) -> f64 {
    if a == f64::NEG_INFINITY {
        return b;
    }
    if b == f64::NEG_INFINITY {
        return a;
    }
    let m = a.max(b);
    m + ((a - m).exp() + (b - m).exp()).ln()
}
