/// `J₀(x)` from its power series; accurate to ~1e-15 for `|x| ≤ 8`.
pub fn j0(x: f64) -> f64 {
    let q = -(x * x) / 4.0;
    let mut term = 1.0f64;
    let mut sum = 1.0f64;
    let mut k = 1.0;
    while term.abs() > 1e-18 * sum.abs().max(1e-300) || k < 3.0 {
        term *= q / (k * k);
        sum += term;
        k += 1.0;
        if k > 200.0 {
            break;
        }
    }
    sum
}

/// First positive zero of `J₀`, by bisection on the bracket `[2, 3]`.
pub fn j0_first_zero() -> f64 {
    let (mut lo, mut hi) = (2.0f64, 3.0f64);
    for _ in 0..60 {
        let mid = 0.5 * (lo + hi);
        if j0(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Principal Dirichlet eigenvalue of the disk of radius `a`.
pub fn disk_lambda(a: f64) -> f64 {
    let z = j0_first_zero();
    (z / a) * (z / a)
}
