//! Closest point on an ellipse.

/// Distance from `(x, y)` to the ellipse `x²/a² + y²/b² = 1` and the closest
/// point on it. Works for points inside or outside.
///
/// Folds to the first quadrant, then solves the Lagrange equation
/// `(a x₀/(s+a²))² + (b y₀/(s+b²))² = 1` for `s` by Newton steps kept inside
/// a shrinking bisection bracket.
pub fn ellipse_distance(a: f64, b: f64, x: f64, y: f64) -> (f64, [f64; 2]) {
    if a < b {
        let (d, [py, px]) = ellipse_distance(b, a, y, x);
        return (d, [px, py]);
    }
    let (y0, y1) = (x.abs(), y.abs());
    let (p0, p1) = closest_first_quadrant(a, b, y0, y1);
    let d = (p0 - y0).hypot(p1 - y1);
    (d, [p0.copysign(x), p1.copysign(y)])
}

/// `a ≥ b`, `y0, y1 ≥ 0`.
fn closest_first_quadrant(a: f64, b: f64, y0: f64, y1: f64) -> (f64, f64) {
    if y1 > 0.0 {
        if y0 > 0.0 {
            let (a2, b2) = (a * a, b * b);
            let g = |s: f64| {
                let r0 = a * y0 / (s + a2);
                let r1 = b * y1 / (s + b2);
                (
                    r0 * r0 + r1 * r1 - 1.0,
                    -2.0 * (r0 * r0 / (s + a2) + r1 * r1 / (s + b2)),
                )
            };
            // g is decreasing and convex on (−b², ∞)
            let mut lo = -b2 + b * y1;
            let mut hi = -b2 + (a2 * y0 * y0 + b2 * y1 * y1).sqrt();
            let mut s = hi;
            for _ in 0..200 {
                let (gv, dg) = g(s);
                if gv.abs() < 1e-15 {
                    break;
                }
                if gv > 0.0 {
                    lo = s;
                } else {
                    hi = s;
                }
                if hi - lo <= 1e-15 * (hi.abs() + lo.abs()).max(b2) {
                    break;
                }
                let newton = s - gv / dg;
                s = if newton > lo && newton < hi {
                    newton
                } else {
                    0.5 * (lo + hi)
                };
            }
            let (p0, p1) = (a2 * y0 / (s + a2), b2 * y1 / (s + b2));
            // near the pole at −b² the residual in s is amplified; snap onto the curve
            let r = ((p0 / a).powi(2) + (p1 / b).powi(2)).sqrt();
            (p0 / r, p1 / r)
        } else {
            (0.0, b)
        }
    } else {
        let num = a * y0;
        let den = a * a - b * b;
        if num < den {
            let x0 = a * num / den;
            let x1 = b * (1.0 - (x0 / a) * (x0 / a)).max(0.0).sqrt();
            (x0, x1)
        } else {
            (a, 0.0)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    // dense parameter scan refined by golden-section search on each coarse minimum
    fn brute_force(a: f64, b: f64, x: f64, y: f64) -> f64 {
        let d = |t: f64| (a * t.cos() - x).hypot(b * t.sin() - y);
        let n = 20_000;
        let step = std::f64::consts::TAU / f64::from(n);
        let mut best = f64::INFINITY;
        for i in 0..n {
            let t = f64::from(i) * step;
            if d(t) <= d(t - step) && d(t) <= d(t + step) {
                let (mut lo, mut hi) = (t - step, t + step);
                let g = 0.5 * (5f64.sqrt() - 1.0);
                for _ in 0..100 {
                    let m1 = hi - g * (hi - lo);
                    let m2 = lo + g * (hi - lo);
                    if d(m1) < d(m2) {
                        hi = m2;
                    } else {
                        lo = m1;
                    }
                }
                best = best.min(d(0.5 * (lo + hi)));
            }
        }
        best
    }

    #[test]
    fn circle_matches_radial_distance() {
        for (x, y) in [(0.0, 0.0), (0.3, -0.4), (0.999, 0.0), (0.0, -0.2)] {
            let (d, p) = ellipse_distance(1.0, 1.0, x, y);
            assert!((d - (1.0 - f64::hypot(x, y))).abs() < 1e-12, "({x}, {y}): {d}");
            assert!((p[0].hypot(p[1]) - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn axis_cases() {
        // centre of a (2, 1) ellipse: nearest points are (0, ±1)
        assert!((ellipse_distance(2.0, 1.0, 0.0, 0.0).0 - 1.0).abs() < 1e-15);
        // on the major axis near the vertex the vertex wins
        assert!((ellipse_distance(2.0, 1.0, 1.9, 0.0).0 - 0.1).abs() < 1e-12);
        // on the major axis inside the evolute
        let (d, _) = ellipse_distance(2.0, 1.0, 0.5, 0.0);
        assert!((d - brute_force(2.0, 1.0, 0.5, 0.0)).abs() < 1e-10);
        // swapped orientation, off-axis nearest point
        let (d, p) = ellipse_distance(1.0, 3.0, 0.0, 2.5);
        assert!((d - brute_force(1.0, 3.0, 0.0, 2.5)).abs() < 1e-10);
        assert!(d < 0.5 && p[0] != 0.0);
    }

    proptest! {
        #[test]
        fn matches_brute_force(a in 0.3f64..4.0, b in 0.3f64..4.0, u in -1.0f64..1.0, v in -1.0f64..1.0) {
            // points inside, scaled into the ellipse
            let s = (u * u + v * v).sqrt().max(1.0);
            let (x, y) = (a * u / s * 0.999, b * v / s * 0.999);
            let (d, p) = ellipse_distance(a, b, x, y);
            let want = brute_force(a, b, x, y);
            prop_assert!((d - want).abs() <= 1e-9 * a.max(b), "{} vs {}", d, want);
            prop_assert!(((p[0] / a).powi(2) + (p[1] / b).powi(2) - 1.0).abs() < 1e-12);
        }
    }
}
