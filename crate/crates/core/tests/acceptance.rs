//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Criteria listed in `EXPECTED_FAILURES` are reported as FAIL but do not
//! fail the process unless `CYLHARM_ACCEPTANCE_STRICT=1`.

use std::collections::BTreeMap;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Exp};
use rayon::prelude::*;
use serde_json::Value;

use cylharm::corpus::{dirichlet_item, harmonic_item, random_domain};
use cylharm::fischer::homogeneous_block_nonsingular;
use cylharm::mc::{decay_fit, walk_rng, DecayFitConfig};
use cylharm::poly::{parse_polynomial, rat, write_polynomial};
use cylharm::series::{
    convergence_diagnostic, homog_component_bound_check, jth_root_sequence, majorant_sequence,
    order_type_from_log_norms, root_test, series_solve, tail_bound, DiagnosticConfig, HomogeneousSeries,
    Radius, TailBoundParams,
};
use cylharm::spectral::{disk_lambda, fd_dirichlet_eigen, null_solution_sample, BaseDomain};
use cylharm::{solve_dirichlet_poly, verify_solution, DomainKind, DomainSpec};

type Check = Result<(bool, String), Box<dyn std::error::Error>>;
type Criterion = (u32, &'static str, fn(&mut Shared) -> Check);

const EXPECTED_FAILURES: &[u32] = &[8];

const SQRT_LAMBDA_DISK: f64 = 2.404825557695773;

#[derive(Default)]
struct Shared {
    corpus_digests: Option<Vec<String>>,
    decay_report: Option<Value>,
}

fn ln_fact(m: u32) -> f64 {
    (2..=m).map(|k| f64::from(k).ln()).sum()
}

fn pool(threads: usize) -> rayon::ThreadPool {
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .unwrap()
}

fn cli_json(args: &[String]) -> (i32, Value, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("cylharm".to_string()).chain(args.iter().cloned());
    let code = cylharm::cli::run(argv, &mut out, &mut err);
    let v = serde_json::from_slice(&out).unwrap_or(Value::Null);
    (code, v, String::from_utf8_lossy(&err).into_owned())
}

fn argv(parts: &[&str]) -> Vec<String> {
    parts.iter().map(|s| s.to_string()).collect()
}

/// Replays a report's manifest argv under another worker count.
fn replay(report: &Value, threads: usize) -> Value {
    let recorded: Vec<String> = report["manifest"]["argv"]
        .as_array()
        .unwrap()
        .iter()
        .map(|a| a.as_str().unwrap().to_string())
        .collect();
    let mut args = Vec::new();
    let mut it = recorded.into_iter();
    while let Some(a) = it.next() {
        if a == "--threads" {
            it.next();
        } else {
            args.push(a);
        }
    }
    args.extend(["--threads".into(), threads.to_string()]);
    cli_json(&args).1
}

fn corpus_solve(threads: usize) -> Result<Vec<(bool, String)>, String> {
    pool(threads).install(|| {
        (0..200u64)
            .into_par_iter()
            .map(|i| {
                let dim = 3 + (i % 2) as usize;
                let (domain, f) = dirichlet_item(2024, i, dim, 10);
                let (u, cert) = solve_dirichlet_poly(&domain, &f).map_err(|e| format!("item {i}: {e}"))?;
                let independent = verify_solution(&domain, &f, &u).is_ok();
                let ok = cert.holds(&domain, &f, &u) && cert.residual_laplacian.is_zero() && independent;
                Ok((ok, format!("{}|{}", cert.digest(), write_polynomial(&u))))
            })
            .collect()
    })
}

fn c1(sh: &mut Shared) -> Check {
    let res = corpus_solve(4)?;
    let failed: Vec<usize> = res
        .iter()
        .enumerate()
        .filter(|(_, r)| !r.0)
        .map(|(i, _)| i)
        .collect();
    sh.corpus_digests = Some(res.into_iter().map(|r| r.1).collect());
    Ok((
        failed.is_empty(),
        format!("200 items (n = 3, 4; deg ≤ 10), certificate failures {failed:?}"),
    ))
}

fn c2(_: &mut Shared) -> Check {
    let mut rng = walk_rng(77, 0);
    let mut singular = Vec::new();
    let mut blocks = 0;
    for kind in [DomainKind::Cylinder, DomainKind::Ellipsoid] {
        for _ in 0..20 {
            let d = random_domain(&mut rng, kind, 3);
            for k in 0..=12 {
                blocks += 1;
                if !homogeneous_block_nonsingular(&d, k) {
                    singular.push(format!("{d} k={k}"));
                }
            }
        }
    }
    Ok((
        singular.is_empty(),
        format!("{blocks} blocks over 40 domains, singular: {singular:?}"),
    ))
}

fn c3(_: &mut Shared) -> Check {
    let d = DomainSpec::unit_circular_cylinder(3);
    let f = parse_polynomial("dim 3\n1 2 0 0\n")?;
    let want = parse_polynomial("dim 3\n1/2 0 0 0\n1/2 2 0 0\n-1/2 0 2 0\n")?;
    let (u, cert) = solve_dirichlet_poly(&d, &f)?;
    Ok((u == want && cert.holds(&d, &f, &u), format!("u = {u}")))
}

fn c4(_: &mut Shared) -> Check {
    let d = DomainSpec::unit_circular_cylinder(3);
    let mut ok = true;
    let mut last = Vec::new();
    let mut notes = Vec::new();
    for m in [16, 24, 32] {
        let data = HomogeneousSeries::powfact2(3, rat(1, 1), 0, m)?;
        let sol = series_solve(&d, &data)?;
        let diag = convergence_diagnostic(&sol, &DiagnosticConfig::default());
        let r_m = diag.r[&m];
        ok &= sol.certificates_hold(&data) && diag.non_increasing && diag.unconverged.is_empty();
        notes.push(format!("r_{m} = {r_m:.5}"));
        last.push(r_m);
    }
    ok &= last.windows(2).all(|w| w[1] < w[0]) && last[2] < 0.05;
    Ok((ok, format!("{}, threshold 0.05", notes.join(", "))))
}

fn c5(_: &mut Shared) -> Check {
    let mut ok = true;
    let mut notes = Vec::new();
    for (c, r_true) in [(rat(2, 1), 0.5), (rat(1, 1), 1.0), (rat(1, 2), 2.0)] {
        let data = HomogeneousSeries::geom(3, c, 40)?;
        let est = root_test(data.components(), 40, &DiagnosticConfig::default()).radius_estimate;
        let r = match est {
            Radius::Finite(r) => r,
            Radius::Infinity => f64::INFINITY,
        };
        ok &= ((r - r_true) / r_true).abs() <= 0.05;
        notes.push(format!("R = {r_true}: {r:.6}"));
    }
    Ok((ok, notes.join(", ")))
}

fn c6(_: &mut Shared) -> Check {
    let fact: BTreeMap<u32, f64> = (1..=200).map(|m| (m, -2.0 * ln_fact(m))).collect();
    let a = order_type_from_log_norms(&fact)?;
    let pow: BTreeMap<u32, f64> = (1..=200)
        .map(|m| (m, -2.0 * f64::from(m) * f64::from(m).ln()))
        .collect();
    let b = order_type_from_log_norms(&pow)?;
    let rel = |x: f64, y: f64| ((x - y) / y).abs();
    let e = std::f64::consts::E;
    let ok = rel(a.rho_hat, 0.5) <= 0.05
        && rel(a.type_hat, 2.0) <= 0.05
        && rel(b.rho_hat, 0.5) <= 0.05
        && rel(b.type_hat, 2.0 / e) <= 0.05;
    Ok((
        ok,
        format!(
            "1/(m!)^2: rho {:.4} type {:.4}; m^-2m: rho {:.4} type {:.4} (2/e = {:.4})",
            a.rho_hat,
            a.type_hat,
            b.rho_hat,
            b.type_hat,
            2.0 / e
        ),
    ))
}

fn corpus_ratios(seed: u64) -> Result<Vec<f64>, String> {
    (0..100u64)
        .into_par_iter()
        .map(|i| {
            let v = harmonic_item(seed, i, 3, 12).map_err(|e| e.to_string())?;
            Ok(homog_component_bound_check(&v, 1e-9)
                .map_err(|e| e.to_string())?
                .max_ratio)
        })
        .collect()
}

fn c7(_: &mut Shared) -> Check {
    // calibrate on one corpus, test on a disjoint one
    let pilot = corpus_ratios(1)?;
    let test = corpus_ratios(2)?;
    let c_pilot = pilot.iter().copied().fold(0.0, f64::max);
    let c_test = test.iter().copied().fold(0.0, f64::max);
    let constant = 1.1 * c_pilot;
    let below = test.iter().all(|r| *r < constant);
    let stable = ((c_test - c_pilot) / c_pilot).abs() <= 0.1;
    Ok((
        below && stable,
        format!("pilot max {c_pilot:.4}, constant {constant:.4}, disjoint corpus max {c_test:.4}"),
    ))
}

fn c8(_: &mut Shared) -> Check {
    let params = TailBoundParams::new(3, 1.0, disk_lambda(1.0), 0.25, 0.25)?;
    let seq = jth_root_sequence(&majorant_sequence(&params, 2..=200));
    let root200 = seq.roots[&200];
    let below = seq.first_below(0.05).is_some();
    // geometric-sum oracle: j^{n/2} Σ_{m ≥ j} j^{−δ₁ m}, summed term by term
    let mut worst = 0.0f64;
    for j in [2u32, 16, 50, 100, 200] {
        let x = f64::from(j).powf(-0.25);
        let mut term = x.powi(j as i32);
        let mut sum = 0.0;
        while term > 1e-30 * sum {
            sum += term;
            term *= x;
        }
        let oracle = f64::from(j).powf(1.5) * sum;
        let b = tail_bound(&params, &BTreeMap::new(), j)?;
        worst = worst.max(((b.value - oracle) / oracle).abs());
    }
    let far = jth_root_sequence(&majorant_sequence(&params, 2..=200_000)).first_below(0.05);
    let ok = below && seq.decreasing_after_argmax && worst <= 1e-12;
    Ok((
        ok,
        format!(
            "root at j=200 {root200:.4} (needs < 0.05; first below at j = {}), decreasing after argmax {}: {}, oracle rel. error {worst:.1e}",
            far.map_or("none ≤ 200000".into(), |j| j.to_string()),
            seq.argmax,
            seq.decreasing_after_argmax
        ),
    ))
}

fn c9(_: &mut Shared) -> Check {
    let exact = disk_lambda(1.0);
    let disk = fd_dirichlet_eigen(&BaseDomain::disk(1.0), 257)?;
    let ell = fd_dirichlet_eigen(&BaseDomain::ellipse(2.0, 1.0), 257)?;
    let (lo, hi) = (disk_lambda(2.0), disk_lambda(1.0));
    let fd_err = ((disk.lambda - exact) / exact).abs();
    let ok = (exact - 5.783185962947).abs() <= 1e-9 && fd_err <= 0.01 && ell.lambda > lo && ell.lambda < hi;
    Ok((
        ok,
        format!(
            "j0,1^2 = {exact:.12}, FD disk N=257 rel. error {fd_err:.2e}, ellipse (2,1) {:.5} in ({lo:.5}, {hi:.5})",
            ell.lambda
        ),
    ))
}

fn c10(_: &mut Shared) -> Check {
    let base = BaseDomain::disk(1.0);
    let mut res = Vec::new();
    for n in [129, 257] {
        let eig = fd_dirichlet_eigen(&base, n)?;
        let s = null_solution_sample(&base, &eig, 1.0)?;
        res.push((s.h, s.max_residual));
    }
    let p = (res[0].1 / res[1].1).ln() / (res[0].0 / res[1].0).ln();
    Ok((
        (1.6..=2.4).contains(&p),
        format!("residual {:.3e} -> {:.3e}, exponent {p:.3}", res[0].1, res[1].1),
    ))
}

fn c11(sh: &mut Shared) -> Check {
    let args = argv(&[
        "decay-sim",
        "--base",
        "1,1",
        "--walks",
        "100000",
        "--seed",
        "42",
        "--json",
        "--threads",
        "4",
    ]);
    let (code, rep, err) = cli_json(&args);
    if code != 0 {
        return Ok((false, format!("decay-sim exit {code}: {err}")));
    }
    let nu = rep["result"]["nu_hat"].as_f64().unwrap_or(f64::NAN);
    let se = rep["result"]["stderr"].as_f64().unwrap_or(f64::NAN);
    let rel = (nu - SQRT_LAMBDA_DISK) / SQRT_LAMBDA_DISK;
    sh.decay_report = Some(rep);

    // synthetic two-sided exponential with rate 2
    let mut rng = ChaCha8Rng::seed_from_u64(2718);
    let e = Exp::new(2.0)?;
    let synth: Vec<f64> = (0..100_000)
        .map(|_| {
            let v: f64 = e.sample(&mut rng);
            if rng.random::<bool>() {
                v
            } else {
                -v
            }
        })
        .collect();
    let fit = decay_fit(&synth, 4.0, &DecayFitConfig::default())?;
    let z = (fit.nu_hat - 2.0) / fit.stderr;
    Ok((
        rel.abs() <= 0.10 && z.abs() <= 3.0,
        format!(
            "nu_hat {nu:.4} ± {se:.4} vs {SQRT_LAMBDA_DISK:.6} ({:+.2}%), synthetic {:.4} ({z:+.2} s.e.)",
            100.0 * rel,
            fit.nu_hat
        ),
    ))
}

fn c12(sh: &mut Shared) -> Check {
    let mut notes = Vec::new();
    let mut ok = true;

    let again: Vec<String> = corpus_solve(1)?.into_iter().map(|r| r.1).collect();
    let same1 = sh.corpus_digests.as_ref().is_some_and(|d| *d == again);
    notes.push(format!("criterion 1 corpus 4 vs 1 threads: {same1}"));
    ok &= same1;

    let dir = tempfile::tempdir()?;
    let data = dir.path().join("f.poly");
    let (_, f) = dirichlet_item(2024, 1, 4, 10);
    std::fs::write(&data, write_polynomial(&f))?;
    let (c, first, _) = cli_json(&argv(&[
        "poly-solve",
        "--domain",
        "cylinder:n=4:axes2=2,1/3,5",
        "--data",
        data.to_str().unwrap(),
        "--emit-certificate",
        "--json",
        "--threads",
        "4",
    ]));
    let same = c == 0 && first["result"] == replay(&first, 1)["result"];
    notes.push(format!("poly-solve replay: {same}"));
    ok &= same;

    let (c, first, _) = cli_json(&argv(&[
        "series-solve",
        "--domain",
        "cylinder:n=3:axes2=1,1",
        "--family",
        "powfact2:c=1,var=1",
        "--truncate",
        "32",
        "--diagnose",
        "--json",
        "--threads",
        "4",
    ]));
    let same = c == 0 && first["result"] == replay(&first, 1)["result"];
    notes.push(format!("criterion 4 series-solve replay: {same}"));
    ok &= same;

    match &sh.decay_report {
        Some(rep) => {
            let again = replay(rep, 1);
            let same = rep["result"] == again["result"];
            notes.push(format!("criterion 11 decay-sim replay 4 vs 1 threads: {same}"));
            ok &= same;
        }
        None => {
            notes.push("criterion 11 report missing".into());
            ok = false;
        }
    }
    Ok((ok, notes.join("; ")))
}

fn main() {
    let criteria: Vec<Criterion> = vec![
        (1, "exact polynomial solvability", c1),
        (2, "Fischer nonsingularity sweep", c2),
        (3, "worked fixture x1^2", c3),
        (4, "entirety trend", c4),
        (5, "root test radii", c5),
        (6, "order and type", c6),
        (7, "homogeneous component bounds", c7),
        (8, "tail majorant", c8),
        (9, "spectral", c9),
        (10, "null solution residual order", c10),
        (11, "kernel decay", c11),
        (12, "determinism", c12),
    ];
    let filter: Option<Vec<u32>> = std::env::var("CYLHARM_ACCEPTANCE_ONLY")
        .ok()
        .map(|s| s.split(',').filter_map(|t| t.trim().parse().ok()).collect());
    let strict = std::env::var("CYLHARM_ACCEPTANCE_STRICT").is_ok_and(|v| v == "1");
    let mut shared = Shared::default();
    let (mut passed, mut failed, mut unexpected) = (0, 0, 0);
    for (id, name, f) in criteria {
        if filter.as_ref().is_some_and(|ids| !ids.contains(&id)) {
            continue;
        }
        let t = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(|| f(&mut shared)));
        let (ok, detail) = match outcome {
            Ok(Ok(r)) => r,
            Ok(Err(e)) => (false, format!("error: {e}")),
            Err(_) => (false, "panicked".into()),
        };
        let secs = t.elapsed().as_secs_f64();
        if ok {
            passed += 1;
            println!("PASS [{id:>2}] {name}: {detail} ({secs:.1}s)");
        } else {
            failed += 1;
            let expected = EXPECTED_FAILURES.contains(&id);
            if !expected {
                unexpected += 1;
            }
            let tag = if expected { " [expected]" } else { "" };
            println!("FAIL [{id:>2}] {name}{tag}: {detail} ({secs:.1}s)");
        }
    }
    println!("acceptance: {passed} passed, {failed} failed ({unexpected} unexpected)");
    if unexpected > 0 || (strict && failed > 0) {
        std::process::exit(1);
    }
}
