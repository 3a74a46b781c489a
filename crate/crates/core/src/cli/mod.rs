//! The `cylharm` command line.
//!
//! Every command writes one report (text by default, JSON with `--json`)
//! carrying a [`RunManifest`]. Exit status is 0 on success, 1 on bad input and
//! 2 when a mathematical contract fails.

mod report;

use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use num_traits::FromPrimitive;
use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::error::Error;
use crate::fischer::{solve_dirichlet_poly, verify_solution, DomainSpec, VerifyError};
use crate::mc::{decay_fit_records, wos_exit, write_exits, DecayFitConfig, WalkConfig};
use crate::poly::{parse_polynomial, sphere_max, write_polynomial, Polynomial, Rational};
use crate::series::{
    convergence_diagnostic, homog_component_bound_check, jth_root_sequence, majorant_sequence,
    order_type_from_log_norms, root_test, series_solve, tail_bound, DiagnosticConfig, HomogeneousSeries,
    TailBoundParams,
};
use crate::spectral::{
    disk_lambda, fd_dirichlet_eigen, growth_condition_from, null_solution_sample, write_grid, BaseDomain,
};

pub use report::{Report, RunManifest, FORMAT_VERSION};

#[derive(Parser, Debug)]
#[command(
    name = "cylharm",
    version,
    about = "Harmonic functions on ellipsoidal cylinders"
)]
struct Cli {
    /// Emit the report as JSON.
    #[arg(long, global = true)]
    json: bool,
    /// Write the report here instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    report: Option<PathBuf>,
    /// Worker threads for parallel stages.
    #[arg(long, global = true, env = "CYLHARM_THREADS")]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Solve the Dirichlet problem for polynomial data exactly.
    PolySolve(PolySolveArgs),
    /// Solve truncated entire data degree by degree.
    SeriesSolve(SeriesSolveArgs),
    /// Data growth, component-bound and tail-majorant diagnostics.
    Diagnose(DiagnoseArgs),
    /// Principal Dirichlet eigenpair of a planar base.
    Eigen(EigenArgs),
    /// Sample the null solution ψ(x′)e^{√λ x_n} on a grid.
    NullSolution(NullSolutionArgs),
    /// Walk-on-spheres exits and their axial decay rate.
    DecaySim(DecaySimArgs),
    /// Check a candidate solution exactly.
    Verify(VerifyArgs),
}

#[derive(Args, Debug, Serialize)]
struct PolySolveArgs {
    #[arg(long)]
    domain: String,
    #[arg(long)]
    data: PathBuf,
    #[arg(long)]
    emit_certificate: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug, Serialize)]
struct SeriesSolveArgs {
    #[arg(long)]
    domain: String,
    /// `powfact2:c=<r>,var=<i>`, `geom:c=<r>` or `file:<dir>`.
    #[arg(long)]
    family: String,
    #[arg(long)]
    truncate: u32,
    #[arg(long)]
    diagnose: bool,
    /// Root-test entirety threshold.
    #[arg(long, default_value_t = 0.05)]
    threshold: f64,
    /// Relative tolerance of sphere maxima.
    #[arg(long, default_value_t = 1e-9)]
    tol: f64,
    /// Write the truncated solution `Σ U_j` here.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug, Serialize)]
struct DiagnoseArgs {
    #[arg(long, default_value = "cylinder:n=3:axes2=1,1")]
    domain: String,
    /// Data family for root test, order/type and growth certification.
    #[arg(long)]
    family: Option<String>,
    #[arg(long, default_value_t = 24)]
    truncate: u32,
    /// Harmonic polynomial file for the homogeneous component ratios.
    #[arg(long)]
    harmonic: Option<PathBuf>,
    /// Evaluate the tail majorant and its j-th roots.
    #[arg(long)]
    tail: bool,
    #[arg(long, default_value_t = 0.25)]
    delta1: f64,
    #[arg(long, default_value_t = 0.25)]
    delta2: f64,
    #[arg(long, default_value_t = 200)]
    j_max: u32,
    /// Principal eigenvalue of the base; computed when absent.
    #[arg(long)]
    lambda: Option<f64>,
    /// Grid for the eigenvalue of a non-circular base.
    #[arg(long, default_value_t = 257)]
    grid: usize,
    #[arg(long, default_value_t = 0.05)]
    threshold: f64,
    #[arg(long, default_value_t = 1e-9)]
    tol: f64,
}

#[derive(Args, Debug, Serialize)]
struct EigenArgs {
    /// Semi-axes `a,b`, or one radius.
    #[arg(long)]
    base: String,
    #[arg(long, default_value_t = 257)]
    grid: usize,
}

#[derive(Args, Debug, Serialize)]
struct NullSolutionArgs {
    #[arg(long)]
    base: String,
    #[arg(long, default_value_t = 129)]
    grid: usize,
    /// Half-length of the axial range.
    #[arg(long)]
    length: f64,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args, Debug, Serialize)]
struct DecaySimArgs {
    #[arg(long, default_value = "1,1")]
    base: String,
    #[arg(long)]
    walks: u64,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Absorption shell width.
    #[arg(long, default_value_t = 1e-6)]
    eps: f64,
    #[arg(long, default_value_t = 1_000_000)]
    max_steps: u64,
    #[arg(long)]
    dump_exits: Option<PathBuf>,
    #[arg(long)]
    lambda: Option<f64>,
    #[arg(long, default_value_t = 257)]
    grid: usize,
}

#[derive(Args, Debug, Serialize)]
struct VerifyArgs {
    #[arg(long)]
    domain: String,
    #[arg(long)]
    data: PathBuf,
    #[arg(long)]
    solution: PathBuf,
}

/// What a command produced before it is wrapped into a [`Report`].
struct Outcome {
    result: Value,
    violation: Option<String>,
    timing: Value,
}

impl Outcome {
    fn ok(result: Value) -> Self {
        Outcome {
            result,
            violation: None,
            timing: json!({}),
        }
    }
}

/// Parses `args` (program name first), runs the command and returns the
/// exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<String>,
{
    let args: Vec<String> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    0
                }
                _ => {
                    let _ = write!(err, "{e}");
                    1
                }
            };
            return code;
        }
    };
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(t) = cli.threads {
        builder = builder.num_threads(t);
    }
    let pool = match builder.build() {
        Ok(p) => p,
        Err(e) => {
            let _ = writeln!(err, "error: thread pool: {e}");
            return 1;
        }
    };
    let argv = args.get(1..).unwrap_or_default().to_vec();
    let (report, code, message) = match pool.install(|| execute(&cli, argv)) {
        Ok(r) => r,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return e.exit_code();
        }
    };
    if let Some(msg) = message {
        let _ = writeln!(err, "error: {msg}");
    }
    let text = if cli.json {
        report.to_json() + "\n"
    } else {
        report.to_text()
    };
    let written = match &cli.report {
        Some(path) => fs::write(path, text).map_err(|e| io_error(path, e)),
        None => out
            .write_all(text.as_bytes())
            .map_err(|e| io_error(Path::new("<stdout>"), e)),
    };
    match written {
        Ok(()) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            1
        }
    }
}

/// Runs the command; usage errors come back as `Err`, contract violations
/// as a report with status 2 and the message for stderr.
fn execute(cli: &Cli, argv: Vec<String>) -> Result<(Report, i32, Option<String>), Error> {
    let (name, config) = match &cli.command {
        Command::PolySolve(a) => ("poly-solve", to_value(a)),
        Command::SeriesSolve(a) => ("series-solve", to_value(a)),
        Command::Diagnose(a) => ("diagnose", to_value(a)),
        Command::Eigen(a) => ("eigen", to_value(a)),
        Command::NullSolution(a) => ("null-solution", to_value(a)),
        Command::DecaySim(a) => ("decay-sim", to_value(a)),
        Command::Verify(a) => ("verify", to_value(a)),
    };
    let mut manifest = RunManifest::new(name, &argv, config, rayon::current_num_threads());
    if let Command::DecaySim(a) = &cli.command {
        manifest.seeds = vec![a.seed];
    }
    let start = Instant::now();
    let outcome = match &cli.command {
        Command::PolySolve(a) => poly_solve(a),
        Command::SeriesSolve(a) => series_solve_cmd(a),
        Command::Diagnose(a) => diagnose(a),
        Command::Eigen(a) => eigen(a),
        Command::NullSolution(a) => null_solution(a),
        Command::DecaySim(a) => decay_sim(a),
        Command::Verify(a) => verify(a),
    };
    let elapsed_ms = start.elapsed().as_secs_f64() * 1e3;
    Ok(match outcome {
        Ok(o) => match o.violation {
            None => (
                Report::new(manifest, "ok", o.result, elapsed_ms, o.timing),
                0,
                None,
            ),
            Some(msg) => (
                Report::new(manifest, "violation", o.result, elapsed_ms, o.timing),
                2,
                Some(msg),
            ),
        },
        Err(e) if e.exit_code() == 2 => {
            let result = json!({ "error": e.to_string() });
            (
                Report::new(manifest, "violation", result, elapsed_ms, json!({})),
                2,
                Some(e.to_string()),
            )
        }
        Err(e) => return Err(e),
    })
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("arguments serialize")
}

fn io_error(path: &Path, source: std::io::Error) -> Error {
    Error::Io {
        path: path.display().to_string(),
        source,
    }
}

fn read_polynomial(path: &Path) -> Result<Polynomial, Error> {
    let text = fs::read_to_string(path).map_err(|e| io_error(path, e))?;
    parse_polynomial(&text).map_err(|e| Error::Usage(format!("{}: {e}", path.display())))
}

fn parse_domain(s: &str) -> Result<DomainSpec, Error> {
    Ok(s.parse::<DomainSpec>()?)
}

fn sha256_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().map(|b| format!("{b:02x}")).collect()
}

/// `dim P_m = C(m + n, n)` for `n` variables.
fn basis_size(n: usize, m: u32) -> u128 {
    let m = u128::from(m);
    (1..=n as u128).fold(1u128, |acc, k| acc * (m + k) / k)
}

/// Sorted `[k, v]` pairs, which keep their order in every JSON reader.
fn pairs(map: &BTreeMap<u32, f64>) -> Value {
    Value::Array(map.iter().map(|(k, v)| json!([k, v])).collect())
}

fn poly_solve(a: &PolySolveArgs) -> Result<Outcome, Error> {
    let domain = parse_domain(&a.domain)?;
    let f = read_polynomial(&a.data)?;
    let t0 = Instant::now();
    let (u, cert) = solve_dirichlet_poly(&domain, &f)?;
    let solve_ms = t0.elapsed().as_secs_f64() * 1e3;
    let degree = f.degree().finite().unwrap_or(0);
    if let Some(path) = &a.out {
        fs::write(path, write_polynomial(&u)).map_err(|e| io_error(path, e))?;
    }
    let mut result = json!({
        "domain": domain.to_string(),
        "solution": u.to_string(),
        "degree": degree,
        "basis_size": basis_size(domain.dim(), degree),
    });
    let holds = cert.holds(&domain, &f, &u);
    if a.emit_certificate {
        result["certificate"] = json!({
            "harmonic_residual": cert.residual_laplacian.to_string(),
            "boundary_quotient": cert.boundary_quotient.to_string(),
            "degree": degree,
            "basis_size": basis_size(domain.dim(), degree),
            "digest": cert.digest(),
            "holds": holds,
        });
    }
    Ok(Outcome {
        violation: (!holds).then(|| "certificate does not hold".to_string()),
        timing: json!({ "solve_time_ms": solve_ms }),
        ..Outcome::ok(result)
    })
}

fn data_log_norms(data: &HomogeneousSeries, tol: f64) -> Result<BTreeMap<u32, f64>, Error> {
    data.components()
        .iter()
        .map(|(m, f)| Ok((*m, sphere_max(f, tol)?.ln_value)))
        .collect()
}

fn order_type_section(
    ln_m: &BTreeMap<u32, f64>,
) -> (
    Value,
    Result<crate::series::OrderTypeEstimate, crate::series::SeriesError>,
) {
    let est = order_type_from_log_norms(ln_m);
    let v = match &est {
        Ok(e) => json!({
            "rho_seq": pairs(&e.rho_seq),
            "type_seq": pairs(&e.type_seq),
            "rho_hat": e.rho_hat,
            "type_hat": e.type_hat,
            "window": e.window,
            "rho_spread": e.rho_spread,
            "polynomial": e.polynomial,
        }),
        Err(e) => json!({ "error": e.to_string() }),
    };
    (v, est)
}

fn series_solve_cmd(a: &SeriesSolveArgs) -> Result<Outcome, Error> {
    let domain = parse_domain(&a.domain)?;
    let data = HomogeneousSeries::from_family(&a.family, domain.dim(), a.truncate)?;
    let sol = series_solve(&domain, &data)?;
    let holds = sol.certificates_hold(&data);
    let digests: BTreeMap<String, String> = sol
        .certificates
        .iter()
        .map(|(m, c)| (m.to_string(), c.digest()))
        .collect();
    let terms: BTreeMap<String, usize> = sol
        .components
        .iter()
        .map(|(j, p)| (j.to_string(), p.len()))
        .collect();
    let mut result = json!({
        "domain": domain.to_string(),
        "family": a.family,
        "truncation": a.truncate,
        "certificates_hold": holds,
        "certificate_digests": digests,
        "component_terms": terms,
    });
    if a.diagnose {
        let cfg = DiagnosticConfig {
            tol: a.tol,
            entire_threshold: a.threshold,
            window: None,
        };
        let diag = convergence_diagnostic(&sol, &cfg);
        let ln_m = data_log_norms(&data, a.tol)?;
        let (ot, _) = order_type_section(&ln_m);
        let r = result.as_object_mut().expect("object");
        r.insert("r_j".into(), pairs(&diag.r));
        r.insert(
            "M_m".into(),
            pairs(&ln_m.iter().map(|(m, l)| (*m, l.exp())).collect()),
        );
        r.insert("ln_M_m".into(), pairs(&ln_m));
        for key in [
            "rho_seq",
            "type_seq",
            "rho_hat",
            "type_hat",
            "window",
            "rho_spread",
            "error",
        ] {
            if let Some(v) = ot.get(key) {
                let name = if key == "window" {
                    "order_window"
                } else if key == "error" {
                    "order_type_error"
                } else {
                    key
                };
                r.insert(name.into(), v.clone());
            }
        }
        r.insert("radius_estimate".into(), to_value(&diag.radius_estimate));
        r.insert("root_window".into(), to_value(&diag.window));
        r.insert("threshold".into(), json!(diag.threshold));
        r.insert("non_increasing".into(), json!(diag.non_increasing));
        r.insert("entire_trend".into(), json!(diag.entire() && diag.non_increasing));
        r.insert("unconverged".into(), to_value(&diag.unconverged));
    }
    if let Some(path) = &a.out {
        fs::write(path, write_polynomial(&sol.total())).map_err(|e| io_error(path, e))?;
    }
    Ok(Outcome {
        violation: (!holds).then(|| "per-degree certificate does not hold".to_string()),
        ..Outcome::ok(result)
    })
}

/// Eigenvalue of the cylinder base and where it came from.
fn base_lambda(base: &BaseDomain, grid: usize, given: Option<f64>) -> Result<(f64, String), Error> {
    if let Some(l) = given {
        if !(l > 0.0) {
            return Err(Error::Usage(format!("lambda must be positive, got {l}")));
        }
        return Ok((l, "given".into()));
    }
    match base.semi_axes.len() {
        2 if base.is_disk() => Ok((disk_lambda(base.semi_axes[0]), "bessel".into())),
        2 => Ok((fd_dirichlet_eigen(base, grid)?.lambda, format!("fd:{grid}"))),
        k => Err(Error::Usage(format!(
            "no eigenvalue available for a base in {k} variables; pass --lambda"
        ))),
    }
}

fn diagnose(a: &DiagnoseArgs) -> Result<Outcome, Error> {
    if a.family.is_none() && a.harmonic.is_none() && !a.tail {
        return Err(Error::Usage(
            "diagnose needs --family, --harmonic or --tail".into(),
        ));
    }
    let domain = parse_domain(&a.domain)?;
    let mut result = json!({ "domain": domain.to_string() });
    let mut violation = None;
    let needs_lambda = a.family.is_some() || a.tail;
    let lambda = if needs_lambda {
        let base = BaseDomain::from_domain(&domain)?;
        let (l, src) = base_lambda(&base, a.grid, a.lambda)?;
        result["lambda"] = json!(l);
        result["lambda_source"] = json!(src);
        Some(l)
    } else {
        None
    };
    let mut ln_m = BTreeMap::new();
    if let Some(family) = &a.family {
        let data = HomogeneousSeries::from_family(family, domain.dim(), a.truncate)?;
        ln_m = data_log_norms(&data, a.tol)?;
        let cfg = DiagnosticConfig {
            tol: a.tol,
            entire_threshold: a.threshold,
            window: None,
        };
        let rt = root_test(data.components(), a.truncate, &cfg);
        let (ot, est) = order_type_section(&ln_m);
        let growth = match growth_condition_from(est.as_ref(), lambda.expect("lambda")) {
            Ok(c) => json!({ "established": true, "certificate": c }),
            Err(e) => json!({ "established": false, "reason": e.to_string() }),
        };
        result["data"] = json!({
            "family": family,
            "truncation": a.truncate,
            "M_m": pairs(&ln_m.iter().map(|(m, l)| (*m, l.exp())).collect()),
            "ln_M_m": pairs(&ln_m),
            "r_m": pairs(&rt.r),
            "radius_estimate": rt.radius_estimate,
            "root_window": rt.window,
            "order_type": ot,
            "growth_condition": growth,
            "poisson_coincidence": "not checked: no faithful finite-truncation test",
        });
    }
    if let Some(path) = &a.harmonic {
        let v = read_polynomial(path)?;
        match homog_component_bound_check(&v, a.tol) {
            Ok(rep) => result["component_bounds"] = to_value(&rep),
            Err(crate::series::SeriesError::NotHarmonic(lap)) => {
                result["component_bounds"] =
                    json!({ "failure": "not harmonic", "residual": lap.to_string() });
                violation = Some(format!("not harmonic: Laplacian {lap}"));
            }
            Err(e) => return Err(e.into()),
        }
    }
    if a.tail {
        let base = BaseDomain::from_domain(&domain)?;
        let params = TailBoundParams::new(
            domain.dim(),
            base.max_semi_axis(),
            lambda.expect("lambda"),
            a.delta1,
            a.delta2,
        )?;
        let seq = jth_root_sequence(&majorant_sequence(&params, 2..=a.j_max));
        let bound = tail_bound(&params, &ln_m, a.j_max)?;
        result["tail"] = json!({
            "params": params,
            "roots": pairs(&seq.roots),
            "argmax": seq.argmax,
            "decreasing_after_argmax": seq.decreasing_after_argmax,
            "first_below_threshold": seq.first_below(a.threshold),
            "root_at_j_max": seq.roots.get(&a.j_max),
            "bound_at_j_max": bound,
        });
    }
    Ok(Outcome {
        violation,
        ..Outcome::ok(result)
    })
}

fn parse_base(s: &str) -> Result<BaseDomain, Error> {
    Ok(s.parse::<BaseDomain>()?)
}

fn eigen(a: &EigenArgs) -> Result<Outcome, Error> {
    let base = parse_base(&a.base)?;
    let eig = fd_dirichlet_eigen(&base, a.grid)?;
    let mut result = json!({ "base": base.semi_axes, "eigen": eig });
    if base.is_disk() {
        let exact = disk_lambda(base.semi_axes[0]);
        result["closed_form"] = json!(exact);
        result["relative_error"] = json!((eig.lambda - exact) / exact);
    }
    Ok(Outcome::ok(result))
}

fn null_solution(a: &NullSolutionArgs) -> Result<Outcome, Error> {
    let base = parse_base(&a.base)?;
    let eig = fd_dirichlet_eigen(&base, a.grid)?;
    let sample = null_solution_sample(&base, &eig, a.length)?;
    let mut bytes = Vec::new();
    write_grid(&mut bytes, &sample.to_grid_file()).map_err(|e| io_error(&a.out, e))?;
    fs::write(&a.out, &bytes).map_err(|e| io_error(&a.out, e))?;
    Ok(Outcome::ok(json!({
        "base": base.semi_axes,
        "lambda": sample.lambda,
        "dims": [sample.n, sample.n, sample.nz],
        "h": sample.h,
        "extent": sample.extent,
        "length": sample.length,
        "max_residual": sample.max_residual,
        "eigen_residual": eig.residual,
        "grid_sha256": sha256_hex(&bytes),
    })))
}

fn decay_sim(a: &DecaySimArgs) -> Result<Outcome, Error> {
    let base = parse_base(&a.base)?;
    if base.semi_axes.len() != 2 {
        return Err(Error::Usage("decay-sim takes a planar base a,b".into()));
    }
    let axes2 = base
        .semi_axes
        .iter()
        .map(|s| Rational::from_f64(s * s).ok_or_else(|| Error::Usage(format!("semi-axis {s}"))))
        .collect::<Result<Vec<_>, _>>()?;
    let domain = DomainSpec::cylinder(3, axes2)?;
    let (lambda, source) = base_lambda(&base, a.grid, a.lambda)?;
    let mut cfg = WalkConfig::at_origin(3, a.walks, a.seed);
    cfg.eps_shell = a.eps;
    cfg.max_steps = a.max_steps;
    let outcome = wos_exit(&domain, &cfg)?;
    if let Some(path) = &a.dump_exits {
        let file = fs::File::create(path).map_err(|e| io_error(path, e))?;
        write_exits(std::io::BufWriter::new(file), &outcome.records).map_err(|e| io_error(path, e))?;
    }
    let fit_cfg = DecayFitConfig::default();
    let fit = decay_fit_records(&outcome.records, lambda, &fit_cfg)?;
    let mean_steps =
        outcome.records.iter().map(|r| r.steps as f64).sum::<f64>() / outcome.records.len().max(1) as f64;
    let survival: Vec<Value> = fit
        .survival
        .iter()
        .map(|(k, s)| json!([f64::from(*k) * fit.dt, s]))
        .collect();
    let violation =
        (!fit.accepted()).then(|| format!("exponential fit rejected: curvature z = {:.2}", fit.curvature_z));
    Ok(Outcome {
        violation,
        ..Outcome::ok(json!({
            "domain": domain.to_string(),
            "walk_config": cfg,
            "fit_config": fit_cfg,
            "lambda": lambda,
            "lambda_source": source,
            "walks": a.walks,
            "records": fit.records,
            "discarded": outcome.discarded,
            "mean_steps": mean_steps,
            "nu_hat": fit.nu_hat,
            "stderr": fit.stderr,
            "reference_rate": fit.reference_rate,
            "relative_error": fit.relative_error,
            "fit_window": fit.fit_window,
            "fit_points": fit.fit_points,
            "curvature_z": fit.curvature_z,
            "curved": fit.curved,
            "note": fit.note,
            "survival": survival,
        }))
    })
}

fn verify(a: &VerifyArgs) -> Result<Outcome, Error> {
    let domain = parse_domain(&a.domain)?;
    let f = read_polynomial(&a.data)?;
    let u = read_polynomial(&a.solution)?;
    match verify_solution(&domain, &f, &u) {
        Ok(cert) => Ok(Outcome::ok(json!({
            "valid": true,
            "harmonic_residual": cert.residual_laplacian.to_string(),
            "boundary_quotient": cert.boundary_quotient.to_string(),
            "digest": cert.digest(),
        }))),
        Err(VerifyError::NotHarmonic { residual }) => Ok(Outcome {
            violation: Some(format!("not harmonic: Laplacian residual {residual}")),
            ..Outcome::ok(json!({
                "valid": false,
                "failure": "not harmonic",
                "residual": residual.to_string(),
            }))
        }),
        Err(VerifyError::BoundaryMismatch { remainder }) => Ok(Outcome {
            violation: Some(format!("boundary mismatch: remainder {remainder}")),
            ..Outcome::ok(json!({
                "valid": false,
                "failure": "boundary mismatch",
                "remainder": remainder.to_string(),
            }))
        }),
        Err(e) => Err(e.into()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basis_sizes() {
        assert_eq!(basis_size(3, 0), 1);
        assert_eq!(basis_size(3, 2), 10);
        assert_eq!(basis_size(4, 10), 1001);
    }

    #[test]
    fn usage_errors_exit_one() {
        let mut out = Vec::new();
        let mut err = Vec::new();
        assert_eq!(run(["cylharm", "frobnicate"], &mut out, &mut err), 1);
        assert_eq!(run(["cylharm", "eigen", "--base", "0,1"], &mut out, &mut err), 1);
        assert_eq!(run(["cylharm", "diagnose"], &mut out, &mut err), 1);
        assert_eq!(run(["cylharm", "--help"], &mut out, &mut err), 0);
    }
}
