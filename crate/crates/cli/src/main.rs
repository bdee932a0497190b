//! Command line front end: closed-form bound tables, the verification
//! suite, univalence radii, and sharpness scans.
//!
//! Exit codes: 0 success, 1 a verification or sharpness check failed,
//! 2 usage error (bad tilt, radius, bound name, grid, or tolerance),
//! 3 a search failed to converge.

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use std::io::Write;
use std::path::PathBuf;

use tilted_caratheodory::applications::{robertson_radius, RadiusResult};
use tilted_caratheodory::bounds::{
    coefficient_bound, containment_disc, derivative_bound, growth_max, growth_min,
    logderiv_kernel_min, logderiv_max, re_bounds, BoundReport,
};
use tilted_caratheodory::class::TiltAngle;
use tilted_caratheodory::search::{sharpness_certificate, BoundName};
use tilted_caratheodory::verify::{run_suite, SuiteConfig};
use tilted_caratheodory::Error;

#[derive(Parser)]
#[command(name = "tilted-caratheodory", version, about = "Sharp bounds and certificates for the tilted Carathéodory class")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Tabulate every closed-form bound at one tilt over a list of radii.
    Bounds {
        /// Tilt angle in radians, inside (-pi/2, pi/2).
        #[arg(long, allow_hyphen_values = true)]
        lambda: f64,
        /// Evaluation radius; repeat for several rows.
        #[arg(long = "r", required = true)]
        r: Vec<f64>,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        /// Write the table here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the verification suite and print one PASS/FAIL line per check.
    Verify {
        /// Tilt angles to test; defaults to a spread across the range.
        #[arg(long = "lambda", allow_hyphen_values = true)]
        lambda: Vec<f64>,
        /// Random members generated per tilt.
        #[arg(long, default_value_t = 25)]
        seeds: usize,
        /// Series truncation order.
        #[arg(long, default_value_t = 64)]
        order: usize,
        /// Base seed for member generation.
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Write the full JSON report (including timings) here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compute the Robertson univalence radius for each tilt.
    Radius {
        #[arg(long = "lambda", required = true, allow_hyphen_values = true)]
        lambda: Vec<f64>,
        /// Bisection bracket width target (at least 1e-6).
        #[arg(long, default_value_t = 1e-5)]
        tol: f64,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Certify sharpness of one bound (or all of them) by extremal search.
    Scan {
        /// Bound name: coeff, deriv, disc, growth_hi, growth_lo, re_hi,
        /// re_lo, logderiv_M, or all.
        bound: String,
        #[arg(long, allow_hyphen_values = true)]
        lambda: f64,
        #[arg(long = "r", required = true)]
        r: Vec<f64>,
        /// Largest acceptable bound-minus-achieved gap.
        #[arg(long, default_value_t = 1e-6)]
        tol: f64,
        /// Angular lattice size for the coarse scan.
        #[arg(long, default_value_t = 512)]
        lattice: usize,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn main() {
    let cli = Cli::parse();
    let code = match dispatch(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            exit_code(&err)
        }
    };
    std::process::exit(code);
}

fn exit_code(err: &Error) -> i32 {
    match err {
        Error::TiltOutOfRange { .. }
        | Error::RadiusOutOfRange { .. }
        | Error::UnknownBound { .. }
        | Error::InvalidGrid { .. }
        | Error::LatticeTooSmall { .. }
        | Error::ToleranceTooTight { .. } => 2,
        Error::NonConvergence { .. } => 3,
        _ => 1,
    }
}

fn dispatch(cli: Cli) -> Result<i32, Error> {
    match cli.command {
        Command::Bounds { lambda, r, format, out } => bounds_command(lambda, &r, format, out),
        Command::Verify { lambda, seeds, order, seed, out } => verify_command(lambda, seeds, order, seed, out),
        Command::Radius { lambda, tol, format, out } => radius_command(&lambda, tol, format, out),
        Command::Scan { bound, lambda, r, tol, lattice, format, out } => {
            scan_command(&bound, lambda, &r, tol, lattice, format, out)
        }
    }
}

fn emit(text: &str, out: Option<PathBuf>) -> Result<(), Error> {
    match out {
        Some(path) => std::fs::write(&path, text).map_err(|e| Error::InvalidGrid {
            reason: format!("cannot write {}: {e}", path.display()),
        }),
        None => {
            print!("{text}");
            std::io::stdout().flush().ok();
            Ok(())
        }
    }
}

#[derive(Serialize)]
struct BoundsRow {
    r: f64,
    coeff: f64,
    deriv: f64,
    disc_center_re: f64,
    disc_center_im: f64,
    disc_radius: f64,
    growth_max: f64,
    growth_min: f64,
    re_lo: f64,
    re_hi: f64,
    logderiv_max: f64,
    logderiv_kernel_min: f64,
}

#[derive(Serialize)]
struct BoundsOutput {
    lambda: f64,
    statements: Vec<Statement>,
    rows: Vec<BoundsRow>,
}

#[derive(Serialize)]
struct Statement {
    name: &'static str,
    statement: &'static str,
}

fn statement_for(name: BoundName) -> &'static str {
    match name {
        BoundName::Coeff => "|c_n| <= 2 cos(lambda) for every n >= 1",
        BoundName::Deriv => "|p'(z)| <= 2 cos(lambda)/(1 - r)^2 on |z| <= r",
        BoundName::Disc => {
            "p maps |z| <= r into the disc with center (1 + r^2 e^{-2i lambda})/(1 - r^2) and radius 2 r cos(lambda)/(1 - r^2)"
        }
        BoundName::GrowthHi => {
            "|p(z)| <= A(lambda, r) = (sqrt((1 - r^2)^2 + 4 r^2 cos^2(lambda)) + 2 r cos(lambda))/(1 - r^2)"
        }
        BoundName::GrowthLo => "|p(z)| >= 1/A(lambda, r)",
        BoundName::ReHi => "Re p(z) <= (1 + r^2 cos(2 lambda) + 2 r cos(lambda))/(1 - r^2)",
        BoundName::ReLo => "Re p(z) >= (1 + r^2 cos(2 lambda) - 2 r cos(lambda))/(1 - r^2)",
        BoundName::LogderivM => "|z p'(z)/p(z)| <= M(lambda, r), attained by kernels at the critical angles",
    }
}

fn bounds_command(lambda: f64, radii: &[f64], format: Format, out: Option<PathBuf>) -> Result<i32, Error> {
    let tilt = TiltAngle::new(lambda)?;
    let mut rows = Vec::with_capacity(radii.len());
    for &r in radii {
        let disc = containment_disc(tilt, r)?;
        let (re_lo, re_hi) = re_bounds(tilt, r)?;
        rows.push(BoundsRow {
            r,
            coeff: coefficient_bound(tilt),
            deriv: derivative_bound(tilt, r)?,
            disc_center_re: disc.center.re,
            disc_center_im: disc.center.im,
            disc_radius: disc.radius,
            growth_max: growth_max(tilt, r)?,
            growth_min: growth_min(tilt, r)?,
            re_lo,
            re_hi,
            logderiv_max: logderiv_max(tilt, r)?,
            logderiv_kernel_min: logderiv_kernel_min(tilt, r)?,
        });
    }
    let text = match format {
        Format::Csv => {
            let mut s = String::from("# tilted-caratheodory bounds\n");
            s.push_str(&format!("# lambda = {lambda:.16e}\n"));
            s.push_str("r,coeff,deriv,disc_center_re,disc_center_im,disc_radius,growth_max,growth_min,re_lo,re_hi,logderiv_max,logderiv_kernel_min\n");
            for row in &rows {
                s.push_str(&format!(
                    "{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e}\n",
                    row.r,
                    row.coeff,
                    row.deriv,
                    row.disc_center_re,
                    row.disc_center_im,
                    row.disc_radius,
                    row.growth_max,
                    row.growth_min,
                    row.re_lo,
                    row.re_hi,
                    row.logderiv_max,
                    row.logderiv_kernel_min,
                ));
            }
            s
        }
        Format::Json => {
            let statements = BoundName::all()
                .into_iter()
                .map(|n| Statement { name: n.as_str(), statement: statement_for(n) })
                .collect();
            let output = BoundsOutput { lambda, statements, rows };
            let mut s = serde_json::to_string_pretty(&output).expect("serializable output");
            s.push('\n');
            s
        }
    };
    emit(&text, out)?;
    Ok(0)
}

fn verify_command(
    lambdas: Vec<f64>,
    seeds: usize,
    order: usize,
    seed: u64,
    out: Option<PathBuf>,
) -> Result<i32, Error> {
    let mut cfg = SuiteConfig { seed, order, members_per_lambda: seeds, ..SuiteConfig::default() };
    if !lambdas.is_empty() {
        cfg.lambdas = lambdas;
    }
    let report = run_suite(&cfg)?;
    for check in &report.checks {
        let verdict = if check.passed { "PASS" } else { "FAIL" };
        println!("{verdict} {}: {}", check.name, check.details);
    }
    let failed = report.checks.iter().filter(|c| !c.passed).count();
    if failed == 0 {
        println!("RESULT: all {} checks passed", report.checks.len());
    } else {
        println!("RESULT: {failed} of {} checks failed", report.checks.len());
    }
    if let Some(path) = out {
        let mut s = serde_json::to_string_pretty(&report).expect("serializable report");
        s.push('\n');
        std::fs::write(&path, s).map_err(|e| Error::InvalidGrid {
            reason: format!("cannot write {}: {e}", path.display()),
        })?;
    }
    Ok(if report.all_passed { 0 } else { 1 })
}

#[derive(Serialize)]
struct RadiusOutput {
    tol: f64,
    results: Vec<RadiusResult>,
}

fn radius_command(lambdas: &[f64], tol: f64, format: Format, out: Option<PathBuf>) -> Result<i32, Error> {
    let mut results = Vec::with_capacity(lambdas.len());
    for &lambda in lambdas {
        results.push(robertson_radius(TiltAngle::new(lambda)?, tol)?);
    }
    let text = match format {
        Format::Csv => {
            let mut s = String::from("# tilted-caratheodory radius\n");
            s.push_str(&format!("# tol = {tol:.16e}\n"));
            s.push_str("lambda,r_star,width,certified_true,certified_false,touches_one,inner_samples,iterations\n");
            for res in &results {
                let false_field = match res.certified_false {
                    Some(v) => format!("{v:.16e}"),
                    None => String::new(),
                };
                s.push_str(&format!(
                    "{:.16e},{:.16e},{:.16e},{:.16e},{},{},{},{}\n",
                    res.tilt,
                    res.r_star,
                    res.width,
                    res.certified_true,
                    false_field,
                    res.touches_one,
                    res.inner_samples,
                    res.iterations,
                ));
            }
            s
        }
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&RadiusOutput { tol, results }).expect("serializable output");
            s.push('\n');
            s
        }
    };
    emit(&text, out)?;
    Ok(0)
}

#[derive(Serialize)]
struct ScanRow {
    statement: &'static str,
    #[serde(flatten)]
    report: BoundReport,
}

#[derive(Serialize)]
struct ScanOutput {
    lambda: f64,
    lattice: usize,
    tol: f64,
    rows: Vec<ScanRow>,
}

fn scan_command(
    bound: &str,
    lambda: f64,
    radii: &[f64],
    tol: f64,
    lattice: usize,
    format: Format,
    out: Option<PathBuf>,
) -> Result<i32, Error> {
    let names: Vec<BoundName> = if bound == "all" {
        BoundName::all().to_vec()
    } else {
        vec![BoundName::parse(bound)?]
    };
    let tilt = TiltAngle::new(lambda)?;
    let mut rows = Vec::new();
    let mut sharp = true;
    for &name in &names {
        for &r in radii {
            let report = sharpness_certificate(name, tilt, r, lattice)?;
            sharp &= report.gap >= -1e-9 && report.gap <= tol;
            rows.push(ScanRow { statement: statement_for(name), report });
        }
    }
    let text = match format {
        Format::Csv => {
            let mut s = String::from("# tilted-caratheodory scan\n");
            s.push_str(&format!("# lambda = {lambda:.16e}, lattice = {lattice}, tol = {tol:.16e}\n"));
            s.push_str("name,lambda,r,bound,achieved,gap,witness_x_re,witness_x_im,witness_z_re,witness_z_im,predicted_alpha,witness_alpha,alpha_error\n");
            for row in &rows {
                let rep = &row.report;
                let opt = |v: Option<f64>| v.map(|v| format!("{v:.16e}")).unwrap_or_default();
                let witness = rep
                    .witness
                    .map(|w| {
                        format!("{:.16e},{:.16e},{:.16e},{:.16e}", w.x.re, w.x.im, w.z.re, w.z.im)
                    })
                    .unwrap_or_else(|| ",,,".to_string());
                let predicted = rep
                    .predicted_alpha
                    .as_ref()
                    .map(|alphas| {
                        alphas.iter().map(|a| format!("{a:.16e}")).collect::<Vec<_>>().join(";")
                    })
                    .unwrap_or_default();
                s.push_str(&format!(
                    "{},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{witness},{predicted},{},{}\n",
                    rep.name,
                    rep.lambda,
                    rep.r,
                    rep.bound,
                    rep.achieved,
                    rep.gap,
                    opt(rep.witness_alpha),
                    opt(rep.alpha_error),
                ));
            }
            s
        }
        Format::Json => {
            let output = ScanOutput { lambda, lattice, tol, rows };
            let mut s = serde_json::to_string_pretty(&output).expect("serializable output");
            s.push('\n');
            s
        }
    };
    emit(&text, out)?;
    Ok(if sharp { 0 } else { 1 })
}
