//! A self-contained verification suite: builds a roster of class members at
//! several tilts and certifies every identity, bound, and application claim
//! against them, returning a machine-readable report.

use num_complex::Complex64;
use serde::Serialize;
use std::time::Instant;

use crate::applications::{
    ctc_scan, dclass_member, dclass_reference, preschwarzian_norm, robertson_radius,
    spirallike_build, spirallike_from_member, spirallike_verify,
};
use crate::bounds::{containment_disc, growth_max, logderiv_max, SlitDomain};
use crate::class::{
    default_line_samples, dual_line_check, kernel_member, kernel_series, schur_half_hadamard,
    subordination_omega, subordination_omega_at, tilt_from_base, tilt_to_base,
    tilted_convolution_bound, ClassMember, TiltAngle,
};
use crate::error::Result;
use crate::grid::EvaluationGrid;
use crate::search::{random_member, sharpness_certificate, split_seed, BoundName};
use crate::series::TruncatedSeries;
use crate::tolerances::{DEFAULT_ORDER, EPS_LINE, EPS_SERIES, EPS_UNIMODULAR, SHARPNESS_GAP};

const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Knobs for the verification run.
#[derive(Debug, Clone)]
pub struct SuiteConfig {
    pub seed: u64,
    pub order: usize,
    pub lambdas: Vec<f64>,
    pub members_per_lambda: usize,
    pub grid: EvaluationGrid,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        Self {
            seed: 42,
            order: DEFAULT_ORDER,
            lambdas: vec![0.0, 0.3, -0.3, 0.9, -0.9, 1.3, -1.3],
            members_per_lambda: 25,
            grid: EvaluationGrid::standard(),
        }
    }
}

/// One named check with its verdict and a human-readable summary line.
#[derive(Debug, Clone, Serialize)]
pub struct CheckRecord {
    pub name: String,
    pub passed: bool,
    pub details: String,
    pub wall_ms: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub seed: u64,
    pub order: usize,
    pub all_passed: bool,
    pub checks: Vec<CheckRecord>,
}

/// Runs the full suite with the bounds as stated.
pub fn run_suite(cfg: &SuiteConfig) -> Result<SuiteReport> {
    run_suite_scaled(cfg, 1.0)
}

/// Runs the suite with every sharp bound multiplied by `bound_scale` in the
/// coefficient, disc, log-derivative, and sharpness checks. A scale below 1
/// must make the suite fail; this is the self-test of the harness itself.
#[doc(hidden)]
pub fn run_suite_scaled(cfg: &SuiteConfig, bound_scale: f64) -> Result<SuiteReport> {
    let mut groups: Vec<(TiltAngle, Vec<ClassMember>)> = Vec::new();
    for (li, &lam) in cfg.lambdas.iter().enumerate() {
        let tilt = TiltAngle::new(lam)?;
        let mut members = vec![
            kernel_member(tilt, ONE, cfg.order)?,
            kernel_member(tilt, Complex64::cis(2.4), cfg.order)?,
        ];
        for j in 0..cfg.members_per_lambda {
            let seed = split_seed(cfg.seed, li as u64, j as u64);
            members.push(random_member(tilt, 1 + j % 8, seed)?);
        }
        groups.push((tilt, members));
    }
    let grid = &cfg.grid;
    let mut checks: Vec<CheckRecord> = Vec::new();
    let run = |checks: &mut Vec<CheckRecord>, name: &str, body: &mut dyn FnMut() -> Result<(bool, String)>| {
        let start = Instant::now();
        let (passed, details) = match body() {
            Ok(v) => v,
            Err(e) => (false, format!("error: {e}")),
        };
        checks.push(CheckRecord {
            name: name.to_string(),
            passed,
            details,
            wall_ms: start.elapsed().as_secs_f64() * 1e3,
        });
    };

    run(&mut checks, "series_identities", &mut || {
        let t1 = TiltAngle::new(0.9)?;
        let t2 = TiltAngle::new(-0.4)?;
        let k = kernel_series(t1, ONE, cfg.order)?;
        let g = kernel_series(t2, Complex64::cis(1.1), cfg.order)?;
        let mut drift: f64 = k.log()?.exp().max_abs_diff(&k);
        drift = drift.max(k.mul(&g).div(&g)?.max_abs_diff(&k));
        let mut base = vec![Complex64::new(0.0, 0.0); cfg.order + 1];
        base[0] = ONE;
        base[1] = -ONE;
        let base = TruncatedSeries::from_coeffs(base)?;
        let m1 = Complex64::new(0.7, -0.3);
        let m2 = Complex64::new(-1.2, 0.8);
        drift = drift.max(base.cpow(m1)?.mul(&base.cpow(m2)?).max_abs_diff(&base.cpow(m1 + m2)?));
        Ok((drift < EPS_SERIES, format!("max coefficient drift {drift:.2e}")))
    });

    run(&mut checks, "membership", &mut || {
        let mut min_margin = f64::INFINITY;
        let mut count = 0usize;
        for (_, members) in &groups {
            for p in members {
                min_margin = min_margin.min(p.membership(grid).min_margin);
                count += 1;
            }
        }
        Ok((min_margin > 0.0, format!("min rotated real part {min_margin:.3e} over {count} members")))
    });

    run(&mut checks, "coefficient_bound", &mut || {
        let mut max_excess = f64::NEG_INFINITY;
        for (tilt, members) in &groups {
            let bound = bound_scale * crate::bounds::coefficient_bound(*tilt);
            for p in members {
                for n in 1..=p.order() {
                    max_excess = max_excess.max(p.coeff(n).norm() - bound);
                }
            }
        }
        Ok((max_excess <= EPS_SERIES, format!("max |c_n| excess {max_excess:.2e}")))
    });

    run(&mut checks, "disc_containment", &mut || {
        let mut max_excess = f64::NEG_INFINITY;
        for (tilt, members) in &groups {
            for &r in grid.radii() {
                let disc = containment_disc(*tilt, r)?;
                let radius = bound_scale * disc.radius;
                for &theta in grid.angles() {
                    let z = Complex64::from_polar(r, theta);
                    for p in members {
                        let d = (p.eval(z)? - disc.center).norm() - radius;
                        max_excess = max_excess.max(d);
                    }
                }
            }
        }
        Ok((max_excess <= 1e-9, format!("max distance excess {max_excess:.2e}")))
    });

    run(&mut checks, "growth_annulus", &mut || {
        let mut max_excess = f64::NEG_INFINITY;
        for (tilt, members) in &groups {
            for &r in grid.radii() {
                let hi = growth_max(*tilt, r)?;
                let lo = 1.0 / hi;
                for &theta in grid.angles() {
                    let z = Complex64::from_polar(r, theta);
                    for p in members {
                        let m = p.eval(z)?.norm();
                        max_excess = max_excess.max((m - hi).max(lo - m));
                    }
                }
            }
        }
        Ok((max_excess <= 1e-9, format!("max annulus excess {max_excess:.2e}")))
    });

    run(&mut checks, "logderiv_bound", &mut || {
        let mut max_excess = f64::NEG_INFINITY;
        let mut kernel_min_margin = f64::INFINITY;
        for (tilt, members) in &groups {
            for &r in grid.radii() {
                let m_bound = bound_scale * logderiv_max(*tilt, r)?;
                let n_bound = crate::bounds::logderiv_kernel_min(*tilt, r)?;
                for (pi, p) in members.iter().enumerate() {
                    let mut circle_min = f64::INFINITY;
                    for &theta in grid.angles() {
                        let z = Complex64::from_polar(r, theta);
                        let v = (z * p.eval_derivative(z)? / p.eval(z)?).norm();
                        max_excess = max_excess.max(v - m_bound);
                        circle_min = circle_min.min(v);
                    }
                    // The first roster entry is the untranslated kernel, whose
                    // minimum over the full circle is the closed form.
                    if pi == 0 {
                        kernel_min_margin = kernel_min_margin.min(circle_min - n_bound);
                    }
                }
            }
        }
        let passed = max_excess <= 1e-9 && kernel_min_margin >= -1e-9;
        Ok((
            passed,
            format!("max |z p'/p| excess {max_excess:.2e}, kernel min margin {kernel_min_margin:.2e}"),
        ))
    });

    run(&mut checks, "logderiv_monotonicity", &mut || {
        let mut worst = f64::NEG_INFINITY;
        for i in 0..10 {
            let r = 0.05 + 0.1 * i as f64;
            let cap = 2.0 * r / (1.0 - r * r);
            let mut prev = f64::INFINITY;
            for j in 0..10 {
                let tilt = TiltAngle::new(1.4 * j as f64 / 9.0)?;
                let m = logderiv_max(tilt, r)?;
                worst = worst.max(m - prev).max(m - cap);
                prev = m;
            }
        }
        Ok((worst <= 1e-12, format!("max monotonicity/cap violation {worst:.2e}")))
    });

    run(&mut checks, "sharpness_certificates", &mut || {
        let mut max_gap = f64::NEG_INFINITY;
        let mut ok = true;
        for name in BoundName::all() {
            let cert = sharpness_certificate(name, TiltAngle::new(0.9)?, 0.7, 256)?;
            let lower = matches!(name, BoundName::GrowthLo | BoundName::ReLo);
            let gap = if lower {
                cert.achieved - bound_scale * cert.bound
            } else {
                bound_scale * cert.bound - cert.achieved
            };
            ok &= gap >= -1e-9 && gap <= SHARPNESS_GAP;
            max_gap = max_gap.max(gap.abs());
        }
        let small = sharpness_certificate(BoundName::LogderivM, TiltAngle::new(1.2)?, 0.3, 512)?;
        let gap = bound_scale * small.bound - small.achieved;
        ok &= gap >= -1e-9 && gap <= SHARPNESS_GAP;
        let alpha_err = small.alpha_error.unwrap_or(f64::INFINITY);
        ok &= alpha_err < 1e-4;
        Ok((ok, format!("max |gap| {max_gap:.2e}, witness angle error {alpha_err:.2e}")))
    });

    run(&mut checks, "schur_product", &mut || {
        let tilt = TiltAngle::zero();
        let mut min_margin = f64::INFINITY;
        let mut max_dev = f64::NEG_INFINITY;
        for j in 0..5u64 {
            let a = random_member(tilt, 2 + (j % 3) as usize, split_seed(cfg.seed, 101, j))?;
            let b = random_member(tilt, 1 + (j % 4) as usize, split_seed(cfg.seed, 102, j))?;
            let prod = schur_half_hadamard(&a, &b)?;
            min_margin = min_margin.min(prod.membership(grid).min_margin);
            let z = Complex64::from_polar(0.5, 0.3);
            max_dev = max_dev.max((prod.eval(z)? - prod.series().evaluate(z)?).norm());
        }
        Ok((
            min_margin > 0.0 && max_dev < 1e-12,
            format!("min margin {min_margin:.3e}, measure/series deviation {max_dev:.2e}"),
        ))
    });

    run(&mut checks, "convolution_bound", &mut || {
        let pairs = [(0.3, 0.9), (-0.3, 0.9), (1.3, -1.3), (0.0, 1.3), (-0.9, -0.3)];
        let mut min_margin = f64::INFINITY;
        for (pi, &(la, lb)) in pairs.iter().enumerate() {
            for j in 0..3u64 {
                let a = random_member(TiltAngle::new(la)?, 1 + (j % 5) as usize, split_seed(cfg.seed, 200 + pi as u64, j))?;
                let b = random_member(TiltAngle::new(lb)?, 2 + (j % 3) as usize, split_seed(cfg.seed, 300 + pi as u64, j))?;
                let report = tilted_convolution_bound(&a, &b, grid);
                min_margin = min_margin.min(report.margin);
            }
        }
        Ok((min_margin > -EPS_SERIES, format!("min margin over bound {min_margin:.3e}")))
    });

    run(&mut checks, "subordination", &mut || {
        let mut max_drift = f64::NEG_INFINITY;
        let mut max_abs = f64::NEG_INFINITY;
        for (tilt, members) in &groups {
            let k32 = kernel_series(*tilt, ONE, 32)?;
            for p in members.iter().take(6) {
                let omega = subordination_omega(p);
                let c0 = omega.coeff(0);
                if c0 != Complex64::new(0.0, 0.0) {
                    return Ok((false, format!("omega(0) = {c0} is not exactly zero")));
                }
                max_drift = max_drift.max(k32.compose(&omega)?.max_abs_diff(&p.series().truncated(32)));
                for z in grid.points() {
                    max_abs = max_abs.max(subordination_omega_at(p, z)?.norm());
                }
            }
        }
        Ok((
            max_drift < EPS_SERIES && max_abs < 1.0,
            format!("max recomposition drift {max_drift:.2e}, max |omega| {max_abs:.6}"),
        ))
    });

    run(&mut checks, "dual_line", &mut || {
        let samples = default_line_samples(64);
        let mut min_distance = f64::INFINITY;
        for (_, members) in &groups {
            for p in members.iter().take(8) {
                min_distance = min_distance.min(dual_line_check(p, grid, &samples).min_distance);
            }
        }
        Ok((min_distance > EPS_LINE, format!("min distance to excluded values {min_distance:.3e}")))
    });

    run(&mut checks, "slit_domain", &mut || {
        let mut ok = true;
        for (tilt, members) in &groups {
            let domain = SlitDomain::new(*tilt);
            let kernel = &members[0];
            for z in grid.points() {
                ok &= domain.contains(kernel.eval(z)?);
            }
        }
        Ok((ok, "kernel images avoid both slits on the full grid".to_string()))
    });

    run(&mut checks, "base_transform", &mut || {
        let mut max_dev = f64::NEG_INFINITY;
        let mut max_round = f64::NEG_INFINITY;
        for (tilt, members) in &groups {
            let tan = tilt.sin() / tilt.cos();
            for p in members.iter().take(6) {
                let q = tilt_to_base(p);
                for &r in &[0.3, 0.7, 0.99] {
                    for j in 0..16 {
                        let z = Complex64::from_polar(r, -std::f64::consts::PI + 2.0 * std::f64::consts::PI * (j + 1) as f64 / 16.0);
                        let lhs = (z * q.eval_derivative(z)? / (q.eval(z)? + Complex64::new(0.0, tan))).norm();
                        let rhs = (z * p.eval_derivative(z)? / p.eval(z)?).norm();
                        max_dev = max_dev.max((lhs - rhs).abs());
                    }
                }
                max_round = max_round.max(tilt_from_base(&q, *tilt)?.series().max_abs_diff(p.series()));
            }
        }
        Ok((
            max_dev < 1e-10 && max_round < 1e-14,
            format!("max log-derivative deviation {max_dev:.2e}, max round-trip drift {max_round:.2e}"),
        ))
    });

    run(&mut checks, "spirallike", &mut || {
        let mut min_margin = f64::INFINITY;
        let mut ok = true;
        for &lam in &[0.9, -0.9] {
            let report = spirallike_verify(&spirallike_build(TiltAngle::new(lam)?, cfg.order)?, grid)?;
            ok &= report.passed;
            min_margin = min_margin.min(report.membership.min_margin);
        }
        for &lam in &[0.0, 1.3] {
            let tilt = TiltAngle::new(lam)?;
            for j in 0..2u64 {
                let p = random_member(tilt, 3, split_seed(cfg.seed, 400, j))?;
                let report = spirallike_verify(&spirallike_from_member(&p)?, grid)?;
                ok &= report.passed;
                min_margin = min_margin.min(report.membership.min_margin);
            }
        }
        Ok((ok, format!("min ratio margin {min_margin:.3e}")))
    });

    run(&mut checks, "robertson_radius", &mut || {
        let flat = robertson_radius(TiltAngle::zero(), 1e-3)?;
        let plus = robertson_radius(TiltAngle::new(0.8)?, 1e-3)?;
        let minus = robertson_radius(TiltAngle::new(-0.8)?, 1e-3)?;
        let sym = (plus.r_star - minus.r_star).abs();
        let ok = flat.touches_one
            && !plus.touches_one
            && plus.certified_false.is_some()
            && sym <= 2e-3;
        Ok((ok, format!("r(0) = {}, r(0.8) = {:.6}, symmetry deviation {sym:.2e}", flat.r_star, plus.r_star)))
    });

    run(&mut checks, "ctc_distortion", &mut || {
        let mut max_gap = f64::NEG_INFINITY;
        let mut ok = true;
        for &lam in &[0.0, 0.5, 1.0] {
            for &r in &[0.3, 0.6] {
                let report = ctc_scan(TiltAngle::new(lam)?, r, 64, 1e-9)?;
                ok &= report.hi_gap >= -1e-9 && report.hi_gap <= 1e-6;
                ok &= report.lo_gap >= -1e-9 && report.lo_gap <= 1e-6;
                max_gap = max_gap.max(report.hi_gap.abs()).max(report.lo_gap.abs());
            }
        }
        Ok((ok, format!("max attainment gap {max_gap:.2e}")))
    });

    run(&mut checks, "preschwarzian", &mut || {
        let reference = preschwarzian_norm(
            &dclass_reference(TiltAngle::new(1.0)?, cfg.order)?,
            &[0.9, 0.995],
            512,
            1e-9,
        )?;
        let mut ok = reference.norm > 1.95 && reference.norm <= 2.0 + 1e-6;
        let mut max_norm = reference.norm;
        for j in 0..2u64 {
            let p = random_member(TiltAngle::new(-0.9)?, 5, split_seed(cfg.seed, 500, j))?;
            let report = preschwarzian_norm(&dclass_member(&p)?, &[0.3, 0.7, 0.95], 256, 1e-8)?;
            ok &= report.norm <= 2.0 + 1e-6;
            max_norm = max_norm.max(report.norm);
        }
        Ok((ok, format!("reference norm {:.12}, max norm {max_norm:.6}", reference.norm)))
    });

    run(&mut checks, "random_members", &mut || {
        let tilt = TiltAngle::new(0.3)?;
        let seed = split_seed(cfg.seed, 7, 7);
        let a = random_member(tilt, 3, seed)?;
        let b = random_member(tilt, 3, seed)?;
        if a.series().max_abs_diff(b.series()) != 0.0 {
            return Ok((false, "same seed produced different members".to_string()));
        }
        let c = random_member(tilt, 3, split_seed(cfg.seed, 7, 8))?;
        let distinct = a.series().max_abs_diff(c.series()) > 1e-6;
        let mut measures_ok = true;
        for (_, members) in &groups {
            for p in members {
                if let Some(m) = p.measure() {
                    let mass: f64 = m.weights().iter().sum();
                    measures_ok &= (mass - 1.0).abs() <= 16.0 * EPS_UNIMODULAR;
                    measures_ok &= m.atoms().iter().all(|x| (x.norm() - 1.0).abs() <= EPS_UNIMODULAR);
                }
            }
        }
        Ok((
            distinct && measures_ok,
            "seeded members are reproducible, seed-distinct, and carry unit-mass measures".to_string(),
        ))
    });

    let all_passed = checks.iter().all(|c| c.passed);
    Ok(SuiteReport { seed: cfg.seed, order: cfg.order, all_passed, checks })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small_config() -> SuiteConfig {
        SuiteConfig {
            seed: 42,
            order: 32,
            lambdas: vec![0.0, 0.9, -1.3],
            members_per_lambda: 4,
            grid: EvaluationGrid::new(vec![0.2, 0.6, 0.9], (0..32).map(|j| -std::f64::consts::PI + 2.0 * std::f64::consts::PI * (j + 1) as f64 / 32.0).collect()).unwrap(),
        }
    }

    #[test]
    fn suite_passes_on_honest_bounds() {
        let report = run_suite(&small_config()).unwrap();
        for check in &report.checks {
            assert!(check.passed, "{}: {}", check.name, check.details);
        }
        assert!(report.all_passed);
    }

    #[test]
    fn suite_fails_when_bounds_are_tightened() {
        let report = run_suite_scaled(&small_config(), 0.99).unwrap();
        assert!(!report.all_passed);
        let names: Vec<&str> = report
            .checks
            .iter()
            .filter(|c| !c.passed)
            .map(|c| c.name.as_str())
            .collect();
        assert!(names.contains(&"sharpness_certificates"), "failing checks: {names:?}");
    }
}
