//! Normalized univalent-function subclasses driven by the tilted class:
//! spirallike functions, the Robertson family and its univalence radius,
//! close-to-convex functions with tilted argument, and functions whose
//! derivative lies in the class.
//!
//! Members carry a provenance so that pointwise values of z f'/f, f', and
//! f''/f' are computed from exact kernel formulas whenever the function was
//! built from a measure-backed member; series evaluation is the fallback.

use num_complex::Complex64;
use serde::Serialize;
use std::f64::consts::PI;

use crate::bounds::{containment_disc, growth_max, growth_min, re_bounds, Witness};
use crate::class::{
    check_unimodular, kernel_member, kernel_value, membership_test, ClassMember, MembershipReport,
    TiltAngle,
};
use crate::error::{Error, Result};
use crate::grid::EvaluationGrid;
use crate::search::golden_section_max;
use crate::series::TruncatedSeries;
use crate::tolerances::{
    EPS_DIV, INNER_SUP_RADIUS, INNER_SUP_SAMPLES, MAX_BISECTION_ITERS, REFINE_TOL, R_MAX,
};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Which subclass a normalized function certifies into.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum FunctionClass {
    Spirallike,
    Robertson,
    CloseToConvex,
    DerivativeClass,
}

/// How the function was produced; decides the exact pointwise formulas.
#[derive(Debug, Clone)]
pub enum FnProvenance {
    /// z f'/f equals this member exactly.
    Ratio(ClassMember),
    /// f' equals this member exactly.
    Derivative(ClassMember),
    /// f'(z) = p_lambda(x z)/(1 - y z)^2 exactly.
    CtcPair { x: Complex64, y: Complex64 },
    /// 1 + z f''/f' = p_lambda(z) exactly.
    RobertsonKernel,
    /// Only the truncated series is known.
    SeriesOnly,
}

/// A function f with f(0) = 0 and f'(0) = 1, carried as a truncated series
/// plus provenance.
#[derive(Debug, Clone)]
pub struct NormalizedFunction {
    tilt: TiltAngle,
    class: FunctionClass,
    series: TruncatedSeries,
    provenance: FnProvenance,
}

impl NormalizedFunction {
    /// Wraps a series after checking the normalization f(0) = 0, f'(0) = 1
    /// up to 1e-12 drift; both coefficients are then snapped exactly.
    pub fn new(
        tilt: TiltAngle,
        class: FunctionClass,
        series: TruncatedSeries,
        provenance: FnProvenance,
    ) -> Result<Self> {
        let c0 = series.coeff(0);
        if c0.norm() > 1e-12 {
            return Err(Error::NotNormalized { index: 0, got: c0 });
        }
        let c1 = series.coeff(1);
        if (c1 - ONE).norm() > 1e-12 {
            return Err(Error::NotNormalized { index: 1, got: c1 });
        }
        let mut coeffs = series.coeffs().to_vec();
        coeffs[0] = ZERO;
        if coeffs.len() > 1 {
            coeffs[1] = ONE;
        }
        Ok(Self {
            tilt,
            class,
            series: TruncatedSeries::from_coeffs(coeffs)?,
            provenance,
        })
    }

    pub fn tilt(&self) -> TiltAngle {
        self.tilt
    }

    pub fn class(&self) -> FunctionClass {
        self.class
    }

    pub fn series(&self) -> &TruncatedSeries {
        &self.series
    }

    pub fn coeff(&self, n: usize) -> Complex64 {
        self.series.coeff(n)
    }

    pub fn order(&self) -> usize {
        self.series.order()
    }

    pub fn provenance(&self) -> &FnProvenance {
        &self.provenance
    }

    /// Series evaluation of f itself.
    pub fn eval(&self, z: Complex64) -> Result<Complex64> {
        self.series.evaluate(z)
    }

    /// Pointwise f'(z), exact where the provenance allows it.
    pub fn derivative_at(&self, z: Complex64) -> Result<Complex64> {
        match &self.provenance {
            FnProvenance::Derivative(p) => p.eval(z),
            FnProvenance::CtcPair { x, y } => {
                let modulus = z.norm();
                if modulus > R_MAX {
                    return Err(Error::OutsideEvaluationRadius { modulus });
                }
                let d = ONE - *y * z;
                Ok(kernel_value(self.tilt, *x * z) / (d * d))
            }
            _ => self.series.derivative().evaluate(z),
        }
    }

    /// Pointwise z f'(z)/f(z), exact for ratio provenance.
    pub fn ratio_at(&self, z: Complex64) -> Result<Complex64> {
        match &self.provenance {
            FnProvenance::Ratio(p) => p.eval(z),
            _ => self.ratio_series().evaluate(z),
        }
    }

    /// The series of z f'/f, computed from g = f/z as 1 + z g'/g.
    pub fn ratio_series(&self) -> TruncatedSeries {
        let g = self.series.shifted_down().expect("normalized functions vanish at the origin");
        g.z_derivative()
            .div(&g)
            .expect("normalized functions have g(0) = 1")
            .add_constant(ONE)
    }

    /// Pointwise f''(z)/f'(z), exact where the provenance allows it.
    pub fn preschwarzian_at(&self, z: Complex64) -> Result<Complex64> {
        match &self.provenance {
            FnProvenance::Derivative(p) => {
                let v = p.eval(z)?;
                if v.norm() <= EPS_DIV {
                    return Err(Error::VanishingDerivative { z });
                }
                Ok(p.eval_derivative(z)? / v)
            }
            FnProvenance::CtcPair { x, y } => {
                let modulus = z.norm();
                if modulus > R_MAX {
                    return Err(Error::OutsideEvaluationRadius { modulus });
                }
                let q = self.tilt.kernel_phase();
                let wx = *x * z;
                // log f' = log(1 + q x z) - log(1 - x z) - 2 log(1 - y z).
                Ok(*x * (q / (ONE + q * wx) + ONE / (ONE - wx)) + 2.0 * *y / (ONE - *y * z))
            }
            FnProvenance::RobertsonKernel => {
                let modulus = z.norm();
                if modulus > R_MAX {
                    return Err(Error::OutsideEvaluationRadius { modulus });
                }
                // 1 + z f''/f' = p_lambda(z) collapses to (1 + q)/(1 - z).
                Ok((ONE + self.tilt.kernel_phase()) / (ONE - z))
            }
            FnProvenance::Ratio(p) => {
                // f = z exp(Lambda) with z f'/f = p gives
                // f''/f' = p'/p + (p - 1)/z.
                let v = p.eval(z)?;
                if v.norm() <= EPS_DIV {
                    return Err(Error::VanishingDerivative { z });
                }
                if z.norm() <= EPS_DIV {
                    // (p - 1)/z needs its removable singularity filled in.
                    return series_preschwarzian_at(&self.series, z);
                }
                Ok(p.eval_derivative(z)? / v + (v - ONE) / z)
            }
            FnProvenance::SeriesOnly => series_preschwarzian_at(&self.series, z),
        }
    }
}

fn series_preschwarzian_at(series: &TruncatedSeries, z: Complex64) -> Result<Complex64> {
    let f1 = series.derivative();
    let v = f1.evaluate(z)?;
    if v.norm() <= EPS_DIV {
        return Err(Error::VanishingDerivative { z });
    }
    Ok(f1.derivative().evaluate(z)? / v)
}

/// The reference spirallike function z (1 - z)^{-(1 + e^{-2 i lambda})},
/// whose ratio z f'/f is exactly the kernel.
pub fn spirallike_build(tilt: TiltAngle, order: usize) -> Result<NormalizedFunction> {
    let mut base = vec![ZERO; order.max(1)];
    base[0] = ONE;
    if base.len() > 1 {
        base[1] = -ONE;
    }
    let exponent = -(ONE + tilt.kernel_phase());
    let series = TruncatedSeries::from_coeffs(base)?.cpow(exponent)?.shifted_up();
    NormalizedFunction::new(
        tilt,
        FunctionClass::Spirallike,
        series,
        FnProvenance::Ratio(kernel_member(tilt, ONE, order)?),
    )
}

/// Builds the spirallike function with z f'/f = p: f = z exp(sum p_n z^n / n).
pub fn spirallike_from_member(p: &ClassMember) -> Result<NormalizedFunction> {
    let order = p.order();
    let mut lam_coeffs = vec![ZERO; order + 1];
    for (n, c) in lam_coeffs.iter_mut().enumerate().skip(1) {
        *c = p.coeff(n) / n as f64;
    }
    let series = TruncatedSeries::from_coeffs(lam_coeffs)?.exp().shifted_up();
    NormalizedFunction::new(
        p.tilt(),
        FunctionClass::Spirallike,
        series,
        FnProvenance::Ratio(p.clone()),
    )
}

/// Grid certification of a spirallike function: the ratio z f'/f must lie in
/// the tilted half-plane, inside the containment disc, inside the growth
/// annulus, and inside the real-part strip, each with 1e-9 slack.
#[derive(Debug, Clone, Serialize)]
pub struct SpirallikeReport {
    pub membership: MembershipReport,
    /// min over the grid of (disc radius - distance to disc center).
    pub disc_margin: f64,
    /// min over the grid of min(A - |w|, |w| - 1/A).
    pub growth_margin: f64,
    /// min over the grid of min(re_hi - Re w, Re w - re_lo).
    pub re_margin: f64,
    pub passed: bool,
}

pub fn spirallike_verify(f: &NormalizedFunction, grid: &EvaluationGrid) -> Result<SpirallikeReport> {
    let tilt = f.tilt();
    let ratio: Box<dyn Fn(Complex64) -> Complex64> = match &f.provenance {
        FnProvenance::Ratio(p) => {
            let p = p.clone();
            Box::new(move |z| p.eval(z).expect("grid radii stay inside the evaluation cap"))
        }
        _ => {
            let series = f.ratio_series();
            Box::new(move |z| series.evaluate(z).expect("grid radii stay inside the evaluation cap"))
        }
    };
    let membership = membership_test(|z| ratio(z), tilt, grid);
    if !membership.passed {
        return Err(Error::NotSpirallike { min_margin: membership.min_margin });
    }
    let mut disc_margin = f64::INFINITY;
    let mut growth_margin = f64::INFINITY;
    let mut re_margin = f64::INFINITY;
    for &r in grid.radii() {
        let disc = containment_disc(tilt, r)?;
        let a = growth_max(tilt, r)?;
        let (lo, hi) = re_bounds(tilt, r)?;
        for &theta in grid.angles() {
            let w = ratio(Complex64::from_polar(r, theta));
            disc_margin = disc_margin.min(disc.radius - (w - disc.center).norm());
            growth_margin = growth_margin.min((a - w.norm()).min(w.norm() - 1.0 / a));
            re_margin = re_margin.min((hi - w.re).min(w.re - lo));
        }
    }
    let slack = -1e-9;
    let passed = disc_margin >= slack && growth_margin >= slack && re_margin >= slack;
    Ok(SpirallikeReport { membership, disc_margin, growth_margin, re_margin, passed })
}

/// The Robertson reference function
/// e^{2 i lambda}((1 - z)^{-e^{-2 i lambda}} - 1), with 1 + z f''/f' equal
/// to the kernel.
pub fn robertson_build(tilt: TiltAngle, order: usize) -> Result<NormalizedFunction> {
    let mut base = vec![ZERO; order + 1];
    base[0] = ONE;
    base[1] = -ONE;
    let u = TruncatedSeries::from_coeffs(base)?.cpow(-tilt.kernel_phase())?;
    let rot = Complex64::cis(2.0 * tilt.radians());
    let series = u.add_constant(-ONE).scale(rot);
    NormalizedFunction::new(tilt, FunctionClass::Robertson, series, FnProvenance::RobertsonKernel)
}

/// Supremum of |G_r| on the circle |z| = INNER_SUP_RADIUS, where
/// G_r(z) = (m r z - 1 + (1 - r z)^m)/(r (1 - (1 - r z)^m)) and
/// m = 1 + e^{-2 i lambda}. The univalence criterion for the Robertson
/// function at radius r is sup |G_r| < 1.
pub fn robertson_inner_sup(tilt: TiltAngle, r: f64) -> f64 {
    let m = ONE + tilt.kernel_phase();
    let g = |theta: f64| {
        let rz = Complex64::from_polar(r * INNER_SUP_RADIUS, theta);
        let um = ((ONE - rz).ln() * m).exp();
        ((m * rz - ONE + um) / ((ONE - um) * r)).norm()
    };
    let mut best = f64::NEG_INFINITY;
    let mut best_theta = 0.0;
    for j in 0..INNER_SUP_SAMPLES {
        let theta = -PI + 2.0 * PI * (j + 1) as f64 / INNER_SUP_SAMPLES as f64;
        let v = g(theta);
        if v > best {
            best = v;
            best_theta = theta;
        }
    }
    let cell = 2.0 * PI / INNER_SUP_SAMPLES as f64;
    let (_, refined) = golden_section_max(g, best_theta - cell, best_theta + cell, REFINE_TOL);
    refined.max(best)
}

/// Outcome of the Robertson univalence-radius bisection.
#[derive(Debug, Clone, Serialize)]
pub struct RadiusResult {
    pub tilt: f64,
    /// The radius estimate: the bracket midpoint, or exactly 1 when the
    /// criterion holds all the way out.
    pub r_star: f64,
    /// Half-width of the final bracket (distance from r_star to each
    /// certified endpoint).
    pub width: f64,
    /// Largest radius at which the criterion was verified to hold.
    pub certified_true: f64,
    /// Smallest radius at which it was verified to fail; absent when it
    /// never failed below 1.
    pub certified_false: Option<f64>,
    pub touches_one: bool,
    pub inner_samples: usize,
    pub iterations: usize,
}

/// Bisects for the largest radius at which the Robertson univalence
/// criterion sup |G_r| < 1 holds. The bracket starts at [1e-3, 1 - 1e-6];
/// if the criterion still holds at the right end the radius is reported as
/// exactly 1.
pub fn robertson_radius(tilt: TiltAngle, tol: f64) -> Result<RadiusResult> {
    if !(tol >= 1e-6) {
        return Err(Error::ToleranceTooTight { tol });
    }
    let predicate = |r: f64| robertson_inner_sup(tilt, r) < 1.0;
    let mut lo = 1e-3;
    let hi_cap = 1.0 - 1e-6;
    if !predicate(lo) {
        return Err(Error::NonConvergence { iterations: 0 });
    }
    if predicate(hi_cap) {
        return Ok(RadiusResult {
            tilt: tilt.radians(),
            r_star: 1.0,
            width: 1.0 - hi_cap,
            certified_true: hi_cap,
            certified_false: None,
            touches_one: true,
            inner_samples: INNER_SUP_SAMPLES,
            iterations: 0,
        });
    }
    let mut hi = hi_cap;
    let mut iterations = 0;
    while hi - lo > tol {
        iterations += 1;
        if iterations > MAX_BISECTION_ITERS {
            return Err(Error::NonConvergence { iterations });
        }
        let mid = 0.5 * (lo + hi);
        if predicate(mid) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(RadiusResult {
        tilt: tilt.radians(),
        r_star: 0.5 * (lo + hi),
        width: 0.5 * (hi - lo),
        certified_true: lo,
        certified_false: Some(hi),
        touches_one: false,
        inner_samples: INNER_SUP_SAMPLES,
        iterations,
    })
}

/// Sharp distortion range for close-to-convex functions with tilted
/// argument, f'(z) = p(z)/(1 - y z)^2: the modulus of f' on |z| = r lies in
/// [A^{-1}(lambda, r)/(1 + r)^2, A(lambda, r)/(1 - r)^2].
pub fn ctc_distortion(tilt: TiltAngle, r: f64) -> Result<(f64, f64)> {
    let lo = growth_min(tilt, r)? / ((1.0 + r) * (1.0 + r));
    let hi = growth_max(tilt, r)? / ((1.0 - r) * (1.0 - r));
    Ok((lo, hi))
}

/// The extremal close-to-convex function with parameters (x, y):
/// f'(z) = p_lambda(x z)/(1 - y z)^2, integrated termwise.
pub fn ctc_extremal(tilt: TiltAngle, x: Complex64, y: Complex64, order: usize) -> Result<NormalizedFunction> {
    check_unimodular(x)?;
    check_unimodular(y)?;
    if order == 0 {
        return Err(Error::EmptySeries);
    }
    let kernel = crate::class::kernel_series(tilt, x, order - 1)?;
    let mut square = vec![ZERO; order];
    let mut power = ONE;
    for (n, c) in square.iter_mut().enumerate() {
        *c = (n as f64 + 1.0) * power;
        power *= y;
    }
    let fprime = kernel.mul(&TruncatedSeries::from_coeffs(square)?);
    let mut f = vec![ZERO; order + 1];
    for n in 1..=order {
        f[n] = fprime.coeff(n - 1) / n as f64;
    }
    NormalizedFunction::new(
        tilt,
        FunctionClass::CloseToConvex,
        TruncatedSeries::from_coeffs(f)?,
        FnProvenance::CtcPair { x, y },
    )
}

/// Certificate that the distortion range is attained by the extremal family.
#[derive(Debug, Clone, Serialize)]
pub struct CtcScanReport {
    pub r: f64,
    pub hi_bound: f64,
    pub hi_achieved: f64,
    /// hi_bound - hi_achieved; small and nonnegative when sharp.
    pub hi_gap: f64,
    pub hi_witness: Witness,
    pub lo_bound: f64,
    pub lo_achieved: f64,
    /// lo_achieved - lo_bound; small and nonnegative when sharp.
    pub lo_gap: f64,
    pub lo_witness: Witness,
}

/// Scans |f'| over the extremal family on |z| = r. The modulus factors as
/// |p_lambda(x z)| / |1 - y z|^2 with x and y free, so each factor is
/// refined independently after the lattice scan.
pub fn ctc_scan(tilt: TiltAngle, r: f64, lattice: usize, xtol: f64) -> Result<CtcScanReport> {
    if lattice < 2 {
        return Err(Error::LatticeTooSmall { size: lattice });
    }
    if !(r > 0.0 && r < 1.0) {
        return Err(Error::RadiusOutOfRange { r });
    }
    let (lo_bound, hi_bound) = ctc_distortion(tilt, r)?;

    // Factor objectives over the angle of x z and y z respectively.
    let kernel_factor = |psi: f64| kernel_value(tilt, Complex64::from_polar(r, psi)).norm();
    let pole_factor = |psi: f64| {
        let d = ONE - Complex64::from_polar(r, psi);
        1.0 / d.norm_sqr()
    };

    let angles: Vec<f64> = (0..lattice)
        .map(|j| -PI + 2.0 * PI * (j + 1) as f64 / lattice as f64)
        .collect();
    let cell = 2.0 * PI / lattice as f64;

    let scan = |f: &dyn Fn(f64) -> f64, maximize: bool| -> (f64, f64) {
        let mut best = f64::NEG_INFINITY;
        let mut best_psi = 0.0;
        for &psi in &angles {
            let v = if maximize { f(psi) } else { -f(psi) };
            if v > best {
                best = v;
                best_psi = psi;
            }
        }
        let wrapped = |psi: f64| if maximize { f(psi) } else { -f(psi) };
        let (psi, v) = golden_section_max(wrapped, best_psi - cell, best_psi + cell, xtol);
        if v > best {
            (psi, if maximize { v } else { -v })
        } else {
            (best_psi, if maximize { best } else { -best })
        }
    };

    let (psi_hi_x, hi_kernel) = scan(&kernel_factor, true);
    let (psi_hi_y, hi_pole) = scan(&pole_factor, true);
    let (psi_lo_x, lo_kernel) = scan(&kernel_factor, false);
    let (psi_lo_y, lo_pole) = scan(&pole_factor, false);

    let hi_achieved = hi_kernel * hi_pole;
    let lo_achieved = lo_kernel * lo_pole;
    // Witnesses use z = r, so the angles sit on the family parameters.
    let z = Complex64::new(r, 0.0);
    Ok(CtcScanReport {
        r,
        hi_bound,
        hi_achieved,
        hi_gap: hi_bound - hi_achieved,
        hi_witness: Witness { x: Complex64::cis(psi_hi_x), z, y: Some(Complex64::cis(psi_hi_y)), t: None },
        lo_bound,
        lo_achieved,
        lo_gap: lo_achieved - lo_bound,
        lo_witness: Witness { x: Complex64::cis(psi_lo_x), z, y: Some(Complex64::cis(psi_lo_y)), t: None },
    })
}

/// Distortion range for functions with f' in the class: the growth annulus.
pub fn dclass_distortion(tilt: TiltAngle, r: f64) -> Result<(f64, f64)> {
    Ok((growth_min(tilt, r)?, growth_max(tilt, r)?))
}

/// The function with f' = p, integrated termwise.
pub fn dclass_member(p: &ClassMember) -> Result<NormalizedFunction> {
    let order = p.order();
    let mut f = vec![ZERO; order + 2];
    for n in 1..=order + 1 {
        f[n] = p.coeff(n - 1) / n as f64;
    }
    NormalizedFunction::new(
        p.tilt(),
        FunctionClass::DerivativeClass,
        TruncatedSeries::from_coeffs(f)?,
        FnProvenance::Derivative(p.clone()),
    )
}

/// The reference member with f' equal to the kernel:
/// f = -(1 + e^{-2 i lambda}) log(1 - z) - e^{-2 i lambda} z.
pub fn dclass_reference(tilt: TiltAngle, order: usize) -> Result<NormalizedFunction> {
    dclass_member(&kernel_member(tilt, ONE, order)?)
}

/// Supremum of (1 - |z|^2) |f''(z)/f'(z)| over the scanned radii.
#[derive(Debug, Clone, Serialize)]
pub struct PreschwarzianReport {
    pub norm: f64,
    pub witness: Complex64,
}

/// Estimates the preschwarzian norm by scanning each circle |z| = r on an
/// angle lattice and refining the best angle by golden section.
pub fn preschwarzian_norm(
    f: &NormalizedFunction,
    radii: &[f64],
    angle_lattice: usize,
    xtol: f64,
) -> Result<PreschwarzianReport> {
    if angle_lattice < 2 {
        return Err(Error::LatticeTooSmall { size: angle_lattice });
    }
    if radii.is_empty() {
        return Err(Error::InvalidGrid { reason: "need at least one radius".into() });
    }
    let mut norm = f64::NEG_INFINITY;
    let mut witness = ZERO;
    for &r in radii {
        if !(r > 0.0 && r <= R_MAX) {
            return Err(Error::RadiusOutOfRange { r });
        }
        let weight = 1.0 - r * r;
        let objective = |theta: f64| {
            let z = Complex64::from_polar(r, theta);
            match f.preschwarzian_at(z) {
                Ok(t) => weight * t.norm(),
                Err(_) => f64::NEG_INFINITY,
            }
        };
        let mut best = f64::NEG_INFINITY;
        let mut best_theta = 0.0;
        for j in 0..angle_lattice {
            let theta = -PI + 2.0 * PI * (j + 1) as f64 / angle_lattice as f64;
            let v = objective(theta);
            if v > best {
                best = v;
                best_theta = theta;
            }
        }
        let cell = 2.0 * PI / angle_lattice as f64;
        let (theta, refined) = golden_section_max(objective, best_theta - cell, best_theta + cell, xtol);
        let (value, theta) = if refined > best { (refined, theta) } else { (best, best_theta) };
        if value > norm {
            norm = value;
            witness = Complex64::from_polar(r, theta);
        }
    }
    Ok(PreschwarzianReport { norm, witness })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::search::random_member;
    use crate::tolerances::DEFAULT_ORDER;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn spirallike_reference_at_tilt_zero_is_koebe() {
        let f = spirallike_build(TiltAngle::zero(), 16).unwrap();
        for n in 0..=16 {
            assert!((f.coeff(n) - c(n as f64, 0.0)).norm() < 1e-12, "n = {n}");
        }
    }

    #[test]
    fn spirallike_ratio_recovers_the_member() {
        let tilt = TiltAngle::new(0.7).unwrap();
        let p = random_member(tilt, 3, 7).unwrap();
        let f = spirallike_from_member(&p).unwrap();
        assert!(f.ratio_series().max_abs_diff(p.series()) < 1e-9);
        let z = c(0.25, -0.4);
        // Ratio provenance evaluates through the member itself.
        assert_eq!(f.ratio_at(z).unwrap(), p.eval(z).unwrap());
    }

    #[test]
    fn spirallike_verify_passes_reference_and_members() {
        let tilt = TiltAngle::new(0.9).unwrap();
        let grid = EvaluationGrid::standard();
        let report = spirallike_verify(&spirallike_build(tilt, DEFAULT_ORDER).unwrap(), &grid).unwrap();
        assert!(report.passed);
        // The kernel ratio runs along the disc boundary circle.
        assert!(report.disc_margin.abs() < 1e-9);

        let p = random_member(tilt, 4, 11).unwrap();
        let report = spirallike_verify(&spirallike_from_member(&p).unwrap(), &grid).unwrap();
        assert!(report.passed);
    }

    #[test]
    fn spirallike_verify_rejects_non_member_ratio() {
        // f = z exp(3 z) has z f'/f = 1 + 3z, which leaves the half-plane.
        let mut lam = vec![ZERO; 17];
        lam[1] = c(3.0, 0.0);
        let series = TruncatedSeries::from_coeffs(lam).unwrap().exp().shifted_up();
        let f = NormalizedFunction::new(
            TiltAngle::zero(),
            FunctionClass::Spirallike,
            series,
            FnProvenance::SeriesOnly,
        )
        .unwrap();
        assert!(matches!(
            spirallike_verify(&f, &EvaluationGrid::standard()),
            Err(Error::NotSpirallike { .. })
        ));
    }

    #[test]
    fn robertson_reference_satisfies_its_defining_identity() {
        let tilt = TiltAngle::new(0.4).unwrap();
        let f = robertson_build(tilt, 32).unwrap();
        // 1 + z f''/f' equals the kernel series.
        let f1 = f.series().derivative();
        let ratio = f1
            .z_derivative()
            .div(&f1)
            .unwrap()
            .add_constant(ONE);
        let kernel = crate::class::kernel_series(tilt, ONE, 31).unwrap();
        assert!(ratio.max_abs_diff(&kernel) < 1e-9);
        // Pointwise provenance formula agrees with the series.
        let z = c(0.3, 0.2);
        let direct = f.preschwarzian_at(z).unwrap();
        let by_series = series_preschwarzian_at(f.series(), z).unwrap();
        assert!((direct - by_series).norm() < 1e-9);
    }

    #[test]
    fn robertson_radius_touches_one_at_tilt_zero() {
        let result = robertson_radius(TiltAngle::zero(), 1e-3).unwrap();
        assert!(result.touches_one);
        assert_eq!(result.r_star, 1.0);
        assert!(result.certified_false.is_none());
    }

    #[test]
    fn robertson_radius_brackets_are_certified() {
        let tilt = TiltAngle::new(0.8).unwrap();
        let result = robertson_radius(tilt, 1e-4).unwrap();
        assert!(!result.touches_one);
        assert!(result.r_star > 0.5 && result.r_star < 1.0);
        assert!(result.width <= 1e-4);
        assert!(robertson_inner_sup(tilt, result.certified_true) < 1.0);
        assert!(robertson_inner_sup(tilt, result.certified_false.unwrap()) >= 1.0);
        assert!(robertson_radius(tilt, 1e-9).is_err());
    }

    #[test]
    fn ctc_distortion_reduces_to_koebe_bounds() {
        for &r in &[0.2, 0.5, 0.8] {
            let (lo, hi) = ctc_distortion(TiltAngle::zero(), r).unwrap();
            assert!((lo - (1.0 - r) / (1.0 + r).powi(3)).abs() < 1e-14 * lo.max(1.0));
            assert!((hi - (1.0 + r) / (1.0 - r).powi(3)).abs() < 1e-14 * hi);
        }
    }

    #[test]
    fn ctc_extremal_with_aligned_parameters_is_koebe() {
        let f = ctc_extremal(TiltAngle::zero(), ONE, ONE, 16).unwrap();
        for n in 0..=16 {
            assert!((f.coeff(n) - c(n as f64, 0.0)).norm() < 1e-12, "n = {n}");
        }
        assert!(ctc_extremal(TiltAngle::zero(), c(0.5, 0.0), ONE, 8).is_err());
    }

    #[test]
    fn ctc_scan_certifies_the_distortion_range() {
        let report = ctc_scan(TiltAngle::new(0.5).unwrap(), 0.6, 64, 1e-9).unwrap();
        assert!(report.hi_gap >= -1e-9 && report.hi_gap <= 1e-6, "hi gap = {}", report.hi_gap);
        assert!(report.lo_gap >= -1e-9 && report.lo_gap <= 1e-6, "lo gap = {}", report.lo_gap);
    }

    #[test]
    fn ctc_pair_derivative_matches_series() {
        let tilt = TiltAngle::new(-0.6).unwrap();
        let x = Complex64::cis(1.3);
        let y = Complex64::cis(-0.4);
        let f = ctc_extremal(tilt, x, y, 64).unwrap();
        let z = c(0.2, 0.3);
        let exact = f.derivative_at(z).unwrap();
        let series = f.series().derivative().evaluate(z).unwrap();
        assert!((exact - series).norm() < 1e-12);
        let t_exact = f.preschwarzian_at(z).unwrap();
        let t_series = series_preschwarzian_at(f.series(), z).unwrap();
        assert!((t_exact - t_series).norm() < 1e-10);
    }

    #[test]
    fn dclass_reference_coefficients() {
        // f = -2 log(1 - z) - z at tilt zero: c_1 = 1, c_n = 2/n.
        let f = dclass_reference(TiltAngle::zero(), 12).unwrap();
        assert_eq!(f.coeff(0), ZERO);
        assert_eq!(f.coeff(1), ONE);
        for n in 2..=13 {
            assert!((f.coeff(n) - c(2.0 / n as f64, 0.0)).norm() < 1e-13, "n = {n}");
        }
    }

    #[test]
    fn dclass_distortion_is_the_growth_annulus() {
        let tilt = TiltAngle::new(1.1).unwrap();
        let (lo, hi) = dclass_distortion(tilt, 0.7).unwrap();
        assert_eq!(lo, growth_min(tilt, 0.7).unwrap());
        assert_eq!(hi, growth_max(tilt, 0.7).unwrap());
    }

    #[test]
    fn preschwarzian_norm_of_reference_approaches_two() {
        let tilt = TiltAngle::new(1.0).unwrap();
        let f = dclass_reference(tilt, DEFAULT_ORDER).unwrap();
        let report = preschwarzian_norm(&f, &[0.9, 0.95, 0.995], 512, 1e-9).unwrap();
        assert!(report.norm > 1.95, "norm = {}", report.norm);
        assert!(report.norm <= 2.0 + 1e-9, "norm = {}", report.norm);
    }

    #[test]
    fn preschwarzian_norm_of_random_members_is_bounded() {
        for seed in [3, 17] {
            let p = random_member(TiltAngle::new(-0.9).unwrap(), 5, seed).unwrap();
            let f = dclass_member(&p).unwrap();
            let report = preschwarzian_norm(&f, &[0.3, 0.7, 0.95], 256, 1e-8).unwrap();
            assert!(report.norm <= 2.0 + 1e-6, "norm = {}", report.norm);
        }
    }

    #[test]
    fn normalization_is_enforced() {
        let bad = TruncatedSeries::from_coeffs(vec![c(0.1, 0.0), ONE]).unwrap();
        assert!(matches!(
            NormalizedFunction::new(TiltAngle::zero(), FunctionClass::Spirallike, bad, FnProvenance::SeriesOnly),
            Err(Error::NotNormalized { index: 0, .. })
        ));
        let bad = TruncatedSeries::from_coeffs(vec![ZERO, c(1.1, 0.0)]).unwrap();
        assert!(matches!(
            NormalizedFunction::new(TiltAngle::zero(), FunctionClass::Spirallike, bad, FnProvenance::SeriesOnly),
            Err(Error::NotNormalized { index: 1, .. })
        ));
    }
}
