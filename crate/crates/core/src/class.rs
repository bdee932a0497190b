//! The tilted half-plane class: members, kernels, discrete Herglotz
//! representations, membership and boundary-avoidance checks, subordination,
//! and Hadamard convolution results.
//!
//! A member at tilt lambda is analytic on the unit disc, takes the value 1 at
//! the origin, and maps the disc into the half-plane Re(e^{i lambda} w) > 0.
//! Members built from a discrete measure evaluate pointwise as exact convex
//! combinations of kernels, so grid checks carry no truncation error even at
//! the outermost grid radius.

use num_complex::Complex64;
use serde::Serialize;
use std::f64::consts::FRAC_PI_2;

use crate::error::{Error, Result};
use crate::grid::EvaluationGrid;
use crate::series::TruncatedSeries;
use crate::tolerances::{EPS_ANGLE, EPS_UNIMODULAR, R_MAX};

const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// A tilt angle lambda, kept strictly inside (-pi/2, pi/2) with a fixed
/// margin; at the endpoints the image half-plane degenerates to a line.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TiltAngle {
    radians: f64,
}

impl TiltAngle {
    pub fn new(radians: f64) -> Result<Self> {
        if !radians.is_finite() || radians.abs() > FRAC_PI_2 - EPS_ANGLE {
            return Err(Error::TiltOutOfRange { radians });
        }
        Ok(Self { radians })
    }

    pub const fn zero() -> Self {
        Self { radians: 0.0 }
    }

    pub fn radians(self) -> f64 {
        self.radians
    }

    pub fn cos(self) -> f64 {
        self.radians.cos()
    }

    pub fn sin(self) -> f64 {
        self.radians.sin()
    }

    /// e^{i lambda}, the rotation that sends the image half-plane to the
    /// right half-plane.
    pub fn rotation(self) -> Complex64 {
        Complex64::cis(self.radians)
    }

    /// e^{-2 i lambda}, the phase carried by every kernel numerator.
    pub fn kernel_phase(self) -> Complex64 {
        Complex64::cis(-2.0 * self.radians)
    }
}

pub(crate) fn check_unimodular(x: Complex64) -> Result<()> {
    let modulus = x.norm();
    if (modulus - 1.0).abs() > EPS_UNIMODULAR {
        return Err(Error::NotUnimodular { modulus });
    }
    Ok(())
}

/// A finitely supported probability measure on the unit circle.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DiscreteMeasure {
    atoms: Vec<Complex64>,
    weights: Vec<f64>,
}

impl DiscreteMeasure {
    /// Atoms must be unimodular, weights nonnegative with total mass 1.
    pub fn new(atoms: Vec<Complex64>, weights: Vec<f64>) -> Result<Self> {
        if atoms.is_empty() || atoms.len() != weights.len() {
            return Err(Error::InvalidMeasure {
                reason: "need equally many atoms and weights, at least one each".into(),
            });
        }
        for &x in &atoms {
            check_unimodular(x).map_err(|_| Error::InvalidMeasure {
                reason: format!("atom {x} is off the unit circle"),
            })?;
        }
        for &t in &weights {
            if !(t >= 0.0) {
                return Err(Error::InvalidMeasure { reason: format!("weight {t} is not nonnegative") });
            }
        }
        let mass: f64 = weights.iter().sum();
        if (mass - 1.0).abs() > 16.0 * EPS_UNIMODULAR {
            return Err(Error::InvalidMeasure { reason: format!("total mass {mass} is not 1") });
        }
        Ok(Self { atoms, weights })
    }

    /// The point mass at a single unimodular atom.
    pub fn point(x: Complex64) -> Result<Self> {
        Self::new(vec![x], vec![1.0])
    }

    pub fn atoms(&self) -> &[Complex64] {
        &self.atoms
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

/// How a member was produced, which decides how it is evaluated pointwise.
#[derive(Debug, Clone)]
pub enum Provenance {
    /// Exact finite Herglotz representation.
    Measure(DiscreteMeasure),
    /// Only the truncated series is known; pointwise values truncate there.
    SeriesOnly,
}

/// A member of the tilted class, carrying its truncated series and, when
/// available, the representing measure for exact evaluation.
#[derive(Debug, Clone)]
pub struct ClassMember {
    tilt: TiltAngle,
    series: TruncatedSeries,
    provenance: Provenance,
}

impl ClassMember {
    /// Wraps a bare series as a member. The constant term must equal 1 up to
    /// rounding; it is then snapped exactly.
    pub fn from_series(tilt: TiltAngle, series: TruncatedSeries) -> Result<Self> {
        let c0 = series.coeff(0);
        if (c0 - ONE).norm() > 1e-9 {
            return Err(Error::BadBranchAnchor { constant: c0 });
        }
        let mut coeffs = series.coeffs().to_vec();
        coeffs[0] = ONE;
        let series = TruncatedSeries::from_coeffs(coeffs)?;
        Ok(Self { tilt, series, provenance: Provenance::SeriesOnly })
    }

    pub fn tilt(&self) -> TiltAngle {
        self.tilt
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

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    pub fn measure(&self) -> Option<&DiscreteMeasure> {
        match &self.provenance {
            Provenance::Measure(mu) => Some(mu),
            Provenance::SeriesOnly => None,
        }
    }

    /// Pointwise value: an exact kernel combination for measure members,
    /// truncated series evaluation otherwise.
    pub fn eval(&self, z: Complex64) -> Result<Complex64> {
        match &self.provenance {
            Provenance::Measure(mu) => {
                let modulus = z.norm();
                if modulus > R_MAX {
                    return Err(Error::OutsideEvaluationRadius { modulus });
                }
                let mut acc = Complex64::new(0.0, 0.0);
                for (&x, &t) in mu.atoms.iter().zip(&mu.weights) {
                    acc += t * kernel_value(self.tilt, x * z);
                }
                Ok(acc)
            }
            Provenance::SeriesOnly => self.series.evaluate(z),
        }
    }

    /// Pointwise derivative value, exact for measure members.
    pub fn eval_derivative(&self, z: Complex64) -> Result<Complex64> {
        match &self.provenance {
            Provenance::Measure(mu) => {
                let modulus = z.norm();
                if modulus > R_MAX {
                    return Err(Error::OutsideEvaluationRadius { modulus });
                }
                let mut acc = Complex64::new(0.0, 0.0);
                for (&x, &t) in mu.atoms.iter().zip(&mu.weights) {
                    acc += t * x * kernel_derivative(self.tilt, x * z);
                }
                Ok(acc)
            }
            Provenance::SeriesOnly => self.series.derivative().evaluate(z),
        }
    }

    /// Rotated-real-part minimum over the grid; the membership certificate.
    pub fn membership(&self, grid: &EvaluationGrid) -> MembershipReport {
        let tilt = self.tilt;
        membership_test(|z| self.eval(z).expect("grid radii stay inside the evaluation cap"), tilt, grid)
    }
}

/// The half-plane kernel w -> (1 + e^{-2 i lambda} w)/(1 - w), evaluated
/// directly; callers pass w = x z.
pub fn kernel_value(tilt: TiltAngle, w: Complex64) -> Complex64 {
    (ONE + tilt.kernel_phase() * w) / (ONE - w)
}

/// Derivative of the kernel in w: (1 + e^{-2 i lambda})/(1 - w)^2.
pub fn kernel_derivative(tilt: TiltAngle, w: Complex64) -> Complex64 {
    let d = ONE - w;
    (ONE + tilt.kernel_phase()) / (d * d)
}

/// Kernel member value p(z) for the rotated kernel p_lambda(x z).
pub fn kernel_eval(tilt: TiltAngle, x: Complex64, z: Complex64) -> Result<Complex64> {
    check_unimodular(x)?;
    let modulus = z.norm();
    if modulus > R_MAX {
        return Err(Error::OutsideEvaluationRadius { modulus });
    }
    Ok(kernel_value(tilt, x * z))
}

/// Builds a member from a discrete measure: coefficients are
/// c_0 = 1 and c_n = (1 + e^{-2 i lambda}) sum_k t_k x_k^n.
pub fn herglotz_build(tilt: TiltAngle, measure: &DiscreteMeasure, order: usize) -> ClassMember {
    let factor = ONE + tilt.kernel_phase();
    let mut coeffs = vec![Complex64::new(0.0, 0.0); order + 1];
    coeffs[0] = ONE;
    let mut powers: Vec<Complex64> = measure.atoms.clone();
    for c in coeffs.iter_mut().skip(1) {
        let mut moment = Complex64::new(0.0, 0.0);
        for ((p, &x), &t) in powers.iter_mut().zip(&measure.atoms).zip(&measure.weights) {
            moment += t * *p;
            *p *= x;
        }
        *c = factor * moment;
    }
    let series = TruncatedSeries::from_coeffs(coeffs).expect("herglotz coefficients are finite");
    ClassMember { tilt, series, provenance: Provenance::Measure(measure.clone()) }
}

/// The rotated kernel as a member (point measure at x).
pub fn kernel_member(tilt: TiltAngle, x: Complex64, order: usize) -> Result<ClassMember> {
    Ok(herglotz_build(tilt, &DiscreteMeasure::point(x)?, order))
}

/// Truncated series of the rotated kernel.
pub fn kernel_series(tilt: TiltAngle, x: Complex64, order: usize) -> Result<TruncatedSeries> {
    Ok(kernel_member(tilt, x, order)?.series)
}

/// Result of a rotated-real-part sweep over a grid.
#[derive(Debug, Clone, Serialize)]
pub struct MembershipReport {
    /// Minimum of Re(e^{i lambda} f(z)) over the grid.
    pub min_margin: f64,
    /// First grid point attaining the minimum, radius-major order.
    pub witness: Complex64,
    /// True iff the minimum is strictly positive.
    pub passed: bool,
}

/// Sweeps Re(e^{i lambda} f(z)) over the grid and records the minimum.
pub fn membership_test(
    mut f: impl FnMut(Complex64) -> Complex64,
    tilt: TiltAngle,
    grid: &EvaluationGrid,
) -> MembershipReport {
    let rot = tilt.rotation();
    let mut min_margin = f64::INFINITY;
    let mut witness = Complex64::new(0.0, 0.0);
    for z in grid.points() {
        let margin = (rot * f(z)).re;
        if margin < min_margin {
            min_margin = margin;
            witness = z;
        }
    }
    MembershipReport { min_margin, witness, passed: min_margin > 0.0 }
}

/// The Schwarz function omega with p = p_lambda(omega): the Moebius transfer
/// (p - 1)/(p + e^{-2 i lambda}) applied to the series.
pub fn subordination_omega(p: &ClassMember) -> TruncatedSeries {
    let q = p.tilt.kernel_phase();
    let num = p.series.add_constant(-ONE);
    let den = p.series.add_constant(q);
    num.div(&den).expect("1 + e^{-2 i lambda} is bounded away from zero on the admissible tilt range")
}

/// Pointwise value of the same Moebius transfer, exact for measure members.
/// The denominator cannot vanish for class members: -e^{-2 i lambda} lies in
/// the closed complementary half-plane.
pub fn subordination_omega_at(p: &ClassMember, z: Complex64) -> Result<Complex64> {
    let v = p.eval(z)?;
    Ok((v - ONE) / (v + p.tilt.kernel_phase()))
}

/// Excluded values for the dual line check: as x runs over unimodular points
/// other than -1, w(x) = (1 - e^{-2 i lambda} x)/(1 + x) traces the boundary
/// line Re(e^{i lambda} w) = 0, which members never meet.
pub fn dual_line_excluded_value(tilt: TiltAngle, x: Complex64) -> Complex64 {
    (ONE - tilt.kernel_phase() * x) / (ONE + x)
}

/// Unimodular sample points x_j = e^{i pi (2j + 1)/count}: equispaced,
/// excluding both 1 and -1 for every even count.
pub fn default_line_samples(count: usize) -> Vec<Complex64> {
    (0..count)
        .map(|j| Complex64::cis(std::f64::consts::PI * (2 * j + 1) as f64 / count as f64))
        .collect()
}

#[derive(Debug, Clone, Serialize)]
pub struct DualLineReport {
    /// Smallest distance from a grid value of p to an excluded value.
    pub min_distance: f64,
    pub witness_z: Complex64,
    pub witness_x: Complex64,
    /// True iff the minimum clears EPS_LINE.
    pub passed: bool,
}

/// Checks that p stays clear of every sampled excluded value on the dual
/// boundary line. Samples too close to x = -1 (where the excluded value
/// escapes to infinity) are skipped.
pub fn dual_line_check(p: &ClassMember, grid: &EvaluationGrid, samples: &[Complex64]) -> DualLineReport {
    let excluded: Vec<(Complex64, Complex64)> = samples
        .iter()
        .filter(|&&x| (ONE + x).norm() > 1e-9)
        .map(|&x| (x, dual_line_excluded_value(p.tilt, x)))
        .collect();
    let mut min_distance = f64::INFINITY;
    let mut witness_z = Complex64::new(0.0, 0.0);
    let mut witness_x = Complex64::new(0.0, 0.0);
    for z in grid.points() {
        let v = p.eval(z).expect("grid radii stay inside the evaluation cap");
        for &(x, w) in &excluded {
            let d = (v - w).norm();
            if d < min_distance {
                min_distance = d;
                witness_z = z;
                witness_x = x;
            }
        }
    }
    DualLineReport {
        min_distance,
        witness_z,
        witness_x,
        passed: min_distance > crate::tolerances::EPS_LINE,
    }
}

/// Maps a member at tilt lambda to the member of the untilted class with the
/// same representing measure: q = (e^{i lambda} p - i sin lambda)/cos lambda.
pub fn tilt_to_base(p: &ClassMember) -> ClassMember {
    let factor = p.tilt.rotation() / p.tilt.cos();
    let mut coeffs = p.series.coeffs().to_vec();
    coeffs[0] = ONE;
    for c in coeffs.iter_mut().skip(1) {
        *c *= factor;
    }
    ClassMember {
        tilt: TiltAngle::zero(),
        series: TruncatedSeries::from_coeffs(coeffs).expect("rescaled coefficients stay finite"),
        provenance: p.provenance.clone(),
    }
}

/// Inverse of `tilt_to_base`: p = e^{-i lambda}(cos(lambda) q + i sin(lambda)).
pub fn tilt_from_base(q: &ClassMember, tilt: TiltAngle) -> Result<ClassMember> {
    if q.tilt.radians() != 0.0 {
        return Err(Error::TiltMismatch { left: q.tilt.radians(), right: 0.0 });
    }
    let factor = tilt.cos() * Complex64::cis(-tilt.radians());
    let mut coeffs = q.series.coeffs().to_vec();
    coeffs[0] = ONE;
    for c in coeffs.iter_mut().skip(1) {
        *c *= factor;
    }
    Ok(ClassMember {
        tilt,
        series: TruncatedSeries::from_coeffs(coeffs).expect("rescaled coefficients stay finite"),
        provenance: q.provenance.clone(),
    })
}

/// Half-weight Hadamard product on the untilted class: c_0 = 1 and
/// c_n = a_n b_n / 2. The class is closed under this operation; when both
/// operands carry measures the result carries the product measure, so the
/// closure is certified by exact evaluation.
pub fn schur_half_hadamard(a: &ClassMember, b: &ClassMember) -> Result<ClassMember> {
    if a.tilt.radians() != 0.0 || b.tilt.radians() != 0.0 {
        return Err(Error::TiltMismatch { left: a.tilt.radians(), right: b.tilt.radians() });
    }
    let order = a.order().min(b.order());
    let mut coeffs = vec![ONE; order + 1];
    for (n, c) in coeffs.iter_mut().enumerate().skip(1) {
        *c = a.coeff(n) * b.coeff(n) * 0.5;
    }
    let provenance = match (&a.provenance, &b.provenance) {
        (Provenance::Measure(ma), Provenance::Measure(mb)) => {
            let mut atoms = Vec::with_capacity(ma.len() * mb.len());
            let mut weights = Vec::with_capacity(ma.len() * mb.len());
            for (&x, &s) in ma.atoms.iter().zip(&ma.weights) {
                for (&y, &t) in mb.atoms.iter().zip(&mb.weights) {
                    atoms.push(x * y);
                    weights.push(s * t);
                }
            }
            Provenance::Measure(DiscreteMeasure::new(atoms, weights)?)
        }
        _ => Provenance::SeriesOnly,
    };
    Ok(ClassMember {
        tilt: TiltAngle::zero(),
        series: TruncatedSeries::from_coeffs(coeffs)?,
        provenance,
    })
}

/// Outcome of the convolution lower-bound sweep.
#[derive(Debug, Clone, Serialize)]
pub struct ConvolutionReport {
    pub tilt_sum: f64,
    /// The sharp lower bound -cos(lambda_1 - lambda_2).
    pub bound: f64,
    /// Minimum of Re(e^{i(lambda_1 + lambda_2)} (p_1 * p_2)(z)) over the grid.
    pub min_rotated_re: f64,
    /// min_rotated_re - bound; nonnegative up to rounding for true members.
    pub margin: f64,
    pub witness: Complex64,
    pub satisfied: bool,
}

/// Full Hadamard product p_1 * p_2 swept over the grid against the sharp
/// lower bound Re(e^{i(l1 + l2)}(p_1 * p_2)) > -cos(l1 - l2). Measure pairs
/// are evaluated exactly through the product measure; otherwise the
/// truncated Hadamard series is used.
pub fn tilted_convolution_bound(
    a: &ClassMember,
    b: &ClassMember,
    grid: &EvaluationGrid,
) -> ConvolutionReport {
    let l1 = a.tilt.radians();
    let l2 = b.tilt.radians();
    let bound = -((l1 - l2).cos());
    let rot = Complex64::cis(l1 + l2);

    enum Eval {
        Exact { factor: Complex64, atoms: Vec<Complex64>, weights: Vec<f64> },
        Series(TruncatedSeries),
    }
    let eval = match (&a.provenance, &b.provenance) {
        (Provenance::Measure(ma), Provenance::Measure(mb)) => {
            let factor = (ONE + a.tilt.kernel_phase()) * (ONE + b.tilt.kernel_phase());
            let mut atoms = Vec::with_capacity(ma.len() * mb.len());
            let mut weights = Vec::with_capacity(ma.len() * mb.len());
            for (&x, &s) in ma.atoms.iter().zip(&ma.weights) {
                for (&y, &t) in mb.atoms.iter().zip(&mb.weights) {
                    atoms.push(x * y);
                    weights.push(s * t);
                }
            }
            Eval::Exact { factor, atoms, weights }
        }
        _ => Eval::Series(a.series.hadamard(&b.series)),
    };

    let mut min_rotated_re = f64::INFINITY;
    let mut witness = Complex64::new(0.0, 0.0);
    for z in grid.points() {
        let v = match &eval {
            Eval::Exact { factor, atoms, weights } => {
                let mut acc = ONE;
                for (&u, &t) in atoms.iter().zip(weights) {
                    let w = u * z;
                    acc += factor * t * (w / (ONE - w));
                }
                acc
            }
            Eval::Series(h) => h.evaluate(z).expect("grid radii stay inside the evaluation cap"),
        };
        let m = (rot * v).re;
        if m < min_rotated_re {
            min_rotated_re = m;
            witness = z;
        }
    }
    let margin = min_rotated_re - bound;
    ConvolutionReport {
        tilt_sum: l1 + l2,
        bound,
        min_rotated_re,
        margin,
        witness,
        satisfied: margin > -crate::tolerances::EPS_SERIES,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tolerances::{DEFAULT_ORDER, EPS_LINE};
    use std::f64::consts::{FRAC_PI_3, PI};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn tilt_angle_rejects_degenerate_values() {
        assert!(TiltAngle::new(0.0).is_ok());
        assert!(TiltAngle::new(1.5707).is_ok());
        assert!(TiltAngle::new(FRAC_PI_2).is_err());
        assert!(TiltAngle::new(-2.0).is_err());
        assert!(TiltAngle::new(f64::NAN).is_err());
    }

    #[test]
    fn kernel_point_values() {
        let t0 = TiltAngle::zero();
        assert_eq!(kernel_eval(t0, ONE, c(0.0, 0.0)).unwrap(), ONE);
        let v = kernel_eval(t0, ONE, c(0.5, 0.0)).unwrap();
        assert!((v - c(3.0, 0.0)).norm() < 1e-15);
        // Rotated atom: p_0(-z) at z = 0.5 is 1/3.
        let v = kernel_eval(t0, -ONE, c(0.5, 0.0)).unwrap();
        assert!((v - c(1.0 / 3.0, 0.0)).norm() < 1e-15);
        assert!(kernel_eval(t0, c(2.0, 0.0), c(0.1, 0.0)).is_err());
        assert!(kernel_eval(t0, ONE, ONE).is_err());
    }

    #[test]
    fn kernel_value_at_tilted_point_is_pinned() {
        // (1 + e^{-2 i pi/3} (0.4 i))/(1 - 0.4 i), checked against an
        // independent high-precision evaluation.
        let v = kernel_eval(TiltAngle::new(FRAC_PI_3).unwrap(), ONE, c(0.0, 0.4)).unwrap();
        assert!((v - c(1.2296639323394616, 0.2918655729357846)).norm() < 1e-13);
    }

    #[test]
    fn kernel_series_matches_long_division() {
        let tilt = TiltAngle::new(0.8).unwrap();
        let x = Complex64::cis(2.3);
        let q = tilt.kernel_phase();
        // (1 + q x z)/(1 - x z) by long division.
        let mut num = vec![c(0.0, 0.0); 17];
        num[0] = ONE;
        num[1] = q * x;
        let mut den = vec![c(0.0, 0.0); 17];
        den[0] = ONE;
        den[1] = -x;
        let by_division = TruncatedSeries::from_coeffs(num)
            .unwrap()
            .div(&TruncatedSeries::from_coeffs(den).unwrap())
            .unwrap();
        let direct = kernel_series(tilt, x, 16).unwrap();
        assert!(direct.max_abs_diff(&by_division) < 1e-13);
    }

    #[test]
    fn herglotz_two_atom_symmetric_example() {
        let mu = DiscreteMeasure::new(vec![ONE, -ONE], vec![0.5, 0.5]).unwrap();
        let p = herglotz_build(TiltAngle::zero(), &mu, 8);
        // (1 + z^2)/(1 - z^2): even coefficients 2, odd 0.
        for n in 0..=8 {
            let want = if n == 0 {
                ONE
            } else if n % 2 == 0 {
                c(2.0, 0.0)
            } else {
                c(0.0, 0.0)
            };
            assert_eq!(p.coeff(n), want, "n = {n}");
        }
        let z = c(0.3, 0.25);
        let got = p.eval(z).unwrap();
        let want = (ONE + z * z) / (ONE - z * z);
        assert!((got - want).norm() < 1e-15);
    }

    #[test]
    fn first_coefficient_modulus_is_two_cos_tilt() {
        for &lam in &[-1.3, -0.4, 0.0, 0.7, 1.2] {
            let tilt = TiltAngle::new(lam).unwrap();
            let p = kernel_member(tilt, Complex64::cis(0.9), 32).unwrap();
            assert!((p.coeff(1).norm() - 2.0 * lam.cos()).abs() < 1e-14, "lambda = {lam}");
        }
    }

    #[test]
    fn membership_accepts_kernel_and_rejects_affine_escape() {
        let tilt = TiltAngle::new(0.9).unwrap();
        let p = kernel_member(tilt, Complex64::cis(1.1), DEFAULT_ORDER).unwrap();
        let report = p.membership(&EvaluationGrid::standard());
        assert!(report.passed);
        assert!(report.min_margin > 0.0);

        // 1 + 3z leaves every tilted half-plane at z = -0.9.
        let escape = ClassMember::from_series(
            TiltAngle::zero(),
            TruncatedSeries::from_coeffs(vec![ONE, c(3.0, 0.0)]).unwrap(),
        )
        .unwrap();
        let grid = EvaluationGrid::new(vec![0.9], vec![PI]).unwrap();
        let report = escape.membership(&grid);
        assert!(!report.passed);
        assert!((report.min_margin - (1.0 - 2.7)).abs() < 1e-12);
    }

    #[test]
    fn subordination_of_rotated_kernel_is_the_rotation() {
        let tilt = TiltAngle::new(0.7).unwrap();
        let x = Complex64::cis(-2.1);
        let p = kernel_member(tilt, x, 24).unwrap();
        let omega = subordination_omega(&p);
        assert_eq!(omega.coeff(0), c(0.0, 0.0));
        assert!((omega.coeff(1) - x).norm() < 1e-15);
        for n in 2..=24 {
            assert!(omega.coeff(n).norm() < 1e-14, "n = {n}");
        }
        // Pointwise transfer agrees.
        let z = c(0.2, -0.6);
        let w = subordination_omega_at(&p, z).unwrap();
        assert!((w - x * z).norm() < 1e-15);
    }

    #[test]
    fn excluded_values_trace_the_boundary_line() {
        let tilt = TiltAngle::new(-0.6).unwrap();
        let rot = tilt.rotation();
        for x in default_line_samples(64) {
            let w = dual_line_excluded_value(tilt, x);
            assert!((rot * w).re.abs() < 1e-13);
        }
    }

    #[test]
    fn dual_line_check_passes_members() {
        let tilt = TiltAngle::new(0.5).unwrap();
        let mu = DiscreteMeasure::new(
            vec![Complex64::cis(0.4), Complex64::cis(-1.9), Complex64::cis(2.8)],
            vec![0.2, 0.5, 0.3],
        )
        .unwrap();
        let p = herglotz_build(tilt, &mu, DEFAULT_ORDER);
        let report = dual_line_check(&p, &EvaluationGrid::standard(), &default_line_samples(64));
        assert!(report.passed);
        assert!(report.min_distance > EPS_LINE);
    }

    #[test]
    fn tilt_transfer_round_trip_preserves_series_and_measure() {
        let tilt = TiltAngle::new(0.8).unwrap();
        let mu = DiscreteMeasure::new(vec![Complex64::cis(0.3), Complex64::cis(-2.4)], vec![0.7, 0.3]).unwrap();
        let p = herglotz_build(tilt, &mu, 32);
        let q = tilt_to_base(&p);
        assert_eq!(q.tilt().radians(), 0.0);
        // Same measure, untilted coefficients.
        let q_direct = herglotz_build(TiltAngle::zero(), &mu, 32);
        assert!(q.series().max_abs_diff(q_direct.series()) < 1e-13);
        let back = tilt_from_base(&q, tilt).unwrap();
        assert!(back.series().max_abs_diff(p.series()) < 1e-13);
        assert_eq!(back.measure().unwrap(), &mu);
        // Rebasing a member that is not untilted is rejected.
        assert!(tilt_from_base(&p, tilt).is_err());
    }

    #[test]
    fn schur_with_the_half_plane_kernel_is_the_identity() {
        let mu = DiscreteMeasure::new(vec![Complex64::cis(1.0), Complex64::cis(-0.2)], vec![0.4, 0.6]).unwrap();
        let p = herglotz_build(TiltAngle::zero(), &mu, 24);
        let k = kernel_member(TiltAngle::zero(), ONE, 24).unwrap();
        let s = schur_half_hadamard(&p, &k).unwrap();
        assert_eq!(s.series(), p.series());
        // Product measure with a point mass at 1 is the original measure.
        assert_eq!(s.measure().unwrap().atoms(), mu.atoms());
        let tilted = herglotz_build(TiltAngle::new(0.4).unwrap(), &mu, 24);
        assert!(schur_half_hadamard(&tilted, &k).is_err());
    }

    #[test]
    fn schur_product_stays_in_class() {
        let mu_a = DiscreteMeasure::new(vec![Complex64::cis(0.9), Complex64::cis(-1.7)], vec![0.55, 0.45]).unwrap();
        let mu_b = DiscreteMeasure::new(vec![Complex64::cis(2.2), Complex64::cis(0.1)], vec![0.25, 0.75]).unwrap();
        let a = herglotz_build(TiltAngle::zero(), &mu_a, DEFAULT_ORDER);
        let b = herglotz_build(TiltAngle::zero(), &mu_b, DEFAULT_ORDER);
        let s = schur_half_hadamard(&a, &b).unwrap();
        assert_eq!(s.measure().unwrap().len(), 4);
        assert!(s.membership(&EvaluationGrid::standard()).passed);
        // The product-measure evaluation matches the half-Hadamard series.
        let z = c(-0.3, 0.2);
        let exact = s.eval(z).unwrap();
        let series = s.series().evaluate(z).unwrap();
        assert!((exact - series).norm() < 1e-12);
    }

    #[test]
    fn convolution_bound_for_untilted_kernels() {
        let k = kernel_member(TiltAngle::zero(), ONE, DEFAULT_ORDER).unwrap();
        let report = tilted_convolution_bound(&k, &k, &EvaluationGrid::standard());
        assert_eq!(report.bound, -1.0);
        assert!(report.satisfied);
        // (p_0 * p_0)(z) = 1 + 4z/(1 - z) dips to -0.98995 at z = -0.99.
        assert!(report.min_rotated_re > -1.0);
        assert!(report.min_rotated_re < -0.98);
        assert!((report.witness - c(-0.99, 0.0)).norm() < 1e-9);
    }

    #[test]
    fn convolution_bound_mixed_tilts() {
        // Opposite tilts +-pi/3: the product of the kernel coefficient
        // factors collapses to 1, so p_1 * p_2 = 1/(1 - x y z) and the
        // rotated real part stays above -cos(2pi/3) = 1/2.
        let a = kernel_member(TiltAngle::new(FRAC_PI_3).unwrap(), Complex64::cis(0.7), DEFAULT_ORDER).unwrap();
        let b = kernel_member(TiltAngle::new(-FRAC_PI_3).unwrap(), Complex64::cis(-1.2), DEFAULT_ORDER).unwrap();
        let report = tilted_convolution_bound(&a, &b, &EvaluationGrid::standard());
        assert!((report.bound - 0.5).abs() < 1e-15);
        assert!(report.min_rotated_re > 0.5 && report.min_rotated_re < 0.51);
        assert!(report.satisfied, "margin = {}", report.margin);
    }

    #[test]
    fn measure_validation() {
        assert!(DiscreteMeasure::new(vec![], vec![]).is_err());
        assert!(DiscreteMeasure::new(vec![ONE], vec![0.5]).is_err());
        assert!(DiscreteMeasure::new(vec![c(0.5, 0.0)], vec![1.0]).is_err());
        assert!(DiscreteMeasure::new(vec![ONE, -ONE], vec![1.5, -0.5]).is_err());
        assert!(DiscreteMeasure::new(vec![ONE, -ONE], vec![0.25, 0.75]).is_ok());
    }
}
