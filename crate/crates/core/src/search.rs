//! Brute-force sharpness search over the extremal families of the class.
//!
//! The closed-form bounds are attained by rotated kernels, so a dense scan
//! over the kernel parameter and the evaluation angle, followed by a
//! golden-section refinement, reproduces each bound to well below the
//! certification gap. Two-atom convex combinations are scanned as well to
//! confirm that nothing inside the convex hull beats the extreme points.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::PI;

use crate::bounds::{
    coefficient_bound, containment_disc, derivative_bound, extremal_alpha, growth_max, growth_min,
    logderiv_max, normalize_angle, re_bounds, BoundReport, Witness,
};
use crate::class::{
    herglotz_build, kernel_derivative, kernel_value, ClassMember, DiscreteMeasure, TiltAngle,
};
use crate::error::{Error, Result};
use crate::tolerances::{DEFAULT_ORDER, REFINE_TOL};

const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Maximizes a unimodal function on [a, b] by golden-section search,
/// returning the argument and value at the final bracket midpoint.
pub fn golden_section_max(mut f: impl FnMut(f64) -> f64, mut a: f64, mut b: f64, xtol: f64) -> (f64, f64) {
    const INV_PHI: f64 = 0.618_033_988_749_894_9;
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    while b - a > xtol {
        if fc > fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d);
        }
    }
    let x = 0.5 * (a + b);
    (x, f(x))
}

/// The scalar quantities whose extremes the closed-form bounds describe.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Functional {
    /// |p(z)|
    AbsValue,
    /// -|p(z)|, for certifying modulus lower bounds.
    NegAbsValue,
    /// Re p(z)
    RealPart,
    /// -Re p(z)
    NegRealPart,
    /// |p'(z)|
    AbsDerivative,
    /// |z p'(z)/p(z)|
    AbsLogDerivative,
    /// |p(z) - c(lambda, r)|, distance to the containment disc center.
    DiscDistance,
}

impl Functional {
    pub fn name(self) -> &'static str {
        match self {
            Functional::AbsValue => "abs_value",
            Functional::NegAbsValue => "neg_abs_value",
            Functional::RealPart => "real_part",
            Functional::NegRealPart => "neg_real_part",
            Functional::AbsDerivative => "abs_derivative",
            Functional::AbsLogDerivative => "abs_log_derivative",
            Functional::DiscDistance => "disc_distance",
        }
    }
}

/// Per-radius evaluation context: the radius and the containment disc center.
struct RadiusContext {
    r: f64,
    disc_center: Complex64,
}

impl RadiusContext {
    fn new(tilt: TiltAngle, r: f64) -> Result<Self> {
        if !(r > 0.0 && r < 1.0) {
            return Err(Error::RadiusOutOfRange { r });
        }
        Ok(Self { r, disc_center: containment_disc(tilt, r)?.center })
    }

    /// Evaluates the functional from the member value p and z p'(z).
    fn eval(&self, functional: Functional, p: Complex64, zdp: Complex64) -> f64 {
        match functional {
            Functional::AbsValue => p.norm(),
            Functional::NegAbsValue => -p.norm(),
            Functional::RealPart => p.re,
            Functional::NegRealPart => -p.re,
            Functional::AbsDerivative => zdp.norm() / self.r,
            Functional::AbsLogDerivative => (zdp / p).norm(),
            Functional::DiscDistance => (p - self.disc_center).norm(),
        }
    }
}

/// Angles -pi + 2 pi (j + 1)/k for j = 0..k, covering (-pi, pi].
fn lattice_angles(k: usize) -> Vec<f64> {
    (0..k).map(|j| -PI + 2.0 * PI * (j + 1) as f64 / k as f64).collect()
}

/// The rotated kernels p_lambda(x z) with x on a unimodular lattice.
#[derive(Debug, Clone)]
pub struct ExtremalFamily {
    tilt: TiltAngle,
    lattice: usize,
}

impl ExtremalFamily {
    pub fn new(tilt: TiltAngle, lattice: usize) -> Result<Self> {
        if lattice < 2 {
            return Err(Error::LatticeTooSmall { size: lattice });
        }
        Ok(Self { tilt, lattice })
    }

    pub fn tilt(&self) -> TiltAngle {
        self.tilt
    }

    pub fn lattice(&self) -> usize {
        self.lattice
    }

    /// The lattice of rotation parameters.
    pub fn rotations(&self) -> Vec<Complex64> {
        lattice_angles(self.lattice).into_iter().map(Complex64::cis).collect()
    }
}

/// One radius of scan output: the lattice maximum and where it occurred.
#[derive(Debug, Clone)]
pub struct ScanPoint {
    pub r: f64,
    pub value: f64,
    pub witness: Witness,
}

/// Maximizes the functional over the kernel family on each circle |z| = r.
/// Ties keep the first maximizer in (rotation, angle) lattice order.
pub fn scan_extremal(
    family: &ExtremalFamily,
    functional: Functional,
    radii: &[f64],
) -> Result<Vec<ScanPoint>> {
    let tilt = family.tilt;
    let rotations = family.rotations();
    let angles = lattice_angles(family.lattice);
    let phases: Vec<Complex64> = angles.iter().map(|&t| Complex64::cis(t)).collect();
    let mut out = Vec::with_capacity(radii.len());
    for &r in radii {
        let ctx = RadiusContext::new(tilt, r)?;
        let mut best = f64::NEG_INFINITY;
        let mut best_x = ONE;
        let mut best_z = ONE;
        for &x in &rotations {
            for &ph in &phases {
                let z = ph * r;
                let w = x * z;
                let p = kernel_value(tilt, w);
                let zdp = w * kernel_derivative(tilt, w);
                let v = ctx.eval(functional, p, zdp);
                if v > best {
                    best = v;
                    best_x = x;
                    best_z = z;
                }
            }
        }
        out.push(ScanPoint { r, value: best, witness: Witness::single(best_x, best_z) });
    }
    Ok(out)
}

/// Golden-section refinement of a kernel-family scan result: the functional
/// depends on x and z only through w = x z, so refining the evaluation angle
/// at the witness rotation explores the full family.
fn refine_extremal(
    tilt: TiltAngle,
    functional: Functional,
    r: f64,
    witness: Witness,
    cell: f64,
) -> Result<(f64, Witness)> {
    let ctx = RadiusContext::new(tilt, r)?;
    let x = witness.x;
    let theta0 = witness.z.arg();
    let objective = |theta: f64| {
        let z = Complex64::from_polar(r, theta);
        let w = x * z;
        let p = kernel_value(tilt, w);
        let zdp = w * kernel_derivative(tilt, w);
        ctx.eval(functional, p, zdp)
    };
    let (theta, value) = golden_section_max(objective, theta0 - cell, theta0 + cell, REFINE_TOL);
    Ok((value, Witness::single(x, Complex64::from_polar(r, theta))))
}

/// Two-atom convex combinations t p_lambda(x z) + (1 - t) p_lambda(y z).
#[derive(Debug, Clone)]
pub struct WFamily {
    tilt: TiltAngle,
    atom_lattice: usize,
    weight_lattice: usize,
    angle_lattice: usize,
}

impl WFamily {
    pub fn new(tilt: TiltAngle, atom_lattice: usize, weight_lattice: usize, angle_lattice: usize) -> Result<Self> {
        for &k in &[atom_lattice, weight_lattice, angle_lattice] {
            if k < 2 {
                return Err(Error::LatticeTooSmall { size: k });
            }
        }
        Ok(Self { tilt, atom_lattice, weight_lattice, angle_lattice })
    }

    pub fn tilt(&self) -> TiltAngle {
        self.tilt
    }
}

/// One radius of two-atom scan output. The conjugate fields restrict the
/// scan to the sublattice y = conj(x), whose members have extra symmetry.
#[derive(Debug, Clone)]
pub struct WScanPoint {
    pub r: f64,
    pub value: f64,
    pub witness: Witness,
    pub conjugate_value: f64,
    pub conjugate_witness: Witness,
}

/// Maximizes the functional over the two-atom family on each circle. The
/// weight endpoints t = 0 and t = 1 reproduce pure kernels exactly, so the
/// result is never below a kernel-family scan on the same lattices.
pub fn scan_w_family(family: &WFamily, functional: Functional, radii: &[f64]) -> Result<Vec<WScanPoint>> {
    let tilt = family.tilt;
    let k = family.atom_lattice;
    let rotations: Vec<Complex64> = lattice_angles(k).into_iter().map(Complex64::cis).collect();
    let phases: Vec<Complex64> = lattice_angles(family.angle_lattice)
        .into_iter()
        .map(Complex64::cis)
        .collect();
    let weights: Vec<f64> = (0..family.weight_lattice)
        .map(|i| i as f64 / (family.weight_lattice - 1) as f64)
        .collect();
    let mut out = Vec::with_capacity(radii.len());
    for &r in radii {
        let ctx = RadiusContext::new(tilt, r)?;
        let mut best = f64::NEG_INFINITY;
        let mut best_w = Witness::single(ONE, ONE);
        let mut best_conj = f64::NEG_INFINITY;
        let mut best_conj_w = Witness::single(ONE, ONE);
        for &t in &weights {
            let s = 1.0 - t;
            for (i, &x) in rotations.iter().enumerate() {
                let conj_j = (2 * k - i - 2) % k;
                for (j, &y) in rotations.iter().enumerate() {
                    for &ph in &phases {
                        let z = ph * r;
                        let wx = x * z;
                        let wy = y * z;
                        let p = t * kernel_value(tilt, wx) + s * kernel_value(tilt, wy);
                        let zdp = t * wx * kernel_derivative(tilt, wx) + s * wy * kernel_derivative(tilt, wy);
                        let v = ctx.eval(functional, p, zdp);
                        if v > best {
                            best = v;
                            best_w = Witness { x, z, y: Some(y), t: Some(t) };
                        }
                        if j == conj_j && v > best_conj {
                            best_conj = v;
                            best_conj_w = Witness { x, z, y: Some(y), t: Some(t) };
                        }
                    }
                }
            }
        }
        out.push(WScanPoint {
            r,
            value: best,
            witness: best_w,
            conjugate_value: best_conj,
            conjugate_witness: best_conj_w,
        });
    }
    Ok(out)
}

/// A seeded member with unimodular atoms drawn uniformly in angle and
/// weights drawn from the flat Dirichlet distribution.
pub fn random_member(tilt: TiltAngle, k_atoms: usize, seed: u64) -> Result<ClassMember> {
    if k_atoms == 0 {
        return Err(Error::InvalidMeasure { reason: "need at least one atom".into() });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let atoms: Vec<Complex64> = (0..k_atoms)
        .map(|_| Complex64::cis(2.0 * PI * rng.gen::<f64>() - PI))
        .collect();
    let raw: Vec<f64> = (0..k_atoms).map(|_| -(1.0 - rng.gen::<f64>()).ln()).collect();
    let total: f64 = raw.iter().sum();
    let weights = raw.iter().map(|&e| e / total).collect();
    Ok(herglotz_build(tilt, &DiscreteMeasure::new(atoms, weights)?, DEFAULT_ORDER))
}

/// Derives a child seed from a base seed and two indices (splitmix64
/// finalizer), so independent sweeps never share generator streams.
pub fn split_seed(base: u64, stream: u64, index: u64) -> u64 {
    let mut z = base
        .wrapping_add(stream.wrapping_mul(0x9E37_79B9_7F4A_7C15))
        .wrapping_add(index.wrapping_mul(0xD1B5_4A32_D192_ED03));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// The bounds for which sharpness certificates are available.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundName {
    Coeff,
    Deriv,
    Disc,
    GrowthHi,
    GrowthLo,
    ReHi,
    ReLo,
    LogderivM,
}

impl BoundName {
    pub fn all() -> [BoundName; 8] {
        [
            BoundName::Coeff,
            BoundName::Deriv,
            BoundName::Disc,
            BoundName::GrowthHi,
            BoundName::GrowthLo,
            BoundName::ReHi,
            BoundName::ReLo,
            BoundName::LogderivM,
        ]
    }

    pub fn as_str(self) -> &'static str {
        match self {
            BoundName::Coeff => "coeff",
            BoundName::Deriv => "deriv",
            BoundName::Disc => "disc",
            BoundName::GrowthHi => "growth_hi",
            BoundName::GrowthLo => "growth_lo",
            BoundName::ReHi => "re_hi",
            BoundName::ReLo => "re_lo",
            BoundName::LogderivM => "logderiv_M",
        }
    }

    pub fn parse(name: &str) -> Result<Self> {
        Self::all()
            .into_iter()
            .find(|b| b.as_str() == name)
            .ok_or_else(|| Error::UnknownBound { name: name.to_string() })
    }
}

/// Certifies one closed-form bound by scanning the kernel family on the
/// given lattice and refining the winner. The report's gap is oriented so
/// that sharpness shows as a small nonnegative number.
pub fn sharpness_certificate(
    name: BoundName,
    tilt: TiltAngle,
    r: f64,
    lattice: usize,
) -> Result<BoundReport> {
    let lam = tilt.radians();
    if name == BoundName::Coeff {
        // The first coefficient of every rotated kernel has modulus
        // |1 + e^{-2 i lambda}| = 2 cos(lambda); no scan is needed.
        let bound = coefficient_bound(tilt);
        let achieved = (ONE + tilt.kernel_phase()).norm();
        return Ok(BoundReport {
            name: name.as_str().to_string(),
            lambda: lam,
            r,
            bound,
            achieved,
            gap: bound - achieved,
            witness: Some(Witness::single(ONE, Complex64::new(0.0, 0.0))),
            predicted_alpha: None,
            witness_alpha: None,
            alpha_error: None,
        });
    }

    let (functional, bound, lower) = match name {
        BoundName::Deriv => (Functional::AbsDerivative, derivative_bound(tilt, r)?, false),
        BoundName::Disc => (Functional::DiscDistance, containment_disc(tilt, r)?.radius, false),
        BoundName::GrowthHi => (Functional::AbsValue, growth_max(tilt, r)?, false),
        BoundName::GrowthLo => (Functional::NegAbsValue, growth_min(tilt, r)?, true),
        BoundName::ReHi => (Functional::RealPart, re_bounds(tilt, r)?.1, false),
        BoundName::ReLo => (Functional::NegRealPart, re_bounds(tilt, r)?.0, true),
        BoundName::LogderivM => (Functional::AbsLogDerivative, logderiv_max(tilt, r)?, false),
        BoundName::Coeff => unreachable!(),
    };

    let family = ExtremalFamily::new(tilt, lattice)?;
    let coarse = scan_extremal(&family, functional, &[r])?.remove(0);
    let cell = 2.0 * PI / lattice as f64;
    let (refined, witness) = refine_extremal(tilt, functional, r, coarse.witness, cell)?;
    let refined = refined.max(coarse.value);
    let witness = if refined > coarse.value { witness } else { coarse.witness };

    let achieved = if lower { -refined } else { refined };
    let gap = if lower { achieved - bound } else { bound - achieved };

    let mut report = BoundReport {
        name: name.as_str().to_string(),
        lambda: lam,
        r,
        bound,
        achieved,
        gap,
        witness: Some(witness),
        predicted_alpha: None,
        witness_alpha: None,
        alpha_error: None,
    };
    if name == BoundName::LogderivM {
        let predicted = extremal_alpha(tilt, r)?;
        let witness_alpha = normalize_angle(witness.x.arg() + witness.z.arg());
        let alpha_error = predicted
            .iter()
            .map(|&a| normalize_angle(witness_alpha - a).abs())
            .fold(f64::INFINITY, f64::min);
        report.predicted_alpha = Some(predicted);
        report.witness_alpha = Some(witness_alpha);
        report.alpha_error = Some(alpha_error);
    }
    Ok(report)
}
