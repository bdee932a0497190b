//! Sharp closed-form bounds for the tilted class on circles |z| = r.
//!
//! Every bound here is attained by a rotated kernel, which is what the
//! search module certifies numerically. Radii must satisfy 0 <= r < 1; the
//! coefficient bound is radius-free.

use num_complex::Complex64;
use serde::Serialize;
use std::f64::consts::{FRAC_PI_2, PI};

use crate::class::TiltAngle;
use crate::error::{Error, Result};
use crate::tolerances::EPS_SLIT;

fn check_radius(r: f64) -> Result<()> {
    if !(0.0..1.0).contains(&r) {
        return Err(Error::RadiusOutOfRange { r });
    }
    Ok(())
}

/// sup_n |c_n| over the class: 2 cos(lambda), attained by every rotated kernel.
pub fn coefficient_bound(tilt: TiltAngle) -> f64 {
    2.0 * tilt.cos()
}

/// sup |p'(z)| on |z| = r: 2 cos(lambda)/(1 - r)^2.
pub fn derivative_bound(tilt: TiltAngle, r: f64) -> Result<f64> {
    check_radius(r)?;
    Ok(2.0 * tilt.cos() / ((1.0 - r) * (1.0 - r)))
}

/// The disc that contains p(|z| <= r) for every member, and whose boundary
/// circle is filled out by the rotated kernels.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct Disc {
    pub center: Complex64,
    pub radius: f64,
}

impl Disc {
    pub fn contains(&self, w: Complex64, tol: f64) -> bool {
        (w - self.center).norm() <= self.radius + tol
    }
}

/// Values of members on |z| <= r lie in the disc centered at
/// (1 + r^2 e^{-2 i lambda})/(1 - r^2) with radius 2 r cos(lambda)/(1 - r^2).
pub fn containment_disc(tilt: TiltAngle, r: f64) -> Result<Disc> {
    check_radius(r)?;
    let d = 1.0 - r * r;
    let center = (Complex64::new(1.0, 0.0) + tilt.kernel_phase() * (r * r)) / d;
    Ok(Disc { center, radius: 2.0 * r * tilt.cos() / d })
}

/// The growth envelope A(lambda, r): on |z| = r every member satisfies
/// 1/A <= |p(z)| <= A, with A = (sqrt((1-r^2)^2 + 4 r^2 cos^2 lambda)
/// + 2 r cos lambda)/(1 - r^2).
pub fn growth_max(tilt: TiltAngle, r: f64) -> Result<f64> {
    check_radius(r)?;
    let d = 1.0 - r * r;
    let c = 2.0 * r * tilt.cos();
    Ok(((d * d + c * c).sqrt() + c) / d)
}

/// The matching modulus lower bound 1/A(lambda, r).
pub fn growth_min(tilt: TiltAngle, r: f64) -> Result<f64> {
    Ok(1.0 / growth_max(tilt, r)?)
}

/// Sharp range of Re p(z) on |z| = r:
/// (1 + r^2 cos 2 lambda -+ 2 r cos lambda)/(1 - r^2).
pub fn re_bounds(tilt: TiltAngle, r: f64) -> Result<(f64, f64)> {
    check_radius(r)?;
    let d = 1.0 - r * r;
    let a = 1.0 + r * r * (2.0 * tilt.radians()).cos();
    let c = 2.0 * r * tilt.cos();
    Ok(((a - c) / d, (a + c) / d))
}

/// Whether (lambda, r) falls in the small-radius regime of the
/// log-derivative bound, r < tan(|lambda|/2), where the supremum is attained
/// away from the near-singular direction.
pub fn logderiv_small_branch(tilt: TiltAngle, r: f64) -> bool {
    r < (tilt.radians().abs() / 2.0).tan()
}

/// M(lambda, r) = sup |z p'(z)/p(z)| over the class on |z| = r:
/// 2 r cos(lambda)/(1 + r^2 - 2 r |sin lambda|) below the branch radius
/// tan(|lambda|/2), and 2 r/(1 - r^2) at or above it. The two expressions
/// agree at the branch radius.
pub fn logderiv_max(tilt: TiltAngle, r: f64) -> Result<f64> {
    check_radius(r)?;
    if logderiv_small_branch(tilt, r) {
        Ok(2.0 * r * tilt.cos() / (1.0 + r * r - 2.0 * r * tilt.sin().abs()))
    } else {
        Ok(2.0 * r / (1.0 - r * r))
    }
}

/// N(lambda, r) = min over |z| = r of |z p_lambda'(z)/p_lambda(z)| for the
/// untranslated kernel: 2 r cos(lambda)/(1 + r^2 + 2 r |sin lambda|).
pub fn logderiv_kernel_min(tilt: TiltAngle, r: f64) -> Result<f64> {
    check_radius(r)?;
    Ok(2.0 * r * tilt.cos() / (1.0 + r * r + 2.0 * r * tilt.sin().abs()))
}

/// Reduces an angle to the principal interval (-pi, pi].
pub fn normalize_angle(mut a: f64) -> f64 {
    while a > PI {
        a -= 2.0 * PI;
    }
    while a <= -PI {
        a += 2.0 * PI;
    }
    a
}

/// Angles alpha in (-pi, pi] at which the kernel p_lambda attains
/// M(lambda, r) at z = r e^{i(alpha + lambda + pi/2)} shape; concretely the
/// returned values are the critical angles of |z p_lambda'/p_lambda| on
/// |z| = r. Below the branch radius there is one angle, alpha = lambda -+
/// pi/2 by the sign of lambda; above it the two roots of
/// sin(alpha - lambda) = -(1 + r^2) sin(lambda)/(2r) are returned in
/// increasing order.
pub fn extremal_alpha(tilt: TiltAngle, r: f64) -> Result<Vec<f64>> {
    check_radius(r)?;
    let lam = tilt.radians();
    if logderiv_small_branch(tilt, r) {
        let alpha = if lam >= 0.0 { lam - FRAC_PI_2 } else { lam + FRAC_PI_2 };
        return Ok(vec![normalize_angle(alpha)]);
    }
    let v = if lam == 0.0 {
        0.0
    } else {
        -(1.0 + r * r) * lam.sin() / (2.0 * r)
    };
    if v.abs() > 1.0 + 1e-12 {
        return Err(Error::NoAttainment { tilt: lam, r });
    }
    let v = v.clamp(-1.0, 1.0);
    let b = v.asin();
    let mut roots = vec![normalize_angle(lam + b), normalize_angle(lam + PI - b)];
    roots.sort_by(|a, b| a.partial_cmp(b).unwrap());
    if (roots[1] - roots[0]).abs() < 1e-12 || (roots[1] - roots[0] - 2.0 * PI).abs() < 1e-12 {
        roots.pop();
    }
    Ok(roots)
}

/// The plane slit along two rays of the imaginary axis: the region
/// C minus {i y : y >= A_lambda} minus {i y : y <= -1/A_lambda}, with
/// A_lambda = cos(lambda)/(1 + sin(lambda)). The kernel log-derivative
/// z p_lambda'/p_lambda maps the disc onto this region.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct SlitDomain {
    a_lambda: f64,
}

impl SlitDomain {
    pub fn new(tilt: TiltAngle) -> Self {
        Self { a_lambda: tilt.cos() / (1.0 + tilt.sin()) }
    }

    /// Height at which the upper slit starts.
    pub fn a_lambda(&self) -> f64 {
        self.a_lambda
    }

    /// Height at which the lower slit starts (negated).
    pub fn lower_slit_start(&self) -> f64 {
        -1.0 / self.a_lambda
    }

    /// Numerical membership: false only within EPS_SLIT of a slit.
    pub fn contains(&self, w: Complex64) -> bool {
        let on_axis = w.re.abs() <= EPS_SLIT;
        let in_upper = w.im >= self.a_lambda - EPS_SLIT;
        let in_lower = w.im <= -1.0 / self.a_lambda + EPS_SLIT;
        !(on_axis && (in_upper || in_lower))
    }
}

/// Location at which a scanned functional achieved its extremal value:
/// the member parameters (x, and for two-atom scans y and t) and the
/// evaluation point z.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct Witness {
    pub x: Complex64,
    pub z: Complex64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub y: Option<Complex64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t: Option<f64>,
}

impl Witness {
    pub fn single(x: Complex64, z: Complex64) -> Self {
        Self { x, z, y: None, t: None }
    }
}

/// A sharpness certificate: a closed-form bound, the best value a searched
/// family achieved against it, and where.
#[derive(Debug, Clone, Serialize)]
pub struct BoundReport {
    pub name: String,
    pub lambda: f64,
    pub r: f64,
    pub bound: f64,
    pub achieved: f64,
    /// Oriented so that a sharp bound gives a small nonnegative gap:
    /// bound - achieved for upper bounds, achieved - bound for lower bounds.
    pub gap: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    /// For the log-derivative bound: the closed-form attaining angles.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub predicted_alpha: Option<Vec<f64>>,
    /// Angle recovered from the refined witness, and its distance to the
    /// nearest predicted angle.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness_alpha: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alpha_error: Option<f64>,
}
