//! Numerical tolerances and default sizes shared across the crate.
//!
//! Tests pin their assertions to these exact values and the command line
//! tool reports against them, so they are part of the public contract.

/// Default truncation order for series construction.
pub const DEFAULT_ORDER: usize = 64;

/// A constant term (or pointwise denominator) with modulus at or below
/// this is treated as vanishing.
pub const EPS_DIV: f64 = 1e-12;

/// Tolerance for coefficientwise series identities at order 64 with
/// coefficients of modulus up to 2.
pub const EPS_SERIES: f64 = 1e-9;

/// Margin keeping tilt angles away from +-pi/2, where the class degenerates
/// to a line and every closed-form bound loses meaning.
pub const EPS_ANGLE: f64 = 1e-6;

/// Clearance required from every excluded value in the dual line check.
pub const EPS_LINE: f64 = 1e-9;

/// Half-width of the numerical slit in slit-domain membership.
pub const EPS_SLIT: f64 = 1e-9;

/// Hard cap on evaluation radius; every kernel is singular on |z| = 1.
pub const R_MAX: f64 = 0.999;

/// Tolerance for |x| = 1 on measure atoms and for total measure mass.
pub const EPS_UNIMODULAR: f64 = 1e-12;

/// Largest acceptable bound-minus-achieved gap for a sharpness certificate.
pub const SHARPNESS_GAP: f64 = 1e-6;

/// Target bracket width for golden-section refinement of lattice maxima.
pub const REFINE_TOL: f64 = 1e-9;

/// Lattice size per angular axis in extremal scans.
pub const SCAN_LATTICE: usize = 512;

/// Lattice size per angular axis in two-atom family scans.
pub const W_LATTICE: usize = 64;

/// Lattice size for the convex weight in two-atom family scans.
pub const T_LATTICE: usize = 33;

/// Radius of the circle carrying the inner supremum in the univalence
/// radius computation.
pub const INNER_SUP_RADIUS: f64 = 1.0 - 1e-4;

/// Angular sample count for that inner supremum.
pub const INNER_SUP_SAMPLES: usize = 2048;

/// Iteration cap for bisection searches.
pub const MAX_BISECTION_ITERS: usize = 200;
