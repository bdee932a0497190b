//! Numerics for the tilted Carathéodory class: analytic functions p with
//! p(0) = 1 whose values, rotated by a fixed tilt angle, keep positive real
//! part on the unit disc.
//!
//! The crate builds class members from discrete boundary measures (so that
//! pointwise values and derivatives are exact kernel combinations rather
//! than truncated sums), evaluates the sharp closed-form bounds of the
//! class (coefficients, derivative, the containment disc, growth, real
//! part, and the logarithmic derivative), and certifies each bound by
//! scanning and refining over the extremal family. Application subclasses
//! of normalized univalent functions driven by the class (spirallike
//! functions, the Robertson family and its univalence radius, tilted
//! close-to-convex functions, and functions whose derivative lies in the
//! class) are built on top.
//!
//! # Quick start
//!
//! ```
//! use num_complex::Complex64;
//! use tilted_caratheodory::bounds::{containment_disc, growth_max};
//! use tilted_caratheodory::class::{kernel_member, TiltAngle};
//!
//! # fn main() -> tilted_caratheodory::Result<()> {
//! let tilt = TiltAngle::new(0.5)?;
//! let p = kernel_member(tilt, Complex64::new(1.0, 0.0), 32)?;
//!
//! let z = Complex64::new(0.4, 0.0);
//! let value = p.eval(z)?;
//! assert!(value.norm() <= growth_max(tilt, 0.4)? + 1e-12);
//!
//! let disc = containment_disc(tilt, 0.4)?;
//! assert!((value - disc.center).norm() <= disc.radius + 1e-12);
//! # Ok(())
//! # }
//! ```

#![forbid(unsafe_code)]

pub mod applications;
pub mod bounds;
pub mod class;
pub mod error;
pub mod grid;
pub mod search;
pub mod series;
pub mod tolerances;
pub mod verify;

pub use error::{Error, Result};
