//! Truncated power series over complex coefficients.
//!
//! A series stores the coefficients c_0..c_N of a fixed truncation order N.
//! Binary operations truncate to the smaller participating order rather than
//! padding, so a result never claims coefficients that were not supplied.
//! All routines are pure and allocation happens only for results.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::tolerances::{EPS_DIV, R_MAX};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

#[derive(Debug, Clone, PartialEq)]
pub struct TruncatedSeries {
    coeffs: Vec<Complex64>,
}

impl TruncatedSeries {
    /// Wraps a coefficient vector c_0..c_N. Rejects empty and non-finite input.
    pub fn from_coeffs(coeffs: Vec<Complex64>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::EmptySeries);
        }
        for (index, c) in coeffs.iter().enumerate() {
            if !c.re.is_finite() || !c.im.is_finite() {
                return Err(Error::NonFiniteCoefficient { index });
            }
        }
        Ok(Self { coeffs })
    }

    pub fn constant(value: Complex64, order: usize) -> Self {
        let mut coeffs = vec![ZERO; order + 1];
        coeffs[0] = value;
        Self { coeffs }
    }

    pub fn zero(order: usize) -> Self {
        Self { coeffs: vec![ZERO; order + 1] }
    }

    /// The monomial z at the given order.
    pub fn identity(order: usize) -> Self {
        let mut coeffs = vec![ZERO; order + 1];
        if order >= 1 {
            coeffs[1] = ONE;
        }
        Self { coeffs }
    }

    /// All coefficients 1: the expansion of 1/(1-z).
    pub fn geometric(order: usize) -> Self {
        Self { coeffs: vec![ONE; order + 1] }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Coefficient c_n, zero beyond the truncation order.
    pub fn coeff(&self, n: usize) -> Complex64 {
        self.coeffs.get(n).copied().unwrap_or(ZERO)
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    /// Copy truncated (or zero-padded) to the given order.
    pub fn truncated(&self, order: usize) -> Self {
        let coeffs = (0..=order).map(|n| self.coeff(n)).collect();
        Self { coeffs }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let order = self.order().min(rhs.order());
        let coeffs = (0..=order).map(|n| self.coeffs[n] + rhs.coeffs[n]).collect();
        Self { coeffs }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let order = self.order().min(rhs.order());
        let coeffs = (0..=order).map(|n| self.coeffs[n] - rhs.coeffs[n]).collect();
        Self { coeffs }
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        let coeffs = self.coeffs.iter().map(|&c| c * factor).collect();
        Self { coeffs }
    }

    pub fn add_constant(&self, value: Complex64) -> Self {
        let mut out = self.clone();
        out.coeffs[0] += value;
        out
    }

    /// Cauchy product, truncated to the smaller order. Terms are accumulated
    /// in symmetric pairs so the result is bitwise invariant under swapping
    /// the operands.
    pub fn mul(&self, rhs: &Self) -> Self {
        let order = self.order().min(rhs.order());
        let a = &self.coeffs;
        let b = &rhs.coeffs;
        let mut out = vec![ZERO; order + 1];
        for (n, slot) in out.iter_mut().enumerate() {
            let mut acc = ZERO;
            let mut i = 0;
            let mut j = n;
            while i < j {
                acc += a[i] * b[j] + a[j] * b[i];
                i += 1;
                j -= 1;
            }
            if i == j {
                acc += a[i] * b[i];
            }
            *slot = acc;
        }
        Self { coeffs: out }
    }

    /// Long division by a series with non-vanishing constant term.
    pub fn div(&self, rhs: &Self) -> Result<Self> {
        let b0 = rhs.coeffs[0];
        if b0.norm() <= EPS_DIV {
            return Err(Error::DivisionByNearZeroConstantTerm { modulus: b0.norm() });
        }
        let order = self.order().min(rhs.order());
        let mut out = vec![ZERO; order + 1];
        for n in 0..=order {
            let mut acc = self.coeff(n);
            for k in 1..=n {
                acc -= rhs.coeff(k) * out[n - k];
            }
            out[n] = acc / b0;
        }
        Ok(Self { coeffs: out })
    }

    /// Composition self(inner). The inner constant term must be exactly zero,
    /// otherwise the truncated result would silently depend on coefficients
    /// beyond the truncation order.
    pub fn compose(&self, inner: &Self) -> Result<Self> {
        let c0 = inner.coeffs[0];
        if c0 != ZERO {
            return Err(Error::NonzeroInnerConstant { value: c0 });
        }
        let order = self.order().min(inner.order());
        let inner = inner.truncated(order);
        let mut acc = Self::constant(self.coeff(order), order);
        for k in (0..order).rev() {
            acc = acc.mul(&inner);
            acc.coeffs[0] += self.coeff(k);
        }
        Ok(acc)
    }

    /// Principal-branch logarithm via the recurrence a L' = a', valid for a
    /// constant term bounded away from zero.
    pub fn log(&self) -> Result<Self> {
        let a0 = self.coeffs[0];
        if a0.norm() <= EPS_DIV {
            return Err(Error::DivisionByNearZeroConstantTerm { modulus: a0.norm() });
        }
        let order = self.order();
        let mut out = vec![ZERO; order + 1];
        out[0] = a0.ln();
        for n in 1..=order {
            let mut acc = self.coeffs[n] * n as f64;
            for j in 1..n {
                acc -= self.coeffs[j] * out[n - j] * (n - j) as f64;
            }
            out[n] = acc / (a0 * n as f64);
        }
        Ok(Self { coeffs: out })
    }

    /// Exponential via the recurrence E' = a' E.
    pub fn exp(&self) -> Self {
        let order = self.order();
        let mut out = vec![ZERO; order + 1];
        out[0] = self.coeffs[0].exp();
        for n in 1..=order {
            let mut acc = ZERO;
            for k in 1..=n {
                acc += self.coeffs[k] * out[n - k] * k as f64;
            }
            out[n] = acc / n as f64;
        }
        Self { coeffs: out }
    }

    /// self raised to a complex exponent, exp(m log self), anchored at a
    /// constant term of 1 so the principal branch is unambiguous.
    pub fn cpow(&self, exponent: Complex64) -> Result<Self> {
        let anchor = self.coeffs[0];
        if (anchor - ONE).norm() > EPS_DIV {
            return Err(Error::BadBranchAnchor { constant: anchor });
        }
        Ok(self.log()?.scale(exponent).exp())
    }

    /// Formal derivative; the order drops by one.
    pub fn derivative(&self) -> Self {
        if self.order() == 0 {
            return Self::zero(0);
        }
        let coeffs = (1..=self.order()).map(|n| self.coeffs[n] * n as f64).collect();
        Self { coeffs }
    }

    /// The theta operator z d/dz: coefficient n c_n at the same order.
    pub fn z_derivative(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(n, &c)| c * n as f64)
            .collect();
        Self { coeffs }
    }

    /// Multiplication by z; the order grows by one.
    pub fn shifted_up(&self) -> Self {
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(ZERO);
        coeffs.extend_from_slice(&self.coeffs);
        Self { coeffs }
    }

    /// Division by z, requiring a zero constant term; the order drops by one.
    pub fn shifted_down(&self) -> Result<Self> {
        if self.coeffs[0] != ZERO {
            return Err(Error::NonzeroInnerConstant { value: self.coeffs[0] });
        }
        if self.order() == 0 {
            return Ok(Self::zero(0));
        }
        Ok(Self { coeffs: self.coeffs[1..].to_vec() })
    }

    /// Coefficientwise (Hadamard) product, truncated to the smaller order.
    pub fn hadamard(&self, rhs: &Self) -> Self {
        let order = self.order().min(rhs.order());
        let coeffs = (0..=order).map(|n| self.coeffs[n] * rhs.coeffs[n]).collect();
        Self { coeffs }
    }

    /// Horner evaluation. The modulus cap keeps callers away from the unit
    /// circle, where truncation error is unbounded for the series this crate
    /// produces.
    pub fn evaluate(&self, z: Complex64) -> Result<Complex64> {
        let modulus = z.norm();
        if modulus > R_MAX {
            return Err(Error::OutsideEvaluationRadius { modulus });
        }
        let mut acc = ZERO;
        for &c in self.coeffs.iter().rev() {
            acc = acc * z + c;
        }
        Ok(acc)
    }

    /// Largest coefficientwise deviation up to the smaller order.
    pub fn max_abs_diff(&self, rhs: &Self) -> f64 {
        let order = self.order().min(rhs.order());
        (0..=order)
            .map(|n| (self.coeffs[n] - rhs.coeffs[n]).norm())
            .fold(0.0, f64::max)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_3, FRAC_PI_4};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn geometric_squared_counts_divisors() {
        let g = TruncatedSeries::geometric(5);
        let sq = g.mul(&g);
        for n in 0..=5 {
            assert_eq!(sq.coeff(n), c((n + 1) as f64, 0.0));
        }
    }

    #[test]
    fn mul_truncates_to_smaller_order() {
        let a = TruncatedSeries::geometric(3);
        let b = TruncatedSeries::geometric(8);
        assert_eq!(a.mul(&b).order(), 3);
        assert_eq!(b.hadamard(&a).order(), 3);
        assert_eq!(a.add(&b).order(), 3);
    }

    #[test]
    fn mul_is_bitwise_commutative() {
        let a = TruncatedSeries::from_coeffs(vec![c(0.3, -1.2), c(1.7, 0.4), c(-0.9, 0.05)]).unwrap();
        let b = TruncatedSeries::from_coeffs(vec![c(-1.1, 0.6), c(0.2, -0.8), c(1.3, 1.9)]).unwrap();
        assert_eq!(a.mul(&b), b.mul(&a));
    }

    #[test]
    fn div_reproduces_half_plane_kernel_coefficients() {
        // (1 + e^{-i pi/2} z)/(1 - z) at tilt pi/4: constant term 1, then 1 - i.
        let q = Complex64::cis(-2.0 * FRAC_PI_4);
        let mut num = TruncatedSeries::zero(8);
        num.coeffs[0] = ONE;
        num.coeffs[1] = q;
        let mut den = TruncatedSeries::zero(8);
        den.coeffs[0] = ONE;
        den.coeffs[1] = -ONE;
        let k = num.div(&den).unwrap();
        assert!((k.coeff(0) - ONE).norm() < 1e-15);
        for n in 1..=8 {
            assert!((k.coeff(n) - c(1.0, -1.0)).norm() < 1e-15, "n = {n}");
        }
    }

    #[test]
    fn div_rejects_vanishing_constant_term() {
        let a = TruncatedSeries::geometric(4);
        let z = TruncatedSeries::identity(4);
        assert!(matches!(
            a.div(&z),
            Err(Error::DivisionByNearZeroConstantTerm { .. })
        ));
    }

    #[test]
    fn mul_div_round_trip() {
        let a = TruncatedSeries::from_coeffs(vec![c(0.4, 0.9), c(-1.5, 0.3), c(0.2, -0.7), c(1.1, 0.0)]).unwrap();
        let b = TruncatedSeries::from_coeffs(vec![c(1.2, -0.4), c(0.3, 0.25), c(-0.1, 0.15), c(0.05, -0.3)]).unwrap();
        let trip = a.div(&b).unwrap().mul(&b);
        assert!(trip.max_abs_diff(&a) < 1e-12);
    }

    #[test]
    fn compose_with_square_picks_even_part() {
        let g = TruncatedSeries::geometric(8);
        let mut z2 = TruncatedSeries::zero(8);
        z2.coeffs[2] = ONE;
        let comp = g.compose(&z2).unwrap();
        for n in 0..=8 {
            let want = if n % 2 == 0 { ONE } else { ZERO };
            assert!((comp.coeff(n) - want).norm() < 1e-15, "n = {n}");
        }
    }

    #[test]
    fn compose_rejects_nonzero_inner_constant() {
        let g = TruncatedSeries::geometric(4);
        let bad = TruncatedSeries::constant(c(0.5, 0.0), 4);
        assert!(matches!(
            g.compose(&bad),
            Err(Error::NonzeroInnerConstant { .. })
        ));
    }

    #[test]
    fn cpow_matches_binomial_series() {
        // (1 - z)^{-m} has coefficients c_n = c_{n-1} (m + n - 1)/n; the
        // direct binomial recurrence is the independent check here.
        let m = c(1.5, -3.0f64.sqrt() / 2.0);
        let mut base = TruncatedSeries::zero(8);
        base.coeffs[0] = ONE;
        base.coeffs[1] = -ONE;
        let got = base.cpow(-m).unwrap();

        let mut expect = ONE;
        for n in 0..=8usize {
            if n > 0 {
                expect = expect * (m + (n as f64 - 1.0)) / n as f64;
            }
            assert!((got.coeff(n) - expect).norm() < 1e-12, "n = {n}");
        }
    }

    #[test]
    fn cpow_pinned_rational_coefficients() {
        // (1 - z)^{-1/2} has coefficients C(2n, n)/4^n.
        let mut base = TruncatedSeries::zero(6);
        base.coeffs[0] = ONE;
        base.coeffs[1] = -ONE;
        let half = base.cpow(c(-0.5, 0.0)).unwrap();
        let want = [
            1.0,
            0.5,
            3.0 / 8.0,
            5.0 / 16.0,
            35.0 / 128.0,
            63.0 / 256.0,
            231.0 / 1024.0,
        ];
        for (n, &w) in want.iter().enumerate() {
            assert!((half.coeff(n) - c(w, 0.0)).norm() < 1e-14, "n = {n}");
        }
        // (1 - z)^{-2} counts n + 1.
        let sq = base.cpow(c(-2.0, 0.0)).unwrap();
        for n in 0..=6 {
            assert!((sq.coeff(n) - c((n + 1) as f64, 0.0)).norm() < 1e-13, "n = {n}");
        }
    }

    #[test]
    fn cpow_rejects_unanchored_branch() {
        let two = TruncatedSeries::constant(c(2.0, 0.0), 4);
        assert!(matches!(
            two.cpow(c(0.5, 0.0)),
            Err(Error::BadBranchAnchor { .. })
        ));
    }

    #[test]
    fn exp_log_round_trip() {
        let a = TruncatedSeries::from_coeffs(vec![c(1.0, 0.0), c(0.3, -0.6), c(-0.2, 0.1), c(0.15, 0.4)]).unwrap();
        assert!(a.log().unwrap().exp().max_abs_diff(&a) < 1e-13);
        assert!(a.exp().log().unwrap().max_abs_diff(&a) < 1e-13);
    }

    #[test]
    fn exp_of_scaled_log_adds_exponents() {
        let mut base = TruncatedSeries::zero(10);
        base.coeffs[0] = ONE;
        base.coeffs[1] = c(0.4, 0.2);
        base.coeffs[3] = c(-0.3, 0.6);
        let m1 = c(0.7, -1.1);
        let m2 = c(-0.4, 0.5);
        let lhs = base.cpow(m1 + m2).unwrap();
        let rhs = base.cpow(m1).unwrap().mul(&base.cpow(m2).unwrap());
        assert!(lhs.max_abs_diff(&rhs) < 1e-12);
    }

    #[test]
    fn derivative_and_theta_operator() {
        let g = TruncatedSeries::geometric(8);
        let d = g.derivative();
        assert_eq!(d.order(), 7);
        for n in 0..=7 {
            assert_eq!(d.coeff(n), c((n + 1) as f64, 0.0));
        }
        let t = g.z_derivative();
        assert_eq!(t.order(), 8);
        for n in 0..=8 {
            assert_eq!(t.coeff(n), c(n as f64, 0.0));
        }
    }

    #[test]
    fn shift_round_trip() {
        let g = TruncatedSeries::geometric(5);
        let up = g.shifted_up();
        assert_eq!(up.order(), 6);
        assert_eq!(up.coeff(0), ZERO);
        assert_eq!(up.shifted_down().unwrap(), g);
        assert!(matches!(
            g.shifted_down(),
            Err(Error::NonzeroInnerConstant { .. })
        ));
    }

    #[test]
    fn hadamard_with_geometric_is_identity() {
        let a = TruncatedSeries::from_coeffs(vec![c(0.3, -1.2), c(1.7, 0.4), c(-0.9, 0.05)]).unwrap();
        assert_eq!(a.hadamard(&TruncatedSeries::geometric(2)), a);
    }

    #[test]
    fn evaluate_geometric_near_closed_form() {
        let g = TruncatedSeries::geometric(64);
        let v = g.evaluate(c(0.5, 0.0)).unwrap();
        assert!((v - c(2.0, 0.0)).norm() < 1e-14);
        // Half-plane kernel at tilt 0: (1 + z)/(1 - z) at z = 0.3 is 13/7.
        let p0 = TruncatedSeries::geometric(64).scale(c(2.0, 0.0)).add_constant(c(-1.0, 0.0));
        let v = p0.evaluate(c(0.3, 0.0)).unwrap();
        assert!((v - c(13.0 / 7.0, 0.0)).norm() < 1e-13);
    }

    #[test]
    fn evaluate_at_zero_returns_constant_term() {
        let a = TruncatedSeries::from_coeffs(vec![c(0.3, -1.2), c(1.7, 0.4)]).unwrap();
        assert_eq!(a.evaluate(ZERO).unwrap(), c(0.3, -1.2));
    }

    #[test]
    fn evaluate_rejects_points_near_the_circle() {
        let g = TruncatedSeries::geometric(4);
        assert!(matches!(
            g.evaluate(c(1.0, 0.0)),
            Err(Error::OutsideEvaluationRadius { .. })
        ));
        assert!(g.evaluate(c(0.999, 0.0)).is_ok());
    }

    #[test]
    fn from_coeffs_validates() {
        assert!(matches!(
            TruncatedSeries::from_coeffs(vec![]),
            Err(Error::EmptySeries)
        ));
        assert!(matches!(
            TruncatedSeries::from_coeffs(vec![ONE, c(f64::NAN, 0.0)]),
            Err(Error::NonFiniteCoefficient { index: 1 })
        ));
    }

    #[test]
    fn log_of_kernel_matches_difference_of_logs() {
        // log((1 + qz)/(1 - z)) = log(1 + qz) - log(1 - z) for the pi/3 kernel.
        let q = Complex64::cis(-2.0 * FRAC_PI_3);
        let order = 24;
        let mut num = TruncatedSeries::zero(order);
        num.coeffs[0] = ONE;
        num.coeffs[1] = q;
        let mut den = TruncatedSeries::zero(order);
        den.coeffs[0] = ONE;
        den.coeffs[1] = -ONE;
        let lhs = num.div(&den).unwrap().log().unwrap();
        let rhs = num.log().unwrap().sub(&den.log().unwrap());
        assert!(lhs.max_abs_diff(&rhs) < 1e-13);
    }
}
