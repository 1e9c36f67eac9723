//! Truncated complex power series `c₀ + c₁z + … + c_N z^N`.
//!
//! Binary operations truncate to the smaller order instead of zero-padding,
//! so a result never claims more coefficients than both inputs determine.
//! Products and quotients skip trailing zero coefficients, which makes
//! multiplication or division by a short polynomial linear in `N`.

use crate::{ensure_finite, ensure_unimodular, Complex, Error, Result};
use serde::{Deserialize, Serialize};
use std::ops::{Add, Mul, Neg, Sub};

/// Default truncation order for constructors.
pub const DEFAULT_ORDER: usize = 128;
/// Smallest admissible `|den(0)|` in [`Series::divide`].
pub const DIVIDE_FLOOR: f64 = 1e-12;
/// Tolerance for `|μ| = 1` checks on rotation parameters.
pub const UNIT_MODULUS_TOL: f64 = 1e-12;
/// Default largest evaluation radius.
pub const R_MAX: f64 = 0.999;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Series {
    #[serde(with = "crate::json::complex_vec")]
    coeffs: Vec<Complex>,
}

impl Series {
    /// Wraps `c₀..c_N`. Fails on an empty or non-finite coefficient list.
    pub fn new(coeffs: Vec<Complex>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::NonFinite("empty coefficient list"));
        }
        for c in &coeffs {
            ensure_finite(*c, "series coefficient")?;
        }
        Ok(Series { coeffs })
    }

    pub(crate) fn from_vec_unchecked(coeffs: Vec<Complex>) -> Self {
        debug_assert!(!coeffs.is_empty());
        Series { coeffs }
    }

    pub fn from_real(coeffs: &[f64]) -> Result<Self> {
        Self::new(coeffs.iter().map(|&c| Complex::new(c, 0.0)).collect())
    }

    pub fn from_fn(order: usize, f: impl FnMut(usize) -> Complex) -> Self {
        Series::from_vec_unchecked((0..=order).map(f).collect())
    }

    pub fn zero(order: usize) -> Self {
        Series::from_vec_unchecked(vec![Complex::new(0.0, 0.0); order + 1])
    }

    /// `c·z^k`, truncated at `order`.
    pub fn monomial(c: Complex, k: usize, order: usize) -> Self {
        let mut s = Series::zero(order);
        if k <= order {
            s.coeffs[k] = c;
        }
        s
    }

    pub fn constant(c: Complex, order: usize) -> Self {
        Series::monomial(c, 0, order)
    }

    /// `1/(1 − z)`: every coefficient equal to one.
    pub fn geometric(order: usize) -> Self {
        Series::from_vec_unchecked(vec![Complex::new(1.0, 0.0); order + 1])
    }

    /// Series of the polynomial with the given ascending coefficients.
    pub fn polynomial(coeffs: &[Complex], order: usize) -> Self {
        Series::from_fn(order, |k| {
            coeffs.get(k).copied().unwrap_or(Complex::new(0.0, 0.0))
        })
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Complex] {
        &self.coeffs
    }

    /// Coefficient `k`, zero beyond the truncation order.
    pub fn coeff(&self, k: usize) -> Complex {
        self.coeffs.get(k).copied().unwrap_or(Complex::new(0.0, 0.0))
    }

    pub fn truncate(&self, order: usize) -> Series {
        Series::from_fn(order, |k| self.coeff(k))
    }

    pub fn scale(&self, c: Complex) -> Series {
        Series::from_vec_unchecked(self.coeffs.iter().map(|x| x * c).collect())
    }

    /// `α·s + β·t`, truncated to the smaller order.
    pub fn linear_combine(alpha: Complex, s: &Series, beta: Complex, t: &Series) -> Series {
        let n = s.order().min(t.order());
        Series::from_fn(n, |k| alpha * s.coeffs[k] + beta * t.coeffs[k])
    }

    /// Index of the last nonzero coefficient (0 for the zero series).
    fn effective_degree(&self) -> usize {
        self.coeffs
            .iter()
            .rposition(|c| *c != Complex::new(0.0, 0.0))
            .unwrap_or(0)
    }

    /// Product of the two analytic functions.
    pub fn cauchy_product(&self, other: &Series) -> Series {
        let n = self.order().min(other.order());
        let ds = self.effective_degree().min(n);
        let dt = other.effective_degree().min(n);
        Series::from_fn(n, |k| {
            let lo = k.saturating_sub(dt);
            let hi = k.min(ds);
            let mut acc = Complex::new(0.0, 0.0);
            for j in lo..=hi {
                acc += self.coeffs[j] * other.coeffs[k - j];
            }
            acc
        })
    }

    /// Quotient `self / den`, truncated to the smaller order.
    pub fn divide(&self, den: &Series) -> Result<Series> {
        let d0 = den.coeffs[0];
        if d0.norm() <= DIVIDE_FLOOR {
            return Err(Error::DivisorVanishesAtOrigin(d0.norm()));
        }
        let n = self.order().min(den.order());
        let dd = den.effective_degree().min(n);
        let inv = d0.inv();
        let mut out: Vec<Complex> = Vec::with_capacity(n + 1);
        for k in 0..=n {
            let mut acc = self.coeffs[k];
            for j in 1..=k.min(dd) {
                acc -= den.coeffs[j] * out[k - j];
            }
            out.push(acc * inv);
        }
        Series::new(out)
    }

    /// Termwise derivative; the order drops by one (an order-0 series maps
    /// to the order-0 zero series).
    pub fn differentiate(&self) -> Series {
        if self.order() == 0 {
            return Series::zero(0);
        }
        Series::from_fn(self.order() - 1, |k| self.coeffs[k + 1] * (k as f64 + 1.0))
    }

    /// Primitive vanishing at the origin; the order grows by one.
    pub fn antidifferentiate(&self) -> Series {
        Series::from_fn(self.order() + 1, |k| {
            if k == 0 {
                Complex::new(0.0, 0.0)
            } else {
                self.coeffs[k - 1] / k as f64
            }
        })
    }

    /// Coefficientwise (Hadamard) product.
    pub fn hadamard(&self, other: &Series) -> Series {
        let n = self.order().min(other.order());
        Series::from_fn(n, |k| self.coeffs[k] * other.coeffs[k])
    }

    /// `z·s(z)` keeping the same truncation order.
    pub fn mul_z(&self) -> Series {
        Series::from_fn(self.order(), |k| {
            if k == 0 {
                Complex::new(0.0, 0.0)
            } else {
                self.coeffs[k - 1]
            }
        })
    }

    /// `z·s'(z)`: coefficient `k` becomes `k·s_k`, order unchanged.
    pub fn euler(&self) -> Series {
        Series::from_fn(self.order(), |k| self.coeffs[k] * k as f64)
    }

    fn check_point(z: Complex) -> Result<()> {
        ensure_finite(z, "evaluation point")?;
        if z.norm() >= 1.0 {
            return Err(Error::OutsideDisk(z));
        }
        Ok(())
    }

    /// Horner evaluation at `|z| < 1`.
    pub fn evaluate(&self, z: Complex) -> Result<Complex> {
        Self::check_point(z)?;
        Ok(self.horner(z))
    }

    pub(crate) fn horner(&self, z: Complex) -> Complex {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex::new(0.0, 0.0), |acc, c| acc * z + c)
    }

    /// `s'(z)` without materializing the derivative series.
    pub fn evaluate_derivative(&self, z: Complex) -> Result<Complex> {
        Self::check_point(z)?;
        Ok(self.horner_derivative(z))
    }

    pub(crate) fn horner_derivative(&self, z: Complex) -> Complex {
        let mut acc = Complex::new(0.0, 0.0);
        for k in (1..self.coeffs.len()).rev() {
            acc = acc * z + self.coeffs[k] * k as f64;
        }
        acc
    }

    /// Coefficient action of `z ↦ μz`: coefficient `k` becomes `μ^k s_k`.
    pub fn compose_rotation(&self, mu: Complex) -> Result<Series> {
        ensure_unimodular(mu)?;
        let mut p = Complex::new(1.0, 0.0);
        let mut out = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            out.push(c * p);
            p *= mu;
        }
        Ok(Series::from_vec_unchecked(out))
    }

    /// Tail bound `r^{N+1}/(1 − r)` for unit-size coefficients at radius `r`.
    pub fn tail_bound(&self, r: f64) -> f64 {
        tail_bound(r, self.order())
    }

    pub fn max_abs_diff(&self, other: &Series) -> f64 {
        let n = self.order().max(other.order());
        (0..=n)
            .map(|k| (self.coeff(k) - other.coeff(k)).norm())
            .fold(0.0, f64::max)
    }

    pub fn is_zero(&self, tol: f64) -> bool {
        self.coeffs.iter().all(|c| c.norm() <= tol)
    }
}

/// `r^{N+1}/(1 − r)`.
pub fn tail_bound(r: f64, order: usize) -> f64 {
    r.powi(order as i32 + 1) / (1.0 - r)
}

/// Smallest order `N` for which `(N+1)² r^{N+1}/(1 − r)` is below `tol`.
///
/// The quadratic weight covers series whose coefficients grow linearly and
/// are then differentiated, which is the worst case met by the constructors
/// (half-plane maps have `h_k ~ k`).
pub fn order_for_radius(r: f64, tol: f64) -> usize {
    assert!((0.0..1.0).contains(&r), "radius must lie in [0, 1)");
    let mut n = 16usize;
    loop {
        let m = (n + 1) as f64;
        if m * m * r.powf(m) / (1.0 - r) <= tol {
            return n;
        }
        n += 16;
    }
}

impl Add for &Series {
    type Output = Series;
    fn add(self, rhs: &Series) -> Series {
        Series::linear_combine(Complex::new(1.0, 0.0), self, Complex::new(1.0, 0.0), rhs)
    }
}

impl Sub for &Series {
    type Output = Series;
    fn sub(self, rhs: &Series) -> Series {
        Series::linear_combine(Complex::new(1.0, 0.0), self, Complex::new(-1.0, 0.0), rhs)
    }
}

impl Mul for &Series {
    type Output = Series;
    fn mul(self, rhs: &Series) -> Series {
        self.cauchy_product(rhs)
    }
}

impl Mul<Complex> for &Series {
    type Output = Series;
    fn mul(self, rhs: Complex) -> Series {
        self.scale(rhs)
    }
}

impl Neg for &Series {
    type Output = Series;
    fn neg(self) -> Series {
        self.scale(Complex::new(-1.0, 0.0))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex {
        Complex::new(re, 0.0)
    }

    fn ser(v: &[f64]) -> Series {
        Series::from_real(v).unwrap()
    }

    // h₀ = (z − z²/2)/(1 − z)², g₀ = −(z²/2)/(1 − z)²
    fn h0(n: usize) -> Series {
        Series::from_fn(n, |k| if k == 0 { c(0.0) } else { c((k as f64 + 1.0) / 2.0) })
    }

    fn g0(n: usize) -> Series {
        Series::from_fn(n, |k| if k == 0 { c(0.0) } else { c((1.0 - k as f64) / 2.0) })
    }

    #[test]
    fn linear_combine_examples() {
        let ones = ser(&[1., 1., 1.]);
        assert_eq!(
            Series::linear_combine(c(1.), &ones, c(1.), &ones),
            ser(&[2., 2., 2.])
        );
        let s = ser(&[1., 2., 3., 4.]);
        assert_eq!(
            Series::linear_combine(c(1.), &s, c(0.), &ones),
            ser(&[1., 2., 3.])
        );
        let sum = &h0(20) + &g0(20);
        assert_eq!(sum.coeff(0), c(0.));
        for k in 1..=20 {
            assert_eq!(sum.coeff(k), c(1.));
        }
    }

    #[test]
    fn cauchy_product_examples() {
        assert_eq!(ser(&[1., 1.]).cauchy_product(&ser(&[1., -1.])), ser(&[1., 0.]));
        let s = ser(&[3., -1., 2.]);
        assert_eq!(s.cauchy_product(&ser(&[1., 0., 0.])), s);
        // 1/(1 − z)² = Σ (k + 1) z^k, checked against the binomial sum
        let sq = Series::geometric(30).cauchy_product(&Series::geometric(30));
        for k in 0..=30 {
            let binom: usize = (0..=k).map(|_| 1).sum();
            assert_eq!(sq.coeff(k), c(binom as f64));
        }
    }

    #[test]
    fn divide_examples() {
        assert_eq!(ser(&[0., 1.]).divide(&ser(&[1., 0.])).unwrap(), ser(&[0., 1.]));
        let q = Series::constant(c(1.), 12)
            .divide(&Series::polynomial(&[c(1.), c(-1.)], 12))
            .unwrap();
        assert_eq!(q, Series::geometric(12));
        let w = g0(40).differentiate().divide(&h0(40).differentiate()).unwrap();
        assert!(w.max_abs_diff(&Series::monomial(c(-1.), 1, 39)) < 1e-12);
    }

    #[test]
    fn divide_rejects_vanishing_origin() {
        let err = ser(&[1., 1.]).divide(&ser(&[1e-13, 1.])).unwrap_err();
        assert!(matches!(err, Error::DivisorVanishesAtOrigin(_)));
    }

    #[test]
    fn differentiate_and_antidifferentiate() {
        let s = Series::from_fn(8, |k| if k == 0 { c(0.) } else { c(1.) });
        assert_eq!(s.differentiate(), Series::from_fn(7, |k| c(k as f64 + 1.)));
        assert!(ser(&[5.]).differentiate().is_zero(0.0));
        assert!(ser(&[5., 0., 0.]).differentiate().is_zero(0.0));
        assert_eq!(ser(&[1., 0., 0.]).antidifferentiate(), ser(&[0., 1., 0., 0.]));
        assert_eq!(ser(&[1., 2., 3.]).antidifferentiate(), ser(&[0., 1., 1., 1.]));
        assert!(Series::zero(4).antidifferentiate().is_zero(0.0));
        let s = ser(&[0.5, -1.25, 3.0, 7.5]);
        assert_eq!(s.antidifferentiate().differentiate(), s);
    }

    #[test]
    fn hadamard_examples() {
        let s = ser(&[0.3, -2., 5., 1.]);
        assert_eq!(s.hadamard(&Series::geometric(3)), s);
        let prod = h0(25).hadamard(&g0(25));
        for k in 1..=25 {
            let kf = k as f64;
            assert!((prod.coeff(k) - c((1. - kf * kf) / 4.)).norm() < 1e-12);
        }
        assert!(s.hadamard(&Series::zero(3)).is_zero(0.0));
    }

    #[test]
    fn evaluate_examples() {
        let v = Series::geometric(64).evaluate(c(0.5)).unwrap();
        assert!((v - c(2.0)).norm() <= 2.0 * 0.5f64.powi(64) + 1e-15);
        let s = ser(&[0.7, 3., 4.]);
        assert_eq!(s.evaluate(c(0.)).unwrap(), c(0.7));
        let v = h0(128).evaluate(c(0.5)).unwrap();
        assert!((v - c(1.5)).norm() < 1e-12);
        assert!(matches!(
            s.evaluate(Complex::new(0.6, 0.8)),
            Err(Error::OutsideDisk(_))
        ));
    }

    #[test]
    fn compose_rotation_examples() {
        let s = ser(&[0., 1., 1., 1.]);
        assert_eq!(s.compose_rotation(c(1.)).unwrap(), s);
        assert_eq!(s.compose_rotation(c(-1.)).unwrap(), ser(&[0., -1., 1., -1.]));
        let mu = crate::cis(0.7);
        let r = h0(200).compose_rotation(mu).unwrap();
        let z = Complex::new(0.3, -0.4);
        let lhs = r.evaluate(z).unwrap();
        let rhs = h0(200).evaluate(mu * z).unwrap();
        assert!((lhs - rhs).norm() < 1e-12);
        assert!(matches!(
            s.compose_rotation(c(1.1)),
            Err(Error::NotUnimodular(_))
        ));
    }

    #[test]
    fn derivative_evaluation_matches_series() {
        let s = h0(60);
        let z = Complex::new(-0.2, 0.35);
        let a = s.evaluate_derivative(z).unwrap();
        let b = s.differentiate().evaluate(z).unwrap();
        assert!((a - b).norm() < 1e-12);
    }

    #[test]
    fn order_for_radius_meets_tolerance() {
        let n = order_for_radius(0.995, 1e-10);
        let m = (n + 1) as f64;
        assert!(m * m * 0.995f64.powf(m) / 0.005 <= 1e-10);
        assert!(n > 8192);
    }

    #[test]
    fn rejects_non_finite() {
        assert!(Series::new(vec![Complex::new(f64::NAN, 0.)]).is_err());
        assert!(Series::new(vec![]).is_err());
    }
}
