//! Constructors for the explicit families: slanted half-plane mappings,
//! strip mappings, `f₀`, the class `F^a_{λ,δ}`, and convex combinations.
//!
//! Every member is obtained from a linear relation `h' + c·g' = ψ'` with a
//! prescribed dilatation `ω = g'/h'`, which gives `h' = ψ'/(1 + cω)` and
//! `g' = ω h'`; integrating with `h(0) = g(0) = 0` yields the map.

use crate::harmonic::{ClassTag, DilatationSpec, HarmonicMap, Sign};
use crate::series::Series;
use crate::{cis, ensure_finite, ensure_unimodular, reduce_angle, Complex, Error, Result};
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

/// Tolerance on `ω(0)` against the value forced by `h'(0) = 1`.
pub const ORIGIN_TOL: f64 = 1e-9;
/// Tolerance on convex-combination weights summing to one.
pub const WEIGHT_TOL: f64 = 1e-12;

fn check_disk(z: Complex, name: &'static str) -> Result<()> {
    ensure_finite(z, name)?;
    let m = z.norm();
    if m >= 1.0 {
        return Err(Error::NotInDisk { name, modulus: m });
    }
    Ok(())
}

/// `(a', γ_a) = (|1 + a| − 1, arg(1 + conj(a)))` for `|a| < 1`.
pub fn aux_params(a: Complex) -> Result<(f64, f64)> {
    check_disk(a, "a")?;
    let one = Complex::new(1.0, 0.0);
    Ok(((one + a).norm() - 1.0, (one + a.conj()).arg()))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SlantParams {
    #[serde(with = "crate::json::complex")]
    pub a: Complex,
    pub gamma: f64,
    pub a_prime: f64,
    pub gamma_a: f64,
}

impl SlantParams {
    pub fn new(a: Complex, gamma: f64) -> Result<Self> {
        let (a_prime, gamma_a) = aux_params(a)?;
        ensure_finite(Complex::new(gamma, 0.0), "gamma")?;
        Ok(SlantParams {
            a,
            gamma: reduce_angle(gamma),
            a_prime,
            gamma_a,
        })
    }

    /// `γ + γ_a`.
    pub fn total_angle(&self) -> f64 {
        self.gamma + self.gamma_a
    }

    /// Dilatation of the canonical member `f^a_γ`:
    /// `e^{2iT}(a' − z e^{iT})/(1 − a' z e^{iT})` with `T = γ + γ_a`.
    pub fn canonical_dilatation(&self) -> DilatationSpec {
        let t = self.total_angle();
        DilatationSpec::Moebius {
            prefactor_angle: reduce_angle(2.0 * t),
            a_param: self.a_prime,
            inner_angle: reduce_angle(t),
            sign: Sign::Minus,
        }
    }

    /// Value `ω(0)` must take for a member of the class.
    pub fn origin_dilatation(&self) -> Complex {
        self.a_prime * cis(2.0 * self.total_angle())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StripParams {
    #[serde(with = "crate::json::complex")]
    pub b: Complex,
    pub beta: f64,
    pub b_prime: f64,
    pub gamma_b: f64,
}

impl StripParams {
    pub fn new(b: Complex, beta: f64) -> Result<Self> {
        let (b_prime, gamma_b) = aux_params(b).map_err(|e| match e {
            Error::NotInDisk { modulus, .. } => Error::NotInDisk { name: "b", modulus },
            other => other,
        })?;
        if !(beta > 0.0 && beta < PI) {
            return Err(Error::OutOfRange {
                name: "beta",
                value: beta,
                range: "(0, π)",
            });
        }
        Ok(StripParams {
            b,
            beta,
            b_prime,
            gamma_b,
        })
    }

    pub fn origin_dilatation(&self) -> Complex {
        self.b_prime * cis(2.0 * self.gamma_b)
    }

    /// Strip walls `((β − π)/(2 sin β), β/(2 sin β))` for `Re(w/(1 + b))`.
    pub fn walls(&self) -> (f64, f64) {
        let s = 2.0 * self.beta.sin();
        ((self.beta - PI) / s, self.beta / s)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FLambdaDeltaParams {
    #[serde(with = "crate::json::complex")]
    pub a: Complex,
    #[serde(with = "crate::json::complex")]
    pub lambda: Complex,
    #[serde(with = "crate::json::complex")]
    pub delta: Complex,
    pub a_prime: f64,
    pub gamma_a: f64,
}

impl FLambdaDeltaParams {
    pub fn new(a: Complex, lambda: Complex, delta: Complex) -> Result<Self> {
        let (a_prime, gamma_a) = aux_params(a)?;
        ensure_unimodular(lambda)?;
        ensure_unimodular(delta)?;
        Ok(FLambdaDeltaParams {
            a,
            lambda,
            delta,
            a_prime,
            gamma_a,
        })
    }

    pub fn from_angles(a: Complex, lambda_angle: f64, delta_angle: f64) -> Result<Self> {
        FLambdaDeltaParams::new(a, cis(lambda_angle), cis(delta_angle))
    }

    /// `conj(δ²) e^{−2iγ_a}`, the weight of `G'` in the defining relation.
    pub fn relation_weight(&self) -> Complex {
        (self.delta * self.delta).conj() * cis(-2.0 * self.gamma_a)
    }

    pub fn origin_dilatation(&self) -> Complex {
        self.a_prime / self.relation_weight()
    }
}

/// `f₀ = h₀ + conj(g₀)` with `h₀_k = (k + 1)/2`, `g₀_k = (1 − k)/2` for `k ≥ 1`.
pub fn right_halfplane_f0(order: usize) -> HarmonicMap {
    let p = SlantParams::new(Complex::new(0.0, 0.0), 0.0).expect("a = 0 is admissible");
    slanted_halfplane_canonical(&p, order)
}

/// The canonical slanted half-plane mapping `f^a_γ`.
///
/// With `e = e^{i(γ+γ_a)}`: `h_k = ((1 + a') + (1 − a')k)/2 · e^{k−1}` and
/// `g_k = e² ((1 + a') − (1 − a')k)/2 · e^{k−1}`.
pub fn slanted_halfplane_canonical(p: &SlantParams, order: usize) -> HarmonicMap {
    let e = cis(p.total_angle());
    let e2 = e * e;
    let ap = p.a_prime;
    let mut h = Vec::with_capacity(order + 1);
    let mut g = Vec::with_capacity(order + 1);
    h.push(Complex::new(0.0, 0.0));
    g.push(Complex::new(0.0, 0.0));
    for k in 1..=order {
        let kf = k as f64;
        let ek = cis((kf - 1.0) * p.total_angle());
        h.push(ek * (((1.0 + ap) + (1.0 - ap) * kf) / 2.0));
        g.push(e2 * ek * (((1.0 + ap) - (1.0 - ap) * kf) / 2.0));
    }
    HarmonicMap::new(
        Series::from_vec_unchecked(h),
        Series::from_vec_unchecked(g),
        ClassTag::H,
    )
    .expect("canonical coefficients satisfy the class-H normalization")
}

/// Closed forms `(h^a_γ(z), g^a_γ(z))` for cross-checks.
pub fn slanted_halfplane_closed_form(p: &SlantParams, z: Complex) -> (Complex, Complex) {
    let e = cis(p.total_angle());
    let ap = p.a_prime;
    let d = (1.0 - e * z) * (1.0 - e * z);
    let h = (z - (1.0 + ap) / 2.0 * e * z * z) / d;
    let g = e * e * (ap * z - (1.0 + ap) / 2.0 * e * z * z) / d;
    (h, g)
}

/// `ψ(z) = (1 + a')z/(1 − e^{i(γ+γ_a)}z)`, the right side of the half-plane relation.
pub fn halfplane_primitive(p: &SlantParams, order: usize) -> Series {
    let t = p.total_angle();
    Series::from_fn(order, |k| {
        if k == 0 {
            Complex::new(0.0, 0.0)
        } else {
            cis((k as f64 - 1.0) * t) * (1.0 + p.a_prime)
        }
    })
}

/// `ψ'(z) = (1 + b')/((1 + z e^{i(β+γ_b)})(1 + z e^{−i(β−γ_b)}))`.
pub fn strip_primitive_derivative(p: &StripParams, order: usize) -> Series {
    quadratic_reciprocal(
        1.0 + p.b_prime,
        cis(p.beta + p.gamma_b),
        cis(-(p.beta - p.gamma_b)),
        order,
    )
}

/// `ψ` for strips, integrated from `ψ'` so that no logarithm branch is involved.
pub fn strip_primitive(p: &StripParams, order: usize) -> Series {
    strip_primitive_derivative(p, order.max(1) - 1).antidifferentiate()
}

/// Right side `(1 + a')/((1 + λδe^{iγ_a}z)(1 + conj(λ)δe^{iγ_a}z))`.
pub fn f_lambda_delta_rhs(p: &FLambdaDeltaParams, order: usize) -> Series {
    let rot = p.delta * cis(p.gamma_a);
    quadratic_reciprocal(1.0 + p.a_prime, p.lambda * rot, p.lambda.conj() * rot, order)
}

/// Series of `scale / ((1 + u z)(1 + v z))`.
fn quadratic_reciprocal(scale: f64, u: Complex, v: Complex, order: usize) -> Series {
    let one = Complex::new(1.0, 0.0);
    let den = Series::polynomial(&[one, u + v, u * v], order);
    Series::constant(Complex::new(scale, 0.0), order)
        .divide(&den)
        .expect("denominator is 1 at the origin")
}

fn check_origin(omega: &DilatationSpec, expected: Complex) -> Result<()> {
    omega.validate()?;
    let found = omega.value_at_origin();
    if (found - expected).norm() > ORIGIN_TOL {
        return Err(Error::InconsistentDilatationAtOrigin { found, expected });
    }
    Ok(())
}

/// Solves `h' + c·g' = rhs` together with `g' = ω h'`.
fn member_from_relation(
    rhs_derivative: &Series,
    weight: Complex,
    omega: &DilatationSpec,
) -> Result<HarmonicMap> {
    let n = rhs_derivative.order();
    let w = omega.to_series(n);
    let den = Series::linear_combine(
        Complex::new(1.0, 0.0),
        &Series::constant(Complex::new(1.0, 0.0), n),
        weight,
        &w,
    );
    let hp = rhs_derivative.divide(&den)?;
    let gp = w.cauchy_product(&hp);
    HarmonicMap::new(hp.antidifferentiate(), gp.antidifferentiate(), ClassTag::H)
}

fn derivative_order(order: usize) -> Result<usize> {
    if order == 0 {
        return Err(Error::OutOfRange {
            name: "order",
            value: 0.0,
            range: "positive integers",
        });
    }
    Ok(order - 1)
}

/// Member of `S(H^a_γ)` with dilatation `ω`:
/// `h + e^{−2i(γ+γ_a)} g = (1 + a')z/(1 − e^{i(γ+γ_a)}z)`.
pub fn halfplane_member(p: &SlantParams, omega: &DilatationSpec, order: usize) -> Result<HarmonicMap> {
    check_origin(omega, p.origin_dilatation())?;
    let rhs = halfplane_primitive(p, order).differentiate();
    let rhs = rhs.truncate(derivative_order(order)?);
    member_from_relation(&rhs, cis(-2.0 * p.total_angle()), omega)
}

/// Member of `S(Ω^b_β)` with dilatation `ω`: `h' + e^{−2iγ_b} g' = ψ'`.
pub fn strip_member(p: &StripParams, omega: &DilatationSpec, order: usize) -> Result<HarmonicMap> {
    check_origin(omega, p.origin_dilatation())?;
    let rhs = strip_primitive_derivative(p, derivative_order(order)?);
    member_from_relation(&rhs, cis(-2.0 * p.gamma_b), omega)
}

/// Member of `F^a_{λ,δ}` with dilatation `ω`.
pub fn f_lambda_delta_member(
    p: &FLambdaDeltaParams,
    omega: &DilatationSpec,
    order: usize,
) -> Result<HarmonicMap> {
    check_origin(omega, p.origin_dilatation())?;
    let rhs = f_lambda_delta_rhs(p, derivative_order(order)?);
    member_from_relation(&rhs, p.relation_weight(), omega)
}

/// Coefficientwise weighted sum `Σ t_j f_j`.
pub fn convex_combination(maps: &[HarmonicMap], weights: &[f64]) -> Result<HarmonicMap> {
    if maps.is_empty() || maps.len() != weights.len() {
        return Err(Error::BadWeights(format!(
            "{} maps but {} weights",
            maps.len(),
            weights.len()
        )));
    }
    if let Some(w) = weights.iter().find(|w| !(w.is_finite() && **w >= 0.0)) {
        return Err(Error::BadWeights(format!("weight {w} is negative or not finite")));
    }
    let total: f64 = weights.iter().sum();
    if (total - 1.0).abs() > WEIGHT_TOL {
        return Err(Error::BadWeights(format!("weights sum to {total}, not 1")));
    }
    let order = maps[0].order();
    if let Some(m) = maps.iter().find(|m| m.order() != order) {
        return Err(Error::OrderMismatch(order, m.order()));
    }
    let mut h = Series::zero(order);
    let mut g = Series::zero(order);
    let one = Complex::new(1.0, 0.0);
    for (m, &w) in maps.iter().zip(weights) {
        h = Series::linear_combine(one, &h, Complex::new(w, 0.0), m.h());
        g = Series::linear_combine(one, &g, Complex::new(w, 0.0), m.g());
    }
    let tag = maps
        .iter()
        .map(|m| m.class_tag())
        .min()
        .unwrap_or(ClassTag::Unconstrained);
    HarmonicMap::new(h, g, tag)
}

/// `(h' − e^{−2iφ}g')/(h' + e^{−2iφ}g')` at `z`; has positive real part
/// whenever `|ω(z)| < 1`.
pub fn shear_quotient_at(f: &HarmonicMap, phi: f64, z: Complex) -> Result<Complex> {
    let hp = f.h().evaluate_derivative(z)?;
    let gp = f.g().evaluate_derivative(z)? * cis(-2.0 * phi);
    Ok((hp - gp) / (hp + gp))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_3, FRAC_PI_4};

    fn c(re: f64, im: f64) -> Complex {
        Complex::new(re, im)
    }

    #[test]
    fn aux_params_examples() {
        assert_eq!(aux_params(c(0., 0.)).unwrap(), (0.0, 0.0));
        let (ap, ga) = aux_params(c(-0.35, 0.)).unwrap();
        assert!((ap + 0.35).abs() < 1e-15 && ga == 0.0);
        assert!(aux_params(c(0., 1.)).is_err());
        // a = i sits on the circle, so check the formula values directly
        let one = c(1., 0.);
        let i = c(0., 1.);
        assert!(((one + i).norm() - 1.0 - (2f64.sqrt() - 1.0)).abs() < 1e-15);
        assert!(((one + i.conj()).arg() + FRAC_PI_4).abs() < 1e-15);
        let (ap, ga) = aux_params(c(0., 0.999)).unwrap();
        assert!((ap - (1.0f64 + 0.999 * 0.999).sqrt() + 1.0).abs() < 1e-15);
        assert!((ga + 0.999f64.atan2(1.0)).abs() < 1e-15);
    }

    #[test]
    fn canonical_a0_is_f0() {
        let f = right_halfplane_f0(50);
        for k in 1..=50 {
            let kf = k as f64;
            assert_eq!(f.h().coeff(k), c((kf + 1.) / 2., 0.));
            assert_eq!(f.g().coeff(k), c((1. - kf) / 2., 0.));
        }
    }

    #[test]
    fn canonical_coefficient_identity_and_origin_derivative() {
        let p = SlantParams::new(c(0.2, 0.5), 2.0).unwrap();
        let f = slanted_halfplane_canonical(&p, 128);
        let t = p.total_angle();
        for k in 1..=128 {
            let lhs = f.h().coeff(k) + cis(-2.0 * t) * f.g().coeff(k);
            let rhs = (1.0 + p.a_prime) * cis((k as f64 - 1.0) * t);
            assert!((lhs - rhs).norm() < 1e-12);
        }
        assert!((f.g().coeff(1) - p.a_prime * cis(2.0 * t)).norm() < 1e-12);
        for k in 0..6 {
            let z = Complex::from_polar(0.7, 1.1 * k as f64);
            let (h, g) = slanted_halfplane_closed_form(&p, z);
            let f = slanted_halfplane_canonical(&p, 400);
            assert!((f.h().evaluate(z).unwrap() - h).norm() < 1e-10);
            assert!((f.g().evaluate(z).unwrap() - g).norm() < 1e-10);
        }
    }

    #[test]
    fn halfplane_member_reproduces_canonical() {
        let p = SlantParams::new(c(-0.3, 0.45), 0.8).unwrap();
        let f = halfplane_member(&p, &p.canonical_dilatation(), 128).unwrap();
        let g = slanted_halfplane_canonical(&p, 128);
        assert!(f.h().max_abs_diff(g.h()) < 1e-10);
        assert!(f.g().max_abs_diff(g.g()) < 1e-10);
    }

    #[test]
    fn halfplane_member_with_minus_z_is_f0() {
        let p = SlantParams::new(c(0., 0.), 0.0).unwrap();
        let w = DilatationSpec::monomial(std::f64::consts::PI, 1).unwrap();
        let f = halfplane_member(&p, &w, 80).unwrap();
        let f0 = right_halfplane_f0(80);
        assert!(f.h().max_abs_diff(f0.h()) < 1e-12);
        assert!(f.g().max_abs_diff(f0.g()) < 1e-12);
    }

    #[test]
    fn halfplane_member_z_squared() {
        let p = SlantParams::new(c(0., 0.), 0.0).unwrap();
        let w = DilatationSpec::monomial(0.0, 2).unwrap();
        let f = halfplane_member(&p, &w, 100).unwrap();
        assert_eq!(f.class_tag(), ClassTag::H);
        let s = f.h() + f.g();
        for k in 1..=100 {
            assert!((s.coeff(k) - c(1., 0.)).norm() < 1e-10);
        }
        let d = f.dilatation().unwrap();
        let z = c(0.3, 0.4);
        assert!((d.evaluate(z).unwrap() - z * z).norm() < 1e-9);
    }

    #[test]
    fn halfplane_member_rejects_bad_origin() {
        let p = SlantParams::new(c(0.4, 0.), 0.0).unwrap();
        let w = DilatationSpec::monomial(0.0, 1).unwrap();
        assert!(matches!(
            halfplane_member(&p, &w, 20),
            Err(Error::InconsistentDilatationAtOrigin { .. })
        ));
    }

    #[test]
    fn strip_member_arctan() {
        let p = StripParams::new(c(0., 0.), FRAC_PI_2).unwrap();
        let w = DilatationSpec::monomial(0.0, 1).unwrap();
        let f = strip_member(&p, &w, 60).unwrap();
        assert_eq!(f.g().coeff(1), c(0., 0.));
        let s = f.h() + f.g();
        for k in 0..=60 {
            let expected = if k % 2 == 0 {
                0.0
            } else {
                let sign = if (k / 2) % 2 == 0 { 1.0 } else { -1.0 };
                sign / k as f64
            };
            assert!((s.coeff(k) - c(expected, 0.)).norm() < 1e-12, "k = {k}");
        }
    }

    #[test]
    fn strip_rejects_degenerate_beta() {
        assert!(StripParams::new(c(0., 0.), 0.0).is_err());
        assert!(StripParams::new(c(0., 0.), std::f64::consts::PI).is_err());
        assert!(matches!(
            StripParams::new(c(1.2, 0.), 1.0),
            Err(Error::NotInDisk { name: "b", .. })
        ));
    }

    #[test]
    fn f_lambda_delta_contains_halfplane_and_strip() {
        let a = c(0.25, -0.3);
        let gamma = 1.3;
        let sp = SlantParams::new(a, gamma).unwrap();
        let fp = FLambdaDeltaParams::new(a, c(-1., 0.), cis(gamma)).unwrap();
        let w = sp.canonical_dilatation();
        let f1 = halfplane_member(&sp, &w, 96).unwrap();
        let f2 = f_lambda_delta_member(&fp, &w, 96).unwrap();
        assert!(f1.h().max_abs_diff(f2.h()) < 1e-10);
        assert!(f1.g().max_abs_diff(f2.g()) < 1e-10);

        let b = c(-0.2, 0.4);
        let beta = 1.1;
        let st = StripParams::new(b, beta).unwrap();
        let fp = FLambdaDeltaParams::new(b, cis(beta), c(1., 0.)).unwrap();
        let w = DilatationSpec::moebius(2.0 * st.gamma_b, st.b_prime, 0.4, Sign::Plus).unwrap();
        let f1 = strip_member(&st, &w, 96).unwrap();
        let f2 = f_lambda_delta_member(&fp, &w, 96).unwrap();
        assert!(f1.h().max_abs_diff(f2.h()) < 1e-10);
        assert!(f1.g().max_abs_diff(f2.g()) < 1e-10);
    }

    #[test]
    fn f_lambda_delta_real_a_rhs() {
        let a = 0.4;
        let (lam, del) = (cis(0.9), cis(-2.2));
        let p = FLambdaDeltaParams::new(c(a, 0.), lam, del).unwrap();
        let rhs = f_lambda_delta_rhs(&p, 200);
        for k in 0..5 {
            let z = Complex::from_polar(0.8, 1.3 * k as f64);
            let expected = (1.0 + a) / ((1.0 + lam * del * z) * (1.0 + lam.conj() * del * z));
            assert!((rhs.evaluate(z).unwrap() - expected).norm() < 1e-12);
        }
    }

    #[test]
    fn convex_combination_examples() {
        let p = SlantParams::new(c(0.1, 0.2), 0.3).unwrap();
        let f = slanted_halfplane_canonical(&p, 40);
        assert_eq!(convex_combination(std::slice::from_ref(&f), &[1.0]).unwrap(), f);
        let ff = convex_combination(&[f.clone(), f.clone()], &[0.5, 0.5]).unwrap();
        assert!(ff.h().max_abs_diff(f.h()) < 1e-15);
        assert!(matches!(
            convex_combination(&[f.clone(), f.clone()], &[0.7, 0.7]),
            Err(Error::BadWeights(_))
        ));
        assert!(convex_combination(std::slice::from_ref(&f), &[-0.0 - 1.0]).is_err());
    }

    #[test]
    fn strip_band_geometry() {
        let p = StripParams::new(c(0.5, 0.), FRAC_PI_3).unwrap();
        let w = DilatationSpec::moebius(0.0, 0.5, 0.7, Sign::Plus).unwrap();
        let f = strip_member(&p, &w, 3000).unwrap();
        let (lo, hi) = p.walls();
        for i in 0..40 {
            let z = Complex::from_polar(0.97, i as f64 * 0.157);
            let v = (f.evaluate(z).unwrap() / c(1.5, 0.)).re;
            assert!(v > lo && v < hi, "{v} not in ({lo}, {hi})");
        }
    }
}
