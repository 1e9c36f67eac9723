//! Harmonic maps `f = h + conj(g)` stored as a pair of truncated series.

use crate::series::Series;
use crate::{cis, ensure_finite, ensure_unimodular, reduce_angle, Complex, Error, Result};
use serde::{Deserialize, Serialize};

/// Tolerance for the class normalizations `h(0) = g(0) = h'(0) − 1 = 0`.
pub const CLASS_TOL: f64 = 1e-9;

/// Normalization class of a map.
///
/// `H` requires `h(0) = g(0) = 0` and `h'(0) = 1`; `H0` additionally
/// requires `g'(0) = 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ClassTag {
    Unconstrained,
    H,
    H0,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HarmonicMap {
    h: Series,
    g: Series,
    class_tag: ClassTag,
}

fn check_class(h: &Series, g: &Series, tag: ClassTag) -> Result<()> {
    if tag == ClassTag::Unconstrained {
        return Ok(());
    }
    let one = Complex::new(1.0, 0.0);
    if h.coeff(0).norm() > CLASS_TOL || g.coeff(0).norm() > CLASS_TOL {
        return Err(Error::ClassViolation(format!(
            "h(0) = {}, g(0) = {} (both must vanish)",
            h.coeff(0),
            g.coeff(0)
        )));
    }
    if (h.coeff(1) - one).norm() > CLASS_TOL {
        return Err(Error::ClassViolation(format!(
            "h'(0) = {} (must equal 1)",
            h.coeff(1)
        )));
    }
    if tag == ClassTag::H0 && g.coeff(1).norm() > CLASS_TOL {
        return Err(Error::ClassViolation(format!(
            "g'(0) = {} (must vanish in H0)",
            g.coeff(1)
        )));
    }
    Ok(())
}

impl HarmonicMap {
    pub fn new(h: Series, g: Series, class_tag: ClassTag) -> Result<Self> {
        if h.order() != g.order() {
            return Err(Error::OrderMismatch(h.order(), g.order()));
        }
        check_class(&h, &g, class_tag)?;
        Ok(HarmonicMap { h, g, class_tag })
    }

    /// Builds a map and picks the strongest class its coefficients satisfy.
    pub fn with_inferred_class(h: Series, g: Series) -> Result<Self> {
        for tag in [ClassTag::H0, ClassTag::H, ClassTag::Unconstrained] {
            if let Ok(f) = HarmonicMap::new(h.clone(), g.clone(), tag) {
                return Ok(f);
            }
        }
        Err(Error::OrderMismatch(h.order(), g.order()))
    }

    /// The analytic map `h` (with `g ≡ 0`).
    pub fn analytic(h: Series) -> Result<Self> {
        let g = Series::zero(h.order());
        HarmonicMap::with_inferred_class(h, g)
    }

    pub fn h(&self) -> &Series {
        &self.h
    }

    pub fn g(&self) -> &Series {
        &self.g
    }

    pub fn class_tag(&self) -> ClassTag {
        self.class_tag
    }

    pub fn order(&self) -> usize {
        self.h.order()
    }

    /// `h(z) + conj(g(z))`.
    pub fn evaluate(&self, z: Complex) -> Result<Complex> {
        Ok(self.h.evaluate(z)? + self.g.evaluate(z)?.conj())
    }

    /// Dilatation `ω = g'/h'` as a series.
    pub fn dilatation(&self) -> Result<Series> {
        self.g.differentiate().divide(&self.h.differentiate())
    }

    /// `g'(z)/h'(z)` evaluated pointwise.
    pub fn dilatation_at(&self, z: Complex) -> Result<Complex> {
        let hp = self.h.evaluate_derivative(z)?;
        let gp = self.g.horner_derivative(z);
        Ok(gp / hp)
    }

    /// `J_f(z) = |h'(z)|² − |g'(z)|²`.
    pub fn jacobian_at(&self, z: Complex) -> Result<f64> {
        let hp = self.h.evaluate_derivative(z)?;
        let gp = self.g.horner_derivative(z);
        Ok(hp.norm_sqr() - gp.norm_sqr())
    }

    /// Rotation `f^μ(z) = conj(μ) f(μz)`, i.e. `h^μ = conj(μ) h(μz)` and
    /// `g^μ = μ g(μz)`.
    pub fn rotate(&self, mu: Complex) -> Result<HarmonicMap> {
        ensure_unimodular(mu)?;
        let h = self.h.compose_rotation(mu)?.scale(mu.conj());
        let g = self.g.compose_rotation(mu)?.scale(mu);
        HarmonicMap::new(h, g, self.class_tag)
    }

    /// Harmonic (Hadamard) convolution `h*H + conj(g*G)`.
    pub fn convolve(&self, other: &HarmonicMap) -> HarmonicMap {
        // weakest of the two tags
        let tag = self.class_tag.min(other.class_tag);
        HarmonicMap {
            h: self.h.hadamard(&other.h),
            g: self.g.hadamard(&other.g),
            class_tag: tag,
        }
    }

    /// Analytic shear `h − e^{2iα} g`.
    pub fn shear(&self, alpha: f64) -> Series {
        Series::linear_combine(
            Complex::new(1.0, 0.0),
            &self.h,
            -cis(2.0 * alpha),
            &self.g,
        )
    }

    /// `c·f = c·h + conj(conj(c)·g)`; the result is unconstrained unless `c = 1`.
    pub fn scale(&self, c: Complex) -> HarmonicMap {
        let tag = if c == Complex::new(1.0, 0.0) {
            self.class_tag
        } else {
            ClassTag::Unconstrained
        };
        HarmonicMap {
            h: self.h.scale(c),
            g: self.g.scale(c.conj()),
            class_tag: tag,
        }
    }

    pub fn truncate(&self, order: usize) -> HarmonicMap {
        HarmonicMap {
            h: self.h.truncate(order),
            g: self.g.truncate(order),
            class_tag: self.class_tag,
        }
    }
}

/// Dilatation of `f^a_0 * f` for real `a ∈ (−1, 1)`:
/// `(2a g' − (1 − a) z g'') / (2h' + (1 − a) z h'')`.
pub fn convolution_dilatation_f_a0(a: f64, f: &HarmonicMap) -> Result<Series> {
    if !(a > -1.0 && a < 1.0) {
        return Err(Error::OutOfRange {
            name: "a",
            value: a,
            range: "(-1, 1)",
        });
    }
    let one = Complex::new(1.0, 0.0);
    let hp = f.h().differentiate();
    let gp = f.g().differentiate();
    let zh2 = hp.euler();
    let zg2 = gp.euler();
    let num = Series::linear_combine(one * (2.0 * a), &gp, -one * (1.0 - a), &zg2);
    let den = Series::linear_combine(one * 2.0, &hp, one * (1.0 - a), &zh2);
    num.divide(&den)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Sign {
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
}

impl Sign {
    pub fn value(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }
}

/// Closed-form dilatations used by the constructors.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum DilatationSpec {
    /// `ω ≡ 0`.
    Zero,
    /// `ω(z) = e^{iθ} zⁿ`.
    Monomial { theta: f64, n: u32 },
    /// `ω(z) = e^{i p} (a ± z e^{iφ}) / (1 ± a z e^{iφ})` with real `|a| < 1`.
    Moebius {
        prefactor_angle: f64,
        a_param: f64,
        inner_angle: f64,
        sign: Sign,
    },
}

impl DilatationSpec {
    pub fn monomial(theta: f64, n: u32) -> Result<Self> {
        let spec = DilatationSpec::Monomial {
            theta: reduce_angle(theta),
            n,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn moebius(prefactor_angle: f64, a_param: f64, inner_angle: f64, sign: Sign) -> Result<Self> {
        let spec = DilatationSpec::Moebius {
            prefactor_angle: reduce_angle(prefactor_angle),
            a_param,
            inner_angle: reduce_angle(inner_angle),
            sign,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            DilatationSpec::Zero => Ok(()),
            DilatationSpec::Monomial { theta, n } => {
                ensure_finite(Complex::new(theta, 0.0), "monomial angle")?;
                if n == 0 {
                    return Err(Error::OutOfRange {
                        name: "n",
                        value: 0.0,
                        range: "positive integers",
                    });
                }
                Ok(())
            }
            DilatationSpec::Moebius {
                prefactor_angle,
                a_param,
                inner_angle,
                ..
            } => {
                ensure_finite(Complex::new(prefactor_angle, inner_angle), "Möbius angles")?;
                if !(a_param > -1.0 && a_param < 1.0) {
                    return Err(Error::OutOfRange {
                        name: "a_param",
                        value: a_param,
                        range: "(-1, 1)",
                    });
                }
                Ok(())
            }
        }
    }

    /// Closed-form value at `z`.
    pub fn evaluate(&self, z: Complex) -> Complex {
        match *self {
            DilatationSpec::Zero => Complex::new(0.0, 0.0),
            DilatationSpec::Monomial { theta, n } => cis(theta) * z.powu(n),
            DilatationSpec::Moebius {
                prefactor_angle,
                a_param,
                inner_angle,
                sign,
            } => {
                let w = z * cis(inner_angle) * sign.value();
                cis(prefactor_angle) * (a_param + w) / (1.0 + a_param * w)
            }
        }
    }

    /// Derivative `ω'(z)` in closed form.
    pub fn derivative(&self, z: Complex) -> Complex {
        match *self {
            DilatationSpec::Zero => Complex::new(0.0, 0.0),
            DilatationSpec::Monomial { theta, n } => {
                cis(theta) * (n as f64) * z.powu(n - 1)
            }
            DilatationSpec::Moebius {
                prefactor_angle,
                a_param,
                inner_angle,
                sign,
            } => {
                let e = cis(inner_angle) * sign.value();
                let d = 1.0 + a_param * e * z;
                cis(prefactor_angle) * e * (1.0 - a_param * a_param) / (d * d)
            }
        }
    }

    pub fn value_at_origin(&self) -> Complex {
        self.evaluate(Complex::new(0.0, 0.0))
    }

    /// Taylor series of `ω` up to `order`.
    pub fn to_series(&self, order: usize) -> Series {
        match *self {
            DilatationSpec::Zero => Series::zero(order),
            DilatationSpec::Monomial { theta, n } => {
                Series::monomial(cis(theta), n as usize, order)
            }
            DilatationSpec::Moebius {
                prefactor_angle,
                a_param,
                inner_angle,
                sign,
            } => {
                let e = cis(inner_angle) * sign.value();
                let num = Series::polynomial(&[Complex::new(a_param, 0.0), e], order);
                let den = Series::polynomial(&[Complex::new(1.0, 0.0), e * a_param], order);
                // den(0) = 1, so division cannot fail
                num.divide(&den)
                    .expect("Möbius denominator is 1 at the origin")
                    .scale(cis(prefactor_angle))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canonical::{right_halfplane_f0, slanted_halfplane_canonical, SlantParams};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> Complex {
        Complex::new(re, im)
    }

    fn random_class_h(rng: &mut ChaCha8Rng, order: usize) -> HarmonicMap {
        let mut h = vec![c(0., 0.), c(1., 0.)];
        let mut g = vec![c(0., 0.), c(rng.gen_range(-0.3..0.3), rng.gen_range(-0.3..0.3))];
        for k in 2..=order {
            let damp = 0.4f64.powi(k as i32);
            h.push(c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)) * damp);
            g.push(c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)) * damp);
        }
        HarmonicMap::new(Series::new(h).unwrap(), Series::new(g).unwrap(), ClassTag::H).unwrap()
    }

    #[test]
    fn evaluate_map_examples() {
        let f0 = right_halfplane_f0(200);
        assert_eq!(f0.evaluate(c(0., 0.)).unwrap(), c(0., 0.));
        assert!((f0.evaluate(c(0.5, 0.)).unwrap() - c(1.0, 0.)).norm() < 1e-12);
        // d/dx Re f(x) at 0 = Re(h'(0)) + Re(g'(0)) = Re(1 + g'(0))
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let f = random_class_h(&mut rng, 20);
        let eps = 1e-6;
        let d = (f.evaluate(c(eps, 0.)).unwrap().re - f.evaluate(c(-eps, 0.)).unwrap().re)
            / (2.0 * eps);
        assert!((d - (1.0 + f.g().coeff(1).re)).abs() < 1e-8);
    }

    #[test]
    fn dilatation_examples() {
        let w = right_halfplane_f0(64).dilatation().unwrap();
        assert!(w.max_abs_diff(&Series::monomial(c(-1., 0.), 1, 63)) < 1e-12);

        let analytic = HarmonicMap::analytic(Series::polynomial(&[c(0., 0.), c(1., 0.), c(0.2, 0.)], 8)).unwrap();
        assert!(analytic.dilatation().unwrap().is_zero(0.0));

        let p = SlantParams::new(c(0.3, -0.4), 1.1).unwrap();
        let f = slanted_halfplane_canonical(&p, 256);
        let w = f.dilatation().unwrap();
        let t = p.gamma + p.gamma_a;
        let ap = p.a_prime;
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..50 {
            let z = Complex::from_polar(rng.gen_range(0.0..0.8), rng.gen_range(0.0..6.3));
            let expected = -cis(2.0 * t) * (cis(t) * z - ap) / (1.0 - ap * cis(t) * z);
            assert!((w.evaluate(z).unwrap() - expected).norm() < 1e-9);
        }
    }

    #[test]
    fn jacobian_examples() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let f = random_class_h(&mut rng, 12);
        let j = f.jacobian_at(c(0., 0.)).unwrap();
        assert!((j - (1.0 - f.g().coeff(1).norm_sqr())).abs() < 1e-14);

        // J_{f₀} = (1 − |z|²)/|1 − z|⁶ = 0.75/0.5⁶ = 48 at z = 1/2
        let j = right_halfplane_f0(300).jacobian_at(c(0.5, 0.)).unwrap();
        assert!((j - 48.0).abs() < 1e-9);

        let analytic = HarmonicMap::analytic(Series::polynomial(&[c(0., 0.), c(1., 0.), c(0.3, 0.)], 4)).unwrap();
        assert!(analytic.jacobian_at(c(0.2, 0.1)).unwrap() > 0.0);
        assert!(analytic.jacobian_at(c(1.0, 0.0)).is_err());
    }

    #[test]
    fn rotate_examples() {
        let f0 = right_halfplane_f0(40);
        assert_eq!(f0.rotate(c(1., 0.)).unwrap(), f0);
        let w = f0.rotate(c(0., 1.)).unwrap().dilatation().unwrap();
        assert!(w.max_abs_diff(&Series::monomial(c(0., 1.), 1, 39)) < 1e-12);
        let mu = cis(2.3);
        let back = f0.rotate(mu).unwrap().rotate(mu.conj()).unwrap();
        assert!(back.h().max_abs_diff(f0.h()) < 1e-12);
        assert!(back.g().max_abs_diff(f0.g()) < 1e-12);
        assert_eq!(f0.rotate(mu).unwrap().class_tag(), ClassTag::H);
        assert!(f0.rotate(c(0.5, 0.)).is_err());
    }

    #[test]
    fn convolve_examples() {
        let f0 = right_halfplane_f0(30);
        let ones = {
            let mut s = Series::geometric(30);
            s = Series::linear_combine(c(1., 0.), &s, c(-1., 0.), &Series::constant(c(1., 0.), 30));
            s
        };
        let l = HarmonicMap::new(ones.clone(), ones, ClassTag::Unconstrained).unwrap();
        let fl = f0.convolve(&l);
        assert_eq!(fl.h(), f0.h());
        assert_eq!(fl.g(), f0.g());
        assert_eq!(fl.class_tag(), ClassTag::Unconstrained);

        let ff = f0.convolve(&f0);
        for k in 1..=30 {
            let kf = k as f64;
            assert!((ff.h().coeff(k) - c(((kf + 1.) / 2.).powi(2), 0.)).norm() < 1e-12);
            assert!((ff.g().coeff(k) - c(((1. - kf) / 2.).powi(2), 0.)).norm() < 1e-12);
        }
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let f = random_class_h(&mut rng, 30);
        assert_eq!(f.convolve(&f0), f0.convolve(&f));
    }

    #[test]
    fn convolution_dilatation_examples() {
        // a = 0, f = f₀ gives z(1 + 2z)/(2 + z)
        let f0 = right_halfplane_f0(200);
        let w = convolution_dilatation_f_a0(0.0, &f0).unwrap();
        for k in 0..8 {
            let z = Complex::from_polar(0.6, k as f64 * 0.8);
            let expected = z * (1.0 + 2.0 * z) / (2.0 + z);
            assert!((w.evaluate(z).unwrap() - expected).norm() < 1e-10);
        }
        // closed form is unimodular on the circle: |1 + 2e^{it}| = |2 + e^{it}|
        for k in 0..16 {
            let z = cis(k as f64 * 0.4);
            let v = z * (1.0 + 2.0 * z) / (2.0 + z);
            assert!((v.norm() - 1.0).abs() < 1e-14);
        }

        let analytic = HarmonicMap::analytic(Series::polynomial(&[c(0., 0.), c(1., 0.), c(0.25, 0.)], 16)).unwrap();
        assert!(convolution_dilatation_f_a0(0.4, &analytic).unwrap().is_zero(0.0));
        assert!(convolution_dilatation_f_a0(1.0, &analytic).is_err());
    }

    #[test]
    fn dilatation_spec_series_matches_closed_form() {
        let specs = [
            DilatationSpec::monomial(0.7, 3).unwrap(),
            DilatationSpec::moebius(1.2, -0.6, 2.5, Sign::Minus).unwrap(),
            DilatationSpec::moebius(4.0, 0.3, 0.1, Sign::Plus).unwrap(),
        ];
        for spec in &specs {
            let s = spec.to_series(400);
            let ds = s.differentiate();
            for k in 0..10 {
                let z = Complex::from_polar(0.85, 0.61 * k as f64);
                assert!((s.evaluate(z).unwrap() - spec.evaluate(z)).norm() < 1e-12);
                assert!((ds.evaluate(z).unwrap() - spec.derivative(z)).norm() < 1e-10);
            }
        }
        assert!(DilatationSpec::moebius(0.0, 1.0, 0.0, Sign::Plus).is_err());
        assert!(DilatationSpec::monomial(0.0, 0).is_err());
    }

    #[test]
    fn class_checks() {
        let h = Series::polynomial(&[c(0., 0.), c(2., 0.)], 3);
        let g = Series::zero(3);
        assert!(HarmonicMap::new(h.clone(), g.clone(), ClassTag::H).is_err());
        assert_eq!(
            HarmonicMap::with_inferred_class(h, g).unwrap().class_tag(),
            ClassTag::Unconstrained
        );
        assert!(matches!(
            HarmonicMap::new(Series::zero(3), Series::zero(4), ClassTag::Unconstrained),
            Err(Error::OrderMismatch(3, 4))
        ));
    }
}
