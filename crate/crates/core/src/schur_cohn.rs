//! Zero location relative to the unit circle.
//!
//! The Cohn reduction replaces `t` of degree `n` by
//! `(conj(a_n)·t − a_0·t*)/z`, where `t*(z) = zⁿ conj(t(1/conj z))`. When
//! `|a_0| < |a_n|` the step keeps the number of zeros inside the disk (up to
//! the removed factor `z`); when `|a_0| > |a_n|` it reflects them. Repeating
//! until the degree reaches zero counts the zeros inside the open disk.
//! Steps with `|a_0| ≈ |a_n|` are degenerate; they are resolved by deflating
//! roots shared by `t` and `t*` (found with [`roots_oracle`]) and reducing
//! the quotient.

use crate::{cis, Complex, Error, Result};
use serde::{Deserialize, Serialize};

/// Relative tolerance for trimming trailing coefficients.
pub const TRIM_TOL: f64 = 1e-13;
/// Relative tolerance for `|a_0|` against `|a_n|`.
pub const DEGENERACY_TOL: f64 = 1e-10;
/// Oracle roots with `||r| − 1| ≤ BOUNDARY_TOL` count as boundary zeros.
pub const BOUNDARY_TOL: f64 = 1e-7;
/// Relative tolerance when pairing a root `r` with `1/conj(r)`.
const PAIR_TOL: f64 = 1e-6;
pub const ORACLE_MAX_ITER: usize = 500;
/// Root acceptance: `|t(r)| ≤ ORACLE_RESIDUAL · Σ|a_k||r|^k`.
pub const ORACLE_RESIDUAL: f64 = 1e-9;

/// Polynomial with coefficients `a_0..a_n` in increasing degree.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Polynomial {
    #[serde(with = "crate::json::complex_vec")]
    coeffs: Vec<Complex>,
}

impl Polynomial {
    /// Builds a polynomial, trimming trailing coefficients below
    /// `TRIM_TOL · max|a_k|`. An all-zero input becomes the zero constant.
    pub fn new(coeffs: Vec<Complex>) -> Result<Self> {
        if coeffs.iter().any(|z| !(z.re.is_finite() && z.im.is_finite())) {
            return Err(Error::NonFinite("polynomial coefficients"));
        }
        let mut coeffs = coeffs;
        let scale = coeffs.iter().fold(0.0f64, |m, z| m.max(z.norm()));
        while coeffs.len() > 1 && coeffs.last().unwrap().norm() <= TRIM_TOL * scale {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            coeffs.push(Complex::new(0.0, 0.0));
        }
        Ok(Polynomial { coeffs })
    }

    pub fn from_real(coeffs: &[f64]) -> Result<Self> {
        Polynomial::new(coeffs.iter().map(|&x| Complex::new(x, 0.0)).collect())
    }

    /// Monic polynomial `Π (z − r)`.
    pub fn from_roots(roots: &[Complex]) -> Self {
        let mut c = vec![Complex::new(1.0, 0.0)];
        for &r in roots {
            let mut next = vec![Complex::new(0.0, 0.0); c.len() + 1];
            for (k, &a) in c.iter().enumerate() {
                next[k + 1] += a;
                next[k] -= r * a;
            }
            c = next;
        }
        Polynomial { coeffs: c }
    }

    pub fn coeffs(&self) -> &[Complex] {
        &self.coeffs
    }

    /// Formal degree (length of the coefficient list minus one).
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn leading(&self) -> Complex {
        *self.coeffs.last().unwrap()
    }

    pub fn constant(&self) -> Complex {
        self.coeffs[0]
    }

    pub fn max_abs_coeff(&self) -> f64 {
        self.coeffs.iter().fold(0.0, |m, z| m.max(z.norm()))
    }

    pub fn evaluate(&self, z: Complex) -> Complex {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex::new(0.0, 0.0), |acc, &a| acc * z + a)
    }

    pub fn evaluate_derivative(&self, z: Complex) -> Complex {
        let mut acc = Complex::new(0.0, 0.0);
        for (k, &a) in self.coeffs.iter().enumerate().skip(1).rev() {
            acc = acc * z + a * k as f64;
        }
        acc
    }

    /// `Σ |a_k| |z|^k`, the scale of rounding errors in [`Self::evaluate`].
    pub fn magnitude_at(&self, z: Complex) -> f64 {
        let r = z.norm();
        self.coeffs.iter().rev().fold(0.0, |acc, a| acc * r + a.norm())
    }

    pub fn scale(&self, c: Complex) -> Polynomial {
        Polynomial {
            coeffs: self.coeffs.iter().map(|&a| a * c).collect(),
        }
    }

    /// Divides by `(z − r)` with synthetic division, dropping the remainder.
    pub fn deflate(&self, r: Complex) -> Polynomial {
        let n = self.degree();
        if n == 0 {
            return self.clone();
        }
        let mut q = vec![Complex::new(0.0, 0.0); n];
        let mut acc = Complex::new(0.0, 0.0);
        for k in (1..=n).rev() {
            acc = acc * r + self.coeffs[k];
            q[k - 1] = acc;
        }
        Polynomial { coeffs: q }
    }
}

/// `t*(z) = Σ conj(a_{n−k}) z^k`, keeping the formal degree `n` even when
/// `a_0 = 0`.
pub fn reciprocal(t: &Polynomial) -> Polynomial {
    Polynomial {
        coeffs: t.coeffs.iter().rev().map(|a| a.conj()).collect(),
    }
}

/// One Cohn step.
#[derive(Clone, Debug, PartialEq)]
pub struct CohnStep {
    /// `(conj(a_n)·t − a_0·t*)/z`, of degree exactly `n − 1`.
    pub next: Polynomial,
    pub constant_modulus: f64,
    pub leading_modulus: f64,
    /// `true` when `|a_0| > |a_n|`.
    pub reflected: bool,
}

impl CohnStep {
    /// Zeros of the input inside the disk, given those of `next`.
    pub fn inside_count(&self, inside_next: usize) -> usize {
        let n = self.next.degree() + 1;
        if self.reflected {
            (n - 1).saturating_sub(inside_next)
        } else {
            1 + inside_next
        }
    }
}

/// Applies one reduction step. The input is expected to have a nonzero
/// leading coefficient and degree at least one.
pub fn cohn_step(t: &Polynomial) -> Result<CohnStep> {
    let n = t.degree();
    let an = t.leading();
    let a0 = t.constant();
    let (m0, mn) = (a0.norm(), an.norm());
    let scale = t.max_abs_coeff();
    if n == 0 || (m0 - mn).abs() <= DEGENERACY_TOL * scale {
        return Err(Error::DegenerateStep {
            constant: m0,
            leading: mn,
        });
    }
    let star = reciprocal(t);
    let full: Vec<Complex> = (0..=n)
        .map(|k| an.conj() * t.coeffs[k] - a0 * star.coeffs[k])
        .collect();
    debug_assert!(full[0].norm() <= 1e-12 * scale * scale);
    Ok(CohnStep {
        next: Polynomial {
            coeffs: full[1..].to_vec(),
        },
        constant_modulus: m0,
        leading_modulus: mn,
        reflected: m0 > mn,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TraceStep {
    pub polynomial: Polynomial,
    pub constant_modulus: f64,
    pub leading_modulus: f64,
    pub reflected: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SchurCohnReport {
    pub zeros_inside: usize,
    pub zeros_on_boundary: usize,
    pub zeros_outside: usize,
    /// Set when the count had to come from the root oracle alone.
    pub degenerate: bool,
    /// Number of roots shared with `t*` that were divided out before reducing.
    pub deflated: usize,
    pub trace: Vec<TraceStep>,
}

impl SchurCohnReport {
    pub fn degree(&self) -> usize {
        self.zeros_inside + self.zeros_on_boundary + self.zeros_outside
    }

    fn zero_degree() -> Self {
        SchurCohnReport {
            zeros_inside: 0,
            zeros_on_boundary: 0,
            zeros_outside: 0,
            degenerate: false,
            deflated: 0,
            trace: Vec::new(),
        }
    }
}

/// Runs the reduction to degree zero; `Err` carries the trace up to the
/// degenerate step.
fn reduce(t: &Polynomial) -> std::result::Result<(usize, Vec<TraceStep>), Vec<TraceStep>> {
    let mut trace = Vec::new();
    let mut steps = Vec::new();
    let mut p = t.clone();
    while p.degree() > 0 {
        let m = p.max_abs_coeff();
        p = p.scale(Complex::new(1.0 / m, 0.0));
        match cohn_step(&p) {
            Ok(step) => {
                trace.push(TraceStep {
                    polynomial: p.clone(),
                    constant_modulus: step.constant_modulus,
                    leading_modulus: step.leading_modulus,
                    reflected: step.reflected,
                });
                p = step.next.clone();
                steps.push(step);
            }
            Err(_) => {
                trace.push(TraceStep {
                    polynomial: p.clone(),
                    constant_modulus: p.constant().norm(),
                    leading_modulus: p.leading().norm(),
                    reflected: false,
                });
                return Err(trace);
            }
        }
    }
    let inside = steps.iter().rev().fold(0, |acc, s| s.inside_count(acc));
    Ok((inside, trace))
}

/// Counts zeros inside, on, and outside the unit circle.
pub fn count_zeros_in_disk(t: &Polynomial) -> SchurCohnReport {
    let t = Polynomial::new(t.coeffs.clone()).expect("coefficients already finite");
    let n = t.degree();
    if n == 0 {
        return SchurCohnReport::zero_degree();
    }
    let trace = match reduce(&t) {
        Ok((inside, trace)) => {
            return SchurCohnReport {
                zeros_inside: inside,
                zeros_on_boundary: 0,
                zeros_outside: n - inside,
                degenerate: false,
                deflated: 0,
                trace,
            }
        }
        Err(trace) => trace,
    };

    let roots = match roots_oracle(&t) {
        Ok(r) => r,
        Err(Error::NoConvergence { roots, .. }) => roots,
        Err(_) => unreachable!("oracle only fails with NoConvergence"),
    };
    let (mut inside, mut boundary, mut outside) = (0, 0, 0);
    let mut used = vec![false; roots.len()];
    let mut shared = Vec::new();
    for i in 0..roots.len() {
        if used[i] {
            continue;
        }
        let r = roots[i];
        if (r.norm() - 1.0).abs() <= BOUNDARY_TOL {
            used[i] = true;
            boundary += 1;
            shared.push(r);
            continue;
        }
        if r.norm() == 0.0 {
            continue;
        }
        let mirror = 1.0 / r.conj();
        let partner = (0..roots.len()).find(|&j| {
            j != i && !used[j] && (roots[j] - mirror).norm() <= PAIR_TOL * mirror.norm().max(1.0)
        });
        if let Some(j) = partner {
            used[i] = true;
            used[j] = true;
            inside += 1;
            outside += 1;
            shared.push(r);
            shared.push(roots[j]);
        }
    }

    let mut q = t.clone();
    for &r in &shared {
        q = q.deflate(r);
    }
    if !shared.is_empty() {
        if let Ok((q_inside, q_trace)) = reduce(&q) {
            let mut full_trace = trace;
            full_trace.extend(q_trace);
            return SchurCohnReport {
                zeros_inside: inside + q_inside,
                zeros_on_boundary: boundary,
                zeros_outside: outside + q.degree() - q_inside,
                degenerate: false,
                deflated: shared.len(),
                trace: full_trace,
            };
        }
    }

    let (i, b, o) = classify_roots(&roots, BOUNDARY_TOL);
    SchurCohnReport {
        zeros_inside: i,
        zeros_on_boundary: b,
        zeros_outside: o,
        degenerate: true,
        deflated: 0,
        trace,
    }
}

/// Splits roots into `(inside, boundary, outside)` with a boundary band of
/// half-width `tol`.
pub fn classify_roots(roots: &[Complex], tol: f64) -> (usize, usize, usize) {
    roots.iter().fold((0, 0, 0), |(i, b, o), r| {
        let m = r.norm();
        if (m - 1.0).abs() <= tol {
            (i, b + 1, o)
        } else if m < 1.0 {
            (i + 1, b, o)
        } else {
            (i, b, o + 1)
        }
    })
}

/// All roots by Aberth–Ehrlich simultaneous iteration.
///
/// Starts from perturbed points on the circle of radius `|a_0/a_n|^{1/n}`
/// and finishes each root with Newton polishing.
pub fn roots_oracle(t: &Polynomial) -> Result<Vec<Complex>> {
    let t = Polynomial::new(t.coeffs.clone())?;
    if t.degree() == 0 {
        return if t.constant().norm() == 0.0 {
            Err(Error::ConstantFunction)
        } else {
            Ok(Vec::new())
        };
    }
    let zeros_at_origin = t.coeffs.iter().take_while(|a| a.norm() == 0.0).count();
    let mut roots = vec![Complex::new(0.0, 0.0); zeros_at_origin];
    let p = Polynomial {
        coeffs: t.coeffs[zeros_at_origin..].to_vec(),
    };
    let n = p.degree();
    if n == 0 {
        return Ok(roots);
    }
    let radius = (p.constant().norm() / p.leading().norm()).powf(1.0 / n as f64);
    let mut z: Vec<Complex> = (0..n)
        .map(|k| radius * cis(std::f64::consts::TAU * k as f64 / n as f64 + 0.4 + 0.01 * k as f64))
        .collect();

    let converged = |z: &[Complex]| {
        z.iter()
            .all(|&r| p.evaluate(r).norm() <= 1e-3 * ORACLE_RESIDUAL * p.magnitude_at(r))
    };
    let mut iterations = 0;
    while iterations < ORACLE_MAX_ITER && !converged(&z) {
        iterations += 1;
        let mut max_step = 0.0f64;
        for k in 0..n {
            let v = p.evaluate(z[k]);
            if v.norm() == 0.0 {
                continue;
            }
            let ratio = v / p.evaluate_derivative(z[k]);
            let s: Complex = (0..n)
                .filter(|&j| j != k)
                .map(|j| 1.0 / (z[k] - z[j]))
                .sum();
            let w = ratio / (1.0 - ratio * s);
            if w.re.is_finite() && w.im.is_finite() {
                z[k] -= w;
                max_step = max_step.max(w.norm() / z[k].norm().max(1.0));
            }
        }
        if max_step <= 1e-16 {
            break;
        }
    }

    for r in z.iter_mut() {
        for _ in 0..3 {
            let v = p.evaluate(*r);
            let d = p.evaluate_derivative(*r);
            if d.norm() == 0.0 {
                break;
            }
            let cand = *r - v / d;
            if p.evaluate(cand).norm() < v.norm() {
                *r = cand;
            } else {
                break;
            }
        }
    }

    let worst = z
        .iter()
        .map(|&r| {
            let m = p.magnitude_at(r);
            if m == 0.0 {
                0.0
            } else {
                p.evaluate(r).norm() / m
            }
        })
        .fold(0.0f64, f64::max);
    roots.extend(z);
    if worst > ORACLE_RESIDUAL || !worst.is_finite() {
        return Err(Error::NoConvergence {
            iterations,
            residual: worst,
            roots,
        });
    }
    Ok(roots)
}

/// Which of the two extremal cases of `cos(θ − γ₂ − γ_{a₂}) = ∓1` applies.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Theorem43Case {
    /// `cos = −1`.
    MinusOne,
    /// `cos = +1`.
    PlusOne,
}

impl Theorem43Case {
    /// Angle `φ = θ − γ₂ − γ_{a₂}` realizing the case.
    pub fn phase(self) -> f64 {
        match self {
            Theorem43Case::MinusOne => std::f64::consts::PI,
            Theorem43Case::PlusOne => 0.0,
        }
    }
}

/// The cubic `t(z) = z³ + c₂z² + c₁z + c₀` whose quotient `−e^{2iφ} t/t*` is
/// the dilatation of the convolution of `f^{a₁'}_0` with a rotated
/// half-plane mapping.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Theorem43Cubic {
    pub a1_prime: f64,
    pub a2_prime: f64,
    pub case: Theorem43Case,
    #[serde(with = "crate::json::complex")]
    pub c2: Complex,
    #[serde(with = "crate::json::complex")]
    pub c1: Complex,
    #[serde(with = "crate::json::complex")]
    pub c0: Complex,
}

impl Theorem43Cubic {
    pub fn polynomial(&self) -> Polynomial {
        Polynomial {
            coeffs: vec![self.c0, self.c1, self.c2, Complex::new(1.0, 0.0)],
        }
    }

    /// `−e^{2iφ} t(z)/t*(z)`.
    pub fn dilatation_at(&self, z: Complex) -> Complex {
        let t = self.polynomial();
        -cis(2.0 * self.case.phase()) * t.evaluate(z) / reciprocal(&t).evaluate(z)
    }
}

fn check_open_interval(name: &'static str, x: f64) -> Result<()> {
    if x > -1.0 && x < 1.0 {
        Ok(())
    } else {
        Err(Error::OutOfRange {
            name,
            value: x,
            range: "(-1, 1)",
        })
    }
}

/// `(c₂, c₁, c₀)` for a general angle `φ = θ − γ₂ − γ_{a₂}`.
pub fn cubic_coefficients(a1p: f64, a2p: f64, phi: f64) -> (Complex, Complex, Complex) {
    let e = cis(-phi);
    let e2 = e * e;
    let c2 = e * ((a1p + 3.0 * a2p - a1p * a2p + 1.0) / 2.0) - a1p;
    let c1 = e2 * a2p - e * ((3.0 * a1p + a2p + a1p * a2p - 1.0) / 2.0);
    let c0 = -e2 * (a1p * a2p);
    (c2, c1, c0)
}

/// Cubic for one of the two extremal cases, using the simplified real
/// coefficient formulas.
pub fn theorem43_cubic(a1p: f64, a2p: f64, case: Theorem43Case) -> Result<Theorem43Cubic> {
    check_open_interval("a1_prime", a1p)?;
    check_open_interval("a2_prime", a2p)?;
    let p = a1p * a2p;
    let (c2, c1) = match case {
        Theorem43Case::MinusOne => (
            -(3.0 * a1p + 3.0 * a2p - p + 1.0) / 2.0,
            (3.0 * a1p + 3.0 * a2p + p - 1.0) / 2.0,
        ),
        Theorem43Case::PlusOne => (
            (-a1p + 3.0 * a2p - p + 1.0) / 2.0,
            (-3.0 * a1p + a2p - p + 1.0) / 2.0,
        ),
    };
    Ok(Theorem43Cubic {
        a1_prime: a1p,
        a2_prime: a2p,
        case,
        c2: Complex::new(c2, 0.0),
        c1: Complex::new(c1, 0.0),
        c0: Complex::new(-p, 0.0),
    })
}

/// Left side of the case inequality: `1 + 3a₁' + 3a₂' + a₁'a₂'` for
/// [`Theorem43Case::MinusOne`] and `1 + 3a₁' + 3a₁'a₂' + a₁'²a₂'` for
/// [`Theorem43Case::PlusOne`].
pub fn theorem43_condition_value(a1p: f64, a2p: f64, case: Theorem43Case) -> f64 {
    match case {
        Theorem43Case::MinusOne => 1.0 + 3.0 * a1p + 3.0 * a2p + a1p * a2p,
        Theorem43Case::PlusOne => 1.0 + 3.0 * a1p + 3.0 * a1p * a2p + a1p * a1p * a2p,
    }
}

/// Non-strict inequality for the first case, strict for the second.
pub fn theorem43_condition_check(a1p: f64, a2p: f64, case: Theorem43Case) -> bool {
    let v = theorem43_condition_value(a1p, a2p, case);
    match case {
        Theorem43Case::MinusOne => v >= 0.0,
        Theorem43Case::PlusOne => v > 0.0,
    }
}

/// Quadratic cofactor `z² − ((3a₁' + 3a₂' − a₁'a₂' − 1)/2) z + a₁'a₂'` of
/// `z − 1` in the first case.
pub fn case1_quadratic_factor(a1p: f64, a2p: f64) -> Polynomial {
    let p = a1p * a2p;
    Polynomial {
        coeffs: vec![
            Complex::new(p, 0.0),
            Complex::new(-(3.0 * a1p + 3.0 * a2p - p - 1.0) / 2.0, 0.0),
            Complex::new(1.0, 0.0),
        ],
    }
}

/// Closed forms `(b₂, b₁, b₀)` of the first reduction in the second case.
pub fn case2_b_coefficients(a1p: f64, a2p: f64) -> (f64, f64, f64) {
    let p = a1p * a2p;
    let b2 = 1.0 - p * p;
    let b1 = (1.0 - a1p) * (1.0 + 3.0 * a2p + 3.0 * p + p * a2p) / 2.0;
    let b0 = (1.0 + a2p) * (1.0 - 3.0 * a1p + 3.0 * p - a1p * p) / 2.0;
    (b2, b1, b0)
}

/// Factored form of `b₂² − b₀²` in the second case.
pub fn case2_b_difference(a1p: f64, a2p: f64) -> f64 {
    let p = a1p * a2p;
    (1.0 - a1p) * (1.0 - a2p) / 4.0
        * (3.0 + a2p + p + 3.0 * p * a2p)
        * (1.0 + 3.0 * a1p + 3.0 * p + a1p * p)
}

/// `(u, v)` with `z₀ = u/v` the root of the second reduction.
pub fn case2_z0_parts(a1p: f64, a2p: f64) -> (f64, f64) {
    let p = a1p * a2p;
    (
        -(1.0 + 3.0 * a2p + 3.0 * p + p * a2p),
        3.0 + a2p + p + 3.0 * p * a2p,
    )
}

/// `u² − v² = −8(1 − a₂'²)(1 − (a₁'a₂')²)`.
pub fn case2_uv_difference(a1p: f64, a2p: f64) -> f64 {
    let p = a1p * a2p;
    -8.0 * (1.0 - a2p * a2p) * (1.0 - p * p)
}
