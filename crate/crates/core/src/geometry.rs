//! Grid certificates on the closed disks `|z| ≤ r_max < 1`.
//!
//! Everything here is numerical evidence evaluated on a [`DiskGrid`]:
//! Jacobian and dilatation extrema, the Royster–Ziegler expression
//! `Re{e^{iμ}(1 − 2z e^{−iμ} cos ν + z² e^{−2iμ}) φ'(z)}` for convexity in a
//! direction, half-plane and strip membership margins, and the real-part
//! inequality for pairs of dilatations.
//!
//! Grid sweeps run on the rayon pool. Minima are reduced with ties broken by
//! grid index, so results do not depend on scheduling.

use crate::harmonic::{DilatationSpec, HarmonicMap};
use crate::series::{order_for_radius, tail_bound, Series};
use crate::{cis, Complex, Error, Result};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::f64::consts::{PI, TAU};

/// A certificate passes when its minimum is at least `-CERT_TOL`.
pub const CERT_TOL: f64 = 1e-9;
/// Truncation target used by [`DiskGrid::recommended_order`].
pub const TRUNCATION_TOL: f64 = 1e-10;
pub const DEFAULT_LEVELS: usize = 24;
pub const DEFAULT_ANGLES: usize = 256;
pub const DEFAULT_MAX_RADIUS: f64 = 0.995;
const DEFAULT_MIN_RADIUS: f64 = 0.05;

/// Concentric rings of equally spaced points, the first at angle 0.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DiskGrid {
    radii: Vec<f64>,
    angles_per_ring: usize,
}

impl Default for DiskGrid {
    /// 24 rings with `1 − r` geometric from 0.95 down to 0.005, 256 angles.
    fn default() -> Self {
        DiskGrid::geometric(DEFAULT_LEVELS, DEFAULT_MIN_RADIUS, DEFAULT_MAX_RADIUS, DEFAULT_ANGLES)
            .expect("default grid is valid")
    }
}

impl DiskGrid {
    pub fn new(radii: Vec<f64>, angles_per_ring: usize) -> Result<Self> {
        if radii.is_empty() {
            return Err(Error::InvalidGrid("no radii".into()));
        }
        if angles_per_ring < 8 {
            return Err(Error::InvalidGrid(format!(
                "{angles_per_ring} angles per ring, need at least 8"
            )));
        }
        if let Some(r) = radii.iter().find(|r| !(**r > 0.0 && **r < 1.0)) {
            return Err(Error::InvalidGrid(format!("radius {r} outside (0, 1)")));
        }
        if radii.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidGrid("radii must be strictly increasing".into()));
        }
        Ok(DiskGrid {
            radii,
            angles_per_ring,
        })
    }

    /// `levels` radii whose distances to the circle, `1 − r`, decrease
    /// geometrically from `1 − r_min` to `1 − r_max`.
    pub fn geometric(levels: usize, r_min: f64, r_max: f64, angles_per_ring: usize) -> Result<Self> {
        if levels == 0 {
            return Err(Error::InvalidGrid("no radii".into()));
        }
        if levels == 1 {
            return DiskGrid::new(vec![r_max], angles_per_ring);
        }
        let (d0, d1) = (1.0 - r_min, 1.0 - r_max);
        let radii = (0..levels)
            .map(|j| 1.0 - d0 * (d1 / d0).powf(j as f64 / (levels - 1) as f64))
            .collect();
        DiskGrid::new(radii, angles_per_ring)
    }

    /// `rings` equally spaced radii `r_max·j/rings`, `j = 1..=rings`.
    pub fn uniform(rings: usize, r_max: f64, angles_per_ring: usize) -> Result<Self> {
        DiskGrid::new(
            (1..=rings).map(|j| r_max * j as f64 / rings as f64).collect(),
            angles_per_ring,
        )
    }

    pub fn radii(&self) -> &[f64] {
        &self.radii
    }

    pub fn angles_per_ring(&self) -> usize {
        self.angles_per_ring
    }

    pub fn max_radius(&self) -> f64 {
        *self.radii.last().unwrap()
    }

    pub fn len(&self) -> usize {
        self.radii.len() * self.angles_per_ring
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Same rings with twice as many angles; a superset of the points.
    pub fn doubled_angles(&self) -> DiskGrid {
        DiskGrid {
            radii: self.radii.clone(),
            angles_per_ring: 2 * self.angles_per_ring,
        }
    }

    /// Copy with radii above `r_max` dropped.
    pub fn clipped(&self, r_max: f64) -> Result<DiskGrid> {
        DiskGrid::new(
            self.radii.iter().copied().filter(|&r| r <= r_max).collect(),
            self.angles_per_ring,
        )
    }

    /// Truncation order whose tail stays below [`TRUNCATION_TOL`] at the
    /// largest radius, for coefficients growing at most linearly.
    pub fn recommended_order(&self) -> usize {
        order_for_radius(self.max_radius(), TRUNCATION_TOL)
    }

    pub fn point(&self, index: usize) -> Complex {
        let ring = index / self.angles_per_ring;
        let k = index % self.angles_per_ring;
        Complex::from_polar(self.radii[ring], TAU * k as f64 / self.angles_per_ring as f64)
    }

    pub fn points(&self) -> Vec<Complex> {
        (0..self.len()).map(|i| self.point(i)).collect()
    }

    /// Evaluates `f` at every grid point in parallel, in grid order.
    pub fn sample<T: Send>(&self, f: impl Fn(Complex) -> T + Sync) -> Vec<T> {
        (0..self.len())
            .into_par_iter()
            .map(|i| f(self.point(i)))
            .collect()
    }
}

/// Index of the smallest value, ties to the lower index.
fn argmin(values: &[f64]) -> (usize, f64) {
    values
        .par_iter()
        .copied()
        .enumerate()
        .reduce(
            || (usize::MAX, f64::INFINITY),
            |a, b| {
                if b.1 < a.1 || (b.1 == a.1 && b.0 < a.0) {
                    b
                } else {
                    a
                }
            },
        )
}

fn argmax(values: &[f64]) -> (usize, f64) {
    let neg: Vec<f64> = values.iter().map(|v| -v).collect();
    let (i, v) = argmin(&neg);
    (i, -v)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct UnivalenceReport {
    pub min_jacobian: f64,
    #[serde(with = "crate::json::complex")]
    pub min_jacobian_at: Complex,
    pub max_dilatation_modulus: f64,
    #[serde(with = "crate::json::complex")]
    pub max_dilatation_at: Complex,
    /// `J > 0` and `|ω| < 1` agree at every grid point (up to rounding).
    pub consistent: bool,
    pub order: usize,
    /// `r^{N+1}/(1 − r)` at the largest radius.
    pub tail_bound: f64,
    pub grid: DiskGrid,
}

impl UnivalenceReport {
    pub fn passes(&self) -> bool {
        self.min_jacobian > 0.0 && self.max_dilatation_modulus < 1.0
    }
}

/// Extrema of `J_f` and `|ω_f|` on the grid.
pub fn local_univalence(f: &HarmonicMap, grid: &DiskGrid) -> UnivalenceReport {
    let samples = grid.sample(|z| {
        let hp = f.h().horner_derivative(z);
        let gp = f.g().horner_derivative(z);
        let jac = hp.norm_sqr() - gp.norm_sqr();
        let w = if hp.norm() == 0.0 {
            f64::INFINITY
        } else {
            gp.norm() / hp.norm()
        };
        (jac, w)
    });
    let jac: Vec<f64> = samples.iter().map(|s| s.0).collect();
    let dil: Vec<f64> = samples.iter().map(|s| s.1).collect();
    let (ij, min_jacobian) = argmin(&jac);
    let (iw, max_dil) = argmax(&dil);
    let consistent = samples
        .iter()
        .all(|&(j, w)| (j > 0.0) == (w < 1.0) || (w - 1.0).abs() <= 1e-12);
    UnivalenceReport {
        min_jacobian,
        min_jacobian_at: grid.point(ij),
        max_dilatation_modulus: max_dil,
        max_dilatation_at: grid.point(iw),
        consistent,
        order: f.order(),
        tail_bound: tail_bound(grid.max_radius(), f.order()),
        grid: grid.clone(),
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConvexityCertificate {
    pub mu: f64,
    pub nu: f64,
    pub min_real_part: f64,
    #[serde(with = "crate::json::complex")]
    pub witness: Complex,
    pub grid: DiskGrid,
}

impl ConvexityCertificate {
    pub fn passes(&self) -> bool {
        self.min_real_part >= -CERT_TOL
    }
}

/// `Re{e^{iμ}(1 − 2z e^{−iμ} cos ν + z² e^{−2iμ}) φ'(z)}`.
pub fn rz_value(phi: &Series, mu: f64, nu: f64, z: Complex) -> Result<f64> {
    let p = phi.evaluate_derivative(z)?;
    let e = cis(mu);
    Ok((e * (1.0 - 2.0 * z * e.conj() * nu.cos() + z * z * e.conj() * e.conj()) * p).re)
}

/// Per-point coefficients of the Royster–Ziegler expression, which is
/// `cos μ·A + sin μ·B − 2 cos ν·C`.
struct RzSamples {
    a: Vec<f64>,
    b: Vec<f64>,
    c: Vec<f64>,
}

impl RzSamples {
    fn new(phi: &Series, grid: &DiskGrid) -> Result<Self> {
        if phi.differentiate().is_zero(1e-14) {
            return Err(Error::ConstantFunction);
        }
        let s = grid.sample(|z| {
            let p = phi.horner_derivative(z);
            let q = z * z * p;
            (p.re + q.re, q.im - p.im, (z * p).re)
        });
        Ok(RzSamples {
            a: s.iter().map(|t| t.0).collect(),
            b: s.iter().map(|t| t.1).collect(),
            c: s.iter().map(|t| t.2).collect(),
        })
    }

    fn value(&self, i: usize, cm: f64, sm: f64, cn2: f64) -> f64 {
        cm * self.a[i] + sm * self.b[i] - cn2 * self.c[i]
    }

    fn min_full(&self, mu: f64, nu: f64) -> (usize, f64) {
        let (cm, sm, cn2) = (mu.cos(), mu.sin(), 2.0 * nu.cos());
        let v: Vec<f64> = (0..self.a.len())
            .map(|i| self.value(i, cm, sm, cn2))
            .collect();
        argmin(&v)
    }

    /// Minimum over the grid, or `None` as soon as some point falls strictly
    /// below `bound`. Points in `hot` are tried first.
    fn min_bounded(&self, mu: f64, nu: f64, bound: f64, hot: &[usize]) -> Option<(usize, f64)> {
        let (cm, sm, cn2) = (mu.cos(), mu.sin(), 2.0 * nu.cos());
        for &i in hot {
            if self.value(i, cm, sm, cn2) < bound {
                return None;
            }
        }
        let mut best = (usize::MAX, f64::INFINITY);
        for i in 0..self.a.len() {
            let v = self.value(i, cm, sm, cn2);
            if v < bound {
                return None;
            }
            if v < best.1 {
                best = (i, v);
            }
        }
        Some(best)
    }
}

/// Minimum of [`rz_value`] over the grid for a fixed `(μ, ν)`.
pub fn rz_certificate(phi: &Series, mu: f64, nu: f64, grid: &DiskGrid) -> Result<ConvexityCertificate> {
    let s = RzSamples::new(phi, grid)?;
    let (i, v) = s.min_full(mu, nu);
    Ok(ConvexityCertificate {
        mu,
        nu,
        min_real_part: v,
        witness: grid.point(i),
        grid: grid.clone(),
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SearchOptions {
    pub mu_steps: usize,
    pub nu_steps: usize,
    pub refine_rounds: usize,
    /// Extra `(μ, ν)` candidates evaluated after the coarse sweep.
    pub hints: Vec<(f64, f64)>,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            mu_steps: 360,
            nu_steps: 181,
            refine_rounds: 5,
            hints: Vec::new(),
        }
    }
}

impl SearchOptions {
    pub fn with_hints(hints: Vec<(f64, f64)>) -> Self {
        SearchOptions {
            hints,
            ..SearchOptions::default()
        }
    }
}

#[derive(Clone, Copy, Debug)]
struct Candidate {
    mu: f64,
    nu: f64,
    index: usize,
    value: f64,
}

/// Best `(μ, ν)` by grid minimum: a coarse sweep of `μ_k = 2πk/μ_steps`,
/// `ν_j = πj/(ν_steps − 1)`, then the hints, then step-halving refinement.
///
/// Ties go to the smaller `μ`, then the smaller `ν`. A pair is abandoned as
/// soon as one grid value drops below the best minimum found so far, which
/// leaves the result unchanged.
pub fn rz_search(phi: &Series, grid: &DiskGrid, opts: &SearchOptions) -> Result<ConvexityCertificate> {
    if opts.mu_steps == 0 || opts.nu_steps < 2 {
        return Err(Error::OutOfRange {
            name: "search steps",
            value: opts.mu_steps.min(opts.nu_steps) as f64,
            range: "mu_steps ≥ 1, nu_steps ≥ 2",
        });
    }
    let s = RzSamples::new(phi, grid)?;
    let mu_at = |k: usize| TAU * k as f64 / opts.mu_steps as f64;
    let nu_at = |j: usize| PI * j as f64 / (opts.nu_steps - 1) as f64;

    // a shared lower bound for pruning; any fully evaluated pair works
    let (i0, v0) = s.min_full(0.0, 0.0);
    let floor = opts
        .hints
        .iter()
        .map(|&(m, n)| s.min_full(m, n).1)
        .fold(v0, f64::max);

    let rows: Vec<Option<Candidate>> = (0..opts.mu_steps)
        .into_par_iter()
        .map(|k| {
            let mu = mu_at(k);
            let mut best: Option<Candidate> = if k == 0 {
                Some(Candidate {
                    mu: 0.0,
                    nu: 0.0,
                    index: i0,
                    value: v0,
                })
            } else {
                None
            };
            let mut hot: Vec<usize> = Vec::new();
            let start = if k == 0 { 1 } else { 0 };
            for j in start..opts.nu_steps {
                let nu = nu_at(j);
                let bound = best.map_or(floor, |b| b.value.max(floor));
                if let Some((i, v)) = s.min_bounded(mu, nu, bound, &hot) {
                    if best.is_none_or(|b| v > b.value) {
                        best = Some(Candidate {
                            mu,
                            nu,
                            index: i,
                            value: v,
                        });
                    }
                    if !hot.contains(&i) {
                        hot.push(i);
                        if hot.len() > 8 {
                            hot.remove(0);
                        }
                    }
                }
            }
            best
        })
        .collect();

    let mut best = rows
        .into_iter()
        .flatten()
        .fold(None::<Candidate>, |acc, c| match acc {
            Some(b) if c.value <= b.value => Some(b),
            _ => Some(c),
        })
        .expect("the (0, 0) pair is always evaluated");

    for &(m, n) in &opts.hints {
        let (i, v) = s.min_full(m, n);
        if v > best.value {
            best = Candidate {
                mu: m,
                nu: n,
                index: i,
                value: v,
            };
        }
    }

    let mut dmu = TAU / opts.mu_steps as f64;
    let mut dnu = PI / (opts.nu_steps - 1) as f64;
    for _ in 0..opts.refine_rounds {
        dmu /= 2.0;
        dnu /= 2.0;
        let center = best;
        for sm in [-1.0, 0.0, 1.0] {
            for sn in [-1.0, 0.0, 1.0] {
                if sm == 0.0 && sn == 0.0 {
                    continue;
                }
                let mu = (center.mu + sm * dmu).rem_euclid(TAU);
                let nu = (center.nu + sn * dnu).clamp(0.0, PI);
                if let Some((i, v)) = s.min_bounded(mu, nu, best.value, &[best.index]) {
                    if v > best.value {
                        best = Candidate {
                            mu,
                            nu,
                            index: i,
                            value: v,
                        };
                    }
                }
            }
        }
    }

    Ok(ConvexityCertificate {
        mu: best.mu,
        nu: best.nu,
        min_real_part: best.value,
        witness: grid.point(best.index),
        grid: grid.clone(),
    })
}

/// `φ = e^{−iα}(h − e^{2iα} g)`; `f` is convex in direction `α` when `φ`
/// is univalent and convex in the real direction.
pub fn shear_series(f: &HarmonicMap, alpha: f64) -> Series {
    f.shear(alpha).scale(cis(-alpha))
}

/// Searches for a Royster–Ziegler pair for the shear in direction `α`
/// without checking local univalence first.
pub fn direction_certificate(
    f: &HarmonicMap,
    alpha: f64,
    grid: &DiskGrid,
    opts: &SearchOptions,
) -> Result<ConvexityCertificate> {
    rz_search(&shear_series(f, alpha), grid, opts)
}

/// Local univalence on the grid, then [`direction_certificate`].
pub fn direction_convexity(
    f: &HarmonicMap,
    alpha: f64,
    grid: &DiskGrid,
    opts: &SearchOptions,
) -> Result<ConvexityCertificate> {
    let report = local_univalence(f, grid);
    if !report.passes() {
        return Err(Error::NotLocallyUnivalent(Box::new(report)));
    }
    direction_certificate(f, alpha, grid, opts)
}

fn map_values(f: &HarmonicMap, grid: &DiskGrid) -> Vec<Complex> {
    grid.sample(|z| f.h().horner(z) + f.g().horner(z).conj())
}

/// `min Re(e^{iγ} f(z)/(1 + a)) + 1/2` over the grid.
pub fn halfplane_membership(f: &HarmonicMap, a: Complex, gamma: f64, grid: &DiskGrid) -> Result<f64> {
    crate::canonical::aux_params(a)?;
    let s = cis(gamma) / (1.0 + a);
    let v: Vec<f64> = map_values(f, grid).iter().map(|w| (s * w).re).collect();
    Ok(argmin(&v).1 + 0.5)
}

/// Margins of `Re(f/(1 + b))` against the strip walls
/// `(β − π)/(2 sin β)` and `β/(2 sin β)`; both positive means inside.
pub fn strip_membership(f: &HarmonicMap, b: Complex, beta: f64, grid: &DiskGrid) -> Result<(f64, f64)> {
    let p = crate::canonical::StripParams::new(b, beta)?;
    let (lo, hi) = p.walls();
    let v: Vec<f64> = map_values(f, grid)
        .iter()
        .map(|w| (w / (1.0 + b)).re)
        .collect();
    let min = argmin(&v).1;
    let max = argmax(&v).1;
    Ok((min - lo, hi - max))
}

/// `Re{(1 − ω₁ conj(ω₂)) / ((1 + e^{−2iθ}ω₁)(1 + e^{2iθ} conj(ω₂)))}`.
pub fn fhm_realpart(w1: Complex, w2: Complex, theta: f64) -> f64 {
    let e = cis(2.0 * theta);
    ((1.0 - w1 * w2.conj()) / ((1.0 + e.conj() * w1) * (1.0 + e * w2.conj()))).re
}

/// Grid minimum of [`fhm_realpart`] for two dilatations.
pub fn fhm_realpart_check(
    w1: &DilatationSpec,
    w2: &DilatationSpec,
    theta: f64,
    grid: &DiskGrid,
) -> f64 {
    let v = grid.sample(|z| fhm_realpart(w1.evaluate(z), w2.evaluate(z), theta));
    argmin(&v).1
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canonical::{
        right_halfplane_f0, slanted_halfplane_canonical, strip_member, SlantParams, StripParams,
    };
    use crate::harmonic::Sign;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_3, FRAC_PI_4};

    fn c(re: f64, im: f64) -> Complex {
        Complex::new(re, im)
    }

    fn small_grid() -> DiskGrid {
        DiskGrid::geometric(12, 0.05, 0.95, 64).unwrap()
    }

    fn coarse() -> SearchOptions {
        SearchOptions {
            mu_steps: 72,
            nu_steps: 37,
            refine_rounds: 5,
            hints: vec![],
        }
    }

    #[test]
    fn default_grid_shape() {
        let g = DiskGrid::default();
        assert_eq!(g.radii().len(), 24);
        assert_eq!(g.angles_per_ring(), 256);
        assert!((g.max_radius() - 0.995).abs() < 1e-15);
        assert!((g.radii()[0] - 0.05).abs() < 1e-15);
        assert!(DiskGrid::new(vec![0.5, 1.0], 16).is_err());
        assert!(DiskGrid::new(vec![0.5], 4).is_err());
        assert!(DiskGrid::new(vec![0.5, 0.4], 16).is_err());
        let d = g.doubled_angles();
        for i in 0..g.angles_per_ring() {
            assert_eq!(g.point(i), d.point(2 * i));
        }
    }

    #[test]
    fn univalence_examples() {
        let grid = small_grid();
        let f0 = right_halfplane_f0(grid.recommended_order());
        let r = local_univalence(&f0, &grid);
        assert!(r.passes() && r.consistent);
        assert!((r.max_dilatation_modulus - grid.max_radius()).abs() < 1e-9);

        let conformal = HarmonicMap::analytic(f0.h().clone()).unwrap();
        assert_eq!(local_univalence(&conformal, &grid).max_dilatation_modulus, 0.0);

        let ff = f0.convolve(&f0);
        let r = local_univalence(&ff, &grid);
        assert!(r.passes());
        let z = r.max_dilatation_at;
        let closed = (z * (1.0 + 2.0 * z) / (2.0 + z)).norm();
        assert!((r.max_dilatation_modulus - closed).abs() < 1e-8);
    }

    #[test]
    fn rz_value_examples() {
        let id = Series::monomial(c(1., 0.), 1, 8);
        let r = 0.6;
        let v = rz_value(&id, 0.0, FRAC_PI_2, c(0., r)).unwrap();
        assert!((v - (1.0 - r * r)).abs() < 1e-15);

        let geo = Series::from_fn(400, |k| if k == 0 { c(0., 0.) } else { c(1., 0.) });
        for z in [c(0.3, 0.2), c(-0.5, 0.1), c(0.0, -0.7)] {
            assert!((rz_value(&geo, 0.0, 0.0, z).unwrap() - 1.0).abs() < 1e-10);
            let direct = ((1.0 - z) * (1.0 - z) * geo.evaluate_derivative(z).unwrap()).re;
            assert!((rz_value(&geo, 0.0, 0.0, z).unwrap() - direct).abs() < 1e-12);
        }
        let koebe = Series::from_fn(400, |k| c(k as f64, 0.));
        let z = c(0.2, 0.5);
        let expected = ((1.0 + z) / (1.0 - z)).re;
        assert!((rz_value(&koebe, 0.0, 0.0, z).unwrap() - expected).abs() < 1e-10);
        assert!(matches!(rz_value(&koebe, 0.0, 0.0, c(1.0, 0.0)), Err(Error::OutsideDisk(_))));
    }

    #[test]
    fn rz_certificate_examples() {
        let grid = small_grid();
        let geo = Series::from_fn(grid.recommended_order(), |k| {
            if k == 0 {
                c(0., 0.)
            } else {
                c(1., 0.)
            }
        });
        let cert = rz_certificate(&geo, 0.0, 0.0, &grid).unwrap();
        assert!((cert.min_real_part - 1.0).abs() < 1e-9);
        assert!(matches!(
            rz_certificate(&Series::constant(c(2., 0.), 5), 0.0, 0.0, &grid),
            Err(Error::ConstantFunction)
        ));
    }

    #[test]
    fn rz_search_examples() {
        let grid = small_grid();
        let n = grid.recommended_order();
        let geo = Series::from_fn(n, |k| if k == 0 { c(0., 0.) } else { c(1., 0.) });
        let cert = rz_search(&geo, &grid, &coarse()).unwrap();
        assert!(cert.min_real_part >= 1.0 - 1e-9);

        let koebe = Series::from_fn(n, |k| c(k as f64, 0.));
        assert!(rz_search(&koebe, &grid, &coarse()).unwrap().passes());

        let sq = Series::monomial(c(1., 0.), 2, 4);
        assert!(rz_search(&sq, &grid, &coarse()).unwrap().min_real_part < -1e-3);
    }

    #[test]
    fn rz_search_matches_unpruned_sweep() {
        let grid = DiskGrid::geometric(6, 0.1, 0.9, 16).unwrap();
        let phi = Series::from_real(&[0.0, 1.0, 0.3, -0.2, 0.05]).unwrap();
        let opts = SearchOptions {
            mu_steps: 24,
            nu_steps: 13,
            refine_rounds: 0,
            hints: vec![],
        };
        let cert = rz_search(&phi, &grid, &opts).unwrap();
        let mut best = (f64::NEG_INFINITY, 0.0, 0.0);
        for k in 0..24 {
            for j in 0..13 {
                let (m, n) = (TAU * k as f64 / 24.0, PI * j as f64 / 12.0);
                let v = rz_certificate(&phi, m, n, &grid).unwrap().min_real_part;
                if v > best.0 {
                    best = (v, m, n);
                }
            }
        }
        assert_eq!((cert.min_real_part, cert.mu, cert.nu), best);
    }

    #[test]
    fn arctan_vertical_strip_certificate() {
        let grid = small_grid();
        let n = grid.recommended_order();
        let atan = Series::from_fn(n, |k| {
            if k % 2 == 1 {
                let s = if (k / 2) % 2 == 0 { 1.0 } else { -1.0 };
                c(s / k as f64, 0.)
            } else {
                c(0., 0.)
            }
        });
        let cert = rz_search(&atan, &grid, &coarse()).unwrap();
        assert!(cert.passes(), "{}", cert.min_real_part);
        // (1 + z²)·φ' ≡ 1 for this shear
        let exact = rz_certificate(&atan, 0.0, FRAC_PI_2, &grid).unwrap();
        assert!((exact.min_real_part - 1.0).abs() < 1e-8);
    }

    #[test]
    fn direction_convexity_examples() {
        let grid = small_grid();
        let f0 = right_halfplane_f0(grid.recommended_order());
        for alpha in [0.0, FRAC_PI_4, FRAC_PI_2, 3.0 * FRAC_PI_4] {
            let cert = direction_convexity(&f0, alpha, &grid, &coarse()).unwrap();
            assert!(cert.passes(), "alpha {alpha}: {}", cert.min_real_part);
        }
        let bad = HarmonicMap::new(
            Series::monomial(c(1., 0.), 1, 4),
            Series::monomial(c(2., 0.), 2, 4),
            crate::harmonic::ClassTag::H,
        )
        .unwrap();
        assert!(matches!(
            direction_convexity(&bad, 0.0, &grid, &coarse()),
            Err(Error::NotLocallyUnivalent(_))
        ));
    }

    #[test]
    fn rotation_covariance_of_shear() {
        let p = SlantParams::new(c(0.2, -0.3), 0.7).unwrap();
        let f = slanted_halfplane_canonical(&p, 64);
        let sigma = 0.9;
        let alpha = 0.4;
        let rotated = f.rotate(cis(sigma)).unwrap();
        let a = shear_series(&f, alpha);
        let b = shear_series(&rotated, alpha - sigma);
        // φ_{f^σ}(z) = φ_f(e^{iσ} z) in direction α − σ
        let expected = a.compose_rotation(cis(sigma)).unwrap();
        assert!(b.max_abs_diff(&expected) < 1e-12);
    }

    #[test]
    fn membership_examples() {
        let grid = small_grid();
        let n = grid.recommended_order();
        let f0 = right_halfplane_f0(n);
        assert!(halfplane_membership(&f0, c(0., 0.), 0.0, &grid).unwrap() > 0.0);
        assert!(halfplane_membership(&f0.scale(c(-1., 0.)), c(0., 0.), 0.0, &grid).unwrap() < 0.0);

        let p = SlantParams::new(c(0., 0.999), FRAC_PI_3).unwrap();
        let f = slanted_halfplane_canonical(&p, n);
        assert!(halfplane_membership(&f, c(0., 0.999), FRAC_PI_3, &grid).unwrap() > 0.0);

        let sp = StripParams::new(c(0., 0.), FRAC_PI_2).unwrap();
        let w = DilatationSpec::monomial(0.0, 1).unwrap();
        let s = strip_member(&sp, &w, n).unwrap();
        let (lo, hi) = strip_membership(&s, c(0., 0.), FRAC_PI_2, &grid).unwrap();
        assert!(lo > 0.0 && hi > 0.0);

        let (_, hi) = strip_membership(&f0, c(0., 0.), FRAC_PI_2, &grid).unwrap();
        assert!(hi < 0.0);
    }

    #[test]
    fn fhm_examples() {
        let grid = small_grid();
        let zero = DilatationSpec::Zero;
        assert!((fhm_realpart_check(&zero, &zero, 0.7, &grid) - 1.0).abs() < 1e-15);
        let z = DilatationSpec::monomial(0.0, 1).unwrap();
        assert!(fhm_realpart_check(&z, &z, 0.0, &grid) > 0.0);
        let m = DilatationSpec::moebius(0.3, 0.6, 1.1, Sign::Minus).unwrap();
        assert!(fhm_realpart_check(&m, &z, 2.0, &grid) > 0.0);
    }
}
