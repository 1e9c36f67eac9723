//! Planar harmonic mappings `f = h + conj(g)` on the unit disk.
//!
//! The crate builds the explicit families that show up around convolution
//! theorems for harmonic convex mappings (slanted half-plane mappings, strip
//! mappings, and the wider `F^a_{λ,δ}` class), manipulates them through
//! rotations and Hadamard convolutions, and produces numerical evidence for
//! their geometric properties:
//!
//! * [`series`]: truncated complex power series, the representation of every
//!   analytic object.
//! * [`harmonic`]: the `(h, g)` data model with dilatation, Jacobian, rotation
//!   and convolution.
//! * [`canonical`]: constructors for the half-plane, strip and `F^a_{λ,δ}`
//!   families and their convex combinations.
//! * [`schur_cohn`]: zero counting inside the unit disk by Cohn reduction,
//!   with a simultaneous-iteration root finder as an independent oracle.
//! * [`geometry`]: grid certificates for local univalence, convexity in a
//!   direction (Royster–Ziegler), half-plane and strip membership.
//! * [`harness`]: JSON map specifications, the scenario registry, and
//!   SVG/CSV rendering used by the `harmconv` binary.
//!
//! ```
//! use harmconv::canonical::right_halfplane_f0;
//! use harmconv::Complex;
//!
//! let f0 = right_halfplane_f0(64);
//! let w = f0.evaluate(Complex::new(0.5, 0.0)).unwrap();
//! assert!((w - Complex::new(1.0, 0.0)).norm() < 1e-12);
//! ```

pub mod canonical;
pub mod geometry;
pub mod harmonic;
pub mod harness;
pub mod json;
pub mod schur_cohn;
pub mod series;

pub use num_complex::Complex64 as Complex;

pub use canonical::{FLambdaDeltaParams, SlantParams, StripParams};
pub use geometry::{ConvexityCertificate, DiskGrid, UnivalenceReport};
pub use harmonic::{ClassTag, DilatationSpec, HarmonicMap, Sign};
pub use schur_cohn::{Polynomial, SchurCohnReport};
pub use series::Series;

use std::f64::consts::TAU;

/// Errors raised by the numerical layers.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("series divisor vanishes at the origin (|den(0)| = {0:e})")]
    DivisorVanishesAtOrigin(f64),
    #[error("point {0} lies outside the open unit disk")]
    OutsideDisk(Complex),
    #[error("expected a unimodular number, got modulus {0}")]
    NotUnimodular(f64),
    #[error("parameter `{name}` must lie in the open unit disk (modulus {modulus})")]
    NotInDisk { name: &'static str, modulus: f64 },
    #[error("non-finite value in {0}")]
    NonFinite(&'static str),
    #[error("dilatation at the origin is {found}, expected {expected}")]
    InconsistentDilatationAtOrigin { found: Complex, expected: Complex },
    #[error("bad convex-combination weights: {0}")]
    BadWeights(String),
    #[error("normalization violated: {0}")]
    ClassViolation(String),
    #[error("series orders differ ({0} vs {1})")]
    OrderMismatch(usize, usize),
    #[error("degenerate Cohn step: |a0| = {constant}, |an| = {leading}")]
    DegenerateStep { constant: f64, leading: f64 },
    #[error("root finder did not converge after {iterations} iterations (worst scaled residual {residual:e})")]
    NoConvergence {
        iterations: usize,
        residual: f64,
        roots: Vec<Complex>,
    },
    #[error("parameter `{name}` = {value} outside {range}")]
    OutOfRange {
        name: &'static str,
        value: f64,
        range: &'static str,
    },
    #[error("function is constant on the disk")]
    ConstantFunction,
    #[error(
        "map is not locally univalent on the grid (min Jacobian {:e}, max |ω| {})",
        .0.min_jacobian,
        .0.max_dilatation_modulus
    )]
    NotLocallyUnivalent(Box<UnivalenceReport>),
    #[error("invalid grid: {0}")]
    InvalidGrid(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Reduces an angle in radians to `[0, 2π)`.
pub fn reduce_angle(theta: f64) -> f64 {
    let r = theta.rem_euclid(TAU);
    // rem_euclid can round up to exactly TAU for tiny negative inputs
    if r >= TAU {
        0.0
    } else {
        r
    }
}

/// `e^{iθ}`.
#[inline]
pub fn cis(theta: f64) -> Complex {
    Complex::from_polar(1.0, theta)
}

pub(crate) fn ensure_finite(z: Complex, what: &'static str) -> Result<()> {
    if z.re.is_finite() && z.im.is_finite() {
        Ok(())
    } else {
        Err(Error::NonFinite(what))
    }
}

pub(crate) fn ensure_unimodular(mu: Complex) -> Result<()> {
    ensure_finite(mu, "unimodular parameter")?;
    let m = mu.norm();
    if (m - 1.0).abs() > series::UNIT_MODULUS_TOL {
        return Err(Error::NotUnimodular(m));
    }
    Ok(())
}
