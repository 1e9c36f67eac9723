//! Images of concentric circles and radial segments under a map, as SVG 1.1
//! polylines plus a CSV of the sampled points.

use crate::harmonic::HarmonicMap;
use crate::{cis, Complex};
use std::f64::consts::TAU;
use std::fmt::Write;

#[derive(Clone, Debug, PartialEq)]
pub struct RenderStyle {
    pub rings: usize,
    pub rays: usize,
    /// Points per curve.
    pub samples: usize,
    /// Radius of the outermost circle and length of the rays.
    pub r_max: f64,
}

impl Default for RenderStyle {
    fn default() -> Self {
        RenderStyle {
            rings: 12,
            rays: 24,
            samples: 256,
            r_max: 0.95,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Sample {
    pub z: Complex,
    pub w: Complex,
    pub jacobian: f64,
    pub abs_dilatation: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub enum CurveKind {
    Circle(f64),
    Ray(f64),
}

#[derive(Clone, Debug, PartialEq)]
pub struct Curve {
    pub kind: CurveKind,
    pub samples: Vec<Sample>,
}

fn sample(f: &HarmonicMap, z: Complex) -> Sample {
    let hp = f.h().horner_derivative(z);
    let gp = f.g().horner_derivative(z);
    Sample {
        z,
        w: f.h().horner(z) + f.g().horner(z).conj(),
        jacobian: hp.norm_sqr() - gp.norm_sqr(),
        abs_dilatation: gp.norm() / hp.norm(),
    }
}

/// Samples circles `|z| = r_max·j/rings` and rays `arg z = 2πk/rays`.
pub fn sample_curves(f: &HarmonicMap, style: &RenderStyle) -> Vec<Curve> {
    let mut curves = Vec::with_capacity(style.rings + style.rays);
    let m = style.samples.max(2);
    for j in 1..=style.rings {
        let r = style.r_max * j as f64 / style.rings as f64;
        let samples = (0..=m)
            .map(|k| sample(f, Complex::from_polar(r, TAU * k as f64 / m as f64)))
            .collect();
        curves.push(Curve {
            kind: CurveKind::Circle(r),
            samples,
        });
    }
    for k in 0..style.rays {
        let theta = TAU * k as f64 / style.rays as f64;
        let samples = (0..m)
            .map(|i| sample(f, style.r_max * (i as f64 / (m - 1) as f64) * cis(theta)))
            .collect();
        curves.push(Curve {
            kind: CurveKind::Ray(theta),
            samples,
        });
    }
    curves
}

pub const CSV_HEADER: &str = "re_z,im_z,re_w,im_w,jacobian,abs_dilatation";

pub fn to_csv(curves: &[Curve]) -> String {
    let mut s = String::from(CSV_HEADER);
    s.push('\n');
    for c in curves {
        for p in &c.samples {
            let _ = writeln!(
                s,
                "{},{},{},{},{},{}",
                p.z.re, p.z.im, p.w.re, p.w.im, p.jacobian, p.abs_dilatation
            );
        }
    }
    s
}

/// SVG 1.1 document with the image plane's `y` axis pointing up.
pub fn to_svg(curves: &[Curve]) -> String {
    let finite = |w: &Complex| w.re.is_finite() && w.im.is_finite();
    let (mut x0, mut x1, mut y0, mut y1) = (f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY, f64::NEG_INFINITY);
    for p in curves.iter().flat_map(|c| &c.samples).filter(|p| finite(&p.w)) {
        x0 = x0.min(p.w.re);
        x1 = x1.max(p.w.re);
        y0 = y0.min(-p.w.im);
        y1 = y1.max(-p.w.im);
    }
    if !x0.is_finite() {
        (x0, x1, y0, y1) = (-1.0, 1.0, -1.0, 1.0);
    }
    let span = (x1 - x0).max(y1 - y0).max(1e-9);
    let pad = 0.05 * span;
    let stroke = 0.002 * span;
    let mut s = String::new();
    let _ = writeln!(s, r#"<?xml version="1.0" encoding="UTF-8" standalone="no"?>"#);
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="800" height="800" viewBox="{} {} {} {}">"#,
        x0 - pad,
        y0 - pad,
        x1 - x0 + 2.0 * pad,
        y1 - y0 + 2.0 * pad
    );
    for c in curves {
        let color = match c.kind {
            CurveKind::Circle(_) => "#1f5fa8",
            CurveKind::Ray(_) => "#b8452c",
        };
        let pts: Vec<String> = c
            .samples
            .iter()
            .filter(|p| finite(&p.w))
            .map(|p| format!("{:.6},{:.6}", p.w.re, -p.w.im))
            .collect();
        let _ = writeln!(
            s,
            r#"  <polyline fill="none" stroke="{color}" stroke-width="{stroke}" points="{}"/>"#,
            pts.join(" ")
        );
    }
    s.push_str("</svg>\n");
    s
}
