//! JSON map specifications.
//!
//! A [`MapSpec`] names a constructor and its parameters; operands of
//! convolutions, rotations and combinations are nested specs. Nested specs
//! without an `order` inherit the order of their parent.

use super::HarnessError;
use crate::canonical::{
    convex_combination, f_lambda_delta_member, halfplane_member, right_halfplane_f0,
    slanted_halfplane_canonical, strip_member, FLambdaDeltaParams, SlantParams, StripParams,
};
use crate::harmonic::{ClassTag, DilatationSpec, HarmonicMap};
use crate::json::ComplexJson;
use crate::series::Series;
use crate::{cis, Complex};
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum MapSpec {
    SlantedHalfplaneCanonical {
        a: ComplexJson,
        gamma: f64,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        order: Option<usize>,
    },
    HalfplaneMember {
        a: ComplexJson,
        gamma: f64,
        dilatation: DilatationSpec,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        order: Option<usize>,
    },
    StripMember {
        b: ComplexJson,
        beta: f64,
        dilatation: DilatationSpec,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        order: Option<usize>,
    },
    /// `lambda` and `delta` are the arguments of the unimodular parameters.
    FLambdaDelta {
        a: ComplexJson,
        lambda: f64,
        delta: f64,
        dilatation: DilatationSpec,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        order: Option<usize>,
    },
    RightHalfplaneF0 {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        order: Option<usize>,
    },
    /// `h = z`, `g = 0`.
    Identity {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        order: Option<usize>,
    },
    Convolution {
        left: Box<MapSpec>,
        right: Box<MapSpec>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        order: Option<usize>,
    },
    /// `f^μ` with `μ = e^{iθ}`.
    Rotation {
        map: Box<MapSpec>,
        theta: f64,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        order: Option<usize>,
    },
    ConvexCombination {
        maps: Vec<MapSpec>,
        weights: Vec<f64>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        order: Option<usize>,
    },
    /// Explicit coefficient lists; this is also what `construct` emits.
    Coefficients {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        order: Option<usize>,
        #[serde(default = "default_tag")]
        class_tag: ClassTag,
        h: Vec<ComplexJson>,
        g: Vec<ComplexJson>,
    },
}

fn default_tag() -> ClassTag {
    ClassTag::Unconstrained
}

fn schema(path: &str, msg: impl std::fmt::Display) -> HarnessError {
    let field = if path.is_empty() { "<root>" } else { path };
    HarnessError::Schema(format!("{field}: {msg}"))
}

fn join(path: &str, field: &str) -> String {
    if path.is_empty() {
        field.to_string()
    } else {
        format!("{path}.{field}")
    }
}

fn check_angle(path: &str, field: &str, x: f64) -> Result<(), HarnessError> {
    if x.is_finite() {
        Ok(())
    } else {
        Err(schema(&join(path, field), "angle must be finite"))
    }
}

fn check_disk(path: &str, field: &str, z: ComplexJson) -> Result<(), HarnessError> {
    let z = Complex::from(z);
    if !(z.re.is_finite() && z.im.is_finite()) {
        return Err(schema(&join(path, field), "must be finite"));
    }
    if z.norm() >= 1.0 {
        return Err(schema(
            &join(path, field),
            format!("modulus {} is not below 1", z.norm()),
        ));
    }
    Ok(())
}

fn check_dilatation(path: &str, w: &DilatationSpec) -> Result<(), HarnessError> {
    w.validate()
        .map_err(|e| schema(&join(path, "dilatation"), e))
}

impl MapSpec {
    pub fn from_json(text: &str) -> Result<MapSpec, HarnessError> {
        let spec: MapSpec =
            serde_json::from_str(text).map_err(|e| HarnessError::Schema(e.to_string()))?;
        spec.validate()?;
        Ok(spec)
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("map specs always serialize")
    }

    /// Coefficient spec of an already constructed map.
    pub fn from_map(f: &HarmonicMap) -> MapSpec {
        MapSpec::Coefficients {
            order: Some(f.order()),
            class_tag: f.class_tag(),
            h: f.h().coeffs().iter().map(|&z| z.into()).collect(),
            g: f.g().coeffs().iter().map(|&z| z.into()).collect(),
        }
    }

    pub fn order(&self) -> Option<usize> {
        match self {
            MapSpec::SlantedHalfplaneCanonical { order, .. }
            | MapSpec::HalfplaneMember { order, .. }
            | MapSpec::StripMember { order, .. }
            | MapSpec::FLambdaDelta { order, .. }
            | MapSpec::RightHalfplaneF0 { order }
            | MapSpec::Identity { order }
            | MapSpec::Convolution { order, .. }
            | MapSpec::Rotation { order, .. }
            | MapSpec::ConvexCombination { order, .. }
            | MapSpec::Coefficients { order, .. } => *order,
        }
    }

    /// Structural checks run before any construction.
    pub fn validate(&self) -> Result<(), HarnessError> {
        self.validate_at("")
    }

    fn validate_at(&self, path: &str) -> Result<(), HarnessError> {
        if self.order() == Some(0) {
            return Err(schema(&join(path, "order"), "must be positive"));
        }
        match self {
            MapSpec::SlantedHalfplaneCanonical { a, gamma, .. } => {
                check_disk(path, "a", *a)?;
                check_angle(path, "gamma", *gamma)
            }
            MapSpec::HalfplaneMember {
                a,
                gamma,
                dilatation,
                ..
            } => {
                check_disk(path, "a", *a)?;
                check_angle(path, "gamma", *gamma)?;
                check_dilatation(path, dilatation)
            }
            MapSpec::StripMember {
                b,
                beta,
                dilatation,
                ..
            } => {
                check_disk(path, "b", *b)?;
                if !(*beta > 0.0 && *beta < PI) {
                    return Err(schema(&join(path, "beta"), format!("{beta} not in (0, π)")));
                }
                check_dilatation(path, dilatation)
            }
            MapSpec::FLambdaDelta {
                a,
                lambda,
                delta,
                dilatation,
                ..
            } => {
                check_disk(path, "a", *a)?;
                check_angle(path, "lambda", *lambda)?;
                check_angle(path, "delta", *delta)?;
                check_dilatation(path, dilatation)
            }
            MapSpec::RightHalfplaneF0 { .. } | MapSpec::Identity { .. } => Ok(()),
            MapSpec::Convolution { left, right, .. } => {
                left.validate_at(&join(path, "left"))?;
                right.validate_at(&join(path, "right"))
            }
            MapSpec::Rotation { map, theta, .. } => {
                check_angle(path, "theta", *theta)?;
                map.validate_at(&join(path, "map"))
            }
            MapSpec::ConvexCombination { maps, weights, .. } => {
                if maps.is_empty() {
                    return Err(schema(&join(path, "maps"), "at least one map required"));
                }
                if maps.len() != weights.len() {
                    return Err(schema(
                        &join(path, "weights"),
                        format!("{} weights for {} maps", weights.len(), maps.len()),
                    ));
                }
                for (i, m) in maps.iter().enumerate() {
                    m.validate_at(&format!("{}[{i}]", join(path, "maps")))?;
                }
                Ok(())
            }
            MapSpec::Coefficients { h, g, .. } => {
                if h.is_empty() || h.len() != g.len() {
                    return Err(schema(
                        &join(path, "g"),
                        format!("h has {} coefficients and g has {}", h.len(), g.len()),
                    ));
                }
                if h.iter().chain(g).any(|z| !(z.re.is_finite() && z.im.is_finite())) {
                    return Err(schema(&join(path, "h"), "coefficients must be finite"));
                }
                Ok(())
            }
        }
    }

    /// Builds the map; `default_order` applies where no order is given.
    pub fn build(&self, default_order: usize) -> Result<HarmonicMap, HarnessError> {
        self.validate()?;
        self.build_at("", default_order)
    }

    fn build_at(&self, path: &str, inherited: usize) -> Result<HarmonicMap, HarnessError> {
        let n = self.order().unwrap_or(inherited);
        let ctx = |e: crate::Error| HarnessError::Construct {
            context: if path.is_empty() {
                "<root>".into()
            } else {
                path.to_string()
            },
            source: e,
        };
        match self {
            MapSpec::SlantedHalfplaneCanonical { a, gamma, .. } => {
                let p = SlantParams::new((*a).into(), *gamma).map_err(ctx)?;
                Ok(slanted_halfplane_canonical(&p, n))
            }
            MapSpec::HalfplaneMember {
                a,
                gamma,
                dilatation,
                ..
            } => {
                let p = SlantParams::new((*a).into(), *gamma).map_err(ctx)?;
                halfplane_member(&p, dilatation, n).map_err(ctx)
            }
            MapSpec::StripMember {
                b,
                beta,
                dilatation,
                ..
            } => {
                let p = StripParams::new((*b).into(), *beta).map_err(ctx)?;
                strip_member(&p, dilatation, n).map_err(ctx)
            }
            MapSpec::FLambdaDelta {
                a,
                lambda,
                delta,
                dilatation,
                ..
            } => {
                let p = FLambdaDeltaParams::from_angles((*a).into(), *lambda, *delta).map_err(ctx)?;
                f_lambda_delta_member(&p, dilatation, n).map_err(ctx)
            }
            MapSpec::RightHalfplaneF0 { .. } => Ok(right_halfplane_f0(n)),
            MapSpec::Identity { .. } => {
                HarmonicMap::analytic(Series::monomial(Complex::new(1.0, 0.0), 1, n)).map_err(ctx)
            }
            MapSpec::Convolution { left, right, .. } => {
                let l = left.build_at(&join(path, "left"), n)?;
                let r = right.build_at(&join(path, "right"), n)?;
                Ok(l.convolve(&r))
            }
            MapSpec::Rotation { map, theta, .. } => map
                .build_at(&join(path, "map"), n)?
                .rotate(cis(*theta))
                .map_err(ctx),
            MapSpec::ConvexCombination { maps, weights, .. } => {
                let built = maps
                    .iter()
                    .enumerate()
                    .map(|(i, m)| m.build_at(&format!("{}[{i}]", join(path, "maps")), n))
                    .collect::<Result<Vec<_>, _>>()?;
                let m = built.iter().map(|f| f.order()).min().unwrap_or(n);
                let built: Vec<HarmonicMap> = built.iter().map(|f| f.truncate(m)).collect();
                convex_combination(&built, weights).map_err(ctx)
            }
            MapSpec::Coefficients {
                order,
                class_tag,
                h,
                g,
            } => {
                let h = Series::new(h.iter().map(|&z| z.into()).collect()).map_err(ctx)?;
                let g = Series::new(g.iter().map(|&z| z.into()).collect()).map_err(ctx)?;
                let f = HarmonicMap::new(h, g, *class_tag).map_err(ctx)?;
                Ok(match order {
                    Some(k) if *k < f.order() => f.truncate(*k),
                    _ => f,
                })
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn f0_spec_builds() {
        let spec = MapSpec::from_json(r#"{"type": "right_halfplane_f0", "order": 4}"#).unwrap();
        let f = spec.build(128).unwrap();
        let h: Vec<f64> = f.h().coeffs().iter().map(|z| z.re).collect();
        let g: Vec<f64> = f.g().coeffs().iter().map(|z| z.re).collect();
        assert_eq!(h, vec![0.0, 1.0, 1.5, 2.0, 2.5]);
        assert_eq!(g, vec![0.0, 0.0, -0.5, -1.0, -1.5]);
    }

    #[test]
    fn bad_parameter_names_field() {
        let err = MapSpec::from_json(
            r#"{"type": "convolution",
                "left": {"type": "right_halfplane_f0"},
                "right": {"type": "slanted_halfplane_canonical", "a": {"re": 1.2, "im": 0}, "gamma": 0}}"#,
        )
        .unwrap_err();
        match err {
            HarnessError::Schema(msg) => assert!(msg.starts_with("right.a"), "{msg}"),
            other => panic!("unexpected {other:?}"),
        }
        assert!(MapSpec::from_json(r#"{"type": "nope"}"#).is_err());
    }

    #[test]
    fn nested_convolution_is_termwise() {
        let text = r#"{"type": "convolution", "order": 20,
            "left": {"type": "slanted_halfplane_canonical", "a": {"re": 0.1, "im": 0.2}, "gamma": 0.3},
            "right": {"type": "slanted_halfplane_canonical", "a": {"re": -0.4, "im": 0.0}, "gamma": 1.0}}"#;
        let f = MapSpec::from_json(text).unwrap().build(128).unwrap();
        let p1 = SlantParams::new(Complex::new(0.1, 0.2), 0.3).unwrap();
        let p2 = SlantParams::new(Complex::new(-0.4, 0.0), 1.0).unwrap();
        let f1 = slanted_halfplane_canonical(&p1, 20);
        let f2 = slanted_halfplane_canonical(&p2, 20);
        for k in 0..=20 {
            assert_eq!(f.h().coeff(k), f1.h().coeff(k) * f2.h().coeff(k));
            assert_eq!(f.g().coeff(k), f1.g().coeff(k) * f2.g().coeff(k));
        }
    }

    #[test]
    fn coefficient_spec_round_trips() {
        let p = SlantParams::new(Complex::new(0.3, -0.45), 2.1).unwrap();
        let f = slanted_halfplane_canonical(&p, 64);
        let text = MapSpec::from_map(&f).to_json_pretty();
        let back = MapSpec::from_json(&text).unwrap().build(8).unwrap();
        assert_eq!(back, f);
    }
}
