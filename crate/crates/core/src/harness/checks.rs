//! Ad-hoc checks requested on the command line.

use super::result::{Relation, Role, ScenarioResult};
use super::HarnessError;
use crate::geometry::{
    direction_certificate, halfplane_membership, local_univalence, strip_membership, DiskGrid,
    SearchOptions,
};
use crate::harmonic::HarmonicMap;
use crate::Complex;
use std::str::FromStr;

/// One requested check.
///
/// Textual forms: `univalence`, `convex_direction:<α>`,
/// `membership:halfplane:<a_re>,<a_im>,<γ>`,
/// `membership:strip:<b_re>,<b_im>,<β>`.
#[derive(Clone, Debug, PartialEq)]
pub enum CheckRequest {
    Univalence,
    ConvexDirection(f64),
    HalfplaneMembership { a: Complex, gamma: f64 },
    StripMembership { b: Complex, beta: f64 },
}

fn numbers(s: &str, count: usize, whole: &str) -> Result<Vec<f64>, HarnessError> {
    let v: Vec<f64> = s
        .split(',')
        .map(|t| t.trim().parse::<f64>())
        .collect::<Result<_, _>>()
        .map_err(|_| HarnessError::BadCheck(whole.to_string()))?;
    if v.len() != count || v.iter().any(|x| !x.is_finite()) {
        return Err(HarnessError::BadCheck(whole.to_string()));
    }
    Ok(v)
}

impl FromStr for CheckRequest {
    type Err = HarnessError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s == "univalence" {
            return Ok(CheckRequest::Univalence);
        }
        if let Some(rest) = s.strip_prefix("convex_direction:") {
            let v = numbers(rest, 1, s)?;
            return Ok(CheckRequest::ConvexDirection(v[0]));
        }
        if let Some(rest) = s.strip_prefix("membership:halfplane:") {
            let v = numbers(rest, 3, s)?;
            return Ok(CheckRequest::HalfplaneMembership {
                a: Complex::new(v[0], v[1]),
                gamma: v[2],
            });
        }
        if let Some(rest) = s.strip_prefix("membership:strip:") {
            let v = numbers(rest, 3, s)?;
            return Ok(CheckRequest::StripMembership {
                b: Complex::new(v[0], v[1]),
                beta: v[2],
            });
        }
        Err(HarnessError::BadCheck(s.to_string()))
    }
}

/// Runs the checks on one map. Convexity checks require local univalence
/// on the same grid, recorded once as a precondition.
pub fn run_checks(
    f: &HarmonicMap,
    checks: &[CheckRequest],
    grid: &DiskGrid,
    opts: &SearchOptions,
    inputs: serde_json::Value,
) -> Result<ScenarioResult, HarnessError> {
    let started = std::time::Instant::now();
    let mut res = ScenarioResult::new("check", inputs);
    let wants_convexity = checks
        .iter()
        .any(|c| matches!(c, CheckRequest::ConvexDirection(_)));
    let explicit_univalence = checks.contains(&CheckRequest::Univalence);
    let mut univalent = true;
    if wants_convexity || explicit_univalence {
        let role = if explicit_univalence {
            Role::Conclusion
        } else {
            Role::Precondition
        };
        univalent = res.add_univalence("map", role, local_univalence(f, grid));
    }
    for check in checks {
        match *check {
            CheckRequest::Univalence => {}
            CheckRequest::ConvexDirection(alpha) => {
                if !univalent {
                    res.notes.push(format!(
                        "convex_direction:{alpha} not attempted: map is not locally univalent on the grid"
                    ));
                    continue;
                }
                let cert = direction_certificate(f, alpha, grid, opts)?;
                res.add_certificate(format!("convex_direction:{alpha}"), Role::Conclusion, alpha, cert);
            }
            CheckRequest::HalfplaneMembership { a, gamma } => {
                let m = halfplane_membership(f, a, gamma, grid)?;
                res.add_scalar(
                    format!("halfplane margin (a = {a}, γ = {gamma})"),
                    Role::Conclusion,
                    m,
                    Relation::Gt,
                    0.0,
                );
            }
            CheckRequest::StripMembership { b, beta } => {
                let (lo, hi) = strip_membership(f, b, beta, grid)?;
                res.add_scalar(
                    format!("strip lower margin (b = {b}, β = {beta})"),
                    Role::Conclusion,
                    lo,
                    Relation::Gt,
                    0.0,
                );
                res.add_scalar(
                    format!("strip upper margin (b = {b}, β = {beta})"),
                    Role::Conclusion,
                    hi,
                    Relation::Gt,
                    0.0,
                );
            }
        }
    }
    res.finalize(started);
    Ok(res)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_checks() {
        assert_eq!("univalence".parse::<CheckRequest>().unwrap(), CheckRequest::Univalence);
        assert_eq!(
            "convex_direction:0.5".parse::<CheckRequest>().unwrap(),
            CheckRequest::ConvexDirection(0.5)
        );
        assert_eq!(
            "membership:halfplane:0.1,-0.2,1".parse::<CheckRequest>().unwrap(),
            CheckRequest::HalfplaneMembership {
                a: Complex::new(0.1, -0.2),
                gamma: 1.0
            }
        );
        assert!("membership:strip:0.1".parse::<CheckRequest>().is_err());
        assert!("convex".parse::<CheckRequest>().is_err());
    }
}
