//! Scenario results whose verdict is a pure function of the embedded reports.

use crate::geometry::{ConvexityCertificate, UnivalenceReport, CERT_TOL};
use crate::schur_cohn::SchurCohnReport;
use serde::{Deserialize, Serialize};

/// Whether a failing item invalidates the run (precondition) or refutes
/// the expected outcome (conclusion).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Role {
    Precondition,
    Conclusion,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Relation {
    Ge,
    Gt,
    Le,
    Lt,
}

impl Relation {
    pub fn holds(self, value: f64, bound: f64) -> bool {
        match self {
            Relation::Ge => value >= bound,
            Relation::Gt => value > bound,
            Relation::Le => value <= bound,
            Relation::Lt => value < bound,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    Fail { failed: Vec<String> },
    Skipped { reason: String },
}

impl Verdict {
    pub fn is_pass(&self) -> bool {
        matches!(self, Verdict::Pass)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    /// Certificates pass when `min_real_part ≥ −cert_tol`.
    pub cert_tol: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances { cert_tol: CERT_TOL }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct UnivalenceItem {
    pub label: String,
    pub role: Role,
    pub report: UnivalenceReport,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CertificateItem {
    pub label: String,
    pub role: Role,
    pub direction: f64,
    pub certificate: ConvexityCertificate,
}

/// Passes when no zero lies strictly outside the closed disk.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ZeroCountItem {
    pub label: String,
    pub role: Role,
    pub report: SchurCohnReport,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScalarItem {
    pub label: String,
    pub role: Role,
    pub value: f64,
    pub relation: Relation,
    pub bound: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScenarioResult {
    pub scenario_id: String,
    pub inputs: serde_json::Value,
    pub tolerances: Tolerances,
    pub univalence: Vec<UnivalenceItem>,
    pub certificates: Vec<CertificateItem>,
    pub zero_counts: Vec<ZeroCountItem>,
    pub scalars: Vec<ScalarItem>,
    pub verdict: Verdict,
    pub notes: Vec<String>,
    pub runtime_ms: u64,
}

impl ScenarioResult {
    pub fn new(scenario_id: impl Into<String>, inputs: serde_json::Value) -> Self {
        ScenarioResult {
            scenario_id: scenario_id.into(),
            inputs,
            tolerances: Tolerances::default(),
            univalence: Vec::new(),
            certificates: Vec::new(),
            zero_counts: Vec::new(),
            scalars: Vec::new(),
            verdict: Verdict::Pass,
            notes: Vec::new(),
            runtime_ms: 0,
        }
    }

    pub fn add_univalence(&mut self, label: impl Into<String>, role: Role, report: UnivalenceReport) -> bool {
        let ok = report.passes();
        self.univalence.push(UnivalenceItem {
            label: label.into(),
            role,
            report,
        });
        ok
    }

    pub fn add_certificate(
        &mut self,
        label: impl Into<String>,
        role: Role,
        direction: f64,
        certificate: ConvexityCertificate,
    ) {
        self.certificates.push(CertificateItem {
            label: label.into(),
            role,
            direction,
            certificate,
        });
    }

    pub fn add_zero_count(&mut self, label: impl Into<String>, role: Role, report: SchurCohnReport) {
        self.zero_counts.push(ZeroCountItem {
            label: label.into(),
            role,
            report,
        });
    }

    pub fn add_scalar(
        &mut self,
        label: impl Into<String>,
        role: Role,
        value: f64,
        relation: Relation,
        bound: f64,
    ) -> bool {
        let ok = relation.holds(value, bound);
        self.scalars.push(ScalarItem {
            label: label.into(),
            role,
            value,
            relation,
            bound,
        });
        ok
    }

    /// `(label, role, passed)` for every embedded item.
    pub fn item_outcomes(&self) -> Vec<(String, Role, bool)> {
        let mut out = Vec::new();
        for u in &self.univalence {
            out.push((u.label.clone(), u.role, u.report.passes()));
        }
        for c in &self.certificates {
            out.push((
                c.label.clone(),
                c.role,
                c.certificate.min_real_part >= -self.tolerances.cert_tol,
            ));
        }
        for z in &self.zero_counts {
            out.push((z.label.clone(), z.role, z.report.zeros_outside == 0));
        }
        for s in &self.scalars {
            out.push((s.label.clone(), s.role, s.relation.holds(s.value, s.bound)));
        }
        out
    }

    /// Recomputes the verdict from the embedded items: a failed
    /// precondition skips the run, otherwise every conclusion must hold.
    pub fn derive_verdict(&self) -> Verdict {
        let outcomes = self.item_outcomes();
        if let Some((label, _, _)) = outcomes
            .iter()
            .find(|(_, role, ok)| *role == Role::Precondition && !ok)
        {
            return Verdict::Skipped {
                reason: format!("precondition failed: {label}"),
            };
        }
        let failed: Vec<String> = outcomes
            .into_iter()
            .filter(|(_, role, ok)| *role == Role::Conclusion && !ok)
            .map(|(label, _, _)| label)
            .collect();
        if failed.is_empty() {
            Verdict::Pass
        } else {
            Verdict::Fail { failed }
        }
    }

    pub fn finalize(&mut self, started: std::time::Instant) {
        self.verdict = self.derive_verdict();
        self.runtime_ms = started.elapsed().as_millis() as u64;
    }

    /// Human-readable digest, one line per item.
    pub fn summary(&self) -> String {
        let mut s = format!("scenario {}\n", self.scenario_id);
        for u in &self.univalence {
            s += &format!(
                "  [{}] univalence {}: min J = {:.3e}, max |ω| = {:.12}\n",
                mark(u.report.passes()),
                u.label,
                u.report.min_jacobian,
                u.report.max_dilatation_modulus
            );
        }
        for c in &self.certificates {
            s += &format!(
                "  [{}] convex direction {:.6} ({}): min = {:.3e} at μ = {:.6}, ν = {:.6}\n",
                mark(c.certificate.min_real_part >= -self.tolerances.cert_tol),
                c.direction,
                c.label,
                c.certificate.min_real_part,
                c.certificate.mu,
                c.certificate.nu
            );
        }
        for z in &self.zero_counts {
            s += &format!(
                "  [{}] zeros {}: inside {}, boundary {}, outside {}{}\n",
                mark(z.report.zeros_outside == 0),
                z.label,
                z.report.zeros_inside,
                z.report.zeros_on_boundary,
                z.report.zeros_outside,
                if z.report.degenerate { " (oracle)" } else { "" }
            );
        }
        for v in &self.scalars {
            let rel = match v.relation {
                Relation::Ge => ">=",
                Relation::Gt => ">",
                Relation::Le => "<=",
                Relation::Lt => "<",
            };
            s += &format!(
                "  [{}] {}: {:.6e} {} {:.3e}\n",
                mark(v.relation.holds(v.value, v.bound)),
                v.label,
                v.value,
                rel,
                v.bound
            );
        }
        for n in &self.notes {
            s += &format!("  note: {n}\n");
        }
        let verdict = match &self.verdict {
            Verdict::Pass => "PASS".to_string(),
            Verdict::Fail { failed } => format!("FAIL ({})", failed.join(", ")),
            Verdict::Skipped { reason } => format!("SKIPPED ({reason})"),
        };
        s += &format!("  verdict: {verdict} in {} ms\n", self.runtime_ms);
        s
    }
}

fn mark(ok: bool) -> &'static str {
    if ok {
        "ok"
    } else {
        "!!"
    }
}
