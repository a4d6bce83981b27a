use std::fmt;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ReportKind {
    Kernel,
    Fit,
    Theorem,
    Lemma,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    /// Every derived check holds but the printed statement does not.
    Deviation,
    Fail,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Deviation => "deviation",
            Status::Fail => "fail",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckClass {
    Derived,
    Statement,
}

/// The first coefficient at which two sides differ.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Mismatch {
    /// Power of `q`, possibly half-integral, as `p/q`.
    pub q_power: String,
    pub monomial: String,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub class: CheckClass,
    pub passed: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mismatch: Option<Mismatch>,
}

/// A printed constant next to the value the engine solves for.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstantCheck {
    pub printed: String,
    /// `None` when no assignment of the constants reconciles the statement.
    pub derived: Option<String>,
    /// Solved value once terms missing from the printed statement are restored.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub restored: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub id: String,
    pub kind: ReportKind,
    pub status: Status,
    pub q_order: usize,
    pub degree_order: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lambda: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub first_mismatch: Option<Mismatch>,
    #[serde(default)]
    pub checks: Vec<Check>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub constants: Vec<ConstantCheck>,
}

impl VerificationReport {
    pub(crate) fn from_checks(
        id: &str,
        kind: ReportKind,
        q_order: usize,
        degree_order: usize,
        checks: Vec<Check>,
    ) -> Self {
        let derived_ok = checks.iter().filter(|c| c.class == CheckClass::Derived).all(|c| c.passed);
        let statement_ok = checks.iter().filter(|c| c.class == CheckClass::Statement).all(|c| c.passed);
        let status = match (derived_ok, statement_ok) {
            (false, _) => Status::Fail,
            (true, false) => Status::Deviation,
            (true, true) => Status::Pass,
        };
        let first_mismatch = checks
            .iter()
            .filter(|c| c.class == CheckClass::Derived)
            .chain(checks.iter().filter(|c| c.class == CheckClass::Statement))
            .find_map(|c| c.mismatch.clone());
        VerificationReport {
            id: id.to_string(),
            kind,
            status,
            q_order,
            degree_order,
            lambda: None,
            first_mismatch,
            checks,
            constants: Vec::new(),
        }
    }

    /// One line per report, then one indented line per check.
    pub fn to_text(&self) -> String {
        let mut out = format!(
            "{:<6} {:<8} {:<10} q_order={} degree={}",
            self.id,
            format!("{:?}", self.kind).to_lowercase(),
            self.status,
            self.q_order,
            self.degree_order
        );
        for c in &self.checks {
            let mark = if c.passed { "ok " } else { "BAD" };
            out.push_str(&format!("\n  [{mark}] {:?}: {}", c.class, c.name));
            if let Some(m) = &c.mismatch {
                out.push_str(&format!(
                    "\n        first mismatch at q^{} {}: lhs {} vs rhs {}",
                    m.q_power, m.monomial, m.lhs, m.rhs
                ));
            }
        }
        if !self.constants.is_empty() {
            let printed: Vec<&str> = self.constants.iter().map(|c| c.printed.as_str()).collect();
            let derived: Vec<&str> = self.constants.iter().map(|c| c.derived.as_deref().unwrap_or("none")).collect();
            out.push_str(&format!("\n  constants printed [{}] derived [{}]", printed.join(", "), derived.join(", ")));
            if self.constants.iter().any(|c| c.restored.is_some()) {
                let restored: Vec<&str> =
                    self.constants.iter().map(|c| c.restored.as_deref().unwrap_or("none")).collect();
                out.push_str(&format!("\n  constants with omitted terms restored [{}]", restored.join(", ")));
            }
        }
        if let Some(l) = &self.lambda {
            for (k, v) in l.iter().enumerate() {
                out.push_str(&format!("\n  lambda{} = {v}", k + 1));
            }
        }
        out
    }
}
