//! The minimisation behind the Maker bound, its limit-regime constants, and
//! the Breaker inequality audit.

pub mod audit;
pub mod continuous;
pub mod gnb;
pub mod realize;

use serde::{Deserialize, Serialize};

pub use audit::{breaker_constant_audit, AuditMode, AuditReport, AuditRow};
pub use continuous::{continuous_case_minimum, CaseValue, ContinuousReport};
pub use gnb::{
    build_min_graph, f_value, gnb_membership, min_edges, minimize_f, Clause, GnbLabels,
    GnbStructure, Membership, Minimum, MAX_ENUM_N,
};

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum OptimizerError {
    #[error("inconsistent structure: {0}")]
    Inconsistent(String),
    #[error("n = {n} exceeds the enumeration limit {limit}")]
    Capacity { n: usize, limit: usize },
}

/// Everything the optimizer produces, for JSON or text output.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OptimizerReport {
    pub continuous: ContinuousReport,
    pub discrete: Vec<Minimum>,
    pub audit: Option<AuditReport>,
}

impl OptimizerReport {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str("limit-regime bounds\n");
        for c in &self.continuous.cases {
            out.push_str(&format!(
                "  {:<18} {:<5} {:<11} closed {:.10}  numeric {:.10}{}\n",
                c.case,
                c.regime,
                c.quantity,
                c.closed_form,
                c.numeric,
                c.note.as_deref().map(|n| format!("  ({n})")).unwrap_or_default()
            ));
        }
        out.push_str(&format!(
            "  overall minimum {:.10} (numeric {:.10})\n",
            self.continuous.overall, self.continuous.overall_numeric
        ));
        for (name, v) in &self.continuous.comparisons {
            out.push_str(&format!("  compare {name} = {v:.10}\n"));
        }
        if !self.discrete.is_empty() {
            out.push_str("exhaustive minima\n");
            for m in &self.discrete {
                let first = &m.argmins[0];
                out.push_str(&format!(
                    "  n={:<3} b={:<3} m={} ({:.4}) m/n={:.4} argmins={} e.g. s={} a={:?} r1={} r2={}\n",
                    m.n,
                    m.b,
                    m.m,
                    *m.m.numer() as f64 / *m.m.denom() as f64,
                    *m.m.numer() as f64 / *m.m.denom() as f64 / m.n as f64,
                    m.argmins.len(),
                    first.s,
                    first.a,
                    first.r1,
                    first.r2
                ));
            }
        }
        if let Some(a) = &self.audit {
            out.push_str(&audit_text(a));
        }
        out
    }
}

pub fn audit_text(a: &AuditReport) -> String {
    let mut out = format!("inequality audit at eps = {}\n", a.epsilon);
    for r in &a.rows {
        let mode = match r.mode {
            AuditMode::LeadingOrder => "leading",
            AuditMode::Finite => "finite",
        };
        out.push_str(&format!(
            "  {:<30} {:<7} {:>14.6} {:<2} {:<14.6} {}{}\n",
            r.name,
            mode,
            r.lhs,
            r.relation,
            r.rhs,
            if r.holds { "holds" } else { "FAILS" },
            r.flag.as_deref().map(|f| format!("  [{f}]")).unwrap_or_default()
        ));
    }
    out
}
