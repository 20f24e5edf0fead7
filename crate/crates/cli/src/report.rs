//! Plan reports: a versioned JSON document and a plain text rendering.
//!
//! Exact values are `num/den` strings next to a decimal rendering with 12
//! significant digits, so identical inputs give byte-identical output.

use std::fmt::Write as _;

use cutplan::rational::{to_decimal_string, to_fraction_string};
use cutplan::Rational;
use serde::{Deserialize, Serialize};

pub const REPORT_SCHEMA_VERSION: u32 = 1;
pub const DECIMAL_DIGITS: u32 = 12;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExactValue {
    pub exact: String,
    pub decimal: String,
}

impl From<&Rational> for ExactValue {
    fn from(value: &Rational) -> Self {
        Self {
            exact: to_fraction_string(value),
            decimal: to_decimal_string(value, DECIMAL_DIGITS),
        }
    }
}

/// `q` with 12 significant digits in scientific notation.
pub fn format_probability(q: f64) -> String {
    format!("{:.*e}", DECIMAL_DIGITS as usize - 1, q)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PlanReport {
    pub report_schema_version: u32,
    pub input: InputEcho,
    pub minimal_cutsets: Vec<Vec<String>>,
    pub pathsets: PathsetSummary,
    pub fractions: FractionSection,
    pub plan: Option<PlanSection>,
    pub plan_plus: Option<PlanSection>,
    pub bound: Option<BoundSection>,
    pub path_comparison: PathSection,
    pub strategies: Vec<StrategyRow>,
    pub evaluated_plan: Option<EvaluatedPlan>,
    pub audit: Option<AuditSection>,
    pub warnings: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InputEcho {
    pub name: Option<String>,
    pub structure_hash: String,
    pub components: Vec<String>,
    pub alpha: f64,
    pub tests: Option<u64>,
    pub solver: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PathsetSummary {
    pub count: usize,
    pub shortest_path_length: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentFraction {
    pub component: String,
    pub fraction: ExactValue,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FractionSection {
    pub components: Vec<ComponentFraction>,
    pub cutset_fraction: ExactValue,
    pub n_zero: u64,
    pub alternative_optima: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlanSection {
    pub tests: Vec<u64>,
    pub n_requested: u64,
    pub n_minus: u64,
    pub n_plus: u64,
    pub remainder: u64,
    pub remainder_distributed: bool,
    pub allocated: u64,
    pub n_min: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundSection {
    pub alpha: f64,
    pub n_min: u64,
    pub q_upper: f64,
    pub q_upper_decimal: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PathSection {
    pub path_length: usize,
    pub shortest_path: Vec<String>,
    pub cutset_fraction: ExactValue,
    pub path_fraction: ExactValue,
    pub gap: ExactValue,
    /// `floor(N / P)` when a budget was given.
    pub path_n_min: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StrategyRow {
    pub strategy: String,
    pub tests: Vec<u64>,
    pub allocated: u64,
    pub n_min: u64,
    pub q_upper: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvaluatedPlan {
    pub tests: Vec<u64>,
    pub total: u64,
    pub n_min: u64,
    pub q_upper: f64,
    pub q_upper_decimal: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AuditSection {
    pub lp_vertices: AuditCheck,
    pub integer_oracle: AuditCheck,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum AuditCheck {
    Agrees { detail: String },
    Skipped { reason: String },
}

impl PlanReport {
    pub fn to_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("report serializes");
        text.push('\n');
        text
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let names = &self.input.components;
        let title = self.input.name.as_deref().unwrap_or("system");
        let _ = writeln!(
            out,
            "{title}: {} components, {} minimal cutsets (structure {})",
            names.len(),
            self.minimal_cutsets.len(),
            &self.input.structure_hash[..12]
        );
        let _ = writeln!(out, "\nMinimal cutsets:");
        for (i, row) in self.minimal_cutsets.iter().enumerate() {
            let _ = writeln!(out, "  {:>3}  {}", i + 1, row.join(" "));
        }
        let p = &self.path_comparison;
        let _ = writeln!(
            out,
            "\nShortest success path: P = {} ({}); {} minimal pathsets",
            p.path_length,
            p.shortest_path.join(" "),
            self.pathsets.count
        );

        let width = names.iter().map(String::len).max().unwrap_or(0).max("component".len());
        let _ = writeln!(out);
        match &self.plan {
            Some(plan) => {
                let _ = writeln!(out, "{:<width$}  {:>10}  {:>14}  {:>12}", "component", "fraction", "decimal", "tests");
                for (c, n) in self.fractions.components.iter().zip(&plan.tests) {
                    let _ = writeln!(
                        out,
                        "{:<width$}  {:>10}  {:>14}  {:>12}",
                        c.component, c.fraction.exact, c.fraction.decimal, n
                    );
                }
            }
            None => {
                let _ = writeln!(out, "{:<width$}  {:>10}  {:>14}", "component", "fraction", "decimal");
                for c in &self.fractions.components {
                    let _ = writeln!(out, "{:<width$}  {:>10}  {:>14}", c.component, c.fraction.exact, c.fraction.decimal);
                }
            }
        }
        let g = &self.fractions.cutset_fraction;
        let _ = writeln!(
            out,
            "\ncutset fraction g = {} ({}), N0 = {}",
            g.exact, g.decimal, self.fractions.n_zero
        );
        if let Some(plan) = &self.plan {
            let _ = writeln!(
                out,
                "N = {}, N- = {}, N+ = {}, remainder = {} ({})",
                plan.n_requested,
                plan.n_minus,
                plan.n_plus,
                plan.remainder,
                if plan.remainder_distributed { "distributed" } else { "unallocated" }
            );
            let _ = writeln!(out, "N_min = {} (least tested minimal cutset)", plan.n_min);
        }
        if let Some(plus) = &self.plan_plus {
            let _ = writeln!(
                out,
                "N+ plan: {} -> N_min = {}",
                join_numbers(&plus.tests),
                plus.n_min
            );
        }
        if let Some(b) = &self.bound {
            let _ = writeln!(
                out,
                "upper bound on system pfd at alpha = {}: q = {}",
                b.alpha, b.q_upper_decimal
            );
        }
        let _ = writeln!(
            out,
            "\nsingle shortest path: 1/P = {} vs g = {} (gap {})",
            p.path_fraction.exact, p.cutset_fraction.exact, p.gap.exact
        );
        if let Some(n) = p.path_n_min {
            let _ = writeln!(out, "  floor(N/P) = {n}");
        }
        if !self.strategies.is_empty() {
            let _ = writeln!(out, "\nStrategies:");
            for s in &self.strategies {
                let _ = writeln!(
                    out,
                    "  {:<14} N_min = {:>10}  q = {}  [{}]",
                    s.strategy,
                    s.n_min,
                    format_probability(s.q_upper),
                    join_numbers(&s.tests)
                );
            }
        }
        if let Some(e) = &self.evaluated_plan {
            let _ = writeln!(
                out,
                "\nEvaluated plan [{}]: total {}, N_min = {}, q = {}",
                join_numbers(&e.tests),
                e.total,
                e.n_min,
                e.q_upper_decimal
            );
        }
        if let Some(a) = &self.audit {
            let _ = writeln!(out, "\nAudit:");
            for (label, check) in [("LP vertices", &a.lp_vertices), ("integer oracle", &a.integer_oracle)] {
                let line = match check {
                    AuditCheck::Agrees { detail } => format!("agrees ({detail})"),
                    AuditCheck::Skipped { reason } => format!("skipped ({reason})"),
                };
                let _ = writeln!(out, "  {label}: {line}");
            }
        }
        if !self.warnings.is_empty() {
            let _ = writeln!(out, "\nWarnings:");
            for w in &self.warnings {
                let _ = writeln!(out, "  - {w}");
            }
        }
        out
    }
}

fn join_numbers(values: &[u64]) -> String {
    values.iter().map(u64::to_string).collect::<Vec<_>>().join(", ")
}
