//! Structure input documents (JSON).
//!
//! ```json
//! {
//!   "schema_version": 1,
//!   "components": ["C1", "C2", "C3"],
//!   "truth_table": [{"state": "000", "failed": 0}, ...],
//!   "metadata": {"name": "2oo3"}
//! }
//! ```
//!
//! Exactly one of `cutsets` (lists of labels) and `truth_table` is present.
//! In a truth-table state string, character `j` is `1` when component `j`
//! has failed. Every one of the `2^m` states must appear exactly once.

use std::collections::HashSet;

use cutplan::SystemStructure;
use serde::{Deserialize, Serialize};

use crate::error::CliError;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StructureDocument {
    pub schema_version: u32,
    pub components: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cutsets: Option<Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub truth_table: Option<Vec<TruthRow>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub metadata: Option<Metadata>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TruthRow {
    pub state: String,
    pub failed: u8,
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Metadata {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub description: Option<String>,
}

impl StructureDocument {
    pub fn from_cutsets(components: Vec<String>, cutsets: Vec<Vec<String>>) -> Self {
        Self {
            schema_version: SCHEMA_VERSION,
            components,
            cutsets: Some(cutsets),
            truth_table: None,
            metadata: None,
        }
    }

    pub fn parse(text: &str) -> Result<Self, CliError> {
        let doc: Self = serde_json::from_str(text).map_err(|e| CliError::Parse(e.to_string()))?;
        doc.validate()?;
        Ok(doc)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("document serializes")
    }

    pub fn name(&self) -> Option<&str> {
        self.metadata.as_ref().and_then(|m| m.name.as_deref())
    }

    pub fn validate(&self) -> Result<(), CliError> {
        let bad = |msg: String| Err(CliError::Document(msg));
        if self.schema_version != SCHEMA_VERSION {
            return bad(format!(
                "unsupported schema_version {} (expected {SCHEMA_VERSION})",
                self.schema_version
            ));
        }
        let known: HashSet<&str> = self.components.iter().map(String::as_str).collect();
        if known.len() != self.components.len() {
            return bad("component labels must be unique".into());
        }
        let m = self.components.len();
        match (&self.cutsets, &self.truth_table) {
            (Some(_), Some(_)) => bad("give either `cutsets` or `truth_table`, not both".into()),
            (None, None) => bad("one of `cutsets` or `truth_table` is required".into()),
            (Some(sets), None) => {
                for set in sets {
                    if let Some(label) = set.iter().find(|l| !known.contains(l.as_str())) {
                        return bad(format!("cutset mentions unknown component `{label}`"));
                    }
                }
                Ok(())
            }
            (None, Some(rows)) => {
                let mut seen = HashSet::new();
                for row in rows {
                    if row.state.len() != m || !row.state.bytes().all(|b| b == b'0' || b == b'1') {
                        return bad(format!(
                            "truth table state `{}` must be {m} characters of 0/1",
                            row.state
                        ));
                    }
                    if row.failed > 1 {
                        return bad(format!("`failed` must be 0 or 1 for state {}", row.state));
                    }
                    if !seen.insert(row.state.as_str()) {
                        return bad(format!("state {} listed twice", row.state));
                    }
                }
                Ok(())
            }
        }
    }

    pub fn to_structure(&self) -> Result<SystemStructure, CliError> {
        self.validate()?;
        if let Some(sets) = &self.cutsets {
            return Ok(SystemStructure::from_named_cutsets(&self.components, sets)?);
        }
        let rows = self.truth_table.as_ref().expect("validated");
        let m = self.components.len();
        if m > cutplan::structure::MAX_TRUTH_TABLE_COMPONENTS {
            return Err(cutplan::Error::TruthTableTooLarge {
                components: m,
                max: cutplan::structure::MAX_TRUTH_TABLE_COMPONENTS,
            }
            .into());
        }
        if rows.len() != 1 << m {
            return Err(CliError::Document(format!(
                "truth table lists {} states, all {} are required",
                rows.len(),
                1usize << m
            )));
        }
        let mut table = vec![false; 1 << m];
        for row in rows {
            let index = row
                .state
                .bytes()
                .enumerate()
                .fold(0usize, |acc, (j, b)| if b == b'1' { acc | 1 << j } else { acc });
            table[index] = row.failed == 1;
        }
        Ok(SystemStructure::from_truth_table(self.components.clone(), table)?)
    }
}
