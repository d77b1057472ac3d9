//! The JSON Cayley-table interchange format:
//!
//! ```json
//! { "order": n, "names": [...], "neutral": i, "table": [[...], ...] }
//! ```
//!
//! Integers and UTF-8 names round-trip exactly.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::table::{FiniteLoop, LoopError, MagmaTable};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CayleyTableJson {
    pub order: usize,
    pub names: Vec<String>,
    pub neutral: usize,
    pub table: Vec<Vec<usize>>,
}

#[derive(Debug, Error)]
pub enum JsonError {
    #[error("invalid JSON: {0}")]
    Parse(#[from] serde_json::Error),
    #[error("order field is {declared} but the table has {actual} rows")]
    OrderMismatch { declared: usize, actual: usize },
    #[error(transparent)]
    Table(#[from] LoopError),
}

impl CayleyTableJson {
    pub fn from_loop(l: &FiniteLoop) -> Self {
        CayleyTableJson {
            order: l.order(),
            names: l.names().to_vec(),
            neutral: l.neutral(),
            table: l.magma().rows().to_vec(),
        }
    }

    pub fn to_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data serializes")
    }

    pub fn parse(text: &str) -> Result<Self, JsonError> {
        Ok(serde_json::from_str(text)?)
    }

    /// Validates entry ranges and name uniqueness, but not the loop
    /// axioms; corrupted tables stay readable so they can be reported.
    pub fn to_magma(&self) -> Result<MagmaTable, JsonError> {
        if self.order != self.table.len() {
            return Err(JsonError::OrderMismatch {
                declared: self.order,
                actual: self.table.len(),
            });
        }
        Ok(MagmaTable::new(self.table.clone(), self.names.clone())?)
    }

    /// Full validation down to a loop with the declared neutral.
    pub fn to_loop(&self) -> Result<FiniteLoop, JsonError> {
        Ok(FiniteLoop::new(self.to_magma()?, self.neutral)?)
    }
}

pub fn loop_to_json(l: &FiniteLoop) -> String {
    CayleyTableJson::from_loop(l).to_pretty()
}

pub fn loop_from_json(text: &str) -> Result<FiniteLoop, JsonError> {
    CayleyTableJson::parse(text)?.to_loop()
}
