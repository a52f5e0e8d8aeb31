//! Input documents: JSON presentations and the plain-text matrix layout.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};
use sgring_core::{IntVector, Presentation};

use crate::error::CliError;

pub const SCHEMA: &str = "sgring-lab/1";

/// External presentation format. Each inner list of `generators` is one
/// generator; the plain-text matrix mode instead reads the rows of a
/// matrix whose columns are the generators.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InputDocument {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub schema: Option<String>,
    pub dim: usize,
    pub generators: Vec<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub extreme_hint: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<BTreeMap<String, String>>,
}

impl InputDocument {
    pub fn validate(&self) -> Result<(), CliError> {
        if let Some(schema) = &self.schema {
            if schema != SCHEMA {
                return Err(CliError::Input(format!(
                    "unsupported schema {schema:?}, expected {SCHEMA:?}"
                )));
            }
        }
        for (i, g) in self.generators.iter().enumerate() {
            if g.len() != self.dim {
                return Err(CliError::Input(format!(
                    "generator {i} has {} entries, expected {}",
                    g.len(),
                    self.dim
                )));
            }
        }
        if let Some(hint) = &self.extreme_hint {
            for &idx in hint {
                if idx >= self.generators.len() {
                    return Err(CliError::Input(format!(
                        "extreme_hint index {idx} outside the generator list"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn to_presentation(&self) -> Result<Presentation, CliError> {
        Presentation::new(
            self.dim,
            self.generators.iter().map(|g| IntVector::new(g.clone())).collect(),
        )
        .map_err(CliError::Core)
    }
}

pub fn load(path: &Path, matrix_mode: bool) -> Result<InputDocument, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?;
    let doc = if matrix_mode {
        parse_matrix(&text)?
    } else {
        serde_json::from_str(&text)
            .map_err(|e| CliError::Input(format!("invalid JSON in {}: {e}", path.display())))?
    };
    doc.validate()?;
    Ok(doc)
}

/// Whitespace-separated integer rows; generators are the columns.
fn parse_matrix(text: &str) -> Result<InputDocument, CliError> {
    let mut rows: Vec<Vec<i64>> = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let row: Vec<i64> = line
            .split_whitespace()
            .map(|tok| {
                tok.parse::<i64>().map_err(|_| {
                    CliError::Input(format!("line {}: invalid integer {tok:?}", lineno + 1))
                })
            })
            .collect::<Result<_, _>>()?;
        if let Some(first) = rows.first() {
            if row.len() != first.len() {
                return Err(CliError::Input(format!(
                    "line {}: expected {} entries, got {}",
                    lineno + 1,
                    first.len(),
                    row.len()
                )));
            }
        }
        rows.push(row);
    }
    if rows.is_empty() {
        return Err(CliError::Input("matrix input is empty".to_string()));
    }
    let dim = rows.len();
    let cols = rows[0].len();
    let generators = (0..cols)
        .map(|j| (0..dim).map(|i| rows[i][j]).collect())
        .collect();
    Ok(InputDocument {
        schema: Some(SCHEMA.to_string()),
        dim,
        generators,
        extreme_hint: None,
        labels: None,
    })
}
