use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{GradedMatrix, GradedSpace};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BasisEntry {
    pub label: String,
    pub parity: u8,
    pub weight: i64,
}

/// Label-keyed JSON form of a matrix: `{space, entries: [[row, col, value]]}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MatrixDump {
    pub backend: String,
    pub parity: u8,
    pub space: Vec<BasisEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub codomain: Option<Vec<BasisEntry>>,
    pub entries: Vec<[String; 3]>,
    /// Scalar factor pulled out of the entries, if any.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub normalization: Option<String>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub meta: BTreeMap<String, String>,
}

fn basis(space: &GradedSpace) -> Vec<BasisEntry> {
    (0..space.dim())
        .map(|i| BasisEntry {
            label: space.label(i).to_string(),
            parity: space.parity(i).bit() as u8,
            weight: space.weight(i),
        })
        .collect()
}

impl MatrixDump {
    pub fn from_matrix<S: Scalar>(m: &GradedMatrix<S>) -> Self {
        let dom = m.domain();
        let cod = m.codomain();
        Self {
            backend: S::BACKEND.to_string(),
            parity: m.parity().bit() as u8,
            space: basis(dom),
            codomain: if m.is_square() { None } else { Some(basis(cod)) },
            entries: m
                .entries()
                .map(|(r, c, v)| [cod.label(r).to_string(), dom.label(c).to_string(), v.to_scalar_string()])
                .collect(),
            normalization: None,
            meta: BTreeMap::new(),
        }
    }

    pub fn with_normalization(mut self, n: Option<String>) -> Self {
        self.normalization = n;
        self
    }

    pub fn with_meta(mut self, key: &str, value: impl Into<String>) -> Self {
        self.meta.insert(key.to_string(), value.into());
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("dump serialises")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
    }

    /// Entries parsed back into `S`, keyed by `(row label, column label)`.
    pub fn parsed_entries<S: Scalar>(&self) -> Result<BTreeMap<(String, String), S>> {
        let mut out = BTreeMap::new();
        for [r, c, v] in &self.entries {
            if out.insert((r.clone(), c.clone()), S::parse_scalar(v)?).is_some() {
                return Err(Error::Parse(format!("duplicate entry ({r}, {c})")));
            }
        }
        Ok(out)
    }
}
