//! JSON file format for categories.

use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{CategoryData, CategoryError, GroupData, RawCategory, Simple};
use crate::scalars::Scalar;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymbolEntry {
    pub idx: Vec<usize>,
    pub value: Scalar,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CategoryFile {
    #[serde(default)]
    pub name: String,
    pub group: GroupData,
    pub simples: Vec<Simple>,
    pub fusion: Vec<[usize; 3]>,
    #[serde(rename = "F", default)]
    pub f: Vec<SymbolEntry>,
    #[serde(rename = "R", default)]
    pub r: Vec<SymbolEntry>,
    #[serde(rename = "U", default)]
    pub u: Vec<SymbolEntry>,
    #[serde(default)]
    pub eta: Vec<SymbolEntry>,
    /// `action[g][x] = ᵍx`; omitted means the trivial action.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub action: Option<Vec<Vec<usize>>>,
    pub pivotal: Vec<Scalar>,
    pub conductor: u32,
}

fn to_map<const K: usize>(
    name: &str,
    entries: &[SymbolEntry],
) -> Result<BTreeMap<[usize; K], Scalar>, CategoryError> {
    let mut m = BTreeMap::new();
    for e in entries {
        let key: [usize; K] = e.idx.as_slice().try_into().map_err(|_| {
            CategoryError::Malformed(format!("{name} entry {:?} needs {K} indices", e.idx))
        })?;
        if m.insert(key, e.value.clone()).is_some() {
            return Err(CategoryError::Malformed(format!("duplicate {name} entry {:?}", e.idx)));
        }
    }
    Ok(m)
}

fn from_map<const K: usize>(m: &BTreeMap<[usize; K], Scalar>) -> Vec<SymbolEntry> {
    m.iter()
        .filter(|(_, v)| !v.is_zero())
        .map(|(k, v)| SymbolEntry {
            idx: k.to_vec(),
            value: v.clone(),
        })
        .collect()
}

impl CategoryFile {
    pub fn into_category(self) -> Result<CategoryData, CategoryError> {
        let n = self.simples.len();
        let action_perm = self
            .action
            .unwrap_or_else(|| vec![(0..n).collect(); self.group.order]);
        let fusion: BTreeSet<[usize; 3]> = self.fusion.iter().copied().collect();
        if fusion.len() != self.fusion.len() {
            return Err(CategoryError::Malformed("repeated fusion triple".into()));
        }
        CategoryData::build(RawCategory {
            name: self.name,
            group: self.group,
            simples: self.simples,
            fusion,
            f_symbols: to_map("F", &self.f)?,
            r_symbols: to_map("R", &self.r)?,
            action_perm,
            u_symbols: to_map("U", &self.u)?,
            eta_symbols: to_map("eta", &self.eta)?,
            pivotal: self.pivotal,
            conductor: self.conductor,
        })
    }

    pub fn from_category(c: &CategoryData) -> CategoryFile {
        let raw = c.raw();
        CategoryFile {
            name: raw.name.clone(),
            group: raw.group.clone(),
            simples: raw.simples.clone(),
            fusion: raw.fusion.iter().copied().collect(),
            f: from_map(&raw.f_symbols),
            r: from_map(&raw.r_symbols),
            u: from_map(&raw.u_symbols),
            eta: from_map(&raw.eta_symbols),
            action: if c.has_trivial_action() {
                None
            } else {
                Some(raw.action_perm.clone())
            },
            pivotal: raw.pivotal.clone(),
            conductor: raw.conductor,
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum LoadError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("cannot parse {path}: {source}")]
    Parse {
        path: String,
        source: serde_json::Error,
    },
    #[error(transparent)]
    Category(#[from] CategoryError),
}

impl CategoryData {
    pub fn from_json_str(s: &str) -> Result<CategoryData, LoadError> {
        let file: CategoryFile = serde_json::from_str(s).map_err(|source| LoadError::Parse {
            path: "<string>".into(),
            source,
        })?;
        Ok(file.into_category()?)
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(&CategoryFile::from_category(self))
            .expect("category serializes")
    }

    pub fn load(path: &Path) -> Result<CategoryData, LoadError> {
        let p = path.display().to_string();
        let text = std::fs::read_to_string(path).map_err(|source| LoadError::Io {
            path: p.clone(),
            source,
        })?;
        let file: CategoryFile =
            serde_json::from_str(&text).map_err(|source| LoadError::Parse { path: p, source })?;
        Ok(file.into_category()?)
    }
}
