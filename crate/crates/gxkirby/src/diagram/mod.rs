//! Kirby diagrams with 3-handles, stored as sliced gate words over handle ids.
//!
//! A 2-handle strand is referenced by its id, an orientation and an *act word*: the
//! sheets lying over it, so that the segment carries `ʷX` for `w = Π g(h₃)^±`.
//! 1-handles are coupon pairs; the φ̃ coupon's legs are the reversed, flipped φ legs.
//! A 3-handle sheet covering a coupon block is an `act` gate on that block.

mod compile;
mod symbolic;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::gxcat::{CategoryData, GroupElem, Label};

pub use compile::{check_typing, compile, compile_with, handle_legs, writhes, DualBasisCache};
pub use symbolic::{simulate, Slice, SymWire};

/// A signed reference to a 3-handle.
pub type SheetRef = (String, i32);

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct WireRef {
    pub h2: String,
    pub up: bool,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub act: Vec<SheetRef>,
}

impl WireRef {
    pub fn new(h2: &str, up: bool) -> WireRef {
        WireRef {
            h2: h2.to_string(),
            up,
            act: vec![],
        }
    }

    pub fn acted(h2: &str, up: bool, act: &[(&str, i32)]) -> WireRef {
        WireRef {
            h2: h2.to_string(),
            up,
            act: act.iter().map(|(h, s)| (h.to_string(), *s)).collect(),
        }
    }

    pub fn rev(&self) -> WireRef {
        WireRef {
            up: !self.up,
            ..self.clone()
        }
    }
}

/// Reverses and flips a leg list, as seen from the other foot of a 1-handle.
pub fn revflip_refs(legs: &[WireRef]) -> Vec<WireRef> {
    legs.iter().rev().map(WireRef::rev).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    Phi,
    PhiTilde,
}

impl Side {
    pub fn other(self) -> Side {
        match self {
            Side::Phi => Side::PhiTilde,
            Side::PhiTilde => Side::Phi,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "t", rename_all = "lowercase")]
pub enum SkelGate {
    Cup {
        pos: usize,
        wire: WireRef,
    },
    Cap {
        pos: usize,
    },
    Cross {
        pos: usize,
        over: bool,
    },
    Act {
        pos: usize,
        len: usize,
        h3: String,
        sign: i32,
    },
    Coupon {
        pos: usize,
        handle: usize,
        side: Side,
        legs: Vec<WireRef>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwoHandle {
    pub id: String,
    pub framing: i64,
    /// Incident sheets in cyclic order along the attaching circle.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub sheets: Vec<SheetRef>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThreeHandle {
    pub id: String,
    pub incidence: Vec<SheetRef>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KirbyDiagram {
    pub name: String,
    pub euler: i64,
    pub signature: i64,
    pub one_handles: usize,
    pub two_handles: Vec<TwoHandle>,
    pub three_handles: Vec<ThreeHandle>,
    pub word: Vec<SkelGate>,
}

#[derive(Debug, thiserror::Error)]
pub enum DiagramError {
    #[error("unknown 2-handle {0}")]
    Unknown2(String),
    #[error("unknown 3-handle {0}")]
    Unknown3(String),
    #[error("labelling: {0}")]
    Labelling(String),
    #[error("typing: 2-handle {h2} has degree {expected} but its label has degree {found}")]
    Typing {
        h2: String,
        expected: GroupElem,
        found: GroupElem,
    },
    #[error("invalid diagram: {0}")]
    Invalid(String),
    #[error("invalid site: {0}")]
    Site(String),
    #[error(transparent)]
    Tree(#[from] crate::treecalc::TreeError),
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("cannot parse diagram: {0}")]
    Parse(#[from] serde_json::Error),
}

impl KirbyDiagram {
    pub fn empty(name: &str) -> KirbyDiagram {
        KirbyDiagram {
            name: name.to_string(),
            euler: 2,
            signature: 0,
            one_handles: 0,
            two_handles: vec![],
            three_handles: vec![],
            word: vec![],
        }
    }

    pub fn counts(&self) -> (usize, usize, usize) {
        (self.one_handles, self.two_handles.len(), self.three_handles.len())
    }

    /// χ from the handle counts (one 0-handle, one 4-handle).
    pub fn handle_euler(&self) -> i64 {
        let (k1, k2, k3) = self.counts();
        2 - k1 as i64 + k2 as i64 - k3 as i64
    }

    pub fn h2_index(&self, id: &str) -> Option<usize> {
        self.two_handles.iter().position(|h| h.id == id)
    }

    pub fn h3_index(&self, id: &str) -> Option<usize> {
        self.three_handles.iter().position(|h| h.id == id)
    }

    /// Cyclic sheet word of a 2-handle: its `sheets` if given, otherwise the
    /// incidence entries of the 3-handles in handle order.
    pub fn sheet_word(&self, h2: &str) -> Vec<SheetRef> {
        if let Some(h) = self.two_handles.iter().find(|h| h.id == h2) {
            if !h.sheets.is_empty() {
                return h.sheets.clone();
            }
        }
        let mut out = Vec::new();
        for h3 in &self.three_handles {
            for (r, s) in &h3.incidence {
                if r == h2 {
                    out.push((h3.id.clone(), *s));
                }
            }
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("diagram serialises")
    }

    pub fn from_json(s: &str) -> Result<KirbyDiagram, DiagramError> {
        Ok(serde_json::from_str(s)?)
    }

    pub fn load(path: &Path) -> Result<KirbyDiagram, DiagramError> {
        let s = std::fs::read_to_string(path).map_err(|e| DiagramError::Io {
            path: path.display().to_string(),
            source: e,
        })?;
        KirbyDiagram::from_json(&s)
    }
}

/// Group labels of the 3-handles, by id.
pub type SheetLabels = BTreeMap<String, GroupElem>;

/// Product of `g(h)^s` over a sheet word, left to right.
pub fn sheet_product(c: &CategoryData, word: &[SheetRef], g: &SheetLabels) -> Result<GroupElem, DiagramError> {
    let grp = c.group();
    let mut acc = grp.identity();
    for (h, s) in word {
        let x = *g.get(h).ok_or_else(|| DiagramError::Unknown3(h.clone()))?;
        let x = if *s >= 0 { x } else { grp.inv(x) };
        acc = grp.mul(acc, x);
    }
    Ok(acc)
}

/// deg(h₂): the product of the attached 3-handle labels around the attaching circle.
pub fn degree_of_2handle(
    k: &KirbyDiagram,
    c: &CategoryData,
    h2: &str,
    g: &SheetLabels,
) -> Result<GroupElem, DiagramError> {
    if k.h2_index(h2).is_none() {
        return Err(DiagramError::Unknown2(h2.to_string()));
    }
    sheet_product(c, &k.sheet_word(h2), g)
}

/// Labelling of the handles: group elements on 3-handles, simples on 2-handles,
/// and a dual-basis index per 1-handle.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Labelling {
    pub g: SheetLabels,
    pub x: BTreeMap<String, Label>,
    pub iota: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagramIssue {
    pub check: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub position: Option<usize>,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagramReport {
    pub diagram: String,
    pub failures: Vec<DiagramIssue>,
}

impl DiagramReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

impl fmt::Display for DiagramReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.passed() {
            return write!(f, "diagram {}: pass", self.diagram);
        }
        writeln!(f, "diagram {}: FAIL", self.diagram)?;
        for i in &self.failures {
            match i.position {
                Some(p) => writeln!(f, "  {} at gate {}: {}", i.check, p, i.message)?,
                None => writeln!(f, "  {}: {}", i.check, i.message)?,
            }
        }
        Ok(())
    }
}

/// Well-formedness of the handle data and the word.
pub fn validate_diagram(k: &KirbyDiagram) -> DiagramReport {
    let mut failures = Vec::new();
    let mut fail = |check: &str, position: Option<usize>, message: String| {
        failures.push(DiagramIssue {
            check: check.to_string(),
            position,
            message,
        })
    };

    let mut ids2 = BTreeSet::new();
    for h in &k.two_handles {
        if !ids2.insert(h.id.as_str()) {
            fail("ids", None, format!("duplicate 2-handle id {}", h.id));
        }
    }
    let mut ids3 = BTreeSet::new();
    for h in &k.three_handles {
        if !ids3.insert(h.id.as_str()) {
            fail("ids", None, format!("duplicate 3-handle id {}", h.id));
        }
        for (r, s) in &h.incidence {
            if !ids2.contains(r.as_str()) {
                fail("incidence", None, format!("3-handle {} attaches to unknown {r}", h.id));
            }
            if s.abs() != 1 {
                fail("incidence", None, format!("sign {s} is not ±1"));
            }
        }
    }
    for h in &k.two_handles {
        for (r, s) in &h.sheets {
            if !ids3.contains(r.as_str()) || s.abs() != 1 {
                fail("sheets", None, format!("2-handle {} lists bad sheet ({r}, {s})", h.id));
            }
        }
        if !h.sheets.is_empty() {
            let mut listed: Vec<SheetRef> = h.sheets.clone();
            let mut inc: Vec<SheetRef> = k
                .three_handles
                .iter()
                .flat_map(|t| {
                    t.incidence
                        .iter()
                        .filter(|(r, _)| *r == h.id)
                        .map(|(_, s)| (t.id.clone(), *s))
                        .collect::<Vec<_>>()
                })
                .collect();
            listed.sort();
            inc.sort();
            if listed != inc {
                fail(
                    "sheets",
                    None,
                    format!("sheets of {} disagree with the 3-handle incidences", h.id),
                );
            }
        }
    }
    if k.euler != k.handle_euler() {
        fail(
            "euler",
            None,
            format!("recorded χ = {} but handle counts give {}", k.euler, k.handle_euler()),
        );
    }
    if let Err((pos, check, msg)) = symbolic::check_word(k) {
        fail(check, pos, msg);
    }
    DiagramReport {
        diagram: k.name.clone(),
        failures,
    }
}

/// Disjoint union of two diagrams: a diagram of the connected sum.
pub fn disjoint_union(a: &KirbyDiagram, b: &KirbyDiagram) -> KirbyDiagram {
    let taken: BTreeSet<String> = a
        .two_handles
        .iter()
        .map(|h| h.id.clone())
        .chain(a.three_handles.iter().map(|h| h.id.clone()))
        .collect();
    let mut rename = BTreeMap::new();
    let mut used = taken.clone();
    for id in b
        .two_handles
        .iter()
        .map(|h| h.id.clone())
        .chain(b.three_handles.iter().map(|h| h.id.clone()))
    {
        let mut new = id.clone();
        while used.contains(&new) {
            new.push('\'');
        }
        used.insert(new.clone());
        rename.insert(id, new);
    }
    let mut b2 = b.clone();
    rename_ids(&mut b2, &rename);
    let off = a.one_handles;
    for gate in &mut b2.word {
        if let SkelGate::Coupon { handle, .. } = gate {
            *handle += off;
        }
    }
    let name = match (a.name.as_str(), b.name.as_str()) {
        ("", n) | (n, "") => n.to_string(),
        (x, y) => format!("{x}#{y}"),
    };
    let mut word = a.word.clone();
    word.extend(b2.word);
    KirbyDiagram {
        name,
        euler: a.euler + b.euler - 2,
        signature: a.signature + b.signature,
        one_handles: a.one_handles + b.one_handles,
        two_handles: a.two_handles.iter().cloned().chain(b2.two_handles).collect(),
        three_handles: a.three_handles.iter().cloned().chain(b2.three_handles).collect(),
        word,
    }
}

/// Renames 2- and 3-handle ids throughout (ids absent from `map` are kept).
pub fn rename_ids(k: &mut KirbyDiagram, map: &BTreeMap<String, String>) {
    let r = |s: &mut String| {
        if let Some(n) = map.get(s) {
            *s = n.clone();
        }
    };
    let rw = |w: &mut WireRef| {
        r(&mut w.h2);
        for (h, _) in &mut w.act {
            r(h);
        }
    };
    for h in &mut k.two_handles {
        r(&mut h.id);
        for (s, _) in &mut h.sheets {
            r(s);
        }
    }
    for h in &mut k.three_handles {
        r(&mut h.id);
        for (s, _) in &mut h.incidence {
            r(s);
        }
    }
    for g in &mut k.word {
        match g {
            SkelGate::Cup { wire, .. } => rw(wire),
            SkelGate::Act { h3, .. } => r(h3),
            SkelGate::Coupon { legs, .. } => legs.iter_mut().for_each(rw),
            _ => {}
        }
    }
}

#[cfg(test)]
mod tests;
