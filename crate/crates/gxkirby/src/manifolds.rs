//! Builtin Kirby diagrams, π₁ presentations from 3-handles, and Dijkgraaf-Witten counts.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::diagram::{
    disjoint_union, KirbyDiagram, Side, SkelGate, ThreeHandle, TwoHandle, WireRef,
};
use crate::gxcat::{CategoryData, CategoryError, GroupData};
use crate::invariant::{crane_yetter_hat, invariant, InvariantError};

pub const BUILTIN_NAMES: [&str; 9] = [
    "s4",
    "s1_x_s3",
    "s1_x_s3_far",
    "s2_x_s2",
    "s2_x_s2_slid",
    "cp2_plus",
    "cp2_minus",
    "s1_x_s1_x_s2",
    "s1_x_s1_x_s2_left",
];

#[derive(Debug, thiserror::Error)]
pub enum ManifoldError {
    #[error("unknown builtin manifold {0}")]
    Unknown(String),
    #[error(transparent)]
    Invariant(#[from] InvariantError),
    #[error(transparent)]
    Category(#[from] CategoryError),
}

fn cup(pos: usize, h2: &str, up: bool) -> SkelGate {
    SkelGate::Cup {
        pos,
        wire: WireRef::new(h2, up),
    }
}

fn cap(pos: usize) -> SkelGate {
    SkelGate::Cap { pos }
}

fn cross(pos: usize, over: bool) -> SkelGate {
    SkelGate::Cross { pos, over }
}

fn act(pos: usize, len: usize, h3: &str, sign: i32) -> SkelGate {
    SkelGate::Act {
        pos,
        len,
        h3: h3.to_string(),
        sign,
    }
}

fn coupon(pos: usize, handle: usize, side: Side, legs: Vec<WireRef>) -> SkelGate {
    SkelGate::Coupon {
        pos,
        handle,
        side,
        legs,
    }
}

fn h2(id: &str, framing: i64, sheets: &[(&str, i32)]) -> TwoHandle {
    TwoHandle {
        id: id.to_string(),
        framing,
        sheets: sheets.iter().map(|(h, s)| (h.to_string(), *s)).collect(),
    }
}

fn h3(id: &str, incidence: &[(&str, i32)]) -> ThreeHandle {
    ThreeHandle {
        id: id.to_string(),
        incidence: incidence.iter().map(|(h, s)| (h.to_string(), *s)).collect(),
    }
}

/// S¹×S³: one 1-handle and a 3-handle whose sphere encloses one foot.
/// `far` encloses the other foot instead, with the opposite orientation.
fn s1_x_s3(far: bool) -> KirbyDiagram {
    let sheet = if far {
        vec![
            coupon(0, 0, Side::Phi, vec![]),
            coupon(0, 0, Side::PhiTilde, vec![]),
            act(0, 0, "A", -1),
        ]
    } else {
        vec![
            coupon(0, 0, Side::Phi, vec![]),
            act(0, 0, "A", 1),
            coupon(0, 0, Side::PhiTilde, vec![]),
        ]
    };
    KirbyDiagram {
        name: if far { "s1_x_s3_far" } else { "s1_x_s3" }.into(),
        euler: 0,
        signature: 0,
        one_handles: 1,
        two_handles: vec![],
        three_handles: vec![h3("A", &[])],
        word: sheet,
    }
}

/// Hopf link of two 2-handles. `slid` is the result of sliding `a` over `b`:
/// still a Hopf link, with `a` now carrying two blackboard curls and framing 2.
fn s2_x_s2(slid: bool) -> KirbyDiagram {
    let mut word = vec![cup(0, "a", true)];
    if slid {
        for _ in 0..2 {
            word.extend([
                SkelGate::Cup {
                    pos: 1,
                    wire: WireRef::new("a", false),
                },
                cross(0, false),
                cap(0),
            ]);
        }
    }
    word.extend([cup(1, "b", true), cross(0, true), cross(0, true), cap(1), cap(0)]);
    KirbyDiagram {
        name: if slid { "s2_x_s2_slid" } else { "s2_x_s2" }.into(),
        euler: 4,
        signature: 0,
        one_handles: 0,
        two_handles: vec![h2("a", if slid { 2 } else { 0 }, &[]), h2("b", 0, &[])],
        three_handles: vec![],
        word,
    }
}

/// ±1-framed unknot; the curl is supplied by the framing correction.
fn cp2(sign: i64) -> KirbyDiagram {
    KirbyDiagram {
        name: if sign > 0 { "cp2_plus" } else { "cp2_minus" }.into(),
        euler: 3,
        signature: sign,
        one_handles: 0,
        two_handles: vec![h2("a", sign, &[])],
        three_handles: vec![],
        word: vec![cup(0, "a", true), cap(0)],
    }
}

/// S¹×S¹×S² as the double of T²×D².
///
/// `a` runs over the 1-handles along the commutator: out of foot α into β, β to α̃,
/// α̃ to β̃ and back to α. The 3-handle spheres `A` and `B` enclose α and β, capped
/// off twice (with opposite signs) by the meridian `b`, which therefore has degree
/// [g_A, g_B]. The sheets show up as the actions on the coupons at α and β. The
/// meridian encircles the α→β segment just before β; `left` places it just after α,
/// attaching the sheets from the other side.
fn s1_x_s1_x_s2(left: bool) -> KirbyDiagram {
    let w = |up: bool, a: &[(&str, i32)]| WireRef::acted("a", up, a);
    let mut word = vec![
        coupon(0, 0, Side::Phi, vec![w(false, &[]), w(true, &[("B", 1)])]),
        act(0, 2, "A", 1),
        coupon(2, 1, Side::Phi, vec![w(false, &[("A", 1)]), w(true, &[])]),
        act(2, 2, "B", 1),
        coupon(4, 0, Side::PhiTilde, vec![w(false, &[("B", 1)]), w(true, &[])]),
        coupon(6, 1, Side::PhiTilde, vec![w(false, &[]), w(true, &[("A", 1)])]),
        cap(3),
        cap(3),
    ];
    // leaves: ᴬX↓, ᴬᴮX↑, ᴮᴬX↓, ᴬX↑
    let sheets: &[(&str, i32)] = if left {
        word.extend([cup(2, "b", true), cross(1, true), cross(1, true), cap(2)]);
        &[("B", 1), ("A", 1), ("B", -1), ("A", -1)]
    } else {
        word.extend([cup(3, "b", true), cross(2, true), cross(2, true), cap(3)]);
        &[("A", 1), ("B", 1), ("A", -1), ("B", -1)]
    };
    word.extend([cap(1), cap(0)]);
    KirbyDiagram {
        name: if left { "s1_x_s1_x_s2_left" } else { "s1_x_s1_x_s2" }.into(),
        euler: 0,
        signature: 0,
        one_handles: 2,
        two_handles: vec![h2("a", 0, &[]), h2("b", 0, sheets)],
        three_handles: vec![h3("A", &[("b", 1), ("b", -1)]), h3("B", &[("b", 1), ("b", -1)])],
        word,
    }
}

pub fn builtin(name: &str) -> Result<KirbyDiagram, ManifoldError> {
    Ok(match name {
        "s4" => KirbyDiagram::empty("s4"),
        "s1_x_s3" => s1_x_s3(false),
        "s1_x_s3_far" => s1_x_s3(true),
        "s2_x_s2" => s2_x_s2(false),
        "s2_x_s2_slid" => s2_x_s2(true),
        "cp2_plus" => cp2(1),
        "cp2_minus" => cp2(-1),
        "s1_x_s1_x_s2" => s1_x_s1_x_s2(false),
        "s1_x_s1_x_s2_left" => s1_x_s1_x_s2(true),
        other => {
            if other.contains('#') {
                let parts: Vec<&str> = other.split('#').collect();
                return connected_sum(&parts);
            }
            return Err(ManifoldError::Unknown(other.to_string()));
        }
    })
}

/// Connected sum of builtins, e.g. `["s1_x_s3", "s1_x_s3", "s2_x_s2"]`.
pub fn connected_sum(names: &[&str]) -> Result<KirbyDiagram, ManifoldError> {
    let mut acc = KirbyDiagram::empty("");
    for n in names {
        acc = disjoint_union(&acc, &builtin(n)?);
    }
    if acc.name.is_empty() {
        acc.name = "s4".into();
    }
    Ok(acc)
}

/// Generators are 3-handles; each 2-handle contributes its cyclic sheet word.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupPresentation {
    pub generators: Vec<String>,
    pub relators: Vec<Vec<(usize, i32)>>,
}

impl GroupPresentation {
    /// Free product, as for a connected sum.
    pub fn free_product(&self, other: &GroupPresentation) -> GroupPresentation {
        let off = self.generators.len();
        GroupPresentation {
            generators: self.generators.iter().chain(&other.generators).cloned().collect(),
            relators: self
                .relators
                .iter()
                .cloned()
                .chain(
                    other
                        .relators
                        .iter()
                        .map(|r| r.iter().map(|&(g, s)| (g + off, s)).collect()),
                )
                .collect(),
        }
    }

    pub fn relator_string(&self, i: usize) -> String {
        let r = &self.relators[i];
        if r.is_empty() {
            return "ε".into();
        }
        r.iter()
            .map(|&(g, s)| {
                if s > 0 {
                    self.generators[g].clone()
                } else {
                    format!("{}⁻¹", self.generators[g])
                }
            })
            .collect()
    }
}

impl fmt::Display for GroupPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rels: Vec<String> = (0..self.relators.len()).map(|i| self.relator_string(i)).collect();
        write!(f, "⟨{} | {}⟩", self.generators.join(","), rels.join(", "))
    }
}

pub fn pi1_presentation(k: &KirbyDiagram) -> GroupPresentation {
    let generators: Vec<String> = k.three_handles.iter().map(|h| h.id.clone()).collect();
    let relators = k
        .two_handles
        .iter()
        .map(|h| {
            k.sheet_word(&h.id)
                .into_iter()
                .filter_map(|(g, s)| generators.iter().position(|x| *x == g).map(|i| (i, s)))
                .collect()
        })
        .collect();
    GroupPresentation { generators, relators }
}

/// |Hom(π, G)| by brute force over generator assignments.
pub fn dw_count(p: &GroupPresentation, g: &GroupData) -> u64 {
    let n = p.generators.len();
    let total = g.order.pow(n as u32);
    let mut count = 0;
    let mut assign = vec![0usize; n];
    for mut idx in 0..total {
        for a in assign.iter_mut() {
            *a = idx % g.order;
            idx /= g.order;
        }
        let ok = p.relators.iter().all(|r| {
            let v = g.product(r.iter().map(|&(x, s)| if s > 0 { assign[x] } else { g.inv(assign[x]) }));
            v == g.identity()
        });
        if ok {
            count += 1;
        }
    }
    count
}

/// The diagram with its 3-handles and sheets removed.
pub fn strip_three_handles(k: &KirbyDiagram) -> KirbyDiagram {
    let mut out = k.clone();
    out.three_handles.clear();
    out.euler = out.handle_euler();
    for h in &mut out.two_handles {
        h.sheets.clear();
    }
    out.word.retain(|g| !matches!(g, SkelGate::Act { .. }));
    for g in &mut out.word {
        match g {
            SkelGate::Cup { wire, .. } => wire.act.clear(),
            SkelGate::Coupon { legs, .. } => legs.iter_mut().for_each(|w| w.act.clear()),
            _ => {}
        }
    }
    out
}

/// Whether I(K) = |Hom(π₁, G)| · ĈY(K without 3-handles) for a category concentrated
/// in trivial degree with trivial action.
pub fn dw_factorization_check(k: &KirbyDiagram, c: &CategoryData) -> Result<bool, ManifoldError> {
    if !c.is_trivially_graded() || !c.has_trivial_action() {
        return Err(CategoryError::Hypothesis(format!(
            "{} must be concentrated in trivial degree with trivial action",
            c.name()
        ))
        .into());
    }
    let lhs = invariant(k, c)?.value;
    let dw = dw_count(&pi1_presentation(k), c.group());
    let cy = crane_yetter_hat(&strip_three_handles(k), c)?;
    Ok(lhs == cy * c.int(dw as i64))
}
