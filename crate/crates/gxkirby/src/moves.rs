//! Handle moves and local isotopies on diagram words.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::diagram::{
    simulate, validate_diagram, DiagramError, KirbyDiagram, SheetRef, Side, SkelGate, ThreeHandle,
    TwoHandle, WireRef,
};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "camelCase")]
pub enum MoveRecord {
    Cancel12 { index: usize, pos: usize },
    Cancel12Remove { handle: usize },
    Cancel23 { index: usize, pos: usize },
    Cancel23Remove { h3: String },
    Slide33 { a: String, b: String },
    ThreeInfinity { h3: String },
    IsotopyR2 { index: usize, pos: usize, over: bool },
    IsotopyR3 { index: usize, pos: usize, over: bool },
    Snake { index: usize, pos: usize },
    FoldPair { index: usize, h3: String },
    CouponSlide { index: usize },
    Reverse2 { h2: String },
    Reverse3 { h3: String },
}

fn site(msg: impl Into<String>) -> DiagramError {
    DiagramError::Site(msg.into())
}

fn checked(k: KirbyDiagram) -> Result<KirbyDiagram, DiagramError> {
    let r = validate_diagram(&k);
    if r.passed() {
        Ok(k)
    } else {
        Err(site(r.to_string()))
    }
}

fn widths(k: &KirbyDiagram) -> Result<Vec<usize>, DiagramError> {
    Ok(simulate(k)
        .map_err(|(_, _, m)| DiagramError::Invalid(m))?
        .iter()
        .map(|s| s.len())
        .collect())
}

fn fresh_id(k: &KirbyDiagram, stem: &str) -> String {
    let used: BTreeSet<&str> = k
        .two_handles
        .iter()
        .map(|h| h.id.as_str())
        .chain(k.three_handles.iter().map(|h| h.id.as_str()))
        .collect();
    (0..)
        .map(|i| format!("{stem}{i}"))
        .find(|s| !used.contains(s.as_str()))
        .expect("unbounded")
}

fn insert_at(k: &KirbyDiagram, index: usize, pos: usize, min_width: usize, gates: Vec<SkelGate>) -> Result<KirbyDiagram, DiagramError> {
    let w = widths(k)?;
    if index >= w.len() {
        return Err(site(format!("index {index} beyond word length {}", k.word.len())));
    }
    if pos + min_width > w[index] {
        return Err(site(format!("position {pos} needs width {} at gate {index}, found {}", pos + min_width, w[index])));
    }
    let mut out = k.clone();
    out.word.splice(index..index, gates);
    Ok(out)
}

/// Adds a 1-handle with one fresh 2-handle running once over it.
pub fn insert_cancelling_12(k: &KirbyDiagram, index: usize, pos: usize) -> Result<KirbyDiagram, DiagramError> {
    let id = fresh_id(k, "c");
    let h = k.one_handles;
    let leg = WireRef::new(&id, true);
    let gates = vec![
        SkelGate::Coupon {
            pos,
            handle: h,
            side: Side::Phi,
            legs: vec![leg.clone()],
        },
        SkelGate::Coupon {
            pos: pos + 1,
            handle: h,
            side: Side::PhiTilde,
            legs: vec![leg.rev()],
        },
        SkelGate::Cap { pos },
    ];
    let mut out = insert_at(k, index, pos, 0, gates)?;
    out.one_handles += 1;
    out.two_handles.push(TwoHandle {
        id,
        framing: 0,
        sheets: vec![],
    });
    checked(out)
}

fn mentions_h2(g: &SkelGate, id: &str) -> bool {
    match g {
        SkelGate::Cup { wire, .. } => wire.h2 == id,
        SkelGate::Coupon { legs, .. } => legs.iter().any(|w| w.h2 == id),
        _ => false,
    }
}

/// Removes a 1-handle inserted by [`insert_cancelling_12`] together with its 2-handle.
pub fn remove_cancelling_12(k: &KirbyDiagram, handle: usize) -> Result<KirbyDiagram, DiagramError> {
    let i = k
        .word
        .iter()
        .position(|g| matches!(g, SkelGate::Coupon { handle: h, side: Side::Phi, .. } if *h == handle))
        .ok_or_else(|| site(format!("no 1-handle {handle}")))?;
    let (pos, leg) = match (&k.word[i], k.word.get(i + 1), k.word.get(i + 2)) {
        (
            SkelGate::Coupon { pos, legs, .. },
            Some(SkelGate::Coupon {
                pos: p2,
                handle: h2,
                side: Side::PhiTilde,
                ..
            }),
            Some(SkelGate::Cap { pos: p3 }),
        ) if legs.len() == 1 && *p2 == pos + 1 && *h2 == handle && p3 == pos => (*pos, legs[0].clone()),
        _ => return Err(site(format!("1-handle {handle} is not a cancelling pair"))),
    };
    let _ = pos;
    let id = leg.h2.clone();
    let h2 = k.two_handles.iter().find(|h| h.id == id).expect("validated");
    let others = k
        .word
        .iter()
        .enumerate()
        .filter(|(j, g)| !(i..i + 3).contains(j) && mentions_h2(g, &id))
        .count();
    if others > 0 || !h2.sheets.is_empty() || h2.framing != 0 || !leg.act.is_empty() {
        return Err(site(format!("2-handle {id} does not cancel 1-handle {handle}")));
    }
    let mut out = k.clone();
    out.word.drain(i..i + 3);
    out.one_handles -= 1;
    out.two_handles.retain(|h| h.id != id);
    for g in &mut out.word {
        if let SkelGate::Coupon { handle: h, .. } = g {
            if *h > handle {
                *h -= 1;
            }
        }
    }
    checked(out)
}

/// Adds a 0-framed unknot with a fresh 3-handle attached once along it.
pub fn insert_cancelling_23(k: &KirbyDiagram, index: usize, pos: usize) -> Result<KirbyDiagram, DiagramError> {
    let r = fresh_id(k, "u");
    let mut probe = k.clone();
    probe.two_handles.push(TwoHandle {
        id: r.clone(),
        framing: 0,
        sheets: vec![],
    });
    let s = fresh_id(&probe, "S");
    let gates = vec![
        SkelGate::Cup {
            pos,
            wire: WireRef::new(&r, true),
        },
        SkelGate::Cap { pos },
    ];
    let mut out = insert_at(k, index, pos, 0, gates)?;
    out.two_handles.push(TwoHandle {
        id: r.clone(),
        framing: 0,
        sheets: vec![(s.clone(), 1)],
    });
    out.three_handles.push(ThreeHandle {
        id: s,
        incidence: vec![(r, 1)],
    });
    checked(out)
}

fn mentions_h3(g: &SkelGate, id: &str) -> bool {
    let in_word = |w: &WireRef| w.act.iter().any(|(h, _)| h == id);
    match g {
        SkelGate::Act { h3, .. } => h3 == id,
        SkelGate::Cup { wire, .. } => in_word(wire),
        SkelGate::Coupon { legs, .. } => legs.iter().any(in_word),
        _ => false,
    }
}

pub fn remove_cancelling_23(k: &KirbyDiagram, h3: &str) -> Result<KirbyDiagram, DiagramError> {
    let t = k
        .three_handles
        .iter()
        .find(|h| h.id == h3)
        .ok_or_else(|| site(format!("no 3-handle {h3}")))?;
    let r = match t.incidence.as_slice() {
        [(r, _)] => r.clone(),
        _ => return Err(site(format!("3-handle {h3} is not attached exactly once"))),
    };
    let h2 = k.two_handles.iter().find(|h| h.id == r).expect("validated");
    let attached_elsewhere = k
        .three_handles
        .iter()
        .any(|o| o.id != h3 && o.incidence.iter().any(|(x, _)| *x == r));
    if attached_elsewhere || h2.framing != 0 || k.word.iter().any(|g| mentions_h3(g, h3)) {
        return Err(site(format!("3-handle {h3} does not cancel {r}")));
    }
    let hits: Vec<usize> = (0..k.word.len()).filter(|&j| mentions_h2(&k.word[j], &r)).collect();
    let i = match hits.as_slice() {
        [i] => *i,
        _ => return Err(site(format!("{r} is not a single unknotted loop"))),
    };
    match (&k.word[i], k.word.get(i + 1)) {
        (SkelGate::Cup { pos, .. }, Some(SkelGate::Cap { pos: p2 })) if pos == p2 => {}
        _ => return Err(site(format!("{r} is not a single unknotted loop"))),
    }
    let mut out = k.clone();
    out.word.drain(i..i + 2);
    out.two_handles.retain(|h| h.id != r);
    out.three_handles.retain(|h| h.id != h3);
    checked(out)
}

fn map_sheet_word(word: &[SheetRef], f: &dyn Fn(&SheetRef) -> Vec<SheetRef>) -> Vec<SheetRef> {
    word.iter().flat_map(f).collect()
}

fn map_all_sheet_words(k: &mut KirbyDiagram, f: &dyn Fn(&SheetRef) -> Vec<SheetRef>) {
    for h in &mut k.two_handles {
        h.sheets = map_sheet_word(&h.sheets, f);
    }
    for g in &mut k.word {
        match g {
            SkelGate::Cup { wire, .. } => wire.act = map_sheet_word(&wire.act, f),
            SkelGate::Coupon { legs, .. } => {
                for w in legs {
                    w.act = map_sheet_word(&w.act, f);
                }
            }
            _ => {}
        }
    }
}

/// 3-3 slide of `a` over `b`: the new sheet of `a` engulfs `b`, so every occurrence
/// of `a` becomes `a` followed by `b` (and `b⁻¹ a⁻¹` for the inverse).
pub fn slide_33(k: &KirbyDiagram, a: &str, b: &str) -> Result<KirbyDiagram, DiagramError> {
    if a == b {
        return Err(site("a 3-handle cannot slide over itself"));
    }
    for id in [a, b] {
        if k.h3_index(id).is_none() {
            return Err(DiagramError::Unknown3(id.to_string()));
        }
    }
    let mut out = k.clone();
    let f = |(h, s): &SheetRef| -> Vec<SheetRef> {
        if h == a {
            if *s > 0 {
                vec![(a.to_string(), 1), (b.to_string(), 1)]
            } else {
                vec![(b.to_string(), -1), (a.to_string(), -1)]
            }
        } else {
            vec![(h.clone(), *s)]
        }
    };
    map_all_sheet_words(&mut out, &f);
    let extra = k.three_handles[k.h3_index(a).unwrap()].incidence.clone();
    let bi = k.h3_index(b).unwrap();
    out.three_handles[bi].incidence.extend(extra);
    let mut word = Vec::with_capacity(out.word.len());
    for g in out.word.drain(..) {
        match &g {
            SkelGate::Act { pos, len, h3, sign } if h3 == a => {
                let gb = SkelGate::Act {
                    pos: *pos,
                    len: *len,
                    h3: b.to_string(),
                    sign: *sign,
                };
                if *sign > 0 {
                    word.push(gb);
                    word.push(g);
                } else {
                    word.push(g);
                    word.push(gb);
                }
            }
            _ => word.push(g),
        }
    }
    out.word = word;
    checked(out)
}

/// 3-∞ move for a sphere that only encloses legless 1-handle feet: the sphere
/// is pushed over ∞ to enclose the opposite feet, with the opposite orientation.
pub fn three_infinity(k: &KirbyDiagram, h3: &str) -> Result<KirbyDiagram, DiagramError> {
    let t = k
        .three_handles
        .iter()
        .find(|h| h.id == h3)
        .ok_or_else(|| DiagramError::Unknown3(h3.to_string()))?;
    if !t.incidence.is_empty() {
        return Err(site(format!("3-∞ is only available for unattached spheres; {h3} meets 2-handles")));
    }
    let mut covered: Vec<(usize, Side, i32)> = Vec::new();
    let mut last_coupon: Option<(usize, Side, usize)> = None;
    for g in &k.word {
        match g {
            SkelGate::Coupon { handle, side, legs, .. } => last_coupon = Some((*handle, *side, legs.len())),
            SkelGate::Act { h3: h, len, sign, .. } if h == h3 => match last_coupon {
                Some((hd, sd, 0)) if *len == 0 => covered.push((hd, sd, *sign)),
                _ => {
                    return Err(site(format!(
                        "3-∞ is only available when {h3} encloses legless 1-handle feet"
                    )))
                }
            },
            SkelGate::Act { .. } => {}
            _ => last_coupon = None,
        }
        if mentions_h3(g, h3) && !matches!(g, SkelGate::Act { .. }) {
            return Err(site(format!("{h3} covers strands")));
        }
    }
    let mut word = Vec::with_capacity(k.word.len());
    for g in &k.word {
        if matches!(g, SkelGate::Act { h3: h, .. } if h == h3) {
            continue;
        }
        word.push(g.clone());
        if let SkelGate::Coupon { pos, handle, side, .. } = g {
            for (hd, sd, s) in &covered {
                if hd == handle && sd.other() == *side {
                    word.push(SkelGate::Act {
                        pos: *pos,
                        len: 0,
                        h3: h3.to_string(),
                        sign: -s,
                    });
                }
            }
        }
    }
    let mut out = k.clone();
    out.word = word;
    checked(out)
}

/// Inserts a crossing followed by its inverse.
pub fn insert_r2(k: &KirbyDiagram, index: usize, pos: usize, over: bool) -> Result<KirbyDiagram, DiagramError> {
    let gates = vec![SkelGate::Cross { pos, over }, SkelGate::Cross { pos, over: !over }];
    checked(insert_at(k, index, pos, 2, gates)?)
}

/// Inserts σ₁σ₂σ₁ (σ₂σ₁σ₂)⁻¹ on three adjacent strands.
pub fn insert_r3(k: &KirbyDiagram, index: usize, pos: usize, over: bool) -> Result<KirbyDiagram, DiagramError> {
    let x = |p: usize, o: bool| SkelGate::Cross { pos: p, over: o };
    let gates = vec![
        x(pos, over),
        x(pos + 1, over),
        x(pos, over),
        x(pos + 1, !over),
        x(pos, !over),
        x(pos + 1, !over),
    ];
    checked(insert_at(k, index, pos, 3, gates)?)
}

/// Inserts a zig-zag on the strand at `pos`.
pub fn insert_snake(k: &KirbyDiagram, index: usize, pos: usize) -> Result<KirbyDiagram, DiagramError> {
    let slices = simulate(k).map_err(|(_, _, m)| DiagramError::Invalid(m))?;
    let s = slices
        .get(index)
        .ok_or_else(|| site(format!("index {index} beyond word length")))?;
    let w = s.get(pos).ok_or_else(|| site(format!("no strand at {pos}")))?;
    let gates = vec![
        SkelGate::Cup {
            pos: pos + 1,
            wire: w.rev(),
        },
        SkelGate::Cap { pos },
    ];
    checked(insert_at(k, index, pos, 1, gates)?)
}

/// A sheet folded over the whole slice and straight back.
pub fn insert_fold_pair(k: &KirbyDiagram, index: usize, h3: &str) -> Result<KirbyDiagram, DiagramError> {
    if k.h3_index(h3).is_none() {
        return Err(DiagramError::Unknown3(h3.to_string()));
    }
    let w = widths(k)?;
    let n = *w
        .get(index)
        .ok_or_else(|| site(format!("index {index} beyond word length")))?;
    let act = |sign| SkelGate::Act {
        pos: 0,
        len: n,
        h3: h3.to_string(),
        sign,
    };
    checked(insert_at(k, index, 0, 0, vec![act(1), act(-1)])?)
}

/// Slides the strand immediately left of a coupon underneath it.
pub fn coupon_slide(k: &KirbyDiagram, index: usize) -> Result<KirbyDiagram, DiagramError> {
    let (pos, nlegs) = match k.word.get(index) {
        Some(SkelGate::Coupon { pos, legs, .. }) if *pos >= 1 => (*pos, legs.len()),
        _ => return Err(site(format!("gate {index} is not a coupon with a strand on its left"))),
    };
    let mut end = index + 1;
    while let Some(SkelGate::Act { pos: p, len, .. }) = k.word.get(end) {
        if *p != pos || *len != nlegs {
            return Err(site("the coupon's sheet also covers its neighbours"));
        }
        end += 1;
    }
    let mut moved: Vec<SkelGate> = k.word[index..end].to_vec();
    for g in &mut moved {
        match g {
            SkelGate::Coupon { pos: p, .. } | SkelGate::Act { pos: p, .. } => *p -= 1,
            _ => {}
        }
    }
    for j in 0..nlegs {
        moved.push(SkelGate::Cross {
            pos: pos + nlegs - 2 - j,
            over: true,
        });
    }
    let mut out = k.clone();
    out.word.splice(index..end, moved);
    checked(out)
}

/// Reverses the orientation of a 2-handle.
pub fn reverse_2handle(k: &KirbyDiagram, h2: &str) -> Result<KirbyDiagram, DiagramError> {
    if k.h2_index(h2).is_none() {
        return Err(DiagramError::Unknown2(h2.to_string()));
    }
    let mut out = k.clone();
    for g in &mut out.word {
        match g {
            SkelGate::Cup { wire, .. } if wire.h2 == h2 => wire.up = !wire.up,
            SkelGate::Coupon { legs, .. } => {
                for w in legs.iter_mut().filter(|w| w.h2 == h2) {
                    w.up = !w.up;
                }
            }
            _ => {}
        }
    }
    for h in &mut out.two_handles {
        if h.id == h2 {
            h.sheets = h.sheets.iter().rev().map(|(s, e)| (s.clone(), -e)).collect();
        }
    }
    for t in &mut out.three_handles {
        for (r, s) in &mut t.incidence {
            if r == h2 {
                *s = -*s;
            }
        }
    }
    checked(out)
}

/// Reverses the orientation of a 3-handle sphere.
pub fn reverse_3handle(k: &KirbyDiagram, h3: &str) -> Result<KirbyDiagram, DiagramError> {
    if k.h3_index(h3).is_none() {
        return Err(DiagramError::Unknown3(h3.to_string()));
    }
    let mut out = k.clone();
    let f = |(h, s): &SheetRef| vec![(h.clone(), if h == h3 { -s } else { *s })];
    map_all_sheet_words(&mut out, &f);
    for g in &mut out.word {
        if let SkelGate::Act { h3: h, sign, .. } = g {
            if h == h3 {
                *sign = -*sign;
            }
        }
    }
    for t in &mut out.three_handles {
        if t.id == h3 {
            for (_, s) in &mut t.incidence {
                *s = -*s;
            }
        }
    }
    checked(out)
}

pub fn apply(k: &KirbyDiagram, m: &MoveRecord) -> Result<KirbyDiagram, DiagramError> {
    match m {
        MoveRecord::Cancel12 { index, pos } => insert_cancelling_12(k, *index, *pos),
        MoveRecord::Cancel12Remove { handle } => remove_cancelling_12(k, *handle),
        MoveRecord::Cancel23 { index, pos } => insert_cancelling_23(k, *index, *pos),
        MoveRecord::Cancel23Remove { h3 } => remove_cancelling_23(k, h3),
        MoveRecord::Slide33 { a, b } => slide_33(k, a, b),
        MoveRecord::ThreeInfinity { h3 } => three_infinity(k, h3),
        MoveRecord::IsotopyR2 { index, pos, over } => insert_r2(k, *index, *pos, *over),
        MoveRecord::IsotopyR3 { index, pos, over } => insert_r3(k, *index, *pos, *over),
        MoveRecord::Snake { index, pos } => insert_snake(k, *index, *pos),
        MoveRecord::FoldPair { index, h3 } => insert_fold_pair(k, *index, h3),
        MoveRecord::CouponSlide { index } => coupon_slide(k, *index),
        MoveRecord::Reverse2 { h2 } => reverse_2handle(k, h2),
        MoveRecord::Reverse3 { h3 } => reverse_3handle(k, h3),
    }
}

/// Applies a script in order.
pub fn apply_script(k: &KirbyDiagram, script: &[MoveRecord]) -> Result<KirbyDiagram, DiagramError> {
    script.iter().try_fold(k.clone(), |acc, m| apply(&acc, m))
}

/// Every move applicable to `k` at some site (insertions at every gate boundary).
pub fn candidate_moves(k: &KirbyDiagram) -> Vec<MoveRecord> {
    let Ok(w) = widths(k) else { return vec![] };
    let mut out = Vec::new();
    for (index, &n) in w.iter().enumerate() {
        out.push(MoveRecord::Cancel12 { index, pos: 0 });
        out.push(MoveRecord::Cancel23 { index, pos: n });
        for pos in 0..n {
            out.push(MoveRecord::Snake { index, pos });
            for over in [true, false] {
                if pos + 2 <= n {
                    out.push(MoveRecord::IsotopyR2 { index, pos, over });
                }
                if pos + 3 <= n {
                    out.push(MoveRecord::IsotopyR3 { index, pos, over });
                }
            }
        }
        for t in &k.three_handles {
            out.push(MoveRecord::FoldPair {
                index,
                h3: t.id.clone(),
            });
        }
    }
    for (index, g) in k.word.iter().enumerate() {
        if matches!(g, SkelGate::Coupon { pos, .. } if *pos >= 1) {
            out.push(MoveRecord::CouponSlide { index });
        }
    }
    for h in 0..k.one_handles {
        out.push(MoveRecord::Cancel12Remove { handle: h });
    }
    for a in &k.three_handles {
        out.push(MoveRecord::Cancel23Remove { h3: a.id.clone() });
        out.push(MoveRecord::ThreeInfinity { h3: a.id.clone() });
        out.push(MoveRecord::Reverse3 { h3: a.id.clone() });
        for b in &k.three_handles {
            if a.id != b.id {
                out.push(MoveRecord::Slide33 {
                    a: a.id.clone(),
                    b: b.id.clone(),
                });
            }
        }
    }
    for h in &k.two_handles {
        out.push(MoveRecord::Reverse2 { h2: h.id.clone() });
    }
    out.retain(|m| apply(k, m).is_ok());
    out
}

/// The local isotopies among [`candidate_moves`].
pub fn isotopy_rewrites(k: &KirbyDiagram) -> Vec<(MoveRecord, KirbyDiagram)> {
    candidate_moves(k)
        .into_iter()
        .filter(|m| {
            matches!(
                m,
                MoveRecord::IsotopyR2 { .. }
                    | MoveRecord::IsotopyR3 { .. }
                    | MoveRecord::Snake { .. }
                    | MoveRecord::FoldPair { .. }
                    | MoveRecord::CouponSlide { .. }
            )
        })
        .filter_map(|m| apply(k, &m).ok().map(|d| (m, d)))
        .collect()
}

/// The reversed-orientation copy of every 2- and 3-handle at once.
pub fn reverse_all(k: &KirbyDiagram) -> Result<KirbyDiagram, DiagramError> {
    let mut out = k.clone();
    for h in &k.two_handles {
        out = reverse_2handle(&out, &h.id)?;
    }
    for t in &k.three_handles {
        out = reverse_3handle(&out, &t.id)?;
    }
    Ok(out)
}
