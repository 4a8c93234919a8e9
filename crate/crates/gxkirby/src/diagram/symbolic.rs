//! Symbolic run of a skeleton word: strands tracked by handle id, orientation and a
//! reduced act word in the free group on the 3-handles.

use std::collections::{BTreeMap, BTreeSet};

use super::{revflip_refs, KirbyDiagram, SheetRef, Side, SkelGate, WireRef};

pub type SymWire = WireRef;

/// Strands present just before a gate.
pub type Slice = Vec<SymWire>;

pub(crate) fn reduce(word: &[SheetRef]) -> Vec<SheetRef> {
    let mut out: Vec<SheetRef> = Vec::with_capacity(word.len());
    for (h, s) in word {
        if let Some((h0, s0)) = out.last() {
            if h0 == h && *s0 == -*s {
                out.pop();
                continue;
            }
        }
        out.push((h.clone(), *s));
    }
    out
}

pub(crate) fn inverse(word: &[SheetRef]) -> Vec<SheetRef> {
    word.iter().rev().map(|(h, s)| (h.clone(), -s)).collect()
}

fn concat(a: &[SheetRef], b: &[SheetRef]) -> Vec<SheetRef> {
    let mut v = a.to_vec();
    v.extend_from_slice(b);
    reduce(&v)
}

/// Degree of the object a strand carries, as a word: `w · deg(h₂)^± · w⁻¹`.
fn grade_word(k: &KirbyDiagram, w: &SymWire) -> Vec<SheetRef> {
    let d = reduce(&k.sheet_word(&w.h2));
    let d = if w.up { d } else { inverse(&d) };
    concat(&concat(&w.act, &d), &inverse(&w.act))
}

/// Whether `x` is a power of `d` after reduction.
fn is_power(x: &[SheetRef], d: &[SheetRef]) -> bool {
    if x.is_empty() {
        return true;
    }
    if d.is_empty() {
        return false;
    }
    let bound = x.len() / d.len() + 1;
    let mut p = Vec::new();
    let mut q = Vec::new();
    for _ in 0..bound {
        p = concat(&p, d);
        q = concat(&q, &inverse(d));
        if p == x || q == x {
            return true;
        }
    }
    false
}

type Fail = (Option<usize>, &'static str, String);

/// Runs the word symbolically. Returns the slice before every gate plus the final one.
pub fn simulate(k: &KirbyDiagram) -> Result<Vec<Slice>, Fail> {
    let mut cur: Slice = Vec::new();
    let mut out = Vec::with_capacity(k.word.len() + 1);
    let h2s: BTreeSet<&str> = k.two_handles.iter().map(|h| h.id.as_str()).collect();
    let h3s: BTreeSet<&str> = k.three_handles.iter().map(|h| h.id.as_str()).collect();
    let check_ref = |w: &WireRef, i: usize| -> Result<(), Fail> {
        if !h2s.contains(w.h2.as_str()) {
            return Err((Some(i), "handles", format!("unknown 2-handle {}", w.h2)));
        }
        for (h, s) in &w.act {
            if !h3s.contains(h.as_str()) || s.abs() != 1 {
                return Err((Some(i), "handles", format!("bad sheet ({h}, {s}) on a strand")));
            }
        }
        Ok(())
    };
    let mut prev_block: Option<(usize, usize)> = None;
    for (i, gate) in k.word.iter().enumerate() {
        out.push(cur.clone());
        let n = cur.len();
        let mut block = None;
        match gate {
            SkelGate::Cup { pos, wire } => {
                check_ref(wire, i)?;
                if *pos > n {
                    return Err((Some(i), "range", format!("cup at {pos} beyond width {n}")));
                }
                let w = SymWire {
                    act: reduce(&wire.act),
                    ..wire.clone()
                };
                cur.splice(*pos..*pos, [w.clone(), w.rev()]);
            }
            SkelGate::Cap { pos } => {
                if pos + 1 >= n {
                    return Err((Some(i), "range", format!("cap at {pos} beyond width {n}")));
                }
                let (l, r) = (&cur[*pos], &cur[pos + 1]);
                if l.h2 != r.h2 || l.up == r.up {
                    return Err((
                        Some(i),
                        "components",
                        format!("cap joins {}{} and {}{}", l.h2, arrow(l.up), r.h2, arrow(r.up)),
                    ));
                }
                let diff = concat(&inverse(&l.act), &r.act);
                if !is_power(&diff, &reduce(&k.sheet_word(&l.h2))) {
                    return Err((
                        Some(i),
                        "sheets",
                        format!("cap joins segments of {} under different sheets", l.h2),
                    ));
                }
                cur.drain(*pos..pos + 2);
            }
            SkelGate::Cross { pos, over } => {
                if pos + 1 >= n {
                    return Err((Some(i), "range", format!("crossing at {pos} beyond width {n}")));
                }
                let (w0, w1) = (cur[*pos].clone(), cur[pos + 1].clone());
                let (a, b) = if *over {
                    let g = grade_word(k, &w0);
                    (
                        SymWire {
                            act: concat(&g, &w1.act),
                            ..w1
                        },
                        w0,
                    )
                } else {
                    let g = inverse(&grade_word(k, &w1));
                    (
                        w1,
                        SymWire {
                            act: concat(&g, &w0.act),
                            ..w0
                        },
                    )
                };
                cur[*pos] = a;
                cur[pos + 1] = b;
            }
            SkelGate::Act { pos, len, h3, sign } => {
                if !h3s.contains(h3.as_str()) || sign.abs() != 1 {
                    return Err((Some(i), "handles", format!("act by unknown sheet ({h3}, {sign})")));
                }
                if pos + len > n {
                    return Err((Some(i), "range", format!("act on {pos}..{} beyond width {n}", pos + len)));
                }
                if let Some((q, m)) = prev_block {
                    let disjoint = pos + len <= q || q + m <= *pos;
                    let covers = *pos <= q && q + m <= pos + len;
                    if !disjoint && !covers {
                        return Err((
                            Some(i),
                            "sheets",
                            "act range cuts through the legs of the coupon below it".into(),
                        ));
                    }
                }
                for w in &mut cur[*pos..pos + len] {
                    w.act = concat(&[(h3.clone(), *sign)], &w.act);
                }
                // consecutive sheets over the same coupon stay checked against it
                block = prev_block;
            }
            SkelGate::Coupon { pos, handle, legs, .. } => {
                if *handle >= k.one_handles {
                    return Err((Some(i), "handles", format!("unknown 1-handle {handle}")));
                }
                if *pos > n {
                    return Err((Some(i), "range", format!("coupon at {pos} beyond width {n}")));
                }
                for w in legs {
                    check_ref(w, i)?;
                }
                let ws: Vec<SymWire> = legs
                    .iter()
                    .map(|w| SymWire {
                        act: reduce(&w.act),
                        ..w.clone()
                    })
                    .collect();
                cur.splice(*pos..*pos, ws);
                block = Some((*pos, legs.len()));
            }
        }
        prev_block = block;
    }
    out.push(cur);
    Ok(out)
}

fn arrow(up: bool) -> &'static str {
    if up {
        "↑"
    } else {
        "↓"
    }
}

/// Structural checks beyond [`simulate`].
pub(crate) fn check_word(k: &KirbyDiagram) -> Result<(), Fail> {
    let slices = simulate(k)?;
    let last = slices.last().expect("at least one slice");
    if !last.is_empty() {
        return Err((None, "closure", format!("word does not close: width {} at the end", last.len())));
    }
    let mut coupons: BTreeMap<(usize, Side), (usize, &Vec<WireRef>)> = BTreeMap::new();
    for (i, gate) in k.word.iter().enumerate() {
        if let SkelGate::Coupon { handle, side, legs, .. } = gate {
            if coupons.insert((*handle, *side), (i, legs)).is_some() {
                return Err((Some(i), "coupons", format!("1-handle {handle} has two {side:?} coupons")));
            }
        }
    }
    for h in 0..k.one_handles {
        match (coupons.get(&(h, Side::Phi)), coupons.get(&(h, Side::PhiTilde))) {
            (Some((_, a)), Some((j, b))) => {
                if revflip_refs(a) != **b {
                    return Err((
                        Some(*j),
                        "coupons",
                        format!("legs of 1-handle {h} are not reversed between its coupons"),
                    ));
                }
            }
            _ => return Err((None, "coupons", format!("1-handle {h} needs one φ and one φ̃ coupon"))),
        }
    }
    let mut seen = BTreeSet::new();
    for s in &slices {
        for w in s {
            seen.insert(w.h2.clone());
        }
    }
    for h in &k.two_handles {
        if !seen.contains(&h.id) {
            return Err((None, "components", format!("2-handle {} has no strand in the word", h.id)));
        }
    }
    Ok(())
}
