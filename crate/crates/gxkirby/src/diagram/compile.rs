//! From a skeleton word and a labelling to a concrete gate word.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use super::{degree_of_2handle, sheet_product, simulate, DiagramError, KirbyDiagram, Labelling, Side, SkelGate, WireRef};
use crate::gxcat::{CategoryData, Label};
use crate::treecalc::{dual_basis, CouponDir, DiagramState, DualBasis, Gate, TreeError, WireState};

/// Dual bases keyed by leg list, shared across the terms of one sum.
#[derive(Default)]
pub struct DualBasisCache {
    map: HashMap<Vec<WireState>, Arc<DualBasis>>,
}

impl DualBasisCache {
    pub fn new() -> DualBasisCache {
        DualBasisCache::default()
    }

    pub fn get(&mut self, c: &CategoryData, legs: &[WireState]) -> Result<Arc<DualBasis>, TreeError> {
        if let Some(b) = self.map.get(legs) {
            return Ok(b.clone());
        }
        let b = Arc::new(dual_basis(c, legs)?);
        self.map.insert(legs.to_vec(), b.clone());
        Ok(b)
    }
}

/// Blackboard writhe of each 2-handle: signed self-crossings.
pub fn writhes(k: &KirbyDiagram) -> Result<BTreeMap<String, i64>, DiagramError> {
    let slices = simulate(k).map_err(|(_, _, m)| DiagramError::Invalid(m))?;
    let mut out: BTreeMap<String, i64> = k.two_handles.iter().map(|h| (h.id.clone(), 0)).collect();
    for (gate, s) in k.word.iter().zip(&slices) {
        if let SkelGate::Cross { pos, over } = gate {
            let (a, b) = (&s[*pos], &s[pos + 1]);
            if a.h2 == b.h2 {
                let o = |u: bool| if u { 1 } else { -1 };
                let sign = if *over { 1 } else { -1 } * o(a.up) * o(b.up);
                *out.get_mut(&a.h2).expect("known handle") += sign;
            }
        }
    }
    Ok(out)
}

fn concrete(c: &CategoryData, l: &Labelling, w: &WireRef) -> Result<WireState, DiagramError> {
    let x = *l.x.get(&w.h2).ok_or_else(|| DiagramError::Labelling(format!("no label on {}", w.h2)))?;
    let g = sheet_product(c, &w.act, &l.g)?;
    Ok(WireState {
        label: c.act(g, x),
        up: w.up,
    })
}

/// Concrete φ legs of every 1-handle.
pub fn handle_legs(k: &KirbyDiagram, c: &CategoryData, l: &Labelling) -> Result<Vec<Vec<WireState>>, DiagramError> {
    let mut out = vec![None; k.one_handles];
    for gate in &k.word {
        if let SkelGate::Coupon {
            handle,
            side: Side::Phi,
            legs,
            ..
        } = gate
        {
            let ws = legs.iter().map(|w| concrete(c, l, w)).collect::<Result<Vec<_>, _>>()?;
            out[*handle] = Some(ws);
        }
    }
    out.into_iter()
        .enumerate()
        .map(|(h, v)| v.ok_or_else(|| DiagramError::Invalid(format!("1-handle {h} has no φ coupon"))))
        .collect()
}

/// Checks the typing relations deg X(h₂) = deg(h₂).
pub fn check_typing(k: &KirbyDiagram, c: &CategoryData, l: &Labelling) -> Result<(), DiagramError> {
    for h in &k.two_handles {
        let x: Label = *l.x.get(&h.id).ok_or_else(|| DiagramError::Labelling(format!("no label on {}", h.id)))?;
        if x >= c.rank() {
            return Err(DiagramError::Labelling(format!("label {x} out of range")));
        }
        let d = degree_of_2handle(k, c, &h.id, &l.g)?;
        if c.grade(x) != d {
            return Err(DiagramError::Typing {
                h2: h.id.clone(),
                expected: d,
                found: c.grade(x),
            });
        }
    }
    for h in &k.three_handles {
        match l.g.get(&h.id) {
            Some(&g) if g < c.group().order => {}
            _ => return Err(DiagramError::Labelling(format!("3-handle {} needs a group label", h.id))),
        }
    }
    if l.iota.len() != k.one_handles {
        return Err(DiagramError::Labelling(format!(
            "{} basis indices for {} 1-handles",
            l.iota.len(),
            k.one_handles
        )));
    }
    Ok(())
}

fn zero_word() -> Vec<Gate> {
    vec![Gate::Coupon {
        pos: 0,
        dir: CouponDir::Out,
        vector: Arc::new(DiagramState::zero(vec![])),
    }]
}

fn kink(pos: usize, wire: WireState, positive: bool) -> [Gate; 3] {
    [
        Gate::Cup {
            pos: pos + 1,
            wire: wire.rev(),
        },
        Gate::Cross { pos, over: !positive },
        Gate::Cap { pos },
    ]
}

pub fn compile(k: &KirbyDiagram, l: &Labelling, c: &CategoryData) -> Result<Vec<Gate>, DiagramError> {
    compile_with(k, l, c, &mut DualBasisCache::new())
}

/// Substitutes labels, coupon vectors and group elements into the word, and adds
/// `framing − writhe` curls on every 2-handle.
pub fn compile_with(
    k: &KirbyDiagram,
    l: &Labelling,
    c: &CategoryData,
    cache: &mut DualBasisCache,
) -> Result<Vec<Gate>, DiagramError> {
    check_typing(k, c, l)?;
    let legs = handle_legs(k, c, l)?;
    let mut bases = Vec::with_capacity(legs.len());
    for (h, lg) in legs.iter().enumerate() {
        let b = cache.get(c, lg)?;
        if b.dim() == 0 {
            return Ok(zero_word());
        }
        if l.iota[h] >= b.dim() {
            return Err(DiagramError::Labelling(format!(
                "basis index {} for 1-handle {h} exceeds dimension {}",
                l.iota[h],
                b.dim()
            )));
        }
        bases.push(b);
    }
    let w = writhes(k)?;
    let mut pending: BTreeMap<&str, i64> = k
        .two_handles
        .iter()
        .map(|h| (h.id.as_str(), h.framing - w[&h.id]))
        .filter(|(_, n)| *n != 0)
        .collect();

    let mut out = Vec::with_capacity(k.word.len());
    for gate in &k.word {
        // strand available right after this gate, for framing curls
        let mut fresh: Vec<(usize, &WireRef)> = Vec::new();
        match gate {
            SkelGate::Cup { pos, wire } => {
                out.push(Gate::Cup {
                    pos: *pos,
                    wire: concrete(c, l, wire)?,
                });
                fresh.push((*pos, wire));
            }
            SkelGate::Cap { pos } => out.push(Gate::Cap { pos: *pos }),
            SkelGate::Cross { pos, over } => out.push(Gate::Cross { pos: *pos, over: *over }),
            SkelGate::Act { pos, len, h3, sign } => {
                let g = *l.g.get(h3).ok_or_else(|| DiagramError::Unknown3(h3.clone()))?;
                out.push(Gate::Act {
                    pos: *pos,
                    len: *len,
                    g,
                    inverse: *sign < 0,
                });
            }
            SkelGate::Coupon {
                pos,
                handle,
                side,
                legs: lg,
            } => {
                let b = &bases[*handle];
                let i = l.iota[*handle];
                let v = match side {
                    Side::Phi => b.phi[i].clone(),
                    Side::PhiTilde => b.phi_tilde[i].clone(),
                };
                out.push(Gate::Coupon {
                    pos: *pos,
                    dir: CouponDir::Out,
                    vector: Arc::new(v),
                });
                fresh.extend(lg.iter().enumerate().map(|(j, w)| (pos + j, w)));
            }
        }
        for (p, wr) in fresh {
            if let Some(n) = pending.remove(wr.h2.as_str()) {
                let ws = concrete(c, l, wr)?;
                for _ in 0..n.unsigned_abs() {
                    out.extend(kink(p, ws, n > 0));
                }
            }
        }
    }
    Ok(out)
}
