//! Standard words: loops, kinks, encirclings, double braidings and the unit projector.

use std::collections::BTreeMap;
use std::sync::Arc;

use super::{
    apply_gate, apply_word, dual_basis, evaluate_closed, CouponDir, DiagramState, Gate, TreeError,
    WireState,
};
use crate::gxcat::{CategoryData, FusionElement, Label, UNIT};
use crate::scalars::Scalar;

/// A single closed loop on `wire`.
pub fn loop_word(wire: WireState) -> Vec<Gate> {
    vec![Gate::Cup { pos: 0, wire }, Gate::Cap { pos: 0 }]
}

/// A curl on the strand at `pos` (which must be the up-oriented `label`).
/// `positive` gives writhe +1, i.e. the strand picks up θ.
pub fn kink_word(label: Label, pos: usize, positive: bool) -> Vec<Gate> {
    vec![
        Gate::Cup {
            pos: pos + 1,
            wire: WireState::down(label),
        },
        Gate::Cross {
            pos,
            over: !positive,
        },
        Gate::Cap { pos },
    ]
}

/// The twist θ_X read off from a +1 curl on a closed X loop.
pub fn twist_from_kink(c: &CategoryData, label: Label, positive: bool) -> Result<Scalar, TreeError> {
    let mut word = vec![Gate::Cup {
        pos: 0,
        wire: WireState::up(label),
    }];
    word.extend(kink_word(label, 0, positive));
    word.push(Gate::Cap { pos: 0 });
    Ok(evaluate_closed(c, &word)?.try_div(c.qdim(label))?)
}

/// Channelwise coefficients of c_{ᵍb,a} ∘ c_{a,b} on `a ⊗ b`, for pairs where
/// the composite returns to `a ⊗ b` (e.g. either object of trivial grade acting trivially).
pub fn double_braiding(c: &CategoryData, a: Label, b: Label) -> Result<BTreeMap<Label, Scalar>, TreeError> {
    let mut out = BTreeMap::new();
    for &f in c.products(a, b) {
        let leaves = vec![WireState::up(a), WireState::up(b), WireState::down(f)];
        let s = DiagramState::basis(c, leaves.clone(), vec![UNIT, a, f, UNIT]);
        let cross = Gate::Cross { pos: 0, over: true };
        let t = apply_word(c, &s, &[cross.clone(), cross])?;
        if t.leaves != leaves {
            return Err(TreeError::Grade(format!(
                "double braiding of {a} and {b} does not return to the same objects"
            )));
        }
        let v = t
            .coefficient(&[UNIT, a, f, UNIT])
            .cloned()
            .unwrap_or_else(|| c.zero());
        out.insert(f, v);
    }
    Ok(out)
}

fn require_pure(c: &CategoryData, b: &FusionElement) -> Result<(), TreeError> {
    if !b.is_zero() && b.pure_grade(c).is_none() {
        return Err(TreeError::Grade("encircling colour must have a single grade".into()));
    }
    Ok(())
}

/// Threads the strand at `pos` through a loop coloured by `b`.
pub fn apply_encircle(
    c: &CategoryData,
    s: &DiagramState,
    pos: usize,
    b: &FusionElement,
) -> Result<DiagramState, TreeError> {
    require_pure(c, b)?;
    let mut acc: Option<DiagramState> = None;
    for (&x, k) in &b.coeffs {
        let word = [
            Gate::Cup {
                pos: pos + 1,
                wire: WireState::up(x),
            },
            Gate::Cross { pos, over: true },
            Gate::Cross { pos, over: true },
            Gate::Cap { pos: pos + 1 },
        ];
        let t = apply_word(c, s, &word)?.scaled(k);
        acc = Some(match acc {
            None => t,
            Some(a) => a.plus(&t),
        });
    }
    Ok(acc.unwrap_or_else(|| DiagramState::zero(s.leaves.clone())))
}

/// Composite of encirclings Δ_{A,B_n} ∘ … ∘ Δ_{A,B_1} on a simple strand `a`, as a scalar
/// multiple of the identity. Zero whenever the composite lands on a different simple.
pub fn encircle_chain(c: &CategoryData, a: Label, colours: &[FusionElement]) -> Result<Scalar, TreeError> {
    if c.grade(a) != c.group().identity() {
        return Err(TreeError::Grade(format!(
            "encircled strand {} must have trivial grade",
            c.simple(a).name
        )));
    }
    let mut s = apply_gate(
        c,
        &DiagramState::vacuum(c),
        &Gate::Cup {
            pos: 0,
            wire: WireState::up(a),
        },
    )?;
    for b in colours {
        s = apply_encircle(c, &s, 0, b)?;
        if s.is_zero() {
            return Ok(c.zero());
        }
    }
    if s.leaves[0] != WireState::up(a) {
        return Ok(c.zero());
    }
    let v = apply_gate(c, &s, &Gate::Cap { pos: 0 })?.scalar(c);
    Ok(v.try_div(c.qdim(a))?)
}

/// Δ_{A,B}: the scalar by which a `b`-loop acts on the grade-e simple strand `a`.
pub fn encircle(c: &CategoryData, a: Label, b: &FusionElement) -> Result<Scalar, TreeError> {
    encircle_chain(c, a, std::slice::from_ref(b))
}

/// π^I on the strands `wires` at `pos`, as a formal sum of words.
pub fn unit_projector_word(c: &CategoryData, wires: &[WireState], pos: usize) -> Result<Vec<Vec<Gate>>, TreeError> {
    let db = dual_basis(c, wires)?;
    Ok(db
        .phi
        .iter()
        .zip(&db.phi_tilde)
        .map(|(phi, tilde)| {
            vec![
                Gate::Coupon {
                    pos,
                    dir: CouponDir::In,
                    vector: Arc::new(tilde.clone()),
                },
                Gate::Coupon {
                    pos,
                    dir: CouponDir::Out,
                    vector: Arc::new(phi.clone()),
                },
            ]
        })
        .collect())
}
