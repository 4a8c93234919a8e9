//! Morphism spaces ⟨A₁ ⊗ … ⊗ Aₙ⟩ = Hom(I, A₁ ⊗ … ⊗ Aₙ), their pairing and dual bases.

use std::sync::Arc;

use super::{evaluate_closed, CouponDir, DiagramState, Gate, TreeError, WireState};
use crate::gxcat::{CategoryData, Label, UNIT};
use crate::scalars::{invert_matrix, Scalar};

/// Reverses the order of strands and flips each orientation: the leg list
/// seen from the other attaching ball of a 1-handle.
pub fn revflip(legs: &[WireState]) -> Vec<WireState> {
    legs.iter().rev().map(|w| w.rev()).collect()
}

/// Basis trees of ⟨legs⟩ in lexicographic order of internal labels.
pub fn morphism_space_basis(c: &CategoryData, legs: &[WireState]) -> Vec<DiagramState> {
    let objs: Vec<Label> = legs.iter().map(|w| w.object(c)).collect();
    let mut out = Vec::new();
    let mut stack = vec![UNIT];
    fn rec(c: &CategoryData, objs: &[Label], stack: &mut Vec<Label>, out: &mut Vec<Vec<Label>>) {
        let k = stack.len() - 1;
        if k == objs.len() {
            if *stack.last().unwrap() == UNIT {
                out.push(stack.clone());
            }
            return;
        }
        let prev = *stack.last().unwrap();
        for &y in c.products(prev, objs[k]) {
            stack.push(y);
            rec(c, objs, stack, out);
            stack.pop();
        }
    }
    let mut trees = Vec::new();
    rec(c, &objs, &mut stack, &mut trees);
    for t in trees {
        out.push(DiagramState::basis(c, legs.to_vec(), t));
    }
    out
}

pub fn morphism_space_dim(c: &CategoryData, legs: &[WireState]) -> usize {
    morphism_space_basis(c, legs).len()
}

/// Closes `tilde ∈ ⟨revflip(L)⟩` against `phi ∈ ⟨L⟩` through a 1-handle.
pub fn pairing(c: &CategoryData, tilde: &DiagramState, phi: &DiagramState) -> Result<Scalar, TreeError> {
    let word = [
        Gate::Coupon {
            pos: 0,
            dir: CouponDir::Out,
            vector: Arc::new(tilde.clone()),
        },
        Gate::Coupon {
            pos: 0,
            dir: CouponDir::In,
            vector: Arc::new(phi.clone()),
        },
    ];
    evaluate_closed(c, &word)
}

/// `G[i][j] = pairing(α̃_i, α_j)` for the standard bases of ⟨revflip(L)⟩ and ⟨L⟩.
pub fn pairing_gram(c: &CategoryData, legs: &[WireState]) -> Result<Vec<Vec<Scalar>>, TreeError> {
    let alpha = morphism_space_basis(c, legs);
    let alpha_t = morphism_space_basis(c, &revflip(legs));
    alpha_t
        .iter()
        .map(|t| alpha.iter().map(|a| pairing(c, t, a)).collect())
        .collect()
}

/// Paired bases with `pairing(phi_tilde[i], phi[j]) = δ_ij`.
#[derive(Clone, Debug, PartialEq)]
pub struct DualBasis {
    pub legs: Vec<WireState>,
    pub phi: Vec<DiagramState>,
    pub phi_tilde: Vec<DiagramState>,
}

impl DualBasis {
    pub fn dim(&self) -> usize {
        self.phi.len()
    }
}

pub fn dual_basis(c: &CategoryData, legs: &[WireState]) -> Result<DualBasis, TreeError> {
    let alpha = morphism_space_basis(c, legs);
    let alpha_t = morphism_space_basis(c, &revflip(legs));
    if alpha.len() != alpha_t.len() {
        return Err(TreeError::SingularGram(legs.to_vec()));
    }
    if alpha.is_empty() {
        return Ok(DualBasis {
            legs: legs.to_vec(),
            phi: vec![],
            phi_tilde: vec![],
        });
    }
    let gram = pairing_gram(c, legs)?;
    let inv = invert_matrix(&gram, c.conductor()).map_err(|_| TreeError::SingularGram(legs.to_vec()))?;
    // φ̃_i = Σ_k (G⁻¹)_{ik} α̃_k
    let phi_tilde = inv
        .iter()
        .map(|row| {
            let mut v = DiagramState::zero(revflip(legs));
            for (k, coef) in row.iter().enumerate() {
                v = v.plus(&alpha_t[k].scaled(coef));
            }
            v
        })
        .collect();
    Ok(DualBasis {
        legs: legs.to_vec(),
        phi: alpha,
        phi_tilde,
    })
}
