//! Evaluation of planar gate words in the graphical calculus.
//!
//! A state at a horizontal slice is a vector in `Hom(I, x_1 ⊗ … ⊗ x_n)` written
//! in the left-parenthesised splitting-tree basis: internal labels
//! `y_0 = I, y_1 = x_1, …, y_n = I` with vertices `y_k → y_{k-1} ⊗ x_k`.

mod lemmas;
mod spaces;

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::gxcat::{CategoryData, GroupElem, Label, UNIT};
use crate::scalars::{Scalar, ScalarError};

pub use lemmas::{
    apply_encircle, double_braiding, encircle, encircle_chain, kink_word, loop_word,
    twist_from_kink, unit_projector_word,
};
pub use spaces::{
    dual_basis, morphism_space_basis, morphism_space_dim, pairing, pairing_gram, revflip,
    DualBasis,
};

/// A strand at a slice: label `X`, evaluated as `X` when up and `X*` when down.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct WireState {
    pub label: Label,
    pub up: bool,
}

impl WireState {
    pub fn up(label: Label) -> WireState {
        WireState { label, up: true }
    }

    pub fn down(label: Label) -> WireState {
        WireState { label, up: false }
    }

    /// The same strand traversed the other way.
    pub fn rev(self) -> WireState {
        WireState {
            label: self.label,
            up: !self.up,
        }
    }

    pub fn object(self, c: &CategoryData) -> Label {
        if self.up {
            self.label
        } else {
            c.dual(self.label)
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CouponDir {
    /// Emits the vector's legs upwards.
    Out,
    /// Absorbs strands equal to the reversed, flipped legs.
    In,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Gate {
    Cup { pos: usize, wire: WireState },
    Cap { pos: usize },
    /// `over`: the left strand passes over, i.e. the crossed braiding c_{x,y}.
    Cross { pos: usize, over: bool },
    /// Applies the action functor `T_g` (or its inverse) to strands `pos..pos+len`.
    Act {
        pos: usize,
        len: usize,
        g: GroupElem,
        inverse: bool,
    },
    Coupon {
        pos: usize,
        dir: CouponDir,
        vector: Arc<DiagramState>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TreeError {
    #[error("gate {gate} out of range for width {width}")]
    Position { gate: String, width: usize },
    #[error("cap at {pos} joins {left:?} and {right:?}, which are not one strand")]
    CapMismatch {
        pos: usize,
        left: WireState,
        right: WireState,
    },
    #[error("coupon at {pos} expects strands {expected:?}, found {found:?}")]
    CouponMismatch {
        pos: usize,
        expected: Vec<WireState>,
        found: Vec<WireState>,
    },
    #[error("action at {pos} covers strands of nontrivial total charge")]
    ActCharge { pos: usize },
    #[error("word ends at width {0}, not 0")]
    NotClosed(usize),
    #[error("braiding coefficient R[{0},{1},{2}] vanishes")]
    SingularBraiding(Label, Label, Label),
    #[error("pairing matrix is singular on {0:?}")]
    SingularGram(Vec<WireState>),
    #[error("{0}")]
    Grade(String),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

/// A linear combination of basis trees over a fixed list of strands.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagramState {
    pub leaves: Vec<WireState>,
    /// internal labels `y_0..y_n` → coefficient
    pub terms: BTreeMap<Vec<Label>, Scalar>,
}

impl fmt::Debug for DiagramState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} ", self.leaves)?;
        f.debug_map().entries(self.terms.iter()).finish()
    }
}

impl DiagramState {
    /// The empty diagram, i.e. 1 ∈ Hom(I, I).
    pub fn vacuum(c: &CategoryData) -> DiagramState {
        DiagramState::basis(c, vec![], vec![UNIT])
    }

    pub fn basis(c: &CategoryData, leaves: Vec<WireState>, internal: Vec<Label>) -> DiagramState {
        let mut terms = BTreeMap::new();
        terms.insert(internal, c.one());
        DiagramState { leaves, terms }
    }

    pub fn zero(leaves: Vec<WireState>) -> DiagramState {
        DiagramState {
            leaves,
            terms: BTreeMap::new(),
        }
    }

    pub fn width(&self) -> usize {
        self.leaves.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, internal: Vec<Label>, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let v = match self.terms.remove(&internal) {
            Some(old) => old + c,
            None => c,
        };
        if !v.is_zero() {
            self.terms.insert(internal, v);
        }
    }

    pub fn scaled(&self, k: &Scalar) -> DiagramState {
        let mut out = DiagramState::zero(self.leaves.clone());
        for (y, v) in &self.terms {
            out.add_term(y.clone(), v * k);
        }
        out
    }

    /// Sum of two states over the same strands.
    pub fn plus(&self, other: &DiagramState) -> DiagramState {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        debug_assert_eq!(self.leaves, other.leaves);
        let mut out = self.clone();
        for (y, v) in &other.terms {
            out.add_term(y.clone(), v.clone());
        }
        out
    }

    pub fn coefficient(&self, internal: &[Label]) -> Option<&Scalar> {
        self.terms.get(internal)
    }

    /// Value of a width-0 state.
    pub fn scalar(&self, c: &CategoryData) -> Scalar {
        debug_assert!(self.leaves.is_empty());
        self.terms.get(&vec![UNIT]).cloned().unwrap_or_else(|| c.zero())
    }
}

fn pos_err(gate: &Gate, width: usize) -> TreeError {
    TreeError::Position {
        gate: format!("{gate:?}"),
        width,
    }
}

/// Re-expresses a block tree hanging off `a` into the left-parenthesised basis.
///
/// The block has leaves `w[0..k]` with internal labels `z[0..k]` (`z[0] = w[0]`,
/// `z[j] → z[j-1] ⊗ w[j]`), attached by the vertex `top → a ⊗ z[k-1]`.
/// Returns the new internal labels `y_{p+1}..y_{p+k}` (the last equal to `top`).
fn emit(c: &CategoryData, a: Label, top: Label, z: &[Label], w: &[Label]) -> Vec<(Vec<Label>, Scalar)> {
    let k = z.len();
    if k == 1 {
        return vec![(vec![top], c.one())];
    }
    let mut out = Vec::new();
    for &e in c.products(a, z[k - 2]) {
        if !c.admissible(e, w[k - 1], top) {
            continue;
        }
        let coef = c.finv([a, z[k - 2], w[k - 1], top, z[k - 1], e]);
        if coef.is_zero() {
            continue;
        }
        for (mut ys, v) in emit(c, a, e, &z[..k - 1], &w[..k - 1]) {
            ys.push(top);
            out.push((ys, &v * coef));
        }
    }
    out
}

/// Inverse of [`emit`]: splits off leaves `p..p+k` of one basis tree as a block.
/// Returns `(z, coefficient)` with `z[k-1]` the block's total charge.
fn isolate(c: &CategoryData, objs: &[Label], y: &[Label], p: usize, k: usize) -> Vec<(Vec<Label>, Scalar)> {
    let a = y[p];
    let mut partial: Vec<(Vec<Label>, Scalar)> = vec![(vec![objs[p]], c.one())];
    for j in 1..k {
        let x = objs[p + j];
        let e = y[p + j];
        let d = y[p + j + 1];
        let mut next = Vec::new();
        for (z, v) in partial {
            let zl = *z.last().unwrap();
            for &f in c.products(zl, x) {
                if !c.admissible(a, f, d) {
                    continue;
                }
                let coef = c.f([a, zl, x, d, e, f]);
                if coef.is_zero() {
                    continue;
                }
                let mut z2 = z.clone();
                z2.push(f);
                next.push((z2, &v * coef));
            }
        }
        partial = next;
    }
    partial
}

fn objects(c: &CategoryData, leaves: &[WireState]) -> Vec<Label> {
    leaves.iter().map(|w| w.object(c)).collect()
}

fn splice(y: &[Label], p: usize, remove: usize, insert: &[Label]) -> Vec<Label> {
    let mut out = Vec::with_capacity(y.len() + insert.len());
    out.extend_from_slice(&y[..=p]);
    out.extend_from_slice(insert);
    out.extend_from_slice(&y[p + 1 + remove..]);
    out
}

fn out_coupon(c: &CategoryData, s: &DiagramState, pos: usize, v: &DiagramState) -> DiagramState {
    let mut leaves = s.leaves.clone();
    leaves.splice(pos..pos, v.leaves.iter().copied());
    let mut out = DiagramState::zero(leaves);
    let k = v.leaves.len();
    if k == 0 {
        let k0 = v.terms.get(&vec![UNIT]).cloned().unwrap_or_else(|| c.zero());
        return s.scaled(&k0);
    }
    let w = objects(c, &v.leaves);
    for (y, sv) in &s.terms {
        let a = y[pos];
        for (u, vv) in &v.terms {
            let coef = sv * vv;
            for (ys, e) in emit(c, a, a, &u[1..], &w) {
                out.add_term(splice(y, pos, 0, &ys), &coef * &e);
            }
        }
    }
    out
}

/// Applies one gate. Inadmissible channels simply drop out of the sum.
pub fn apply_gate(c: &CategoryData, s: &DiagramState, gate: &Gate) -> Result<DiagramState, TreeError> {
    let n = s.width();
    match gate {
        Gate::Cup { pos, wire } => {
            let p = *pos;
            if p > n || wire.label >= c.rank() {
                return Err(pos_err(gate, n));
            }
            let a = wire.object(c);
            let ad = wire.rev().object(c);
            let k = if wire.up {
                c.one()
            } else {
                c.pivotal(wire.label).clone()
            };
            let mut leaves = s.leaves.clone();
            leaves.splice(p..p, [*wire, wire.rev()]);
            let mut out = DiagramState::zero(leaves);
            for (y, v) in &s.terms {
                let yp = y[p];
                for &e in c.products(yp, a) {
                    if !c.admissible(e, ad, yp) {
                        continue;
                    }
                    let coef = c.finv([yp, a, ad, yp, UNIT, e]);
                    out.add_term(splice(y, p, 0, &[e, yp]), v * &k * coef);
                }
            }
            Ok(out)
        }
        Gate::Cap { pos } => {
            let p = *pos;
            if p + 1 >= n {
                return Err(pos_err(gate, n));
            }
            let (l, r) = (s.leaves[p], s.leaves[p + 1]);
            if r != l.rev() {
                return Err(TreeError::CapMismatch {
                    pos: p,
                    left: l,
                    right: r,
                });
            }
            let x1 = l.object(c);
            let x2 = r.object(c);
            let k = if l.up {
                c.qdim(l.label).clone()
            } else {
                c.qdim(l.label).try_div(c.pivotal(l.label))?
            };
            let mut leaves = s.leaves.clone();
            leaves.drain(p..p + 2);
            let mut out = DiagramState::zero(leaves);
            for (y, v) in &s.terms {
                let (a, b, d) = (y[p], y[p + 1], y[p + 2]);
                if a != d {
                    continue;
                }
                let coef = c.f([a, x1, x2, d, b, UNIT]);
                if coef.is_zero() {
                    continue;
                }
                let mut y2 = y.clone();
                y2.drain(p + 1..p + 3);
                out.add_term(y2, v * &k * coef);
            }
            Ok(out)
        }
        Gate::Cross { pos, over } => {
            let p = *pos;
            if p + 1 >= n {
                return Err(pos_err(gate, n));
            }
            let (w0, w1) = (s.leaves[p], s.leaves[p + 1]);
            let x = w0.object(c);
            let y = w1.object(c);
            let (nw0, nw1) = if *over {
                let g = c.grade(x);
                (WireState { label: c.act(g, w1.label), up: w1.up }, w0)
            } else {
                let g = c.group().inv(c.grade(y));
                (w1, WireState { label: c.act(g, w0.label), up: w0.up })
            };
            let (ox, oy) = (nw0.object(c), nw1.object(c));
            let mut leaves = s.leaves.clone();
            leaves[p] = nw0;
            leaves[p + 1] = nw1;
            let mut out = DiagramState::zero(leaves);
            for (yv, v) in &s.terms {
                let (a, b, d) = (yv[p], yv[p + 1], yv[p + 2]);
                for &f in c.products(x, y) {
                    if !c.admissible(a, f, d) {
                        continue;
                    }
                    let c1 = c.f([a, x, y, d, b, f]);
                    if c1.is_zero() {
                        continue;
                    }
                    let r = if *over {
                        c.r(x, y, f).clone()
                    } else {
                        let r = c.r(ox, oy, f);
                        if r.is_zero() {
                            return Err(TreeError::SingularBraiding(ox, oy, f));
                        }
                        r.inverse()?
                    };
                    let k = v * c1 * r;
                    for &e in c.products(a, ox) {
                        if !c.admissible(e, oy, d) {
                            continue;
                        }
                        let c2 = c.finv([a, ox, oy, d, f, e]);
                        if c2.is_zero() {
                            continue;
                        }
                        let mut y2 = yv.clone();
                        y2[p + 1] = e;
                        out.add_term(y2, &k * c2);
                    }
                }
            }
            Ok(out)
        }
        Gate::Act { pos, len, g, inverse } => {
            let (p, k, g) = (*pos, *len, *g);
            if p + k > n || g >= c.group().order {
                return Err(pos_err(gate, n));
            }
            if k == 0 {
                return Ok(s.clone());
            }
            let objs = objects(c, &s.leaves);
            let h = if *inverse { c.group().inv(g) } else { g };
            let mut leaves = s.leaves.clone();
            for w in &mut leaves[p..p + k] {
                w.label = c.act(h, w.label);
            }
            let new_objs = objects(c, &leaves[p..p + k]);
            // charge is checked after regrouping, since per-term channels can cancel
            let mut grouped: BTreeMap<(Vec<Label>, Vec<Label>), Scalar> = BTreeMap::new();
            for (y, v) in &s.terms {
                for (z, zv) in isolate(c, &objs, y, p, k) {
                    let outer = splice(y, p, k - 1, &[]);
                    let e = grouped.entry((outer, z)).or_insert_with(|| c.zero());
                    *e = &*e + &(v * &zv);
                }
            }
            let mut out = DiagramState::zero(leaves);
            for ((y, z), v) in grouped {
                if v.is_zero() {
                    continue;
                }
                if z[k - 1] != UNIT {
                    return Err(TreeError::ActCharge { pos: p });
                }
                let z2: Vec<Label> = z.iter().map(|&l| c.act(h, l)).collect();
                let mut u = c.one();
                for j in 1..k {
                    if *inverse {
                        u = u * c.u(g, z2[j - 1], new_objs[j], z2[j]);
                    } else {
                        u = u * c.u(g, z[j - 1], objs[p + j], z[j]);
                    }
                }
                let coef = if *inverse { v.try_div(&u)? } else { v * u };
                let a = y[p];
                for (ys, e) in emit(c, a, a, &z2, &new_objs) {
                    out.add_term(splice(&y, p, 1, &ys), &coef * &e);
                }
            }
            Ok(out)
        }
        Gate::Coupon { pos, dir, vector } => {
            let p = *pos;
            let k = vector.leaves.len();
            match dir {
                CouponDir::Out => {
                    if p > n {
                        return Err(pos_err(gate, n));
                    }
                    Ok(out_coupon(c, s, p, vector))
                }
                CouponDir::In => {
                    if p + k > n {
                        return Err(pos_err(gate, n));
                    }
                    let expected = revflip(&vector.leaves);
                    if s.leaves[p..p + k] != expected[..] {
                        return Err(TreeError::CouponMismatch {
                            pos: p,
                            expected,
                            found: s.leaves[p..p + k].to_vec(),
                        });
                    }
                    let mut st = out_coupon(c, s, p + k, vector);
                    for j in 0..k {
                        st = apply_gate(c, &st, &Gate::Cap { pos: p + k - 1 - j })?;
                    }
                    Ok(st)
                }
            }
        }
    }
}

pub fn apply_word(c: &CategoryData, s: &DiagramState, word: &[Gate]) -> Result<DiagramState, TreeError> {
    let mut st = s.clone();
    for g in word {
        st = apply_gate(c, &st, g)?;
    }
    Ok(st)
}

/// Applies a formal sum of words to a state.
pub fn apply_sum(c: &CategoryData, s: &DiagramState, words: &[Vec<Gate>]) -> Result<DiagramState, TreeError> {
    let mut acc: Option<DiagramState> = None;
    for w in words {
        let r = apply_word(c, s, w)?;
        acc = Some(match acc {
            None => r,
            Some(a) => a.plus(&r),
        });
    }
    Ok(acc.unwrap_or_else(|| DiagramState::zero(s.leaves.clone())))
}

/// Evaluates a closed word starting from the empty diagram.
pub fn evaluate_closed(c: &CategoryData, word: &[Gate]) -> Result<Scalar, TreeError> {
    let st = apply_word(c, &DiagramState::vacuum(c), word)?;
    if st.width() != 0 {
        return Err(TreeError::NotClosed(st.width()));
    }
    Ok(st.scalar(c))
}
