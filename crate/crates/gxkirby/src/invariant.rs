//! The invariant I_C of a Kirby diagram, and the quantities derived from it.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::diagram::{
    compile_with, degree_of_2handle, handle_legs, validate_diagram, DiagramError, DualBasisCache, KirbyDiagram,
    Labelling, SheetLabels,
};
use crate::gxcat::{CategoryData, CategoryError, GroupElem, Label};
use crate::manifolds::builtin;
use crate::scalars::{Scalar, ScalarError};
use crate::treecalc::evaluate_closed;

#[derive(Debug, thiserror::Error)]
pub enum InvariantError {
    #[error("{0}")]
    InvalidDiagram(String),
    #[error("category has no simple objects")]
    EmptyCategory,
    #[error("diagram has 3-handles")]
    HasThreeHandles,
    #[error("{0}")]
    Hypothesis(String),
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error(transparent)]
    Category(#[from] CategoryError),
    #[error("thread pool: {0}")]
    Threads(String),
}

#[derive(Clone, Debug, Default)]
pub struct InvariantOptions {
    pub keep_contributions: bool,
    /// Worker threads for the sum over 3-handle labellings; `None` uses rayon's default.
    pub threads: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Contribution {
    pub g: SheetLabels,
    pub value: Scalar,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantResult {
    pub value: Scalar,
    /// Unnormalised sum per 3-handle labelling, in enumeration order.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub contributions: Option<Vec<Contribution>>,
    pub normalization: Scalar,
}

/// All maps K₃ → G, lexicographic in the sorted handle ids.
pub fn sheet_labellings(k: &KirbyDiagram, c: &CategoryData) -> Vec<SheetLabels> {
    let mut ids: Vec<&str> = k.three_handles.iter().map(|h| h.id.as_str()).collect();
    ids.sort();
    let n = c.group().order;
    let mut out = vec![SheetLabels::new()];
    for id in ids {
        let mut next = Vec::with_capacity(out.len() * n);
        for m in &out {
            for g in 0..n {
                let mut m2 = m.clone();
                m2.insert(id.to_string(), g);
                next.push(m2);
            }
        }
        out = next;
    }
    out
}

fn cartesian<T: Clone>(choices: &[Vec<T>]) -> Vec<Vec<T>> {
    let mut out = vec![vec![]];
    for opts in choices {
        let mut next = Vec::with_capacity(out.len() * opts.len());
        for v in &out {
            for o in opts {
                let mut v2 = v.clone();
                v2.push(o.clone());
                next.push(v2);
            }
        }
        out = next;
    }
    out
}

/// Σ over 2-handle labels and dual-basis indices for one 3-handle labelling.
pub fn labelling_sum(k: &KirbyDiagram, c: &CategoryData, g: &SheetLabels) -> Result<Scalar, InvariantError> {
    let mut choices: Vec<Vec<Label>> = Vec::with_capacity(k.two_handles.len());
    for h in &k.two_handles {
        let d: GroupElem = degree_of_2handle(k, c, &h.id, g)?;
        let xs = c.simples_of_grade(d);
        if xs.is_empty() {
            return Ok(c.zero());
        }
        choices.push(xs);
    }
    let mut cache = DualBasisCache::new();
    let mut acc = c.zero();
    for xs in cartesian(&choices) {
        let x: BTreeMap<String, Label> = k.two_handles.iter().map(|h| h.id.clone()).zip(xs.iter().copied()).collect();
        let mut weight = c.one();
        for &l in &xs {
            weight = weight * c.qdim(l);
        }
        let probe = Labelling {
            g: g.clone(),
            x: x.clone(),
            iota: vec![0; k.one_handles],
        };
        let legs = handle_legs(k, c, &probe)?;
        let mut dims = Vec::with_capacity(legs.len());
        for l in &legs {
            dims.push((0..cache.get(c, l).map_err(DiagramError::from)?.dim()).collect::<Vec<usize>>());
        }
        for iota in cartesian(&dims) {
            let lab = Labelling {
                g: g.clone(),
                x: x.clone(),
                iota,
            };
            let word = compile_with(k, &lab, c, &mut cache)?;
            let v = evaluate_closed(c, &word).map_err(DiagramError::from)?;
            acc = acc + &weight * &v;
        }
    }
    Ok(acc)
}

pub fn invariant(k: &KirbyDiagram, c: &CategoryData) -> Result<InvariantResult, InvariantError> {
    invariant_with(k, c, &InvariantOptions::default())
}

/// I_C(K) = Ω_C^{|K₁|−|K₂|} Σ_g Σ_X Σ_ι Π qdim X(h₂) ⟨K(g, X, ι)⟩.
pub fn invariant_with(
    k: &KirbyDiagram,
    c: &CategoryData,
    opts: &InvariantOptions,
) -> Result<InvariantResult, InvariantError> {
    if c.rank() == 0 {
        return Err(InvariantError::EmptyCategory);
    }
    let report = validate_diagram(k);
    if !report.passed() {
        return Err(InvariantError::InvalidDiagram(report.to_string()));
    }
    let labellings = sheet_labellings(k, c);
    let run = || -> Vec<Result<Scalar, InvariantError>> {
        labellings.par_iter().map(|g| labelling_sum(k, c, g)).collect()
    };
    let terms = match opts.threads {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build()
            .map_err(|e| InvariantError::Threads(e.to_string()))?
            .install(run),
        None => run(),
    };
    let mut total = c.zero();
    let mut contributions = Vec::new();
    for (g, t) in labellings.iter().zip(terms) {
        let t = t?;
        total = total + &t;
        if opts.keep_contributions {
            contributions.push(Contribution {
                g: g.clone(),
                value: t,
            });
        }
    }
    let (k1, k2, _) = k.counts();
    let normalization = c.global_dim().pow(k1 as i64 - k2 as i64)?;
    Ok(InvariantResult {
        value: total * &normalization,
        contributions: opts.keep_contributions.then_some(contributions),
        normalization,
    })
}

/// The renormalised Crane-Yetter invariant: the same sum over the trivial-degree part.
pub fn crane_yetter_hat(k: &KirbyDiagram, c: &CategoryData) -> Result<Scalar, InvariantError> {
    if !k.three_handles.is_empty() {
        return Err(InvariantError::HasThreeHandles);
    }
    Ok(invariant(k, &c.trivial_degree_part())?.value)
}

/// I for a simply connected manifold with the given χ and σ, from the ±CP² values.
pub fn simply_connected_value(c: &CategoryData, chi: i64, sigma: i64) -> Result<Scalar, InvariantError> {
    if (chi + sigma).rem_euclid(2) != 0 {
        return Err(InvariantError::Hypothesis(format!("χ = {chi} and σ = {sigma} differ in parity")));
    }
    if c.gauss_sum(1).is_zero() || c.gauss_sum(-1).is_zero() {
        return Err(InvariantError::Hypothesis(format!(
            "{} has a vanishing Gauss sum, so ±CP² do not determine simply connected values",
            c.name()
        )));
    }
    let plus = invariant(&builtin("cp2_plus").expect("builtin"), c)?.value;
    let minus = invariant(&builtin("cp2_minus").expect("builtin"), c)?.value;
    let a = (chi + sigma) / 2 - 1;
    let b = (chi - sigma) / 2 - 1;
    Ok(plus.pow(a)? * minus.pow(b)?)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ThreeManifold {
    S3,
    S1xS2,
}

impl ThreeManifold {
    pub fn name(self) -> &'static str {
        match self {
            ThreeManifold::S3 => "S³",
            ThreeManifold::S1xS2 => "S¹×S²",
        }
    }

    /// The builtin diagram of S¹ × N.
    pub fn circle_times(self) -> KirbyDiagram {
        let name = match self {
            ThreeManifold::S3 => "s1_x_s3",
            ThreeManifold::S1xS2 => "s1_x_s1_x_s2",
        };
        builtin(name).expect("builtin")
    }
}

/// dim Z(N) = I(S¹×N) / (Ω_C · |G|).
pub fn state_space_dim(c: &CategoryData, n: ThreeManifold) -> Result<Scalar, InvariantError> {
    let v = invariant(&n.circle_times(), c)?.value;
    let den = c.global_dim() * c.int(c.group().order as i64);
    Ok(v.try_div(&den)?)
}
