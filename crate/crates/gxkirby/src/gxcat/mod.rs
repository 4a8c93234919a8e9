//! Skeletal G-crossed braided spherical fusion categories.
//!
//! Conventions (all vertices are splitting vertices `c → a ⊗ b`):
//!
//! * `F[a,b,c,d,e,f]`: `((ab)_e c)_d = Σ_f F (a(bc)_f)_d`.
//! * `R[a,b,c]`: `c_{a,b} ∘ s(a,b;c) = R · s(ᵍb,a;c)` with `g = deg a`.
//! * `U[g,a,b,c]`: `T_g(s(a,b;c)) = U · s(ᵍa,ᵍb;ᵍc)`.
//! * `eta[x,g,h]`: the scalar of `η_x(g,h): ᵍ(ʰx) → ᵍʰx`.
//! * `pivotal[x]`: coefficient of the cup creating `x* ⊗ x`.

mod fixtures;
mod group;
mod io;
mod validate;

use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use crate::scalars::{invert_matrix, Scalar, ScalarError};

pub use fixtures::{fixture, fixture_names, pointed_category, premodular_fixture, PREMODULAR_NAMES};
pub use group::{GroupData, GroupError};
pub use io::{CategoryFile, LoadError as CategoryLoadError, SymbolEntry};
pub use validate::{validate_category, Failure, ValidationReport};

pub type Label = usize;
pub type GroupElem = usize;

/// The unit object is always label 0.
pub const UNIT: Label = 0;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Simple {
    pub name: String,
    pub grade: GroupElem,
    pub dual: Label,
    pub qdim: Scalar,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub twist: Option<Scalar>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CategoryError {
    #[error("malformed category: {0}")]
    Malformed(String),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error("label {0} is not of trivial degree")]
    NotTrivialDegree(Label),
    #[error("{0}")]
    Hypothesis(String),
}

fn malformed<T>(msg: impl Into<String>) -> Result<T, CategoryError> {
    Err(CategoryError::Malformed(msg.into()))
}

/// Plain category data as stored on disk, before derived tables are built.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RawCategory {
    pub name: String,
    pub group: GroupData,
    pub simples: Vec<Simple>,
    pub fusion: BTreeSet<[Label; 3]>,
    pub f_symbols: BTreeMap<[usize; 6], Scalar>,
    pub r_symbols: BTreeMap<[usize; 3], Scalar>,
    /// `action_perm[g][x] = ᵍx`
    pub action_perm: Vec<Vec<Label>>,
    pub u_symbols: BTreeMap<[usize; 4], Scalar>,
    pub eta_symbols: BTreeMap<[usize; 3], Scalar>,
    pub pivotal: Vec<Scalar>,
    pub conductor: u32,
}

/// A validated-shape category with its inverse F-matrices and fusion tables.
#[derive(Clone, Debug)]
pub struct CategoryData {
    raw: RawCategory,
    finv: HashMap<[usize; 6], Scalar>,
    products: Vec<Vec<Vec<Label>>>,
    zero: Scalar,
}

impl PartialEq for CategoryData {
    fn eq(&self, other: &Self) -> bool {
        self.raw == other.raw
    }
}

impl CategoryData {
    /// Checks index ranges and shapes, then builds derived tables.
    /// Axioms are checked separately by [`validate_category`].
    pub fn build(raw: RawCategory) -> Result<CategoryData, CategoryError> {
        raw.group.validate()?;
        let n = raw.simples.len();
        let ng = raw.group.order;
        let cond = raw.conductor;
        if n == 0 {
            return malformed("category has no simples");
        }
        if cond == 0 {
            return malformed("conductor 0");
        }
        for (i, s) in raw.simples.iter().enumerate() {
            if s.grade >= ng || s.dual >= n {
                return malformed(format!("simple {i} has out-of-range grade or dual"));
            }
            if s.qdim.order() != cond || s.twist.as_ref().is_some_and(|t| t.order() != cond) {
                return malformed(format!("simple {i} has a scalar outside Q(ζ{cond})"));
            }
            if s.grade == 0 && s.twist.is_none() {
                return malformed(format!("simple {} of trivial degree needs a twist", s.name));
            }
        }
        if raw.simples[UNIT].grade != 0 || raw.simples[UNIT].dual != UNIT {
            return malformed("label 0 must be the unit");
        }
        for t in &raw.fusion {
            if t.iter().any(|&x| x >= n) {
                return malformed(format!("fusion triple {t:?} out of range"));
            }
        }
        if raw.action_perm.len() != ng {
            return malformed("action table must have one row per group element");
        }
        for (g, row) in raw.action_perm.iter().enumerate() {
            let mut seen = vec![false; n];
            if row.len() != n {
                return malformed(format!("action row {g} has wrong length"));
            }
            for &x in row {
                if x >= n || seen[x] {
                    return malformed(format!("action row {g} is not a permutation"));
                }
                seen[x] = true;
            }
        }
        if raw.pivotal.len() != n {
            return malformed("one pivotal coefficient per simple required");
        }
        let check_keys = |name: &str, bad: bool| if bad { malformed(format!("{name} index out of range")) } else { Ok(()) };
        check_keys("F", raw.f_symbols.keys().any(|k| k.iter().any(|&x| x >= n)))?;
        check_keys("R", raw.r_symbols.keys().any(|k| k.iter().any(|&x| x >= n)))?;
        check_keys("U", raw.u_symbols.keys().any(|k| k[0] >= ng || k[1..].iter().any(|&x| x >= n)))?;
        check_keys("eta", raw.eta_symbols.keys().any(|k| k[0] >= n || k[1] >= ng || k[2] >= ng))?;
        let all_scalars = raw
            .f_symbols
            .values()
            .chain(raw.r_symbols.values())
            .chain(raw.u_symbols.values())
            .chain(raw.eta_symbols.values())
            .chain(raw.pivotal.iter());
        for s in all_scalars {
            if s.order() != cond {
                return malformed(format!("scalar {s} not in Q(ζ{cond})"));
            }
        }

        let mut products = vec![vec![Vec::new(); n]; n];
        for &[a, b, c] in &raw.fusion {
            products[a][b].push(c);
        }

        let mut finv = HashMap::new();
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let mut ds = BTreeSet::new();
                    for &e in &products[a][b] {
                        ds.extend(products[e][c].iter().copied());
                    }
                    for d in ds {
                        let es: Vec<Label> = products[a][b]
                            .iter()
                            .copied()
                            .filter(|&e| products[e][c].contains(&d))
                            .collect();
                        let fs: Vec<Label> = products[b][c]
                            .iter()
                            .copied()
                            .filter(|&f| products[a][f].contains(&d))
                            .collect();
                        if es.len() != fs.len() {
                            return malformed(format!(
                                "fusion is not associative at ({a},{b},{c};{d})"
                            ));
                        }
                        let m: Vec<Vec<Scalar>> = es
                            .iter()
                            .map(|&e| {
                                fs.iter()
                                    .map(|&f| {
                                        raw.f_symbols
                                            .get(&[a, b, c, d, e, f])
                                            .cloned()
                                            .unwrap_or_else(|| Scalar::zero(cond))
                                    })
                                    .collect()
                            })
                            .collect();
                        let inv = invert_matrix(&m, cond).map_err(|_| {
                            CategoryError::Malformed(format!(
                                "F-matrix ({a},{b},{c};{d}) is singular"
                            ))
                        })?;
                        for (i, &f) in fs.iter().enumerate() {
                            for (j, &e) in es.iter().enumerate() {
                                finv.insert([a, b, c, d, f, e], inv[i][j].clone());
                            }
                        }
                    }
                }
            }
        }
        Ok(CategoryData {
            raw,
            finv,
            products,
            zero: Scalar::zero(cond),
        })
    }

    pub fn raw(&self) -> &RawCategory {
        &self.raw
    }

    pub fn into_raw(self) -> RawCategory {
        self.raw
    }

    pub fn name(&self) -> &str {
        &self.raw.name
    }

    pub fn group(&self) -> &GroupData {
        &self.raw.group
    }

    pub fn conductor(&self) -> u32 {
        self.raw.conductor
    }

    pub fn rank(&self) -> usize {
        self.raw.simples.len()
    }

    pub fn labels(&self) -> std::ops::Range<Label> {
        0..self.rank()
    }

    pub fn simple(&self, x: Label) -> &Simple {
        &self.raw.simples[x]
    }

    pub fn label_by_name(&self, name: &str) -> Option<Label> {
        self.raw.simples.iter().position(|s| s.name == name)
    }

    pub fn grade(&self, x: Label) -> GroupElem {
        self.raw.simples[x].grade
    }

    pub fn dual(&self, x: Label) -> Label {
        self.raw.simples[x].dual
    }

    pub fn qdim(&self, x: Label) -> &Scalar {
        &self.raw.simples[x].qdim
    }

    pub fn twist(&self, x: Label) -> Option<&Scalar> {
        self.raw.simples[x].twist.as_ref()
    }

    pub fn zero(&self) -> Scalar {
        self.zero.clone()
    }

    pub fn one(&self) -> Scalar {
        Scalar::one(self.conductor())
    }

    pub fn int(&self, v: i64) -> Scalar {
        Scalar::from_int(v, self.conductor())
    }

    pub fn admissible(&self, a: Label, b: Label, c: Label) -> bool {
        self.products[a][b].contains(&c)
    }

    pub fn products(&self, a: Label, b: Label) -> &[Label] {
        &self.products[a][b]
    }

    pub fn f(&self, key: [usize; 6]) -> &Scalar {
        self.raw.f_symbols.get(&key).unwrap_or(&self.zero)
    }

    /// Entry `[f, e]` of the inverse of the `(a,b,c;d)` F-matrix, keyed `[a,b,c,d,f,e]`.
    pub fn finv(&self, key: [usize; 6]) -> &Scalar {
        self.finv.get(&key).unwrap_or(&self.zero)
    }

    pub fn r(&self, a: Label, b: Label, c: Label) -> &Scalar {
        self.raw.r_symbols.get(&[a, b, c]).unwrap_or(&self.zero)
    }

    pub fn u(&self, g: GroupElem, a: Label, b: Label, c: Label) -> &Scalar {
        self.raw.u_symbols.get(&[g, a, b, c]).unwrap_or(&self.zero)
    }

    pub fn eta(&self, x: Label, g: GroupElem, h: GroupElem) -> &Scalar {
        self.raw.eta_symbols.get(&[x, g, h]).unwrap_or(&self.zero)
    }

    pub fn pivotal(&self, x: Label) -> &Scalar {
        &self.raw.pivotal[x]
    }

    pub fn act(&self, g: GroupElem, x: Label) -> Label {
        self.raw.action_perm[g][x]
    }

    pub fn simples_of_grade(&self, g: GroupElem) -> Vec<Label> {
        self.labels().filter(|&x| self.grade(x) == g).collect()
    }

    /// Whether every graded piece is nonzero.
    pub fn is_faithful(&self) -> bool {
        self.group()
            .elements()
            .all(|g| self.labels().any(|x| self.grade(x) == g))
    }

    pub fn is_trivially_graded(&self) -> bool {
        self.labels().all(|x| self.grade(x) == 0)
    }

    pub fn has_trivial_action(&self) -> bool {
        self.raw
            .action_perm
            .iter()
            .all(|row| row.iter().enumerate().all(|(i, &x)| i == x))
    }

    /// The pivotal coefficient forced by the snake identity for a strand of `x`,
    /// given the F-symbols and `qdim(x)`.
    pub fn derive_pivotal(&self, x: Label) -> Result<Scalar, CategoryError> {
        let xd = self.dual(x);
        let fi = self.finv([x, xd, x, x, UNIT, UNIT]);
        Ok(self.qdim(x).try_mul(fi)?.inverse()?)
    }

    pub fn kirby_colour(&self, g: GroupElem) -> FusionElement {
        let mut v = FusionElement::default();
        for x in self.simples_of_grade(g) {
            v.add_term(x, self.qdim(x).clone());
        }
        v
    }

    pub fn global_dim(&self) -> Scalar {
        Scalar::sum(
            self.conductor(),
            &self.labels().map(|x| self.qdim(x) * self.qdim(x)).collect::<Vec<_>>(),
        )
    }

    pub fn graded_dim(&self, g: GroupElem) -> Scalar {
        self.kirby_colour(g).qdim(self)
    }

    /// β_{a,b} coefficient on channel c, both of trivial degree, from the symbols.
    pub fn double_braiding_coefficient(&self, a: Label, b: Label, c: Label) -> Scalar {
        debug_assert!(self.grade(a) == 0 && self.grade(b) == 0);
        self.r(a, b, c) * self.r(b, a, c)
    }

    pub fn is_transparent(&self, x: Label) -> Result<bool, CategoryError> {
        if self.grade(x) != 0 {
            return Err(CategoryError::NotTrivialDegree(x));
        }
        Ok(self.simples_of_grade(0).into_iter().all(|y| {
            self.products(x, y)
                .iter()
                .all(|&c| self.double_braiding_coefficient(x, y, c).is_one())
        }))
    }

    /// Transparent simples of trivial degree, O(C_e′).
    pub fn symmetric_centre(&self) -> Vec<Label> {
        self.simples_of_grade(0)
            .into_iter()
            .filter(|&x| self.is_transparent(x).unwrap_or(false))
            .collect()
    }

    pub fn gauss_sum(&self, sign: i32) -> Scalar {
        let mut acc = self.zero();
        for x in self.simples_of_grade(0) {
            let d2 = self.qdim(x) * self.qdim(x);
            let t = self.twist(x).expect("trivial-degree simples carry twists");
            let t = if sign >= 0 {
                t.clone()
            } else {
                t.inverse().expect("twist is invertible")
            };
            acc = acc + d2 * t;
        }
        acc
    }

    pub fn act_on_label(&self, g: GroupElem, x: Label) -> Label {
        self.act(g, x)
    }

    pub fn act_on_element(&self, g: GroupElem, v: &FusionElement) -> FusionElement {
        let mut out = FusionElement::default();
        for (&x, c) in &v.coeffs {
            out.add_term(self.act(g, x), c.clone());
        }
        out
    }

    pub fn dual_element(&self, v: &FusionElement) -> FusionElement {
        let mut out = FusionElement::default();
        for (&x, c) in &v.coeffs {
            out.add_term(self.dual(x), c.clone());
        }
        out
    }

    /// The trivial-degree part C_e as a category over the trivial group.
    pub fn trivial_degree_part(&self) -> CategoryData {
        let keep = self.simples_of_grade(0);
        let idx: HashMap<Label, Label> = keep.iter().enumerate().map(|(i, &x)| (x, i)).collect();
        let map = |k: &[usize]| -> Option<Vec<usize>> { k.iter().map(|x| idx.get(x).copied()).collect() };
        let simples = keep
            .iter()
            .map(|&x| {
                let s = self.simple(x);
                Simple {
                    name: s.name.clone(),
                    grade: 0,
                    dual: idx[&s.dual],
                    qdim: s.qdim.clone(),
                    twist: s.twist.clone(),
                }
            })
            .collect();
        let fusion: BTreeSet<[Label; 3]> = self
            .raw
            .fusion
            .iter()
            .filter_map(|t| map(t).map(|v| [v[0], v[1], v[2]]))
            .collect();
        let f_symbols = self
            .raw
            .f_symbols
            .iter()
            .filter_map(|(k, v)| map(k).map(|m| ([m[0], m[1], m[2], m[3], m[4], m[5]], v.clone())))
            .collect();
        let r_symbols = self
            .raw
            .r_symbols
            .iter()
            .filter_map(|(k, v)| map(k).map(|m| ([m[0], m[1], m[2]], v.clone())))
            .collect();
        let one = self.one();
        let u_symbols = fusion.iter().map(|&[a, b, c]| ([0, a, b, c], one.clone())).collect();
        let eta_symbols = (0..keep.len()).map(|x| ([x, 0, 0], one.clone())).collect();
        let raw = RawCategory {
            name: format!("{}_e", self.name()),
            group: GroupData::trivial(),
            simples,
            action_perm: vec![(0..keep.len()).collect()],
            pivotal: keep.iter().map(|&x| self.pivotal(x).clone()).collect(),
            fusion,
            f_symbols,
            r_symbols,
            u_symbols,
            eta_symbols,
            conductor: self.conductor(),
        };
        CategoryData::build(raw).expect("trivial-degree part of a well-formed category")
    }
}

/// Element of the complexified fusion ring, with only nonzero coefficients stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct FusionElement {
    pub coeffs: BTreeMap<Label, Scalar>,
}

impl FusionElement {
    pub fn single(x: Label, c: Scalar) -> FusionElement {
        let mut v = FusionElement::default();
        v.add_term(x, c);
        v
    }

    pub fn add_term(&mut self, x: Label, c: Scalar) {
        let entry = match self.coeffs.remove(&x) {
            Some(old) => old + c,
            None => c,
        };
        if !entry.is_zero() {
            self.coeffs.insert(x, entry);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn support(&self) -> Vec<Label> {
        self.coeffs.keys().copied().collect()
    }

    pub fn coeff(&self, x: Label) -> Option<&Scalar> {
        self.coeffs.get(&x)
    }

    pub fn qdim(&self, c: &CategoryData) -> Scalar {
        let mut acc = c.zero();
        for (&x, k) in &self.coeffs {
            acc = acc + k * c.qdim(x);
        }
        acc
    }

    pub fn plus(&self, other: &FusionElement) -> FusionElement {
        let mut v = self.clone();
        for (&x, k) in &other.coeffs {
            v.add_term(x, k.clone());
        }
        v
    }

    /// The unique grade of the support, or `None` if mixed or empty.
    pub fn pure_grade(&self, c: &CategoryData) -> Option<GroupElem> {
        let mut grades = self.coeffs.keys().map(|&x| c.grade(x));
        let g = grades.next()?;
        grades.all(|h| h == g).then_some(g)
    }
}
