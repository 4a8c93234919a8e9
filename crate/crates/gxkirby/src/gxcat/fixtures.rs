//! Built-in categories.

use std::collections::{BTreeMap, BTreeSet};

use super::{CategoryData, CategoryError, GroupData, RawCategory, Simple, UNIT};
use crate::scalars::{root_of_unity, Scalar};

pub const PREMODULAR_NAMES: [&str; 3] = ["semion", "fibonacci", "rep_z2"];

const FIXTURES: [&str; 9] = [
    "vect",
    "vect_z3_z2_trivial",
    "vect_z3_z2_twisted",
    "vect_z4_z2",
    "vect_s3_s3",
    "semion",
    "semion_z2",
    "fibonacci",
    "rep_z2",
];

pub fn fixture_names() -> &'static [&'static str] {
    &FIXTURES
}

pub fn fixture(name: &str) -> Result<CategoryData, CategoryError> {
    let z2 = GroupData::cyclic(2);
    let z3 = GroupData::cyclic(3);
    let named = |c: Result<CategoryData, CategoryError>| {
        c.map(|c| {
            let mut raw = c.into_raw();
            raw.name = name.to_string();
            CategoryData::build(raw).expect("renaming keeps shape")
        })
    };
    match name {
        "vect" => named(pointed_category(
            &GroupData::trivial(),
            &GroupData::trivial(),
            &[0],
            &[vec![0]],
            &["I"],
        )),
        "vect_z3_z2_trivial" => named(pointed_category(
            &z3,
            &z2,
            &[0, 0, 0],
            &[vec![0, 1, 2], vec![0, 1, 2]],
            &["I", "ω", "ω*"],
        )),
        "vect_z3_z2_twisted" => named(pointed_category(
            &z3,
            &z2,
            &[0, 0, 0],
            &[vec![0, 1, 2], vec![0, 2, 1]],
            &["I", "ω", "ω*"],
        )),
        "vect_z4_z2" => named(pointed_category(
            &GroupData::cyclic(4),
            &z2,
            &[0, 1, 0, 1],
            &[vec![0, 1, 2, 3], vec![0, 1, 2, 3]],
            &["I", "x", "x2", "x3"],
        )),
        "vect_s3_s3" => {
            let s3 = GroupData::s3();
            let conj: Vec<Vec<usize>> = s3
                .elements()
                .map(|g| s3.elements().map(|a| s3.conj(g, a)).collect())
                .collect();
            let mut names: Vec<&str> = s3.names.iter().map(|s| s.as_str()).collect();
            names[0] = "I";
            named(pointed_category(&s3, &s3, &[0, 1, 2, 3, 4, 5], &conj, &names))
        }
        "semion_z2" => named(premodular_fixture("semion", &z2)),
        other if PREMODULAR_NAMES.contains(&other) => {
            premodular_fixture(other, &GroupData::trivial())
        }
        other => Err(CategoryError::Hypothesis(format!("unknown fixture {other:?}"))),
    }
}

/// Vect_A with trivial associator, G-graded by `grading: A → G` and acted on by
/// `action[g]`, an automorphism of A for each g.
pub fn pointed_category(
    a: &GroupData,
    g: &GroupData,
    grading: &[usize],
    action: &[Vec<usize>],
    names: &[&str],
) -> Result<CategoryData, CategoryError> {
    a.validate()?;
    g.validate()?;
    let bad = |m: &str| Err(CategoryError::Hypothesis(m.to_string()));
    if !a.is_hom_to(g, grading) {
        return bad("grading is not a homomorphism");
    }
    if action.len() != g.order {
        return bad("action needs one automorphism per group element");
    }
    for (h, perm) in action.iter().enumerate() {
        if !a.is_hom_to(a, perm) || perm.iter().collect::<BTreeSet<_>>().len() != a.order {
            return bad(&format!("action of {h} is not an automorphism"));
        }
    }
    for h in g.elements() {
        for k in g.elements() {
            if a.elements().any(|x| action[h][action[k][x]] != action[g.mul(h, k)][x]) {
                return bad("action is not a homomorphism");
            }
        }
    }
    for x in a.elements() {
        for y in a.elements() {
            if action[grading[x]][y] != a.conj(x, y) {
                return bad("action of deg(a) must be conjugation by a");
            }
        }
        for h in g.elements() {
            if grading[action[h][x]] != g.conj(h, grading[x]) {
                return bad("grading is not equivariant");
            }
        }
    }
    let one = Scalar::one(1);
    let n = a.order;
    let simples = a
        .elements()
        .map(|x| Simple {
            name: names.get(x).map(|s| s.to_string()).unwrap_or_else(|| a.name(x)),
            grade: grading[x],
            dual: a.inv(x),
            qdim: one.clone(),
            twist: (grading[x] == 0).then(|| one.clone()),
        })
        .collect();
    let mut fusion = BTreeSet::new();
    let mut f_symbols = BTreeMap::new();
    let mut r_symbols = BTreeMap::new();
    let mut u_symbols = BTreeMap::new();
    let mut eta_symbols = BTreeMap::new();
    for x in 0..n {
        for y in 0..n {
            let xy = a.mul(x, y);
            fusion.insert([x, y, xy]);
            r_symbols.insert([x, y, xy], one.clone());
            for h in g.elements() {
                u_symbols.insert([h, x, y, xy], one.clone());
            }
            for z in 0..n {
                f_symbols.insert([x, y, z, a.mul(xy, z), xy, a.mul(y, z)], one.clone());
            }
        }
        for h in g.elements() {
            for k in g.elements() {
                eta_symbols.insert([x, h, k], one.clone());
            }
        }
    }
    CategoryData::build(RawCategory {
        name: "pointed".into(),
        group: g.clone(),
        simples,
        fusion,
        f_symbols,
        r_symbols,
        action_perm: action.to_vec(),
        u_symbols,
        eta_symbols,
        pivotal: vec![one; n],
        conductor: 1,
    })
}

/// Rank-2 premodular categories, trivially graded over `g` with trivial action.
pub fn premodular_fixture(name: &str, g: &GroupData) -> Result<CategoryData, CategoryError> {
    let (conductor, qdim, twist, fusion, f_extra, r): (
        u32,
        Scalar,
        Scalar,
        Vec<[usize; 3]>,
        Vec<([usize; 6], Scalar)>,
        Vec<([usize; 3], Scalar)>,
    ) = match name {
        "semion" => {
            let n = 4;
            let i = root_of_unity(n, 1).unwrap();
            (
                n,
                Scalar::one(n),
                i.clone(),
                vec![[1, 1, 0]],
                vec![([1, 1, 1, 1, 0, 0], Scalar::from_int(-1, n))],
                vec![([1, 1, 0], i)],
            )
        }
        "rep_z2" => (
            1,
            Scalar::one(1),
            Scalar::one(1),
            vec![[1, 1, 0]],
            vec![([1, 1, 1, 1, 0, 0], Scalar::one(1))],
            vec![([1, 1, 0], Scalar::one(1))],
        ),
        "fibonacci" => {
            let n = 5;
            let z = |k| root_of_unity(n, k).unwrap();
            // golden ratio φ = 1 + ζ + ζ⁴, and φ⁻¹ = ζ + ζ⁴
            let phi = Scalar::one(n) + z(1) + z(4);
            let phi_inv = z(1) + z(4);
            let one = Scalar::one(n);
            (
                n,
                phi,
                z(2),
                vec![[1, 1, 0], [1, 1, 1]],
                vec![
                    ([1, 1, 1, 0, 1, 1], one.clone()),
                    ([1, 1, 1, 1, 0, 0], phi_inv.clone()),
                    ([1, 1, 1, 1, 0, 1], phi_inv.clone()),
                    ([1, 1, 1, 1, 1, 0], one),
                    ([1, 1, 1, 1, 1, 1], -phi_inv),
                ],
                vec![([1, 1, 0], z(3)), ([1, 1, 1], -z(4))],
            )
        }
        other => {
            return Err(CategoryError::Hypothesis(format!(
                "unknown premodular fixture {other:?}"
            )))
        }
    };
    let one = Scalar::one(conductor);
    let mut fusion_set: BTreeSet<[usize; 3]> = fusion.into_iter().collect();
    for x in 0..2 {
        fusion_set.insert([UNIT, x, x]);
        fusion_set.insert([x, UNIT, x]);
    }
    let mut f_symbols: BTreeMap<[usize; 6], Scalar> = f_extra.into_iter().collect();
    // entries with a unit leg are 1
    for &[a, b, e] in &fusion_set {
        for &[e2, c, d] in &fusion_set {
            if e2 != e {
                continue;
            }
            if a == UNIT || b == UNIT || c == UNIT {
                let f = if a == UNIT { d } else if b == UNIT { c } else { b };
                f_symbols.insert([a, b, c, d, e, f], one.clone());
            }
        }
    }
    let mut r_symbols: BTreeMap<[usize; 3], Scalar> = r.into_iter().collect();
    for x in 0..2 {
        r_symbols.insert([UNIT, x, x], one.clone());
        r_symbols.insert([x, UNIT, x], one.clone());
    }
    let mut u_symbols = BTreeMap::new();
    let mut eta_symbols = BTreeMap::new();
    for h in g.elements() {
        for t in &fusion_set {
            u_symbols.insert([h, t[0], t[1], t[2]], one.clone());
        }
        for k in g.elements() {
            for x in 0..2 {
                eta_symbols.insert([x, h, k], one.clone());
            }
        }
    }
    let simples = vec![
        Simple {
            name: "I".into(),
            grade: 0,
            dual: 0,
            qdim: one.clone(),
            twist: Some(one.clone()),
        },
        Simple {
            name: match name {
                "semion" => "s",
                "fibonacci" => "τ",
                _ => "x",
            }
            .into(),
            grade: 0,
            dual: 1,
            qdim,
            twist: Some(twist),
        },
    ];
    let mut raw = RawCategory {
        name: name.into(),
        group: g.clone(),
        simples,
        fusion: fusion_set,
        f_symbols,
        r_symbols,
        action_perm: vec![vec![0, 1]; g.order],
        u_symbols,
        eta_symbols,
        pivotal: vec![one.clone(), one],
        conductor,
    };
    let pre = CategoryData::build(raw.clone())?;
    raw.pivotal[1] = pre.derive_pivotal(1)?;
    CategoryData::build(raw)
}
