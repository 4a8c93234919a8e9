use gxkirby::cli::{table2_rows, InvariantOut};
use gxkirby::diagram::{degree_of_2handle, disjoint_union, KirbyDiagram};
use gxkirby::gxcat::{fixture, fixture_names};
use gxkirby::invariant::{invariant, invariant_with, labelling_sum, sheet_labellings, InvariantOptions};
use gxkirby::manifolds::{builtin, dw_count, pi1_presentation, BUILTIN_NAMES};
use gxkirby::moves::{apply, candidate_moves, MoveRecord};
use proptest::prelude::*;

fn any_builtin() -> impl Strategy<Value = &'static str> {
    proptest::sample::select(BUILTIN_NAMES.to_vec())
}

fn any_fixture() -> impl Strategy<Value = &'static str> {
    proptest::sample::select(fixture_names().to_vec())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn move_sequences_preserve_the_invariant(
        m in any_builtin(),
        f in any_fixture(),
        picks in proptest::collection::vec(any::<u32>(), 1..=3),
    ) {
        let c = fixture(f).unwrap();
        let k0 = builtin(m).unwrap();
        let base = invariant(&k0, &c).unwrap().value;
        let mut k = k0;
        let mut trail: Vec<MoveRecord> = Vec::new();
        for p in picks {
            let cands = candidate_moves(&k);
            prop_assume!(!cands.is_empty());
            let mv = cands[p as usize % cands.len()].clone();
            let (k1, k2, _) = k.counts();
            k = apply(&k, &mv).unwrap();
            let (n1, n2, _) = k.counts();
            if matches!(mv, MoveRecord::Cancel12 { .. } | MoveRecord::Cancel12Remove { .. }) {
                prop_assert_eq!(n1 as i64 - n2 as i64, k1 as i64 - k2 as i64);
            }
            trail.push(mv);
        }
        prop_assert_eq!(invariant(&k, &c).unwrap().value, base, "{:?}", trail);
    }

    #[test]
    fn disjoint_union_is_multiplicative(a in any_builtin(), b in any_builtin(), f in any_fixture()) {
        let c = fixture(f).unwrap();
        let (ka, kb) = (builtin(a).unwrap(), builtin(b).unwrap());
        let u = disjoint_union(&ka, &kb);
        let want = invariant(&ka, &c).unwrap().value * invariant(&kb, &c).unwrap().value;
        prop_assert_eq!(invariant(&u, &c).unwrap().value, want);
    }

    #[test]
    fn dw_is_multiplicative(a in any_builtin(), b in any_builtin(), f in any_fixture()) {
        let g = fixture(f).unwrap().group().clone();
        let (ka, kb) = (builtin(a).unwrap(), builtin(b).unwrap());
        let u = pi1_presentation(&disjoint_union(&ka, &kb));
        prop_assert_eq!(
            dw_count(&u, &g),
            dw_count(&pi1_presentation(&ka), &g) * dw_count(&pi1_presentation(&kb), &g)
        );
    }

    #[test]
    fn thread_count_never_changes_values(m in any_builtin(), f in any_fixture(), t in 1usize..5) {
        let c = fixture(f).unwrap();
        let k = builtin(m).unwrap();
        let opts = |threads| InvariantOptions { keep_contributions: true, threads };
        let one = invariant_with(&k, &c, &opts(Some(1))).unwrap();
        let many = invariant_with(&k, &c, &opts(Some(t))).unwrap();
        prop_assert_eq!(one, many);
    }

    #[test]
    fn diagrams_round_trip_through_json(m in any_builtin(), picks in proptest::collection::vec(any::<u32>(), 0..=2)) {
        let mut k = builtin(m).unwrap();
        for p in picks {
            let cands = candidate_moves(&k);
            k = apply(&k, &cands[p as usize % cands.len()]).unwrap();
        }
        prop_assert_eq!(KirbyDiagram::from_json(&k.to_json()).unwrap(), k);
    }
}

#[test]
fn trivially_graded_support_needs_trivial_degrees() {
    for f in fixture_names() {
        let c = fixture(f).unwrap();
        if !c.is_trivially_graded() {
            continue;
        }
        for m in BUILTIN_NAMES {
            let k = builtin(m).unwrap();
            for g in sheet_labellings(&k, &c) {
                let all_e = k
                    .two_handles
                    .iter()
                    .all(|h| degree_of_2handle(&k, &c, &h.id, &g).unwrap() == c.group().identity());
                if !all_e {
                    assert!(labelling_sum(&k, &c, &g).unwrap().is_zero(), "{f} {m} {g:?}");
                }
            }
        }
    }
}

#[test]
fn json_outputs_round_trip() {
    let c = fixture("fibonacci").unwrap();
    let r = invariant_with(
        &builtin("cp2_plus").unwrap(),
        &c,
        &InvariantOptions {
            keep_contributions: true,
            threads: None,
        },
    )
    .unwrap();
    let s = serde_json::to_string(&r).unwrap();
    assert_eq!(serde_json::from_str::<gxkirby::invariant::InvariantResult>(&s).unwrap(), r);
    let z = r.value.to_complex();
    let out = InvariantOut {
        category: c.name().into(),
        manifold: "cp2_plus".into(),
        exact: r.value.to_string(),
        approx: [z.re, z.im],
        value: r.value.clone(),
        normalization: r.normalization.clone(),
        contributions: None,
    };
    let s = serde_json::to_string(&out).unwrap();
    assert_eq!(serde_json::from_str::<InvariantOut>(&s).unwrap(), out);
    let rows = table2_rows(Some(2)).unwrap();
    let s = serde_json::to_string(&rows).unwrap();
    assert_eq!(serde_json::from_str::<Vec<gxkirby::cli::Table2Row>>(&s).unwrap(), rows);
}
