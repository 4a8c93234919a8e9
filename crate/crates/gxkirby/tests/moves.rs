use gxkirby::diagram::{validate_diagram, KirbyDiagram};
use gxkirby::gxcat::{fixture, fixture_names, CategoryData};
use gxkirby::invariant::{invariant, sheet_labellings};
use gxkirby::manifolds::{builtin, connected_sum};
use gxkirby::moves::*;
use gxkirby::scalars::Scalar;

fn value(k: &KirbyDiagram, c: &CategoryData) -> Scalar {
    invariant(k, c).unwrap().value
}

fn fixtures() -> Vec<CategoryData> {
    fixture_names().iter().map(|n| fixture(n).unwrap()).collect()
}

#[test]
fn cancel12_on_s4() {
    let k = builtin("s4").unwrap();
    let k2 = insert_cancelling_12(&k, 0, 0).unwrap();
    assert_eq!(k2.counts(), (1, 1, 0));
    for c in fixtures() {
        assert_eq!(value(&k2, &c), c.one(), "{}", c.name());
    }
}

#[test]
fn cancel12_twice_then_removed_is_verbatim() {
    let k = builtin("s2_x_s2").unwrap();
    let k1 = insert_cancelling_12(&k, 2, 1).unwrap();
    let k2 = insert_cancelling_12(&k1, 0, 0).unwrap();
    let back = remove_cancelling_12(&remove_cancelling_12(&k2, 1).unwrap(), 0).unwrap();
    assert_eq!(back, k);
}

#[test]
fn cancel12_inside_s1_x_s3() {
    let k = builtin("s1_x_s3").unwrap();
    let k2 = insert_cancelling_12(&k, 1, 0).unwrap();
    for c in fixtures() {
        assert_eq!(value(&k2, &c), value(&k, &c));
    }
}

#[test]
fn cancel23_on_s4_and_cp2() {
    let s4 = builtin("s4").unwrap();
    let k = insert_cancelling_23(&s4, 0, 0).unwrap();
    assert_eq!(k.counts(), (0, 1, 1));
    for c in fixtures() {
        assert_eq!(value(&k, &c), c.one());
    }
    let semion = fixture("semion").unwrap();
    let cp2 = builtin("cp2_plus").unwrap();
    let k = insert_cancelling_23(&cp2, 1, 0).unwrap();
    assert_eq!(value(&k, &semion), value(&cp2, &semion));
}

#[test]
fn cancel23_round_trip() {
    let k = builtin("s1_x_s1_x_s2").unwrap();
    let k2 = insert_cancelling_23(&k, 4, 2).unwrap();
    let new = k2.three_handles.last().unwrap().id.clone();
    assert_eq!(remove_cancelling_23(&k2, &new).unwrap(), k);
    assert!(remove_cancelling_23(&k, "A").is_err());
}

#[test]
fn slide33_preserves_invariant_and_labelling_count() {
    let k = builtin("s1_x_s1_x_s2").unwrap();
    let slid = slide_33(&k, "A", "B").unwrap();
    let back = reverse_3handle(&slide_33(&reverse_3handle(&slid, "B").unwrap(), "A", "B").unwrap(), "B").unwrap();
    for c in fixtures() {
        let v = value(&k, &c);
        assert_eq!(value(&slid, &c), v, "{}", c.name());
        assert_eq!(value(&back, &c), v, "{}", c.name());
        assert_eq!(sheet_labellings(&slid, &c).len(), sheet_labellings(&k, &c).len());
    }
    assert!(slide_33(&k, "A", "A").is_err());
    assert!(slide_33(&k, "A", "Z").is_err());
}

#[test]
fn slide33_in_a_connected_sum() {
    let k = connected_sum(&["s1_x_s3", "s1_x_s3"]).unwrap();
    let slid = slide_33(&k, "A", "A'").unwrap();
    for c in fixtures() {
        assert_eq!(value(&slid, &c), value(&k, &c));
    }
}

#[test]
fn three_infinity_exchanges_the_two_encodings() {
    let near = builtin("s1_x_s3").unwrap();
    let far = builtin("s1_x_s3_far").unwrap();
    let moved = three_infinity(&near, "A").unwrap();
    assert_eq!(moved.word, far.word);
    assert_eq!(three_infinity(&moved, "A").unwrap().word, near.word);
    for c in fixtures() {
        let want = c.int(c.group().order as i64) * c.global_dim();
        assert_eq!(value(&moved, &c), want);
    }
}

#[test]
fn three_infinity_inside_a_union() {
    let k = connected_sum(&["s1_x_s3", "cp2_plus"]).unwrap();
    let moved = three_infinity(&k, "A").unwrap();
    for c in fixtures() {
        assert_eq!(value(&moved, &c), value(&k, &c));
    }
    assert!(three_infinity(&builtin("s1_x_s1_x_s2").unwrap(), "A").is_err());
}

#[test]
fn isotopies_on_the_hopf_link() {
    let k = builtin("s2_x_s2").unwrap();
    let semion = fixture("semion").unwrap();
    let v = value(&k, &semion);
    let r2 = insert_r2(&k, 2, 0, true).unwrap();
    let r3 = insert_r3(&insert_cancelling_23(&k, 2, 0).unwrap(), 3, 0, false).unwrap();
    let snake = insert_snake(&k, 3, 1).unwrap();
    for d in [r2, r3, snake] {
        assert!(validate_diagram(&d).passed());
        assert_eq!(value(&d, &semion), v);
    }
    assert!(insert_r2(&k, 0, 0, true).is_err());
    assert!(insert_r2(&k, 99, 0, true).is_err());
}

#[test]
fn fold_pair_and_coupon_slide() {
    let k = builtin("s1_x_s1_x_s2").unwrap();
    let c = fixture("vect_z3_z2_twisted").unwrap();
    let fold = insert_fold_pair(&k, 3, "B").unwrap();
    assert_eq!(value(&fold, &c), c.int(18));
    let slid = coupon_slide(&k, 2).unwrap();
    assert_eq!(value(&slid, &c), c.int(18));
    assert!(coupon_slide(&k, 0).is_err());
}

#[test]
fn orientation_reversal() {
    for name in ["s2_x_s2", "cp2_minus", "s1_x_s1_x_s2"] {
        let k = builtin(name).unwrap();
        let r = reverse_all(&k).unwrap();
        for c in fixtures() {
            assert_eq!(value(&r, &c), value(&k, &c), "{name} {}", c.name());
        }
    }
}

#[test]
fn move_records_use_camel_case_kinds() {
    let m = MoveRecord::ThreeInfinity { h3: "A".into() };
    let s = serde_json::to_string(&m).unwrap();
    assert_eq!(s, r#"{"kind":"threeInfinity","h3":"A"}"#);
    let script: Vec<MoveRecord> = serde_json::from_str(
        r#"[{"kind":"isotopyR2","index":2,"pos":0,"over":true},{"kind":"cancel12","index":0,"pos":0}]"#,
    )
    .unwrap();
    let k = builtin("s2_x_s2").unwrap();
    let out = apply_script(&k, &script).unwrap();
    assert_eq!(out.word.len(), k.word.len() + 5);
}

#[test]
fn candidates_cover_every_kind_on_the_torus_product() {
    let k = builtin("s1_x_s1_x_s2").unwrap();
    let cands = candidate_moves(&k);
    let has = |f: &dyn Fn(&MoveRecord) -> bool| cands.iter().any(f);
    assert!(has(&|m| matches!(m, MoveRecord::Slide33 { .. })));
    assert!(has(&|m| matches!(m, MoveRecord::IsotopyR3 { .. })));
    assert!(has(&|m| matches!(m, MoveRecord::CouponSlide { .. })));
    assert!(has(&|m| matches!(m, MoveRecord::Snake { .. })));
    assert!(!isotopy_rewrites(&k).is_empty());
}
