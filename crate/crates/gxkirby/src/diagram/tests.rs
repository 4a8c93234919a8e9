use super::*;
use crate::gxcat::fixture;
use crate::manifolds::{builtin, BUILTIN_NAMES};

fn hopf() -> KirbyDiagram {
    builtin("s2_x_s2").unwrap()
}

#[test]
fn builtins_are_valid_and_round_trip() {
    for m in BUILTIN_NAMES {
        let k = builtin(m).unwrap();
        assert!(validate_diagram(&k).passed(), "{m}: {}", validate_diagram(&k));
        assert_eq!(KirbyDiagram::from_json(&k.to_json()).unwrap(), k);
    }
}

#[test]
fn counts_and_euler() {
    let k = builtin("s1_x_s1_x_s2").unwrap();
    assert_eq!(k.counts(), (2, 2, 2));
    assert_eq!(k.handle_euler(), 0);
    assert_eq!(builtin("s4").unwrap().counts(), (0, 0, 0));
}

#[test]
fn open_word_is_reported() {
    let mut k = hopf();
    k.word.pop();
    let r = validate_diagram(&k);
    assert!(!r.passed());
    assert!(r.to_string().contains("does not close"), "{r}");
}

#[test]
fn cap_of_different_handles_is_reported() {
    let mut k = hopf();
    k.word = vec![
        SkelGate::Cup {
            pos: 0,
            wire: WireRef::new("a", true),
        },
        SkelGate::Cup {
            pos: 2,
            wire: WireRef::new("b", true),
        },
        SkelGate::Cap { pos: 1 },
        SkelGate::Cap { pos: 0 },
    ];
    let r = validate_diagram(&k);
    assert_eq!(r.failures[0].check, "components");
    assert_eq!(r.failures[0].position, Some(2));
}

#[test]
fn wrong_euler_and_incidence_are_reported() {
    let mut k = builtin("s1_x_s1_x_s2").unwrap();
    k.euler = 3;
    k.three_handles[0].incidence.pop();
    let r = validate_diagram(&k);
    let checks: Vec<&str> = r.failures.iter().map(|f| f.check.as_str()).collect();
    assert!(checks.contains(&"euler"));
    assert!(checks.contains(&"sheets"));
}

#[test]
fn unpaired_coupon_is_reported() {
    let mut k = builtin("s1_x_s3").unwrap();
    k.word.retain(|g| !matches!(g, SkelGate::Coupon { side: Side::PhiTilde, .. }));
    assert!(!validate_diagram(&k).passed());
}

#[test]
fn degrees_follow_sheet_words() {
    let c = fixture("vect_s3_s3").unwrap();
    let k = builtin("s1_x_s1_x_s2").unwrap();
    let grp = c.group();
    for a in grp.elements() {
        for b in grp.elements() {
            let g: SheetLabels = [("A".to_string(), a), ("B".to_string(), b)].into();
            assert_eq!(degree_of_2handle(&k, &c, "b", &g).unwrap(), grp.commutator(a, b));
            assert_eq!(degree_of_2handle(&k, &c, "a", &g).unwrap(), grp.identity());
        }
    }
    assert!(matches!(
        degree_of_2handle(&k, &c, "zz", &SheetLabels::new()),
        Err(DiagramError::Unknown2(_))
    ));
}

#[test]
fn writhes_count_self_crossings_only() {
    assert_eq!(writhes(&hopf()).unwrap()["a"], 0);
    let slid = builtin("s2_x_s2_slid").unwrap();
    assert_eq!(writhes(&slid).unwrap()["a"], 2);
    assert_eq!(writhes(&slid).unwrap()["b"], 0);
}

#[test]
fn typing_is_enforced() {
    let c = fixture("vect_z4_z2").unwrap();
    let k = builtin("cp2_plus").unwrap();
    let odd = c.labels().find(|&x| c.grade(x) != 0).unwrap();
    let l = Labelling {
        g: SheetLabels::new(),
        x: [("a".to_string(), odd)].into(),
        iota: vec![],
    };
    assert!(matches!(check_typing(&k, &c, &l), Err(DiagramError::Typing { .. })));
}

#[test]
fn empty_space_compiles_to_zero() {
    let c = fixture("vect_z3_z2_twisted").unwrap();
    let k = builtin("s1_x_s1_x_s2").unwrap();
    let omega = c.labels().find(|&x| c.act(1, x) != x).unwrap();
    let l = Labelling {
        g: [("A".to_string(), 0), ("B".to_string(), 1)].into(),
        x: [("a".to_string(), omega), ("b".to_string(), 0)].into(),
        iota: vec![0, 0],
    };
    let w = compile(&k, &l, &c).unwrap();
    assert_eq!(w.len(), 1);
    assert!(crate::treecalc::evaluate_closed(&c, &w).unwrap().is_zero());
}

#[test]
fn disjoint_union_renames_and_offsets() {
    let a = builtin("s1_x_s3").unwrap();
    let u = disjoint_union(&a, &a);
    assert_eq!(u.counts(), (2, 0, 2));
    assert_eq!(u.euler, a.euler * 2 - 2);
    assert!(validate_diagram(&u).passed());
    let ids: Vec<&str> = u.three_handles.iter().map(|h| h.id.as_str()).collect();
    assert_eq!(ids, ["A", "A'"]);
}

#[test]
fn revflip_reverses_and_flips() {
    let legs = vec![WireRef::new("a", true), WireRef::acted("b", false, &[("A", 1)])];
    let r = revflip_refs(&legs);
    assert_eq!(r[0], WireRef::acted("b", true, &[("A", 1)]));
    assert_eq!(r[1], WireRef::new("a", false));
    assert_eq!(revflip_refs(&r), legs);
}
