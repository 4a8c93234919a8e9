use gxkirby::gxcat::{fixture, fixture_names, GroupData};
use gxkirby::invariant::{crane_yetter_hat, invariant, simply_connected_value, state_space_dim, ThreeManifold};
use gxkirby::manifolds::*;

#[test]
fn builtin_metadata() {
    let want = [
        ("s4", (2, 0)),
        ("s1_x_s3", (0, 0)),
        ("s2_x_s2", (4, 0)),
        ("cp2_plus", (3, 1)),
        ("cp2_minus", (3, -1)),
        ("s1_x_s1_x_s2", (0, 0)),
    ];
    for (m, (chi, sigma)) in want {
        let k = builtin(m).unwrap();
        assert_eq!((k.euler, k.signature), (chi, sigma), "{m}");
    }
    assert_eq!(builtin("s1_x_s3").unwrap().counts(), (1, 0, 1));
    assert!(builtin("rp4").is_err());
}

#[test]
fn presentations() {
    let p = pi1_presentation(&builtin("s1_x_s1_x_s2").unwrap());
    assert_eq!(p.to_string(), "⟨A,B | ε, ABA⁻¹B⁻¹⟩");
    let p = pi1_presentation(&builtin("s1_x_s3").unwrap());
    assert_eq!((p.generators.len(), p.relators.len()), (1, 0));
    let p = pi1_presentation(&builtin("s2_x_s2").unwrap());
    assert_eq!(p.to_string(), "⟨ | ε, ε⟩");
}

#[test]
fn connected_sum_presentation_is_free_product() {
    let a = pi1_presentation(&builtin("s1_x_s3").unwrap());
    let b = pi1_presentation(&builtin("s1_x_s1_x_s2").unwrap());
    let sum = pi1_presentation(&connected_sum(&["s1_x_s3", "s1_x_s1_x_s2"]).unwrap());
    let fp = a.free_product(&b);
    assert_eq!(sum.relators, fp.relators);
    assert_eq!(sum.generators.len(), fp.generators.len());
}

fn commuting_pairs(g: &GroupData) -> u64 {
    let mut n = 0;
    for a in g.elements() {
        for b in g.elements() {
            if g.mul(a, b) == g.mul(b, a) {
                n += 1;
            }
        }
    }
    n
}

#[test]
fn dw_counts() {
    let z2 = fixture("vect_z3_z2_trivial").unwrap().group().clone();
    let s3 = fixture("vect_s3_s3").unwrap().group().clone();
    let circle = pi1_presentation(&builtin("s1_x_s3").unwrap());
    let torus = pi1_presentation(&builtin("s1_x_s1_x_s2").unwrap());
    assert_eq!(dw_count(&circle, &z2), 2);
    assert_eq!(dw_count(&torus, &z2), 4);
    assert_eq!(dw_count(&torus, &s3), commuting_pairs(&s3));
    assert_eq!(dw_count(&torus, &s3), 18);
    let both = circle.free_product(&torus);
    assert_eq!(dw_count(&both, &s3), dw_count(&circle, &s3) * dw_count(&torus, &s3));
}

#[test]
fn dw_factorization() {
    let c = fixture("vect_z3_z2_trivial").unwrap();
    assert!(dw_factorization_check(&builtin("s1_x_s1_x_s2").unwrap(), &c).unwrap());
    assert!(dw_factorization_check(&builtin("s2_x_s2").unwrap(), &c).unwrap());
    let rep = fixture("rep_z2").unwrap();
    assert_eq!(invariant(&builtin("s1_x_s3").unwrap(), &rep).unwrap().value, rep.int(2));
    assert!(dw_factorization_check(&builtin("s1_x_s3").unwrap(), &rep).unwrap());
    assert!(dw_factorization_check(&builtin("s4").unwrap(), &fixture("vect_z4_z2").unwrap()).is_err());
}

#[test]
fn crane_yetter_needs_no_three_handles() {
    let c = fixture("semion").unwrap();
    assert!(crane_yetter_hat(&builtin("s1_x_s3").unwrap(), &c).is_err());
    assert_eq!(
        crane_yetter_hat(&builtin("cp2_plus").unwrap(), &c).unwrap(),
        invariant(&builtin("cp2_plus").unwrap(), &c).unwrap().value
    );
}

#[test]
fn simply_connected_values() {
    let c = fixture("semion").unwrap();
    let s2s2 = invariant(&builtin("s2_x_s2").unwrap(), &c).unwrap().value;
    assert_eq!(simply_connected_value(&c, 4, 0).unwrap(), s2s2);
    assert_eq!(simply_connected_value(&c, 2, 0).unwrap(), c.one());
    assert!(simply_connected_value(&c, 3, 0).is_err());
}

#[test]
fn state_spaces() {
    for f in fixture_names() {
        let c = fixture(f).unwrap();
        assert_eq!(state_space_dim(&c, ThreeManifold::S3).unwrap(), c.one(), "{f}");
    }
    for (f, n) in [("vect_z3_z2_trivial", 6), ("vect_z3_z2_twisted", 3), ("semion", 1)] {
        let c = fixture(f).unwrap();
        assert_eq!(state_space_dim(&c, ThreeManifold::S1xS2).unwrap(), c.int(n), "{f}");
    }
}
