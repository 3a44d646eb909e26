use std::time::Instant;

use nclogic::universe::{
    verify_all_axioms, verify_axiom, verify_extension_laws, verify_structure_laws, Axiom, Fragment, Universe,
};

#[test]
fn full_axiom_battery() {
    let u = Universe::new();
    let start = Instant::now();
    for r in verify_all_axioms(&u) {
        eprintln!("{:<18} inputs W_{} instances {:>6} checks {:>9} ({:?})", r.axiom, r.input_level, r.instances, r.checks, start.elapsed());
        assert!(r.passed(), "{r:#?}");
    }
}

#[test]
fn extensionality_covers_all_pairs() {
    let u = Universe::new();
    let r = verify_axiom(&u, Axiom::Extensionality, None).unwrap();
    assert_eq!(r.instances, 65_536);
    assert_eq!(r.fragment_size, 256);
    assert!(r.passed());
}

#[test]
fn extension_and_structure_laws() {
    let u = Universe::new();
    let laws = verify_extension_laws(&u, 3).unwrap();
    assert_eq!(laws.len(), 7);
    for r in laws.iter().chain(&verify_structure_laws(&u)) {
        assert!(r.passed(), "{r:#?}");
    }
}

#[test]
fn w3_model_is_valid() {
    let u = Universe::new();
    let m = Fragment::level(&u, 3).unwrap().as_tf_model();
    assert_eq!(m.domain.len(), 256);
    m.validate().unwrap();
}
