use std::time::Instant;

use nclogic::semantics::DEFAULT_BUDGET;
use nclogic::tarski::{separation_matrix, sweep};

#[test]
fn exhaustive_small_sweep() {
    let start = Instant::now();
    let r = sweep(2, DEFAULT_BUDGET).unwrap();
    eprintln!("{r:#?} in {:?}", start.elapsed());
    assert!(r.passed(), "{r:#?}");
    assert_eq!(r.models, 32 + 32_768);
    assert!(r.pairs >= 10_000);
    assert_eq!(r.validity_agreements as usize, r.formulas);
}

#[test]
fn separation_up_to_three() {
    for e in separation_matrix(3, DEFAULT_BUDGET).unwrap() {
        assert!(e.passed(), "{e:?}");
    }
}
