mod common;

use bianchi_core::arith::{self, hilbert_symbol, Place};
use common::solver::symbol_by_search;
use proptest::prelude::*;

#[test]
fn search_detects_nonsplit_algebras() {
    use Place::*;
    assert_eq!(symbol_by_search(-1, -1, Finite(2)), -1);
    assert_eq!(symbol_by_search(-1, -1, Infinity), -1);
    assert_eq!(symbol_by_search(-1, -1, Finite(3)), 1);
    assert_eq!(symbol_by_search(2, 3, Finite(3)), -1);
    assert_eq!(symbol_by_search(2, -1, Finite(2)), 1);
    assert_eq!(symbol_by_search(3, 5, Finite(5)), -1);
    assert_eq!(symbol_by_search(12, 45, Finite(5)), -1);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn search_matches_formula(a in -120i64..120, b in -120i64..120) {
        prop_assume!(a != 0 && b != 0);
        for v in arith::relevant_places(&[a, b]).unwrap() {
            prop_assert_eq!(symbol_by_search(a, b, v), hilbert_symbol(a, b, v), "({}, {})_{}", a, b, v);
        }
    }
}
