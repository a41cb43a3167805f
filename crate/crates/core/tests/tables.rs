use nk_core::algebra::FinitelyPresentedAlgebra;
use nk_core::hochschild::hochschild_homology;
use nk_core::hochschild::hodge::hodge_decompose;
use nk_core::nk_engine::{fiber_cohomology, tk_table, tk_table_artinian, Branch, NKTable};
use nk_core::verify::artinian_corpus;
use nk_core::witt_cartier::typical_piece;

#[test]
fn large_n_matches_hochschild() {
    for (name, a) in artinian_corpus() {
        let t = tk_table_artinian(&a, 0, 4).unwrap();
        let hh = hochschild_homology(&a.basis_algebra(None).unwrap(), 3).unwrap();
        for n in 2..=4 {
            assert_eq!(
                t.total(n).unwrap(),
                hh.total(n as usize - 1),
                "{name} n={n}"
            );
        }
    }
}

#[test]
fn layout_and_branches() {
    for (_, a) in artinian_corpus() {
        let t = tk_table_artinian(&a, -2, 3).unwrap();
        assert!(t.entries.iter().all(|e| e.i >= 1));
        for e in &t.entries {
            let expect = if e.i < e.n {
                Branch::Hochschild
            } else if e.i <= e.n + 1 {
                Branch::ExactSequence
            } else {
                Branch::CdhVanishing
            };
            assert_eq!(e.branch, expect, "n={} i={}", e.n, e.i);
        }
        // the i <= 0 column is never stored
        assert_eq!(t.get(1, 0), None);
        assert_eq!(t.dim(1, 0), 0);
    }
}

#[test]
fn cartier_shape_of_every_entry() {
    let a = FinitelyPresentedAlgebra::parse("ring Q[x]/(x^3)").unwrap();
    let t = tk_table_artinian(&a, 0, 3).unwrap();
    for e in &t.entries {
        let m = t.cartier_module(e.n, e.i, 5);
        let tp = typical_piece(&m, &[]).unwrap();
        // the typical piece is TK ⊗ t, and every weight of the module has its size
        assert_eq!(tp.dim(), e.dim);
        assert_eq!(tp.dim_at(1), e.dim);
        assert!(tp.tensor_identity);
        assert!((1..=5).all(|w| m.dim(w) == e.dim));
    }
}

#[test]
fn json_schema_fields() {
    let a = FinitelyPresentedAlgebra::parse("ring Q[x,y]/(y^2 - x^3) weights x=2 y=3").unwrap();
    let t = tk_table(&a, -1, 2, Some(10)).unwrap();
    let v: serde_json::Value = serde_json::to_value(&t).unwrap();
    for key in [
        "ring",
        "class",
        "n_min",
        "n_max",
        "weight_bound",
        "entries",
        "totals",
        "e_n",
    ] {
        assert!(v.get(key).is_some(), "{key}");
    }
    let e = &v["entries"][0];
    for key in ["n", "i", "dim", "certified_to", "branch"] {
        assert!(e.get(key).is_some(), "{key}");
    }
    let back: NKTable = serde_json::from_value(v).unwrap();
    assert_eq!(back, t);
}

#[test]
fn fiber_cohomology_matches_hh() {
    for (name, a) in artinian_corpus() {
        let t = tk_table_artinian(&a, -1, 4).unwrap();
        let h = hodge_decompose(&a.basis_algebra(None).unwrap(), 3).unwrap();
        let f = fiber_cohomology(&t, Some(&h));
        assert!(f.passed(), "{name}: {:?}", f.hh_checks);
        assert_eq!(f.hh_checks.len(), 3);
    }
}
