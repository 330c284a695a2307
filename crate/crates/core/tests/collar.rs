mod common;

use std::collections::BTreeSet;

use proptest::prelude::*;
use teich::collar::{collar_decomposition, partial_decomposition, CollarParams};
use teich::pants::collar_modulus;
use teich::surface::{CurveId, FNPoint, Marking, PantsEnd};

fn length() -> impl Strategy<Value = f64> {
    prop_oneof![1e-4..0.1f64, 0.1..3.0f64]
}

/// Number of pants-graph components after deleting the edges of `cut`, by union-find.
fn union_find_components(m: &Marking, cut: &BTreeSet<CurveId>) -> usize {
    let d = m.decomposition();
    let mut parent: Vec<usize> = (0..d.pants().len()).collect();
    fn find(p: &mut Vec<usize>, x: usize) -> usize {
        if p[x] != x {
            let r = find(p, p[x]);
            p[x] = r;
        }
        p[x]
    }
    for id in d.internal_curves().filter(|id| !cut.contains(id)) {
        let mut ends = Vec::new();
        for (k, p) in d.pants().iter().enumerate() {
            for e in &p.ends {
                if matches!(e, PantsEnd::Curve { curve, .. } if *curve == id) {
                    ends.push(k);
                }
            }
        }
        let (a, b) = (find(&mut parent, ends[0]), find(&mut parent, ends[1]));
        parent[a] = b;
    }
    (0..parent.len()).filter(|&x| find(&mut parent, x) == x).count()
}

proptest! {
    #[test]
    fn chain_decomposition_matches_union_find(l in proptest::collection::vec(length(), 6)) {
        let m = common::genus_three_chain();
        let s = FNPoint::new(&m, l.clone(), vec![0.0; 6]).unwrap();
        let params = CollarParams::default();
        let dec = collar_decomposition(&m, &s, &params).unwrap();
        let thin = dec.thin_curves();
        prop_assert_eq!(dec.thick.len(), union_find_components(&m, &thin));
        let covered: usize = dec.thick.iter().map(|c| c.pants.len()).sum();
        prop_assert_eq!(covered, 4);
        for a in &dec.thin {
            prop_assert_eq!(a.modulus, collar_modulus(l[a.curve.0], params.eps0()).unwrap());
            prop_assert!(!a.peripheral);
        }
    }

    #[test]
    fn shrinking_eps1_never_adds_thin_curves(
        l in proptest::collection::vec(length(), 6),
        e1 in 0.001..0.2f64, e2 in 0.001..0.2f64,
    ) {
        let (lo, hi) = if e1 < e2 { (e1, e2) } else { (e2, e1) };
        let m = common::genus_three_chain();
        let s = FNPoint::new(&m, l, vec![0.0; 6]).unwrap();
        let thin = |e| {
            let p = CollarParams::with_eps(0.5, e).unwrap();
            collar_decomposition(&m, &s, &p).unwrap().thin_curves()
        };
        prop_assert!(thin(lo).is_subset(&thin(hi)));
    }

    #[test]
    fn partial_subsets_refine(l in proptest::collection::vec(1e-4..0.1f64, 6), mask in 0u32..64) {
        let m = common::genus_three_chain();
        let s = FNPoint::new(&m, l, vec![0.0; 6]).unwrap();
        let subset: BTreeSet<CurveId> = (0..6).filter(|k| mask & (1 << k) != 0).map(CurveId).collect();
        let dec = partial_decomposition(&m, &s, &CollarParams::default(), &subset).unwrap();
        prop_assert_eq!(dec.thin_curves(), subset.clone());
        prop_assert_eq!(dec.thick.len(), union_find_components(&m, &subset));
    }
}

#[test]
fn peripheral_annulus_has_half_modulus() {
    let m = common::holed_torus();
    let s = FNPoint::new(&m, vec![0.05, 0.01], vec![0.3, 0.0]).unwrap();
    let dec = collar_decomposition(&m, &s, &CollarParams::default()).unwrap();
    let b = dec.annulus(CurveId(1)).unwrap();
    assert!(b.peripheral);
    assert_eq!(b.modulus, 0.5 * collar_modulus(0.01, 0.5).unwrap());
    let a = dec.annulus(CurveId(0)).unwrap();
    assert_eq!(a.modulus, collar_modulus(0.05, 0.5).unwrap());
    // the single pants loses its only internal curve but stays one component
    assert_eq!(dec.thick.len(), 1);
}

#[test]
fn rejects_bad_constants() {
    assert!(CollarParams::with_eps(0.1, 0.5).is_err());
    assert!(CollarParams::with_eps(0.5, 3.0).is_err());
    assert!(CollarParams::new(0.5, 0.1, 0.4).is_err());
    let m = common::genus_three_chain();
    let s = FNPoint::new(&m, vec![1.0; 6], vec![0.0; 6]).unwrap();
    let subset: BTreeSet<CurveId> = [CurveId(0)].into();
    assert!(partial_decomposition(&m, &s, &CollarParams::default(), &subset).is_err());
}
