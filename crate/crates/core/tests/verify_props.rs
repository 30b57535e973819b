mod common;

use common::*;
use locdim_core::exact::{distinguisher_family, exact_local_metric_dimension};
use locdim_core::verify::{distinguishers, is_local_resolving};
use proptest::prelude::*;

#[test]
fn named_distinguisher_sets() {
    let k4 = complete(4);
    for (u, v) in k4.edges() {
        assert_eq!(distinguishers(&k4, u, v), vec![u, v]);
    }
    let p3 = graph(3, &[(0, 1), (1, 2)]);
    assert_eq!(distinguishers(&p3, 0, 2), vec![0, 2]);
}

#[test]
fn named_exact_values() {
    let k5e = graph(
        5,
        &[
            (0, 1),
            (0, 2),
            (0, 3),
            (0, 4),
            (1, 2),
            (1, 3),
            (1, 4),
            (2, 3),
            (2, 4),
        ],
    );
    assert_eq!(
        exact_local_metric_dimension(&complete(5))
            .unwrap()
            .dimension,
        4
    );
    assert_eq!(exact_local_metric_dimension(&k5e).unwrap().dimension, 3);
    assert_eq!(
        exact_local_metric_dimension(&cycle(5)).unwrap().dimension,
        2
    );
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn exact_matches_enumeration(g in connected_graph(8)) {
        let r = exact_local_metric_dimension(&g).unwrap();
        prop_assert_eq!(r.dimension, naive_dim_l(&g));
        prop_assert_eq!(r.witness.len(), r.dimension);
        prop_assert!(resolves(&g, &floyd(&g), mask_of(&r.witness)));
        prop_assert!(r.forced.iter().all(|v| r.witness.contains(v)));
    }

    #[test]
    fn checker_matches_oracle(g in any_graph(9), m in any::<u64>()) {
        let mask = m & ((1u64 << g.n()) - 1);
        let set: Vec<usize> = g.vertices().filter(|&v| mask >> v & 1 == 1).collect();
        let check = is_local_resolving(&g, &set);
        prop_assert_eq!(check.is_valid(), resolves(&g, &floyd(&g), mask));
        if let Some(cert) = check.certificate() {
            prop_assert!(cert.recheck(&g));
        }
    }

    #[test]
    fn supersets_stay_resolving(g in connected_graph(9), m in any::<u64>(), extra in 0usize..9) {
        let n = g.n();
        let set: Vec<usize> = (0..n).filter(|&v| m >> v & 1 == 1).collect();
        if is_local_resolving(&g, &set).is_valid() {
            let mut bigger = set.clone();
            bigger.push(extra % n);
            prop_assert!(is_local_resolving(&g, &bigger).is_valid());
        }
    }

    #[test]
    fn distinguishers_symmetric(g in connected_graph(10)) {
        let d = floyd(&g);
        for (u, v) in g.edges() {
            let a = distinguishers(&g, u, v);
            prop_assert_eq!(&a, &distinguishers(&g, v, u));
            prop_assert!(a.contains(&u) && a.contains(&v));
            let want: Vec<usize> = g.vertices().filter(|&w| d[w][u] != d[w][v]).collect();
            prop_assert_eq!(a, want);
        }
    }

    #[test]
    fn family_sets_are_minimal(g in connected_graph(10)) {
        let fam = distinguisher_family(&g);
        for (i, &a) in fam.iter().enumerate() {
            for (j, &b) in fam.iter().enumerate() {
                prop_assert!(i == j || a & b != a, "superset kept");
            }
        }
    }
}
