use noble_core::oracle::{are_isomorphic, small_groups};

#[test]
fn one_group_per_isomorphism_class_up_to_24() {
    let groups = small_groups(24);
    let mut counts = [0usize; 25];
    for g in &groups {
        assert!(g.is_group(), "{:?}", g.name());
        counts[g.order()] += 1;
    }
    // number of groups of each order 1..=24
    let expected = [1, 1, 1, 2, 1, 2, 1, 5, 2, 2, 1, 5, 1, 2, 1, 14, 1, 5, 1, 5, 2, 2, 1, 15];
    assert_eq!(&counts[1..], &expected);
    for (i, a) in groups.iter().enumerate() {
        for b in groups[i + 1..].iter().filter(|b| b.order() == a.order()) {
            assert!(are_isomorphic(a, b).is_none(), "{:?} ≅ {:?}", a.name(), b.name());
        }
    }
}

#[test]
fn catalog_is_ordered_and_named() {
    let groups = small_groups(12);
    assert!(groups.windows(2).all(|w| w[0].order() <= w[1].order()));
    assert!(groups.iter().all(|g| g.name().is_some_and(|n| !n.is_empty())));
    assert_eq!(groups.len(), 24);
}
