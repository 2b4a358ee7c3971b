mod common;

use common::{groups_up_to, oracle, random_instances, subsets_with_zero};
use isocrit_core::isoperimetry::{atoms, is_k_separable, kappa, kappa_at_most, SearchOptions};

fn check(s: &isocrit_core::GroupSubset) {
    let o = oracle(s);
    for k in 1..=4 {
        let r = kappa(s, k).unwrap();
        assert_eq!(r.value, o.values[k], "kappa_{k} of {s:?}");
        assert_eq!(r.separable, o.separable[k], "separable_{k} of {s:?}");
        assert_eq!(is_k_separable(s, k).unwrap(), o.separable[k], "is_k_separable {k} {s:?}");
        for b in -1..=o.values[k] + 1 {
            let got = kappa_at_most(s, k, b, &SearchOptions::default()).unwrap();
            match got {
                Some(r) => {
                    assert!(o.values[k] <= b, "at_most {b} answered for {s:?}");
                    assert_eq!((r.value, r.separable), (o.values[k], o.separable[k]));
                }
                None => assert!(o.values[k] > b, "at_most {b} silent for {s:?} k={k}"),
            }
        }
        if o.separable[k] {
            let w = r.witness.unwrap();
            assert_eq!(
                w.sumset(s).unwrap().len() as i64 - w.len() as i64,
                o.values[k]
            );
            let a = atoms(s, k).unwrap();
            assert_eq!(a.atoms, o.atoms[k], "atoms_{k} of {s:?}");
        }
    }
}

#[test]
fn exhaustive_small_groups_match_oracle() {
    for g in groups_up_to(2, 10) {
        for s in subsets_with_zero(&g) {
            check(&s);
        }
    }
}

#[test]
fn random_instances_match_oracle() {
    for s in random_instances(7, 300, 16) {
        check(&s);
    }
}
