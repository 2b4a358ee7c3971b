//! Shared fixtures for the benchmarks.

use std::sync::Arc;

use isocrit_core::{make_group, Group, GroupSubset};

pub fn cyclic(n: usize) -> Arc<Group> {
    make_group(&[n]).expect("valid modulus")
}

pub fn set(g: &Arc<Group>, idx: &[usize]) -> GroupSubset {
    GroupSubset::from_indices(g, idx).expect("indices in range")
}

/// `{0, 1, ..., len-1}` in `g`.
pub fn interval(g: &Arc<Group>, len: usize) -> GroupSubset {
    set(g, &(0..len).collect::<Vec<_>>())
}

/// The m = 5 construction with q = 13: `{0,1,2,4} × {0,1,3,9}`.
pub fn example_set() -> GroupSubset {
    let g = make_group(&[7, 13]).expect("valid moduli");
    let idx: Vec<usize> = [0, 1, 2, 4]
        .iter()
        .flat_map(|&a| [0, 1, 3, 9].map(move |b| a * 13 + b))
        .collect();
    set(&g, &idx)
}
