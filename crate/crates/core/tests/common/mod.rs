//! Independent brute-force oracles used by the integration tests.
#![allow(dead_code)]

use std::sync::Arc;

use isocrit_core::group::{abelian_groups, make_group, Element, Group};
use isocrit_core::GroupSubset;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

/// κ_k, separability and the 0-containing atoms, for k = 1..=4, found by
/// walking every subset of ⟨S⟩.
#[derive(Debug, Clone)]
pub struct Oracle {
    pub values: [i64; 5],
    pub separable: [bool; 5],
    pub atoms: [Vec<GroupSubset>; 5],
}

/// The subgroup generated by `s`, grown by closure under addition.
pub fn closure(s: &GroupSubset) -> Vec<usize> {
    let g = s.group();
    let mut h = vec![0usize];
    let mut seen = vec![false; g.order()];
    seen[0] = true;
    let mut i = 0;
    while i < h.len() {
        let x = h[i];
        for e in s.indices() {
            let y = g.add(Element(x), Element(e)).0;
            if !seen[y] {
                seen[y] = true;
                h.push(y);
            }
        }
        i += 1;
    }
    h.sort();
    h
}

pub fn oracle(s: &GroupSubset) -> Oracle {
    let g = s.group();
    let h = closure(s);
    let n = h.len();
    assert!(n <= 20, "oracle universe too large");
    let pos = |x: usize| h.iter().position(|&y| y == x).unwrap();
    let nbr: Vec<u32> = h
        .iter()
        .map(|&x| {
            s.indices()
                .map(|e| 1u32 << pos(g.add(Element(x), Element(e)).0))
                .fold(0, |a, b| a | b)
        })
        .collect();

    let mut values = [0i64; 5];
    let mut separable = [false; 5];
    let mut best: [Option<i64>; 5] = [None; 5];
    for mask in 1u32..(1 << n) {
        let mut sum = 0u32;
        let mut m = mask;
        while m != 0 {
            let b = m.trailing_zeros() as usize;
            sum |= nbr[b];
            m &= m - 1;
        }
        let x = mask.count_ones() as usize;
        let xs = sum.count_ones() as usize;
        let v = xs as i64 - x as i64;
        for k in 1..=4 {
            if x >= k && xs + k <= n && best[k].is_none_or(|b| v < b) {
                best[k] = Some(v);
            }
        }
    }
    let mut atoms: [Vec<GroupSubset>; 5] = Default::default();
    for k in 1..=4 {
        separable[k] = best[k].is_some();
        values[k] = best[k].unwrap_or((k * s.len()) as i64 - 2 * k as i64 + 1);
        if !separable[k] {
            continue;
        }
        let mut min_size = usize::MAX;
        let mut found: Vec<u32> = Vec::new();
        for mask in (1u32..(1 << n)).filter(|m| m & 1 == 1) {
            let x = mask.count_ones() as usize;
            if x < k || x > min_size {
                continue;
            }
            let mut sum = 0u32;
            let mut m = mask;
            while m != 0 {
                sum |= nbr[m.trailing_zeros() as usize];
                m &= m - 1;
            }
            let xs = sum.count_ones() as usize;
            if xs + k <= n && xs as i64 - x as i64 == values[k] {
                if x < min_size {
                    min_size = x;
                    found.clear();
                }
                found.push(mask);
            }
        }
        let mut list: Vec<GroupSubset> = found
            .into_iter()
            .map(|mask| {
                let idx: Vec<usize> = (0..n).filter(|b| mask >> b & 1 == 1).map(|b| h[b]).collect();
                GroupSubset::from_indices(g, &idx).unwrap()
            })
            .collect();
        list.sort();
        atoms[k] = list;
    }
    Oracle {
        values,
        separable,
        atoms,
    }
}

/// Every k-fragment of S inside ⟨S⟩, by exhaustion.
pub fn fragments(s: &GroupSubset, k: usize, value: i64) -> Vec<GroupSubset> {
    let h = closure(s);
    let n = h.len();
    let mut out = Vec::new();
    for m in 1u32..(1 << n) {
        let idx: Vec<usize> = (0..n).filter(|b| m >> b & 1 == 1).map(|b| h[b]).collect();
        if idx.len() < k {
            continue;
        }
        let x = GroupSubset::from_indices(s.group(), &idx).unwrap();
        let xs = x.sumset(s).unwrap().len();
        if xs + k <= n && xs as i64 - x.len() as i64 == value {
            out.push(x);
        }
    }
    out
}

/// All abelian groups (as invariant-factor lists) with `lo ≤ |G| ≤ hi`.
pub fn groups_up_to(lo: usize, hi: usize) -> Vec<Arc<Group>> {
    (lo.max(2)..=hi)
        .flat_map(abelian_groups)
        .map(|m| make_group(&m).unwrap())
        .collect()
}

/// Every subset of `g` containing 0, as index lists.
pub fn subsets_with_zero(g: &Arc<Group>) -> impl Iterator<Item = GroupSubset> + '_ {
    let n = g.order();
    (0u64..(1u64 << (n - 1))).map(move |m| {
        let idx: Vec<usize> = std::iter::once(0)
            .chain((1..n).filter(move |b| m >> (b - 1) & 1 == 1))
            .collect();
        GroupSubset::from_indices(g, &idx).unwrap()
    })
}

/// Every nonempty subset of `g`.
pub fn nonempty_subsets(g: &Arc<Group>) -> impl Iterator<Item = GroupSubset> + '_ {
    let n = g.order();
    (1u64..(1u64 << n)).map(move |m| {
        let idx: Vec<usize> = (0..n).filter(|b| m >> b & 1 == 1).collect();
        GroupSubset::from_indices(g, &idx).unwrap()
    })
}

/// Pairwise-sum Sidon test, written independently of the library.
pub fn sidon_by_sums(x: &GroupSubset) -> bool {
    let g = x.group();
    let e: Vec<usize> = x.indices().collect();
    let mut sums = Vec::new();
    for i in 0..e.len() {
        for j in i..e.len() {
            sums.push(g.add(Element(e[i]), Element(e[j])).0);
        }
    }
    let before = sums.len();
    sums.sort();
    sums.dedup();
    sums.len() == before
}

/// Random `S ∋ 0` in a random abelian group of order at most `max_order`.
pub fn random_instances(seed: u64, count: usize, max_order: usize) -> Vec<GroupSubset> {
    let groups = groups_up_to(2, max_order);
    let mut rng = StdRng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let g = &groups[rng.random_range(0..groups.len())];
            let density: f64 = rng.random_range(0.1..0.7);
            let idx: Vec<usize> = std::iter::once(0)
                .chain((1..g.order()).filter(|_| rng.random_bool(density)))
                .collect();
            GroupSubset::from_indices(g, &idx).unwrap()
        })
        .collect()
}
