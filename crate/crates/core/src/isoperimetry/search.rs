//! Exact branch-and-bound over subsets `X ∋ 0` of a finite universe.
//!
//! A node fixes disjoint sets `I ⊆ X` and `O ∩ X = ∅`. With `IS = I + S`,
//! every completion satisfies `|X+S| - |X| ≥ |IS ∩ O|` and `|X+S| ≥ |IS|`.
//! Branching follows the frontier `IS \ (I ∪ O)`, so a node whose frontier is
//! empty holds a set `I` with `I + S ⊆ I ∪ O`, whose boundary is exactly the
//! lower bound.

use std::sync::Arc;

use crate::bits::{with_width, Bits};
use crate::error::{Error, Result};
use crate::group::{Element, Group, Subgroup};
use crate::subset::GroupSubset;

/// A subgroup with its elements renumbered `0..len`, position 0 being 0.
#[derive(Debug, Clone)]
pub(crate) struct Universe {
    group: Arc<Group>,
    subgroup: Subgroup,
    elems: Vec<usize>,
    pos: Vec<u32>,
}

impl Universe {
    pub fn new(subgroup: Subgroup) -> Self {
        let group = Arc::clone(subgroup.carrier().group());
        let elems: Vec<usize> = subgroup.carrier().indices().collect();
        let mut pos = vec![u32::MAX; group.order()];
        for (p, &e) in elems.iter().enumerate() {
            pos[e] = p as u32;
        }
        Universe {
            group,
            subgroup,
            elems,
            pos,
        }
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn subgroup(&self) -> &Subgroup {
        &self.subgroup
    }

    pub fn to_subset(&self, positions: &[usize]) -> GroupSubset {
        GroupSubset::from_elements(&self.group, positions.iter().map(|&p| Element(self.elems[p])))
    }

    fn step_masks<const N: usize>(&self, step: &GroupSubset) -> Vec<Bits<N>> {
        self.elems
            .iter()
            .map(|&x| {
                let mut b = Bits::<N>::ZERO;
                for s in step.indices() {
                    b.set(self.pos[self.group.add_idx(x, s)] as usize);
                }
                b
            })
            .collect()
    }
}

#[derive(Debug, Clone, Copy)]
pub(crate) enum Goal {
    /// Smallest boundary below `bound` over `|X| ≥ k`, `|X+S| ≤ n-k`;
    /// `dual` additionally requires `|X| + |X+S| ≤ n`.
    Min {
        bound: usize,
        dual: bool,
        first_only: bool,
    },
    /// Minimal-cardinality sets with boundary `target`, `|X| ≥ k`, `|X+S| ≤ n-k`.
    Atoms { target: usize },
    /// Every `X` with boundary `target`, `|X| ≥ min_size`, `|X+S| ≤ max_sum`.
    Enumerate {
        target: usize,
        min_size: usize,
        max_sum: usize,
    },
}

#[derive(Debug, Default)]
pub(crate) struct Outcome {
    pub best: Option<(usize, Vec<usize>)>,
    pub sets: Vec<Vec<usize>>,
}

/// Work counter shared by the searches of one request.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Budget {
    pub limit: u64,
    pub used: u64,
}

impl Budget {
    pub fn new(limit: u64) -> Self {
        Budget { limit, used: 0 }
    }
}

pub(crate) fn run(
    universe: &Universe,
    step: &GroupSubset,
    k: usize,
    goal: Goal,
    budget: &mut Budget,
    emit: &mut dyn FnMut(&[usize]),
) -> Result<Outcome> {
    with_width!(universe.len(), W => {
        let nbr = universe.step_masks::<W>(step);
        search::<W>(&nbr, k, goal, budget, emit)
    })
}

struct Node<const N: usize> {
    i: Bits<N>,
    o: Bits<N>,
    is: Bits<N>,
    ni: usize,
}

fn search<const N: usize>(
    nbr: &[Bits<N>],
    k: usize,
    goal: Goal,
    budget: &mut Budget,
    emit: &mut dyn FnMut(&[usize]),
) -> Result<Outcome> {
    let n = nbr.len();
    let all = Bits::<N>::first_n(n);
    let max_sum = match goal {
        Goal::Enumerate { max_sum, .. } => max_sum,
        _ => n.saturating_sub(k),
    };
    let mut best_val = match goal {
        Goal::Min { bound, .. } => bound,
        _ => usize::MAX,
    };
    let mut best_size = usize::MAX;
    let mut out = Outcome::default();
    let mut stack = vec![Node {
        i: Bits::ZERO.with(0),
        o: Bits::ZERO,
        is: nbr[0],
        ni: 1,
    }];

    while let Some(nd) = stack.pop() {
        budget.used += 1;
        if budget.used > budget.limit {
            return Err(Error::BudgetExceeded {
                budget: budget.limit,
            });
        }
        let ns = nd.is.count();
        if ns > max_sum {
            continue;
        }
        let lb = nd.is.and_count(&nd.o);
        let pruned = match goal {
            Goal::Min { dual, .. } => lb >= best_val || (dual && nd.ni + ns > n),
            Goal::Atoms { target } => lb > target || nd.ni > best_size,
            Goal::Enumerate { target, .. } => lb > target,
        };
        if pruned {
            continue;
        }

        let frontier = nd.is.and_not(&nd.i).and_not(&nd.o);
        if let Some(f) = frontier.lowest() {
            stack.push(Node {
                i: nd.i,
                o: nd.o.with(f),
                is: nd.is,
                ni: nd.ni,
            });
            stack.push(Node {
                i: nd.i.with(f),
                o: nd.o,
                is: nd.is.or(&nbr[f]),
                ni: nd.ni + 1,
            });
            continue;
        }

        // I is closed: its boundary is exactly lb, and no extension does better.
        match goal {
            Goal::Min { first_only, .. } if nd.ni >= k => {
                best_val = lb;
                out.best = Some((lb, nd.i.ones().collect()));
                if first_only {
                    break;
                }
                continue;
            }
            Goal::Atoms { target } if nd.ni >= k => {
                if lb == target {
                    if nd.ni < best_size {
                        best_size = nd.ni;
                        out.sets.clear();
                    }
                    out.sets.push(nd.i.ones().collect());
                }
                continue;
            }
            Goal::Enumerate {
                target, min_size, ..
            } => {
                if nd.ni >= min_size && lb == target {
                    let v: Vec<usize> = nd.i.ones().collect();
                    emit(&v);
                }
            }
            _ => {}
        }

        // Grow by a fresh seed; earlier seeds are excluded so each set arises once.
        let undecided = all.and_not(&nd.is).and_not(&nd.o);
        let seeds: Vec<usize> = undecided.ones().collect();
        let mut excl = nd.o;
        let mut children = Vec::with_capacity(seeds.len());
        for u in seeds {
            children.push(Node {
                i: nd.i.with(u),
                o: excl,
                is: nd.is.or(&nbr[u]),
                ni: nd.ni + 1,
            });
            excl.set(u);
        }
        stack.extend(children.into_iter().rev());
    }
    Ok(out)
}
