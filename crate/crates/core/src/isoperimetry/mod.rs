//! The isoperimetric numbers `κ_k`, their fragments and atoms.

mod lemmas;
pub(crate) mod search;

pub use lemmas::{check_atom_lemmas, fainting_bound_check};

use crate::error::{Error, Result};
use crate::group::{Element, Subgroup};
use crate::subset::GroupSubset;
use search::{Budget, Goal, Universe};

/// Default cap on search nodes per request.
pub const DEFAULT_BUDGET: u64 = 1_000_000_000;

#[derive(Debug, Clone, Copy)]
pub struct SearchOptions {
    pub budget: u64,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            budget: DEFAULT_BUDGET,
        }
    }
}

#[derive(Debug, Clone)]
pub struct KappaResult {
    pub k: usize,
    pub value: i64,
    pub separable: bool,
    /// A k-fragment; `None` when not separable.
    pub witness: Option<GroupSubset>,
    /// `⟨S⟩`, the universe of the minimization.
    pub ambient: Subgroup,
}

/// `k|S| - 2k + 1`, the value used when `S` is not k-separable.
pub fn convention_value(s_len: usize, k: usize) -> i64 {
    (k * s_len) as i64 - 2 * k as i64 + 1
}

fn check_args(s: &GroupSubset, k: usize) -> Result<()> {
    if k == 0 {
        return Err(Error::InvalidArgument("k must be at least 1".into()));
    }
    if !s.contains(Element(0)) {
        return Err(Error::MissingZero);
    }
    Ok(())
}

/// `|X + S| - |X|`.
pub fn boundary(x: &GroupSubset, s: &GroupSubset) -> Result<i64> {
    Ok(x.sumset(s)?.len() as i64 - x.len() as i64)
}

/// Whether `x` is a k-fragment of `s` given `κ_k(S) = value`, inside `ambient`.
pub fn is_fragment(x: &GroupSubset, s: &GroupSubset, k: usize, value: i64, ambient: &Subgroup) -> Result<bool> {
    let xs = x.sumset(s)?;
    Ok(x.is_subset(ambient.carrier())
        && x.len() >= k
        && xs.len() + k <= ambient.order()
        && xs.len() as i64 - x.len() as i64 == value)
}

pub fn is_k_separable(s: &GroupSubset, k: usize) -> Result<bool> {
    is_k_separable_with(s, k, &SearchOptions::default())
}

pub fn is_k_separable_with(s: &GroupSubset, k: usize, opts: &SearchOptions) -> Result<bool> {
    check_args(s, k)?;
    let universe = Universe::new(s.generated_subgroup());
    let n = universe.len();
    if n < 2 * k {
        return Ok(false);
    }
    if greedy_separator(s, k, universe.subgroup()).is_some() {
        return Ok(true);
    }
    let mut budget = Budget::new(opts.budget);
    for step in [s.clone(), s.negate()] {
        let goal = Goal::Min {
            bound: usize::MAX,
            dual: true,
            first_only: true,
        };
        let out = search::run(&universe, &step, k, goal, &mut budget, &mut |_| {})?;
        if out.best.is_some() {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Grows `{0}` one element at a time, keeping `|X + S|` smallest.
fn greedy_separator(s: &GroupSubset, k: usize, h: &Subgroup) -> Option<GroupSubset> {
    let mut x = GroupSubset::singleton(s.group(), Element(0));
    while x.len() < k {
        let next = h
            .carrier()
            .elements()
            .filter(|e| !x.contains(*e))
            .min_by_key(|&e| x.with(e).sumset_unchecked(s).len())?;
        x.insert_idx(next.0);
    }
    (x.sumset_unchecked(s).len() + k <= h.order()).then_some(x)
}

pub fn kappa(s: &GroupSubset, k: usize) -> Result<KappaResult> {
    kappa_with(s, k, &SearchOptions::default())
}

pub fn kappa_with(s: &GroupSubset, k: usize, opts: &SearchOptions) -> Result<KappaResult> {
    check_args(s, k)?;
    let universe = Universe::new(s.generated_subgroup());
    let mut budget = Budget::new(opts.budget);
    kappa_in(&universe, s, k, &mut budget)
}

/// `κ_k(S)` when it is at most `bound`, `None` otherwise. Much cheaper than
/// [`kappa_with`] when the bound is small, since larger values are never searched.
pub fn kappa_at_most(s: &GroupSubset, k: usize, bound: i64, opts: &SearchOptions) -> Result<Option<KappaResult>> {
    if bound < 0 {
        return Ok(Some(kappa_with(s, k, opts)?).filter(|r| r.value <= bound));
    }
    check_args(s, k)?;
    let universe = Universe::new(s.generated_subgroup());
    let mut budget = Budget::new(opts.budget);
    kappa_bounded_in(&universe, s, k, Some(bound as usize), &mut budget)
}

fn kappa_in(universe: &Universe, s: &GroupSubset, k: usize, budget: &mut Budget) -> Result<KappaResult> {
    Ok(kappa_bounded_in(universe, s, k, None, budget)?.expect("unbounded search always answers"))
}

/// With `at_most = Some(b)`, answers only when `κ_k(S) ≤ b`.
fn kappa_bounded_in(
    universe: &Universe,
    s: &GroupSubset,
    k: usize,
    at_most: Option<usize>,
    budget: &mut Budget,
) -> Result<Option<KappaResult>> {
    let n = universe.len();
    let conv = convention_value(s.len(), k);
    let not_separable = || KappaResult {
        k,
        value: conv,
        separable: false,
        witness: None,
        ambient: universe.subgroup().clone(),
    };
    if n < 2 * k {
        return Ok((at_most.is_none_or(|b| conv <= b as i64)).then(not_separable));
    }
    // A fragment of S or of -S has a dual fragment with |X| + |X+S| ≤ n,
    // and the dual of a fragment of -S is a fragment of S.
    let neg = s.negate();
    let search_both = |bound: usize, budget: &mut Budget| -> Result<Option<(usize, GroupSubset)>> {
        let mut best: Option<(usize, GroupSubset)> = None;
        for (step, flipped) in [(s, false), (&neg, true)] {
            let bound = best.as_ref().map_or(bound, |b| b.0);
            let goal = Goal::Min {
                bound,
                dual: true,
                first_only: false,
            };
            let out = search::run(universe, step, k, goal, budget, &mut |_| {})?;
            if let Some((v, pos)) = out.best {
                let x = universe.to_subset(&pos);
                let w = if flipped {
                    universe
                        .subgroup()
                        .carrier()
                        .difference_unchecked(&x.sumset_unchecked(&neg))
                } else {
                    x
                };
                best = Some((v, w));
            }
        }
        Ok(best)
    };
    let separable = |(v, w): (usize, GroupSubset)| KappaResult {
        k,
        value: v as i64,
        separable: true,
        witness: Some(w),
        ambient: universe.subgroup().clone(),
    };
    if let Some(b) = at_most {
        if let Some(found) = search_both(b + 1, budget)? {
            return Ok(Some(separable(found)));
        }
        // nothing separable at or below b; the convention value may still be
        if conv <= b as i64 && search_both(usize::MAX, budget)?.is_none() {
            return Ok(Some(not_separable()));
        }
        return Ok(None);
    }
    let first_bound = if conv >= 0 { conv as usize + 1 } else { 0 };
    let mut found = search_both(first_bound, budget)?;
    if found.is_none() {
        found = search_both(usize::MAX, budget)?;
    }
    Ok(Some(match found {
        Some(f) => separable(f),
        None => not_separable(),
    }))
}

/// The k-atoms of `S` that contain 0, in lexicographic order.
#[derive(Debug, Clone)]
pub struct AtomSet {
    pub k: usize,
    pub value: i64,
    pub atoms: Vec<GroupSubset>,
    /// Only atoms containing 0 are listed.
    pub normalized: bool,
    pub ambient: Subgroup,
}

impl AtomSet {
    pub fn size(&self) -> usize {
        self.atoms.first().map_or(0, |a| a.len())
    }

    /// Every atom, obtained by translating the normalized ones.
    pub fn all_translates(&self) -> Vec<GroupSubset> {
        let mut out: Vec<GroupSubset> = Vec::new();
        for a in &self.atoms {
            for g in self.ambient.carrier().elements() {
                out.push(a.translate(g));
            }
        }
        out.sort();
        out.dedup();
        out
    }
}

pub fn atoms(s: &GroupSubset, k: usize) -> Result<AtomSet> {
    atoms_with(s, k, &SearchOptions::default())
}

pub fn atoms_with(s: &GroupSubset, k: usize, opts: &SearchOptions) -> Result<AtomSet> {
    check_args(s, k)?;
    let universe = Universe::new(s.generated_subgroup());
    let mut budget = Budget::new(opts.budget);
    let kr = kappa_in(&universe, s, k, &mut budget)?;
    if !kr.separable {
        return Err(Error::NotSeparable { k });
    }
    atoms_in(&universe, s, &kr, &mut budget)
}

fn atoms_in(universe: &Universe, s: &GroupSubset, kr: &KappaResult, budget: &mut Budget) -> Result<AtomSet> {
    let goal = Goal::Atoms {
        target: kr.value as usize,
    };
    let out = search::run(universe, s, kr.k, goal, budget, &mut |_| {})?;
    let mut atoms: Vec<GroupSubset> = out.sets.iter().map(|p| universe.to_subset(p)).collect();
    atoms.sort();
    Ok(AtomSet {
        k: kr.k,
        value: kr.value,
        atoms,
        normalized: true,
        ambient: kr.ambient.clone(),
    })
}

/// The atoms of `s` once `kr = kappa(s, k)` is known.
pub fn atoms_given(s: &GroupSubset, kr: &KappaResult, opts: &SearchOptions) -> Result<AtomSet> {
    check_args(s, kr.k)?;
    if !kr.separable {
        return Err(Error::NotSeparable { k: kr.k });
    }
    let universe = Universe::new(kr.ambient.clone());
    let mut budget = Budget::new(opts.budget);
    atoms_in(&universe, s, kr, &mut budget)
}

/// κ_k and the atoms together, sharing one budget.
pub fn kappa_and_atoms(s: &GroupSubset, k: usize, opts: &SearchOptions) -> Result<(KappaResult, Option<AtomSet>)> {
    check_args(s, k)?;
    let universe = Universe::new(s.generated_subgroup());
    let mut budget = Budget::new(opts.budget);
    let kr = kappa_in(&universe, s, k, &mut budget)?;
    let atoms = if kr.separable {
        Some(atoms_in(&universe, s, &kr, &mut budget)?)
    } else {
        None
    };
    Ok((kr, atoms))
}

/// Calls `f` on every `T ∋ 0` of `⟨S⟩` (or of `within`, when given) with
/// `|T + S| - |T| = excess`, `|T| ≥ min_size` and `|T + S| ≤ max_sum`.
pub fn for_each_set_with_boundary(
    s: &GroupSubset,
    within: Option<&Subgroup>,
    excess: usize,
    min_size: usize,
    max_sum: usize,
    opts: &SearchOptions,
    f: &mut dyn FnMut(GroupSubset),
) -> Result<()> {
    if !s.contains(Element(0)) {
        return Err(Error::MissingZero);
    }
    let h = match within {
        Some(h) => {
            if !s.is_subset(h.carrier()) {
                return Err(Error::InvalidArgument("S must lie in the given subgroup".into()));
            }
            h.clone()
        }
        None => s.generated_subgroup(),
    };
    let universe = Universe::new(h);
    let mut budget = Budget::new(opts.budget);
    let goal = Goal::Enumerate {
        target: excess,
        min_size,
        max_sum,
    };
    search::run(&universe, s, 1, goal, &mut budget, &mut |p| {
        f(universe.to_subset(p))
    })?;
    Ok(())
}
