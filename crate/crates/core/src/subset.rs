//! Bitset subsets of a finite abelian group and their sumset algebra.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::group::{Element, Group, Subgroup};

/// A subset of a group, stored as a bitset over flat element indices.
#[derive(Clone)]
pub struct GroupSubset {
    group: Arc<Group>,
    bits: Vec<u64>,
    len: usize,
}

impl fmt::Debug for GroupSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}} in {}", self.to_literal(), self.group)
    }
}

impl PartialEq for GroupSubset {
    fn eq(&self, other: &Self) -> bool {
        self.bits == other.bits && self.group.as_ref() == other.group.as_ref()
    }
}

impl Eq for GroupSubset {}

impl Hash for GroupSubset {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.bits.hash(state);
    }
}

/// Lexicographic order on the ascending element lists.
impl Ord for GroupSubset {
    fn cmp(&self, other: &Self) -> Ordering {
        self.indices().cmp(other.indices())
    }
}

impl PartialOrd for GroupSubset {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

fn words_for(n: usize) -> usize {
    n.div_ceil(64).max(1)
}

impl GroupSubset {
    pub fn empty(group: &Arc<Group>) -> Self {
        GroupSubset {
            group: Arc::clone(group),
            bits: vec![0; words_for(group.order())],
            len: 0,
        }
    }

    pub fn full(group: &Arc<Group>) -> Self {
        let mut s = Self::empty(group);
        for x in 0..group.order() {
            s.insert_idx(x);
        }
        s
    }

    pub fn singleton(group: &Arc<Group>, a: Element) -> Self {
        let mut s = Self::empty(group);
        s.insert_idx(a.0);
        s
    }

    pub fn from_indices(group: &Arc<Group>, indices: &[usize]) -> Result<Self> {
        let mut s = Self::empty(group);
        for &i in indices {
            group.element(i)?;
            s.insert_idx(i);
        }
        Ok(s)
    }

    pub fn from_elements(group: &Arc<Group>, elems: impl IntoIterator<Item = Element>) -> Self {
        let mut s = Self::empty(group);
        for e in elems {
            s.insert_idx(e.0);
        }
        s
    }

    /// Builds from raw words; bits beyond the group order are cleared.
    pub fn from_words(group: &Arc<Group>, words: &[u64]) -> Self {
        let mut s = Self::empty(group);
        let n = group.order();
        for (i, w) in s.bits.iter_mut().enumerate() {
            let mut v = words.get(i).copied().unwrap_or(0);
            let lo = i * 64;
            if lo + 64 > n {
                let keep = n.saturating_sub(lo);
                v &= if keep == 0 { 0 } else { u64::MAX >> (64 - keep) };
            }
            *w = v;
        }
        s.recount();
        s
    }

    /// Parses a subset literal: flat indices `0,1,3`, coordinate tuples
    /// `(0,0),(1,3)`, optionally wrapped in braces; a leading `!` complements.
    pub fn parse(group: &Arc<Group>, literal: &str) -> Result<Self> {
        let mut lit = literal.trim();
        let complement = if let Some(rest) = lit.strip_prefix('!') {
            lit = rest.trim();
            true
        } else {
            false
        };
        if let Some(inner) = lit.strip_prefix('{').and_then(|r| r.strip_suffix('}')) {
            lit = inner.trim();
        }
        let mut s = Self::empty(group);
        let mut depth = 0usize;
        let mut start = 0usize;
        let mut tokens = Vec::new();
        for (i, ch) in lit.char_indices() {
            match ch {
                '(' => depth += 1,
                ')' => {
                    depth = depth
                        .checked_sub(1)
                        .ok_or_else(|| Error::Parse(format!("unbalanced `)` in `{literal}`")))?
                }
                ',' if depth == 0 => {
                    tokens.push(&lit[start..i]);
                    start = i + 1;
                }
                _ => {}
            }
        }
        if depth != 0 {
            return Err(Error::Parse(format!("unbalanced `(` in `{literal}`")));
        }
        tokens.push(&lit[start..]);
        for tok in tokens {
            let tok = tok.trim();
            if tok.is_empty() {
                continue;
            }
            let e = if let Some(inner) = tok.strip_prefix('(').and_then(|r| r.strip_suffix(')')) {
                let coords: Vec<usize> = inner
                    .split(',')
                    .map(|c| {
                        c.trim()
                            .parse::<usize>()
                            .map_err(|_| Error::Parse(format!("bad coordinate in `{tok}`")))
                    })
                    .collect::<Result<_>>()?;
                for (c, n) in coords.iter().zip(group.moduli()) {
                    if c >= n {
                        return Err(Error::Parse(format!("coordinate out of range in `{tok}`")));
                    }
                }
                group.from_coords(&coords)?
            } else {
                let idx: usize = tok
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad element `{tok}`")))?;
                group
                    .element(idx)
                    .map_err(|e| Error::Parse(e.to_string()))?
            };
            s.insert_idx(e.0);
        }
        Ok(if complement { s.complement() } else { s })
    }

    /// Renders as a literal that [`GroupSubset::parse`] reads back.
    pub fn to_literal(&self) -> String {
        let parts: Vec<String> = self.elements().map(|e| self.group.render(e)).collect();
        parts.join(",")
    }

    pub fn group(&self) -> &Arc<Group> {
        &self.group
    }

    pub fn words(&self) -> &[u64] {
        &self.bits
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn contains_idx(&self, i: usize) -> bool {
        self.bits[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn contains(&self, a: Element) -> bool {
        a.0 < self.group.order() && self.contains_idx(a.0)
    }

    pub(crate) fn insert_idx(&mut self, i: usize) {
        let w = &mut self.bits[i / 64];
        let m = 1u64 << (i % 64);
        if *w & m == 0 {
            *w |= m;
            self.len += 1;
        }
    }

    pub(crate) fn remove_idx(&mut self, i: usize) {
        let w = &mut self.bits[i / 64];
        let m = 1u64 << (i % 64);
        if *w & m != 0 {
            *w &= !m;
            self.len -= 1;
        }
    }

    fn recount(&mut self) {
        self.len = self.bits.iter().map(|w| w.count_ones() as usize).sum();
    }

    /// Returns a copy with `a` added.
    pub fn with(&self, a: Element) -> Self {
        let mut s = self.clone();
        s.insert_idx(a.0);
        s
    }

    /// Returns a copy with `a` removed.
    pub fn without(&self, a: Element) -> Self {
        let mut s = self.clone();
        s.remove_idx(a.0);
        s
    }

    pub fn indices(&self) -> impl Iterator<Item = usize> + '_ {
        self.bits.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let b = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some(wi * 64 + b)
                }
            })
        })
    }

    pub fn elements(&self) -> impl Iterator<Item = Element> + '_ {
        self.indices().map(Element)
    }

    pub fn first(&self) -> Option<usize> {
        self.indices().next()
    }

    pub(crate) fn check_same_group(&self, other: &GroupSubset) -> Result<()> {
        if Arc::ptr_eq(&self.group, &other.group) || self.group.as_ref() == other.group.as_ref() {
            Ok(())
        } else {
            Err(Error::GroupMismatch {
                left: self.group.to_string(),
                right: other.group.to_string(),
            })
        }
    }

    fn zip_words(&self, other: &Self, f: impl Fn(u64, u64) -> u64) -> Self {
        let bits: Vec<u64> = self
            .bits
            .iter()
            .zip(&other.bits)
            .map(|(&a, &b)| f(a, b))
            .collect();
        let mut s = GroupSubset {
            group: Arc::clone(&self.group),
            bits,
            len: 0,
        };
        s.recount();
        s
    }

    pub(crate) fn union_unchecked(&self, other: &Self) -> Self {
        self.zip_words(other, |a, b| a | b)
    }

    pub(crate) fn intersection_unchecked(&self, other: &Self) -> Self {
        self.zip_words(other, |a, b| a & b)
    }

    pub(crate) fn difference_unchecked(&self, other: &Self) -> Self {
        self.zip_words(other, |a, b| a & !b)
    }

    pub fn union(&self, other: &Self) -> Result<Self> {
        self.check_same_group(other)?;
        Ok(self.union_unchecked(other))
    }

    pub fn intersection(&self, other: &Self) -> Result<Self> {
        self.check_same_group(other)?;
        Ok(self.intersection_unchecked(other))
    }

    pub fn difference(&self, other: &Self) -> Result<Self> {
        self.check_same_group(other)?;
        Ok(self.difference_unchecked(other))
    }

    pub fn complement(&self) -> Self {
        GroupSubset::full(&self.group).difference_unchecked(self)
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.bits.iter().zip(&other.bits).all(|(&a, &b)| a & !b == 0)
    }

    pub fn intersection_len(&self, other: &Self) -> usize {
        self.bits
            .iter()
            .zip(&other.bits)
            .map(|(&a, &b)| (a & b).count_ones() as usize)
            .sum()
    }

    /// `X + g`.
    pub fn translate(&self, g: Element) -> Self {
        let mut out = GroupSubset::empty(&self.group);
        for x in self.indices() {
            out.insert_idx(self.group.add_idx(x, g.0));
        }
        out
    }

    /// `-X`.
    pub fn negate(&self) -> Self {
        let mut out = GroupSubset::empty(&self.group);
        for x in self.indices() {
            out.insert_idx(self.group.neg_idx(x));
        }
        out
    }

    /// `X + Y`, accumulating translates of the larger operand over the smaller one.
    pub fn sumset(&self, other: &Self) -> Result<Self> {
        self.check_same_group(other)?;
        Ok(self.sumset_unchecked(other))
    }

    pub(crate) fn sumset_unchecked(&self, other: &Self) -> Self {
        let (small, large) = if self.len <= other.len {
            (self, other)
        } else {
            (other, self)
        };
        let g = &self.group;
        let mut acc = vec![0u64; self.bits.len()];
        let large_idx: Vec<usize> = large.indices().collect();
        for y in small.indices() {
            for &x in &large_idx {
                let z = g.add_idx(x, y);
                acc[z / 64] |= 1 << (z % 64);
            }
        }
        let mut s = GroupSubset {
            group: Arc::clone(g),
            bits: acc,
            len: 0,
        };
        s.recount();
        s
    }

    /// `X - Y`.
    pub fn difference_set(&self, other: &Self) -> Result<Self> {
        self.sumset(&other.negate())
    }

    /// The subgroup `{g : X + g = X}`.
    pub fn stabilizer(&self) -> Result<Subgroup> {
        let x0 = self.first().ok_or(Error::EmptySet)?;
        let g = &self.group;
        let mut carrier = GroupSubset::empty(g);
        // any period maps x0 into X, so it lies in X - x0
        for x in self.indices() {
            let d = g.sub_idx(x, x0);
            if self.indices().all(|y| self.contains_idx(g.add_idx(y, d))) {
                carrier.insert_idx(d);
            }
        }
        let gens = carrier.elements().collect();
        Ok(Subgroup::from_carrier_unchecked(carrier, gens))
    }

    pub fn is_periodic(&self) -> Result<bool> {
        Ok(!self.stabilizer()?.is_trivial())
    }

    /// If `X ∪ {g}` is periodic for some `g ∉ X`, the smallest such `g`
    /// together with the stabilizer of `X ∪ {g}`.
    pub fn quasi_periodicity(&self) -> Result<Option<(Element, Subgroup)>> {
        if self.is_empty() {
            return Err(Error::EmptySet);
        }
        for g in self.complement().elements() {
            let stab = self.with(g).stabilizer()?;
            if !stab.is_trivial() {
                return Ok(Some((g, stab)));
            }
        }
        Ok(None)
    }

    pub fn is_quasi_periodic(&self) -> Result<bool> {
        Ok(self.quasi_periodicity()?.is_some())
    }

    /// The sumset `kY` for `k ≥ 1` (and `{0}` for `k = 0`).
    pub fn multiple(&self, k: usize) -> Self {
        let mut acc = GroupSubset::singleton(&self.group, Element(0));
        for _ in 0..k {
            acc = acc.sumset_unchecked(self);
        }
        acc
    }

    pub fn generated_subgroup(&self) -> Subgroup {
        let gens: Vec<Element> = self.elements().collect();
        self.group.subgroup_generated(&gens)
    }

    pub fn generates(&self) -> bool {
        self.generated_subgroup().order() == self.group.order()
    }

    /// Image under an element permutation (e.g. an automorphism).
    pub fn permuted(&self, perm: &[u32]) -> Self {
        let mut out = GroupSubset::empty(&self.group);
        for x in self.indices() {
            out.insert_idx(perm[x] as usize);
        }
        out
    }

    /// Minimal translate `X - x` (`x ∈ X`) in the element-list order; contains 0.
    pub fn canonical_translate(&self) -> Self {
        self.indices()
            .map(|x| self.translate(self.group.neg(Element(x))))
            .min()
            .unwrap_or_else(|| self.clone())
    }
}

/// The layers `N_0 = X`, `N_i = (X + iY) \ (X + (i-1)Y)`.
#[derive(Debug, Clone)]
pub struct LayerSequence {
    base: GroupSubset,
    step: GroupSubset,
    layers: Vec<GroupSubset>,
}

impl LayerSequence {
    pub fn base(&self) -> &GroupSubset {
        &self.base
    }

    pub fn step(&self) -> &GroupSubset {
        &self.step
    }

    pub fn layers(&self) -> &[GroupSubset] {
        &self.layers
    }

    /// Layer `N_i`; empty beyond the last nonempty layer.
    pub fn layer(&self, i: usize) -> GroupSubset {
        self.layers
            .get(i)
            .cloned()
            .unwrap_or_else(|| GroupSubset::empty(self.base.group()))
    }

    /// Largest index with a nonempty layer.
    pub fn last(&self) -> usize {
        self.layers.len() - 1
    }

    pub fn union(&self) -> GroupSubset {
        self.layers
            .iter()
            .fold(GroupSubset::empty(self.base.group()), |acc, l| {
                acc.union_unchecked(l)
            })
    }

    /// Whether `N_r - Y* ⊆ N_{r-1}`; vacuously true past the last layer.
    pub fn check_descent(&self, r: usize) -> Result<bool> {
        if r == 0 {
            return Err(Error::InvalidArgument("descent index must be at least 1".into()));
        }
        if r > self.last() {
            return Ok(true);
        }
        let ystar = self.step.without(Element(0));
        let shifted = self.layers[r].sumset_unchecked(&ystar.negate());
        Ok(shifted.is_subset(&self.layers[r - 1]))
    }
}

/// Layer sequence of `X` under steps of `Y`, up to stabilization or `max_i` layers.
pub fn layer_sequence(x: &GroupSubset, y: &GroupSubset, max_i: usize) -> Result<LayerSequence> {
    x.check_same_group(y)?;
    if !x.contains(Element(0)) || !y.contains(Element(0)) {
        return Err(Error::MissingZero);
    }
    let mut layers = vec![x.clone()];
    let mut cur = x.clone();
    for _ in 1..=max_i {
        let next = cur.sumset_unchecked(y);
        let layer = next.difference_unchecked(&cur);
        if layer.is_empty() {
            break;
        }
        layers.push(layer);
        cur = next;
    }
    Ok(LayerSequence {
        base: x.clone(),
        step: y.clone(),
        layers,
    })
}

/// [`layer_sequence`] with `max_i = |G|`.
pub fn full_layer_sequence(x: &GroupSubset, y: &GroupSubset) -> Result<LayerSequence> {
    layer_sequence(x, y, x.group().order())
}

/// Outcome of the three-element redundancy bound check.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BigSOutcome {
    HypothesisNotMet,
    Checked { holds: bool },
}

/// With `|A| = 3` and `S + A = S + (A \ {a})` for every `a ∈ A`, checks `3|S| ≥ 2|S + A|`.
pub fn big_s_check(s: &GroupSubset, a: &GroupSubset) -> Result<BigSOutcome> {
    s.check_same_group(a)?;
    if a.len() != 3 {
        return Err(Error::InvalidSize(format!("|A| must be 3, got {}", a.len())));
    }
    let sa = s.sumset_unchecked(a);
    let redundant = a
        .elements()
        .all(|x| s.sumset_unchecked(&a.without(x)) == sa);
    if !redundant {
        return Ok(BigSOutcome::HypothesisNotMet);
    }
    Ok(BigSOutcome::Checked {
        holds: 3 * s.len() >= 2 * sa.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::make_group;

    fn set(g: &Arc<Group>, xs: &[usize]) -> GroupSubset {
        GroupSubset::from_indices(g, xs).unwrap()
    }

    fn idx(s: &GroupSubset) -> Vec<usize> {
        s.indices().collect()
    }

    #[test]
    fn sumset_examples() {
        let z12 = make_group(&[12]).unwrap();
        let x = set(&z12, &[0, 1]);
        let y = set(&z12, &[0, 3]);
        assert_eq!(idx(&x.sumset(&y).unwrap()), vec![0, 1, 3, 4]);
        let s = set(&z12, &[0, 1, 3, 4]);
        let t = set(&z12, &[0, 3, 6, 9]);
        assert_eq!(s.sumset(&t).unwrap().len(), 8);
        let zero = set(&z12, &[0]);
        assert_eq!(zero.sumset(&s).unwrap(), s);
        assert!(GroupSubset::empty(&z12).sumset(&s).unwrap().is_empty());
        let z7 = make_group(&[7]).unwrap();
        assert!(matches!(
            s.sumset(&set(&z7, &[0])),
            Err(Error::GroupMismatch { .. })
        ));
    }

    #[test]
    fn translate_negate_examples() {
        let z7 = make_group(&[7]).unwrap();
        let x = set(&z7, &[0, 1, 3]);
        assert_eq!(idx(&x.translate(Element(2))), vec![2, 3, 5]);
        assert_eq!(idx(&x.negate()), vec![0, 4, 6]);
        let g = Element(2);
        assert_eq!(
            x.translate(g).negate(),
            x.negate().translate(z7.neg(g))
        );
    }

    #[test]
    fn stabilizer_examples() {
        let z12 = make_group(&[12]).unwrap();
        assert_eq!(
            idx(set(&z12, &[0, 3, 6, 9]).stabilizer().unwrap().carrier()),
            vec![0, 3, 6, 9]
        );
        assert!(set(&z12, &[0, 1]).stabilizer().unwrap().is_trivial());
        assert_eq!(
            idx(set(&z12, &[0, 1, 6, 7]).stabilizer().unwrap().carrier()),
            vec![0, 6]
        );
        assert_eq!(
            GroupSubset::empty(&z12).stabilizer().unwrap_err(),
            Error::EmptySet
        );
    }

    #[test]
    fn periodicity_examples() {
        let z12 = make_group(&[12]).unwrap();
        let (g, h) = set(&z12, &[0, 3, 6])
            .quasi_periodicity()
            .unwrap()
            .unwrap();
        assert_eq!(g, Element(9));
        assert_eq!(idx(h.carrier()), vec![0, 3, 6, 9]);
        assert!(!set(&z12, &[0, 1]).is_quasi_periodic().unwrap());
        assert!(set(&z12, &[2, 5, 8, 11]).is_periodic().unwrap());
        assert!(!set(&z12, &[0, 1]).is_periodic().unwrap());
    }

    #[test]
    fn literal_parsing() {
        let z12 = make_group(&[12]).unwrap();
        assert_eq!(
            GroupSubset::parse(&z12, "0,1,3,4").unwrap(),
            set(&z12, &[0, 1, 3, 4])
        );
        assert_eq!(GroupSubset::parse(&z12, "!0").unwrap().len(), 11);
        assert_eq!(GroupSubset::parse(&z12, "{}").unwrap().len(), 0);
        assert!(GroupSubset::parse(&z12, "12").is_err());
        assert!(GroupSubset::parse(&z12, "a").is_err());
        let g = make_group(&[7, 11]).unwrap();
        let s = GroupSubset::parse(&g, "(0,0),(1,3)").unwrap();
        assert_eq!(idx(&s), vec![0, 14]);
        assert_eq!(s.to_literal(), "(0,0),(1,3)");
        assert_eq!(GroupSubset::parse(&g, &s.to_literal()).unwrap(), s);
        assert!(GroupSubset::parse(&g, "(7,0)").is_err());
        assert!(GroupSubset::parse(&g, "(0,0").is_err());
    }

    #[test]
    fn layer_examples() {
        let z5 = make_group(&[5]).unwrap();
        let seq = full_layer_sequence(&set(&z5, &[0]), &set(&z5, &[0, 1])).unwrap();
        assert_eq!(seq.last(), 4);
        for i in 1..=4 {
            assert_eq!(idx(&seq.layer(i)), vec![i]);
        }
        assert!(seq.check_descent(2).unwrap());
        assert!(seq.check_descent(9).unwrap());

        let full = GroupSubset::full(&z5);
        assert_eq!(full_layer_sequence(&full, &full).unwrap().last(), 0);

        let z12 = make_group(&[12]).unwrap();
        let seq = full_layer_sequence(&set(&z12, &[0]), &set(&z12, &[0, 2])).unwrap();
        assert_eq!(seq.last(), 5);
        assert_eq!(idx(&seq.union()), vec![0, 2, 4, 6, 8, 10]);

        assert_eq!(
            layer_sequence(&set(&z5, &[1]), &set(&z5, &[0, 1]), 5).unwrap_err(),
            Error::MissingZero
        );
    }

    #[test]
    fn big_s_examples() {
        let z12 = make_group(&[12]).unwrap();
        // A a coset of <4> (order 3), S a union of its cosets
        let a = set(&z12, &[1, 5, 9]);
        let s = set(&z12, &[0, 4, 8, 2, 6, 10]);
        assert_eq!(
            big_s_check(&s, &a).unwrap(),
            BigSOutcome::Checked { holds: true }
        );
        let z7 = make_group(&[7]).unwrap();
        assert_eq!(
            big_s_check(&set(&z7, &[0]), &set(&z7, &[0, 1, 2])).unwrap(),
            BigSOutcome::HypothesisNotMet
        );
        assert!(big_s_check(&set(&z7, &[0]), &set(&z7, &[0, 1])).is_err());
    }

    #[test]
    fn canonical_translate_contains_zero() {
        let z12 = make_group(&[12]).unwrap();
        let s = set(&z12, &[5, 7, 8]);
        let c = s.canonical_translate();
        assert!(c.contains(Element(0)));
        assert_eq!(c, set(&z12, &[1, 3, 4]).canonical_translate());
    }
}
