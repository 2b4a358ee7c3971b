//! Sidon sets, progressions, quasi-progressions and related classifiers.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{Element, Group};
use crate::subset::GroupSubset;

/// `{start + i·difference : 0 ≤ i < length}`, minus the term at
/// `missing_index` when present.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct ProgressionCertificate {
    pub start: Element,
    pub difference: Element,
    pub length: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub missing_index: Option<usize>,
}

impl ProgressionCertificate {
    pub fn is_quasi(&self) -> bool {
        self.missing_index.is_some()
    }

    pub fn term(&self, g: &Group, i: usize) -> Element {
        g.add(self.start, g.mul(self.difference, i))
    }

    pub fn materialize(&self, g: &Arc<Group>) -> GroupSubset {
        let mut out = GroupSubset::empty(g);
        for i in 0..self.length {
            if Some(i) != self.missing_index {
                out.insert_idx(self.term(g, i).0);
            }
        }
        out
    }

    /// Checks the certificate against `x` from scratch.
    pub fn replays(&self, x: &GroupSubset) -> bool {
        let g = x.group();
        let distinct = self.difference.0 != 0 && self.length <= g.element_order(self.difference);
        if !distinct && !(self.length == 1 && self.missing_index.is_none()) {
            return false;
        }
        if self.materialize(g) != *x {
            return false;
        }
        match self.missing_index {
            None => true,
            Some(j) => {
                0 < j && j + 1 < self.length && progression_with(x, self.difference).is_none()
            }
        }
    }
}

/// Whether all sums `x + y` (`x ≤ y`) are distinct.
pub fn is_sidon(x: &GroupSubset) -> bool {
    let g = x.group();
    let elems: Vec<usize> = x.indices().collect();
    let mut seen = GroupSubset::empty(g);
    for (i, &a) in elems.iter().enumerate() {
        for &b in &elems[i..] {
            let s = g.add_idx(a, b);
            if seen.contains_idx(s) {
                return false;
            }
            seen.insert_idx(s);
        }
    }
    true
}

/// The certificate exhibiting `x` as a progression of difference `d`, if any.
pub fn progression_with(x: &GroupSubset, d: Element) -> Option<ProgressionCertificate> {
    let g = x.group();
    if d.0 == 0 || x.is_empty() {
        return None;
    }
    let starts = x.difference_unchecked(&x.translate(d));
    match starts.len() {
        0 => {
            // x is a union of <d>-cosets; a progression only if a single coset
            (x.len() == g.element_order(d)).then(|| ProgressionCertificate {
                start: Element(x.first().unwrap()),
                difference: d,
                length: x.len(),
                missing_index: None,
            })
        }
        1 => {
            let a = Element(starts.first().unwrap());
            let mut cur = a;
            for _ in 1..x.len() {
                cur = g.add(cur, d);
                if !x.contains(cur) {
                    return None;
                }
            }
            Some(ProgressionCertificate {
                start: a,
                difference: d,
                length: x.len(),
                missing_index: None,
            })
        }
        _ => None,
    }
}

fn nonzero(g: &Arc<Group>) -> impl Iterator<Item = Element> + '_ {
    g.elements().skip(1)
}

fn require_two(x: &GroupSubset) -> Result<()> {
    if x.len() < 2 {
        return Err(Error::InvalidSize(format!("need at least 2 elements, got {}", x.len())));
    }
    Ok(())
}

/// Every `(start, difference)` realizing `x` as a progression; both `d` and `-d` appear.
pub fn find_progressions(x: &GroupSubset) -> Result<Vec<ProgressionCertificate>> {
    require_two(x)?;
    Ok(nonzero(x.group()).filter_map(|d| progression_with(x, d)).collect())
}

pub fn is_progression(x: &GroupSubset) -> bool {
    x.len() == 1 || nonzero(x.group()).any(|d| progression_with(x, d).is_some())
}

/// `x` is not a progression of difference `r`, but inserting one interior
/// term makes it one.
pub fn quasi_progression_with(x: &GroupSubset, r: Element) -> Option<ProgressionCertificate> {
    let g = x.group();
    if r.0 == 0 || x.is_empty() || progression_with(x, r).is_some() {
        return None;
    }
    let interior = x
        .translate(r)
        .intersection_unchecked(&x.translate(g.neg(r)))
        .difference_unchecked(x);
    for gap in interior.elements() {
        if let Some(ap) = progression_with(&x.with(gap), r) {
            let idx = (0..ap.length).find(|&i| ap.term(g, i) == gap)?;
            return Some(ProgressionCertificate {
                missing_index: Some(idx),
                ..ap
            });
        }
    }
    None
}

pub fn find_quasi_progressions(x: &GroupSubset) -> Result<Vec<ProgressionCertificate>> {
    require_two(x)?;
    Ok(nonzero(x.group())
        .filter_map(|r| quasi_progression_with(x, r))
        .collect())
}

pub fn is_quasi_progression(x: &GroupSubset) -> bool {
    nonzero(x.group()).any(|r| quasi_progression_with(x, r).is_some())
}

/// Progression or quasi-progression of difference `d`.
pub fn ap_or_quasi_with(x: &GroupSubset, d: Element) -> Option<ProgressionCertificate> {
    if x.len() == 1 {
        return Some(ProgressionCertificate {
            start: Element(x.first().unwrap()),
            difference: d,
            length: 1,
            missing_index: None,
        });
    }
    progression_with(x, d).or_else(|| quasi_progression_with(x, d))
}

/// Start of a length-`len` progression of difference `d` containing `x`.
pub fn contained_in_progression(x: &GroupSubset, d: Element, len: usize) -> Option<Element> {
    let g = x.group();
    if d.0 == 0 || len > g.element_order(d) {
        return None;
    }
    let x0 = Element(x.first()?);
    // the start lies among x0 - i·d for i < len
    let mut candidates: Vec<Element> = (0..len).map(|i| g.sub(x0, g.mul(d, i))).collect();
    candidates.sort();
    candidates.into_iter().find(|&a| {
        let ap = ProgressionCertificate {
            start: a,
            difference: d,
            length: len,
            missing_index: None,
        }
        .materialize(g);
        x.is_subset(&ap)
    })
}

/// Whether every nonzero element of `s` has order at least `threshold`.
pub fn weak_chowla(s: &GroupSubset, threshold: usize) -> Result<bool> {
    if !s.contains(Element(0)) {
        return Err(Error::MissingZero);
    }
    let g = s.group();
    Ok(s.elements().skip(1).all(|e| g.element_order(e) >= threshold))
}

/// Maximal circular runs of consecutive residues, ordered by their first element.
pub fn connected_components(x: &GroupSubset) -> Result<Vec<GroupSubset>> {
    let g = x.group();
    if g.moduli().len() > 1 {
        return Err(Error::NotCyclic);
    }
    let n = g.order();
    if x.len() == n {
        return Ok(vec![x.clone()]);
    }
    let mut out = Vec::new();
    for a in x.indices() {
        if x.contains_idx((a + n - 1) % n) {
            continue;
        }
        let mut run = GroupSubset::empty(g);
        let mut cur = a;
        while x.contains_idx(cur) {
            run.insert_idx(cur);
            cur = (cur + 1) % n;
        }
        out.push(run);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::make_group;

    fn set(g: &Arc<Group>, xs: &[usize]) -> GroupSubset {
        GroupSubset::from_indices(g, xs).unwrap()
    }

    #[test]
    fn sidon_examples() {
        let z7 = make_group(&[7]).unwrap();
        assert!(is_sidon(&set(&z7, &[0, 1, 3])));
        assert!(!is_sidon(&set(&z7, &[0, 1, 2])));
        assert!(is_sidon(&set(&z7, &[2, 5])));
        assert!(is_sidon(&GroupSubset::empty(&z7)));
    }

    #[test]
    fn progression_examples() {
        let z7 = make_group(&[7]).unwrap();
        let found = find_progressions(&set(&z7, &[0, 2, 4])).unwrap();
        let diffs: Vec<usize> = found.iter().map(|c| c.difference.0).collect();
        assert_eq!(diffs, vec![2, 5]);
        assert_eq!(found[0].start, Element(0));
        assert_eq!(found[1].start, Element(4));
        assert!(find_progressions(&set(&z7, &[0, 1, 3])).unwrap().is_empty());
        let z5 = make_group(&[5]).unwrap();
        let full = find_progressions(&GroupSubset::full(&z5)).unwrap();
        assert_eq!(full.len(), 4);
        assert!(full.iter().all(|c| c.replays(&GroupSubset::full(&z5))));
        assert!(find_progressions(&set(&z7, &[3])).is_err());
        // a proper coset of <3> in Z/12
        let z12 = make_group(&[12]).unwrap();
        let c = progression_with(&set(&z12, &[1, 4, 7, 10]), Element(3)).unwrap();
        assert_eq!((c.start, c.length), (Element(1), 4));
        assert!(progression_with(&set(&z12, &[0, 1, 3, 4]), Element(3)).is_none());
    }

    #[test]
    fn quasi_progression_examples() {
        let z12 = make_group(&[12]).unwrap();
        let x = set(&z12, &[0, 1, 3, 4]);
        let c = quasi_progression_with(&x, Element(1)).unwrap();
        assert_eq!(c.term(&z12, c.missing_index.unwrap()), Element(2));
        assert!(c.replays(&x));
        let z7 = make_group(&[7]).unwrap();
        assert!(quasi_progression_with(&set(&z7, &[0, 1, 2]), Element(1)).is_none());
        let y = set(&z7, &[0, 1, 2, 4]);
        let c = quasi_progression_with(&y, Element(1)).unwrap();
        assert_eq!(c.term(&z7, c.missing_index.unwrap()), Element(3));
        assert!(find_quasi_progressions(&y).unwrap().iter().all(|c| c.replays(&y)));
    }

    #[test]
    fn containment_in_progressions() {
        let z13 = make_group(&[13]).unwrap();
        let s = set(&z13, &[0, 1, 2, 4]);
        assert_eq!(contained_in_progression(&s, Element(1), 5), Some(Element(0)));
        assert_eq!(contained_in_progression(&s, Element(1), 4), None);
    }

    #[test]
    fn weak_chowla_examples() {
        let z7 = make_group(&[7]).unwrap();
        assert!(weak_chowla(&set(&z7, &[0, 1]), 2).unwrap());
        let z12 = make_group(&[12]).unwrap();
        assert!(!weak_chowla(&set(&z12, &[0, 6]), 3).unwrap());
        assert_eq!(weak_chowla(&set(&z12, &[6]), 3).unwrap_err(), Error::MissingZero);
        let g = make_group(&[7, 11]).unwrap();
        let x = set(&g, &[0, 1, 5]);
        let s = GroupSubset::from_elements(
            &g,
            [0usize, 1, 2, 4]
                .iter()
                .flat_map(|&a| x.elements().map(move |e| (a, e)))
                .map(|(a, e)| g.add(g.from_coords(&[a, 0]).unwrap(), e)),
        );
        assert!(!weak_chowla(&s, 17).unwrap());
    }

    #[test]
    fn component_examples() {
        let z7 = make_group(&[7]).unwrap();
        let c = connected_components(&set(&z7, &[0, 1, 5, 6])).unwrap();
        assert_eq!(c, vec![set(&z7, &[0, 1, 5, 6])]);
        assert_eq!(connected_components(&set(&z7, &[0, 2, 4])).unwrap().len(), 3);
        assert_eq!(connected_components(&GroupSubset::full(&z7)).unwrap().len(), 1);
        let g = make_group(&[2, 2]).unwrap();
        assert_eq!(
            connected_components(&GroupSubset::full(&g)).unwrap_err(),
            Error::NotCyclic
        );
    }
}
