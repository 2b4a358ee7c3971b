//! The m = 5 construction in `Z/7 × Z/q` showing the 2-atom theorem is sharp.

use serde::Serialize;

use super::report::{Certificate, Instance, ReportBuilder, VerifierReport};
use crate::error::{Error, Result};
use crate::group::{is_prime, make_group};
use crate::structure::is_sidon;
use crate::subset::GroupSubset;

/// The numbers displayed by the construction.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExampleFacts {
    pub q: usize,
    pub x: Vec<usize>,
    pub s_len: usize,
    pub s_plus_a: usize,
    pub s_plus_h1: usize,
    pub s_plus_h2: usize,
    /// min of |S+{0,x}| - |S| over nonzero x in H1.
    pub min_excess_h1: usize,
    /// min of |S+{0,x}| - |S| over x outside H1.
    pub min_excess_outside: usize,
}

impl ExampleFacts {
    /// Every displayed equality and inequality, by name.
    pub fn checks(&self) -> Vec<(&'static str, bool)> {
        let (s, q) = (self.s_len, self.q);
        vec![
            ("|S+A| = |S|+|A|+5", self.s_plus_a == s + 3 + 5),
            ("|S+H1| = |S|+|H1|+5", self.s_plus_h1 == s + 7 + 5),
            ("|S+H2| = 4q", self.s_plus_h2 == 4 * q),
            ("|S+H2| > |S|+q+5", self.s_plus_h2 > s + q + 5),
            ("|S+B| ≥ |S|+8 for x ∈ H1", self.min_excess_h1 >= 8),
            ("|S+B| ≥ |S|+12 for x ∉ H1", self.min_excess_outside >= 12),
        ]
    }
}

/// Lexicographically first Sidon 4-set of `Z/q` containing 0.
pub fn sidon_four_set(q: usize) -> Result<Vec<usize>> {
    let g = make_group(&[q])?;
    for a in 1..q {
        for b in a + 1..q {
            for c in b + 1..q {
                let x = GroupSubset::from_indices(&g, &[0, a, b, c])?;
                if is_sidon(&x) {
                    return Ok(vec![0, a, b, c]);
                }
            }
        }
    }
    Err(Error::NoSidonSet { q })
}

/// Evaluates the construction for an arbitrary 4-set `x` of `Z/q`.
pub fn example_facts(q: usize, x: &[usize]) -> Result<ExampleFacts> {
    let g = make_group(&[7, q])?;
    let pt = |a: usize, b: usize| a * q + b;
    let s_idx: Vec<usize> = [0, 1, 2, 4]
        .iter()
        .flat_map(|&a| x.iter().map(move |&b| pt(a, b % q)))
        .collect();
    let s = GroupSubset::from_indices(&g, &s_idx)?;
    let a = GroupSubset::from_indices(&g, &[pt(0, 0), pt(1, 0), pt(3, 0)])?;
    let h1 = GroupSubset::from_indices(&g, &(0..7).map(|i| pt(i, 0)).collect::<Vec<_>>())?;
    let h2 = GroupSubset::from_indices(&g, &(0..q).map(|j| pt(0, j)).collect::<Vec<_>>())?;
    let mut min_h1 = usize::MAX;
    let mut min_out = usize::MAX;
    for e in g.elements().skip(1) {
        let excess = s.sumset_unchecked(&GroupSubset::from_indices(&g, &[0, e.0])?).len() - s.len();
        if h1.contains(e) {
            min_h1 = min_h1.min(excess);
        } else {
            min_out = min_out.min(excess);
        }
    }
    Ok(ExampleFacts {
        q,
        x: x.to_vec(),
        s_len: s.len(),
        s_plus_a: s.sumset_unchecked(&a).len(),
        s_plus_h1: s.sumset_unchecked(&h1).len(),
        s_plus_h2: s.sumset_unchecked(&h2).len(),
        min_excess_h1: min_h1,
        min_excess_outside: min_out,
    })
}

/// Builds the construction for prime `q > 7` and checks every displayed fact.
/// `A` attains `|S+A| - |A| = |S|+5`, and by the 2-atom theorem no smaller
/// value is possible, so `κ_2(S) = |S|+5` with `A` a 2-atom.
pub fn reproduce_example_m5(q: usize) -> Result<VerifierReport> {
    if q <= 7 || !is_prime(q) {
        return Err(Error::InvalidArgument(format!("q must be a prime above 7, got {q}")));
    }
    let x = sidon_four_set(q)?;
    let f = example_facts(q, &x)?;
    let g = make_group(&[7, q])?;
    let s_idx: Vec<usize> = [0usize, 1, 2, 4]
        .iter()
        .flat_map(|&a| x.iter().map(move |&b| a * q + b))
        .collect();
    let s = GroupSubset::from_indices(&g, &s_idx)?;
    let mut b = ReportBuilder::new("example:m5", Instance::new(&s));
    b.hyp("X is a Sidon 4-set of Z/q", true);
    let checks = f.checks();
    let failed: Vec<&str> = checks.iter().filter(|c| !c.1).map(|c| c.0).collect();
    let cert = Certificate::Values {
        entries: vec![
            ("q".into(), q as i64),
            ("|S|".into(), f.s_len as i64),
            ("|S+A|".into(), f.s_plus_a as i64),
            ("|S+H1|".into(), f.s_plus_h1 as i64),
            ("|S+H2|".into(), f.s_plus_h2 as i64),
            ("min |S+B|-|S|, x ∈ H1".into(), f.min_excess_h1 as i64),
            ("min |S+B|-|S|, x ∉ H1".into(), f.min_excess_outside as i64),
            ("|S+A|-|A|".into(), f.s_plus_a as i64 - 3),
        ],
    };
    Ok(b.decide(failed.is_empty(), cert, &format!("failed: {}", failed.join("; "))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verifiers::Conclusion;

    #[test]
    fn no_sidon_four_set_mod_11() {
        assert!(matches!(sidon_four_set(11), Err(Error::NoSidonSet { q: 11 })));
        assert!(matches!(reproduce_example_m5(11), Err(Error::NoSidonSet { q: 11 })));
    }

    #[test]
    fn q13_holds() {
        let r = reproduce_example_m5(13).unwrap();
        assert_eq!(r.conclusion, Conclusion::Pass);
        let f = example_facts(13, &sidon_four_set(13).unwrap()).unwrap();
        assert_eq!((f.s_len, f.s_plus_a, f.s_plus_h1, f.s_plus_h2), (16, 24, 28, 52));
    }

    #[test]
    fn rejects_small_or_composite() {
        assert!(reproduce_example_m5(7).is_err());
        assert!(reproduce_example_m5(15).is_err());
    }
}
