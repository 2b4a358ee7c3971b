//! Structural facts about a given atom, and the fainting bound.

use super::{is_fragment, kappa_and_atoms, kappa_with, KappaResult, SearchOptions};
use crate::error::{Error, Result};
use crate::group::Element;
use crate::structure::is_sidon;
use crate::subset::{full_layer_sequence, GroupSubset};
use crate::verifiers::report::{Certificate, Instance, ReportBuilder, VerifierReport};

fn is_subgroup(x: &GroupSubset) -> bool {
    x.contains(Element(0)) && x.sumset_unchecked(x) == *x
}

fn kappa_cert(s: &GroupSubset, r: &KappaResult) -> Certificate {
    Certificate::Kappa {
        s: s.to_literal(),
        k: r.k,
        value: r.value,
        witness: r.witness.as_ref().map(|w| w.to_literal()),
    }
}

/// `C(n, 2)`, zero for `n < 2`.
pub(crate) fn choose2(n: i64) -> i64 {
    if n < 2 {
        0
    } else {
        n * (n - 1) / 2
    }
}

/// Checks the general facts about k-atoms on the atom `a` of `s`.
/// Statements whose hypotheses fail for this instance are reported as skipped.
pub fn check_atom_lemmas(s: &GroupSubset, k: usize, a: &GroupSubset, opts: &SearchOptions) -> Result<Vec<VerifierReport>> {
    s.check_same_group(a)?;
    let (kr, atoms) = kappa_and_atoms(s, k, opts)?;
    let atoms = atoms.ok_or(Error::NotSeparable { k })?;
    let h = kr.ambient.clone();
    if !is_fragment(a, s, k, kr.value, &h)? || a.len() != atoms.size() {
        return Err(Error::NotAtom { k });
    }
    let a0 = a.translate(s.group().neg(Element(a.first().unwrap())));
    let inst = || Instance::new(s).with_t(a).with_k(k);
    let kc = kappa_cert(s, &kr);
    let sa = a.sumset_unchecked(s);
    let mut out = Vec::new();

    let mut b = ReportBuilder::new("lem:2surjk", inst());
    out.push(if b.hyp("|A| > k", a.len() > k) {
        let ok = a.elements().all(|x| a.without(x).sumset_unchecked(s) == sa)
            && s.elements().all(|x| a.sumset_unchecked(&s.without(x)) == sa);
        b.decide(ok, kc.clone(), "a point of A or S is essential in A+S")
    } else {
        b.skipped()
    });

    let neg = s.negate();
    let kneg = kappa_with(&neg, k, opts)?;
    let dual = h.carrier().difference_unchecked(&sa);
    let ok = kneg.value == kr.value
        && is_fragment(&a.negate(), &neg, k, kr.value, &h)?
        && is_fragment(&dual, &neg, k, kr.value, &h)?;
    let mut b = ReportBuilder::new("lem:dual", inst());
    b.hyp("S is k-separable", true);
    out.push(b.decide(
        ok,
        Certificate::all(vec![kc.clone(), kappa_cert(&neg, &kneg)]),
        "dual fragment or kappa(-S) mismatch",
    ));

    // fragments at hand: translates of the atom, the witness and the dual of the dual
    let mut fragments: Vec<GroupSubset> = Vec::new();
    if let Some(w) = &kr.witness {
        fragments.push(w.clone());
        fragments.push(h.carrier().difference_unchecked(&h.carrier().difference_unchecked(&w.sumset_unchecked(s)).sumset_unchecked(&neg)));
    }
    fragments.push(a.clone());
    let mut worst = 0;
    for f in &fragments {
        for g in h.carrier().elements() {
            let fg = f.translate(g);
            if !a.is_subset(&fg) {
                worst = worst.max(a.intersection_len(&fg));
            }
        }
    }
    let mut b = ReportBuilder::new("lem:intersection", inst());
    b.hyp("S is k-separable", true);
    out.push(b.decide(
        worst < k,
        Certificate::Values {
            entries: vec![("max |A ∩ F|".into(), worst as i64)],
        },
        "an atom meets a fragment in k or more points",
    ));

    let mut b = ReportBuilder::new("cor:cay", inst());
    out.push(if b.hyp("k = 1", k == 1) && b.hyp("S ≠ ⟨S⟩", s.len() < h.order()) {
        let gen = s.intersection_unchecked(&a0).generated_subgroup();
        let ok = *gen.carrier() == a0 && kr.value % a0.len() as i64 == 0;
        b.decide(
            ok,
            Certificate::Subgroup {
                label: "A".into(),
                carrier: a0.to_literal(),
            },
            "1-atom is not the subgroup generated by S ∩ A",
        )
    } else {
        b.skipped()
    });

    let p = crate::group::smallest_prime_factor(h.order());
    let mut b = ReportBuilder::new("cor:2atom", inst());
    out.push(if b.hyp("smallest prime divisor ≥ k", p.is_none_or(|p| p >= k)) {
        let sub = is_subgroup(&a0);
        let max_overlap = h
            .carrier()
            .elements()
            .skip(1)
            .map(|x| a0.intersection_len(&a0.translate(x)))
            .max()
            .unwrap_or(0);
        let cert = if sub {
            Certificate::Subgroup {
                label: "A".into(),
                carrier: a0.to_literal(),
            }
        } else {
            Certificate::Values {
                entries: vec![("max |A ∩ (x+A)|".into(), max_overlap as i64)],
            }
        };
        let ok = sub || max_overlap < k;
        let ok = ok && (k != 2 || sub || is_sidon(&a0));
        b.decide(ok, cert, "atom is neither a subgroup nor spread out")
    } else {
        b.skipped()
    });

    let m = kr.value - s.len() as i64;
    let mut b = ReportBuilder::new("cor:m+3", inst());
    out.push(
        if b.hyp("k = 2", k == 2)
            && b.hyp("|S| ≥ 3", s.len() >= 3)
            && b.hyp("m ≥ -1", m >= -1)
            && b.hyp("A is not a subgroup", !is_subgroup(&a0))
        {
            b.decide(
                a0.len() as i64 <= m + 3,
                Certificate::Values {
                    entries: vec![("|A|".into(), a0.len() as i64), ("m".into(), m)],
                },
                "|A| exceeds m+3",
            )
        } else {
            b.skipped()
        },
    );

    let mut b = ReportBuilder::new("lem:order", inst());
    out.push(
        if b.hyp("k = 2", k == 2) && b.hyp("A is a subgroup", is_subgroup(&a0)) && b.hyp("|A| ≥ 3", a0.len() >= 3) {
            let g = s.group();
            let small = s.elements().skip(1).map(|x| g.element_order(x)).min();
            b.decide(
                small.is_some_and(|o| o as i64 <= kr.value),
                Certificate::Values {
                    entries: vec![
                        ("min order in S*".into(), small.map_or(-1, |o| o as i64)),
                        ("kappa_2".into(), kr.value),
                    ],
                },
                "every nonzero element of S has order above kappa_2",
            )
        } else {
            b.skipped()
        },
    );

    Ok(out)
}

/// Evaluates the fainting hypotheses on `(X, Y)` and, when they hold,
/// checks `|X| ≥ |G| - C(m+4, 2)` with `m = |X+Y| - |X| - |Y|`.
pub fn fainting_bound_check(x: &GroupSubset, y: &GroupSubset, opts: &SearchOptions) -> Result<VerifierReport> {
    x.check_same_group(y)?;
    if !x.contains(Element(0)) || !y.contains(Element(0)) {
        return Err(Error::MissingZero);
    }
    if !y.generates() {
        return Err(Error::InvalidArgument("Y must generate the group".into()));
    }
    let g = x.group();
    let xy = x.sumset_unchecked(y);
    let m = xy.len() as i64 - x.len() as i64 - y.len() as i64;
    let ystar = y.without(Element(0));
    let mut b = ReportBuilder::new("lem:fainting", Instance::new(x).with_t(y));

    let size_ok = b.hyp("3 ≤ |Y| ≤ m+3", y.len() >= 3 && y.len() as i64 <= m + 3);
    let mut chowla_ok = false;
    if size_ok {
        for yy in ystar.elements() {
            let shifted = ystar.translate(g.neg(yy));
            let r = kappa_with(&shifted, 1, opts)?;
            if r.value == ystar.len() as i64 - 1 && r.value >= 1 {
                chowla_ok = true;
                break;
            }
        }
    }
    let h1 = size_ok && b.hyp("κ_1(Y*-y) = |Y*|-1 ≥ 1 for some y", chowla_ok);
    let redundant = y.elements().all(|z| x.sumset_unchecked(&y.without(z)) == xy);
    let h2 = h1 && b.hyp("X+Y = X+(Y∖{z}) for all z", redundant);
    let h3 = h2 && b.hyp("N_2 - Y* ⊆ N_1", full_layer_sequence(x, y)?.check_descent(2)?);
    if !h3 {
        return Ok(b.skipped());
    }
    let bound = g.order() as i64 - choose2(m + 4);
    Ok(b.decide(
        x.len() as i64 >= bound,
        Certificate::Values {
            entries: vec![
                ("|X|".into(), x.len() as i64),
                ("m".into(), m),
                ("|G| - C(m+4,2)".into(), bound),
            ],
        },
        "|X| below the fainting bound",
    ))
}
