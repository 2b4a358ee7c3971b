//! Statements about the size and shape of atoms.

use super::report::{Certificate, Instance, ReportBuilder, VerifierReport};
use super::{gcd6, is_subgroup, kappa_cert, kappa_in_range, progressions_cert, stabilizer_or_whole};
use crate::error::Result;
use crate::group::Element;
use crate::isoperimetry::{atoms_given, AtomSet, KappaResult, SearchOptions};
use crate::structure::{find_quasi_progressions, weak_chowla};
use crate::subset::GroupSubset;

fn binom2(n: i64) -> i64 {
    if n < 2 {
        0
    } else {
        n * (n - 1) / 2
    }
}

fn atoms_cert(s: &GroupSubset, a: &AtomSet) -> Certificate {
    Certificate::Atoms {
        s: s.to_literal(),
        k: a.k,
        value: a.value,
        atoms: a.atoms.iter().map(|x| x.to_literal()).collect(),
    }
}

fn base(b: &mut ReportBuilder, s: &GroupSubset) -> bool {
    b.hyp("0 ∈ S", s.contains(Element(0))) && b.hyp("S generates G", s.generates())
}

/// Shared shape of the 2-atom statements; `orders` adds the order condition
/// that depends on m.
fn two_atom_statement(id: &str, s: &GroupSubset, orders: bool, opts: &SearchOptions) -> Result<VerifierReport> {
    let g = s.group();
    let mut b = ReportBuilder::new(id, Instance::new(s));
    if !(base(&mut b, s) && b.hyp("|S| ≥ 3", s.len() >= 3)) {
        return Ok(b.skipped());
    }
    let n = s.len() as i64;
    let (range, label) = if orders {
        ((n - 1, n + 4), "-1 ≤ m ≤ 4, m = κ_2(S)-|S|")
    } else {
        ((i64::MIN, n + 4), "m ≤ 4, m = κ_2(S)-|S|")
    };
    let Some(r) = kappa_in_range(&mut b, s, 2, range, label, opts)? else {
        return Ok(b.skipped());
    };
    let m = r.value - n;
    if !b.hyp("|S| < |G| - C(m+4,2)", n < g.order() as i64 - binom2(m + 4)) {
        return Ok(b.skipped());
    }
    if orders {
        let threshold = (s.len() as i64 + m + 1).max(0) as usize;
        if !b.hyp("orders ≥ |S|+m+1", weak_chowla(s, threshold)?) {
            return Ok(b.skipped());
        }
    }
    let a = atoms_given(s, &r, opts)?;
    let ok = a
        .atoms
        .iter()
        .all(|x| x.len() == 2 || (!orders && is_subgroup(x)));
    Ok(b.decide(
        ok,
        Certificate::all(vec![kappa_cert(s, &r), atoms_cert(s, &a)]),
        if orders {
            "a 2-atom has size other than 2"
        } else {
            "a 2-atom has size above 2 and is not a subgroup"
        },
    ))
}

pub fn verify_theorem_main(s: &GroupSubset, opts: &SearchOptions) -> Result<VerifierReport> {
    two_atom_statement("thm:main", s, false, opts)
}

pub fn verify_chowla_atom(s: &GroupSubset, opts: &SearchOptions) -> Result<VerifierReport> {
    two_atom_statement("cor:cholaatom", s, true, opts)
}

/// `κ_k(S) = |S| = size` with the given separability; returns the κ result.
fn small_set_hypotheses(
    b: &mut ReportBuilder,
    s: &GroupSubset,
    k: usize,
    size: usize,
    coprime6: bool,
    opts: &SearchOptions,
) -> Result<Option<KappaResult>> {
    if !(base(b, s) && b.hyp(&format!("|S| = {size}"), s.len() == size)) {
        return Ok(None);
    }
    if coprime6 && !b.hyp("gcd(|G|, 6) = 1", gcd6(s.group())) {
        return Ok(None);
    }
    let v = size as i64;
    kappa_in_range(b, s, k, (v, v), &format!("κ_{k}(S) = |S|"), opts)
}

fn atom_size_statement(id: &str, s: &GroupSubset, k: usize, size: usize, coprime6: bool, opts: &SearchOptions) -> Result<VerifierReport> {
    let mut b = ReportBuilder::new(id, Instance::new(s));
    let Some(r) = small_set_hypotheses(&mut b, s, k, size, coprime6, opts)? else {
        return Ok(b.skipped());
    };
    let a = atoms_given(s, &r, opts)?;
    Ok(b.decide(
        a.atoms.iter().all(|x| x.len() == k),
        Certificate::all(vec![kappa_cert(s, &r), atoms_cert(s, &a)]),
        &format!("a {k}-atom does not have size {k}"),
    ))
}

pub fn verify_lemma_4at(s: &GroupSubset, opts: &SearchOptions) -> Result<VerifierReport> {
    atom_size_statement("lem:4at", s, 4, 3, false, opts)
}

pub fn verify_lemma_a3(s: &GroupSubset, opts: &SearchOptions) -> Result<VerifierReport> {
    atom_size_statement("lem:A3", s, 3, 4, true, opts)
}

pub fn verify_lemma_t3(s: &GroupSubset, opts: &SearchOptions) -> Result<VerifierReport> {
    let mut b = ReportBuilder::new("lem:T3", Instance::new(s));
    let Some(r) = small_set_hypotheses(&mut b, s, 4, 3, true, opts)? else {
        return Ok(b.skipped());
    };
    let qp = if s.group().is_cyclic() {
        find_quasi_progressions(s)?
    } else {
        Vec::new()
    };
    Ok(match qp.first() {
        Some(c) => b.pass(Certificate::all(vec![
            kappa_cert(s, &r),
            progressions_cert(&["S"], &[s], &[*c]),
        ])),
        None => b.fail(kappa_cert(s, &r), "G is not cyclic or S is not a quasi-progression"),
    })
}

pub fn verify_kempermannis_plus1(s: &GroupSubset, opts: &SearchOptions) -> Result<VerifierReport> {
    let g = s.group();
    let mut b = ReportBuilder::new("thm:kempermannis+1", Instance::new(s));
    if !(base(&mut b, s)
        && b.hyp("gcd(|G|, 6) = 1", gcd6(g))
        && b.hyp("4 ≤ |S| ≤ |G|-7", s.len() >= 4 && s.len() + 7 <= g.order())
        && b.hyp("orders ≥ |S|+1", weak_chowla(s, s.len() + 1)?))
    {
        return Ok(b.skipped());
    }
    let n = s.len() as i64;
    let Some(r) = kappa_in_range(&mut b, s, 3, (n, n), "κ_3(S) = |S|", opts)? else {
        return Ok(b.skipped());
    };
    if let Some(c) = find_quasi_progressions(s)?.first() {
        return Ok(b.pass(Certificate::all(vec![
            kappa_cert(s, &r),
            progressions_cert(&["S"], &[s], &[*c]),
        ])));
    }
    let star = s.without(Element(0));
    if let Some((added, h)) = star.quasi_periodicity()? {
        return Ok(b.pass(Certificate::all(vec![
            kappa_cert(s, &r),
            Certificate::QuasiPeriodic {
                label: "S*".into(),
                set: star.to_literal(),
                added,
                stabilizer: h.carrier().to_literal(),
            },
        ])));
    }
    let q = stabilizer_or_whole(&star);
    Ok(b.fail(
        Certificate::all(vec![
            kappa_cert(s, &r),
            Certificate::Subgroup {
                label: "stabilizer of S*".into(),
                carrier: q.carrier().to_literal(),
            },
        ]),
        "S is not a quasi-progression and S* is not quasi-periodic",
    ))
}
