//! Cauchy-Davenport type statements and their isoperimetric versions.

use super::report::{Certificate, Instance, ReportBuilder, VerifierReport};
use super::{common_difference, kappa, kappa_cert, kappa_in_range, progressions_cert, stabilizer_or_whole, values};
use crate::error::Result;
use crate::group::{coset_decomposition, is_prime, Element};
use crate::isoperimetry::SearchOptions;
use crate::structure::{contained_in_progression, is_sidon, progression_with, weak_chowla, ProgressionCertificate};
use crate::subset::{big_s_check, full_layer_sequence, BigSOutcome, GroupSubset};

fn has_zero(s: &GroupSubset) -> bool {
    s.contains(Element(0))
}

fn chowla_threshold(s: &GroupSubset, threshold: usize) -> bool {
    has_zero(s) && weak_chowla(s, threshold).unwrap_or(false)
}

pub fn verify_cauchy_davenport(s: &GroupSubset, t: &GroupSubset) -> VerifierReport {
    let g = s.group();
    let mut b = ReportBuilder::new("thm:cauchy-davenport", Instance::new(s).with_t(t));
    if !(b.hyp("G has prime order", g.moduli().len() == 1 && is_prime(g.order()))
        && b.hyp("S, T nonempty", !s.is_empty() && !t.is_empty()))
    {
        return b.skipped();
    }
    let st = s.sumset_unchecked(t).len();
    let bound = g.order().min(s.len() + t.len() - 1);
    b.decide(
        st >= bound,
        values(&[("|S+T|", st as i64), ("min(p, |S|+|T|-1)", bound as i64)]),
        "|S+T| below the Cauchy-Davenport bound",
    )
}

pub fn verify_chowla(s: &GroupSubset, opts: &SearchOptions) -> Result<VerifierReport> {
    let g = s.group();
    let mut b = ReportBuilder::new("cor:chowla", Instance::new(s));
    if !(b.hyp("0 ∈ S", has_zero(s))
        && b.hyp("S generates G", s.generates())
        && b.hyp("orders ≥ |S|-1", chowla_threshold(s, s.len().saturating_sub(1))))
    {
        return Ok(b.skipped());
    }
    let r = kappa(s, 1, opts)?;
    let mut ok = r.value == s.len() as i64 - 1;
    // the consequence |X+S| ≥ min(|G|, |X|+|S|-1) on the sets at hand
    let mut samples = vec![s.clone(), GroupSubset::singleton(g, Element(0))];
    if let Some(w) = &r.witness {
        samples.push(w.clone());
        let rest = w.sumset_unchecked(s).complement();
        if !rest.is_empty() {
            samples.push(rest);
        }
    }
    for x in &samples {
        ok &= x.sumset_unchecked(s).len() >= g.order().min(x.len() + s.len() - 1);
    }
    Ok(b.decide(ok, kappa_cert(s, &r), "κ_1(S) differs from |S|-1"))
}

pub fn verify_sidon(s: &GroupSubset, opts: &SearchOptions) -> Result<VerifierReport> {
    let mut b = ReportBuilder::new("lem:sidon", Instance::new(s));
    if !(b.hyp("0 ∈ S", has_zero(s)) && b.hyp("|S| ≥ 3", s.len() >= 3) && b.hyp("S is Sidon", is_sidon(s))) {
        return Ok(b.skipped());
    }
    let r = kappa(s, 2, opts)?;
    Ok(b.decide(
        r.value == 2 * s.len() as i64 - 3,
        kappa_cert(s, &r),
        "κ_2(S) differs from 2|S|-3",
    ))
}

pub fn verify_sidon0(s: &GroupSubset, opts: &SearchOptions) -> Result<VerifierReport> {
    let mut b = ReportBuilder::new("lem:sidon0", Instance::new(s));
    let overlap = s
        .group()
        .elements()
        .skip(1)
        .map(|x| s.intersection_len(&s.translate(x)))
        .max()
        .unwrap_or(0);
    if !(b.hyp("0 ∈ S", has_zero(s))
        && b.hyp("S generates G", s.generates())
        && b.hyp("|S| ≥ 3", s.len() >= 3)
        && b.hyp("|(S+g) ∩ S| ≤ 2 for g ≠ 0", overlap <= 2))
    {
        return Ok(b.skipped());
    }
    let r = kappa(s, 1, opts)?;
    Ok(b.decide(r.value == s.len() as i64 - 1, kappa_cert(s, &r), "κ_1(S) differs from |S|-1"))
}

pub fn verify_kemperman(s: &GroupSubset, t: &GroupSubset) -> VerifierReport {
    let g = s.group();
    let p = g.smallest_prime_divisor().unwrap_or(1);
    let st = s.sumset_unchecked(t).len();
    let mut b = ReportBuilder::new("thm:kemperman", Instance::new(s).with_t(t));
    if !(b.hyp("|S| ≥ 2, |T| ≥ 2", s.len() >= 2 && t.len() >= 2)
        && b.hyp("|S+T| = |S|+|T|-1", st + 1 == s.len() + t.len())
        && b.hyp("|S+T| ≤ p-2", st + 2 <= p))
    {
        return b.skipped();
    }
    match common_difference(&[s, t]) {
        Some((_, certs)) => b.pass(progressions_cert(&["S", "T"], &[s, t], &certs)),
        None => b.fail(
            values(&[("|S+T|", st as i64), ("p", p as i64)]),
            "no common difference makes S and T progressions",
        ),
    }
}

pub fn verify_hr(s: &GroupSubset, t: &GroupSubset) -> VerifierReport {
    let g = s.group();
    let p = g.order();
    let st = s.sumset_unchecked(t).len();
    let mut b = ReportBuilder::new("thm:hr", Instance::new(s).with_t(t));
    if !(b.hyp("G has prime order", g.moduli().len() == 1 && is_prime(p))
        && b.hyp("|T| ≥ 3, |S| ≥ 4", t.len() >= 3 && s.len() >= 4)
        && b.hyp("|S+T| = |S|+|T|", st == s.len() + t.len())
        && b.hyp("|S+T| ≤ p-4", st + 4 <= p))
    {
        return b.skipped();
    }
    for d in g.elements().skip(1) {
        let (Some(a), Some(c)) = (
            contained_in_progression(s, d, s.len() + 1),
            contained_in_progression(t, d, t.len() + 1),
        ) else {
            continue;
        };
        let ap = |start, length| ProgressionCertificate {
            start,
            difference: d,
            length,
            missing_index: None,
        };
        return b.pass(Certificate::Progressions {
            items: vec![
                super::ProgressionWitness::containing("S", s, ap(a, s.len() + 1)),
                super::ProgressionWitness::containing("T", t, ap(c, t.len() + 1)),
            ],
        });
    }
    b.fail(
        values(&[("|S+T|", st as i64)]),
        "no common difference gives progressions of lengths |S|+1, |T|+1",
    )
}

pub fn verify_kempermannis(s: &GroupSubset, opts: &SearchOptions) -> Result<VerifierReport> {
    let mut b = ReportBuilder::new("thm:kempermannis", Instance::new(s));
    if !(b.hyp("0 ∈ S", has_zero(s))
        && b.hyp("S generates G", s.generates())
        && b.hyp("orders ≥ |S|", chowla_threshold(s, s.len())))
    {
        return Ok(b.skipped());
    }
    let Some(r) = kappa_in_range(&mut b, s, 2, (i64::MIN, s.len() as i64 - 1), "κ_2(S) ≤ |S|-1", opts)? else {
        return Ok(b.skipped());
    };
    if let Some(c) = s.group().elements().skip(1).find_map(|d| progression_with(s, d)) {
        return Ok(b.pass(Certificate::all(vec![
            progressions_cert(&["S"], &[s], &[c]),
            kappa_cert(s, &r),
        ])));
    }
    let star = s.without(Element(0));
    let q = stabilizer_or_whole(&star);
    if !q.is_trivial() {
        return Ok(b.pass(Certificate::all(vec![
            Certificate::Periodic {
                label: "S*".into(),
                set: star.to_literal(),
                stabilizer: q.carrier().to_literal(),
            },
            kappa_cert(s, &r),
        ])));
    }
    Ok(b.fail(kappa_cert(s, &r), "S is not a progression and S* is aperiodic"))
}

/// Whether all but at most one member of the decomposition of `t` modulo `q` are full cosets.
fn at_most_one_partial(t: &GroupSubset, q: &crate::group::Subgroup) -> Result<bool> {
    Ok(coset_decomposition(t, q)?
        .iter()
        .filter(|p| p.len() < q.order())
        .count()
        <= 1)
}

pub fn verify_fragments_proposition(s: &GroupSubset, t: &GroupSubset) -> Result<VerifierReport> {
    let g = s.group();
    let mut b = ReportBuilder::new("prop:fragments", Instance::new(s).with_t(t));
    let star = s.without(Element(0));
    let q = stabilizer_or_whole(&star);
    let ts = t.sumset_unchecked(s).len();
    let rhs = (t.len() + s.len()) as i64 - 1;
    if !(b.hyp("0 ∈ S", has_zero(s))
        && b.hyp("S generates G", s.generates())
        && b.hyp("0 ∈ T", has_zero(t))
        && b.hyp("|T+S| ≤ |T|+|S|-1", ts as i64 <= rhs)
        && b.hyp("|T|+|S|-1 < |G|-|Q|", rhs < (g.order() - q.order()) as i64)
        && b.hyp("orders ≥ |S|", chowla_threshold(s, s.len())))
    {
        return Ok(b.skipped());
    }
    let stab = Certificate::Subgroup {
        label: "Q".into(),
        carrier: q.carrier().to_literal(),
    };
    if t.is_subset(q.carrier()) {
        return Ok(b.pass(stab));
    }
    let sigma = g.quotient(&q)?;
    let (ss, st) = (sigma.apply_set(s), sigma.apply_set(t));
    let branch = common_difference(&[&ss, &st]);
    let complete = at_most_one_partial(t, &q)?;
    Ok(match branch {
        Some((_, certs)) if complete => b.pass(Certificate::all(vec![
            stab,
            progressions_cert(&["σ(S)", "σ(T)"], &[&ss, &st], &certs),
        ])),
        _ => b.fail(stab, "T ⊄ Q and σ(S), σ(T) are not progressions with complete cosets"),
    })
}

pub fn verify_kemperman_plus0(s: &GroupSubset, t: &GroupSubset) -> Result<VerifierReport> {
    let g = s.group();
    let mut b = ReportBuilder::new("cor:kemperman+0", Instance::new(s).with_t(t));
    if !(b.hyp("0 ∈ S", has_zero(s)) && b.hyp("T nonempty", !t.is_empty())) {
        return Ok(b.skipped());
    }
    let h = s.generated_subgroup();
    let star = s.without(Element(0));
    let q = stabilizer_or_whole(&star);
    let st = s.sumset_unchecked(t).len() as i64;
    let rhs = (s.len() + t.len()) as i64 - 1;
    let ht = h.carrier().sumset_unchecked(t).len() as i64;
    if !(b.hyp("|S+T| ≤ |S|+|T|-1", st <= rhs)
        && b.hyp("|S|+|T|-1 < |H+T|-|Q|", rhs < ht - q.order() as i64)
        && b.hyp("orders ≥ |S|", chowla_threshold(s, s.len())))
    {
        return Ok(b.skipped());
    }
    let mut parts = coset_decomposition(t, &h)?;
    parts.sort_by_key(|p| (p.sumset_unchecked(s).len(), p.len() == h.order(), p.first()));
    let t1 = parts[0].clone();
    let rest_full = parts[1..].iter().all(|p| p.len() == h.order());
    let diff = t1.difference_set(&t1)?;
    let stab = Certificate::Subgroup {
        label: "Q".into(),
        carrier: q.carrier().to_literal(),
    };
    let t1_cert = Certificate::Values {
        entries: vec![("|T_1|".into(), t1.len() as i64), ("parts".into(), parts.len() as i64)],
    };
    if rest_full && diff.is_subset(q.carrier()) {
        return Ok(b.pass(Certificate::all(vec![stab, t1_cert])));
    }
    let sigma = g.quotient(&q)?;
    let (ss, st1) = (sigma.apply_set(s), sigma.apply_set(&t1));
    Ok(match common_difference(&[&ss, &st1]) {
        Some((_, certs)) if rest_full => b.pass(Certificate::all(vec![
            stab,
            t1_cert,
            progressions_cert(&["σ(S)", "σ(T_1)"], &[&ss, &st1], &certs),
        ])),
        _ => b.fail(
            Certificate::all(vec![stab, t1_cert]),
            "a part beyond T_1 is incomplete, or T_1 fits neither branch",
        ),
    })
}

/// `N_r - Y* ⊆ N_{r-1}` at the first such `r` implies it for all later `i`.
pub fn verify_commutativity(x: &GroupSubset, y: &GroupSubset) -> Result<VerifierReport> {
    let mut b = ReportBuilder::new("lem:commutativity", Instance::new(x).with_t(y));
    if !b.hyp("0 ∈ X ∩ Y", has_zero(x) && has_zero(y)) {
        return Ok(b.skipped());
    }
    let seq = full_layer_sequence(x, y)?;
    let last = seq.last();
    let mut first = None;
    for r in 1..=last + 1 {
        if seq.check_descent(r)? {
            first = Some(r);
            break;
        }
    }
    let r = first.expect("descent holds past the last layer");
    if !b.hyp("N_r - Y* ⊆ N_(r-1) for some r ≤ last layer", r <= last) {
        return Ok(b.skipped());
    }
    let mut ok = true;
    for i in r..=last + 1 {
        ok &= seq.check_descent(i)?;
    }
    Ok(b.decide(
        ok,
        values(&[("r", r as i64), ("last layer", last as i64)]),
        "descent fails after it first holds",
    ))
}

pub fn verify_big_s(s: &GroupSubset, a: &GroupSubset) -> Result<VerifierReport> {
    let mut b = ReportBuilder::new("lem:bigS", Instance::new(s).with_t(a));
    if !b.hyp("|A| = 3", a.len() == 3) {
        return Ok(b.skipped());
    }
    Ok(match big_s_check(s, a)? {
        BigSOutcome::HypothesisNotMet => {
            b.hyp("S+A = S+(A∖{a}) for all a", false);
            b.skipped()
        }
        BigSOutcome::Checked { holds } => {
            b.hyp("S+A = S+(A∖{a}) for all a", true);
            let sa = s.sumset_unchecked(a).len() as i64;
            b.decide(
                holds,
                values(&[("|S|", s.len() as i64), ("|S+A|", sa)]),
                "3|S| < 2|S+A|",
            )
        }
    })
}
