//! Statements whose conclusions involve quasi-progressions.

use super::report::{Certificate, Instance, ReportBuilder, VerifierReport};
use super::{gcd6, progressions_cert, values};
use crate::error::{Error, Result};
use crate::group::{make_group, Element, Subgroup};
use crate::structure::{ap_or_quasi_with, progression_with, quasi_progression_with, weak_chowla, ProgressionCertificate};
use crate::subset::GroupSubset;

pub fn verify_transfer(s: &GroupSubset, t: &GroupSubset) -> Result<VerifierReport> {
    let g = s.group();
    let n = g.order();
    let mut b = ReportBuilder::new("lem:transfer", Instance::new(s).with_t(t));
    let rs: Vec<(Element, ProgressionCertificate)> = g
        .elements()
        .skip(1)
        .filter_map(|r| quasi_progression_with(s, r).map(|c| (r, c)))
        .collect();
    let st = s.sumset_unchecked(t).len();
    if !(b.hyp("G cyclic", g.is_cyclic())
        && b.hyp("0 ∈ S", s.contains(Element(0)))
        && b.hyp("S generates G", s.generates())
        && b.hyp("|S| ≥ 3", s.len() >= 3)
        && b.hyp("S is a quasi-progression", !rs.is_empty())
        && b.hyp("|T| ≥ 3", t.len() >= 3)
        && b.hyp("|S+T| ≤ |S|+|T| ≤ n-4", st <= s.len() + t.len() && s.len() + t.len() + 4 <= n))
    {
        return Ok(b.skipped());
    }
    // (ii): n = 12 and T a coset of the subgroup of order 4
    let coset4 = (n == 12)
        .then(|| {
            let a = Element(t.first().unwrap());
            let h = t.translate(g.neg(a));
            (t.len() == 4 && h.sumset_unchecked(&h) == h).then_some(h)
        })
        .flatten();
    // (i) must hold for every difference witnessing S, unless (ii) holds
    let mut items = Vec::new();
    let mut all_i = true;
    for (r, cs) in &rs {
        match ap_or_quasi_with(t, *r) {
            Some(ct) => {
                items.push(super::ProgressionWitness::exact("S", s, *cs));
                items.push(super::ProgressionWitness::exact("T", t, ct));
            }
            None => all_i = false,
        }
    }
    if all_i {
        return Ok(b.pass(Certificate::Progressions { items }));
    }
    if let Some(h) = coset4 {
        return Ok(b.pass(Certificate::Coset {
            label: "T".into(),
            set: t.to_literal(),
            subgroup: h.to_literal(),
        }));
    }
    Ok(b.fail(
        values(&[("|S+T|", st as i64), ("n", n as i64)]),
        "T is neither a (quasi-)progression of the difference of S nor an exceptional coset",
    ))
}

/// The shape of a 3-element set of integers: progression, quasi-progression, or neither.
fn integer_shape(s: &[i64]) -> Option<(&'static str, i64)> {
    let mut v = s.to_vec();
    v.sort();
    let (g1, g2) = (v[1] - v[0], v[2] - v[1]);
    if g1 == g2 {
        Some(("progression", g1))
    } else if g1 == 2 * g2 || g2 == 2 * g1 {
        Some(("quasi-progression", g1.min(g2)))
    } else {
        None
    }
}

/// Integer sets with `|S| = 3`, `|T| = 4`; sums are taken in `Z/M` with `M`
/// large enough that no sum wraps around.
pub fn verify_lemma_nz(s: &[i64], t: &[i64]) -> Result<VerifierReport> {
    let mut ss = s.to_vec();
    let mut tt = t.to_vec();
    ss.sort();
    ss.dedup();
    tt.sort();
    tt.dedup();
    if ss.len() != 3 || tt.len() != 4 {
        return Err(Error::InvalidSize(format!(
            "need |S| = 3 and |T| = 4, got {} and {}",
            ss.len(),
            tt.len()
        )));
    }
    let lit = |v: &[i64]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
    let inst = Instance {
        group: "Z".into(),
        s: lit(&ss),
        t: Some(lit(&tt)),
        k: None,
    };
    let (s0, t0) = (ss[0], tt[0]);
    let m = (ss[2] - s0) + (tt[3] - t0) + 2;
    let zm = make_group(&[m as usize])?;
    let embed = |v: &[i64], o: i64| GroupSubset::from_indices(&zm, &v.iter().map(|x| (x - o) as usize).collect::<Vec<_>>());
    let sum = embed(&ss, s0)?.sumset(&embed(&tt, t0)?)?.len();
    let mut b = ReportBuilder::new("lem:NZ", inst);
    if !b.hyp("|S+T| = 7", sum == 7) {
        return Ok(b.skipped());
    }
    Ok(match integer_shape(&ss) {
        Some((_, d)) => b.pass(values(&[("|S+T|", sum as i64), ("difference", d)])),
        None => b.fail(values(&[("|S+T|", sum as i64)]), "S is neither a progression nor a quasi-progression"),
    })
}

/// Outcome of one maximal subgroup in the `|S+T| = |S|+|T|` statement.
enum QOutcome {
    Pass(Certificate),
    Fail(Certificate),
    Out,
}

fn check_q(s: &GroupSubset, t: &GroupSubset, q: &Subgroup) -> Result<QOutcome> {
    let g = s.group();
    let qc = Certificate::Subgroup {
        label: "Q".into(),
        carrier: q.carrier().to_literal(),
    };
    if q.is_trivial() {
        for r in g.elements().skip(1) {
            if let (Some(cs), Some(ct)) = (ap_or_quasi_with(s, r), ap_or_quasi_with(t, r)) {
                return Ok(QOutcome::Pass(Certificate::all(vec![
                    qc,
                    progressions_cert(&["S", "T"], &[s, t], &[cs, ct]),
                ])));
            }
        }
        return Ok(QOutcome::Fail(qc));
    }
    let sigma = g.quotient(q)?;
    let (ss, st) = (sigma.apply_set(s), sigma.apply_set(t));
    let sst = sigma.apply_set(&s.sumset_unchecked(t));
    let quotient_order = sigma.target().order();
    if !(st.len() >= 2 && sst.len() + 1 < quotient_order) {
        return Ok(QOutcome::Out);
    }
    let qg = sigma.target();
    let tq = t.sumset_unchecked(q.carrier()).len();
    for d in qg.elements().skip(1) {
        let (Some(cs), Some(ct)) = (progression_with(&ss, d), progression_with(&st, d)) else {
            continue;
        };
        // endpoints of σ(T); a full coset of <d> has every element as an endpoint
        let full_t = ct.length == qg.element_order(d);
        let ends: Vec<Element> = if full_t {
            st.elements().collect()
        } else {
            vec![ct.start, ct.term(qg, ct.length - 1)]
        };
        let end_ok = ends.iter().any(|&e| {
            let rest = t.difference_unchecked(&sigma.preimage(e));
            rest.sumset_unchecked(q.carrier()).len() <= rest.len() + 1
        });
        let zero_end = cs.length == qg.element_order(d)
            || cs.start == Element(0)
            || cs.term(qg, cs.length - 1) == Element(0);
        let periodic_ok = zero_end || tq <= t.len() + 1;
        if end_ok && periodic_ok {
            return Ok(QOutcome::Pass(Certificate::all(vec![
                qc,
                progressions_cert(&["σ(S)", "σ(T)"], &[&ss, &st], &[cs, ct]),
            ])));
        }
    }
    Ok(QOutcome::Fail(Certificate::all(vec![
        qc,
        values(&[("|T+Q|", tq as i64), ("|T|", t.len() as i64)]),
    ])))
}

pub fn verify_kemperman_plus1(s: &GroupSubset, t: &GroupSubset) -> Result<VerifierReport> {
    let g = s.group();
    let mut b = ReportBuilder::new("thm:kemperman+1", Instance::new(s).with_t(t));
    let st = s.sumset_unchecked(t).len();
    if !(b.hyp("gcd(|G|, 6) = 1", gcd6(g))
        && b.hyp("0 ∈ S", s.contains(Element(0)))
        && b.hyp("S generates G", s.generates())
        && b.hyp("|S| ≥ 4", s.len() >= 4)
        && b.hyp("orders ≥ |S|+1", weak_chowla(s, s.len() + 1)?)
        && b.hyp("|T| ≥ 3", t.len() >= 3)
        && b.hyp("|S+T| = |S|+|T| ≤ |G|-4", st == s.len() + t.len() && st + 4 <= g.order()))
    {
        return Ok(b.skipped());
    }
    let star = s.without(Element(0));
    let candidates: Vec<Subgroup> = g
        .all_subgroups()?
        .into_iter()
        .filter(|q| star.sumset_unchecked(q.carrier()).len() <= star.len() + 1)
        .collect();
    let maximal: Vec<&Subgroup> = candidates
        .iter()
        .filter(|q| {
            !candidates
                .iter()
                .any(|p| p.order() > q.order() && q.is_subgroup_of(p))
        })
        .collect();
    let mut passes = Vec::new();
    let mut any_out = false;
    for q in maximal {
        match check_q(s, t, q)? {
            QOutcome::Pass(c) => passes.push(c),
            QOutcome::Fail(c) => {
                return Ok(b.fail(c, "a maximal Q violates the conclusion"));
            }
            QOutcome::Out => any_out = true,
        }
    }
    if passes.is_empty() && any_out {
        return Ok(b.out_of_statement("|σ(T)| < 2 or |σ(S+T)| ≥ |G|/|Q| - 1"));
    }
    Ok(b.pass(Certificate::all(passes)))
}
