//! Hypothesis-checked verifiers for the critical-pair statements, and scans.

mod atoms;
mod classical;
pub mod example;
mod quasi;
pub mod report;
pub mod scan;

pub use atoms::*;
pub use classical::*;
pub use example::reproduce_example_m5;
pub use quasi::*;
pub use report::{Certificate, Conclusion, Hypothesis, Instance, ProgressionWitness, VerifierReport, SCHEMA_VERSION};

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::group::{Element, Group, Subgroup};
use crate::isoperimetry::{kappa_at_most, kappa_with, KappaResult, SearchOptions};
use crate::structure::{progression_with, ProgressionCertificate};
use crate::subset::GroupSubset;

/// What a statement takes as input.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Arity {
    S,
    ST,
    /// Two finite sets of integers.
    Integers,
}

#[derive(Debug, Clone, Copy)]
pub struct StatementInfo {
    pub id: &'static str,
    pub arity: Arity,
    pub summary: &'static str,
}

pub const STATEMENTS: &[StatementInfo] = &[
    StatementInfo { id: "thm:cauchy-davenport", arity: Arity::ST, summary: "|S+T| ≥ min(p, |S|+|T|-1) in Z/p" },
    StatementInfo { id: "cor:chowla", arity: Arity::S, summary: "κ_1(S) = |S|-1 under the weak Chowla condition" },
    StatementInfo { id: "lem:sidon", arity: Arity::S, summary: "κ_2(S) = 2|S|-3 for Sidon S" },
    StatementInfo { id: "lem:sidon0", arity: Arity::S, summary: "κ_1(S) = |S|-1 when translates of S meet in at most 2 points" },
    StatementInfo { id: "thm:kemperman", arity: Arity::ST, summary: "critical pairs below p-2 are progressions with a common difference" },
    StatementInfo { id: "thm:hr", arity: Arity::ST, summary: "|S+T| = |S|+|T| ≤ p-4 forces containment in short progressions" },
    StatementInfo { id: "thm:kempermannis", arity: Arity::S, summary: "κ_2(S) ≤ |S|-1: S is a progression or S* is periodic" },
    StatementInfo { id: "prop:fragments", arity: Arity::ST, summary: "small T+S: T ⊆ Q or σ(S), σ(T) progressions" },
    StatementInfo { id: "cor:kemperman+0", arity: Arity::ST, summary: "decomposition of T modulo ⟨S⟩ for small S+T" },
    StatementInfo { id: "thm:main", arity: Arity::S, summary: "2-atoms have size 2 or are subgroups" },
    StatementInfo { id: "cor:cholaatom", arity: Arity::S, summary: "2-atoms have size 2 under order conditions" },
    StatementInfo { id: "lem:4at", arity: Arity::S, summary: "κ_4(S) = |S| = 3: 4-atoms have size 4" },
    StatementInfo { id: "lem:A3", arity: Arity::S, summary: "κ_3(S) = |S| = 4: 3-atoms have size 3" },
    StatementInfo { id: "lem:T3", arity: Arity::S, summary: "κ_4(S) = |S| = 3: G cyclic and S a quasi-progression" },
    StatementInfo { id: "thm:kempermannis+1", arity: Arity::S, summary: "κ_3(S) = |S|: S quasi-progression or S* quasi-periodic" },
    StatementInfo { id: "lem:transfer", arity: Arity::ST, summary: "quasi-progression S transfers its difference to T" },
    StatementInfo { id: "lem:NZ", arity: Arity::Integers, summary: "|S|=3, |T|=4, |S+T|=7 in Z: S progression or quasi-progression" },
    StatementInfo { id: "thm:kemperman+1", arity: Arity::ST, summary: "|S+T| = |S|+|T|: progressions modulo a maximal Q" },
    StatementInfo { id: "lem:commutativity", arity: Arity::ST, summary: "layer descent propagates" },
    StatementInfo { id: "lem:bigS", arity: Arity::ST, summary: "redundant 3-set A gives 3|S| ≥ 2|S+A|" },
    StatementInfo { id: "lem:fainting", arity: Arity::ST, summary: "fainting hypotheses force |X| ≥ |G| - C(m+4,2)" },
];

pub fn statement(id: &str) -> Result<&'static StatementInfo> {
    STATEMENTS
        .iter()
        .find(|s| s.id == id)
        .ok_or_else(|| Error::UnknownStatement(id.into()))
}

/// Runs statement `id` on `S` (and `T` when the statement takes a pair).
pub fn verify(id: &str, s: &GroupSubset, t: Option<&GroupSubset>, opts: &SearchOptions) -> Result<VerifierReport> {
    let info = statement(id)?;
    let need_t = || t.ok_or_else(|| Error::InvalidArgument(format!("`{id}` needs a second set T")));
    if let Some(t) = t {
        s.check_same_group(t)?;
    }
    match info.id {
        "thm:cauchy-davenport" => Ok(verify_cauchy_davenport(s, need_t()?)),
        "cor:chowla" => verify_chowla(s, opts),
        "lem:sidon" => verify_sidon(s, opts),
        "lem:sidon0" => verify_sidon0(s, opts),
        "thm:kemperman" => Ok(verify_kemperman(s, need_t()?)),
        "thm:hr" => Ok(verify_hr(s, need_t()?)),
        "thm:kempermannis" => verify_kempermannis(s, opts),
        "prop:fragments" => verify_fragments_proposition(s, need_t()?),
        "cor:kemperman+0" => verify_kemperman_plus0(s, need_t()?),
        "thm:main" => verify_theorem_main(s, opts),
        "cor:cholaatom" => verify_chowla_atom(s, opts),
        "lem:4at" => verify_lemma_4at(s, opts),
        "lem:A3" => verify_lemma_a3(s, opts),
        "lem:T3" => verify_lemma_t3(s, opts),
        "thm:kempermannis+1" => verify_kempermannis_plus1(s, opts),
        "lem:transfer" => verify_transfer(s, need_t()?),
        "thm:kemperman+1" => verify_kemperman_plus1(s, need_t()?),
        "lem:commutativity" => verify_commutativity(s, need_t()?),
        "lem:bigS" => verify_big_s(s, need_t()?),
        "lem:fainting" => {
            let t = need_t()?;
            let inst = Instance::new(s).with_t(t);
            if !s.contains(Element(0)) || !t.contains(Element(0)) || !t.generates() {
                let mut b = report::ReportBuilder::new(id, inst);
                b.hyp("0 ∈ X ∩ Y and Y generates G", false);
                return Ok(b.skipped());
            }
            crate::isoperimetry::fainting_bound_check(s, t, opts)
        }
        "lem:NZ" => Err(Error::InvalidArgument("`lem:NZ` takes integer sets".into())),
        _ => unreachable!(),
    }
}

/// Parses a group and subset literals, then runs the statement.
pub fn verify_literal(
    id: &str,
    group: Option<&str>,
    s: &str,
    t: Option<&str>,
    opts: &SearchOptions,
) -> Result<VerifierReport> {
    let info = statement(id)?;
    if info.arity == Arity::Integers {
        let parse = |lit: &str| -> Result<Vec<i64>> {
            lit.trim()
                .trim_start_matches('{')
                .trim_end_matches('}')
                .split(',')
                .filter(|x| !x.trim().is_empty())
                .map(|x| x.trim().parse::<i64>().map_err(|_| Error::Parse(format!("bad integer `{x}`"))))
                .collect()
        };
        let t = t.ok_or_else(|| Error::InvalidArgument(format!("`{id}` needs a second set T")))?;
        return verify_lemma_nz(&parse(s)?, &parse(t)?);
    }
    let g = Group::parse(group.ok_or_else(|| Error::InvalidArgument("a group is required".into()))?)?;
    let s = GroupSubset::parse(&g, s)?;
    let t = t.map(|t| GroupSubset::parse(&g, t)).transpose()?;
    verify(id, &s, t.as_ref(), opts)
}

/// Re-runs the statement recorded in `report` and returns the fresh report.
pub fn replay(report: &VerifierReport, opts: &SearchOptions) -> Result<VerifierReport> {
    let inst = &report.instance;
    let group = (inst.group != "Z").then_some(inst.group.as_str());
    verify_literal(&report.statement, group, &inst.s, inst.t.as_deref(), opts)
}

// ---- shared helpers

pub(crate) fn kappa_cert(s: &GroupSubset, r: &KappaResult) -> Certificate {
    Certificate::Kappa {
        s: s.to_literal(),
        k: r.k,
        value: r.value,
        witness: r.witness.as_ref().map(|w| w.to_literal()),
    }
}

pub(crate) fn kappa(s: &GroupSubset, k: usize, opts: &SearchOptions) -> Result<KappaResult> {
    kappa_with(s, k, opts)
}

/// Records "S is k-separable with lo ≤ κ_k(S) ≤ hi" as one hypothesis,
/// searching no further than `hi`.
pub(crate) fn kappa_in_range(
    b: &mut report::ReportBuilder,
    s: &GroupSubset,
    k: usize,
    (lo, hi): (i64, i64),
    label: &str,
    opts: &SearchOptions,
) -> Result<Option<KappaResult>> {
    let r = kappa_at_most(s, k, hi, opts)?.filter(|r| r.separable && r.value >= lo);
    Ok(if b.hyp(&format!("S is {k}-separable with {label}"), r.is_some()) {
        r
    } else {
        None
    })
}

pub(crate) fn is_subgroup(x: &GroupSubset) -> bool {
    x.contains(Element(0)) && x.sumset_unchecked(x) == *x
}

/// Stabilizer of `x`, taking the whole group for the empty set.
pub(crate) fn stabilizer_or_whole(x: &GroupSubset) -> Subgroup {
    if x.is_empty() {
        x.group().whole()
    } else {
        x.stabilizer().expect("nonempty")
    }
}

pub(crate) fn gcd6(g: &Group) -> bool {
    g.order() % 2 != 0 && g.order() % 3 != 0
}

/// A nonzero `d` for which every set is a progression of difference `d`
/// (singletons qualify for any `d`), with the certificates.
pub(crate) fn common_difference(sets: &[&GroupSubset]) -> Option<(Element, Vec<ProgressionCertificate>)> {
    let g: &Arc<Group> = sets.first()?.group();
    for d in g.elements().skip(1) {
        let certs: Option<Vec<ProgressionCertificate>> = sets
            .iter()
            .map(|x| {
                if x.len() == 1 {
                    Some(ProgressionCertificate {
                        start: Element(x.first().unwrap()),
                        difference: d,
                        length: 1,
                        missing_index: None,
                    })
                } else {
                    progression_with(x, d)
                }
            })
            .collect();
        if let Some(c) = certs {
            return Some((d, c));
        }
    }
    None
}

pub(crate) fn progressions_cert(labels: &[&str], sets: &[&GroupSubset], certs: &[ProgressionCertificate]) -> Certificate {
    Certificate::Progressions {
        items: labels
            .iter()
            .zip(sets)
            .zip(certs)
            .map(|((l, s), c)| ProgressionWitness::exact(l, s, *c))
            .collect(),
    }
}

pub(crate) fn values(entries: &[(&str, i64)]) -> Certificate {
    Certificate::Values {
        entries: entries.iter().map(|(k, v)| (k.to_string(), *v)).collect(),
    }
}
