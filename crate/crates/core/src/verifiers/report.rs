//! Verifier reports and their replayable certificates.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::group::{Element, Group};
use crate::isoperimetry::is_fragment;
use crate::structure::ProgressionCertificate;
use crate::subset::GroupSubset;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Conclusion {
    Pass,
    Fail,
    Skipped,
    /// Hypotheses hold but the instance falls outside what the statement describes.
    OutOfStatement,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Hypothesis {
    pub name: String,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Instance {
    pub group: String,
    pub s: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
}

impl Instance {
    pub fn new(s: &GroupSubset) -> Self {
        Instance {
            group: s.group().to_string(),
            s: s.to_literal(),
            t: None,
            k: None,
        }
    }

    pub fn with_t(mut self, t: &GroupSubset) -> Self {
        self.t = Some(t.to_literal());
        self
    }

    pub fn with_k(mut self, k: usize) -> Self {
        self.k = Some(k);
        self
    }
}

/// A set realized by (or contained in) a progression.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProgressionWitness {
    pub label: String,
    pub group: String,
    pub set: String,
    pub certificate: ProgressionCertificate,
    /// The set is only contained in the progression.
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub containment: bool,
}

impl ProgressionWitness {
    pub fn exact(label: &str, set: &GroupSubset, certificate: ProgressionCertificate) -> Self {
        ProgressionWitness {
            label: label.into(),
            group: set.group().to_string(),
            set: set.to_literal(),
            certificate,
            containment: false,
        }
    }

    pub fn containing(label: &str, set: &GroupSubset, certificate: ProgressionCertificate) -> Self {
        ProgressionWitness {
            containment: true,
            ..Self::exact(label, set, certificate)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Certificate {
    Progressions {
        items: Vec<ProgressionWitness>,
    },
    Periodic {
        label: String,
        set: String,
        stabilizer: String,
    },
    QuasiPeriodic {
        label: String,
        set: String,
        added: Element,
        stabilizer: String,
    },
    Kappa {
        s: String,
        k: usize,
        value: i64,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        witness: Option<String>,
    },
    Atoms {
        s: String,
        k: usize,
        value: i64,
        atoms: Vec<String>,
    },
    Subgroup {
        label: String,
        carrier: String,
    },
    Coset {
        label: String,
        set: String,
        subgroup: String,
    },
    /// Exact integer facts; nothing to replay beyond the numbers themselves.
    Values {
        entries: Vec<(String, i64)>,
    },
    All {
        parts: Vec<Certificate>,
    },
}

fn parse_in(group: &str, lit: &str) -> Result<(Arc<Group>, GroupSubset)> {
    let g = Group::parse(group)?;
    let s = GroupSubset::parse(&g, lit)?;
    Ok((g, s))
}

fn is_subgroup(x: &GroupSubset) -> bool {
    x.contains(Element(0)) && x.sumset_unchecked(x) == *x
}

impl Certificate {
    pub fn all(parts: Vec<Certificate>) -> Self {
        if parts.len() == 1 {
            parts.into_iter().next().unwrap()
        } else {
            Certificate::All { parts }
        }
    }

    /// Re-checks the certificate's claims without any search.
    pub fn replay(&self, group: &Arc<Group>) -> Result<bool> {
        let parse = |lit: &str| GroupSubset::parse(group, lit);
        Ok(match self {
            Certificate::Progressions { items } => {
                for it in items {
                    let (g, set) = parse_in(&it.group, &it.set)?;
                    let c = it.certificate;
                    let ok = if it.containment {
                        c.missing_index.is_none()
                            && c.difference.0 != 0
                            && c.length <= g.element_order(c.difference)
                            && set.is_subset(&c.materialize(&g))
                    } else {
                        c.replays(&set)
                    };
                    if !ok {
                        return Ok(false);
                    }
                }
                true
            }
            Certificate::Periodic { set, stabilizer, .. } => {
                let x = parse(set)?;
                let h = parse(stabilizer)?;
                h.len() > 1 && is_subgroup(&h) && x.sumset_unchecked(&h) == x
            }
            Certificate::QuasiPeriodic {
                set,
                added,
                stabilizer,
                ..
            } => {
                let x = parse(set)?;
                let h = parse(stabilizer)?;
                let full = x.with(*added);
                !x.contains(*added) && h.len() > 1 && is_subgroup(&h) && full.sumset_unchecked(&h) == full
            }
            Certificate::Kappa { s, k, value, witness } => match witness {
                None => true,
                Some(w) => {
                    let s = parse(s)?;
                    let w = parse(w)?;
                    is_fragment(&w, &s, *k, *value, &s.generated_subgroup())?
                }
            },
            Certificate::Atoms { s, k, value, atoms } => {
                let s = parse(s)?;
                let h = s.generated_subgroup();
                let mut size = None;
                for a in atoms {
                    let a = parse(a)?;
                    if !a.contains(Element(0))
                        || !is_fragment(&a, &s, *k, *value, &h)?
                        || size.is_some_and(|n| n != a.len())
                    {
                        return Ok(false);
                    }
                    size = Some(a.len());
                }
                true
            }
            Certificate::Subgroup { carrier, .. } => is_subgroup(&parse(carrier)?),
            Certificate::Coset { set, subgroup, .. } => {
                let x = parse(set)?;
                let h = parse(subgroup)?;
                match x.first() {
                    Some(a) => is_subgroup(&h) && h.translate(Element(a)) == x,
                    None => false,
                }
            }
            Certificate::Values { .. } => true,
            Certificate::All { parts } => {
                for p in parts {
                    if !p.replay(group)? {
                        return Ok(false);
                    }
                }
                true
            }
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifierReport {
    pub statement: String,
    pub instance: Instance,
    pub hypotheses: Vec<Hypothesis>,
    pub conclusion: Conclusion,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub certificate: Option<Certificate>,
    /// Witnesses of a failed conclusion.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Certificate>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub elapsed_us: Option<u64>,
}

impl VerifierReport {
    pub fn hypotheses_met(&self) -> bool {
        self.hypotheses.iter().all(|h| h.holds)
    }

    pub fn is_counterexample(&self) -> bool {
        self.conclusion == Conclusion::Fail
    }
}

/// Accumulates hypotheses, stopping at the first failure.
pub(crate) struct ReportBuilder {
    statement: String,
    instance: Instance,
    hypotheses: Vec<Hypothesis>,
}

impl ReportBuilder {
    pub fn new(statement: &str, instance: Instance) -> Self {
        ReportBuilder {
            statement: statement.into(),
            instance,
            hypotheses: Vec::new(),
        }
    }

    /// Records a hypothesis and returns whether it holds.
    pub fn hyp(&mut self, name: &str, holds: bool) -> bool {
        self.hypotheses.push(Hypothesis {
            name: name.into(),
            holds,
        });
        holds
    }

    fn finish(self, conclusion: Conclusion) -> VerifierReport {
        VerifierReport {
            statement: self.statement,
            instance: self.instance,
            hypotheses: self.hypotheses,
            conclusion,
            certificate: None,
            counterexample: None,
            note: None,
            elapsed_us: None,
        }
    }

    pub fn skipped(self) -> VerifierReport {
        self.finish(Conclusion::Skipped)
    }

    pub fn pass(self, cert: Certificate) -> VerifierReport {
        VerifierReport {
            certificate: Some(cert),
            ..self.finish(Conclusion::Pass)
        }
    }

    pub fn fail(self, witness: Certificate, note: &str) -> VerifierReport {
        VerifierReport {
            counterexample: Some(witness),
            note: Some(note.into()),
            ..self.finish(Conclusion::Fail)
        }
    }

    /// Pass when `ok`, otherwise fail with the same witnesses.
    pub fn decide(self, ok: bool, cert: Certificate, note: &str) -> VerifierReport {
        if ok {
            self.pass(cert)
        } else {
            self.fail(cert, note)
        }
    }

    pub fn out_of_statement(self, note: &str) -> VerifierReport {
        VerifierReport {
            note: Some(note.into()),
            ..self.finish(Conclusion::OutOfStatement)
        }
    }
}
