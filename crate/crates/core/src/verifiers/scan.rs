//! Exhaustive scans of a statement over a family of groups and sets.
//!
//! `S` ranges over sets containing 0 up to automorphism; `T` over sets
//! containing 0 up to translation. Work is split into units, one per
//! (statement, group, S); units are the grain of sharding and checkpoints.

use std::collections::{BTreeMap, HashSet};
use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};
use std::sync::{Arc, OnceLock};
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::report::{Conclusion, VerifierReport};
use super::{statement, verify, Arity};
use crate::error::{Error, Result};
use crate::group::{abelian_groups, make_group, Element, Group};
use crate::structure::{is_quasi_progression, weak_chowla};
use crate::isoperimetry::{for_each_set_with_boundary, SearchOptions, DEFAULT_BUDGET};
use crate::subset::GroupSubset;

const AUT_LIMIT: usize = 20_000;
const CHUNK: usize = 512;

/// Which reports a scan hands to its sink.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Record {
    All,
    #[default]
    Verified,
    Counterexamples,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScanCampaign {
    #[serde(default)]
    pub name: String,
    pub statements: Vec<String>,
    /// Explicit group specs such as "Z25" or "Z5xZ5".
    #[serde(default)]
    pub groups: Vec<String>,
    /// Every abelian group of each listed order.
    #[serde(default)]
    pub orders: Vec<usize>,
    #[serde(default)]
    pub cyclic_only: bool,
    #[serde(default = "one")]
    pub min_size: usize,
    pub max_size: Option<usize>,
    #[serde(default = "one")]
    pub t_min_size: usize,
    pub t_max_size: Option<usize>,
    pub budget: Option<u64>,
    #[serde(default = "one")]
    pub shards: usize,
    #[serde(default)]
    pub shard: usize,
    pub checkpoint: Option<PathBuf>,
    #[serde(default)]
    pub record: Record,
    /// Worker threads; all available cores when absent.
    pub jobs: Option<usize>,
    /// Keep per-instance timings; off by default so output is byte-stable.
    #[serde(default)]
    pub timing: bool,
}

fn one() -> usize {
    1
}

impl ScanCampaign {
    pub fn new(statements: &[&str], groups: &[&str]) -> Self {
        ScanCampaign {
            name: String::new(),
            statements: statements.iter().map(|s| s.to_string()).collect(),
            groups: groups.iter().map(|s| s.to_string()).collect(),
            orders: Vec::new(),
            cyclic_only: false,
            min_size: 1,
            max_size: None,
            t_min_size: 1,
            t_max_size: None,
            budget: None,
            shards: 1,
            shard: 0,
            checkpoint: None,
            record: Record::Verified,
            jobs: None,
            timing: false,
        }
    }

    pub fn from_toml(text: &str) -> Result<Self> {
        let c: ScanCampaign = toml::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        c.validate()?;
        Ok(c)
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::from_toml(&std::fs::read_to_string(path)?)
    }

    pub fn validate(&self) -> Result<()> {
        for id in &self.statements {
            statement(id)?;
        }
        if self.shards == 0 || self.shard >= self.shards {
            return Err(Error::InvalidArgument(format!(
                "shard {} out of range for {} shards",
                self.shard, self.shards
            )));
        }
        Ok(())
    }

    /// The groups of the family, explicit specs first, deduplicated.
    pub fn group_list(&self) -> Result<Vec<Arc<Group>>> {
        let mut out: Vec<Arc<Group>> = Vec::new();
        for spec in &self.groups {
            out.push(Group::parse(spec)?);
        }
        for &n in &self.orders {
            for m in abelian_groups(n) {
                out.push(make_group(&m)?);
            }
        }
        let mut seen = HashSet::new();
        out.retain(|g| seen.insert(g.moduli().to_vec()) && (!self.cyclic_only || g.is_cyclic()));
        Ok(out)
    }

    fn options(&self) -> SearchOptions {
        SearchOptions {
            budget: self.budget.unwrap_or(DEFAULT_BUDGET),
        }
    }
}

/// Per-statement tallies.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counts {
    pub instances: u64,
    pub skipped: u64,
    pub passed: u64,
    pub failed: u64,
    pub out_of_statement: u64,
    pub errors: u64,
    pub budget_exceeded: u64,
}

impl Counts {
    fn add(&mut self, o: &Counts) {
        self.instances += o.instances;
        self.skipped += o.skipped;
        self.passed += o.passed;
        self.failed += o.failed;
        self.out_of_statement += o.out_of_statement;
        self.errors += o.errors;
        self.budget_exceeded += o.budget_exceeded;
    }

    fn tally(&mut self, c: Conclusion) {
        self.instances += 1;
        match c {
            Conclusion::Pass => self.passed += 1,
            Conclusion::Fail => self.failed += 1,
            Conclusion::Skipped => self.skipped += 1,
            Conclusion::OutOfStatement => self.out_of_statement += 1,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanSummary {
    pub name: String,
    pub statements: BTreeMap<String, Counts>,
    pub units: u64,
    pub resumed_units: u64,
    pub counterexamples: u64,
    /// True when some instance hit the search budget, so the scan is incomplete.
    pub partial: bool,
    pub max_elapsed_us: u64,
}

impl ScanSummary {
    pub fn total(&self) -> Counts {
        let mut c = Counts::default();
        for v in self.statements.values() {
            c.add(v);
        }
        c
    }

    /// CSV with one row per statement.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("statement,instances,skipped,passed,failed,out_of_statement,errors,budget_exceeded\n");
        for (id, c) in &self.statements {
            out.push_str(&format!(
                "{id},{},{},{},{},{},{},{}\n",
                c.instances, c.skipped, c.passed, c.failed, c.out_of_statement, c.errors, c.budget_exceeded
            ));
        }
        out
    }
}

/// One completed unit, as stored in the checkpoint file.
#[derive(Debug, Clone, Serialize, Deserialize)]
struct UnitLine {
    statement: String,
    group: String,
    s: String,
    counts: Counts,
    max_elapsed_us: u64,
}

struct Unit {
    statement: &'static str,
    arity: Arity,
    group: Arc<Group>,
    s: GroupSubset,
}

impl Unit {
    fn key(&self) -> (String, String, String) {
        (self.statement.to_string(), self.group.to_string(), self.s.to_literal())
    }
}

struct UnitResult {
    counts: Counts,
    reports: Vec<VerifierReport>,
    errors: Vec<String>,
    max_elapsed_us: u64,
}

/// Sets containing 0 with size in `[lo, hi]`, one per automorphism orbit
/// (the lexicographically least member), in lexicographic order.
pub fn canonical_sets_with_zero(g: &Arc<Group>, lo: usize, hi: usize) -> Vec<GroupSubset> {
    canonical_sets_min_order(g, lo, hi, &|_| 0)
}

/// As [`canonical_sets_with_zero`], keeping only sets whose nonzero elements
/// all have order at least `min_order(|S|)`. Orders are automorphism
/// invariant, so orbit representatives are unaffected.
pub fn canonical_sets_min_order(
    g: &Arc<Group>,
    lo: usize,
    hi: usize,
    min_order: &dyn Fn(usize) -> usize,
) -> Vec<GroupSubset> {
    let n = g.order();
    let auts = g.automorphisms(AUT_LIMIT);
    let mut out = Vec::new();
    let mut img: Vec<u32> = Vec::with_capacity(n);
    fn rec(
        size: usize,
        pool: &[u32],
        cur: &mut Vec<u32>,
        img: &mut Vec<u32>,
        auts: &[Vec<u32>],
        g: &Arc<Group>,
        out: &mut Vec<GroupSubset>,
    ) {
        if cur.len() == size {
            if is_least(cur, img, auts) {
                let idx: Vec<usize> = cur.iter().map(|&x| x as usize).collect();
                out.push(GroupSubset::from_indices(g, &idx).expect("in range"));
            }
            return;
        }
        let need = size - cur.len();
        for (i, &x) in pool.iter().enumerate() {
            if pool.len() - i < need {
                break;
            }
            cur.push(x);
            rec(size, &pool[i + 1..], cur, img, auts, g, out);
            cur.pop();
        }
    }
    for size in lo.max(1)..=hi.min(n) {
        let t = min_order(size);
        let pool: Vec<u32> = g
            .elements()
            .skip(1)
            .filter(|&x| g.element_order(x) >= t)
            .map(|x| x.0 as u32)
            .collect();
        let mut cur = vec![0u32];
        rec(size, &pool, &mut cur, &mut img, &auts, g, &mut out);
    }
    out.sort();
    out
}

/// The order every nonzero element of `S` must reach for statement `id` to
/// apply; sets violating it are skipped by the verifier and not enumerated.
fn required_order(id: &str, size: usize) -> usize {
    match id {
        "cor:chowla" => size.saturating_sub(1),
        "thm:kempermannis" | "prop:fragments" | "cor:kemperman+0" | "cor:cholaatom" => size,
        "thm:kempermannis+1" | "thm:kemperman+1" => size + 1,
        _ => 0,
    }
}

fn is_least(cur: &[u32], img: &mut Vec<u32>, auts: &[Vec<u32>]) -> bool {
    for a in &auts[1..] {
        img.clear();
        img.extend(cur.iter().map(|&x| a[x as usize]));
        img.sort_unstable();
        if img.as_slice() < cur {
            return false;
        }
    }
    true
}

/// Translation representatives `T ∋ 0` of size in `[lo, hi]`.
pub fn canonical_translates(g: &Arc<Group>, lo: usize, hi: usize) -> Vec<GroupSubset> {
    let n = g.order();
    let mut out = Vec::new();
    let hi = hi.min(n);
    let mut cur = vec![0usize];
    fn rec(n: usize, lo: usize, hi: usize, cur: &mut Vec<usize>, g: &Arc<Group>, out: &mut Vec<GroupSubset>) {
        if cur.len() >= lo {
            let t = GroupSubset::from_indices(g, cur).expect("in range");
            if t.canonical_translate() == t {
                out.push(t);
            }
        }
        if cur.len() == hi {
            return;
        }
        for x in cur.last().unwrap() + 1..n {
            cur.push(x);
            rec(n, lo, hi, cur, g, out);
            cur.pop();
        }
    }
    rec(n, lo.max(1), hi, &mut cur, g, &mut out);
    out
}

/// Necessary conditions of a pair statement on `|S+T| - |T|`, `|S+T|` and
/// `|T|`, given `S`; pairs outside them are vacuous and are not enumerated.
struct PairBounds {
    excess: (usize, usize),
    max_sum: usize,
    t_max: usize,
}

fn pair_bounds(id: &str, s: &GroupSubset) -> Option<PairBounds> {
    let (k, n) = (s.len(), s.group().order());
    let p = s.group().smallest_prime_divisor().unwrap_or(1);
    let b = |lo: usize, hi: usize, max_sum: usize, t_max: usize| PairBounds {
        excess: (lo, hi),
        max_sum,
        t_max,
    };
    match id {
        "thm:kemperman" => Some(b(k.saturating_sub(1), k.saturating_sub(1), p.saturating_sub(2), n)),
        "thm:hr" => Some(b(k, k, n.saturating_sub(4), n)),
        "thm:kemperman+1" => Some(b(k, k, n.saturating_sub(4), n)),
        "lem:transfer" => Some(b(0, k, n.saturating_sub(4), n.saturating_sub(4 + k))),
        _ => None,
    }
}

/// Hypotheses of a pair statement that involve `S` alone; when they fail
/// every `T` is skipped, so the unit reduces to a single instance.
fn s_admissible(id: &str, s: &GroupSubset) -> bool {
    let g = s.group();
    let base = s.contains(Element(0)) && s.generates();
    match id {
        "lem:transfer" => base && g.is_cyclic() && s.len() >= 3 && is_quasi_progression(s),
        "thm:kemperman+1" => {
            base && g.order() % 2 != 0 && g.order() % 3 != 0 && s.len() >= 4 && weak_chowla(s, s.len() + 1).unwrap_or(false)
        }
        _ => true,
    }
}

fn run_unit<'a>(
    u: &Unit,
    c: &ScanCampaign,
    opts: &SearchOptions,
    t_pool: &(dyn Fn() -> &'a [GroupSubset] + Sync),
) -> UnitResult {
    let mut r = UnitResult {
        counts: Counts::default(),
        reports: Vec::new(),
        errors: Vec::new(),
        max_elapsed_us: 0,
    };
    let run = |t: Option<&GroupSubset>, r: &mut UnitResult| {
        let start = Instant::now();
        let out = verify(u.statement, &u.s, t, opts);
        let us = start.elapsed().as_micros() as u64;
        if c.timing {
            r.max_elapsed_us = r.max_elapsed_us.max(us);
        }
        match out {
            Ok(mut rep) => {
                rep.elapsed_us = c.timing.then_some(us);
                r.counts.tally(rep.conclusion);
                let keep = match c.record {
                    Record::All => true,
                    Record::Verified => rep.hypotheses_met(),
                    Record::Counterexamples => rep.is_counterexample(),
                };
                if keep {
                    r.reports.push(rep);
                }
            }
            Err(e) => {
                r.counts.instances += 1;
                r.counts.errors += 1;
                if matches!(e, Error::BudgetExceeded { .. }) {
                    r.counts.budget_exceeded += 1;
                }
                r.errors.push(format!(
                    "{} {} S={} T={}: {e}",
                    u.statement,
                    u.group,
                    u.s.to_literal(),
                    t.map(|t| t.to_literal()).unwrap_or_default()
                ));
            }
        }
    };
    match u.arity {
        Arity::S => run(None, &mut r),
        Arity::Integers => {}
        Arity::ST => {
            if !s_admissible(u.statement, &u.s) {
                let zero = GroupSubset::singleton(&u.group, Element(0));
                run(Some(&zero), &mut r);
                return r;
            }
            let t_hi = c.t_max_size.unwrap_or(usize::MAX);
            let bounds = pair_bounds(u.statement, &u.s).filter(|_| u.s.generates());
            match bounds {
                Some(pb) => {
                    let mut ts = Vec::new();
                    let t_hi = t_hi.min(pb.t_max);
                    for e in pb.excess.0..=pb.excess.1 {
                        let res = for_each_set_with_boundary(&u.s, None, e, c.t_min_size, pb.max_sum, opts, &mut |t| {
                            if t.len() <= t_hi && t.canonical_translate() == t {
                                ts.push(t);
                            }
                        });
                        if let Err(e) = res {
                            r.counts.errors += 1;
                            if matches!(e, Error::BudgetExceeded { .. }) {
                                r.counts.budget_exceeded += 1;
                            }
                            r.errors.push(format!("{} {} S={}: {e}", u.statement, u.group, u.s.to_literal()));
                        }
                    }
                    ts.sort();
                    for t in &ts {
                        run(Some(t), &mut r);
                    }
                }
                None => {
                    for t in t_pool() {
                        run(Some(t), &mut r);
                    }
                }
            }
        }
    }
    r
}

fn read_checkpoint(path: &Path) -> Result<Vec<UnitLine>> {
    if !path.exists() {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    for line in BufReader::new(File::open(path)?).lines() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        // a torn final line from an interrupted run is dropped
        if let Ok(u) = serde_json::from_str::<UnitLine>(&line) {
            out.push(u);
        }
    }
    Ok(out)
}

/// Runs the campaign, handing kept reports to `sink` in deterministic order.
/// Instance errors (including exhausted budgets) are counted and passed to
/// `on_error`; they make the summary `partial` when budget-related.
pub fn run_scan_with(
    c: &ScanCampaign,
    sink: &mut dyn FnMut(&VerifierReport),
    on_error: &mut dyn FnMut(&str),
) -> Result<ScanSummary> {
    c.validate()?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(c.jobs.unwrap_or(0))
        .build()
        .map_err(|e| Error::InvalidArgument(e.to_string()))?;
    scan_in_pool(c, &pool, sink, on_error)
}

fn scan_in_pool(
    c: &ScanCampaign,
    pool: &rayon::ThreadPool,
    sink: &mut dyn FnMut(&VerifierReport),
    on_error: &mut dyn FnMut(&str),
) -> Result<ScanSummary> {
    let opts = c.options();
    let groups = c.group_list()?;
    let mut summary = ScanSummary {
        name: c.name.clone(),
        ..Default::default()
    };
    for id in &c.statements {
        summary.statements.entry(id.clone()).or_default();
    }

    let mut done: HashSet<(String, String, String)> = HashSet::new();
    if let Some(p) = &c.checkpoint {
        for u in read_checkpoint(p)? {
            if done.insert((u.statement.clone(), u.group.clone(), u.s.clone())) {
                summary.statements.entry(u.statement.clone()).or_default().add(&u.counts);
                summary.max_elapsed_us = summary.max_elapsed_us.max(u.max_elapsed_us);
                summary.resumed_units += 1;
                summary.counterexamples += u.counts.failed;
                summary.partial |= u.counts.budget_exceeded > 0;
            }
        }
    }
    let mut ckpt = match &c.checkpoint {
        Some(p) => Some(OpenOptions::new().create(true).append(true).open(p)?),
        None => None,
    };

    let mut index = 0usize;
    for g in &groups {
        for id in &c.statements {
            let info = statement(id)?;
            if info.arity == Arity::Integers {
                continue;
            }
            let hi = c.max_size.unwrap_or(g.order());
            // built on first use; statements with pair bounds never need it
            let t_pool: OnceLock<Vec<GroupSubset>> = OnceLock::new();
            let t_pool = || {
                t_pool
                    .get_or_init(|| canonical_translates(g, c.t_min_size, c.t_max_size.unwrap_or(g.order())))
                    .as_slice()
            };
            let units: Vec<Unit> = canonical_sets_min_order(g, c.min_size, hi, &|n| required_order(info.id, n))
                .into_iter()
                .map(|s| Unit {
                    statement: info.id,
                    arity: info.arity,
                    group: Arc::clone(g),
                    s,
                })
                .filter(|_| {
                    let mine = index % c.shards == c.shard;
                    index += 1;
                    mine
                })
                .filter(|u| !done.contains(&u.key()))
                .collect();
            for chunk in units.chunks(CHUNK) {
                let results: Vec<UnitResult> = pool.install(|| chunk.par_iter().map(|u| run_unit(u, c, &opts, &t_pool)).collect());
                for (u, res) in chunk.iter().zip(results) {
                    for rep in &res.reports {
                        sink(rep);
                    }
                    for e in &res.errors {
                        on_error(e);
                    }
                    summary.statements.entry(id.clone()).or_default().add(&res.counts);
                    summary.units += 1;
                    summary.counterexamples += res.counts.failed;
                    summary.partial |= res.counts.budget_exceeded > 0;
                    summary.max_elapsed_us = summary.max_elapsed_us.max(res.max_elapsed_us);
                    if let Some(f) = ckpt.as_mut() {
                        let line = UnitLine {
                            statement: id.clone(),
                            group: g.to_string(),
                            s: u.s.to_literal(),
                            counts: res.counts.clone(),
                            max_elapsed_us: res.max_elapsed_us,
                        };
                        writeln!(f, "{}", serde_json::to_string(&line).expect("serializable"))?;
                    }
                }
                if let Some(f) = ckpt.as_mut() {
                    f.flush()?;
                }
            }
        }
    }
    Ok(summary)
}

/// Runs the campaign and collects the kept reports.
pub fn run_scan(c: &ScanCampaign) -> Result<(Vec<VerifierReport>, ScanSummary)> {
    let mut reports = Vec::new();
    let summary = run_scan_with(c, &mut |r| reports.push(r.clone()), &mut |_| {})?;
    Ok((reports, summary))
}

/// Reports sorted into the canonical order used to compare scans.
pub fn canonical_order(reports: &mut [VerifierReport]) {
    reports.sort_by(|a, b| {
        (&a.statement, &a.instance.group, &a.instance.s, &a.instance.t).cmp(&(
            &b.statement,
            &b.instance.group,
            &b.instance.s,
            &b.instance.t,
        ))
    });
}
