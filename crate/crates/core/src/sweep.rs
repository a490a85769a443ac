//! Parameter sweeps over `(n, k, s)` and the JSON / CSV reports they produce.

use std::fmt;
use std::io::Write;
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::combinatorics::{binom, Params};
use crate::error::{Error, Result};
use crate::extremal::{check_lemma_coeff_part1, check_lemma_coeff_part2, size_c, LemmaReport};
use crate::matching::max_weight_independent_set;
use crate::oracle::{max_sum_unreduced, mis_g, verify_theorem};
use crate::orbit::{build_chain_decomposition, build_w, check_biregularity, check_edge_rule, validate_decomposition};
use crate::verdict::Verdict;

/// `C(n, k)` bound under which the deep audit runs the unreduced oracle.
pub const DEEP_AUDIT_LIMIT: u128 = 35;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Check {
    Theorem,
    Lemma1,
    Lemma2,
    Chains,
    Edges,
    Biregular,
    Hm,
}

impl Check {
    pub const ALL: [Check; 7] =
        [Check::Theorem, Check::Lemma1, Check::Lemma2, Check::Chains, Check::Edges, Check::Biregular, Check::Hm];

    pub fn name(&self) -> &'static str {
        match self {
            Check::Theorem => "theorem",
            Check::Lemma1 => "lemma1",
            Check::Lemma2 => "lemma2",
            Check::Chains => "chains",
            Check::Edges => "edges",
            Check::Biregular => "biregular",
            Check::Hm => "hm",
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Check {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Check::ALL
            .into_iter()
            .find(|c| c.name() == s.trim())
            .ok_or_else(|| Error::Config(format!("unknown check {s:?}")))
    }
}

pub fn parse_checks(text: &str) -> Result<Vec<Check>> {
    let mut checks = text.split(',').map(Check::from_str).collect::<Result<Vec<_>>>()?;
    checks.sort();
    checks.dedup();
    Ok(checks)
}

/// Parses `"3"`, `"2..5"` (inclusive) or a comma list of either.
pub fn parse_range(text: &str) -> Result<Vec<i64>> {
    let mut out = Vec::new();
    for part in text.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let bad = |e: std::num::ParseIntError| Error::Config(format!("bad range {part:?}: {e}"));
        match part.split_once("..") {
            Some((lo, hi)) => {
                let hi = hi.strip_prefix('=').unwrap_or(hi);
                let (lo, hi) = (lo.trim().parse::<i64>().map_err(bad)?, hi.trim().parse::<i64>().map_err(bad)?);
                out.extend(lo..=hi);
            }
            None => out.push(part.parse::<i64>().map_err(bad)?),
        }
    }
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

fn to_u32(values: Vec<i64>, what: &str) -> Result<Vec<u32>> {
    values
        .into_iter()
        .map(|v| u32::try_from(v).map_err(|_| Error::Config(format!("{what} value {v} must be a nonnegative integer"))))
        .collect()
}

pub fn parse_u32_range(text: &str, what: &str) -> Result<Vec<u32>> {
    to_u32(parse_range(text)?, what)
}

/// Third axis of the grid: `n` directly or the slack `l = n - (2k - s + 1)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Grid {
    N(Vec<u32>),
    L(Vec<i64>),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SweepSpec {
    pub k: Vec<u32>,
    /// `None` means every `s` in `1..k`.
    pub s: Option<Vec<u32>>,
    pub grid: Grid,
    pub checks: Vec<Check>,
    pub cap: u128,
    pub jobs: usize,
    pub deep_audit: bool,
}

impl SweepSpec {
    pub fn new(k: Vec<u32>, s: Option<Vec<u32>>, grid: Grid, checks: Vec<Check>) -> Self {
        SweepSpec { k, s, grid, checks, cap: crate::oracle::DEFAULT_ORACLE_CAP, jobs: 0, deep_audit: false }
    }

    pub fn validate(&self) -> Result<()> {
        if self.k.is_empty() {
            return Err(Error::Config("empty k range".into()));
        }
        if self.s.as_ref().is_some_and(|s| s.is_empty()) {
            return Err(Error::Config("empty s range".into()));
        }
        let grid_empty = match &self.grid {
            Grid::N(v) => v.is_empty(),
            Grid::L(v) => v.is_empty(),
        };
        if grid_empty {
            return Err(Error::Config("empty n / l range".into()));
        }
        if self.checks.is_empty() {
            return Err(Error::Config("no checks selected".into()));
        }
        if self.cap == 0 {
            return Err(Error::Config("cap must be positive".into()));
        }
        Ok(())
    }

    /// Valid parameter triples of the grid, sorted.
    pub fn instances(&self) -> Vec<Params> {
        let mut out = Vec::new();
        for &k in &self.k {
            let ss: Vec<u32> = match &self.s {
                Some(s) => s.clone(),
                None => (1..k).collect(),
            };
            for &s in &ss {
                let ns: Vec<i64> = match &self.grid {
                    Grid::N(ns) => ns.iter().map(|&n| n as i64).collect(),
                    Grid::L(ls) => ls.iter().map(|&l| 2 * k as i64 - s as i64 + 1 + l).collect(),
                };
                for n in ns {
                    if let Ok(n) = u32::try_from(n) {
                        if let Ok(p) = Params::new(n, k, s) {
                            out.push(p);
                        }
                    }
                }
            }
        }
        out.sort_by_key(|p| (p.n(), p.k(), p.s()));
        out.dedup();
        out
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Skipped => "skipped",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Detail {
    Verdict(Verdict),
    Lemma(LemmaReport),
    Note { message: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Record {
    pub n: u32,
    pub k: u32,
    pub s: u32,
    pub l: i64,
    pub check: String,
    pub formula_value: Option<String>,
    pub oracle_value: Option<String>,
    pub status: Status,
    pub millis: u128,
    pub detail: Detail,
}

impl Record {
    fn base(p: &Params, check: impl Into<String>) -> Self {
        Record {
            n: p.n(),
            k: p.k(),
            s: p.s(),
            l: p.l(),
            check: check.into(),
            formula_value: None,
            oracle_value: None,
            status: Status::Pass,
            millis: 0,
            detail: Detail::Note { message: String::new() },
        }
    }

    fn skipped(p: &Params, check: impl Into<String>, why: impl Into<String>) -> Self {
        let mut r = Record::base(p, check);
        r.status = Status::Skipped;
        r.detail = Detail::Note { message: format!("skipped: {}", why.into()) };
        r
    }

    fn failed(p: &Params, check: impl Into<String>, why: impl Into<String>) -> Self {
        let mut r = Record::base(p, check);
        r.status = Status::Fail;
        r.detail = Detail::Note { message: why.into() };
        r
    }

    pub fn from_verdict(v: Verdict, check: impl Into<String>) -> Self {
        let mut r = Record::base(&v.params, check);
        r.formula_value = v.formula_value.map(|x| x.to_string());
        r.oracle_value = v.oracle_value.map(|x| x.to_string());
        r.status = if v.pass { Status::Pass } else { Status::Fail };
        r.millis = v.millis;
        r.detail = Detail::Verdict(v);
        r
    }

    fn from_lemma(rep: LemmaReport, check: &str, millis: u128) -> Self {
        let mut r = Record::base(&rep.params, check);
        r.formula_value = Some(rep.instances.len().to_string());
        r.oracle_value = Some(rep.instances.iter().filter(|x| x.holds).count().to_string());
        r.status = if rep.pass { Status::Pass } else { Status::Fail };
        r.millis = millis;
        r.detail = Detail::Lemma(rep);
        r
    }

    /// The same record with every timing zeroed, for reproducibility checks.
    pub fn without_timing(&self) -> Record {
        let mut r = self.clone();
        r.millis = 0;
        if let Detail::Verdict(v) = &mut r.detail {
            v.millis = 0;
        }
        r
    }
}

fn error_record(p: &Params, check: &str, e: Error) -> Record {
    match e {
        Error::EnumerationTooLarge { .. } => Record::skipped(p, check, format!("cap ({e})")),
        Error::ParamsOutOfRange(msg) => Record::skipped(p, check, msg),
        other => Record::failed(p, check, other.to_string()),
    }
}

fn run_theorem(p: &Params, spec: &SweepSpec) -> Result<Record> {
    let mut v = verify_theorem(p, spec.cap)?;
    if spec.deep_audit && binom(p.n() as u64, p.k() as u64)? <= DEEP_AUDIT_LIMIT {
        let full = max_sum_unreduced(p, spec.cap)?;
        if Some(full.value) != v.oracle_value {
            v.fail(format!("unreduced oracle gives {}", full.value));
        } else {
            v.note("deep audit: unreduced oracle agrees");
        }
    }
    Ok(Record::from_verdict(v, "theorem"))
}

fn run_hm(p: &Params) -> Result<Record> {
    if p.s() != 1 {
        return Err(Error::ParamsOutOfRange("identity applies to s = 1 only".into()));
    }
    if !p.in_theorem_range() {
        return Err(Error::ParamsOutOfRange(format!("{p} needs n >= 2k")));
    }
    let started = Instant::now();
    let (n, k) = (p.n() as u64, p.k() as u64);
    let bound = binom(n, k)? - binom(n - k, k)? + 1;
    let mut v = Verdict::new(p, "hm");
    v.formula_value = Some(bound);
    v.oracle_value = Some(size_c(p)? + 1);
    if v.formula_value != v.oracle_value {
        v.fail("|C| + 1 differs from C(n, k) - C(n - k, k) + 1");
    }
    v.millis = started.elapsed().as_millis();
    Ok(Record::from_verdict(v, "hm"))
}

fn run_lemma1(p: &Params, spec: &SweepSpec) -> Result<Record> {
    let started = Instant::now();
    let w = build_w(p)?;
    let target = size_c(p)? - 1;
    let orbit_level = max_weight_independent_set(&w.to_weighted_bipartite()?)?.weight;
    let exact = mis_g(p, spec.cap)?;
    let mut v = Verdict::new(p, "lemma1");
    v.formula_value = Some(target);
    v.oracle_value = Some(exact);
    if exact != orbit_level {
        v.fail(format!("MIS(G) = {exact} but MWIS(W) = {orbit_level}"));
    }
    if exact != target {
        v.fail(format!("MIS(G) = {exact} but |C| - 1 = {target}"));
    }
    v.millis = started.elapsed().as_millis();
    Ok(Record::from_verdict(v, "lemma1"))
}

fn run_chains(p: &Params) -> Result<Record> {
    let started = Instant::now();
    let w = build_w(p)?;
    let mut v = match build_chain_decomposition(p) {
        Ok(dec) => validate_decomposition(&dec, &w),
        Err(e @ Error::DecompositionViolation(_)) => {
            let mut v = Verdict::new(p, "chains");
            v.fail(e.to_string());
            v
        }
        Err(e) => return Err(e),
    };
    let orbit_level = max_weight_independent_set(&w.to_weighted_bipartite()?)?.weight;
    let target = size_c(p)? - 1;
    if orbit_level != target {
        v.fail(format!("MWIS(W) = {orbit_level} but |C| - 1 = {target}"));
    }
    v.millis = started.elapsed().as_millis();
    Ok(Record::from_verdict(v, "chains"))
}

fn run_biregular(p: &Params, spec: &SweepSpec) -> Result<Record> {
    let started = Instant::now();
    let w = build_w(p)?;
    let count = binom(p.n() as u64, p.k() as u64)?;
    if count > spec.cap {
        return Err(Error::EnumerationTooLarge { count, cap: spec.cap });
    }
    let mut agg = Verdict::new(p, "biregular");
    let mut checked = 0u128;
    for (i, t) in w.edges() {
        let v = check_biregularity(p, i, t, spec.cap)?;
        checked += 1;
        if !v.pass {
            for f in v.findings {
                agg.fail(format!("({i}, {t}): {f}"));
            }
        }
    }
    agg.formula_value = Some(checked);
    agg.oracle_value = Some(checked);
    agg.millis = started.elapsed().as_millis();
    Ok(Record::from_verdict(agg, "biregular"))
}

fn run_check(p: &Params, check: Check, spec: &SweepSpec) -> Vec<Record> {
    let name = check.name();
    let one = |r: Result<Record>| vec![r.unwrap_or_else(|e| error_record(p, name, e))];
    match check {
        Check::Theorem => one(run_theorem(p, spec)),
        Check::Hm => one(run_hm(p)),
        Check::Lemma1 => one(run_lemma1(p, spec)),
        Check::Chains => one(run_chains(p)),
        Check::Edges => one(check_edge_rule(p, spec.cap).map(|v| Record::from_verdict(v, "edges"))),
        Check::Biregular => one(run_biregular(p, spec)),
        Check::Lemma2 if p.s() < 2 => ["lemma2.part1", "lemma2.part2"]
            .into_iter()
            .map(|c| Record::skipped(p, c, "lemma checks need s >= 2"))
            .collect(),
        Check::Lemma2 => {
            let started = Instant::now();
            let part1 = check_lemma_coeff_part1(p)
                .map(|r| Record::from_lemma(r, "lemma2.part1", started.elapsed().as_millis()))
                .unwrap_or_else(|e| error_record(p, "lemma2.part1", e));
            let started = Instant::now();
            let part2 = check_lemma_coeff_part2(p)
                .map(|r| Record::from_lemma(r, "lemma2.part2", started.elapsed().as_millis()))
                .unwrap_or_else(|e| error_record(p, "lemma2.part2", e));
            vec![part1, part2]
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub total: usize,
    pub pass: usize,
    pub fail: usize,
    pub skipped: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReportBundle {
    pub tool_version: String,
    pub spec: Option<SweepSpec>,
    pub records: Vec<Record>,
    pub summary: Summary,
    pub total_millis: u128,
}

impl ReportBundle {
    pub fn from_records(spec: Option<SweepSpec>, records: Vec<Record>, total_millis: u128) -> Self {
        let count = |st: Status| records.iter().filter(|r| r.status == st).count();
        let summary = Summary {
            total: records.len(),
            pass: count(Status::Pass),
            fail: count(Status::Fail),
            skipped: count(Status::Skipped),
        };
        ReportBundle { tool_version: env!("CARGO_PKG_VERSION").to_string(), spec, records, summary, total_millis }
    }

    pub fn all_pass(&self) -> bool {
        self.summary.fail == 0
    }
}

/// Runs every selected check on every grid point. Records are sorted by
/// `(n, k, s, check)` whatever the number of workers.
pub fn run_sweep(spec: &SweepSpec) -> Result<ReportBundle> {
    spec.validate()?;
    let started = Instant::now();
    let tasks: Vec<(Params, Check)> = spec
        .instances()
        .into_iter()
        .flat_map(|p| spec.checks.iter().map(move |&c| (p, c)))
        .collect();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(spec.jobs)
        .build()
        .map_err(|e| Error::Config(format!("thread pool: {e}")))?;
    let mut records: Vec<Record> =
        pool.install(|| tasks.par_iter().flat_map_iter(|(p, c)| run_check(p, *c, spec)).collect());
    records.sort_by(|a, b| (a.n, a.k, a.s, &a.check).cmp(&(b.n, b.k, b.s, &b.check)));
    Ok(ReportBundle::from_records(Some(spec.clone()), records, started.elapsed().as_millis()))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReportFormat {
    Json,
    Csv,
}

impl FromStr for ReportFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "json" => Ok(ReportFormat::Json),
            "csv" => Ok(ReportFormat::Csv),
            other => Err(Error::Config(format!("unknown report format {other:?}"))),
        }
    }
}

pub const CSV_HEADER: &str = "n,k,s,l,check,formula_value,oracle_value,verdict,millis";

pub fn emit_report<W: Write>(bundle: &ReportBundle, format: ReportFormat, mut out: W) -> Result<()> {
    match format {
        ReportFormat::Json => {
            serde_json::to_writer_pretty(&mut out, bundle).map_err(|e| Error::Io(e.to_string()))?;
            writeln!(out)?;
        }
        ReportFormat::Csv => {
            writeln!(out, "{CSV_HEADER}")?;
            for r in &bundle.records {
                writeln!(
                    out,
                    "{},{},{},{},{},{},{},{},{}",
                    r.n,
                    r.k,
                    r.s,
                    r.l,
                    r.check,
                    r.formula_value.as_deref().unwrap_or(""),
                    r.oracle_value.as_deref().unwrap_or(""),
                    r.status,
                    r.millis
                )?;
            }
        }
    }
    out.flush()?;
    Ok(())
}
