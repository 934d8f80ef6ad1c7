//! Named verification suites over generated corpora.
//!
//! Every suite returns a [`SuiteReport`]. Assertive suites evaluate their
//! predicates exactly and fail on any violation; report-only suites collect
//! statistics and never fail. Work is split per instance across threads and
//! merged back in corpus order, so reports are byte-identical between runs.

pub mod corpus;
pub mod families;
mod inequalities;
mod suites;

use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;
use rayon::prelude::*;
use serde::Serialize;

use crate::arith;
use crate::error::{Error, Result};
use crate::serde_exact::{format_rational, parse_rational};

pub use families::{family_point, family_scan, Family, FamilyPoint};

pub const SUITES: &[&str] = &[
    "one_third",
    "q_monotone",
    "sandwich",
    "nhlf_agreement",
    "warmup",
    "two_chain",
    "n2_family",
    "thick_scaling",
    "tvk_scaling",
    "smooth_ratio",
    "conjecture_ratio",
    "schur_conjecture",
    "inequality_suite",
    "excited_zeta",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Verdict {
    #[serde(rename = "PASS")]
    Pass,
    #[serde(rename = "FAIL")]
    Fail,
    #[serde(rename = "REPORT_ONLY")]
    ReportOnly,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
            Verdict::ReportOnly => "REPORT_ONLY",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub check: String,
    pub shape: String,
    pub detail: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ExtremumKind {
    Max,
    Min,
    Count,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Extremum {
    pub name: String,
    pub kind: ExtremumKind,
    /// Exact value when the statistic is rational.
    pub value: Option<String>,
    pub value_approx: f64,
    pub at: String,
}

/// Number of instances and violations of one named predicate in a suite.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckSummary {
    pub check: String,
    pub assertive: bool,
    pub instances: u64,
    pub violations: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub header: String,
    pub instances: u64,
    pub checks: Vec<CheckSummary>,
    pub violations: Vec<Violation>,
    pub extrema: Vec<Extremum>,
    pub verdict: Verdict,
}

impl SuiteReport {
    pub fn check(&self, name: &str) -> Option<&CheckSummary> {
        self.checks.iter().find(|c| c.check == name)
    }

    pub fn extremum(&self, name: &str) -> Option<&Extremum> {
        self.extrema.iter().find(|e| e.name == name)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_csv(&self) -> String {
        let mut w = csv::WriterBuilder::new().flexible(true).from_writer(Vec::new());
        let _ = w.write_record(["suite", "verdict", "instances", "violations"]);
        let _ = w.write_record([
            self.suite.clone(),
            self.verdict.to_string(),
            self.instances.to_string(),
            self.violations.len().to_string(),
        ]);
        let _ = w.write_record(["record", "name", "value", "value_approx", "at"]);
        for c in &self.checks {
            let _ = w.write_record([
                "check".to_string(),
                c.check.clone(),
                c.violations.to_string(),
                c.instances.to_string(),
                if c.assertive { "assertive" } else { "report_only" }.to_string(),
            ]);
        }
        for e in &self.extrema {
            let _ = w.write_record([
                format!("{:?}", e.kind).to_lowercase(),
                e.name.clone(),
                e.value.clone().unwrap_or_default(),
                e.value_approx.to_string(),
                e.at.clone(),
            ]);
        }
        for v in &self.violations {
            let _ = w.write_record(["violation".to_string(), v.check.clone(), v.detail.clone(), String::new(), v.shape.clone()]);
        }
        String::from_utf8(w.into_inner().expect("in-memory writer")).expect("utf8")
    }
}

/// Corpus bounds and knobs shared by the suites. Unset fields take
/// suite-specific defaults.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SuiteParams {
    pub n_max: Option<usize>,
    pub n_min: Option<usize>,
    pub d_max: Option<usize>,
    pub eps: Option<BigRational>,
    pub seed: u64,
    pub grid: Option<usize>,
    pub m_min: Option<usize>,
    pub m_max: Option<usize>,
    pub alpha: Option<Vec<BigRational>>,
}

impl SuiteParams {
    pub fn with_n_max(n_max: usize) -> Self {
        SuiteParams { n_max: Some(n_max), ..Default::default() }
    }

    /// Reads `key=value` settings; keys may use `-` or `_`.
    pub fn from_map(map: &BTreeMap<String, String>) -> Result<Self> {
        let mut p = SuiteParams::default();
        for (k, v) in map {
            let bad = || Error::BadParams(format!("{k}={v}"));
            let num = || v.parse::<usize>().map_err(|_| bad());
            match k.replace('-', "_").as_str() {
                "n_max" => p.n_max = Some(num()?),
                "n_min" => p.n_min = Some(num()?),
                "d_max" => p.d_max = Some(num()?),
                "grid" => p.grid = Some(num()?),
                "m_min" => p.m_min = Some(num()?),
                "m_max" => p.m_max = Some(num()?),
                "seed" => p.seed = v.parse().map_err(|_| bad())?,
                "eps" => p.eps = Some(parse_number(v).ok_or_else(bad)?),
                "alpha" => {
                    p.alpha = Some(v.split(',').map(|t| parse_number(t.trim())).collect::<Option<Vec<_>>>().ok_or_else(bad)?)
                }
                _ => return Err(Error::BadParams(format!("unknown parameter '{k}'"))),
            }
        }
        if let Some(eps) = &p.eps {
            if *eps <= arith::int(0) || *eps > arith::int(1) {
                return Err(Error::BadParams("eps must lie in (0, 1]".into()));
            }
        }
        Ok(p)
    }

    fn n_max_or(&self, default: usize) -> usize {
        self.n_max.unwrap_or(default)
    }

    fn d_max_or(&self, default: usize) -> usize {
        self.d_max.unwrap_or(default)
    }

    fn eps_or(&self, num: i64, den: i64) -> BigRational {
        self.eps.clone().unwrap_or_else(|| arith::ratio(num, den))
    }
}

/// Parses `p/q`, an integer, or a finite decimal such as `0.25`.
pub fn parse_number(s: &str) -> Option<BigRational> {
    if let Some(r) = parse_rational(s) {
        return Some(r);
    }
    let (int_part, frac_part) = s.split_once('.')?;
    if frac_part.is_empty() || !frac_part.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    let digits: num_bigint::BigInt = format!("{int_part}{frac_part}").parse().ok()?;
    Some(BigRational::new(digits, num_bigint::BigInt::from(10u32).pow(frac_part.len() as u32)))
}

pub fn run_suite(name: &str, params: &SuiteParams) -> Result<SuiteReport> {
    match name {
        "one_third" => suites::one_third(params),
        "q_monotone" => suites::q_monotone(params),
        "sandwich" => suites::sandwich(params),
        "nhlf_agreement" => suites::nhlf_agreement(params),
        "warmup" => suites::warmup(params),
        "two_chain" => families::two_chain(params),
        "n2_family" => families::n2_family(params),
        "thick_scaling" => families::thick_scaling(params),
        "tvk_scaling" => families::tvk_scaling(params),
        "smooth_ratio" => suites::smooth_ratio(params),
        "conjecture_ratio" => suites::conjecture_ratio(params),
        "schur_conjecture" => suites::schur_conjecture(params),
        "inequality_suite" => inequalities::inequality_suite(params),
        "excited_zeta" => suites::excited_zeta(params),
        other => Err(Error::UnknownSuite(other.to_string())),
    }
}

/// A statistic value; exact when possible.
#[derive(Debug, Clone)]
pub(crate) enum Value {
    Exact(BigRational),
    Approx(f64),
}

impl Value {
    fn approx(&self) -> f64 {
        match self {
            Value::Exact(r) => arith::to_f64(r),
            Value::Approx(x) => *x,
        }
    }

    fn exceeds(&self, other: &Value) -> bool {
        match (self, other) {
            (Value::Exact(a), Value::Exact(b)) => a > b,
            _ => self.approx() > other.approx(),
        }
    }
}

/// Observations made while checking one instance.
#[derive(Debug, Default)]
pub(crate) struct Outcome {
    checks: Vec<(&'static str, bool, u64)>,
    violations: Vec<Violation>,
    stats: Vec<(String, ExtremumKind, Value, String)>,
}

impl Outcome {
    /// Records one evaluation of the predicate `check`.
    pub(crate) fn assert(&mut self, check: &'static str, ok: bool, shape: impl fmt::Display, detail: impl FnOnce() -> String) {
        self.count(check, true);
        if !ok {
            self.violations.push(Violation { check: check.to_string(), shape: shape.to_string(), detail: detail() });
        }
    }

    /// Records one instance of a report-only statistic.
    pub(crate) fn observe(&mut self, check: &'static str) {
        self.count(check, false);
    }

    fn count(&mut self, check: &'static str, assertive: bool) {
        match self.checks.iter_mut().find(|c| c.0 == check) {
            Some(c) => c.2 += 1,
            None => self.checks.push((check, assertive, 1)),
        }
    }

    pub(crate) fn max(&mut self, name: impl Into<String>, v: Value, at: impl fmt::Display) {
        self.stats.push((name.into(), ExtremumKind::Max, v, at.to_string()));
    }

    pub(crate) fn min(&mut self, name: impl Into<String>, v: Value, at: impl fmt::Display) {
        self.stats.push((name.into(), ExtremumKind::Min, v, at.to_string()));
    }

    pub(crate) fn tally(&mut self, name: impl Into<String>, v: u64) {
        self.stats.push((name.into(), ExtremumKind::Count, Value::Exact(arith::int(v)), String::new()));
    }
}

pub(crate) struct Builder {
    suite: &'static str,
    header: String,
    assertive: bool,
    instances: u64,
    checks: Vec<CheckSummary>,
    violations: Vec<Violation>,
    extrema: Vec<(Extremum, Value)>,
}

impl Builder {
    pub(crate) fn new(suite: &'static str, assertive: bool, header: impl Into<String>) -> Self {
        Builder {
            suite,
            header: header.into(),
            assertive,
            instances: 0,
            checks: Vec::new(),
            violations: Vec::new(),
            extrema: Vec::new(),
        }
    }

    pub(crate) fn merge(&mut self, o: Outcome) {
        self.instances += 1;
        for (name, assertive, count) in o.checks {
            let bad = o.violations.iter().filter(|v| v.check == name).count() as u64;
            match self.checks.iter_mut().find(|c| c.check == name) {
                Some(c) => {
                    c.instances += count;
                    c.violations += bad;
                }
                None => self.checks.push(CheckSummary {
                    check: name.to_string(),
                    assertive: assertive && self.assertive,
                    instances: count,
                    violations: bad,
                }),
            }
        }
        self.violations.extend(o.violations);
        for (name, kind, v, at) in o.stats {
            let pos = self.extrema.iter().position(|(e, _)| e.name == name);
            match (pos, kind) {
                (None, _) => {
                    let e = Extremum { name, kind, value: None, value_approx: 0.0, at };
                    self.extrema.push((e, v));
                }
                (Some(i), ExtremumKind::Count) => {
                    let (_, old) = &mut self.extrema[i];
                    if let (Value::Exact(a), Value::Exact(b)) = (old, &v) {
                        *a += b;
                    }
                }
                (Some(i), k) => {
                    let (e, old) = &mut self.extrema[i];
                    let better = if k == ExtremumKind::Max { v.exceeds(old) } else { old.exceeds(&v) };
                    if better {
                        *old = v;
                        e.at = at;
                    }
                }
            }
        }
    }

    pub(crate) fn merge_all(&mut self, outcomes: Vec<Outcome>) {
        for o in outcomes {
            self.merge(o);
        }
    }

    pub(crate) fn finish(self) -> SuiteReport {
        let verdict = if !self.assertive {
            Verdict::ReportOnly
        } else if self.violations.is_empty() {
            Verdict::Pass
        } else {
            Verdict::Fail
        };
        let extrema = self
            .extrema
            .into_iter()
            .map(|(mut e, v)| {
                e.value_approx = v.approx();
                e.value = match v {
                    Value::Exact(r) => Some(format_rational(&r)),
                    Value::Approx(_) => None,
                };
                e
            })
            .collect();
        SuiteReport {
            suite: self.suite.to_string(),
            header: self.header,
            instances: self.instances,
            checks: self.checks,
            violations: self.violations,
            extrema,
            verdict,
        }
    }
}

/// Runs `check` on every corpus item in parallel and merges in corpus order.
pub(crate) fn run_corpus<T: Sync>(items: &[T], check: impl Fn(&T) -> Outcome + Sync + Send) -> Vec<Outcome> {
    items.par_iter().map(check).collect()
}
