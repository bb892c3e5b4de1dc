use std::collections::BTreeMap;
use std::ops::RangeInclusive;

use clap::ValueEnum;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use binharm::exact::Rational;
use binharm::identities::{self, Params};
use binharm::padic;
use binharm::{Error, Result};

use crate::output::{write_records, Format};
use crate::{pfd_record, Outcome, SweepArgs};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SweepKind {
    Chu,
    Thm1,
    Thm2,
    PfdThm1,
    PfdThm2,
    Supercongruence,
}

/// A fully resolved sweep: inclusive ranges plus per-kind options.
#[derive(Debug, Clone)]
pub struct SweepSpec {
    pub kind: SweepKind,
    pub l: RangeInclusive<u64>,
    pub m: RangeInclusive<u64>,
    pub n: RangeInclusive<u64>,
    pub weights: Vec<(Rational, Rational)>,
    pub three_way: bool,
    pub d: u64,
    pub r: u64,
    pub primes: RangeInclusive<u64>,
    pub allow_override: bool,
    pub format: Format,
}

fn default_weights() -> Vec<(Rational, Rational)> {
    ["1,0", "0,1", "2,-3/2"]
        .iter()
        .map(|s| {
            let (a, b) = s.split_once(',').unwrap();
            (a.parse().unwrap(), b.parse().unwrap())
        })
        .collect()
}

fn required(value: Option<u64>, flag: &str, kind: SweepKind) -> Result<u64> {
    value.ok_or_else(|| Error::InvalidShape(format!("--{flag} is required for --kind {kind:?}")))
}

fn range(lo: u64, hi: u64, name: &str) -> Result<RangeInclusive<u64>> {
    if lo > hi {
        return Err(Error::InvalidShape(format!("empty {name} range {lo}..={hi}")));
    }
    Ok(lo..=hi)
}

impl SweepSpec {
    pub(crate) fn from_args(a: &SweepArgs, format: Format) -> Result<Self> {
        let mut spec = SweepSpec {
            kind: a.kind,
            l: 1..=0,
            m: 1..=0,
            n: 1..=0,
            weights: if a.c.is_empty() { default_weights() } else { a.c.clone() },
            three_way: a.three_way,
            d: 0,
            r: 0,
            primes: 1..=0,
            allow_override: a.allow_override,
            format,
        };
        match a.kind {
            SweepKind::Chu => {
                spec.n = range(a.min_n, required(a.max_n, "max-n", a.kind)?, "n")?;
            }
            SweepKind::Thm1 | SweepKind::PfdThm1 => {
                let max_m = required(a.max_m, "max-m", a.kind)?;
                spec.m = range(a.min_m, max_m, "m")?;
                spec.n = range(a.min_n, a.max_n.unwrap_or(max_m), "n")?;
            }
            SweepKind::Thm2 | SweepKind::PfdThm2 => {
                let max_l = required(a.max_l, "max-l", a.kind)?;
                spec.l = range(a.min_l, max_l, "l")?;
                spec.m = range(a.min_m, a.max_m.unwrap_or(max_l), "m")?;
                spec.n = range(a.min_n, a.max_n.unwrap_or(max_l), "n")?;
            }
            SweepKind::Supercongruence => {
                spec.d = required(a.d, "d", a.kind)?;
                spec.r = required(a.r, "r", a.kind)?;
                spec.primes = range(a.pmin, required(a.pmax, "pmax", a.kind)?, "p")?;
                if spec.r < 2 || spec.r + 2 > spec.d || num_integer::gcd(spec.d, spec.r) != 1 {
                    return Err(Error::InvalidShape(format!(
                        "need 2 <= r <= d-2 and gcd(r, d) = 1, got d = {}, r = {}",
                        spec.d, spec.r
                    )));
                }
            }
        }
        Ok(spec)
    }
}

#[derive(Debug, Clone)]
enum Case {
    Identity(Params),
    Pfd(Params),
    Supercongruence { d: u64, r: u64, p: u64 },
}

/// Cases in lexicographic parameter order, plus skip counts by reason.
fn enumerate(spec: &SweepSpec) -> (Vec<Case>, BTreeMap<String, usize>) {
    let mut cases = Vec::new();
    let mut skipped: BTreeMap<String, usize> = BTreeMap::new();
    let mut skip = |reason: &str| *skipped.entry(reason.to_string()).or_default() += 1;
    let wrap = |p: Params| match spec.kind {
        SweepKind::PfdThm1 | SweepKind::PfdThm2 => Case::Pfd(p),
        _ => Case::Identity(p),
    };
    match spec.kind {
        SweepKind::Chu => {
            for n in spec.n.clone() {
                match (Params::Chu { n }).validate() {
                    Ok(()) => cases.push(Case::Identity(Params::Chu { n })),
                    Err(_) => skip("requires n >= 1"),
                }
            }
        }
        SweepKind::Thm1 | SweepKind::PfdThm1 => {
            for m in spec.m.clone() {
                for n in spec.n.clone() {
                    let p = Params::Thm1 { m, n };
                    match p.validate() {
                        Ok(()) => cases.push(wrap(p)),
                        Err(_) => skip("requires m >= n >= 1"),
                    }
                }
            }
        }
        SweepKind::Thm2 | SweepKind::PfdThm2 => {
            for l in spec.l.clone() {
                for m in spec.m.clone() {
                    for n in spec.n.clone() {
                        if (Params::Thm2 { l, m, n, c1: Rational::zero(), c2: Rational::zero() })
                            .validate()
                            .is_err()
                        {
                            skip("requires l > m >= n >= l/2");
                            continue;
                        }
                        for (c1, c2) in &spec.weights {
                            cases.push(wrap(Params::Thm2 {
                                l,
                                m,
                                n,
                                c1: c1.clone(),
                                c2: c2.clone(),
                            }));
                        }
                    }
                }
            }
        }
        SweepKind::Supercongruence => {
            let (d, r) = (spec.d, spec.r);
            for p in spec.primes.clone() {
                if !padic::is_odd_prime(p) {
                    continue;
                }
                if d % p == 0 {
                    skip("p divides d");
                } else if !spec.allow_override && !padic::supercongruence_hypotheses(d, r, p) {
                    skip("p fails the congruence conditions");
                } else {
                    cases.push(Case::Supercongruence { d, r, p });
                }
            }
        }
    }
    (cases, skipped)
}

fn evaluate(case: &Case, three_way: bool) -> Value {
    let result = match case {
        Case::Identity(p) if three_way => identities::three_way_check(p).map(|r| serde_json::to_value(r)),
        Case::Identity(p) => identities::check_identity(p).map(|r| serde_json::to_value(r)),
        Case::Pfd(p) => pfd_record(p).map(|r| serde_json::to_value(r)),
        Case::Supercongruence { d, r, p } => {
            padic::verify_supercongruence_with(*d, *r, *p, true).map(|r| serde_json::to_value(r))
        }
    };
    match result {
        Ok(v) => v.expect("reports serialize"),
        Err(e) => {
            let case = match case {
                Case::Identity(p) | Case::Pfd(p) => serde_json::to_value(p).expect("params serialize"),
                Case::Supercongruence { d, r, p } => json!({"d": d, "r": r, "p": p}),
            };
            json!({"case": case, "error": e.to_string(), "pass": false})
        }
    }
}

/// Summary of a finished sweep.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SweepSummary {
    pub kind: SweepKind,
    pub cases: usize,
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
    pub skip_reasons: BTreeMap<String, usize>,
}

/// Evaluates every case and returns the per-case reports in order.
pub fn sweep_reports(spec: &SweepSpec) -> (Vec<Value>, SweepSummary) {
    let (cases, skip_reasons) = enumerate(spec);
    let reports: Vec<Value> = cases.par_iter().map(|c| evaluate(c, spec.three_way)).collect();
    let passed = reports
        .iter()
        .filter(|r| r.get("pass").and_then(Value::as_bool) == Some(true))
        .count();
    let summary = SweepSummary {
        kind: spec.kind,
        cases: reports.len(),
        passed,
        failed: reports.len() - passed,
        skipped: skip_reasons.values().sum(),
        skip_reasons,
    };
    (reports, summary)
}

pub fn sweep(spec: &SweepSpec) -> Outcome {
    let (reports, summary) = sweep_reports(spec);
    let mut stdout = String::new();
    let mut stderr = String::new();
    write_records(spec.format, &reports, &mut stdout);
    let summary_line = format!(
        "summary: kind={} cases={} passed={} failed={} skipped={}",
        serde_json::to_value(summary.kind).expect("kind serializes").as_str().unwrap_or_default(),
        summary.cases,
        summary.passed,
        summary.failed,
        summary.skipped
    );
    match spec.format {
        Format::Json => {
            stdout.push_str(&serde_json::to_string(&json!({ "summary": summary })).expect("summary serializes"));
            stdout.push('\n');
        }
        Format::Text => {
            stdout.push_str(&summary_line);
            stdout.push('\n');
        }
        Format::Csv => {
            stderr.push_str(&summary_line);
            stderr.push('\n');
        }
    }
    Outcome {
        code: if summary.failed == 0 { 0 } else { 1 },
        stdout,
        stderr,
    }
}
