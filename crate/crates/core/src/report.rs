//! Report records and their JSON and markdown renderings.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::theorem::{CaseTag, CheckOutcome, CheckStatus, Mode, SplitReport, Verdict};

/// One analyzed `(G, p)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReportRecord {
    pub group: String,
    pub prime: u64,
    pub mode: Mode,
    pub case: Option<CaseTag>,
    pub verdict: Verdict,
    pub wgs_verdict: Option<Verdict>,
    pub zf_verdict: Option<Verdict>,
    /// Invariant factors of `Z(S)`.
    pub zs_factors: Option<Vec<u64>>,
    /// Invariant factors of `W_G(S)` (or `Z(F)` in `zf` mode).
    pub w_factors: Option<Vec<u64>>,
    /// Invariant factors of the transfer kernel, or of the complement found
    /// by the scan when no hypothesis holds.
    pub kernel_factors: Option<Vec<u64>>,
    pub cross_checks: BTreeMap<String, CheckStatus>,
    pub error: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<f64>,
}

impl ReportRecord {
    pub fn error(group: &str, prime: u64, mode: Mode, message: String) -> Self {
        ReportRecord {
            group: group.to_string(),
            prime,
            mode,
            case: None,
            verdict: Verdict::Error,
            wgs_verdict: None,
            zf_verdict: None,
            zs_factors: None,
            w_factors: None,
            kernel_factors: None,
            cross_checks: BTreeMap::new(),
            error: Some(message),
            timing_ms: None,
        }
    }

    /// Combines the group-side and fusion-side reports. A failed cross-check
    /// turns the verdict into `error`, since the identities checked there
    /// hold for every finite group.
    pub fn from_reports(
        group: &str,
        prime: u64,
        mode: Mode,
        case: CaseTag,
        wgs: Option<&SplitReport>,
        zf: Option<&SplitReport>,
        checks: &[CheckOutcome],
    ) -> Self {
        let primary = wgs.or(zf);
        let mut verdict = [wgs, zf]
            .into_iter()
            .flatten()
            .map(|r| r.verdict)
            .fold(Verdict::Verified, Verdict::worst);
        let failed: Vec<&CheckOutcome> = checks.iter().filter(|c| c.status == CheckStatus::Fail).collect();
        let error = if failed.is_empty() {
            None
        } else {
            verdict = Verdict::Error;
            Some(
                failed
                    .iter()
                    .map(|c| format!("cross-check {} failed: {}", c.name, c.detail))
                    .collect::<Vec<_>>()
                    .join("; "),
            )
        };
        ReportRecord {
            group: group.to_string(),
            prime,
            mode,
            case: Some(case),
            verdict,
            wgs_verdict: wgs.map(|r| r.verdict),
            zf_verdict: zf.map(|r| r.verdict),
            zs_factors: primary.map(|r| r.zs_type.invariant_factors.clone()),
            w_factors: primary.map(|r| r.w_type.invariant_factors.clone()),
            kernel_factors: primary.and_then(|r| r.kernel_type.as_ref().map(|k| k.invariant_factors.clone())),
            cross_checks: checks.iter().map(|c| (c.name.to_string(), c.status)).collect(),
            error,
            timing_ms: None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Markdown,
}

impl FromStr for Format {
    type Err = Error;
    fn from_str(s: &str) -> Result<Format> {
        match s {
            "json" => Ok(Format::Json),
            "md" | "markdown" => Ok(Format::Markdown),
            _ => Err(Error::InvalidArgument(format!("unknown format `{s}` (expected json or md)"))),
        }
    }
}

pub fn emit_report(records: &[ReportRecord], format: Format) -> String {
    match format {
        Format::Json => {
            let mut out = serde_json::to_string_pretty(records).expect("records serialize");
            out.push('\n');
            out
        }
        Format::Markdown => markdown(records),
    }
}

/// Records back from the JSON format.
pub fn parse_report(text: &str) -> Result<Vec<ReportRecord>> {
    serde_json::from_str(text).map_err(|e| Error::Parse {
        token: text
            .lines()
            .nth(e.line().saturating_sub(1))
            .unwrap_or_default()
            .trim()
            .chars()
            .take(40)
            .collect(),
        position: e.column(),
        message: e.to_string(),
    })
}

fn factors(f: &Option<Vec<u64>>) -> String {
    match f {
        None => "-".to_string(),
        Some(v) => format!(
            "[{}]",
            v.iter().map(u64::to_string).collect::<Vec<_>>().join(",")
        ),
    }
}

fn markdown(records: &[ReportRecord]) -> String {
    let mut out = String::new();
    out.push_str("| group | p | case | verdict | Z(S) type | W type |\n");
    out.push_str("|---|---|---|---|---|---|\n");
    for r in records {
        let case = r.case.map_or("-".to_string(), |c| c.to_string());
        let _ = writeln!(
            out,
            "| {} | {} | {} | {} | {} | {} |",
            r.group,
            r.prime,
            case,
            r.verdict,
            factors(&r.zs_factors),
            factors(&r.w_factors)
        );
    }
    let mut counts: BTreeMap<String, usize> = BTreeMap::new();
    for r in records {
        *counts.entry(r.verdict.to_string()).or_insert(0) += 1;
    }
    out.push('\n');
    let _ = writeln!(out, "{} records", records.len());
    for (verdict, n) in &counts {
        let _ = writeln!(out, "- {verdict}: {n}");
    }
    let errors: Vec<&ReportRecord> = records.iter().filter(|r| r.error.is_some()).collect();
    if !errors.is_empty() {
        out.push_str("\nErrors:\n");
        for r in errors {
            let _ = writeln!(out, "- {} (p = {}): {}", r.group, r.prime, r.error.as_deref().unwrap_or(""));
        }
    }
    out
}

/// Process exit code for a set of records: 1 if any errored, else 3 if any
/// counterexample, else 2 if any hypothesis failed, else 0.
pub fn exit_code(records: &[ReportRecord]) -> i32 {
    let worst = records
        .iter()
        .map(|r| r.verdict)
        .fold(Verdict::Verified, Verdict::worst);
    match worst {
        Verdict::Verified => 0,
        Verdict::HypothesisNotSatisfied => 2,
        Verdict::Counterexample => 3,
        Verdict::Error => 1,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> ReportRecord {
        ReportRecord {
            group: "a6-c4-example".into(),
            prime: 2,
            mode: Mode::All,
            case: Some(CaseTag::None),
            verdict: Verdict::Counterexample,
            wgs_verdict: Some(Verdict::Counterexample),
            zf_verdict: Some(Verdict::Counterexample),
            zs_factors: Some(vec![2, 4]),
            w_factors: Some(vec![2]),
            kernel_factors: None,
            cross_checks: BTreeMap::from([("zp_star".to_string(), CheckStatus::Pass)]),
            error: None,
            timing_ms: Some(12.5),
        }
    }

    #[test]
    fn json_round_trip() {
        let records = vec![sample(), ReportRecord::error("bad", 3, Mode::Wgs, "boom".into())];
        let text = emit_report(&records, Format::Json);
        assert_eq!(parse_report(&text).unwrap(), records);
        assert!(parse_report("[{").is_err());
    }

    #[test]
    fn markdown_table() {
        let empty = emit_report(&[], Format::Markdown);
        assert!(empty.starts_with("| group | p | case | verdict | Z(S) type | W type |\n|---"));
        let text = emit_report(&[sample()], Format::Markdown);
        assert!(text.contains("| a6-c4-example | 2 | none | counterexample | [2,4] | [2] |"));
    }

    #[test]
    fn exit_codes() {
        let mut r = sample();
        assert_eq!(exit_code(&[]), 0);
        assert_eq!(exit_code(&[r.clone()]), 3);
        r.verdict = Verdict::HypothesisNotSatisfied;
        assert_eq!(exit_code(&[r.clone()]), 2);
        let e = ReportRecord::error("x", 2, Mode::All, "e".into());
        assert_eq!(exit_code(&[sample(), e]), 1);
    }
}
