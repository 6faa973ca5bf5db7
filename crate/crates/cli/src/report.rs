//! The survey: every catalog solid run through both theorems, compared
//! with its expected outcome, written as a text table and as JSON.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;
use std::time::Instant;

use rayon::prelude::*;
use rupert_core::catalog::{build, survey_set_with, Expected, SolidSpec};
use rupert_core::passage::{FailureStage, PassageKind, SearchConfig};
use serde::{Deserialize, Serialize};

use crate::commands::{attempt, Attempt, CliError, Theorem};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Outcome {
    #[serde(rename = "certified-A")]
    CertifiedA,
    #[serde(rename = "certified-B")]
    CertifiedB,
    #[serde(rename = "not-covered")]
    NotCovered,
    #[serde(rename = "failed")]
    Failed,
}

impl std::fmt::Display for Outcome {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Self::CertifiedA => "certified-A",
            Self::CertifiedB => "certified-B",
            Self::NotCovered => "not-covered",
            Self::Failed => "failed",
        })
    }
}

impl Outcome {
    pub fn matches(self, expected: Expected) -> bool {
        matches!(
            (self, expected),
            (Self::CertifiedA, Expected::RupertViaA)
                | (Self::CertifiedB, Expected::ReverseViaB)
                | (Self::NotCovered, Expected::NotCovered)
        )
    }
}

/// One row of the survey.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub solid: String,
    pub expected: Expected,
    pub outcome: Outcome,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub delta: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub margin: Option<f64>,
    /// Relative to the survey output directory.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub certificate: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ms: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub failure_stage: Option<FailureStage>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    pub matches: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SurveyReport {
    pub solids: Vec<RunReport>,
    pub mismatches: usize,
}

#[derive(Clone, Debug, Default)]
pub struct SurveyOptions {
    pub config: SearchConfig,
    pub include_gyrobicupola: bool,
    /// Adds per-solid wall-clock times to the outputs, which makes them
    /// differ between runs.
    pub timings: bool,
}

struct Row {
    report: RunReport,
    certificate_json: Option<String>,
}

fn run_one(spec: &SolidSpec, opts: &SurveyOptions) -> Row {
    let start = Instant::now();
    let label = spec.label();
    let mut report = RunReport {
        solid: label.clone(),
        expected: spec.expected,
        outcome: Outcome::Failed,
        delta: None,
        margin: None,
        certificate: None,
        ms: None,
        failure_stage: None,
        error: None,
        matches: false,
    };
    let mut certificate_json = None;
    match build(spec).map_err(CliError::from).and_then(|q| attempt(&q, Theorem::Auto, &opts.config)) {
        Ok(Attempt { certificate: Some(c), .. }) => {
            report.outcome = match c.kind {
                PassageKind::Rupert => Outcome::CertifiedA,
                PassageKind::ReverseRupert => Outcome::CertifiedB,
            };
            report.delta = Some(c.delta);
            report.margin = Some(c.margin);
            report.certificate = Some(format!("certificates/{label}.json"));
            certificate_json = serde_json::to_string_pretty(&c.to_record(Some(&label))).ok();
        }
        Ok(Attempt { certificate: None, stages }) => {
            report.outcome = Outcome::NotCovered;
            report.failure_stage = stages.iter().map(|s| s.1).max();
        }
        Err(e) => report.error = Some(e.to_string()),
    }
    report.matches = report.outcome.matches(spec.expected);
    if opts.timings {
        report.ms = Some(start.elapsed().as_millis() as u64);
    }
    Row { report, certificate_json }
}

/// Runs the survey in parallel; rows keep catalog order.
pub fn survey(opts: &SurveyOptions) -> Vec<(RunReport, Option<String>)> {
    survey_set_with(opts.include_gyrobicupola)
        .par_iter()
        .map(|spec| run_one(spec, opts))
        .map(|row| (row.report, row.certificate_json))
        .collect()
}

fn sci(x: Option<f64>) -> String {
    x.map_or_else(|| "-".into(), |v| format!("{v:.3e}"))
}

pub fn format_table(rows: &[RunReport]) -> String {
    let mut s = String::new();
    let _ = writeln!(
        s,
        "{:<30} {:<14} {:<12} {:>10} {:>10} {:>7}",
        "solid", "expected", "outcome", "delta", "margin", "ms"
    );
    for r in rows {
        let outcome = if r.matches { r.outcome.to_string() } else { format!("{}!", r.outcome) };
        let ms = r.ms.map_or_else(|| "-".into(), |m| m.to_string());
        let _ = writeln!(
            s,
            "{:<30} {:<14} {:<12} {:>10} {:>10} {:>7}",
            r.solid,
            r.expected.to_string(),
            outcome,
            sci(r.delta),
            sci(r.margin),
            ms
        );
    }
    let bad = rows.iter().filter(|r| !r.matches).count();
    let _ = writeln!(s, "mismatches: {bad} of {}", rows.len());
    s
}

/// Runs the survey and writes `survey.txt`, `survey.json` and one
/// certificate per certified solid under `dir`.
pub fn write_survey(opts: &SurveyOptions, dir: &Path) -> Result<SurveyReport, CliError> {
    let rows = survey(opts);
    let certs = dir.join("certificates");
    fs::create_dir_all(&certs).map_err(|e| CliError::io(&certs, e))?;
    for (r, json) in &rows {
        if let (Some(rel), Some(json)) = (&r.certificate, json) {
            let path = dir.join(rel);
            fs::write(&path, format!("{json}\n")).map_err(|e| CliError::io(&path, e))?;
        }
    }
    let solids: Vec<RunReport> = rows.into_iter().map(|(r, _)| r).collect();
    let report = SurveyReport { mismatches: solids.iter().filter(|r| !r.matches).count(), solids };
    let txt = dir.join("survey.txt");
    fs::write(&txt, format_table(&report.solids)).map_err(|e| CliError::io(&txt, e))?;
    let json = dir.join("survey.json");
    let body = serde_json::to_string_pretty(&report).map_err(|e| CliError::Json(e.to_string()))?;
    fs::write(&json, format!("{body}\n")).map_err(|e| CliError::io(&json, e))?;
    Ok(report)
}
