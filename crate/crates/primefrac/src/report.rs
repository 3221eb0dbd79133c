//! Report documents and their JSON / CSV / text renderings.

use serde::Serialize;

use crate::analysis::ProfileSeries;
use crate::cfrac::EvaluationResult;
use crate::error::Result;
use crate::primes::PrimeFamily;

/// Output format for [`emit`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Json,
    Csv,
    Text,
}

impl OutputFormat {
    pub fn parse(s: &str) -> Result<Self> {
        Ok(match s.to_ascii_lowercase().as_str() {
            "json" => OutputFormat::Json,
            "csv" => OutputFormat::Csv,
            "text" => OutputFormat::Text,
            other => return Err(crate::error::Error::Cli(format!("unknown format {other:?}"))),
        })
    }
}

/// One reportable result: a named digit string and/or a profile series,
/// with the provenance needed to reproduce it.
#[derive(Debug, Clone, Serialize)]
pub struct ReportDocument {
    pub name: String,
    pub digits: String,
    /// `None` encodes an exact value (serialized as JSON null).
    pub error_exponent: Option<i64>,
    pub terms_used: Option<usize>,
    pub family: Option<String>,
    pub bound: Option<String>,
    pub series: Vec<(u64, f64)>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub notes: Vec<String>,
}

impl ReportDocument {
    pub fn for_evaluation(name: &str, family: &PrimeFamily, eval: &EvaluationResult) -> Self {
        ReportDocument {
            name: name.to_string(),
            digits: eval.value.digits().to_string(),
            error_exponent: Some(eval.error_exponent()),
            terms_used: Some(eval.terms_used),
            family: Some(family.slug().to_string()),
            bound: Some(family.bound_string()),
            series: Vec::new(),
            notes: Vec::new(),
        }
    }

    pub fn for_series(name: &str, series: &ProfileSeries) -> Self {
        ReportDocument {
            name: name.to_string(),
            digits: String::new(),
            error_exponent: None,
            terms_used: None,
            family: None,
            bound: None,
            series: series.points.clone(),
            notes: series.notes.clone(),
        }
    }
}

/// Renders a report. The JSON schema is fixed:
/// `{"name", "digits", "error_exponent", "terms_used", "family", "bound",
/// "series": [[n, value], ...]}`. CSV emits a header row then records.
/// Text wraps digit strings at 50 per line.
pub fn emit(report: &ReportDocument, format: OutputFormat) -> Result<String> {
    Ok(match format {
        OutputFormat::Json => serde_json::to_string(report).map_err(|e| crate::error::Error::Cli(e.to_string()))?,
        OutputFormat::Csv => {
            let mut out = String::new();
            if report.series.is_empty() {
                out.push_str("name,digits,error_exponent,terms_used,family,bound\n");
                out.push_str(&format!(
                    "{},{},{},{},{},{}\n",
                    report.name,
                    report.digits,
                    report.error_exponent.map_or(String::from("exact"), |e| e.to_string()),
                    report.terms_used.map_or(String::new(), |t| t.to_string()),
                    report.family.clone().unwrap_or_default(),
                    report.bound.clone().unwrap_or_default(),
                ));
            } else {
                out.push_str("n,value\n");
                for (n, v) in &report.series {
                    out.push_str(&format!("{n},{v}\n"));
                }
            }
            out
        }
        OutputFormat::Text => {
            let mut out = String::new();
            out.push_str(&format!("{}\n", report.name));
            if let Some(family) = &report.family {
                out.push_str(&format!(
                    "  family: {family}   bound: {}\n",
                    report.bound.clone().unwrap_or_default()
                ));
            }
            if let Some(t) = report.terms_used {
                out.push_str(&format!("  terms used: {t}\n"));
            }
            match report.error_exponent {
                Some(e) => out.push_str(&format!("  certified error <= 10^{e}\n")),
                None if !report.digits.is_empty() => out.push_str("  exact value\n"),
                None => {}
            }
            if !report.digits.is_empty() {
                out.push_str("  value:\n");
                for chunk in wrap_digits(&report.digits, 50) {
                    out.push_str(&format!("    {chunk}\n"));
                }
            }
            if !report.series.is_empty() {
                out.push_str("  series:\n");
                for (n, v) in &report.series {
                    out.push_str(&format!("    {n} {v}\n"));
                }
            }
            for note in &report.notes {
                out.push_str(&format!("  note: {note}\n"));
            }
            out
        }
    })
}

fn wrap_digits(s: &str, width: usize) -> Vec<String> {
    let chars: Vec<char> = s.chars().collect();
    chars.chunks(width).map(|c| c.iter().collect()).collect()
}
