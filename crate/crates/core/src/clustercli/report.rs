//! Rendering of report lists.

use std::str::FromStr;

use serde::Serialize;

use super::{ClusterError, IdentityReport, Verdict};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReportFormat {
    Json,
    Text,
}

impl FromStr for ReportFormat {
    type Err = ClusterError;

    fn from_str(s: &str) -> Result<ReportFormat, ClusterError> {
        match s {
            "json" => Ok(ReportFormat::Json),
            "text" => Ok(ReportFormat::Text),
            other => Err(ClusterError::Config(format!("unknown report format {other:?}"))),
        }
    }
}

#[derive(Serialize)]
struct Summary {
    total: usize,
    holds: usize,
    fails: usize,
    not_applicable: usize,
    conjecture_consistent: usize,
    conjecture_violated: usize,
}

#[derive(Serialize)]
struct Document<'a> {
    summary: Summary,
    reports: &'a [IdentityReport],
}

fn summary(reports: &[IdentityReport]) -> Summary {
    let count = |v: Verdict| reports.iter().filter(|r| r.verdict == v).count();
    Summary {
        total: reports.len(),
        holds: count(Verdict::Holds),
        fails: count(Verdict::Fails),
        not_applicable: count(Verdict::NotApplicable),
        conjecture_consistent: count(Verdict::ConjectureConsistent),
        conjecture_violated: count(Verdict::ConjectureViolated),
    }
}

/// Text: one line per case plus witness dumps for failures. JSON: a summary
/// object and the full records.
pub fn render(reports: &[IdentityReport], format: ReportFormat) -> Result<String, ClusterError> {
    match format {
        ReportFormat::Json => Ok(serde_json::to_string_pretty(&Document { summary: summary(reports), reports })?),
        ReportFormat::Text => {
            let mut s = String::new();
            for r in reports {
                let ctl = if r.case.perturb { " [control]" } else { "" };
                s.push_str(&format!("{:<12} {:<40} {:<22} {:>8} ms{}\n", r.case.id.to_string(), r.case.params.to_string(), r.verdict.to_string(), r.elapsed_ms, ctl));
                for w in r.witnesses.iter().filter(|w| w.name.ends_with("constant") || w.name == "prefactor") {
                    s.push_str(&format!("    {} = {}\n", w.name, w.text.trim()));
                }
                if let Some(e) = &r.error {
                    s.push_str(&format!("    error: {e}\n"));
                }
                for n in &r.notes {
                    s.push_str(&format!("    note: {n}\n"));
                }
                if r.verdict.is_failure() {
                    for w in r.witnesses.iter().filter(|w| !w.zero) {
                        s.push_str(&format!("    witness {}:\n", w.name));
                        for line in w.text.lines() {
                            s.push_str(&format!("      {line}\n"));
                        }
                    }
                }
            }
            let m = summary(reports);
            s.push_str(&format!(
                "total {}: holds {}, fails {}, not-applicable {}, conjecture-consistent {}, conjecture-violated {}\n",
                m.total, m.holds, m.fails, m.not_applicable, m.conjecture_consistent, m.conjecture_violated
            ));
            Ok(s)
        }
    }
}
