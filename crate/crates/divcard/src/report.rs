//! JSON payloads for the non-card outputs: diagnostics, completeness,
//! privacy findings and scan reports. Same formatting rules as card JSON.

use crate::json::to_pretty;
use divcard_core::diag::{Diagnostic, SourceSpan};
use divcard_core::scan::{AreaFinding, ScanReport};
use divcard_core::validate::{CompletenessReport, PrivacyFinding};
use serde::Serialize;
use std::collections::BTreeMap;

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct Span<'a> {
    file: &'a str,
    start_line: u32,
    start_col: u32,
    end_line: u32,
    end_col: u32,
}

impl<'a> From<&'a SourceSpan> for Span<'a> {
    fn from(s: &'a SourceSpan) -> Self {
        Span { file: &s.file, start_line: s.start_line, start_col: s.start_col, end_line: s.end_line, end_col: s.end_col }
    }
}

#[derive(Serialize)]
struct Diag<'a> {
    severity: &'static str,
    code: &'static str,
    message: &'a str,
    span: Span<'a>,
}

impl<'a> From<&'a Diagnostic> for Diag<'a> {
    fn from(d: &'a Diagnostic) -> Self {
        Diag { severity: d.severity.as_str(), code: d.code.as_str(), message: &d.message, span: (&d.span).into() }
    }
}

pub fn diagnostics_json(diags: &[Diagnostic]) -> String {
    #[derive(Serialize)]
    struct Doc<'a> {
        diagnostics: Vec<Diag<'a>>,
    }
    to_pretty(&Doc { diagnostics: diags.iter().map(Diag::from).collect() })
}

pub fn completeness_json(report: &CompletenessReport) -> String {
    #[derive(Serialize)]
    #[serde(rename_all = "camelCase")]
    struct Row<'a> {
        dimension: &'static str,
        populated_ratio: f64,
        level: &'static str,
        note: &'a str,
    }
    #[derive(Serialize)]
    struct Doc<'a> {
        rows: Vec<Row<'a>>,
    }
    to_pretty(&Doc {
        rows: report
            .rows
            .iter()
            .map(|r| Row { dimension: r.dimension.as_str(), populated_ratio: r.populated_ratio, level: r.level.as_str(), note: &r.note })
            .collect(),
    })
}

pub fn privacy_json(findings: &[PrivacyFinding]) -> String {
    #[derive(Serialize)]
    struct Finding<'a> {
        code: &'static str,
        subject: &'a str,
        rationale: &'a str,
        span: Span<'a>,
    }
    #[derive(Serialize)]
    struct Doc<'a> {
        findings: Vec<Finding<'a>>,
    }
    to_pretty(&Doc {
        findings: findings
            .iter()
            .map(|f| Finding { code: f.code.as_str(), subject: &f.subject, rationale: &f.rationale, span: (&f.span).into() })
            .collect(),
    })
}

#[derive(Serialize)]
struct Evidence<'a> {
    path: &'a str,
    /// Byte offsets into the file content, end exclusive.
    span: [usize; 2],
    excerpt: &'a str,
    supports: &'a [String],
}

#[derive(Serialize)]
struct Finding<'a> {
    area: &'static str,
    present: bool,
    subfindings: BTreeMap<&'static str, bool>,
    evidence: Vec<Evidence<'a>>,
}

impl<'a> From<&'a AreaFinding> for Finding<'a> {
    fn from(f: &'a AreaFinding) -> Self {
        Finding {
            area: f.area.as_str(),
            present: f.present,
            subfindings: f.subfindings.iter().copied().collect(),
            evidence: f
                .evidence
                .iter()
                .map(|e| Evidence { path: &e.path, span: [e.start, e.end], excerpt: &e.excerpt, supports: &e.supports })
                .collect(),
        }
    }
}

pub fn scan_report_json(report: &ScanReport) -> String {
    #[derive(Serialize)]
    struct File<'a> {
        category: &'static str,
        path: &'a str,
        bytes: usize,
    }
    #[derive(Serialize)]
    #[serde(rename_all = "camelCase")]
    struct Doc<'a> {
        repo: &'a str,
        collected_at: &'a str,
        files: Vec<File<'a>>,
        findings: Vec<Finding<'a>>,
        backend: &'static str,
        #[serde(skip_serializing_if = "Vec::is_empty")]
        warnings: Vec<Diag<'a>>,
    }
    to_pretty(&Doc {
        repo: &report.repo,
        collected_at: &report.collected_at,
        files: report.files.iter().map(|f| File { category: f.category.as_str(), path: &f.path, bytes: f.bytes }).collect(),
        findings: report.findings.iter().map(Finding::from).collect(),
        backend: report.backend.as_str(),
        warnings: report.warnings.iter().map(Diag::from).collect(),
    })
}
