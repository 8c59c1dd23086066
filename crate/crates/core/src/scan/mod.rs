//! Community-file scanning: file-name matching, area findings, the
//! rule-based classifier and skeleton-card generation. Collection (disk or
//! network) lives in the `divcard` crate; this module only sees text.

mod files;
mod rules;
mod skeleton;
pub mod text;

pub use files::{match_community_file, Category, CommunityFile, CommunityFileSet, Matcher, EXTENSIONS, VARIANT_TABLE};
pub use rules::{classify_rule, RULEBOOK};
pub use skeleton::skeleton_card;

use alloc::string::String;
use alloc::vec::Vec;

use crate::diag::Diagnostic;

/// The five diversity areas.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Area {
    /// Development team.
    A1,
    /// Non-coding contributors.
    A2,
    /// Tests with users.
    A3,
    /// Usage context.
    A4,
    /// Governance and funders.
    A5,
}

impl Area {
    pub const ALL: [Area; 5] = [Area::A1, Area::A2, Area::A3, Area::A4, Area::A5];

    pub fn as_str(self) -> &'static str {
        match self {
            Area::A1 => "A1",
            Area::A2 => "A2",
            Area::A3 => "A3",
            Area::A4 => "A4",
            Area::A5 => "A5",
        }
    }

    pub fn from_token(s: &str) -> Option<Self> {
        Self::ALL.iter().copied().find(|a| a.as_str() == s)
    }

    pub fn subkeys(self) -> &'static [&'static str] {
        match self {
            Area::A1 => &["profileAspects"],
            Area::A2 => &["nonCodingRoles"],
            Area::A3 => &["labourForce", "platforms"],
            Area::A4 => &["targetPopulation", "adaptation"],
            Area::A5 => &["funders"],
        }
    }

    pub fn title(self) -> &'static str {
        match self {
            Area::A1 => "development team",
            Area::A2 => "non-coding contributors",
            Area::A3 => "tests with users",
            Area::A4 => "usage context",
            Area::A5 => "governance and funders",
        }
    }
}

/// A verbatim excerpt: `excerpt == file.content[start..end]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Evidence {
    pub path: String,
    pub start: usize,
    pub end: usize,
    pub excerpt: String,
    /// `A1`, `A1.profileAspects`, … — what this excerpt backs.
    pub supports: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AreaFinding {
    pub area: Area,
    pub present: bool,
    /// One entry per [`Area::subkeys`], in that order.
    pub subfindings: Vec<(&'static str, bool)>,
    pub evidence: Vec<Evidence>,
}

impl AreaFinding {
    pub fn absent(area: Area) -> Self {
        AreaFinding {
            area,
            present: false,
            subfindings: area.subkeys().iter().map(|k| (*k, false)).collect(),
            evidence: Vec::new(),
        }
    }

    pub fn sub(&self, key: &str) -> bool {
        self.subfindings.iter().any(|(k, v)| *k == key && *v)
    }

    pub fn set_sub(&mut self, key: &str, value: bool) {
        if let Some(e) = self.subfindings.iter_mut().find(|(k, _)| *k == key) {
            e.1 = value;
        }
    }

    /// Enforces "absent ⇒ no sub-findings and no evidence". Returns whether
    /// anything had to change.
    pub fn normalize(&mut self) -> bool {
        if self.present {
            return false;
        }
        let dirty = !self.evidence.is_empty() || self.subfindings.iter().any(|(_, v)| *v);
        self.evidence.clear();
        for e in &mut self.subfindings {
            e.1 = false;
        }
        dirty
    }

    /// Sub-keys that are true but have no supporting evidence.
    pub fn unsupported(&self) -> Vec<&'static str> {
        let area = self.area.as_str();
        self.subfindings
            .iter()
            .filter(|(_, v)| *v)
            .filter(|(k, _)| {
                !self.evidence.iter().any(|e| {
                    e.supports.iter().any(|s| s.strip_prefix(area).and_then(|r| r.strip_prefix('.')) == Some(k))
                })
            })
            .map(|(k, _)| *k)
            .collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Backend {
    Rule,
    Llm,
}

impl Backend {
    pub fn as_str(self) -> &'static str {
        match self {
            Backend::Rule => "rule",
            Backend::Llm => "llm",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FileSummary {
    pub category: Category,
    pub path: String,
    pub bytes: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ScanReport {
    pub repo: String,
    /// RFC 3339 UTC timestamp.
    pub collected_at: String,
    pub files: Vec<FileSummary>,
    /// Exactly one per area, in area order.
    pub findings: Vec<AreaFinding>,
    pub backend: Backend,
    /// Non-fatal notes raised while scanning (e.g. normalized LLM output).
    pub warnings: Vec<Diagnostic>,
}

impl ScanReport {
    pub fn new(repo: &str, collected_at: &str, files: &CommunityFileSet, findings: Vec<AreaFinding>, backend: Backend) -> Self {
        ScanReport {
            repo: repo.into(),
            collected_at: collected_at.into(),
            files: files
                .entries
                .iter()
                .map(|f| FileSummary { category: f.category, path: f.path.clone(), bytes: f.content.len() })
                .collect(),
            findings,
            backend,
            warnings: Vec::new(),
        }
    }

    pub fn finding(&self, area: Area) -> Option<&AreaFinding> {
        self.findings.iter().find(|f| f.area == area)
    }
}
