//! Re-identification risk lint for aggregate and individual disclosures.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::diag::{Code, Diagnostic, SourceSpan};
use crate::model::{Card, Team};

pub const DEFAULT_K: i64 = 5;

#[derive(Clone, Debug, PartialEq)]
pub struct PrivacyFinding {
    pub code: Code,
    pub subject: String,
    pub rationale: String,
    pub span: SourceSpan,
}

impl PrivacyFinding {
    pub fn to_diagnostic(&self) -> Diagnostic {
        Diagnostic::new(self.code, format!("`{}`: {}", self.subject, self.rationale), self.span.clone())
    }
}

pub fn lint_privacy(card: &Card) -> Vec<PrivacyFinding> {
    lint_privacy_with(card, DEFAULT_K)
}

/// Teams smaller than `k` that disclose two or more sensitive aggregates are
/// flagged; so is any participant stating ethnicity or religion directly.
pub fn lint_privacy_with(card: &Card, k: i64) -> Vec<PrivacyFinding> {
    let mut out = Vec::new();
    for t in &card.teams {
        let Some(size) = t.team_size else { continue };
        if size >= k {
            continue;
        }
        let disclosed = sensitive_disclosures(t);
        if disclosed.len() >= 2 {
            out.push(PrivacyFinding {
                code: Code::SmallGroupReidentification,
                subject: t.id.clone(),
                rationale: format!(
                    "team of {size} (below k={k}) discloses {}; members may be identifiable",
                    disclosed.join(", ")
                ),
                span: t.origin.element(),
            });
        }
    }
    for p in &card.participants {
        let ind = &p.individual;
        let mut direct = Vec::new();
        if ind.ethnicity.is_some() {
            direct.push("ethnicity");
        }
        if ind.religious_belief.is_some() {
            direct.push("religiousBelief");
        }
        if !direct.is_empty() {
            out.push(PrivacyFinding {
                code: Code::SingletonAttribute,
                subject: ind.id.clone(),
                rationale: format!("individual discloses {} directly", direct.join(" and ")),
                span: p.origin.element(),
            });
        }
    }
    out.sort_by(|a, b| a.span.cmp(&b.span).then_with(|| a.subject.cmp(&b.subject)));
    out
}

fn sensitive_disclosures(t: &Team) -> Vec<&'static str> {
    let p = &t.profile;
    let mut v = Vec::new();
    if !p.ethnicities.is_empty() {
        v.push("ethnicities");
    }
    if !p.religious_beliefs.is_empty() {
        v.push("religiousBeliefs");
    }
    if p.genders.iter().any(|g| g.percent.is_some()) {
        v.push("genders with percentages");
    }
    if !p.socio_economic_stati.is_empty() {
        v.push("socioEconomicStati");
    }
    v
}
