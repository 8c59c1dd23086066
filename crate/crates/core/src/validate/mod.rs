//! Semantic checks over a [`Card`], the privacy lint, and completeness
//! grading. All three work on the model, so programmatically built cards get
//! the same treatment as parsed ones.

mod completeness;
mod privacy;

pub use completeness::{completeness, completeness_with, DEFAULT_HIGH_THRESHOLD, CompletenessReport, Dimension, Level, Row};
pub use privacy::{lint_privacy, lint_privacy_with, PrivacyFinding, DEFAULT_K};

use alloc::collections::BTreeMap;
use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::diag::{Code, Diagnostic, SourceSpan};
use crate::model::*;

#[derive(Clone, Debug, PartialEq)]
pub struct ValidationReport {
    pub diagnostics: Vec<Diagnostic>,
    /// No error-severity diagnostic.
    pub resolved: bool,
}

const MAX_AGE: i64 = 130;
const EPS: f64 = 1e-6;

pub fn validate(card: &Card) -> ValidationReport {
    let mut v = Validator { card, out: Vec::new(), ids: BTreeMap::new() };
    v.run();
    let mut diagnostics = v.out;
    diagnostics.sort_by(|a, b| a.canonical_cmp(b));
    let resolved = !crate::diag::has_errors(&diagnostics);
    ValidationReport { diagnostics, resolved }
}

struct Validator<'c> {
    card: &'c Card,
    out: Vec<Diagnostic>,
    ids: BTreeMap<&'c str, ElementKind>,
}

impl<'c> Validator<'c> {
    fn push(&mut self, code: Code, msg: String, span: SourceSpan) {
        self.out.push(Diagnostic::new(code, msg, span));
    }

    fn run(&mut self) {
        let card = self.card;
        if card.project_name.trim().is_empty() {
            self.push(Code::MissingProject, "card has no `project` header".into(), card.origin.element());
        }
        for (id, kind, origin) in card.declarations() {
            if let Some(prev) = self.ids.get(id) {
                let msg = format!("id `{id}` is already used by a {}", prev.as_str());
                self.push(Code::DuplicateId, msg, origin.element());
            } else {
                self.ids.insert(id, kind);
            }
        }
        for t in &card.teams {
            self.team(t);
        }
        for p in &card.participants {
            self.participant(p);
        }
        for o in &card.organizations {
            self.profile(&o.profile, &o.origin);
        }
        for u in &card.use_cases {
            if u.description.trim().is_empty() {
                let msg = format!("use case `{}` has no description", u.id);
                self.push(Code::EmptyDescription, msg, u.origin.element());
            }
            for r in &u.target_communities {
                self.resolve(r, &[ElementKind::TargetCommunity]);
            }
            if let Some(r) = &u.social_context {
                self.resolve(r, &[ElementKind::SocialContext]);
            }
        }
        for s in &card.social_contexts {
            self.countries(&s.countries, &s.origin, "countries");
            self.languages(&s.spoken_languages, &s.origin, "spokenLanguages");
        }
        for t in &card.target_communities {
            self.profile(&t.profile, &t.origin);
        }
        for a in &card.adaptations {
            if a.description.trim().is_empty() {
                let msg = format!("adaptation `{}` has no description", a.id);
                self.push(Code::EmptyDescription, msg, a.origin.element());
            }
            for r in &a.target_communities {
                self.resolve(r, &[ElementKind::TargetCommunity]);
            }
            for r in &a.related_teams {
                self.resolve(r, &[ElementKind::Team]);
            }
        }
        if let Some(g) = &card.governance {
            for b in &g.bodies {
                for r in &b.members {
                    self.resolve(r, &[ElementKind::Participant, ElementKind::Organization]);
                }
                if let Some(p) = &b.profile {
                    self.profile(p, &b.origin);
                }
            }
        }
    }

    fn resolve(&mut self, r: &Ref, expected: &[ElementKind]) {
        let want = expected.iter().map(|k| k.as_str()).collect::<Vec<_>>().join(" or ");
        match self.ids.get(r.id.as_str()) {
            Some(k) if expected.contains(k) => {}
            Some(k) => {
                let msg = format!("`{}` is a {}, expected a {want}", r.id, k.as_str());
                self.push(Code::UnresolvedRef, msg, r.origin.element());
            }
            None => {
                let msg = format!("no {want} named `{}` is declared", r.id);
                self.push(Code::UnresolvedRef, msg, r.origin.element());
            }
        }
    }

    fn countries(&mut self, list: &[CountryCode], origin: &Origin, field: &str) {
        for c in list {
            self.country(c, origin, field);
        }
    }

    fn country(&mut self, c: &CountryCode, origin: &Origin, field: &str) {
        if c.entry().is_none() {
            let msg = format!("`{}` is not an ISO 3166-1 country code or name", c.as_str());
            self.push(Code::UnknownCountry, msg, origin.field(field));
        }
    }

    fn languages(&mut self, list: &[LanguageSkill], origin: &Origin, field: &str) {
        for s in list {
            if s.language.entry().is_none() {
                let msg = format!("`{}` is not an ISO 639-1 language code or name", s.language.as_str());
                self.push(Code::UnknownLanguage, msg, origin.field(field));
            }
        }
    }

    fn non_negative(&mut self, value: Option<f64>, what: &str, origin: &Origin, field: &str) {
        if let Some(v) = value {
            if v < 0.0 || v.is_nan() {
                let msg = format!("{what} must not be negative (found {v})");
                self.push(Code::ValueOutOfRange, msg, origin.field(field));
            }
        }
    }

    fn profile(&mut self, p: &GroupProfile, origin: &Origin) {
        if let Some(r) = p.age_range {
            if r.min > r.max || r.min < 0 || r.max > MAX_AGE {
                let msg = format!("ageRange ({}, {}) must satisfy 0 <= min <= max <= {MAX_AGE}", r.min, r.max);
                self.push(Code::RangeInverted, msg, origin.field("ageRange"));
            }
        }
        if let Some(t) = p.average_tenure {
            if t < 0.0 || t.is_nan() {
                self.push(Code::NegativeTenure, format!("averageTenure {t} is negative"), origin.field("averageTenure"));
            }
        }
        self.countries(&p.countries, origin, "countries");
        self.languages(&p.spoken_languages, origin, "spokenLanguages");
        self.distribution(&p.genders, origin, "genders");
    }

    fn distribution(&mut self, entries: &[DistributionEntry], origin: &Origin, field: &str) {
        let span = origin.field(field);
        let mut sum = 0.0;
        let mut all = !entries.is_empty();
        let mut any = false;
        for e in entries {
            if e.label.trim().is_empty() {
                self.push(Code::EmptyLabel, format!("`{field}` entry has an empty label"), span.clone());
            }
            match e.percent {
                Some(p) if !(0.0..=100.0).contains(&p) => {
                    let msg = format!("`{field}` percentage {p} is outside [0, 100]");
                    self.push(Code::ValueOutOfRange, msg, span.clone());
                    any = true;
                    sum += p;
                }
                Some(p) => {
                    any = true;
                    sum += p;
                }
                None => all = false,
            }
        }
        if any && sum > 100.0 + EPS {
            self.push(Code::DistributionSum, format!("`{field}` percentages sum to {sum}%, above 100%"), span);
        } else if all && sum < 100.0 - EPS {
            self.push(Code::DistributionSum, format!("`{field}` percentages sum to {sum}%, below 100%"), span);
        }
    }

    fn team(&mut self, t: &Team) {
        let o = &t.origin;
        self.profile(&t.profile, o);
        if t.detail.kind() != t.kind {
            let msg = format!(
                "{} team `{}` carries {} attributes",
                t.kind.as_str(),
                t.id,
                t.detail.kind().as_str()
            );
            self.push(Code::KindDetailMismatch, msg, o.element());
        }
        let distinct: BTreeSet<&str> = t.members.iter().map(|m| m.id.as_str()).collect();
        match t.team_size {
            Some(n) if n < 0 => {
                self.push(Code::ValueOutOfRange, format!("teamSize {n} is negative"), o.field("teamSize"));
            }
            Some(n) if n < (distinct.len() as i64).max(1) => {
                let msg = format!("teamSize {n} is smaller than the {} listed member(s) (minimum 1)", distinct.len());
                self.push(Code::TeamsizeLtMembers, msg, o.field("teamSize"));
            }
            _ => {}
        }
        for m in &t.members {
            self.resolve(m, &[ElementKind::Participant]);
        }
        if let Some(lf) = &t.labour_force {
            if let Some(c) = &lf.country {
                self.country(c, o, "labourCountry");
            }
            if let Some(Salary::Amount { amount, .. }) = &lf.salary {
                self.non_negative(Some(*amount), "salary", o, "salary");
            }
            if lf.sourcing == Sourcing::Internal {
                if let Some(company) = &lf.company {
                    if !self.is_own_organization(company) {
                        let msg = format!(
                            "internally sourced team `{}` names company \"{company}\", which is not the project's organization",
                            t.id
                        );
                        self.push(Code::InternalWithCompany, msg, o.field("company"));
                    }
                }
            }
        }
        match &t.detail {
            TeamDetail::Tester(d) => {
                self.non_negative(d.iterations.map(|i| i as f64), "iterations", o, "iterations");
                self.non_negative(d.duration_hours, "durationHours", o, "durationHours");
            }
            TeamDetail::PublicReporter(ReporterDetail { contribution_count, .. })
            | TeamDetail::NonCodingContributor(NonCodingDetail { contribution_count, .. }) => {
                self.non_negative(contribution_count.map(|i| i as f64), "contributionCount", o, "contributionCount");
            }
            TeamDetail::Development => {}
        }
    }

    /// The project itself, or an organization declared in the card.
    fn is_own_organization(&self, company: &str) -> bool {
        let c = company.trim();
        let same = |s: &str| s.trim().eq_ignore_ascii_case(c);
        same(&self.card.project_name)
            || self.card.organizations.iter().any(|o| same(&o.id) || same(&o.name))
    }

    fn participant(&mut self, p: &Participant) {
        let o = &p.origin;
        let ind = &p.individual;
        if let Some(age) = ind.age {
            if !(0..=MAX_AGE).contains(&age) {
                self.push(Code::ValueOutOfRange, format!("age {age} is outside [0, {MAX_AGE}]"), o.field("age"));
            }
        }
        if let Some(t) = ind.tenure {
            if t < 0.0 || t.is_nan() {
                self.push(Code::NegativeTenure, format!("tenure {t} is negative"), o.field("tenure"));
            }
        }
        if let Some(c) = &ind.country {
            self.country(c, o, "country");
        }
        self.languages(&ind.spoken_languages, o, "spokenLanguages");
        for m in &p.memberships {
            self.resolve(&m.team, &[ElementKind::Team]);
            if let Some(end) = m.end {
                if end < m.start {
                    let msg = format!(
                        "membership of `{}` in `{}` ends ({end}) before it starts ({})",
                        ind.id, m.team.id, m.start
                    );
                    self.push(Code::BadMembershipDates, msg, o.field("memberships"));
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lang::parse_card;

    fn codes(src: &str) -> Vec<Code> {
        let r = parse_card(src, "t.divcard");
        assert!(!r.has_errors(), "{:?}", r.diagnostics);
        validate(&r.card).diagnostics.iter().map(|d| d.code).collect()
    }

    #[test]
    fn empty_card_only_lacks_project() {
        assert_eq!(codes(""), [Code::MissingProject]);
        assert!(validate(&Card::new("X").unwrap()).resolved);
    }

    #[test]
    fn inverted_age_range() {
        assert_eq!(codes("project P\ntargetCommunity t\n  ageRange: (36, 25)\n"), [Code::RangeInverted]);
    }

    #[test]
    fn unresolved_ref_points_at_reference() {
        let r = parse_card("project P\nadaptation a\n  description: \"d\"\n  targetCommunities: [ghost]\n", "t");
        let v = validate(&r.card);
        assert_eq!(v.diagnostics.len(), 1);
        let d = &v.diagnostics[0];
        assert_eq!(d.code, Code::UnresolvedRef);
        assert_eq!((d.span.start_line, d.span.start_col), (4, 23));
        assert!(!v.resolved);
    }

    #[test]
    fn wrong_kind_reference() {
        let src = "project P\nrule r\n  text: \"t\"\nuseCase u\n  description: \"d\"\n  targetCommunities: [r]\n";
        assert_eq!(codes(src), [Code::UnresolvedRef]);
    }

    #[test]
    fn distribution_sums() {
        let over = "project P\ndevelopmentTeam d\n  genders: [\"male 80%\", \"female 30%\"]\n";
        assert_eq!(codes(over), [Code::DistributionSum]);
        let under = "project P\ndevelopmentTeam d\n  genders: [\"male 50%\", \"female 30%\"]\n";
        assert_eq!(codes(under), [Code::DistributionSum]);
        let partial = "project P\ndevelopmentTeam d\n  genders: [\"male 50%\", \"other\"]\n";
        assert!(codes(partial).is_empty());
        let exact = "project P\ndevelopmentTeam d\n  genders: [\"male 80%\", \"female 20%\"]\n";
        assert!(codes(exact).is_empty());
    }

    #[test]
    fn internal_company_must_be_own() {
        let own = "project Acme\ndevelopmentTeam d\n  sourcing: internal\n  company: \"Acme\"\n";
        assert!(codes(own).is_empty());
        let other = "project Acme\ndevelopmentTeam d\n  sourcing: internal\n  company: \"Contoso\"\n";
        assert_eq!(codes(other), [Code::InternalWithCompany]);
        let external = "project Acme\ndevelopmentTeam d\n  sourcing: external\n  company: \"Contoso\"\n";
        assert!(codes(external).is_empty());
    }

    #[test]
    fn team_size_floor() {
        let src = "project P\nparticipant a\nparticipant b\ndevelopmentTeam d\n  teamSize: 1\n  members: [a, b, a]\n";
        assert_eq!(codes(src), [Code::TeamsizeLtMembers]);
        assert_eq!(codes("project P\ndevelopmentTeam d\n  teamSize: 0\n"), [Code::TeamsizeLtMembers]);
        assert_eq!(codes("project P\ndevelopmentTeam d\n  teamSize: 2\n"), []);
    }
}
