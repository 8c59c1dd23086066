//! In-memory Software Diversity Card.
//!
//! Values are plain data: construct them, validate them with
//! [`crate::validate`], and compare them structurally. Source positions live
//! in [`Origin`] fields, which never affect equality.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

mod values;
mod vocab;

pub use values::{
    AgeRange, CountryCode, Date, DistributionEntry, InvalidDate, LanguageCode, LanguageSkill, Origin,
    Ref, Salary,
};
pub use vocab::{
    BodyType, ContributorRole, EducationLevel, FunderType, OrganizationType, Proficiency,
    SkillLevel, SocioEconomicClass, Sourcing, TeamKind, TestType, WorkplaceType,
};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ModelError {
    EmptyName,
    DuplicateId(String),
}

impl fmt::Display for ModelError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModelError::EmptyName => f.write_str("project name is blank"),
            ModelError::DuplicateId(id) => write!(f, "id `{id}` is already declared"),
        }
    }
}

/// Aggregated attributes shared by every group: teams, organizations, target
/// communities and governance bodies. An empty list means "not reported".
#[derive(Clone, Debug, Default, PartialEq)]
pub struct GroupProfile {
    pub description: Option<String>,
    pub age_range: Option<AgeRange>,
    pub locations: Vec<String>,
    pub countries: Vec<CountryCode>,
    pub ethnicities: Vec<String>,
    pub genders: Vec<DistributionEntry>,
    pub religious_beliefs: Vec<String>,
    pub educational_levels: Vec<EducationLevel>,
    pub spoken_languages: Vec<LanguageSkill>,
    pub socio_economic_stati: Vec<SocioEconomicClass>,
    pub skill_levels: Vec<SkillLevel>,
    pub workplace_type: Option<WorkplaceType>,
    pub average_tenure: Option<f64>,
}

impl GroupProfile {
    pub const FIELDS: &'static [&'static str] = &[
        "description",
        "ageRange",
        "locations",
        "countries",
        "ethnicities",
        "genders",
        "religiousBeliefs",
        "educationalLevels",
        "spokenLanguages",
        "socioEconomicStati",
        "skillLevels",
        "workplaceType",
        "averageTenure",
    ];

    /// Whether each entry of [`Self::FIELDS`] carries a value.
    pub fn populated(&self) -> [bool; 13] {
        [
            self.description.is_some(),
            self.age_range.is_some(),
            !self.locations.is_empty(),
            !self.countries.is_empty(),
            !self.ethnicities.is_empty(),
            !self.genders.is_empty(),
            !self.religious_beliefs.is_empty(),
            !self.educational_levels.is_empty(),
            !self.spoken_languages.is_empty(),
            !self.socio_economic_stati.is_empty(),
            !self.skill_levels.is_empty(),
            self.workplace_type.is_some(),
            self.average_tenure.is_some(),
        ]
    }

    pub fn is_empty(&self) -> bool {
        self.populated().iter().all(|p| !p)
    }
}

/// Attributes common to every person recorded in the card.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Individual {
    pub id: String,
    pub name: Option<String>,
    pub spoken_languages: Vec<LanguageSkill>,
    pub ethnicity: Option<String>,
    pub religious_belief: Option<String>,
    pub gender: Option<String>,
    pub age: Option<i64>,
    pub socio_economic_status: Option<SocioEconomicClass>,
    pub skill_level: Option<SkillLevel>,
    pub tenure: Option<f64>,
    pub education_level: Option<EducationLevel>,
    pub country: Option<CountryCode>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Membership {
    pub team: Ref,
    pub role: String,
    pub start: Date,
    pub end: Option<Date>,
}

/// An individual attached to teams. `participant_id` is set only for
/// participants internal to the responsible organization.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Participant {
    pub individual: Individual,
    pub memberships: Vec<Membership>,
    pub participant_id: Option<String>,
    pub origin: Origin,
}

impl Participant {
    pub fn id(&self) -> &str {
        &self.individual.id
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct LabourForce {
    pub sourcing: Sourcing,
    pub salary: Option<Salary>,
    pub labour_rights: Option<String>,
    pub company: Option<String>,
    pub country: Option<CountryCode>,
}

impl LabourForce {
    pub fn new(sourcing: Sourcing) -> Self {
        LabourForce { sourcing, salary: None, labour_rights: None, company: None, country: None }
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct TesterDetail {
    pub test_type: Option<TestType>,
    pub platform: Option<String>,
    pub task_description: Option<String>,
    pub iterations: Option<i64>,
    pub duration_hours: Option<f64>,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct ReporterDetail {
    pub reporting_platforms: Vec<String>,
    pub contribution_count: Option<i64>,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct NonCodingDetail {
    pub contributor_roles: Vec<ContributorRole>,
    pub contribution_count: Option<i64>,
}

/// Kind-specific team attributes.
#[derive(Clone, Debug, PartialEq)]
pub enum TeamDetail {
    Development,
    Tester(TesterDetail),
    PublicReporter(ReporterDetail),
    NonCodingContributor(NonCodingDetail),
}

impl TeamDetail {
    pub fn empty(kind: TeamKind) -> Self {
        match kind {
            TeamKind::Development => TeamDetail::Development,
            TeamKind::Tester => TeamDetail::Tester(TesterDetail::default()),
            TeamKind::PublicReporter => TeamDetail::PublicReporter(ReporterDetail::default()),
            TeamKind::NonCodingContributor => {
                TeamDetail::NonCodingContributor(NonCodingDetail::default())
            }
        }
    }

    pub fn kind(&self) -> TeamKind {
        match self {
            TeamDetail::Development => TeamKind::Development,
            TeamDetail::Tester(_) => TeamKind::Tester,
            TeamDetail::PublicReporter(_) => TeamKind::PublicReporter,
            TeamDetail::NonCodingContributor(_) => TeamKind::NonCodingContributor,
        }
    }

    /// Field names and populated flags of the kind-specific attributes.
    pub fn populated(&self) -> Vec<(&'static str, bool)> {
        match self {
            TeamDetail::Development => Vec::new(),
            TeamDetail::Tester(t) => alloc::vec![
                ("testType", t.test_type.is_some()),
                ("platform", t.platform.is_some()),
                ("taskDescription", t.task_description.is_some()),
                ("iterations", t.iterations.is_some()),
                ("durationHours", t.duration_hours.is_some()),
            ],
            TeamDetail::PublicReporter(r) => alloc::vec![
                ("reportingPlatforms", !r.reporting_platforms.is_empty()),
                ("contributionCount", r.contribution_count.is_some()),
            ],
            TeamDetail::NonCodingContributor(n) => alloc::vec![
                ("contributorRoles", !n.contributor_roles.is_empty()),
                ("contributionCount", n.contribution_count.is_some()),
            ],
        }
    }
}

/// A team. `kind` is what the declaration says; [`Team::new`] keeps it in
/// step with `detail`, and validation reports any divergence.
#[derive(Clone, Debug, PartialEq)]
pub struct Team {
    pub id: String,
    pub kind: TeamKind,
    pub profile: GroupProfile,
    pub team_size: Option<i64>,
    pub start_date: Option<Date>,
    pub labour_force: Option<LabourForce>,
    pub members: Vec<Ref>,
    pub detail: TeamDetail,
    pub origin: Origin,
}

impl Team {
    pub fn new(id: impl Into<String>, detail: TeamDetail) -> Self {
        Team {
            id: id.into(),
            kind: detail.kind(),
            profile: GroupProfile::default(),
            team_size: None,
            start_date: None,
            labour_force: None,
            members: Vec::new(),
            detail,
            origin: Origin::default(),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Organization {
    pub id: String,
    pub name: String,
    pub profile: GroupProfile,
    pub org_type: Option<OrganizationType>,
    pub origin: Origin,
}

#[derive(Clone, Debug, PartialEq)]
pub struct TargetCommunity {
    pub id: String,
    pub profile: GroupProfile,
    pub needs: Option<String>,
    pub origin: Origin,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SocialContext {
    pub id: String,
    pub description: String,
    pub spoken_languages: Vec<LanguageSkill>,
    pub cultural_traits: Vec<String>,
    pub countries: Vec<CountryCode>,
    pub origin: Origin,
}

#[derive(Clone, Debug, PartialEq)]
pub struct UseCase {
    pub id: String,
    pub description: String,
    pub target_communities: Vec<Ref>,
    pub social_context: Option<Ref>,
    pub origin: Origin,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Adaptation {
    pub id: String,
    pub description: String,
    pub target_communities: Vec<Ref>,
    pub related_teams: Vec<Ref>,
    pub release: Option<String>,
    pub origin: Origin,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Body {
    pub id: String,
    pub name: String,
    pub body_type: Option<BodyType>,
    /// Participants and/or organizations.
    pub members: Vec<Ref>,
    pub decision_process: Option<String>,
    pub profile: Option<GroupProfile>,
    pub origin: Origin,
}

/// Governance rule, kept as opaque text.
#[derive(Clone, Debug, PartialEq)]
pub struct Rule {
    pub id: String,
    pub text: String,
    pub external_ref: Option<String>,
    pub origin: Origin,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Funder {
    pub id: String,
    pub name: String,
    pub funder_type: Option<FunderType>,
    pub description: Option<String>,
    pub origin: Origin,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Governance {
    pub bodies: Vec<Body>,
    pub rules: Vec<Rule>,
    pub funders: Vec<Funder>,
    pub shareholders: Vec<String>,
    pub legal_regulation: Option<String>,
    pub origin: Origin,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Card {
    pub project_name: String,
    pub description: String,
    pub teams: Vec<Team>,
    pub participants: Vec<Participant>,
    pub organizations: Vec<Organization>,
    pub use_cases: Vec<UseCase>,
    pub social_contexts: Vec<SocialContext>,
    pub target_communities: Vec<TargetCommunity>,
    pub adaptations: Vec<Adaptation>,
    pub governance: Option<Governance>,
    pub origin: Origin,
}

/// Kinds of id-bearing elements, used for reference resolution.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ElementKind {
    Team,
    Participant,
    Organization,
    UseCase,
    SocialContext,
    TargetCommunity,
    Adaptation,
    Body,
    Rule,
    Funder,
}

impl ElementKind {
    pub fn as_str(self) -> &'static str {
        match self {
            ElementKind::Team => "team",
            ElementKind::Participant => "participant",
            ElementKind::Organization => "organization",
            ElementKind::UseCase => "useCase",
            ElementKind::SocialContext => "socialContext",
            ElementKind::TargetCommunity => "targetCommunity",
            ElementKind::Adaptation => "adaptation",
            ElementKind::Body => "body",
            ElementKind::Rule => "rule",
            ElementKind::Funder => "funder",
        }
    }
}

/// Any id-bearing element, for checked insertion.
#[derive(Clone, Debug, PartialEq)]
pub enum Element {
    Team(Team),
    Participant(Participant),
    Organization(Organization),
    UseCase(UseCase),
    SocialContext(SocialContext),
    TargetCommunity(TargetCommunity),
    Adaptation(Adaptation),
    Body(Body),
    Rule(Rule),
    Funder(Funder),
}

impl Element {
    pub fn id(&self) -> &str {
        match self {
            Element::Team(e) => &e.id,
            Element::Participant(e) => e.id(),
            Element::Organization(e) => &e.id,
            Element::UseCase(e) => &e.id,
            Element::SocialContext(e) => &e.id,
            Element::TargetCommunity(e) => &e.id,
            Element::Adaptation(e) => &e.id,
            Element::Body(e) => &e.id,
            Element::Rule(e) => &e.id,
            Element::Funder(e) => &e.id,
        }
    }
}

impl Card {
    pub fn new(project_name: &str) -> Result<Self, ModelError> {
        let name = project_name.trim();
        if name.is_empty() {
            return Err(ModelError::EmptyName);
        }
        Ok(Card { project_name: name.into(), ..Card::default() })
    }

    /// Every declared id with its kind and origin, in section order.
    pub fn declarations(&self) -> Vec<(&str, ElementKind, &Origin)> {
        let mut out = Vec::new();
        out.extend(self.teams.iter().map(|e| (e.id.as_str(), ElementKind::Team, &e.origin)));
        out.extend(self.participants.iter().map(|e| (e.id(), ElementKind::Participant, &e.origin)));
        out.extend(
            self.organizations.iter().map(|e| (e.id.as_str(), ElementKind::Organization, &e.origin)),
        );
        out.extend(self.use_cases.iter().map(|e| (e.id.as_str(), ElementKind::UseCase, &e.origin)));
        out.extend(
            self.social_contexts.iter().map(|e| (e.id.as_str(), ElementKind::SocialContext, &e.origin)),
        );
        out.extend(
            self.target_communities
                .iter()
                .map(|e| (e.id.as_str(), ElementKind::TargetCommunity, &e.origin)),
        );
        out.extend(self.adaptations.iter().map(|e| (e.id.as_str(), ElementKind::Adaptation, &e.origin)));
        if let Some(g) = &self.governance {
            out.extend(g.bodies.iter().map(|e| (e.id.as_str(), ElementKind::Body, &e.origin)));
            out.extend(g.rules.iter().map(|e| (e.id.as_str(), ElementKind::Rule, &e.origin)));
            out.extend(g.funders.iter().map(|e| (e.id.as_str(), ElementKind::Funder, &e.origin)));
        }
        out
    }

    pub fn contains_id(&self, id: &str) -> bool {
        self.declarations().iter().any(|(d, _, _)| *d == id)
    }

    /// Adds an element, rejecting ids already used by any element kind.
    pub fn insert(&mut self, element: Element) -> Result<(), ModelError> {
        if self.contains_id(element.id()) {
            return Err(ModelError::DuplicateId(element.id().into()));
        }
        self.push(element);
        Ok(())
    }

    /// Adds an element without the uniqueness check.
    pub fn push(&mut self, element: Element) {
        match element {
            Element::Team(e) => self.teams.push(e),
            Element::Participant(e) => self.participants.push(e),
            Element::Organization(e) => self.organizations.push(e),
            Element::UseCase(e) => self.use_cases.push(e),
            Element::SocialContext(e) => self.social_contexts.push(e),
            Element::TargetCommunity(e) => self.target_communities.push(e),
            Element::Adaptation(e) => self.adaptations.push(e),
            Element::Body(e) => self.governance_mut().bodies.push(e),
            Element::Rule(e) => self.governance_mut().rules.push(e),
            Element::Funder(e) => self.governance_mut().funders.push(e),
        }
    }

    pub fn governance_mut(&mut self) -> &mut Governance {
        self.governance.get_or_insert_with(Governance::default)
    }

    pub fn team(&self, id: &str) -> Option<&Team> {
        self.teams.iter().find(|t| t.id == id)
    }

    pub fn target_community(&self, id: &str) -> Option<&TargetCommunity> {
        self.target_communities.iter().find(|t| t.id == id)
    }

    pub fn adaptation(&self, id: &str) -> Option<&Adaptation> {
        self.adaptations.iter().find(|t| t.id == id)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn new_empty_card() {
        let card = Card::new("Decidim").unwrap();
        assert_eq!(card.project_name, "Decidim");
        assert!(card.teams.is_empty() && card.adaptations.is_empty());
        assert!(Card::new("Besser").unwrap().governance.is_none());
        assert_eq!(Card::new(""), Err(ModelError::EmptyName));
        assert_eq!(Card::new("   "), Err(ModelError::EmptyName));
    }

    #[test]
    fn duplicate_ids_rejected_across_kinds() {
        let mut card = Card::new("X").unwrap();
        card.insert(Element::Team(Team::new("core", TeamDetail::Development))).unwrap();
        let funder = Funder {
            id: "core".into(),
            name: "ACME".into(),
            funder_type: None,
            description: None,
            origin: Origin::default(),
        };
        assert_eq!(
            card.insert(Element::Funder(funder)),
            Err(ModelError::DuplicateId("core".into()))
        );
        assert!(card.governance.is_none());
    }

    #[test]
    fn origin_ignored_by_equality() {
        use crate::diag::SourceSpan;
        let a = Ref::new("x");
        let b = Ref::at("x", SourceSpan::new("f", (3, 1), (3, 2)));
        assert_eq!(a, b);
        assert_ne!(a, Ref::new("y"));
    }
}
