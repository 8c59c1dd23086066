//! JSON export and import of cards (schema version 1.0).
//!
//! Key order follows the struct field order below, which is the published
//! schema order (see `docs/card.schema.json`). Optional values and empty
//! lists inside elements are omitted; top-level section arrays are always
//! present.

use divcard_core::diag::{Code, Diagnostic, SourceSpan};
use divcard_core::model::{self as m, Card};
use serde::{Deserialize, Serialize};

pub const SCHEMA_VERSION: &str = "1.0";

#[derive(Debug, thiserror::Error)]
pub enum EmitError {
    #[error("card has unresolved references or other validation errors")]
    Unresolved(Vec<Diagnostic>),
}

impl EmitError {
    pub fn diagnostics(&self) -> Vec<Diagnostic> {
        match self {
            EmitError::Unresolved(errors) => errors
                .iter()
                .map(|d| Diagnostic::new(Code::EmitUnresolved, format!("cannot export: {}", d.message), d.span.clone()))
                .collect(),
        }
    }
}

/// JSON_SCHEMA_MISMATCH: `path` is a JSONPath-like pointer such as
/// `$.participants.teams[0].teamSize`.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
#[error("{path}: {message}")]
pub struct ImportError {
    pub path: String,
    pub message: String,
}

impl ImportError {
    pub fn to_diagnostic(&self, file: &str) -> Diagnostic {
        Diagnostic::new(Code::JsonSchemaMismatch, self.to_string(), SourceSpan::new(file, (1, 1), (1, 1)))
    }
}

/// Refuses cards that do not validate cleanly.
pub fn check_exportable(card: &Card) -> Result<(), EmitError> {
    let report = divcard_core::validate(card);
    if report.resolved {
        Ok(())
    } else {
        Err(EmitError::Unresolved(report.diagnostics.into_iter().filter(Diagnostic::is_error).collect()))
    }
}

pub fn emit_json(card: &Card) -> Result<String, EmitError> {
    check_exportable(card)?;
    Ok(emit_json_unchecked(card))
}

/// Serializes without the validation gate; used by tests and tooling that
/// already validated.
pub fn emit_json_unchecked(card: &Card) -> String {
    to_pretty(&Document::from(card))
}

/// Two-space indent, LF line endings, trailing newline.
pub fn to_pretty<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable DTO");
    s.push('\n');
    s
}

pub fn import_json(text: &str) -> Result<Card, ImportError> {
    let value: serde_json::Value =
        serde_json::from_str(text).map_err(|e| ImportError { path: "$".into(), message: e.to_string() })?;
    match value.get("schemaVersion") {
        Some(serde_json::Value::String(v)) if v == SCHEMA_VERSION => {}
        Some(other) => {
            return Err(ImportError {
                path: "$.schemaVersion".into(),
                message: format!("unsupported schema version {other}, expected \"{SCHEMA_VERSION}\""),
            })
        }
        None => return Err(ImportError { path: "$.schemaVersion".into(), message: "missing schemaVersion".into() }),
    }
    let doc: Document = serde_path_to_error::deserialize(value).map_err(|e| {
        let path = e.path().to_string();
        let path = if path == "." { "$".to_string() } else { format!("$.{path}") };
        ImportError { path, message: e.into_inner().to_string() }
    })?;
    doc.into_card()
}

fn is_default<T: Default + PartialEq>(v: &T) -> bool {
    *v == T::default()
}

#[derive(Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
struct Document {
    schema_version: String,
    project: Project,
    participants: Participants,
    usage_context: UsageContext,
    governance: Option<Governance>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Project {
    name: String,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    description: String,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Participants {
    teams: Vec<Team>,
    participants: Vec<Participant>,
    organizations: Vec<Organization>,
}

#[derive(Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
struct UsageContext {
    use_cases: Vec<UseCase>,
    social_contexts: Vec<SocialContext>,
    target_communities: Vec<TargetCommunity>,
    adaptations: Vec<Adaptation>,
}

#[derive(Serialize, Deserialize, Clone, PartialEq, Default)]
#[serde(deny_unknown_fields)]
struct Code2 {
    code: String,
    #[serde(rename = "displayName")]
    display_name: String,
}

#[derive(Serialize, Deserialize, Clone, PartialEq)]
#[serde(deny_unknown_fields)]
struct Skill {
    language: Code2,
    proficiency: String,
}

#[derive(Serialize, Deserialize, Clone, Copy, PartialEq)]
#[serde(deny_unknown_fields)]
struct AgeRange {
    min: i64,
    max: i64,
}

#[derive(Serialize, Deserialize, Clone, PartialEq)]
#[serde(deny_unknown_fields)]
struct Share {
    label: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    percent: Option<f64>,
}

/// Named token, or `{"other": "free text"}`.
#[derive(Serialize, Deserialize, Clone, PartialEq)]
#[serde(untagged)]
enum Open {
    Token(String),
    Other { other: String },
}

#[derive(Serialize, Deserialize, Clone, PartialEq)]
#[serde(untagged)]
enum Salary {
    Text(String),
    Amount { amount: f64, currency: String },
}

#[derive(Serialize, Deserialize, Default, PartialEq)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
struct Profile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    description: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    age_range: Option<AgeRange>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    locations: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    countries: Vec<Code2>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    ethnicities: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    genders: Vec<Share>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    religious_beliefs: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    educational_levels: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    spoken_languages: Vec<Skill>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    socio_economic_stati: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    skill_levels: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    workplace_type: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    average_tenure: Option<f64>,
}

#[derive(Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
struct LabourForce {
    sourcing: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    salary: Option<Salary>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    labour_rights: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    company: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    country: Option<Code2>,
}

#[derive(Serialize, Deserialize, Default)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
struct Detail {
    kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    test_type: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    platform: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    task_description: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    iterations: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    duration_hours: Option<f64>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    reporting_platforms: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    contributor_roles: Vec<Open>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    contribution_count: Option<i64>,
}

#[derive(Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
struct Team {
    id: String,
    kind: String,
    #[serde(default, skip_serializing_if = "is_default")]
    profile: Profile,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    team_size: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    start_date: Option<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    members: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    labour_force: Option<LabourForce>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    detail: Option<Detail>,
}

#[derive(Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
struct Membership {
    team: String,
    role: String,
    start: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    end: Option<String>,
}

#[derive(Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
struct Participant {
    id: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    participant_id: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    gender: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    age: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    ethnicity: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    religious_belief: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    country: Option<Code2>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    spoken_languages: Vec<Skill>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    education_level: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    socio_economic_status: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    skill_level: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    tenure: Option<f64>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    memberships: Vec<Membership>,
}

#[derive(Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
struct Organization {
    id: String,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    name: String,
    #[serde(default, rename = "type", skip_serializing_if = "Option::is_none")]
    org_type: Option<Open>,
    #[serde(default, skip_serializing_if = "is_default")]
    profile: Profile,
}

#[derive(Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
struct UseCase {
    id: String,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    description: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    target_communities: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    social_context: Option<String>,
}

#[derive(Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
struct SocialContext {
    id: String,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    description: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    spoken_languages: Vec<Skill>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    cultural_traits: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    countries: Vec<Code2>,
}

#[derive(Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
struct TargetCommunity {
    id: String,
    #[serde(default, skip_serializing_if = "is_default")]
    profile: Profile,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    needs: Option<String>,
}

#[derive(Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
struct Adaptation {
    id: String,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    description: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    target_communities: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    related_teams: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    release: Option<String>,
}

#[derive(Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
struct Governance {
    bodies: Vec<Body>,
    rules: Vec<Rule>,
    funders: Vec<Funder>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    shareholders: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    legal_regulation: Option<String>,
}

#[derive(Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
struct Body {
    id: String,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    name: String,
    #[serde(default, rename = "type", skip_serializing_if = "Option::is_none")]
    body_type: Option<Open>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    members: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    decision_process: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    profile: Option<Profile>,
}

#[derive(Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
struct Rule {
    id: String,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    text: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    external_ref: Option<String>,
}

#[derive(Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
struct Funder {
    id: String,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    name: String,
    #[serde(default, rename = "type", skip_serializing_if = "Option::is_none")]
    funder_type: Option<Open>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    description: Option<String>,
}

// ---- model -> DTO -------------------------------------------------------

fn country(c: &m::CountryCode) -> Code2 {
    Code2 { code: c.as_str().into(), display_name: c.entry().map(|e| e.name.to_string()).unwrap_or_default() }
}

fn skill(s: &m::LanguageSkill) -> Skill {
    Skill {
        language: Code2 {
            code: s.language.as_str().into(),
            display_name: s.language.entry().map(|e| e.display_name()).unwrap_or_default(),
        },
        proficiency: s.proficiency.as_str().into(),
    }
}

fn open(token: Option<&str>, label: &str) -> Open {
    match token {
        Some(t) => Open::Token(t.into()),
        None => Open::Other { other: label.into() },
    }
}

fn date(d: &m::Date) -> String {
    d.to_string()
}

fn ids(refs: &[m::Ref]) -> Vec<String> {
    refs.iter().map(|r| r.id.clone()).collect()
}

impl From<&m::GroupProfile> for Profile {
    fn from(p: &m::GroupProfile) -> Self {
        Profile {
            description: p.description.clone(),
            age_range: p.age_range.map(|r| AgeRange { min: r.min, max: r.max }),
            locations: p.locations.clone(),
            countries: p.countries.iter().map(country).collect(),
            ethnicities: p.ethnicities.clone(),
            genders: p.genders.iter().map(|g| Share { label: g.label.clone(), percent: g.percent }).collect(),
            religious_beliefs: p.religious_beliefs.clone(),
            educational_levels: p.educational_levels.iter().map(|e| e.as_str().into()).collect(),
            spoken_languages: p.spoken_languages.iter().map(skill).collect(),
            socio_economic_stati: p.socio_economic_stati.iter().map(|e| e.as_str().into()).collect(),
            skill_levels: p.skill_levels.iter().map(|e| e.as_str().into()).collect(),
            workplace_type: p.workplace_type.map(|w| w.as_str().into()),
            average_tenure: p.average_tenure,
        }
    }
}

impl From<&m::Team> for Team {
    fn from(t: &m::Team) -> Self {
        let mut d = Detail { kind: t.detail.kind().as_str().into(), ..Detail::default() };
        match &t.detail {
            m::TeamDetail::Development => {}
            m::TeamDetail::Tester(x) => {
                d.test_type = x.test_type.map(|v| v.as_str().into());
                d.platform = x.platform.clone();
                d.task_description = x.task_description.clone();
                d.iterations = x.iterations;
                d.duration_hours = x.duration_hours;
            }
            m::TeamDetail::PublicReporter(x) => {
                d.reporting_platforms = x.reporting_platforms.clone();
                d.contribution_count = x.contribution_count;
            }
            m::TeamDetail::NonCodingContributor(x) => {
                d.contributor_roles = x.contributor_roles.iter().map(|r| open(r.token(), r.label())).collect();
                d.contribution_count = x.contribution_count;
            }
        }
        let trivial = t.detail == m::TeamDetail::empty(t.kind);
        Team {
            id: t.id.clone(),
            kind: t.kind.as_str().into(),
            profile: (&t.profile).into(),
            team_size: t.team_size,
            start_date: t.start_date.as_ref().map(date),
            members: ids(&t.members),
            labour_force: t.labour_force.as_ref().map(|l| LabourForce {
                sourcing: l.sourcing.as_str().into(),
                salary: l.salary.as_ref().map(|s| match s {
                    m::Salary::Text(s) => Salary::Text(s.clone()),
                    m::Salary::Amount { amount, currency } => {
                        Salary::Amount { amount: *amount, currency: currency.clone() }
                    }
                }),
                labour_rights: l.labour_rights.clone(),
                company: l.company.clone(),
                country: l.country.as_ref().map(country),
            }),
            detail: (!trivial).then_some(d),
        }
    }
}

impl From<&Card> for Document {
    fn from(c: &Card) -> Self {
        Document {
            schema_version: SCHEMA_VERSION.into(),
            project: Project { name: c.project_name.clone(), description: c.description.clone() },
            participants: Participants {
                teams: c.teams.iter().map(Team::from).collect(),
                participants: c
                    .participants
                    .iter()
                    .map(|p| {
                        let i = &p.individual;
                        Participant {
                            id: i.id.clone(),
                            name: i.name.clone(),
                            participant_id: p.participant_id.clone(),
                            gender: i.gender.clone(),
                            age: i.age,
                            ethnicity: i.ethnicity.clone(),
                            religious_belief: i.religious_belief.clone(),
                            country: i.country.as_ref().map(country),
                            spoken_languages: i.spoken_languages.iter().map(skill).collect(),
                            education_level: i.education_level.map(|v| v.as_str().into()),
                            socio_economic_status: i.socio_economic_status.map(|v| v.as_str().into()),
                            skill_level: i.skill_level.map(|v| v.as_str().into()),
                            tenure: i.tenure,
                            memberships: p
                                .memberships
                                .iter()
                                .map(|ms| Membership {
                                    team: ms.team.id.clone(),
                                    role: ms.role.clone(),
                                    start: date(&ms.start),
                                    end: ms.end.as_ref().map(date),
                                })
                                .collect(),
                        }
                    })
                    .collect(),
                organizations: c
                    .organizations
                    .iter()
                    .map(|o| Organization {
                        id: o.id.clone(),
                        name: o.name.clone(),
                        org_type: o.org_type.as_ref().map(|t| open(t.token(), t.label())),
                        profile: (&o.profile).into(),
                    })
                    .collect(),
            },
            usage_context: UsageContext {
                use_cases: c
                    .use_cases
                    .iter()
                    .map(|u| UseCase {
                        id: u.id.clone(),
                        description: u.description.clone(),
                        target_communities: ids(&u.target_communities),
                        social_context: u.social_context.as_ref().map(|r| r.id.clone()),
                    })
                    .collect(),
                social_contexts: c
                    .social_contexts
                    .iter()
                    .map(|s| SocialContext {
                        id: s.id.clone(),
                        description: s.description.clone(),
                        spoken_languages: s.spoken_languages.iter().map(skill).collect(),
                        cultural_traits: s.cultural_traits.clone(),
                        countries: s.countries.iter().map(country).collect(),
                    })
                    .collect(),
                target_communities: c
                    .target_communities
                    .iter()
                    .map(|t| TargetCommunity { id: t.id.clone(), profile: (&t.profile).into(), needs: t.needs.clone() })
                    .collect(),
                adaptations: c
                    .adaptations
                    .iter()
                    .map(|a| Adaptation {
                        id: a.id.clone(),
                        description: a.description.clone(),
                        target_communities: ids(&a.target_communities),
                        related_teams: ids(&a.related_teams),
                        release: a.release.clone(),
                    })
                    .collect(),
            },
            governance: c.governance.as_ref().map(|g| Governance {
                bodies: g
                    .bodies
                    .iter()
                    .map(|b| Body {
                        id: b.id.clone(),
                        name: b.name.clone(),
                        body_type: b.body_type.as_ref().map(|t| open(t.token(), t.label())),
                        members: ids(&b.members),
                        decision_process: b.decision_process.clone(),
                        profile: b.profile.as_ref().map(Profile::from),
                    })
                    .collect(),
                rules: g
                    .rules
                    .iter()
                    .map(|r| Rule { id: r.id.clone(), text: r.text.clone(), external_ref: r.external_ref.clone() })
                    .collect(),
                funders: g
                    .funders
                    .iter()
                    .map(|f| Funder {
                        id: f.id.clone(),
                        name: f.name.clone(),
                        funder_type: f.funder_type.as_ref().map(|t| open(t.token(), t.label())),
                        description: f.description.clone(),
                    })
                    .collect(),
                shareholders: g.shareholders.clone(),
                legal_regulation: g.legal_regulation.clone(),
            }),
        }
    }
}

// ---- DTO -> model -------------------------------------------------------

/// Tracks the JSONPath of the node being converted, for error messages.
struct Conv {
    path: Vec<String>,
}

impl Conv {
    fn at<T>(&mut self, seg: impl Into<String>, f: impl FnOnce(&mut Self) -> Result<T, ImportError>) -> Result<T, ImportError> {
        self.path.push(seg.into());
        let r = f(self);
        self.path.pop();
        r
    }

    fn err<T>(&self, field: &str, message: String) -> Result<T, ImportError> {
        let mut path = String::from("$");
        for seg in &self.path {
            if seg.starts_with('[') {
                path.push_str(seg);
            } else {
                path.push('.');
                path.push_str(seg);
            }
        }
        if !field.is_empty() {
            path.push('.');
            path.push_str(field);
        }
        Err(ImportError { path, message })
    }

    fn token<T>(&self, field: &str, s: &str, parse: impl Fn(&str) -> Option<T>) -> Result<T, ImportError> {
        parse(s).map_or_else(|| self.err(field, format!("unknown value \"{s}\"")), Ok)
    }

    fn tokens<T>(&self, field: &str, v: &[String], parse: impl Fn(&str) -> Option<T> + Copy) -> Result<Vec<T>, ImportError> {
        v.iter().map(|s| self.token(field, s, parse)).collect()
    }

    fn date(&self, field: &str, s: &str) -> Result<m::Date, ImportError> {
        m::Date::parse_iso(s).map_or_else(|_| self.err(field, format!("\"{s}\" is not a YYYY-MM-DD date")), Ok)
    }

    fn skills(&self, field: &str, v: &[Skill]) -> Result<Vec<m::LanguageSkill>, ImportError> {
        v.iter()
            .map(|s| {
                Ok(m::LanguageSkill {
                    language: m::LanguageCode::from_token(&s.language.code),
                    proficiency: self.token(field, &s.proficiency, m::Proficiency::from_token)?,
                })
            })
            .collect()
    }

    fn open<T>(&self, field: &str, v: &Open, parse: impl Fn(&str) -> Option<T>, other: impl Fn(String) -> T) -> Result<T, ImportError> {
        match v {
            Open::Token(s) => self.token(field, s, parse),
            Open::Other { other: s } => Ok(other(s.clone())),
        }
    }

    fn profile(&self, p: &Profile) -> Result<m::GroupProfile, ImportError> {
        Ok(m::GroupProfile {
            description: p.description.clone(),
            age_range: p.age_range.map(|r| m::AgeRange { min: r.min, max: r.max }),
            locations: p.locations.clone(),
            countries: countries(&p.countries),
            ethnicities: p.ethnicities.clone(),
            genders: p.genders.iter().map(|g| m::DistributionEntry::new(g.label.clone(), g.percent)).collect(),
            religious_beliefs: p.religious_beliefs.clone(),
            educational_levels: self.tokens("educationalLevels", &p.educational_levels, m::EducationLevel::from_token)?,
            spoken_languages: self.skills("spokenLanguages", &p.spoken_languages)?,
            socio_economic_stati: self.tokens("socioEconomicStati", &p.socio_economic_stati, m::SocioEconomicClass::from_token)?,
            skill_levels: self.tokens("skillLevels", &p.skill_levels, m::SkillLevel::from_token)?,
            workplace_type: p
                .workplace_type
                .as_deref()
                .map(|w| self.token("workplaceType", w, m::WorkplaceType::from_token))
                .transpose()?,
            average_tenure: p.average_tenure,
        })
    }

    fn team(&mut self, t: &Team) -> Result<m::Team, ImportError> {
        let kind = self.token("kind", &t.kind, m::TeamKind::from_token)?;
        let profile = self.at("profile", |c| c.profile(&t.profile))?;
        let detail = match &t.detail {
            None => m::TeamDetail::empty(kind),
            Some(d) => self.at("detail", |c| c.detail(d))?,
        };
        let labour_force = match &t.labour_force {
            None => None,
            Some(l) => Some(self.at("labourForce", |c| {
                Ok(m::LabourForce {
                    sourcing: c.token("sourcing", &l.sourcing, m::Sourcing::from_token)?,
                    salary: l.salary.as_ref().map(|s| match s {
                        Salary::Text(s) => m::Salary::Text(s.clone()),
                        Salary::Amount { amount, currency } => m::Salary::Amount { amount: *amount, currency: currency.clone() },
                    }),
                    labour_rights: l.labour_rights.clone(),
                    company: l.company.clone(),
                    country: l.country.as_ref().map(|c| m::CountryCode::from_token(&c.code)),
                })
            })?),
        };
        Ok(m::Team {
            id: t.id.clone(),
            kind,
            profile,
            team_size: t.team_size,
            start_date: t.start_date.as_deref().map(|s| self.date("startDate", s)).transpose()?,
            labour_force,
            members: refs(&t.members),
            detail,
            origin: m::Origin::default(),
        })
    }

    fn detail(&self, d: &Detail) -> Result<m::TeamDetail, ImportError> {
        let kind = self.token("kind", &d.kind, m::TeamKind::from_token)?;
        Ok(match kind {
            m::TeamKind::Development => m::TeamDetail::Development,
            m::TeamKind::Tester => m::TeamDetail::Tester(m::TesterDetail {
                test_type: d.test_type.as_deref().map(|s| self.token("testType", s, m::TestType::from_token)).transpose()?,
                platform: d.platform.clone(),
                task_description: d.task_description.clone(),
                iterations: d.iterations,
                duration_hours: d.duration_hours,
            }),
            m::TeamKind::PublicReporter => m::TeamDetail::PublicReporter(m::ReporterDetail {
                reporting_platforms: d.reporting_platforms.clone(),
                contribution_count: d.contribution_count,
            }),
            m::TeamKind::NonCodingContributor => m::TeamDetail::NonCodingContributor(m::NonCodingDetail {
                contributor_roles: d
                    .contributor_roles
                    .iter()
                    .map(|r| self.open("contributorRoles", r, m::ContributorRole::from_token, m::ContributorRole::Other))
                    .collect::<Result<_, _>>()?,
                contribution_count: d.contribution_count,
            }),
        })
    }

    fn participant(&self, p: &Participant) -> Result<m::Participant, ImportError> {
        Ok(m::Participant {
            individual: m::Individual {
                id: p.id.clone(),
                name: p.name.clone(),
                spoken_languages: self.skills("spokenLanguages", &p.spoken_languages)?,
                ethnicity: p.ethnicity.clone(),
                religious_belief: p.religious_belief.clone(),
                gender: p.gender.clone(),
                age: p.age,
                socio_economic_status: p
                    .socio_economic_status
                    .as_deref()
                    .map(|s| self.token("socioEconomicStatus", s, m::SocioEconomicClass::from_token))
                    .transpose()?,
                skill_level: p.skill_level.as_deref().map(|s| self.token("skillLevel", s, m::SkillLevel::from_token)).transpose()?,
                tenure: p.tenure,
                education_level: p
                    .education_level
                    .as_deref()
                    .map(|s| self.token("educationLevel", s, m::EducationLevel::from_token))
                    .transpose()?,
                country: p.country.as_ref().map(|c| m::CountryCode::from_token(&c.code)),
            },
            memberships: p
                .memberships
                .iter()
                .map(|ms| {
                    Ok(m::Membership {
                        team: m::Ref::new(ms.team.clone()),
                        role: ms.role.clone(),
                        start: self.date("memberships.start", &ms.start)?,
                        end: ms.end.as_deref().map(|e| self.date("memberships.end", e)).transpose()?,
                    })
                })
                .collect::<Result<_, ImportError>>()?,
            participant_id: p.participant_id.clone(),
            origin: m::Origin::default(),
        })
    }
}

fn refs(v: &[String]) -> Vec<m::Ref> {
    v.iter().map(|s| m::Ref::new(s.clone())).collect()
}

fn countries(v: &[Code2]) -> Vec<m::CountryCode> {
    v.iter().map(|c| m::CountryCode::from_token(&c.code)).collect()
}

fn each<T, U>(
    c: &mut Conv,
    name: &str,
    items: &[T],
    mut f: impl FnMut(&mut Conv, &T) -> Result<U, ImportError>,
) -> Result<Vec<U>, ImportError> {
    c.at(name, |c| {
        items.iter().enumerate().map(|(i, item)| c.at(format!("[{i}]"), |c| f(c, item))).collect()
    })
}

impl Document {
    fn into_card(self) -> Result<Card, ImportError> {
        let mut c = Conv { path: Vec::new() };
        let p = &self.participants;
        let u = &self.usage_context;
        let teams = c.at("participants", |c| each(c, "teams", &p.teams, |c, t| c.team(t)))?;
        let participants = c.at("participants", |c| each(c, "participants", &p.participants, |c, x| c.participant(x)))?;
        let organizations = c.at("participants", |c| {
            each(c, "organizations", &p.organizations, |c, o| {
                Ok(m::Organization {
                    id: o.id.clone(),
                    name: o.name.clone(),
                    profile: c.at("profile", |c| c.profile(&o.profile))?,
                    org_type: o
                        .org_type
                        .as_ref()
                        .map(|t| c.open("type", t, m::OrganizationType::from_token, m::OrganizationType::Other))
                        .transpose()?,
                    origin: m::Origin::default(),
                })
            })
        })?;
        let use_cases = c.at("usageContext", |c| {
            each(c, "useCases", &u.use_cases, |_, x| {
                Ok(m::UseCase {
                    id: x.id.clone(),
                    description: x.description.clone(),
                    target_communities: refs(&x.target_communities),
                    social_context: x.social_context.clone().map(m::Ref::new),
                    origin: m::Origin::default(),
                })
            })
        })?;
        let social_contexts = c.at("usageContext", |c| {
            each(c, "socialContexts", &u.social_contexts, |c, x| {
                Ok(m::SocialContext {
                    id: x.id.clone(),
                    description: x.description.clone(),
                    spoken_languages: c.skills("spokenLanguages", &x.spoken_languages)?,
                    cultural_traits: x.cultural_traits.clone(),
                    countries: countries(&x.countries),
                    origin: m::Origin::default(),
                })
            })
        })?;
        let target_communities = c.at("usageContext", |c| {
            each(c, "targetCommunities", &u.target_communities, |c, x| {
                Ok(m::TargetCommunity {
                    id: x.id.clone(),
                    profile: c.at("profile", |c| c.profile(&x.profile))?,
                    needs: x.needs.clone(),
                    origin: m::Origin::default(),
                })
            })
        })?;
        let adaptations = c.at("usageContext", |c| {
            each(c, "adaptations", &u.adaptations, |_, x| {
                Ok(m::Adaptation {
                    id: x.id.clone(),
                    description: x.description.clone(),
                    target_communities: refs(&x.target_communities),
                    related_teams: refs(&x.related_teams),
                    release: x.release.clone(),
                    origin: m::Origin::default(),
                })
            })
        })?;
        let governance = match &self.governance {
            None => None,
            Some(g) => Some(c.at("governance", |c| {
                Ok(m::Governance {
                    bodies: each(c, "bodies", &g.bodies, |c, b| {
                        Ok(m::Body {
                            id: b.id.clone(),
                            name: b.name.clone(),
                            body_type: b
                                .body_type
                                .as_ref()
                                .map(|t| c.open("type", t, m::BodyType::from_token, m::BodyType::Other))
                                .transpose()?,
                            members: refs(&b.members),
                            decision_process: b.decision_process.clone(),
                            profile: b.profile.as_ref().map(|p| c.at("profile", |c| c.profile(p))).transpose()?,
                            origin: m::Origin::default(),
                        })
                    })?,
                    rules: g
                        .rules
                        .iter()
                        .map(|r| m::Rule {
                            id: r.id.clone(),
                            text: r.text.clone(),
                            external_ref: r.external_ref.clone(),
                            origin: m::Origin::default(),
                        })
                        .collect(),
                    funders: each(c, "funders", &g.funders, |c, f| {
                        Ok(m::Funder {
                            id: f.id.clone(),
                            name: f.name.clone(),
                            funder_type: f
                                .funder_type
                                .as_ref()
                                .map(|t| c.open("type", t, m::FunderType::from_token, m::FunderType::Other))
                                .transpose()?,
                            description: f.description.clone(),
                            origin: m::Origin::default(),
                        })
                    })?,
                    shareholders: g.shareholders.clone(),
                    legal_regulation: g.legal_regulation.clone(),
                    origin: m::Origin::default(),
                })
            })?),
        };
        Ok(Card {
            project_name: self.project.name,
            description: self.project.description,
            teams,
            participants,
            organizations,
            use_cases,
            social_contexts,
            target_communities,
            adaptations,
            governance,
            origin: m::Origin::default(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_card_shape() {
        let card = Card::new("X").unwrap();
        let json = emit_json(&card).unwrap();
        let compact: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(
            serde_json::to_string(&compact).unwrap(),
            r#"{"governance":null,"participants":{"organizations":[],"participants":[],"teams":[]},"project":{"name":"X"},"schemaVersion":"1.0","usageContext":{"adaptations":[],"socialContexts":[],"targetCommunities":[],"useCases":[]}}"#
        );
        assert!(json.starts_with("{\n  \"schemaVersion\": \"1.0\",\n  \"project\": {\n    \"name\": \"X\"\n  },"));
        assert!(json.ends_with("}\n"));
        assert_eq!(import_json(&json).unwrap(), card);
    }

    #[test]
    fn schema_version_errors() {
        let e = import_json("{}").unwrap_err();
        assert_eq!(e.path, "$.schemaVersion");
        let e = import_json(r#"{"schemaVersion":"2.0"}"#).unwrap_err();
        assert_eq!(e.path, "$.schemaVersion");
    }

    #[test]
    fn nested_error_paths() {
        let doc = r#"{"schemaVersion":"1.0","project":{"name":"X"},
            "participants":{"teams":[{"id":"t","kind":"development","teamSize":"big"}],"participants":[],"organizations":[]},
            "usageContext":{"useCases":[],"socialContexts":[],"targetCommunities":[],"adaptations":[]},"governance":null}"#;
        let e = import_json(doc).unwrap_err();
        assert_eq!(e.path, "$.participants.teams[0].teamSize");
        let doc = doc.replace("\"teamSize\":\"big\"", "\"profile\":{\"workplaceType\":\"orbital\"}");
        let e = import_json(&doc).unwrap_err();
        assert_eq!(e.path, "$.participants.teams[0].profile.workplaceType");
    }

    #[test]
    fn unresolved_cards_are_refused() {
        let card = divcard_core::parse_card("project P\nadaptation a\n  description: \"d\"\n  relatedTeams: [ghost]\n", "u").card;
        let err = emit_json(&card).unwrap_err();
        let diags = err.diagnostics();
        assert_eq!(diags.len(), 1);
        assert_eq!(diags[0].code, Code::EmitUnresolved);
    }
}
