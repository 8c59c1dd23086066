//! Per-dimension completeness grading.
//!
//! An element's ratio is populated fields / applicable fields: the shared
//! profile fields plus the kind's own optional attributes. A dimension's
//! ratio is the mean over its elements.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::model::{BodyType, Card, GroupProfile, TeamKind};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Dimension {
    DevelopmentTeam,
    NonCodingContributors,
    Testers,
    Reporters,
    TargetCommunities,
    GovernanceBoards,
    GovernanceBodies,
}

impl Dimension {
    pub const ALL: [Dimension; 7] = [
        Dimension::DevelopmentTeam,
        Dimension::NonCodingContributors,
        Dimension::Testers,
        Dimension::Reporters,
        Dimension::TargetCommunities,
        Dimension::GovernanceBoards,
        Dimension::GovernanceBodies,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Dimension::DevelopmentTeam => "developmentTeam",
            Dimension::NonCodingContributors => "nonCodingContributors",
            Dimension::Testers => "testers",
            Dimension::Reporters => "reporters",
            Dimension::TargetCommunities => "targetCommunities",
            Dimension::GovernanceBoards => "governanceBoards",
            Dimension::GovernanceBodies => "governanceBodies",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Level {
    High,
    Limited,
    Missing,
}

impl Level {
    pub fn as_str(self) -> &'static str {
        match self {
            Level::High => "High",
            Level::Limited => "Limited",
            Level::Missing => "Missing",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Row {
    pub dimension: Dimension,
    pub populated_ratio: f64,
    pub level: Level,
    pub note: String,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CompletenessReport {
    pub rows: Vec<Row>,
}

impl CompletenessReport {
    pub fn row(&self, d: Dimension) -> &Row {
        self.rows.iter().find(|r| r.dimension == d).expect("every dimension has a row")
    }
}

pub const DEFAULT_HIGH_THRESHOLD: f64 = 0.8;

pub fn completeness(card: &Card) -> CompletenessReport {
    completeness_with(card, DEFAULT_HIGH_THRESHOLD)
}

/// `high` is the ratio at or above which a dimension grades High.
pub fn completeness_with(card: &Card, high: f64) -> CompletenessReport {
    let rows = Dimension::ALL
        .iter()
        .map(|&d| {
            let elements = collect(card, d);
            grade(d, &elements, high)
        })
        .collect();
    CompletenessReport { rows }
}

/// (field name, populated) pairs for one element.
type Fields = Vec<(&'static str, bool)>;

fn profile_fields(p: &GroupProfile) -> Fields {
    GroupProfile::FIELDS.iter().copied().zip(p.populated()).collect()
}

fn collect(card: &Card, d: Dimension) -> Vec<Fields> {
    let team_kind = match d {
        Dimension::DevelopmentTeam => Some(TeamKind::Development),
        Dimension::NonCodingContributors => Some(TeamKind::NonCodingContributor),
        Dimension::Testers => Some(TeamKind::Tester),
        Dimension::Reporters => Some(TeamKind::PublicReporter),
        _ => None,
    };
    if let Some(kind) = team_kind {
        return card
            .teams
            .iter()
            .filter(|t| t.kind == kind)
            .map(|t| {
                let mut f = profile_fields(&t.profile);
                f.push(("teamSize", t.team_size.is_some()));
                f.push(("startDate", t.start_date.is_some()));
                // Mismatched detail is a validation error; grade against the
                // declared kind's own attributes only.
                if t.detail.kind() == kind {
                    f.extend(t.detail.populated());
                } else {
                    f.extend(crate::model::TeamDetail::empty(kind).populated());
                }
                f
            })
            .collect();
    }
    match d {
        Dimension::TargetCommunities => card
            .target_communities
            .iter()
            .map(|t| {
                let mut f = profile_fields(&t.profile);
                f.push(("needs", t.needs.is_some()));
                f
            })
            .collect(),
        _ => {
            let boards = d == Dimension::GovernanceBoards;
            card.governance
                .iter()
                .flat_map(|g| &g.bodies)
                .filter(|b| (b.body_type == Some(BodyType::Board)) == boards)
                .map(|b| {
                    let mut f = profile_fields(&b.profile.clone().unwrap_or_default());
                    f.push(("members", !b.members.is_empty()));
                    f.push(("decisionProcess", b.decision_process.is_some()));
                    f
                })
                .collect()
        }
    }
}

fn grade(dimension: Dimension, elements: &[Fields], high: f64) -> Row {
    if elements.is_empty() {
        return Row { dimension, populated_ratio: 0.0, level: Level::Missing, note: "no elements declared".into() };
    }
    let ratio = elements
        .iter()
        .map(|f| f.iter().filter(|(_, p)| *p).count() as f64 / f.len() as f64)
        .sum::<f64>()
        / elements.len() as f64;
    let level = if ratio >= high {
        Level::High
    } else if ratio > 0.0 {
        Level::Limited
    } else {
        Level::Missing
    };
    let names = elements[0].iter().map(|(n, _)| *n);
    let missing: Vec<&str> = names
        .filter(|n| elements.iter().all(|f| f.iter().any(|(m, p)| m == n && !p)))
        .collect();
    let count = elements.len();
    let plural = if count == 1 { "" } else { "s" };
    let note = if missing.is_empty() {
        format!("{count} element{plural}; all fields reported somewhere")
    } else {
        format!("{count} element{plural}; not reported: {}", missing.join(", "))
    };
    Row { dimension, populated_ratio: ratio, level, note }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lang::parse_card;

    #[test]
    fn empty_card_is_all_missing() {
        let r = completeness(&Card::default());
        assert_eq!(r.rows.len(), 7);
        assert!(r.rows.iter().all(|row| row.level == Level::Missing && row.populated_ratio == 0.0));
    }

    #[test]
    fn reporter_with_description_only_is_limited() {
        let card = parse_card("publicReporterTeam r\n  description: \"People who file issues\"\n", "c").card;
        let row = completeness(&card).row(Dimension::Reporters).clone();
        assert_eq!(row.level, Level::Limited);
        // 1 of 13 profile + 2 team + 2 reporter fields.
        assert!((row.populated_ratio - 1.0 / 17.0).abs() < 1e-12);
        assert!(row.note.contains("reportingPlatforms"));
    }

    #[test]
    fn threshold_is_configurable() {
        let card = parse_card("targetCommunity t\n  description: \"d\"\n  needs: \"n\"\n", "c").card;
        assert_eq!(completeness(&card).row(Dimension::TargetCommunities).level, Level::Limited);
        assert_eq!(completeness_with(&card, 0.1).row(Dimension::TargetCommunities).level, Level::High);
    }

    #[test]
    fn boards_and_other_bodies_are_separate() {
        let card = parse_card("body b\n  type: board\n  members: [x]\nbody c\n  type: publicAdministration\n", "c").card;
        let r = completeness(&card);
        assert_eq!(r.row(Dimension::GovernanceBoards).level, Level::Limited);
        assert_eq!(r.row(Dimension::GovernanceBodies).level, Level::Missing);
    }
}
