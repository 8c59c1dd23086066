//! Skeleton cards: one stub per detected area, each citing its evidence.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use super::{Area, AreaFinding, Evidence, ScanReport};
use crate::model::*;

fn cite(evidence: &[Evidence], label: &str) -> String {
    let e = evidence
        .iter()
        .find(|e| e.supports.iter().any(|s| s == label))
        .or_else(|| evidence.first());
    match e {
        Some(e) => {
            let text: Vec<&str> = e.excerpt.split_whitespace().collect();
            format!("From {}: \"{}\"", e.path, text.join(" "))
        }
        None => "Detected in community files; no excerpt recorded.".into(),
    }
}

fn team(id: &str, kind: TeamKind, description: String) -> Team {
    let mut t = Team::new(id, TeamDetail::empty(kind));
    t.profile.description = Some(description);
    t
}

/// Builds a minimal card meant for human completion. With an all-absent
/// report the result is just the project header. An empty `project_name`
/// falls back to the report's repository name.
pub fn skeleton_card(report: &ScanReport, project_name: &str) -> Card {
    let name = if project_name.trim().is_empty() { report.repo.as_str() } else { project_name };
    let mut card = Card::new(name).unwrap_or_default();
    let absent: Vec<AreaFinding> = Area::ALL.iter().map(|a| AreaFinding::absent(*a)).collect();
    let get = |a: Area| report.finding(a).unwrap_or(&absent[a as usize]);

    let a1 = get(Area::A1);
    if a1.present {
        card.teams.push(team("DevelopmentTeam", TeamKind::Development, cite(&a1.evidence, "A1")));
    }
    let a2 = get(Area::A2);
    if a2.present {
        card.teams.push(team(
            "NonCodingContributors",
            TeamKind::NonCodingContributor,
            cite(&a2.evidence, "A2.nonCodingRoles"),
        ));
    }
    let a3 = get(Area::A3);
    if a3.present {
        card.teams.push(team("Testers", TeamKind::Tester, cite(&a3.evidence, "A3")));
    }
    let a4 = get(Area::A4);
    if a4.present && a4.sub("targetPopulation") {
        let mut tc = TargetCommunity {
            id: "TargetCommunity".into(),
            profile: GroupProfile::default(),
            needs: None,
            origin: Origin::default(),
        };
        tc.profile.description = Some(cite(&a4.evidence, "A4.targetPopulation"));
        card.target_communities.push(tc);
    }
    if a4.present && a4.sub("adaptation") {
        let targets = card.target_communities.iter().map(|t| Ref::new(t.id.clone())).collect();
        card.adaptations.push(Adaptation {
            id: "Adaptation".into(),
            description: cite(&a4.evidence, "A4.adaptation"),
            target_communities: targets,
            related_teams: Vec::new(),
            release: None,
            origin: Origin::default(),
        });
    }
    let a5 = get(Area::A5);
    if a5.present {
        let governance = a5.evidence.iter().any(|e| e.supports.iter().any(|s| s == "A5")) || !a5.sub("funders");
        if governance {
            let profile = GroupProfile { description: Some(cite(&a5.evidence, "A5")), ..GroupProfile::default() };
            card.governance_mut().bodies.push(Body {
                id: "GoverningBody".into(),
                name: String::new(),
                body_type: None,
                members: Vec::new(),
                decision_process: None,
                profile: Some(profile),
                origin: Origin::default(),
            });
        }
        if a5.sub("funders") {
            card.governance_mut().funders.push(Funder {
                id: "Funder".into(),
                name: String::new(),
                funder_type: None,
                description: Some(cite(&a5.evidence, "A5.funders")),
                origin: Origin::default(),
            });
        }
    }
    card
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scan::{Backend, CommunityFileSet};
    use alloc::vec;

    fn report(findings: Vec<AreaFinding>) -> ScanReport {
        ScanReport::new("o/r", "1970-01-01T00:00:00Z", &CommunityFileSet::default(), findings, Backend::Rule)
    }

    #[test]
    fn all_absent_gives_header_only() {
        let r = report(Area::ALL.iter().map(|a| AreaFinding::absent(*a)).collect());
        let card = skeleton_card(&r, "Demo");
        assert_eq!(crate::lang::format_card(&card), "project Demo\n");
    }

    #[test]
    fn funders_only() {
        let mut a5 = AreaFinding::absent(Area::A5);
        a5.present = true;
        a5.set_sub("funders", true);
        a5.evidence.push(Evidence {
            path: "FUNDING.md".into(),
            start: 0,
            end: 18,
            excerpt: "Funded by\n  ACME.".into(),
            supports: vec!["A5".into(), "A5.funders".into()],
        });
        a5.evidence[0].supports.retain(|s| s != "A5");
        let mut all: Vec<AreaFinding> = Area::ALL[..4].iter().map(|a| AreaFinding::absent(*a)).collect();
        all.push(a5);
        let card = skeleton_card(&report(all), "Demo");
        let g = card.governance.as_ref().unwrap();
        assert!(g.bodies.is_empty());
        assert_eq!(g.funders.len(), 1);
        assert_eq!(g.funders[0].description.as_deref(), Some("From FUNDING.md: \"Funded by ACME.\""));
        assert!(crate::validate::validate(&card).resolved);
    }
}
