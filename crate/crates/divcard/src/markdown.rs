//! Markdown rendering of cards.
//!
//! Layout: `# <project>`, the project description, then the three card parts
//! as H2 sections. Each element is an H3 (its id) followed by a two-column
//! field table listing every field of its kind; absent values read
//! "not reported", as does a part with no elements.

use crate::json::{check_exportable, EmitError};
use divcard_core::model::{self as m, Card};
use std::fmt::Write;

pub const NOT_REPORTED: &str = "not reported";

pub fn emit_markdown(card: &Card) -> Result<String, EmitError> {
    check_exportable(card)?;
    Ok(emit_markdown_unchecked(card))
}

pub fn emit_markdown_unchecked(card: &Card) -> String {
    let mut out = String::new();
    let title = if card.project_name.is_empty() { "Untitled project" } else { &card.project_name };
    let _ = writeln!(out, "# {}", inline(title));
    if !card.description.is_empty() {
        let _ = writeln!(out, "\n{}", inline(&card.description));
    }

    section(&mut out, "Participants");
    let mut any = false;
    for t in &card.teams {
        team(&mut out, t);
        any = true;
    }
    for p in &card.participants {
        participant(&mut out, p);
        any = true;
    }
    for o in &card.organizations {
        let mut t = Table::new(&o.id, "organization");
        t.row("name", text(&o.name));
        t.row("type", o.org_type.as_ref().map(|v| v.label().to_string()));
        profile(&mut t, &o.profile);
        t.write(&mut out);
        any = true;
    }
    empty_section(&mut out, any);

    section(&mut out, "Usage Context");
    let mut any = false;
    for u in &card.use_cases {
        let mut t = Table::new(&u.id, "useCase");
        t.row("description", text(&u.description));
        t.row("targetCommunities", refs(&u.target_communities));
        t.row("socialContext", u.social_context.as_ref().map(|r| r.id.clone()));
        t.write(&mut out);
        any = true;
    }
    for s in &card.social_contexts {
        let mut t = Table::new(&s.id, "socialContext");
        t.row("description", text(&s.description));
        t.row("spokenLanguages", list(s.spoken_languages.iter().map(skill)));
        t.row("culturalTraits", list(s.cultural_traits.iter().cloned()));
        t.row("countries", list(s.countries.iter().map(country)));
        t.write(&mut out);
        any = true;
    }
    for c in &card.target_communities {
        let mut t = Table::new(&c.id, "targetCommunity");
        profile(&mut t, &c.profile);
        t.row("needs", c.needs.clone());
        t.write(&mut out);
        any = true;
    }
    for a in &card.adaptations {
        let mut t = Table::new(&a.id, "adaptation");
        t.row("description", text(&a.description));
        t.row("targetCommunities", refs(&a.target_communities));
        t.row("relatedTeams", refs(&a.related_teams));
        t.row("release", a.release.clone());
        t.write(&mut out);
        any = true;
    }
    empty_section(&mut out, any);

    section(&mut out, "Governance");
    let mut any = false;
    if let Some(g) = &card.governance {
        if !g.shareholders.is_empty() || g.legal_regulation.is_some() {
            let mut t = Table::bare();
            t.row("shareholders", list(g.shareholders.iter().cloned()));
            t.row("legalRegulation", g.legal_regulation.clone());
            t.write(&mut out);
            any = true;
        }
        for b in &g.bodies {
            let mut t = Table::new(&b.id, "governanceBody");
            t.row("name", text(&b.name));
            t.row("type", b.body_type.as_ref().map(|v| v.label().to_string()));
            t.row("members", refs(&b.members));
            t.row("decisionProcess", b.decision_process.clone());
            match &b.profile {
                Some(p) => profile(&mut t, p),
                None => t.row("profile", None),
            }
            t.write(&mut out);
            any = true;
        }
        for r in &g.rules {
            let mut t = Table::new(&r.id, "rule");
            t.row("text", text(&r.text));
            t.row("externalRef", r.external_ref.clone());
            t.write(&mut out);
            any = true;
        }
        for f in &g.funders {
            let mut t = Table::new(&f.id, "funder");
            t.row("name", text(&f.name));
            t.row("type", f.funder_type.as_ref().map(|v| v.label().to_string()));
            t.row("description", f.description.clone());
            t.write(&mut out);
            any = true;
        }
    }
    empty_section(&mut out, any);
    out
}

fn section(out: &mut String, title: &str) {
    let _ = writeln!(out, "\n## {title}");
}

fn empty_section(out: &mut String, any: bool) {
    if !any {
        let _ = writeln!(out, "\n{NOT_REPORTED}");
    }
}

struct Table {
    heading: Option<String>,
    rows: Vec<(&'static str, Option<String>)>,
}

impl Table {
    fn new(id: &str, element: &str) -> Self {
        Table { heading: Some(inline(id)), rows: vec![("element", Some(element.to_string()))] }
    }

    fn bare() -> Self {
        Table { heading: None, rows: Vec::new() }
    }

    fn row(&mut self, name: &'static str, value: Option<String>) {
        self.rows.push((name, value));
    }

    fn write(&self, out: &mut String) {
        if let Some(h) = &self.heading {
            let _ = writeln!(out, "\n### {h}");
        }
        let _ = writeln!(out, "\n| Field | Value |\n| --- | --- |");
        for (name, value) in &self.rows {
            let v = value.as_deref().map(inline).unwrap_or_else(|| NOT_REPORTED.to_string());
            let _ = writeln!(out, "| {name} | {v} |");
        }
    }
}

/// Single-line, table-safe text.
fn inline(s: &str) -> String {
    let mut o = String::with_capacity(s.len());
    for ch in s.chars() {
        match ch {
            '|' => o.push_str("\\|"),
            '\n' => o.push_str("<br>"),
            '\r' | '\t' => o.push(' '),
            c => o.push(c),
        }
    }
    o
}

fn text(s: &str) -> Option<String> {
    (!s.is_empty()).then(|| s.to_string())
}

fn list(items: impl Iterator<Item = String>) -> Option<String> {
    let v: Vec<String> = items.collect();
    (!v.is_empty()).then(|| v.join(", "))
}

fn refs(r: &[m::Ref]) -> Option<String> {
    list(r.iter().map(|r| r.id.clone()))
}

fn country(c: &m::CountryCode) -> String {
    match c.entry() {
        Some(e) => format!("{} ({})", e.name, e.alpha2),
        None => c.as_str().to_string(),
    }
}

fn skill(s: &m::LanguageSkill) -> String {
    let lang = match s.language.entry() {
        Some(e) => format!("{} ({})", e.display_name(), e.code),
        None => s.language.as_str().to_string(),
    };
    format!("{lang} {}", s.proficiency.as_str())
}

fn num(f: f64) -> String {
    f.to_string()
}

fn profile(t: &mut Table, p: &m::GroupProfile) {
    t.row("description", p.description.clone());
    t.row("ageRange", p.age_range.map(|r| format!("{}-{}", r.min, r.max)));
    t.row("locations", list(p.locations.iter().cloned()));
    t.row("countries", list(p.countries.iter().map(country)));
    t.row("ethnicities", list(p.ethnicities.iter().cloned()));
    t.row("genders", list(p.genders.iter().map(|g| g.to_string())));
    t.row("religiousBeliefs", list(p.religious_beliefs.iter().cloned()));
    t.row("educationalLevels", list(p.educational_levels.iter().map(|v| v.as_str().to_string())));
    t.row("spokenLanguages", list(p.spoken_languages.iter().map(skill)));
    t.row("socioEconomicStati", list(p.socio_economic_stati.iter().map(|v| v.as_str().to_string())));
    t.row("skillLevels", list(p.skill_levels.iter().map(|v| v.as_str().to_string())));
    t.row("workplaceType", p.workplace_type.map(|v| v.as_str().to_string()));
    t.row("averageTenure", p.average_tenure.map(num));
}

fn team(out: &mut String, team: &m::Team) {
    let mut t = Table::new(&team.id, "team");
    t.row("kind", Some(team.kind.as_str().to_string()));
    profile(&mut t, &team.profile);
    t.row("teamSize", team.team_size.map(|n| n.to_string()));
    t.row("startDate", team.start_date.map(|d| d.to_string()));
    t.row("members", refs(&team.members));
    let lf = team.labour_force.as_ref();
    t.row("sourcing", lf.map(|l| l.sourcing.as_str().to_string()));
    t.row(
        "salary",
        lf.and_then(|l| l.salary.as_ref()).map(|s| match s {
            m::Salary::Text(s) => s.clone(),
            m::Salary::Amount { amount, currency } => format!("{} {currency}", num(*amount)),
        }),
    );
    t.row("labourRights", lf.and_then(|l| l.labour_rights.clone()));
    t.row("company", lf.and_then(|l| l.company.clone()));
    t.row("country", lf.and_then(|l| l.country.as_ref()).map(country));
    match &team.detail {
        m::TeamDetail::Development => {}
        m::TeamDetail::Tester(d) => {
            t.row("testType", d.test_type.map(|v| v.as_str().to_string()));
            t.row("platform", d.platform.clone());
            t.row("taskDescription", d.task_description.clone());
            t.row("iterations", d.iterations.map(|n| n.to_string()));
            t.row("durationHours", d.duration_hours.map(num));
        }
        m::TeamDetail::PublicReporter(d) => {
            t.row("reportingPlatforms", list(d.reporting_platforms.iter().cloned()));
            t.row("contributionCount", d.contribution_count.map(|n| n.to_string()));
        }
        m::TeamDetail::NonCodingContributor(d) => {
            t.row("contributorRoles", list(d.contributor_roles.iter().map(|r| r.label().to_string())));
            t.row("contributionCount", d.contribution_count.map(|n| n.to_string()));
        }
    }
    t.write(out);
}

fn participant(out: &mut String, p: &m::Participant) {
    let i = &p.individual;
    let mut t = Table::new(&i.id, "participant");
    t.row("name", i.name.clone());
    t.row("participantId", p.participant_id.clone());
    t.row("gender", i.gender.clone());
    t.row("age", i.age.map(|n| n.to_string()));
    t.row("ethnicity", i.ethnicity.clone());
    t.row("religiousBelief", i.religious_belief.clone());
    t.row("country", i.country.as_ref().map(country));
    t.row("spokenLanguages", list(i.spoken_languages.iter().map(skill)));
    t.row("educationLevel", i.education_level.map(|v| v.as_str().to_string()));
    t.row("socioEconomicStatus", i.socio_economic_status.map(|v| v.as_str().to_string()));
    t.row("skillLevel", i.skill_level.map(|v| v.as_str().to_string()));
    t.row("tenure", i.tenure.map(num));
    t.row(
        "memberships",
        list(p.memberships.iter().map(|ms| {
            let end = ms.end.map(|d| d.to_string()).unwrap_or_else(|| "present".into());
            format!("{} as {} ({} to {end})", ms.team.id, ms.role, ms.start)
        })),
    );
    t.write(out);
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_card() {
        let md = emit_markdown(&Card::new("X").unwrap()).unwrap();
        assert_eq!(
            md,
            "# X\n\n## Participants\n\nnot reported\n\n## Usage Context\n\nnot reported\n\n## Governance\n\nnot reported\n"
        );
    }

    #[test]
    fn pipes_are_escaped() {
        assert_eq!(inline("a|b\nc"), "a\\|b<br>c");
    }
}
