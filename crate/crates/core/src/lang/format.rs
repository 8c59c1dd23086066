//! Canonical printer. `parse_card(format_card(c))` reproduces `c`, and
//! formatting is idempotent.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use super::lexer::{is_ident_char, is_ident_start};
use super::parser::{is_keyword, keyword_for};
use crate::model::*;

const INLINE_WIDTH: usize = 60;

pub fn format_card(card: &Card) -> String {
    let mut blocks: Vec<String> = Vec::new();
    if !card.project_name.is_empty() || !card.description.is_empty() {
        let mut b = Block::new(format!("project {}", id_or_string(&card.project_name)));
        if !card.description.is_empty() {
            b.field("description", quote(&card.description));
        }
        blocks.push(b.finish());
    }
    blocks.extend(card.teams.iter().map(team));
    blocks.extend(card.participants.iter().map(participant));
    for o in &card.organizations {
        let mut b = Block::new(format!("organization {}", o.id));
        if !o.name.is_empty() {
            b.field("name", quote(&o.name));
        }
        b.opt("type", o.org_type.as_ref().map(|t| open(t.token(), t.label())));
        profile(&mut b, &o.profile);
        blocks.push(b.finish());
    }
    for u in &card.use_cases {
        let mut b = Block::new(format!("useCase {}", u.id));
        b.text("description", &u.description);
        b.list("targetCommunities", u.target_communities.iter().map(|r| r.id.clone()));
        b.opt("socialContext", u.social_context.as_ref().map(|r| r.id.clone()));
        blocks.push(b.finish());
    }
    for s in &card.social_contexts {
        let mut b = Block::new(format!("socialContext {}", s.id));
        b.text("description", &s.description);
        b.list("spokenLanguages", s.spoken_languages.iter().map(skill));
        b.list("culturalTraits", s.cultural_traits.iter().map(|t| quote(t)));
        b.list("countries", s.countries.iter().map(country));
        blocks.push(b.finish());
    }
    for t in &card.target_communities {
        let mut b = Block::new(format!("targetCommunity {}", t.id));
        profile(&mut b, &t.profile);
        b.opt("needs", t.needs.as_deref().map(quote));
        blocks.push(b.finish());
    }
    for a in &card.adaptations {
        let mut b = Block::new(format!("adaptation {}", a.id));
        b.text("description", &a.description);
        b.list("targetCommunities", a.target_communities.iter().map(|r| r.id.clone()));
        b.list("relatedTeams", a.related_teams.iter().map(|r| r.id.clone()));
        b.opt("release", a.release.as_deref().map(quote));
        blocks.push(b.finish());
    }
    if let Some(g) = &card.governance {
        let bare = g.bodies.is_empty() && g.rules.is_empty() && g.funders.is_empty();
        if !g.shareholders.is_empty() || g.legal_regulation.is_some() || bare {
            let mut b = Block::new("governance".to_string());
            b.list("shareholders", g.shareholders.iter().map(|s| quote(s)));
            b.opt("legalRegulation", g.legal_regulation.as_deref().map(quote));
            blocks.push(b.finish());
        }
        for body in &g.bodies {
            let mut b = Block::new(format!("body {}", body.id));
            b.text("name", &body.name);
            b.opt("type", body.body_type.as_ref().map(|t| open(t.token(), t.label())));
            b.list("members", body.members.iter().map(|r| r.id.clone()));
            b.opt("decisionProcess", body.decision_process.as_deref().map(quote));
            if let Some(p) = &body.profile {
                profile(&mut b, p);
            }
            blocks.push(b.finish());
        }
        for r in &g.rules {
            let mut b = Block::new(format!("rule {}", r.id));
            b.text("text", &r.text);
            b.opt("externalRef", r.external_ref.as_deref().map(quote));
            blocks.push(b.finish());
        }
        for f in &g.funders {
            let mut b = Block::new(format!("funder {}", f.id));
            b.text("name", &f.name);
            b.opt("type", f.funder_type.as_ref().map(|t| open(t.token(), t.label())));
            b.opt("description", f.description.as_deref().map(quote));
            blocks.push(b.finish());
        }
    }
    blocks.join("\n")
}

struct Block {
    out: String,
}

impl Block {
    fn new(header: String) -> Self {
        let mut out = header;
        out.push('\n');
        Block { out }
    }

    fn field(&mut self, name: &str, value: String) {
        self.out.push_str("  ");
        self.out.push_str(name);
        self.out.push_str(": ");
        self.out.push_str(&value);
        self.out.push('\n');
    }

    fn opt(&mut self, name: &str, value: Option<String>) {
        if let Some(v) = value {
            self.field(name, v);
        }
    }

    /// Required string, omitted when empty (the parser defaults it to "").
    fn text(&mut self, name: &str, value: &str) {
        if !value.is_empty() {
            self.field(name, quote(value));
        }
    }

    fn list(&mut self, name: &str, items: impl Iterator<Item = String>) {
        let items: Vec<String> = items.collect();
        if items.is_empty() {
            return;
        }
        let inline = format!("[{}]", items.join(", "));
        if inline.len() <= INLINE_WIDTH {
            self.field(name, inline);
        } else {
            let mut v = String::from("[\n");
            for item in &items {
                v.push_str("    ");
                v.push_str(item);
                v.push_str(",\n");
            }
            v.push_str("  ]");
            self.field(name, v);
        }
    }

    fn finish(self) -> String {
        self.out
    }
}

fn team(t: &Team) -> String {
    let mut b = Block::new(format!("{} {}", keyword_for(t.kind), t.id));
    b.opt("description", t.profile.description.as_deref().map(quote));
    b.opt("teamSize", t.team_size.map(|n| n.to_string()));
    b.opt("startDate", t.start_date.map(|d| d.to_dmy()));
    b.list("members", t.members.iter().map(|r| r.id.clone()));
    profile_rest(&mut b, &t.profile);
    if let Some(lf) = &t.labour_force {
        b.field("sourcing", lf.sourcing.as_str().into());
        b.opt(
            "salary",
            lf.salary.as_ref().map(|s| match s {
                Salary::Text(s) => quote(s),
                Salary::Amount { amount, currency } => format!("({}, {})", num(*amount), id_or_string(currency)),
            }),
        );
        b.opt("labourRights", lf.labour_rights.as_deref().map(quote));
        b.opt("company", lf.company.as_deref().map(quote));
        b.opt("labourCountry", lf.country.as_ref().map(country));
    }
    match &t.detail {
        TeamDetail::Development => {}
        TeamDetail::Tester(d) => {
            b.opt("testType", d.test_type.map(|x| x.as_str().into()));
            b.opt("platform", d.platform.as_deref().map(quote));
            b.opt("taskDescription", d.task_description.as_deref().map(quote));
            b.opt("iterations", d.iterations.map(|n| n.to_string()));
            b.opt("durationHours", d.duration_hours.map(num));
        }
        TeamDetail::PublicReporter(d) => {
            b.list("reportingPlatforms", d.reporting_platforms.iter().map(|s| quote(s)));
            b.opt("contributionCount", d.contribution_count.map(|n| n.to_string()));
        }
        TeamDetail::NonCodingContributor(d) => {
            b.list("contributorRoles", d.contributor_roles.iter().map(|r| open(r.token(), r.label())));
            b.opt("contributionCount", d.contribution_count.map(|n| n.to_string()));
        }
    }
    b.finish()
}

fn participant(p: &Participant) -> String {
    let i = &p.individual;
    let mut b = Block::new(format!("participant {}", i.id));
    b.opt("name", i.name.as_deref().map(quote));
    b.opt("participantId", p.participant_id.as_deref().map(quote));
    b.opt("gender", i.gender.as_deref().map(quote));
    b.opt("age", i.age.map(|n| n.to_string()));
    b.opt("ethnicity", i.ethnicity.as_deref().map(quote));
    b.opt("religiousBelief", i.religious_belief.as_deref().map(quote));
    b.opt("country", i.country.as_ref().map(country));
    b.list("spokenLanguages", i.spoken_languages.iter().map(skill));
    b.opt("educationLevel", i.education_level.map(|x| x.as_str().into()));
    b.opt("socioEconomicStatus", i.socio_economic_status.map(|x| x.as_str().into()));
    b.opt("skillLevel", i.skill_level.map(|x| x.as_str().into()));
    b.opt("tenure", i.tenure.map(num));
    b.list(
        "memberships",
        p.memberships.iter().map(|m| {
            let mut s = format!("({}, {}, {}", m.team.id, quote(&m.role), m.start.to_dmy());
            if let Some(end) = m.end {
                s.push_str(", ");
                s.push_str(&end.to_dmy());
            }
            s.push(')');
            s
        }),
    );
    b.finish()
}

fn profile(b: &mut Block, p: &GroupProfile) {
    b.opt("description", p.description.as_deref().map(quote));
    profile_rest(b, p);
}

fn profile_rest(b: &mut Block, p: &GroupProfile) {
    b.opt("ageRange", p.age_range.map(|r| format!("({}, {})", r.min, r.max)));
    b.list("locations", p.locations.iter().map(|s| quote(s)));
    b.list("countries", p.countries.iter().map(country));
    b.list("ethnicities", p.ethnicities.iter().map(|s| quote(s)));
    b.list("genders", p.genders.iter().map(|g| quote(&g.to_string())));
    b.list("religiousBeliefs", p.religious_beliefs.iter().map(|s| quote(s)));
    b.list("educationalLevels", p.educational_levels.iter().map(|x| x.as_str().into()));
    b.list("spokenLanguages", p.spoken_languages.iter().map(skill));
    b.list("socioEconomicStati", p.socio_economic_stati.iter().map(|x| x.as_str().into()));
    b.list("skillLevels", p.skill_levels.iter().map(|x| x.as_str().into()));
    b.opt("workplaceType", p.workplace_type.map(|x| x.as_str().into()));
    b.opt("averageTenure", p.average_tenure.map(num));
}

fn open(token: Option<&str>, label: &str) -> String {
    match token {
        Some(t) => t.into(),
        None => quote(label),
    }
}

fn country(c: &CountryCode) -> String {
    match c.entry() {
        Some(e) if is_bare(e.name) => e.name.into(),
        Some(e) => e.alpha2.into(),
        None => id_or_string(c.as_str()),
    }
}

fn skill(s: &LanguageSkill) -> String {
    format!("({}, {})", id_or_string(s.language.as_str()), s.proficiency.as_str())
}

fn num(v: f64) -> String {
    v.to_string()
}

/// Whether `s` lexes as a single identifier token.
pub(crate) fn is_bare(s: &str) -> bool {
    let mut chars = s.chars();
    chars.next().is_some_and(is_ident_start) && chars.all(is_ident_char)
}

fn id_or_string(s: &str) -> String {
    if is_bare(s) && !is_keyword(s) {
        s.into()
    } else {
        quote(s)
    }
}

pub(crate) fn quote(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\t' => out.push_str("\\t"),
            '\r' => out.push_str("\\r"),
            c => out.push(c),
        }
    }
    out.push('"');
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lang::parse_card;

    #[test]
    fn minimal_card() {
        assert_eq!(format_card(&Card::new("X").unwrap()), "project X\n");
        assert_eq!(format_card(&Card::default()), "");
    }

    #[test]
    fn quoting() {
        assert_eq!(quote("a\"b\\c\n"), "\"a\\\"b\\\\c\\n\"");
        assert_eq!(id_or_string("Decidim"), "Decidim");
        assert_eq!(id_or_string("Software Diversity Card"), "\"Software Diversity Card\"");
    }

    #[test]
    fn long_lists_wrap() {
        let mut card = Card::new("P").unwrap();
        let mut t = Team::new("core", TeamDetail::Development);
        t.profile.locations = (0..8).map(|i| format!("City number {i}")).collect();
        card.teams.push(t);
        let text = format_card(&card);
        assert!(text.contains("  locations: [\n    \"City number 0\",\n"), "{text}");
        assert!(text.contains("\n  ]\n"));
        let back = parse_card(&text, "w");
        assert!(back.diagnostics.is_empty(), "{:?}", back.diagnostics);
        assert_eq!(back.card, card);
    }

    #[test]
    fn keyword_project_name_is_quoted() {
        let card = Card::new("body").unwrap();
        let text = format_card(&card);
        assert_eq!(text, "project \"body\"\n");
        assert_eq!(parse_card(&text, "k").card, card);
    }
}
