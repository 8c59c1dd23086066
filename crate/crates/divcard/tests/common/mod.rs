//! Shared test helpers: fixture paths and a generator of random valid cards.
#![allow(dead_code)]

use divcard::core::iso;
use divcard::core::model::*;
use rand::rngs::StdRng;
use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use std::path::PathBuf;

pub fn fixtures() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

pub fn fixture(rel: &str) -> PathBuf {
    fixtures().join(rel)
}

pub fn read(rel: &str) -> String {
    std::fs::read_to_string(fixture(rel)).unwrap_or_else(|e| panic!("{rel}: {e}"))
}

struct Gen {
    rng: StdRng,
    next_id: usize,
}

const CHARS: &[char] = &[
    'a', 'b', 'k', 'z', 'A', 'Q', '0', '7', ' ', ' ', '.', ',', '-', '\'', '"', '\\', '\n', '\t', 'é', 'ß', 'ñ', '€',
    '中', '%', ':', '[', ']', '(', ')',
];
const WORDS: &[&str] = &["Basque", "Sami", "Quaker", "student", "farmer", "Lyon", "Dakar", "Kyiv", "non-binary", "other"];

impl Gen {
    fn chance(&mut self, p: f64) -> bool {
        self.rng.random_bool(p)
    }

    fn id(&mut self, prefix: &str) -> String {
        self.next_id += 1;
        format!("{prefix}{}", self.next_id)
    }

    /// Arbitrary text, possibly empty, with quotes, escapes and non-ASCII.
    fn text(&mut self) -> String {
        let n = self.rng.random_range(0..24);
        (0..n).map(|_| *CHARS.choose(&mut self.rng).unwrap()).collect()
    }

    fn nonempty(&mut self) -> String {
        let mut s = self.text();
        if s.is_empty() {
            s.push('x');
        }
        s
    }

    fn opt_text(&mut self) -> Option<String> {
        self.chance(0.5).then(|| self.nonempty())
    }

    fn word(&mut self) -> String {
        WORDS.choose(&mut self.rng).unwrap().to_string()
    }

    fn words(&mut self) -> Vec<String> {
        let n = self.rng.random_range(0..4);
        (0..n).map(|_| self.word()).collect()
    }

    fn texts(&mut self) -> Vec<String> {
        let n = self.rng.random_range(0..4);
        (0..n).map(|_| self.nonempty()).collect()
    }

    fn num(&mut self, max: u32) -> f64 {
        f64::from(self.rng.random_range(0..=max * 4)) / 4.0
    }

    fn pick<T: Copy>(&mut self, all: &[T]) -> T {
        *all.choose(&mut self.rng).unwrap()
    }

    fn country(&mut self) -> CountryCode {
        let e = iso::countries().choose(&mut self.rng).unwrap();
        CountryCode::from_token(e.alpha2)
    }

    fn skill(&mut self) -> LanguageSkill {
        let e = iso::languages().choose(&mut self.rng).unwrap();
        LanguageSkill { language: LanguageCode::from_token(e.code), proficiency: self.pick(Proficiency::ALL) }
    }

    fn many<T>(&mut self, max: usize, mut f: impl FnMut(&mut Self) -> T) -> Vec<T> {
        let n = self.rng.random_range(0..=max);
        (0..n).map(|_| f(self)).collect()
    }

    fn subset<T: Copy>(&mut self, all: &[T]) -> Vec<T> {
        all.iter().copied().filter(|_| self.rng.random_bool(0.3)).collect()
    }

    fn profile(&mut self) -> GroupProfile {
        let mut p = GroupProfile { description: self.opt_text(), ..Default::default() };
        if self.chance(0.5) {
            let min = self.rng.random_range(0..=130);
            p.age_range = Some(AgeRange { min, max: self.rng.random_range(min..=130) });
        }
        p.locations = self.texts();
        p.countries = self.many(3, |g| g.country());
        p.ethnicities = self.words();
        p.genders = self.many(3, |g| {
            let pct = g.chance(0.5).then(|| f64::from(g.rng.random_range(0..=30)));
            DistributionEntry::new(g.word(), pct)
        });
        p.religious_beliefs = self.words();
        p.educational_levels = self.subset(EducationLevel::ALL);
        p.spoken_languages = self.many(3, |g| g.skill());
        p.socio_economic_stati = self.subset(SocioEconomicClass::ALL);
        p.skill_levels = self.subset(SkillLevel::ALL);
        p.workplace_type = self.chance(0.5).then(|| self.pick(WorkplaceType::ALL));
        p.average_tenure = self.chance(0.5).then(|| self.num(40));
        p
    }

    fn open<T>(&mut self, tokens: &[&str], from: fn(&str) -> Option<T>, other: fn(String) -> T) -> T {
        if self.chance(0.7) {
            from(self.pick(tokens)).unwrap()
        } else {
            other(self.nonempty())
        }
    }

    fn date(&mut self) -> Date {
        Date::new(self.rng.random_range(1990..2030), self.rng.random_range(1..=12), self.rng.random_range(1..=28)).unwrap()
    }

    fn refs(&mut self, pool: &[String], max: usize) -> Vec<Ref> {
        if pool.is_empty() {
            return Vec::new();
        }
        let mut v: Vec<String> = (0..self.rng.random_range(0..=max)).map(|_| pool.choose(&mut self.rng).unwrap().clone()).collect();
        v.dedup();
        v.into_iter().map(Ref::new).collect()
    }
}

/// A random card that validates without errors: unique ids, resolvable
/// references of the right kind, ISO codes, in-range numbers and
/// consistent team details.
pub fn random_card(seed: u64) -> Card {
    let mut g = Gen { rng: StdRng::seed_from_u64(seed), next_id: 0 };
    let mut card = Card { project_name: g.word(), description: g.text(), ..Default::default() };

    let participant_ids: Vec<String> = (0..g.rng.random_range(0..4)).map(|_| g.id("p")).collect();
    let org_ids: Vec<String> = (0..g.rng.random_range(0..3)).map(|_| g.id("org")).collect();
    let team_kinds: Vec<TeamKind> = (0..g.rng.random_range(0..5)).map(|_| g.pick(TeamKind::ALL)).collect();
    let team_ids: Vec<String> = team_kinds.iter().map(|_| g.id("team")).collect();
    let tc_ids: Vec<String> = (0..g.rng.random_range(0..3)).map(|_| g.id("tc")).collect();
    let sc_ids: Vec<String> = (0..g.rng.random_range(0..3)).map(|_| g.id("sc")).collect();

    for (id, kind) in team_ids.iter().zip(&team_kinds) {
        let mut t = Team::new(id.clone(), TeamDetail::empty(*kind));
        t.profile = g.profile();
        t.members = g.refs(&participant_ids, 3);
        if g.chance(0.6) {
            t.team_size = Some(g.rng.random_range(t.members.len().max(1) as i64..40));
        }
        t.start_date = g.chance(0.5).then(|| g.date());
        if g.chance(0.4) {
            let external = g.chance(0.5);
            let mut lf = LabourForce::new(if external { Sourcing::External } else { Sourcing::Internal });
            lf.salary = match g.rng.random_range(0..3) {
                0 => None,
                1 => Some(Salary::Text(g.nonempty())),
                _ => Some(Salary::Amount { amount: g.num(5000), currency: "EUR".into() }),
            };
            lf.labour_rights = g.opt_text();
            lf.company = if external { g.opt_text() } else { g.chance(0.5).then(|| card.project_name.clone()) };
            lf.country = g.chance(0.5).then(|| g.country());
            t.labour_force = Some(lf);
        }
        t.detail = match kind {
            TeamKind::Development => TeamDetail::Development,
            TeamKind::Tester => TeamDetail::Tester(TesterDetail {
                test_type: g.chance(0.5).then(|| g.pick(TestType::ALL)),
                platform: g.opt_text(),
                task_description: g.opt_text(),
                iterations: g.chance(0.5).then(|| g.rng.random_range(0..20)),
                duration_hours: g.chance(0.5).then(|| g.num(100)),
            }),
            TeamKind::PublicReporter => TeamDetail::PublicReporter(ReporterDetail {
                reporting_platforms: g.texts(),
                contribution_count: g.chance(0.5).then(|| g.rng.random_range(0..1000)),
            }),
            TeamKind::NonCodingContributor => TeamDetail::NonCodingContributor(NonCodingDetail {
                contributor_roles: g.many(3, |g| g.open(ContributorRole::TOKENS, ContributorRole::from_token, ContributorRole::Other)),
                contribution_count: g.chance(0.5).then(|| g.rng.random_range(0..1000)),
            }),
        };
        card.teams.push(t);
    }
    for id in &participant_ids {
        let memberships = if team_ids.is_empty() {
            Vec::new()
        } else {
            g.many(2, |g| {
                let start = g.date();
                let end = g.chance(0.5).then(|| Date::new(start.year() + 1, start.month(), start.day()).unwrap());
                Membership { team: Ref::new(team_ids.choose(&mut g.rng).unwrap().clone()), role: g.nonempty(), start, end }
            })
        };
        card.participants.push(Participant {
            individual: Individual {
                id: id.clone(),
                name: g.opt_text(),
                spoken_languages: g.many(2, |g| g.skill()),
                ethnicity: g.chance(0.3).then(|| g.word()),
                religious_belief: g.chance(0.3).then(|| g.word()),
                gender: g.chance(0.5).then(|| g.word()),
                age: g.chance(0.5).then(|| g.rng.random_range(0..=130)),
                socio_economic_status: g.chance(0.5).then(|| g.pick(SocioEconomicClass::ALL)),
                skill_level: g.chance(0.5).then(|| g.pick(SkillLevel::ALL)),
                tenure: g.chance(0.5).then(|| g.num(30)),
                education_level: g.chance(0.5).then(|| g.pick(EducationLevel::ALL)),
                country: g.chance(0.5).then(|| g.country()),
            },
            memberships,
            participant_id: g.opt_text(),
            origin: Origin::default(),
        });
    }
    for id in &org_ids {
        card.organizations.push(Organization {
            id: id.clone(),
            name: g.text(),
            profile: g.profile(),
            org_type: g.chance(0.6).then(|| g.open(OrganizationType::TOKENS, OrganizationType::from_token, OrganizationType::Other)),
            origin: Origin::default(),
        });
    }
    for id in &sc_ids {
        card.social_contexts.push(SocialContext {
            id: id.clone(),
            description: g.text(),
            spoken_languages: g.many(2, |g| g.skill()),
            cultural_traits: g.texts(),
            countries: g.many(2, |g| g.country()),
            origin: Origin::default(),
        });
    }
    for id in &tc_ids {
        card.target_communities.push(TargetCommunity { id: id.clone(), profile: g.profile(), needs: g.opt_text(), origin: Origin::default() });
    }
    for _ in 0..g.rng.random_range(0..3) {
        let id = g.id("uc");
        card.use_cases.push(UseCase {
            id,
            description: g.text(),
            target_communities: g.refs(&tc_ids, 2),
            social_context: if sc_ids.is_empty() || g.chance(0.5) { None } else { Some(Ref::new(sc_ids.choose(&mut g.rng).unwrap().clone())) },
            origin: Origin::default(),
        });
    }
    for _ in 0..g.rng.random_range(0..3) {
        let id = g.id("ad");
        card.adaptations.push(Adaptation {
            id,
            description: g.text(),
            target_communities: g.refs(&tc_ids, 2),
            related_teams: g.refs(&team_ids, 2),
            release: g.opt_text(),
            origin: Origin::default(),
        });
    }
    if g.chance(0.6) {
        let members: Vec<String> = participant_ids.iter().chain(&org_ids).cloned().collect();
        let mut gov = Governance::default();
        for _ in 0..g.rng.random_range(0..3) {
            let id = g.id("body");
            gov.bodies.push(Body {
                id,
                name: g.text(),
                body_type: g.chance(0.6).then(|| g.open(BodyType::TOKENS, BodyType::from_token, BodyType::Other)),
                members: g.refs(&members, 3),
                decision_process: g.opt_text(),
                profile: g.chance(0.4).then(|| g.profile()).filter(|p| !p.is_empty()),
                origin: Origin::default(),
            });
        }
        for _ in 0..g.rng.random_range(0..3) {
            let id = g.id("rule");
            gov.rules.push(Rule { id, text: g.text(), external_ref: g.opt_text(), origin: Origin::default() });
        }
        for _ in 0..g.rng.random_range(0..3) {
            let id = g.id("funder");
            gov.funders.push(Funder {
                id,
                name: g.text(),
                funder_type: g.chance(0.6).then(|| g.open(FunderType::TOKENS, FunderType::from_token, FunderType::Other)),
                description: g.opt_text(),
                origin: Origin::default(),
            });
        }
        gov.shareholders = g.texts();
        gov.legal_regulation = g.opt_text();
        card.governance = Some(gov);
    }
    card
}
