use std::collections::BTreeSet;
use std::fs;
use std::path::{Path, PathBuf};

use divcard_core::model::{EducationLevel, Proficiency, SkillLevel, SocioEconomicClass, TeamKind, WorkplaceType};
use divcard_core::validate::{completeness, lint_privacy, Dimension, Level};
use divcard_core::{format_card, parse_card, validate, Code, Severity};

fn fixtures() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

fn read(rel: &str) -> String {
    fs::read_to_string(fixtures().join(rel)).unwrap_or_else(|e| panic!("{rel}: {e}"))
}

fn card_fixtures() -> Vec<PathBuf> {
    let mut out = Vec::new();
    for dir in [fixtures(), fixtures().join("mutations")] {
        for e in fs::read_dir(dir).unwrap() {
            let p = e.unwrap().path();
            if p.extension().is_some_and(|x| x == "divcard") {
                out.push(p);
            }
        }
    }
    out.sort();
    out
}

/// Every code reported for a source: parse, then validation and lint when
/// parsing produced no errors.
fn codes(src: &str, name: &str) -> BTreeSet<Code> {
    let parsed = parse_card(src, name);
    let mut out: BTreeSet<Code> = parsed.diagnostics.iter().map(|d| d.code).collect();
    if !parsed.has_errors() {
        out.extend(validate(&parsed.card).diagnostics.iter().map(|d| d.code));
        out.extend(lint_privacy(&parsed.card).iter().map(|f| f.code));
    }
    out
}

#[test]
fn listing3_values() {
    let parsed = parse_card(&read("listing3.divcard"), "listing3.divcard");
    assert!(!parsed.has_errors(), "{:#?}", parsed.diagnostics);
    let card = parsed.card;

    let tc = card.target_community("nonDigitalSkilled").unwrap();
    let p = &tc.profile;
    assert_eq!(p.description.as_deref(), Some("Elder citizen or citizen with low digital skills..."));
    assert_eq!((p.age_range.unwrap().min, p.age_range.unwrap().max), (60, 100));
    assert_eq!(p.locations, ["Barcelona"]);
    assert_eq!(p.workplace_type, Some(WorkplaceType::Presential));
    assert_eq!(p.countries.iter().map(|c| c.as_str()).collect::<Vec<_>>(), ["ES"]);
    assert_eq!(
        p.educational_levels,
        [EducationLevel::ShortCycleTertiary, EducationLevel::Primary, EducationLevel::EarlyChildhood]
    );
    let langs: Vec<_> = p.spoken_languages.iter().map(|s| (s.language.as_str(), s.proficiency)).collect();
    assert_eq!(langs, [("ca", Proficiency::B1), ("es", Proficiency::B1)]);
    assert_eq!(p.socio_economic_stati, [SocioEconomicClass::LowerClass, SocioEconomicClass::LowerMiddleClass]);
    assert_eq!(p.skill_levels, [SkillLevel::Beginner]);

    assert!(card.target_community("barcelonaCitizens").unwrap().profile.is_empty());

    let dd = card.adaptation("DigitalDivide").unwrap();
    assert!(dd.description.starts_with("Training and Mediation Against the Digital Divide."));
    assert_eq!(dd.target_communities.iter().map(|r| r.id.as_str()).collect::<Vec<_>>(), ["nonDigitalSkilled"]);
    assert!(dd.related_teams.is_empty());

    let la = card.adaptation("languageAdaptation").unwrap();
    assert_eq!(la.target_communities.iter().map(|r| r.id.as_str()).collect::<Vec<_>>(), ["barcelonaCitizens"]);
    assert_eq!(la.related_teams.iter().map(|r| r.id.as_str()).collect::<Vec<_>>(), ["Translators"]);
}

#[test]
fn listing3_warnings() {
    let parsed = parse_card(&read("listing3.divcard"), "listing3.divcard");
    let elided = parsed.diagnostics.iter().filter(|d| d.code == Code::SynElided).count();
    assert_eq!(elided, 2);
    assert!(parsed.diagnostics.iter().all(|d| d.severity == Severity::Warning));
    // Translators is declared elsewhere in the full card.
    let v = validate(&parsed.card);
    let unresolved: Vec<_> = v.diagnostics.iter().filter(|d| d.code == Code::UnresolvedRef).collect();
    assert_eq!(unresolved.len(), 1);
    assert!(unresolved[0].message.contains("Translators"));
}

#[test]
fn listing4_values() {
    let parsed = parse_card(&read("listing4.divcard"), "listing4.divcard");
    assert!(!parsed.has_errors(), "{:#?}", parsed.diagnostics);
    let card = parsed.card;
    let t = card.team("DevelopmentTeam").unwrap();
    assert_eq!(t.kind, TeamKind::Development);
    assert_eq!(t.team_size, Some(15));
    let sd = t.start_date.unwrap();
    assert_eq!((sd.year(), sd.month(), sd.day()), (2022, 8, 11));
    let p = &t.profile;
    assert_eq!((p.age_range.unwrap().min, p.age_range.unwrap().max), (25, 36));
    assert_eq!(p.average_tenure, Some(3.3));
    assert_eq!(p.locations, ["Luxembourg Institute of Technology, Luxembourg"]);
    assert_eq!(p.workplace_type, Some(WorkplaceType::Presential));
    assert_eq!(p.ethnicities.len(), 10);
    assert_eq!(p.ethnicities[0], "Colombian");
    assert_eq!(p.ethnicities[9], "Italian");
    let genders: Vec<_> = p.genders.iter().map(|g| (g.label.as_str(), g.percent)).collect();
    assert_eq!(genders, [("male", Some(80.0)), ("female", Some(20.0))]);
    assert_eq!(p.religious_beliefs, ["Christianism", "Islam"]);
    assert_eq!(p.countries.iter().map(|c| c.as_str()).collect::<Vec<_>>(), ["LU"]);
    assert_eq!(p.educational_levels, [EducationLevel::MasterEquivalent, EducationLevel::DoctorateEquivalent]);
    let langs: Vec<_> = p.spoken_languages.iter().map(|s| (s.language.as_str(), s.proficiency)).collect();
    assert_eq!(langs, [("en", Proficiency::C1)]);
}

#[test]
fn listing4_has_only_the_missing_project_warning() {
    assert_eq!(codes(&read("listing4.divcard"), "listing4.divcard"), BTreeSet::from([Code::MissingProject]));
}

#[test]
fn format_is_a_fixpoint_on_every_fixture() {
    for path in card_fixtures() {
        let name = path.file_name().unwrap().to_string_lossy().into_owned();
        let src = fs::read_to_string(&path).unwrap();
        let first = parse_card(&src, &name);
        let once = format_card(&first.card);
        let second = parse_card(&once, &name);
        assert!(!second.has_errors(), "{name}: formatted output does not parse: {:#?}", second.diagnostics);
        assert_eq!(first.card, second.card, "{name}: card changed through format");
        assert_eq!(format_card(&second.card), once, "{name}: format is not idempotent");
    }
}

#[test]
fn each_mutation_fixture_triggers_exactly_its_code() {
    let mut covered = BTreeSet::new();
    for e in fs::read_dir(fixtures().join("mutations")).unwrap() {
        let path = e.unwrap().path();
        if path.extension().is_none_or(|x| x != "divcard") {
            continue;
        }
        let stem = path.file_stem().unwrap().to_string_lossy().into_owned();
        let Some(expected) = Code::lookup(&stem) else { panic!("{stem} is not a registry code") };
        if expected.stage() == divcard_core::Stage::Emit {
            continue;
        }
        let got = codes(&fs::read_to_string(&path).unwrap(), &stem);
        assert_eq!(got, BTreeSet::from([expected]), "{stem}");
        covered.insert(expected);
    }
    for code in Code::ALL {
        use divcard_core::Stage::*;
        if matches!(code.stage(), Parse | Validate | Lint) {
            assert!(covered.contains(code), "no mutation fixture for {}", code.as_str());
        }
    }
}

#[test]
fn bad_range_position() {
    let parsed = parse_card(&read("bad_range.divcard"), "bad_range.divcard");
    assert!(!parsed.has_errors());
    let v = validate(&parsed.card);
    assert!(!v.resolved);
    assert_eq!(v.diagnostics.len(), 1);
    assert_eq!(v.diagnostics[0].code, Code::RangeInverted);
    assert_eq!(v.diagnostics[0].to_string().split(": ").next(), Some("bad_range.divcard:5:3"));
}

#[test]
fn reference_cards_are_clean() {
    for name in ["besser.divcard", "decidim.divcard"] {
        assert!(codes(&read(name), name).is_empty(), "{name}");
    }
}

#[test]
fn completeness_matches_qualitative_labels() {
    let besser = parse_card(&read("besser.divcard"), "besser.divcard").card;
    let row = completeness(&besser).row(Dimension::DevelopmentTeam).clone();
    assert_eq!(row.level, Level::High, "{row:?}");
    assert!(row.populated_ratio >= 0.8);

    let decidim = parse_card(&read("decidim.divcard"), "decidim.divcard").card;
    let row = completeness(&decidim).row(Dimension::NonCodingContributors).clone();
    assert_eq!(row.level, Level::Limited, "{row:?}");
    assert!(row.populated_ratio > 0.0 && row.populated_ratio < 0.8);
}
