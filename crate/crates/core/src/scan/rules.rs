//! Deterministic lexicon classifier.
//!
//! Each sentence of each file is tagged with the lexicons it hits. Terms
//! match case-insensitively at a word start (`nationalit` matches
//! "nationality", `board` does not match "keyboard"). On top of the tags:
//!
//! | area | present when                       | sub-finding (same file, ≤ 3 sentences apart) |
//! |------|------------------------------------|----------------------------------------------|
//! | A1   | `team`                             | profileAspects: `team` near `profile`        |
//! | A2   | `role` or `nonCoding`              | nonCodingRoles: `role`                       |
//! | A3   | `userTest`                         | labourForce: near `labour`; platforms: near `platform` |
//! | A4   | `purpose`, `population` or `adaptation` | targetPopulation: `population`; adaptation: `adaptation` |
//! | A5   | `governance` or `funding`          | funders: `funding`                           |
//!
//! Exclusions that keep boilerplate from counting: code-of-conduct files
//! never count for A1/A2 (enforcement text mentions "project team" and
//! "maintainers"), and `team` terms inside a purpose statement describe the
//! audience ("made for game developers"), not the team. `purpose` is only
//! looked for in READMEs. `population` counts only inside a purpose
//! statement. Country names (ISO short names, case-sensitive) count as
//! `profile`; ISO language names count as `adaptation` after a cue such as
//! "available in" or "supports".

use alloc::string::String;
use alloc::vec::Vec;

use super::text::{sentences, Sentence};
use super::{Area, AreaFinding, Category, CommunityFileSet, Evidence};

pub struct Lexicon {
    pub name: &'static str,
    pub terms: &'static [&'static str],
}

pub const RULEBOOK: &[Lexicon] = &[
    Lexicon {
        name: "team",
        terms: &[
            "team", "maintainer", "developer", "core developer", "maintained by", "developed by", "our staff",
            "engineering team",
        ],
    },
    Lexicon {
        name: "profile",
        terms: &[
            "based in", "nationalit", "gender", "years of experience", "countries", "women", "identify as",
            "ethnic", "age range", "aged ", "years old", "time zone", "timezones", "speak", "native speaker",
            "phd", "postdoc", "background",
        ],
    },
    Lexicon {
        name: "role",
        terms: &[
            "translator", "documenter", "documentation writer", "technical writer", "issue reporter", "bug reporter",
            "reviewer", "designer", "triager", "community manager", "moderator", "facilitator", "illustrator",
        ],
    },
    Lexicon {
        name: "nonCoding",
        terms: &[
            "non-technical contributor", "non-coding", "noncoding", "don't need to write code",
            "do not need to write code", "need to know how to code", "without writing code",
            "improving the documentation", "fix a typo",
        ],
    },
    Lexicon {
        name: "userTest",
        terms: &[
            "beta test", "beta program", "public beta", "usability test", "user test", "user testing", "field test",
            "tested in", "tested with", "tester", "crowdtest", "crowd test", "crowd-test", "help test",
            "user research", "user studies", "user study", "pilot study", "playtest",
        ],
    },
    Lexicon {
        name: "labour",
        terms: &["paid", "compensat", "salary", "wage", "volunteer", "stipend", "reward", "incentive", "gift card"],
    },
    Lexicon {
        name: "platform",
        terms: &[
            "platform", "discord", "slack", "testflight", "google play", "play store", "app store", "lookback",
            "mechanical turk", "prolific", "usertesting", "zoom",
        ],
    },
    Lexicon {
        name: "purpose",
        terms: &["designed for", "intended for", "made for", "built for", "used by", "helps", "aimed at", "targeted at", "meant for"],
    },
    Lexicon {
        name: "population",
        terms: &[
            "people", "person", "user", "citizen", "resident", "children", "kids", "student", "pupil", "teacher",
            "scholar", "developers", "programmers", "engineers", "teams", "researcher", "scientist", "astronomer",
            "ngo", "nonprofit", "non-profit", "communit", "council", "association", "adult", "elderly", "senior",
            "caregiver", "patient", "blind", "deaf", "low-vision", "disabilit", "trader", "farmer", "women",
            "hobbyist", "beginner", "newcomer", "journalist", "activist", "refugee", "public servant",
            "learner", "families", "worker", "municipalit", "local government", "public administration",
        ],
    },
    Lexicon {
        name: "adaptation",
        terms: &[
            "accessib", "screen reader", "screen-reader", "translated into", "language pack", "dyslexi",
            "large-text", "large text", "high contrast", "high-contrast", "low-end", "localization",
            "localisation", "localized into", "localised into", "audio cue", "keyboard navigation", "sign language",
            "right-to-left", "offline mode", "low-bandwidth", "easy-to-read", "plain language", "captions",
        ],
    },
    Lexicon {
        name: "governance",
        terms: &[
            "governance", "governed by", "board", "steering committee", "steering council", "technical committee",
            "bdfl", "benevolent dictator", "decisions are", "decision-making", "decision making", "elected",
            "charter", "tsc", "project lead",
        ],
    },
    Lexicon {
        name: "funding",
        terms: &[
            "funded by", "funding", "sponsor", "grant", "donation", "donate", "backed by", "supported by",
            "open collective", "opencollective", "patreon", "financial support", "financed by",
        ],
    },
];

/// Cues after which an ISO language name signals a language adaptation.
const LANGUAGE_CUES: &[&str] = &["available in", "supports", "translated into", "localized into", "in the languages"];

const TEAM: u32 = 1 << 0;
const PROFILE: u32 = 1 << 1;
const ROLE: u32 = 1 << 2;
const NONCODING: u32 = 1 << 3;
const TEST: u32 = 1 << 4;
const LABOUR: u32 = 1 << 5;
const PLATFORM: u32 = 1 << 6;
const PURPOSE: u32 = 1 << 7;
const POPULATION: u32 = 1 << 8;
const ADAPT: u32 = 1 << 9;
const GOV: u32 = 1 << 10;
const FUND: u32 = 1 << 11;

const WINDOW: usize = 3;
const MAX_EVIDENCE: usize = 5;
const EXCERPT_CHARS: usize = 240;

fn lexicon(name: &str) -> &'static [&'static str] {
    RULEBOOK.iter().find(|l| l.name == name).map(|l| l.terms).unwrap_or(&[])
}

fn at_word_start(hay: &str, idx: usize) -> bool {
    hay[..idx].chars().next_back().is_none_or(|c| !c.is_alphanumeric())
}

fn at_word_end(hay: &str, idx: usize) -> bool {
    hay[idx..].chars().next().is_none_or(|c| !c.is_alphanumeric())
}

/// Word-start occurrence of `needle` in `hay`.
fn contains_word(hay: &str, needle: &str, whole: bool) -> bool {
    let mut from = 0;
    while let Some(i) = hay[from..].find(needle) {
        let at = from + i;
        if at_word_start(hay, at) && (!whole || at_word_end(hay, at + needle.len())) {
            return true;
        }
        from = at + needle.len().max(1);
    }
    false
}

fn any_term(lower: &str, terms: &[&str]) -> bool {
    terms.iter().any(|t| contains_word(lower, t, false))
}

fn country_names() -> impl Iterator<Item = &'static str> {
    crate::iso::countries().iter().map(|c| c.name)
}

fn language_names() -> impl Iterator<Item = &'static str> {
    crate::iso::languages().iter().flat_map(|l| l.names.iter().copied())
}

fn is_purpose(lower: &str) -> bool {
    if any_term(lower, lexicon("purpose")) {
        return true;
    }
    let descriptive = lower.contains(" is a ") || lower.contains(" is an ") || lower.starts_with("a ") || lower.starts_with("an ");
    descriptive && lower.contains(" for ")
}

fn tag(category: Category, plain: &str) -> u32 {
    let lower = plain.to_ascii_lowercase();
    let boilerplate = category == Category::CodeOfConduct;
    let purpose = category == Category::Readme && is_purpose(&lower);
    let mut f = 0;
    if purpose {
        f |= PURPOSE;
        if any_term(&lower, lexicon("population")) {
            f |= POPULATION;
        }
    }
    if !boilerplate && !purpose && any_term(&lower, lexicon("team")) {
        f |= TEAM;
    }
    if any_term(&lower, lexicon("profile")) || country_names().any(|n| contains_word(plain, n, false)) {
        f |= PROFILE;
    }
    if !boilerplate && any_term(&lower, lexicon("role")) {
        f |= ROLE;
    }
    if !boilerplate && any_term(&lower, lexicon("nonCoding")) {
        f |= NONCODING;
    }
    for (name, bit) in [("userTest", TEST), ("labour", LABOUR), ("platform", PLATFORM), ("governance", GOV), ("funding", FUND)] {
        if any_term(&lower, lexicon(name)) {
            f |= bit;
        }
    }
    let language = || {
        any_term(&lower, LANGUAGE_CUES) && language_names().any(|n| contains_word(plain, n, true))
    };
    if any_term(&lower, lexicon("adaptation")) || language() {
        f |= ADAPT;
    }
    f
}

struct Tagged<'a> {
    path: &'a str,
    content: &'a str,
    sentences: Vec<Sentence>,
    flags: Vec<u32>,
}

impl Tagged<'_> {
    fn near(&self, i: usize, bit: u32) -> bool {
        let lo = i.saturating_sub(WINDOW);
        let hi = (i + WINDOW).min(self.flags.len() - 1);
        (lo..=hi).any(|j| self.flags[j] & bit != 0)
    }

    fn evidence(&self, i: usize, supports: Vec<String>) -> Evidence {
        let s = self.sentences[i];
        let wide_start = if i > 0 { self.sentences[i - 1].start } else { s.start };
        let wide_end = self.sentences.get(i + 1).map_or(s.end, |n| n.end);
        let (start, end) = if self.content[wide_start..wide_end].chars().count() <= EXCERPT_CHARS {
            (wide_start, wide_end)
        } else {
            let cut = self.content[s.start..s.end]
                .char_indices()
                .nth(EXCERPT_CHARS)
                .map_or(s.end, |(off, _)| s.start + off);
            (s.start, cut)
        };
        Evidence { path: self.path.into(), start, end, excerpt: self.content[start..end].into(), supports }
    }
}

/// Per-sentence labels an area draws on: (label suffix or "" for the area
/// itself, predicate over (file, sentence index)).
type Rule = (&'static str, fn(&Tagged<'_>, usize) -> bool);

fn rules(area: Area) -> &'static [Rule] {
    match area {
        Area::A1 => &[
            ("", |t, i| t.flags[i] & TEAM != 0),
            ("profileAspects", |t, i| t.flags[i] & PROFILE != 0 && t.near(i, TEAM)),
        ],
        Area::A2 => &[
            ("", |t, i| t.flags[i] & (ROLE | NONCODING) != 0),
            ("nonCodingRoles", |t, i| t.flags[i] & ROLE != 0),
        ],
        Area::A3 => &[
            ("", |t, i| t.flags[i] & TEST != 0),
            ("labourForce", |t, i| t.flags[i] & LABOUR != 0 && t.near(i, TEST)),
            ("platforms", |t, i| t.flags[i] & PLATFORM != 0 && t.near(i, TEST)),
        ],
        Area::A4 => &[
            ("", |t, i| t.flags[i] & (PURPOSE | ADAPT) != 0),
            ("targetPopulation", |t, i| t.flags[i] & POPULATION != 0),
            ("adaptation", |t, i| t.flags[i] & ADAPT != 0),
        ],
        Area::A5 => &[
            ("", |t, i| t.flags[i] & (GOV | FUND) != 0),
            ("funders", |t, i| t.flags[i] & FUND != 0),
        ],
    }
}

fn label(area: Area, key: &str) -> String {
    if key.is_empty() {
        area.as_str().into()
    } else {
        alloc::format!("{}.{key}", area.as_str())
    }
}

fn classify_area(area: Area, tagged: &[Tagged<'_>]) -> AreaFinding {
    let rules = rules(area);
    // (file, sentence, labels) in document order.
    let mut candidates: Vec<(usize, usize, Vec<String>)> = Vec::new();
    for (fi, t) in tagged.iter().enumerate() {
        for si in 0..t.sentences.len() {
            let labels: Vec<String> = rules.iter().filter(|(_, p)| p(t, si)).map(|(k, _)| label(area, k)).collect();
            if !labels.is_empty() {
                candidates.push((fi, si, labels));
            }
        }
    }
    let mut finding = AreaFinding::absent(area);
    if candidates.is_empty() {
        return finding;
    }
    finding.present = true;
    for (key, _) in rules.iter().filter(|(k, _)| !k.is_empty()) {
        let l = label(area, key);
        finding.set_sub(key, candidates.iter().any(|(_, _, ls)| ls.contains(&l)));
    }
    // Guarantee one excerpt per true label, then fill in document order.
    let mut chosen: Vec<usize> = Vec::new();
    for (key, _) in rules {
        let l = label(area, key);
        if let Some(ci) = candidates.iter().position(|(_, _, ls)| ls.contains(&l)) {
            if !chosen.contains(&ci) {
                chosen.push(ci);
            }
        }
    }
    for ci in 0..candidates.len() {
        if chosen.len() >= MAX_EVIDENCE {
            break;
        }
        if !chosen.contains(&ci) {
            chosen.push(ci);
        }
    }
    chosen.sort_unstable();
    finding.evidence = chosen
        .into_iter()
        .map(|ci| {
            let (fi, si, labels) = &candidates[ci];
            tagged[*fi].evidence(*si, labels.clone())
        })
        .collect();
    finding
}

/// Classifies all five areas. Pure and deterministic.
pub fn classify_rule(files: &CommunityFileSet) -> Vec<AreaFinding> {
    let tagged: Vec<Tagged<'_>> = files
        .entries
        .iter()
        .map(|f| {
            let sentences = sentences(&f.content);
            let flags = sentences
                .iter()
                .map(|s| {
                    let plain: String = f.content[s.start..s.end]
                        .chars()
                        .map(|c| if c.is_whitespace() { ' ' } else { c })
                        .collect();
                    tag(f.category, &plain)
                })
                .collect();
            Tagged { path: &f.path, content: &f.content, sentences, flags }
        })
        .collect();
    Area::ALL.iter().map(|&a| classify_area(a, &tagged)).collect()
}
