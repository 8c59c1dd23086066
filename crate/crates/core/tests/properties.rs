use std::fs;
use std::path::Path;

use divcard_core::scan::{classify_rule, Area, Category, CommunityFile, CommunityFileSet};
use divcard_core::{format_card, parse_card, validate, Code};
use proptest::prelude::*;

fn check_diagnostics(src: &str) {
    let parsed = parse_card(src, "fuzz.divcard");
    for d in &parsed.diagnostics {
        assert_eq!(Code::lookup(d.code.as_str()), Some(d.code));
        assert!(!d.message.is_empty());
        assert!((d.span.start_line, d.span.start_col) <= (d.span.end_line, d.span.end_col), "{d}");
    }
    // The recovered card must still be safe to inspect and print.
    let _ = validate(&parsed.card);
    let _ = format_card(&parsed.card);
}

fn seed_sources() -> Vec<String> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures");
    ["listing3.divcard", "listing4.divcard", "besser.divcard", "decidim.divcard"]
        .iter()
        .map(|n| fs::read_to_string(dir.join(n)).unwrap())
        .collect()
}

const WORDS: &[&str] = &[
    "team", "developers", "maintainers", "women", "gender", "diverse", "backgrounds", "countries",
    "translators", "documentation", "designers", "reviewers", "usability", "testing", "participants",
    "user study", "paid", "volunteers", "Prolific", "accessibility", "localization", "elderly",
    "municipalities", "citizens", "funded", "sponsors", "grant", "foundation", "board", "steering",
    "committee", "governance", "the", "we", "our", "is", "and", "no", ".", "!", "\n", "\n\n", "# ",
    "- ", "`", "é", "日本",
];

fn text() -> impl Strategy<Value = String> {
    prop::collection::vec(prop::sample::select(WORDS), 0..80).prop_map(|ws| ws.join(" "))
}

fn file_set() -> impl Strategy<Value = CommunityFileSet> {
    let cats = prop::sample::select(Category::ALL.to_vec());
    prop::collection::vec((cats, text()), 0..5).prop_map(|fs| {
        CommunityFileSet::new(
            fs.into_iter()
                .enumerate()
                .map(|(i, (category, content))| CommunityFile {
                    category,
                    path: format!("f{i}/{}.md", category.as_str()),
                    content,
                })
                .collect(),
        )
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2000))]

    #[test]
    fn parser_survives_arbitrary_bytes(bytes in prop::collection::vec(any::<u8>(), 0..512)) {
        check_diagnostics(&String::from_utf8_lossy(&bytes));
    }

    #[test]
    fn parser_survives_damaged_cards(
        which in 0usize..4,
        cut in any::<prop::sample::Index>(),
        junk in "[ -~\n\t\"\\[\\](),:]{0,12}",
    ) {
        let src = &seed_sources()[which];
        let mut at = cut.index(src.len() + 1);
        while !src.is_char_boundary(at) {
            at -= 1;
        }
        check_diagnostics(&format!("{}{}{}", &src[..at], junk, &src[at..]));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn rule_findings_are_sound(files in file_set()) {
        let findings = classify_rule(&files);
        prop_assert_eq!(findings.iter().map(|f| f.area).collect::<Vec<_>>(), Area::ALL.to_vec());
        for f in &findings {
            if !f.present {
                prop_assert!(f.evidence.is_empty());
                prop_assert!(f.subfindings.iter().all(|(_, v)| !v));
            } else {
                prop_assert!(!f.evidence.is_empty());
            }
            prop_assert!(f.unsupported().is_empty(), "{:?}", f);
            for e in &f.evidence {
                let file = files.entries.iter().find(|x| x.path == e.path).expect("evidence cites a collected file");
                prop_assert_eq!(&file.content[e.start..e.end], e.excerpt.as_str());
                prop_assert!(e.excerpt.chars().count() <= 240);
                prop_assert!(!e.supports.is_empty());
            }
        }
    }
}
