use divcard_core::scan::{match_community_file, Category, Matcher};

#[test]
fn named_variants() {
    for name in ["coc.md", "code_of_conduct.txt", "CODE-OF-CONDUCT.adoc"] {
        assert_eq!(match_community_file(name), Some(Category::CodeOfConduct), "{name}");
    }
}

/// `fixtures/matcher_variants.tsv`: file name, tab, category token or `-`.
fn table() -> Vec<(String, Option<Category>)> {
    let path = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures/matcher_variants.tsv");
    std::fs::read_to_string(path)
        .unwrap()
        .lines()
        .filter(|l| !l.starts_with('#') && !l.is_empty())
        .map(|l| {
            let (name, cat) = l.split_once('\t').unwrap();
            let cat = if cat == "-" { None } else { Some(Category::from_token(cat).unwrap()) };
            (name.to_owned(), cat)
        })
        .collect()
}

#[test]
fn variant_table() {
    let table = table();
    assert_eq!(table.len(), 30);
    for (name, want) in &table {
        assert_eq!(match_community_file(name), *want, "{name}");
    }
}

#[test]
fn extra_stems() {
    let m = Matcher::default().with_stem("CODE-REVIEW", Category::Contributing);
    assert_eq!(m.category("code_review.md"), Some(Category::Contributing));
    assert_eq!(Matcher::default().category("code_review.md"), None);
}
