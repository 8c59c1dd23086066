//! Community-file categories and the file-name variant table.

use alloc::string::String;
use alloc::vec::Vec;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Category {
    Readme,
    Contributing,
    CodeOfConduct,
    Governance,
    Codeowners,
    Community,
    Support,
    Security,
    Release,
    Funding,
}

impl Category {
    pub const ALL: [Category; 10] = [
        Category::Readme,
        Category::Contributing,
        Category::CodeOfConduct,
        Category::Governance,
        Category::Codeowners,
        Category::Community,
        Category::Support,
        Category::Security,
        Category::Release,
        Category::Funding,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Category::Readme => "readme",
            Category::Contributing => "contributing",
            Category::CodeOfConduct => "codeOfConduct",
            Category::Governance => "governance",
            Category::Codeowners => "codeowners",
            Category::Community => "community",
            Category::Support => "support",
            Category::Security => "security",
            Category::Release => "release",
            Category::Funding => "funding",
        }
    }

    pub fn from_token(s: &str) -> Option<Self> {
        Self::ALL.iter().copied().find(|c| c.as_str() == s)
    }
}

/// File-name stems per category, compared after lowercasing and dropping
/// `-`, `_` and spaces, so `CODE-OF-CONDUCT`, `code_of_conduct` and
/// `CodeOfConduct` all normalize to `codeofconduct`.
pub const VARIANT_TABLE: &[(Category, &[&str])] = &[
    (Category::Readme, &["readme", "readme1st", "readmefirst"]),
    (Category::Contributing, &["contributing", "contribute", "contribution", "contributions", "howtocontribute"]),
    (Category::CodeOfConduct, &["codeofconduct", "coc", "conduct"]),
    (Category::Governance, &["governance", "governancepolicy", "charter"]),
    (Category::Codeowners, &["codeowners", "owners", "maintainers"]),
    (Category::Community, &["community", "communityguidelines", "contributors", "authors", "team"]),
    (Category::Support, &["support", "help", "gettinghelp"]),
    (Category::Security, &["security", "securitypolicy"]),
    (Category::Release, &["release", "releases", "releasenotes", "releasing", "changelog", "changes", "history"]),
    (Category::Funding, &["funding", "fund", "sponsors", "sponsorship", "backers", "donate", "donations"]),
];

/// Accepted extensions; the empty string stands for "no extension".
/// `yml`/`yaml` cover the platform's `FUNDING.yml`.
pub const EXTENSIONS: &[&str] = &["", "md", "markdown", "txt", "adoc", "asciidoc", "rst", "org", "yml", "yaml"];

/// Name → category table, extensible with extra stems.
#[derive(Clone, Debug, Default)]
pub struct Matcher {
    extra: Vec<(String, Category)>,
}

impl Matcher {
    /// Adds a stem (normalized like the built-in ones).
    pub fn with_stem(mut self, stem: &str, category: Category) -> Self {
        self.extra.push((normalize(stem), category));
        self
    }

    pub fn category(&self, file_name: &str) -> Option<Category> {
        let (stem, ext) = match file_name.find('.') {
            Some(i) => (&file_name[..i], &file_name[i + 1..]),
            None => (file_name, ""),
        };
        // Allow one locale infix: `README.es.md`.
        let ext = match ext.rsplit_once('.') {
            Some((locale, e)) if is_locale(locale) => e,
            Some(_) => return None,
            None => ext,
        };
        if !EXTENSIONS.iter().any(|e| e.eq_ignore_ascii_case(ext)) {
            return None;
        }
        let stem = normalize(stem);
        if stem.is_empty() {
            return None;
        }
        if let Some((_, c)) = self.extra.iter().find(|(s, _)| *s == stem) {
            return Some(*c);
        }
        VARIANT_TABLE.iter().find(|(_, stems)| stems.contains(&stem.as_str())).map(|(c, _)| *c)
    }
}

fn is_locale(s: &str) -> bool {
    let mut parts = s.split(['-', '_']);
    let lang = parts.next().unwrap_or("");
    (2..=3).contains(&lang.len())
        && lang.bytes().all(|b| b.is_ascii_alphabetic())
        && parts.all(|p| (2..=4).contains(&p.len()) && p.bytes().all(|b| b.is_ascii_alphanumeric()))
}

fn normalize(stem: &str) -> String {
    stem.chars().filter(|c| !matches!(c, '-' | '_' | ' ')).flat_map(char::to_lowercase).collect()
}

/// Category of a bare file name under the built-in table.
pub fn match_community_file(file_name: &str) -> Option<Category> {
    Matcher::default().category(file_name)
}

/// One harvested file. `path` is relative to the repository root with `/`
/// separators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommunityFile {
    pub category: Category,
    pub path: String,
    pub content: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CommunityFileSet {
    pub entries: Vec<CommunityFile>,
}

impl CommunityFileSet {
    pub fn new(mut entries: Vec<CommunityFile>) -> Self {
        entries.sort_by(|a, b| a.path.cmp(&b.path));
        CommunityFileSet { entries }
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn of(&self, c: Category) -> impl Iterator<Item = &CommunityFile> {
        self.entries.iter().filter(move |e| e.category == c)
    }
}
