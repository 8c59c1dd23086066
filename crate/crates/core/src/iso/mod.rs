//! Embedded ISO 3166-1 and ISO 639-1 tables.
//!
//! Lookups are case-insensitive over every accepted form. Countries match the
//! alpha-2 code, the alpha-3 code or the English short name; languages match
//! the two-letter code, any single reference name, or all reference names
//! joined with `-` (`Catalan-Valencian`). In names, `_` and space are
//! interchangeable so multi-word names can be written as bare tokens.

use alloc::string::String;
use core::fmt;

mod countries;
mod languages;

#[derive(Debug, PartialEq, Eq, Hash)]
pub struct CountryEntry {
    pub alpha2: &'static str,
    pub alpha3: &'static str,
    pub name: &'static str,
}

#[derive(Debug, PartialEq, Eq, Hash)]
pub struct LanguageEntry {
    pub code: &'static str,
    pub names: &'static [&'static str],
}

impl LanguageEntry {
    /// Reference names joined with `-`, e.g. `Spanish-Castilian`.
    pub fn display_name(&self) -> String {
        self.names.join("-")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LookupError {
    UnknownCountry(String),
    UnknownLanguage(String),
}

impl fmt::Display for LookupError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LookupError::UnknownCountry(t) => write!(f, "unknown ISO 3166 country `{t}`"),
            LookupError::UnknownLanguage(t) => write!(f, "unknown ISO 639 language `{t}`"),
        }
    }
}

pub fn countries() -> &'static [CountryEntry] {
    countries::COUNTRIES
}

pub fn languages() -> &'static [LanguageEntry] {
    languages::LANGUAGES
}

fn fold(b: u8) -> u8 {
    match b {
        b'_' => b' ',
        _ => b.to_ascii_lowercase(),
    }
}

fn same(token: &str, candidate: &str) -> bool {
    token.len() == candidate.len()
        && token.bytes().zip(candidate.bytes()).all(|(a, b)| fold(a) == fold(b))
}

/// Matches `token` against `names` joined by `-` without allocating.
fn same_joined(token: &str, names: &[&str]) -> bool {
    let mut rest = token;
    for (i, name) in names.iter().enumerate() {
        if i > 0 {
            match rest.strip_prefix('-') {
                Some(r) => rest = r,
                None => return false,
            }
        }
        if rest.len() < name.len() || !rest.is_char_boundary(name.len()) {
            return false;
        }
        let (head, tail) = rest.split_at(name.len());
        if !same(head, name) {
            return false;
        }
        rest = tail;
    }
    rest.is_empty()
}

pub fn lookup_country(token: &str) -> Result<&'static CountryEntry, LookupError> {
    let token = token.trim();
    countries::COUNTRIES
        .iter()
        .find(|c| same(token, c.alpha2) || same(token, c.alpha3) || same(token, c.name))
        .ok_or_else(|| LookupError::UnknownCountry(token.into()))
}

pub fn lookup_language(token: &str) -> Result<&'static LanguageEntry, LookupError> {
    let token = token.trim();
    languages::LANGUAGES
        .iter()
        .find(|l| {
            same(token, l.code)
                || l.names.iter().any(|n| same(token, n))
                || same_joined(token, l.names)
        })
        .ok_or_else(|| LookupError::UnknownLanguage(token.into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::collections::BTreeSet;

    #[test]
    fn listing_countries_resolve() {
        assert_eq!(lookup_country("Spain").unwrap().alpha2, "ES");
        assert_eq!(lookup_country("Luxembourg").unwrap().alpha2, "LU");
        assert_eq!(lookup_country("lux").unwrap().alpha2, "LU");
        assert_eq!(lookup_country("united_states_of_america").unwrap().alpha2, "US");
        assert_eq!(
            lookup_country("Atlantis"),
            Err(LookupError::UnknownCountry("Atlantis".into()))
        );
    }

    #[test]
    fn listing_languages_resolve() {
        assert_eq!(lookup_language("Catalan-Valencian").unwrap().code, "ca");
        assert_eq!(lookup_language("Spanish-Castilian").unwrap().code, "es");
        assert_eq!(lookup_language("English").unwrap().code, "en");
        assert_eq!(lookup_language("EN").unwrap().code, "en");
        assert_eq!(lookup_language("valencian").unwrap().code, "ca");
        assert_eq!(lookup_language("Luba-Katanga").unwrap().code, "lu");
        assert!(lookup_language("Elvish").is_err());
        assert!(lookup_language("Catalan-").is_err());
        assert!(lookup_language("").is_err());
    }

    #[test]
    fn tables_have_unique_keys() {
        let a2: BTreeSet<_> = countries().iter().map(|c| c.alpha2).collect();
        let a3: BTreeSet<_> = countries().iter().map(|c| c.alpha3).collect();
        assert_eq!(a2.len(), countries().len());
        assert_eq!(a3.len(), countries().len());
        let codes: BTreeSet<_> = languages().iter().map(|l| l.code).collect();
        assert_eq!(codes.len(), languages().len());
    }

    #[test]
    fn name_code_closure() {
        for c in countries() {
            let by_code = lookup_country(c.alpha2).unwrap();
            assert_eq!(lookup_country(by_code.name).unwrap(), by_code);
            assert_eq!(lookup_country(c.alpha3).unwrap(), by_code);
        }
        for l in languages() {
            let by_code = lookup_language(l.code).unwrap();
            assert_eq!(lookup_language(&by_code.display_name()).unwrap(), by_code);
        }
    }
}
