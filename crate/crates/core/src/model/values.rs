use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::diag::SourceSpan;
use crate::iso::{self, CountryEntry, LanguageEntry, LookupError};

use super::vocab::Proficiency;

/// Where an element or reference came from in card text.
///
/// Always compares equal, so spans never take part in structural equality.
#[derive(Clone, Debug, Default)]
pub struct Origin {
    pub span: Option<SourceSpan>,
    fields: Vec<(&'static str, SourceSpan)>,
}

impl Origin {
    pub fn at(span: SourceSpan) -> Self {
        Origin { span: Some(span), fields: Vec::new() }
    }

    pub fn record_field(&mut self, name: &'static str, span: SourceSpan) {
        self.fields.retain(|(n, _)| *n != name);
        self.fields.push((name, span));
    }

    /// Span of `field` if recorded, else the element span, else synthetic.
    pub fn field(&self, name: &str) -> SourceSpan {
        self.fields
            .iter()
            .find(|(n, _)| *n == name)
            .map(|(_, s)| s.clone())
            .or_else(|| self.span.clone())
            .unwrap_or_else(SourceSpan::synthetic)
    }

    pub fn element(&self) -> SourceSpan {
        self.span.clone().unwrap_or_else(SourceSpan::synthetic)
    }
}

impl PartialEq for Origin {
    fn eq(&self, _: &Self) -> bool {
        true
    }
}

/// Unresolved by-id reference to another card element.
#[derive(Clone, Debug, PartialEq)]
pub struct Ref {
    pub id: String,
    pub origin: Origin,
}

impl Ref {
    pub fn new(id: impl Into<String>) -> Self {
        Ref { id: id.into(), origin: Origin::default() }
    }

    pub fn at(id: impl Into<String>, span: SourceSpan) -> Self {
        Ref { id: id.into(), origin: Origin::at(span) }
    }
}

/// ISO 3166-1 country. Holds the alpha-2 code when the token resolved, or the
/// raw token otherwise (rejected later by validation).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CountryCode(String);

impl CountryCode {
    pub fn lookup(token: &str) -> Result<Self, LookupError> {
        iso::lookup_country(token).map(|e| CountryCode(e.alpha2.into()))
    }

    /// Canonicalizes known tokens and keeps unknown ones verbatim.
    pub fn from_token(token: &str) -> Self {
        Self::lookup(token).unwrap_or_else(|_| CountryCode(token.into()))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    pub fn entry(&self) -> Option<&'static CountryEntry> {
        iso::lookup_country(&self.0).ok()
    }
}

/// ISO 639-1 language; same resolution rule as [`CountryCode`].
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LanguageCode(String);

impl LanguageCode {
    pub fn lookup(token: &str) -> Result<Self, LookupError> {
        iso::lookup_language(token).map(|e| LanguageCode(e.code.into()))
    }

    pub fn from_token(token: &str) -> Self {
        Self::lookup(token).unwrap_or_else(|_| LanguageCode(token.into()))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    pub fn entry(&self) -> Option<&'static LanguageEntry> {
        iso::lookup_language(&self.0).ok()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct LanguageSkill {
    pub language: LanguageCode,
    pub proficiency: Proficiency,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AgeRange {
    pub min: i64,
    pub max: i64,
}

/// One labelled slice of a distribution such as `"male 80%"`.
#[derive(Clone, Debug, PartialEq)]
pub struct DistributionEntry {
    pub label: String,
    pub percent: Option<f64>,
}

impl DistributionEntry {
    pub fn new(label: impl Into<String>, percent: Option<f64>) -> Self {
        DistributionEntry { label: label.into(), percent }
    }

    /// Splits a trailing ` N%` / ` N.N%` into the percentage.
    pub fn parse(text: &str) -> Self {
        if let Some(body) = text.strip_suffix('%') {
            if let Some(idx) = body.rfind(' ') {
                let (label, num) = (body[..idx].trim_end(), &body[idx + 1..]);
                if !label.is_empty() && is_plain_decimal(num) {
                    if let Ok(v) = num.parse::<f64>() {
                        return DistributionEntry::new(label, Some(v));
                    }
                }
            }
        }
        DistributionEntry::new(text, None)
    }
}

impl fmt::Display for DistributionEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.percent {
            Some(p) => write!(f, "{} {}%", self.label, p),
            None => f.write_str(&self.label),
        }
    }
}

/// `\d+(\.\d+)?`
fn is_plain_decimal(s: &str) -> bool {
    let mut parts = s.splitn(2, '.');
    let int = parts.next().unwrap_or("");
    let frac = parts.next();
    !int.is_empty()
        && int.bytes().all(|b| b.is_ascii_digit())
        && frac.is_none_or(|f| !f.is_empty() && f.bytes().all(|b| b.is_ascii_digit()))
}

#[derive(Clone, Debug, PartialEq)]
pub enum Salary {
    Text(String),
    Amount { amount: f64, currency: String },
}

/// Proleptic Gregorian calendar date.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Date {
    year: i32,
    month: u8,
    day: u8,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvalidDate;

impl fmt::Display for InvalidDate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("not a valid calendar date")
    }
}

impl Date {
    pub fn new(year: i32, month: u8, day: u8) -> Result<Self, InvalidDate> {
        if !(1..=12).contains(&month) || day == 0 || day > days_in_month(year, month) {
            return Err(InvalidDate);
        }
        Ok(Date { year, month, day })
    }

    pub fn year(&self) -> i32 {
        self.year
    }

    pub fn month(&self) -> u8 {
        self.month
    }

    pub fn day(&self) -> u8 {
        self.day
    }

    /// Card-text form, `DD-MM-YYYY`.
    pub fn to_dmy(&self) -> String {
        alloc::format!("{:02}-{:02}-{:04}", self.day, self.month, self.year)
    }

    /// `YYYY-MM-DD`
    pub fn parse_iso(s: &str) -> Result<Self, InvalidDate> {
        let b = s.as_bytes();
        if b.len() != 10 || b[4] != b'-' || b[7] != b'-' {
            return Err(InvalidDate);
        }
        let num = |r: core::ops::Range<usize>| -> Result<u32, InvalidDate> {
            let part = &s[r];
            if part.bytes().all(|c| c.is_ascii_digit()) {
                part.parse().map_err(|_| InvalidDate)
            } else {
                Err(InvalidDate)
            }
        };
        Date::new(num(0..4)? as i32, num(5..7)? as u8, num(8..10)? as u8)
    }
}

impl fmt::Display for Date {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:04}-{:02}-{:02}", self.year, self.month, self.day)
    }
}

fn days_in_month(year: i32, month: u8) -> u8 {
    match month {
        1 | 3 | 5 | 7 | 8 | 10 | 12 => 31,
        4 | 6 | 9 | 11 => 30,
        2 if (year % 4 == 0 && year % 100 != 0) || year % 400 == 0 => 29,
        2 => 28,
        _ => 0,
    }
}
