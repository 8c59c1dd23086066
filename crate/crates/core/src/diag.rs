//! Diagnostics shared by the parser, validator, linter and scanner.
//!
//! Every finding carries a [`Code`] from a closed registry. Code strings are
//! stable across releases; `docs/diagnostics.md` is generated from
//! [`Code::ALL`].

use alloc::string::String;
use core::cmp::Ordering;
use core::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Severity {
    Error,
    Warning,
}

impl Severity {
    pub fn as_str(self) -> &'static str {
        match self {
            Severity::Error => "error",
            Severity::Warning => "warning",
        }
    }
}

/// The component that owns a code.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Stage {
    Parse,
    Validate,
    Lint,
    Emit,
    Scan,
}

impl Stage {
    pub fn as_str(self) -> &'static str {
        match self {
            Stage::Parse => "parse",
            Stage::Validate => "validate",
            Stage::Lint => "lint",
            Stage::Emit => "emit",
            Stage::Scan => "scan",
        }
    }
}

macro_rules! registry {
    ($( $variant:ident => $code:literal, $stage:ident, $sev:ident, $summary:literal; )+) => {
        #[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
        pub enum Code {
            $( $variant, )+
        }

        impl Code {
            pub const ALL: &'static [Code] = &[ $( Code::$variant, )+ ];

            pub fn as_str(self) -> &'static str {
                match self { $( Code::$variant => $code, )+ }
            }

            pub fn stage(self) -> Stage {
                match self { $( Code::$variant => Stage::$stage, )+ }
            }

            /// Default severity when the code is reported.
            pub fn severity(self) -> Severity {
                match self { $( Code::$variant => Severity::$sev, )+ }
            }

            pub fn summary(self) -> &'static str {
                match self { $( Code::$variant => $summary, )+ }
            }

            pub fn lookup(s: &str) -> Option<Code> {
                match s { $( $code => Some(Code::$variant), )+ _ => None }
            }
        }
    };
}

registry! {
    SynInvalidChar => "SYN_INVALID_CHAR", Parse, Error, "character that cannot start any token";
    SynUnterminatedString => "SYN_UNTERMINATED_STRING", Parse, Error, "string literal not closed before end of line";
    SynBadEscape => "SYN_BAD_ESCAPE", Parse, Error, "unsupported escape sequence in string literal";
    SynBadNumber => "SYN_BAD_NUMBER", Parse, Error, "malformed or out-of-range numeric literal";
    SynBadDate => "SYN_BAD_DATE", Parse, Error, "date is not a valid DD-MM-YYYY calendar date";
    SynExpectedDeclaration => "SYN_EXPECTED_DECLARATION", Parse, Error, "expected a top-level `<keyword> <id>` declaration";
    SynUnknownKeyword => "SYN_UNKNOWN_KEYWORD", Parse, Error, "declaration keyword is not part of the language";
    SynExpectedIdent => "SYN_EXPECTED_IDENT", Parse, Error, "declaration keyword not followed by an element id";
    SynExpectedColon => "SYN_EXPECTED_COLON", Parse, Error, "field name not followed by `:`";
    SynExpectedValue => "SYN_EXPECTED_VALUE", Parse, Error, "field has no value or a value is malformed";
    SynUnclosedDelimiter => "SYN_UNCLOSED_DELIMITER", Parse, Error, "`[` or `(` without its closing delimiter";
    SynTypeMismatch => "SYN_TYPE_MISMATCH", Parse, Error, "value has the wrong shape for its field";
    SynUnknownEnum => "SYN_UNKNOWN_ENUM", Parse, Error, "bare token is not a member of the field's enumeration";
    SynMissingField => "SYN_MISSING_FIELD", Parse, Error, "dependent field given without the field it requires";
    SynUnknownField => "SYN_UNKNOWN_FIELD", Parse, Warning, "field is not defined for this block kind and was ignored";
    SynDuplicateField => "SYN_DUPLICATE_FIELD", Parse, Warning, "field repeated in one block; the last value wins";
    SynElided => "SYN_ELIDED", Parse, Warning, "`...` elision marker skipped";
    UnresolvedRef => "UNRESOLVED_REF", Validate, Error, "reference to an id that is not declared, or declared with the wrong kind";
    DuplicateId => "DUPLICATE_ID", Validate, Error, "element id declared more than once";
    UnknownCountry => "UNKNOWN_COUNTRY", Validate, Error, "country not found in the ISO 3166 table";
    UnknownLanguage => "UNKNOWN_LANGUAGE", Validate, Error, "language not found in the ISO 639 table";
    RangeInverted => "RANGE_INVERTED", Validate, Error, "ageRange has min > max or lies outside [0, 130]";
    ValueOutOfRange => "VALUE_OUT_OF_RANGE", Validate, Error, "numeric value outside its allowed range";
    BadMembershipDates => "BAD_MEMBERSHIP_DATES", Validate, Error, "membership ends before it starts";
    TeamsizeLtMembers => "TEAMSIZE_LT_MEMBERS", Validate, Error, "teamSize smaller than max(1, listed members)";
    DistributionSum => "DISTRIBUTION_SUM", Validate, Warning, "percentages of one distribution exceed 100, or are all given and fall short of 100";
    NegativeTenure => "NEGATIVE_TENURE", Validate, Error, "tenure or averageTenure below zero";
    KindDetailMismatch => "KIND_DETAIL_MISMATCH", Validate, Error, "team carries detail fields of another team kind";
    EmptyDescription => "EMPTY_DESCRIPTION", Validate, Warning, "adaptation or use case without a description";
    InternalWithCompany => "INTERNAL_WITH_COMPANY", Validate, Error, "internal labour force names a company other than the project's own organization";
    EmptyLabel => "EMPTY_LABEL", Validate, Error, "distribution entry with an empty label";
    MissingProject => "MISSING_PROJECT", Validate, Warning, "card has no project name";
    SmallGroupReidentification => "SMALL_GROUP_REIDENTIFICATION", Lint, Warning, "small team discloses two or more sensitive aggregate attributes";
    SingletonAttribute => "SINGLETON_ATTRIBUTE", Lint, Warning, "individual participant discloses ethnicity or religious belief";
    EmitUnresolved => "EMIT_UNRESOLVED", Emit, Error, "card does not validate and cannot be exported";
    JsonSchemaMismatch => "JSON_SCHEMA_MISMATCH", Emit, Error, "JSON document does not match schema version 1.0";
    IoError => "IO_ERROR", Scan, Error, "file system read failed";
    HttpError => "HTTP_ERROR", Scan, Error, "remote endpoint returned an unexpected status or failed";
    RateLimited => "RATE_LIMITED", Scan, Error, "hosting platform rate limit still exhausted after retries";
    NotFound => "NOT_FOUND", Scan, Error, "repository or path does not exist";
    ClassifierFormatError => "CLASSIFIER_FORMAT_ERROR", Scan, Error, "LLM response did not follow the JSON verdict contract";
    EvidenceNormalized => "EVIDENCE_NORMALIZED", Scan, Warning, "classifier verdict adjusted to satisfy the finding invariants";
    EmptySearch => "EMPTY_SEARCH", Scan, Warning, "repository search returned no candidates";
}

impl fmt::Display for Code {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// 1-based, inclusive-start / exclusive-end position range in a named source.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SourceSpan {
    pub file: String,
    pub start_line: u32,
    pub start_col: u32,
    pub end_line: u32,
    pub end_col: u32,
}

impl SourceSpan {
    pub fn new(file: &str, start: (u32, u32), end: (u32, u32)) -> Self {
        SourceSpan {
            file: file.into(),
            start_line: start.0,
            start_col: start.1,
            end_line: end.0,
            end_col: end.1,
        }
    }

    /// Placeholder for findings on programmatically built cards.
    pub fn synthetic() -> Self {
        SourceSpan::new("<memory>", (1, 1), (1, 1))
    }

    pub fn to(&self, other: &SourceSpan) -> SourceSpan {
        SourceSpan {
            file: self.file.clone(),
            start_line: self.start_line,
            start_col: self.start_col,
            end_line: other.end_line,
            end_col: other.end_col,
        }
    }
}

impl fmt::Display for SourceSpan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}:{}", self.file, self.start_line, self.start_col)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagnostic {
    pub severity: Severity,
    pub code: Code,
    pub message: String,
    pub span: SourceSpan,
}

impl Diagnostic {
    pub fn new(code: Code, message: impl Into<String>, span: SourceSpan) -> Self {
        Diagnostic { severity: code.severity(), code, message: message.into(), span }
    }

    pub fn is_error(&self) -> bool {
        self.severity == Severity::Error
    }

    /// Span first, then code string, then message.
    pub fn canonical_cmp(&self, other: &Self) -> Ordering {
        self.span
            .cmp(&other.span)
            .then_with(|| self.code.as_str().cmp(other.code.as_str()))
            .then_with(|| self.message.cmp(&other.message))
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}[{}]: {}", self.span, self.severity.as_str(), self.code, self.message)
    }
}

pub fn has_errors(diags: &[Diagnostic]) -> bool {
    diags.iter().any(Diagnostic::is_error)
}
