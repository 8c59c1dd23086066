//! Recursive-descent parser for `.divcard` text.
//!
//! Grammar, informally:
//!
//! ```text
//! card   := decl*
//! decl   := KEYWORD (IDENT | STRING) elided? field*   |   "governance" field*
//! elided := "[" "..." "]"
//! field  := IDENT ":" value
//! value  := STRING | INT | DECIMAL | DATE | IDENT
//!         | "(" value ("," value)* ")"
//!         | "[" (value | "...") ("," (value | "..."))* ","? "]"
//! ```
//!
//! A block that contains any error is dropped whole; parsing resumes at the
//! next keyword that starts a line. References are kept unresolved.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use super::lexer::{tokenize, Tok, Token};
use crate::diag::{Code, Diagnostic, SourceSpan};
use crate::model::*;

pub const KEYWORDS: &[&str] = &[
    "project",
    "developmentTeam",
    "testerTeam",
    "publicReporterTeam",
    "nonCodingContributorTeam",
    "participant",
    "organization",
    "targetCommunity",
    "socialContext",
    "useCase",
    "adaptation",
    "governance",
    "body",
    "rule",
    "funder",
];

/// Every field name the language defines, for span bookkeeping.
const FIELD_NAMES: &[&str] = &[
    "description",
    "ageRange",
    "locations",
    "countries",
    "ethnicities",
    "genders",
    "religiousBeliefs",
    "educationalLevels",
    "spokenLanguages",
    "socioEconomicStati",
    "skillLevels",
    "workplaceType",
    "averageTenure",
    "teamSize",
    "startDate",
    "members",
    "sourcing",
    "salary",
    "labourRights",
    "company",
    "labourCountry",
    "testType",
    "platform",
    "taskDescription",
    "iterations",
    "durationHours",
    "reportingPlatforms",
    "contributionCount",
    "contributorRoles",
    "name",
    "ethnicity",
    "religiousBelief",
    "gender",
    "age",
    "socioEconomicStatus",
    "skillLevel",
    "tenure",
    "educationLevel",
    "country",
    "memberships",
    "participantId",
    "type",
    "needs",
    "culturalTraits",
    "targetCommunities",
    "socialContext",
    "relatedTeams",
    "release",
    "decisionProcess",
    "text",
    "externalRef",
    "shareholders",
    "legalRegulation",
];

fn static_field(name: &str) -> Option<&'static str> {
    FIELD_NAMES.iter().copied().find(|n| *n == name)
}

pub fn is_keyword(s: &str) -> bool {
    KEYWORDS.contains(&s)
}

/// Outcome of [`parse_card`]. When `diagnostics` holds an error the card is
/// partial and must not be treated as valid.
#[derive(Clone, Debug, PartialEq)]
pub struct ParseResult {
    pub card: Card,
    pub diagnostics: Vec<Diagnostic>,
}

impl ParseResult {
    pub fn has_errors(&self) -> bool {
        crate::diag::has_errors(&self.diagnostics)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BadDate(pub String);

impl fmt::Display for BadDate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "`{}` is not a valid DD-MM-YYYY date", self.0)
    }
}

/// Parses `DD-MM-YYYY`.
pub fn parse_date(token: &str) -> Result<Date, BadDate> {
    let b = token.as_bytes();
    let shaped = b.len() == 10
        && b[2] == b'-'
        && b[5] == b'-'
        && b.iter().enumerate().all(|(i, c)| i == 2 || i == 5 || c.is_ascii_digit());
    if !shaped {
        return Err(BadDate(token.into()));
    }
    let day: u8 = token[0..2].parse().map_err(|_| BadDate(token.into()))?;
    let month: u8 = token[3..5].parse().map_err(|_| BadDate(token.into()))?;
    let year: i32 = token[6..10].parse().map_err(|_| BadDate(token.into()))?;
    Date::new(year, month, day).map_err(|_| BadDate(token.into()))
}

pub fn parse_card(source: &str, file_name: &str) -> ParseResult {
    let mut diagnostics = Vec::new();
    let tokens = tokenize(source, file_name, &mut diagnostics);
    // Card-level findings (e.g. a missing header) point at the file start
    // until a `project` header supplies a better span.
    let card = Card { origin: Origin::at(SourceSpan::new(file_name, (1, 1), (1, 1))), ..Card::default() };
    let mut p = Parser { tokens, pos: 0, diags: diagnostics, card, seen_project: false };
    p.run();
    let Parser { mut diags, card, .. } = p;
    diags.sort_by(|a, b| a.canonical_cmp(b));
    ParseResult { card, diagnostics: diags }
}

#[derive(Clone, Debug)]
enum V {
    Str(String),
    Int(i64),
    Dec(f64),
    Date(String),
    Ident(String),
    Tuple(Vec<Val>),
    List(Vec<Val>),
}

#[derive(Clone, Debug)]
struct Val {
    v: V,
    span: SourceSpan,
}

#[derive(Clone, Debug)]
struct Field {
    name: String,
    name_span: SourceSpan,
    value: Val,
}

impl Field {
    fn span(&self) -> SourceSpan {
        self.name_span.to(&self.value.span)
    }
}

/// Marker for "already reported".
struct Failed;

type PResult<T> = Result<T, Failed>;

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
    diags: Vec<Diagnostic>,
    card: Card,
    seen_project: bool,
}

impl Parser {
    fn tok(&self, i: usize) -> &Tok {
        &self.tokens[i.min(self.tokens.len() - 1)].tok
    }

    fn token(&self, i: usize) -> &Token {
        &self.tokens[i.min(self.tokens.len() - 1)]
    }

    fn cur(&self) -> &Token {
        self.token(self.pos)
    }

    fn advance(&mut self) {
        if self.pos < self.tokens.len() - 1 {
            self.pos += 1;
        }
    }

    fn error(&mut self, code: Code, msg: impl Into<String>, span: SourceSpan) {
        self.diags.push(Diagnostic::new(code, msg, span));
    }

    fn is_decl_start(&self, i: usize) -> bool {
        match self.tok(i) {
            Tok::Ident(kw) if is_keyword(kw) => {
                if kw == "governance" {
                    !matches!(self.tok(i + 1), Tok::Colon)
                } else {
                    self.id_follows(i)
                }
            }
            _ => false,
        }
    }

    /// Token `i` is followed, on the same line, by something that can be an
    /// element id.
    fn id_follows(&self, i: usize) -> bool {
        matches!(self.tok(i + 1), Tok::Ident(_) | Tok::Str(_)) && !self.token(i + 1).line_start
    }

    /// An unindented `word id` line: a declaration with a misspelled or
    /// unknown keyword.
    fn is_unknown_decl(&self, i: usize) -> bool {
        let t = self.token(i);
        matches!(t.tok, Tok::Ident(_)) && t.line_start && t.span.start_col == 1 && self.id_follows(i)
    }

    /// A token that begins a new line-level construct: a field or declaration.
    fn starts_line_construct(&self, i: usize) -> bool {
        let t = self.token(i);
        t.line_start
            && (self.is_decl_start(i)
                || (matches!(t.tok, Tok::Ident(_)) && matches!(self.tok(i + 1), Tok::Colon)))
    }

    fn recover(&mut self) {
        self.advance();
        while !matches!(self.cur().tok, Tok::Eof)
            && !(self.cur().line_start && self.is_decl_start(self.pos))
        {
            self.advance();
        }
    }

    fn run(&mut self) {
        loop {
            let t = self.cur().clone();
            match &t.tok {
                Tok::Eof => break,
                _ if self.is_decl_start(self.pos) => self.block(),
                Tok::Bad => self.recover(),
                Tok::Ident(kw) if is_keyword(kw) => {
                    self.error(
                        Code::SynExpectedIdent,
                        alloc::format!("`{kw}` must be followed by an element id"),
                        t.span.clone(),
                    );
                    self.recover();
                }
                Tok::Ident(word) if self.id_follows(self.pos) => {
                    self.error(
                        Code::SynUnknownKeyword,
                        alloc::format!("unknown declaration keyword `{word}`"),
                        t.span.clone(),
                    );
                    self.recover();
                }
                _ => {
                    self.error(
                        Code::SynExpectedDeclaration,
                        "expected a declaration such as `developmentTeam <id>`",
                        t.span.clone(),
                    );
                    self.recover();
                }
            }
        }
    }

    fn block(&mut self) {
        let head = self.cur().clone();
        let Tok::Ident(kw) = head.tok.clone() else { unreachable!() };
        self.advance();
        let mut id = String::new();
        let mut header_end = head.span.clone();
        if kw != "governance" {
            let t = self.cur().clone();
            match t.tok {
                Tok::Ident(s) => id = s,
                Tok::Str(s) if kw == "project" => id = s,
                _ => {
                    self.error(
                        Code::SynExpectedIdent,
                        alloc::format!("`{kw}` ids must be bare identifiers"),
                        t.span.clone(),
                    );
                    self.recover();
                    return;
                }
            }
            header_end = t.span.clone();
            self.advance();
        }
        if matches!(self.cur().tok, Tok::LBracket)
            && matches!(self.tok(self.pos + 1), Tok::Ellipsis)
            && matches!(self.tok(self.pos + 2), Tok::RBracket)
        {
            let span = self.cur().span.to(&self.token(self.pos + 2).span);
            self.error(Code::SynElided, "block body elided with `[...]`", span.clone());
            header_end = span;
            self.pos += 3;
        }
        let fields = match self.fields() {
            Ok(f) => f,
            Err(Failed) => {
                self.recover();
                return;
            }
        };
        let end = fields.last().map(|f| f.value.span.clone()).unwrap_or(header_end);
        let span = head.span.to(&end);
        let mut b = Builder::new(&kw, span.clone(), fields, &mut self.diags);
        let element = b.build(&kw, id, &mut self.card, &mut self.seen_project);
        if b.failed {
            return;
        }
        if let Some(e) = element {
            self.card.push(e);
        }
    }

    fn fields(&mut self) -> PResult<Vec<Field>> {
        let mut out = Vec::new();
        loop {
            let t = self.cur().clone();
            match &t.tok {
                Tok::Eof => break,
                Tok::Ident(name) if matches!(self.tok(self.pos + 1), Tok::Colon) => {
                    let colon = self.token(self.pos + 1).span.clone();
                    self.pos += 2;
                    let value = self.field_value(name, colon)?;
                    out.push(Field { name: name.clone(), name_span: t.span.clone(), value });
                }
                _ if self.is_decl_start(self.pos) => break,
                Tok::Ident(kw) if is_keyword(kw) && t.line_start => break,
                _ if self.is_unknown_decl(self.pos) => break,
                Tok::Bad => return Err(Failed),
                Tok::Ident(name) => {
                    let next = self.token(self.pos + 1).span.clone();
                    self.error(
                        Code::SynExpectedColon,
                        alloc::format!("expected `:` after field name `{name}`"),
                        next,
                    );
                    return Err(Failed);
                }
                _ => {
                    self.error(
                        Code::SynExpectedDeclaration,
                        "expected `field: value` or a new declaration",
                        t.span.clone(),
                    );
                    return Err(Failed);
                }
            }
        }
        Ok(out)
    }

    fn field_value(&mut self, name: &str, colon: SourceSpan) -> PResult<Val> {
        if matches!(self.cur().tok, Tok::Eof) || self.starts_line_construct(self.pos) {
            self.error(Code::SynExpectedValue, alloc::format!("field `{name}` has no value"), colon);
            return Err(Failed);
        }
        self.value()
    }

    fn value(&mut self) -> PResult<Val> {
        let t = self.cur().clone();
        let v = match t.tok {
            Tok::Str(s) => V::Str(s),
            Tok::Int(i) => V::Int(i),
            Tok::Dec(d) => V::Dec(d),
            Tok::DateLike(s) => V::Date(s),
            Tok::Ident(s) => V::Ident(s),
            Tok::LParen => return self.seq(Tok::RParen, false),
            Tok::LBracket => return self.seq(Tok::RBracket, true),
            Tok::Bad => return Err(Failed),
            _ => {
                self.error(Code::SynExpectedValue, "expected a value", t.span.clone());
                return Err(Failed);
            }
        };
        self.advance();
        Ok(Val { v, span: t.span })
    }

    fn seq(&mut self, close: Tok, list: bool) -> PResult<Val> {
        let open = self.cur().span.clone();
        let closer = if list { ']' } else { ')' };
        self.advance();
        let mut items = Vec::new();
        loop {
            let t = self.cur().clone();
            if t.tok == close {
                self.advance();
                let v = if list { V::List(items) } else { V::Tuple(items) };
                return Ok(Val { v, span: open.to(&t.span) });
            }
            if list && t.tok == Tok::Ellipsis {
                self.error(Code::SynElided, "list elements elided with `...`", t.span.clone());
                self.advance();
                if self.cur().tok == Tok::Comma {
                    self.advance();
                }
                continue;
            }
            if matches!(t.tok, Tok::Eof) || self.starts_line_construct(self.pos) {
                self.error(
                    Code::SynUnclosedDelimiter,
                    alloc::format!("missing `{closer}` for this delimiter"),
                    open,
                );
                return Err(Failed);
            }
            items.push(self.value()?);
            let t = self.cur().clone();
            if t.tok == Tok::Comma {
                self.advance();
            } else if t.tok == close || (list && t.tok == Tok::Ellipsis) {
            } else if matches!(t.tok, Tok::Eof) || self.starts_line_construct(self.pos) {
                self.error(
                    Code::SynUnclosedDelimiter,
                    alloc::format!("missing `{closer}` for this delimiter"),
                    open,
                );
                return Err(Failed);
            } else if t.tok == Tok::Bad {
                return Err(Failed);
            } else {
                self.error(
                    Code::SynExpectedValue,
                    alloc::format!("expected `,` or `{closer}`"),
                    t.span.clone(),
                );
                return Err(Failed);
            }
        }
    }
}

/// Converts the raw fields of one block into a model element.
struct Builder<'d> {
    span: SourceSpan,
    fields: Vec<Field>,
    diags: &'d mut Vec<Diagnostic>,
    failed: bool,
    origin: Origin,
}

fn describe(v: &V) -> &'static str {
    match v {
        V::Str(_) => "a string",
        V::Int(_) => "an integer",
        V::Dec(_) => "a decimal",
        V::Date(_) => "a date",
        V::Ident(_) => "a bare token",
        V::Tuple(_) => "a tuple",
        V::List(_) => "a list",
    }
}

impl<'d> Builder<'d> {
    fn new(kw: &str, span: SourceSpan, raw: Vec<Field>, diags: &'d mut Vec<Diagnostic>) -> Self {
        let mut fields = Vec::new();
        for (i, f) in raw.iter().enumerate() {
            if raw[..i].iter().any(|g| g.name == f.name) {
                diags.push(Diagnostic::new(
                    Code::SynDuplicateField,
                    alloc::format!("`{}` repeated in `{kw}` block; this value wins", f.name),
                    f.name_span.clone(),
                ));
            }
            if !raw[i + 1..].iter().any(|g| g.name == f.name) {
                fields.push(f.clone());
            }
        }
        let mut origin = Origin::at(span.clone());
        for f in &fields {
            if let Some(n) = static_field(&f.name) {
                origin.record_field(n, f.span());
            }
        }
        Builder { span, fields, diags, failed: false, origin }
    }

    fn fail(&mut self, code: Code, msg: String, span: SourceSpan) {
        self.diags.push(Diagnostic::new(code, msg, span));
        self.failed = true;
    }

    fn mismatch(&mut self, field: &str, want: &str, val: &Val) {
        let msg = alloc::format!("`{field}` expects {want}, found {}", describe(&val.v));
        self.fail(Code::SynTypeMismatch, msg, val.span.clone());
    }

    fn unknown(&mut self, kw: &str, f: &Field) {
        self.diags.push(Diagnostic::new(
            Code::SynUnknownField,
            alloc::format!("`{}` is not a field of `{kw}`; ignored", f.name),
            f.name_span.clone(),
        ));
    }

    fn string(&mut self, field: &str, val: &Val) -> Option<String> {
        match &val.v {
            V::Str(s) => Some(s.clone()),
            _ => {
                self.mismatch(field, "a string", val);
                None
            }
        }
    }

    fn int(&mut self, field: &str, val: &Val) -> Option<i64> {
        match &val.v {
            V::Int(i) => Some(*i),
            _ => {
                self.mismatch(field, "an integer", val);
                None
            }
        }
    }

    fn float(&mut self, field: &str, val: &Val) -> Option<f64> {
        match &val.v {
            V::Int(i) => Some(*i as f64),
            V::Dec(d) => Some(*d),
            _ => {
                self.mismatch(field, "a number", val);
                None
            }
        }
    }

    fn date(&mut self, field: &str, val: &Val) -> Option<Date> {
        let text = match &val.v {
            V::Date(s) => s.clone(),
            V::Int(i) => i.to_string(),
            V::Dec(d) => d.to_string(),
            _ => {
                self.mismatch(field, "a DD-MM-YYYY date", val);
                return None;
            }
        };
        match parse_date(&text) {
            Ok(d) => Some(d),
            Err(e) => {
                self.fail(Code::SynBadDate, e.to_string(), val.span.clone());
                None
            }
        }
    }

    fn token<T>(
        &mut self,
        field: &str,
        val: &Val,
        parse: impl Fn(&str) -> Option<T>,
        options: &[&str],
    ) -> Option<T> {
        match &val.v {
            V::Ident(s) => match parse(s) {
                Some(t) => Some(t),
                None => {
                    let msg = alloc::format!(
                        "`{s}` is not a valid `{field}` value (expected one of: {})",
                        options.join(", ")
                    );
                    self.fail(Code::SynUnknownEnum, msg, val.span.clone());
                    None
                }
            },
            _ => {
                self.mismatch(field, "a bare enumeration token", val);
                None
            }
        }
    }

    /// Closed vocabulary with a free-text `Other` selected by a quoted string.
    fn open_token<T>(
        &mut self,
        field: &str,
        val: &Val,
        parse: impl Fn(&str) -> Option<T>,
        other: impl Fn(String) -> T,
        options: &[&str],
    ) -> Option<T> {
        match &val.v {
            V::Str(s) => Some(other(s.clone())),
            _ => self.token(field, val, parse, options),
        }
    }

    fn code_text(&mut self, field: &str, val: &Val) -> Option<String> {
        match &val.v {
            V::Ident(s) | V::Str(s) => Some(s.clone()),
            _ => {
                self.mismatch(field, "an ISO code or name", val);
                None
            }
        }
    }

    fn country(&mut self, field: &str, val: &Val) -> Option<CountryCode> {
        self.code_text(field, val).map(|s| CountryCode::from_token(&s))
    }

    fn skill(&mut self, field: &str, val: &Val) -> Option<LanguageSkill> {
        match &val.v {
            V::Tuple(items) if items.len() == 2 => {
                let language = LanguageCode::from_token(&self.code_text(field, &items[0])?);
                let proficiency = self.token(
                    field,
                    &items[1],
                    Proficiency::from_token,
                    &["a1", "a2", "b1", "b2", "c1", "c2"],
                )?;
                Some(LanguageSkill { language, proficiency })
            }
            _ => {
                self.mismatch(field, "a (language, proficiency) pair", val);
                None
            }
        }
    }

    fn reference(&mut self, field: &str, val: &Val) -> Option<Ref> {
        match &val.v {
            V::Ident(s) => Some(Ref::at(s.clone(), val.span.clone())),
            _ => {
                self.mismatch(field, "an element id", val);
                None
            }
        }
    }

    fn list<T>(
        &mut self,
        field: &str,
        val: &Val,
        mut each: impl FnMut(&mut Self, &str, &Val) -> Option<T>,
    ) -> Option<Vec<T>> {
        match &val.v {
            V::List(items) => {
                let mut out = Vec::with_capacity(items.len());
                let mut ok = true;
                for item in items {
                    match each(self, field, item) {
                        Some(t) => out.push(t),
                        None => ok = false,
                    }
                }
                ok.then_some(out)
            }
            _ => {
                self.mismatch(field, "a `[...]` list", val);
                None
            }
        }
    }

    fn strings(&mut self, field: &str, val: &Val) -> Option<Vec<String>> {
        self.list(field, val, |b, f, v| b.string(f, v))
    }

    fn refs(&mut self, field: &str, val: &Val) -> Option<Vec<Ref>> {
        self.list(field, val, |b, f, v| b.reference(f, v))
    }

    fn countries(&mut self, field: &str, val: &Val) -> Option<Vec<CountryCode>> {
        self.list(field, val, |b, f, v| b.country(f, v))
    }

    fn skills(&mut self, field: &str, val: &Val) -> Option<Vec<LanguageSkill>> {
        self.list(field, val, |b, f, v| b.skill(f, v))
    }

    fn age_range(&mut self, field: &str, val: &Val) -> Option<AgeRange> {
        match &val.v {
            V::Tuple(items) if items.len() == 2 => {
                let min = self.int(field, &items[0])?;
                let max = self.int(field, &items[1])?;
                Some(AgeRange { min, max })
            }
            _ => {
                self.mismatch(field, "a (min, max) pair", val);
                None
            }
        }
    }

    fn salary(&mut self, field: &str, val: &Val) -> Option<Salary> {
        match &val.v {
            V::Str(s) => Some(Salary::Text(s.clone())),
            V::Tuple(items) if items.len() == 2 => {
                let amount = self.float(field, &items[0])?;
                let currency = self.code_text(field, &items[1])?;
                Some(Salary::Amount { amount, currency })
            }
            _ => {
                self.mismatch(field, "a string or an (amount, currency) pair", val);
                None
            }
        }
    }

    fn membership(&mut self, field: &str, val: &Val) -> Option<Membership> {
        match &val.v {
            V::Tuple(items) if items.len() == 3 || items.len() == 4 => {
                let team = self.reference(field, &items[0]);
                let role = self.string(field, &items[1]);
                let start = self.date(field, &items[2]);
                let end = match items.get(3) {
                    Some(v) => Some(self.date(field, v)?),
                    None => None,
                };
                Some(Membership { team: team?, role: role?, start: start?, end })
            }
            _ => {
                self.mismatch(field, "a (team, \"role\", start[, end]) tuple", val);
                None
            }
        }
    }

    /// Shared group-profile fields. Returns `false` when `f` is not one.
    fn profile_field(&mut self, p: &mut GroupProfile, f: &Field) -> bool {
        let v = &f.value;
        let n = f.name.as_str();
        match n {
            "description" => p.description = self.string(n, v),
            "ageRange" => p.age_range = self.age_range(n, v),
            "locations" => p.locations = self.strings(n, v).unwrap_or_default(),
            "countries" => p.countries = self.countries(n, v).unwrap_or_default(),
            "ethnicities" => p.ethnicities = self.strings(n, v).unwrap_or_default(),
            "genders" => {
                p.genders = self
                    .list(n, v, |b, f, v| b.string(f, v).map(|s| DistributionEntry::parse(&s)))
                    .unwrap_or_default()
            }
            "religiousBeliefs" => p.religious_beliefs = self.strings(n, v).unwrap_or_default(),
            "educationalLevels" => {
                p.educational_levels = self
                    .list(n, v, |b, f, v| b.token(f, v, EducationLevel::from_token, &education_tokens()))
                    .unwrap_or_default()
            }
            "spokenLanguages" => p.spoken_languages = self.skills(n, v).unwrap_or_default(),
            "socioEconomicStati" => {
                p.socio_economic_stati = self
                    .list(n, v, |b, f, v| b.token(f, v, SocioEconomicClass::from_token, &ses_tokens()))
                    .unwrap_or_default()
            }
            "skillLevels" => {
                p.skill_levels = self
                    .list(n, v, |b, f, v| b.token(f, v, SkillLevel::from_token, &skill_tokens()))
                    .unwrap_or_default()
            }
            "workplaceType" => {
                p.workplace_type =
                    self.token(n, v, WorkplaceType::from_token, &["presential", "remote", "hybrid"])
            }
            "averageTenure" => p.average_tenure = self.float(n, v),
            _ => return false,
        }
        true
    }

    fn build(
        &mut self,
        kw: &str,
        id: String,
        card: &mut Card,
        seen_project: &mut bool,
    ) -> Option<Element> {
        let fields = core::mem::take(&mut self.fields);
        let origin = self.origin.clone();
        match kw {
            "project" => {
                let mut description = String::new();
                for f in &fields {
                    match f.name.as_str() {
                        "description" => description = self.string("description", &f.value).unwrap_or_default(),
                        _ => self.unknown(kw, f),
                    }
                }
                if self.failed {
                    return None;
                }
                if *seen_project {
                    self.diags.push(Diagnostic::new(
                        Code::SynDuplicateField,
                        "`project` declared more than once; the last declaration wins",
                        self.span.clone(),
                    ));
                }
                *seen_project = true;
                card.project_name = id;
                card.description = description;
                card.origin = origin;
                None
            }
            "developmentTeam" | "testerTeam" | "publicReporterTeam" | "nonCodingContributorTeam" => {
                let kind = match kw {
                    "developmentTeam" => TeamKind::Development,
                    "testerTeam" => TeamKind::Tester,
                    "publicReporterTeam" => TeamKind::PublicReporter,
                    _ => TeamKind::NonCodingContributor,
                };
                self.team(kind, id, origin, &fields).map(Element::Team)
            }
            "participant" => self.participant(id, origin, &fields).map(Element::Participant),
            "organization" => {
                let mut profile = GroupProfile::default();
                let mut name = String::new();
                let mut org_type = None;
                for f in &fields {
                    let (n, v) = (f.name.as_str(), &f.value);
                    match n {
                        "name" => name = self.string(n, v).unwrap_or_default(),
                        "type" => {
                            org_type = self.open_token(
                                n,
                                v,
                                OrganizationType::from_token,
                                OrganizationType::Other,
                                OrganizationType::TOKENS,
                            )
                        }
                        _ if self.profile_field(&mut profile, f) => {}
                        _ => self.unknown(kw, f),
                    }
                }
                Some(Element::Organization(Organization { id, name, profile, org_type, origin }))
            }
            "targetCommunity" => {
                let mut profile = GroupProfile::default();
                let mut needs = None;
                for f in &fields {
                    match f.name.as_str() {
                        "needs" => needs = self.string("needs", &f.value),
                        _ if self.profile_field(&mut profile, f) => {}
                        _ => self.unknown(kw, f),
                    }
                }
                Some(Element::TargetCommunity(TargetCommunity { id, profile, needs, origin }))
            }
            "socialContext" => {
                let mut e = SocialContext {
                    id,
                    description: String::new(),
                    spoken_languages: Vec::new(),
                    cultural_traits: Vec::new(),
                    countries: Vec::new(),
                    origin,
                };
                for f in &fields {
                    let (n, v) = (f.name.as_str(), &f.value);
                    match n {
                        "description" => e.description = self.string(n, v).unwrap_or_default(),
                        "spokenLanguages" => e.spoken_languages = self.skills(n, v).unwrap_or_default(),
                        "culturalTraits" => e.cultural_traits = self.strings(n, v).unwrap_or_default(),
                        "countries" => e.countries = self.countries(n, v).unwrap_or_default(),
                        _ => self.unknown(kw, f),
                    }
                }
                Some(Element::SocialContext(e))
            }
            "useCase" => {
                let mut e = UseCase {
                    id,
                    description: String::new(),
                    target_communities: Vec::new(),
                    social_context: None,
                    origin,
                };
                for f in &fields {
                    let (n, v) = (f.name.as_str(), &f.value);
                    match n {
                        "description" => e.description = self.string(n, v).unwrap_or_default(),
                        "targetCommunities" => e.target_communities = self.refs(n, v).unwrap_or_default(),
                        "socialContext" => e.social_context = self.reference(n, v),
                        _ => self.unknown(kw, f),
                    }
                }
                Some(Element::UseCase(e))
            }
            "adaptation" => {
                let mut e = Adaptation {
                    id,
                    description: String::new(),
                    target_communities: Vec::new(),
                    related_teams: Vec::new(),
                    release: None,
                    origin,
                };
                for f in &fields {
                    let (n, v) = (f.name.as_str(), &f.value);
                    match n {
                        "description" => e.description = self.string(n, v).unwrap_or_default(),
                        "targetCommunities" => e.target_communities = self.refs(n, v).unwrap_or_default(),
                        "relatedTeams" => e.related_teams = self.refs(n, v).unwrap_or_default(),
                        "release" => e.release = self.string(n, v),
                        _ => self.unknown(kw, f),
                    }
                }
                Some(Element::Adaptation(e))
            }
            "governance" => {
                let mut shareholders = None;
                let mut legal = None;
                for f in &fields {
                    let (n, v) = (f.name.as_str(), &f.value);
                    match n {
                        "shareholders" => shareholders = self.strings(n, v),
                        "legalRegulation" => legal = self.string(n, v),
                        _ => self.unknown(kw, f),
                    }
                }
                if self.failed {
                    return None;
                }
                let g = card.governance_mut();
                if let Some(s) = shareholders {
                    g.shareholders = s;
                }
                if legal.is_some() {
                    g.legal_regulation = legal;
                }
                g.origin = origin;
                None
            }
            "body" => {
                let mut profile = GroupProfile::default();
                let mut e = Body {
                    id,
                    name: String::new(),
                    body_type: None,
                    members: Vec::new(),
                    decision_process: None,
                    profile: None,
                    origin,
                };
                for f in &fields {
                    let (n, v) = (f.name.as_str(), &f.value);
                    match n {
                        "name" => e.name = self.string(n, v).unwrap_or_default(),
                        "type" => {
                            e.body_type = self.open_token(
                                n,
                                v,
                                BodyType::from_token,
                                BodyType::Other,
                                BodyType::TOKENS,
                            )
                        }
                        "members" => e.members = self.refs(n, v).unwrap_or_default(),
                        "decisionProcess" => e.decision_process = self.string(n, v),
                        _ if self.profile_field(&mut profile, f) => {}
                        _ => self.unknown(kw, f),
                    }
                }
                e.profile = (!profile.is_empty()).then_some(profile);
                Some(Element::Body(e))
            }
            "rule" => {
                let mut e = Rule { id, text: String::new(), external_ref: None, origin };
                for f in &fields {
                    let (n, v) = (f.name.as_str(), &f.value);
                    match n {
                        "text" => e.text = self.string(n, v).unwrap_or_default(),
                        "externalRef" => e.external_ref = self.string(n, v),
                        _ => self.unknown(kw, f),
                    }
                }
                Some(Element::Rule(e))
            }
            "funder" => {
                let mut e = Funder { id, name: String::new(), funder_type: None, description: None, origin };
                for f in &fields {
                    let (n, v) = (f.name.as_str(), &f.value);
                    match n {
                        "name" => e.name = self.string(n, v).unwrap_or_default(),
                        "type" => {
                            e.funder_type = self.open_token(
                                n,
                                v,
                                FunderType::from_token,
                                FunderType::Other,
                                FunderType::TOKENS,
                            )
                        }
                        "description" => e.description = self.string(n, v),
                        _ => self.unknown(kw, f),
                    }
                }
                Some(Element::Funder(e))
            }
            _ => None,
        }
    }

    fn team(&mut self, kind: TeamKind, id: String, origin: Origin, fields: &[Field]) -> Option<Team> {
        let kw = keyword_for(kind);
        let mut team = Team::new(id, TeamDetail::empty(kind));
        team.origin = origin;
        let mut tester = TesterDetail::default();
        let mut reporter = ReporterDetail::default();
        let mut noncoding = NonCodingDetail::default();
        let mut foreign: Option<TeamKind> = None;
        let mut mark = |k: TeamKind| {
            if k != kind && foreign.is_none() {
                foreign = Some(k);
            }
        };
        let mut sourcing = None;
        let mut labour = LabourForce::new(Sourcing::Internal);
        let mut labour_dependent: Option<SourceSpan> = None;

        for f in fields {
            let (n, v) = (f.name.as_str(), &f.value);
            match n {
                "teamSize" => team.team_size = self.int(n, v),
                "startDate" => team.start_date = self.date(n, v),
                "members" => team.members = self.refs(n, v).unwrap_or_default(),
                "sourcing" => sourcing = self.token(n, v, Sourcing::from_token, &["internal", "external"]),
                "salary" | "labourRights" | "company" | "labourCountry" => {
                    labour_dependent.get_or_insert_with(|| f.name_span.clone());
                    match n {
                        "salary" => labour.salary = self.salary(n, v),
                        "labourRights" => labour.labour_rights = self.string(n, v),
                        "company" => labour.company = self.string(n, v),
                        _ => labour.country = self.country(n, v),
                    }
                }
                "testType" => {
                    mark(TeamKind::Tester);
                    tester.test_type = self.token(
                        n,
                        v,
                        TestType::from_token,
                        &["publicBeta", "controlledBeta", "crowdTesting"],
                    );
                }
                "platform" => {
                    mark(TeamKind::Tester);
                    tester.platform = self.string(n, v);
                }
                "taskDescription" => {
                    mark(TeamKind::Tester);
                    tester.task_description = self.string(n, v);
                }
                "iterations" => {
                    mark(TeamKind::Tester);
                    tester.iterations = self.int(n, v);
                }
                "durationHours" => {
                    mark(TeamKind::Tester);
                    tester.duration_hours = self.float(n, v);
                }
                "reportingPlatforms" => {
                    mark(TeamKind::PublicReporter);
                    reporter.reporting_platforms = self.strings(n, v).unwrap_or_default();
                }
                "contributorRoles" => {
                    mark(TeamKind::NonCodingContributor);
                    noncoding.contributor_roles = self
                        .list(n, v, |b, f, v| {
                            b.open_token(
                                f,
                                v,
                                ContributorRole::from_token,
                                ContributorRole::Other,
                                ContributorRole::TOKENS,
                            )
                        })
                        .unwrap_or_default();
                }
                "contributionCount" => {
                    mark(match kind {
                        TeamKind::NonCodingContributor => TeamKind::NonCodingContributor,
                        _ => TeamKind::PublicReporter,
                    });
                    let c = self.int(n, v);
                    reporter.contribution_count = c;
                    noncoding.contribution_count = c;
                }
                _ if self.profile_field(&mut team.profile, f) => {}
                _ => self.unknown(kw, f),
            }
        }
        match (sourcing, labour_dependent) {
            (Some(s), _) => {
                labour.sourcing = s;
                team.labour_force = Some(labour);
            }
            (None, Some(span)) => self.fail(
                Code::SynMissingField,
                "labour-force fields need `sourcing: internal|external`".into(),
                span,
            ),
            (None, None) => {}
        }
        team.detail = match foreign.unwrap_or(kind) {
            TeamKind::Development => TeamDetail::Development,
            TeamKind::Tester => TeamDetail::Tester(tester),
            TeamKind::PublicReporter => TeamDetail::PublicReporter(reporter),
            TeamKind::NonCodingContributor => TeamDetail::NonCodingContributor(noncoding),
        };
        Some(team)
    }

    fn participant(&mut self, id: String, origin: Origin, fields: &[Field]) -> Option<Participant> {
        let mut p = Participant { origin, ..Participant::default() };
        p.individual.id = id;
        for f in fields {
            let (n, v) = (f.name.as_str(), &f.value);
            let ind = &mut p.individual;
            match n {
                "name" => ind.name = self.string(n, v),
                "spokenLanguages" => ind.spoken_languages = self.skills(n, v).unwrap_or_default(),
                "ethnicity" => ind.ethnicity = self.string(n, v),
                "religiousBelief" => ind.religious_belief = self.string(n, v),
                "gender" => ind.gender = self.string(n, v),
                "age" => ind.age = self.int(n, v),
                "socioEconomicStatus" => {
                    ind.socio_economic_status = self.token(n, v, SocioEconomicClass::from_token, &ses_tokens())
                }
                "skillLevel" => ind.skill_level = self.token(n, v, SkillLevel::from_token, &skill_tokens()),
                "tenure" => ind.tenure = self.float(n, v),
                "educationLevel" => {
                    ind.education_level = self.token(n, v, EducationLevel::from_token, &education_tokens())
                }
                "country" => ind.country = self.country(n, v),
                "memberships" => {
                    p.memberships = self.list(n, v, |b, f, v| b.membership(f, v)).unwrap_or_default()
                }
                "participantId" => p.participant_id = self.string(n, v),
                _ => self.unknown("participant", f),
            }
        }
        Some(p)
    }
}

pub fn keyword_for(kind: TeamKind) -> &'static str {
    match kind {
        TeamKind::Development => "developmentTeam",
        TeamKind::Tester => "testerTeam",
        TeamKind::PublicReporter => "publicReporterTeam",
        TeamKind::NonCodingContributor => "nonCodingContributorTeam",
    }
}

fn education_tokens() -> Vec<&'static str> {
    EducationLevel::ALL.iter().map(|e| e.as_str()).collect()
}

fn ses_tokens() -> Vec<&'static str> {
    SocioEconomicClass::ALL.iter().map(|e| e.as_str()).collect()
}

fn skill_tokens() -> Vec<&'static str> {
    SkillLevel::ALL.iter().map(|e| e.as_str()).collect()
}
