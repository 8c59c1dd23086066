//! Tokenizer for `.divcard` text.
//!
//! Lexical errors are reported once, here, and leave a [`Tok::Bad`] token in
//! the stream so the parser can drop the surrounding block without piling on
//! further diagnostics.

use alloc::string::String;
use alloc::vec::Vec;

use crate::diag::{Code, Diagnostic, SourceSpan};

#[derive(Clone, Debug, PartialEq)]
pub(crate) enum Tok {
    Ident(String),
    Str(String),
    Int(i64),
    Dec(f64),
    /// Digit run containing `-`, e.g. `11-08-2022`; checked by the parser.
    DateLike(String),
    Colon,
    Comma,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Ellipsis,
    Bad,
    Eof,
}

#[derive(Clone, Debug)]
pub(crate) struct Token {
    pub tok: Tok,
    pub span: SourceSpan,
    /// First token on its line.
    pub line_start: bool,
}

pub(crate) fn is_ident_start(c: char) -> bool {
    c.is_alphabetic() || c == '_'
}

pub(crate) fn is_ident_char(c: char) -> bool {
    c.is_alphanumeric() || c == '_' || c == '-'
}

struct Cursor<'a> {
    chars: core::iter::Peekable<core::str::Chars<'a>>,
    rest: &'a str,
    line: u32,
    col: u32,
}

impl<'a> Cursor<'a> {
    fn peek(&mut self) -> Option<char> {
        self.chars.peek().copied()
    }

    fn peek2(&self) -> Option<char> {
        let mut it = self.rest.chars();
        it.next();
        it.next()
    }

    fn peek3(&self) -> Option<char> {
        let mut it = self.rest.chars();
        it.next();
        it.next();
        it.next()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.chars.next()?;
        self.rest = &self.rest[c.len_utf8()..];
        if c == '\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        Some(c)
    }

    fn pos(&self) -> (u32, u32) {
        (self.line, self.col)
    }
}

pub(crate) fn tokenize(source: &str, file: &str, diags: &mut Vec<Diagnostic>) -> Vec<Token> {
    let source = source.strip_prefix('\u{feff}').unwrap_or(source);
    let mut cur = Cursor { chars: source.chars().peekable(), rest: source, line: 1, col: 1 };
    let mut out = Vec::new();
    let mut last_line = 0u32;

    loop {
        // whitespace and comments
        while let Some(c) = cur.peek() {
            if c.is_whitespace() {
                cur.bump();
            } else if c == '/' && cur.peek2() == Some('/') {
                while let Some(c) = cur.peek() {
                    if c == '\n' {
                        break;
                    }
                    cur.bump();
                }
            } else {
                break;
            }
        }
        let start = cur.pos();
        let Some(c) = cur.peek() else {
            let span = SourceSpan::new(file, start, start);
            out.push(Token { tok: Tok::Eof, span, line_start: start.0 != last_line });
            break;
        };
        let tok = match c {
            ':' => single(&mut cur, Tok::Colon),
            ',' => single(&mut cur, Tok::Comma),
            '(' => single(&mut cur, Tok::LParen),
            ')' => single(&mut cur, Tok::RParen),
            '[' => single(&mut cur, Tok::LBracket),
            ']' => single(&mut cur, Tok::RBracket),
            '.' if cur.peek2() == Some('.') && cur.peek3() == Some('.') => {
                cur.bump();
                cur.bump();
                cur.bump();
                Tok::Ellipsis
            }
            '"' => lex_string(&mut cur, file, start, diags),
            '-' if cur.peek2().is_some_and(|d| d.is_ascii_digit()) => {
                cur.bump();
                lex_number(&mut cur, true, file, start, diags)
            }
            d if d.is_ascii_digit() => lex_number(&mut cur, false, file, start, diags),
            c if is_ident_start(c) => {
                let mut s = String::new();
                while let Some(c) = cur.peek() {
                    if !is_ident_char(c) {
                        break;
                    }
                    s.push(c);
                    cur.bump();
                }
                Tok::Ident(s)
            }
            other => {
                cur.bump();
                let span = SourceSpan::new(file, start, cur.pos());
                diags.push(Diagnostic::new(
                    Code::SynInvalidChar,
                    alloc::format!("unexpected character `{}`", other.escape_debug()),
                    span,
                ));
                Tok::Bad
            }
        };
        let span = SourceSpan::new(file, start, cur.pos());
        out.push(Token { tok, span, line_start: start.0 != last_line });
        last_line = start.0;
    }
    out
}

fn single(cur: &mut Cursor<'_>, tok: Tok) -> Tok {
    cur.bump();
    tok
}

fn lex_string(
    cur: &mut Cursor<'_>,
    file: &str,
    start: (u32, u32),
    diags: &mut Vec<Diagnostic>,
) -> Tok {
    cur.bump();
    let mut s = String::new();
    let mut bad = false;
    loop {
        match cur.peek() {
            None | Some('\n') => {
                diags.push(Diagnostic::new(
                    Code::SynUnterminatedString,
                    "string literal is not closed before the end of the line",
                    SourceSpan::new(file, start, cur.pos()),
                ));
                return Tok::Bad;
            }
            Some('"') => {
                cur.bump();
                break;
            }
            Some('\\') => {
                let esc_start = cur.pos();
                cur.bump();
                match cur.peek() {
                    Some(e @ ('"' | '\\' | 'n' | 't' | 'r')) => {
                        cur.bump();
                        s.push(match e {
                            'n' => '\n',
                            't' => '\t',
                            'r' => '\r',
                            other => other,
                        });
                    }
                    Some('\n') | None => {}
                    Some(other) => {
                        cur.bump();
                        bad = true;
                        diags.push(Diagnostic::new(
                            Code::SynBadEscape,
                            alloc::format!("unsupported escape `\\{}`", other.escape_debug()),
                            SourceSpan::new(file, esc_start, cur.pos()),
                        ));
                    }
                }
            }
            Some(c) => {
                if c != '\r' {
                    s.push(c);
                }
                cur.bump();
            }
        }
    }
    if bad {
        Tok::Bad
    } else {
        Tok::Str(s)
    }
}

fn lex_number(
    cur: &mut Cursor<'_>,
    negative: bool,
    file: &str,
    start: (u32, u32),
    diags: &mut Vec<Diagnostic>,
) -> Tok {
    let mut text = String::new();
    if negative {
        text.push('-');
    }
    let mut has_dash = false;
    let mut has_dot = false;
    let mut malformed = false;
    while let Some(c) = cur.peek() {
        if c.is_ascii_digit() {
            text.push(c);
            cur.bump();
        } else if c == '-' && cur.peek2().is_some_and(|d| d.is_ascii_digit()) {
            has_dash = true;
            text.push(c);
            cur.bump();
        } else if c == '.' && cur.peek2().is_some_and(|d| d.is_ascii_digit()) {
            if has_dot {
                malformed = true;
            }
            has_dot = true;
            text.push(c);
            cur.bump();
        } else if is_ident_char(c) {
            malformed = true;
            text.push(c);
            cur.bump();
        } else {
            break;
        }
    }
    if has_dash && !has_dot && !negative && !malformed {
        return Tok::DateLike(text);
    }
    let parsed = if malformed || has_dash {
        None
    } else if has_dot {
        text.parse::<f64>().ok().filter(|v| v.is_finite()).map(Tok::Dec)
    } else {
        text.parse::<i64>().ok().map(Tok::Int)
    };
    parsed.unwrap_or_else(|| {
        diags.push(Diagnostic::new(
            Code::SynBadNumber,
            alloc::format!("malformed number `{text}`"),
            SourceSpan::new(file, start, cur.pos()),
        ));
        Tok::Bad
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn toks(src: &str) -> (Vec<Tok>, Vec<Diagnostic>) {
        let mut d = Vec::new();
        let t = tokenize(src, "t", &mut d).into_iter().map(|t| t.tok).collect();
        (t, d)
    }

    #[test]
    fn basic_tokens() {
        let (t, d) = toks("ageRange: (25, 36) // comment\n averageTenure: 3.3 x: -4");
        assert!(d.is_empty());
        assert_eq!(
            t,
            alloc::vec![
                Tok::Ident("ageRange".into()),
                Tok::Colon,
                Tok::LParen,
                Tok::Int(25),
                Tok::Comma,
                Tok::Int(36),
                Tok::RParen,
                Tok::Ident("averageTenure".into()),
                Tok::Colon,
                Tok::Dec(3.3),
                Tok::Ident("x".into()),
                Tok::Colon,
                Tok::Int(-4),
                Tok::Eof,
            ]
        );
    }

    #[test]
    fn dates_strings_and_elisions() {
        let (t, d) = toks(r#"11-08-2022 "a \"q\" \\ b" [(x, b1)...] Catalan-Valencian"#);
        assert!(d.is_empty());
        assert_eq!(t[0], Tok::DateLike("11-08-2022".into()));
        assert_eq!(t[1], Tok::Str("a \"q\" \\ b".into()));
        assert!(t.contains(&Tok::Ellipsis));
        assert!(t.contains(&Tok::Ident("Catalan-Valencian".into())));
    }

    #[test]
    fn lexical_errors_leave_bad_tokens() {
        let (t, d) = toks("a: \"open\nb: @\nc: 1.2.3\nd: \"x\\q\"");
        let codes: Vec<_> = d.iter().map(|d| d.code).collect();
        assert_eq!(
            codes,
            alloc::vec![
                Code::SynUnterminatedString,
                Code::SynInvalidChar,
                Code::SynBadNumber,
                Code::SynBadEscape
            ]
        );
        assert_eq!(t.iter().filter(|t| **t == Tok::Bad).count(), 4);
    }

    #[test]
    fn bom_and_crlf() {
        let (t, d) = toks("\u{feff}a: 1\r\nb: 2\r\n");
        assert!(d.is_empty());
        assert_eq!(t.len(), 7);
    }

    #[test]
    fn line_start_flags() {
        let mut d = Vec::new();
        let t = tokenize("a b\n  c", "t", &mut d);
        let flags: Vec<_> = t.iter().map(|t| t.line_start).collect();
        assert_eq!(flags, alloc::vec![true, false, true, false]);
    }
}
