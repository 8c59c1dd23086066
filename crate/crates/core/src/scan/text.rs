//! Sentence segmentation for Markdown-ish prose, keeping byte offsets into
//! the original text.

use alloc::vec::Vec;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Sentence {
    pub start: usize,
    pub end: usize,
}

/// Headings, list items and table rows stand alone; paragraphs split at
/// `.`, `!` or `?` followed by whitespace. Fenced and indented code is
/// skipped.
pub fn sentences(text: &str) -> Vec<Sentence> {
    let mut out = Vec::new();
    let mut para: Option<(usize, usize)> = None;
    let mut fenced = false;
    let mut offset = 0;
    for raw in text.split_inclusive('\n') {
        let line_start = offset;
        offset += raw.len();
        let line = raw.trim_end_matches(['\n', '\r']);
        let line_end = line_start + line.len();
        let trimmed = line.trim_start();
        if trimmed.starts_with("```") || trimmed.starts_with("~~~") {
            flush(text, &mut para, &mut out);
            fenced = !fenced;
            continue;
        }
        if fenced {
            continue;
        }
        if trimmed.is_empty() {
            flush(text, &mut para, &mut out);
            continue;
        }
        let indent = line.len() - trimmed.len();
        if para.is_none() && (indent >= 4 || line.starts_with('\t')) {
            continue;
        }
        let content_start = line_start + indent;
        if trimmed.starts_with('#') || trimmed.starts_with('|') {
            flush(text, &mut para, &mut out);
            split(text, content_start, line_end, &mut out);
            continue;
        }
        if is_list_item(trimmed) {
            flush(text, &mut para, &mut out);
        }
        match &mut para {
            Some((_, end)) => *end = line_end,
            None => para = Some((content_start, line_end)),
        }
    }
    flush(text, &mut para, &mut out);
    out
}

fn is_list_item(s: &str) -> bool {
    if s.starts_with("- ") || s.starts_with("* ") || s.starts_with("+ ") {
        return true;
    }
    let digits = s.bytes().take_while(u8::is_ascii_digit).count();
    digits > 0 && (s[digits..].starts_with(". ") || s[digits..].starts_with(") "))
}

fn flush(text: &str, para: &mut Option<(usize, usize)>, out: &mut Vec<Sentence>) {
    if let Some((s, e)) = para.take() {
        split(text, s, e, out);
    }
}

const ABBREVIATIONS: &[&str] = &["vs", "etc", "mr", "mrs", "ms", "dr", "st", "approx", "incl", "cf"];

fn split(text: &str, start: usize, end: usize, out: &mut Vec<Sentence>) {
    let bytes = text.as_bytes();
    let mut pos = start;
    let mut i = start;
    while i < end {
        let b = bytes[i];
        if matches!(b, b'.' | b'!' | b'?') && (i + 1 == end || bytes[i + 1].is_ascii_whitespace()) {
            let word_start = text[pos..i].rfind(|c: char| c.is_whitespace()).map_or(pos, |w| pos + w + 1);
            let word = &text[word_start..i];
            let abbreviation = b == b'.'
                && (word.contains('.') || ABBREVIATIONS.iter().any(|a| a.eq_ignore_ascii_case(word)));
            if !abbreviation {
                push(text, pos, i + 1, out);
                pos = i + 1;
            }
        }
        i += 1;
    }
    push(text, pos, end, out);
}

fn push(text: &str, start: usize, end: usize, out: &mut Vec<Sentence>) {
    let slice = &text[start..end];
    let lead = slice.len() - slice.trim_start().len();
    let trail = slice.len() - slice.trim_end().len();
    if lead + trail < slice.len() {
        out.push(Sentence { start: start + lead, end: end - trail });
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec::Vec;

    fn texts(s: &str) -> Vec<&str> {
        sentences(s).iter().map(|x| &s[x.start..x.end]).collect()
    }

    #[test]
    fn paragraphs_headings_and_code() {
        let src = "# Title\n\nFirst one. Second\nline, e.g. this! Third?\n\n    code here.\n\n```\nfenced.\n```\n- item one\n- item two\n";
        assert_eq!(
            texts(src),
            ["# Title", "First one.", "Second\nline, e.g. this!", "Third?", "- item one", "- item two"]
        );
    }

    #[test]
    fn crlf_and_empty() {
        assert!(sentences("").is_empty());
        assert_eq!(texts("A b.\r\nC d.\r\n"), ["A b.", "C d."]);
    }
}
