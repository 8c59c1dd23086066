//! The `.divcard` textual syntax.

mod format;
mod lexer;
mod parser;

pub use format::format_card;
pub use parser::{is_keyword, parse_card, parse_date, BadDate, ParseResult, KEYWORDS};

pub use parser::keyword_for;
