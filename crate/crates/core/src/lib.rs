//! Core of the diversity-card toolchain: the card model, the `.divcard`
//! language, validation and completeness grading, and the rule-based
//! community-file classifier. Everything here is pure; IO lives in the
//! `divcard` crate.

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod diag;
pub mod iso;
pub mod lang;
pub mod model;
pub mod scan;
pub mod validate;

pub use diag::{Code, Diagnostic, Severity, SourceSpan, Stage};
pub use lang::{format_card, parse_card, ParseResult};
pub use model::Card;
pub use validate::{validate, ValidationReport};
