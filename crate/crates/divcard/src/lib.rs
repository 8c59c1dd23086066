//! Std companion of `divcard-core`: JSON/Markdown emitters, repository
//! collection (local and remote), the LLM classifier client and the CLI.

pub use divcard_core as core;

pub mod json;
pub mod markdown;

pub use json::{emit_json, import_json};
pub use markdown::emit_markdown;
pub mod collect;
pub mod error;
pub mod http;
pub mod remote;
pub mod report;
pub mod llm;
pub mod cli;
pub mod corpus;
