//! Few-shot LLM classifier over a chat-completions endpoint.
//!
//! One request per area, temperature 0, five bundled examples each
//! (`prompts/areas.json`). The reply must be a single JSON verdict object;
//! anything else is retried once and then reported as
//! CLASSIFIER_FORMAT_ERROR with the raw payload.

use crate::error::ScanError;
use crate::http::{Request, Transport};
use divcard_core::diag::{Code, Diagnostic, SourceSpan};
use divcard_core::scan::{Area, AreaFinding, CommunityFileSet, Evidence};
use serde::Deserialize;
use serde_json::json;
use std::collections::BTreeMap;
use std::sync::OnceLock;

pub const DEFAULT_MODEL: &str = "gpt-4o-mini";
pub const MAX_EXCERPT: usize = 240;
/// Documentation text sent per request; longer sets are cut at a file
/// boundary or, for a single huge file, at this many bytes.
pub const MAX_INPUT_BYTES: usize = 48_000;

const PROMPTS: &str = include_str!("../prompts/areas.json");

#[derive(Deserialize)]
struct PromptBook {
    system: String,
    areas: BTreeMap<String, AreaPrompt>,
}

#[derive(Deserialize)]
struct AreaPrompt {
    question: String,
    examples: Vec<Example>,
}

#[derive(Deserialize)]
struct Example {
    input: String,
    output: String,
}

fn prompts() -> &'static PromptBook {
    static BOOK: OnceLock<PromptBook> = OnceLock::new();
    BOOK.get_or_init(|| serde_json::from_str(PROMPTS).expect("bundled prompts are valid JSON"))
}

pub struct LlmConfig {
    pub endpoint: String,
    pub model: String,
    pub key: Option<String>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct Verdict {
    present: bool,
    #[serde(default)]
    subfindings: BTreeMap<String, bool>,
    #[serde(default)]
    evidence: Vec<VerdictEvidence>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct VerdictEvidence {
    path: String,
    excerpt: String,
    #[serde(default)]
    supports: Option<Vec<String>>,
}

/// Text block sent to the model for every area.
pub fn render_input(files: &CommunityFileSet) -> String {
    let mut out = String::new();
    for f in &files.entries {
        let block = format!("=== {} ===\n{}\n", f.path, f.content.trim_end());
        if out.len() + block.len() > MAX_INPUT_BYTES {
            if out.is_empty() {
                let mut cut = MAX_INPUT_BYTES;
                while !block.is_char_boundary(cut) {
                    cut -= 1;
                }
                out.push_str(&block[..cut]);
            }
            break;
        }
        out.push_str(&block);
    }
    out
}

/// The chat-completions request body for one area.
pub fn request_body(area: Area, model: &str, input: &str) -> serde_json::Value {
    let book = prompts();
    let p = &book.areas[area.as_str()];
    let keys = area.subkeys().join(", ");
    let mut messages = vec![json!({
        "role": "system",
        "content": format!("{}\n\nArea {}: {}\nSub-finding keys: {keys}.", book.system, area.as_str(), p.question),
    })];
    for ex in &p.examples {
        messages.push(json!({"role": "user", "content": ex.input}));
        messages.push(json!({"role": "assistant", "content": ex.output}));
    }
    messages.push(json!({"role": "user", "content": input}));
    json!({
        "model": model,
        "temperature": 0,
        "response_format": {"type": "json_object"},
        "messages": messages,
    })
}

pub fn classify_llm(
    files: &CommunityFileSet,
    cfg: &LlmConfig,
    transport: &dyn Transport,
) -> Result<(Vec<AreaFinding>, Vec<Diagnostic>), ScanError> {
    let input = render_input(files);
    let mut findings = Vec::new();
    let mut warnings = Vec::new();
    for area in Area::ALL {
        if files.is_empty() {
            findings.push(AreaFinding::absent(area));
            continue;
        }
        let body = request_body(area, &cfg.model, &input).to_string();
        let mut raw = String::new();
        let mut verdict = None;
        for _ in 0..2 {
            let mut req = Request::post_json(&cfg.endpoint, body.clone());
            if let Some(k) = &cfg.key {
                req = req.header("authorization", format!("Bearer {k}"));
            }
            let resp = transport
                .send(&req)
                .map_err(|e| ScanError::Http { status: 0, url: cfg.endpoint.clone(), detail: e.0 })?;
            if !(200..300).contains(&resp.status) {
                return Err(ScanError::Http {
                    status: resp.status,
                    url: cfg.endpoint.clone(),
                    detail: resp.body.chars().take(200).collect(),
                });
            }
            raw = resp.body;
            if let Some(v) = parse_reply(&raw) {
                verdict = Some(v);
                break;
            }
        }
        let Some(v) = verdict else {
            return Err(ScanError::ClassifierFormat { area: area.as_str().into(), raw });
        };
        findings.push(to_finding(area, v, files, &mut warnings));
    }
    Ok((findings, warnings))
}

/// Extracts the verdict from a chat-completions reply: the first choice's
/// message content must be one JSON object, optionally inside a ```json
/// fence.
fn parse_reply(raw: &str) -> Option<Verdict> {
    let v: serde_json::Value = serde_json::from_str(raw).ok()?;
    let content = v.pointer("/choices/0/message/content")?.as_str()?.trim();
    let content = content
        .strip_prefix("```json")
        .or_else(|| content.strip_prefix("```"))
        .and_then(|c| c.strip_suffix("```"))
        .map(str::trim)
        .unwrap_or(content);
    serde_json::from_str(content).ok()
}

fn warn(warnings: &mut Vec<Diagnostic>, area: Area, msg: String) {
    warnings.push(Diagnostic::new(Code::EvidenceNormalized, format!("{}: {msg}", area.as_str()), SourceSpan::new("<llm>", (1, 1), (1, 1))));
}

fn to_finding(area: Area, v: Verdict, files: &CommunityFileSet, warnings: &mut Vec<Diagnostic>) -> AreaFinding {
    let mut f = AreaFinding::absent(area);
    f.present = v.present;
    for (k, val) in &v.subfindings {
        if area.subkeys().contains(&k.as_str()) {
            f.set_sub(k, *val);
        } else {
            warn(warnings, area, format!("ignored unknown sub-finding `{k}`"));
        }
    }
    let default_supports = |f: &AreaFinding| {
        let mut s = vec![area.as_str().to_string()];
        s.extend(f.subfindings.iter().filter(|(_, v)| *v).map(|(k, _)| format!("{}.{k}", area.as_str())));
        s
    };
    for e in v.evidence {
        let Some(file) = files.entries.iter().find(|x| x.path == e.path) else {
            warn(warnings, area, format!("dropped evidence citing unknown file `{}`", e.path));
            continue;
        };
        let mut excerpt = e.excerpt.as_str();
        if excerpt.len() > MAX_EXCERPT {
            let mut cut = MAX_EXCERPT;
            while !excerpt.is_char_boundary(cut) {
                cut -= 1;
            }
            excerpt = &excerpt[..cut];
            warn(warnings, area, format!("truncated an excerpt from `{}` to {MAX_EXCERPT} bytes", e.path));
        }
        let Some(start) = file.content.find(excerpt).filter(|_| !excerpt.is_empty()) else {
            warn(warnings, area, format!("dropped an excerpt not found verbatim in `{}`", e.path));
            continue;
        };
        f.evidence.push(Evidence {
            path: file.path.clone(),
            start,
            end: start + excerpt.len(),
            excerpt: excerpt.to_string(),
            supports: e.supports.unwrap_or_else(|| default_supports(&f)),
        });
    }
    if f.normalize() {
        warn(warnings, area, "present=false with sub-findings or evidence; cleared".into());
    }
    for key in f.unsupported() {
        f.set_sub(key, false);
        warn(warnings, area, format!("sub-finding `{key}` had no supporting evidence; set to false"));
    }
    f
}
