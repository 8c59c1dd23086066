//! The `divcard` command line.
//!
//! Exit status: 0 success, 1 findings at error severity, 2 usage error,
//! 3 I/O or network failure. Payloads go to stdout; everything else to
//! stderr.

use crate::collect::collect_local;
use crate::error::ScanError;
use crate::http::{Replay, ThreadSleeper, Transport, UreqTransport};
use crate::llm::{classify_llm, LlmConfig, DEFAULT_MODEL};
use crate::remote::{is_repo_id, RemoteClient, RepoSelector, DEFAULT_API_BASE, DEFAULT_PARALLELISM};
use crate::{json, markdown, report};
use chrono::{DateTime, Utc};
use clap::{Parser, Subcommand, ValueEnum};
use divcard_core::diag::{has_errors, Diagnostic};
use divcard_core::scan::{classify_rule, skeleton_card, Backend, ScanReport};
use divcard_core::validate::{completeness_with, lint_privacy_with, DEFAULT_HIGH_THRESHOLD, DEFAULT_K};
use divcard_core::{format_card, parse_card, validate, Card};
use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FINDINGS: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_IO: i32 = 3;

#[derive(Parser)]
#[command(name = "divcard", version, about = "Write, check, export and harvest Software Diversity Cards")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum, PartialEq)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum Target {
    Json,
    Md,
}

#[derive(Clone, Copy, ValueEnum)]
enum BackendArg {
    Rule,
    Llm,
}

#[derive(clap::Args)]
struct Remote {
    /// Hosting-platform API base URL.
    #[arg(long, env = "DIVCARD_API_BASE", default_value = DEFAULT_API_BASE)]
    api_base: String,
    /// Bearer token for the hosting-platform API.
    #[arg(long, env = "DIVCARD_API_TOKEN", hide_env_values = true)]
    api_token: Option<String>,
    /// Replay HTTP traffic from this cassette instead of the network.
    #[arg(long, env = "DIVCARD_CASSETTE")]
    cassette: Option<PathBuf>,
    /// Maximum concurrent downloads.
    #[arg(long, default_value_t = DEFAULT_PARALLELISM)]
    parallelism: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Parse and validate a card; diagnostics go to stdout.
    Check {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Export a validated card.
    Emit {
        file: PathBuf,
        #[arg(long, value_enum)]
        to: Target,
        #[arg(short = 'o', long = "output")]
        output: Option<PathBuf>,
    },
    /// Completeness table per card dimension.
    Report {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        /// Populated ratio at or above which a dimension grades High.
        #[arg(long, default_value_t = DEFAULT_HIGH_THRESHOLD)]
        threshold: f64,
    },
    /// Privacy lint (small-group re-identification, singleton attributes).
    Lint {
        file: PathBuf,
        /// k-anonymity threshold.
        #[arg(long, default_value_t = DEFAULT_K)]
        k: i64,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Scan a local checkout or an `owner/repo` for diversity documentation.
    Scan {
        target: String,
        #[arg(long, value_enum, default_value = "rule")]
        backend: BackendArg,
        /// Also write a skeleton card to this path.
        #[arg(long)]
        skeleton: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        /// Timestamp recorded in the report (RFC 3339). Defaults to
        /// SOURCE_DATE_EPOCH when set, else the current time.
        #[arg(long)]
        collected_at: Option<String>,
        #[arg(long, env = "DIVCARD_LLM_ENDPOINT")]
        llm_endpoint: Option<String>,
        #[arg(long, env = "DIVCARD_LLM_KEY", hide_env_values = true)]
        llm_key: Option<String>,
        #[arg(long, env = "DIVCARD_LLM_MODEL", default_value = DEFAULT_MODEL)]
        llm_model: String,
        #[command(flatten)]
        remote: Remote,
    },
    /// Select top-starred active repositories and download their community
    /// files into a directory `scan` can read.
    FetchCorpus {
        #[arg(long)]
        language: String,
        #[arg(long)]
        top: usize,
        #[arg(long, default_value = "corpus")]
        out: PathBuf,
        #[arg(long, default_value_t = 30)]
        window_days: i64,
        /// End of the activity window (RFC 3339); defaults as for `scan`.
        #[arg(long)]
        now: Option<String>,
        #[command(flatten)]
        remote: Remote,
    },
}

struct Io<'a> {
    out: &'a mut dyn Write,
    err: &'a mut dyn Write,
}

macro_rules! say {
    ($w:expr, $($t:tt)*) => { let _ = writeln!($w, $($t)*); };
}

/// Runs one command. `args` includes the program name.
pub fn run(args: Vec<OsString>, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            if e.use_stderr() {
                let _ = write!(err, "{}", e.render());
            } else {
                let _ = write!(out, "{}", e.render());
            }
            return code;
        }
    };
    let mut io = Io { out, err };
    let code = match cli.command {
        Command::Check { file, format } => check(&mut io, &file, format),
        Command::Emit { file, to, output } => emit(&mut io, &file, to, output.as_deref()),
        Command::Report { file, format, threshold } => report_cmd(&mut io, &file, format, threshold),
        Command::Lint { file, k, format } => lint(&mut io, &file, k, format),
        Command::Scan { target, backend, skeleton, format, collected_at, llm_endpoint, llm_key, llm_model, remote } => {
            let llm = LlmConfig { endpoint: llm_endpoint.unwrap_or_default(), model: llm_model, key: llm_key };
            scan(&mut io, &target, backend, skeleton.as_deref(), format, collected_at, llm, &remote)
        }
        Command::FetchCorpus { language, top, out, window_days, now, remote } => {
            let sel = RepoSelector { language, top_n: top, activity_window_days: window_days };
            fetch_corpus(&mut io, &sel, &out, now, &remote)
        }
    };
    let _ = io.out.flush();
    code
}

/// Reads and parses a card; on failure the exit status to return.
fn load(io: &mut Io, file: &Path) -> Result<(Card, Vec<Diagnostic>), i32> {
    let bytes = std::fs::read(file).map_err(|e| {
        say!(io.err, "divcard: {}: {e}", file.display());
        EXIT_IO
    })?;
    let text = String::from_utf8_lossy(&bytes);
    let parsed = parse_card(&text, &file.to_string_lossy());
    Ok((parsed.card, parsed.diagnostics))
}

/// Parse, then validate when parsing produced no errors.
fn diagnose(card: &Card, mut diags: Vec<Diagnostic>) -> Vec<Diagnostic> {
    if !has_errors(&diags) {
        diags.extend(validate(card).diagnostics);
        diags.sort_by(Diagnostic::canonical_cmp);
    }
    diags
}

fn check(io: &mut Io, file: &Path, format: Format) -> i32 {
    let (card, diags) = match load(io, file) {
        Ok(x) => x,
        Err(code) => return code,
    };
    let diags = diagnose(&card, diags);
    match format {
        Format::Text => {
            for d in &diags {
                say!(io.out, "{d}");
            }
        }
        Format::Json => {
            let _ = write!(io.out, "{}", report::diagnostics_json(&diags));
        }
    }
    if has_errors(&diags) {
        EXIT_FINDINGS
    } else {
        EXIT_OK
    }
}

/// Loads a card that must be free of parse errors; reports them on stderr.
fn load_clean(io: &mut Io, file: &Path) -> Result<(Card, Vec<Diagnostic>), i32> {
    let (card, diags) = load(io, file)?;
    if has_errors(&diags) {
        for d in &diags {
            say!(io.err, "{d}");
        }
        return Err(EXIT_FINDINGS);
    }
    Ok((card, diags))
}

fn emit(io: &mut Io, file: &Path, to: Target, output: Option<&Path>) -> i32 {
    let card = match load_clean(io, file) {
        Ok((c, _)) => c,
        Err(code) => return code,
    };
    let result = match to {
        Target::Json => json::emit_json(&card),
        Target::Md => markdown::emit_markdown(&card),
    };
    let text = match result {
        Ok(t) => t,
        Err(e) => {
            for d in e.diagnostics() {
                say!(io.err, "{d}");
            }
            return EXIT_FINDINGS;
        }
    };
    match output {
        None => {
            let _ = io.out.write_all(text.as_bytes());
            EXIT_OK
        }
        Some(path) => match std::fs::write(path, text) {
            Ok(()) => {
                say!(io.err, "wrote {}", path.display());
                EXIT_OK
            }
            Err(e) => {
                say!(io.err, "divcard: {}: {e}", path.display());
                EXIT_IO
            }
        },
    }
}

fn report_cmd(io: &mut Io, file: &Path, format: Format, threshold: f64) -> i32 {
    let card = match load_clean(io, file) {
        Ok((c, _)) => c,
        Err(code) => return code,
    };
    let rep = completeness_with(&card, threshold);
    match format {
        Format::Json => {
            let _ = write!(io.out, "{}", report::completeness_json(&rep));
        }
        Format::Text => {
            say!(io.out, "{:<24} {:>6}  {:<8} note", "dimension", "ratio", "level");
            for r in &rep.rows {
                say!(io.out, "{:<24} {:>6.2}  {:<8} {}", r.dimension.as_str(), r.populated_ratio, r.level.as_str(), r.note);
            }
        }
    }
    EXIT_OK
}

fn lint(io: &mut Io, file: &Path, k: i64, format: Format) -> i32 {
    let card = match load_clean(io, file) {
        Ok((c, _)) => c,
        Err(code) => return code,
    };
    let findings = lint_privacy_with(&card, k);
    match format {
        Format::Json => {
            let _ = write!(io.out, "{}", report::privacy_json(&findings));
        }
        Format::Text => {
            for f in &findings {
                say!(io.out, "{}", f.to_diagnostic());
            }
        }
    }
    EXIT_OK
}

/// `--flag` value, else SOURCE_DATE_EPOCH, else the clock.
fn timestamp(flag: Option<String>) -> Result<DateTime<Utc>, String> {
    if let Some(s) = flag {
        return DateTime::parse_from_rfc3339(&s).map(|t| t.with_timezone(&Utc)).map_err(|e| format!("invalid timestamp `{s}`: {e}"));
    }
    if let Ok(s) = std::env::var("SOURCE_DATE_EPOCH") {
        let secs: i64 = s.trim().parse().map_err(|_| format!("invalid SOURCE_DATE_EPOCH `{s}`"))?;
        return DateTime::from_timestamp(secs, 0).ok_or_else(|| format!("SOURCE_DATE_EPOCH out of range: {s}"));
    }
    Ok(Utc::now())
}

fn rfc3339(t: DateTime<Utc>) -> String {
    t.format("%Y-%m-%dT%H:%M:%SZ").to_string()
}

fn transport(remote: &Remote) -> Result<Box<dyn Transport>, String> {
    match &remote.cassette {
        Some(path) => Ok(Box::new(Replay::from_file(path).map_err(|e| e.0)?)),
        None => Ok(Box::new(UreqTransport::default())),
    }
}

fn scan_failed(io: &mut Io, subject: &str, e: &ScanError) -> i32 {
    say!(io.err, "{}", e.to_diagnostic(subject));
    if e.is_io() {
        EXIT_IO
    } else {
        EXIT_FINDINGS
    }
}

#[allow(clippy::too_many_arguments)]
fn scan(
    io: &mut Io,
    target: &str,
    backend: BackendArg,
    skeleton: Option<&Path>,
    format: Format,
    collected_at: Option<String>,
    llm: LlmConfig,
    remote: &Remote,
) -> i32 {
    let when = match timestamp(collected_at) {
        Ok(t) => rfc3339(t),
        Err(e) => {
            say!(io.err, "divcard: {e}");
            return EXIT_USAGE;
        }
    };
    let is_remote = is_repo_id(target) && !Path::new(target).exists();
    let net = if is_remote || matches!(backend, BackendArg::Llm) {
        match transport(remote) {
            Ok(t) => Some(t),
            Err(e) => {
                say!(io.err, "divcard: {e}");
                return EXIT_IO;
            }
        }
    } else {
        None
    };
    let files = if is_remote {
        let sleeper = ThreadSleeper;
        let client = RemoteClient::new(net.as_deref().expect("transport for remote scan"), &sleeper)
            .api_base(&remote.api_base)
            .token(remote.api_token.clone())
            .parallelism(remote.parallelism);
        say!(io.err, "collecting {target} from {}", remote.api_base);
        client.collect_remote(target)
    } else {
        collect_local(Path::new(target))
    };
    let files = match files {
        Ok(f) => f,
        Err(e) => return scan_failed(io, target, &e),
    };
    let (findings, warnings, backend) = match backend {
        BackendArg::Rule => (classify_rule(&files), Vec::new(), Backend::Rule),
        BackendArg::Llm => {
            if llm.endpoint.is_empty() {
                say!(io.err, "divcard: --backend llm needs --llm-endpoint or DIVCARD_LLM_ENDPOINT");
                return EXIT_USAGE;
            }
            match classify_llm(&files, &llm, net.as_deref().expect("transport for llm")) {
                Ok((f, w)) => (f, w, Backend::Llm),
                Err(e) => return scan_failed(io, target, &e),
            }
        }
    };
    let mut rep = ScanReport::new(target, &when, &files, findings, backend);
    rep.warnings = warnings;
    for w in &rep.warnings {
        say!(io.err, "{w}");
    }
    if let Some(path) = skeleton {
        let name = project_name(target);
        let text = format_card(&skeleton_card(&rep, &name));
        if let Err(e) = std::fs::write(path, text) {
            say!(io.err, "divcard: {}: {e}", path.display());
            return EXIT_IO;
        }
        say!(io.err, "wrote skeleton card {}", path.display());
    }
    match format {
        Format::Json => {
            let _ = write!(io.out, "{}", report::scan_report_json(&rep));
        }
        Format::Text => {
            say!(io.out, "{} ({} community files, {} backend)", rep.repo, rep.files.len(), backend.as_str());
            for f in &rep.findings {
                let subs: Vec<String> = f.subfindings.iter().map(|(k, v)| format!("{k}={}", if *v { "yes" } else { "no" })).collect();
                say!(
                    io.out,
                    "{} {:<24} {:<7} {}",
                    f.area.as_str(),
                    f.area.title(),
                    if f.present { "present" } else { "absent" },
                    subs.join(" ")
                );
                for e in &f.evidence {
                    say!(io.out, "    {}:{}  {}", e.path, e.start, e.excerpt.replace('\n', " "));
                }
            }
        }
    }
    EXIT_OK
}

fn project_name(target: &str) -> String {
    let trimmed = target.trim_end_matches(['/', '\\']);
    let base = trimmed.rsplit(['/', '\\']).next().unwrap_or(trimmed);
    if base.is_empty() || base == "." {
        std::env::current_dir()
            .ok()
            .and_then(|d| d.file_name().map(|n| n.to_string_lossy().into_owned()))
            .unwrap_or_else(|| "project".into())
    } else {
        base.to_string()
    }
}

fn fetch_corpus(io: &mut Io, sel: &RepoSelector, out: &Path, now: Option<String>, remote: &Remote) -> i32 {
    let now = match timestamp(now) {
        Ok(t) => t,
        Err(e) => {
            say!(io.err, "divcard: {e}");
            return EXIT_USAGE;
        }
    };
    let net = match transport(remote) {
        Ok(t) => t,
        Err(e) => {
            say!(io.err, "divcard: {e}");
            return EXIT_IO;
        }
    };
    let sleeper = ThreadSleeper;
    let client = RemoteClient::new(net.as_ref(), &sleeper)
        .api_base(&remote.api_base)
        .token(remote.api_token.clone())
        .parallelism(remote.parallelism);
    match crate::corpus::fetch_corpus(&client, sel, now, out) {
        Ok(manifest) => {
            for w in &manifest.warnings {
                say!(io.err, "{w}");
            }
            for r in &manifest.repos {
                say!(io.out, "{}", out.join(&r.dir).display());
            }
            EXIT_OK
        }
        Err(e) => scan_failed(io, &sel.language, &e),
    }
}
