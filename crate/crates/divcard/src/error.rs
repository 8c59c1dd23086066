use divcard_core::diag::{Code, Diagnostic, SourceSpan};
use std::path::PathBuf;

/// Failures of the collection and classification pipeline.
#[derive(Debug, thiserror::Error)]
pub enum ScanError {
    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: std::io::Error },
    /// `status` is 0 when no response was received (DNS, TLS, reset…).
    #[error("HTTP {status} from {url}: {detail}")]
    Http { status: u16, url: String, detail: String },
    /// `reset_at` is the platform's reset time in Unix seconds, when given.
    #[error("rate limit still exhausted after retries (resets at {})", fmt_reset(*reset_at))]
    RateLimited { reset_at: Option<u64> },
    #[error("not found: {0}")]
    NotFound(String),
    #[error("{area}: response is not a valid verdict: {raw}")]
    ClassifierFormat { area: String, raw: String },
}

fn fmt_reset(r: Option<u64>) -> String {
    match r {
        Some(t) => t.to_string(),
        None => "unknown".into(),
    }
}

impl ScanError {
    pub fn code(&self) -> Code {
        match self {
            ScanError::Io { .. } => Code::IoError,
            ScanError::Http { .. } => Code::HttpError,
            ScanError::RateLimited { .. } => Code::RateLimited,
            ScanError::NotFound(_) => Code::NotFound,
            ScanError::ClassifierFormat { .. } => Code::ClassifierFormatError,
        }
    }

    pub fn to_diagnostic(&self, subject: &str) -> Diagnostic {
        Diagnostic::new(self.code(), self.to_string(), SourceSpan::new(subject, (1, 1), (1, 1)))
    }

    /// Transport-level failures map to exit status 3; a malformed classifier
    /// verdict is a finding (status 1).
    pub fn is_io(&self) -> bool {
        !matches!(self, ScanError::ClassifierFormat { .. })
    }
}
