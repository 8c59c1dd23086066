//! Remote collection and repository selection over the hosting platform's
//! REST API (GitHub v3 shapes).

use crate::collect::{decode, SCOPE};
use crate::error::ScanError;
use crate::http::{Backoff, Request, Response, Sleeper, Transport};
use chrono::{DateTime, Duration as Days, Utc};
use divcard_core::diag::{Code, Diagnostic, SourceSpan};
use divcard_core::scan::{Category, CommunityFile, CommunityFileSet, Matcher};
use serde::Deserialize;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::mpsc;
use std::time::Duration;

pub const DEFAULT_API_BASE: &str = "https://api.github.com";
pub const DEFAULT_PARALLELISM: usize = 8;
pub const SEARCH_PAGE_SIZE: usize = 100;
/// The search API never returns more than this many results per query.
const SEARCH_CAP: usize = 1000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RepoSelector {
    pub language: String,
    pub top_n: usize,
    pub activity_window_days: i64,
}

impl RepoSelector {
    pub fn new(language: &str, top_n: usize) -> Self {
        RepoSelector { language: language.into(), top_n, activity_window_days: 30 }
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Selection {
    pub repos: Vec<String>,
    pub warnings: Vec<Diagnostic>,
}

pub struct RemoteClient<'a> {
    transport: &'a dyn Transport,
    sleeper: &'a dyn Sleeper,
    api_base: String,
    token: Option<String>,
    backoff: Backoff,
    parallelism: usize,
    matcher: Matcher,
}

#[derive(Deserialize)]
struct ContentEntry {
    name: String,
    path: String,
    #[serde(rename = "type")]
    kind: String,
    download_url: Option<String>,
}

#[derive(Deserialize)]
struct SearchPage {
    items: Vec<SearchItem>,
}

#[derive(Deserialize)]
struct SearchItem {
    full_name: String,
    #[serde(default)]
    stargazers_count: u64,
}

/// `owner/name` with platform-legal characters.
pub fn is_repo_id(s: &str) -> bool {
    let ok = |p: &str| !p.is_empty() && p.bytes().all(|b| b.is_ascii_alphanumeric() || b"-_.".contains(&b));
    matches!(s.split_once('/'), Some((o, n)) if ok(o) && ok(n) && !n.contains('/'))
}

fn enc(s: &str) -> String {
    url::form_urlencoded::byte_serialize(s.as_bytes()).collect()
}

impl<'a> RemoteClient<'a> {
    pub fn new(transport: &'a dyn Transport, sleeper: &'a dyn Sleeper) -> Self {
        RemoteClient {
            transport,
            sleeper,
            api_base: DEFAULT_API_BASE.into(),
            token: None,
            backoff: Backoff::default(),
            parallelism: DEFAULT_PARALLELISM,
            matcher: Matcher::default(),
        }
    }

    pub fn api_base(mut self, base: &str) -> Self {
        self.api_base = base.trim_end_matches('/').into();
        self
    }

    pub fn token(mut self, token: Option<String>) -> Self {
        self.token = token.filter(|t| !t.is_empty());
        self
    }

    pub fn parallelism(mut self, p: usize) -> Self {
        self.parallelism = p.max(1);
        self
    }

    pub fn backoff(mut self, b: Backoff) -> Self {
        self.backoff = b;
        self
    }

    pub fn matcher(mut self, m: Matcher) -> Self {
        self.matcher = m;
        self
    }

    /// GET with retry: rate-limit responses (403/429 with an exhausted quota
    /// or `Retry-After`), 5xx and transport failures are retried up to
    /// `max_retries` times with exponential backoff.
    fn get(&self, url: &str) -> Result<Response, ScanError> {
        let mut req = Request::get(url).header("accept", "application/vnd.github+json");
        if url.starts_with(&self.api_base) {
            if let Some(t) = &self.token {
                req = req.header("authorization", format!("Bearer {t}"));
            }
        }
        let mut attempt = 0;
        loop {
            let retry_after = |r: &Response| r.header("retry-after").and_then(|v| v.trim().parse().ok()).map(Duration::from_secs);
            let failure = match self.transport.send(&req) {
                Err(e) => ScanError::Http { status: 0, url: url.into(), detail: e.0 },
                Ok(r) if (200..300).contains(&r.status) => return Ok(r),
                Ok(r) if r.status == 404 => return Err(ScanError::NotFound(url.into())),
                Ok(r) if is_rate_limited(&r) => {
                    if attempt < self.backoff.max_retries {
                        self.sleeper.sleep(self.backoff.delay(attempt, retry_after(&r)));
                        attempt += 1;
                        continue;
                    }
                    let reset_at = r.header("x-ratelimit-reset").and_then(|v| v.trim().parse().ok());
                    return Err(ScanError::RateLimited { reset_at });
                }
                Ok(r) if r.status >= 500 => {
                    ScanError::Http { status: r.status, url: url.into(), detail: snippet(&r.body) }
                }
                Ok(r) => return Err(ScanError::Http { status: r.status, url: url.into(), detail: snippet(&r.body) }),
            };
            if attempt >= self.backoff.max_retries {
                return Err(failure);
            }
            self.sleeper.sleep(self.backoff.delay(attempt, None));
            attempt += 1;
        }
    }

    fn get_json<T: for<'de> Deserialize<'de>>(&self, url: &str) -> Result<T, ScanError> {
        let r = self.get(url)?;
        serde_json::from_str(&r.body).map_err(|e| ScanError::Http {
            status: r.status,
            url: url.into(),
            detail: format!("unexpected response body: {e}"),
        })
    }

    /// Lists root, `.github/` and `docs/`, then downloads matched files with
    /// at most `parallelism` requests in flight.
    pub fn collect_remote(&self, repo: &str) -> Result<CommunityFileSet, ScanError> {
        if !is_repo_id(repo) {
            return Err(ScanError::NotFound(repo.into()));
        }
        let mut jobs: Vec<(Category, String, String)> = Vec::new();
        for dir in SCOPE {
            let url = if dir.is_empty() {
                format!("{}/repos/{repo}/contents", self.api_base)
            } else {
                format!("{}/repos/{repo}/contents/{dir}", self.api_base)
            };
            let entries: Vec<ContentEntry> = match self.get_json(&url) {
                Ok(e) => e,
                Err(ScanError::NotFound(_)) if dir.is_empty() => return Err(ScanError::NotFound(repo.into())),
                Err(ScanError::NotFound(_)) => continue,
                Err(e) => return Err(e),
            };
            for e in entries {
                if e.kind != "file" {
                    continue;
                }
                let (Some(category), Some(download)) = (self.matcher.category(&e.name), e.download_url) else { continue };
                jobs.push((category, e.path, download));
            }
        }
        let files = self.download_all(&jobs)?;
        Ok(CommunityFileSet::new(files))
    }

    fn download_all(&self, jobs: &[(Category, String, String)]) -> Result<Vec<CommunityFile>, ScanError> {
        let next = AtomicUsize::new(0);
        let (tx, rx) = mpsc::channel();
        std::thread::scope(|s| {
            for _ in 0..self.parallelism.min(jobs.len()) {
                let tx = tx.clone();
                let next = &next;
                s.spawn(move || loop {
                    let i = next.fetch_add(1, Ordering::SeqCst);
                    let Some((category, path, url)) = jobs.get(i) else { break };
                    let result = self.get(url).map(|r| CommunityFile {
                        category: *category,
                        path: path.clone(),
                        content: decode(r.body.as_bytes()),
                    });
                    let failed = result.is_err();
                    if tx.send((i, result)).is_err() || failed {
                        break;
                    }
                });
            }
        });
        drop(tx);
        let mut results: Vec<(usize, Result<CommunityFile, ScanError>)> = rx.into_iter().collect();
        results.sort_by_key(|(i, _)| *i);
        results.into_iter().map(|(_, r)| r).collect()
    }

    /// Star-ordered search for `language`, keeping repositories with at least
    /// one commit inside the activity window ending at `now`.
    pub fn select_top_repos(&self, sel: &RepoSelector, now: DateTime<Utc>) -> Result<Selection, ScanError> {
        let mut out = Selection::default();
        if sel.top_n == 0 {
            return Ok(out);
        }
        let since = (now - Days::days(sel.activity_window_days)).format("%Y-%m-%dT%H:%M:%SZ").to_string();
        let mut found: Vec<(u64, String)> = Vec::new();
        let mut seen = 0;
        let mut page = 1;
        'pages: loop {
            let url = format!(
                "{}/search/repositories?q={}&sort=stars&order=desc&per_page={SEARCH_PAGE_SIZE}&page={page}",
                self.api_base,
                enc(&format!("language:{}", sel.language))
            );
            let items = match self.get_json::<SearchPage>(&url) {
                Ok(p) => p.items,
                Err(ScanError::Http { status: 422, .. }) => Vec::new(),
                Err(e) => return Err(e),
            };
            let n = items.len();
            for item in items {
                if self.is_active(&item.full_name, &since)? {
                    found.push((item.stargazers_count, item.full_name));
                    if found.len() == sel.top_n {
                        break 'pages;
                    }
                }
            }
            seen += n;
            if n < SEARCH_PAGE_SIZE || seen >= SEARCH_CAP {
                break;
            }
            page += 1;
        }
        if found.is_empty() {
            out.warnings.push(Diagnostic::new(
                Code::EmptySearch,
                format!("no active repositories found for language `{}`", sel.language),
                SourceSpan::new("<search>", (1, 1), (1, 1)),
            ));
        }
        found.sort_by_key(|(stars, _)| std::cmp::Reverse(*stars));
        out.repos = found.into_iter().map(|(_, r)| r).collect();
        Ok(out)
    }

    fn is_active(&self, repo: &str, since: &str) -> Result<bool, ScanError> {
        let url = format!("{}/repos/{repo}/commits?since={}&per_page=1", self.api_base, enc(since));
        match self.get_json::<Vec<serde_json::Value>>(&url) {
            Ok(commits) => Ok(!commits.is_empty()),
            // 409: empty repository.
            Err(ScanError::NotFound(_)) | Err(ScanError::Http { status: 409, .. }) => Ok(false),
            Err(e) => Err(e),
        }
    }
}

fn is_rate_limited(r: &Response) -> bool {
    r.status == 429
        || (r.status == 403 && (r.header("x-ratelimit-remaining") == Some("0") || r.header("retry-after").is_some()))
}

fn snippet(body: &str) -> String {
    body.chars().take(200).collect()
}
