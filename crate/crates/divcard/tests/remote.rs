mod common;

use chrono::{DateTime, Utc};
use common::fixture;
use divcard::collect::collect_local;
use divcard::corpus::{fetch_corpus, repo_dir};
use divcard::error::ScanError;
use divcard::http::{FakeSleeper, Recorder, Replay, Request, Response, Transport, TransportError};
use divcard::remote::{RemoteClient, RepoSelector};
use divcard_core::Code;
use std::time::Duration;

fn replay(name: &str) -> Replay {
    Replay::from_file(&fixture(&format!("cassettes/{name}.json"))).unwrap()
}

fn now() -> DateTime<Utc> {
    "2026-10-01T00:00:00Z".parse().unwrap()
}

fn slept(s: &FakeSleeper) -> Vec<u64> {
    s.slept.lock().unwrap().iter().map(Duration::as_secs).collect()
}

/// Holds every request long enough for concurrent ones to overlap.
struct Slow<T>(T);

impl<T: Transport> Transport for Slow<T> {
    fn send(&self, req: &Request) -> Result<Response, TransportError> {
        std::thread::sleep(Duration::from_millis(30));
        self.0.send(req)
    }
}

/// Keeps full requests, headers included.
struct Spy<T>(T, std::sync::Mutex<Vec<Request>>);

impl<T: Transport> Transport for Spy<T> {
    fn send(&self, req: &Request) -> Result<Response, TransportError> {
        self.1.lock().unwrap().push(req.clone());
        self.0.send(req)
    }
}

#[test]
fn remote_collection_matches_local_checkout() {
    let t = replay("collect_repo_a");
    let s = FakeSleeper::default();
    let remote = RemoteClient::new(&t, &s).collect_remote("acme/agora").unwrap();
    let local = collect_local(&fixture("repo_a")).unwrap();
    assert_eq!(remote, local);
    assert_eq!(t.unused(), 0);
    assert!(slept(&s).is_empty());
}

#[test]
fn downloads_respect_the_parallelism_bound() {
    let t = Recorder::new(Slow(replay("collect_repo_a")));
    let s = FakeSleeper::default();
    let files = RemoteClient::new(&t, &s).parallelism(2).collect_remote("acme/agora").unwrap();
    assert_eq!(files.len(), 4);
    assert_eq!(t.peak_in_flight(), 2);
}

#[test]
fn rate_limit_recovers_after_backoff() {
    let t = replay("rate_limit_recover");
    let s = FakeSleeper::default();
    let files = RemoteClient::new(&t, &s).collect_remote("acme/tiny").unwrap();
    assert_eq!(files.entries.iter().map(|f| f.path.as_str()).collect::<Vec<_>>(), ["README.md"]);
    assert_eq!(slept(&s), [1, 2]);
    assert_eq!(t.unused(), 0);
}

#[test]
fn rate_limit_exhaustion_reports_the_reset_time() {
    let t = replay("rate_limit_exhausted");
    let s = FakeSleeper::default();
    let err = RemoteClient::new(&t, &s).collect_remote("acme/tiny").unwrap_err();
    assert!(matches!(err, ScanError::RateLimited { reset_at: Some(1_767_225_600) }), "{err:?}");
    assert_eq!(err.code(), Code::RateLimited);
    assert_eq!(slept(&s), [1, 2, 4, 8, 16]);
    assert_eq!(t.unused(), 0);
}

#[test]
fn missing_repository() {
    let t = replay("not_found");
    let s = FakeSleeper::default();
    let err = RemoteClient::new(&t, &s).collect_remote("nobody/nothing").unwrap_err();
    assert_eq!(err.code(), Code::NotFound);
    assert!(err.to_diagnostic("nobody/nothing").message.contains("nobody/nothing"));
}

#[test]
fn token_is_sent_to_the_api_only() {
    let t = Spy(replay("collect_repo_a"), Default::default());
    let s = FakeSleeper::default();
    RemoteClient::new(&t, &s).token(Some("secret".into())).collect_remote("acme/agora").unwrap();
    let sent = t.1.into_inner().unwrap();
    assert_eq!(sent.len(), 7);
    for r in sent {
        let has = r.headers.iter().any(|(k, _)| k == "authorization");
        assert_eq!(has, r.url.starts_with("https://api.github.com/"), "{}", r.url);
    }
}

#[test]
fn selects_active_repositories_by_stars() {
    let t = replay("search");
    let s = FakeSleeper::default();
    let sel = RemoteClient::new(&t, &s).select_top_repos(&RepoSelector::new("Rust", 2), now()).unwrap();
    assert_eq!(sel.repos, ["alpha/one", "gamma/three"]);
    assert!(sel.warnings.is_empty());
    assert_eq!(t.unused(), 0);
}

#[test]
fn fewer_active_repositories_than_requested() {
    let t = replay("search");
    let s = FakeSleeper::default();
    let sel = RemoteClient::new(&t, &s).select_top_repos(&RepoSelector::new("Rust", 10), now()).unwrap();
    assert_eq!(sel.repos, ["alpha/one", "gamma/three"]);
}

#[test]
fn recorded_cassettes_never_carry_credentials() {
    let t = Recorder::new(replay("collect_repo_a"));
    let s = FakeSleeper::default();
    RemoteClient::new(&t, &s).token(Some("secret".into())).collect_remote("acme/agora").unwrap();
    assert!(!t.cassette().to_json().contains("secret"));
}

#[test]
fn zero_repositories_requested() {
    let t = Recorder::new(replay("search"));
    let s = FakeSleeper::default();
    let sel = RemoteClient::new(&t, &s).select_top_repos(&RepoSelector::new("Rust", 0), now()).unwrap();
    assert!(sel.repos.is_empty());
    assert!(t.requests().is_empty());
}

#[test]
fn unknown_language_yields_an_empty_selection() {
    let t = replay("search_invalid_language");
    let s = FakeSleeper::default();
    let sel = RemoteClient::new(&t, &s).select_top_repos(&RepoSelector::new("NotALanguage!!", 5), now()).unwrap();
    assert!(sel.repos.is_empty());
    assert_eq!(sel.warnings.iter().map(|d| d.code).collect::<Vec<_>>(), [Code::EmptySearch]);
}

#[test]
fn corpus_layout() {
    let t = replay("fetch_corpus");
    let s = FakeSleeper::default();
    let out = tempfile::tempdir().unwrap();
    let client = RemoteClient::new(&t, &s);
    let manifest = fetch_corpus(&client, &RepoSelector::new("Rust", 2), now(), out.path()).unwrap();

    assert_eq!(manifest.repos.iter().map(|r| r.repo.as_str()).collect::<Vec<_>>(), ["alpha/one", "gamma/three"]);
    assert_eq!(repo_dir("alpha/one"), "alpha__one");
    for r in &manifest.repos {
        assert!(out.path().join(&r.dir).join("README.md").is_file());
    }
    let json: serde_json::Value = serde_json::from_slice(&std::fs::read(out.path().join("corpus.json")).unwrap()).unwrap();
    assert_eq!(json["language"], "Rust");
    assert_eq!(json["collectedAt"], "2026-10-01T00:00:00Z");
    assert_eq!(t.unused(), 0);
}
