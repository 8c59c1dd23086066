mod common;

use common::fixture;
use serde_json::Value;
use std::path::Path;
use std::process::{Command, Output};

fn divcard(args: &[&str]) -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_divcard"));
    c.args(args)
        .env_remove("SOURCE_DATE_EPOCH")
        .env_remove("DIVCARD_CASSETTE")
        .env_remove("DIVCARD_API_BASE")
        .env_remove("DIVCARD_API_TOKEN")
        .env_remove("DIVCARD_LLM_ENDPOINT")
        .env_remove("DIVCARD_LLM_KEY")
        .env_remove("DIVCARD_LLM_MODEL");
    c
}

fn run(args: &[&str]) -> Output {
    divcard(args).output().unwrap()
}

fn f(rel: &str) -> String {
    fixture(rel).to_string_lossy().into_owned()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn check_clean_card() {
    let o = run(&["check", &f("besser.divcard")]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert_eq!(stdout(&o), "");
}

#[test]
fn check_reports_errors_with_positions() {
    let o = run(&["check", &f("bad_range.divcard")]);
    assert_eq!(o.status.code(), Some(1));
    let out = stdout(&o);
    assert_eq!(out.lines().count(), 1);
    assert!(out.contains("bad_range.divcard:5:3: error[RANGE_INVERTED]"), "{out}");
}

#[test]
fn check_warnings_do_not_fail() {
    let o = run(&["check", &f("listing4.divcard")]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("warning[MISSING_PROJECT]"));
}

#[test]
fn check_json_output() {
    let o = run(&["check", &f("mutations/SYN_UNTERMINATED_STRING.divcard"), "--format", "json"]);
    assert_eq!(o.status.code(), Some(1));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let d = &v["diagnostics"][0];
    assert_eq!(d["code"], "SYN_UNTERMINATED_STRING");
    assert_eq!(d["severity"], "error");
    assert!(d["span"]["startLine"].as_u64().unwrap() >= 1);
}

#[test]
fn unreadable_input_is_an_io_failure() {
    let o = run(&["check", "/nonexistent/card.divcard"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stdout(&o).is_empty());
}

#[test]
fn usage_errors() {
    for args in [&["frobnicate"][..], &["emit", "x.divcard"], &["emit", "x.divcard", "--to", "pdf"], &[]] {
        let o = run(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(!stderr(&o).is_empty());
    }
    let o = run(&["--help"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("fetch-corpus"));
}

#[test]
fn emit_to_stdout_and_file() {
    let o = run(&["emit", &f("besser.divcard"), "--to", "json"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), std::fs::read_to_string(fixture("golden/besser.json")).unwrap());

    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("card.md");
    let o = run(&["emit", &f("besser.divcard"), "--to", "md", "-o", &out.to_string_lossy()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(std::fs::read_to_string(out).unwrap(), std::fs::read_to_string(fixture("golden/besser.md")).unwrap());
}

#[test]
fn emit_refuses_unresolved_cards() {
    let o = run(&["emit", &f("mutations/EMIT_UNRESOLVED.divcard"), "--to", "json"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).is_empty());
    assert!(stderr(&o).contains("error[EMIT_UNRESOLVED]"));
}

#[test]
fn emit_refuses_cards_with_parse_errors() {
    let o = run(&["emit", &f("mutations/SYN_BAD_DATE.divcard"), "--to", "md"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("SYN_BAD_DATE"));
}

#[test]
fn report_grades() {
    let o = run(&["report", &f("besser.divcard"), "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let row = v["rows"].as_array().unwrap().iter().find(|r| r["dimension"] == "developmentTeam").unwrap();
    assert_eq!(row["level"], "High");

    let o = run(&["report", &f("decidim.divcard")]);
    let line = stdout(&o).lines().find(|l| l.starts_with("nonCodingContributors")).unwrap().to_owned();
    assert!(line.contains("Limited"), "{line}");

    // A stricter threshold demotes High.
    let o = run(&["report", &f("besser.divcard"), "--threshold", "0.95"]);
    let line = stdout(&o).lines().find(|l| l.starts_with("developmentTeam")).unwrap().to_owned();
    assert!(line.contains("Limited"), "{line}");
}

#[test]
fn lint_findings() {
    let o = run(&["lint", &f("mutations/SMALL_GROUP_REIDENTIFICATION.divcard")]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("warning[SMALL_GROUP_REIDENTIFICATION]"));

    let o = run(&["lint", &f("mutations/SMALL_GROUP_REIDENTIFICATION.divcard"), "--k", "1", "--format", "json"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(v["findings"].as_array().unwrap().iter().all(|x| x["code"] != "SMALL_GROUP_REIDENTIFICATION"));
}

#[test]
fn scan_local_with_skeleton() {
    let dir = tempfile::tempdir().unwrap();
    let sk = dir.path().join("agora.divcard");
    let o = run(&[
        "scan",
        &f("repo_a"),
        "--format",
        "json",
        "--collected-at",
        "2026-01-01T00:00:00Z",
        "--skeleton",
        &sk.to_string_lossy(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["collectedAt"], "2026-01-01T00:00:00Z");
    assert_eq!(v["backend"], "rule");
    let present: Vec<_> = v["findings"].as_array().unwrap().iter().map(|f| f["present"].as_bool().unwrap()).collect();
    assert_eq!(present, [true, false, false, true, true]);

    let o = run(&["check", &sk.to_string_lossy()]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}

#[test]
fn scan_timestamp_from_source_date_epoch() {
    let o = divcard(&["scan", &f("repo_a"), "--format", "json"]).env("SOURCE_DATE_EPOCH", "1767225600").output().unwrap();
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["collectedAt"], "2026-01-01T00:00:00Z");
}

#[test]
fn scan_missing_directory() {
    let o = run(&["scan", "/nonexistent/checkout"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("IO_ERROR"));
}

#[test]
fn scan_remote_from_cassette() {
    let o = divcard(&["scan", "acme/agora", "--format", "json", "--collected-at", "2026-01-01T00:00:00Z"])
        .env("DIVCARD_CASSETTE", fixture("cassettes/collect_repo_a.json"))
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let remote: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(remote["repo"], "acme/agora");

    let local = run(&["scan", &f("repo_a"), "--format", "json", "--collected-at", "2026-01-01T00:00:00Z"]);
    let mut local: Value = serde_json::from_str(&stdout(&local)).unwrap();
    local["repo"] = "acme/agora".into();
    assert_eq!(remote, local);
}

#[test]
fn scan_remote_not_found() {
    let o = divcard(&["scan", "nobody/nothing"]).env("DIVCARD_CASSETTE", fixture("cassettes/not_found.json")).output().unwrap();
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("NOT_FOUND"));
}

#[test]
fn scan_llm_backend_from_cassette() {
    let o = divcard(&["scan", &f("repo_a"), "--backend", "llm", "--format", "json", "--collected-at", "2026-01-01T00:00:00Z"])
        .env("DIVCARD_CASSETTE", fixture("cassettes/llm_valid.json"))
        .env("DIVCARD_LLM_ENDPOINT", "http://llm.test/v1/chat/completions")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["backend"], "llm");
    assert_eq!(v["findings"][0]["present"], true);

    let o = divcard(&["scan", &f("repo_a"), "--backend", "llm"])
        .env("DIVCARD_CASSETTE", fixture("cassettes/llm_prose.json"))
        .env("DIVCARD_LLM_ENDPOINT", "http://llm.test/v1/chat/completions")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("CLASSIFIER_FORMAT_ERROR"));

    let o = run(&["scan", &f("repo_a"), "--backend", "llm"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn fetch_corpus_then_scan() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("corpus");
    let o = divcard(&["fetch-corpus", "--language", "Rust", "--top", "2", "--now", "2026-10-01T00:00:00Z", "--out"])
        .arg(&out)
        .env("DIVCARD_CASSETTE", fixture("cassettes/fetch_corpus.json"))
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(out.join("corpus.json").is_file());
    let o = run(&["scan", &out.join("alpha__one").to_string_lossy()]);
    assert_eq!(o.status.code(), Some(0));
}

fn copy_tree(from: &Path, to: &Path, crlf: bool) {
    std::fs::create_dir_all(to).unwrap();
    for e in std::fs::read_dir(from).unwrap() {
        let e = e.unwrap();
        let target = to.join(e.file_name());
        if e.file_type().unwrap().is_dir() {
            copy_tree(&e.path(), &target, crlf);
        } else {
            let text = std::fs::read_to_string(e.path()).unwrap();
            std::fs::write(target, if crlf { text.replace('\n', "\r\n") } else { text }).unwrap();
        }
    }
}

#[test]
fn outputs_are_byte_identical_across_line_endings() {
    let dir = tempfile::tempdir().unwrap();
    let (lf, crlf) = (dir.path().join("lf"), dir.path().join("crlf"));
    for (root, conv) in [(&lf, false), (&crlf, true)] {
        copy_tree(&fixture("repo_a"), &root.join("repo"), conv);
        for name in ["besser.divcard", "decidim.divcard"] {
            let text = std::fs::read_to_string(fixture(name)).unwrap();
            std::fs::write(root.join(name), if conv { text.replace('\n', "\r\n") } else { text }).unwrap();
        }
    }
    let invocations: [&[&str]; 5] = [
        &["emit", "besser.divcard", "--to", "json"],
        &["emit", "decidim.divcard", "--to", "md"],
        &["scan", "repo", "--format", "json", "--collected-at", "2026-01-01T00:00:00Z"],
        &["report", "decidim.divcard", "--format", "json"],
        &["check", "decidim.divcard", "--format", "json"],
    ];
    for args in invocations {
        let mut outputs = Vec::new();
        for root in [&lf, &lf, &crlf] {
            let o = divcard(args).current_dir(root).output().unwrap();
            assert_eq!(o.status.code(), Some(0), "{args:?}: {}", stderr(&o));
            outputs.push(o.stdout);
        }
        assert_eq!(outputs[0], outputs[1], "{args:?} differs between runs");
        assert_eq!(outputs[0], outputs[2], "{args:?} differs between LF and CRLF inputs");
    }
}
