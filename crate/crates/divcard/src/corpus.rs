//! `fetch-corpus`: top repositories downloaded into `<out>/<owner>__<name>/`
//! with a `corpus.json` manifest.

use crate::error::ScanError;
use crate::remote::{RemoteClient, RepoSelector};
use chrono::{DateTime, Utc};
use divcard_core::diag::Diagnostic;
use serde::Serialize;
use std::path::Path;

#[derive(Debug, Serialize)]
pub struct CorpusRepo {
    pub repo: String,
    pub dir: String,
    pub files: Vec<String>,
}

#[derive(Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Manifest {
    pub language: String,
    pub top: usize,
    pub activity_window_days: i64,
    pub collected_at: String,
    pub repos: Vec<CorpusRepo>,
    #[serde(skip)]
    pub warnings: Vec<Diagnostic>,
}

pub fn repo_dir(repo: &str) -> String {
    repo.replacen('/', "__", 1)
}

pub fn fetch_corpus(client: &RemoteClient, sel: &RepoSelector, now: DateTime<Utc>, out: &Path) -> Result<Manifest, ScanError> {
    let selection = client.select_top_repos(sel, now)?;
    let io = |path: &Path| {
        let path = path.to_path_buf();
        move |source| ScanError::Io { path, source }
    };
    let mut manifest = Manifest {
        language: sel.language.clone(),
        top: sel.top_n,
        activity_window_days: sel.activity_window_days,
        collected_at: now.format("%Y-%m-%dT%H:%M:%SZ").to_string(),
        repos: Vec::new(),
        warnings: selection.warnings,
    };
    std::fs::create_dir_all(out).map_err(io(out))?;
    for repo in selection.repos {
        let files = client.collect_remote(&repo)?;
        let dir = repo_dir(&repo);
        let mut written = Vec::new();
        for f in &files.entries {
            let target = out.join(&dir).join(&f.path);
            if let Some(parent) = target.parent() {
                std::fs::create_dir_all(parent).map_err(io(parent))?;
            }
            std::fs::write(&target, &f.content).map_err(io(&target))?;
            written.push(f.path.clone());
        }
        // Keep repositories without community files visible to `scan`.
        std::fs::create_dir_all(out.join(&dir)).map_err(io(&out.join(&dir)))?;
        manifest.repos.push(CorpusRepo { repo, dir, files: written });
    }
    let path = out.join("corpus.json");
    std::fs::write(&path, crate::json::to_pretty(&manifest)).map_err(io(&path))?;
    Ok(manifest)
}
