//! Local collection of community files.

use crate::error::ScanError;
use divcard_core::scan::{CommunityFile, CommunityFileSet, Matcher};
use std::fs;
use std::path::Path;

/// Directories searched, relative to the repository root. Only direct
/// children are considered; nothing deeper.
pub const SCOPE: &[&str] = &["", ".github", "docs"];

pub fn collect_local(root: &Path) -> Result<CommunityFileSet, ScanError> {
    collect_local_with(root, &Matcher::default())
}

pub fn collect_local_with(root: &Path, matcher: &Matcher) -> Result<CommunityFileSet, ScanError> {
    let io = |path: &Path| {
        let path = path.to_path_buf();
        move |source| ScanError::Io { path, source }
    };
    if !fs::metadata(root).map_err(io(root))?.is_dir() {
        return Err(ScanError::Io {
            path: root.to_path_buf(),
            source: std::io::Error::new(std::io::ErrorKind::InvalidInput, "not a directory"),
        });
    }
    let mut entries = Vec::new();
    for dir in SCOPE {
        let full = root.join(dir);
        if !dir.is_empty() && !full.is_dir() {
            continue;
        }
        for item in fs::read_dir(&full).map_err(io(&full))? {
            let item = item.map_err(io(&full))?;
            let path = item.path();
            if !path.is_file() {
                continue;
            }
            let Some(name) = item.file_name().to_str().map(str::to_owned) else { continue };
            let Some(category) = matcher.category(&name) else { continue };
            let bytes = fs::read(&path).map_err(io(&path))?;
            let rel = if dir.is_empty() { name } else { format!("{dir}/{name}") };
            entries.push(CommunityFile { category, path: rel, content: decode(&bytes) });
        }
    }
    Ok(CommunityFileSet::new(entries))
}

/// Lossy UTF-8 with CRLF/CR folded to LF, so evidence offsets and findings
/// do not depend on the checkout's line-ending convention.
pub fn decode(bytes: &[u8]) -> String {
    let text = String::from_utf8_lossy(bytes);
    let text = text.strip_prefix('\u{feff}').unwrap_or(&text);
    if !text.contains('\r') {
        return text.to_string();
    }
    text.replace("\r\n", "\n").replace('\r', "\n")
}
