//! Content-addressed store of spectrum reports.
//!
//! Entries are keyed on the square hash and the kind of computation. A
//! complete report is always reused; a report with timeouts is reused only
//! when the requested budget is no larger than the one it was computed with.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::engine::SearchBudget;
use crate::report::SpectrumReport;

pub const CACHE_DIR_ENV: &str = "OMNIVERSAL_CACHE_DIR";

#[derive(Debug, Clone, Serialize, Deserialize)]
struct Entry {
    kind: String,
    budget: SearchBudget,
    report: SpectrumReport,
}

#[derive(Debug, Clone)]
pub struct Cache {
    dir: PathBuf,
}

impl Cache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        Cache { dir: dir.into() }
    }

    /// `$OMNIVERSAL_CACHE_DIR`, else `$XDG_CACHE_HOME/omniversal`, else `~/.cache/omniversal`.
    pub fn from_env() -> Option<Self> {
        if let Some(d) = std::env::var_os(CACHE_DIR_ENV) {
            return Some(Cache::new(d));
        }
        if let Some(d) = std::env::var_os("XDG_CACHE_HOME") {
            return Some(Cache::new(Path::new(&d).join("omniversal")));
        }
        std::env::var_os("HOME")
            .map(|h| Cache::new(Path::new(&h).join(".cache").join("omniversal")))
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    fn path(&self, kind: &str, square_hash: &str) -> PathBuf {
        self.dir.join(format!("{kind}-{square_hash}.json"))
    }

    /// A cached report usable for `budget`. Unreadable or mismatched entries are deleted.
    pub fn lookup(
        &self,
        kind: &str,
        square_hash: &str,
        budget: &SearchBudget,
    ) -> Option<SpectrumReport> {
        let path = self.path(kind, square_hash);
        let text = fs::read_to_string(&path).ok()?;
        let entry: Entry = match serde_json::from_str(&text) {
            Ok(e) => e,
            Err(_) => {
                let _ = fs::remove_file(&path);
                return None;
            }
        };
        if entry.kind != kind || entry.report.square_hash != square_hash {
            let _ = fs::remove_file(&path);
            return None;
        }
        let complete = !entry.report.has_timeout();
        (complete || entry.budget.covers(budget)).then_some(entry.report)
    }

    /// Writes through a temporary file and renames it into place.
    pub fn store(
        &self,
        kind: &str,
        budget: &SearchBudget,
        report: &SpectrumReport,
    ) -> std::io::Result<()> {
        fs::create_dir_all(&self.dir)?;
        let path = self.path(kind, &report.square_hash);
        let entry = Entry {
            kind: kind.to_string(),
            budget: *budget,
            report: report.clone(),
        };
        let tmp = self
            .dir
            .join(format!(".{}.{}.tmp", kind, std::process::id()));
        let mut f = fs::File::create(&tmp)?;
        f.write_all(
            serde_json::to_string(&entry)
                .expect("entries serialize")
                .as_bytes(),
        )?;
        f.sync_all()?;
        fs::rename(tmp, path)
    }
}
