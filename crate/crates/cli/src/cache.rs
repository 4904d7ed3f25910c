//! Flat-file result cache: one JSON file per config hash.

use std::fs;
use std::io;
use std::path::{Path, PathBuf};

pub struct Cache {
    dir: PathBuf,
}

impl Cache {
    pub fn open(dir: &Path) -> io::Result<Self> {
        fs::create_dir_all(dir)?;
        Ok(Cache { dir: dir.to_path_buf() })
    }

    pub fn path(&self, hash: &str) -> PathBuf {
        self.dir.join(format!("{hash}.json"))
    }

    /// The cached report, if present and parseable.
    pub fn load(&self, hash: &str) -> Option<String> {
        let text = fs::read_to_string(self.path(hash)).ok()?;
        serde_json::from_str::<serde_json::Value>(&text).ok()?;
        Some(text)
    }

    /// Writes through a temporary file so readers never see a partial report.
    pub fn store(&self, hash: &str, contents: &str) -> io::Result<()> {
        let tmp = self.dir.join(format!(".{hash}.{}.tmp", std::process::id()));
        fs::write(&tmp, contents)?;
        fs::rename(&tmp, self.path(hash))
    }
}
