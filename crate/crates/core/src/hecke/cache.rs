//! On-disk form of the expensive tables.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{HTable, KlTable};
use crate::error::{Error, Result};

pub const CACHE_FORMAT: u32 = 1;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CachedTables {
    pub format: u32,
    pub cartan_type: String,
    pub weights: Vec<i32>,
    pub kl: KlTable,
    pub h: HTable,
}

impl CachedTables {
    /// Reads a cache file, returning `None` if it is missing, unreadable,
    /// from another format version or for other parameters.
    pub fn load(path: &Path, cartan_type: &str, weights: &[i32]) -> Option<Self> {
        let text = fs::read_to_string(path).ok()?;
        let t: Self = serde_json::from_str(&text).ok()?;
        (t.format == CACHE_FORMAT && t.cartan_type == cartan_type && t.weights == weights).then_some(t)
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        let text = serde_json::to_string(self).map_err(|e| Error::Io(e.to_string()))?;
        if let Some(dir) = path.parent() {
            fs::create_dir_all(dir).map_err(|e| Error::Io(format!("cache directory: {e}")))?;
        }
        // write then rename so concurrent readers never see a partial file
        let tmp = path.with_extension(format!("tmp{}", std::process::id()));
        fs::write(&tmp, text).map_err(|e| Error::Io(format!("cache write: {e}")))?;
        fs::rename(&tmp, path).map_err(|e| Error::Io(format!("cache write: {e}")))?;
        Ok(())
    }
}
