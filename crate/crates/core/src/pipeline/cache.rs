//! Directory store of per-knot results, one JSON file per (knot, fingerprint).

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicU64, Ordering};

use super::invariants::KnotInvariants;
use crate::error::Result;
use crate::presentation::KnotId;

/// Environment variable overriding the default cache location.
pub const CACHE_ENV: &str = "TORSION_CACHE_DIR";

static TMP_COUNTER: AtomicU64 = AtomicU64::new(0);

#[derive(Clone, Debug)]
pub struct Cache {
    dir: PathBuf,
}

impl Cache {
    pub fn new(dir: impl Into<PathBuf>) -> Result<Self> {
        let dir = dir.into();
        fs::create_dir_all(&dir)?;
        Ok(Self { dir })
    }

    /// Explicit directory, else `$TORSION_CACHE_DIR`, else a directory under the system temp dir.
    pub fn resolve(explicit: Option<&Path>) -> PathBuf {
        if let Some(p) = explicit {
            return p.to_path_buf();
        }
        match std::env::var_os(CACHE_ENV) {
            Some(v) if !v.is_empty() => PathBuf::from(v),
            _ => std::env::temp_dir().join("twobridge-cache"),
        }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    fn path_for(&self, id: KnotId, fingerprint: &str) -> PathBuf {
        self.dir.join(format!("b{}_{}-{}.json", id.p, id.q, fingerprint))
    }

    /// Cached result, if present and readable.
    pub fn load(&self, id: KnotId, fingerprint: &str) -> Option<KnotInvariants> {
        let bytes = fs::read(self.path_for(id, fingerprint)).ok()?;
        match serde_json::from_slice::<KnotInvariants>(&bytes) {
            Ok(v) if v.fingerprint == fingerprint && v.knot == id => Some(v),
            Ok(_) => None,
            Err(e) => {
                log::warn!("ignoring unreadable cache entry for {id}: {e}");
                None
            }
        }
    }

    /// Writes to a temporary file in the same directory, then renames over the target.
    pub fn store(&self, inv: &KnotInvariants) -> Result<()> {
        let target = self.path_for(inv.knot, &inv.fingerprint);
        let n = TMP_COUNTER.fetch_add(1, Ordering::Relaxed);
        let tmp = self.dir.join(format!(".tmp-{}-{}", std::process::id(), n));
        {
            let mut f = fs::File::create(&tmp)?;
            f.write_all(&serde_json::to_vec(inv)?)?;
            f.sync_all()?;
        }
        fs::rename(&tmp, &target)?;
        Ok(())
    }
}
