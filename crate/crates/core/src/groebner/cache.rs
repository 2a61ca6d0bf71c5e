//! On-disk cache of reduced ideal bases, keyed by a content hash of the ring
//! descriptor and the generators.

use std::fs;
use std::path::{Path, PathBuf};

use sha2::{Digest, Sha256};

use super::ideal::Ideal;
use crate::poly::Poly;
use crate::ring::PolyRing;

pub const CACHE_ENV: &str = "FROB_CACHE_DIR";

#[derive(Clone, Debug)]
pub struct GbCache {
    dir: PathBuf,
}

impl GbCache {
    pub fn new(dir: impl AsRef<Path>) -> GbCache {
        GbCache {
            dir: dir.as_ref().to_path_buf(),
        }
    }

    /// Cache rooted at `$FROB_CACHE_DIR`, if set.
    pub fn from_env() -> Option<GbCache> {
        std::env::var_os(CACHE_ENV)
            .filter(|v| !v.is_empty())
            .map(GbCache::new)
    }

    pub fn key(ring: &PolyRing, gens: &[Poly]) -> String {
        let mut h = Sha256::new();
        h.update(ring.descriptor_hash().as_bytes());
        for g in gens {
            h.update(b"\n");
            h.update(ring.format(g).as_bytes());
        }
        hex::encode(h.finalize())
    }

    fn path(&self, key: &str) -> PathBuf {
        self.dir.join(format!("{key}.gb"))
    }

    /// Returns the ideal with its basis loaded from disk, or computes the
    /// basis and stores it. IO failures fall back to plain computation.
    pub fn ideal(&self, ring: &PolyRing, gens: Vec<Poly>) -> Ideal {
        let key = Self::key(ring, &gens);
        let path = self.path(&key);
        if let Ok(text) = fs::read_to_string(&path) {
            let parsed: Option<Vec<Poly>> = text
                .lines()
                .filter(|l| !l.is_empty())
                .map(|l| ring.parse(l).ok())
                .collect();
            if let Some(basis) = parsed {
                return Ideal::with_basis(ring, gens, basis);
            }
        }
        let id = Ideal::new(ring, gens);
        let text: String = id
            .groebner_basis()
            .iter()
            .map(|g| ring.format(g) + "\n")
            .collect();
        if fs::create_dir_all(&self.dir).is_ok() {
            let tmp = self.dir.join(format!("{key}.tmp{}", std::process::id()));
            if fs::write(&tmp, text).is_ok() {
                let _ = fs::rename(&tmp, &path);
            }
        }
        id
    }
}
