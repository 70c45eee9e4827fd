use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::operators::{atom_is_memoised, generate_atom, insert_atom};
use crate::partition::Partition;
use crate::tableau::{Tableau, TableauSet};

pub const CACHE_ENV: &str = "KATABOL_CACHE";

#[derive(Serialize, Deserialize)]
struct Entry {
    k: usize,
    lambda: Partition,
    tableaux: Vec<String>,
}

/// One JSON file per atom under `<dir>/<k>/<λ>.json`.
#[derive(Clone, Debug, Default)]
pub struct AtomCache {
    dir: Option<PathBuf>,
}

impl AtomCache {
    pub fn disabled() -> Self {
        AtomCache { dir: None }
    }

    pub fn at(dir: impl Into<PathBuf>) -> Self {
        AtomCache { dir: Some(dir.into()) }
    }

    /// The flag wins over the environment; neither disables caching.
    pub fn from_flag_or_env(flag: Option<&Path>) -> Self {
        match flag {
            Some(p) => Self::at(p),
            None => match std::env::var_os(CACHE_ENV) {
                Some(v) if !v.is_empty() => Self::at(PathBuf::from(v)),
                _ => Self::disabled(),
            },
        }
    }

    pub fn dir(&self) -> Option<&Path> {
        self.dir.as_deref()
    }

    pub fn path(&self, lambda: &Partition, k: usize) -> Option<PathBuf> {
        let name = if lambda.is_empty() { "empty".to_string() } else { lambda.to_csv() };
        self.dir.as_ref().map(|d| d.join(k.to_string()).join(format!("{}.json", name)))
    }

    pub fn load(&self, lambda: &Partition, k: usize) -> Result<Option<TableauSet>> {
        let Some(path) = self.path(lambda, k) else { return Ok(None) };
        let text = match fs::read_to_string(&path) {
            Ok(t) => t,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(None),
            Err(e) => return Err(Error::Io(format!("{}: {}", path.display(), e))),
        };
        let entry: Entry =
            serde_json::from_str(&text).map_err(|e| Error::Io(format!("{}: {}", path.display(), e)))?;
        if entry.k != k || &entry.lambda != lambda {
            return Err(Error::Io(format!("{} holds a different atom", path.display())));
        }
        let tabs = entry.tableaux.iter().map(|s| s.parse::<Tableau>()).collect::<Result<Vec<_>>>()?;
        Ok(Some(TableauSet::new(tabs)?))
    }

    /// Writes through a temporary file and a rename, so concurrent writers
    /// of one key never leave a torn file.
    pub fn store(&self, lambda: &Partition, k: usize, set: &TableauSet) -> Result<()> {
        let Some(path) = self.path(lambda, k) else { return Ok(()) };
        let io = |e: std::io::Error| Error::Io(format!("{}: {}", path.display(), e));
        fs::create_dir_all(path.parent().unwrap()).map_err(io)?;
        let entry = Entry { k, lambda: lambda.clone(), tableaux: set.iter().map(|t| t.to_string()).collect() };
        let text = serde_json::to_string_pretty(&entry).map_err(|e| Error::Io(e.to_string()))?;
        let tmp = path.with_extension(format!("json.{}.tmp", std::process::id()));
        fs::write(&tmp, text).map_err(io)?;
        fs::rename(&tmp, &path).map_err(io)?;
        Ok(())
    }

    /// The atom, read from disk when present, otherwise generated and saved.
    pub fn atom(&self, lambda: &Partition, k: usize) -> Result<Arc<TableauSet>> {
        let Some(path) = self.path(lambda, k) else { return generate_atom(lambda, k) };
        if atom_is_memoised(lambda, k) {
            let set = generate_atom(lambda, k)?;
            if !path.exists() {
                self.store(lambda, k, &set)?;
            }
            return Ok(set);
        }
        if !lambda.is_bounded(k) {
            return Err(Error::NotBounded(lambda.to_string(), k));
        }
        if let Some(set) = self.load(lambda, k)? {
            let set = Arc::new(set);
            insert_atom(lambda, k, set.clone());
            return Ok(set);
        }
        let set = generate_atom(lambda, k)?;
        self.store(lambda, k, &set)?;
        Ok(set)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let cache = AtomCache::at(dir.path());
        let lambda = Partition::from(&[3, 2, 2, 1, 1][..]);
        let cold = cache.atom(&lambda, 4).unwrap();
        assert!(dir.path().join("4").join("3,2,2,1,1.json").exists());
        let warm = cache.load(&lambda, 4).unwrap().unwrap();
        assert_eq!(*cold, warm);
        cache.store(&Partition::empty(), 3, &TableauSet::singleton(Tableau::empty())).unwrap();
        assert!(dir.path().join("3").join("empty.json").exists());
        assert_eq!(cache.load(&Partition::empty(), 3).unwrap().unwrap().len(), 1);
        assert!(AtomCache::disabled().load(&lambda, 4).unwrap().is_none());
    }
}
