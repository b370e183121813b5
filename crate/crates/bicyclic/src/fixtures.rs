//! Committed brute-force hull oracles.
//!
//! Each fixture is a JSON file `{ "n": int, "k": int, "faces": [[vertex
//! indices]] }` produced by the high-precision supporting-hyperplane
//! enumerator in `tools/gen_fixtures.py`. The face lists are complete
//! lattices (every proper nonempty face, vertices included) except for the
//! triple-list fixture, which carries only the arc-rule triples.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Environment variable consulted when no fixtures directory is given.
pub const FIXTURES_ENV: &str = "BICYCLIC_FIXTURES";

#[derive(Debug, Error)]
pub enum FixtureError {
    #[error("fixture io: {0}")]
    Io(#[from] std::io::Error),
    #[error("fixture parse: {0}")]
    Parse(#[from] serde_json::Error),
    #[error("no fixtures directory configured and {0} unset")]
    NoDirectory(&'static str),
}

#[derive(Clone, Debug, Deserialize, Serialize)]
pub struct FixtureInstance {
    pub n: usize,
    pub k: usize,
    pub faces: Vec<Vec<usize>>,
}

impl FixtureInstance {
    pub fn load(path: &Path) -> Result<Self, FixtureError> {
        let text = std::fs::read_to_string(path)?;
        Ok(serde_json::from_str(&text)?)
    }

    /// Faces with between `min_size` and `max_size` vertices, sorted.
    pub fn faces_sized(&self, min_size: usize, max_size: usize) -> Vec<Vec<usize>> {
        let mut out: Vec<Vec<usize>> = self
            .faces
            .iter()
            .filter(|f| f.len() >= min_size && f.len() <= max_size)
            .cloned()
            .collect();
        out.sort();
        out
    }

    pub fn pairs(&self) -> Vec<Vec<usize>> {
        self.faces_sized(2, 2)
    }

    pub fn triples(&self) -> Vec<Vec<usize>> {
        self.faces_sized(3, 3)
    }
}

/// Resolve the fixtures directory: explicit argument, then the environment
/// variable, then `./fixtures`.
pub fn fixtures_dir(explicit: Option<&Path>) -> PathBuf {
    if let Some(dir) = explicit {
        return dir.to_path_buf();
    }
    if let Ok(dir) = std::env::var(FIXTURES_ENV) {
        return PathBuf::from(dir);
    }
    PathBuf::from("fixtures")
}

/// Conventional file name for the hull fixture of an instance.
pub fn instance_file(k: usize, n: usize) -> String {
    format!("b{}_n{}.json", 2 * k, n)
}

pub fn load_instance(
    dir: Option<&Path>,
    k: usize,
    n: usize,
) -> Result<FixtureInstance, FixtureError> {
    let path = fixtures_dir(dir).join(instance_file(k, n));
    FixtureInstance::load(&path)
}
