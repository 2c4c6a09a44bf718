//! Output directory handling and the run manifest.

use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::config::RunConfig;
use crate::error::{CliError, CliResult};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FileDigest {
    pub path: String,
    pub bytes: u64,
    pub sha256: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Manifest {
    pub tool: String,
    pub version: String,
    pub core_version: String,
    pub generator: String,
    pub config: RunConfig,
    pub inputs: Vec<FileDigest>,
    pub outputs: Vec<FileDigest>,
}

pub const MANIFEST_NAME: &str = "manifest.json";

fn digest(path: String, bytes: &[u8]) -> FileDigest {
    FileDigest {
        path,
        bytes: bytes.len() as u64,
        sha256: hex::encode(Sha256::digest(bytes)),
    }
}

/// Collects files for one run and writes them under the output directory.
pub struct Outputs {
    dir: PathBuf,
    inputs: Vec<FileDigest>,
    written: Vec<FileDigest>,
}

impl Outputs {
    pub fn new(dir: &Path) -> CliResult<Self> {
        fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
        Ok(Outputs {
            dir: dir.to_path_buf(),
            inputs: Vec::new(),
            written: Vec::new(),
        })
    }

    /// Reads an input file and records its hash.
    pub fn read_input(&mut self, path: &Path) -> CliResult<Vec<u8>> {
        if !path.exists() {
            return Err(CliError::missing(path));
        }
        let bytes = fs::read(path).map_err(|e| CliError::io(path, e))?;
        self.inputs.push(digest(path.display().to_string(), &bytes));
        Ok(bytes)
    }

    /// Writes `contents` to `name`, relative to the output directory.
    pub fn write(&mut self, name: &str, contents: &str) -> CliResult<()> {
        let path = self.dir.join(name);
        if let Some(parent) = path.parent() {
            fs::create_dir_all(parent).map_err(|e| CliError::io(parent, e))?;
        }
        fs::write(&path, contents).map_err(|e| CliError::io(&path, e))?;
        self.written
            .push(digest(name.to_string(), contents.as_bytes()));
        Ok(())
    }

    pub fn files(&self) -> impl Iterator<Item = &str> {
        self.written.iter().map(|f| f.path.as_str())
    }

    /// Writes `manifest.json` last, listing every other output.
    pub fn finish(mut self, config: &RunConfig) -> CliResult<PathBuf> {
        self.written.sort_by(|a, b| a.path.cmp(&b.path));
        let manifest = Manifest {
            tool: "ramstat".into(),
            version: env!("CARGO_PKG_VERSION").into(),
            core_version: ramstat_core::VERSION.into(),
            generator: ramstat_core::ingest::RANDOM_GENERATOR.into(),
            config: config.clone(),
            inputs: self.inputs,
            outputs: self.written,
        };
        let path = self.dir.join(MANIFEST_NAME);
        fs::write(&path, ramstat_core::report::to_json(&manifest))
            .map_err(|e| CliError::io(&path, e))?;
        Ok(path)
    }
}

pub fn read_manifest(dir: &Path) -> CliResult<Manifest> {
    let path = dir.join(MANIFEST_NAME);
    let text = fs::read_to_string(&path).map_err(|e| CliError::io(&path, e))?;
    serde_json::from_str(&text).map_err(|e| CliError::usage(format!("{}: {e}", path.display())))
}
