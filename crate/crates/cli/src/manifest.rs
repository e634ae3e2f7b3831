//! Run manifests and output directories.

use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use anyhow::Context;
use serde::Serialize;
use serde_json::Value;

use crate::failure::{Code, Failure, Outcome};

pub const MANIFEST: &str = "manifest.json";

#[derive(Debug, Serialize)]
pub struct RunManifest {
    pub command: String,
    pub input: Option<PathBuf>,
    pub config: Value,
    pub seed: Option<u64>,
    pub tool_version: &'static str,
    pub wall_time_s: f64,
}

/// Output directory of one run; writes the manifest last.
pub struct OutputDir {
    dir: PathBuf,
    started: Instant,
}

impl OutputDir {
    pub fn create(dir: &Path) -> Outcome<Self> {
        fs::create_dir_all(dir)
            .with_context(|| format!("creating {}", dir.display()))
            .map_err(|e| Failure::new(Code::Input, e))?;
        Ok(Self {
            dir: dir.to_path_buf(),
            started: Instant::now(),
        })
    }

    pub fn write(&self, name: &str, contents: &str) -> Outcome {
        let path = self.dir.join(name);
        fs::write(&path, contents)
            .with_context(|| format!("writing {}", path.display()))
            .map_err(|e| Failure::new(Code::Input, e))
    }

    pub fn finish(
        self,
        command: &str,
        input: Option<&Path>,
        config: Value,
        seed: Option<u64>,
    ) -> Outcome {
        let manifest = RunManifest {
            command: command.to_string(),
            input: input.map(Path::to_path_buf),
            config,
            seed,
            tool_version: env!("CARGO_PKG_VERSION"),
            wall_time_s: self.started.elapsed().as_secs_f64(),
        };
        let text = serde_json::to_string_pretty(&manifest).expect("manifest serializes");
        self.write(MANIFEST, &text)
    }
}
