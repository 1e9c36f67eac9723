//! Plumbing behind the `harmconv` binary: map specifications, check runs,
//! the scenario registry, and SVG/CSV rendering.

pub mod checks;
pub mod mapspec;
pub mod render;
pub mod result;
pub mod scenarios;

pub use checks::{run_checks, CheckRequest};
pub use mapspec::MapSpec;
pub use result::{Relation, Role, ScenarioResult, Verdict};
pub use scenarios::{registry, run_scenario, Overrides, ScenarioInfo};

use std::io::Write;
use std::path::Path;

#[derive(Debug, thiserror::Error)]
pub enum HarnessError {
    #[error("schema error: {0}")]
    Schema(String),
    #[error("cannot construct {context}: {source}")]
    Construct {
        context: String,
        #[source]
        source: crate::Error,
    },
    #[error("unknown scenario `{0}` (try `reproduce --list`)")]
    UnknownScenario(String),
    #[error("bad check `{0}`")]
    BadCheck(String),
    #[error("numerical failure: {0}")]
    Numerical(#[from] crate::Error),
    #[error("i/o error on {path}: {message}")]
    Io { path: String, message: String },
}

impl HarnessError {
    /// Process exit status for this error: input problems map to 2.
    pub fn exit_code(&self) -> i32 {
        2
    }

    pub(crate) fn io(path: &Path, e: std::io::Error) -> Self {
        HarnessError::Io {
            path: path.display().to_string(),
            message: e.to_string(),
        }
    }
}

/// Writes `contents` to a temporary sibling and renames it over `path`.
pub fn write_atomic(path: &Path, contents: &[u8]) -> Result<(), HarnessError> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d.to_path_buf(),
        _ => std::path::PathBuf::from("."),
    };
    let name = path
        .file_name()
        .ok_or_else(|| HarnessError::Io {
            path: path.display().to_string(),
            message: "not a file path".into(),
        })?
        .to_string_lossy()
        .into_owned();
    let tmp = dir.join(format!(".{name}.tmp{}", std::process::id()));
    let mut file = std::fs::File::create(&tmp).map_err(|e| HarnessError::io(&tmp, e))?;
    file.write_all(contents)
        .and_then(|_| file.sync_all())
        .map_err(|e| HarnessError::io(&tmp, e))?;
    drop(file);
    std::fs::rename(&tmp, path).map_err(|e| {
        let _ = std::fs::remove_file(&tmp);
        HarnessError::io(path, e)
    })
}
