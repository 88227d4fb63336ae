//! Configuration, datasets, reports, plots, and the command-line driver
//! around `tpdc-core`.

pub mod check;
pub mod cli;
pub mod config;
pub mod dataset;
pub mod error;
pub mod report;
pub mod svg;

pub use cli::cli_main;
pub use error::{PipelineError, Result};

use std::path::{Path, PathBuf};

/// Whole-file atomic write: write a sibling temp file, then rename over
/// the destination.
pub(crate) fn atomic_write(path: &Path, bytes: &[u8]) -> Result<()> {
    if let Some(parent) = path.parent() {
        if !parent.as_os_str().is_empty() {
            std::fs::create_dir_all(parent).map_err(PipelineError::io(parent))?;
        }
    }
    let mut tmp_name = path.as_os_str().to_owned();
    tmp_name.push(".tmp");
    let tmp = PathBuf::from(tmp_name);
    std::fs::write(&tmp, bytes).map_err(PipelineError::io(&tmp))?;
    std::fs::rename(&tmp, path).map_err(PipelineError::io(path))
}
