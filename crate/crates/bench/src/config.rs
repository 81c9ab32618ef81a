//! Experiment grid configuration.
//!
//! The file format is one `key = value` pair per line. `#` starts a comment,
//! blank lines are ignored, and list keys may repeat:
//!
//! ```text
//! # covers x secrets x schemes
//! cover      = pic400.jpg
//! cover      = pic580.png
//! secret     = rings128.png
//! scheme     = 233, 332
//! output_dir = out
//! emit_stego = true
//! ```
//!
//! | key          | kind              | notes                                  |
//! |--------------|-------------------|----------------------------------------|
//! | `cover`      | path, repeatable  | relative to the config file's folder   |
//! | `secret`     | path, repeatable  | relative to the config file's folder   |
//! | `scheme`     | `233` / `332`     | repeatable, or comma separated         |
//! | `output_dir` | path, required    | created if missing                     |
//! | `emit_stego` | `true` / `false`  | default `false`                        |

use std::path::{Path, PathBuf};

use stegkit_core::SchemeId;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("cannot read config {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("config line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("config lists no {0}")]
    Empty(&'static str),
    #[error("config is missing required key {0:?}")]
    Missing(&'static str),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExperimentConfig {
    pub cover_paths: Vec<PathBuf>,
    pub secret_paths: Vec<PathBuf>,
    pub schemes: Vec<SchemeId>,
    pub output_dir: PathBuf,
    pub emit_stego: bool,
}

impl ExperimentConfig {
    /// Parses config text, resolving relative paths against `base_dir`.
    pub fn parse(text: &str, base_dir: &Path) -> Result<ExperimentConfig, ConfigError> {
        let mut covers = Vec::new();
        let mut secrets = Vec::new();
        let mut schemes = Vec::new();
        let mut output_dir = None;
        let mut emit_stego = false;

        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let syntax = |message: String| ConfigError::Syntax {
                line: line_no,
                message,
            };
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| syntax(format!("expected `key = value`, got {line:?}")))?;
            let (key, value) = (key.trim(), value.trim());
            if value.is_empty() {
                return Err(syntax(format!("empty value for {key:?}")));
            }
            match key {
                "cover" => covers.push(base_dir.join(value)),
                "secret" => secrets.push(base_dir.join(value)),
                "scheme" => {
                    for item in value.split(',') {
                        schemes.push(item.parse().map_err(|e| syntax(format!("{e}")))?);
                    }
                }
                "output_dir" => output_dir = Some(base_dir.join(value)),
                "emit_stego" => {
                    emit_stego = match value {
                        "true" | "yes" | "1" => true,
                        "false" | "no" | "0" => false,
                        other => return Err(syntax(format!("bad boolean {other:?}"))),
                    }
                }
                other => return Err(syntax(format!("unknown key {other:?}"))),
            }
        }

        if covers.is_empty() {
            return Err(ConfigError::Empty("cover"));
        }
        if secrets.is_empty() {
            return Err(ConfigError::Empty("secret"));
        }
        if schemes.is_empty() {
            return Err(ConfigError::Empty("scheme"));
        }
        Ok(ExperimentConfig {
            cover_paths: covers,
            secret_paths: secrets,
            schemes,
            output_dir: output_dir.ok_or(ConfigError::Missing("output_dir"))?,
            emit_stego,
        })
    }

    pub fn load(path: impl AsRef<Path>) -> Result<ExperimentConfig, ConfigError> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Io {
            path: path.display().to_string(),
            source,
        })?;
        let base = path.parent().unwrap_or(Path::new("."));
        ExperimentConfig::parse(&text, base)
    }

    /// Number of grid cells.
    pub fn cells(&self) -> usize {
        self.cover_paths.len() * self.secret_paths.len() * self.schemes.len()
    }
}
