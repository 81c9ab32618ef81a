//! Runs every cover x secret x scheme cell of a config.

use std::collections::HashMap;
use std::path::{Path, PathBuf};
use std::sync::Arc;
use std::time::{Duration, Instant};

use log::{debug, warn};
use rayon::prelude::*;
use stegkit_core::{
    build_payload, capacity_bits, embed_payload, extract_stream, load_image, report, save_lossless,
    EmbeddingScheme, MetricReport, RasterImage, SchemeId,
};

use crate::config::ExperimentConfig;

#[derive(Debug, Clone, PartialEq)]
pub enum RowStatus {
    /// Embedded, extracted bit-exactly and measured.
    Ok,
    /// Secret does not fit the cover.
    Skipped(String),
    /// Load, extraction, metric or output failure.
    Failed(String),
}

impl RowStatus {
    pub fn label(&self) -> &'static str {
        match self {
            RowStatus::Ok => "ok",
            RowStatus::Skipped(_) => "skipped",
            RowStatus::Failed(_) => "failed",
        }
    }

    pub fn message(&self) -> &str {
        match self {
            RowStatus::Ok => "",
            RowStatus::Skipped(m) | RowStatus::Failed(m) => m,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ResultRow {
    pub cover_name: String,
    pub secret_name: String,
    pub scheme: SchemeId,
    pub status: RowStatus,
    pub metrics: Option<MetricReport>,
    pub payload_bits: u64,
    pub capacity_bits: u64,
    pub round_trip_ok: bool,
    pub embed_time: Duration,
    pub extract_time: Duration,
}

impl ResultRow {
    pub fn is_valid(&self) -> bool {
        self.status == RowStatus::Ok && self.round_trip_ok
    }

    /// Payload bits over capacity, or 0 when nothing is known about the cover.
    pub fn utilization(&self) -> f64 {
        if self.capacity_bits == 0 {
            0.0
        } else {
            self.payload_bits as f64 / self.capacity_bits as f64
        }
    }

    fn failed(cover: &str, secret: &str, scheme: SchemeId, message: String) -> ResultRow {
        ResultRow {
            cover_name: cover.to_string(),
            secret_name: secret.to_string(),
            scheme,
            status: RowStatus::Failed(message),
            metrics: None,
            payload_bits: 0,
            capacity_bits: 0,
            round_trip_ok: false,
            embed_time: Duration::ZERO,
            extract_time: Duration::ZERO,
        }
    }
}

pub fn display_name(path: &Path) -> String {
    path.file_name()
        .map(|n| n.to_string_lossy().into_owned())
        .unwrap_or_else(|| path.display().to_string())
}

fn stem(path: &Path) -> String {
    path.file_stem()
        .map(|n| n.to_string_lossy().into_owned())
        .unwrap_or_else(|| String::from("image"))
}

/// File name used for a persisted stego image.
pub fn stego_file_name(cover: &Path, secret: &Path, scheme: SchemeId) -> String {
    format!("{}__{}__{}.png", stem(cover), stem(secret), scheme)
}

type Loaded = Result<Arc<RasterImage>, String>;

fn load_all<'a>(paths: impl Iterator<Item = &'a PathBuf>) -> HashMap<PathBuf, Loaded> {
    let mut out = HashMap::new();
    for p in paths {
        out.entry(p.clone()).or_insert_with(|| {
            load_image(p)
                .map(Arc::new)
                .map_err(|e| format!("{}: {e}", p.display()))
        });
    }
    out
}

struct Cell<'a> {
    cover_path: &'a Path,
    secret_path: &'a Path,
    scheme: SchemeId,
}

fn run_cell(
    cell: &Cell<'_>,
    images: &HashMap<PathBuf, Loaded>,
    config: &ExperimentConfig,
) -> ResultRow {
    let cover_name = display_name(cell.cover_path);
    let secret_name = display_name(cell.secret_path);
    let (cover, secret) = match (&images[cell.cover_path], &images[cell.secret_path]) {
        (Ok(c), Ok(s)) => (c, s),
        (Err(e), _) | (_, Err(e)) => {
            return ResultRow::failed(&cover_name, &secret_name, cell.scheme, e.clone())
        }
    };
    let scheme = EmbeddingScheme::from(cell.scheme);
    let payload = build_payload(secret, &scheme);
    let mut row = ResultRow {
        payload_bits: payload.serialized_len() as u64 * 8,
        capacity_bits: capacity_bits(cover.width(), cover.height(), &scheme),
        ..ResultRow::failed(&cover_name, &secret_name, cell.scheme, String::new())
    };

    let started = Instant::now();
    let stego = match embed_payload(cover, &payload, &scheme) {
        Ok(s) => s,
        Err(e) => {
            row.status = RowStatus::Skipped(e.to_string());
            return row;
        }
    };
    row.embed_time = started.elapsed();

    let started = Instant::now();
    let extracted = extract_stream(&stego, &scheme);
    row.extract_time = started.elapsed();
    row.round_trip_ok = matches!(&extracted, Ok(img) if img == secret.as_ref());
    if !row.round_trip_ok {
        row.status = RowStatus::Failed(match extracted {
            Err(e) => format!("extraction failed: {e}"),
            Ok(_) => String::from("extracted secret differs from original"),
        });
        return row;
    }

    match report(cover, &stego) {
        Ok(m) => row.metrics = Some(m),
        Err(e) => {
            row.status = RowStatus::Failed(e.to_string());
            return row;
        }
    }

    if config.emit_stego {
        let dest = config.output_dir.join(stego_file_name(
            cell.cover_path,
            cell.secret_path,
            cell.scheme,
        ));
        if let Err(e) = save_lossless(&stego, &dest) {
            row.status = RowStatus::Failed(e.to_string());
            return row;
        }
    }
    row.status = RowStatus::Ok;
    debug!("{cover_name} x {secret_name} x {}: ok", cell.scheme);
    row
}

/// Runs the grid on the global rayon pool. Rows come back in config order:
/// covers outermost, then secrets, then schemes.
pub fn run_experiment(config: &ExperimentConfig) -> Vec<ResultRow> {
    if config.emit_stego {
        if let Err(e) = std::fs::create_dir_all(&config.output_dir) {
            warn!("cannot create {}: {e}", config.output_dir.display());
        }
    }
    let images = load_all(config.cover_paths.iter().chain(&config.secret_paths));
    let cells: Vec<Cell<'_>> = config
        .cover_paths
        .iter()
        .flat_map(|c| {
            config.secret_paths.iter().flat_map(move |s| {
                config.schemes.iter().map(move |&scheme| Cell {
                    cover_path: c,
                    secret_path: s,
                    scheme,
                })
            })
        })
        .collect();
    // indexed collect keeps config order
    cells
        .par_iter()
        .map(|cell| run_cell(cell, &images, config))
        .collect()
}

/// Same as [`run_experiment`] on a private pool with at most `threads` workers.
pub fn run_experiment_with_threads(config: &ExperimentConfig, threads: usize) -> Vec<ResultRow> {
    match rayon::ThreadPoolBuilder::new()
        .num_threads(threads.max(1))
        .build()
    {
        Ok(pool) => pool.install(|| run_experiment(config)),
        Err(e) => {
            warn!("falling back to the global pool: {e}");
            run_experiment(config)
        }
    }
}
