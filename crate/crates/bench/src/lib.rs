//! Benchmark harness: run cover x secret x scheme grids, verify every round
//! trip, and write comparison tables as CSV.

pub mod compare;
pub mod config;
pub mod distortion;
pub mod experiment;
pub mod report;
pub mod synth;

use std::path::{Path, PathBuf};

pub use compare::{compare_schemes, CompareError, ComparisonLine, ComparisonTable};
pub use config::{ConfigError, ExperimentConfig};
pub use experiment::{run_experiment, run_experiment_with_threads, ResultRow, RowStatus};
pub use report::{emit_csv, emit_plot_data, CsvReport, ReportError};

pub const RESULTS_CSV: &str = "results.csv";
pub const COMPARISON_CSV: &str = "comparison.csv";
pub const PLOTDATA_CSV: &str = "plotdata.csv";
pub const TIMINGS_CSV: &str = "timings.csv";

/// Paths written by [`write_outputs`].
#[derive(Debug, Default)]
pub struct Outputs {
    pub results: PathBuf,
    pub timings: PathBuf,
    pub comparison: Option<PathBuf>,
    pub plot_data: Option<PathBuf>,
}

/// Writes results and timings, plus the comparison and plot data when the
/// rows allow a comparison. A comparison failure is returned alongside.
pub fn write_outputs(
    rows: &[ResultRow],
    output_dir: &Path,
) -> Result<(Outputs, Option<CompareError>), ReportError> {
    std::fs::create_dir_all(output_dir).map_err(|source| ReportError::Io {
        path: output_dir.display().to_string(),
        source,
    })?;
    let mut outputs = Outputs {
        results: output_dir.join(RESULTS_CSV),
        timings: output_dir.join(TIMINGS_CSV),
        ..Outputs::default()
    };
    emit_csv(rows, &outputs.results)?;
    emit_csv(&report::Timings(rows), &outputs.timings)?;
    match compare_schemes(rows) {
        Ok(table) => {
            let comparison = output_dir.join(COMPARISON_CSV);
            let plot = output_dir.join(PLOTDATA_CSV);
            emit_csv(&table, &comparison)?;
            emit_plot_data(&table, &plot)?;
            outputs.comparison = Some(comparison);
            outputs.plot_data = Some(plot);
            Ok((outputs, None))
        }
        Err(e) => Ok((outputs, Some(e))),
    }
}
