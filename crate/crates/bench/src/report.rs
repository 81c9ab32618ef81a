//! CSV output.
//!
//! Floats are printed with four decimals using Rust's `{:.4}` formatting,
//! which rounds the exact binary value and breaks exact ties to even.
//! Infinite PSNR prints as `inf`. Column orders are fixed by the `HEADER`
//! constants below.
//!
//! `results.csv`, `comparison.csv` and `plotdata.csv` depend only on the
//! inputs, so re-running a config reproduces them byte for byte. Wall-clock
//! timings go to a separate `timings.csv`.

use std::path::Path;

use thiserror::Error;

use crate::compare::ComparisonTable;
use crate::experiment::ResultRow;

#[derive(Debug, Error)]
pub enum ReportError {
    #[error("i/o failure writing {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("refusing to write {0}: table is empty")]
    EmptyTable(String),
}

/// Four-decimal float, `inf`/`-inf` for infinities.
pub fn fmt4(value: f64) -> String {
    if value.is_infinite() {
        if value > 0.0 {
            "inf".into()
        } else {
            "-inf".into()
        }
    } else {
        format!("{value:.4}")
    }
}

/// Anything that can be laid out as a CSV table.
pub trait CsvReport {
    fn header(&self) -> Vec<&'static str>;
    fn records(&self) -> Vec<Vec<String>>;
}

pub const RESULTS_HEADER: [&str; 16] = [
    "cover",
    "secret",
    "scheme",
    "status",
    "mse",
    "mse_r",
    "mse_g",
    "mse_b",
    "psnr",
    "nae",
    "ssim",
    "payload_bits",
    "capacity_bits",
    "utilization",
    "round_trip_ok",
    "error",
];

impl CsvReport for [ResultRow] {
    fn header(&self) -> Vec<&'static str> {
        RESULTS_HEADER.to_vec()
    }

    fn records(&self) -> Vec<Vec<String>> {
        self.iter()
            .map(|r| {
                let mut rec = vec![
                    r.cover_name.clone(),
                    r.secret_name.clone(),
                    r.scheme.to_string(),
                    r.status.label().to_string(),
                ];
                match &r.metrics {
                    Some(m) => rec.extend([
                        fmt4(m.mse),
                        fmt4(m.mse_channels[0]),
                        fmt4(m.mse_channels[1]),
                        fmt4(m.mse_channels[2]),
                        fmt4(m.psnr),
                        fmt4(m.nae),
                        fmt4(m.ssim),
                    ]),
                    None => rec.extend(std::iter::repeat_n(String::new(), 7)),
                }
                rec.extend([
                    r.payload_bits.to_string(),
                    r.capacity_bits.to_string(),
                    fmt4(r.utilization()),
                    r.round_trip_ok.to_string(),
                    r.status.message().to_string(),
                ]);
                rec
            })
            .collect()
    }
}

impl CsvReport for Vec<ResultRow> {
    fn header(&self) -> Vec<&'static str> {
        self.as_slice().header()
    }

    fn records(&self) -> Vec<Vec<String>> {
        self.as_slice().records()
    }
}

pub const COMPARISON_HEADER: [&str; 14] = [
    "cover",
    "secret",
    "mse_332",
    "psnr_332",
    "nae_332",
    "ssim_332",
    "mse_233",
    "psnr_233",
    "nae_233",
    "ssim_233",
    "delta_mse",
    "delta_psnr",
    "delta_nae",
    "delta_ssim",
];

impl CsvReport for ComparisonTable {
    fn header(&self) -> Vec<&'static str> {
        COMPARISON_HEADER.to_vec()
    }

    fn records(&self) -> Vec<Vec<String>> {
        self.lines
            .iter()
            .map(|l| {
                vec![
                    l.cover_name.clone(),
                    l.secret_name.clone(),
                    fmt4(l.baseline.mse),
                    fmt4(l.baseline.psnr),
                    fmt4(l.baseline.nae),
                    fmt4(l.baseline.ssim),
                    fmt4(l.proposed.mse),
                    fmt4(l.proposed.psnr),
                    fmt4(l.proposed.nae),
                    fmt4(l.proposed.ssim),
                    fmt4(l.delta_mse()),
                    fmt4(l.delta_psnr()),
                    fmt4(l.delta_nae()),
                    fmt4(l.delta_ssim()),
                ]
            })
            .collect()
    }
}

/// Wall-clock timings, kept out of `results.csv` so that one stays
/// reproducible.
pub struct Timings<'a>(pub &'a [ResultRow]);

impl CsvReport for Timings<'_> {
    fn header(&self) -> Vec<&'static str> {
        vec!["cover", "secret", "scheme", "embed_ms", "extract_ms"]
    }

    fn records(&self) -> Vec<Vec<String>> {
        self.0
            .iter()
            .map(|r| {
                vec![
                    r.cover_name.clone(),
                    r.secret_name.clone(),
                    r.scheme.to_string(),
                    fmt4(r.embed_time.as_secs_f64() * 1e3),
                    fmt4(r.extract_time.as_secs_f64() * 1e3),
                ]
            })
            .collect()
    }
}

/// Grouped-bar data: one line per (pair, metric, scheme) for MSE and PSNR.
pub struct PlotData<'a>(pub &'a ComparisonTable);

impl CsvReport for PlotData<'_> {
    fn header(&self) -> Vec<&'static str> {
        vec!["pair", "metric", "scheme", "value"]
    }

    fn records(&self) -> Vec<Vec<String>> {
        let mut out = Vec::with_capacity(self.0.len() * 4);
        for line in &self.0.lines {
            let label = line.label();
            for (metric, base, prop) in [
                ("MSE", line.baseline.mse, line.proposed.mse),
                ("PSNR", line.baseline.psnr, line.proposed.psnr),
            ] {
                out.push(vec![label.clone(), metric.into(), "332".into(), fmt4(base)]);
                out.push(vec![label.clone(), metric.into(), "233".into(), fmt4(prop)]);
            }
        }
        out
    }
}

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> ReportError + '_ {
    move |source| ReportError::Io {
        path: path.display().to_string(),
        source,
    }
}

/// Renders a table to CSV text.
pub fn to_csv_string<T: CsvReport + ?Sized>(table: &T) -> String {
    let mut writer = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new());
    writer
        .write_record(table.header())
        .expect("writing to memory");
    for rec in table.records() {
        writer.write_record(&rec).expect("writing to memory");
    }
    String::from_utf8(writer.into_inner().expect("flush to memory")).expect("csv is utf-8")
}

/// Writes header plus one line per record.
pub fn emit_csv<T: CsvReport + ?Sized>(table: &T, destination: &Path) -> Result<(), ReportError> {
    std::fs::write(destination, to_csv_string(table)).map_err(io_err(destination))
}

/// Writes the grouped MSE/PSNR bar data. Empty tables are an error.
pub fn emit_plot_data(table: &ComparisonTable, destination: &Path) -> Result<(), ReportError> {
    if table.is_empty() {
        return Err(ReportError::EmptyTable(destination.display().to_string()));
    }
    emit_csv(&PlotData(table), destination)
}
