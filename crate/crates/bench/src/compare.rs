//! Side-by-side 3-3-2 vs 2-3-3 comparison, one line per (cover, secret).

use stegkit_core::{MetricReport, SchemeId};
use thiserror::Error;

use crate::experiment::ResultRow;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CompareError {
    #[error(
        "missing counterpart: {cover} x {secret} has a valid {present} row but no {missing} row"
    )]
    MissingCounterpart {
        cover: String,
        secret: String,
        present: SchemeId,
        missing: SchemeId,
    },
    #[error("no (cover, secret) pair has valid rows for both schemes")]
    NoPairs,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ComparisonLine {
    pub cover_name: String,
    pub secret_name: String,
    /// 3-3-2 metrics.
    pub baseline: MetricReport,
    /// 2-3-3 metrics.
    pub proposed: MetricReport,
}

impl ComparisonLine {
    /// `mse_332 - mse_233`.
    pub fn delta_mse(&self) -> f64 {
        self.baseline.mse - self.proposed.mse
    }

    pub fn delta_psnr(&self) -> f64 {
        self.baseline.psnr - self.proposed.psnr
    }

    pub fn delta_nae(&self) -> f64 {
        self.baseline.nae - self.proposed.nae
    }

    pub fn delta_ssim(&self) -> f64 {
        self.baseline.ssim - self.proposed.ssim
    }

    pub fn label(&self) -> String {
        format!("{}/{}", self.cover_name, self.secret_name)
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct ComparisonTable {
    pub lines: Vec<ComparisonLine>,
}

impl ComparisonTable {
    pub fn len(&self) -> usize {
        self.lines.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lines.is_empty()
    }
}

/// Pairs valid rows of both schemes per (cover, secret), in first-seen order.
/// Pairs where neither scheme produced a valid row are left out.
pub fn compare_schemes(rows: &[ResultRow]) -> Result<ComparisonTable, CompareError> {
    let mut order: Vec<(&str, &str)> = Vec::new();
    for row in rows {
        let key = (row.cover_name.as_str(), row.secret_name.as_str());
        if !order.contains(&key) {
            order.push(key);
        }
    }

    let find = |cover: &str, secret: &str, scheme: SchemeId| {
        rows.iter().find(|r| {
            r.cover_name == cover && r.secret_name == secret && r.scheme == scheme && r.is_valid()
        })
    };

    let mut lines = Vec::new();
    for (cover, secret) in order {
        let baseline = find(cover, secret, SchemeId::ThreeThreeTwo);
        let proposed = find(cover, secret, SchemeId::TwoThreeThree);
        let missing = |present, missing| CompareError::MissingCounterpart {
            cover: cover.to_string(),
            secret: secret.to_string(),
            present,
            missing,
        };
        match (baseline, proposed) {
            (Some(b), Some(p)) => lines.push(ComparisonLine {
                cover_name: cover.to_string(),
                secret_name: secret.to_string(),
                baseline: b.metrics.expect("valid rows carry metrics"),
                proposed: p.metrics.expect("valid rows carry metrics"),
            }),
            (Some(_), None) => {
                return Err(missing(SchemeId::ThreeThreeTwo, SchemeId::TwoThreeThree))
            }
            (None, Some(_)) => {
                return Err(missing(SchemeId::TwoThreeThree, SchemeId::ThreeThreeTwo))
            }
            (None, None) => {}
        }
    }
    if lines.is_empty() {
        return Err(CompareError::NoPairs);
    }
    Ok(ComparisonTable { lines })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::experiment::RowStatus;
    use std::time::Duration;

    fn metrics(mse: f64) -> MetricReport {
        MetricReport {
            mse,
            mse_channels: [mse; 3],
            psnr: stegkit_core::psnr(mse),
            nae: mse / 100.0,
            ssim: 0.99,
        }
    }

    fn row(cover: &str, secret: &str, scheme: SchemeId, mse: Option<f64>) -> ResultRow {
        ResultRow {
            cover_name: cover.into(),
            secret_name: secret.into(),
            scheme,
            status: if mse.is_some() {
                RowStatus::Ok
            } else {
                RowStatus::Failed("x".into())
            },
            metrics: mse.map(metrics),
            payload_bits: 8,
            capacity_bits: 16,
            round_trip_ok: mse.is_some(),
            embed_time: Duration::ZERO,
            extract_time: Duration::ZERO,
        }
    }

    #[test]
    fn pairs_and_deltas() {
        let rows = vec![
            row("c", "s", SchemeId::TwoThreeThree, Some(2.0)),
            row("c", "s", SchemeId::ThreeThreeTwo, Some(5.0)),
        ];
        let table = compare_schemes(&rows).unwrap();
        assert_eq!(table.len(), 1);
        assert_eq!(table.lines[0].delta_mse(), 3.0);
        assert!(table.lines[0].delta_psnr() < 0.0);
        assert_eq!(table.lines[0].label(), "c/s");
    }

    #[test]
    fn single_scheme_is_missing_counterpart() {
        let rows = vec![row("c", "s", SchemeId::TwoThreeThree, Some(2.0))];
        assert!(matches!(
            compare_schemes(&rows),
            Err(CompareError::MissingCounterpart {
                missing: SchemeId::ThreeThreeTwo,
                ..
            })
        ));
    }

    #[test]
    fn wholly_failed_pairs_are_skipped() {
        let rows = vec![
            row("bad", "s", SchemeId::TwoThreeThree, None),
            row("bad", "s", SchemeId::ThreeThreeTwo, None),
            row("c", "s", SchemeId::TwoThreeThree, Some(1.0)),
            row("c", "s", SchemeId::ThreeThreeTwo, Some(1.5)),
        ];
        let table = compare_schemes(&rows).unwrap();
        assert_eq!(table.len(), 1);
        assert_eq!(table.lines[0].cover_name, "c");
        assert_eq!(compare_schemes(&rows[..2]), Err(CompareError::NoPairs));
    }
}
