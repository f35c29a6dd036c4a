use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use super::{HarnessError, RunRecord};

pub const STATS_HEADER: [&str; 10] = [
    "task_id", "model_id", "size_index", "score_name", "n", "mean", "median", "stddev", "min", "max",
];
pub const POINTS_HEADER: [&str; 7] = ["task_id", "model_id", "size_index", "repetition", "seed", "score_name", "value"];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StatRow {
    pub task_id: String,
    pub model_id: String,
    pub size_index: usize,
    pub score_name: String,
    pub n: usize,
    pub mean: f64,
    pub median: f64,
    /// Sample standard deviation; 0 for a single value.
    pub stddev: f64,
    pub min: f64,
    pub max: f64,
}

/// Groups by (task, model, size, score). Booleans count as 1/0, so their
/// mean is the rate of `true`.
pub fn aggregate_stats(records: &[RunRecord]) -> Vec<StatRow> {
    let mut groups: BTreeMap<(&str, &str, usize, &str), Vec<f64>> = BTreeMap::new();
    for r in records {
        for (name, value) in &r.scores {
            groups
                .entry((&r.task_id, &r.model_id, r.size_index, name))
                .or_default()
                .push(value.as_f64());
        }
    }
    groups
        .into_iter()
        .map(|((task_id, model_id, size_index, score_name), mut values)| {
            let n = values.len();
            let mean = values.iter().sum::<f64>() / n as f64;
            values.sort_by(f64::total_cmp);
            let median = if n % 2 == 1 {
                values[n / 2]
            } else {
                (values[n / 2 - 1] + values[n / 2]) / 2.0
            };
            let stddev = if n > 1 {
                (values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1) as f64).sqrt()
            } else {
                0.0
            };
            StatRow {
                task_id: task_id.to_string(),
                model_id: model_id.to_string(),
                size_index,
                score_name: score_name.to_string(),
                n,
                mean,
                median,
                stddev,
                min: values[0],
                max: values[n - 1],
            }
        })
        .collect()
}

fn csv_err(path: &Path, e: csv::Error) -> HarnessError {
    HarnessError::io(path, e.into())
}

/// Writes `stats.csv` and `points.csv` into `out_dir`.
pub fn emit_plot_data(stats: &[StatRow], records: &[RunRecord], out_dir: &Path) -> Result<(PathBuf, PathBuf), HarnessError> {
    fs::create_dir_all(out_dir).map_err(|e| HarnessError::io(out_dir, e))?;
    let stats_path = out_dir.join("stats.csv");
    let mut w = csv::Writer::from_path(&stats_path).map_err(|e| csv_err(&stats_path, e))?;
    w.write_record(STATS_HEADER).map_err(|e| csv_err(&stats_path, e))?;
    for s in stats {
        w.write_record([
            s.task_id.clone(),
            s.model_id.clone(),
            s.size_index.to_string(),
            s.score_name.clone(),
            s.n.to_string(),
            s.mean.to_string(),
            s.median.to_string(),
            s.stddev.to_string(),
            s.min.to_string(),
            s.max.to_string(),
        ])
        .map_err(|e| csv_err(&stats_path, e))?;
    }
    w.flush().map_err(|e| HarnessError::io(&stats_path, e))?;

    let points_path = out_dir.join("points.csv");
    let mut w = csv::Writer::from_path(&points_path).map_err(|e| csv_err(&points_path, e))?;
    w.write_record(POINTS_HEADER).map_err(|e| csv_err(&points_path, e))?;
    for r in records {
        for (name, value) in &r.scores {
            w.write_record([
                r.task_id.clone(),
                r.model_id.clone(),
                r.size_index.to_string(),
                r.repetition.to_string(),
                r.seed.to_string(),
                name.clone(),
                value.as_f64().to_string(),
            ])
            .map_err(|e| csv_err(&points_path, e))?;
        }
    }
    w.flush().map_err(|e| HarnessError::io(&points_path, e))?;
    Ok((stats_path, points_path))
}
