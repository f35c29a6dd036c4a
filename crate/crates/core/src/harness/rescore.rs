use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use super::{read_records, HarnessError, RecordError, RunRecord};
use crate::tasks::TaskRegistry;

#[derive(Debug, Clone, Default)]
pub struct RescoreReport {
    pub records: Vec<RunRecord>,
    pub errors: Vec<RecordError>,
}

/// Re-evaluates stored responses with the current task versions. Prompts
/// and responses are untouched; error records pass through unchanged.
pub fn rescore(records: &[RunRecord], registry: &TaskRegistry) -> (Vec<RunRecord>, Vec<(usize, String)>) {
    let mut out = Vec::with_capacity(records.len());
    let mut problems = Vec::new();
    for (i, record) in records.iter().enumerate() {
        let mut r = record.clone();
        if !r.is_error() {
            match registry.get(&r.task_id) {
                None => problems.push((i, format!("unknown task_id `{}`", r.task_id))),
                Some(task) => match task.prepare(&r.size_params, r.seed) {
                    Ok(instance) => {
                        r.scores = task.score(&r.response, &instance);
                        r.task_version = task.version().to_string();
                    }
                    Err(e) => problems.push((i, e.to_string())),
                },
            }
        }
        out.push(r);
    }
    (out, problems)
}

/// Rescores a results file into `out`. Malformed input lines are reported
/// and skipped; every other record is written.
pub fn rescore_file(input: &Path, out: &Path, registry: &TaskRegistry) -> Result<RescoreReport, HarnessError> {
    let (records, mut errors) = read_records(input)?;
    let (rescored, problems) = rescore(&records, registry);
    errors.extend(problems.into_iter().map(|(i, message)| RecordError {
        line: 0,
        message: format!("record {}: {message}", i + 1),
    }));
    if let Some(dir) = out.parent().filter(|d| !d.as_os_str().is_empty()) {
        std::fs::create_dir_all(dir).map_err(|e| HarnessError::io(dir, e))?;
    }
    let file = File::create(out).map_err(|e| HarnessError::io(out, e))?;
    let mut w = BufWriter::new(file);
    for r in &rescored {
        writeln!(w, "{}", serde_json::to_string(r).expect("records serialize")).map_err(|e| HarnessError::io(out, e))?;
    }
    w.flush().map_err(|e| HarnessError::io(out, e))?;
    Ok(RescoreReport {
        records: rescored,
        errors,
    })
}
