//! Hidden-state cache keyed by (task_id, model tag), one JSONL file per model.

use std::collections::HashMap;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use when2tool_core::agent::{build_prompt, run_parallel, Mode, PromptMode};
use when2tool_core::backend::{Backend, BackendRequest, HiddenFeatures};
use when2tool_core::taskgen::Task;

use crate::CliError;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FeatureRecord {
    pub model: String,
    pub features: HiddenFeatures,
}

#[derive(Debug)]
pub struct FeatureCache {
    path: PathBuf,
    model: String,
    entries: HashMap<String, HiddenFeatures>,
}

fn file_name(model: &str) -> String {
    let safe: String = model
        .chars()
        .map(|c| {
            if c.is_ascii_alphanumeric() || "-_.".contains(c) {
                c
            } else {
                '_'
            }
        })
        .collect();
    format!("{safe}.features.jsonl")
}

impl FeatureCache {
    pub fn open(dir: &Path, model: &str) -> Result<Self, CliError> {
        std::fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
        let path = dir.join(file_name(model));
        let mut entries = HashMap::new();
        if path.exists() {
            for rec in crate::read_records::<FeatureRecord>(&path)? {
                if rec.model == model {
                    if let Some(id) = rec.features.task_id.clone() {
                        entries.insert(id, rec.features);
                    }
                }
            }
        }
        Ok(FeatureCache {
            path,
            model: model.to_string(),
            entries,
        })
    }

    pub fn path(&self) -> &Path {
        &self.path
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, task_id: &str) -> Option<&HiddenFeatures> {
        self.entries.get(task_id)
    }

    /// Fetches features for every task not yet cached and appends them.
    /// Returns how many backend requests were made.
    pub fn fill(
        &mut self,
        tasks: &[Task],
        backend: &dyn Backend,
        parallel: usize,
    ) -> Result<usize, CliError> {
        let missing: Vec<&Task> = tasks
            .iter()
            .filter(|t| !self.entries.contains_key(&t.task_id))
            .collect();
        if missing.is_empty() {
            return Ok(0);
        }
        let fetched = run_parallel(&missing, parallel, |t| {
            let mut req = BackendRequest::new(build_prompt(t, PromptMode::new(Mode::Default)));
            req.want_hidden_states = true;
            req.max_tokens = 1;
            req.task_id = Some(t.task_id.clone());
            backend
                .generate(&req)
                .map_err(|e| (t.task_id.clone(), e))
                .and_then(|resp| {
                    let mut h = resp.hidden.ok_or_else(|| {
                        (
                            t.task_id.clone(),
                            when2tool_core::backend::BackendError::Protocol(
                                "no hidden states".into(),
                            ),
                        )
                    })?;
                    h.validate().map_err(|e| (t.task_id.clone(), e))?;
                    h.task_id = Some(t.task_id.clone());
                    Ok(h)
                })
        });
        let file = std::fs::OpenOptions::new()
            .create(true)
            .append(true)
            .open(&self.path)
            .map_err(|e| CliError::io(&self.path, e))?;
        let mut w = std::io::BufWriter::new(file);
        let mut count = 0;
        let mut first_error = None;
        for r in fetched {
            match r {
                Ok(h) => {
                    let rec = FeatureRecord {
                        model: self.model.clone(),
                        features: h.clone(),
                    };
                    let line = serde_json::to_string(&rec).expect("records serialize");
                    writeln!(w, "{line}").map_err(|e| CliError::io(&self.path, e))?;
                    self.entries
                        .insert(h.task_id.clone().expect("set above"), h);
                    count += 1;
                }
                Err((id, e)) => {
                    tracing::warn!(task = %id, error = %e, "feature extraction failed");
                    first_error.get_or_insert(CliError::Backend(format!("{id}: {e}")));
                }
            }
        }
        w.flush().map_err(|e| CliError::io(&self.path, e))?;
        match first_error {
            Some(e) => Err(e),
            None => Ok(count),
        }
    }
}
