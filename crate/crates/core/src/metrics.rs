//! Accuracy and tool-call aggregation, cost per saved call and threshold
//! sweep curves.

use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::agent::Trajectory;
use crate::taskgen::{Difficulty, EnvName};

#[derive(Debug, thiserror::Error)]
pub enum MetricsError {
    #[error("trajectories mix benchmark versions: {0:?}")]
    MixedVersions(Vec<String>),
    #[error("runs cover different task sets ({only_run} only in run, {only_reference} only in reference)")]
    TaskSetMismatch {
        only_run: usize,
        only_reference: usize,
    },
    #[error("sweep needs at least two thresholds, got {0}")]
    TooFewThresholds(usize),
    #[error("threshold {0} appears more than once")]
    DuplicateThreshold(f64),
    #[error("{0}")]
    Io(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GroupBy {
    Overall,
    Difficulty,
    Env,
    EnvDifficulty,
}

impl GroupBy {
    fn key(self, t: &Trajectory) -> (Option<EnvName>, Option<Difficulty>) {
        match self {
            GroupBy::Overall => (None, None),
            GroupBy::Difficulty => (None, Some(t.difficulty)),
            GroupBy::Env => (Some(t.env_name), None),
            GroupBy::EnvDifficulty => (Some(t.env_name), Some(t.difficulty)),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MetricsRow {
    pub method: String,
    pub env: Option<EnvName>,
    pub difficulty: Option<Difficulty>,
    pub n: usize,
    /// Trajectories that finished without a backend error.
    pub judged: usize,
    pub correct: usize,
    pub errors: usize,
    /// Percent of judged trajectories answered correctly.
    pub accuracy: f64,
    pub tc_total: usize,
    pub tc_per_task: f64,
}

fn check_version(trajectories: &[Trajectory]) -> Result<(), MetricsError> {
    let versions: BTreeSet<&str> = trajectories
        .iter()
        .map(|t| t.benchmark_version.as_str())
        .collect();
    if versions.len() > 1 {
        return Err(MetricsError::MixedVersions(
            versions.into_iter().map(str::to_string).collect(),
        ));
    }
    Ok(())
}

/// One row per non-empty group, ordered by (env, difficulty).
pub fn aggregate(
    trajectories: &[Trajectory],
    method: &str,
    group_by: GroupBy,
) -> Result<Vec<MetricsRow>, MetricsError> {
    check_version(trajectories)?;
    let mut groups: BTreeMap<(Option<EnvName>, Option<Difficulty>), Vec<&Trajectory>> =
        BTreeMap::new();
    for t in trajectories {
        groups.entry(group_by.key(t)).or_default().push(t);
    }
    Ok(groups
        .into_iter()
        .map(|((env, difficulty), ts)| {
            let judged: Vec<&&Trajectory> = ts.iter().filter(|t| !t.errored()).collect();
            let correct = judged.iter().filter(|t| t.judgment.correct).count();
            let tc_total: usize = judged.iter().map(|t| t.tool_call_count).sum();
            let denom = judged.len().max(1) as f64;
            MetricsRow {
                method: method.to_string(),
                env,
                difficulty,
                n: ts.len(),
                judged: judged.len(),
                correct,
                errors: ts.len() - judged.len(),
                accuracy: if judged.is_empty() {
                    0.0
                } else {
                    100.0 * correct as f64 / denom
                },
                tc_total,
                tc_per_task: if judged.is_empty() {
                    0.0
                } else {
                    tc_total as f64 / denom
                },
            }
        })
        .collect())
}

/// ΔAcc / (−ΔTC); undefined when ΔTC is zero.
pub fn cost_ratio(d_acc: f64, d_tc: f64) -> Option<f64> {
    (d_tc != 0.0).then(|| d_acc / -d_tc)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CostRow {
    pub method: String,
    pub reference: String,
    pub env: Option<EnvName>,
    pub difficulty: Option<Difficulty>,
    pub d_acc: f64,
    pub d_tc_per_task: f64,
    pub d_tc_total: i64,
    /// ΔAcc per saved call using the per-task ΔTC; null when ΔTC = 0.
    pub ratio: Option<f64>,
}

/// Deltas of `run` against `reference` per group. Both runs must cover the
/// same tasks.
pub fn cost_per_saved_call(
    run: &[Trajectory],
    run_name: &str,
    reference: &[Trajectory],
    reference_name: &str,
    group_by: GroupBy,
) -> Result<Vec<CostRow>, MetricsError> {
    let a: BTreeSet<&str> = run.iter().map(|t| t.task_id.as_str()).collect();
    let b: BTreeSet<&str> = reference.iter().map(|t| t.task_id.as_str()).collect();
    if a != b || a.len() != run.len() || b.len() != reference.len() {
        return Err(MetricsError::TaskSetMismatch {
            only_run: a.difference(&b).count(),
            only_reference: b.difference(&a).count(),
        });
    }
    let mut both = run.to_vec();
    both.extend_from_slice(reference);
    check_version(&both)?;
    let rows = aggregate(run, run_name, group_by)?;
    let refs = aggregate(reference, reference_name, group_by)?;
    Ok(rows
        .iter()
        .zip(&refs)
        .map(|(r, f)| {
            let d_acc = r.accuracy - f.accuracy;
            let d_tc_per_task = r.tc_per_task - f.tc_per_task;
            CostRow {
                method: run_name.to_string(),
                reference: reference_name.to_string(),
                env: r.env,
                difficulty: r.difficulty,
                d_acc,
                d_tc_per_task,
                d_tc_total: r.tc_total as i64 - f.tc_total as i64,
                ratio: cost_ratio(d_acc, d_tc_per_task),
            }
        })
        .collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CurvePoint {
    pub tau: f64,
    pub accuracy: f64,
    pub tc_total: usize,
    pub tc_per_task: f64,
}

/// Accuracy and tool calls per threshold, sorted by τ.
pub fn sweep_curve(runs: &[(f64, Vec<Trajectory>)]) -> Result<Vec<CurvePoint>, MetricsError> {
    if runs.len() < 2 {
        return Err(MetricsError::TooFewThresholds(runs.len()));
    }
    let mut seen = BTreeSet::new();
    for (tau, _) in runs {
        if !seen.insert(tau.to_bits()) {
            return Err(MetricsError::DuplicateThreshold(*tau));
        }
    }
    let mut points = runs
        .iter()
        .map(|(tau, ts)| {
            let row = aggregate(ts, "sweep", GroupBy::Overall)?.pop();
            Ok(match row {
                Some(r) => CurvePoint {
                    tau: *tau,
                    accuracy: r.accuracy,
                    tc_total: r.tc_total,
                    tc_per_task: r.tc_per_task,
                },
                None => CurvePoint {
                    tau: *tau,
                    accuracy: 0.0,
                    tc_total: 0,
                    tc_per_task: 0.0,
                },
            })
        })
        .collect::<Result<Vec<_>, MetricsError>>()?;
    points.sort_by(|a, b| a.tau.total_cmp(&b.tau));
    Ok(points)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AurocBlock {
    pub auroc: f64,
    pub n: usize,
    pub positives: usize,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct MetricsReport {
    pub benchmark_version: String,
    pub rows: Vec<MetricsRow>,
    #[serde(default)]
    pub deltas: Vec<CostRow>,
    #[serde(default)]
    pub auroc: Option<AurocBlock>,
    #[serde(default)]
    pub curve: Vec<CurvePoint>,
}

#[derive(Serialize)]
struct LongRow<'a> {
    method: &'a str,
    reference: &'a str,
    env: &'a str,
    difficulty: &'a str,
    metric: &'a str,
    value: String,
}

fn io(e: impl std::fmt::Display) -> MetricsError {
    MetricsError::Io(e.to_string())
}

impl MetricsReport {
    /// Long format: group keys, metric name, value. Null values are empty.
    pub fn to_csv(&self) -> Result<String, MetricsError> {
        let mut w = csv::Writer::from_writer(Vec::new());
        let env_s = |e: Option<EnvName>| e.map_or("all", EnvName::as_str);
        let diff_s = |d: Option<Difficulty>| d.map_or("all", Difficulty::as_str);
        for r in &self.rows {
            let metrics: [(&str, String); 7] = [
                ("n", r.n.to_string()),
                ("judged", r.judged.to_string()),
                ("correct", r.correct.to_string()),
                ("errors", r.errors.to_string()),
                ("accuracy", format!("{:.4}", r.accuracy)),
                ("tc_total", r.tc_total.to_string()),
                ("tc_per_task", format!("{:.4}", r.tc_per_task)),
            ];
            for (metric, value) in metrics {
                w.serialize(LongRow {
                    method: &r.method,
                    reference: "",
                    env: env_s(r.env),
                    difficulty: diff_s(r.difficulty),
                    metric,
                    value,
                })
                .map_err(io)?;
            }
        }
        for d in &self.deltas {
            let metrics: [(&str, String); 4] = [
                ("d_acc", format!("{:.4}", d.d_acc)),
                ("d_tc_per_task", format!("{:.4}", d.d_tc_per_task)),
                ("d_tc_total", d.d_tc_total.to_string()),
                (
                    "cost_ratio",
                    d.ratio.map_or_else(String::new, |v| format!("{v:.4}")),
                ),
            ];
            for (metric, value) in metrics {
                w.serialize(LongRow {
                    method: &d.method,
                    reference: &d.reference,
                    env: env_s(d.env),
                    difficulty: diff_s(d.difficulty),
                    metric,
                    value,
                })
                .map_err(io)?;
            }
        }
        if let Some(a) = &self.auroc {
            for (metric, value) in [
                ("auroc", format!("{:.6}", a.auroc)),
                ("auroc_n", a.n.to_string()),
            ] {
                w.serialize(LongRow {
                    method: "probe",
                    reference: "",
                    env: "all",
                    difficulty: "all",
                    metric,
                    value,
                })
                .map_err(io)?;
            }
        }
        String::from_utf8(w.into_inner().map_err(io)?).map_err(io)
    }

    pub fn write(&self, dir: &Path) -> Result<(), MetricsError> {
        std::fs::create_dir_all(dir).map_err(io)?;
        std::fs::write(dir.join("report.csv"), self.to_csv()?).map_err(io)?;
        let json = serde_json::to_string_pretty(self).map_err(io)?;
        std::fs::write(dir.join("report.json"), json).map_err(io)?;
        if !self.curve.is_empty() {
            write_curve(&dir.join("curve.csv"), &self.curve)?;
        }
        Ok(())
    }
}

pub fn write_curve(path: &Path, points: &[CurvePoint]) -> Result<(), MetricsError> {
    let mut w = csv::Writer::from_path(path).map_err(io)?;
    w.write_record(["tau", "acc", "tc_total", "tc_per_task"])
        .map_err(io)?;
    for p in points {
        w.write_record([
            format!("{}", p.tau),
            format!("{:.4}", p.accuracy),
            p.tc_total.to_string(),
            format!("{:.4}", p.tc_per_task),
        ])
        .map_err(io)?;
    }
    w.flush().map_err(io)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::agent::{Mode, PrefillDirective, PromptMode};
    use crate::backend::Usage;
    use crate::evaluator::Judgment;
    use crate::taskgen::{Split, BENCHMARK_VERSION};
    use proptest::prelude::*;

    fn traj(
        id: usize,
        env: EnvName,
        difficulty: Difficulty,
        correct: bool,
        calls: usize,
    ) -> Trajectory {
        Trajectory {
            benchmark_version: BENCHMARK_VERSION.into(),
            task_id: format!("t{id}"),
            env_name: env,
            difficulty,
            split: Split::Test,
            mode: PromptMode::new(Mode::Default),
            prefill_used: PrefillDirective::none(),
            probe: None,
            rounds: vec![],
            final_output: String::new(),
            judgment: Judgment {
                correct,
                extracted: None,
                failure_reason: None,
            },
            tool_call_count: calls,
            refused_call_count: 0,
            token_usage: Usage::default(),
            error: None,
        }
    }

    #[test]
    fn counts_accuracy_and_calls() {
        let ts: Vec<Trajectory> = (0..10)
            .map(|i| {
                traj(
                    i,
                    EnvName::CalculatorEnv,
                    Difficulty::Easy,
                    i != 3,
                    if i < 3 { 2 } else { 1 },
                )
            })
            .collect();
        let rows = aggregate(&ts, "default", GroupBy::Overall).unwrap();
        assert_eq!(rows.len(), 1);
        assert_eq!(rows[0].accuracy, 90.0);
        assert_eq!(rows[0].tc_total, 13);
        assert!(aggregate(&[], "x", GroupBy::Env).unwrap().is_empty());
    }

    #[test]
    fn errored_trajectories_are_excluded_and_counted() {
        let mut ts: Vec<Trajectory> = (0..4)
            .map(|i| traj(i, EnvName::HashEnv, Difficulty::Hard, true, 1))
            .collect();
        ts[0].error = Some("transport".into());
        ts[0].judgment.correct = false;
        let r = &aggregate(&ts, "m", GroupBy::Overall).unwrap()[0];
        assert_eq!((r.n, r.judged, r.errors, r.tc_total), (4, 3, 1, 3));
        assert_eq!(r.accuracy, 100.0);
    }

    #[test]
    fn per_difficulty_grouping_gives_three_rows_per_env() {
        let mut ts = Vec::new();
        let mut id = 0;
        for env in [EnvName::CalculatorEnv, EnvName::PrimeEnv] {
            for (k, d) in Difficulty::ALL.into_iter().enumerate() {
                for j in 0..=k {
                    ts.push(traj(id, env, d, j == 0, k));
                    id += 1;
                }
            }
        }
        let rows = aggregate(&ts, "m", GroupBy::EnvDifficulty).unwrap();
        assert_eq!(rows.len(), 6);
        let hard = rows
            .iter()
            .find(|r| r.env == Some(EnvName::PrimeEnv) && r.difficulty == Some(Difficulty::Hard))
            .unwrap();
        assert_eq!((hard.n, hard.correct, hard.tc_total), (3, 1, 6));
        assert!((hard.accuracy - 100.0 / 3.0).abs() < 1e-9);
    }

    #[test]
    fn mixed_versions_are_rejected() {
        let mut ts = vec![
            traj(0, EnvName::HashEnv, Difficulty::Easy, true, 0),
            traj(1, EnvName::HashEnv, Difficulty::Easy, true, 0),
        ];
        ts[1].benchmark_version = "other".into();
        assert!(matches!(
            aggregate(&ts, "m", GroupBy::Overall),
            Err(MetricsError::MixedVersions(_))
        ));
    }

    #[test]
    fn ratio_examples() {
        assert!((cost_ratio(-14.5, -0.84).unwrap() - -17.3).abs() <= 0.1);
        assert!((cost_ratio(-1.7, -0.48).unwrap() - -3.6).abs() <= 0.1);
        assert_eq!(cost_ratio(-3.0, 0.0), None);
    }

    #[test]
    fn deltas_use_per_task_calls_and_check_task_sets() {
        let base: Vec<Trajectory> = (0..4)
            .map(|i| traj(i, EnvName::CalculatorEnv, Difficulty::Easy, true, 2))
            .collect();
        let mut run = base.clone();
        run[0].judgment.correct = false;
        run.iter_mut().for_each(|t| t.tool_call_count = 1);
        let rows = cost_per_saved_call(&run, "sparse", &base, "default", GroupBy::Overall).unwrap();
        assert_eq!(rows[0].d_acc, -25.0);
        assert_eq!(rows[0].d_tc_per_task, -1.0);
        assert_eq!(rows[0].d_tc_total, -4);
        assert_eq!(rows[0].ratio, Some(-25.0));
        assert!(matches!(
            cost_per_saved_call(&run[1..], "s", &base, "d", GroupBy::Overall),
            Err(MetricsError::TaskSetMismatch { .. })
        ));
        let same = cost_per_saved_call(&base, "d2", &base, "d", GroupBy::Overall).unwrap();
        assert_eq!(same[0].ratio, None);
    }

    #[test]
    fn sweep_validation() {
        let ts = vec![traj(0, EnvName::CalculatorEnv, Difficulty::Easy, true, 1)];
        assert!(matches!(
            sweep_curve(&[(0.5, ts.clone())]),
            Err(MetricsError::TooFewThresholds(1))
        ));
        assert!(matches!(
            sweep_curve(&[(0.5, ts.clone()), (0.5, ts.clone())]),
            Err(MetricsError::DuplicateThreshold(_))
        ));
        let pts = sweep_curve(&[(0.9, ts.clone()), (0.1, ts)]).unwrap();
        assert_eq!(pts.iter().map(|p| p.tau).collect::<Vec<_>>(), [0.1, 0.9]);
    }

    #[test]
    fn report_files_are_written() {
        let ts: Vec<Trajectory> = (0..3)
            .map(|i| traj(i, EnvName::CalculatorEnv, Difficulty::Easy, true, 1))
            .collect();
        let report = MetricsReport {
            benchmark_version: BENCHMARK_VERSION.into(),
            rows: aggregate(&ts, "default", GroupBy::Difficulty).unwrap(),
            deltas: cost_per_saved_call(&ts, "same", &ts, "default", GroupBy::Overall).unwrap(),
            auroc: Some(AurocBlock {
                auroc: 0.9,
                n: 3,
                positives: 1,
            }),
            curve: sweep_curve(&[(0.1, ts.clone()), (0.9, ts)]).unwrap(),
        };
        let dir = tempfile::tempdir().unwrap();
        report.write(dir.path()).unwrap();
        let csv = std::fs::read_to_string(dir.path().join("report.csv")).unwrap();
        assert!(csv.starts_with("method,reference,env,difficulty,metric,value\n"));
        assert!(csv.contains("same,default,all,all,cost_ratio,\n"));
        let curve = std::fs::read_to_string(dir.path().join("curve.csv")).unwrap();
        assert_eq!(curve.lines().count(), 3);
        let back: MetricsReport =
            serde_json::from_str(&std::fs::read_to_string(dir.path().join("report.json")).unwrap())
                .unwrap();
        assert_eq!(back, report);
    }

    proptest! {
        #[test]
        fn aggregate_ignores_order(seed in any::<u64>(), n in 1usize..40) {
            use rand::{seq::SliceRandom, Rng, SeedableRng};
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let mut ts: Vec<Trajectory> = (0..n)
                .map(|i| {
                    let env = EnvName::ALL[rng.gen_range(0..EnvName::ALL.len())];
                    let d = Difficulty::ALL[rng.gen_range(0..3)];
                    traj(i, env, d, rng.gen_bool(0.5), rng.gen_range(0..4))
                })
                .collect();
            let before = aggregate(&ts, "m", GroupBy::EnvDifficulty).unwrap();
            ts.shuffle(&mut rng);
            prop_assert_eq!(before, aggregate(&ts, "m", GroupBy::EnvDifficulty).unwrap());
        }
    }
}
