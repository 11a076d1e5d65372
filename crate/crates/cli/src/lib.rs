//! Subcommands of the `when2tool` binary.

pub mod cache;

use std::path::{Path, PathBuf};
use std::sync::Arc;
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use when2tool_core::agent::{
    run_no_tool_labeling, run_parallel, run_task, Limits, Mode, PrefillDirective, ProbeNote,
    PromptMode, Trajectory,
};
use when2tool_core::backend::http::HttpConfig;
use when2tool_core::backend::{conformance, serve, Backend, HttpBackend, MockBackend, MockProfile};
use when2tool_core::metrics::{
    aggregate, cost_per_saved_call, sweep_curve, write_curve, AurocBlock, GroupBy, MetricsReport,
};
use when2tool_core::probe::{
    auroc, probe_decide, train_probe, LayerSelection, NecessityLabel, ProbeModel, Route,
    TrainConfig, DEFAULT_LAMBDA, DEFAULT_TEMPERATURE,
};
use when2tool_core::taskgen::{self, BenchmarkManifest, Task};

use cache::FeatureCache;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_BACKEND: i32 = 3;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Config(String),
    #[error("missing input: {}", .0.display())]
    Missing(PathBuf),
    #[error("{}: {err}", path.display())]
    Io { path: PathBuf, err: String },
    #[error("backend unavailable: {0}")]
    Backend(String),
    #[error("{0}")]
    Failed(String),
}

impl CliError {
    pub fn io(path: &Path, err: impl std::fmt::Display) -> Self {
        CliError::Io {
            path: path.to_path_buf(),
            err: err.to_string(),
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) | CliError::Missing(_) | CliError::Io { .. } => EXIT_CONFIG,
            CliError::Backend(_) => EXIT_BACKEND,
            CliError::Failed(_) => EXIT_FAILED,
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "when2tool",
    version,
    about = "Benchmark, agent runs and probe steering for tool-call decisions"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate the single-hop and multi-hop task suites.
    Gen(GenArgs),
    /// Run an agent over a task file and report.
    Run(RunArgs),
    /// Label tasks by a no-tool run (y = 1 when the model fails).
    Label(LabelArgs),
    /// Cache hidden-state features for a task file.
    Extract(ExtractArgs),
    /// Train the necessity probe from labels and cached features.
    TrainProbe(TrainArgs),
    /// Probe-steered runs over a set of thresholds.
    Sweep(SweepArgs),
    /// Aggregate runs into report.csv and report.json.
    Report(ReportArgs),
    /// Serve a mock backend over HTTP.
    ServeMock(ServeArgs),
    /// Check a backend against the protocol contract.
    Conformance(ConformanceArgs),
}

#[derive(Debug, Args)]
pub struct GenArgs {
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub out: PathBuf,
    #[arg(long, default_value_t = taskgen::DEFAULT_TRAIN_PER_DIFFICULTY)]
    pub train_per_difficulty: usize,
    #[arg(long, default_value_t = taskgen::DEFAULT_TEST_PER_DIFFICULTY)]
    pub test_per_difficulty: usize,
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
pub struct BackendArgs {
    /// Base URL of a protocol server.
    #[arg(long, env = "BACKEND_URL")]
    pub backend_url: Option<String>,
    /// Use the in-process mock with this named profile.
    #[arg(long, conflicts_with = "backend_url")]
    pub mock: Option<String>,
    /// Mock profile as a JSON file.
    #[arg(long, conflicts_with_all = ["backend_url", "mock"])]
    pub mock_profile: Option<PathBuf>,
    #[arg(long, default_value_t = 120)]
    pub timeout_secs: u64,
    #[arg(long, default_value_t = 3)]
    pub attempts: u32,
    #[arg(long, default_value_t = 4)]
    pub max_in_flight: usize,
    /// Tag used for caching; defaults to the backend's model name.
    #[arg(long)]
    pub model_tag: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PrefillStrategy {
    None,
    ProbeSoft,
    ProbeHard,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Force,
    Default,
    Necessary,
    Sparse,
    NoTool,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Force => Mode::Force,
            ModeArg::Default => Mode::Default,
            ModeArg::Necessary => Mode::Necessary,
            ModeArg::Sparse => Mode::Sparse,
            ModeArg::NoTool => Mode::NoTool,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GroupArg {
    Overall,
    Difficulty,
    Env,
    EnvDifficulty,
}

impl From<GroupArg> for GroupBy {
    fn from(g: GroupArg) -> Self {
        match g {
            GroupArg::Overall => GroupBy::Overall,
            GroupArg::Difficulty => GroupBy::Difficulty,
            GroupArg::Env => GroupBy::Env,
            GroupArg::EnvDifficulty => GroupBy::EnvDifficulty,
        }
    }
}

#[derive(Debug, Args)]
pub struct RunArgs {
    #[arg(long)]
    pub tasks: PathBuf,
    #[arg(long, value_enum, default_value_t = ModeArg::Default)]
    pub mode: ModeArg,
    #[arg(long)]
    pub reason_then_act: bool,
    #[arg(long, value_enum, default_value_t = PrefillStrategy::None)]
    pub prefill: PrefillStrategy,
    #[arg(long)]
    pub probe: Option<PathBuf>,
    #[arg(long, default_value_t = 0.5)]
    pub tau: f64,
    /// Overrides the probe's calibration temperature.
    #[arg(long)]
    pub temperature: Option<f64>,
    #[arg(long)]
    pub max_rounds: Option<usize>,
    #[arg(long, default_value_t = 1024)]
    pub max_tokens: u32,
    #[arg(long)]
    pub out: PathBuf,
    #[arg(long, default_value = "cache")]
    pub cache: PathBuf,
    #[arg(long, default_value_t = 4)]
    pub parallel: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[command(flatten)]
    pub backend: BackendArgs,
}

#[derive(Debug, Args)]
pub struct LabelArgs {
    #[arg(long)]
    pub tasks: PathBuf,
    #[arg(long)]
    pub out: PathBuf,
    #[arg(long, default_value_t = 4)]
    pub parallel: usize,
    #[command(flatten)]
    pub backend: BackendArgs,
}

#[derive(Debug, Args)]
pub struct ExtractArgs {
    #[arg(long)]
    pub tasks: PathBuf,
    #[arg(long, default_value = "cache")]
    pub cache: PathBuf,
    #[arg(long, default_value_t = 4)]
    pub parallel: usize,
    #[command(flatten)]
    pub backend: BackendArgs,
}

#[derive(Debug, Args)]
pub struct TrainArgs {
    #[arg(long)]
    pub labels: PathBuf,
    #[arg(long, default_value = "cache")]
    pub cache: PathBuf,
    /// Model tag whose cached features are used.
    #[arg(long)]
    pub model_tag: String,
    #[arg(long)]
    pub out: PathBuf,
    #[arg(long, default_value_t = DEFAULT_LAMBDA)]
    pub lambda: f64,
    #[arg(long, default_value_t = DEFAULT_TEMPERATURE)]
    pub temperature: f64,
    #[arg(long, default_value = "all")]
    pub layers: LayerSelection,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[arg(long)]
    pub tasks: PathBuf,
    #[arg(long)]
    pub probe: PathBuf,
    #[arg(long, value_delimiter = ',', default_values_t = [0.1, 0.3, 0.5, 0.7, 0.9])]
    pub taus: Vec<f64>,
    #[arg(long, value_enum, default_value_t = PrefillStrategy::ProbeSoft)]
    pub prefill: PrefillStrategy,
    #[arg(long, value_enum, default_value_t = ModeArg::Default)]
    pub mode: ModeArg,
    #[arg(long)]
    pub out: PathBuf,
    #[arg(long, default_value = "cache")]
    pub cache: PathBuf,
    #[arg(long, default_value_t = 4)]
    pub parallel: usize,
    #[command(flatten)]
    pub backend: BackendArgs,
}

#[derive(Debug, Args)]
pub struct ReportArgs {
    /// Run directories (each holding trajectories.jsonl).
    #[arg(long = "run", required = true)]
    pub runs: Vec<PathBuf>,
    /// Run directory used as the delta reference.
    #[arg(long)]
    pub reference: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = GroupArg::Difficulty)]
    pub group_by: GroupArg,
    #[arg(long)]
    pub out: PathBuf,
    /// Necessity labels of the run's tasks, for the AUROC block.
    #[arg(long, requires = "probe")]
    pub labels: Option<PathBuf>,
    #[arg(long, requires = "labels")]
    pub probe: Option<PathBuf>,
    #[arg(long, default_value = "cache")]
    pub cache: PathBuf,
}

#[derive(Debug, Args)]
pub struct ServeArgs {
    #[arg(long, default_value = "planted-signal")]
    pub profile: String,
    /// Task files whose prompts the mock should recognise.
    #[arg(long = "tasks")]
    pub tasks: Vec<PathBuf>,
    #[arg(long, default_value = "127.0.0.1:8000")]
    pub addr: String,
}

#[derive(Debug, Args)]
pub struct ConformanceArgs {
    #[command(flatten)]
    pub backend: BackendArgs,
}

/// Snapshot of a run, written as config.json next to its trajectories.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub method: String,
    pub tasks: PathBuf,
    pub backend_url: Option<String>,
    pub mock: Option<String>,
    pub model_tag: String,
    pub mode: Mode,
    pub reason_then_act: bool,
    pub prefill: PrefillStrategy,
    pub probe: Option<PathBuf>,
    pub tau: f64,
    pub temperature: Option<f64>,
    pub max_rounds: Option<usize>,
    pub max_tokens: u32,
    pub seed: u64,
    pub parallel: usize,
}

impl RunConfig {
    fn method_name(mode: PromptMode, prefill: PrefillStrategy, tau: f64) -> String {
        match prefill {
            PrefillStrategy::None => mode.to_string(),
            PrefillStrategy::ProbeSoft => format!("probe-soft@{tau}"),
            PrefillStrategy::ProbeHard => format!("probe-hard@{tau}"),
        }
    }
}

pub fn run_cli(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Gen(a) => cmd_gen(&a),
        Command::Run(a) => cmd_run(&a).map(|_| ()),
        Command::Label(a) => cmd_label(&a).map(|_| ()),
        Command::Extract(a) => cmd_extract(&a).map(|_| ()),
        Command::TrainProbe(a) => cmd_train_probe(&a).map(|_| ()),
        Command::Sweep(a) => cmd_sweep(&a).map(|_| ()),
        Command::Report(a) => cmd_report(&a).map(|_| ()),
        Command::ServeMock(a) => cmd_serve_mock(&a),
        Command::Conformance(a) => cmd_conformance(&a),
    }
}

pub fn read_records<T: serde::de::DeserializeOwned>(path: &Path) -> Result<Vec<T>, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| match e.kind() {
        std::io::ErrorKind::NotFound => CliError::Missing(path.to_path_buf()),
        _ => CliError::io(path, e),
    })?;
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| {
            serde_json::from_str(l).map_err(|e| CliError::io(path, format!("line {}: {e}", i + 1)))
        })
        .collect()
}

pub fn write_records<T: Serialize>(path: &Path, items: &[T]) -> Result<(), CliError> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        std::fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
    }
    let mut text = String::new();
    for item in items {
        text.push_str(&serde_json::to_string(item).expect("records serialize"));
        text.push('\n');
    }
    std::fs::write(path, text).map_err(|e| CliError::io(path, e))
}

fn require(path: &Path) -> Result<(), CliError> {
    if path.exists() {
        Ok(())
    } else {
        Err(CliError::Missing(path.to_path_buf()))
    }
}

pub fn load_tasks(path: &Path) -> Result<Vec<Task>, CliError> {
    require(path)?;
    taskgen::read_jsonl(path).map_err(|e| CliError::io(path, e))
}

fn load_probe(path: &Path) -> Result<ProbeModel, CliError> {
    require(path)?;
    ProbeModel::load(path).map_err(|e| CliError::Config(e.to_string()))
}

/// Backend plus the tag used to key its cached features.
pub fn connect(args: &BackendArgs, tasks: &[Task]) -> Result<(Arc<dyn Backend>, String), CliError> {
    let backend: Arc<dyn Backend> = if let Some(name) = &args.mock {
        let profile = MockProfile::named(name).ok_or_else(|| {
            CliError::Config(format!(
                "unknown mock profile '{name}' ({})",
                MockProfile::NAMES.join(", ")
            ))
        })?;
        Arc::new(MockBackend::new(profile, tasks))
    } else if let Some(path) = &args.mock_profile {
        require(path)?;
        let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        let profile: MockProfile =
            serde_json::from_str(&text).map_err(|e| CliError::io(path, e))?;
        Arc::new(MockBackend::new(profile, tasks))
    } else if let Some(url) = &args.backend_url {
        let mut cfg = HttpConfig::new(url.clone());
        cfg.timeout = Duration::from_secs(args.timeout_secs);
        cfg.attempts = args.attempts.max(1);
        cfg.max_in_flight = args.max_in_flight.max(1);
        let client =
            HttpBackend::connect(cfg).map_err(|e| CliError::Backend(format!("{url}: {e}")))?;
        Arc::new(client)
    } else {
        return Err(CliError::Config(
            "no backend: pass --backend-url, set BACKEND_URL, or use --mock".into(),
        ));
    };
    let tag = args
        .model_tag
        .clone()
        .unwrap_or_else(|| backend.meta().model);
    Ok((backend, tag))
}

pub fn cmd_gen(args: &GenArgs) -> Result<(), CliError> {
    if args.out.exists() && !args.out.is_dir() {
        return Err(CliError::Config(format!(
            "{} exists and is not a directory",
            args.out.display()
        )));
    }
    let single = BenchmarkManifest::uniform(
        args.seed,
        &taskgen::EnvName::SINGLE_HOP,
        args.train_per_difficulty,
        args.test_per_difficulty,
    );
    let multi = BenchmarkManifest::uniform(
        args.seed,
        &taskgen::EnvName::MULTI_HOP,
        args.train_per_difficulty,
        args.test_per_difficulty,
    );
    for (name, manifest) in [("single", &single), ("multi", &multi)] {
        let dir = args.out.join(name);
        taskgen::write_suite(&dir, manifest).map_err(|e| match e {
            taskgen::TaskgenError::Io(io) => CliError::io(&dir, io),
            other => CliError::Config(other.to_string()),
        })?;
        tracing::info!(dir = %dir.display(), "wrote suite");
    }
    Ok(())
}

fn limits_for(task: &Task, max_rounds: Option<usize>, max_tokens: u32) -> Limits {
    let mut l = Limits::for_task(task);
    if let Some(r) = max_rounds {
        l.max_rounds = r.max(1);
    }
    l.max_tokens = max_tokens;
    l
}

/// Probe decision per task, reading features through the cache.
fn probe_notes(
    tasks: &[Task],
    probe: &ProbeModel,
    cache: &mut FeatureCache,
    backend: &dyn Backend,
    parallel: usize,
    tau: f64,
) -> Result<Vec<ProbeNote>, CliError> {
    cache.fill(tasks, backend, parallel)?;
    tasks
        .iter()
        .map(|t| {
            let h = cache
                .get(&t.task_id)
                .ok_or_else(|| CliError::Failed(format!("no features for {}", t.task_id)))?;
            let x = probe
                .select(h)
                .map_err(|e| CliError::Config(e.to_string()))?;
            let d = probe_decide(probe, &t.task_id, &x, tau)
                .map_err(|e| CliError::Config(e.to_string()))?;
            Ok(ProbeNote {
                probability: d.probability,
                tau,
                use_tool: d.decision == Route::Tool,
            })
        })
        .collect()
}

#[allow(clippy::too_many_arguments)]
fn run_with_notes(
    tasks: &[Task],
    mode: PromptMode,
    prefill: PrefillStrategy,
    notes: Option<&[ProbeNote]>,
    backend: &dyn Backend,
    parallel: usize,
    max_rounds: Option<usize>,
    max_tokens: u32,
) -> Vec<Trajectory> {
    let indexed: Vec<usize> = (0..tasks.len()).collect();
    run_parallel(&indexed, parallel, |&i| {
        let task = &tasks[i];
        let note = notes.map(|n| n[i]);
        let directive = match (prefill, note) {
            (PrefillStrategy::ProbeSoft, Some(n)) => PrefillDirective::steer(n.use_tool, false),
            (PrefillStrategy::ProbeHard, Some(n)) => PrefillDirective::steer(n.use_tool, true),
            _ => PrefillDirective::none(),
        };
        let mut t = run_task(
            task,
            mode,
            &directive,
            backend,
            limits_for(task, max_rounds, max_tokens),
        );
        t.probe = note;
        t
    })
}

fn report_for(trajectories: &[Trajectory], method: &str) -> Result<MetricsReport, CliError> {
    let mut rows = Vec::new();
    for g in [
        GroupBy::Overall,
        GroupBy::Difficulty,
        GroupBy::EnvDifficulty,
    ] {
        rows.extend(
            aggregate(trajectories, method, g).map_err(|e| CliError::Failed(e.to_string()))?,
        );
    }
    Ok(MetricsReport {
        benchmark_version: taskgen::BENCHMARK_VERSION.into(),
        rows,
        ..Default::default()
    })
}

fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<(), CliError> {
    let text = serde_json::to_string_pretty(value).expect("values serialize");
    std::fs::write(path, text + "\n").map_err(|e| CliError::io(path, e))
}

pub fn cmd_run(args: &RunArgs) -> Result<Vec<Trajectory>, CliError> {
    let tasks = load_tasks(&args.tasks)?;
    let uses_probe = args.prefill != PrefillStrategy::None;
    let probe = match (&args.probe, uses_probe) {
        (Some(p), true) => {
            let mut m = load_probe(p)?;
            if let Some(t) = args.temperature {
                if t.is_nan() || t <= 0.0 {
                    return Err(CliError::Config(format!(
                        "temperature must be positive, got {t}"
                    )));
                }
                m.temperature = t;
            }
            Some(m)
        }
        (None, true) => return Err(CliError::Config("--prefill probe-* needs --probe".into())),
        (Some(_), false) => {
            return Err(CliError::Config(
                "--probe is only used with --prefill probe-soft|probe-hard".into(),
            ))
        }
        (None, false) => None,
    };
    if !(args.tau > 0.0 && args.tau < 1.0) {
        return Err(CliError::Config(format!(
            "--tau must lie in (0, 1), got {}",
            args.tau
        )));
    }
    let (backend, tag) = connect(&args.backend, &tasks)?;
    let mode = PromptMode {
        mode: args.mode.into(),
        reason_then_act: args.reason_then_act,
    };
    let notes = match &probe {
        Some(p) => {
            let mut cache = FeatureCache::open(&args.cache, &tag)?;
            Some(probe_notes(
                &tasks,
                p,
                &mut cache,
                &*backend,
                args.parallel,
                args.tau,
            )?)
        }
        None => None,
    };
    let trajectories = run_with_notes(
        &tasks,
        mode,
        args.prefill,
        notes.as_deref(),
        &*backend,
        args.parallel,
        args.max_rounds,
        args.max_tokens,
    );
    let method = RunConfig::method_name(mode, args.prefill, args.tau);
    let config = RunConfig {
        method: method.clone(),
        tasks: args.tasks.clone(),
        backend_url: args.backend.backend_url.clone(),
        mock: args.backend.mock.clone(),
        model_tag: tag,
        mode: mode.mode,
        reason_then_act: mode.reason_then_act,
        prefill: args.prefill,
        probe: args.probe.clone(),
        tau: args.tau,
        temperature: args.temperature,
        max_rounds: args.max_rounds,
        max_tokens: args.max_tokens,
        seed: args.seed,
        parallel: args.parallel,
    };
    std::fs::create_dir_all(&args.out).map_err(|e| CliError::io(&args.out, e))?;
    write_json(&args.out.join("config.json"), &config)?;
    write_records(&args.out.join("trajectories.jsonl"), &trajectories)?;
    report_for(&trajectories, &method)?
        .write(&args.out)
        .map_err(|e| CliError::Failed(e.to_string()))?;
    let errored = trajectories.iter().filter(|t| t.errored()).count();
    if errored == trajectories.len() && !trajectories.is_empty() {
        return Err(CliError::Backend(format!(
            "all {errored} trajectories failed"
        )));
    }
    Ok(trajectories)
}

pub fn cmd_label(args: &LabelArgs) -> Result<Vec<NecessityLabel>, CliError> {
    let tasks = load_tasks(&args.tasks)?;
    let (backend, _) = connect(&args.backend, &tasks)?;
    let (labels, failed) = run_no_tool_labeling(&tasks, &*backend, args.parallel);
    if labels.is_empty() && !failed.is_empty() {
        return Err(CliError::Backend(format!(
            "all {} labeling runs failed",
            failed.len()
        )));
    }
    write_records(&args.out, &labels)?;
    if !failed.is_empty() {
        tracing::warn!(
            excluded = failed.len(),
            "tasks excluded from labels after backend errors"
        );
    }
    Ok(labels)
}

pub fn cmd_extract(args: &ExtractArgs) -> Result<usize, CliError> {
    let tasks = load_tasks(&args.tasks)?;
    let (backend, tag) = connect(&args.backend, &tasks)?;
    let mut cache = FeatureCache::open(&args.cache, &tag)?;
    let fetched = cache.fill(&tasks, &*backend, args.parallel)?;
    tracing::info!(fetched, cached = cache.len(), file = %cache.path().display(), "features ready");
    Ok(fetched)
}

pub fn cmd_train_probe(args: &TrainArgs) -> Result<ProbeModel, CliError> {
    let labels: Vec<NecessityLabel> = read_records(&args.labels)?;
    let cache = FeatureCache::open(&args.cache, &args.model_tag)?;
    let mut rows = Vec::with_capacity(labels.len());
    let mut ys = Vec::with_capacity(labels.len());
    let mut shape = None;
    for l in &labels {
        let h = cache.get(&l.task_id).ok_or_else(|| {
            CliError::Missing(cache.path().join(format!("<features for {}>", l.task_id)))
        })?;
        shape.get_or_insert((h.layer_count, h.hidden_dim));
        rows.push(when2tool_core::probe::select_layers(h, args.layers));
        ys.push(l.y);
    }
    let (lc, hd) = shape
        .ok_or_else(|| CliError::Config(format!("{} has no labels", args.labels.display())))?;
    let config = TrainConfig {
        lambda: args.lambda,
        temperature: args.temperature,
        layer_selection: args.layers,
        seed: args.seed,
    };
    let mut model =
        train_probe(&rows, &ys, &config, lc, hd).map_err(|e| CliError::Failed(e.to_string()))?;
    model.model = Some(args.model_tag.clone());
    if let Some(dir) = args.out.parent().filter(|d| !d.as_os_str().is_empty()) {
        std::fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
    }
    model
        .save(&args.out)
        .map_err(|e| CliError::io(&args.out, e))?;
    Ok(model)
}

pub fn cmd_sweep(args: &SweepArgs) -> Result<Vec<when2tool_core::metrics::CurvePoint>, CliError> {
    if args.prefill == PrefillStrategy::None {
        return Err(CliError::Config(
            "a sweep needs --prefill probe-soft or probe-hard".into(),
        ));
    }
    if let Some(t) = args.taus.iter().find(|t| !(**t > 0.0 && **t < 1.0)) {
        return Err(CliError::Config(format!(
            "thresholds must lie in (0, 1), got {t}"
        )));
    }
    let tasks = load_tasks(&args.tasks)?;
    let probe = load_probe(&args.probe)?;
    let (backend, tag) = connect(&args.backend, &tasks)?;
    let mut cache = FeatureCache::open(&args.cache, &tag)?;
    let mode = PromptMode::new(args.mode.into());
    let mut runs = Vec::new();
    for &tau in &args.taus {
        let notes = probe_notes(&tasks, &probe, &mut cache, &*backend, args.parallel, tau)?;
        let ts = run_with_notes(
            &tasks,
            mode,
            args.prefill,
            Some(&notes),
            &*backend,
            args.parallel,
            None,
            1024,
        );
        let dir = args.out.join(format!("tau_{tau}"));
        write_records(&dir.join("trajectories.jsonl"), &ts)?;
        report_for(&ts, &RunConfig::method_name(mode, args.prefill, tau))?
            .write(&dir)
            .map_err(|e| CliError::Failed(e.to_string()))?;
        runs.push((tau, ts));
    }
    let curve = sweep_curve(&runs).map_err(|e| CliError::Config(e.to_string()))?;
    write_curve(&args.out.join("curve.csv"), &curve)
        .map_err(|e| CliError::Failed(e.to_string()))?;
    Ok(curve)
}

fn load_run(dir: &Path) -> Result<(String, Vec<Trajectory>), CliError> {
    let trajectories: Vec<Trajectory> = read_records(&dir.join("trajectories.jsonl"))?;
    let name = match std::fs::read_to_string(dir.join("config.json")) {
        Ok(text) => {
            serde_json::from_str::<RunConfig>(&text)
                .map_err(|e| CliError::io(dir, e))?
                .method
        }
        Err(_) => dir
            .file_name()
            .map_or_else(|| "run".into(), |n| n.to_string_lossy().into_owned()),
    };
    Ok((name, trajectories))
}

pub fn cmd_report(args: &ReportArgs) -> Result<MetricsReport, CliError> {
    let runs = args
        .runs
        .iter()
        .map(|d| load_run(d))
        .collect::<Result<Vec<_>, _>>()?;
    let reference = args.reference.as_deref().map(load_run).transpose()?;
    let fail = |e: when2tool_core::metrics::MetricsError| CliError::Failed(e.to_string());
    let mut report = MetricsReport {
        benchmark_version: taskgen::BENCHMARK_VERSION.into(),
        ..Default::default()
    };
    for (name, ts) in &runs {
        report
            .rows
            .extend(aggregate(ts, name, args.group_by.into()).map_err(fail)?);
        if let Some((ref_name, ref_ts)) = &reference {
            report.deltas.extend(
                cost_per_saved_call(ts, name, ref_ts, ref_name, args.group_by.into())
                    .map_err(fail)?,
            );
        }
    }
    if let (Some(labels_path), Some(probe_path)) = (&args.labels, &args.probe) {
        let labels: Vec<NecessityLabel> = read_records(labels_path)?;
        let probe = load_probe(probe_path)?;
        let tag = probe
            .model
            .clone()
            .ok_or_else(|| CliError::Config("probe artifact has no model tag".into()))?;
        let cache = FeatureCache::open(&args.cache, &tag)?;
        let mut scores = Vec::new();
        let mut ys = Vec::new();
        for l in &labels {
            let h = cache.get(&l.task_id).ok_or_else(|| {
                CliError::Missing(cache.path().join(format!("<features for {}>", l.task_id)))
            })?;
            let x = probe
                .select(h)
                .map_err(|e| CliError::Config(e.to_string()))?;
            scores.push(
                probe
                    .probability(&x)
                    .map_err(|e| CliError::Config(e.to_string()))?,
            );
            ys.push(l.y);
        }
        let value = auroc(&scores, &ys).map_err(|e| CliError::Failed(e.to_string()))?;
        report.auroc = Some(AurocBlock {
            auroc: value,
            n: ys.len(),
            positives: ys.iter().filter(|y| **y == 1).count(),
        });
    }
    report
        .write(&args.out)
        .map_err(|e| CliError::Failed(e.to_string()))?;
    Ok(report)
}

pub fn cmd_serve_mock(args: &ServeArgs) -> Result<(), CliError> {
    let profile = MockProfile::named(&args.profile)
        .ok_or_else(|| CliError::Config(format!("unknown mock profile '{}'", args.profile)))?;
    let mut tasks = Vec::new();
    for p in &args.tasks {
        tasks.extend(load_tasks(p)?);
    }
    let handle = serve(Arc::new(MockBackend::new(profile, &tasks)), &args.addr)
        .map_err(|e| CliError::Config(format!("cannot bind {}: {e}", args.addr)))?;
    println!("serving {} on {}", args.profile, handle.url());
    handle.join();
    Ok(())
}

pub fn cmd_conformance(args: &ConformanceArgs) -> Result<(), CliError> {
    let (backend, tag) = connect(&args.backend, &[])?;
    let checks = conformance::run(&*backend);
    for c in &checks {
        let status = if c.passed { "PASS" } else { "FAIL" };
        if c.detail.is_empty() {
            println!("{status} {}", c.name);
        } else {
            println!("{status} {}: {}", c.name, c.detail);
        }
    }
    let failed = checks.iter().filter(|c| !c.passed).count();
    if failed > 0 {
        return Err(CliError::Failed(format!(
            "{tag}: {failed} conformance checks failed"
        )));
    }
    Ok(())
}
