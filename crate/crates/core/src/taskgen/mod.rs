//! Deterministic generation of the single-hop and multi-hop task suites.
//!
//! Every task carries its own tool specs, environment payload and a
//! solution plan. Executing the plan with the task's tools must reproduce
//! the expected answer (see [`plan::check_oracle_closure`]).

mod chained;
mod execution;
mod fixtures;
mod knowledge;
mod names;
pub mod plan;
mod pools;
mod scale;
pub mod seed;
mod text;

use std::collections::{BTreeMap, HashSet};
use std::fmt;
use std::io::{BufRead, Write};
use std::path::Path;
use std::str::FromStr;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use when2tool_tools::{specs_for, AnswerKind, AnswerValue, EnvState, ToolSpec, Toolset};

pub use plan::{
    check_oracle_closure, execute_plan, resolved_calls, PlanError, PlanStep, Projection,
    ResolvedCall,
};

pub const BENCHMARK_VERSION: &str = "when2tool-1.0";

/// Global seed under which test index 0 of every (env, difficulty) is the
/// worked example from the environment documentation.
pub const FIXTURE_SEED: u64 = 0x5EED_F1C5;

pub const DEFAULT_TRAIN_PER_DIFFICULTY: usize = 20;
pub const DEFAULT_TEST_PER_DIFFICULTY: usize = 50;

/// Random-draw budget per task before generation gives up.
const MAX_ATTEMPTS: usize = 20_000;

#[derive(Debug, thiserror::Error)]
pub enum TaskgenError {
    #[error("unknown environment '{0}'")]
    UnknownEnv(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("{env} {difficulty}: pool of {available} items cannot supply {needed} {split} tasks")]
    PoolExhausted {
        env: EnvName,
        difficulty: Difficulty,
        split: Split,
        needed: usize,
        available: usize,
    },
    #[error("{env} {difficulty}: no fresh prompt after {MAX_ATTEMPTS} draws")]
    DrawBudget {
        env: EnvName,
        difficulty: Difficulty,
    },
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error("malformed task file: {0}")]
    Format(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Category {
    #[serde(rename = "A-scale")]
    Scale,
    #[serde(rename = "B-knowledge")]
    Knowledge,
    #[serde(rename = "C-execution")]
    Execution,
}

impl Category {
    pub const ALL: [Category; 3] = [Category::Scale, Category::Knowledge, Category::Execution];

    pub fn as_str(self) -> &'static str {
        match self {
            Category::Scale => "A-scale",
            Category::Knowledge => "B-knowledge",
            Category::Execution => "C-execution",
        }
    }

    /// The five single-hop environments of this category.
    pub fn single_hop_envs(self) -> [EnvName; 5] {
        let mut out = [EnvName::CalculatorEnv; 5];
        let envs = EnvName::SINGLE_HOP.iter().filter(|e| e.category() == self);
        for (slot, env) in out.iter_mut().zip(envs) {
            *slot = *env;
        }
        out
    }
}

impl fmt::Display for Category {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Category {
    type Err = TaskgenError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "a-scale" | "a" | "scale" => Ok(Category::Scale),
            "b-knowledge" | "b" | "knowledge" => Ok(Category::Knowledge),
            "c-execution" | "c" | "execution" => Ok(Category::Execution),
            _ => Err(TaskgenError::InvalidArgument(format!(
                "unknown category '{s}'"
            ))),
        }
    }
}

macro_rules! envs {
    ($($name:ident => $cat:ident, $toolset:ident;)*) => {
        #[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
        pub enum EnvName {
            $($name,)*
        }

        impl EnvName {
            pub const ALL: [EnvName; 18] = [$(EnvName::$name,)*];

            pub fn as_str(self) -> &'static str {
                match self {
                    $(EnvName::$name => stringify!($name),)*
                }
            }

            pub fn category(self) -> Category {
                match self {
                    $(EnvName::$name => Category::$cat,)*
                }
            }

            pub fn toolset(self) -> Toolset {
                match self {
                    $(EnvName::$name => Toolset::$toolset,)*
                }
            }
        }

        impl FromStr for EnvName {
            type Err = TaskgenError;

            fn from_str(s: &str) -> Result<Self, Self::Err> {
                match s {
                    $(stringify!($name) => Ok(EnvName::$name),)*
                    other => Err(TaskgenError::UnknownEnv(other.to_string())),
                }
            }
        }
    };
}

envs! {
    CalculatorEnv => Scale, Calculator;
    StatisticsEnv => Scale, Statistics;
    CountingEnv => Scale, Counting;
    MatrixEnv => Scale, Matrix;
    PrimeEnv => Scale, Prime;
    RetrieverEnv => Knowledge, Retriever;
    HistoricalYearEnv => Knowledge, HistoricalYear;
    GameRuleEnv => Knowledge, GameRule;
    HashEnv => Knowledge, Hash;
    DecodingEnv => Knowledge, Decoding;
    ListManipulationEnv => Execution, ListManipulation;
    DateTimeEnv => Execution, DateTime;
    CodeExecutorEnv => Execution, CodeExecutor;
    ScheduleEnv => Execution, Schedule;
    RegexMatchEnv => Execution, RegexMatch;
    ChainedCalculatorEnv => Scale, Calculator;
    ChainedRetrieverEnv => Knowledge, Retriever;
    ChainedCodeExecutorEnv => Execution, ChainedCode;
}

impl EnvName {
    pub const SINGLE_HOP: [EnvName; 15] = {
        let mut out = [EnvName::CalculatorEnv; 15];
        let mut i = 0;
        while i < 15 {
            out[i] = EnvName::ALL[i];
            i += 1;
        }
        out
    };

    pub const MULTI_HOP: [EnvName; 3] = [
        EnvName::ChainedCalculatorEnv,
        EnvName::ChainedRetrieverEnv,
        EnvName::ChainedCodeExecutorEnv,
    ];

    pub fn is_multi_hop(self) -> bool {
        Self::MULTI_HOP.contains(&self)
    }

    /// Environments whose hard tier asks about fictional entities that only
    /// exist in the task's env_state.
    pub fn has_fictional_hard_tier(self) -> bool {
        matches!(
            self,
            EnvName::RetrieverEnv
                | EnvName::HistoricalYearEnv
                | EnvName::GameRuleEnv
                | EnvName::ChainedRetrieverEnv
        )
    }
}

impl fmt::Display for EnvName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Difficulty {
    Easy,
    Medium,
    Hard,
}

impl Difficulty {
    pub const ALL: [Difficulty; 3] = [Difficulty::Easy, Difficulty::Medium, Difficulty::Hard];

    pub fn as_str(self) -> &'static str {
        match self {
            Difficulty::Easy => "easy",
            Difficulty::Medium => "medium",
            Difficulty::Hard => "hard",
        }
    }

    pub fn index(self) -> usize {
        self as usize
    }
}

impl fmt::Display for Difficulty {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Difficulty {
    type Err = TaskgenError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "easy" => Ok(Difficulty::Easy),
            "medium" => Ok(Difficulty::Medium),
            "hard" => Ok(Difficulty::Hard),
            _ => Err(TaskgenError::InvalidArgument(format!(
                "unknown difficulty '{s}'"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Split {
    Train,
    Test,
}

impl Split {
    pub const ALL: [Split; 2] = [Split::Train, Split::Test];

    pub fn as_str(self) -> &'static str {
        match self {
            Split::Train => "train",
            Split::Test => "test",
        }
    }

    pub fn index(self) -> usize {
        self as usize
    }
}

impl fmt::Display for Split {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Split {
    type Err = TaskgenError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "train" => Ok(Split::Train),
            "test" => Ok(Split::Test),
            _ => Err(TaskgenError::InvalidArgument(format!(
                "unknown split '{s}'"
            ))),
        }
    }
}

/// One benchmark item. Field order is the canonical serialized key order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Task {
    pub task_id: String,
    pub env_name: EnvName,
    pub category: Category,
    pub difficulty: Difficulty,
    pub split: Split,
    pub prompt: String,
    pub expected_answer: AnswerValue,
    pub answer_kind: AnswerKind,
    pub tool_specs: Vec<ToolSpec>,
    pub env_state: EnvState,
    pub seed: u64,
    /// Designated tool sequence that reproduces the expected answer.
    pub solution: Vec<PlanStep>,
    /// Correct output of every hop but the last, for chained tasks.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub hop_answers: Vec<AnswerValue>,
}

impl Task {
    pub fn canonical_json(&self) -> String {
        serde_json::to_string(self).expect("tasks always serialize")
    }
}

/// What an environment generator produces before ids and seeds are attached.
#[derive(Debug, Clone)]
pub(crate) struct Draft {
    pub prompt: String,
    pub expected: AnswerValue,
    pub state: EnvState,
    pub plan: Vec<PlanStep>,
    pub hops: Vec<AnswerValue>,
}

impl Draft {
    pub fn new(prompt: impl Into<String>, expected: AnswerValue, plan: Vec<PlanStep>) -> Self {
        Draft {
            prompt: prompt.into(),
            expected,
            state: EnvState::None,
            plan,
            hops: Vec::new(),
        }
    }

    pub fn with_state(mut self, state: EnvState) -> Self {
        self.state = state;
        self
    }

    pub fn with_hops(mut self, hops: Vec<AnswerValue>) -> Self {
        self.hops = hops;
        self
    }
}

/// How an (environment, difficulty) cell is populated.
pub(crate) enum Source {
    /// Fresh random draws, filtered to the cell's hash zone.
    Random(fn(&mut ChaCha8Rng) -> Draft),
    /// A finite list of items, dealt from a seeded permutation.
    Pool {
        size: usize,
        draw: fn(usize, &mut ChaCha8Rng) -> Draft,
    },
}

fn source(env: EnvName, difficulty: Difficulty) -> Source {
    match env.category() {
        _ if env.is_multi_hop() => chained::source(env, difficulty),
        Category::Scale => scale::source(env, difficulty),
        Category::Knowledge => knowledge::source(env, difficulty),
        Category::Execution => execution::source(env, difficulty),
    }
}

/// Number of permutation slots reserved for the train split of pool cells;
/// test items are dealt from the slots after it.
pub const POOL_TRAIN_SLOTS: usize = DEFAULT_TRAIN_PER_DIFFICULTY;

/// Per-environment task counts for one difficulty.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnvCounts {
    pub train: usize,
    pub test: usize,
}

impl EnvCounts {
    pub fn get(&self, split: Split) -> usize {
        match split {
            Split::Train => self.train,
            Split::Test => self.test,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BenchmarkManifest {
    pub version: String,
    pub global_seed: u64,
    pub envs: Vec<EnvName>,
    /// Counts per environment and difficulty.
    pub counts: BTreeMap<EnvName, BTreeMap<Difficulty, EnvCounts>>,
}

impl BenchmarkManifest {
    pub fn uniform(global_seed: u64, envs: &[EnvName], train: usize, test: usize) -> Self {
        let counts = envs
            .iter()
            .map(|e| {
                (
                    *e,
                    Difficulty::ALL
                        .iter()
                        .map(|d| (*d, EnvCounts { train, test }))
                        .collect(),
                )
            })
            .collect();
        BenchmarkManifest {
            version: BENCHMARK_VERSION.to_string(),
            global_seed,
            envs: envs.to_vec(),
            counts,
        }
    }

    pub fn single_hop(global_seed: u64) -> Self {
        Self::uniform(
            global_seed,
            &EnvName::SINGLE_HOP,
            DEFAULT_TRAIN_PER_DIFFICULTY,
            DEFAULT_TEST_PER_DIFFICULTY,
        )
    }

    pub fn multi_hop(global_seed: u64) -> Self {
        Self::uniform(
            global_seed,
            &EnvName::MULTI_HOP,
            DEFAULT_TRAIN_PER_DIFFICULTY,
            DEFAULT_TEST_PER_DIFFICULTY,
        )
    }

    pub fn full(global_seed: u64) -> Self {
        Self::uniform(
            global_seed,
            &EnvName::ALL,
            DEFAULT_TRAIN_PER_DIFFICULTY,
            DEFAULT_TEST_PER_DIFFICULTY,
        )
    }

    pub fn count(&self, env: EnvName, difficulty: Difficulty, split: Split) -> usize {
        self.counts
            .get(&env)
            .and_then(|m| m.get(&difficulty))
            .map_or(0, |c| c.get(split))
    }

    pub fn total(&self, split: Split) -> usize {
        self.counts
            .values()
            .flat_map(|m| m.values())
            .map(|c| c.get(split))
            .sum()
    }

    /// Parses an environment list given by name, rejecting unknown names.
    pub fn parse_envs<S: AsRef<str>>(names: &[S]) -> Result<Vec<EnvName>, TaskgenError> {
        names.iter().map(|n| n.as_ref().parse()).collect()
    }
}

/// Generates every task the manifest asks for, ordered by environment (as
/// listed), difficulty, split and index.
pub fn generate_benchmark(
    global_seed: u64,
    manifest: &BenchmarkManifest,
) -> Result<Vec<Task>, TaskgenError> {
    if manifest.envs.is_empty() {
        return Err(TaskgenError::InvalidArgument(
            "manifest lists no environments".into(),
        ));
    }
    let mut out = Vec::with_capacity(manifest.total(Split::Train) + manifest.total(Split::Test));
    for &env in &manifest.envs {
        for difficulty in Difficulty::ALL {
            for split in Split::ALL {
                let count = manifest.count(env, difficulty, split);
                if count == 0 {
                    return Err(TaskgenError::InvalidArgument(format!(
                        "{env} {difficulty} {split}: counts must be positive"
                    )));
                }
                out.extend(generate_env_tasks(
                    env,
                    difficulty,
                    split,
                    count,
                    global_seed,
                )?);
            }
        }
    }
    Ok(out)
}

/// Generates `count` tasks for one cell. Output depends only on the
/// arguments, so cells can be generated independently or in parallel.
pub fn generate_env_tasks(
    env: EnvName,
    difficulty: Difficulty,
    split: Split,
    count: usize,
    global_seed: u64,
) -> Result<Vec<Task>, TaskgenError> {
    if count == 0 {
        return Err(TaskgenError::InvalidArgument(
            "count must be positive".into(),
        ));
    }
    let fixture_mode = global_seed == FIXTURE_SEED;
    let reserved: HashSet<String> = fixtures::prompts(env).into_iter().collect();
    let mut seen: HashSet<String> = HashSet::new();
    let mut out = Vec::with_capacity(count);

    match source(env, difficulty) {
        Source::Random(draw) => {
            let zone = seed::zone_of(difficulty, split);
            for index in 0..count {
                let task_seed = seed::task_seed(global_seed, env, difficulty, split, index);
                let fixture = if fixture_mode && split == Split::Test && index == 0 {
                    fixtures::random_fixture(env, difficulty)
                } else {
                    None
                };
                let draft = match fixture {
                    Some(d) => d,
                    None => {
                        let mut rng = ChaCha8Rng::seed_from_u64(task_seed);
                        let mut found = None;
                        for _ in 0..MAX_ATTEMPTS {
                            let d = draw(&mut rng);
                            if seed::prompt_zone(&d.prompt) == zone
                                && !reserved.contains(&d.prompt)
                                && !seen.contains(&d.prompt)
                            {
                                found = Some(d);
                                break;
                            }
                        }
                        found.ok_or(TaskgenError::DrawBudget { env, difficulty })?
                    }
                };
                seen.insert(draft.prompt.clone());
                out.push(assemble(env, difficulty, split, index, task_seed, draft));
            }
        }
        Source::Pool { size, draw } => {
            let offset = match split {
                Split::Train => 0,
                Split::Test => POOL_TRAIN_SLOTS,
            };
            if split == Split::Train && count > POOL_TRAIN_SLOTS || offset + count > size {
                return Err(TaskgenError::PoolExhausted {
                    env,
                    difficulty,
                    split,
                    needed: count,
                    available: size,
                });
            }
            let mut perm = seed::permutation(size, seed::pool_seed(global_seed, env, difficulty));
            if fixture_mode {
                if let Some(item) = fixtures::pool_fixture(env, difficulty) {
                    let at = perm
                        .iter()
                        .position(|&p| p == item)
                        .expect("fixture item is in the pool");
                    perm.swap(at, POOL_TRAIN_SLOTS);
                }
            }
            for index in 0..count {
                let task_seed = seed::task_seed(global_seed, env, difficulty, split, index);
                let mut rng = ChaCha8Rng::seed_from_u64(task_seed);
                let draft = draw(perm[offset + index], &mut rng);
                out.push(assemble(env, difficulty, split, index, task_seed, draft));
            }
        }
    }
    Ok(out)
}

fn assemble(
    env: EnvName,
    difficulty: Difficulty,
    split: Split,
    index: usize,
    seed: u64,
    d: Draft,
) -> Task {
    Task {
        task_id: format!("{env}:{difficulty}:{split}:{index}"),
        env_name: env,
        category: env.category(),
        difficulty,
        split,
        prompt: d.prompt,
        answer_kind: d.expected.kind(),
        expected_answer: d.expected,
        tool_specs: specs_for(env.toolset()),
        env_state: d.state,
        seed,
        solution: d.plan,
        hop_answers: d.hops,
    }
}

/// Within-category leave-two-out split: probes train on the three
/// remaining environments and are evaluated on all five.
pub fn make_ood_splits(
    category: Category,
    held_out: &[EnvName],
) -> Result<(Vec<EnvName>, Vec<EnvName>), TaskgenError> {
    let members = category.single_hop_envs();
    let unique: HashSet<EnvName> = held_out.iter().copied().collect();
    if unique.len() != 2 || held_out.len() != 2 {
        return Err(TaskgenError::InvalidArgument(format!(
            "held-out set must name exactly 2 distinct environments, got {}",
            held_out.len()
        )));
    }
    if let Some(bad) = held_out.iter().find(|e| !members.contains(e)) {
        return Err(TaskgenError::InvalidArgument(format!(
            "{bad} is not a single-hop {category} environment"
        )));
    }
    let train = members
        .iter()
        .copied()
        .filter(|e| !unique.contains(e))
        .collect();
    Ok((train, members.to_vec()))
}

pub fn write_jsonl(path: &Path, tasks: &[Task]) -> Result<(), TaskgenError> {
    let mut w = std::io::BufWriter::new(std::fs::File::create(path)?);
    for t in tasks {
        w.write_all(t.canonical_json().as_bytes())?;
        w.write_all(b"\n")?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_jsonl(path: &Path) -> Result<Vec<Task>, TaskgenError> {
    let r = std::io::BufReader::new(std::fs::File::open(path)?);
    let mut out = Vec::new();
    for (i, line) in r.lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let task = serde_json::from_str(&line)
            .map_err(|e| TaskgenError::Format(format!("{}:{}: {e}", path.display(), i + 1)))?;
        out.push(task);
    }
    Ok(out)
}

/// Writes `tasks.train.jsonl`, `tasks.test.jsonl` and `manifest.json` for
/// one manifest into `dir`.
pub fn write_suite(dir: &Path, manifest: &BenchmarkManifest) -> Result<(), TaskgenError> {
    std::fs::create_dir_all(dir)?;
    let tasks = generate_benchmark(manifest.global_seed, manifest)?;
    for split in Split::ALL {
        let part: Vec<Task> = tasks.iter().filter(|t| t.split == split).cloned().collect();
        write_jsonl(&dir.join(format!("tasks.{split}.jsonl")), &part)?;
    }
    let json = serde_json::to_string_pretty(manifest).expect("manifest serializes");
    std::fs::write(dir.join("manifest.json"), json + "\n")?;
    Ok(())
}

#[cfg(test)]
mod tests;
