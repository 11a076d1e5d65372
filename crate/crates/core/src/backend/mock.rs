//! Deterministic in-process model used for tests, demos and the conformance
//! suite. It looks tasks up by prompt, decides per task whether it "knows"
//! the answer, follows the mode and prefill policy, emits plan-following tool
//! calls, and plants a label-correlated direction in its hidden states.

use std::collections::{HashMap, HashSet};
use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};
use sha2::{Digest, Sha256};
use when2tool_tools::AnswerValue;

use super::{
    count_tokens, Backend, BackendError, BackendRequest, BackendResponse, HiddenFeatures,
    ModelMeta, Role, Usage,
};
use crate::agent::{Mode, PrefillKind, PromptMode};
use crate::taskgen::{resolved_calls, Category, Task};

/// Tool-call probability for a mode, split by whether the model can answer
/// the task unaided: `[knows, does_not_know]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CallPolicy {
    pub force: [f64; 2],
    pub default: [f64; 2],
    pub necessary: [f64; 2],
    pub sparse: [f64; 2],
    pub no_tool: [f64; 2],
    pub reason_then_act: [f64; 2],
}

impl CallPolicy {
    fn rate(&self, mode: PromptMode, knows: bool) -> f64 {
        let pair = if mode.reason_then_act && mode.mode != Mode::Force && mode.mode != Mode::NoTool
        {
            self.reason_then_act
        } else {
            match mode.mode {
                Mode::Force => self.force,
                Mode::Default => self.default,
                Mode::Necessary => self.necessary,
                Mode::Sparse => self.sparse,
                Mode::NoTool => self.no_tool,
            }
        };
        if knows {
            pair[0]
        } else {
            pair[1]
        }
    }
}

/// Probability of knowing the answer, indexed by difficulty, for each task
/// family.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Competence {
    pub scale: [f64; 3],
    pub knowledge: [f64; 3],
    pub execution: [f64; 3],
    pub multi_hop: [f64; 3],
}

impl Competence {
    fn get(&self, task: &Task) -> f64 {
        let row = if task.env_name.is_multi_hop() {
            self.multi_hop
        } else {
            match task.category {
                Category::Scale => self.scale,
                Category::Knowledge => self.knowledge,
                Category::Execution => self.execution,
            }
        };
        row[task.difficulty.index()]
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MockProfile {
    pub name: String,
    pub seed: u64,
    pub layer_count: usize,
    pub hidden_dim: usize,
    /// Distance between the two class means at the deepest layer, in noise
    /// standard deviations. Shallower layers get a linearly smaller share and
    /// layer 0 is constant.
    pub signal: f32,
    pub competence: Competence,
    pub policy: CallPolicy,
    /// Chance of continuing in the direction a soft prefill suggests.
    pub soft_compliance: f64,
    /// Chance that a tool-assisted answer comes out right.
    pub tool_accuracy: f64,
    /// Under reason-then-act, describe the tool call in prose instead of
    /// emitting it.
    pub narrates_tools: bool,
}

impl MockProfile {
    pub const NAMES: [&'static str; 4] =
        ["oracle-signal", "planted-signal", "no-signal", "llama-like"];

    fn base(name: &str) -> Self {
        MockProfile {
            name: name.to_string(),
            seed: 7,
            layer_count: 4,
            hidden_dim: 128,
            signal: 4.0,
            competence: Competence {
                scale: [0.95, 0.5, 0.08],
                knowledge: [0.9, 0.6, 0.0],
                execution: [0.9, 0.55, 0.15],
                multi_hop: [0.7, 0.25, 0.03],
            },
            policy: CallPolicy {
                force: [1.0, 1.0],
                default: [0.6, 0.9],
                necessary: [0.3, 0.8],
                sparse: [0.15, 0.6],
                no_tool: [0.0, 0.05],
                reason_then_act: [0.1, 0.9],
            },
            soft_compliance: 0.9,
            tool_accuracy: 0.97,
            narrates_tools: false,
        }
    }

    pub fn named(name: &str) -> Option<Self> {
        Some(match name {
            "oracle-signal" => MockProfile {
                signal: 12.0,
                soft_compliance: 1.0,
                ..Self::base(name)
            },
            "planted-signal" => Self::base(name),
            "no-signal" => MockProfile {
                signal: 0.0,
                ..Self::base(name)
            },
            "llama-like" => MockProfile {
                signal: 3.0,
                soft_compliance: 0.6,
                narrates_tools: true,
                policy: CallPolicy {
                    default: [0.35, 0.55],
                    necessary: [0.2, 0.4],
                    sparse: [0.1, 0.3],
                    ..Self::base(name).policy
                },
                ..Self::base(name)
            },
            _ => return None,
        })
    }

    pub fn model_name(&self) -> String {
        format!("mock-{}", self.name)
    }
}

impl Default for MockProfile {
    fn default() -> Self {
        Self::base("planted-signal")
    }
}

#[derive(Debug, Clone)]
pub struct MockBackend {
    profile: MockProfile,
    tasks: HashMap<String, Arc<Task>>,
    failing: HashSet<String>,
    directions: Vec<Vec<f32>>,
}

impl MockBackend {
    pub fn new(profile: MockProfile, tasks: &[Task]) -> Self {
        let directions = unit_directions(&profile);
        let mut mock = MockBackend {
            profile,
            tasks: HashMap::new(),
            failing: HashSet::new(),
            directions,
        };
        mock.register(tasks);
        mock
    }

    pub fn register(&mut self, tasks: &[Task]) {
        for t in tasks {
            self.tasks.insert(t.prompt.clone(), Arc::new(t.clone()));
        }
    }

    /// Requests for these task ids fail with a transport error.
    pub fn failing_on<I: IntoIterator<Item = String>>(mut self, task_ids: I) -> Self {
        self.failing.extend(task_ids);
        self
    }

    pub fn profile(&self) -> &MockProfile {
        &self.profile
    }

    /// Whether the mock answers `task` correctly without tools. This is the
    /// ground truth behind its no-tool labels; over a cell it holds with
    /// probability equal to the cell's competence.
    pub fn knows(&self, task: &Task) -> bool {
        let p = &self.profile;
        unit(p.seed, &["knows", &task.task_id]) < p.competence.get(task)
    }

    /// Hidden state for a prompt whose no-tool answer would be wrong
    /// (`needs_tool`) or right.
    pub fn hidden_for(&self, prompt: &str, needs_tool: bool) -> Vec<f32> {
        let p = &self.profile;
        let mut rng = ChaCha8Rng::seed_from_u64(hash64(p.seed, &["hidden", prompt]));
        let m = if needs_tool { 0.5f32 } else { -0.5 };
        let mut out = Vec::with_capacity(p.layer_count * p.hidden_dim);
        for l in 0..p.layer_count {
            if l == 0 {
                out.extend(std::iter::repeat_n(0.25f32, p.hidden_dim));
                continue;
            }
            let depth = l as f32 / (p.layer_count - 1).max(1) as f32;
            let shift = m * p.signal * depth;
            for i in 0..p.hidden_dim {
                let noise: f32 = StandardNormal.sample(&mut rng);
                out.push(noise + shift * self.directions[l][i]);
            }
        }
        out
    }

    fn respond(&self, request: &BackendRequest, task: Option<&Task>) -> String {
        let system = request
            .messages
            .iter()
            .find(|m| m.role == Role::System)
            .map_or("", |m| m.content.as_str());
        let mode = PromptMode::from_system(system);
        let tool_turns = request
            .messages
            .iter()
            .filter(|m| m.role == Role::Tool)
            .count();
        let prefill = request.assistant_prefill.clone().unwrap_or_default();
        let Some(task) = task else {
            return format!("{prefill}I do not recognise this task. \\boxed{{unknown}}");
        };
        let id = task.task_id.as_str();
        let knows = self.knows(task);
        let calls = resolved_calls(task).unwrap_or_default();
        let p = &self.profile;

        if tool_turns > 0 {
            return match calls.get(tool_turns) {
                Some((name, args)) => call_json(name, args),
                None => {
                    let right = unit(p.seed, &["tool-accuracy", id]) < p.tool_accuracy;
                    format!(
                        "Based on the tool results, the answer is \\boxed{{{}}}.",
                        answer_text(task, right, p.seed)
                    )
                }
            };
        }

        let kind = PrefillKind::from_text(&prefill);
        match kind {
            PrefillKind::HardDirect => {
                return format!("{prefill}{}}}", answer_text(task, knows, p.seed))
            }
            PrefillKind::HardTool => {
                let Some((name, args)) = calls.first() else {
                    return format!("{prefill} null}}");
                };
                let full = call_json(name, args);
                return format!("{prefill}{}", &full[HARD_TOOL_LEN..]);
            }
            _ => {}
        }
        let soft = match kind {
            PrefillKind::SoftDirect => Some(false),
            PrefillKind::SoftTool => Some(true),
            _ => None,
        };
        let use_tool = match soft {
            Some(route) if unit(p.seed, &["comply", id]) < p.soft_compliance => route,
            _ => unit(p.seed, &["route", id, &mode.to_string()]) < p.policy.rate(mode, knows),
        };
        let lead = if prefill.is_empty() {
            String::new()
        } else {
            format!("{prefill} ")
        };
        let reflect = if mode.reason_then_act {
            "Let me first decide whether I need a tool. "
        } else {
            ""
        };
        if !use_tool || calls.is_empty() {
            return format!(
                "{lead}{reflect}The answer is \\boxed{{{}}}.",
                answer_text(task, knows, p.seed)
            );
        }
        let (name, args) = &calls[0];
        if mode.reason_then_act && p.narrates_tools {
            let described: Vec<String> = args.iter().map(|(k, v)| format!("{k} = {v}")).collect();
            return format!(
                "{lead}{reflect}I should use the {name} tool with {}. My best estimate is \\boxed{{{}}}.",
                described.join(", "),
                answer_text(task, knows, p.seed)
            );
        }
        format!("{lead}{reflect}{}", call_json(name, args))
    }
}

const HARD_TOOL_LEN: usize = "{\"name\":".len();

/// `{"name": ..., "arguments": ...}` with the name first, as the hard tool
/// prefill expects.
fn call_json(name: &str, args: &Map<String, Value>) -> String {
    format!(
        "{{\"name\": {}, \"arguments\": {}}}",
        Value::String(name.into()),
        Value::Object(args.clone())
    )
}

fn answer_text(task: &Task, right: bool, seed: u64) -> String {
    if right {
        return task.expected_answer.render();
    }
    let bump = 1 + (hash64(seed, &["wrong", &task.task_id]) % 9) as i64;
    match &task.expected_answer {
        AnswerValue::Integer(v) => (v + bump).to_string(),
        AnswerValue::Decimal { value, .. } => match value.parse::<f64>() {
            Ok(x) => format!("{:.3}", x + bump as f64),
            Err(_) => "0".into(),
        },
        AnswerValue::Boolean(b) => if *b { "False" } else { "True" }.into(),
        _ => "I am not sure".into(),
    }
}

fn hash64(seed: u64, parts: &[&str]) -> u64 {
    let mut h = Sha256::new();
    h.update(seed.to_le_bytes());
    for p in parts {
        h.update((p.len() as u64).to_le_bytes());
        h.update(p.as_bytes());
    }
    let d = h.finalize();
    u64::from_le_bytes(d[..8].try_into().expect("digest is 32 bytes"))
}

/// Uniform draw in [0, 1) keyed by `parts`.
fn unit(seed: u64, parts: &[&str]) -> f64 {
    (hash64(seed, parts) >> 11) as f64 / (1u64 << 53) as f64
}

fn unit_directions(p: &MockProfile) -> Vec<Vec<f32>> {
    let mut rng = ChaCha8Rng::seed_from_u64(hash64(p.seed, &["directions"]));
    (0..p.layer_count)
        .map(|_| {
            let v: Vec<f32> = (0..p.hidden_dim)
                .map(|_| StandardNormal.sample(&mut rng))
                .collect();
            let norm = v
                .iter()
                .map(|x| x * x)
                .sum::<f32>()
                .sqrt()
                .max(f32::EPSILON);
            v.into_iter().map(|x| x / norm).collect()
        })
        .collect()
}

impl Backend for MockBackend {
    fn generate(&self, request: &BackendRequest) -> Result<BackendResponse, BackendError> {
        if request.messages.is_empty() {
            return Err(BackendError::InvalidRequest("no messages".into()));
        }
        let prompt = request
            .messages
            .iter()
            .find(|m| m.role == Role::User)
            .map(|m| m.content.as_str());
        let task = prompt.and_then(|p| self.tasks.get(p)).map(Arc::as_ref);
        let task_id = request
            .task_id
            .clone()
            .or_else(|| task.map(|t| t.task_id.clone()));
        if task_id.as_ref().is_some_and(|id| self.failing.contains(id)) {
            return Err(BackendError::Transport("injected failure".into()));
        }
        let text = self.respond(request, task);
        let hidden = request.want_hidden_states.then(|| {
            let p = &self.profile;
            let needs_tool = task.map_or_else(
                || unit(p.seed, &["class", prompt.unwrap_or("")]) < 0.5,
                |t| !self.knows(t),
            );
            HiddenFeatures {
                values: self.hidden_for(prompt.unwrap_or(""), needs_tool),
                layer_count: p.layer_count,
                hidden_dim: p.hidden_dim,
                task_id: task_id.clone(),
            }
        });
        let prompt_tokens = request
            .messages
            .iter()
            .map(|m| count_tokens(&m.content))
            .sum();
        Ok(BackendResponse {
            usage: Usage {
                prompt_tokens,
                completion_tokens: count_tokens(&text),
            },
            text,
            hidden,
            model_meta: self.meta(),
        })
    }

    fn meta(&self) -> ModelMeta {
        ModelMeta {
            model: self.profile.model_name(),
            layer_count: self.profile.layer_count,
            hidden_dim: self.profile.hidden_dim,
            deterministic: true,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::agent::{build_prompt, run_task, Limits, PrefillDirective};
    use crate::taskgen::{generate_env_tasks, Difficulty, EnvName, Split, FIXTURE_SEED};

    fn tasks(env: EnvName) -> Vec<Task> {
        generate_env_tasks(env, Difficulty::Easy, Split::Test, 8, FIXTURE_SEED).unwrap()
    }

    #[test]
    fn named_profiles_exist() {
        for n in MockProfile::NAMES {
            assert_eq!(MockProfile::named(n).unwrap().name, n);
        }
        assert!(MockProfile::named("gpt").is_none());
    }

    #[test]
    fn hard_prefills_force_the_route() {
        let ts = tasks(EnvName::CalculatorEnv);
        let mock = MockBackend::new(MockProfile::default(), &ts);
        let t = &ts[0];
        let direct = run_task(
            t,
            PromptMode::new(Mode::Force),
            &PrefillDirective::new(PrefillKind::HardDirect),
            &mock,
            Limits::for_task(t),
        );
        assert_eq!(direct.tool_call_count, 0);
        assert!(direct.final_output.starts_with("\\boxed{"));
        let tool = run_task(
            t,
            PromptMode::new(Mode::NoTool),
            &PrefillDirective::new(PrefillKind::HardTool),
            &mock,
            Limits::for_task(t),
        );
        assert!(tool.final_output.starts_with("{\"name\":"));
        assert_eq!(tool.refused_call_count, 1);
    }

    #[test]
    fn tool_route_follows_the_plan_to_the_answer() {
        let ts = tasks(EnvName::ChainedCalculatorEnv);
        let mock = MockBackend::new(
            MockProfile {
                tool_accuracy: 1.0,
                ..MockProfile::default()
            },
            &ts,
        );
        for t in &ts {
            let tr = run_task(
                t,
                PromptMode::new(Mode::Force),
                &PrefillDirective::none(),
                &mock,
                Limits::for_task(t),
            );
            assert_eq!(tr.tool_call_count, t.solution.len(), "{}", t.task_id);
            assert!(tr.judgment.correct, "{}: {}", t.task_id, tr.final_output);
        }
    }

    #[test]
    fn no_tool_correctness_matches_knows() {
        let ts = tasks(EnvName::StatisticsEnv);
        let mock = MockBackend::new(
            MockProfile {
                policy: CallPolicy {
                    no_tool: [0.0, 0.0],
                    ..MockProfile::default().policy
                },
                ..MockProfile::default()
            },
            &ts,
        );
        for t in &ts {
            let tr = run_task(
                t,
                PromptMode::new(Mode::NoTool),
                &PrefillDirective::none(),
                &mock,
                Limits::for_task(t),
            );
            assert_eq!(tr.judgment.correct, mock.knows(t), "{}", tr.final_output);
        }
    }

    #[test]
    fn narrating_profile_makes_no_calls_under_reasoning() {
        let ts = tasks(EnvName::CalculatorEnv);
        let mut p = MockProfile::named("llama-like").unwrap();
        p.policy.reason_then_act = [1.0, 1.0];
        let mock = MockBackend::new(p, &ts);
        let t = &ts[0];
        let tr = run_task(
            t,
            PromptMode::reasoning(Mode::Default),
            &PrefillDirective::none(),
            &mock,
            Limits::for_task(t),
        );
        assert_eq!(tr.tool_call_count, 0);
        assert!(tr.final_output.contains("I should use the"));
    }

    #[test]
    fn hidden_states_are_deterministic_and_shaped() {
        let ts = tasks(EnvName::CalculatorEnv);
        let mock = MockBackend::new(
            MockProfile {
                hidden_dim: 8,
                ..MockProfile::default()
            },
            &ts,
        );
        let mut req = BackendRequest::new(build_prompt(&ts[0], PromptMode::new(Mode::Default)));
        req.want_hidden_states = true;
        let a = mock.generate(&req).unwrap();
        let b = mock.generate(&req).unwrap();
        assert_eq!(a, b);
        let h = a.hidden.unwrap();
        h.validate().unwrap();
        assert_eq!((h.layer_count, h.hidden_dim), (4, 8));
        assert!(h.layer(0).iter().all(|v| *v == 0.25));
    }

    #[test]
    fn injected_failures_surface_as_errors() {
        let ts = tasks(EnvName::CalculatorEnv);
        let mock =
            MockBackend::new(MockProfile::default(), &ts).failing_on([ts[1].task_id.clone()]);
        let tr = run_task(
            &ts[1],
            PromptMode::new(Mode::Default),
            &PrefillDirective::none(),
            &mock,
            Limits::for_task(&ts[1]),
        );
        assert!(tr.errored());
        assert!(!run_task(
            &ts[0],
            PromptMode::new(Mode::Default),
            &PrefillDirective::none(),
            &mock,
            Limits::for_task(&ts[0])
        )
        .errored());
    }
}
