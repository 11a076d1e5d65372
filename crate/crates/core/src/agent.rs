//! Runs one task against a backend: prompt construction, tool-call parsing,
//! tool execution, prefills and the trajectory record.

use std::fmt;
use std::str::FromStr;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};
use when2tool_tools::{ToolCall, ToolResult, ToolSpec, Toolbox};

use crate::backend::{Backend, BackendRequest, Message, Role, Usage};
use crate::evaluator::{judge_output, Judgment};
use crate::taskgen::{Difficulty, EnvName, Split, Task, BENCHMARK_VERSION};

pub const BASE_INSTRUCTIONS: &str = "You are a helpful assistant that solves tasks step by step.";
pub const FORCE_INSTRUCTION: &str =
    "Tool use is mandatory: you must call at least one tool before giving your final answer.";
pub const NECESSARY_INSTRUCTION: &str =
    "Use a tool only if necessary. If you can solve the task yourself, answer directly.";
pub const SPARSE_INSTRUCTION: &str = "Tool calls are expensive, use them sparingly.";
pub const NO_TOOL_INSTRUCTION: &str = "Do not use any tools. Answer the question directly.";
pub const REASON_INSTRUCTION: &str =
    "Before acting, first reason about whether you can solve this task \
directly or need a tool, then act on your own assessment.";
pub const CALL_FORMAT: &str = "To call a tool, reply with a JSON object of the form \
{\"name\": \"<tool name>\", \"arguments\": {...}}. Tool results are returned in the next message.";
pub const ANSWER_FORMAT: &str = "Put your final answer in \\boxed{}.";

pub const SOFT_DIRECT_TEXT: &str = "I can solve this directly without using a tool.";
pub const SOFT_TOOL_TEXT: &str = "I need to use a tool for this question.";
pub const HARD_DIRECT_TEXT: &str = "\\boxed{";
pub const HARD_TOOL_TEXT: &str = "{\"name\":";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    Force,
    Default,
    Necessary,
    Sparse,
    NoTool,
}

impl Mode {
    pub const ALL: [Mode; 5] = [
        Mode::Force,
        Mode::Default,
        Mode::Necessary,
        Mode::Sparse,
        Mode::NoTool,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Force => "force",
            Mode::Default => "default",
            Mode::Necessary => "necessary",
            Mode::Sparse => "sparse",
            Mode::NoTool => "no_tool",
        }
    }

    pub fn instruction(self) -> Option<&'static str> {
        match self {
            Mode::Force => Some(FORCE_INSTRUCTION),
            Mode::Default => None,
            Mode::Necessary => Some(NECESSARY_INSTRUCTION),
            Mode::Sparse => Some(SPARSE_INSTRUCTION),
            Mode::NoTool => Some(NO_TOOL_INSTRUCTION),
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Mode::ALL
            .into_iter()
            .find(|m| m.as_str() == s.replace('-', "_"))
            .ok_or_else(|| {
                format!("unknown prompt mode '{s}' (force, default, necessary, sparse, no_tool)")
            })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PromptMode {
    pub mode: Mode,
    pub reason_then_act: bool,
}

impl PromptMode {
    pub fn new(mode: Mode) -> Self {
        PromptMode {
            mode,
            reason_then_act: false,
        }
    }

    pub fn reasoning(mode: Mode) -> Self {
        PromptMode {
            mode,
            reason_then_act: true,
        }
    }

    /// Recovers the mode from a system message built by [`build_prompt`].
    pub fn from_system(system: &str) -> Self {
        let mode = [Mode::Force, Mode::Necessary, Mode::Sparse, Mode::NoTool]
            .into_iter()
            .find(|m| m.instruction().is_some_and(|i| system.contains(i)))
            .unwrap_or(Mode::Default);
        PromptMode {
            mode,
            reason_then_act: system.contains(REASON_INSTRUCTION),
        }
    }
}

impl fmt::Display for PromptMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.reason_then_act {
            write!(f, "{}+rta", self.mode)
        } else {
            write!(f, "{}", self.mode)
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PrefillKind {
    None,
    SoftDirect,
    SoftTool,
    HardDirect,
    HardTool,
}

impl PrefillKind {
    pub fn text(self) -> &'static str {
        match self {
            PrefillKind::None => "",
            PrefillKind::SoftDirect => SOFT_DIRECT_TEXT,
            PrefillKind::SoftTool => SOFT_TOOL_TEXT,
            PrefillKind::HardDirect => HARD_DIRECT_TEXT,
            PrefillKind::HardTool => HARD_TOOL_TEXT,
        }
    }

    /// Which prefill a kind's text is, if any.
    pub fn from_text(text: &str) -> PrefillKind {
        [
            PrefillKind::SoftDirect,
            PrefillKind::SoftTool,
            PrefillKind::HardDirect,
            PrefillKind::HardTool,
        ]
        .into_iter()
        .find(|k| k.text() == text)
        .unwrap_or(PrefillKind::None)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrefillDirective {
    pub kind: PrefillKind,
    pub text: String,
}

impl PrefillDirective {
    pub fn new(kind: PrefillKind) -> Self {
        PrefillDirective {
            kind,
            text: kind.text().to_string(),
        }
    }

    pub fn none() -> Self {
        Self::new(PrefillKind::None)
    }

    /// Steering directive for a probe decision.
    pub fn steer(use_tool: bool, hard: bool) -> Self {
        Self::new(match (use_tool, hard) {
            (false, false) => PrefillKind::SoftDirect,
            (true, false) => PrefillKind::SoftTool,
            (false, true) => PrefillKind::HardDirect,
            (true, true) => PrefillKind::HardTool,
        })
    }

    fn prefill(&self) -> Option<String> {
        (self.kind != PrefillKind::None).then(|| self.text.clone())
    }
}

fn render_tools(specs: &[ToolSpec]) -> String {
    let mut out = String::from("Available tools:");
    for s in specs {
        out.push_str(&format!("\n- {}: {}", s.signature(), s.description));
    }
    out
}

/// System message plus the task prompt as the user message.
pub fn build_prompt(task: &Task, mode: PromptMode) -> Vec<Message> {
    let mut parts = vec![BASE_INSTRUCTIONS.to_string()];
    if let Some(i) = mode.mode.instruction() {
        parts.push(i.to_string());
    }
    if mode.reason_then_act {
        parts.push(REASON_INSTRUCTION.to_string());
    }
    if mode.mode != Mode::NoTool {
        parts.push(render_tools(&task.tool_specs));
        parts.push(CALL_FORMAT.to_string());
    }
    parts.push(ANSWER_FORMAT.to_string());
    vec![
        Message::new(Role::System, parts.join("\n\n")),
        Message::new(Role::User, task.prompt.clone()),
    ]
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SkippedCall {
    pub raw: String,
    pub reason: String,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct ParsedCalls {
    pub calls: Vec<ToolCall>,
    pub skipped: Vec<SkippedCall>,
}

/// Every `{"name": ..., "arguments": {...}}` object in `text`, validated
/// against `specs`. Objects naming unknown tools or carrying arguments that
/// fail coercion are skipped and logged.
pub fn parse_tool_calls(text: &str, specs: &[ToolSpec]) -> ParsedCalls {
    let mut out = ParsedCalls::default();
    let mut i = 0;
    while let Some(rel) = text[i..].find('{') {
        let start = i + rel;
        let mut stream = serde_json::Deserializer::from_str(&text[start..]).into_iter::<Value>();
        match stream.next() {
            Some(Ok(Value::Object(obj))) => {
                let end = start + stream.byte_offset();
                let raw = &text[start..end];
                if let Some(call) = call_shape(&obj) {
                    match validate(call, specs) {
                        Ok((name, args)) => out.calls.push(ToolCall {
                            tool_name: name,
                            arguments: args,
                            call_index: out.calls.len(),
                        }),
                        Err(reason) => {
                            tracing::warn!(%reason, call = raw, "skipping tool call");
                            out.skipped.push(SkippedCall {
                                raw: raw.to_string(),
                                reason,
                            });
                        }
                    }
                }
                i = end;
            }
            _ => i = start + 1,
        }
    }
    out
}

fn call_shape(obj: &Map<String, Value>) -> Option<(&str, Map<String, Value>)> {
    let name = obj.get("name")?.as_str()?;
    let args = match obj.get("arguments")? {
        Value::Object(m) => m.clone(),
        Value::String(s) => match serde_json::from_str(s) {
            Ok(Value::Object(m)) => m,
            _ => return None,
        },
        _ => return None,
    };
    Some((name, args))
}

fn validate(
    (name, args): (&str, Map<String, Value>),
    specs: &[ToolSpec],
) -> Result<(String, Map<String, Value>), String> {
    let spec = specs
        .iter()
        .find(|s| s.name == name)
        .ok_or_else(|| format!("unknown tool '{name}'"))?;
    spec.coerce(&args).map_err(|e| e.to_string())?;
    Ok((name.to_string(), args))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Round {
    pub model_text: String,
    pub tool_calls: Vec<ToolCall>,
    pub tool_results: Vec<ToolResult>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub skipped_calls: Vec<SkippedCall>,
}

/// The probe's view of a task when a probe chose the prefill.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ProbeNote {
    pub probability: f64,
    pub tau: f64,
    pub use_tool: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Trajectory {
    pub benchmark_version: String,
    pub task_id: String,
    pub env_name: EnvName,
    pub difficulty: Difficulty,
    pub split: Split,
    pub mode: PromptMode,
    pub prefill_used: PrefillDirective,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub probe: Option<ProbeNote>,
    pub rounds: Vec<Round>,
    /// Every assistant turn, joined by newlines.
    pub final_output: String,
    pub judgment: Judgment,
    /// Executed calls: parsed, naming a known tool, with valid arguments.
    pub tool_call_count: usize,
    /// Calls parsed in no-tool mode and deliberately not executed.
    pub refused_call_count: usize,
    pub token_usage: Usage,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl Trajectory {
    pub fn errored(&self) -> bool {
        self.error.is_some()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Limits {
    pub max_rounds: usize,
    pub max_tokens: u32,
}

impl Limits {
    pub fn for_task(task: &Task) -> Self {
        Limits {
            max_rounds: if task.env_name.is_multi_hop() { 10 } else { 6 },
            max_tokens: 1024,
        }
    }
}

fn render_results(calls: &[ToolCall], results: &[ToolResult]) -> String {
    let lines: Vec<String> = calls
        .iter()
        .zip(results)
        .map(|(c, r)| format!("[{}] {}: {}", c.call_index + 1, c.tool_name, r.payload))
        .collect();
    format!("Tool results:\n{}", lines.join("\n"))
}

pub fn run_task(
    task: &Task,
    mode: PromptMode,
    prefill: &PrefillDirective,
    backend: &dyn Backend,
    limits: Limits,
) -> Trajectory {
    let mut messages = build_prompt(task, mode);
    let mut toolbox = Toolbox::new(task.tool_specs.clone(), &task.env_state);
    let mut rounds = Vec::new();
    let mut turns: Vec<String> = Vec::new();
    let mut usage = Usage::default();
    let mut executed = 0;
    let mut refused = 0;
    let mut error = None;

    for r in 0..limits.max_rounds {
        let mut request = BackendRequest::new(messages.clone());
        request.max_tokens = limits.max_tokens;
        request.task_id = Some(task.task_id.clone());
        if r == 0 {
            request.assistant_prefill = prefill.prefill();
        }
        let response = match backend.generate(&request) {
            Ok(resp) => resp,
            Err(e) => {
                tracing::warn!(task = %task.task_id, error = %e, "backend failure");
                error = Some(e.to_string());
                break;
            }
        };
        usage.prompt_tokens += response.usage.prompt_tokens;
        usage.completion_tokens += response.usage.completion_tokens;
        let mut text = response.text;
        if let Some(p) = &request.assistant_prefill {
            if !text.starts_with(p.as_str()) {
                tracing::warn!(task = %task.task_id, "backend dropped the prefill; restoring it");
                text = format!("{p}{text}");
            }
        }
        let parsed = parse_tool_calls(&text, &task.tool_specs);
        turns.push(text.clone());
        if mode.mode == Mode::NoTool || parsed.calls.is_empty() {
            refused += if mode.mode == Mode::NoTool {
                parsed.calls.len()
            } else {
                0
            };
            rounds.push(Round {
                model_text: text,
                tool_calls: parsed.calls,
                tool_results: vec![],
                skipped_calls: parsed.skipped,
            });
            break;
        }
        let results: Vec<ToolResult> = parsed.calls.iter().map(|c| toolbox.execute(c)).collect();
        executed += parsed.calls.len();
        messages.push(Message::new(Role::Assistant, text.clone()));
        messages.push(Message::new(
            Role::Tool,
            render_results(&parsed.calls, &results),
        ));
        rounds.push(Round {
            model_text: text,
            tool_calls: parsed.calls,
            tool_results: results,
            skipped_calls: parsed.skipped,
        });
    }

    let final_output = turns.join("\n");
    Trajectory {
        benchmark_version: BENCHMARK_VERSION.to_string(),
        task_id: task.task_id.clone(),
        env_name: task.env_name,
        difficulty: task.difficulty,
        split: task.split,
        mode,
        prefill_used: prefill.clone(),
        probe: None,
        judgment: judge_output(&final_output, task),
        rounds,
        final_output,
        tool_call_count: executed,
        refused_call_count: refused,
        token_usage: usage,
        error,
    }
}

/// Maps `f` over `items` with at most `parallel` in flight, keeping order.
pub fn run_parallel<T: Sync, R: Send>(
    items: &[T],
    parallel: usize,
    f: impl Fn(&T) -> R + Sync,
) -> Vec<R> {
    let next = AtomicUsize::new(0);
    let slots: Mutex<Vec<Option<R>>> = Mutex::new((0..items.len()).map(|_| None).collect());
    std::thread::scope(|s| {
        for _ in 0..parallel.max(1).min(items.len().max(1)) {
            s.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                if i >= items.len() {
                    break;
                }
                let r = f(&items[i]);
                slots.lock().expect("no panics while holding the lock")[i] = Some(r);
            });
        }
    });
    slots
        .into_inner()
        .expect("workers finished")
        .into_iter()
        .map(|r| r.expect("every slot filled"))
        .collect()
}

/// One greedy no-tool run per task: y = 0 when the answer is correct.
/// Tasks whose run errored are left out and reported by id.
pub fn run_no_tool_labeling(
    tasks: &[Task],
    backend: &dyn Backend,
    parallel: usize,
) -> (Vec<crate::probe::NecessityLabel>, Vec<(String, String)>) {
    let trajectories = run_parallel(tasks, parallel, |t| {
        run_task(
            t,
            PromptMode::new(Mode::NoTool),
            &PrefillDirective::none(),
            backend,
            Limits::for_task(t),
        )
    });
    let mut labels = Vec::new();
    let mut failed = Vec::new();
    for t in trajectories {
        match t.error {
            Some(e) => {
                tracing::warn!(task = %t.task_id, error = %e, "excluded from labels");
                failed.push((t.task_id, e));
            }
            None => labels.push(crate::probe::NecessityLabel {
                task_id: t.task_id,
                y: u8::from(!t.judgment.correct),
            }),
        }
    }
    (labels, failed)
}

#[cfg(test)]
mod tests {
    use super::*;
    use when2tool_tools::{specs_for, Toolset};

    #[test]
    fn parses_canonical_call() {
        let specs = specs_for(Toolset::Calculator);
        let p = parse_tool_calls(
            r#"{"name":"evaluate_expression","arguments":{"expr":"20+20"}}"#,
            &specs,
        );
        assert_eq!(p.calls.len(), 1);
        assert_eq!(p.calls[0].tool_name, "evaluate_expression");
        assert_eq!(p.calls[0].arguments["expr"], "20+20");
    }

    #[test]
    fn narration_yields_no_calls() {
        let specs = specs_for(Toolset::Calculator);
        assert!(parse_tool_calls("I will now call the calculator.", &specs)
            .calls
            .is_empty());
    }

    #[test]
    fn unknown_tools_are_skipped() {
        let specs = specs_for(Toolset::Calculator);
        let text = r#"First {"name": "evaluate_expression", "arguments": {"expr": "1+1"}} then
            {"name": "launch_rocket", "arguments": {}} and {"unrelated": true}."#;
        let p = parse_tool_calls(text, &specs);
        assert_eq!(p.calls.len(), 1);
        assert_eq!(p.skipped.len(), 1);
        assert!(p.skipped[0].reason.contains("launch_rocket"));
    }

    #[test]
    fn multiple_calls_keep_order_and_indices() {
        let specs = specs_for(Toolset::Calculator);
        let text = r#"{"name":"evaluate_expression","arguments":{"expr":"1"}}{"name":"evaluate_expression","arguments":"{\"expr\": \"2\"}"}"#;
        let p = parse_tool_calls(text, &specs);
        assert_eq!(
            p.calls.iter().map(|c| c.call_index).collect::<Vec<_>>(),
            [0, 1]
        );
        assert_eq!(p.calls[1].arguments["expr"], "2");
    }

    #[test]
    fn mode_round_trips_through_system_text() {
        for mode in Mode::ALL {
            for rta in [false, true] {
                let pm = PromptMode {
                    mode,
                    reason_then_act: rta,
                };
                let specs = specs_for(Toolset::Calculator);
                let mut parts = vec![BASE_INSTRUCTIONS.to_string()];
                parts.extend(mode.instruction().map(str::to_string));
                if rta {
                    parts.push(REASON_INSTRUCTION.into());
                }
                parts.push(render_tools(&specs));
                assert_eq!(PromptMode::from_system(&parts.join("\n")), pm);
            }
        }
    }

    #[test]
    fn run_parallel_keeps_order() {
        let xs: Vec<u64> = (0..100).collect();
        assert_eq!(
            run_parallel(&xs, 7, |x| x * 2),
            xs.iter().map(|x| x * 2).collect::<Vec<_>>()
        );
        assert!(run_parallel(&Vec::<u8>::new(), 4, |x| *x).is_empty());
    }
}
