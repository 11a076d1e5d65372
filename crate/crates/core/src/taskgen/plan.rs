//! Solution plans: the designated tool sequence behind each expected answer.

use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};
use when2tool_tools::{AnswerValue, ToolError, ToolResult, Toolbox};

use super::Task;

/// How a plan step turns a tool result into a value.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Projection {
    /// The result's structured value.
    Value,
    /// The doc_id of the top search hit.
    FirstHitDocId,
    /// One attribute of a read document's facts.
    Fact { attr: String },
    /// Whether a free-slot search found anything.
    NonEmpty,
    /// The earliest slot of a free-slot search.
    FirstSlot,
}

/// One tool call of a plan. String arguments may contain `{k}`, which is
/// replaced by the rendered output of step `k` before the call.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PlanStep {
    pub tool: String,
    pub arguments: Map<String, Value>,
    pub project: Projection,
    /// Marks the step whose output is a hop answer of a chained task.
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub hop_end: bool,
}

impl PlanStep {
    pub fn new(tool: &str, arguments: Value, project: Projection) -> Self {
        let Value::Object(arguments) = arguments else {
            panic!("plan arguments must be an object")
        };
        PlanStep {
            tool: tool.to_string(),
            arguments,
            project,
            hop_end: false,
        }
    }

    pub fn value(tool: &str, arguments: Value) -> Self {
        Self::new(tool, arguments, Projection::Value)
    }

    pub fn hop_end(mut self) -> Self {
        self.hop_end = true;
        self
    }
}

#[derive(Debug, thiserror::Error)]
pub enum PlanError {
    #[error("step {step} ({tool}) failed: {error}")]
    Tool {
        step: usize,
        tool: String,
        error: ToolError,
    },
    #[error("step {step} ({tool}): result has no {what}")]
    Projection {
        step: usize,
        tool: String,
        what: String,
    },
    #[error("empty plan")]
    Empty,
    #[error("expected {expected}, plan produced {actual}")]
    Mismatch { expected: String, actual: String },
    #[error("hop {hop}: expected {expected}, plan produced {actual}")]
    HopMismatch {
        hop: usize,
        expected: String,
        actual: String,
    },
    #[error("plan marks {actual} hop ends, task lists {expected} hop answers")]
    HopCount { expected: usize, actual: usize },
}

fn substitute(v: &Value, outputs: &[AnswerValue]) -> Value {
    match v {
        Value::String(s) if s.contains('{') => {
            let mut text = s.clone();
            for (k, out) in outputs.iter().enumerate() {
                text = text.replace(&format!("{{{k}}}"), &out.render());
            }
            Value::String(text)
        }
        Value::Array(items) => Value::Array(items.iter().map(|i| substitute(i, outputs)).collect()),
        Value::Object(m) => Value::Object(
            m.iter()
                .map(|(k, i)| (k.clone(), substitute(i, outputs)))
                .collect(),
        ),
        other => other.clone(),
    }
}

fn project(
    step: usize,
    tool: &str,
    p: &Projection,
    r: &ToolResult,
) -> Result<AnswerValue, PlanError> {
    let missing = |what: &str| PlanError::Projection {
        step,
        tool: tool.to_string(),
        what: what.to_string(),
    };
    match p {
        Projection::Value => r.value.clone().ok_or_else(|| missing("structured value")),
        Projection::FirstHitDocId => r
            .data
            .get(0)
            .and_then(|h| h.get("doc_id"))
            .and_then(Value::as_str)
            .map(|s| AnswerValue::String(s.to_string()))
            .ok_or_else(|| missing("search hit")),
        Projection::Fact { attr } => r
            .data
            .get("facts")
            .and_then(|f| f.get(attr))
            .and_then(Value::as_str)
            .map(|s| AnswerValue::String(s.to_string()))
            .ok_or_else(|| missing(&format!("fact '{attr}'"))),
        Projection::NonEmpty => r
            .data
            .get("slots")
            .and_then(Value::as_array)
            .map(|s| AnswerValue::Boolean(!s.is_empty()))
            .ok_or_else(|| missing("slot list")),
        Projection::FirstSlot => r
            .data
            .get("first_slot")
            .and_then(Value::as_str)
            .map(|s| AnswerValue::String(s.to_string()))
            .ok_or_else(|| missing("free slot")),
    }
}

/// Runs the task's plan with a fresh toolbox and returns every step's
/// projected output.
pub fn execute_plan(task: &Task) -> Result<Vec<AnswerValue>, PlanError> {
    let mut toolbox = Toolbox::new(task.tool_specs.clone(), &task.env_state);
    let mut outputs = Vec::with_capacity(task.solution.len());
    for (i, step) in task.solution.iter().enumerate() {
        let args = match substitute(&Value::Object(step.arguments.clone()), &outputs) {
            Value::Object(m) => m,
            _ => unreachable!("substitution preserves objects"),
        };
        let result = toolbox
            .try_execute(&step.tool, &args)
            .map_err(|error| PlanError::Tool {
                step: i,
                tool: step.tool.clone(),
                error,
            })?;
        outputs.push(project(i, &step.tool, &step.project, &result)?);
    }
    Ok(outputs)
}

/// Tool name and arguments of one planned call.
pub type ResolvedCall = (String, Map<String, Value>);

/// The plan's tool calls with every `{k}` placeholder resolved, as an
/// agent that follows the plan would issue them.
pub fn resolved_calls(task: &Task) -> Result<Vec<ResolvedCall>, PlanError> {
    let outputs = execute_plan(task)?;
    Ok(task
        .solution
        .iter()
        .map(
            |step| match substitute(&Value::Object(step.arguments.clone()), &outputs) {
                Value::Object(m) => (step.tool.clone(), m),
                _ => unreachable!("substitution preserves objects"),
            },
        )
        .collect())
}

/// Checks that the plan reproduces the expected answer exactly and, for
/// chained tasks, every intermediate hop answer.
pub fn check_oracle_closure(task: &Task) -> Result<(), PlanError> {
    let outputs = execute_plan(task)?;
    let last = outputs.last().ok_or(PlanError::Empty)?;
    if *last != task.expected_answer {
        return Err(PlanError::Mismatch {
            expected: task.expected_answer.render(),
            actual: last.render(),
        });
    }
    let hops: Vec<&AnswerValue> = task
        .solution
        .iter()
        .zip(&outputs)
        .filter(|(s, _)| s.hop_end)
        .map(|(_, o)| o)
        .collect();
    if hops.len() != task.hop_answers.len() {
        return Err(PlanError::HopCount {
            expected: task.hop_answers.len(),
            actual: hops.len(),
        });
    }
    for (hop, (got, want)) in hops.iter().zip(&task.hop_answers).enumerate() {
        if *got != want {
            return Err(PlanError::HopMismatch {
                hop,
                expected: want.render(),
                actual: got.render(),
            });
        }
    }
    Ok(())
}
