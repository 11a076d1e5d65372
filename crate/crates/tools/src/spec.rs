//! Tool schemas, invocation records and argument coercion.

use serde::{Deserialize, Serialize};
use serde_json::{Map, Number, Value};

use crate::answer::{parse_literal, AnswerValue, Literal};
use crate::error::ToolError;

/// Semantic type of a tool parameter; drives coercion of model-supplied JSON.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ParamType {
    String,
    Integer,
    Number,
    NumberList,
    /// A 1D integer list or a 2D integer grid.
    IntList,
    IntMatrix,
    StringList,
    /// Integer or integer row, used by list operations on 1D or 2D lists.
    IntOrRow,
}

impl ParamType {
    pub fn json_type(self) -> &'static str {
        match self {
            ParamType::String => "string",
            ParamType::Integer => "integer",
            ParamType::Number => "number",
            ParamType::NumberList => "array<number>",
            ParamType::IntList => "array<integer> | array<array<integer>>",
            ParamType::IntMatrix => "array<array<integer>>",
            ParamType::StringList => "array<string>",
            ParamType::IntOrRow => "integer | array<integer>",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParamSpec {
    pub name: String,
    #[serde(rename = "type")]
    pub ty: ParamType,
    pub required: bool,
    pub description: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ToolSpec {
    pub name: String,
    pub description: String,
    pub parameters: Vec<ParamSpec>,
}

impl ToolSpec {
    pub fn new(name: &str, description: &str) -> Self {
        ToolSpec {
            name: name.to_string(),
            description: description.to_string(),
            parameters: Vec::new(),
        }
    }

    pub fn param(mut self, name: &str, ty: ParamType, description: &str) -> Self {
        self.parameters.push(ParamSpec {
            name: name.to_string(),
            ty,
            required: true,
            description: description.to_string(),
        });
        self
    }

    pub fn optional(mut self, name: &str, ty: ParamType, description: &str) -> Self {
        self.parameters.push(ParamSpec {
            name: name.to_string(),
            ty,
            required: false,
            description: description.to_string(),
        });
        self
    }

    /// One-line signature used when rendering tool schemas into prompts.
    pub fn signature(&self) -> String {
        let params: Vec<String> = self
            .parameters
            .iter()
            .map(|p| {
                let opt = if p.required { "" } else { "?" };
                format!("{}{}: {}", p.name, opt, p.ty.json_type())
            })
            .collect();
        format!("{}({})", self.name, params.join(", "))
    }

    /// Coerces raw arguments to the declared parameter types. Unknown keys
    /// are dropped; missing required parameters and uncoercible values fail.
    pub fn coerce(&self, args: &Map<String, Value>) -> Result<Map<String, Value>, ToolError> {
        let mut out = Map::new();
        for p in &self.parameters {
            match args.get(&p.name) {
                Some(Value::Null) | None if p.required => {
                    return Err(ToolError::MissingArgument(p.name.clone()))
                }
                Some(Value::Null) | None => {}
                Some(v) => {
                    let coerced =
                        coerce_value(v, p.ty).map_err(|r| ToolError::invalid(&p.name, r))?;
                    out.insert(p.name.clone(), coerced);
                }
            }
        }
        Ok(out)
    }
}

fn coerce_value(v: &Value, ty: ParamType) -> Result<Value, String> {
    match ty {
        ParamType::String => match v {
            Value::String(s) => Ok(Value::String(s.clone())),
            Value::Number(n) => Ok(Value::String(n.to_string())),
            Value::Bool(b) => Ok(Value::String(b.to_string())),
            Value::Array(_) | Value::Object(_) => Ok(Value::String(v.to_string())),
            Value::Null => Err("null".into()),
        },
        ParamType::Integer => as_integer(v).map(Value::Number),
        ParamType::Number => match v {
            Value::Number(n) => Ok(Value::Number(n.clone())),
            Value::String(s) => s
                .trim()
                .parse::<f64>()
                .ok()
                .and_then(Number::from_f64)
                .map(|_| {
                    serde_json::from_str::<Number>(s.trim())
                        .map(Value::Number)
                        .unwrap_or(Value::Null)
                })
                .filter(|v| !v.is_null())
                .ok_or_else(|| format!("expected a number, got {s:?}")),
            other => Err(format!("expected a number, got {other}")),
        },
        ParamType::NumberList => {
            let items = as_array(v)?;
            let nums = items
                .iter()
                .map(|i| coerce_value(i, ParamType::Number))
                .collect::<Result<Vec<_>, _>>()?;
            Ok(Value::Array(nums))
        }
        ParamType::IntList => {
            let items = as_array(v)?;
            if items.iter().any(|i| i.is_array()) {
                coerce_value(v, ParamType::IntMatrix)
            } else {
                let ints = items
                    .iter()
                    .map(|i| as_integer(i).map(Value::Number))
                    .collect::<Result<Vec<_>, _>>()?;
                Ok(Value::Array(ints))
            }
        }
        ParamType::IntMatrix => {
            let rows = as_array(v)?;
            let mut out = Vec::with_capacity(rows.len());
            for row in rows {
                let cells = as_array(&row)?;
                let ints = cells
                    .iter()
                    .map(|c| as_integer(c).map(Value::Number))
                    .collect::<Result<Vec<_>, _>>()?;
                out.push(Value::Array(ints));
            }
            Ok(Value::Array(out))
        }
        ParamType::StringList => {
            let items = as_array(v)?;
            let strs = items
                .iter()
                .map(|i| coerce_value(i, ParamType::String))
                .collect::<Result<Vec<_>, _>>()?;
            Ok(Value::Array(strs))
        }
        ParamType::IntOrRow => match v {
            Value::Array(_) => coerce_value(v, ParamType::IntList),
            Value::String(s) if s.trim_start().starts_with('[') => {
                coerce_value(v, ParamType::IntList)
            }
            _ => as_integer(v).map(Value::Number),
        },
    }
}

fn as_integer(v: &Value) -> Result<Number, String> {
    match v {
        Value::Number(n) if n.is_i64() || n.is_u64() => Ok(n.clone()),
        Value::Number(n) => match n.as_f64() {
            Some(f) if f.fract() == 0.0 && f.abs() < 9.0e15 => Ok(Number::from(f as i64)),
            _ => Err(format!("expected an integer, got {n}")),
        },
        Value::String(s) => s
            .trim()
            .parse::<i64>()
            .map(Number::from)
            .map_err(|_| format!("expected an integer, got {s:?}")),
        Value::Bool(_) | Value::Null | Value::Array(_) | Value::Object(_) => {
            Err(format!("expected an integer, got {v}"))
        }
    }
}

/// Arrays may arrive as JSON arrays or as strings holding a JSON/Python list.
fn as_array(v: &Value) -> Result<Vec<Value>, String> {
    match v {
        Value::Array(items) => Ok(items.clone()),
        Value::String(s) => {
            if let Ok(Value::Array(items)) = serde_json::from_str::<Value>(s) {
                return Ok(items);
            }
            match parse_literal(s) {
                Ok(Literal::List(items)) | Ok(Literal::Tuple(items)) => {
                    Ok(items.into_iter().map(literal_to_json).collect())
                }
                _ => Err(format!("expected a list, got {s:?}")),
            }
        }
        other => Err(format!("expected a list, got {other}")),
    }
}

fn literal_to_json(l: Literal) -> Value {
    match l {
        Literal::Int(v) => Value::from(v),
        Literal::Str(s) => Value::String(s),
        Literal::Bool(b) => Value::Bool(b),
        Literal::None => Value::Null,
        Literal::List(items) | Literal::Tuple(items) => {
            Value::Array(items.into_iter().map(literal_to_json).collect())
        }
    }
}

/// A parsed, validated invocation emitted by a model.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ToolCall {
    pub tool_name: String,
    pub arguments: Map<String, Value>,
    pub call_index: usize,
}

/// What a tool returns: a single-line payload for the agent and a
/// machine-readable JSON rendering for tests and the harness.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ToolResult {
    pub ok: bool,
    pub payload: String,
    pub data: Value,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub value: Option<AnswerValue>,
}

impl ToolResult {
    pub fn success(payload: impl Into<String>, data: Value, value: Option<AnswerValue>) -> Self {
        ToolResult {
            ok: true,
            payload: single_line(payload.into()),
            data,
            value,
        }
    }

    pub fn from_answer(value: AnswerValue) -> Self {
        let payload = value.render();
        let data = serde_json::to_value(&value).unwrap_or(Value::Null);
        ToolResult::success(payload, data, Some(value))
    }

    pub fn failure(err: &ToolError) -> Self {
        ToolResult {
            ok: false,
            payload: single_line(format!("Error: {err}")),
            data: serde_json::json!({ "error": err.to_string() }),
            value: None,
        }
    }
}

fn single_line(s: String) -> String {
    if s.contains('\n') {
        s.replace('\r', "").replace('\n', "\\n")
    } else {
        s
    }
}
