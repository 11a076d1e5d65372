//! Answer values shared by tools, task generation and judging.
//!
//! Lists and tuples follow Python's literal syntax, since that is the format
//! benchmark prompts ask for ("Exact list in Python format").

use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

/// The shape of an expected answer.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum AnswerKind {
    Integer,
    Decimal { precision: u32 },
    String,
    StringList,
    ValueList,
    Matrix,
    Date,
    Boolean,
    DayName,
}

/// A scalar or nested value in Python literal form.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Literal {
    Int(i64),
    Str(String),
    Bool(bool),
    None,
    List(Vec<Literal>),
    Tuple(Vec<Literal>),
}

/// An exact answer. Integers are arbitrary precision and serialize as
/// decimal strings so the JSON form never loses digits.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "Repr", try_from = "Repr")]
pub enum AnswerValue {
    Integer(BigInt),
    Decimal { value: String, precision: u32 },
    String(String),
    StringList(Vec<String>),
    ValueList(Vec<Literal>),
    Matrix(Vec<Vec<i64>>),
    Date(String),
    Boolean(bool),
    DayName(String),
}

impl AnswerValue {
    pub fn int(v: impl Into<BigInt>) -> Self {
        AnswerValue::Integer(v.into())
    }

    pub fn kind(&self) -> AnswerKind {
        match self {
            AnswerValue::Integer(_) => AnswerKind::Integer,
            AnswerValue::Decimal { precision, .. } => AnswerKind::Decimal {
                precision: *precision,
            },
            AnswerValue::String(_) => AnswerKind::String,
            AnswerValue::StringList(_) => AnswerKind::StringList,
            AnswerValue::ValueList(_) => AnswerKind::ValueList,
            AnswerValue::Matrix(_) => AnswerKind::Matrix,
            AnswerValue::Date(_) => AnswerKind::Date,
            AnswerValue::Boolean(_) => AnswerKind::Boolean,
            AnswerValue::DayName(_) => AnswerKind::DayName,
        }
    }

    /// Canonical text rendering, the form a model is expected to box.
    pub fn render(&self) -> String {
        match self {
            AnswerValue::Integer(v) => v.to_string(),
            AnswerValue::Decimal { value, .. } => value.clone(),
            AnswerValue::String(s) | AnswerValue::Date(s) | AnswerValue::DayName(s) => s.clone(),
            AnswerValue::StringList(items) => {
                Literal::List(items.iter().cloned().map(Literal::Str).collect()).to_string()
            }
            AnswerValue::ValueList(items) => Literal::List(items.clone()).to_string(),
            AnswerValue::Matrix(rows) => Literal::List(
                rows.iter()
                    .map(|r| Literal::List(r.iter().map(|v| Literal::Int(*v)).collect()))
                    .collect(),
            )
            .to_string(),
            AnswerValue::Boolean(b) => if *b { "True" } else { "False" }.to_string(),
        }
    }
}

impl fmt::Display for AnswerValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Literal::Int(v) => write!(f, "{v}"),
            Literal::Str(s) => write!(f, "{}", python_repr_str(s)),
            Literal::Bool(true) => f.write_str("True"),
            Literal::Bool(false) => f.write_str("False"),
            Literal::None => f.write_str("None"),
            Literal::List(items) => {
                f.write_str("[")?;
                for (i, item) in items.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{item}")?;
                }
                f.write_str("]")
            }
            Literal::Tuple(items) => {
                f.write_str("(")?;
                for (i, item) in items.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{item}")?;
                }
                if items.len() == 1 {
                    f.write_str(",")?;
                }
                f.write_str(")")
            }
        }
    }
}

/// Python `repr()` of a string: single quotes unless the text contains a
/// single quote and no double quote.
pub fn python_repr_str(s: &str) -> String {
    let quote = if s.contains('\'') && !s.contains('"') {
        '"'
    } else {
        '\''
    };
    let mut out = String::with_capacity(s.len() + 2);
    out.push(quote);
    for c in s.chars() {
        match c {
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\t' => out.push_str("\\t"),
            '\r' => out.push_str("\\r"),
            c if c == quote => {
                out.push('\\');
                out.push(c);
            }
            c => out.push(c),
        }
    }
    out.push(quote);
    out
}

/// Parses a Python-style literal. Bare words are accepted as strings so that
/// loosely formatted model output such as `[user, example]` still parses.
pub fn parse_literal(text: &str) -> Result<Literal, String> {
    let mut p = LiteralParser {
        chars: text.trim().chars().collect(),
        pos: 0,
    };
    let value = p.value()?;
    p.skip_ws();
    if p.pos != p.chars.len() {
        return Err(format!("trailing input at offset {}", p.pos));
    }
    Ok(value)
}

struct LiteralParser {
    chars: Vec<char>,
    pos: usize,
}

impl LiteralParser {
    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(c) if c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn value(&mut self) -> Result<Literal, String> {
        self.skip_ws();
        match self.peek() {
            Some('[') => {
                self.pos += 1;
                Ok(Literal::List(self.sequence(']')?))
            }
            Some('(') => {
                self.pos += 1;
                Ok(Literal::Tuple(self.sequence(')')?))
            }
            Some(q @ ('\'' | '"')) => {
                self.pos += 1;
                self.quoted(q).map(Literal::Str)
            }
            Some(c) if c == '-' || c == '+' || c.is_ascii_digit() => self.number_or_word(),
            Some(_) => self.word(),
            None => Err("unexpected end of input".into()),
        }
    }

    fn sequence(&mut self, close: char) -> Result<Vec<Literal>, String> {
        let mut items = Vec::new();
        loop {
            self.skip_ws();
            if self.peek() == Some(close) {
                self.pos += 1;
                return Ok(items);
            }
            items.push(self.value()?);
            self.skip_ws();
            match self.peek() {
                Some(',') => self.pos += 1,
                Some(c) if c == close => {
                    self.pos += 1;
                    return Ok(items);
                }
                Some(c) => return Err(format!("expected ',' or '{close}', found '{c}'")),
                None => return Err(format!("unterminated sequence, expected '{close}'")),
            }
        }
    }

    fn quoted(&mut self, quote: char) -> Result<String, String> {
        let mut out = String::new();
        while let Some(c) = self.peek() {
            self.pos += 1;
            match c {
                '\\' => {
                    let esc = self.peek().ok_or("dangling escape")?;
                    self.pos += 1;
                    out.push(match esc {
                        'n' => '\n',
                        't' => '\t',
                        'r' => '\r',
                        other => other,
                    });
                }
                c if c == quote => return Ok(out),
                c => out.push(c),
            }
        }
        Err("unterminated string".into())
    }

    fn number_or_word(&mut self) -> Result<Literal, String> {
        let start = self.pos;
        let token = self.raw_token();
        let cleaned: String = token.chars().filter(|c| *c != '_').collect();
        match cleaned.parse::<i64>() {
            Ok(v) => Ok(Literal::Int(v)),
            Err(_) if !token.is_empty() => Ok(Literal::Str(token)),
            Err(_) => Err(format!("bad token at offset {start}")),
        }
    }

    fn word(&mut self) -> Result<Literal, String> {
        let token = self.raw_token();
        match token.as_str() {
            "" => Err(format!("unexpected character at offset {}", self.pos)),
            "True" | "true" => Ok(Literal::Bool(true)),
            "False" | "false" => Ok(Literal::Bool(false)),
            "None" => Ok(Literal::None),
            _ => Ok(Literal::Str(token)),
        }
    }

    /// Reads up to the next structural delimiter, trimming surrounding space.
    fn raw_token(&mut self) -> String {
        let start = self.pos;
        while let Some(c) = self.peek() {
            if matches!(c, ',' | ']' | ')' | '[' | '(') {
                break;
            }
            self.pos += 1;
        }
        self.chars[start..self.pos]
            .iter()
            .collect::<String>()
            .trim()
            .to_string()
    }
}

/// Wire form of [`AnswerValue`] with integers as decimal strings.
#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", content = "value", rename_all = "snake_case")]
enum Repr {
    Integer(String),
    Decimal { value: String, precision: u32 },
    String(String),
    StringList(Vec<String>),
    ValueList(Vec<Literal>),
    Matrix(Vec<Vec<i64>>),
    Date(String),
    Boolean(bool),
    DayName(String),
}

impl From<AnswerValue> for Repr {
    fn from(v: AnswerValue) -> Self {
        match v {
            AnswerValue::Integer(n) => Repr::Integer(n.to_string()),
            AnswerValue::Decimal { value, precision } => Repr::Decimal { value, precision },
            AnswerValue::String(s) => Repr::String(s),
            AnswerValue::StringList(v) => Repr::StringList(v),
            AnswerValue::ValueList(v) => Repr::ValueList(v),
            AnswerValue::Matrix(m) => Repr::Matrix(m),
            AnswerValue::Date(s) => Repr::Date(s),
            AnswerValue::Boolean(b) => Repr::Boolean(b),
            AnswerValue::DayName(s) => Repr::DayName(s),
        }
    }
}

impl TryFrom<Repr> for AnswerValue {
    type Error = String;

    fn try_from(r: Repr) -> Result<Self, String> {
        Ok(match r {
            Repr::Integer(s) => {
                AnswerValue::Integer(s.trim().parse().map_err(|_| format!("bad integer {s:?}"))?)
            }
            Repr::Decimal { value, precision } => AnswerValue::Decimal { value, precision },
            Repr::String(s) => AnswerValue::String(s),
            Repr::StringList(v) => AnswerValue::StringList(v),
            Repr::ValueList(v) => AnswerValue::ValueList(v),
            Repr::Matrix(m) => AnswerValue::Matrix(m),
            Repr::Date(s) => AnswerValue::Date(s),
            Repr::Boolean(b) => AnswerValue::Boolean(b),
            Repr::DayName(s) => AnswerValue::DayName(s),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn renders_python_style_lists() {
        let v = AnswerValue::ValueList(vec![
            Literal::Tuple(vec![
                Literal::Str("user".into()),
                Literal::Str("example".into()),
                Literal::Str("com".into()),
            ]),
            Literal::Tuple(vec![Literal::Str("a".into())]),
        ]);
        assert_eq!(v.render(), "[('user', 'example', 'com'), ('a',)]");
        let m = AnswerValue::Matrix(vec![vec![1, 2], vec![3, 4]]);
        assert_eq!(m.render(), "[[1, 2], [3, 4]]");
    }

    #[test]
    fn parses_loose_literals() {
        assert_eq!(
            parse_literal("['123', \"456\"]").unwrap(),
            Literal::List(vec![Literal::Str("123".into()), Literal::Str("456".into())])
        );
        assert_eq!(
            parse_literal("[user, -3]").unwrap(),
            Literal::List(vec![Literal::Str("user".into()), Literal::Int(-3)])
        );
        assert!(parse_literal("[1, 2").is_err());
    }

    #[test]
    fn integer_serializes_as_string() {
        let v = AnswerValue::int(BigInt::parse_bytes(b"13340252482137117062528", 10).unwrap());
        let json = serde_json::to_string(&v).unwrap();
        assert_eq!(
            json,
            r#"{"kind":"integer","value":"13340252482137117062528"}"#
        );
        let back: AnswerValue = serde_json::from_str(&json).unwrap();
        assert_eq!(back, v);
    }

    #[test]
    fn repr_escapes_quotes() {
        assert_eq!(python_repr_str("it's"), "\"it's\"");
        assert_eq!(python_repr_str("a\\b"), "'a\\\\b'");
    }
}
