//! Regex operations with Python `re` result conventions.
//!
//! `findall` returns full matches for patterns without groups, the group
//! text for one group, and a tuple per match for several groups. After an
//! empty match the scan resumes one character later, so zero-width
//! lookahead patterns report overlapping windows.

use fancy_regex::{Captures, Regex};

use crate::answer::Literal;
use crate::error::ToolError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RegexOp {
    Findall,
    Match,
    Search,
    Sub,
}

impl RegexOp {
    pub fn parse(s: &str) -> Result<Self, ToolError> {
        match s.trim().to_ascii_lowercase().trim_start_matches("re.") {
            "findall" | "find_all" => Ok(RegexOp::Findall),
            "match" => Ok(RegexOp::Match),
            "search" => Ok(RegexOp::Search),
            "sub" | "replace" => Ok(RegexOp::Sub),
            other => Err(ToolError::invalid(
                "operation",
                format!("unknown operation '{other}'"),
            )),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RegexOutput {
    List(Vec<Literal>),
    /// The matched text, or None when nothing matched.
    Matched(Option<String>),
    Text(String),
}

impl RegexOutput {
    /// Python-style rendering: `['a', 'b']`, `'abc'` / `None`, or the text.
    pub fn render(&self) -> String {
        match self {
            RegexOutput::List(items) => Literal::List(items.clone()).to_string(),
            RegexOutput::Matched(Some(s)) => s.clone(),
            RegexOutput::Matched(None) => "None".into(),
            RegexOutput::Text(s) => s.clone(),
        }
    }
}

pub fn compile(pattern: &str) -> Result<Regex, ToolError> {
    Regex::new(pattern).map_err(|e| ToolError::Unsupported(format!("pattern: {e}")))
}

fn engine_err(e: fancy_regex::Error) -> ToolError {
    ToolError::Runtime(format!("regex engine: {e}"))
}

fn next_char_boundary(text: &str, pos: usize) -> usize {
    text[pos..]
        .chars()
        .next()
        .map_or(pos + 1, |c| pos + c.len_utf8())
}

/// All non-overlapping matches, Python style.
fn captures_all<'t>(re: &Regex, text: &'t str) -> Result<Vec<Captures<'t>>, ToolError> {
    let mut out = Vec::new();
    let mut pos = 0;
    while pos <= text.len() {
        let Some(caps) = re.captures_from_pos(text, pos).map_err(engine_err)? else {
            break;
        };
        let m = caps.get(0).expect("group 0");
        pos = if m.end() == m.start() {
            next_char_boundary(text, m.end())
        } else {
            m.end()
        };
        out.push(caps);
    }
    Ok(out)
}

fn group_text(caps: &Captures<'_>, i: usize) -> String {
    caps.get(i)
        .map_or(String::new(), |m| m.as_str().to_string())
}

pub fn findall(pattern: &str, text: &str) -> Result<Vec<Literal>, ToolError> {
    let re = compile(pattern)?;
    let groups = re.captures_len() - 1;
    Ok(captures_all(&re, text)?
        .iter()
        .map(|c| match groups {
            0 => Literal::Str(group_text(c, 0)),
            1 => Literal::Str(group_text(c, 1)),
            n => Literal::Tuple((1..=n).map(|i| Literal::Str(group_text(c, i))).collect()),
        })
        .collect())
}

/// Match anchored at the start of the text.
pub fn match_start(pattern: &str, text: &str) -> Result<Option<String>, ToolError> {
    let re = compile(&format!(r"\A(?:{pattern})"))?;
    Ok(re
        .find(text)
        .map_err(engine_err)?
        .map(|m| m.as_str().to_string()))
}

pub fn search(pattern: &str, text: &str) -> Result<Option<String>, ToolError> {
    let re = compile(pattern)?;
    Ok(re
        .find(text)
        .map_err(engine_err)?
        .map(|m| m.as_str().to_string()))
}

/// Expands `\1`, `\g<1>` and `\g<name>` references in a Python replacement.
fn expand(repl: &str, caps: &Captures<'_>) -> Result<String, ToolError> {
    let chars: Vec<char> = repl.chars().collect();
    let mut out = String::new();
    let mut i = 0;
    while i < chars.len() {
        if chars[i] != '\\' || i + 1 >= chars.len() {
            out.push(chars[i]);
            i += 1;
            continue;
        }
        let c = chars[i + 1];
        if c.is_ascii_digit() {
            let mut j = i + 1;
            while j < chars.len() && chars[j].is_ascii_digit() && j < i + 3 {
                j += 1;
            }
            let idx: usize = chars[i + 1..j].iter().collect::<String>().parse().unwrap();
            if idx >= caps.len() {
                return Err(ToolError::invalid(
                    "repl",
                    format!("invalid group reference {idx}"),
                ));
            }
            out.push_str(&group_text(caps, idx));
            i = j;
        } else if c == 'g' && chars.get(i + 2) == Some(&'<') {
            let close = chars[i + 3..]
                .iter()
                .position(|&ch| ch == '>')
                .ok_or_else(|| ToolError::invalid("repl", "unterminated group name"))?;
            let name: String = chars[i + 3..i + 3 + close].iter().collect();
            let text = match name.parse::<usize>() {
                Ok(idx) if idx < caps.len() => group_text(caps, idx),
                Ok(idx) => {
                    return Err(ToolError::invalid(
                        "repl",
                        format!("invalid group reference {idx}"),
                    ))
                }
                Err(_) => caps
                    .name(&name)
                    .map(|m| m.as_str().to_string())
                    .ok_or_else(|| {
                        ToolError::invalid("repl", format!("unknown group name '{name}'"))
                    })?,
            };
            out.push_str(&text);
            i += 4 + close;
        } else {
            out.push(match c {
                'n' => '\n',
                't' => '\t',
                other => other,
            });
            i += 2;
        }
    }
    Ok(out)
}

pub fn sub(pattern: &str, repl: &str, text: &str) -> Result<String, ToolError> {
    let re = compile(pattern)?;
    let mut out = String::new();
    let mut last = 0;
    for caps in captures_all(&re, text)? {
        let m = caps.get(0).expect("group 0");
        out.push_str(&text[last..m.start()]);
        out.push_str(&expand(repl, &caps)?);
        last = m.end();
    }
    out.push_str(&text[last..]);
    Ok(out)
}

pub fn apply(
    op: RegexOp,
    pattern: &str,
    text: &str,
    repl: Option<&str>,
) -> Result<RegexOutput, ToolError> {
    Ok(match op {
        RegexOp::Findall => RegexOutput::List(findall(pattern, text)?),
        RegexOp::Match => RegexOutput::Matched(match_start(pattern, text)?),
        RegexOp::Search => RegexOutput::Matched(search(pattern, text)?),
        RegexOp::Sub => {
            let r = repl.ok_or(ToolError::MissingArgument("repl".into()))?;
            RegexOutput::Text(sub(pattern, r, text)?)
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn strs(v: &[&str]) -> Vec<Literal> {
        v.iter().map(|s| Literal::Str(s.to_string())).collect()
    }

    #[test]
    fn reference_examples() {
        assert_eq!(
            findall(r"\d+", "abc123def456").unwrap(),
            strs(&["123", "456"])
        );
        let got = findall(r"(\w+)@(\w+)\.(\w+)", "user@example.com admin@test.org").unwrap();
        assert_eq!(
            Literal::List(got).to_string(),
            "[('user', 'example', 'com'), ('admin', 'test', 'org')]"
        );
    }

    #[test]
    fn empty_match_conventions() {
        assert_eq!(findall("a*", "baaa").unwrap(), strs(&["", "aaa", ""]));
        assert_eq!(sub("x*", "-", "abxd").unwrap(), "-a-b--d-");
        assert_eq!(findall(r"(a)|b", "ab").unwrap(), strs(&["a", ""]));
    }

    #[test]
    fn match_search_sub() {
        assert_eq!(match_start(r"\d+", "abc123").unwrap(), None);
        assert_eq!(
            match_start(r"[a-c]+", "abc123").unwrap(),
            Some("abc".into())
        );
        assert_eq!(match_start(r"a|ab", "ab").unwrap(), Some("a".into()));
        assert_eq!(search(r"\d+", "abc123").unwrap(), Some("123".into()));
        assert_eq!(
            sub(r"(\w+)@(\w+)", r"\2 at \1", "user@host").unwrap(),
            "host at user"
        );
        assert_eq!(sub(r"(?P<d>\d)", r"<\g<d>>", "a1b2").unwrap(), "a<1>b<2>");
        assert_eq!(RegexOutput::Matched(None).render(), "None");
    }

    #[test]
    fn lookbehind_and_backreference() {
        assert_eq!(
            findall(r"(?<=\$)\d+", "cost $42 and $7").unwrap(),
            strs(&["42", "7"])
        );
        assert_eq!(findall(r"(\w)\1", "aabbcd").unwrap(), strs(&["a", "b"]));
    }

    #[test]
    fn unsupported_pattern_is_an_error() {
        assert!(matches!(findall("(", "x"), Err(ToolError::Unsupported(_))));
        assert!(RegexOp::parse("split").is_err());
    }

    proptest! {
        /// Overlapping lookahead windows equal brute-force enumeration.
        #[test]
        fn lookahead_windows(s in "[a-z]{0,12}", w in 1usize..5) {
            let got = findall(&format!("(?=([a-z]{{{w}}}))"), &s).unwrap();
            let want: Vec<Literal> = (0..s.len().saturating_sub(w - 1))
                .filter(|&i| i + w <= s.len())
                .map(|i| Literal::Str(s[i..i + w].to_string()))
                .collect();
            prop_assert_eq!(got, want);
        }
    }
}
