use crate::error::ToolError;

#[derive(Debug, Clone, PartialEq)]
pub enum Tok {
    Name(String),
    Int(i64),
    Str(String),
    Op(&'static str),
    Newline,
    Indent,
    Dedent,
    Eof,
}

const OPS: &[&str] = &[
    "**=", "//=", "**", "//", "==", "!=", "<=", ">=", "+=", "-=", "*=", "%=", "->", "+", "-", "*",
    "/", "%", "<", ">", "=", "(", ")", "[", "]", "{", "}", ",", ":", ".", ";",
];

fn syntax(line: usize, msg: impl std::fmt::Display) -> ToolError {
    ToolError::Parse(format!("line {line}: {msg}"))
}

pub fn lex(src: &str) -> Result<Vec<(Tok, usize)>, ToolError> {
    let chars: Vec<char> = src.replace("\r\n", "\n").chars().collect();
    let mut out: Vec<(Tok, usize)> = Vec::new();
    let mut indents = vec![0usize];
    let mut i = 0;
    let mut line = 1;
    let mut depth = 0i32;
    let mut line_start = true;

    while i < chars.len() {
        if line_start && depth == 0 {
            let mut col = 0;
            while i < chars.len() && (chars[i] == ' ' || chars[i] == '\t') {
                col += if chars[i] == '\t' { 4 } else { 1 };
                i += 1;
            }
            if i >= chars.len() {
                break;
            }
            if chars[i] == '\n' || chars[i] == '#' {
                while i < chars.len() && chars[i] != '\n' {
                    i += 1;
                }
                i += 1;
                line += 1;
                continue;
            }
            let cur = *indents.last().unwrap();
            if col > cur {
                indents.push(col);
                out.push((Tok::Indent, line));
            } else {
                while col < *indents.last().unwrap() {
                    indents.pop();
                    out.push((Tok::Dedent, line));
                }
                if col != *indents.last().unwrap() {
                    return Err(syntax(line, "inconsistent indentation"));
                }
            }
            line_start = false;
        }
        let c = chars[i];
        match c {
            '\n' => {
                if depth == 0 {
                    if !matches!(out.last(), Some((Tok::Newline, _)) | None) {
                        out.push((Tok::Newline, line));
                    }
                    line_start = true;
                }
                line += 1;
                i += 1;
            }
            ' ' | '\t' => i += 1,
            '#' => {
                while i < chars.len() && chars[i] != '\n' {
                    i += 1;
                }
            }
            '\\' if chars.get(i + 1) == Some(&'\n') => {
                i += 2;
                line += 1;
            }
            '0'..='9' => {
                let start = i;
                while i < chars.len() && (chars[i].is_ascii_digit() || chars[i] == '_') {
                    i += 1;
                }
                if i < chars.len() && (chars[i] == '.' || chars[i] == 'e' || chars[i] == 'j') {
                    return Err(syntax(line, "only integer literals are supported"));
                }
                let text: String = chars[start..i].iter().filter(|c| **c != '_').collect();
                let v = text
                    .parse::<i64>()
                    .map_err(|_| syntax(line, "integer literal too large"))?;
                out.push((Tok::Int(v), line));
            }
            '\'' | '"' => {
                let quote = c;
                if chars.get(i + 1) == Some(&quote) && chars.get(i + 2) == Some(&quote) {
                    return Err(syntax(line, "triple-quoted strings are not supported"));
                }
                i += 1;
                let mut s = String::new();
                loop {
                    let Some(&ch) = chars.get(i) else {
                        return Err(syntax(line, "unterminated string"));
                    };
                    i += 1;
                    match ch {
                        '\n' => return Err(syntax(line, "unterminated string")),
                        '\\' => {
                            let esc = *chars
                                .get(i)
                                .ok_or_else(|| syntax(line, "unterminated string"))?;
                            i += 1;
                            match esc {
                                'n' => s.push('\n'),
                                't' => s.push('\t'),
                                '\\' | '\'' | '"' => s.push(esc),
                                other => {
                                    s.push('\\');
                                    s.push(other);
                                }
                            }
                        }
                        ch if ch == quote => break,
                        ch => s.push(ch),
                    }
                }
                out.push((Tok::Str(s), line));
            }
            c if c.is_alphabetic() || c == '_' => {
                let start = i;
                while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                let word: String = chars[start..i].iter().collect();
                // String prefixes such as f'' are outside the subset.
                if matches!(chars.get(i), Some('\'') | Some('"')) {
                    return Err(syntax(
                        line,
                        format!("string prefix '{word}' is not supported"),
                    ));
                }
                out.push((Tok::Name(word), line));
            }
            _ => {
                let rest: String = chars[i..chars.len().min(i + 3)].iter().collect();
                let op = OPS
                    .iter()
                    .find(|op| rest.starts_with(**op))
                    .ok_or_else(|| syntax(line, format!("unexpected character '{c}'")))?;
                match *op {
                    "(" | "[" | "{" => depth += 1,
                    ")" | "]" | "}" => depth -= 1,
                    _ => {}
                }
                if depth < 0 {
                    return Err(syntax(line, "unbalanced brackets"));
                }
                i += op.chars().count();
                out.push((Tok::Op(op), line));
            }
        }
    }
    if depth != 0 {
        return Err(syntax(line, "unbalanced brackets"));
    }
    if !matches!(out.last(), Some((Tok::Newline, _)) | None) {
        out.push((Tok::Newline, line));
    }
    while indents.len() > 1 {
        indents.pop();
        out.push((Tok::Dedent, line));
    }
    out.push((Tok::Eof, line));
    Ok(out)
}
