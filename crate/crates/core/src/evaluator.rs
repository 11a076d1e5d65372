//! Closed-form answer extraction and judging.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use when2tool_tools::answer::parse_literal;
use when2tool_tools::stats::{parse_decimal, Exact};
use when2tool_tools::{dates, AnswerValue, Literal};

use crate::taskgen::Task;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FailureReason {
    NoBoxedAnswer,
    WrongValue,
    Malformed,
}

/// Outcome of judging one model output. `extracted` is the raw boxed text.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Judgment {
    pub correct: bool,
    pub extracted: Option<String>,
    pub failure_reason: Option<FailureReason>,
}

impl Judgment {
    fn missing() -> Self {
        Judgment {
            correct: false,
            extracted: None,
            failure_reason: Some(FailureReason::NoBoxedAnswer),
        }
    }
}

const BOXED: &str = "\\boxed{";

/// Content of the last balanced `\boxed{...}` in `output`.
pub fn extract_answer(output: &str) -> Option<String> {
    let mut found = None;
    let mut from = 0;
    while let Some(rel) = output[from..].find(BOXED) {
        let open = from + rel + BOXED.len();
        if let Some(close) = matching_brace(&output[open..]) {
            found = Some(output[open..open + close].trim().to_string());
        }
        from = open;
    }
    found
}

/// Byte offset of the `}` closing an already opened brace.
fn matching_brace(s: &str) -> Option<usize> {
    let mut depth = 1usize;
    for (i, c) in s.char_indices() {
        match c {
            '{' => depth += 1,
            '}' => {
                depth -= 1;
                if depth == 0 {
                    return Some(i);
                }
            }
            _ => {}
        }
    }
    None
}

/// Extracts and judges a full model output.
pub fn judge_output(output: &str, task: &Task) -> Judgment {
    match extract_answer(output) {
        Some(text) => judge(&text, &task.expected_answer),
        None => Judgment::missing(),
    }
}

/// Compares boxed text against an expected answer using the comparator for
/// the answer's kind.
pub fn judge(extracted: &str, expected: &AnswerValue) -> Judgment {
    let text = strip_markup(extracted);
    // A trailing sentence period is dropped unless the raw text already matches.
    let verdict = match compare(&text, expected) {
        Some(true) => Some(true),
        first => match text.strip_suffix('.') {
            Some(shorter) => compare(shorter.trim_end(), expected).or(first),
            None => first,
        },
    };
    Judgment {
        correct: verdict == Some(true),
        extracted: Some(extracted.to_string()),
        failure_reason: match verdict {
            Some(true) => None,
            Some(false) => Some(FailureReason::WrongValue),
            None => Some(FailureReason::Malformed),
        },
    }
}

/// Removes LaTeX wrappers a model may put around a plain answer.
fn strip_markup(s: &str) -> String {
    let mut t = s.trim().trim_matches('$').trim().to_string();
    for wrapper in ["\\text{", "\\mathrm{", "\\texttt{"] {
        if let Some(inner) = t.strip_prefix(wrapper).and_then(|r| r.strip_suffix('}')) {
            t = inner.trim().to_string();
        }
    }
    t.replace("\\times", "×")
        .replace("\\_", "_")
        .replace("\\%", "%")
}

fn squash(s: &str) -> String {
    s.split_whitespace()
        .collect::<Vec<_>>()
        .join(" ")
        .to_lowercase()
}

fn unify_dashes(s: &str) -> String {
    s.replace(['–', '—', '−'], "-")
}

/// None when the text cannot be read as the expected kind.
fn compare(text: &str, expected: &AnswerValue) -> Option<bool> {
    match expected {
        AnswerValue::Integer(want) => {
            let cleaned: String = unify_dashes(text)
                .chars()
                .filter(|c| !matches!(c, ',' | ' ' | '_'))
                .collect();
            let got = parse_decimal(&cleaned)?;
            Some(got.is_integer() && got.to_integer() == *want)
        }
        AnswerValue::Decimal { value, precision } => {
            let cleaned: String = unify_dashes(text)
                .chars()
                .filter(|c| !matches!(c, ',' | ' '))
                .collect();
            let got = parse_decimal(&cleaned)?;
            let want = parse_decimal(value).expect("expected decimals are well formed");
            Some(decimal_match(&got, &want, *precision))
        }
        AnswerValue::String(want) => Some(string_match(text, want)),
        AnswerValue::DayName(want) => Some(squash(text) == squash(want)),
        AnswerValue::Boolean(want) => {
            let got = match squash(text).as_str() {
                "yes" | "true" => true,
                "no" | "false" => false,
                _ => return None,
            };
            Some(got == *want)
        }
        AnswerValue::Date(want) => {
            let got = dates::parse_date(text, "answer").ok()?;
            Some(dates::format_date(got) == *want)
        }
        AnswerValue::StringList(want) => {
            let want = Literal::List(want.iter().cloned().map(Literal::Str).collect());
            Some(literal_match(&parse_literal(text).ok()?, &want))
        }
        AnswerValue::ValueList(want) => Some(literal_match(
            &parse_literal(text).ok()?,
            &Literal::List(want.clone()),
        )),
        AnswerValue::Matrix(want) => {
            let want = Literal::List(
                want.iter()
                    .map(|r| Literal::List(r.iter().map(|v| Literal::Int(*v)).collect()))
                    .collect(),
            );
            Some(literal_match(&parse_literal(text).ok()?, &want))
        }
    }
}

/// Equal after rounding both sides to `precision` places, or within a
/// relative tolerance of 1e-6.
fn decimal_match(got: &BigRational, want: &BigRational, precision: u32) -> bool {
    let round = |r: &BigRational| Exact::Rational(r.clone()).round(precision);
    if round(got) == round(want) {
        return true;
    }
    let diff = (got - want).abs();
    if want.is_zero() {
        return diff.is_zero();
    }
    (diff / want.abs()).to_f64().is_some_and(|r| r <= 1e-6)
}

fn string_match(text: &str, want: &str) -> bool {
    let (a, b) = (squash(&unify_dashes(text)), squash(&unify_dashes(want)));
    if a == b {
        return true;
    }
    // Factorizations: "2 * 3 * 7", "2x3x7" and "2 × 3 × 7" are the same answer.
    if want.contains('×') {
        let norm = |s: &str| -> String {
            s.chars()
                .filter(|c| !c.is_whitespace())
                .map(|c| {
                    if matches!(c, '*' | 'x' | '·') {
                        '×'
                    } else {
                        c
                    }
                })
                .collect()
        };
        return norm(&a) == norm(&b);
    }
    false
}

/// Element-wise, order-sensitive. Tuples and lists are interchangeable and
/// strings compare case-insensitively.
fn literal_match(got: &Literal, want: &Literal) -> bool {
    match (got, want) {
        (Literal::List(a) | Literal::Tuple(a), Literal::List(b) | Literal::Tuple(b)) => {
            a.len() == b.len() && a.iter().zip(b).all(|(x, y)| literal_match(x, y))
        }
        (Literal::Str(a), Literal::Str(b)) => squash(a) == squash(b),
        (Literal::Str(a), Literal::Int(b)) => a
            .trim()
            .parse::<BigInt>()
            .is_ok_and(|v| v == BigInt::from(*b)),
        (a, b) => a == b,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dec(v: &str, p: u32) -> AnswerValue {
        AnswerValue::Decimal {
            value: v.into(),
            precision: p,
        }
    }

    #[test]
    fn extracts_last_balanced_box() {
        assert_eq!(extract_answer("so \\boxed{40}").as_deref(), Some("40"));
        assert_eq!(
            extract_answer("\\boxed{39} then \\boxed{40}").as_deref(),
            Some("40")
        );
        assert_eq!(extract_answer("the answer is 40"), None);
        assert_eq!(
            extract_answer("\\boxed{\\frac{1}{2}}").as_deref(),
            Some("\\frac{1}{2}")
        );
        assert_eq!(
            extract_answer("\\boxed{7} and \\boxed{unterminated").as_deref(),
            Some("7")
        );
    }

    #[test]
    fn strings_ignore_case_and_spacing() {
        assert!(judge("paris", &AnswerValue::String("Paris".into())).correct);
        assert!(judge("Paris.", &AnswerValue::String("Paris".into())).correct);
        assert!(judge("... --- ...", &AnswerValue::String("... --- ...".into())).correct);
        assert!(judge("  Class-C8 ", &AnswerValue::String("Class-C8".into())).correct);
        let h = "5d41402abc4b2a76b9719d911017c592";
        assert!(judge(h, &AnswerValue::String(h.into())).correct);
        assert!(judge("2*3 * 7", &AnswerValue::String("2 × 3 × 7".into())).correct);
        assert!(!judge("London", &AnswerValue::String("Paris".into())).correct);
    }

    #[test]
    fn decimals_round_to_task_precision() {
        assert!(judge("6.330", &dec("6.33", 2)).correct);
        assert!(judge("6.3300001", &dec("6.33", 2)).correct);
        assert!(!judge("6.34", &dec("6.33", 2)).correct);
        assert_eq!(
            judge("about six", &dec("6.33", 2)).failure_reason,
            Some(FailureReason::Malformed)
        );
    }

    #[test]
    fn integers_are_exact() {
        let want = AnswerValue::int(70563);
        assert!(judge("70,563", &want).correct);
        assert!(judge("$70563$", &want).correct);
        assert!(!judge("70563.5", &want).correct);
        assert!(judge("−36", &AnswerValue::int(-36)).correct);
    }

    #[test]
    fn booleans_dates_and_lists() {
        assert!(judge("Yes", &AnswerValue::Boolean(true)).correct);
        assert!(judge("false", &AnswerValue::Boolean(false)).correct);
        assert!(judge("March 10, 2024", &AnswerValue::Date("2024-03-10".into())).correct);
        assert!(judge("2024-03-10", &AnswerValue::Date("2024-03-10".into())).correct);
        let regex = parse_literal("[('user', 'example', 'com')]").unwrap();
        let Literal::List(items) = regex else {
            unreachable!()
        };
        assert!(
            judge(
                "[(\"user\", \"example\", \"com\")]",
                &AnswerValue::ValueList(items.clone())
            )
            .correct
        );
        assert!(
            !judge(
                "[('example', 'user', 'com')]",
                &AnswerValue::ValueList(items)
            )
            .correct
        );
        assert!(
            judge(
                "[[1, 2], [3, 4]]",
                &AnswerValue::Matrix(vec![vec![1, 2], vec![3, 4]])
            )
            .correct
        );
    }

    #[test]
    fn missing_box_is_its_own_failure() {
        let j = Judgment::missing();
        assert!(!j.correct && j.extracted.is_none());
        assert_eq!(j.failure_reason, Some(FailureReason::NoBoxedAnswer));
    }
}
