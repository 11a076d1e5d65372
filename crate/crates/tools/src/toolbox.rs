//! Tool registry per environment family and dispatch of tool calls.

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use serde_json::{json, Map, Value};

use crate::answer::{AnswerValue, Literal};
use crate::calc::{render_rational, CalculatorSession};
use crate::codec::Scheme;
use crate::error::ToolError;
use crate::hash::HashAlgorithm;
use crate::lists::{IntList, Item};
use crate::regex_op::{RegexOp, RegexOutput};
use crate::schedule::{parse_interval, parse_time, Interval};
use crate::spec::{ParamType as P, ToolCall, ToolResult, ToolSpec};
use crate::state::EnvState;
use crate::stats::{rational_from_json, Stat};
use crate::{
    calc, codec, combinatorics, corpus, dates, hash, interp, kb, lists, matrix, prime, regex_op,
    schedule, stats,
};

/// The tool family an environment exposes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Toolset {
    Calculator,
    Statistics,
    Counting,
    Matrix,
    Prime,
    Retriever,
    HistoricalYear,
    GameRule,
    Hash,
    Decoding,
    ListManipulation,
    DateTime,
    CodeExecutor,
    ChainedCode,
    Schedule,
    RegexMatch,
}

pub fn specs_for(toolset: Toolset) -> Vec<ToolSpec> {
    match toolset {
        Toolset::Calculator => vec![
            ToolSpec::new("evaluate_expression", "Evaluates a mathematical expression string exactly.")
                .param("expr", P::String, "Expression using + - * / % ** and parentheses"),
            ToolSpec::new("get_last_result", "Returns the result of the previous evaluation."),
            ToolSpec::new("clear_last_result", "Clears the stored previous result."),
        ],
        Toolset::Statistics => vec![
            ToolSpec::new("compute_stat", "Computes a specified statistic over a list of numbers.")
                .param("data", P::NumberList, "The data values")
                .param("stat_type", P::String, "mean, median, std, variance, min, max, sum, percentile or correlation")
                .optional("data2", P::NumberList, "Second series for correlation")
                .optional("percentile", P::Number, "Percentile in [0, 100]")
                .optional("round_to", P::Integer, "Decimal places to round to"),
            ToolSpec::new("describe", "Summary statistics of a list of numbers.")
                .param("data", P::NumberList, "The data values"),
        ],
        Toolset::Counting => vec![
            ToolSpec::new("combination", "Number of k-combinations of n items; returns the exact integer.")
                .param("n", P::Integer, "Total items")
                .param("k", P::Integer, "Items chosen"),
            ToolSpec::new("permutation", "Number of k-permutations of n items; returns the exact integer.")
                .param("n", P::Integer, "Total items")
                .param("k", P::Integer, "Items arranged"),
            ToolSpec::new("factorial", "n factorial as an exact integer.").param("n", P::Integer, "Non-negative integer"),
        ],
        Toolset::Matrix => vec![
            ToolSpec::new("matrix_determinant", "Computes the determinant of a square matrix.")
                .param("matrix", P::IntMatrix, "Square integer matrix"),
            ToolSpec::new("matrix_multiply", "Multiplies two matrices.")
                .param("A", P::IntMatrix, "Left matrix")
                .param("B", P::IntMatrix, "Right matrix"),
            ToolSpec::new("matrix_trace", "Sum of the main diagonal of a square matrix.")
                .param("matrix", P::IntMatrix, "Square integer matrix"),
        ],
        Toolset::Prime => vec![
            ToolSpec::new("is_prime", "Checks whether n is prime.").param("n", P::Integer, "Integer to test"),
            ToolSpec::new("nth_prime", "Returns the n-th prime (1-indexed).").param("n", P::Integer, "Index, at least 1"),
            ToolSpec::new("factorize", "Returns the complete prime factorization of n.")
                .param("n", P::Integer, "Integer to factor"),
        ],
        Toolset::Retriever => vec![
            ToolSpec::new("search_corpus", "Searches document titles; returns ids, titles and short snippets.")
                .param("query", P::String, "Search keywords")
                .optional("top_k", P::Integer, "Number of hits (default 3)"),
            ToolSpec::new("read_doc", "Retrieves the full text of a specific document.")
                .param("doc_id", P::String, "Document id from search results"),
        ],
        Toolset::HistoricalYear => vec![ToolSpec::new("lookup_year", "Looks up an event and returns the year it occurred.")
            .param("event", P::String, "Event name")],
        Toolset::GameRule => vec![ToolSpec::new("lookup_rule", "Looks up a game rule and returns the numeric answer.")
            .param("game", P::String, "Game name")
            .param("attribute", P::String, "Rule attribute, e.g. number of players")],
        Toolset::Hash => vec![ToolSpec::new("compute_hash", "Computes a hash digest as lowercase hex.")
            .param(
                "algorithm",
                P::String,
                "md5, sha1, sha256, fnv1a_custom, djb2_custom, sdbm_custom, murmur_custom or jenkins_custom",
            )
            .param("input_string", P::String, "Text to hash")],
        Toolset::Decoding => vec![
            ToolSpec::new("decode", "Decodes text under a named cipher scheme.")
                .param("scheme", P::String, "morse, rot13, caesar, scramble1, scramble2, alpha7 or reverse")
                .param("ciphertext", P::String, "Encoded text")
                .optional("shift", P::Integer, "Shift for caesar"),
            ToolSpec::new("encode", "Encodes text under a named cipher scheme.")
                .param("scheme", P::String, "morse, rot13, caesar, scramble1, scramble2, alpha7 or reverse")
                .param("plaintext", P::String, "Plain text")
                .optional("shift", P::Integer, "Shift for caesar"),
        ],
        Toolset::ListManipulation => vec![
            ToolSpec::new("append", "Appends a value (or row) to the end of a list.")
                .param("list", P::IntList, "Integer list or 2D list")
                .param("value", P::IntOrRow, "Value or row to append"),
            ToolSpec::new("remove", "Removes the element (or row) at an index.")
                .param("list", P::IntList, "Integer list or 2D list")
                .param("index", P::Integer, "Position to remove"),
            ToolSpec::new("insert", "Inserts a value (or row) before an index.")
                .param("list", P::IntList, "Integer list or 2D list")
                .param("index", P::Integer, "Insert position")
                .param("value", P::IntOrRow, "Value or row to insert"),
            ToolSpec::new("sort", "Sorts a list ascending; sorts a 2D list along the specified axis.")
                .param("list", P::IntList, "Integer list or 2D list")
                .optional("axis", P::Integer, "For 2D lists: 0 sorts each column, 1 sorts each row"),
            ToolSpec::new("reverse", "Reverses a list.").param("list", P::IntList, "Integer list or 2D list"),
        ],
        Toolset::DateTime => vec![
            ToolSpec::new("date_add", "Adds a number of days to a date.")
                .param("date", P::String, "Date as YYYY-MM-DD")
                .param("days", P::Integer, "Days to add, may be negative"),
            ToolSpec::new("date_diff", "Signed number of days from date1 to date2.")
                .param("date1", P::String, "Start date as YYYY-MM-DD")
                .param("date2", P::String, "End date as YYYY-MM-DD"),
            ToolSpec::new("day_of_week", "Returns the weekday name of a date.").param("date", P::String, "Date as YYYY-MM-DD"),
        ],
        Toolset::CodeExecutor => vec![ToolSpec::new("run_python", "Executes Python code and returns the captured stdout output.")
            .param("code", P::String, "Python source")],
        Toolset::ChainedCode => vec![ToolSpec::new("run_code", "Executes Python code and returns the captured stdout output.")
            .param("code", P::String, "Python source")],
        Toolset::Schedule => vec![
            ToolSpec::new("find_free_slot", "Finds available time slots of a given duration within a window.")
                .param("meetings", P::StringList, "Busy intervals as HH:MM-HH:MM")
                .param("duration", P::Integer, "Slot length in minutes")
                .param("start", P::String, "Window start HH:MM")
                .param("end", P::String, "Window end HH:MM"),
            ToolSpec::new("check_conflict", "Checks whether a proposed meeting overlaps existing ones.")
                .param("meetings", P::StringList, "Busy intervals as HH:MM-HH:MM")
                .param("new_meeting", P::String, "Proposed interval HH:MM-HH:MM"),
            ToolSpec::new("list_meetings", "Lists meetings in chronological order.")
                .param("meetings", P::StringList, "Busy intervals as HH:MM-HH:MM"),
        ],
        Toolset::RegexMatch => vec![ToolSpec::new("regex_match", "Applies the specified regex operation to a text.")
            .param("pattern", P::String, "Regular expression")
            .param("text", P::String, "Input text")
            .param("operation", P::String, "findall, match, search or sub")
            .optional("repl", P::String, "Replacement for sub")],
    }
}

/// Executes calls for one trajectory. Holds the calculator session, so a
/// fresh toolbox is used per task.
#[derive(Debug)]
pub struct Toolbox<'a> {
    specs: Vec<ToolSpec>,
    state: &'a EnvState,
    calc: CalculatorSession,
}

impl<'a> Toolbox<'a> {
    pub fn new(specs: Vec<ToolSpec>, state: &'a EnvState) -> Self {
        Toolbox {
            specs,
            state,
            calc: CalculatorSession::new(),
        }
    }

    pub fn for_toolset(toolset: Toolset, state: &'a EnvState) -> Self {
        Self::new(specs_for(toolset), state)
    }

    pub fn specs(&self) -> &[ToolSpec] {
        &self.specs
    }

    pub fn spec(&self, name: &str) -> Option<&ToolSpec> {
        self.specs.iter().find(|s| s.name == name)
    }

    pub fn execute(&mut self, call: &ToolCall) -> ToolResult {
        match self.try_execute(&call.tool_name, &call.arguments) {
            Ok(r) => r,
            Err(e) => {
                tracing::debug!(tool = %call.tool_name, error = %e, "tool call failed");
                ToolResult::failure(&e)
            }
        }
    }

    pub fn try_execute(
        &mut self,
        name: &str,
        raw: &Map<String, Value>,
    ) -> Result<ToolResult, ToolError> {
        let spec = self
            .spec(name)
            .ok_or_else(|| ToolError::UnknownTool(name.to_string()))?;
        let args = Args(spec.coerce(raw)?);
        dispatch(name, &args, self.state, &mut self.calc)
    }
}

struct Args(Map<String, Value>);

impl Args {
    fn get(&self, name: &str) -> Result<&Value, ToolError> {
        self.0
            .get(name)
            .ok_or_else(|| ToolError::MissingArgument(name.to_string()))
    }

    fn str(&self, name: &str) -> Result<&str, ToolError> {
        self.get(name)?
            .as_str()
            .ok_or_else(|| ToolError::invalid(name, "expected a string"))
    }

    fn opt_str(&self, name: &str) -> Option<&str> {
        self.0.get(name).and_then(Value::as_str)
    }

    fn int(&self, name: &str) -> Result<i64, ToolError> {
        self.get(name)?
            .as_i64()
            .ok_or_else(|| ToolError::invalid(name, "expected an integer"))
    }

    fn opt_int(&self, name: &str) -> Result<Option<i64>, ToolError> {
        match self.0.get(name) {
            None => Ok(None),
            Some(_) => self.int(name).map(Some),
        }
    }

    fn numbers(&self, name: &str) -> Result<Vec<BigRational>, ToolError> {
        match self.get(name)? {
            Value::Array(items) => items.iter().map(rational_from_json).collect(),
            _ => Err(ToolError::invalid(name, "expected a list of numbers")),
        }
    }

    fn matrix(&self, name: &str) -> Result<Vec<Vec<i64>>, ToolError> {
        serde_json::from_value(self.get(name)?.clone())
            .map_err(|_| ToolError::invalid(name, "expected an integer matrix"))
    }

    fn strings(&self, name: &str) -> Result<Vec<String>, ToolError> {
        serde_json::from_value(self.get(name)?.clone())
            .map_err(|_| ToolError::invalid(name, "expected a list of strings"))
    }
}

fn non_negative(name: &str, v: i64) -> Result<u32, ToolError> {
    u32::try_from(v).map_err(|_| ToolError::invalid(name, "must be a non-negative integer"))
}

fn big(v: impl Into<BigInt>) -> ToolResult {
    ToolResult::from_answer(AnswerValue::int(v))
}

fn meetings(args: &Args) -> Result<Vec<Interval>, ToolError> {
    args.strings("meetings")?
        .iter()
        .map(|s| parse_interval(s))
        .collect()
}

fn list_answer(list: &IntList) -> ToolResult {
    let value = match list {
        IntList::Flat(v) => AnswerValue::ValueList(v.iter().map(|x| Literal::Int(*x)).collect()),
        IntList::Grid(rows) => AnswerValue::ValueList(
            rows.iter()
                .map(|r| Literal::List(r.iter().map(|x| Literal::Int(*x)).collect()))
                .collect(),
        ),
    };
    ToolResult::success(list.render(), list.to_json(), Some(value))
}

fn dispatch(
    name: &str,
    args: &Args,
    state: &EnvState,
    session: &mut CalculatorSession,
) -> Result<ToolResult, ToolError> {
    Ok(match name {
        "evaluate_expression" => rational_result(&session.evaluate(args.str("expr")?)?),
        "get_last_result" => match session.last_result() {
            Some(v) => rational_result(v),
            None => return Err(ToolError::NotFound("no previous result".into())),
        },
        "clear_last_result" => {
            session.clear();
            ToolResult::success("Last result cleared.", json!({ "cleared": true }), None)
        }
        "compute_stat" => {
            let data = args.numbers("data")?;
            let stat = Stat::parse(args.str("stat_type")?)?;
            let data2 = match args.0.get("data2") {
                Some(_) => Some(args.numbers("data2")?),
                None => None,
            };
            let pct = match args.0.get("percentile") {
                Some(v) => Some(rational_from_json(v)?),
                None => None,
            };
            let round_to = args
                .opt_int("round_to")?
                .map(|d| non_negative("round_to", d))
                .transpose()?;
            let exact = stats::compute(stat, &data, data2.as_deref(), pct.as_ref())?;
            let (text, precision) = stats::render(&exact, round_to);
            ToolResult::from_answer(AnswerValue::Decimal {
                value: text,
                precision,
            })
        }
        "describe" => {
            let rows = stats::describe(&args.numbers("data")?)?;
            let payload = rows
                .iter()
                .map(|(k, v)| format!("{k}={v}"))
                .collect::<Vec<_>>()
                .join(", ");
            let data: Map<String, Value> = rows
                .into_iter()
                .map(|(k, v)| (k.to_string(), Value::String(v)))
                .collect();
            ToolResult::success(payload, Value::Object(data), None)
        }
        "combination" => big(combinatorics::combination(args.int("n")?, args.int("k")?)?),
        "permutation" => big(combinatorics::permutation(args.int("n")?, args.int("k")?)?),
        "factorial" => big(combinatorics::factorial(args.int("n")?)?),
        "matrix_determinant" => big(matrix::determinant(&args.matrix("matrix")?)?),
        "matrix_trace" => big(matrix::trace(&args.matrix("matrix")?)?),
        "matrix_multiply" => ToolResult::from_answer(AnswerValue::Matrix(matrix::multiply(
            &args.matrix("A")?,
            &args.matrix("B")?,
        )?)),
        "is_prime" => {
            ToolResult::from_answer(AnswerValue::Boolean(prime::is_prime(args.int("n")?)?))
        }
        "nth_prime" => big(prime::nth_prime(args.int("n")?)?),
        "factorize" => {
            ToolResult::from_answer(AnswerValue::String(prime::factorize(args.int("n")?)?))
        }
        "search_corpus" => {
            let top_k = args.opt_int("top_k")?.unwrap_or(3);
            let hits = corpus::search(state.documents(), args.str("query")?, top_k)?;
            let data = serde_json::to_value(&hits).unwrap_or(Value::Null);
            let payload = if hits.is_empty() {
                "No matching documents.".to_string()
            } else {
                data.to_string()
            };
            ToolResult::success(payload, data, None)
        }
        "read_doc" => {
            let doc = corpus::read(state.documents(), args.str("doc_id")?)?;
            let words = corpus::word_count(&doc.content);
            let payload = format!(
                "[{}] {} ({} words): {}",
                doc.doc_id, doc.title, words, doc.content
            );
            let data = json!({
                "doc_id": doc.doc_id,
                "title": doc.title,
                "content": doc.content,
                "word_count": words,
                "facts": doc.facts,
            });
            ToolResult::success(payload, data, None)
        }
        "lookup_year" => {
            let e = kb::lookup_year(state.years(), args.str("event")?)?;
            let value = AnswerValue::int(e.year);
            let data =
                json!({ "event": e.event, "year": e.year, "context": e.context, "value": value });
            ToolResult::success(
                format!("{}: {} ({})", e.event, e.year, e.context),
                data,
                Some(value),
            )
        }
        "lookup_rule" => {
            let e = kb::lookup_rule(state.games(), args.str("game")?, args.str("attribute")?)?;
            let value = AnswerValue::int(e.value);
            let data = json!({ "game": e.game, "attribute": e.attribute, "answer": e.value, "description": e.description, "value": value });
            ToolResult::success(
                format!(
                    "{} ({}): {}. {}",
                    e.game, e.attribute, e.value, e.description
                ),
                data,
                Some(value),
            )
        }
        "compute_hash" => {
            let alg = HashAlgorithm::parse(args.str("algorithm")?)?;
            ToolResult::from_answer(AnswerValue::String(hash::compute(
                alg,
                args.str("input_string")?,
            )))
        }
        "decode" | "encode" => {
            let scheme = Scheme::parse(args.str("scheme")?, args.opt_int("shift")?)?;
            let out = if name == "decode" {
                codec::decode(scheme, args.str("ciphertext")?)?
            } else {
                codec::encode(scheme, args.str("plaintext")?)?
            };
            ToolResult::from_answer(AnswerValue::String(out))
        }
        "append" | "remove" | "insert" | "sort" | "reverse" => {
            let list = IntList::from_json(args.get("list")?)?;
            let out = match name {
                "append" => lists::append(list, Item::from_json(args.get("value")?)?)?,
                "insert" => lists::insert(
                    list,
                    args.int("index")?,
                    Item::from_json(args.get("value")?)?,
                )?,
                "remove" => lists::remove(list, args.int("index")?)?,
                "sort" => lists::sort(list, args.opt_int("axis")?)?,
                _ => lists::reverse(list),
            };
            list_answer(&out)
        }
        "date_add" => {
            let d = dates::add(
                dates::parse_date(args.str("date")?, "date")?,
                args.int("days")?,
            )?;
            ToolResult::from_answer(AnswerValue::Date(dates::format_date(d)))
        }
        "date_diff" => {
            let d1 = dates::parse_date(args.str("date1")?, "date1")?;
            let d2 = dates::parse_date(args.str("date2")?, "date2")?;
            big(dates::diff(d1, d2))
        }
        "day_of_week" => {
            let d = dates::parse_date(args.str("date")?, "date")?;
            ToolResult::from_answer(AnswerValue::DayName(dates::day_of_week(d).to_string()))
        }
        "run_python" | "run_code" => {
            let out = interp::run(args.str("code")?)?;
            let value = AnswerValue::String(out.clone());
            ToolResult::success(
                out.clone(),
                json!({ "stdout": out, "value": value }),
                Some(value),
            )
        }
        "find_free_slot" => {
            let ms = meetings(args)?;
            let duration = args.int("duration")?;
            if duration <= 0 {
                return Err(ToolError::invalid("duration", "must be positive"));
            }
            let duration = non_negative("duration", duration)?;
            let (start, end) = (
                parse_time(args.str("start")?)?,
                parse_time(args.str("end")?)?,
            );
            let slots = schedule::free_slots(&ms, duration, start, end)?;
            let first = schedule::first_slot(&ms, duration, start, end)?;
            let rendered = schedule::render_slots(&slots);
            let payload = if slots.is_empty() {
                format!("No free slot of {duration} minutes.")
            } else {
                format!("Free slots: {rendered}")
            };
            let value = AnswerValue::String(rendered);
            let data = json!({
                "slots": slots.iter().map(Interval::render).collect::<Vec<_>>(),
                "first_slot": first.map(|i| i.render()),
                "value": value,
            });
            ToolResult::success(payload, data, Some(value))
        }
        "check_conflict" => {
            let ms = meetings(args)?;
            let proposal = parse_interval(args.str("new_meeting")?)?;
            ToolResult::from_answer(AnswerValue::Boolean(schedule::conflicts(&ms, proposal)))
        }
        "list_meetings" => {
            let ms = meetings(args)?;
            ToolResult::success(
                schedule::list_meetings(&ms),
                json!({ "count": ms.len() }),
                None,
            )
        }
        "regex_match" => {
            let op = RegexOp::parse(args.str("operation")?)?;
            let out = regex_op::apply(
                op,
                args.str("pattern")?,
                args.str("text")?,
                args.opt_str("repl"),
            )?;
            let value = match &out {
                RegexOutput::List(items) => Some(AnswerValue::ValueList(items.clone())),
                RegexOutput::Matched(Some(s)) | RegexOutput::Text(s) => {
                    Some(AnswerValue::String(s.clone()))
                }
                RegexOutput::Matched(None) => None,
            };
            let data = json!({ "result": out.render(), "value": value });
            ToolResult::success(out.render(), data, value)
        }
        other => return Err(ToolError::UnknownTool(other.to_string())),
    })
}

fn rational_result(v: &BigRational) -> ToolResult {
    let text = render_rational(v);
    if v.is_integer() {
        big(v.to_integer())
    } else {
        let data = json!({ "numer": v.numer().to_string(), "denom": v.denom().to_string(), "approx": calc::decimal_string(v, 12, true) });
        ToolResult::success(text, data, None)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(tb: &mut Toolbox, name: &str, args: Value) -> ToolResult {
        let Value::Object(arguments) = args else {
            panic!("args must be an object")
        };
        tb.execute(&ToolCall {
            tool_name: name.into(),
            arguments,
            call_index: 0,
        })
    }

    #[test]
    fn calculator_session_remembers_last_result() {
        let state = EnvState::None;
        let mut tb = Toolbox::for_toolset(Toolset::Calculator, &state);
        assert_eq!(
            call(&mut tb, "evaluate_expression", json!({"expr": "20 + 20"})).payload,
            "40"
        );
        assert_eq!(call(&mut tb, "get_last_result", json!({})).payload, "40");
        call(&mut tb, "clear_last_result", json!({}));
        assert!(!call(&mut tb, "get_last_result", json!({})).ok);
    }

    #[test]
    fn unknown_and_foreign_tools_fail_softly() {
        let state = EnvState::None;
        let mut tb = Toolbox::for_toolset(Toolset::Prime, &state);
        let r = call(&mut tb, "evaluate_expression", json!({"expr": "1"}));
        assert!(!r.ok);
        assert!(r.payload.starts_with("Error: unknown tool"));
        let r = call(&mut tb, "is_prime", json!({}));
        assert!(r.payload.contains("missing required argument 'n'"));
    }

    #[test]
    fn string_arguments_are_coerced() {
        let state = EnvState::None;
        let mut tb = Toolbox::for_toolset(Toolset::Counting, &state);
        let r = call(&mut tb, "combination", json!({"n": "50", "k": 25}));
        assert_eq!(r.payload, "126410606437752");
        let mut tb = Toolbox::for_toolset(Toolset::ListManipulation, &state);
        let r = call(
            &mut tb,
            "insert",
            json!({"list": "[7, 19, 29]", "index": 2, "value": 36}),
        );
        assert_eq!(r.payload, "[7, 19, 36, 29]");
    }

    #[test]
    fn every_toolset_has_unique_names() {
        use Toolset::*;
        for ts in [
            Calculator,
            Statistics,
            Counting,
            Matrix,
            Prime,
            Retriever,
            HistoricalYear,
            GameRule,
            Hash,
            Decoding,
            ListManipulation,
            DateTime,
            CodeExecutor,
            ChainedCode,
            Schedule,
            RegexMatch,
        ] {
            let specs = specs_for(ts);
            let mut names: Vec<_> = specs.iter().map(|s| s.name.clone()).collect();
            names.sort();
            names.dedup();
            assert_eq!(names.len(), specs.len(), "{ts:?}");
            for s in &specs {
                let mut p: Vec<_> = s.parameters.iter().map(|p| &p.name).collect();
                p.sort();
                p.dedup();
                assert_eq!(p.len(), s.parameters.len());
            }
        }
    }

    #[test]
    fn schedule_tools() {
        let state = EnvState::None;
        let mut tb = Toolbox::for_toolset(Toolset::Schedule, &state);
        let r = call(
            &mut tb,
            "find_free_slot",
            json!({"meetings": ["09:00-10:00", "14:00-15:00"], "duration": 60, "start": "10:00", "end": "14:00"}),
        );
        assert_eq!(r.payload, "Free slots: 10:00-14:00");
        assert_eq!(r.data["first_slot"], "10:00-11:00");
        let r = call(
            &mut tb,
            "check_conflict",
            json!({"meetings": ["09:00-10:00"], "new_meeting": "10:00-10:30"}),
        );
        assert_eq!(r.value, Some(AnswerValue::Boolean(false)));
    }
}
