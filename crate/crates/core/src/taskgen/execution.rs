//! Category C generators: list manipulation, date/time, code execution,
//! scheduling, regex matching.

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;
use when2tool_tools::lists::{self, IntList, Item};
use when2tool_tools::schedule::{self, Interval};
use when2tool_tools::{dates, interp, regex_op, AnswerValue, Literal};

use super::names;
use super::text::{self, ints, pick};
use super::{Difficulty, Draft, EnvName, PlanStep, Projection, Source};

pub(super) fn source(env: EnvName, difficulty: Difficulty) -> Source {
    use Difficulty::*;
    Source::Random(match (env, difficulty) {
        (EnvName::ListManipulationEnv, Easy) => list_easy,
        (EnvName::ListManipulationEnv, Medium) => list_medium,
        (EnvName::ListManipulationEnv, Hard) => list_hard,
        (EnvName::DateTimeEnv, Easy) => date_easy,
        (EnvName::DateTimeEnv, Medium) => date_medium,
        (EnvName::DateTimeEnv, Hard) => date_hard,
        (EnvName::CodeExecutorEnv, Easy) => code_easy,
        (EnvName::CodeExecutorEnv, Medium) => code_medium,
        (EnvName::CodeExecutorEnv, Hard) => code_hard,
        (EnvName::ScheduleEnv, Easy) => schedule_easy,
        (EnvName::ScheduleEnv, Medium) => schedule_medium,
        (EnvName::ScheduleEnv, Hard) => schedule_hard,
        (EnvName::RegexMatchEnv, Easy) => regex_easy,
        (EnvName::RegexMatchEnv, Medium) => regex_medium,
        (EnvName::RegexMatchEnv, Hard) => regex_hard,
        _ => unreachable!("{env} is not an execution environment"),
    })
}

/// One list operation with its arguments.
#[derive(Debug, Clone)]
pub(super) enum ListOp {
    Append(Item),
    Insert(i64, Item),
    Remove(i64),
    Sort(Option<i64>),
    Reverse,
}

fn item_json(item: &Item) -> serde_json::Value {
    match item {
        Item::Scalar(x) => json!(x),
        Item::Row(r) => json!(r),
    }
}

fn item_text(item: &Item) -> String {
    match item {
        Item::Scalar(x) => x.to_string(),
        Item::Row(r) => text::list(r),
    }
}

impl ListOp {
    fn describe(&self) -> String {
        match self {
            ListOp::Append(v) => format!("append(value={})", item_text(v)),
            ListOp::Insert(i, v) => format!("insert(index={i}, value={})", item_text(v)),
            ListOp::Remove(i) => format!("remove(index={i})"),
            ListOp::Sort(None) => "sort()".into(),
            ListOp::Sort(Some(a)) => format!("sort(axis={a})"),
            ListOp::Reverse => "reverse()".into(),
        }
    }

    fn apply(&self, list: IntList) -> IntList {
        match self {
            ListOp::Append(v) => lists::append(list, v.clone()),
            ListOp::Insert(i, v) => lists::insert(list, *i, v.clone()),
            ListOp::Remove(i) => lists::remove(list, *i),
            ListOp::Sort(axis) => lists::sort(list, *axis),
            ListOp::Reverse => Ok(lists::reverse(list)),
        }
        .expect("generator produces valid list operations")
    }

    fn step(&self, list: serde_json::Value) -> PlanStep {
        let (tool, mut args) = match self {
            ListOp::Append(v) => ("append", json!({ "value": item_json(v) })),
            ListOp::Insert(i, v) => ("insert", json!({ "index": i, "value": item_json(v) })),
            ListOp::Remove(i) => ("remove", json!({ "index": i })),
            ListOp::Sort(None) => ("sort", json!({})),
            ListOp::Sort(Some(a)) => ("sort", json!({ "axis": a })),
            ListOp::Reverse => ("reverse", json!({})),
        };
        args["list"] = list;
        PlanStep::value(tool, args)
    }
}

fn list_value(list: &IntList) -> AnswerValue {
    let ints = |r: &[i64]| r.iter().map(|x| Literal::Int(*x)).collect::<Vec<_>>();
    match list {
        IntList::Flat(v) => AnswerValue::ValueList(ints(v)),
        IntList::Grid(rows) => {
            AnswerValue::ValueList(rows.iter().map(|r| Literal::List(ints(r))).collect())
        }
    }
}

/// One operation on an initial list.
pub(super) fn list_draft(initial: IntList, op: ListOp) -> Draft {
    let noun = if matches!(initial, IntList::Grid(_)) {
        "2D list"
    } else {
        "list"
    };
    let prompt = format!(
        "Initial {}. Apply {}. Return final {noun}.",
        initial.render(),
        op.describe()
    );
    let plan = vec![op.step(initial.to_json())];
    Draft::new(prompt, list_value(&op.apply(initial)), plan)
}

fn random_flat_op(rng: &mut ChaCha8Rng, len: usize, lo: i64, hi: i64) -> ListOp {
    match rng.gen_range(0..5) {
        0 => ListOp::Append(Item::Scalar(rng.gen_range(lo..=hi))),
        1 => ListOp::Insert(
            rng.gen_range(0..=len as i64),
            Item::Scalar(rng.gen_range(lo..=hi)),
        ),
        2 => ListOp::Remove(rng.gen_range(0..len as i64)),
        3 => ListOp::Sort(None),
        _ => ListOp::Reverse,
    }
}

fn list_easy(rng: &mut ChaCha8Rng) -> Draft {
    let n = rng.gen_range(3..=5);
    let op = random_flat_op(rng, n, 1, 40);
    list_draft(IntList::Flat(ints(rng, n, 1, 40)), op)
}

fn list_medium(rng: &mut ChaCha8Rng) -> Draft {
    let n = rng.gen_range(6..=10);
    let op = random_flat_op(rng, n, 40, 260);
    list_draft(IntList::Flat(ints(rng, n, 40, 260)), op)
}

fn list_hard(rng: &mut ChaCha8Rng) -> Draft {
    let rows = rng.gen_range(3..=5);
    let cols = rng.gen_range(3..=5);
    let grid: Vec<Vec<i64>> = (0..rows).map(|_| ints(rng, cols, 300, 5000)).collect();
    let op = match rng.gen_range(0..6) {
        0 => ListOp::Sort(Some(0)),
        1 => ListOp::Sort(Some(1)),
        2 => ListOp::Reverse,
        3 => ListOp::Append(Item::Row(ints(rng, cols, 300, 5000))),
        4 => ListOp::Insert(
            rng.gen_range(0..=rows as i64),
            Item::Row(ints(rng, cols, 300, 5000)),
        ),
        _ => ListOp::Remove(rng.gen_range(0..rows as i64)),
    };
    list_draft(IntList::Grid(grid), op)
}

fn days_in_month(year: i32, month: u32) -> u32 {
    match month {
        2 if year % 4 == 0 && (year % 100 != 0 || year % 400 == 0) => 29,
        2 => 28,
        4 | 6 | 9 | 11 => 30,
        _ => 31,
    }
}

/// (year, month, day) as YYYY-MM-DD.
fn iso(y: i32, m: u32, d: u32) -> String {
    format!("{y:04}-{m:02}-{d:02}")
}

fn random_date(rng: &mut ChaCha8Rng, years: std::ops::RangeInclusive<i32>) -> (i32, u32, u32) {
    let y = rng.gen_range(years);
    let m = rng.gen_range(1..=12);
    (y, m, rng.gen_range(1..=days_in_month(y, m)))
}

fn month_name(m: u32) -> &'static str {
    dates::MONTHS[m as usize - 1]
}

fn spoken(y: i32, m: u32, d: u32) -> String {
    format!("{} {d}, {y}", month_name(m))
}

pub(super) fn diff_draft(prompt: String, a: &str, b: &str) -> Draft {
    let days = dates::diff(
        dates::parse_date(a, "date1").unwrap(),
        dates::parse_date(b, "date2").unwrap(),
    );
    Draft::new(
        prompt,
        AnswerValue::int(days),
        vec![PlanStep::value(
            "date_diff",
            json!({ "date1": a, "date2": b }),
        )],
    )
}

pub(super) fn add_draft(prompt: String, date: &str, days: i64) -> Draft {
    let out = dates::add(dates::parse_date(date, "date").unwrap(), days).expect("date in range");
    Draft::new(
        prompt,
        AnswerValue::Date(dates::format_date(out)),
        vec![PlanStep::value(
            "date_add",
            json!({ "date": date, "days": days }),
        )],
    )
}

pub(super) fn weekday_draft(prompt: String, date: &str) -> Draft {
    let name = dates::day_of_week(dates::parse_date(date, "date").unwrap());
    Draft::new(
        prompt,
        AnswerValue::DayName(name.to_string()),
        vec![PlanStep::value("day_of_week", json!({ "date": date }))],
    )
}

/// Year used for easy within-month questions that state no year.
const NEUTRAL_YEAR: i32 = 2025;

fn date_easy(rng: &mut ChaCha8Rng) -> Draft {
    let m = rng.gen_range(1..=12);
    let len = days_in_month(NEUTRAL_YEAR, m);
    if rng.gen_bool(0.5) {
        let d1 = rng.gen_range(1..len);
        let d2 = rng.gen_range(d1 + 1..=len);
        let prompt = format!(
            "How many days between {} {d1} and {} {d2}?",
            month_name(m),
            month_name(m)
        );
        diff_draft(prompt, &iso(NEUTRAL_YEAR, m, d1), &iso(NEUTRAL_YEAR, m, d2))
    } else {
        let y = rng.gen_range(2020..=2030);
        let d = rng.gen_range(1..len - 1);
        let k = rng.gen_range(1..=(days_in_month(y, m) - d) as i64);
        let prompt = format!(
            "What date is {k} days after {}? Answer in YYYY-MM-DD format.",
            spoken(y, m, d)
        );
        add_draft(prompt, &iso(y, m, d), k)
    }
}

fn date_medium(rng: &mut ChaCha8Rng) -> Draft {
    if rng.gen_bool(0.5) {
        let (y, m, d) = random_date(rng, 2000..=2030);
        let start = iso(y, m, d);
        let span = rng.gen_range(10..=400);
        let end = dates::format_date(
            dates::add(dates::parse_date(&start, "date").unwrap(), span).unwrap(),
        );
        let (ey, em, ed) = parse_iso(&end);
        let prompt = if ey == y {
            format!(
                "How many days between {} {d} and {} {ed}, {y}?",
                month_name(m),
                month_name(em)
            )
        } else {
            format!(
                "How many days between {} and {}?",
                spoken(y, m, d),
                spoken(ey, em, ed)
            )
        };
        diff_draft(prompt, &start, &end)
    } else {
        let (y, m, d) = random_date(rng, 2000..=2030);
        let k = rng.gen_range(20..=200);
        let prompt = format!(
            "What date is {k} days after {}? Answer in YYYY-MM-DD format.",
            spoken(y, m, d)
        );
        add_draft(prompt, &iso(y, m, d), k)
    }
}

fn parse_iso(s: &str) -> (i32, u32, u32) {
    let mut it = s.split('-');
    let mut next = || {
        it.next()
            .and_then(|p| p.parse::<i64>().ok())
            .expect("iso date")
    };
    (next() as i32, next() as u32, next() as u32)
}

fn date_hard(rng: &mut ChaCha8Rng) -> Draft {
    match rng.gen_range(0..3) {
        0 => {
            let (y, m, d) = random_date(rng, 1900..=2100);
            weekday_draft(
                format!("What day of the week is {}?", spoken(y, m, d)),
                &iso(y, m, d),
            )
        }
        1 => {
            let (y1, m1, d1) = random_date(rng, 1900..=2000);
            let (y2, m2, d2) = random_date(rng, y1 + 2..=2100);
            let prompt = format!(
                "How many days between {} and {}?",
                spoken(y1, m1, d1),
                spoken(y2, m2, d2)
            );
            diff_draft(prompt, &iso(y1, m1, d1), &iso(y2, m2, d2))
        }
        _ => {
            let (y, m, d) = random_date(rng, 1950..=2050);
            let k = rng.gen_range(1000..=5000);
            let prompt = format!(
                "What date is {k} days after {}? Answer in YYYY-MM-DD format.",
                spoken(y, m, d)
            );
            add_draft(prompt, &iso(y, m, d), k)
        }
    }
}

pub(super) fn code_draft(code: &str) -> Draft {
    let out = interp::run(code)
        .unwrap_or_else(|e| panic!("generator produced failing code {code:?}: {e}"));
    let prompt = if code.contains('\n') {
        format!("What is the output of the following code?\n```python\n{code}\n```")
    } else {
        format!("What is the output of: {code}")
    };
    Draft::new(
        prompt,
        AnswerValue::String(out),
        vec![PlanStep::value("run_python", json!({ "code": code }))],
    )
}

fn lower_word(rng: &mut ChaCha8Rng) -> String {
    names::short_word(rng).to_lowercase()
}

fn code_easy(rng: &mut ChaCha8Rng) -> Draft {
    let w = lower_word(rng);
    let [a, b, c] = [0; 3].map(|_| rng.gen_range(2..=50i64));
    let xs = text::list(&{
        let n = rng.gen_range(3..=6);
        ints(rng, n, 1, 60)
    });
    let code = match rng.gen_range(0..10) {
        0 => format!("print(len('{w}'))"),
        1 => format!(
            "print(sum(i*i for i in range(1, {})))",
            rng.gen_range(3..=15)
        ),
        2 => format!("print('{w}'[::-1])"),
        3 => format!("print({a} * {b} - {c})"),
        4 => format!("print(max({xs}))"),
        5 => format!("print('{w}'.upper())"),
        6 => format!("print({} // {b}, {} % {b})", a * 7, a * 7),
        7 => format!("print(sorted({xs}))"),
        8 => {
            let ch = w.chars().nth(rng.gen_range(0..w.len())).unwrap();
            format!("print('{w}'.count('{ch}'))")
        }
        _ => format!("print([x * {c} for x in range({})])", rng.gen_range(2..=6)),
    };
    code_draft(&code)
}

fn code_medium(rng: &mut ChaCha8Rng) -> Draft {
    let code = match rng.gen_range(0..8) {
        0 => format!(
            "total = 0\nfor i in range(1, {}):\n    if i % {} == 0:\n        total += i\nprint(total)",
            rng.gen_range(20..=120),
            rng.gen_range(2..=9)
        ),
        1 => {
            let ws: Vec<String> = (0..rng.gen_range(4..=6)).map(|_| format!("'{}'", lower_word(rng))).collect();
            format!("words = [{}]\nprint([w.upper() for w in words if len(w) > {}])", ws.join(", "), rng.gen_range(4..=7))
        }
        2 => {
            let s: Vec<String> = (0..rng.gen_range(3..=5)).map(|_| lower_word(rng)).collect();
            format!(
                "s = '{}'\ncount = 0\nfor ch in s:\n    if ch in 'aeiou':\n        count += 1\nprint(count)",
                s.join(" ")
            )
        }
        3 => format!(
            "xs = {}\nevens = [x for x in xs if x % 2 == 0]\nprint(sum(evens), len(evens))",
            text::list(&{ let n = rng.gen_range(6..=10); ints(rng, n, 1, 99) })
        ),
        4 => format!("n = {}\nfact = 1\nfor i in range(2, n + 1):\n    fact *= i\nprint(fact)", rng.gen_range(5..=15)),
        5 => format!(
            "x = {}\ny = {}\nwhile y:\n    x, y = y, x % y\nprint(x)",
            rng.gen_range(2..=40) * 6,
            rng.gen_range(2..=40) * 4
        ),
        6 => {
            let s: Vec<String> = (0..rng.gen_range(2..=4)).map(|_| lower_word(rng)).collect();
            format!("s = '{}'\nprint(' '.join([w.capitalize() for w in s.split()]))", s.join(" "))
        }
        _ => format!(
            "n = {}\ndigits = 0\nwhile n > 0:\n    digits += n % 10\n    n = n // 10\nprint(digits)",
            rng.gen_range(1000..=999_999)
        ),
    };
    code_draft(&code)
}

pub(super) fn collatz_code(n: i64) -> String {
    format!(
        "n = {n}\nsteps = 0\nwhile n != 1:\n    if n % 2 == 0:\n        n = n // 2\n    else:\n        n = 3 * n + 1\n    steps += 1\nprint(steps)"
    )
}

fn lis_code(xs: &[i64]) -> String {
    format!(
        "xs = {}\nd = [1] * len(xs)\nfor i in range(len(xs)):\n    for j in range(i):\n        if xs[j] < xs[i]:\n            d[i] = max(d[i], d[j] + 1)\nprint(max(d))",
        text::list(xs)
    )
}

fn coin_code(coins: &[i64], amount: i64) -> String {
    format!(
        "coins = {}\namount = {amount}\ndp = [0] + [amount + 1] * amount\nfor a in range(1, amount + 1):\n    for c in coins:\n        if c <= a and dp[a - c] + 1 < dp[a]:\n            dp[a] = dp[a - c] + 1\nprint(dp[amount])",
        text::list(coins)
    )
}

fn code_hard(rng: &mut ChaCha8Rng) -> Draft {
    let code = match rng.gen_range(0..7) {
        0 => collatz_code(rng.gen_range(10..=2000)),
        1 => format!(
            "def fib(n):\n    a, b = 0, 1\n    for _ in range(n):\n        a, b = b, a + b\n    return a\nprint(fib({}))",
            rng.gen_range(30..=90)
        ),
        2 => {
            let mut coins = vec![1, rng.gen_range(3..=6), rng.gen_range(7..=12), rng.gen_range(15..=25)];
            coins.dedup();
            coin_code(&coins, rng.gen_range(30..=150))
        }
        3 => lis_code(&{ let n = rng.gen_range(12..=16); ints(rng, n, 1, 99) }),
        4 => format!(
            "def f(n):\n    if n <= 1:\n        return 1\n    return f(n - 1) + 2 * f(n - 2)\nprint(f({}))",
            rng.gen_range(8..=18)
        ),
        5 => {
            let n = rng.gen_range(15..=40);
            format!(
                "count = 0\nfor i in range(1, {n}):\n    for j in range(i + 1, {n}):\n        if (i + j) % {} == 0:\n            count += 1\nprint(count)",
                rng.gen_range(3..=11)
            )
        }
        _ => {
            let s: String = (0..rng.gen_range(12..=20)).map(|_| *pick(rng, &['a', 'b', 'c'])).collect();
            format!(
                "s = '{s}'\nout = ''\ni = 0\nwhile i < len(s):\n    j = i\n    while j < len(s) and s[j] == s[i]:\n        j += 1\n    out += s[i] + str(j - i)\n    i = j\nprint(out)"
            )
        }
    };
    code_draft(&code)
}

/// Minutes since midnight rendered as "H:MM" without a leading zero.
fn loose_time(m: u32) -> String {
    format!("{}:{:02}", m / 60, m % 60)
}

fn loose_interval(i: &Interval) -> String {
    format!("{}-{}", loose_time(i.start), loose_time(i.end))
}

fn meeting_strings(ms: &[Interval]) -> Vec<String> {
    ms.iter().map(Interval::render).collect()
}

fn slot_step(
    ms: &[Interval],
    duration: u32,
    start: u32,
    end: u32,
    project: Projection,
) -> PlanStep {
    PlanStep::new(
        "find_free_slot",
        json!({
            "meetings": meeting_strings(ms),
            "duration": duration,
            "start": schedule::fmt_time(start),
            "end": schedule::fmt_time(end),
        }),
        project,
    )
}

pub(super) fn free_slot_question(ms: &[Interval], hours: u32, start: u32, end: u32) -> Draft {
    let listed: Vec<String> = ms.iter().map(loose_interval).collect();
    let prompt = format!(
        "Meetings: {}. Is there a free {hours}-hour slot between {} and {}?",
        listed.join(", "),
        loose_time(start),
        loose_time(end)
    );
    let free = !schedule::free_slots(ms, hours * 60, start, end)
        .expect("valid window")
        .is_empty();
    Draft::new(
        prompt,
        AnswerValue::Boolean(free),
        vec![slot_step(ms, hours * 60, start, end, Projection::NonEmpty)],
    )
}

fn random_meetings(
    rng: &mut ChaCha8Rng,
    n: usize,
    start: u32,
    end: u32,
    unit: u32,
    max_len: u32,
) -> Vec<Interval> {
    let mut ms: Vec<Interval> = (0..n)
        .map(|_| {
            let len = unit * rng.gen_range(1..=max_len / unit);
            let s = unit * rng.gen_range(start / unit..=(end - len) / unit);
            Interval::new(s, s + len).expect("positive length")
        })
        .collect();
    ms.sort();
    ms.dedup();
    ms
}

fn schedule_easy(rng: &mut ChaCha8Rng) -> Draft {
    let start = 60 * rng.gen_range(8..=10);
    let end = 60 * rng.gen_range(15..=18);
    let n = rng.gen_range(2..=3);
    let ms = random_meetings(rng, n, start, end, 60, 120);
    free_slot_question(&ms, rng.gen_range(1..=3), start, end)
}

fn schedule_medium(rng: &mut ChaCha8Rng) -> Draft {
    let (start, end) = (9 * 60, 17 * 60);
    loop {
        let n = rng.gen_range(6..=10);
        let ms = random_meetings(rng, n, start, end, 15, 90);
        let duration = *pick(rng, &[30, 45, 60]);
        let slots = schedule::free_slots(&ms, duration, start, end).expect("valid window");
        if slots.is_empty() {
            continue;
        }
        let prompt = format!(
            "Meetings: {}. List all free slots of at least {duration} minutes between 09:00 and 17:00.",
            meeting_strings(&ms).join(", ")
        );
        let value = AnswerValue::String(schedule::render_slots(&slots));
        return Draft::new(
            prompt,
            value,
            vec![slot_step(&ms, duration, start, end, Projection::Value)],
        );
    }
}

fn schedule_hard(rng: &mut ChaCha8Rng) -> Draft {
    let (start, end) = (8 * 60, 18 * 60);
    loop {
        let n = rng.gen_range(15..=20);
        let ms = random_meetings(rng, n, start, end, 15, 75);
        let Some(first) = schedule::first_slot(&ms, 60, start, end).expect("valid window") else {
            continue;
        };
        let prompt = format!(
            "Meetings: {}. What is the first available 60-minute slot between 08:00 and 18:00?",
            meeting_strings(&ms).join(", ")
        );
        let plan = vec![slot_step(&ms, 60, start, end, Projection::FirstSlot)];
        return Draft::new(prompt, AnswerValue::String(first.render()), plan);
    }
}

/// None when the pattern finds nothing.
pub(super) fn findall_draft(pattern: &str, text: &str) -> Option<Draft> {
    let found = regex_op::findall(pattern, text).expect("generator patterns compile");
    if found.is_empty() {
        return None;
    }
    let prompt = format!("What does re.findall(r'{pattern}', '{text}') return?");
    let plan = vec![PlanStep::value(
        "regex_match",
        json!({ "pattern": pattern, "text": text, "operation": "findall" }),
    )];
    Some(Draft::new(prompt, AnswerValue::ValueList(found), plan))
}

fn alnum_text(rng: &mut ChaCha8Rng, parts: usize) -> String {
    (0..parts)
        .map(|_| {
            if rng.gen_bool(0.5) {
                lower_word(rng)
            } else {
                rng.gen_range(1..10_000).to_string()
            }
        })
        .collect()
}

fn sentence(rng: &mut ChaCha8Rng, words: usize) -> String {
    (0..words)
        .map(|_| lower_word(rng))
        .collect::<Vec<_>>()
        .join(" ")
}

fn regex_easy(rng: &mut ChaCha8Rng) -> Draft {
    loop {
        let (pattern, text) = match rng.gen_range(0..5) {
            0 => (r"\d+".to_string(), alnum_text(rng, 4)),
            1 => (r"[a-z]+".to_string(), alnum_text(rng, 4)),
            2 => {
                let w: String = names::word(rng, 3)
                    .chars()
                    .map(|c| {
                        if rng.gen_bool(0.4) {
                            c.to_ascii_uppercase()
                        } else {
                            c
                        }
                    })
                    .collect();
                (r"[A-Z]".to_string(), w)
            }
            3 => (
                format!(r"\b\w{{{}}}\b", rng.gen_range(3..=6)),
                sentence(rng, 5),
            ),
            _ => (r"[aeiou]".to_string(), lower_word(rng)),
        };
        if let Some(d) = findall_draft(&pattern, &text) {
            return d;
        }
    }
}

fn regex_medium(rng: &mut ChaCha8Rng) -> Draft {
    loop {
        let (pattern, text) = match rng.gen_range(0..5) {
            0 => {
                let a = format!("{}@{}.com", lower_word(rng), lower_word(rng));
                let b = format!("{}@{}.org", lower_word(rng), lower_word(rng));
                let c = format!("{}@{}.com", lower_word(rng), lower_word(rng));
                (
                    r"(\w+)@(\w+)\.(\w+)".to_string(),
                    format!("Contact {a}, {b} or {c}"),
                )
            }
            1 => (
                r"(?<=\$)\d+".to_string(),
                format!(
                    "Prices: ${}, ${} and {} items at ${}",
                    rng.gen_range(1..1000),
                    rng.gen_range(1..1000),
                    rng.gen_range(1..100),
                    rng.gen_range(1..1000)
                ),
            ),
            2 => (
                r"\d+(?=px)".to_string(),
                format!(
                    "width: {}px; height: {}px; margin: {}em; padding: {}px",
                    rng.gen_range(1..1000),
                    rng.gen_range(1..1000),
                    rng.gen_range(1..50),
                    rng.gen_range(1..50)
                ),
            ),
            3 => {
                let words = [
                    "cat", "cats", "dog", "dogs", "cow", "bird", "catalog", "hotdog",
                ];
                let t: Vec<&str> = (0..6).map(|_| *pick(rng, &words)).collect();
                (r"(cat|dog)s?".to_string(), t.join(" "))
            }
            _ => {
                let mut phone = || {
                    format!(
                        "{}-{}",
                        rng.gen_range(200..1000),
                        rng.gen_range(1000..10_000)
                    )
                };
                let (p, q) = (phone(), phone());
                (
                    r"(\d{3})-(\d{4})".to_string(),
                    format!("Call {p} or {q} before noon"),
                )
            }
        };
        if let Some(d) = findall_draft(&pattern, &text) {
            return d;
        }
    }
}

fn regex_hard(rng: &mut ChaCha8Rng) -> Draft {
    loop {
        let (pattern, text) = match rng.gen_range(0..5) {
            0 => {
                let t: Vec<String> = (0..12)
                    .map(|_| {
                        let n = rng.gen_range(2..=5);
                        let w: String = (0..n)
                            .map(|_| (b'a' + rng.gen_range(0..26u8)) as char)
                            .collect();
                        format!("{w}{}", rng.gen_range(0..10))
                    })
                    .collect();
                (r"(?=([a-z]{3}))".to_string(), t.concat())
            }
            1 => {
                let t: Vec<String> = (0..14)
                    .map(|_| {
                        let n = rng.gen_range(1..=3);
                        let d: String = (0..n)
                            .map(|_| (b'0' + rng.gen_range(0..10u8)) as char)
                            .collect();
                        format!("{d}{}", (b'a' + rng.gen_range(0..26u8)) as char)
                    })
                    .collect();
                (r"(?=(\d\d))".to_string(), t.concat())
            }
            2 => (r"(\w)\1".to_string(), sentence(rng, 10)),
            3 => {
                let mut ws: Vec<String> = (0..10).map(|_| lower_word(rng)).collect();
                for _ in 0..2 {
                    let i = rng.gen_range(0..ws.len());
                    let w = ws[i].clone();
                    ws.insert(i, w);
                }
                (r"\b(\w+) \1\b".to_string(), ws.join(" "))
            }
            _ => {
                let ws: Vec<String> = (0..10)
                    .map(|_| {
                        let w = lower_word(rng);
                        if rng.gen_bool(0.3) {
                            w.to_uppercase()
                        } else {
                            w
                        }
                    })
                    .collect();
                (r"(?<![a-z])[A-Z]{2,}(?![a-z])".to_string(), ws.join(" "))
            }
        };
        if text.len() < 60 {
            continue;
        }
        if let Some(d) = findall_draft(&pattern, &text) {
            return d;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn leap_years() {
        assert_eq!(days_in_month(2024, 2), 29);
        assert_eq!(days_in_month(1900, 2), 28);
        assert_eq!(days_in_month(2000, 2), 29);
    }

    #[test]
    fn list_prompt_format() {
        let d = list_draft(
            IntList::Flat(vec![7, 19, 29]),
            ListOp::Insert(2, Item::Scalar(36)),
        );
        assert_eq!(
            d.prompt,
            "Initial [7, 19, 29]. Apply insert(index=2, value=36). Return final list."
        );
        assert_eq!(d.expected.render(), "[7, 19, 36, 29]");
    }
}
