//! Category A generators: calculator, statistics, counting, matrix, prime.

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;
use when2tool_tools::{calc, combinatorics, matrix, prime, stats, AnswerValue};

use super::text::{self, pick};
use super::{Difficulty, Draft, EnvName, PlanStep, Source};

pub(super) fn source(env: EnvName, difficulty: Difficulty) -> Source {
    use Difficulty::*;
    Source::Random(match (env, difficulty) {
        (EnvName::CalculatorEnv, Easy) => calc_easy,
        (EnvName::CalculatorEnv, Medium) => calc_medium,
        (EnvName::CalculatorEnv, Hard) => calc_hard,
        (EnvName::StatisticsEnv, Easy) => stats_easy,
        (EnvName::StatisticsEnv, Medium) => stats_medium,
        (EnvName::StatisticsEnv, Hard) => stats_hard,
        (EnvName::CountingEnv, Easy) => counting_easy,
        (EnvName::CountingEnv, Medium) => counting_medium,
        (EnvName::CountingEnv, Hard) => counting_hard,
        (EnvName::MatrixEnv, Easy) => matrix_easy,
        (EnvName::MatrixEnv, Medium) => matrix_medium,
        (EnvName::MatrixEnv, Hard) => matrix_hard,
        (EnvName::PrimeEnv, Easy) => prime_easy,
        (EnvName::PrimeEnv, Medium) => prime_medium,
        (EnvName::PrimeEnv, Hard) => prime_hard,
        _ => unreachable!("{env} is not a scale environment"),
    })
}

/// Evaluates an ASCII expression that is known to have an integer value.
pub(super) fn eval_int(expr: &str) -> BigInt {
    let v = calc::evaluate(expr)
        .unwrap_or_else(|e| panic!("generator produced bad expression {expr}: {e}"));
    assert!(v.is_integer(), "{expr} is not an integer");
    v.to_integer()
}

pub(super) fn calc_draft(expr: &str) -> Draft {
    let prompt = format!("Compute exactly: {}", expr.replace('*', "×"));
    Draft::new(
        prompt,
        AnswerValue::Integer(eval_int(expr)),
        vec![PlanStep::value(
            "evaluate_expression",
            json!({ "expr": expr }),
        )],
    )
}

fn calc_easy(rng: &mut ChaCha8Rng) -> Draft {
    let [a, b, c] = [0; 3].map(|_| rng.gen_range(2..=40i64));
    let expr = match rng.gen_range(0..5) {
        0 => format!("{a} + {b}"),
        1 => format!("{} - {}", a.max(b), a.min(b)),
        2 => format!("{a} * {b}"),
        3 => format!("({a} + {b}) - {c}"),
        _ => format!("({a} * {b}) + {c}"),
    };
    calc_draft(&expr)
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

fn calc_medium(rng: &mut ChaCha8Rng) -> Draft {
    let mut n = || rng.gen_range(80..=900i64);
    let [a, b, c, d] = [0; 4].map(|_| n());
    let expr = match rng.gen_range(0..5) {
        0 => format!("({a} * {b}) - {c} + {d}"),
        1 => format!("{a} * {b} + {c}"),
        2 => {
            // (a * b') / c with b' chosen so the quotient is exact.
            let step = c / gcd(a, c);
            let lo = (80 + step - 1) / step;
            let hi = 900 / step;
            let b = step * rng.gen_range(lo.max(1)..=hi.max(lo.max(1)));
            format!("({a} * {b}) / {c}")
        }
        3 => format!("({a} * {b}) % {c}"),
        _ => format!("{a} * {b} - {c} * {d}"),
    };
    calc_draft(&expr)
}

fn calc_hard(rng: &mut ChaCha8Rng) -> Draft {
    let mut n = || rng.gen_range(1_000_000_000..=1_000_000_000_000i64);
    let [a, b, c] = [0; 3].map(|_| n());
    let expr = match rng.gen_range(0..5) {
        0 => format!("({a} * {b}) - {c}"),
        1 => format!("({a} * {b}) + {c}"),
        2 => format!("{a} * {b}"),
        3 => format!("({} - {}) * {c}", a.max(b), a.min(b)),
        _ => format!("({a} + {b}) * {c}"),
    };
    calc_draft(&expr)
}

fn rationals(xs: &[i64]) -> Vec<BigRational> {
    xs.iter()
        .map(|x| BigRational::from_integer(BigInt::from(*x)))
        .collect()
}

/// Computes a statistic and renders it at `digits`, returning None when
/// the statistic is undefined for the data.
pub(super) fn stat_value(
    stat: stats::Stat,
    xs: &[i64],
    ys: Option<&[i64]>,
    pct: Option<i64>,
    digits: u32,
) -> Option<AnswerValue> {
    let data2 = ys.map(rationals);
    let p = pct.map(|p| BigRational::from_integer(BigInt::from(p)));
    let exact = stats::compute(stat, &rationals(xs), data2.as_deref(), p.as_ref()).ok()?;
    let (value, precision) = stats::render(&exact, Some(digits));
    Some(AnswerValue::Decimal { value, precision })
}

pub(super) fn stat_step(stat: &str, xs: &[i64], extra: serde_json::Value, digits: u32) -> PlanStep {
    let mut args = json!({ "data": xs, "stat_type": stat, "round_to": digits });
    if let (Some(a), serde_json::Value::Object(e)) = (args.as_object_mut(), extra) {
        a.extend(e);
    }
    PlanStep::value("compute_stat", args)
}

fn stats_easy(rng: &mut ChaCha8Rng) -> Draft {
    let n = rng.gen_range(3..=5);
    let xs = text::ints(rng, n, 1, 20);
    let (stat, name) = *pick(
        rng,
        &[(stats::Stat::Mean, "mean"), (stats::Stat::Median, "median")],
    );
    let exact = stat_value(stat, &xs, None, None, 2).expect("mean and median are defined");
    let integral = matches!(&exact, AnswerValue::Decimal { value, .. } if value.ends_with(".00"));
    let digits = if integral { 0 } else { 2 };
    let expected = stat_value(stat, &xs, None, None, digits).expect("defined");
    let suffix = if integral {
        ""
    } else {
        " Round to 2 decimal places."
    };
    let prompt = format!("What is the {name} of {}?{suffix}", text::list(&xs));
    Draft::new(
        prompt,
        expected,
        vec![stat_step(name, &xs, json!({}), digits)],
    )
}

fn stats_medium(rng: &mut ChaCha8Rng) -> Draft {
    let n = rng.gen_range(8..=15);
    let xs = text::ints(rng, n, 10, 99);
    if rng.gen_bool(0.5) {
        let expected = stat_value(stats::Stat::Std, &xs, None, None, 2).expect("std is defined");
        let prompt = format!(
            "What is the population standard deviation of {}? Round to 2 decimal places.",
            text::list(&xs)
        );
        Draft::new(prompt, expected, vec![stat_step("std", &xs, json!({}), 2)])
    } else {
        let p = *pick(rng, &[10i64, 25, 75, 90]);
        let expected = stat_value(stats::Stat::Percentile, &xs, None, Some(p), 2)
            .expect("percentile is defined");
        let prompt = format!(
            "What is the {} percentile of {} using linear interpolation? Round to 2 decimal places.",
            text::ordinal(p as u64),
            text::list(&xs)
        );
        Draft::new(
            prompt,
            expected,
            vec![stat_step("percentile", &xs, json!({ "percentile": p }), 2)],
        )
    }
}

fn stats_hard(rng: &mut ChaCha8Rng) -> Draft {
    loop {
        let n = rng.gen_range(20..=30);
        let xs = text::ints(rng, n, 10, 99);
        let slope = *pick(rng, &[-3i64, -2, -1, 1, 2, 3]);
        let noise = rng.gen_range(10..=80);
        let ys: Vec<i64> = xs
            .iter()
            .map(|x| slope * x + rng.gen_range(-noise..=noise))
            .collect();
        let Some(expected) = stat_value(stats::Stat::Correlation, &xs, Some(&ys), None, 4) else {
            continue;
        };
        let prompt = format!(
            "What is the Pearson correlation between X={} and Y={}? Round to 4 decimal places.",
            text::list(&xs),
            text::list(&ys)
        );
        return Draft::new(
            prompt,
            expected,
            vec![stat_step("correlation", &xs, json!({ "data2": ys }), 4)],
        );
    }
}

fn big(v: num_bigint::BigUint) -> AnswerValue {
    AnswerValue::Integer(BigInt::from(v))
}

pub(super) fn choose(n: i64, k: i64, prompt: String) -> Draft {
    let v = combinatorics::combination(n, k).expect("valid combination");
    Draft::new(
        prompt,
        big(v),
        vec![PlanStep::value("combination", json!({ "n": n, "k": k }))],
    )
}

pub(super) fn arrange(n: i64, k: i64, prompt: String) -> Draft {
    let v = combinatorics::permutation(n, k).expect("valid permutation");
    Draft::new(
        prompt,
        big(v),
        vec![PlanStep::value("permutation", json!({ "n": n, "k": k }))],
    )
}

pub(super) fn fact(n: i64) -> Draft {
    let v = combinatorics::factorial(n).expect("valid factorial");
    Draft::new(
        format!("What is {n}!?"),
        big(v),
        vec![PlanStep::value("factorial", json!({ "n": n }))],
    )
}

fn counting_easy(rng: &mut ChaCha8Rng) -> Draft {
    let n = rng.gen_range(4..=25);
    let k = rng.gen_range(1..=if n <= 10 { n - 1 } else { 3 });
    match rng.gen_range(0..9) {
        0 => choose(
            n,
            k,
            format!("How many ways can you choose {k} items from {n}?"),
        ),
        1 => choose(n, k, format!("Compute C({n},{k}).")),
        2 => choose(n, k, format!("What is C({n},{k})?")),
        3 => choose(
            n,
            k,
            format!("How many {k}-element subsets does a set of {n} elements have?"),
        ),
        4 => arrange(n, k, format!("Compute P({n},{k}).")),
        5 => arrange(n, k, format!("What is P({n},{k})?")),
        6 => arrange(
            n,
            k,
            format!("How many ways can you arrange {k} of {n} items in order?"),
        ),
        _ => fact(rng.gen_range(3..=8)),
    }
}

fn counting_medium(rng: &mut ChaCha8Rng) -> Draft {
    match rng.gen_range(0..6) {
        0 => {
            let (n, k) = (rng.gen_range(15..=30), rng.gen_range(4..=10));
            choose(n, k, format!("Compute C({n},{k})."))
        }
        1 => {
            let (n, k) = (rng.gen_range(15..=30), rng.gen_range(4..=10));
            choose(n, k, format!("A committee of {k} is chosen from {n} people. How many committees are possible?"))
        }
        2 => {
            let (n, k) = (rng.gen_range(10..=25), rng.gen_range(3..=6));
            arrange(n, k, format!("Compute P({n},{k})."))
        }
        3 => {
            let (n, k) = (rng.gen_range(10..=25), rng.gen_range(3..=6));
            arrange(
                n,
                k,
                format!("In how many ways can {k} of {n} distinct books be arranged in a row?"),
            )
        }
        4 => {
            let (n, k) = (rng.gen_range(10..=25), rng.gen_range(3..=6));
            arrange(
                n,
                k,
                format!("How many ways can {n} runners finish in the top {k} places?"),
            )
        }
        _ => fact(rng.gen_range(10..=20)),
    }
}

fn counting_hard(rng: &mut ChaCha8Rng) -> Draft {
    match rng.gen_range(0..3) {
        0 => {
            let n = rng.gen_range(40..=100);
            let k = rng.gen_range(15..=n / 2);
            choose(n, k, format!("What is C({n},{k})?"))
        }
        1 => {
            let (n, k) = (rng.gen_range(30..=60), rng.gen_range(8..=15));
            arrange(n, k, format!("Compute P({n},{k})."))
        }
        _ => fact(rng.gen_range(20..=30)),
    }
}

fn square(rng: &mut ChaCha8Rng, n: usize, lo: i64, hi: i64) -> Vec<Vec<i64>> {
    (0..n).map(|_| text::ints(rng, n, lo, hi)).collect()
}

pub(super) fn determinant_draft(m: Vec<Vec<i64>>) -> Draft {
    let det = matrix::determinant(&m).expect("square matrix");
    let prompt = format!("What is the determinant of {}?", text::matrix(&m));
    Draft::new(
        prompt,
        AnswerValue::Integer(det),
        vec![PlanStep::value(
            "matrix_determinant",
            json!({ "matrix": m }),
        )],
    )
}

pub(super) fn trace_draft(m: Vec<Vec<i64>>) -> Draft {
    let tr = matrix::trace(&m).expect("square matrix");
    let prompt = format!("What is the trace of {}?", text::matrix(&m));
    Draft::new(
        prompt,
        AnswerValue::Integer(tr),
        vec![PlanStep::value("matrix_trace", json!({ "matrix": m }))],
    )
}

fn matrix_easy(rng: &mut ChaCha8Rng) -> Draft {
    let m = square(rng, 2, 1, 9);
    if rng.gen_bool(0.5) {
        determinant_draft(m)
    } else {
        trace_draft(m)
    }
}

fn matrix_medium(rng: &mut ChaCha8Rng) -> Draft {
    determinant_draft(square(rng, 3, 0, 9))
}

fn matrix_hard(rng: &mut ChaCha8Rng) -> Draft {
    let n = rng.gen_range(4..=5);
    determinant_draft(square(rng, n, -20, 20))
}

pub(super) fn is_prime_draft(n: i64) -> Draft {
    let v = prime::is_prime(n).expect("positive input");
    Draft::new(
        format!("Is {n} a prime number?"),
        AnswerValue::Boolean(v),
        vec![PlanStep::value("is_prime", json!({ "n": n }))],
    )
}

pub(super) fn factorize_draft(n: i64, prompt: String) -> Draft {
    let v = prime::factorize(n).expect("positive input");
    Draft::new(
        prompt,
        AnswerValue::String(v),
        vec![PlanStep::value("factorize", json!({ "n": n }))],
    )
}

pub(super) fn nth_prime_draft(k: i64) -> Draft {
    let v = prime::nth_prime(k).expect("positive index");
    let prompt = format!("What is the {} prime number?", text::ordinal(k as u64));
    Draft::new(
        prompt,
        AnswerValue::int(v),
        vec![PlanStep::value("nth_prime", json!({ "n": k }))],
    )
}

fn prime_task(rng: &mut ChaCha8Rng, lo: i64, hi: i64, nth: (i64, i64)) -> Draft {
    match rng.gen_range(0..3) {
        0 => {
            let want_prime = rng.gen_bool(0.5);
            let n = loop {
                let n = rng.gen_range(lo..=hi);
                if prime::is_prime_u64(n as u64) == want_prime {
                    break n;
                }
            };
            is_prime_draft(n)
        }
        1 => {
            let n = rng.gen_range(lo.max(4)..=hi);
            factorize_draft(
                n,
                format!("What is the prime factorization of {n}? List the prime factors in ascending order separated by ' × '."),
            )
        }
        _ => nth_prime_draft(rng.gen_range(nth.0..=nth.1)),
    }
}

fn prime_easy(rng: &mut ChaCha8Rng) -> Draft {
    prime_task(rng, 2, 400, (1, 25))
}

fn prime_medium(rng: &mut ChaCha8Rng) -> Draft {
    prime_task(rng, 400, 4999, (26, 400))
}

fn prime_hard(rng: &mut ChaCha8Rng) -> Draft {
    prime_task(rng, 10_000, 999_999, (1_230, 20_000))
}
