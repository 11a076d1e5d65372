//! Multi-hop generators: each hop consumes the previous hop's answer.

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;
use when2tool_tools::{interp, AnswerValue, EnvState};

use super::knowledge::{build_corpus, corpus_is_clean, mentions, DocSpec, STATE_SIZE};
use super::names;
use super::pools::{self, Rel};
use super::scale::eval_int;
use super::text::{self, ints, pick};
use super::{Difficulty, Draft, EnvName, PlanStep, Projection, Source};

pub(super) fn source(env: EnvName, difficulty: Difficulty) -> Source {
    use Difficulty::*;
    match (env, difficulty) {
        (EnvName::ChainedCalculatorEnv, Easy) => Source::Random(calc_easy),
        (EnvName::ChainedCalculatorEnv, Medium) => Source::Random(calc_medium),
        (EnvName::ChainedCalculatorEnv, Hard) => Source::Random(calc_hard),
        (EnvName::ChainedRetrieverEnv, Easy) => Source::Pool {
            size: chains(pools::WORKS_EASY).len(),
            draw: retriever_easy,
        },
        (EnvName::ChainedRetrieverEnv, Medium) => Source::Pool {
            size: chains(pools::WORKS_MEDIUM).len(),
            draw: retriever_medium,
        },
        (EnvName::ChainedRetrieverEnv, Hard) => Source::Random(retriever_hard),
        (EnvName::ChainedCodeExecutorEnv, Easy) => Source::Random(code_easy),
        (EnvName::ChainedCodeExecutorEnv, Medium) => Source::Random(code_medium),
        (EnvName::ChainedCodeExecutorEnv, Hard) => Source::Random(code_hard),
        _ => unreachable!("{env} is not a multi-hop environment"),
    }
}

/// Three arithmetic hops. `ops` holds the ASCII operator and operand of
/// hops two and three.
pub(super) fn calc_chain(a: i64, op1: &str, b: i64, ops: [(&str, i64); 2]) -> Draft {
    let shown = |op: &str| {
        match op {
            "*" => "×",
            "%" => "mod",
            other => other,
        }
        .to_string()
    };
    let prompt = format!(
        "First compute x = {a} {} {b}. Then compute y = x {} {}. Finally compute z = y {} {}. Return z.",
        shown(op1),
        shown(ops[0].0),
        ops[0].1,
        shown(ops[1].0),
        ops[1].1
    );
    let e0 = format!("{a} {op1} {b}");
    let e1 = format!("{{0}} {} {}", ops[0].0, ops[0].1);
    let e2 = format!("{{1}} {} {}", ops[1].0, ops[1].1);
    let h0 = eval_int(&e0);
    let h1 = eval_int(&e1.replace("{0}", &h0.to_string()));
    let h2 = eval_int(&e2.replace("{1}", &h1.to_string()));
    let plan = vec![
        PlanStep::value("evaluate_expression", json!({ "expr": e0 })).hop_end(),
        PlanStep::value("evaluate_expression", json!({ "expr": e1 })).hop_end(),
        PlanStep::value("evaluate_expression", json!({ "expr": e2 })),
    ];
    Draft::new(prompt, AnswerValue::Integer(h2), plan)
        .with_hops(vec![AnswerValue::Integer(h0), AnswerValue::Integer(h1)])
}

fn calc_easy(rng: &mut ChaCha8Rng) -> Draft {
    let a = rng.gen_range(10..=50);
    let b = rng.gen_range(2..a);
    let c = rng.gen_range(2..=50);
    let d = rng.gen_range(2..=a - b + c);
    calc_chain(a, "-", b, [("+", c), ("-", d)])
}

fn calc_medium(rng: &mut ChaCha8Rng) -> Draft {
    let mut n = || rng.gen_range(100..=999i64);
    let [a, b, c, d] = [0; 4].map(|_| n());
    calc_chain(a, "*", b, [("-", c), ("*", d)])
}

fn calc_hard(rng: &mut ChaCha8Rng) -> Draft {
    let a = rng.gen_range(10_000_000_000..=1_000_000_000_000i64);
    let b = rng.gen_range(1_000_000_000..a);
    let c = rng.gen_range(1_000_000_000..=1_000_000_000_000i64);
    let m = rng.gen_range(1_000_000..=10_000_000i64);
    calc_chain(a, "-", b, [("+", c), ("%", m)])
}

/// The attribute asked about at the last hop.
#[derive(Debug, Clone, Copy)]
pub(super) enum CountryAttr {
    Capital,
    Currency,
    Continent,
    Language,
}

impl CountryAttr {
    fn rel(self) -> Rel {
        match self {
            CountryAttr::Capital => Rel::Capital,
            CountryAttr::Currency => Rel::Currency,
            CountryAttr::Continent => Rel::Continent,
            CountryAttr::Language => Rel::Language,
        }
    }

    fn phrase(self) -> &'static str {
        match self {
            CountryAttr::Capital => "the capital",
            CountryAttr::Currency => "the currency",
            CountryAttr::Continent => "the continent",
            CountryAttr::Language => "the official language",
        }
    }
}

fn verb(rel: Rel) -> &'static str {
    match rel {
        Rel::Author => "wrote",
        Rel::Painter => "painted",
        _ => "composed",
    }
}

/// work -> creator -> home country -> attribute of the country.
#[derive(Debug, Clone)]
pub(super) struct Chain {
    pub work: String,
    pub rel: Rel,
    pub creator: String,
    pub country: String,
    pub attr: CountryAttr,
    pub answer: String,
}

impl Chain {
    fn prompt(&self) -> String {
        format!(
            "What is {} of the home country of the person who {} {}?",
            self.attr.phrase(),
            verb(self.rel),
            self.work
        )
    }

    fn hop_docs(&self) -> [DocSpec; 3] {
        [
            DocSpec::fact(self.rel, &self.work, &self.creator),
            DocSpec::fact(Rel::HomeCountry, &self.creator, &self.country),
            DocSpec::fact(self.attr.rel(), &self.country, &self.answer),
        ]
    }
}

fn chains(works: &[pools::Work]) -> Vec<Chain> {
    let mut out = Vec::new();
    for &(work, rel, creator, country) in works {
        let c = pools::COUNTRIES
            .iter()
            .find(|k| k.0 == country)
            .expect("known country");
        let attrs = [
            (CountryAttr::Capital, Some(c.1)),
            (CountryAttr::Currency, Some(c.2)),
            (CountryAttr::Continent, c.3),
            (CountryAttr::Language, c.4),
        ];
        for (attr, answer) in attrs {
            if let Some(answer) = answer {
                out.push(Chain {
                    work: work.into(),
                    rel,
                    creator: creator.into(),
                    country: country.into(),
                    attr,
                    answer: answer.into(),
                });
            }
        }
    }
    out
}

/// Every single-fact document the real-world tables can produce.
fn known_facts() -> Vec<DocSpec> {
    let mut out = Vec::new();
    for &(work, rel, creator, country) in pools::WORKS_EASY.iter().chain(pools::WORKS_MEDIUM) {
        out.push(DocSpec::fact(rel, work, creator));
        out.push(DocSpec::fact(Rel::HomeCountry, creator, country));
    }
    for c in pools::COUNTRIES {
        out.push(DocSpec::fact(Rel::Capital, c.0, c.1));
        out.push(DocSpec::fact(Rel::Currency, c.0, c.2));
    }
    out
}

/// Builds the corpus around a chain, re-drawing distractors until every
/// hop's search ranks its document first and no distractor mentions a hop
/// answer.
pub(super) fn chain_draft(
    rng: &mut ChaCha8Rng,
    chain: &Chain,
    candidates: impl Fn(&mut ChaCha8Rng) -> Vec<DocSpec>,
) -> Draft {
    let hops = chain.hop_docs();
    loop {
        let mut docs: Vec<DocSpec> = hops.to_vec();
        let mut pool = candidates(rng);
        pool.shuffle(rng);
        for d in pool {
            if docs.len() == STATE_SIZE {
                break;
            }
            let leaks = hops
                .iter()
                .any(|h| mentions(&d.sentence, &h.answer) || d.title == h.title);
            if !leaks && docs.iter().all(|x| x.title != d.title) {
                docs.push(d);
            }
        }
        let (documents, ids) = build_corpus(rng, docs, &[0, 1, 2]);
        if ids.iter().all(|id| corpus_is_clean(&documents, id, &ids)) {
            let read = |k: usize| {
                PlanStep::new(
                    "read_doc",
                    json!({ "doc_id": format!("{{{k}}}") }),
                    Projection::Fact {
                        attr: "answer".into(),
                    },
                )
            };
            let search = |q: String| {
                PlanStep::new(
                    "search_corpus",
                    json!({ "query": q }),
                    Projection::FirstHitDocId,
                )
            };
            let plan = vec![
                search(hops[0].title.clone()),
                read(0).hop_end(),
                search(Rel::HomeCountry.title("{1}")),
                read(2).hop_end(),
                search(chain.attr.rel().title("{3}")),
                read(4),
            ];
            let hop_answers = vec![
                AnswerValue::String(chain.creator.clone()),
                AnswerValue::String(chain.country.clone()),
            ];
            return Draft::new(
                chain.prompt(),
                AnswerValue::String(chain.answer.clone()),
                plan,
            )
            .with_state(EnvState::Corpus { documents })
            .with_hops(hop_answers);
        }
    }
}

fn retriever_easy(item: usize, rng: &mut ChaCha8Rng) -> Draft {
    chain_draft(rng, &chains(pools::WORKS_EASY)[item], |_| known_facts())
}

fn retriever_medium(item: usize, rng: &mut ChaCha8Rng) -> Draft {
    chain_draft(rng, &chains(pools::WORKS_MEDIUM)[item], |_| known_facts())
}

fn fictional_work(rng: &mut ChaCha8Rng, rel: Rel) -> String {
    let w = names::short_word(rng);
    match rel {
        Rel::Author => format!("The {w} Chronicles"),
        Rel::Painter => format!("{w} at Dusk"),
        _ => format!("the {w} Symphony"),
    }
}

fn fictional_answer(rng: &mut ChaCha8Rng, attr: CountryAttr) -> String {
    let w = names::short_word(rng);
    match attr {
        CountryAttr::Capital => format!("{w} City"),
        CountryAttr::Currency => format!("{} mark", w.to_lowercase()),
        CountryAttr::Continent => format!("{w} Reach"),
        CountryAttr::Language => format!("{w}ese"),
    }
}

pub(super) fn fictional_chain(rng: &mut ChaCha8Rng) -> Chain {
    let rel = *pick(rng, &[Rel::Author, Rel::Painter, Rel::Composer]);
    let attr = *pick(
        rng,
        &[
            CountryAttr::Capital,
            CountryAttr::Currency,
            CountryAttr::Language,
        ],
    );
    Chain {
        work: fictional_work(rng, rel),
        rel,
        creator: names::person(rng),
        country: names::short_word(rng),
        attr,
        answer: fictional_answer(rng, attr),
    }
}

fn fictional_facts(rng: &mut ChaCha8Rng) -> Vec<DocSpec> {
    (0..STATE_SIZE)
        .flat_map(|_| {
            let c = fictional_chain(rng);
            let [a, b, d] = c.hop_docs();
            [a, b, d]
        })
        .collect()
}

fn retriever_hard(rng: &mut ChaCha8Rng) -> Draft {
    let chain = fictional_chain(rng);
    chain_draft(rng, &chain, fictional_facts)
}

/// Three programs; each later program starts from the previous output.
/// `programs[k]` for k > 0 may refer to the previous output as `{prev}`.
pub(super) fn code_chain(programs: [&str; 3], var: [&str; 2]) -> Draft {
    let mut outs: Vec<String> = Vec::new();
    let mut plan_code = Vec::new();
    for (k, p) in programs.iter().enumerate() {
        let (run, planned) = if k == 0 {
            (p.to_string(), p.to_string())
        } else {
            let v = var[k - 1];
            (
                format!("{v} = {}\n{p}", outs[k - 1]),
                format!("{v} = {{{}}}\n{p}", k - 1),
            )
        };
        let out = interp::run(&run)
            .unwrap_or_else(|e| panic!("generator produced failing code {run:?}: {e}"));
        outs.push(out);
        plan_code.push(planned);
    }
    let prompt = format!(
        "Run these programs in order, feeding each output into the next.\n\
         Program 1:\n```python\n{}\n```\n\
         Program 2 ({} is the output of Program 1):\n```python\n{}\n```\n\
         Program 3 ({} is the output of Program 2):\n```python\n{}\n```\n\
         What does Program 3 print?",
        programs[0], var[0], programs[1], var[1], programs[2]
    );
    let step = |code: &String| PlanStep::value("run_code", json!({ "code": code }));
    let plan = vec![
        step(&plan_code[0]).hop_end(),
        step(&plan_code[1]).hop_end(),
        step(&plan_code[2]),
    ];
    let value = |s: &String| AnswerValue::String(s.clone());
    Draft::new(prompt, value(&outs[2]), plan).with_hops(vec![value(&outs[0]), value(&outs[1])])
}

fn code_easy(rng: &mut ChaCha8Rng) -> Draft {
    let (a, b) = (rng.gen_range(2..=40), rng.gen_range(2..=40));
    let c = rng.gen_range(2..=9);
    let d = rng.gen_range(1..=30);
    code_chain(
        [
            &format!("print({a} + {b})"),
            &format!("print(x * {c})"),
            &format!("print(y - {d})"),
        ],
        ["x", "y"],
    )
}

fn code_medium(rng: &mut ChaCha8Rng) -> Draft {
    let xs = text::list(&{
        let n = rng.gen_range(4..=7);
        ints(rng, n, 10, 999)
    });
    let k = rng.gen_range(2..=9);
    let third = match rng.gen_range(0..3) {
        0 => "print(sum(range(y)))".to_string(),
        1 => format!("print(y * y - {k})"),
        _ => format!("print([i for i in range(1, y + 1) if i % {k} == 0])"),
    };
    code_chain(
        [
            &format!("xs = {xs}\nprint(sum(xs))"),
            "print(sum(int(d) for d in str(x)))",
            &third,
        ],
        ["x", "y"],
    )
}

const COIN_SETS: &[&[i64]] = &[
    &[1, 5, 10, 25],
    &[1, 3, 7],
    &[1, 4, 9],
    &[1, 2, 5, 10],
    &[1, 6, 10],
    &[1, 5, 12],
];

pub(super) fn hard_code_programs(coins: &[i64], amount: i64, xs: &[i64]) -> [String; 3] {
    let p1 = format!(
        "coins = {}\namount = {amount}\ndp = [0] + [amount + 1] * amount\nfor a in range(1, amount + 1):\n    for c in coins:\n        if c <= a and dp[a - c] + 1 < dp[a]:\n            dp[a] = dp[a - c] + 1\nprint(dp[amount])",
        text::list(coins)
    );
    let p2 = "a, b = 1, 1\ntotal = 0\nfor _ in range(2 * x):\n    if a % 2 == 0:\n        total += a\n    a, b = b, a + b\nprint(total)".to_string();
    let p3 = format!(
        "xs = {}\nxs[0] = y % 50\nd = [1] * len(xs)\nfor i in range(len(xs)):\n    for j in range(i):\n        if xs[j] < xs[i]:\n            d[i] = max(d[i], d[j] + 1)\nprint(max(d))",
        text::list(xs)
    );
    [p1, p2, p3]
}

fn code_hard(rng: &mut ChaCha8Rng) -> Draft {
    let coins = *pick(rng, COIN_SETS);
    let amount = rng.gen_range(20..=60);
    let xs = {
        let n = rng.gen_range(10..=14);
        ints(rng, n, 1, 99)
    };
    let [p1, p2, p3] = hard_code_programs(coins, amount, &xs);
    code_chain([&p1, &p2, &p3], ["x", "y"])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chain_pools_cover_both_splits() {
        assert!(chains(pools::WORKS_EASY).len() >= 70);
        assert!(chains(pools::WORKS_MEDIUM).len() >= 70);
    }

    #[test]
    fn fixture_style_calc_chain() {
        let d = calc_chain(40, "-", 10, [("+", 5), ("-", 19)]);
        assert_eq!(d.expected.render(), "16");
        assert_eq!(
            d.hops.iter().map(|h| h.render()).collect::<Vec<_>>(),
            ["30", "35"]
        );
    }
}
