//! Category B generators: retriever, historical year, game rule, hash, decoding.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;
use when2tool_tools::codec::{self, Scheme};
use when2tool_tools::corpus::{self, Document};
use when2tool_tools::hash::{self, HashAlgorithm};
use when2tool_tools::kb::{GameEntry, YearEntry};
use when2tool_tools::{AnswerValue, EnvState};

use super::names;
use super::pools::{self, capitalize, Rel};
use super::text::pick;
use super::{Difficulty, Draft, EnvName, PlanStep, Projection, Source};

pub(super) fn source(env: EnvName, difficulty: Difficulty) -> Source {
    use Difficulty::*;
    match (env, difficulty) {
        (EnvName::RetrieverEnv, Easy) => Source::Pool {
            size: pools::RETRIEVER_EASY.len(),
            draw: retriever_easy,
        },
        (EnvName::RetrieverEnv, Medium) => Source::Pool {
            size: pools::RETRIEVER_MEDIUM.len(),
            draw: retriever_medium,
        },
        (EnvName::RetrieverEnv, Hard) => Source::Random(retriever_hard),
        (EnvName::HistoricalYearEnv, Easy) => Source::Pool {
            size: pools::YEARS_EASY.len(),
            draw: years_easy,
        },
        (EnvName::HistoricalYearEnv, Medium) => Source::Pool {
            size: pools::YEARS_MEDIUM.len(),
            draw: years_medium,
        },
        (EnvName::HistoricalYearEnv, Hard) => Source::Random(years_hard),
        (EnvName::GameRuleEnv, Easy) => Source::Pool {
            size: pools::GAMES_EASY.len(),
            draw: games_easy,
        },
        (EnvName::GameRuleEnv, Medium) => Source::Pool {
            size: pools::GAMES_MEDIUM.len(),
            draw: games_medium,
        },
        (EnvName::GameRuleEnv, Hard) => Source::Random(games_hard),
        (EnvName::HashEnv, Easy) => Source::Pool {
            size: pools::HASH_WORDS.len() * 2,
            draw: hash_easy,
        },
        (EnvName::HashEnv, Medium) => Source::Random(hash_medium),
        (EnvName::HashEnv, Hard) => Source::Random(hash_hard),
        (EnvName::DecodingEnv, Easy) => Source::Pool {
            size: pools::CODE_WORDS_EASY.len() * 3,
            draw: decoding_easy,
        },
        (EnvName::DecodingEnv, Medium) => Source::Random(decoding_medium),
        (EnvName::DecodingEnv, Hard) => Source::Random(decoding_hard),
        _ => unreachable!("{env} is not a knowledge environment"),
    }
}

/// Fixed opening of every corpus document. It is longer than a search
/// snippet, so snippets never reveal the answer.
pub(super) const PREAMBLE: &str = "Reference entry from a general knowledge collection. \
Each entry records a single verified fact, stated in the text below. ";

/// Number of documents or table rows per task.
pub(super) const STATE_SIZE: usize = 10;

/// A document before ids are assigned.
#[derive(Debug, Clone)]
pub(super) struct DocSpec {
    pub title: String,
    pub sentence: String,
    pub answer: String,
}

impl DocSpec {
    pub fn fact(rel: Rel, subject: &str, answer: &str) -> Self {
        DocSpec {
            title: rel.title(subject),
            sentence: rel.sentence(subject, answer),
            answer: answer.to_string(),
        }
    }
}

/// Whether `needle` occurs in `text` as a whole word (case-sensitive).
pub(super) fn mentions(text: &str, needle: &str) -> bool {
    let bytes = text.as_bytes();
    text.match_indices(needle).any(|(i, m)| {
        let before = i.checked_sub(1).map(|j| bytes[j]);
        let after = bytes.get(i + m.len()).copied();
        !before.is_some_and(|c| c.is_ascii_alphanumeric())
            && !after.is_some_and(|c| c.is_ascii_alphanumeric())
    })
}

/// Shuffles the documents, assigns ids and returns the corpus together
/// with the doc_id of each requested target.
pub(super) fn build_corpus(
    rng: &mut ChaCha8Rng,
    docs: Vec<DocSpec>,
    targets: &[usize],
) -> (Vec<Document>, Vec<String>) {
    let mut order: Vec<usize> = (0..docs.len()).collect();
    order.shuffle(rng);
    let mut ids = vec![String::new(); docs.len()];
    let mut out = Vec::with_capacity(docs.len());
    for (slot, &i) in order.iter().enumerate() {
        let id = format!("doc_{:03}", slot + 1);
        let d = &docs[i];
        ids[i] = id.clone();
        out.push(Document {
            doc_id: id,
            title: d.title.clone(),
            content: format!("{PREAMBLE}{}", d.sentence),
            facts: BTreeMap::from([("answer".to_string(), d.answer.clone())]),
        });
    }
    (out, targets.iter().map(|&t| ids[t].clone()).collect())
}

/// True when searching for the target's title ranks it strictly first and
/// no document outside `related` mentions the target's answer.
pub(super) fn corpus_is_clean(docs: &[Document], target_id: &str, related: &[String]) -> bool {
    let target = docs
        .iter()
        .find(|d| d.doc_id == target_id)
        .expect("target is in the corpus");
    let hits = corpus::search(docs, &target.title, docs.len() as i64).expect("top_k is positive");
    let ranked_first = hits.first().is_some_and(|h| h.doc_id == target_id)
        && hits.get(1).is_none_or(|h| h.score < hits[0].score);
    let answer = &target.facts["answer"];
    let unique = docs
        .iter()
        .filter(|d| d.doc_id != target_id && !related.contains(&d.doc_id))
        .all(|d| !mentions(&d.content, answer));
    ranked_first && unique
}

pub(super) fn retrieval_plan(title: &str) -> Vec<PlanStep> {
    vec![
        PlanStep::new(
            "search_corpus",
            json!({ "query": title }),
            Projection::FirstHitDocId,
        ),
        PlanStep::new(
            "read_doc",
            json!({ "doc_id": "{0}" }),
            Projection::Fact {
                attr: "answer".into(),
            },
        ),
    ]
}

fn retriever_pool(pool: &[pools::Fact], item: usize, rng: &mut ChaCha8Rng) -> Draft {
    let (rel, subject, answer) = pool[item];
    loop {
        let mut docs = vec![DocSpec::fact(rel, subject, answer)];
        let mut others: Vec<usize> = (0..pool.len()).filter(|&i| i != item).collect();
        others.shuffle(rng);
        docs.extend(
            others
                .iter()
                .map(|&i| pool[i])
                .filter(|(_, s, a)| *s != subject && *a != answer)
                .take(STATE_SIZE - 1)
                .map(|(r, s, a)| DocSpec::fact(r, s, a)),
        );
        let (documents, ids) = build_corpus(rng, docs, &[0]);
        if corpus_is_clean(&documents, &ids[0], &[]) {
            let title = rel.title(subject);
            return Draft::new(
                rel.question(subject),
                AnswerValue::String(answer.to_string()),
                retrieval_plan(&title),
            )
            .with_state(EnvState::Corpus { documents });
        }
    }
}

fn retriever_easy(item: usize, rng: &mut ChaCha8Rng) -> Draft {
    retriever_pool(pools::RETRIEVER_EASY, item, rng)
}

fn retriever_medium(item: usize, rng: &mut ChaCha8Rng) -> Draft {
    retriever_pool(pools::RETRIEVER_MEDIUM, item, rng)
}

const ENTITY_KINDS: &[&str] = &[
    "Taskforce",
    "Station",
    "Outpost",
    "Vessel",
    "Expedition",
    "Observatory",
    "Convoy",
];
const ENTITY_ATTRS: &[&str] = &[
    "coolant class",
    "chief engineer",
    "home port",
    "reactor model",
    "call sign",
];

fn entity_attr_value(rng: &mut ChaCha8Rng, attr: &str) -> String {
    match attr {
        "coolant class" => format!(
            "Class-{}{}",
            (b'A' + rng.gen_range(0..26u8)) as char,
            rng.gen_range(1..10)
        ),
        "chief engineer" => names::person(rng),
        "home port" => format!("Port {}", names::short_word(rng)),
        "reactor model" => format!("RX-{}", rng.gen_range(100..1000)),
        _ => names::designator(rng).to_uppercase(),
    }
}

/// Fictional facts that exist only in the task's corpus.
pub(super) fn retriever_hard_parts(
    rng: &mut ChaCha8Rng,
    entity: String,
    attr: &str,
    answer: String,
) -> Option<(Draft, String)> {
    let title = format!("{} of {entity}", capitalize(attr));
    let sentence = |e: &str, a: &str, v: &str| format!("The {a} of {e} is {v}.");
    let mut docs = vec![DocSpec {
        title: title.clone(),
        sentence: sentence(&entity, attr, &answer),
        answer: answer.clone(),
    }];
    for a in ENTITY_ATTRS.iter().filter(|a| **a != attr) {
        let v = entity_attr_value(rng, a);
        docs.push(DocSpec {
            title: format!("{} of {entity}", capitalize(a)),
            sentence: sentence(&entity, a, &v),
            answer: v,
        });
    }
    while docs.len() < STATE_SIZE {
        let other = format!("{} {}", pick(rng, ENTITY_KINDS), names::designator(rng));
        let a = pick(rng, ENTITY_ATTRS);
        let v = entity_attr_value(rng, a);
        docs.push(DocSpec {
            title: format!("{} of {other}", capitalize(a)),
            sentence: sentence(&other, a, &v),
            answer: v,
        });
    }
    let (documents, ids) = build_corpus(rng, docs, &[0]);
    corpus_is_clean(&documents, &ids[0], &[]).then(|| {
        let prompt = format!("What is the {attr} for {entity}?");
        let draft = Draft::new(prompt, AnswerValue::String(answer), retrieval_plan(&title))
            .with_state(EnvState::Corpus { documents });
        (draft, ids[0].clone())
    })
}

fn retriever_hard(rng: &mut ChaCha8Rng) -> Draft {
    loop {
        let entity = format!("{} {}", pick(rng, ENTITY_KINDS), names::designator(rng));
        let attr = *pick(rng, ENTITY_ATTRS);
        let answer = entity_attr_value(rng, attr);
        if let Some((d, _)) = retriever_hard_parts(rng, entity, attr, answer) {
            return d;
        }
    }
}

fn year_entry(key: &str, year: i64) -> YearEntry {
    YearEntry {
        event: key.to_string(),
        year,
        context: format!("{key} is dated to the year {year}."),
    }
}

fn years_state(rng: &mut ChaCha8Rng, target: YearEntry, mut others: Vec<YearEntry>) -> EnvState {
    others.retain(|e| e.event != target.event);
    others.shuffle(rng);
    others.truncate(STATE_SIZE - 1);
    others.push(target);
    others.shuffle(rng);
    EnvState::Years { entries: others }
}

fn years_pool(pool: &[pools::Event], item: usize, rng: &mut ChaCha8Rng) -> Draft {
    let (key, question, year) = pool[item];
    let others = pool.iter().map(|(k, _, y)| year_entry(k, *y)).collect();
    Draft::new(
        question,
        AnswerValue::int(year),
        vec![PlanStep::value("lookup_year", json!({ "event": key }))],
    )
    .with_state(years_state(rng, year_entry(key, year), others))
}

fn years_easy(item: usize, rng: &mut ChaCha8Rng) -> Draft {
    years_pool(pools::YEARS_EASY, item, rng)
}

fn years_medium(item: usize, rng: &mut ChaCha8Rng) -> Draft {
    years_pool(pools::YEARS_MEDIUM, item, rng)
}

const FICTIONAL_EVENTS: &[(&str, &str)] = &[
    ("Accord of {}", "In what year was the Accord of {} signed?"),
    ("Treaty of {}", "In what year was the Treaty of {} signed?"),
    (
        "Charter of {}",
        "In what year was the Charter of {} ratified?",
    ),
    ("Battle of {}", "In what year was the Battle of {} fought?"),
    (
        "Siege of {}",
        "In what year did the Siege of {} take place?",
    ),
    ("Founding of {}", "In what year was {} founded?"),
    (
        "Great Flood of {}",
        "In what year did the Great Flood of {} occur?",
    ),
];

pub(super) fn years_hard_parts(
    rng: &mut ChaCha8Rng,
    prompt: String,
    key: String,
    year: i64,
) -> Draft {
    let others = (0..STATE_SIZE - 1)
        .map(|_| {
            let (k, _) = pick(rng, FICTIONAL_EVENTS);
            year_entry(
                &k.replace("{}", &names::short_word(rng)),
                rng.gen_range(1000..2000),
            )
        })
        .collect();
    let state = years_state(rng, year_entry(&key, year), others);
    Draft::new(
        prompt,
        AnswerValue::int(year),
        vec![PlanStep::value("lookup_year", json!({ "event": key }))],
    )
    .with_state(state)
}

fn years_hard(rng: &mut ChaCha8Rng) -> Draft {
    let place = names::short_word(rng);
    let (k, q) = pick(rng, FICTIONAL_EVENTS);
    let year = rng.gen_range(1000..2000);
    years_hard_parts(rng, q.replace("{}", &place), k.replace("{}", &place), year)
}

fn game_entry(game: &str, attribute: &str, value: i64) -> GameEntry {
    GameEntry {
        game: game.to_string(),
        attribute: attribute.to_string(),
        value,
        description: format!("{game}: {attribute} is {value}."),
    }
}

/// The target row, every other row for the same game, then random rows
/// up to the table size.
fn games_state(rng: &mut ChaCha8Rng, target: GameEntry, pool: Vec<GameEntry>) -> EnvState {
    let mut same: Vec<GameEntry> = pool
        .iter()
        .filter(|e| e.game == target.game && e.attribute != target.attribute)
        .cloned()
        .collect();
    same.shuffle(rng);
    same.truncate(STATE_SIZE / 2);
    let mut rest: Vec<GameEntry> = pool.into_iter().filter(|e| e.game != target.game).collect();
    rest.shuffle(rng);
    let mut entries = vec![target];
    entries.extend(same);
    let room = STATE_SIZE.saturating_sub(entries.len());
    entries.extend(rest.into_iter().take(room));
    entries.shuffle(rng);
    EnvState::Games { entries }
}

fn rule_step(game: &str, attribute: &str) -> Vec<PlanStep> {
    vec![PlanStep::value(
        "lookup_rule",
        json!({ "game": game, "attribute": attribute }),
    )]
}

fn games_pool(pool: &[pools::GameFact], item: usize, rng: &mut ChaCha8Rng) -> Draft {
    let (game, attribute, value, question) = pool[item];
    let rows = pool
        .iter()
        .map(|(g, a, v, _)| game_entry(g, a, *v))
        .collect();
    Draft::new(
        question,
        AnswerValue::int(value),
        rule_step(game, attribute),
    )
    .with_state(games_state(rng, game_entry(game, attribute, value), rows))
}

fn games_easy(item: usize, rng: &mut ChaCha8Rng) -> Draft {
    games_pool(pools::GAMES_EASY, item, rng)
}

fn games_medium(item: usize, rng: &mut ChaCha8Rng) -> Draft {
    games_pool(pools::GAMES_MEDIUM, item, rng)
}

const FICTIONAL_RULES: &[(&str, &str)] = &[
    ("cards in a deck", "How many cards are in a {} deck?"),
    (
        "players per team",
        "How many players are on each team in {}?",
    ),
    ("tiles in a set", "How many tiles are in a standard {} set?"),
    (
        "points to win",
        "How many points are needed to win a game of {}?",
    ),
    ("dice used", "How many dice are used in {}?"),
    (
        "squares on the board",
        "How many squares are on a {} board?",
    ),
    ("rounds per match", "How many rounds are in a match of {}?"),
    (
        "pieces per player",
        "How many pieces does each player start with in {}?",
    ),
];

pub(super) fn games_hard_parts(rng: &mut ChaCha8Rng, game: &str, rule: usize, value: i64) -> Draft {
    let (attribute, question) = FICTIONAL_RULES[rule];
    let mut rows: Vec<GameEntry> = FICTIONAL_RULES
        .iter()
        .filter(|(a, _)| *a != attribute)
        .map(|(a, _)| game_entry(game, a, rng.gen_range(2..=200)))
        .collect();
    for _ in 0..2 {
        let other = names::short_word(rng);
        for (a, _) in FICTIONAL_RULES.choose_multiple(rng, 3) {
            rows.push(game_entry(&other, a, rng.gen_range(2..=200)));
        }
    }
    Draft::new(
        question.replace("{}", game),
        AnswerValue::int(value),
        rule_step(game, attribute),
    )
    .with_state(games_state(rng, game_entry(game, attribute, value), rows))
}

fn games_hard(rng: &mut ChaCha8Rng) -> Draft {
    let game = names::short_word(rng);
    let rule = rng.gen_range(0..FICTIONAL_RULES.len());
    let value = rng.gen_range(2..=200);
    games_hard_parts(rng, &game, rule, value)
}

fn hash_label(alg: HashAlgorithm) -> String {
    match alg {
        HashAlgorithm::Md5 => "MD5".into(),
        HashAlgorithm::Sha1 => "SHA1".into(),
        HashAlgorithm::Sha256 => "SHA256".into(),
        other => other.name().to_uppercase(),
    }
}

pub(super) fn hash_draft(alg: HashAlgorithm, input: &str) -> Draft {
    let prompt = format!("What is the {} hash of '{input}'?", hash_label(alg));
    let plan = vec![PlanStep::value(
        "compute_hash",
        json!({ "algorithm": alg.name(), "input_string": input }),
    )];
    Draft::new(prompt, AnswerValue::String(hash::compute(alg, input)), plan)
}

fn hash_easy(item: usize, _rng: &mut ChaCha8Rng) -> Draft {
    let alg = [HashAlgorithm::Md5, HashAlgorithm::Sha1][item % 2];
    hash_draft(alg, pools::HASH_WORDS[item / 2])
}

fn hash_medium(rng: &mut ChaCha8Rng) -> Draft {
    let n = rng.gen_range(2..=3);
    let phrase: Vec<&str> = (0..n).map(|_| *pick(rng, pools::PHRASE_WORDS)).collect();
    let alg = *pick(
        rng,
        &[
            HashAlgorithm::Md5,
            HashAlgorithm::Sha1,
            HashAlgorithm::Sha256,
        ],
    );
    hash_draft(alg, &phrase.join(" "))
}

fn hash_hard(rng: &mut ChaCha8Rng) -> Draft {
    const ALNUM: &[u8] = b"ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789";
    let input: String = (0..6).map(|_| *pick(rng, ALNUM) as char).collect();
    hash_draft(*pick(rng, &HashAlgorithm::CUSTOM), &input)
}

fn scheme_args(scheme: Scheme, key: &str, text: &str) -> serde_json::Value {
    let mut args = json!({ "scheme": scheme.name(), key: text });
    if let Scheme::Caesar(k) = scheme {
        args["shift"] = json!(k);
    }
    args
}

pub(super) fn encode_draft(scheme: Scheme, prompt: String, plaintext: &str) -> Draft {
    let out = codec::encode(scheme, plaintext).expect("generator text is encodable");
    let plan = vec![PlanStep::value(
        "encode",
        scheme_args(scheme, "plaintext", plaintext),
    )];
    Draft::new(prompt, AnswerValue::String(out), plan)
}

pub(super) fn decode_draft(
    scheme: Scheme,
    prompt_for: impl Fn(&str) -> String,
    plaintext: &str,
) -> Draft {
    let cipher = codec::encode(scheme, plaintext).expect("generator text is encodable");
    let plain = codec::decode(scheme, &cipher).expect("round trip");
    let plan = vec![PlanStep::value(
        "decode",
        scheme_args(scheme, "ciphertext", &cipher),
    )];
    Draft::new(prompt_for(&cipher), AnswerValue::String(plain), plan)
}

fn decoding_easy(item: usize, _rng: &mut ChaCha8Rng) -> Draft {
    let word = pools::CODE_WORDS_EASY[item / 3];
    match item % 3 {
        0 => encode_draft(
            Scheme::Morse,
            format!("Encode '{word}' in Morse code."),
            word,
        ),
        1 => decode_draft(
            Scheme::Morse,
            |c| format!("Decode '{c}' from Morse code."),
            word,
        ),
        _ => decode_draft(
            Scheme::Rot13,
            |c| format!("Decode '{c}' using ROT13."),
            word,
        ),
    }
}

fn decoding_medium(rng: &mut ChaCha8Rng) -> Draft {
    let word = *pick(rng, pools::CODE_WORDS_MEDIUM);
    let shift = rng.gen_range(1..=25);
    match rng.gen_range(0..5) {
        0 | 1 => decode_draft(
            Scheme::Caesar(shift),
            |c| format!("Decode '{c}' using Caesar cipher with shift {shift}."),
            word,
        ),
        2 | 3 => encode_draft(
            Scheme::Caesar(shift),
            format!("Encode '{word}' using Caesar cipher with shift {shift}."),
            word,
        ),
        _ => encode_draft(
            Scheme::Morse,
            format!("Encode '{word}' in Morse code."),
            word,
        ),
    }
}

fn decoding_hard(rng: &mut ChaCha8Rng) -> Draft {
    let word = if rng.gen_bool(0.5) {
        pick(rng, pools::CODE_WORDS_MEDIUM).to_string()
    } else {
        names::short_word(rng).to_uppercase()
    };
    let scheme = *pick(rng, &codec::CUSTOM_SCHEMES);
    let name = scheme.name();
    if rng.gen_bool(0.5) {
        decode_draft(
            scheme,
            |c| format!("Decode '{c}' using the {name} cipher."),
            &word,
        )
    } else {
        encode_draft(
            scheme,
            format!("Encode '{word}' using the {name} cipher."),
            &word,
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn preamble_is_longer_than_a_snippet() {
        assert!(PREAMBLE.chars().count() > corpus::SNIPPET_CHARS);
    }

    #[test]
    fn mentions_respects_word_boundaries() {
        assert!(mentions("symbol O.", "O"));
        assert!(!mentions("Oxygen", "O"));
        assert!(!mentions("the Sn2 ion", "Sn"));
        assert!(mentions("is Port Vila, the", "Port Vila"));
    }
}
