//! Worked examples placed at test index 0 under [`super::FIXTURE_SEED`].
//!
//! Cells without a concrete documented example return None and fall back
//! to the ordinary draw.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use when2tool_tools::codec::Scheme;
use when2tool_tools::hash::HashAlgorithm;
use when2tool_tools::lists::{IntList, Item};
use when2tool_tools::schedule::Interval;
use when2tool_tools::stats::Stat;

use super::execution::{self, ListOp};
use super::{chained, knowledge, pools, scale, Difficulty, Draft, EnvName, FIXTURE_SEED};
use serde_json::json;

fn rng() -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(FIXTURE_SEED)
}

/// Prompts of every random-cell fixture for `env`; ordinary draws skip them.
pub(super) fn prompts(env: EnvName) -> Vec<String> {
    Difficulty::ALL
        .iter()
        .filter_map(|d| random_fixture(env, *d))
        .map(|d| d.prompt)
        .collect()
}

/// Pool index of the fixture item for pool-backed cells.
pub(super) fn pool_fixture(env: EnvName, difficulty: Difficulty) -> Option<usize> {
    use Difficulty::*;
    let find = |xs: &[&str], want: &str| xs.iter().position(|x| *x == want);
    match (env, difficulty) {
        (EnvName::RetrieverEnv, Easy) => pools::RETRIEVER_EASY
            .iter()
            .position(|(_, s, _)| *s == "France"),
        (EnvName::RetrieverEnv, Medium) => pools::RETRIEVER_MEDIUM
            .iter()
            .position(|(_, s, _)| *s == "Tin"),
        (EnvName::HistoricalYearEnv, Easy) => {
            pools::YEARS_EASY.iter().position(|e| e.0 == "Moon landing")
        }
        (EnvName::HistoricalYearEnv, Medium) => pools::YEARS_MEDIUM
            .iter()
            .position(|e| e.0 == "Treaty of Tordesillas"),
        (EnvName::GameRuleEnv, Easy) => pools::GAMES_EASY
            .iter()
            .position(|g| g.0 == "Chess" && g.2 == 64),
        (EnvName::GameRuleEnv, Medium) => pools::GAMES_MEDIUM.iter().position(|g| g.0 == "Mahjong"),
        // Item 2w + 0 is the MD5 of word w.
        (EnvName::HashEnv, Easy) => find(pools::HASH_WORDS, "hello").map(|w| 2 * w),
        // Item 3w + 0 encodes word w in Morse.
        (EnvName::DecodingEnv, Easy) => find(pools::CODE_WORDS_EASY, "SOS").map(|w| 3 * w),
        _ => None,
    }
}

/// The fixture draft for random-draw cells.
pub(super) fn random_fixture(env: EnvName, difficulty: Difficulty) -> Option<Draft> {
    use Difficulty::*;
    Some(match (env, difficulty) {
        (EnvName::CalculatorEnv, Easy) => scale::calc_draft("20 + 20"),
        (EnvName::CalculatorEnv, Medium) => scale::calc_draft("(810 * 87) - 85 + 178"),
        (EnvName::CalculatorEnv, Hard) => {
            scale::calc_draft("(39006255142 * 342002902703) - 702386298")
        }
        (EnvName::StatisticsEnv, Easy) => {
            let xs = [3, 7, 1, 9, 5];
            Draft::new(
                "What is the median of [3, 7, 1, 9, 5]?",
                scale::stat_value(Stat::Median, &xs, None, None, 0)?,
                vec![scale::stat_step("median", &xs, json!({}), 0)],
            )
        }
        (EnvName::StatisticsEnv, Medium) => {
            let xs = [12, 15, 18, 22, 25, 30, 14, 19, 27, 11];
            Draft::new(
                "What is the standard deviation of [12, 15, 18, 22, 25, 30, 14, 19, 27, 11]? Round to 2 decimal places.",
                scale::stat_value(Stat::Std, &xs, None, None, 2)?,
                vec![scale::stat_step("std", &xs, json!({}), 2)],
            )
        }
        (EnvName::CountingEnv, Easy) => {
            scale::choose(5, 2, "How many ways can you choose 2 items from 5?".into())
        }
        (EnvName::CountingEnv, Medium) => scale::arrange(15, 4, "Compute P(15,4).".into()),
        (EnvName::CountingEnv, Hard) => scale::choose(50, 25, "What is C(50,25)?".into()),
        (EnvName::MatrixEnv, Easy) => scale::trace_draft(vec![vec![3, 1], vec![7, 4]]),
        (EnvName::MatrixEnv, Medium) => {
            scale::determinant_draft(vec![vec![2, 3, 1], vec![4, 1, 3], vec![1, 2, 4]])
        }
        (EnvName::PrimeEnv, Easy) => scale::is_prime_draft(17),
        (EnvName::PrimeEnv, Medium) => scale::nth_prime_draft(50),
        (EnvName::PrimeEnv, Hard) => {
            scale::factorize_draft(8191, "What is the prime factorization of 8191?".into())
        }
        (EnvName::RetrieverEnv, Hard) => {
            let mut r = rng();
            loop {
                let parts = knowledge::retriever_hard_parts(
                    &mut r,
                    "Taskforce Nimbus-73".into(),
                    "coolant class",
                    "Class-C8".into(),
                );
                if let Some((d, _)) = parts {
                    break d;
                }
            }
        }
        (EnvName::HistoricalYearEnv, Hard) => knowledge::years_hard_parts(
            &mut rng(),
            "What year was the Accord of Velmorath signed?".into(),
            "Accord of Velmorath".into(),
            1723,
        ),
        (EnvName::GameRuleEnv, Hard) => knowledge::games_hard_parts(&mut rng(), "Zephyr", 0, 72),
        (EnvName::HashEnv, Medium) => {
            knowledge::hash_draft(HashAlgorithm::Sha1, "machine learning")
        }
        (EnvName::HashEnv, Hard) => knowledge::hash_draft(HashAlgorithm::MurmurCustom, "xK9mQ2"),
        (EnvName::DecodingEnv, Medium) => knowledge::decode_draft(
            Scheme::Caesar(11),
            |c| format!("Decode '{c}' using Caesar cipher with shift 11."),
            "CLIENT",
        ),
        (EnvName::DecodingEnv, Hard) => knowledge::decode_draft(
            Scheme::Scramble1,
            |c| format!("Decode '{c}' using the scramble1 cipher."),
            "HELLO",
        ),
        (EnvName::ListManipulationEnv, Easy) => execution::list_draft(
            IntList::Flat(vec![7, 19, 29]),
            ListOp::Insert(2, Item::Scalar(36)),
        ),
        (EnvName::ListManipulationEnv, Medium) => execution::list_draft(
            IntList::Flat(vec![86, 197, 199, 232, 66, 53, 234]),
            ListOp::Sort(None),
        ),
        (EnvName::DateTimeEnv, Easy) => execution::diff_draft(
            "How many days between January 3 and January 18?".into(),
            "2025-01-03",
            "2025-01-18",
        ),
        (EnvName::DateTimeEnv, Medium) => execution::diff_draft(
            "How many days between February 25 and March 10, 2024?".into(),
            "2024-02-25",
            "2024-03-10",
        ),
        (EnvName::DateTimeEnv, Hard) => execution::weekday_draft(
            "What day of the week is August 15, 2027?".into(),
            "2027-08-15",
        ),
        (EnvName::CodeExecutorEnv, Easy) => execution::code_draft("print(len('hello'))"),
        (EnvName::CodeExecutorEnv, Medium) => {
            execution::code_draft("print(sum(x**2 for x in range(1,6)))")
        }
        (EnvName::CodeExecutorEnv, Hard) => execution::code_draft(&execution::collatz_code(27)),
        (EnvName::ScheduleEnv, Easy) => {
            let ms = [Interval::new(540, 600).ok()?, Interval::new(840, 900).ok()?];
            execution::free_slot_question(&ms, 1, 600, 840)
        }
        (EnvName::RegexMatchEnv, Easy) => execution::findall_draft(r"\d+", "abc123def456")?,
        (EnvName::RegexMatchEnv, Medium) => {
            execution::findall_draft(r"(\w+)@(\w+)\.(\w+)", "user@example.com admin@test.org")?
        }
        (EnvName::ChainedCalculatorEnv, Easy) => {
            chained::calc_chain(40, "-", 10, [("+", 5), ("-", 19)])
        }
        (EnvName::ChainedCalculatorEnv, Hard) => chained::calc_chain(
            808522010435,
            "-",
            8197325888,
            [("+", 17046220916), ("%", 2343374)],
        ),
        (EnvName::ChainedCodeExecutorEnv, Easy) => {
            chained::code_chain(["print(17+6)", "print(x*3)", "print(y-7)"], ["x", "y"])
        }
        (EnvName::ChainedCodeExecutorEnv, Hard) => {
            let [p1, p2, p3] = chained::hard_code_programs(&[1, 5, 10], 27, &LIS_FIXTURE);
            chained::code_chain([&p1, &p2, &p3], ["x", "y"])
        }
        _ => return None,
    })
}

/// With the first element replaced by 44 the longest increasing
/// subsequence is 2, 3, 4, 6, 12, 19, 20.
const LIS_FIXTURE: [i64; 14] = [10, 9, 2, 5, 3, 7, 101, 18, 4, 8, 6, 12, 19, 20];
