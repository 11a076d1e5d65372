//! Seed derivation.
//!
//! A task's seed is the first eight bytes (big-endian) of
//! `SHA-256("when2tool:{global}:{env}:{difficulty}:{split}:{index}")`.
//! Seeds depend only on the task's own coordinates, so adding an
//! environment or reordering a manifest never changes existing tasks.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use sha2::{Digest, Sha256};

use super::{Difficulty, EnvName, Split};

pub fn hash64(text: &str) -> u64 {
    let digest = Sha256::digest(text.as_bytes());
    u64::from_be_bytes(digest[..8].try_into().expect("digest has 32 bytes"))
}

pub fn task_seed(
    global: u64,
    env: EnvName,
    difficulty: Difficulty,
    split: Split,
    index: usize,
) -> u64 {
    hash64(&format!(
        "when2tool:{global}:{env}:{difficulty}:{split}:{index}"
    ))
}

/// Seed of the permutation that deals a finite pool across both splits.
pub fn pool_seed(global: u64, env: EnvName, difficulty: Difficulty) -> u64 {
    hash64(&format!("when2tool:{global}:{env}:{difficulty}:pool"))
}

pub const ZONES: u64 = 6;

/// Random cells only keep prompts whose hash lands in their own zone, which
/// makes prompts of different (difficulty, split) cells disjoint by
/// construction without any cross-cell bookkeeping.
pub fn zone_of(difficulty: Difficulty, split: Split) -> u64 {
    (difficulty.index() * 2 + split.index()) as u64
}

pub fn prompt_zone(prompt: &str) -> u64 {
    hash64(prompt) % ZONES
}

pub fn permutation(n: usize, seed: u64) -> Vec<usize> {
    let mut v: Vec<usize> = (0..n).collect();
    v.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zones_cover_each_cell_once() {
        let mut zones: Vec<u64> = Difficulty::ALL
            .iter()
            .flat_map(|d| Split::ALL.iter().map(move |s| zone_of(*d, *s)))
            .collect();
        zones.sort();
        assert_eq!(zones, vec![0, 1, 2, 3, 4, 5]);
    }

    #[test]
    fn seeds_differ_across_coordinates() {
        let a = task_seed(0, EnvName::CalculatorEnv, Difficulty::Easy, Split::Train, 0);
        assert_ne!(
            a,
            task_seed(1, EnvName::CalculatorEnv, Difficulty::Easy, Split::Train, 0)
        );
        assert_ne!(
            a,
            task_seed(0, EnvName::CalculatorEnv, Difficulty::Easy, Split::Train, 1)
        );
        assert_ne!(
            a,
            task_seed(0, EnvName::CalculatorEnv, Difficulty::Easy, Split::Test, 0)
        );
        assert_eq!(
            a,
            task_seed(0, EnvName::CalculatorEnv, Difficulty::Easy, Split::Train, 0)
        );
    }

    #[test]
    fn permutation_is_a_permutation() {
        let mut p = permutation(75, 9);
        p.sort();
        assert_eq!(p, (0..75).collect::<Vec<_>>());
    }
}
