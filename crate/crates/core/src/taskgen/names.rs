//! Fictional names built from fixed syllable tables.

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::text::pick;

const ONSETS: &[&str] = &[
    "b", "br", "c", "d", "dr", "f", "g", "gr", "h", "k", "kr", "l", "m", "n", "p", "qu", "r", "s",
    "st", "t", "th", "tr", "v", "vr", "z", "zh",
];
const NUCLEI: &[&str] = &["a", "e", "i", "o", "u", "ae", "ei", "ou", "y"];
const CODAS: &[&str] = &["", "", "", "l", "n", "r", "s", "th", "m", "x", "nd", "rk"];

/// A capitalized word of `syllables` syllables, e.g. "Velmorath".
pub fn word(rng: &mut ChaCha8Rng, syllables: usize) -> String {
    let mut s = String::new();
    for _ in 0..syllables {
        s.push_str(pick(rng, ONSETS));
        s.push_str(pick(rng, NUCLEI));
        s.push_str(pick(rng, CODAS));
    }
    let mut chars = s.chars();
    match chars.next() {
        Some(c) => c.to_uppercase().chain(chars).collect(),
        None => s,
    }
}

pub fn short_word(rng: &mut ChaCha8Rng) -> String {
    let n = rng.gen_range(2..=3);
    word(rng, n)
}

pub fn person(rng: &mut ChaCha8Rng) -> String {
    format!("{} {}", word(rng, 2), short_word(rng))
}

/// Alphanumeric designator such as "Nimbus-73".
pub fn designator(rng: &mut ChaCha8Rng) -> String {
    format!("{}-{}", word(rng, 2), rng.gen_range(10..100))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    #[test]
    fn names_are_ascii_alphabetic_and_capitalized() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..200 {
            let w = short_word(&mut rng);
            assert!(w.chars().all(|c| c.is_ascii_alphabetic()), "{w}");
            assert!(w.chars().next().unwrap().is_ascii_uppercase());
        }
    }
}
