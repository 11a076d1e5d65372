//! Morse code, classical ciphers and custom substitution ciphers.
//!
//! Letter ciphers work on A-Z; input is upper-cased and spaces pass
//! through unchanged. Any other character is rejected.

use crate::error::ToolError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Scheme {
    Morse,
    Rot13,
    Caesar(i64),
    Scramble1,
    Scramble2,
    Alpha7,
    Reverse,
}

pub const CUSTOM_SCHEMES: [Scheme; 4] = [
    Scheme::Scramble1,
    Scheme::Scramble2,
    Scheme::Alpha7,
    Scheme::Reverse,
];

impl Scheme {
    pub fn name(self) -> &'static str {
        match self {
            Scheme::Morse => "morse",
            Scheme::Rot13 => "rot13",
            Scheme::Caesar(_) => "caesar",
            Scheme::Scramble1 => "scramble1",
            Scheme::Scramble2 => "scramble2",
            Scheme::Alpha7 => "alpha7",
            Scheme::Reverse => "reverse",
        }
    }

    /// `shift` is only consulted for Caesar.
    pub fn parse(name: &str, shift: Option<i64>) -> Result<Self, ToolError> {
        let n = name
            .trim()
            .to_ascii_lowercase()
            .replace([' ', '-', '_'], "");
        Ok(match n.as_str() {
            "morse" | "morsecode" => Scheme::Morse,
            "rot13" => Scheme::Rot13,
            "caesar" | "caesarcipher" => {
                Scheme::Caesar(shift.ok_or(ToolError::MissingArgument("shift".into()))?)
            }
            "scramble1" => Scheme::Scramble1,
            "scramble2" => Scheme::Scramble2,
            "alpha7" => Scheme::Alpha7,
            "reverse" => Scheme::Reverse,
            _ => {
                return Err(ToolError::invalid(
                    "scheme",
                    format!("unknown scheme '{}'", name.trim()),
                ))
            }
        })
    }
}

const MORSE: [(char, &str); 36] = [
    ('A', ".-"),
    ('B', "-..."),
    ('C', "-.-."),
    ('D', "-.."),
    ('E', "."),
    ('F', "..-."),
    ('G', "--."),
    ('H', "...."),
    ('I', ".."),
    ('J', ".---"),
    ('K', "-.-"),
    ('L', ".-.."),
    ('M', "--"),
    ('N', "-."),
    ('O', "---"),
    ('P', ".--."),
    ('Q', "--.-"),
    ('R', ".-."),
    ('S', "..."),
    ('T', "-"),
    ('U', "..-"),
    ('V', "...-"),
    ('W', ".--"),
    ('X', "-..-"),
    ('Y', "-.--"),
    ('Z', "--.."),
    ('0', "-----"),
    ('1', ".----"),
    ('2', "..---"),
    ('3', "...--"),
    ('4', "....-"),
    ('5', "....."),
    ('6', "-...."),
    ('7', "--..."),
    ('8', "---.."),
    ('9', "----."),
];

/// Fixed letter permutation for scramble2: plaintext letter i maps to
/// SCRAMBLE2[i].
pub const SCRAMBLE2: &[u8; 26] = b"QWERTYUIOPASDFGHJKLZXCVBNM";

/// Per-letter shifts for scramble1, cycled over letter positions (spaces do
/// not advance the key).
pub const SCRAMBLE1_KEY: [u8; 5] = [3, 1, 4, 5, 12];

/// alpha7 is the affine map x -> 7x + 3 (mod 26); 15 is the inverse of 7.
const ALPHA7_A: i64 = 7;
const ALPHA7_B: i64 = 3;
const ALPHA7_A_INV: i64 = 15;

fn letters(text: &str) -> Result<Vec<char>, ToolError> {
    text.chars()
        .map(|c| {
            let u = c.to_ascii_uppercase();
            if u.is_ascii_uppercase() || u == ' ' {
                Ok(u)
            } else {
                Err(ToolError::invalid(
                    "text",
                    format!("character '{c}' is outside A-Z"),
                ))
            }
        })
        .collect()
}

fn map_letters(text: &str, mut f: impl FnMut(usize, i64) -> i64) -> Result<String, ToolError> {
    let mut idx = 0usize;
    Ok(letters(text)?
        .into_iter()
        .map(|c| {
            if c == ' ' {
                ' '
            } else {
                let x = (c as u8 - b'A') as i64;
                let y = f(idx, x).rem_euclid(26);
                idx += 1;
                (b'A' + y as u8) as char
            }
        })
        .collect())
}

fn morse_encode(text: &str) -> Result<String, ToolError> {
    let words: Vec<String> = text
        .split_whitespace()
        .map(|w| {
            w.chars()
                .map(|c| {
                    let u = c.to_ascii_uppercase();
                    MORSE
                        .iter()
                        .find(|(k, _)| *k == u)
                        .map(|(_, code)| *code)
                        .ok_or_else(|| {
                            ToolError::invalid("text", format!("no Morse code for '{c}'"))
                        })
                })
                .collect::<Result<Vec<_>, _>>()
                .map(|codes| codes.join(" "))
        })
        .collect::<Result<_, _>>()?;
    Ok(words.join(" / "))
}

fn morse_decode(text: &str) -> Result<String, ToolError> {
    let words: Vec<String> = text
        .split('/')
        .map(|w| {
            w.split_whitespace()
                .map(|code| {
                    MORSE
                        .iter()
                        .find(|(_, c)| *c == code)
                        .map(|(k, _)| *k)
                        .ok_or_else(|| {
                            ToolError::invalid("text", format!("unknown Morse sequence '{code}'"))
                        })
                })
                .collect::<Result<String, _>>()
        })
        .collect::<Result<_, _>>()?;
    Ok(words
        .into_iter()
        .filter(|w| !w.is_empty())
        .collect::<Vec<_>>()
        .join(" "))
}

pub fn encode(scheme: Scheme, text: &str) -> Result<String, ToolError> {
    match scheme {
        Scheme::Morse => morse_encode(text),
        Scheme::Rot13 => map_letters(text, |_, x| x + 13),
        Scheme::Caesar(k) => map_letters(text, |_, x| x + k),
        Scheme::Scramble1 => map_letters(text, |i, x| {
            x + SCRAMBLE1_KEY[i % SCRAMBLE1_KEY.len()] as i64
        }),
        Scheme::Scramble2 => map_letters(text, |_, x| (SCRAMBLE2[x as usize] - b'A') as i64),
        Scheme::Alpha7 => map_letters(text, |_, x| ALPHA7_A * x + ALPHA7_B),
        Scheme::Reverse => map_letters(text, |_, x| 25 - x),
    }
}

pub fn decode(scheme: Scheme, text: &str) -> Result<String, ToolError> {
    match scheme {
        Scheme::Morse => morse_decode(text),
        Scheme::Rot13 => map_letters(text, |_, x| x + 13),
        Scheme::Caesar(k) => map_letters(text, |_, x| x - k),
        Scheme::Scramble1 => map_letters(text, |i, x| {
            x - SCRAMBLE1_KEY[i % SCRAMBLE1_KEY.len()] as i64
        }),
        Scheme::Scramble2 => map_letters(text, |_, y| {
            SCRAMBLE2
                .iter()
                .position(|&c| (c - b'A') as i64 == y)
                .expect("permutation") as i64
        }),
        Scheme::Alpha7 => map_letters(text, |_, y| ALPHA7_A_INV * (y - ALPHA7_B)),
        Scheme::Reverse => map_letters(text, |_, x| 25 - x),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn reference_values() {
        assert_eq!(encode(Scheme::Morse, "SOS").unwrap(), "... --- ...");
        assert_eq!(decode(Scheme::Morse, "... --- ...").unwrap(), "SOS");
        assert_eq!(
            encode(Scheme::Morse, "HI YOU").unwrap(),
            ".... .. / -.-- --- ..-"
        );
        assert_eq!(encode(Scheme::Caesar(0), "HELLO").unwrap(), "HELLO");
        assert_eq!(encode(Scheme::Rot13, "Hello").unwrap(), "URYYB");
        assert_eq!(decode(Scheme::Scramble1, "KFPQA").unwrap(), "HELLO");
        assert_eq!(encode(Scheme::Reverse, "ABC XYZ").unwrap(), "ZYX CBA");
        assert_eq!(encode(Scheme::Alpha7, "AB").unwrap(), "DK");
    }

    #[test]
    fn caesar_roundtrip_of_cipher() {
        let enc = encode(Scheme::Caesar(11), "CIPHER").unwrap();
        assert_eq!(enc, "NTASPC");
        assert_eq!(decode(Scheme::Caesar(11), &enc).unwrap(), "CIPHER");
    }

    #[test]
    fn tables_are_permutations() {
        let mut seen = [false; 26];
        for &c in SCRAMBLE2 {
            seen[(c - b'A') as usize] = true;
        }
        assert!(seen.iter().all(|&s| s));
        assert_eq!((ALPHA7_A * ALPHA7_A_INV) % 26, 1);
    }

    #[test]
    fn rejects_outside_alphabet() {
        assert!(encode(Scheme::Rot13, "abc1").is_err());
        assert!(decode(Scheme::Morse, "...---...---").is_err());
        assert!(Scheme::parse("caesar", None).is_err());
        assert!(Scheme::parse("enigma", None).is_err());
    }

    fn all_schemes() -> impl Strategy<Value = Scheme> {
        prop_oneof![
            Just(Scheme::Morse),
            Just(Scheme::Rot13),
            (-30i64..30).prop_map(Scheme::Caesar),
            Just(Scheme::Scramble1),
            Just(Scheme::Scramble2),
            Just(Scheme::Alpha7),
            Just(Scheme::Reverse),
        ]
    }

    proptest! {
        #[test]
        fn decode_inverts_encode(s in all_schemes(), text in "[A-Z]{1,8}( [A-Z]{1,8}){0,3}") {
            let enc = encode(s, &text).unwrap();
            prop_assert_eq!(decode(s, &enc).unwrap(), text);
        }

        #[test]
        fn reverse_is_an_involution(text in "[A-Z ]{0,20}") {
            prop_assert_eq!(encode(Scheme::Reverse, &encode(Scheme::Reverse, &text).unwrap()).unwrap(), text);
        }
    }
}
