//! Standard digests plus five custom 64-bit hashes.
//!
//! The custom variants deliberately use non-standard primes, offsets and
//! mixing constants so their outputs cannot be recalled from memory. All
//! of them hash the UTF-8 bytes of the input and print 16 lowercase hex
//! digits.

use md5::Md5;
use sha1::Sha1;
use sha2::{Digest, Sha256};

use crate::error::ToolError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum HashAlgorithm {
    Md5,
    Sha1,
    Sha256,
    Fnv1aCustom,
    Djb2Custom,
    SdbmCustom,
    MurmurCustom,
    JenkinsCustom,
}

impl HashAlgorithm {
    pub const ALL: [HashAlgorithm; 8] = [
        HashAlgorithm::Md5,
        HashAlgorithm::Sha1,
        HashAlgorithm::Sha256,
        HashAlgorithm::Fnv1aCustom,
        HashAlgorithm::Djb2Custom,
        HashAlgorithm::SdbmCustom,
        HashAlgorithm::MurmurCustom,
        HashAlgorithm::JenkinsCustom,
    ];

    pub const CUSTOM: [HashAlgorithm; 5] = [
        HashAlgorithm::Fnv1aCustom,
        HashAlgorithm::Djb2Custom,
        HashAlgorithm::SdbmCustom,
        HashAlgorithm::MurmurCustom,
        HashAlgorithm::JenkinsCustom,
    ];

    pub fn name(self) -> &'static str {
        match self {
            HashAlgorithm::Md5 => "md5",
            HashAlgorithm::Sha1 => "sha1",
            HashAlgorithm::Sha256 => "sha256",
            HashAlgorithm::Fnv1aCustom => "fnv1a_custom",
            HashAlgorithm::Djb2Custom => "djb2_custom",
            HashAlgorithm::SdbmCustom => "sdbm_custom",
            HashAlgorithm::MurmurCustom => "murmur_custom",
            HashAlgorithm::JenkinsCustom => "jenkins_custom",
        }
    }

    /// Accepts "SHA-256", "MURMUR_CUSTOM", "sha 1" and similar spellings.
    pub fn parse(s: &str) -> Result<Self, ToolError> {
        let norm: String = s
            .trim()
            .to_ascii_lowercase()
            .chars()
            .map(|c| if c == '-' || c == ' ' { '_' } else { c })
            .collect();
        let compact = norm.replace('_', "");
        Self::ALL
            .into_iter()
            .find(|a| a.name() == norm || a.name().replace('_', "") == compact)
            .ok_or_else(|| {
                ToolError::invalid("algorithm", format!("unknown algorithm '{}'", s.trim()))
            })
    }
}

pub const FNV_OFFSET: u64 = 0x6c62_272e_07bb_0142;
pub const FNV_PRIME: u64 = 0x0000_0100_0000_01c7;
pub const DJB2_SEED: u64 = 5387;
pub const DJB2_MULT: u64 = 37;
pub const SDBM_SEED: u64 = 0x9e37;
pub const MURMUR_SEED: u64 = 0x5bd1_e995_2f1c_0a37;
pub const MURMUR_M: u64 = 0xc6a4_a793_5bd1_e9b5;
pub const JENKINS_SEED: u64 = 0x0102_0304_0506_0708;

pub fn fnv1a_custom(data: &[u8]) -> u64 {
    data.iter()
        .fold(FNV_OFFSET, |h, &b| (h ^ b as u64).wrapping_mul(FNV_PRIME))
}

pub fn djb2_custom(data: &[u8]) -> u64 {
    data.iter().fold(DJB2_SEED, |h, &b| {
        h.wrapping_mul(DJB2_MULT).wrapping_add(b as u64)
    })
}

pub fn sdbm_custom(data: &[u8]) -> u64 {
    data.iter().fold(SDBM_SEED, |h, &b| {
        (b as u64)
            .wrapping_add(h << 7)
            .wrapping_add(h << 17)
            .wrapping_sub(h)
    })
}

/// MurmurHash64A structure with custom seed and multiplier.
pub fn murmur_custom(data: &[u8]) -> u64 {
    const R: u32 = 45;
    let mut h = MURMUR_SEED ^ (data.len() as u64).wrapping_mul(MURMUR_M);
    let mut chunks = data.chunks_exact(8);
    for chunk in &mut chunks {
        let mut k = u64::from_le_bytes(chunk.try_into().expect("8-byte chunk"));
        k = k.wrapping_mul(MURMUR_M);
        k ^= k >> R;
        k = k.wrapping_mul(MURMUR_M);
        h ^= k;
        h = h.wrapping_mul(MURMUR_M);
    }
    let tail = chunks.remainder();
    if !tail.is_empty() {
        let mut k = 0u64;
        for (i, &b) in tail.iter().enumerate() {
            k |= (b as u64) << (8 * i);
        }
        h ^= k;
        h = h.wrapping_mul(MURMUR_M);
    }
    h ^= h >> R;
    h = h.wrapping_mul(MURMUR_M);
    h ^= h >> R;
    h
}

/// One-at-a-time with 64-bit state and shifted mixing amounts.
pub fn jenkins_custom(data: &[u8]) -> u64 {
    let mut h = JENKINS_SEED;
    for &b in data {
        h = h.wrapping_add(b as u64);
        h = h.wrapping_add(h << 11);
        h ^= h >> 7;
    }
    h = h.wrapping_add(h << 5);
    h ^= h >> 13;
    h = h.wrapping_add(h << 17);
    h
}

fn hex(bytes: &[u8]) -> String {
    bytes.iter().map(|b| format!("{b:02x}")).collect()
}

pub fn compute(alg: HashAlgorithm, input: &str) -> String {
    let data = input.as_bytes();
    match alg {
        HashAlgorithm::Md5 => hex(&Md5::digest(data)),
        HashAlgorithm::Sha1 => hex(&Sha1::digest(data)),
        HashAlgorithm::Sha256 => hex(&Sha256::digest(data)),
        HashAlgorithm::Fnv1aCustom => format!("{:016x}", fnv1a_custom(data)),
        HashAlgorithm::Djb2Custom => format!("{:016x}", djb2_custom(data)),
        HashAlgorithm::SdbmCustom => format!("{:016x}", sdbm_custom(data)),
        HashAlgorithm::MurmurCustom => format!("{:016x}", murmur_custom(data)),
        HashAlgorithm::JenkinsCustom => format!("{:016x}", jenkins_custom(data)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn standard_vectors() {
        assert_eq!(
            compute(HashAlgorithm::Md5, "hello"),
            "5d41402abc4b2a76b9719d911017c592"
        );
        assert_eq!(
            compute(HashAlgorithm::Sha256, ""),
            "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855"
        );
        assert_eq!(
            compute(HashAlgorithm::Sha1, "abc"),
            "a9993e364706816aba3e25717850c26c9cd0d89d"
        );
    }

    #[test]
    fn custom_empty_inputs_return_initial_state() {
        assert_eq!(
            compute(HashAlgorithm::Fnv1aCustom, ""),
            format!("{FNV_OFFSET:016x}")
        );
        assert_eq!(
            compute(HashAlgorithm::Djb2Custom, ""),
            format!("{DJB2_SEED:016x}")
        );
        assert_eq!(
            compute(HashAlgorithm::SdbmCustom, ""),
            format!("{SDBM_SEED:016x}")
        );
    }

    #[test]
    fn custom_hashes_are_distinct_and_lowercase_hex() {
        let outs: Vec<String> = HashAlgorithm::CUSTOM
            .iter()
            .map(|&a| compute(a, "xK9mQ2"))
            .collect();
        for o in &outs {
            assert_eq!(o.len(), 16);
            assert!(o
                .chars()
                .all(|c| c.is_ascii_digit() || ('a'..='f').contains(&c)));
        }
        let set: std::collections::BTreeSet<_> = outs.iter().collect();
        assert_eq!(set.len(), outs.len());
        assert_ne!(
            compute(HashAlgorithm::MurmurCustom, "a"),
            compute(HashAlgorithm::MurmurCustom, "b")
        );
    }

    /// Byte-at-a-time reference for the FNV-style loop.
    #[test]
    fn fnv_matches_manual_loop() {
        let mut h = FNV_OFFSET;
        for b in b"When2Tool" {
            h ^= *b as u64;
            h = h.wrapping_mul(FNV_PRIME);
        }
        assert_eq!(fnv1a_custom(b"When2Tool"), h);
    }

    #[test]
    fn parses_spellings() {
        assert_eq!(
            HashAlgorithm::parse("SHA-256").unwrap(),
            HashAlgorithm::Sha256
        );
        assert_eq!(
            HashAlgorithm::parse("MURMUR_CUSTOM").unwrap(),
            HashAlgorithm::MurmurCustom
        );
        assert_eq!(
            HashAlgorithm::parse("fnv1a custom").unwrap(),
            HashAlgorithm::Fnv1aCustom
        );
        assert!(HashAlgorithm::parse("crc32").is_err());
    }
}
