//! Keyword search over a small document corpus.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::ToolError;

pub const SNIPPET_CHARS: usize = 100;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Document {
    pub doc_id: String,
    pub title: String,
    pub content: String,
    /// Structured attributes the content was written from, kept so the
    /// generator can assert that the answer only lives in target docs.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub facts: BTreeMap<String, String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchHit {
    pub doc_id: String,
    pub title: String,
    pub snippet: String,
    pub score: usize,
}

const STOPWORDS: &[&str] = &[
    "a", "an", "and", "are", "as", "at", "by", "did", "do", "does", "for", "from", "how", "in",
    "is", "it", "its", "of", "on", "or", "that", "the", "this", "to", "was", "were", "what",
    "when", "where", "which", "who", "whom", "why", "with",
];

/// Lowercased alphanumeric runs, with hyphenated compounds also kept whole
/// so that "nimbus-73" matches either as one token or by its parts.
pub fn tokens(text: &str) -> BTreeSet<String> {
    let lower = text.to_lowercase();
    let mut out = BTreeSet::new();
    for chunk in lower.split(|c: char| !(c.is_alphanumeric() || c == '-')) {
        let chunk = chunk.trim_matches('-');
        if chunk.is_empty() {
            continue;
        }
        if chunk.contains('-') {
            out.insert(chunk.to_string());
        }
        for part in chunk.split('-').filter(|p| !p.is_empty()) {
            if !STOPWORDS.contains(&part) {
                out.insert(part.to_string());
            }
        }
    }
    out
}

pub fn snippet(content: &str) -> String {
    content.chars().take(SNIPPET_CHARS).collect()
}

/// Ranks documents by the number of distinct query keywords found in the
/// title. Zero-overlap documents are never returned; ties go to the
/// lexicographically smaller doc_id.
pub fn search(docs: &[Document], query: &str, top_k: i64) -> Result<Vec<SearchHit>, ToolError> {
    if top_k <= 0 {
        return Err(ToolError::invalid("top_k", "must be positive"));
    }
    let q = tokens(query);
    let mut hits: Vec<SearchHit> = docs
        .iter()
        .filter_map(|d| {
            let t = tokens(&d.title);
            let score = q.intersection(&t).count();
            (score > 0).then(|| SearchHit {
                doc_id: d.doc_id.clone(),
                title: d.title.clone(),
                snippet: snippet(&d.content),
                score,
            })
        })
        .collect();
    hits.sort_by(|a, b| b.score.cmp(&a.score).then_with(|| a.doc_id.cmp(&b.doc_id)));
    hits.truncate(top_k as usize);
    Ok(hits)
}

pub fn read<'a>(docs: &'a [Document], doc_id: &str) -> Result<&'a Document, ToolError> {
    let id = doc_id.trim();
    docs.iter()
        .find(|d| d.doc_id == id)
        .ok_or_else(|| ToolError::NotFound(format!("document '{id}'")))
}

pub fn word_count(content: &str) -> usize {
    content.split_whitespace().count()
}
