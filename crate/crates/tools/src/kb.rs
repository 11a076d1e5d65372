//! Lookup tables for historical years and game rules.

use serde::{Deserialize, Serialize};

use crate::corpus::tokens;
use crate::error::ToolError;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct YearEntry {
    pub event: String,
    pub year: i64,
    pub context: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GameEntry {
    pub game: String,
    pub attribute: String,
    pub value: i64,
    pub description: String,
}

pub fn normalize(s: &str) -> String {
    s.split_whitespace()
        .collect::<Vec<_>>()
        .join(" ")
        .to_lowercase()
        .trim_matches(|c: char| c.is_ascii_punctuation())
        .to_string()
}

/// Exact normalized match first, then the candidate with the largest
/// keyword overlap; earlier entries win ties.
fn best_match<'a, T>(items: &'a [T], key: &str, text: impl Fn(&T) -> &str) -> Option<&'a T> {
    let nk = normalize(key);
    if let Some(hit) = items.iter().find(|e| normalize(text(e)) == nk) {
        return Some(hit);
    }
    let q = tokens(key);
    let mut best: Option<(&T, usize)> = None;
    for e in items {
        let score = q.intersection(&tokens(text(e))).count();
        if score > 0 && best.is_none_or(|(_, b)| score > b) {
            best = Some((e, score));
        }
    }
    best.map(|(e, _)| e)
}

pub fn lookup_year<'a>(table: &'a [YearEntry], event: &str) -> Result<&'a YearEntry, ToolError> {
    best_match(table, event, |e| &e.event)
        .ok_or_else(|| ToolError::NotFound(format!("no event matching '{}'", event.trim())))
}

pub fn lookup_rule<'a>(
    table: &'a [GameEntry],
    game: &str,
    attribute: &str,
) -> Result<&'a GameEntry, ToolError> {
    let g = best_match(table, game, |e| &e.game)
        .ok_or_else(|| ToolError::NotFound(format!("no game matching '{}'", game.trim())))?;
    let same_game: Vec<GameEntry> = table.iter().filter(|e| e.game == g.game).cloned().collect();
    let attr = best_match(&same_game, attribute, |e| &e.attribute).ok_or_else(|| {
        ToolError::NotFound(format!(
            "no attribute matching '{}' for {}",
            attribute.trim(),
            g.game
        ))
    })?;
    Ok(table
        .iter()
        .find(|e| e.game == attr.game && e.attribute == attr.attribute)
        .expect("entry came from this table"))
}
