//! Per-task environment payload consulted by knowledge tools.

use serde::{Deserialize, Serialize};

use crate::corpus::Document;
use crate::kb::{GameEntry, YearEntry};

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum EnvState {
    #[default]
    None,
    Corpus {
        documents: Vec<Document>,
    },
    Years {
        entries: Vec<YearEntry>,
    },
    Games {
        entries: Vec<GameEntry>,
    },
}

impl EnvState {
    pub fn documents(&self) -> &[Document] {
        match self {
            EnvState::Corpus { documents } => documents,
            _ => &[],
        }
    }

    pub fn years(&self) -> &[YearEntry] {
        match self {
            EnvState::Years { entries } => entries,
            _ => &[],
        }
    }

    pub fn games(&self) -> &[GameEntry] {
        match self {
            EnvState::Games { entries } => entries,
            _ => &[],
        }
    }
}
