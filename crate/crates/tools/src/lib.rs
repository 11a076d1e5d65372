//! Deterministic local tools: exact arithmetic, statistics, combinatorics,
//! matrices, primes, corpus search, lookup tables, hashes, ciphers, list and
//! date operations, a small Python-subset interpreter, scheduling and regex.

pub mod answer;
pub mod calc;
pub mod codec;
pub mod combinatorics;
pub mod corpus;
pub mod dates;
pub mod error;
pub mod hash;
pub mod interp;
pub mod kb;
pub mod lists;
pub mod matrix;
pub mod prime;
pub mod regex_op;
pub mod schedule;
pub mod spec;
pub mod state;
pub mod stats;
pub mod toolbox;

pub use answer::{AnswerKind, AnswerValue, Literal};
pub use error::ToolError;
pub use spec::{ParamSpec, ParamType, ToolCall, ToolResult, ToolSpec};
pub use state::EnvState;
pub use toolbox::{specs_for, Toolbox, Toolset};
