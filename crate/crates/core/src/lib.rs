pub mod agent;
pub mod backend;
pub mod evaluator;
pub mod metrics;
pub mod probe;
pub mod taskgen;
