//! Config-driven harness around `albert_core`: construction from strict
//! JSON configs or named fixtures, seeded property suites with JSONL
//! reports, and a small expression evaluator.

pub mod cli;
pub mod config;
pub mod error;
pub mod eval;
pub mod suites;

pub use config::{parse_config, Built, RunConfig};
pub use error::CtlError;
pub use suites::{Failure, SuiteReport};
