//! Corpus building, verification suites and file plumbing behind the `gis`
//! command-line tool.

pub mod corpus;
pub mod error;
pub mod fixtures;
pub mod naive;
pub mod report;
pub mod suites;

pub use corpus::{Corpus, CorpusEntry, Provenance};
pub use error::WorkbenchError;
pub use report::{CheckResult, CheckStatus, RunReport};
pub use suites::{run_suite, Suite};
