//! Command-line front end for `weylhom`: single queries, verification
//! checks and a parallel grid search with JSON-lines and CSV output.

pub mod error;
pub mod report;
pub mod search;

pub use error::{exit, CliError};
pub use search::{run_search, SearchConfig, SearchOutcome, SearchRecord};
