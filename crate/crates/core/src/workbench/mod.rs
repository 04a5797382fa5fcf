//! Instance files, validation, queries and suite runs behind the `cellwork` binary.

pub mod format;
pub mod load;
pub mod query;
pub mod suite;

pub use load::{load, Diagnostic, Instance, BUILTIN_ALIAS};
pub use query::{run_query, QueryError};
pub use suite::{exit_code, run_suites, RunConfig, SuiteError};
