//! The `satlab` command-line front end.
//!
//! Every subcommand re-verifies its operation's postcondition before
//! emitting a result; `--json` prints one result object per line with
//! `status`, `payload`, and `verification` fields. Exit codes: 0 on
//! success, 1 on a domain error, 2 on a usage error.

mod commands;
mod output;

pub use commands::run;
pub use output::CommandResult;
