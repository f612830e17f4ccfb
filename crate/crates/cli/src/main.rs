//! `howe`: batch front end to the `howe` library.
//!
//! Every invocation writes exactly one JSON document to standard output:
//! `{"status": ..., "payload": ..., "diagnostics": [...]}`. The exit code is
//! 0 for `ok`, 2 for `domain-error` and 1 for `parse-error`. Diagnostics are
//! plain text; `NO_COLOR` turns off color in clap's own help output.

mod commands;
mod output;

use std::io::Write;
use std::process::ExitCode;

use clap::Parser;

use crate::output::{CliError, CommandResult};

fn main() -> ExitCode {
    let result = match commands::Cli::try_parse() {
        Ok(cli) => match commands::run(cli) {
            Ok(out) => CommandResult::ok(out.payload, out.diagnostics),
            Err(e) => CommandResult::error(e),
        },
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = e.print();
                return ExitCode::SUCCESS;
            }
            CommandResult::error(CliError::Parse(e.render().to_string().trim_end().to_string()))
        }
    };
    // A closed pipe (`howe ... | head`) is not worth a panic.
    let _ = writeln!(std::io::stdout().lock(), "{}", result.render());
    ExitCode::from(result.exit_code())
}
