//! Command-line front end for the `p6-core` verification suites.
//!
//! Reports are deterministic: identical arguments give byte-identical output
//! regardless of thread count.

pub mod cli;
pub mod literal;
pub mod report;
pub mod run;

use std::io::Write;

pub use cli::{parse_command, CommandSpec, UsageError};
pub use report::ReportDocument;
pub use run::execute;

/// Encodes a report in the requested format.
pub fn render(doc: &ReportDocument, format: cli::Format) -> Result<String, csv::Error> {
    match format {
        cli::Format::Json => Ok(doc.to_json()),
        cli::Format::Csv => doc.to_csv(),
    }
}

/// Parses, executes and writes the report; returns the exit status.
pub fn main_with_args<S: AsRef<str>>(argv: &[S]) -> i32 {
    let spec = match parse_command(argv) {
        Ok(s) => s,
        Err(e) => {
            e.print();
            return e.exit_code();
        }
    };
    let doc = execute(&spec);
    let common = spec.command.common();
    let text = match render(&doc, common.format) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: cannot encode report: {e}");
            return 1;
        }
    };
    let written = match &common.out {
        Some(path) => std::fs::write(path, text.as_bytes()).map_err(|e| format!("{}: {e}", path.display())),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes()).and_then(|_| out.flush()).map_err(|e| e.to_string())
        }
    };
    if let Err(e) = written {
        eprintln!("error: cannot write report: {e}");
        return 1;
    }
    if doc.all_pass() {
        0
    } else {
        1
    }
}
