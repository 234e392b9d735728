//! JSON formats and the command-line front-end for `hypdiagram`.

pub mod commands;
pub mod error;
pub mod json;

use std::fs;
use std::io::{Read, Write};

use clap::Parser;
use serde_json::Value;

pub use commands::{run, to_text, Cli, Command, Format};
pub use error::CliError;

fn read_document(cli: &Cli) -> Result<Value, CliError> {
    let text = match &cli.input {
        Some(path) => fs::read_to_string(path)?,
        None => {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s)?;
            s
        }
    };
    serde_json::from_str(&text).map_err(|e| CliError::Input(format!("input is not valid JSON: {e}")))
}

/// Renders a report: pretty JSON with a trailing newline, or text.
pub fn render(report: &Value, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(report).expect("reports serialize");
            s.push('\n');
            s
        }
        Format::Text => to_text(report),
    }
}

/// Parses arguments, runs, writes the report, and returns the exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let result = run(&cli.command, &mut || read_document(&cli)).and_then(|report| {
        let text = render(&report, cli.format);
        match &cli.output {
            Some(path) => fs::write(path, text)?,
            None => std::io::stdout().write_all(text.as_bytes())?,
        }
        Ok(())
    });
    match result {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
