//! A small script language for declaring rings, ideals, modules and maps
//! and asserting Tor, flatness and membership verdicts.

pub mod ast;
mod interp;
mod parser;
pub mod repro;

pub use interp::{
    module_text, run_parsed, run_source, tor_lines, AssertionResult, ErrorClass, Options, Outcome, ScriptError,
    ScriptReport, Value,
};
pub use parser::parse_script;
pub use repro::{repro_paper, ReproReport};

/// Read and run a script file. An unreadable file is reported as a parse
/// error.
pub fn run_script(path: &std::path::Path, opts: Options) -> ScriptReport {
    match std::fs::read_to_string(path) {
        Ok(text) => run_source(&text, opts),
        Err(e) => ScriptReport {
            error: Some(ScriptError {
                class: ErrorClass::Parse,
                message: format!("cannot read {}: {e}", path.display()),
            }),
            ..Default::default()
        },
    }
}
