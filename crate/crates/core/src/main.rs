use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use flatcert::homology::{tor, PresentedModule};
use flatcert::script::{repro_paper, run_script, tor_lines, Options, ScriptReport, Value};
use flatcert::MonomialOrder;

#[derive(Parser)]
#[command(name = "flatcert", version, about = "Tor and flatness checks over presented rings")]
struct Cli {
    /// Monomial order for rings declared with QQ[...]
    #[arg(long, value_enum, global = true, default_value_t = Order::Grevlex)]
    order: Order,
    /// Suppress the report; only the exit status is meaningful
    #[arg(long, short, global = true)]
    quiet: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Order {
    Grevlex,
    Lex,
}

#[derive(Subcommand)]
enum Command {
    /// Run a script and report each assertion
    Run { script: PathBuf },
    /// Run the bundled reproduction checks
    Repro,
    /// Print the reduced Gröbner basis of an ideal declared in a script
    Gb { script: PathBuf, ideal: String },
    /// Print the Tor verdict and witnesses for two modules of a script
    Tor {
        script: PathBuf,
        index: usize,
        left: String,
        right: String,
    },
}

/// Run the script for its declarations; on error report and return the exit code.
fn load(path: &Path, opts: Options, quiet: bool) -> Result<ScriptReport, u8> {
    let report = run_script(path, opts);
    if let Some(e) = &report.error {
        if !quiet {
            eprintln!("error: {e}");
        }
        return Err(report.exit_code() as u8);
    }
    Ok(report)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let opts = Options {
        order: match cli.order {
            Order::Grevlex => MonomialOrder::Grevlex,
            Order::Lex => MonomialOrder::Lex,
        },
    };
    let quiet = cli.quiet;
    let code = match cli.command {
        Command::Run { script } => {
            let report = run_script(&script, opts);
            if !quiet {
                print!("{}", report.render());
                if let Some(e) = &report.error {
                    eprintln!("error: {e}");
                }
            }
            report.exit_code() as u8
        }
        Command::Repro => {
            let report = repro_paper(opts);
            if !quiet {
                print!("{}", report.render());
            }
            if report.passed() {
                0
            } else {
                1
            }
        }
        Command::Gb { script, ideal } => match load(&script, opts, quiet) {
            Err(c) => c,
            Ok(report) => match report.value(&ideal) {
                Some(Value::Ideal(i)) => {
                    if !quiet {
                        for g in i.reduced_groebner() {
                            println!("{g}");
                        }
                    }
                    0
                }
                _ => {
                    if !quiet {
                        eprintln!("error: no ideal named `{ideal}` in {}", script.display());
                    }
                    2
                }
            },
        },
        Command::Tor {
            script,
            index,
            left,
            right,
        } => match load(&script, opts, quiet) {
            Err(c) => c,
            Ok(report) => {
                let module = |name: &str| match report.value(name) {
                    Some(Value::Module(m)) => Ok(m.clone()),
                    Some(Value::Ideal(i)) => PresentedModule::from_ideal(i).map_err(|e| (3, e.to_string())),
                    _ => Err((2, format!("no module or ideal named `{name}` in {}", script.display()))),
                };
                let result = module(&left).and_then(|m| {
                    let n = module(&right)?;
                    tor(index, &m, &n).map_err(|e| (3, e.to_string()))
                });
                match result {
                    Ok(t) => {
                        if !quiet {
                            for l in tor_lines(&format!("tor({index}, {left}, {right})"), &t) {
                                println!("{l}");
                            }
                        }
                        0
                    }
                    Err((code, msg)) => {
                        if !quiet {
                            eprintln!("error: {msg}");
                        }
                        code
                    }
                }
            }
        },
    };
    ExitCode::from(code)
}
