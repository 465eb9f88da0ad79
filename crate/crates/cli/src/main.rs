use std::io::Write;
use std::process::ExitCode;

use clap::Parser;

use cyclicount_cli::{run, Cli, EXIT_INPUT};
use cyclicount_core::Limits;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            // usage errors share the input-error exit code
            return ExitCode::from(if e.use_stderr() { EXIT_INPUT as u8 } else { 0 });
        }
    };
    let limits = match Limits::from_env() {
        Ok(l) => l,
        Err((var, value)) => {
            eprintln!("error: {var}={value:?} is not a decimal integer");
            return ExitCode::from(EXIT_INPUT as u8);
        }
    };
    let outcome = run(cli, &limits);
    print!("{}", outcome.stdout);
    eprint!("{}", outcome.stderr);
    let _ = std::io::stdout().flush();
    ExitCode::from(outcome.code as u8)
}
