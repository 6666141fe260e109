use std::io;
use std::process::ExitCode;

use clap::Parser;
use mflip::cli::{self, Cli};

fn main() -> ExitCode {
    let parsed = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { cli::EXIT_INVALID } else { cli::EXIT_OK };
            let _ = e.print();
            return ExitCode::from(code as u8);
        }
    };
    let code = cli::run(parsed, &mut io::stdout().lock(), &mut io::stderr().lock());
    ExitCode::from(code as u8)
}
