use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use fairflip::cli::{run, Cli};

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let _ = e.print();
            return ExitCode::from(code as u8);
        }
    };
    match run(&cli) {
        Ok(inv) => {
            let mut stdout = std::io::stdout().lock();
            if stdout.write_all(inv.stdout.as_bytes()).and_then(|_| stdout.flush()).is_err() {
                return ExitCode::from(1);
            }
            if !cli.common.quiet {
                eprintln!("{}", inv.summary);
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("fairflip: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
