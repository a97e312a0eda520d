use std::io;
use std::process::ExitCode;

use clap::Parser;
use dsw_cli::app::{run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout();
    match run(cli, &mut stdout.lock()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("dsw: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
