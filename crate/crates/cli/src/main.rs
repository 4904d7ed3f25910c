use std::process::ExitCode;

use clap::Parser;
use superschur_cli::{run, Cli, CONFIG_ERROR};

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { CONFIG_ERROR as u8 } else { 0 });
        }
    };
    match run(cli) {
        Ok(status) => ExitCode::from(status.code() as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(CONFIG_ERROR as u8)
        }
    }
}
