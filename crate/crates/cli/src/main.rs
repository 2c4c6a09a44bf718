use std::process::ExitCode;

use clap::Parser;

use ramstat_cli::args::Cli;
use ramstat_cli::error::{EXIT_OK, EXIT_USAGE};

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return ExitCode::from(code as u8);
        }
    };
    let (config, threads) = cli.into_config();
    if let Some(t) = threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build_global()
        {
            eprintln!("ramstat: {e}");
            return ExitCode::from(EXIT_USAGE as u8);
        }
    }
    match ramstat_cli::run(&config) {
        Ok(outcome) => {
            print!("{}", outcome.stdout);
            ExitCode::from(outcome.exit as u8)
        }
        Err(e) => {
            eprintln!("ramstat: {e}");
            ExitCode::from(e.code as u8)
        }
    }
}
