use std::io::Write;
use std::process::ExitCode;

use clap::Parser;

use buoyancy::cli::{configure_threads, run, Cli, CliError};

fn execute(cli: &Cli) -> Result<(), CliError> {
    configure_threads()?;
    let mut out: Box<dyn Write> = match &cli.command.output().out {
        Some(path) => Box::new(std::io::BufWriter::new(std::fs::File::create(path)?)),
        None => Box::new(std::io::stdout().lock()),
    };
    run(&cli.command, &mut out, &mut std::io::stderr())?;
    out.flush()?;
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("buoyancy: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
