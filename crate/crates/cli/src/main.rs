use std::io;
use std::process::ExitCode;

use clap::Parser;
use log::LevelFilter;
use walkforge_cli::args::{Cli, Command};
use walkforge_cli::commands;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let level = match cli.verbose {
        0 => LevelFilter::Warn,
        1 => LevelFilter::Info,
        _ => LevelFilter::Debug,
    };
    env_logger::Builder::new().filter_level(level).format_timestamp_millis().init();

    let result = match &cli.command {
        Command::Convert(a) => commands::convert(a, &mut io::stdout()),
        // walks on stdout push the summary to stderr
        Command::Run(a) if a.output.as_deref().is_some_and(|p| p.as_os_str() == "-") => {
            commands::run(a, &mut io::stderr()).map(drop)
        }
        Command::Run(a) => commands::run(a, &mut io::stdout()).map(drop),
        Command::Tune(a) => commands::tune(a, &mut io::stdout()).map(drop),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
