use std::process::ExitCode;

use clap::Parser;
use extlab_cli::{run, Cli, Format};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let report = run(&cli);
    let json = serde_json::to_string_pretty(&report).expect("report serializes");
    match cli.opts.format {
        Format::Json => println!("{json}"),
        Format::Text => print!("{}", report.text()),
    }
    if let Some(path) = &cli.opts.out {
        if let Err(e) = std::fs::write(path, json + "\n") {
            eprintln!("cannot write {}: {e}", path.display());
            return ExitCode::from(2);
        }
    }
    if report.passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
