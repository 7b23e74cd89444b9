use std::process::ExitCode;
use std::time::Instant;

use clap::Parser;

use drg_lines_cli::{commands, Cli, CliError, Report, Status};

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() {
                Status::Argument as u8
            } else {
                0
            });
        }
    };
    if let Some(t) = cli.threads {
        if t == 0 {
            eprintln!("error: --threads must be positive");
            return ExitCode::from(Status::Argument as u8);
        }
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build_global()
        {
            eprintln!("error: {e}");
            return ExitCode::from(Status::Argument as u8);
        }
    }
    let start = Instant::now();
    let outcome = commands::run(&cli);
    if let Err(e) = &outcome {
        eprintln!("error: {e}");
    }
    let report = Report::new(&cli, start.elapsed().as_secs_f64(), outcome);
    let text = serde_json::to_string_pretty(&report).expect("report serializes");
    println!("{text}");
    if let Some(path) = &cli.report {
        if let Err(e) = std::fs::write(path, format!("{text}\n")) {
            let e = CliError::input(format!("{}: {e}", path.display()));
            eprintln!("error: {e}");
            return ExitCode::from(e.status as u8);
        }
    }
    ExitCode::from(report.status as u8)
}
