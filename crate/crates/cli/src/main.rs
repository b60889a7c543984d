mod args;
mod commands;

use std::io::Write;
use std::process::ExitCode;
use std::time::Instant;

use clap::error::ErrorKind;
use clap::Parser;

use args::{Cli, Command, Common, Format};
use commands::{Context, Finished, Report, EXIT_USAGE};

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(EXIT_USAGE as u8),
            };
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(EXIT_USAGE as u8)
        }
    }
}

fn run(cli: Cli) -> Result<i32, String> {
    let start = Instant::now();
    let (common, name): (&Common, &str) = match &cli.command {
        Command::Norm(c) => (c, "norm"),
        Command::Sweep(c) => (c, "sweep"),
        Command::Verify { common, .. } => (common, "verify"),
        Command::Identify { common, .. } => (common, "identify"),
    };
    let ctx = Context::new(common).map_err(|e| e.to_string())?;
    let mut config = ctx.config(name);
    let finished: Finished = match &cli.command {
        Command::Norm(_) => commands::norm(&ctx),
        Command::Sweep(_) => commands::sweep(&ctx),
        Command::Verify { check, .. } => {
            config.check = Some(check.name().to_string());
            commands::verify(&ctx, *check)
        }
        Command::Identify { target, .. } => {
            config.target = Some(*target);
            commands::identify(&ctx, *target)
        }
    }
    .map_err(|e| e.to_string())?;

    let code = finished.verdict.exit_code;
    if let Some(message) = &finished.verdict.message {
        eprintln!("{}: {message}", finished.verdict.status);
    }
    let body = match common.format {
        Format::Csv => finished.csv,
        Format::Json => {
            let report = Report {
                config,
                results: finished.results,
                verdict: finished.verdict,
                runtime_ms: start.elapsed().as_millis() as u64,
            };
            serde_json::to_string_pretty(&report).map_err(|e| e.to_string())? + "\n"
        }
    };
    match &common.out {
        Some(path) => std::fs::write(path, body).map_err(|e| format!("cannot write {}: {e}", path.display()))?,
        None => std::io::stdout()
            .write_all(body.as_bytes())
            .map_err(|e| e.to_string())?,
    }
    Ok(code)
}
