use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use gleason_lab_cli::config::SEED_ENV;
use gleason_lab_cli::{demo_counterexamples, emit_report, run_suite, Cli};

fn write_out(path: Option<&str>, bytes: &[u8]) -> std::io::Result<()> {
    match path {
        Some(p) => std::fs::write(p, bytes),
        None => std::io::stdout().lock().write_all(bytes),
    }
}

fn run(cli: &Cli) -> Result<u8, Box<dyn std::error::Error>> {
    let file = cli
        .config
        .as_ref()
        .map(std::fs::read_to_string)
        .transpose()?;
    let env_seed = std::env::var(SEED_ENV).ok();
    let cfg = cli.resolve(env_seed.as_deref(), file.as_deref())?;

    if cli.list {
        for p in cfg.selected()? {
            println!(
                "{:<38} tol={:.1e}  {}",
                p.name,
                cfg.tolerance_of(p),
                p.statement
            );
        }
        return Ok(0);
    }
    if cli.demo {
        write_out(
            cfg.output_path.as_deref(),
            demo_counterexamples()?.render().as_bytes(),
        )?;
        return Ok(0);
    }
    let report = run_suite(&cfg);
    write_out(
        cfg.output_path.as_deref(),
        &emit_report(&report, cfg.format),
    )?;
    let s = report.summary;
    eprintln!(
        "{} records: {} passed, {} failed, {} skipped",
        s.total, s.passed, s.failed, s.skipped
    );
    Ok(report.exit_code() as u8)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("gleason-lab: {e}");
            ExitCode::from(2)
        }
    }
}
