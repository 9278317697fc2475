use std::process::ExitCode;

use clap::Parser;
use qheine_cli::args::Cli;

fn configure_threads() -> Result<(), String> {
    let Ok(v) = std::env::var("QHEINE_THREADS") else {
        return Ok(());
    };
    let n: usize = v
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| format!("QHEINE_THREADS must be a positive integer, got {v:?}"))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| e.to_string())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if let Err(e) = configure_threads() {
        eprintln!("qheine: input error: {e}");
        return ExitCode::from(2);
    }
    match qheine_cli::run(&cli) {
        Ok(out) => {
            if let Some(s) = &out.summary {
                eprintln!("{s}");
            }
            let written = match &cli.output {
                Some(path) => {
                    std::fs::write(path, &out.body).map_err(|e| format!("{}: {e}", path.display()))
                }
                None => {
                    print!("{}", out.body);
                    Ok(())
                }
            };
            if let Err(e) = written {
                eprintln!("qheine: input error: {e}");
                return ExitCode::from(2);
            }
            ExitCode::from(if out.pass { 0 } else { 1 })
        }
        Err(e) => {
            eprintln!("qheine: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
