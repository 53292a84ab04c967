use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::Parser;
use fglforge::cli::{exit_code, parse_jobspec_with, run, EXIT_OK, EXIT_VALIDATION};

/// Truncated equivariant formal group laws: tables, diagrams, verification.
#[derive(Parser)]
#[command(name = "fglforge", version)]
struct Args {
    /// nseries | fgl-table | build-diagram | verify | descend | pullback-check
    command: String,
    /// Job file of `key = value` lines.
    jobfile: Option<PathBuf>,
    /// Override a job-file entry.
    #[arg(long = "set", value_name = "KEY=VALUE")]
    set: Vec<String>,
    /// Write the JSON artifact (or stdout text) here.
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
}

fn main() -> ExitCode {
    let args = Args::parse();
    let text = match &args.jobfile {
        Some(path) => match std::fs::read_to_string(path) {
            Ok(t) => t,
            Err(e) => {
                eprintln!("error: cannot read {}: {e}", path.display());
                return ExitCode::from(EXIT_VALIDATION as u8);
            }
        },
        None => String::new(),
    };
    let mut overrides = vec![format!("command = {}", args.command)];
    overrides.extend(args.set.iter().cloned());
    if let Ok(seed) = std::env::var("FGLFORGE_SEED") {
        overrides.push(format!("seed = {seed}"));
    }
    let base = args.jobfile.as_deref().and_then(Path::parent).unwrap_or(Path::new("."));
    let outcome = parse_jobspec_with(&text, &overrides).and_then(|job| run(&job, base));
    match outcome {
        Ok(o) => {
            print!("{}", o.stdout);
            if let Some(path) = &args.out {
                let body = o.artifact.as_deref().unwrap_or(&o.stdout);
                if let Err(e) = std::fs::write(path, body) {
                    eprintln!("error: cannot write {}: {e}", path.display());
                    return ExitCode::from(EXIT_VALIDATION as u8);
                }
            }
            if o.code != EXIT_OK {
                eprintln!("fglforge: exit {}", o.code);
            }
            ExitCode::from(o.code as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e) as u8)
        }
    }
}
