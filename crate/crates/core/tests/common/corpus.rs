//! The job-file corpus under `tests/jobs` and its golden outputs.
//! Set `FGLFORGE_BLESS=1` to rewrite the golden files.

use std::path::{Path, PathBuf};
use std::process::Command;

pub fn manifest_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
}

fn job_files(dir: &Path) -> Vec<PathBuf> {
    let mut out: Vec<PathBuf> = std::fs::read_dir(dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|e| e == "job"))
        .collect();
    out.sort();
    out
}

/// The valid jobs, one per golden file.
pub fn corpus() -> Vec<PathBuf> {
    job_files(&manifest_dir().join("tests/jobs"))
}

/// Jobs that must be rejected.
pub fn error_fixtures() -> Vec<PathBuf> {
    job_files(&manifest_dir().join("tests/jobs/errors"))
}

fn command_of(text: &str) -> String {
    text.lines()
        .filter_map(|l| l.split_once('='))
        .find(|(k, _)| k.trim() == "command")
        .map(|(_, v)| v.trim().to_string())
        .unwrap_or_else(|| "verify".into())
}

pub struct Run {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Run {
    pub fn golden(&self) -> String {
        format!("exit: {}\n--- stdout\n{}--- stderr\n{}", self.code, self.stdout, self.stderr)
    }
}

/// Runs `fglforge <command> <job>` from the crate root with a clean seed.
pub fn run_binary(job: &Path) -> Run {
    let root = manifest_dir();
    let rel = job.strip_prefix(&root).unwrap_or(job);
    let text = std::fs::read_to_string(job).unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_fglforge"))
        .arg(command_of(&text))
        .arg(rel)
        .current_dir(&root)
        .env_remove("FGLFORGE_SEED")
        .output()
        .unwrap();
    Run {
        code: out.status.code().unwrap_or(-1),
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
    }
}

pub fn golden_path(job: &Path) -> PathBuf {
    let root = manifest_dir();
    let rel = job.strip_prefix(root.join("tests/jobs")).unwrap();
    root.join("tests/golden").join(rel).with_extension("out")
}

/// Compares a run against its golden file, or rewrites it when blessing.
pub fn check_golden(job: &Path, run: &Run) -> Result<(), String> {
    let path = golden_path(job);
    if std::env::var_os("FGLFORGE_BLESS").is_some() {
        std::fs::create_dir_all(path.parent().unwrap()).unwrap();
        std::fs::write(&path, run.golden()).unwrap();
        return Ok(());
    }
    let want = std::fs::read_to_string(&path).map_err(|e| format!("{}: {e}", path.display()))?;
    if want == run.golden() {
        Ok(())
    } else {
        Err(format!("{} differs from its golden output", job.display()))
    }
}
