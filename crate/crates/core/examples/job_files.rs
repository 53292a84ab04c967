//! Driving the engine through job files, as the `fglforge` binary does.

use std::path::Path;

use fglforge::cli::{parse_jobspec, run};

fn main() -> fglforge::Result<()> {
    let text =
        "# additive law on Z/4\ncommand = pullback-check\ngroup = Z/2^2\nfgl = additive\ndegree = 4\ntuple = euler:3\n";
    let job = parse_jobspec(text)?;
    print!("canonical form:\n{job}");
    let outcome = run(&job, Path::new("."))?;
    print!("exit {}:\n{}", outcome.code, outcome.stdout);

    match parse_jobspec("command = verify\ngroup = Z/4\n  degre = 6") {
        Err(e) => println!("{e}"),
        Ok(_) => unreachable!(),
    }
    Ok(())
}
