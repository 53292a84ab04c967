//! Job files, command dispatch and text/JSON emitters behind `fglforge`.

mod jobspec;
mod run;

pub use jobspec::{
    parse_jobspec, parse_jobspec_with, Command, Corruption, JobSpec, DEFAULT_DEGREE, DEFAULT_FACTOR_BOUND,
    DEFAULT_LAURENT, KEYS,
};
pub use run::{exit_code, run, Outcome, EXIT_CERTIFICATE, EXIT_OK, EXIT_PARSE, EXIT_VALIDATION, EXIT_VERIFICATION};
