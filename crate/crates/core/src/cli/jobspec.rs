//! The job-file DSL: line-oriented `key = value`, `#` comments.
//!
//! ```text
//! command = verify
//! group = Z/2^2
//! fgl = universal
//! degree = 6
//! ```

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::fgl::FglKind;
use crate::groups::{is_prime, FiniteAbelianGroup, SubgroupChain};
use crate::verify::DEFAULT_SEED;

pub const DEFAULT_DEGREE: u32 = 8;
pub const DEFAULT_LAURENT: u32 = 4;
pub const DEFAULT_FACTOR_BOUND: u32 = 4;

/// Keys in canonical print order.
pub const KEYS: &[&str] = &[
    "command",
    "group",
    "chain",
    "level",
    "fgl",
    "degree",
    "laurent",
    "factor_bound",
    "seed",
    "n",
    "terms",
    "tuple",
    "corrupt",
];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Command {
    NSeries,
    FglTable,
    BuildDiagram,
    Verify,
    Descend,
    PullbackCheck,
}

impl Command {
    pub const ALL: [Command; 6] = [
        Command::NSeries,
        Command::FglTable,
        Command::BuildDiagram,
        Command::Verify,
        Command::Descend,
        Command::PullbackCheck,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Command::NSeries => "nseries",
            Command::FglTable => "fgl-table",
            Command::BuildDiagram => "build-diagram",
            Command::Verify => "verify",
            Command::Descend => "descend",
            Command::PullbackCheck => "pullback-check",
        }
    }

    /// Commands that only make sense for `Z/p^n`.
    pub fn needs_cyclic_p_group(self) -> bool {
        matches!(self, Command::Descend | Command::PullbackCheck)
    }

    /// Commands that ignore the group.
    pub fn group_free(self) -> bool {
        matches!(self, Command::NSeries | Command::FglTable)
    }
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Command {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Command::ALL.into_iter().find(|c| c.as_str() == s).ok_or_else(|| format!("unknown command `{s}`"))
    }
}

/// Negative controls for `verify`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum Corruption {
    #[default]
    None,
    Delta,
    Epsilon,
    /// `φ_0(w_1) = w_0`: a zigzag map that is not well defined.
    Phi,
}

impl Corruption {
    pub fn as_str(self) -> &'static str {
        match self {
            Corruption::None => "none",
            Corruption::Delta => "delta",
            Corruption::Epsilon => "epsilon",
            Corruption::Phi => "phi",
        }
    }
}

impl FromStr for Corruption {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "none" => Ok(Corruption::None),
            "delta" => Ok(Corruption::Delta),
            "epsilon" => Ok(Corruption::Epsilon),
            "phi" => Ok(Corruption::Phi),
            _ => Err(format!("unknown corruption `{s}` (none, delta, epsilon, phi)")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JobSpec {
    pub command: Command,
    pub group: Option<FiniteAbelianGroup>,
    pub chain: SubgroupChain,
    /// Index `j` of the general-node pair `Q^j → T_j`.
    pub level: usize,
    pub fgl: FglKind,
    pub degree: u32,
    pub laurent: u32,
    pub factor_bound: u32,
    pub seed: u64,
    /// Multiplier for `nseries`; all of `1..=|G|` when absent.
    pub n: Option<i64>,
    /// `(j, i)` pairs for `descend`.
    pub terms: Option<Vec<(u64, u32)>>,
    /// Tuple file for `pullback-check`, or `euler:j`.
    pub tuple: Option<String>,
    pub corrupt: Corruption,
}

impl JobSpec {
    pub fn new(command: Command) -> Self {
        JobSpec {
            command,
            group: None,
            chain: SubgroupChain::default(),
            level: 0,
            fgl: FglKind::Universal,
            degree: DEFAULT_DEGREE,
            laurent: DEFAULT_LAURENT,
            factor_bound: DEFAULT_FACTOR_BOUND,
            seed: DEFAULT_SEED,
            n: None,
            terms: None,
            tuple: None,
            corrupt: Corruption::None,
        }
    }

    /// `(p, n)` when the group is `Z/p^n` with `n ≥ 1` and no chain is given.
    pub fn cyclic_p(&self) -> Option<(u64, u32)> {
        if !self.chain.is_empty() {
            return None;
        }
        self.group.as_ref()?.as_cyclic_p_group().filter(|&(_, n)| n >= 1)
    }

    /// Canonical text: every key with a value, defaults explicit.
    pub fn print(&self) -> String {
        let mut out = String::new();
        let mut line = |k: &str, v: String| out.push_str(&format!("{k} = {v}\n"));
        line("command", self.command.to_string());
        if let Some(g) = &self.group {
            line("group", g.to_string());
        }
        if !self.chain.is_empty() {
            line("chain", self.chain.render());
        }
        line("level", self.level.to_string());
        line("fgl", self.fgl.to_string());
        line("degree", self.degree.to_string());
        line("laurent", self.laurent.to_string());
        line("factor_bound", self.factor_bound.to_string());
        line("seed", self.seed.to_string());
        if let Some(n) = self.n {
            line("n", n.to_string());
        }
        if let Some(t) = &self.terms {
            line("terms", t.iter().map(|(j, i)| format!("{j}:{i}")).collect::<Vec<_>>().join(", "));
        }
        if let Some(t) = &self.tuple {
            line("tuple", t.clone());
        }
        line("corrupt", self.corrupt.as_str().to_string());
        out
    }

    /// Cross-field checks that a single line cannot catch.
    pub fn validate(&self) -> Result<()> {
        let Some(group) = &self.group else {
            if self.command.group_free() {
                return Ok(());
            }
            return Err(Error::InvalidParameter(format!("`{}` needs a group", self.command)));
        };
        if self.level > self.chain.len() {
            return Err(Error::InvalidParameter(format!(
                "level {} exceeds the chain length {}",
                self.level,
                self.chain.len()
            )));
        }
        if self.command.needs_cyclic_p_group() && self.cyclic_p().is_none() {
            return Err(Error::InvalidParameter(format!(
                "`{}` needs a cyclic p-group Z/p^n without a chain, got {group}",
                self.command
            )));
        }
        if self.corrupt != Corruption::None {
            let applies = match self.corrupt {
                Corruption::Phi => {
                    matches!(self.command, Command::Verify | Command::BuildDiagram)
                        && self.cyclic_p().is_some_and(|(_, n)| n >= 2)
                }
                _ => self.command == Command::Verify && self.cyclic_p().is_some(),
            };
            if !applies {
                return Err(Error::InvalidParameter(format!(
                    "corrupt = {} does not apply to `{}` on {group}",
                    self.corrupt.as_str(),
                    self.command
                )));
            }
        }
        if self.command == Command::PullbackCheck && self.tuple.is_none() {
            return Err(Error::InvalidParameter("`pullback-check` needs `tuple`".into()));
        }
        if let (Some(terms), Some((p, n))) = (&self.terms, self.cyclic_p()) {
            let order = p.pow(n);
            if let Some((j, i)) = terms.iter().find(|(j, i)| *j == 0 || *j >= order || *i > self.degree) {
                return Err(Error::IndexOutOfRange(format!("term {j}:{i} needs 0 < j < {order}, i <= degree")));
            }
        }
        Ok(())
    }
}

impl fmt::Display for JobSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.print())
    }
}

struct Entry {
    key: String,
    value: String,
    line: usize,
    column: usize,
}

fn perr(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse { line, column, message: message.into() }
}

fn split_entries(text: &str, first_line: usize) -> Result<Vec<Entry>> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = first_line + i;
        let body = raw.split('#').next().unwrap_or("");
        if body.trim().is_empty() {
            continue;
        }
        let Some(eq) = body.find('=') else {
            let col = body.len() - body.trim_start().len() + 1;
            return Err(perr(line, col, "expected `key = value`"));
        };
        let key = body[..eq].trim();
        let key_col = body.len() - body.trim_start().len() + 1;
        if key.is_empty() {
            return Err(perr(line, key_col, "missing key"));
        }
        let rest = &body[eq + 1..];
        let value = rest.trim();
        let value_col = eq + 2 + (rest.len() - rest.trim_start().len());
        if !KEYS.contains(&key) {
            return Err(perr(line, key_col, format!("unknown key `{key}`")));
        }
        out.push(Entry { key: key.to_string(), value: value.to_string(), line, column: value_col });
    }
    Ok(out)
}

fn parse_number<T: FromStr>(e: &Entry) -> Result<T> {
    e.value.parse().map_err(|_| perr(e.line, e.column, format!("`{}` expects an integer, found `{}`", e.key, e.value)))
}

/// Rejects `Z/q^n` literals whose base is not prime.
fn check_prime_powers(e: &Entry) -> Result<()> {
    for factor in e.value.split(['x', 'X', '×']) {
        if let Some((base, _)) = factor.trim().trim_start_matches("Z/").split_once('^') {
            if let Ok(q) = base.trim().parse::<u64>() {
                if !is_prime(q) {
                    return Err(Error::NotPrime(q));
                }
            }
        }
    }
    Ok(())
}

fn parse_terms(e: &Entry) -> Result<Vec<(u64, u32)>> {
    e.value
        .split(',')
        .map(|t| {
            let t = t.trim();
            let bad = || perr(e.line, e.column, format!("expected `j:i`, found `{t}`"));
            let (j, i) = t.split_once(':').ok_or_else(bad)?;
            Ok((j.trim().parse().map_err(|_| bad())?, i.trim().parse().map_err(|_| bad())?))
        })
        .collect()
}

/// Parses a job file; `overrides` are `key=value` strings applied on top.
/// A positional `command` (from the command line) may be passed as an override.
pub fn parse_jobspec_with(text: &str, overrides: &[String]) -> Result<JobSpec> {
    let mut entries = split_entries(text, 1)?;
    let base = text.lines().count() + 1;
    for (i, o) in overrides.iter().enumerate() {
        entries.extend(split_entries(o, base + i)?);
    }
    // later entries win only when they come from overrides
    let mut seen: Vec<(String, usize)> = Vec::new();
    let mut chosen: Vec<Entry> = Vec::new();
    for e in entries {
        if let Some(pos) = seen.iter().position(|(k, _)| *k == e.key) {
            if e.line < base {
                return Err(perr(e.line, 1, format!("duplicate key `{}` (first on line {})", e.key, seen[pos].1)));
            }
            chosen[pos] = e;
        } else {
            seen.push((e.key.clone(), e.line));
            chosen.push(e);
        }
    }

    let mut job = JobSpec::new(Command::Verify);
    let mut chain_entry = None;
    for e in &chosen {
        let at = |m: String| perr(e.line, e.column, m);
        match e.key.as_str() {
            "command" => {}
            "group" => {
                let g: FiniteAbelianGroup = e.value.parse().map_err(|err| match err {
                    Error::Parse { message, .. } => at(message),
                    other => other,
                })?;
                check_prime_powers(e)?;
                job.group = Some(g);
            }
            "chain" => chain_entry = Some(e),
            "level" => job.level = parse_number(e)?,
            "fgl" => job.fgl = e.value.parse().map_err(|err: Error| at(err.to_string()))?,
            "degree" => {
                job.degree = parse_number(e)?;
                if job.degree < 2 {
                    return Err(Error::InvalidParameter(format!("degree must be at least 2, got {}", job.degree)));
                }
            }
            "laurent" => job.laurent = parse_number(e)?,
            "factor_bound" => {
                job.factor_bound = parse_number(e)?;
                if job.factor_bound == 0 {
                    return Err(Error::InvalidParameter("factor_bound must be positive".into()));
                }
            }
            "seed" => job.seed = parse_number(e)?,
            "n" => job.n = Some(parse_number(e)?),
            "terms" => job.terms = Some(parse_terms(e)?),
            "tuple" => job.tuple = Some(e.value.clone()),
            "corrupt" => job.corrupt = e.value.parse().map_err(at)?,
            _ => unreachable!("keys are checked while splitting"),
        }
    }
    let command_entry = chosen.iter().find(|e| e.key == "command").ok_or_else(|| perr(base, 1, "missing `command`"))?;
    job.command = command_entry.value.parse().map_err(|m: String| perr(command_entry.line, command_entry.column, m))?;
    if let Some(e) = chain_entry {
        let group = job.group.as_ref().ok_or_else(|| perr(e.line, e.column, "`chain` needs a `group`"))?;
        job.chain = group.parse_chain(&e.value).map_err(|err| match err {
            Error::Parse { message, .. } => perr(e.line, e.column, message),
            other => other,
        })?;
    }
    job.validate()?;
    Ok(job)
}

pub fn parse_jobspec(text: &str) -> Result<JobSpec> {
    parse_jobspec_with(text, &[])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_are_filled() {
        let job = parse_jobspec("group = Z/4\nfgl = additive\ncommand = verify").unwrap();
        assert_eq!(job.command, Command::Verify);
        assert_eq!(job.degree, 8);
        assert_eq!(job.laurent, 4);
        assert_eq!(job.factor_bound, 4);
        assert_eq!(job.cyclic_p(), Some((2, 2)));
    }

    #[test]
    fn round_trip() {
        let job = parse_jobspec("command = descend\ngroup = Z/2^2\nterms = 1:0, 3:2\ndegree = 6").unwrap();
        assert_eq!(parse_jobspec(&job.print()).unwrap(), job);
    }

    #[test]
    fn errors_carry_positions() {
        let err = parse_jobspec("command = verify\n  colour = blue").unwrap_err();
        assert_eq!(err, perr(2, 3, "unknown key `colour`"));
        let err = parse_jobspec("command = verify\ngroup = Q/4").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, column: 9, .. }), "{err:?}");
        assert!(matches!(parse_jobspec("degree = 0"), Err(Error::InvalidParameter(_))));
        assert!(matches!(parse_jobspec("command = descend\ngroup = Z/6^2"), Err(Error::NotPrime(6))));
    }

    #[test]
    fn overrides_replace_file_entries() {
        let job = parse_jobspec_with("command = verify\ngroup = Z/2\ndegree = 4", &["degree=6".into()]).unwrap();
        assert_eq!(job.degree, 6);
    }
}
