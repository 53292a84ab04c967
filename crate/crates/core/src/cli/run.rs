use std::path::Path;
use std::sync::Arc;

use serde::Serialize;

use super::jobspec::{Command, Corruption, JobSpec};
use crate::algebra::{equal_mod_relations, parse_series, Series};
use crate::efgl::serialize::{DiagramJson, GeneralJson};
use crate::efgl::{
    build_coefficient_zigzag, build_general_nodes, DeltaCorruption, DiagramOptions, EfglData, EpsilonConvention,
    Position, ZigzagDiagram,
};
use crate::error::{Error, Result};
use crate::fgl::FormalGroupLaw;
use crate::verify::{check_descent, verify_all, verify_general, VerificationReport};

pub const EXIT_OK: i32 = 0;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_VALIDATION: i32 = 3;
pub const EXIT_VERIFICATION: i32 = 4;
pub const EXIT_CERTIFICATE: i32 = 5;

/// Largest `i` descended by default.
const DEFAULT_DESCENT_INDEX: u32 = 4;

/// What a command produced: the exit code, text for stdout, and an optional
/// JSON artifact for `--out`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub artifact: Option<String>,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome { code: EXIT_OK, stdout, artifact: None }
    }
}

/// Exit code for an error that aborted a command.
pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::Parse { .. } => EXIT_PARSE,
        Error::Certificate(_) => EXIT_CERTIFICATE,
        Error::Descent { .. } => EXIT_VERIFICATION,
        _ => EXIT_VALIDATION,
    }
}

fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("artifacts serialize");
    s.push('\n');
    s
}

/// Runs a validated job. Relative tuple paths resolve against `base_dir`.
pub fn run(job: &JobSpec, base_dir: &Path) -> Result<Outcome> {
    job.validate()?;
    match job.command {
        Command::NSeries => nseries(job),
        Command::FglTable => fgl_table(job),
        Command::BuildDiagram => build_diagram(job),
        Command::Verify => verify(job),
        Command::Descend => descend(job),
        Command::PullbackCheck => pullback_check(job, base_dir),
    }
}

fn nseries(job: &JobSpec) -> Result<Outcome> {
    let fgl = FormalGroupLaw::new(job.fgl, job.degree)?;
    let ns: Vec<i64> = match job.n {
        Some(n) => vec![n],
        None => (1..=job.group.as_ref().map_or(5, |g| g.order() as i64)).collect(),
    };
    let mut out = format!("# [n]_F x, {} formal group law, degree {}\n", job.fgl, job.degree);
    for n in ns {
        out.push_str(&format!("[{n}]_F x = {}\n", fgl.n_series_x(n)?));
    }
    Ok(Outcome::ok(out))
}

fn fgl_table(job: &JobSpec) -> Result<Outcome> {
    let fgl = FormalGroupLaw::new(job.fgl, job.degree)?;
    let mut out = format!("# {} formal group law, a_{{i,j}} of x^i y^j, degree {}\n", job.fgl, job.degree);
    for total in 2..=job.degree as i32 {
        for i in 1..total {
            out.push_str(&format!("a_{{{i},{}}} = {}\n", total - i, fgl.coefficient(i, total - i)?));
        }
    }
    Ok(Outcome::ok(out))
}

fn options(job: &JobSpec) -> DiagramOptions {
    let mut o = DiagramOptions::default();
    match job.corrupt {
        Corruption::None => {}
        Corruption::Delta => o.delta = DeltaCorruption::DropFactor,
        Corruption::Epsilon => o.epsilon = EpsilonConvention::Minus,
        Corruption::Phi => {}
    }
    o
}

fn cyclic_data(job: &JobSpec) -> Result<EfglData> {
    let (p, n) = job.cyclic_p().ok_or_else(|| Error::InvalidParameter("expected Z/p^n".into()))?;
    let mut zz = build_coefficient_zigzag(p, n, job.fgl, job.degree, job.laurent)?;
    if job.corrupt == Corruption::Phi {
        zz = zz.with_unscaled_phi0()?;
    }
    EfglData::from_zigzag(Arc::new(zz), options(job), 3)
}

fn general(job: &JobSpec) -> Result<crate::efgl::GeneralNodes> {
    let group = job.group.as_ref().ok_or_else(|| Error::InvalidParameter("missing group".into()))?;
    build_general_nodes(
        group,
        &job.chain,
        job.level,
        job.fgl,
        job.degree,
        job.laurent,
        job.factor_bound as usize,
        &["x"],
    )
}

fn build_diagram(job: &JobSpec) -> Result<Outcome> {
    let text = if job.cyclic_p().is_some() {
        let data = cyclic_data(job)?;
        if !data.zigzag().certificates_pass() {
            return Err(Error::Certificate("a zigzag map is not well defined".into()));
        }
        json(&DiagramJson::of(&data)?)
    } else {
        json(&GeneralJson::of(&general(job)?))
    };
    Ok(Outcome { code: EXIT_OK, stdout: text.clone(), artifact: Some(text) })
}

fn report_outcome(report: &VerificationReport) -> Outcome {
    let code = if report.find("certificate").any(|c| !c.passed()) {
        EXIT_CERTIFICATE
    } else if report.passed() {
        EXIT_OK
    } else {
        EXIT_VERIFICATION
    };
    Outcome { code, stdout: report.render_text(), artifact: Some(json(report)) }
}

fn verify(job: &JobSpec) -> Result<Outcome> {
    let report = if job.cyclic_p().is_some() {
        verify_all(&cyclic_data(job)?, job.seed)?
    } else {
        verify_general(&general(job)?, job.degree, job.laurent, job.seed)?
    };
    Ok(report_outcome(&report))
}

fn descend(job: &JobSpec) -> Result<Outcome> {
    let data = cyclic_data(job)?;
    let zz = data.zigzag();
    let Some(terms) = &job.terms else {
        let mut report = VerificationReport::for_efgl(&data, job.seed);
        report.extend(check_descent(&data, DEFAULT_DESCENT_INDEX)?);
        return Ok(report_outcome(&report));
    };
    let mut out = String::new();
    let mut code = EXIT_OK;
    for &(j, i) in terms {
        out.push_str(&format!("u{j} b^({i}):\n"));
        match zz.descend_to_r0(&zz.top_coordinate(j, i)?) {
            Ok(d) => {
                for s in &d.stages {
                    out.push_str(&format!("  {} -> {}\n", s.stage, s.value));
                }
            }
            Err(e @ Error::Descent { .. }) => {
                out.push_str(&format!("  FAIL {e}\n"));
                code = EXIT_VERIFICATION;
            }
            Err(e) => return Err(e),
        }
    }
    Ok(Outcome { code, stdout: out, artifact: None })
}

fn read_tuple(zz: &ZigzagDiagram, spec: &str, base_dir: &Path) -> Result<Vec<Series>> {
    if let Some(j) = spec.strip_prefix("euler:") {
        let j = j.trim().parse().map_err(|_| Error::InvalidParameter(format!("bad tuple `{spec}`")))?;
        return zz.euler_tuple(j);
    }
    let path = base_dir.join(spec);
    let text = std::fs::read_to_string(&path)
        .map_err(|e| Error::InvalidParameter(format!("cannot read {}: {e}", path.display())))?;
    let n = zz.params().n;
    let mut slots: Vec<Option<Series>> = vec![None; n as usize + 1];
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let err = |column: usize, message: String| Error::Parse { line: idx + 1, column, message };
        let (key, value) = line.split_once('=').ok_or_else(|| err(1, "expected `Rk = series`".into()))?;
        let k: u32 = key
            .trim()
            .strip_prefix('R')
            .and_then(|k| k.parse().ok())
            .filter(|&k| k <= n)
            .ok_or_else(|| err(1, format!("expected R0..R{n}, found `{}`", key.trim())))?;
        let series = parse_series(value.trim(), zz.ring(Position::R(k))).map_err(|e| match e {
            Error::Parse { column, message, .. } => err(key.len() + 2 + column, message),
            other => other,
        })?;
        slots[k as usize] = Some(series);
    }
    slots
        .into_iter()
        .enumerate()
        .map(|(k, s)| s.ok_or_else(|| Error::InvalidParameter(format!("tuple has no entry for R{k}"))))
        .collect()
}

fn pullback_check(job: &JobSpec, base_dir: &Path) -> Result<Outcome> {
    let (p, n) = job.cyclic_p().ok_or_else(|| Error::InvalidParameter("expected Z/p^n".into()))?;
    let zz = build_coefficient_zigzag(p, n, job.fgl, job.degree, job.laurent)?;
    let tuple = read_tuple(&zz, job.tuple.as_deref().unwrap_or_default(), base_dir)?;
    let mut out = String::new();
    let mut compatible = true;
    for k in 0..n {
        let left = zz.psi(k).map.apply(&tuple[k as usize])?;
        let right = zz.phi(k).map.apply(&tuple[k as usize + 1])?;
        let ok = equal_mod_relations(&left, &right)?;
        compatible &= ok;
        out.push_str(&format!("S{k}: psi = {left}, phi = {right}: {}\n", if ok { "agree" } else { "DIFFER" }));
    }
    out.push_str(if compatible { "compatible\n" } else { "incompatible\n" });
    Ok(Outcome { code: if compatible { EXIT_OK } else { EXIT_VERIFICATION }, stdout: out, artifact: None })
}
