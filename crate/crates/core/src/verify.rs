//! Machine checks of the equivariant formal group law axioms at truncation.
//!
//! Every check compares two series modulo the relations of the ring they
//! live in. Failures carry both sides and their difference in canonical text
//! form, so a report can be re-evaluated independently.

use std::sync::Arc;

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::{equal_mod_relations, ideal_remainder, Monomial, Ring, RingMap, Series, Terms};
use crate::efgl::{Certificate, DiagramOptions, EfglData, EpsilonConvention, GeneralNodes, Position};
use crate::error::Result;
use crate::fgl::FormalGroupLaw;
use crate::groups::FiniteAbelianGroup;

/// Seed used by randomized checks unless another one is supplied.
pub const DEFAULT_SEED: u64 = 1729;

/// Random nonzerodivisor trials per Euler class.
pub const REGULARITY_TRIALS: usize = 100;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub ring: String,
    pub lhs: String,
    pub rhs: String,
    pub difference: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub location: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

impl Check {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Parameters {
    pub group: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<u32>,
    pub degree: u32,
    pub laurent: u32,
    pub fgl: String,
    pub seed: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub options: Option<DiagramOptions>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub parameters: Parameters,
    pub checks: Vec<Check>,
    pub notes: Vec<String>,
}

impl VerificationReport {
    pub fn new(parameters: Parameters) -> Self {
        VerificationReport { parameters, checks: Vec::new(), notes: Vec::new() }
    }

    pub fn for_efgl(efgl: &EfglData, seed: u64) -> Self {
        let zz = efgl.zigzag();
        let params = zz.params();
        Self::new(Parameters {
            group: format!("Z/{}", params.order()),
            p: Some(params.p),
            n: Some(params.n),
            degree: params.degree,
            laurent: params.laurent,
            fgl: zz.fgl().kind().to_string(),
            seed,
            options: Some(efgl.options()),
        })
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed())
    }

    pub fn find(&self, name: &str) -> impl Iterator<Item = &Check> {
        let name = name.to_string();
        self.checks.iter().filter(move |c| c.name == name)
    }

    pub fn extend(&mut self, other: VerificationReport) {
        self.checks.extend(other.checks);
        self.notes.extend(other.notes);
    }

    fn push(&mut self, name: &str, location: impl Into<String>, witness: Option<Witness>) {
        self.checks.push(Check {
            name: name.to_string(),
            location: location.into(),
            status: if witness.is_none() { Status::Pass } else { Status::Fail },
            witness,
        });
    }

    /// One-line summary per check, for terminals.
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let tag = if c.passed() { "PASS" } else { "FAIL" };
            out.push_str(&format!("{tag} {} @ {}\n", c.name, c.location));
            if let Some(w) = &c.witness {
                out.push_str(&format!("     in {}: {} != {}\n", w.ring, w.lhs, w.rhs));
            }
        }
        for n in &self.notes {
            out.push_str(&format!("note: {n}\n"));
        }
        let failed = self.failures().count();
        out.push_str(&format!("{} checks, {} failed\n", self.checks.len(), failed));
        out
    }
}

/// `None` when `lhs ≡ rhs`, otherwise a witness.
pub fn compare(lhs: &Series, rhs: &Series) -> Result<Option<Witness>> {
    let rhs = if Arc::ptr_eq(lhs.ring(), rhs.ring()) { rhs.clone() } else { rhs.embed(lhs.ring())? };
    if equal_mod_relations(lhs, &rhs)? {
        return Ok(None);
    }
    Ok(Some(Witness {
        ring: lhs.ring().name().to_string(),
        lhs: lhs.to_string(),
        rhs: rhs.to_string(),
        difference: lhs.sub(&rhs)?.to_string(),
    }))
}

/// Runs `f` over a list of cases and records one check, failing at the
/// first counterexample.
fn aggregate<I, T, F>(report: &mut VerificationReport, name: &str, location: &str, cases: I, mut f: F) -> Result<()>
where
    I: IntoIterator<Item = T>,
    T: std::fmt::Debug,
    F: FnMut(&T) -> Result<Option<Witness>>,
{
    for case in cases {
        if let Some(w) = f(&case)? {
            report.push(name, format!("{location} {case:?}"), Some(w));
            return Ok(());
        }
    }
    report.push(name, location, None);
    Ok(())
}

fn grid(modulus: u64, arity: usize) -> Vec<Vec<u64>> {
    let mut out = vec![Vec::new()];
    for _ in 0..arity {
        out = out
            .into_iter()
            .flat_map(|v| {
                (0..modulus).map(move |a| {
                    let mut w = v.clone();
                    w.push(a);
                    w
                })
            })
            .collect();
    }
    out
}

/// Cocommutativity, coassociativity and counit at every node.
pub fn check_comultiplication(efgl: &EfglData) -> Result<VerificationReport> {
    let mut report = VerificationReport::default();
    for pos in efgl.zigzag().params().positions() {
        let n = efgl.zigzag().params().modulus(pos);
        let one = efgl.node(pos, 1)?;
        let delta = efgl.delta(pos);
        let loc = pos.to_string();
        aggregate(&mut report, "cocommutativity", &loc, grid(n, 2), |ab| {
            let (a, b) = (ab[0], ab[1]);
            let x = one.variable(&[(a + b) % n], 0)?;
            let lhs = efgl.apply(&delta, ab, &x)?;
            let rhs = efgl.apply(&efgl.swap(pos), ab, &efgl.apply(&delta, &[b, a], &x)?)?;
            compare(&lhs, &rhs)
        })?;
        aggregate(&mut report, "coassociativity", &loc, grid(n, 3), |abt| {
            let (a, b, t) = (abt[0], abt[1], abt[2]);
            let x = one.variable(&[(a + b + t) % n], 0)?;
            let left = efgl.apply(&delta, &[(a + b) % n, t], &x)?;
            let lhs = efgl.apply(&efgl.delta_left(pos), abt, &left)?;
            let right = efgl.apply(&delta, &[a, (b + t) % n], &x)?;
            let rhs = efgl.apply(&efgl.delta_right(pos), abt, &right)?;
            compare(&lhs, &rhs)
        })?;
        aggregate(&mut report, "counit", &loc, 0..n, |&b| {
            let x = one.variable(&[b], 0)?;
            let d = efgl.apply(&delta, &[0, b], &x)?;
            let back = efgl.apply(&efgl.epsilon(pos, 2, 0), &[b], &d)?;
            compare(&back, &x)
        })?;
    }
    Ok(report)
}

const BOREL: Position = Position::R(0);

/// `(ε_r ⊗ ε_s) Δ(x_j) = ε_{r+s}(x_j)` at the Borel node for all `j, r, s`.
pub fn check_epsilon_square(efgl: &EfglData) -> Result<VerificationReport> {
    let mut report = VerificationReport::default();
    let order = efgl.zigzag().params().order() as i64;
    for j in 0..order {
        let xj = efgl.x_class(BOREL, 0, j)?;
        let d = efgl.apply(&efgl.delta(BOREL), &[0, 0], &xj)?;
        let cases: Vec<(i64, i64)> = (0..order).flat_map(|r| (0..order).map(move |s| (r, s))).collect();
        aggregate(&mut report, "epsilon-square", &format!("{BOREL} x_{j}"), cases, |&(r, s)| {
            let after_r = efgl.apply(&efgl.epsilon(BOREL, 2, r), &[0], &d)?;
            let lhs = efgl.apply(&efgl.epsilon(BOREL, 1, s), &[], &after_r)?;
            let rhs = efgl.apply(&efgl.epsilon(BOREL, 1, r + s), &[], &xj)?;
            compare(&lhs, &rhs)
        })?;
    }
    Ok(report)
}

fn random_series(ring: &Arc<Ring>, fgl: &FormalGroupLaw, rng: &mut ChaCha8Rng, max_degree: i32) -> Result<Series> {
    let m_gens: Vec<_> = fgl.generators().iter().map(|g| g.name.clone()).collect();
    let mut terms = Terms::new();
    for _ in 0..rng.gen_range(1..=4) {
        let a = rng.gen_range(0..=max_degree);
        let b = rng.gen_range(0..=max_degree - a);
        let mut pairs = vec![("x".into(), a), ("u".into(), b)];
        if !m_gens.is_empty() && rng.gen_bool(0.5) {
            let g = &m_gens[rng.gen_range(0..m_gens.len().min(3))];
            pairs.push((g.clone(), 1));
        }
        let c: i64 = rng.gen_range(1..=3) * if rng.gen_bool(0.5) { 1 } else { -1 };
        let m = Monomial::from_pairs(pairs);
        *terms.entry(m).or_insert_with(|| BigInt::from(0)) += c;
    }
    terms.retain(|_, c| *c != BigInt::from(0));
    Series::from_terms(ring, terms)
}

/// Regularity, quotient collapse, ideal generator and reconstruction at the
/// Borel node, plus the counit-convention self-test.
pub fn check_axiom3(efgl: &EfglData, seed: u64) -> Result<VerificationReport> {
    let mut report = VerificationReport::default();
    let zz = efgl.zigzag();
    let fgl = zz.fgl();
    let order = zz.params().order() as i64;
    let degree = zz.params().degree as i32;
    let one = efgl.node(BOREL, 1)?;
    let ring = Arc::clone(&one.components()[0].ring);
    let base = Arc::clone(zz.ring(BOREL));
    let x = Series::var(&ring, "x")?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    for l in 0..order {
        let xl = efgl.x_class(BOREL, 0, l)?;
        let loc = format!("{BOREL} x_{l}");

        // structural regularity: x_L = x + (terms in u) + ..., unit on x
        let unit = xl.coefficient(&Monomial::var("x")) == BigInt::from(1);
        let structural = if unit {
            None
        } else {
            Some(Witness {
                ring: ring.name().to_string(),
                lhs: xl.coefficient(&Monomial::var("x")).to_string(),
                rhs: "1".into(),
                difference: "coefficient of x is not 1".into(),
            })
        };
        report.push("regularity-structural", &loc, structural);

        let mut trials = 0;
        let mut witness = None;
        while trials < REGULARITY_TRIALS {
            let f = random_series(&ring, fgl, &mut rng, degree - 1)?;
            if ideal_remainder(&f)?.is_none() {
                continue;
            }
            trials += 1;
            let prod = xl.mul(&f)?;
            if ideal_remainder(&prod)?.is_none() {
                witness = Some(Witness {
                    ring: ring.name().to_string(),
                    lhs: format!("({xl}) * ({f})"),
                    rhs: "0".into(),
                    difference: prod.to_string(),
                });
                break;
            }
        }
        report.push("regularity-random", format!("{loc} trials={trials}"), witness);

        // R/(x_L) -> coefficients: x -> [-L]u kills x_L
        let collapse = RingMap::new(format!("collapse{l}"), &ring, &base).with_image("x", efgl.euler(BOREL, -l)?)?;
        let cert = Certificate::compute(&collapse)?;
        let image = collapse.apply(&xl)?;
        let mut w = compare(&image, &Series::zero(&base))?;
        if w.is_none() && !cert.passes() {
            w = Some(Witness {
                ring: base.name().to_string(),
                lhs: cert.map.clone(),
                rhs: "well-defined".into(),
                difference: "relation not preserved".into(),
            });
        }
        report.push("quotient-collapse", &loc, w);

        // reconstruction x_L = (ε_L ⊗ 1) Δ(x)
        let d = efgl.apply(&efgl.delta(BOREL), &[0, 0], &x)?;
        let rebuilt = efgl.apply(&efgl.epsilon(BOREL, 2, l), &[0], &d)?;
        report.push("reconstruction", &loc, compare(&rebuilt, &xl)?);
    }

    // ideal generator: the product, order-independent, killed by every collapse
    let forward = efgl.ideal_generator(BOREL)?;
    let mut backward = Series::one(&ring);
    for l in (0..order).rev() {
        backward = backward.mul(&efgl.x_class(BOREL, 0, l)?)?;
    }
    let mut w = compare(&forward, &backward)?;
    if w.is_none() {
        for l in 0..order {
            let collapse = RingMap::new("collapse", &ring, &base).with_image("x", efgl.euler(BOREL, -l)?)?;
            if let Some(found) = compare(&collapse.apply(&forward)?, &Series::zero(&base))? {
                w = Some(found);
                break;
            }
        }
    }
    report.push("ideal-generator", BOREL.to_string(), w);

    // which counit conventions reconstruct x_L?
    let mut verdicts = Vec::new();
    for conv in [EpsilonConvention::Plus, EpsilonConvention::Minus] {
        let opts = DiagramOptions { epsilon: conv, ..efgl.options() };
        let alt = EfglData::from_zigzag(Arc::clone(zz), opts, 2)?;
        let d = alt.apply(&alt.delta(BOREL), &[0, 0], &Series::var(&alt.node(BOREL, 1)?.components()[0].ring, "x")?)?;
        let mut ok = true;
        for l in 0..order {
            let rebuilt = alt.apply(&alt.epsilon(BOREL, 2, l), &[0], &d)?;
            if compare(&rebuilt, &alt.x_class(BOREL, 0, l)?)?.is_some() {
                ok = false;
                break;
            }
        }
        verdicts.push((conv, ok));
    }
    let desc: Vec<String> =
        verdicts.iter().map(|(c, ok)| format!("{c:?}: {}", if *ok { "reconstructs" } else { "fails" })).collect();
    report.notes.push(format!("counit convention self-test: {}", desc.join(", ")));
    Ok(report)
}

/// `ψ`/`φ` against `Δ`, on every adjoined variable and every coefficient
/// generator, plus the n-series composition certificates.
pub fn check_diagram_naturality(efgl: &EfglData) -> Result<VerificationReport> {
    let mut report = VerificationReport::default();
    let zz = efgl.zigzag();
    let params = *zz.params();
    for k in 0..params.n {
        let s = Position::S(k);
        let ns = params.modulus(s);
        for (label, vertical1, vertical2) in
            [("psi", efgl.psi(k, 1), efgl.psi(k, 2)), ("phi", efgl.phi(k, 1), efgl.phi(k, 2))]
        {
            let src = vertical1.source.0;
            let nr = params.modulus(src);
            let src_one = efgl.node(src, 1)?;
            let loc = format!("{label}{k}");
            aggregate(&mut report, "naturality-variables", &loc, grid(ns, 2), |ab| {
                let (a, b) = (ab[0], ab[1]);
                let x = src_one.variable(&[(a + b) % nr], 0)?;
                let lhs = efgl.apply(&efgl.delta(s), ab, &efgl.apply(&vertical1, &[(a + b) % ns], &x)?)?;
                let rhs = efgl.apply(&vertical2, ab, &efgl.apply(&efgl.delta(src), &[a % nr, b % nr], &x)?)?;
                compare(&lhs, &rhs)
            })?;
            let src_ring = Arc::clone(&efgl.node(src, 1)?.component(&[0])?.ring);
            let gens: Vec<String> = zz.ring(src).generators().iter().map(|g| g.name.to_string()).collect();
            aggregate(&mut report, "naturality-generators", &loc, gens, |g| {
                let v = Series::var(&src_ring, g)?;
                let lhs = efgl.apply(&efgl.delta(s), &[0, 0], &efgl.apply(&vertical1, &[0], &v)?)?;
                let rhs = efgl.apply(&vertical2, &[0, 0], &efgl.apply(&efgl.delta(src), &[0, 0], &v)?)?;
                compare(&lhs, &rhs)
            })?;
        }
    }
    let fgl = zz.fgl();
    let x = Series::var(fgl.univariate_ring(), "x")?;
    for k in 0..params.n {
        let pk = params.p.pow(k) as i64;
        let lhs = fgl.n_series(params.p as i64, &fgl.n_series_x(pk)?)?;
        let rhs = fgl.n_series(pk * params.p as i64, &x)?;
        report.push("n-series-composition", format!("[p] o [p^{k}]"), compare(&lhs, &rhs)?);
    }
    Ok(report)
}

/// Descends every top coordinate `e_{j,i}` (`i ≤ max_i`, `e_{j,0} = u_j`) to
/// `R_0` and checks `Σ_i φ(e_{j,i}) x^i = x +_F [j]_F u` at the Borel node.
pub fn check_descent(efgl: &EfglData, max_i: u32) -> Result<VerificationReport> {
    let mut report = VerificationReport::default();
    let zz = efgl.zigzag();
    let ring = Arc::clone(&efgl.node(BOREL, 1)?.components()[0].ring);
    let x = Series::var(&ring, "x")?;
    let max_i = max_i.min(zz.params().degree);
    for j in 1..zz.params().order() {
        let mut sum = Series::zero(&ring);
        let mut complete = true;
        for i in 0..=max_i {
            let loc = format!("u{j} b^({i})");
            match zz.descend_to_r0(&zz.top_coordinate(j, i)?) {
                Ok(d) => {
                    sum = sum.add(&d.value.embed(&ring)?.mul(&x.pow(i)?)?)?;
                    report.push("descent", loc, None);
                }
                Err(crate::Error::Descent { stage, var }) => {
                    complete = false;
                    let w = Witness {
                        ring: stage,
                        lhs: format!("negative power of {var}"),
                        rhs: "none".into(),
                        difference: loc.clone(),
                    };
                    report.push("descent", loc, Some(w));
                }
                Err(e) => return Err(e),
            }
        }
        if complete {
            let xj = efgl.x_class(BOREL, 0, j as i64)?.truncated(max_i as i32);
            report.push("descent-sum", format!("x_{j} to degree {max_i}"), compare(&sum.truncated(max_i as i32), &xj)?);
        }
    }
    Ok(report)
}

/// Well-definedness certificates of every zigzag map.
pub fn check_certificates(efgl: &EfglData) -> Result<VerificationReport> {
    let mut report = VerificationReport::default();
    for m in efgl.zigzag().maps() {
        let w = m.certificate.checks.iter().find(|c| !c.holds).map(|c| Witness {
            ring: m.target.to_string(),
            lhs: c.image.clone(),
            rhs: "0".into(),
            difference: c.image.clone(),
        });
        report.push("certificate", m.map.label(), w);
    }
    Ok(report)
}

/// The full suite for a cyclic p-group.
pub fn verify_all(efgl: &EfglData, seed: u64) -> Result<VerificationReport> {
    let mut report = VerificationReport::for_efgl(efgl, seed);
    report.extend(check_certificates(efgl)?);
    report.extend(check_comultiplication(efgl)?);
    report.extend(check_epsilon_square(efgl)?);
    report.extend(check_axiom3(efgl, seed)?);
    report.extend(check_diagram_naturality(efgl)?);
    Ok(report)
}

/// Local checks at the general nodes: component counts, Euler additivity and
/// torsion of the Euler classes in `Q^k`.
pub fn verify_general(nodes: &GeneralNodes, degree: u32, laurent: u32, seed: u64) -> Result<VerificationReport> {
    let g: &FiniteAbelianGroup = &nodes.group;
    let mut report = VerificationReport::new(Parameters {
        group: g.to_string(),
        p: None,
        n: None,
        degree,
        laurent,
        fgl: nodes.fgl.kind().to_string(),
        seed,
        options: None,
    });
    let tower = nodes.chain.tower(g)?;
    let j = nodes.j;
    let k = nodes.chain.len();
    let count_check = |label: &str, got: usize, want: u64| {
        (got as u64 != want).then(|| Witness {
            ring: label.to_string(),
            lhs: got.to_string(),
            rhs: want.to_string(),
            difference: "component count".into(),
        })
    };
    report.push(
        "components",
        nodes.q.label.clone(),
        count_check(&nodes.q.label, nodes.q.components.len(), tower[j].order() - 1),
    );
    report.push(
        "components",
        nodes.t.label.clone(),
        count_check(&nodes.t.label, nodes.t.components.len(), tower[j + 1].order() - 1),
    );
    for (label, ring, level) in [
        (&nodes.q.label, &nodes.q.coefficients, j),
        (&nodes.t.label, &nodes.t.coefficients, j),
        (&nodes.top.label, &nodes.top.coefficients, k),
    ] {
        let failures = nodes.euler_additivity_failures(ring, level)?;
        let w = failures.first().map(|(l, m)| Witness {
            ring: label.clone(),
            lhs: format!("u_{l} +_F u_{m}"),
            rhs: format!("u_{}", g.character_add(l, m)),
            difference: "not in the relation ideal".into(),
        });
        report.push("euler-additivity", label.clone(), w);
    }
    let top = &nodes.top.coefficients;
    for l in &nodes.representatives[k] {
        let o = g.character_order(l) as i64;
        let u = Series::var(top, &crate::efgl::euler_name(l))?;
        let w = compare(&nodes.fgl.n_series(o, &u)?, &Series::zero(top))?;
        report.push("euler-torsion", format!("{} [{o}]u_{l}", nodes.top.label), w);
    }
    Ok(report)
}
