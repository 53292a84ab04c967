//! The coefficient zigzag for `G = Z/p^n`.
//!
//! ```text
//!  R_0      R_1      ...   R_{n-1}     R^n
//!    \ψ0   φ0/ \ψ1          \ψ_{n-1}  /φ_{n-1}
//!     S_0       S_1   ...     S_{n-1}
//! ```
//!
//! `R_k` is generated over the coefficient ring of the law by `w_k`
//! (printed `u` for `k = 0` and `u[k]` otherwise), inverted Euler classes
//! `u_j` for `0 < j < p^k`, and the products `e_{j,i} = u_j b_j^{(i)}` for
//! `i <= D`, modulo the single relation `[p^{n-k}]_F w_k`. `S_k` inverts
//! `w_k`; the top ring `R^n` has `u_j` for `0 < j < p^n` and no relations.
//! `ψ_k` is the localization and `φ_k` writes `j = j' + t p^k` and sends
//! `w_{k+1} -> [p]_F w_k`, `u_j -> u_{j'} +_F [t]_F w_k` and `e_{j,i}` to the
//! coefficient of `x^i` in `(x +_F u_{j'}) +_F [t]_F w_k`.

use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::algebra::{
    equal_mod_relations, ideal_remainder, GradedGenerator, Monomial, Ring, RingMap, Series, Sym, Terms,
};
use crate::error::{Error, Result};
use crate::fgl::{FglKind, FormalGroupLaw, SERIES_VAR_DEGREE};
use crate::groups::is_prime;

/// A node of the zigzag. `R(n)` is the top ring `R^n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Position {
    R(u32),
    S(u32),
}

impl fmt::Display for Position {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Position::R(k) => write!(f, "R{k}"),
            Position::S(k) => write!(f, "S{k}"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CyclicParams {
    pub p: u64,
    pub n: u32,
    pub degree: u32,
    pub laurent: u32,
}

impl CyclicParams {
    pub fn new(p: u64, n: u32, degree: u32, laurent: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if n == 0 {
            return Err(Error::InvalidParameter("n must be at least 1".into()));
        }
        if degree < 2 {
            return Err(Error::InvalidParameter("truncation degree must be at least 2".into()));
        }
        p.checked_pow(n).ok_or_else(|| Error::InvalidParameter("p^n overflows".into()))?;
        Ok(CyclicParams { p, n, degree, laurent })
    }

    /// `|G| = p^n`.
    pub fn order(&self) -> u64 {
        self.p.pow(self.n)
    }

    /// Precision at which relations are stored.
    pub fn precision(&self) -> u32 {
        self.degree + self.laurent
    }

    /// Number of components of the orientation diagram at `pos`.
    pub fn modulus(&self, pos: Position) -> u64 {
        match pos {
            Position::R(k) => self.p.pow(k),
            Position::S(k) => self.p.pow(k + 1),
        }
    }

    pub fn positions(&self) -> Vec<Position> {
        let mut out: Vec<Position> = (0..=self.n).map(Position::R).collect();
        out.extend((0..self.n).map(Position::S));
        out
    }
}

/// Name of `w_k = u_{[k]}`.
pub fn w_name(k: u32) -> Sym {
    if k == 0 {
        "u".into()
    } else {
        format!("u[{k}]").into()
    }
}

/// Name of the Euler generator `u_j`.
pub fn u_name(j: u64) -> Sym {
    format!("u{j}").into()
}

/// Name of `e_{j,i} = u_j b_j^{(i)}`.
pub fn e_name(j: u64, i: u32) -> Sym {
    format!("ub{j}_{i}").into()
}

/// Verdict for one relation pushed through one map.
#[derive(Clone, Debug, Serialize)]
pub struct RelationCheck {
    pub relation: String,
    pub image: String,
    pub holds: bool,
}

/// Well-definedness certificate of a ring map: each source relation lands in
/// the target relation ideal.
#[derive(Clone, Debug, Serialize)]
pub struct Certificate {
    pub map: String,
    pub checks: Vec<RelationCheck>,
}

impl Certificate {
    pub fn passes(&self) -> bool {
        self.checks.iter().all(|c| c.holds)
    }

    pub fn compute(map: &RingMap) -> Result<Self> {
        let source = map.source();
        let mut checks = Vec::new();
        for r in source.relation_set().relations() {
            let rel = Series::from_terms(source, r.clone())?;
            let image = map.apply(&rel)?;
            let holds = ideal_remainder(&image)?.is_none();
            checks.push(RelationCheck { relation: rel.to_string(), image: image.to_string(), holds });
        }
        Ok(Certificate { map: map.label().to_string(), checks })
    }
}

/// A zigzag map with its certificate.
#[derive(Clone, Debug)]
pub struct CoefficientMap {
    pub source: Position,
    pub target: Position,
    pub map: RingMap,
    pub certificate: Certificate,
}

/// One stage of a descent: the element after `φ_k`, re-homed in `R_k`.
#[derive(Clone, Debug, Serialize)]
pub struct DescentStage {
    pub stage: String,
    pub value: String,
}

#[derive(Clone, Debug)]
pub struct Descent {
    pub stages: Vec<DescentStage>,
    pub value: Series,
}

pub struct ZigzagDiagram {
    params: CyclicParams,
    fgl: Arc<FormalGroupLaw>,
    r_rings: Vec<Arc<Ring>>,
    s_rings: Vec<Arc<Ring>>,
    psi: Vec<CoefficientMap>,
    phi: Vec<CoefficientMap>,
}

impl fmt::Debug for ZigzagDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ZigzagDiagram").field("params", &self.params).finish()
    }
}

fn level_generators(fgl: &FormalGroupLaw, params: &CyclicParams, k: u32) -> Vec<GradedGenerator> {
    let top = k == params.n;
    let mut gens: Vec<GradedGenerator> = fgl.generators().to_vec();
    if !top {
        gens.push(GradedGenerator::series(w_name(k), SERIES_VAR_DEGREE));
    }
    let count = params.p.pow(k);
    for j in 1..count {
        gens.push(GradedGenerator::series(u_name(j), SERIES_VAR_DEGREE));
    }
    for j in 1..count {
        for i in 1..=params.degree {
            gens.push(GradedGenerator::polynomial(e_name(j, i), 2 * i as i32 - 2));
        }
    }
    gens
}

fn invert_all(mut ring: Ring, names: impl IntoIterator<Item = Sym>) -> Result<Ring> {
    for s in names {
        ring = ring.localize(&s)?;
    }
    Ok(ring)
}

/// Builds the zigzag with the given law. The law is evaluated at the
/// relation precision `D + E`.
pub fn build_coefficient_zigzag(p: u64, n: u32, kind: FglKind, degree: u32, laurent: u32) -> Result<ZigzagDiagram> {
    let params = CyclicParams::new(p, n, degree, laurent)?;
    let fgl = FormalGroupLaw::new(kind, params.precision())?;
    ZigzagDiagram::build(params, fgl)
}

impl ZigzagDiagram {
    pub fn build(params: CyclicParams, fgl: Arc<FormalGroupLaw>) -> Result<Self> {
        if fgl.degree() < params.precision() {
            return Err(Error::InvalidParameter(format!(
                "law has degree {} but relations need precision {}",
                fgl.degree(),
                params.precision()
            )));
        }
        let (d, e, prec) = (params.degree, params.laurent, params.precision());
        let mut r_rings = Vec::new();
        let mut s_rings = Vec::new();
        for k in 0..=params.n {
            let gens = level_generators(&fgl, &params, k);
            let units: Vec<Sym> = (1..params.p.pow(k)).map(u_name).collect();
            let label = if k == params.n { format!("R^{k}") } else { format!("R{k}") };
            let ring = invert_all(Ring::new(label.clone(), gens.clone(), d, e)?, units.clone())?;
            if k == params.n {
                r_rings.push(Arc::new(ring));
                continue;
            }
            // the relation [p^{n-k}]_F w_k, computed at precision D + E
            let wide = Arc::new(Ring::new(format!("{label}-wide"), gens, prec, e)?);
            let w = Series::var(&wide, &w_name(k))?;
            let rel = fgl.n_series(params.p.pow(params.n - k) as i64, &w)?.into_terms();
            let ring = Arc::new(ring.with_relations(vec![rel], prec)?);
            let s = Arc::new(ring.localize(&w_name(k))?.with_name(format!("S{k}")));
            r_rings.push(ring);
            s_rings.push(s);
        }
        let mut zz = ZigzagDiagram { params, fgl, r_rings, s_rings, psi: Vec::new(), phi: Vec::new() };
        for k in 0..params.n {
            let psi = RingMap::new(format!("psi{k}"), &zz.r_rings[k as usize], &zz.s_rings[k as usize]);
            let phi = zz.build_phi(k)?;
            let psi_cert = Certificate::compute(&psi)?;
            let phi_cert = Certificate::compute(&phi)?;
            zz.psi.push(CoefficientMap {
                source: Position::R(k),
                target: Position::S(k),
                map: psi,
                certificate: psi_cert,
            });
            zz.phi.push(CoefficientMap {
                source: Position::R(k + 1),
                target: Position::S(k),
                map: phi,
                certificate: phi_cert,
            });
        }
        Ok(zz)
    }

    /// Negative control: `φ_0(w_1) = w_0` in place of `[p]_F w_0`. This is
    /// not well defined once `n ≥ 2`, and the certificate records it.
    pub fn with_unscaled_phi0(mut self) -> Result<Self> {
        if self.params.n < 2 {
            return Err(Error::InvalidParameter("the unscaled phi0 control needs n >= 2".into()));
        }
        let mut map = self.phi[0].map.clone();
        map.set_image(&w_name(1), Series::var(&self.s_rings[0], &w_name(0))?)?;
        self.phi[0].certificate = Certificate::compute(&map)?;
        self.phi[0].map = map;
        Ok(self)
    }

    fn build_phi(&self, k: u32) -> Result<RingMap> {
        let p = self.params.p;
        let pk = p.pow(k);
        let source = &self.r_rings[k as usize + 1];
        let target = &self.s_rings[k as usize];
        let mut map = RingMap::new(format!("phi{k}"), source, target);
        if k + 1 < self.params.n {
            let w = Series::var(target, &w_name(k))?;
            map.set_image(&w_name(k + 1), self.fgl.n_series(p as i64, &w)?)?;
        }
        let with_x = Arc::new(target.adjoin(format!("{}[[x]]", target.name()), &[("x".into(), SERIES_VAR_DEGREE)])?);
        let x = Series::var(&with_x, "x")?;
        let w = Series::var(&with_x, &w_name(k))?;
        for j in 1..p.pow(k + 1) {
            let (jp, t) = (j % pk, j / pk);
            // x +_F u_{j'} in coordinates
            let mut shifted = if jp == 0 { x.clone() } else { self.coordinate_series(&with_x, jp)? };
            if t > 0 {
                shifted = self.fgl.formal_sum(&shifted, &self.fgl.n_series(t as i64, &w)?)?;
            }
            map.set_image(&u_name(j), shifted.coefficient_of("x", 0, target)?)?;
            for i in 1..=self.params.degree {
                map.set_image(&e_name(j, i), shifted.coefficient_of("x", i as i32, target)?)?;
            }
        }
        Ok(map)
    }

    /// `sum_i e_{j,i} x^i` with `e_{j,0} = u_j`, in a ring holding `x`.
    fn coordinate_series(&self, ring: &Arc<Ring>, j: u64) -> Result<Series> {
        let mut terms = Terms::new();
        terms.insert(Monomial::var(u_name(j)), 1.into());
        for i in 1..=self.params.degree {
            terms.insert(Monomial::from_pairs([(e_name(j, i), 1), ("x".into(), i as i32)]), 1.into());
        }
        Series::from_terms(ring, terms)
    }

    pub fn params(&self) -> &CyclicParams {
        &self.params
    }

    pub fn fgl(&self) -> &Arc<FormalGroupLaw> {
        &self.fgl
    }

    pub fn ring(&self, pos: Position) -> &Arc<Ring> {
        match pos {
            Position::R(k) => &self.r_rings[k as usize],
            Position::S(k) => &self.s_rings[k as usize],
        }
    }

    pub fn r_rings(&self) -> &[Arc<Ring>] {
        &self.r_rings
    }

    pub fn s_rings(&self) -> &[Arc<Ring>] {
        &self.s_rings
    }

    pub fn psi(&self, k: u32) -> &CoefficientMap {
        &self.psi[k as usize]
    }

    pub fn phi(&self, k: u32) -> &CoefficientMap {
        &self.phi[k as usize]
    }

    pub fn maps(&self) -> impl Iterator<Item = &CoefficientMap> {
        self.psi.iter().zip(&self.phi).flat_map(|(a, b)| [a, b])
    }

    pub fn certificates_pass(&self) -> bool {
        self.maps().all(|m| m.certificate.passes())
    }

    /// Level of the coefficient ring at `pos`: `k` for `R_k` and `S_k`.
    fn level(pos: Position) -> u32 {
        match pos {
            Position::R(k) | Position::S(k) => k,
        }
    }

    /// Euler class of the character `d` (taken mod `p^n`) at `pos`:
    /// `u_{d mod p^k} +_F [floor(d / p^k)]_F w_k`, and `u_d` at the top.
    pub fn euler(&self, pos: Position, d: i64) -> Result<Series> {
        let ring = self.ring(pos);
        let order = self.params.order();
        let d = d.rem_euclid(order as i64) as u64;
        let k = Self::level(pos);
        if k == self.params.n {
            return if d == 0 { Ok(Series::zero(ring)) } else { Series::var(ring, &u_name(d)) };
        }
        let pk = self.params.p.pow(k);
        let (jp, t) = (d % pk, d / pk);
        let w = Series::var(ring, &w_name(k))?;
        let tw = self.fgl.n_series(t as i64, &w)?;
        if jp == 0 {
            Ok(tw)
        } else {
            self.fgl.formal_sum(&Series::var(ring, &u_name(jp))?, &tw)
        }
    }

    /// Euler class of `j` at every R-node, `R_0` first and the top last.
    /// Such tuples are always pullback-compatible.
    pub fn euler_tuple(&self, j: i64) -> Result<Vec<Series>> {
        (0..=self.params.n).map(|k| self.euler(Position::R(k), j)).collect()
    }

    /// True iff `ψ_k(t_k) ≡ φ_k(t_{k+1})` in every `S_k`.
    pub fn pullback_compatible(&self, tuple: &[Series]) -> Result<bool> {
        if tuple.len() != self.params.n as usize + 1 {
            return Err(Error::InvalidParameter(format!(
                "expected {} elements, one per R-node, got {}",
                self.params.n + 1,
                tuple.len()
            )));
        }
        for k in 0..self.params.n as usize {
            let left = self.psi[k].map.apply(&tuple[k])?;
            let right = self.phi[k].map.apply(&tuple[k + 1])?;
            if !equal_mod_relations(&left, &right)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Pushes an element of `R^n` down to `R_0` through `φ_{n-1}, ..., φ_0`,
    /// checking at each stage that no negative power of `w_k` appears.
    pub fn descend_to_r0(&self, f: &Series) -> Result<Descent> {
        let mut cur = f.clone();
        let mut stages = Vec::new();
        for k in (0..self.params.n).rev() {
            let image = self.phi[k as usize].map.apply(&cur)?;
            let w = w_name(k);
            if image.negative_exponents(&w) {
                return Err(Error::Descent { stage: format!("phi{k}"), var: w.to_string() });
            }
            cur = image.embed(&self.r_rings[k as usize])?;
            stages.push(DescentStage { stage: format!("phi{k}"), value: cur.to_string() });
        }
        Ok(Descent { stages, value: cur })
    }

    /// `e_{j,i}` as an element of the top ring; `i = 0` gives `u_j`.
    pub fn top_coordinate(&self, j: u64, i: u32) -> Result<Series> {
        let top = &self.r_rings[self.params.n as usize];
        if j == 0 || j >= self.params.order() || i > self.params.degree {
            return Err(Error::IndexOutOfRange(format!("u{j} b^({i}) with j < {}", self.params.order())));
        }
        if i == 0 {
            Series::var(top, &u_name(j))
        } else {
            Series::var(top, &e_name(j, i))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse_series;

    #[test]
    fn additive_p2_n2_shape() {
        let zz = build_coefficient_zigzag(2, 2, FglKind::Additive, 4, 2).unwrap();
        let r0 = zz.ring(Position::R(0));
        assert_eq!(render_relation(r0), "4*u");
        assert_eq!(zz.phi(0).map.image_of("u[1]").unwrap().to_string(), "2*u");
        assert_eq!(zz.phi(1).map.image_of("u3").unwrap().to_string(), "u1 + u[1]");
        assert!(zz.certificates_pass());
    }

    fn render_relation(r: &Ring) -> String {
        crate::algebra::render_terms(&r.relation_set().relations()[0])
    }

    #[test]
    fn euler_tuples_are_compatible() {
        let zz = build_coefficient_zigzag(2, 2, FglKind::Universal, 4, 2).unwrap();
        for j in 0..4 {
            assert!(zz.pullback_compatible(&zz.euler_tuple(j).unwrap()).unwrap(), "j = {j}");
        }
        let zeros: Vec<Series> = (0..=2).map(|k| Series::zero(zz.ring(Position::R(k)))).collect();
        assert!(zz.pullback_compatible(&zeros).unwrap());
        let mut bad = zz.euler_tuple(1).unwrap();
        bad[0] = parse_series("u^2", zz.ring(Position::R(0))).unwrap();
        assert!(!zz.pullback_compatible(&bad).unwrap());
    }

    #[test]
    fn descent_of_coordinates_additive() {
        let zz = build_coefficient_zigzag(2, 2, FglKind::Additive, 4, 2).unwrap();
        let r0 = zz.ring(Position::R(0));
        for j in 1..4u64 {
            let u = zz.descend_to_r0(&zz.top_coordinate(j, 0).unwrap()).unwrap().value;
            assert_eq!(u, parse_series(&format!("{j}*u"), r0).unwrap());
            let b1 = zz.descend_to_r0(&zz.top_coordinate(j, 1).unwrap()).unwrap().value;
            assert_eq!(b1.to_string(), "1");
            let b2 = zz.descend_to_r0(&zz.top_coordinate(j, 2).unwrap()).unwrap().value;
            assert!(b2.is_zero());
        }
    }

    #[test]
    fn unscaled_phi_is_not_well_defined() {
        let zz = build_coefficient_zigzag(2, 2, FglKind::Additive, 4, 2).unwrap().with_unscaled_phi0().unwrap();
        assert!(!zz.phi(0).certificate.passes());
        assert!(zz.psi(0).certificate.passes() && zz.phi(1).certificate.passes());
    }

    #[test]
    fn rejects_non_prime() {
        assert!(matches!(build_coefficient_zigzag(4, 1, FglKind::Additive, 4, 2), Err(Error::NotPrime(4))));
    }
}
