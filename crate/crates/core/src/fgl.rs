//! Formal group laws over presented coefficient rings.
//!
//! The universal law is presented through its logarithm over `Z[m1, m2, ...]`:
//! `log x = x + m1 x^2 + m2 x^3 + ...` and `F(x, y) = exp(log x + log y)`.
//! The exponential is the compositional inverse of a series with unit linear
//! coefficient, so every coefficient of `F` is an integer polynomial in the
//! `m_i`.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::algebra::{compose, compositional_inverse, GradedGenerator, Monomial, Ring, RingMap, Series, Terms};
use crate::error::{Error, Result};

/// Homological degree of every orientation-type variable (x, y, u, ...).
pub const SERIES_VAR_DEGREE: i32 = -2;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FglKind {
    Universal,
    Additive,
    Multiplicative,
}

impl FglKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            FglKind::Universal => "universal",
            FglKind::Additive => "additive",
            FglKind::Multiplicative => "multiplicative",
        }
    }
}

impl fmt::Display for FglKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for FglKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "universal" => Ok(FglKind::Universal),
            "additive" => Ok(FglKind::Additive),
            "multiplicative" => Ok(FglKind::Multiplicative),
            other => Err(Error::InvalidParameter(format!("unknown formal group law `{other}`"))),
        }
    }
}

pub struct FormalGroupLaw {
    kind: FglKind,
    degree: u32,
    coefficients: Arc<Ring>,
    one_var: Arc<Ring>,
    two_var: Arc<Ring>,
    law: Series,
    logarithm: Option<Series>,
    negation: Series,
    n_series: Mutex<HashMap<i64, Series>>,
}

impl fmt::Debug for FormalGroupLaw {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FormalGroupLaw")
            .field("kind", &self.kind)
            .field("degree", &self.degree)
            .field("law", &self.law)
            .finish()
    }
}

fn coefficient_generators(kind: FglKind, degree: u32) -> Vec<GradedGenerator> {
    match kind {
        FglKind::Universal => (1..degree as i32).map(|i| GradedGenerator::polynomial(format!("m{i}"), 2 * i)).collect(),
        FglKind::Additive => Vec::new(),
        FglKind::Multiplicative => vec![GradedGenerator::polynomial("v", 2)],
    }
}

impl FormalGroupLaw {
    pub fn new(kind: FglKind, degree: u32) -> Result<Arc<Self>> {
        if degree < 1 {
            return Err(Error::InvalidParameter("formal group law degree must be >= 1".into()));
        }
        let gens = coefficient_generators(kind, degree);
        let coefficients = Arc::new(Ring::new(format!("{kind}-coefficients"), gens.clone(), degree, 0)?);
        let one_var = Arc::new(coefficients.adjoin(format!("{kind}[[x]]"), &[("x".into(), SERIES_VAR_DEGREE)])?);
        let two_var =
            Arc::new(coefficients.adjoin(
                format!("{kind}[[x,y]]"),
                &[("x".into(), SERIES_VAR_DEGREE), ("y".into(), SERIES_VAR_DEGREE)],
            )?);
        let x2 = Series::var(&two_var, "x")?;
        let y2 = Series::var(&two_var, "y")?;
        let (law, logarithm) = match kind {
            FglKind::Additive => (x2.add(&y2)?, Some(Series::var(&one_var, "x")?)),
            FglKind::Multiplicative => {
                let v = Series::var(&two_var, "v")?;
                (x2.add(&y2)?.add(&v.mul(&x2)?.mul(&y2)?)?, None)
            }
            FglKind::Universal => {
                let mut log = Terms::new();
                log.insert(Monomial::var("x"), BigInt::from(1));
                for i in 1..degree as i32 {
                    log.insert(Monomial::from_pairs([(format!("m{i}"), 1), ("x".to_string(), i + 1)]), BigInt::from(1));
                }
                let log = Series::from_terms(&one_var, log)?;
                let exp = compositional_inverse(&log)?;
                let log_x = RingMap::new("log x", &one_var, &two_var).apply(&log)?;
                let log_y = RingMap::new("log y", &one_var, &two_var).with_image("x", y2.clone())?.apply(&log)?;
                let law = RingMap::new("exp", &one_var, &two_var).with_image("x", log_x.add(&log_y)?)?.apply(&exp)?;
                (law, Some(log))
            }
        };
        let mut fgl = FormalGroupLaw {
            kind,
            degree,
            coefficients,
            one_var: Arc::clone(&one_var),
            two_var,
            law,
            logarithm,
            negation: Series::zero(&one_var),
            n_series: Mutex::new(HashMap::new()),
        };
        fgl.negation = fgl.solve_negation()?;
        Ok(Arc::new(fgl))
    }

    pub fn universal(degree: u32) -> Result<Arc<Self>> {
        Self::new(FglKind::Universal, degree)
    }

    pub fn additive(degree: u32) -> Result<Arc<Self>> {
        Self::new(FglKind::Additive, degree)
    }

    pub fn multiplicative(degree: u32) -> Result<Arc<Self>> {
        Self::new(FglKind::Multiplicative, degree)
    }

    pub fn kind(&self) -> FglKind {
        self.kind
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    /// Generators of the coefficient ring, to be included in any ring the law
    /// is evaluated over.
    pub fn generators(&self) -> &[GradedGenerator] {
        self.coefficients.generators()
    }

    pub fn coefficient_ring(&self) -> &Arc<Ring> {
        &self.coefficients
    }

    /// `Z[coefficients][[x]]`, the home of n-series and the negation.
    pub fn univariate_ring(&self) -> &Arc<Ring> {
        &self.one_var
    }

    pub fn law(&self) -> &Series {
        &self.law
    }

    pub fn logarithm(&self) -> Option<&Series> {
        self.logarithm.as_ref()
    }

    /// `a_{ij}`: coefficient of `x^i y^j` in `F`.
    pub fn coefficient(&self, i: i32, j: i32) -> Result<Series> {
        let mut terms = Terms::new();
        for (m, c) in self.law.terms() {
            if m.exponent("x") == i && m.exponent("y") == j {
                let (_, rest) = m.remove("x");
                let (_, rest) = rest.remove("y");
                terms.insert(rest, c.clone());
            }
        }
        Series::from_terms(&self.coefficients, terms)
    }

    fn check_target(&self, ring: &Ring) -> Result<()> {
        if ring.degree_bound() > self.degree {
            return Err(Error::InvalidParameter(format!(
                "law known through degree {} but ring `{}` truncates at {}",
                self.degree,
                ring.name(),
                ring.degree_bound()
            )));
        }
        Ok(())
    }

    /// `f +_F g`.
    pub fn formal_sum(&self, f: &Series, g: &Series) -> Result<Series> {
        let target = f.ring();
        self.check_target(target)?;
        RingMap::new("formal sum", &self.two_var, target)
            .with_image("x", f.clone())?
            .with_image("y", g.embed(target)?)?
            .apply(&self.law)
    }

    /// Left fold of `formal_sum`; the empty sum is 0.
    pub fn iterated_formal_sum(&self, ring: &Arc<Ring>, fs: &[Series]) -> Result<Series> {
        let mut acc = Series::zero(ring);
        for f in fs {
            acc = self.formal_sum(&acc, f)?;
        }
        Ok(acc)
    }

    /// `iota(x)` with `x +_F iota(x) = 0`, as a series in `x`.
    pub fn negation_series(&self) -> &Series {
        &self.negation
    }

    fn solve_negation(&self) -> Result<Series> {
        let ring = &self.one_var;
        let x = Series::var(ring, "x")?;
        let mut iota = x.neg();
        for d in 2..=self.degree as i32 {
            let s = self.formal_sum(&x, &iota)?;
            let mut fix = Terms::new();
            for (m, c) in s.terms() {
                if ring.series_degree(m) == d {
                    fix.insert(m.clone(), c.clone());
                }
            }
            if !fix.is_empty() {
                iota = iota.sub(&Series::from_terms(ring, fix)?)?;
            }
        }
        Ok(iota)
    }

    pub fn formal_negation(&self, f: &Series) -> Result<Series> {
        self.check_target(f.ring())?;
        compose(&self.negation, "x", f)
    }

    /// `[n]_F x` as a series in `x`, memoized.
    pub fn n_series_x(&self, n: i64) -> Result<Series> {
        if let Some(s) = self.n_series.lock().unwrap().get(&n) {
            return Ok(s.clone());
        }
        let ring = &self.one_var;
        let x = Series::var(ring, "x")?;
        let s = match n {
            0 => Series::zero(ring),
            1 => x,
            n if n < 0 => compose(&self.negation, "x", &self.n_series_x(-n)?)?,
            n if n <= 8 => self.formal_sum(&x, &self.n_series_x(n - 1)?)?,
            n => {
                let half = self.n_series_x(n / 2)?;
                let double = self.formal_sum(&half, &half)?;
                if n % 2 == 1 {
                    self.formal_sum(&double, &x)?
                } else {
                    double
                }
            }
        };
        self.n_series.lock().unwrap().insert(n, s.clone());
        Ok(s)
    }

    /// `[n]_F f`.
    pub fn n_series(&self, n: i64, f: &Series) -> Result<Series> {
        self.check_target(f.ring())?;
        if n == 0 {
            return Ok(Series::zero(f.ring()));
        }
        compose(&self.n_series_x(n)?, "x", f)
    }
}
