use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::monomial::{Monomial, Sym};
use super::ring::{Ring, Terms};
use crate::error::{Error, Result};

/// A truncated multivariate power/Laurent series over a presented ring.
///
/// Invariants: every stored monomial is valid in `ring`, has series degree
/// at most the ring's bound `D`, respects the Laurent bound, and carries a
/// nonzero coefficient.
#[derive(Clone)]
pub struct Series {
    ring: Arc<Ring>,
    terms: Terms,
}

impl Series {
    pub fn zero(ring: &Arc<Ring>) -> Self {
        Series { ring: Arc::clone(ring), terms: Terms::new() }
    }

    pub fn one(ring: &Arc<Ring>) -> Self {
        Self::constant(ring, BigInt::one())
    }

    pub fn constant(ring: &Arc<Ring>, c: impl Into<BigInt>) -> Self {
        let c = c.into();
        let mut terms = Terms::new();
        if !c.is_zero() {
            terms.insert(Monomial::one(), c);
        }
        Series { ring: Arc::clone(ring), terms }
    }

    pub fn var(ring: &Arc<Ring>, name: &str) -> Result<Self> {
        Self::monomial(ring, Monomial::var(name), BigInt::one())
    }

    pub fn monomial(ring: &Arc<Ring>, m: Monomial, c: impl Into<BigInt>) -> Result<Self> {
        ring.check_monomial(&m)?;
        let c = c.into();
        let mut terms = Terms::new();
        if !c.is_zero() && ring.series_degree(&m) <= ring.degree_bound() as i32 {
            terms.insert(m, c);
        }
        Ok(Series { ring: Arc::clone(ring), terms })
    }

    /// Validates and truncates raw terms into a series over `ring`.
    pub fn from_terms(ring: &Arc<Ring>, terms: Terms) -> Result<Self> {
        let bound = ring.degree_bound() as i32;
        let mut out = Terms::new();
        for (m, c) in terms {
            ring.check_monomial(&m)?;
            if !c.is_zero() && ring.series_degree(&m) <= bound {
                out.insert(m, c);
            }
        }
        Ok(Series { ring: Arc::clone(ring), terms: out })
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn terms(&self) -> &Terms {
        &self.terms
    }

    pub fn into_terms(self) -> Terms {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: &Monomial) -> BigInt {
        self.terms.get(m).cloned().unwrap_or_else(BigInt::zero)
    }

    fn compatible(&self, other: &Series) -> Result<()> {
        if Arc::ptr_eq(&self.ring, &other.ring) || self.ring.same_as(&other.ring) {
            Ok(())
        } else {
            Err(Error::RingMismatch(self.ring.name().into(), other.ring.name().into()))
        }
    }

    pub fn add(&self, other: &Series) -> Result<Series> {
        self.compatible(other)?;
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            accumulate(&mut terms, m.clone(), c.clone());
        }
        Ok(Series { ring: Arc::clone(&self.ring), terms })
    }

    pub fn sub(&self, other: &Series) -> Result<Series> {
        self.compatible(other)?;
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            accumulate(&mut terms, m.clone(), -c);
        }
        Ok(Series { ring: Arc::clone(&self.ring), terms })
    }

    pub fn neg(&self) -> Series {
        Series { ring: Arc::clone(&self.ring), terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }

    pub fn scale(&self, k: &BigInt) -> Series {
        if k.is_zero() {
            return Series::zero(&self.ring);
        }
        Series { ring: Arc::clone(&self.ring), terms: self.terms.iter().map(|(m, c)| (m.clone(), c * k)).collect() }
    }

    /// Multiplies by a single monomial, dropping terms beyond the bound.
    pub fn mul_monomial(&self, m: &Monomial, c: &BigInt) -> Result<Series> {
        let bound = self.ring.degree_bound() as i32;
        let shift = self.ring.series_degree(m);
        let mut terms = Terms::new();
        for (n, d) in &self.terms {
            if self.ring.series_degree(n) + shift > bound {
                continue;
            }
            let p = n.mul(m);
            self.ring.check_monomial(&p)?;
            terms.insert(p, d * c);
        }
        terms.retain(|_, c| !c.is_zero());
        Ok(Series { ring: Arc::clone(&self.ring), terms })
    }

    pub fn mul(&self, other: &Series) -> Result<Series> {
        self.compatible(other)?;
        self.mul_bounded(other, self.ring.degree_bound() as i32)
    }

    /// Product keeping only terms of series degree at most `bound`.
    pub(crate) fn mul_bounded(&self, other: &Series, bound: i32) -> Result<Series> {
        let ring = &self.ring;
        let lhs: Vec<(&Monomial, &BigInt, i32)> =
            self.terms.iter().map(|(m, c)| (m, c, ring.series_degree(m))).collect();
        let rhs: Vec<(&Monomial, &BigInt, i32)> =
            other.terms.iter().map(|(m, c)| (m, c, ring.series_degree(m))).collect();
        let mut acc: HashMap<Monomial, BigInt> = HashMap::new();
        for (ma, ca, da) in &lhs {
            for (mb, cb, db) in &rhs {
                if da + db > bound {
                    continue;
                }
                let m = ma.mul(mb);
                let c = *ca * *cb;
                match acc.get_mut(&m) {
                    Some(v) => *v += c,
                    None => {
                        acc.insert(m, c);
                    }
                }
            }
        }
        let mut terms = Terms::new();
        for (m, c) in acc {
            if !c.is_zero() {
                ring.check_monomial(&m)?;
                terms.insert(m, c);
            }
        }
        Ok(Series { ring: Arc::clone(ring), terms })
    }

    pub fn pow(&self, k: u32) -> Result<Series> {
        let mut result = Series::one(&self.ring);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = result.mul(&base)?;
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(result)
    }

    /// Drops every term of series degree above `d`.
    pub fn truncated(&self, d: i32) -> Series {
        Series {
            ring: Arc::clone(&self.ring),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| self.ring.series_degree(m) <= d)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Lowest series degree among the terms, `None` for zero.
    pub fn order(&self) -> Option<i32> {
        self.terms.keys().map(|m| self.ring.series_degree(m)).min()
    }

    /// True when every term has positive series degree, i.e. the series may be
    /// substituted into a power-series slot.
    pub fn has_positive_order(&self) -> bool {
        self.terms.keys().all(|m| self.ring.series_degree(m) >= 1)
    }

    /// Terms whose monomial has `var` to the power `exp`, with `var` removed,
    /// re-homed in `target`.
    pub fn coefficient_of(&self, var: &str, exp: i32, target: &Arc<Ring>) -> Result<Series> {
        let mut terms = Terms::new();
        for (m, c) in &self.terms {
            let (e, rest) = m.remove(var);
            if e == exp {
                terms.insert(rest, c.clone());
            }
        }
        Series::from_terms(target, terms)
    }

    /// The same terms viewed in another ring that knows every variable used.
    pub fn embed(&self, target: &Arc<Ring>) -> Result<Series> {
        Series::from_terms(target, self.terms.clone())
    }

    pub fn variables(&self) -> std::collections::BTreeSet<Sym> {
        self.terms.keys().flat_map(|m| m.vars().cloned()).collect()
    }

    /// Exact equality of canonical forms (same ring family, same terms).
    pub fn same_terms(&self, other: &Series) -> bool {
        self.terms == other.terms
    }

    pub fn negative_exponents(&self, var: &str) -> bool {
        self.terms.keys().any(|m| m.exponent(var) < 0)
    }
}

pub(crate) fn accumulate(terms: &mut Terms, m: Monomial, c: BigInt) {
    if c.is_zero() {
        return;
    }
    match terms.get_mut(&m) {
        Some(v) => {
            *v += c;
            if v.is_zero() {
                terms.remove(&m);
            }
        }
        None => {
            terms.insert(m, c);
        }
    }
}

impl PartialEq for Series {
    fn eq(&self, other: &Self) -> bool {
        self.ring.same_as(&other.ring) && self.terms == other.terms
    }
}

impl fmt::Display for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&super::text::render_terms(&self.terms))
    }
}

impl fmt::Debug for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Series[{}]({})", self.ring.name(), self)
    }
}
