use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::Arc;

use num_traits::{One, Signed};

use super::monomial::{Monomial, Sym};
use super::ring::{GeneratorKind, Ring, Terms};
use super::series::{accumulate, Series};
use crate::error::{Error, Result};

/// A ring homomorphism given on generators.
///
/// Generators without an explicit image pass through by name, which is how
/// localizations and "identity away from the series variables" maps are
/// written. Negative powers use `inverse_images` or, failing that, an image
/// that is a signed monomial in inverted generators.
#[derive(Clone, Debug)]
pub struct RingMap {
    label: String,
    source: Arc<Ring>,
    target: Arc<Ring>,
    images: BTreeMap<Sym, Series>,
    inverse_images: BTreeMap<Sym, Series>,
    passthrough: BTreeSet<Sym>,
}

impl RingMap {
    /// Starts from the name-wise identity on generators common to both rings.
    pub fn new(label: impl Into<String>, source: &Arc<Ring>, target: &Arc<Ring>) -> Self {
        let passthrough = source.generators().iter().filter(|g| target.has(&g.name)).map(|g| g.name.clone()).collect();
        RingMap {
            label: label.into(),
            source: Arc::clone(source),
            target: Arc::clone(target),
            images: BTreeMap::new(),
            inverse_images: BTreeMap::new(),
            passthrough,
        }
    }

    pub fn with_image(mut self, var: &str, image: Series) -> Result<Self> {
        self.set_image(var, image)?;
        Ok(self)
    }

    pub fn set_image(&mut self, var: &str, image: Series) -> Result<()> {
        let gen =
            self.source.generator(var).ok_or_else(|| Error::UnknownGenerator(var.into(), self.source.name().into()))?;
        let image = if Arc::ptr_eq(image.ring(), &self.target) { image } else { image.embed(&self.target)? };
        if gen.kind == GeneratorKind::PowerSeries && !image.has_positive_order() {
            return Err(Error::NonzeroConstantTerm(var.into()));
        }
        self.passthrough.remove(var);
        self.images.insert(gen.name.clone(), image);
        Ok(())
    }

    pub fn with_inverse_image(mut self, var: &str, image: Series) -> Result<Self> {
        let image = image.embed(&self.target)?;
        self.inverse_images.insert(Sym::from(var), image);
        Ok(self)
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn source(&self) -> &Arc<Ring> {
        &self.source
    }

    pub fn target(&self) -> &Arc<Ring> {
        &self.target
    }

    pub fn images(&self) -> &BTreeMap<Sym, Series> {
        &self.images
    }

    pub fn passthrough(&self) -> &BTreeSet<Sym> {
        &self.passthrough
    }

    /// Image of a generator (explicit or pass-through).
    pub fn image_of(&self, var: &str) -> Result<Series> {
        if let Some(s) = self.images.get(var) {
            return Ok(s.clone());
        }
        if self.passthrough.contains(var) {
            return Series::var(&self.target, var);
        }
        Err(Error::UnknownGenerator(var.into(), self.target.name().into()))
    }

    fn power(&self, var: &Sym, e: i32, cache: &mut HashMap<(Sym, i32), Series>) -> Result<Series> {
        if let Some(s) = cache.get(&(var.clone(), e)) {
            return Ok(s.clone());
        }
        let base = if e >= 0 {
            self.images[var].clone()
        } else if let Some(inv) = self.inverse_images.get(var) {
            inv.clone()
        } else {
            monomial_inverse(&self.images[var], var)?
        };
        let p = base.pow(e.unsigned_abs())?;
        cache.insert((var.clone(), e), p.clone());
        Ok(p)
    }

    pub fn apply(&self, f: &Series) -> Result<Series> {
        if !f.ring().same_as(&self.source) {
            return Err(Error::RingMismatch(f.ring().name().into(), self.source.name().into()));
        }
        // group by the substituted part of each monomial
        let mut groups: BTreeMap<Monomial, Terms> = BTreeMap::new();
        for (m, c) in f.terms() {
            for v in m.vars() {
                if !self.images.contains_key(v) && !self.passthrough.contains(v) {
                    return Err(Error::UnknownGenerator(v.to_string(), self.target.name().into()));
                }
            }
            let (kept, substituted) = m.split(|v| self.passthrough.contains(v));
            accumulate(groups.entry(substituted).or_default(), kept, c.clone());
        }
        let mut cache = HashMap::new();
        let mut out = Series::zero(&self.target);
        for (sigma, kept) in groups {
            let mut img = Series::one(&self.target);
            for (v, e) in sigma.pairs() {
                img = img.mul(&self.power(v, *e, &mut cache)?)?;
                if img.is_zero() {
                    break;
                }
            }
            if img.is_zero() {
                continue;
            }
            let coeff = Series::from_terms(&self.target, kept)?;
            out = out.add(&coeff.mul(&img)?)?;
        }
        Ok(out)
    }
}

fn monomial_inverse(s: &Series, var: &str) -> Result<Series> {
    if s.len() == 1 {
        let (m, c) = s.terms().iter().next().unwrap();
        if c.abs().is_one() && m.vars().all(|v| s.ring().is_inverted(v)) {
            return Series::monomial(s.ring(), m.pow(-1), c.clone());
        }
    }
    Err(Error::NotInvertible(var.into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::ring::GradedGenerator;
    use crate::algebra::text::parse_series;

    fn ring(vars: &[&str]) -> Arc<Ring> {
        Arc::new(Ring::new("r", vars.iter().map(|v| GradedGenerator::series(*v, -2)).collect(), 4, 2).unwrap())
    }

    #[test]
    fn substitute_square() {
        let src = ring(&["x"]);
        let tgt = ring(&["y", "z"]);
        let f = parse_series("x^2", &src).unwrap();
        let map = RingMap::new("s", &src, &tgt).with_image("x", parse_series("y + z", &tgt).unwrap()).unwrap();
        assert_eq!(map.apply(&f).unwrap().to_string(), "y^2 + 2*y*z + z^2");
    }

    #[test]
    fn identity_substitution() {
        let r = ring(&["x", "y"]);
        let f = parse_series("x + 3*x*y - y^3", &r).unwrap();
        let id = RingMap::new("id", &r, &r);
        assert_eq!(id.apply(&f).unwrap(), f);
    }

    #[test]
    fn rejects_constant_term_in_series_slot() {
        let src = ring(&["x"]);
        let tgt = ring(&["y"]);
        let err = RingMap::new("s", &src, &tgt).with_image("x", parse_series("1 + y", &tgt).unwrap());
        assert!(matches!(err, Err(Error::NonzeroConstantTerm(_))));
    }
}
