use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::membership::Lattice;
use super::monomial::{Monomial, Sym};
use crate::error::{Error, Result};

/// Sparse coefficient map. Zero coefficients are never stored.
pub type Terms = BTreeMap<Monomial, BigInt>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GeneratorKind {
    /// Ordinary polynomial generator; does not count toward truncation degree.
    Polynomial,
    /// Power-series variable; its exponent counts toward the truncation degree.
    PowerSeries,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GradingConvention {
    #[default]
    Homological,
    Cohomological,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GradedGenerator {
    pub name: Sym,
    pub degree: i32,
    pub kind: GeneratorKind,
}

impl GradedGenerator {
    pub fn polynomial(name: impl Into<Sym>, degree: i32) -> Self {
        GradedGenerator { name: name.into(), degree, kind: GeneratorKind::Polynomial }
    }

    pub fn series(name: impl Into<Sym>, degree: i32) -> Self {
        GradedGenerator { name: name.into(), degree, kind: GeneratorKind::PowerSeries }
    }
}

/// Relations of a presented ring, stored to a precision above the ring's
/// truncation so that Laurent multiples remain exact through degree `D`.
pub struct RelationSet {
    pub(crate) relations: Vec<Terms>,
    pub(crate) precision: u32,
    pub(crate) support: BTreeSet<Sym>,
    pub(crate) lattices: Mutex<HashMap<(i32, Option<i32>), Arc<Lattice>>>,
}

impl RelationSet {
    pub fn empty() -> Self {
        RelationSet {
            relations: Vec::new(),
            precision: 0,
            support: BTreeSet::new(),
            lattices: Mutex::new(HashMap::new()),
        }
    }

    pub fn relations(&self) -> &[Terms] {
        &self.relations
    }

    pub fn precision(&self) -> u32 {
        self.precision
    }

    pub fn support(&self) -> &BTreeSet<Sym> {
        &self.support
    }
}

impl fmt::Debug for RelationSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("RelationSet").field("count", &self.relations.len()).field("precision", &self.precision).finish()
    }
}

/// A presented graded ring: generators, an inverted subset, relations, and
/// the truncation parameters shared by every series over it.
#[derive(Debug)]
pub struct Ring {
    name: String,
    generators: Vec<GradedGenerator>,
    index: BTreeMap<Sym, usize>,
    inverted: BTreeSet<Sym>,
    relations: Arc<RelationSet>,
    degree_bound: u32,
    laurent_bound: u32,
    convention: GradingConvention,
}

impl Ring {
    pub fn new(
        name: impl Into<String>,
        generators: Vec<GradedGenerator>,
        degree_bound: u32,
        laurent_bound: u32,
    ) -> Result<Self> {
        let name = name.into();
        let mut index = BTreeMap::new();
        for (i, g) in generators.iter().enumerate() {
            if index.insert(g.name.clone(), i).is_some() {
                return Err(Error::InvalidParameter(format!("duplicate generator `{}` in ring `{name}`", g.name)));
            }
        }
        Ok(Ring {
            name,
            generators,
            index,
            inverted: BTreeSet::new(),
            relations: Arc::new(RelationSet::empty()),
            degree_bound,
            laurent_bound,
            convention: GradingConvention::Homological,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn generators(&self) -> &[GradedGenerator] {
        &self.generators
    }

    pub fn generator(&self, name: &str) -> Option<&GradedGenerator> {
        self.index.get(name).map(|&i| &self.generators[i])
    }

    pub fn has(&self, name: &str) -> bool {
        self.index.contains_key(name)
    }

    pub fn inverted(&self) -> &BTreeSet<Sym> {
        &self.inverted
    }

    pub fn is_inverted(&self, name: &str) -> bool {
        self.inverted.contains(name)
    }

    pub fn relation_set(&self) -> &Arc<RelationSet> {
        &self.relations
    }

    pub fn degree_bound(&self) -> u32 {
        self.degree_bound
    }

    pub fn laurent_bound(&self) -> u32 {
        self.laurent_bound
    }

    pub fn convention(&self) -> GradingConvention {
        self.convention
    }

    pub fn with_convention(mut self, convention: GradingConvention) -> Self {
        self.convention = convention;
        self
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn is_series_var(&self, name: &str) -> bool {
        self.generator(name).map(|g| g.kind == GeneratorKind::PowerSeries).unwrap_or(false)
    }

    /// Truncation degree of a monomial: the sum of power-series exponents.
    pub fn series_degree(&self, m: &Monomial) -> i32 {
        m.pairs().iter().filter(|(s, _)| self.is_series_var(s)).map(|(_, e)| *e).sum()
    }

    /// Grading degree under the declared generator degrees.
    pub fn grading(&self, m: &Monomial) -> i32 {
        m.pairs().iter().map(|(s, e)| self.generator(s).map(|g| g.degree).unwrap_or(0) * e).sum()
    }

    /// Checks that a monomial is expressible in this ring.
    pub fn check_monomial(&self, m: &Monomial) -> Result<()> {
        for (s, e) in m.pairs() {
            if !self.has(s) {
                return Err(Error::UnknownGenerator(s.to_string(), self.name.clone()));
            }
            if *e < 0 {
                if !self.is_inverted(s) {
                    return Err(Error::NotInverted(s.to_string()));
                }
                if -*e > self.laurent_bound as i32 {
                    return Err(Error::LaurentBoundExceeded {
                        var: s.to_string(),
                        exponent: *e,
                        bound: self.laurent_bound,
                    });
                }
            }
        }
        Ok(())
    }

    /// Returns a copy with `gen` inverted. Inverting twice is a no-op.
    pub fn localize(&self, gen: &str) -> Result<Ring> {
        if !self.has(gen) {
            return Err(Error::UnknownGenerator(gen.to_string(), self.name.clone()));
        }
        let mut r = self.clone_shallow();
        r.inverted.insert(Sym::from(gen));
        // the lattice cache depends on the inverted set
        r.relations = Arc::new(RelationSet {
            relations: self.relations.relations.clone(),
            precision: self.relations.precision,
            support: self.relations.support.clone(),
            lattices: Mutex::new(HashMap::new()),
        });
        Ok(r)
    }

    /// Adjoins power-series variables, keeping relations (and their cache).
    pub fn adjoin(&self, name: impl Into<String>, vars: &[(Sym, i32)]) -> Result<Ring> {
        let mut gens = self.generators.clone();
        gens.extend(vars.iter().map(|(s, d)| GradedGenerator::series(s.clone(), *d)));
        let mut r = Ring::new(name, gens, self.degree_bound, self.laurent_bound)?;
        r.inverted = self.inverted.clone();
        r.relations = Arc::clone(&self.relations);
        r.convention = self.convention;
        Ok(r)
    }

    /// Installs relations, each known through series degree `precision`.
    pub fn with_relations(mut self, relations: Vec<Terms>, precision: u32) -> Result<Self> {
        let mut support = BTreeSet::new();
        for r in &relations {
            for m in r.keys() {
                self.check_monomial(m)?;
                support.extend(m.vars().cloned());
            }
        }
        self.relations = Arc::new(RelationSet { relations, precision, support, lattices: Mutex::new(HashMap::new()) });
        Ok(self)
    }

    fn clone_shallow(&self) -> Ring {
        Ring {
            name: self.name.clone(),
            generators: self.generators.clone(),
            index: self.index.clone(),
            inverted: self.inverted.clone(),
            relations: Arc::clone(&self.relations),
            degree_bound: self.degree_bound,
            laurent_bound: self.laurent_bound,
            convention: self.convention,
        }
    }

    /// Structural compatibility: same generators, inverted set and bounds.
    pub fn same_as(&self, other: &Ring) -> bool {
        std::ptr::eq(self, other)
            || (self.generators == other.generators
                && self.inverted == other.inverted
                && self.degree_bound == other.degree_bound
                && self.laurent_bound == other.laurent_bound
                && Arc::ptr_eq(&self.relations, &other.relations))
    }
}
