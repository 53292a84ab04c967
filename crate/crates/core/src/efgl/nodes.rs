//! Orientation diagrams over the coefficient zigzag.
//!
//! A node of arity `A` at position `P` is the family of rings
//! `C_P[[s_1, ..., s_A]]` indexed by `(Z/N_P)^A`, where `C_P` is the
//! coefficient ring at `P` and `N_P` is `p^k` at `R_k`, `p^{k+1}` at `S_k` and
//! `p^n` at the top. Arity 1 is `R`, arity 2 is `R ⊗ R` and arity 3 the triple
//! tensor used for coassociativity; arity 0 is the coefficient ring itself.
//!
//! Every structure map (`ψ`, `φ`, `Δ`, `Δ⊗1`, `1⊗Δ`, the swap) is given by a
//! grouping of target slots per source slot. At target component `a` it reads
//! source component `c_s = (Σ_{t in group(s)} a_t) mod N_src` and sends the
//! source variable of slot `s` to
//! `(Σ_{t in group(s)})_F target_t +_F e(c_s - Σ a_t)`, where `e(d)` is the
//! Euler class of `d` at the target position. Coefficients go through the
//! identity, or through `φ` for vertical maps.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex};

use serde::{Deserialize, Serialize};

use super::cyclic::{Position, ZigzagDiagram};
use crate::algebra::{Ring, RingMap, Series, Sym};
use crate::error::{Error, Result};
use crate::fgl::{FglKind, SERIES_VAR_DEGREE};

/// Deliberate corruptions used as negative controls for the verifier.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DeltaCorruption {
    #[default]
    None,
    /// Drop the last factor of every multi-slot formal sum in `Δ`.
    DropFactor,
}

/// Direction of the basepoint shift in the counit family.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EpsilonConvention {
    /// `ε_r` sends the evaluated variable to `e(c + r)`.
    #[default]
    Plus,
    /// `ε_r` sends it to `e(c - r)`.
    Minus,
}

impl EpsilonConvention {
    pub fn sign(self) -> i64 {
        match self {
            EpsilonConvention::Plus => 1,
            EpsilonConvention::Minus => -1,
        }
    }

    pub fn flipped(self) -> Self {
        match self {
            EpsilonConvention::Plus => EpsilonConvention::Minus,
            EpsilonConvention::Minus => EpsilonConvention::Plus,
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagramOptions {
    pub delta: DeltaCorruption,
    pub epsilon: EpsilonConvention,
}

/// Slot letters by arity.
pub fn slot_letters(arity: usize) -> &'static [&'static str] {
    match arity {
        0 => &[],
        1 => &["x"],
        2 => &["y", "z"],
        _ => &["y", "z", "t"],
    }
}

pub fn slot_variable(arity: usize, slot: usize, value: u64, modulus: u64) -> Sym {
    let letter = slot_letters(arity)[slot];
    if modulus == 1 {
        letter.into()
    } else {
        format!("{letter}{value}").into()
    }
}

#[derive(Clone, Debug)]
pub struct NodeComponent {
    pub index: Vec<u64>,
    pub ring: Arc<Ring>,
    pub variables: Vec<Sym>,
}

#[derive(Clone, Debug)]
pub struct DiagramNode {
    pub position: Position,
    pub arity: usize,
    pub modulus: u64,
    pub coefficients: Arc<Ring>,
    components: Vec<NodeComponent>,
}

impl DiagramNode {
    fn build(position: Position, arity: usize, modulus: u64, coefficients: &Arc<Ring>) -> Result<Self> {
        if arity > 3 {
            return Err(Error::InvalidParameter(format!("arity {arity} is not supported")));
        }
        let count = modulus.pow(arity as u32) as usize;
        let mut components = Vec::with_capacity(count);
        for flat in 0..count {
            let index = unflatten(flat, arity, modulus);
            if arity == 0 {
                components.push(NodeComponent { index, ring: Arc::clone(coefficients), variables: Vec::new() });
                continue;
            }
            let variables: Vec<Sym> =
                index.iter().enumerate().map(|(s, &v)| slot_variable(arity, s, v, modulus)).collect();
            let vars: Vec<(Sym, i32)> = variables.iter().map(|v| (v.clone(), SERIES_VAR_DEGREE)).collect();
            let label = format!("{position}[[{}]]", variables.iter().map(|v| v.as_str()).collect::<Vec<_>>().join(","));
            let ring = Arc::new(coefficients.adjoin(label, &vars)?);
            components.push(NodeComponent { index, ring, variables });
        }
        Ok(DiagramNode { position, arity, modulus, coefficients: Arc::clone(coefficients), components })
    }

    pub fn label(&self) -> String {
        format!("{}^{}", self.position, self.arity)
    }

    pub fn components(&self) -> &[NodeComponent] {
        &self.components
    }

    pub fn component(&self, index: &[u64]) -> Result<&NodeComponent> {
        if index.len() != self.arity || index.iter().any(|&v| v >= self.modulus) {
            return Err(Error::IndexOutOfRange(format!("component {index:?} of {}", self.label())));
        }
        Ok(&self.components[flatten(index, self.modulus)])
    }

    /// Slot variable `slot` of component `index`, as a series there.
    pub fn variable(&self, index: &[u64], slot: usize) -> Result<Series> {
        let c = self.component(index)?;
        Series::var(&c.ring, &c.variables[slot])
    }
}

fn flatten(index: &[u64], modulus: u64) -> usize {
    index.iter().fold(0usize, |acc, &v| acc * modulus as usize + v as usize)
}

fn unflatten(mut flat: usize, arity: usize, modulus: u64) -> Vec<u64> {
    let mut out = vec![0; arity];
    for slot in out.iter_mut().rev() {
        *slot = (flat % modulus as usize) as u64;
        flat /= modulus as usize;
    }
    out
}

/// Coefficient action of a structure map.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum CoefficientAction {
    Identity,
    Phi,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum MapKind {
    /// Target slots grouped per source slot.
    Structure { groups: Vec<Vec<usize>> },
    /// `ε_r` on slot 0: source component `(0, a...)` to target `(a...)`.
    Evaluate { r: i64 },
}

/// A map between nodes, given per target component.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct NodeMap {
    pub label: String,
    pub source: (Position, usize),
    pub target: (Position, usize),
    pub kind: MapKind,
    pub coefficients: CoefficientAction,
}

impl NodeMap {
    /// Source component read at `target_index`.
    pub fn route(&self, target_index: &[u64], source_modulus: u64) -> Vec<u64> {
        match &self.kind {
            MapKind::Structure { groups } => {
                groups.iter().map(|g| g.iter().map(|&t| target_index[t]).sum::<u64>() % source_modulus).collect()
            }
            MapKind::Evaluate { .. } => {
                let mut out = vec![0];
                out.extend_from_slice(target_index);
                out
            }
        }
    }
}

/// The packaged structures for `Z/p^n`: the coefficient zigzag and the
/// orientation diagrams of arity 0 to 3 over it.
pub struct EfglData {
    zigzag: Arc<ZigzagDiagram>,
    options: DiagramOptions,
    nodes: BTreeMap<(Position, usize), DiagramNode>,
    cache: Mutex<HashMap<(NodeMap, Vec<u64>), Arc<RingMap>>>,
}

impl fmt::Debug for EfglData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("EfglData").field("params", self.zigzag.params()).field("options", &self.options).finish()
    }
}

impl EfglData {
    pub fn build(p: u64, n: u32, kind: FglKind, degree: u32, laurent: u32, options: DiagramOptions) -> Result<Self> {
        let zz = super::cyclic::build_coefficient_zigzag(p, n, kind, degree, laurent)?;
        Self::from_zigzag(Arc::new(zz), options, 3)
    }

    /// Builds nodes of arity `0..=max_arity` at every position.
    pub fn from_zigzag(zigzag: Arc<ZigzagDiagram>, options: DiagramOptions, max_arity: usize) -> Result<Self> {
        let params = *zigzag.params();
        let mut nodes = BTreeMap::new();
        for pos in params.positions() {
            for arity in 0..=max_arity {
                let node = DiagramNode::build(pos, arity, params.modulus(pos), zigzag.ring(pos))?;
                nodes.insert((pos, arity), node);
            }
        }
        Ok(EfglData { zigzag, options, nodes, cache: Mutex::new(HashMap::new()) })
    }

    pub fn zigzag(&self) -> &Arc<ZigzagDiagram> {
        &self.zigzag
    }

    pub fn options(&self) -> DiagramOptions {
        self.options
    }

    pub fn nodes(&self) -> impl Iterator<Item = &DiagramNode> {
        self.nodes.values()
    }

    pub fn node(&self, pos: Position, arity: usize) -> Result<&DiagramNode> {
        self.nodes
            .get(&(pos, arity))
            .ok_or_else(|| Error::InvalidParameter(format!("no node of arity {arity} at {pos}")))
    }

    // ---- map descriptions ----

    fn structure(label: &str, pos: Position, from: usize, to: usize, groups: Vec<Vec<usize>>) -> NodeMap {
        NodeMap {
            label: format!("{label}@{pos}"),
            source: (pos, from),
            target: (pos, to),
            kind: MapKind::Structure { groups },
            coefficients: CoefficientAction::Identity,
        }
    }

    /// `Δ: R -> R ⊗ R` at `pos`.
    pub fn delta(&self, pos: Position) -> NodeMap {
        Self::structure("delta", pos, 1, 2, vec![vec![0, 1]])
    }

    /// `Δ ⊗ 1: R ⊗ R -> R ⊗ R ⊗ R`.
    pub fn delta_left(&self, pos: Position) -> NodeMap {
        Self::structure("delta_x_1", pos, 2, 3, vec![vec![0, 1], vec![2]])
    }

    /// `1 ⊗ Δ: R ⊗ R -> R ⊗ R ⊗ R`.
    pub fn delta_right(&self, pos: Position) -> NodeMap {
        Self::structure("1_x_delta", pos, 2, 3, vec![vec![0], vec![1, 2]])
    }

    /// Factor swap on `R ⊗ R`.
    pub fn swap(&self, pos: Position) -> NodeMap {
        Self::structure("swap", pos, 2, 2, vec![vec![1], vec![0]])
    }

    fn per_slot(arity: usize) -> Vec<Vec<usize>> {
        (0..arity).map(|s| vec![s]).collect()
    }

    /// `ψ_k` on the arity-`arity` nodes.
    pub fn psi(&self, k: u32, arity: usize) -> NodeMap {
        NodeMap {
            label: format!("psi{k}^{arity}"),
            source: (Position::R(k), arity),
            target: (Position::S(k), arity),
            kind: MapKind::Structure { groups: Self::per_slot(arity) },
            coefficients: CoefficientAction::Identity,
        }
    }

    /// `φ_k` on the arity-`arity` nodes.
    pub fn phi(&self, k: u32, arity: usize) -> NodeMap {
        NodeMap {
            label: format!("phi{k}^{arity}"),
            source: (Position::R(k + 1), arity),
            target: (Position::S(k), arity),
            kind: MapKind::Structure { groups: Self::per_slot(arity) },
            coefficients: CoefficientAction::Phi,
        }
    }

    /// `ε_r ⊗ 1`: evaluates slot 0 of the arity-`arity` node at basepoint `r`.
    pub fn epsilon(&self, pos: Position, arity: usize, r: i64) -> NodeMap {
        NodeMap {
            label: format!("epsilon{r}@{pos}^{arity}"),
            source: (pos, arity),
            target: (pos, arity - 1),
            kind: MapKind::Evaluate { r },
            coefficients: CoefficientAction::Identity,
        }
    }

    // ---- application ----

    /// Euler class of `d` at `pos`.
    pub fn euler(&self, pos: Position, d: i64) -> Result<Series> {
        self.zigzag.euler(pos, d)
    }

    /// `x_j = x_c +_F e(j)` in component `c` of the arity-1 node at `pos`.
    pub fn x_class(&self, pos: Position, component: u64, j: i64) -> Result<Series> {
        let node = self.node(pos, 1)?;
        let x = node.variable(&[component], 0)?;
        let e = self.euler(pos, j)?.embed(x.ring())?;
        self.zigzag.fgl().formal_sum(&x, &e)
    }

    /// `∏_L x_L` over all characters, in component 0 of the arity-1 node.
    pub fn ideal_generator(&self, pos: Position) -> Result<Series> {
        let order = self.zigzag.params().order() as i64;
        let ring = Arc::clone(&self.node(pos, 1)?.components()[0].ring);
        let mut prod = Series::one(&ring);
        for l in 0..order {
            prod = prod.mul(&self.x_class(pos, 0, l)?)?;
        }
        Ok(prod)
    }

    /// The ring map of `map` at one target component, cached.
    pub fn ring_map(&self, map: &NodeMap, target_index: &[u64]) -> Result<Arc<RingMap>> {
        let key = (map.clone(), target_index.to_vec());
        if let Some(m) = self.cache.lock().unwrap().get(&key) {
            return Ok(Arc::clone(m));
        }
        let built = Arc::new(self.build_ring_map(map, target_index)?);
        self.cache.lock().unwrap().insert(key, Arc::clone(&built));
        Ok(built)
    }

    fn build_ring_map(&self, map: &NodeMap, target_index: &[u64]) -> Result<RingMap> {
        let src_node = self.node(map.source.0, map.source.1)?;
        let tgt_node = self.node(map.target.0, map.target.1)?;
        let tgt = tgt_node.component(target_index)?;
        let src_index = map.route(target_index, src_node.modulus);
        let src = src_node.component(&src_index)?;
        let mut rm = RingMap::new(format!("{}[{:?}]", map.label, target_index), &src.ring, &tgt.ring);
        if map.coefficients == CoefficientAction::Phi {
            let k = match map.target.0 {
                Position::S(k) => k,
                other => return Err(Error::InvalidParameter(format!("phi into {other}"))),
            };
            for (g, image) in self.zigzag.phi(k).map.images() {
                rm.set_image(g, image.embed(&tgt.ring)?)?;
            }
        }
        let fgl = self.zigzag.fgl();
        let tpos = map.target.0;
        match &map.kind {
            MapKind::Structure { groups } => {
                for (s, group) in groups.iter().enumerate() {
                    let mut slots: Vec<usize> = group.clone();
                    if self.options.delta == DeltaCorruption::DropFactor
                        && map.label.starts_with("delta")
                        && slots.len() > 1
                    {
                        slots.pop();
                    }
                    let vars: Vec<Series> =
                        slots.iter().map(|&t| Series::var(&tgt.ring, &tgt.variables[t])).collect::<Result<_>>()?;
                    let sum_a: i64 = group.iter().map(|&t| target_index[t] as i64).sum();
                    let shift = self.euler(tpos, src_index[s] as i64 - sum_a)?.embed(&tgt.ring)?;
                    let mut image = fgl.iterated_formal_sum(&tgt.ring, &vars)?;
                    if !shift.is_zero() {
                        image = fgl.formal_sum(&image, &shift)?;
                    }
                    rm.set_image(&src.variables[s], image)?;
                }
            }
            MapKind::Evaluate { r } => {
                let value = self.euler(tpos, self.options.epsilon.sign() * r)?.embed(&tgt.ring)?;
                rm.set_image(&src.variables[0], value)?;
                for s in 1..src.variables.len() {
                    rm.set_image(&src.variables[s], Series::var(&tgt.ring, &tgt.variables[s - 1])?)?;
                }
            }
        }
        Ok(rm)
    }

    /// Applies `map` at `target_index` to `f`, which must live in the routed
    /// source component.
    pub fn apply(&self, map: &NodeMap, target_index: &[u64], f: &Series) -> Result<Series> {
        self.ring_map(map, target_index)?.apply(f)
    }

    /// Source component that `map` reads at `target_index`.
    pub fn source_index(&self, map: &NodeMap, target_index: &[u64]) -> Result<Vec<u64>> {
        let src_node = self.node(map.source.0, map.source.1)?;
        Ok(map.route(target_index, src_node.modulus))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{equal_mod_relations, parse_series};

    fn additive(p: u64, n: u32) -> EfglData {
        EfglData::build(p, n, FglKind::Additive, 4, 2, DiagramOptions::default()).unwrap()
    }

    #[test]
    fn bottom_delta_is_the_law() {
        let e = EfglData::build(2, 1, FglKind::Universal, 4, 2, DiagramOptions::default()).unwrap();
        let pos = Position::R(0);
        let x = e.node(pos, 1).unwrap().variable(&[0], 0).unwrap();
        let d = e.apply(&e.delta(pos), &[0, 0], &x).unwrap();
        let rr = e.node(pos, 2).unwrap().components()[0].ring.clone();
        let y = Series::var(&rr, "y").unwrap();
        let z = Series::var(&rr, "z").unwrap();
        assert_eq!(d, e.zigzag().fgl().formal_sum(&y, &z).unwrap());
    }

    #[test]
    fn level_one_delta_additive() {
        let e = additive(2, 2);
        let pos = Position::R(1);
        let x0 = e.node(pos, 1).unwrap().variable(&[0], 0).unwrap();
        let d = e.apply(&e.delta(pos), &[1, 1], &x0).unwrap();
        assert_eq!(d.to_string(), "u[1] + y1 + z1");
        // -2u and u[1] agree modulo [2]u[1]
        let ring = e.node(pos, 2).unwrap().component(&[1, 1]).unwrap().ring.clone();
        let alt = parse_series("y1 + z1 - u[1]", &ring).unwrap();
        assert!(equal_mod_relations(&d, &alt).unwrap());
    }

    #[test]
    fn x_classes_additive() {
        let e = additive(2, 1);
        let pos = Position::R(0);
        assert_eq!(e.x_class(pos, 0, 0).unwrap().to_string(), "x");
        assert_eq!(e.x_class(pos, 0, 1).unwrap().to_string(), "u + x");
        assert_eq!(e.ideal_generator(pos).unwrap().to_string(), "u*x + x^2");
        let x2 = e.x_class(pos, 0, 2).unwrap();
        assert!(equal_mod_relations(&x2, &e.x_class(pos, 0, 0).unwrap()).unwrap());
    }

    #[test]
    fn counit_is_exact() {
        let e = additive(3, 1);
        let pos = Position::S(0);
        let node = e.node(pos, 1).unwrap();
        for b in 0..3u64 {
            let x = node.variable(&[b], 0).unwrap();
            let d = e.apply(&e.delta(pos), &[0, b], &x).unwrap();
            let back = e.apply(&e.epsilon(pos, 2, 0), &[b], &d).unwrap();
            assert_eq!(back, x);
        }
    }
}
