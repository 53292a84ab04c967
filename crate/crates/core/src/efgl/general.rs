//! Nodes for a general finite abelian group and a chain of subgroups.
//!
//! For a chain `S = {H_1 < ... < H_k}` and representative sets `R_0, ..., R_k`
//! the ring `A_S` is generated over the law's coefficients by Euler classes
//! `u_L` for `L` in every `R_i`, with `u_M` inverted for `M` outside `R_k`
//! and with coordinates `u_N^{(i)}` for `N` in `R_0`. The ideal `I_S` is
//! spanned by `u_{L1} +_F u_{L2} - (Σ_i)_F u_{M_i}` whenever
//! `L1 L2 = Π M_i` with `L1, L2` in some `R_j` (`j >= 1`) and every `M_i` in
//! `R_j ∐ ... ∐ R_k`; the number of factors is bounded by `B`.
//!
//! `Q_j` and `T_j` are built over `A_{H_j, S}` with the classes of `R_j`
//! adjoined subject to Euler additivity (inverted in `T_j`); `Q^k` is built
//! over `A_{G, S}` with Euler additivity on `R_k`.

use std::fmt;
use std::sync::Arc;

use crate::algebra::{GradedGenerator, Ring, Series, Sym, Terms};
use crate::error::{Error, Result};
use crate::fgl::{FglKind, FormalGroupLaw, SERIES_VAR_DEGREE};
use crate::groups::{Character, FiniteAbelianGroup, Subgroup, SubgroupChain};

/// Largest group order accepted here.
pub const MAX_GENERAL_ORDER: u64 = 64;

fn suffix(c: &Character) -> String {
    c.0.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("_")
}

/// Name of the Euler class `u_L`.
pub fn euler_name(c: &Character) -> Sym {
    format!("u_{}", suffix(c)).into()
}

/// Name of the coordinate `u_N^{(i)}`.
pub fn coordinate_name(c: &Character, i: u32) -> Sym {
    format!("un{i}_{}", suffix(c)).into()
}

/// A family of rings indexed by characters.
#[derive(Clone, Debug)]
pub struct GeneralNode {
    pub label: String,
    pub coefficients: Arc<Ring>,
    /// `(character, ring, adjoined variables)`.
    pub components: Vec<(Character, Arc<Ring>, Vec<Sym>)>,
}

pub struct GeneralNodes {
    pub group: FiniteAbelianGroup,
    pub chain: SubgroupChain,
    pub j: usize,
    pub fgl: Arc<FormalGroupLaw>,
    pub representatives: Vec<Vec<Character>>,
    pub q: GeneralNode,
    pub t: GeneralNode,
    pub top: GeneralNode,
}

impl fmt::Debug for GeneralNodes {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GeneralNodes")
            .field("group", &self.group.to_string())
            .field("chain", &self.chain.render())
            .field("j", &self.j)
            .finish()
    }
}

/// Everything needed to present `A_{H, S}` for `H = H_level`.
struct Presentation<'a> {
    group: &'a FiniteAbelianGroup,
    fgl: &'a FormalGroupLaw,
    reps: &'a [Vec<Character>],
    tower: &'a [Subgroup],
    degree: u32,
    laurent: u32,
    factor_bound: usize,
}

impl Presentation<'_> {
    fn precision(&self) -> u32 {
        self.degree + self.laurent
    }

    /// Generators and inverted names of `A_{H_level, S}` with the classes of
    /// `R_level` adjoined.
    fn generators(&self, level: usize) -> (Vec<GradedGenerator>, Vec<Sym>) {
        let mut gens: Vec<GradedGenerator> = self.fgl.generators().to_vec();
        let mut inverted = Vec::new();
        for (i, r) in self.reps.iter().enumerate().take(level + 1) {
            for c in r {
                gens.push(GradedGenerator::series(euler_name(c), SERIES_VAR_DEGREE));
                if i + 1 < level {
                    inverted.push(euler_name(c));
                }
            }
        }
        if level > 0 {
            for c in &self.reps[0] {
                for i in 1..=self.degree {
                    gens.push(GradedGenerator::polynomial(coordinate_name(c, i), 2 * i as i32 - 2));
                }
            }
        }
        (gens, inverted)
    }

    fn eq_on(&self, a: &Character, b: &Character, h: &Subgroup) -> bool {
        self.group.restrict(a, h) == self.group.restrict(b, h)
    }

    /// The representative in `R_level` with the same restriction to
    /// `H_{level+1}` as `c`, or `None` if `c` is trivial there.
    fn representative_of(&self, c: &Character, level: usize) -> Option<&Character> {
        let upper = &self.tower[level + 1];
        self.reps[level].iter().find(|r| self.eq_on(r, c, upper))
    }

    /// Relations of `I_{H_level, S}` plus Euler additivity on `R_level`,
    /// computed at the relation precision in `wide`.
    fn relations(&self, level: usize, wide: &Arc<Ring>) -> Result<Vec<Terms>> {
        let h = &self.tower[level];
        let var = |c: &Character| Series::var(wide, &euler_name(c));
        let mut out = Vec::new();
        for i in 1..level {
            let pool: Vec<&Character> = self.reps[i..level].iter().flatten().collect();
            for (a, l1) in self.reps[i].iter().enumerate() {
                for l2 in &self.reps[i][a..] {
                    let target = self.group.character_add(l1, l2);
                    let lhs = self.fgl.formal_sum(&var(l1)?, &var(l2)?)?;
                    for m in 1..=self.factor_bound {
                        for combo in multisets(pool.len(), m) {
                            let mut prod = self.group.trivial_character();
                            for &ix in &combo {
                                prod = self.group.character_add(&prod, pool[ix]);
                            }
                            if !self.eq_on(&prod, &target, h) {
                                continue;
                            }
                            let ms: Vec<Series> = combo.iter().map(|&ix| var(pool[ix])).collect::<Result<_>>()?;
                            let rhs = self.fgl.iterated_formal_sum(wide, &ms)?;
                            let rel = lhs.sub(&rhs)?;
                            if !rel.is_zero() {
                                out.push(rel.into_terms());
                            }
                        }
                    }
                }
            }
        }
        for (a, l) in self.reps[level].iter().enumerate() {
            for m in &self.reps[level][a..] {
                let sum = self.group.character_add(l, m);
                let rhs = match self.representative_of(&sum, level) {
                    Some(r) => var(r)?,
                    None => Series::zero(wide),
                };
                let rel = self.fgl.formal_sum(&var(l)?, &var(m)?)?.sub(&rhs)?;
                if !rel.is_zero() {
                    out.push(rel.into_terms());
                }
            }
        }
        Ok(out)
    }

    fn coefficient_ring(&self, label: &str, level: usize, invert_top: bool) -> Result<Arc<Ring>> {
        let (gens, mut inverted) = self.generators(level);
        if invert_top {
            inverted.extend(self.reps[level].iter().map(euler_name));
        }
        let wide = Arc::new(Ring::new(format!("{label}-wide"), gens.clone(), self.precision(), self.laurent)?);
        let rels = self.relations(level, &wide)?;
        let mut ring = Ring::new(label, gens, self.degree, self.laurent)?;
        for s in &inverted {
            ring = ring.localize(s)?;
        }
        Ok(Arc::new(ring.with_relations(rels, self.precision())?))
    }
}

/// Multisets of size `m` from `0..n`, as nondecreasing index lists.
fn multisets(n: usize, m: usize) -> Vec<Vec<usize>> {
    fn go(n: usize, m: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == m {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(n, m, i, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, m, 0, &mut Vec::new(), &mut out);
    out
}

/// Nontrivial characters of `h`, one lift each (lexicographically least).
fn nontrivial_characters(g: &FiniteAbelianGroup, h: &Subgroup) -> Vec<Character> {
    let mut seen = std::collections::BTreeMap::new();
    for c in g.characters() {
        let sig = g.restrict(&c, h);
        if sig.iter().any(|&v| v != 0) {
            seen.entry(sig).or_insert(c);
        }
    }
    let mut out: Vec<Character> = seen.into_values().collect();
    out.sort();
    out
}

fn node(label: &str, coefficients: &Arc<Ring>, chars: Vec<Character>, letters: &[&str]) -> Result<GeneralNode> {
    let mut components = Vec::new();
    for c in chars {
        let vars: Vec<Sym> = letters.iter().map(|l| Sym::from(format!("{l}_{}", suffix(&c)))).collect();
        let adj: Vec<(Sym, i32)> = vars.iter().map(|v| (v.clone(), SERIES_VAR_DEGREE)).collect();
        let ring = Arc::new(coefficients.adjoin(format!("{label}[{c}]"), &adj)?);
        components.push((c, ring, vars));
    }
    Ok(GeneralNode { label: label.to_string(), coefficients: Arc::clone(coefficients), components })
}

/// Builds `Q_j`, `T_j` and `Q^k` (with one adjoined variable per component;
/// `letters = ["y", "z"]` gives the tensor-square versions).
#[allow(clippy::too_many_arguments)]
pub fn build_general_nodes(
    group: &FiniteAbelianGroup,
    chain: &SubgroupChain,
    j: usize,
    kind: FglKind,
    degree: u32,
    laurent: u32,
    factor_bound: usize,
    letters: &[&str],
) -> Result<GeneralNodes> {
    if group.order() > MAX_GENERAL_ORDER {
        return Err(Error::OrderBound(group.order(), MAX_GENERAL_ORDER));
    }
    if degree < 2 {
        return Err(Error::InvalidParameter("truncation degree must be at least 2".into()));
    }
    let k = chain.len();
    if j > k {
        return Err(Error::IndexOutOfRange(format!("j = {j} for a chain of length {k}")));
    }
    let tower = chain.tower(group)?;
    let reps: Vec<Vec<Character>> = (0..=k).map(|i| group.representatives(chain, i)).collect::<Result<_>>()?;
    let fgl = FormalGroupLaw::new(kind, degree + laurent)?;
    let pres = Presentation { group, fgl: &fgl, reps: &reps, tower: &tower, degree, laurent, factor_bound };
    let qc = pres.coefficient_ring(&format!("Q{j}"), j, false)?;
    let tc = pres.coefficient_ring(&format!("T{j}"), j, true)?;
    let topc = pres.coefficient_ring(&format!("Q^{k}"), k, false)?;
    let q = node(&format!("Q{j}"), &qc, nontrivial_characters(group, &tower[j]), letters)?;
    let t = node(&format!("T{j}"), &tc, nontrivial_characters(group, &tower[j + 1]), letters)?;
    let top_vars: Vec<(Sym, i32)> = letters.iter().map(|l| (Sym::from(*l), SERIES_VAR_DEGREE)).collect();
    let top_ring = Arc::new(topc.adjoin(format!("Q^{k}[[{}]]", letters.join(",")), &top_vars)?);
    let top = GeneralNode {
        label: format!("Q^{k}"),
        coefficients: Arc::clone(&topc),
        components: vec![(group.trivial_character(), top_ring, letters.iter().map(|l| Sym::from(*l)).collect())],
    };
    Ok(GeneralNodes { group: group.clone(), chain: chain.clone(), j, fgl, representatives: reps, q, t, top })
}

impl GeneralNodes {
    /// Pairs `(L, M)` of `R_level` with `u_L +_F u_M ≢ u_{LM}` in `ring`.
    pub fn euler_additivity_failures(&self, ring: &Arc<Ring>, level: usize) -> Result<Vec<(Character, Character)>> {
        let tower = self.chain.tower(&self.group)?;
        let reps = &self.representatives[level];
        let mut failures = Vec::new();
        for l in reps {
            for m in reps {
                let sum = self.group.character_add(l, m);
                let upper = &tower[level + 1];
                let rhs = match reps.iter().find(|r| self.group.restrict(r, upper) == self.group.restrict(&sum, upper))
                {
                    Some(r) => Series::var(ring, &euler_name(r))?,
                    None => Series::zero(ring),
                };
                let lhs =
                    self.fgl.formal_sum(&Series::var(ring, &euler_name(l))?, &Series::var(ring, &euler_name(m))?)?;
                if !crate::algebra::equal_mod_relations(&lhs, &rhs)? {
                    failures.push((l.clone(), m.clone()));
                }
            }
        }
        Ok(failures)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::ideal_remainder;

    #[test]
    fn cyclic_prime_trivial_chain() {
        let g: FiniteAbelianGroup = "Z/3".parse().unwrap();
        let chain = SubgroupChain::default();
        let nodes = build_general_nodes(&g, &chain, 0, FglKind::Universal, 4, 2, 4, &["x"]).unwrap();
        assert_eq!(nodes.top.coefficients.relation_set().relations().len(), 3);
        assert!(nodes.q.components.is_empty());
        assert_eq!(nodes.t.components.len(), 2);
        let ring = &nodes.top.components[0].1;
        let u1 = Series::var(ring, "u_1").unwrap();
        assert!(ideal_remainder(&nodes.fgl.n_series(3, &u1).unwrap()).unwrap().is_none());
        assert!(nodes.euler_additivity_failures(&nodes.top.coefficients, 0).unwrap().is_empty());
    }

    #[test]
    fn klein_four_component_counts() {
        let g: FiniteAbelianGroup = "Z/2 x Z/2".parse().unwrap();
        let chain = g.parse_chain("(1,0)").unwrap();
        let nodes = build_general_nodes(&g, &chain, 1, FglKind::Additive, 3, 1, 2, &["x"]).unwrap();
        assert_eq!(nodes.q.components.len(), 1);
        assert_eq!(nodes.t.components.len(), 3);
        assert!(nodes.t.coefficients.is_inverted("u_0_1"));
        assert!(!nodes.q.coefficients.is_inverted("u_0_1"));
    }

    #[test]
    fn order_bound() {
        let g: FiniteAbelianGroup = "Z/128".parse().unwrap();
        let r = build_general_nodes(&g, &SubgroupChain::default(), 0, FglKind::Additive, 3, 1, 2, &["x"]);
        assert!(matches!(r, Err(Error::OrderBound(128, 64))));
    }
}
