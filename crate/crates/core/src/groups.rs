//! Finite abelian groups, their subgroups, chains of subgroups, quotients
//! and characters.
//!
//! Elements and characters are residue tuples. A character `chi` pairs with
//! an element `g` by `<chi, g> = sum_i chi_i g_i (L / n_i) mod L`, where `L` is
//! the exponent of the group, so characters add componentwise.

use std::collections::{BTreeMap, HashSet};
use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest group order for which subgroups are enumerated.
pub const MAX_ORDER: u64 = 256;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Element(pub Vec<u64>);

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Character(pub Vec<u64>);

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_tuple(f, &self.0)
    }
}

impl fmt::Display for Character {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_tuple(f, &self.0)
    }
}

fn write_tuple(f: &mut fmt::Formatter<'_>, xs: &[u64]) -> fmt::Result {
    write!(f, "(")?;
    for (i, x) in xs.iter().enumerate() {
        if i > 0 {
            write!(f, ",")?;
        }
        write!(f, "{x}")?;
    }
    write!(f, ")")
}

/// `Z/n_1 x ... x Z/n_r`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FiniteAbelianGroup {
    orders: Vec<u64>,
}

/// Bitset over element indices of a group of order at most [`MAX_ORDER`].
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Mask([u64; 4]);

impl Mask {
    pub fn contains(&self, i: usize) -> bool {
        self.0[i / 64] >> (i % 64) & 1 == 1
    }

    fn insert(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    pub fn len(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn is_subset(&self, other: &Mask) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| a & !b == 0)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        (0..256).filter(move |&i| self.contains(i))
    }
}

/// A subgroup, stored as its element set plus a deterministic generating set.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subgroup {
    mask: Mask,
    generators: Vec<Element>,
}

impl Subgroup {
    pub fn order(&self) -> u64 {
        self.mask.len() as u64
    }

    pub fn mask(&self) -> &Mask {
        &self.mask
    }

    pub fn generators(&self) -> &[Element] {
        &self.generators
    }

    pub fn contains_index(&self, i: usize) -> bool {
        self.mask.contains(i)
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.mask.is_subset(&other.mask)
    }

    pub fn is_trivial(&self) -> bool {
        self.order() == 1
    }
}

impl fmt::Display for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.generators.is_empty() {
            return write!(f, "0");
        }
        for (i, g) in self.generators.iter().enumerate() {
            if i > 0 {
                write!(f, "+")?;
            }
            write!(f, "{g}")?;
        }
        Ok(())
    }
}

/// `H_1 < ... < H_k`, strictly increasing proper nontrivial subgroups. The
/// implicit ends are `H_0 = {0}` and `H_{k+1} = G`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct SubgroupChain {
    pub subgroups: Vec<Subgroup>,
}

impl SubgroupChain {
    pub fn len(&self) -> usize {
        self.subgroups.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subgroups.is_empty()
    }

    /// `[H_0, H_1, ..., H_k, G]`.
    pub fn tower(&self, g: &FiniteAbelianGroup) -> Result<Vec<Subgroup>> {
        let mut out = vec![g.trivial_subgroup()?];
        out.extend(self.subgroups.iter().cloned());
        out.push(g.full_subgroup()?);
        Ok(out)
    }

    pub fn render(&self) -> String {
        self.subgroups.iter().map(|h| h.to_string()).collect::<Vec<_>>().join(" < ")
    }
}

/// Result of `quotient(G, H)`: the quotient group with its projection.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub group: FiniteAbelianGroup,
    /// Row-vector change of basis: `g -> (g V)_i mod d_i` on the kept columns.
    basis: Vec<Vec<i64>>,
    kept: Vec<usize>,
}

impl Quotient {
    pub fn project(&self, g: &Element) -> Element {
        let r = g.0.len();
        Element(
            self.kept
                .iter()
                .zip(self.group.orders.iter())
                .map(|(&col, &d)| {
                    let s: i128 = (0..r).map(|i| g.0[i] as i128 * self.basis[i][col] as i128).sum();
                    s.rem_euclid(d as i128) as u64
                })
                .collect(),
        )
    }
}

impl FiniteAbelianGroup {
    pub fn new(orders: Vec<u64>) -> Result<Self> {
        if orders.is_empty() {
            return Err(Error::InvalidGroup("no cyclic factors".into()));
        }
        if orders.contains(&0) {
            return Err(Error::InvalidGroup("cyclic factor of order 0".into()));
        }
        orders
            .iter()
            .try_fold(1u64, |acc, &n| acc.checked_mul(n))
            .ok_or_else(|| Error::InvalidGroup("order overflows".into()))?;
        Ok(FiniteAbelianGroup { orders })
    }

    pub fn cyclic(n: u64) -> Result<Self> {
        Self::new(vec![n])
    }

    pub fn cyclic_orders(&self) -> &[u64] {
        &self.orders
    }

    pub fn order(&self) -> u64 {
        self.orders.iter().product()
    }

    /// Least common multiple of the cyclic orders.
    pub fn exponent(&self) -> u64 {
        self.orders.iter().fold(1, |a, b| a.lcm(b))
    }

    /// `Some((p, n))` if the group is `Z/p^n` with `p` prime and `n >= 1`,
    /// ignoring factors of order 1.
    pub fn as_cyclic_p_group(&self) -> Option<(u64, u32)> {
        let nontrivial: Vec<u64> = self.orders.iter().copied().filter(|&n| n > 1).collect();
        if nontrivial.len() != 1 {
            return None;
        }
        let m = nontrivial[0];
        let p = smallest_prime_factor(m);
        let mut n = 0;
        let mut r = m;
        while r.is_multiple_of(p) {
            r /= p;
            n += 1;
        }
        (r == 1).then_some((p, n))
    }

    pub fn element(&self, residues: &[i64]) -> Result<Element> {
        if residues.len() != self.orders.len() {
            return Err(Error::InvalidParameter(format!(
                "element has {} components, group has {}",
                residues.len(),
                self.orders.len()
            )));
        }
        Ok(Element(residues.iter().zip(&self.orders).map(|(&a, &n)| a.rem_euclid(n as i64) as u64).collect()))
    }

    pub fn zero(&self) -> Element {
        Element(vec![0; self.orders.len()])
    }

    pub fn add(&self, a: &Element, b: &Element) -> Element {
        Element(a.0.iter().zip(&b.0).zip(&self.orders).map(|((x, y), n)| (x + y) % n).collect())
    }

    pub fn neg(&self, a: &Element) -> Element {
        Element(a.0.iter().zip(&self.orders).map(|(x, n)| (n - x) % n).collect())
    }

    pub fn scale(&self, k: i64, a: &Element) -> Element {
        Element(
            a.0.iter()
                .zip(&self.orders)
                .map(|(&x, &n)| ((k as i128 * x as i128).rem_euclid(n as i128)) as u64)
                .collect(),
        )
    }

    /// Mixed-radix index; the first component is most significant, so index
    /// order is lexicographic order.
    pub fn index_of(&self, a: &Element) -> usize {
        a.0.iter().zip(&self.orders).fold(0usize, |acc, (&x, &n)| acc * n as usize + x as usize)
    }

    pub fn element_at(&self, mut i: usize) -> Element {
        let mut out = vec![0; self.orders.len()];
        for (slot, &n) in out.iter_mut().zip(&self.orders).rev() {
            *slot = (i % n as usize) as u64;
            i /= n as usize;
        }
        Element(out)
    }

    pub fn elements(&self) -> impl Iterator<Item = Element> + '_ {
        (0..self.order() as usize).map(move |i| self.element_at(i))
    }

    pub fn element_order(&self, a: &Element) -> u64 {
        a.0.iter().zip(&self.orders).fold(1, |acc, (&x, &n)| acc.lcm(&(n / x.gcd(&n))))
    }

    // ---- characters ----

    /// All characters, in lexicographic order.
    pub fn characters(&self) -> impl Iterator<Item = Character> + '_ {
        self.elements().map(|e| Character(e.0))
    }

    pub fn trivial_character(&self) -> Character {
        Character(vec![0; self.orders.len()])
    }

    pub fn character_add(&self, a: &Character, b: &Character) -> Character {
        Character(self.add(&Element(a.0.clone()), &Element(b.0.clone())).0)
    }

    pub fn character_neg(&self, a: &Character) -> Character {
        Character(self.neg(&Element(a.0.clone())).0)
    }

    /// `<chi, g>` as a residue modulo the exponent.
    pub fn pairing(&self, chi: &Character, g: &Element) -> u64 {
        let l = self.exponent();
        let s: u128 = chi
            .0
            .iter()
            .zip(&g.0)
            .zip(&self.orders)
            .map(|((&c, &x), &n)| c as u128 * x as u128 * (l / n) as u128)
            .sum();
        (s % l as u128) as u64
    }

    pub fn character_order(&self, chi: &Character) -> u64 {
        self.element_order(&Element(chi.0.clone()))
    }

    /// Values of `chi` on the elements of `h`, in index order.
    pub fn restrict(&self, chi: &Character, h: &Subgroup) -> Vec<u64> {
        h.mask.iter().map(|i| self.pairing(chi, &self.element_at(i))).collect()
    }

    pub fn vanishes_on(&self, chi: &Character, h: &Subgroup) -> bool {
        self.restrict(chi, h).iter().all(|&v| v == 0)
    }

    /// Characters of `G / lower`, read as characters of `G` vanishing on `lower`.
    pub fn characters_of_quotient(&self, lower: &Subgroup) -> Vec<Character> {
        self.characters().filter(|c| self.vanishes_on(c, lower)).collect()
    }

    /// Characters of `upper / lower` as restriction signatures on `upper`.
    pub fn subquotient_characters(&self, lower: &Subgroup, upper: &Subgroup) -> Result<Vec<Vec<u64>>> {
        if !lower.is_subgroup_of(upper) {
            return Err(Error::NotSubgroup(format!("{lower} is not contained in {upper}")));
        }
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        for c in self.characters_of_quotient(lower) {
            let sig = self.restrict(&c, upper);
            if seen.insert(sig.clone()) {
                out.push(sig);
            }
        }
        Ok(out)
    }

    /// Lexicographically least character of `G / lower` whose restriction to
    /// `upper` is `signature`.
    pub fn lift(&self, signature: &[u64], lower: &Subgroup, upper: &Subgroup) -> Result<Character> {
        if !lower.is_subgroup_of(upper) {
            return Err(Error::NotSubgroup(format!("{lower} is not contained in {upper}")));
        }
        self.characters()
            .find(|c| self.vanishes_on(c, lower) && self.restrict(c, upper) == signature)
            .ok_or_else(|| Error::InvalidParameter("signature is not a character of the subquotient".into()))
    }

    /// The set `R_j`: one lift to `G / H_j` of each nontrivial character of
    /// `H_{j+1} / H_j`, sorted.
    pub fn representatives(&self, chain: &SubgroupChain, j: usize) -> Result<Vec<Character>> {
        let tower = chain.tower(self)?;
        if j + 1 >= tower.len() {
            return Err(Error::IndexOutOfRange(format!("j = {j} for a chain of length {}", chain.len())));
        }
        let (lower, upper) = (&tower[j], &tower[j + 1]);
        let mut best: BTreeMap<Vec<u64>, Character> = BTreeMap::new();
        for c in self.characters() {
            if !self.vanishes_on(&c, lower) {
                continue;
            }
            let sig = self.restrict(&c, upper);
            if sig.iter().all(|&v| v == 0) {
                continue;
            }
            best.entry(sig).or_insert(c);
        }
        let mut out: Vec<Character> = best.into_values().collect();
        out.sort();
        Ok(out)
    }

    // ---- subgroups ----

    fn check_order(&self) -> Result<()> {
        if self.order() > MAX_ORDER {
            return Err(Error::OrderBound(self.order(), MAX_ORDER));
        }
        Ok(())
    }

    fn span_mask(&self, base: &Mask, g: &Element) -> Mask {
        let mut out = *base;
        let mut shift = g.clone();
        // H + <g> is the union of the cosets H + kg up to the first kg in H
        while !base.contains(self.index_of(&shift)) {
            for i in base.iter() {
                out.insert(self.index_of(&self.add(&self.element_at(i), &shift)));
            }
            shift = self.add(&shift, g);
        }
        out
    }

    fn subgroup_from_mask(&self, mask: Mask) -> Subgroup {
        // greedy generators in index order
        let mut span = Mask::default();
        span.insert(0);
        let mut generators = Vec::new();
        for i in mask.iter() {
            if !span.contains(i) {
                let e = self.element_at(i);
                span = self.span_mask(&span, &e);
                generators.push(e);
            }
        }
        Subgroup { mask, generators }
    }

    pub fn trivial_subgroup(&self) -> Result<Subgroup> {
        self.check_order()?;
        let mut m = Mask::default();
        m.insert(0);
        Ok(Subgroup { mask: m, generators: Vec::new() })
    }

    pub fn full_subgroup(&self) -> Result<Subgroup> {
        self.generated(&self.standard_generators())
    }

    fn standard_generators(&self) -> Vec<Element> {
        (0..self.orders.len())
            .map(|i| {
                let mut v = vec![0; self.orders.len()];
                v[i] = 1 % self.orders[i];
                Element(v)
            })
            .collect()
    }

    /// Subgroup generated by `gens`.
    pub fn generated(&self, gens: &[Element]) -> Result<Subgroup> {
        let mut mask = self.trivial_subgroup()?.mask;
        for g in gens {
            if g.0.len() != self.orders.len() {
                return Err(Error::InvalidParameter(format!("element {g} has the wrong arity")));
            }
            let g = Element(g.0.iter().zip(&self.orders).map(|(x, n)| x % n).collect());
            mask = self.span_mask(&mask, &g);
        }
        Ok(self.subgroup_from_mask(mask))
    }

    /// Checks that `mask` is closed under addition and contains 0.
    pub fn is_closed(&self, mask: &Mask) -> bool {
        mask.contains(0)
            && mask.iter().all(|i| {
                let a = self.element_at(i);
                mask.iter().all(|j| mask.contains(self.index_of(&self.add(&a, &self.element_at(j)))))
            })
    }

    /// Every subgroup exactly once, sorted by order and then element set.
    pub fn subgroups(&self) -> Result<Vec<Subgroup>> {
        self.check_order()?;
        let zero = self.trivial_subgroup()?.mask;
        let cyclic: Vec<Element> = self.elements().collect();
        let mut seen: HashSet<Mask> = HashSet::from([zero]);
        let mut frontier = vec![zero];
        while let Some(h) = frontier.pop() {
            for g in &cyclic {
                if h.contains(self.index_of(g)) {
                    continue;
                }
                let joined = self.span_mask(&h, g);
                if seen.insert(joined) {
                    frontier.push(joined);
                }
            }
        }
        let mut masks: Vec<Mask> = seen.into_iter().collect();
        masks.sort_by_key(|m| (m.len(), m.iter().collect::<Vec<_>>()));
        Ok(masks.into_iter().map(|m| self.subgroup_from_mask(m)).collect())
    }

    /// Every strictly increasing chain of proper nontrivial subgroups,
    /// including the empty chain, in depth-first order.
    pub fn chains(&self) -> Result<Vec<SubgroupChain>> {
        let inner: Vec<Subgroup> =
            self.subgroups()?.into_iter().filter(|h| !h.is_trivial() && h.order() != self.order()).collect();
        let mut out = vec![SubgroupChain::default()];
        let mut stack: Vec<Vec<usize>> = (0..inner.len()).rev().map(|i| vec![i]).collect();
        while let Some(path) = stack.pop() {
            let last = &inner[*path.last().unwrap()];
            out.push(SubgroupChain { subgroups: path.iter().map(|&i| inner[i].clone()).collect() });
            for k in (0..inner.len()).rev() {
                if inner[k].order() > last.order() && last.is_subgroup_of(&inner[k]) {
                    let mut next = path.clone();
                    next.push(k);
                    stack.push(next);
                }
            }
        }
        Ok(out)
    }

    pub fn chain(&self, subgroups: Vec<Subgroup>) -> Result<SubgroupChain> {
        for h in &subgroups {
            if h.is_trivial() || h.order() == self.order() {
                return Err(Error::NotSubgroup(format!("{h} is not a proper nontrivial subgroup")));
            }
        }
        for w in subgroups.windows(2) {
            if !(w[0].is_subgroup_of(&w[1]) && w[0].order() < w[1].order()) {
                return Err(Error::NotSubgroup(format!("{} is not strictly contained in {}", w[0], w[1])));
            }
        }
        Ok(SubgroupChain { subgroups })
    }

    /// `G / H` with its projection, via Smith normal form of the relation
    /// matrix `diag(n_i)` stacked on the generators of `H`.
    pub fn quotient(&self, h: &Subgroup) -> Result<Quotient> {
        if !self.is_closed(&h.mask) {
            return Err(Error::NotSubgroup(format!("{h} is not closed")));
        }
        let r = self.orders.len();
        let mut rows: Vec<Vec<i64>> =
            (0..r).map(|i| (0..r).map(|j| if i == j { self.orders[i] as i64 } else { 0 }).collect()).collect();
        rows.extend(h.generators.iter().map(|g| g.0.iter().map(|&x| x as i64).collect()));
        let (diag, v) = smith_diagonal(rows, r);
        let mut orders = Vec::new();
        let mut kept = Vec::new();
        for (i, d) in diag.iter().enumerate() {
            if *d != 1 {
                orders.push(*d as u64);
                kept.push(i);
            }
        }
        if orders.is_empty() {
            orders.push(1);
            kept.push(0);
        }
        Ok(Quotient { group: FiniteAbelianGroup { orders }, basis: v, kept })
    }

    /// Parses a subgroup given as generator tuples joined by `+`, e.g.
    /// `(2,0)+(0,1)`; `0` denotes the trivial subgroup.
    pub fn parse_subgroup(&self, text: &str) -> Result<Subgroup> {
        let t = text.trim();
        if t == "0" {
            return self.trivial_subgroup();
        }
        let mut gens = Vec::new();
        for part in t.split('+') {
            let p = part.trim();
            let inner = p
                .strip_prefix('(')
                .and_then(|s| s.strip_suffix(')'))
                .ok_or_else(|| parse_err(format!("expected a tuple like (1,0), found `{p}`")))?;
            let residues: Vec<i64> = inner
                .split(',')
                .map(|x| x.trim().parse::<i64>().map_err(|_| parse_err(format!("bad residue `{}`", x.trim()))))
                .collect::<Result<_>>()?;
            gens.push(self.element(&residues)?);
        }
        self.generated(&gens)
    }

    /// Parses `H_1 < H_2 < ...`; an empty string is the empty chain.
    pub fn parse_chain(&self, text: &str) -> Result<SubgroupChain> {
        if text.trim().is_empty() {
            return Ok(SubgroupChain::default());
        }
        let subgroups = text.split('<').map(|s| self.parse_subgroup(s)).collect::<Result<Vec<_>>>()?;
        self.chain(subgroups)
    }
}

fn parse_err(message: String) -> Error {
    Error::Parse { line: 1, column: 1, message }
}

fn smallest_prime_factor(n: u64) -> u64 {
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return d;
        }
        d += 1;
    }
    n
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && smallest_prime_factor(n) == n
}

/// Diagonal of the Smith form of `m` (rows x `cols`) and the column
/// transform `V`, i.e. `U m V = diag` for some unimodular `U`. Diagonal
/// entries are made nonnegative; entries of rank-deficient positions are 0.
fn smith_diagonal(mut m: Vec<Vec<i64>>, cols: usize) -> (Vec<i64>, Vec<Vec<i64>>) {
    let rows = m.len();
    let mut v: Vec<Vec<i64>> = (0..cols).map(|i| (0..cols).map(|j| (i == j) as i64).collect()).collect();
    let col_op = |m: &mut Vec<Vec<i64>>, v: &mut Vec<Vec<i64>>, a: usize, b: usize, k: i64| {
        // column a -= k * column b
        for row in m.iter_mut() {
            row[a] -= k * row[b];
        }
        for row in v.iter_mut() {
            row[a] -= k * row[b];
        }
    };
    let swap_cols = |m: &mut Vec<Vec<i64>>, v: &mut Vec<Vec<i64>>, a: usize, b: usize| {
        for row in m.iter_mut() {
            row.swap(a, b);
        }
        for row in v.iter_mut() {
            row.swap(a, b);
        }
    };
    let mut t = 0;
    while t < cols.min(rows) {
        // pivot: smallest nonzero |entry| in the lower-right block
        let mut pivot = None;
        for i in t..rows {
            for j in t..cols {
                if m[i][j] != 0 && pivot.is_none_or(|(pi, pj): (usize, usize)| m[i][j].abs() < m[pi][pj].abs()) {
                    pivot = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = pivot else { break };
        m.swap(t, pi);
        swap_cols(&mut m, &mut v, t, pj);
        let mut clean = true;
        for i in t + 1..rows {
            let k = m[i][t] / m[t][t];
            for j in 0..cols {
                m[i][j] -= k * m[t][j];
            }
            clean &= m[i][t] == 0;
        }
        for j in t + 1..cols {
            let k = m[t][j] / m[t][t];
            col_op(&mut m, &mut v, j, t, k);
            clean &= m[t][j] == 0;
        }
        if !clean {
            continue;
        }
        // divisibility: fold any non-multiple into row t and retry
        let mut bad = None;
        'outer: for i in t + 1..rows {
            for j in t + 1..cols {
                if m[i][j] % m[t][t] != 0 {
                    bad = Some(i);
                    break 'outer;
                }
            }
        }
        if let Some(i) = bad {
            for j in 0..cols {
                m[t][j] += m[i][j];
            }
            continue;
        }
        t += 1;
    }
    let diag = (0..cols).map(|i| if i < rows { m[i][i].abs() } else { 0 }).collect();
    (diag, v)
}

impl fmt::Display for FiniteAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.orders.iter().map(|n| format!("Z/{n}")).collect();
        f.write_str(&parts.join(" x "))
    }
}

/// `Z/4 x Z/2`, `Z/3^2`, whitespace-insensitive.
impl FromStr for FiniteAbelianGroup {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(parse_err("empty group literal".into()));
        }
        let mut orders = Vec::new();
        for factor in compact.split(['x', 'X', '×']) {
            let body =
                factor.strip_prefix("Z/").ok_or_else(|| parse_err(format!("expected `Z/n`, found `{factor}`")))?;
            let n = match body.split_once('^') {
                Some((p, e)) => {
                    let p: u64 = p.parse().map_err(|_| parse_err(format!("bad base `{p}`")))?;
                    let e: u32 = e.parse().map_err(|_| parse_err(format!("bad exponent `{e}`")))?;
                    p.checked_pow(e).ok_or_else(|| parse_err(format!("`{body}` overflows")))?
                }
                None => body.parse().map_err(|_| parse_err(format!("bad order `{body}`")))?,
            };
            orders.push(n);
        }
        FiniteAbelianGroup::new(orders)
    }
}
