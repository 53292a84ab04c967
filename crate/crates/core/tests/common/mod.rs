//! Independent oracles shared by the integration tests. Nothing here calls
//! into the library's own algorithms; results are compared against it.
#![allow(dead_code)]

pub mod corpus;

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

// ---------------------------------------------------------------- groups

/// Every abelian group of order `n`, as lists of cyclic prime-power orders.
pub fn abelian_groups_of_order(n: u64) -> Vec<Vec<u64>> {
    let mut per_prime: Vec<Vec<Vec<u64>>> = Vec::new();
    let mut m = n;
    let mut p = 2;
    while m > 1 {
        let mut e = 0;
        while m.is_multiple_of(p) {
            m /= p;
            e += 1;
        }
        if e > 0 {
            per_prime.push(partitions(e).into_iter().map(|part| part.iter().map(|&k| p.pow(k)).collect()).collect());
        }
        p += 1;
    }
    let mut out = vec![Vec::new()];
    for options in per_prime {
        out = out
            .into_iter()
            .flat_map(|prefix: Vec<u64>| {
                options.iter().map(move |o| {
                    let mut v = prefix.clone();
                    v.extend(o);
                    v
                })
            })
            .collect();
    }
    out.into_iter().map(|v| if v.is_empty() { vec![1] } else { v }).collect()
}

/// Partitions of `n` into nonincreasing parts.
pub fn partitions(n: u32) -> Vec<Vec<u32>> {
    fn go(n: u32, max: u32, acc: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if n == 0 {
            out.push(acc.clone());
            return;
        }
        for k in (1..=n.min(max)).rev() {
            acc.push(k);
            go(n - k, k, acc, out);
            acc.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

pub type Elem = Vec<u64>;
pub type SubgroupSet = BTreeSet<Elem>;

pub fn all_elements(orders: &[u64]) -> Vec<Elem> {
    let mut out = vec![Vec::new()];
    for &n in orders {
        out = out
            .into_iter()
            .flat_map(|v: Elem| {
                (0..n).map(move |a| {
                    let mut w = v.clone();
                    w.push(a);
                    w
                })
            })
            .collect();
    }
    out
}

fn add(orders: &[u64], a: &Elem, b: &Elem) -> Elem {
    a.iter().zip(b).zip(orders).map(|((x, y), n)| (x + y) % n).collect()
}

/// Closure of a set under addition.
pub fn closure(orders: &[u64], seed: &SubgroupSet) -> SubgroupSet {
    let mut set = seed.clone();
    set.insert(vec![0; orders.len()]);
    loop {
        let mut grown = set.clone();
        for a in &set {
            for b in &set {
                grown.insert(add(orders, a, b));
            }
        }
        if grown.len() == set.len() {
            return set;
        }
        set = grown;
    }
}

/// All subgroups by breadth-first joining of single elements.
pub fn brute_force_subgroups(orders: &[u64]) -> BTreeSet<SubgroupSet> {
    let elements = all_elements(orders);
    let trivial = closure(orders, &SubgroupSet::new());
    let mut found = BTreeSet::from([trivial.clone()]);
    let mut frontier = vec![trivial];
    while let Some(h) = frontier.pop() {
        for g in &elements {
            if h.contains(g) {
                continue;
            }
            let mut seed = h.clone();
            seed.insert(g.clone());
            let k = closure(orders, &seed);
            if found.insert(k.clone()) {
                frontier.push(k);
            }
        }
    }
    found
}

/// Number of chains `H_1 < ... < H_k` (k ≥ 0) of proper nontrivial
/// subgroups, as `1 + Σ_k 1ᵀ A^(k-1) 1` for the strict-inclusion matrix `A`.
pub fn chain_count_by_matrix_powers(subgroups: &BTreeSet<SubgroupSet>, order: usize) -> u128 {
    let inner: Vec<&SubgroupSet> = subgroups.iter().filter(|h| h.len() > 1 && h.len() < order).collect();
    let n = inner.len();
    let a: Vec<Vec<u128>> = (0..n)
        .map(|i| (0..n).map(|j| (inner[i].len() < inner[j].len() && inner[i].is_subset(inner[j])) as u128).collect())
        .collect();
    let mut total = 1u128;
    let mut v = vec![1u128; n];
    for _ in 0..=n {
        total += v.iter().sum::<u128>();
        v = (0..n).map(|j| (0..n).map(|i| v[i] * a[i][j]).sum()).collect();
        if v.iter().all(|&x| x == 0) {
            break;
        }
    }
    total
}

fn gaussian_binomial(n: u32, k: u32, q: u128) -> u128 {
    if k > n {
        return 0;
    }
    let mut num = 1u128;
    let mut den = 1u128;
    for i in 0..k {
        num *= q.pow(n - i) - 1;
        den *= q.pow(i + 1) - 1;
    }
    num / den
}

fn conjugate(part: &[u32]) -> Vec<u32> {
    let max = part.iter().copied().max().unwrap_or(0);
    (1..=max).map(|i| part.iter().filter(|&&x| x >= i).count() as u32).collect()
}

/// Birkhoff's count of the subgroups of an abelian `p`-group of type `λ`.
pub fn birkhoff_subgroup_count(p: u128, lambda: &[u32]) -> u128 {
    let lc = conjugate(lambda);
    let mut total = 0;
    // μ ⊆ λ: enumerate conjugates μ' with μ'_i ≤ λ'_i, nonincreasing
    fn rec(i: usize, lc: &[u32], prev: u32, acc: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if i == lc.len() {
            out.push(acc.clone());
            return;
        }
        for m in 0..=lc[i].min(prev) {
            acc.push(m);
            rec(i + 1, lc, m, acc, out);
            acc.pop();
        }
    }
    let mut mus = Vec::new();
    rec(0, &lc, u32::MAX, &mut Vec::new(), &mut mus);
    for mc in mus {
        let get = |v: &[u32], i: usize| v.get(i).copied().unwrap_or(0);
        let mut term = 1u128;
        for i in 0..lc.len() {
            let (l, m, m_next) = (lc[i], get(&mc, i), get(&mc, i + 1));
            term *= p.pow(m_next * (l - m)) * gaussian_binomial(l - m_next, m - m_next, p);
        }
        total += term;
    }
    total
}

/// Subgroup count of `⊕ Z/n_i` via Birkhoff per Sylow part.
pub fn birkhoff_count(orders: &[u64]) -> u128 {
    let mut by_prime: BTreeMap<u64, Vec<u32>> = BTreeMap::new();
    for &n in orders {
        let mut m = n;
        let mut p = 2;
        while m > 1 {
            let mut e = 0;
            while m % p == 0 {
                m /= p;
                e += 1;
            }
            if e > 0 {
                by_prime.entry(p).or_default().push(e);
            }
            p += 1;
        }
    }
    by_prime
        .into_iter()
        .map(|(p, mut lambda)| {
            lambda.sort_unstable_by(|a, b| b.cmp(a));
            birkhoff_subgroup_count(p as u128, &lambda)
        })
        .product()
}

// --------------------------------------------------- rational series oracle

/// Polynomials over Q in `m_1, m_2, ...`, keyed by exponent vectors.
pub type Poly = BTreeMap<Vec<u32>, BigRational>;

pub fn poly_const(c: i64) -> Poly {
    let mut p = Poly::new();
    if c != 0 {
        p.insert(Vec::new(), BigRational::from_integer(c.into()));
    }
    p
}

pub fn poly_m(i: usize) -> Poly {
    let mut e = vec![0; i];
    e[i - 1] = 1;
    Poly::from([(e, BigRational::one())])
}

fn norm(e: &[u32]) -> Vec<u32> {
    let mut e = e.to_vec();
    while e.last() == Some(&0) {
        e.pop();
    }
    e
}

pub fn poly_add(a: &Poly, b: &Poly) -> Poly {
    let mut out = a.clone();
    for (k, v) in b {
        let e = out.entry(k.clone()).or_insert_with(BigRational::zero);
        *e += v;
    }
    out.retain(|_, v| !v.is_zero());
    out
}

pub fn poly_mul(a: &Poly, b: &Poly) -> Poly {
    let mut out = Poly::new();
    for (ka, va) in a {
        for (kb, vb) in b {
            let len = ka.len().max(kb.len());
            let k: Vec<u32> = (0..len).map(|i| ka.get(i).unwrap_or(&0) + kb.get(i).unwrap_or(&0)).collect();
            let e = out.entry(norm(&k)).or_insert_with(BigRational::zero);
            *e += va * vb;
        }
    }
    out.retain(|_, v| !v.is_zero());
    out
}

pub fn poly_scale(a: &Poly, c: &BigRational) -> Poly {
    let mut out: Poly = a.iter().map(|(k, v)| (k.clone(), v * c)).collect();
    out.retain(|_, v| !v.is_zero());
    out
}

/// Univariate series `Σ c_k x^k`, `k ≤ deg`.
pub type USeries = Vec<Poly>;

pub fn useries_mul(a: &USeries, b: &USeries, deg: usize) -> USeries {
    let mut out = vec![Poly::new(); deg + 1];
    for (i, ai) in a.iter().enumerate() {
        for (j, bj) in b.iter().enumerate() {
            if i + j <= deg {
                out[i + j] = poly_add(&out[i + j], &poly_mul(ai, bj));
            }
        }
    }
    out
}

/// `[x^n] g = (1/n) [x^(n-1)] (x / f)^n` for `f = x + ...` (Lagrange).
pub fn lagrange_inverse(f: &USeries, deg: usize) -> USeries {
    // q = f / x = 1 + f_2 x + ..., h = 1/q by the geometric series
    let q: USeries = (0..deg).map(|k| f.get(k + 1).cloned().unwrap_or_default()).collect();
    let mut minus_tail = q.clone();
    minus_tail[0] = Poly::new();
    for c in minus_tail.iter_mut() {
        *c = poly_scale(c, &BigRational::from_integer((-1).into()));
    }
    let mut h = vec![Poly::new(); deg];
    h[0] = poly_const(1);
    let mut power = h.clone();
    for _ in 1..deg {
        power = useries_mul(&power, &minus_tail, deg - 1);
        h = h.iter().zip(&power).map(|(a, b)| poly_add(a, b)).collect();
    }
    let mut g = vec![Poly::new(); deg + 1];
    let mut hn = vec![poly_const(1)];
    for n in 1..=deg {
        hn = useries_mul(&hn, &h, deg - 1);
        let c = hn.get(n - 1).cloned().unwrap_or_default();
        g[n] = poly_scale(&c, &BigRational::new(BigInt::one(), BigInt::from(n)));
    }
    g
}

/// `a_{i,j}` of the universal law `exp(log x + log y)` with
/// `log x = x + Σ m_i x^(i+1)`, computed over Q. Keyed by `(i, j)`.
pub fn universal_coefficients(deg: usize) -> BTreeMap<(usize, usize), Poly> {
    let log: USeries = (0..=deg)
        .map(|k| match k {
            0 => Poly::new(),
            1 => poly_const(1),
            k => poly_m(k - 1),
        })
        .collect();
    let exp = lagrange_inverse(&log, deg);
    // bivariate L = log x + log y as map (i, j) -> coefficient
    type Bi = BTreeMap<(usize, usize), Poly>;
    let bmul = |a: &Bi, b: &Bi| -> Bi {
        let mut out = Bi::new();
        for ((i, j), u) in a {
            for ((k, l), v) in b {
                if i + j + k + l <= deg {
                    let e = out.entry((i + k, j + l)).or_default();
                    *e = poly_add(e, &poly_mul(u, v));
                }
            }
        }
        out
    };
    let mut l = Bi::new();
    for (k, c) in log.iter().enumerate().skip(1) {
        l.insert((k, 0), c.clone());
        l.insert((0, k), c.clone());
    }
    let mut f = Bi::new();
    let mut power: Bi = Bi::from([((0, 0), poly_const(1))]);
    for g in exp.iter().skip(1) {
        power = bmul(&power, &l);
        for (k, v) in &power {
            let e = f.entry(*k).or_default();
            *e = poly_add(e, &poly_mul(g, v));
        }
    }
    f.retain(|_, v| !v.is_empty());
    f
}

/// Renders an integral `Poly` as `(m-exponents) -> BigInt`, failing on
/// non-integral coefficients.
pub fn integral_terms(p: &Poly) -> Option<BTreeMap<Vec<u32>, BigInt>> {
    p.iter().map(|(k, v)| v.is_integer().then(|| (k.clone(), v.to_integer()))).collect()
}
