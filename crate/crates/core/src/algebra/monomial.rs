use std::cmp::Ordering;
use std::fmt;

use smol_str::SmolStr;

/// Interned-ish variable name. Short names live inline.
pub type Sym = SmolStr;

/// A monomial: sorted `(variable, exponent)` pairs with no zero exponents.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<(Sym, i32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(name: impl Into<Sym>) -> Self {
        Monomial(vec![(name.into(), 1)])
    }

    pub fn var_pow(name: impl Into<Sym>, exp: i32) -> Self {
        if exp == 0 {
            Self::one()
        } else {
            Monomial(vec![(name.into(), exp)])
        }
    }

    /// Builds a monomial from arbitrary pairs, merging repeats and dropping zeros.
    pub fn from_pairs<I, S>(pairs: I) -> Self
    where
        I: IntoIterator<Item = (S, i32)>,
        S: Into<Sym>,
    {
        let mut v: Vec<(Sym, i32)> = pairs.into_iter().map(|(s, e)| (s.into(), e)).collect();
        v.sort_by(|a, b| a.0.cmp(&b.0));
        let mut out: Vec<(Sym, i32)> = Vec::with_capacity(v.len());
        for (s, e) in v {
            match out.last_mut() {
                Some(last) if last.0 == s => last.1 += e,
                _ => out.push((s, e)),
            }
        }
        out.retain(|(_, e)| *e != 0);
        Monomial(out)
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn pairs(&self) -> &[(Sym, i32)] {
        &self.0
    }

    pub fn exponent(&self, var: &str) -> i32 {
        self.0.binary_search_by(|(s, _)| s.as_str().cmp(var)).map(|i| self.0[i].1).unwrap_or(0)
    }

    /// Sum of all exponents.
    pub fn total_degree(&self) -> i32 {
        self.0.iter().map(|(_, e)| *e).sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let (a, b) = (&self.0, &other.0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    let e = a[i].1 + b[j].1;
                    if e != 0 {
                        out.push((a[i].0.clone(), e));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial(out)
    }

    pub fn pow(&self, k: i32) -> Monomial {
        if k == 0 {
            return Monomial::one();
        }
        Monomial(self.0.iter().map(|(s, e)| (s.clone(), e * k)).collect())
    }

    /// Splits into the part over `keep` variables and the rest.
    pub fn split<F: Fn(&str) -> bool>(&self, keep: F) -> (Monomial, Monomial) {
        let (a, b): (Vec<_>, Vec<_>) = self.0.iter().cloned().partition(|(s, _)| keep(s));
        (Monomial(a), Monomial(b))
    }

    /// Removes `var` entirely, returning its exponent and the remainder.
    pub fn remove(&self, var: &str) -> (i32, Monomial) {
        let mut rest = self.0.clone();
        match rest.binary_search_by(|(s, _)| s.as_str().cmp(var)) {
            Ok(i) => {
                let (_, e) = rest.remove(i);
                (e, Monomial(rest))
            }
            Err(_) => (0, Monomial(rest)),
        }
    }

    pub fn vars(&self) -> impl Iterator<Item = &Sym> {
        self.0.iter().map(|(s, _)| s)
    }
}

/// Graded lexicographic: total degree first, then [`lex`].
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_degree().cmp(&other.total_degree()).then_with(|| lex(&self.0, &other.0))
    }
}

/// Lexicographic with variables ordered by name: a larger exponent on the
/// first differing variable sorts first.
fn lex(a: &[(Sym, i32)], b: &[(Sym, i32)]) -> Ordering {
    let (mut i, mut j) = (0, 0);
    loop {
        match (a.get(i), b.get(j)) {
            (None, None) => return Ordering::Equal,
            (Some((_, ea)), None) => return if *ea > 0 { Ordering::Less } else { Ordering::Greater },
            (None, Some((_, eb))) => return if *eb > 0 { Ordering::Greater } else { Ordering::Less },
            (Some((sa, ea)), Some((sb, eb))) => match sa.cmp(sb) {
                Ordering::Less => return if *ea > 0 { Ordering::Less } else { Ordering::Greater },
                Ordering::Greater => return if *eb > 0 { Ordering::Greater } else { Ordering::Less },
                Ordering::Equal => {
                    if ea != eb {
                        return eb.cmp(ea);
                    }
                    i += 1;
                    j += 1;
                }
            },
        }
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for (i, (s, e)) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, "*")?;
            }
            if *e == 1 {
                write!(f, "{s}")?;
            } else {
                write!(f, "{s}^{e}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn merge_and_cancel() {
        let a = Monomial::from_pairs([("x", 2), ("u", -1)]);
        let b = Monomial::from_pairs([("u", 1), ("y", 1)]);
        let c = a.mul(&b);
        assert_eq!(c, Monomial::from_pairs([("x", 2), ("y", 1)]));
        assert_eq!(c.exponent("u"), 0);
        assert_eq!(c.to_string(), "x^2*y");
    }

    #[test]
    fn graded_order() {
        let x = Monomial::var("x");
        let xy = Monomial::from_pairs([("x", 1), ("y", 1)]);
        let y2 = Monomial::var_pow("y", 2);
        assert!(x < xy);
        assert!(xy < y2);
        assert!(Monomial::one() < x);
    }
}
