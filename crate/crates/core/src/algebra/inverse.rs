use num_traits::One;

use super::map::RingMap;
use super::monomial::{Monomial, Sym};
use super::ring::Terms;
use super::series::Series;
use crate::error::{Error, Result};

/// Substitutes `var -> g` in `f`, leaving every other generator fixed.
pub fn compose(f: &Series, var: &str, g: &Series) -> Result<Series> {
    RingMap::new("compose", f.ring(), g.ring()).with_image(var, g.clone())?.apply(f)
}

/// The single power-series variable a univariate series is written in.
fn sole_series_var(f: &Series) -> Result<Sym> {
    let ring = f.ring();
    let vars: std::collections::BTreeSet<Sym> = f.variables().into_iter().filter(|v| ring.is_series_var(v)).collect();
    match vars.len() {
        1 => Ok(vars.into_iter().next().unwrap()),
        _ => Err(Error::NotUnivariate(f.to_string())),
    }
}

/// Compositional inverse of `f = x + (higher order)`, so that
/// `f(g(x)) = x = g(f(x))` through the truncation degree.
///
/// Solved degree by degree: if `f(g) = x + c*x^d + ...` then replacing `g` by
/// `g - c*x^d` clears degree `d` without disturbing lower degrees. Since the
/// linear coefficient is 1 no division occurs and the result is integral.
pub fn compositional_inverse(f: &Series) -> Result<Series> {
    let ring = f.ring();
    let x = sole_series_var(f)?;
    let xm = Monomial::var(x.clone());
    for (m, c) in f.terms() {
        let d = ring.series_degree(m);
        if d < 1 || (d == 1 && (m != &xm || !c.is_one())) {
            return Err(Error::LeadingCoefficient(f.to_string()));
        }
    }
    if !f.terms().get(&xm).map(|c| c.is_one()).unwrap_or(false) {
        return Err(Error::LeadingCoefficient(f.to_string()));
    }
    let mut g = Series::var(ring, &x)?;
    for d in 2..=ring.degree_bound() as i32 {
        let fg = compose(f, &x, &g)?;
        let mut fix = Terms::new();
        for (m, c) in fg.terms() {
            if ring.series_degree(m) == d {
                fix.insert(m.clone(), c.clone());
            }
        }
        if !fix.is_empty() {
            g = g.sub(&Series::from_terms(ring, fix)?)?;
        }
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::ring::{GradedGenerator, Ring};
    use crate::algebra::text::parse_series;
    use std::sync::Arc;

    fn ring(d: u32) -> Arc<Ring> {
        Arc::new(
            Ring::new(
                "Z[m1,m2][[x]]",
                vec![
                    GradedGenerator::polynomial("m1", 2),
                    GradedGenerator::polynomial("m2", 4),
                    GradedGenerator::series("x", -2),
                ],
                d,
                0,
            )
            .unwrap(),
        )
    }

    #[test]
    fn identity_inverts_to_itself() {
        let r = ring(5);
        let x = Series::var(&r, "x").unwrap();
        assert_eq!(compositional_inverse(&x).unwrap(), x);
    }

    #[test]
    fn catalan_signs() {
        let r = ring(5);
        let f = parse_series("x + x^2", &r).unwrap();
        let g = compositional_inverse(&f).unwrap();
        assert_eq!(g.to_string(), "x - x^2 + 2*x^3 - 5*x^4 + 14*x^5");
        assert_eq!(compose(&f, "x", &g).unwrap().to_string(), "x");
    }

    #[test]
    fn three_term_logarithm() {
        let r = ring(3);
        let f = parse_series("x + m1*x^2 + m2*x^3", &r).unwrap();
        let g = compositional_inverse(&f).unwrap();
        let expected = parse_series("x - m1*x^2 + 2*m1^2*x^3 - m2*x^3", &r).unwrap();
        assert_eq!(g, expected);
    }

    #[test]
    fn rejects_bad_leading_term() {
        let r = ring(3);
        assert!(matches!(
            compositional_inverse(&parse_series("2*x + x^2", &r).unwrap()),
            Err(Error::LeadingCoefficient(_))
        ));
        assert!(matches!(compositional_inverse(&parse_series("m1*x", &r).unwrap()), Err(Error::LeadingCoefficient(_))));
    }
}
