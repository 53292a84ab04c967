//! Exact arithmetic kernel: presented graded rings, truncated power/Laurent
//! series with big-integer coefficients, ring maps, and equality modulo a
//! relation ideal at truncation.

mod inverse;
mod map;
mod membership;
mod monomial;
mod ring;
mod series;
mod text;

pub use inverse::{compose, compositional_inverse};
pub use map::RingMap;
pub use membership::{equal_mod_relations, ideal_remainder, Lattice};
pub use monomial::{Monomial, Sym};
pub use ring::{GeneratorKind, GradedGenerator, GradingConvention, RelationSet, Ring, Terms};
pub use series::Series;
pub use text::{parse_series, render_terms};

/// `localize(ring, gen)` as a free function.
pub fn localize(ring: &Ring, gen: &str) -> crate::error::Result<Ring> {
    ring.localize(gen)
}
