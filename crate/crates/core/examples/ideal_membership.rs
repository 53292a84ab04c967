//! Quotients by relations: deciding `f ≡ g` modulo an ideal at truncation.

use std::sync::Arc;

use fglforge::algebra::{equal_mod_relations, ideal_remainder, parse_series, GradedGenerator, Ring};

fn main() -> fglforge::Result<()> {
    let free = || Ring::new("Z[[u]]", vec![GradedGenerator::series("u", -2)], 6, 4);
    let relation = parse_series("4*u - 6*u^2", &Arc::new(free()?))?;
    // Z[[u]] / (4u - 6u^2)
    let ring = Arc::new(free()?.with_name("Z[[u]]/(4u-6u^2)").with_relations(vec![relation.into_terms()], 6)?);

    for (a, b) in [("4*u", "6*u^2"), ("8*u^2", "12*u^3"), ("2*u", "0")] {
        let (fa, fb) = (parse_series(a, &ring)?, parse_series(b, &ring)?);
        println!("{a:>6} == {b:<6} : {}", equal_mod_relations(&fa, &fb)?);
    }
    let f = parse_series("5*u + u^3", &ring)?;
    match ideal_remainder(&f)? {
        None => println!("{f} lies in the ideal"),
        Some(r) => println!("{f} reduces to {r}"),
    }
    Ok(())
}
