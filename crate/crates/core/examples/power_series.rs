//! Truncated power series over a graded coefficient ring: arithmetic,
//! Laurent elements, parsing and compositional inversion.

use std::sync::Arc;

use fglforge::algebra::{compose, compositional_inverse, parse_series, GradedGenerator, Ring, Series};

fn main() -> fglforge::Result<()> {
    // Z[a][[x]] truncated at total series degree 6
    let ring = Arc::new(Ring::new(
        "Z[a][[x]]",
        vec![GradedGenerator::polynomial("a", 2), GradedGenerator::series("x", -2)],
        6,
        4,
    )?);
    let f = parse_series("x + a*x^2", &ring)?;
    println!("f        = {f}");
    println!("f^3      = {}", f.pow(3)?);

    let g = compositional_inverse(&f)?;
    println!("f^(-1)   = {g}");
    println!("f(f^-1)  = {}", compose(&f, "x", &g)?);

    // inverting a polynomial generator allows bounded negative powers
    let local = Arc::new(ring.localize("a")?);
    let a = Series::var(&local, "a")?;
    let a_inv = parse_series("a^-1", &local)?;
    println!("a * a^-1 = {}", a.mul(&a_inv)?);
    match parse_series("a^-9", &local) {
        Ok(s) => println!("unexpected: {s}"),
        Err(e) => println!("a^-9     : {e}"),
    }
    Ok(())
}
