//! Orientation nodes and the comultiplication `Δ`: the classes
//! `x_L = x +_F [L]_F u`, their product, and the counit reconstruction.

use fglforge::algebra::Series;
use fglforge::efgl::{DiagramOptions, EfglData, Position};
use fglforge::fgl::FglKind;

fn main() -> fglforge::Result<()> {
    let data = EfglData::build(2, 1, FglKind::Additive, 4, 2, DiagramOptions::default())?;
    let borel = Position::R(0);
    for node in data.nodes().filter(|n| n.arity <= 2) {
        println!("{}: {} components", node.label(), node.components().len());
    }
    for l in 0..2 {
        println!("x_{l} = {}", data.x_class(borel, 0, l)?);
    }
    println!("ideal generator = {}", data.ideal_generator(borel)?);

    let ring = &data.node(borel, 1)?.components()[0].ring;
    let x = Series::var(ring, "x")?;
    let dx = data.apply(&data.delta(borel), &[0, 0], &x)?;
    println!("Δ(x) = {dx}");
    let rebuilt = data.apply(&data.epsilon(borel, 2, 1), &[0], &dx)?;
    println!("(ε_1 ⊗ 1)Δ(x) = {rebuilt}");

    // at the level-1 node the two factors live in separate components
    let top = Position::R(1);
    let x1 = data.node(top, 1)?.variable(&[1], 0)?;
    println!("Δ({x1}) at (1,0) = {}", data.apply(&data.delta(top), &[1, 0], &x1)?);
    Ok(())
}
