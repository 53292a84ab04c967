//! The coefficient zigzag `R_0 → S_0 ← R_1 → ... ← R_n` for `G = Z/p^n`:
//! rings, maps, well-definedness certificates and compatible tuples.

use fglforge::efgl::{build_coefficient_zigzag, Position};
use fglforge::fgl::FglKind;

fn main() -> fglforge::Result<()> {
    let zz = build_coefficient_zigzag(2, 2, FglKind::Additive, 4, 2)?;
    for k in 0..=2 {
        let r = zz.ring(Position::R(k));
        let rels: Vec<String> = r.relation_set().relations().iter().map(fglforge::algebra::render_terms).collect();
        println!("{}: {} generators, relations [{}]", r.name(), r.generators().len(), rels.join(", "));
    }
    for m in zz.maps() {
        let status = if m.certificate.passes() { "certified" } else { "NOT well defined" };
        println!("{}: {} -> {} ({status})", m.map.label(), m.source, m.target);
    }
    println!("phi0(u[1]) = {}", zz.phi(0).map.image_of("u[1]")?);
    println!("phi1(u3)   = {}", zz.phi(1).map.image_of("u3")?);

    for j in 0..4 {
        let tuple = zz.euler_tuple(j)?;
        let shown: Vec<String> = tuple.iter().map(|s| s.to_string()).collect();
        println!("e({j}) = ({}) compatible: {}", shown.join(" | "), zz.pullback_compatible(&tuple)?);
    }
    Ok(())
}
