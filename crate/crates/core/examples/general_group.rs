//! Local nodes for a non-cyclic group: `Q^j`, `T_j` and the top node for a
//! chain in `Z/2 x Z/2`, with their local checks.

use fglforge::efgl::build_general_nodes;
use fglforge::fgl::FglKind;
use fglforge::groups::FiniteAbelianGroup;
use fglforge::verify::{verify_general, DEFAULT_SEED};

fn main() -> fglforge::Result<()> {
    let g: FiniteAbelianGroup = "Z/2 x Z/2".parse()?;
    let chain = g.parse_chain("(1,0)")?;
    let nodes = build_general_nodes(&g, &chain, 1, FglKind::Additive, 3, 1, 2, &["x"])?;
    for node in [&nodes.q, &nodes.t, &nodes.top] {
        let ring = &node.coefficients;
        println!(
            "{}: {} components, {} generators, {} relations",
            node.label,
            node.components.len(),
            ring.generators().len(),
            ring.relation_set().relations().len()
        );
    }
    print!("{}", verify_general(&nodes, 3, 1, DEFAULT_SEED)?.render_text());
    Ok(())
}
