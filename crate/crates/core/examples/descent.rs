//! Pushing top-level coordinates `u_j b_j^(i)` down to `R_0` and checking
//! that they reassemble `x +_F [j]_F u`.

use fglforge::efgl::{DiagramOptions, EfglData};
use fglforge::fgl::FglKind;
use fglforge::verify::check_descent;

fn main() -> fglforge::Result<()> {
    let data = EfglData::build(2, 2, FglKind::Universal, 4, 2, DiagramOptions::default())?;
    let zz = data.zigzag();
    for i in 0..=1 {
        let d = zz.descend_to_r0(&zz.top_coordinate(3, i)?)?;
        println!("u3 b^({i}):");
        for s in &d.stages {
            println!("  {} -> {}", s.stage, s.value);
        }
    }
    print!("{}", check_descent(&data, 4)?.render_text());
    Ok(())
}
