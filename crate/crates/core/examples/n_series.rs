//! `[n]_F x` for the additive, multiplicative and universal laws, and the
//! identity `[a]_F([b]_F x) = [ab]_F x`.

use fglforge::fgl::{FglKind, FormalGroupLaw};

fn main() -> fglforge::Result<()> {
    for kind in [FglKind::Additive, FglKind::Multiplicative, FglKind::Universal] {
        let fgl = FormalGroupLaw::new(kind, 4)?;
        println!("{kind}:");
        for n in [-1, 2, 3] {
            println!("  [{n}]_F x = {}", fgl.n_series_x(n)?);
        }
        let lhs = fgl.n_series(2, &fgl.n_series_x(3)?)?;
        let rhs = fgl.n_series_x(6)?;
        println!("  [2]([3]x) == [6]x : {}", lhs.same_terms(&rhs));
    }
    Ok(())
}
