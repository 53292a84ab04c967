//! The full verification suite, once on an honest diagram and once on each
//! deliberately corrupted fixture.

use fglforge::efgl::{DeltaCorruption, DiagramOptions, EfglData, EpsilonConvention};
use fglforge::fgl::FglKind;
use fglforge::verify::{verify_all, DEFAULT_SEED};

fn main() -> fglforge::Result<()> {
    let honest = EfglData::build(2, 2, FglKind::Universal, 5, 2, DiagramOptions::default())?;
    let report = verify_all(&honest, DEFAULT_SEED)?;
    println!("Z/4 universal: {} checks, all pass: {}", report.checks.len(), report.passed());

    let fixtures = [
        ("dropped Δ factor", 2, DiagramOptions { delta: DeltaCorruption::DropFactor, ..Default::default() }),
        ("flipped counit", 3, DiagramOptions { epsilon: EpsilonConvention::Minus, ..Default::default() }),
    ];
    for (name, p, opts) in fixtures {
        let data = EfglData::build(p, 1, FglKind::Additive, 4, 2, opts)?;
        let report = verify_all(&data, DEFAULT_SEED)?;
        println!("{name} (p = {p}): {} failures", report.failures().count());
        if let Some(check) = report.failures().next() {
            let w = check.witness.as_ref().expect("failures carry witnesses");
            println!("  {} @ {}: {} != {} in {}", check.name, check.location, w.lhs, w.rhs, w.ring);
        };
    }
    Ok(())
}
