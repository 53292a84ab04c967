//! Subgroups, chains, characters and quotients of a finite abelian group.

use fglforge::groups::FiniteAbelianGroup;

fn main() -> fglforge::Result<()> {
    let g: FiniteAbelianGroup = "Z/4 x Z/2".parse()?;
    println!("G = {g}, |G| = {}, exponent {}", g.order(), g.exponent());

    let subgroups = g.subgroups()?;
    println!("{} subgroups:", subgroups.len());
    for h in &subgroups {
        println!("  {h} (order {})", h.order());
    }
    println!("{} chains of proper nontrivial subgroups", g.chains()?.len());

    let chain = g.parse_chain("(2,0) < (1,0)")?;
    let tower = chain.tower(&g)?;
    for j in 0..tower.len() - 1 {
        let reps: Vec<String> = g.representatives(&chain, j)?.iter().map(|c| c.to_string()).collect();
        println!("R_{j} = {{{}}}", reps.join(", "));
    }

    let q = g.quotient(&tower[1])?;
    println!("G / {} = {}", tower[1], q.group);
    Ok(())
}
