//! Coefficients of the universal formal group law in the logarithm
//! generators `m_i`, and the symmetry `a_{i,j} = a_{j,i}`.

use fglforge::fgl::FormalGroupLaw;

fn main() -> fglforge::Result<()> {
    let degree = std::env::args().nth(1).and_then(|d| d.parse().ok()).unwrap_or(5);
    let fgl = FormalGroupLaw::universal(degree)?;
    if let Some(log) = fgl.logarithm() {
        println!("log(x) = {log}");
    }
    for total in 2..=degree as i32 {
        for i in 1..total {
            let a = fgl.coefficient(i, total - i)?;
            assert!(a.same_terms(&fgl.coefficient(total - i, i)?));
            if i <= total - i {
                println!("a_{{{i},{}}} = {a}", total - i);
            }
        }
    }
    Ok(())
}
