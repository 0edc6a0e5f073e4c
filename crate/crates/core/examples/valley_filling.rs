//! Fill the valleys of a base load and compare with the opposite ordering.

use majpop::solvers::{valley_fill, TiePolicy};

fn main() -> majpop::Result<()> {
    let b = [8, 6, 5, 2, 2];
    let r = [4, 3, 3, 2, 1];
    let res = valley_fill(&b, &r, TiePolicy::LoadOrder)?;
    println!("combined {:?}, sorted {:?}", res.objective, res.canonical_objective);
    let squares: i64 = res.objective.iter().map(|v| v * v).sum();
    println!("sum of squares {squares}");
    Ok(())
}
