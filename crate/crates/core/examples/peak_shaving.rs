//! Shave a ceiling with row sums and show that every tie policy lands on the
//! same sorted remainder.

use majpop::solvers::{peak_shave, TiePolicy};

fn main() -> majpop::Result<()> {
    let c = [7, 6, 5, 4, 4];
    let r = [4, 4, 3, 1, 1];
    for policy in TiePolicy::all_with_seeds([1, 2]) {
        let res = peak_shave(&c, &r, policy)?;
        println!(
            "{:>22}: remaining {:?} sorted {:?}",
            policy.to_string(),
            res.objective,
            res.canonical_objective
        );
    }
    let res = peak_shave(&c, &r, TiePolicy::LowestIndex)?;
    println!("\nmatrix:\n{}", res.matrix);
    Ok(())
}
