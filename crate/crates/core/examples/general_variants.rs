//! Capped variants: a reference minus column sums under a ceiling, and the
//! maximizing counterpart (a heuristic that can miss the optimum).

use majpop::instance::Instance;
use majpop::majcore::majorized;
use majpop::oracle::{enumerate_attainable, Budget};
use majpop::solvers::{solve_general, TiePolicy};

fn main() -> majpop::Result<()> {
    let inst = Instance::general_min(vec![5, 4, 4, 3], vec![3, 4, 2, 3], vec![3, 2, 2]);
    let res = solve_general(&inst, TiePolicy::LowestIndex)?;
    println!("general_min: {:?}", res.objective);

    let inst = Instance::general_max(vec![4, 4, 2, 5, 3], vec![3, 3, 3, 3, 4], vec![2, 2, 4, 3, 2]);
    let res = solve_general(&inst, TiePolicy::LowestIndex)?;
    println!("general_max greedy: {:?}", res.objective);
    let set = enumerate_attainable(&inst, Budget::default())?;
    for v in &set.vectors {
        if majorized(&res.objective, v)? && !majorized(v, &res.objective)? {
            println!("  strictly more spread and attainable: {v:?}");
        }
    }
    Ok(())
}
