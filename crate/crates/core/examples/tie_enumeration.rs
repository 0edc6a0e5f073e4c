//! Every objective vector reachable by some tie resolution.

use majpop::instance::Instance;
use majpop::solvers::enumerate_optima;

fn main() -> majpop::Result<()> {
    let inst = Instance::min_remaining(vec![7, 6, 5, 4, 4], vec![4, 4, 3, 1, 1]);
    let optima = enumerate_optima(&inst, 1_000_000)?;
    println!("{} distinct outcomes:", optima.len());
    for o in optima {
        println!("  {:?}", o.objective);
    }
    Ok(())
}
