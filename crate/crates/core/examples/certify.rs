//! Brute-force certification of a small instance, including a set of
//! attainable values that is not closed under meet and join.

use majpop::instance::Instance;
use majpop::oracle::{certify, Budget};

fn main() -> majpop::Result<()> {
    let inst = Instance::min_remaining(vec![8, 6, 6, 6, 4, 4, 4], vec![4, 2]);
    let report = certify(&inst, Budget::default())?;
    for check in &report.checks {
        println!("({}) {:?}: {}", check.id, check.status, check.claim);
    }
    let g = report.check("g").expect("always reported");
    println!("\nwitness: {}", g.witness);
    Ok(())
}
