//! Meet, join and covers in the dominance order on partitions.

use majpop::lattice::{covers, join, join_recursive, lower_covers, meet, LatticePair};
use majpop::Partition;

fn main() -> majpop::Result<()> {
    let pair = LatticePair::new(Partition::new(vec![5, 2, 2, 2])?, Partition::new(vec![4, 3, 3, 1])?)?;
    println!("meet {}", meet(&pair));
    println!("join {} (recursive {})", join(&pair), join_recursive(&pair));
    let y = Partition::new(vec![4, 2, 0])?;
    for x in lower_covers(&y) {
        println!("{y} covers {x}: {}", covers(&y, &x)?);
    }
    Ok(())
}
