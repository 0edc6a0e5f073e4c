//! Mean wall time of peak shaving on random instances as m doubles.

use majpop::cli::bench;
use majpop::TiePolicy;

fn main() -> majpop::Result<()> {
    let repeats = 5;
    let records = bench(&[250, 500, 1000, 2000], &[1000], repeats, 7, TiePolicy::LowestIndex)?;
    for chunk in records.chunks(repeats) {
        let mean = chunk.iter().map(|r| r.wall_time_ns).sum::<u128>() / repeats as u128;
        println!("m={:>5} n={:>5} {:>8.3} ms", chunk[0].m, chunk[0].n, mean as f64 / 1e6);
    }
    Ok(())
}
