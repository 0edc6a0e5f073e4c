//! Gale-Ryser feasibility, matrix construction and the interchange closure.

use majpop::completion::{construct_matrix, enumerate_matrices, gale_ryser_feasible, geth_vector};
use majpop::majcore::conjugate;
use majpop::{LineSums, Partition};

fn main() -> majpop::Result<()> {
    let s = LineSums::new(vec![3, 2, 1], vec![2, 2, 1, 1]);
    println!("r* = {}", conjugate(&s.r, s.n())?);
    println!("feasible: {}", gale_ryser_feasible(&s));
    println!("constructed:\n{}", construct_matrix(&s)?);
    println!(
        "{} matrices share these line sums",
        enumerate_matrices(&s, 10_000)?.len()
    );

    let bad = LineSums::new(vec![3, 1], vec![2, 2, 0]);
    println!("[3 1] / [2 2 0] feasible: {}", gale_ryser_feasible(&bad));

    let x = geth_vector(&[4, 3, 2], &Partition::new(vec![3, 3, 2])?)?;
    println!("sorted vector under [4 3 2] majorized by [3 3 2]: {x}");
    Ok(())
}
