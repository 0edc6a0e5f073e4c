//! Optimal (0,1)-matrix completion under majorization.
//!
//! Given row sums `r` and a ceiling `c` (or base `b`), choose a (0,1)-matrix
//! with those row sums whose column sums `x` make `c - x` (or `b + x`) as flat
//! as possible in the majorization order. Peak shaving and valley filling
//! solve both problems greedily in O(mn), and the optimum is unique up to
//! rearrangement.
//!
//! - [`majcore`]: sorting, majorization relations, partition conjugates.
//! - [`lattice`]: meet, join and covers in the dominance lattice.
//! - [`completion`]: Gale-Ryser feasibility, matrix construction, interchanges.
//! - [`solvers`]: the greedy solvers, tie policies and optimum enumeration.
//! - [`oracle`]: exhaustive enumeration and claim certification for small cases.
//! - [`cli`]: the `majpop` command line.
//!
//! ```
//! use majpop::solvers::{peak_shave, TiePolicy};
//!
//! let res = peak_shave(&[7, 6, 5, 4, 4], &[4, 4, 3, 1, 1], TiePolicy::LowestIndex).unwrap();
//! assert_eq!(res.canonical_objective, vec![3, 3, 3, 2, 2]);
//! assert!(res.feasible);
//! ```

pub mod cli;
pub mod completion;
pub mod error;
pub mod instance;
pub mod lattice;
pub mod majcore;
pub mod oracle;
pub mod solvers;

pub use completion::{BitMatrix, LineSums};
pub use error::{Error, Result};
pub use instance::{Instance, Variant};
pub use majcore::{Partition, Relation};
pub use solvers::{SolveResult, TiePolicy};
