use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Which way a row moves the running vector.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    /// Subtract one from the largest entries.
    Peak,
    /// Add one to the smallest entries.
    Valley,
}

/// What a tie breaker can see when a row has more tied candidates than slots.
#[derive(Debug, Clone, Copy)]
pub struct TieContext<'a> {
    /// Row index in the caller's row order.
    pub row: usize,
    pub direction: Direction,
    /// The running vector before this row is applied.
    pub running: &'a [i64],
    /// The starting vector (`c`, `b` or `d`).
    pub original: &'a [u64],
    /// Column sums of the rows processed so far.
    pub column_sums: &'a [u64],
}

/// Decides which tied columns a row takes.
///
/// `tied` arrives in increasing column order; after the call its first `take`
/// entries are the columns that receive a one.
pub trait TieBreaker {
    fn order(&mut self, ctx: &TieContext<'_>, tied: &mut [usize], take: usize);
}

impl<F> TieBreaker for F
where
    F: FnMut(&TieContext<'_>, &mut [usize], usize),
{
    fn order(&mut self, ctx: &TieContext<'_>, tied: &mut [usize], take: usize) {
        self(ctx, tied, take)
    }
}

/// The built-in tie rules.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind", content = "seed")]
pub enum TiePolicy {
    /// Uniform sampling without replacement, reproducible from the seed.
    UniformRandom(u64),
    LowestIndex,
    HighestIndex,
    /// Prefer columns that already carry more ones, then the larger original
    /// entry (peak) or smaller original entry (valley), then the lower index
    /// (peak) or higher index (valley).
    LoadOrder,
    /// [`TiePolicy::LoadOrder`] with every key reversed.
    LoadOrderReversed,
}

impl TiePolicy {
    /// All deterministic policies plus random ones for the given seeds.
    pub fn all_with_seeds(seeds: impl IntoIterator<Item = u64>) -> Vec<TiePolicy> {
        let mut out = vec![
            TiePolicy::LowestIndex,
            TiePolicy::HighestIndex,
            TiePolicy::LoadOrder,
            TiePolicy::LoadOrderReversed,
        ];
        out.extend(seeds.into_iter().map(TiePolicy::UniformRandom));
        out
    }

    /// A stateful breaker implementing this policy.
    pub fn breaker(self) -> PolicyBreaker {
        let rng = match self {
            TiePolicy::UniformRandom(seed) => Some(ChaCha8Rng::seed_from_u64(seed)),
            _ => None,
        };
        PolicyBreaker { policy: self, rng }
    }

    /// The CLI spelling, without the seed.
    pub fn name(self) -> &'static str {
        match self {
            TiePolicy::UniformRandom(_) => "random",
            TiePolicy::LowestIndex => "lowest-index",
            TiePolicy::HighestIndex => "highest-index",
            TiePolicy::LoadOrder => "load-order",
            TiePolicy::LoadOrderReversed => "load-order-reversed",
        }
    }

    /// Parses a CLI spelling; `seed` is used only by `random`.
    pub fn parse(name: &str, seed: u64) -> Result<Self> {
        Ok(match name {
            "random" | "uniform-random" => TiePolicy::UniformRandom(seed),
            "lowest-index" => TiePolicy::LowestIndex,
            "highest-index" => TiePolicy::HighestIndex,
            "load-order" => TiePolicy::LoadOrder,
            "load-order-reversed" => TiePolicy::LoadOrderReversed,
            other => {
                return Err(Error::InvalidInput(format!(
                    "unknown tie policy \"{other}\" (expected random, lowest-index, \
                     highest-index, load-order or load-order-reversed)"
                )))
            }
        })
    }
}

impl fmt::Display for TiePolicy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TiePolicy::UniformRandom(seed) => write!(f, "random({seed})"),
            other => f.write_str(other.name()),
        }
    }
}

impl FromStr for TiePolicy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        TiePolicy::parse(s, 0)
    }
}

/// [`TieBreaker`] for a [`TiePolicy`].
///
/// The random policy draws from ChaCha8 seeded with `seed_from_u64(seed)` and
/// runs a partial Fisher-Yates shuffle over the tied columns: for each slot
/// `s` in `0..take` it swaps position `s` with a uniform position in
/// `s..len`. The stream is shared by all rows of one solve.
#[derive(Debug, Clone)]
pub struct PolicyBreaker {
    policy: TiePolicy,
    rng: Option<ChaCha8Rng>,
}

impl TieBreaker for PolicyBreaker {
    fn order(&mut self, ctx: &TieContext<'_>, tied: &mut [usize], take: usize) {
        if take == 0 || take >= tied.len() {
            return;
        }
        match self.policy {
            TiePolicy::LowestIndex => {}
            TiePolicy::HighestIndex => tied.reverse(),
            TiePolicy::UniformRandom(_) => {
                let rng = self.rng.as_mut().expect("random policy owns an rng");
                let len = tied.len();
                for s in 0..take.min(len) {
                    let pick = rng.random_range(s..len);
                    tied.swap(s, pick);
                }
            }
            TiePolicy::LoadOrder | TiePolicy::LoadOrderReversed => {
                let reversed = self.policy == TiePolicy::LoadOrderReversed;
                let key = |j: usize| {
                    let load = ctx.column_sums[j] as i128;
                    let orig = ctx.original[j] as i128;
                    let idx = j as i128;
                    let k = match ctx.direction {
                        Direction::Peak => (-load, -orig, idx),
                        Direction::Valley => (-load, orig, -idx),
                    };
                    if reversed {
                        (-k.0, -k.1, -k.2)
                    } else {
                        k
                    }
                };
                tied.sort_by_key(|&j| key(j));
            }
        }
    }
}
