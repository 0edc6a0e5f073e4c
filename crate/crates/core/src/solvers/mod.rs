//! Peak shaving, valley filling and their capped generalizations.
//!
//! Every solver processes rows one at a time. A row with sum `k` touches the
//! `k` largest (peak) or smallest (valley) entries of a running vector; only
//! the entries tied at the cutoff value are left to a [`TieBreaker`]. The
//! cutoff is found with a linear-time selection, so a solve costs O(mn).

mod enumerate;
mod general;
mod tie;

pub use enumerate::{enumerate_optima, Optimum};
pub use general::{solve_general, solve_general_with};
pub use tie::{Direction, PolicyBreaker, TieBreaker, TieContext, TiePolicy};

use serde::{Deserialize, Serialize};

use crate::completion::{feasible_min_remaining, BitMatrix};
use crate::error::{Error, Result};
use crate::instance::{Instance, Variant};
use crate::majcore::{sort_desc_signed, Partition};

/// Output of a solver run.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolveResult {
    /// For minus variants: every objective entry is nonnegative.
    pub feasible: bool,
    /// `c - x`, `d - x` or `b + x` in the original column order.
    pub objective: Vec<i64>,
    /// `objective` sorted into nonincreasing order.
    pub canonical_objective: Vec<i64>,
    pub matrix: BitMatrix,
}

/// Picks the `k` best entries among `cands`: the ones strictly beyond the
/// cutoff go to `beyond`, the ones equal to it to `tied` (both in candidate
/// order). Returns how many of `tied` are needed.
///
/// Requires `1 <= k <= cands.len()`.
pub(crate) fn threshold_split(
    running: &[i64],
    cands: impl Iterator<Item = usize> + Clone,
    k: usize,
    largest: bool,
    scratch: &mut Vec<i64>,
    beyond: &mut Vec<usize>,
    tied: &mut Vec<usize>,
) -> usize {
    scratch.clear();
    scratch.extend(cands.clone().map(|j| running[j]));
    let cutoff = if largest {
        *scratch.select_nth_unstable_by(k - 1, |a, b| b.cmp(a)).1
    } else {
        *scratch.select_nth_unstable(k - 1).1
    };
    beyond.clear();
    tied.clear();
    for j in cands {
        let v = running[j];
        if v == cutoff {
            tied.push(j);
        } else if (v > cutoff) == largest {
            beyond.push(j);
        }
    }
    k - beyond.len()
}

pub(crate) fn to_signed(v: &[u64], field: &'static str) -> Result<Vec<i64>> {
    v.iter()
        .map(|&e| i64::try_from(e).map_err(|_| Error::Overflow(field)))
        .collect()
}

pub(crate) fn check_rows(r: &[u64], n: usize) -> Result<()> {
    match r.iter().enumerate().find(|(_, &v)| v as u128 > n as u128) {
        Some((i, &v)) => Err(Error::Infeasible(format!(
            "row sum r[{i}] = {v} exceeds the column count {n}"
        ))),
        None => Ok(()),
    }
}

/// Shared row loop of Algorithms 1 and 2.
fn run_rows(
    start: &[u64],
    r: &[u64],
    direction: Direction,
    field: &'static str,
    tb: &mut dyn TieBreaker,
) -> Result<SolveResult> {
    let n = start.len();
    if n == 0 {
        return Err(Error::InvalidInput(format!(
            "field \"{field}\" must have at least one entry"
        )));
    }
    check_rows(r, n)?;
    let mut running = to_signed(start, "converting the start vector to signed")?;
    if direction == Direction::Valley {
        // b + m must stay representable.
        let top = running.iter().copied().max().unwrap_or(0);
        top.checked_add(r.len() as i64)
            .ok_or(Error::Overflow("adding row units to the base vector"))?;
    }
    let largest = direction == Direction::Peak;
    let delta = if largest { -1 } else { 1 };
    let mut matrix = BitMatrix::zeros(r.len(), n);
    let mut sums = vec![0u64; n];
    let (mut scratch, mut beyond, mut tied) = (Vec::new(), Vec::new(), Vec::new());
    for (i, &ri) in r.iter().enumerate() {
        let k = ri as usize;
        if k == 0 {
            continue;
        }
        if k == n {
            for j in 0..n {
                running[j] += delta;
                sums[j] += 1;
                matrix.set(i, j, true);
            }
            continue;
        }
        let need = threshold_split(&running, 0..n, k, largest, &mut scratch, &mut beyond, &mut tied);
        if need < tied.len() {
            let ctx = TieContext {
                row: i,
                direction,
                running: &running,
                original: start,
                column_sums: &sums,
            };
            tb.order(&ctx, &mut tied, need);
        }
        for &j in beyond.iter().chain(&tied[..need]) {
            running[j] += delta;
            sums[j] += 1;
            matrix.set(i, j, true);
        }
    }
    let feasible = direction == Direction::Valley || running.iter().all(|&v| v >= 0);
    Ok(SolveResult {
        feasible,
        canonical_objective: sort_desc_signed(&running),
        objective: running,
        matrix,
    })
}

/// Algorithm 1 with a built-in tie policy.
///
/// Infeasible instances (total demand beyond what `c` can give) still run to
/// completion; the result has negative entries and `feasible == false`.
pub fn peak_shave(c: &[u64], r: &[u64], policy: TiePolicy) -> Result<SolveResult> {
    peak_shave_with(c, r, &mut policy.breaker())
}

/// Algorithm 1 with a caller-supplied tie breaker.
pub fn peak_shave_with(c: &[u64], r: &[u64], tb: &mut dyn TieBreaker) -> Result<SolveResult> {
    run_rows(c, r, Direction::Peak, "ceiling", tb)
}

/// Algorithm 2 with a built-in tie policy.
pub fn valley_fill(b: &[u64], r: &[u64], policy: TiePolicy) -> Result<SolveResult> {
    valley_fill_with(b, r, &mut policy.breaker())
}

/// Algorithm 2 with a caller-supplied tie breaker.
pub fn valley_fill_with(b: &[u64], r: &[u64], tb: &mut dyn TieBreaker) -> Result<SolveResult> {
    run_rows(b, r, Direction::Valley, "base", tb)
}

fn to_partition(v: &[i64]) -> Partition {
    Partition::new(v.iter().map(|&e| e as u64).collect()).expect("canonical objective is sorted")
}

/// `c ⊖ r`: the least canonical value of `c - x` over feasible column sums.
pub fn ominus(c: &[u64], r: &[u64]) -> Result<Partition> {
    if !feasible_min_remaining(c, r) {
        return Err(Error::Infeasible(
            "the ceiling cannot absorb the row sums (c is not weakly supermajorized by r*)".into(),
        ));
    }
    Ok(to_partition(
        &peak_shave(c, r, TiePolicy::LowestIndex)?.canonical_objective,
    ))
}

/// `b ⊕ r`: the least canonical value of `b + x` over all column sums.
pub fn oplus(b: &[u64], r: &[u64]) -> Result<Partition> {
    Ok(to_partition(
        &valley_fill(b, r, TiePolicy::LowestIndex)?.canonical_objective,
    ))
}

/// Validates `inst` and dispatches to the matching solver.
pub fn solve(inst: &Instance, policy: TiePolicy) -> Result<SolveResult> {
    inst.validate()?;
    match inst.variant {
        Variant::MinRemaining => peak_shave(inst.field("ceiling")?, &inst.r, policy),
        Variant::MinCombined => valley_fill(inst.field("base")?, &inst.r, policy),
        Variant::GeneralMin | Variant::GeneralMax => solve_general(inst, policy),
    }
}
