//! Capped variants: a reference vector `d` (or base `b`) drives the selection
//! while no column may receive more ones than its cap `c[j]`.
//!
//! Plain greedy selection can paint itself into a corner: taking the best
//! columns now may exhaust caps a later row needs. Rows are therefore
//! processed longest first, and each pick is accepted only if the row can
//! still be completed and the remaining rows still fit under the remaining
//! caps. When no pick is ever rejected, the minimizing variant with `d = c`
//! makes exactly the choices of plain peak shaving on the sorted rows.
//!
//! Among columns with equal values, the one with more spare capacity is
//! preferred, and the tie policy only separates equal caps.
//!
//! The minimizing variant returned the majorization-least value on every
//! instance checked against exhaustive search. The maximizing variant is a
//! heuristic: it follows the current largest entries and can under-use a
//! column whose large cap would have let it grow further (see the tests).

use super::{check_rows, threshold_split, to_signed, Direction, SolveResult, TieBreaker, TieContext, TiePolicy};
use crate::completion::{feasible_min_remaining, BitMatrix};
use crate::error::{Error, Result};
use crate::instance::{Instance, Variant};
use crate::majcore::sort_desc_signed;

/// Solves a `general_min` or `general_max` instance with a built-in policy.
pub fn solve_general(inst: &Instance, policy: TiePolicy) -> Result<SolveResult> {
    solve_general_with(inst, &mut policy.breaker())
}

/// Solves a `general_min` or `general_max` instance with a custom tie breaker.
pub fn solve_general_with(inst: &Instance, tb: &mut dyn TieBreaker) -> Result<SolveResult> {
    inst.validate()?;
    let (start, delta, direction) = match inst.variant {
        Variant::GeneralMin => (inst.field("reference")?, -1, Direction::Peak),
        Variant::GeneralMax => (inst.field("base")?, 1, Direction::Valley),
        other => {
            return Err(Error::InvalidInput(format!(
                "variant {} is not a capped variant",
                other.as_str()
            )))
        }
    };
    let caps = inst.field("ceiling")?;
    let r = &inst.r;
    let n = start.len();
    check_rows(r, n)?;
    if !feasible_min_remaining(caps, r) {
        return Err(Error::Infeasible(
            "column caps cannot absorb the row sums (c is not weakly supermajorized by r*)".into(),
        ));
    }
    let mut running = to_signed(start, "converting the start vector to signed")?;
    if delta > 0 {
        let top = running.iter().copied().max().unwrap_or(0);
        top.checked_add(r.len() as i64)
            .ok_or(Error::Overflow("adding row units to the base vector"))?;
    }

    let mut order: Vec<usize> = (0..r.len()).collect();
    order.sort_by_key(|&i| std::cmp::Reverse(r[i]));
    let sorted_r: Vec<u64> = order.iter().map(|&i| r[i]).collect();

    let mut cap_left = caps.to_vec();
    let mut sums = vec![0u64; n];
    let mut matrix = BitMatrix::zeros(r.len(), n);
    let (mut scratch, mut beyond, mut tied) = (Vec::new(), Vec::new(), Vec::new());

    for (step, &i) in order.iter().enumerate() {
        let k = r[i] as usize;
        if k == 0 {
            continue;
        }
        let eligible = (0..n).filter(|&j| cap_left[j] > 0);
        if eligible.clone().count() < k {
            return Err(Error::Invariant(format!("row {i} has fewer than {k} uncapped columns")));
        }
        let need = threshold_split(
            &running,
            eligible.clone(),
            k,
            true,
            &mut scratch,
            &mut beyond,
            &mut tied,
        );
        if need < tied.len() {
            let ctx = TieContext {
                row: i,
                direction,
                running: &running,
                original: start,
                column_sums: &sums,
            };
            tb.order(&ctx, &mut tied, need);
            // Among equal values keep the columns with more spare capacity
            // free; the policy only decides between equal caps.
            tied.sort_by_key(|&j| std::cmp::Reverse(cap_left[j]));
        }
        let mut pref: Vec<usize> = beyond.iter().chain(tied.iter()).copied().collect();
        let mut rest: Vec<usize> = eligible.filter(|j| !pref.contains(j)).collect();
        rest.sort_by_key(|&j| (std::cmp::Reverse(running[j]), std::cmp::Reverse(cap_left[j]), j));
        pref.extend(rest);

        let chosen = pick_row(&pref, k, &cap_left, &sorted_r[step + 1..])
            .ok_or_else(|| Error::Invariant(format!("row {i} found no cap-respecting completion")))?;
        for j in chosen {
            running[j] += delta;
            cap_left[j] -= 1;
            sums[j] += 1;
            matrix.set(i, j, true);
        }
    }
    let feasible = delta > 0 || running.iter().all(|&v| v >= 0);
    Ok(SolveResult {
        feasible,
        canonical_objective: sort_desc_signed(&running),
        objective: running,
        matrix,
    })
}

/// Scans `pref` in order and keeps each column for which the row can still be
/// finished from later candidates and the later rows `rest` still fit.
fn pick_row(pref: &[usize], k: usize, cap_left: &[u64], rest: &[u64]) -> Option<Vec<usize>> {
    let mut chosen = Vec::with_capacity(k);
    for (pos, &j) in pref.iter().enumerate() {
        if chosen.len() == k {
            break;
        }
        let more = k - chosen.len() - 1;
        let pool = &pref[pos + 1..];
        if pool.len() < more {
            return None;
        }
        // Completing with the largest remaining caps leaves the flattest cap
        // vector, which is the most accommodating one for later rows.
        let mut fill: Vec<usize> = pool.to_vec();
        fill.sort_by_key(|&q| (std::cmp::Reverse(cap_left[q]), q));
        let mut caps = cap_left.to_vec();
        for &q in chosen.iter().chain(std::iter::once(&j)).chain(&fill[..more]) {
            caps[q] -= 1;
        }
        if feasible_min_remaining(&caps, rest) {
            chosen.push(j);
        }
    }
    (chosen.len() == k).then_some(chosen)
}
