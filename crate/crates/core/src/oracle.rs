//! Exhaustive ground truth for small instances.
//!
//! Attainable objective values are enumerated through column-sum vectors `x`
//! (every `x` with `x ≺ r*` is realized by some matrix), then compared under
//! majorization by plain pairwise checks. Nothing here shares code with the
//! greedy solvers beyond the vector primitives.

use std::collections::{BTreeSet, HashSet};

use serde::Serialize;
use serde_json::{json, Value};

use crate::completion::{feasible_min_remaining, BitMatrix, LineSums};
use crate::error::{Error, Result};
use crate::instance::{Instance, Variant};
use crate::lattice::{covers, join, lower_covers, meet, LatticePair};
use crate::majcore::{
    compare, conjugate, equivalent, sort_desc, sort_desc_signed, sum_of_squares, Partition, Relation,
};
use crate::solvers::{enumerate_optima, peak_shave, solve, valley_fill, TiePolicy};

/// Size limits for exhaustive enumeration.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    pub max_n: usize,
    pub max_total: u128,
}

impl Default for Budget {
    fn default() -> Self {
        Self {
            max_n: 7,
            max_total: 14,
        }
    }
}

/// Feasible column-sum vectors and the objective values they produce.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AttainableSet {
    pub variant: Variant,
    /// Sorted lexicographically.
    pub column_sets: Vec<Vec<u64>>,
    /// `vectors[k]` is the objective for `column_sets[k]`.
    pub vectors: Vec<Vec<i64>>,
}

/// Enumerates every integer `x` with `sum(x) = sum(r)`, `x ≺ r*`, `x <= m`
/// and, for capped variants, `x <= c`.
pub fn enumerate_attainable(inst: &Instance, budget: Budget) -> Result<AttainableSet> {
    inst.validate()?;
    let n = inst.n();
    let m = inst.m() as u64;
    let total: u128 = inst.r.iter().map(|&v| v as u128).sum();
    if n > budget.max_n || total > budget.max_total {
        return Err(Error::BudgetExceeded(format!(
            "n = {n}, sum of row sums = {total}; limits are n <= {}, sum <= {}",
            budget.max_n, budget.max_total
        )));
    }
    let (upper, start, sign): (Vec<u64>, &[u64], i64) = match inst.variant {
        Variant::MinRemaining => (
            inst.field("ceiling")?.iter().map(|&c| c.min(m)).collect(),
            inst.field("ceiling")?,
            -1,
        ),
        Variant::MinCombined => (vec![m; n], inst.field("base")?, 1),
        Variant::GeneralMin => (
            inst.field("ceiling")?.iter().map(|&c| c.min(m)).collect(),
            inst.field("reference")?,
            -1,
        ),
        Variant::GeneralMax => (
            inst.field("ceiling")?.iter().map(|&c| c.min(m)).collect(),
            inst.field("base")?,
            1,
        ),
    };
    let mut column_sets = Vec::new();
    if inst.r.iter().all(|&v| v as usize <= n) {
        let rs = conjugate(&inst.r, n).expect("r[i] <= n");
        let mut x = vec![0u64; n];
        compositions(&upper, total as u64, 0, &mut x, &mut |x| {
            if compare(x, rs.parts(), Relation::Majorize).expect("equal lengths") {
                column_sets.push(x.to_vec());
            }
        });
    }
    let vectors = column_sets
        .iter()
        .map(|x| start.iter().zip(x).map(|(&s, &v)| s as i64 + sign * v as i64).collect())
        .collect();
    Ok(AttainableSet {
        variant: inst.variant,
        column_sets,
        vectors,
    })
}

/// Calls `f` on every `x` with `x[j] <= upper[j]` summing to `left` over positions `pos..`.
fn compositions(upper: &[u64], left: u64, pos: usize, x: &mut Vec<u64>, f: &mut dyn FnMut(&[u64])) {
    if pos == upper.len() {
        if left == 0 {
            f(x);
        }
        return;
    }
    let room: u64 = upper[pos + 1..].iter().sum();
    let lo = left.saturating_sub(room);
    for v in lo..=left.min(upper[pos]) {
        x[pos] = v;
        compositions(upper, left - v, pos + 1, x, f);
    }
    x[pos] = 0;
}

/// Nonincreasing prefix sums of a vector, the key for majorization checks.
fn prefix_key(v: &[i64]) -> Vec<i128> {
    let mut acc = 0i128;
    sort_desc_signed(v)
        .into_iter()
        .map(|e| {
            acc += e as i128;
            acc
        })
        .collect()
}

fn below(a: &[i128], b: &[i128]) -> bool {
    a.len() == b.len() && a.last() == b.last() && a.iter().zip(b).all(|(x, y)| x <= y)
}

fn check_family(vs: &[Vec<i64>]) -> Result<()> {
    let Some(first) = vs.first() else {
        return Err(Error::InvalidInput("the set of vectors is empty".into()));
    };
    match vs.iter().find(|v| v.len() != first.len()) {
        Some(v) => Err(Error::LengthMismatch {
            left: first.len(),
            right: v.len(),
        }),
        None => Ok(()),
    }
}

/// Members not strictly majorizing any other member.
pub fn minimal_elements(vs: &[Vec<i64>]) -> Result<Vec<Vec<i64>>> {
    check_family(vs)?;
    let keys: Vec<Vec<i128>> = vs.iter().map(|v| prefix_key(v)).collect();
    Ok(vs
        .iter()
        .enumerate()
        .filter(|&(i, _)| !keys.iter().any(|k| below(k, &keys[i]) && *k != keys[i]))
        .map(|(_, v)| v.clone())
        .collect())
}

/// Members majorized by every member.
pub fn least_elements(vs: &[Vec<i64>]) -> Result<Vec<Vec<i64>>> {
    check_family(vs)?;
    let keys: Vec<Vec<i128>> = vs.iter().map(|v| prefix_key(v)).collect();
    Ok(vs
        .iter()
        .enumerate()
        .filter(|&(i, _)| keys.iter().all(|k| below(&keys[i], k)))
        .map(|(_, v)| v.clone())
        .collect())
}

/// All partitions of `tau` into exactly `len` parts (zeros allowed), in
/// decreasing lexicographic order.
pub fn partitions(tau: u64, len: usize) -> Vec<Partition> {
    fn go(left: u64, max: u64, slots: usize, cur: &mut Vec<u64>, out: &mut Vec<Partition>) {
        if slots == 0 {
            if left == 0 {
                out.push(Partition::new(cur.clone()).expect("built nonincreasing"));
            }
            return;
        }
        // The remaining slots can hold at most slots * max.
        if (max as u128) * (slots as u128) < left as u128 {
            return;
        }
        for v in (0..=max.min(left)).rev() {
            cur.push(v);
            go(left - v, v, slots - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(tau, tau, len, &mut Vec::with_capacity(len), &mut out);
    out
}

fn dominated(a: &Partition, b: &Partition) -> bool {
    compare(a.parts(), b.parts(), Relation::Majorize).expect("equal lengths")
}

/// Greatest lower bound of `x` and `y` found by scanning `universe`.
pub fn brute_glb(x: &Partition, y: &Partition, universe: &[Partition]) -> Option<Partition> {
    let lower: Vec<&Partition> = universe.iter().filter(|z| dominated(z, x) && dominated(z, y)).collect();
    lower
        .iter()
        .find(|z| lower.iter().all(|w| dominated(w, z)))
        .map(|z| (*z).clone())
}

/// Least upper bound of `x` and `y` found by scanning `universe`.
pub fn brute_lub(x: &Partition, y: &Partition, universe: &[Partition]) -> Option<Partition> {
    let upper: Vec<&Partition> = universe.iter().filter(|z| dominated(x, z) && dominated(y, z)).collect();
    upper
        .iter()
        .find(|z| upper.iter().all(|w| dominated(z, w)))
        .map(|z| (*z).clone())
}

/// Every matrix with the given line sums, by row-wise backtracking.
pub fn backtrack_matrices(s: &LineSums, cap: u64) -> Result<Vec<BitMatrix>> {
    let (m, n) = (s.m(), s.n());
    let mut out = Vec::new();
    if s.r.iter().any(|&v| v as usize > n) {
        return Ok(out);
    }
    let mut demand = s.x.clone();
    let mut a = BitMatrix::zeros(m, n);
    fill_row(
        s,
        0,
        0,
        s.r.first().copied().unwrap_or(0),
        &mut demand,
        &mut a,
        &mut out,
        cap,
    )?;
    Ok(out)
}

#[allow(clippy::too_many_arguments)]
fn fill_row(
    s: &LineSums,
    i: usize,
    from: usize,
    left: u64,
    demand: &mut [u64],
    a: &mut BitMatrix,
    out: &mut Vec<BitMatrix>,
    cap: u64,
) -> Result<()> {
    let (m, n) = (s.m(), s.n());
    if i == m {
        if demand.iter().all(|&d| d == 0) {
            out.push(a.clone());
            if out.len() as u64 > cap {
                return Err(Error::CapExceeded { cap });
            }
        }
        return Ok(());
    }
    if left == 0 {
        // A column can take at most one unit per remaining row.
        let rows_after = (m - i - 1) as u64;
        if demand.iter().any(|&d| d > rows_after) {
            return Ok(());
        }
        let next = s.r.get(i + 1).copied().unwrap_or(0);
        return fill_row(s, i + 1, 0, next, demand, a, out, cap);
    }
    for j in from..n {
        if ((n - j) as u64) < left {
            break;
        }
        if demand[j] == 0 {
            continue;
        }
        demand[j] -= 1;
        a.set(i, j, true);
        fill_row(s, i, j + 1, left - 1, demand, a, out, cap)?;
        a.set(i, j, false);
        demand[j] += 1;
    }
    Ok(())
}

/// Outcome of one certified claim.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckStatus {
    Pass,
    Fail,
    NotApplicable,
}

/// One claim checked by [`certify`].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckRecord {
    pub id: &'static str,
    pub claim: &'static str,
    pub status: CheckStatus,
    pub witness: Value,
}

/// The full result of [`certify`], serialized as JSON by the CLI.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CertificationReport {
    pub variant: Variant,
    pub feasible: bool,
    pub checks: Vec<CheckRecord>,
}

impl CertificationReport {
    /// True when no check failed.
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != CheckStatus::Fail)
    }

    pub fn check(&self, id: &str) -> Option<&CheckRecord> {
        self.checks.iter().find(|c| c.id == id)
    }
}

const CLAIMS: [(&str, &str); 7] = [
    ("a", "all minimal attainable values are rearrangements of one another"),
    (
        "b",
        "the least canonical attainable value equals the solver's canonical objective under every tie policy",
    ),
    (
        "c",
        "the values reachable through tie choices are exactly the least attainable values",
    ),
    (
        "d",
        "meets and joins of sorted feasible column-sum vectors stay feasible",
    ),
    (
        "e",
        "the majorization feasibility test, the solver's sign check and exhaustive search agree",
    ),
    (
        "f",
        "the solver's objective minimizes the sum of squares over the attainable set",
    ),
    (
        "g",
        "some partition outside the canonical attainable set covers two members and is covered by two members",
    ),
];

fn record(id: &'static str, ok: Option<bool>, witness: Value) -> CheckRecord {
    let claim = CLAIMS.iter().find(|(k, _)| *k == id).expect("known claim").1;
    let status = match ok {
        Some(true) => CheckStatus::Pass,
        Some(false) => CheckStatus::Fail,
        None => CheckStatus::NotApplicable,
    };
    CheckRecord {
        id,
        claim,
        status,
        witness,
    }
}

/// Checks the structural claims about `inst` against exhaustive enumeration.
///
/// Supports `min_remaining` and `min_combined`. Claim `g` is a search: it
/// passes with a witness when a non-attainable common cover exists and is
/// not applicable otherwise.
pub fn certify(inst: &Instance, budget: Budget) -> Result<CertificationReport> {
    inst.validate()?;
    let (start, minus) = match inst.variant {
        Variant::MinRemaining => (inst.field("ceiling")?, true),
        Variant::MinCombined => (inst.field("base")?, false),
        other => {
            return Err(Error::InvalidInput(format!(
                "certification supports min_remaining and min_combined, not {}",
                other.as_str()
            )))
        }
    };
    let r = &inst.r;
    let n = start.len();
    let set = enumerate_attainable(inst, budget)?;
    let exhaustive = !set.column_sets.is_empty();

    let structural = r.iter().all(|&v| v as usize <= n);
    let test = if minus {
        feasible_min_remaining(start, r)
    } else {
        structural
    };
    let base = if !structural {
        None
    } else if minus {
        Some(peak_shave(start, r, TiePolicy::LowestIndex)?)
    } else {
        Some(valley_fill(start, r, TiePolicy::LowestIndex)?)
    };
    let sign = base.as_ref().is_some_and(|b| b.feasible);
    let mut checks = vec![record(
        "e",
        Some(test == exhaustive && sign == exhaustive),
        json!({ "majorization_test": test, "solver_nonnegative": sign, "exhaustive": exhaustive }),
    )];

    let Some(base) = base.filter(|_| exhaustive) else {
        for id in ["a", "b", "c", "d", "f", "g"] {
            checks.push(record(id, None, Value::Null));
        }
        checks.sort_by_key(|c| c.id);
        return Ok(CertificationReport {
            variant: inst.variant,
            feasible: false,
            checks,
        });
    };
    let vs = &set.vectors;

    // a: essential uniqueness of minimal elements.
    let minimal = minimal_elements(vs)?;
    let odd = minimal
        .iter()
        .find(|v| !equivalent(v, &minimal[0]).expect("equal lengths"));
    checks.push(record(
        "a",
        Some(odd.is_none()),
        json!({ "minimal_count": minimal.len(), "representative": minimal[0], "inequivalent": odd }),
    ));

    // b: least element equals the solver output for all policies.
    let least = least_elements(vs)?;
    let canonical = least.first().map(|v| sort_desc_signed(v));
    let mut mismatch = None;
    for p in TiePolicy::all_with_seeds(0..4) {
        let got = solve(inst, p)?.canonical_objective;
        if Some(&got) != canonical.as_ref() {
            mismatch = Some(json!({ "policy": p.to_string(), "canonical_objective": got }));
            break;
        }
    }
    checks.push(record(
        "b",
        Some(canonical.is_some() && mismatch.is_none()),
        json!({ "least": canonical, "mismatch": mismatch }),
    ));

    // c: tie enumeration reaches exactly the least elements.
    let reached: BTreeSet<Vec<i64>> = enumerate_optima(inst, 1_000_000)?
        .into_iter()
        .map(|o| o.objective)
        .collect();
    let expected: BTreeSet<Vec<i64>> = least.iter().cloned().collect();
    let missing: Vec<_> = expected.difference(&reached).collect();
    let extra: Vec<_> = reached.difference(&expected).collect();
    checks.push(record(
        "c",
        Some(missing.is_empty() && extra.is_empty()),
        json!({ "least_count": expected.len(), "missing": missing, "extra": extra }),
    ));

    // d: sorted feasible column vectors form a sublattice. The property is
    // stated for a nonincreasing start vector, so a sorted copy is used.
    checks.push(sublattice_check(inst, start, minus, budget)?);

    // f: sum-of-squares optimality.
    let best = vs.iter().map(|v| sum_of_squares(v)).min().expect("nonempty");
    let own = sum_of_squares(&base.objective);
    let attained = vs.contains(&base.objective);
    checks.push(record(
        "f",
        Some(attained && own == best),
        json!({ "solver": own.to_string(), "minimum": best.to_string(), "attained": attained }),
    ));

    // g: non-lattice witness search.
    checks.push(non_lattice_witness(vs));

    checks.sort_by_key(|c| c.id);
    Ok(CertificationReport {
        variant: inst.variant,
        feasible: true,
        checks,
    })
}

fn sublattice_check(inst: &Instance, start: &[u64], minus: bool, budget: Budget) -> Result<CheckRecord> {
    let sorted_start = sort_desc(start).into_vec();
    let sorted = if minus {
        Instance::min_remaining(sorted_start, inst.r.clone())
    } else {
        Instance::min_combined(sorted_start, inst.r.clone())
    };
    let xs: Vec<Partition> = enumerate_attainable(&sorted, budget)?
        .column_sets
        .into_iter()
        .filter_map(|x| Partition::new(x).ok())
        .collect();
    let members: HashSet<&Partition> = xs.iter().collect();
    for (i, x) in xs.iter().enumerate() {
        for y in &xs[i..] {
            let pair = LatticePair::new(x.clone(), y.clone())?;
            for (op, z) in [("meet", meet(&pair)), ("join", join(&pair))] {
                if !members.contains(&z) {
                    return Ok(record(
                        "d",
                        Some(false),
                        json!({ "x": x, "y": y, "operation": op, "result": z }),
                    ));
                }
            }
        }
    }
    Ok(record("d", Some(true), json!({ "sorted_feasible_count": xs.len() })))
}

fn non_lattice_witness(vs: &[Vec<i64>]) -> CheckRecord {
    // All attainable values here are nonnegative, so they are partitions.
    let canon: BTreeSet<Partition> = vs
        .iter()
        .map(|v| Partition::new(sort_desc_signed(v).into_iter().map(|e| e as u64).collect()).expect("sorted"))
        .collect();
    let mut tried = HashSet::new();
    let mut found = Vec::new();
    for u in &canon {
        for y in lower_covers(u) {
            if canon.contains(&y) || !tried.insert(y.clone()) {
                continue;
            }
            let above: Vec<&Partition> = canon.iter().filter(|z| covers(z, &y).unwrap_or(false)).collect();
            let below: Vec<Partition> = lower_covers(&y).into_iter().filter(|w| canon.contains(w)).collect();
            if above.len() >= 2 && below.len() >= 2 {
                found.push(json!({ "vector": y, "covered_by": above, "covers": below }));
            }
        }
    }
    if found.is_empty() {
        record("g", None, json!({ "canonical_count": canon.len() }))
    } else {
        record("g", Some(true), json!({ "witnesses": found }))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn appendix_style_column_sets() {
        let inst = Instance::min_remaining(vec![8, 6, 6, 6, 4, 4, 4], vec![4, 2]);
        let set = enumerate_attainable(&inst, Budget::default()).unwrap();
        assert!(set.column_sets.contains(&vec![1, 0, 1, 2, 0, 0, 2]));
        assert!(set.column_sets.contains(&vec![2, 0, 0, 1, 0, 1, 2]));
    }

    #[test]
    fn trivial_sets() {
        let set = enumerate_attainable(&Instance::min_combined(vec![0], vec![1]), Budget::default()).unwrap();
        assert_eq!(set.column_sets, vec![vec![1]]);
        assert_eq!(set.vectors, vec![vec![1]]);
    }

    #[test]
    fn shaving_minimal_elements() {
        let inst = Instance::min_remaining(vec![7, 6, 5, 4, 4], vec![4, 4, 3, 1, 1]);
        let set = enumerate_attainable(
            &inst,
            Budget {
                max_n: 7,
                max_total: 14,
            },
        )
        .unwrap();
        assert!(set.vectors.contains(&vec![3, 3, 3, 2, 2]));
        let minimal = minimal_elements(&set.vectors).unwrap();
        assert!(!minimal.is_empty());
        for v in &minimal {
            assert_eq!(sort_desc_signed(v), vec![3, 3, 3, 2, 2]);
        }
    }

    #[test]
    fn minimal_examples() {
        assert_eq!(minimal_elements(&[vec![2, 0], vec![1, 1]]).unwrap(), vec![vec![1, 1]]);
        assert_eq!(
            minimal_elements(&[vec![3, 0], vec![2, 1], vec![0, 3]]).unwrap(),
            vec![vec![2, 1]]
        );
        assert!(minimal_elements(&[]).is_err());
        assert!(minimal_elements(&[vec![1], vec![1, 0]]).is_err());
        assert_eq!(least_elements(&[vec![3, 0], vec![0, 3]]).unwrap().len(), 2);
    }

    #[test]
    fn budget_is_enforced() {
        let inst = Instance::min_combined(vec![0; 8], vec![1]);
        assert!(matches!(
            enumerate_attainable(&inst, Budget::default()),
            Err(Error::BudgetExceeded(_))
        ));
    }

    #[test]
    fn partition_counts() {
        // p(5) = 7, all fitting in 5 parts.
        assert_eq!(partitions(5, 5).len(), 7);
        assert_eq!(partitions(5, 2).len(), 3);
        assert_eq!(partitions(0, 3), vec![Partition::new(vec![0, 0, 0]).unwrap()]);
        assert!(partitions(3, 0).is_empty());
    }

    #[test]
    fn backtracking_counts() {
        let count = |r: &[u64], x: &[u64]| {
            backtrack_matrices(&LineSums::new(r.to_vec(), x.to_vec()), 1000)
                .unwrap()
                .len()
        };
        assert_eq!(count(&[2, 1], &[1, 1, 1]), 3);
        assert_eq!(count(&[2, 2, 1, 1], &[2, 2, 1, 1]), 34);
        assert_eq!(count(&[2], &[2, 0]), 0);
    }

    #[test]
    fn brute_bounds() {
        let u = partitions(11, 4);
        let x = Partition::new(vec![5, 2, 2, 2]).unwrap();
        let y = Partition::new(vec![4, 3, 3, 1]).unwrap();
        assert_eq!(brute_glb(&x, &y, &u).unwrap().parts(), &[4, 3, 2, 2]);
        assert_eq!(brute_lub(&x, &y, &u).unwrap().parts(), &[5, 3, 2, 1]);
    }

    #[test]
    fn certify_example_one() {
        let inst = Instance::min_remaining(vec![7, 6, 5, 4, 4], vec![4, 4, 3, 1, 1]);
        let report = certify(&inst, Budget::default()).unwrap();
        assert!(report.passed(), "{report:#?}");
        assert!(report.feasible);
        assert_eq!(report.checks.len(), 7);
    }

    #[test]
    fn certify_infeasible() {
        let report = certify(&Instance::min_remaining(vec![0, 0], vec![1]), Budget::default()).unwrap();
        assert!(report.passed());
        assert!(!report.feasible);
        assert_eq!(report.check("a").unwrap().status, CheckStatus::NotApplicable);
        assert_eq!(report.check("e").unwrap().status, CheckStatus::Pass);
    }
}
