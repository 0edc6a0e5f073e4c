use std::collections::{BTreeMap, HashSet};

use serde::{Deserialize, Serialize};

use super::{check_rows, threshold_split, to_signed};
use crate::completion::{feasible_min_remaining, BitMatrix};
use crate::error::{Error, Result};
use crate::instance::{Instance, Variant};

/// One optimal objective vector together with a matrix attaining it.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Optimum {
    pub objective: Vec<i64>,
    pub matrix: BitMatrix,
}

/// Every objective vector reachable by some tie resolution of peak shaving
/// (`min_remaining`) or valley filling (`min_combined`).
///
/// Explores all subsets of tied columns at every row, skipping states
/// (row, running vector) already seen. Fails with [`Error::CapExceeded`] once
/// more than `cap` states have been visited. The result is sorted by
/// objective.
pub fn enumerate_optima(inst: &Instance, cap: u64) -> Result<Vec<Optimum>> {
    inst.validate()?;
    let (start, largest) = match inst.variant {
        Variant::MinRemaining => {
            let c = inst.field("ceiling")?;
            check_rows(&inst.r, c.len())?;
            if !feasible_min_remaining(c, &inst.r) {
                return Err(Error::Infeasible("the ceiling cannot absorb the row sums".into()));
            }
            (c, true)
        }
        Variant::MinCombined => (inst.field("base")?, false),
        other => {
            return Err(Error::InvalidInput(format!(
                "enumeration supports min_remaining and min_combined, not {}",
                other.as_str()
            )))
        }
    };
    let n = start.len();
    check_rows(&inst.r, n)?;
    let running = to_signed(start, "converting the start vector to signed")?;
    let mut search = Search {
        r: &inst.r,
        n,
        delta: if largest { -1 } else { 1 },
        largest,
        cap,
        seen: HashSet::new(),
        found: BTreeMap::new(),
        running,
        matrix: BitMatrix::zeros(inst.r.len(), n),
    };
    search.visit(0)?;
    Ok(search
        .found
        .into_iter()
        .map(|(objective, matrix)| Optimum { objective, matrix })
        .collect())
}

struct Search<'a> {
    r: &'a [u64],
    n: usize,
    delta: i64,
    largest: bool,
    cap: u64,
    seen: HashSet<(usize, Vec<i64>)>,
    found: BTreeMap<Vec<i64>, BitMatrix>,
    running: Vec<i64>,
    matrix: BitMatrix,
}

impl Search<'_> {
    fn visit(&mut self, row: usize) -> Result<()> {
        if !self.seen.insert((row, self.running.clone())) {
            return Ok(());
        }
        if self.seen.len() as u64 > self.cap {
            return Err(Error::CapExceeded { cap: self.cap });
        }
        if row == self.r.len() {
            self.found
                .entry(self.running.clone())
                .or_insert_with(|| self.matrix.clone());
            return Ok(());
        }
        let k = self.r[row] as usize;
        let (mut beyond, mut tied) = (Vec::new(), Vec::new());
        let need = if k == 0 {
            0
        } else {
            threshold_split(
                &self.running,
                0..self.n,
                k,
                self.largest,
                &mut Vec::new(),
                &mut beyond,
                &mut tied,
            )
        };
        let mut pick: Vec<usize> = (0..need).collect();
        loop {
            let cols: Vec<usize> = beyond.iter().copied().chain(pick.iter().map(|&t| tied[t])).collect();
            self.apply(row, &cols, true);
            let outcome = self.visit(row + 1);
            self.apply(row, &cols, false);
            outcome?;
            if !next_combination(&mut pick, tied.len()) {
                return Ok(());
            }
        }
    }

    fn apply(&mut self, row: usize, cols: &[usize], forward: bool) {
        let step = if forward { self.delta } else { -self.delta };
        for &j in cols {
            self.running[j] += step;
            self.matrix.set(row, j, forward);
        }
    }
}

/// Advances `pick` (strictly increasing indices below `len`) to the next
/// combination in lexicographic order; false after the last one.
fn next_combination(pick: &mut [usize], len: usize) -> bool {
    let k = pick.len();
    for pos in (0..k).rev() {
        if pick[pos] < len - k + pos {
            pick[pos] += 1;
            for q in pos + 1..k {
                pick[q] = pick[q - 1] + 1;
            }
            return true;
        }
    }
    false
}
