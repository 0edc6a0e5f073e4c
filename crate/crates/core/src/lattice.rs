//! The dominance-order lattice of integer partitions with a fixed sum and length.
//!
//! Meets come from pointwise minima of prefix sums. Joins cannot be read off
//! pointwise maxima (the maxima need not be concave), so two routes are
//! provided: the conjugate dual `join(x, y) = meet(x*, y*)*` and a direct
//! recursion that picks each part as the smallest value keeping every later
//! prefix sum above both inputs. They must agree.
//!
//! Note that the integer join can differ from the join in the real-valued
//! majorization lattice: for `[5 2 2 2]` and `[4 3 3 1]` the integer join is
//! `[5 3 2 1]` while the real one is `[5 2.5 2.5 1]`. Only the integer lattice
//! is implemented.

use crate::error::{check_len, Error, Result};
use crate::majcore::{conjugate, Partition};

/// Two partitions with equal sum and equal length.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticePair {
    x: Partition,
    y: Partition,
}

impl LatticePair {
    pub fn new(x: Partition, y: Partition) -> Result<Self> {
        check_len(x.len(), y.len())?;
        if x.tau() != y.tau() {
            return Err(Error::InvalidInput(format!(
                "lattice pair sums differ: {} vs {}",
                x.tau(),
                y.tau()
            )));
        }
        Ok(Self { x, y })
    }

    pub fn x(&self) -> &Partition {
        &self.x
    }

    pub fn y(&self) -> &Partition {
        &self.y
    }
}

/// Greatest lower bound in the dominance order.
pub fn meet(p: &LatticePair) -> Partition {
    let sx = p.x.prefix_sums();
    let sy = p.y.prefix_sums();
    let parts = (1..sx.len())
        .map(|k| {
            let hi = sx[k].min(sy[k]);
            let lo = sx[k - 1].min(sy[k - 1]);
            // Each step is bounded by max(x[k], y[k]), so it fits in u64.
            (hi - lo) as u64
        })
        .collect();
    Partition::new(parts).expect("prefix-min differences of partitions are nonincreasing")
}

/// Least upper bound via conjugates.
pub fn join(p: &LatticePair) -> Partition {
    let len = p.x.len();
    if p.x.tau() == 0 {
        return p.x.clone();
    }
    // Any dimension >= the largest part keeps the conjugate lossless.
    let dim = p.x.largest().max(p.y.largest()) as usize;
    let xs = conjugate(p.x.parts(), dim).expect("dim covers the largest part");
    let ys = conjugate(p.y.parts(), dim).expect("dim covers the largest part");
    let lower = meet(&LatticePair { x: xs, y: ys });
    // Parts of the meet are bounded by the number of nonzero parts of x or y.
    conjugate(lower.parts(), len).expect("meet of conjugates fits in the original length")
}

/// Least upper bound by the direct recursion.
///
/// `z[k]` is the smallest nonnegative integer `a` such that
/// `S_z(k-1) + j*a >= max(S_x(k-1+j), S_y(k-1+j))` for every `j = 1..=n-k+1`,
/// computed as a maximum of ceilings.
pub fn join_recursive(p: &LatticePair) -> Partition {
    let n = p.x.len();
    let sx = p.x.prefix_sums();
    let sy = p.y.prefix_sums();
    let upper: Vec<u128> = sx.iter().zip(&sy).map(|(&a, &b)| a.max(b)).collect();
    let mut parts = Vec::with_capacity(n);
    let mut acc = 0u128;
    for k in 1..=n {
        let mut alpha = 0u128;
        for j in 1..=(n - k + 1) {
            let need = upper[k - 1 + j].saturating_sub(acc);
            let j = j as u128;
            alpha = alpha.max(need.div_ceil(j));
        }
        acc += alpha;
        parts.push(alpha as u64);
    }
    Partition::new(parts).expect("recursive join is nonincreasing")
}

/// Whether `y` covers `x` in the dominance order on partitions of fixed length.
///
/// `x` must equal `y - e_i + e_j` for some `i < j` with `y[i] > y[j] + 1`, and
/// additionally either `j = i + 1` or `y[i] = y[j] + 2`. Without the second
/// condition some intermediate partition can sit strictly between the two.
pub fn covers(y: &Partition, x: &Partition) -> Result<bool> {
    check_len(y.len(), x.len())?;
    if y.tau() != x.tau() {
        return Err(Error::InvalidInput(format!(
            "covering needs equal sums: {} vs {}",
            y.tau(),
            x.tau()
        )));
    }
    let mut lost = None;
    let mut gained = None;
    for (k, (&a, &b)) in y.parts().iter().zip(x.parts()).enumerate() {
        match a as i128 - b as i128 {
            0 => {}
            1 if lost.is_none() => lost = Some(k),
            -1 if gained.is_none() => gained = Some(k),
            _ => return Ok(false),
        }
    }
    let (Some(i), Some(j)) = (lost, gained) else {
        return Ok(false);
    };
    let (yi, yj) = (y.parts()[i], y.parts()[j]);
    Ok(i < j && yi > yj + 1 && (j == i + 1 || yi == yj + 2))
}

/// All partitions covered by `y` (same length and sum).
pub fn lower_covers(y: &Partition) -> Vec<Partition> {
    let n = y.len();
    let mut out = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            let (yi, yj) = (y.parts()[i], y.parts()[j]);
            if !(yi > yj + 1 && (j == i + 1 || yi == yj + 2)) {
                continue;
            }
            let mut v = y.parts().to_vec();
            v[i] -= 1;
            v[j] += 1;
            if let Ok(x) = Partition::new(v) {
                out.push(x);
            }
        }
    }
    out
}
