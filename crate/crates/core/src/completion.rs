//! Feasibility and construction for the class `A(r, x)` of (0,1)-matrices with
//! row sums `r` and column sums `x`.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{check_len, Error, Result};
use crate::majcore::{compare, conjugate, prefix_sums, sort_desc, Partition, Relation};

/// A dense m-by-n matrix with entries in {0, 1}.
///
/// Serializes as a JSON array of rows. An empty row list deserializes to a
/// 0-by-0 matrix, so round trips lose the column count of matrices without
/// rows.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(into = "Vec<Vec<u8>>", try_from = "Vec<Vec<u8>>")]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    data: Vec<u8>,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    /// Builds a matrix from rows, rejecting ragged input and entries outside {0, 1}.
    pub fn from_rows(rows: Vec<Vec<u8>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(rows.len() * cols);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != cols {
                return Err(Error::InvalidInput(format!(
                    "matrix row {i} has {} entries, expected {cols}",
                    row.len()
                )));
            }
            if let Some(&v) = row.iter().find(|&&v| v > 1) {
                return Err(Error::InvalidInput(format!(
                    "matrix row {i} contains {v}; entries must be 0 or 1"
                )));
            }
            data.extend_from_slice(row);
        }
        Ok(Self {
            rows: rows.len(),
            cols,
            data,
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> u8 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: bool) {
        self.data[i * self.cols + j] = v as u8;
    }

    pub fn row(&self, i: usize) -> &[u8] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<u8>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn row_sums(&self) -> Vec<u64> {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(|&v| v as u64).sum())
            .collect()
    }

    pub fn col_sums(&self) -> Vec<u64> {
        let mut out = vec![0u64; self.cols];
        for i in 0..self.rows {
            for (acc, &v) in out.iter_mut().zip(self.row(i)) {
                *acc += v as u64;
            }
        }
        out
    }
}

impl From<BitMatrix> for Vec<Vec<u8>> {
    fn from(m: BitMatrix) -> Self {
        m.to_rows()
    }
}

impl TryFrom<Vec<Vec<u8>>> for BitMatrix {
    type Error = Error;

    fn try_from(rows: Vec<Vec<u8>>) -> Result<Self> {
        BitMatrix::from_rows(rows)
    }
}

impl fmt::Display for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            for &v in self.row(i) {
                write!(f, "{v}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Prescribed row sums `r` (length m) and column sums `x` (length n).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LineSums {
    pub r: Vec<u64>,
    pub x: Vec<u64>,
}

impl LineSums {
    pub fn new(r: Vec<u64>, x: Vec<u64>) -> Self {
        Self { r, x }
    }

    pub fn m(&self) -> usize {
        self.r.len()
    }

    pub fn n(&self) -> usize {
        self.x.len()
    }

    /// First reason the sums cannot be realized, if any.
    fn violation(&self) -> Option<String> {
        let (m, n) = (self.m() as u64, self.n() as u64);
        if let Some((i, &v)) = self.r.iter().enumerate().find(|(_, &v)| v > n) {
            return Some(format!("row sum r[{i}] = {v} exceeds the column count {n}"));
        }
        if let Some((j, &v)) = self.x.iter().enumerate().find(|(_, &v)| v > m) {
            return Some(format!("column sum x[{j}] = {v} exceeds the row count {m}"));
        }
        let sr: u128 = self.r.iter().map(|&v| v as u128).sum();
        let sx: u128 = self.x.iter().map(|&v| v as u128).sum();
        if sr != sx {
            return Some(format!("row sums total {sr} but column sums total {sx}"));
        }
        let rs = conjugate(&self.r, self.n()).expect("gate ensures r[i] <= n");
        let px = prefix_sums(sort_desc(&self.x).parts());
        let pr = rs.prefix_sums();
        (1..px.len())
            .find(|&k| px[k] > pr[k])
            .map(|k| format!("column sums violate majorization at prefix {k}: {} > {}", px[k], pr[k]))
    }
}

/// Gale-Ryser: `A(r, x)` is nonempty iff `x` is majorized by the conjugate of `r`.
///
/// Malformed sums (a row longer than n, a column taller than m, unequal
/// totals) are reported as infeasible rather than as errors.
pub fn gale_ryser_feasible(s: &LineSums) -> bool {
    let (m, n) = (s.m() as u64, s.n() as u64);
    if s.r.iter().any(|&v| v > n) || s.x.iter().any(|&v| v > m) {
        return false;
    }
    let rs = conjugate(&s.r, s.n()).expect("gate ensures r[i] <= n");
    compare(&s.x, rs.parts(), Relation::Majorize).expect("equal lengths")
}

/// Whether some matrix with row sums `r` has column sums at most `c`.
///
/// Tested as `c ≺^w r*`; the dual form `r ≺_w min(c, m)*` is checked to
/// agree in debug builds.
pub fn feasible_min_remaining(c: &[u64], r: &[u64]) -> bool {
    let n = c.len();
    if r.iter().any(|&v| v as u128 > n as u128) {
        return false;
    }
    let rs = conjugate(r, n).expect("gate ensures r[i] <= n");
    let primal = compare(c, rs.parts(), Relation::SupermajorizeW).expect("equal lengths");
    debug_assert_eq!(primal, feasible_row_form(c, r));
    primal
}

/// `r ≺_w min(c, m)*`, with the conjugate taken in dimension m.
pub(crate) fn feasible_row_form(c: &[u64], r: &[u64]) -> bool {
    let m = r.len();
    let clipped: Vec<u64> = c.iter().map(|&v| v.min(m as u64)).collect();
    let cs = conjugate(&clipped, m).expect("entries clipped to m");
    compare(r, cs.parts(), Relation::SubmajorizeW).expect("equal lengths")
}

/// Ryser-style construction: rows are filled in order, each placing its ones in
/// the columns with the largest remaining demand (ties to the lowest index).
pub fn construct_matrix(s: &LineSums) -> Result<BitMatrix> {
    if let Some(why) = s.violation() {
        return Err(Error::Infeasible(why));
    }
    let (m, n) = (s.m(), s.n());
    let mut demand = s.x.clone();
    let mut a = BitMatrix::zeros(m, n);
    let mut order: Vec<usize> = (0..n).collect();
    for (i, &ri) in s.r.iter().enumerate() {
        // Stable sort keeps lower indices first among equal demands.
        order.sort_by_key(|&j| (std::cmp::Reverse(demand[j]), j));
        for &j in &order[..ri as usize] {
            if demand[j] == 0 {
                return Err(Error::Invariant(format!(
                    "row {i} ran out of column demand during construction"
                )));
            }
            demand[j] -= 1;
            a.set(i, j, true);
        }
    }
    if a.row_sums() != s.r || a.col_sums() != s.x {
        return Err(Error::Invariant(
            "constructed matrix does not reproduce its line sums".into(),
        ));
    }
    Ok(a)
}

/// A nonincreasing `x` with `x ≺ t` and `x <= c` elementwise, built by
/// tightening suffix inequalities from the last coordinate downwards.
///
/// Requires `c ≺^w t`. The loop runs on the nonincreasing rearrangement of
/// `c`, so the bound `x <= c` holds against `sort_desc(c)`; for an already
/// sorted `c` that is the plain elementwise bound.
pub fn geth_vector(c: &[u64], t: &Partition) -> Result<Partition> {
    check_len(c.len(), t.len())?;
    if !compare(c, t.parts(), Relation::SupermajorizeW)? {
        return Err(Error::Infeasible(
            "ceiling is not weakly supermajorized by the target".into(),
        ));
    }
    let n = c.len();
    let mut x: Vec<u128> = sort_desc(c).parts().iter().map(|&v| v as u128).collect();
    let t: Vec<u128> = t.parts().iter().map(|&v| v as u128).collect();
    // Suffix sums with a trailing zero: suf[j] = sum of entries j..n (0-based).
    let suffix = |v: &[u128]| {
        let mut s = vec![0u128; v.len() + 1];
        for j in (0..v.len()).rev() {
            s[j] = s[j + 1] + v[j];
        }
        s
    };
    let st = suffix(&t);
    let mut k = n;
    while k > 0 {
        let sx = suffix(&x);
        let slack = (0..k).map(|j| sx[j] - st[j]).min().expect("k >= 1");
        x[k - 1] -= slack;
        // All suffixes starting at or before k shrank by `slack`.
        let tight = (0..k)
            .find(|&j| sx[j] - slack == st[j])
            .expect("the minimising suffix is tight");
        k = tight;
    }
    let out: Vec<u64> = x.into_iter().map(|v| v as u64).collect();
    Partition::new(out).map_err(|e| Error::Invariant(format!("geth output not sorted: {e}")))
}

/// Flips the 2x2 submatrix on rows `i, j` and columns `p, q` when it reads
/// `[[0,1],[1,0]]` or `[[1,0],[0,1]]`. Line sums are preserved.
pub fn interchange(a: &BitMatrix, i: usize, j: usize, p: usize, q: usize) -> Result<BitMatrix> {
    if i.max(j) >= a.rows() || p.max(q) >= a.cols() {
        return Err(Error::InvalidInput(format!(
            "interchange indices ({i}, {j}, {p}, {q}) out of range for a {}x{} matrix",
            a.rows(),
            a.cols()
        )));
    }
    let quad = [a.get(i, p), a.get(i, q), a.get(j, p), a.get(j, q)];
    if quad != [0, 1, 1, 0] && quad != [1, 0, 0, 1] {
        return Err(Error::PatternAbsent { i, j, p, q });
    }
    let mut b = a.clone();
    b.set(i, p, quad[0] == 0);
    b.set(i, q, quad[1] == 0);
    b.set(j, p, quad[2] == 0);
    b.set(j, q, quad[3] == 0);
    Ok(b)
}

/// Every matrix in `A(r, x)`, reached by interchange closure from one
/// constructed member. Fails once more than `cap` distinct matrices are found.
pub fn enumerate_matrices(s: &LineSums, cap: u64) -> Result<Vec<BitMatrix>> {
    let start = construct_matrix(s)?;
    let (m, n) = (start.rows(), start.cols());
    let mut seen = BTreeSet::new();
    let mut queue = VecDeque::new();
    seen.insert(start.clone());
    queue.push_back(start);
    while let Some(a) = queue.pop_front() {
        for i in 0..m {
            for j in (i + 1)..m {
                for p in 0..n {
                    for q in (p + 1)..n {
                        let Ok(b) = interchange(&a, i, j, p, q) else {
                            continue;
                        };
                        if seen.insert(b.clone()) {
                            if seen.len() as u64 > cap {
                                return Err(Error::CapExceeded { cap });
                            }
                            queue.push_back(b);
                        }
                    }
                }
            }
        }
    }
    Ok(seen.into_iter().collect())
}
