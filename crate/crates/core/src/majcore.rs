//! Vector plumbing and the majorization family of preorders.
//!
//! Everything here works on plain slices of integers. Sums are accumulated in
//! 128-bit integers so prefix sums of `u64` (or `i64`) vectors cannot wrap;
//! narrowing back to 64 bits elsewhere in the crate is always checked.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{check_len, Error, Result};

/// A nonincreasing vector of nonnegative integers.
///
/// Trailing zeros are significant: two partitions of the same `tau` are only
/// comparable in the dominance order when they also have the same length.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(into = "Vec<u64>", try_from = "Vec<u64>")]
pub struct Partition {
    parts: Vec<u64>,
}

impl Partition {
    /// Wraps `parts`, rejecting vectors that are not nonincreasing.
    pub fn new(parts: Vec<u64>) -> Result<Self> {
        if let Some(w) = parts.windows(2).find(|w| w[0] < w[1]) {
            return Err(Error::InvalidInput(format!(
                "partition must be nonincreasing, found {} before {}",
                w[0], w[1]
            )));
        }
        Ok(Self { parts })
    }

    /// Sorts an arbitrary vector into a partition.
    pub fn from_unsorted(v: &[u64]) -> Self {
        sort_desc(v)
    }

    pub fn parts(&self) -> &[u64] {
        &self.parts
    }

    pub fn into_vec(self) -> Vec<u64> {
        self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Sum of all parts.
    pub fn tau(&self) -> u128 {
        self.parts.iter().map(|&v| v as u128).sum()
    }

    /// Largest part, zero for the empty partition.
    pub fn largest(&self) -> u64 {
        self.parts.first().copied().unwrap_or(0)
    }

    /// Number of nonzero parts.
    pub fn nonzero_len(&self) -> usize {
        self.parts.iter().take_while(|&&v| v > 0).count()
    }

    /// Extends or shrinks to `len` entries. Only zeros may be dropped.
    pub fn resized(&self, len: usize) -> Result<Self> {
        Ok(Self {
            parts: pad(&self.parts, len)?,
        })
    }

    /// Nondecreasing rearrangement.
    pub fn ascending(&self) -> Vec<u64> {
        self.parts.iter().rev().copied().collect()
    }

    /// Prefix sums `S[k] = parts[0] + ... + parts[k-1]`, with `S[0] = 0`.
    pub fn prefix_sums(&self) -> Vec<u128> {
        prefix_sums(&self.parts)
    }
}

impl From<Partition> for Vec<u64> {
    fn from(p: Partition) -> Self {
        p.parts
    }
}

impl TryFrom<Vec<u64>> for Partition {
    type Error = Error;

    fn try_from(v: Vec<u64>) -> Result<Self> {
        Partition::new(v)
    }
}

impl AsRef<[u64]> for Partition {
    fn as_ref(&self) -> &[u64] {
        &self.parts
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, v) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "]")
    }
}

/// The three one- and two-sided majorization relations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Relation {
    /// `x ≺_w y`: every prefix sum of `x↓` is at most the matching one of `y↓`.
    SubmajorizeW,
    /// `x ≺^w y`: every suffix sum of `x↓` is at least the matching one of `y↓`.
    SupermajorizeW,
    /// `x ≺ y`: both of the above (equivalently, weak submajorization with equal totals).
    Majorize,
}

/// Nonincreasing rearrangement.
pub fn sort_desc(v: &[u64]) -> Partition {
    let mut parts = v.to_vec();
    parts.sort_unstable_by(|a, b| b.cmp(a));
    Partition { parts }
}

/// Nondecreasing rearrangement, as the reverse of [`sort_desc`].
pub fn sort_asc(v: &[u64]) -> Vec<u64> {
    sort_desc(v).ascending()
}

/// Nonincreasing rearrangement of a signed vector.
pub fn sort_desc_signed(v: &[i64]) -> Vec<i64> {
    let mut out = v.to_vec();
    out.sort_unstable_by(|a, b| b.cmp(a));
    out
}

/// Pads `v` with trailing zeros to length `n`; shrinking is allowed only over zeros.
pub fn pad(v: &[u64], n: usize) -> Result<Vec<u64>> {
    if n >= v.len() {
        let mut out = v.to_vec();
        out.resize(n, 0);
        Ok(out)
    } else if v[n..].iter().all(|&e| e == 0) {
        Ok(v[..n].to_vec())
    } else {
        Err(Error::InvalidInput(format!(
            "cannot shrink a vector of length {} to {n} without dropping nonzero entries",
            v.len()
        )))
    }
}

/// Prefix sums with a leading zero, in 128-bit arithmetic.
pub fn prefix_sums(v: &[u64]) -> Vec<u128> {
    let mut acc = 0u128;
    let mut out = Vec::with_capacity(v.len() + 1);
    out.push(0);
    for &e in v {
        acc += e as u128;
        out.push(acc);
    }
    out
}

fn sorted_desc_wide<T: Copy + Into<i128>>(v: &[T]) -> Vec<i128> {
    let mut out: Vec<i128> = v.iter().map(|&e| e.into()).collect();
    out.sort_unstable_by(|a, b| b.cmp(a));
    out
}

/// Tests `x R y` for one of the majorization relations.
///
/// Both vectors must have the same length; shorter inputs are never padded
/// here (see [`pad`]).
pub fn compare<T: Copy + Into<i128>>(x: &[T], y: &[T], relation: Relation) -> Result<bool> {
    check_len(x.len(), y.len())?;
    let xs = sorted_desc_wide(x);
    let ys = sorted_desc_wide(y);
    let sub = || {
        let (mut a, mut b) = (0i128, 0i128);
        xs.iter().zip(&ys).all(|(&p, &q)| {
            a += p;
            b += q;
            a <= b
        })
    };
    let sup = || {
        let (mut a, mut b) = (0i128, 0i128);
        xs.iter().rev().zip(ys.iter().rev()).all(|(&p, &q)| {
            a += p;
            b += q;
            a >= b
        })
    };
    Ok(match relation {
        Relation::SubmajorizeW => sub(),
        Relation::SupermajorizeW => sup(),
        Relation::Majorize => sub() && sup(),
    })
}

/// `x ≺ y`. Shorthand for [`compare`] with [`Relation::Majorize`].
pub fn majorized<T: Copy + Into<i128>>(x: &[T], y: &[T]) -> Result<bool> {
    compare(x, y, Relation::Majorize)
}

/// `x ~ y`: the two vectors are rearrangements of each other.
pub fn equivalent<T: Copy + Ord>(x: &[T], y: &[T]) -> Result<bool> {
    check_len(x.len(), y.len())?;
    let mut a = x.to_vec();
    let mut b = y.to_vec();
    a.sort_unstable();
    b.sort_unstable();
    Ok(a == b)
}

/// Partition conjugate: entry `j` (1-based) counts the elements of `x` that are at least `j`.
///
/// `dim` must be at least `max(x)`, otherwise the transpose would lose cells.
pub fn conjugate(x: &[u64], dim: usize) -> Result<Partition> {
    let max = x.iter().copied().max().unwrap_or(0);
    if (dim as u128) < max as u128 {
        return Err(Error::LossyConjugate { dim, max });
    }
    // counts[v] = number of entries equal to v (v >= 1), then suffix-accumulate.
    let mut counts = vec![0u64; dim + 1];
    for &v in x {
        if v > 0 {
            counts[v as usize] += 1;
        }
    }
    let mut parts = vec![0u64; dim];
    let mut running = 0u64;
    for j in (1..=dim).rev() {
        running += counts[j];
        parts[j - 1] = running;
    }
    Ok(Partition { parts })
}

/// The dimension used when no explicit one is given: `max(len(x), max(x))`.
pub fn default_conjugate_dim(x: &[u64]) -> usize {
    let max = x.iter().copied().max().unwrap_or(0) as usize;
    max.max(x.len())
}

/// Elementwise `x <= y`.
pub fn dominated_elementwise<T: PartialOrd>(x: &[T], y: &[T]) -> Result<bool> {
    check_len(x.len(), y.len())?;
    Ok(x.iter().zip(y).all(|(a, b)| a <= b))
}

/// Sum of squares, the strictly Schur-convex scalarization used by the certifier.
pub fn sum_of_squares(v: &[i64]) -> i128 {
    v.iter().map(|&e| (e as i128) * (e as i128)).sum()
}
