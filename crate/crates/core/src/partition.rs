//! Integer partitions in canonical decreasing order, with the `lambda[n]`
//! padding used throughout representation stability.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::error::Error;

/// Enumeration budget for `partitions(n)`.
pub const PARTITION_BUDGET: u32 = 40;

/// A partition: weakly decreasing positive parts. The derived ordering on the
/// parts vector is the lexicographic one, so sorting descending lists
/// partitions from `(n)` down to `(1,...,1)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    /// Builds a partition; parts are sorted into decreasing order and zero
    /// parts are dropped.
    pub fn new(mut parts: Vec<u32>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition { parts }
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    /// `|lambda|`, the number being partitioned.
    pub fn size(&self) -> u32 {
        self.parts.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Largest part, 0 for the empty partition.
    pub fn first(&self) -> u32 {
        self.parts.first().copied().unwrap_or(0)
    }

    /// Part at `i`, 0 beyond the end.
    pub fn part(&self, i: usize) -> u32 {
        self.parts.get(i).copied().unwrap_or(0)
    }

    /// Multiplicity of each part value: `multiplicities()[l-1]` counts parts
    /// equal to `l`, for `l` up to the largest part.
    pub fn multiplicities(&self) -> Vec<u32> {
        let mut m = alloc::vec![0u32; self.first() as usize];
        for &p in &self.parts {
            m[p as usize - 1] += 1;
        }
        m
    }

    /// The padded partition `lambda[n] = (n - |lambda|, lambda_1, ...)`;
    /// requires `n >= |lambda| + lambda_1`.
    pub fn pad(&self, n: u32) -> Result<Partition, Error> {
        if n < self.size() + self.first() {
            return Err(Error::TooSmall);
        }
        let mut parts = Vec::with_capacity(self.len() + 1);
        parts.push(n - self.size());
        parts.extend_from_slice(&self.parts);
        Ok(Partition::new(parts))
    }
}

impl fmt::Display for Partition {
    /// Comma-separated parts, `()` for the empty partition.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return write!(f, "()");
        }
        let mut first = true;
        for p in &self.parts {
            if !first {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
            first = false;
        }
        Ok(())
    }
}

/// Parses `"2,1"`-style partition strings (whitespace tolerated, `()` and
/// the empty string denote the empty partition).
pub fn parse_partition(s: &str) -> Result<Partition, Error> {
    let t = s.trim();
    if t.is_empty() || t == "()" {
        return Ok(Partition::empty());
    }
    let mut parts = Vec::new();
    for piece in t.split(',') {
        let piece = piece.trim();
        let v: u32 = piece
            .parse()
            .map_err(|_| Error::Parse(String::from("bad partition part")))?;
        if v == 0 {
            return Err(Error::Parse(String::from(
                "partition parts must be positive",
            )));
        }
        parts.push(v);
    }
    Ok(Partition::new(parts))
}

/// All partitions of `n` in reverse-lexicographic order, `(n)` first.
pub fn partitions(n: u32) -> Result<Vec<Partition>, Error> {
    if n > PARTITION_BUDGET {
        return Err(Error::BudgetExceeded(alloc::format!(
            "partitions of {n} exceed the budget of {PARTITION_BUDGET}"
        )));
    }
    let mut out = Vec::new();
    let mut current = Vec::new();
    descend(n, n, &mut current, &mut out);
    Ok(out)
}

fn descend(remaining: u32, max_part: u32, current: &mut Vec<u32>, out: &mut Vec<Partition>) {
    if remaining == 0 {
        out.push(Partition {
            parts: current.clone(),
        });
        return;
    }
    let top = remaining.min(max_part);
    for part in (1..=top).rev() {
        current.push(part);
        descend(remaining - part, part, current, out);
        current.pop();
    }
}
