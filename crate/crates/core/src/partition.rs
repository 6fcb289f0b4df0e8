//! Integer partitions.
//!
//! Parts are stored weakly decreasing with trailing zeros stripped, so the
//! empty partition is `Partition(vec![])` and equality is structural.

use std::fmt;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition(Vec<u32>);

impl Partition {
    pub fn new(parts: impl Into<Vec<u32>>) -> Result<Self> {
        let mut parts = parts.into();
        while parts.last() == Some(&0) {
            parts.pop();
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidPartition(format!(
                "parts must be weakly decreasing, got {:?}",
                parts
            )));
        }
        Ok(Partition(parts))
    }

    /// Like `new` but for internally produced part lists known to be sorted.
    pub(crate) fn from_sorted(mut parts: Vec<u32>) -> Self {
        while parts.last() == Some(&0) {
            parts.pop();
        }
        debug_assert!(parts.windows(2).all(|w| w[0] >= w[1]));
        Partition(parts)
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    /// k columns of height m, the m x k rectangle.
    pub fn rectangle(rows: u32, width: u32) -> Self {
        if width == 0 {
            Partition::empty()
        } else {
            Partition(vec![width; rows as usize])
        }
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    /// Row i (0-based), zero beyond the last row.
    pub fn part(&self, i: usize) -> u32 {
        self.0.get(i).copied().unwrap_or(0)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn size(&self) -> u64 {
        self.0.iter().map(|&p| p as u64).sum()
    }

    pub fn fits_in(&self, rows: u32, width: u32) -> bool {
        self.len() as u32 <= rows && self.part(0) <= width
    }

    /// Complement inside the rows x width rectangle, rotated 180 degrees.
    pub fn complement_in(&self, rows: u32, width: u32) -> Result<Partition> {
        if !self.fits_in(rows, width) {
            return Err(Error::InvalidPartition(format!(
                "{} does not fit in {}x{}",
                self, rows, width
            )));
        }
        let mut parts = Vec::with_capacity(rows as usize);
        for i in (0..rows).rev() {
            parts.push(width - self.part(i as usize));
        }
        Ok(Partition::from_sorted(parts))
    }

    /// Conjugate (transpose) partition.
    pub fn conjugate(&self) -> Partition {
        if self.is_empty() {
            return Partition::empty();
        }
        let width = self.0[0] as usize;
        let mut parts = vec![0u32; width];
        for &p in &self.0 {
            for c in parts.iter_mut().take(p as usize) {
                *c += 1;
            }
        }
        Partition::from_sorted(parts)
    }

    /// All partitions inside the rows x width rectangle, ordered by
    /// (size, parts lexicographically).
    pub fn all_in_rectangle(rows: u32, width: u32) -> Vec<Partition> {
        let mut out = Vec::new();
        let mut cur: Vec<u32> = Vec::new();
        fn rec(out: &mut Vec<Partition>, cur: &mut Vec<u32>, rows: u32, width: u32) {
            out.push(Partition::from_sorted(cur.clone()));
            if (cur.len() as u32) < rows {
                let cap = if cur.is_empty() { width } else { *cur.last().unwrap() };
                for p in 1..=cap {
                    cur.push(p);
                    rec(out, cur, rows, width);
                    cur.pop();
                }
            }
        }
        rec(&mut out, &mut cur, rows, width);
        out.sort_by(|a, b| (a.size(), &a.0).cmp(&(b.size(), &b.0)));
        out
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", p)?;
        }
        write!(f, ")")
    }
}
