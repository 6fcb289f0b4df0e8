//! Classes q^d [X^lambda] of Gr(m, N) as periodic lattice paths.
//!
//! The boundary profile of lambda inside the m x (N-m) rectangle, read from
//! the bottom-left corner, is a word of N steps: m ups and N-m rights. Drawn
//! in matrix coordinates (row, col) with R = (0,+1) and U = (-1,0) and
//! repeated with period (-m, N-m), it becomes a bi-infinite path. The height
//! function f(row, col) = row - col drops by exactly one per step, so every
//! integer is hit once; the vertex with f = m sits at (m+d, d) and pins down
//! the q-power. Plane translations act on these paths, and the three we care
//! about are exactly ring operations: (1,1) is multiplication by q, (0,1) by
//! the Seidel class, (0, N-m) by the point class. None of this touches the
//! rim-hook tables, which makes it an independent oracle for them.

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::partition::Partition;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Step {
    R,
    U,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CylinderPath {
    m: u32,
    n: u32,
    /// Anchor vertex is (m + d, d): the unique vertex with f = m.
    d: i64,
    /// N steps starting at the anchor; exactly m of them are U.
    word: Vec<Step>,
}

impl CylinderPath {
    pub fn from_class(m: u32, n: u32, d: i64, lambda: &Partition) -> Result<Self> {
        if m < 1 || m >= n {
            return Err(Error::OutOfRange(format!("gr:{},{} needs 1 <= m < N", m, n)));
        }
        if !lambda.fits_in(m, n - m) {
            return Err(Error::InvalidPartition(format!(
                "{} does not fit in {}x{}",
                lambda,
                m,
                n - m
            )));
        }
        let mut word = Vec::with_capacity(n as usize);
        // R^{lambda_m} U R^{lambda_{m-1}-lambda_m} U ... U R^{(N-m)-lambda_1}
        for _ in 0..lambda.part(m as usize - 1) {
            word.push(Step::R);
        }
        for i in (0..m as usize - 1).rev() {
            word.push(Step::U);
            for _ in 0..(lambda.part(i) - lambda.part(i + 1)) {
                word.push(Step::R);
            }
        }
        word.push(Step::U);
        for _ in 0..(n - m - lambda.part(0)) {
            word.push(Step::R);
        }
        debug_assert_eq!(word.len(), n as usize);
        Ok(CylinderPath { m, n, d, word })
    }

    pub fn to_class(&self) -> (i64, Partition) {
        let m = self.m as usize;
        let mut parts = vec![0u32; m];
        let mut rights = 0u32;
        let mut ups = 0usize;
        for step in &self.word {
            match step {
                Step::R => rights += 1,
                Step::U => {
                    ups += 1;
                    parts[m - ups] = rights;
                }
            }
        }
        (
            self.d,
            Partition::new(parts).expect("right counts before later ups only grow"),
        )
    }

    /// Shift the whole path by (rows, cols) and re-anchor.
    pub fn translate(&self, rows: i64, cols: i64) -> Self {
        let n = self.n as i64;
        let m = self.m as i64;
        // The new anchor is the image of the old vertex k steps forward,
        // where k = rows - cols restores f = m after the shift.
        let k = rows - cols;
        let s = k.rem_euclid(n);
        let cycles = (k - s) / n;
        let mut pos = (m + self.d + cycles * (-m), self.d + cycles * (n - m));
        for step in &self.word[..s as usize] {
            match step {
                Step::R => pos.1 += 1,
                Step::U => pos.0 -= 1,
            }
        }
        let anchor = (pos.0 + rows, pos.1 + cols);
        debug_assert_eq!(anchor.0 - anchor.1, m);
        let mut word = Vec::with_capacity(self.word.len());
        word.extend_from_slice(&self.word[s as usize..]);
        word.extend_from_slice(&self.word[..s as usize]);
        CylinderPath {
            m: self.m,
            n: self.n,
            d: anchor.1,
            word,
        }
    }
}

fn check_admissible(m: u32, n: u32, d: u64, k: u64) -> Result<()> {
    if m < 1 || m >= n {
        return Err(Error::OutOfRange(format!("gr:{},{} needs 1 <= m < N", m, n)));
    }
    let r = (m * (n - m)) as u64;
    if (n as u64) * d + (m as u64) * k != r {
        return Err(Error::ConstraintViolated(format!(
            "gr:{},{}: q^{} S^{} has degree {}, the Euler class has degree {}",
            m,
            n,
            d,
            k,
            (n as u64) * d + (m as u64) * k,
            r
        )));
    }
    Ok(())
}

/// Count the paths through the rectangle's upper-right corner carried to
/// themselves by translation along (-d, N-m-k-d). Such a path repeats after
/// c*N/m steps, c = gcd(d, m) of them U, so only the words of that shape are
/// walked. Admissible (d, k) satisfy N*d + m*k = m*(N-m); the count always
/// lands on binomial(c*N/m, c), which is also the coefficient of the Euler
/// class at the label of q^d S^k.
pub fn count_fixed_paths(m: u32, n: u32, d: u64, k: u64) -> Result<u64> {
    check_admissible(m, n, d, k)?;
    let c = d.gcd(&(m as u64));
    let len = c * n as u64 / m as u64;
    assert!(len <= 30, "word enumeration is only meant for small panels");
    Ok(count_words(len, c))
}

/// Brute-force oracle for the same count: keep the basis classes [X^lambda]
/// whose bi-infinite path the composite translation maps onto itself.
pub fn fixed_basis_classes(m: u32, n: u32, d: u64, k: u64) -> Result<Vec<Partition>> {
    check_admissible(m, n, d, k)?;
    let rows = -(d as i64);
    let cols = (n - m) as i64 - k as i64 - d as i64;
    Ok(Partition::all_in_rectangle(m, n - m)
        .into_iter()
        .filter(|lambda| {
            let path = CylinderPath::from_class(m, n, 0, lambda).unwrap();
            path.translate(rows, cols) == path
        })
        .collect())
}

/// Walk every placement of `ups` up-steps into a word of length `len`.
fn count_words(len: u64, ups: u64) -> u64 {
    fn place(next_free: u64, len: u64, remaining: u64) -> u64 {
        if remaining == 0 {
            return 1;
        }
        let mut total = 0;
        for pos in next_free..=(len - remaining) {
            total += place(pos + 1, len, remaining - 1);
        }
        total
    }
    if ups > len {
        return 0;
    }
    place(0, len, ups)
}
