//! Dense exact matrices over a field, sized for the small transition
//! operators that show up here (a few dozen rows at most).

use std::fmt;

use crate::surd::Field;

#[derive(Clone, PartialEq)]
pub struct Mat<F: Field> {
    rows: usize,
    cols: usize,
    data: Vec<F>,
}

impl<F: Field> Mat<F> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat {
            rows,
            cols,
            data: vec![F::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Mat::zeros(n, n);
        for i in 0..n {
            m.set(i, i, F::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<F>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Mat {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> F) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Mat { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &F {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: F) {
        self.data[i * self.cols + j] = v;
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows)
                .all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        Mat::from_fn(self.rows, other.cols, |i, j| {
            let mut acc = F::zero();
            for k in 0..self.cols {
                acc = acc.add(&self.get(i, k).mul(other.get(k, j)));
            }
            acc
        })
    }

    pub fn mul_vec(&self, v: &[F]) -> Vec<F> {
        assert_eq!(self.cols, v.len(), "dimension mismatch");
        (0..self.rows)
            .map(|i| {
                let mut acc = F::zero();
                for k in 0..self.cols {
                    acc = acc.add(&self.get(i, k).mul(&v[k]));
                }
                acc
            })
            .collect()
    }

    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> Mat<G> {
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    /// self - lambda * I.
    pub fn shift_diagonal(&self, lambda: &F) -> Self {
        assert_eq!(self.rows, self.cols);
        let mut m = self.clone();
        for i in 0..self.rows {
            let v = m.get(i, i).sub(lambda);
            m.set(i, i, v);
        }
        m
    }

    /// Basis of the right nullspace, via Gauss-Jordan elimination.
    /// Vectors come out with their first nonzero coordinate equal to 1.
    pub fn nullspace(&self) -> Vec<Vec<F>> {
        let mut a = self.clone();
        let (rows, cols) = (a.rows, a.cols);
        let mut pivot_col_of_row = Vec::new();
        let mut pivot_cols = vec![false; cols];
        let mut rank = 0usize;
        for col in 0..cols {
            let Some(piv) = (rank..rows).find(|&r| !a.get(r, col).is_zero()) else {
                continue;
            };
            for j in 0..cols {
                let tmp = a.get(rank, j).clone();
                let v = a.get(piv, j).clone();
                a.set(rank, j, v);
                a.set(piv, j, tmp);
            }
            let inv = a.get(rank, col).inv().expect("nonzero pivot");
            for j in 0..cols {
                let v = a.get(rank, j).mul(&inv);
                a.set(rank, j, v);
            }
            for r in 0..rows {
                if r != rank && !a.get(r, col).is_zero() {
                    let factor = a.get(r, col).clone();
                    for j in 0..cols {
                        let v = a.get(r, j).sub(&factor.mul(a.get(rank, j)));
                        a.set(r, j, v);
                    }
                }
            }
            pivot_col_of_row.push(col);
            pivot_cols[col] = true;
            rank += 1;
            if rank == rows {
                break;
            }
        }
        let mut basis = Vec::new();
        for free in 0..cols {
            if pivot_cols[free] {
                continue;
            }
            let mut v = vec![F::zero(); cols];
            v[free] = F::one();
            for (row, &pc) in pivot_col_of_row.iter().enumerate() {
                v[pc] = a.get(row, free).neg();
            }
            // Rescale so the first nonzero coordinate is 1.
            let lead = v
                .iter()
                .position(|x| !x.is_zero())
                .expect("free column gives a nonzero vector");
            let scale = v[lead].inv().expect("leading coordinate is nonzero");
            for x in v.iter_mut() {
                *x = x.mul(&scale);
            }
            basis.push(v);
        }
        basis
    }
}

impl<F: Field> fmt::Debug for Mat<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

/// Characteristic polynomial det(xI - A) by the Berkowitz method:
/// division-free, so rational intermediate values stay integers whenever the
/// entries are integers. Returned ascending, coefficient of x^i at index i,
/// monic of degree n.
pub fn berkowitz_charpoly<F: Field>(a: &Mat<F>) -> Vec<F> {
    assert_eq!(a.rows(), a.cols(), "characteristic polynomial needs square");
    let n = a.rows();
    if n == 0 {
        return vec![F::one()];
    }
    // c holds the charpoly of the leading r x r block, descending, length r+1.
    let mut c = vec![F::one(), a.get(0, 0).neg()];
    for r in 1..n {
        // Toeplitz column: 1, -a_rr, -(R S), -(R A1 S), ..., -(R A1^{r-1} S)
        // where A1 is the leading r x r block, R the row to its left of the
        // new diagonal entry, S the column above it.
        let s: Vec<F> = (0..r).map(|i| a.get(i, r).clone()).collect();
        let row: Vec<F> = (0..r).map(|j| a.get(r, j).clone()).collect();
        let mut col = Vec::with_capacity(r + 2);
        col.push(F::one());
        col.push(a.get(r, r).neg());
        let mut vec_s = s;
        for _ in 0..r {
            let mut dot = F::zero();
            for j in 0..r {
                dot = dot.add(&row[j].mul(&vec_s[j]));
            }
            col.push(dot.neg());
            // vec_s <- A1 * vec_s
            let mut next = vec![F::zero(); r];
            for i in 0..r {
                for j in 0..r {
                    next[i] = next[i].add(&a.get(i, j).mul(&vec_s[j]));
                }
            }
            vec_s = next;
        }
        // c <- T * c where T is lower-triangular Toeplitz with that column.
        let mut out = vec![F::zero(); r + 2];
        for (i, ci) in c.iter().enumerate() {
            for (d, t) in col.iter().enumerate() {
                if i + d < r + 2 {
                    out[i + d] = out[i + d].add(&t.mul(ci));
                }
            }
        }
        c = out;
    }
    c.reverse();
    c
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat_frac, rat_int, Rat};
    use crate::surd::QuadExt;

    fn m(rows: Vec<Vec<i64>>) -> Mat<Rat> {
        Mat::from_rows(
            rows.into_iter()
                .map(|r| r.into_iter().map(rat_int).collect())
                .collect(),
        )
    }

    #[test]
    fn charpoly_of_small_matrices() {
        // [[2,1],[1,2]]: x^2 - 4x + 3
        let p = berkowitz_charpoly(&m(vec![vec![2, 1], vec![1, 2]]));
        assert_eq!(p, vec![rat_int(3), rat_int(-4), rat_int(1)]);
        // Companion matrix of x^3 - 2x^2 + 3x - 5.
        let comp = m(vec![vec![0, 0, 5], vec![1, 0, -3], vec![0, 1, 2]]);
        let p = berkowitz_charpoly(&comp);
        assert_eq!(p, vec![rat_int(-5), rat_int(3), rat_int(-2), rat_int(1)]);
        // Identity-like sanity: diag(4, 7) gives (x-4)(x-7).
        let p = berkowitz_charpoly(&m(vec![vec![4, 0], vec![0, 7]]));
        assert_eq!(p, vec![rat_int(28), rat_int(-11), rat_int(1)]);
    }

    #[test]
    fn charpoly_matches_trace_and_determinant() {
        let a = m(vec![vec![3, 1, 2], vec![0, 2, 5], vec![4, 1, 1]]);
        let p = berkowitz_charpoly(&a);
        assert_eq!(p.len(), 4);
        assert_eq!(p[3], rat_int(1));
        // -trace at x^{n-1}
        assert_eq!(p[2], rat_int(-6));
        // (-1)^n det at x^0; det = 3(2-5) + ... compute directly: 3*(2*1-5*1) - 1*(0*1-5*4) + 2*(0*1-2*4) = -9 + 20 - 16 = -5
        assert_eq!(p[0], rat_int(5));
    }

    #[test]
    fn nullspace_of_a_rank_one_matrix() {
        let a = m(vec![vec![1, 2, 3], vec![2, 4, 6], vec![3, 6, 9]]);
        let ns = a.nullspace();
        assert_eq!(ns.len(), 2);
        for v in &ns {
            let lead = v
                .iter()
                .position(|x| !crate::surd::Field::is_zero(x))
                .unwrap();
            assert_eq!(v[lead], rat_int(1));
            let img = a.mul_vec(v);
            assert!(img.iter().all(|x| crate::surd::Field::is_zero(x)));
        }
    }

    #[test]
    fn nullspace_over_a_quadratic_field() {
        // Eigenvector of [[10,5],[5,15]] for lambda = (25 + 5 sqrt5)/2.
        let lam = QuadExt::new(rat_frac(25, 2), rat_frac(5, 2), 5).unwrap();
        let a = m(vec![vec![10, 5], vec![5, 15]]).map(|x| QuadExt::rational(x.clone()));
        let shifted = a.shift_diagonal(&lam);
        let ns = shifted.nullspace();
        assert_eq!(ns.len(), 1);
        let v = &ns[0];
        assert_eq!(v[0], QuadExt::one());
        let img = shifted.mul_vec(v);
        assert!(img.iter().all(|x| x.is_zero()));
    }

    #[test]
    fn empty_and_one_by_one() {
        let p = berkowitz_charpoly(&m(vec![vec![7]]));
        assert_eq!(p, vec![rat_int(-7), rat_int(1)]);
        let a: Mat<Rat> = Mat::zeros(0, 0);
        assert_eq!(berkowitz_charpoly(&a), vec![rat_int(1)]);
    }
}
