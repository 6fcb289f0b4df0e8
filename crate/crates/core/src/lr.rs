//! Littlewood-Richardson expansions.
//!
//! `schur_product` expands s_lambda * s_mu over partitions with a bounded
//! number of rows by growing lambda one horizontal strip per row of mu.
//! A strip addition is accepted only if it keeps the ballot property against
//! the previous strip's row distribution (label k+1 boxes in rows 0..=t are
//! covered by label k boxes in rows 0..t), which is exactly the lattice-word
//! condition checked pairwise on consecutive labels.

use std::collections::BTreeMap;

use crate::partition::Partition;

/// Expand s_lambda * s_mu over partitions with at most `max_rows` rows.
pub fn schur_product(
    lambda: &Partition,
    mu: &Partition,
    max_rows: u32,
) -> BTreeMap<Partition, u64> {
    expand(lambda, mu, max_rows, None)
}

/// Single Littlewood-Richardson coefficient c^nu_{lambda,mu}.
pub fn lr_coefficient(lambda: &Partition, mu: &Partition, nu: &Partition) -> u64 {
    if nu.size() != lambda.size() + mu.size() {
        return 0;
    }
    let out = expand(lambda, mu, nu.len() as u32, Some(nu));
    out.get(nu).copied().unwrap_or(0)
}

fn expand(
    lambda: &Partition,
    mu: &Partition,
    max_rows: u32,
    bound: Option<&Partition>,
) -> BTreeMap<Partition, u64> {
    let max_rows = max_rows as usize;
    let mut out = BTreeMap::new();
    if lambda.len() > max_rows {
        return out;
    }
    let mut shape: Vec<u32> = vec![0; max_rows.max(1)];
    shape[..lambda.len()].copy_from_slice(lambda.parts());
    if let Some(b) = bound {
        for (i, &s) in shape.iter().enumerate() {
            if s > b.part(i) {
                return out;
            }
        }
    }
    let strips: Vec<u32> = mu.parts().to_vec();
    rec(&mut shape, &strips, 0, None, bound, &mut out);
    out
}

fn rec(
    shape: &mut Vec<u32>,
    strips: &[u32],
    strip_idx: usize,
    prev_prefix: Option<&[u64]>,
    bound: Option<&Partition>,
    out: &mut BTreeMap<Partition, u64>,
) {
    if strip_idx == strips.len() {
        if let Some(b) = bound {
            if shape.iter().enumerate().any(|(i, &s)| s != b.part(i)) {
                return;
            }
        }
        *out.entry(Partition::from_sorted(shape.clone())).or_insert(0) += 1;
        return;
    }
    let size = strips[strip_idx] as u64;
    let mut adds: Vec<u32> = vec![0; shape.len()];
    place(
        0,
        size,
        0,
        shape,
        &mut adds,
        strips,
        strip_idx,
        prev_prefix,
        bound,
        out,
    );
}

#[allow(clippy::too_many_arguments)]
fn place(
    row: usize,
    remaining: u64,
    cum: u64,
    shape: &mut Vec<u32>,
    adds: &mut Vec<u32>,
    strips: &[u32],
    strip_idx: usize,
    prev_prefix: Option<&[u64]>,
    bound: Option<&Partition>,
    out: &mut BTreeMap<Partition, u64>,
) {
    if remaining == 0 {
        let new_prefix: Vec<u64> = {
            let mut acc = 0u64;
            adds.iter()
                .map(|&b| {
                    acc += b as u64;
                    acc
                })
                .collect()
        };
        for (i, &b) in adds.iter().enumerate() {
            shape[i] += b;
        }
        rec(shape, strips, strip_idx + 1, Some(&new_prefix), bound, out);
        for (i, &b) in adds.iter().enumerate() {
            shape[i] -= b;
        }
        return;
    }
    if row == shape.len() {
        return;
    }
    // Horizontal strip: the extension of this row cannot pass under the
    // previous row's old right edge (no two strip boxes share a column).
    let col_cap = if row == 0 {
        u64::MAX
    } else {
        (shape[row - 1] - shape[row]) as u64
    };
    let bound_cap = match bound {
        Some(b) => (b.part(row).saturating_sub(shape[row])) as u64,
        None => u64::MAX,
    };
    // Ballot: this strip's boxes in rows 0..=row are covered by the previous
    // strip's boxes in rows 0..row; in particular later strips skip row 0.
    let ballot_cap = match prev_prefix {
        None => u64::MAX,
        Some(pref) => {
            if row == 0 {
                0
            } else {
                pref[row - 1]
            }
        }
    };
    let ballot_room = ballot_cap.saturating_sub(cum);
    let max_here = remaining.min(col_cap).min(bound_cap).min(ballot_room);
    let mut b = max_here;
    loop {
        adds[row] = b as u32;
        place(
            row + 1,
            remaining - b,
            cum + b,
            shape,
            adds,
            strips,
            strip_idx,
            prev_prefix,
            bound,
            out,
        );
        if b == 0 {
            break;
        }
        b -= 1;
    }
    adds[row] = 0;
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partition::Partition;

    fn p(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    /// Independent oracle: count Littlewood-Richardson skew tableaux of shape
    /// nu/lambda and content mu directly (row-weak, column-strict fillings
    /// whose reverse reading word is a ballot sequence).
    fn lr_tableau_count(lambda: &Partition, mu: &Partition, nu: &Partition) -> u64 {
        if nu.size() != lambda.size() + mu.size() {
            return 0;
        }
        for i in 0..nu.len() {
            if lambda.part(i) > nu.part(i) {
                return 0;
            }
        }
        let rows = nu.len();
        let mut grid: Vec<Vec<u32>> = (0..rows)
            .map(|r| vec![0; nu.part(r) as usize])
            .collect();
        let mut counts = vec![0u32; mu.len()];
        let cells: Vec<(usize, usize)> = (0..rows)
            .flat_map(|r| (lambda.part(r) as usize..nu.part(r) as usize).map(move |c| (r, c)))
            .collect();
        #[allow(clippy::too_many_arguments)]
        fn fill(
            idx: usize,
            cells: &[(usize, usize)],
            grid: &mut Vec<Vec<u32>>,
            counts: &mut Vec<u32>,
            lambda: &Partition,
            mu: &Partition,
            total: &mut u64,
        ) {
            if idx == cells.len() {
                // Reverse reading word: right to left in each row, top first.
                let mut seen = vec![0i64; mu.len() + 1];
                for row in grid.iter() {
                    for &v in row.iter().rev() {
                        if v == 0 {
                            continue;
                        }
                        seen[v as usize] += 1;
                        if v > 1 && seen[v as usize] > seen[v as usize - 1] {
                            return;
                        }
                    }
                }
                *total += 1;
                return;
            }
            let (r, c) = cells[idx];
            for v in 1..=mu.len() as u32 {
                if counts[v as usize - 1] >= mu.part(v as usize - 1) {
                    continue;
                }
                if c > lambda.part(r) as usize && grid[r][c - 1] > v {
                    continue;
                }
                if r > 0 && c >= lambda.part(r - 1) as usize && c < grid[r - 1].len() && grid[r - 1][c] >= v {
                    continue;
                }
                grid[r][c] = v;
                counts[v as usize - 1] += 1;
                fill(idx + 1, cells, grid, counts, lambda, mu, total);
                counts[v as usize - 1] -= 1;
                grid[r][c] = 0;
            }
        }
        let mut total = 0;
        fill(0, &cells, &mut grid, &mut counts, lambda, mu, &mut total);
        total
    }

    #[test]
    fn pieri_products_are_multiplicity_free() {
        // s_(3,2) * s_(1) in two rows: (4,2) + (3,3).
        let out = schur_product(&p(&[3, 2]), &p(&[1]), 2);
        assert_eq!(out.len(), 2);
        assert_eq!(out[&p(&[4, 2])], 1);
        assert_eq!(out[&p(&[3, 3])], 1);
    }

    #[test]
    fn classic_coefficient_two() {
        assert_eq!(lr_coefficient(&p(&[2, 1]), &p(&[2, 1]), &p(&[3, 2, 1])), 2);
        assert_eq!(lr_coefficient(&p(&[2, 1]), &p(&[2, 1]), &p(&[4, 2])), 1);
        assert_eq!(lr_coefficient(&p(&[1, 1]), &p(&[2, 2]), &p(&[4, 2])), 0);
    }

    #[test]
    fn three_row_square_of_two_one() {
        // s_21^2 bounded to three rows: 42 + 411 + 33 + 2*321 + 222.
        let out = schur_product(&p(&[2, 1]), &p(&[2, 1]), 3);
        assert_eq!(out[&p(&[4, 2])], 1);
        assert_eq!(out[&p(&[4, 1, 1])], 1);
        assert_eq!(out[&p(&[3, 3])], 1);
        assert_eq!(out[&p(&[3, 2, 1])], 2);
        assert_eq!(out[&p(&[2, 2, 2])], 1);
        assert_eq!(out.len(), 5);
    }

    #[test]
    fn expansion_against_tableau_oracle_small() {
        let shapes = [
            p(&[]),
            p(&[1]),
            p(&[2]),
            p(&[1, 1]),
            p(&[2, 1]),
            p(&[2, 2]),
            p(&[3, 1]),
            p(&[3, 2, 1]),
            p(&[2, 2, 2]),
        ];
        for a in &shapes {
            for b in &shapes {
                if a.size() + b.size() > 12 {
                    continue;
                }
                let got = schur_product(a, b, 3);
                for (nu, c) in &got {
                    assert_eq!(
                        *c,
                        lr_tableau_count(a, b, nu),
                        "mismatch at {} * {} -> {}",
                        a,
                        b,
                        nu
                    );
                }
                for nu in Partition::all_in_rectangle(3, a.part(0) + b.part(0) + 1) {
                    if nu.size() == a.size() + b.size() {
                        let want = lr_tableau_count(a, b, &nu);
                        assert_eq!(
                            got.get(&nu).copied().unwrap_or(0),
                            want,
                            "missing {} * {} -> {}",
                            a,
                            b,
                            nu
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn row_bound_truncates() {
        let out = schur_product(&p(&[1]), &p(&[1]), 1);
        assert_eq!(out.len(), 1);
        assert_eq!(out[&p(&[2])], 1);
    }

    #[test]
    fn symmetry_in_the_two_factors() {
        let a = p(&[3, 1]);
        let b = p(&[2, 2]);
        assert_eq!(schur_product(&a, &b, 4), schur_product(&b, &a, 4));
        let c = p(&[3, 2]);
        let d = p(&[2, 1, 1]);
        assert_eq!(schur_product(&c, &d, 5), schur_product(&d, &c, 5));
    }
}
