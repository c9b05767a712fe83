//! Row reduction over F_p, shared by the subspace and rank computations.

use crate::fp;

/// Reduces `rows` in place to reduced row-echelon form and returns the pivot
/// columns. Zero rows are removed, so the remaining row count is the rank.
pub(crate) fn rref(rows: &mut Vec<Vec<u64>>, p: u64) -> Vec<usize> {
    let cols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(pivot_row) = (r..rows.len()).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(r, pivot_row);
        let inv = fp::inv(rows[r][c], p);
        for x in rows[r].iter_mut() {
            *x = fp::mul(*x, inv, p);
        }
        for i in 0..rows.len() {
            if i != r && rows[i][c] != 0 {
                let f = rows[i][c];
                let (pivot_row, target) = if i < r {
                    let (lo, hi) = rows.split_at_mut(r);
                    (&hi[0], &mut lo[i])
                } else {
                    let (lo, hi) = rows.split_at_mut(i);
                    (&lo[r], &mut hi[0])
                };
                for (t, &pv) in target.iter_mut().zip(pivot_row) {
                    *t = fp::sub(*t, fp::mul(f, pv, p), p);
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    pivots
}

/// Rank of a matrix over F_p without keeping the reduced rows.
pub(crate) fn rank(mut rows: Vec<Vec<u64>>, p: u64) -> usize {
    rref(&mut rows, p).len()
}
