//! Exact Gauss-Jordan elimination.
//!
//! The reduced row echelon form computed here is the canonical form for
//! every vector space in the crate: pivots are chosen left to right in
//! column order, pivot entries are one, pivot columns are cleared above
//! and below, zero rows are dropped and rows are sorted by pivot column.
//! Two row-equivalent matrices reduce to identical forms.

use num::{One, Zero};

use crate::ratio::Q;

/// Reduce `rows` in place style; returns the canonical rows and the pivot
/// column of each returned row (strictly increasing).
pub fn rref(mut rows: Vec<Vec<Q>>) -> (Vec<Vec<Q>>, Vec<usize>) {
    let width = rows.first().map_or(0, Vec::len);
    debug_assert!(rows.iter().all(|r| r.len() == width));
    let mut pivots = Vec::new();
    let mut next_row = 0usize;
    for col in 0..width {
        let Some(src) = (next_row..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(next_row, src);
        let inv = rows[next_row][col].clone();
        if !inv.is_one() {
            for entry in rows[next_row].iter_mut() {
                if !entry.is_zero() {
                    *entry = &*entry / &inv;
                }
            }
        }
        for r in 0..rows.len() {
            if r != next_row && !rows[r][col].is_zero() {
                let factor = rows[r][col].clone();
                for c in col..width {
                    let delta = &factor * &rows[next_row][c];
                    rows[r][c] = &rows[r][c] - delta;
                }
            }
        }
        pivots.push(col);
        next_row += 1;
        if next_row == rows.len() {
            break;
        }
    }
    rows.truncate(next_row);
    (rows, pivots)
}

pub fn rank_of(rows: &[Vec<Q>]) -> usize {
    rref(rows.to_vec()).0.len()
}

/// Basis of the solution set of `rows · x = 0`, one vector per free column,
/// in RREF canonical form already (free columns ascending give pivots).
pub fn kernel_basis(rows: &[Vec<Q>], width: usize) -> Vec<Vec<Q>> {
    let (reduced, pivots) = rref(rows.to_vec());
    let mut is_pivot = vec![false; width];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let mut basis = Vec::new();
    for free in 0..width {
        if is_pivot[free] {
            continue;
        }
        let mut v = vec![Q::zero(); width];
        v[free] = Q::one();
        for (row, &p) in reduced.iter().zip(&pivots) {
            if !row[free].is_zero() {
                v[p] = -row[free].clone();
            }
        }
        basis.push(v);
    }
    basis
}

/// Outcome of solving `A x = b` exactly.
pub enum LinearOutcome {
    /// A particular solution plus a basis of the homogeneous kernel
    /// (empty kernel means the solution is unique).
    Solvable { particular: Vec<Q>, kernel: Vec<Vec<Q>> },
    /// A certificate `y` with `yᵀA = 0` and `yᵀb ≠ 0`.
    Inconsistent { combination: Vec<Q> },
}

/// Solve `A x = b`, tracking row combinations so inconsistency comes with
/// an exact certificate over the original rows.
pub fn solve_system(a: &[Vec<Q>], b: &[Q]) -> LinearOutcome {
    assert_eq!(a.len(), b.len());
    let width = a.first().map_or(0, Vec::len);
    let n = a.len();
    // Augment each row with the identity (to track combinations) and b.
    let mut rows: Vec<Vec<Q>> = a
        .iter()
        .zip(b)
        .enumerate()
        .map(|(i, (row, rhs))| {
            let mut v = row.clone();
            v.extend((0..n).map(|j| if i == j { Q::one() } else { Q::zero() }));
            v.push(rhs.clone());
            v
        })
        .collect();

    // Eliminate using only the first `width` columns as pivot candidates.
    let mut pivots: Vec<usize> = Vec::new();
    let mut next_row = 0usize;
    for col in 0..width {
        let Some(src) = (next_row..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(next_row, src);
        let inv = rows[next_row][col].clone();
        for entry in rows[next_row].iter_mut() {
            if !entry.is_zero() {
                *entry = &*entry / &inv;
            }
        }
        for r in 0..rows.len() {
            if r != next_row && !rows[r][col].is_zero() {
                let factor = rows[r][col].clone();
                let pivot_row = rows[next_row].clone();
                for (c, entry) in rows[r].iter_mut().enumerate() {
                    let delta = &factor * &pivot_row[c];
                    *entry = &*entry - delta;
                }
            }
        }
        pivots.push(col);
        next_row += 1;
        if next_row == rows.len() {
            break;
        }
    }

    for row in rows.iter().skip(next_row) {
        if !row[width + n].is_zero() {
            return LinearOutcome::Inconsistent { combination: row[width..width + n].to_vec() };
        }
    }

    let mut particular = vec![Q::zero(); width];
    for (row, &p) in rows.iter().zip(&pivots) {
        particular[p] = row[width + n].clone();
    }
    let a_part: Vec<Vec<Q>> = rows[..next_row].iter().map(|r| r[..width].to_vec()).collect();
    let kernel = kernel_basis(&a_part, width);
    LinearOutcome::Solvable { particular, kernel }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratio::q;

    #[test]
    fn rref_collapses_dependent_rows() {
        let (rows, pivots) = rref(vec![vec![q(1), q(1)], vec![q(2), q(2)]]);
        assert_eq!(rows, vec![vec![q(1), q(1)]]);
        assert_eq!(pivots, vec![0]);
    }

    #[test]
    fn rref_is_canonical_under_row_mixing() {
        let a = vec![vec![q(1), q(0), q(1)], vec![q(0), q(1), q(1)]];
        let b = vec![vec![q(3), q(2), q(5)], vec![q(1), q(1), q(2)]];
        assert_eq!(rref(a).0, rref(b).0);
    }

    #[test]
    fn kernel_is_orthogonal_to_rows() {
        let rows = vec![vec![q(1), q(2), q(3)], vec![q(0), q(1), q(1)]];
        let kernel = kernel_basis(&rows, 3);
        assert_eq!(kernel.len(), 1);
        for row in &rows {
            let dot: Q = row.iter().zip(&kernel[0]).map(|(a, b)| a * b).sum();
            assert!(dot == q(0));
        }
    }

    #[test]
    fn solve_reports_certificate() {
        // x + y = 1, x + y = 2 is inconsistent; certificate (-1, 1).
        let a = vec![vec![q(1), q(1)], vec![q(1), q(1)]];
        match solve_system(&a, &[q(1), q(2)]) {
            LinearOutcome::Inconsistent { combination } => {
                let lhs: Vec<Q> = (0..2)
                    .map(|c| combination.iter().zip(&a).map(|(y, row)| y * &row[c]).sum())
                    .collect();
                assert!(lhs.iter().all(|v| *v == q(0)));
                let rhs: Q = combination.iter().zip([q(1), q(2)]).map(|(y, b)| y * b).sum();
                assert!(rhs != q(0));
            }
            _ => panic!("expected inconsistency"),
        }
    }

    #[test]
    fn solve_unique_and_underdetermined() {
        let a = vec![vec![q(2), q(0)], vec![q(0), q(4)]];
        match solve_system(&a, &[q(5), q(1)]) {
            LinearOutcome::Solvable { particular, kernel } => {
                assert_eq!(particular, vec![crate::ratio::qr(5, 2), crate::ratio::qr(1, 4)]);
                assert!(kernel.is_empty());
            }
            _ => panic!(),
        }
        let a = vec![vec![q(1), q(1)]];
        match solve_system(&a, &[q(3)]) {
            LinearOutcome::Solvable { kernel, .. } => assert_eq!(kernel.len(), 1),
            _ => panic!(),
        }
    }
}
