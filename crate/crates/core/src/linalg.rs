//! Dense Gaussian elimination over any [`Scalar`].

use alloc::vec::Vec;

use crate::Scalar;

/// Outcome of solving a square or rectangular linear system.
#[derive(Debug, Clone, PartialEq)]
pub(crate) enum Solution<T> {
    /// No solution exists.
    Inconsistent,
    /// Exactly one solution.
    Unique(Vec<T>),
    /// Infinitely many solutions; the coefficient matrix has this rank.
    Underdetermined(usize),
}

/// Reduces the augmented matrix `[a | b]` to row echelon form in place and
/// returns the pivot columns. Rows of `a` must all have `cols` entries.
fn eliminate<T: Scalar>(a: &mut [Vec<T>], b: &mut [T], cols: usize) -> Vec<usize> {
    let rows = a.len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let mut best: Option<usize> = None;
        for i in r..rows {
            if a[i][c].is_negligible() {
                continue;
            }
            let better = match best {
                None => true,
                Some(j) => a[i][c].magnitude() > a[j][c].magnitude(),
            };
            if better {
                best = Some(i);
                if T::EXACT {
                    break;
                }
            }
        }
        let Some(p) = best else { continue };
        a.swap(r, p);
        b.swap(r, p);
        let pivot = a[r][c].clone();
        for i in 0..rows {
            if i == r || a[i][c].is_negligible() {
                continue;
            }
            let factor = a[i][c].clone() / pivot.clone();
            for j in c..cols {
                let delta = factor.clone() * a[r][j].clone();
                a[i][j] = a[i][j].clone() - delta;
            }
            let delta = factor * b[r].clone();
            b[i] = b[i].clone() - delta;
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Solves `a · x = b` where `a` has `cols` columns.
pub(crate) fn solve<T: Scalar>(mut a: Vec<Vec<T>>, mut b: Vec<T>, cols: usize) -> Solution<T> {
    let pivots = eliminate(&mut a, &mut b, cols);
    let rank = pivots.len();
    if b[rank..].iter().any(|v| !v.is_negligible()) {
        return Solution::Inconsistent;
    }
    if rank < cols {
        return Solution::Underdetermined(rank);
    }
    let mut x = Vec::with_capacity(cols);
    for (r, &c) in pivots.iter().enumerate() {
        x.push(b[r].clone() / a[r][c].clone());
    }
    Solution::Unique(x)
}

/// Rank of a matrix with `cols` columns.
pub(crate) fn rank<T: Scalar>(mut a: Vec<Vec<T>>, cols: usize) -> usize {
    let mut b = alloc::vec![T::zero(); a.len()];
    eliminate(&mut a, &mut b, cols).len()
}
