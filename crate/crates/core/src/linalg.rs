//! Exact kernels and ranks of rational matrices.
//!
//! Rows are first scaled to integers (row scaling changes neither rank nor
//! kernel), then reduced by fraction-free Bareiss elimination: the one-step
//! condensation whose divisions are exact because every intermediate entry
//! is a minor of the original matrix.  Pivots are chosen by least absolute
//! value to keep those minors small; ties break on row index, so the echelon
//! form — and everything derived from it — is deterministic.
//!
//! Kernel bases are returned as integer vectors with content 1, the first
//! nonzero entry positive, one vector per free column in column order.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::rat::Rat;

/// Echelon data produced by Bareiss elimination.
pub(crate) struct Echelon {
    /// Reduced integer rows (upper echelon on the pivot columns).
    pub rows: Vec<Vec<BigInt>>,
    /// Pivot column of each echelon row, strictly increasing.
    pub pivot_cols: Vec<usize>,
    pub cols: usize,
}

/// Fraction-free row echelon form of an integer matrix.
pub(crate) fn bareiss_echelon(mut rows: Vec<Vec<BigInt>>, cols: usize) -> Echelon {
    let m = rows.len();
    let mut pivot_cols = Vec::new();
    let mut prev_pivot = BigInt::one();
    let mut rank = 0;
    for col in 0..cols {
        if rank == m {
            break;
        }
        // Least-absolute-value pivot, ties to the earliest row: keeps the
        // minors (and so every later entry) as small as possible.
        let pivot_row = (rank..m)
            .filter(|&r| !rows[r][col].is_zero())
            .min_by(|&a, &b| {
                rows[a][col]
                    .abs()
                    .cmp(&rows[b][col].abs())
                    .then(a.cmp(&b))
            });
        let Some(pr) = pivot_row else {
            continue;
        };
        rows.swap(rank, pr);
        let pivot = rows[rank][col].clone();
        for r in rank + 1..m {
            // Every remaining row is updated, zero pivot-column entry or
            // not: the condensation keeps entries equal to minors of the
            // original matrix, which is what makes the division exact.
            for c in col + 1..cols {
                let num = &pivot * &rows[r][c] - &rows[r][col] * &rows[rank][c];
                let (q, rem) = num.div_rem(&prev_pivot);
                debug_assert!(rem.is_zero(), "Bareiss division must be exact");
                rows[r][c] = q;
            }
            rows[r][col] = BigInt::zero();
        }
        prev_pivot = pivot;
        pivot_cols.push(col);
        rank += 1;
    }
    rows.truncate(rank);
    Echelon {
        rows,
        pivot_cols,
        cols,
    }
}

/// Clears denominators row by row.
pub(crate) fn rows_to_integers(rows: &[Vec<Rat>]) -> Vec<Vec<BigInt>> {
    rows.iter()
        .map(|r| crate::rat::clear_denominators(r))
        .collect()
}

/// Rank of a rational matrix with `cols` columns (rows may be empty).
pub fn exact_rank(rows: &[Vec<Rat>], cols: usize) -> usize {
    debug_assert!(rows.iter().all(|r| r.len() == cols));
    bareiss_echelon(rows_to_integers(rows), cols).pivot_cols.len()
}

/// Basis of the right null space of a rational matrix.
///
/// Each basis vector has integer entries with content 1 and a positive first
/// nonzero entry; vectors are ordered by their free column, so the output is
/// a canonical function of the input.
pub fn exact_kernel(rows: &[Vec<Rat>], cols: usize) -> Vec<Vec<Rat>> {
    debug_assert!(rows.iter().all(|r| r.len() == cols));
    let ech = bareiss_echelon(rows_to_integers(rows), cols);
    kernel_from_echelon(&ech)
}

pub(crate) fn kernel_from_echelon(ech: &Echelon) -> Vec<Vec<Rat>> {
    let cols = ech.cols;
    let mut is_pivot = vec![false; cols];
    for &c in &ech.pivot_cols {
        is_pivot[c] = true;
    }
    let mut basis = Vec::new();
    for free in 0..cols {
        if is_pivot[free] {
            continue;
        }
        let mut v = vec![Rat::zero(); cols];
        v[free] = Rat::one();
        // Back-substitute the pivot coordinates from the bottom up.
        for row_idx in (0..ech.pivot_cols.len()).rev() {
            let pc = ech.pivot_cols[row_idx];
            if pc > free {
                continue;
            }
            let row = &ech.rows[row_idx];
            let mut acc = Rat::zero();
            for c in pc + 1..cols {
                if !v[c].is_zero() && !row[c].is_zero() {
                    acc += Rat::from_integer(row[c].clone()) * &v[c];
                }
            }
            if !acc.is_zero() {
                v[pc] = -acc / Rat::from_integer(row[pc].clone());
            }
        }
        let ints = crate::rat::primitive_signed(&v);
        basis.push(ints.into_iter().map(Rat::from_integer).collect());
    }
    basis
}
