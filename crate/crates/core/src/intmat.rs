//! Integer matrices, Smith and Hermite normal forms, integer kernels.
//!
//! These serve the lattice side of the crate: multiplicative relation
//! lattices are integer row lattices, their component counts come from
//! elementary divisors, and canonical bases come from the row-style Hermite
//! form.  Everything is deterministic: pivots are chosen by least absolute
//! value with ties broken by position, so equal inputs give equal outputs.
//!
//! A matrix may have zero rows (the empty lattice basis) but its column
//! count is always explicit.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Dense integer matrix, row-major; `rows == 0` is allowed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl IntMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<BigInt>) -> IntMatrix {
        assert_eq!(entries.len(), rows * cols, "entry count mismatch");
        IntMatrix {
            rows,
            cols,
            entries,
        }
    }

    pub fn from_rows(rows: Vec<Vec<BigInt>>, cols: usize) -> IntMatrix {
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        IntMatrix {
            rows: rows.len(),
            cols,
            entries: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_i64_rows(rows: &[&[i64]], cols: usize) -> IntMatrix {
        IntMatrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| BigInt::from(v)).collect())
                .collect(),
            cols,
        )
    }

    pub fn zero(rows: usize, cols: usize) -> IntMatrix {
        IntMatrix {
            rows,
            cols,
            entries: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> IntMatrix {
        let mut m = IntMatrix::zero(n, n);
        for i in 0..n {
            *m.entry_mut(i, i) = BigInt::one();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entry(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i * self.cols + j]
    }

    pub fn entry_mut(&mut self, i: usize, j: usize) -> &mut BigInt {
        &mut self.entries[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "matrix dimension mismatch");
        let mut out = IntMatrix::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.entry(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let prod = a * other.entry(k, j);
                    *out.entry_mut(i, j) += prod;
                }
            }
        }
        out
    }

    /// Diagonal entries (up to `min(rows, cols)`).
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.rows.min(self.cols))
            .map(|i| self.entry(i, i).clone())
            .collect()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.entries.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// `row[i] -= q * row[t]`.
    fn row_sub(&mut self, i: usize, t: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let delta = q * self.entry(t, j);
            *self.entry_mut(i, j) -= delta;
        }
    }

    /// `col[j] -= q * col[t]`.
    fn col_sub(&mut self, j: usize, t: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let delta = q * self.entry(i, t);
            *self.entry_mut(i, j) -= delta;
        }
    }

    /// `row[t] += row[i]`.
    fn row_add(&mut self, t: usize, i: usize) {
        for j in 0..self.cols {
            let delta = self.entry(i, j).clone();
            *self.entry_mut(t, j) += delta;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = -self.entry(i, j).clone();
            *self.entry_mut(i, j) = v;
        }
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.entry(i, j))?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

/// Smith normal form `U * M * V = D` with `U`, `V` unimodular and `D`
/// diagonal, nonnegative, each entry dividing the next.
pub struct Snf {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
}

impl Snf {
    /// The nonzero elementary divisors, in chain order.
    pub fn elementary_divisors(&self) -> Vec<BigInt> {
        self.d
            .diagonal()
            .into_iter()
            .filter(|d| !d.is_zero())
            .collect()
    }
}

/// Computes the Smith normal form by classical pivoting: pick the least
/// absolute nonzero entry of the residual block, clear its row and column
/// with floor-division reductions, and splice any non-divisible residual
/// entry into the pivot row so the pivot absorbs the gcd.  Pivot selection
/// breaks ties by position, so the decomposition is deterministic.
pub fn smith_normal_form(m: &IntMatrix) -> Snf {
    let rows = m.rows();
    let cols = m.cols();
    let mut d = m.clone();
    let mut u = IntMatrix::identity(rows);
    let mut v = IntMatrix::identity(cols);

    for t in 0..rows.min(cols) {
        loop {
            // Least-absolute-value pivot in the residual block.
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    if d.entry(i, j).is_zero() {
                        continue;
                    }
                    let better = match best {
                        None => true,
                        Some((bi, bj)) => {
                            d.entry(i, j).abs() < d.entry(bi, bj).abs()
                        }
                    };
                    if better {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else {
                // Residual block is zero: done with the whole matrix.
                finalize_signs(&mut d, &mut u, t);
                debug_assert!(check_divisibility_chain(&d));
                return Snf { u, d, v };
            };
            d.swap_rows(t, pi);
            u.swap_rows(t, pi);
            d.swap_cols(t, pj);
            v.swap_cols(t, pj);

            let pivot = d.entry(t, t).clone();
            let mut clean = true;
            for i in t + 1..rows {
                if d.entry(i, t).is_zero() {
                    continue;
                }
                let (q, _) = d.entry(i, t).div_mod_floor(&pivot);
                d.row_sub(i, t, &q);
                u.row_sub(i, t, &q);
                if !d.entry(i, t).is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..cols {
                if d.entry(t, j).is_zero() {
                    continue;
                }
                let (q, _) = d.entry(t, j).div_mod_floor(&pivot);
                d.col_sub(j, t, &q);
                v.col_sub(j, t, &q);
                if !d.entry(t, j).is_zero() {
                    clean = false;
                }
            }
            if !clean {
                // A remainder smaller than the pivot appeared; re-pivot.
                continue;
            }
            // Pivot row and column are clear.  If the pivot fails to divide
            // some residual entry, pull that row in and mix the gcd.
            let offender = (t + 1..rows)
                .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
                .find(|&(i, j)| !d.entry(i, j).mod_floor(&pivot.abs()).is_zero());
            match offender {
                Some((i, _)) => {
                    d.row_add(t, i);
                    u.row_add(t, i);
                }
                None => break,
            }
        }
    }
    finalize_signs(&mut d, &mut u, rows.min(cols));
    debug_assert!(check_divisibility_chain(&d));
    Snf { u, d, v }
}

fn finalize_signs(d: &mut IntMatrix, u: &mut IntMatrix, upto: usize) {
    for t in 0..upto.min(d.rows()).min(d.cols()) {
        if d.entry(t, t).is_negative() {
            d.negate_row(t);
            u.negate_row(t);
        }
    }
}

fn check_divisibility_chain(d: &IntMatrix) -> bool {
    let diag = d.diagonal();
    for w in diag.windows(2) {
        if w[0].is_zero() {
            if !w[1].is_zero() {
                return false;
            }
        } else if !w[1].mod_floor(&w[0]).is_zero() {
            return false;
        }
    }
    // Off-diagonal entries must be zero.
    for i in 0..d.rows() {
        for j in 0..d.cols() {
            if i != j && !d.entry(i, j).is_zero() {
                return false;
            }
        }
    }
    true
}

/// Basis of the left kernel `{ w : w * M = 0 }` as the rows of a matrix
/// (possibly zero rows).  Taken from the bottom rows of the Smith `U`.
pub fn left_kernel(m: &IntMatrix) -> IntMatrix {
    let snf = smith_normal_form(m);
    let rank = snf.elementary_divisors().len();
    let rows = (rank..m.rows()).map(|i| snf.u.row(i).to_vec()).collect();
    IntMatrix::from_rows(rows, m.rows())
}

/// Row-style Hermite normal form of the row lattice spanned by `m`:
/// echelon shape, positive pivots, entries above each pivot reduced into
/// `[0, pivot)`, zero rows dropped.  This is the canonical basis of the
/// lattice, so two generating sets of the same lattice give equal output.
pub fn hermite_rows(m: &IntMatrix) -> IntMatrix {
    let cols = m.cols();
    let mut rows: Vec<Vec<BigInt>> = m
        .row_vecs()
        .into_iter()
        .filter(|r| r.iter().any(|v| !v.is_zero()))
        .collect();
    let mut rank = 0;
    for col in 0..cols {
        loop {
            let pivot_row = (rank..rows.len())
                .filter(|&r| !rows[r][col].is_zero())
                .min_by(|&a, &b| {
                    rows[a][col]
                        .abs()
                        .cmp(&rows[b][col].abs())
                        .then(a.cmp(&b))
                });
            let Some(pr) = pivot_row else {
                break;
            };
            rows.swap(rank, pr);
            let pivot = rows[rank][col].clone();
            let mut reduced_all = true;
            for r in rank + 1..rows.len() {
                if rows[r][col].is_zero() {
                    continue;
                }
                let (q, _) = rows[r][col].div_mod_floor(&pivot);
                for c in 0..cols {
                    let delta = &q * &rows[rank][c];
                    rows[r][c] -= delta;
                }
                if !rows[r][col].is_zero() {
                    reduced_all = false;
                }
            }
            if reduced_all {
                if rows[rank][col].is_negative() {
                    for c in 0..cols {
                        rows[rank][c] = -rows[rank][c].clone();
                    }
                }
                // Reduce the entries above the pivot into [0, pivot).
                let pivot = rows[rank][col].clone();
                for r in 0..rank {
                    if rows[r][col].is_zero() {
                        continue;
                    }
                    let (q, _) = rows[r][col].div_mod_floor(&pivot);
                    for c in 0..cols {
                        let delta = &q * &rows[rank][c];
                        rows[r][c] -= delta;
                    }
                }
                rank += 1;
                break;
            }
        }
    }
    rows.retain(|r| r.iter().any(|v| !v.is_zero()));
    IntMatrix::from_rows(rows, cols)
}

/// Exact determinant of a square integer matrix (Bareiss condensation).
pub fn int_det(m: &IntMatrix) -> BigInt {
    assert_eq!(m.rows(), m.cols(), "determinant needs a square matrix");
    let n = m.rows();
    if n == 0 {
        return BigInt::one();
    }
    let mut a = m.row_vecs();
    let mut sign = 1i32;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            let swap = (k + 1..n).find(|&r| !a[r][k].is_zero());
            match swap {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &a[k][k] * &a[i][j] - &a[i][k] * &a[k][j];
                let (q, r) = num.div_rem(&prev);
                debug_assert!(r.is_zero(), "Bareiss division must be exact");
                a[i][j] = q;
            }
            a[i][k] = BigInt::zero();
        }
        prev = a[k][k].clone();
    }
    let det = a[n - 1][n - 1].clone();
    if sign < 0 {
        -det
    } else {
        det
    }
}
