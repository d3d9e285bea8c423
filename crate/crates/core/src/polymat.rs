//! Square matrices over the polynomial ring.
//!
//! These are the gauge transforms and system matrices of the crate: small
//! (dimension is the fibre dimension `n`), dense, exact.  Determinants use
//! cofactor expansion along the sparsest row or column — at these sizes that
//! beats setting up fraction-free elimination over the polynomial ring, and
//! it never divides, so no exactness argument is needed.

use std::fmt;

use num_traits::Zero;

use crate::poly::Poly;
use crate::rat::Rat;
use crate::{Result, SkewError};

/// Square polynomial matrix, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyMatrix {
    n: usize,
    entries: Vec<Poly>,
}

impl PolyMatrix {
    /// Builds from rows; panics unless the grid is square and nonempty
    /// (matrices here are always `GL`-candidates, which have positive size).
    pub fn from_rows(rows: Vec<Vec<Poly>>) -> PolyMatrix {
        let n = rows.len();
        assert!(n > 0, "polynomial matrix must be nonempty");
        assert!(
            rows.iter().all(|r| r.len() == n),
            "polynomial matrix must be square"
        );
        PolyMatrix {
            n,
            entries: rows.into_iter().flatten().collect(),
        }
    }

    pub fn identity(n: usize) -> PolyMatrix {
        let mut m = PolyMatrix::zero(n);
        for i in 0..n {
            *m.entry_mut(i, i) = Poly::one();
        }
        m
    }

    pub fn zero(n: usize) -> PolyMatrix {
        assert!(n > 0, "polynomial matrix must be nonempty");
        PolyMatrix {
            n,
            entries: vec![Poly::zero(); n * n],
        }
    }

    /// Diagonal matrix with constant entries.
    pub fn diagonal_consts(diag: &[Rat]) -> PolyMatrix {
        let mut m = PolyMatrix::zero(diag.len());
        for (i, c) in diag.iter().enumerate() {
            *m.entry_mut(i, i) = Poly::constant(c.clone());
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn entry(&self, i: usize, j: usize) -> &Poly {
        &self.entries[i * self.n + j]
    }

    pub fn entry_mut(&mut self, i: usize, j: usize) -> &mut Poly {
        &mut self.entries[i * self.n + j]
    }

    pub fn rows(&self) -> Vec<Vec<Poly>> {
        (0..self.n)
            .map(|i| (0..self.n).map(|j| self.entry(i, j).clone()).collect())
            .collect()
    }

    /// Maximum entry degree (zero matrix gives 0).
    pub fn max_degree(&self) -> usize {
        self.entries
            .iter()
            .map(|p| p.degree_or_zero())
            .max()
            .unwrap_or(0)
    }

    pub fn mul(&self, other: &PolyMatrix) -> PolyMatrix {
        assert_eq!(self.n, other.n, "matrix dimension mismatch");
        let mut out = PolyMatrix::zero(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                let mut acc = Poly::zero();
                for k in 0..self.n {
                    acc = acc.add(&self.entry(i, k).mul(other.entry(k, j)));
                }
                *out.entry_mut(i, j) = acc;
            }
        }
        out
    }

    /// Matrix-vector product over the polynomial ring.
    pub fn apply_polys(&self, v: &[Poly]) -> Vec<Poly> {
        assert_eq!(v.len(), self.n, "vector dimension mismatch");
        (0..self.n)
            .map(|i| {
                let mut acc = Poly::zero();
                for (j, vj) in v.iter().enumerate() {
                    acc = acc.add(&self.entry(i, j).mul(vj));
                }
                acc
            })
            .collect()
    }

    /// Matrix-vector product with the matrix evaluated at a rational point.
    pub fn apply_at(&self, x: &Rat, v: &[Rat]) -> Vec<Rat> {
        assert_eq!(v.len(), self.n, "vector dimension mismatch");
        (0..self.n)
            .map(|i| {
                let mut acc = Rat::zero();
                for (j, vj) in v.iter().enumerate() {
                    acc += self.entry(i, j).eval(x) * vj;
                }
                acc
            })
            .collect()
    }

    /// Entrywise shift `M(x + a)`.
    pub fn shift(&self, a: &Rat) -> PolyMatrix {
        PolyMatrix {
            n: self.n,
            entries: self.entries.iter().map(|p| p.shift(a)).collect(),
        }
    }

    pub fn scale(&self, c: &Rat) -> PolyMatrix {
        PolyMatrix {
            n: self.n,
            entries: self.entries.iter().map(|p| p.scale(c)).collect(),
        }
    }

    /// Exact determinant by cofactor expansion along the sparsest column.
    pub fn det(&self) -> Poly {
        let rows: Vec<usize> = (0..self.n).collect();
        let cols: Vec<usize> = (0..self.n).collect();
        self.det_minor(&rows, &cols)
    }

    fn det_minor(&self, rows: &[usize], cols: &[usize]) -> Poly {
        let k = rows.len();
        if k == 0 {
            return Poly::one();
        }
        if k == 1 {
            return self.entry(rows[0], cols[0]).clone();
        }
        if k == 2 {
            let a = self.entry(rows[0], cols[0]).mul(self.entry(rows[1], cols[1]));
            let b = self.entry(rows[0], cols[1]).mul(self.entry(rows[1], cols[0]));
            return a.sub(&b);
        }
        // Expand along the column with the most zero entries.
        let (best_idx, _) = cols
            .iter()
            .enumerate()
            .map(|(idx, &c)| {
                let zeros = rows
                    .iter()
                    .filter(|&&r| self.entry(r, c).is_zero())
                    .count();
                (idx, zeros)
            })
            .max_by_key(|&(idx, zeros)| (zeros, std::cmp::Reverse(idx)))
            .unwrap();
        let col = cols[best_idx];
        let sub_cols: Vec<usize> = cols
            .iter()
            .copied()
            .filter(|&c| c != col)
            .collect();
        let mut acc = Poly::zero();
        for (r_idx, &r) in rows.iter().enumerate() {
            let pivot = self.entry(r, col);
            if pivot.is_zero() {
                continue;
            }
            let sub_rows: Vec<usize> = rows.iter().copied().filter(|&q| q != r).collect();
            let minor = self.det_minor(&sub_rows, &sub_cols);
            let signed = if (r_idx + best_idx) % 2 == 0 {
                pivot.mul(&minor)
            } else {
                pivot.mul(&minor).neg()
            };
            acc = acc.add(&signed);
        }
        acc
    }

    /// Exact inverse, defined only when the determinant is a nonzero
    /// constant (so the inverse has polynomial entries).  The result is
    /// verified against `M * M^-1 = I` before being returned.
    pub fn inverse(&self) -> Result<PolyMatrix> {
        let det = self.det();
        let det_const = match det.constant_value() {
            Some(c) if !c.is_zero() => c,
            _ => return Err(SkewError::NotUnimodular { det }),
        };
        let inv_det = det_const.recip();
        let mut adj = PolyMatrix::zero(self.n);
        let all: Vec<usize> = (0..self.n).collect();
        for i in 0..self.n {
            for j in 0..self.n {
                let rows: Vec<usize> = all.iter().copied().filter(|&r| r != i).collect();
                let cols: Vec<usize> = all.iter().copied().filter(|&c| c != j).collect();
                let minor = self.det_minor(&rows, &cols);
                let cof = if (i + j) % 2 == 0 { minor } else { minor.neg() };
                // Adjugate transposes the cofactor grid.
                *adj.entry_mut(j, i) = cof.scale(&inv_det);
            }
        }
        debug_assert_eq!(self.mul(&adj), PolyMatrix::identity(self.n));
        Ok(adj)
    }
}

/// Scales a nonzero polynomial vector to content-1 integer coefficients,
/// returning the primitive vector and the positive factor by which the
/// original exceeds it: `original = factor * primitive`.
pub(crate) fn primitive_vector_with_factor(v: &[Poly]) -> (Vec<Poly>, Rat) {
    use num_bigint::BigInt;
    use num_integer::Integer;
    use num_traits::One;

    assert!(
        v.iter().any(|p| !p.is_zero()),
        "primitive form of the zero vector is undefined"
    );
    let mut lcm = BigInt::one();
    let mut content = BigInt::zero();
    for p in v {
        for c in p.coeffs() {
            lcm = lcm.lcm(c.denom());
        }
    }
    for p in v {
        for c in p.coeffs() {
            content = content.gcd(&(c.numer() * (&lcm / c.denom())));
        }
    }
    let factor = Rat::new(content.clone(), lcm.clone());
    let scale = factor.recip();
    let prim = v.iter().map(|p| p.scale(&scale)).collect();
    (prim, factor)
}

impl fmt::Display for PolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.n {
            if i > 0 {
                write!(f, "; ")?;
            }
            write!(f, "[")?;
            for j in 0..self.n {
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

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat;

    fn m(rows: &[&[&[i64]]]) -> PolyMatrix {
        PolyMatrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|c| Poly::from_ints(c)).collect())
                .collect(),
        )
    }

    #[test]
    fn determinant_of_triangular_matrix() {
        // [[x, 1], [0, x]] has determinant x^2.
        let a = m(&[&[&[0, 1], &[1]], &[&[0], &[0, 1]]]);
        assert_eq!(a.det(), Poly::from_ints(&[0, 0, 1]));
    }

    #[test]
    fn inverse_of_unimodular_shear() {
        // [[1, x], [0, 1]]^-1 = [[1, -x], [0, 1]].
        let a = m(&[&[&[1], &[0, 1]], &[&[0], &[1]]]);
        let inv = a.inverse().unwrap();
        assert_eq!(inv, m(&[&[&[1], &[0, -1]], &[&[0], &[1]]]));
    }

    #[test]
    fn inverse_rejects_polynomial_determinant() {
        let a = m(&[&[&[0, 1], &[0]], &[&[0], &[1]]]);
        match a.inverse() {
            Err(SkewError::NotUnimodular { det }) => assert_eq!(det, Poly::x()),
            other => panic!("expected NotUnimodular, got {other:?}"),
        }
    }

    #[test]
    fn shift_acts_entrywise() {
        let a = m(&[&[&[0, 1], &[1]], &[&[0], &[0, 1]]]);
        let shifted = a.shift(&rat(1));
        assert_eq!(*shifted.entry(0, 0), Poly::from_ints(&[1, 1]));
        assert_eq!(*shifted.entry(1, 1), Poly::from_ints(&[1, 1]));
    }

    #[test]
    fn cofactor_dimension_three() {
        // Determinant of a 3x3 companion-style matrix, checked by hand:
        // [[0, 0, 1], [1, 0, 2], [0, 1, 3]] has determinant 1.
        let a = m(&[
            &[&[0], &[0], &[1]],
            &[&[1], &[0], &[2]],
            &[&[0], &[1], &[3]],
        ]);
        assert_eq!(a.det(), Poly::one());
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv), PolyMatrix::identity(3));
    }
}
