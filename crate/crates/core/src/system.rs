//! The dynamical system itself: `f(x, y) = (x + 1, A(x) y)`.
//!
//! `A` is a square polynomial matrix whose determinant is a nonzero
//! constant, so the fibre action is invertible over the polynomial ring and
//! the map is an automorphism of the affine space.  Everything downstream
//! (orbits, invariant lines, semi-invariant polynomials, diagonalisation)
//! goes through this type, which validates the determinant once on
//! construction.

use std::fmt;

use num_traits::Zero;

use crate::multipoly::MultiPoly;
use crate::poly::Poly;
use crate::polymat::PolyMatrix;
use crate::rat::{rat, Rat};
use crate::{Result, SkewError};

/// A point `(x, y_1, ..., y_N)` of the phase space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointState {
    pub x: Rat,
    pub y: Vec<Rat>,
}

impl PointState {
    pub fn new(x: Rat, y: Vec<Rat>) -> PointState {
        PointState { x, y }
    }

    pub fn from_ints(x: i64, y: &[i64]) -> PointState {
        PointState {
            x: rat(x),
            y: y.iter().map(|&v| rat(v)).collect(),
        }
    }
}

impl fmt::Display for PointState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}", self.x)?;
        for v in &self.y {
            write!(f, ", {}", v)?;
        }
        write!(f, ")")
    }
}

/// An invertible fibrewise change of variables `y = T(x) z`: a polynomial
/// matrix with constant nonzero determinant, so the inverse is again
/// polynomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GaugeTransform {
    t: PolyMatrix,
}

impl GaugeTransform {
    pub fn new(t: PolyMatrix) -> Result<GaugeTransform> {
        let det = t.det();
        match det.constant_value() {
            Some(c) if !c.is_zero() => Ok(GaugeTransform { t }),
            _ => Err(SkewError::NotUnimodular { det }),
        }
    }

    pub fn identity(n: usize) -> GaugeTransform {
        GaugeTransform {
            t: PolyMatrix::identity(n),
        }
    }

    pub fn matrix(&self) -> &PolyMatrix {
        &self.t
    }

    /// The inverse transform; always exists by the determinant invariant.
    pub fn inverse(&self) -> GaugeTransform {
        GaugeTransform {
            t: self.t.inverse().expect("constant nonzero determinant"),
        }
    }

    /// Composition as changes of variables: applying `self` after `other`
    /// multiplies the matrices.
    pub fn compose(&self, other: &GaugeTransform) -> GaugeTransform {
        GaugeTransform {
            t: self.t.mul(&other.t),
        }
    }
}

impl fmt::Display for GaugeTransform {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.t)
    }
}

/// `f(x, y) = (x + 1, A(x) y)` with `det A` a nonzero constant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SkewSystem {
    matrix: PolyMatrix,
    det: Rat,
}

impl SkewSystem {
    /// Validates that `det A(x)` is a nonzero constant and wraps the matrix.
    pub fn new(matrix: PolyMatrix) -> Result<SkewSystem> {
        let det = matrix.det();
        match det.constant_value() {
            Some(c) if !c.is_zero() => Ok(SkewSystem { matrix, det: c }),
            _ => Err(SkewError::InvalidSystem { det }),
        }
    }

    /// Fibre dimension `N`.
    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    pub fn matrix(&self) -> &PolyMatrix {
        &self.matrix
    }

    /// The (constant) determinant of `A`.
    pub fn det_constant(&self) -> &Rat {
        &self.det
    }

    /// One step of the dynamics: `(x, y) -> (x + 1, A(x) y)`.
    pub fn apply(&self, p: &PointState) -> Result<PointState> {
        if p.y.len() != self.dim() {
            return Err(SkewError::DimensionMismatch {
                expected: self.dim(),
                found: p.y.len(),
            });
        }
        Ok(PointState {
            x: &p.x + rat(1),
            y: self.matrix.apply_at(&p.x, &p.y),
        })
    }

    /// The forward orbit `[p, f(p), ..., f^steps(p)]` — `steps + 1` points.
    pub fn orbit(&self, p: &PointState, steps: usize) -> Result<Vec<PointState>> {
        // Validate dimensions up front even for a zero-step orbit.
        if p.y.len() != self.dim() {
            return Err(SkewError::DimensionMismatch {
                expected: self.dim(),
                found: p.y.len(),
            });
        }
        let mut out = Vec::with_capacity(steps + 1);
        let mut cur = p.clone();
        out.push(cur.clone());
        for _ in 0..steps {
            cur = self.apply(&cur)?;
            out.push(cur.clone());
        }
        Ok(out)
    }

    /// The matrix of the `m`-th iterate: `A(x + m - 1) ... A(x + 1) A(x)`,
    /// so that `f^m(x, y) = (x + m, cocycle(m)(x) y)`.  `cocycle(0)` is the
    /// identity.
    pub fn cocycle(&self, m: usize) -> PolyMatrix {
        let mut acc = PolyMatrix::identity(self.dim());
        for k in 0..m {
            acc = self.matrix.shift(&rat(k as i64)).mul(&acc);
        }
        acc
    }

    /// The system of the `m`-th iterate (`m >= 1`), as a skew system over
    /// the step `x -> x + m`.  Returned as a plain validated system: callers
    /// that need the step size track it themselves.
    pub fn iterate(&self, m: usize) -> Result<SkewSystem> {
        SkewSystem::new(self.cocycle(m))
    }

    /// Conjugation by the fibrewise change of variables `y = T(x) z`:
    /// the transformed system has matrix `T(x+1)^{-1} A(x) T(x)`.
    pub fn gauge_conjugate(&self, t: &GaugeTransform) -> Result<SkewSystem> {
        if t.matrix().dim() != self.dim() {
            return Err(SkewError::DimensionMismatch {
                expected: self.dim(),
                found: t.matrix().dim(),
            });
        }
        let t_next_inv = t.matrix().shift(&rat(1)).inverse()?;
        SkewSystem::new(t_next_inv.mul(&self.matrix).mul(t.matrix()))
    }

    /// Transports a polynomial along the dynamics: the result `Q` satisfies
    /// `Q(f^m(x, y)) = P(x, y)` for all points, i.e. `Q = P ∘ f^{-m}`.
    /// Negative `m` transports backwards (`Q = P ∘ f^{|m|}`).
    pub fn pushforward_poly(&self, p: &MultiPoly, m: i64) -> Result<MultiPoly> {
        if p.num_y() != self.dim() {
            return Err(SkewError::DimensionMismatch {
                expected: self.dim(),
                found: p.num_y(),
            });
        }
        if m == 0 {
            return Ok(p.clone());
        }
        if m > 0 {
            // f^{-m}(x, y) = (x - m, cocycle(m)(x - m)^{-1} y).
            let inv = self.cocycle(m as usize).inverse()?;
            let shifted = inv.shift(&rat(-m));
            p.compose(&rat(-m), &shifted)
        } else {
            let k = (-m) as usize;
            p.compose(&rat(k as i64), &self.cocycle(k))
        }
    }
}

impl fmt::Display for SkewSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(x, y) -> (x + 1, A(x) y) with A = {}", self.matrix)
    }
}

/// Convenience constructor used throughout the tests: a system from integer
/// coefficient rows, each entry given by ascending coefficients.
pub fn system_from_int_rows(rows: &[&[&[i64]]]) -> Result<SkewSystem> {
    let rows: Vec<Vec<Poly>> = rows
        .iter()
        .map(|row| row.iter().map(|e| Poly::from_ints(e)).collect())
        .collect();
    SkewSystem::new(PolyMatrix::from_rows(rows))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::multipoly::MultiPoly;
    use crate::rat::ratio;

    fn diag23() -> SkewSystem {
        system_from_int_rows(&[&[&[2], &[0]], &[&[0], &[3]]]).unwrap()
    }

    #[test]
    fn rejects_non_constant_determinant() {
        // A = [[x, 0], [0, 1]] has det x: not an automorphism.
        let err = system_from_int_rows(&[&[&[0, 1], &[0]], &[&[0], &[1]]]);
        assert!(matches!(err, Err(SkewError::InvalidSystem { .. })));
        // Singular constant matrix is rejected too.
        let err = system_from_int_rows(&[&[&[1], &[1]], &[&[1], &[1]]]);
        assert!(matches!(err, Err(SkewError::InvalidSystem { .. })));
    }

    #[test]
    fn applies_and_orbits() {
        let s = system_from_int_rows(&[&[&[1], &[1]], &[&[0, 1], &[1, 1]]]).unwrap();
        assert_eq!(s.det_constant(), &rat(1));
        let p = PointState::from_ints(0, &[1, 0]);
        // Orbit of (0, (1, 0)): three applications give four points.
        let orbit = s.orbit(&p, 3).unwrap();
        assert_eq!(
            orbit,
            vec![
                PointState::from_ints(0, &[1, 0]),
                PointState::from_ints(1, &[1, 0]),
                PointState::from_ints(2, &[1, 1]),
                PointState::from_ints(3, &[2, 5]),
            ]
        );
        assert_eq!(s.orbit(&p, 0).unwrap(), vec![p.clone()]);
        let bad = PointState::from_ints(0, &[1]);
        assert!(matches!(
            s.orbit(&bad, 2),
            Err(SkewError::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn cocycle_of_shear() {
        let s = system_from_int_rows(&[&[&[1], &[0, 1]], &[&[0], &[1]]]).unwrap();
        assert_eq!(s.cocycle(0), PolyMatrix::identity(2));
        let c2 = s.cocycle(2);
        // A(x+1) A(x) = [[1, 2x+1], [0, 1]].
        let expect = PolyMatrix::from_rows(vec![
            vec![Poly::from_ints(&[1]), Poly::from_ints(&[1, 2])],
            vec![Poly::zero(), Poly::from_ints(&[1])],
        ]);
        assert_eq!(c2, expect);
    }

    #[test]
    fn gauge_conjugation_by_shear() {
        let t = GaugeTransform::new(PolyMatrix::from_rows(vec![
            vec![Poly::from_ints(&[1]), Poly::from_ints(&[0, 1])],
            vec![Poly::zero(), Poly::from_ints(&[1])],
        ]))
        .unwrap();
        let s = diag23().gauge_conjugate(&t).unwrap();
        // T(x+1)^{-1} diag(2,3) T(x) = [[2, -x-3], [0, 3]].
        let expect = system_from_int_rows(&[&[&[2], &[-3, -1]], &[&[0], &[3]]]).unwrap();
        assert_eq!(s, expect);
        // Conjugating back by the inverse transform restores the system.
        let back = s.gauge_conjugate(&t.inverse()).unwrap();
        assert_eq!(back, diag23());
    }

    #[test]
    fn gauge_transform_requires_constant_determinant() {
        let t = PolyMatrix::from_rows(vec![
            vec![Poly::from_ints(&[0, 1]), Poly::zero()],
            vec![Poly::zero(), Poly::from_ints(&[1])],
        ]);
        assert!(matches!(
            GaugeTransform::new(t),
            Err(SkewError::NotUnimodular { .. })
        ));
    }

    #[test]
    fn pushforward_of_coordinate() {
        let s = diag23();
        let y1 = MultiPoly::var_y(2, 0);
        let fwd = s.pushforward_poly(&y1, 1).unwrap();
        assert_eq!(fwd, y1.scale(&ratio(1, 2)));
        // Pushing forward then pulling back is the identity.
        let back = s.pushforward_poly(&fwd, -1).unwrap();
        assert_eq!(back, y1);
    }

    #[test]
    fn pushforward_composes_with_the_dynamics() {
        // Q = P ∘ f^{-m} means Q(f^m(p)) = P(p) at every rational point.
        let s = system_from_int_rows(&[&[&[1], &[0, 1]], &[&[0], &[1]]]).unwrap();
        let p = MultiPoly::var_y(2, 0)
            .mul(&MultiPoly::var_y(2, 1))
            .add(&MultiPoly::from_poly_in_x(2, &Poly::x()));
        for m in 1..4i64 {
            let q = s.pushforward_poly(&p, m).unwrap();
            let start = PointState::from_ints(2, &[1, -3]);
            let orbit = s.orbit(&start, m as usize).unwrap();
            let image = orbit.last().unwrap();
            assert_eq!(q.eval(&image.x, &image.y), p.eval(&start.x, &start.y));
        }
    }
}
