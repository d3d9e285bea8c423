//! Reduction of two-dimensional systems to constant diagonal form.
//!
//! For `N = 2` the search for a conjugating gauge transform can be made
//! fully algorithmic.  A system with a rational skew eigenvector is gauge
//! equivalent to an upper-triangular system with constant diagonal, and the
//! remaining off-diagonal entry is removed by solving a scalar difference
//! equation.  When no rational eigenvector exists up to the degree bound,
//! the two-step cocycle is searched instead: a rational eigenvector there
//! either splits over ℚ (yielding a constant diagonal form with entries
//! `±r`) or certifies that diagonalization needs the quadratic extension
//! ℚ(√c₂), reported as the minimal polynomial of the missing eigenvalue.

use num_traits::{One, Signed, Zero};

use crate::invariant::{line_search_report, SkewLine};
use crate::poly::{poly_bezout, Poly};
use crate::polymat::{primitive_vector_with_factor, PolyMatrix};
use crate::rat::{rat, Rat};
use crate::system::{GaugeTransform, SkewSystem};
use crate::{Result, SkewError};

/// How a diagonal form was reached; kept on the result so callers can
/// report or audit the reduction path.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Provenance {
    /// The input was already a constant diagonal matrix.
    AlreadyDiagonal,
    /// A skew eigenvector of the one-step system was completed to a gauge
    /// transform; `off_diagonal` is the shear solving the remaining
    /// difference equation.
    FixedLine {
        line: SkewLine,
        off_diagonal: Poly,
    },
    /// No one-step eigenvector exists, but the two-step cocycle has one
    /// whose eigenvalue is a rational square.
    TwoCycle { line: SkewLine },
}

/// A certified constant diagonal form: `gauge` conjugates the original
/// system exactly onto `diag(b.0, b.1)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StraightForm {
    /// Diagonal entries, ordered with the selected eigenvalue first.
    pub b: (Rat, Rat),
    /// The gauge transform `T` with `T(x+1)^{-1} A(x) T(x) = diag(b)`.
    pub gauge: GaugeTransform,
    pub provenance: Provenance,
}

/// Outcome of [`straighten`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StraightVerdict {
    /// A gauge transform to constant diagonal form was found and verified.
    Diagonalized(StraightForm),
    /// No skew eigenvector of the system or its two-step cocycle exists
    /// with entry degrees up to the recorded bound.
    NoInvariantUpToBound(usize),
    /// Diagonalization requires a quadratic extension of ℚ; the payload is
    /// the minimal polynomial of the missing eigenvalue.
    ExtensionCertificate(Poly),
}

/// Completes a polynomial vector `(v1, v2)` with constant gcd to a matrix
/// `[[v1, -q], [v2, p]]` of determinant one, using the Bézout identity
/// `v1*p + v2*q = 1`.  Errors with [`SkewError::NotCoprime`] when the gcd
/// is nonconstant, since no polynomial completion exists then.
pub fn unimodular_completion(v1: &Poly, v2: &Poly) -> Result<PolyMatrix> {
    let (g, p, q) = poly_bezout(v1, v2)?;
    if !g.is_constant() {
        return Err(SkewError::NotCoprime { gcd: g });
    }
    // poly_bezout returns a monic gcd, so a constant gcd is exactly 1 and
    // the cofactor identity is already v1*p + v2*q = 1.
    Ok(PolyMatrix::from_rows(vec![
        vec![v1.clone(), q.neg()],
        vec![v2.clone(), p],
    ]))
}

/// Conjugates a two-dimensional system onto upper-triangular form using a
/// verified skew eigenvector as the first column of the gauge transform.
///
/// Returns the triangular system `[[c, b(x)], [0, det/c]]` together with
/// the gauge transform that produced it.  The line is re-verified against
/// `s`; a stale or mismatched line yields [`SkewError::NotALine`].
pub fn triangular_reduce(
    s: &SkewSystem,
    line: &SkewLine,
) -> Result<(SkewSystem, GaugeTransform)> {
    if s.dim() != 2 {
        return Err(SkewError::UnsupportedDimension {
            expected: 2,
            found: s.dim(),
        });
    }
    if !line.verify(s) {
        return Err(SkewError::NotALine);
    }
    let t0 = unimodular_completion(&line.v[0], &line.v[1])?;
    let gauge = GaugeTransform::new(t0)?;
    let reduced = s.gauge_conjugate(&gauge)?;
    debug_assert!(reduced.matrix().entry(1, 0).is_zero());
    debug_assert_eq!(
        reduced.matrix().entry(0, 0).constant_value(),
        Some(line.c.clone())
    );
    Ok((reduced, gauge))
}

/// Solves the scalar difference equation `a2 * u(x+1) - a1 * u(x) = b(x)`
/// for a polynomial `u`, with `a1, a2` nonzero constants.
///
/// When `a1 != a2` the solution is unique of degree `deg b`.  When
/// `a1 == a2` the kernel consists of the constants; the solution is
/// normalized by `u(0) = 0` and has degree `deg b + 1`.
pub fn solve_off_diagonal(a1: &Rat, a2: &Rat, b: &Poly) -> Result<Poly> {
    if a1.is_zero() || a2.is_zero() {
        return Err(SkewError::ZeroInput("diagonal coefficient"));
    }
    let u = if b.is_zero() {
        Poly::zero()
    } else if a1 == a2 {
        // a * (u(x+1) - u(x)) = b.  The forward difference of x^j has
        // coefficients C(j, i) for i < j, so with deg u = deg b + 1 the
        // equations for i = deg b .. 0 determine u_{i+1} in turn:
        //   a * (C(i+1, i) u_{i+1} + sum_{j > i+1} C(j, i) u_j) = b_i.
        let n = b.degree().unwrap();
        let mut u = vec![Rat::zero(); n + 2];
        for i in (0..=n).rev() {
            let mut acc = b.coeff(i) / a1;
            for j in (i + 2)..=(n + 1) {
                acc -= binomial(j, i) * &u[j];
            }
            u[i + 1] = acc / rat(i as i64 + 1);
        }
        Poly::new(u)
    } else {
        // Matching coefficients of x^i descending:
        //   (a2 - a1) u_i + a2 * sum_{j > i} C(j, i) u_j = b_i.
        let n = b.degree().unwrap();
        let gap = a2 - a1;
        let mut u = vec![Rat::zero(); n + 1];
        for i in (0..=n).rev() {
            let mut acc = b.coeff(i);
            for j in (i + 1)..=n {
                acc -= a2 * binomial(j, i) * &u[j];
            }
            u[i] = acc / &gap;
        }
        Poly::new(u)
    };
    debug_assert_eq!(
        u.shift_int(1).scale(a2).sub(&u.scale(a1)),
        *b,
        "difference equation solution failed to verify"
    );
    Ok(u)
}

fn binomial(n: usize, k: usize) -> Rat {
    let mut acc = Rat::one();
    for i in 0..k.min(n - k) {
        acc = acc * rat((n - i) as i64) / rat(i as i64 + 1);
    }
    acc
}

/// Searches for a gauge transform conjugating a two-dimensional system to
/// constant diagonal form, trying eigenvector degrees `0..=m_max`.
///
/// The search proceeds in three phases: an already-diagonal input is
/// returned unchanged with the identity gauge; otherwise the lowest-degree
/// rational skew eigenvectors are used to triangularize and then shear the
/// system to `diag(c, det/c)`; otherwise eigenvectors of the two-step
/// cocycle either split rationally to `diag(r, -r)` or certify that the
/// eigenvalues live in a quadratic extension.  Among eigenvectors of the
/// same degree the one with the largest `|c|` is preferred, breaking ties
/// by the smaller canonical vector.
pub fn straighten(s: &SkewSystem, m_max: usize) -> Result<StraightVerdict> {
    if s.dim() != 2 {
        return Err(SkewError::UnsupportedDimension {
            expected: 2,
            found: s.dim(),
        });
    }
    if let Some((d1, d2)) = constant_diagonal_entries(s.matrix()) {
        return Ok(StraightVerdict::Diagonalized(StraightForm {
            b: (d1, d2),
            gauge: GaugeTransform::identity(2),
            provenance: Provenance::AlreadyDiagonal,
        }));
    }

    if let Some(lines) = staged_lines(s.matrix(), 1, m_max) {
        let line = lines.into_iter().next().unwrap();
        let (tri, t0) = triangular_reduce(s, &line)?;
        let c = tri.matrix().entry(0, 0).constant_value().unwrap();
        let a2 = tri.matrix().entry(1, 1).constant_value().unwrap();
        let b = tri.matrix().entry(0, 1).clone();
        let u = solve_off_diagonal(&c, &a2, &b)?;
        let shear = GaugeTransform::new(PolyMatrix::from_rows(vec![
            vec![Poly::one(), u.clone()],
            vec![Poly::zero(), Poly::one()],
        ]))?;
        let gauge = t0.compose(&shear);
        let form = StraightForm {
            b: (c, a2),
            gauge,
            provenance: Provenance::FixedLine {
                line,
                off_diagonal: u,
            },
        };
        assert_diagonalizes(s, &form);
        return Ok(StraightVerdict::Diagonalized(form));
    }

    let two_step = s.cocycle(2);
    if let Some(lines) = staged_lines(&two_step, 2, m_max) {
        for line in &lines {
            match two_cycle_reduce(s, line)? {
                Some(verdict) => return Ok(verdict),
                None => continue,
            }
        }
    }
    Ok(StraightVerdict::NoInvariantUpToBound(m_max))
}

/// Runs the eigenvector search degree by degree and returns the lines of
/// the first degree at which any exist, ordered by the selection rule
/// (largest `|c|` first, ties by the smaller canonical vector).
fn staged_lines(a: &PolyMatrix, sigma: i64, m_max: usize) -> Option<Vec<SkewLine>> {
    for m in 0..=m_max {
        let report = line_search_report(a, sigma, m);
        if report.verified.is_empty() {
            continue;
        }
        let mut lines = report.verified;
        lines.sort_by(|p, q| {
            q.c.abs()
                .cmp(&p.c.abs())
                .then_with(|| p.v.cmp(&q.v))
                .then_with(|| p.c.cmp(&q.c))
        });
        return Some(lines);
    }
    None
}

fn constant_diagonal_entries(m: &PolyMatrix) -> Option<(Rat, Rat)> {
    if !m.entry(0, 1).is_zero() || !m.entry(1, 0).is_zero() {
        return None;
    }
    let d1 = m.entry(0, 0).constant_value()?;
    let d2 = m.entry(1, 1).constant_value()?;
    Some((d1, d2))
}

/// Attempts the two-step reduction for one eigenvector `w` of the two-step
/// cocycle with eigenvalue `c2`: the pair `(w, u)` with `α u(x+1) = A(x)
/// w(x)` conjugates the system onto the constant antidiagonal matrix
/// `[[0, c2/α], [α, 0]]`, which splits over ℚ exactly when `c2` is a
/// square.  Returns `None` when `[w | u]` is degenerate, in which case the
/// caller moves on to the next eigenvector.
fn two_cycle_reduce(s: &SkewSystem, line: &SkewLine) -> Result<Option<StraightVerdict>> {
    let c2 = line.c.clone();
    // u(x) is the primitive part of A(x-1) w(x-1), so A w = α u(x+1).
    let w_back: Vec<Poly> = line.v.iter().map(|p| p.shift_int(-1)).collect();
    let u_raw = s.matrix().shift(&rat(-1)).apply_polys(&w_back);
    if u_raw.iter().all(|p| p.is_zero()) {
        return Ok(None);
    }
    let (u, alpha) = primitive_vector_with_factor(&u_raw);
    let t0 = PolyMatrix::from_rows(vec![
        vec![line.v[0].clone(), u[0].clone()],
        vec![line.v[1].clone(), u[1].clone()],
    ]);
    // A degenerate pair would mean w already spans a one-step eigenvector,
    // which the one-step phase would have found; skip it defensively.
    if !t0.det().is_constant() || t0.det().is_zero() {
        return Ok(None);
    }
    let gauge0 = GaugeTransform::new(t0)?;
    let anti = s.gauge_conjugate(&gauge0)?;
    let expected = PolyMatrix::from_rows(vec![
        vec![Poly::zero(), Poly::constant(&c2 / &alpha)],
        vec![Poly::constant(alpha.clone()), Poly::zero()],
    ]);
    assert_eq!(
        *anti.matrix(),
        expected,
        "two-step pair failed to produce the antidiagonal form"
    );
    match rational_sqrt(&c2) {
        Some(r) => {
            // Constant eigenvectors (r, α) and (-r, α) of the antidiagonal
            // matrix give the final change of basis.
            let cols = PolyMatrix::from_rows(vec![
                vec![Poly::constant(r.clone()), Poly::constant(-&r)],
                vec![Poly::constant(alpha.clone()), Poly::constant(alpha)],
            ]);
            let gauge = gauge0.compose(&GaugeTransform::new(cols)?);
            let form = StraightForm {
                b: (r.clone(), -r),
                gauge,
                provenance: Provenance::TwoCycle { line: line.clone() },
            };
            assert_diagonalizes(s, &form);
            Ok(Some(StraightVerdict::Diagonalized(form)))
        }
        None => {
            // Minimal polynomial λ² - c2 of the irrational eigenvalue.
            let min_poly = Poly::new(vec![-c2, Rat::zero(), Rat::one()]);
            Ok(Some(StraightVerdict::ExtensionCertificate(min_poly)))
        }
    }
}

/// Exact square root of a positive rational, if one exists.
fn rational_sqrt(c: &Rat) -> Option<Rat> {
    if !c.is_positive() {
        return None;
    }
    let num = c.numer().sqrt();
    let den = c.denom().sqrt();
    if &(&num * &num) == c.numer() && &(&den * &den) == c.denom() {
        Some(Rat::new(num, den))
    } else {
        None
    }
}

fn assert_diagonalizes(s: &SkewSystem, form: &StraightForm) {
    let conjugated = s
        .gauge_conjugate(&form.gauge)
        .expect("gauge transform became singular");
    let target = PolyMatrix::diagonal_consts(&[form.b.0.clone(), form.b.1.clone()]);
    assert_eq!(
        *conjugated.matrix(),
        target,
        "diagonal form failed exact verification"
    );
}
