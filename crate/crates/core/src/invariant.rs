//! Invariant structures of a skew system: line subbundles carried to
//! themselves by the dynamics, semi-invariant polynomials (whose zero sets
//! are invariant hypersurfaces), and periods of hypersurfaces.
//!
//! A skew eigenvector is a nonzero polynomial vector `v` with
//! `A(x) v(x) = c * v(x + 1)` for a scalar `c`; its span is a rank-1
//! subbundle mapped onto itself.  A semi-invariant of `y`-homogeneous
//! degree `h` is a polynomial `P` with `P(x+1, A(x) y) = q * P(x, y)`.
//! Both searches run through the same machinery: a linear pencil over the
//! coefficient space whose admissible scalars are integer eigenvalues of an
//! integer matrix divided by a known denominator (see the pencil module),
//! each candidate confirmed by an exact kernel computation and each
//! reported solution re-verified against its defining identity.
//!
//! Searches are bounded: a line search is complete for `deg v` up to the
//! supplied bound, a semi-invariant search for `x`-degree up to the bound.
//! Emptiness therefore means "none up to the bound", never a general
//! impossibility proof.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::multipoly::MultiPoly;
use crate::pencil::{line_pencil, semi_pencil, vector_to_multipoly, vector_to_polys, Pencil};
use crate::poly::Poly;
use crate::polymat::{primitive_vector_with_factor, PolyMatrix};
use crate::rat::{rat, Rat};
use crate::system::SkewSystem;
use crate::{Result, SkewError};

/// An invariant line subbundle: `A(x) v(x) = c * v(x + 1)` exactly, with
/// `v` primitive (integer coefficients of content 1) and the leading
/// coefficient of the highest-degree entry positive.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct SkewLine {
    pub c: Rat,
    pub v: Vec<Poly>,
}

impl SkewLine {
    /// Canonicalises a solution vector: primitive integer coefficients,
    /// sign fixed by the highest-degree entry.
    pub fn new(c: Rat, v: Vec<Poly>) -> Result<SkewLine> {
        if c.is_zero() {
            return Err(SkewError::NotALine);
        }
        if v.iter().all(|p| p.is_zero()) {
            return Err(SkewError::NotALine);
        }
        let (mut prim, _) = primitive_vector_with_factor(&v);
        let top_degree = prim.iter().filter_map(|p| p.degree()).max().unwrap();
        let lead = prim
            .iter()
            .find(|p| p.degree() == Some(top_degree))
            .unwrap()
            .leading();
        if lead.is_negative() {
            prim = prim.iter().map(|p| p.neg()).collect();
        }
        Ok(SkewLine { c, v: prim })
    }

    /// The largest entry degree.
    pub fn degree(&self) -> usize {
        self.v.iter().filter_map(|p| p.degree()).max().unwrap_or(0)
    }

    /// Exact check of `A(x) v(x) = c * v(x + sigma)`.
    pub fn verify_with_step(&self, a: &PolyMatrix, sigma: i64) -> bool {
        if a.dim() != self.v.len() {
            return false;
        }
        let lhs = a.apply_polys(&self.v);
        lhs.iter()
            .zip(&self.v)
            .all(|(l, vi)| *l == vi.shift_int(sigma).scale(&self.c))
    }

    /// Exact check of the defining identity for the one-step dynamics.
    pub fn verify(&self, s: &SkewSystem) -> bool {
        self.verify_with_step(s.matrix(), 1)
    }
}

impl fmt::Display for SkewLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(c = {}, v = (", self.c)?;
        for (i, p) in self.v.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", p)?;
        }
        write!(f, "))")
    }
}

/// A scalar `q` together with a basis of the polynomials satisfying
/// `P(x+1, A(x) y) = q * P(x, y)` within the searched space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SemiInvariant {
    pub q: Rat,
    pub basis: Vec<MultiPoly>,
}

impl fmt::Display for SemiInvariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "q = {}: {{", self.q)?;
        for (i, p) in self.basis.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", p)?;
        }
        write!(f, "}}")
    }
}

/// Diagnostics of one pencil solve, generic over the kind of solution.
#[derive(Debug, Clone)]
pub struct PencilReport<T> {
    /// The degree bound the search ran at.
    pub degree: usize,
    /// Dimension of the coefficient search space (pencil columns).
    pub dimension: usize,
    /// Rank of the pencil over the rational function field in the scalar.
    pub function_field_rank: usize,
    /// Polynomial in the scalar whose rational roots are exactly the
    /// candidate scalars (primitive integer form).
    pub candidate_poly: Poly,
    /// The verified candidate scalars, ascending.
    pub candidates: Vec<Rat>,
    /// True when solutions do not come in finitely many lines: some scalar
    /// admits a solution space of dimension at least two, or the pencil is
    /// rank-deficient over the function field.
    pub parametric: bool,
    /// The verified solutions.
    pub verified: Vec<T>,
}

fn candidate_poly_of(pencil: &Pencil) -> Poly {
    // The integer reduction records eigenvalues of `denom * c`; substitute
    // to land back on the scalar and normalise to a primitive integer
    // polynomial with positive leading coefficient.
    let cp = pencil.char_poly();
    let denom = pencil.denom().clone();
    let mut pw = BigInt::one();
    let coeffs: Vec<Rat> = cp
        .iter()
        .map(|a| {
            let v = Rat::from(a * &pw);
            pw = &pw * &denom;
            v
        })
        .collect();
    let p = Poly::new(coeffs);
    let ints = p.primitive_integer();
    let flip = ints.last().map_or(false, |l| l.is_negative());
    Poly::new(
        ints.into_iter()
            .map(|n| Rat::from(if flip { -n } else { n }))
            .collect(),
    )
}

/// All invariant lines with `deg v <= m_max`, in canonical order.  The
/// solution space at the bound contains every lower-degree solution, so a
/// single pencil at `m_max` is a complete search.
pub fn skew_eigenvectors(s: &SkewSystem, m_max: usize) -> Vec<SkewLine> {
    skew_eigenvectors_report(s, m_max).verified
}

/// Line search with full solver diagnostics.
pub fn skew_eigenvectors_report(s: &SkewSystem, m_max: usize) -> PencilReport<SkewLine> {
    line_search_report(s.matrix(), 1, m_max)
}

/// Shared implementation, parameterised by the shift step so that searches
/// on iterate systems (step 2 for the two-cycle reduction) reuse it.
pub(crate) fn line_search_report(
    a: &PolyMatrix,
    sigma: i64,
    m_max: usize,
) -> PencilReport<SkewLine> {
    let pencil = line_pencil(a, sigma, m_max);
    let function_field_rank = pencil.function_field_rank();
    let candidates = pencil.candidates();
    let mut parametric = function_field_rank < pencil.cols();
    let mut lines: Vec<SkewLine> = Vec::new();
    for c in &candidates {
        let kernel = pencil.kernel_at(c);
        if kernel.len() >= 2 {
            parametric = true;
        }
        for vec in kernel {
            let line = SkewLine::new(c.clone(), vector_to_polys(&vec, a.dim()))
                .expect("kernel vectors are nonzero and candidates exclude zero");
            assert!(
                line.verify_with_step(a, sigma),
                "pencil kernel vector failed re-verification"
            );
            lines.push(line);
        }
    }
    lines.sort();
    lines.dedup();
    PencilReport {
        degree: m_max,
        dimension: pencil.cols(),
        function_field_rank,
        candidate_poly: candidate_poly_of(&pencil),
        candidates,
        parametric,
        verified: lines,
    }
}

/// All semi-invariants of `y`-homogeneous degree `h` with `x`-degree at
/// most `e_max`, grouped per scalar `q`, ascending in `q`.
pub fn semi_invariants(s: &SkewSystem, h: u32, e_max: u32) -> Vec<SemiInvariant> {
    semi_invariants_report(s, h, e_max).verified
}

/// Semi-invariant search with full solver diagnostics.
pub fn semi_invariants_report(s: &SkewSystem, h: u32, e_max: u32) -> PencilReport<SemiInvariant> {
    assert!(h >= 1, "y-homogeneous degree must be at least 1");
    let (pencil, basis) =
        semi_pencil(s.matrix(), h, e_max).expect("system matrix is dimension-consistent");
    let function_field_rank = pencil.function_field_rank();
    let candidates = pencil.candidates();
    let mut parametric = function_field_rank < pencil.cols();
    let mut verified: Vec<SemiInvariant> = Vec::new();
    for q in &candidates {
        let kernel = pencil.kernel_at(q);
        if kernel.is_empty() {
            continue;
        }
        if kernel.len() >= 2 {
            parametric = true;
        }
        let mut elems: Vec<MultiPoly> = kernel
            .iter()
            .map(|vec| vector_to_multipoly(vec, &basis, s.dim()).canonical())
            .collect();
        for p in &elems {
            assert!(
                is_semi_invariant(s, p, q).unwrap_or(false),
                "semi-invariant failed re-verification"
            );
        }
        elems.sort();
        verified.push(SemiInvariant {
            q: q.clone(),
            basis: elems,
        });
    }
    verified.sort_by(|a, b| a.q.cmp(&b.q));
    PencilReport {
        degree: e_max as usize,
        dimension: pencil.cols(),
        function_field_rank,
        candidate_poly: candidate_poly_of(&pencil),
        candidates,
        parametric,
        verified,
    }
}

/// Semi-invariants over all homogeneous degrees `1 <= h <= d_max`, merged
/// into mixed-degree eigenspaces that share the same scalar `q`.
pub fn semi_invariants_total(s: &SkewSystem, d_max: u32, e_max: u32) -> Vec<SemiInvariant> {
    assert!(d_max >= 1, "total degree bound must be at least 1");
    let mut by_q: BTreeMap<Rat, Vec<MultiPoly>> = BTreeMap::new();
    for h in 1..=d_max {
        for si in semi_invariants(s, h, e_max) {
            by_q.entry(si.q).or_default().extend(si.basis);
        }
    }
    by_q
        .into_iter()
        .map(|(q, mut basis)| {
            basis.sort();
            SemiInvariant { q, basis }
        })
        .collect()
}

/// Exact test of `P(x+1, A(x) y) = q * P(x, y)`.
pub fn is_semi_invariant(s: &SkewSystem, p: &MultiPoly, q: &Rat) -> Result<bool> {
    if p.is_zero() {
        return Err(SkewError::ZeroInput("is_semi_invariant"));
    }
    let image = p.compose(&rat(1), s.matrix())?;
    Ok(image == p.scale(q))
}

/// The least `1 <= m <= m_max` such that transporting `P` along `f^m`
/// yields a scalar multiple of `P` (the hypersurface `P = 0` is invariant
/// under the `m`-th iterate), or `None` within the bound.
pub fn period_search(s: &SkewSystem, p: &MultiPoly, m_max: usize) -> Result<Option<usize>> {
    if p.is_zero() {
        return Err(SkewError::ZeroInput("period_search"));
    }
    assert!(m_max >= 1, "period bound must be at least 1");
    for m in 1..=m_max {
        let moved = s.pushforward_poly(p, m as i64)?;
        if moved.proportionality(p).is_some() {
            return Ok(Some(m));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::ratio;
    use crate::system::system_from_int_rows;

    fn diag(entries: &[i64]) -> SkewSystem {
        SkewSystem::new(PolyMatrix::diagonal_consts(
            &entries.iter().map(|&e| rat(e)).collect::<Vec<_>>(),
        ))
        .unwrap()
    }

    fn mono(n: usize, x: u32, y: &[u32]) -> MultiPoly {
        MultiPoly::from_terms(
            n,
            vec![(crate::multipoly::Mono::new(x, y.to_vec()), Rat::one())],
        )
    }

    #[test]
    fn triangular_system_has_two_lines() {
        let s = system_from_int_rows(&[&[&[2], &[3, 1]], &[&[0], &[3]]]).unwrap();
        let report = skew_eigenvectors_report(&s, 2);
        assert!(!report.parametric);
        assert_eq!(report.function_field_rank, report.dimension);
        let lines = report.verified;
        assert_eq!(lines.len(), 2);
        assert_eq!(lines[0].c, rat(2));
        assert_eq!(lines[0].v, vec![Poly::one(), Poly::zero()]);
        assert_eq!(lines[1].c, rat(3));
        assert_eq!(lines[1].v, vec![Poly::x(), Poly::one()]);
        for l in &lines {
            assert!(l.verify(&s));
        }
        // The product of the scalars over a complete set of lines is the
        // determinant constant.
        assert_eq!(&lines[0].c * &lines[1].c, *s.det_constant());
    }

    #[test]
    fn identity_system_reports_parametric_family() {
        let s = diag(&[1, 1, 1]);
        let report = skew_eigenvectors_report(&s, 0);
        assert!(report.parametric);
        assert_eq!(report.verified.len(), 3);
        // Lines sort by the vector, and zero polynomials order first, so
        // the coordinate lines arrive as e3, e2, e1.
        for (k, line) in report.verified.iter().enumerate() {
            assert_eq!(line.c, rat(1));
            let mut e = vec![Poly::zero(); 3];
            e[2 - k] = Poly::one();
            assert_eq!(line.v, e);
        }
    }

    #[test]
    fn irreducible_example_has_no_lines() {
        let s = system_from_int_rows(&[&[&[1], &[1]], &[&[0, 1], &[1, 1]]]).unwrap();
        let report = skew_eigenvectors_report(&s, 4);
        assert!(report.verified.is_empty());
        assert!(!report.parametric);
    }

    #[test]
    fn line_canonical_form_is_primitive_and_sign_fixed() {
        let line = SkewLine::new(
            rat(2),
            vec![Poly::new(vec![ratio(-1, 2), ratio(-3, 2)]), Poly::zero()],
        )
        .unwrap();
        // Scaled to integers, content 1, leading coefficient of the
        // highest-degree entry positive.
        assert_eq!(line.v, vec![Poly::from_ints(&[1, 3]), Poly::zero()]);
        assert!(SkewLine::new(rat(0), vec![Poly::one()]).is_err());
        assert!(SkewLine::new(rat(2), vec![Poly::zero()]).is_err());
    }

    #[test]
    fn semi_invariants_of_constant_diagonals() {
        let s = diag(&[2, 3]);
        let one = semi_invariants(&s, 1, 0);
        assert_eq!(one.len(), 2);
        assert_eq!(one[0].q, rat(2));
        assert_eq!(one[0].basis, vec![MultiPoly::var_y(2, 0)]);
        assert_eq!(one[1].q, rat(3));
        assert_eq!(one[1].basis, vec![MultiPoly::var_y(2, 1)]);

        let two = semi_invariants(&s, 2, 0);
        let qs: Vec<Rat> = two.iter().map(|si| si.q.clone()).collect();
        assert_eq!(qs, vec![rat(4), rat(6), rat(9)]);

        // Raising the x-degree bound adds nothing for constant systems.
        let wide = semi_invariants(&s, 2, 3);
        let qs_wide: Vec<Rat> = wide.iter().map(|si| si.q.clone()).collect();
        assert_eq!(qs_wide, qs);
        for si in &wide {
            for p in &si.basis {
                assert_eq!(p.deg_x(), Some(0));
            }
        }
    }

    #[test]
    fn total_search_merges_eigenvalues_across_degrees() {
        let s = diag(&[4, 2]);
        let merged = semi_invariants_total(&s, 2, 0);
        let q4 = merged.iter().find(|si| si.q == rat(4)).unwrap();
        // y1 (degree 1) and y2^2 (degree 2) share the scalar 4.
        assert_eq!(q4.basis, vec![mono(2, 0, &[1, 0]), mono(2, 0, &[0, 2])]);
        let all_q: Vec<Rat> = merged.iter().map(|si| si.q.clone()).collect();
        assert_eq!(all_q, vec![rat(2), rat(4), rat(8), rat(16)]);
    }

    #[test]
    fn irreducible_example_has_no_semi_invariants() {
        let s = system_from_int_rows(&[&[&[1], &[1]], &[&[0, 1], &[1, 1]]]).unwrap();
        assert!(semi_invariants(&s, 1, 4).is_empty());
        assert!(semi_invariants_total(&s, 2, 3).is_empty());
    }

    #[test]
    fn shear_has_parametric_line_family_and_single_conserved_coordinate() {
        let s = system_from_int_rows(&[&[&[1], &[0, 1]], &[&[0], &[1]]]).unwrap();
        let report = skew_eigenvectors_report(&s, 2);
        // Solutions at c = 1: (1, 0) and (x^2 - x, 2) span a 2-dimensional
        // space, hence a parametric family of invariant lines.
        assert!(report.parametric);
        assert_eq!(report.verified.len(), 2);
        for line in &report.verified {
            assert!(line.verify(&s));
        }
        // At x-degree ≤ 1 only y2 is conserved; raising the bound to 2
        // admits the second independent quantity 2*y1 + (x - x^2)*y2.
        let semis = semi_invariants(&s, 1, 1);
        assert_eq!(semis.len(), 1);
        assert_eq!(semis[0].q, rat(1));
        assert_eq!(semis[0].basis, vec![MultiPoly::var_y(2, 1)]);
        let semis = semi_invariants(&s, 1, 2);
        assert_eq!(semis.len(), 1);
        assert_eq!(semis[0].q, rat(1));
        let second = mono(2, 0, &[1, 0])
            .scale(&rat(2))
            .add(&mono(2, 1, &[0, 1]))
            .sub(&mono(2, 2, &[0, 1]))
            .canonical();
        assert_eq!(
            semis[0].basis,
            vec![MultiPoly::var_y(2, 1), second.clone()]
        );
        assert!(is_semi_invariant(&s, &second, &rat(1)).unwrap());
    }

    #[test]
    fn semi_invariant_test_and_period() {
        let s = diag(&[4, 2]);
        let p = mono(2, 0, &[1, 0]).sub(&mono(2, 0, &[0, 2]));
        assert!(is_semi_invariant(&s, &p, &rat(4)).unwrap());
        assert!(!is_semi_invariant(&s, &p, &rat(2)).unwrap());
        assert!(is_semi_invariant(&s, &MultiPoly::constant(2, rat(1)), &rat(1)).unwrap());
        assert!(is_semi_invariant(&s, &MultiPoly::zero(2), &rat(1)).is_err());

        assert_eq!(period_search(&s, &p, 4).unwrap(), Some(1));
        let flip = diag(&[1, -1]);
        let diff = mono(2, 0, &[1, 0]).sub(&mono(2, 0, &[0, 1]));
        assert_eq!(period_search(&flip, &diff, 4).unwrap(), Some(2));
        let irr = system_from_int_rows(&[&[&[1], &[1]], &[&[0, 1], &[1, 1]]]).unwrap();
        assert_eq!(
            period_search(&irr, &MultiPoly::var_y(2, 0), 6).unwrap(),
            None
        );
    }

    #[test]
    fn candidate_poly_roots_match_candidates() {
        let s = system_from_int_rows(&[&[&[2], &[3, 1]], &[&[0], &[3]]]).unwrap();
        let report = skew_eigenvectors_report(&s, 1);
        for c in &report.candidates {
            assert!(report.candidate_poly.eval(c).is_zero());
        }
        assert!(report.candidate_poly.leading().is_positive());
    }
}
