//! Orbit closures: numerically-free probing of the vanishing ideal and, for
//! constant diagonal systems, an exact binomial description.
//!
//! The density probe is fully general: it evaluates a monomial basis along
//! an orbit prefix and extracts the exact kernel, giving the polynomials of
//! bounded degree that vanish on the whole orbit prefix — a certified
//! *upper bound* on the vanishing ideal of the closure.  For constant
//! diagonal systems `y ↦ diag(a) y` the closure of an orbit is cut out by
//! binomials coming from the multiplicative relation lattice of the
//! diagonal entries, and both the dimension and the number of irreducible
//! components fall out of the lattice's Smith normal form.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::factor::factorize;
use crate::intmat::{hermite_rows, left_kernel, smith_normal_form, IntMatrix};
use crate::linalg::exact_kernel;
use crate::multipoly::{monomials_up_to, Mono, MultiPoly};
use crate::rat::{pow_rat, Rat};
use crate::system::{PointState, SkewSystem};
use crate::{Result, SkewError};

/// Exact basis of the polynomials of bounded degree vanishing on an orbit
/// prefix, as produced by [`density_probe`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VanishingBasis {
    /// The `x`-degree bound the probe searched under.
    pub e: u32,
    /// The total `y`-degree bound.
    pub d: u32,
    /// Number of orbit points the kernel was computed from.
    pub points_used: usize,
    /// Canonical basis polynomials, sorted.
    pub basis: Vec<MultiPoly>,
}

/// The lattice of multiplicative relations `∏ aᵢ^{rᵢ} = 1` among nonzero
/// rationals, in canonical (Hermite) row basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelationLattice {
    /// Number of rationals the relations range over.
    pub n: usize,
    /// Canonical basis, one relation per row; no zero rows.
    pub basis: IntMatrix,
}

impl RelationLattice {
    /// Rank of the lattice.
    pub fn rank(&self) -> usize {
        self.basis.rows()
    }
}

/// Exact description of the orbit closure of a constant diagonal system
/// through a given point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosureDescription {
    /// Relation lattice of the diagonal entries restricted to the support.
    pub lattice: RelationLattice,
    /// Binomial equations cutting out the closure inside the support
    /// coordinate subspace, one per lattice basis row.
    pub binomials: Vec<MultiPoly>,
    /// Dimension of the closure.
    pub dimension: usize,
    /// Number of irreducible components (the torsion order of the
    /// character group cut out by the lattice).
    pub components: BigInt,
    /// Indices of the nonzero coordinates of the starting point; every
    /// other coordinate satisfies `yᵢ = 0` on the closure.
    pub support: Vec<usize>,
}

/// Evaluates a monomial basis along an orbit prefix and returns the exact
/// kernel: every polynomial with `x`-degree ≤ `e_max` and total `y`-degree
/// ≤ `d_max` vanishing at all `points` sampled points.
///
/// Requires at least as many points as monomials, i.e. `points ≥ (e_max +
/// 1) · C(d_max + n, n)`, so that a full-rank evaluation matrix can
/// certify an empty answer; fails with [`SkewError::TooFewPoints`]
/// otherwise.  Every basis element is re-verified against all sampled
/// points after the elimination.
pub fn density_probe(
    s: &SkewSystem,
    start: &PointState,
    points: usize,
    e_max: u32,
    d_max: u32,
) -> Result<VanishingBasis> {
    let n = s.dim();
    let monos = monomials_up_to(n, e_max, d_max);
    if points < monos.len() {
        return Err(SkewError::TooFewPoints {
            required: monos.len(),
            found: points,
        });
    }
    let orbit = s.orbit(start, points - 1)?;
    let rows: Vec<Vec<Rat>> = orbit
        .par_iter()
        .map(|p| monos.iter().map(|m| eval_mono(m, &p.x, &p.y)).collect())
        .collect();
    let kernel = exact_kernel(&rows, monos.len());
    let mut basis: Vec<MultiPoly> = kernel
        .into_iter()
        .map(|coeffs| {
            let terms = monos
                .iter()
                .cloned()
                .zip(coeffs)
                .filter(|(_, c)| !c.is_zero())
                .map(|(m, c)| (m, c))
                .collect();
            MultiPoly::from_terms(n, terms).canonical()
        })
        .collect();
    for p in &basis {
        for point in &orbit {
            assert!(
                p.eval(&point.x, &point.y).is_zero(),
                "kernel element fails to vanish on the sampled orbit"
            );
        }
    }
    basis.sort();
    Ok(VanishingBasis {
        e: e_max,
        d: d_max,
        points_used: points,
        basis,
    })
}

fn eval_mono(m: &Mono, x: &Rat, y: &[Rat]) -> Rat {
    let mut acc = num_traits::pow::pow(x.clone(), m.x as usize);
    for (v, &e) in y.iter().zip(m.y.iter()) {
        if e > 0 {
            acc *= num_traits::pow::pow(v.clone(), e as usize);
        }
    }
    acc
}

/// Computes the lattice of integer vectors `r` with `∏ aᵢ^{rᵢ} = 1`.
///
/// The inputs must be nonzero ([`SkewError::ZeroCoordinate`] otherwise).
/// Factoring each entry reduces the problem to an integer kernel over the
/// prime exponents, intersected with the parity condition coming from
/// signs; the result is put in Hermite form and each basis relation is
/// re-verified by exact evaluation.
pub fn relation_lattice(a: &[Rat]) -> Result<RelationLattice> {
    let n = a.len();
    for (i, v) in a.iter().enumerate() {
        if v.is_zero() {
            return Err(SkewError::ZeroCoordinate { index: i });
        }
    }
    // Prime support of all entries, and the exponent of each entry at
    // each prime (numerator minus denominator valuations).
    let mut primes: Vec<BigInt> = Vec::new();
    let factored: Vec<(Vec<(BigInt, u32)>, Vec<(BigInt, u32)>)> = a
        .iter()
        .map(|v| (factorize(&v.numer().abs()), factorize(&v.denom().abs())))
        .collect();
    for (num, den) in &factored {
        for (p, _) in num.iter().chain(den.iter()) {
            if !primes.contains(p) {
                primes.push(p.clone());
            }
        }
    }
    primes.sort();
    let exponent_of = |facs: &[(BigInt, u32)], p: &BigInt| -> i64 {
        facs.iter()
            .find(|(q, _)| q == p)
            .map(|(_, e)| *e as i64)
            .unwrap_or(0)
    };
    let mut exponents = IntMatrix::zero(n, primes.len());
    for (i, (num, den)) in factored.iter().enumerate() {
        for (j, p) in primes.iter().enumerate() {
            *exponents.entry_mut(i, j) =
                BigInt::from(exponent_of(num, p) - exponent_of(den, p));
        }
    }

    // Kernel of the prime-exponent matrix: relations up to sign.
    let kernel = if primes.is_empty() {
        IntMatrix::identity(n)
    } else {
        left_kernel(&exponents)
    };

    // Intersect with the sign-parity condition: ∏ sign(aᵢ)^{rᵢ} = 1.
    let parity = |row: &[BigInt]| -> bool {
        let mut odd = false;
        for (v, x) in row.iter().zip(a.iter()) {
            if x.is_negative() && v.is_odd() {
                odd = !odd;
            }
        }
        odd
    };
    let kernel_rows = kernel.row_vecs();
    let odd_index = kernel_rows.iter().position(|r| parity(r));
    let sublattice: Vec<Vec<BigInt>> = match odd_index {
        None => kernel_rows,
        Some(j0) => {
            // The parity-even sublattice has index two: double the first
            // odd generator and correct the other odd ones by it.
            let pivot = kernel_rows[j0].clone();
            let mut rows: Vec<Vec<BigInt>> = Vec::with_capacity(kernel_rows.len());
            rows.push(pivot.iter().map(|v| v * 2).collect());
            for (j, row) in kernel_rows.iter().enumerate() {
                if j == j0 {
                    continue;
                }
                if parity(row) {
                    rows.push(row.iter().zip(&pivot).map(|(v, w)| v + w).collect());
                } else {
                    rows.push(row.clone());
                }
            }
            rows
        }
    };
    let basis = hermite_rows(&IntMatrix::from_rows(sublattice, n));

    for row in basis.row_vecs() {
        let mut prod = Rat::one();
        for (v, x) in row.iter().zip(a.iter()) {
            let e = i64::try_from(v).expect("relation exponent fits in i64");
            prod *= pow_rat(x, e)?;
        }
        assert!(prod.is_one(), "relation lattice row fails exact verification");
    }
    Ok(RelationLattice { n, basis })
}

/// Number of irreducible components of the subvariety cut out by the
/// binomials of a relation lattice: the torsion order of ℤⁿ modulo the
/// lattice, i.e. the product of the nonzero elementary divisors of its
/// basis.
pub fn component_count(lattice: &RelationLattice) -> BigInt {
    if lattice.basis.rows() == 0 {
        return BigInt::one();
    }
    smith_normal_form(&lattice.basis)
        .elementary_divisors()
        .iter()
        .product()
}

/// Exact description of the orbit closure of the constant diagonal system
/// `y ↦ diag(a) y` through the point `b`.
///
/// Coordinates where `b` vanishes stay zero along the orbit and contribute
/// the equations `yᵢ = 0`; on the support, each relation `r` of the
/// lattice of the corresponding diagonal entries gives a binomial
/// `y^{r⁺} - b^r · y^{r⁻}` that is constant along the orbit.  Dimension
/// and component count come from the lattice rank and torsion.  Every
/// equation is re-verified on the first eleven orbit points.
pub fn binomial_closure(a: &[Rat], b: &[Rat]) -> Result<ClosureDescription> {
    let n = a.len();
    if b.len() != n {
        return Err(SkewError::DimensionMismatch {
            expected: n,
            found: b.len(),
        });
    }
    for (i, v) in a.iter().enumerate() {
        if v.is_zero() {
            return Err(SkewError::ZeroCoordinate { index: i });
        }
    }
    let support: Vec<usize> = (0..n).filter(|&i| !b[i].is_zero()).collect();
    let a_support: Vec<Rat> = support.iter().map(|&i| a[i].clone()).collect();
    let lattice = relation_lattice(&a_support)?;

    let mut equations: Vec<MultiPoly> = Vec::new();
    for i in 0..n {
        if !support.contains(&i) {
            equations.push(MultiPoly::var_y(n, i));
        }
    }
    for row in lattice.basis.row_vecs() {
        // Split r = r⁺ - r⁻ and move the negative part across:
        //   y^{r⁺} = b^r · y^{r⁻}  along the whole orbit.
        let mut pos = Mono::constant(n);
        let mut neg = Mono::constant(n);
        let mut coef = Rat::one();
        for (k, v) in row.iter().enumerate() {
            let i = support[k];
            let e = i64::try_from(v).expect("relation exponent fits in i64");
            if e > 0 {
                pos.y[i] = e as u32;
            } else if e < 0 {
                neg.y[i] = (-e) as u32;
            }
            coef *= pow_rat(&b[i], e)?;
        }
        let binom = MultiPoly::from_terms(n, vec![(pos, Rat::one())])
            .sub(&MultiPoly::from_terms(n, vec![(neg, coef)]));
        equations.push(binom.canonical());
    }

    // Re-verify every equation along an orbit prefix of the diagonal map.
    let mut point = b.to_vec();
    let x0 = Rat::zero();
    for _ in 0..=10 {
        for eq in &equations {
            assert!(
                eq.eval(&x0, &point).is_zero(),
                "closure equation fails on the orbit"
            );
        }
        point = point
            .iter()
            .zip(a.iter())
            .map(|(y, ai)| y * ai)
            .collect();
    }

    let dimension = support.len() - lattice.rank();
    let components = component_count(&lattice);
    let binomials = equations.split_off(n - support.len());
    Ok(ClosureDescription {
        lattice,
        binomials,
        dimension,
        components,
        support,
    })
}
