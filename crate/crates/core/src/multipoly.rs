//! Sparse polynomials in `x, y1, ..., yn` over the rationals.
//!
//! Terms live in a `BTreeMap` keyed by [`Mono`], whose ordering is graded
//! lexicographic — total degree first, then the `x` exponent, then the `y`
//! exponents left to right.  Iteration order is therefore canonical, which
//! makes evaluation matrices, serialised reports, and test expectations
//! byte-stable for free.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::poly::Poly;
use crate::polymat::PolyMatrix;
use crate::rat::{format_rat, Rat};
use crate::{Result, SkewError};

/// Monomial exponents: `x^x_exp * y1^y[0] * ... * yn^y[n-1]`.
///
/// Ordered graded-lexicographically with `x` before `y1 < ... < yn`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Mono {
    pub x: u32,
    pub y: Vec<u32>,
}

impl Mono {
    pub fn new(x: u32, y: Vec<u32>) -> Mono {
        Mono { x, y }
    }

    pub fn constant(n: usize) -> Mono {
        Mono {
            x: 0,
            y: vec![0; n],
        }
    }

    /// Total degree including the `x` exponent.
    pub fn total_degree(&self) -> u32 {
        self.x + self.y_degree()
    }

    /// Total degree in the `y` variables alone.
    pub fn y_degree(&self) -> u32 {
        self.y.iter().sum()
    }

    pub fn mul(&self, other: &Mono) -> Mono {
        debug_assert_eq!(self.y.len(), other.y.len());
        Mono {
            x: self.x + other.x,
            y: self
                .y
                .iter()
                .zip(&other.y)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Ord for Mono {
    fn cmp(&self, other: &Mono) -> Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.x.cmp(&other.x))
            .then_with(|| self.y.cmp(&other.y))
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, other: &Mono) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse multivariate polynomial in `x` and `n` fibre variables.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct MultiPoly {
    n: usize,
    terms: BTreeMap<Mono, Rat>,
}

impl MultiPoly {
    pub fn zero(n: usize) -> MultiPoly {
        MultiPoly {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(n: usize, c: Rat) -> MultiPoly {
        let mut p = MultiPoly::zero(n);
        p.add_term(Mono::constant(n), c);
        p
    }

    /// The fibre variable `y_{j+1}` (zero-based `j`).
    pub fn var_y(n: usize, j: usize) -> MultiPoly {
        assert!(j < n, "variable index out of range");
        let mut y = vec![0; n];
        y[j] = 1;
        let mut p = MultiPoly::zero(n);
        p.add_term(Mono::new(0, y), Rat::one());
        p
    }

    /// Lifts a univariate polynomial in `x`.
    pub fn from_poly_in_x(n: usize, p: &Poly) -> MultiPoly {
        let mut out = MultiPoly::zero(n);
        for (k, c) in p.coeffs().iter().enumerate() {
            if !c.is_zero() {
                out.add_term(Mono::new(k as u32, vec![0; n]), c.clone());
            }
        }
        out
    }

    pub fn from_terms(n: usize, terms: Vec<(Mono, Rat)>) -> MultiPoly {
        let mut out = MultiPoly::zero(n);
        for (m, c) in terms {
            assert_eq!(m.y.len(), n, "monomial arity mismatch");
            out.add_term(m, c);
        }
        out
    }

    /// Number of fibre variables `n`.
    pub fn num_y(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &Rat)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, m: &Mono) -> Rat {
        self.terms.get(m).cloned().unwrap_or_else(Rat::zero)
    }

    fn add_term(&mut self, m: Mono, c: Rat) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get().clone() + c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, other: &MultiPoly) -> MultiPoly {
        debug_assert_eq!(self.n, other.n);
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &MultiPoly) -> MultiPoly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> MultiPoly {
        MultiPoly {
            n: self.n,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), -c.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, c: &Rat) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero(self.n);
        }
        MultiPoly {
            n: self.n,
            terms: self
                .terms
                .iter()
                .map(|(m, v)| (m.clone(), v * c))
                .collect(),
        }
    }

    pub fn mul(&self, other: &MultiPoly) -> MultiPoly {
        debug_assert_eq!(self.n, other.n);
        let mut out = MultiPoly::zero(self.n);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }

    pub fn pow(&self, k: usize) -> MultiPoly {
        let mut out = MultiPoly::constant(self.n, Rat::one());
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }

    /// Degree in `x`, `None` when zero.
    pub fn deg_x(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.x).max()
    }

    /// Total degree in the `y` variables, `None` when zero.
    pub fn deg_y(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.y_degree()).max()
    }

    /// `Some(h)` when every term has `y`-degree exactly `h` (zero counts as
    /// homogeneous of any degree and returns `None`).
    pub fn y_homogeneous_degree(&self) -> Option<u32> {
        let mut it = self.terms.keys().map(|m| m.y_degree());
        let first = it.next()?;
        if it.all(|d| d == first) {
            Some(first)
        } else {
            None
        }
    }

    /// Exact evaluation at a rational point of the total space.
    pub fn eval(&self, x: &Rat, y: &[Rat]) -> Rat {
        assert_eq!(y.len(), self.n, "point arity mismatch");
        let mut acc = Rat::zero();
        for (m, c) in &self.terms {
            let mut term = c.clone();
            term *= num_traits::pow::pow(x.clone(), m.x as usize);
            for (j, &e) in m.y.iter().enumerate() {
                if e > 0 {
                    term *= num_traits::pow::pow(y[j].clone(), e as usize);
                }
            }
            acc += term;
        }
        acc
    }

    /// The substitution `P(x + a, M(x) * y)`: the `x` shift and the fibrewise
    /// linear change of variables happen simultaneously, with `M` evaluated
    /// at the new base coordinate.
    pub fn compose(&self, a: &Rat, m: &PolyMatrix) -> Result<MultiPoly> {
        if m.dim() != self.n {
            return Err(SkewError::DimensionMismatch {
                expected: self.n,
                found: m.dim(),
            });
        }
        let n = self.n;
        // Row polynomials (M(x) y)_j, each linear in y.
        let rows: Vec<MultiPoly> = (0..n)
            .map(|j| {
                let mut row = MultiPoly::zero(n);
                for k in 0..n {
                    let lifted = MultiPoly::from_poly_in_x(n, m.entry(j, k));
                    row = row.add(&lifted.mul(&MultiPoly::var_y(n, k)));
                }
                row
            })
            .collect();
        // Power cache per row, grown on demand.
        let mut powers: Vec<Vec<MultiPoly>> = rows
            .iter()
            .map(|r| vec![MultiPoly::constant(n, Rat::one()), r.clone()])
            .collect();
        let mut out = MultiPoly::zero(n);
        for (mono, c) in &self.terms {
            let shifted_x = Poly::monomial(Rat::one(), mono.x as usize).shift(a);
            let mut term = MultiPoly::from_poly_in_x(n, &shifted_x).scale(c);
            for (j, &e) in mono.y.iter().enumerate() {
                while powers[j].len() <= e as usize {
                    let next = powers[j].last().unwrap().mul(&rows[j]);
                    powers[j].push(next);
                }
                if e > 0 {
                    term = term.mul(&powers[j][e as usize]);
                }
            }
            out = out.add(&term);
        }
        Ok(out)
    }

    /// Content-1 integer form with the coefficient of the smallest monomial
    /// (graded-lex) positive.  Zero is returned unchanged.
    pub fn canonical(&self) -> MultiPoly {
        if self.is_zero() {
            return self.clone();
        }
        let coeffs: Vec<Rat> = self.terms.values().cloned().collect();
        let ints = crate::rat::clear_denominators(&coeffs);
        let negate = ints
            .iter()
            .find(|c| !c.is_zero())
            .map_or(false, |c| c.is_negative());
        let terms = self
            .terms
            .keys()
            .cloned()
            .zip(ints.into_iter().map(|c| {
                let c = Rat::from_integer(c);
                if negate {
                    -c
                } else {
                    c
                }
            }))
            .collect();
        MultiPoly { n: self.n, terms }
    }

    /// `Some(lambda)` when `self == lambda * other` with `lambda` a nonzero
    /// rational; requires both nonzero.
    pub fn proportionality(&self, other: &MultiPoly) -> Option<Rat> {
        if self.is_zero() || other.is_zero() || self.n != other.n {
            return None;
        }
        let (m0, c0) = other.terms.iter().next()?;
        let mine = self.terms.get(m0)?;
        let lambda = mine / c0;
        if self == &other.scale(&lambda) {
            Some(lambda)
        } else {
            None
        }
    }
}

/// Deterministic total order on canonical term lists, for sorted reports.
impl Ord for MultiPoly {
    fn cmp(&self, other: &MultiPoly) -> Ordering {
        self.terms.iter().cmp(other.terms.iter())
    }
}

impl PartialOrd for MultiPoly {
    fn partial_cmp(&self, other: &MultiPoly) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// All monomials with `x`-degree at most `e_max` and total `y`-degree at
/// most `d_max`, in ascending graded-lex order.
pub fn monomials_up_to(n: usize, e_max: u32, d_max: u32) -> Vec<Mono> {
    let mut out = Vec::new();
    let mut y = vec![0u32; n];
    collect_y_exponents(n, 0, d_max, &mut y, &mut |y| {
        for x in 0..=e_max {
            out.push(Mono::new(x, y.to_vec()));
        }
    });
    out.sort();
    out
}

/// All monomials with `x`-degree at most `e_max` and total `y`-degree
/// exactly `h`, in ascending graded-lex order.
pub fn monomials_homogeneous(n: usize, e_max: u32, h: u32) -> Vec<Mono> {
    let mut out = Vec::new();
    let mut y = vec![0u32; n];
    collect_y_exponents(n, 0, h, &mut y, &mut |y| {
        if y.iter().sum::<u32>() == h {
            for x in 0..=e_max {
                out.push(Mono::new(x, y.to_vec()));
            }
        }
    });
    out.sort();
    out
}

fn collect_y_exponents(
    n: usize,
    pos: usize,
    budget: u32,
    y: &mut Vec<u32>,
    emit: &mut impl FnMut(&[u32]),
) {
    if pos == n {
        emit(y);
        return;
    }
    for e in 0..=budget {
        y[pos] = e;
        collect_y_exponents(n, pos + 1, budget - e, y, emit);
    }
    y[pos] = 0;
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let is_constant_mono = m.total_degree() == 0;
            if !mag.is_one() || is_constant_mono {
                write!(f, "{}", format_rat(&mag))?;
                if !is_constant_mono {
                    write!(f, "*")?;
                }
            }
            let mut wrote_var = false;
            if m.x > 0 {
                if m.x == 1 {
                    write!(f, "x")?;
                } else {
                    write!(f, "x^{}", m.x)?;
                }
                wrote_var = true;
            }
            for (j, &e) in m.y.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                if wrote_var {
                    write!(f, "*")?;
                }
                if e == 1 {
                    write!(f, "y{}", j + 1)?;
                } else {
                    write!(f, "y{}^{}", j + 1, e)?;
                }
                wrote_var = true;
            }
        }
        Ok(())
    }
}
