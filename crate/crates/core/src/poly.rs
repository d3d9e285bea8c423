//! Dense univariate polynomials over the rationals.
//!
//! Coefficients are stored in ascending order with no trailing zeros, so
//! every value has exactly one representation and the zero polynomial is the
//! empty coefficient list.  Degrees stay small in this crate (matrix entries,
//! gauge transforms, candidate polynomials), so the classical quadratic
//! algorithms are used throughout; what matters here is exactness, not
//! asymptotics.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::rat::{format_rat, Rat};
use crate::{Result, SkewError};

/// Univariate polynomial with exact rational coefficients.
///
/// The coefficient vector is canonical: ascending powers, last entry nonzero.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    coeffs: Vec<Rat>,
}

impl Poly {
    /// Builds a polynomial from ascending coefficients, trimming trailing
    /// zeros to restore the canonical form.
    pub fn new(mut coeffs: Vec<Rat>) -> Poly {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Poly {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Poly {
        Poly::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Poly {
        Poly::new(vec![c])
    }

    /// The monomial `c * x^k`.
    pub fn monomial(c: Rat, k: usize) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![Rat::zero(); k + 1];
        coeffs[k] = c;
        Poly { coeffs }
    }

    /// The variable `x`.
    pub fn x() -> Poly {
        Poly::monomial(Rat::one(), 1)
    }

    /// Convenience constructor from machine integers, ascending.
    pub fn from_ints(coeffs: &[i64]) -> Poly {
        Poly::new(coeffs.iter().map(|&c| crate::rat::rat(c)).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with zero treated as degree 0 — handy for size computations.
    pub fn degree_or_zero(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    /// Ascending coefficient slice (canonical, no trailing zeros).
    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    /// Coefficient of `x^k` (zero beyond the degree).
    pub fn coeff(&self, k: usize) -> Rat {
        self.coeffs.get(k).cloned().unwrap_or_else(Rat::zero)
    }

    /// Leading coefficient; zero for the zero polynomial.
    pub fn leading(&self) -> Rat {
        self.coeffs.last().cloned().unwrap_or_else(Rat::zero)
    }

    /// The constant value of a constant polynomial.
    pub fn constant_value(&self) -> Option<Rat> {
        if self.is_constant() {
            Some(self.coeff(0))
        } else {
            None
        }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for k in 0..n {
            out.push(self.coeff(k) + other.coeff(k));
        }
        Poly::new(out)
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for k in 0..n {
            out.push(self.coeff(k) - other.coeff(k));
        }
        Poly::new(out)
    }

    pub fn neg(&self) -> Poly {
        Poly {
            coeffs: self.coeffs.iter().map(|c| -c.clone()).collect(),
        }
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Rat::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }

    pub fn scale(&self, c: &Rat) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    pub fn pow(&self, k: usize) -> Poly {
        let mut out = Poly::one();
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }

    pub fn derivative(&self) -> Poly {
        if self.coeffs.len() <= 1 {
            return Poly::zero();
        }
        let mut out = Vec::with_capacity(self.coeffs.len() - 1);
        for (k, c) in self.coeffs.iter().enumerate().skip(1) {
            out.push(c * Rat::from_integer(BigInt::from(k)));
        }
        Poly::new(out)
    }

    /// Exact evaluation at a rational point (Horner).
    pub fn eval(&self, x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// The shifted polynomial `p(x + a)`, computed by Horner expansion in
    /// `x + a` so no binomial tables are needed.
    pub fn shift(&self, a: &Rat) -> Poly {
        let mut acc = Poly::zero();
        for c in self.coeffs.iter().rev() {
            // acc <- acc * (x + a) + c
            let mut next = vec![Rat::zero(); acc.coeffs.len() + 1];
            for (k, v) in acc.coeffs.iter().enumerate() {
                next[k + 1] += v.clone();
                next[k] += v * a;
            }
            next[0] += c.clone();
            acc = Poly::new(next);
        }
        acc
    }

    /// Integer shift convenience: `p(x + a)`.
    pub fn shift_int(&self, a: i64) -> Poly {
        self.shift(&crate::rat::rat(a))
    }

    /// Quotient and remainder with `deg rem < deg divisor`.
    pub fn divrem(&self, divisor: &Poly) -> Result<(Poly, Poly)> {
        if divisor.is_zero() {
            return Err(SkewError::ZeroInput("polynomial divisor"));
        }
        let dd = divisor.coeffs.len() - 1;
        let lead = divisor.leading();
        let mut rem = self.clone();
        let mut quo = vec![Rat::zero(); self.coeffs.len().saturating_sub(dd)];
        while !rem.is_zero() && rem.coeffs.len() - 1 >= dd {
            let k = rem.coeffs.len() - 1 - dd;
            let factor = rem.leading() / &lead;
            quo[k] = factor.clone();
            let mut next = rem.coeffs.clone();
            for (j, c) in divisor.coeffs.iter().enumerate() {
                next[k + j] -= &factor * c;
            }
            // The leading term cancels by construction.
            next.pop();
            rem = Poly::new(next);
        }
        Ok((Poly::new(quo), rem))
    }

    /// Exact division; errors if the remainder is nonzero.
    pub fn divexact(&self, divisor: &Poly) -> Result<Poly> {
        let (q, r) = self.divrem(divisor)?;
        if !r.is_zero() {
            return Err(SkewError::Parse(format!(
                "inexact polynomial division: {self} by {divisor}"
            )));
        }
        Ok(q)
    }

    /// Monic multiple of `self`; zero stays zero.
    pub fn monic(&self) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let lc = self.leading();
        self.scale(&lc.recip())
    }

    /// Integer coefficient vector with content 1, obtained by the positive
    /// scaling `lcm(denoms) / gcd(numers)`.  Roots and degree are unchanged.
    /// Zero maps to the empty vector.
    pub fn primitive_integer(&self) -> Vec<BigInt> {
        let ints = crate::rat::clear_denominators(&self.coeffs);
        debug_assert_eq!(ints.len(), self.coeffs.len());
        ints
    }
}

/// Monic greatest common divisor; `gcd(0, 0)` is an error.
///
/// Plain Euclid with the remainder made monic at every step: monic remainders
/// keep coefficient growth polynomial at the degrees this crate works with,
/// without the bookkeeping of a subresultant sequence.
pub fn poly_gcd(a: &Poly, b: &Poly) -> Result<Poly> {
    if a.is_zero() && b.is_zero() {
        return Err(SkewError::BothZero);
    }
    let mut r0 = a.monic();
    let mut r1 = b.monic();
    while !r1.is_zero() {
        let (_, rem) = r0.divrem(&r1)?;
        r0 = r1;
        r1 = rem.monic();
    }
    Ok(r0)
}

/// Extended gcd: returns `(g, p, q)` with `a*p + b*q = g`, `g` monic and
/// dividing both inputs.  The cofactors are the minimal-degree pair: when the
/// inputs are nonconstant and neither divides the other, `deg p < deg b -
/// deg g` and `deg q < deg a - deg g`.
pub fn poly_bezout(a: &Poly, b: &Poly) -> Result<(Poly, Poly, Poly)> {
    if a.is_zero() && b.is_zero() {
        return Err(SkewError::BothZero);
    }
    let mut r0 = a.clone();
    let mut p0 = Poly::one();
    let mut q0 = Poly::zero();
    let mut r1 = b.clone();
    let mut p1 = Poly::zero();
    let mut q1 = Poly::one();
    while !r1.is_zero() {
        let (quo, rem) = r0.divrem(&r1)?;
        let p2 = p0.sub(&quo.mul(&p1));
        let q2 = q0.sub(&quo.mul(&q1));
        r0 = r1;
        p0 = p1;
        q0 = q1;
        r1 = rem;
        p1 = p2;
        q1 = q2;
    }
    let lc = r0.leading().recip();
    let g = r0.scale(&lc);
    let mut p = p0.scale(&lc);
    let mut q = q0.scale(&lc);
    // Reduce to the minimal-degree cofactor pair: p modulo b/g, with q
    // adjusted by the same multiple of a/g so the identity is preserved.
    let b_over_g = b.divexact(&g)?;
    if !b_over_g.is_constant() && !b_over_g.is_zero() {
        let (t, p_red) = p.divrem(&b_over_g)?;
        if !t.is_zero() {
            let a_over_g = a.divexact(&g)?;
            q = q.add(&t.mul(&a_over_g));
            p = p_red;
        }
    } else if !b.is_zero() && b_over_g.is_constant() {
        // b is an associate of g: the canonical pair is (0, g/b).
        p = Poly::zero();
        q = g.divexact(b)?;
    }
    debug_assert_eq!(a.mul(&p).add(&b.mul(&q)), g);
    Ok((g, p, q))
}

/// Monic gcd of a slice of polynomials, ignoring zeros; errors if all zero.
pub fn poly_gcd_many(polys: &[Poly]) -> Result<Poly> {
    let mut acc: Option<Poly> = None;
    for p in polys {
        if p.is_zero() {
            continue;
        }
        acc = Some(match acc {
            None => p.monic(),
            Some(g) => poly_gcd(&g, p)?,
        });
    }
    acc.ok_or(SkewError::BothZero)
}

impl PartialOrd for Poly {
    fn partial_cmp(&self, other: &Poly) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Total order used only for deterministic sorting and set membership:
/// by degree (zero first), then coefficients from the leading one down.
impl Ord for Poly {
    fn cmp(&self, other: &Poly) -> Ordering {
        self.coeffs
            .len()
            .cmp(&other.coeffs.len())
            .then_with(|| self.coeffs.iter().rev().cmp(other.coeffs.iter().rev()))
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
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
            let coeff_is_one = mag.is_one();
            match (k, coeff_is_one) {
                (0, _) => write!(f, "{}", format_rat(&mag))?,
                (_, true) => {}
                (_, false) => write!(f, "{}*", format_rat(&mag))?,
            }
            match k {
                0 => {}
                1 => write!(f, "x")?,
                _ => write!(f, "x^{k}")?,
            }
        }
        Ok(())
    }
}
