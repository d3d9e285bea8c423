//! Root hunting for univariate polynomials over the rationals.
//!
//! `rational_roots` is the classical candidate-and-verify routine: put the
//! polynomial in primitive integer form, enumerate divisor quotients of the
//! outer coefficients, and keep exactly the candidates that evaluate to
//! zero.  `integer_roots_bounded` is the workhorse behind eigenvalue
//! searches: it isolates integer roots by repeated bisection with a
//! Descartes sign-variation test, which never needs any factoring and so
//! stays fast even when the coefficients run to hundreds of digits.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::factor::divisors;
use crate::poly::Poly;
use crate::rat::Rat;
use crate::{Result, SkewError};

/// All distinct rational roots of `p`, ascending.  Errors on the zero
/// polynomial (every rational is a root).
pub fn rational_roots(p: &Poly) -> Result<Vec<Rat>> {
    if p.is_zero() {
        return Err(SkewError::ZeroInput("rational_roots"));
    }
    let mut coeffs = p.primitive_integer();
    let mut roots: Vec<Rat> = Vec::new();

    // Strip powers of x; each contributes the root 0 once.
    let zeros = coeffs.iter().take_while(|c| c.is_zero()).count();
    if zeros > 0 {
        coeffs.drain(..zeros);
        roots.push(Rat::zero());
    }
    if coeffs.len() <= 1 {
        roots.sort();
        return Ok(roots);
    }

    let constant = coeffs[0].abs();
    let leading = coeffs.last().unwrap().abs();
    let eval = |r: &Rat| -> bool {
        let mut acc = Rat::zero();
        for c in coeffs.iter().rev() {
            acc = acc * r + Rat::from(c.clone());
        }
        acc.is_zero()
    };
    for num in divisors(&constant) {
        for den in divisors(&leading) {
            if num.gcd(&den) != BigInt::one() {
                continue;
            }
            let cand = Rat::new(num.clone(), den.clone());
            if eval(&cand) {
                roots.push(cand.clone());
            }
            let neg = -cand;
            if eval(&neg) {
                roots.push(neg);
            }
        }
    }
    roots.sort();
    roots.dedup();
    Ok(roots)
}

/// Distinct integer roots `z` of the nonzero integer polynomial `coeffs`
/// (ascending coefficient order) with `|z| <= bound`, sorted ascending.
///
/// Bisection over integer intervals: an open interval is discarded when the
/// Descartes sign-variation count of the mapped polynomial is zero, which
/// is sound whether or not the polynomial is squarefree.  Endpoints are
/// always tested by exact evaluation, so no root inside the bound escapes.
pub(crate) fn integer_roots_bounded(coeffs: &[BigInt], bound: &BigInt) -> Vec<BigInt> {
    assert!(
        coeffs.iter().any(|c| !c.is_zero()),
        "integer_roots_bounded expects a nonzero polynomial"
    );
    let mut p = coeffs.to_vec();
    while p.last().map_or(false, |c| c.is_zero()) {
        p.pop();
    }
    let mut roots = Vec::new();
    let zeros = p.iter().take_while(|c| c.is_zero()).count();
    if zeros > 0 {
        p.drain(..zeros);
        roots.push(BigInt::zero());
    }
    if p.len() > 1 && bound.is_positive() {
        let lo = -bound.clone();
        let hi = bound.clone();
        if eval_int(&p, &lo).is_zero() {
            roots.push(lo.clone());
        }
        if eval_int(&p, &hi).is_zero() {
            roots.push(hi.clone());
        }
        isolate(&p, &lo, &hi, &mut roots);
    }
    roots.sort();
    roots.dedup();
    roots
}

fn eval_int(p: &[BigInt], x: &BigInt) -> BigInt {
    let mut acc = BigInt::zero();
    for c in p.iter().rev() {
        acc = acc * x + c;
    }
    acc
}

/// Records integer roots in the open interval `(lo, hi)`.
fn isolate(p: &[BigInt], lo: &BigInt, hi: &BigInt, roots: &mut Vec<BigInt>) {
    let width = hi - lo;
    if width <= BigInt::one() {
        return;
    }
    if sign_variations_on(p, lo, hi) == 0 {
        return;
    }
    let mid = (lo + hi).div_floor(&BigInt::from(2));
    if eval_int(p, &mid).is_zero() {
        roots.push(mid.clone());
    }
    isolate(p, lo, &mid, roots);
    isolate(p, &mid, hi, roots);
}

/// Descartes bound for the number of roots of `p` in the open interval
/// `(lo, hi)`: shift to `lo`, stretch by the width, reverse, shift by one,
/// and count coefficient sign changes.
fn sign_variations_on(p: &[BigInt], lo: &BigInt, hi: &BigInt) -> usize {
    let mut q = taylor_shift(p, lo);
    let width = hi - lo;
    let mut scale = BigInt::one();
    for c in q.iter_mut() {
        *c *= &scale;
        scale *= &width;
    }
    q.reverse();
    let t = taylor_shift(&q, &BigInt::one());
    let mut variations = 0;
    let mut last: Option<bool> = None;
    for c in &t {
        if c.is_zero() {
            continue;
        }
        let s = c.is_positive();
        if let Some(prev) = last {
            if prev != s {
                variations += 1;
            }
        }
        last = Some(s);
    }
    variations
}

/// Coefficients of `p(x + a)` by Horner's rule.
fn taylor_shift(p: &[BigInt], a: &BigInt) -> Vec<BigInt> {
    let mut out: Vec<BigInt> = Vec::with_capacity(p.len());
    for c in p.iter().rev() {
        // out <- out * (x + a) + c
        out.push(BigInt::zero());
        for i in (1..out.len()).rev() {
            let (head, tail) = out.split_at_mut(i);
            tail[0] = std::mem::take(&mut tail[0]) * a + &head[i - 1];
        }
        let first = out.first_mut().unwrap();
        *first = std::mem::take(first) * a + c;
    }
    out
}
