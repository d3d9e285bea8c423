//! Arbitrary-precision rational scalars.
//!
//! [`Rat`] is [`num_rational::BigRational`]: always stored in lowest terms
//! with a positive denominator, so equality of values is equality of
//! representations.  This module adds the handful of conveniences the rest
//! of the crate needs — construction from machine integers, the canonical
//! `"p"` / `"p/q"` text form used by every serialised report, and integer
//! clearing for rational vectors.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::{Result, SkewError};

/// Exact rational number in lowest terms, denominator positive.
pub type Rat = num_rational::BigRational;

/// `n` as a rational.
pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// `n / d` as a rational (reduced on construction).
///
/// Panics if `d == 0`; use [`parse_rat`] for untrusted input.
pub fn ratio(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Canonical text form: `"p"` for integers, `"p/q"` otherwise, `q > 0`.
pub fn format_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses the canonical text form accepted by [`format_rat`]: an optional
/// sign, an integer, and an optional `/q` with `q` nonzero.
pub fn parse_rat(s: &str) -> Result<Rat> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), Some(d.trim())),
        None => (s, None),
    };
    let n: BigInt = num
        .parse()
        .map_err(|_| SkewError::Parse(format!("bad integer {num:?}")))?;
    let d: BigInt = match den {
        Some(d) => d
            .parse()
            .map_err(|_| SkewError::Parse(format!("bad denominator {d:?}")))?,
        None => BigInt::one(),
    };
    if d.is_zero() {
        return Err(SkewError::Parse(format!("zero denominator in {s:?}")));
    }
    Ok(Rat::new(n, d))
}

/// `r^k` for a signed exponent; errors on `0^k` with `k < 0`.
pub fn pow_rat(r: &Rat, k: i64) -> Result<Rat> {
    if r.is_zero() && k < 0 {
        return Err(SkewError::ZeroInput("base of a negative power"));
    }
    if k >= 0 {
        Ok(num_traits::pow::pow(r.clone(), k as usize))
    } else {
        Ok(num_traits::pow::pow(r.recip(), (-k) as usize))
    }
}

/// Scales a rational vector to integer entries with content 1 and returns
/// the integer entries.  The zero vector maps to zeros.
///
/// The scale factor is positive, so signs are preserved; fixing the overall
/// sign is left to the caller, which knows its own convention.
pub fn clear_denominators(v: &[Rat]) -> Vec<BigInt> {
    let mut lcm = BigInt::one();
    for r in v {
        lcm = lcm.lcm(r.denom());
    }
    let ints: Vec<BigInt> = v.iter().map(|r| r.numer() * (&lcm / r.denom())).collect();
    let mut content = BigInt::zero();
    for n in &ints {
        content = content.gcd(n);
    }
    if content.is_zero() || content.is_one() {
        return ints;
    }
    ints.iter().map(|n| n / &content).collect()
}

/// Content-1 integer form of a rational vector with the sign fixed so that
/// the first nonzero entry is positive.
pub fn primitive_signed(v: &[Rat]) -> Vec<BigInt> {
    let mut ints = clear_denominators(v);
    if let Some(first) = ints.iter().find(|n| !n.is_zero()) {
        if first.is_negative() {
            for n in &mut ints {
                *n = -(n.clone());
            }
        }
    }
    ints
}
