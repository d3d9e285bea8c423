//! Integer factorization for the rational-root routine.
//!
//! Trial division by small primes, a deterministic Miller-Rabin primality
//! test, and Brent's variant of Pollard's rho for the composite residue.
//! This targets the coefficient sizes that show up in root hunting on
//! desk-scale polynomials, not industrial factoring.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

const TRIAL_LIMIT: u64 = 1_000_000;

/// Factors `n > 0` into `(prime, exponent)` pairs, primes ascending.
pub fn factorize(n: &BigInt) -> Vec<(BigInt, u32)> {
    assert!(n.is_positive(), "factorize expects a positive integer");
    let mut factors: Vec<(BigInt, u32)> = Vec::new();
    let mut rest = n.clone();

    let push = |p: BigInt, k: u32, factors: &mut Vec<(BigInt, u32)>| {
        factors.push((p, k));
    };

    // Small primes by trial division.
    let mut d = 2u64;
    while d <= TRIAL_LIMIT {
        if rest.is_one() {
            break;
        }
        let db = BigInt::from(d);
        if (&db * &db) > rest {
            break;
        }
        let mut k = 0u32;
        loop {
            let (q, r) = rest.div_rem(&db);
            if !r.is_zero() {
                break;
            }
            rest = q;
            k += 1;
        }
        if k > 0 {
            push(db, k, &mut factors);
        }
        d = if d == 2 { 3 } else { d + 2 };
    }
    if rest.is_one() {
        return factors;
    }
    if (&rest).sqrt().pow(2) == rest {
        // Perfect square of a prime beyond the trial bound shows up often
        // enough (leading coefficients of squared forms) to shortcut.
        let s = rest.sqrt();
        if is_prime(&s) {
            push(s, 2, &mut factors);
            return factors;
        }
    }
    if is_prime(&rest) {
        push(rest, 1, &mut factors);
        return factors;
    }

    // Composite residue: split recursively with Brent's rho.
    let mut stack = vec![rest];
    let mut found: Vec<BigInt> = Vec::new();
    while let Some(m) = stack.pop() {
        if m.is_one() {
            continue;
        }
        if is_prime(&m) {
            found.push(m);
            continue;
        }
        let f = brent_rho(&m);
        let q = &m / &f;
        stack.push(f);
        stack.push(q);
    }
    found.sort();
    let mut i = 0;
    while i < found.len() {
        let mut j = i;
        while j < found.len() && found[j] == found[i] {
            j += 1;
        }
        push(found[i].clone(), (j - i) as u32, &mut factors);
        i = j;
    }
    factors.sort_by(|a, b| a.0.cmp(&b.0));
    factors
}

/// All positive divisors of `n > 0`, ascending.
pub fn divisors(n: &BigInt) -> Vec<BigInt> {
    let mut out = vec![BigInt::one()];
    for (p, k) in factorize(n) {
        let base = out.clone();
        let mut power = BigInt::one();
        for _ in 0..k {
            power *= &p;
            out.extend(base.iter().map(|d| d * &power));
        }
    }
    out.sort();
    out
}

/// Deterministic Miller-Rabin.  The first witness set is proven complete
/// below 3.3 * 10^24; larger inputs add a fixed tail of witnesses, which
/// keeps the routine deterministic for any single run.
pub fn is_prime(n: &BigInt) -> bool {
    if *n < BigInt::from(2) {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let pb = BigInt::from(p);
        if *n == pb {
            return true;
        }
        if n.mod_floor(&pb).is_zero() {
            return false;
        }
    }
    let n_minus_1: BigInt = n - 1u32;
    let s = n_minus_1.trailing_zeros().unwrap_or(0);
    let d = &n_minus_1 >> s;

    let mut witnesses: Vec<BigInt> = [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37]
        .iter()
        .map(|&w| BigInt::from(w))
        .collect();
    if n.bits() > 82 {
        witnesses.extend(
            [41u64, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97, 101]
                .iter()
                .map(|&w| BigInt::from(w)),
        );
    }

    'witness: for a in witnesses {
        if a >= n_minus_1 {
            continue;
        }
        let mut x = a.modpow(&d, n);
        if x.is_one() || x == n_minus_1 {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x).mod_floor(n);
            if x == n_minus_1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Brent's cycle-finding variant of Pollard rho.  Returns a nontrivial
/// factor of an odd composite `n`.  The constant offset `c` walks a fixed
/// sequence, so the output is deterministic.
fn brent_rho(n: &BigInt) -> BigInt {
    debug_assert!(!is_prime(n));
    // Even residues cannot reach here through factorize (2s are stripped),
    // but guard anyway.
    if n.is_even() {
        return BigInt::from(2);
    }
    let one = BigInt::one();
    for c in 1u64.. {
        let cb = BigInt::from(c);
        let f = |x: &BigInt| (x * x + &cb).mod_floor(n);
        let mut y = BigInt::from(2);
        let mut r: u64 = 1;
        let mut q = BigInt::one();
        let mut g = BigInt::one();
        let mut x = y.clone();
        let mut ys = y.clone();
        while g.is_one() {
            x = y.clone();
            for _ in 0..r {
                y = f(&y);
            }
            let mut k: u64 = 0;
            while k < r && g.is_one() {
                ys = y.clone();
                let batch = 128.min(r - k);
                for _ in 0..batch {
                    y = f(&y);
                    let diff = (&x - &y).abs();
                    q = (&q * &diff).mod_floor(n);
                }
                g = q.gcd(n);
                k += batch;
            }
            r *= 2;
        }
        if g == *n {
            // Backtrack one step at a time.
            loop {
                ys = f(&ys);
                g = (&x - &ys).abs().gcd(n);
                if !g.is_one() {
                    break;
                }
            }
        }
        if g != *n && g > one {
            return g;
        }
        // Rare total collapse: retry with the next polynomial offset.
    }
    unreachable!("rho offset sequence is unbounded")
}

/// Convenience for tests and small inputs.
#[cfg(test)]
pub fn factorize_u64(n: u64) -> Vec<(u64, u32)> {
    use num_traits::ToPrimitive;
    factorize(&BigInt::from(n))
        .into_iter()
        .map(|(p, k)| (p.to_u64().unwrap(), k))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::str::FromStr;

    #[test]
    fn factors_small_composites() {
        assert_eq!(factorize_u64(1), vec![]);
        assert_eq!(factorize_u64(2), vec![(2, 1)]);
        assert_eq!(factorize_u64(360), vec![(2, 3), (3, 2), (5, 1)]);
        assert_eq!(factorize_u64(1_000_003), vec![(1_000_003, 1)]);
    }

    #[test]
    fn factors_semiprime_beyond_trial_range() {
        // 1000003 * 1000033, both prime, both past the trial bound square.
        let n = BigInt::from(1_000_003u64) * BigInt::from(1_000_033u64);
        let f = factorize(&n);
        assert_eq!(
            f,
            vec![
                (BigInt::from(1_000_003u64), 1),
                (BigInt::from(1_000_033u64), 1)
            ]
        );
    }

    #[test]
    fn recognises_large_primes() {
        let p = BigInt::from_str("170141183460469231731687303715884105727").unwrap();
        assert!(is_prime(&p)); // 2^127 - 1
        assert!(!is_prime(&(p * BigInt::from(3))));
    }

    #[test]
    fn divisor_enumeration() {
        let d = divisors(&BigInt::from(12));
        let expect: Vec<BigInt> = [1, 2, 3, 4, 6, 12].iter().map(|&v| BigInt::from(v)).collect();
        assert_eq!(d, expect);
    }
}
