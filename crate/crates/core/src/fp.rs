//! Scalar arithmetic in the prime field F_p.
//!
//! Residues are plain `u64` values in `[0, p)`. All moduli used in this
//! crate are tiny, so trial division and repeated squaring are plenty.

use crate::error::{Error, Result};

/// Returns `Ok(())` when `p` is prime, `Err(NotPrime)` otherwise.
pub fn validate_prime(p: u64) -> Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(Error::NotPrime(p))
    }
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

#[inline]
pub fn add(a: u64, b: u64, p: u64) -> u64 {
    (a + b) % p
}

#[inline]
pub fn sub(a: u64, b: u64, p: u64) -> u64 {
    (a + p - b % p) % p
}

#[inline]
pub fn mul(a: u64, b: u64, p: u64) -> u64 {
    // p fits in 32 bits for every use in this crate, so no overflow.
    (a * b) % p
}

#[inline]
pub fn neg(a: u64, p: u64) -> u64 {
    if a == 0 {
        0
    } else {
        p - a
    }
}

/// Multiplicative inverse of a nonzero residue, via Fermat's little theorem.
pub fn inv(a: u64, p: u64) -> u64 {
    debug_assert!(!a.is_multiple_of(p), "inverse of zero");
    pow(a % p, p - 2, p)
}

pub fn pow(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul(acc, base, p);
        }
        base = mul(base, base, p);
        exp >>= 1;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primality() {
        assert!(is_prime(2));
        assert!(is_prime(3));
        assert!(is_prime(5));
        assert!(is_prime(97));
        assert!(!is_prime(0));
        assert!(!is_prime(1));
        assert!(!is_prime(4));
        assert!(!is_prime(91)); // 7 * 13
        assert_eq!(validate_prime(6), Err(Error::NotPrime(6)));
    }

    #[test]
    fn field_ops() {
        assert_eq!(add(2, 2, 3), 1);
        assert_eq!(sub(0, 1, 3), 2);
        assert_eq!(neg(1, 2), 1);
        assert_eq!(neg(0, 5), 0);
        for p in [2u64, 3, 5, 7] {
            for a in 1..p {
                assert_eq!(mul(a, inv(a, p), p), 1, "inverse of {a} mod {p}");
            }
        }
    }
}
