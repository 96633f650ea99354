//! Exact counting: point counts of projective spaces, Gaussian binomials,
//! the Möbius function and divisor lists. All values are arbitrary precision.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Pow, Zero};

use crate::error::{Error, Result};

/// Number of points of PG(t−1, q): `(q^t − 1)/(q − 1)`, with `theta(0, q) = 0`.
pub fn theta(t: u32, q: u64) -> BigUint {
    let q = BigUint::from(q);
    let num = Pow::pow(&q, t) - BigUint::one();
    num / (q - BigUint::one())
}

/// [`theta`] as a machine integer, for enumeration-sized parameters.
pub fn theta_u64(t: u32, q: u64) -> u64 {
    let v = theta(t, q);
    u64::try_from(&v).expect("theta exceeds u64")
}

/// Divides exactly or fails.
pub fn exact_div(num: &BigInt, den: &BigInt) -> Result<BigInt> {
    let (quot, rem) = num.div_rem(den);
    if !rem.is_zero() {
        return Err(Error::InexactDivision {
            num: num.to_string(),
            den: den.to_string(),
        });
    }
    Ok(quot)
}

/// Number of `b`-dimensional subspaces of GF(q)^a; zero when `b > a`.
///
/// Each prefix of the product is itself a Gaussian binomial, so every
/// intermediate division is checked for exactness.
pub fn gaussian_binomial(a: u32, b: u32, q: u64) -> Result<BigUint> {
    if b > a {
        return Ok(BigUint::zero());
    }
    let qb = BigInt::from(q);
    let mut acc = BigInt::one();
    for i in 0..b {
        let num = Pow::pow(&qb, a - i) - 1;
        let den = Pow::pow(&qb, i + 1) - 1;
        acc = exact_div(&(acc * num), &den)?;
    }
    Ok(acc.to_biguint().expect("non-negative"))
}

pub fn moebius(n: u64) -> Result<i8> {
    if n == 0 {
        return Err(Error::InvalidParameter("moebius(0) is undefined".into()));
    }
    let mut n = n;
    let mut sign = 1i8;
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            n /= d;
            if n.is_multiple_of(d) {
                return Ok(0);
            }
            sign = -sign;
        }
        d += 1;
    }
    if n > 1 {
        sign = -sign;
    }
    Ok(sign)
}

/// Positive divisors of `n`, ascending. Empty for `n = 0`.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(x: u64) -> BigUint {
        BigUint::from(x)
    }

    #[test]
    fn theta_values() {
        assert_eq!(theta(0, 5), big(0));
        assert_eq!(theta(1, 7), big(1));
        assert_eq!(theta(4, 2), big(15));
        assert_eq!(theta(2, 4), big(5));
    }

    #[test]
    fn gaussian_values() {
        assert_eq!(gaussian_binomial(5, 0, 3).unwrap(), big(1));
        assert_eq!(gaussian_binomial(4, 2, 2).unwrap(), big(35));
        assert_eq!(gaussian_binomial(6, 2, 2).unwrap(), big(651));
        assert_eq!(gaussian_binomial(6, 3, 2).unwrap(), big(1395));
        assert_eq!(gaussian_binomial(2, 3, 2).unwrap(), big(0));
    }

    #[test]
    fn moebius_values() {
        assert_eq!(moebius(1).unwrap(), 1);
        assert_eq!(moebius(2).unwrap(), -1);
        assert_eq!(moebius(6).unwrap(), 1);
        assert_eq!(moebius(12).unwrap(), 0);
        assert_eq!(moebius(30).unwrap(), -1);
        assert!(moebius(0).is_err());
    }

    #[test]
    fn divisor_lists() {
        assert_eq!(divisors(1), vec![1]);
        assert_eq!(divisors(4), vec![1, 2, 4]);
        assert_eq!(divisors(6), vec![1, 2, 3, 6]);
        assert_eq!(divisors(36), vec![1, 2, 3, 4, 6, 9, 12, 18, 36]);
    }

    #[test]
    fn inexact_division_is_an_error() {
        assert!(matches!(
            exact_div(&BigInt::from(7), &BigInt::from(2)),
            Err(Error::InexactDivision { .. })
        ));
    }

    #[test]
    fn gaussian_duality() {
        for q in [2, 3, 4] {
            for a in 0..=8 {
                for b in 0..=a {
                    assert_eq!(
                        gaussian_binomial(a, b, q).unwrap(),
                        gaussian_binomial(a, a - b, q).unwrap()
                    );
                }
            }
        }
    }

    #[test]
    fn moebius_sums_vanish() {
        for n in 1..=1000u64 {
            let s: i64 = divisors(n)
                .into_iter()
                .map(|d| moebius(d).unwrap() as i64)
                .sum();
            assert_eq!(s, i64::from(n == 1), "n = {n}");
        }
    }

    #[test]
    fn theta_is_gaussian_one() {
        for q in [2, 3, 4, 8, 9] {
            for t in 0..=8 {
                assert_eq!(theta(t, q), gaussian_binomial(t, 1, q).unwrap());
            }
        }
    }
}
