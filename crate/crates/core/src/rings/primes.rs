//! 64-bit modular arithmetic and deterministic primality testing.

use crate::{Error, Result};

#[inline]
pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut base: u64, mut e: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        e >>= 1;
    }
    acc
}

/// Miller–Rabin with the first twelve primes as witnesses, which is exact
/// for every 64-bit input.
pub fn is_prime(n: u64) -> bool {
    const WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &w in &WITNESSES {
        if n % w == 0 {
            return n == w;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &WITNESSES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

pub fn require_prime(n: u64) -> Result<()> {
    if is_prime(n) {
        Ok(())
    } else {
        Err(Error::NotPrime(n))
    }
}

/// Parses a decimal prime, rejecting anything outside `u64`.
pub fn parse_prime(s: &str) -> Result<u64> {
    let n: u64 = s
        .trim()
        .parse()
        .map_err(|_| Error::Parse(format!("{s:?} is not a 64-bit unsigned integer")))?;
    require_prime(n)?;
    Ok(n)
}

/// Distinct prime factors by trial division.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Multiplicative order of `q` modulo the prime `p`.
///
/// Starts from `p − 1` and strips prime factors while `q^e ≡ 1` persists,
/// which lands on the least such divisor.
pub fn mult_order(q: u64, p: u64) -> Result<u64> {
    require_prime(p)?;
    require_prime(q)?;
    if p == q {
        return Err(Error::EqualPrimes(p));
    }
    let mut r = p - 1;
    for f in prime_factors(p - 1) {
        while r % f == 0 && pow_mod(q, r / f, p) == 1 {
            r /= f;
        }
    }
    Ok(r)
}

/// Smallest prime strictly greater than `n`.
pub fn next_prime(n: u64) -> u64 {
    let mut c = n + 1;
    while !is_prime(c) {
        c += 1;
    }
    c
}

/// Modular inverse for `a` coprime to the prime `m`.
pub fn inv_mod(a: u64, m: u64) -> u64 {
    pow_mod(a, m - 2, m)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primality_against_sieve() {
        let n = 5000usize;
        let mut sieve = vec![true; n];
        sieve[0] = false;
        sieve[1] = false;
        for i in 2..n {
            if sieve[i] {
                for j in (i * i..n).step_by(i) {
                    sieve[j] = false;
                }
            }
        }
        for (i, &s) in sieve.iter().enumerate() {
            assert_eq!(is_prime(i as u64), s, "{i}");
        }
    }

    #[test]
    fn large_primes() {
        assert!(is_prime(18_446_744_073_709_551_557));
        assert!(!is_prime(18_446_744_073_709_551_615));
        // strong pseudoprime to bases 2..=11
        assert!(!is_prime(3_825_123_056_546_413_051));
    }

    #[test]
    fn orders() {
        assert_eq!(mult_order(11, 7).unwrap(), 3);
        assert_eq!(mult_order(11, 5).unwrap(), 1);
        assert_eq!(mult_order(2, 7).unwrap(), 3);
        assert_eq!(mult_order(7, 5).unwrap(), 4);
        assert_eq!(mult_order(3, 2).unwrap(), 1);
        assert_eq!(mult_order(2, 3).unwrap(), 2);
        assert_eq!(mult_order(7, 7).unwrap_err(), Error::EqualPrimes(7));
        assert_eq!(mult_order(4, 7).unwrap_err(), Error::NotPrime(4));
    }

    #[test]
    fn order_matches_direct_powering() {
        for p in [3u64, 5, 7, 11, 13, 17, 19, 23] {
            for q in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31] {
                if p == q {
                    continue;
                }
                let direct = (1..p).find(|&r| pow_mod(q, r, p) == 1).unwrap();
                assert_eq!(mult_order(q, p).unwrap(), direct, "q={q} p={p}");
            }
        }
    }

    #[test]
    fn parse_rejects_wide_input() {
        assert!(matches!(parse_prime("340282366920938463463374607431768211297"), Err(Error::Parse(_))));
        assert_eq!(parse_prime("9").unwrap_err(), Error::NotPrime(9));
        assert_eq!(parse_prime("13").unwrap(), 13);
    }
}
