//! Integer helpers shared across the crate: gcd/Bezout, prime factorization
//! by trial division, Euler phi, p-adic valuations and checked powers.
//!
//! Everything here is exact. Sizes are desk scale (group orders fit in u128,
//! trial division stays below 2^24), so no probabilistic primality or
//! big-integer machinery is needed.

use crate::{Error, Result};

/// Greatest common divisor. gcd(0, 0) = 0.
pub fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Least common multiple, checked.
pub fn lcm(a: u128, b: u128) -> Result<u128> {
    if a == 0 || b == 0 {
        return Ok(0);
    }
    (a / gcd(a, b))
        .checked_mul(b)
        .ok_or(Error::Overflow("lcm"))
}

/// Extended Euclid on signed integers: returns (g, x, y) with a*x + b*y = g ≥ 0.
pub fn ext_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    if b == 0 {
        if a < 0 {
            (-a, -1, 0)
        } else {
            (a, 1, 0)
        }
    } else {
        let (g, x, y) = ext_gcd(b, a % b);
        (g, y, x - (a / b) * y)
    }
}

/// Inverse of a modulo n (n > 1), if gcd(a, n) = 1.
pub fn mod_inverse(a: u128, n: u128) -> Option<u128> {
    let (g, x, _) = ext_gcd((a % n) as i128, n as i128);
    if g != 1 {
        return None;
    }
    Some(x.rem_euclid(n as i128) as u128)
}

/// Deterministic primality by trial division; intended for desk-scale inputs.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Prime factorization by trial division, smallest prime first.
///
/// Errors with `BoundExceeded` if a composite cofactor survives trial division
/// up to 2^24 (no factor of that size is expected at the scales handled here).
pub fn factorize(mut n: u128) -> Result<Vec<(u128, u32)>> {
    const TRIAL_BOUND: u128 = 1 << 24;
    let mut out = Vec::new();
    let mut push = |p: u128, k: u32| {
        if k > 0 {
            out.push((p, k));
        }
    };
    let mut k = 0;
    while n % 2 == 0 {
        n /= 2;
        k += 1;
    }
    push(2, k);
    let mut d = 3u128;
    while d * d <= n && d <= TRIAL_BOUND {
        let mut k = 0;
        while n % d == 0 {
            n /= d;
            k += 1;
        }
        push(d, k);
        d += 2;
    }
    if n > 1 {
        if d * d > n {
            // cofactor below the square of the last trial divisor is prime
            push(n, 1);
        } else {
            return Err(Error::BoundExceeded(format!(
                "factorization: cofactor {n} exceeds the 2^24 trial bound"
            )));
        }
    }
    Ok(out)
}

/// Euler's totient.
pub fn euler_phi(n: u128) -> Result<u128> {
    if n == 0 {
        return Ok(0);
    }
    let mut phi = 1u128;
    for (p, k) in factorize(n)? {
        phi *= (p - 1) * p.pow(k - 1);
    }
    Ok(phi)
}

/// All divisors of n in increasing order.
pub fn divisors(n: u128) -> Result<Vec<u128>> {
    let mut out = vec![1u128];
    for (p, k) in factorize(n)? {
        let prev = out.clone();
        let mut pe = 1u128;
        for _ in 0..k {
            pe *= p;
            out.extend(prev.iter().map(|d| d * pe));
        }
    }
    out.sort_unstable();
    Ok(out)
}

/// p-adic valuation of n (n > 0).
pub fn valuation(mut n: u128, p: u128) -> u32 {
    let mut v = 0;
    while n % p == 0 {
        n /= p;
        v += 1;
    }
    v
}

/// n^k as u128, erroring on overflow.
pub fn checked_pow(n: u128, k: u32) -> Result<u128> {
    let mut acc = 1u128;
    for _ in 0..k {
        acc = acc.checked_mul(n).ok_or(Error::Overflow("checked_pow"))?;
    }
    Ok(acc)
}

/// a*b mod n without overflow (n < 2^64 is enough for every caller here, but
/// the u128 path keeps it safe for larger moduli too).
pub fn mul_mod(a: u128, b: u128, n: u128) -> u128 {
    debug_assert!(n > 0);
    if let (Some(ab), true) = (a.checked_mul(b), true) {
        return ab % n;
    }
    // fallback: double-and-add
    let (mut a, mut b, mut acc) = (a % n, b, 0u128);
    while b > 0 {
        if b & 1 == 1 {
            acc = (acc + a) % n;
        }
        a = (a << 1) % n;
        b >>= 1;
    }
    acc
}

/// a^k mod n.
pub fn pow_mod(mut a: u128, mut k: u128, n: u128) -> u128 {
    let mut acc = 1 % n;
    a %= n;
    while k > 0 {
        if k & 1 == 1 {
            acc = mul_mod(acc, a, n);
        }
        a = mul_mod(a, a, n);
        k >>= 1;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gcd_and_bezout() {
        assert_eq!(gcd(12, 8), 4);
        assert_eq!(gcd(0, 5), 5);
        let (g, x, y) = ext_gcd(240, 46);
        assert_eq!(g, 2);
        assert_eq!(240 * x + 46 * y, 2);
        // Bezout pair for n = 12, n-k = 11 (the coprime fast path shape)
        let (g, u, v) = ext_gcd(12, 11);
        assert_eq!(g, 1);
        assert_eq!(12 * u + 11 * v, 1);
    }

    #[test]
    fn factorization_round_trip() {
        for n in [1u128, 2, 8, 5832, 374134464, 3u128.pow(20) * 7 * 11] {
            let f = factorize(n).unwrap();
            let back: u128 = f.iter().map(|&(p, k)| p.pow(k)).product();
            assert_eq!(back, n);
            for &(p, _) in &f {
                assert!(is_prime(p as u64));
            }
        }
    }

    #[test]
    fn phi_and_divisors() {
        assert_eq!(euler_phi(1).unwrap(), 1);
        assert_eq!(euler_phi(8).unwrap(), 4);
        assert_eq!(euler_phi(9).unwrap(), 6);
        assert_eq!(divisors(12).unwrap(), vec![1, 2, 3, 4, 6, 12]);
        // sum of phi over divisors of n equals n
        for n in [8u128, 12, 360, 5832] {
            let s: u128 = divisors(n)
                .unwrap()
                .iter()
                .map(|&d| euler_phi(d).unwrap())
                .sum();
            assert_eq!(s, n);
        }
    }

    #[test]
    fn modular_helpers() {
        assert_eq!(mod_inverse(3, 8), Some(3));
        assert_eq!(mod_inverse(2, 8), None);
        assert_eq!(pow_mod(3, 100, 7), 4);
        assert_eq!(valuation(48, 2), 4);
        assert_eq!(checked_pow(3, 8).unwrap(), 6561);
    }
}
