//! Small integer helpers shared by the other modules.

use num_integer::Integer;

pub fn is_prime(n: usize) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Divisors of `n` in ascending order. Empty for `n == 0`.
pub fn divisors(n: usize) -> Vec<usize> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d != n / d {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// Euler's totient.
pub fn totient(n: usize) -> usize {
    (1..=n).filter(|&k| k.gcd(&n) == 1).count()
}

/// Reduce a possibly negative integer into `[0, n)`.
pub fn residue(x: i64, n: usize) -> usize {
    x.rem_euclid(n as i64) as usize
}

/// Inverse of `x` modulo `m` via the extended Euclidean algorithm.
pub fn mod_inverse(x: usize, m: usize) -> Option<usize> {
    let ext = (x as i64).extended_gcd(&(m as i64));
    (ext.gcd == 1).then(|| residue(ext.x, m))
}

/// `base^exp`, or `None` on `u64` overflow.
pub fn checked_pow(base: usize, exp: usize) -> Option<u64> {
    (base as u64).checked_pow(u32::try_from(exp).ok()?)
}

pub fn checked_factorial(n: usize) -> Option<u64> {
    (1..=n as u64).try_fold(1u64, |acc, k| acc.checked_mul(k))
}
