//! Small integer helpers shared across modules.

use num_bigint::BigInt;
use num_traits::One;

/// Prime factorization by trial division, primes ascending.
pub fn factorize(mut n: usize) -> Vec<(usize, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Returns `(p, r)` with `n = p^r`, `r >= 1`, or `None`.
pub fn prime_power(n: usize) -> Option<(usize, u32)> {
    match factorize(n).as_slice() {
        [(p, r)] => Some((*p, *r)),
        _ => None,
    }
}

/// p-adic valuation of m! by Legendre's formula.
pub fn legendre(m: usize, p: usize) -> u32 {
    let mut total = 0u32;
    let mut q = p;
    while q <= m {
        total += (m / q) as u32;
        match q.checked_mul(p) {
            Some(next) => q = next,
            None => break,
        }
    }
    total
}

/// p-adic valuation of a nonzero integer.
pub fn valuation(mut m: u128, p: u128) -> u32 {
    assert!(m != 0, "valuation of zero");
    let mut v = 0;
    while m.is_multiple_of(p) {
        m /= p;
        v += 1;
    }
    v
}

/// Binomial coefficient as a polynomial in the top argument:
/// `m (m-1) ... (m-k+1) / k!`. Vanishes for `0 <= m < k`; for negative `m`
/// it follows the polynomial (so `binomial(-1, 3) = -1`).
pub fn binomial(m: i64, k: u32) -> i64 {
    let mut num: i128 = 1;
    let mut den: i128 = 1;
    for i in 0..k as i64 {
        num *= (m - i) as i128;
        den *= (i + 1) as i128;
    }
    (num / den) as i64
}

pub fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * k)
}

pub fn factorial_u128(n: usize) -> u128 {
    (1..=n as u128).product()
}
