//! Exact binomial and factorial helpers over arbitrary-precision integers.

use num_bigint::{BigInt, BigUint};
use num_traits::One;

/// `C(n, k)`, zero when `k > n`.
pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::default();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        // acc * (n - i) is divisible by (i + 1) at every step.
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// Signed binomial with the convention `C(n, k) = 0` for `k < 0` or `k > n`.
pub fn binomial_signed(n: i64, k: i64) -> BigInt {
    if n < 0 || k < 0 || k > n {
        return BigInt::default();
    }
    BigInt::from(binomial(n as u64, k as u64))
}

pub fn factorial(n: u64) -> BigUint {
    (2..=n).fold(BigUint::one(), |acc, i| acc * i)
}

/// `total! / (parts[0]! parts[1]! ...)` where `total = sum(parts)`.
pub fn multinomial(parts: &[u64]) -> BigUint {
    let mut acc = BigUint::one();
    let mut running = 0u64;
    for &part in parts {
        running += part;
        acc *= binomial(running, part);
    }
    acc
}
