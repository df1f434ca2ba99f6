//! Small exact-arithmetic helpers used across modules.

use num_bigint::BigInt;
use num_traits::{One, Zero};

/// `n!` as a big integer.
pub fn factorial(n: u64) -> BigInt {
    let mut acc = BigInt::one();
    for i in 2..=n {
        acc *= i;
    }
    acc
}

/// Falling factorial `ff(p, s) = p (p-1) ... (p-s+1)`; zero when `p < s`.
pub fn falling(p: u64, s: u64) -> BigInt {
    if s == 0 {
        return BigInt::one();
    }
    if p < s {
        return BigInt::zero();
    }
    let mut acc = BigInt::one();
    for i in 0..s {
        acc *= p - i;
    }
    acc
}

/// Rising factorial `p (p+1) ... (p+s-1)`.
pub fn rising(p: u64, s: u64) -> BigInt {
    let mut acc = BigInt::one();
    for i in 0..s {
        acc *= p + i;
    }
    acc
}

/// Binomial coefficient `C(n, k)` as a big integer.
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}
