//! Exact integer helpers for the thresholds `c^s`, `c^s - t`, `c^{1+x}`.
//!
//! Nothing here touches floating point. Powers that can get astronomically
//! large (`3^79`, `2^1000000`) are either computed once as [`BigCount`] or
//! compared against a bound with early exit so the full power is never built.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

/// Arbitrary-precision nonnegative integer.
pub type BigCount = BigUint;

/// `base^exp` exactly.
pub fn pow(base: u64, exp: u64) -> BigCount {
    let mut result = BigCount::one();
    let mut sq = BigCount::from(base);
    let mut e = exp;
    while e > 0 {
        if e & 1 == 1 {
            result *= &sq;
        }
        e >>= 1;
        if e > 0 {
            sq = &sq * &sq;
        }
    }
    result
}

/// `base^exp >= bound`, computed by repeated multiplication that stops as soon
/// as the running product reaches `bound`.
pub fn pow_at_least(base: u64, exp: u64, bound: &BigCount) -> bool {
    if bound.is_zero() {
        return true;
    }
    if base == 0 {
        return exp == 0 && bound.is_one();
    }
    if base == 1 {
        return bound.is_one();
    }
    let mut acc = BigCount::one();
    for _ in 0..exp {
        if &acc >= bound {
            return true;
        }
        acc *= base;
    }
    &acc >= bound
}

/// `base^exp` if it fits in a `u64`.
pub fn pow_u64(base: u64, exp: u64) -> Option<u64> {
    let mut acc: u64 = 1;
    for _ in 0..exp {
        acc = acc.checked_mul(base)?;
    }
    Some(acc)
}

/// `base^exp` if it fits in a `usize`; used for materialisation guards.
pub fn pow_usize(base: u64, exp: u64) -> Option<usize> {
    pow_u64(base, exp).and_then(|v| usize::try_from(v).ok())
}

/// Largest `k` with `base^k <= n`. Requires `base >= 2`, `n >= 1`.
pub fn floor_log(base: u64, n: u64) -> u64 {
    debug_assert!(base >= 2 && n >= 1);
    let mut k = 0;
    let mut p: u64 = 1;
    while let Some(next) = p.checked_mul(base) {
        if next > n {
            break;
        }
        p = next;
        k += 1;
    }
    k
}

/// Smallest `c >= 1` with `c^s >= n`, found by binary search over exact powers.
pub fn min_base_reaching(s: u64, n: &BigCount) -> BigCount {
    if n <= &BigCount::one() || s == 0 {
        return BigCount::one();
    }
    // c = n always satisfies c^s >= n for s >= 1.
    let mut lo = BigCount::one();
    let mut hi = n.clone();
    while lo < hi {
        let mid: BigCount = (&lo + &hi) >> 1u32;
        if big_pow_at_least(&mid, s, n) {
            hi = mid;
        } else {
            lo = mid + 1u32;
        }
    }
    lo
}

fn big_pow_at_least(base: &BigCount, exp: u64, bound: &BigCount) -> bool {
    if bound <= &BigCount::one() {
        return true;
    }
    if base <= &BigCount::one() {
        return false;
    }
    let mut acc = BigCount::one();
    for _ in 0..exp {
        if &acc >= bound {
            return true;
        }
        acc *= base;
    }
    &acc >= bound
}

/// Lossless narrowing used where a value is known to be small.
pub fn to_u64(n: &BigCount) -> Option<u64> {
    n.to_u64()
}

/// Number of times `n -> floor(log_c n)` must be applied before `n <= 1`.
pub fn log_star(base: u64, n: u64) -> u32 {
    let mut steps = 0;
    let mut m = n;
    while m > 1 {
        m = floor_log(base, m);
        steps += 1;
    }
    steps
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pow_matches_repeated_product() {
        let mut acc = 1u128;
        for e in 0..=79u64 {
            assert_eq!(pow(3, e), BigCount::from(acc), "3^{e}");
            acc *= 3;
        }
    }

    #[test]
    fn pow_at_least_exact_at_boundary() {
        let p = pow(3, 20);
        assert!(pow_at_least(3, 20, &p));
        assert!(!pow_at_least(3, 20, &(&p + 1u32)));
        assert!(pow_at_least(2, 1_000_000, &BigCount::from(17u32)));
        assert!(pow_at_least(5, 0, &BigCount::one()));
        assert!(!pow_at_least(5, 0, &BigCount::from(2u32)));
    }

    #[test]
    fn floor_log_examples() {
        assert_eq!(floor_log(3, 8), 1);
        assert_eq!(floor_log(3, 9), 2);
        assert_eq!(floor_log(2, 2), 1);
        assert_eq!(floor_log(3, 1), 0);
        assert_eq!(floor_log(2, u64::MAX), 63);
    }

    #[test]
    fn min_base_near_perfect_powers() {
        // 4^3 = 64: for n = 64 the answer is 4, for n = 65 it is 5.
        assert_eq!(
            min_base_reaching(3, &BigCount::from(64u32)),
            BigCount::from(4u32)
        );
        assert_eq!(
            min_base_reaching(3, &BigCount::from(65u32)),
            BigCount::from(5u32)
        );
        assert_eq!(
            min_base_reaching(2, &BigCount::from(3u32)),
            BigCount::from(2u32)
        );
        assert_eq!(
            min_base_reaching(1, &BigCount::from(8u32)),
            BigCount::from(8u32)
        );
        let big = pow(10, 30);
        assert_eq!(min_base_reaching(2, &big), pow(10, 15));
        assert_eq!(min_base_reaching(2, &(&big + 1u32)), pow(10, 15) + 1u32);
    }

    #[test]
    fn log_star_small() {
        assert_eq!(log_star(2, 1), 0);
        assert_eq!(log_star(2, 2), 1);
        assert_eq!(log_star(2, 4), 2);
        assert_eq!(log_star(2, 16), 3);
        assert_eq!(log_star(3, 26), 2);
        assert_eq!(log_star(3, 27), 2);
    }
}
