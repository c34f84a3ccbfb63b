//! Certified enclosures of `log₂ k` for integer `k ≥ 1`.
//!
//! `k = 2^e · m` with `m ∈ [1, 2)`; the fractional bits of `log₂ m` come from
//! repeated squaring of `m` in fixed point, carrying a floor-rounded and a
//! ceiling-rounded copy so that every emitted bit is proven.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};

/// A closed interval `[lo, hi]` known to contain `log₂ k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Log2Interval {
    pub lo: BigRational,
    pub hi: BigRational,
}

impl Log2Interval {
    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }
}

fn is_power_of_two(k: &BigUint) -> bool {
    k.count_ones() == 1
}

/// Encloses `log₂ k` to within `2^-frac_bits`, or exactly when `k` is a
/// power of two.
pub fn log2_interval(k: &BigUint, frac_bits: u32) -> Log2Interval {
    assert!(!k.is_zero(), "log2 of zero");
    let e = k.bits() - 1;
    let e_rat = BigRational::from_integer(BigInt::from(e));
    if is_power_of_two(k) {
        return Log2Interval { lo: e_rat.clone(), hi: e_rat };
    }

    let precision = 2 * frac_bits as u64 + 64;
    let one = BigUint::one() << precision;
    let two = &one << 1u32;
    // m · 2^precision, floor and ceiling
    let scaled = k << precision;
    let mut lo = &scaled >> e;
    let mut hi = if (&lo << e) == scaled { lo.clone() } else { &lo + 1u32 };

    let mut known = BigUint::zero();
    let mut bits = 0u32;
    while bits < frac_bits {
        lo = (&lo * &lo) >> precision;
        let sq = &hi * &hi;
        hi = {
            let q = &sq >> precision;
            if (&q << precision) == sq { q } else { q + 1u32 }
        };
        let bit = if lo >= two {
            true
        } else if hi < two {
            false
        } else {
            // rounding noise straddles 2; stop with what is proven
            break;
        };
        known <<= 1u32;
        if bit {
            known |= BigUint::one();
            lo >>= 1u32;
            hi = (&hi + 1u32) >> 1u32;
        }
        bits += 1;
    }
    let denom = BigInt::one() << bits;
    let frac = BigRational::new(BigInt::from(known), denom.clone());
    let lo = &e_rat + &frac;
    let hi = lo.clone() + BigRational::new(BigInt::one(), denom);
    Log2Interval { lo, hi }
}
