//! Exact-arithmetic reference for J₁.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

const FRACTION_BITS: u64 = 300;

/// `J₁(x)` from its ascending series in binary fixed point with 300 fraction
/// bits. Every f64 is a dyadic rational, so the only rounding is the
/// truncating division by `k(k+1)` in each term.
pub fn bessel_j1_reference(x: f64) -> f64 {
    assert!(x.is_finite() && x >= 0.0);
    if x == 0.0 {
        return 0.0;
    }
    // x = mant · 2^exp exactly
    let bits = x.to_bits();
    let raw_exp = ((bits >> 52) & 0x7ff) as i64;
    let (mant, exp) = if raw_exp == 0 {
        (bits & ((1 << 52) - 1), -1074)
    } else {
        ((bits & ((1 << 52) - 1)) | (1 << 52), raw_exp - 1075)
    };
    let mant = BigInt::from(mant);
    let shift = |v: BigInt, by: i64| if by >= 0 { v << by as u64 } else { v >> (-by) as u64 };

    // x/2 in fixed point
    let mut term = shift(mant.clone(), FRACTION_BITS as i64 + exp - 1);
    let mut sum = term.clone();
    let mant_sq = &mant * &mant;
    let mut k: u64 = 1;
    loop {
        // term · (x/2)² / (k(k+1)), negated
        term = -shift(&term * &mant_sq, 2 * exp - 2) / BigInt::from(k * (k + 1));
        if term.is_zero() {
            break;
        }
        sum += &term;
        k += 1;
        assert!(k < 10_000, "series failed to terminate");
    }
    let negative = sum.is_negative();
    let mag = sum.abs();
    let top = mag.bits().saturating_sub(64);
    let mantissa = (&mag >> top).to_u64().expect("fits in 64 bits") as f64;
    let v = mantissa * 2f64.powi(top as i32 - FRACTION_BITS as i32);
    if negative {
        -v
    } else {
        v
    }
}
