//! Exact rational edge weights and helpers for comparing rationals against
//! quadratic irrationals of the form `(a + b*sqrt(2)) * w`.
//!
//! All lengths, distances and costs in this crate are exact rationals, so
//! every comparison a strategy or a bound check makes is decided without
//! floating-point error. Decimal output is for human-readable tables only.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

/// Exact rational number used for all edge weights, distances and costs.
pub type Weight = BigRational;

/// Weight from an integer.
pub fn int(n: i64) -> Weight {
    BigRational::from_integer(BigInt::from(n))
}

/// Weight from a numerator/denominator pair. Panics if `q == 0`.
pub fn ratio(p: i64, q: i64) -> Weight {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

/// Canonical `p/q` text form, always including the denominator (`3/1`, `-7/2`).
/// This is the on-disk format; [`parse_weight`] accepts it back unchanged.
pub fn format_weight(w: &Weight) -> String {
    format!("{}/{}", w.numer(), w.denom())
}

/// Human-facing exact form: integers lose the `/1` suffix (`3`, `-7/2`).
pub fn display_weight(w: &Weight) -> String {
    if w.denom() == &BigInt::from(1) {
        w.numer().to_string()
    } else {
        format!("{}/{}", w.numer(), w.denom())
    }
}

/// Parse `p/q` or a bare integer `p`. Whitespace around the token is ignored.
pub fn parse_weight(s: &str) -> Result<Weight, String> {
    let s = s.trim();
    let mut parts = s.splitn(2, '/');
    let numer = parts
        .next()
        .filter(|t| !t.is_empty())
        .ok_or_else(|| format!("empty weight token {s:?}"))?;
    let numer: BigInt = numer
        .trim()
        .parse()
        .map_err(|e| format!("bad numerator in {s:?}: {e}"))?;
    match parts.next() {
        None => Ok(BigRational::from_integer(numer)),
        Some(denom) => {
            let denom: BigInt = denom
                .trim()
                .parse()
                .map_err(|e| format!("bad denominator in {s:?}: {e}"))?;
            if denom.is_zero() {
                return Err(format!("zero denominator in {s:?}"));
            }
            Ok(BigRational::new(numer, denom))
        }
    }
}

/// Six-significant-digit decimal rendering for report tables.
///
/// Integers print exactly; other values in a moderate range print fixed-point
/// with six significant digits (trailing zeros trimmed); extreme magnitudes
/// fall back to scientific notation.
pub fn decimal(w: &Weight) -> String {
    if w.is_zero() {
        return "0".to_string();
    }
    if w.denom() == &BigInt::from(1) {
        return w.numer().to_string();
    }
    let v = match w.to_f64() {
        Some(v) if v.is_finite() && v != 0.0 => v,
        _ => return display_weight(w),
    };
    let mag = v.abs();
    if (1e-4..1e9).contains(&mag) {
        let digits_before = mag.log10().floor() as i32;
        let precision = (5 - digits_before).clamp(0, 9) as usize;
        let s = format!("{v:.precision$}");
        let trimmed = s.trim_end_matches('0').trim_end_matches('.');
        trimmed.to_string()
    } else {
        format!("{v:.5e}")
    }
}

/// Exact comparison of `t` against `u * sqrt(2)`.
///
/// Decided by sign analysis plus comparing squares, so no irrational value is
/// ever materialized.
pub fn cmp_vs_sqrt2(t: &Weight, u: &Weight) -> Ordering {
    if u.is_zero() {
        return t.cmp(&Weight::zero());
    }
    let t2 = t * t;
    let two_u2 = int(2) * u * u;
    if u.is_positive() {
        if !t.is_positive() {
            Ordering::Less
        } else {
            t2.cmp(&two_u2)
        }
    } else {
        // u < 0: u*sqrt(2) < 0, and for t < 0 the comparison flips under squaring.
        if !t.is_negative() {
            Ordering::Greater
        } else {
            two_u2.cmp(&t2)
        }
    }
}

/// Exact comparison of `x` against `(a + b * sqrt(2)) * w`.
pub fn cmp_vs_quad(x: &Weight, a: &Weight, b: &Weight, w: &Weight) -> Ordering {
    // x <=> a*w + b*w*sqrt(2)  <=>  (x - a*w) <=> (b*w) * sqrt(2)
    let t = x - a * w;
    let u = b * w;
    cmp_vs_sqrt2(&t, &u)
}
