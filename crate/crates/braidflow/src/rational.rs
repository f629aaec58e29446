//! Exact rational arithmetic helpers.
//!
//! All symplectic areas, gaps, and thresholds in this crate are
//! arbitrary-precision rationals. JSON carries them as `"p/q"` strings
//! (or `"p"` for integers) so no precision is lost in round trips.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

pub type Rat = num_rational::BigRational;

/// Rational from an integer pair. Panics on q = 0.
pub fn rat(p: i64, q: i64) -> Rat {
    Rat::new(BigInt::from(p), BigInt::from(q))
}

pub fn rat_int(p: i64) -> Rat {
    Rat::from_integer(BigInt::from(p))
}

/// Formats as `p/q`, or just `p` when the denominator is 1.
pub fn fmt_rat(r: &Rat) -> String {
    if r.denom() == &BigInt::from(1) {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses `p/q`, `p`, or a decimal like `-0.25` (exact, base-10).
/// Whitespace around any part is rejected.
pub fn parse_rat(s: &str) -> Result<Rat, String> {
    let parse_int = |part: &str| -> Result<BigInt, String> {
        part.parse::<BigInt>()
            .map_err(|_| format!("invalid rational `{s}`"))
    };
    match s.split_once('/') {
        Some((p, q)) => {
            let q = parse_int(q)?;
            if q.is_zero() {
                return Err(format!("invalid rational `{s}`: zero denominator"));
            }
            Ok(Rat::new(parse_int(p)?, q))
        }
        None => match s.split_once('.') {
            Some((whole, frac)) => {
                if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
                    return Err(format!("invalid rational `{s}`"));
                }
                let negative = whole.starts_with('-');
                let whole = parse_int(if whole.is_empty() || whole == "-" {
                    "0"
                } else {
                    whole
                })?;
                let scale = BigInt::from(10).pow(frac.len() as u32);
                let frac = parse_int(frac)?;
                let mag = whole.abs() * &scale + frac;
                Ok(Rat::new(if negative { -mag } else { mag }, scale))
            }
            None => Ok(Rat::from_integer(parse_int(s)?)),
        },
    }
}

pub fn rat_to_f64(r: &Rat) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        // Fallback for numerator/denominator outside f64 range.
        let approx =
            r.numer().to_f64().unwrap_or(f64::MAX) / r.denom().to_f64().unwrap_or(f64::MAX);
        approx
    })
}

/// Nearest rational with the given denominator; used to snap float
/// measurements onto an exact grid for bookkeeping.
pub fn rat_from_f64_approx(x: f64, denom: i64) -> Rat {
    let p = (x * denom as f64).round() as i64;
    rat(p, denom)
}

/// Formats a float with 17 significant digits; round-trips through `parse`.
pub fn fmt_f64(x: f64) -> String {
    format!("{:.16e}", x)
}

pub fn abs(r: &Rat) -> Rat {
    r.abs()
}
