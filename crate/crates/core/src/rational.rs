//! Exact rational helpers shared by the invariant and reporting code.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

pub type Q = BigRational;

pub fn q(numer: i64, denom: i64) -> Q {
    Q::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn qi(n: impl Into<BigInt>) -> Q {
    Q::from_integer(n.into())
}

/// Renders as `p/q`, or `p` when the denominator is one.
pub fn format_frac(v: &Q) -> String {
    v.to_string()
}

pub fn format_dec(v: &Q, places: usize) -> String {
    format!("{:.*}", places, to_f64(v))
}

pub fn to_f64(v: &Q) -> f64 {
    v.to_f64().unwrap_or(f64::NAN)
}

/// Parses `p/q` or a bare integer `p`.
pub fn parse_frac(s: &str) -> Option<Q> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Some(Q::new(n, d))
        }
        None => s.parse::<BigInt>().ok().map(Q::from_integer),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn frac_formatting_and_parsing() {
        assert_eq!(format_frac(&q(244, 60)), "61/15");
        assert_eq!(format_frac(&q(144, 48)), "3");
        assert_eq!(parse_frac("61/15"), Some(q(61, 15)));
        assert_eq!(parse_frac("3"), Some(q(3, 1)));
        assert_eq!(parse_frac("1/0"), None);
        assert_eq!(parse_frac("x"), None);
        assert_eq!(format_dec(&q(9, 5), 6), "1.800000");
    }
}
