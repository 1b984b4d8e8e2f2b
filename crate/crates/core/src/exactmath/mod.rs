//! Exact scalars, polynomials, the falling-factorial basis and truncated
//! exponential power series.

mod falling;
mod poly;
mod series;

use num_bigint::BigInt;
use num_traits::Zero;
use thiserror::Error;

pub use falling::{from_falling, to_falling, FactPoly};
pub use poly::Poly;
pub use series::{SeriesError, TruncSeries};

/// Arbitrary-precision fraction, always stored reduced with a positive
/// denominator.
pub type Rational = num_rational::BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyParseError {
    #[error("invalid JSON: {0}")]
    Json(String),
    #[error("invalid coefficient {0:?}: expected an integer or \"p/q\" string")]
    Coefficient(String),
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn frac(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

/// Parses `"n"` or `"p/q"`; a zero denominator is rejected.
pub fn parse_rational(s: &str) -> Result<Rational, PolyParseError> {
    let err = || PolyParseError::Coefficient(s.to_string());
    let s = s.trim();
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| err())?;
            let q: BigInt = q.trim().parse().map_err(|_| err())?;
            if q.is_zero() {
                return Err(err());
            }
            Ok(Rational::new(p, q))
        }
        None => s.parse::<BigInt>().map(Rational::from_integer).map_err(|_| err()),
    }
}

/// `n!` as a big integer.
pub fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::from(1), |acc, k| acc * k)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rationals_are_reduced() {
        let a = parse_rational("6/-4").unwrap();
        assert_eq!(a.to_string(), "-3/2");
        assert_eq!(parse_rational("10/5").unwrap().to_string(), "2");
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
        let b = frac(7, 3);
        assert_eq!(&(&a + &b) - &b, a);
    }

    #[test]
    fn factorials() {
        assert_eq!(factorial(0), BigInt::from(1));
        assert_eq!(factorial(5), BigInt::from(120));
    }
}
