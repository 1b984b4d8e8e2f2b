//! Dense univariate polynomials over the rationals.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{parse_rational, PolyParseError, Rational};

/// A dense polynomial; `coeffs[i]` is the coefficient of `x^i`.
///
/// The coefficient vector never carries trailing zeros, so the zero
/// polynomial is the empty vector and equality is structural.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Poly {
    coeffs: Vec<Rational>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(Rational::one())
    }

    /// The identity polynomial `x`.
    pub fn x() -> Self {
        Poly::monomial(Rational::one(), 1)
    }

    pub fn constant(c: Rational) -> Self {
        Poly::from_coeffs(vec![c])
    }

    /// `c * x^k`
    pub fn monomial(c: Rational, k: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); k + 1];
        coeffs[k] = c;
        Poly::from_coeffs(coeffs)
    }

    /// `x^k`
    pub fn x_pow(k: usize) -> Self {
        Poly::monomial(Rational::one(), k)
    }

    pub fn from_coeffs(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Poly::from_coeffs(coeffs.iter().map(|&c| Rational::from_integer(c.into())).collect())
    }

    pub fn from_bigints<I: IntoIterator<Item = BigInt>>(coeffs: I) -> Self {
        Poly::from_coeffs(coeffs.into_iter().map(Rational::from_integer).collect())
    }

    /// Falling factorial `(x)_n = x(x-1)...(x-n+1)`, with `(x)_0 = 1`.
    pub fn falling_factorial(n: usize) -> Self {
        (0..n).fold(Poly::one(), |acc, i| {
            &acc * &Poly::from_coeffs(vec![-Rational::from_integer(i.into()), Rational::one()])
        })
    }

    /// Rising factorial `<x>_n = x(x+1)...(x+n-1)`, with `<x>_0 = 1`.
    pub fn rising_factorial(n: usize) -> Self {
        (0..n).fold(Poly::one(), |acc, i| {
            &acc * &Poly::from_coeffs(vec![Rational::from_integer(i.into()), Rational::one()])
        })
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Rational> {
        self.coeffs
    }

    /// Coefficient of `x^i`; zero past the degree.
    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    /// `None` stands for the degree of the zero polynomial (minus infinity).
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading_coeff(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    /// Lowest power of `x` with a nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// `x^k * self`
    pub fn mul_x_pow(&self, k: usize) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![Rational::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Poly { coeffs }
    }

    /// Exact division by `x^k`; `None` when a nonzero coefficient below `x^k`
    /// would be discarded.
    pub fn div_x_pow(&self, k: usize) -> Option<Poly> {
        if self.coeffs.iter().take(k).any(|c| !c.is_zero()) {
            return None;
        }
        Some(Poly::from_coeffs(self.coeffs.iter().skip(k).cloned().collect()))
    }

    /// `q(y) = p(y + r)`, by Horner's rule on `(y + r)`.
    pub fn shift(&self, r: &Rational) -> Poly {
        if r.is_zero() {
            return self.clone();
        }
        let linear = Poly::from_coeffs(vec![r.clone(), Rational::one()]);
        self.coeffs.iter().rev().fold(Poly::zero(), |acc, c| {
            &(&acc * &linear) + &Poly::constant(c.clone())
        })
    }

    pub fn derivative(&self) -> Poly {
        Poly::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Rational::from_integer(i.into()))
                .collect(),
        )
    }

    pub fn pow(&self, k: usize) -> Poly {
        (0..k).fold(Poly::one(), |acc, _| &acc * self)
    }

    /// Euclidean division; `None` when the divisor is zero.
    pub fn div_rem(&self, divisor: &Poly) -> Option<(Poly, Poly)> {
        let d = divisor.degree()?;
        let lead = divisor.leading_coeff()?.clone();
        let mut rem = self.coeffs.clone();
        if rem.len() <= d {
            return Some((Poly::zero(), self.clone()));
        }
        let mut quot = vec![Rational::zero(); rem.len() - d];
        for i in (0..quot.len()).rev() {
            let c = &rem[i + d] / &lead;
            if c.is_zero() {
                continue;
            }
            for (j, dc) in divisor.coeffs.iter().enumerate() {
                rem[i + j] -= &c * dc;
            }
            quot[i] = c;
        }
        rem.truncate(d);
        Some((Poly::from_coeffs(quot), Poly::from_coeffs(rem)))
    }

    /// Exact quotient, or `None` if the division leaves a remainder.
    pub fn div_exact(&self, divisor: &Poly) -> Option<Poly> {
        let (q, r) = self.div_rem(divisor)?;
        r.is_zero().then_some(q)
    }

    /// Scaled to leading coefficient one. The zero polynomial stays zero.
    pub fn monic(&self) -> Poly {
        match self.leading_coeff() {
            Some(lead) => self.scale(&lead.recip()),
            None => Poly::zero(),
        }
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(a: &Poly, b: &Poly) -> Poly {
        let (mut a, mut b) = (a.clone(), b.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b).expect("divisor is nonzero");
            a = b;
            b = r.monic();
        }
        a.monic()
    }

    /// Divides by a positive rational so that the coefficients become
    /// coprime integers. The signs of all coefficients are preserved.
    pub fn primitive_part(&self) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let denom_lcm = self
            .coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| (c * Rational::from_integer(denom_lcm.clone())).to_integer())
            .collect();
        let g = ints
            .iter()
            .fold(BigInt::zero(), |acc, c| acc.gcd(c));
        Poly::from_bigints(ints.into_iter().map(|c| c / &g))
    }

    /// Coefficients as reduced `"p/q"` / integer strings, lowest degree first.
    pub fn to_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(ToString::to_string).collect()
    }

    pub fn from_strings<S: AsRef<str>>(items: &[S]) -> Result<Poly, PolyParseError> {
        items
            .iter()
            .map(|s| parse_rational(s.as_ref()))
            .collect::<Result<Vec<_>, _>>()
            .map(Poly::from_coeffs)
    }

    /// Parses the JSON text format: an array of coefficient strings, lowest
    /// degree first. An object carrying the array under `"value"` is also
    /// accepted so that richer outputs can be piped back in.
    pub fn from_json(text: &str) -> Result<Poly, PolyParseError> {
        let value: serde_json::Value =
            serde_json::from_str(text).map_err(|e| PolyParseError::Json(e.to_string()))?;
        Poly::from_json_value(&value)
    }

    pub fn from_json_value(value: &serde_json::Value) -> Result<Poly, PolyParseError> {
        use serde_json::Value;
        match value {
            Value::Array(items) => {
                let strings = items
                    .iter()
                    .map(|item| match item {
                        Value::String(s) => Ok(s.clone()),
                        Value::Number(n) if n.is_i64() || n.is_u64() => Ok(n.to_string()),
                        other => Err(PolyParseError::Coefficient(other.to_string())),
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                Poly::from_strings(&strings)
            }
            Value::Object(map) => match map.get("value") {
                Some(inner) => Poly::from_json_value(inner),
                None => Err(PolyParseError::Json("object without \"value\" field".into())),
            },
            other => Err(PolyParseError::Json(format!("expected an array, got {other}"))),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("string arrays always serialize")
    }
}

impl Serialize for Poly {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.to_strings().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Poly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let items = Vec::<String>::deserialize(deserializer)?;
        Poly::from_strings(&items).map_err(D::Error::custom)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let (sign, abs) = if c.is_negative() { ("-", -c) } else { ("+", c.clone()) };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let show_coeff = i == 0 || !abs.is_one();
            if show_coeff {
                write!(f, "{abs}")?;
            }
            match i {
                0 => {}
                1 => write!(f, "x")?,
                _ => write!(f, "x^{i}")?,
            }
        }
        Ok(())
    }
}

impl Add for &Poly {
    type Output = Poly;

    fn add(self, rhs: &Poly) -> Poly {
        let (long, short) = if self.coeffs.len() >= rhs.coeffs.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut coeffs = long.coeffs.clone();
        for (c, s) in coeffs.iter_mut().zip(&short.coeffs) {
            *c += s;
        }
        Poly::from_coeffs(coeffs)
    }
}

impl Neg for &Poly {
    type Output = Poly;

    fn neg(self) -> Poly {
        Poly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Sub for &Poly {
    type Output = Poly;

    fn sub(self, rhs: &Poly) -> Poly {
        self + &(-rhs)
    }
}

impl Mul for &Poly {
    type Output = Poly;

    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        Poly::from_coeffs(coeffs)
    }
}

macro_rules! forward_owned {
    ($($tr:ident :: $m:ident),*) => {$(
        impl $tr for Poly {
            type Output = Poly;
            fn $m(self, rhs: Poly) -> Poly {
                (&self).$m(&rhs)
            }
        }
    )*};
}

forward_owned!(Add::add, Sub::sub, Mul::mul);

impl Neg for Poly {
    type Output = Poly;

    fn neg(self) -> Poly {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> Poly {
        Poly::from_ints(c)
    }

    #[test]
    fn add_cancellation_renormalizes() {
        assert_eq!(&p(&[1, 0, 1]) + &p(&[0, 0, -1]), p(&[1]));
        assert_eq!(&Poly::zero() + &p(&[3, 4]), p(&[3, 4]));
        assert_eq!(&p(&[1, 1]) + &p(&[-1, 1]), p(&[0, 2]));
        assert_eq!((&p(&[0, 1]) + &p(&[0, -1])).degree(), None);
    }

    #[test]
    fn mul_examples() {
        assert_eq!(&p(&[0, 1]) * &p(&[-1, 1]), p(&[0, -1, 1]));
        assert!((&p(&[2, 3, 4]) * &Poly::zero()).is_zero());
        assert_eq!(p(&[1, 1]).pow(2), p(&[1, 2, 1]));
        assert_eq!((&p(&[1, 2, 3]) * &p(&[5, 0, 7, 1])).degree(), Some(5));
    }

    #[test]
    fn shift_examples() {
        assert_eq!(p(&[0, 0, 1]).shift(&Rational::from_integer(1.into())), p(&[1, 2, 1]));
        let q = p(&[3, -2, 7]);
        assert_eq!(q.shift(&Rational::zero()), q);
        // (y)_2 shifted by 2 is (y+2)(y+1)
        let hand = &p(&[2, 1]) * &p(&[1, 1]);
        assert_eq!(hand, p(&[2, 3, 1]));
        assert_eq!(Poly::falling_factorial(2).shift(&Rational::from_integer(2.into())), hand);
    }

    #[test]
    fn derivative_examples() {
        assert_eq!(p(&[0, 0, 0, 1]).derivative(), p(&[0, 0, 3]));
        assert!(p(&[7]).derivative().is_zero());
        assert_eq!(p(&[0, 1, 1]).derivative(), p(&[1, 2]));
    }

    #[test]
    fn falling_and_rising() {
        assert_eq!(Poly::falling_factorial(0), Poly::one());
        assert_eq!(Poly::falling_factorial(3), p(&[0, 2, -3, 1]));
        assert_eq!(Poly::rising_factorial(3), p(&[0, 2, 3, 1]));
    }

    #[test]
    fn division_and_gcd() {
        let a = &p(&[-1, 1]).pow(2) * &p(&[2, 1]);
        let (q, r) = a.div_rem(&p(&[-1, 1])).unwrap();
        assert!(r.is_zero());
        assert_eq!(q, &p(&[-1, 1]) * &p(&[2, 1]));
        assert_eq!(Poly::gcd(&a, &a.derivative()), p(&[-1, 1]));
        assert!(p(&[1, 2]).div_rem(&Poly::zero()).is_none());
        assert_eq!(p(&[0, 0, 3, 1]).div_x_pow(2), Some(p(&[3, 1])));
        assert_eq!(p(&[0, 1, 3]).div_x_pow(2), None);
    }

    #[test]
    fn primitive_part_keeps_signs() {
        let q = Poly::from_strings(&["-1/2", "3/4", "0", "-3/2"]).unwrap();
        assert_eq!(q.primitive_part(), p(&[-2, 3, 0, -6]));
    }

    #[test]
    fn json_format() {
        let q = Poly::from_json(r#"["0","1","1"]"#).unwrap();
        assert_eq!(q, p(&[0, 1, 1]));
        assert_eq!(q.to_json(), r#"["0","1","1"]"#);
        let r = Poly::from_json(r#"["6/4","-2", "0"]"#).unwrap();
        assert_eq!(r.to_strings(), vec!["3/2", "-2"]);
        assert_eq!(Poly::from_json(r#"{"value":["1"]}"#).unwrap(), Poly::one());
        assert!(Poly::from_json(r#"["1/0"]"#).is_err());
        assert!(Poly::from_json(r#"["abc"]"#).is_err());
        assert_eq!(Poly::zero().to_json(), "[]");
    }

    #[test]
    fn display() {
        assert_eq!(p(&[1, -2, 0, 1]).to_string(), "x^3 - 2x + 1");
        assert_eq!(Poly::zero().to_string(), "0");
    }
}
