//! Conversion between the monomial basis `y^n` and the falling-factorial
//! basis `(y)_k = y(y-1)...(y-k+1)`.

use num_traits::Zero;

use super::{Poly, Rational};
use crate::combinat;

/// A polynomial in the falling-factorial basis: `coeffs[k]` multiplies
/// `(y)_k`. Trailing zeros are stripped just like [`Poly`].
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct FactPoly {
    coeffs: Vec<Rational>,
}

impl FactPoly {
    pub fn from_coeffs(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        FactPoly { coeffs }
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Rational> {
        self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }
}

/// `y^n = sum_k S(n,k) (y)_k`, applied coefficient-wise.
pub fn to_falling(p: &Poly) -> FactPoly {
    let mut out = vec![Rational::zero(); p.coeffs().len()];
    for (n, c) in p.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        for (k, slot) in out.iter_mut().enumerate().take(n + 1) {
            let s = combinat::stirling2(n, k);
            if !s.is_zero() {
                *slot += c * Rational::from_integer(s);
            }
        }
    }
    FactPoly::from_coeffs(out)
}

/// `(y)_k = sum_i s(k,i) y^i` with signed Stirling numbers of the first kind.
pub fn from_falling(fp: &FactPoly) -> Poly {
    let mut out = vec![Rational::zero(); fp.coeffs.len()];
    for (k, c) in fp.coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        for (i, slot) in out.iter_mut().enumerate().take(k + 1) {
            let s = combinat::stirling1_signed(k, i);
            if !s.is_zero() {
                *slot += c * Rational::from_integer(s);
            }
        }
    }
    Poly::from_coeffs(out)
}
