//! Power series in `t` with polynomial-in-`x` coefficients, truncated at a
//! fixed order and stored in the exponential convention: slot `n` holds the
//! coefficient of `t^n / n!`.

use thiserror::Error;

use super::{Poly, Rational};
use crate::combinat;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("series orders differ ({left} vs {right})")]
    OrderMismatch { left: usize, right: usize },
    #[error("exponential needs a series with zero constant term")]
    NonzeroConstant,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncSeries {
    order: usize,
    coeffs: Vec<Poly>,
}

impl TruncSeries {
    /// Builds a series of the given order; missing slots are zero and slots
    /// past `order` are dropped.
    pub fn new(order: usize, mut coeffs: Vec<Poly>) -> Self {
        coeffs.resize(order + 1, Poly::zero());
        TruncSeries { order, coeffs }
    }

    pub fn zero(order: usize) -> Self {
        TruncSeries::new(order, Vec::new())
    }

    /// The multiplicative identity `1 + 0 t + ...`.
    pub fn one(order: usize) -> Self {
        TruncSeries::new(order, vec![Poly::one()])
    }

    /// Series whose `n`-th EGF coefficient is the constant `f(n)`.
    pub fn from_fn(order: usize, f: impl Fn(usize) -> Rational) -> Self {
        TruncSeries::new(order, (0..=order).map(|n| Poly::constant(f(n))).collect())
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn coeffs(&self) -> &[Poly] {
        &self.coeffs
    }

    pub fn coeff(&self, n: usize) -> &Poly {
        &self.coeffs[n]
    }

    pub fn into_coeffs(self) -> Vec<Poly> {
        self.coeffs
    }

    fn check_order(&self, other: &TruncSeries) -> Result<(), SeriesError> {
        if self.order != other.order {
            return Err(SeriesError::OrderMismatch {
                left: self.order,
                right: other.order,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &TruncSeries) -> Result<TruncSeries, SeriesError> {
        self.check_order(other)?;
        Ok(TruncSeries {
            order: self.order,
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn sub(&self, other: &TruncSeries) -> Result<TruncSeries, SeriesError> {
        self.check_order(other)?;
        Ok(TruncSeries {
            order: self.order,
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect(),
        })
    }

    /// Multiplies every coefficient by a polynomial in `x`.
    pub fn scale(&self, p: &Poly) -> TruncSeries {
        TruncSeries {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| c * p).collect(),
        }
    }

    /// Binomial convolution: slot `n` of the product is
    /// `sum_k C(n,k) a_k b_{n-k}`.
    pub fn mul(&self, other: &TruncSeries) -> Result<TruncSeries, SeriesError> {
        self.check_order(other)?;
        let coeffs = (0..=self.order)
            .map(|n| {
                (0..=n).fold(Poly::zero(), |acc, k| {
                    let (a, b) = (&self.coeffs[k], &other.coeffs[n - k]);
                    if a.is_zero() || b.is_zero() {
                        return acc;
                    }
                    let c = Rational::from_integer(combinat::binomial(n, k));
                    &acc + &(a * b).scale(&c)
                })
            })
            .collect();
        Ok(TruncSeries {
            order: self.order,
            coeffs,
        })
    }

    /// `k`-fold product; `pow(0)` is the identity series.
    pub fn pow(&self, k: usize) -> TruncSeries {
        let mut result = TruncSeries::one(self.order);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = result.mul(&base).expect("same order");
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base).expect("same order");
            }
        }
        result
    }

    /// Exponential via `E' = A' E`, which in EGF slots reads
    /// `e_{n+1} = sum_k C(n,k) a_{k+1} e_{n-k}`.
    pub fn exp(&self) -> Result<TruncSeries, SeriesError> {
        if !self.coeffs[0].is_zero() {
            return Err(SeriesError::NonzeroConstant);
        }
        let mut e: Vec<Poly> = Vec::with_capacity(self.order + 1);
        e.push(Poly::one());
        for n in 0..self.order {
            let next = (0..=n).fold(Poly::zero(), |acc, k| {
                let a = &self.coeffs[k + 1];
                if a.is_zero() {
                    return acc;
                }
                let c = Rational::from_integer(combinat::binomial(n, k));
                &acc + &(a * &e[n - k]).scale(&c)
            });
            e.push(next);
        }
        Ok(TruncSeries {
            order: self.order,
            coeffs: e,
        })
    }

    /// `d/dt`; the result has order one less (order zero stays zero).
    pub fn derivative(&self) -> TruncSeries {
        let order = self.order.saturating_sub(1);
        TruncSeries::new(order, self.coeffs.iter().skip(1).cloned().collect())
    }

    /// Reduces to a smaller order by discarding slots.
    pub fn truncate(&self, order: usize) -> TruncSeries {
        TruncSeries::new(order.min(self.order), self.coeffs.clone())
    }
}
