//! Named instances of the iterated and convolution families.

use num_traits::One;

use super::{f_family, BellpartError, ConvolutionFamily, Seq};
use crate::combinat;
use crate::exactmath::{factorial, Poly, Rational};
use crate::umbra::{bell_poly, lah_poly};

/// Choices of `h` for the iterated family `A_n^{(s)}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IteratedExample {
    /// `a_j = 1`, `h = e^t - 1`.
    Bell,
    /// `a_j = (j-1)!`, `h = -ln(1-t)`; `A^{(0)}` are rising factorials and
    /// `A^{(1)}` Lah polynomials.
    Rising,
}

impl IteratedExample {
    pub const ALL: [IteratedExample; 2] = [IteratedExample::Bell, IteratedExample::Rising];

    pub fn name(self) -> &'static str {
        match self {
            IteratedExample::Bell => "bell",
            IteratedExample::Rising => "rising",
        }
    }

    pub fn h(self, len: usize) -> Seq {
        match self {
            IteratedExample::Bell => Seq::from_fn("exp", len, |_| Rational::one()),
            IteratedExample::Rising => Seq::from_fn("neglog", len, |j| {
                Rational::from_integer(factorial(j - 1))
            }),
        }
    }
}

/// The three convolution families `F h^r exp(x h)` with `F = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConvolutionExample {
    /// `h = e^t - 1`.
    StirlingSecond,
    /// `h = ln(1 + t)`.
    StirlingFirst,
    /// `h = t/(1 - t)`, with the extra `1/r!` in front of the series.
    Lah,
}

impl ConvolutionExample {
    pub const ALL: [ConvolutionExample; 3] = [
        ConvolutionExample::StirlingSecond,
        ConvolutionExample::StirlingFirst,
        ConvolutionExample::Lah,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ConvolutionExample::StirlingSecond => "stirling2",
            ConvolutionExample::StirlingFirst => "stirling1",
            ConvolutionExample::Lah => "lah",
        }
    }

    pub fn h(self, len: usize) -> Seq {
        match self {
            ConvolutionExample::StirlingSecond => Seq::from_fn("exp", len, |_| Rational::one()),
            ConvolutionExample::StirlingFirst => Seq::from_fn("log1p", len, |j| {
                let v = Rational::from_integer(factorial(j - 1));
                if j % 2 == 0 { -v } else { v }
            }),
            ConvolutionExample::Lah => Seq::from_fn("geometric", len, |j| {
                Rational::from_integer(factorial(j))
            }),
        }
    }

    /// Scalar in front of `h^r exp(x h)`.
    pub fn multiplier(self, r: usize) -> Rational {
        match self {
            ConvolutionExample::Lah => Rational::new(1.into(), factorial(r)),
            _ => Rational::one(),
        }
    }

    pub fn family(self, r: usize, n_max: usize) -> Result<ConvolutionFamily, BellpartError> {
        f_family(
            &[Rational::one()],
            &self.h(n_max),
            r,
            n_max,
            &self.multiplier(r),
        )
    }

    /// Summation form obtained by expanding the generating function:
    /// `h^r = r! sum_k B_{k,r}(a) t^k / k!` convolved with `f^{(0)}`, times
    /// the multiplier.
    pub fn derived_closed_form(self, n: usize, r: usize) -> Poly {
        let r_fact = Rational::from_integer(factorial(r));
        let scale = &r_fact * self.multiplier(r);
        (r..=n).fold(Poly::zero(), |acc, k| {
            let inner = match self {
                ConvolutionExample::StirlingSecond => {
                    Rational::from_integer(combinat::stirling2(k, r))
                }
                ConvolutionExample::StirlingFirst => {
                    Rational::from_integer(combinat::stirling1_signed(k, r))
                }
                ConvolutionExample::Lah => Rational::from_integer(combinat::lah(k, r)),
            };
            let c = Rational::from_integer(combinat::binomial(n, k)) * inner * &scale;
            &acc + &self.zeroth(n - k).scale(&c)
        })
    }

    /// The summation as displayed in the literature this family comes from.
    /// It differs from [`Self::derived_closed_form`] for the Stirling-second
    /// family (row index `n` in place of `k`) and the Lah family (extra `r!`
    /// and alternating sign).
    pub fn printed_closed_form(self, n: usize, r: usize) -> Poly {
        let r_fact = Rational::from_integer(factorial(r));
        (r..=n).fold(Poly::zero(), |acc, k| {
            let sign = if (k - r).is_multiple_of(2) { 1 } else { -1 };
            let inner = match self {
                ConvolutionExample::StirlingSecond => {
                    Rational::from_integer(combinat::stirling2(n, k))
                }
                ConvolutionExample::StirlingFirst => {
                    Rational::from_integer(combinat::stirling1_unsigned(k, r) * sign)
                }
                ConvolutionExample::Lah => Rational::from_integer(combinat::lah(k, r) * sign),
            };
            let c = Rational::from_integer(combinat::binomial(n, k)) * inner * &r_fact;
            &acc + &self.zeroth(n - k).scale(&c)
        })
    }

    /// `f_m^{(0)}` from the closed families: Bell, falling factorial, Lah.
    fn zeroth(self, m: usize) -> Poly {
        match self {
            ConvolutionExample::StirlingSecond => bell_poly(m),
            ConvolutionExample::StirlingFirst => Poly::falling_factorial(m),
            ConvolutionExample::Lah => lah_poly(m),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn derived_forms_match_series() {
        for ex in ConvolutionExample::ALL {
            for r in 0..=3 {
                let fam = ex.family(r, 8).unwrap();
                for n in 0..=8 {
                    assert_eq!(fam.polys[n], ex.derived_closed_form(n, r), "{ex:?} n={n} r={r}");
                }
            }
        }
    }

    #[test]
    fn printed_forms() {
        let ex = ConvolutionExample::StirlingFirst;
        for r in 0..=3 {
            for n in 0..=8 {
                assert_eq!(ex.printed_closed_form(n, r), ex.derived_closed_form(n, r));
            }
        }
        // 3x^2 + 6x + 1 against the printed 3x^2 + 12x + 1
        let ex = ConvolutionExample::StirlingSecond;
        assert_eq!(ex.derived_closed_form(3, 1), Poly::from_ints(&[1, 6, 3]));
        assert_eq!(ex.printed_closed_form(3, 1), Poly::from_ints(&[1, 12, 3]));
        assert_eq!(ex.printed_closed_form(2, 1), ex.derived_closed_form(2, 1));
        let ex = ConvolutionExample::Lah;
        assert_ne!(ex.printed_closed_form(3, 2), ex.derived_closed_form(3, 2));
    }
}
