//! Partial Bell and partial r-Bell polynomials through the series engine,
//! the `V_{n,r}` families built from them, and the iterated and convolution
//! families of exponential polynomials.
//!
//! Whenever both a generating function and a summation formula are
//! available, the generating function is computed and the summation is
//! checked against it.

mod examples;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::combinat;
use crate::exactmath::{factorial, from_falling, FactPoly, Poly, Rational, SeriesError, TruncSeries};
use crate::rzcert::certify_rz;
use crate::umbra::umbral_eval;

pub use examples::{ConvolutionExample, IteratedExample};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BellpartError {
    #[error("sequence {label} has {available} entries but {needed} are required")]
    SequenceTooShort {
        label: String,
        needed: usize,
        available: usize,
    },
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error("unknown sequence preset {0:?}")]
    UnknownPreset(String),
}

/// A finite sequence `a_1, a_2, ...`; indexing starts at one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Seq {
    entries: Vec<Rational>,
    name: Option<String>,
}

impl Seq {
    pub fn new(entries: Vec<Rational>) -> Self {
        Seq {
            entries,
            name: None,
        }
    }

    pub fn named(name: impl Into<String>, entries: Vec<Rational>) -> Self {
        Seq {
            entries,
            name: Some(name.into()),
        }
    }

    /// `a_j = f(j)` for `j = 1..=len`.
    pub fn from_fn(name: impl Into<String>, len: usize, f: impl Fn(usize) -> Rational) -> Self {
        Seq::named(name, (1..=len).map(f).collect())
    }

    /// `(1, 1, 1, ...)`
    pub fn ones(len: usize) -> Self {
        Seq::from_fn("ones", len, |_| Rational::one())
    }

    /// `(1!, 2!, 3!, ...)`
    pub fn factorials(len: usize) -> Self {
        Seq::from_fn("factorials", len, |j| Rational::from_integer(factorial(j)))
    }

    /// Parses a preset name: `ones`, `factorials` or `shift:m` (`L^m` applied
    /// to `ones`). The result has exactly `len` entries.
    pub fn preset(name: &str, len: usize) -> Result<Seq, BellpartError> {
        match name.split_once(':') {
            None if name == "ones" => Ok(Seq::ones(len)),
            None if name == "factorials" => Ok(Seq::factorials(len)),
            Some(("shift", m)) => {
                let m: usize = m
                    .parse()
                    .map_err(|_| BellpartError::UnknownPreset(name.to_string()))?;
                let mut s = shift_seq(&Seq::ones(len.saturating_sub(m)), m);
                s.entries.truncate(len);
                s.entries.resize(len, Rational::zero());
                s.name = Some(name.to_string());
                Ok(s)
            }
            _ => Err(BellpartError::UnknownPreset(name.to_string())),
        }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[Rational] {
        &self.entries
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    /// `a_j`, one-based; zero past the stored entries.
    pub fn get(&self, j: usize) -> Rational {
        assert!(j >= 1, "sequences are indexed from 1");
        self.entries.get(j - 1).cloned().unwrap_or_else(Rational::zero)
    }

    fn label(&self) -> String {
        self.name.clone().unwrap_or_else(|| "a".to_string())
    }

    fn require(&self, needed: usize) -> Result<(), BellpartError> {
        if self.entries.len() < needed {
            return Err(BellpartError::SequenceTooShort {
                label: self.label(),
                needed,
                available: self.entries.len(),
            });
        }
        Ok(())
    }

    /// `sum_{j>=1} a_j t^j / j!` truncated at `order`.
    pub fn egf(&self, order: usize) -> TruncSeries {
        TruncSeries::from_fn(order, |j| if j == 0 { Rational::zero() } else { self.get(j) })
    }

    /// `sum_{j>=0} a_{j+1} t^j / j!` truncated at `order`.
    pub fn shifted_egf(&self, order: usize) -> TruncSeries {
        TruncSeries::from_fn(order, |j| self.get(j + 1))
    }
}

/// Parameters of `B^{(r)}_{n+r,k+r}(a; b)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RBellSpec {
    pub a: Seq,
    pub b: Seq,
    pub r: usize,
}

impl RBellSpec {
    /// The linked pair `b = e + L a`.
    pub fn linked(a: Seq, r: usize) -> Self {
        let b = e_plus(&a);
        RBellSpec { a, b, r }
    }
}

/// `L^m a`: prepends `m` zeros.
pub fn shift_seq(a: &Seq, m: usize) -> Seq {
    let mut entries = vec![Rational::zero(); m];
    entries.extend(a.entries.iter().cloned());
    Seq {
        entries,
        name: a.name.as_ref().map(|n| format!("L^{m}({n})")),
    }
}

/// `e + L a = (1, a_1, a_2, ...)`.
pub fn e_plus(a: &Seq) -> Seq {
    let mut s = shift_seq(a, 1);
    s.entries[0] = Rational::one();
    s.name = a.name.as_ref().map(|n| format!("e+L({n})"));
    s
}

/// `B_{n,k}(a) = n! [t^n] (sum_j a_j t^j/j!)^k / k!`.
pub fn partial_bell(n: usize, k: usize, a: &Seq) -> Result<Rational, BellpartError> {
    if k > n {
        return Ok(Rational::zero());
    }
    if k == 0 {
        return Ok(if n == 0 { Rational::one() } else { Rational::zero() });
    }
    a.require(n - k + 1)?;
    let power = a.egf(n).pow(k);
    Ok(power.coeff(n).coeff(0) / Rational::from_integer(factorial(k)))
}

/// `B^{(r)}_{n+r,k+r}(a; b)`: `n! [t^n]` of
/// `(1/k!) (sum_j a_j t^j/j!)^k (sum_j b_{j+1} t^j/j!)^r`.
pub fn partial_r_bell(n: usize, k: usize, spec: &RBellSpec) -> Result<Rational, BellpartError> {
    if k > n {
        return Ok(Rational::zero());
    }
    if k > 0 {
        spec.a.require(n - k + 1)?;
    }
    if spec.r > 0 {
        spec.b.require(n - k + 1)?;
    }
    let phi_k = spec.a.egf(n).pow(k);
    let b_r = spec.b.shifted_egf(n).pow(spec.r);
    let product = phi_k.mul(&b_r)?;
    Ok(product.coeff(n).coeff(0) / Rational::from_integer(factorial(k)))
}

/// `V_{n,r}(x) = sum_k B^{(r)}_{n+r,k+r}(a; e + L a) x^k`, read off
/// `(1 + phi)^r phi^k / k!`.
pub fn v_poly(n: usize, r: usize, a: &Seq) -> Result<Poly, BellpartError> {
    a.require(n)?;
    let phi = a.egf(n);
    let one_plus_phi = e_plus(a).shifted_egf(n);
    let mut term = one_plus_phi.pow(r);
    let mut coeffs = Vec::with_capacity(n + 1);
    for k in 0..=n {
        if k > 0 {
            term = term.mul(&phi)?;
        }
        coeffs.push(term.coeff(n).coeff(0) / Rational::from_integer(factorial(k)));
    }
    Ok(Poly::from_coeffs(coeffs))
}

/// `f_n(B_x + r)` with `f_n(y) = sum_k B_{n,k}(a) (y)_k`.
pub fn v_poly_umbral(n: usize, r: usize, a: &Seq) -> Result<Poly, BellpartError> {
    let falling = (0..=n)
        .map(|k| partial_bell(n, k, a))
        .collect::<Result<Vec<_>, _>>()?;
    let f_n = from_falling(&FactPoly::from_coeffs(falling));
    Ok(umbral_eval(&f_n.shift(&Rational::from_integer(r.into()))))
}

/// `sum_k {n k}^(m) x^k`: 2-associated (m = 2) and 3-associated (m = 3)
/// Bell polynomials; any `m >= 1` is accepted.
pub fn assoc_bell_poly(m: usize, n: usize) -> Poly {
    Poly::from_bigints((0..=n).map(|k| combinat::assoc_stirling2(m, n, k)))
}

/// `A_n^{(0)}` for `n <= n_max`, from `exp(x h(t))`.
fn exp_family(h: &Seq, n_max: usize) -> Result<Vec<Poly>, BellpartError> {
    h.require(n_max)?;
    Ok(h.egf(n_max).scale(&Poly::x()).exp()?.into_coeffs())
}

/// `A_n^{(s)}(x)` for `n = 0..=n_max`: `A^{(0)}` from `exp(x h(t))`, then
/// `A^{(s)}_n = A^{(s-1)}_n(B_x)`.
///
/// Each umbral step is checked against the generating function
/// `exp(x sum_j A_j^{(s-1)}(1) t^j / j!)`; a mismatch is reported as an
/// inconsistency.
pub fn iterated_family(h: &Seq, s: usize, n_max: usize) -> Result<Vec<Poly>, BellpartError> {
    let mut family = exp_family(h, n_max)?;
    for step in 1..=s {
        let next: Vec<Poly> = family.iter().map(umbral_eval).collect();
        let by_egf = egf_step(&family, n_max)?;
        if let Some(n) = (0..=n_max).find(|&n| next[n] != by_egf[n]) {
            return Err(BellpartError::Inconsistent(format!(
                "iterated family step {step}: umbral and generating-function routes differ at n={n}"
            )));
        }
        family = next;
    }
    Ok(family)
}

/// `exp(x sum_{j>=1} prev_j(1) t^j / j!)`.
fn egf_step(prev: &[Poly], n_max: usize) -> Result<Vec<Poly>, BellpartError> {
    let one = Rational::one();
    let g = TruncSeries::from_fn(n_max, |j| {
        if j == 0 { Rational::zero() } else { prev[j].eval(&one) }
    });
    Ok(g.scale(&Poly::x()).exp()?.into_coeffs())
}

/// The same family computed only with generating functions, never calling
/// the umbral evaluation.
pub fn iterated_family_by_egf(h: &Seq, s: usize, n_max: usize) -> Result<Vec<Poly>, BellpartError> {
    let mut family = exp_family(h, n_max)?;
    for _ in 0..s {
        family = egf_step(&family, n_max)?;
    }
    Ok(family)
}

/// Result of the `F(t) h(t)^r exp(x h(t))` construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConvolutionFamily {
    /// `multiplier * f_n^{(r)}` for `n = 0..=n_max`.
    pub polys: Vec<Poly>,
    /// The family without the multiplier; it satisfies the derivative
    /// identity `f^{(r)} = d/dx f^{(r-1)}`.
    pub unscaled: Vec<Poly>,
}

/// Coefficients of `F(t) h(t)^r exp(x h(t))` for `n <= n_max`, where `F`
/// is given by its EGF coefficients `F_0, F_1, ...` (missing ones are zero)
/// and `h = sum_j a_j t^j / j!`.
///
/// Checks, for `r >= 1`, that `f_n^{(r)} = d/dx f_n^{(r-1)}` and that
/// `f_n^{(r)} = r! sum_{k=r}^n C(n,k) B_{k,r}(a) f_{n-k}^{(0)}`.
pub fn f_family(
    f_coeffs: &[Rational],
    h: &Seq,
    r: usize,
    n_max: usize,
    multiplier: &Rational,
) -> Result<ConvolutionFamily, BellpartError> {
    h.require(n_max)?;
    let base = |r: usize| -> Result<Vec<Poly>, BellpartError> {
        let f_series = TruncSeries::from_fn(n_max, |n| {
            f_coeffs.get(n).cloned().unwrap_or_else(Rational::zero)
        });
        let hx = h.egf(n_max);
        let series = f_series.mul(&hx.pow(r))?.mul(&hx.scale(&Poly::x()).exp()?)?;
        Ok(series.into_coeffs())
    };
    let unscaled = base(r)?;
    if r >= 1 {
        let prev = base(r - 1)?;
        if let Some(n) = (0..=n_max).find(|&n| unscaled[n] != prev[n].derivative()) {
            return Err(BellpartError::Inconsistent(format!(
                "derivative identity fails at n={n}, r={r}"
            )));
        }
        let zeroth = base(0)?;
        let r_fact = Rational::from_integer(factorial(r));
        for n in 0..=n_max {
            let mut sum = Poly::zero();
            for k in r..=n {
                let c = Rational::from_integer(combinat::binomial(n, k)) * partial_bell(k, r, h)?;
                sum = &sum + &zeroth[n - k].scale(&c);
            }
            if sum.scale(&r_fact) != unscaled[n] {
                return Err(BellpartError::Inconsistent(format!(
                    "convolution closed form fails at n={n}, r={r}"
                )));
            }
        }
    }
    let polys = unscaled.iter().map(|p| p.scale(multiplier)).collect();
    Ok(ConvolutionFamily { polys, unscaled })
}

/// Outcome of the conditional statement "`V^{(s)}_{n,0}` all-real implies
/// `V^{(s)}_{n,r}` all-real".
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RemarkOutcome {
    /// The premise failed, so nothing is asserted.
    Vacuous,
    Holds,
    Violated,
}

/// `a_s = (A_1^{(s)}(1), A_2^{(s)}(1), ...)`, with `n_max` entries.
pub fn iterated_values_at_one(h: &Seq, s: usize, n_max: usize) -> Result<Seq, BellpartError> {
    let family = iterated_family(h, s, n_max)?;
    let one = Rational::one();
    Ok(Seq::named(
        format!("a_{s}"),
        family.iter().skip(1).map(|p| p.eval(&one)).collect(),
    ))
}

/// Certifies `V^{(s)}_{n,0}` first and only then `V^{(s)}_{n,r}`.
pub fn remark_check(h: &Seq, s: usize, n: usize, r: usize) -> Result<RemarkOutcome, BellpartError> {
    let a_s = iterated_values_at_one(h, s, n.max(1))?;
    let premise = v_poly(n, 0, &a_s)?;
    if !certify_rz(&premise).map(|c| c.all_real).unwrap_or(false) {
        return Ok(RemarkOutcome::Vacuous);
    }
    let target = v_poly(n, r, &a_s)?;
    Ok(match certify_rz(&target) {
        Ok(c) if c.all_real => RemarkOutcome::Holds,
        _ => RemarkOutcome::Violated,
    })
}
