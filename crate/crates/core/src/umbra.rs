//! The Bell umbra as an operator on polynomials.
//!
//! Umbral evaluation `U[f]` writes `f(y)` in the falling-factorial basis and
//! replaces each `(y)_k` by `x^k`. On top of it sit the falling-factorial
//! operator `T_r f = x^r U[f(y + r)]` (the action of multiplying by `(y)_r`
//! before evaluating), chains of such operators, and the classical Bell,
//! r-Bell and Lah polynomial families.

use num_traits::{ToPrimitive, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::combinat;
use crate::exactmath::{int, to_falling, Poly, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum UmbraError {
    #[error("internal inconsistency: chain result for n={n}, rs={rs:?} is not divisible by x^{max}")]
    NotDivisible { n: usize, rs: Vec<usize>, max: usize },
}

/// The value of an operator chain together with what produced it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct UmbralResult {
    pub value: Poly,
    pub source: Poly,
    pub chain: Vec<usize>,
}

impl UmbralResult {
    pub fn evaluate(source: &Poly, chain: &[usize]) -> Self {
        UmbralResult {
            value: apply_falling_chain(source, chain),
            source: source.clone(),
            chain: chain.to_vec(),
        }
    }
}

/// `U[f]`: expand in falling factorials, send `(y)_k` to `x^k`.
pub fn umbral_eval(f: &Poly) -> Poly {
    Poly::from_coeffs(to_falling(f).into_coeffs())
}

/// `B_n(x) = sum_k S(n,k) x^k`.
pub fn bell_poly(n: usize) -> Poly {
    Poly::from_bigints((0..=n).map(|k| combinat::stirling2(n, k)))
}

/// `B_{n,r}(x) = U[(y + r)^n]`.
pub fn r_bell_poly(n: usize, r: usize) -> Poly {
    umbral_eval(&Poly::x_pow(n).shift(&int(r as i64)))
}

/// `L_n(x) = U[(y + n - 1)_n]`; the argument is the rising factorial `<y>_n`.
pub fn lah_poly(n: usize) -> Poly {
    umbral_eval(&Poly::rising_factorial(n))
}

/// `T_r f = x^r U[f(y + r)]`, i.e. `(B_x)_r f(B_x)`.
pub fn apply_falling_op(f: &Poly, r: usize) -> Poly {
    umbral_eval(&f.shift(&int(r as i64))).mul_x_pow(r)
}

/// Second route to `(B_x)_r f(B_x)`: multiply by `(y)_r` first, then evaluate.
pub fn apply_falling_op_direct(f: &Poly, r: usize) -> Poly {
    umbral_eval(&(&Poly::falling_factorial(r) * f))
}

/// `(B_x)_{r_p} ... (B_x)_{r_1} f(B_x)`.
///
/// The operators compose as multiplication by `(y)_{r_i}` inside a single
/// umbral evaluation. All but the last factor are accumulated on the `y`
/// side and the last one is applied through the shift identity, so the
/// result is independent of the order of `rs`. An empty chain is `U[f]`.
pub fn apply_falling_chain(f: &Poly, rs: &[usize]) -> Poly {
    match rs.split_last() {
        None => umbral_eval(f),
        Some((&last, init)) => {
            let inner = init
                .iter()
                .fold(f.clone(), |acc, &r| &Poly::falling_factorial(r) * &acc);
            apply_falling_op(&inner, last)
        }
    }
}

/// The literal re-interpretation fold: `g_1 = T_{r_1} f`, then `g_1` is read
/// back as a polynomial in `y` and `g_2 = T_{r_2} g_1`, and so on.
///
/// This is not the operator composition computed by
/// [`apply_falling_chain`]: it depends on the order of `rs` and its result
/// need not be divisible by `x^max(rs)`. It is kept so that the difference
/// stays observable.
pub fn apply_falling_fold_reinterpreted(f: &Poly, rs: &[usize]) -> Poly {
    match rs.split_first() {
        None => umbral_eval(f),
        Some((&first, rest)) => rest
            .iter()
            .fold(apply_falling_op(f, first), |g, &r| apply_falling_op(&g, r)),
    }
}

/// `B_{n; r_1..r_p}(x)`: the chain applied to `y^n`, divided by `x^max(rs)`.
pub fn multi_r_bell(n: usize, rs: &[usize]) -> Result<Poly, UmbraError> {
    let max = rs.iter().copied().max().unwrap_or(0);
    apply_falling_chain(&Poly::x_pow(n), rs)
        .div_x_pow(max)
        .ok_or_else(|| UmbraError::NotDivisible {
            n,
            rs: rs.to_vec(),
            max,
        })
}

/// Truncated Dobinski sum `e^{-x0} sum_{k < terms} f(k) x0^k / k!`.
///
/// The partial sum is accumulated exactly; only the final product with
/// `e^{-x0}` is done in floating point.
pub fn dobinski_oracle(f: &Poly, x0: &Rational, terms: usize) -> f64 {
    let mut weight = Rational::from_integer(1.into());
    let mut sum = Rational::zero();
    for k in 0..terms {
        if k > 0 {
            weight = weight * x0 / int(k as i64);
        }
        let fk = f.eval(&int(k as i64));
        if !fk.is_zero() {
            sum += fk * &weight;
        }
    }
    let x0 = x0.to_f64().expect("finite sample point");
    sum.to_f64().expect("partial sum fits in f64") * (-x0).exp()
}

/// Checks `U[f(y+r)] = U[f(y+r-1)] + d/dx U[f(y+r-1)]` exactly.
pub fn rolle_step_check(f: &Poly, r: usize) -> bool {
    assert!(r >= 1, "the step identity needs r >= 1");
    let prev = umbral_eval(&f.shift(&int(r as i64 - 1)));
    let next = umbral_eval(&f.shift(&int(r as i64)));
    next == &prev + &prev.derivative()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::frac;
    use proptest::prelude::*;

    fn p(c: &[i64]) -> Poly {
        Poly::from_ints(c)
    }

    #[test]
    fn umbral_eval_examples() {
        assert_eq!(umbral_eval(&p(&[0, 0, 1])), p(&[0, 1, 1]));
        for n in 0..8 {
            assert_eq!(umbral_eval(&Poly::falling_factorial(n)), Poly::x_pow(n));
        }
        assert_eq!(umbral_eval(&p(&[-4])), p(&[-4]));
    }

    #[test]
    fn bell_examples() {
        assert_eq!(bell_poly(0), Poly::one());
        assert_eq!(bell_poly(3), p(&[0, 1, 3, 1]));
        assert_eq!(bell_poly(5).eval(&int(1)), int(52));
        for n in 0..12 {
            assert_eq!(bell_poly(n), umbral_eval(&Poly::x_pow(n)));
        }
    }

    #[test]
    fn r_bell_examples() {
        for r in 0..5 {
            assert_eq!(r_bell_poly(1, r), p(&[r as i64, 1]));
        }
        for n in 0..8 {
            assert_eq!(r_bell_poly(n, 0), bell_poly(n));
        }
        assert_eq!(r_bell_poly(2, 1), p(&[1, 3, 1]));
    }

    #[test]
    fn lah_examples() {
        assert_eq!(lah_poly(0), Poly::one());
        assert_eq!(lah_poly(2), p(&[0, 2, 1]));
        assert_eq!(lah_poly(3), p(&[0, 6, 6, 1]));
        for n in 0..10 {
            assert_eq!(lah_poly(n), Poly::from_bigints((0..=n).map(|k| combinat::lah(n, k))));
        }
    }

    /// Closed form for `T_r((y)_n)`.
    fn falling_op_on_falling(n: usize, r: usize) -> Poly {
        let mut acc = Poly::zero();
        for k in 0..=n.min(r) {
            let perm = crate::exactmath::factorial(r) / crate::exactmath::factorial(r - k);
            let c = Rational::from_integer(combinat::binomial(n, k) * perm);
            acc = &acc + &Poly::monomial(c, n - k);
        }
        acc.mul_x_pow(r)
    }

    #[test]
    fn falling_op_examples() {
        for n in 0..7 {
            for r in 0..5 {
                assert_eq!(
                    apply_falling_op(&Poly::falling_factorial(n), r),
                    falling_op_on_falling(n, r)
                );
            }
        }
        let f = p(&[3, -1, 0, 2]);
        assert_eq!(apply_falling_op(&f, 0), umbral_eval(&f));
        // B_x^2 = x (B_x + 1): T_1(y) = x(x + 1)
        assert_eq!(apply_falling_op(&p(&[0, 1]), 1), p(&[0, 1, 1]));
        assert_eq!(apply_falling_op(&p(&[0, 1]), 1), bell_poly(2));
    }

    #[test]
    fn bell_shift_identity() {
        for n in 0..=20 {
            let rhs = umbral_eval(&Poly::x_pow(n).shift(&int(1))).mul_x_pow(1);
            assert_eq!(bell_poly(n + 1), rhs);
        }
    }

    #[test]
    fn chain_examples() {
        let f = p(&[1, 2, 0, -1]);
        assert_eq!(apply_falling_chain(&f, &[]), umbral_eval(&f));
        for n in 0..=8 {
            for rs in [vec![1, 3], vec![2, 4, 1], vec![4], vec![3, 3]] {
                let v = apply_falling_chain(&Poly::x_pow(n), &rs);
                let max = *rs.iter().max().unwrap();
                assert!(v.div_x_pow(max).is_some(), "n={n} rs={rs:?}");
            }
        }
        for n in 0..6 {
            for r in 0..4 {
                assert_eq!(
                    apply_falling_chain(&Poly::falling_factorial(n), &[r]),
                    falling_op_on_falling(n, r)
                );
            }
        }
    }

    #[test]
    fn chain_is_order_independent_but_fold_is_not() {
        let f = Poly::x_pow(3);
        let a = apply_falling_chain(&f, &[1, 2, 3]);
        for rs in [[3, 2, 1], [2, 3, 1], [1, 3, 2]] {
            assert_eq!(apply_falling_chain(&f, &rs), a);
        }
        let fold_a = apply_falling_fold_reinterpreted(&f, &[1, 2]);
        let fold_b = apply_falling_fold_reinterpreted(&f, &[2, 1]);
        assert_ne!(fold_a, fold_b);
        // T_1 read back as a polynomial in y, then T_2: only x^1 survives
        let g = apply_falling_fold_reinterpreted(&p(&[0, 1]), &[2, 1]);
        assert!(g.div_x_pow(2).is_none());
    }

    #[test]
    fn multi_r_bell_examples() {
        for n in 0..8 {
            assert_eq!(multi_r_bell(n, &[0]).unwrap(), bell_poly(n));
            assert_eq!(multi_r_bell(n, &[]).unwrap(), bell_poly(n));
            for r in 0..4 {
                assert_eq!(multi_r_bell(n, &[r]).unwrap(), r_bell_poly(n, r));
            }
        }
        // Independent route: multiply y^2 by (y)_1 (y)_1 = y^2, evaluate, divide by x.
        let direct = umbral_eval(&Poly::x_pow(4)).div_x_pow(1).unwrap();
        assert_eq!(multi_r_bell(2, &[1, 1]).unwrap(), direct);
        assert_eq!(direct, p(&[1, 7, 6, 1]));
    }

    #[test]
    fn dobinski_examples() {
        let v = dobinski_oracle(&Poly::x_pow(5), &int(1), 200);
        assert!((v - 52.0).abs() < 1e-9);
        let v = dobinski_oracle(&Poly::one(), &frac(3, 2), 300);
        assert!((v - 1.0).abs() < 1e-12);
        let v = dobinski_oracle(&Poly::falling_factorial(3), &int(2), 200);
        assert!((v - 8.0).abs() < 1e-9);
    }

    #[test]
    fn rolle_step_examples() {
        assert!(rolle_step_check(&p(&[0, 0, 1]), 1));
        assert!(rolle_step_check(&p(&[7]), 4));
        assert!(rolle_step_check(&p(&[3, -2, 5, 0, 1, -9, 2, 0, 4]), 3));
    }

    #[test]
    fn umbral_result_records_provenance() {
        let res = UmbralResult::evaluate(&Poly::x_pow(2), &[1, 2]);
        assert_eq!(res.chain, vec![1, 2]);
        assert_eq!(res.value, apply_falling_chain(&Poly::x_pow(2), &[1, 2]));
        let json = serde_json::to_value(&res).unwrap();
        assert_eq!(json["source"], serde_json::json!(["0", "0", "1"]));
    }

    fn arb_poly() -> impl Strategy<Value = Poly> {
        prop::collection::vec(-9i64..=9, 0..=9).prop_map(|c| Poly::from_ints(&c))
    }

    proptest! {
        #[test]
        fn two_routes_to_the_falling_operator(f in arb_poly(), r in 0usize..=5) {
            prop_assert_eq!(apply_falling_op(&f, r), apply_falling_op_direct(&f, r));
        }

        #[test]
        fn rolle_step_holds(f in arb_poly(), r in 1usize..=6) {
            prop_assert!(rolle_step_check(&f, r));
        }

        #[test]
        fn umbral_eval_is_linear(f in arb_poly(), g in arb_poly(), c in -5i64..=5) {
            let lhs = umbral_eval(&(&f + &g.scale(&int(c))));
            let rhs = &umbral_eval(&f) + &umbral_eval(&g).scale(&int(c));
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn dobinski_agrees_with_exact_evaluation(f in arb_poly(), which in 0usize..3) {
            let x0 = [frac(1, 2), int(1), int(2)][which].clone();
            let exact = umbral_eval(&f).eval(&x0).to_f64().unwrap();
            let approx = dobinski_oracle(&f, &x0, 300);
            let scale = exact.abs().max(1e-300);
            prop_assert!(exact == approx || (exact - approx).abs() / scale <= 1e-9);
        }
    }
}
