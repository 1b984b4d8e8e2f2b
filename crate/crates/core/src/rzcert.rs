//! Real-rootedness certificates and log-concavity/log-convexity predicates.
//!
//! A polynomial is certified by counting its real roots with multiplicity:
//! Sturm sign variations at `-inf` and `+inf` count the distinct real roots
//! of the square-free part. Repeating the count on `g_1 = gcd(p, p')`, then
//! on `gcd(g_1, g_1')` and so on recovers multiplicities.

use num_traits::Signed;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exactmath::{Poly, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RzError {
    #[error("the zero polynomial has no root structure")]
    ZeroPolynomial,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RzCertificate {
    pub all_real: bool,
    pub degree: usize,
    pub real_root_count_with_multiplicity: usize,
    pub squarefree_part_degree: usize,
    /// Sign variations of the Sturm chain of the square-free part at
    /// `(-inf, +inf)`.
    pub sturm_sign_variations: (usize, usize),
}

/// `p / gcd(p, p')`, made monic.
pub fn squarefree_part(p: &Poly) -> Result<Poly, RzError> {
    if p.is_zero() {
        return Err(RzError::ZeroPolynomial);
    }
    let g = Poly::gcd(p, &p.derivative());
    Ok(p.div_exact(&g).expect("gcd divides p").monic())
}

/// `p_0 = p`, `p_1 = p'`, `p_{i+1} = -rem(p_{i-1}, p_i)` until the remainder
/// vanishes. Each member is rescaled by a positive rational to keep the
/// coefficients small; signs are untouched.
pub fn sturm_chain(p: &Poly) -> Vec<Poly> {
    let mut chain = vec![p.primitive_part()];
    let d = p.derivative();
    if d.is_zero() {
        return chain;
    }
    chain.push(d.primitive_part());
    loop {
        let n = chain.len();
        let (_, rem) = chain[n - 2]
            .div_rem(&chain[n - 1])
            .expect("chain members are nonzero");
        if rem.is_zero() {
            return chain;
        }
        chain.push((-rem).primitive_part());
    }
}

fn sign_variations(signs: impl Iterator<Item = i8>) -> usize {
    let mut count = 0;
    let mut last = 0i8;
    for s in signs.filter(|&s| s != 0) {
        if last != 0 && s != last {
            count += 1;
        }
        last = s;
    }
    count
}

/// Sign variations of a Sturm chain at `-inf` and `+inf`, read off leading
/// coefficients and degree parities.
pub fn variations_at_infinity(chain: &[Poly]) -> (usize, usize) {
    let lead_sign = |q: &Poly| -> i8 {
        match q.leading_coeff() {
            Some(c) if c.is_positive() => 1,
            Some(c) if c.is_negative() => -1,
            _ => 0,
        }
    };
    let at_pos = sign_variations(chain.iter().map(lead_sign));
    let at_neg = sign_variations(chain.iter().map(|q| {
        let s = lead_sign(q);
        if q.degree().unwrap_or(0) % 2 == 1 { -s } else { s }
    }));
    (at_neg, at_pos)
}

/// Number of distinct real roots of `p` (nonzero).
fn distinct_real_roots(p: &Poly) -> (usize, (usize, usize), usize) {
    let sf = squarefree_part(p).expect("nonzero");
    let chain = sturm_chain(&sf);
    let (neg, pos) = variations_at_infinity(&chain);
    (neg - pos, (neg, pos), sf.degree().unwrap_or(0))
}

pub fn certify_rz(p: &Poly) -> Result<RzCertificate, RzError> {
    let degree = p.degree().ok_or(RzError::ZeroPolynomial)?;
    let (top_count, variations, sf_degree) = distinct_real_roots(p);
    let mut total = top_count;
    let mut current = Poly::gcd(p, &p.derivative());
    while current.degree().is_some_and(|d| d > 0) {
        total += distinct_real_roots(&current).0;
        current = Poly::gcd(&current, &current.derivative());
    }
    Ok(RzCertificate {
        all_real: total == degree,
        degree,
        real_root_count_with_multiplicity: total,
        squarefree_part_degree: sf_degree,
        sturm_sign_variations: variations,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SeqProperty {
    LogConcave,
    LogConvex,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeqVerdict {
    pub property: SeqProperty,
    pub holds: bool,
    /// Index (0-based) of the middle entry of the first violating triple, or
    /// of the first non-positive entry when positivity is required.
    pub first_violation_index: Option<usize>,
}

fn check_sequence(a: &[Rational], strict_positivity: bool, property: SeqProperty) -> SeqVerdict {
    let verdict = |index: Option<usize>| SeqVerdict {
        property,
        holds: index.is_none(),
        first_violation_index: index,
    };
    if strict_positivity {
        if let Some(i) = a.iter().position(|v| !v.is_positive()) {
            return verdict(Some(i));
        }
    }
    let bad = (1..a.len().saturating_sub(1)).find(|&i| {
        let square = &a[i] * &a[i];
        let outer = &a[i - 1] * &a[i + 1];
        match property {
            SeqProperty::LogConcave => square < outer,
            SeqProperty::LogConvex => square > outer,
        }
    });
    verdict(bad)
}

/// `a_n^2 >= a_{n-1} a_{n+1}` at every interior index.
pub fn is_log_concave(a: &[Rational], strict_positivity: bool) -> SeqVerdict {
    check_sequence(a, strict_positivity, SeqProperty::LogConcave)
}

/// `a_n^2 <= a_{n-1} a_{n+1}` at every interior index.
pub fn is_log_convex(a: &[Rational], strict_positivity: bool) -> SeqVerdict {
    check_sequence(a, strict_positivity, SeqProperty::LogConvex)
}

/// Newton's inequalities: an all-real polynomial with non-negative
/// coefficients has a log-concave coefficient sequence. Returns `true` when
/// the premise fails.
pub fn newton_consistent(p: &Poly, cert: &RzCertificate) -> bool {
    if !cert.all_real || p.coeffs().iter().any(|c| c.is_negative()) {
        return true;
    }
    is_log_concave(p.coeffs(), false).holds
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::{frac, int};
    use crate::umbra::bell_poly;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn p(c: &[i64]) -> Poly {
        Poly::from_ints(c)
    }

    fn ints(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn squarefree_examples() {
        assert_eq!(squarefree_part(&p(&[1, -2, 1])).unwrap(), p(&[-1, 1]));
        assert_eq!(squarefree_part(&p(&[2, 0, 2])).unwrap(), p(&[1, 0, 1]));
        assert_eq!(squarefree_part(&p(&[0, 0, -1, 1])).unwrap(), p(&[0, -1, 1]));
        assert_eq!(squarefree_part(&Poly::zero()), Err(RzError::ZeroPolynomial));
    }

    #[test]
    fn sturm_chain_examples() {
        assert_eq!(sturm_chain(&p(&[-1, 0, 1])), vec![p(&[-1, 0, 1]), p(&[0, 1]), p(&[1])]);
        assert_eq!(sturm_chain(&p(&[0, 1])), vec![p(&[0, 1]), p(&[1])]);
        assert_eq!(sturm_chain(&p(&[1, 0, 1])), vec![p(&[1, 0, 1]), p(&[0, 1]), p(&[-1])]);
    }

    #[test]
    fn certify_examples() {
        let c = certify_rz(&p(&[0, 1, 1])).unwrap();
        assert!(c.all_real);
        assert_eq!(c.real_root_count_with_multiplicity, 2);
        let c = certify_rz(&p(&[1, 0, 1])).unwrap();
        assert!(!c.all_real);
        assert_eq!(c.real_root_count_with_multiplicity, 0);
        assert_eq!(c.sturm_sign_variations, (1, 1));
        assert!(certify_rz(&bell_poly(6)).unwrap().all_real);
        assert!(certify_rz(&p(&[5])).unwrap().all_real);
        assert_eq!(certify_rz(&Poly::zero()), Err(RzError::ZeroPolynomial));
    }

    #[test]
    fn multiplicities_are_restored() {
        // (x-1)^3 (x+2)^2 x
        let q = &(&p(&[-1, 1]).pow(3) * &p(&[2, 1]).pow(2)) * &p(&[0, 1]);
        let c = certify_rz(&q).unwrap();
        assert_eq!(c.degree, 6);
        assert_eq!(c.squarefree_part_degree, 3);
        assert_eq!(c.real_root_count_with_multiplicity, 6);
        assert!(c.all_real);
        // (x^2+1)^2 (x-3)
        let q = &p(&[1, 0, 1]).pow(2) * &p(&[-3, 1]);
        let c = certify_rz(&q).unwrap();
        assert_eq!(c.real_root_count_with_multiplicity, 1);
        assert!(!c.all_real);
    }

    #[test]
    fn log_concave_examples() {
        assert!(is_log_concave(&ints(&[1, 3, 1]), false).holds);
        let v = is_log_concave(&ints(&[1, 1, 2, 5]), false);
        assert!(!v.holds);
        assert_eq!(v.first_violation_index, Some(1));
        assert!(is_log_concave(&ints(&[1, 4, 6, 4, 1]), true).holds);
        let v = is_log_concave(&ints(&[1, 0, 0, 1]), false);
        assert!(v.holds);
        let v = is_log_concave(&ints(&[1, 0, 0, 1]), true);
        assert_eq!(v.first_violation_index, Some(1));
        assert!(is_log_concave(&ints(&[7]), true).holds);
    }

    #[test]
    fn log_convex_examples() {
        assert!(is_log_convex(&ints(&[1, 1, 2, 5, 15, 52]), true).holds);
        let v = is_log_convex(&ints(&[1, 4, 6, 4, 1]), false);
        assert_eq!(v.first_violation_index, Some(1));
        assert!(is_log_convex(&ints(&[3, 3, 3, 3]), true).holds);
        assert!(is_log_convex(&[frac(1, 2), frac(1, 4), frac(1, 8)], true).holds);
    }

    /// Product of real linear factors and irreducible quadratics with known
    /// root count.
    fn factored(rng: &mut ChaCha8Rng) -> (Poly, usize, usize) {
        let k = rng.gen_range(0..=8);
        let m = rng.gen_range(0..=3);
        let mut q = Poly::constant(int(rng.gen_range(1..=5) * if rng.gen() { 1 } else { -1 }));
        for _ in 0..k {
            let root = frac(rng.gen_range(-6..=6), rng.gen_range(1..=3));
            q = &q * &Poly::from_coeffs(vec![-root, int(1)]);
        }
        for _ in 0..m {
            // (x - a)^2 + b with b > 0
            let a = int(rng.gen_range(-4..=4));
            let b = frac(rng.gen_range(1..=9), rng.gen_range(1..=4));
            let quad = &Poly::from_coeffs(vec![-a, int(1)]).pow(2) + &Poly::constant(b);
            q = &q * &quad;
        }
        (q, k, m)
    }

    #[test]
    fn soundness_against_factored_forms() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..200 {
            let (q, k, m) = factored(&mut rng);
            let c = certify_rz(&q).unwrap();
            assert_eq!(c.all_real, m == 0, "{q}");
            assert_eq!(c.real_root_count_with_multiplicity, k, "{q}");
            assert!(newton_consistent(&q, &c));
        }
    }

    proptest! {
        #[test]
        fn scaling_invariance(roots in prop::collection::vec(-5i64..=5, 1..6), quad in 0i64..4, num in 1i64..20, den in 1i64..20) {
            let mut q = roots.iter().fold(Poly::one(), |acc, &r| &acc * &p(&[-r, 1]));
            if quad > 0 {
                q = &q * &p(&[quad, 0, 1]);
            }
            prop_assert_eq!(certify_rz(&q.scale(&frac(num, den))).unwrap(), certify_rz(&q).unwrap());
        }

        #[test]
        fn distinct_simple_roots_are_counted(mut roots in prop::collection::vec(-20i64..=20, 1..8)) {
            roots.sort();
            roots.dedup();
            let q = roots.iter().fold(Poly::one(), |acc, &r| &acc * &p(&[-r, 1]));
            let c = certify_rz(&q).unwrap();
            prop_assert_eq!(c.real_root_count_with_multiplicity, roots.len());
            prop_assert_eq!(c.sturm_sign_variations.0 - c.sturm_sign_variations.1, roots.len());
        }
    }
}
