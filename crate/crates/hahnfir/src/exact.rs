//! Exact rational building blocks: factorials, binomials, Pochhammer
//! symbols, Bernoulli numbers and polynomials.
//!
//! Everything here is total and exact; all Gamma-function manipulations are
//! replaced by finite products at integer offsets.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::Rational;

pub fn factorial(k: usize) -> BigInt {
    let mut acc = BigInt::one();
    for j in 2..=k {
        acc *= BigInt::from(j);
    }
    acc
}

pub fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for j in 0..k {
        acc = acc * BigInt::from(n - j) / BigInt::from(j + 1);
    }
    acc
}

/// Rising factorial (a)_k = a (a+1) ... (a+k-1); the empty product is 1.
///
/// Negative-integer bases are allowed and simply yield 0 once the product
/// crosses zero.
pub fn pochhammer(a: &Rational, k: usize) -> Rational {
    let mut acc = Rational::one();
    let mut term = a.clone();
    let one = Rational::one();
    for _ in 0..k {
        acc *= &term;
        term += &one;
    }
    acc
}

/// Convenience for integer bases.
pub fn pochhammer_i(a: i64, k: usize) -> Rational {
    pochhammer(&Rational::from_integer(a.into()), k)
}

/// True iff (a)_j vanishes for some j <= k, i.e. a is an integer in
/// {0, -1, ..., -(k-1)}.
pub fn pochhammer_vanishes(a: &Rational, k: usize) -> bool {
    if k == 0 || !a.is_integer() {
        return false;
    }
    let a = a.numer();
    !a.is_positive() && a >= &BigInt::from(-((k as i64) - 1))
}

/// Index of the first vanishing factor: (a)_k = 0 first at k = 1 - a.
pub fn pochhammer_zero_index(a: &Rational) -> Option<usize> {
    use num_traits::Signed;
    use num_traits::ToPrimitive;
    if !a.is_integer() || a.numer().is_positive() {
        return None;
    }
    Some((1 - a.numer().to_i64()?) as usize)
}

/// B_0..=B_upto in the convention with B_1 = -1/2, which is the one that
/// makes (B_{k+1}(N) - B_{k+1})/(k+1) equal the power sum over 0..N-1.
pub fn bernoulli_numbers(upto: usize) -> Vec<Rational> {
    let mut b: Vec<Rational> = Vec::with_capacity(upto + 1);
    b.push(Rational::one());
    for k in 1..=upto {
        // sum_{j=0}^{k} C(k+1, j) B_j = 0
        let mut acc = Rational::zero();
        for (j, bj) in b.iter().enumerate() {
            acc += Rational::from_integer(binomial(k + 1, j)) * bj;
        }
        b.push(-acc / Rational::from_integer(BigInt::from(k as u64 + 1)));
    }
    b
}

pub fn bernoulli_number(k: usize) -> Rational {
    bernoulli_numbers(k).pop().unwrap()
}

/// B_k(x) = sum_j C(k, j) B_j x^(k-j).
pub fn bernoulli_polynomial(k: usize, x: &Rational) -> Rational {
    let numbers = bernoulli_numbers(k);
    let mut acc = Rational::zero();
    let mut xpow = Rational::one();
    // iterate j = k down to 0 so x powers build up incrementally
    for j in (0..=k).rev() {
        acc += Rational::from_integer(binomial(k, j)) * &numbers[j] * &xpow;
        if j > 0 {
            xpow *= x;
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratio;
    use proptest::prelude::*;

    #[test]
    fn pochhammer_examples() {
        assert_eq!(pochhammer_i(3, 4), ratio(360, 1));
        assert_eq!(pochhammer(&ratio(17, 5), 0), ratio(1, 1));
        assert_eq!(pochhammer_i(-2, 3), ratio(0, 1));
    }

    #[test]
    fn pochhammer_vanishing_scan() {
        assert!(pochhammer_vanishes(&ratio(0, 1), 1));
        assert!(pochhammer_vanishes(&ratio(-2, 1), 3));
        assert!(!pochhammer_vanishes(&ratio(-2, 1), 2));
        assert!(!pochhammer_vanishes(&ratio(-1, 2), 100));
        assert!(!pochhammer_vanishes(&ratio(-5, 1), 0));
        assert_eq!(pochhammer_zero_index(&ratio(-2, 1)), Some(3));
        assert_eq!(pochhammer_zero_index(&ratio(1, 2)), None);
    }

    #[test]
    fn bernoulli_convention() {
        assert_eq!(bernoulli_number(0), ratio(1, 1));
        assert_eq!(bernoulli_number(1), ratio(-1, 2));
        assert_eq!(bernoulli_number(2), ratio(1, 6));
        assert_eq!(bernoulli_number(3), ratio(0, 1));
        assert_eq!(bernoulli_number(12), ratio(-691, 2730));
    }

    #[test]
    fn bernoulli_polynomial_examples() {
        assert_eq!(bernoulli_polynomial(0, &ratio(7, 3)), ratio(1, 1));
        // B_3(5) = 125 - 3/2*25 + 5/2 = 90
        assert_eq!(bernoulli_polynomial(3, &ratio(5, 1)), ratio(90, 1));
        for k in 0..10 {
            assert_eq!(bernoulli_polynomial(k, &ratio(0, 1)), bernoulli_number(k));
        }
    }

    #[test]
    fn power_sum_identity_pins_the_sign_convention() {
        // (B_{k+1}(N) - B_{k+1})/(k+1) must reproduce sum_{i=0}^{N-1} i^k
        for k in 0usize..=12 {
            for n in 1i64..=30 {
                let direct: Rational = (0..n)
                    .map(|i| crate::scalar::Scalar::powi(&ratio(i, 1), k as i64))
                    .sum();
                let bern = (bernoulli_polynomial(k + 1, &ratio(n, 1))
                    - bernoulli_number(k + 1))
                    / ratio(k as i64 + 1, 1);
                assert_eq!(direct, bern, "k={k} N={n}");
            }
        }
    }

    proptest! {
        #[test]
        fn pochhammer_splits_multiplicatively(
            num in -20i64..20, den in 1i64..6, j in 0usize..8, k in 0usize..8
        ) {
            let a = ratio(num, den);
            let lhs = pochhammer(&a, j + k);
            let rhs = pochhammer(&a, j) * pochhammer(&(a.clone() + ratio(j as i64, 1)), k);
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn rational_addition_round_trips(p in -50i64..50, q in 1i64..30, r in -50i64..50, s in 1i64..30) {
            let x = ratio(p, q);
            let y = ratio(r, s);
            prop_assert_eq!((x.clone() + y.clone()) - y, x.clone());
            prop_assert!(x.denom().is_positive());
        }
    }
}
