//! Binomial coefficients extended to negative upper arguments, and the
//! summation identities the Euler characteristic formulas rely on.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

/// `n choose k` for any integers `n`, `k`.
///
/// The value is the polynomial `n(n-1)...(n-k+1)/k!` evaluated at `n`, with
/// `k = 0` giving 1 and `k < 0` giving 0. Every partial product
/// `n(n-1)...(n-i)/(i+1)!` is itself an integer, so each division is exact.
pub fn ext_binomial(n: &BigInt, k: i64) -> BigInt {
    if k < 0 {
        return BigInt::zero();
    }
    if n.sign() != num_bigint::Sign::Minus && *n < BigInt::from(k) {
        return BigInt::zero();
    }
    let mut acc = BigInt::one();
    for i in 0..k {
        acc *= n - i;
        let (quot, rem) = acc.div_rem(&BigInt::from(i + 1));
        debug_assert!(rem.is_zero());
        acc = quot;
    }
    acc
}

/// [`ext_binomial`] for machine-sized arguments.
pub fn binom(n: i64, k: i64) -> BigInt {
    ext_binomial(&BigInt::from(n), k)
}

/// `1 + C(m,1) + C(m+1,2) + ... + C(m+n-1,n)`, summed term by term.
///
/// Equals `C(m+n, n)` for every integer `m`.
pub fn hockey_stick_sum(m: i64, n: u32) -> BigInt {
    let mut total = BigInt::one();
    for j in 1..=i64::from(n) {
        total += binom(m + j - 1, j);
    }
    total
}

/// `sum_{l=0..k} C(k-l-chi1, k-l) * C(l-1-chi2, l)`, summed term by term.
///
/// Equals `C(k-chi1-chi2, k)` (Vandermonde-type convolution).
pub fn gould_convolution(chi1: i64, chi2: i64, k: u32) -> BigInt {
    let k = i64::from(k);
    (0..=k)
        .map(|l| binom(k - l - chi1, k - l) * binom(l - 1 - chi2, l))
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;
    use proptest::prelude::*;

    /// Independent evaluation: numerator product and k! formed separately as
    /// a rational, then checked to be integral.
    fn falling_factorial_oracle(n: i64, k: i64) -> BigInt {
        if k < 0 {
            return BigInt::zero();
        }
        let num: BigInt = (0..k).map(|i| BigInt::from(n - i)).product();
        let den: BigInt = (1..=k).map(BigInt::from).product();
        let q = BigRational::new(num, den);
        assert!(q.is_integer());
        q.to_integer()
    }

    #[test]
    fn spec_examples() {
        assert_eq!(falling_factorial_oracle(-1, 2), BigInt::from(1));
        assert_eq!(binom(-1, 2), BigInt::from(1));
        for n in [-5, 0, 7] {
            assert_eq!(binom(n, 0), BigInt::one());
        }
        assert_eq!(binom(2, 5), BigInt::zero());
        assert_eq!(falling_factorial_oracle(-3, 2), BigInt::from(6));
        assert_eq!(binom(-3, 2), BigInt::from(6));
    }

    #[test]
    fn negative_lower_is_zero() {
        assert_eq!(binom(5, -1), BigInt::zero());
        assert_eq!(binom(-5, -3), BigInt::zero());
    }

    #[test]
    fn large_values_do_not_overflow() {
        // C(-20 + 50, 50) style values exceed 64 bits quickly.
        let v = binom(-60, 50);
        assert_eq!(v, binom(109, 50));
        assert!(v.bits() > 64);
        assert_eq!(binom(100, 49).to_string(), "98913082887808032681188722800");
    }

    #[test]
    fn agrees_with_falling_factorial_on_grid() {
        for n in -25..=25 {
            for k in 0..=25 {
                assert_eq!(binom(n, k), falling_factorial_oracle(n, k), "({n},{k})");
            }
        }
    }

    #[test]
    fn pascal_rule() {
        for m in -20..=20 {
            for n in 1..=20 {
                assert_eq!(
                    binom(m, n - 1) + binom(m, n),
                    binom(m + 1, n),
                    "m={m} n={n}"
                );
            }
        }
    }

    #[test]
    fn hockey_stick_examples() {
        assert_eq!(hockey_stick_sum(3, 2), BigInt::from(10));
        assert_eq!(hockey_stick_sum(3, 2), binom(5, 2));
        assert_eq!(hockey_stick_sum(-7, 0), BigInt::one());
        assert_eq!(hockey_stick_sum(0, 4), BigInt::one());
    }

    #[test]
    fn hockey_stick_identity() {
        for m in -15..=15 {
            for n in 0..=15u32 {
                assert_eq!(
                    hockey_stick_sum(m, n),
                    binom(m + i64::from(n), i64::from(n))
                );
            }
        }
    }

    #[test]
    fn gould_examples() {
        for k in 0..10 {
            assert_eq!(gould_convolution(0, 0, k), BigInt::one());
        }
        assert_eq!(gould_convolution(1, 1, 3), BigInt::zero());
        assert_eq!(gould_convolution(-4, 9, 0), BigInt::one());
    }

    #[test]
    fn gould_identity() {
        for c1 in -8..=8 {
            for c2 in -8..=8 {
                for k in 0..=12u32 {
                    assert_eq!(
                        gould_convolution(c1, c2, k),
                        binom(i64::from(k) - c1 - c2, i64::from(k))
                    );
                }
            }
        }
    }

    proptest! {
        #[test]
        fn reflection(n in -200i64..0, k in 1i64..40) {
            let sign = if k % 2 == 0 { BigInt::one() } else { -BigInt::one() };
            prop_assert_eq!(binom(n, k), sign * binom(-n + k - 1, k));
        }

        #[test]
        fn pascal_wide(m in -300i64..300, n in 1i64..60) {
            prop_assert_eq!(binom(m, n - 1) + binom(m, n), binom(m + 1, n));
        }
    }
}
