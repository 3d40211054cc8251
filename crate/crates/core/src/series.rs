//! Sparse formal series with non-negative rational exponents, and the Chen-Lin
//! generating series
//!
//! ```text
//! g(x) = (1 + x + x^2 + ...)^(r - chi_c) * prod_j (1 - x^{w_j})
//! ```
//!
//! whose coefficients at exponents in `(0, rho]` sum to `-chi_c(B_rho)`.

use std::collections::btree_map::{self, BTreeMap};
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::binomial::binom;
use crate::engine::{nonneg_floor, ChiResult, Method};
use crate::rational::ExactRational;
use crate::space::ValidatedInstance;

/// Finitely supported map from exponent to non-zero coefficient.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct SparseSeries {
    terms: BTreeMap<ExactRational, BigInt>,
}

impl SparseSeries {
    pub fn zero() -> Self {
        SparseSeries::default()
    }

    pub fn one() -> Self {
        SparseSeries::monomial(ExactRational::zero(), BigInt::one())
    }

    pub fn monomial(exponent: ExactRational, coefficient: BigInt) -> Self {
        let mut s = SparseSeries::zero();
        s.add_term(exponent, coefficient);
        s
    }

    /// `1 - x^e`.
    pub fn one_minus_power(exponent: ExactRational) -> Self {
        let mut s = SparseSeries::one();
        s.add_term(exponent, -BigInt::one());
        s
    }

    /// Adds `coefficient * x^exponent`, dropping the entry if it cancels.
    pub fn add_term(&mut self, exponent: ExactRational, coefficient: BigInt) {
        assert!(!exponent.is_negative(), "negative exponent {exponent}");
        if coefficient.is_zero() {
            return;
        }
        match self.terms.entry(exponent) {
            btree_map::Entry::Vacant(slot) => {
                slot.insert(coefficient);
            }
            btree_map::Entry::Occupied(mut slot) => {
                *slot.get_mut() += coefficient;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }

    pub fn coefficient(&self, exponent: &ExactRational) -> BigInt {
        self.terms.get(exponent).cloned().unwrap_or_default()
    }

    pub fn constant_term(&self) -> BigInt {
        self.coefficient(&ExactRational::zero())
    }

    /// Terms by increasing exponent.
    pub fn iter(&self) -> impl Iterator<Item = (&ExactRational, &BigInt)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn truncated(&self, bound: &ExactRational) -> SparseSeries {
        SparseSeries {
            terms: self
                .terms
                .range(..=bound.clone())
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
    }

    /// Sum of the coefficients at exponents `e` with `0 < e <= bound`.
    pub fn window_sum(&self, bound: &ExactRational) -> BigInt {
        self.terms
            .range(..=bound.clone())
            .filter(|(e, _)| !e.is_zero())
            .map(|(_, c)| c)
            .sum()
    }
}

impl fmt::Debug for SparseSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(e, c)| format!("{c}*x^{e}"))
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

/// `(1 + x + x^2 + ...)^m` up to `x^floor(bound)`, i.e.
/// `sum_n C(m + n - 1, n) x^n`. Valid for every integer `m`; for `m < 0`
/// this is the polynomial `(1 - x)^(-m)`.
pub fn expand_geometric_power(m: i64, bound: &ExactRational) -> SparseSeries {
    let mut out = SparseSeries::zero();
    let Some(top) = nonneg_floor(bound) else {
        return out;
    };
    for n in 0..=top {
        out.add_term(ExactRational::from_integer(n), binom(m + n - 1, n));
    }
    out
}

/// Cauchy product of `a` and `b`, keeping exponents `<= bound`.
pub fn multiply_truncated(
    a: &SparseSeries,
    b: &SparseSeries,
    bound: &ExactRational,
) -> SparseSeries {
    let mut out = SparseSeries::zero();
    for (ea, ca) in a.iter() {
        if ea > bound {
            break;
        }
        for (eb, cb) in b.iter() {
            let e = ea + eb;
            if &e > bound {
                break;
            }
            out.add_term(e, ca * cb);
        }
    }
    out
}

/// Input of the generating series.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeriesSpec {
    pub chi_c: i64,
    pub weights: Vec<ExactRational>,
    pub truncation_bound: ExactRational,
}

impl SeriesSpec {
    /// Truncated at ρ.
    pub fn from_instance(instance: &ValidatedInstance) -> Self {
        SeriesSpec::with_bound(instance, instance.rho().clone())
    }

    pub fn with_bound(instance: &ValidatedInstance, bound: ExactRational) -> Self {
        SeriesSpec {
            chi_c: instance.chi_c(),
            weights: instance.weights_in_label_order(),
            truncation_bound: bound,
        }
    }

    pub fn r(&self) -> usize {
        self.weights.len()
    }
}

/// `g(x)` truncated at `spec.truncation_bound`.
pub fn chen_lin_series(spec: &SeriesSpec) -> SparseSeries {
    let bound = &spec.truncation_bound;
    let m = spec.r() as i64 - spec.chi_c;
    let mut g = expand_geometric_power(m, bound);
    for w in &spec.weights {
        g = multiply_truncated(&g, &SparseSeries::one_minus_power(w.clone()), bound);
    }
    assert_eq!(g.constant_term(), BigInt::one(), "g(0) must be 1");
    g
}

/// `chi_c(B_rho) = -(b_1 + ... + b_k)` where `b_j` runs over the coefficients
/// of `g` at exponents in `(0, rho]`.
pub fn chi_c_from_series(series: &SparseSeries, rho: &ExactRational) -> ChiResult {
    let window = series.window_sum(rho);
    ChiResult::new(-window, Method::Series, Vec::new())
}

pub fn chi_c_series(instance: &ValidatedInstance) -> ChiResult {
    let g = chen_lin_series(&SeriesSpec::from_instance(instance));
    chi_c_from_series(&g, instance.rho())
}
