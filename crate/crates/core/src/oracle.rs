//! Ground truth for finite X.
//!
//! When X is a finite set of points, `B(X)` is the full simplex on X and
//! `B_rho^Q(X)` is the subcomplex of faces whose total vertex weight is at
//! most ρ. Its Euler characteristic is a signed face count.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::binomial::binom;
use crate::rational::ExactRational;
use crate::space::{ProblemInstance, SpaceKind};

pub const MAX_ORACLE_VERTICES: usize = 22;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("{m} vertices exceeds the face-enumeration cap of {MAX_ORACLE_VERTICES}")]
    TooManyVertices { m: usize },
    #[error("a finite space needs at least one vertex")]
    NoVertices,
    #[error("{given} weights given for only {m} vertices")]
    TooManyWeights { given: usize, m: usize },
    #[error("vertex weight {0} is not strictly positive")]
    NonPositiveWeight(ExactRational),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteWeightedSpace {
    vertex_weights: Vec<ExactRational>,
}

impl FiniteWeightedSpace {
    /// `m` vertices; the first `weights.len()` carry the given weights, the
    /// rest weight 1.
    pub fn new(m: usize, weights: &[ExactRational]) -> Result<Self, OracleError> {
        if m == 0 {
            return Err(OracleError::NoVertices);
        }
        if m > MAX_ORACLE_VERTICES {
            return Err(OracleError::TooManyVertices { m });
        }
        if weights.len() > m {
            return Err(OracleError::TooManyWeights {
                given: weights.len(),
                m,
            });
        }
        if let Some(w) = weights.iter().find(|w| !w.is_positive()) {
            return Err(OracleError::NonPositiveWeight(w.clone()));
        }
        let mut vertex_weights = weights.to_vec();
        vertex_weights.resize(m, ExactRational::one());
        Ok(FiniteWeightedSpace { vertex_weights })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_weights.len()
    }

    pub fn vertex_weights(&self) -> &[ExactRational] {
        &self.vertex_weights
    }

    /// The same data as an engine instance: χc = m (a finite discrete space
    /// is compact), singular points are the vertices of weight other than 1.
    pub fn to_instance(&self, rho: ExactRational) -> ProblemInstance {
        let one = ExactRational::one();
        let weights = self
            .vertex_weights
            .iter()
            .filter(|w| **w != one)
            .cloned()
            .collect();
        ProblemInstance::new(self.vertex_count() as i64, weights, rho).with_kind(SpaceKind::Compact)
    }
}

/// `sum over nonempty vertex sets S with w(S) <= rho of (-1)^(|S|+1)`.
pub fn oracle_chi(space: &FiniteWeightedSpace, rho: &ExactRational) -> BigInt {
    // Scale everything to a common denominator so the per-face test is an
    // integer comparison.
    let lcm = space
        .vertex_weights
        .iter()
        .fold(rho.denom().clone(), |acc, w| acc.lcm(w.denom()));
    let scale = |q: &ExactRational| q.numer() * (&lcm / q.denom());
    let weights: Vec<BigInt> = space.vertex_weights.iter().map(scale).collect();
    let limit = scale(rho);

    let m = weights.len();
    let mut chi: i64 = 0;
    let mut total = BigInt::zero();
    for mask in 1u32..(1u32 << m) {
        total.set_zero();
        for (i, w) in weights.iter().enumerate() {
            if mask >> i & 1 == 1 {
                total += w;
            }
        }
        if total <= limit {
            chi += if mask.count_ones() % 2 == 1 { 1 } else { -1 };
        }
    }
    BigInt::from(chi)
}

/// χ of the `(k-1)`-skeleton of the n-simplex by face count:
/// `sum_{i<k} (-1)^i C(n+1, i+1)`. This is `B_k` of `n + 1` points.
pub fn skeleton_chi(n: u32, k: u32) -> BigInt {
    assert!(k >= 1 && k <= n + 1, "need 1 <= k <= n + 1");
    let n = i64::from(n);
    (0..i64::from(k))
        .map(|i| {
            let faces = binom(n + 1, i + 1);
            if i % 2 == 0 {
                faces
            } else {
                -faces
            }
        })
        .sum()
}

/// χ of a bouquet of `C(n, k)` spheres of dimension `k - 1`.
pub fn bouquet_chi(n: u32, k: u32) -> BigInt {
    assert!(k >= 1);
    let count = binom(i64::from(n), i64::from(k));
    if k % 2 == 1 {
        BigInt::one() + count
    } else {
        BigInt::one() - count
    }
}
