//! Closed-form and stratified computations of `chi_c(B_rho^{Q_r}(X))`, plus
//! the small χc calculus (complements, joins, suspensions, quotients) they
//! are checked against.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::binomial::{binom, ext_binomial};
use crate::rational::ExactRational;
use crate::space::{
    check_components, ComponentSpec, InstanceError, ProblemInstance, SingularPoint, SpaceKind,
    ValidatedInstance,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Direct,
    Strata,
    Series,
}

impl Method {
    pub const ALL: [Method; 3] = [Method::Direct, Method::Strata, Method::Series];

    pub fn name(self) -> &'static str {
        match self {
            Method::Direct => "direct",
            Method::Strata => "strata",
            Method::Series => "series",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Contribution of one subset `I` of singular points.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubsetTerm {
    pub labels: Vec<usize>,
    pub value: BigInt,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChiResult {
    pub chi_c: BigInt,
    pub method: Method,
    /// Direct: signed terms `(-1)^|I| C(...)`, with `chi_c = 1 - sum`.
    /// Strata: stratum values, with `chi_c = sum`. Series: empty.
    pub terms: Vec<SubsetTerm>,
    /// Chen-Lin degree, always `1 - chi_c`.
    pub degree: BigInt,
}

impl ChiResult {
    pub(crate) fn new(chi_c: BigInt, method: Method, terms: Vec<SubsetTerm>) -> Self {
        let degree = BigInt::one() - &chi_c;
        ChiResult {
            chi_c,
            method,
            terms,
            degree,
        }
    }
}

pub fn compute(instance: &ValidatedInstance, method: Method) -> ChiResult {
    match method {
        Method::Direct => chi_c_direct(instance),
        Method::Strata => chi_c_strata(instance),
        Method::Series => crate::series::chi_c_series(instance),
    }
}

/// `floor(q)` when it is non-negative.
pub(crate) fn nonneg_floor(q: &ExactRational) -> Option<i64> {
    let f = q.floor();
    if f.is_negative() {
        None
    } else {
        // validation bounds floor(rho), and floor(rho - w_I) <= floor(rho)
        Some(f.to_i64().expect("floor bounded by validation"))
    }
}

/// `C(n - chi_c + r, n)`.
fn shifted_binomial(n: i64, chi_c: i64, r: usize) -> BigInt {
    let top = BigInt::from(n) - chi_c + r;
    ext_binomial(&top, n)
}

/// `1 - sum_{I subset of {1..r}} (-1)^|I| C(floor(rho - w_I) - chi_c + r, floor(rho - w_I))`,
/// terms with a negative floor omitted.
pub fn chi_c_direct(instance: &ValidatedInstance) -> ChiResult {
    let chi_c = instance.chi_c();
    let r = instance.r();
    let mut sum = BigInt::zero();
    let mut terms = Vec::new();
    for subset in instance.subset_weights() {
        let Some(n) = nonneg_floor(&(instance.rho() - &subset.total)) else {
            continue;
        };
        let mut value = shifted_binomial(n, chi_c, r);
        if subset.sign() < 0 {
            value = -value;
        }
        sum += &value;
        terms.push(SubsetTerm {
            labels: subset.labels,
            value,
        });
    }
    ChiResult::new(BigInt::one() - sum, Method::Direct, terms)
}

/// χc of `B_n(X - Q_r)`, summed over the layers `B_i - B_{i-1}`, each
/// contributing `-C(i - chi' - 1, i)` with `chi' = chi_c(X - Q_r)`.
pub fn free_stratum_chi(n: i64, chi_c: i64, r: usize) -> BigInt {
    let chi_open = chi_c_complement(chi_c, r);
    let mut total = BigInt::zero();
    for i in 1..=n {
        total -= binom(i - chi_open - 1, i);
    }
    total
}

/// χc of the stratum where exactly the `k >= 1` singular points of `I` carry
/// mass and at most `n` generic points do. The open simplex on `I`
/// contributes `(-1)^(k-1)`; each layer `i = 1..n` contributes
/// `-(-1)^k C(i - chi_c + r - 1, i)`.
pub fn singular_stratum_chi(n: i64, k: usize, chi_c: i64, r: usize) -> BigInt {
    assert!(k >= 1);
    let sign: i64 = if k.is_multiple_of(2) { 1 } else { -1 };
    let mut total = BigInt::from(-sign);
    let shift = i64::try_from(r).unwrap() - chi_c - 1;
    for i in 1..=n {
        total -= binom(i + shift, i) * sign;
    }
    total
}

/// Sum of χc over the disjoint stratification of `B_rho^{Q_r}(X)` by the set
/// of singular points present in a configuration.
pub fn chi_c_strata(instance: &ValidatedInstance) -> ChiResult {
    let chi_c = instance.chi_c();
    let r = instance.r();
    let mut total = BigInt::zero();
    let mut terms = Vec::new();
    for subset in instance.subset_weights() {
        let Some(n) = nonneg_floor(&(instance.rho() - &subset.total)) else {
            continue;
        };
        let value = if subset.is_empty() {
            free_stratum_chi(n, chi_c, r)
        } else {
            singular_stratum_chi(n, subset.cardinality(), chi_c, r)
        };
        total += &value;
        terms.push(SubsetTerm {
            labels: subset.labels,
            value,
        });
    }
    ChiResult::new(total, Method::Strata, terms)
}

/// Rebuilds an instance keeping the points for which `keep` holds, relabelling
/// survivors `1..=r'` in their original order. Every removed point shifts the
/// total χc (and its component's χc) by `chi_shift`; `punctures` marks the
/// owning component as no longer compact.
fn rebuild(
    instance: &ValidatedInstance,
    keep: impl Fn(&SingularPoint) -> bool,
    chi_shift: i64,
    punctures: bool,
) -> ValidatedInstance {
    let r = instance.r();
    let mut kept = vec![false; r + 1];
    for p in instance.points() {
        kept[p.label] = keep(p);
    }
    let removed = kept[1..].iter().filter(|k| !**k).count();
    if removed == 0 {
        return instance.clone();
    }
    let mut new_label = vec![0usize; r + 1];
    let mut next = 0;
    for label in 1..=r {
        if kept[label] {
            next += 1;
            new_label[label] = next;
        }
    }

    let weights = instance
        .weights_in_label_order()
        .into_iter()
        .enumerate()
        .filter(|(i, _)| kept[i + 1])
        .map(|(_, w)| w)
        .collect();
    let mut space = instance.space().clone();
    if punctures && space.kind == SpaceKind::Compact {
        space.kind = SpaceKind::LocallyClosedBasic;
    }
    if let Some(components) = &mut space.components {
        for c in components.iter_mut() {
            let dropped = c.singular_indices.iter().filter(|&&i| !kept[i]).count();
            if dropped > 0 {
                c.chi_c += chi_shift * dropped as i64;
                if punctures {
                    c.is_compact = false;
                }
            }
            c.singular_indices = c
                .singular_indices
                .iter()
                .filter(|&&i| kept[i])
                .map(|&i| new_label[i])
                .collect();
        }
    }
    let raw = ProblemInstance {
        chi_c: instance.chi_c() + chi_shift * removed as i64,
        weights,
        rho: instance.rho().clone(),
        space,
    };
    raw.validate()
        .expect("dropping points preserves instance invariants")
}

/// Points heavier than ρ can never appear in a configuration, so they behave
/// as punctures: drop them and lower χc by one each.
pub fn normalize_drop_heavy(instance: &ValidatedInstance) -> ValidatedInstance {
    let rho = instance.rho().clone();
    rebuild(instance, |p| p.weight <= rho, -1, true)
}

/// Weight-1 points are not singular.
pub fn normalize_drop_unit_weights(instance: &ValidatedInstance) -> ValidatedInstance {
    let one = ExactRational::one();
    rebuild(instance, |p| p.weight != one, 0, false)
}

/// Whether the χc value is also the ordinary Euler characteristic: all
/// weights at most 1 and X compact or the interior of an even-dimensional
/// manifold with boundary (or a union of such; components qualify when
/// flagged compact).
pub fn topological_chi_applicable(instance: &ValidatedInstance) -> bool {
    let one = ExactRational::one();
    if instance.sorted_weights().any(|w| *w > one) {
        return false;
    }
    match instance.space().kind {
        SpaceKind::Compact | SpaceKind::InteriorEvenDimManifold => true,
        SpaceKind::UnionOfBasic => instance
            .space()
            .components
            .as_ref()
            .is_some_and(|cs| !cs.is_empty() && cs.iter().all(|c| c.is_compact)),
        SpaceKind::LocallyClosedBasic => false,
    }
}

/// `chi_c(X - Q_r) = chi_c(X) - r`.
pub fn chi_c_complement(chi_c: i64, r: usize) -> i64 {
    chi_c - i64::try_from(r).expect("r fits in i64")
}

/// χc together with whether the space is compact.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChiSpace {
    pub chi_c: BigInt,
    pub compact: bool,
}

impl ChiSpace {
    pub fn new(chi_c: impl Into<BigInt>, compact: bool) -> Self {
        ChiSpace {
            chi_c: chi_c.into(),
            compact,
        }
    }

    pub fn compact(chi_c: impl Into<BigInt>) -> Self {
        ChiSpace::new(chi_c, true)
    }
}

/// χc of the join `X * Y`.
pub fn chi_join(x: &ChiSpace, y: &ChiSpace) -> BigInt {
    let product = &x.chi_c * &y.chi_c;
    if !x.compact && !y.compact {
        -product
    } else {
        &x.chi_c + &y.chi_c - product
    }
}

/// χc of the `k`-fold suspension: `1 + (-1)^k (chi_c - 1)`.
pub fn chi_suspension(chi_c: &BigInt, k: u32) -> BigInt {
    if k.is_multiple_of(2) {
        chi_c.clone()
    } else {
        BigInt::from(2) - chi_c
    }
}

/// χ of `Xbar / (boundary ∪ Q_r)` for a disconnected X, assembled from its
/// wedge decomposition: every non-compact component contributes
/// `Abar/∂Abar` (χ = χc + 1) and `a_i` circles, every compact component with
/// `b_j > 0` singular points contributes itself and `b_j - 1` circles, and
/// the remaining compact components sit alongside as disjoint pieces.
///
/// The result is checked against `chi_c(X) - r + 1`.
pub fn chi_quotient_wedge(components: &[ComponentSpec]) -> Result<i64, InstanceError> {
    let r: usize = components.iter().map(|c| c.singular_indices.len()).sum();
    let chi_total: i64 = components.iter().map(|c| c.chi_c).sum();
    check_components(chi_total, r, components)?;

    let mut summands: Vec<i64> = Vec::new();
    let mut circles: i64 = 0;
    let mut detached: i64 = 0;
    let mut compact_with_points = 0i64;
    for c in components {
        let marked = c.singular_indices.len() as i64;
        if !c.is_compact {
            summands.push(c.chi_c + 1);
            circles += marked;
        } else if marked > 0 {
            summands.push(c.chi_c);
            circles += marked - 1;
            compact_with_points += 1;
        } else {
            detached += c.chi_c;
        }
    }
    debug_assert_eq!(circles, r as i64 - compact_with_points);
    // a wedge of n spaces and m circles: sum of χ minus the n + m - 1
    // repeated basepoints; an empty wedge is the basepoint alone
    let wedge_count = summands.len() as i64 + circles;
    let wedge_chi = summands.iter().sum::<i64>() - (wedge_count - 1);
    let value = wedge_chi + detached;

    let closed_form = chi_total - r as i64 + 1;
    assert_eq!(
        value, closed_form,
        "wedge bookkeeping disagrees with chi_c - r + 1"
    );
    Ok(value)
}
