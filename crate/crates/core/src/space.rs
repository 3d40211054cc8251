//! Problem instances: the space data (χc, singular weights, ρ) and its
//! validation.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::rational::ExactRational;

/// Largest number of singular points accepted; every algorithm walks all
/// `2^r` subsets.
pub const MAX_SINGULAR_POINTS: usize = 30;

/// Largest accepted `floor(rho)`. Binomials and series lengths grow linearly
/// in it.
pub const MAX_RHO_FLOOR: i64 = 1 << 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InstanceError {
    #[error("weight w_{index} = {weight} is not strictly positive")]
    NonPositiveWeight { index: usize, weight: ExactRational },
    #[error("rho = {0} is not strictly positive")]
    NonPositiveRho(ExactRational),
    #[error("inconsistent components: {0}")]
    InconsistentComponents(String),
    #[error("{r} singular points exceeds the enumeration cap of {cap}")]
    TooManySingularPoints { r: usize, cap: usize },
    #[error("floor(rho) = {0} exceeds the supported maximum {MAX_RHO_FLOOR}")]
    RhoTooLarge(BigInt),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
pub enum SpaceKind {
    #[serde(rename = "compact")]
    Compact,
    /// Connected, locally closed in a locally compact Hausdorff space.
    #[default]
    #[serde(rename = "lc")]
    LocallyClosedBasic,
    #[serde(rename = "even-interior")]
    InteriorEvenDimManifold,
    #[serde(rename = "union")]
    UnionOfBasic,
}

impl SpaceKind {
    pub fn token(self) -> &'static str {
        match self {
            SpaceKind::Compact => "compact",
            SpaceKind::LocallyClosedBasic => "lc",
            SpaceKind::InteriorEvenDimManifold => "even-interior",
            SpaceKind::UnionOfBasic => "union",
        }
    }

    pub fn from_token(s: &str) -> Option<Self> {
        Some(match s {
            "compact" => SpaceKind::Compact,
            "lc" => SpaceKind::LocallyClosedBasic,
            "even-interior" => SpaceKind::InteriorEvenDimManifold,
            "union" => SpaceKind::UnionOfBasic,
            _ => return None,
        })
    }
}

impl fmt::Display for SpaceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.token())
    }
}

/// One connected component of a disconnected space.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentSpec {
    pub chi_c: i64,
    pub is_compact: bool,
    /// 1-based indices into the instance's weight list.
    #[serde(default)]
    pub singular_indices: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize, Default)]
pub struct SpaceDescriptor {
    pub kind: SpaceKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub components: Option<Vec<ComponentSpec>>,
}

impl SpaceDescriptor {
    pub fn of_kind(kind: SpaceKind) -> Self {
        SpaceDescriptor {
            kind,
            components: None,
        }
    }
}

/// Raw, unvalidated input. This is also the on-disk instance document.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProblemInstance {
    pub chi_c: i64,
    pub weights: Vec<ExactRational>,
    pub rho: ExactRational,
    #[serde(default)]
    pub space: SpaceDescriptor,
}

impl ProblemInstance {
    pub fn new(chi_c: i64, weights: Vec<ExactRational>, rho: ExactRational) -> Self {
        ProblemInstance {
            chi_c,
            weights,
            rho,
            space: SpaceDescriptor::default(),
        }
    }

    pub fn with_kind(mut self, kind: SpaceKind) -> Self {
        self.space.kind = kind;
        self
    }

    pub fn with_components(mut self, components: Vec<ComponentSpec>) -> Self {
        self.space.components = Some(components);
        self
    }

    pub fn validate(self) -> Result<ValidatedInstance, InstanceError> {
        validate(self)
    }
}

/// A singular point `y_label` with its weight; `label` is the 1-based position
/// in the caller's weight list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SingularPoint {
    pub label: usize,
    pub weight: ExactRational,
}

/// An instance whose invariants hold. Points are stored sorted by weight
/// (stable), labelled `1..=r` in input order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidatedInstance {
    chi_c: i64,
    points: Vec<SingularPoint>,
    rho: ExactRational,
    space: SpaceDescriptor,
}

impl ValidatedInstance {
    pub fn chi_c(&self) -> i64 {
        self.chi_c
    }

    pub fn r(&self) -> usize {
        self.points.len()
    }

    pub fn rho(&self) -> &ExactRational {
        &self.rho
    }

    pub fn space(&self) -> &SpaceDescriptor {
        &self.space
    }

    /// Points in ascending weight order.
    pub fn points(&self) -> &[SingularPoint] {
        &self.points
    }

    pub fn sorted_weights(&self) -> impl Iterator<Item = &ExactRational> {
        self.points.iter().map(|p| &p.weight)
    }

    /// Weights in the caller's original order.
    pub fn weights_in_label_order(&self) -> Vec<ExactRational> {
        let mut out = vec![ExactRational::zero(); self.points.len()];
        for p in &self.points {
            out[p.label - 1] = p.weight.clone();
        }
        out
    }

    /// Back to a raw instance in the original order; validating it again
    /// yields `self`.
    pub fn to_instance(&self) -> ProblemInstance {
        ProblemInstance {
            chi_c: self.chi_c,
            weights: self.weights_in_label_order(),
            rho: self.rho.clone(),
            space: self.space.clone(),
        }
    }

    pub fn total_weight(&self) -> ExactRational {
        self.sorted_weights().sum()
    }

    /// All `2^r` subsets in binary-counter order over the sorted points.
    pub fn subset_weights(&self) -> SubsetWeights<'_> {
        enumerate_subset_weights(self)
    }
}

/// A subset `I` of the singular points with `w_I`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubsetWeight {
    /// Bit `i` set iff the `i`-th point in sorted order is in `I`.
    pub mask: u64,
    /// Labels of the members, ascending.
    pub labels: Vec<usize>,
    pub total: ExactRational,
}

impl SubsetWeight {
    pub fn cardinality(&self) -> usize {
        self.mask.count_ones() as usize
    }

    /// `(-1)^|I|`.
    pub fn sign(&self) -> i32 {
        if self.cardinality().is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    pub fn is_empty(&self) -> bool {
        self.mask == 0
    }
}

pub struct SubsetWeights<'a> {
    points: &'a [SingularPoint],
    next: u64,
    end: u64,
}

impl Iterator for SubsetWeights<'_> {
    type Item = SubsetWeight;

    fn next(&mut self) -> Option<SubsetWeight> {
        if self.next >= self.end {
            return None;
        }
        let mask = self.next;
        self.next += 1;
        let mut labels = Vec::with_capacity(mask.count_ones() as usize);
        let mut total = ExactRational::zero();
        for (i, p) in self.points.iter().enumerate() {
            if mask >> i & 1 == 1 {
                labels.push(p.label);
                total = &total + &p.weight;
            }
        }
        labels.sort_unstable();
        Some(SubsetWeight {
            mask,
            labels,
            total,
        })
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = (self.end - self.next) as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for SubsetWeights<'_> {}

pub fn enumerate_subset_weights(instance: &ValidatedInstance) -> SubsetWeights<'_> {
    SubsetWeights {
        points: &instance.points,
        next: 0,
        end: 1u64 << instance.points.len(),
    }
}

pub fn validate(instance: ProblemInstance) -> Result<ValidatedInstance, InstanceError> {
    let r = instance.weights.len();
    if r > MAX_SINGULAR_POINTS {
        return Err(InstanceError::TooManySingularPoints {
            r,
            cap: MAX_SINGULAR_POINTS,
        });
    }
    for (i, w) in instance.weights.iter().enumerate() {
        if !w.is_positive() {
            return Err(InstanceError::NonPositiveWeight {
                index: i + 1,
                weight: w.clone(),
            });
        }
    }
    if !instance.rho.is_positive() {
        return Err(InstanceError::NonPositiveRho(instance.rho));
    }
    let floor = instance.rho.floor();
    if floor > BigInt::from(MAX_RHO_FLOOR) {
        return Err(InstanceError::RhoTooLarge(floor));
    }
    if let Some(components) = &instance.space.components {
        check_components(instance.chi_c, r, components)?;
    }

    let mut points: Vec<SingularPoint> = instance
        .weights
        .into_iter()
        .enumerate()
        .map(|(i, weight)| SingularPoint {
            label: i + 1,
            weight,
        })
        .collect();
    points.sort_by(|a, b| a.weight.cmp(&b.weight));

    Ok(ValidatedInstance {
        chi_c: instance.chi_c,
        points,
        rho: instance.rho,
        space: instance.space,
    })
}

pub(crate) fn check_components(
    chi_c: i64,
    r: usize,
    components: &[ComponentSpec],
) -> Result<(), InstanceError> {
    let total: i128 = components.iter().map(|c| i128::from(c.chi_c)).sum();
    if total != i128::from(chi_c) {
        return Err(InstanceError::InconsistentComponents(format!(
            "component chi_c values sum to {total}, expected {chi_c}"
        )));
    }
    let mut seen = BTreeSet::new();
    for (ci, c) in components.iter().enumerate() {
        for &idx in &c.singular_indices {
            if idx == 0 || idx > r {
                return Err(InstanceError::InconsistentComponents(format!(
                    "component {} names singular index {idx}, outside 1..={r}",
                    ci + 1
                )));
            }
            if !seen.insert(idx) {
                return Err(InstanceError::InconsistentComponents(format!(
                    "singular index {idx} assigned to more than one component"
                )));
            }
        }
    }
    if seen.len() != r {
        return Err(InstanceError::InconsistentComponents(format!(
            "components cover {} of {r} singular points",
            seen.len()
        )));
    }
    Ok(())
}
