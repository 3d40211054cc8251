//! Homotopy types of `B_rho^{Q_r}(X)` for one or two singular points of
//! weight at most 1, the conic-piece decomposition, and Euler characteristics
//! of the resulting symbolic descriptors.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_traits::One;
use thiserror::Error;

use crate::binomial::binom;
use crate::engine::{
    chi_join, chi_suspension, nonneg_floor, normalize_drop_unit_weights, ChiSpace,
};
use crate::rational::ExactRational;
use crate::space::ValidatedInstance;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClassifyError {
    #[error("out of scope: {0}")]
    OutOfScope(String),
    #[error("weight w_{label} = {weight} exceeds 1")]
    WeightOutOfRange { label: usize, weight: ExactRational },
    #[error("inconsistent components: {0}")]
    InconsistentComponents(String),
}

/// Symbolic space built from named base spaces.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SpaceExpr {
    Base { name: String, chi: i64 },
    Circle,
    Point,
    Wedge(Vec<SpaceExpr>),
    DisjointUnion(Vec<SpaceExpr>),
}

impl SpaceExpr {
    pub fn base(name: &str, chi: i64) -> Self {
        SpaceExpr::Base {
            name: name.to_string(),
            chi,
        }
    }

    pub fn chi(&self) -> i64 {
        match self {
            SpaceExpr::Base { chi, .. } => *chi,
            SpaceExpr::Circle => 0,
            SpaceExpr::Point => 1,
            SpaceExpr::Wedge(parts) => {
                parts.iter().map(SpaceExpr::chi).sum::<i64>() - (parts.len() as i64 - 1)
            }
            SpaceExpr::DisjointUnion(parts) => parts.iter().map(SpaceExpr::chi).sum(),
        }
    }
}

impl fmt::Display for SpaceExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpaceExpr::Base { name, .. } => f.write_str(name),
            SpaceExpr::Circle => f.write_str("S1"),
            SpaceExpr::Point => f.write_str("pt"),
            SpaceExpr::Wedge(parts) => {
                for (i, p) in parts.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" v ")?;
                    }
                    if matches!(p, SpaceExpr::DisjointUnion(_)) {
                        write!(f, "({p})")?;
                    } else {
                        write!(f, "{p}")?;
                    }
                }
                Ok(())
            }
            SpaceExpr::DisjointUnion(parts) => {
                for (i, p) in parts.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" | ")?;
                    }
                    write!(f, "{p}")?;
                }
                Ok(())
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum HomotopyDescriptor {
    Contractible,
    /// `B_n(space)`; `B_0` is empty.
    Bary {
        n: u64,
        space: SpaceExpr,
    },
    Suspension(Box<HomotopyDescriptor>),
}

impl HomotopyDescriptor {
    pub fn bary(n: u64, space: SpaceExpr) -> Self {
        HomotopyDescriptor::Bary { n, space }
    }

    pub fn suspension(inner: HomotopyDescriptor) -> Self {
        HomotopyDescriptor::Suspension(Box::new(inner))
    }
}

impl fmt::Display for HomotopyDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HomotopyDescriptor::Contractible => f.write_str("contractible"),
            HomotopyDescriptor::Bary { n, space } => write!(f, "B_{n}({space})"),
            HomotopyDescriptor::Suspension(inner) => write!(f, "susp({inner})"),
        }
    }
}

pub fn chi_of_descriptor(d: &HomotopyDescriptor) -> BigInt {
    match d {
        HomotopyDescriptor::Contractible => BigInt::one(),
        HomotopyDescriptor::Bary { n: 0, .. } => BigInt::from(0),
        HomotopyDescriptor::Bary { n, space } => {
            let n = *n as i64;
            BigInt::one() - binom(n - space.chi(), n)
        }
        HomotopyDescriptor::Suspension(inner) => chi_suspension(&chi_of_descriptor(inner), 1),
    }
}

/// `B_n(X, p_I)`: configurations with at most `n` generic points plus mass on
/// the marked points `I`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ConicPiece {
    pub n: u64,
    pub indices: BTreeSet<usize>,
}

impl ConicPiece {
    pub fn new(n: u64, indices: impl IntoIterator<Item = usize>) -> Self {
        ConicPiece {
            n,
            indices: indices.into_iter().collect(),
        }
    }
}

impl fmt::Display for ConicPiece {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "B_{}(X", self.n)?;
        for i in &self.indices {
            write!(f, ", p{i}")?;
        }
        f.write_str(")")
    }
}

/// One piece `B_{floor(rho - w_I)}(X, p_I)` per subset `I` with a
/// non-negative floor. Points of weight exactly 1 are not singular and are
/// eliminated first; the remaining pieces keep the original labels. Any
/// weight above 1 is rejected.
pub fn colimit_pieces(instance: &ValidatedInstance) -> Result<Vec<ConicPiece>, ClassifyError> {
    let one = ExactRational::one();
    if let Some(p) = instance.points().iter().find(|p| p.weight > one) {
        return Err(ClassifyError::WeightOutOfRange {
            label: p.label,
            weight: p.weight.clone(),
        });
    }
    // unit elimination relabels survivors 1.. in original label order
    let mut survivors: Vec<usize> = instance
        .points()
        .iter()
        .filter(|p| p.weight != one)
        .map(|p| p.label)
        .collect();
    survivors.sort_unstable();
    let reduced = normalize_drop_unit_weights(instance);
    Ok(reduced
        .subset_weights()
        .filter_map(|s| {
            let n = nonneg_floor(&(reduced.rho() - &s.total))?;
            Some(ConicPiece::new(
                n as u64,
                s.labels.iter().map(|&l| survivors[l - 1]),
            ))
        })
        .collect())
}

/// `a ⊆ b` iff `a.n <= b.n` and the marked points of `a` outside `b` number
/// at most `b.n - a.n` (they can be absorbed as generic points).
pub fn piece_includes(a: &ConicPiece, b: &ConicPiece) -> bool {
    if a.n > b.n {
        return false;
    }
    let outside = a.indices.difference(&b.indices).count() as u64;
    outside <= b.n - a.n
}

pub fn maximal_among(pieces: &[ConicPiece]) -> Vec<ConicPiece> {
    pieces
        .iter()
        .filter(|a| !pieces.iter().any(|b| b != *a && piece_includes(a, b)))
        .cloned()
        .collect()
}

pub fn maximal_pieces(instance: &ValidatedInstance) -> Result<Vec<ConicPiece>, ClassifyError> {
    Ok(maximal_among(&colimit_pieces(instance)?))
}

fn floor_u64(q: &ExactRational) -> u64 {
    nonneg_floor(q).expect("rho is positive") as u64
}

fn check_at_most_one(instance: &ValidatedInstance) -> Result<(), ClassifyError> {
    let one = ExactRational::one();
    match instance.points().iter().find(|p| p.weight > one) {
        Some(p) => Err(ClassifyError::OutOfScope(format!(
            "weight w_{} = {} exceeds 1",
            p.label, p.weight
        ))),
        None => Ok(()),
    }
}

fn base_x(instance: &ValidatedInstance) -> SpaceExpr {
    SpaceExpr::base("X", instance.chi_c())
}

/// One singular point of weight `0 < w <= 1` on a connected X.
pub fn classify_r1(instance: &ValidatedInstance) -> Result<HomotopyDescriptor, ClassifyError> {
    if instance.r() != 1 {
        return Err(ClassifyError::OutOfScope(format!(
            "expected one singular point, got {}",
            instance.r()
        )));
    }
    check_at_most_one(instance)?;
    let rho = instance.rho();
    let w = &instance.points()[0].weight;
    if (rho - w).floor() < rho.floor() {
        Ok(HomotopyDescriptor::bary(floor_u64(rho), base_x(instance)))
    } else {
        Ok(HomotopyDescriptor::Contractible)
    }
}

/// The five regimes for two singular points `w1 <= w2 <= 1`, with
/// `rho = n + eps`. Earlier cases win at ties.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TwoPointCase {
    /// `w1 + w2 <= eps`
    BothFit,
    /// `w1, w2 <= eps < w1 + w2`
    EachFits,
    /// `w1 <= eps < w2`
    LighterFits,
    /// `eps < w1, w2` and `w1 + w2 <= 1 + eps`
    PairTradesOne,
    /// `w1 + w2 > 1 + eps`
    NeitherHelps,
}

impl TwoPointCase {
    /// Position in the case table, 1-based.
    pub fn number(self) -> u8 {
        match self {
            TwoPointCase::BothFit => 1,
            TwoPointCase::EachFits => 2,
            TwoPointCase::LighterFits => 3,
            TwoPointCase::PairTradesOne => 4,
            TwoPointCase::NeitherHelps => 5,
        }
    }
}

pub fn two_point_case(w1: &ExactRational, w2: &ExactRational, rho: &ExactRational) -> TwoPointCase {
    debug_assert!(w1 <= w2);
    let eps = rho.fract();
    let sum = w1 + w2;
    let one_eps = &ExactRational::one() + &eps;
    if sum <= eps {
        TwoPointCase::BothFit
    } else if w1 <= &eps && w2 <= &eps {
        TwoPointCase::EachFits
    } else if w1 <= &eps {
        TwoPointCase::LighterFits
    } else if sum <= one_eps {
        TwoPointCase::PairTradesOne
    } else {
        TwoPointCase::NeitherHelps
    }
}

fn two_points(
    instance: &ValidatedInstance,
) -> Result<(&ExactRational, &ExactRational), ClassifyError> {
    if instance.r() != 2 {
        return Err(ClassifyError::OutOfScope(format!(
            "expected two singular points, got {}",
            instance.r()
        )));
    }
    check_at_most_one(instance)?;
    let p = instance.points();
    Ok((&p[0].weight, &p[1].weight))
}

/// Two singular points on a connected X.
pub fn classify_r2_connected(
    instance: &ValidatedInstance,
) -> Result<HomotopyDescriptor, ClassifyError> {
    let (w1, w2) = two_points(instance)?;
    let n = floor_u64(instance.rho());
    let x_circle = SpaceExpr::Wedge(vec![base_x(instance), SpaceExpr::Circle]);
    Ok(match two_point_case(w1, w2, instance.rho()) {
        TwoPointCase::BothFit | TwoPointCase::LighterFits => HomotopyDescriptor::Contractible,
        TwoPointCase::EachFits => {
            HomotopyDescriptor::suspension(HomotopyDescriptor::bary(n, x_circle))
        }
        TwoPointCase::PairTradesOne => HomotopyDescriptor::bary(n, x_circle),
        TwoPointCase::NeitherHelps => HomotopyDescriptor::bary(n, base_x(instance)),
    })
}

/// How two singular points sit in `X = A1 ⊔ A2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Placement {
    /// One point in each component.
    OneEach,
    /// Both points in `A1`.
    BothInFirst,
}

impl Placement {
    pub fn token(self) -> &'static str {
        match self {
            Placement::OneEach => "one-each",
            Placement::BothInFirst => "both-first",
        }
    }
}

/// Two singular points on `A1 ⊔ A2` with `chi(A1) + chi(A2) = chi_c`.
pub fn classify_r2_two_components(
    instance: &ValidatedInstance,
    placement: Placement,
    chi_a: i64,
    chi_b: i64,
) -> Result<HomotopyDescriptor, ClassifyError> {
    if chi_a.checked_add(chi_b) != Some(instance.chi_c()) {
        return Err(ClassifyError::InconsistentComponents(format!(
            "chi(A1) + chi(A2) = {chi_a} + {chi_b} differs from chi_c = {}",
            instance.chi_c()
        )));
    }
    let (w1, w2) = two_points(instance)?;
    let n = floor_u64(instance.rho());
    let a1 = SpaceExpr::base("A1", chi_a);
    let a2 = SpaceExpr::base("A2", chi_b);
    let identified = match placement {
        Placement::OneEach => SpaceExpr::Wedge(vec![a1.clone(), a2.clone()]),
        Placement::BothInFirst => SpaceExpr::DisjointUnion(vec![
            SpaceExpr::Wedge(vec![a1.clone(), SpaceExpr::Circle]),
            a2.clone(),
        ]),
    };
    Ok(match two_point_case(w1, w2, instance.rho()) {
        TwoPointCase::BothFit | TwoPointCase::LighterFits => HomotopyDescriptor::Contractible,
        TwoPointCase::EachFits => {
            HomotopyDescriptor::suspension(HomotopyDescriptor::bary(n, identified))
        }
        TwoPointCase::PairTradesOne => HomotopyDescriptor::bary(n, identified),
        TwoPointCase::NeitherHelps => {
            HomotopyDescriptor::bary(n, SpaceExpr::DisjointUnion(vec![a1, a2]))
        }
    })
}

/// Two-component layout read off an instance's component list: exactly two
/// components holding both singular points. Returns the placement and the
/// χ values ordered so that `A1` holds the points when both share a
/// component.
pub fn placement_from_components(
    instance: &ValidatedInstance,
) -> Result<Option<(Placement, i64, i64)>, ClassifyError> {
    let Some(components) = &instance.space().components else {
        return Ok(None);
    };
    if components.len() != 2 {
        return Err(ClassifyError::OutOfScope(format!(
            "{} components; only two-component spaces are classified",
            components.len()
        )));
    }
    let (c1, c2) = (&components[0], &components[1]);
    Ok(Some(
        match (c1.singular_indices.len(), c2.singular_indices.len()) {
            (1, 1) => (Placement::OneEach, c1.chi_c, c2.chi_c),
            (2, 0) => (Placement::BothInFirst, c1.chi_c, c2.chi_c),
            (0, 2) => (Placement::BothInFirst, c2.chi_c, c1.chi_c),
            (a, b) => {
                return Err(ClassifyError::OutOfScope(format!(
                    "components hold {a} and {b} singular points"
                )))
            }
        },
    ))
}

/// Dispatches on the number of singular points and the component layout.
/// With no singular points the space is `B_floor(rho)(X)` by definition.
pub fn classify(
    instance: &ValidatedInstance,
    two_components: Option<(Placement, i64, i64)>,
) -> Result<HomotopyDescriptor, ClassifyError> {
    let layout = match two_components {
        Some(l) => Some(l),
        None => placement_from_components(instance)?,
    };
    match instance.r() {
        0 => Ok(HomotopyDescriptor::bary(
            floor_u64(instance.rho()),
            base_x(instance),
        )),
        1 => classify_r1(instance),
        2 => match layout {
            Some((placement, a, b)) => classify_r2_two_components(instance, placement, a, b),
            None => classify_r2_connected(instance),
        },
        r => Err(ClassifyError::OutOfScope(format!(
            "{r} singular points; homotopy types are known for r <= 2"
        ))),
    }
}

fn chi_bary(n: i64, chi: i64) -> BigInt {
    if n == 0 {
        BigInt::from(0)
    } else {
        BigInt::one() - binom(n - chi, n)
    }
}

/// χ of `B_k(A ⊔ B)` evaluated term by term on its wedge decomposition
///
/// ```text
/// B_k(A) v ΣB_{k-1}(A) v B_k(B) v ΣB_{k-1}(B)
///   v (v_{l=1..k-1} B_{k-l}(A) * B_l(B)) v (v_{l=2..k-1} Σ(B_{k-l}(A) * B_{l-1}(B)))
/// ```
///
/// using `χ(B_n(Y)) = 1 - C(n - χ(Y), n)` on each side. There are `2k + 1`
/// summands, hence `2k` repeated wedge points.
pub fn chi_disjoint_union_decomposition(chi_a: i64, chi_b: i64, k: u32) -> BigInt {
    assert!(k >= 2, "decomposition needs k >= 2");
    let k = i64::from(k);
    let a = |n: i64| ChiSpace::compact(chi_bary(n, chi_a));
    let b = |n: i64| ChiSpace::compact(chi_bary(n, chi_b));

    let mut total = a(k).chi_c + chi_suspension(&a(k - 1).chi_c, 1);
    total += b(k).chi_c + chi_suspension(&b(k - 1).chi_c, 1);
    for l in 1..k {
        total += chi_join(&a(k - l), &b(l));
    }
    for l in 2..k {
        total += chi_suspension(&chi_join(&a(k - l), &b(l - 1)), 1);
    }
    total - 2 * k
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::chi_c_direct;
    use crate::space::ProblemInstance;

    fn q(s: &str) -> ExactRational {
        s.parse().unwrap()
    }

    fn inst(chi: i64, w: &[&str], rho: &str) -> ValidatedInstance {
        ProblemInstance::new(chi, w.iter().map(|s| q(s)).collect(), q(rho))
            .validate()
            .unwrap()
    }

    fn x() -> SpaceExpr {
        SpaceExpr::base("X", 3)
    }

    #[test]
    fn three_point_decomposition_pieces() {
        let v = inst(1, &["0.3", "0.4", "0.6"], "4.5");
        let pieces = colimit_pieces(&v).unwrap();
        assert_eq!(pieces.len(), 8);
        for p in [
            ConicPiece::new(4, [1]),
            ConicPiece::new(4, [2]),
            ConicPiece::new(3, [1, 2, 3]),
        ] {
            assert!(pieces.contains(&p));
        }
        let maximal: BTreeSet<_> = maximal_pieces(&v).unwrap().into_iter().collect();
        let expected: BTreeSet<_> = [
            ConicPiece::new(4, [1]),
            ConicPiece::new(4, [2]),
            ConicPiece::new(3, [1, 2, 3]),
        ]
        .into_iter()
        .collect();
        assert_eq!(maximal, expected);
    }

    #[test]
    fn pieces_simple_cases() {
        assert_eq!(
            colimit_pieces(&inst(2, &[], "7/2")).unwrap(),
            vec![ConicPiece::new(3, [])]
        );
        assert_eq!(
            maximal_pieces(&inst(2, &[], "7/2")).unwrap(),
            vec![ConicPiece::new(3, [])]
        );
        assert_eq!(
            colimit_pieces(&inst(2, &["1/2"], "1")).unwrap(),
            vec![ConicPiece::new(1, []), ConicPiece::new(0, [1])]
        );
        assert_eq!(
            maximal_pieces(&inst(2, &["1/2"], "1")).unwrap(),
            vec![ConicPiece::new(1, [])]
        );
        assert_eq!(
            colimit_pieces(&inst(2, &["1", "1/2"], "1")).unwrap(),
            vec![ConicPiece::new(1, []), ConicPiece::new(0, [2])]
        );
        assert!(matches!(
            colimit_pieces(&inst(2, &["1/2", "3/2"], "1")),
            Err(ClassifyError::WeightOutOfRange { label: 2, .. })
        ));
    }

    #[test]
    fn inclusion_examples() {
        let big = ConicPiece::new(3, [1, 2, 3]);
        assert!(!piece_includes(&big, &ConicPiece::new(4, [1])));
        assert!(piece_includes(&big, &big));
        assert!(piece_includes(
            &ConicPiece::new(0, [1]),
            &ConicPiece::new(1, [])
        ));
        assert!(piece_includes(
            &ConicPiece::new(2, [1]),
            &ConicPiece::new(3, [2])
        ));
        assert!(!piece_includes(
            &ConicPiece::new(2, [1, 3]),
            &ConicPiece::new(3, [2])
        ));
    }

    #[test]
    fn descriptor_text() {
        let d = HomotopyDescriptor::suspension(HomotopyDescriptor::bary(
            2,
            SpaceExpr::Wedge(vec![x(), SpaceExpr::Circle]),
        ));
        assert_eq!(d.to_string(), "susp(B_2(X v S1))");
        let u = SpaceExpr::DisjointUnion(vec![
            SpaceExpr::Wedge(vec![SpaceExpr::base("A1", 1), SpaceExpr::Circle]),
            SpaceExpr::base("A2", 1),
        ]);
        assert_eq!(u.to_string(), "A1 v S1 | A2");
        let nested = SpaceExpr::Wedge(vec![u, SpaceExpr::Point]);
        assert_eq!(nested.to_string(), "(A1 v S1 | A2) v pt");
        assert_eq!(HomotopyDescriptor::Contractible.to_string(), "contractible");
        assert_eq!(ConicPiece::new(3, [1, 3]).to_string(), "B_3(X, p1, p3)");
    }

    #[test]
    fn descriptor_chi_rules() {
        assert_eq!(
            chi_of_descriptor(&HomotopyDescriptor::Contractible),
            BigInt::one()
        );
        let inner = HomotopyDescriptor::bary(2, SpaceExpr::Wedge(vec![x(), SpaceExpr::Circle]));
        assert_eq!(chi_of_descriptor(&inner), BigInt::one());
        assert_eq!(
            chi_of_descriptor(&HomotopyDescriptor::suspension(inner)),
            BigInt::one()
        );
        assert_eq!(
            chi_of_descriptor(&HomotopyDescriptor::bary(0, x())),
            BigInt::from(0)
        );
        assert_eq!(SpaceExpr::Point.chi(), 1);
        assert_eq!(SpaceExpr::Circle.chi(), 0);
        assert_eq!(
            SpaceExpr::DisjointUnion(vec![x(), SpaceExpr::Point]).chi(),
            4
        );
    }

    #[test]
    fn r1_examples() {
        assert_eq!(
            classify_r1(&inst(3, &["7/10"], "5/2")).unwrap(),
            HomotopyDescriptor::bary(2, x())
        );
        assert_eq!(
            classify_r1(&inst(3, &["3/10"], "5/2")).unwrap(),
            HomotopyDescriptor::Contractible
        );
        assert_eq!(
            classify_r1(&inst(3, &["1"], "1")).unwrap(),
            HomotopyDescriptor::bary(1, x())
        );
        assert!(matches!(
            classify_r1(&inst(3, &["3/2"], "5/2")),
            Err(ClassifyError::OutOfScope(_))
        ));
        assert!(matches!(
            classify_r1(&inst(3, &[], "5/2")),
            Err(ClassifyError::OutOfScope(_))
        ));
    }

    #[test]
    fn r2_connected_examples() {
        let case2 = classify_r2_connected(&inst(3, &["3/10", "2/5"], "5/2")).unwrap();
        assert_eq!(case2.to_string(), "susp(B_2(X v S1))");
        let case4 = classify_r2_connected(&inst(3, &["3/5", "7/10"], "5/2")).unwrap();
        assert_eq!(case4.to_string(), "B_2(X v S1)");
        let case5 = classify_r2_connected(&inst(3, &["4/5", "9/10"], "5/2")).unwrap();
        assert_eq!(case5, HomotopyDescriptor::bary(2, x()));
        let case1 = classify_r2_connected(&inst(3, &["1/5", "1/5"], "5/2")).unwrap();
        assert_eq!(case1, HomotopyDescriptor::Contractible);
        let case3 = classify_r2_connected(&inst(3, &["1/5", "3/5"], "5/2")).unwrap();
        assert_eq!(case3, HomotopyDescriptor::Contractible);
        // unsorted input is sorted by validation
        let swapped = classify_r2_connected(&inst(3, &["2/5", "3/10"], "5/2")).unwrap();
        assert_eq!(swapped, case2);
    }

    #[test]
    fn r2_ties_resolve_to_earlier_case() {
        let q2 = |a: &str, b: &str, rho: &str| two_point_case(&q(a), &q(b), &q(rho)).number();
        // w1 + w2 = eps exactly
        assert_eq!(q2("1/4", "1/4", "5/2"), 1);
        // w2 = eps exactly
        assert_eq!(q2("1/4", "1/2", "5/2"), 2);
        // w1 + w2 = 1 + eps exactly
        assert_eq!(q2("3/4", "3/4", "5/2"), 4);
        // integer rho: eps = 0
        assert_eq!(q2("1/2", "1/2", "3"), 4);
        assert_eq!(q2("1/2", "1", "3"), 5);
    }

    #[test]
    fn two_component_examples() {
        let v = inst(3, &["3/10", "2/5"], "5/2");
        let one_each = classify_r2_two_components(&v, Placement::OneEach, 1, 2).unwrap();
        assert_eq!(one_each.to_string(), "susp(B_2(A1 v A2))");
        let both = classify_r2_two_components(&v, Placement::BothInFirst, 1, 2).unwrap();
        assert_eq!(both.to_string(), "susp(B_2(A1 v S1 | A2))");
        assert_eq!(chi_of_descriptor(&one_each), chi_of_descriptor(&both));

        let v5 = inst(3, &["4/5", "9/10"], "5/2");
        let a = classify_r2_two_components(&v5, Placement::OneEach, 1, 2).unwrap();
        let b = classify_r2_two_components(&v5, Placement::BothInFirst, 1, 2).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.to_string(), "B_2(A1 | A2)");

        assert!(matches!(
            classify_r2_two_components(&v, Placement::OneEach, 1, 1),
            Err(ClassifyError::InconsistentComponents(_))
        ));
    }

    #[test]
    fn printed_two_component_conditions_match_eps_form() {
        // conditions written with floor(rho) + w_i against rho
        let printed = |w1: &ExactRational, w2: &ExactRational, rho: &ExactRational| -> u8 {
            let n = ExactRational::from_integer(rho.floor());
            let one = ExactRational::one();
            let s1 = &n + w1;
            let s2 = &n + w2;
            let s12 = &s1 + w2;
            if s12 <= *rho {
                1
            } else if s1 <= *rho && s2 <= *rho {
                2
            } else if s1 <= *rho && s2 > *rho {
                3
            } else if *rho < s1 && *rho < s2 && s12 <= &one + rho {
                4
            } else {
                5
            }
        };
        for d in 1..=12i64 {
            for a in 1..=d {
                for b in a..=d {
                    let (w1, w2) = (ExactRational::new(a, d), ExactRational::new(b, d));
                    for rho_num in 1..=40 {
                        let rho = ExactRational::new(rho_num, 8);
                        assert_eq!(
                            printed(&w1, &w2, &rho),
                            two_point_case(&w1, &w2, &rho).number(),
                            "w=({w1},{w2}) rho={rho}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn dispatcher() {
        assert_eq!(
            classify(&inst(3, &[], "5/2"), None).unwrap(),
            HomotopyDescriptor::bary(2, x())
        );
        assert!(matches!(
            classify(&inst(3, &["1/2", "1/2", "1/2"], "5/2"), None),
            Err(ClassifyError::OutOfScope(_))
        ));
        let with_components = ProblemInstance::new(3, vec![q("3/10"), q("2/5")], q("5/2"))
            .with_components(vec![
                crate::space::ComponentSpec {
                    chi_c: 1,
                    is_compact: true,
                    singular_indices: vec![],
                },
                crate::space::ComponentSpec {
                    chi_c: 2,
                    is_compact: true,
                    singular_indices: vec![1, 2],
                },
            ])
            .validate()
            .unwrap();
        let d = classify(&with_components, None).unwrap();
        assert_eq!(d.to_string(), "susp(B_2(A1 v S1 | A2))");
        if let HomotopyDescriptor::Suspension(inner) = &d {
            if let HomotopyDescriptor::Bary { space, .. } = inner.as_ref() {
                assert_eq!(space.chi(), 2);
            }
        }
    }

    #[test]
    fn decomposition_examples() {
        // two contractible components
        assert_eq!(
            chi_disjoint_union_decomposition(1, 1, 2),
            BigInt::one() - binom(0, 2)
        );
        // B_2(A ⊔ pt): χB_2(A) + (2 - χA) - 1
        for n in -4..=4 {
            let expected = chi_bary(2, n) + (2 - n) - 1;
            assert_eq!(chi_disjoint_union_decomposition(n, 1, 2), expected);
        }
        // B_2(A ⊔ B) ≃ B_2(A) v Σ(A × B) v B_2(B)
        for c1 in -3..=3 {
            for c2 in -3..=3 {
                let expected = chi_bary(2, c1) + (2 - c1 * c2) + chi_bary(2, c2) - 2;
                assert_eq!(chi_disjoint_union_decomposition(c1, c2, 2), expected);
            }
        }
    }

    #[test]
    fn decomposition_matches_closed_form() {
        for c1 in -6..=6 {
            for c2 in -6..=6 {
                for k in 2..=10u32 {
                    let k64 = i64::from(k);
                    assert_eq!(
                        chi_disjoint_union_decomposition(c1, c2, k),
                        BigInt::one() - binom(k64 - c1 - c2, k64)
                    );
                }
            }
        }
    }

    #[test]
    fn r1_agrees_with_engine() {
        for chi in -5..=5 {
            for wn in 1..=10 {
                for rn in 1..=24 {
                    let v = ProblemInstance::new(
                        chi,
                        vec![ExactRational::new(wn, 10)],
                        ExactRational::new(rn, 4),
                    )
                    .validate()
                    .unwrap();
                    let d = classify_r1(&v).unwrap();
                    assert_eq!(chi_of_descriptor(&d), chi_c_direct(&v).chi_c, "{v:?}");
                }
            }
        }
    }
}
