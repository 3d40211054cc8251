//! Seeded random instances for cross-checking.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::oracle::FiniteWeightedSpace;
use crate::rational::ExactRational;
use crate::space::ProblemInstance;

/// Uniform on fractions `p/q` in `(0, max]` with `q <= max_denom`.
fn random_fraction(rng: &mut ChaCha8Rng, max: i64, max_denom: i64) -> ExactRational {
    let q = rng.gen_range(1..=max_denom);
    let p = rng.gen_range(1..=max * q);
    ExactRational::new(p, q)
}

/// Engine instances: `chi_c` in `[-10, 10]`, up to 8 weights in `(0, 2]`
/// with denominators up to 20, `rho` in `(0, 12]`.
pub struct EngineCorpus {
    rng: ChaCha8Rng,
}

impl EngineCorpus {
    pub fn new(seed: u64) -> Self {
        EngineCorpus {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }
}

impl Iterator for EngineCorpus {
    type Item = ProblemInstance;

    fn next(&mut self) -> Option<ProblemInstance> {
        let rng = &mut self.rng;
        let chi_c = rng.gen_range(-10..=10);
        let r = rng.gen_range(0..=8);
        let weights = (0..r).map(|_| random_fraction(rng, 2, 20)).collect();
        let rho = random_fraction(rng, 12, 20);
        Some(ProblemInstance::new(chi_c, weights, rho))
    }
}

/// A finite weighted space with a threshold.
#[derive(Debug, Clone)]
pub struct OracleCase {
    pub space: FiniteWeightedSpace,
    pub rho: ExactRational,
}

/// Finite spaces with up to 10 vertices; each vertex weight is 1 or a
/// fraction in `(0, 2]` with denominator up to 12; `rho` in `(0, m + 1]`.
pub struct OracleCorpus {
    rng: ChaCha8Rng,
}

impl OracleCorpus {
    pub fn new(seed: u64) -> Self {
        OracleCorpus {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }
}

impl Iterator for OracleCorpus {
    type Item = OracleCase;

    fn next(&mut self) -> Option<OracleCase> {
        let rng = &mut self.rng;
        let m = rng.gen_range(1..=10usize);
        let listed = rng.gen_range(0..=m);
        let weights: Vec<ExactRational> = (0..listed)
            .map(|_| {
                if rng.gen_bool(0.2) {
                    ExactRational::one()
                } else {
                    random_fraction(rng, 2, 12)
                }
            })
            .collect();
        let space = FiniteWeightedSpace::new(m, &weights).expect("corpus sizes are in range");
        let rho = random_fraction(rng, m as i64 + 1, 12);
        Some(OracleCase { space, rho })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_per_seed() {
        let a: Vec<_> = EngineCorpus::new(7).take(20).collect();
        let b: Vec<_> = EngineCorpus::new(7).take(20).collect();
        assert_eq!(a, b);
        let c: Vec<_> = EngineCorpus::new(8).take(20).collect();
        assert_ne!(a, c);
    }

    #[test]
    fn engine_ranges() {
        let two = ExactRational::from_integer(2);
        let twelve = ExactRational::from_integer(12);
        for inst in EngineCorpus::new(1).take(500) {
            assert!((-10..=10).contains(&inst.chi_c));
            assert!(inst.weights.len() <= 8);
            assert!(inst.weights.iter().all(|w| w.is_positive() && *w <= two));
            assert!(inst.rho.is_positive() && inst.rho <= twelve);
            assert!(inst.validate().is_ok());
        }
    }

    #[test]
    fn oracle_ranges() {
        for case in OracleCorpus::new(1).take(500) {
            let m = case.space.vertex_count();
            assert!((1..=10).contains(&m));
            assert!(case.rho.is_positive());
            assert!(case.rho <= ExactRational::from_integer(m as i64 + 1));
        }
    }
}
