//! Exact Euler characteristics of weighted barycenter spaces
//! `B_rho^{Q_r}(X)` and the degree of the associated Leray-Schauder map.
//!
//! An instance is `(chi_c(X), w_1..w_r, rho)`. Three independent algorithms
//! compute `chi_c`: the closed inclusion-exclusion formula ([`chi_c_direct`]),
//! a sum over strata ([`chi_c_strata`]), and a truncated formal series
//! ([`chi_c_series`]). Finite spaces have a face-counting oracle, and small
//! cases have a homotopy classifier.

pub mod binomial;
pub mod corpus;
pub mod engine;
pub mod homotopy;
pub mod oracle;
pub mod rational;
pub mod series;
pub mod space;

pub use binomial::{binom, ext_binomial};
pub use engine::{chi_c_direct, chi_c_strata, compute, ChiResult, Method, SubsetTerm};
pub use homotopy::{
    chi_of_descriptor, classify, ClassifyError, ConicPiece, HomotopyDescriptor, Placement,
    SpaceExpr,
};
pub use oracle::{oracle_chi, FiniteWeightedSpace, OracleError};
pub use rational::{BigInteger, ExactRational, ParseRationalError};
pub use series::{chen_lin_series, chi_c_series, SeriesSpec, SparseSeries};
pub use space::{
    ComponentSpec, InstanceError, ProblemInstance, SpaceDescriptor, SpaceKind, ValidatedInstance,
};
