//! Numerical toolkit for positivity in non-selfadjoint operator algebras at
//! finite matrix scale: accretive fractional powers, Cayley/F transforms,
//! numerical-range geometry, positivity cones, principal-ideal predicates,
//! and a block-algebra verification harness with quantitative bounds.

pub mod blockalg;
pub mod cmat;
pub mod cones;
pub mod error;
pub mod ideals;
pub mod io;
pub mod linalg;
pub mod numrange;
pub mod quadrature;
pub mod report;
pub mod rng;
pub mod suites;
pub mod transforms;

pub use cmat::{C64, CMat};
pub use error::{Error, Result};
pub use linalg::{HermEig, OrthoBasis, SpectrumList};
pub use numrange::{CigarSpec, NRBoundary, SectorCert};
pub use report::{SuiteReport, VerificationRecord};
pub use rng::SplitMix64;
pub use transforms::{PowerResult, QuadratureScheme};
