//! Exact computation of restricted multipartition counts and everything
//! derived from them: quasi-polynomial coefficient tables, wave
//! decompositions, polynomial parts, Bernoulli-Barnes numbers, block
//! Bernoulli determinants and reconstruction systems, non-vanishing
//! densities modulo m, and a floating verification layer for the zeta-side
//! identities. A fixed formula-audit registry evaluates every closed form
//! against independent oracles and reports PASS / FAIL / CORRECTED verdicts
//! with witnesses.
//!
//! All symbolic results are exact big rationals; the analytic layer uses
//! double-double floats with explicit tolerances.

pub mod analytic;
pub mod audit;
pub mod barnes;
pub mod density;
pub mod error;
pub mod numbers;
pub mod oracle;
pub mod quasipoly;
pub mod report;
pub mod waves;

pub use error::{Error, Result};
pub use numbers::Rational;
pub use oracle::PartitionSpec;
