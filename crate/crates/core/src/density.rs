//! Empirical density of non-vanishing counts modulo m, compared against
//! the 1/(k * sum a_i) lower bound.

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::numbers::Rational;
use crate::oracle::PartitionSpec;

/// Density of {n <= N : count(n) not congruent to 0 mod m} over a horizon.
#[derive(Debug, Clone)]
pub struct DensityResult {
    pub spec: PartitionSpec,
    pub modulus: u64,
    pub horizon: u64,
    /// Number of n in [0, N] with a non-zero residue.
    pub hits: u64,
    /// hits / (N + 1), counting over the inclusive range [0, N].
    pub density: Rational,
    /// hits / N, the convention that divides by the horizon itself
    /// (undefined at N = 0).
    pub density_over_horizon: Option<Rational>,
    /// The limit lower bound 1 / (k * sum a_i).
    pub bound: Rational,
    /// True when density < bound. Informational: the bound constrains the
    /// liminf, so a finite-horizon dip is not a contradiction.
    pub violation: bool,
}

/// The lower bound 1 / (k * (a_1 + ... + a_r)), exact.
pub fn density_bound(spec: &PartitionSpec) -> Rational {
    let sum: u64 = spec.parts().iter().sum();
    Rational::new(
        BigInt::from(1),
        BigInt::from(spec.multiplicity() as u64) * BigInt::from(sum),
    )
}

/// Count non-zero residues of the counting function modulo m over [0, N].
///
/// The series convolution is reduced mod m as it runs, so memory stays at
/// one u64 per index regardless of how large the true counts grow.
pub fn density_mod(spec: &PartitionSpec, modulus: u64, horizon: u64) -> Result<DensityResult> {
    if modulus < 2 {
        return Err(Error::InvalidInput("modulus must be >= 2".into()));
    }
    let residues = count_series_mod(spec, modulus, horizon);
    let hits = residues.iter().filter(|&&v| v != 0).count() as u64;
    let density = Rational::new(BigInt::from(hits), BigInt::from(horizon + 1));
    let density_over_horizon = if horizon > 0 {
        Some(Rational::new(BigInt::from(hits), BigInt::from(horizon)))
    } else {
        None
    };
    let bound = density_bound(spec);
    let violation = density < bound;
    Ok(DensityResult {
        spec: spec.clone(),
        modulus,
        horizon,
        hits,
        density,
        density_over_horizon,
        bound,
        violation,
    })
}

/// The counting series reduced mod m during convolution.
pub fn count_series_mod(spec: &PartitionSpec, modulus: u64, horizon: u64) -> Vec<u64> {
    let n_max = horizon as usize;
    let mut values = vec![0u64; n_max + 1];
    values[0] = 1 % modulus;
    for e in spec.expand() {
        let e = e as usize;
        for n in e..=n_max {
            values[n] = (values[n] + values[n - e]) % modulus;
        }
    }
    values
}
