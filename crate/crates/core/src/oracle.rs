//! Ground-truth counting by exact power-series expansion.
//!
//! [`count_series`] expands prod_i (1 - z^{a_i})^{-k} with big-integer
//! coefficients; every closed form in the crate is checked against it.
//! [`bounded_composition_counts`] and [`bounded_composition_count`] provide
//! the coefficients of (1 + t + ... + t^{N-1})^k by expansion and by
//! inclusion-exclusion respectively.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::numbers::{self, binomial};

/// A counting problem instance: the parts `a = (a_1, ..., a_r)` together
/// with the multiplicity `k` (each part used in k independent copies).
///
/// The period `D = lcm(a_1, ..., a_r)` is computed once at construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartitionSpec {
    parts: Vec<u64>,
    multiplicity: u32,
    period: u64,
}

impl PartitionSpec {
    /// Build a spec from the parts list and multiplicity k.
    ///
    /// Parts are kept in the given order; repeats are legal and meaningful.
    /// Fails on an empty list, a zero part, or k = 0.
    pub fn new(parts: Vec<u64>, multiplicity: u32) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::InvalidInput("parts list must be non-empty".into()));
        }
        if parts.contains(&0) {
            return Err(Error::InvalidInput("every part must be >= 1".into()));
        }
        if multiplicity == 0 {
            return Err(Error::InvalidInput("multiplicity k must be >= 1".into()));
        }
        let period = numbers::lcm_list(&parts)?;
        Ok(PartitionSpec {
            parts,
            multiplicity,
            period,
        })
    }

    /// The parts a_1, ..., a_r in their original order.
    pub fn parts(&self) -> &[u64] {
        &self.parts
    }

    /// The multiplicity k.
    pub fn multiplicity(&self) -> u32 {
        self.multiplicity
    }

    /// r, the number of parts.
    pub fn num_parts(&self) -> usize {
        self.parts.len()
    }

    /// r * k, the number of parts after expansion.
    pub fn total_parts(&self) -> usize {
        self.parts.len() * self.multiplicity as usize
    }

    /// rk - 1, the degree of the counting quasi-polynomial.
    pub fn degree(&self) -> usize {
        self.total_parts() - 1
    }

    /// D = lcm(a_1, ..., a_r), the period of the counting quasi-polynomial.
    pub fn period(&self) -> u64 {
        self.period
    }

    /// The expanded parts list: each a_i repeated k times, in order.
    pub fn expand(&self) -> Vec<u64> {
        let mut out = Vec::with_capacity(self.total_parts());
        for &p in &self.parts {
            for _ in 0..self.multiplicity {
                out.push(p);
            }
        }
        out
    }
}

impl std::fmt::Display for PartitionSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "a=(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "), k={}", self.multiplicity)
    }
}

/// Exact counts indexed by n = 0..n_max.
#[derive(Debug, Clone)]
pub struct CountTable {
    spec: PartitionSpec,
    values: Vec<BigUint>,
}

impl CountTable {
    /// The spec the table was computed for.
    pub fn spec(&self) -> &PartitionSpec {
        &self.spec
    }

    /// All counts, indexed by n.
    pub fn values(&self) -> &[BigUint] {
        &self.values
    }

    /// The count at n. Panics if n exceeds the table horizon.
    pub fn value(&self, n: usize) -> &BigUint {
        &self.values[n]
    }
}

/// Expand prod_i (1 - z^{a_i})^{-k} up to z^{n_max}, exactly.
///
/// Each geometric factor 1/(1 - z^e) is applied as an in-place prefix
/// update values[n] += values[n - e], once per element of the expanded
/// parts list.
pub fn count_series(spec: &PartitionSpec, n_max: usize) -> CountTable {
    let mut values = vec![BigUint::zero(); n_max + 1];
    values[0] = BigUint::one();
    for e in spec.expand() {
        let e = e as usize;
        for n in e..=n_max {
            let prev = values[n - e].clone();
            values[n] += prev;
        }
    }
    CountTable {
        spec: spec.clone(),
        values,
    }
}

/// Coefficients of (1 + t + ... + t^{bound-1})^k, by exact polynomial power.
///
/// Entry `total` counts the k-tuples (i_1, ..., i_k) with 0 <= i_t <= bound-1
/// summing to `total`; the result has length k(bound - 1) + 1.
pub fn bounded_composition_counts(bound: u64, k: u32) -> Vec<BigInt> {
    let bound = bound as usize;
    let base: Vec<BigInt> = vec![BigInt::one(); bound];
    let mut acc = vec![BigInt::one()];
    for _ in 0..k {
        acc = poly_mul(&acc, &base);
    }
    acc
}

fn poly_mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// The same count by inclusion-exclusion:
/// sum over i, j >= 0 with i*bound + j = total of (-1)^i C(k,i) C(j+k-1, j).
///
/// Out-of-range totals yield 0 (negative totals directly; totals beyond
/// k(bound-1) because the signed sum telescopes to zero there).
pub fn bounded_composition_count(bound: u64, k: u32, total: i64) -> BigInt {
    if total < 0 || total as u64 > k as u64 * (bound - 1) {
        return BigInt::zero();
    }
    let total = total as u64;
    let mut acc = BigInt::zero();
    let mut i = 0u64;
    while i <= k as u64 && i * bound <= total {
        let j = total - i * bound;
        let term = binomial(k as u64, i) * binomial(j + k as u64 - 1, j);
        if i.is_multiple_of(2) {
            acc += term;
        } else {
            acc -= term;
        }
        i += 1;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(parts: &[u64], k: u32) -> PartitionSpec {
        PartitionSpec::new(parts.to_vec(), k).unwrap()
    }

    #[test]
    fn spec_construction_and_derived_values() {
        let s = spec(&[1, 2], 2);
        assert_eq!(s.num_parts(), 2);
        assert_eq!(s.total_parts(), 4);
        assert_eq!(s.period(), 2);
        assert_eq!(spec(&[3, 4, 6], 1).period(), 12);
        assert!(PartitionSpec::new(vec![], 1).is_err());
        assert!(PartitionSpec::new(vec![0, 2], 1).is_err());
        assert!(PartitionSpec::new(vec![1, 2], 0).is_err());
    }

    #[test]
    fn expand_repeats_each_part() {
        assert_eq!(spec(&[1, 2], 2).expand(), vec![1, 1, 2, 2]);
        assert_eq!(spec(&[3], 3).expand(), vec![3, 3, 3]);
        assert_eq!(spec(&[2, 3, 5], 1).expand(), vec![2, 3, 5]);
    }

    #[test]
    fn count_series_hand_values() {
        // (1-z)^{-2} (1-z^2)^{-2}: convolved by hand
        let t = count_series(&spec(&[1, 2], 2), 5);
        let got: Vec<u64> = t
            .values()
            .iter()
            .map(|v| u64::try_from(v).unwrap())
            .collect();
        assert_eq!(got, vec![1, 2, 5, 8, 14, 20]);

        // stars and bars: p_{(1),3}(4) = C(4+2, 2) = 15
        let t = count_series(&spec(&[1], 3), 4);
        assert_eq!(u64::try_from(t.value(4)).unwrap(), 15);

        // every table starts at 1
        let t = count_series(&spec(&[2, 3, 5], 4), 0);
        assert_eq!(u64::try_from(t.value(0)).unwrap(), 1);
    }

    #[test]
    fn count_series_equals_expanded_single_copy() {
        for (parts, k) in [(vec![1, 2], 2u32), (vec![2, 3], 3), (vec![1, 2, 3], 2)] {
            let s = spec(&parts, k);
            let expanded = PartitionSpec::new(s.expand(), 1).unwrap();
            let lhs = count_series(&s, 60);
            let rhs = count_series(&expanded, 60);
            assert_eq!(lhs.values(), rhs.values());
        }
    }

    #[test]
    fn count_series_monotone_when_one_is_a_part() {
        let t = count_series(&spec(&[1, 2, 3], 2), 80);
        for n in 0..80 {
            assert!(t.value(n) <= t.value(n + 1), "not monotone at n={n}");
        }
    }

    #[test]
    fn composition_counts_hand_values() {
        let as_u64 =
            |v: Vec<BigInt>| -> Vec<i64> { v.iter().map(|x| i64::try_from(x).unwrap()).collect() };
        assert_eq!(as_u64(bounded_composition_counts(2, 2)), vec![1, 2, 1]);
        assert_eq!(
            as_u64(bounded_composition_counts(3, 2)),
            vec![1, 2, 3, 2, 1]
        );
        assert_eq!(as_u64(bounded_composition_counts(1, 5)), vec![1]);
    }

    #[test]
    fn composition_count_formula_hand_values() {
        assert_eq!(bounded_composition_count(3, 2, 2), BigInt::from(3));
        assert_eq!(bounded_composition_count(2, 2, 1), BigInt::from(2));
        assert_eq!(bounded_composition_count(9, 4, 0), BigInt::from(1));
        assert_eq!(bounded_composition_count(2, 2, -1), BigInt::from(0));
        assert_eq!(bounded_composition_count(2, 2, 3), BigInt::from(0));
    }

    #[test]
    fn composition_count_formula_matches_expansion() {
        for bound in 1..=12u64 {
            for k in 1..=6u32 {
                let table = bounded_composition_counts(bound, k);
                for (ell, expect) in table.iter().enumerate() {
                    let got = bounded_composition_count(bound, k, ell as i64);
                    assert_eq!(&got, expect, "mismatch at bound={bound}, k={k}, ell={ell}");
                }
                // just past the degree the signed sum must telescope to zero
                let past = table.len() as i64;
                assert!(bounded_composition_count(bound, k, past).is_zero());
            }
        }
    }

    #[test]
    fn composition_counts_symmetry_and_total() {
        for bound in 1..=8u64 {
            for k in 1..=5u32 {
                let table = bounded_composition_counts(bound, k);
                let deg = table.len() - 1;
                for ell in 0..=deg {
                    assert_eq!(table[ell], table[deg - ell]);
                }
                let total: BigInt = table.iter().sum();
                assert_eq!(total, BigInt::from(bound).pow(k));
            }
        }
    }
}
