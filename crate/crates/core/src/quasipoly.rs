//! Quasi-polynomial representation of the counting function.
//!
//! A [`QuasiPolynomial`] stores one row of exact coefficients per residue
//! class of its period. Two independent constructors are provided:
//! a closed-form one (per-coefficient formula, with a literal as-printed
//! variant kept for auditing) and an oracle-side fit that interpolates the
//! series counts through a Vandermonde solve. [`count_closed_form`] is the
//! direct closed form for a single count.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use crate::barnes::{solve_exact, RationalMatrix};
use crate::error::{Error, Result};
use crate::numbers::{
    bigint_pow, binomial, factorial, is_nonnegative_integer, stirling_first_unsigned, Rational,
};
use crate::oracle::{bounded_composition_count, count_series, PartitionSpec};

/// A function n -> sum_m coeffs[n mod P][m] * n^m with exact rational
/// coefficients, one row per residue class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuasiPolynomial {
    coeffs: Vec<Vec<Rational>>,
}

impl QuasiPolynomial {
    /// Build from per-residue coefficient rows (constant term first).
    /// All rows must have equal, non-zero length.
    pub fn from_rows(coeffs: Vec<Vec<Rational>>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::InvalidInput(
                "quasi-polynomial needs at least one row".into(),
            ));
        }
        let width = coeffs[0].len();
        if width == 0 || coeffs.iter().any(|r| r.len() != width) {
            return Err(Error::InvalidInput(
                "coefficient rows must have equal non-zero length".into(),
            ));
        }
        Ok(QuasiPolynomial { coeffs })
    }

    /// The period P (number of residue rows).
    pub fn period(&self) -> u64 {
        self.coeffs.len() as u64
    }

    /// The nominal degree (row width minus one).
    pub fn degree(&self) -> usize {
        self.coeffs[0].len() - 1
    }

    /// The coefficient row for residue class s.
    pub fn row(&self, s: u64) -> &[Rational] {
        &self.coeffs[(s % self.period()) as usize]
    }

    /// All rows, indexed by residue.
    pub fn rows(&self) -> &[Vec<Rational>] {
        &self.coeffs
    }

    /// True when every coefficient vanishes.
    pub fn is_zero(&self) -> bool {
        self.coeffs
            .iter()
            .all(|row| row.iter().all(|c| c.is_zero()))
    }

    /// Exact evaluation at n, using the residue row n mod P.
    pub fn evaluate(&self, n: u64) -> Rational {
        let row = self.row(n);
        let x = Rational::from_integer(BigInt::from(n));
        let mut acc = Rational::zero();
        for c in row.iter().rev() {
            acc = acc * &x + c;
        }
        acc
    }
}

/// Iterator over the index tuples (l_1, ..., l_r) with
/// 0 <= l_s <= k (D/a_s - 1), in odometer order (last coordinate fastest).
pub struct IndexTuples {
    limits: Vec<u64>,
    next: Option<Vec<u64>>,
}

impl IndexTuples {
    /// The tuple range for a spec.
    pub fn for_spec(spec: &PartitionSpec) -> Self {
        let k = spec.multiplicity() as u64;
        let d = spec.period();
        let limits: Vec<u64> = spec.parts().iter().map(|&a| k * (d / a - 1)).collect();
        let next = Some(vec![0; limits.len()]);
        IndexTuples { limits, next }
    }

    /// Number of tuples: prod_s (k (D/a_s - 1) + 1).
    pub fn cardinality(&self) -> BigUint {
        let mut acc = BigUint::one();
        for &l in &self.limits {
            acc *= BigUint::from(l + 1);
        }
        acc
    }
}

impl Iterator for IndexTuples {
    type Item = Vec<u64>;

    fn next(&mut self) -> Option<Vec<u64>> {
        let current = self.next.clone()?;
        // advance the odometer
        let mut advanced = false;
        if let Some(tuple) = self.next.as_mut() {
            for i in (0..tuple.len()).rev() {
                if tuple[i] < self.limits[i] {
                    tuple[i] += 1;
                    for t in tuple.iter_mut().skip(i + 1) {
                        *t = 0;
                    }
                    advanced = true;
                    break;
                }
            }
        }
        if !advanced {
            self.next = None;
        }
        Some(current)
    }
}

/// Per-tuple data shared by the closed forms: the weighted congruence table
/// with dot = a . l and weight = prod_s of the bounded-composition count for
/// (D/a_s, k, l_s).
pub(crate) struct TupleTable {
    pub entries: Vec<(u64, BigInt)>,
}

pub(crate) fn tuple_table(spec: &PartitionSpec) -> TupleTable {
    let k = spec.multiplicity();
    let d = spec.period();
    let mut entries = Vec::new();
    for tuple in IndexTuples::for_spec(spec) {
        let mut dot = 0u64;
        let mut weight = BigInt::one();
        for (s, &l) in tuple.iter().enumerate() {
            let a = spec.parts()[s];
            dot += a * l;
            weight *= bounded_composition_count(d / a, k, l as i64);
        }
        if !weight.is_zero() {
            entries.push((dot, weight));
        }
    }
    TupleTable { entries }
}

/// The periodic coefficient of n^m in the counting quasi-polynomial,
/// evaluated at n (only n mod D matters).
///
/// With `literal = false` the inner binomial is C(t, m); with
/// `literal = true` it is the printed C(k, m). The literal variant is kept
/// for the audit trail only: the witness a=(1), k=2 refutes it (it yields
/// d_1 = 2 where the counting function is n + 1).
pub fn coeff_d(spec: &PartitionSpec, m: usize, n: u64, literal: bool) -> Result<Rational> {
    let table = tuple_table(spec);
    coeff_d_with_table(spec, &table, m, n, literal)
}

fn coeff_d_with_table(
    spec: &PartitionSpec,
    table: &TupleTable,
    m: usize,
    n: u64,
    literal: bool,
) -> Result<Rational> {
    let rk = spec.total_parts();
    if m >= rk {
        return Err(Error::InvalidInput(format!(
            "coefficient index m={m} out of range 0..{rk} for {spec}"
        )));
    }
    let d = spec.period();
    let target = n % d;
    let k = spec.multiplicity() as u64;

    let mut acc = Rational::zero();
    for (dot, weight) in &table.entries {
        if dot % d != target {
            continue;
        }
        let mut inner = Rational::zero();
        for t in m..rk {
            let stir = stirling_first_unsigned(rk as u32, t as u32 + 1)?;
            let binom = if literal {
                binomial(k, m as u64)
            } else {
                binomial(t as u64, m as u64)
            };
            // 0^0 = 1 when dot = 0 and t = m
            let dot_pow = bigint_pow(&BigInt::from(*dot), (t - m) as u32);
            let term = Rational::new(stir * binom * dot_pow, BigInt::from(d).pow(t as u32));
            if (t - m).is_multiple_of(2) {
                inner += term;
            } else {
                inner -= term;
            }
        }
        acc += Rational::from_integer(weight.clone()) * inner;
    }
    Ok(acc / Rational::from_integer(factorial(rk as u64 - 1)))
}

/// Which constructor fills the coefficient table.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BuildMethod {
    /// Per-coefficient closed form with the corrected inner binomial C(t, m).
    Teo1,
    /// The same closed form with the binomial C(k, m) exactly as printed.
    Teo1Literal,
    /// Independent oracle-side fit: exact Vandermonde interpolation of the
    /// series counts through rk points per residue class.
    Fit,
}

/// Build the full period-D coefficient table for a spec.
pub fn build_quasipolynomial(spec: &PartitionSpec, method: BuildMethod) -> Result<QuasiPolynomial> {
    match method {
        BuildMethod::Teo1 => build_from_formula(spec, false),
        BuildMethod::Teo1Literal => build_from_formula(spec, true),
        BuildMethod::Fit => build_from_fit(spec),
    }
}

fn build_from_formula(spec: &PartitionSpec, literal: bool) -> Result<QuasiPolynomial> {
    let table = tuple_table(spec);
    let rk = spec.total_parts();
    let d = spec.period();
    let mut rows = Vec::with_capacity(d as usize);
    for s in 0..d {
        let mut row = Vec::with_capacity(rk);
        for m in 0..rk {
            row.push(coeff_d_with_table(spec, &table, m, s, literal)?);
        }
        rows.push(row);
    }
    QuasiPolynomial::from_rows(rows)
}

fn build_from_fit(spec: &PartitionSpec) -> Result<QuasiPolynomial> {
    let rk = spec.total_parts();
    let d = spec.period() as usize;
    let counts = count_series(spec, d * rk + d);
    let mut rows = Vec::with_capacity(d);
    for s in 0..d {
        let xs: Vec<u64> = (0..rk).map(|t| (s + t * d) as u64).collect();
        let mut matrix = RationalMatrix::zero(rk, rk);
        let mut rhs = Vec::with_capacity(rk);
        for (i, &x) in xs.iter().enumerate() {
            let mut pow = Rational::one();
            let xr = Rational::from_integer(BigInt::from(x));
            for m in 0..rk {
                matrix.set(i, m, pow.clone());
                pow *= &xr;
            }
            rhs.push(Rational::from_integer(BigInt::from(
                counts.value(x as usize).clone(),
            )));
        }
        // distinct abscissae make this Vandermonde system nonsingular
        let row = solve_exact(&matrix, &rhs)?;
        rows.push(row);
    }
    QuasiPolynomial::from_rows(rows)
}

/// The count at n by the direct closed form:
/// (1/(rk-1)!) * sum over congruent tuples of
/// weight * prod_{t=1}^{rk-1} ((n - a.l)/D + t).
///
/// Returns `Error::Consistency` if the sum is not a non-negative integer.
pub fn count_closed_form(spec: &PartitionSpec, n: u64) -> Result<BigUint> {
    let table = tuple_table(spec);
    let rk = spec.total_parts();
    let d = spec.period();
    let target = n % d;

    let mut acc = Rational::zero();
    for (dot, weight) in &table.entries {
        if dot % d != target {
            continue;
        }
        let base = Rational::new(BigInt::from(n) - BigInt::from(*dot), BigInt::from(d));
        let mut product = Rational::one();
        for t in 1..rk {
            product *= &base + Rational::from_integer(BigInt::from(t));
        }
        acc += Rational::from_integer(weight.clone()) * product;
    }
    acc /= Rational::from_integer(factorial(rk as u64 - 1));

    if !is_nonnegative_integer(&acc) {
        return Err(Error::Consistency(format!(
            "closed form produced non-integral or negative value {acc} at n={n} for {spec}"
        )));
    }
    Ok(acc.numer().to_biguint().expect("checked non-negative"))
}

/// Leading coefficient shared by every residue row:
/// 1 / ((rk-1)! * (a_1 ... a_r)^k).
pub fn leading_coefficient(spec: &PartitionSpec) -> Rational {
    let mut product = BigInt::one();
    for &a in spec.parts() {
        product *= BigInt::from(a);
    }
    let product_k = product.pow(spec.multiplicity());
    Rational::new(BigInt::one(), factorial(spec.degree() as u64) * product_k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numbers::{rat, rat_int};

    fn spec(parts: &[u64], k: u32) -> PartitionSpec {
        PartitionSpec::new(parts.to_vec(), k).unwrap()
    }

    #[test]
    fn index_tuples_enumeration() {
        // a=(1,2), k=1, D=2: limits (1, 0)
        let tuples: Vec<Vec<u64>> = IndexTuples::for_spec(&spec(&[1, 2], 1)).collect();
        assert_eq!(tuples, vec![vec![0, 0], vec![1, 0]]);

        let it = IndexTuples::for_spec(&spec(&[1, 2, 3], 2));
        // limits: (2*5, 2*2, 2*1) -> 11 * 5 * 3 tuples
        assert_eq!(it.cardinality(), BigUint::from(165u32));
        assert_eq!(IndexTuples::for_spec(&spec(&[1, 2, 3], 2)).count(), 165);
    }

    #[test]
    fn coeff_values_for_floor_function() {
        // p(n) = floor(n/2) + 1: d_1 = 1/2 everywhere, d_0 = 1 (even), 1/2 (odd)
        let s = spec(&[1, 2], 1);
        for n in [0u64, 1, 2, 3, 7, 8] {
            assert_eq!(coeff_d(&s, 1, n, false).unwrap(), rat(1, 2));
        }
        assert_eq!(coeff_d(&s, 0, 0, false).unwrap(), rat_int(1));
        assert_eq!(coeff_d(&s, 0, 2, false).unwrap(), rat_int(1));
        assert_eq!(coeff_d(&s, 0, 1, false).unwrap(), rat(1, 2));
        assert_eq!(coeff_d(&s, 0, 3, false).unwrap(), rat(1, 2));
        assert!(coeff_d(&s, 2, 0, false).is_err());
    }

    #[test]
    fn literal_binomial_is_refuted_by_single_part_witness() {
        // p_{(1),2}(n) = n + 1, so the true d_1 = 1; the literal form gives 2.
        let s = spec(&[1], 2);
        assert_eq!(coeff_d(&s, 1, 0, true).unwrap(), rat_int(2));
        assert_eq!(coeff_d(&s, 1, 0, false).unwrap(), rat_int(1));
        assert_eq!(coeff_d(&s, 0, 5, false).unwrap(), rat_int(1));
    }

    #[test]
    fn build_fit_matches_hand_tables() {
        let qp = build_quasipolynomial(&spec(&[1, 2], 1), BuildMethod::Fit).unwrap();
        assert_eq!(qp.period(), 2);
        assert_eq!(qp.degree(), 1);
        assert_eq!(qp.row(0), &[rat_int(1), rat(1, 2)]);
        assert_eq!(qp.row(1), &[rat(1, 2), rat(1, 2)]);

        let qp = build_quasipolynomial(&spec(&[1], 2), BuildMethod::Fit).unwrap();
        assert_eq!(qp.period(), 1);
        assert_eq!(qp.row(0), &[rat_int(1), rat_int(1)]);
    }

    #[test]
    fn formula_and_fit_agree() {
        for (parts, k) in [
            (vec![1, 2], 1u32),
            (vec![1, 2], 2),
            (vec![2, 3], 2),
            (vec![1], 2),
            (vec![3], 3),
        ] {
            let s = spec(&parts, k);
            let lhs = build_quasipolynomial(&s, BuildMethod::Teo1).unwrap();
            let rhs = build_quasipolynomial(&s, BuildMethod::Fit).unwrap();
            assert_eq!(lhs, rhs, "constructor mismatch for {s}");
        }
    }

    #[test]
    fn leading_coefficient_all_rows() {
        // 1/((rk-1)! (a_1...a_r)^k); for a=(1,2), k=2 this is 1/24
        assert_eq!(leading_coefficient(&spec(&[1, 2], 2)), rat(1, 24));
        for (parts, k) in [
            (vec![1, 2], 1u32),
            (vec![1, 2], 2),
            (vec![2, 3], 2),
            (vec![1, 2, 3], 2),
            (vec![1, 2], 3),
            (vec![3, 4, 6], 1),
        ] {
            let s = spec(&parts, k);
            let expect = leading_coefficient(&s);
            let qp = build_quasipolynomial(&s, BuildMethod::Fit).unwrap();
            for row in qp.rows() {
                assert_eq!(row[s.degree()], expect, "leading coefficient off for {s}");
            }
        }
    }

    #[test]
    fn formula_periodicity_in_n() {
        let s = spec(&[2, 3], 2);
        let d = s.period();
        for m in 0..s.total_parts() {
            for n in 0..2 * d {
                assert_eq!(
                    coeff_d(&s, m, n, false).unwrap(),
                    coeff_d(&s, m, n + d, false).unwrap()
                );
            }
        }
    }

    #[test]
    fn closed_form_hand_values() {
        assert_eq!(
            count_closed_form(&spec(&[1, 2], 1), 4).unwrap(),
            BigUint::from(3u32)
        );
        assert_eq!(
            count_closed_form(&spec(&[1, 2], 2), 4).unwrap(),
            BigUint::from(14u32)
        );
        assert_eq!(
            count_closed_form(&spec(&[3, 4, 6], 1), 0).unwrap(),
            BigUint::from(1u32)
        );
    }

    #[test]
    fn closed_form_matches_oracle() {
        for (parts, k) in [(vec![1, 2], 2u32), (vec![2, 3], 2), (vec![1, 2, 3], 2)] {
            let s = spec(&parts, k);
            let table = count_series(&s, 60);
            for n in 0..=60u64 {
                assert_eq!(
                    &count_closed_form(&s, n).unwrap(),
                    table.value(n as usize),
                    "mismatch at n={n} for {s}"
                );
            }
        }
    }

    #[test]
    fn evaluate_uses_residue_rows() {
        let qp = build_quasipolynomial(&spec(&[1, 2], 1), BuildMethod::Fit).unwrap();
        assert_eq!(qp.evaluate(7), rat_int(4));
        assert_eq!(qp.evaluate(8) - qp.evaluate(6), rat_int(1));

        let zero = QuasiPolynomial::from_rows(vec![vec![rat_int(0); 3]; 2]).unwrap();
        assert!(zero.is_zero());
        for n in 0..10 {
            assert_eq!(zero.evaluate(n), rat_int(0));
        }
    }
}
