//! Exact rational arithmetic and the special-number toolbox.
//!
//! Everything in this module is exact: values are arbitrary-precision
//! integers ([`BigInt`]) or fractions in lowest terms ([`Rational`]).
//!
//! - [`bernoulli_number`]: B_n with the convention B_1 = -1/2
//! - [`bernoulli_polynomial`]: B_n(x) = sum_k C(n,k) B_{n-k} x^k
//! - [`stirling_first_unsigned`]: coefficients of (x+1)(x+2)...(x+r-1)
//! - [`moebius`]: the classical Moebius function by trial factorization
//! - [`binomial`], [`multinomial`], [`rising_factorial`], [`lcm_list`]
//!
//! Bernoulli and Stirling values are memoized in process-wide caches; entries
//! are immutable once written, and the guarding mutex ensures readers never
//! observe a partially computed row.

use std::collections::BTreeMap;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// The universal exact scalar: an arbitrary-precision fraction kept in
/// lowest terms with a positive denominator.
pub type Rational = num_rational::BigRational;

/// Rational from an integer.
pub fn rat_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Rational `n/d`. Panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

fn bernoulli_cache() -> &'static Mutex<Vec<Rational>> {
    static CACHE: OnceLock<Mutex<Vec<Rational>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(vec![Rational::one()]))
}

fn stirling_cache() -> &'static Mutex<BTreeMap<u32, Vec<BigInt>>> {
    static CACHE: OnceLock<Mutex<BTreeMap<u32, Vec<BigInt>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(BTreeMap::new()))
}

/// The n-th Bernoulli number under the convention B_1 = -1/2.
///
/// Computed from the defining recurrence sum_{k=0}^{n} C(n+1,k) B_k = 0
/// for n >= 1, with B_0 = 1. Results are memoized.
pub fn bernoulli_number(n: usize) -> Rational {
    let mut table = bernoulli_cache().lock().unwrap();
    while table.len() <= n {
        let m = table.len();
        let mut acc = Rational::zero();
        for (k, b) in table.iter().enumerate() {
            acc += Rational::from_integer(binomial(m as u64 + 1, k as u64)) * b;
        }
        let next = -acc / rat_int(m as i64 + 1);
        table.push(next);
    }
    table[n].clone()
}

/// The Bernoulli polynomial B_n(x) = sum_{k=0}^{n} C(n,k) B_{n-k} x^k, exact.
pub fn bernoulli_polynomial(n: usize, x: &Rational) -> Rational {
    let mut acc = Rational::zero();
    let mut x_pow = Rational::one();
    for k in 0..=n {
        acc +=
            Rational::from_integer(binomial(n as u64, k as u64)) * bernoulli_number(n - k) * &x_pow;
        x_pow *= x;
    }
    acc
}

/// Unsigned Stirling number of the first kind, defined here as the
/// coefficient of x^{k-1} in the rising factorial
/// x^(r) = (x+1)(x+2)...(x+r-1), for 1 <= k <= r.
pub fn stirling_first_unsigned(r: u32, k: u32) -> Result<BigInt> {
    if r < 1 || k < 1 || k > r {
        return Err(Error::InvalidInput(format!(
            "stirling_first_unsigned requires 1 <= k <= r, got r={r}, k={k}"
        )));
    }
    let mut cache = stirling_cache().lock().unwrap();
    let row = cache.entry(r).or_insert_with(|| stirling_row(r));
    Ok(row[(k - 1) as usize].clone())
}

/// Expand (x+1)(x+2)...(x+r-1) into coefficients by increasing power of x.
fn stirling_row(r: u32) -> Vec<BigInt> {
    let mut coeffs = vec![BigInt::one()];
    for i in 1..r {
        // multiply by (x + i)
        let mut next = vec![BigInt::zero(); coeffs.len() + 1];
        for (p, c) in coeffs.iter().enumerate() {
            next[p] += c * BigInt::from(i);
            next[p + 1] += c;
        }
        coeffs = next;
    }
    coeffs
}

/// Classical Moebius function via trial factorization; requires n >= 1.
pub fn moebius(n: u64) -> Result<i32> {
    if n == 0 {
        return Err(Error::InvalidInput("moebius requires n >= 1".into()));
    }
    let mut n = n;
    let mut sign = 1;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return Ok(0);
            }
            sign = -sign;
        }
        p += 1;
    }
    if n > 1 {
        sign = -sign;
    }
    Ok(sign)
}

/// Binomial coefficient C(n, k); zero when k > n.
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// Multinomial coefficient C(n; k_1, ..., k_t) = n! / (k_1! ... k_t!).
/// The parts must sum to n.
pub fn multinomial(n: u64, parts: &[u64]) -> BigInt {
    debug_assert_eq!(parts.iter().sum::<u64>(), n);
    let mut remaining = n;
    let mut acc = BigInt::one();
    for &p in parts {
        acc *= binomial(remaining, p);
        remaining -= p;
    }
    acc
}

/// Rising factorial x^(r) = (x+1)(x+2)...(x+r-1); the empty product
/// (r = 0 or r = 1) is 1.
pub fn rising_factorial(x: &Rational, r: u32) -> Rational {
    let mut acc = Rational::one();
    for i in 1..r {
        acc *= x + rat_int(i as i64);
    }
    acc
}

/// n! as a BigInt.
pub fn factorial(n: u64) -> BigInt {
    let mut acc = BigInt::one();
    for i in 2..=n {
        acc *= BigInt::from(i);
    }
    acc
}

/// Least common multiple of a non-empty list of positive integers.
pub fn lcm_list(values: &[u64]) -> Result<u64> {
    if values.is_empty() {
        return Err(Error::InvalidInput(
            "lcm_list requires a non-empty list".into(),
        ));
    }
    let mut acc: u64 = 1;
    for &v in values {
        if v == 0 {
            return Err(Error::InvalidInput(
                "lcm_list requires positive entries".into(),
            ));
        }
        let g = num_integer::gcd(acc, v);
        let wide = (acc / g) as u128 * v as u128;
        acc = u64::try_from(wide)
            .map_err(|_| Error::InvalidInput("lcm_list overflowed u64".into()))?;
    }
    Ok(acc)
}

/// Exact integer power of a rational.
pub fn rational_pow(x: &Rational, e: u32) -> Rational {
    let mut acc = Rational::one();
    for _ in 0..e {
        acc *= x;
    }
    acc
}

/// x^e with the convention 0^0 = 1, for a BigInt base.
pub fn bigint_pow(x: &BigInt, e: u32) -> BigInt {
    if e == 0 {
        return BigInt::one();
    }
    x.pow(e)
}

/// True when the rational is a non-negative integer.
pub fn is_nonnegative_integer(x: &Rational) -> bool {
    x.is_integer() && !x.numer().is_negative()
}
