//! Floating verification layer: Hurwitz and Barnes zeta evaluation and the
//! product-identity checks.
//!
//! All values use [`Real`], a double-double type with roughly 106 bits of
//! mantissa, and every comparison carries an explicit tolerance. The Hurwitz
//! evaluator is a truncated sum plus Euler-Maclaurin tail corrections with a
//! certified bound on the omitted remainder; the Barnes sums are exact
//! lattice counts weighted by real powers, so the box truncation is the only
//! error source and is reported as a crude tail estimate.

use num_traits::ToPrimitive;
use twofloat::TwoFloat;

use crate::error::{Error, Result};
use crate::numbers::{bernoulli_number, binomial, factorial, stirling_first_unsigned, Rational};
use crate::oracle::{count_series, PartitionSpec};
use crate::report::{AuditEntry, Verdict};

/// Software extended-precision real (double-double, ~106-bit mantissa).
pub type Real = TwoFloat;

/// Fixed scientific rendering used in reports and JSON output.
pub fn format_real(x: Real) -> String {
    format!("{:.15e}", f64::from(x))
}

/// Convert an exact rational to a Real. Accurate to full Real precision as
/// long as numerator and denominator fit in a double each, which holds for
/// every weight used in this module.
pub fn rational_to_real(q: &Rational) -> Real {
    let numer = q.numer().to_f64().unwrap_or(f64::NAN);
    let denom = q.denom().to_f64().unwrap_or(f64::NAN);
    Real::from(numer) / Real::from(denom)
}

/// Euclidean division table for the tuples (j_1, ..., j_r) with
/// 0 <= j_s <= D/a_s - 1: each tuple maps to the unique (q, rem) with
/// a . j = q D + rem and 0 <= rem <= D - 1.
#[derive(Debug, Clone)]
pub struct ResidueTable {
    parts: Vec<u64>,
    modulus: u64,
    entries: Vec<(Vec<u64>, u64, u64)>,
}

impl ResidueTable {
    pub fn parts(&self) -> &[u64] {
        &self.parts
    }

    /// D = lcm of the parts.
    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// All (tuple, q, rem) rows in odometer order.
    pub fn entries(&self) -> &[(Vec<u64>, u64, u64)] {
        &self.entries
    }
}

/// The (q, rem) pair for one tuple; rejects out-of-range tuples.
pub fn residue_division(parts: &[u64], tuple: &[u64]) -> Result<(u64, u64)> {
    if parts.is_empty() || parts.contains(&0) {
        return Err(Error::InvalidInput(
            "parts must be positive and non-empty".into(),
        ));
    }
    if tuple.len() != parts.len() {
        return Err(Error::InvalidInput(format!(
            "tuple length {} does not match {} parts",
            tuple.len(),
            parts.len()
        )));
    }
    let d = crate::numbers::lcm_list(parts)?;
    for (s, (&a, &j)) in parts.iter().zip(tuple).enumerate() {
        if j >= d / a {
            return Err(Error::InvalidInput(format!(
                "tuple entry j_{} = {j} out of range 0..{}",
                s + 1,
                d / a
            )));
        }
    }
    let dot: u64 = parts.iter().zip(tuple).map(|(&a, &j)| a * j).sum();
    Ok((dot / d, dot % d))
}

/// Build the full residue table for a parts list.
pub fn residue_table(parts: &[u64]) -> Result<ResidueTable> {
    if parts.is_empty() || parts.contains(&0) {
        return Err(Error::InvalidInput(
            "parts must be positive and non-empty".into(),
        ));
    }
    let d = crate::numbers::lcm_list(parts)?;
    let limits: Vec<u64> = parts.iter().map(|&a| d / a - 1).collect();
    let mut entries = Vec::new();
    let mut tuple = vec![0u64; parts.len()];
    loop {
        let (q, rem) = residue_division(parts, &tuple)?;
        entries.push((tuple.clone(), q, rem));
        let mut i = parts.len();
        loop {
            if i == 0 {
                return Ok(ResidueTable {
                    parts: parts.to_vec(),
                    modulus: d,
                    entries,
                });
            }
            i -= 1;
            if tuple[i] < limits[i] {
                tuple[i] += 1;
                for t in tuple.iter_mut().skip(i + 1) {
                    *t = 0;
                }
                break;
            }
        }
    }
}

const EM_CORRECTIONS: usize = 4;

/// Magnitude of the first omitted Euler-Maclaurin term; a valid remainder
/// bound here because every derivative of x -> (x+w)^{-s} has constant sign.
fn em_remainder_bound(s: f64, x: f64) -> f64 {
    let j = EM_CORRECTIONS + 1;
    let b = bernoulli_number(2 * j).to_f64().unwrap().abs();
    let fact = factorial(2 * j as u64).to_f64().unwrap();
    let mut rising = 1.0;
    for i in 0..(2 * j - 1) {
        rising *= s + i as f64;
    }
    b / fact * rising * x.powf(-s - (2 * j - 1) as f64)
}

/// Hurwitz zeta for s > 1, w > 0: direct summation to an adaptive cutoff
/// plus the Euler-Maclaurin integral, midpoint and Bernoulli corrections.
/// The certified remainder bound is pushed below tol/2 before evaluation.
pub fn hurwitz_zeta(s: Real, w: Real, tol: Real) -> Result<Real> {
    let s_f = f64::from(s);
    let w_f = f64::from(w);
    let tol_f = f64::from(tol);
    if s_f.is_nan() || s_f <= 1.0 {
        return Err(Error::Domain(format!(
            "hurwitz_zeta requires s > 1, got s={s_f}"
        )));
    }
    if w_f.is_nan() || w_f <= 0.0 {
        return Err(Error::Domain(format!(
            "hurwitz_zeta requires w > 0, got w={w_f}"
        )));
    }
    if tol_f.is_nan() || tol_f <= 0.0 {
        return Err(Error::Domain("hurwitz_zeta requires tol > 0".into()));
    }

    let mut cutoff: u64 = 16;
    while em_remainder_bound(s_f, cutoff as f64 + w_f) > tol_f / 2.0 {
        cutoff *= 2;
        if cutoff > 1 << 26 {
            return Err(Error::Domain(format!(
                "tolerance {tol_f} unreachable at s={s_f}; increase s or tol"
            )));
        }
    }

    let mut sum = Real::from(0.0);
    for n in 0..cutoff {
        sum += (Real::from(n as f64) + w).powf(-s);
    }
    let x = Real::from(cutoff as f64) + w;
    // integral term and midpoint correction
    sum += x.powf(Real::from(1.0) - s) / (s - Real::from(1.0));
    sum += x.powf(-s) / Real::from(2.0);
    // Bernoulli corrections B_{2j}/(2j)! * s(s+1)...(s+2j-2) * x^{-s-2j+1}
    let mut rising = Real::from(1.0);
    for j in 1..=EM_CORRECTIONS {
        rising *= s + Real::from((2 * j - 2) as f64);
        if 2 * j - 2 > 0 {
            rising *= s + Real::from((2 * j - 3) as f64);
        }
        let weight = rational_to_real(
            &(bernoulli_number(2 * j) / Rational::from_integer(factorial(2 * j as u64))),
        );
        sum += weight * rising * x.powf(-s - Real::from((2 * j - 1) as f64));
    }
    Ok(sum)
}

/// A truncated lattice sum with a crude estimate of what the truncation
/// left out.
#[derive(Debug, Clone, Copy)]
pub struct BoxSum {
    pub value: Real,
    pub tail_estimate: f64,
}

/// Partial Barnes zeta sum over the box u in [0, cutoff]^r of
/// (a . u + w)^{-s}, organized as an exact count per lattice level so the
/// cost is linear in cutoff rather than cutoff^r.
///
/// The tail estimate integrates the asymptotic level density beyond the
/// largest fully-covered level; it is a guide for choosing the cutoff, not
/// a certified bound.
pub fn barnes_zeta_direct(parts: &[u64], s: Real, w: Real, cutoff: u64) -> Result<BoxSum> {
    let r = parts.len();
    if r == 0 || parts.contains(&0) {
        return Err(Error::InvalidInput(
            "parts must be positive and non-empty".into(),
        ));
    }
    let s_f = f64::from(s);
    let w_f = f64::from(w);
    if s_f.is_nan() || s_f <= r as f64 {
        return Err(Error::Domain(format!(
            "barnes_zeta_direct requires s > r = {r}, got s={s_f}"
        )));
    }
    if w_f.is_nan() || w_f <= 0.0 {
        return Err(Error::Domain("barnes_zeta_direct requires w > 0".into()));
    }

    // counts[n] = #{u in [0,cutoff]^r : a . u = n}, by bounded convolution
    let total: u64 = parts.iter().sum();
    if total.saturating_mul(cutoff) > 100_000_000 {
        return Err(Error::InvalidInput(format!(
            "cutoff {cutoff} is past desk scale for parts summing to {total}"
        )));
    }
    let len = (total * cutoff) as usize + 1;
    let mut counts = vec![0u128; len];
    counts[0] = 1;
    for &a in parts {
        let step = a as usize;
        for n in step..len {
            counts[n] += counts[n - step];
        }
        let window = step * (cutoff as usize + 1);
        for n in (window..len).rev() {
            counts[n] -= counts[n - window];
        }
    }

    let mut value = Real::from(0.0);
    for (n, &c) in counts.iter().enumerate() {
        if c == 0 {
            continue;
        }
        value += Real::from(c as f64) * (Real::from(n as f64) + w).powf(-s);
    }

    // every lattice point outside the box has a . u > cutoff * min(a)
    let min_part = *parts.iter().min().unwrap() as f64;
    let level = (cutoff as f64 * min_part).max(1.0);
    let mut scale = 1.0;
    for &a in parts {
        scale *= a as f64;
    }
    let fact = factorial(r as u64 - 1).to_f64().unwrap();
    let tail_estimate = 2.0 * level.powf(r as f64 - s_f) / ((s_f - r as f64) * fact * scale);

    Ok(BoxSum {
        value,
        tail_estimate,
    })
}

/// Barnes zeta through the finite Hurwitz reduction: the residue table,
/// Stirling weights and binomial corrections combine Hurwitz values
/// zeta(s - c + i, (rem + w)/D). Exact rational weights are converted to
/// Real at the last step. Requires s > r so every Hurwitz argument
/// stays above 1.
pub fn barnes_zeta_lemma(parts: &[u64], s: Real, w: Real, tol: Real) -> Result<Real> {
    let r = parts.len();
    if r == 0 || parts.contains(&0) {
        return Err(Error::InvalidInput(
            "parts must be positive and non-empty".into(),
        ));
    }
    let s_f = f64::from(s);
    if s_f.is_nan() || s_f <= r as f64 {
        return Err(Error::Domain(format!(
            "barnes_zeta_lemma requires s > r = {r} so every Hurwitz argument exceeds 1; got s={s_f}"
        )));
    }
    let w_f = f64::from(w);
    if w_f.is_nan() || w_f <= 0.0 {
        return Err(Error::Domain("barnes_zeta_lemma requires w > 0".into()));
    }

    let table = residue_table(parts)?;
    let d = table.modulus();
    let d_real = Real::from(d as f64);

    let calls = table.entries().len() * r * (r + 1) / 2;
    let tol_inner = Real::from((f64::from(tol) / calls as f64 * 1e-3).max(1e-18));

    let mut acc = Real::from(0.0);
    for (tuple, _q, rem) in table.entries() {
        let dot: u64 = parts.iter().zip(tuple).map(|(&a, &j)| a * j).sum();
        let shifted = (Real::from(dot as f64) + w) / d_real;
        for c in 0..r {
            let stir = rational_to_real(&Rational::from_integer(
                stirling_first_unsigned(r as u32, c as u32 + 1).expect("1 <= c+1 <= r"),
            ));
            for i in 0..=c {
                let weight =
                    rational_to_real(&Rational::from_integer(binomial(c as u64, i as u64)));
                let zeta = hurwitz_zeta(
                    s - Real::from(c as f64) + Real::from(i as f64),
                    (Real::from(*rem as f64) + w) / d_real,
                    tol_inner,
                )?;
                let term = stir * weight * shifted.powi(i as i32) * zeta;
                if i % 2 == 0 {
                    acc += term;
                } else {
                    acc -= term;
                }
            }
        }
    }
    let front = d_real.powf(-s) / Real::from(factorial(r as u64 - 1).to_f64().unwrap());
    Ok(front * acc)
}

/// All four evaluations of the product identity plus their verdict entries.
#[derive(Debug, Clone)]
pub struct ProductCheck {
    /// (i) The product of the per-argument Hurwitz reductions.
    pub product: Real,
    /// (ii) The corrected right side: box sum over tuples of
    ///      prod_j p_a(n_j) / (n_j + w_j)^s, using oracle counts.
    pub corrected: Real,
    /// (iii) The right side exactly as printed, with the k-copy count of
    ///       the total inside the sum.
    pub literal_p1: Real,
    /// (iv) The nested Hurwitz expression exactly as printed.
    pub literal_p2: Real,
    pub tol: f64,
    pub entries: Vec<AuditEntry>,
}

/// Evaluate the product function four ways and report the comparisons.
/// `w` must supply one positive value per copy (length k); `s > r` is
/// required for all the pieces to converge.
pub fn zak_product_check(
    spec: &PartitionSpec,
    s: Real,
    w: &[Real],
    cutoff: u64,
    tol: Real,
) -> Result<ProductCheck> {
    let r = spec.num_parts();
    let k = spec.multiplicity() as usize;
    if w.len() != k {
        return Err(Error::InvalidInput(format!(
            "expected k = {k} values of w, got {}",
            w.len()
        )));
    }
    if w.iter()
        .any(|&wi| f64::from(wi).is_nan() || f64::from(wi) <= 0.0)
    {
        return Err(Error::InvalidInput("every w must be positive".into()));
    }
    let s_f = f64::from(s);
    if s_f.is_nan() || s_f <= r as f64 {
        return Err(Error::Domain(format!(
            "zak_product_check requires s > r = {r}, got s={s_f}"
        )));
    }
    // the simplex evaluation is quadratic in the cutoff
    if cutoff > 100_000 {
        return Err(Error::InvalidInput(format!(
            "cutoff {cutoff} is past desk scale (max 100000)"
        )));
    }
    let tol_f = f64::from(tol);

    // (i) product of lemma reductions
    let mut product = Real::from(1.0);
    for &wi in w {
        product *= barnes_zeta_lemma(spec.parts(), s, wi, tol * Real::from(1e-3))?;
    }

    // single-copy oracle counts, shared by (ii)
    let single = PartitionSpec::new(spec.parts().to_vec(), 1)?;
    let single_counts = count_series(&single, cutoff as usize);

    // (ii) the box sum factors exactly into per-argument sums
    let mut corrected = Real::from(1.0);
    for &wi in w {
        let mut factor = Real::from(0.0);
        for n in 0..=cutoff {
            let p = single_counts.value(n as usize).to_f64().unwrap();
            factor += Real::from(p) * (Real::from(n as f64) + wi).powf(-s);
        }
        corrected *= factor;
    }

    // (iii) literal form: the k-copy count of the total n multiplies the
    // simplex sum of the per-coordinate kernels
    let weights: Vec<Vec<Real>> = w
        .iter()
        .map(|&wi| {
            (0..=cutoff)
                .map(|n| (Real::from(n as f64) + wi).powf(-s))
                .collect()
        })
        .collect();
    let mut kernel = weights[0].clone();
    for row in weights.iter().skip(1) {
        let mut next = vec![Real::from(0.0); cutoff as usize + 1];
        for (n, slot) in next.iter_mut().enumerate() {
            let mut acc = Real::from(0.0);
            for i in 0..=n {
                acc += kernel[i] * row[n - i];
            }
            *slot = acc;
        }
        kernel = next;
    }
    let multi_counts = count_series(spec, cutoff as usize);
    let mut literal_p1 = Real::from(0.0);
    for (n, kernel_value) in kernel.iter().enumerate() {
        let p = multi_counts.value(n).to_f64().unwrap();
        literal_p1 += Real::from(p) * kernel_value;
    }

    // (iv) literal nested Hurwitz expression
    let literal_p2 = literal_p2_value(spec, s, w, tol)?;

    let mut entries = Vec::new();
    let diff_corrected = f64::from((corrected - product).abs());
    entries.push(
        AuditEntry::new(
            "p1-corrected",
            if diff_corrected <= tol_f {
                Verdict::Pass
            } else {
                Verdict::Fail
            },
        )
        .with("product", format_real(product))
        .with("sum", format_real(corrected))
        .with("abs_diff", format!("{diff_corrected:.3e}"))
        .with("tol", format!("{tol_f:.3e}")),
    );
    let diff_literal = f64::from((literal_p1 - product).abs());
    entries.push(
        AuditEntry::new(
            "p1-literal",
            if diff_literal <= tol_f {
                Verdict::Pass
            } else {
                Verdict::Fail
            },
        )
        .with("product", format_real(product))
        .with("sum", format_real(literal_p1))
        .with("abs_diff", format!("{diff_literal:.3e}"))
        .with("tol", format!("{tol_f:.3e}")),
    );
    let diff_p2 = f64::from((literal_p2 - product).abs());
    entries.push(
        AuditEntry::new(
            "p2-literal",
            if diff_p2 <= tol_f {
                Verdict::Pass
            } else {
                Verdict::Fail
            },
        )
        .with("product", format_real(product))
        .with("value", format_real(literal_p2))
        .with("abs_diff", format!("{diff_p2:.3e}"))
        .with("tol", format!("{tol_f:.3e}")),
    );

    Ok(ProductCheck {
        product,
        corrected,
        literal_p1,
        literal_p2,
        tol: tol_f,
        entries,
    })
}

fn literal_p2_value(spec: &PartitionSpec, s: Real, w: &[Real], tol: Real) -> Result<Real> {
    let r = spec.num_parts();
    let table = residue_table(spec.parts())?;
    let d_real = Real::from(table.modulus() as f64);
    let calls = table.entries().len() * w.len() * r * (r + 1) / 2;
    let tol_inner = Real::from((f64::from(tol) / calls as f64 * 1e-3).max(1e-18));

    let mut acc = Real::from(0.0);
    for m in 0..r {
        let stir = rational_to_real(&Rational::from_integer(
            stirling_first_unsigned(r as u32, m as u32 + 1).expect("1 <= m+1 <= r"),
        ));
        for l in 0..=m {
            let choose = rational_to_real(&Rational::from_integer(binomial(m as u64, l as u64)));
            let mut prod = Real::from(1.0);
            for &wi in w {
                let mut inner = Real::from(0.0);
                for (tuple, _q, rem) in table.entries() {
                    let dot: u64 = spec.parts().iter().zip(tuple).map(|(&a, &j)| a * j).sum();
                    let shifted = (Real::from(dot as f64) + wi) / d_real;
                    let zeta = hurwitz_zeta(
                        s - Real::from(m as f64) + Real::from(l as f64),
                        (Real::from(*rem as f64) + wi) / d_real,
                        tol_inner,
                    )?;
                    inner += shifted.powi(l as i32) * zeta;
                }
                prod *= inner;
            }
            let term = stir * choose * prod;
            if l % 2 == 0 {
                acc += term;
            } else {
                acc -= term;
            }
        }
    }
    let front = d_real.powf(-s) / Real::from(factorial(r as u64 - 1).to_f64().unwrap());
    Ok(front * acc)
}
