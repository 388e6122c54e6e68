//! The fixed formula-audit registry.
//!
//! [`run_full_audit`] evaluates every registered formula for a given spec
//! and emits one entry per registry id, in registry order. Formulas whose
//! printed form is refuted by a fixed counterexample carry that canonical
//! witness in addition to the given-spec evaluation, so their verdicts are
//! stable across specs. All parameters are fixed constants; for a given
//! spec and crate version the report is byte-for-byte reproducible.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::analytic::{
    barnes_zeta_direct, barnes_zeta_lemma, format_real, hurwitz_zeta, zak_product_check, Real,
};
use crate::barnes::{bernoulli_barnes, bernoulli_barnes_grouped, dety_reconstruct};
use crate::density::density_mod;
use crate::error::Result;
use crate::numbers::{rat, rat_int, rising_factorial, stirling_first_unsigned, Rational};
use crate::oracle::{
    bounded_composition_count, bounded_composition_counts, count_series, PartitionSpec,
};
use crate::quasipoly::{
    build_quasipolynomial, coeff_d, count_closed_form, leading_coefficient, BuildMethod,
};
use crate::report::{AuditEntry, AuditReport, SpecEcho, Verdict};
use crate::waves::{
    decompose_waves, has_exact_period, polynomial_part_teo4, polynomial_part_teo5,
    wave_formula_teo3, wave_indices,
};

/// Registry ids in report order. Every full audit emits exactly these.
pub const REGISTRY: [&str; 23] = [
    "bernoulli-convention",
    "index-base",
    "eq2.2",
    "snl",
    "p1-corrected",
    "p1-literal",
    "remark-r1",
    "lemma2.2",
    "p2-literal",
    "p3",
    "teo1-corrected",
    "teo1-literal",
    "teo2",
    "eq3.2",
    "eq3.3",
    "eq3.4",
    "grajd",
    "eq4.1",
    "teo3",
    "teo4-corrected",
    "teo4-literal",
    "teo5",
    "cor26",
];

const ZETA_CUTOFF: u64 = 2000;
const ZETA_TOL: f64 = 1e-6;
const DENSITY_HORIZON: u64 = 10_000;
const DENSITY_MODULI: [u64; 3] = [2, 3, 5];
const ORACLE_HORIZON: u64 = 100;
const DETERMINANT_DIMENSION_CAP: usize = 40;

/// Run the full registry for one spec.
pub fn run_full_audit(spec: &PartitionSpec) -> Result<AuditReport> {
    let mut entries = Vec::with_capacity(REGISTRY.len());

    entries.push(
        AuditEntry::new("bernoulli-convention", Verdict::Note)
            .with("b1", "-1/2")
            .with(
                "note",
                "Bernoulli convention fixed by the defining recurrence; validated by the \
                 polynomial-part cross-checks (teo5 vs the projected wave)",
            ),
    );
    entries.push(AuditEntry::new("index-base", Verdict::Note).with(
        "note",
        "index tuples and residue tables use 0-based lower bounds throughout; the 1-based \
         variant would make several index sets empty",
    ));

    entries.push(audit_rising_factorial());
    entries.push(audit_composition_formula());

    let zak = audit_product_checks(spec)?;
    entries.push(zak.corrected);
    entries.push(zak.literal);
    entries.push(audit_remark_r1()?);
    entries.push(audit_lemma(spec)?);
    entries.push(zak.nested);

    entries.push(audit_quasipolynomial_structure(spec)?);
    let coeff_pair = audit_coefficient_formula(spec)?;
    entries.push(coeff_pair.0);
    entries.push(coeff_pair.1);
    entries.push(audit_closed_form_counts(spec));
    entries.push(audit_grouped_numbers(spec));
    entries.push(audit_delta(spec)?);
    entries.push(audit_reconstruction(spec)?);
    entries.push(audit_density(spec)?);
    entries.push(audit_wave_sum(spec)?);
    entries.push(audit_wave_formula(spec)?);
    let poly = audit_polynomial_part(spec)?;
    entries.push(poly.0);
    entries.push(poly.1);
    entries.push(poly.2);

    entries.push(AuditEntry::new("cor26", Verdict::Note).with(
        "note",
        "series rearrangement not evaluated: the printed expression contains a factor \
         undefined at a zero index, so it is excluded from the registry by design",
    ));

    debug_assert_eq!(
        entries
            .iter()
            .map(|e| e.formula_id.as_str())
            .collect::<Vec<_>>(),
        REGISTRY.to_vec()
    );

    Ok(AuditReport {
        version: env!("CARGO_PKG_VERSION").to_string(),
        spec: SpecEcho::from_spec(spec),
        entries,
    })
}

fn audit_rising_factorial() -> AuditEntry {
    let samples = [
        rat_int(0),
        rat_int(1),
        rat(-1, 2),
        rat(2, 3),
        rat_int(7),
        rat(-5, 4),
    ];
    for r in 1..=12u32 {
        for x in &samples {
            let lhs = rising_factorial(x, r);
            let mut rhs = Rational::zero();
            let mut x_pow = Rational::one();
            for k in 1..=r {
                rhs += Rational::from_integer(stirling_first_unsigned(r, k).unwrap()) * &x_pow;
                x_pow *= x;
            }
            if lhs != rhs {
                return AuditEntry::new("eq2.2", Verdict::Fail)
                    .with("r", r)
                    .with("x", x)
                    .with("rising", lhs)
                    .with("stirling_sum", rhs);
            }
        }
    }
    AuditEntry::new("eq2.2", Verdict::Pass).with("checked", "r <= 12 at 6 rational sample points")
}

fn audit_composition_formula() -> AuditEntry {
    for bound in 1..=12u64 {
        for k in 1..=6u32 {
            let table = bounded_composition_counts(bound, k);
            for (ell, expect) in table.iter().enumerate() {
                let got = bounded_composition_count(bound, k, ell as i64);
                if &got != expect {
                    return AuditEntry::new("snl", Verdict::Fail)
                        .with("bound", bound)
                        .with("k", k)
                        .with("ell", ell)
                        .with("formula", got)
                        .with("expansion", expect);
                }
            }
        }
    }
    AuditEntry::new("snl", Verdict::Pass).with("checked", "all N <= 12, k <= 6, entrywise")
}

struct ZakEntries {
    corrected: AuditEntry,
    literal: AuditEntry,
    nested: AuditEntry,
}

fn audit_product_checks(spec: &PartitionSpec) -> Result<ZakEntries> {
    let s = Real::from(spec.num_parts() as f64 + 2.0);
    let w = vec![Real::from(1.0); spec.multiplicity() as usize];
    let check = zak_product_check(spec, s, &w, ZETA_CUTOFF, Real::from(ZETA_TOL))?;

    let echo = |entry: AuditEntry| {
        entry
            .with("s", format!("{}", spec.num_parts() + 2))
            .with("w", "all 1")
            .with("cutoff", ZETA_CUTOFF)
    };

    let corrected = echo(check.entries[0].clone());
    let nested = echo(check.entries[2].clone());

    // canonical counterexample: for a=(1), k=2 the printed right side keeps
    // the two-copy count of the total inside the sum and overshoots
    let canonical_spec = PartitionSpec::new(vec![1], 2)?;
    let canonical = zak_product_check(
        &canonical_spec,
        Real::from(3.0),
        &[Real::from(1.0), Real::from(1.0)],
        500,
        Real::from(ZETA_TOL),
    )?;
    let canonical_fails = canonical.entries[1].verdict == Verdict::Fail;
    let given_fails = check.entries[1].verdict == Verdict::Fail;
    let mut literal = echo(check.entries[1].clone());
    literal.verdict = if canonical_fails || given_fails {
        Verdict::Fail
    } else {
        Verdict::Pass
    };
    literal = literal
        .with("canonical_spec", "a=(1), k=2, s=3, w=(1,1)")
        .with("canonical_product", format_real(canonical.product))
        .with("canonical_literal", format_real(canonical.literal_p1));
    Ok(ZakEntries {
        corrected,
        literal,
        nested,
    })
}

fn audit_remark_r1() -> Result<AuditEntry> {
    // r = 1, a = (2), s = 3, w = 1: the reduction must use zeta(s, w/a);
    // the printed argument a/w gives a different value
    let s = Real::from(3.0);
    let tol = Real::from(1e-10);
    let scale = Real::from(2.0).powf(-s);
    let printed = scale * hurwitz_zeta(s, Real::from(2.0), tol)?;
    let implemented = scale * hurwitz_zeta(s, Real::from(0.5), tol)?;
    let direct = barnes_zeta_direct(&[2], s, Real::from(1.0), 20_000)?;
    let printed_diff = f64::from((printed - direct.value).abs());
    let implemented_diff = f64::from((implemented - direct.value).abs());
    let verdict = if printed_diff <= 1e-6 {
        Verdict::Pass
    } else {
        Verdict::Fail
    };
    Ok(AuditEntry::new("remark-r1", verdict)
        .with("case", "a=(2), s=3, w=1")
        .with("printed_argument", "zeta(s, a/w)")
        .with("printed_value", format_real(printed))
        .with("implemented_argument", "zeta(s, w/a)")
        .with("implemented_value", format_real(implemented))
        .with("direct_value", format_real(direct.value))
        .with("printed_abs_diff", format!("{printed_diff:.3e}"))
        .with("implemented_abs_diff", format!("{implemented_diff:.3e}"))
        .with(
            "note",
            "the final display also mixes the argument indices; both read as typos",
        ))
}

fn audit_lemma(spec: &PartitionSpec) -> Result<AuditEntry> {
    let parts = spec.parts();
    let s = Real::from(parts.len() as f64 + 2.0);
    let w = Real::from(1.0);
    let lemma = barnes_zeta_lemma(parts, s, w, Real::from(ZETA_TOL * 1e-3))?;
    let mut cutoff = 2000u64;
    let mut direct = barnes_zeta_direct(parts, s, w, cutoff)?;
    while direct.tail_estimate > ZETA_TOL / 2.0 && cutoff < 64_000 {
        cutoff *= 2;
        direct = barnes_zeta_direct(parts, s, w, cutoff)?;
    }
    let diff = f64::from((lemma - direct.value).abs());
    let verdict = if diff <= ZETA_TOL {
        Verdict::Pass
    } else {
        Verdict::Fail
    };
    Ok(AuditEntry::new("lemma2.2", verdict)
        .with("s", format!("{}", parts.len() + 2))
        .with("w", "1")
        .with("lemma", format_real(lemma))
        .with("direct", format_real(direct.value))
        .with("direct_cutoff", cutoff)
        .with("abs_diff", format!("{diff:.3e}"))
        .with("tol", format!("{ZETA_TOL:.3e}")))
}

fn audit_quasipolynomial_structure(spec: &PartitionSpec) -> Result<AuditEntry> {
    let qp = build_quasipolynomial(spec, BuildMethod::Teo1)?;
    let horizon = 3 * spec.period();
    let table = count_series(spec, horizon as usize);
    for n in 0..horizon {
        let value = qp.evaluate(n);
        let expect = Rational::from_integer(BigInt::from(table.value(n as usize).clone()));
        if value != expect {
            return Ok(AuditEntry::new("p3", Verdict::Fail)
                .with("n", n)
                .with("evaluated", value)
                .with("oracle", expect));
        }
    }
    let leading_nonzero = (0..qp.period()).any(|s| !qp.row(s)[qp.degree()].is_zero());
    let verdict = if leading_nonzero {
        Verdict::Pass
    } else {
        Verdict::Fail
    };
    Ok(AuditEntry::new("p3", verdict)
        .with("degree", qp.degree())
        .with("period", qp.period())
        .with(
            "checked",
            format!("integer non-negative values on 0..{horizon}"),
        ))
}

fn audit_coefficient_formula(spec: &PartitionSpec) -> Result<(AuditEntry, AuditEntry)> {
    let formula = build_quasipolynomial(spec, BuildMethod::Teo1)?;
    let fit = build_quasipolynomial(spec, BuildMethod::Fit)?;
    let literal = build_quasipolynomial(spec, BuildMethod::Teo1Literal)?;
    let matches = formula == fit;
    let literal_matches = literal == fit;

    let corrected_verdict = if !matches {
        Verdict::Fail
    } else if literal_matches {
        Verdict::Pass
    } else {
        Verdict::Corrected
    };
    let corrected = AuditEntry::new("teo1-corrected", corrected_verdict)
        .with("inner_binomial", "C(t, m)")
        .with("matches_oracle_fit", matches)
        .with("literal_also_matches", literal_matches)
        .with("leading_coefficient", leading_coefficient(spec));

    // canonical counterexample: a=(1), k=2 has counting function n + 1,
    // but the printed binomial C(k, m) doubles the linear coefficient
    let canonical_spec = PartitionSpec::new(vec![1], 2)?;
    let canonical_literal = coeff_d(&canonical_spec, 1, 0, true)?;
    let canonical_corrected = coeff_d(&canonical_spec, 1, 0, false)?;
    let canonical_fails = canonical_literal != canonical_corrected;
    let verdict = if canonical_fails || !literal_matches {
        Verdict::Fail
    } else {
        Verdict::Pass
    };
    let literal_entry = AuditEntry::new("teo1-literal", verdict)
        .with("inner_binomial", "C(k, m) as printed")
        .with("canonical_spec", "a=(1), k=2")
        .with("canonical_literal_d1", canonical_literal)
        .with("canonical_reference_d1", canonical_corrected)
        .with("given_spec_agrees", literal_matches);
    Ok((corrected, literal_entry))
}

fn audit_closed_form_counts(spec: &PartitionSpec) -> AuditEntry {
    let table = count_series(spec, ORACLE_HORIZON as usize);
    for n in 0..=ORACLE_HORIZON {
        match count_closed_form(spec, n) {
            Ok(value) => {
                if &value != table.value(n as usize) {
                    return AuditEntry::new("teo2", Verdict::Fail)
                        .with("n", n)
                        .with("closed_form", value)
                        .with("oracle", table.value(n as usize));
                }
            }
            Err(e) => {
                return AuditEntry::new("teo2", Verdict::Fail)
                    .with("n", n)
                    .with("error", e);
            }
        }
    }
    AuditEntry::new("teo2", Verdict::Pass).with(
        "checked",
        format!("n <= {ORACLE_HORIZON} against the series oracle"),
    )
}

fn audit_grouped_numbers(spec: &PartitionSpec) -> AuditEntry {
    let expanded = spec.expand();
    for j in 0..=12usize {
        let grouped = bernoulli_barnes_grouped(spec, j);
        let direct = bernoulli_barnes(&expanded, j);
        if grouped != direct {
            return AuditEntry::new("eq3.2", Verdict::Fail)
                .with("j", j)
                .with("grouped", grouped)
                .with("direct", direct);
        }
    }
    AuditEntry::new("eq3.2", Verdict::Pass)
        .with("checked", "j <= 12 against the expanded-parts direct form")
        .with("sample_b2_for_a_1_2", bernoulli_barnes(&[1, 2], 2))
}

fn audit_delta(spec: &PartitionSpec) -> Result<AuditEntry> {
    let dim = spec.total_parts() * spec.period() as usize;
    if dim > DETERMINANT_DIMENSION_CAP {
        return Ok(AuditEntry::new("eq3.3", Verdict::Note)
            .with("dimension", dim)
            .with(
                "note",
                format!("skipped: dimension exceeds the audit cap {DETERMINANT_DIMENSION_CAP}"),
            ));
    }
    let report = dety_reconstruct(spec)?;
    Ok(AuditEntry::new("eq3.3", Verdict::Note)
        .with("dimension", report.dimension)
        .with("delta", &report.delta)
        .with("delta_with_scale_factors", &report.delta_scaled)
        .with(
            "note",
            "the printed array repeats a first-order entry in its second row; read as the \
             row pattern n+m+1 throughout",
        ))
}

fn audit_reconstruction(spec: &PartitionSpec) -> Result<AuditEntry> {
    // canonical witness: the 1x1 system (1/2) x = -1/2 solves to -1 while
    // the coefficient it should reconstruct is 1
    let canonical = dety_reconstruct(&PartitionSpec::new(vec![1], 1)?)?;
    let canonical_fails = canonical.verdict == Verdict::Fail;

    let mut entry = AuditEntry::new(
        "eq3.4",
        if canonical_fails {
            Verdict::Fail
        } else {
            canonical.verdict
        },
    )
    .with("canonical_spec", "a=(1), k=1")
    .with(
        "canonical_solution",
        format!(
            "{:?}",
            canonical
                .solution
                .as_ref()
                .map(|v| v.iter().map(|x| x.to_string()).collect::<Vec<_>>())
        ),
    )
    .with(
        "canonical_reference",
        format!(
            "{:?}",
            canonical
                .reference
                .iter()
                .map(|x| x.to_string())
                .collect::<Vec<_>>()
        ),
    );

    let dim = spec.total_parts() * spec.period() as usize;
    if dim > DETERMINANT_DIMENSION_CAP {
        entry = entry.with(
            "given_spec",
            format!("skipped: dimension {dim} exceeds the audit cap {DETERMINANT_DIMENSION_CAP}"),
        );
        return Ok(entry);
    }
    let report = dety_reconstruct(spec)?;
    entry = entry
        .with("given_dimension", report.dimension)
        .with("given_verdict", report.verdict)
        .with("given_delta", &report.delta)
        .with("given_delta_with_scale_factors", &report.delta_scaled)
        .with("given_singular", report.singular);
    if let Some(solution) = &report.solution {
        if let Some(idx) = solution
            .iter()
            .zip(&report.reference)
            .position(|(a, b)| a != b)
        {
            entry = entry
                .with("given_first_mismatch_column", idx)
                .with("given_first_mismatch_solution", &solution[idx])
                .with("given_first_mismatch_reference", &report.reference[idx]);
        }
    }
    Ok(entry)
}

fn audit_density(spec: &PartitionSpec) -> Result<AuditEntry> {
    let mut entry = AuditEntry::new("grajd", Verdict::Pass);
    let mut ok = true;
    for m in DENSITY_MODULI {
        let result = density_mod(spec, m, DENSITY_HORIZON)?;
        ok &= !result.violation;
        entry = entry.with(format!("density_mod_{m}").as_str(), &result.density);
        if result.violation {
            entry = entry.with(
                format!("violation_mod_{m}").as_str(),
                "density below bound at this horizon (informational: the bound is a liminf)",
            );
        }
    }
    entry.verdict = if ok { Verdict::Pass } else { Verdict::Fail };
    let bound = crate::density::density_bound(spec);
    Ok(entry.with("bound", bound).with("horizon", DENSITY_HORIZON))
}

fn audit_wave_sum(spec: &PartitionSpec) -> Result<AuditEntry> {
    let ws = decompose_waves(spec)?;
    let horizon = 2 * spec.period();
    let table = count_series(spec, horizon as usize);
    for n in 0..horizon {
        let sum = ws.sum_at(n);
        let expect = Rational::from_integer(BigInt::from(table.value(n as usize).clone()));
        if sum != expect {
            return Ok(AuditEntry::new("eq4.1", Verdict::Fail)
                .with("n", n)
                .with("wave_sum", sum)
                .with("oracle", expect));
        }
    }
    let periods_exact = ws
        .waves()
        .iter()
        .all(|(j, w)| w.period() == *j && has_exact_period(w));

    // orders dividing D but no part must project to zero
    let qp = build_quasipolynomial(spec, BuildMethod::Teo1)?;
    let indices = ws.indices();
    let d = spec.period();
    let mut non_divisor_orders_vanish = true;
    for j in 1..=d {
        if d.is_multiple_of(j) && !indices.contains(&j) {
            non_divisor_orders_vanish &= crate::waves::order_component(&qp, j)?.is_zero();
        }
    }

    let verdict = if periods_exact && non_divisor_orders_vanish {
        Verdict::Pass
    } else {
        Verdict::Fail
    };
    Ok(AuditEntry::new("eq4.1", verdict)
        .with("indices", format!("{indices:?}"))
        .with(
            "checked",
            format!("wave sums equal the oracle on 0..{horizon}"),
        )
        .with("periods_exact", periods_exact)
        .with("non_divisor_orders_vanish", non_divisor_orders_vanish))
}

fn audit_wave_formula(spec: &PartitionSpec) -> Result<AuditEntry> {
    // canonical witness: j = 2 for the two-part staircase; the printed
    // root-of-unity sum vanishes while the wave value is 1/4
    let canonical_spec = PartitionSpec::new(vec![1, 2], 1)?;
    let canonical = wave_formula_teo3(&canonical_spec, 2, 0)?;

    let mut given_all_pass = true;
    let mut first_mismatch: Option<String> = None;
    for j in wave_indices(spec) {
        for n in [0u64, 1] {
            let check = wave_formula_teo3(spec, j, n)?;
            if check.verdict == Verdict::Fail && first_mismatch.is_none() {
                first_mismatch = Some(format!(
                    "j={j}, n={n}: literal=({:.6e}, {:.6e}) vs wave={}",
                    check.literal.re, check.literal.im, check.reference
                ));
            }
            given_all_pass &= check.verdict == Verdict::Pass;
        }
    }
    let verdict = if canonical.verdict == Verdict::Fail || !given_all_pass {
        Verdict::Fail
    } else {
        Verdict::Pass
    };
    let mut entry = AuditEntry::new("teo3", verdict)
        .with("canonical_spec", "a=(1,2), k=1, j=2, n=0")
        .with(
            "canonical_literal",
            format!(
                "({:.6e}, {:.6e})",
                canonical.literal.re, canonical.literal.im
            ),
        )
        .with("canonical_reference", &canonical.reference)
        .with(
            "note",
            "the root-of-unity sum over l = 1..j is independent of n and vanishes for j >= 2",
        );
    if let Some(m) = first_mismatch {
        entry = entry.with("given_first_mismatch", m);
    } else {
        entry = entry.with("given_spec_agrees", given_all_pass);
    }
    Ok(entry)
}

fn audit_polynomial_part(spec: &PartitionSpec) -> Result<(AuditEntry, AuditEntry, AuditEntry)> {
    let corrected = polynomial_part_teo4(spec, false)?;
    let literal = polynomial_part_teo4(spec, true)?;
    let bernoulli_route = polynomial_part_teo5(spec);
    let ws = decompose_waves(spec)?;
    let wave_row: Vec<Rational> = ws.wave(1).expect("wave 1 always present").row(0).to_vec();

    let render = |v: &[Rational]| {
        let inner: Vec<String> = v.iter().map(|x| x.to_string()).collect();
        format!("[{}]", inner.join(", "))
    };

    let corrected_matches = corrected == bernoulli_route && corrected == wave_row;
    let literal_matches = literal == bernoulli_route;
    let corrected_verdict = if !corrected_matches {
        Verdict::Fail
    } else if literal_matches {
        Verdict::Pass
    } else {
        Verdict::Corrected
    };
    let corrected_entry = AuditEntry::new("teo4-corrected", corrected_verdict)
        .with("normalization", "printed prefactor divided by D")
        .with("coefficients", render(&corrected))
        .with("matches_teo5", corrected == bernoulli_route)
        .with("matches_wave_1", corrected == wave_row);

    // canonical witness: a=(1,2), k=1 gives [3/2, 1] literally vs the
    // polynomial part [3/4, 1/2]
    let canonical_spec = PartitionSpec::new(vec![1, 2], 1)?;
    let canonical_literal = polynomial_part_teo4(&canonical_spec, true)?;
    let canonical_reference = polynomial_part_teo5(&canonical_spec);
    let canonical_fails = canonical_literal != canonical_reference;
    let literal_verdict = if canonical_fails || !literal_matches {
        Verdict::Fail
    } else {
        Verdict::Pass
    };
    let literal_entry = AuditEntry::new("teo4-literal", literal_verdict)
        .with("canonical_spec", "a=(1,2), k=1")
        .with("canonical_literal", render(&canonical_literal))
        .with("canonical_reference", render(&canonical_reference))
        .with("given_coefficients", render(&literal))
        .with("given_spec_agrees", literal_matches);

    let teo5_matches = bernoulli_route == wave_row;
    let teo5_entry = AuditEntry::new(
        "teo5",
        if teo5_matches {
            Verdict::Pass
        } else {
            Verdict::Fail
        },
    )
    .with("coefficients", render(&bernoulli_route))
    .with("matches_wave_1", teo5_matches);

    Ok((corrected_entry, literal_entry, teo5_entry))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn registry_is_complete_and_ordered() {
        let spec = PartitionSpec::new(vec![1, 2], 1).unwrap();
        let report = run_full_audit(&spec).unwrap();
        let ids: Vec<&str> = report
            .entries
            .iter()
            .map(|e| e.formula_id.as_str())
            .collect();
        assert_eq!(ids, REGISTRY.to_vec());
    }

    #[test]
    fn canonical_failures_are_recorded() {
        let spec = PartitionSpec::new(vec![1, 2], 2).unwrap();
        let report = run_full_audit(&spec).unwrap();
        assert_eq!(report.entry("teo1-literal").unwrap().verdict, Verdict::Fail);
        assert_eq!(
            report.entry("teo1-corrected").unwrap().verdict,
            Verdict::Corrected
        );
        assert_eq!(report.entry("teo4-literal").unwrap().verdict, Verdict::Fail);
        assert_eq!(
            report.entry("teo4-corrected").unwrap().verdict,
            Verdict::Corrected
        );
        assert_eq!(report.entry("teo3").unwrap().verdict, Verdict::Fail);
        assert_eq!(report.entry("eq3.4").unwrap().verdict, Verdict::Fail);
        assert_eq!(report.entry("p1-literal").unwrap().verdict, Verdict::Fail);
        assert_eq!(report.entry("remark-r1").unwrap().verdict, Verdict::Fail);
    }

    #[test]
    fn positive_checks_pass() {
        let spec = PartitionSpec::new(vec![1, 2], 2).unwrap();
        let report = run_full_audit(&spec).unwrap();
        for id in [
            "eq2.2",
            "snl",
            "p1-corrected",
            "lemma2.2",
            "p3",
            "teo2",
            "eq3.2",
            "grajd",
            "eq4.1",
            "teo5",
        ] {
            assert_eq!(
                report.entry(id).unwrap().verdict,
                Verdict::Pass,
                "expected PASS for {id}"
            );
        }
    }
}
