//! `verify`: exhaustive census for every n up to the cap, checked against
//! each closed form, recursion and distribution identity.

use std::io::Write;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use serde::Serialize;

use wichtel::counting::{self, TypeCountVariant};
use wichtel::distribution::pair_distribution;
use wichtel::permutation::{check_cap, oracle_cap_from_env, oracle_census, OracleCensus};

use crate::commands::Failure;
use crate::output::{write_csv, write_json};
use crate::Format;

#[derive(Debug, Serialize)]
struct Check {
    n: usize,
    name: &'static str,
    passed: bool,
}

fn checks_for(census: &OracleCensus) -> Result<Vec<Check>, Failure> {
    let n = census.n;
    let mut checks = Vec::new();
    let mut push = |name, passed| checks.push(Check { n, name, passed });

    let f = counting::derangement_count_sum(n);
    push("derangements: alternating sum = census", f == census.derangements);
    push(
        "derangements: recurrence = alternating sum",
        counting::derangement_count_recurrence(n) == f,
    );
    push(
        "derangements: nearest integer to n!/e = alternating sum",
        counting::derangement_count_rounding(n)? == f,
    );

    let with_pairs = census.with_pairs();
    push("|P_n|: type sum = census", counting::pair_count_typesum(n) == with_pairs);
    push("|P_n|: recurrence = census", counting::pair_count_recurrence(n) == with_pairs);
    push("|P_n|: subtraction = census", counting::pair_count_subtraction(n) == with_pairs);
    push(
        "|P_n|: first recursion = census",
        counting::pair_count_first_recursion(n) == with_pairs,
    );
    push("|P_n|: explicit formula = census", counting::pair_count_explicit(n) == with_pairs);

    push("g>=3: contracted sum = census", counting::g_ge3(n) == census.no_short_cycles);
    push("g>=3: double sum = census", counting::g_ge3_formula(n) == census.no_short_cycles);

    let pair_k_ok = (0..=n / 2).all(|k| {
        counting::exact_pair_k_count(n, k).expect("k in range") == census.pairs(k)
    });
    push("|P_n^k| = census histogram for every k", pair_k_ok);

    let types = counting::enumerate_cycle_types(n);
    let types_ok = types.len() == census.type_counts.len()
        && types.iter().all(|t| {
            census.type_counts.get(t) == Some(&counting::count_of_type(t).expect("valid type"))
        });
    push("count of type = census for every type", types_ok);

    let dist = pair_distribution(n)?;
    let norm: BigRational = dist.pmf().iter().sum();
    push("pmf sums to 1", norm.is_one());
    let total = BigInt::from(census.derangements.clone());
    let pmf_ok = dist.pmf().iter().enumerate().all(|(k, p)| {
        *p == BigRational::new(BigInt::from(census.pairs(k)), total.clone())
    });
    push("pmf = census histogram / derangements", pmf_ok);

    let enumerated = counting::pair_type_count(n, TypeCountVariant::Enumerated)?;
    push(
        "pair type count = partition sum",
        enumerated == counting::partition_sum(n) + u32::from(n == 2),
    );
    Ok(checks)
}

pub fn run(out: &mut dyn Write, format: Option<Format>, cap: Option<usize>) -> Result<(), Failure> {
    let cap = match cap {
        Some(requested) => check_cap(requested)?,
        None => oracle_cap_from_env()?,
    };
    let mut checks = Vec::new();
    for n in 2..=cap {
        let census = oracle_census(n, cap)?;
        checks.extend(checks_for(&census)?);
    }
    let failed = checks.iter().filter(|c| !c.passed).count();

    match format {
        None => {
            for c in &checks {
                let mark = if c.passed { "ok  " } else { "FAIL" };
                writeln!(out, "{mark} n={:<2} {}", c.n, c.name)?;
            }
            writeln!(
                out,
                "verify: cap {cap}, {} checks, {failed} failed",
                checks.len()
            )?;
        }
        Some(Format::Json) => write_json(
            out,
            &serde_json::json!({
                "cap": cap,
                "passed": failed == 0,
                "checks": checks,
            }),
        )?,
        Some(Format::Csv) => write_csv(
            out,
            &["n", "check", "passed"],
            checks
                .iter()
                .map(|c| [c.n.to_string(), c.name.to_string(), c.passed.to_string()]),
        )?,
    }
    if failed > 0 {
        out.flush()?;
        return Err(Failure::Invariant(format!("{failed} verification checks failed")));
    }
    Ok(())
}
