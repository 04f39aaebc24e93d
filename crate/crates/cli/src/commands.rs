use std::collections::BTreeMap;
use std::fmt;
use std::io::{self, Write};

use clap::ValueEnum;
use serde::Serialize;
use serde_json::json;

use wichtel::counting::{self, TypeCountVariant};
use wichtel::distribution::{self, poisson_half_pmf};
use wichtel::sampler;
use wichtel::{Error, ExactCount};

use crate::output::{ratio_float, ratio_string, write_csv, write_json};
use crate::Format;

/// Largest `n` accepted by any command.
pub const MAX_N: usize = 5000;
/// The type sum enumerates partitions of `n`; above this it is skipped.
const TYPESUM_MAX_N: usize = 60;
/// Quadratic-cost cross-checks (rational double sum, first recursion) run up to here.
const QUADRATIC_MAX_N: usize = 300;

#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Invariant(String),
    CapExceeded(String),
    Io(io::Error),
}

impl Failure {
    pub fn exit_code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 2,
            Failure::Invariant(_) => 3,
            Failure::CapExceeded(_) => 4,
            Failure::Io(_) => 1,
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Usage(msg) => write!(f, "{msg}"),
            Failure::Invariant(msg) => write!(f, "invariant violated: {msg}"),
            Failure::CapExceeded(msg) => write!(f, "{msg}"),
            Failure::Io(e) => write!(f, "i/o error: {e}"),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::CapExceeded { .. } | Error::CapTooLarge { .. } => {
                Failure::CapExceeded(e.to_string())
            }
            Error::RoundingUnresolved { .. } => Failure::Invariant(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CountWhat {
    /// Derangements, |F_N|.
    #[value(name = "FN")]
    Fn,
    /// Derangements with at least one 2-cycle, |P_N|.
    #[value(name = "PN")]
    Pn,
    /// Permutations with all cycles of length >= 3.
    #[value(name = "g3")]
    G3,
    /// Derangements with exactly k 2-cycles, |P_N^k|.
    #[value(name = "PNk")]
    Pnk,
    /// Cycle types contributing to |P_N|.
    #[value(name = "types")]
    Types,
    /// Number of such cycle types.
    #[value(name = "type_count")]
    TypeCount,
}

impl CountWhat {
    fn label(self) -> &'static str {
        match self {
            CountWhat::Fn => "FN",
            CountWhat::Pn => "PN",
            CountWhat::G3 => "g3",
            CountWhat::Pnk => "PNk",
            CountWhat::Types => "types",
            CountWhat::TypeCount => "type_count",
        }
    }
}

fn guard_n(n: usize) -> Result<(), Failure> {
    if n > MAX_N {
        Err(Failure::Usage(format!("n = {n} is above the supported maximum of {MAX_N}")))
    } else {
        Ok(())
    }
}

/// Every method must give the same value; returns it.
fn agree(quantity: &str, n: usize, methods: &[(&str, ExactCount)]) -> Result<ExactCount, Failure> {
    let (first_name, first) = &methods[0];
    for (name, value) in &methods[1..] {
        if value != first {
            return Err(Failure::Invariant(format!(
                "{quantity} for n = {n}: {first_name} gives {first}, {name} gives {value}"
            )));
        }
    }
    Ok(first.clone())
}

fn derangement_methods(n: usize) -> Result<Vec<(&'static str, ExactCount)>, Failure> {
    let mut methods = vec![
        ("alternating_sum", counting::derangement_count_sum(n)),
        ("recurrence", counting::derangement_count_recurrence(n)),
    ];
    if n >= 2 {
        methods.push(("nearest_integer", counting::derangement_count_rounding(n)?));
    }
    Ok(methods)
}

fn pair_methods(n: usize) -> Vec<(&'static str, ExactCount)> {
    let mut methods = vec![
        ("recurrence", counting::pair_count_recurrence(n)),
        ("subtraction", counting::pair_count_subtraction(n)),
    ];
    if n <= QUADRATIC_MAX_N {
        methods.push(("first_recursion", counting::pair_count_first_recursion(n)));
        methods.push(("explicit", counting::pair_count_explicit(n)));
    }
    if n <= TYPESUM_MAX_N {
        methods.push(("typesum", counting::pair_count_typesum(n)));
    }
    methods
}

fn g3_methods(n: usize) -> Vec<(&'static str, ExactCount)> {
    let mut methods = vec![("contracted", counting::g_ge3(n))];
    if n <= QUADRATIC_MAX_N {
        methods.push(("double_sum", counting::g_ge3_formula(n)));
    }
    methods
}

#[derive(Serialize)]
struct CountRecord {
    n: usize,
    what: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    k: Option<usize>,
    value: String,
    methods: BTreeMap<&'static str, String>,
}

pub fn count(
    out: &mut dyn Write,
    format: Option<Format>,
    n: usize,
    what: CountWhat,
    k: Option<usize>,
) -> Result<(), Failure> {
    guard_n(n)?;
    if k.is_some() && what != CountWhat::Pnk {
        return Err(Failure::Usage("--k is only meaningful with --what PNk".into()));
    }
    let methods = match what {
        CountWhat::Fn => derangement_methods(n)?,
        CountWhat::Pn => pair_methods(n),
        CountWhat::G3 => g3_methods(n),
        CountWhat::Pnk => {
            let k = k.ok_or_else(|| Failure::Usage("--what PNk requires --k".into()))?;
            vec![("closed_form", counting::exact_pair_k_count(n, k)?)]
        }
        CountWhat::Types => return types(out, format, n),
        CountWhat::TypeCount => return type_count(out, format, n),
    };
    let value = agree(what.label(), n, &methods)?;
    let record = CountRecord {
        n,
        what: what.label(),
        k,
        value: value.to_string(),
        methods: methods.iter().map(|(m, v)| (*m, v.to_string())).collect(),
    };
    match format {
        None => writeln!(out, "{}", record.value)?,
        Some(Format::Json) => write_json(out, &record)?,
        Some(Format::Csv) => write_csv(
            out,
            &["n", "what", "k", "value"],
            [[
                n.to_string(),
                record.what.to_string(),
                k.map(|k| k.to_string()).unwrap_or_default(),
                record.value.clone(),
            ]],
        )?,
    }
    Ok(())
}

fn require_enumerable(n: usize) -> Result<(), Failure> {
    if n > TYPESUM_MAX_N {
        Err(Failure::Usage(format!(
            "cycle types are only enumerated for n <= {TYPESUM_MAX_N}"
        )))
    } else {
        Ok(())
    }
}

fn types(out: &mut dyn Write, format: Option<Format>, n: usize) -> Result<(), Failure> {
    require_enumerable(n)?;
    let types = counting::enumerate_pair_types(n);
    let rows: Vec<(String, String)> = types
        .iter()
        .map(|t| {
            let count = counting::count_of_type(t).expect("enumerated types are valid");
            (t.to_string(), count.to_string())
        })
        .collect();
    match format {
        None => {
            for (ty, count) in &rows {
                writeln!(out, "{ty} {count}")?;
            }
        }
        Some(Format::Json) => {
            let list: Vec<_> = rows
                .iter()
                .map(|(ty, count)| json!({ "type": ty, "count": count }))
                .collect();
            write_json(out, &json!({ "n": n, "what": "types", "types": list }))?
        }
        Some(Format::Csv) => write_csv(
            out,
            &["n", "type", "count"],
            rows.iter().map(|(ty, count)| [n.to_string(), ty.clone(), count.clone()]),
        )?,
    }
    Ok(())
}

fn type_count(out: &mut dyn Write, format: Option<Format>, n: usize) -> Result<(), Failure> {
    require_enumerable(n)?;
    let enumerated = counting::pair_type_count(n, TypeCountVariant::Enumerated)?;
    let printed = counting::pair_type_count(n, TypeCountVariant::Paper)?;
    let restated = counting::partition_sum(n) + u32::from(n == 2);
    if enumerated != restated {
        return Err(Failure::Invariant(format!(
            "type count for n = {n}: enumeration gives {enumerated}, partition sum gives {restated}"
        )));
    }
    match format {
        None => writeln!(out, "{enumerated}")?,
        Some(Format::Json) => write_json(
            out,
            &json!({
                "n": n,
                "what": "type_count",
                "value": enumerated.to_string(),
                "printed_formula": printed.to_string(),
            }),
        )?,
        Some(Format::Csv) => write_csv(
            out,
            &["n", "what", "value", "printed_formula"],
            [[n.to_string(), "type_count".into(), enumerated.to_string(), printed.to_string()]],
        )?,
    }
    Ok(())
}

#[derive(Serialize)]
struct PmfEntry {
    k: usize,
    exact: String,
    float: f64,
    poisson_limit: f64,
}

#[derive(Serialize)]
struct DistRecord {
    n: usize,
    pmf: Vec<PmfEntry>,
    mean_exact: String,
}

pub fn dist(out: &mut dyn Write, format: Option<Format>, n: usize) -> Result<(), Failure> {
    guard_n(n)?;
    let d = distribution::pair_distribution(n)?;
    let record = DistRecord {
        n,
        pmf: d
            .pmf()
            .iter()
            .enumerate()
            .map(|(k, p)| PmfEntry {
                k,
                exact: ratio_string(p),
                float: ratio_float(p),
                poisson_limit: poisson_half_pmf(k),
            })
            .collect(),
        mean_exact: ratio_string(d.mean()),
    };
    match format {
        Some(Format::Json) | None => write_json(out, &record)?,
        Some(Format::Csv) => write_csv(
            out,
            &["k", "exact", "float", "poisson_limit"],
            record.pmf.iter().map(|e| {
                [
                    e.k.to_string(),
                    e.exact.clone(),
                    e.float.to_string(),
                    e.poisson_limit.to_string(),
                ]
            }),
        )?,
    }
    Ok(())
}

pub fn tail(out: &mut dyn Write, format: Option<Format>, n: usize, k: usize) -> Result<(), Failure> {
    guard_n(n)?;
    let p = distribution::prob_at_least(n, k)?;
    let limit = distribution::asymptotic_at_least(k);
    match format {
        Some(Format::Json) | None => write_json(
            out,
            &json!({
                "n": n,
                "k": k,
                "exact": ratio_string(&p),
                "float": ratio_float(&p),
                "poisson_limit": limit,
            }),
        )?,
        Some(Format::Csv) => write_csv(
            out,
            &["n", "k", "exact", "float", "poisson_limit"],
            [[
                n.to_string(),
                k.to_string(),
                ratio_string(&p),
                ratio_float(&p).to_string(),
                limit.to_string(),
            ]],
        )?,
    }
    Ok(())
}

pub fn table(
    out: &mut dyn Write,
    format: Option<Format>,
    n_min: usize,
    n_max: usize,
) -> Result<(), Failure> {
    guard_n(n_max)?;
    let rows = distribution::convergence_table(n_min, n_max)?;
    match format {
        Some(Format::Csv) | None => write_csv(
            out,
            &["n", "prob_ge_1", "prob_ge_3", "tv_poisson", "mean"],
            rows.iter().map(|r| {
                [
                    r.n.to_string(),
                    r.prob_at_least_1.to_string(),
                    r.prob_at_least_3.to_string(),
                    r.tv_to_poisson.to_string(),
                    r.mean.to_string(),
                ]
            }),
        )?,
        Some(Format::Json) => {
            let list: Vec<_> = rows
                .iter()
                .map(|r| {
                    json!({
                        "n": r.n,
                        "prob_ge_1": r.prob_at_least_1,
                        "prob_ge_3": r.prob_at_least_3,
                        "tv_poisson": r.tv_to_poisson,
                        "mean": r.mean,
                    })
                })
                .collect();
            write_json(out, &list)?
        }
    }
    Ok(())
}

pub fn simulate(
    out: &mut dyn Write,
    format: Option<Format>,
    n: usize,
    trials: u64,
    seed: u64,
) -> Result<(), Failure> {
    guard_n(n)?;
    let report = sampler::monte_carlo_histogram(n, trials, seed)?;
    match format {
        Some(Format::Json) | None => {
            // Keys sorted numerically, not lexicographically.
            let mut histogram = serde_json::Map::new();
            for (k, count) in &report.histogram {
                histogram.insert(k.to_string(), json!(count));
            }
            let record = json!({
                "n": report.n,
                "trials": report.trials,
                "seed": report.seed,
                "histogram": histogram,
                "accept_rate": report.accept_rate(),
            });
            write_json(out, &record)?
        }
        Some(Format::Csv) => write_csv(
            out,
            &["k", "count", "frequency"],
            report.histogram.iter().map(|(k, c)| {
                [k.to_string(), c.to_string(), report.frequency(*k).to_string()]
            }),
        )?,
    }
    Ok(())
}
