use std::collections::BTreeMap;
use std::fmt;
use std::io::{self, Write};

use bianchi_core::bianchi::{self, classify_report};
use bianchi_core::oracle::{self, local};
use bianchi_core::orders::{self, LocalCountQuery};
use bianchi_core::quadfield::{ImagQuadField, RingGenerator};
use bianchi_core::verify::{self, SuiteReport};
use bianchi_core::{Error, SplitType, SubgroupKind};
use rayon::prelude::*;

use crate::report::{to_json, ReportDocument, ScanDocument, ScanRow};
use crate::{Format, Suite};

pub const SCAN_LIMIT: i64 = 1_000_000;
const SCAN_CHUNK: usize = 4096;
const RECIPROCITY_PAIRS: usize = 1000;
const RECIPROCITY_BOUND: i64 = 1_000_000;
const RECIPROCITY_SEED: u64 = 0x5eed;

#[derive(Debug)]
pub enum CliError {
    /// Bad arguments or an input outside the domain; exit code 2.
    Usage(String),
    /// A check or an internal consistency test failed; exit code 1.
    Failed(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Failed(_) => 1,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Failed(m) => f.write_str(m),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::GammaMismatch { .. } | Error::PrecisionUnstable { .. } | Error::Overflow(_) => {
                CliError::Failed(e.to_string())
            }
            _ => CliError::Usage(e.to_string()),
        }
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Failed(e.to_string())
    }
}

fn mark(b: bool) -> &'static str {
    if b {
        "✓"
    } else {
        "✗"
    }
}

fn or_dash<T: ToString>(v: Option<T>) -> String {
    v.map_or_else(|| "-".to_owned(), |x| x.to_string())
}

pub fn classify(d: i64, format: Format) -> Result<(), CliError> {
    let report = classify_report(d)?;
    match format {
        Format::Json => println!("{}", to_json(&ReportDocument::from(&report))),
        Format::Table => {
            println!("Q(√−{d})");
            println!("{:<6} {:<7} {:<10} {:<6} failing primes", "kind", "exists", "host", "gamma");
            for k in &report.kinds {
                let host = match k.host_algebra_split {
                    Some(true) => "M2(k)",
                    Some(false) => "division",
                    None => "-",
                };
                let failing: Vec<String> = k.failing_primes.iter().map(i64::to_string).collect();
                println!(
                    "{:<6} {:<7} {:<10} {:<6} {}",
                    k.kind.name(),
                    mark(k.exists_in_psl2o),
                    host,
                    or_dash(k.gamma),
                    if failing.is_empty() { "-".to_owned() } else { failing.join(",") }
                );
            }
        }
    }
    Ok(())
}

fn scan_row(d: i64, kinds: &[SubgroupKind]) -> Result<ScanRow, CliError> {
    let exists = kinds
        .iter()
        .map(|&k| Ok((k.name().to_owned(), bianchi::contains_in_psl2o(k, d)?)))
        .collect::<Result<BTreeMap<_, _>, Error>>()?;
    Ok(ScanRow { d, exists })
}

pub fn scan(dmax: i64, kinds: &[SubgroupKind], format: Format) -> Result<(), CliError> {
    if !(1..=SCAN_LIMIT).contains(&dmax) {
        return Err(CliError::Usage(format!("--dmax must lie in 1..={SCAN_LIMIT}, got {dmax}")));
    }
    let mut kinds = kinds.to_vec();
    kinds.sort_unstable();
    kinds.dedup();
    let ds = verify::squarefree_up_to(dmax);
    let mut out = io::stdout().lock();
    let mut rows = Vec::with_capacity(ds.len());
    if format == Format::Table {
        write!(out, "{:>8}", "d")?;
        for k in &kinds {
            write!(out, " {:>6}", k.name())?;
        }
        writeln!(out)?;
    }
    for chunk in ds.chunks(SCAN_CHUNK) {
        let computed = chunk.par_iter().map(|&d| scan_row(d, &kinds)).collect::<Result<Vec<_>, _>>()?;
        if format == Format::Table {
            for row in &computed {
                write!(out, "{:>8}", row.d)?;
                for k in &kinds {
                    write!(out, " {:>6}", mark(row.exists[k.name()]))?;
                }
                writeln!(out)?;
            }
        }
        rows.extend(computed);
    }
    let doc = ScanDocument::new(dmax, &kinds, rows);
    match format {
        Format::Json => writeln!(out, "{}", to_json(&doc))?,
        Format::Table => {
            let parts: Vec<String> = doc.summary.iter().map(|(k, n)| format!("{k} {n}")).collect();
            writeln!(out, "summary: {} fields; present: {}", doc.rows.len(), parts.join(", "))?;
        }
    }
    Ok(())
}

pub fn gamma(d: i64, kind: SubgroupKind) -> Result<(), CliError> {
    let closed = bianchi::gamma(kind, d)?;
    let composed = bianchi::gamma_composed(kind, d)?;
    if closed != composed {
        return Err(Error::GammaMismatch { kind, d, closed, composed }.into());
    }
    println!("{closed}");
    Ok(())
}

fn run_suite(suite: Suite, dmax: Option<i64>, height: Option<u32>) -> Result<SuiteReport, CliError> {
    let dmax_or = |default: i64| -> Result<i64, CliError> {
        match dmax {
            Some(n) if n < 1 => Err(CliError::Usage(format!("--dmax must be positive, got {n}"))),
            Some(n) => Ok(n),
            None => Ok(default),
        }
    };
    let report = match suite {
        Suite::Reciprocity => verify::reciprocity(RECIPROCITY_PAIRS, RECIPROCITY_BOUND, RECIPROCITY_SEED)?,
        Suite::Satz33 => verify::existence_equivalence(dmax_or(1000)?)?,
        Suite::Gamma => verify::gamma_paths(dmax_or(500)?)?,
        Suite::Lemma35 => verify::norm_exponent(dmax_or(200)?)?,
        Suite::Oracle => {
            verify::subgroup_oracle(dmax_or(30)?, height.unwrap_or(oracle::subgroups::DEFAULT_HEIGHT))?
        }
        Suite::Local => verify::local_tree(&[(3, 3), (5, 5)], 3)?,
    };
    Ok(report)
}

pub fn verify(suite: Suite, dmax: Option<i64>, height: Option<u32>) -> Result<(), CliError> {
    let report = run_suite(suite, dmax, height)?;
    for f in &report.failures {
        eprintln!("{}: {f}", report.name);
    }
    if report.passed() {
        println!("{}: {} checks, pass", report.name, report.checks);
        Ok(())
    } else {
        println!("{}: {} checks, {} failed", report.name, report.checks, report.failures.len());
        Err(CliError::Failed(format!("suite {} failed", report.name)))
    }
}

pub fn oracle_subgroups(d: i64, height: u32) -> Result<(), CliError> {
    let field = ImagQuadField::new(d)?;
    let ring = field.ring();
    for kind in SubgroupKind::ALL {
        match oracle::find_subgroup(kind, d, height)? {
            Some(w) => {
                let verified = oracle::verify_witness(&ring, &w);
                println!("{kind}: found (relations {})", if verified { "verified" } else { "FAILED" });
                for (name, g) in ["U", "V", "W"].iter().zip(&w.generators) {
                    println!("  {name} = {g}");
                }
                if !verified {
                    return Err(CliError::Failed(format!("{kind} witness fails its relations")));
                }
            }
            None => println!("{kind}: none up to height {height}"),
        }
    }
    let w = match field.generator() {
        RingGenerator::Sqrt => format!("√−{d}"),
        RingGenerator::HalfSqrt => format!("(1+√−{d})/2"),
    };
    println!("entries written as x+yw with w = {w}");
    Ok(())
}

pub fn oracle_local_count(p: i64, d: i64, tau: i64, exp: u32) -> Result<(), CliError> {
    let k = ImagQuadField::new(d)?;
    if !bianchi_core::arith::is_prime(p) || p == 2 || k.splitting(p) != SplitType::Ramified {
        return Err(CliError::Usage(format!("p must be an odd prime ramified in Q(√−{d}), got {p}")));
    }
    if tau == 0 {
        return Err(CliError::Usage("--tau must be nonzero".to_owned()));
    }
    if exp > 3 {
        return Err(CliError::Usage(format!("--exp must lie in 0..=3, got {exp}")));
    }
    let counted = local::count_maximal_orders_local(p, d, tau, exp)?;
    let split = local::tau_class_split(p, d, tau);
    let table = orders::local_embedding_count(LocalCountQuery {
        p,
        split_type: SplitType::Ramified,
        algebra_split: split,
        index_exponent: exp,
        d_mod4: d.rem_euclid(4) as u8,
    })?;
    println!("{counted}");
    eprintln!("algebra {} at {p}; table value {table}", if split { "split" } else { "division" });
    Ok(())
}
