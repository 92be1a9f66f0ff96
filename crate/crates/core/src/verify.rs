//! Verification sweeps comparing independent computations of the same quantity.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::arith::{self, hilbert_symbol};
use crate::bianchi::{self, SubgroupKind};
use crate::error::Result;
use crate::oracle::{self, local};
use crate::orders::{self, LambdaClass, LocalCountQuery};
use crate::quadfield::{ImagQuadField, SplitType};
use crate::quaternion::{group_algebra, QuaternionAlgebraQ};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteReport {
    pub name: &'static str,
    pub checks: usize,
    pub failures: Vec<String>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    fn from_results(name: &'static str, results: Vec<Result<Vec<String>>>) -> Result<Self> {
        let checks = results.len();
        let mut failures = Vec::new();
        for r in results {
            failures.extend(r?);
        }
        Ok(Self { name, checks, failures })
    }
}

pub fn squarefree_up_to(n: i64) -> Vec<i64> {
    (1..=n).filter(|&d| arith::is_squarefree(d)).collect()
}

/// Product of `(a, b)_v` over all places is +1, for random pairs `|a|, |b| ≤ bound`.
pub fn reciprocity(pairs: usize, bound: i64, seed: u64) -> Result<SuiteReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut sample = || loop {
        let x = rng.gen_range(-bound..=bound);
        if x != 0 {
            return x;
        }
    };
    let inputs: Vec<(i64, i64)> = (0..pairs).map(|_| (sample(), sample())).collect();
    let results = inputs
        .par_iter()
        .map(|&(a, b)| {
            let prod: i8 =
                arith::relevant_places(&[a, b])?.into_iter().map(|v| hilbert_symbol(a, b, v)).product();
            Ok(if prod == 1 { vec![] } else { vec![format!("({a}, {b}): product {prod}")] })
        })
        .collect();
    SuiteReport::from_results("reciprocity", results)
}

/// Congruence criteria for `PSL₂(o)` agree with the Hilbert-symbol criteria
/// for the order type `λ = 1`.
pub fn existence_equivalence(dmax: i64) -> Result<SuiteReport> {
    let results = squarefree_up_to(dmax)
        .par_iter()
        .map(|&d| {
            let mut bad = Vec::new();
            for kind in SubgroupKind::ALL {
                let by_congruence = bianchi::contains_in_psl2o(kind, d)?;
                let by_symbols = bianchi::contains_in_order(kind, LambdaClass::ONE, d)?;
                if by_congruence != by_symbols {
                    bad.push(format!("{kind} d={d}: congruence {by_congruence}, symbols {by_symbols}"));
                }
            }
            Ok(bad)
        })
        .collect();
    SuiteReport::from_results("existence", results)
}

/// Closed-form γ equals the embedding-count route and is a power of two.
pub fn gamma_paths(dmax: i64) -> Result<SuiteReport> {
    let results = squarefree_up_to(dmax)
        .par_iter()
        .map(|&d| {
            let mut bad = Vec::new();
            for kind in SubgroupKind::ALL {
                if kind == SubgroupKind::D2max && d % 4 == 3 {
                    continue;
                }
                let closed = bianchi::gamma(kind, d)?;
                let composed = bianchi::gamma_composed(kind, d)?;
                if closed != composed || !closed.is_power_of_two() || !composed.is_power_of_two() {
                    bad.push(format!("{kind} d={d}: closed {closed}, composed {composed}"));
                }
            }
            Ok(bad)
        })
        .collect();
    SuiteReport::from_results("gamma", results)
}

/// Algebras `(a, b)` with small `a, b` whose ramification contains at most
/// two primes split in `k`.
pub fn sample_algebras(k: &ImagQuadField) -> Result<Vec<QuaternionAlgebraQ>> {
    let mut out = Vec::new();
    for a in [-1i64, 2, -2, 3, -3, 5, -7, 11, -13, 17] {
        for b in [-1i64, -3, 5, -5, 7, 13, -17, 29, 30] {
            let f = QuaternionAlgebraQ::from_hilbert_pair(a, b)?;
            if f.split_ramified(k).len() <= 2 && !out.contains(&f) {
                out.push(f);
            }
        }
    }
    Ok(out)
}

/// The exponent `s` by divisor enumeration equals `r − rank₂(h)`.
pub fn norm_exponent(dmax: i64) -> Result<SuiteReport> {
    let results = squarefree_up_to(dmax)
        .par_iter()
        .map(|&d| {
            let k = ImagQuadField::new(d)?;
            let mut algebras =
                vec![group_algebra(SubgroupKind::D3).algebra, group_algebra(SubgroupKind::T).algebra];
            algebras.extend(sample_algebras(&k)?);
            let mut bad = Vec::new();
            for f in &algebras {
                let by_divisors = orders::norm_divisor_exponent(f, &k)?;
                let by_rank = orders::norm_divisor_exponent_by_rank(f, &k);
                if by_divisors != by_rank {
                    bad.push(format!("d={d} {f}: divisors {by_divisors}, rank {by_rank}"));
                }
            }
            Ok(bad)
        })
        .collect();
    SuiteReport::from_results("norm-exponent", results)
}

/// The bounded subgroup search finds each kind exactly when the congruence
/// criteria predict it.
pub fn subgroup_oracle(dmax: i64, height: u32) -> Result<SuiteReport> {
    let ds = squarefree_up_to(dmax);
    let mut results = Vec::new();
    for &d in &ds {
        let mut bad = Vec::new();
        for kind in SubgroupKind::ALL {
            let predicted = bianchi::contains_in_psl2o(kind, d)?;
            let witness = oracle::find_subgroup(kind, d, height)?;
            if let Some(w) = &witness {
                if !w.relations_verified {
                    bad.push(format!("{kind} d={d}: witness fails its relations"));
                }
            }
            if predicted != witness.is_some() {
                bad.push(format!("{kind} d={d}: predicted {predicted}, search found {}", witness.is_some()));
            }
        }
        results.push(Ok(bad));
    }
    SuiteReport::from_results("subgroup-oracle", results)
}

/// One row of the local comparison.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalCase {
    pub p: i64,
    pub d: i64,
    pub tau: i64,
    pub split: bool,
    pub r: u32,
    pub expected: u64,
    pub counted: u64,
}

/// A p-unit τ in the requested norm-residue class at `p`.
pub fn tau_for_class(p: i64, d: i64, split: bool) -> i64 {
    (1..p).find(|&t| local::tau_class_split(p, d, t) == split).expect("both classes occur")
}

/// Tree counts against the table for `(p, d)` pairs, both algebra classes,
/// `r = 0..=rmax`.
pub fn local_cases(pairs: &[(i64, i64)], rmax: u32) -> Result<Vec<LocalCase>> {
    let mut jobs = Vec::new();
    for &(p, d) in pairs {
        for split in [true, false] {
            for r in 0..=rmax {
                jobs.push((p, d, split, r));
            }
        }
    }
    jobs.par_iter()
        .map(|&(p, d, split, r)| {
            let k = ImagQuadField::new(d)?;
            let tau = tau_for_class(p, d, split);
            let expected = orders::local_embedding_count(LocalCountQuery {
                p,
                split_type: SplitType::Ramified,
                algebra_split: split,
                index_exponent: r,
                d_mod4: k.d().rem_euclid(4) as u8,
            })?;
            let counted = local::count_maximal_orders_local(p, d, tau, r)?;
            Ok(LocalCase { p, d, tau, split, r, expected, counted })
        })
        .collect()
}

pub fn local_tree(pairs: &[(i64, i64)], rmax: u32) -> Result<SuiteReport> {
    let cases = local_cases(pairs, rmax)?;
    let failures = cases
        .iter()
        .filter(|c| c.expected != c.counted)
        .map(|c| {
            format!(
                "p={} d={} τ={} ({}) r={}: table {}, tree {}",
                c.p,
                c.d,
                c.tau,
                if c.split { "split" } else { "division" },
                c.r,
                c.expected,
                c.counted
            )
        })
        .collect();
    Ok(SuiteReport { name: "local-tree", checks: cases.len(), failures })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_sweeps_pass() {
        assert!(reciprocity(200, 10_000, 7).unwrap().passed());
        assert!(existence_equivalence(100).unwrap().passed());
        assert!(gamma_paths(100).unwrap().passed());
        assert!(norm_exponent(50).unwrap().passed());
    }

    #[test]
    fn tau_classes() {
        assert!(local::tau_class_split(3, 3, tau_for_class(3, 3, true)));
        assert!(!local::tau_class_split(5, 5, tau_for_class(5, 5, false)));
    }

    #[test]
    fn squarefree_listing() {
        assert_eq!(squarefree_up_to(10), vec![1, 2, 3, 5, 6, 7, 10]);
    }
}
