//! Which non-cyclic finite groups occur in `PSL₂(o)` and in unit groups of
//! maximal orders over `k = Q(√−d)`, and how many conjugacy classes they form.

use std::fmt;
use std::str::FromStr;

use crate::arith::{self, Place};
use crate::error::{Error, Result};
use crate::orders::{self, LambdaClass};
use crate::quadfield::ImagQuadField;
use crate::quaternion::group_algebra;

/// The non-cyclic maximal finite subgroup types: 3-dihedral, tetrahedral and
/// maximal 2-dihedral.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SubgroupKind {
    D3,
    T,
    D2max,
}

impl SubgroupKind {
    pub const ALL: [SubgroupKind; 3] = [SubgroupKind::D3, SubgroupKind::T, SubgroupKind::D2max];

    pub fn name(self) -> &'static str {
        match self {
            SubgroupKind::D3 => "D3",
            SubgroupKind::T => "T",
            SubgroupKind::D2max => "D2max",
        }
    }

    /// The prime of `F(G)` besides ∞ where it ramifies.
    fn ramified_prime(self) -> i64 {
        match self {
            SubgroupKind::D3 => 3,
            SubgroupKind::T | SubgroupKind::D2max => 2,
        }
    }

    /// Whether an odd prime `p | d` (other than 3 for D3) is compatible.
    fn admits_prime(self, p: i64) -> bool {
        match self {
            SubgroupKind::D3 => p == 3 || p % 3 == 1,
            SubgroupKind::T => p == 2 || matches!(p % 8, 1 | 3),
            SubgroupKind::D2max => p == 2 || p % 4 == 1,
        }
    }
}

impl fmt::Display for SubgroupKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SubgroupKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "d3" => Ok(SubgroupKind::D3),
            "t" => Ok(SubgroupKind::T),
            "d2" | "d2max" => Ok(SubgroupKind::D2max),
            other => Err(format!("unknown subgroup kind '{other}' (expected d3, t or d2)")),
        }
    }
}

fn field(d: i64) -> Result<ImagQuadField> {
    ImagQuadField::new(d)
}

/// Primes dividing `d` that violate the congruence condition for `kind`.
pub fn failing_primes(kind: SubgroupKind, d: i64) -> Result<Vec<i64>> {
    let k = field(d)?;
    Ok(arith::prime_divisors(k.d())?.into_iter().filter(|&p| !kind.admits_prime(p)).collect())
}

/// Existence of `kind` in `PSL₂(o)` by congruence conditions on the primes of `d`.
pub fn contains_in_psl2o(kind: SubgroupKind, d: i64) -> Result<bool> {
    Ok(failing_primes(kind, d)?.is_empty())
}

/// Existence of `kind` in `PΓ(M)` for a maximal order `M` of `M₂(k)` with
/// `Λ(M ∩ M₂(o))` in the class `λM`.
pub fn contains_in_order(kind: SubgroupKind, lambda_m: LambdaClass, d: i64) -> Result<bool> {
    let k = field(d)?;
    if !k.is_ideal_norm(lambda_m.value())? {
        return Err(Error::NotAdmissible(lambda_m.value()));
    }
    let factor = match kind {
        SubgroupKind::D3 => -3,
        SubgroupKind::T => -2,
        SubgroupKind::D2max => -1,
    };
    let a = factor * lambda_m.value();
    let skip = Place::Finite(kind.ramified_prime());
    Ok(arith::relevant_places(&[a, d])?
        .into_iter()
        .filter(|&v| v != skip && v != Place::Infinity)
        .all(|v| k.norm_symbol(a, v) == 1))
}

fn require_existence(kind: SubgroupKind, d: i64) -> Result<()> {
    if kind == SubgroupKind::D2max && d % 4 == 3 {
        return Err(Error::Nonexistent { kind, d });
    }
    Ok(())
}

/// Whether the `k`-algebra hosting `kind` is `M₂(k)` rather than a division algebra.
pub fn host_algebra_split(kind: SubgroupKind, d: i64) -> Result<bool> {
    field(d)?;
    require_existence(kind, d)?;
    Ok(match kind {
        SubgroupKind::D3 => d % 3 != 2,
        SubgroupKind::T => d % 8 != 7,
        SubgroupKind::D2max => true,
    })
}

/// Number of conjugacy classes of maximal finite subgroups of type `kind`
/// in the unit group of a host maximal order, by closed form.
pub fn gamma(kind: SubgroupKind, d: i64) -> Result<u64> {
    let k = field(d)?;
    require_existence(kind, d)?;
    let d_primes = arith::prime_divisors(d)?;
    let t = match kind {
        SubgroupKind::D3 => k.disc_primes().into_iter().filter(|&p| p != 3).count(),
        SubgroupKind::T | SubgroupKind::D2max => d_primes.iter().filter(|&&p| p != 2).count(),
    } as u32;
    let doubled = match kind {
        SubgroupKind::D3 => {
            d % 3 == 2 && d_primes.iter().filter(|&&p| p != 2).all(|&p| matches!(p % 12, 1 | 11))
        }
        SubgroupKind::T => d % 8 == 7 && d_primes.iter().all(|&p| matches!(p % 8, 1 | 7)),
        SubgroupKind::D2max => false,
    };
    Ok(1 << (t + u32::from(doubled)))
}

/// The same count through embedding numbers: `2·C(F(G))·[A:I](F(G) ⊗ k)`
/// divided by the automorphism index of the group order.
pub fn gamma_composed(kind: SubgroupKind, d: i64) -> Result<u64> {
    let k = field(d)?;
    require_existence(kind, d)?;
    let g = group_algebra(kind);
    let (_, b1) = orders::embedding_class_counts(g.lambda, &g.algebra, &k)?;
    if b1 % g.aut_index != 0 {
        return Err(Error::Precondition(format!(
            "B1 = {b1} not divisible by {} for {kind} at d={d}",
            g.aut_index
        )));
    }
    Ok(b1 / g.aut_index)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KindReport {
    pub kind: SubgroupKind,
    pub exists_in_psl2o: bool,
    /// `None` when the kind lies in no maximal order at all.
    pub host_algebra_split: Option<bool>,
    pub gamma: Option<u64>,
    /// Primes of `d` violating the congruence condition.
    pub failing_primes: Vec<i64>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassificationReport {
    pub d: i64,
    pub kinds: Vec<KindReport>,
}

/// Full classification for one field, with γ cross-checked along both paths.
pub fn classify_report(d: i64) -> Result<ClassificationReport> {
    field(d)?;
    let kinds = SubgroupKind::ALL
        .into_iter()
        .map(|kind| {
            let failing = failing_primes(kind, d)?;
            let (host, gamma) = match host_algebra_split(kind, d) {
                Ok(split) => {
                    let closed = gamma(kind, d)?;
                    let composed = gamma_composed(kind, d)?;
                    if closed != composed {
                        return Err(Error::GammaMismatch { kind, d, closed, composed });
                    }
                    (Some(split), Some(closed))
                }
                Err(Error::Nonexistent { .. }) => (None, None),
                Err(e) => return Err(e),
            };
            Ok(KindReport {
                kind,
                exists_in_psl2o: failing.is_empty(),
                host_algebra_split: host,
                gamma,
                failing_primes: failing,
            })
        })
        .collect::<Result<_>>()?;
    Ok(ClassificationReport { d, kinds })
}
