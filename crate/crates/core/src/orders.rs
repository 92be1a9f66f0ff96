//! Maximal orders and optimal embeddings through the index invariant Λ:
//! compatibility, isomorphism types, Hilbert-character identities, local and
//! global embedding counts, and the automorphism index.

use std::collections::BTreeMap;

use crate::arith::{self, Place};
use crate::error::{Error, Result};
use crate::quadfield::{ImagQuadField, SplitType};
use crate::quaternion::QuaternionAlgebraQ;

/// An index Λ stored modulo rational squares.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LambdaClass(i64);

impl LambdaClass {
    pub const ONE: Self = Self(1);

    /// Accepts only squarefree positive values.
    pub fn new(value: i64) -> Result<Self> {
        if value < 1 {
            return Err(Error::NotPositive(value));
        }
        if !arith::is_squarefree(value) {
            return Err(Error::NotSquarefree(value));
        }
        Ok(Self(value))
    }

    /// Reduces a full index to its square class.
    pub fn from_index(index: i64) -> Result<Self> {
        if index < 1 {
            return Err(Error::NotPositive(index));
        }
        Ok(Self(arith::squarefree_part(index)?))
    }

    pub fn value(self) -> i64 {
        self.0
    }

    /// Square class of the product.
    pub fn times(self, other: Self) -> Self {
        let g = arith::gcd(self.0, other.0);
        Self((self.0 / g) * (other.0 / g))
    }
}

/// Squarefree divisors of a squarefree positive integer, ascending.
pub fn squarefree_divisors(n: i64) -> Vec<i64> {
    let primes = arith::prime_divisors(n).expect("n is nonzero");
    let mut out: Vec<i64> = (0u32..1 << primes.len())
        .map(|mask| primes.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &p)| p).product())
        .collect();
    out.sort_unstable();
    out
}

/// Whether an order of index `λ` compatible with `o` exists in a maximal
/// order of `F ⊗ k`.
pub fn o_compatible_exists(lambda: i64, f: &QuaternionAlgebraQ, k: &ImagQuadField) -> Result<bool> {
    Ok(arith::gcd(lambda, f.sigma_k(k)) == 1 && k.is_ideal_norm(lambda)?)
}

/// Whether maximal orders of types `λ1`, `λ2` (relative to a common reference)
/// are isomorphic.
pub fn maximal_orders_isomorphic(
    l1: LambdaClass,
    l2: LambdaClass,
    f: &QuaternionAlgebraQ,
    k: &ImagQuadField,
) -> Result<bool> {
    let base = l1.times(l2).value();
    for g in squarefree_divisors(f.sigma_k(k)) {
        if k.is_global_norm(g * base)? {
            return Ok(true);
        }
    }
    Ok(false)
}

/// A function on places with values ±1, equal to +1 outside `entries`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct HilbertCharacter {
    entries: BTreeMap<Place, i8>,
}

impl HilbertCharacter {
    fn from_places(places: impl IntoIterator<Item = Place>, f: impl Fn(Place) -> i8) -> Self {
        let entries = places.into_iter().map(|v| (v, f(v))).filter(|&(_, s)| s == -1).collect();
        Self { entries }
    }

    pub fn value(&self, v: Place) -> i8 {
        self.entries.get(&v).copied().unwrap_or(1)
    }

    /// Places with value −1.
    pub fn negative_places(&self) -> impl Iterator<Item = Place> + '_ {
        self.entries.keys().copied()
    }

    pub fn is_trivial(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn product(&self, other: &Self) -> Self {
        let places = self.entries.keys().chain(other.entries.keys()).copied();
        Self::from_places(places, |v| self.value(v) * other.value(v))
    }

    /// `v ↦ (a, −d)_v`.
    pub fn of_norm_symbol(a: i64, k: &ImagQuadField) -> Result<Self> {
        let places = arith::relevant_places(&[a, k.d()])?;
        Ok(Self::from_places(places, |v| k.norm_symbol(a, v)))
    }
}

fn algebra_places(values: &[i64], algebras: &[&QuaternionAlgebraQ]) -> Result<Vec<Place>> {
    let mut places = arith::relevant_places(values)?;
    places.extend(algebras.iter().flat_map(|f| f.ramified().iter().copied()));
    places.sort_unstable();
    places.dedup();
    Ok(places)
}

/// The forced Hilbert character of `Λ(F ∩ M)` for a maximal order `M` of
/// `M₂(k)` of type `λM`: `v ↦ (F/v)·(Σ(F)·λM, −d)_v`.
pub fn intersection_character(
    f: &QuaternionAlgebraQ,
    lambda_m: LambdaClass,
    k: &ImagQuadField,
) -> Result<HilbertCharacter> {
    if f.sigma_k(k) != 1 {
        return Err(Error::Precondition(format!("{f} does not embed in M2({k})")));
    }
    let a = f.sigma().checked_mul(lambda_m.value()).ok_or(Error::Overflow("character argument"))?;
    let places = algebra_places(&[a, k.d()], &[f])?;
    Ok(HilbertCharacter::from_places(places, |v| f.local_symbol(v) * k.norm_symbol(a, v)))
}

/// Finds a squarefree `f | Σ_k(F)` reconciling the Hilbert characters of two
/// orders `F ∩ M` and `F2 ∩ M2` in a common `k`-algebra. `None` means the data
/// are inconsistent.
pub fn reconciling_divisor(
    f: &QuaternionAlgebraQ,
    lambda_f: LambdaClass,
    f2: &QuaternionAlgebraQ,
    lambda_f2: LambdaClass,
    lambda_mm2: LambdaClass,
    k: &ImagQuadField,
) -> Result<Option<i64>> {
    let sk = f.sigma_k(k);
    if sk != f2.sigma_k(k) {
        return Err(Error::Precondition(format!("{f} and {f2} lie in different k-algebras")));
    }
    let base = [f.sigma(), lambda_f.value(), lambda_mm2.value(), f2.sigma(), lambda_f2.value()]
        .into_iter()
        .try_fold(1i64, |acc, x| {
        arith::squarefree_part(acc.checked_mul(x).ok_or(Error::Overflow("character product"))?)
    })?;
    let places = algebra_places(&[base, sk, k.d()], &[f, f2])?;
    let target: Vec<i8> = places.iter().map(|&v| f.local_symbol(v) * f2.local_symbol(v)).collect();
    for g in squarefree_divisors(sk) {
        let a = base.checked_mul(g).ok_or(Error::Overflow("character product"))?;
        if places.iter().zip(&target).all(|(&v, &t)| k.norm_symbol(a, v) == t) {
            return Ok(Some(g));
        }
    }
    Ok(None)
}

/// Input to [`local_embedding_count`].
///
/// When `p = 2` and `d ≡ 3 mod 4` the prime 2 is split or inert in `k`, so such
/// queries go through the split/inert rows and `d_mod4` is ignored.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LocalCountQuery {
    pub p: i64,
    pub split_type: SplitType,
    /// `F_p ≅ M₂(Q_p)`.
    pub algebra_split: bool,
    /// `e` with `[F_p : G_p] = p^e`.
    pub index_exponent: u32,
    pub d_mod4: u8,
}

impl LocalCountQuery {
    pub fn new(p: i64, k: &ImagQuadField, f: &QuaternionAlgebraQ, index_exponent: u32) -> Self {
        Self {
            p,
            split_type: k.splitting(p),
            algebra_split: f.is_split_at(Place::Finite(p)),
            index_exponent,
            d_mod4: k.d().rem_euclid(4) as u8,
        }
    }
}

/// Counts at `p = 2` ramified in `k`, rows indexed by `[F_2 : G_2] = 2, 4, …, 64, ≥128`,
/// columns `(d ≡ 1 split, d ≡ 1 division, d ≡ 2 split, d ≡ 2 division)`.
pub const DYADIC_TABLE: [[u64; 4]; 7] =
    [[1, 3, 1, 3], [1, 2, 1, 2], [2, 4, 2, 4], [4, 8, 4, 4], [8, 8, 4, 8], [8, 8, 8, 16], [8, 8, 16, 16]];

/// Number of maximal orders `M_p` of `F_p ⊗ k_p` with `F_p ∩ M_p = G_p`, for a
/// fixed order `G_p` of the given index containing a copy of `o_p`.
pub fn local_embedding_count(q: LocalCountQuery) -> Result<u64> {
    if !arith::is_prime(q.p) {
        return Err(Error::NotPrime(q.p));
    }
    let e = q.index_exponent;
    let bad = |msg: &str| Err(Error::InconsistentQuery(format!("{msg}: {q:?}")));
    match q.split_type {
        SplitType::Split => {
            if !q.algebra_split {
                return bad("a prime split in k and ramified in F lies in sigma_k");
            }
            Ok(if e == 0 { 1 } else { 2 })
        }
        SplitType::Inert => {
            if e % 2 == 1 {
                return bad("index at an inert prime must be an even power");
            }
            Ok(if e == 0 && q.algebra_split { 1 } else { 2 })
        }
        SplitType::Ramified if q.p == 2 => {
            let col = match (q.d_mod4, q.algebra_split) {
                (1, true) => 0,
                (1, false) => 1,
                (2, true) => 2,
                (2, false) => 3,
                _ => return bad("2 ramified in k needs d = 1 or 2 mod 4"),
            };
            Ok(if e == 0 { 1 } else { DYADIC_TABLE[(e.min(7) - 1) as usize][col] })
        }
        SplitType::Ramified => {
            let p = q.p as u64;
            Ok(match (e, q.algebra_split) {
                (0, _) => 1,
                (1, true) => 1,
                (1, false) => p + 1,
                (2, true) => p - 1,
                _ => 2 * p,
            })
        }
    }
}

/// `C(G)`: number of maximal orders `M` of `F ⊗ k` with `F ∩ M = G`, for an
/// `o`-compatible order `G` of index `λ` in a maximal order of `F`.
pub fn global_embedding_count(lambda: i64, f: &QuaternionAlgebraQ, k: &ImagQuadField) -> Result<u64> {
    if !o_compatible_exists(lambda, f, k)? {
        return Err(Error::NotCompatible { lambda, d: k.d() });
    }
    let mut exps: BTreeMap<i64, u32> = arith::factorize(lambda)?.factors.into_iter().collect();
    for p in f.finite_ramified() {
        if k.splitting(p) == SplitType::Inert {
            exps.entry(p).or_insert(0);
        }
    }
    exps.into_iter().map(|(p, e)| local_embedding_count(LocalCountQuery::new(p, k, f, e))).product()
}

/// `s` of the automorphism index, by enumerating the divisors of `Σ_k(F)`
/// that are norms from `k`.
pub fn norm_divisor_exponent(f: &QuaternionAlgebraQ, k: &ImagQuadField) -> Result<u32> {
    let mut count = 0u32;
    for g in squarefree_divisors(f.sigma_k(k)) {
        if k.is_global_norm(g)? {
            count += 1;
        }
    }
    debug_assert!(count.is_power_of_two());
    Ok(count.trailing_zeros())
}

/// `s` of the automorphism index as `r − rank₂(h)`, where `h_pq` records
/// whether `(q, −d)_p = −1` for `p | D` and `q | Σ_k(F)`.
pub fn norm_divisor_exponent_by_rank(f: &QuaternionAlgebraQ, k: &ImagQuadField) -> u32 {
    let qs = f.split_ramified(k);
    let mut rows: Vec<u64> = k
        .disc_primes()
        .into_iter()
        .map(|p| {
            qs.iter()
                .enumerate()
                .filter(|&(_, &q)| k.norm_symbol(q, Place::Finite(p)) == -1)
                .fold(0u64, |acc, (j, _)| acc | 1 << j)
        })
        .collect();
    qs.len() as u32 - rank_gf2(&mut rows)
}

fn rank_gf2(rows: &mut [u64]) -> u32 {
    let mut rank = 0;
    for bit in 0..64 {
        let Some(pivot) = (rank..rows.len()).find(|&i| rows[i] >> bit & 1 == 1) else {
            continue;
        };
        rows.swap(rank, pivot);
        let r = rows[rank];
        for (i, row) in rows.iter_mut().enumerate() {
            if i != rank && *row >> bit & 1 == 1 {
                *row ^= r;
            }
        }
        rank += 1;
    }
    rank as u32
}

/// `[A(M) : I(M)] = 2^(t+r+s−1)` for a maximal order `M` of `F ⊗ k`, with `t`
/// the number of primes of `D`, `r` that of `Σ_k(F)`.
pub fn automorphism_index(f: &QuaternionAlgebraQ, k: &ImagQuadField) -> Result<u64> {
    let t = k.disc_primes().len() as u32;
    let r = f.split_ramified(k).len() as u32;
    let s = norm_divisor_exponent(f, k)?;
    Ok(1u64 << (t + r + s - 1))
}

/// `(B, B₁)`: embedding classes of an order of index `λ` modulo inner
/// automorphisms, and modulo those composed with conjugation of `k`.
pub fn embedding_class_counts(lambda: i64, f: &QuaternionAlgebraQ, k: &ImagQuadField) -> Result<(u64, u64)> {
    let b = global_embedding_count(lambda, f, k)? * automorphism_index(f, k)?;
    Ok((b, 2 * b))
}
