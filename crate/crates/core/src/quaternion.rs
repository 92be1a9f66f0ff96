//! Rational quaternion algebras, identified with their ramification sets.

use std::collections::BTreeSet;
use std::fmt;

use crate::arith::{self, hilbert_symbol, Place};
use crate::bianchi::SubgroupKind;
use crate::error::{Error, Result};
use crate::quadfield::{ImagQuadField, SplitType};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct QuaternionAlgebraQ {
    ramified: BTreeSet<Place>,
}

impl QuaternionAlgebraQ {
    /// `M₂(Q)`.
    pub fn matrix_algebra() -> Self {
        Self::default()
    }

    pub fn from_ramification(places: impl IntoIterator<Item = Place>) -> Result<Self> {
        let ramified: BTreeSet<Place> = places.into_iter().collect();
        for v in &ramified {
            if let Place::Finite(p) = *v {
                Place::finite(p)?;
            }
        }
        if ramified.len() % 2 == 1 {
            return Err(Error::OddRamification(ramified.len()));
        }
        Ok(Self { ramified })
    }

    /// The algebra `(a, b)_Q`.
    pub fn from_hilbert_pair(a: i64, b: i64) -> Result<Self> {
        if a == 0 || b == 0 {
            return Err(Error::Zero);
        }
        let places = arith::relevant_places(&[a, b])?;
        Self::from_ramification(places.into_iter().filter(|&v| hilbert_symbol(a, b, v) == -1))
    }

    pub fn ramified(&self) -> &BTreeSet<Place> {
        &self.ramified
    }

    pub fn is_matrix_algebra(&self) -> bool {
        self.ramified.is_empty()
    }

    pub fn is_split_at(&self, v: Place) -> bool {
        !self.ramified.contains(&v)
    }

    /// `(F/v)`: +1 if `F ⊗ Q_v` is split, −1 otherwise.
    pub fn local_symbol(&self, v: Place) -> i8 {
        if self.is_split_at(v) {
            1
        } else {
            -1
        }
    }

    pub fn finite_ramified(&self) -> impl Iterator<Item = i64> + '_ {
        self.ramified.iter().filter_map(|v| v.prime())
    }

    /// Product of the finite ramified primes, negative iff ramified at ∞.
    pub fn sigma(&self) -> i64 {
        let sign = if self.ramified.contains(&Place::Infinity) { -1 } else { 1 };
        self.finite_ramified().product::<i64>() * sign
    }

    /// Product of the ramified primes that split in `k`.
    pub fn sigma_k(&self, k: &ImagQuadField) -> i64 {
        self.split_ramified(k).iter().product()
    }

    /// The ramified primes that split in `k`, ascending.
    pub fn split_ramified(&self, k: &ImagQuadField) -> Vec<i64> {
        self.finite_ramified().filter(|&p| k.splitting(p) == SplitType::Split).collect()
    }

    /// Whether `self` and `other` sit inside the same quaternion algebra over `k`.
    pub fn embeds_in_common_extension(&self, other: &Self, k: &ImagQuadField) -> bool {
        self.sigma_k(k) == other.sigma_k(k)
    }
}

impl fmt::Display for QuaternionAlgebraQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.ramified.is_empty() {
            return f.write_str("M2(Q)");
        }
        let places: Vec<String> = self.ramified.iter().map(ToString::to_string).collect();
        write!(f, "ramified at {{{}}}", places.join(", "))
    }
}

/// Replaces `τ` by a squarefree integer coprime to the discriminant, and
/// `≡ 1 mod 4` when `2 | d`, without changing any symbol `(τ, −d)_v`.
///
/// Each step multiplies `τ` by a norm from `k` (`d + g²` or `d + 1`).
pub fn normalize_tau(tau: i64, k: &ImagQuadField) -> Result<i64> {
    let d = k.d();
    let mul = |a: i64, b: i64| a.checked_mul(b).ok_or(Error::Overflow("normalize_tau"));
    let mut t = arith::squarefree_part(tau)?;
    let mut last_gcd = i64::MAX;
    for _ in 0..64 {
        let g = arith::gcd(t, d);
        if g == 1 {
            break;
        }
        assert!(g < last_gcd, "gcd(τ, d) failed to decrease");
        last_gcd = g;
        t = arith::squarefree_part(mul(t / g, d / g + g)?)?;
    }
    if arith::gcd(t, d) != 1 {
        return Err(Error::Precondition("gcd clearing did not terminate".into()));
    }
    if t % 2 == 0 && k.discriminant() % 2 == 0 {
        // gcd(τ, d) = 1 and τ even force d odd; D = −4d means d ≡ 1 mod 4 here.
        t = arith::squarefree_part(mul(t / 2, (d + 1) / 2)?)?;
    }
    if d % 2 == 0 && t.rem_euclid(4) == 3 {
        t = arith::squarefree_part(mul(t, d + 1)?)?;
    }
    Ok(t)
}

/// Constants attached to the group algebra of each finite subgroup type.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupAlgebraData {
    pub kind: SubgroupKind,
    pub algebra: QuaternionAlgebraQ,
    /// Index of the group order in a maximal order containing it.
    pub lambda: i64,
    /// Index of the inner automorphisms in the normalizer of the group order.
    pub aut_index: u64,
}

pub fn group_algebra(kind: SubgroupKind) -> GroupAlgebraData {
    let (p, lambda, aut_index) = match kind {
        SubgroupKind::D3 => (3, 1, 2),
        SubgroupKind::T => (2, 1, 2),
        SubgroupKind::D2max => (2, 2, 6),
    };
    let algebra =
        QuaternionAlgebraQ::from_ramification([Place::Finite(p), Place::Infinity]).expect("two places");
    GroupAlgebraData { kind, algebra, lambda, aut_index }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn k(d: i64) -> ImagQuadField {
        ImagQuadField::new(d).unwrap()
    }

    fn ram(places: &[Place]) -> BTreeSet<Place> {
        places.iter().copied().collect()
    }

    #[test]
    fn hilbert_pair_examples() {
        use Place::*;
        assert!(QuaternionAlgebraQ::from_hilbert_pair(1, 1).unwrap().is_matrix_algebra());
        assert_eq!(
            QuaternionAlgebraQ::from_hilbert_pair(-1, -1).unwrap().ramified(),
            &ram(&[Finite(2), Infinity])
        );
        assert_eq!(
            QuaternionAlgebraQ::from_hilbert_pair(-1, -3).unwrap().ramified(),
            &ram(&[Finite(3), Infinity])
        );
    }

    #[test]
    fn invariants_of_group_algebras() {
        let d3 = group_algebra(SubgroupKind::D3).algebra;
        let t = group_algebra(SubgroupKind::T).algebra;
        assert_eq!(d3.local_symbol(Place::Finite(3)), -1);
        assert_eq!(d3.local_symbol(Place::Finite(2)), 1);
        assert_eq!(t.local_symbol(Place::Infinity), -1);
        assert_eq!(d3.sigma(), -3);
        assert_eq!(t.sigma(), -2);
        assert_eq!(QuaternionAlgebraQ::matrix_algebra().sigma(), 1);
        let a = QuaternionAlgebraQ::from_ramification([Place::Finite(2), Place::Finite(5)]).unwrap();
        assert_eq!(a.sigma(), 10);
        assert_eq!(d3.sigma_k(&k(5)), 3);
        assert_eq!(t.sigma_k(&k(7)), 2);
        assert_eq!(QuaternionAlgebraQ::matrix_algebra().sigma_k(&k(7)), 1);
    }

    #[test]
    fn group_algebra_table() {
        let d2 = group_algebra(SubgroupKind::D2max);
        assert_eq!((d2.lambda, d2.aut_index), (2, 6));
        assert_eq!(d2.algebra, group_algebra(SubgroupKind::T).algebra);
        let d3 = group_algebra(SubgroupKind::D3);
        assert_eq!((d3.lambda, d3.aut_index), (1, 2));
    }

    #[test]
    fn ramification_validation() {
        assert_eq!(QuaternionAlgebraQ::from_ramification([Place::Infinity]), Err(Error::OddRamification(1)));
        assert!(QuaternionAlgebraQ::from_ramification([Place::Finite(4), Place::Infinity]).is_err());
    }

    #[test]
    fn common_extension() {
        let d3 = group_algebra(SubgroupKind::D3).algebra;
        let m = QuaternionAlgebraQ::matrix_algebra();
        assert!(d3.embeds_in_common_extension(&d3, &k(5)));
        assert!(d3.embeds_in_common_extension(&m, &k(3)));
        assert!(!d3.embeds_in_common_extension(&m, &k(5)));
    }

    #[test]
    fn normalize_tau_examples() {
        assert_eq!(normalize_tau(4, &k(7)).unwrap(), 1);
        assert_eq!(normalize_tau(3, &k(3)).unwrap(), 1);
        assert_eq!(normalize_tau(2, &k(2)).unwrap(), 1);
    }

    fn squarefree_d() -> impl Strategy<Value = i64> {
        (1i64..200).prop_filter("squarefree", |&d| arith::is_squarefree(d))
    }

    proptest! {
        #[test]
        fn hilbert_pair_matches_symbols(a in -500i64..500, b in -500i64..500) {
            prop_assume!(a != 0 && b != 0);
            let f = QuaternionAlgebraQ::from_hilbert_pair(a, b).unwrap();
            prop_assert_eq!(f.ramified().len() % 2, 0);
            for v in arith::relevant_places(&[a, b, 3, 5, 7]).unwrap() {
                prop_assert_eq!(f.local_symbol(v), hilbert_symbol(a, b, v));
            }
            prop_assert_eq!(f.sigma() < 0, f.ramified().contains(&Place::Infinity));
        }

        #[test]
        fn sigma_k_divides_sigma(a in -500i64..500, b in -500i64..500, d in squarefree_d()) {
            prop_assume!(a != 0 && b != 0);
            let f = QuaternionAlgebraQ::from_hilbert_pair(a, b).unwrap();
            prop_assert_eq!(f.sigma() % f.sigma_k(&k(d)), 0);
        }

        #[test]
        fn normalize_tau_contract(tau in -10_000i64..10_000, d in squarefree_d()) {
            prop_assume!(tau != 0);
            let field = k(d);
            let t = normalize_tau(tau, &field).unwrap();
            prop_assert!(arith::is_squarefree(t));
            prop_assert_eq!(arith::gcd(t, field.discriminant()), 1);
            if d % 2 == 0 {
                prop_assert_eq!(t.rem_euclid(4), 1);
            }
            for v in arith::relevant_places(&[tau, t, d]).unwrap() {
                prop_assert_eq!(field.norm_symbol(t, v), field.norm_symbol(tau, v));
            }
        }
    }
}
