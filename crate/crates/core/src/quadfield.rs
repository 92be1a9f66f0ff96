//! The imaginary quadratic field `k = Q(√−d)`.

use std::fmt;

use crate::arith::{self, hilbert_symbol, kronecker, Place};
use crate::error::{Error, Result};
use crate::ring::QuadRing;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SplitType {
    Split,
    Inert,
    Ramified,
}

/// Generator of the ring of integers over Z.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RingGenerator {
    /// `ω = √−d`
    Sqrt,
    /// `ω = (1 + √−d)/2`, used when `d ≡ 3 mod 4`
    HalfSqrt,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ImagQuadField {
    d: i64,
    disc: i64,
    generator: RingGenerator,
}

impl ImagQuadField {
    /// Strict constructor: `d` must be positive and squarefree.
    pub fn new(d: i64) -> Result<Self> {
        if d < 1 {
            return Err(Error::NotPositive(d));
        }
        if !arith::is_squarefree(d) {
            return Err(Error::NotSquarefree(d));
        }
        let (disc, generator) =
            if d % 4 == 3 { (-d, RingGenerator::HalfSqrt) } else { (-4 * d, RingGenerator::Sqrt) };
        Ok(Self { d, disc, generator })
    }

    /// Replaces `d` by its squarefree part first. Returns the field and the
    /// square that was divided out.
    pub fn from_reduced(d: i64) -> Result<(Self, i64)> {
        if d < 1 {
            return Err(Error::NotPositive(d));
        }
        let s = arith::squarefree_part(d)?;
        Ok((Self::new(s)?, d / s))
    }

    pub fn d(&self) -> i64 {
        self.d
    }

    pub fn discriminant(&self) -> i64 {
        self.disc
    }

    pub fn generator(&self) -> RingGenerator {
        self.generator
    }

    /// The ring of integers as `Z[ω]`.
    pub fn ring<T: crate::ring::Scalar>(&self) -> QuadRing<T> {
        let (trace, norm) = match self.generator {
            RingGenerator::Sqrt => (0, self.d),
            RingGenerator::HalfSqrt => (1, (self.d + 1) / 4),
        };
        let cast = |x: i64| T::from(x).expect("ring constants fit every scalar width");
        QuadRing::new(cast(trace), cast(norm))
    }

    /// Distinct primes dividing the discriminant.
    pub fn disc_primes(&self) -> Vec<i64> {
        arith::prime_divisors(self.disc).expect("discriminant is nonzero")
    }

    /// # Panics
    /// If `p` is not prime.
    pub fn splitting(&self, p: i64) -> SplitType {
        assert!(arith::is_prime(p), "{p} is not prime");
        match kronecker(self.disc, p) {
            0 => SplitType::Ramified,
            1 => SplitType::Split,
            _ => SplitType::Inert,
        }
    }

    /// `λ` is a norm of an ideal of `o`: even valuation at every inert prime.
    pub fn is_ideal_norm(&self, lambda: i64) -> Result<bool> {
        if lambda < 1 {
            return Err(Error::NotPositive(lambda));
        }
        Ok(arith::factorize(lambda)?
            .factors
            .iter()
            .all(|&(p, e)| e % 2 == 0 || self.splitting(p) != SplitType::Inert))
    }

    /// `λ` is a norm from `k` (locally everywhere, hence globally).
    pub fn is_global_norm(&self, lambda: i64) -> Result<bool> {
        if lambda == 0 {
            return Err(Error::Zero);
        }
        let places = arith::relevant_places(&[lambda, self.d])?;
        Ok(places.into_iter().all(|v| self.norm_symbol(lambda, v) == 1))
    }

    /// `(λ, −d)_v`.
    pub fn norm_symbol(&self, lambda: i64, v: Place) -> i8 {
        hilbert_symbol(lambda, -self.d, v)
    }
}

impl fmt::Display for ImagQuadField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q(sqrt(-{}))", self.d)
    }
}
