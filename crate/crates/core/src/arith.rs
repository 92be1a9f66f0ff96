//! Integer primitives: factorization, squarefree parts, residue symbols and
//! the Hilbert symbol at every place of Q.

use std::fmt;

use crate::error::{Error, Result};

/// A place of Q.
///
/// `Finite(p)` must carry a prime; use [`Place::finite`] for unchecked input.
/// The derived order sorts finite places by prime and puts the real place last.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Place {
    Finite(i64),
    Infinity,
}

impl Place {
    pub fn finite(p: i64) -> Result<Self> {
        if is_prime(p) {
            Ok(Place::Finite(p))
        } else {
            Err(Error::NotPrime(p))
        }
    }

    pub fn prime(self) -> Option<i64> {
        match self {
            Place::Finite(p) => Some(p),
            Place::Infinity => None,
        }
    }
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Finite(p) => write!(f, "{p}"),
            Place::Infinity => f.write_str("inf"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    pub sign: i8,
    /// `(prime, exponent)` with strictly increasing primes.
    pub factors: Vec<(i64, u32)>,
}

impl Factorization {
    pub fn primes(&self) -> impl Iterator<Item = i64> + '_ {
        self.factors.iter().map(|&(p, _)| p)
    }

    /// Multiplies the factorization back out.
    pub fn value(&self) -> Result<i64> {
        self.factors.iter().try_fold(i64::from(self.sign), |acc, &(p, e)| {
            p.checked_pow(e)
                .and_then(|pe| acc.checked_mul(pe))
                .ok_or(Error::Overflow("factorization product"))
        })
    }
}

fn abs_checked(n: i64) -> Result<u64> {
    if n == 0 {
        return Err(Error::Zero);
    }
    if n == i64::MIN {
        return Err(Error::OutOfRange(n as i128));
    }
    Ok(n.unsigned_abs())
}

/// Trial division up to the square root.
pub fn factorize(n: i64) -> Result<Factorization> {
    let mut m = abs_checked(n)?;
    let mut factors = Vec::new();
    let mut push = |m: &mut u64, p: u64| {
        let mut e = 0;
        while m.is_multiple_of(p) {
            *m /= p;
            e += 1;
        }
        if e > 0 {
            factors.push((p as i64, e));
        }
    };
    push(&mut m, 2);
    push(&mut m, 3);
    let mut p = 5u64;
    while p * p <= m {
        push(&mut m, p);
        push(&mut m, p + 2);
        p += 6;
    }
    if m > 1 {
        factors.push((m as i64, 1));
    }
    Ok(Factorization { sign: if n < 0 { -1 } else { 1 }, factors })
}

/// Distinct primes dividing `n`, ascending. Empty for `n = ±1`.
pub fn prime_divisors(n: i64) -> Result<Vec<i64>> {
    Ok(factorize(n)?.primes().collect())
}

pub fn is_prime(n: i64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let n = n as u64;
    let mut q = 3u64;
    while q * q <= n {
        if n.is_multiple_of(q) {
            return false;
        }
        q += 2;
    }
    true
}

/// The squarefree `s` with `n / s` a positive square.
pub fn squarefree_part(n: i64) -> Result<i64> {
    let f = factorize(n)?;
    Ok(f.factors.iter().filter(|&&(_, e)| e % 2 == 1).fold(i64::from(f.sign), |acc, &(p, _)| acc * p))
}

pub fn is_squarefree(n: i64) -> bool {
    factorize(n).is_ok_and(|f| f.factors.iter().all(|&(_, e)| e == 1))
}

/// Exponent of the prime `p` in `n`. `n` must be nonzero.
pub fn valuation(mut n: i64, p: i64) -> u32 {
    debug_assert!(n != 0 && p >= 2);
    let mut v = 0;
    while n % p == 0 {
        n /= p;
        v += 1;
    }
    v
}

pub fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.unsigned_abs(), b.unsigned_abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a as i64
}

/// Kronecker symbol `(a/n)`, the multiplicative extension of the Jacobi symbol
/// to all nonzero `n` (with `(a/2)` read off `a mod 8`).
pub fn kronecker(a: i64, n: i64) -> i8 {
    let mut a = i128::from(a);
    let mut n = i128::from(n);
    if n == 0 {
        return i8::from(a == 1 || a == -1);
    }
    let mut k: i8 = 1;
    if n < 0 {
        n = -n;
        if a < 0 {
            k = -k;
        }
    }
    while n % 2 == 0 {
        if a % 2 == 0 {
            return 0;
        }
        n /= 2;
        if matches!(a.rem_euclid(8), 3 | 5) {
            k = -k;
        }
    }
    // Jacobi symbol for odd positive n.
    a = a.rem_euclid(n);
    while a != 0 {
        while a % 2 == 0 {
            a /= 2;
            if matches!(n % 8, 3 | 5) {
                k = -k;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a % 4 == 3 && n % 4 == 3 {
            k = -k;
        }
        a %= n;
    }
    if n == 1 {
        k
    } else {
        0
    }
}

/// Splits `n` as `p^v * u` with `p ∤ u`.
fn split_off(mut n: i64, p: i64) -> (u32, i64) {
    let mut v = 0;
    while n % p == 0 {
        n /= p;
        v += 1;
    }
    (v, n)
}

fn sign_pow(negative: bool) -> i8 {
    if negative {
        -1
    } else {
        1
    }
}

/// Hilbert symbol `(a, b)_v` for nonzero integers.
///
/// # Panics
/// If `a` or `b` is zero.
pub fn hilbert_symbol(a: i64, b: i64, v: Place) -> i8 {
    assert!(a != 0 && b != 0, "Hilbert symbol of zero");
    match v {
        Place::Infinity => sign_pow(a < 0 && b < 0),
        Place::Finite(2) => {
            let (alpha, u) = split_off(a, 2);
            let (beta, w) = split_off(b, 2);
            let eps = |x: i64| (x.rem_euclid(4) == 3) as u32;
            let omega = |x: i64| matches!(x.rem_euclid(8), 3 | 5) as u32;
            let e = eps(u) * eps(w) + alpha * omega(w) + beta * omega(u);
            sign_pow(e % 2 == 1)
        }
        Place::Finite(p) => {
            debug_assert!(is_prime(p));
            let (alpha, u) = split_off(a, p);
            let (beta, w) = split_off(b, p);
            let mut s = sign_pow(alpha * beta % 2 == 1 && p % 4 == 3);
            if beta % 2 == 1 {
                s *= kronecker(u, p);
            }
            if alpha % 2 == 1 {
                s *= kronecker(w, p);
            }
            s
        }
    }
}

/// Hilbert symbol for nonzero rationals given as `(numerator, denominator)`.
///
/// `n/m` and `n*m` share a square class, so the symbol splits into four
/// integer symbols.
pub fn hilbert_symbol_rational(a: (i64, i64), b: (i64, i64), v: Place) -> Result<i8> {
    if a.0 == 0 || a.1 == 0 || b.0 == 0 || b.1 == 0 {
        return Err(Error::Zero);
    }
    Ok([a.0, a.1].into_iter().flat_map(|x| [b.0, b.1].map(|y| hilbert_symbol(x, y, v))).product())
}

/// The places where `(a, b)_v` can differ from +1: the real place, 2, and
/// the odd primes dividing `a·b`.
pub fn relevant_places(values: &[i64]) -> Result<Vec<Place>> {
    let mut primes = vec![2];
    for &x in values {
        primes.extend(prime_divisors(x)?);
    }
    primes.sort_unstable();
    primes.dedup();
    let mut places: Vec<Place> = primes.into_iter().map(Place::Finite).collect();
    places.push(Place::Infinity);
    Ok(places)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn factorize_examples() {
        assert_eq!(factorize(1).unwrap(), Factorization { sign: 1, factors: vec![] });
        assert_eq!(factorize(-12).unwrap(), Factorization { sign: -1, factors: vec![(2, 2), (3, 1)] });
        assert_eq!(factorize(9973).unwrap().factors, vec![(9973, 1)]);
        assert_eq!(factorize(0), Err(Error::Zero));
        assert!(factorize(i64::MIN).is_err());
        assert_eq!(factorize(i64::MAX).unwrap().value().unwrap(), i64::MAX);
    }

    #[test]
    fn squarefree_examples() {
        assert_eq!(squarefree_part(4).unwrap(), 1);
        assert_eq!(squarefree_part(-18).unwrap(), -2);
        assert_eq!(squarefree_part(360).unwrap(), 10);
        assert!(squarefree_part(0).is_err());
    }

    #[test]
    fn kronecker_examples() {
        assert_eq!(kronecker(2, 7), 1);
        assert_eq!(kronecker(-1, 3), -1);
        assert_eq!(kronecker(12345, 1), 1);
        assert_eq!(kronecker(-4, 2), 0);
        assert_eq!(kronecker(-7, 2), 1);
        assert_eq!(kronecker(-3, 2), -1);
    }

    #[test]
    fn kronecker_matches_euler_criterion() {
        for p in [3i64, 5, 7, 11, 13, 101] {
            for a in -30..30i64 {
                let euler = {
                    let (mut r, mut base, mut e) = (1i64, a.rem_euclid(p), (p - 1) / 2);
                    while e > 0 {
                        if e & 1 == 1 {
                            r = r * base % p;
                        }
                        base = base * base % p;
                        e >>= 1;
                    }
                    if r == p - 1 {
                        -1
                    } else {
                        r as i8
                    }
                };
                assert_eq!(kronecker(a, p), euler, "({a}/{p})");
            }
        }
    }

    #[test]
    fn hilbert_examples() {
        assert_eq!(hilbert_symbol(-1, -1, Place::Infinity), -1);
        assert_eq!(hilbert_symbol(3, 5, Place::Finite(11)), 1);
        assert_eq!(hilbert_symbol(2, 7, Place::Finite(7)), 1);
        assert_eq!(hilbert_symbol(-3, -1, Place::Finite(3)), -1);
        assert_eq!(hilbert_symbol(-1, -1, Place::Finite(2)), -1);
        assert_eq!(hilbert_symbol(2, -1, Place::Finite(2)), 1);
        assert_eq!(hilbert_symbol(2, 3, Place::Finite(2)), -1);
    }

    #[test]
    fn rational_symbol_uses_square_class() {
        let v = Place::Finite(2);
        assert_eq!(hilbert_symbol_rational((1, 2), (3, 1), v).unwrap(), hilbert_symbol(2, 3, v));
        assert!(hilbert_symbol_rational((0, 1), (1, 1), v).is_err());
    }

    #[test]
    fn place_validation() {
        assert!(Place::finite(4).is_err());
        assert_eq!(Place::finite(7).unwrap(), Place::Finite(7));
        assert!(Place::Finite(1_000_003) < Place::Infinity);
    }

    fn nonzero() -> impl Strategy<Value = i64> {
        (-100_000i64..100_000).prop_filter("nonzero", |x| *x != 0)
    }

    proptest! {
        #[test]
        fn factorization_reconstructs(n in nonzero()) {
            prop_assert_eq!(factorize(n).unwrap().value().unwrap(), n);
        }

        #[test]
        fn squarefree_part_ignores_squares(n in nonzero(), m in 1i64..300) {
            prop_assert_eq!(squarefree_part(n * m * m).unwrap(), squarefree_part(n).unwrap());
        }

        #[test]
        fn hilbert_reciprocity(a in nonzero(), b in nonzero()) {
            let prod: i8 = relevant_places(&[a, b]).unwrap()
                .into_iter()
                .map(|v| hilbert_symbol(a, b, v))
                .product();
            prop_assert_eq!(prod, 1);
        }

        #[test]
        fn hilbert_square_class_and_bimultiplicative(
            a in -3000i64..3000, a2 in -3000i64..3000, b in -3000i64..3000, s in 1i64..40,
        ) {
            prop_assume!(a != 0 && a2 != 0 && b != 0);
            for v in relevant_places(&[a, a2, b]).unwrap() {
                prop_assert_eq!(hilbert_symbol(a * s * s, b, v), hilbert_symbol(a, b, v));
                prop_assert_eq!(
                    hilbert_symbol(a, b, v) * hilbert_symbol(a2, b, v),
                    hilbert_symbol(a * a2, b, v)
                );
                prop_assert_eq!(hilbert_symbol(a, b, v), hilbert_symbol(b, a, v));
                prop_assert_eq!(hilbert_symbol(a, -a, v), 1);
            }
        }

        #[test]
        fn kronecker_multiplicative(a in -500i64..500, b in -500i64..500, n in 1i64..500) {
            prop_assert_eq!(kronecker(a * b, n), kronecker(a, n) * kronecker(b, n));
            prop_assert_eq!(kronecker(a, n * 3), kronecker(a, n) * kronecker(a, 3));
        }
    }
}
