//! Counts maximal orders `N` of `M₂(k_p)` with `F_p ∩ N` equal to a given
//! order, by walking the tree of maximal orders and intersecting lattices.
//!
//! Setting: `p` odd, ramified in `k`, `π = √−d`. The algebra
//! `F(τ) = { (a, b; τb̄, ā) }` has the `Q_p`-basis `1, P, E, PE` with
//! `P = diag(π, −π)` and `E = (0, 1; τ, 0)`. Its elements are handled through
//! coordinate vectors in that basis, scaled by `p^W` so every order considered
//! is an integral lattice containing `p^K·Z_p⁴`.

use crate::arith::{self, Place};
use crate::error::{Error, Result};
use crate::oracle::lattice::PadicLattice;
use crate::quadfield::{ImagQuadField, SplitType};
use crate::quaternion::normalize_tau;
use crate::ring::{Mat2, QuadInt, QuadRing};

type Elem = QuadInt<i128>;
type Mat = Mat2<i128>;

/// A vertex of the tree: the lattice spanned by the columns of
/// `J = (π^a, c; 0, π^(n−a))`, with `c` a representative modulo `π^a`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LocalLatticeVertex {
    pub distance: u32,
    pub a: u32,
    pub c: Elem,
}

struct LocalSetup {
    p: i128,
    d: i128,
    ring: QuadRing<i128>,
    basis: [Mat; 4],
}

impl LocalSetup {
    fn new(p: i64, d: i64, tau: i64) -> Self {
        let (p, d, tau) = (i128::from(p), i128::from(d), i128::from(tau));
        let ring = QuadRing::sqrt_minus(d);
        let (zero, one, pi) = (Elem::zero(), Elem::one(), Elem::new(0, 1));
        let t = Elem::int(tau);
        let basis = [
            Mat::identity(),
            Mat::new(pi, zero, zero, -pi),
            Mat::new(zero, one, t, zero),
            Mat::new(zero, pi, -ring.mul(t, pi), zero),
        ];
        Self { p, d, ring, basis }
    }

    fn pi_pow(&self, e: u32) -> Elem {
        self.ring.pow(Elem::new(0, 1), e)
    }

    /// Left multiplication by `P` in coordinates.
    fn times_p(&self, y: &[i128; 4]) -> [i128; 4] {
        [-self.d * y[1], y[0], -self.d * y[3], y[2]]
    }

    fn vertices(&self, max_distance: u32) -> Vec<LocalLatticeVertex> {
        let mut out = vec![LocalLatticeVertex { distance: 0, a: 0, c: Elem::zero() }];
        for n in 1..=max_distance {
            for a in 0..=n {
                let count = self.p.pow(a);
                for idx in 0..count {
                    let digits: Vec<i128> = (0..a).map(|i| idx / self.p.pow(i) % self.p).collect();
                    if a > 0 && a < n && digits[0] == 0 {
                        continue;
                    }
                    let c = digits
                        .iter()
                        .enumerate()
                        .fold(Elem::zero(), |acc, (i, &ci)| acc + self.pi_pow(i as u32).scale(ci));
                    out.push(LocalLatticeVertex { distance: n, a, c });
                }
            }
        }
        out
    }

    /// `p^W·(F ∩ J·M₂(o_p)·J⁻¹) + p^K·Z_p⁴` in coordinates, `W = ⌊K/2⌋`.
    fn intersection(&self, v: &LocalLatticeVertex, k: u32) -> PadicLattice {
        let n = v.distance;
        let j = Mat::new(self.pi_pow(v.a), v.c, Elem::zero(), self.pi_pow(n - v.a));
        let adj = j.adj();
        let conj: Vec<Mat> =
            self.basis.iter().map(|e| self.ring.mat_mul(&self.ring.mat_mul(&adj, e), &j)).collect();
        // X ∈ N ⇔ adj(J)·X·J ∈ π^n·M₂(o_p); with X = p^−W·Σ yᵢeᵢ this becomes a
        // condition π^(n+2W) on the entries, i.e. p-adic valuations
        // ⌈m/2⌉ on the rational part and ⌊m/2⌋ on the π part.
        let m = n + 2 * (k / 2);
        let mut lattice = PadicLattice::scaled_standard(self.p, k, 0);
        for entry in 0..4 {
            let coeffs: [Elem; 4] = std::array::from_fn(|b| conj[b].entries()[entry]);
            lattice = lattice.impose(&coeffs.map(|z| z.x), m.div_ceil(2));
            lattice = lattice.impose(&coeffs.map(|z| z.y), m / 2);
        }
        lattice
    }

    /// `Z_p + Z_p·P + P^r·F_max` in the same scaled coordinates.
    fn target(&self, f_max: &PadicLattice, r: u32, k: u32) -> PadicLattice {
        let w = self.p.pow(k / 2);
        let mut gens = vec![[w, 0, 0, 0], [0, w, 0, 0]];
        gens.extend(f_max.basis().iter().map(|b| (0..r).fold(*b, |y, _| self.times_p(&y))));
        PadicLattice::span(self.p, k, &gens)
    }
}

/// Number of maximal orders of `M₂(k_p)` cutting `F(τ)_p` in the order
/// `Z_p + Z_p·P + P^r·F_max` of index `p^r` in a maximal order `F_max`.
pub fn count_maximal_orders_local(p: i64, d: i64, tau: i64, r: u32) -> Result<u64> {
    let k = precision_for(r);
    let low = count_at_precision(p, d, tau, r, k, r + 1)?;
    let high = count_at_precision(p, d, tau, r, k + 1, r + 1)?;
    if low != high {
        return Err(Error::PrecisionUnstable { k, k_next: k + 1, low, high });
    }
    Ok(low)
}

/// Default precision in base-`p` digits.
pub fn precision_for(r: u32) -> u32 {
    r + 3
}

/// Whether `F(τ)_p` is split, i.e. `(τ, −d)_p = +1`.
pub fn tau_class_split(p: i64, d: i64, tau: i64) -> bool {
    arith::hilbert_symbol(tau, -d, Place::Finite(p)) == 1
}

/// The count with explicit precision `k` and search radius.
pub fn count_at_precision(p: i64, d: i64, tau: i64, r: u32, k: u32, radius: u32) -> Result<u64> {
    let field = ImagQuadField::new(d)?;
    if p == 2 || !arith::is_prime(p) {
        return Err(Error::Precondition(format!("{p} is not an odd prime")));
    }
    if field.splitting(p) != SplitType::Ramified {
        return Err(Error::Precondition(format!("{p} is not ramified in {field}")));
    }
    if tau == 0 {
        return Err(Error::Zero);
    }
    if k < 2 {
        return Err(Error::Precondition("precision must be at least 2".into()));
    }
    // A p-unit τ with the same norm-residue class gives an isomorphic algebra.
    let tau = if tau % p == 0 { normalize_tau(tau, &field)? } else { tau };
    let setup = LocalSetup::new(p, d, tau);
    let vertices = setup.vertices(radius.max(2));
    let orders: Vec<(LocalLatticeVertex, PadicLattice)> =
        vertices.iter().map(|v| (*v, setup.intersection(v, k))).collect();

    let base = PadicLattice::scaled_standard(setup.p, k, k / 2);
    let f_max = orders
        .iter()
        .filter(|(v, o)| v.distance <= 2 && o.contains(&base))
        .map(|(_, o)| o)
        .min_by_key(|o| o.colength())
        .expect("the base vertex contains the base order")
        .clone();
    if orders.iter().any(|(_, o)| o != &f_max && o.contains(&f_max)) {
        return Err(Error::Precondition("no maximal order of F found near the base vertex".into()));
    }
    let target = setup.target(&f_max, r, k);
    Ok(orders.iter().filter(|(v, o)| v.distance <= radius && *o == target).count() as u64)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn vertex_counts_per_sphere() {
        let s = LocalSetup::new(3, 3, 1);
        let vs = s.vertices(3);
        for n in 0..=3u32 {
            let expected = if n == 0 { 1 } else { 4 * 3usize.pow(n - 1) };
            assert_eq!(vs.iter().filter(|v| v.distance == n).count(), expected);
        }
    }

    #[test]
    fn basis_multiplication() {
        let s = LocalSetup::new(5, 5, 2);
        let pe = s.ring.mat_mul(&s.basis[1], &s.basis[2]);
        assert_eq!(pe, s.basis[3]);
        let pp = s.ring.mat_mul(&s.basis[1], &s.basis[1]);
        assert_eq!(pp, Mat::scalar(Elem::int(-5)));
    }

    #[test]
    fn base_vertex_gives_integral_coordinates() {
        let s = LocalSetup::new(3, 3, 1);
        let base = s.intersection(&s.vertices(0)[0], 4);
        assert_eq!(base, PadicLattice::scaled_standard(3, 4, 2));
    }

    #[test]
    fn trivial_index_counts_once() {
        for (p, d) in [(3, 3), (5, 5), (3, 6), (7, 7)] {
            for tau in [1, 2, 3] {
                assert_eq!(count_maximal_orders_local(p, d, tau, 0).unwrap(), 1, "p={p} d={d} τ={tau}");
            }
        }
    }

    #[test]
    fn rejects_bad_primes() {
        assert!(count_maximal_orders_local(2, 5, 1, 1).is_err());
        assert!(count_maximal_orders_local(5, 3, 1, 1).is_err());
    }
}
