//! Bounded-height search for D3, T and maximal D2 subgroups of `PSL₂(o)`.
//!
//! Non-central torsion in `SL₂(o)` has trace 0 or ±1, so the search only
//! needs those elements. A D2 is a pair of anticommuting trace-zero
//! elements `U`, `V`; it extends to a tetrahedral group exactly when
//! `W = (1 − U − V − UV)/2` is integral. A D3 pairs `U` of trace 1
//! (so `U³ = −1`) with a trace-zero `V` inverting it.

use rayon::prelude::*;

use crate::bianchi::SubgroupKind;
use crate::error::{Error, Result};
use crate::quadfield::ImagQuadField;
use crate::ring::{Mat2, QuadInt, QuadRing};
use crate::{GaussianMatrix, QuadInt64, QuadRing64};

pub const DEFAULT_HEIGHT: u32 = 10;
pub const MAX_HEIGHT: u32 = 16;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubgroupWitness {
    pub kind: SubgroupKind,
    /// `[U, V]`, plus `W` for the tetrahedral case.
    pub generators: Vec<GaussianMatrix>,
    pub relations_verified: bool,
}

fn box_elements(h: i64) -> Vec<QuadInt64> {
    (-h..=h).flat_map(|x| (-h..=h).map(move |y| QuadInt::new(x, y))).collect()
}

/// Every `A ∈ SL₂(o)` of trace 0, 1 or −1 whose entries have coordinates
/// bounded by `h`, sorted.
pub fn enumerate_torsion_elements(d: i64, h: u32) -> Result<Vec<GaussianMatrix>> {
    if h > MAX_HEIGHT {
        return Err(Error::HeightOutOfRange(h));
    }
    let ring: QuadRing64 = ImagQuadField::new(d)?.ring();
    let h = i64::from(h);
    let elems = box_elements(h);
    let one = QuadInt::one();
    let mut out: Vec<GaussianMatrix> = elems
        .par_iter()
        .flat_map_iter(|&a| {
            let elems = &elems;
            [-1i64, 0, 1].into_iter().flat_map(move |t| {
                let dd = QuadInt::int(t) - a;
                let ad = ring.mul(a, dd);
                let found: Vec<GaussianMatrix> = if dd.height() > h {
                    Vec::new()
                } else {
                    elems
                        .iter()
                        .flat_map(|&b| {
                            if b.is_zero() {
                                if ad == one {
                                    elems.iter().map(|&c| Mat2::new(a, b, c, dd)).collect()
                                } else {
                                    Vec::new()
                                }
                            } else {
                                ring.div_exact(ad - one, b)
                                    .filter(|c| c.height() <= h)
                                    .map(|c| Mat2::new(a, b, c, dd))
                                    .into_iter()
                                    .collect()
                            }
                        })
                        .collect()
                };
                found
            })
        })
        .collect();
    out.par_sort_unstable();
    Ok(out)
}

fn trace_of_product(ring: &QuadRing64, u: &GaussianMatrix, v: &GaussianMatrix) -> QuadInt64 {
    ring.mul(u.a, v.a) + ring.mul(u.b, v.c) + ring.mul(u.c, v.b) + ring.mul(u.d, v.d)
}

/// `1 − U − V − UV`, twice the tetrahedral extension.
fn doubled_extension(ring: &QuadRing64, u: &GaussianMatrix, v: &GaussianMatrix) -> GaussianMatrix {
    Mat2::identity() - *u - *v - ring.mat_mul(u, v)
}

fn is_even(m: &GaussianMatrix) -> bool {
    m.entries().iter().all(|e| e.x % 2 == 0 && e.y % 2 == 0)
}

/// Searches for a subgroup of the given type with generators of height at
/// most `h`. The first pair in sorted order wins, independent of threading.
pub fn find_subgroup(kind: SubgroupKind, d: i64, h: u32) -> Result<Option<SubgroupWitness>> {
    let ring: QuadRing64 = ImagQuadField::new(d)?.ring();
    let elements = enumerate_torsion_elements(d, h)?;
    let zero = QuadInt::zero();
    let with_trace = |t: i64| -> Vec<GaussianMatrix> {
        elements.iter().filter(|m| m.trace() == QuadInt::int(t)).copied().collect()
    };
    let involutions = with_trace(0);
    let found = match kind {
        SubgroupKind::D3 => with_trace(1).par_iter().find_map_first(|u| {
            involutions.iter().find(|v| trace_of_product(&ring, u, v) == zero).map(|v| vec![*u, *v])
        }),
        SubgroupKind::T | SubgroupKind::D2max => {
            let want_integral = kind == SubgroupKind::T;
            involutions.par_iter().find_map_first(|u| {
                involutions.iter().find_map(|v| {
                    if trace_of_product(&ring, u, v) != zero {
                        return None;
                    }
                    let w2 = doubled_extension(&ring, u, v);
                    match (want_integral, is_even(&w2)) {
                        (true, true) => Some(vec![*u, *v, w2.map(|e| QuadInt::new(e.x / 2, e.y / 2))]),
                        (false, false) => Some(vec![*u, *v]),
                        _ => None,
                    }
                })
            })
        }
    };
    Ok(found.map(|generators| {
        let mut w = SubgroupWitness { kind, generators, relations_verified: false };
        w.relations_verified = verify_witness(&ring, &w);
        w
    }))
}

/// Re-checks the defining relations of a witness by direct matrix arithmetic.
pub fn verify_witness(ring: &QuadRing<i64>, w: &SubgroupWitness) -> bool {
    let minus_one = -Mat2::identity();
    let gens = &w.generators;
    if gens.len() < 2 || gens.iter().any(|g| ring.det(g) != QuadInt::one()) {
        return false;
    }
    let (u, v) = (&gens[0], &gens[1]);
    let inverts = ring.mat_mul(&ring.mat_mul(v, u), &v.adj()) == u.adj();
    let v_involution = ring.mat_pow(v, 2) == minus_one;
    match w.kind {
        SubgroupKind::D3 => gens.len() == 2 && ring.mat_pow(u, 3) == minus_one && v_involution && inverts,
        SubgroupKind::T | SubgroupKind::D2max => {
            let d2 = ring.mat_pow(u, 2) == minus_one && v_involution && inverts;
            let w2 = doubled_extension(ring, u, v);
            if w.kind == SubgroupKind::D2max {
                return d2 && gens.len() == 2 && !is_even(&w2);
            }
            gens.len() == 3 && d2 && w2 == gens[2] + gens[2] && ring.mat_pow(&gens[2], 3) == minus_one
        }
    }
}
