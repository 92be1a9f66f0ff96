//! Local solvability of `z² = a·x² + b·y²` by direct search, used to check
//! the Hilbert symbol formulas without sharing any code with them.

use bianchi_core::arith::{self, Place};

/// Whether `a·x² + b·y² − z²` has a zero mod `p^k` with one coordinate equal to 1.
fn has_normalized_zero(a: i128, b: i128, p: i128, k: u32) -> bool {
    let form = |x: i128, y: i128, z: i128| a * x * x + b * y * y - z * z;
    // Each closure places the two free coordinates around the fixed one.
    let layouts: [&dyn Fn(i128, i128) -> i128; 3] =
        [&|u, v| form(1, u, v), &|u, v| form(u, 1, v), &|u, v| form(u, v, 1)];
    layouts.iter().any(|f| lift(f, p, k, 0, 1, 0, 0))
}

/// Extends `(u, v) mod p^j` one base-`p` digit at a time.
fn lift(f: &dyn Fn(i128, i128) -> i128, p: i128, k: u32, j: u32, pj: i128, u: i128, v: i128) -> bool {
    if j == k {
        return true;
    }
    let next = pj * p;
    (0..p).any(|du| {
        (0..p).any(|dv| {
            let (u2, v2) = (u + du * pj, v + dv * pj);
            f(u2, v2).rem_euclid(next) == 0 && lift(f, p, k, j + 1, next, u2, v2)
        })
    })
}

/// `(a, b)_p` from the existence of a primitive solution mod `p^K`,
/// `K = 3 + v_p(4ab)`, after reducing `a` and `b` to squarefree parts.
pub fn symbol_by_search(a: i64, b: i64, v: Place) -> i8 {
    let (a, b) = (arith::squarefree_part(a).expect("nonzero"), arith::squarefree_part(b).expect("nonzero"));
    let solvable = match v {
        Place::Infinity => a > 0 || b > 0,
        Place::Finite(p) => {
            let k = 3 + arith::valuation(4 * a * b, p);
            has_normalized_zero(a.into(), b.into(), p.into(), k)
        }
    };
    if solvable {
        1
    } else {
        -1
    }
}
