//! Full-rank `Z_p`-lattices in `Q_p⁴` that contain `p^K·Z_p⁴` and lie in `Z_p⁴`,
//! stored in a canonical echelon form so equality is structural.

/// Rows form an upper-triangular basis with diagonal `p^vᵢ` (`vᵢ ≤ K`);
/// entries above a pivot are reduced modulo that pivot. A row with `vᵢ = K`
/// stands for `p^K·eᵢ`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PadicLattice {
    p: i128,
    k: u32,
    exps: [u32; 4],
    rows: [[i128; 4]; 4],
}

fn valuation(x: i128, p: i128, cap: u32) -> u32 {
    if x == 0 {
        return cap;
    }
    let mut x = x;
    let mut v = 0;
    while v < cap && x % p == 0 {
        x /= p;
        v += 1;
    }
    v
}

/// Inverse of a unit modulo `m`.
fn inverse_mod(a: i128, m: i128) -> i128 {
    let (mut r0, mut r1) = (a.rem_euclid(m), m);
    let (mut s0, mut s1) = (1i128, 0i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    debug_assert_eq!(r0, 1, "{a} is not a unit mod {m}");
    s0.rem_euclid(m)
}

impl PadicLattice {
    pub fn modulus(&self) -> i128 {
        self.p.pow(self.k)
    }

    /// `p^e·Z_p⁴`.
    pub fn scaled_standard(p: i128, k: u32, e: u32) -> Self {
        let gens: Vec<[i128; 4]> = (0..4)
            .map(|i| {
                let mut row = [0; 4];
                row[i] = p.pow(e.min(k));
                row
            })
            .collect();
        Self::span(p, k, &gens)
    }

    /// The lattice spanned by `gens` together with `p^K·Z_p⁴`.
    pub fn span(p: i128, k: u32, gens: &[[i128; 4]]) -> Self {
        let m = p.pow(k);
        let mut pool: Vec<[i128; 4]> = gens.iter().map(|g| g.map(|x| x.rem_euclid(m))).collect();
        let mut rows = [[0i128; 4]; 4];
        let mut exps = [k; 4];
        for col in 0..4 {
            let best = pool.iter().enumerate().map(|(i, g)| (valuation(g[col], p, k), i)).min();
            let Some((v, idx)) = best.filter(|&(v, _)| v < k) else {
                rows[col][col] = 0;
                continue;
            };
            let mut pivot = pool.swap_remove(idx);
            let unit = pivot[col] / p.pow(v);
            let inv = inverse_mod(unit, m);
            pivot = pivot.map(|x| (x * inv).rem_euclid(m));
            for g in &mut pool {
                let factor = g[col] / p.pow(v);
                for j in 0..4 {
                    g[j] = (g[j] - factor * pivot[j]).rem_euclid(m);
                }
            }
            // p^(K−v)·pivot vanishes in this column but may carry information
            // further right; without it the form would not be canonical.
            let shift = p.pow(k - v);
            pool.push(pivot.map(|x| (x * shift).rem_euclid(m)));
            exps[col] = v;
            rows[col] = pivot;
        }
        // Reduce entries above each pivot into [0, p^v).
        for i in 0..4 {
            for j in i + 1..4 {
                let pj = p.pow(exps[j]);
                let q = rows[i][j].div_euclid(pj);
                if q != 0 && exps[j] < k {
                    let rj = rows[j];
                    for c in 0..4 {
                        rows[i][c] = (rows[i][c] - q * rj[c]).rem_euclid(m);
                    }
                }
            }
        }
        Self { p, k, exps, rows }
    }

    /// Basis vectors, including the implicit `p^K·eᵢ` rows.
    pub fn basis(&self) -> Vec<[i128; 4]> {
        (0..4)
            .map(|i| {
                if self.exps[i] < self.k {
                    self.rows[i]
                } else {
                    let mut row = [0; 4];
                    row[i] = self.p.pow(self.k);
                    row
                }
            })
            .collect()
    }

    /// Sum of the diagonal exponents; smaller means a larger lattice.
    pub fn colength(&self) -> u32 {
        self.exps.iter().sum()
    }

    pub fn contains(&self, other: &Self) -> bool {
        let mut gens = self.basis();
        gens.extend(other.basis());
        Self::span(self.p, self.k, &gens) == *self
    }

    /// Sublattice of `v` with `ℓ(v) ≡ 0 mod p^e`.
    pub fn impose(&self, form: &[i128; 4], e: u32) -> Self {
        let e = e.min(self.k);
        if e == 0 {
            return self.clone();
        }
        let q = self.p.pow(e);
        let basis = self.basis();
        let vals: Vec<i128> = basis
            .iter()
            .map(|b| (0..4).map(|j| form[j].rem_euclid(q) * b[j] % q).sum::<i128>().rem_euclid(q))
            .collect();
        let Some((v, i0)) =
            vals.iter().enumerate().map(|(i, &c)| (valuation(c, self.p, e), i)).min().filter(|&(v, _)| v < e)
        else {
            return self.clone();
        };
        let pv = self.p.pow(v);
        let rest = self.p.pow(e - v);
        let inv = inverse_mod(vals[i0] / pv, rest);
        let mut gens: Vec<[i128; 4]> = Vec::with_capacity(4);
        for (j, b) in basis.iter().enumerate() {
            if j == i0 {
                gens.push(b.map(|x| x * rest));
            } else {
                let t = (vals[j] / pv * inv).rem_euclid(rest);
                gens.push(std::array::from_fn(|c| b[c] - t * basis[i0][c]));
            }
        }
        Self::span(self.p, self.k, &gens)
    }
}
