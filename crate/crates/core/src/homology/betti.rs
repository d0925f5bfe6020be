use std::collections::HashMap;

use num_traits::{One, Zero};
use serde::Serialize;

use super::complex::{SimplicialComplex, Simplex};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Sparse column: `(row, coefficient)` pairs sorted by row.
type Column = Vec<(usize, i64)>;

/// Simplicial chain complex with boundary matrices over the integers.
/// Orientation follows sorted vertex order; the sign of deleting position
/// `i` is `(-1)^i`.
#[derive(Clone, Debug)]
pub struct ChainComplex {
    /// `simplices[k]`: the k-simplices.
    pub simplices: Vec<Vec<Simplex>>,
    /// `boundaries[k]`: columns of `∂_k : C_k -> C_{k-1}` for `k >= 1`;
    /// `boundaries[0]` is empty.
    pub boundaries: Vec<Vec<Column>>,
}

impl ChainComplex {
    pub fn new(k: &SimplicialComplex) -> Self {
        let top = (k.dim() + 1).max(0) as usize;
        let simplices: Vec<Vec<Simplex>> = (0..top).map(|d| k.of_dim(d)).collect();
        let mut boundaries = vec![Vec::new()];
        for d in 1..top {
            let index: HashMap<&Simplex, usize> = simplices[d - 1].iter().enumerate().map(|(i, s)| (s, i)).collect();
            let cols = simplices[d]
                .iter()
                .map(|s| {
                    let mut col: Column = (0..s.len())
                        .map(|i| {
                            let mut f = s.clone();
                            f.remove(i);
                            (index[&f], if i % 2 == 0 { 1 } else { -1 })
                        })
                        .collect();
                    col.sort_unstable();
                    col
                })
                .collect();
            boundaries.push(cols);
        }
        ChainComplex { simplices, boundaries }
    }

    /// Verifies `∂_{k-1} ∘ ∂_k = 0` for every `k`.
    pub fn check_boundary_squared(&self) -> Result<()> {
        for k in 2..self.boundaries.len() {
            for (j, col) in self.boundaries[k].iter().enumerate() {
                let mut acc: HashMap<usize, i64> = HashMap::new();
                for &(r, c) in col {
                    for &(r2, c2) in &self.boundaries[k - 1][r] {
                        *acc.entry(r2).or_default() += c * c2;
                    }
                }
                if acc.values().any(|&x| x != 0) {
                    return Err(Error::violation("boundary squared", format!("column {j} of dimension {k}")));
                }
            }
        }
        Ok(())
    }

    /// Rank over the rationals of `∂_k`.
    pub fn boundary_rank(&self, k: usize) -> usize {
        if k == 0 || k >= self.boundaries.len() {
            return 0;
        }
        rational_rank(&self.boundaries[k])
    }
}

/// Exact rank over the rationals of a sparse integer matrix given by columns,
/// by column reduction on lowest nonzero rows.
pub fn rational_rank(cols: &[Column]) -> usize {
    let mut pivot_of_low: HashMap<usize, Vec<(usize, Scalar)>> = HashMap::new();
    let mut rank = 0;
    for col in cols {
        let mut c: Vec<(usize, Scalar)> = col.iter().map(|&(r, x)| (r, Scalar::from_integer(x.into()))).collect();
        while let Some((low, lc)) = c.last().cloned() {
            let Some(p) = pivot_of_low.get(&low) else { break };
            // c -= (lc / p_low) * p, where p is normalized so p_low = 1
            c = axpy(&c, &-lc, p);
        }
        if let Some((low, lc)) = c.last().cloned() {
            let inv = Scalar::one() / lc;
            let normed = c.into_iter().map(|(r, x)| (r, x * &inv)).collect();
            pivot_of_low.insert(low, normed);
            rank += 1;
        }
    }
    rank
}

/// `a + s * b` on sorted sparse vectors, dropping zeros.
fn axpy(a: &[(usize, Scalar)], s: &Scalar, b: &[(usize, Scalar)]) -> Vec<(usize, Scalar)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let take_a = j == b.len() || (i < a.len() && a[i].0 < b[j].0);
        let take_b = i == a.len() || (j < b.len() && b[j].0 < a[i].0);
        if take_a {
            out.push(a[i].clone());
            i += 1;
        } else if take_b {
            out.push((b[j].0, s * &b[j].1));
            j += 1;
        } else {
            let x = &a[i].1 + s * &b[j].1;
            if !x.is_zero() {
                out.push((a[i].0, x));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case", tag = "kind", content = "dim")]
pub enum Verdict {
    Spherical(isize),
    Acyclic,
    Neither,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VerdictMode {
    Spherical(isize),
    Acyclic,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BettiReport {
    pub dim: isize,
    /// Reduced Betti numbers over the rationals; entry `k` is the number in
    /// degree `k - 1`, so the list starts in degree -1.
    pub reduced_betti: Vec<usize>,
    pub f_vector: Vec<usize>,
    pub reduced_euler: i64,
    pub verdict: Verdict,
    pub caveat: &'static str,
}

pub const PROXY_CAVEAT: &str =
    "homology over the rationals only: vanishing reduced homology does not decide homotopy type or simple connectivity";

impl BettiReport {
    /// Reduced Betti number in degree `k` (zero outside the computed range).
    pub fn b(&self, k: isize) -> usize {
        usize::try_from(k + 1).ok().and_then(|i| self.reduced_betti.get(i)).copied().unwrap_or(0)
    }

    pub fn is_acyclic(&self) -> bool {
        self.reduced_betti.iter().all(|&b| b == 0)
    }

    /// Dimension `d` and reduced homology concentrated in degree `d`.
    pub fn is_spherical(&self, d: isize) -> bool {
        self.dim == d && (-1..d).all(|k| self.b(k) == 0)
    }
}

pub fn betti(k: &SimplicialComplex) -> Result<BettiReport> {
    let cc = ChainComplex::new(k);
    cc.check_boundary_squared()?;
    let dim = k.dim();
    let f: Vec<usize> = cc.simplices.iter().map(Vec::len).collect();
    // ranks[d] = rank of ∂_d; ∂_0 is the augmentation
    let top = f.len();
    let mut ranks = vec![0usize; top + 1];
    if top > 0 {
        ranks[0] = 1;
    }
    for d in 1..top {
        ranks[d] = cc.boundary_rank(d);
    }
    let mut reduced = vec![1 - ranks[0]];
    for d in 0..top {
        reduced.push(f[d] - ranks[d] - ranks[d + 1]);
    }
    let euler = k.reduced_euler();
    let alt: i64 = reduced.iter().enumerate().map(|(i, &b)| if i % 2 == 1 { b as i64 } else { -(b as i64) }).sum();
    if alt != euler {
        return Err(Error::violation("euler characteristic", format!("betti sum {alt} vs simplex count {euler}")));
    }
    let mut report = BettiReport {
        dim,
        reduced_betti: reduced,
        f_vector: f,
        reduced_euler: euler,
        verdict: Verdict::Neither,
        caveat: PROXY_CAVEAT,
    };
    report.verdict = if report.is_acyclic() {
        Verdict::Acyclic
    } else if report.is_spherical(dim) {
        Verdict::Spherical(dim)
    } else {
        Verdict::Neither
    };
    Ok(report)
}

pub fn check_verdict(k: &SimplicialComplex, mode: VerdictMode) -> Result<(bool, BettiReport)> {
    let r = betti(k)?;
    let ok = match mode {
        VerdictMode::Spherical(d) => r.is_spherical(d),
        VerdictMode::Acyclic => r.is_acyclic(),
    };
    Ok((ok, r))
}
