//! Brute-force bigraded Hochschild cohomology of a trivial extension algebra.
//!
//! Uses the reduced bar complex relative to `E = span{e_v}`: `r`-cochains are
//! `E`-bimodule maps `B̄^{⊗_E r} → B`, where `B̄` is spanned by the non-lazy paths
//! and all dual paths. A basis cochain sends one composable chain to one basis
//! element of `B` and every other chain to zero.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::linalg::{rank, SparseRow};
use crate::quiver::TrivialExtensionAlgebra;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Chain {
    pub elems: Vec<usize>,
    pub left: usize,
    pub right: usize,
}

#[derive(Clone, Debug)]
pub struct RelativeBarComplexSlice {
    pub r: usize,
    pub s: i64,
    /// `(chain, value)` pairs.
    pub basis: Vec<(Chain, usize)>,
    /// Column `j` of `d: C^{r,s} → C^{r+1,s}` as sparse entries over the basis of `C^{r+1,s}`.
    pub differential: Vec<Vec<(usize, i64)>>,
    pub target_dim: usize,
}

struct Complex<'a> {
    b: &'a TrivialExtensionAlgebra,
    reduced: Vec<usize>,
    /// Basis elements of `B` grouped by `(left, right)` vertex.
    by_ends: HashMap<(usize, usize), Vec<usize>>,
}

impl<'a> Complex<'a> {
    fn new(b: &'a TrivialExtensionAlgebra) -> Self {
        let reduced = (0..b.dim()).filter(|&x| b.is_dual(x) || !b.path_of(x).is_lazy()).collect();
        let mut by_ends: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
        for x in 0..b.dim() {
            by_ends.entry((b.left_vertex(x), b.right_vertex(x))).or_default().push(x);
        }
        Self { b, reduced, by_ends }
    }

    fn chains(&self, r: usize) -> Vec<Chain> {
        let b = self.b;
        if r == 0 {
            return (0..b.paths.quiver.vertices)
                .map(|v| Chain {
                    elems: Vec::new(),
                    left: v,
                    right: v,
                })
                .collect();
        }
        let mut layer: Vec<Vec<usize>> = self.reduced.iter().map(|&x| vec![x]).collect();
        for _ in 1..r {
            let mut next = Vec::new();
            for c in &layer {
                let end = b.right_vertex(*c.last().unwrap());
                for &x in &self.reduced {
                    if b.left_vertex(x) == end {
                        let mut c2 = c.clone();
                        c2.push(x);
                        next.push(c2);
                    }
                }
            }
            layer = next;
        }
        layer
            .into_iter()
            .map(|elems| Chain {
                left: b.left_vertex(elems[0]),
                right: b.right_vertex(*elems.last().unwrap()),
                elems,
            })
            .collect()
    }

    fn basis(&self, r: usize, s: i64) -> Vec<(Chain, usize)> {
        let mut out = Vec::new();
        for c in self.chains(r) {
            let w: i64 = c.elems.iter().map(|&x| self.b.weight(x)).sum();
            if let Some(ys) = self.by_ends.get(&(c.left, c.right)) {
                for &y in ys {
                    if self.b.weight(y) - w == s {
                        out.push((c.clone(), y));
                    }
                }
            }
        }
        out.sort();
        out
    }

    /// `δφ(x_1..x_{r+1}) = ±x_1 φ(x_2..) + Σ (−1)^i φ(..x_i x_{i+1}..) + (−1)^{r+1} φ(..x_r) x_{r+1}`.
    fn differential(&self, r: usize, s: i64, src: &[(Chain, usize)], dst: &[(Chain, usize)]) -> Vec<Vec<(usize, i64)>> {
        let b = self.b;
        let src_index: HashMap<(&Chain, usize), usize> = src.iter().enumerate().map(|(i, (c, y))| ((c, *y), i)).collect();
        let mut cols: Vec<BTreeMap<usize, i64>> = vec![BTreeMap::new(); src.len()];
        let mut add = |col: usize, row: usize, v: i64| {
            let e = cols[col].entry(row).or_insert(0);
            *e += v;
        };
        // group target basis by chain so each (r+1)-chain is processed once
        let mut by_chain: BTreeMap<&Chain, Vec<(usize, usize)>> = BTreeMap::new();
        for (row, (c, z)) in dst.iter().enumerate() {
            by_chain.entry(c).or_default().push((*z, row));
        }
        for (x, rows) in by_chain {
            let row_of = |z: usize| rows.iter().find(|(zz, _)| *zz == z).map(|(_, r)| *r);
            let xs = &x.elems;
            // first term
            let first = xs[0];
            let sign0 = if (b.degree(first) * s).rem_euclid(2) == 0 { 1 } else { -1 };
            let tail = Chain {
                elems: xs[1..].to_vec(),
                left: b.right_vertex(first),
                right: x.right,
            };
            for &y in self.by_ends.get(&(tail.left, tail.right)).into_iter().flatten() {
                if let (Some(&col), Some(z)) = (src_index.get(&(&tail, y)), b.mul(first, y)) {
                    if let Some(row) = row_of(z) {
                        add(col, row, sign0);
                    }
                }
            }
            // inner terms
            for i in 0..r {
                let Some(p) = b.mul(xs[i], xs[i + 1]) else { continue };
                let mut elems = xs[..i].to_vec();
                elems.push(p);
                elems.extend(&xs[i + 2..]);
                let c = Chain {
                    elems,
                    left: x.left,
                    right: x.right,
                };
                let sign = if (i + 1) % 2 == 0 { 1 } else { -1 };
                for &(z, row) in &rows {
                    if let Some(&col) = src_index.get(&(&c, z)) {
                        add(col, row, sign);
                    }
                }
            }
            // last term
            let last = xs[r];
            let head = Chain {
                elems: xs[..r].to_vec(),
                left: x.left,
                right: b.left_vertex(last),
            };
            let sign = if (r + 1) % 2 == 0 { 1 } else { -1 };
            for &y in self.by_ends.get(&(head.left, head.right)).into_iter().flatten() {
                if let (Some(&col), Some(z)) = (src_index.get(&(&head, y)), b.mul(y, last)) {
                    if let Some(row) = row_of(z) {
                        add(col, row, sign);
                    }
                }
            }
        }
        cols.into_iter()
            .map(|m| m.into_iter().filter(|(_, v)| *v != 0).collect())
            .collect()
    }
}

pub fn cochain_slice(b: &TrivialExtensionAlgebra, r: usize, s: i64) -> RelativeBarComplexSlice {
    let cx = Complex::new(b);
    let basis = cx.basis(r, s);
    let next = cx.basis(r + 1, s);
    let differential = cx.differential(r, s, &basis, &next);
    RelativeBarComplexSlice {
        r,
        s,
        basis,
        differential,
        target_dim: next.len(),
    }
}

fn to_rows(cols: &[Vec<(usize, i64)>]) -> Vec<SparseRow> {
    cols.iter()
        .map(|c| c.iter().map(|&(i, v)| (i, BigInt::from(v))).collect())
        .collect()
}

/// `d_{r+1} ∘ d_r = 0` on the slice `(r, s)`.
pub fn check_d_squared(b: &TrivialExtensionAlgebra, r: usize, s: i64) -> bool {
    let d0 = cochain_slice(b, r, s);
    let d1 = cochain_slice(b, r + 1, s);
    d0.differential.iter().all(|col| {
        let mut acc: BTreeMap<usize, i64> = BTreeMap::new();
        for &(mid, v) in col {
            for &(row, w) in &d1.differential[mid] {
                *acc.entry(row).or_insert(0) += v * w;
            }
        }
        acc.values().all(|&x| x == 0)
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleTable {
    /// `(t, s) ↦ dim`, nonzero entries only.
    pub dims: BTreeMap<(i64, i64), u64>,
    pub r_max: usize,
    pub n: usize,
}

impl OracleTable {
    /// Entries with `0 ≤ t − s ≤ r_max − 1` are complete.
    pub fn is_certified(&self, t: i64, s: i64) -> bool {
        (0..self.r_max as i64).contains(&(t - s))
    }

    pub fn dim(&self, t: i64, s: i64) -> u64 {
        self.dims.get(&(t, s)).copied().unwrap_or(0)
    }

    /// Weight range that can carry cochains of length `< r_max`.
    pub fn weight_range(&self) -> (i64, i64) {
        let n = self.n as i64;
        (-n * self.r_max as i64, n)
    }
}

/// Dimensions `dim C^{r,s}` and ranks of `d_r` for `r = 0..=r_top`.
fn slice_data(b: &TrivialExtensionAlgebra, s: i64, r_top: usize) -> (Vec<usize>, Vec<usize>) {
    let cx = Complex::new(b);
    let bases: Vec<Vec<(Chain, usize)>> = (0..=r_top + 1).map(|r| cx.basis(r, s)).collect();
    let dims: Vec<usize> = bases.iter().map(Vec::len).collect();
    let ranks: Vec<usize> = (0..=r_top)
        .map(|r| {
            if bases[r].is_empty() || bases[r + 1].is_empty() {
                0
            } else {
                rank(to_rows(&cx.differential(r, s, &bases[r], &bases[r + 1])))
            }
        })
        .collect();
    (dims, ranks)
}

/// Cohomology dimensions for `r < r_max`, reported at `t = r + s`.
pub fn hh_bigraded_oracle(b: &TrivialExtensionAlgebra, r_max: usize) -> Result<OracleTable> {
    if r_max < 2 {
        return Err(Error::RMaxTooSmall(r_max));
    }
    let n = b.n as i64;
    let weights: Vec<i64> = (-n * r_max as i64..=n).collect();
    let per: Vec<Vec<((i64, i64), u64)>> = weights
        .par_iter()
        .map(|&s| {
            let (dims, ranks) = slice_data(b, s, r_max - 1);
            (0..r_max)
                .filter_map(|r| {
                    let below = if r == 0 { 0 } else { ranks[r - 1] };
                    let h = dims[r] - ranks[r] - below;
                    (h > 0).then_some(((r as i64 + s, s), h as u64))
                })
                .collect()
        })
        .collect();
    Ok(OracleTable {
        dims: per.into_iter().flatten().collect(),
        r_max,
        n: b.n,
    })
}

/// `(Σ (−1)^r dim C^{r,s}, Σ (−1)^r dim H^{r,s})` over `r ≤ r_top`; equal when
/// `C^{r,s}` vanishes beyond `r_top`.
pub fn euler_characteristics(b: &TrivialExtensionAlgebra, s: i64, r_top: usize) -> (i64, i64, bool) {
    let (dims, ranks) = slice_data(b, s, r_top);
    let mut chi_c = 0;
    let mut chi_h = 0;
    for r in 0..=r_top {
        let sign = if r % 2 == 0 { 1 } else { -1 };
        let below = if r == 0 { 0 } else { ranks[r - 1] };
        chi_c += sign * dims[r] as i64;
        chi_h += sign * (dims[r] - ranks[r] - below) as i64;
    }
    (chi_c, chi_h, dims[r_top + 1] == 0)
}
