//! Exact rank computations over `Q` by fraction-free sparse elimination.
//!
//! Rows are kept as primitive integer vectors (content divided out after each
//! elimination step), so no rational normalization is ever needed and the
//! rank is exact.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Sparse integer row, sorted by column, no explicit zeros.
pub type SparseRow = Vec<(usize, BigInt)>;

/// Builds a sparse row from `(column, value)` pairs, merging duplicates.
pub fn sparse_row<I: IntoIterator<Item = (usize, BigInt)>>(entries: I) -> SparseRow {
    let mut map: std::collections::BTreeMap<usize, BigInt> = std::collections::BTreeMap::new();
    for (c, v) in entries {
        *map.entry(c).or_insert_with(BigInt::zero) += v;
    }
    map.into_iter().filter(|(_, v)| !v.is_zero()).collect()
}

/// Clears denominators of a rational row.
pub fn integral_row(entries: &[(usize, BigRational)]) -> SparseRow {
    let lcm = entries.iter().fold(BigInt::one(), |acc, (_, v)| acc.lcm(v.denom()));
    sparse_row(entries.iter().map(|(c, v)| (*c, (v * BigRational::from_integer(lcm.clone())).to_integer())))
}

fn make_primitive(row: &mut SparseRow) {
    let Some(first) = row.first() else { return };
    let mut g = first.1.abs();
    for (_, v) in row.iter().skip(1) {
        if g.is_one() {
            break;
        }
        g = g.gcd(v);
    }
    if row[0].1.is_negative() {
        g = -g;
    }
    if !g.is_one() {
        for (_, v) in row.iter_mut() {
            *v = &*v / &g;
        }
    }
}

/// `a * x - b * y` on sparse rows.
fn combine(a: &BigInt, x: &SparseRow, b: &BigInt, y: &SparseRow) -> SparseRow {
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut i, mut j) = (0, 0);
    while i < x.len() || j < y.len() {
        let take_x = j >= y.len() || (i < x.len() && x[i].0 < y[j].0);
        let take_y = i >= x.len() || (j < y.len() && y[j].0 < x[i].0);
        if take_x {
            out.push((x[i].0, a * &x[i].1));
            i += 1;
        } else if take_y {
            out.push((y[j].0, -(b * &y[j].1)));
            j += 1;
        } else {
            let v = a * &x[i].1 - b * &y[j].1;
            if !v.is_zero() {
                out.push((x[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Incrementally built row-echelon basis of a subspace of `Q^n`.
#[derive(Default, Clone, Debug)]
pub struct Echelon {
    pivots: HashMap<usize, SparseRow>,
}

impl Echelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Reduces `row` against the basis; returns the (primitive) remainder.
    pub fn reduce(&self, mut row: SparseRow) -> SparseRow {
        make_primitive(&mut row);
        let mut start = 0;
        while start < row.len() {
            let (col, val) = (row[start].0, row[start].1.clone());
            match self.pivots.get(&col) {
                Some(p) => {
                    let lead = &p[0].1;
                    let g = lead.gcd(&val);
                    let (a, b) = (lead / &g, &val / &g);
                    row = combine(&a, &row, &b, p);
                    make_primitive(&mut row);
                    start = 0;
                }
                None => start += 1,
            }
        }
        row
    }

    /// Adds `row` to the span; returns true if the rank grew.
    pub fn insert(&mut self, row: SparseRow) -> bool {
        let mut row = row;
        make_primitive(&mut row);
        loop {
            let Some((col, val)) = row.first().cloned() else {
                return false;
            };
            match self.pivots.get(&col) {
                Some(p) => {
                    let lead = &p[0].1;
                    let g = lead.gcd(&val);
                    let (a, b) = (lead / &g, &val / &g);
                    row = combine(&a, &row, &b, p);
                    make_primitive(&mut row);
                }
                None => {
                    self.pivots.insert(col, row);
                    return true;
                }
            }
        }
    }
}

/// Rank over `Q` of the matrix with the given sparse rows.
pub fn rank<I: IntoIterator<Item = SparseRow>>(rows: I) -> usize {
    let mut rows: Vec<SparseRow> = rows.into_iter().filter(|r| !r.is_empty()).collect();
    // sparse rows first keeps fill-in down
    rows.sort_by_key(|r| r.len());
    let mut e = Echelon::new();
    for r in rows {
        e.insert(r);
    }
    e.rank()
}

/// Rank of a dense rational matrix.
pub fn dense_rank(rows: &[Vec<BigRational>]) -> usize {
    rank(rows.iter().map(|r| {
        let entries: Vec<(usize, BigRational)> =
            r.iter().enumerate().filter(|(_, v)| !v.is_zero()).map(|(c, v)| (c, v.clone())).collect();
        integral_row(&entries)
    }))
}
