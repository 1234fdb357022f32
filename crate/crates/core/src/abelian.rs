//! Finitely generated abelian groups presented by integer relation matrices.
//!
//! A group is `Z^g / rowspace(R)` for a relation matrix `R` with `g` columns.
//! All arithmetic goes through the Smith normal form `U R V = D`: in the
//! coordinates `y = x V` the relation lattice becomes `rowspace(D)`, so an
//! element is reduced by taking `y_i mod d_i` on torsion coordinates and
//! leaving free coordinates untouched.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Dense integer matrix with arbitrary-precision entries, row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntegerMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl IntegerMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            entries: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    /// Builds a matrix from rows of machine integers. Panics on ragged input.
    pub fn from_rows<R: AsRef<[i64]>>(rows: &[R]) -> Self {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut entries = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            let r = r.as_ref();
            assert_eq!(r.len(), cols, "ragged rows");
            entries.extend(r.iter().map(|&x| BigInt::from(x)));
        }
        Self {
            rows: rows.len(),
            cols,
            entries,
        }
    }

    /// Block-diagonal sum `self ⊕ other`.
    pub fn direct_sum(&self, other: &IntegerMatrix) -> Self {
        let mut m = Self::zeros(self.rows + other.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.set(i, j, self.get(i, j).clone());
            }
        }
        for i in 0..other.rows {
            for j in 0..other.cols {
                m.set(self.rows + i, self.cols + j, other.get(i, j).clone());
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: BigInt) {
        self.entries[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &IntegerMatrix) -> Self {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let idx = i * other.cols + j;
                    out.entries[idx] += a * other.get(k, j);
                }
            }
        }
        out
    }

    /// Row vector times matrix.
    pub fn vec_mul(&self, x: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(x.len(), self.rows, "dimension mismatch");
        let mut out = vec![BigInt::zero(); self.cols];
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, o) in out.iter_mut().enumerate() {
                *o += xi * self.get(i, j);
            }
        }
        out
    }

    /// Exact determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> BigInt {
        assert!(self.is_square(), "determinant of non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a: Vec<Vec<BigInt>> = (0..n).map(|i| self.row(i).to_vec()).collect();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                    Some(i) => {
                        a.swap(i, k);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                    a[i][j] = v / &prev;
                }
            }
            prev = a[k][k].clone();
        }
        sign * &a[n - 1][n - 1]
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.entries.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[dst] += q * row[src]
    fn add_row_multiple(&mut self, dst: usize, src: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let v = q * &self.entries[src * self.cols + j];
            self.entries[dst * self.cols + j] += v;
        }
    }

    /// col[dst] += q * col[src]
    fn add_col_multiple(&mut self, dst: usize, src: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let v = q * &self.entries[i * self.cols + src];
            self.entries[i * self.cols + dst] += v;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let idx = i * self.cols + j;
            self.entries[idx] = -std::mem::take(&mut self.entries[idx]);
        }
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self.get(i, j).is_zero()))
    }
}

impl fmt::Debug for IntegerMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<Vec<String>> = (0..self.rows)
            .map(|i| self.row(i).iter().map(|x| x.to_string()).collect())
            .collect();
        write!(f, "{rows:?}")
    }
}

/// Result of [`smith_normal_form`]: `u * m * v == d`.
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub u: IntegerMatrix,
    pub d: IntegerMatrix,
    pub v: IntegerMatrix,
    /// Inverse of `v`, tracked alongside the column operations.
    pub v_inv: IntegerMatrix,
}

impl SmithForm {
    /// Diagonal entries `d_1 | d_2 | ...`, length `min(rows, cols)`.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        (0..self.d.rows().min(self.d.cols()))
            .map(|i| self.d.get(i, i).clone())
            .collect()
    }
}

/// Smith normal form with minimal-absolute-value pivoting.
pub fn smith_normal_form(m: &IntegerMatrix) -> SmithForm {
    let (rows, cols) = (m.rows(), m.cols());
    let mut d = m.clone();
    let mut u = IntegerMatrix::identity(rows);
    let mut v = IntegerMatrix::identity(cols);
    let mut v_inv = IntegerMatrix::identity(cols);

    // Column operations are mirrored on v (as column ops) and on v_inv (as the
    // inverse row ops) so that v * v_inv stays the identity.
    let col_swap = |d: &mut IntegerMatrix, v: &mut IntegerMatrix, vi: &mut IntegerMatrix, a, b| {
        d.swap_cols(a, b);
        v.swap_cols(a, b);
        vi.swap_rows(a, b);
    };
    let col_add = |d: &mut IntegerMatrix,
                   v: &mut IntegerMatrix,
                   vi: &mut IntegerMatrix,
                   dst: usize,
                   src: usize,
                   q: &BigInt| {
        d.add_col_multiple(dst, src, q);
        v.add_col_multiple(dst, src, q);
        vi.add_row_multiple(src, dst, &-q);
    };

    for t in 0..rows.min(cols) {
        loop {
            // minimal nonzero |entry| in the trailing block
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    let x = d.get(i, j);
                    if x.is_zero() {
                        continue;
                    }
                    if best.is_none_or(|(bi, bj)| x.abs() < d.get(bi, bj).abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else {
                return finish(d, u, v, v_inv);
            };
            d.swap_rows(t, pi);
            u.swap_rows(t, pi);
            col_swap(&mut d, &mut v, &mut v_inv, t, pj);

            let mut clean = true;
            for i in t + 1..rows {
                if d.get(i, t).is_zero() {
                    continue;
                }
                let q = -d.get(i, t).div_floor(d.get(t, t));
                d.add_row_multiple(i, t, &q);
                u.add_row_multiple(i, t, &q);
                if !d.get(i, t).is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..cols {
                if d.get(t, j).is_zero() {
                    continue;
                }
                let q = -d.get(t, j).div_floor(d.get(t, t));
                col_add(&mut d, &mut v, &mut v_inv, j, t, &q);
                if !d.get(t, j).is_zero() {
                    clean = false;
                }
            }
            if !clean {
                continue;
            }
            // row and column t are clear; enforce divisibility on the rest
            let pivot = d.get(t, t).clone();
            let offender = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !d.get(i, j).is_multiple_of(&pivot)));
            match offender {
                Some(i) => {
                    let one = BigInt::one();
                    d.add_row_multiple(t, i, &one);
                    u.add_row_multiple(t, i, &one);
                }
                None => break,
            }
        }
        if d.get(t, t).is_negative() {
            d.negate_row(t);
            u.negate_row(t);
        }
    }
    finish(d, u, v, v_inv)
}

fn finish(d: IntegerMatrix, u: IntegerMatrix, v: IntegerMatrix, v_inv: IntegerMatrix) -> SmithForm {
    SmithForm { u, d, v, v_inv }
}

/// An element of a finitely generated abelian group, in generator coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement(pub Vec<BigInt>);

impl GroupElement {
    pub fn zero(len: usize) -> Self {
        Self(vec![BigInt::zero(); len])
    }

    pub fn basis(len: usize, i: usize) -> Self {
        let mut e = Self::zero(len);
        e.0[i] = BigInt::one();
        e
    }

    pub fn from_i64(coords: &[i64]) -> Self {
        Self(coords.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        Self(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        Self(self.0.iter().map(|a| a * k).collect())
    }

    pub fn scale_i64(&self, k: i64) -> Self {
        self.scale(&BigInt::from(k))
    }
}

/// A homomorphism from a finite quotient to `Q/Z`, given by its values on the
/// generators of the ambient presentation. Values are in lowest terms in `[0, 1)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DualCharacter {
    pub values: Vec<BigRational>,
}

impl DualCharacter {
    /// Evaluates the character on an element, reduced mod 1.
    pub fn eval(&self, x: &GroupElement) -> BigRational {
        assert_eq!(x.len(), self.values.len());
        let mut acc = BigRational::zero();
        for (c, v) in x.0.iter().zip(&self.values) {
            if !c.is_zero() {
                acc += v * BigRational::from_integer(c.clone());
            }
        }
        frac(&acc)
    }

    pub fn is_trivial(&self) -> bool {
        self.values.iter().all(Zero::is_zero)
    }
}

/// Fractional part in `[0, 1)`.
pub fn frac(x: &BigRational) -> BigRational {
    x - x.floor()
}

/// `Z^g / rowspace(relations)` with cached Smith data.
#[derive(Clone, Debug)]
pub struct FgAbelianGroup {
    generator_count: usize,
    relations: IntegerMatrix,
    snf: SmithForm,
    /// `d_i` for each SNF coordinate `0..g`; zero means a free coordinate.
    moduli: Vec<BigInt>,
}

impl FgAbelianGroup {
    pub fn new(generator_count: usize, relations: IntegerMatrix) -> Self {
        assert_eq!(relations.cols(), generator_count, "relation matrix width");
        let snf = smith_normal_form(&relations);
        let mut moduli = vec![BigInt::zero(); generator_count];
        for (i, d) in snf.invariant_factors().into_iter().enumerate() {
            moduli[i] = d;
        }
        Self {
            generator_count,
            relations,
            snf,
            moduli,
        }
    }

    pub fn generator_count(&self) -> usize {
        self.generator_count
    }

    pub fn relations(&self) -> &IntegerMatrix {
        &self.relations
    }

    pub fn smith(&self) -> &SmithForm {
        &self.snf
    }

    /// Invariant factors of the torsion part (entries > 1) and the free rank.
    pub fn structure(&self) -> (Vec<BigInt>, usize) {
        let torsion = self.moduli.iter().filter(|d| **d > BigInt::one()).cloned().collect();
        let rank = self.moduli.iter().filter(|d| d.is_zero()).count();
        (torsion, rank)
    }

    /// Order of the group, or `None` if infinite.
    pub fn order(&self) -> Option<BigInt> {
        if self.moduli.iter().any(Zero::is_zero) {
            None
        } else {
            Some(self.moduli.iter().product())
        }
    }

    fn check_len(&self, x: &GroupElement) -> Result<()> {
        if x.len() != self.generator_count {
            return Err(Error::LengthMismatch {
                expected: self.generator_count,
                found: x.len(),
            });
        }
        Ok(())
    }

    /// Reduced SNF coordinates: a complete invariant of the class of `x`.
    pub fn reduced_coordinates(&self, x: &GroupElement) -> Result<Vec<BigInt>> {
        self.check_len(x)?;
        let mut y = self.snf.v.vec_mul(&x.0);
        for (yi, d) in y.iter_mut().zip(&self.moduli) {
            if !d.is_zero() {
                *yi = yi.mod_floor(d);
            }
        }
        Ok(y)
    }

    /// Canonical representative of the class of `x`.
    pub fn normal_form(&self, x: &GroupElement) -> Result<GroupElement> {
        let y = self.reduced_coordinates(x)?;
        Ok(GroupElement(self.snf.v_inv.vec_mul(&y)))
    }

    pub fn equal(&self, x: &GroupElement, y: &GroupElement) -> Result<bool> {
        Ok(self.reduced_coordinates(x)? == self.reduced_coordinates(y)?)
    }

    pub fn is_zero(&self, x: &GroupElement) -> Result<bool> {
        Ok(self.reduced_coordinates(x)?.iter().all(Zero::is_zero))
    }

    pub fn has_infinite_order(&self, x: &GroupElement) -> Result<bool> {
        let y = self.reduced_coordinates(x)?;
        Ok(y.iter().zip(&self.moduli).any(|(yi, d)| d.is_zero() && !yi.is_zero()))
    }

    /// The unique `c` with `rho = c * chi`, if any. `chi` must have infinite order.
    pub fn solve_multiple(&self, rho: &GroupElement, chi: &GroupElement) -> Result<Option<BigInt>> {
        let yr = self.reduced_coordinates(rho)?;
        let yc = self.reduced_coordinates(chi)?;
        let free = (0..self.generator_count).find(|&i| self.moduli[i].is_zero() && !yc[i].is_zero());
        let Some(f) = free else {
            return Err(Error::FiniteOrder);
        };
        let (c, r) = yr[f].div_rem(&yc[f]);
        if !r.is_zero() {
            return Ok(None);
        }
        let diff = rho.sub(&chi.scale(&c));
        Ok(self.is_zero(&diff)?.then_some(c))
    }

    /// The group `G / <h>`.
    pub fn quotient_by(&self, h: &GroupElement) -> Result<FgAbelianGroup> {
        self.check_len(h)?;
        let mut rel = IntegerMatrix::zeros(self.relations.rows() + 1, self.generator_count);
        for i in 0..self.relations.rows() {
            for j in 0..self.generator_count {
                rel.set(i, j, self.relations.get(i, j).clone());
            }
        }
        for j in 0..self.generator_count {
            rel.set(self.relations.rows(), j, h.0[j].clone());
        }
        Ok(FgAbelianGroup::new(self.generator_count, rel))
    }

    /// All homomorphisms `G/<h> -> Q/Z`, sorted lexicographically by value vector.
    pub fn enumerate_dual_of_quotient(&self, h: &GroupElement) -> Result<Vec<DualCharacter>> {
        let q = self.quotient_by(h)?;
        if q.moduli.iter().any(Zero::is_zero) {
            return Err(Error::InfiniteQuotient);
        }
        // Only non-trivial cyclic factors carry characters.
        let factors: Vec<usize> = (0..q.generator_count).filter(|&i| q.moduli[i] > BigInt::one()).collect();
        let mut out = Vec::new();
        let mut counter = vec![BigInt::zero(); factors.len()];
        loop {
            let mut values = vec![BigRational::zero(); q.generator_count];
            for (j, val) in values.iter_mut().enumerate() {
                let mut acc = BigRational::zero();
                for (k, &i) in factors.iter().enumerate() {
                    let coeff = q.snf.v.get(j, i) * &counter[k];
                    if !coeff.is_zero() {
                        acc += BigRational::new(coeff, q.moduli[i].clone());
                    }
                }
                *val = frac(&acc);
            }
            out.push(DualCharacter { values });

            // odometer increment
            let mut k = 0;
            loop {
                if k == factors.len() {
                    out.sort();
                    out.dedup();
                    return Ok(out);
                }
                counter[k] += 1;
                if counter[k] < q.moduli[factors[k]] {
                    break;
                }
                counter[k] = BigInt::zero();
                k += 1;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> IntegerMatrix {
        IntegerMatrix::from_rows(rows)
    }

    fn check_snf(a: &IntegerMatrix) -> SmithForm {
        let s = smith_normal_form(a);
        assert_eq!(s.u.mul(a).mul(&s.v), s.d);
        assert!(s.d.is_diagonal());
        assert_eq!(s.u.determinant().abs(), BigInt::one());
        assert_eq!(s.v.determinant().abs(), BigInt::one());
        assert_eq!(s.v.mul(&s.v_inv), IntegerMatrix::identity(a.cols()));
        let f = s.invariant_factors();
        for w in f.windows(2) {
            assert!(!w[0].is_negative());
            if w[0].is_zero() {
                assert!(w[1].is_zero());
            } else {
                assert!(w[1].is_multiple_of(&w[0]));
            }
        }
        s
    }

    #[test]
    fn diag_two_three() {
        let s = check_snf(&m(&[&[2, 0], &[0, 3]]));
        assert_eq!(s.invariant_factors(), vec![BigInt::from(1), BigInt::from(6)]);
    }

    #[test]
    fn zero_matrix_is_fixed() {
        let z = IntegerMatrix::zeros(2, 2);
        let s = check_snf(&z);
        assert_eq!(s.d, z);
        assert_eq!(s.u, IntegerMatrix::identity(2));
        assert_eq!(s.v, IntegerMatrix::identity(2));
    }

    #[test]
    fn non_square_and_degenerate() {
        check_snf(&m(&[&[4, 6, 8], &[6, 9, 12]]));
        check_snf(&m(&[&[0, 0, 5]]));
        check_snf(&IntegerMatrix::zeros(0, 3));
        check_snf(&m(&[&[1], &[2], &[3]]));
    }

    #[test]
    fn determinant_matches_cofactor() {
        let a = m(&[&[2, -1, 0], &[1, 3, 4], &[0, 5, -2]]);
        // 2*(3*-2 - 4*5) - (-1)*(1*-2 - 0) = 2*(-26) - 2 = -54
        assert_eq!(a.determinant(), BigInt::from(-54));
        assert_eq!(m(&[&[0, 1], &[1, 0]]).determinant(), BigInt::from(-1));
    }

    #[test]
    fn solve_multiple_basic() {
        // Z with generator chi and x, relation 2x = chi: x has q-degree 1/2.
        let g = FgAbelianGroup::new(2, m(&[&[-1, 2]]));
        let chi = GroupElement::from_i64(&[1, 0]);
        let zero = GroupElement::zero(2);
        assert_eq!(g.solve_multiple(&zero, &chi).unwrap(), Some(BigInt::zero()));
        assert_eq!(g.solve_multiple(&GroupElement::from_i64(&[0, 2]), &chi).unwrap(), Some(BigInt::one()));
        assert_eq!(g.solve_multiple(&GroupElement::from_i64(&[0, 1]), &chi).unwrap(), None);
        assert_eq!(g.solve_multiple(&GroupElement::from_i64(&[0, -4]), &chi).unwrap(), Some(BigInt::from(-2)));
    }

    #[test]
    fn finite_order_chi_is_rejected() {
        let g = FgAbelianGroup::new(1, m(&[&[3]]));
        let chi = GroupElement::from_i64(&[1]);
        assert_eq!(g.solve_multiple(&chi, &chi), Err(Error::FiniteOrder));
    }

    #[test]
    fn length_mismatch() {
        let g = FgAbelianGroup::new(2, m(&[&[-1, 2]]));
        assert!(matches!(
            g.normal_form(&GroupElement::zero(3)),
            Err(Error::LengthMismatch { expected: 2, found: 3 })
        ));
    }

    #[test]
    fn infinite_quotient() {
        let g = FgAbelianGroup::new(2, m(&[&[0, 0]]));
        assert_eq!(
            g.enumerate_dual_of_quotient(&GroupElement::from_i64(&[1, 0])),
            Err(Error::InfiniteQuotient)
        );
    }

    #[test]
    fn trivial_quotient_has_single_zero_character() {
        let g = FgAbelianGroup::new(1, IntegerMatrix::zeros(0, 1));
        let duals = g.enumerate_dual_of_quotient(&GroupElement::from_i64(&[1])).unwrap();
        assert_eq!(duals.len(), 1);
        assert!(duals[0].is_trivial());
    }

    #[test]
    fn dual_of_cyclic_group() {
        // Z / (chi = 3x) ... quotient by chi is Z/3.
        let g = FgAbelianGroup::new(2, m(&[&[-1, 3]]));
        let chi = GroupElement::from_i64(&[1, 0]);
        let duals = g.enumerate_dual_of_quotient(&chi).unwrap();
        assert_eq!(duals.len(), 3);
        let x = GroupElement::from_i64(&[0, 1]);
        let mut vals: Vec<_> = duals.iter().map(|d| d.eval(&x)).collect();
        vals.sort();
        let third = |k| BigRational::new(BigInt::from(k), BigInt::from(3));
        assert_eq!(vals, vec![third(0), third(1), third(2)]);
        for d in &duals {
            assert!(d.eval(&chi).is_zero());
        }
    }
}
