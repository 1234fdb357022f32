//! Landau-Ginzburg orbifold models `(A^{n+2}, Γ, w)` with the auxiliary variable `x_0`.
//!
//! The character lattice `Char(Γ)` is presented on the generators
//! `χ, χ_0, χ_1, ..., χ_{n+1}` (in that order) with one relation
//! `Σ_j g_ij χ_j = χ` per row of the group matrix `g`, plus
//! `χ_0 + χ_1 + ... + χ_{n+1} = χ`.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::abelian::{DualCharacter, FgAbelianGroup, GroupElement, IntegerMatrix};
use crate::error::{Error, Result};
use crate::polynomial::{Exponents, MonomialPolynomial};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    A,
    D,
    E6,
    E7,
    E8,
}

impl Family {
    pub fn parse(s: &str) -> Option<Family> {
        match s.to_ascii_uppercase().as_str() {
            "A" => Some(Family::A),
            "D" => Some(Family::D),
            "E6" => Some(Family::E6),
            "E7" => Some(Family::E7),
            "E8" => Some(Family::E8),
            _ => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Family::A => "A",
            Family::D => "D",
            Family::E6 => "E6",
            Family::E7 => "E7",
            Family::E8 => "E8",
        }
    }

    /// Validates the rank for this family.
    pub fn check_rank(self, rank: usize) -> Result<()> {
        let ok = match self {
            Family::A => rank >= 1,
            Family::D => rank >= 4,
            Family::E6 => rank == 6,
            Family::E7 => rank == 7,
            Family::E8 => rank == 8,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::Inadmissible(format!("rank {rank} for type {}", self.name())))
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Preset identification carried by models built with [`LgModel::preset`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PresetId {
    pub family: Family,
    pub rank: usize,
}

/// Degrees attached to variables: lattice degrees and rational q-degrees.
#[derive(Clone, Debug)]
pub struct Grading {
    pub lattice: FgAbelianGroup,
    pub chi: GroupElement,
    /// `deg x_i` for `i = 0..n+1`.
    pub var_degrees: Vec<GroupElement>,
    /// `q_i = χ_i / χ` for `i = 0..n+1`.
    pub q: Vec<BigRational>,
}

impl Grading {
    pub fn monomial_degree(&self, exps: &[u32]) -> GroupElement {
        let mut d = GroupElement::zero(self.chi.len());
        for (i, &k) in exps.iter().enumerate() {
            if k > 0 {
                d = d.add(&self.var_degrees[i].scale_i64(k as i64));
            }
        }
        d
    }

    pub fn monomial_q(&self, exps: &[u32]) -> BigRational {
        exps.iter()
            .enumerate()
            .filter(|(_, &k)| k > 0)
            .map(|(i, &k)| &self.q[i] * BigRational::from_integer(BigInt::from(k)))
            .fold(BigRational::zero(), |a, b| a + b)
    }

    /// Rational q-degree of a lattice element, i.e. its image in `Char(Γ) ⊗ Q = Q χ`.
    pub fn q_of(&self, x: &GroupElement) -> BigRational {
        // coordinates are (χ, χ_0, ..., χ_{n+1})
        let mut acc = BigRational::from_integer(x.0[0].clone());
        for (i, c) in x.0.iter().skip(1).enumerate() {
            if !c.is_zero() {
                acc += &self.q[i] * BigRational::from_integer(c.clone());
            }
        }
        acc
    }
}

#[derive(Clone, Debug)]
pub struct LgModel {
    /// `w` in variables `x_0..x_{n+1}`; never involves `x_0`.
    pub polynomial: MonomialPolynomial,
    pub n: usize,
    /// Square matrix of size `n+1` whose rows define the relations of `Γ`.
    pub group_matrix: IntegerMatrix,
    pub grading: Grading,
    /// Set for presets; general models are unvalidated.
    pub preset: Option<PresetId>,
}

/// One element `γ ∈ ker χ`, as a character of `Char(Γ)/<χ>`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sector {
    pub id: usize,
    pub phi: DualCharacter,
    /// `fixed[i]` iff `x_i` is `γ`-invariant.
    pub fixed: Vec<bool>,
    pub codim: usize,
    /// `Σ_{j ∉ F} χ_j`.
    pub nu: GroupElement,
    /// `φ(χ_i) ∈ [0,1)` for `i = 0..n+1`, i.e. `t_i = exp(2πi φ(χ_i))`.
    pub angles: Vec<BigRational>,
}

impl Sector {
    pub fn fixed_indices(&self) -> Vec<usize> {
        (0..self.fixed.len()).filter(|&i| self.fixed[i]).collect()
    }

    pub fn contains_x0(&self) -> bool {
        self.fixed[0]
    }

    pub fn is_identity(&self) -> bool {
        self.fixed.iter().all(|&f| f)
    }

    pub fn is_fully_twisted(&self) -> bool {
        self.fixed.iter().all(|&f| !f)
    }

    /// The tuple `(t_0, ..., t_{n+1})` as roots of unity.
    pub fn display_tuple(&self) -> String {
        let parts: Vec<String> = self.angles.iter().map(display_root_of_unity).collect();
        format!("({})", parts.join(", "))
    }

    pub fn fixed_set_string(&self) -> String {
        format_fixed_set(&self.fixed)
    }
}

pub fn format_fixed_set(fixed: &[bool]) -> String {
    let idx: Vec<String> = (0..fixed.len()).filter(|&i| fixed[i]).map(|i| i.to_string()).collect();
    format!("{{{}}}", idx.join(","))
}

fn display_root_of_unity(angle: &BigRational) -> String {
    if angle.is_zero() {
        "1".into()
    } else if *angle == BigRational::new(1.into(), 2.into()) {
        "-1".into()
    } else {
        format!("e({angle})")
    }
}

fn rational(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Solves `A q = 1` over the rationals by Gauss-Jordan elimination.
fn solve_unit_rhs(a: &IntegerMatrix) -> Result<Vec<BigRational>> {
    let n = a.rows();
    let mut m: Vec<Vec<BigRational>> = (0..n)
        .map(|i| {
            let mut row: Vec<BigRational> = a.row(i).iter().map(|x| BigRational::from_integer(x.clone())).collect();
            row.push(BigRational::one());
            row
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !m[r][col].is_zero()).ok_or(Error::SingularMatrix)?;
        m.swap(col, piv);
        let p = m[col][col].clone();
        for x in m[col].iter_mut() {
            *x = &*x / &p;
        }
        for r in 0..n {
            if r != col && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                for c in 0..=n {
                    let v = &f * &m[col][c];
                    m[r][c] -= v;
                }
            }
        }
    }
    Ok(m.into_iter().map(|r| r[n].clone()).collect())
}

fn diagonal(entries: &[i64]) -> IntegerMatrix {
    let mut m = IntegerMatrix::zeros(entries.len(), entries.len());
    for (i, &e) in entries.iter().enumerate() {
        m.set(i, i, BigInt::from(e));
    }
    m
}

/// Polynomial `Σ_i Π_j x_j^{a_ij}` on variables `x_0..x_{n+1}` (column `j` of `A` is `x_{j+1}`).
fn polynomial_from_matrix(a: &IntegerMatrix) -> Result<MonomialPolynomial> {
    let nv = a.cols() + 1;
    let mut terms = Vec::with_capacity(a.rows());
    for i in 0..a.rows() {
        let mut e: Exponents = vec![0; nv];
        for j in 0..a.cols() {
            let x = a.get(i, j);
            if x.is_negative() {
                return Err(Error::Inadmissible("negative exponent".into()));
            }
            e[j + 1] = x.to_u32().ok_or_else(|| Error::Inadmissible("exponent too large".into()))?;
        }
        terms.push(e);
    }
    Ok(MonomialPolynomial::from_exponents(nv, terms))
}

/// Matrix transpose (Berglund-Hübsch dual exponent matrix).
pub fn transpose(a: &IntegerMatrix) -> IntegerMatrix {
    a.transpose()
}

impl LgModel {
    /// Builds the model for a polynomial and an explicit group matrix.
    pub fn with_group(polynomial: MonomialPolynomial, group_matrix: IntegerMatrix, n: usize) -> Result<Self> {
        if n < 1 {
            return Err(Error::Inadmissible("n must be at least 1".into()));
        }
        if !group_matrix.is_square() || group_matrix.rows() != n + 1 {
            return Err(Error::Inadmissible(format!(
                "group matrix must be {0}x{0} for n = {n}",
                n + 1
            )));
        }
        if polynomial.variable_count() != n + 2 {
            return Err(Error::Inadmissible("polynomial must have n+2 variables".into()));
        }
        if group_matrix.determinant().is_zero() {
            return Err(Error::SingularMatrix);
        }
        let q_tail = solve_unit_rhs(&group_matrix)?;
        if let Some(bad) = q_tail.iter().find(|q| !q.is_positive()) {
            return Err(Error::NonPositiveWeights(bad.to_string()));
        }
        let q0 = BigRational::one() - q_tail.iter().fold(BigRational::zero(), |a, b| a + b);
        let mut q = vec![q0];
        q.extend(q_tail);

        // generators: 0 = χ, 1 + i = χ_i
        let g = n + 3;
        let mut rel = IntegerMatrix::zeros(n + 2, g);
        for i in 0..=n {
            rel.set(i, 0, BigInt::from(-1));
            for j in 0..=n {
                rel.set(i, j + 2, group_matrix.get(i, j).clone());
            }
        }
        rel.set(n + 1, 0, BigInt::from(-1));
        for j in 0..n + 2 {
            rel.set(n + 1, j + 1, BigInt::one());
        }
        let lattice = FgAbelianGroup::new(g, rel);
        let chi = GroupElement::basis(g, 0);
        let var_degrees = (0..n + 2).map(|i| GroupElement::basis(g, i + 1)).collect();
        let grading = Grading {
            lattice,
            chi,
            var_degrees,
            q,
        };
        if !grading.lattice.has_infinite_order(&grading.chi)? {
            return Err(Error::Inadmissible("χ has finite order".into()));
        }
        for (e, _) in polynomial.terms() {
            if e[0] != 0 {
                return Err(Error::Inadmissible("w must not involve x_0".into()));
            }
            let d = grading.monomial_degree(e);
            if !grading.lattice.equal(&d, &grading.chi)? {
                return Err(Error::NotHomogeneous(crate::polynomial::format_monomial(e)));
            }
        }
        Ok(Self {
            polynomial,
            n,
            group_matrix,
            grading,
            preset: None,
        })
    }

    /// Invertible polynomial from its exponent matrix, with the maximal group.
    pub fn from_exponent_matrix(a: &IntegerMatrix, n: usize) -> Result<Self> {
        if !a.is_square() || a.rows() != n + 1 {
            return Err(Error::Inadmissible(format!("exponent matrix must be {0}x{0}", n + 1)));
        }
        if a.determinant().is_zero() {
            return Err(Error::SingularMatrix);
        }
        let q = solve_unit_rhs(a)?;
        let half = rational(1, 2);
        if let Some(bad) = q.iter().find(|x| !x.is_positive() || **x > half) {
            return Err(Error::NonPositiveWeights(format!("q = {bad} outside (0, 1/2]")));
        }
        let poly = polynomial_from_matrix(a)?;
        Self::with_group(poly, a.clone(), n)
    }

    pub fn preset(family: Family, rank: usize, n: usize) -> Result<Self> {
        family.check_rank(rank)?;
        if n < 1 {
            return Err(Error::Inadmissible("n must be at least 1".into()));
        }
        let twos = |k: usize| vec![2i64; k];
        let (poly, group) = match family {
            Family::A => {
                let mut d = vec![rank as i64 + 1];
                d.extend(twos(n));
                let m = diagonal(&d);
                (polynomial_from_matrix(&m)?, m)
            }
            Family::D => {
                let l = rank as i64;
                let mut d = vec![2 * l - 2];
                d.extend(twos(n));
                let fermat = polynomial_from_matrix(&diagonal(&d))?;
                // non-maximal group: (ℓ-1)χ_1 + χ_2 = 2χ_2 = ... = χ
                let chain = IntegerMatrix::from_rows(&[[l - 1, 1], [0, 2]]);
                let group = if n == 1 { chain } else { chain.direct_sum(&diagonal(&twos(n - 1))) };
                (fermat, group)
            }
            Family::E6 | Family::E8 => {
                let a = if family == Family::E6 { 4 } else { 5 };
                let mut d = vec![a, 3];
                d.extend(twos(n - 1));
                let m = diagonal(&d);
                (polynomial_from_matrix(&m)?, m)
            }
            Family::E7 => {
                let chain = IntegerMatrix::from_rows(&[[3, 1], [0, 3]]);
                let m = if n == 1 { chain } else { chain.direct_sum(&diagonal(&twos(n - 1))) };
                (polynomial_from_matrix(&m)?, m)
            }
        };
        let mut model = Self::with_group(poly, group, n)?;
        model.preset = Some(PresetId { family, rank });
        Ok(model)
    }

    pub fn is_validated(&self) -> bool {
        self.preset.is_some()
    }

    pub fn variable_count(&self) -> usize {
        self.n + 2
    }

    pub fn chi(&self) -> &GroupElement {
        &self.grading.chi
    }

    pub fn chi_i(&self, i: usize) -> &GroupElement {
        &self.grading.var_degrees[i]
    }

    pub fn q(&self) -> &[BigRational] {
        &self.grading.q
    }

    /// `|Char(Γ)/<χ>|`, from the invariant factors of the quotient presentation.
    pub fn ker_chi_order(&self) -> Result<BigInt> {
        self.grading
            .lattice
            .quotient_by(&self.grading.chi)?
            .order()
            .ok_or(Error::InfiniteQuotient)
    }

    /// All `γ ∈ ker χ`, in the deterministic order of their character values.
    pub fn sectors(&self) -> Result<Vec<Sector>> {
        let duals = self.grading.lattice.enumerate_dual_of_quotient(&self.grading.chi)?;
        let nv = self.variable_count();
        let mut out = Vec::with_capacity(duals.len());
        for (id, phi) in duals.into_iter().enumerate() {
            let angles: Vec<BigRational> = (0..nv).map(|i| phi.eval(&self.grading.var_degrees[i])).collect();
            let fixed: Vec<bool> = angles.iter().map(Zero::is_zero).collect();
            let mut nu = GroupElement::zero(self.grading.chi.len());
            for i in (0..nv).filter(|&i| !fixed[i]) {
                nu = nu.add(&self.grading.var_degrees[i]);
            }
            let codim = fixed.iter().filter(|&&f| !f).count();
            out.push(Sector {
                id,
                phi,
                fixed,
                codim,
                nu,
                angles,
            });
        }
        Ok(out)
    }

    /// `w_γ`: `w` with every non-fixed variable set to zero.
    pub fn restrict(&self, sector: &Sector) -> MonomialPolynomial {
        self.polynomial.restrict_to(&sector.fixed)
    }

    pub fn describe(&self) -> String {
        match self.preset {
            Some(PresetId { family: f @ (Family::A | Family::D), rank }) => {
                format!("{f}_{rank} (n = {}): w = {}", self.n, self.polynomial)
            }
            Some(p) => format!("{} (n = {}): w = {}", p.family, self.n, self.polynomial),
            None => format!("unvalidated model (n = {}): w = {}", self.n, self.polynomial),
        }
    }
}
