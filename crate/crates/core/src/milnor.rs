//! Jacobi rings of weighted-homogeneous polynomials.
//!
//! Everything is sliced by exact `Char(Γ)`-degree. Slices are finite because
//! every variable involved has positive q-degree.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::abelian::GroupElement;
use crate::error::{Error, Result};
use crate::lgmodel::Grading;
use crate::linalg::{integral_row, rank, Echelon, SparseRow};
use crate::polynomial::{format_monomial, Exponents, MonomialPolynomial};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JacobiBasis {
    /// Exponent vectors over all model variables; zero outside the chosen variables.
    pub monomials: Vec<Exponents>,
    pub degrees: Vec<GroupElement>,
    pub q_degrees: Vec<BigRational>,
}

impl JacobiBasis {
    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }
}

/// `∂w/∂x_i` for each `i` in `vars`.
pub fn partials(w: &MonomialPolynomial, vars: &[usize]) -> Vec<MonomialPolynomial> {
    vars.iter().map(|&i| w.derivative(i)).collect()
}

/// `Π (1/q_i − 1)` over `vars`.
pub fn milnor_number(q: &[BigRational], vars: &[usize]) -> BigRational {
    vars.iter()
        .map(|&i| BigRational::one() / &q[i] - BigRational::one())
        .fold(BigRational::one(), |a, b| a * b)
}

/// Top q-degree of the Jacobi ring: `Σ (1 − 2 q_i)`.
pub fn socle_degree(q: &[BigRational], vars: &[usize]) -> BigRational {
    let two = BigRational::from_integer(BigInt::from(2));
    vars.iter()
        .map(|&i| BigRational::one() - &two * &q[i])
        .fold(BigRational::zero(), |a, b| a + b)
}

/// All monomials in `vars` with q-degree at most `limit`, each with its q-degree.
pub fn monomials_up_to(
    q: &[BigRational],
    vars: &[usize],
    variable_count: usize,
    limit: &BigRational,
) -> Vec<(Exponents, BigRational)> {
    fn rec(
        q: &[BigRational],
        vars: &[usize],
        pos: usize,
        cur: &mut Exponents,
        deg: BigRational,
        limit: &BigRational,
        out: &mut Vec<(Exponents, BigRational)>,
    ) {
        if pos == vars.len() {
            out.push((cur.clone(), deg));
            return;
        }
        let v = vars[pos];
        let mut d = deg;
        loop {
            rec(q, vars, pos + 1, cur, d.clone(), limit, out);
            d += &q[v];
            if d > *limit {
                break;
            }
            cur[v] += 1;
        }
        cur[v] = 0;
    }
    let mut out = Vec::new();
    if limit.is_negative() {
        return out;
    }
    assert!(vars.iter().all(|&v| q[v].is_positive()), "monomial enumeration needs positive q-degrees");
    let mut cur = vec![0; variable_count];
    rec(q, vars, 0, &mut cur, BigRational::zero(), limit, &mut out);
    out
}

type DegreeKey = Vec<BigInt>;

fn key_of(grading: &Grading, d: &GroupElement) -> Result<DegreeKey> {
    Ok(grading.lattice.normal_form(d)?.0)
}

/// Monomials grouped by exact degree.
struct Slices {
    slices: BTreeMap<DegreeKey, Vec<Exponents>>,
    q_of: BTreeMap<DegreeKey, BigRational>,
}

fn slice_monomials(grading: &Grading, mons: Vec<(Exponents, BigRational)>) -> Result<Slices> {
    let mut slices: BTreeMap<DegreeKey, Vec<Exponents>> = BTreeMap::new();
    let mut q_of = BTreeMap::new();
    for (m, qd) in mons {
        let key = key_of(grading, &grading.monomial_degree(&m))?;
        q_of.entry(key.clone()).or_insert(qd);
        slices.entry(key).or_default().push(m);
    }
    for v in slices.values_mut() {
        // descending lex: larger x_1 exponent first
        v.sort_by(|a, b| b.cmp(a));
    }
    Ok(Slices { slices, q_of })
}

fn poly_row(p: &MonomialPolynomial, index: &BTreeMap<&Exponents, usize>) -> Option<SparseRow> {
    let mut entries = Vec::with_capacity(p.len());
    for (e, c) in p.terms() {
        entries.push((*index.get(e)?, c.clone()));
    }
    Some(integral_row(&entries))
}

/// Monomial basis of `S'/(∂w')` where `S'` is the polynomial ring on `vars`.
///
/// Per slice, the ideal generators `u·∂_i w` are eliminated first, then
/// monomials are adjoined greedily in descending lexicographic order.
pub fn jacobi_basis(w: &MonomialPolynomial, vars: &[usize], grading: &Grading) -> Result<JacobiBasis> {
    let nv = w.variable_count();
    let q = &grading.q;
    for &v in vars {
        let half = BigRational::new(1.into(), 2.into());
        if !q[v].is_positive() || q[v] > half {
            return Err(Error::NonIsolated(format!("q_{v} = {} outside (0, 1/2]", q[v])));
        }
    }
    let top = socle_degree(q, vars);
    let max_q = vars.iter().map(|&v| q[v].clone()).max().unwrap_or_else(BigRational::zero);
    let limit = &top + &max_q;
    let mons = monomials_up_to(q, vars, nv, &limit);
    let slices = slice_monomials(grading, mons)?;
    let parts = partials(w, vars);

    // ideal generators, bucketed by degree
    let mut gens: BTreeMap<DegreeKey, Vec<MonomialPolynomial>> = BTreeMap::new();
    for (i, p) in parts.iter().enumerate() {
        if p.is_zero() {
            continue;
        }
        let shift_q = BigRational::one() - &q[vars[i]];
        let ulimit = &limit - &shift_q;
        for (u, _) in monomials_up_to(q, vars, nv, &ulimit) {
            let g = p.shifted(&u);
            let lead = g.terms().next().map(|(e, _)| e.clone()).expect("nonzero");
            let key = key_of(grading, &grading.monomial_degree(&lead))?;
            gens.entry(key).or_default().push(g);
        }
    }

    let mut out = JacobiBasis {
        monomials: Vec::new(),
        degrees: Vec::new(),
        q_degrees: Vec::new(),
    };
    for (key, mons) in &slices.slices {
        let qd = &slices.q_of[key];
        let index: BTreeMap<&Exponents, usize> = mons.iter().enumerate().map(|(i, m)| (m, i)).collect();
        let mut ech = Echelon::new();
        for g in gens.get(key).into_iter().flatten() {
            let row = poly_row(g, &index).expect("ideal generator leaves its slice");
            ech.insert(row);
        }
        let mut chosen = Vec::new();
        for (i, m) in mons.iter().enumerate() {
            if ech.insert(vec![(i, BigInt::one())]) {
                chosen.push(m.clone());
            }
        }
        if !chosen.is_empty() && qd > &top {
            return Err(Error::NonIsolated(format!(
                "{} survives above the socle degree",
                format_monomial(&chosen[0])
            )));
        }
        for m in chosen {
            out.degrees.push(grading.monomial_degree(&m));
            out.q_degrees.push(qd.clone());
            out.monomials.push(m);
        }
    }
    let mu = milnor_number(q, vars);
    if BigRational::from_integer(BigInt::from(out.len())) != mu {
        return Err(Error::NonIsolated(format!("basis has {} elements, Milnor number {mu}", out.len())));
    }
    // deterministic presentation: by q-degree, then descending lex
    let mut idx: Vec<usize> = (0..out.len()).collect();
    idx.sort_by(|&a, &b| {
        out.q_degrees[a]
            .cmp(&out.q_degrees[b])
            .then_with(|| out.monomials[b].cmp(&out.monomials[a]))
    });
    Ok(JacobiBasis {
        monomials: idx.iter().map(|&i| out.monomials[i].clone()).collect(),
        degrees: idx.iter().map(|&i| out.degrees[i].clone()).collect(),
        q_degrees: idx.iter().map(|&i| out.q_degrees[i].clone()).collect(),
    })
}

/// Monomials in `vars` of exact degree `target`.
fn monomials_of_degree(grading: &Grading, vars: &[usize], nv: usize, target: &GroupElement) -> Result<Vec<Exponents>> {
    let qd = grading.q_of(target);
    if qd.is_negative() {
        return Ok(Vec::new());
    }
    let key = key_of(grading, target)?;
    let mut out = Vec::new();
    for (m, d) in monomials_up_to(&grading.q, vars, nv, &qd) {
        if d == qd && key_of(grading, &grading.monomial_degree(&m))? == key {
            out.push(m);
        }
    }
    out.sort_by(|a, b| b.cmp(a));
    Ok(out)
}

fn subsets(k: usize, p: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, k: usize, p: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == p {
            out.push(cur.clone());
            return;
        }
        for i in start..k {
            cur.push(i);
            rec(i + 1, k, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, k, p, &mut Vec::new(), &mut out);
    out
}

/// `dim H_p` of the Koszul complex `Λ^p V'^∨ ⊗ S'` with contraction by `dw'`,
/// in the exact degree `target`. `x_i^∨` has degree `χ − χ_i`.
pub fn koszul_slice_cohomology(
    w: &MonomialPolynomial,
    vars: &[usize],
    grading: &Grading,
    target: &GroupElement,
    p: usize,
) -> Result<usize> {
    let nv = w.variable_count();
    let parts = partials(w, vars);
    let dual_deg = |i: usize| grading.chi.sub(&grading.var_degrees[vars[i]]);

    // basis of K_j in the slice: (subset, monomial)
    let basis = |j: usize| -> Result<Vec<(Vec<usize>, Exponents)>> {
        let mut out = Vec::new();
        if j > vars.len() {
            return Ok(out);
        }
        for s in subsets(vars.len(), j) {
            let mut d = target.clone();
            for &i in &s {
                d = d.sub(&dual_deg(i));
            }
            for m in monomials_of_degree(grading, vars, nv, &d)? {
                out.push((s.clone(), m));
            }
        }
        Ok(out)
    };
    // d: K_j -> K_{j-1}; rank of its matrix
    let diff_rank = |j: usize| -> Result<usize> {
        if j == 0 || j > vars.len() {
            return Ok(0);
        }
        let src = basis(j)?;
        let dst = basis(j - 1)?;
        let index: BTreeMap<(&[usize], &Exponents), usize> =
            dst.iter().enumerate().map(|(k, (s, m))| ((s.as_slice(), m), k)).collect();
        let mut rows = Vec::with_capacity(src.len());
        for (s, m) in &src {
            let mut entries = Vec::new();
            for (pos, &i) in s.iter().enumerate() {
                let sign = if pos % 2 == 0 { BigRational::one() } else { -BigRational::one() };
                let mut rest = s.clone();
                rest.remove(pos);
                for (e, c) in parts[i].shifted(m).terms() {
                    let col = *index.get(&(rest.as_slice(), e)).expect("contraction leaves slice");
                    entries.push((col, &sign * c));
                }
            }
            let mut merged: BTreeMap<usize, BigRational> = BTreeMap::new();
            for (c, v) in entries {
                *merged.entry(c).or_insert_with(BigRational::zero) += v;
            }
            let entries: Vec<(usize, BigRational)> = merged.into_iter().filter(|(_, v)| !v.is_zero()).collect();
            rows.push(integral_row(&entries));
        }
        Ok(rank(rows))
    };
    let dim = basis(p)?.len();
    let h = dim - diff_rank(p)? - diff_rank(p + 1)?;
    Ok(h)
}
