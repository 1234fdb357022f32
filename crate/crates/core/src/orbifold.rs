//! Hochschild cohomology of the orbifold category as a sum over sectors.
//!
//! A class is determined by a sector `γ`, a Jacobi basis monomial `b` of
//! `w'_γ` (the restriction to the fixed variables other than `x_0`), a power
//! `x_0^{k_0}` and optionally the Koszul factor `x_0^∨` (`ε = 1`). It survives
//! iff `Δ = deg b + (k_0 − ε)χ_0 − ν_γ` is an exact multiple `cχ`, and then sits
//! in degree `t = 2c + ε + codim γ`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::lgmodel::{format_fixed_set, LgModel, Sector};
use crate::milnor::jacobi_basis;
use crate::polynomial::{format_monomial, Exponents};
use crate::table::{BigradedTable, TableMeta};

/// Canonical identity of a class, shared with the closed-form families.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LabelKey {
    /// Fixed variable indices `F`.
    pub fixed: Vec<usize>,
    /// Jacobi monomial exponents of `x_1..x_{n+1}`.
    pub jacobi: Vec<u32>,
    pub k0: u64,
    pub epsilon: u8,
}

impl fmt::Display for LabelKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut e = vec![self.k0 as u32];
        e.extend(&self.jacobi);
        let ff: Vec<String> = self.fixed.iter().map(|i| i.to_string()).collect();
        write!(f, "{{{}}} ", ff.join(","))?;
        if self.epsilon == 1 {
            write!(f, "x0v ")?;
        }
        f.write_str(&format_monomial(&e))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContributionLabel {
    pub sector: usize,
    pub fixed: Vec<bool>,
    /// Over all variables; `x_0` exponent is zero.
    pub jacobi: Exponents,
    pub k0: u64,
    pub epsilon: u8,
    pub t: i64,
    pub s: i64,
    pub c: i64,
}

impl ContributionLabel {
    pub fn key(&self) -> LabelKey {
        LabelKey {
            fixed: (0..self.fixed.len()).filter(|&i| self.fixed[i]).collect(),
            jacobi: self.jacobi[1..].to_vec(),
            k0: self.k0,
            epsilon: self.epsilon,
        }
    }

    pub fn codim(&self) -> usize {
        self.fixed.iter().filter(|&&f| !f).count()
    }

    pub fn describe(&self) -> String {
        format!("g{} {}", self.sector, self.key())
    }
}

/// `s = −n k_0 + n (ε + [0 ∉ F])`.
pub fn weight_of(label: &ContributionLabel, n: usize) -> i64 {
    let n = n as i64;
    let outside = i64::from(!label.fixed[0]);
    -n * label.k0 as i64 + n * (i64::from(label.epsilon) + outside)
}

fn ceil_div(a: &BigRational) -> BigInt {
    a.ceil().to_integer()
}

fn floor_div(a: &BigRational) -> BigInt {
    a.floor().to_integer()
}

/// Every class of `sector` with `t` in `[t_min, t_max]`.
pub fn sector_contributions(model: &LgModel, sector: &Sector, t_min: i64, t_max: i64) -> Result<Vec<ContributionLabel>> {
    let g = &model.grading;
    let vars: Vec<usize> = (1..model.variable_count()).filter(|&i| sector.fixed[i]).collect();
    let w = model.restrict(sector);
    let basis = jacobi_basis(&w, &vars, g)?;
    let q0 = g.q[0].clone();
    let chi0 = &g.var_degrees[0];
    let codim = sector.codim as i64;
    let two = BigRational::from_integer(BigInt::from(2));
    let mut out = Vec::new();
    if t_min > t_max {
        return Ok(out);
    }
    let mut push = |b: &Exponents, k0: u64, eps: u8, c: BigInt| -> Result<()> {
        let c = c.to_i64().ok_or_else(|| Error::Inadmissible("degree overflow".into()))?;
        let t = 2 * c + i64::from(eps) + codim;
        let mut label = ContributionLabel {
            sector: sector.id,
            fixed: sector.fixed.clone(),
            jacobi: b.clone(),
            k0,
            epsilon: eps,
            t,
            s: 0,
            c,
        };
        label.s = weight_of(&label, model.n);
        out.push(label);
        Ok(())
    };
    for (b, deg_b) in basis.monomials.iter().zip(&basis.degrees) {
        let base = deg_b.sub(&sector.nu);
        if !sector.contains_x0() {
            if let Some(c) = g.lattice.solve_multiple(&base, &g.chi)? {
                let t = 2 * c.to_i64().unwrap_or(i64::MAX / 4) + codim;
                if (t_min..=t_max).contains(&t) {
                    push(b, 0, 0, c)?;
                }
            }
            continue;
        }
        if q0.is_zero() {
            return Err(Error::LogCalabiYau);
        }
        for eps in 0..=1u8 {
            // t(k_0) = t_at_zero + 2 q_0 k_0, exactly over Q
            let t_at_zero = &two * (g.q_of(&base) - &q0 * BigRational::from_integer(BigInt::from(eps)))
                + BigRational::from_integer(BigInt::from(i64::from(eps) + codim));
            let slope = &two * &q0;
            let lo_t = BigRational::from_integer(BigInt::from(t_min)) - &t_at_zero;
            let hi_t = BigRational::from_integer(BigInt::from(t_max)) - &t_at_zero;
            let (lo, hi) = if slope.is_positive() {
                (ceil_div(&(lo_t / &slope)), floor_div(&(hi_t / &slope)))
            } else {
                (ceil_div(&(hi_t / &slope)), floor_div(&(lo_t / &slope)))
            };
            let lo = lo.max(BigInt::zero());
            let mut k = lo;
            while k <= hi {
                let delta = base.add(&chi0.scale(&(&k - BigInt::from(eps))));
                if let Some(c) = g.lattice.solve_multiple(&delta, &g.chi)? {
                    let k0 = k.to_u64().ok_or_else(|| Error::Inadmissible("x_0 exponent overflow".into()))?;
                    push(b, k0, eps, c)?;
                }
                k += 1;
            }
        }
    }
    // classes were found by exact search; keep those strictly inside the window
    out.retain(|l| (t_min..=t_max).contains(&l.t));
    out.sort_by(|a, b| (a.t, a.s, a.key()).cmp(&(b.t, b.s, b.key())));
    Ok(out)
}

#[derive(Clone, Copy, Debug)]
pub struct HhOptions {
    pub with_labels: bool,
    pub parallel: bool,
}

impl Default for HhOptions {
    fn default() -> Self {
        Self {
            with_labels: false,
            parallel: true,
        }
    }
}

/// All classes of all sectors, in sector order.
pub fn all_contributions(model: &LgModel, t_min: i64, t_max: i64, parallel: bool) -> Result<Vec<ContributionLabel>> {
    let sectors = model.sectors()?;
    let per: Vec<Result<Vec<ContributionLabel>>> = if parallel {
        sectors.par_iter().map(|s| sector_contributions(model, s, t_min, t_max)).collect()
    } else {
        sectors.iter().map(|s| sector_contributions(model, s, t_min, t_max)).collect()
    };
    let mut out = Vec::new();
    for r in per {
        out.extend(r?);
    }
    Ok(out)
}

pub fn table_meta(model: &LgModel) -> TableMeta {
    match model.preset {
        Some(p) => TableMeta {
            family: p.family.name().to_string(),
            rank: p.rank,
            n: model.n,
            flags: Vec::new(),
        },
        None => TableMeta {
            family: "custom".into(),
            rank: model.variable_count() - 2,
            n: model.n,
            flags: vec!["unvalidated".into()],
        },
    }
}

/// The bigraded table of `HH^t(…)^s` for `t` in `[t_min, t_max]`.
pub fn hh_table(model: &LgModel, t_min: i64, t_max: i64, opts: HhOptions) -> Result<BigradedTable> {
    let labels = all_contributions(model, t_min, t_max, opts.parallel)?;
    let mut table = BigradedTable::new(t_min, t_max, table_meta(model));
    for l in &labels {
        table.add(l.t, l.s, opts.with_labels.then(|| l.describe()));
    }
    table.sort_labels();
    Ok(table)
}

/// Multiset of class keys at every `(t, s)`.
pub fn keyed_classes(labels: &[ContributionLabel]) -> std::collections::BTreeMap<(i64, i64), Vec<LabelKey>> {
    let mut m: std::collections::BTreeMap<(i64, i64), Vec<LabelKey>> = Default::default();
    for l in labels {
        m.entry((l.t, l.s)).or_default().push(l.key());
    }
    for v in m.values_mut() {
        v.sort();
    }
    m
}

/// Number of sectors with empty fixed locus.
pub fn fully_twisted_count(model: &LgModel) -> Result<usize> {
    Ok(model.sectors()?.iter().filter(|s| s.is_fully_twisted()).count())
}

/// Human-readable sector summary: id, fixed set, codimension, display tuple.
pub fn sector_rows(model: &LgModel) -> Result<Vec<(usize, String, usize, String)>> {
    Ok(model
        .sectors()?
        .iter()
        .map(|s| (s.id, format_fixed_set(&s.fixed), s.codim, s.display_tuple()))
        .collect())
}

/// `t` is even minus odd: used to sanity-check parity of `t − ε − codim`.
pub fn parity_ok(l: &ContributionLabel) -> bool {
    (l.t - i64::from(l.epsilon) - l.codim() as i64).is_even()
}
