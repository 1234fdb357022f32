//! Explicit basis families of the Hochschild cohomology for each ADE type.
//!
//! Each family is a row of data: a fixed set, a Jacobi monomial, the Koszul
//! flag and affine forms in the running index `m` for `k_0`, `t` and the weight.
//! Enumeration only evaluates the forms; nothing is solved.

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::lgmodel::Family;
use crate::orbifold::LabelKey;
use crate::table::{BigradedTable, TableMeta};

pub const EXTRAPOLATED: &str = "summary-extrapolated";

/// `c + step·m`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Affine {
    pub c: i64,
    pub step: i64,
}

impl Affine {
    pub const fn new(c: i64, step: i64) -> Self {
        Self { c, step }
    }

    pub fn at(&self, m: i64) -> i64 {
        self.c + self.step * m
    }

    pub fn shift(&self, d: i64) -> Self {
        Self::new(self.c + d, self.step)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FixedRule {
    Always(Vec<usize>),
    /// Chosen by the parity of `k_0 − ε`.
    ByParity { even: Vec<usize>, odd: Vec<usize> },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilySpec {
    pub name: &'static str,
    /// Fixed indices other than `m`, e.g. `k=2`.
    pub index: String,
    pub fixed: FixedRule,
    /// Exponents of `x_1..x_{n+1}`.
    pub jacobi: Vec<u32>,
    pub epsilon: u8,
    pub k0: Affine,
    pub t: Affine,
    pub s: Affine,
    pub m_min: Option<i64>,
    pub m_max: Option<i64>,
    /// Keep only `m ≡ p (mod 2)`.
    pub m_parity: Option<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosedFormClass {
    pub family: &'static str,
    pub index: String,
    pub m: i64,
    pub t: i64,
    pub s: i64,
    pub key: LabelKey,
}

impl ClosedFormClass {
    pub fn label(&self) -> String {
        if self.index.is_empty() {
            format!("{}[m={}]", self.family, self.m)
        } else {
            format!("{}[{}, m={}]", self.family, self.index, self.m)
        }
    }
}

fn all_vars(n: usize) -> Vec<usize> {
    (0..n + 2).collect()
}

fn jac(n: usize, exps: &[u32]) -> Vec<u32> {
    let mut v = vec![0; n + 1];
    v[..exps.len()].copy_from_slice(exps);
    v
}

struct Row {
    name: &'static str,
    index: String,
    fixed: FixedRule,
    jacobi: Vec<u32>,
    epsilon: u8,
    k0: Affine,
    t: Affine,
    s: Affine,
    m_min: Option<i64>,
}

impl Row {
    fn spec(self) -> FamilySpec {
        FamilySpec {
            name: self.name,
            index: self.index,
            fixed: self.fixed,
            jacobi: self.jacobi,
            epsilon: self.epsilon,
            k0: self.k0,
            t: self.t,
            s: self.s,
            m_min: self.m_min,
            m_max: None,
            m_parity: None,
        }
    }
}

/// A single class in degree and weight `n` (the `s_h` family and its relatives).
fn single(name: &'static str, index: String, fixed: Vec<usize>, jacobi: Vec<u32>, epsilon: u8, t: i64, s: i64) -> FamilySpec {
    FamilySpec {
        name,
        index,
        fixed: FixedRule::Always(fixed),
        jacobi,
        epsilon,
        k0: Affine::new(0, 0),
        t: Affine::new(t, 0),
        s: Affine::new(s, 0),
        m_min: Some(0),
        m_max: Some(0),
        m_parity: None,
    }
}

fn twisted(count: usize, n: usize, name: &'static str) -> Vec<FamilySpec> {
    let n_i = n as i64;
    (1..=count)
        .map(|h| single(name, format!("h={h}"), Vec::new(), jac(n, &[]), 0, n_i, n_i))
        .collect()
}

/// Pair of rows `(ε = 0 at t, ε = 1 at t + 1)` sharing the weight `−k_0 n` of the first.
fn with_partner(name0: &'static str, name1: &'static str, index: String, fixed: FixedRule, jacobi: Vec<u32>, k0: Affine, t: Affine, n: i64, m_min: Option<i64>) -> [FamilySpec; 2] {
    let s = Affine::new(-k0.c * n, -k0.step * n);
    [
        Row {
            name: name0,
            index: index.clone(),
            fixed: fixed.clone(),
            jacobi: jacobi.clone(),
            epsilon: 0,
            k0,
            t,
            s,
            m_min,
        }
        .spec(),
        Row {
            name: name1,
            index,
            fixed,
            jacobi,
            epsilon: 1,
            k0: k0.shift(1),
            t: t.shift(1),
            s,
            m_min,
        }
        .spec(),
    ]
}

fn type_a(l: usize, n: usize) -> Vec<FamilySpec> {
    let (li, ni) = (l as i64, n as i64);
    let mut out = Vec::new();
    let parity = FixedRule::ByParity {
        even: all_vars(n),
        odd: vec![0, 1],
    };
    for k in 0..li {
        let m_parity = match (n % 2, l % 2) {
            (0, _) => None,
            (_, 0) => Some(k % 2),
            _ if k % 2 == 0 => None,
            _ => continue,
        };
        // a_{k,m}: degree 2(k+mℓ) − (k+m(ℓ+1))n, weight −(k+m(ℓ+1))n
        let k0 = Affine::new(k, li + 1);
        let t = Affine::new(2 * k - k * ni, 2 * li - (li + 1) * ni);
        for mut f in with_partner("a", "alpha", format!("k={k}"), parity.clone(), jac(n, &[k as u32]), k0, t, ni, Some(0)) {
            f.m_parity = m_parity;
            out.push(f);
        }
    }
    if n % 2 == 1 && l % 2 == 1 {
        let s = Affine::new(ni, -(li + 1) * ni);
        out.push(
            Row {
                name: "b",
                index: String::new(),
                fixed: FixedRule::Always(vec![0]),
                jacobi: jac(n, &[]),
                epsilon: 0,
                k0: Affine::new(-1, li + 1),
                t: Affine::new(-1 + ni, 2 * li - (li + 1) * ni),
                s,
                m_min: Some(1),
            }
            .spec(),
        );
        out.push(
            Row {
                name: "beta",
                index: String::new(),
                fixed: FixedRule::Always(vec![0]),
                jacobi: jac(n, &[]),
                epsilon: 1,
                k0: Affine::new(0, li + 1),
                t: Affine::new(ni, 2 * li - (li + 1) * ni),
                s,
                m_min: Some(0),
            }
            .spec(),
        );
    }
    let count = if l % 2 == 1 && n % 2 == 1 { l - 1 } else { l };
    out.extend(twisted(count, n, "s"));
    out
}

fn type_d(l: usize, n: usize) -> Vec<FamilySpec> {
    let (li, ni) = (l as i64, n as i64);
    let period = 2 * li - 2;
    let tstep = 4 * li - 6 - period * ni;
    let mut out = Vec::new();
    for k in 0..=li - 2 {
        let k0 = Affine::new(2 * k, period);
        let t = Affine::new(4 * k - 2 * k * ni, tstep);
        out.extend(with_partner("a", "alpha", format!("k={k}"), FixedRule::Always(all_vars(n)), jac(n, &[2 * k as u32]), k0, t, ni, Some(0)));
    }
    if n % 2 == 1 {
        for k in (0..=2 * li - 4).filter(|k| (k + li) % 2 == 0) {
            let s = Affine::new(-(k + li - 1) * ni, -period * ni);
            let fixed = FixedRule::Always(vec![0, 1, 2]);
            out.push(
                Row {
                    name: "b",
                    index: format!("k={k}"),
                    fixed: fixed.clone(),
                    jacobi: jac(n, &[k as u32]),
                    epsilon: 0,
                    k0: Affine::new(k + li - 1, period),
                    t: Affine::new(2 * k + 2 * li - 3 - (k + li - 1) * ni, tstep),
                    s,
                    m_min: None,
                }
                .spec(),
            );
            out.push(
                Row {
                    name: "beta",
                    index: format!("k={k}"),
                    fixed,
                    jacobi: jac(n, &[k as u32]),
                    epsilon: 1,
                    k0: Affine::new(k + li, period),
                    t: Affine::new(2 * k + 2 * li - 2 - (k + li - 1) * ni, tstep),
                    s,
                    m_min: None,
                }
                .spec(),
            );
        }
    }
    if l % 2 == 0 {
        let mut fixed = vec![0];
        fixed.extend(3..n + 2);
        let k0 = Affine::new(li - 2, period);
        let t = Affine::new(2 * li - 4 - (li - 2) * ni, tstep);
        out.extend(with_partner("c", "gamma", String::new(), FixedRule::Always(fixed), jac(n, &[]), k0, t, ni, Some(0)));
    }
    if l % 2 == 0 && n % 2 == 1 {
        let s = Affine::new(ni, -period * ni);
        out.push(
            Row {
                name: "d",
                index: String::new(),
                fixed: FixedRule::Always(vec![0]),
                jacobi: jac(n, &[]),
                epsilon: 0,
                k0: Affine::new(-1, period),
                t: Affine::new(-1 + ni, tstep),
                s,
                m_min: Some(1),
            }
            .spec(),
        );
        out.push(
            Row {
                name: "delta",
                index: String::new(),
                fixed: FixedRule::Always(vec![0]),
                jacobi: jac(n, &[]),
                epsilon: 1,
                k0: Affine::new(0, period),
                t: Affine::new(ni, tstep),
                s,
                m_min: Some(0),
            }
            .spec(),
        );
    }
    if l % 2 == 1 && n % 2 == 0 {
        let k0 = Affine::new(li - 2, period);
        let t = Affine::new(2 * li - 4 - (li - 2) * ni, tstep);
        out.extend(with_partner("e", "epsilon", String::new(), FixedRule::Always(vec![0, 2]), jac(n, &[]), k0, t, ni, Some(0)));
    }
    let count = if l % 2 == 0 && n % 2 == 1 { l - 2 } else { l - 1 };
    out.extend(twisted(count, n, "s"));
    if n % 2 == 0 {
        out.push(single("s", format!("h={l}"), vec![1, 2], jac(n, &[li as u32 - 2]), 0, ni, ni));
    }
    out
}

/// Rows `((k_1, k_2), k_0 base, t base)` with `k_0 = base + P m`, `t = tb + T m − k_0 n`.
fn table_rows(
    out: &mut Vec<FamilySpec>,
    rows: &[((u32, u32), i64, i64)],
    period: i64,
    tperiod: i64,
    n: usize,
    fixed: &[usize],
    m_min: Option<i64>,
    names: (&'static str, &'static str),
) {
    let ni = n as i64;
    for &((k1, k2), base, tb) in rows {
        let k0 = Affine::new(base, period);
        let t = Affine::new(tb - base * ni, tperiod - period * ni);
        let jacobi = if fixed == [0, 2] { jac(n, &[0, k2]) } else { jac(n, &[k1, k2]) };
        let index = format!("k1={k1},k2={k2}");
        let fixed = FixedRule::Always(fixed.to_vec());
        out.extend(with_partner(names.0, names.1, index, fixed, jacobi, k0, t, ni, m_min));
    }
}

/// Identity-sector rows for `n = 1`: `k_0 ≡ k_1 (mod a)`, `k_0 ≡ k_2 (mod 3)`, `t = 2 deg/χ`.
fn crt_rows(a: i64, k1_max: u32, t_num: impl Fn(i64, i64, i64) -> (i64, i64)) -> Vec<((u32, u32), i64, i64)> {
    let mut rows = Vec::new();
    for k1 in 0..=k1_max {
        for k2 in 0..=1u32 {
            let r = (0..3 * a)
                .find(|r| (r - i64::from(k1)).is_multiple_of(&a) && (r - i64::from(k2)).is_multiple_of(&3))
                .expect("coprime moduli");
            let (num, den) = t_num(r, i64::from(k1), i64::from(k2));
            assert!(num % den == 0, "t is integral on these rows");
            rows.push(((k1, k2), r, num / den + r));
        }
    }
    rows
}

fn type_e6(n: usize) -> Vec<FamilySpec> {
    let mut out = Vec::new();
    if n == 1 {
        // t = 2(5k_0 + 3k_1 + 4k_2)/12; table_rows subtracts k_0 n
        let rows = crt_rows(4, 2, |r, k1, k2| (5 * r + 3 * k1 + 4 * k2, 6));
        table_rows(&mut out, &rows, 12, 10 + 12, n, &all_vars(n), Some(0), ("E6", "E6.v"));
    } else {
        let rows = [((0, 0), 0, 0), ((0, 1), 4, 8), ((2, 0), 6, 12), ((2, 1), 10, 20)];
        table_rows(&mut out, &rows, 12, 22, n, &all_vars(n), Some(0), ("E6", "E6.v"));
        if n % 2 == 1 {
            let rows = [((1, 0), 9, 17), ((1, 1), 1, 3)];
            table_rows(&mut out, &rows, 12, 22, n, &[0, 1, 2], Some(0), ("E6.2", "E6.2.v"));
        } else {
            let rows = [((0, 0), 3, 6), ((0, 1), 7, 14)];
            table_rows(&mut out, &rows, 12, 22, n, &[0, 2], Some(0), ("E6.3", "E6.3.v"));
        }
    }
    out.extend(twisted(6, n, "s"));
    out
}

fn type_e7(n: usize) -> Vec<FamilySpec> {
    let mut out = Vec::new();
    let ni = n as i64;
    if n == 1 {
        let rows = [
            ((0, 0), 0, 0),
            ((1, 0), 4, 4),
            ((2, 0), 8, 8),
            ((3, 0), 3, 4),
            ((4, 0), 7, 8),
            ((0, 1), 6, 6),
            ((1, 1), 1, 2),
        ];
        // the printed t already includes −k_0 n
        let shifted: Vec<_> = rows.iter().map(|&(k, b, tb)| (k, b, tb + b)).collect();
        table_rows(&mut out, &shifted, 9, 8 + 9, n, &all_vars(n), Some(0), ("E7", "E7.v"));
        out.push(single("E7.extra", "k1=2,k2=0".into(), all_vars(n), jac(n, &[2, 0]), 1, 1, 1));
    } else {
        let rows = [
            ((0, 0), 0, 0),
            ((1, 0), 4, 8),
            ((2, 0), 8, 16),
            ((3, 0), 12, 24),
            ((4, 0), 16, 32),
            ((0, 1), 6, 12),
            ((1, 1), 10, 20),
        ];
        table_rows(&mut out, &rows, 18, 34, n, &all_vars(n), Some(0), ("E7", "E7.v"));
        if n % 2 == 1 {
            let rows = [
                ((0, 0), 9, 17),
                ((1, 0), 13, 25),
                ((2, 0), 17, 33),
                ((3, 0), 3, 7),
                ((4, 0), 7, 15),
                ((0, 1), 15, 29),
                ((1, 1), 1, 3),
            ];
            table_rows(&mut out, &rows, 18, 34, n, &[0, 1, 2], Some(0), ("E7.2", "E7.2.v"));
            out.push(single("E7.2.extra", "k1=2,k2=0".into(), vec![0, 1, 2], jac(n, &[2, 0]), 1, ni, ni));
        } else {
            // sector (-1, 1, 1, -1, ..., -1): x_1^2 ⊗ x_0^∨ ∧ x_3^∨ ∧ ... has degree 0
            out.push(single("E7.3.extra", "k1=2,k2=0".into(), vec![1, 2], jac(n, &[2, 0]), 0, ni, ni));
        }
    }
    out.extend(twisted(6, n, "s"));
    out
}

fn type_e8(n: usize) -> Vec<FamilySpec> {
    let mut out = Vec::new();
    if n == 1 {
        // t = 2(7k_0 + 3k_1 + 5k_2)/15
        let rows = crt_rows(5, 3, |r, k1, k2| (14 * r + 6 * k1 + 10 * k2, 15));
        table_rows(&mut out, &rows, 15, 14 + 15, n, &all_vars(n), Some(0), ("E8", "E8.v"));
    } else {
        let mut rows = Vec::new();
        let mut twisted_rows = Vec::new();
        for k1 in 0..=3u32 {
            for k2 in 0..=1u32 {
                let (a, b) = (i64::from(k1), i64::from(k2));
                rows.push(((k1, k2), 6 * a + 10 * b, 12 * a + 20 * b));
                twisted_rows.push(((k1, k2), 15 + 6 * a + 10 * b, 29 + 12 * a + 20 * b));
            }
        }
        table_rows(&mut out, &rows, 30, 58, n, &all_vars(n), Some(0), ("E8", "E8.v"));
        if n % 2 == 1 {
            table_rows(&mut out, &twisted_rows, 30, 58, n, &[0, 1, 2], None, ("E8.2", "E8.2.v"));
        }
    }
    out.extend(twisted(8, n, "s"));
    out
}

/// The family rows for a type, rank and dimension.
pub fn family_specs(family: Family, rank: usize, n: usize) -> Result<Vec<FamilySpec>> {
    family.check_rank(rank)?;
    if n < 1 {
        return Err(Error::Inadmissible("n must be at least 1".into()));
    }
    Ok(match family {
        Family::A => type_a(rank, n),
        Family::D => type_d(rank, n),
        Family::E6 => type_e6(n),
        Family::E7 => type_e7(n),
        Family::E8 => type_e8(n),
    })
}

fn div_ceil(a: i64, b: i64) -> i64 {
    Integer::div_floor(&a, &b) + i64::from(!a.is_multiple_of(&b))
}

/// Range of `m` with `k_0 ≥ 0`, the spec bounds, and `t` in the window.
fn m_range(f: &FamilySpec, t_min: i64, t_max: i64) -> Result<Option<(i64, i64)>> {
    let mut lo = f.m_min.unwrap_or(i64::MIN);
    let mut hi = f.m_max.unwrap_or(i64::MAX);
    match f.k0.step {
        0 if f.k0.c < 0 => return Ok(None),
        0 => {}
        st if st > 0 => lo = lo.max(div_ceil(-f.k0.c, st)),
        st => hi = hi.min(Integer::div_floor(&-f.k0.c, &st)),
    }
    match f.t.step {
        0 => {
            if !(t_min..=t_max).contains(&f.t.c) {
                return Ok(None);
            }
            if lo == i64::MIN || hi == i64::MAX {
                return Err(Error::LogCalabiYau);
            }
        }
        st if st > 0 => {
            lo = lo.max(div_ceil(t_min - f.t.c, st));
            hi = hi.min(Integer::div_floor(&(t_max - f.t.c), &st));
        }
        st => {
            lo = lo.max(div_ceil(t_max - f.t.c, st));
            hi = hi.min(Integer::div_floor(&(t_min - f.t.c), &st));
        }
    }
    Ok((lo <= hi).then_some((lo, hi)))
}

/// Every family member with `t` in `[t_min, t_max]`.
pub fn closed_form_classes(family: Family, rank: usize, n: usize, t_min: i64, t_max: i64) -> Result<Vec<ClosedFormClass>> {
    let mut out = Vec::new();
    if t_min > t_max {
        family_specs(family, rank, n)?;
        return Ok(out);
    }
    for f in family_specs(family, rank, n)? {
        let Some((lo, hi)) = m_range(&f, t_min, t_max)? else {
            continue;
        };
        for m in lo..=hi {
            if f.m_parity.is_some_and(|p| m.rem_euclid(2) != p) {
                continue;
            }
            let k0 = f.k0.at(m);
            let fixed = match &f.fixed {
                FixedRule::Always(v) => v.clone(),
                FixedRule::ByParity { even, odd } => {
                    if (k0 - i64::from(f.epsilon)).is_even() {
                        even.clone()
                    } else {
                        odd.clone()
                    }
                }
            };
            out.push(ClosedFormClass {
                family: f.name,
                index: f.index.clone(),
                m,
                t: f.t.at(m),
                s: f.s.at(m),
                key: LabelKey {
                    fixed,
                    jacobi: f.jacobi.clone(),
                    k0: k0 as u64,
                    epsilon: f.epsilon,
                },
            });
        }
    }
    out.sort_by(|a, b| (a.t, a.s, &a.key).cmp(&(b.t, b.s, &b.key)));
    Ok(out)
}

/// The closed-form table; A and D at `n = 1` carry the extrapolation flag.
pub fn enumerate_closed_form(family: Family, rank: usize, n: usize, t_min: i64, t_max: i64, with_labels: bool) -> Result<BigradedTable> {
    let classes = closed_form_classes(family, rank, n, t_min, t_max)?;
    let mut meta = TableMeta {
        family: family.name().to_string(),
        rank,
        n,
        flags: Vec::new(),
    };
    if n == 1 && matches!(family, Family::A | Family::D) {
        meta.flags.push(EXTRAPOLATED.to_string());
    }
    let mut table = BigradedTable::new(t_min, t_max, meta);
    for c in &classes {
        table.add(c.t, c.s, with_labels.then(|| c.label()));
    }
    table.sort_labels();
    Ok(table)
}
