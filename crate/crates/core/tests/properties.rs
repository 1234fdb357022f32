use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

use dynkin_hh::abelian::{smith_normal_form, FgAbelianGroup, GroupElement, IntegerMatrix};
use dynkin_hh::closed_forms::{closed_form_classes, family_specs};
use dynkin_hh::milnor::{jacobi_basis, koszul_slice_cohomology};
use dynkin_hh::orbifold::{all_contributions, sector_contributions};
use dynkin_hh::{Family, LgModel};

fn presets() -> Vec<(Family, usize)> {
    let mut v: Vec<_> = (1..=6).map(|r| (Family::A, r)).collect();
    v.extend((4..=7).map(|r| (Family::D, r)));
    v.extend([(Family::E6, 6), (Family::E7, 7), (Family::E8, 8)]);
    v
}

fn preset_strategy() -> impl Strategy<Value = (Family, usize, usize)> {
    (0..presets().len(), 1usize..=5).prop_map(|(i, n)| {
        let (f, r) = presets()[i];
        (f, r, n)
    })
}

fn matrix_strategy() -> impl Strategy<Value = IntegerMatrix> {
    (1usize..=4, 1usize..=4).prop_flat_map(|(r, c)| {
        proptest::collection::vec(proptest::collection::vec(-12i64..=12, c), r).prop_map(|rows| IntegerMatrix::from_rows(&rows))
    })
}

fn is_unimodular(m: &IntegerMatrix) -> bool {
    m.determinant().abs().is_one()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn smith_form_is_exact(m in matrix_strategy()) {
        let s = smith_normal_form(&m);
        prop_assert_eq!(s.u.mul(&m).mul(&s.v), s.d.clone());
        prop_assert!(s.d.is_diagonal());
        prop_assert!(is_unimodular(&s.u) && is_unimodular(&s.v));
        prop_assert_eq!(s.v.mul(&s.v_inv), IntegerMatrix::identity(m.cols()));
        let f = s.invariant_factors();
        prop_assert!(f.iter().all(|d| !d.is_negative()));
        for w in f.windows(2) {
            let divides = if w[0].is_zero() { w[1].is_zero() } else { (&w[1] % &w[0]).is_zero() };
            prop_assert!(divides);
        }
    }

    #[test]
    fn normal_form_is_a_congruence(
        rel in proptest::collection::vec(proptest::collection::vec(-6i64..=6, 3), 1..=3),
        x in proptest::collection::vec(-20i64..=20, 3),
        y in proptest::collection::vec(-20i64..=20, 3),
        coeffs in proptest::collection::vec(-4i64..=4, 3),
        k in -5i64..=5,
    ) {
        let g = FgAbelianGroup::new(3, IntegerMatrix::from_rows(&rel));
        let (x, y) = (GroupElement::from_i64(&x), GroupElement::from_i64(&y));
        let nf = |e: &GroupElement| g.normal_form(e).unwrap();
        let mut r = GroupElement::zero(3);
        for (row, c) in rel.iter().zip(&coeffs) {
            r = r.add(&GroupElement::from_i64(row).scale_i64(*c));
        }
        prop_assert_eq!(nf(&x.add(&r)), nf(&x));
        prop_assert_eq!(nf(&x.add(&y)), nf(&nf(&x).add(&nf(&y))));
        prop_assert_eq!(nf(&x.scale_i64(k)), nf(&nf(&x).scale_i64(k)));
    }

    #[test]
    fn solve_multiple_steps_by_one((f, r, n) in preset_strategy(), exps in proptest::collection::vec(0u32..=6, 8)) {
        let m = LgModel::preset(f, r, n).unwrap();
        let g = &m.grading;
        let mut e = exps;
        e.resize(m.variable_count(), 0);
        let rho = g.monomial_degree(&e);
        let base = g.lattice.solve_multiple(&rho, &g.chi).unwrap();
        let next = g.lattice.solve_multiple(&rho.add(&g.chi), &g.chi).unwrap();
        prop_assert_eq!(next, base.map(|c| c + 1));
    }

    #[test]
    fn dimensions_are_consistent_across_windows((f, r, n) in preset_strategy(), lo in -25i64..0, width in 0i64..8) {
        prop_assume!(!(f == Family::A && r == 1 && n == 1));
        let m = LgModel::preset(f, r, n).unwrap();
        let hi = lo + width;
        let whole = all_contributions(&m, lo, hi, false).unwrap();
        let mut pieces = Vec::new();
        for t in lo..=hi {
            pieces.extend(all_contributions(&m, t, t, false).unwrap());
        }
        prop_assert_eq!(whole.len(), pieces.len());
        prop_assert!(whole.iter().all(|c| (lo..=hi).contains(&c.t)));
    }
}

#[test]
fn duals_kill_relations_and_count_the_quotient() {
    for (f, r) in presets() {
        for n in 1..=5 {
            let m = LgModel::preset(f, r, n).unwrap();
            let g = &m.grading;
            let duals = g.lattice.enumerate_dual_of_quotient(&g.chi).unwrap();
            let distinct: BTreeSet<_> = duals.iter().collect();
            assert_eq!(distinct.len(), duals.len());
            let rel = g.lattice.relations();
            for phi in &duals {
                assert!(phi.eval(&g.chi).is_zero());
                for i in 0..rel.rows() {
                    assert!(phi.eval(&GroupElement(rel.row(i).to_vec())).is_zero());
                }
            }
            // |Char/<χ>| as the determinant of the square presentation
            let q = g.lattice.quotient_by(&g.chi).unwrap();
            let det = q.relations().determinant().abs();
            assert_eq!(BigInt::from(duals.len()), det, "{} n={n}", tag(f, r));
            assert_eq!(m.sectors().unwrap().len(), duals.len());
            assert_eq!(m.ker_chi_order().unwrap(), det);
        }
    }
}

#[test]
fn potential_is_homogeneous_and_invariant() {
    for (f, r) in presets() {
        for n in 1..=5 {
            let m = LgModel::preset(f, r, n).unwrap();
            let g = &m.grading;
            let sectors = m.sectors().unwrap();
            for (e, _) in m.polynomial.terms() {
                let d = g.monomial_degree(e);
                assert_eq!(g.lattice.solve_multiple(&d, &g.chi).unwrap(), Some(BigInt::one()));
                for s in &sectors {
                    if (0..e.len()).all(|i| e[i] == 0 || s.fixed[i]) {
                        assert!(s.phi.eval(&d).is_zero());
                    }
                }
            }
        }
    }
}

#[test]
fn sign_of_q0() {
    for (f, r) in presets() {
        for n in 1..=5 {
            let m = LgModel::preset(f, r, n).unwrap();
            let q0 = &m.q()[0];
            if n >= 2 {
                assert!(q0.is_negative(), "{} n={n}", tag(f, r));
            } else if (f, r) == (Family::A, 1) {
                assert!(q0.is_zero());
            } else {
                assert!(q0.is_positive(), "{} n={n}", tag(f, r));
            }
        }
    }
}

fn tag(f: Family, r: usize) -> String {
    match f {
        Family::A | Family::D => format!("{}{r}", f.name()),
        _ => f.name().to_string(),
    }
}

/// The `k_0` period of each type, made even so that it also preserves the
/// parity-dependent fixed sets.
fn period(f: Family, r: usize) -> i64 {
    let p = match f {
        Family::A => r as i64 + 1,
        Family::D => 2 * r as i64 - 2,
        Family::E6 => 12,
        Family::E7 => 18,
        Family::E8 => 30,
    };
    if p % 2 == 0 {
        p
    } else {
        2 * p
    }
}

#[test]
fn shifting_k0_by_the_period() {
    for (f, r) in presets() {
        for n in 2..=4usize {
            let m = LgModel::preset(f, r, n).unwrap();
            let g = &m.grading;
            let solve = |k: i64| g.lattice.solve_multiple(&g.var_degrees[0].scale_i64(k), &g.chi).unwrap();
            let p = (1..=60).find(|&k| solve(k).is_some()).unwrap();
            assert_eq!(p, period(f, r), "{} n={n}", tag(f, r));
            let dt = 2 * i64::try_from(solve(p).unwrap()).unwrap();
            let (lo, hi) = (-30, n as i64 + 1);
            let inner = all_contributions(&m, lo, hi, false).unwrap();
            let outer: BTreeSet<_> = all_contributions(&m, lo + dt, hi, false)
                .unwrap()
                .into_iter()
                .map(|c| (c.t, c.s, c.key()))
                .collect();
            for c in inner.iter().filter(|c| c.fixed[0]) {
                let mut k = c.key();
                k.k0 += p as u64;
                let s = c.s - n as i64 * p;
                assert!(outer.contains(&(c.t + dt, s, k)), "{} n={n} {}", tag(f, r), c.describe());
            }
        }
    }
}

#[test]
fn twisting_by_chi_moves_t_by_two() {
    let m = LgModel::preset(Family::E6, 6, 3).unwrap();
    let g = &m.grading;
    for sec in m.sectors().unwrap() {
        for c in sector_contributions(&m, &sec, -20, 4).unwrap() {
            let delta = g
                .monomial_degree(&c.jacobi)
                .add(&g.var_degrees[0].scale_i64(c.k0 as i64 - i64::from(c.epsilon)))
                .sub(&sec.nu);
            let next = g.lattice.solve_multiple(&delta.add(&g.chi), &g.chi).unwrap().unwrap();
            assert_eq!(next, BigInt::from(c.c + 1));
            let t_next = 2 * (c.c + 1) + i64::from(c.epsilon) + sec.codim as i64;
            assert_eq!(t_next, c.t + 2);
        }
    }
}

#[test]
fn closed_form_families_are_disjoint() {
    for (f, r) in presets() {
        for n in 1..=4 {
            if (f, r, n) == (Family::A, 1, 1) {
                continue;
            }
            let classes = closed_form_classes(f, r, n, -40, n as i64 + 1).unwrap();
            let labels: BTreeSet<_> = classes.iter().map(|c| c.label()).collect();
            assert_eq!(labels.len(), classes.len(), "{} n={n}", tag(f, r));
            // a key repeats only across distinct sectors with the same fixed set
            let sectors = LgModel::preset(f, r, n).unwrap().sectors().unwrap();
            let mut seen: BTreeMap<_, usize> = BTreeMap::new();
            for c in &classes {
                *seen.entry(c.key.clone()).or_default() += 1;
            }
            for (k, count) in seen {
                let with_f = sectors.iter().filter(|s| s.fixed_indices() == k.fixed).count();
                assert!(count <= with_f, "{} n={n}: {k} emitted {count} times", tag(f, r));
            }
            if f == Family::E7 {
                let specs = family_specs(f, r, n).unwrap();
                let extra = specs.iter().filter(|s| s.name.contains("extra")).count();
                let emitted = classes.iter().filter(|c| c.family.contains("extra")).count();
                assert!(extra >= 1);
                assert_eq!(extra, emitted, "E7 n={n}");
            }
        }
    }
}

/// Recounts classes from the Koszul complex of `w_γ` in each exact degree.
#[test]
fn koszul_recount_of_contributions() {
    for (f, r, n) in [(Family::A, 3, 2), (Family::D, 5, 3), (Family::E6, 6, 2), (Family::E7, 7, 3)] {
        let m = LgModel::preset(f, r, n).unwrap();
        let g = &m.grading;
        for sec in m.sectors().unwrap() {
            let vars: Vec<usize> = (1..m.variable_count()).filter(|&i| sec.fixed[i]).collect();
            let w = m.restrict(&sec);
            assert!(jacobi_basis(&w, &vars, g).is_ok());
            let contributions = sector_contributions(&m, &sec, -20, n as i64 + 1).unwrap();
            let mut seen = BTreeSet::new();
            for c in &contributions {
                let x0 = g.var_degrees[0].scale_i64(c.k0 as i64 - i64::from(c.epsilon));
                let target = g.chi.scale_i64(c.c).add(&sec.nu).sub(&x0);
                let key = (c.k0, c.epsilon, c.c);
                if !seen.insert(key) {
                    continue;
                }
                let count = contributions.iter().filter(|d| (d.k0, d.epsilon, d.c) == key).count();
                assert_eq!(koszul_slice_cohomology(&w, &vars, g, &target, 0).unwrap(), count);
                if !vars.is_empty() {
                    assert_eq!(koszul_slice_cohomology(&w, &vars, g, &target, 1).unwrap(), 0);
                }
            }
        }
    }
}
