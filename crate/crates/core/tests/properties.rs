//! Cross-module properties over generated groups, cocycles and the shared corpora.

mod common;

use std::sync::OnceLock;

use proptest::prelude::*;

use gradalg::abelian::{AbelianGroup, IntMatrixHom};
use gradalg::cohomology::{
    all_bicharacters, cocycle_from_bicharacter, commutator_form, enumerate_invariant_bicharacters, is_coboundary,
    radical, Bicharacter, Cocycle2H,
};
use gradalg::cyclotomic::{zeta_power, CyclotomicNumber};
use gradalg::graded_algebra::{twisted_group_algebra, twisted_unit_inverse};
use gradalg::groups::{
    dihedral_extension, normal_abelian_subgroups, quaternion_extension, AbelianSubgroup, Extension, FiniteGroup,
};
use gradalg::realization::{build_presentation, CrossedPresentation};
use gradalg::structure::structure_report_for;

const GROUP_NAMES: [&str; 10] = ["Z2", "Z4", "Z2xZ2", "S3", "Q8", "D4", "Z2xZ4", "Z3xZ3", "D4xZ2", "Q8xZ2"];

fn small_abelian() -> impl Strategy<Value = AbelianGroup> {
    let groups = common::abelian_groups_up_to(16);
    (0..groups.len()).prop_map(move |i| groups[i].clone())
}

/// `α · δf` for the canonical cocycle `α` of a bicharacter and a random `f`.
fn perturbed(phi: &Bicharacter, f: &[i64]) -> Cocycle2H {
    let alpha = cocycle_from_bicharacter(phi);
    let h = alpha.group().clone();
    let n = alpha.root_order() as i64;
    let s = h.order() as usize;
    let table = (0..s)
        .map(|a| {
            (0..s)
                .map(|b| {
                    let ab = h.index_of(&h.add(&h.element(a), &h.element(b)));
                    alpha.value(a, b) + f[a] + f[b] - f[ab]
                })
                .collect()
        })
        .collect();
    Cocycle2H::new(h, n as u64, table).unwrap()
}

/// A random bicharacter on a random group, with a normalized 1-cochain.
fn cocycle_case() -> impl Strategy<Value = (Bicharacter, Vec<i64>)> {
    small_abelian().prop_flat_map(|h| {
        let phis = all_bicharacters(&h);
        let s = h.order() as usize;
        let n = h.exponent() as i64;
        (0..phis.len(), prop::collection::vec(0..n.max(1), s)).prop_map(move |(i, mut f)| {
            f[0] = 0;
            (phis[i].clone(), f)
        })
    })
}

/// Split extensions with trivial action and coboundary data, plus fixed nonsplit ones.
fn extension() -> impl Strategy<Value = Extension> {
    let fixed = prop_oneof![
        Just(quaternion_extension()),
        Just(dihedral_extension()),
        Just(common::z3z3_by_z2(vec![vec![2, 0], vec![0, 2]])),
        Just(common::z3z3_by_z2(vec![vec![0, 1], vec![1, 0]])),
    ];
    let generated = (small_abelian(), prop::sample::select(vec!["Z2", "Z3", "Z2xZ2", "S3"])).prop_flat_map(|(h, q)| {
        let q = FiniteGroup::from_name(q).unwrap();
        let nq = q.order();
        let factors = h.invariant_factors().to_vec();
        let coords = factors.iter().map(|&m| 0..m as i64).collect::<Vec<_>>();
        prop::collection::vec(coords, nq).prop_map(move |mut f| {
            for c in f[0].iter_mut() {
                *c = 0;
            }
            let f: Vec<_> = f.into_iter().map(|c| h.reduce(&c)).collect();
            let beta = (0..nq)
                .map(|a| (0..nq).map(|b| h.add(&h.add(&f[a], &f[b]), &h.neg(&f[q.mul(a, b)]))).collect())
                .collect();
            Extension::new(h.clone(), q.clone(), Extension::trivial_action(&h, &q), beta).unwrap()
        })
    });
    prop_oneof![fixed, generated]
}

fn presentations() -> &'static [(String, CrossedPresentation)] {
    static CACHE: OnceLock<Vec<(String, CrossedPresentation)>> = OnceLock::new();
    CACHE.get_or_init(|| {
        common::realization_corpus()
            .into_iter()
            .map(|(name, t)| {
                let p = build_presentation(&t).unwrap();
                (name, p)
            })
            .collect()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn extension_roundtrips_through_normal_subgroup(ext in extension()) {
        let g = ext.group();
        let hs = ext.h_subgroup();
        let (back, _) = Extension::from_normal_subgroup(g, &hs).unwrap();
        prop_assert_eq!(back.h(), ext.h());
        prop_assert_eq!(back.q().order_profile(), ext.q().order_profile());
        prop_assert_eq!(back.q().is_abelian(), ext.q().is_abelian());
    }

    #[test]
    fn conjugation_by_section_is_the_action(ext in extension()) {
        let conj = ext.conjugation_action_on_h();
        for q in 0..ext.q().order() {
            let via_g: &IntMatrixHom = &conj[ext.pair_index(0, q)];
            for x in ext.h().elements() {
                prop_assert_eq!(via_g.apply(&x), ext.action()[q].apply(&x));
            }
        }
    }

    #[test]
    fn normal_abelian_subgroups_are_conjugation_stable(name in prop::sample::select(GROUP_NAMES.to_vec())) {
        let g = FiniteGroup::from_name(name).unwrap();
        for hs in normal_abelian_subgroups(&g) {
            for x in 0..g.order() {
                for &h in &hs.subgroup.elements {
                    prop_assert!(hs.subgroup.contains(g.conj(x, h)));
                }
            }
        }
    }

    #[test]
    fn commutator_form_ignores_coboundaries((phi, f) in cocycle_case()) {
        let alpha = perturbed(&phi, &f);
        prop_assert_eq!(&commutator_form(&alpha).unwrap(), &phi);
        if is_coboundary(&alpha).is_some() {
            prop_assert!(phi.is_trivial());
        }
        let pure = perturbed(&Bicharacter::trivial(phi.group()), &f);
        prop_assert!(is_coboundary(&pure).is_some());
    }

    #[test]
    fn quotient_by_radical_is_square_type((phi, _) in cocycle_case()) {
        let h = phi.group();
        let s = radical(&phi);
        let q = h.quotient(&s.generators).unwrap();
        prop_assert!(q.is_square_type(), "H/S = {} for E = {:?}", q.label(), phi.exponents());
    }

    #[test]
    fn invariant_bicharacters_closed_under_inverse(ext in extension()) {
        let phis = enumerate_invariant_bicharacters(&ext);
        for phi in &phis {
            prop_assert!(phis.contains(&phi.inverse()));
        }
    }

    #[test]
    fn unit_commutators_are_the_bicharacter((phi, f) in cocycle_case(), i in any::<prop::sample::Index>(), j in any::<prop::sample::Index>()) {
        let alpha = perturbed(&phi, &f);
        let a = twisted_group_algebra(&alpha).unwrap();
        let h = alpha.group();
        let s = h.order() as usize;
        let (h1, h2) = (i.index(s), j.index(s));
        let unit_inv = |x: usize| {
            let (idx, root) = twisted_unit_inverse(&alpha, x);
            let z = zeta_power(alpha.root_order(), root);
            a.basis_element(idx).iter().map(|c| c * &z).collect::<Vec<CyclotomicNumber>>()
        };
        let prod = a.mul(&a.mul(&a.mul(&a.basis_element(h1), &a.basis_element(h2)), &unit_inv(h1)), &unit_inv(h2));
        let value = zeta_power(phi.root_order(), phi.evaluate(&h.element(h1), &h.element(h2)))
            .promote(a.conductor())
            .unwrap();
        let expected: Vec<CyclotomicNumber> = a.identity().iter().map(|c| c * &value).collect();
        prop_assert_eq!(prod, expected);
    }

    #[test]
    fn structure_reports_have_square_type_quotients(name in prop::sample::select(GROUP_NAMES.to_vec()), d in 1u64..=3) {
        let g = FiniteGroup::from_name(name).unwrap();
        for hs in normal_abelian_subgroups(&g) {
            let actions = hs.conjugation_action(&g).unwrap();
            for phi in gradalg::cohomology::invariant_bicharacters(&hs.group, &actions) {
                let r = structure_report_for(&g, &hs, &phi, d).unwrap();
                prop_assert!(r.h_mod_s_type.is_square_type());
                let sq = (r.h_type.order() / r.s_type.order()) as f64;
                prop_assert_eq!(r.d_degree, d * sq.sqrt().round() as u64 * r.l_over_k0_degree);
            }
        }
    }

    #[test]
    fn symbols_times_inverses_are_one(k in any::<prop::sample::Index>(), b in any::<prop::sample::Index>()) {
        let ps = presentations();
        let (name, p) = &ps[k.index(ps.len())];
        let b = b.index(p.basis_len());
        let left = p.mul(&p.symbol(b), &p.inverse(b));
        let right = p.mul(&p.inverse(b), &p.symbol(b));
        for t in [left, right] {
            prop_assert!(t.coeff.is_one(), "{name}: basis {b}");
            prop_assert_eq!(t.basis, 0);
        }
    }

    #[test]
    fn h_block_commutators_match_twisted_algebra(k in any::<prop::sample::Index>()) {
        let ps = presentations();
        let (name, p) = &ps[k.index(ps.len())];
        let alpha = cocycle_from_bicharacter(&p.phi);
        let a = twisted_group_algebra(&alpha).unwrap();
        let s = p.h_elements.len();
        for x in 0..s {
            for y in 0..s {
                let (bx, by) = (p.h_elements[x], p.h_elements[y]);
                let ratio = p.gamma[bx][by].mul(&p.gamma[by][bx].inv(p.n), p.n);
                prop_assert!(ratio.is_root(), "{name}: ({x},{y})");
                let from_algebra = {
                    let uv = a.mul(&a.basis_element(x), &a.basis_element(y));
                    let vu = a.mul(&a.basis_element(y), &a.basis_element(x));
                    let i = uv.iter().position(|c| !c.is_zero()).unwrap();
                    &uv[i] * &vu[i].inverse().unwrap()
                };
                let as_number = zeta_power(p.n, ratio.root);
                let m = num_integer::lcm(p.n, a.conductor());
                prop_assert_eq!(as_number.promote(m).unwrap(), from_algebra.promote(m).unwrap(), "{}: ({},{})", name, x, y);
            }
        }
    }
}

#[test]
fn every_named_subgroup_has_an_abelian_presentation() {
    for name in GROUP_NAMES {
        let g = FiniteGroup::from_name(name).unwrap();
        for hs in normal_abelian_subgroups(&g) {
            let again = AbelianSubgroup::new(&g, hs.subgroup.clone()).unwrap();
            assert_eq!(again.group, hs.group, "{name}");
        }
    }
}
