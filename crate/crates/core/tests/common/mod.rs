//! Shared corpora for the integration tests.
#![allow(dead_code)]

use gradalg::abelian::{AbelianGroup, IntMatrixHom};
use gradalg::cohomology::{cocycle_from_bicharacter, Bicharacter, Cocycle2H};
use gradalg::graded_algebra::{BszPresentation, SubgroupCocycle};
use gradalg::groups::{
    dihedral_extension, quaternion_extension, AbelianSubgroup, Extension, FiniteGroup, Subgroup,
};
use gradalg::structure::{validate_triple, RealizableTriple};

/// Every abelian group of order at most `n`, as invariant-factor chains.
pub fn abelian_groups_up_to(n: u64) -> Vec<AbelianGroup> {
    fn extend(prefix: &mut Vec<u64>, order: u64, n: u64, out: &mut Vec<AbelianGroup>) {
        out.push(AbelianGroup::from_cyclic_factors(prefix).unwrap());
        let start = prefix.last().copied().unwrap_or(2);
        let mut m = start;
        while order * m <= n {
            if m % start == 0 {
                prefix.push(m);
                extend(prefix, order * m, n, out);
                prefix.pop();
            }
            m += 1;
        }
    }
    let mut out = Vec::new();
    extend(&mut Vec::new(), 1, n, &mut out);
    out
}

fn hom(h: &AbelianGroup, m: Vec<Vec<i64>>) -> IntMatrixHom {
    IntMatrixHom::new(h.clone(), h.clone(), m).unwrap()
}

/// `Z3 x Z3` extended by `Z2` acting by the given matrix.
pub fn z3z3_by_z2(m: Vec<Vec<i64>>) -> Extension {
    let h = AbelianGroup::from_cyclic_factors(&[3, 3]).unwrap();
    Extension::split(h.clone(), FiniteGroup::cyclic(2), vec![IntMatrixHom::identity(&h), hom(&h, m)]).unwrap()
}

/// Extension data read off a normal abelian subgroup of a named group.
pub fn from_subgroup(g: &FiniteGroup, elems: Vec<usize>) -> Extension {
    let hs = AbelianSubgroup::new(g, Subgroup::new(g, elems).unwrap()).unwrap();
    Extension::from_normal_subgroup(g, &hs).unwrap().0
}

/// Triples for the realization checks, labelled.
pub fn realization_corpus() -> Vec<(String, RealizableTriple)> {
    let q8 = FiniteGroup::quaternion8();
    let mut out = Vec::new();
    let mut add = |name: &str, ext: Extension, phi: Option<Bicharacter>, d: u64| {
        let phi = phi.unwrap_or_else(|| Bicharacter::trivial(ext.h()));
        out.push((name.to_string(), validate_triple(ext, phi, d).unwrap()));
    };
    let trivial = AbelianGroup::trivial();
    let q8_split = Extension::split(trivial.clone(), q8.clone(), Extension::trivial_action(&trivial, &q8)).unwrap();
    add("Q8, H = 1 (split)", q8_split, None, 1);
    add("Q8, H = Z2 (nonsplit)", quaternion_extension(), None, 1);
    add("Q8, H = Z4 (nonsplit)", from_subgroup(&q8, vec![0, 1, 2, 3]), None, 1);
    add("Q8, H = Z2, d = 2", quaternion_extension(), None, 2);
    let d4 = dihedral_extension();
    add("D4, H = Z2xZ2, phi trivial", d4.clone(), None, 1);
    add("D4, H = Z2xZ2, phi nontrivial", d4.clone(), Some(Bicharacter::standard_symplectic(2).unwrap()), 1);
    add("D4, H = Z2xZ2, phi nontrivial, d = 2", d4.clone(), Some(Bicharacter::standard_symplectic(2).unwrap()), 2);
    add("D4, H = Z2xZ2, phi trivial, d = 3", d4, None, 3);
    add("D4, H = Z4", from_subgroup(&FiniteGroup::dihedral4(), vec![0, 1, 2, 3]), None, 1);
    add(
        "Z3xZ3 by Z2 (inversion), phi nondegenerate",
        z3z3_by_z2(vec![vec![2, 0], vec![0, 2]]),
        Some(Bicharacter::standard_symplectic(3).unwrap()),
        1,
    );
    add("Z3xZ3 by Z2 (swap), phi trivial, d = 3", z3z3_by_z2(vec![vec![0, 1], vec![1, 0]]), None, 3);
    let z22 = AbelianGroup::from_cyclic_factors(&[2, 2]).unwrap();
    let z1 = FiniteGroup::cyclic(1);
    add(
        "G = H = Z2xZ2, phi nondegenerate",
        Extension::split(z22.clone(), z1.clone(), Extension::trivial_action(&z22, &z1)).unwrap(),
        Some(Bicharacter::standard_symplectic(2).unwrap()),
        1,
    );
    add("S3, H = Z3", from_subgroup(&FiniteGroup::symmetric3(), vec![0, 4, 5]), None, 2);
    out
}

/// Expected per-condition verdicts for a BSZ presentation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub h_abelian: bool,
    pub cosets_balanced: bool,
    pub h_normal: bool,
    pub alpha_invariant: Option<bool>,
    pub exists: bool,
}

fn verdict(h_abelian: bool, cosets_balanced: bool, h_normal: bool, alpha_invariant: Option<bool>) -> Verdict {
    let exists = h_abelian && cosets_balanced && h_normal && alpha_invariant == Some(true);
    Verdict { h_abelian, cosets_balanced, h_normal, alpha_invariant, exists }
}

fn abelian_bsz(g: &FiniteGroup, elems: Vec<usize>, phi: Option<Bicharacter>, tuple: Vec<usize>) -> BszPresentation {
    let hs = AbelianSubgroup::new(g, Subgroup::new(g, elems).unwrap()).unwrap();
    let alpha = match phi {
        Some(p) => cocycle_from_bicharacter(&p),
        None => Cocycle2H::trivial(&hs.group, hs.group.exponent()),
    };
    BszPresentation::from_abelian(g.clone(), &hs.elements, &alpha, tuple).unwrap()
}

fn plain_bsz(g: &FiniteGroup, elems: Vec<usize>, tuple: Vec<usize>) -> BszPresentation {
    let m = elems.len();
    let h = Subgroup::new(g, elems).unwrap();
    BszPresentation::new(g.clone(), h, SubgroupCocycle { n: 1, table: vec![vec![0; m]; m] }, tuple).unwrap()
}

fn right_coset_reps(g: &FiniteGroup, elems: &[usize]) -> Vec<usize> {
    let h = Subgroup::new(g, elems.to_vec()).unwrap();
    h.right_cosets(g).iter().map(|c| c[0]).collect()
}

/// Twenty BSZ presentations with hand-classified verdicts.
pub fn bsz_corpus() -> Vec<(String, BszPresentation, Verdict)> {
    let d4 = FiniteGroup::dihedral4();
    let q8 = FiniteGroup::quaternion8();
    let s3 = FiniteGroup::symmetric3();
    let klein = vec![0, 2, 4, 6];
    let nondeg = || Some(Bicharacter::standard_symplectic(2).unwrap());
    let all_ok = verdict(true, true, true, Some(true));
    let mut out: Vec<(String, BszPresentation, Verdict)> = vec![
        ("D4, Klein, nondegenerate, (e, s)".into(), abelian_bsz(&d4, klein.clone(), nondeg(), vec![0, 1]), all_ok.clone()),
        (
            "D4, Klein, nondegenerate, (e, e, s)".into(),
            abelian_bsz(&d4, klein.clone(), nondeg(), vec![0, 0, 1]),
            verdict(true, false, true, Some(true)),
        ),
        ("D4, Klein, trivial, (e, s)".into(), abelian_bsz(&d4, klein.clone(), None, vec![0, 1]), all_ok.clone()),
        ("D4, Klein, nondegenerate, (e, s, e, s)".into(), abelian_bsz(&d4, klein.clone(), nondeg(), vec![0, 1, 0, 1]), all_ok.clone()),
        ("D4, Klein, nondegenerate, (e)".into(), abelian_bsz(&d4, klein, nondeg(), vec![0]), verdict(true, false, true, Some(true))),
        ("D4, Z4, trivial, (e, t)".into(), abelian_bsz(&d4, vec![0, 1, 2, 3], None, vec![0, 4]), all_ok.clone()),
        ("D4, center, (e, s, t, st)".into(), abelian_bsz(&d4, vec![0, 2], None, vec![0, 1, 4, 5]), all_ok.clone()),
        (
            "D4, <t> non-normal, right cosets".into(),
            abelian_bsz(&d4, vec![0, 4], None, right_coset_reps(&d4, &[0, 4])),
            verdict(true, true, false, None),
        ),
        ("D4, H = 1, all of G".into(), abelian_bsz(&d4, vec![0], None, (0..8).collect()), all_ok.clone()),
        ("D4, H = D4 nonabelian, (e)".into(), plain_bsz(&d4, (0..8).collect(), vec![0]), verdict(false, true, true, None)),
        (
            "S3, <(12)> non-normal, right cosets".into(),
            abelian_bsz(&s3, vec![0, 1], None, right_coset_reps(&s3, &[0, 1])),
            verdict(true, true, false, None),
        ),
        ("S3, A3, trivial, (e, (12))".into(), abelian_bsz(&s3, vec![0, 4, 5], None, vec![0, 1]), all_ok.clone()),
        ("S3, H = S3 nonabelian, (e)".into(), plain_bsz(&s3, (0..6).collect(), vec![0]), verdict(false, true, true, None)),
        ("Q8, <i>, trivial, (e, j)".into(), abelian_bsz(&q8, vec![0, 1, 2, 3], None, vec![0, 4]), all_ok.clone()),
        ("Q8, center, (1, i, j, k)".into(), abelian_bsz(&q8, vec![0, 1], None, vec![0, 2, 4, 6]), all_ok.clone()),
    ];
    let z22 = FiniteGroup::from_name("Z2xZ2").unwrap();
    out.push(("Z2xZ2, H = G, nondegenerate, (e)".into(), abelian_bsz(&z22, (0..4).collect(), nondeg(), vec![0]), all_ok.clone()));
    out.push((
        "Z2xZ2, H = <a>, (e, b, b)".into(),
        abelian_bsz(&z22, vec![0, 2], None, vec![0, 1, 1]),
        verdict(true, false, true, Some(true)),
    ));
    let sym3 = || Some(Bicharacter::standard_symplectic(3).unwrap());
    let swap = z3z3_by_z2(vec![vec![0, 1], vec![1, 0]]);
    let inv = z3z3_by_z2(vec![vec![2, 0], vec![0, 2]]);
    let h9: Vec<usize> = (0..9).collect();
    out.push((
        "Z3xZ3 by Z2 (swap), nondegenerate, (e, q)".into(),
        abelian_bsz(swap.group(), h9.clone(), sym3(), vec![0, 9]),
        verdict(true, true, true, Some(false)),
    ));
    out.push((
        "Z3xZ3 by Z2 (swap), trivial, (e, q)".into(),
        abelian_bsz(swap.group(), h9.clone(), None, vec![0, 9]),
        all_ok.clone(),
    ));
    out.push((
        "Z3xZ3 by Z2 (inversion), nondegenerate, (e, q)".into(),
        abelian_bsz(inv.group(), h9, sym3(), vec![0, 9]),
        all_ok,
    ));
    out
}
