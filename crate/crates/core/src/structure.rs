//! Decision procedures on grading data: realizable triples, structure
//! reports (radical, graded center, degrees), form existence for BSZ
//! presentations, and per-group case tables.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_integer::Roots;
use serde::{Deserialize, Serialize};

use crate::abelian::AbelianGroup;
use crate::cohomology::{
    cocycle_from_bicharacter, commutator_form, invariant_bicharacters, is_invariant_under, is_nondegenerate,
    q_invariant, radical, Bicharacter, Cocycle2H,
};
use crate::error::{Error, Result};
use crate::graded_algebra::BszPresentation;
use crate::groups::{all_subgroups, center, normal_abelian_subgroups, AbelianSubgroup, Extension, FiniteGroup, Subgroup};
use crate::par;

/// `([β], φ, d)` with `φ` invariant under the action of `Q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RealizableTriple {
    pub ext: Extension,
    pub phi: Bicharacter,
    pub d: u64,
}

/// Per-condition outcome of triple validation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TripleCheck {
    pub phi_on_h: bool,
    pub phi_invariant: bool,
    pub d_positive: bool,
}

impl TripleCheck {
    pub fn ok(&self) -> bool {
        self.phi_on_h && self.phi_invariant && self.d_positive
    }
}

pub fn check_triple(ext: &Extension, phi: &Bicharacter, d: u64) -> TripleCheck {
    let phi_on_h = phi.group() == ext.h();
    TripleCheck {
        phi_on_h,
        phi_invariant: phi_on_h && q_invariant(phi, ext).unwrap_or(false),
        d_positive: d >= 1,
    }
}

pub fn validate_triple(ext: Extension, phi: Bicharacter, d: u64) -> Result<RealizableTriple> {
    let c = check_triple(&ext, &phi, d);
    if c.ok() {
        return Ok(RealizableTriple { ext, phi, d });
    }
    let mut why = Vec::new();
    if !c.phi_on_h {
        why.push(format!("phi is defined on {} but H is {}", phi.group().label(), ext.h().label()));
    } else if !c.phi_invariant {
        why.push("phi is not invariant under the action of Q".to_string());
    }
    if !c.d_positive {
        why.push("d must be at least 1".to_string());
    }
    Err(Error::NotInvariant(why.join("; ")))
}

/// `d · sqrt(|H| / |S|) · [G : H]`.
pub fn degree_formula(d: u64, h_order: u64, s_order: u64, index: u64) -> Result<u64> {
    if s_order == 0 || !h_order.is_multiple_of(s_order) {
        return Err(Error::NotPerfectSquare(format!("{h_order}/{s_order} is not an integer")));
    }
    let r = h_order / s_order;
    let root = r.sqrt();
    if root * root != r {
        return Err(Error::NotPerfectSquare(format!("{h_order}/{s_order} = {r}")));
    }
    Ok(d * root * index)
}

/// Does `H` have a complement in `G`?
pub fn has_complement(g: &FiniteGroup, h: &Subgroup) -> bool {
    let want = h.index_in(g);
    all_subgroups(g)
        .iter()
        .any(|c| c.order() == want && c.elements.iter().all(|&x| x == 0 || !h.contains(x)))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructureReport {
    /// Elements of `H` in `G`.
    #[serde(rename = "H")]
    pub h: Vec<usize>,
    #[serde(rename = "H_type")]
    pub h_type: AbelianGroup,
    /// `φ` on the chosen basis of `H`.
    pub phi: Bicharacter,
    pub phi_trivial: bool,
    /// Elements of the radical `S` in `G`.
    #[serde(rename = "S")]
    pub s: Vec<usize>,
    #[serde(rename = "S_type")]
    pub s_type: AbelianGroup,
    #[serde(rename = "S_central")]
    pub s_central: bool,
    #[serde(rename = "K_graded")]
    pub k_graded: bool,
    #[serde(rename = "K_in_De")]
    pub k_in_de: bool,
    #[serde(rename = "K_equals_K0")]
    pub k_equals_k0: bool,
    #[serde(rename = "L_over_K0_degree")]
    pub l_over_k0_degree: u64,
    #[serde(rename = "K_over_K0_degree")]
    pub k_over_k0_degree: u64,
    #[serde(rename = "D_degree")]
    pub d_degree: u64,
    #[serde(rename = "H_mod_S_type")]
    pub h_mod_s_type: AbelianGroup,
    pub extension_split: bool,
}

/// Report for `H` given with an explicit basis; `φ` is read on that basis.
pub fn structure_report_for(g: &FiniteGroup, hs: &AbelianSubgroup, phi: &Bicharacter, d: u64) -> Result<StructureReport> {
    if !hs.subgroup.is_normal(g) {
        return Err(Error::InvalidSubgroup("H is not normal in G".into()));
    }
    if phi.group() != &hs.group {
        return Err(Error::InvalidBicharacter(format!(
            "phi is defined on {} but H is {}",
            phi.group().label(),
            hs.group.label()
        )));
    }
    if d == 0 {
        return Err(Error::InvalidPresentation("d must be at least 1".into()));
    }
    if !is_invariant_under(phi, &hs.conjugation_action(g)?) {
        return Err(Error::NotInvariant("phi is not invariant under conjugation".into()));
    }
    let rad = radical(phi);
    let z = center(g);
    let s: Vec<usize> = {
        let mut v: Vec<usize> = rad.elements.iter().map(|&i| hs.elements[i]).collect();
        v.sort_unstable();
        v
    };
    let s_central = s.iter().all(|&x| z.contains(x));
    let nondeg = is_nondegenerate(phi);
    let index = hs.subgroup.index_in(g) as u64;
    Ok(StructureReport {
        h: hs.subgroup.elements.clone(),
        h_type: hs.group.clone(),
        phi: phi.clone(),
        phi_trivial: phi.is_trivial(),
        s,
        s_type: rad.group.clone(),
        s_central,
        k_graded: s_central,
        k_in_de: nondeg,
        k_equals_k0: nondeg,
        l_over_k0_degree: index,
        k_over_k0_degree: rad.order() as u64,
        d_degree: degree_formula(d, hs.group.order(), rad.order() as u64, index)?,
        h_mod_s_type: hs.group.quotient(&rad.generators)?,
        extension_split: has_complement(g, &hs.subgroup),
    })
}

pub fn structure_report(g: &FiniteGroup, h: &Subgroup, phi: &Bicharacter, d: u64) -> Result<StructureReport> {
    let hs = AbelianSubgroup::new(g, Subgroup::new(g, h.elements.clone())?)?;
    structure_report_for(g, &hs, phi, d)
}

/// `K = K₀^α̃ S`: the radical and the restriction of the canonical cocycle of `φ` to it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GradedCenter {
    /// Elements of `S` in `G`, sorted.
    #[serde(rename = "S")]
    pub s: Vec<usize>,
    #[serde(rename = "S_type")]
    pub s_type: AbelianGroup,
    /// Root order of the cocycle values.
    pub n: u64,
    /// `alpha[a][b]` for `a, b` indexing `S` in sorted order.
    pub alpha: Vec<Vec<i64>>,
    /// `[K : K₀] = |S|`.
    pub degree_over_k0: u64,
    pub note: String,
}

pub fn graded_center_presentation(g: &FiniteGroup, hs: &AbelianSubgroup, phi: &Bicharacter) -> Result<GradedCenter> {
    if phi.group() != &hs.group {
        return Err(Error::InvalidBicharacter("phi is defined on a different group".into()));
    }
    let rad = radical(phi);
    let z = center(g);
    let mut pairs: Vec<(usize, usize)> = rad.elements.iter().map(|&i| (hs.elements[i], i)).collect();
    pairs.sort_unstable();
    if let Some(&(x, _)) = pairs.iter().find(|(x, _)| !z.contains(*x)) {
        return Err(Error::CenterNotGraded(format!(
            "S is not central in G (element {} is not central), so the center is not graded",
            g.name(x)
        )));
    }
    let alpha = cocycle_from_bicharacter(phi);
    let table = pairs
        .iter()
        .map(|&(_, a)| pairs.iter().map(|&(_, b)| alpha.value(a, b)).collect())
        .collect();
    Ok(GradedCenter {
        s: pairs.iter().map(|p| p.0).collect(),
        s_type: rad.group.clone(),
        n: alpha.root_order(),
        alpha: table,
        degree_over_k0: rad.order() as u64,
        note: "restriction of alpha to S x S; the cohomologous correction over L is a coboundary and is absorbed".into(),
    })
}

/// The four conditions for a BSZ algebra to admit a graded division form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormExistence {
    pub h_abelian: bool,
    pub cosets_balanced: bool,
    /// Number of tuple entries in each right coset `Hg`, cosets ordered by least element.
    pub coset_counts: Vec<usize>,
    pub h_normal: bool,
    /// `None` when `H` is nonabelian or not normal.
    pub alpha_invariant: Option<bool>,
    pub exists: bool,
}

/// The cocycle of `p` as a `Cocycle2H` on the abstract type of an abelian `H`.
pub fn abstract_cocycle(p: &BszPresentation, hs: &AbelianSubgroup) -> Result<Cocycle2H> {
    let pos = |x: usize| p.h().elements.binary_search(&x).expect("element of H");
    let m = hs.elements.len();
    let table = (0..m)
        .map(|a| (0..m).map(|b| p.alpha().table[pos(hs.elements[a])][pos(hs.elements[b])]).collect())
        .collect();
    Cocycle2H::new(hs.group.clone(), p.alpha().n, table)
}

pub fn form_exists(p: &BszPresentation) -> Result<FormExistence> {
    let g = p.group();
    let h = p.h();
    let h_abelian = h.is_abelian(g);
    let h_normal = h.is_normal(g);
    let labels = h.right_coset_labels(g);
    let mut coset_counts = vec![0usize; h.index_in(g)];
    for &t in p.tuple() {
        coset_counts[labels[t]] += 1;
    }
    let cosets_balanced = coset_counts.iter().all(|&c| c == coset_counts[0]) && coset_counts[0] > 0;
    let alpha_invariant = if h_abelian && h_normal {
        let hs = AbelianSubgroup::new(g, h.clone())?;
        let phi = commutator_form(&abstract_cocycle(p, &hs)?)?;
        Some(is_invariant_under(&phi, &hs.conjugation_action(g)?))
    } else {
        None
    };
    Ok(FormExistence {
        h_abelian,
        cosets_balanced,
        coset_counts,
        h_normal,
        alpha_invariant,
        exists: h_abelian && cosets_balanced && h_normal && alpha_invariant == Some(true),
    })
}

/// A row of a case table: reports that agree on every invariant are merged.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaseRow {
    pub case: usize,
    pub multiplicity: usize,
    /// Every merged `H`, as element lists of `G`.
    pub subgroups: Vec<Vec<usize>>,
    pub report: StructureReport,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaseReport {
    pub group_order: usize,
    pub d: u64,
    pub rows: Vec<CaseRow>,
}

type MergeKey = (u64, Vec<u64>, bool, Vec<u64>, bool, bool, u64, u64, Vec<u64>, bool);

fn merge_key(r: &StructureReport) -> MergeKey {
    (
        r.h_type.order(),
        r.h_type.invariant_factors().to_vec(),
        r.phi_trivial,
        r.s_type.invariant_factors().to_vec(),
        r.s_central,
        r.k_in_de,
        r.l_over_k0_degree,
        r.d_degree,
        r.h_mod_s_type.invariant_factors().to_vec(),
        r.extension_split,
    )
}

/// One row per normal abelian `H` and invariant `φ`, merged when the reports coincide.
pub fn case_report(g: &FiniteGroup, d: u64) -> Result<CaseReport> {
    let subs = normal_abelian_subgroups(g);
    let per_sub = par::map_slice(&subs, |hs| -> Result<Vec<StructureReport>> {
        let actions = hs.conjugation_action(g)?;
        invariant_bicharacters(&hs.group, &actions)
            .iter()
            .map(|phi| structure_report_for(g, hs, phi, d))
            .collect()
    });
    let mut merged: BTreeMap<MergeKey, (Vec<Vec<usize>>, StructureReport)> = BTreeMap::new();
    for reports in per_sub {
        for r in reports? {
            merged
                .entry(merge_key(&r))
                .and_modify(|(subs, _)| {
                    if !subs.contains(&r.h) {
                        subs.push(r.h.clone())
                    }
                })
                .or_insert_with(|| (vec![r.h.clone()], r.clone()));
        }
    }
    let mut rows: Vec<(Vec<Vec<usize>>, StructureReport)> = merged.into_values().collect();
    rows.sort_by(|a, b| {
        let ka = (a.1.h_type.order(), a.1.h_type.invariant_factors(), &a.1.phi, &a.0);
        let kb = (b.1.h_type.order(), b.1.h_type.invariant_factors(), &b.1.phi, &b.0);
        ka.cmp(&kb)
    });
    let rows = rows
        .into_iter()
        .enumerate()
        .map(|(i, (mut subgroups, report))| {
            subgroups.sort();
            CaseRow { case: i + 1, multiplicity: subgroups.len(), subgroups, report }
        })
        .collect();
    Ok(CaseReport { group_order: g.order(), d, rows })
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

pub fn case_report_markdown(g: &FiniteGroup, report: &CaseReport) -> String {
    let mut out = String::new();
    writeln!(out, "| case | H | count | phi | S | K graded? | [L:K0] | [K:K0] | deg D | K in D_e? | K = K0? | H/S | split |").unwrap();
    writeln!(out, "|---|---|---|---|---|---|---|---|---|---|---|---|---|").unwrap();
    for row in &report.rows {
        let r = &row.report;
        let h_names: Vec<String> = r.h.iter().map(|&x| g.name(x)).collect();
        let s_names: Vec<String> = r.s.iter().map(|&x| g.name(x)).collect();
        writeln!(
            out,
            "| {} | {} {{{}}} | {} | {} | {} {{{}}} | {} | {} | {} | {} | {} | {} | {} | {} |",
            row.case,
            r.h_type.label(),
            h_names.join(", "),
            row.multiplicity,
            if r.phi_trivial { "trivial" } else { "nontrivial" },
            r.s_type.label(),
            s_names.join(", "),
            yes_no(r.k_graded),
            r.l_over_k0_degree,
            r.k_over_k0_degree,
            r.d_degree,
            yes_no(r.k_in_de),
            yes_no(r.k_equals_k0),
            r.h_mod_s_type.label(),
            yes_no(r.extension_split),
        )
        .unwrap();
    }
    out
}

/// A row of a hand-transcribed reference table; `None` means the source is silent.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GoldenRow {
    pub case: usize,
    #[serde(rename = "H")]
    pub h: String,
    pub phi: String,
    #[serde(rename = "D_degree")]
    pub d_degree: u64,
    #[serde(rename = "K_graded")]
    pub k_graded: Option<bool>,
    #[serde(rename = "K_equals_K0")]
    pub k_equals_k0: Option<bool>,
    #[serde(rename = "K_in_De")]
    pub k_in_de: Option<bool>,
    #[serde(rename = "L_over_K0_degree")]
    pub l_over_k0_degree: Option<u64>,
    #[serde(rename = "K_over_K0_degree")]
    pub k_over_k0_degree: Option<u64>,
    #[serde(rename = "S_equals_H")]
    pub s_equals_h: Option<bool>,
    pub extension_split: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GoldenTable {
    pub group: String,
    pub d: u64,
    pub rows: Vec<GoldenRow>,
}

/// Field-by-field differences between a computed table and a reference table.
pub fn compare_golden(report: &CaseReport, golden: &GoldenTable) -> Vec<String> {
    let mut diffs = Vec::new();
    if report.rows.len() != golden.rows.len() {
        diffs.push(format!("row count {} != {}", report.rows.len(), golden.rows.len()));
        return diffs;
    }
    for (row, want) in report.rows.iter().zip(&golden.rows) {
        let r = &row.report;
        let c = want.case;
        let mut check = |field: &str, got: String, exp: Option<String>| {
            if let Some(exp) = exp {
                if got != exp {
                    diffs.push(format!("case {c} {field}: got {got}, expected {exp}"));
                }
            }
        };
        check("case", row.case.to_string(), Some(want.case.to_string()));
        check("H", r.h_type.label(), Some(want.h.clone()));
        let phi = if r.phi_trivial { "trivial" } else { "nontrivial" };
        check("phi", phi.into(), Some(want.phi.clone()));
        check("D_degree", r.d_degree.to_string(), Some(want.d_degree.to_string()));
        check("K_graded", r.k_graded.to_string(), want.k_graded.map(|b| b.to_string()));
        check("K_equals_K0", r.k_equals_k0.to_string(), want.k_equals_k0.map(|b| b.to_string()));
        check("K_in_De", r.k_in_de.to_string(), want.k_in_de.map(|b| b.to_string()));
        check("L_over_K0_degree", r.l_over_k0_degree.to_string(), want.l_over_k0_degree.map(|x| x.to_string()));
        check("K_over_K0_degree", r.k_over_k0_degree.to_string(), want.k_over_k0_degree.map(|x| x.to_string()));
        check("S_equals_H", (r.s == r.h).to_string(), want.s_equals_h.map(|b| b.to_string()));
        check("extension_split", r.extension_split.to_string(), want.extension_split.map(|b| b.to_string()));
    }
    diffs
}

pub const GOLDEN_Q8: &str = include_str!("../golden/q8.json");
pub const GOLDEN_D4: &str = include_str!("../golden/d4.json");

pub fn golden_table(name: &str) -> Result<GoldenTable> {
    let text = match name {
        "Q8" => GOLDEN_Q8,
        "D4" => GOLDEN_D4,
        other => return Err(Error::UnknownGroupName(other.into())),
    };
    serde_json::from_str(text).map_err(|e| Error::Internal(e.to_string()))
}
