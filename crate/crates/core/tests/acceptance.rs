//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use gradalg::cohomology::{
    all_bicharacters, cocycle_from_bicharacter, commutator_form, is_nondegenerate, radical, schur_multiplier,
};
use gradalg::graded_algebra::{
    bsz_algebra, center_basis, homogeneous_dims, is_central_simple, is_graded_simple, radical_is_zero,
    twisted_group_algebra,
};
use gradalg::groups::FiniteGroup;
use gradalg::realization::{build_presentation, verify_presentation};
use gradalg::structure::{case_report, compare_golden, degree_formula, form_exists, golden_table};

type Outcome = Result<String, String>;

fn criterion_1() -> Outcome {
    let mut notes = Vec::new();
    for (name, g) in [("Q8", FiniteGroup::quaternion8()), ("D4", FiniteGroup::dihedral4())] {
        let golden = golden_table(name).map_err(|e| e.to_string())?;
        let report = case_report(&g, 1).map_err(|e| e.to_string())?;
        let diffs = compare_golden(&report, &golden);
        if !diffs.is_empty() {
            return Err(format!("{name}: {}", diffs.join("; ")));
        }
        let degrees: Vec<u64> = report.rows.iter().map(|r| r.report.d_degree).collect();
        notes.push(format!("{name} degrees {degrees:?}"));
    }
    Ok(notes.join(", "))
}

fn small_pairs() -> Vec<(gradalg::abelian::AbelianGroup, Vec<gradalg::cohomology::Bicharacter>)> {
    common::abelian_groups_up_to(16)
        .into_iter()
        .map(|h| {
            let phis = all_bicharacters(&h);
            (h, phis)
        })
        .collect()
}

fn criterion_2() -> Outcome {
    let mut count = 0;
    for (h, phis) in small_pairs() {
        for phi in phis {
            let back = commutator_form(&cocycle_from_bicharacter(&phi)).map_err(|e| e.to_string())?;
            if back != phi {
                return Err(format!("roundtrip fails on {} with E = {:?}", h.label(), phi.exponents()));
            }
            count += 1;
        }
    }
    Ok(format!("{count} bicharacters"))
}

fn criterion_3_4_5() -> (Outcome, Outcome, Outcome) {
    let (mut c3, mut c4, mut c5) = (Ok(0usize), Ok(0usize), Ok(0usize));
    for (h, phis) in small_pairs() {
        for phi in phis {
            let alpha = cocycle_from_bicharacter(&phi);
            let a = match twisted_group_algebra(&alpha) {
                Ok(a) => a,
                Err(e) => return (Err(e.to_string()), Err(e.to_string()), Err(e.to_string())),
            };
            let s = radical(&phi);
            let label = || format!("{} with E = {:?}", h.label(), phi.exponents());
            if let Ok(n) = c3.as_mut() {
                let z = center_basis(&a);
                let supported = z.iter().all(|v| v.iter().enumerate().all(|(i, c)| c.is_zero() || s.contains(i)));
                if z.len() == s.order() && supported {
                    *n += 1;
                } else {
                    c3 = Err(format!("center of dimension {} vs |S| = {} on {}", z.len(), s.order(), label()));
                }
            }
            if let Ok(n) = c4.as_mut() {
                let cs = is_central_simple(&a);
                if cs == is_nondegenerate(&phi) && (!cs || h.is_square_type()) {
                    *n += 1;
                } else {
                    c4 = Err(format!("is_central_simple = {cs} disagrees on {}", label()));
                }
            }
            if let Ok(n) = c5.as_mut() {
                if radical_is_zero(&a) {
                    *n += 1;
                } else {
                    c5 = Err(format!("nonzero radical on {}", label()));
                }
            }
        }
    }
    let fmt = |r: Result<usize, String>| r.map(|n| format!("{n} twisted group algebras"));
    (fmt(c3), fmt(c4), fmt(c5))
}

fn criterion_6() -> Outcome {
    let groups = common::abelian_groups_up_to(64);
    for h in &groups {
        let m = schur_multiplier(h);
        if h.exponent() % m.exponent() != 0 {
            return Err(format!("exp M({}) = {} does not divide {}", h.label(), m.exponent(), h.exponent()));
        }
    }
    Ok(format!("{} abelian groups", groups.len()))
}

fn criterion_7() -> Outcome {
    let corpus = common::bsz_corpus();
    let mut passing = 0;
    for (name, p, want) in &corpus {
        let f = form_exists(p).map_err(|e| format!("{name}: {e}"))?;
        let got = common::Verdict {
            h_abelian: f.h_abelian,
            cosets_balanced: f.cosets_balanced,
            h_normal: f.h_normal,
            alpha_invariant: f.alpha_invariant,
            exists: f.exists,
        };
        if &got != want {
            return Err(format!("{name}: got {got:?}, expected {want:?}"));
        }
        if f.exists {
            passing += 1;
            let a = bsz_algebra(p).map_err(|e| format!("{name}: {e}"))?;
            if !is_graded_simple(&a) {
                return Err(format!("{name}: algebra is not graded-simple"));
            }
            let k = f.coset_counts[0];
            let hd = homogeneous_dims(&a);
            let each = k * k * p.h().index_in(p.group());
            let total: usize = hd.dims.iter().sum();
            if hd.dims.iter().any(|&x| x != each) || total != p.h().order() * p.s() * p.s() {
                return Err(format!("{name}: homogeneous dimensions {:?}, expected {each} each", hd.dims));
            }
        }
    }
    if corpus.len() < 20 {
        return Err(format!("only {} presentations", corpus.len()));
    }
    Ok(format!("{} presentations, {passing} admit forms", corpus.len()))
}

fn criterion_8() -> Outcome {
    let corpus = common::realization_corpus();
    let ds: std::collections::BTreeSet<u64> = corpus.iter().map(|(_, t)| t.d).collect();
    for (name, t) in &corpus {
        let p = build_presentation(t).map_err(|e| format!("{name}: {e}"))?;
        let r = verify_presentation(&p).map_err(|e| format!("{name}: {e}"))?;
        if !r.passed {
            return Err(format!("{name}: {r:?}"));
        }
        let mut h = p.h_elements.clone();
        h.sort_unstable();
        if r.kernel != h {
            return Err(format!("{name}: kernel {:?} != H {:?}", r.kernel, h));
        }
        if r.e_rank as u64 != t.d * t.d {
            return Err(format!("{name}: e-rank {} != d^2", r.e_rank));
        }
    }
    if corpus.len() < 10 || !(1..=3).all(|d| ds.contains(&d)) {
        return Err("corpus too small".into());
    }
    Ok(format!("{} triples, d in {ds:?}", corpus.len()))
}

fn criterion_9() -> Outcome {
    let stated = [
        ("Q8", vec![8u64, 4, 2]),
        ("D4", vec![8, 4, 2, 4, 2]),
    ];
    for (name, want) in stated {
        let g = FiniteGroup::from_name(name).map_err(|e| e.to_string())?;
        let report = case_report(&g, 1).map_err(|e| e.to_string())?;
        let got: Vec<u64> = report.rows.iter().map(|r| r.report.d_degree).collect();
        if got != want {
            return Err(format!("{name}: degrees {got:?} != {want:?}"));
        }
        for row in &report.rows {
            let r = &row.report;
            let direct = degree_formula(1, r.h_type.order(), r.s.len() as u64, r.l_over_k0_degree)
                .map_err(|e| e.to_string())?;
            if direct != r.d_degree {
                return Err(format!("{name} case {}: formula {direct} != {}", row.case, r.d_degree));
            }
        }
    }
    let mut checked = 0;
    for name in ["Q8", "D4", "S3", "Z2xZ4", "Z3xZ3", "Z2xZ2xZ2"] {
        let g = FiniteGroup::from_name(name).map_err(|e| e.to_string())?;
        for d in 1..=3 {
            for row in case_report(&g, d).map_err(|e| e.to_string())?.rows {
                let r = &row.report;
                if r.s.len() == 1 {
                    let h = r.h_type.order();
                    let root = (h as f64).sqrt().round() as u64;
                    if root * root != h || r.d_degree != d * root * r.l_over_k0_degree {
                        return Err(format!("{name}, d = {d}, case {}: degree {}", row.case, r.d_degree));
                    }
                    checked += 1;
                }
            }
        }
    }
    Ok(format!("stated degrees reproduced, {checked} trivial-S rows match d*sqrt|H|*[G:H]"))
}

fn timed(f: impl FnOnce() -> Outcome) -> (Outcome, Duration) {
    let t = Instant::now();
    let r = f();
    (r, t.elapsed())
}

fn main() -> ExitCode {
    let mut all_ok = true;
    let mut line = |n: u32, title: &str, r: Outcome, elapsed: Option<Duration>, limit: Option<Duration>| {
        let r = match (r, elapsed, limit) {
            (Ok(_), Some(e), Some(l)) if e > l => Err(format!("took {e:.2?}, limit {l:?}")),
            (r, _, _) => r,
        };
        let t = elapsed.map(|e| format!(" [{e:.2?}]")).unwrap_or_default();
        match r {
            Ok(msg) => println!("criterion {n} ({title}): PASS{t} - {msg}"),
            Err(msg) => {
                all_ok = false;
                println!("criterion {n} ({title}): FAIL{t} - {msg}")
            }
        }
    };
    let (r, e) = timed(criterion_1);
    line(1, "golden case tables", r, Some(e), Some(Duration::from_secs(5)));
    let (r, e) = timed(criterion_2);
    line(2, "commutator-form roundtrip", r, Some(e), Some(Duration::from_secs(60)));
    let t = Instant::now();
    let (c3, c4, c5) = criterion_3_4_5();
    let e = t.elapsed();
    line(3, "center = span(S)", c3, Some(e), None);
    line(4, "nondegeneracy oracle", c4, None, None);
    line(5, "semisimplicity", c5, None, None);
    let (r, e) = timed(criterion_6);
    line(6, "multiplier exponent", r, Some(e), None);
    let (r, e) = timed(criterion_7);
    line(7, "form-existence consistency", r, Some(e), None);
    let (r, e) = timed(criterion_8);
    line(8, "realization verification", r, Some(e), Some(Duration::from_secs(120)));
    let (r, e) = timed(criterion_9);
    line(9, "degree formula", r, Some(e), None);
    if all_ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
