//! Command-line front end: JSON specs in, JSON or Markdown reports out.
//!
//! Exit status: 0 on success, 1 on mathematical rejection, 2 on malformed
//! input. Diagnostics are JSON objects written to stderr.

use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::abelian::{AbelianElement, AbelianGroup, IntMatrixHom};
use crate::cohomology::{
    commutator_form, invariant_bicharacters, is_coboundary, is_nondegenerate, radical, schur_multiplier, Bicharacter,
    Cocycle2H, Radical,
};
use crate::graded_algebra::{
    bsz_algebra, center_basis, homogeneous_dims, is_central_simple, is_graded_simple,
    radical_is_zero, twisted_group_algebra, AlgebraDump, BszPresentation, HomogeneousDims, SubgroupCocycle,
};
use crate::groups::{AbelianSubgroup, Extension, FiniteGroup, Subgroup};
use crate::realization::{build_presentation, relations_text, verify_presentation, CrossedPresentation, VerificationReport};
use crate::structure::{case_report, case_report_markdown, form_exists, validate_triple, CaseReport, FormExistence};
use crate::Error;

#[derive(Parser, Debug)]
#[command(name = "gradalg", version, about = "Exact computations for group-graded division algebras")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Validate a 2-cocycle on an abelian group and report its commutator form.
    CheckCocycle(Job),
    /// Schur multiplier of an abelian group.
    Schur(Job),
    /// Bicharacters on H (invariant under Q when an extension is given).
    EnumeratePhi(Job),
    /// Build and analyze a twisted group algebra.
    TwistedAlgebra(Job),
    /// Build and analyze a BSZ graded algebra.
    Bsz(Job),
    /// Decide whether a BSZ algebra admits a graded division form.
    FormExists(Job),
    /// Structure report for every normal abelian H and invariant φ of a group.
    CaseReport(Job),
    /// Crossed-product presentation of a realizable triple.
    Realize(Job),
    /// Check a crossed-product presentation.
    Verify(Job),
}

#[derive(Args, Debug, Clone)]
pub struct Job {
    /// Input JSON file; `-` reads stdin.
    #[arg(long = "in", value_name = "PATH")]
    pub input: Option<PathBuf>,
    /// Report destination (stdout when absent).
    #[arg(long, value_name = "PATH")]
    pub output: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Group name (`Q8`, `D4`, `S3`, `Z4`, `Z2xZ2`, ...) or inline JSON.
    #[arg(long)]
    pub group: Option<String>,
    #[arg(long)]
    pub d: Option<u64>,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Markdown,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Failure {
    Schema { path: String, message: String },
    Rejected { kind: String, message: String, witness: Option<Vec<usize>> },
}

impl Failure {
    pub fn exit_code(&self) -> u8 {
        match self {
            Failure::Schema { .. } => 2,
            Failure::Rejected { .. } => 1,
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            Failure::Schema { path, message } => {
                serde_json::json!({"status": "schema_error", "path": path, "message": message})
            }
            Failure::Rejected { kind, message, witness } => {
                serde_json::json!({"status": "rejected", "kind": kind, "message": message, "witness": witness})
            }
        }
    }

    fn schema(path: &str, message: impl Into<String>) -> Self {
        Failure::Schema { path: path.to_string(), message: message.into() }
    }

    /// Shape problems are schema errors; everything else is a rejection.
    fn from_error(path: &str, e: Error) -> Self {
        let message = e.to_string();
        let witness = match &e {
            Error::CocycleViolation(a, b, c) => Some(vec![*a, *b, *c]),
            Error::NotNormalized(a, b) | Error::ActionNotHomomorphism(a, b) => Some(vec![*a, *b]),
            Error::NotAutomorphism(a) => Some(vec![*a]),
            _ => None,
        };
        match e {
            Error::DimensionMismatch(_)
            | Error::ElementOutOfRange { .. }
            | Error::UnknownGroupName(_)
            | Error::InvalidGroup(_)
            | Error::IllDefinedHom { .. }
            | Error::InvalidPresentation(_) => Failure::schema(path, message),
            other => {
                let kind = format!("{other:?}");
                let kind = kind.split(['(', ' ', '{']).next().unwrap_or_default().to_string();
                Failure::Rejected { kind, message, witness }
            }
        }
    }
}

type Run<T> = std::result::Result<T, Failure>;

/// What a command produced: the report, its Markdown view and whether the
/// report itself records a rejection.
pub struct Outcome {
    pub json: String,
    pub markdown: String,
    pub rejected: bool,
}

fn outcome<T: Serialize>(report: &T, markdown: String) -> Outcome {
    Outcome { json: serde_json::to_string(report).expect("reports serialize"), markdown, rejected: false }
}

fn fields_markdown<T: Serialize>(title: &str, report: &T) -> String {
    let mut out = format!("## {title}\n\n| field | value |\n|---|---|\n");
    if let Value::Object(map) = serde_json::to_value(report).expect("reports serialize") {
        for (k, v) in map {
            let v = match v {
                Value::String(s) => s,
                other => other.to_string(),
            };
            out.push_str(&format!("| {k} | {} |\n", v.replace('|', "\\|")));
        }
    }
    out
}

fn parse_json<T: DeserializeOwned>(text: &str) -> Run<T> {
    let mut de = serde_json::Deserializer::from_str(text);
    let value = serde_path_to_error::deserialize(&mut de).map_err(|e| {
        let path = e.path().to_string();
        Failure::schema(&path, e.into_inner().to_string())
    })?;
    de.end().map_err(|e| Failure::schema(".", e.to_string()))?;
    Ok(value)
}

fn parse_value<T: DeserializeOwned>(path: &str, v: Value) -> Run<T> {
    serde_path_to_error::deserialize(v).map_err(|e| {
        let inner = e.path().to_string();
        let full = if inner == "." { path.to_string() } else { format!("{path}.{inner}") };
        Failure::schema(&full, e.into_inner().to_string())
    })
}

fn read_input(job: &Job) -> Run<String> {
    match job.input.as_deref() {
        None => Err(Failure::schema("--in", "this command needs an input file")),
        Some(p) if p.as_os_str() == "-" => {
            let mut s = String::new();
            io::stdin().read_to_string(&mut s).map_err(|e| Failure::schema("--in", e.to_string()))?;
            Ok(s)
        }
        Some(p) => fs::read_to_string(p).map_err(|e| Failure::schema("--in", format!("{}: {e}", p.display()))),
    }
}

fn reject_flags(job: &Job, group: bool, d: bool) -> Run<()> {
    if !group && job.group.is_some() {
        return Err(Failure::schema("--group", "flag not used by this command"));
    }
    if !d && job.d.is_some() {
        return Err(Failure::schema("--d", "flag not used by this command"));
    }
    Ok(())
}

fn group_flag(text: &str) -> Run<Value> {
    let t = text.trim();
    if t.starts_with('{') {
        parse_json(t).map_err(|f| match f {
            Failure::Schema { path, message } => Failure::schema(&format!("--group:{path}"), message),
            other => other,
        })
    } else {
        Ok(Value::String(t.to_string()))
    }
}

/// A group given by built-in name or as `{"cayley": ..., "names": ...}`.
fn finite_group(path: &str, v: Value) -> Run<FiniteGroup> {
    match v {
        Value::String(name) => FiniteGroup::from_name(&name).map_err(|e| Failure::from_error(path, e)),
        other => {
            #[derive(Deserialize)]
            #[serde(deny_unknown_fields)]
            struct Raw {
                cayley: Vec<Vec<usize>>,
                names: Option<Vec<String>>,
            }
            let raw: Raw = parse_value(path, other)?;
            FiniteGroup::from_table(raw.cayley, raw.names).map_err(|e| Failure::from_error(path, e))
        }
    }
}

/// An abelian group given as `Z2xZ4`-style name or `{"invariant_factors": [...]}`.
fn abelian_group(path: &str, v: Value) -> Run<AbelianGroup> {
    match v {
        Value::String(name) => {
            let name = name.trim();
            if name == "1" {
                return Ok(AbelianGroup::trivial());
            }
            let factors = name
                .split('x')
                .map(|p| {
                    let p = p.trim();
                    p.strip_prefix("Z_").or_else(|| p.strip_prefix('Z')).and_then(|n| n.parse::<u64>().ok())
                })
                .collect::<Option<Vec<u64>>>()
                .filter(|f| f.iter().all(|&m| m >= 1))
                .ok_or_else(|| Failure::schema(path, format!("unknown abelian group name `{name}`")))?;
            AbelianGroup::from_cyclic_factors(&factors).map_err(|e| Failure::from_error(path, e))
        }
        other => {
            #[derive(Deserialize)]
            #[serde(deny_unknown_fields)]
            struct Raw {
                invariant_factors: Vec<u64>,
            }
            let raw: Raw = parse_value(path, other)?;
            AbelianGroup::from_cyclic_factors(&raw.invariant_factors).map_err(|e| Failure::from_error(path, e))
        }
    }
}

fn bicharacter(path: &str, h: &AbelianGroup, e: Vec<Vec<i64>>) -> Run<Bicharacter> {
    if e.len() != h.rank() || e.iter().any(|r| r.len() != h.rank()) {
        return Err(Failure::schema(path, format!("E must be {0}x{0}", h.rank())));
    }
    Bicharacter::new(h.clone(), e).map_err(|e| Failure::from_error(path, e))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct CocycleInput {
    #[serde(rename = "H")]
    h: Value,
    n: Option<u64>,
    table: Option<Vec<Vec<i64>>>,
    #[serde(rename = "E")]
    e: Option<Vec<Vec<i64>>>,
}

impl CocycleInput {
    fn cocycle(self, allow_phi: bool) -> Run<Cocycle2H> {
        let h = abelian_group("H", self.h)?;
        match (self.table, self.e) {
            (Some(table), None) => {
                let n = self.n.ok_or_else(|| Failure::schema("n", "missing field `n`"))?;
                if n == 0 {
                    return Err(Failure::schema("n", "root order must be positive"));
                }
                Cocycle2H::new(h, n, table).map_err(|e| Failure::from_error("table", e))
            }
            (None, Some(e)) if allow_phi => {
                if self.n.is_some() {
                    return Err(Failure::schema("n", "`n` is determined by `E`"));
                }
                let phi = bicharacter("E", &h, e)?;
                Ok(crate::cohomology::cocycle_from_bicharacter(&phi))
            }
            _ if allow_phi => Err(Failure::schema(".", "exactly one of `table` and `E` is required")),
            _ => Err(Failure::schema("table", "missing field `table`")),
        }
    }
}

/// Extension data: either `G` with a normal abelian `H` (`H_elements` or
/// `H_basis`), or `H`, `Q`, `action`, `beta` directly.
#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ExtensionInput {
    #[serde(rename = "G")]
    g: Option<Value>,
    #[serde(rename = "H_elements")]
    h_elements: Option<Vec<usize>>,
    #[serde(rename = "H_basis")]
    h_basis: Option<Vec<usize>>,
    #[serde(rename = "H")]
    h: Option<Value>,
    #[serde(rename = "Q")]
    q: Option<Value>,
    action: Option<Vec<Vec<Vec<i64>>>>,
    beta: Option<Vec<Vec<Vec<i64>>>>,
    #[serde(rename = "E")]
    e: Option<Vec<Vec<i64>>>,
    d: Option<u64>,
}

/// The extension plus, when built from `G`, the basis of `H` as elements of `G`.
struct ResolvedExtension {
    ext: Extension,
    h_basis_in_g: Option<Vec<usize>>,
}

impl ExtensionInput {
    fn resolve(&mut self) -> Run<ResolvedExtension> {
        if let Some(g) = self.g.take() {
            for (field, present) in [
                ("H", self.h.is_some()),
                ("Q", self.q.is_some()),
                ("action", self.action.is_some()),
                ("beta", self.beta.is_some()),
            ] {
                if present {
                    return Err(Failure::schema(field, "not allowed together with `G`"));
                }
            }
            let g = finite_group("G", g)?;
            let hs = match (self.h_elements.take(), self.h_basis.take()) {
                (Some(elems), None) => {
                    check_range("H_elements", &elems, g.order())?;
                    let sub = Subgroup::new(&g, elems).map_err(|e| Failure::from_error("H_elements", e))?;
                    AbelianSubgroup::new(&g, sub).map_err(|e| Failure::from_error("H_elements", e))?
                }
                (None, Some(basis)) => {
                    check_range("H_basis", &basis, g.order())?;
                    let sub = Subgroup::generated(&g, &basis);
                    let shape = AbelianSubgroup::new(&g, sub).map_err(|e| Failure::from_error("H_basis", e))?;
                    AbelianSubgroup::with_basis(&g, shape.group, &basis)
                        .map_err(|e| Failure::from_error("H_basis", e))?
                }
                _ => return Err(Failure::schema("H_elements", "exactly one of `H_elements` and `H_basis` is required")),
            };
            let basis = (0..hs.group.rank()).map(|i| hs.embed(&hs.group.basis_element(i))).collect();
            let (ext, _) = Extension::from_normal_subgroup(&g, &hs).map_err(|e| Failure::from_error("H_elements", e))?;
            return Ok(ResolvedExtension { ext, h_basis_in_g: Some(basis) });
        }
        if self.h_elements.is_some() || self.h_basis.is_some() {
            return Err(Failure::schema("G", "`H_elements`/`H_basis` need `G`"));
        }
        let h = abelian_group("H", self.h.take().ok_or_else(|| Failure::schema("H", "missing field `H` (or `G`)"))?)?;
        let q = match self.q.take() {
            Some(q) => finite_group("Q", q)?,
            None => FiniteGroup::cyclic(1),
        };
        let n = q.order();
        let action = match self.action.take() {
            None => Extension::trivial_action(&h, &q),
            Some(ms) => {
                if ms.len() != n {
                    return Err(Failure::schema("action", format!("expected {n} matrices, one per element of Q")));
                }
                ms.into_iter()
                    .enumerate()
                    .map(|(i, m)| {
                        IntMatrixHom::new(h.clone(), h.clone(), m).map_err(|e| Failure::from_error(&format!("action[{i}]"), e))
                    })
                    .collect::<Run<Vec<_>>>()?
            }
        };
        let beta = match self.beta.take() {
            None => vec![vec![h.zero(); n]; n],
            Some(rows) => {
                if rows.len() != n || rows.iter().any(|r| r.len() != n) {
                    return Err(Failure::schema("beta", format!("expected a {n}x{n} table")));
                }
                let mut out = Vec::with_capacity(n);
                for (a, row) in rows.into_iter().enumerate() {
                    let mut r = Vec::with_capacity(n);
                    for (b, coords) in row.into_iter().enumerate() {
                        let x = AbelianElement::new(coords);
                        h.check_element(&x).map_err(|e| Failure::from_error(&format!("beta[{a}][{b}]"), e))?;
                        r.push(x);
                    }
                    out.push(r);
                }
                out
            }
        };
        let ext = Extension::new(h, q, action, beta).map_err(|e| Failure::from_error("beta", e))?;
        Ok(ResolvedExtension { ext, h_basis_in_g: None })
    }
}

fn check_range(path: &str, elems: &[usize], order: usize) -> Run<()> {
    match elems.iter().position(|&x| x >= order) {
        Some(i) => Err(Failure::schema(&format!("{path}[{i}]"), format!("element index must be below {order}"))),
        None => Ok(()),
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct BszInput {
    #[serde(rename = "G")]
    g: Value,
    #[serde(rename = "H_elements")]
    h_elements: Vec<usize>,
    alpha: Option<SubgroupCocycleInput>,
    tuple: Vec<usize>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct SubgroupCocycleInput {
    n: u64,
    table: Vec<Vec<i64>>,
}

impl BszInput {
    fn presentation(self) -> Run<BszPresentation> {
        let g = finite_group("G", self.g)?;
        check_range("H_elements", &self.h_elements, g.order())?;
        check_range("tuple", &self.tuple, g.order())?;
        let h = Subgroup::new(&g, self.h_elements).map_err(|e| Failure::from_error("H_elements", e))?;
        let m = h.order();
        let alpha = match self.alpha {
            Some(a) => {
                if a.n == 0 {
                    return Err(Failure::schema("alpha.n", "root order must be positive"));
                }
                if a.table.len() != m || a.table.iter().any(|r| r.len() != m) {
                    return Err(Failure::schema("alpha.table", format!("expected a {m}x{m} table")));
                }
                SubgroupCocycle { n: a.n, table: a.table }
            }
            None => SubgroupCocycle { n: 1, table: vec![vec![0; m]; m] },
        };
        BszPresentation::new(g, h, alpha, self.tuple).map_err(|e| Failure::from_error("alpha", e))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SchurReport {
    pub multiplier: AbelianGroup,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CocycleReport {
    pub valid: bool,
    #[serde(rename = "H")]
    pub h: AbelianGroup,
    pub n: u64,
    pub commutator_form: Bicharacter,
    pub nondegenerate: bool,
    pub radical: Radical,
    /// Whether the cocycle is a coboundary, i.e. the twisted algebra is the group algebra.
    pub coboundary: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PhiEntry {
    #[serde(rename = "E")]
    pub e: Vec<Vec<i64>>,
    pub trivial: bool,
    pub nondegenerate: bool,
    #[serde(rename = "S_type")]
    pub s_type: AbelianGroup,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PhiReport {
    #[serde(rename = "H")]
    pub h: AbelianGroup,
    /// Basis of `H` as elements of `G`, when the input named `G`.
    #[serde(rename = "H_basis", skip_serializing_if = "Option::is_none", default)]
    pub h_basis: Option<Vec<usize>>,
    pub count: usize,
    pub bicharacters: Vec<PhiEntry>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TwistedReport {
    #[serde(rename = "H")]
    pub h: AbelianGroup,
    pub dim: usize,
    pub commutator_form: Bicharacter,
    pub center_dim: usize,
    /// Basis indices `u_h` occurring in the computed center.
    pub center_support: Vec<usize>,
    pub central_simple: bool,
    pub semisimple: bool,
    pub algebra: AlgebraDump,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BszReport {
    pub dim: usize,
    pub s: usize,
    #[serde(rename = "H")]
    pub h: Vec<usize>,
    pub tuple: Vec<usize>,
    pub homogeneous_dims: HomogeneousDims,
    pub graded_simple: bool,
    pub semisimple: bool,
    pub algebra: AlgebraDump,
}

fn check_cocycle(job: &Job) -> Run<Outcome> {
    reject_flags(job, false, false)?;
    let alpha = parse_json::<CocycleInput>(&read_input(job)?)?.cocycle(false)?;
    let phi = commutator_form(&alpha).map_err(|e| Failure::from_error("table", e))?;
    let report = CocycleReport {
        valid: true,
        h: alpha.group().clone(),
        n: alpha.root_order(),
        nondegenerate: is_nondegenerate(&phi),
        radical: radical(&phi),
        coboundary: is_coboundary(&alpha).is_some(),
        commutator_form: phi,
    };
    Ok(outcome(&report, fields_markdown("Cocycle", &report)))
}

fn schur(job: &Job) -> Run<Outcome> {
    reject_flags(job, true, false)?;
    let given = match (&job.group, &job.input) {
        (Some(g), None) => group_flag(g)?,
        (None, Some(_)) => parse_json(&read_input(job)?)?,
        _ => return Err(Failure::schema("--group", "give exactly one of --group and --in")),
    };
    let h = abelian_group("group", given)?;
    let report = SchurReport { multiplier: schur_multiplier(&h) };
    let md = format!("| H | M(H) |\n|---|---|\n| {} | {} |\n", h.label(), report.multiplier.label());
    Ok(outcome(&report, md))
}

fn enumerate_phi(job: &Job) -> Run<Outcome> {
    reject_flags(job, true, false)?;
    let resolved = match (&job.group, &job.input) {
        (Some(g), None) => {
            let h = abelian_group("group", group_flag(g)?)?;
            let q = FiniteGroup::cyclic(1);
            let action = Extension::trivial_action(&h, &q);
            let ext = Extension::split(h, q, action).map_err(|e| Failure::from_error("group", e))?;
            ResolvedExtension { ext, h_basis_in_g: None }
        }
        (None, Some(_)) => {
            let mut input: ExtensionInput = parse_json(&read_input(job)?)?;
            if input.e.is_some() || input.d.is_some() {
                return Err(Failure::schema("E", "`E` and `d` are not used by enumerate-phi"));
            }
            input.resolve()?
        }
        _ => return Err(Failure::schema("--group", "give exactly one of --group and --in")),
    };
    let ext = &resolved.ext;
    let phis = invariant_bicharacters(ext.h(), &ext.conjugation_action_on_h());
    let bicharacters: Vec<PhiEntry> = phis
        .iter()
        .map(|phi| PhiEntry {
            e: phi.exponents().to_vec(),
            trivial: phi.is_trivial(),
            nondegenerate: is_nondegenerate(phi),
            s_type: radical(phi).group,
        })
        .collect();
    let report = PhiReport { h: ext.h().clone(), h_basis: resolved.h_basis_in_g, count: bicharacters.len(), bicharacters };
    let mut md = format!("H = {}, {} bicharacters\n\n| # | E | trivial | nondegenerate | S |\n|---|---|---|---|---|\n", report.h.label(), report.count);
    for (i, p) in report.bicharacters.iter().enumerate() {
        md.push_str(&format!("| {} | {:?} | {} | {} | {} |\n", i + 1, p.e, p.trivial, p.nondegenerate, p.s_type.label()));
    }
    Ok(outcome(&report, md))
}

fn twisted(job: &Job) -> Run<Outcome> {
    reject_flags(job, false, false)?;
    let alpha = parse_json::<CocycleInput>(&read_input(job)?)?.cocycle(true)?;
    let a = twisted_group_algebra(&alpha).map_err(|e| Failure::from_error("table", e))?;
    let phi = commutator_form(&alpha).map_err(|e| Failure::from_error("table", e))?;
    let center = center_basis(&a);
    let mut support: Vec<usize> = center
        .iter()
        .flat_map(|v| v.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(i, _)| i))
        .collect();
    support.sort_unstable();
    support.dedup();
    let report = TwistedReport {
        h: alpha.group().clone(),
        dim: a.dim(),
        commutator_form: phi,
        center_dim: center.len(),
        center_support: support,
        central_simple: is_central_simple(&a),
        semisimple: radical_is_zero(&a),
        algebra: a.dump(),
    };
    let md = summary_markdown("Twisted group algebra", &report, &["algebra"]);
    Ok(outcome(&report, md))
}

fn summary_markdown<T: Serialize>(title: &str, report: &T, skip: &[&str]) -> String {
    let mut v = serde_json::to_value(report).expect("reports serialize");
    if let Value::Object(map) = &mut v {
        for k in skip {
            map.remove(*k);
        }
    }
    fields_markdown(title, &v)
}

fn bsz(job: &Job) -> Run<Outcome> {
    reject_flags(job, false, false)?;
    let p = parse_json::<BszInput>(&read_input(job)?)?.presentation()?;
    let a = bsz_algebra(&p).map_err(|e| Failure::from_error("alpha", e))?;
    let report = BszReport {
        dim: a.dim(),
        s: p.s(),
        h: p.h().elements.clone(),
        tuple: p.tuple().to_vec(),
        homogeneous_dims: homogeneous_dims(&a),
        graded_simple: is_graded_simple(&a),
        semisimple: radical_is_zero(&a),
        algebra: a.dump(),
    };
    let md = summary_markdown("BSZ algebra", &report, &["algebra"]);
    Ok(outcome(&report, md))
}

fn form_exists_cmd(job: &Job) -> Run<Outcome> {
    reject_flags(job, false, false)?;
    let p = parse_json::<BszInput>(&read_input(job)?)?.presentation()?;
    let report: FormExistence = form_exists(&p).map_err(|e| Failure::from_error("alpha", e))?;
    Ok(outcome(&report, fields_markdown("Graded division form", &report)))
}

fn case_report_cmd(job: &Job) -> Run<Outcome> {
    if job.input.is_some() {
        return Err(Failure::schema("--in", "case-report takes --group"));
    }
    let given = group_flag(job.group.as_deref().ok_or_else(|| Failure::schema("--group", "missing --group"))?)?;
    let g = finite_group("group", given)?;
    let d = job.d.unwrap_or(1);
    if d == 0 {
        return Err(Failure::schema("--d", "d must be positive"));
    }
    let report: CaseReport = case_report(&g, d).map_err(|e| Failure::from_error("group", e))?;
    let md = case_report_markdown(&g, &report);
    Ok(outcome(&report, md))
}

fn realize(job: &Job) -> Run<Outcome> {
    reject_flags(job, false, true)?;
    let mut input: ExtensionInput = parse_json(&read_input(job)?)?;
    let e = input.e.take().ok_or_else(|| Failure::schema("E", "missing field `E`"))?;
    let d = job.d.or(input.d).unwrap_or(1);
    if d == 0 {
        return Err(Failure::schema("d", "d must be positive"));
    }
    let resolved = input.resolve()?;
    let phi = bicharacter("E", resolved.ext.h(), e)?;
    let triple = validate_triple(resolved.ext, phi, d).map_err(|e| Failure::from_error("E", e))?;
    let p = build_presentation(&triple).map_err(|e| Failure::from_error("E", e))?;
    Ok(outcome(&p, relations_text(&p)))
}

fn verify(job: &Job) -> Run<Outcome> {
    reject_flags(job, false, false)?;
    let p: CrossedPresentation = parse_json(&read_input(job)?)?;
    let report: VerificationReport = verify_presentation(&p).map_err(|e| Failure::from_error(".", e))?;
    let mut md = String::from("| check | passed | witness | detail |\n|---|---|---|---|\n");
    for (name, c) in [
        ("cocycle", &report.cocycle),
        ("commutators", &report.commutators),
        ("action kernel", &report.action_kernel),
        ("inverses", &report.inverses),
    ] {
        let w = c.witness.as_ref().map(|w| format!("{w:?}")).unwrap_or_default();
        md.push_str(&format!("| {name} | {} | {w} | {} |\n", c.passed, c.detail.clone().unwrap_or_default()));
    }
    md.push_str(&format!("\nkernel = {:?}, e-rank = {}, passed = {}\n", report.kernel, report.e_rank, report.passed));
    let mut out = outcome(&report, md);
    out.rejected = !report.passed;
    Ok(out)
}

/// Runs one command and returns its outcome without writing anything.
pub fn execute(command: &Command) -> Run<Outcome> {
    match command {
        Command::CheckCocycle(j) => check_cocycle(j),
        Command::Schur(j) => schur(j),
        Command::EnumeratePhi(j) => enumerate_phi(j),
        Command::TwistedAlgebra(j) => twisted(j),
        Command::Bsz(j) => bsz(j),
        Command::FormExists(j) => form_exists_cmd(j),
        Command::CaseReport(j) => case_report_cmd(j),
        Command::Realize(j) => realize(j),
        Command::Verify(j) => verify(j),
    }
}

fn job(command: &Command) -> &Job {
    match command {
        Command::CheckCocycle(j)
        | Command::Schur(j)
        | Command::EnumeratePhi(j)
        | Command::TwistedAlgebra(j)
        | Command::Bsz(j)
        | Command::FormExists(j)
        | Command::CaseReport(j)
        | Command::Realize(j)
        | Command::Verify(j) => j,
    }
}

fn threads() -> Run<Option<usize>> {
    match std::env::var("GRADALG_THREADS") {
        Err(_) => Ok(None),
        Ok(s) => s
            .trim()
            .parse::<usize>()
            .map(Some)
            .map_err(|_| Failure::schema("GRADALG_THREADS", format!("expected a thread count, got `{s}`"))),
    }
}

fn emit(job: &Job, out: &Outcome) -> Run<()> {
    let mut text = match job.format {
        Format::Json => out.json.clone(),
        Format::Markdown => out.markdown.clone(),
    };
    if !text.ends_with('\n') {
        text.push('\n');
    }
    match &job.output {
        Some(p) => fs::write(p, text).map_err(|e| Failure::schema("--output", format!("{}: {e}", p.display()))),
        None => io::stdout().write_all(text.as_bytes()).map_err(|e| Failure::schema("--output", e.to_string())),
    }
}

/// Full invocation: parse arguments, run, write the report; returns the exit status.
pub fn run(cli: Cli) -> u8 {
    let result = threads().and_then(|t| crate::par::with_threads(t, || execute(&cli.command)));
    let status = result.and_then(|out| {
        emit(job(&cli.command), &out)?;
        Ok(if out.rejected { 1 } else { 0 })
    });
    match status {
        Ok(code) => code,
        Err(f) => {
            eprintln!("{}", f.to_json());
            f.exit_code()
        }
    }
}
