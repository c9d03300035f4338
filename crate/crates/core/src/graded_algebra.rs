//! Finite-dimensional `G`-graded algebras over `Q(ζ_n)` given by structure
//! constants on a homogeneous basis: twisted group algebras, BSZ algebras
//! `F^α H ⊗ M_s(F)`, and the linear-algebra tests run on them.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::cohomology::{sum_table, Cocycle2H};
use crate::cyclotomic::{echelon_basis, nullspace, zeta_power, CyclotomicNumber};
use crate::error::{Error, Result};
use crate::groups::{FiniteGroup, Subgroup};
use crate::par;

/// `b_i b_j = ζ_n^{root} b_{target}`, or zero.
pub type MonomialEntry = Option<(usize, i64)>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Structure {
    /// Every product of basis elements is a root of unity times a basis element, or zero.
    Monomial(Vec<Vec<MonomialEntry>>),
    /// General sparse structure constants.
    Sparse(Vec<Vec<Vec<(usize, CyclotomicNumber)>>>),
}

/// Structure-constant algebra with a homogeneous basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedAlgebra {
    conductor: u64,
    group: FiniteGroup,
    grading: Vec<usize>,
    structure: Structure,
    identity: Vec<CyclotomicNumber>,
    zetas: Vec<CyclotomicNumber>,
}

pub type Element = Vec<CyclotomicNumber>;

impl GradedAlgebra {
    /// Checks grading compatibility, the unit and associativity on all basis triples.
    pub fn new(
        conductor: u64,
        group: FiniteGroup,
        grading: Vec<usize>,
        structure: Structure,
        identity: Element,
    ) -> Result<Self> {
        let dim = grading.len();
        if identity.len() != dim {
            return Err(Error::DimensionMismatch("identity length differs from dimension".into()));
        }
        if grading.iter().any(|&g| g >= group.order()) {
            return Err(Error::AlgebraAxiom("degree outside the grading group".into()));
        }
        let shape_ok = match &structure {
            Structure::Monomial(t) => t.len() == dim && t.iter().all(|r| r.len() == dim),
            Structure::Sparse(t) => t.len() == dim && t.iter().all(|r| r.len() == dim),
        };
        if !shape_ok {
            return Err(Error::DimensionMismatch("structure table must be dim x dim".into()));
        }
        let zetas = (0..conductor as i64).map(|j| zeta_power(conductor, j)).collect();
        let identity = identity
            .iter()
            .map(|c| c.promote(conductor))
            .collect::<Result<Vec<_>>>()?;
        let a = GradedAlgebra { conductor, group, grading, structure, identity, zetas };
        a.check_grading()?;
        a.check_identity()?;
        a.check_associativity()?;
        Ok(a)
    }

    pub fn dim(&self) -> usize {
        self.grading.len()
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn grading(&self) -> &[usize] {
        &self.grading
    }

    pub fn structure(&self) -> &Structure {
        &self.structure
    }

    pub fn identity(&self) -> &Element {
        &self.identity
    }

    pub fn is_monomial(&self) -> bool {
        matches!(self.structure, Structure::Monomial(_))
    }

    pub fn zero_element(&self) -> Element {
        vec![CyclotomicNumber::zero(self.conductor); self.dim()]
    }

    pub fn basis_element(&self, i: usize) -> Element {
        let mut v = self.zero_element();
        v[i] = CyclotomicNumber::one(self.conductor);
        v
    }

    fn zeta(&self, e: i64) -> &CyclotomicNumber {
        &self.zetas[e.rem_euclid(self.conductor as i64) as usize]
    }

    /// `b_i b_j` as sparse terms.
    pub fn basis_product(&self, i: usize, j: usize) -> Vec<(usize, CyclotomicNumber)> {
        match &self.structure {
            Structure::Monomial(t) => t[i][j]
                .map(|(l, r)| vec![(l, self.zeta(r).clone())])
                .unwrap_or_default(),
            Structure::Sparse(t) => t[i][j].clone(),
        }
    }

    pub fn mul(&self, x: &[CyclotomicNumber], y: &[CyclotomicNumber]) -> Element {
        let mut out = self.zero_element();
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                let c = xi * yj;
                for (l, s) in self.basis_product(i, j) {
                    out[l] = &out[l] + &(&c * &s);
                }
            }
        }
        out
    }

    fn check_grading(&self) -> Result<()> {
        let d = self.dim();
        for i in 0..d {
            for j in 0..d {
                let want = self.group.mul(self.grading[i], self.grading[j]);
                for (l, c) in self.basis_product(i, j) {
                    if !c.is_zero() && self.grading[l] != want {
                        return Err(Error::AlgebraAxiom(format!(
                            "b_{i} b_{j} has a component outside degree {want}"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    fn check_identity(&self) -> Result<()> {
        for i in 0..self.dim() {
            let b = self.basis_element(i);
            if self.mul(&self.identity, &b) != b || self.mul(&b, &self.identity) != b {
                return Err(Error::AlgebraAxiom(format!("identity fails on b_{i}")));
            }
        }
        Ok(())
    }

    fn check_associativity(&self) -> Result<()> {
        let d = self.dim();
        let bad = match &self.structure {
            Structure::Monomial(t) => {
                let n = self.conductor as i64;
                par::find_first(d * d * d, |x| {
                    let (i, j, k) = (x / (d * d), (x / d) % d, x % d);
                    let left = t[i][j].and_then(|(l, r1)| t[l][k].map(|(m, r2)| (m, (r1 + r2).rem_euclid(n))));
                    let right = t[j][k].and_then(|(l, r1)| t[i][l].map(|(m, r2)| (m, (r1 + r2).rem_euclid(n))));
                    (left != right).then_some((i, j, k))
                })
            }
            Structure::Sparse(_) => par::find_first(d * d * d, |x| {
                let (i, j, k) = (x / (d * d), (x / d) % d, x % d);
                let bi = self.basis_element(i);
                let bj = self.basis_element(j);
                let bk = self.basis_element(k);
                let left = self.mul(&self.mul(&bi, &bj), &bk);
                let right = self.mul(&bi, &self.mul(&bj, &bk));
                (left != right).then_some((i, j, k))
            }),
        };
        match bad {
            Some((_, (i, j, k))) => Err(Error::AlgebraAxiom(format!("not associative at ({i},{j},{k})"))),
            None => Ok(()),
        }
    }

    /// Two algebras side by side (block-diagonal structure constants).
    pub fn direct_sum(&self, other: &GradedAlgebra) -> Result<GradedAlgebra> {
        if self.group != other.group || self.conductor != other.conductor {
            return Err(Error::DimensionMismatch("direct sum needs a common group and field".into()));
        }
        let (d1, d2) = (self.dim(), other.dim());
        let mut grading = self.grading.clone();
        grading.extend_from_slice(&other.grading);
        let structure = match (&self.structure, &other.structure) {
            (Structure::Monomial(a), Structure::Monomial(b)) => {
                let mut t = vec![vec![None; d1 + d2]; d1 + d2];
                for i in 0..d1 {
                    for j in 0..d1 {
                        t[i][j] = a[i][j];
                    }
                }
                for i in 0..d2 {
                    for j in 0..d2 {
                        t[d1 + i][d1 + j] = b[i][j].map(|(l, r)| (d1 + l, r));
                    }
                }
                Structure::Monomial(t)
            }
            _ => {
                let mut t = vec![vec![Vec::new(); d1 + d2]; d1 + d2];
                for i in 0..d1 {
                    for j in 0..d1 {
                        t[i][j] = self.basis_product(i, j);
                    }
                }
                for i in 0..d2 {
                    for j in 0..d2 {
                        t[d1 + i][d1 + j] =
                            other.basis_product(i, j).into_iter().map(|(l, c)| (d1 + l, c)).collect();
                    }
                }
                Structure::Sparse(t)
            }
        };
        let mut identity = self.identity.clone();
        identity.extend(other.identity.iter().cloned());
        GradedAlgebra::new(self.conductor, self.group.clone(), grading, structure, identity)
    }

    /// JSON-friendly dump of the algebra.
    pub fn dump(&self) -> AlgebraDump {
        let d = self.dim();
        let mut products = Vec::new();
        for i in 0..d {
            for j in 0..d {
                let terms = self.basis_product(i, j);
                if !terms.is_empty() {
                    products.push(ProductEntry { left: i, right: j, terms });
                }
            }
        }
        AlgebraDump {
            conductor: self.conductor,
            dim: d,
            grading: self.grading.iter().map(|&g| self.group.name(g)).collect(),
            identity: self.identity.clone(),
            products,
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ProductEntry {
    pub left: usize,
    pub right: usize,
    pub terms: Vec<(usize, CyclotomicNumber)>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct AlgebraDump {
    pub conductor: u64,
    pub dim: usize,
    pub grading: Vec<String>,
    pub identity: Vec<CyclotomicNumber>,
    pub products: Vec<ProductEntry>,
}

/// `L^α H` with basis `u_h` (indexed as in `AbelianGroup`), graded by `H`.
pub fn twisted_group_algebra(alpha: &Cocycle2H) -> Result<GradedAlgebra> {
    let h = alpha.group();
    let s = h.order() as usize;
    let sum = sum_table(h);
    let t = (0..s)
        .map(|a| (0..s).map(|b| Some((sum[a][b], alpha.value(a, b)))).collect())
        .collect();
    let n = alpha.root_order();
    let mut identity = vec![CyclotomicNumber::zero(n); s];
    identity[0] = CyclotomicNumber::one(n);
    GradedAlgebra::new(n, FiniteGroup::from_abelian(h), (0..s).collect(), Structure::Monomial(t), identity)
}

/// Closed-form inverse of `u_h` in `L^α H`: `α(h, -h)^{-1} u_{-h}`, as
/// `(basis index, root exponent)`.
pub fn twisted_unit_inverse(alpha: &Cocycle2H, h: usize) -> (usize, i64) {
    let g = alpha.group();
    let minus = g.index_of(&g.neg(&g.element(h)));
    let n = alpha.root_order() as i64;
    (minus, (-alpha.value(h, minus)).rem_euclid(n))
}

/// Basis of the center, from the nullspace of `z ↦ (z b_i - b_i z)_i`.
pub fn center_basis(a: &GradedAlgebra) -> Vec<Element> {
    let d = a.dim();
    let n = a.conductor;
    // Row (i, l): Σ_k c_k ([b_k b_i]_l - [b_i b_k]_l) = 0
    let rows: Vec<Vec<Element>> = par::map_range(d, |i| {
        let mut block: BTreeMap<usize, Element> = BTreeMap::new();
        for k in 0..d {
            for (l, c) in a.basis_product(k, i) {
                let row = block.entry(l).or_insert_with(|| vec![CyclotomicNumber::zero(n); d]);
                row[k] = &row[k] + &c;
            }
            for (l, c) in a.basis_product(i, k) {
                let row = block.entry(l).or_insert_with(|| vec![CyclotomicNumber::zero(n); d]);
                row[k] = &row[k] - &c;
            }
        }
        block.into_values().filter(|r| r.iter().any(|c| !c.is_zero())).collect()
    });
    let rows: Vec<Element> = rows.into_iter().flatten().collect();
    nullspace(&rows, d, n)
}

/// Trace of left multiplication by each basis element.
fn basis_traces(a: &GradedAlgebra) -> Vec<CyclotomicNumber> {
    let d = a.dim();
    (0..d)
        .map(|l| {
            (0..d).fold(CyclotomicNumber::zero(a.conductor), |acc, k| {
                a.basis_product(l, k)
                    .into_iter()
                    .filter(|(m, _)| *m == k)
                    .fold(acc, |acc, (_, c)| &acc + &c)
            })
        })
        .collect()
}

/// Gram matrix of the trace form `T(x, y) = tr(L_{xy})` on the basis.
pub fn trace_form(a: &GradedAlgebra) -> Vec<Element> {
    let d = a.dim();
    let t = basis_traces(a);
    par::map_range(d, |i| {
        (0..d)
            .map(|j| {
                a.basis_product(i, j)
                    .into_iter()
                    .fold(CyclotomicNumber::zero(a.conductor), |acc, (l, c)| &acc + &(&c * &t[l]))
            })
            .collect()
    })
}

/// Semisimplicity in characteristic zero: the trace form is nondegenerate.
pub fn radical_is_zero(a: &GradedAlgebra) -> bool {
    let d = a.dim();
    echelon_basis(trace_form(a), d).len() == d
}

/// Semisimple with one-dimensional center.
pub fn is_central_simple(a: &GradedAlgebra) -> bool {
    radical_is_zero(a) && center_basis(a).len() == 1
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomogeneousDims {
    /// Dimension of `A_g` for every `g`, in group index order.
    pub dims: Vec<usize>,
    pub faithful: bool,
}

pub fn homogeneous_dims(a: &GradedAlgebra) -> HomogeneousDims {
    let mut dims = vec![0; a.group.order()];
    for &g in &a.grading {
        dims[g] += 1;
    }
    let faithful = dims.iter().all(|&x| x > 0);
    HomogeneousDims { dims, faithful }
}

/// Every ideal generated by a homogeneous basis element is the whole algebra.
pub fn is_graded_simple(a: &GradedAlgebra) -> bool {
    let d = a.dim();
    if d == 0 {
        return false;
    }
    match &a.structure {
        Structure::Monomial(t) => (0..d).all(|seed| {
            // Products of basis elements are scaled basis elements, so the
            // ideal is spanned by the reachable indices.
            let mut seen = BTreeSet::from([seed]);
            let mut stack = vec![seed];
            while let Some(x) = stack.pop() {
                for k in 0..d {
                    for (l, _) in [t[x][k], t[k][x]].into_iter().flatten() {
                        if seen.insert(l) {
                            stack.push(l);
                        }
                    }
                }
            }
            seen.len() == d
        }),
        Structure::Sparse(_) => (0..d).all(|seed| ideal_dimension(a, &a.basis_element(seed)) == d),
    }
}

/// Dimension of the two-sided ideal generated by `x`.
pub fn ideal_dimension(a: &GradedAlgebra, x: &[CyclotomicNumber]) -> usize {
    let d = a.dim();
    let mut basis: Vec<(usize, Element)> = Vec::new();
    let mut queue = vec![x.to_vec()];
    let reduce = |basis: &[(usize, Element)], mut r: Element| -> Option<(usize, Element)> {
        for (pc, b) in basis {
            if r[*pc].is_zero() {
                continue;
            }
            let f = r[*pc].clone();
            for c in 0..d {
                if !b[c].is_zero() {
                    r[c] = &r[c] - &(&f * &b[c]);
                }
            }
        }
        let pc = (0..d).find(|&c| !r[c].is_zero())?;
        let inv = r[pc].inverse().expect("nonzero");
        let r: Element = r.iter().map(|c| c * &inv).collect();
        Some((pc, r))
    };
    while let Some(v) = queue.pop() {
        let Some((pc, r)) = reduce(&basis, v) else { continue };
        // keep the basis fully reduced on pivot columns
        for (_, b) in basis.iter_mut() {
            if !b[pc].is_zero() {
                let f = b[pc].clone();
                for c in 0..d {
                    b[c] = &b[c] - &(&f * &r[c]);
                }
            }
        }
        for k in 0..d {
            let bk = a.basis_element(k);
            queue.push(a.mul(&r, &bk));
            queue.push(a.mul(&bk, &r));
        }
        basis.push((pc, r));
        if basis.len() == d {
            break;
        }
    }
    basis.len()
}

/// Normalized 2-cocycle on a subgroup `H` of a Cayley-table group, with
/// values `ζ_n^{table[a][b]}`; rows and columns follow `H`'s sorted elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubgroupCocycle {
    pub n: u64,
    pub table: Vec<Vec<i64>>,
}

/// Bahturin–Sehgal–Zaicev data `(H, α, (g_1, ..., g_s))` presenting
/// `F^α H ⊗ M_s(F)` with `deg(u_h ⊗ e_{ij}) = g_i^{-1} h g_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BszPresentation {
    group: FiniteGroup,
    h: Subgroup,
    alpha: SubgroupCocycle,
    tuple: Vec<usize>,
}

impl BszPresentation {
    pub fn new(group: FiniteGroup, h: Subgroup, alpha: SubgroupCocycle, tuple: Vec<usize>) -> Result<Self> {
        let h = Subgroup::new(&group, h.elements)?;
        if tuple.first() != Some(&0) {
            return Err(Error::InvalidPresentation("the tuple must start with the identity".into()));
        }
        if tuple.iter().any(|&g| g >= group.order()) {
            return Err(Error::InvalidPresentation("tuple element out of range".into()));
        }
        let m = h.order();
        if alpha.n == 0 || alpha.table.len() != m || alpha.table.iter().any(|r| r.len() != m) {
            return Err(Error::InvalidPresentation(format!("alpha must be a {m}x{m} table with n > 0")));
        }
        let nn = alpha.n as i64;
        let alpha = SubgroupCocycle {
            n: alpha.n,
            table: alpha.table.iter().map(|r| r.iter().map(|x| x.rem_euclid(nn)).collect()).collect(),
        };
        let pos = |x: usize| h.elements.binary_search(&x).expect("closed subgroup");
        let t = &alpha.table;
        for a in 0..m {
            if t[0][a] != 0 || t[a][0] != 0 {
                return Err(Error::NotNormalized(a, 0));
            }
        }
        for a in 0..m {
            for b in 0..m {
                let ab = pos(group.mul(h.elements[a], h.elements[b]));
                for c in 0..m {
                    let bc = pos(group.mul(h.elements[b], h.elements[c]));
                    if (t[a][b] + t[ab][c] - t[b][c] - t[a][bc]).rem_euclid(nn) != 0 {
                        return Err(Error::CocycleViolation(a, b, c));
                    }
                }
            }
        }
        Ok(BszPresentation { group, h, alpha, tuple })
    }

    /// Builds the presentation from an abelian cocycle transported along an
    /// embedding `abstract index -> parent index`.
    pub fn from_abelian(
        group: FiniteGroup,
        embedding: &[usize],
        alpha: &Cocycle2H,
        tuple: Vec<usize>,
    ) -> Result<Self> {
        let mut elems = embedding.to_vec();
        elems.sort_unstable();
        let h = Subgroup::new(&group, elems.clone())?;
        let m = elems.len();
        let mut table = vec![vec![0i64; m]; m];
        for (a, &x) in embedding.iter().enumerate() {
            for (b, &y) in embedding.iter().enumerate() {
                let pa = elems.binary_search(&x).unwrap();
                let pb = elems.binary_search(&y).unwrap();
                table[pa][pb] = alpha.value(a, b);
            }
        }
        BszPresentation::new(group, h, SubgroupCocycle { n: alpha.root_order(), table }, tuple)
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn h(&self) -> &Subgroup {
        &self.h
    }

    pub fn alpha(&self) -> &SubgroupCocycle {
        &self.alpha
    }

    pub fn tuple(&self) -> &[usize] {
        &self.tuple
    }

    pub fn s(&self) -> usize {
        self.tuple.len()
    }
}

/// `F^α H ⊗ M_s(F)`; basis `u_h ⊗ e_{ij}` at index `(h * s + i) * s + j`.
pub fn bsz_algebra(p: &BszPresentation) -> Result<GradedAlgebra> {
    let g = &p.group;
    let hs = &p.h.elements;
    let m = hs.len();
    let s = p.s();
    let idx = |h: usize, i: usize, j: usize| (h * s + i) * s + j;
    let pos = |x: usize| hs.binary_search(&x).expect("closed subgroup");
    let dim = m * s * s;
    let mut grading = vec![0; dim];
    for h in 0..m {
        for i in 0..s {
            for j in 0..s {
                grading[idx(h, i, j)] = g.mul(g.mul(g.inv(p.tuple[i]), hs[h]), p.tuple[j]);
            }
        }
    }
    let mut t = vec![vec![None; dim]; dim];
    for h in 0..m {
        for h2 in 0..m {
            let hh = pos(g.mul(hs[h], hs[h2]));
            let r = p.alpha.table[h][h2];
            for i in 0..s {
                for j in 0..s {
                    for l in 0..s {
                        t[idx(h, i, j)][idx(h2, j, l)] = Some((idx(hh, i, l), r));
                    }
                }
            }
        }
    }
    let n = p.alpha.n;
    let mut identity = vec![CyclotomicNumber::zero(n); dim];
    for i in 0..s {
        identity[idx(0, i, i)] = CyclotomicNumber::one(n);
    }
    GradedAlgebra::new(n, g.clone(), grading, Structure::Monomial(t), identity)
}

/// `M_s(F)` concentrated in degree `e` of `group`.
pub fn matrix_algebra(group: &FiniteGroup, s: usize, n: u64) -> Result<GradedAlgebra> {
    let p = BszPresentation::new(
        group.clone(),
        Subgroup::trivial(),
        SubgroupCocycle { n, table: vec![vec![0]] },
        vec![0; s],
    )?;
    bsz_algebra(&p)
}

/// `F[b]/(b^2)`, trivially graded.
pub fn dual_numbers(group: &FiniteGroup, n: u64) -> Result<GradedAlgebra> {
    let t = vec![vec![Some((0, 0)), Some((1, 0))], vec![Some((1, 0)), None]];
    let identity = vec![CyclotomicNumber::one(n), CyclotomicNumber::zero(n)];
    GradedAlgebra::new(n, group.clone(), vec![0, 0], Structure::Monomial(t), identity)
}
