//! Finite groups as Cayley tables, subgroup machinery, and extensions
//! `1 -> H -> G -> Q -> 1` with abelian kernel assembled from `(H, Q, action, beta)`.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::abelian::{AbelianElement, AbelianGroup, IntMatrixHom};
use crate::error::{Error, Result};
use crate::par;

#[derive(Deserialize)]
struct RawGroup {
    cayley: Vec<Vec<usize>>,
    #[serde(default)]
    names: Option<Vec<String>>,
}

impl TryFrom<RawGroup> for FiniteGroup {
    type Error = Error;
    fn try_from(raw: RawGroup) -> Result<Self> {
        FiniteGroup::from_table(raw.cayley, raw.names)
    }
}

/// A finite group given by its multiplication table; element 0 is the identity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawGroup")]
pub struct FiniteGroup {
    cayley: Vec<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    names: Option<Vec<String>>,
    #[serde(skip)]
    inverses: Vec<usize>,
}

impl FiniteGroup {
    /// Validates identity, Latin-square and associativity conditions.
    pub fn from_table(cayley: Vec<Vec<usize>>, names: Option<Vec<String>>) -> Result<Self> {
        let n = cayley.len();
        if n == 0 {
            return Err(Error::InvalidCayleyTable("empty table".into()));
        }
        if cayley.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidCayleyTable("table is not square".into()));
        }
        if let Some(names) = &names {
            if names.len() != n {
                return Err(Error::InvalidCayleyTable("names length differs from order".into()));
            }
        }
        for i in 0..n {
            if cayley[0][i] != i || cayley[i][0] != i {
                return Err(Error::InvalidCayleyTable(format!("element 0 is not the identity at {i}")));
            }
            let mut row = vec![false; n];
            let mut col = vec![false; n];
            for j in 0..n {
                let (r, c) = (cayley[i][j], cayley[j][i]);
                if r >= n || c >= n || row[r] || col[c] {
                    return Err(Error::InvalidCayleyTable(format!("row/column {i} is not a permutation")));
                }
                row[r] = true;
                col[c] = true;
            }
        }
        let bad = par::find_first(n, |a| {
            for b in 0..n {
                let ab = cayley[a][b];
                for c in 0..n {
                    if cayley[ab][c] != cayley[a][cayley[b][c]] {
                        return Some((b, c));
                    }
                }
            }
            None
        });
        if let Some((a, (b, c))) = bad {
            return Err(Error::InvalidCayleyTable(format!("not associative at ({a},{b},{c})")));
        }
        let inverses = (0..n)
            .map(|a| (0..n).find(|&b| cayley[a][b] == 0).expect("Latin square has inverses"))
            .collect();
        Ok(FiniteGroup { cayley, names, inverses })
    }

    pub fn cyclic(n: usize) -> Self {
        assert!(n >= 1);
        let t = (0..n).map(|i| (0..n).map(|j| (i + j) % n).collect()).collect();
        let names = (0..n).map(|i| if i == 0 { "e".to_string() } else { format!("g{i}") }).collect();
        FiniteGroup::from_table(t, Some(names)).expect("cyclic table is valid")
    }

    /// Cayley table of an abelian group; indices agree with `AbelianGroup::index_of`.
    pub fn from_abelian(h: &AbelianGroup) -> Self {
        let n = h.order() as usize;
        let elems: Vec<AbelianElement> = h.elements().collect();
        let t = (0..n)
            .map(|i| (0..n).map(|j| h.index_of(&h.add(&elems[i], &elems[j]))).collect())
            .collect();
        let names = elems.iter().map(|e| format!("{:?}", e.coords)).collect();
        FiniteGroup::from_table(t, Some(names)).expect("abelian table is valid")
    }

    /// `A x B` with index `a * |B| + b`.
    pub fn direct_product(a: &FiniteGroup, b: &FiniteGroup) -> Self {
        let (na, nb) = (a.order(), b.order());
        let t = (0..na * nb)
            .map(|x| {
                (0..na * nb)
                    .map(|y| a.mul(x / nb, y / nb) * nb + b.mul(x % nb, y % nb))
                    .collect()
            })
            .collect();
        let names = (0..na * nb).map(|x| format!("({},{})", a.name(x / nb), b.name(x % nb))).collect();
        FiniteGroup::from_table(t, Some(names)).expect("product table is valid")
    }

    /// Dihedral group of order 8, `<s, t | s^4 = t^2 = e, t s = s^-1 t>`,
    /// element `s^i t^j` at index `i + 4 j`.
    pub fn dihedral4() -> Self {
        let idx = |i: usize, j: usize| i % 4 + 4 * (j % 2);
        let t = (0..8)
            .map(|x| {
                (0..8)
                    .map(|y| {
                        let (a, b) = (x % 4, x / 4);
                        let (c, d) = (y % 4, y / 4);
                        let c = if b == 1 { (4 - c) % 4 } else { c };
                        idx(a + c, b + d)
                    })
                    .collect()
            })
            .collect();
        let names = ["e", "s", "s2", "s3", "t", "st", "s2t", "s3t"].map(String::from).to_vec();
        FiniteGroup::from_table(t, Some(names)).expect("D4 table is valid")
    }

    /// Quaternion group `{1,-1,i,-i,j,-j,k,-k}` in that index order.
    pub fn quaternion8() -> Self {
        // unit products: (sign, unit) for units 1,i,j,k
        let unit = |a: usize, b: usize| -> (bool, usize) {
            match (a, b) {
                (0, x) | (x, 0) => (false, x),
                (x, y) if x == y => (true, 0),
                (1, 2) => (false, 3),
                (2, 1) => (true, 3),
                (2, 3) => (false, 1),
                (3, 2) => (true, 1),
                (3, 1) => (false, 2),
                (1, 3) => (true, 2),
                _ => unreachable!(),
            }
        };
        let t = (0..8)
            .map(|x| {
                (0..8)
                    .map(|y| {
                        let (s, u) = unit(x / 2, y / 2);
                        let neg = s ^ (x % 2 == 1) ^ (y % 2 == 1);
                        2 * u + neg as usize
                    })
                    .collect()
            })
            .collect();
        let names = ["1", "-1", "i", "-i", "j", "-j", "k", "-k"].map(String::from).to_vec();
        FiniteGroup::from_table(t, Some(names)).expect("Q8 table is valid")
    }

    /// Symmetric group on three points.
    pub fn symmetric3() -> Self {
        let perms: [[usize; 3]; 6] = [[0, 1, 2], [1, 0, 2], [2, 1, 0], [0, 2, 1], [1, 2, 0], [2, 0, 1]];
        let names = ["()", "(12)", "(13)", "(23)", "(123)", "(132)"].map(String::from).to_vec();
        // (p*q)(x) = p(q(x))
        let t = (0..6)
            .map(|a| {
                (0..6)
                    .map(|b| {
                        let c = [0, 1, 2].map(|x| perms[a][perms[b][x]]);
                        perms.iter().position(|p| *p == c).unwrap()
                    })
                    .collect()
            })
            .collect();
        FiniteGroup::from_table(t, Some(names)).expect("S3 table is valid")
    }

    /// Parses built-in names: `Z_n`, `Z_a x Z_b [x ...]`, `D4`, `Q8`, `S3`.
    pub fn from_name(name: &str) -> Result<Self> {
        let parts: Vec<&str> = name.split('x').map(str::trim).collect();
        let mut acc: Option<FiniteGroup> = None;
        for p in parts {
            let g = match p {
                "D4" => FiniteGroup::dihedral4(),
                "Q8" => FiniteGroup::quaternion8(),
                "S3" => FiniteGroup::symmetric3(),
                _ => {
                    let digits = p
                        .strip_prefix("Z_")
                        .or_else(|| p.strip_prefix('Z'))
                        .ok_or_else(|| Error::UnknownGroupName(name.to_string()))?;
                    let n: usize = digits
                        .parse()
                        .ok()
                        .filter(|&n| n >= 1)
                        .ok_or_else(|| Error::UnknownGroupName(name.to_string()))?;
                    FiniteGroup::cyclic(n)
                }
            };
            acc = Some(match acc {
                None => g,
                Some(a) => FiniteGroup::direct_product(&a, &g),
            });
        }
        acc.ok_or_else(|| Error::UnknownGroupName(name.to_string()))
    }

    pub fn order(&self) -> usize {
        self.cayley.len()
    }

    pub fn cayley(&self) -> &[Vec<usize>] {
        &self.cayley
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.cayley[a][b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverses[a]
    }

    pub fn conj(&self, g: usize, x: usize) -> usize {
        self.mul(self.mul(g, x), self.inv(g))
    }

    pub fn name(&self, a: usize) -> String {
        match &self.names {
            Some(n) => n[a].clone(),
            None => a.to_string(),
        }
    }

    pub fn names(&self) -> Option<&[String]> {
        self.names.as_deref()
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn exponent(&self) -> usize {
        (0..self.order()).fold(1, |acc, a| num_integer::lcm(acc, self.element_order(a)))
    }

    /// Number of elements of each order.
    pub fn order_profile(&self) -> BTreeMap<usize, usize> {
        let mut m = BTreeMap::new();
        for a in 0..self.order() {
            *m.entry(self.element_order(a)).or_insert(0) += 1;
        }
        m
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.order();
        (0..n).all(|a| (a + 1..n).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn all(&self) -> Subgroup {
        Subgroup { elements: (0..self.order()).collect() }
    }
}

/// A subgroup as a sorted list of element indices of its parent group.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Subgroup {
    pub elements: Vec<usize>,
}

impl Subgroup {
    pub fn trivial() -> Self {
        Subgroup { elements: vec![0] }
    }

    /// Validates closure of an explicit element list.
    pub fn new(g: &FiniteGroup, mut elements: Vec<usize>) -> Result<Self> {
        elements.sort_unstable();
        elements.dedup();
        if elements.first() != Some(&0) {
            return Err(Error::InvalidSubgroup("identity missing".into()));
        }
        if elements.iter().any(|&x| x >= g.order()) {
            return Err(Error::InvalidSubgroup("element index out of range".into()));
        }
        let set: BTreeSet<usize> = elements.iter().copied().collect();
        for &a in &elements {
            if !set.contains(&g.inv(a)) {
                return Err(Error::InvalidSubgroup(format!("not closed under inverse at {a}")));
            }
            for &b in &elements {
                if !set.contains(&g.mul(a, b)) {
                    return Err(Error::InvalidSubgroup(format!("not closed at ({a},{b})")));
                }
            }
        }
        Ok(Subgroup { elements })
    }

    pub fn generated(g: &FiniteGroup, gens: &[usize]) -> Self {
        let mut seen = BTreeSet::from([0usize]);
        let mut frontier = vec![0usize];
        while let Some(x) = frontier.pop() {
            for &s in gens {
                let y = g.mul(x, s);
                if seen.insert(y) {
                    frontier.push(y);
                }
            }
        }
        Subgroup { elements: seen.into_iter().collect() }
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.elements.binary_search(&x).is_ok()
    }

    pub fn is_subset_of(&self, other: &Subgroup) -> bool {
        self.elements.iter().all(|&x| other.contains(x))
    }

    pub fn is_normal(&self, g: &FiniteGroup) -> bool {
        (0..g.order()).all(|x| self.elements.iter().all(|&h| self.contains(g.conj(x, h))))
    }

    pub fn is_abelian(&self, g: &FiniteGroup) -> bool {
        self.elements
            .iter()
            .all(|&a| self.elements.iter().all(|&b| g.mul(a, b) == g.mul(b, a)))
    }

    pub fn index_in(&self, g: &FiniteGroup) -> usize {
        g.order() / self.order()
    }

    /// Right cosets `H x`, each as a sorted element list, ordered by least element.
    pub fn right_cosets(&self, g: &FiniteGroup) -> Vec<Vec<usize>> {
        let mut label = vec![usize::MAX; g.order()];
        let mut cosets = Vec::new();
        for x in 0..g.order() {
            if label[x] != usize::MAX {
                continue;
            }
            let mut c: Vec<usize> = self.elements.iter().map(|&h| g.mul(h, x)).collect();
            c.sort_unstable();
            for &y in &c {
                label[y] = cosets.len();
            }
            cosets.push(c);
        }
        cosets
    }

    /// Index of the right coset containing each element.
    pub fn right_coset_labels(&self, g: &FiniteGroup) -> Vec<usize> {
        let mut label = vec![0; g.order()];
        for (i, c) in self.right_cosets(g).iter().enumerate() {
            for &y in c {
                label[y] = i;
            }
        }
        label
    }
}

pub fn center(g: &FiniteGroup) -> Subgroup {
    let n = g.order();
    Subgroup {
        elements: (0..n).filter(|&z| (0..n).all(|x| g.mul(z, x) == g.mul(x, z))).collect(),
    }
}

/// Every subgroup, by joining cyclic subgroups until nothing new appears.
/// Sorted by order, then elements.
pub fn all_subgroups(g: &FiniteGroup) -> Vec<Subgroup> {
    let cyclic: BTreeSet<Subgroup> = (0..g.order()).map(|x| Subgroup::generated(g, &[x])).collect();
    let mut found: BTreeSet<Subgroup> = cyclic.clone();
    let mut frontier: Vec<Subgroup> = cyclic.iter().cloned().collect();
    while let Some(s) = frontier.pop() {
        for c in &cyclic {
            if c.is_subset_of(&s) {
                continue;
            }
            let mut gens = s.elements.clone();
            gens.extend_from_slice(&c.elements);
            let joined = Subgroup::generated(g, &gens);
            if found.insert(joined.clone()) {
                frontier.push(joined);
            }
        }
    }
    let mut v: Vec<Subgroup> = found.into_iter().collect();
    v.sort_by(|a, b| a.order().cmp(&b.order()).then_with(|| a.elements.cmp(&b.elements)));
    v
}

/// An abelian subgroup of a Cayley-table group together with an explicit
/// isomorphism from its invariant-factor form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbelianSubgroup {
    pub subgroup: Subgroup,
    pub group: AbelianGroup,
    /// `elements[i]` is the parent index of abstract element `i`.
    pub elements: Vec<usize>,
    position: Vec<Option<usize>>,
}

impl AbelianSubgroup {
    pub fn new(g: &FiniteGroup, subgroup: Subgroup) -> Result<Self> {
        if !subgroup.is_abelian(g) {
            return Err(Error::InvalidSubgroup("subgroup is not abelian".into()));
        }
        let factors = abelian_invariants(g, &subgroup);
        let group = AbelianGroup::from_cyclic_factors(&factors)?;
        let basis = find_basis(g, &subgroup, group.invariant_factors())
            .ok_or_else(|| Error::Internal("no basis found for abelian subgroup".into()))?;
        let elements: Vec<usize> = group
            .elements()
            .map(|e| {
                e.coords.iter().zip(&basis).fold(0usize, |acc, (&c, &b)| {
                    (0..c).fold(acc, |x, _| g.mul(x, b))
                })
            })
            .collect();
        let mut position = vec![None; g.order()];
        for (i, &x) in elements.iter().enumerate() {
            position[x] = Some(i);
        }
        Ok(AbelianSubgroup { subgroup, group, elements, position })
    }

    /// Uses a prescribed basis; `basis[i]` must have order `m_i` and the
    /// basis must be independent.
    pub fn with_basis(g: &FiniteGroup, group: AbelianGroup, basis: &[usize]) -> Result<Self> {
        if basis.len() != group.rank() {
            return Err(Error::InvalidSubgroup("basis length differs from rank".into()));
        }
        let elements: Vec<usize> = group
            .elements()
            .map(|e| {
                e.coords.iter().zip(basis).fold(0usize, |acc, (&c, &b)| {
                    (0..c).fold(acc, |x, _| g.mul(x, b))
                })
            })
            .collect();
        let distinct: BTreeSet<usize> = elements.iter().copied().collect();
        if distinct.len() != elements.len() {
            return Err(Error::InvalidSubgroup("basis is not independent".into()));
        }
        for (i, &b) in basis.iter().enumerate() {
            if g.element_order(b) as u64 != group.invariant_factors()[i] {
                return Err(Error::InvalidSubgroup(format!("basis element {i} has wrong order")));
            }
        }
        let subgroup = Subgroup { elements: distinct.into_iter().collect() };
        if !subgroup.is_abelian(g) {
            return Err(Error::InvalidSubgroup("subgroup is not abelian".into()));
        }
        let mut position = vec![None; g.order()];
        for (i, &x) in elements.iter().enumerate() {
            position[x] = Some(i);
        }
        Ok(AbelianSubgroup { subgroup, group, elements, position })
    }

    pub fn abstract_index(&self, x: usize) -> Option<usize> {
        self.position.get(x).copied().flatten()
    }

    pub fn coords_of(&self, x: usize) -> Option<AbelianElement> {
        self.abstract_index(x).map(|i| self.group.element(i))
    }

    pub fn embed(&self, e: &AbelianElement) -> usize {
        self.elements[self.group.index_of(e)]
    }

    /// Automorphism of the abstract group induced by conjugation `h -> x h x^-1`.
    pub fn conjugation_by(&self, g: &FiniteGroup, x: usize) -> Result<IntMatrixHom> {
        let k = self.group.rank();
        let images: Vec<AbelianElement> = (0..k)
            .map(|j| {
                let b = self.embed(&self.group.basis_element(j));
                self.coords_of(g.conj(x, b))
                    .ok_or_else(|| Error::InvalidSubgroup("subgroup is not normal".into()))
            })
            .collect::<Result<_>>()?;
        let m = (0..k).map(|i| images.iter().map(|c| c.coords[i]).collect()).collect();
        IntMatrixHom::new(self.group.clone(), self.group.clone(), m)
    }

    /// Conjugation action of every element of `g` on this (normal) subgroup.
    pub fn conjugation_action(&self, g: &FiniteGroup) -> Result<Vec<IntMatrixHom>> {
        (0..g.order()).map(|x| self.conjugation_by(g, x)).collect()
    }
}

/// Invariant factors of an abelian subgroup from the Smith form of the
/// relation lattice of a generating set.
fn abelian_invariants(g: &FiniteGroup, s: &Subgroup) -> Vec<u64> {
    use num_bigint::BigInt;
    // Greedy generating set.
    let mut gens: Vec<usize> = Vec::new();
    let mut span = Subgroup::trivial();
    for &x in &s.elements {
        if !span.contains(x) {
            gens.push(x);
            span = Subgroup::generated(g, &gens);
        }
    }
    if gens.is_empty() {
        return vec![];
    }
    let r = gens.len();
    // Exponent vectors of every element reached, and the relations that close the Cayley graph.
    let mut vec_of: BTreeMap<usize, Vec<i64>> = BTreeMap::from([(0, vec![0; r])]);
    let mut frontier = vec![0usize];
    let mut relations: Vec<Vec<BigInt>> = Vec::new();
    while let Some(x) = frontier.pop() {
        let vx = vec_of[&x].clone();
        for (i, &s) in gens.iter().enumerate() {
            let y = g.mul(x, s);
            let mut v = vx.clone();
            v[i] += 1;
            match vec_of.get(&y) {
                Some(vy) => {
                    let rel: Vec<BigInt> = v.iter().zip(vy).map(|(a, b)| BigInt::from(a - b)).collect();
                    if rel.iter().any(|c| c != &BigInt::from(0)) {
                        relations.push(rel);
                    }
                }
                None => {
                    vec_of.insert(y, v);
                    frontier.push(y);
                }
            }
        }
    }
    // Commutativity relations are implied by the abelian Cayley graph closure.
    let snf = crate::abelian::smith_normal_form_with_cols(&relations, r);
    snf.diagonal()
        .iter()
        .map(|d| num_traits::ToPrimitive::to_u64(d).expect("finite subgroup"))
        .filter(|&m| m > 1)
        .collect()
}

fn find_basis(g: &FiniteGroup, s: &Subgroup, factors: &[u64]) -> Option<Vec<usize>> {
    fn search(
        g: &FiniteGroup,
        s: &Subgroup,
        factors: &[u64],
        chosen: &mut Vec<usize>,
        span: &Subgroup,
    ) -> bool {
        let k = factors.len();
        if chosen.len() == k {
            return true;
        }
        // Fill from the largest factor down.
        let m = factors[k - 1 - chosen.len()];
        for &x in &s.elements {
            if g.element_order(x) as u64 != m {
                continue;
            }
            let mut gens = span.elements.clone();
            gens.push(x);
            let next = Subgroup::generated(g, &gens);
            if next.order() as u64 != span.order() as u64 * m {
                continue;
            }
            chosen.push(x);
            if search(g, s, factors, chosen, &next) {
                return true;
            }
            chosen.pop();
        }
        false
    }
    let mut chosen = Vec::new();
    if search(g, s, factors, &mut chosen, &Subgroup::trivial()) {
        chosen.reverse();
        Some(chosen)
    } else {
        None
    }
}

/// Normal abelian subgroups with their abstract types.
pub fn normal_abelian_subgroups(g: &FiniteGroup) -> Vec<AbelianSubgroup> {
    let subs: Vec<Subgroup> = all_subgroups(g)
        .into_iter()
        .filter(|s| s.is_abelian(g) && s.is_normal(g))
        .collect();
    par::map_slice(&subs, |s| AbelianSubgroup::new(g, s.clone()).expect("abelian subgroup"))
}

/// Group extension of `Q` by an abelian `H`, written additively in `H`.
/// Element `(h, q)` of the assembled group has index `q * |H| + h`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Extension {
    h: AbelianGroup,
    q: FiniteGroup,
    action: Vec<IntMatrixHom>,
    beta: Vec<Vec<AbelianElement>>,
    g: FiniteGroup,
}

/// Checks the action and the normalized cocycle identity of `beta`; reports
/// the first failure.
pub fn validate_cocycle_beta(
    h: &AbelianGroup,
    q: &FiniteGroup,
    action: &[IntMatrixHom],
    beta: &[Vec<AbelianElement>],
) -> Result<()> {
    let n = q.order();
    if action.len() != n || beta.len() != n || beta.iter().any(|r| r.len() != n) {
        return Err(Error::DimensionMismatch("action/beta must be indexed by Q".into()));
    }
    for (i, a) in action.iter().enumerate() {
        if a.source() != h || a.target() != h || !a.is_automorphism() {
            return Err(Error::NotAutomorphism(i));
        }
    }
    if action[0] != IntMatrixHom::identity(h) {
        return Err(Error::ActionNotHomomorphism(0, 0));
    }
    for a in 0..n {
        for b in 0..n {
            if action[a].compose(&action[b])? != action[q.mul(a, b)] {
                return Err(Error::ActionNotHomomorphism(a, b));
            }
        }
    }
    for row in beta {
        for x in row {
            h.check_element(x)?;
        }
    }
    let zero = h.zero();
    for a in 0..n {
        if beta[0][a] != zero {
            return Err(Error::NotNormalized(0, a));
        }
        if beta[a][0] != zero {
            return Err(Error::NotNormalized(a, 0));
        }
    }
    let bad = par::find_first(n * n * n, |t| {
        let (a, b, c) = (t / (n * n), (t / n) % n, t % n);
        let lhs = h.add(&action[a].apply(&beta[b][c]), &beta[a][q.mul(b, c)]);
        let rhs = h.add(&beta[q.mul(a, b)][c], &beta[a][b]);
        (lhs != rhs).then_some((a, b, c))
    });
    match bad {
        Some((_, (a, b, c))) => Err(Error::CocycleViolation(a, b, c)),
        None => Ok(()),
    }
}

impl Extension {
    pub fn new(
        h: AbelianGroup,
        q: FiniteGroup,
        action: Vec<IntMatrixHom>,
        beta: Vec<Vec<AbelianElement>>,
    ) -> Result<Self> {
        validate_cocycle_beta(&h, &q, &action, &beta)?;
        let g = build_extension_group(&h, &q, &action, &beta)?;
        Ok(Extension { h, q, action, beta, g })
    }

    /// Split extension `H ⋊ Q` (beta identically zero).
    pub fn split(h: AbelianGroup, q: FiniteGroup, action: Vec<IntMatrixHom>) -> Result<Self> {
        let n = q.order();
        let beta = vec![vec![h.zero(); n]; n];
        Extension::new(h, q, action, beta)
    }

    pub fn trivial_action(h: &AbelianGroup, q: &FiniteGroup) -> Vec<IntMatrixHom> {
        vec![IntMatrixHom::identity(h); q.order()]
    }

    /// Reads off `(H, Q, action, beta)` from a normal abelian subgroup, using
    /// the least element of each coset as its representative. Returns the
    /// extension and, for each element of `g`, its index in the assembled group.
    pub fn from_normal_subgroup(g: &FiniteGroup, h: &AbelianSubgroup) -> Result<(Self, Vec<usize>)> {
        if !h.subgroup.is_normal(g) {
            return Err(Error::InvalidSubgroup("subgroup is not normal".into()));
        }
        let cosets = h.subgroup.right_cosets(g);
        let labels = h.subgroup.right_coset_labels(g);
        let reps: Vec<usize> = cosets.iter().map(|c| c[0]).collect();
        let nq = reps.len();
        let qt = (0..nq)
            .map(|a| (0..nq).map(|b| labels[g.mul(reps[a], reps[b])]).collect())
            .collect();
        let names = reps.iter().map(|&r| format!("{}H", g.name(r))).collect();
        let q = FiniteGroup::from_table(qt, Some(names))?;
        let action = reps.iter().map(|&r| h.conjugation_by(g, r)).collect::<Result<Vec<_>>>()?;
        let beta = (0..nq)
            .map(|a| {
                (0..nq)
                    .map(|b| {
                        let ab = g.mul(reps[a], reps[b]);
                        let c = q.mul(a, b);
                        h.coords_of(g.mul(ab, g.inv(reps[c]))).expect("lands in H")
                    })
                    .collect()
            })
            .collect();
        let mut ext = Extension::new(h.group.clone(), q, action, beta)?;
        // x = hpart * rep(coset)
        let map: Vec<usize> = (0..g.order())
            .map(|x| {
                let c = labels[x];
                let hp = h.abstract_index(g.mul(x, g.inv(reps[c]))).expect("lands in H");
                c * ext.h.order() as usize + hp
            })
            .collect();
        let mut names = vec![String::new(); g.order()];
        for (x, &i) in map.iter().enumerate() {
            names[i] = g.name(x);
        }
        ext.g.names = Some(names);
        Ok((ext, map))
    }

    pub fn h(&self) -> &AbelianGroup {
        &self.h
    }

    pub fn q(&self) -> &FiniteGroup {
        &self.q
    }

    pub fn action(&self) -> &[IntMatrixHom] {
        &self.action
    }

    pub fn beta(&self) -> &[Vec<AbelianElement>] {
        &self.beta
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.g
    }

    pub fn h_order(&self) -> usize {
        self.h.order() as usize
    }

    pub fn pair_index(&self, h: usize, q: usize) -> usize {
        q * self.h_order() + h
    }

    /// `(h index, q index)` of an element of the assembled group.
    pub fn split_index(&self, g: usize) -> (usize, usize) {
        (g % self.h_order(), g / self.h_order())
    }

    /// `H` as a subgroup of the assembled group, with its natural basis.
    pub fn h_subgroup(&self) -> AbelianSubgroup {
        let basis: Vec<usize> = (0..self.h.rank())
            .map(|i| self.h.index_of(&self.h.basis_element(i)))
            .collect();
        AbelianSubgroup::with_basis(&self.g, self.h.clone(), &basis).expect("H embeds in G")
    }

    /// Conjugation `h -> g h g^-1` for every `g` in the assembled group.
    pub fn conjugation_action_on_h(&self) -> Vec<IntMatrixHom> {
        let hs = self.h_subgroup();
        hs.conjugation_action(&self.g).expect("H is normal in G")
    }
}

pub fn build_extension_group(
    h: &AbelianGroup,
    q: &FiniteGroup,
    action: &[IntMatrixHom],
    beta: &[Vec<AbelianElement>],
) -> Result<FiniteGroup> {
    validate_cocycle_beta(h, q, action, beta)?;
    let nh = h.order() as usize;
    let nq = q.order();
    let elems: Vec<AbelianElement> = h.elements().collect();
    let table = par::map_range(nh * nq, |x| {
        let (h1, q1) = (x % nh, x / nh);
        (0..nh * nq)
            .map(|y| {
                let (h2, q2) = (y % nh, y / nh);
                let s = h.add(&h.add(&elems[h1], &action[q1].apply(&elems[h2])), &beta[q1][q2]);
                q.mul(q1, q2) * nh + h.index_of(&s)
            })
            .collect()
    });
    let names = (0..nh * nq)
        .map(|x| {
            let (hi, qi) = (x % nh, x / nh);
            format!("({:?},{})", elems[hi].coords, q.name(qi))
        })
        .collect();
    FiniteGroup::from_table(table, Some(names))
}

/// `Q8` as the non-split extension of `Z2 x Z2` by the center `Z2`.
pub fn quaternion_extension() -> Extension {
    let h = AbelianGroup::cyclic(2).unwrap();
    let q = FiniteGroup::from_name("Z2 x Z2").unwrap();
    // Q indices (a, b) -> 2a + b stand for 1, j, i, k with i = (1,0), j = (0,1).
    // sign of s(x) s(y) relative to s(xy), where s picks the positive unit.
    let unit_of = [0usize, 2, 1, 3]; // Q index -> quaternion unit (1,i,j,k)
    let qg = FiniteGroup::quaternion8();
    let beta = (0..4)
        .map(|a| {
            (0..4)
                .map(|b| {
                    let prod = qg.mul(2 * unit_of[a], 2 * unit_of[b]);
                    AbelianElement::new(vec![(prod % 2) as i64])
                })
                .collect()
        })
        .collect();
    Extension::new(h.clone(), q.clone(), Extension::trivial_action(&h, &q), beta).unwrap()
}

/// `D4` as `(Z2 x Z2) ⋊ Z2` with `H = {e, s^2, t, s^2 t}` on basis `(s^2, t)`
/// and the generator acting by `t -> s^2 t`.
pub fn dihedral_extension() -> Extension {
    let h = AbelianGroup::from_cyclic_factors(&[2, 2]).unwrap();
    let q = FiniteGroup::cyclic(2);
    let swap = IntMatrixHom::new(h.clone(), h.clone(), vec![vec![1, 1], vec![0, 1]]).unwrap();
    Extension::split(h.clone(), q, vec![IntMatrixHom::identity(&h), swap]).unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn named_groups_have_expected_order_profiles() {
        let q8 = FiniteGroup::quaternion8();
        assert_eq!(q8.order_profile(), BTreeMap::from([(1, 1), (2, 1), (4, 6)]));
        let d4 = FiniteGroup::dihedral4();
        assert_eq!(d4.order_profile(), BTreeMap::from([(1, 1), (2, 5), (4, 2)]));
        let s3 = FiniteGroup::symmetric3();
        assert_eq!(s3.order_profile(), BTreeMap::from([(1, 1), (2, 3), (3, 2)]));
        assert!(!s3.is_abelian());
        assert_eq!(FiniteGroup::from_name("Z_2 x Z_4").unwrap().order(), 8);
        assert!(FiniteGroup::from_name("Z2 x Z2").unwrap().is_abelian());
        assert!(FiniteGroup::from_name("A5").is_err());
    }

    #[test]
    fn cayley_validation_rejects_bad_tables() {
        assert!(FiniteGroup::from_table(vec![vec![0, 1], vec![1, 1]], None).is_err());
        // Latin square that is not associative (order 5 loop).
        let t = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        assert!(FiniteGroup::from_table(t, None).is_err());
    }

    #[test]
    fn z4_as_extension_of_z2_by_z2() {
        let h = AbelianGroup::cyclic(2).unwrap();
        let q = FiniteGroup::cyclic(2);
        let z = h.zero();
        let one = AbelianElement::new(vec![1]);
        let beta = vec![vec![z.clone(), z.clone()], vec![z.clone(), one.clone()]];
        let act = Extension::trivial_action(&h, &q);
        assert!(validate_cocycle_beta(&h, &q, &act, &beta).is_ok());
        let ext = Extension::new(h.clone(), q.clone(), act.clone(), beta).unwrap();
        assert_eq!(ext.group().order_profile(), BTreeMap::from([(1, 1), (2, 1), (4, 2)]));
        let bad = vec![vec![z.clone(), one.clone()], vec![z.clone(), z.clone()]];
        assert_eq!(validate_cocycle_beta(&h, &q, &act, &bad), Err(Error::NotNormalized(0, 1)));
    }

    #[test]
    fn quaternion_and_dihedral_extensions() {
        let q8 = quaternion_extension();
        assert_eq!(q8.group().order_profile(), BTreeMap::from([(1, 1), (2, 1), (4, 6)]));
        assert_eq!(center(q8.group()).order(), 2);
        let d4 = dihedral_extension();
        assert_eq!(d4.group().order_profile(), BTreeMap::from([(1, 1), (2, 5), (4, 2)]));
        assert_eq!(center(d4.group()).order(), 2);
    }

    #[test]
    fn trivial_kernel_reproduces_q() {
        let q = FiniteGroup::symmetric3();
        let h = AbelianGroup::trivial();
        let ext = Extension::split(h.clone(), q.clone(), Extension::trivial_action(&h, &q)).unwrap();
        assert_eq!(ext.group().cayley(), q.cayley());
    }

    #[test]
    fn centers() {
        let d4 = FiniteGroup::dihedral4();
        assert_eq!(center(&d4).elements, vec![0, 2]);
        let z6 = FiniteGroup::cyclic(6);
        assert_eq!(center(&z6).order(), 6);
    }

    #[test]
    fn conjugation_action_examples() {
        let ext = dihedral_extension();
        let act = ext.conjugation_action_on_h();
        let h = ext.h();
        // the generator of Q, i.e. (0, 1), maps t = e_2 to s^2 t = e_1 + e_2
        let g = ext.pair_index(0, 1);
        assert_eq!(act[g].apply(&h.basis_element(1)), AbelianElement::new(vec![1, 1]));
        for hi in 0..h.order() as usize {
            assert_eq!(act[ext.pair_index(hi, 0)], IntMatrixHom::identity(h));
        }
        for q in 0..ext.q().order() {
            assert_eq!(act[ext.pair_index(0, q)], ext.action()[q]);
        }
        // inside the Cayley table of D4 itself, s conjugates t to s^2 t
        let d4 = FiniteGroup::dihedral4();
        assert_eq!(d4.conj(1, 4), 6);
    }

    #[test]
    fn normal_abelian_subgroup_counts() {
        let q8 = normal_abelian_subgroups(&FiniteGroup::quaternion8());
        assert_eq!(q8.len(), 5);
        let d4 = normal_abelian_subgroups(&FiniteGroup::dihedral4());
        assert_eq!(d4.len(), 5);
        let types: Vec<Vec<u64>> = d4.iter().map(|s| s.group.invariant_factors().to_vec()).collect();
        assert_eq!(types.iter().filter(|t| *t == &vec![2, 2]).count(), 2);
        assert_eq!(types.iter().filter(|t| *t == &vec![4]).count(), 1);
        let z12 = normal_abelian_subgroups(&FiniteGroup::cyclic(12));
        assert_eq!(z12.len(), 6);
    }

    #[test]
    fn extension_from_subgroup_roundtrip() {
        let g = FiniteGroup::quaternion8();
        for s in normal_abelian_subgroups(&g) {
            let (ext, map) = Extension::from_normal_subgroup(&g, &s).unwrap();
            for a in 0..g.order() {
                for b in 0..g.order() {
                    assert_eq!(map[g.mul(a, b)], ext.group().mul(map[a], map[b]));
                }
            }
        }
    }
}
