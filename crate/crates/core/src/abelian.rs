//! Finite abelian groups in invariant-factor form, homomorphisms between them
//! as integer matrices, and the Smith normal form that drives both.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type IntMatrix = Vec<Vec<BigInt>>;

/// `u * m * v == d` with `d` diagonal, nonnegative, and each diagonal entry
/// dividing the next.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    pub d: IntMatrix,
    pub u: IntMatrix,
    pub v: IntMatrix,
}

impl SmithForm {
    pub fn diagonal(&self) -> Vec<BigInt> {
        let n = self.d.len().min(self.d.first().map_or(0, Vec::len));
        (0..n).map(|i| self.d[i][i].clone()).collect()
    }

    pub fn rank(&self) -> usize {
        self.diagonal().iter().filter(|x| !x.is_zero()).count()
    }
}

pub fn to_big(m: &[Vec<i64>]) -> IntMatrix {
    m.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
}

pub fn identity_matrix(n: usize) -> IntMatrix {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect()
}

pub fn mat_mul(a: &[Vec<BigInt>], b: &[Vec<BigInt>], inner: usize, cols: usize) -> IntMatrix {
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| (0..inner).fold(BigInt::zero(), |acc, k| acc + &row[k] * &b[k][j]))
                .collect()
        })
        .collect()
}

/// Smith normal form of an integer matrix with `cols` columns (needed when
/// `m` has no rows).
pub fn smith_normal_form_with_cols(m: &[Vec<BigInt>], cols: usize) -> SmithForm {
    let rows = m.len();
    let mut a: IntMatrix = m.to_vec();
    let mut u = identity_matrix(rows);
    let mut v = identity_matrix(cols);

    for t in 0..rows.min(cols) {
        // Bring the smallest nonzero entry of the trailing block to (t, t).
        let Some((pi, pj)) = min_abs_entry(&a, t, t..rows, t..cols) else {
            break;
        };
        a.swap(t, pi);
        u.swap(t, pi);
        swap_cols(&mut a, t, pj);
        swap_cols(&mut v, t, pj);

        loop {
            let mut dirty = false;
            for i in t + 1..rows {
                if a[i][t].is_zero() {
                    continue;
                }
                let q = a[i][t].div_floor(&a[t][t]);
                row_axpy(&mut a, i, t, &q);
                row_axpy(&mut u, i, t, &q);
                dirty |= !a[i][t].is_zero();
            }
            for j in t + 1..cols {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = a[t][j].div_floor(&a[t][t]);
                col_axpy(&mut a, j, t, &q);
                col_axpy(&mut v, j, t, &q);
                dirty |= !a[t][j].is_zero();
            }
            if dirty {
                // A remainder survived; it is smaller than the pivot, so swap it in.
                let (pi, pj) = min_abs_entry_cross(&a, t, rows, cols);
                a.swap(t, pi);
                u.swap(t, pi);
                swap_cols(&mut a, t, pj);
                swap_cols(&mut v, t, pj);
                continue;
            }
            // Pivot must divide the whole trailing block.
            let bad = (t + 1..rows)
                .find(|&i| (t + 1..cols).any(|j| !a[i][j].is_multiple_of(&a[t][t])));
            match bad {
                Some(i) => {
                    let one = -BigInt::one();
                    row_axpy(&mut a, t, i, &one);
                    row_axpy(&mut u, t, i, &one);
                }
                None => break,
            }
        }
        if a[t][t].is_negative() {
            for x in a[t].iter_mut() {
                *x = -x.clone();
            }
            for x in u[t].iter_mut() {
                *x = -x.clone();
            }
        }
    }
    SmithForm { d: a, u, v }
}

pub fn smith_normal_form(m: &[Vec<BigInt>]) -> SmithForm {
    let cols = m.first().map_or(0, Vec::len);
    smith_normal_form_with_cols(m, cols)
}

fn min_abs_entry(
    a: &[Vec<BigInt>],
    _t: usize,
    rows: std::ops::Range<usize>,
    cols: std::ops::Range<usize>,
) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in rows {
        for j in cols.clone() {
            if a[i][j].is_zero() {
                continue;
            }
            if best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs()) {
                best = Some((i, j));
            }
        }
    }
    best
}

fn min_abs_entry_cross(a: &[Vec<BigInt>], t: usize, rows: usize, cols: usize) -> (usize, usize) {
    let mut best = (t, t);
    let better = |i: usize, j: usize, best: (usize, usize)| {
        !a[i][j].is_zero() && (a[best.0][best.1].is_zero() || a[i][j].abs() < a[best.0][best.1].abs())
    };
    for i in t..rows {
        if better(i, t, best) {
            best = (i, t);
        }
    }
    for j in t..cols {
        if better(t, j, best) {
            best = (t, j);
        }
    }
    best
}

fn swap_cols(a: &mut [Vec<BigInt>], i: usize, j: usize) {
    if i != j {
        for row in a.iter_mut() {
            row.swap(i, j);
        }
    }
}

/// row[dst] -= q * row[src]
fn row_axpy(a: &mut [Vec<BigInt>], dst: usize, src: usize, q: &BigInt) {
    let src_row = a[src].clone();
    for (x, s) in a[dst].iter_mut().zip(src_row.iter()) {
        *x -= q * s;
    }
}

/// col[dst] -= q * col[src]
fn col_axpy(a: &mut [Vec<BigInt>], dst: usize, src: usize, q: &BigInt) {
    for row in a.iter_mut() {
        let s = row[src].clone();
        row[dst] -= q * s;
    }
}

/// Basis of the integer kernel `{x in Z^cols : a x = 0}`, one vector per entry.
pub fn integer_kernel(a: &[Vec<BigInt>], cols: usize) -> Vec<Vec<BigInt>> {
    let snf = smith_normal_form_with_cols(a, cols);
    let rank = snf.rank();
    (rank..cols).map(|j| snf.v.iter().map(|row| row[j].clone()).collect()).collect()
}

/// Determinant by fraction-free (Bareiss) elimination.
pub fn determinant(m: &[Vec<BigInt>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut a = m.to_vec();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(i, k);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

fn big_to_u64(x: &BigInt) -> u64 {
    x.to_u64().expect("invariant factor fits in u64")
}

#[derive(Deserialize)]
struct RawGroup {
    invariant_factors: Vec<u64>,
}

impl TryFrom<RawGroup> for AbelianGroup {
    type Error = Error;
    fn try_from(raw: RawGroup) -> Result<Self> {
        AbelianGroup::from_cyclic_factors(&raw.invariant_factors)
    }
}

/// A finite abelian group `Z_{m_1} x ... x Z_{m_k}` with `m_i | m_{i+1}`, `m_i >= 2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "RawGroup")]
pub struct AbelianGroup {
    invariant_factors: Vec<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct AbelianElement {
    pub coords: Vec<i64>,
}

impl AbelianElement {
    pub fn new(coords: Vec<i64>) -> Self {
        AbelianElement { coords }
    }
}

impl AbelianGroup {
    pub fn trivial() -> Self {
        AbelianGroup { invariant_factors: vec![] }
    }

    pub fn cyclic(n: u64) -> Result<Self> {
        Self::from_cyclic_factors(&[n])
    }

    /// Normalizes an arbitrary list of cyclic orders into invariant factors.
    pub fn from_cyclic_factors(factors: &[u64]) -> Result<Self> {
        if factors.contains(&0) {
            return Err(Error::InvalidGroup("cyclic factor 0 gives an infinite group".into()));
        }
        let k = factors.len();
        let diag: IntMatrix = (0..k)
            .map(|i| (0..k).map(|j| if i == j { BigInt::from(factors[i]) } else { BigInt::zero() }).collect())
            .collect();
        let snf = smith_normal_form_with_cols(&diag, k);
        let invariant_factors = snf
            .diagonal()
            .iter()
            .map(big_to_u64)
            .filter(|&m| m > 1)
            .collect();
        Ok(AbelianGroup { invariant_factors })
    }

    pub fn invariant_factors(&self) -> &[u64] {
        &self.invariant_factors
    }

    pub fn rank(&self) -> usize {
        self.invariant_factors.len()
    }

    pub fn order(&self) -> u64 {
        self.invariant_factors.iter().product()
    }

    pub fn exponent(&self) -> u64 {
        self.invariant_factors.last().copied().unwrap_or(1)
    }

    pub fn is_trivial(&self) -> bool {
        self.invariant_factors.is_empty()
    }

    pub fn direct_product(&self, other: &AbelianGroup) -> AbelianGroup {
        let mut f = self.invariant_factors.clone();
        f.extend_from_slice(&other.invariant_factors);
        Self::from_cyclic_factors(&f).expect("factors are positive")
    }

    pub fn zero(&self) -> AbelianElement {
        AbelianElement::new(vec![0; self.rank()])
    }

    pub fn basis_element(&self, i: usize) -> AbelianElement {
        let mut c = vec![0; self.rank()];
        c[i] = 1 % self.invariant_factors[i] as i64;
        AbelianElement::new(c)
    }

    /// Reduces arbitrary integer coordinates into the canonical range.
    pub fn reduce(&self, coords: &[i64]) -> AbelianElement {
        assert_eq!(coords.len(), self.rank(), "coordinate length mismatch");
        AbelianElement::new(
            coords
                .iter()
                .zip(&self.invariant_factors)
                .map(|(&c, &m)| c.rem_euclid(m as i64))
                .collect(),
        )
    }

    pub fn check_element(&self, e: &AbelianElement) -> Result<()> {
        let ok = e.coords.len() == self.rank()
            && e.coords.iter().zip(&self.invariant_factors).all(|(&c, &m)| c >= 0 && (c as u64) < m);
        if ok {
            Ok(())
        } else {
            Err(Error::ElementOutOfRange {
                coords: e.coords.clone(),
                factors: self.invariant_factors.clone(),
            })
        }
    }

    pub fn add(&self, a: &AbelianElement, b: &AbelianElement) -> AbelianElement {
        let s: Vec<i64> = a.coords.iter().zip(&b.coords).map(|(x, y)| x + y).collect();
        self.reduce(&s)
    }

    pub fn neg(&self, a: &AbelianElement) -> AbelianElement {
        let s: Vec<i64> = a.coords.iter().map(|x| -x).collect();
        self.reduce(&s)
    }

    pub fn scale(&self, a: &AbelianElement, k: i64) -> AbelianElement {
        let s: Vec<i64> = a.coords.iter().map(|x| x * k).collect();
        self.reduce(&s)
    }

    /// Lexicographic index, last coordinate varying fastest; the identity is 0.
    pub fn index_of(&self, e: &AbelianElement) -> usize {
        e.coords
            .iter()
            .zip(&self.invariant_factors)
            .fold(0usize, |acc, (&c, &m)| acc * m as usize + c as usize)
    }

    pub fn element(&self, mut index: usize) -> AbelianElement {
        let mut c = vec![0i64; self.rank()];
        for i in (0..self.rank()).rev() {
            let m = self.invariant_factors[i] as usize;
            c[i] = (index % m) as i64;
            index /= m;
        }
        AbelianElement::new(c)
    }

    pub fn elements(&self) -> impl Iterator<Item = AbelianElement> + '_ {
        (0..self.order() as usize).map(move |i| self.element(i))
    }

    /// Order of an element.
    pub fn element_order(&self, e: &AbelianElement) -> u64 {
        e.coords
            .iter()
            .zip(&self.invariant_factors)
            .fold(1u64, |acc, (&c, &m)| acc.lcm(&(m / m.gcd(&(c as u64)))))
    }

    fn check_generators(&self, gens: &[AbelianElement]) -> Result<()> {
        gens.iter().try_for_each(|g| self.check_element(g))
    }

    /// Quotient `H / <gens>`, computed from the Smith form of the relation matrix.
    pub fn quotient(&self, gens: &[AbelianElement]) -> Result<AbelianGroup> {
        self.check_generators(gens)?;
        let k = self.rank();
        let mut rel: IntMatrix = (0..k)
            .map(|i| {
                (0..k)
                    .map(|j| if i == j { BigInt::from(self.invariant_factors[i]) } else { BigInt::zero() })
                    .collect()
            })
            .collect();
        rel.extend(gens.iter().map(|g| g.coords.iter().map(|&c| BigInt::from(c)).collect()));
        let snf = smith_normal_form_with_cols(&rel, k);
        let d = snf.diagonal();
        debug_assert!(d.iter().all(|x| !x.is_zero()));
        Ok(AbelianGroup { invariant_factors: d.iter().map(big_to_u64).filter(|&m| m > 1).collect() })
    }

    /// Abstract type of the subgroup generated by `gens`.
    pub fn subgroup_type(&self, gens: &[AbelianElement]) -> Result<AbelianGroup> {
        self.check_generators(gens)?;
        let g = gens.len();
        let k = self.rank();
        if g == 0 {
            return Ok(AbelianGroup::trivial());
        }
        // Relations among generators: c with sum c_l gen_l in the lattice m_i Z.
        let a: IntMatrix = (0..k)
            .map(|i| {
                let mut row: Vec<BigInt> = gens.iter().map(|gen| BigInt::from(gen.coords[i])).collect();
                row.extend((0..k).map(|j| {
                    if i == j {
                        BigInt::from(self.invariant_factors[i])
                    } else {
                        BigInt::zero()
                    }
                }));
                row
            })
            .collect();
        let relations: IntMatrix = integer_kernel(&a, g + k)
            .into_iter()
            .map(|v| v[..g].to_vec())
            .collect();
        let snf = smith_normal_form_with_cols(&relations, g);
        let d = snf.diagonal();
        if d.len() < g || d.iter().any(|x| x.is_zero()) {
            return Err(Error::Internal("subgroup relation lattice is not of full rank".into()));
        }
        Ok(AbelianGroup { invariant_factors: d.iter().map(big_to_u64).filter(|&m| m > 1).collect() })
    }

    /// All elements of `<gens>` by closure, as sorted indices.
    pub fn subgroup_elements(&self, gens: &[AbelianElement]) -> Vec<usize> {
        let mut seen = BTreeSet::from([0usize]);
        let mut frontier = vec![self.zero()];
        while let Some(x) = frontier.pop() {
            for g in gens {
                let y = self.add(&x, g);
                if seen.insert(self.index_of(&y)) {
                    frontier.push(y);
                }
            }
        }
        seen.into_iter().collect()
    }

    /// True iff `H = A x A` for some abelian `A`.
    pub fn is_square_type(&self) -> bool {
        let f = &self.invariant_factors;
        f.len().is_multiple_of(2) && f.chunks(2).all(|p| p[0] == p[1])
    }

    pub fn label(&self) -> String {
        if self.is_trivial() {
            "1".to_string()
        } else {
            self.invariant_factors
                .iter()
                .map(|m| format!("Z{m}"))
                .collect::<Vec<_>>()
                .join("x")
        }
    }
}

/// Homomorphism `source -> target`; column `j` is the image of the `j`-th
/// generator of `source`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrixHom {
    source: AbelianGroup,
    target: AbelianGroup,
    matrix: Vec<Vec<i64>>,
}

impl IntMatrixHom {
    pub fn new(source: AbelianGroup, target: AbelianGroup, matrix: Vec<Vec<i64>>) -> Result<Self> {
        let (ks, kt) = (source.rank(), target.rank());
        if matrix.len() != kt || matrix.iter().any(|r| r.len() != ks) {
            return Err(Error::DimensionMismatch(format!(
                "homomorphism matrix must be {kt}x{ks}"
            )));
        }
        let mut reduced = matrix;
        for (i, row) in reduced.iter_mut().enumerate() {
            let mt = target.invariant_factors[i] as i64;
            for (j, x) in row.iter_mut().enumerate() {
                let ms = source.invariant_factors[j] as i64;
                *x = x.rem_euclid(mt);
                if (*x * ms) % mt != 0 {
                    return Err(Error::IllDefinedHom { row: i, col: j });
                }
            }
        }
        Ok(IntMatrixHom { source, target, matrix: reduced })
    }

    pub fn identity(h: &AbelianGroup) -> Self {
        let k = h.rank();
        let m = (0..k).map(|i| (0..k).map(|j| (i == j) as i64).collect()).collect();
        IntMatrixHom::new(h.clone(), h.clone(), m).expect("identity is well defined")
    }

    pub fn matrix(&self) -> &[Vec<i64>] {
        &self.matrix
    }

    pub fn source(&self) -> &AbelianGroup {
        &self.source
    }

    pub fn target(&self) -> &AbelianGroup {
        &self.target
    }

    pub fn apply(&self, e: &AbelianElement) -> AbelianElement {
        let c: Vec<i64> = self
            .matrix
            .iter()
            .map(|row| row.iter().zip(&e.coords).map(|(a, b)| a * b).sum())
            .collect();
        self.target.reduce(&c)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &IntMatrixHom) -> Result<IntMatrixHom> {
        if other.target != self.source {
            return Err(Error::DimensionMismatch("composition of incompatible homomorphisms".into()));
        }
        let cols: Vec<AbelianElement> = (0..other.source.rank())
            .map(|j| self.apply(&other.apply(&other.source.basis_element(j))))
            .collect();
        let m = (0..self.target.rank())
            .map(|i| cols.iter().map(|c| c.coords[i]).collect())
            .collect();
        IntMatrixHom::new(other.source.clone(), self.target.clone(), m)
    }

    /// Bijectivity, checked by enumerating images.
    pub fn is_automorphism(&self) -> bool {
        if self.source != self.target {
            return false;
        }
        let n = self.source.order() as usize;
        let mut hit = vec![false; n];
        for e in self.source.elements() {
            let i = self.target.index_of(&self.apply(&e));
            if hit[i] {
                return false;
            }
            hit[i] = true;
        }
        true
    }
}

fn unit_multiplier(v: i64, n: i64) -> i64 {
    // u with gcd(u, n) = 1 and u * v = gcd(v, n) (mod n)
    let e = v.extended_gcd(&n);
    let step = n / e.gcd;
    let mut u = e.x.rem_euclid(n);
    while u.gcd(&n) != 1 {
        u = (u + step).rem_euclid(n);
    }
    u
}

/// One solution of `A x = b (mod n)`, or `None` when the system is inconsistent.
/// Rows are reduced into Howell form, so back substitution with zero free
/// variables succeeds exactly when a solution exists.
pub fn solve_mod(a: &[Vec<i64>], b: &[i64], n: i64) -> Option<Vec<i64>> {
    let cols = a.first().map_or(0, |r| r.len());
    if n == 1 {
        return Some(vec![0; cols]);
    }
    let mut pivots: Vec<Option<Vec<i64>>> = vec![None; cols];
    let mut queue: Vec<Vec<i64>> = a
        .iter()
        .zip(b)
        .map(|(r, &x)| r.iter().chain(std::iter::once(&x)).map(|v| v.rem_euclid(n)).collect())
        .collect();
    let scale = |r: &[i64], k: i64| -> Vec<i64> {
        r.iter().map(|&v| ((v as i128 * k as i128).rem_euclid(n as i128)) as i64).collect()
    };
    while let Some(mut row) = queue.pop() {
        let mut c = 0;
        loop {
            while c < cols && row[c] == 0 {
                c += 1;
            }
            if c == cols {
                if row[cols] != 0 {
                    return None;
                }
                break;
            }
            match pivots[c].take() {
                None => {
                    let p = scale(&row, unit_multiplier(row[c], n));
                    let g = p[c];
                    if g != 1 {
                        queue.push(scale(&p, n / g));
                    }
                    pivots[c] = Some(p);
                    break;
                }
                Some(p) => {
                    let (pv, v) = (p[c], row[c]);
                    let e = pv.extended_gcd(&v);
                    let g = e.gcd;
                    let comb = |x: i64, y: i64, s: i64, t: i64| {
                        ((x as i128 * s as i128 + y as i128 * t as i128).rem_euclid(n as i128)) as i64
                    };
                    let np: Vec<i64> = p.iter().zip(&row).map(|(&x, &y)| comb(x, y, e.x, e.y)).collect();
                    let rest: Vec<i64> = p.iter().zip(&row).map(|(&x, &y)| comb(x, y, v / g, -(pv / g))).collect();
                    if np[c] != pv {
                        queue.push(scale(&np, n / np[c]));
                    }
                    pivots[c] = Some(np);
                    row = rest;
                    c += 1;
                }
            }
        }
    }
    let mut x = vec![0i64; cols];
    for c in (0..cols).rev() {
        if let Some(p) = &pivots[c] {
            let mut rhs = p[cols] as i128;
            for j in c + 1..cols {
                rhs -= p[j] as i128 * x[j] as i128;
            }
            let rhs = rhs.rem_euclid(n as i128) as i64;
            if rhs % p[c] != 0 {
                return None;
            }
            x[c] = rhs / p[c];
        }
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn g(f: &[u64]) -> AbelianGroup {
        AbelianGroup::from_cyclic_factors(f).unwrap()
    }

    fn check_snf(m: &[Vec<i64>]) -> SmithForm {
        let mb = to_big(m);
        let cols = m.first().map_or(0, Vec::len);
        let snf = smith_normal_form_with_cols(&mb, cols);
        let umv = mat_mul(&mat_mul(&snf.u, &mb, m.len(), cols), &snf.v, cols, cols);
        assert_eq!(umv, snf.d);
        for (i, row) in snf.d.iter().enumerate() {
            for (j, x) in row.iter().enumerate() {
                if i != j {
                    assert!(x.is_zero());
                }
            }
        }
        let d = snf.diagonal();
        for w in d.windows(2) {
            if w[0].is_zero() {
                assert!(w[1].is_zero());
            } else {
                assert!(w[1].is_multiple_of(&w[0]));
            }
        }
        assert_eq!(determinant(&snf.u).abs(), BigInt::one());
        assert_eq!(determinant(&snf.v).abs(), BigInt::one());
        snf
    }

    #[test]
    fn snf_examples() {
        let d = |m: &[Vec<i64>]| check_snf(m).diagonal();
        assert_eq!(d(&[vec![2, 0], vec![0, 2]]), vec![BigInt::from(2), BigInt::from(2)]);
        assert_eq!(d(&[vec![0]]), vec![BigInt::zero()]);
        assert_eq!(d(&[vec![2, 4], vec![6, 8]]), vec![BigInt::from(2), BigInt::from(4)]);
        assert_eq!(d(&[vec![2, 0], vec![0, 3]]), vec![BigInt::from(1), BigInt::from(6)]);
    }

    #[test]
    fn normalization_of_cyclic_factors() {
        assert_eq!(g(&[2, 3]).invariant_factors(), &[6]);
        assert_eq!(g(&[4, 2]).invariant_factors(), &[2, 4]);
        assert_eq!(g(&[1, 1]), AbelianGroup::trivial());
        assert!(AbelianGroup::from_cyclic_factors(&[0]).is_err());
        assert_eq!(AbelianGroup::trivial().exponent(), 1);
        assert_eq!(AbelianGroup::trivial().order(), 1);
    }

    #[test]
    fn automorphism_examples() {
        let h = g(&[2, 2]);
        let hom = |m: Vec<Vec<i64>>| IntMatrixHom::new(h.clone(), h.clone(), m).unwrap();
        assert!(IntMatrixHom::identity(&h).is_automorphism());
        assert!(hom(vec![vec![0, 1], vec![1, 0]]).is_automorphism());
        assert!(!hom(vec![vec![0, 0], vec![0, 1]]).is_automorphism());
        // Z2 -> Z4 sending 1 to 1 is not well defined.
        assert!(IntMatrixHom::new(g(&[2]), g(&[4]), vec![vec![1]]).is_err());
        assert!(IntMatrixHom::new(g(&[2]), g(&[4]), vec![vec![2]]).is_ok());
    }

    #[test]
    fn quotient_examples() {
        let z4 = g(&[4]);
        assert_eq!(z4.quotient(&[AbelianElement::new(vec![2])]).unwrap(), g(&[2]));
        let k = g(&[2, 2]);
        assert_eq!(k.quotient(&[]).unwrap(), k);
        let h = g(&[2, 4]);
        // (2,1) in Z4xZ2 written in invariant order (Z2, Z4) is (1, 2).
        assert_eq!(h.quotient(&[AbelianElement::new(vec![1, 2])]).unwrap(), g(&[4]));
        assert!(h.quotient(&[AbelianElement::new(vec![2, 0])]).is_err());
    }

    #[test]
    fn square_type_examples() {
        assert!(g(&[2, 2]).is_square_type());
        assert!(!g(&[4]).is_square_type());
        assert!(!g(&[2, 4, 4]).is_square_type());
        assert!(AbelianGroup::trivial().is_square_type());
    }

    #[test]
    fn subgroup_type_matches_closure() {
        let h = g(&[2, 4]);
        let gens = [AbelianElement::new(vec![1, 2])];
        assert_eq!(h.subgroup_type(&gens).unwrap(), g(&[2]));
        assert_eq!(h.subgroup_elements(&gens).len(), 2);
        let all = [h.basis_element(0), h.basis_element(1)];
        assert_eq!(h.subgroup_type(&all).unwrap(), h);
    }

    #[test]
    fn index_roundtrip() {
        let h = g(&[2, 6]);
        for i in 0..h.order() as usize {
            assert_eq!(h.index_of(&h.element(i)), i);
        }
    }

    proptest! {
        #[test]
        fn snf_is_a_valid_decomposition(m in prop::collection::vec(prop::collection::vec(-30i64..30, 3), 1..5)) {
            check_snf(&m);
        }

        #[test]
        fn quotients_by_trivial_and_full(f in prop::collection::vec(1u64..9, 0..4)) {
            let h = g(&f);
            prop_assert_eq!(h.quotient(&[]).unwrap(), h.clone());
            let all: Vec<_> = (0..h.rank()).map(|i| h.basis_element(i)).collect();
            prop_assert_eq!(h.quotient(&all).unwrap(), AbelianGroup::trivial());
        }

        #[test]
        fn doubled_groups_are_square(f in prop::collection::vec(1u64..9, 0..3)) {
            let a = g(&f);
            prop_assert!(a.direct_product(&a).is_square_type());
        }
    }

    #[test]
    fn modular_solver() {
        assert_eq!(solve_mod(&[vec![2]], &[1], 4), None);
        let x = solve_mod(&[vec![2, 1], vec![0, 2]], &[3, 2], 4).unwrap();
        assert_eq!(((2 * x[0] + x[1]) % 4, (2 * x[1]) % 4), (3, 2));
        assert_eq!(solve_mod(&[vec![2, 0], vec![0, 0]], &[0, 1], 6), None);
        assert_eq!(solve_mod(&[vec![3]], &[0], 6), Some(vec![0]));
    }

    proptest! {
        #[test]
        fn modular_solver_finds_planted_solutions(
            n in 2i64..13,
            a in proptest::collection::vec(proptest::collection::vec(-20i64..20, 3), 1..6),
            x in proptest::collection::vec(0i64..12, 3),
        ) {
            let b: Vec<i64> = a.iter().map(|r| r.iter().zip(&x).map(|(p, q)| p * q).sum::<i64>()).collect();
            let sol = solve_mod(&a, &b, n).expect("planted solution exists");
            for (r, &bi) in a.iter().zip(&b) {
                let v: i64 = r.iter().zip(&sol).map(|(p, q)| p * q).sum();
                prop_assert_eq!((v - bi).rem_euclid(n), 0);
            }
        }
    }

    proptest! {
        #[test]
        fn modular_solver_agrees_with_brute_force(
            n in 2i64..9,
            a in proptest::collection::vec(proptest::collection::vec(0i64..9, 2), 1..4),
            b in proptest::collection::vec(0i64..9, 4),
        ) {
            let b = &b[..a.len()];
            let brute = (0..n).any(|x| (0..n).any(|y| {
                a.iter().zip(b).all(|(r, &bi)| (r[0] * x + r[1] * y - bi).rem_euclid(n) == 0)
            }));
            prop_assert_eq!(solve_mod(&a, b, n).is_some(), brute);
        }
    }
}
