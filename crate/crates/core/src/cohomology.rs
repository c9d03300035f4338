//! Schur multipliers of finite abelian groups, root-of-unity valued
//! 2-cocycles, and the alternating bicharacters (commutator forms) that
//! classify their cohomology classes.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::abelian::{integer_kernel, smith_normal_form_with_cols, AbelianElement, AbelianGroup, IntMatrixHom};
use crate::error::{Error, Result};
use crate::groups::Extension;
use crate::par;

/// `M(H) = H ∧ H`: one cyclic factor `gcd(m_i, m_j)` per pair `i < j`.
pub fn schur_multiplier(h: &AbelianGroup) -> AbelianGroup {
    let f = h.invariant_factors();
    let pairs: Vec<u64> = (0..f.len())
        .flat_map(|i| (i + 1..f.len()).map(move |j| f[i].gcd(&f[j])))
        .collect();
    AbelianGroup::from_cyclic_factors(&pairs).expect("positive factors")
}

/// Alternating bicharacter `φ(e_i, e_j) = ζ_{n_H}^{E[i][j]}` on the
/// invariant-factor basis of `H`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Bicharacter {
    #[serde(rename = "H")]
    group: AbelianGroup,
    #[serde(rename = "E")]
    exponents: Vec<Vec<i64>>,
}

impl Bicharacter {
    pub fn new(group: AbelianGroup, exponents: Vec<Vec<i64>>) -> Result<Self> {
        let k = group.rank();
        if exponents.len() != k || exponents.iter().any(|r| r.len() != k) {
            return Err(Error::InvalidBicharacter(format!("exponent matrix must be {k}x{k}")));
        }
        let n = group.exponent() as i64;
        let f = group.invariant_factors().to_vec();
        let e: Vec<Vec<i64>> = exponents
            .iter()
            .map(|r| r.iter().map(|x| x.rem_euclid(n)).collect())
            .collect();
        for i in 0..k {
            if e[i][i] != 0 {
                return Err(Error::InvalidBicharacter(format!("E[{i}][{i}] must vanish")));
            }
            for j in 0..k {
                if (e[i][j] + e[j][i]) % n != 0 {
                    return Err(Error::InvalidBicharacter(format!("E is not alternating at ({i},{j})")));
                }
                let step = n / f[i].gcd(&f[j]) as i64;
                if e[i][j] % step != 0 {
                    return Err(Error::InvalidBicharacter(format!(
                        "E[{i}][{j}] must be a multiple of {step}"
                    )));
                }
            }
        }
        Ok(Bicharacter { group, exponents: e })
    }

    pub fn trivial(group: &AbelianGroup) -> Self {
        let k = group.rank();
        Bicharacter { group: group.clone(), exponents: vec![vec![0; k]; k] }
    }

    /// `φ(e_0, e_1) = ζ_m` on `Z_m x Z_m`.
    pub fn standard_symplectic(m: u64) -> Result<Self> {
        let h = AbelianGroup::from_cyclic_factors(&[m, m])?;
        let n = h.exponent() as i64;
        Bicharacter::new(h, vec![vec![0, 1], vec![n - 1, 0]])
    }

    pub fn group(&self) -> &AbelianGroup {
        &self.group
    }

    pub fn exponents(&self) -> &[Vec<i64>] {
        &self.exponents
    }

    /// Root order `n_H = exp(H)` of the values.
    pub fn root_order(&self) -> u64 {
        self.group.exponent()
    }

    /// Exponent `x` with `φ(a, b) = ζ_{n_H}^x`, in `[0, n_H)`.
    pub fn evaluate(&self, a: &AbelianElement, b: &AbelianElement) -> i64 {
        let n = self.root_order() as i64;
        let mut s = 0i64;
        for (i, &ai) in a.coords.iter().enumerate() {
            if ai == 0 {
                continue;
            }
            for (j, &bj) in b.coords.iter().enumerate() {
                s = (s + ai * bj % n * self.exponents[i][j]) % n;
            }
        }
        s.rem_euclid(n)
    }

    pub fn is_trivial(&self) -> bool {
        self.exponents.iter().all(|r| r.iter().all(|&x| x == 0))
    }

    pub fn inverse(&self) -> Self {
        let n = self.root_order() as i64;
        Bicharacter {
            group: self.group.clone(),
            exponents: self.exponents.iter().map(|r| r.iter().map(|x| (-x).rem_euclid(n)).collect()).collect(),
        }
    }

    /// `(a, b) -> φ(f a, f b)` for an endomorphism `f` of `H`.
    pub fn pullback(&self, f: &IntMatrixHom) -> Self {
        let k = self.group.rank();
        let imgs: Vec<AbelianElement> = (0..k).map(|i| f.apply(&self.group.basis_element(i))).collect();
        let e = (0..k)
            .map(|i| (0..k).map(|j| self.evaluate(&imgs[i], &imgs[j])).collect())
            .collect();
        Bicharacter { group: self.group.clone(), exponents: e }
    }
}

/// Normalized 2-cocycle `α(h1, h2) = ζ_n^{table[h1][h2]}` with trivial
/// action, indexed by `AbelianGroup::index_of`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cocycle2H {
    #[serde(rename = "H")]
    group: AbelianGroup,
    n: u64,
    table: Vec<Vec<i64>>,
}

impl Cocycle2H {
    pub fn new(group: AbelianGroup, n: u64, table: Vec<Vec<i64>>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidBicharacter("root order must be positive".into()));
        }
        let size = group.order() as usize;
        if table.len() != size || table.iter().any(|r| r.len() != size) {
            return Err(Error::DimensionMismatch(format!("cocycle table must be {size}x{size}")));
        }
        let table: Vec<Vec<i64>> = table
            .iter()
            .map(|r| r.iter().map(|x| x.rem_euclid(n as i64)).collect())
            .collect();
        let c = Cocycle2H { group, n, table };
        c.validate()?;
        Ok(c)
    }

    pub fn trivial(group: &AbelianGroup, n: u64) -> Self {
        let s = group.order() as usize;
        Cocycle2H { group: group.clone(), n, table: vec![vec![0; s]; s] }
    }

    fn validate(&self) -> Result<()> {
        let s = self.table.len();
        for a in 0..s {
            if self.table[0][a] != 0 {
                return Err(Error::NotNormalized(0, a));
            }
            if self.table[a][0] != 0 {
                return Err(Error::NotNormalized(a, 0));
            }
        }
        let sum = sum_table(&self.group);
        let n = self.n as i64;
        let t = &self.table;
        let bad = par::find_first(s * s * s, |x| {
            let (a, b, c) = (x / (s * s), (x / s) % s, x % s);
            let lhs = t[a][b] + t[sum[a][b]][c];
            let rhs = t[b][c] + t[a][sum[b][c]];
            ((lhs - rhs).rem_euclid(n) != 0).then_some((a, b, c))
        });
        match bad {
            Some((_, (a, b, c))) => Err(Error::CocycleViolation(a, b, c)),
            None => Ok(()),
        }
    }

    pub fn group(&self) -> &AbelianGroup {
        &self.group
    }

    pub fn root_order(&self) -> u64 {
        self.n
    }

    pub fn table(&self) -> &[Vec<i64>] {
        &self.table
    }

    pub fn value(&self, a: usize, b: usize) -> i64 {
        self.table[a][b]
    }

    /// Same cocycle with values read in `μ_m`, `n | m`.
    pub fn with_root_order(&self, m: u64) -> Result<Self> {
        if !m.is_multiple_of(self.n) {
            return Err(Error::ConductorMismatch(self.n, m));
        }
        let f = (m / self.n) as i64;
        Ok(Cocycle2H {
            group: self.group.clone(),
            n: m,
            table: self.table.iter().map(|r| r.iter().map(|x| x * f).collect()).collect(),
        })
    }
}

pub(crate) fn sum_table(h: &AbelianGroup) -> Vec<Vec<usize>> {
    let elems: Vec<AbelianElement> = h.elements().collect();
    elems
        .iter()
        .map(|a| elems.iter().map(|b| h.index_of(&h.add(a, b))).collect())
        .collect()
}

/// `φ(h1 ∧ h2) = α(h1, h2) α(h2, h1)^{-1}`, rescaled to `μ_{n_H}`.
pub fn commutator_form(alpha: &Cocycle2H) -> Result<Bicharacter> {
    let h = &alpha.group;
    let k = h.rank();
    let n = alpha.n as i64;
    let nh = h.exponent() as i64;
    let basis: Vec<usize> = (0..k).map(|i| h.index_of(&h.basis_element(i))).collect();
    let mut e = vec![vec![0i64; k]; k];
    for i in 0..k {
        for j in 0..k {
            let x = (alpha.table[basis[i]][basis[j]] - alpha.table[basis[j]][basis[i]]).rem_euclid(n);
            if (x * nh) % n != 0 {
                return Err(Error::Internal(format!(
                    "commutator value at ({i},{j}) is not an exp(H)-th root of unity"
                )));
            }
            e[i][j] = x * nh / n;
        }
    }
    Bicharacter::new(h.clone(), e).map_err(|err| Error::Internal(format!("commutator form: {err}")))
}

/// Upper-triangular section `α(a, b) = ∏_{i<j} φ(e_i, e_j)^{a_i b_j}`.
pub fn cocycle_from_bicharacter(phi: &Bicharacter) -> Cocycle2H {
    let h = &phi.group;
    let n = h.exponent() as i64;
    let k = h.rank();
    let elems: Vec<AbelianElement> = h.elements().collect();
    let table = elems
        .iter()
        .map(|a| {
            elems
                .iter()
                .map(|b| {
                    let mut s = 0i64;
                    for i in 0..k {
                        for j in i + 1..k {
                            s = (s + a.coords[i] * b.coords[j] % n * phi.exponents[i][j]) % n;
                        }
                    }
                    s.rem_euclid(n)
                })
                .collect()
        })
        .collect();
    Cocycle2H { group: h.clone(), n: n as u64, table }
}

/// Solves `α(a, b) = γ(a) γ(b) γ(a b)^{-1}` for `γ: H -> μ_n` through the
/// Smith form of the integer system; returns the exponents of `γ` when a
/// solution exists.
pub fn is_coboundary(alpha: &Cocycle2H) -> Option<Vec<i64>> {
    let h = &alpha.group;
    let s = h.order() as usize;
    let n = alpha.n as i64;
    let sum = sum_table(h);
    let mut rows: Vec<Vec<BigInt>> = Vec::new();
    let mut rhs: Vec<i64> = Vec::new();
    for a in 0..s {
        for b in 0..s {
            let mut r = vec![BigInt::zero(); s];
            r[a] += 1;
            r[b] += 1;
            r[sum[a][b]] -= 1;
            if r.iter().all(Zero::is_zero) && alpha.table[a][b] == 0 {
                continue;
            }
            rows.push(r);
            rhs.push(alpha.table[a][b]);
        }
    }
    let snf = smith_normal_form_with_cols(&rows, s);
    let m = BigInt::from(n);
    let c: Vec<BigInt> = snf
        .u
        .iter()
        .map(|u_row| {
            u_row
                .iter()
                .zip(&rhs)
                .fold(BigInt::zero(), |acc, (u, &t)| acc + u * t)
                .mod_floor(&m)
        })
        .collect();
    let mut y = vec![BigInt::zero(); s];
    for (i, ci) in c.iter().enumerate() {
        let d = if i < s { snf.d[i][i].clone() } else { BigInt::zero() };
        if d.is_zero() {
            if !ci.is_zero() {
                return None;
            }
            continue;
        }
        let g = d.gcd(&m);
        if !ci.is_multiple_of(&g) {
            return None;
        }
        let modulus = &m / &g;
        let inv = mod_inverse(&(&d / &g), &modulus);
        y[i] = ((ci / &g) * inv).mod_floor(&modulus);
    }
    let gamma: Vec<i64> = (0..s)
        .map(|i| {
            snf.v[i]
                .iter()
                .zip(&y)
                .fold(BigInt::zero(), |acc, (v, yi)| acc + v * yi)
                .mod_floor(&m)
                .to_i64()
                .expect("reduced mod n")
        })
        .collect();
    debug_assert!((0..s).all(|a| (0..s).all(|b| {
        (gamma[a] + gamma[b] - gamma[sum[a][b]] - alpha.table[a][b]).rem_euclid(n) == 0
    })));
    Some(gamma)
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> BigInt {
    if *m == BigInt::from(1) {
        return BigInt::zero();
    }
    let e = a.mod_floor(m).extended_gcd(m);
    e.x.mod_floor(m)
}

/// `φ(f a, f b) = φ(a, b)` for every automorphism in `actions`.
pub fn is_invariant_under(phi: &Bicharacter, actions: &[IntMatrixHom]) -> bool {
    actions.iter().all(|f| phi.pullback(f) == *phi)
}

pub fn q_invariant(phi: &Bicharacter, ext: &Extension) -> Result<bool> {
    if ext.h() != phi.group() {
        return Err(Error::InvalidBicharacter("bicharacter lives on a different group".into()));
    }
    Ok(is_invariant_under(phi, ext.action()))
}

/// Every alternating bicharacter on `h`, lexicographic in `E`.
pub fn all_bicharacters(h: &AbelianGroup) -> Vec<Bicharacter> {
    invariant_bicharacters(h, &[])
}

pub fn enumerate_invariant_bicharacters(ext: &Extension) -> Vec<Bicharacter> {
    invariant_bicharacters(ext.h(), ext.action())
}

/// Exhaustive enumeration of bicharacters fixed by `actions`, lexicographic in `E`.
pub fn invariant_bicharacters(h: &AbelianGroup, actions: &[IntMatrixHom]) -> Vec<Bicharacter> {
    let f = h.invariant_factors();
    let k = f.len();
    let n = h.exponent() as i64;
    let pairs: Vec<(usize, usize)> = (0..k).flat_map(|i| (i + 1..k).map(move |j| (i, j))).collect();
    let radices: Vec<u64> = pairs.iter().map(|&(i, j)| f[i].gcd(&f[j])).collect();
    let total: u64 = radices.iter().product();
    let candidates = par::map_range(total as usize, |mut idx| {
        let mut e = vec![vec![0i64; k]; k];
        for (p, &(i, j)) in pairs.iter().enumerate().rev() {
            let r = radices[p] as usize;
            let t = (idx % r) as i64;
            idx /= r;
            let v = t * (n / r as i64);
            e[i][j] = v;
            e[j][i] = (-v).rem_euclid(n);
        }
        let phi = Bicharacter { group: h.clone(), exponents: e };
        is_invariant_under(&phi, actions).then_some(phi)
    });
    candidates.into_iter().flatten().collect()
}

/// The radical `S = {s : φ(s, h) = 1 for all h}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Radical {
    pub generators: Vec<AbelianElement>,
    /// Indices (in `H`) of all elements of `S`, sorted.
    pub elements: Vec<usize>,
    #[serde(rename = "type")]
    pub group: AbelianGroup,
}

impl Radical {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, index: usize) -> bool {
        self.elements.binary_search(&index).is_ok()
    }
}

/// Integer nullspace of `s ↦ (Σ_i s_i E[i][j])_j mod n_H`, reduced into `H`.
pub fn radical(phi: &Bicharacter) -> Radical {
    let h = &phi.group;
    let k = h.rank();
    let n = h.exponent() as i64;
    let a: Vec<Vec<BigInt>> = (0..k)
        .map(|j| {
            let mut row: Vec<BigInt> = (0..k).map(|i| BigInt::from(phi.exponents[i][j])).collect();
            row.extend((0..k).map(|l| BigInt::from(if l == j { -n } else { 0 })));
            row
        })
        .collect();
    let generators: Vec<AbelianElement> = integer_kernel(&a, 2 * k)
        .into_iter()
        .map(|v| {
            let c: Vec<i64> = v[..k]
                .iter()
                .zip(h.invariant_factors())
                .map(|(x, &m)| x.mod_floor(&BigInt::from(m)).to_i64().unwrap())
                .collect();
            AbelianElement::new(c)
        })
        .filter(|e| e.coords.iter().any(|&c| c != 0))
        .collect();
    let elements = h.subgroup_elements(&generators);
    let group = h.subgroup_type(&generators).expect("generators lie in H");
    Radical { generators, elements, group }
}

pub fn is_nondegenerate(phi: &Bicharacter) -> bool {
    radical(phi).order() == 1
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{dihedral_extension, FiniteGroup};

    fn g(f: &[u64]) -> AbelianGroup {
        AbelianGroup::from_cyclic_factors(f).unwrap()
    }

    #[test]
    fn schur_examples() {
        assert!(schur_multiplier(&g(&[12])).is_trivial());
        assert_eq!(schur_multiplier(&g(&[2, 2])), g(&[2]));
        assert_eq!(schur_multiplier(&g(&[4, 2, 2])), g(&[2, 2, 2]));
        assert_eq!(all_bicharacters(&g(&[2, 2])).len(), 2);
    }

    #[test]
    fn bicharacter_validation() {
        let h = g(&[2, 4]);
        assert!(Bicharacter::new(h.clone(), vec![vec![0, 2], vec![2, 0]]).is_ok());
        // value of order 4 on a pair with gcd 2
        assert!(Bicharacter::new(h.clone(), vec![vec![0, 1], vec![3, 0]]).is_err());
        assert!(Bicharacter::new(h.clone(), vec![vec![1, 0], vec![0, 0]]).is_err());
        assert!(Bicharacter::new(g(&[3, 3]), vec![vec![0, 1], vec![1, 0]]).is_err());
    }

    #[test]
    fn commutator_form_examples() {
        let h = g(&[2, 2]);
        assert!(commutator_form(&Cocycle2H::trivial(&h, 2)).unwrap().is_trivial());
        // α(a, b) = (-1)^{a_1 b_2}
        let alpha = cocycle_from_bicharacter(&Bicharacter::standard_symplectic(2).unwrap());
        let phi = commutator_form(&alpha).unwrap();
        assert_eq!(phi.exponents(), &[vec![0, 1], vec![1, 0]]);
        // α((1,0),(0,1)) = -1, α((0,1),(1,0)) = 1
        let i10 = h.index_of(&AbelianElement::new(vec![1, 0]));
        let i01 = h.index_of(&AbelianElement::new(vec![0, 1]));
        assert_eq!(alpha.value(i10, i01), 1);
        assert_eq!(alpha.value(i01, i10), 0);
        // symmetric cocycle on Z4: carry cocycle, scaled
        let z4 = g(&[4]);
        let carry: Vec<Vec<i64>> = (0..4).map(|j| (0..4).map(|k| (j + k) / 4).collect()).collect();
        let a = Cocycle2H::new(z4, 4, carry).unwrap();
        assert!(commutator_form(&a).unwrap().is_trivial());
    }

    #[test]
    fn roundtrip_exhaustive_z4_z2() {
        let h = g(&[2, 4]);
        let all = all_bicharacters(&h);
        assert_eq!(all.len(), 2);
        for phi in &all {
            let a = cocycle_from_bicharacter(phi);
            let a = Cocycle2H::new(a.group().clone(), a.root_order(), a.table().to_vec()).unwrap();
            assert_eq!(&commutator_form(&a).unwrap(), phi);
        }
        assert!(all[0].is_trivial());
    }

    #[test]
    fn coboundary_examples() {
        let z2 = g(&[2]);
        assert_eq!(is_coboundary(&Cocycle2H::trivial(&z2, 2)), Some(vec![0, 0]));
        let a = Cocycle2H::new(z2.clone(), 4, vec![vec![0, 0], vec![0, 2]]).unwrap();
        let gamma = is_coboundary(&a).unwrap();
        assert_eq!(gamma[0], 0);
        assert_eq!((2 * gamma[1]).rem_euclid(4), 2);
        // same cocycle with μ_2 coefficients is not a coboundary
        let b = Cocycle2H::new(z2, 2, vec![vec![0, 0], vec![0, 1]]).unwrap();
        assert_eq!(is_coboundary(&b), None);
        let q = cocycle_from_bicharacter(&Bicharacter::standard_symplectic(2).unwrap());
        assert_eq!(is_coboundary(&q), None);
    }

    #[test]
    fn invalid_cocycles_rejected() {
        let z2 = g(&[2]);
        assert_eq!(
            Cocycle2H::new(z2.clone(), 2, vec![vec![0, 1], vec![0, 0]]),
            Err(Error::NotNormalized(0, 1))
        );
        let z3 = g(&[3]);
        let bad = vec![vec![0, 0, 0], vec![0, 1, 0], vec![0, 0, 0]];
        assert!(matches!(Cocycle2H::new(z3, 3, bad), Err(Error::CocycleViolation(..))));
    }

    #[test]
    fn invariance_examples() {
        let d4 = dihedral_extension();
        let nontrivial = Bicharacter::new(d4.h().clone(), vec![vec![0, 1], vec![1, 0]]).unwrap();
        assert!(q_invariant(&nontrivial, &d4).unwrap());
        assert!(q_invariant(&Bicharacter::trivial(d4.h()), &d4).unwrap());
        assert_eq!(enumerate_invariant_bicharacters(&d4).len(), 2);

        let h = g(&[3, 3]);
        let swap = IntMatrixHom::new(h.clone(), h.clone(), vec![vec![0, 1], vec![1, 0]]).unwrap();
        let ext = Extension::split(h.clone(), FiniteGroup::cyclic(2), vec![IntMatrixHom::identity(&h), swap])
            .unwrap();
        let phi = Bicharacter::standard_symplectic(3).unwrap();
        assert!(!q_invariant(&phi, &ext).unwrap());
        assert_eq!(enumerate_invariant_bicharacters(&ext).len(), 1);

        let z4 = g(&[4]);
        let ext = Extension::split(z4.clone(), FiniteGroup::cyclic(1), vec![IntMatrixHom::identity(&z4)]).unwrap();
        assert_eq!(enumerate_invariant_bicharacters(&ext).len(), 1);
    }

    #[test]
    fn radical_examples() {
        let h = g(&[2, 2]);
        assert_eq!(radical(&Bicharacter::trivial(&h)).order(), 4);
        let phi = Bicharacter::standard_symplectic(2).unwrap();
        assert_eq!(radical(&phi).order(), 1);
        assert!(is_nondegenerate(&phi));
        let h3 = g(&[2, 2, 2]);
        let phi = Bicharacter::new(h3.clone(), vec![vec![0, 1, 0], vec![1, 0, 0], vec![0, 0, 0]]).unwrap();
        let s = radical(&phi);
        assert_eq!(s.group, g(&[2]));
        assert_eq!(s.elements, vec![0, h3.index_of(&AbelianElement::new(vec![0, 0, 1]))]);
        for m in 2..=5 {
            assert!(is_nondegenerate(&Bicharacter::standard_symplectic(m).unwrap()));
        }
        assert!(!is_nondegenerate(&Bicharacter::trivial(&g(&[3]))));
        assert!(is_nondegenerate(&Bicharacter::trivial(&AbelianGroup::trivial())));
    }
}
