//! Exact arithmetic in `Q(ζ_n)`: elements are rational polynomials in `ζ_n`
//! of degree below `φ(n)`, reduced modulo the cyclotomic polynomial `Φ_n`.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

type Poly = Vec<BigRational>;

fn phi_cache() -> &'static RwLock<HashMap<u64, Arc<Vec<BigInt>>>> {
    static CACHE: OnceLock<RwLock<HashMap<u64, Arc<Vec<BigInt>>>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// `Φ_n` as integer coefficients, lowest degree first. Cached per `n`.
pub fn cyclotomic_polynomial(n: u64) -> Arc<Vec<BigInt>> {
    assert!(n >= 1, "conductor must be positive");
    if let Some(p) = phi_cache().read().expect("cache lock").get(&n) {
        return p.clone();
    }
    // x^n - 1 divided by Φ_d for every proper divisor d.
    let mut num: Vec<BigInt> = vec![BigInt::zero(); n as usize + 1];
    num[0] = -BigInt::one();
    num[n as usize] = BigInt::one();
    for d in (1..n).filter(|d| n.is_multiple_of(*d)) {
        let div = cyclotomic_polynomial(d);
        num = exact_int_div(&num, &div);
    }
    let p = Arc::new(num);
    // Concurrent fills compute the same value; last writer wins harmlessly.
    phi_cache().write().expect("cache lock").insert(n, p.clone());
    p
}

/// Quotient of integer polynomials when the divisor is monic and divides exactly.
fn exact_int_div(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let mut r = num.to_vec();
    let dd = den.len() - 1;
    let mut q = vec![BigInt::zero(); r.len() - dd];
    for i in (0..q.len()).rev() {
        let c = r[i + dd].clone();
        if c.is_zero() {
            continue;
        }
        for (j, d) in den.iter().enumerate() {
            r[i + j] -= &c * d;
        }
        q[i] = c;
    }
    debug_assert!(r.iter().all(Zero::is_zero));
    q
}

pub fn euler_phi(n: u64) -> usize {
    cyclotomic_polynomial(n).len() - 1
}

fn reduce_mod_phi(mut p: Poly, n: u64) -> Poly {
    let phi = cyclotomic_polynomial(n);
    let d = phi.len() - 1;
    for i in (d..p.len()).rev() {
        let c = std::mem::replace(&mut p[i], BigRational::zero());
        if c.is_zero() {
            continue;
        }
        for (j, f) in phi.iter().enumerate().take(d) {
            if !f.is_zero() {
                p[i - d + j] -= &c * BigRational::from_integer(f.clone());
            }
        }
    }
    p.resize(d, BigRational::zero());
    p
}

/// An element of `Q(ζ_n)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CyclotomicNumber {
    n: u64,
    coeffs: Vec<BigRational>,
}

impl CyclotomicNumber {
    pub fn zero(n: u64) -> Self {
        CyclotomicNumber { n, coeffs: vec![BigRational::zero(); euler_phi(n)] }
    }

    pub fn one(n: u64) -> Self {
        Self::from_rational(n, BigRational::one())
    }

    pub fn from_integer(n: u64, k: i64) -> Self {
        Self::from_rational(n, BigRational::from_integer(BigInt::from(k)))
    }

    pub fn from_rational(n: u64, q: BigRational) -> Self {
        let mut z = Self::zero(n);
        z.coeffs[0] = q;
        z
    }

    /// Builds an element from an arbitrary-length polynomial in `ζ_n`.
    pub fn from_poly(n: u64, poly: Vec<BigRational>) -> Self {
        CyclotomicNumber { n, coeffs: reduce_mod_phi(poly, n) }
    }

    pub fn from_coeffs(n: u64, coeffs: Vec<BigRational>) -> Result<Self> {
        if coeffs.len() != euler_phi(n) {
            return Err(Error::DimensionMismatch(format!(
                "Q(zeta_{n}) needs {} coefficients, got {}",
                euler_phi(n),
                coeffs.len()
            )));
        }
        Ok(CyclotomicNumber { n, coeffs })
    }

    pub fn conductor(&self) -> u64 {
        self.n
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Zero::is_zero)
    }

    /// Rewrites in `Q(ζ_m)` for a multiple `m` of the conductor.
    pub fn promote(&self, m: u64) -> Result<Self> {
        if !m.is_multiple_of(self.n) {
            return Err(Error::ConductorMismatch(self.n, m));
        }
        if m == self.n {
            return Ok(self.clone());
        }
        let step = (m / self.n) as usize;
        let mut p = vec![BigRational::zero(); step * self.coeffs.len().max(1)];
        for (i, c) in self.coeffs.iter().enumerate() {
            p[i * step] = c.clone();
        }
        Ok(Self::from_poly(m, p))
    }

    fn aligned(a: &Self, b: &Self) -> (Self, Self) {
        if a.n == b.n {
            (a.clone(), b.clone())
        } else {
            let m = a.n.lcm(&b.n);
            (a.promote(m).unwrap(), b.promote(m).unwrap())
        }
    }

    pub fn inverse(&self) -> Result<Self> {
        invert(self)
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.n);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }
}

/// `ζ_n^j` reduced modulo `Φ_n`.
pub fn zeta_power(n: u64, j: i64) -> CyclotomicNumber {
    let e = j.rem_euclid(n as i64) as usize;
    let mut p = vec![BigRational::zero(); e + 1];
    p[e] = BigRational::one();
    CyclotomicNumber::from_poly(n, p)
}

fn poly_trim(p: &mut Poly) {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
}

/// `(q, r)` with `a = q b + r`, `deg r < deg b`; `b` must be nonzero and trimmed.
fn poly_divmod(a: &[BigRational], b: &[BigRational]) -> (Poly, Poly) {
    let mut r = a.to_vec();
    poly_trim(&mut r);
    let db = b.len() - 1;
    if r.len() < b.len() {
        return (vec![], r);
    }
    let lead = b[db].clone();
    let mut q = vec![BigRational::zero(); r.len() - db];
    for i in (0..q.len()).rev() {
        let c = &r[i + db] / &lead;
        if c.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            r[i + j] -= &c * bj;
        }
        q[i] = c;
    }
    r.truncate(db);
    poly_trim(&mut r);
    (q, r)
}

fn poly_mul(a: &[BigRational], b: &[BigRational]) -> Poly {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                out[i + j] += x * y;
            }
        }
    }
    out
}

fn poly_sub(a: &[BigRational], b: &[BigRational]) -> Poly {
    let mut out = vec![BigRational::zero(); a.len().max(b.len())];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, y) in b.iter().enumerate() {
        out[i] -= y;
    }
    poly_trim(&mut out);
    out
}

/// Inverse via the extended Euclidean algorithm against `Φ_n`.
pub fn invert(x: &CyclotomicNumber) -> Result<CyclotomicNumber> {
    if x.is_zero() {
        return Err(Error::DivisionByZero(x.n));
    }
    let phi: Poly = cyclotomic_polynomial(x.n)
        .iter()
        .map(|c| BigRational::from_integer(c.clone()))
        .collect();
    // invariant: s_i * x ≡ r_i (mod Φ_n)
    let (mut r0, mut r1) = (phi, x.coeffs.clone());
    poly_trim(&mut r1);
    let (mut s0, mut s1): (Poly, Poly) = (vec![], vec![BigRational::one()]);
    while r1.len() > 1 {
        let (q, r) = poly_divmod(&r0, &r1);
        let s = poly_sub(&s0, &poly_mul(&q, &s1));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s);
    }
    // r1 is a nonzero constant since Φ_n is irreducible.
    let c = r1
        .first()
        .cloned()
        .filter(|c| !c.is_zero())
        .ok_or_else(|| Error::Internal("gcd with cyclotomic polynomial is not a unit".into()))?;
    let inv: Poly = s1.iter().map(|a| a / &c).collect();
    Ok(CyclotomicNumber::from_poly(x.n, inv))
}

impl Add for &CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn add(self, rhs: &CyclotomicNumber) -> CyclotomicNumber {
        if self.n != rhs.n {
            let (a, b) = CyclotomicNumber::aligned(self, rhs);
            return &a + &b;
        }
        CyclotomicNumber {
            n: self.n,
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn sub(self, rhs: &CyclotomicNumber) -> CyclotomicNumber {
        if self.n != rhs.n {
            let (a, b) = CyclotomicNumber::aligned(self, rhs);
            return &a - &b;
        }
        CyclotomicNumber {
            n: self.n,
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Mul for &CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn mul(self, rhs: &CyclotomicNumber) -> CyclotomicNumber {
        if self.n != rhs.n {
            let (a, b) = CyclotomicNumber::aligned(self, rhs);
            return &a * &b;
        }
        CyclotomicNumber::from_poly(self.n, poly_mul(&self.coeffs, &rhs.coeffs))
    }
}

impl Neg for &CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn neg(self) -> CyclotomicNumber {
        CyclotomicNumber { n: self.n, coeffs: self.coeffs.iter().map(|a| -a).collect() }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr for CyclotomicNumber {
            type Output = CyclotomicNumber;
            fn $f(self, rhs: CyclotomicNumber) -> CyclotomicNumber {
                (&self).$f(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn neg(self) -> CyclotomicNumber {
        -&self
    }
}

impl fmt::Display for CyclotomicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            match (i, a.is_one()) {
                (0, _) => write!(f, "{a}")?,
                (_, true) => write!(f, "z{}", pow_suffix(i))?,
                (_, false) => write!(f, "{a}*z{}", pow_suffix(i))?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

fn pow_suffix(i: usize) -> String {
    if i == 1 {
        String::new()
    } else {
        format!("^{i}")
    }
}

#[derive(Serialize, Deserialize)]
struct RawCyclotomic {
    n: u64,
    coeffs: Vec<(String, String)>,
}

impl Serialize for CyclotomicNumber {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        RawCyclotomic {
            n: self.n,
            coeffs: self.coeffs.iter().map(|c| (c.numer().to_string(), c.denom().to_string())).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for CyclotomicNumber {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = RawCyclotomic::deserialize(d)?;
        if raw.n == 0 {
            return Err(D::Error::custom("conductor must be positive"));
        }
        let coeffs = raw
            .coeffs
            .iter()
            .map(|(a, b)| {
                let a: BigInt = a.parse().map_err(D::Error::custom)?;
                let b: BigInt = b.parse().map_err(D::Error::custom)?;
                if b.is_zero() {
                    return Err(D::Error::custom("zero denominator"));
                }
                Ok(BigRational::new(a, b))
            })
            .collect::<std::result::Result<Vec<_>, _>>()?;
        CyclotomicNumber::from_coeffs(raw.n, coeffs).map_err(D::Error::custom)
    }
}

/// Solutions of a linear system: a particular solution plus a nullspace basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LinearSolution {
    Inconsistent,
    Solutions { particular: Vec<CyclotomicNumber>, nullspace: Vec<Vec<CyclotomicNumber>> },
}

/// Reduced row-echelon form in place; returns pivot columns.
pub fn rref(m: &mut [Vec<CyclotomicNumber>], cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        let Some(p) = (row..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(row, p);
        let inv = invert(&m[row][col]).expect("pivot is nonzero");
        if !inv.is_one() {
            for x in m[row].iter_mut().skip(col) {
                *x = &*x * &inv;
            }
        }
        let pivot_row = m[row].clone();
        for (r, other) in m.iter_mut().enumerate() {
            if r == row || other[col].is_zero() {
                continue;
            }
            let f = other[col].clone();
            for c in col..other.len() {
                if !pivot_row[c].is_zero() {
                    other[c] = &other[c] - &(&f * &pivot_row[c]);
                }
            }
        }
        pivots.push(col);
        row += 1;
        if row == m.len() {
            break;
        }
    }
    pivots
}

/// Rank by forward elimination, streaming rows so tall systems stay cheap.
pub fn rank(rows: &[Vec<CyclotomicNumber>], cols: usize) -> usize {
    echelon_basis(rows.iter().cloned(), cols).len()
}

/// Row-echelon basis of the span of `rows`, each row normalized at its pivot.
pub fn echelon_basis(
    rows: impl IntoIterator<Item = Vec<CyclotomicNumber>>,
    cols: usize,
) -> Vec<(usize, Vec<CyclotomicNumber>)> {
    let mut basis: Vec<(usize, Vec<CyclotomicNumber>)> = Vec::new();
    for mut r in rows {
        for (pc, b) in &basis {
            if r[*pc].is_zero() {
                continue;
            }
            let f = r[*pc].clone();
            for c in *pc..cols {
                if !b[c].is_zero() {
                    r[c] = &r[c] - &(&f * &b[c]);
                }
            }
        }
        if let Some(pc) = (0..cols).find(|&c| !r[c].is_zero()) {
            let inv = invert(&r[pc]).expect("nonzero");
            for x in r.iter_mut().skip(pc) {
                *x = &*x * &inv;
            }
            basis.push((pc, r));
            if basis.len() == cols {
                break;
            }
        }
    }
    basis
}

/// Nullspace basis of `a` (rows of length `cols`) over `Q(ζ_n)`.
pub fn nullspace(a: &[Vec<CyclotomicNumber>], cols: usize, n: u64) -> Vec<Vec<CyclotomicNumber>> {
    let basis = echelon_basis(a.iter().cloned(), cols);
    let mut m: Vec<Vec<CyclotomicNumber>> = basis.into_iter().map(|(_, r)| r).collect();
    let pivots = rref(&mut m, cols);
    free_columns(&m, &pivots, cols, n)
}

fn free_columns(
    m: &[Vec<CyclotomicNumber>],
    pivots: &[usize],
    cols: usize,
    n: u64,
) -> Vec<Vec<CyclotomicNumber>> {
    (0..cols)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = vec![CyclotomicNumber::zero(n); cols];
            v[free] = CyclotomicNumber::one(n);
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = -&m[r][free];
            }
            v
        })
        .collect()
}

/// Solves `a x = b` exactly.
pub fn solve_linear_system(
    a: &[Vec<CyclotomicNumber>],
    b: &[CyclotomicNumber],
    n: u64,
) -> Result<LinearSolution> {
    if a.len() != b.len() {
        return Err(Error::DimensionMismatch("rows of A and length of b differ".into()));
    }
    let cols = a.first().map_or(0, Vec::len);
    if a.iter().any(|r| r.len() != cols) {
        return Err(Error::DimensionMismatch("ragged matrix".into()));
    }
    let mut aug: Vec<Vec<CyclotomicNumber>> = a
        .iter()
        .zip(b)
        .map(|(r, x)| {
            let mut row: Vec<CyclotomicNumber> = r.iter().map(|c| c.promote(n)).collect::<Result<_>>()?;
            row.push(x.promote(n)?);
            Ok(row)
        })
        .collect::<Result<_>>()?;
    let pivots = rref(&mut aug, cols + 1);
    if pivots.last() == Some(&cols) {
        return Ok(LinearSolution::Inconsistent);
    }
    let mut particular = vec![CyclotomicNumber::zero(n); cols];
    for (r, &pc) in pivots.iter().enumerate() {
        particular[pc] = aug[r][cols].clone();
    }
    let nullspace = free_columns(&aug, &pivots, cols, n);
    Ok(LinearSolution::Solutions { particular, nullspace })
}
