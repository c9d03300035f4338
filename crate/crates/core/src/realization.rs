//! Finite presentation data for generic crossed products realizing a triple
//! `([β], φ, d)`: every structure constant is a monomial unit
//! `ζ_n^r · y^v` over a fixed set of formal variables.

use std::fmt::Write as _;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::abelian::solve_mod;
use crate::cohomology::{cocycle_from_bicharacter, Bicharacter};
use crate::error::{Error, Result};
use crate::groups::FiniteGroup;
use crate::par;
use crate::structure::RealizableTriple;

/// `ζ_n^root · Π_v var_v^{laurent[v]}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MonomialCoefficient {
    pub root: i64,
    pub laurent: Vec<i64>,
}

impl MonomialCoefficient {
    pub fn one(vars: usize) -> Self {
        MonomialCoefficient { root: 0, laurent: vec![0; vars] }
    }

    pub fn root_of_unity(root: i64, vars: usize, n: u64) -> Self {
        MonomialCoefficient { root: root.rem_euclid(n as i64), laurent: vec![0; vars] }
    }

    pub fn is_one(&self) -> bool {
        self.root == 0 && self.laurent.iter().all(|&e| e == 0)
    }

    pub fn is_root(&self) -> bool {
        self.laurent.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Self, n: u64) -> Self {
        MonomialCoefficient {
            root: (self.root + other.root).rem_euclid(n as i64),
            laurent: self.laurent.iter().zip(&other.laurent).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn inv(&self, n: u64) -> Self {
        MonomialCoefficient {
            root: (-self.root).rem_euclid(n as i64),
            laurent: self.laurent.iter().map(|a| -a).collect(),
        }
    }

    /// Substitution `var_v -> var_{perm[v]}`.
    pub fn permute(&self, perm: &[usize]) -> Self {
        let mut laurent = vec![0; self.laurent.len()];
        for (v, &e) in self.laurent.iter().enumerate() {
            laurent[perm[v]] += e;
        }
        MonomialCoefficient { root: self.root, laurent }
    }

    pub fn render(&self, n: u64, vars: &[String]) -> String {
        let mut parts = Vec::new();
        if self.root != 0 {
            if 2 * self.root == n as i64 {
                parts.push("-1".to_string());
            } else {
                let g = self.root.gcd(&(n as i64));
                let (r, m) = (self.root / g, n as i64 / g);
                parts.push(if r == 1 { format!("ζ{m}") } else { format!("ζ{m}^{r}") });
            }
        }
        for (v, &e) in self.laurent.iter().enumerate() {
            match e {
                0 => {}
                1 => parts.push(vars[v].clone()),
                _ => parts.push(format!("{}^{e}", vars[v])),
            }
        }
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("·")
        }
    }
}

/// `x_b x_{b'} = gamma[b][b'] · x_{bb'}` over basis symbols `b = s·|G| + g`,
/// where `s = i·d + j` stands for the symbol-algebra part `X^i Y^j`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrossedPresentation {
    /// Root order of the coefficients.
    pub n: u64,
    pub d: u64,
    #[serde(rename = "G")]
    pub group: FiniteGroup,
    /// `H` inside `G`: abstract element `i` of `phi`'s group sits at `h_elements[i]`.
    #[serde(rename = "H_elements")]
    pub h_elements: Vec<usize>,
    pub phi: Bicharacter,
    pub variables: Vec<String>,
    /// Indices of the `y` variables inside `variables`.
    pub y_variables: Vec<usize>,
    /// Variable permutation induced by each `g ∈ G`.
    pub action: Vec<Vec<usize>>,
    pub gamma: Vec<Vec<MonomialCoefficient>>,
}

/// Outcome of one verification check; the witness is the lowest failing tuple.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckOutcome {
    pub passed: bool,
    pub witness: Option<Vec<usize>>,
    pub detail: Option<String>,
}

impl CheckOutcome {
    fn pass() -> Self {
        CheckOutcome { passed: true, witness: None, detail: None }
    }

    fn fail(witness: Vec<usize>, detail: String) -> Self {
        CheckOutcome { passed: false, witness: Some(witness), detail: Some(detail) }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub cocycle: CheckOutcome,
    pub commutators: CheckOutcome,
    pub action_kernel: CheckOutcome,
    pub inverses: CheckOutcome,
    /// Elements of `G` acting trivially on the `y` variables.
    pub kernel: Vec<usize>,
    /// Number of basis symbols of degree `e`.
    pub e_rank: usize,
    pub passed: bool,
}

/// A homogeneous monomial element `coeff · x_basis`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Term {
    pub coeff: MonomialCoefficient,
    pub basis: usize,
}

impl CrossedPresentation {
    pub fn basis_len(&self) -> usize {
        (self.d * self.d) as usize * self.group.order()
    }

    pub fn vars(&self) -> usize {
        self.variables.len()
    }

    /// `(symbol index, group element)` of a basis symbol.
    pub fn split(&self, b: usize) -> (usize, usize) {
        (b / self.group.order(), b % self.group.order())
    }

    pub fn degree(&self, b: usize) -> usize {
        self.split(b).1
    }

    pub fn basis_mul(&self, b1: usize, b2: usize) -> usize {
        let d = self.d as usize;
        let (s1, g1) = self.split(b1);
        let (s2, g2) = self.split(b2);
        let s = ((s1 / d + s2 / d) % d) * d + (s1 % d + s2 % d) % d;
        s * self.group.order() + self.group.mul(g1, g2)
    }

    pub fn basis_inv(&self, b: usize) -> usize {
        let d = self.d as usize;
        let (s, g) = self.split(b);
        let si = ((d - s / d) % d) * d + (d - s % d) % d;
        si * self.group.order() + self.group.inv(g)
    }

    pub fn act(&self, b: usize, c: &MonomialCoefficient) -> MonomialCoefficient {
        c.permute(&self.action[self.degree(b)])
    }

    pub fn mul(&self, x: &Term, y: &Term) -> Term {
        let c = x
            .coeff
            .mul(&self.act(x.basis, &y.coeff), self.n)
            .mul(&self.gamma[x.basis][y.basis], self.n);
        Term { coeff: c, basis: self.basis_mul(x.basis, y.basis) }
    }

    pub fn symbol(&self, b: usize) -> Term {
        Term { coeff: MonomialCoefficient::one(self.vars()), basis: b }
    }

    /// Closed-form inverse `x_b^{-1} = b^{-1}(gamma(b, b^{-1}))^{-1} · x_{b^{-1}}`.
    pub fn inverse(&self, b: usize) -> Term {
        let bi = self.basis_inv(b);
        Term { coeff: self.act(bi, &self.gamma[b][bi]).inv(self.n), basis: bi }
    }

    /// Rejects malformed data before any verification.
    pub fn check_shape(&self) -> Result<()> {
        let nb = self.basis_len();
        let nv = self.vars();
        let bad = |m: &str| Err(Error::InvalidPresentation(m.to_string()));
        if self.n == 0 || self.d == 0 {
            return bad("n and d must be positive");
        }
        if self.gamma.len() != nb || self.gamma.iter().any(|r| r.len() != nb) {
            return bad("gamma must be a square table over the basis symbols");
        }
        if self.gamma.iter().flatten().any(|c| c.laurent.len() != nv) {
            return bad("every Laurent vector must have one entry per variable");
        }
        if self.action.len() != self.group.order() {
            return bad("one action permutation per group element is required");
        }
        for p in &self.action {
            let mut seen = vec![false; nv];
            if p.len() != nv || p.iter().any(|&v| v >= nv || std::mem::replace(&mut seen[v], true)) {
                return bad("action entries must be permutations of the variables");
            }
        }
        if self.y_variables.iter().any(|&v| v >= nv) {
            return bad("y variable index out of range");
        }
        if self.h_elements.len() != self.phi.group().order() as usize
            || self.h_elements.iter().any(|&h| h >= self.group.order())
        {
            return bad("H_elements must list the elements of phi's group inside G");
        }
        let n_h = self.phi.root_order();
        if !self.n.is_multiple_of(n_h) {
            return bad("n must be a multiple of the exponent of H");
        }
        Ok(())
    }
}

fn check_cocycle(p: &CrossedPresentation) -> CheckOutcome {
    let nb = p.basis_len();
    let n = p.n;
    for b in 0..nb {
        if !p.gamma[0][b].is_one() {
            return CheckOutcome::fail(vec![0, b], "gamma is not normalized".into());
        }
        if !p.gamma[b][0].is_one() {
            return CheckOutcome::fail(vec![b, 0], "gamma is not normalized".into());
        }
    }
    let bad = par::find_first(nb * nb * nb, |t| {
        let (a, b, c) = (t / (nb * nb), (t / nb) % nb, t % nb);
        let bc = p.basis_mul(b, c);
        let ab = p.basis_mul(a, b);
        let lhs = p.act(a, &p.gamma[b][c]).mul(&p.gamma[a][bc], n);
        let rhs = p.gamma[ab][c].mul(&p.gamma[a][b], n);
        (lhs != rhs).then_some(vec![a, b, c])
    });
    match bad {
        Some((_, w)) => CheckOutcome::fail(w, "twisted cocycle identity fails".into()),
        None => CheckOutcome::pass(),
    }
}

fn check_commutators(p: &CrossedPresentation) -> CheckOutcome {
    let h = p.phi.group();
    let m = p.h_elements.len();
    let scale = (p.n / p.phi.root_order()) as i64;
    for a in 0..m {
        for b in 0..m {
            let (x, y) = (p.h_elements[a], p.h_elements[b]);
            let c = p.mul(
                &p.mul(&p.mul(&p.symbol(x), &p.symbol(y)), &p.inverse(x)),
                &p.inverse(y),
            );
            let want = (scale * p.phi.evaluate(&h.element(a), &h.element(b))).rem_euclid(p.n as i64);
            if c.basis != 0 || !c.coeff.is_root() || c.coeff.root != want {
                return CheckOutcome::fail(
                    vec![x, y],
                    format!("commutator is {}, expected ζ{}^{want}", c.coeff.render(p.n, &p.variables), p.n),
                );
            }
        }
    }
    CheckOutcome::pass()
}

fn action_kernel(p: &CrossedPresentation) -> Vec<usize> {
    (0..p.group.order())
        .filter(|&g| p.y_variables.iter().all(|&v| p.action[g][v] == v))
        .collect()
}

fn check_action(p: &CrossedPresentation) -> CheckOutcome {
    let g = &p.group;
    let nv = p.vars();
    if p.action[0].iter().enumerate().any(|(v, &w)| v != w) {
        return CheckOutcome::fail(vec![0], "identity acts nontrivially".into());
    }
    for a in 0..g.order() {
        for b in 0..g.order() {
            let ab = g.mul(a, b);
            if (0..nv).any(|v| p.action[ab][v] != p.action[a][p.action[b][v]]) {
                return CheckOutcome::fail(vec![a, b], "action is not a homomorphism".into());
            }
        }
    }
    let kernel = action_kernel(p);
    let mut h = p.h_elements.clone();
    h.sort_unstable();
    if kernel != h {
        let w = kernel
            .iter()
            .chain(&h)
            .copied()
            .filter(|x| kernel.contains(x) != h.contains(x))
            .min()
            .unwrap_or(0);
        return CheckOutcome::fail(vec![w], format!("kernel of the action is {kernel:?}, not H"));
    }
    CheckOutcome::pass()
}

fn check_inverses(p: &CrossedPresentation) -> CheckOutcome {
    let one = p.symbol(0);
    for b in 0..p.basis_len() {
        let inv = p.inverse(b);
        let x = p.symbol(b);
        if p.mul(&x, &inv) != one || p.mul(&inv, &x) != one {
            return CheckOutcome::fail(vec![b], "closed-form inverse fails".into());
        }
    }
    CheckOutcome::pass()
}

/// Runs the four checks; malformed data is an error, failed checks are not.
pub fn verify_presentation(p: &CrossedPresentation) -> Result<VerificationReport> {
    p.check_shape()?;
    let cocycle = check_cocycle(p);
    let action_kernel_check = check_action(p);
    let inverses = check_inverses(p);
    // the commutator computation relies on working inverses
    let commutators = if inverses.passed {
        check_commutators(p)
    } else {
        CheckOutcome { passed: false, witness: None, detail: Some("skipped: inverses fail".into()) }
    };
    let passed = cocycle.passed && commutators.passed && action_kernel_check.passed && inverses.passed;
    Ok(VerificationReport {
        cocycle,
        commutators,
        action_kernel: action_kernel_check,
        inverses,
        kernel: action_kernel(p),
        e_rank: (0..p.basis_len()).filter(|&b| p.degree(b) == 0).count(),
        passed,
    })
}

/// Linear form `constant + Σ coeff · unknown` over `Z/N`.
#[derive(Clone, Default)]
struct Form {
    constant: i64,
    terms: Vec<(usize, i64)>,
}

impl Form {
    fn add(&mut self, other: &Form, sign: i64) {
        self.constant += sign * other.constant;
        self.terms.extend(other.terms.iter().map(|&(v, c)| (v, sign * c)));
    }
}

/// Root-valued normalized cocycle on `G` whose restriction to `H` has commutator form `φ`,
/// as exponents of `ζ_N`. With `fix_h`, the `H` block is the canonical cocycle of `φ`.
fn root_cocycle(t: &RealizableTriple, big_n: u64, fix_h: bool) -> Option<Vec<Vec<i64>>> {
    let ext = &t.ext;
    let h = ext.h();
    let q = ext.q();
    let nh = ext.h_order();
    let nq = q.order();
    let g = ext.group();
    let ng = g.order();
    let scale = (big_n / t.phi.root_order()) as i64;
    let alpha = cocycle_from_bicharacter(&t.phi);
    let elems: Vec<_> = h.elements().collect();
    let beta: Vec<Vec<usize>> = ext.beta().iter().map(|r| r.iter().map(|e| h.index_of(e)).collect()).collect();
    let act: Vec<Vec<usize>> =
        (0..nq).map(|x| elems.iter().map(|e| h.index_of(&ext.action()[x].apply(e))).collect()).collect();

    // unknown layout: r(h1,h2) [free H block], λ_q(h), Z(q1,q2); indices for nonidentity arguments
    let mut next = 0;
    let mut r_var = vec![vec![None; nh]; nh];
    if !fix_h {
        for (a, row) in r_var.iter_mut().enumerate().skip(1) {
            for cell in row.iter_mut().skip(1) {
                let _ = a;
                *cell = Some(next);
                next += 1;
            }
        }
    }
    let mut l_var = vec![vec![None; nh]; nq];
    for row in l_var.iter_mut().skip(1) {
        for cell in row.iter_mut().skip(1) {
            *cell = Some(next);
            next += 1;
        }
    }
    let mut z_var = vec![vec![None; nq]; nq];
    for row in z_var.iter_mut().skip(1) {
        for cell in row.iter_mut().skip(1) {
            *cell = Some(next);
            next += 1;
        }
    }
    let unknowns = next;
    let r_form = |a: usize, b: usize| -> Form {
        if fix_h {
            Form { constant: scale * alpha.value(a, b), terms: vec![] }
        } else {
            Form { constant: 0, terms: r_var[a][b].map(|v| vec![(v, 1)]).unwrap_or_default() }
        }
    };
    let sum = |a: usize, b: usize| h.index_of(&h.add(&elems[a], &elems[b]));
    // γ((h1,q1),(h2,q2)) = r(h1, q1·h2) + λ_{q1}(h2) + r(h1 + q1·h2, β(q1,q2)) + Z(q1,q2)
    let gamma_form = |x: usize, y: usize| -> Form {
        let (h1, q1) = ext.split_index(x);
        let (h2, q2) = ext.split_index(y);
        let a = act[q1][h2];
        let mut f = r_form(h1, a);
        f.add(&r_form(sum(h1, a), beta[q1][q2]), 1);
        if let Some(v) = l_var[q1][h2] {
            f.terms.push((v, 1));
        }
        if let Some(v) = z_var[q1][q2] {
            f.terms.push((v, 1));
        }
        f
    };
    let forms: Vec<Vec<Form>> = par::map_range(ng, |x| (0..ng).map(|y| gamma_form(x, y)).collect());
    let nn = big_n as i64;
    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    let mut push = |f: Form| {
        let mut row = vec![0i64; unknowns];
        for (v, c) in f.terms {
            row[v] = (row[v] + c).rem_euclid(nn);
        }
        let b = (-f.constant).rem_euclid(nn);
        if row.iter().any(|&c| c != 0) || b != 0 {
            rows.push(row);
            rhs.push(b);
        }
    };
    for a in 1..ng {
        for b in 1..ng {
            for c in 1..ng {
                let mut f = forms[b][c].clone();
                f.add(&forms[a][g.mul(b, c)], 1);
                f.add(&forms[g.mul(a, b)][c], -1);
                f.add(&forms[a][b], -1);
                push(f);
            }
        }
    }
    if !fix_h {
        for a in 1..nh {
            for b in 1..nh {
                let mut f = r_form(a, b);
                f.add(&r_form(b, a), -1);
                f.constant -= scale * t.phi.evaluate(&elems[a], &elems[b]);
                push(f);
            }
        }
    }
    let x = if rows.is_empty() {
        vec![0; unknowns]
    } else if unknowns == 0 {
        return None;
    } else {
        solve_mod(&rows, &rhs, nn)?
    };
    let eval = |f: &Form| (f.constant + f.terms.iter().map(|&(v, c)| c * x[v]).sum::<i64>()).rem_euclid(nn);
    Some(forms.iter().map(|r| r.iter().map(eval).collect()).collect())
}

/// Conductors tried in order when searching for the root part.
fn conductor_candidates(t: &RealizableTriple) -> Vec<u64> {
    let base = t.phi.root_order().lcm(&t.d);
    let e = t.ext.group().exponent() as u64;
    vec![base, base * e, base * e * e]
}

/// Presentation of the generic crossed product for `t` with `d = 1`, before any Hilbert twist.
fn build_base(t: &RealizableTriple, force_n: Option<u64>) -> Result<CrossedPresentation> {
    let ext = &t.ext;
    let q = ext.q();
    let nq = q.order();
    let g = ext.group();
    let ng = g.order();
    let candidates = match force_n {
        Some(n) => vec![n],
        None => conductor_candidates(t),
    };
    let found = candidates
        .iter()
        .find_map(|&n| root_cocycle(t, n, true).or_else(|| root_cocycle(t, n, false)).map(|r| (n, r)));
    let Some((n, roots)) = found else {
        return Err(Error::NotInvariant(
            "no root-valued cocycle on G restricts to phi; phi is probably not invariant".into(),
        ));
    };

    // variables: y_q for q ∈ Q, z_q for q ≠ e
    let mut variables: Vec<String> = (0..nq).map(|x| format!("y_{}", q.name(x))).collect();
    variables.extend((1..nq).map(|x| format!("z_{}", q.name(x))));
    let nv = variables.len();
    let y_var = |x: usize| x;
    let z_var = |x: usize| nq + x - 1;
    let action: Vec<Vec<usize>> = (0..ng)
        .map(|x| {
            let (_, qx) = ext.split_index(x);
            (0..nv).map(|v| if v < nq { y_var(q.mul(qx, v)) } else { v }).collect()
        })
        .collect();
    // generic rescaling x_{(h,q)} -> z_q y_q x_{(h,q)} for q ≠ e
    let c = |x: usize| -> Vec<i64> {
        let mut v = vec![0; nv];
        let (_, qx) = ext.split_index(x);
        if qx != 0 {
            v[y_var(qx)] += 1;
            v[z_var(qx)] += 1;
        }
        v
    };
    let permute = |v: &[i64], perm: &[usize]| {
        let mut out = vec![0; v.len()];
        for (i, &e) in v.iter().enumerate() {
            out[perm[i]] += e;
        }
        out
    };
    let gamma = (0..ng)
        .map(|a| {
            (0..ng)
                .map(|b| {
                    let ca = c(a);
                    let cb = permute(&c(b), &action[a]);
                    let cab = c(g.mul(a, b));
                    let laurent = (0..nv).map(|v| ca[v] + cb[v] - cab[v]).collect();
                    MonomialCoefficient { root: roots[a][b], laurent }
                })
                .collect()
        })
        .collect();
    Ok(CrossedPresentation {
        n,
        d: 1,
        group: g.clone(),
        h_elements: (0..ext.h_order()).collect(),
        phi: t.phi.clone(),
        variables,
        y_variables: (0..nq).collect(),
        action,
        gamma,
    })
}

/// Presentation realizing `t`; for `d > 1` the Hilbert twist is applied.
pub fn build_presentation(t: &RealizableTriple) -> Result<CrossedPresentation> {
    let base = build_base(t, None)?;
    if t.d == 1 {
        Ok(base)
    } else {
        hilbert_twist(&base, t.d)
    }
}

/// `((a, b)_d ⊗ L^α H) * Q`: basis `X^i Y^j x_g` with `X^d = a`, `Y^d = b`,
/// `YX = ζ_d XY`, and `Q` acting trivially on the symbol part.
pub fn hilbert_twist(p: &CrossedPresentation, d: u64) -> Result<CrossedPresentation> {
    if p.d != 1 {
        return Err(Error::InvalidPresentation("the Hilbert twist applies to d = 1 presentations".into()));
    }
    if d == 0 || !p.n.is_multiple_of(d) {
        return Err(Error::InvalidPresentation(format!("conductor {} is not divisible by d = {d}", p.n)));
    }
    if d == 1 {
        return Ok(p.clone());
    }
    let ng = p.group.order();
    let du = d as usize;
    let nv = p.vars() + 2;
    let (va, vb) = (nv - 2, nv - 1);
    let mut variables = p.variables.clone();
    variables.push("a".into());
    variables.push("b".into());
    let action = p
        .action
        .iter()
        .map(|perm| perm.iter().copied().chain([va, vb]).collect())
        .collect();
    let nb = du * du * ng;
    let step = (p.n / d) as i64;
    let gamma = (0..nb)
        .map(|x| {
            let (s1, g1) = (x / ng, x % ng);
            let (i, j) = (s1 / du, s1 % du);
            (0..nb)
                .map(|y| {
                    let (s2, g2) = (y / ng, y % ng);
                    let (k, l) = (s2 / du, s2 % du);
                    let base = &p.gamma[g1][g2];
                    let mut laurent = base.laurent.clone();
                    laurent.push(((i + k) / du) as i64);
                    laurent.push(((j + l) / du) as i64);
                    // Y^j X^k = ζ_d^{jk} X^k Y^j
                    let root = (base.root + step * (j * k) as i64).rem_euclid(p.n as i64);
                    MonomialCoefficient { root, laurent }
                })
                .collect()
        })
        .collect();
    Ok(CrossedPresentation {
        n: p.n,
        d,
        group: p.group.clone(),
        h_elements: p.h_elements.clone(),
        phi: p.phi.clone(),
        variables,
        y_variables: p.y_variables.clone(),
        action,
        gamma,
    })
}

/// `(a, b)_d` as a presentation over the trivial group.
pub fn symbol_algebra(d: u64) -> Result<CrossedPresentation> {
    let trivial = crate::groups::Extension::split(
        crate::abelian::AbelianGroup::trivial(),
        FiniteGroup::cyclic(1),
        vec![crate::abelian::IntMatrixHom::identity(&crate::abelian::AbelianGroup::trivial())],
    )?;
    let phi = Bicharacter::trivial(trivial.h());
    let t = RealizableTriple { ext: trivial, phi, d: 1 };
    hilbert_twist(&build_base(&t, Some(d.max(1)))?, d)
}

/// Degree-`e` basis symbols commuting with every degree-`e` basis symbol.
pub fn central_symbols(p: &CrossedPresentation) -> Vec<usize> {
    let e: Vec<usize> = (0..p.basis_len()).filter(|&b| p.degree(b) == 0).collect();
    e.iter()
        .copied()
        .filter(|&b| {
            e.iter().all(|&c| p.mul(&p.symbol(b), &p.symbol(c)) == p.mul(&p.symbol(c), &p.symbol(b)))
        })
        .collect()
}

/// Basis symbol `X^i Y^j x_g`.
pub fn symbol_index(p: &CrossedPresentation, i: usize, j: usize, g: usize) -> usize {
    (i * p.d as usize + j) * p.group.order() + g
}

fn symbol_name(p: &CrossedPresentation, b: usize) -> String {
    let d = p.d as usize;
    let (s, g) = p.split(b);
    let (i, j) = (s / d, s % d);
    let mut parts = Vec::new();
    if i > 0 {
        parts.push(if i == 1 { "X".to_string() } else { format!("X^{i}") });
    }
    if j > 0 {
        parts.push(if j == 1 { "Y".to_string() } else { format!("Y^{j}") });
    }
    if g != 0 || parts.is_empty() {
        parts.push(format!("x_{}", p.group.name(g)));
    }
    parts.join("·")
}

/// Human-readable relations: commutation rules inside `H` and the products of the `x_g`.
pub fn relations_text(p: &CrossedPresentation) -> String {
    let mut out = String::new();
    let h = &p.h_elements;
    writeln!(out, "# commutation in H").unwrap();
    for (ai, &a) in h.iter().enumerate() {
        for &b in &h[ai + 1..] {
            let c = p.mul(
                &p.mul(&p.mul(&p.symbol(a), &p.symbol(b)), &p.inverse(a)),
                &p.inverse(b),
            );
            let k = c.coeff.render(p.n, &p.variables);
            let (xa, xb) = (symbol_name(p, a), symbol_name(p, b));
            if k == "1" {
                writeln!(out, "{xa}·{xb} = {xb}·{xa}").unwrap();
            } else if k == "-1" {
                writeln!(out, "{xa}·{xb} = −{xb}·{xa}").unwrap();
            } else {
                writeln!(out, "{xa}·{xb} = {k}·{xb}·{xa}").unwrap();
            }
        }
    }
    writeln!(out, "# products").unwrap();
    let ng = p.group.order();
    for a in 1..ng {
        for b in 1..ng {
            let c = &p.gamma[a][b];
            writeln!(
                out,
                "{}·{} = {}·{}",
                symbol_name(p, a),
                symbol_name(p, b),
                c.render(p.n, &p.variables),
                symbol_name(p, p.basis_mul(a, b))
            )
            .unwrap();
        }
    }
    out
}
