//! Exact square matrices over `Q(ζ_m)` and the finite groups they generate.
//!
//! A generated group is stored as permutations of the orbit of the standard
//! basis vectors. The action on that orbit is faithful (the orbit spans), so
//! a permutation determines its matrix: column `j` is the image of `e_j`.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::cyclo::{CycError, CycNum};
use crate::fingroup::{Elem, Group};

#[derive(Debug, Error)]
pub enum MatError {
    #[error(transparent)]
    Cyc(#[from] CycError),
    #[error("dimension mismatch: {0} vs {1}")]
    DimMismatch(usize, usize),
    #[error("matrix is singular")]
    Singular,
    #[error("{which} is not defined for p = {p}")]
    InvalidChoice { p: u32, which: String },
    #[error("closure exceeded the cap of {0} elements")]
    CapExceeded(usize),
    #[error("element order exceeds {0}")]
    OrderCap(usize),
    #[error("no generators given")]
    NoGenerators,
}

/// A `dim × dim` matrix over `Q(ζ_m)`, row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CycMatrix {
    dim: usize,
    conductor: u32,
    entries: Vec<CycNum>,
}

impl CycMatrix {
    pub fn from_fn(dim: usize, m: u32, f: impl Fn(usize, usize) -> CycNum) -> Self {
        let entries = (0..dim * dim).map(|k| f(k / dim, k % dim)).collect();
        CycMatrix { dim, conductor: m, entries }
    }

    pub fn identity(dim: usize, m: u32) -> Self {
        Self::scalar(dim, CycNum::one(m))
    }

    pub fn scalar(dim: usize, c: CycNum) -> Self {
        let m = c.conductor();
        Self::from_fn(dim, m, |i, j| if i == j { c.clone() } else { CycNum::zero(m) })
    }

    pub fn diag(d: Vec<CycNum>) -> Self {
        let m = d[0].conductor();
        let n = d.len();
        Self::from_fn(n, m, |i, j| if i == j { d[i].clone() } else { CycNum::zero(m) })
    }

    /// Permutation matrix with `P[i][σ(i)] = 1` (0-based points).
    pub fn permutation(sigma: &[usize], m: u32) -> Self {
        Self::from_fn(sigma.len(), m, |i, j| if sigma[i] == j { CycNum::one(m) } else { CycNum::zero(m) })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    pub fn entry(&self, i: usize, j: usize) -> &CycNum {
        &self.entries[i * self.dim + j]
    }

    pub fn entries(&self) -> &[CycNum] {
        &self.entries
    }

    fn compatible(&self, other: &Self) -> Result<(), MatError> {
        if self.dim != other.dim {
            return Err(MatError::DimMismatch(self.dim, other.dim));
        }
        if self.conductor != other.conductor {
            return Err(CycError::ConductorMismatch(self.conductor, other.conductor).into());
        }
        Ok(())
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, MatError> {
        self.compatible(other)?;
        let n = self.dim;
        let m = self.conductor;
        Ok(Self::from_fn(n, m, |i, j| {
            let mut acc = CycNum::zero(m);
            for k in 0..n {
                let a = self.entry(i, k);
                let b = other.entry(k, j);
                if !a.is_zero() && !b.is_zero() {
                    acc = &acc + &(a * b);
                }
            }
            acc
        }))
    }

    pub fn scale(&self, c: &CycNum) -> Result<Self, MatError> {
        if c.conductor() != self.conductor {
            return Err(CycError::ConductorMismatch(self.conductor, c.conductor()).into());
        }
        Ok(CycMatrix {
            dim: self.dim,
            conductor: self.conductor,
            entries: self.entries.iter().map(|e| e * c).collect(),
        })
    }

    pub fn neg(&self) -> Self {
        CycMatrix { dim: self.dim, conductor: self.conductor, entries: self.entries.iter().map(|e| -e).collect() }
    }

    /// Re-expresses every entry in `Q(ζ_to)`.
    pub fn lift(&self, to: u32) -> Result<Self, MatError> {
        let entries = self.entries.iter().map(|e| e.lift(to)).collect::<Result<_, _>>()?;
        Ok(CycMatrix { dim: self.dim, conductor: to, entries })
    }

    pub fn conj_transpose(&self) -> Self {
        Self::from_fn(self.dim, self.conductor, |i, j| self.entry(j, i).conjugate())
    }

    pub fn is_unitary(&self) -> bool {
        self.try_mul(&self.conj_transpose()).map(|p| p == Self::identity(self.dim, self.conductor)).unwrap_or(false)
    }

    /// The scalar `c` if the matrix is `cI`.
    pub fn as_scalar(&self) -> Option<CycNum> {
        let c = self.entry(0, 0).clone();
        let n = self.dim;
        let ok =
            (0..n).all(|i| (0..n).all(|j| if i == j { *self.entry(i, j) == c } else { self.entry(i, j).is_zero() }));
        ok.then_some(c)
    }

    pub fn trace(&self) -> CycNum {
        (0..self.dim).fold(CycNum::zero(self.conductor), |acc, i| &acc + self.entry(i, i))
    }

    /// Gaussian elimination; returns the echelon determinant and, when
    /// `want_inverse`, the inverse.
    fn eliminate(&self, want_inverse: bool) -> Result<(CycNum, Option<Self>), MatError> {
        let n = self.dim;
        let m = self.conductor;
        let mut a: Vec<Vec<CycNum>> = (0..n).map(|i| (0..n).map(|j| self.entry(i, j).clone()).collect()).collect();
        let mut inv: Vec<Vec<CycNum>> =
            (0..n).map(|i| (0..n).map(|j| if i == j { CycNum::one(m) } else { CycNum::zero(m) }).collect()).collect();
        let mut det = CycNum::one(m);
        for col in 0..n {
            let Some(piv) = (col..n).find(|&r| !a[r][col].is_zero()) else {
                return Ok((CycNum::zero(m), None));
            };
            if piv != col {
                a.swap(piv, col);
                inv.swap(piv, col);
                det = -&det;
            }
            let pv = a[col][col].clone();
            det = &det * &pv;
            let pinv = pv.inv()?;
            for j in 0..n {
                a[col][j] = &a[col][j] * &pinv;
                if want_inverse {
                    inv[col][j] = &inv[col][j] * &pinv;
                }
            }
            for r in 0..n {
                if r == col || a[r][col].is_zero() {
                    continue;
                }
                let f = a[r][col].clone();
                for j in 0..n {
                    let t = &f * &a[col][j];
                    a[r][j] = &a[r][j] - &t;
                    if want_inverse {
                        let t = &f * &inv[col][j];
                        inv[r][j] = &inv[r][j] - &t;
                    }
                }
            }
        }
        let out = want_inverse.then(|| Self::from_fn(n, m, |i, j| inv[i][j].clone()));
        Ok((det, out))
    }

    pub fn det(&self) -> CycNum {
        self.eliminate(false).map(|(d, _)| d).unwrap_or_else(|_| CycNum::zero(self.conductor))
    }

    pub fn inverse(&self) -> Result<Self, MatError> {
        match self.eliminate(true)? {
            (_, Some(inv)) => Ok(inv),
            _ => Err(MatError::Singular),
        }
    }

    pub fn pow(&self, e: i64) -> Result<Self, MatError> {
        let mut base = if e < 0 { self.inverse()? } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = Self::identity(self.dim, self.conductor);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.try_mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.try_mul(&base)?;
            }
        }
        Ok(acc)
    }

    /// Multiplicative order, up to `cap`.
    pub fn order(&self, cap: usize) -> Result<usize, MatError> {
        let id = Self::identity(self.dim, self.conductor);
        let mut cur = self.clone();
        for k in 1..=cap {
            if cur == id {
                return Ok(k);
            }
            cur = cur.try_mul(self)?;
        }
        Err(MatError::OrderCap(cap))
    }

    /// `x y x^{-1}`, for `x = self`.
    pub fn conjugate_by(&self, y: &Self) -> Result<Self, MatError> {
        self.try_mul(y)?.try_mul(&self.inverse()?)
    }

    pub fn apply(&self, v: &[CycNum]) -> Vec<CycNum> {
        let n = self.dim;
        (0..n)
            .map(|i| {
                let mut acc = CycNum::zero(self.conductor);
                for (k, vk) in v.iter().enumerate() {
                    let a = self.entry(i, k);
                    if !a.is_zero() && !vk.is_zero() {
                        acc = &acc + &(a * vk);
                    }
                }
                acc
            })
            .collect()
    }

    /// For a monomial matrix, the permutation `i ↦ j` of nonzero entries
    /// `M[i][j]` (0-based).
    pub fn monomial_pattern(&self) -> Option<Vec<usize>> {
        let n = self.dim;
        let mut sigma = Vec::with_capacity(n);
        for i in 0..n {
            let nz: Vec<usize> = (0..n).filter(|&j| !self.entry(i, j).is_zero()).collect();
            if nz.len() != 1 {
                return None;
            }
            sigma.push(nz[0]);
        }
        let mut seen = sigma.clone();
        seen.sort_unstable();
        seen.dedup();
        (seen.len() == n).then_some(sigma)
    }

    /// Serializable form: each entry as its coefficient list (`"a/b"`).
    pub fn to_coeff_strings(&self) -> Vec<Vec<Vec<String>>> {
        (0..self.dim)
            .map(|i| (0..self.dim).map(|j| self.entry(i, j).coeffs().iter().map(|c| c.to_string()).collect()).collect())
            .collect()
    }
}

impl fmt::Display for CycMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.dim {
            if i > 0 {
                write!(f, "; ")?;
            }
            let row: Vec<String> = (0..self.dim)
                .map(|j| {
                    let s = self.entry(i, j).to_string();
                    s.split(" [m=").next().unwrap_or("").to_string()
                })
                .collect();
            write!(f, "{}", row.join(", "))?;
        }
        write!(f, "] [m={}]", self.conductor)
    }
}

impl fmt::Debug for CycMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// The named matrices of the case studies.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum StdMatrix {
    /// `diag(1, ζ, …, ζ^{p-1})`
    A,
    /// Cyclic shift with `B[i][i+1] = 1`.
    B,
    /// `iA` (p = 2 only)
    APrime,
    /// `iB` (p = 2 only)
    BPrime,
    /// `diag(ζ^{-(i-1)^2})`
    D,
    /// Permutation matrix of `i ↦ k(i-1)+1`.
    Sigma(u32),
    /// `sgn(σ_k) · σ_k`, which has determinant 1.
    SignedSigma(u32),
    /// Permutation matrix of `i ↦ 2-i` (mod p, 1-based): `(2,p)(3,p-1)…`
    Tau,
    /// `diag(e^{πi/4}, e^{-πi/4})` (p = 2)
    F,
    /// The rotation `[[1,-1],[1,1]]/√2` (p = 2)
    H,
    /// `ζ_p I`, or `iI` at p = 2.
    ZetaI,
}

/// Default conductor for prime `p`: `p` itself, or 8 for p = 2.
pub fn default_conductor(p: u32) -> u32 {
    if p == 2 {
        8
    } else {
        p
    }
}

fn sign_of(perm: &[usize]) -> i64 {
    let mut seen = vec![false; perm.len()];
    let mut sign = 1;
    for i in 0..perm.len() {
        if seen[i] {
            continue;
        }
        let mut len = 0;
        let mut j = i;
        while !seen[j] {
            seen[j] = true;
            j = perm[j];
            len += 1;
        }
        if len % 2 == 0 {
            sign = -sign;
        }
    }
    sign
}

/// `(i)σ_k = k(i-1)+1` on 1-based points, as a 0-based permutation.
pub fn sigma_perm(p: u32, k: u32) -> Vec<usize> {
    (0..p as usize).map(|i| (k as usize * i) % p as usize).collect()
}

/// Builds a named matrix for prime `p` in `Q(ζ_m)`; `m` must be a multiple
/// of `p` (of 8 for p = 2).
pub fn std_matrix_in(p: u32, which: StdMatrix, m: u32) -> Result<CycMatrix, MatError> {
    let invalid = || MatError::InvalidChoice { p, which: format!("{which:?}") };
    let base = default_conductor(p);
    if !m.is_multiple_of(base) {
        return Err(CycError::NotASubfield { from: base, to: m }.into());
    }
    let n = p as usize;
    // ζ_p inside Q(ζ_m)
    let zeta = |k: i64| CycNum::root(m, k * (m / p) as i64);
    let i_unit = || CycNum::root(m, (m / 4) as i64);
    let odd = p % 2 == 1;
    Ok(match which {
        StdMatrix::A => CycMatrix::diag((0..n).map(|i| zeta(i as i64)).collect()),
        StdMatrix::B => CycMatrix::permutation(&(0..n).map(|i| (i + 1) % n).collect::<Vec<_>>(), m),
        StdMatrix::APrime | StdMatrix::BPrime if p == 2 => {
            let base = if which == StdMatrix::APrime { StdMatrix::A } else { StdMatrix::B };
            std_matrix_in(p, base, m)?.scale(&i_unit())?
        }
        StdMatrix::D if odd => CycMatrix::diag((0..n).map(|i| zeta(-((i * i) as i64))).collect()),
        StdMatrix::Sigma(k) | StdMatrix::SignedSigma(k) if odd && k >= 1 && k < p => {
            let perm = sigma_perm(p, k);
            let pm = CycMatrix::permutation(&perm, m);
            if matches!(which, StdMatrix::SignedSigma(_)) && sign_of(&perm) < 0 {
                pm.neg()
            } else {
                pm
            }
        }
        StdMatrix::Tau if odd => CycMatrix::permutation(&(0..n).map(|i| (n - i) % n).collect::<Vec<_>>(), m),
        StdMatrix::F if p == 2 => {
            CycMatrix::diag(vec![CycNum::root(m, (m / 8) as i64), CycNum::root(m, -((m / 8) as i64))])
        }
        StdMatrix::H if p == 2 => {
            // 1/√2 = (ζ_8 + ζ_8^{-1}) / 2
            let e = (m / 8) as i64;
            let half = BigRational::new(BigInt::from(1), BigInt::from(2));
            let r = (&CycNum::root(m, e) + &CycNum::root(m, -e)).scale(&half);
            CycMatrix::from_fn(2, m, |i, j| if i == 0 && j == 1 { -&r } else { r.clone() })
        }
        StdMatrix::ZetaI => {
            let c = if odd { zeta(1) } else { i_unit() };
            CycMatrix::scalar(n, c)
        }
        _ => return Err(invalid()),
    })
}

/// [`std_matrix_in`] at the default conductor.
pub fn std_matrix(p: u32, which: StdMatrix) -> Result<CycMatrix, MatError> {
    std_matrix_in(p, which, default_conductor(p))
}

/// A finite matrix group, stored as permutations of the orbit of the
/// standard basis. Element numbering is breadth-first from the identity,
/// multiplying on the right by the generators in the given order.
#[derive(Clone, Debug)]
pub struct MatrixGroup {
    dim: usize,
    conductor: u32,
    points: Vec<Vec<CycNum>>,
    point_index: HashMap<Vec<CycNum>, u32>,
    perms: Vec<Vec<u32>>,
    index: HashMap<Vec<u32>, u32>,
    inv: Vec<u32>,
    gens: Vec<Elem>,
}

/// Hard default cap on closure size.
pub const DEFAULT_CAP: usize = 2_000_000;

impl MatrixGroup {
    /// Closure of `gens` under multiplication. Fails if more than `cap`
    /// elements appear.
    pub fn closure(gens: &[CycMatrix], cap: usize) -> Result<Self, MatError> {
        let first = gens.first().ok_or(MatError::NoGenerators)?;
        let (dim, m) = (first.dim, first.conductor);
        for g in gens {
            first.compatible(g)?;
            if g.det().is_zero() {
                return Err(MatError::Singular);
            }
        }
        // orbit of the basis vectors
        let mut points: Vec<Vec<CycNum>> = (0..dim)
            .map(|j| (0..dim).map(|i| if i == j { CycNum::one(m) } else { CycNum::zero(m) }).collect())
            .collect();
        let mut point_index: HashMap<Vec<CycNum>, u32> =
            points.iter().enumerate().map(|(i, v)| (v.clone(), i as u32)).collect();
        let mut gen_perms: Vec<Vec<u32>> = vec![Vec::new(); gens.len()];
        let mut head = 0;
        while head < points.len() {
            for (gi, g) in gens.iter().enumerate() {
                let img = g.apply(&points[head]);
                let idx = match point_index.get(&img) {
                    Some(&i) => i,
                    None => {
                        let i = points.len() as u32;
                        if points.len() > cap.saturating_mul(dim) {
                            return Err(MatError::CapExceeded(cap));
                        }
                        point_index.insert(img.clone(), i);
                        points.push(img);
                        i
                    }
                };
                gen_perms[gi].push(idx);
            }
            head += 1;
        }
        let npts = points.len();
        let ident: Vec<u32> = (0..npts as u32).collect();
        let mut perms = vec![ident.clone()];
        let mut index: HashMap<Vec<u32>, u32> = HashMap::new();
        index.insert(ident[..dim].to_vec(), 0);
        let mut gens_idx = Vec::with_capacity(gens.len());
        let mut head = 0;
        while head < perms.len() {
            for s in &gen_perms {
                let x = &perms[head];
                let key: Vec<u32> = (0..dim).map(|j| x[s[j] as usize]).collect();
                if index.contains_key(&key) {
                    continue;
                }
                if perms.len() >= cap {
                    return Err(MatError::CapExceeded(cap));
                }
                let y: Vec<u32> = (0..npts).map(|q| x[s[q] as usize]).collect();
                index.insert(key, perms.len() as u32);
                perms.push(y);
            }
            head += 1;
        }
        for s in &gen_perms {
            gens_idx.push(index[&s[..dim]] as usize);
        }
        let inv: Vec<u32> = perms
            .par_iter()
            .map(|x| {
                let mut key = vec![0u32; dim];
                for (q, &t) in x.iter().enumerate() {
                    if (t as usize) < dim {
                        key[t as usize] = q as u32;
                    }
                }
                index[&key]
            })
            .collect();
        Ok(MatrixGroup { dim, conductor: m, points, point_index, perms, index, inv, gens: gens_idx })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    /// The matrix of element `e`.
    pub fn matrix(&self, e: Elem) -> CycMatrix {
        let n = self.dim;
        let cols: Vec<&Vec<CycNum>> = (0..n).map(|j| &self.points[self.perms[e][j] as usize]).collect();
        CycMatrix::from_fn(n, self.conductor, |i, j| cols[j][i].clone())
    }

    /// Index of a matrix, if it lies in the group.
    pub fn elem_of(&self, mat: &CycMatrix) -> Option<Elem> {
        if mat.dim != self.dim || mat.conductor != self.conductor {
            return None;
        }
        let key: Option<Vec<u32>> = (0..self.dim)
            .map(|j| {
                let col: Vec<CycNum> = (0..self.dim).map(|i| mat.entry(i, j).clone()).collect();
                self.point_index.get(&col).copied()
            })
            .collect();
        self.index.get(&key?).map(|&i| i as usize)
    }

    /// Size of the basis orbit the group acts on.
    pub fn orbit_size(&self) -> usize {
        self.points.len()
    }

    pub fn to_json(&self) -> MatrixGroupJson {
        MatrixGroupJson {
            dim: self.dim,
            conductor: self.conductor,
            elements: (0..self.order()).map(|e| self.matrix(e).to_coeff_strings()).collect(),
            generators: self.gens.clone(),
        }
    }
}

impl Group for MatrixGroup {
    fn order(&self) -> usize {
        self.perms.len()
    }
    fn identity(&self) -> Elem {
        0
    }
    fn mul(&self, a: Elem, b: Elem) -> Elem {
        let (x, y) = (&self.perms[a], &self.perms[b]);
        let mut key = [0u32; 16];
        if self.dim <= 16 {
            for j in 0..self.dim {
                key[j] = x[y[j] as usize];
            }
            return self.index[&key[..self.dim]] as usize;
        }
        let key: Vec<u32> = (0..self.dim).map(|j| x[y[j] as usize]).collect();
        self.index[&key] as usize
    }
    fn inv(&self, a: Elem) -> Elem {
        self.inv[a] as usize
    }
    fn generators(&self) -> Vec<Elem> {
        self.gens.clone()
    }
    fn label(&self, a: Elem) -> String {
        self.matrix(a).to_string()
    }
}

/// JSON dump of a matrix group: each element as rows of entries, each entry
/// as its power-basis coefficients.
#[derive(Clone, Debug, Serialize)]
pub struct MatrixGroupJson {
    pub dim: usize,
    pub conductor: u32,
    pub elements: Vec<Vec<Vec<Vec<String>>>>,
    pub generators: Vec<Elem>,
}

/// Membership in the truncated Sylow model `S_n = T_n ⋊ ⟨B⟩` of `SU(p)`:
/// monomial, permutation part a power of the `p`-cycle, every entry a root
/// of unity of order dividing `p^n` (`2^{n+1}` for p = 2), determinant 1.
pub fn in_sylow_model(mat: &CycMatrix, p: u32, level: u32) -> bool {
    let n = mat.dim();
    let Some(sigma) = mat.monomial_pattern() else {
        return false;
    };
    let shift = sigma[0];
    if (0..n).any(|i| sigma[i] != (i + shift) % n) {
        return false;
    }
    let torsion = if p == 2 { 1u32 << (level + 1) } else { p.pow(level) };
    let entries_ok = (0..n).all(|i| mat.entry(i, sigma[i]).root_of_unity_order().is_some_and(|o| torsion % o == 0));
    entries_ok && mat.det().is_one()
}

/// Generators of `S_n` at conductor `m`: the diagonal matrices
/// `diag(…, ω, ω^{-1}, …)` on adjacent coordinates with `ω` of order
/// `p^n` (`2^{n+1}` at p = 2), and the shift `B` (`iB` at p = 2).
pub fn sylow_generators(p: u32, level: u32, m: u32) -> Result<Vec<CycMatrix>, MatError> {
    let n = p as usize;
    let torsion = if p == 2 { 1u32 << (level + 1) } else { p.pow(level) };
    if !m.is_multiple_of(torsion) {
        return Err(CycError::NotASubfield { from: torsion, to: m }.into());
    }
    let w = (m / torsion) as i64;
    let mut out = Vec::new();
    for i in 0..n - 1 {
        let d: Vec<CycNum> = (0..n)
            .map(|k| {
                if k == i {
                    CycNum::root(m, w)
                } else if k == i + 1 {
                    CycNum::root(m, -w)
                } else {
                    CycNum::one(m)
                }
            })
            .collect();
        out.push(CycMatrix::diag(d));
    }
    out.push(std_matrix_in(p, if p == 2 { StdMatrix::BPrime } else { StdMatrix::B }, m)?);
    Ok(out)
}

/// Conductor needed for level-`n` truncation at prime `p`.
pub fn level_conductor(p: u32, level: u32) -> u32 {
    if p == 2 {
        (1u32 << (level + 1)).max(8)
    } else {
        p.pow(level)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fingroup::{center, check_axioms, derived_subgroup, Subgroup};

    fn m(p: u32, w: StdMatrix) -> CycMatrix {
        std_matrix(p, w).unwrap()
    }

    #[test]
    fn named_matrices() {
        let a = m(3, StdMatrix::A);
        assert_eq!(a, CycMatrix::diag(vec![CycNum::one(3), CycNum::root(3, 1), CycNum::root(3, 2)]));
        let f = m(2, StdMatrix::F);
        assert_eq!(f.pow(4).unwrap(), CycMatrix::identity(2, 8).neg());
        let ia = m(2, StdMatrix::ZetaI).try_mul(&m(2, StdMatrix::A)).unwrap();
        assert_eq!(f.pow(2).unwrap(), ia);
        let tau = m(5, StdMatrix::Tau);
        // (2,5)(3,4) in 1-based points
        assert_eq!(tau, CycMatrix::permutation(&[0, 4, 3, 2, 1], 5));
        assert!(std_matrix(2, StdMatrix::D).is_err());
        assert!(std_matrix(3, StdMatrix::F).is_err());
        assert!(std_matrix(5, StdMatrix::Sigma(5)).is_err());
    }

    #[test]
    fn determinants_and_unitarity() {
        assert!(m(5, StdMatrix::A).det().is_one());
        assert!(m(2, StdMatrix::H).is_unitary());
        assert!(m(2, StdMatrix::H).det().is_one());
        for p in [3u32, 5, 7] {
            for k in 1..p {
                assert!(m(p, StdMatrix::SignedSigma(k)).det().is_one());
            }
        }
        let b = m(7, StdMatrix::B);
        assert_eq!(b.inverse().unwrap(), b.conj_transpose());
        assert_eq!(b.order(100).unwrap(), 7);
        assert!(matches!(b.order(3), Err(MatError::OrderCap(3))));
    }

    #[test]
    fn gamma_closures() {
        let g = MatrixGroup::closure(&[m(3, StdMatrix::A), m(3, StdMatrix::B), m(3, StdMatrix::ZetaI)], 50).unwrap();
        assert_eq!(g.order(), 27);
        let z = center(&g);
        assert_eq!(z.order(), 3);
        assert!(z.members().iter().all(|&e| g.matrix(e).as_scalar().is_some()));
        assert_eq!(derived_subgroup(&g).order(), 3);
        let q8 = MatrixGroup::closure(&[m(2, StdMatrix::APrime), m(2, StdMatrix::BPrime)], 20).unwrap();
        assert_eq!(q8.order(), 8);
        let triv = MatrixGroup::closure(&[CycMatrix::identity(3, 3)], 10).unwrap();
        assert_eq!(triv.order(), 1);
        assert!(matches!(
            MatrixGroup::closure(&[m(5, StdMatrix::A), m(5, StdMatrix::B)], 10),
            Err(MatError::CapExceeded(10))
        ));
    }

    #[test]
    fn closure_is_order_independent() {
        let gens = [m(3, StdMatrix::A), m(3, StdMatrix::B), m(3, StdMatrix::D)];
        let g1 = MatrixGroup::closure(&gens, 1000).unwrap();
        let rev: Vec<CycMatrix> = gens.iter().rev().cloned().collect();
        let g2 = MatrixGroup::closure(&rev, 1000).unwrap();
        assert_eq!(g1.order(), g2.order());
        for e in 0..g1.order() {
            assert!(g2.elem_of(&g1.matrix(e)).is_some());
        }
        assert!(check_axioms(&g1, 1 << 16));
        for e in 0..g1.order() {
            let x = g1.matrix(e);
            let y = g1.matrix(g1.mul(e, g1.generators()[1]));
            assert_eq!(x.try_mul(&g1.matrix(g1.generators()[1])).unwrap(), y);
            assert_eq!(g1.matrix(g1.inv(e)), x.inverse().unwrap());
        }
    }

    #[test]
    fn sylow_model_orders() {
        let s = MatrixGroup::closure(&sylow_generators(3, 1, 3).unwrap(), 1000).unwrap();
        // |T_1| = p^{p-1} = 9, times the shift
        assert_eq!(s.order(), 27);
        assert!((0..s.order()).all(|e| in_sylow_model(&s.matrix(e), 3, 1)));
        let s2 = MatrixGroup::closure(&sylow_generators(2, 2, 8).unwrap(), 100).unwrap();
        assert_eq!(s2.order(), 16);
        let sub = Subgroup::whole(&s2);
        assert_eq!(sub.order(), 16);
    }
}
