//! Exact arithmetic in cyclotomic fields `Q(ζ_m)`.
//!
//! An element is stored as its coefficient vector in the power basis
//! `1, ζ, …, ζ^{φ(m)-1}`, always fully reduced modulo the `m`-th cyclotomic
//! polynomial. Because the representation is canonical, equality and hashing
//! are plain comparisons of coefficient vectors.

use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

#[derive(thiserror::Error, Debug, Clone, PartialEq, Eq)]
pub enum CycError {
    #[error("conductor mismatch: {0} vs {1}")]
    ConductorMismatch(u32, u32),
    #[error("division by zero in Q(ζ_{0})")]
    DivisionByZero(u32),
    #[error("conductor {from} does not divide {to}")]
    NotASubfield { from: u32, to: u32 },
}

/// Reduction data for one conductor. Shared between all elements of the field.
#[derive(Debug)]
pub struct CyclotomicField {
    conductor: u32,
    degree: usize,
    /// Coefficients of Φ_m, lowest degree first (monic).
    modulus: Vec<i64>,
    /// `powers[k]` is `x^k mod Φ_m`, for `k < max(m, 2φ(m))`.
    powers: Vec<Vec<i64>>,
}

impl CyclotomicField {
    fn build(m: u32) -> Self {
        assert!(m >= 1, "conductor must be positive");
        let modulus = cyclotomic_polynomial(m);
        let degree = modulus.len() - 1;
        let count = (m as usize).max(2 * degree).max(1);
        let mut powers = Vec::with_capacity(count);
        let mut cur = vec![0i64; degree];
        if degree > 0 {
            cur[0] = 1;
        }
        for _ in 0..count {
            powers.push(cur.clone());
            // multiply by x and reduce
            let top = cur[degree - 1];
            for t in (1..degree).rev() {
                cur[t] = cur[t - 1] - top * modulus[t];
            }
            cur[0] = -top * modulus[0];
        }
        CyclotomicField { conductor: m, degree, modulus, powers }
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    /// φ(m), the dimension over Q.
    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Coefficients of Φ_m, lowest degree first.
    pub fn modulus(&self) -> &[i64] {
        &self.modulus
    }
}

/// Returns the shared field descriptor for conductor `m`.
pub fn field(m: u32) -> Arc<CyclotomicField> {
    static FIELDS: OnceLock<Mutex<HashMap<u32, Arc<CyclotomicField>>>> = OnceLock::new();
    let cache = FIELDS.get_or_init(|| Mutex::new(HashMap::new()));
    let mut guard = cache.lock().expect("field cache poisoned");
    guard.entry(m).or_insert_with(|| Arc::new(CyclotomicField::build(m))).clone()
}

/// Integer coefficients of the `m`-th cyclotomic polynomial, lowest first.
pub fn cyclotomic_polynomial(m: u32) -> Vec<i64> {
    // x^m - 1 divided by Φ_d for every proper divisor d.
    let mut num = vec![0i64; m as usize + 1];
    num[0] = -1;
    num[m as usize] = 1;
    for d in 1..m {
        if m.is_multiple_of(d) {
            num = exact_div(&num, &cyclotomic_polynomial(d));
        }
    }
    num
}

fn exact_div(num: &[i64], den: &[i64]) -> Vec<i64> {
    // den is monic
    let mut rem = num.to_vec();
    let dn = den.len() - 1;
    let qlen = rem.len() - dn;
    let mut q = vec![0i64; qlen];
    for k in (0..qlen).rev() {
        let c = rem[k + dn];
        q[k] = c;
        for (t, &dc) in den.iter().enumerate() {
            rem[k + t] -= c * dc;
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0));
    q
}

/// An exact element of `Q(ζ_m)`.
#[derive(Clone)]
pub struct CycNum {
    field: Arc<CyclotomicField>,
    coeffs: Vec<BigRational>,
}

impl PartialEq for CycNum {
    fn eq(&self, other: &Self) -> bool {
        self.field.conductor == other.field.conductor && self.coeffs == other.coeffs
    }
}

impl Eq for CycNum {}

impl Hash for CycNum {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.field.conductor.hash(state);
        self.coeffs.hash(state);
    }
}

impl CycNum {
    pub fn zero(m: u32) -> Self {
        let field = field(m);
        let coeffs = vec![BigRational::zero(); field.degree];
        CycNum { field, coeffs }
    }

    pub fn one(m: u32) -> Self {
        Self::from_int(m, 1)
    }

    pub fn from_int(m: u32, v: i64) -> Self {
        Self::from_rational(m, BigRational::from_integer(BigInt::from(v)))
    }

    pub fn from_rational(m: u32, q: BigRational) -> Self {
        let mut z = Self::zero(m);
        z.coeffs[0] = q;
        z
    }

    /// `ζ_m^k`, reduced. Negative exponents are taken mod `m`.
    pub fn root(m: u32, k: i64) -> Self {
        let field = field(m);
        let e = k.rem_euclid(m as i64) as usize;
        let coeffs = field.powers[e].iter().map(|&c| BigRational::from_integer(BigInt::from(c))).collect();
        CycNum { field, coeffs }
    }

    /// Builds an element from power-basis coefficients, reducing if the
    /// vector is longer than φ(m).
    pub fn from_coeffs(m: u32, coeffs: Vec<BigRational>) -> Self {
        let field = field(m);
        let mut out = vec![BigRational::zero(); field.degree];
        for (k, c) in coeffs.into_iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if k < field.degree {
                out[k] += c;
            } else {
                let pw = power_mod(&field, k);
                for (t, &pc) in pw.iter().enumerate() {
                    if pc != 0 {
                        out[t] += &c * BigRational::from_integer(BigInt::from(pc));
                    }
                }
            }
        }
        CycNum { field, coeffs: out }
    }

    pub fn conductor(&self) -> u32 {
        self.field.conductor
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.as_rational().is_some_and(|q| q.is_one())
    }

    /// The rational value, if the element lies in Q.
    pub fn as_rational(&self) -> Option<BigRational> {
        if self.coeffs.iter().skip(1).all(|c| c.is_zero()) {
            Some(self.coeffs.first().cloned().unwrap_or_else(BigRational::zero))
        } else {
            None
        }
    }

    fn check(&self, other: &Self) -> Result<(), CycError> {
        if self.field.conductor != other.field.conductor {
            Err(CycError::ConductorMismatch(self.field.conductor, other.field.conductor))
        } else {
            Ok(())
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, CycError> {
        self.check(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        Ok(CycNum { field: self.field.clone(), coeffs })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, CycError> {
        self.check(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect();
        Ok(CycNum { field: self.field.clone(), coeffs })
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, CycError> {
        self.check(other)?;
        let n = self.field.degree;
        if n == 0 {
            return Ok(self.clone());
        }
        let mut prod = vec![BigRational::zero(); 2 * n - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] += a * b;
                }
            }
        }
        let mut out: Vec<BigRational> = prod.drain(..n).collect();
        for (off, c) in prod.into_iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (t, &pc) in self.field.powers[n + off].iter().enumerate() {
                if pc != 0 {
                    out[t] += &c * BigRational::from_integer(BigInt::from(pc));
                }
            }
        }
        Ok(CycNum { field: self.field.clone(), coeffs: out })
    }

    pub fn neg(&self) -> Self {
        CycNum { field: self.field.clone(), coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    /// Multiplicative inverse, found by solving the linear system for
    /// multiplication-by-`self` in the power basis.
    pub fn inv(&self) -> Result<Self, CycError> {
        let m = self.field.conductor;
        if self.is_zero() {
            return Err(CycError::DivisionByZero(m));
        }
        if let Some(q) = self.as_rational() {
            return Ok(Self::from_rational(m, q.recip()));
        }
        let n = self.field.degree;
        // column j of `mat` is self * x^j
        let mut cols = Vec::with_capacity(n);
        let mut cur = self.clone();
        let x = Self::root(m, 1);
        for _ in 0..n {
            cols.push(cur.coeffs.clone());
            cur = cur.try_mul(&x)?;
        }
        // augmented row-major matrix [M | e0]
        let mut rows: Vec<Vec<BigRational>> = (0..n)
            .map(|i| {
                let mut r: Vec<BigRational> = (0..n).map(|j| cols[j][i].clone()).collect();
                r.push(if i == 0 { BigRational::one() } else { BigRational::zero() });
                r
            })
            .collect();
        for col in 0..n {
            let pivot = (col..n).find(|&r| !rows[r][col].is_zero()).ok_or(CycError::DivisionByZero(m))?;
            rows.swap(col, pivot);
            let pv = rows[col][col].clone();
            for v in rows[col].iter_mut() {
                *v /= &pv;
            }
            for r in 0..n {
                if r != col && !rows[r][col].is_zero() {
                    let f = rows[r][col].clone();
                    let (src, dst) = if r < col {
                        let (a, b) = rows.split_at_mut(col);
                        (&b[0], &mut a[r])
                    } else {
                        let (a, b) = rows.split_at_mut(r);
                        (&a[col], &mut b[0])
                    };
                    for (d, s) in dst.iter_mut().zip(src.iter()) {
                        *d -= &f * s;
                    }
                }
            }
        }
        Ok(CycNum { field: self.field.clone(), coeffs: rows.into_iter().map(|mut r| r.pop().unwrap()).collect() })
    }

    /// Integer power; negative exponents invert first.
    pub fn pow(&self, e: i64) -> Result<Self, CycError> {
        let mut base = if e < 0 { self.inv()? } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = Self::one(self.conductor());
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

    /// Applies the Galois automorphism `ζ ↦ ζ^j` (`j` coprime to `m`).
    pub fn galois(&self, j: i64) -> Self {
        let m = self.conductor() as i64;
        let mut out = Self::zero(self.conductor());
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let e = (k as i64 * j).rem_euclid(m) as usize;
            for (t, &pc) in self.field.powers[e].iter().enumerate() {
                if pc != 0 {
                    out.coeffs[t] += c * BigRational::from_integer(BigInt::from(pc));
                }
            }
        }
        out
    }

    /// Complex conjugation, `ζ ↦ ζ^{-1}`.
    pub fn conjugate(&self) -> Self {
        self.galois(self.conductor() as i64 - 1)
    }

    /// Re-expresses the element in `Q(ζ_to)` for a multiple `to` of the
    /// conductor.
    pub fn lift(&self, to: u32) -> Result<Self, CycError> {
        let m = self.conductor();
        if !to.is_multiple_of(m) {
            return Err(CycError::NotASubfield { from: m, to });
        }
        let step = (to / m) as i64;
        let mut out = Self::zero(to);
        for (k, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                let term = Self::root(to, k as i64 * step);
                let scaled = term.scale(c);
                out = out.try_add(&scaled)?;
            }
        }
        Ok(out)
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        CycNum { field: self.field.clone(), coeffs: self.coeffs.iter().map(|c| c * q).collect() }
    }

    /// Multiplicative order if the element is a root of unity.
    ///
    /// Roots of unity in `Q(ζ_m)` have order dividing `lcm(2, m)`.
    pub fn root_of_unity_order(&self) -> Option<u32> {
        let m = self.conductor();
        let bound = if m.is_multiple_of(2) { m } else { 2 * m };
        let mut cur = self.clone();
        for n in 1..=bound {
            if cur.is_one() {
                return Some(n);
            }
            cur = cur.try_mul(self).ok()?;
        }
        None
    }

    /// Floating-point embedding `ζ_m ↦ exp(2πi/m)`. Cross-checks only.
    pub fn to_complex(&self) -> Complex64 {
        let m = self.conductor() as f64;
        self.coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| {
                let v = c.to_f64().unwrap_or(f64::NAN);
                Complex64::from_polar(v, 2.0 * std::f64::consts::PI * k as f64 / m)
            })
            .sum()
    }
}

fn power_mod(field: &CyclotomicField, k: usize) -> Vec<i64> {
    if k < field.powers.len() {
        return field.powers[k].clone();
    }
    // ζ^m = 1
    field.powers[k % field.conductor as usize].clone()
}

impl fmt::Display for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
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
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            match (k, a.is_one()) {
                (0, _) => write!(f, "{a}")?,
                (1, true) => write!(f, "ζ")?,
                (1, false) => write!(f, "{a}ζ")?,
                (_, true) => write!(f, "ζ^{k}")?,
                (_, false) => write!(f, "{a}ζ^{k}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " [m={}]", self.conductor())
    }
}

impl fmt::Debug for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

// Operator sugar. These panic on conductor mismatch; use the `try_` forms
// when conductors come from user input.

impl Add for &CycNum {
    type Output = CycNum;
    fn add(self, rhs: &CycNum) -> CycNum {
        self.try_add(rhs).expect("cyclotomic add")
    }
}

impl Sub for &CycNum {
    type Output = CycNum;
    fn sub(self, rhs: &CycNum) -> CycNum {
        self.try_sub(rhs).expect("cyclotomic sub")
    }
}

impl Mul for &CycNum {
    type Output = CycNum;
    fn mul(self, rhs: &CycNum) -> CycNum {
        self.try_mul(rhs).expect("cyclotomic mul")
    }
}

impl Neg for &CycNum {
    type Output = CycNum;
    fn neg(self) -> CycNum {
        CycNum::neg(self)
    }
}

impl Add for CycNum {
    type Output = CycNum;
    fn add(self, rhs: CycNum) -> CycNum {
        &self + &rhs
    }
}

impl Mul for CycNum {
    type Output = CycNum;
    fn mul(self, rhs: CycNum) -> CycNum {
        &self * &rhs
    }
}

impl Sub for CycNum {
    type Output = CycNum;
    fn sub(self, rhs: CycNum) -> CycNum {
        &self - &rhs
    }
}

impl Neg for CycNum {
    type Output = CycNum;
    fn neg(self) -> CycNum {
        CycNum::neg(&self)
    }
}
