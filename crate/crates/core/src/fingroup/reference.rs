//! Reference groups built natively: cyclic, symmetric, direct products, and
//! the 2×2 linear groups over F_p with their upper-triangular subgroups.

use super::{CayleyTable, Elem, Group};

pub fn cyclic(n: usize) -> CayleyTable {
    let mult = (0..n * n).map(|i| ((i / n + i % n) % n) as u32).collect();
    let gens = if n > 1 { vec![1] } else { vec![] };
    CayleyTable::from_raw(n, mult, 0, gens, Some((0..n).map(|a| a.to_string()).collect()))
}

fn permutations(n: usize) -> Vec<Vec<u8>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for rest in permutations(n - 1) {
        for pos in 0..n {
            let mut p = Vec::with_capacity(n);
            p.extend(rest.iter().map(|&x| x + 1));
            p.insert(pos, 0);
            out.push(p);
        }
    }
    out.sort();
    out
}

fn cycle_label(p: &[u8]) -> String {
    let mut seen = vec![false; p.len()];
    let mut s = String::new();
    for i in 0..p.len() {
        if seen[i] || p[i] as usize == i {
            continue;
        }
        let mut cyc = vec![i];
        seen[i] = true;
        let mut j = p[i] as usize;
        while j != i {
            seen[j] = true;
            cyc.push(j);
            j = p[j] as usize;
        }
        s.push('(');
        s.push_str(&cyc.iter().map(|x| (x + 1).to_string()).collect::<Vec<_>>().join(" "));
        s.push(')');
    }
    if s.is_empty() {
        "()".into()
    } else {
        s
    }
}

/// The symmetric group on `n` points; elements in lexicographic order of
/// their images, product `(ab)(i) = a(b(i))`. Labels use 1-based cycles.
pub fn symmetric(n: usize) -> CayleyTable {
    let perms = permutations(n);
    let index: std::collections::HashMap<Vec<u8>, u32> =
        perms.iter().enumerate().map(|(i, p)| (p.clone(), i as u32)).collect();
    let m = perms.len();
    let mut mult = vec![0u32; m * m];
    for (i, a) in perms.iter().enumerate() {
        for (j, b) in perms.iter().enumerate() {
            let c: Vec<u8> = b.iter().map(|&x| a[x as usize]).collect();
            mult[i * m + j] = index[&c];
        }
    }
    let mut gens = Vec::new();
    if n >= 2 {
        let mut t: Vec<u8> = (0..n as u8).collect();
        t.swap(0, 1);
        gens.push(index[&t] as usize);
        if n >= 3 {
            let c: Vec<u8> = (0..n as u8).map(|i| (i + 1) % n as u8).collect();
            gens.push(index[&c] as usize);
        }
    }
    let labels = perms.iter().map(|p| cycle_label(p)).collect();
    CayleyTable::from_raw(m, mult, 0, gens, Some(labels))
}

/// `A × B` with element `(a, b)` at index `a * |B| + b`.
pub fn direct_product<A: Group + ?Sized, B: Group + ?Sized>(a: &A, b: &B) -> CayleyTable {
    let (na, nb) = (a.order(), b.order());
    let n = na * nb;
    let mut mult = vec![0u32; n * n];
    for x in 0..n {
        for y in 0..n {
            let (xa, xb) = (x / nb, x % nb);
            let (ya, yb) = (y / nb, y % nb);
            mult[x * n + y] = (a.mul(xa, ya) * nb + b.mul(xb, yb)) as u32;
        }
    }
    let mut gens: Vec<Elem> = a.generators().into_iter().map(|g| g * nb + b.identity()).collect();
    gens.extend(b.generators().into_iter().map(|g| a.identity() * nb + g));
    let labels = (0..n).map(|x| format!("({},{})", a.label(x / nb), b.label(x % nb))).collect();
    CayleyTable::from_raw(n, mult, a.identity() * nb + b.identity(), gens, Some(labels))
}

/// `x^{-1} mod p` for `p` prime and `x ≢ 0`.
pub fn inv_mod(x: u64, p: u64) -> u64 {
    let x = x % p;
    assert!(x != 0, "zero has no inverse mod {p}");
    let mut r = 1u64;
    let mut b = x;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

/// Smallest generator of `(Z/p)^×`.
pub fn primitive_root(p: u64) -> u64 {
    if p == 2 {
        return 1;
    }
    (2..p)
        .find(|&g| {
            let mut x = 1;
            for k in 1..p - 1 {
                x = x * g % p;
                if x == 1 && k < p - 1 {
                    return false;
                }
            }
            true
        })
        .expect("prime modulus")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize)]
pub enum LinearKind {
    /// SL₂(F_p)
    Sl,
    /// GL₂(F_p)
    Gl,
    /// Upper unitriangular-by-diagonal matrices in SL₂(F_p).
    USl,
    /// Upper triangular matrices in GL₂(F_p).
    UGl,
}

impl LinearKind {
    pub fn name(self) -> &'static str {
        match self {
            LinearKind::Sl => "SL2",
            LinearKind::Gl => "GL2",
            LinearKind::USl => "U(SL2)",
            LinearKind::UGl => "U(GL2)",
        }
    }

    pub fn order(self, p: usize) -> usize {
        match self {
            LinearKind::Sl => p * (p * p - 1),
            LinearKind::Gl => (p - 1) * p * (p * p - 1),
            LinearKind::USl => p * (p - 1),
            LinearKind::UGl => p * (p - 1) * (p - 1),
        }
    }
}

/// 2×2 matrices `[[a,b],[c,d]]` over F_p stored row-major.
pub type Mat2 = [u32; 4];

/// A linear group over F_p, elements in lexicographic order of entries.
#[derive(Clone, Debug)]
pub struct LinearGroup {
    p: u32,
    kind: LinearKind,
    mats: Vec<Mat2>,
    index: Vec<u32>,
    identity: Elem,
    gens: Vec<Elem>,
}

const NONE: u32 = u32::MAX;

impl LinearGroup {
    pub fn new(kind: LinearKind, p: u32) -> Self {
        let q = p as usize;
        let mut mats = Vec::new();
        let mut index = vec![NONE; q * q * q * q];
        for a in 0..p {
            for b in 0..p {
                for c in 0..p {
                    for d in 0..p {
                        let det = (a * d + (p - b * c % p)) % p;
                        let keep = match kind {
                            LinearKind::Sl => det == 1,
                            LinearKind::Gl => det != 0,
                            LinearKind::USl => det == 1 && c == 0,
                            LinearKind::UGl => det != 0 && c == 0,
                        };
                        if keep {
                            index[Self::key(p, &[a, b, c, d])] = mats.len() as u32;
                            mats.push([a, b, c, d]);
                        }
                    }
                }
            }
        }
        let xi = primitive_root(p as u64) as u32;
        let xinv = inv_mod(xi as u64, p as u64) as u32;
        let gen_mats: Vec<Mat2> = match kind {
            LinearKind::Sl => vec![[1, 1, 0, 1], [1, 0, 1, 1]],
            LinearKind::Gl => vec![[1, 1, 0, 1], [1, 0, 1, 1], [xi, 0, 0, 1]],
            LinearKind::USl => vec![[1, 1, 0, 1], [xi, 0, 0, xinv]],
            LinearKind::UGl => vec![[1, 1, 0, 1], [xi, 0, 0, 1], [1, 0, 0, xi]],
        };
        let mut g = LinearGroup { p, kind, mats, index, identity: 0, gens: Vec::new() };
        g.identity = g.elem_of(&[1, 0, 0, 1]).expect("identity");
        g.gens = gen_mats.iter().filter_map(|m| g.elem_of(m)).filter(|&e| e != g.identity).collect();
        g
    }

    fn key(p: u32, m: &Mat2) -> usize {
        let p = p as usize;
        ((m[0] as usize * p + m[1] as usize) * p + m[2] as usize) * p + m[3] as usize
    }

    pub fn prime(&self) -> u32 {
        self.p
    }

    pub fn kind(&self) -> LinearKind {
        self.kind
    }

    pub fn matrix(&self, e: Elem) -> Mat2 {
        self.mats[e]
    }

    /// Index of a matrix (entries reduced mod p), if it lies in the group.
    pub fn elem_of(&self, m: &Mat2) -> Option<Elem> {
        let p = self.p;
        let r = [m[0] % p, m[1] % p, m[2] % p, m[3] % p];
        match self.index[Self::key(p, &r)] {
            NONE => None,
            i => Some(i as usize),
        }
    }

    pub fn mat_mul(p: u32, x: &Mat2, y: &Mat2) -> Mat2 {
        let p = p as u64;
        let f = |a: u32, b: u32, c: u32, d: u32| ((a as u64 * b as u64 + c as u64 * d as u64) % p) as u32;
        [f(x[0], y[0], x[1], y[2]), f(x[0], y[1], x[1], y[3]), f(x[2], y[0], x[3], y[2]), f(x[2], y[1], x[3], y[3])]
    }

    pub fn det(&self, e: Elem) -> u32 {
        let m = self.mats[e];
        let p = self.p as u64;
        ((m[0] as u64 * m[3] as u64 + p * p - m[1] as u64 * m[2] as u64) % p) as u32
    }
}

impl Group for LinearGroup {
    fn order(&self) -> usize {
        self.mats.len()
    }
    fn identity(&self) -> Elem {
        self.identity
    }
    fn mul(&self, a: Elem, b: Elem) -> Elem {
        let m = Self::mat_mul(self.p, &self.mats[a], &self.mats[b]);
        self.index[Self::key(self.p, &m)] as usize
    }
    fn inv(&self, a: Elem) -> Elem {
        let [x, y, z, w] = self.mats[a];
        let p = self.p;
        let dinv = inv_mod(self.det(a) as u64, p as u64) as u32;
        let s = |v: u32| (v as u64 * dinv as u64 % p as u64) as u32;
        let m = [s(w), s((p - y) % p), s((p - z) % p), s(x)];
        self.index[Self::key(p, &m)] as usize
    }
    fn generators(&self) -> Vec<Elem> {
        self.gens.clone()
    }
    fn label(&self, a: Elem) -> String {
        let m = self.mats[a];
        format!("[[{},{}],[{},{}]]", m[0], m[1], m[2], m[3])
    }
}
