//! Test-side oracles: matrices built from their entries, naive closures,
//! and brute-force counts that share no code with the engine.

#![allow(dead_code)]

use std::collections::{HashSet, VecDeque};

use fusionkit_core::{CayleyTable, CycMatrix, CycNum};

pub fn zeta(m: u32, k: i64) -> CycNum {
    CycNum::root(m, k)
}

pub fn diag_powers(p: usize, m: u32, exps: impl Fn(i64) -> i64) -> CycMatrix {
    CycMatrix::diag((0..p as i64).map(|i| zeta(m, exps(i))).collect())
}

/// `A = diag(ζ^i)` with `ζ` of order `p`, inside `Q(ζ_m)`.
pub fn a_mat(p: usize, m: u32) -> CycMatrix {
    let step = (m as usize / p) as i64;
    diag_powers(p, m, |i| step * i)
}

/// `M[i][σ(i)] = 1`.
pub fn perm_mat(sigma: &[usize], m: u32) -> CycMatrix {
    CycMatrix::from_fn(sigma.len(), m, |i, j| if sigma[i] == j { CycNum::one(m) } else { CycNum::zero(m) })
}

/// The shift `i ↦ i + 1`.
pub fn b_mat(p: usize, m: u32) -> CycMatrix {
    perm_mat(&(0..p).map(|i| (i + 1) % p).collect::<Vec<_>>(), m)
}

/// `D = diag(ζ^{-i²})`.
pub fn d_mat(p: usize, m: u32) -> CycMatrix {
    let step = (m as usize / p) as i64;
    diag_powers(p, m, |i| -step * i * i)
}

pub fn sign(sigma: &[usize]) -> i64 {
    let mut seen = vec![false; sigma.len()];
    let mut s = 1;
    for i in 0..sigma.len() {
        if seen[i] {
            continue;
        }
        let mut len = 0;
        let mut j = i;
        while !seen[j] {
            seen[j] = true;
            j = sigma[j];
            len += 1;
        }
        if len % 2 == 0 {
            s = -s;
        }
    }
    s
}

/// `σ_k: i ↦ k·i mod p` as a permutation matrix, optionally scaled by its sign.
pub fn sigma_mat(p: usize, k: usize, m: u32, signed: bool) -> CycMatrix {
    let sigma: Vec<usize> = (0..p).map(|i| (k * i) % p).collect();
    let pm = perm_mat(&sigma, m);
    if signed && sign(&sigma) < 0 {
        pm.neg()
    } else {
        pm
    }
}

pub fn mul(x: &CycMatrix, y: &CycMatrix) -> CycMatrix {
    x.try_mul(y).unwrap()
}

pub fn conj(x: &CycMatrix, y: &CycMatrix) -> CycMatrix {
    mul(&mul(x, y), &x.inverse().unwrap())
}

/// Breadth-first closure over a hash set of matrices.
pub fn naive_closure(gens: &[CycMatrix]) -> Vec<CycMatrix> {
    let id = CycMatrix::identity(gens[0].dim(), gens[0].conductor());
    let mut seen: HashSet<CycMatrix> = HashSet::from([id.clone()]);
    let mut out = vec![id.clone()];
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y = mul(&x, g);
            if seen.insert(y.clone()) {
                out.push(y.clone());
                queue.push_back(y);
            }
        }
    }
    out
}

pub fn smallest_primitive_root(p: u64) -> u64 {
    (2..p).find(|&g| (1..p - 1).all(|e| (0..e).fold(1, |acc, _| acc * g % p) != 1)).unwrap()
}

/// `|SL2(F_p)|` by counting.
pub fn count_sl2(p: i64) -> usize {
    let mut n = 0;
    for a in 0..p {
        for b in 0..p {
            for c in 0..p {
                for d in 0..p {
                    if (a * d - b * c).rem_euclid(p) == 1 {
                        n += 1;
                    }
                }
            }
        }
    }
    n
}

/// Σ_n as a multiplication table in the interchange format, permutations in
/// lexicographic order, `(στ)(x) = σ(τ(x))`.
pub fn symmetric_table_json(n: usize, prime: u32) -> String {
    fn perms(n: usize) -> Vec<Vec<usize>> {
        if n == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for first in 0..n {
            for rest in perms(n - 1) {
                let mut v = vec![first];
                v.extend(rest.into_iter().map(|x| if x >= first { x + 1 } else { x }));
                out.push(v);
            }
        }
        out
    }
    let ps = perms(n);
    let index = |q: &Vec<usize>| ps.iter().position(|r| r == q).unwrap();
    let mut mult = Vec::with_capacity(ps.len() * ps.len());
    for s in &ps {
        for t in &ps {
            let st: Vec<usize> = (0..n).map(|x| s[t[x]]).collect();
            mult.push(index(&st));
        }
    }
    let labels: Vec<String> = ps.iter().map(|q| format!("{q:?}")).collect();
    serde_json::json!({ "order": ps.len(), "mult": mult, "labels": labels, "prime": prime }).to_string()
}

/// Row lookup in a table built from the interchange format.
pub fn table_mul(t: &CayleyTable, a: usize, b: usize) -> usize {
    use fusionkit_core::Group;
    t.mul(a, b)
}
