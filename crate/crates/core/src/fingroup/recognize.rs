use std::fmt;

use serde::Serialize;

use super::{
    center, element_order, exponent, find_isomorphism, is_abelian, is_p_power, quotient, symmetric, Group, LinearGroup,
    LinearKind,
};

/// Structure names the recognizer can certify.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum StructureTag {
    Trivial,
    Cyclic(usize),
    /// Generalized quaternion of the given order.
    Quaternion(usize),
    /// Binary octahedral group of order 48.
    BinaryOctahedral,
    /// Extraspecial of order `p^3` and exponent `p`.
    Extraspecial(usize),
    /// `(C_p)^k`, stored as `(p, k)`.
    ElementaryAbelian(usize, u32),
    /// Dihedral of the given order.
    Dihedral(usize),
    /// Symmetric group of the given degree.
    Symmetric(usize),
    Linear(LinearKind, usize),
    Unknown(usize),
}

impl fmt::Display for StructureTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StructureTag::Trivial => write!(f, "1"),
            StructureTag::Cyclic(n) => write!(f, "C{n}"),
            StructureTag::Quaternion(n) => write!(f, "Q{n}"),
            StructureTag::BinaryOctahedral => write!(f, "O48"),
            StructureTag::Extraspecial(p) => write!(f, "{p}^(1+2)_+"),
            StructureTag::ElementaryAbelian(p, k) => write!(f, "C{p}^{k}"),
            StructureTag::Dihedral(n) => write!(f, "D{n}"),
            StructureTag::Symmetric(k) => write!(f, "Σ{k}"),
            StructureTag::Linear(k, p) => write!(f, "{}(F{p})", k.name()),
            StructureTag::Unknown(n) => write!(f, "unknown({n})"),
        }
    }
}

fn prime_of_cube(n: usize) -> Option<usize> {
    (2..=n).find(|&p| p * p * p == n).filter(|&p| (2..p).all(|d| p % d != 0))
}

fn is_prime(n: usize) -> bool {
    n >= 2 && (2..n).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

/// Identifies a handful of named groups; anything else is `Unknown`.
pub fn recognize<G: Group + ?Sized>(g: &G) -> StructureTag {
    let n = g.order();
    if n == 1 {
        return StructureTag::Trivial;
    }
    let orders: Vec<usize> = (0..n).map(|a| element_order(g, a)).collect();
    if orders.contains(&n) {
        return StructureTag::Cyclic(n);
    }
    let involutions = orders.iter().filter(|&&o| o == 2).count();
    let abelian = is_abelian(g);
    if abelian {
        let e = exponent(g);
        if is_prime(e) {
            let k = (1..).find(|&k| e.pow(k) == n).expect("order is a power of the exponent");
            return StructureTag::ElementaryAbelian(e, k);
        }
        return StructureTag::Unknown(n);
    }
    for (k, fact) in [(3, 6), (4, 24), (5, 120)] {
        if n == fact && find_isomorphism(g, &symmetric(k)).is_some() {
            return StructureTag::Symmetric(k);
        }
    }
    if n.is_multiple_of(2) && n >= 6 {
        // a cyclic subgroup of index 2 all of whose complement consists of involutions
        if let Some(x) = (0..n).find(|&a| orders[a] == n / 2) {
            let rot: std::collections::HashSet<usize> = (0..n / 2).map(|i| super::pow(g, x, i as i64)).collect();
            if (0..n).filter(|a| !rot.contains(a)).all(|a| orders[a] == 2) {
                return StructureTag::Dihedral(n);
            }
        }
    }
    if is_p_power(n, 2) && n >= 8 && involutions == 1 && orders.contains(&(n / 2)) {
        return StructureTag::Quaternion(n);
    }
    if let Some(p) = prime_of_cube(n) {
        if p > 2 && center(g).order() == p && exponent(g) == p {
            return StructureTag::Extraspecial(p);
        }
    }
    if n == 48 {
        let z = center(g);
        if z.order() == 2 {
            if let Ok(q) = quotient(g, &z) {
                if find_isomorphism(&q.table, &symmetric(4)).is_some() && involutions == 1 {
                    return StructureTag::BinaryOctahedral;
                }
            }
        }
    }
    for p in (2..=n).filter(|&p| is_prime(p) && p * p <= 4 * n) {
        for kind in [LinearKind::Sl, LinearKind::Gl] {
            if kind.order(p) == n {
                let reference = LinearGroup::new(kind, p as u32);
                if find_isomorphism(g, &reference).is_some() {
                    return StructureTag::Linear(kind, p);
                }
            }
        }
    }
    StructureTag::Unknown(n)
}
