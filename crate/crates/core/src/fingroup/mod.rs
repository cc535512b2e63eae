//! Finite groups given by an element index and a multiplication oracle.
//!
//! Everything here works on element indices `0..order()`. Concrete
//! representations (Cayley tables, permutation-backed matrix groups,
//! automorphism groups, semidirect products) implement [`Group`]; the
//! algorithms are plain scans, which is adequate for the orders this crate
//! deals with (at most a few times 10^5).

mod aut;
mod iso;
mod recognize;
mod reference;
mod semidirect;
mod ses;
mod subgroup;
mod table;

pub use aut::{AutError, AutGroup};
pub use iso::{extend_hom, find_isomorphism, GroupMap};
pub use recognize::{recognize, StructureTag};
pub use reference::{cyclic, direct_product, inv_mod, primitive_root, symmetric, LinearGroup, LinearKind, Mat2};
pub use semidirect::SemidirectProduct;
pub use ses::{find_complement, quotient, sesverify, Quotient, SesError, SesReport};
pub use subgroup::{
    are_conjugate, center, centralizer, conjugacy_classes, derived_subgroup, is_normal, normal_closure, normalizer,
    Subgroup, SubgroupView,
};
pub use table::{CayleyTable, TableError, TableJson};

/// Element index inside a [`Group`].
pub type Elem = usize;

/// A finite group presented by indexed elements.
pub trait Group: Sync {
    fn order(&self) -> usize;
    fn identity(&self) -> Elem;
    fn mul(&self, a: Elem, b: Elem) -> Elem;
    fn inv(&self, a: Elem) -> Elem;
    /// A generating set. Need not be minimal.
    fn generators(&self) -> Vec<Elem>;

    fn label(&self, a: Elem) -> String {
        format!("g{a}")
    }
}

impl<G: Group + ?Sized> Group for &G {
    fn order(&self) -> usize {
        (**self).order()
    }
    fn identity(&self) -> Elem {
        (**self).identity()
    }
    fn mul(&self, a: Elem, b: Elem) -> Elem {
        (**self).mul(a, b)
    }
    fn inv(&self, a: Elem) -> Elem {
        (**self).inv(a)
    }
    fn generators(&self) -> Vec<Elem> {
        (**self).generators()
    }
    fn label(&self, a: Elem) -> String {
        (**self).label(a)
    }
}

pub fn pow<G: Group + ?Sized>(g: &G, a: Elem, e: i64) -> Elem {
    let mut base = if e < 0 { g.inv(a) } else { a };
    let mut e = e.unsigned_abs();
    let mut acc = g.identity();
    while e > 0 {
        if e & 1 == 1 {
            acc = g.mul(acc, base);
        }
        e >>= 1;
        if e > 0 {
            base = g.mul(base, base);
        }
    }
    acc
}

pub fn element_order<G: Group + ?Sized>(g: &G, a: Elem) -> usize {
    let id = g.identity();
    let mut cur = a;
    let mut n = 1;
    while cur != id {
        cur = g.mul(cur, a);
        n += 1;
    }
    n
}

/// `x y x^{-1}`.
pub fn conj<G: Group + ?Sized>(g: &G, x: Elem, y: Elem) -> Elem {
    g.mul(g.mul(x, y), g.inv(x))
}

/// `x y x^{-1} y^{-1}`.
pub fn commutator<G: Group + ?Sized>(g: &G, x: Elem, y: Elem) -> Elem {
    g.mul(g.mul(x, y), g.mul(g.inv(x), g.inv(y)))
}

pub fn exponent<G: Group + ?Sized>(g: &G) -> usize {
    (0..g.order()).fold(1, |acc, a| num_integer::lcm(acc, element_order(g, a)))
}

pub fn is_abelian<G: Group + ?Sized>(g: &G) -> bool {
    let gens = g.generators();
    gens.iter().all(|&a| gens.iter().all(|&b| g.mul(a, b) == g.mul(b, a)))
}

/// Largest power of `p` dividing `n`.
pub fn p_part(n: usize, p: usize) -> usize {
    let mut n = n;
    let mut out = 1;
    while n.is_multiple_of(p) {
        n /= p;
        out *= p;
    }
    out
}

pub fn is_p_power(n: usize, p: usize) -> bool {
    p_part(n, p) == n
}

/// Greedy generating set of the whole group: walks elements in index order
/// and keeps any element outside the span so far, preferring to close the
/// group in one step when a single element does.
pub fn small_generating_set<G: Group + ?Sized>(g: &G) -> Vec<Elem> {
    let n = g.order();
    let mut gens: Vec<Elem> = Vec::new();
    let mut span = Subgroup::trivial(g);
    if n == 1 {
        return gens;
    }
    // start from an element of maximal order
    let first = (0..n).max_by_key(|&a| (element_order(g, a), std::cmp::Reverse(a))).unwrap();
    gens.push(first);
    span = span.extended(g, first);
    while span.order() < n {
        let mut best: Option<(usize, Elem)> = None;
        for a in 0..n {
            if span.contains(a) {
                continue;
            }
            let ext = span.extended(g, a);
            if ext.order() == n {
                best = Some((n, a));
                break;
            }
            if best.is_none_or(|(o, _)| ext.order() > o) {
                best = Some((ext.order(), a));
            }
        }
        let (_, a) = best.expect("span is proper");
        gens.push(a);
        span = span.extended(g, a);
    }
    gens
}

/// Randomized-free spot check of the group axioms: identity, inverses, and
/// associativity on a deterministic sample of triples (all triples when the
/// group is small).
pub fn check_axioms<G: Group + ?Sized>(g: &G, samples: usize) -> bool {
    let n = g.order();
    let id = g.identity();
    for a in 0..n {
        if g.mul(a, id) != a || g.mul(id, a) != a || g.mul(a, g.inv(a)) != id {
            return false;
        }
    }
    if n * n * n <= samples {
        for a in 0..n {
            for b in 0..n {
                let ab = g.mul(a, b);
                for c in 0..n {
                    if g.mul(ab, c) != g.mul(a, g.mul(b, c)) {
                        return false;
                    }
                }
            }
        }
        return true;
    }
    // linear congruential walk, fixed seed
    let mut state: u64 = 0x9E37_79B9_7F4A_7C15;
    let mut next = || {
        state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        ((state >> 33) as usize) % n
    };
    for _ in 0..samples {
        let (a, b, c) = (next(), next(), next());
        if g.mul(g.mul(a, b), c) != g.mul(a, g.mul(b, c)) {
            return false;
        }
    }
    true
}
