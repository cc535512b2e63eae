use std::collections::HashMap;

use rayon::prelude::*;
use thiserror::Error;

use super::{element_order, extend_hom, pow, CayleyTable, Elem, Group, Subgroup};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum AutError {
    #[error("seed {0} does not define an automorphism")]
    NotAnAutomorphism(usize),
    #[error("automorphism enumeration exceeded the cap of {0} elements")]
    CapExceeded(usize),
    #[error("base group needs {0} generators; at most 4 are supported")]
    TooManyGenerators(usize),
    #[error("base generators do not generate the group")]
    NotGenerating,
}

/// Automorphisms of a finite group `Γ`, each stored as the images of a fixed
/// generator tuple of `Γ`. Product is composition: `(ab)(x) = a(b(x))`.
#[derive(Clone, Debug)]
pub struct AutGroup {
    base: CayleyTable,
    base_gens: Vec<Elem>,
    // for each base element, a word in `base_gens` (indices) evaluating to it
    words: Vec<Vec<u8>>,
    r: usize,
    flat: Vec<u32>,
    index: HashMap<u64, u32>,
    inv: Vec<u32>,
    identity: Elem,
    gens: Vec<Elem>,
}

fn words_for(base: &CayleyTable, gens: &[Elem]) -> Result<Vec<Vec<u8>>, AutError> {
    let mut words: Vec<Option<Vec<u8>>> = vec![None; base.order()];
    words[base.identity()] = Some(Vec::new());
    let mut queue = vec![base.identity()];
    let mut head = 0;
    while head < queue.len() {
        let x = queue[head];
        head += 1;
        for (i, &s) in gens.iter().enumerate() {
            let y = base.mul(x, s);
            if words[y].is_none() {
                let mut w = words[x].clone().unwrap();
                w.push(i as u8);
                words[y] = Some(w);
                queue.push(y);
            }
        }
    }
    words.into_iter().map(|w| w.ok_or(AutError::NotGenerating)).collect()
}

impl AutGroup {
    fn key(&self, imgs: &[u32]) -> u64 {
        Self::pack(imgs)
    }

    fn pack(imgs: &[u32]) -> u64 {
        imgs.iter().fold(0u64, |acc, &x| (acc << 16) | x as u64)
    }

    fn assemble(base: CayleyTable, base_gens: Vec<Elem>, tuples: Vec<u32>) -> Result<Self, AutError> {
        let r = base_gens.len();
        if r > 4 || base.order() > 1 << 16 {
            return Err(AutError::TooManyGenerators(r));
        }
        let words = words_for(&base, &base_gens)?;
        let count = tuples.len().checked_div(r).unwrap_or(1);
        let mut index = HashMap::with_capacity(count);
        for i in 0..count {
            index.insert(Self::pack(&tuples[i * r..(i + 1) * r]), i as u32);
        }
        let id_tuple: Vec<u32> = base_gens.iter().map(|&g| g as u32).collect();
        let identity = index[&Self::pack(&id_tuple)] as usize;
        let mut g =
            AutGroup { base, base_gens, words, r, flat: tuples, index, inv: Vec::new(), identity, gens: Vec::new() };
        g.fill_inverses();
        g.gens = g.spread_generators();
        Ok(g)
    }

    fn fill_inverses(&mut self) {
        let n = self.order();
        let mut inv = vec![u32::MAX; n];
        for a in 0..n {
            if inv[a] != u32::MAX {
                continue;
            }
            let mut powers = vec![self.identity, a];
            let mut cur = a;
            while cur != self.identity {
                cur = self.mul(cur, a);
                powers.push(cur);
            }
            let k = powers.len() - 1;
            for j in 0..=k {
                inv[powers[j]] = powers[k - j] as u32;
            }
        }
        self.inv = inv;
    }

    /// Greedy generating set, scanning elements along a fixed stride so that
    /// early picks are spread through the enumeration order.
    fn spread_generators(&self) -> Vec<Elem> {
        let n = self.order();
        let stride = [1_000_003usize, 7919, 104_729].into_iter().find(|s| num_integer::gcd(*s, n) == 1).unwrap_or(1);
        let mut span = Subgroup::trivial(self);
        let mut gens = Vec::new();
        let mut i = 0usize;
        while span.order() < n {
            let a = (i * stride + 1) % n;
            i += 1;
            if !span.contains(a) {
                span = span.extended(self, a);
                gens.push(a);
            }
        }
        gens
    }

    /// All automorphisms by backtracking over generator images.
    pub fn by_backtracking(base: CayleyTable) -> Result<Self, AutError> {
        let base_gens = {
            let g = base.generators();
            if g.len() <= 4 {
                g
            } else {
                super::small_generating_set(&base)
            }
        };
        let n = base.order();
        let ord: Vec<usize> = (0..n).map(|a| element_order(&base, a)).collect();
        let cands: Vec<Vec<Elem>> = base_gens.iter().map(|&s| (0..n).filter(|&t| ord[t] == ord[s]).collect()).collect();
        let tuples: Vec<Vec<u32>> = if base_gens.is_empty() {
            vec![vec![]]
        } else {
            cands[0]
                .par_iter()
                .map(|&t0| {
                    let mut out = Vec::new();
                    let mut imgs = vec![t0];
                    collect_auts(&base, &base_gens, &cands, &mut imgs, &mut out);
                    out
                })
                .flatten()
                .collect()
        };
        Self::assemble(base, base_gens, tuples.concat())
    }

    /// Automorphisms of an extraspecial group of order `p^3` and exponent
    /// `p` (odd `p`) generated by `a, b`: every pair `(x, y)` with
    /// `x^p = y^p = 1` and `[x, y] ≠ 1` is the image of `(a, b)` under a
    /// unique automorphism.
    pub fn extraspecial_pair_scan(base: CayleyTable, a: Elem, b: Elem, p: usize) -> Result<Self, AutError> {
        let n = base.order();
        let id = base.identity();
        let ptors: Vec<Elem> = (0..n).filter(|&x| x != id && pow(&base, x, p as i64) == id).collect();
        let tuples: Vec<u32> = ptors
            .par_iter()
            .map(|&x| {
                let mut out = Vec::new();
                for &y in &ptors {
                    if base.mul(x, y) != base.mul(y, x) {
                        out.push(x as u32);
                        out.push(y as u32);
                    }
                }
                out
            })
            .flatten()
            .collect();
        Self::assemble(base, vec![a, b], tuples)
    }

    /// The group generated by `seeds` under composition, each seed given by
    /// its images of `base_gens` and checked to be an automorphism.
    pub fn closure(base: CayleyTable, base_gens: Vec<Elem>, seeds: &[Vec<Elem>], cap: usize) -> Result<Self, AutError> {
        let r = base_gens.len();
        let words = words_for(&base, &base_gens)?;
        for (i, s) in seeds.iter().enumerate() {
            let ok = extend_hom(&base, &base, &base_gens, s).map(|m| m.is_bijective(base.order())).unwrap_or(false);
            if !ok {
                return Err(AutError::NotAnAutomorphism(i));
            }
        }
        let eval = |tuple: &[u32], x: Elem| -> u32 {
            words[x].iter().fold(base.identity(), |acc, &w| base.mul(acc, tuple[w as usize] as usize)) as u32
        };
        let mut flat: Vec<u32> = base_gens.iter().map(|&g| g as u32).collect();
        let mut seen: HashMap<u64, u32> = HashMap::new();
        seen.insert(Self::pack(&flat), 0);
        let mut head = 0;
        while head * r < flat.len() {
            let cur: Vec<u32> = flat[head * r..(head + 1) * r].to_vec();
            head += 1;
            for s in seeds {
                // cur ∘ s
                let next: Vec<u32> = s.iter().map(|&x| eval(&cur, x)).collect();
                let k = Self::pack(&next);
                if !seen.contains_key(&k) {
                    if seen.len() >= cap {
                        return Err(AutError::CapExceeded(cap));
                    }
                    seen.insert(k, seen.len() as u32);
                    flat.extend_from_slice(&next);
                }
            }
        }
        Self::assemble(base, base_gens, flat)
    }

    pub fn base(&self) -> &CayleyTable {
        &self.base
    }

    pub fn base_gens(&self) -> &[Elem] {
        &self.base_gens
    }

    /// Images of the base generators under automorphism `a`.
    pub fn images(&self, a: Elem) -> Vec<Elem> {
        self.flat[a * self.r..(a + 1) * self.r].iter().map(|&x| x as usize).collect()
    }

    /// `a(x)` for a base element `x`.
    pub fn apply(&self, a: Elem, x: Elem) -> Elem {
        let t = &self.flat[a * self.r..(a + 1) * self.r];
        self.words[x].iter().fold(self.base.identity(), |acc, &w| self.base.mul(acc, t[w as usize] as usize))
    }

    /// `a` as a permutation of the base group's elements.
    pub fn permutation(&self, a: Elem) -> Vec<Elem> {
        (0..self.base.order()).map(|x| self.apply(a, x)).collect()
    }

    /// The automorphism with the given images of the base generators.
    pub fn elem_of_images(&self, imgs: &[Elem]) -> Option<Elem> {
        let t: Vec<u32> = imgs.iter().map(|&x| x as u32).collect();
        self.index.get(&self.key(&t)).map(|&i| i as usize)
    }

    /// The automorphism agreeing with `f` on the base generators.
    pub fn elem_of_fn(&self, f: impl Fn(Elem) -> Elem) -> Option<Elem> {
        let imgs: Vec<Elem> = self.base_gens.iter().map(|&g| f(g)).collect();
        self.elem_of_images(&imgs)
    }

    /// Conjugation `y ↦ x y x^{-1}`.
    pub fn inner(&self, x: Elem) -> Elem {
        let xi = self.base.inv(x);
        self.elem_of_fn(|g| self.base.mul(self.base.mul(x, g), xi)).expect("inner automorphism present")
    }

    pub fn inner_subgroup(&self) -> Subgroup {
        let elems: Vec<Elem> = self.base.generators().iter().map(|&x| self.inner(x)).collect();
        Subgroup::generated(self, &elems)
    }
}

fn collect_auts(base: &CayleyTable, gens: &[Elem], cands: &[Vec<Elem>], imgs: &mut Vec<Elem>, out: &mut Vec<Vec<u32>>) {
    let k = imgs.len();
    if k < gens.len() {
        // prune: the partial assignment must extend on the subgroup it spans
        let sub = Subgroup::generated(base, &gens[..k]);
        if !consistent_on(base, &sub, &gens[..k], imgs) {
            return;
        }
        for &t in &cands[k] {
            imgs.push(t);
            collect_auts(base, gens, cands, imgs, out);
            imgs.pop();
        }
        return;
    }
    if let Some(m) = extend_hom(base, base, gens, imgs) {
        if m.is_bijective(base.order()) {
            out.push(imgs.iter().map(|&x| x as u32).collect());
        }
    }
}

fn consistent_on(base: &CayleyTable, sub: &Subgroup, gens: &[Elem], imgs: &[Elem]) -> bool {
    let mut f: HashMap<Elem, Elem> = HashMap::with_capacity(sub.order());
    f.insert(base.identity(), base.identity());
    let mut queue = vec![base.identity()];
    let mut head = 0;
    while head < queue.len() {
        let x = queue[head];
        head += 1;
        for (&s, &t) in gens.iter().zip(imgs) {
            let y = base.mul(x, s);
            let fy = base.mul(f[&x], t);
            match f.get(&y) {
                None => {
                    f.insert(y, fy);
                    queue.push(y);
                }
                Some(&v) if v != fy => return false,
                _ => {}
            }
        }
    }
    // injective on the span
    let mut vals: Vec<Elem> = f.values().copied().collect();
    vals.sort_unstable();
    vals.dedup();
    vals.len() == f.len()
}

impl Group for AutGroup {
    fn order(&self) -> usize {
        self.flat.len().checked_div(self.r).unwrap_or(1)
    }
    fn identity(&self) -> Elem {
        self.identity
    }
    fn mul(&self, a: Elem, b: Elem) -> Elem {
        let mut t = [0u32; 4];
        for (slot, &x) in t.iter_mut().zip(&self.flat[b * self.r..(b + 1) * self.r]) {
            *slot = self.apply(a, x as usize) as u32;
        }
        self.index[&self.key(&t[..self.r])] as usize
    }
    fn inv(&self, a: Elem) -> Elem {
        self.inv[a] as usize
    }
    fn generators(&self) -> Vec<Elem> {
        self.gens.clone()
    }
    fn label(&self, a: Elem) -> String {
        let imgs: Vec<String> = self.images(a).iter().map(|&x| self.base.label(x)).collect();
        format!("({})", imgs.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fingroup::{center, check_axioms, cyclic, direct_product, symmetric};

    #[test]
    fn cyclic_prime_has_p_minus_one() {
        for p in [3usize, 5, 7] {
            let a = AutGroup::by_backtracking(cyclic(p)).unwrap();
            assert_eq!(a.order(), p - 1);
        }
    }

    #[test]
    fn klein_and_s3() {
        let v = direct_product(&cyclic(2), &cyclic(2));
        assert_eq!(AutGroup::by_backtracking(v).unwrap().order(), 6);
        let s3 = AutGroup::by_backtracking(symmetric(3)).unwrap();
        assert_eq!(s3.order(), 6);
        assert_eq!(s3.inner_subgroup().order(), 6);
    }

    #[test]
    fn s4_is_complete() {
        let a = AutGroup::by_backtracking(symmetric(4)).unwrap();
        assert_eq!(a.order(), 24);
        assert!(check_axioms(&a, 1 << 20));
        assert!(center(&a).is_trivial());
        let x = a.generators()[0];
        let perm = a.permutation(x);
        let mut sorted = perm.clone();
        sorted.sort_unstable();
        assert_eq!(sorted, (0..24).collect::<Vec<_>>());
    }

    #[test]
    fn closure_matches_backtracking() {
        let d = direct_product(&cyclic(2), &cyclic(4));
        let full = AutGroup::by_backtracking(d.clone()).unwrap();
        let gens = full.base_gens().to_vec();
        let seeds: Vec<Vec<Elem>> = full.generators().iter().map(|&g| full.images(g)).collect();
        let closed = AutGroup::closure(d.clone(), gens.clone(), &seeds, 1000).unwrap();
        assert_eq!(closed.order(), full.order());
        assert_eq!(closed.order(), 8);
        let bad = vec![vec![d.identity(); gens.len()]];
        assert_eq!(AutGroup::closure(d, gens, &bad, 10).unwrap_err(), AutError::NotAnAutomorphism(0));
    }
}
