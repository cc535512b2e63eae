use fixedbitset::FixedBitSet;
use rayon::prelude::*;

use super::{conjugacy_classes, element_order, small_generating_set, Elem, Group};

/// A map between two groups, stored as the image of every source element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupMap {
    images: Vec<Elem>,
}

impl GroupMap {
    pub fn from_images(images: Vec<Elem>) -> Self {
        GroupMap { images }
    }

    pub fn apply(&self, a: Elem) -> Elem {
        self.images[a]
    }

    pub fn images(&self) -> &[Elem] {
        &self.images
    }

    /// `f(xy) = f(x) f(y)`, on all pairs when `|S|^2 <= limit`, otherwise on
    /// every pair `(x, s)` with `s` a source generator (which suffices).
    pub fn is_homomorphism<S: Group + ?Sized, T: Group + ?Sized>(&self, src: &S, tgt: &T, limit: usize) -> bool {
        let n = src.order();
        if self.images.len() != n {
            return false;
        }
        let gens: Vec<Elem> = if n * n <= limit { (0..n).collect() } else { src.generators() };
        (0..n).all(|x| gens.iter().all(|&s| self.images[src.mul(x, s)] == tgt.mul(self.images[x], self.images[s])))
    }

    pub fn is_injective(&self, target_order: usize) -> bool {
        let mut seen = FixedBitSet::with_capacity(target_order);
        self.images.iter().all(|&y| {
            let fresh = !seen.contains(y);
            seen.insert(y);
            fresh
        })
    }

    pub fn is_bijective(&self, target_order: usize) -> bool {
        self.images.len() == target_order && self.is_injective(target_order)
    }

    /// Elements mapping to the identity.
    pub fn kernel<T: Group + ?Sized>(&self, tgt: &T) -> Vec<Elem> {
        let e = tgt.identity();
        (0..self.images.len()).filter(|&x| self.images[x] == e).collect()
    }

    pub fn image_set(&self, target_order: usize) -> Vec<Elem> {
        let mut seen = FixedBitSet::with_capacity(target_order);
        for &y in &self.images {
            seen.insert(y);
        }
        seen.ones().collect()
    }
}

/// Walks the Cayley graph of `⟨gens⟩` from the identity, assigning
/// `f(x s) = f(x) f(s)`. Returns the partial image table (usize::MAX outside
/// the span), or `None` on any inconsistency. A consistent walk over every
/// edge is a homomorphism on the span.
fn walk<S: Group + ?Sized, T: Group + ?Sized>(src: &S, tgt: &T, gens: &[Elem], imgs: &[Elem]) -> Option<Vec<Elem>> {
    let mut f = vec![usize::MAX; src.order()];
    let id = src.identity();
    f[id] = tgt.identity();
    let mut queue = vec![id];
    let mut head = 0;
    while head < queue.len() {
        let x = queue[head];
        head += 1;
        for (&s, &t) in gens.iter().zip(imgs) {
            let y = src.mul(x, s);
            let fy = tgt.mul(f[x], t);
            if f[y] == usize::MAX {
                f[y] = fy;
                queue.push(y);
            } else if f[y] != fy {
                return None;
            }
        }
    }
    Some(f)
}

/// The homomorphism sending `gens[i]` to `imgs[i]`, if one exists and
/// `gens` generate the source.
pub fn extend_hom<S: Group + ?Sized, T: Group + ?Sized>(
    src: &S,
    tgt: &T,
    gens: &[Elem],
    imgs: &[Elem],
) -> Option<GroupMap> {
    assert_eq!(gens.len(), imgs.len());
    let f = walk(src, tgt, gens, imgs)?;
    if f.contains(&usize::MAX) {
        return None;
    }
    Some(GroupMap { images: f })
}

fn order_profile<G: Group + ?Sized>(g: &G) -> (Vec<usize>, Vec<usize>) {
    let orders: Vec<usize> = (0..g.order()).map(|a| element_order(g, a)).collect();
    let mut sorted = orders.clone();
    sorted.sort_unstable();
    (orders, sorted)
}

/// An isomorphism `src → tgt`, by generator-image backtracking.
///
/// Candidate images are filtered by element order; the first generator is
/// only tried against conjugacy-class representatives of the target (any
/// isomorphism can be conjugated so that this holds). Partial assignments
/// are pruned by a consistency walk over the subgroup generated so far.
pub fn find_isomorphism<S: Group + ?Sized, T: Group + ?Sized>(src: &S, tgt: &T) -> Option<GroupMap> {
    if src.order() != tgt.order() {
        return None;
    }
    let (src_ord, src_sorted) = order_profile(src);
    let (tgt_ord, tgt_sorted) = order_profile(tgt);
    if src_sorted != tgt_sorted {
        return None;
    }
    let gens = {
        let g = src.generators();
        if g.len() <= 3 {
            g
        } else {
            small_generating_set(src)
        }
    };
    if gens.is_empty() {
        return Some(GroupMap { images: vec![tgt.identity()] });
    }
    let reps: Vec<Elem> = conjugacy_classes(tgt).into_iter().map(|c| c[0]).collect();
    let first: Vec<Elem> = reps.into_iter().filter(|&t| tgt_ord[t] == src_ord[gens[0]]).collect();
    let cands: Vec<Vec<Elem>> =
        gens[1..].iter().map(|&s| (0..tgt.order()).filter(|&t| tgt_ord[t] == src_ord[s]).collect()).collect();

    first.par_iter().find_map_first(|&t0| {
        let mut imgs = vec![t0];
        search(src, tgt, &gens, &cands, &mut imgs)
    })
}

fn search<S: Group + ?Sized, T: Group + ?Sized>(
    src: &S,
    tgt: &T,
    gens: &[Elem],
    cands: &[Vec<Elem>],
    imgs: &mut Vec<Elem>,
) -> Option<GroupMap> {
    let k = imgs.len();
    walk(src, tgt, &gens[..k], imgs)?;
    if k == gens.len() {
        let m = extend_hom(src, tgt, gens, imgs)?;
        return if m.is_injective(tgt.order()) { Some(m) } else { None };
    }
    for &t in &cands[k - 1] {
        imgs.push(t);
        if let Some(m) = search(src, tgt, gens, cands, imgs) {
            return Some(m);
        }
        imgs.pop();
    }
    None
}
