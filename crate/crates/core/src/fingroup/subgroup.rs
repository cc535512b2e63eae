use fixedbitset::FixedBitSet;

use super::{commutator, conj, Elem, Group};

/// A subgroup, stored as a sorted member list plus a membership bitset over
/// the parent's element indices. The parent group is not borrowed; every
/// operation takes it explicitly.
#[derive(Clone, Debug)]
pub struct Subgroup {
    members: Vec<Elem>,
    set: FixedBitSet,
    gens: Vec<Elem>,
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.members == other.members
    }
}

impl Eq for Subgroup {}

impl std::hash::Hash for Subgroup {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.members.hash(state);
    }
}

impl Subgroup {
    pub fn trivial<G: Group + ?Sized>(g: &G) -> Self {
        let mut set = FixedBitSet::with_capacity(g.order());
        set.insert(g.identity());
        Subgroup { members: vec![g.identity()], set, gens: Vec::new() }
    }

    pub fn whole<G: Group + ?Sized>(g: &G) -> Self {
        Self::generated(g, &g.generators())
    }

    /// The subgroup generated by `gens`.
    pub fn generated<G: Group + ?Sized>(g: &G, gens: &[Elem]) -> Self {
        let mut out = Self::trivial(g);
        for &a in gens {
            if !out.contains(a) {
                out = out.extended(g, a);
            }
        }
        out
    }

    /// `⟨self, a⟩`.
    pub fn extended<G: Group + ?Sized>(&self, g: &G, a: Elem) -> Self {
        if self.contains(a) {
            return self.clone();
        }
        let mut gens = self.gens.clone();
        gens.push(a);
        let mut set = self.set.clone();
        let mut members = self.members.clone();
        // every old member times the new generator, then saturate
        let mut queue: Vec<Elem> = Vec::new();
        for &x in &self.members {
            let y = g.mul(x, a);
            if !set.contains(y) {
                set.insert(y);
                members.push(y);
                queue.push(y);
            }
        }
        while let Some(x) = queue.pop() {
            for &s in &gens {
                let y = g.mul(x, s);
                if !set.contains(y) {
                    set.insert(y);
                    members.push(y);
                    queue.push(y);
                }
            }
        }
        members.sort_unstable();
        Subgroup { members, set, gens }
    }

    /// Generated subgroup, with a cap: returns `None` as soon as the span
    /// exceeds `cap` elements.
    pub fn generated_capped<G: Group + ?Sized>(g: &G, gens: &[Elem], cap: usize) -> Option<Self> {
        let mut set = FixedBitSet::with_capacity(g.order());
        let id = g.identity();
        set.insert(id);
        let mut members = vec![id];
        let mut head = 0;
        while head < members.len() {
            let x = members[head];
            head += 1;
            for &s in gens {
                let y = g.mul(x, s);
                if !set.contains(y) {
                    set.insert(y);
                    members.push(y);
                    if members.len() > cap {
                        return None;
                    }
                }
            }
        }
        members.sort_unstable();
        Some(Subgroup { members, set, gens: gens.to_vec() })
    }

    /// Builds the subgroup spanned by `elems` (which need not be closed).
    pub fn from_elements<G: Group + ?Sized>(g: &G, elems: &[Elem]) -> Self {
        Self::generated(g, elems)
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn contains(&self, a: Elem) -> bool {
        self.set.contains(a)
    }

    pub fn members(&self) -> &[Elem] {
        &self.members
    }

    pub fn gens(&self) -> &[Elem] {
        &self.gens
    }

    pub fn is_trivial(&self) -> bool {
        self.members.len() == 1
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.set.is_subset(&other.set)
    }

    pub fn intersection<G: Group + ?Sized>(&self, g: &G, other: &Subgroup) -> Subgroup {
        let common: Vec<Elem> = self.members.iter().copied().filter(|&a| other.contains(a)).collect();
        Self::from_elements(g, &common)
    }

    /// `x H x^{-1}`.
    pub fn conjugate<G: Group + ?Sized>(&self, g: &G, x: Elem) -> Subgroup {
        let xi = g.inv(x);
        let mut set = FixedBitSet::with_capacity(g.order());
        let mut members: Vec<Elem> = self
            .members
            .iter()
            .map(|&m| {
                let c = g.mul(g.mul(x, m), xi);
                set.insert(c);
                c
            })
            .collect();
        members.sort_unstable();
        Subgroup { members, set, gens: self.gens.iter().map(|&s| g.mul(g.mul(x, s), xi)).collect() }
    }

    /// True when `x H x^{-1} ⊆ K`.
    pub fn conjugates_into<G: Group + ?Sized>(&self, g: &G, x: Elem, k: &Subgroup) -> bool {
        let xi = g.inv(x);
        self.gens.iter().all(|&s| k.contains(g.mul(g.mul(x, s), xi)))
    }
}

/// `N_G(H)`.
pub fn normalizer<G: Group + ?Sized>(g: &G, h: &Subgroup) -> Subgroup {
    let elems: Vec<Elem> = (0..g.order()).filter(|&x| h.conjugates_into(g, x, h)).collect();
    Subgroup::from_elements(g, &elems)
}

/// `C_G(H)`.
pub fn centralizer<G: Group + ?Sized>(g: &G, h: &Subgroup) -> Subgroup {
    let elems: Vec<Elem> = (0..g.order()).filter(|&x| h.gens().iter().all(|&s| g.mul(x, s) == g.mul(s, x))).collect();
    Subgroup::from_elements(g, &elems)
}

pub fn center<G: Group + ?Sized>(g: &G) -> Subgroup {
    centralizer(g, &Subgroup::whole(g))
}

/// First `x` (in index order) with `x H₁ x^{-1} = H₂`.
pub fn are_conjugate<G: Group + ?Sized>(g: &G, h1: &Subgroup, h2: &Subgroup) -> Option<Elem> {
    if h1.order() != h2.order() {
        return None;
    }
    (0..g.order()).find(|&x| h1.conjugates_into(g, x, h2))
}

pub fn is_normal<G: Group + ?Sized>(g: &G, h: &Subgroup) -> bool {
    g.generators().into_iter().all(|x| h.conjugates_into(g, x, h))
}

/// Smallest normal subgroup containing `elems`.
pub fn normal_closure<G: Group + ?Sized>(g: &G, elems: &[Elem]) -> Subgroup {
    let ggens = g.generators();
    let mut h = Subgroup::generated(g, elems);
    loop {
        let mut grown = false;
        let hgens = h.gens().to_vec();
        'outer: for &x in &ggens {
            for &s in &hgens {
                let c = conj(g, x, s);
                if !h.contains(c) {
                    h = h.extended(g, c);
                    grown = true;
                    break 'outer;
                }
            }
        }
        if !grown {
            return h;
        }
    }
}

/// `[G, G]`, the normal closure of commutators of generators.
pub fn derived_subgroup<G: Group + ?Sized>(g: &G) -> Subgroup {
    let gens = g.generators();
    let mut comms = Vec::new();
    for &a in &gens {
        for &b in &gens {
            comms.push(commutator(g, a, b));
        }
    }
    normal_closure(g, &comms)
}

/// Conjugacy classes, each sorted, listed by smallest member.
pub fn conjugacy_classes<G: Group + ?Sized>(g: &G) -> Vec<Vec<Elem>> {
    let n = g.order();
    let mut seen = FixedBitSet::with_capacity(n);
    let mut classes = Vec::new();
    for a in 0..n {
        if seen.contains(a) {
            continue;
        }
        let mut class: Vec<Elem> = Vec::new();
        for x in 0..n {
            let c = conj(g, x, a);
            if !seen.contains(c) {
                seen.insert(c);
                class.push(c);
            }
        }
        class.sort_unstable();
        classes.push(class);
    }
    classes
}

/// A subgroup viewed as a group in its own right; element `i` is
/// `sub.members()[i]` in the parent.
pub struct SubgroupView<'a, G: Group + ?Sized> {
    parent: &'a G,
    sub: Subgroup,
    pos: Vec<u32>,
    gens: Vec<Elem>,
}

impl<'a, G: Group + ?Sized> SubgroupView<'a, G> {
    pub fn new(parent: &'a G, sub: Subgroup) -> Self {
        let mut pos = vec![u32::MAX; parent.order()];
        for (i, &m) in sub.members().iter().enumerate() {
            pos[m] = i as u32;
        }
        let gens = sub.gens().iter().map(|&g| pos[g] as usize).collect();
        SubgroupView { parent, sub, pos, gens }
    }

    pub fn parent(&self) -> &G {
        self.parent
    }

    pub fn subgroup(&self) -> &Subgroup {
        &self.sub
    }

    /// Parent index of a local element.
    pub fn lift(&self, a: Elem) -> Elem {
        self.sub.members()[a]
    }

    /// Local index of a parent element, if it lies in the subgroup.
    pub fn local(&self, x: Elem) -> Option<Elem> {
        match self.pos[x] {
            u32::MAX => None,
            i => Some(i as usize),
        }
    }

    /// Re-expresses a subgroup of the parent (contained in this one) locally.
    pub fn localize(&self, h: &Subgroup) -> Subgroup {
        let elems: Vec<Elem> = h.gens().iter().map(|&x| self.local(x).expect("contained")).collect();
        Subgroup::generated(self, &elems)
    }
}

impl<G: Group + ?Sized> Group for SubgroupView<'_, G> {
    fn order(&self) -> usize {
        self.sub.order()
    }
    fn identity(&self) -> Elem {
        self.pos[self.parent.identity()] as usize
    }
    fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.pos[self.parent.mul(self.lift(a), self.lift(b))] as usize
    }
    fn inv(&self, a: Elem) -> Elem {
        self.pos[self.parent.inv(self.lift(a))] as usize
    }
    fn generators(&self) -> Vec<Elem> {
        self.gens.clone()
    }
    fn label(&self, a: Elem) -> String {
        self.parent.label(self.lift(a))
    }
}
