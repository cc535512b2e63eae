//! Fusion systems `F_S(G)` of finite groups: centric and radical subgroups,
//! chains and their conjugacy classes, the poset `s̄d(F^cr)`, and the
//! automorphism groups of chains in `F` and in the linking system.

mod diagram;

use std::collections::{BTreeMap, HashMap, HashSet};

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::fingroup::{
    centralizer, element_order, is_p_power, normal_closure, normalizer, p_part, quotient, recognize, CayleyTable, Elem,
    Group, GroupMap, Subgroup,
};

pub use diagram::{collapse, Arrow, DecompositionDiagram, PosetNode, SdPoset};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FusionError {
    #[error("{0} is not prime")]
    NotPrime(usize),
    #[error("subgroup of order {order} is not a Sylow {p}-subgroup of a group of order {group}")]
    NotSylow { order: usize, p: usize, group: usize },
    #[error("chain member of order {0} is not F-centric")]
    NotCentric(usize),
    #[error("chain is empty or not strictly increasing")]
    BadChain,
}

fn is_prime(n: usize) -> bool {
    n >= 2 && (2..n).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

/// Automorphisms of a subgroup `P` induced by conjugation by elements of a
/// given subgroup, as a standalone group. Map `i` sends `P.members()[j]` to
/// `P.members()[maps[i][j]]`.
#[derive(Clone, Debug)]
pub struct ConjAction {
    pub maps: Vec<Vec<u32>>,
    /// One conjugating element per map.
    pub reps: Vec<Elem>,
    pub table: CayleyTable,
}

impl ConjAction {
    pub fn new<G: Group + ?Sized>(g: &G, by: &Subgroup, p: &Subgroup) -> Self {
        let members = p.members();
        let pos: HashMap<Elem, u32> = members.iter().enumerate().map(|(i, &m)| (m, i as u32)).collect();
        let mut index: HashMap<Vec<u32>, usize> = HashMap::new();
        let mut maps = Vec::new();
        let mut reps = Vec::new();
        for &x in by.members() {
            let xi = g.inv(x);
            let img: Vec<u32> = members.iter().map(|&m| pos[&g.mul(g.mul(x, m), xi)]).collect();
            if !index.contains_key(&img) {
                index.insert(img.clone(), maps.len());
                maps.push(img);
                reps.push(x);
            }
        }
        let n = maps.len();
        let mut mult = vec![0u32; n * n];
        for a in 0..n {
            for b in 0..n {
                let c: Vec<u32> = maps[b].iter().map(|&j| maps[a][j as usize]).collect();
                mult[a * n + b] = index[&c] as u32;
            }
        }
        let id = index[&(0..members.len() as u32).collect::<Vec<_>>()];
        let gens: Vec<Elem> = by
            .gens()
            .iter()
            .map(|&x| {
                let xi = g.inv(x);
                let img: Vec<u32> = members.iter().map(|&m| pos[&g.mul(g.mul(x, m), xi)]).collect();
                index[&img]
            })
            .filter(|&i| i != id)
            .collect();
        let labels = reps.iter().map(|&x| format!("c_{}", g.label(x))).collect();
        let table = CayleyTable::from_raw(n, mult, id, gens, Some(labels));
        ConjAction { maps, reps, table }
    }

    pub fn order(&self) -> usize {
        self.maps.len()
    }

    /// Index of the map induced by `x`, if present.
    pub fn map_of<G: Group + ?Sized>(&self, g: &G, x: Elem, p: &Subgroup) -> Option<Elem> {
        let members = p.members();
        let xi = g.inv(x);
        let img: Vec<u32> = members
            .iter()
            .map(|&m| members.binary_search(&g.mul(g.mul(x, m), xi)).map(|i| i as u32))
            .collect::<Result<_, _>>()
            .ok()?;
        self.maps.iter().position(|m| *m == img)
    }
}

/// Largest normal `p`-subgroup: generated by the `p`-elements whose normal
/// closure is a `p`-group.
pub fn op_core<G: Group + ?Sized>(g: &G, p: usize) -> Subgroup {
    let mut out = Subgroup::trivial(g);
    for x in 0..g.order() {
        if out.contains(x) || !is_p_power(element_order(g, x), p) {
            continue;
        }
        let nc = normal_closure(g, &[x]);
        if is_p_power(nc.order(), p) {
            out = normal_closure(g, &[out.gens(), &[x]].concat());
        }
    }
    out
}

/// The elements of order prime to `p` in `H`, as a subgroup. For centric
/// `P` these form `O^p(C_G(P))`, the complement to `Z(P)` in `C_G(P)`.
fn p_prime_part<G: Group + ?Sized>(g: &G, h: &Subgroup, p: usize) -> Subgroup {
    let elems: Vec<Elem> = h.members().iter().copied().filter(|&x| element_order(g, x) % p != 0).collect();
    Subgroup::from_elements(g, &elems)
}

/// A chain class: a representative chain inside `S` and the member names.
#[derive(Clone, Debug)]
pub struct ChainClass {
    pub rep: Vec<Subgroup>,
    pub names: Vec<String>,
    /// Number of chains in `S` that are `G`-conjugate to the representative.
    pub conjugates_in_s: usize,
}

/// Automorphism data of one chain `P₀ < … < P_k`.
#[derive(Clone, Debug, Serialize)]
pub struct ChainAutReport {
    /// `|Aut_F(𝐏)|`: automorphisms of `P_k` induced by `∩ N_G(P_i)`.
    pub autf_order: usize,
    /// `|Z(P_k)| · |Aut_F(𝐏)|`.
    pub autl_order: usize,
    pub center_order: usize,
    /// `|∩ N_G(P_i)|`.
    pub normalizer_order: usize,
    /// `|O^p(C_G(P_k))|`.
    pub op_centralizer_order: usize,
    /// `|∩ N_G(P_i)| / |O^p(C_G(P_k))|`, computed independently of `autl_order`.
    pub autl_by_quotient: usize,
    /// `autl_order == autl_by_quotient`.
    pub ses_identity: bool,
    /// Restriction `Aut_L(𝐏) → Aut_L(P₀)` is injective.
    pub restriction_injective: bool,
    /// Restriction `Aut_F(𝐏) → Aut_F(P₀)` is injective (can fail).
    pub restriction_injective_f: bool,
    /// Recognized structure of `Aut_L(𝐏)`.
    pub tag: String,
}

/// A finite group with a chosen Sylow subgroup and its conjugation fusion.
pub struct FusionData<'g, G: Group + ?Sized> {
    g: &'g G,
    s: Subgroup,
    p: usize,
}

impl<'g, G: Group + ?Sized> FusionData<'g, G> {
    /// Finds a Sylow `p`-subgroup by repeatedly adjoining `p`-elements.
    pub fn new(g: &'g G, p: usize) -> Result<Self, FusionError> {
        if !is_prime(p) {
            return Err(FusionError::NotPrime(p));
        }
        let target = p_part(g.order(), p);
        let pelems: Vec<Elem> = (0..g.order()).filter(|&x| is_p_power(element_order(g, x), p)).collect();
        let mut s = Subgroup::trivial(g);
        while s.order() < target {
            let next = pelems
                .iter()
                .filter(|&&x| !s.contains(x))
                .find_map(|&x| {
                    let t = s.extended(g, x);
                    is_p_power(t.order(), p).then_some(t)
                })
                .expect("a p-subgroup below Sylow order extends");
            s = next;
        }
        Ok(FusionData { g, s, p })
    }

    pub fn with_sylow(g: &'g G, s: Subgroup, p: usize) -> Result<Self, FusionError> {
        if !is_prime(p) {
            return Err(FusionError::NotPrime(p));
        }
        if !is_p_power(s.order(), p) || (g.order() / s.order()).is_multiple_of(p) {
            return Err(FusionError::NotSylow { order: s.order(), p, group: g.order() });
        }
        Ok(FusionData { g, s, p })
    }

    pub fn group(&self) -> &G {
        self.g
    }

    pub fn sylow(&self) -> &Subgroup {
        &self.s
    }

    pub fn prime(&self) -> usize {
        self.p
    }

    /// Every subgroup of `S`, ordered by size then member list. Each
    /// subgroup of a `p`-group is reached by a chain of index-`p` normal
    /// extensions from the trivial group.
    pub fn subgroups_of_s(&self) -> Vec<Subgroup> {
        let g = self.g;
        let mut layer = vec![Subgroup::trivial(g)];
        let mut all = layer.clone();
        while !layer.is_empty() {
            let next: HashSet<Subgroup> = layer
                .par_iter()
                .flat_map_iter(|h| {
                    let mut found = Vec::new();
                    for &x in self.s.members() {
                        if h.contains(x) || !h.conjugates_into(g, x, h) {
                            continue;
                        }
                        if h.contains(crate::fingroup::pow(g, x, self.p as i64)) {
                            found.push(h.extended(g, x));
                        }
                    }
                    found
                })
                .collect();
            let mut next: Vec<Subgroup> = next.into_iter().collect();
            next.sort_by(|a, b| a.members().cmp(b.members()));
            all.extend(next.iter().cloned());
            layer = next;
        }
        all.sort_by(|a, b| (a.order(), a.members()).cmp(&(b.order(), b.members())));
        all
    }

    /// Conjugation-induced maps `P → Q`, deduplicated, each as the image
    /// list of `P.members()`.
    pub fn hom_f(&self, p: &Subgroup, q: &Subgroup) -> Vec<GroupMap> {
        if p.order() > q.order() {
            return Vec::new();
        }
        let g = self.g;
        let mut seen: HashSet<Vec<Elem>> = HashSet::new();
        let mut out = Vec::new();
        for x in 0..g.order() {
            if !p.conjugates_into(g, x, q) {
                continue;
            }
            let xi = g.inv(x);
            let img: Vec<Elem> = p.members().iter().map(|&m| g.mul(g.mul(x, m), xi)).collect();
            if seen.insert(img.clone()) {
                out.push(GroupMap::from_images(img));
            }
        }
        out.sort_by(|a, b| a.images().cmp(b.images()));
        out
    }

    /// `Aut_F(P) = N_G(P)/C_G(P)`.
    pub fn aut_f(&self, p: &Subgroup) -> ConjAction {
        ConjAction::new(self.g, &normalizer(self.g, p), p)
    }

    /// `G`-conjugates of `P` that lie in `S`, deduplicated.
    pub fn conjugates_in_s(&self, p: &Subgroup) -> Vec<Subgroup> {
        let g = self.g;
        let mut seen: HashSet<Vec<Elem>> = HashSet::new();
        let mut out = Vec::new();
        for x in 0..g.order() {
            if p.conjugates_into(g, x, &self.s) {
                let c = p.conjugate(g, x);
                if seen.insert(c.members().to_vec()) {
                    out.push(c);
                }
            }
        }
        out
    }

    pub fn is_f_centric(&self, p: &Subgroup) -> bool {
        let g = self.g;
        let sview = &self.s;
        self.conjugates_in_s(p).iter().all(|q| {
            let c = centralizer(g, q);
            c.members().iter().filter(|&&x| sview.contains(x)).all(|&x| q.contains(x))
        })
    }

    /// `O_p(Out_F(P)) = 1`.
    pub fn is_f_radical(&self, p: &Subgroup) -> bool {
        let aut = self.aut_f(p);
        let inn_elems: Vec<Elem> = p.members().iter().filter_map(|&x| aut.map_of(self.g, x, p)).collect();
        let inn = Subgroup::from_elements(&aut.table, &inn_elems);
        let out = quotient(&aut.table, &inn).expect("Inn is normal in Aut");
        op_core(&out.table, self.p).is_trivial()
    }

    /// All F-centric F-radical subgroups of `S`.
    pub fn centric_radical(&self) -> Vec<Subgroup> {
        self.subgroups_of_s().into_par_iter().filter(|h| self.is_f_centric(h) && self.is_f_radical(h)).collect()
    }

    /// Lexicographically least member-list tuple over all `G`-conjugates of
    /// the chain lying in `S`.
    pub fn canonical_chain(&self, chain: &[Subgroup]) -> Vec<Vec<Elem>> {
        let g = self.g;
        let top = chain.last().expect("nonempty chain");
        (0..g.order())
            .filter(|&x| top.conjugates_into(g, x, &self.s))
            .map(|x| chain.iter().map(|h| h.conjugate(g, x).members().to_vec()).collect::<Vec<_>>())
            .min()
            .expect("identity conjugates into S")
    }

    /// First `x` (index order) with `x P_i x^{-1} = Q_i` for all `i`.
    pub fn chains_conjugate(&self, a: &[Subgroup], b: &[Subgroup]) -> Option<Elem> {
        if a.len() != b.len() || a.iter().zip(b).any(|(x, y)| x.order() != y.order()) {
            return None;
        }
        (0..self.g.order()).find(|&x| a.iter().zip(b).all(|(h, k)| h.conjugates_into(self.g, x, k)))
    }

    fn check_chain(&self, chain: &[Subgroup]) -> Result<(), FusionError> {
        if chain.is_empty() || chain.windows(2).any(|w| !(w[0].is_subgroup_of(&w[1]) && w[0].order() < w[1].order())) {
            return Err(FusionError::BadChain);
        }
        Ok(())
    }

    /// Automorphisms of a chain, in `F` and in the linking system.
    pub fn chain_aut(&self, chain: &[Subgroup]) -> Result<ChainAutReport, FusionError> {
        self.check_chain(chain)?;
        let g = self.g;
        for h in chain {
            if !self.is_f_centric(h) {
                return Err(FusionError::NotCentric(h.order()));
            }
        }
        let top = chain.last().unwrap();
        let bottom = &chain[0];
        let nchain = chain_normalizer(g, chain);
        let autf = ConjAction::new(g, &nchain, top);
        let z = centralizer(g, top).intersection(g, top);
        let cent = centralizer(g, top);
        let opc = p_prime_part(g, &cent, self.p);
        let autl_order = z.order() * autf.order();
        let autl_by_quotient = nchain.order() / opc.order();
        // L-level restriction: kernel is (∩N) ∩ O^p(C_G(P₀)) modulo O^p(C_G(P_k))
        let opc0 = p_prime_part(g, &centralizer(g, bottom), self.p);
        let ker = nchain.members().iter().filter(|&&x| opc0.contains(x)).count();
        let restriction_injective = ker == opc.order();
        let restriction_injective_f = {
            let down = ConjAction::new(g, &nchain, bottom);
            down.order() == autf.order()
        };
        let autl_group = quotient(&crate::fingroup::SubgroupView::new(g, nchain.clone()), &{
            let v = crate::fingroup::SubgroupView::new(g, nchain.clone());
            v.localize(&opc)
        })
        .map(|q| recognize(&q.table).to_string())
        .unwrap_or_else(|_| "unknown".into());
        Ok(ChainAutReport {
            autf_order: autf.order(),
            autl_order,
            center_order: z.order(),
            normalizer_order: nchain.order(),
            op_centralizer_order: opc.order(),
            autl_by_quotient,
            ses_identity: autl_order == autl_by_quotient,
            restriction_injective,
            restriction_injective_f,
            tag: autl_group,
        })
    }

    /// Whether restriction `Aut_L(𝐏) → Aut_L(𝐏′)` for a subchain is bijective.
    pub fn restriction_bijective(&self, chain: &[Subgroup], sub: &[Subgroup]) -> bool {
        let g = self.g;
        let n_big = chain_normalizer(g, chain);
        let n_small = chain_normalizer(g, sub);
        let op_big = p_prime_part(g, &centralizer(g, chain.last().unwrap()), self.p);
        let op_small = p_prime_part(g, &centralizer(g, sub.last().unwrap()), self.p);
        let ker = n_big.members().iter().filter(|&&x| op_small.contains(x)).count();
        let injective = ker == op_big.order();
        injective && n_big.order() / op_big.order() == n_small.order() / op_small.order()
    }

    /// The poset of `G`-conjugacy classes of proper chains of F-centric
    /// F-radical subgroups, with all subchain arrows. Node labels carry the
    /// linking-system orders.
    pub fn sd_poset(&self) -> Result<(SdPoset, Vec<ChainClass>), FusionError> {
        let cr = self.centric_radical();
        if cr.is_empty() {
            return Ok((SdPoset::default(), Vec::new()));
        }
        // names by subgroup class
        let mut class_names: BTreeMap<Vec<Elem>, String> = BTreeMap::new();
        let mut counter = 0;
        for h in &cr {
            let key = self.canonical_chain(std::slice::from_ref(h)).remove(0);
            class_names.entry(key).or_insert_with(|| {
                let name = if h.order() == self.s.order() {
                    "S".to_string()
                } else {
                    counter += 1;
                    format!("P{}[{}]", counter, h.order())
                };
                name
            });
        }
        let name_of = |h: &Subgroup| -> String {
            let key = self.canonical_chain(std::slice::from_ref(h)).remove(0);
            class_names[&key].clone()
        };
        // all proper chains among members of `cr`
        let mut chains: Vec<Vec<Subgroup>> = cr.iter().map(|h| vec![h.clone()]).collect();
        let mut frontier = chains.clone();
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for c in &frontier {
                let top = c.last().unwrap();
                for h in &cr {
                    if h.order() > top.order() && top.is_subgroup_of(h) {
                        let mut d = c.clone();
                        d.push(h.clone());
                        next.push(d);
                    }
                }
            }
            chains.extend(next.iter().cloned());
            frontier = next;
        }
        let keyed: Vec<(Vec<Vec<Elem>>, Vec<Subgroup>)> =
            chains.into_par_iter().map(|c| (self.canonical_chain(&c), c)).collect();
        let mut classes: BTreeMap<Vec<Vec<Elem>>, (Vec<Subgroup>, usize)> = BTreeMap::new();
        for (k, c) in keyed {
            let e = classes.entry(k).or_insert_with(|| (c.clone(), 0));
            e.1 += 1;
        }
        // order: by length, then by key
        let mut ordered: Vec<(Vec<Vec<Elem>>, Vec<Subgroup>, usize)> =
            classes.into_iter().map(|(k, (c, n))| (k, c, n)).collect();
        ordered.sort_by(|a, b| (a.0.len(), &a.0).cmp(&(b.0.len(), &b.0)));
        let index: HashMap<Vec<Vec<Elem>>, usize> =
            ordered.iter().enumerate().map(|(i, (k, _, _))| (k.clone(), i)).collect();
        let mut nodes = Vec::new();
        let mut out_classes = Vec::new();
        for (i, (key, _, count)) in ordered.iter().enumerate() {
            let rep: Vec<Subgroup> = key.iter().map(|m| Subgroup::from_elements(self.g, m)).collect();
            let names: Vec<String> = rep.iter().map(&name_of).collect();
            let report = self.chain_aut(&rep)?;
            nodes.push(PosetNode {
                id: i,
                chain: names.clone(),
                autf_order: Some(report.autf_order as u64),
                autl_order: Some(report.autl_order as u64),
                tag: report.tag.clone(),
            });
            out_classes.push(ChainClass { rep, names, conjugates_in_s: *count });
        }
        let mut arrows = Vec::new();
        for (i, cls) in out_classes.iter().enumerate() {
            let k = cls.rep.len();
            let mut targets: BTreeMap<usize, bool> = BTreeMap::new();
            for mask in 1..(1u32 << k) - 1 {
                let sub: Vec<Subgroup> = (0..k).filter(|b| mask & (1 << b) != 0).map(|b| cls.rep[b].clone()).collect();
                let j = index[&self.canonical_chain(&sub)];
                targets.entry(j).or_insert_with(|| sub.len() + 1 == k && self.restriction_bijective(&cls.rep, &sub));
            }
            for (j, bij) in targets {
                arrows.push(Arrow { src: i, dst: j, restriction_bijective: bij });
            }
        }
        Ok((SdPoset { nodes, arrows }, out_classes))
    }
}

/// `∩ N_G(P_i)`.
pub fn chain_normalizer<G: Group + ?Sized>(g: &G, chain: &[Subgroup]) -> Subgroup {
    let elems: Vec<Elem> = (0..g.order()).filter(|&x| chain.iter().all(|h| h.conjugates_into(g, x, h))).collect();
    Subgroup::from_elements(g, &elems)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fingroup::{center, cyclic, symmetric};

    #[test]
    fn sylow_and_subgroups_of_s4() {
        let g = symmetric(4);
        let fd = FusionData::new(&g, 2).unwrap();
        assert_eq!(fd.sylow().order(), 8);
        let subs = fd.subgroups_of_s();
        // D8: 1 + 5 of order 2 + 3 of order 4 + itself
        assert_eq!(subs.len(), 10);
        assert!(FusionData::new(&g, 4).is_err());
        assert!(FusionData::with_sylow(&g, Subgroup::trivial(&g), 2).is_err());
    }

    #[test]
    fn hom_f_counts() {
        let g = symmetric(4);
        let fd = FusionData::new(&g, 2).unwrap();
        for p in fd.subgroups_of_s() {
            let homs = fd.hom_f(&p, &p);
            let expect = normalizer(&g, &p).order() / centralizer(&g, &p).order();
            assert_eq!(homs.len(), expect);
            assert_eq!(fd.aut_f(&p).order(), expect);
        }
        let s = fd.sylow().clone();
        assert!(fd.hom_f(&s, &Subgroup::trivial(&g)).is_empty());
        let z = center(&g);
        assert_eq!(fd.hom_f(&z, &z).len(), 1);
    }

    #[test]
    fn centric_basics() {
        let g = symmetric(4);
        let fd = FusionData::new(&g, 2).unwrap();
        assert!(fd.is_f_centric(fd.sylow()));
        assert!(!fd.is_f_centric(&Subgroup::trivial(&g)));
    }

    #[test]
    fn abelian_sylow_single_class() {
        let g = cyclic(8);
        let fd = FusionData::new(&g, 2).unwrap();
        let (poset, classes) = fd.sd_poset().unwrap();
        assert_eq!(poset.nodes.len(), 1);
        assert_eq!(classes[0].names, vec!["S"]);
        assert!(poset.arrows.is_empty());
    }

    #[test]
    fn trivial_sylow_is_one_point() {
        let g = cyclic(3);
        let fd = FusionData::new(&g, 2).unwrap();
        let (poset, _) = fd.sd_poset().unwrap();
        assert_eq!(poset.nodes.len(), 1);
        assert_eq!(poset.nodes[0].autl_order, Some(1));
    }

    #[test]
    fn s4_poset_and_collapse() {
        let g = symmetric(4);
        let fd = FusionData::new(&g, 2).unwrap();
        let cr = fd.centric_radical();
        let orders: Vec<usize> = cr.iter().map(|h| h.order()).collect();
        assert_eq!(orders, vec![4, 8]);
        let (poset, classes) = fd.sd_poset().unwrap();
        assert!(poset.is_heighted());
        let names: Vec<Vec<String>> = classes.iter().map(|c| c.names.clone()).collect();
        assert_eq!(names.len(), 3);
        assert_eq!(names[2].len(), 2);
        let vs = &poset.nodes[2];
        assert_eq!(vs.autf_order, Some(4));
        assert_eq!(vs.autl_order, Some(8));
        let rep = fd.chain_aut(&classes[2].rep).unwrap();
        assert!(rep.ses_identity);
        assert!(rep.restriction_injective);
        assert!(!rep.restriction_injective_f);
        let d = collapse(&poset);
        assert_eq!(d.nodes.len(), 2);
        assert_eq!(d.edges.len(), 1);
        let sv: Vec<String> = d.nodes.iter().map(|n| n.chain.join("<")).collect();
        assert!(sv.contains(&"S".to_string()));
    }

    #[test]
    fn op_core_of_s4() {
        let g = symmetric(4);
        assert_eq!(op_core(&g, 2).order(), 4);
        assert_eq!(op_core(&g, 3).order(), 1);
    }
}
