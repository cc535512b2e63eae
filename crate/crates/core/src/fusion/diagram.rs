use std::collections::BTreeSet;
use std::fmt::Write as _;

use serde::Serialize;

/// One conjugacy class of chains, as a poset node.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PosetNode {
    pub id: usize,
    /// Names of the chain members, smallest first.
    pub chain: Vec<String>,
    #[serde(rename = "autF_order")]
    pub autf_order: Option<u64>,
    #[serde(rename = "autL_order")]
    pub autl_order: Option<u64>,
    pub tag: String,
}

impl PosetNode {
    pub fn length(&self) -> usize {
        self.chain.len()
    }
}

/// `[𝐏] → [𝐏′]` with `𝐏′` conjugate to a proper subchain of `𝐏`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Arrow {
    pub src: usize,
    pub dst: usize,
    /// The induced restriction on linking-system automorphism groups is a
    /// bijection.
    pub restriction_bijective: bool,
}

/// The poset of chain classes with its full subchain relation.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SdPoset {
    pub nodes: Vec<PosetNode>,
    pub arrows: Vec<Arrow>,
}

impl SdPoset {
    /// Arrows dropping exactly one chain member.
    pub fn cover_arrows(&self) -> Vec<&Arrow> {
        self.arrows.iter().filter(|a| self.nodes[a.src].length() == self.nodes[a.dst].length() + 1).collect()
    }

    /// The relation is antisymmetric, transitive, and strictly lowers chain
    /// length along every arrow.
    pub fn is_heighted(&self) -> bool {
        let rel: BTreeSet<(usize, usize)> = self.arrows.iter().map(|a| (a.src, a.dst)).collect();
        let lowers = self.arrows.iter().all(|a| self.nodes[a.src].length() > self.nodes[a.dst].length());
        let antisym = rel.iter().all(|&(a, b)| a != b && !rel.contains(&(b, a)));
        let transitive =
            rel.iter().all(|&(a, b)| rel.iter().filter(|&&(c, _)| c == b).all(|&(_, d)| rel.contains(&(a, d))));
        lowers && antisym && transitive
    }

    pub fn diagram(&self) -> DecompositionDiagram {
        DecompositionDiagram {
            nodes: self.nodes.clone(),
            edges: self.cover_arrows().iter().map(|a| [a.src, a.dst]).collect(),
        }
    }
}

/// The output graph: nodes carry automorphism-group descriptors.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct DecompositionDiagram {
    pub nodes: Vec<PosetNode>,
    pub edges: Vec<[usize; 2]>,
}

impl DecompositionDiagram {
    pub fn to_dot(&self, name: &str) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "digraph \"{name}\" {{");
        for n in &self.nodes {
            let order = n.autl_order.map(|o| o.to_string()).unwrap_or_else(|| "?".into());
            let _ = writeln!(
                s,
                "  n{} [label=\"BAut_L({}): {} ({})\"];",
                n.id,
                n.chain.join(" < "),
                n.tag.replace('"', "'"),
                order
            );
        }
        for [a, b] in &self.edges {
            let _ = writeln!(s, "  n{a} -> n{b};");
        }
        s.push_str("}\n");
        s
    }

    /// Out-degree-zero nodes and the in/out degree of every node.
    fn degrees(&self) -> (Vec<usize>, Vec<usize>) {
        let mut indeg = vec![0; self.nodes.len()];
        let mut outdeg = vec![0; self.nodes.len()];
        for [a, b] in &self.edges {
            outdeg[*a] += 1;
            indeg[*b] += 1;
        }
        (indeg, outdeg)
    }

    /// Pushout shape: one node with two outgoing edges to two distinct sinks.
    pub fn is_pushout_shape(&self) -> bool {
        if self.nodes.len() != 3 || self.edges.len() != 2 {
            return false;
        }
        let (indeg, outdeg) = self.degrees();
        let corner = (0..3).filter(|&i| outdeg[i] == 2 && indeg[i] == 0).count();
        let sinks = (0..3).filter(|&i| indeg[i] == 1 && outdeg[i] == 0).count();
        corner == 1 && sinks == 2
    }
}

fn find(parent: &mut [usize], x: usize) -> usize {
    let mut r = x;
    while parent[r] != r {
        r = parent[r];
    }
    let mut y = x;
    while parent[y] != r {
        let next = parent[y];
        parent[y] = r;
        y = next;
    }
    r
}

/// Collapses a poset along arrows whose restriction map is bijective.
///
/// Step one merges the source of each such cover arrow into its target (the
/// smaller chain's node survives and keeps its label). Step two removes a
/// merged node that is left with exactly one incoming and one outgoing edge,
/// composing the two edges.
pub fn collapse(poset: &SdPoset) -> DecompositionDiagram {
    let n = poset.nodes.len();
    let mut parent: Vec<usize> = (0..n).collect();
    let mut merged = vec![false; n];
    for a in poset.cover_arrows() {
        if a.restriction_bijective {
            let (rs, rd) = (find(&mut parent, a.src), find(&mut parent, a.dst));
            if rs != rd {
                parent[rs] = rd;
                merged[rd] = true;
            }
        }
    }
    let roots: Vec<usize> = (0..n).filter(|&i| find(&mut parent, i) == i).collect();
    let mut edges: BTreeSet<(usize, usize)> = BTreeSet::new();
    for a in poset.cover_arrows() {
        let (rs, rd) = (find(&mut parent, a.src), find(&mut parent, a.dst));
        if rs != rd {
            edges.insert((rs, rd));
        }
    }
    // contract pass-through merged nodes
    let mut alive: BTreeSet<usize> = roots.iter().copied().collect();
    loop {
        let candidate = alive.iter().copied().find(|&v| {
            merged[v]
                && edges.iter().filter(|e| e.1 == v).count() == 1
                && edges.iter().filter(|e| e.0 == v).count() == 1
        });
        let Some(v) = candidate else { break };
        let u = edges.iter().find(|e| e.1 == v).unwrap().0;
        let w = edges.iter().find(|e| e.0 == v).unwrap().1;
        edges.retain(|e| e.0 != v && e.1 != v);
        if u != w {
            edges.insert((u, w));
        }
        alive.remove(&v);
    }
    let keep: Vec<usize> = alive.into_iter().collect();
    let renum = |old: usize| keep.iter().position(|&k| k == old).unwrap();
    let nodes = keep.iter().enumerate().map(|(i, &k)| PosetNode { id: i, ..poset.nodes[k].clone() }).collect();
    let edges = edges.into_iter().map(|(a, b)| [renum(a), renum(b)]).collect();
    DecompositionDiagram { nodes, edges }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn node(id: usize, chain: &[&str]) -> PosetNode {
        PosetNode {
            id,
            chain: chain.iter().map(|s| s.to_string()).collect(),
            autf_order: None,
            autl_order: None,
            tag: chain.join("<"),
        }
    }

    fn w_poset(bijective_ts_s: bool) -> SdPoset {
        SdPoset {
            nodes: vec![node(0, &["G"]), node(1, &["T"]), node(2, &["S"]), node(3, &["G", "S"]), node(4, &["T", "S"])],
            arrows: vec![
                Arrow { src: 3, dst: 0, restriction_bijective: false },
                Arrow { src: 3, dst: 2, restriction_bijective: false },
                Arrow { src: 4, dst: 1, restriction_bijective: false },
                Arrow { src: 4, dst: 2, restriction_bijective: bijective_ts_s },
            ],
        }
    }

    #[test]
    fn w_collapses_to_pushout() {
        let p = w_poset(true);
        assert!(p.is_heighted());
        let d = collapse(&p);
        assert_eq!(d.nodes.len(), 3);
        assert!(d.is_pushout_shape());
        let names: Vec<String> = d.nodes.iter().map(|n| n.chain.join("<")).collect();
        assert_eq!(names, vec!["G", "T", "G<S"]);
    }

    #[test]
    fn no_eligible_arrows_is_unchanged() {
        let p = w_poset(false);
        let d = collapse(&p);
        assert_eq!(d, p.diagram());
    }

    #[test]
    fn dot_output() {
        let d = collapse(&w_poset(true));
        let dot = d.to_dot("x");
        assert!(dot.starts_with("digraph"));
        assert!(dot.contains("BAut_L(G < S)"));
        assert_eq!(dot.matches("->").count(), 2);
    }
}
