use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use super::{element_order, find_isomorphism, is_normal, CayleyTable, Elem, Group, GroupMap, Subgroup};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SesError {
    #[error("subgroup of order {0} is not normal")]
    NotNormal(usize),
    #[error("|G|/|N| = {got} but the expected quotient has order {expected}")]
    OrderMismatch { got: usize, expected: usize },
}

/// `G/N` as a table, with the coset of each element of `G`.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub table: CayleyTable,
    pub coset_of: Vec<u32>,
    /// Smallest-index representative of each coset.
    pub reps: Vec<Elem>,
}

impl Quotient {
    pub fn project(&self, a: Elem) -> Elem {
        self.coset_of[a] as usize
    }
}

pub fn quotient<G: Group + ?Sized>(g: &G, n: &Subgroup) -> Result<Quotient, SesError> {
    if !is_normal(g, n) {
        return Err(SesError::NotNormal(n.order()));
    }
    let size = g.order();
    let mut coset_of = vec![u32::MAX; size];
    let mut reps = Vec::new();
    for x in 0..size {
        if coset_of[x] != u32::MAX {
            continue;
        }
        let c = reps.len() as u32;
        reps.push(x);
        for &m in n.members() {
            coset_of[g.mul(x, m)] = c;
        }
    }
    let q = reps.len();
    let mult: Vec<u32> = (0..q * q).into_par_iter().map(|i| coset_of[g.mul(reps[i / q], reps[i % q])]).collect();
    let mut gens: Vec<Elem> = g.generators().iter().map(|&a| coset_of[a] as usize).collect();
    gens.sort_unstable();
    gens.dedup();
    gens.retain(|&c| c != coset_of[g.identity()] as usize);
    let labels = reps.iter().map(|&r| format!("{}N", g.label(r))).collect();
    let table = CayleyTable::from_raw(q, mult, coset_of[g.identity()] as usize, gens, Some(labels));
    Ok(Quotient { table, coset_of, reps })
}

/// Outcome of checking `1 → N → G → Q → 1`.
#[derive(Clone, Debug, Serialize)]
pub struct SesReport {
    pub group_order: usize,
    pub normal_order: usize,
    pub is_normal: bool,
    pub quotient_iso: bool,
    /// Generators of a complement, if one exists.
    pub complement: Option<Vec<Elem>>,
    pub complement_order: Option<usize>,
    /// True when the complement was found from the supplied hint lifts.
    pub from_hint: bool,
}

impl SesReport {
    pub fn splits(&self) -> bool {
        self.complement.is_some()
    }
}

/// Checks normality, identifies `G/N` with `q_expect`, and searches for a
/// complement. The search is exhaustive, so `complement == None` means no
/// complement exists.
pub fn sesverify<G: Group + ?Sized, Q: Group + ?Sized>(
    g: &G,
    n: &Subgroup,
    q_expect: &Q,
    hints: &[Elem],
) -> Result<SesReport, SesError> {
    let got = g.order() / n.order();
    if got != q_expect.order() {
        return Err(SesError::OrderMismatch { got, expected: q_expect.order() });
    }
    let quo = quotient(g, n)?;
    let iso: Option<GroupMap> = find_isomorphism(&quo.table, q_expect);
    let found = find_complement(g, n, &quo, hints);
    Ok(SesReport {
        group_order: g.order(),
        normal_order: n.order(),
        is_normal: true,
        quotient_iso: iso.is_some(),
        complement_order: found.as_ref().map(|(k, _)| k.order()),
        complement: found.as_ref().map(|(k, _)| k.gens().to_vec()),
        from_hint: found.map(|(_, h)| h).unwrap_or(false),
    })
}

/// A complement `K` to the normal subgroup `N` (so `K ∩ N = 1`, `KN = G`).
///
/// Any complement maps isomorphically onto `G/N`, so it is generated by lifts
/// of a generating set of the quotient, each lift having the same order as
/// its image. The search enumerates exactly those lift tuples. Hint elements
/// fix the lifts of their own images first; if that fails the unconstrained
/// search runs, so a `None` answer is always exhaustive. The flag reports
/// whether the hints were used.
pub fn find_complement<G: Group + ?Sized>(
    g: &G,
    n: &Subgroup,
    quo: &Quotient,
    hints: &[Elem],
) -> Option<(Subgroup, bool)> {
    let q = &quo.table;
    let qn = q.order();
    if qn == 1 {
        return Some((Subgroup::trivial(g), false));
    }
    let qid = q.identity();
    // quotient generators: hint images first, then greedy completion
    let mut qgens: Vec<Elem> = Vec::new();
    let mut fixed: Vec<Elem> = Vec::new();
    let mut span = Subgroup::trivial(q);
    for &h in hints {
        let c = quo.project(h);
        if c != qid && !span.contains(c) {
            span = span.extended(q, c);
            qgens.push(c);
            fixed.push(h);
        }
    }
    let mut base_span = span;
    let mut extra: Vec<Elem> = Vec::new();
    for c in q.generators().into_iter().chain(0..qn) {
        if base_span.order() == qn {
            break;
        }
        if !base_span.contains(c) {
            base_span = base_span.extended(q, c);
            extra.push(c);
        }
    }
    if !fixed.is_empty() {
        let mut all_q = qgens.clone();
        all_q.extend(&extra);
        if let Some(k) = search_lifts(g, n, quo, &all_q, &fixed) {
            return Some((k, true));
        }
    }
    // unconstrained: a generating set of Q, all lifts free
    let plain: Vec<Elem> = {
        let mut s = Subgroup::trivial(q);
        let mut out = Vec::new();
        for c in q.generators().into_iter().chain(0..qn) {
            if s.order() == qn {
                break;
            }
            if !s.contains(c) {
                s = s.extended(q, c);
                out.push(c);
            }
        }
        out
    };
    search_lifts(g, n, quo, &plain, &[]).map(|k| (k, false))
}

fn search_lifts<G: Group + ?Sized>(
    g: &G,
    n: &Subgroup,
    quo: &Quotient,
    qgens: &[Elem],
    fixed: &[Elem],
) -> Option<Subgroup> {
    let q = &quo.table;
    let qn = q.order();
    let cands: Vec<Vec<Elem>> = qgens
        .iter()
        .enumerate()
        .map(|(i, &c)| {
            if i < fixed.len() {
                let h = fixed[i];
                if element_order(g, h) == element_order(q, c) {
                    vec![h]
                } else {
                    vec![]
                }
            } else {
                let target = element_order(q, c);
                let rep = quo.reps[c];
                n.members()
                    .iter()
                    .map(|&m| g.mul(rep, m))
                    .filter(|&x| element_order(g, x) == target)
                    .collect::<Vec<_>>()
            }
        })
        .collect();
    if cands.iter().any(|c| c.is_empty()) {
        return None;
    }
    let total: usize = cands.iter().map(|c| c.len()).product();
    let radix: Vec<usize> = cands.iter().map(|c| c.len()).collect();
    (0..total).into_par_iter().find_map_first(|mut code| {
        let mut lifts = Vec::with_capacity(radix.len());
        for (i, &r) in radix.iter().enumerate() {
            lifts.push(cands[i][code % r]);
            code /= r;
        }
        let k = Subgroup::generated_capped(g, &lifts, qn)?;
        if k.order() == qn && k.members().iter().all(|&x| x == g.identity() || !n.contains(x)) {
            Some(k)
        } else {
            None
        }
    })
}
