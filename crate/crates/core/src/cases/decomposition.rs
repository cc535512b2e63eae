//! Encoded chain data for the Lie-group cases and the resulting diagrams.
//!
//! The conjugacy classes of centric stubborn subgroups and of their chains
//! are taken as given (they are not finitely enumerable); the finite parts
//! (node groups, orders, the torus being characteristic in `S`, inclusions)
//! are recomputed.

use serde::Serialize;

use crate::fingroup::{is_abelian, Group};
use crate::fusion::{collapse, Arrow, DecompositionDiagram, PosetNode, SdPoset};
use crate::matgroup::{in_sylow_model, level_conductor, sylow_generators, MatrixGroup};

use super::az::verify_az;
use super::normalizers::build_normalizers;
use super::{AzData, Case, CaseConfig, CaseError, Normalizers, VerificationReport};

#[derive(Clone, Debug, Serialize)]
pub struct Decomposition {
    /// The chain poset before collapsing.
    pub poset: SdPoset,
    pub diagram: DecompositionDiagram,
    #[serde(skip)]
    pub report: VerificationReport,
}

fn torsion(p: u32, level: u32) -> u64 {
    if p == 2 {
        1 << (level + 1)
    } else {
        (p as u64).pow(level)
    }
}

/// `|T_n|` for the truncated maximal torus of `SU(p)`.
pub fn torus_order(p: u32, level: u32) -> u64 {
    torsion(p, level).pow(p - 1)
}

fn factorial(n: u64) -> u64 {
    (1..=n).product()
}

/// Tests whether `T_n` is the only abelian subgroup of index `p` in
/// `S_n = T_n ⋊ ⟨B⟩`, which makes it characteristic and gives
/// `N(S) = N(T ⊂ S)`. An abelian `A ≠ T` of index `p` would satisfy
/// `|T|/p = |A ∩ T| ≤ |C_T(B)|`. Returns `(|C_T(B)|, |T|, unique)`;
/// `C_T(B)` is counted by enumerating `T` when it has at most 10⁶ elements.
pub fn torus_characteristic(p: u32, level: u32) -> (u64, u64, bool) {
    let t = torsion(p, level);
    let order = torus_order(p, level);
    let n = p as usize;
    let fixed = if order <= 1_000_000 {
        // exponent vectors (e_0..e_{p-1}) mod t with zero sum, shift-invariant
        let mut count = 0u64;
        let mut v = vec![0u64; n - 1];
        loop {
            let s: u64 = v.iter().sum::<u64>() % t;
            let last = (t - s) % t;
            if v.iter().all(|&e| e == last) {
                count += 1;
            }
            let mut i = 0;
            while i < n - 1 {
                v[i] += 1;
                if v[i] < t {
                    break;
                }
                v[i] = 0;
                i += 1;
            }
            if i == n - 1 {
                break;
            }
        }
        count
    } else {
        (0..t).filter(|c| (p as u64 * c).is_multiple_of(t)).count() as u64
    };
    (fixed, order, fixed < order / p as u64)
}

struct NodeSpec {
    chain: &'static [&'static str],
    tag: String,
    order: Option<u64>,
}

/// Whether the case uses the five-class poset `Γ, T, S, Γ⊂S, T⊂S`; for
/// `p ≤ 3` the torus is not stubborn and only `Γ, S, Γ⊂S` remain.
fn uses_w_shape(cfg: &CaseConfig) -> bool {
    cfg.prime >= 5
}

/// The chain poset from encoded class data and computed node groups.
pub fn encoded_poset(cfg: &CaseConfig, norm: &Normalizers, az: Option<&AzData>) -> SdPoset {
    let p = cfg.prime;
    let t = torus_order(p, cfg.level);
    let lie = |s: String| match cfg.case {
        Case::Up => format!("{s} ×S¹ central factor"),
        _ => s,
    };
    let finite = |o: u64| match cfg.case {
        Case::Up => None,
        _ => Some(o),
    };
    let (gamma_tag, gamma_order, chain_tag, chain_order) = match (cfg.case, az) {
        (Case::AZ, Some(a)) => (
            format!("Γ⋊GL2(F{p})"),
            Some(a.gl_product_order as u64),
            format!("Γ⋊U(GL2 F{p})"),
            Some(a.ugl_product_order as u64),
        ),
        (Case::Up, _) if p == 2 => ("Γ.Σ3 (non-split)".to_string(), None, "Γ.Σ2 (non-split)".to_string(), None),
        _ => (
            norm.full_tag.clone(),
            finite(norm.full_order as u64),
            norm.chain_tag.clone(),
            finite(norm.chain_order as u64),
        ),
    };
    let (torus_tag, torus_order_) = match cfg.case {
        Case::AZ => {
            let i = cfg.az_index.unwrap_or(0);
            (format!("T⋊G{i} (|Z(G{i})| = {})", p - 1), None)
        }
        _ => (format!("T⋊Σ{p}"), finite(t * factorial(p as u64))),
    };
    let mut specs = vec![NodeSpec { chain: &["Γ"], tag: lie(gamma_tag), order: gamma_order }];
    if uses_w_shape(cfg) {
        let (s_tag, s_order) = match cfg.case {
            Case::AZ => (format!("N(S) ≤ T⋊G{}", cfg.az_index.unwrap_or(0)), None),
            _ => (format!("T⋊(Z/{p}⋊Z/{})", p - 1), finite(t * (p as u64) * (p as u64 - 1))),
        };
        specs.push(NodeSpec { chain: &["T"], tag: lie(torus_tag), order: torus_order_ });
        specs.push(NodeSpec { chain: &["S"], tag: lie(s_tag.clone()), order: s_order });
        specs.push(NodeSpec { chain: &["Γ", "S"], tag: lie(chain_tag), order: chain_order });
        specs.push(NodeSpec { chain: &["T", "S"], tag: lie(s_tag), order: s_order });
    } else {
        specs.push(NodeSpec { chain: &["S"], tag: lie(torus_tag), order: torus_order_ });
        specs.push(NodeSpec { chain: &["Γ", "S"], tag: lie(chain_tag), order: chain_order });
    }
    let nodes: Vec<PosetNode> = specs
        .into_iter()
        .enumerate()
        .map(|(id, s)| PosetNode {
            id,
            chain: s.chain.iter().map(|c| c.to_string()).collect(),
            autf_order: None,
            autl_order: s.order,
            tag: s.tag,
        })
        .collect();
    let arrows = if uses_w_shape(cfg) {
        let (_, _, unique) = torus_characteristic(p, cfg.level);
        vec![
            Arrow { src: 3, dst: 0, restriction_bijective: false },
            Arrow { src: 3, dst: 2, restriction_bijective: false },
            Arrow { src: 4, dst: 1, restriction_bijective: false },
            Arrow { src: 4, dst: 2, restriction_bijective: unique },
        ]
    } else {
        vec![
            Arrow { src: 2, dst: 0, restriction_bijective: false },
            Arrow { src: 2, dst: 1, restriction_bijective: false },
        ]
    };
    SdPoset { nodes, arrows }
}

/// Builds the normalizers (and the AZ data) and assembles the diagram.
pub fn emit_decomposition(cfg: &CaseConfig) -> Result<Decomposition, CaseError> {
    let norm = build_normalizers(cfg)?;
    let az = if cfg.case == Case::AZ { Some(verify_az(cfg)?) } else { None };
    assemble(cfg, &norm, az.as_ref())
}

pub(crate) fn assemble(cfg: &CaseConfig, norm: &Normalizers, az: Option<&AzData>) -> Result<Decomposition, CaseError> {
    let p = cfg.prime;
    let mut r = VerificationReport::new(cfg);
    let poset = encoded_poset(cfg, norm, az);
    let w = uses_w_shape(cfg);
    let expect = if w { 5 } else { 3 };
    r.check(
        "decomp.classes",
        if w {
            "five conjugacy classes of chains: Γ, T, S, Γ⊂S, T⊂S"
        } else {
            "three conjugacy classes of chains: Γ, S, Γ⊂S"
        },
        poset.nodes.len() == expect,
        format!("{} classes", poset.nodes.len()),
    );
    r.check("decomp.heighted", "the subchain relation is a heighted partial order", poset.is_heighted(), "");

    let lm = level_conductor(p, cfg.level);
    let sgens = sylow_generators(p, cfg.level, lm)?;
    let torus_gens = &sgens[..sgens.len() - 1];
    let torus = MatrixGroup::closure(torus_gens, cfg.cap.min(2 * torus_order(p, cfg.level) as usize + 2));
    let torus_ok = match &torus {
        Ok(g) => is_abelian(g) && g.order() as u64 == torus_order(p, cfg.level),
        Err(_) => false,
    };
    let gamma_nonabelian = !is_abelian(&norm.gamma.group);
    r.check(
        "decomp.gamma_not_torus",
        "Γ is not conjugate to T (Γ is non-abelian, T_n is abelian of order p^(n(p−1)))",
        gamma_nonabelian && torus_ok,
        format!("|T_n| = {}", torus_order(p, cfg.level)),
    );
    let t_in_s = torus_gens.iter().all(|g| in_sylow_model(g, p, cfg.level));
    r.check("decomp.inclusions", "Γ ≤ S and T ≤ S", t_in_s, "generators of T_n lie in S_n");

    if w {
        let (fixed, order, unique) = torus_characteristic(p, cfg.level);
        r.check(
            "decomp.torus_characteristic",
            "T is the unique abelian subgroup of index p in S, so N(S) = N(T⊂S)",
            unique,
            format!("|C_T(B)| = {fixed} < |T|/p = {}", order / p as u64),
        );
    }
    let diagram = collapse(&poset);
    r.check(
        "decomp.pushout",
        "the collapsed diagram is a pushout: Γ ← (Γ⊂S) → torus normalizer",
        diagram.nodes.len() == 3 && diagram.is_pushout_shape(),
        format!("{} nodes, {} edges", diagram.nodes.len(), diagram.edges.len()),
    );
    Ok(Decomposition { poset, diagram, report: r })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn torus_is_characteristic_from_5() {
        assert!(!torus_characteristic(3, 1).2);
        assert!(torus_characteristic(5, 1).2);
        assert_eq!(torus_characteristic(5, 1).0, 5);
        assert!(torus_characteristic(3, 2).2);
        assert!(torus_characteristic(7, 2).2);
    }

    #[test]
    fn sup5_w_poset() {
        let cfg = CaseConfig::new(Case::SUp, Some(5), 1, None).unwrap();
        let d = emit_decomposition(&cfg).unwrap();
        assert!(d.report.all_pass(), "{}", d.report.to_text());
        assert_eq!(d.poset.nodes.len(), 5);
        let names: Vec<String> = d.diagram.nodes.iter().map(|n| n.chain.join("⊂")).collect();
        assert_eq!(names, vec!["Γ", "T", "Γ⊂S"]);
    }
}
