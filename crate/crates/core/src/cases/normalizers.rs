//! The chain normalizer `N(Γ ⊂ S)` and the full normalizer `N(Γ)`.

use std::collections::HashMap;

use crate::cyclo::CycNum;
use crate::fingroup::{
    cyclic, element_order, is_normal, recognize, sesverify, symmetric, AutGroup, CayleyTable, Elem, Group, GroupMap,
    LinearGroup, LinearKind, SemidirectProduct, StructureTag, Subgroup, SubgroupView,
};
use crate::matgroup::{std_matrix_in, CycMatrix, MatrixGroup, StdMatrix, DEFAULT_CAP};

use super::checks::rho_generators;
use super::{CaseConfig, CaseError, GammaModel, VerificationReport};

/// Normalizer groups of one case together with the checks made on them.
pub struct Normalizers {
    pub gamma: GammaModel,
    pub chain_order: usize,
    pub chain_tag: String,
    pub full_order: usize,
    pub full_tag: String,
    /// Whether `1 → Γ → N_full → N_full/Γ → 1` splits (recorded at p = 2).
    pub full_splits: Option<bool>,
    pub report: VerificationReport,
}

pub fn build_normalizers(cfg: &CaseConfig) -> Result<Normalizers, CaseError> {
    if cfg.prime == 2 {
        build_p2(cfg)
    } else {
        build_odd(cfg)
    }
}

fn elem(g: &MatrixGroup, m: &CycMatrix) -> Elem {
    g.elem_of(m).expect("generator lies in the closure")
}

fn build_odd(cfg: &CaseConfig) -> Result<Normalizers, CaseError> {
    let p = cfg.prime;
    let q = p as usize;
    let mut r = VerificationReport::new(cfg);
    let gm = GammaModel::new(p, p)?;
    let (d, sx) = rho_generators(p, p)?;
    let zeta_i = std_matrix_in(p, StdMatrix::ZetaI, p)?;
    let chain =
        MatrixGroup::closure(&[gm.mat_a.clone(), gm.mat_b.clone(), zeta_i.clone(), d.clone(), sx.clone()], cfg.cap)?;
    let expect_chain = q.pow(4) * (q - 1);
    r.check(
        "nchain.order",
        "|⟨Γ, ρ(U(SL2 F_p))⟩| = p⁴(p−1)",
        chain.order() == expect_chain,
        format!("{} (expected {expect_chain})", chain.order()),
    );
    let gamma_sub =
        Subgroup::generated(&chain, &[elem(&chain, &gm.mat_a), elem(&chain, &gm.mat_b), elem(&chain, &zeta_i)]);
    let (ed, es) = (elem(&chain, &d), elem(&chain, &sx));
    let usl = LinearGroup::new(LinearKind::USl, p);
    let ses = sesverify(&chain, &gamma_sub, &usl, &[ed, es])?;
    r.check("nchain.gamma_normal", "Γ ⊴ N(Γ⊂S)", ses.is_normal, "");
    r.check(
        "nchain.quotient",
        "N(Γ⊂S)/Γ ≅ U(SL2 F_p)",
        ses.quotient_iso,
        format!("quotient order {}", chain.order() / gamma_sub.order()),
    );
    r.check(
        "nchain.split",
        "1 → Γ → N(Γ⊂S) → U(SL2 F_p) → 1 splits",
        ses.splits(),
        match ses.complement_order {
            Some(o) => format!("complement of order {o}, generated from the ρ-image lifts: {}", ses.from_hint),
            None => "no complement (exhaustive)".into(),
        },
    );
    let rho_img = Subgroup::generated(&chain, &[ed, es]);
    let meets_trivially = rho_img.intersection(&chain, &gamma_sub).is_trivial();
    r.check(
        "nchain.rho_complement",
        "ρ(U(SL2 F_p)) ∩ Γ = 1 and |ρ-image|·|Γ| = |N(Γ⊂S)|",
        meets_trivially && rho_img.order() * gamma_sub.order() == chain.order(),
        format!("|ρ-image| = {}", rho_img.order()),
    );
    let dets_ok = (0..chain.order()).all(|x| chain.matrix(x).det().is_one());
    if p == 3 {
        r.skip(
            "nchain.special",
            "N(Γ⊂S) ≤ SU(p)",
            format!("D has determinant ζ at p = 3; all determinants one = {dets_ok}"),
        );
        su3_model(&mut r)?;
    } else {
        r.check("nchain.special", "N(Γ⊂S) ≤ SU(p)", dets_ok, "");
    }
    let chain_tag = format!("Γ⋊U(SL2 F{p})");

    // N_full = Γ ⋊ K_SL with K_SL a complement of Inn(Γ) in the automorphisms acting trivially on Z(Γ)
    let aut = AutGroup::extraspecial_pair_scan(gm.table.clone(), gm.a, gm.b, q)?;
    let asl_elems: Vec<Elem> = (0..aut.order()).filter(|&x| aut.apply(x, gm.z) == gm.z).collect();
    let asl = Subgroup::from_elements(&aut, &asl_elems);
    let inn = aut.inner_subgroup();
    let view = SubgroupView::new(&aut, asl.clone());
    let inn_local = view.localize(&inn);
    let conj_aut = |x: &CycMatrix| -> Result<Option<Elem>, CaseError> {
        Ok(gm.conj_images(x)?.and_then(|imgs| aut.elem_of_images(&imgs)))
    };
    let (cd, cs) = (conj_aut(&d)?.expect("D normalizes Γ"), conj_aut(&sx)?.expect("σ normalizes Γ"));
    let sl = LinearGroup::new(LinearKind::Sl, p);
    let hints = [view.local(cd).unwrap(), view.local(cs).unwrap()];
    let ses_full = sesverify(&view, &inn_local, &sl, &hints)?;
    r.check(
        "nfull.aut_sl",
        "the automorphisms of Γ trivial on Z(Γ) form Inn(Γ).SL2(F_p)",
        asl.order() == q * q * q * (q * q - 1) && ses_full.quotient_iso,
        format!("order {}", asl.order()),
    );
    let Some(kgens) = ses_full.complement.clone() else {
        r.check("nfull.split", "Inn(Γ) has a complement K ≅ SL2(F_p)", false, "no complement");
        return Ok(Normalizers {
            chain_order: chain.order(),
            chain_tag,
            full_order: 0,
            full_tag: String::new(),
            full_splits: None,
            gamma: gm,
            report: r,
        });
    };
    r.check(
        "nfull.split",
        "Inn(Γ) has a complement K ≅ SL2(F_p) containing the ρ-image action",
        ses_full.from_hint,
        format!("|K| = {}", ses_full.complement_order.unwrap()),
    );
    let k = Subgroup::generated(&aut, &kgens.iter().map(|&x| view.lift(x)).collect::<Vec<_>>());
    let kt = CayleyTable::from_subgroup(&aut, &k);
    let actions: Vec<Vec<Elem>> = kt.generators().iter().map(|&g| aut.permutation(k.members()[g])).collect();
    let full =
        SemidirectProduct::from_generator_action(gm.table.clone(), kt, &actions).expect("K acts by automorphisms");
    let expect_full = q.pow(4) * (q * q - 1);
    r.check(
        "nfull.order",
        "|Γ⋊SL2(F_p)| = p⁴(p²−1)",
        full.order() == expect_full,
        format!("{} (expected {expect_full})", full.order()),
    );

    // N(Γ⊂S) → Γ⋊K, γ r ↦ (γ, c_r)
    let embed = embed_chain(&gm, &chain, &gamma_sub, &rho_img, &aut, &k, &full);
    let ok = embed.as_ref().is_some_and(|f| f.is_homomorphism(&chain, &full, 0) && f.is_injective(full.order()));
    r.check(
        "nfull.contains_chain",
        "N(Γ⊂S) embeds in Γ⋊SL2(F_p) with index p+1",
        ok && full.order() == chain.order() * (q + 1),
        format!("index {}", full.order() / chain.order().max(1)),
    );
    Ok(Normalizers {
        chain_order: chain.order(),
        chain_tag,
        full_order: full.order(),
        full_tag: format!("Γ⋊SL2(F{p})"),
        full_splits: Some(true),
        gamma: gm,
        report: r,
    })
}

fn embed_chain(
    gm: &GammaModel,
    chain: &MatrixGroup,
    gamma_sub: &Subgroup,
    rho_img: &Subgroup,
    aut: &AutGroup,
    k: &Subgroup,
    full: &SemidirectProduct<CayleyTable, CayleyTable>,
) -> Option<GroupMap> {
    let to_gamma: HashMap<Elem, Elem> =
        gamma_sub.members().iter().map(|&x| (x, gm.group.elem_of(&chain.matrix(x)).expect("Γ element"))).collect();
    let mut to_k: HashMap<Elem, Elem> = HashMap::new();
    for &rr in rho_img.members() {
        let imgs = gm.conj_images(&chain.matrix(rr)).ok()??;
        let a = aut.elem_of_images(&imgs)?;
        to_k.insert(rr, k.members().binary_search(&a).ok()?);
    }
    let images: Option<Vec<Elem>> = (0..chain.order())
        .map(|x| {
            rho_img.members().iter().find_map(|&rr| {
                let g = chain.mul(x, chain.inv(rr));
                to_gamma.get(&g).map(|&n| full.pair(n, to_k[&rr]))
            })
        })
        .collect();
    Some(GroupMap::from_images(images?))
}

/// The determinant-one model of the p = 3 chain normalizer: `D` rescaled by
/// `ζ₉⁻¹`, which forces conductor 9.
fn su3_model(r: &mut VerificationReport) -> Result<(), CaseError> {
    let m = 9;
    let gm = GammaModel::new(3, m)?;
    let (d, sx) = rho_generators(3, m)?;
    let d1 = d.scale(&CycNum::root(m, -1))?;
    let zeta_i = std_matrix_in(3, StdMatrix::ZetaI, m)?;
    let g = MatrixGroup::closure(
        &[gm.mat_a.clone(), gm.mat_b.clone(), zeta_i.clone(), d1.clone(), sx.clone()],
        DEFAULT_CAP,
    )?;
    let gamma = Subgroup::generated(&g, &[elem(&g, &gm.mat_a), elem(&g, &gm.mat_b), elem(&g, &zeta_i)]);
    let dets = (0..g.order()).all(|x| g.matrix(x).det().is_one());
    let normal = is_normal(&g, &gamma);
    let outcome = if normal {
        let usl = LinearGroup::new(LinearKind::USl, 3);
        sesverify(&g, &gamma, &usl, &[elem(&g, &d1), elem(&g, &sx)]).ok()
    } else {
        None
    };
    let d1_order = element_order(&g, elem(&g, &d1));
    r.check(
        "su3.chain_model",
        "in SU(3), ⟨Γ, ζ₉⁻¹D, σ'₂⟩ has order 162 with Γ-quotient U(SL2 F3)",
        dets && g.order() == 162 && outcome.as_ref().is_some_and(|s| s.quotient_iso),
        format!(
            "order {}, ζ₉⁻¹D has order {d1_order}, extension {}",
            g.order(),
            match &outcome {
                Some(s) if s.splits() => "splits",
                Some(_) => "does not split (exhaustive)",
                None => "not computed",
            }
        ),
    );
    Ok(())
}

fn build_p2(cfg: &CaseConfig) -> Result<Normalizers, CaseError> {
    let mut r = VerificationReport::new(cfg);
    let m = 8;
    let gm = GammaModel::new(2, m)?;
    let f = std_matrix_in(2, StdMatrix::F, m)?;
    let h = std_matrix_in(2, StdMatrix::H, m)?;
    let a = std_matrix_in(2, StdMatrix::A, m)?;
    let b = std_matrix_in(2, StdMatrix::B, m)?;
    let ii = std_matrix_in(2, StdMatrix::ZetaI, m)?;
    let conj =
        |x: &CycMatrix, y: &CycMatrix| -> Result<CycMatrix, CaseError> { Ok(x.try_mul(y)?.try_mul(&x.inverse()?)?) };
    r.check("p2.f_b", "F B F⁻¹ = (iI) A B", conj(&f, &b)? == ii.try_mul(&a)?.try_mul(&b)?, "");
    r.check("p2.f_square", "F² = (iI) A", f.pow(2)? == ii.try_mul(&a)?, "");
    r.check("p2.h_a", "H A H⁻¹ = B", conj(&h, &a)? == b, "");
    r.check("p2.h_b", "H B H⁻¹ = −A", conj(&h, &b)? == a.neg(), "");

    let chain = MatrixGroup::closure(&[gm.mat_a.clone(), gm.mat_b.clone(), f.clone()], cfg.cap)?;
    let chain_tag = recognize(&chain);
    r.check(
        "p2.chain_q16",
        "⟨Γ, F⟩ is generalized quaternion of order 16",
        chain_tag == StructureTag::Quaternion(16),
        chain_tag.to_string(),
    );
    let gamma = Subgroup::generated(&chain, &[elem(&chain, &gm.mat_a), elem(&chain, &gm.mat_b)]);
    let ses = sesverify(&chain, &gamma, &cyclic(2), &[elem(&chain, &f)])?;
    let outside: Vec<usize> =
        (0..chain.order()).filter(|&x| !gamma.contains(x)).map(|x| element_order(&chain, x)).collect();
    r.check(
        "p2.chain_nonsplit",
        "1 → Γ → ⟨Γ, F⟩ → Z/2 → 1 does not split: no preimage of the generator is an involution",
        ses.quotient_iso && !ses.splits() && outside.iter().all(|&o| o >= 4),
        format!("complement search exhaustive; orders of preimages {:?}", {
            let mut o = outside.clone();
            o.sort_unstable();
            o.dedup();
            o
        }),
    );

    let full = MatrixGroup::closure(&[gm.mat_a.clone(), gm.mat_b.clone(), f.clone(), h.clone()], cfg.cap)?;
    let full_tag = recognize(&full);
    r.check(
        "p2.full_o48",
        "⟨Γ, F, H⟩ is binary octahedral of order 48",
        full_tag == StructureTag::BinaryOctahedral && full.order() == 48,
        full_tag.to_string(),
    );
    let gamma_f = Subgroup::generated(&full, &[elem(&full, &gm.mat_a), elem(&full, &gm.mat_b)]);
    let ses_f = sesverify(&full, &gamma_f, &symmetric(3), &[elem(&full, &f), elem(&full, &h)])?;
    r.check(
        "p2.full_quotient",
        "⟨Γ, F, H⟩/Γ ≅ Σ3 ≅ SL2(F2); split status recorded",
        ses_f.quotient_iso,
        format!("extension {}", if ses_f.splits() { "splits" } else { "does not split (exhaustive)" }),
    );
    r.check(
        "p2.index",
        "[⟨Γ,F,H⟩ : ⟨Γ,F⟩] = p + 1",
        full.order() == 3 * chain.order(),
        format!("{} / {}", full.order(), chain.order()),
    );
    let su = (0..full.order()).all(|x| {
        let mat = full.matrix(x);
        mat.is_unitary() && mat.det().is_one()
    });
    r.check("p2.special_unitary", "⟨Γ, F, H⟩ ≤ SU(2)", su, "");
    Ok(Normalizers {
        chain_order: chain.order(),
        chain_tag: chain_tag.to_string(),
        full_order: full.order(),
        full_tag: full_tag.to_string(),
        full_splits: Some(ses_f.splits()),
        gamma: gm,
        report: r,
    })
}

/// Matrix groups that can be exported by name.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BuiltinGroup {
    /// `Γ` (`Q₈` at p = 2).
    Gamma,
    /// `ρ(U(SL2 F_p))`, odd `p`.
    Rho,
    /// `⟨Γ, ρ-image⟩`, or `⟨Γ, F⟩` at p = 2.
    ChainNormalizer,
    /// `⟨Γ, F, H⟩`, p = 2 only (the odd case is realized abstractly).
    FullNormalizer,
}

impl std::str::FromStr for BuiltinGroup {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "gamma" => Ok(Self::Gamma),
            "rho" => Ok(Self::Rho),
            "chain" => Ok(Self::ChainNormalizer),
            "full" => Ok(Self::FullNormalizer),
            other => Err(format!("unknown group `{other}` (expected gamma, rho, chain or full)")),
        }
    }
}

pub fn builtin_group(which: BuiltinGroup, p: u32, cap: usize) -> Result<MatrixGroup, CaseError> {
    if !super::PRIMES.contains(&p) {
        return Err(CaseError::UnsupportedPrime(p));
    }
    let m = crate::matgroup::default_conductor(p);
    let gm = GammaModel::new(p, m)?;
    let mut gens = vec![gm.mat_a.clone(), gm.mat_b.clone()];
    if p != 2 {
        gens.push(std_matrix_in(p, StdMatrix::ZetaI, m)?);
    }
    match which {
        BuiltinGroup::Gamma => return Ok(gm.group),
        BuiltinGroup::Rho | BuiltinGroup::ChainNormalizer if p != 2 => {
            let (d, sx) = rho_generators(p, m)?;
            if which == BuiltinGroup::Rho {
                gens.clear();
            }
            gens.extend([d, sx]);
        }
        BuiltinGroup::ChainNormalizer => gens.push(std_matrix_in(2, StdMatrix::F, m)?),
        BuiltinGroup::FullNormalizer if p == 2 => {
            gens.extend([std_matrix_in(2, StdMatrix::F, m)?, std_matrix_in(2, StdMatrix::H, m)?]);
        }
        BuiltinGroup::Rho => return Err(CaseError::OddOnly { what: "the ρ-image" }),
        BuiltinGroup::FullNormalizer => return Err(CaseError::UnsupportedPrime(p)),
    }
    Ok(MatrixGroup::closure(&gens, cap)?)
}
