//! `Aut(Γ)` by brute force, its extension by `GL2(F_p)`, the Adams
//! automorphism `φ`, and the products `Γ⋊U(GL2 F_p)`, `Γ⋊GL2(F_p)`.

use crate::fingroup::{
    exponent, find_complement, is_abelian, pow, primitive_root, quotient, AutGroup, CayleyTable, Elem, Group, GroupMap,
    LinearGroup, LinearKind, SemidirectProduct, Subgroup,
};

use serde::Serialize;

use super::checks::rho_generators;
use super::{CaseConfig, CaseError, GammaModel, VerificationReport};

pub struct AzData {
    pub aut_order: usize,
    pub ugl_product_order: usize,
    pub gl_product_order: usize,
    pub report: VerificationReport,
}

/// Brute-force `Aut(Γ)`: pair scan for odd `p`, backtracking for `Q₈`.
pub fn aut_gamma(gm: &GammaModel) -> Result<AutGroup, CaseError> {
    Ok(if gm.p == 2 {
        AutGroup::by_backtracking(gm.table.clone())?
    } else {
        AutGroup::extraspecial_pair_scan(gm.table.clone(), gm.a, gm.b, gm.p as usize)?
    })
}

/// `|Aut(Γ)| = p³(p−1)(p²−1)`.
pub fn expected_aut_order(p: usize) -> usize {
    p * p * p * (p - 1) * (p * p - 1)
}

/// Order and extension witness of the brute-force `Aut(Γ)`.
#[derive(Clone, Debug, Serialize)]
pub struct AutGammaSummary {
    pub prime: u32,
    pub aut_order: usize,
    pub expected_order: usize,
    pub inn_order: usize,
    pub gl2_order: usize,
    /// The action on `Γ/Z` is a homomorphism onto `GL2(F_p)`.
    pub onto_gl2: bool,
    pub kernel_is_inn: bool,
    /// Order of a complement to `Inn(Γ)`, if one exists.
    pub complement_order: Option<usize>,
}

impl AutGammaSummary {
    pub fn holds(&self) -> bool {
        self.aut_order == self.expected_order && self.onto_gl2 && self.kernel_is_inn && self.complement_order.is_some()
    }
}

/// `Aut(Γ)` with the sequence `1 → Inn(Γ) → Aut(Γ) → GL2(F_p) → 1` and a
/// complement search; works for `p = 2` too.
pub fn aut_gamma_summary(p: u32) -> Result<AutGammaSummary, CaseError> {
    if !super::PRIMES.contains(&p) {
        return Err(CaseError::UnsupportedPrime(p));
    }
    let gm = GammaModel::new(p, crate::matgroup::default_conductor(p))?;
    let aut = aut_gamma(&gm)?;
    let gl = LinearGroup::new(LinearKind::Gl, p);
    let pi = action_on_quotient(&gm, &aut, &gl);
    let inn = aut.inner_subgroup();
    let onto_gl2 = pi.is_homomorphism(&aut, &gl, 0) && pi.image_set(gl.order()).len() == gl.order();
    let kernel_is_inn = pi.kernel(&gl) == inn.members();
    let quo = quotient(&aut, &inn)?;
    let complement = find_complement(&aut, &inn, &quo, &[]);
    Ok(AutGammaSummary {
        prime: p,
        aut_order: aut.order(),
        expected_order: expected_aut_order(p as usize),
        inn_order: inn.order(),
        gl2_order: gl.order(),
        onto_gl2,
        kernel_is_inn,
        complement_order: complement.map(|(k, _)| k.order()),
    })
}

fn action_on_quotient(gm: &GammaModel, aut: &AutGroup, gl: &LinearGroup) -> GroupMap {
    GroupMap::from_images(
        (0..aut.order()).map(|x| gl.elem_of(&gm.induced_by_images(&aut.images(x))).expect("invertible")).collect(),
    )
}

fn semidirect_order(gm: &GammaModel, aut: &AutGroup, k: &Subgroup) -> Option<usize> {
    let kt = CayleyTable::from_subgroup(aut, k);
    let actions: Vec<Vec<Elem>> = kt.generators().iter().map(|&g| aut.permutation(k.members()[g])).collect();
    SemidirectProduct::from_generator_action(gm.table.clone(), kt, &actions).map(|g| g.order())
}

pub fn verify_az(cfg: &CaseConfig) -> Result<AzData, CaseError> {
    let p = cfg.prime;
    if p == 2 {
        return Err(CaseError::OddOnly { what: "verify_az" });
    }
    let q = p as usize;
    let mut r = VerificationReport::new(cfg);
    let gm = GammaModel::new(p, p)?;
    let t = &gm.table;
    let aut = aut_gamma(&gm)?;
    let expect = expected_aut_order(q);
    r.check(
        "az.aut_order",
        "|Aut(Γ)| = p³(p−1)(p²−1)",
        aut.order() == expect,
        format!("{} by pair scan (expected {expect})", aut.order()),
    );
    let counted = (q - 1) * q * q * q * (q * q - 1);
    r.check(
        "az.aut_count",
        "|Aut_F(Γ)| = (p−1)·p³(p²−1) equals the brute-force |Aut(Γ)|",
        counted == aut.order(),
        format!("{counted}"),
    );

    // Independent enumeration: closure of explicit automorphisms.
    let xi = primitive_root(p as u64) as usize;
    let (d, sx) = rho_generators(p, p)?;
    let phi_imgs = vec![pow(t, gm.a, xi as i64), gm.b];
    let psi_imgs = vec![gm.b, t.inv(gm.a)];
    let conj_imgs = |x: Elem| -> Vec<Elem> {
        let xi_ = t.inv(x);
        vec![t.mul(t.mul(x, gm.a), xi_), t.mul(t.mul(x, gm.b), xi_)]
    };
    let mut seeds = vec![conj_imgs(gm.a), conj_imgs(gm.b), phi_imgs.clone(), psi_imgs];
    seeds.push(gm.conj_images(&d)?.expect("D normalizes Γ"));
    seeds.push(gm.conj_images(&sx)?.expect("σ normalizes Γ"));
    let closed = AutGroup::closure(t.clone(), vec![gm.a, gm.b], &seeds, 2 * expect)?;
    r.check(
        "az.aut_closure",
        "closing inner, ρ-image, φ and A ↦ B, B ↦ A⁻¹ under composition gives all of Aut(Γ)",
        closed.order() == aut.order(),
        format!("{}", closed.order()),
    );

    // Aut(Γ) → GL2(F_p) through the action on Γ/Z.
    let gl = LinearGroup::new(LinearKind::Gl, p);
    let pi = action_on_quotient(&gm, &aut, &gl);
    let inn = aut.inner_subgroup();
    let hom = pi.is_homomorphism(&aut, &gl, 0);
    let onto = pi.image_set(gl.order()).len() == gl.order();
    let ker_is_inn = pi.kernel(&gl) == inn.members();
    r.check(
        "az.ses",
        "1 → Inn(Γ) → Aut(Γ) → GL2(F_p) → 1 is exact",
        hom && onto && ker_is_inn,
        format!("|Inn| = {}, surjective = {onto}", inn.order()),
    );
    let quo = quotient(&aut, &inn)?;
    let elem_of = |imgs: &[Elem]| aut.elem_of_images(imgs).expect("automorphism");
    let (cd, cs, phi) =
        (elem_of(&gm.conj_images(&d)?.unwrap()), elem_of(&gm.conj_images(&sx)?.unwrap()), elem_of(&phi_imgs));
    let complement = find_complement(&aut, &inn, &quo, &[cd, cs, phi]);
    let inn_table = CayleyTable::from_subgroup(&aut, &inn);
    let elem_ab = is_abelian(&inn_table) && exponent(&inn_table) == q;
    r.check(
        "az.affine",
        "Aut(Γ) ≅ F_p² ⋊ GL2(F_p) = Aff2(F_p): Inn(Γ) elementary abelian with a complement",
        elem_ab && complement.is_some(),
        match &complement {
            Some((k, hinted)) => format!("complement of order {}, contains ρ-image and φ: {hinted}", k.order()),
            None => "no complement (exhaustive)".into(),
        },
    );

    let phi_mat = gl.matrix(pi.apply(phi));
    let extends =
        crate::fingroup::extend_hom(t, t, &[gm.a, gm.b], &phi_imgs).is_some_and(|m| m.is_bijective(t.order()));
    r.check(
        "az.adams",
        "φ: A ↦ A^ξ, B ↦ B extends to Aut(Γ) with upper triangular image of determinant ξ",
        extends && phi_mat[2] == 0 && gl.det(pi.apply(phi)) as usize == xi,
        format!("ξ = {xi}, image [[{},{}],[{},{}]]", phi_mat[0], phi_mat[1], phi_mat[2], phi_mat[3]),
    );

    let ugl = LinearGroup::new(LinearKind::UGl, p);
    let gen_ugl = Subgroup::generated(&gl, &[pi.apply(cd), pi.apply(cs), pi.apply(phi)]);
    r.check(
        "az.ugl_generation",
        "the images of D, σ'_ξ and φ generate U(GL2 F_p)",
        gen_ugl.order() == ugl.order() && gen_ugl.members().iter().all(|&x| gl.matrix(x)[2] == 0),
        format!("order {}", gen_ugl.order()),
    );

    let (mut ugl_order, mut gl_order) = (0, 0);
    if let Some((k, _)) = complement {
        let upper: Vec<Elem> = k.members().iter().copied().filter(|&x| gl.matrix(pi.apply(x))[2] == 0).collect();
        let ku = Subgroup::from_elements(&aut, &upper);
        ugl_order = semidirect_order(&gm, &aut, &ku).unwrap_or(0);
        gl_order = semidirect_order(&gm, &aut, &k).unwrap_or(0);
    }
    let e_ugl = q.pow(4) * (q - 1) * (q - 1);
    let e_gl = q.pow(4) * (q - 1) * (q * q - 1);
    r.check(
        "az.ugl_product",
        "|Γ⋊U(GL2 F_p)| = p⁴(p−1)²",
        ugl_order == e_ugl,
        format!("{ugl_order} (expected {e_ugl})"),
    );
    r.check(
        "az.gl_product",
        "|Γ⋊GL2(F_p)| = p⁴(p−1)(p²−1) = (p−1)·|Γ⋊SL2(F_p)|",
        gl_order == e_gl,
        format!("{gl_order} (expected {e_gl})"),
    );
    Ok(AzData { aut_order: aut.order(), ugl_product_order: ugl_order, gl_product_order: gl_order, report: r })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cases::Case;

    #[test]
    fn az_at_3() {
        let cfg = CaseConfig::new(Case::AZ, None, 1, Some(12)).unwrap();
        let d = verify_az(&cfg).unwrap();
        assert!(d.report.all_pass(), "{}", d.report.to_text());
        assert_eq!((d.aut_order, d.ugl_product_order, d.gl_product_order), (432, 324, 1296));
    }

    #[test]
    fn q8_backtracking() {
        let gm = GammaModel::new(2, 8).unwrap();
        assert_eq!(aut_gamma(&gm).unwrap().order(), expected_aut_order(2));
    }

    #[test]
    fn q8_aut_is_s4() {
        let s = aut_gamma_summary(2).unwrap();
        assert!(s.holds(), "{s:?}");
        assert_eq!((s.aut_order, s.inn_order, s.gl2_order, s.complement_order), (24, 4, 6, Some(6)));
    }
}
