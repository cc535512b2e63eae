//! The extraspecial group `Γ` as a matrix group together with its
//! coordinates on `Γ/Z(Γ) ≅ F_p²`.

use crate::fingroup::{CayleyTable, Elem, Group, Mat2};
use crate::matgroup::{std_matrix_in, CycMatrix, MatError, MatrixGroup, StdMatrix, DEFAULT_CAP};

/// `Γ = ⟨A, B, ζI⟩` for odd `p`, `Γ = ⟨iA, iB⟩ ≅ Q₈` for `p = 2`.
pub struct GammaModel {
    pub p: u32,
    pub conductor: u32,
    pub group: MatrixGroup,
    pub table: CayleyTable,
    pub a: Elem,
    pub b: Elem,
    /// Generator of the center (`ζI`, or `−I` at p = 2).
    pub z: Elem,
    pub mat_a: CycMatrix,
    pub mat_b: CycMatrix,
    /// `coords[x] = (i, j)` with `x ≡ A^i B^j` modulo the center.
    coords: Vec<(u32, u32)>,
}

impl GammaModel {
    pub fn new(p: u32, conductor: u32) -> Result<Self, MatError> {
        let (wa, wb) = if p == 2 { (StdMatrix::APrime, StdMatrix::BPrime) } else { (StdMatrix::A, StdMatrix::B) };
        let mat_a = std_matrix_in(p, wa, conductor)?;
        let mat_b = std_matrix_in(p, wb, conductor)?;
        let mut gens = vec![mat_a.clone(), mat_b.clone()];
        let zmat = if p == 2 {
            CycMatrix::identity(2, conductor).neg()
        } else {
            let z = std_matrix_in(p, StdMatrix::ZetaI, conductor)?;
            gens.push(z.clone());
            z
        };
        let group = MatrixGroup::closure(&gens, DEFAULT_CAP)?;
        let table = CayleyTable::from_group(&group);
        let find = |m: &CycMatrix| group.elem_of(m).expect("generator lies in the closure");
        let (a, b, z) = (find(&mat_a), find(&mat_b), find(&zmat));
        let mut coords = vec![(u32::MAX, u32::MAX); group.order()];
        let q = p as usize;
        let mut ai = group.identity();
        for i in 0..q {
            let mut aibj = ai;
            for j in 0..q {
                let mut w = aibj;
                for _ in 0..q {
                    coords[w] = (i as u32, j as u32);
                    w = group.mul(w, z);
                }
                aibj = group.mul(aibj, b);
            }
            ai = group.mul(ai, a);
        }
        debug_assert!(coords.iter().all(|c| c.0 != u32::MAX));
        Ok(GammaModel { p, conductor, group, table, a, b, z, mat_a, mat_b, coords })
    }

    pub fn order(&self) -> usize {
        self.group.order()
    }

    pub fn coords(&self, x: Elem) -> (u32, u32) {
        self.coords[x]
    }

    /// `[x A x⁻¹, x B x⁻¹]` as elements of `Γ`, if `x` normalizes `Γ`.
    pub fn conj_images(&self, x: &CycMatrix) -> Result<Option<Vec<Elem>>, MatError> {
        let x = x.lift(self.conductor)?;
        let xi = x.inverse()?;
        let mut out = Vec::with_capacity(2);
        for g in [&self.mat_a, &self.mat_b] {
            let c = x.try_mul(g)?.try_mul(&xi)?;
            match self.group.elem_of(&c) {
                Some(e) => out.push(e),
                None => return Ok(None),
            }
        }
        Ok(Some(out))
    }

    /// The matrix over `F_p` of an automorphism of `Γ` acting on `Γ/Z`, in
    /// the basis `(A, B)` with images written as columns.
    pub fn induced_by_images(&self, imgs: &[Elem]) -> Mat2 {
        let (a1, c1) = self.coords(imgs[0]);
        let (b1, d1) = self.coords(imgs[1]);
        [a1, b1, c1, d1]
    }

    /// The induced matrix of conjugation by `x`, if `x` normalizes `Γ`.
    pub fn induced_matrix(&self, x: &CycMatrix) -> Result<Option<Mat2>, MatError> {
        Ok(self.conj_images(x)?.map(|imgs| self.induced_by_images(&imgs)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn coordinates_cover_quotient() {
        for p in [2u32, 3, 5] {
            let m = crate::matgroup::default_conductor(p);
            let g = GammaModel::new(p, m).unwrap();
            let q = p as usize;
            assert_eq!(g.order(), q * q * q);
            let mut seen = std::collections::HashSet::new();
            for x in 0..g.order() {
                seen.insert(g.coords(x));
            }
            assert_eq!(seen.len(), q * q);
            assert_eq!(g.coords(g.a), (1, 0));
            assert_eq!(g.coords(g.b), (0, 1));
            assert_eq!(g.coords(g.z), (0, 0));
        }
    }
}
