use super::{extend_hom, Elem, Group};

/// `N ⋊ H` for an action of `H` on `N` by automorphisms, given as a table
/// `action[h][n] = h · n`. Element `(n, h)` has index `h * |N| + n`, and
/// `(n₁, h₁)(n₂, h₂) = (n₁ · (h₁ · n₂), h₁ h₂)`.
#[derive(Clone, Debug)]
pub struct SemidirectProduct<N: Group, H: Group> {
    n: N,
    h: H,
    action: Vec<Vec<u32>>,
}

impl<N: Group, H: Group> SemidirectProduct<N, H> {
    /// Builds the action table from the images of `H`'s generators, which
    /// must be automorphisms of `N` and must satisfy the relations of `H`.
    /// Returns `None` otherwise.
    pub fn from_generator_action(n: N, h: H, gen_action: &[Vec<Elem>]) -> Option<Self> {
        let hg = h.generators();
        assert_eq!(hg.len(), gen_action.len());
        let ng = n.generators();
        for perm in gen_action {
            let imgs: Vec<Elem> = ng.iter().map(|&x| perm[x]).collect();
            let m = extend_hom(&n, &n, &ng, &imgs)?;
            if m.images() != perm.as_slice() || !m.is_bijective(n.order()) {
                return None;
            }
        }
        // walk H's Cayley graph; a consistent walk is a homomorphism into Sym(N)
        let nn = n.order();
        let mut action: Vec<Option<Vec<u32>>> = vec![None; h.order()];
        action[h.identity()] = Some((0..nn as u32).collect());
        let mut queue = vec![h.identity()];
        let mut head = 0;
        while head < queue.len() {
            let x = queue[head];
            head += 1;
            for (&s, perm) in hg.iter().zip(gen_action) {
                let y = h.mul(x, s);
                let ax = action[x].as_ref().unwrap();
                let composed: Vec<u32> = (0..nn).map(|v| ax[perm[v]]).collect();
                match &action[y] {
                    None => {
                        action[y] = Some(composed);
                        queue.push(y);
                    }
                    Some(existing) if *existing != composed => return None,
                    _ => {}
                }
            }
        }
        let action = action.into_iter().collect::<Option<Vec<_>>>()?;
        Some(SemidirectProduct { n, h, action })
    }

    pub fn normal_part(&self) -> &N {
        &self.n
    }

    pub fn complement_part(&self) -> &H {
        &self.h
    }

    pub fn pair(&self, n: Elem, h: Elem) -> Elem {
        h * self.n.order() + n
    }

    pub fn split(&self, a: Elem) -> (Elem, Elem) {
        (a % self.n.order(), a / self.n.order())
    }

    pub fn act(&self, h: Elem, n: Elem) -> Elem {
        self.action[h][n] as usize
    }

    /// Indices of `N × {1}`.
    pub fn normal_members(&self) -> Vec<Elem> {
        (0..self.n.order()).map(|x| self.pair(x, self.h.identity())).collect()
    }

    /// Indices of `{1} × H`.
    pub fn complement_members(&self) -> Vec<Elem> {
        (0..self.h.order()).map(|y| self.pair(self.n.identity(), y)).collect()
    }
}

impl<N: Group, H: Group> Group for SemidirectProduct<N, H> {
    fn order(&self) -> usize {
        self.n.order() * self.h.order()
    }
    fn identity(&self) -> Elem {
        self.pair(self.n.identity(), self.h.identity())
    }
    fn mul(&self, a: Elem, b: Elem) -> Elem {
        let (n1, h1) = self.split(a);
        let (n2, h2) = self.split(b);
        self.pair(self.n.mul(n1, self.act(h1, n2)), self.h.mul(h1, h2))
    }
    fn inv(&self, a: Elem) -> Elem {
        let (n, h) = self.split(a);
        let hi = self.h.inv(h);
        self.pair(self.act(hi, self.n.inv(n)), hi)
    }
    fn generators(&self) -> Vec<Elem> {
        let mut g: Vec<Elem> = self.n.generators().into_iter().map(|x| self.pair(x, self.h.identity())).collect();
        g.extend(self.h.generators().into_iter().map(|y| self.pair(self.n.identity(), y)));
        g
    }
    fn label(&self, a: Elem) -> String {
        let (n, h) = self.split(a);
        format!("({}, {})", self.n.label(n), self.h.label(h))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fingroup::{center, check_axioms, cyclic, find_isomorphism, is_abelian, symmetric, Subgroup};

    #[test]
    fn dihedral_from_inversion() {
        // C3 ⋊ C2 with inversion is S3
        let inv3: Vec<Elem> = (0..3).map(|x| (3 - x) % 3).collect();
        let s = SemidirectProduct::from_generator_action(cyclic(3), cyclic(2), &[inv3]).unwrap();
        assert_eq!(s.order(), 6);
        assert!(check_axioms(&s, 1000));
        assert!(!is_abelian(&s));
        assert!(find_isomorphism(&s, &symmetric(3)).is_some());
    }

    #[test]
    fn trivial_action_is_direct() {
        let id: Vec<Elem> = (0..4).collect();
        let s = SemidirectProduct::from_generator_action(cyclic(4), cyclic(2), &[id]).unwrap();
        assert!(is_abelian(&s));
        assert_eq!(center(&s).order(), 8);
        assert_eq!(Subgroup::whole(&s).order(), 8);
    }

    #[test]
    fn rejects_bad_actions() {
        // x ↦ 2x on C3 has order 2, but C3 acting this way violates g^3 = 1
        let dbl: Vec<Elem> = (0..3).map(|x| 2 * x % 3).collect();
        assert!(SemidirectProduct::from_generator_action(cyclic(3), cyclic(3), &[dbl]).is_none());
        // not an automorphism
        let bad: Vec<Elem> = vec![1, 0, 2];
        assert!(SemidirectProduct::from_generator_action(cyclic(3), cyclic(2), &[bad]).is_none());
    }
}
