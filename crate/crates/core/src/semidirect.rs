//! Arithmetic in `V^u ⋊ H`, with `H` acting diagonally on the `u` copies.
//!
//! An element `(v, h)` stands for `h v`; products follow
//! `(v, h)(w, k) = (v act(k) + w, hk)`, and the affine embedding sends
//! `(v, h)` to the map `x -> x act(h) + v` on the vectors of `V^u`.

use num_bigint::BigUint;
use rand::Rng;

use crate::error::{Error, Result};
use crate::gf::{self, GfMatrix};
use crate::limits::Limits;
use crate::modrep::HModule;
use crate::perm::{PermGroup, Permutation};

#[derive(Clone, Debug)]
pub struct SdGroup {
    module: HModule,
    u: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SdElement {
    pub v: Vec<u32>,
    pub h: Permutation,
}

impl SdGroup {
    pub fn new(module: HModule, u: usize) -> Result<Self> {
        if u == 0 {
            return Err(Error::InvalidArgument("multiplicity must be at least 1".into()));
        }
        Ok(SdGroup { module, u })
    }

    pub fn module(&self) -> &HModule {
        &self.module
    }

    pub fn multiplicity(&self) -> usize {
        self.u
    }

    pub fn top(&self) -> &PermGroup {
        self.module.group()
    }

    pub fn prime(&self) -> u32 {
        self.module.prime()
    }

    /// `F_p`-dimension of `V^u`.
    pub fn base_dim(&self) -> usize {
        self.module.dim() * self.u
    }

    pub fn order(&self) -> BigUint {
        BigUint::from(self.prime()).pow(self.base_dim() as u32) * self.top().order()
    }

    pub fn identity(&self) -> SdElement {
        SdElement {
            v: vec![0; self.base_dim()],
            h: self.top().identity(),
        }
    }

    pub fn element(&self, v: Vec<u32>, h: Permutation) -> Result<SdElement> {
        if v.len() != self.base_dim() {
            return Err(Error::DimensionMismatch {
                expected: self.base_dim(),
                got: v.len(),
            });
        }
        self.module.act(&h)?;
        let p = self.prime();
        Ok(SdElement {
            v: v.into_iter().map(|x| x % p).collect(),
            h,
        })
    }

    /// The translation by `v`.
    pub fn translation(&self, v: Vec<u32>) -> Result<SdElement> {
        self.element(v, self.top().identity())
    }

    /// `(0, h)`.
    pub fn lift(&self, h: &Permutation) -> Result<SdElement> {
        self.element(vec![0; self.base_dim()], h.clone())
    }

    /// Lifts of the generators of `H` followed by the unit translations.
    pub fn generators(&self) -> Vec<SdElement> {
        let mut out: Vec<SdElement> = self
            .top()
            .generators()
            .iter()
            .map(|h| self.lift(h).expect("generator of H"))
            .collect();
        for i in 0..self.base_dim() {
            out.push(SdElement {
                v: gf::unit_vector(self.base_dim(), i),
                h: self.top().identity(),
            });
        }
        out
    }

    fn check(&self, a: &SdElement) -> Result<()> {
        if a.v.len() != self.base_dim() || a.h.degree() != self.top().degree() {
            return Err(Error::InvalidArgument("element of a different semidirect product".into()));
        }
        Ok(())
    }

    /// `v act(h)` applied block by block.
    pub fn act(&self, v: &[u32], h: &Permutation) -> Result<Vec<u32>> {
        let m = self.module.act(h)?;
        Ok(apply_blocks(m, v))
    }

    pub fn multiply(&self, a: &SdElement, b: &SdElement) -> Result<SdElement> {
        self.check(a)?;
        self.check(b)?;
        let va = self.act(&a.v, &b.h)?;
        Ok(SdElement {
            v: gf::add_vec(&va, &b.v, self.prime()),
            h: a.h.compose(&b.h),
        })
    }

    pub fn inverse(&self, a: &SdElement) -> Result<SdElement> {
        self.check(a)?;
        let hi = a.h.inverse();
        let v = gf::neg_vec(&self.act(&a.v, &hi)?, self.prime());
        Ok(SdElement { v, h: hi })
    }

    pub fn pow(&self, a: &SdElement, mut e: u64) -> Result<SdElement> {
        let mut base = a.clone();
        let mut acc = self.identity();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.multiply(&acc, &base)?;
            }
            base = self.multiply(&base, &base)?;
            e >>= 1;
        }
        Ok(acc)
    }

    /// `a^b = b^-1 a b`.
    pub fn conjugate(&self, a: &SdElement, b: &SdElement) -> Result<SdElement> {
        let bi = self.inverse(b)?;
        self.multiply(&self.multiply(&bi, a)?, b)
    }

    /// If `o = |h|`, then `(v, h)^o` is a translation, of order 1 or `p`.
    pub fn element_order(&self, a: &SdElement) -> Result<u64> {
        let o = a.h.order();
        let t = self.pow(a, o)?;
        Ok(if t.v.iter().all(|&x| x == 0) { o } else { o * self.prime() as u64 })
    }

    pub fn random_element<R: Rng + ?Sized>(&self, rng: &mut R) -> SdElement {
        let p = self.prime();
        SdElement {
            v: (0..self.base_dim()).map(|_| rng.gen_range(0..p)).collect(),
            h: self.top().random_element(rng),
        }
    }

    /// Number of points of the affine embedding, `p^{nu}`, if within the cap.
    pub fn affine_degree(&self, limits: &Limits) -> Result<usize> {
        (self.prime() as u64)
            .checked_pow(self.base_dim() as u32)
            .filter(|&d| d <= limits.degree_cap)
            .map(|d| d as usize)
            .ok_or_else(|| {
                Error::cap(
                    "affine degree",
                    format!("{}^{}", self.prime(), self.base_dim()),
                    limits.degree_cap,
                )
            })
    }

    /// The permutation `x -> x act(h) + v` of the vectors of `V^u`, indexed
    /// in base `p` with the first coordinate least significant.
    pub fn affine_image(&self, a: &SdElement, limits: &Limits) -> Result<Permutation> {
        self.check(a)?;
        let degree = self.affine_degree(limits)?;
        let p = self.prime();
        let m = self.module.act(&a.h)?;
        let dim = self.base_dim();
        let images = (0..degree as u64)
            .map(|i| {
                let x = gf::vector_from_index(i, p, dim);
                let y = gf::add_vec(&apply_blocks(m, &x), &a.v, p);
                gf::vector_index(&y, p) as u32
            })
            .collect();
        Permutation::from_images(images)
    }

    /// The affine embedding of the whole group.
    pub fn to_affine_perm(&self, limits: &Limits) -> Result<PermGroup> {
        let degree = self.affine_degree(limits)?;
        let gens = self
            .generators()
            .iter()
            .map(|g| self.affine_image(g, limits))
            .collect::<Result<Vec<_>>>()?;
        PermGroup::new(degree, gens)
    }

    /// Whether `elements` generate the whole group, decided in the affine embedding.
    pub fn generates(&self, elements: &[SdElement], limits: &Limits) -> Result<bool> {
        let degree = self.affine_degree(limits)?;
        let imgs = elements
            .iter()
            .map(|g| self.affine_image(g, limits))
            .collect::<Result<Vec<_>>>()?;
        Ok(PermGroup::new(degree, imgs)?.order() == &self.order())
    }
}

fn apply_blocks(m: &GfMatrix, v: &[u32]) -> Vec<u32> {
    let n = m.nrows();
    if n == 0 {
        return Vec::new();
    }
    v.chunks(n).flat_map(|b| m.apply(b)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modrep::deleted_perm_module;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn gl22(u: usize) -> SdGroup {
        SdGroup::new(deleted_perm_module(3, 2).unwrap(), u).unwrap()
    }

    fn perm(s: &str, n: usize) -> Permutation {
        Permutation::parse(s, Some(n)).unwrap()
    }

    #[test]
    fn group_laws() {
        let g = gl22(2);
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            let a = g.random_element(&mut rng);
            let b = g.random_element(&mut rng);
            let c = g.random_element(&mut rng);
            assert_eq!(g.multiply(&g.identity(), &a).unwrap(), a);
            let ab_c = g.multiply(&g.multiply(&a, &b).unwrap(), &c).unwrap();
            let a_bc = g.multiply(&a, &g.multiply(&b, &c).unwrap()).unwrap();
            assert_eq!(ab_c, a_bc);
            assert_eq!(g.multiply(&a, &g.inverse(&a).unwrap()).unwrap(), g.identity());
        }
    }

    #[test]
    fn orders() {
        let g = gl22(1);
        let t = g.translation(vec![1, 0]).unwrap();
        assert_eq!(g.element_order(&t).unwrap(), 2);
        let x = g.element(vec![1, 0], perm("(1,2)", 3)).unwrap();
        let o = g.element_order(&x).unwrap();
        assert!(o == 2 || o == 4);
        let lim = Limits::default();
        assert_eq!(g.affine_image(&x, &lim).unwrap().order(), o);
    }

    #[test]
    fn affine_embeddings() {
        let lim = Limits::default();
        let a = gl22(1).to_affine_perm(&lim).unwrap();
        assert_eq!((a.degree(), a.order_u64()), (4, Some(24)));
        let a = gl22(2).to_affine_perm(&lim).unwrap();
        assert_eq!((a.degree(), a.order_u64()), (16, Some(96)));
        let triv = SdGroup::new(HModule::trivial(5, PermGroup::trivial(1)).unwrap(), 1).unwrap();
        assert_eq!(triv.to_affine_perm(&lim).unwrap().order_u64(), Some(5));
    }

    #[test]
    fn generation() {
        let lim = Limits::default();
        let g = gl22(1);
        assert!(g.generates(&g.generators(), &lim).unwrap());
        let ts = vec![g.translation(vec![1, 0]).unwrap(), g.translation(vec![0, 1]).unwrap()];
        assert!(!g.generates(&ts, &lim).unwrap());
    }
}
