//! Modules for permutation groups over prime fields.
//!
//! A module is given by one matrix per generator of `H`; the matrix of an
//! arbitrary element is read from an action table built by walking the
//! Cayley graph, which also proves the generator matrices define a
//! homomorphism (every edge `x -> xg` must satisfy `act(xg) = act(x) act(g)`).

use std::collections::{HashMap, VecDeque};
use std::sync::Arc;

use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::gf::{self, GfMatrix, GfSubspace};
use crate::limits::Limits;
use crate::perm::{PermGroup, Permutation};

/// Largest group whose action table is materialized.
pub const ACTION_TABLE_CAP: u64 = 200_000;

#[derive(Clone, Debug)]
pub struct HModule {
    p: u32,
    dim: usize,
    group: PermGroup,
    gen_matrices: Vec<GfMatrix>,
    table: Arc<HashMap<Permutation, GfMatrix>>,
}

/// Why `H^1(H, V)` is known to vanish.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum H1Vanishing {
    /// `p` does not divide `|H|`.
    CoprimeOrder,
    /// `H` is soluble and acts faithfully and irreducibly.
    SolubleFaithfulIrreducible,
}

/// Basis of `End_H(V)` as matrices over `F_p`.
#[derive(Clone, Debug)]
pub struct CommutantAlgebra {
    pub basis: Vec<GfMatrix>,
}

impl CommutantAlgebra {
    /// `F_p`-dimension of the algebra.
    pub fn e(&self) -> usize {
        self.basis.len()
    }
}

impl HModule {
    /// Builds the module from `(generator, matrix)` pairs. Identity
    /// generators must carry the identity matrix.
    pub fn new(p: u32, dim: usize, degree: usize, action: Vec<(Permutation, GfMatrix)>) -> Result<Self> {
        if !gf::is_prime(p as u64) {
            return Err(Error::InvalidArgument(format!("{p} is not prime")));
        }
        let mut gens = Vec::new();
        let mut mats = Vec::new();
        for (g, m) in action {
            if m.prime() != p {
                return Err(Error::FieldMismatch(p, m.prime()));
            }
            if m.nrows() != dim || m.ncols() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    got: m.nrows().max(m.ncols()),
                });
            }
            if m.inverse().is_none() {
                return Err(Error::NotHomomorphism("singular action matrix".into()));
            }
            if g.is_identity() {
                if !m.is_identity() {
                    return Err(Error::NotHomomorphism(
                        "identity acts by a non-identity matrix".into(),
                    ));
                }
                continue;
            }
            gens.push(g);
            mats.push(m);
        }
        let group = PermGroup::new(degree, gens)?;
        Self::with_group(p, dim, group, mats)
    }

    /// `matrices[i]` is the action of `group.generators()[i]`.
    pub fn with_group(p: u32, dim: usize, group: PermGroup, matrices: Vec<GfMatrix>) -> Result<Self> {
        if matrices.len() != group.generators().len() {
            return Err(Error::DimensionMismatch {
                expected: group.generators().len(),
                got: matrices.len(),
            });
        }
        let table = action_table(p, dim, &group, &matrices)?;
        Ok(HModule {
            p,
            dim,
            group,
            gen_matrices: matrices,
            table: Arc::new(table),
        })
    }

    /// The one-dimensional trivial module.
    pub fn trivial(p: u32, group: PermGroup) -> Result<Self> {
        let mats = vec![GfMatrix::identity(p, 1); group.generators().len()];
        Self::with_group(p, 1, group, mats)
    }

    /// The natural permutation module `F_p^n` of a group of degree `n`.
    pub fn permutation_module(p: u32, group: PermGroup) -> Result<Self> {
        let n = group.degree();
        let mats = group
            .generators()
            .iter()
            .map(|g| permutation_matrix(p, g))
            .collect();
        Self::with_group(p, n, group, mats)
    }

    pub fn prime(&self) -> u32 {
        self.p
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn group(&self) -> &PermGroup {
        &self.group
    }

    pub fn generator_matrices(&self) -> &[GfMatrix] {
        &self.gen_matrices
    }

    /// Number of vectors, `p^dim`, if it fits.
    pub fn size(&self) -> Option<u64> {
        (self.p as u64).checked_pow(self.dim as u32)
    }

    pub fn act(&self, h: &Permutation) -> Result<&GfMatrix> {
        if h.degree() != self.group.degree() {
            return Err(Error::DegreeMismatch {
                expected: self.group.degree(),
                got: h.degree(),
            });
        }
        self.table.get(h).ok_or(Error::NotMember)
    }

    /// `v * act(h)`.
    pub fn act_vector(&self, v: &[u32], h: &Permutation) -> Result<Vec<u32>> {
        Ok(self.act(h)?.apply(v))
    }

    pub fn is_trivial_action(&self) -> bool {
        self.gen_matrices.iter().all(GfMatrix::is_identity)
    }

    pub fn is_faithful(&self) -> bool {
        self.table
            .iter()
            .filter(|(_, m)| m.is_identity())
            .count()
            == 1
    }

    /// `C_V(h)`, the kernel of `1 - act(h)`.
    pub fn fixed_space(&self, h: &Permutation) -> Result<GfSubspace> {
        Ok(gf::kernel(&self.act(h)?.one_minus()))
    }

    /// `[h, V]`, the image of `1 - act(h)`.
    pub fn commutator_space(&self, h: &Permutation) -> Result<GfSubspace> {
        Ok(gf::image(&self.act(h)?.one_minus()))
    }

    /// The submodule generated by `v`.
    pub fn spin(&self, v: &[u32]) -> Result<GfSubspace> {
        if v.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: v.len(),
            });
        }
        Ok(self.spin_vectors(vec![v.to_vec()]))
    }

    fn spin_vectors(&self, seeds: Vec<Vec<u32>>) -> GfSubspace {
        let mut span = GfSubspace::span(self.p, self.dim, seeds.clone());
        let mut queue: VecDeque<Vec<u32>> = span.basis().iter().cloned().collect();
        while let Some(w) = queue.pop_front() {
            for m in &self.gen_matrices {
                let x = m.apply(&w);
                if !span.contains(&x) {
                    span = span.sum(&GfSubspace::span(self.p, self.dim, vec![x.clone()]));
                    queue.push_back(x);
                }
            }
        }
        span
    }

    /// The smallest submodule containing `sub`.
    pub fn submodule_closure(&self, sub: &GfSubspace) -> GfSubspace {
        self.spin_vectors(sub.basis().to_vec())
    }

    /// Exhaustive test: every nonzero vector (up to scalars) spins to `V`.
    pub fn is_irreducible(&self, limits: &Limits) -> Result<bool> {
        if self.dim == 0 {
            return Ok(false);
        }
        let count = self
            .size()
            .filter(|&s| s <= limits.spin_cap)
            .ok_or_else(|| Error::cap("vectors to spin", format!("{}^{}", self.p, self.dim), limits.spin_cap))?;
        for idx in 1..count {
            let v = gf::vector_from_index(idx, self.p, self.dim);
            // one representative per line: leading nonzero coordinate 1
            if v.iter().find(|&&x| x != 0) != Some(&1) {
                continue;
            }
            if !self.spin_vectors(vec![v]).is_full() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// `End_H(V)`: all `X` with `X act(g) = act(g) X` for every generator.
    pub fn commutant(&self) -> CommutantAlgebra {
        let n = self.dim;
        let p = self.p;
        let gens = self.gen_matrices.len();
        // Unknown X_{ab} at index a*n+b; equations (XA - AX)_{ij} per generator.
        let mut sys = GfMatrix::zero(p, n * n, (n * n * gens).max(1));
        for (k, a) in self.gen_matrices.iter().enumerate() {
            for i in 0..n {
                for j in 0..n {
                    let col = k * n * n + i * n + j;
                    // (XA)_{ij} = sum_b X_{ib} A_{bj}
                    for b in 0..n {
                        let idx = i * n + b;
                        let v = (sys.get(idx, col) + a.get(b, j)) % p;
                        sys.set(idx, col, v);
                    }
                    // (AX)_{ij} = sum_b A_{ib} X_{bj}
                    for b in 0..n {
                        let idx = b * n + j;
                        let v = (sys.get(idx, col) + p - a.get(i, b)) % p;
                        sys.set(idx, col, v);
                    }
                }
            }
        }
        let ker = gf::kernel(&sys);
        let basis = ker
            .basis()
            .iter()
            .map(|v| {
                let rows: Vec<Vec<u32>> = v.chunks(n).map(<[u32]>::to_vec).collect();
                GfMatrix::from_rows(p, &rows).expect("square")
            })
            .collect();
        CommutantAlgebra { basis }
    }

    /// The action on an invariant subspace, in the coordinates of its echelon basis.
    pub fn restrict(&self, sub: &GfSubspace) -> Result<HModule> {
        self.check_invariant(sub)?;
        let mats = self
            .gen_matrices
            .iter()
            .map(|m| {
                let rows: Vec<Vec<u32>> = sub
                    .basis()
                    .iter()
                    .map(|b| sub.coordinates(&m.apply(b)))
                    .collect();
                square(self.p, sub.dim(), rows)
            })
            .collect();
        HModule::with_group(self.p, sub.dim(), self.group.clone(), mats)
    }

    /// The action on `V / sub`, using the non-pivot unit vectors as a basis.
    pub fn quotient(&self, sub: &GfSubspace) -> Result<HModule> {
        self.check_invariant(sub)?;
        let free: Vec<usize> = (0..self.dim).filter(|c| !sub.pivots().contains(c)).collect();
        let mats = self
            .gen_matrices
            .iter()
            .map(|m| {
                let rows: Vec<Vec<u32>> = free
                    .iter()
                    .map(|&c| {
                        let r = sub.reduce(&m.apply(&gf::unit_vector(self.dim, c)));
                        free.iter().map(|&k| r[k]).collect()
                    })
                    .collect();
                square(self.p, free.len(), rows)
            })
            .collect();
        HModule::with_group(self.p, free.len(), self.group.clone(), mats)
    }

    fn check_invariant(&self, sub: &GfSubspace) -> Result<()> {
        if sub.ambient_dim() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: sub.ambient_dim(),
            });
        }
        if sub.prime() != self.p {
            return Err(Error::FieldMismatch(self.p, sub.prime()));
        }
        if !self.gen_matrices.iter().all(|m| sub.is_invariant(m)) {
            return Err(Error::Precondition("subspace is not invariant".into()));
        }
        Ok(())
    }

    /// A sufficient condition for `H^1(H, V) = 0`, if one applies.
    pub fn h1_vanishing(&self, limits: &Limits) -> Option<H1Vanishing> {
        let order = self.group.order();
        if (order % self.p).to_u32() != Some(0) {
            return Some(H1Vanishing::CoprimeOrder);
        }
        if self.group.is_soluble()
            && self.is_faithful()
            && self.is_irreducible(limits).unwrap_or(false)
        {
            return Some(H1Vanishing::SolubleFaithfulIrreducible);
        }
        None
    }
}

fn square(p: u32, n: usize, rows: Vec<Vec<u32>>) -> GfMatrix {
    if n == 0 {
        GfMatrix::zero(p, 0, 0)
    } else {
        GfMatrix::from_rows(p, &rows).expect("square rows")
    }
}

/// Matrix of `e_i -> e_{i^g}`.
pub fn permutation_matrix(p: u32, g: &Permutation) -> GfMatrix {
    let n = g.degree();
    let mut m = GfMatrix::zero(p, n, n);
    for i in 0..n {
        m.set(i, g.image(i), 1);
    }
    m
}

fn action_table(
    p: u32,
    dim: usize,
    group: &PermGroup,
    mats: &[GfMatrix],
) -> Result<HashMap<Permutation, GfMatrix>> {
    let order = group.order_u64().filter(|&o| o <= ACTION_TABLE_CAP).ok_or_else(|| {
        Error::cap("acting group order", group.order().to_string(), ACTION_TABLE_CAP)
    })?;
    let mut table = HashMap::with_capacity(order as usize);
    let id = group.identity();
    table.insert(id.clone(), GfMatrix::identity(p, dim));
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        let mx = table[&x].clone();
        for (g, mg) in group.generators().iter().zip(mats) {
            let y = x.compose(g);
            let my = mx.mul(mg);
            match table.get(&y) {
                Some(existing) if *existing != my => {
                    return Err(Error::NotHomomorphism(format!(
                        "two words for {y} act differently"
                    )));
                }
                Some(_) => {}
                None => {
                    table.insert(y.clone(), my);
                    queue.push_back(y);
                }
            }
        }
    }
    Ok(table)
}

/// `Sym(n)` on the sum-zero vectors of `F_p^n`, modulo constants when `p | n`,
/// with generators `(1,2)` and `(1,2,...,n)`.
pub fn deleted_perm_module(n: usize, p: u32) -> Result<HModule> {
    if n < 2 {
        return Err(Error::InvalidArgument("deleted module needs n >= 2".into()));
    }
    if !gf::is_prime(p as u64) {
        return Err(Error::InvalidArgument(format!("{p} is not prime")));
    }
    let gens = if n == 2 {
        vec![Permutation::from_cycles(2, &[vec![1, 2]])?]
    } else {
        vec![
            Permutation::from_cycles(n, &[vec![1, 2]])?,
            Permutation::from_cycles(n, &[(1..=n).collect()])?,
        ]
    };
    let group = PermGroup::new(n, gens)?;
    let perm = HModule::permutation_module(p, group)?;
    let sum_zero: Vec<Vec<u32>> = (1..n)
        .map(|i| {
            let mut v = gf::unit_vector(n, 0);
            v[i] = p - 1;
            v
        })
        .collect();
    let s = GfSubspace::span(p, n, sum_zero);
    let sub = perm.restrict(&s)?;
    if n as u32 % p != 0 {
        return Ok(sub);
    }
    // The constants lie in the sum-zero space exactly when p | n.
    let ones = vec![1u32; n];
    let c = GfSubspace::span(p, sub.dim(), vec![s.coordinates(&ones)]);
    sub.quotient(&c)
}

/// Reduces a vector of an invariant subspace of `F_p^m` under
/// `alpha = diag(betas)` to the first unit vector, when possible.
pub fn diagonal_reduce(betas: &[u32], w: &GfSubspace) -> Result<Option<Vec<u32>>> {
    check_betas(betas, w)?;
    match w.basis().iter().find(|b| b[0] != 0) {
        Some(seed) => diagonal_reduce_from(betas, w, seed).map(Some),
        None => Ok(None),
    }
}

/// As [`diagonal_reduce`], starting from a chosen `seed` in `w` with a
/// nonzero first coordinate. Each step replaces `x` with `beta_i x - x alpha`,
/// killing coordinate `i` and keeping the first one nonzero.
pub fn diagonal_reduce_from(betas: &[u32], w: &GfSubspace, seed: &[u32]) -> Result<Vec<u32>> {
    check_betas(betas, w)?;
    let p = w.prime();
    if !w.contains(seed) {
        return Err(Error::Precondition("seed is not in the subspace".into()));
    }
    if seed[0] % p == 0 {
        return Err(Error::Precondition("seed has zero first coordinate".into()));
    }
    let mut x: Vec<u32> = seed.iter().map(|&c| c % p).collect();
    for i in 1..betas.len() {
        if x[i] == 0 {
            continue;
        }
        let xa: Vec<u32> = x
            .iter()
            .zip(betas)
            .map(|(&c, &b)| ((c as u64 * b as u64) % p as u64) as u32)
            .collect();
        x = gf::add_vec(&gf::scale_vec(&x, betas[i], p), &gf::neg_vec(&xa, p), p);
    }
    let s = gf::inv_mod(x[0], p);
    let out = gf::scale_vec(&x, s, p);
    debug_assert!(w.contains(&out));
    Ok(out)
}

fn check_betas(betas: &[u32], w: &GfSubspace) -> Result<()> {
    let p = w.prime();
    if betas.len() != w.ambient_dim() || betas.is_empty() {
        return Err(Error::DimensionMismatch {
            expected: w.ambient_dim(),
            got: betas.len(),
        });
    }
    let reduced: Vec<u32> = betas.iter().map(|&b| b % p).collect();
    if reduced.contains(&0) {
        return Err(Error::InvalidArgument("scalars must be nonzero".into()));
    }
    for (i, b) in reduced.iter().enumerate() {
        if reduced[..i].contains(b) {
            return Err(Error::InvalidArgument("scalars must be distinct".into()));
        }
    }
    if !w.is_invariant(&GfMatrix::diagonal(p, &reduced)) {
        return Err(Error::Precondition("subspace is not invariant".into()));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn perm(s: &str, n: usize) -> Permutation {
        Permutation::parse(s, Some(n)).unwrap()
    }

    #[test]
    fn deleted_modules() {
        let m = deleted_perm_module(7, 7).unwrap();
        assert_eq!(m.dim(), 5);
        assert_eq!(m.group().order_u64(), Some(5040));
        let m = deleted_perm_module(3, 2).unwrap();
        assert_eq!(m.dim(), 2);
        assert!(m.is_faithful());
        let m = deleted_perm_module(2, 3).unwrap();
        assert_eq!(m.dim(), 1);
        assert_eq!(m.generator_matrices()[0].get(0, 0), 2);
        assert!(deleted_perm_module(1, 2).is_err());
    }

    #[test]
    fn fixed_and_commutator_spaces() {
        let m = deleted_perm_module(7, 7).unwrap();
        let e = perm("()", 7);
        assert_eq!(m.fixed_space(&e).unwrap().dim(), 5);
        assert_eq!(m.commutator_space(&e).unwrap().dim(), 0);
        assert_eq!(m.fixed_space(&perm("(1,2,3,4,5,6,7)", 7)).unwrap().dim(), 1);

        let gl = deleted_perm_module(3, 2).unwrap();
        assert_eq!(gl.fixed_space(&perm("(1,2)", 3)).unwrap().dim(), 1);
        assert_eq!(gl.commutator_space(&perm("(1,2,3)", 3)).unwrap().dim(), 2);
        assert!(matches!(gl.fixed_space(&perm("(1,2)", 4)), Err(Error::DegreeMismatch { .. })));
    }

    #[test]
    fn non_members_rejected() {
        let m = HModule::trivial(2, PermGroup::alternating(4)).unwrap();
        assert_eq!(m.act(&perm("(1,2)", 4)).unwrap_err(), Error::NotMember);
    }

    #[test]
    fn bad_actions_rejected() {
        // (1,2) acting by a matrix of order 3 is not a homomorphism
        let x = GfMatrix::from_rows(2, &[vec![0, 1], vec![1, 1]]).unwrap();
        let r = HModule::new(2, 2, 2, vec![(perm("(1,2)", 2), x)]);
        assert!(matches!(r, Err(Error::NotHomomorphism(_))));
    }

    #[test]
    fn spinning_and_irreducibility() {
        let lim = Limits::default();
        let pm = HModule::permutation_module(3, PermGroup::symmetric(3)).unwrap();
        assert_eq!(pm.spin(&[0, 0, 0]).unwrap().dim(), 0);
        assert!(pm.spin(&[1, 0, 0]).unwrap().is_full());
        assert!(!pm.is_irreducible(&lim).unwrap());
        assert!(deleted_perm_module(3, 2).unwrap().is_irreducible(&lim).unwrap());
        assert!(deleted_perm_module(7, 7).unwrap().is_irreducible(&lim).unwrap());
        let tight = Limits { spin_cap: 10, ..lim };
        assert!(deleted_perm_module(7, 7).unwrap().is_irreducible(&tight).is_err());
    }

    #[test]
    fn commutants() {
        assert_eq!(deleted_perm_module(3, 2).unwrap().commutant().e(), 1);
        let x = GfMatrix::from_rows(2, &[vec![0, 1], vec![1, 1]]).unwrap();
        let c3 = HModule::new(2, 2, 3, vec![(perm("(1,2,3)", 3), x)]).unwrap();
        let f = c3.commutant();
        assert_eq!(f.e(), 2);
        for b in &f.basis {
            assert_eq!(b.mul(&c3.generator_matrices()[0]), c3.generator_matrices()[0].mul(b));
        }
        assert_eq!(HModule::trivial(5, PermGroup::cyclic(3)).unwrap().commutant().e(), 1);
    }

    #[test]
    fn h1_tags() {
        let lim = Limits::default();
        assert_eq!(
            deleted_perm_module(3, 2).unwrap().h1_vanishing(&lim),
            Some(H1Vanishing::SolubleFaithfulIrreducible)
        );
        assert_eq!(
            deleted_perm_module(7, 5).unwrap().h1_vanishing(&lim),
            None
        );
        assert_eq!(
            deleted_perm_module(2, 3).unwrap().h1_vanishing(&lim),
            Some(H1Vanishing::CoprimeOrder)
        );
    }

    #[test]
    fn diagonal_reduction() {
        let w = GfSubspace::span(5, 3, vec![vec![1, 0, 0], vec![0, 1, 0]]);
        let e1 = vec![1, 0, 0];
        assert_eq!(diagonal_reduce_from(&[1, 2, 3], &w, &[1, 1, 0]).unwrap(), e1);
        assert_eq!(diagonal_reduce_from(&[1, 2, 3], &w, &[2, 0, 0]).unwrap(), e1);
        assert_eq!(diagonal_reduce(&[1, 2, 3], &w).unwrap(), Some(e1));
        let w2 = GfSubspace::span(5, 3, vec![vec![0, 1, 0]]);
        assert_eq!(diagonal_reduce(&[1, 2, 3], &w2).unwrap(), None);
        assert!(diagonal_reduce(&[1, 1, 3], &w).is_err());
        assert!(diagonal_reduce(&[1, 0, 3], &w).is_err());
        let skew = GfSubspace::span(5, 3, vec![vec![1, 1, 0]]);
        assert!(diagonal_reduce(&[1, 2, 3], &skew).is_err());
    }
}
