//! Linear-algebra criteria for generation and invariable generation in
//! `V^u ⋊ H`, crown-rank bounds, and the row calculus for powers of a
//! simple group.
//!
//! Conditions over `F = End_H(V)` are compiled to `F_p`: the `F`-multiples
//! of a vector `x` are spanned by the images `x B_k` under a basis `B_k` of
//! the commutant, so `F`-independence of vectors modulo an `F`-subspace is
//! `F_p`-independence of all their `B_k`-images.

use std::collections::{BTreeSet, HashMap};

use num_integer::Integer;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::gf::{self, GfMatrix, GfSubspace};
use crate::invgen::{self, Budget, Coprime};
use crate::lattice;
use crate::limits::Limits;
use crate::modrep::HModule;
use crate::perm::{ConjClass, PermGroup, Permutation};
use crate::semidirect::{SdElement, SdGroup};

/// Lifts `h_i w_i` of a tuple of `H` to `V^u ⋊ H`.
#[derive(Clone, Debug)]
pub struct LiftProblem {
    module: HModule,
    u: usize,
    h: Vec<Permutation>,
    w: Vec<Vec<u32>>,
}

impl LiftProblem {
    /// `w[i]` lies in `V^u`, stored as `u` consecutive blocks of length `n`.
    pub fn new(module: HModule, u: usize, h: Vec<Permutation>, w: Vec<Vec<u32>>) -> Result<Self> {
        if u == 0 {
            return Err(Error::InvalidArgument("multiplicity must be at least 1".into()));
        }
        if h.len() != w.len() {
            return Err(Error::DimensionMismatch {
                expected: h.len(),
                got: w.len(),
            });
        }
        let n = module.dim();
        for x in &h {
            module.act(x)?;
        }
        let p = module.prime();
        let mut w = w;
        for wi in &mut w {
            if wi.len() != n * u {
                return Err(Error::DimensionMismatch {
                    expected: n * u,
                    got: wi.len(),
                });
            }
            wi.iter_mut().for_each(|x| *x %= p);
        }
        Ok(LiftProblem { module, u, h, w })
    }

    /// All lifts zero.
    pub fn unlifted(module: HModule, u: usize, h: Vec<Permutation>) -> Result<Self> {
        let w = vec![vec![0; module.dim() * u]; h.len()];
        Self::new(module, u, h, w)
    }

    /// The lifts prescribed by rows `r_j = (w_{1,j}, ..., w_{d,j})`.
    pub fn from_rows(module: HModule, h: Vec<Permutation>, rows: &[Vec<u32>]) -> Result<Self> {
        let n = module.dim();
        let d = h.len();
        let mut w = vec![Vec::with_capacity(n * rows.len()); d];
        for r in rows {
            if r.len() != n * d {
                return Err(Error::DimensionMismatch {
                    expected: n * d,
                    got: r.len(),
                });
            }
            for (i, wi) in w.iter_mut().enumerate() {
                wi.extend_from_slice(&r[i * n..(i + 1) * n]);
            }
        }
        Self::new(module, rows.len(), h, w)
    }

    pub fn module(&self) -> &HModule {
        &self.module
    }

    pub fn multiplicity(&self) -> usize {
        self.u
    }

    pub fn d(&self) -> usize {
        self.h.len()
    }

    pub fn tuple(&self) -> &[Permutation] {
        &self.h
    }

    pub fn lifts(&self) -> &[Vec<u32>] {
        &self.w
    }

    /// `w_{i,j}`, the `j`-th block of `w_i`.
    pub fn block(&self, i: usize, j: usize) -> &[u32] {
        let n = self.module.dim();
        &self.w[i][j * n..(j + 1) * n]
    }

    /// `r_j = (w_{1,j}, ..., w_{d,j})` in `V^d`.
    pub fn rows(&self) -> Vec<Vec<u32>> {
        (0..self.u)
            .map(|j| (0..self.d()).flat_map(|i| self.block(i, j).to_vec()).collect())
            .collect()
    }

    /// The semidirect product and the elements `h_i w_i`.
    pub fn elements(&self) -> Result<(SdGroup, Vec<SdElement>)> {
        let g = SdGroup::new(self.module.clone(), self.u)?;
        let els = self
            .h
            .iter()
            .zip(&self.w)
            .map(|(h, w)| g.element(w.clone(), h.clone()))
            .collect::<Result<Vec<_>>>()?;
        Ok((g, els))
    }
}

/// `x B_k` for each commutant basis matrix, applied to each length-`n` block.
fn scalar_images(x: &[u32], n: usize, basis: &[GfMatrix]) -> Vec<Vec<u32>> {
    basis
        .iter()
        .map(|b| x.chunks(n).flat_map(|c| b.apply(c)).collect())
        .collect()
}

fn independent(p: u32, ambient: usize, vectors: Vec<Vec<u32>>) -> bool {
    let k = vectors.len();
    if ambient == 0 {
        return k == 0;
    }
    GfSubspace::span(p, ambient, vectors).dim() == k
}

fn generates_top(module: &HModule, h: &[Permutation]) -> Result<()> {
    let top = module.group();
    if PermGroup::new(top.degree(), h.to_vec())?.order() != top.order() {
        return Err(Error::Precondition("the tuple does not generate H".into()));
    }
    Ok(())
}

fn invariably_generates_top(module: &HModule, h: &[Permutation], limits: &Limits) -> Result<()> {
    if !invgen::invariably_generates(module.group(), h, limits)?.generates {
        return Err(Error::Precondition("the tuple does not invariably generate H".into()));
    }
    Ok(())
}

/// `F`-dimension of a subspace of `V` invariant under the commutant.
fn dim_f(sub_dim: usize, e: usize) -> usize {
    sub_dim / e.max(1)
}

/// Whether `h_1 w_1, ..., h_d w_d` generate `V^u ⋊ H`, assuming
/// `H^1(H, V) = 0`: true unless some nonzero `(λ, w)` in `F^u × V` has
/// `Σ_j λ_j w_{i,j} = [h_i, w]` for every `i`.
pub fn crit_generates(problem: &LiftProblem) -> Result<bool> {
    let m = &problem.module;
    generates_top(m, &problem.h)?;
    let n = m.dim();
    let d = problem.d();
    let p = m.prime();
    let basis = m.commutant().basis;
    let mut rows: Vec<Vec<u32>> = problem
        .rows()
        .iter()
        .flat_map(|r| scalar_images(r, n, &basis))
        .collect();
    let comms = problem
        .h
        .iter()
        .map(|h| Ok(m.act(h)?.one_minus()))
        .collect::<Result<Vec<_>>>()?;
    for l in 0..n {
        rows.push((0..d).flat_map(|i| comms[i].row(l).to_vec()).collect());
    }
    Ok(independent(p, n * d, rows))
}

/// `nd - θn` with `n = dim_F V` and `θ = 0` exactly for trivial action:
/// the largest `u` for which some lifts of a generating `d`-tuple generate.
pub fn crit_max_u(module: &HModule, d: usize) -> usize {
    let n = dim_f(module.dim(), module.commutant().e());
    let theta = usize::from(!module.is_trivial_action());
    (n * d).saturating_sub(theta * n)
}

/// `W = [h_1, V] ⊕ ... ⊕ [h_d, V]` inside `V^d`.
fn commutator_sum(module: &HModule, h: &[Permutation]) -> Result<GfSubspace> {
    let n = module.dim();
    let d = h.len();
    let mut vecs = Vec::new();
    for (i, x) in h.iter().enumerate() {
        for b in module.commutator_space(x)?.basis() {
            let mut v = vec![0; n * d];
            v[i * n..(i + 1) * n].copy_from_slice(b);
            vecs.push(v);
        }
    }
    Ok(GfSubspace::span(module.prime(), n * d, vecs))
}

/// Whether `h_1 w_1, ..., h_d w_d` invariably generate `V^u ⋊ H`, after
/// checking that the `h_i` invariably generate `H`. Assumes `H^1(H, V) = 0`.
pub fn matrici_test(problem: &LiftProblem, limits: &Limits) -> Result<bool> {
    invariably_generates_top(&problem.module, &problem.h, limits)?;
    matrici_test_asserted(problem)
}

/// [`matrici_test`] with invariable generation of `H` taken on trust:
/// the rows `r_j` are `F`-independent modulo `W`.
pub fn matrici_test_asserted(problem: &LiftProblem) -> Result<bool> {
    let m = &problem.module;
    let n = m.dim();
    let w = commutator_sum(m, &problem.h)?;
    let basis = m.commutant().basis;
    let images: Vec<Vec<u32>> = problem
        .rows()
        .iter()
        .flat_map(|r| scalar_images(r, n, &basis))
        .collect();
    if w.ambient_dim() == 0 {
        return Ok(images.is_empty());
    }
    gf::independent_mod(&images, &w)
}

/// `Σ_i dim_F C_V(h_i)`.
pub fn matrici_max_u(module: &HModule, h: &[Permutation]) -> Result<usize> {
    let e = module.commutant().e();
    let mut total = 0;
    for x in h {
        total += dim_f(module.fixed_space(x)?.dim(), e);
    }
    Ok(total)
}

/// The best [`matrici_max_u`] over invariably generating `d`-tuples of
/// `H` (identity entries allowed), with a tuple attaining it.
pub fn matrici_optimum(module: &HModule, d: usize, limits: &Limits) -> Result<Option<(usize, Vec<Permutation>)>> {
    let top = module.group();
    let classes = top.conjugacy_classes(limits.enumeration_cap)?;
    let e = module.commutant().e();
    let fixed = classes
        .iter()
        .map(|c| Ok(dim_f(module.fixed_space(&c.representative)?.dim(), e)))
        .collect::<Result<Vec<_>>>()?;
    let mut budget = Budget::new(limits.search_budget);
    let mut best: Option<(usize, Vec<Permutation>)> = None;
    let mut idx = vec![0usize; d];
    loop {
        let value: usize = idx.iter().map(|&i| fixed[i]).sum();
        if best.as_ref().is_none_or(|b| value > b.0) {
            let cs: Vec<&ConjClass> = idx.iter().map(|&i| &classes[i]).collect();
            if invgen::invariably_generates_classes(top, &cs, limits, &mut budget)? {
                best = Some((value, cs.iter().map(|c| c.representative.clone()).collect()));
            }
        }
        // Next nondecreasing index tuple.
        let Some(pos) = (0..d).rev().find(|&k| idx[k] + 1 < classes.len()) else {
            break;
        };
        let v = idx[pos] + 1;
        idx[pos..].iter_mut().for_each(|x| *x = v);
    }
    Ok(best)
}

fn check_ltcase_shape(module: &HModule, u: usize, h: &[Permutation], v: &[u32]) -> Result<()> {
    if h.is_empty() {
        return Err(Error::Precondition("empty tuple".into()));
    }
    if v.len() != module.dim() * u {
        return Err(Error::DimensionMismatch {
            expected: module.dim() * u,
            got: v.len(),
        });
    }
    let orders: Vec<u64> = h.iter().map(Permutation::order).collect();
    if !invgen::pairwise_coprime(&orders) {
        return Err(Error::Precondition("orders are not pairwise coprime".into()));
    }
    let p = module.prime() as u64;
    if orders[1..].iter().any(|o| o % p == 0) {
        return Err(Error::Precondition("entries after the first must have order prime to p".into()));
    }
    for x in h {
        module.act(x)?;
    }
    Ok(())
}

/// Whether `h_1 v, h_2, ..., h_d` invariably generate `V^u ⋊ H`, for a
/// coprime invariably generating tuple of `H` whose entries after the
/// first are `p'`-elements. Assumes `H^1(H, V) = 0`.
pub fn ltcase_test(module: &HModule, u: usize, h: &[Permutation], v: &[u32], limits: &Limits) -> Result<bool> {
    check_ltcase_shape(module, u, h, v)?;
    invariably_generates_top(module, h, limits)?;
    ltcase_independent(module, h, v)
}

/// [`ltcase_test`] with invariable generation of `H` taken on trust.
pub fn ltcase_test_asserted(module: &HModule, u: usize, h: &[Permutation], v: &[u32]) -> Result<bool> {
    check_ltcase_shape(module, u, h, v)?;
    ltcase_independent(module, h, v)
}

fn ltcase_independent(module: &HModule, h: &[Permutation], v: &[u32]) -> Result<bool> {
    let n = module.dim();
    let basis = module.commutant().basis;
    let images: Vec<Vec<u32>> = v.chunks(n).flat_map(|b| scalar_images(b, n, &basis)).collect();
    let w = module.commutator_space(&h[0])?;
    if n == 0 {
        return Ok(images.is_empty());
    }
    gf::independent_mod(&images, &w)
}

/// `max_{h ∈ Λ} dim_F C_V(h)`, zero for empty `Λ`.
pub fn abcase_bound(module: &HModule, lambda: &[Permutation]) -> Result<usize> {
    let e = module.commutant().e();
    let mut best = 0;
    for x in lambda {
        best = best.max(dim_f(module.fixed_space(x)?.dim(), e));
    }
    Ok(best)
}

/// `Λ`: representatives of the classes of `H` that open a coprime
/// invariably generating set of `H` whose other entries are `p'`-elements.
pub fn abcase_lambda(module: &HModule, kind: Coprime, limits: &Limits) -> Result<Vec<Permutation>> {
    invgen::distinguished_entries(module.group(), module.prime() as u64, kind, limits)
}

/// Multiplicity `δ` of complemented chief factors isomorphic to a module
/// `A`, and `r = dim_{End_G(A)} A`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CrownDatum {
    pub delta: u64,
    pub r: u64,
}

impl CrownDatum {
    pub fn new(delta: u64, r: u64) -> Result<Self> {
        if delta == 0 || r == 0 {
            return Err(Error::InvalidArgument("crown data must be positive".into()));
        }
        Ok(CrownDatum { delta, r })
    }
}

/// `Σ ceil(δ / r)`, an upper bound for `d_I` of a soluble group.
pub fn sol_eta(data: &[CrownDatum]) -> u64 {
    data.iter().map(|c| c.delta.div_ceil(c.r)).sum()
}

/// For supersoluble `G`: coprimely invariably generated exactly when no two
/// complemented chief factors are isomorphic as `G`-modules.
pub fn supersoluble_cig(g: &PermGroup, limits: &Limits) -> Result<bool> {
    let data = lattice::chief_factor_data(g, limits)?;
    let mut seen = BTreeSet::new();
    for c in data.iter().filter(|c| c.complemented) {
        if !seen.insert((c.prime, c.character.clone())) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `(p, d(P))` for a Sylow `p`-subgroup `P` of each prime divisor `p`.
pub fn sylow_ranks(g: &PermGroup, limits: &Limits) -> Result<Vec<(u64, u32)>> {
    let order = g
        .order_u64()
        .ok_or_else(|| Error::cap("group order", g.order(), limits.enumeration_cap))?;
    invgen::prime_factors(order)
        .into_iter()
        .map(|p| {
            let s = g.sylow_subgroup(p, limits.enumeration_cap)?;
            Ok((p, lattice::p_group_rank(&s, p, limits)?))
        })
        .collect()
}

/// Whether every Sylow `p`-subgroup is generated by `p - 1` elements.
pub fn sylow_generation_bound(g: &PermGroup, limits: &Limits) -> Result<bool> {
    Ok(sylow_ranks(g, limits)?.iter().all(|&(p, d)| (d as u64) < p))
}

/// Rows of `d`-tuples of a simple group `S`, read as the columns
/// `(x_{1,j}, ..., x_{t,j})` of `S^t`; `A` carries the automorphisms.
#[derive(Clone, Debug)]
pub struct RowSystem {
    s: PermGroup,
    a: PermGroup,
    d: usize,
    rows: Vec<Vec<Permutation>>,
}

impl RowSystem {
    pub fn new(s: PermGroup, a: PermGroup, rows: Vec<Vec<Permutation>>) -> Result<Self> {
        if !s.is_subgroup_of(&a) || !s.is_normal_in(&a) {
            return Err(Error::NotNormal);
        }
        let d = rows.first().map_or(0, Vec::len);
        for r in &rows {
            if r.len() != d {
                return Err(Error::DimensionMismatch {
                    expected: d,
                    got: r.len(),
                });
            }
            for x in r {
                if !s.contains(x)? {
                    return Err(Error::NotMember);
                }
            }
        }
        Ok(RowSystem { s, a, d, rows })
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn rows(&self) -> &[Vec<Permutation>] {
        &self.rows
    }

    /// The columns as elements of `S^t` on `t` consecutive blocks.
    pub fn columns(&self) -> Vec<Permutation> {
        (0..self.d)
            .map(|j| {
                let parts: Vec<Permutation> = self.rows.iter().map(|r| r[j].clone()).collect();
                crate::constructions::tuple_element(&parts)
            })
            .collect()
    }

    /// `S^t` in the same block layout as [`RowSystem::columns`].
    pub fn power(&self) -> PermGroup {
        PermGroup::direct_product(&vec![self.s.clone(); self.rows.len()])
    }
}

/// Nonabelian, and the normal closure of every nonidentity class is everything.
pub fn is_simple_probe(s: &PermGroup, limits: &Limits) -> Result<bool> {
    if s.is_trivial() || s.is_abelian() {
        return Ok(false);
    }
    for c in s.conjugacy_classes(limits.enumeration_cap)? {
        if !c.representative.is_identity() && s.normal_closure(&[c.representative])?.order() != s.order() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// A transversal of `S` in `A`, identity first.
pub fn outer_representatives(s: &PermGroup, a: &PermGroup) -> Result<Vec<Permutation>> {
    if !s.is_subgroup_of(a) || !s.is_normal_in(a) {
        return Err(Error::NotNormal);
    }
    let mut reps = vec![a.identity()];
    let mut i = 0;
    while i < reps.len() {
        for g in a.generators() {
            let x = reps[i].compose(g);
            if !reps.iter().any(|q| s.contains_unchecked(&x.compose(&q.inverse()))) {
                reps.push(x);
            }
        }
        i += 1;
    }
    Ok(reps)
}

/// Whether some `α` in `A` sends the class of each `x_i` to the class of
/// `y_i`. Inner automorphisms are absorbed into the class comparison.
pub fn row_equivalent(
    x: &[Permutation],
    y: &[Permutation],
    s: &PermGroup,
    a: &PermGroup,
    limits: &Limits,
) -> Result<bool> {
    if x.len() != y.len() {
        return Ok(false);
    }
    let classes = y
        .iter()
        .map(|b| s.conjugacy_class(b, limits.enumeration_cap))
        .collect::<Result<Vec<_>>>()?;
    for alpha in outer_representatives(s, a)? {
        if x.iter().zip(&classes).all(|(xi, c)| c.contains(&xi.conjugate_by(&alpha))) {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Whether the columns invariably generate `S^t`: each row invariably
/// generates `S` and no two rows are equivalent.
pub fn columns_invgen(system: &RowSystem, limits: &Limits) -> Result<bool> {
    if !is_simple_probe(&system.s, limits)? {
        return Err(Error::Precondition("S is not nonabelian simple".into()));
    }
    for r in &system.rows {
        if !invgen::invariably_generates(&system.s, r, limits)?.generates {
            return Ok(false);
        }
    }
    for i in 0..system.rows.len() {
        for j in i + 1..system.rows.len() {
            if row_equivalent(&system.rows[i], &system.rows[j], &system.s, &system.a, limits)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Largest `t` such that `S^t` has a coprime invariably generating set,
/// with rows realising it.
///
/// Coprime columns split the primes of `|S|` into disjoint blocks, one per
/// column. For each split, the rows available are the invariably
/// generating class patterns whose `j`-th entry has order supported on
/// block `j`; pairwise inequivalent rows are the `A`-orbits of patterns.
pub fn max_cig_power(s: &PermGroup, a: &PermGroup, limits: &Limits) -> Result<(usize, Vec<Vec<Permutation>>)> {
    if !is_simple_probe(s, limits)? {
        return Err(Error::Precondition("S is not nonabelian simple".into()));
    }
    let classes = s.conjugacy_classes(limits.enumeration_cap)?;
    let class_of = |g: &Permutation| classes.iter().position(|c| c.contains(g)).expect("class of S");
    let outer: Vec<Vec<usize>> = outer_representatives(s, a)?
        .iter()
        .map(|alpha| {
            classes
                .iter()
                .map(|c| class_of(&c.representative.conjugate_by(alpha)))
                .collect()
        })
        .collect();
    let order = s
        .order_u64()
        .ok_or_else(|| Error::cap("group order", s.order(), limits.enumeration_cap))?;
    let primes = invgen::prime_factors(order);
    let mut budget = Budget::new(limits.search_budget);
    let mut memo: HashMap<Vec<usize>, bool> = HashMap::new();
    let mut best: (usize, Vec<Vec<Permutation>>) = (0, Vec::new());
    for blocks in set_partitions(primes.len()) {
        let d = blocks.iter().max().map_or(0, |m| m + 1);
        let allowed: Vec<Vec<usize>> = (0..d)
            .map(|j| {
                (0..classes.len())
                    .filter(|&c| {
                        invgen::prime_factors(classes[c].element_order)
                            .iter()
                            .all(|q| blocks[primes.iter().position(|x| x == q).unwrap()] == j)
                    })
                    .collect()
            })
            .collect();
        let mut orbits: BTreeSet<Vec<usize>> = BTreeSet::new();
        let mut pos = vec![0usize; d];
        loop {
            let pattern: Vec<usize> = (0..d).map(|j| allowed[j][pos[j]]).collect();
            let mut key: Vec<usize> = pattern.iter().copied().filter(|&c| !classes[c].representative.is_identity()).collect();
            key.sort_unstable();
            let ok = match memo.get(&key) {
                Some(&b) => b,
                None => {
                    let cs: Vec<&ConjClass> = key.iter().map(|&c| &classes[c]).collect();
                    let b = invgen::invariably_generates_classes(s, &cs, limits, &mut budget)?;
                    memo.insert(key, b);
                    b
                }
            };
            if ok {
                let canon = outer
                    .iter()
                    .map(|m| pattern.iter().map(|&c| m[c]).collect::<Vec<_>>())
                    .min()
                    .expect("identity is a representative");
                orbits.insert(canon);
            }
            let Some(k) = (0..d).rev().find(|&k| pos[k] + 1 < allowed[k].len()) else {
                break;
            };
            pos[k] += 1;
            pos[k + 1..].iter_mut().for_each(|x| *x = 0);
        }
        if orbits.len() > best.0 {
            let rows = orbits
                .iter()
                .map(|pat| pat.iter().map(|&c| classes[c].representative.clone()).collect())
                .collect();
            best = (orbits.len(), rows);
        }
    }
    Ok(best)
}

/// Set partitions of `0..k` as restricted growth strings.
fn set_partitions(k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        let next = cur.iter().max().map_or(0, |m| m + 1);
        for b in 0..=next {
            cur.push(b);
            rec(k, cur, out);
            cur.pop();
        }
    }
    rec(k, &mut cur, &mut out);
    out
}

/// Orders of the columns.
pub fn column_orders(system: &RowSystem) -> Vec<u64> {
    system.columns().iter().map(Permutation::order).collect()
}

/// Whether the column orders are pairwise coprime.
pub fn columns_coprime(system: &RowSystem) -> bool {
    let orders = column_orders(system);
    orders
        .iter()
        .enumerate()
        .all(|(i, a)| orders[i + 1..].iter().all(|b| a.gcd(b) == 1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{alt5_elements, gl22, s7_module};
    use crate::modrep::deleted_perm_module;

    fn lim() -> Limits {
        Limits::default()
    }

    fn perm(s: &str, n: usize) -> Permutation {
        Permutation::parse(s, Some(n)).unwrap()
    }

    fn v2() -> HModule {
        deleted_perm_module(3, 2).unwrap()
    }

    #[test]
    fn zero_lift_never_generates() {
        let h = vec![perm("(1,2)", 3), perm("(1,2,3)", 3)];
        let pr = LiftProblem::unlifted(v2(), 1, h).unwrap();
        assert!(!crit_generates(&pr).unwrap());
        assert!(!matrici_test(&pr, &lim()).unwrap());
    }

    #[test]
    fn crit_needs_generating_tuple() {
        let pr = LiftProblem::unlifted(v2(), 1, vec![perm("(1,2)", 3)]).unwrap();
        assert!(matches!(crit_generates(&pr), Err(Error::Precondition(_))));
    }

    #[test]
    fn rows_reshape() {
        let h = vec![perm("(1,2)", 3), perm("(1,2,3)", 3)];
        let pr = LiftProblem::new(v2(), 2, h.clone(), vec![vec![1, 0, 0, 1], vec![1, 1, 0, 0]]).unwrap();
        let rows = pr.rows();
        assert_eq!(rows, vec![vec![1, 0, 1, 1], vec![0, 1, 0, 0]]);
        let back = LiftProblem::from_rows(v2(), h, &rows).unwrap();
        assert_eq!(back.lifts(), pr.lifts());
        for i in 0..2 {
            for j in 0..2 {
                assert_eq!(&rows[j][i * 2..i * 2 + 2], pr.block(i, j));
            }
        }
    }

    #[test]
    fn crit_agrees_with_affine_closure() {
        let h = vec![perm("(1,2)", 3), perm("(1,2,3)", 3)];
        for a in 0..4u64 {
            for b in 0..4u64 {
                let w1 = gf::vector_from_index(a, 2, 2);
                let w2 = gf::vector_from_index(b, 2, 2);
                let pr = LiftProblem::new(v2(), 1, h.clone(), vec![w1, w2]).unwrap();
                let (g, els) = pr.elements().unwrap();
                assert_eq!(crit_generates(&pr).unwrap(), g.generates(&els, &lim()).unwrap());
            }
        }
    }

    #[test]
    fn crit_bound() {
        // n = 2, d = 2, nontrivial: at most u = 2.
        assert_eq!(crit_max_u(&v2(), 2), 2);
        let triv = HModule::trivial(3, PermGroup::cyclic(3)).unwrap();
        assert_eq!(crit_max_u(&triv, 2), 2);
    }

    #[test]
    fn gl22_bounds() {
        let m = v2();
        let t = perm("(1,2)", 3);
        let c = perm("(1,2,3)", 3);
        let e = Permutation::identity(3);
        assert_eq!(matrici_max_u(&m, &[t.clone(), c.clone(), e.clone()]).unwrap(), 3);
        assert_eq!(matrici_max_u(&m, &[e.clone(), e.clone()]).unwrap(), 4);
        for d in 2..=4 {
            let (best, _) = matrici_optimum(&m, d, &lim()).unwrap().unwrap();
            assert_eq!(best, 2 * d - 3);
        }
        assert!(matrici_optimum(&m, 1, &lim()).unwrap().is_none());
    }

    #[test]
    fn matrici_zero_row() {
        let h = vec![perm("(1,2)", 3), perm("(1,2,3)", 3)];
        let pr = LiftProblem::from_rows(v2(), h, &[vec![0, 0, 0, 0]]).unwrap();
        assert!(!matrici_test_asserted(&pr).unwrap());
    }

    #[test]
    fn ltcase_small() {
        let m = v2();
        let h = vec![perm("(1,2)", 3), perm("(1,2,3)", 3)];
        let w = m.commutator_space(&h[0]).unwrap();
        for i in 1..4u64 {
            let v = gf::vector_from_index(i, 2, 2);
            let expect = !w.contains(&v);
            assert_eq!(ltcase_test(&m, 1, &h, &v, &lim()).unwrap(), expect);
        }
        assert!(!ltcase_test(&m, 1, &h, &[0, 0], &lim()).unwrap());
        // Entries after the first must be 2'-elements.
        let bad = vec![perm("(1,2,3)", 3), perm("(1,2)", 3)];
        assert!(ltcase_test(&m, 1, &bad, &[1, 0], &lim()).is_err());
    }

    #[test]
    fn s7_ltcase_and_bound() {
        let m = s7_module();
        let e = Permutation::identity(7);
        let h = vec![e.clone(), perm("(1,2,3,4,5)", 7), perm("(1,2,3)(4,5,6,7)", 7)];
        let mut v = vec![0; 25];
        for j in 0..5 {
            v[j * 5 + j] = 1;
        }
        assert!(ltcase_test_asserted(&m, 5, &h, &v).unwrap());
        let rows: Vec<Vec<u32>> = (0..5)
            .map(|j| {
                let mut r = vec![0; 15];
                r[j] = 1;
                r
            })
            .collect();
        let pr = LiftProblem::from_rows(m.clone(), h, &rows).unwrap();
        assert!(matrici_test_asserted(&pr).unwrap());
        assert_eq!(abcase_bound(&m, &[e]).unwrap(), 5);
        assert_eq!(abcase_bound(&m, &[]).unwrap(), 0);
    }

    #[test]
    fn eta_arithmetic() {
        let c = |d, r| CrownDatum::new(d, r).unwrap();
        assert_eq!(sol_eta(&[c(2, 2), c(1, 1), c(1, 1)]), 3);
        assert_eq!(sol_eta(&[c(5, 1)]), 5);
        assert_eq!(sol_eta(&[c(5, 5)]), 1);
        assert!(CrownDatum::new(0, 1).is_err());
    }

    #[test]
    fn supersoluble_examples() {
        let intro = crate::constructions::intro_group();
        assert!(supersoluble_cig(&intro, &lim()).unwrap());
        let c33 = PermGroup::direct_product(&[PermGroup::cyclic(3), PermGroup::cyclic(3)]);
        assert!(!supersoluble_cig(&c33, &lim()).unwrap());
        assert!(supersoluble_cig(&PermGroup::cyclic(6), &lim()).unwrap());
        assert!(matches!(
            supersoluble_cig(&PermGroup::alternating(4), &lim()),
            Err(Error::NotSupersoluble)
        ));
    }

    #[test]
    fn sylow_bounds() {
        assert!(sylow_generation_bound(&PermGroup::cyclic(12), &lim()).unwrap());
        assert!(sylow_generation_bound(&PermGroup::symmetric(3), &lim()).unwrap());
        let g = crate::constructions::cor12_group(3, &lim()).unwrap();
        let ranks = sylow_ranks(&g, &lim()).unwrap();
        assert!(ranks.contains(&(3, 2)));
        assert!(sylow_generation_bound(&g, &lim()).unwrap());
        let c33 = PermGroup::direct_product(&[PermGroup::cyclic(2), PermGroup::cyclic(2)]);
        assert!(!sylow_generation_bound(&c33, &lim()).unwrap());
    }

    #[test]
    fn alt5_rows() {
        let (s, r, t) = alt5_elements();
        let id = Permutation::identity(5);
        let a5 = PermGroup::alternating(5);
        let s5 = PermGroup::symmetric(5);
        let rows = vec![vec![s.clone(), r.clone(), t.clone()], vec![s.clone(), r.clone(), id.clone()]];
        let sys = RowSystem::new(a5.clone(), s5.clone(), rows).unwrap();
        assert!(columns_coprime(&sys));
        assert!(columns_invgen(&sys, &lim()).unwrap());
        let same = RowSystem::new(a5.clone(), s5.clone(), vec![vec![s.clone(), r.clone()]; 2]).unwrap();
        assert!(!columns_invgen(&same, &lim()).unwrap());
        let alpha = perm("(1,2)", 5);
        let x = vec![s.clone(), r.clone(), t.clone()];
        let y = vec![s.conjugate_by(&alpha), r.clone(), t.clone()];
        assert!(row_equivalent(&x, &y, &a5, &s5, &lim()).unwrap());
        assert!(row_equivalent(&x, &x, &a5, &s5, &lim()).unwrap());
        assert!(!row_equivalent(&x, &[s, r, id], &a5, &s5, &lim()).unwrap());
        // Without the outer automorphism the two 5-classes stay apart.
        let z = vec![x[0].conjugate_by(&alpha), x[1].clone(), x[2].clone()];
        assert!(!row_equivalent(&x, &z, &a5, &a5, &lim()).unwrap());
    }

    #[test]
    fn alt5_power() {
        let (t, rows) = max_cig_power(&PermGroup::alternating(5), &PermGroup::symmetric(5), &lim()).unwrap();
        assert_eq!(t, 2);
        let sys = RowSystem::new(PermGroup::alternating(5), PermGroup::symmetric(5), rows).unwrap();
        assert!(columns_coprime(&sys));
        assert!(columns_invgen(&sys, &lim()).unwrap());
    }

    #[test]
    fn simplicity_probe() {
        assert!(is_simple_probe(&PermGroup::alternating(5), &lim()).unwrap());
        assert!(!is_simple_probe(&PermGroup::symmetric(5), &lim()).unwrap());
        assert!(!is_simple_probe(&PermGroup::cyclic(5), &lim()).unwrap());
    }

    #[test]
    fn gl22_groups_order() {
        assert_eq!(gl22(2).unwrap().order(), 96u32.into());
    }

    #[test]
    fn set_partition_counts() {
        let bell: Vec<usize> = (0..6).map(|k| set_partitions(k).len()).collect();
        assert_eq!(bell, vec![1, 1, 2, 5, 15, 52]);
    }
}
