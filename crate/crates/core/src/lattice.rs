//! Subgroup lattices of small groups.
//!
//! The group is enumerated once into a multiplication table and every
//! subgroup is a bitset over the sorted element list. Subgroups are found
//! bottom-up: cyclic subgroups first, then joins with cyclic subgroups until
//! nothing new appears.

use std::collections::{HashMap, HashSet};

use num_integer::Integer;
use rand::seq::SliceRandom;
use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::perm::{PermGroup, Permutation};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Bits(Box<[u64]>);

impl Bits {
    fn new(n: usize) -> Self {
        Bits(vec![0; n.div_ceil(64)].into_boxed_slice())
    }

    fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    pub fn get(&self, i: usize) -> bool {
        self.0[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn count(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_subset(&self, other: &Bits) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| a & !b == 0)
    }

    fn and(&self, other: &Bits) -> Bits {
        Bits(self.0.iter().zip(other.0.iter()).map(|(a, b)| a & b).collect())
    }

    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.0.len() * 64).filter(move |&i| self.get(i))
    }
}

/// A group given by its sorted element list and multiplication table.
#[derive(Clone, Debug)]
pub struct ElementTable {
    elements: Vec<Permutation>,
    index: HashMap<Permutation, usize>,
    mul: Vec<u32>,
    inv: Vec<u32>,
    orders: Vec<u64>,
}

impl ElementTable {
    pub fn new(group: &PermGroup, cap: u64) -> Result<Self> {
        let elements = group.elements(cap)?;
        let n = elements.len();
        let index: HashMap<Permutation, usize> =
            elements.iter().enumerate().map(|(i, g)| (g.clone(), i)).collect();
        let mut mul = vec![0u32; n * n];
        for (i, a) in elements.iter().enumerate() {
            for (j, b) in elements.iter().enumerate() {
                mul[i * n + j] = index[&a.compose(b)] as u32;
            }
        }
        let inv = elements.iter().map(|g| index[&g.inverse()] as u32).collect();
        let orders = elements.iter().map(Permutation::order).collect();
        Ok(ElementTable {
            elements,
            index,
            mul,
            inv,
            orders,
        })
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.len() + b] as usize
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inv[a] as usize
    }

    pub fn element(&self, i: usize) -> &Permutation {
        &self.elements[i]
    }

    pub fn index_of(&self, g: &Permutation) -> Option<usize> {
        self.index.get(g).copied()
    }

    pub fn conj(&self, a: usize, g: usize) -> usize {
        self.mul(self.mul(self.inv(g), a), g)
    }

    /// Closure of `gens` under multiplication.
    pub fn closure(&self, gens: &[usize]) -> Bits {
        let mut bits = Bits::new(self.len());
        // the identity has the least image list, so it sits at index 0
        bits.set(0);
        let mut list = vec![0];
        let mut i = 0;
        while i < list.len() {
            let x = list[i];
            for &g in gens {
                let y = self.mul(x, g);
                if !bits.get(y) {
                    bits.set(y);
                    list.push(y);
                }
            }
            i += 1;
        }
        bits
    }

    pub fn exponent_of(&self, bits: &Bits) -> u64 {
        bits.ones().fold(1, |e, i| e.lcm(&self.orders[i]))
    }

    pub fn to_group(&self, bits: &Bits, degree: usize) -> PermGroup {
        let gens = small_generating_set(self, bits);
        PermGroup::new(degree, gens.into_iter().map(|i| self.elements[i].clone()).collect())
            .expect("elements share the degree")
    }
}

/// Greedy generating set: add elements until the closure is everything.
fn small_generating_set(t: &ElementTable, bits: &Bits) -> Vec<usize> {
    let mut gens = Vec::new();
    let mut have = t.closure(&[]);
    for i in bits.ones() {
        if !have.get(i) {
            gens.push(i);
            have = t.closure(&gens);
        }
    }
    gens
}

#[derive(Clone, Debug)]
pub struct SubgroupLattice {
    parent: PermGroup,
    table: ElementTable,
    /// Sorted by order, then by element set.
    subgroups: Vec<Bits>,
}

impl SubgroupLattice {
    pub fn parent(&self) -> &PermGroup {
        &self.parent
    }

    pub fn table(&self) -> &ElementTable {
        &self.table
    }

    pub fn len(&self) -> usize {
        self.subgroups.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subgroups.is_empty()
    }

    pub fn bits(&self, i: usize) -> &Bits {
        &self.subgroups[i]
    }

    pub fn order_of(&self, i: usize) -> usize {
        self.subgroups[i].count()
    }

    pub fn subgroup(&self, i: usize) -> PermGroup {
        self.table.to_group(&self.subgroups[i], self.parent.degree())
    }

    pub fn subgroups(&self) -> Vec<PermGroup> {
        (0..self.len()).map(|i| self.subgroup(i)).collect()
    }

    /// `i` is contained in `j`.
    pub fn includes(&self, i: usize, j: usize) -> bool {
        self.subgroups[i].is_subset(&self.subgroups[j])
    }

    pub fn full_index(&self) -> usize {
        self.len() - 1
    }

    /// Indices of the maximal subgroups.
    pub fn maximal_indices(&self) -> Vec<usize> {
        let full = self.full_index();
        let n = self.table.len();
        (0..full)
            .filter(|&i| {
                let oi = self.order_of(i);
                !(0..full).any(|j| {
                    let oj = self.order_of(j);
                    oj > oi && oj < n && self.includes(i, j)
                })
            })
            .collect()
    }

    pub fn is_normal(&self, i: usize) -> bool {
        let bits = &self.subgroups[i];
        let gens: Vec<usize> = self
            .parent
            .generators()
            .iter()
            .map(|g| self.table.index_of(g).expect("generator"))
            .collect();
        bits.ones()
            .all(|x| gens.iter().all(|&g| bits.get(self.table.conj(x, g))))
    }

    pub fn frattini_bits(&self) -> Bits {
        let max = self.maximal_indices();
        let mut acc = self.subgroups[self.full_index()].clone();
        for i in max {
            acc = acc.and(&self.subgroups[i]);
        }
        acc
    }

    fn position(&self, bits: &Bits) -> Option<usize> {
        self.subgroups.iter().position(|b| b == bits)
    }
}

pub fn all_subgroups(g: &PermGroup, limits: &Limits) -> Result<SubgroupLattice> {
    let cap = limits.lattice_cap;
    let table = ElementTable::new(g, cap)?;
    let n = table.len();
    let mut cyclic: Vec<(Bits, usize)> = Vec::new();
    let mut seen_cyclic = HashSet::new();
    for i in 0..n {
        let b = table.closure(&[i]);
        if seen_cyclic.insert(b.clone()) {
            cyclic.push((b, i));
        }
    }
    let mut found: HashMap<Bits, Vec<usize>> = HashMap::new();
    let mut queue: Vec<Bits> = Vec::new();
    for (b, i) in &cyclic {
        found.insert(b.clone(), vec![*i]);
        queue.push(b.clone());
    }
    while let Some(s) = queue.pop() {
        let gens = found[&s].clone();
        for (c, ci) in &cyclic {
            if c.is_subset(&s) {
                continue;
            }
            let mut jg = gens.clone();
            jg.push(*ci);
            let j = table.closure(&jg);
            if !found.contains_key(&j) {
                if found.len() as u64 >= limits.max_subgroups {
                    return Err(Error::cap(
                        "number of subgroups",
                        format!(">{}", limits.max_subgroups),
                        limits.max_subgroups,
                    ));
                }
                found.insert(j.clone(), jg);
                queue.push(j);
            }
        }
    }
    let mut subgroups: Vec<Bits> = found.into_keys().collect();
    subgroups.sort_by(|a, b| (a.count(), a).cmp(&(b.count(), b)));
    Ok(SubgroupLattice {
        parent: g.clone(),
        table,
        subgroups,
    })
}

pub fn maximal_subgroups(g: &PermGroup, limits: &Limits) -> Result<Vec<PermGroup>> {
    let lat = all_subgroups(g, limits)?;
    Ok(lat.maximal_indices().into_iter().map(|i| lat.subgroup(i)).collect())
}

pub fn frattini(g: &PermGroup, limits: &Limits) -> Result<PermGroup> {
    let lat = all_subgroups(g, limits)?;
    Ok(lat.table.to_group(&lat.frattini_bits(), g.degree()))
}

/// The action of `g` on the right cosets of a normal subgroup `n`.
pub fn quotient(g: &PermGroup, n: &PermGroup, limits: &Limits) -> Result<PermGroup> {
    if !n.is_subgroup_of(g) {
        return Err(Error::NotSubgroup);
    }
    if !n.is_normal_in(g) {
        return Err(Error::NotNormal);
    }
    let (reps, which) = g.coset_table(n, limits.enumeration_cap)?;
    let index = reps.len();
    if index as u64 > limits.degree_cap {
        return Err(Error::cap("quotient degree", index, limits.degree_cap));
    }
    let gens = g
        .generators()
        .iter()
        .map(|x| {
            let images = reps.iter().map(|r| which[&r.compose(x)] as u32).collect();
            Permutation::from_images(images)
        })
        .collect::<Result<Vec<_>>>()?;
    PermGroup::new(index, gens)
}

pub fn is_minimal_exponent(g: &PermGroup, limits: &Limits) -> Result<bool> {
    let lat = all_subgroups(g, limits)?;
    let e = lat.table.exponent_of(lat.bits(lat.full_index()));
    Ok(lat
        .maximal_indices()
        .into_iter()
        .all(|i| lat.table.exponent_of(lat.bits(i)) < e))
}

/// Order, exponent and centre order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Fingerprint {
    pub order: u64,
    pub exponent: u64,
    pub center_order: u64,
}

pub fn fingerprint(g: &PermGroup, limits: &Limits) -> Result<Fingerprint> {
    let elems = g.elements(limits.enumeration_cap)?;
    let center = elems
        .iter()
        .filter(|x| g.generators().iter().all(|y| x.compose(y) == y.compose(x)))
        .count();
    Ok(Fingerprint {
        order: elems.len() as u64,
        exponent: g.exponent(limits.enumeration_cap)?,
        center_order: center as u64,
    })
}

/// One factor `H/K` of a chief series with `|H/K| = p`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct ChiefFactorDatum {
    pub prime: u64,
    pub rank: u32,
    /// `x^g = x^chi(g)` modulo `K` for each generator `g` of the parent.
    pub character: Vec<u64>,
    pub complemented: bool,
}

/// Chief factors along a series grown from the bottom, always extracting
/// a normal subgroup of largest prime index over the current one.
pub fn chief_factor_data(g: &PermGroup, limits: &Limits) -> Result<Vec<ChiefFactorDatum>> {
    chief_factor_data_with(g, limits, |cands| {
        let best = cands.iter().map(|c| c.0).max().unwrap();
        cands.iter().position(|c| c.0 == best).unwrap()
    })
}

/// The same computation, choosing each extraction step at random.
pub fn chief_factor_data_random<R: Rng>(
    g: &PermGroup,
    limits: &Limits,
    rng: &mut R,
) -> Result<Vec<ChiefFactorDatum>> {
    chief_factor_data_with(g, limits, |cands| {
        let idx: Vec<usize> = (0..cands.len()).collect();
        *idx.choose(rng).unwrap()
    })
}

fn chief_factor_data_with(
    g: &PermGroup,
    limits: &Limits,
    mut choose: impl FnMut(&[(u64, usize)]) -> usize,
) -> Result<Vec<ChiefFactorDatum>> {
    let lat = all_subgroups(g, limits)?;
    let t = &lat.table;
    let normal: Vec<usize> = (0..lat.len()).filter(|&i| lat.is_normal(i)).collect();
    let gens: Vec<usize> = g
        .generators()
        .iter()
        .map(|x| t.index_of(x).expect("generator"))
        .collect();
    let full = lat.full_index();
    let mut k = 0usize; // the trivial subgroup comes first
    let mut out = Vec::new();
    while k != full {
        let ok = lat.order_of(k);
        let cands: Vec<(u64, usize)> = normal
            .iter()
            .filter(|&&h| {
                let oh = lat.order_of(h);
                oh > ok && oh % ok == 0 && crate::gf::is_prime((oh / ok) as u64) && lat.includes(k, h)
            })
            .map(|&h| ((lat.order_of(h) / ok) as u64, h))
            .collect();
        if cands.is_empty() {
            return Err(Error::NotSupersoluble);
        }
        let (p, h) = cands[choose(&cands)];
        let (hb, kb) = (lat.bits(h), lat.bits(k));
        let x = hb.ones().find(|&i| !kb.get(i)).unwrap();
        let character = gens
            .iter()
            .map(|&s| {
                let y = t.conj(x, s);
                // find c with y x^-c in K
                let xi = t.inv(x);
                let mut acc = y;
                for c in 0..p {
                    if kb.get(acc) {
                        return c;
                    }
                    acc = t.mul(acc, xi);
                }
                unreachable!("conjugate stays in the factor")
            })
            .collect();
        let complemented = (0..lat.len()).any(|u| {
            let ub = lat.bits(u);
            let inter = ub.and(hb);
            inter.is_subset(kb) && ub.count() * hb.count() / inter.count() == t.len()
        });
        out.push(ChiefFactorDatum {
            prime: p,
            rank: 1,
            character,
            complemented,
        });
        k = h;
    }
    Ok(out)
}

/// Brute-force minimality: scan every proper subgroup.
pub fn is_minimal_exponent_brute(g: &PermGroup, limits: &Limits) -> Result<bool> {
    let lat = all_subgroups(g, limits)?;
    let e = lat.table.exponent_of(lat.bits(lat.full_index()));
    Ok((0..lat.full_index()).all(|i| lat.table.exponent_of(lat.bits(i)) != e))
}

/// Minimal number of generators of a group within the lattice cap,
/// searching subsets of increasing size over subgroup representatives.
pub fn minimal_generating_size(g: &PermGroup, limits: &Limits) -> Result<usize> {
    let lat = all_subgroups(g, limits)?;
    let t = &lat.table;
    let n = t.len();
    if n == 1 {
        return Ok(0);
    }
    // Reachable subgroups with d generators, level by level.
    let mut level: HashSet<Bits> = HashSet::from([t.closure(&[])]);
    let mut gens_of: HashMap<Bits, Vec<usize>> = HashMap::from([(t.closure(&[]), Vec::new())]);
    for d in 1.. {
        let mut next = HashSet::new();
        for s in &level {
            for x in 0..n {
                if s.get(x) {
                    continue;
                }
                let mut gs = gens_of[s].clone();
                gs.push(x);
                let j = t.closure(&gs);
                if j.count() == n {
                    return Ok(d);
                }
                if !gens_of.contains_key(&j) {
                    gens_of.insert(j.clone(), gs);
                    next.insert(j);
                }
            }
        }
        level = next;
    }
    unreachable!()
}

/// `d(P)` for a `p`-group: `log_p |P : Frat(P)|`.
pub fn p_group_rank(pg: &PermGroup, p: u64, limits: &Limits) -> Result<u32> {
    let lat = all_subgroups(pg, limits)?;
    let idx = lat.table.len() / lat.frattini_bits().count();
    let mut r = 0;
    let mut m = idx as u64;
    while m > 1 {
        if m % p != 0 {
            return Err(Error::Precondition("not a p-group".into()));
        }
        m /= p;
        r += 1;
    }
    Ok(r)
}

impl SubgroupLattice {
    /// Index of the subgroup generated by `gens`, if listed.
    pub fn find(&self, gens: &[Permutation]) -> Option<usize> {
        let idx: Option<Vec<usize>> = gens.iter().map(|g| self.table.index_of(g)).collect();
        self.position(&self.table.closure(&idx?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lim() -> Limits {
        Limits::default()
    }

    #[test]
    fn lattice_sizes() {
        assert_eq!(all_subgroups(&PermGroup::symmetric(3), &lim()).unwrap().len(), 6);
        assert_eq!(all_subgroups(&PermGroup::cyclic(4), &lim()).unwrap().len(), 3);
        let klein = PermGroup::direct_product(&[PermGroup::cyclic(2), PermGroup::cyclic(2)]);
        assert_eq!(all_subgroups(&klein, &lim()).unwrap().len(), 5);
        assert_eq!(all_subgroups(&PermGroup::symmetric(4), &lim()).unwrap().len(), 30);
        assert!(all_subgroups(&PermGroup::symmetric(6), &lim()).is_err());
    }

    #[test]
    fn maximal_and_frattini() {
        let orders = |g: &PermGroup| {
            let mut v: Vec<u64> = maximal_subgroups(g, &lim())
                .unwrap()
                .iter()
                .map(|m| m.order_u64().unwrap())
                .collect();
            v.sort();
            v
        };
        assert_eq!(orders(&PermGroup::cyclic(6)), vec![2, 3]);
        assert_eq!(orders(&PermGroup::symmetric(3)), vec![2, 2, 2, 3]);
        assert_eq!(orders(&PermGroup::cyclic(7)), vec![1]);
        assert_eq!(frattini(&PermGroup::cyclic(4), &lim()).unwrap().order_u64(), Some(2));
        assert_eq!(frattini(&PermGroup::symmetric(3), &lim()).unwrap().order_u64(), Some(1));
    }

    #[test]
    fn quotients() {
        let c4 = PermGroup::cyclic(4);
        let f = frattini(&c4, &lim()).unwrap();
        let q = quotient(&c4, &f, &lim()).unwrap();
        assert_eq!(q.order_u64(), Some(2));
        let s3 = PermGroup::symmetric(3);
        let t = s3.subgroup(vec![Permutation::parse("(1,2)", Some(3)).unwrap()]).unwrap();
        assert_eq!(quotient(&s3, &t, &lim()).unwrap_err(), Error::NotNormal);
        let a3 = s3.derived_subgroup();
        assert_eq!(quotient(&s3, &a3, &lim()).unwrap().order_u64(), Some(2));
        assert_eq!(quotient(&s3, &s3, &lim()).unwrap().order_u64(), Some(1));
    }

    #[test]
    fn minimal_exponent() {
        assert!(is_minimal_exponent(&PermGroup::symmetric(4), &lim()).unwrap());
        assert!(is_minimal_exponent(&PermGroup::cyclic(6), &lim()).unwrap());
        let klein = PermGroup::direct_product(&[PermGroup::cyclic(2), PermGroup::cyclic(2)]);
        assert!(!is_minimal_exponent(&klein, &lim()).unwrap());
        for g in [PermGroup::symmetric(4), klein, PermGroup::dihedral(6)] {
            assert_eq!(
                is_minimal_exponent(&g, &lim()).unwrap(),
                is_minimal_exponent_brute(&g, &lim()).unwrap()
            );
        }
    }

    #[test]
    fn chief_factors() {
        let c4 = PermGroup::cyclic(4);
        let data = chief_factor_data(&c4, &lim()).unwrap();
        assert_eq!(data.len(), 2);
        assert_eq!(data.iter().filter(|d| d.complemented).count(), 1);
        assert!(data[1].complemented && !data[0].complemented);

        let c3c3 = PermGroup::direct_product(&[PermGroup::cyclic(3), PermGroup::cyclic(3)]);
        let data = chief_factor_data(&c3c3, &lim()).unwrap();
        assert_eq!(data.len(), 2);
        assert!(data.iter().all(|d| d.complemented && d.character.iter().all(|&c| c == 1)));

        assert_eq!(
            chief_factor_data(&PermGroup::alternating(4), &lim()).unwrap_err(),
            Error::NotSupersoluble
        );
    }

    #[test]
    fn generating_sizes() {
        assert_eq!(minimal_generating_size(&PermGroup::cyclic(6), &lim()).unwrap(), 1);
        assert_eq!(minimal_generating_size(&PermGroup::symmetric(4), &lim()).unwrap(), 2);
        let c2_3 = PermGroup::direct_product(&[
            PermGroup::cyclic(2),
            PermGroup::cyclic(2),
            PermGroup::cyclic(2),
        ]);
        assert_eq!(minimal_generating_size(&c2_3, &lim()).unwrap(), 3);
        assert_eq!(p_group_rank(&c2_3, 2, &lim()).unwrap(), 3);
    }
}
