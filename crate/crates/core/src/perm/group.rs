use std::collections::{HashMap, VecDeque};
use std::sync::Arc;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::ToPrimitive;
use rand::Rng;

use super::chain::StabChain;
use super::Permutation;
use crate::error::{Error, Result};

/// A finitely generated permutation group with a frozen stabilizer chain.
#[derive(Clone, Debug)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Permutation>,
    chain: Arc<StabChain>,
    order: BigUint,
}

/// A conjugacy class, stored with all its members.
#[derive(Clone, Debug)]
pub struct ConjClass {
    pub representative: Permutation,
    pub elements: Vec<Permutation>,
    /// Element order shared by all members.
    pub element_order: u64,
}

impl ConjClass {
    pub fn size(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        self.elements.binary_search(g).is_ok()
    }
}

impl PermGroup {
    /// The group generated by `generators`; identity generators are dropped.
    pub fn new(degree: usize, generators: Vec<Permutation>) -> Result<Self> {
        for g in &generators {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch {
                    expected: degree,
                    got: g.degree(),
                });
            }
        }
        let generators: Vec<Permutation> = generators
            .into_iter()
            .filter(|g| !g.is_identity())
            .collect();
        let chain = StabChain::new(degree, &generators);
        let order = chain.order();
        Ok(PermGroup {
            degree,
            generators,
            chain: Arc::new(chain),
            order,
        })
    }

    pub fn trivial(degree: usize) -> Self {
        Self::new(degree, Vec::new()).expect("no generators")
    }

    pub fn symmetric(n: usize) -> Self {
        let mut gens = Vec::new();
        if n >= 2 {
            gens.push(Permutation::from_cycles(n, &[vec![1, 2]]).unwrap());
            gens.push(Permutation::from_cycles(n, &[(1..=n).collect()]).unwrap());
        }
        Self::new(n.max(1), gens).unwrap()
    }

    pub fn alternating(n: usize) -> Self {
        let gens = (3..=n)
            .map(|k| Permutation::from_cycles(n, &[vec![1, 2, k]]).unwrap())
            .collect();
        Self::new(n.max(1), gens).unwrap()
    }

    pub fn cyclic(n: usize) -> Self {
        let gens = if n >= 2 {
            vec![Permutation::from_cycles(n, &[(1..=n).collect()]).unwrap()]
        } else {
            Vec::new()
        };
        Self::new(n.max(1), gens).unwrap()
    }

    /// Symmetries of the regular `n`-gon, order `2n`, acting on the vertices.
    pub fn dihedral(n: usize) -> Self {
        if n <= 2 {
            // D_2 is the Klein group, D_1 is C_2; realize both on 4 points.
            let gens = match n {
                1 => vec![Permutation::from_cycles(2, &[vec![1, 2]]).unwrap()],
                _ => vec![
                    Permutation::from_cycles(4, &[vec![1, 2], vec![3, 4]]).unwrap(),
                    Permutation::from_cycles(4, &[vec![1, 3], vec![2, 4]]).unwrap(),
                ],
            };
            let degree = gens[0].degree();
            return Self::new(degree, gens).unwrap();
        }
        let rot = Permutation::from_cycles(n, &[(1..=n).collect()]).unwrap();
        let refl: Vec<Vec<usize>> = (2..=n / 2 + n % 2)
            .map(|i| vec![i, n + 2 - i])
            .filter(|c| c[0] != c[1])
            .collect();
        let refl = Permutation::from_cycles(n, &refl).unwrap();
        Self::new(n, vec![rot, refl]).unwrap()
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn order(&self) -> &BigUint {
        &self.order
    }

    /// The order if it fits in a `u64`.
    pub fn order_u64(&self) -> Option<u64> {
        self.order.to_u64()
    }

    pub fn is_trivial(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn identity(&self) -> Permutation {
        Permutation::identity(self.degree)
    }

    pub fn contains(&self, g: &Permutation) -> Result<bool> {
        self.check_degree(g)?;
        Ok(self.chain.contains(g))
    }

    pub(crate) fn contains_unchecked(&self, g: &Permutation) -> bool {
        self.chain.contains(g)
    }

    fn check_degree(&self, g: &Permutation) -> Result<()> {
        if g.degree() != self.degree {
            return Err(Error::DegreeMismatch {
                expected: self.degree,
                got: g.degree(),
            });
        }
        Ok(())
    }

    pub fn base(&self) -> Vec<usize> {
        self.chain.base()
    }

    pub fn strong_generators(&self) -> Vec<Permutation> {
        self.chain.strong_generators()
    }

    pub fn random_element<R: Rng + ?Sized>(&self, rng: &mut R) -> Permutation {
        self.chain.random_element(rng)
    }

    fn checked_order(&self, cap: u64, what: &'static str) -> Result<usize> {
        match self.order_u64() {
            Some(n) if n <= cap => Ok(n as usize),
            _ => Err(Error::cap(what, &self.order, cap)),
        }
    }

    /// All elements, sorted. Fails above `cap`.
    pub fn elements(&self, cap: u64) -> Result<Vec<Permutation>> {
        let n = self.checked_order(cap, "group order")?;
        let mut out = Vec::with_capacity(n);
        self.chain.for_each_element(|g| out.push(g.clone()));
        out.sort_unstable();
        Ok(out)
    }

    pub fn for_each_element(&self, f: impl FnMut(&Permutation)) {
        self.chain.for_each_element(f)
    }

    /// The subgroup generated by `gens` (which need not lie in `self`).
    pub fn subgroup(&self, gens: Vec<Permutation>) -> Result<PermGroup> {
        PermGroup::new(self.degree, gens)
    }

    /// The group generated by `self` and one more element.
    pub fn extended(&self, g: &Permutation) -> Result<PermGroup> {
        self.check_degree(g)?;
        let mut chain = (*self.chain).clone();
        let mut generators = self.generators.clone();
        if chain.insert(g) {
            generators.push(g.clone());
        }
        let order = chain.order();
        Ok(PermGroup {
            degree: self.degree,
            generators,
            chain: Arc::new(chain),
            order,
        })
    }

    pub fn is_subgroup_of(&self, other: &PermGroup) -> bool {
        self.degree == other.degree
            && self.generators.iter().all(|g| other.contains_unchecked(g))
    }

    pub fn same_group(&self, other: &PermGroup) -> bool {
        self.order == other.order && self.is_subgroup_of(other)
    }

    pub fn is_normal_in(&self, parent: &PermGroup) -> bool {
        self.is_subgroup_of(parent)
            && parent.generators.iter().all(|g| {
                self.generators
                    .iter()
                    .all(|k| self.contains_unchecked(&k.conjugate_by(g)))
            })
    }

    pub fn is_abelian(&self) -> bool {
        let gens = &self.generators;
        gens.iter()
            .enumerate()
            .all(|(i, a)| gens[i + 1..].iter().all(|b| a * b == b * a))
    }

    /// Cyclic iff some element has order `|G|`; decided by enumeration.
    pub fn is_cyclic(&self, cap: u64) -> Result<bool> {
        if !self.is_abelian() {
            return Ok(false);
        }
        let n = self.checked_order(cap, "group order")? as u64;
        let mut found = false;
        self.chain.for_each_element(|g| {
            if !found && g.order() == n {
                found = true;
            }
        });
        Ok(found)
    }

    /// Smallest normal subgroup of `self` containing `set`.
    pub fn normal_closure(&self, set: &[Permutation]) -> Result<PermGroup> {
        for s in set {
            self.check_degree(s)?;
            if !self.contains_unchecked(s) {
                return Err(Error::NotSubgroup);
            }
        }
        Ok(self.normal_closure_unchecked(set))
    }

    fn normal_closure_unchecked(&self, set: &[Permutation]) -> PermGroup {
        let mut chain = StabChain::new(self.degree, &[]);
        let mut gens: Vec<Permutation> = Vec::new();
        let mut queue: VecDeque<Permutation> = set.iter().cloned().collect();
        while let Some(x) = queue.pop_front() {
            if chain.insert(&x) {
                gens.push(x.clone());
                for g in &self.generators {
                    queue.push_back(x.conjugate_by(g));
                }
            }
        }
        let order = chain.order();
        PermGroup {
            degree: self.degree,
            generators: gens,
            chain: Arc::new(chain),
            order,
        }
    }

    /// `[A, B]` for subgroups `A`, `B` normal in `self`.
    pub fn commutator_subgroup(&self, a: &PermGroup, b: &PermGroup) -> PermGroup {
        let comms: Vec<Permutation> = a
            .generators
            .iter()
            .flat_map(|x| b.generators.iter().map(move |y| x.commutator(y)))
            .collect();
        self.normal_closure_unchecked(&comms)
    }

    pub fn derived_subgroup(&self) -> PermGroup {
        self.commutator_subgroup(self, self)
    }

    pub fn derived_series(&self) -> Vec<PermGroup> {
        let mut series = vec![self.clone()];
        loop {
            let last = series.last().unwrap();
            let next = last.derived_subgroup();
            if next.order == last.order {
                break;
            }
            series.push(next);
        }
        series
    }

    pub fn is_soluble(&self) -> bool {
        self.derived_series().last().unwrap().is_trivial()
    }

    pub fn is_nilpotent(&self) -> bool {
        let mut current = self.clone();
        loop {
            if current.is_trivial() {
                return true;
            }
            let next = self.commutator_subgroup(&current, self);
            if next.order == current.order {
                return false;
            }
            current = next;
        }
    }

    /// Orbit of `g` under conjugation, with conjugators `t` such that
    /// `g^t` is the corresponding orbit element.
    fn conjugation_orbit(
        &self,
        g: &Permutation,
        cap: u64,
    ) -> Result<(Vec<Permutation>, Vec<Permutation>, HashMap<Permutation, usize>)> {
        let mut elems = vec![g.clone()];
        let mut conj = vec![self.identity()];
        let mut index = HashMap::new();
        index.insert(g.clone(), 0usize);
        let mut i = 0;
        while i < elems.len() {
            for s in &self.generators {
                let y = elems[i].conjugate_by(s);
                if !index.contains_key(&y) {
                    if elems.len() as u64 >= cap {
                        return Err(Error::cap("conjugacy class size", format!(">{cap}"), cap));
                    }
                    index.insert(y.clone(), elems.len());
                    conj.push(conj[i].compose(s));
                    elems.push(y);
                }
            }
            i += 1;
        }
        Ok((elems, conj, index))
    }

    pub fn conjugacy_class(&self, g: &Permutation, cap: u64) -> Result<ConjClass> {
        self.check_degree(g)?;
        if !self.contains_unchecked(g) {
            return Err(Error::NotMember);
        }
        let (mut elements, _, _) = self.conjugation_orbit(g, cap)?;
        elements.sort_unstable();
        Ok(ConjClass {
            representative: g.clone(),
            element_order: g.order(),
            elements,
        })
    }

    /// `C_G(g)`, from the Schreier generators of the conjugation orbit.
    pub fn centralizer(&self, g: &Permutation, cap: u64) -> Result<PermGroup> {
        self.check_degree(g)?;
        let (elems, conj, index) = self.conjugation_orbit(g, cap)?;
        let mut chain = StabChain::new(self.degree, &[]);
        let mut gens = Vec::new();
        for (i, x) in elems.iter().enumerate() {
            for s in &self.generators {
                let j = index[&x.conjugate_by(s)];
                let sch = conj[i].compose(s).compose(&conj[j].inverse());
                if chain.insert(&sch) {
                    gens.push(sch);
                }
            }
        }
        let order = chain.order();
        debug_assert_eq!(&order * BigUint::from(elems.len()), self.order);
        Ok(PermGroup {
            degree: self.degree,
            generators: gens,
            chain: Arc::new(chain),
            order,
        })
    }

    /// All conjugacy classes, sorted by (element order, size, representative).
    /// Each representative is the least member of its class.
    pub fn conjugacy_classes(&self, cap: u64) -> Result<Vec<ConjClass>> {
        let all = self.elements(cap)?;
        let index: HashMap<&Permutation, usize> =
            all.iter().enumerate().map(|(i, g)| (g, i)).collect();
        let mut seen = vec![false; all.len()];
        let mut classes = Vec::new();
        for (i, g) in all.iter().enumerate() {
            if seen[i] {
                continue;
            }
            let (mut elements, _, _) = self.conjugation_orbit(g, cap)?;
            for x in &elements {
                seen[index[x]] = true;
            }
            elements.sort_unstable();
            classes.push(ConjClass {
                representative: elements[0].clone(),
                element_order: g.order(),
                elements,
            });
        }
        classes.sort_by(|a, b| {
            (a.element_order, a.size(), &a.representative).cmp(&(
                b.element_order,
                b.size(),
                &b.representative,
            ))
        });
        Ok(classes)
    }

    /// Least common multiple of element orders.
    pub fn exponent(&self, cap: u64) -> Result<u64> {
        self.checked_order(cap, "group order")?;
        let mut e = 1u64;
        self.chain.for_each_element(|g| e = e.lcm(&g.order()));
        Ok(e)
    }

    /// A Sylow `p`-subgroup, grown one `p`-element at a time inside normalizers.
    pub fn sylow_subgroup(&self, p: u64, cap: u64) -> Result<PermGroup> {
        let elems = self.elements(cap)?;
        let order = self.order_u64().unwrap();
        let mut target = 1u64;
        let mut m = order;
        while m % p == 0 {
            m /= p;
            target *= p;
        }
        let mut sub = PermGroup::trivial(self.degree);
        while sub.order_u64() != Some(target) {
            let sub_order = sub.order_u64().unwrap();
            // A p-element normalizing `sub` and outside it extends it to a
            // larger p-subgroup.
            let next = elems.iter().find(|g| {
                let o = g.order();
                is_power_of(o, p)
                    && !sub.contains_unchecked(g)
                    && sub.generators.iter().all(|k| sub.contains_unchecked(&k.conjugate_by(g)))
                    && {
                        let ext = sub.extended(g).unwrap();
                        ext.order_u64().map_or(false, |n| is_power_of(n, p) && n > sub_order)
                    }
            });
            match next {
                Some(g) => sub = sub.extended(g)?,
                None => unreachable!("Sylow theorem guarantees an extension"),
            }
        }
        Ok(sub)
    }

    /// Right cosets `N x` in a fixed order, and for each element of `self`
    /// its coset index.
    pub(crate) fn coset_table(
        &self,
        sub: &PermGroup,
        cap: u64,
    ) -> Result<(Vec<Permutation>, HashMap<Permutation, usize>)> {
        let elems = self.elements(cap)?;
        let sub_elems = sub.elements(cap)?;
        let mut which: HashMap<Permutation, usize> = HashMap::with_capacity(elems.len());
        let mut reps = Vec::new();
        for x in &elems {
            if which.contains_key(x) {
                continue;
            }
            let id = reps.len();
            reps.push(x.clone());
            for n in &sub_elems {
                which.insert(n.compose(x), id);
            }
        }
        Ok((reps, which))
    }

    /// Direct product acting on disjoint point sets.
    pub fn direct_product(groups: &[PermGroup]) -> PermGroup {
        let degree: usize = groups.iter().map(|g| g.degree).sum();
        let mut gens = Vec::new();
        let mut offset = 0;
        for g in groups {
            for x in &g.generators {
                gens.push(x.shifted(offset, degree));
            }
            offset += g.degree;
        }
        PermGroup::new(degree.max(1), gens).unwrap()
    }
}

pub(crate) fn is_power_of(mut n: u64, p: u64) -> bool {
    if n == 0 {
        return false;
    }
    while n % p == 0 {
        n /= p;
    }
    n == 1
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str, n: usize) -> Permutation {
        Permutation::parse(s, Some(n)).unwrap()
    }

    const CAP: u64 = 1_000_000;

    #[test]
    fn named_orders() {
        assert_eq!(PermGroup::alternating(5).order_u64(), Some(60));
        assert_eq!(PermGroup::symmetric(7).order_u64(), Some(5040));
        assert_eq!(PermGroup::cyclic(4).order_u64(), Some(4));
        assert_eq!(PermGroup::dihedral(6).order_u64(), Some(12));
        assert_eq!(PermGroup::dihedral(4).order_u64(), Some(8));
        assert_eq!(PermGroup::dihedral(2).order_u64(), Some(4));
        assert_eq!(PermGroup::symmetric(1).order_u64(), Some(1));
    }

    #[test]
    fn membership() {
        let a5 = PermGroup::alternating(5);
        assert!(a5.contains(&p("(1,2,3)", 5)).unwrap());
        assert!(!a5.contains(&p("(1,2)", 5)).unwrap());
        assert!(a5.contains(&p("(1,2)", 6)).is_err());
        let v = PermGroup::new(4, vec![p("(1,2)(3,4)", 4)]).unwrap();
        assert!(v.contains(&p("(1,2)(3,4)", 4)).unwrap());
    }

    #[test]
    fn class_sizes() {
        let a5 = PermGroup::alternating(5);
        assert_eq!(a5.conjugacy_class(&p("(1,2,3,4,5)", 5), CAP).unwrap().size(), 12);
        assert_eq!(a5.conjugacy_class(&a5.identity(), CAP).unwrap().size(), 1);
        let s5 = PermGroup::symmetric(5);
        assert_eq!(s5.conjugacy_class(&p("(1,2,3,4,5)", 5), CAP).unwrap().size(), 24);
        assert_eq!(
            a5.conjugacy_class(&p("(1,2)", 5), CAP).unwrap_err(),
            Error::NotMember
        );
        let mut sizes: Vec<usize> = a5
            .conjugacy_classes(CAP)
            .unwrap()
            .iter()
            .map(ConjClass::size)
            .collect();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![1, 12, 12, 15, 20]);
        let s3: Vec<usize> = PermGroup::symmetric(3)
            .conjugacy_classes(CAP)
            .unwrap()
            .iter()
            .map(ConjClass::size)
            .collect();
        assert_eq!(s3, vec![1, 3, 2]);
        assert_eq!(PermGroup::cyclic(4).conjugacy_classes(CAP).unwrap().len(), 4);
    }

    #[test]
    fn class_cap_is_enforced() {
        let a5 = PermGroup::alternating(5);
        assert!(matches!(
            a5.conjugacy_classes(10),
            Err(Error::CapExceeded { .. })
        ));
    }

    #[test]
    fn centralizer_orders() {
        let s7 = PermGroup::symmetric(7);
        let c = s7.centralizer(&p("(1,2,3)(4,5,6,7)", 7), CAP).unwrap();
        assert_eq!(c.order_u64(), Some(12));
        let c = s7.centralizer(&p("(1,2,3,4,5)", 7), CAP).unwrap();
        assert_eq!(c.order_u64(), Some(10));
    }

    #[test]
    fn exponents() {
        assert_eq!(PermGroup::alternating(7).exponent(CAP).unwrap(), 420);
        assert_eq!(PermGroup::alternating(8).exponent(CAP).unwrap(), 420);
        assert_eq!(PermGroup::dihedral(2).exponent(CAP).unwrap(), 2);
    }

    #[test]
    fn normal_closures() {
        let s3 = PermGroup::symmetric(3);
        assert_eq!(s3.normal_closure(&[p("(1,2,3)", 3)]).unwrap().order_u64(), Some(3));
        let a5 = PermGroup::alternating(5);
        assert_eq!(a5.normal_closure(&[p("(1,2,3)", 5)]).unwrap().order_u64(), Some(60));
        let s4 = PermGroup::symmetric(4);
        assert_eq!(s4.normal_closure(&[p("(1,2)(3,4)", 4)]).unwrap().order_u64(), Some(4));
        assert_eq!(
            PermGroup::cyclic(3).normal_closure(&[p("(1,2)", 3)]).unwrap_err(),
            Error::NotSubgroup
        );
    }

    #[test]
    fn solubility_and_nilpotency() {
        assert!(PermGroup::symmetric(4).is_soluble());
        assert!(!PermGroup::alternating(5).is_soluble());
        assert!(PermGroup::dihedral(4).is_nilpotent());
        assert!(!PermGroup::symmetric(3).is_nilpotent());
    }

    #[test]
    fn sylow_orders() {
        let s4 = PermGroup::symmetric(4);
        assert_eq!(s4.sylow_subgroup(2, CAP).unwrap().order_u64(), Some(8));
        assert_eq!(s4.sylow_subgroup(3, CAP).unwrap().order_u64(), Some(3));
        assert_eq!(s4.sylow_subgroup(5, CAP).unwrap().order_u64(), Some(1));
    }

    #[test]
    fn cyclicity() {
        assert!(PermGroup::cyclic(6).is_cyclic(CAP).unwrap());
        assert!(!PermGroup::dihedral(2).is_cyclic(CAP).unwrap());
        let c6 = PermGroup::direct_product(&[PermGroup::cyclic(2), PermGroup::cyclic(3)]);
        assert!(c6.is_cyclic(CAP).unwrap());
    }
}
