//! Invariable generation.
//!
//! `{g_1, ..., g_d}` invariably generates `G` when every choice of
//! conjugates `g_i^{x_i}` generates `G`. The search fixes one entry (the
//! property is invariant under simultaneous conjugation), takes the next
//! entry up to conjugation by the centralizer of the first, and then runs
//! through all conjugates of the remaining entries. A branch is closed as
//! soon as the chosen conjugates already generate `G`.

use std::collections::HashSet;

use num_integer::Integer;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice;
use crate::limits::Limits;
use crate::perm::{ConjClass, PermGroup, Permutation, StabChain};

/// Counts subgroup-generation steps against a limit.
#[derive(Clone, Debug)]
pub struct Budget {
    limit: u64,
    used: u64,
}

impl Budget {
    pub fn new(limit: u64) -> Self {
        Budget { limit, used: 0 }
    }

    pub fn used(&self) -> u64 {
        self.used
    }

    pub fn tick(&mut self) -> Result<()> {
        if self.used >= self.limit {
            return Err(Error::BudgetExhausted { used: self.used });
        }
        self.used += 1;
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InvgenResult {
    pub generates: bool,
    /// A tuple of conjugates that fails to generate, in the input order.
    pub witness: Option<Vec<Permutation>>,
}

/// A tuple of elements of a group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenTuple {
    pub elements: Vec<Permutation>,
}

impl GenTuple {
    pub fn new(elements: Vec<Permutation>) -> Self {
        GenTuple { elements }
    }

    pub fn orders(&self) -> Vec<u64> {
        self.elements.iter().map(Permutation::order).collect()
    }

    pub fn is_coprime(&self) -> bool {
        pairwise_coprime(&self.orders())
    }

    pub fn is_prime_power(&self) -> bool {
        self.is_coprime() && self.orders().iter().all(|&o| o == 1 || prime_power_base(o).is_some())
    }
}

pub fn pairwise_coprime(orders: &[u64]) -> bool {
    orders
        .iter()
        .enumerate()
        .all(|(i, a)| orders[..i].iter().all(|b| a.gcd(b) == 1))
}

/// `Some(q)` when `n = q^k` for a prime `q` and `k >= 1`.
pub fn prime_power_base(n: u64) -> Option<u64> {
    let f = prime_factors(n);
    (f.len() == 1).then(|| f[0])
}

pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut q = 2;
    while q * q <= n {
        if n % q == 0 {
            out.push(q);
            while n % q == 0 {
                n /= q;
            }
        }
        q += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

pub fn invariably_generates(g: &PermGroup, tuple: &[Permutation], limits: &Limits) -> Result<InvgenResult> {
    let mut budget = Budget::new(limits.search_budget);
    invariably_generates_with(g, tuple, limits, &mut budget)
}

pub fn invariably_generates_with(
    g: &PermGroup,
    tuple: &[Permutation],
    limits: &Limits,
    budget: &mut Budget,
) -> Result<InvgenResult> {
    for x in tuple {
        if !g.contains(x)? {
            return Err(Error::NotMember);
        }
    }
    let classes = tuple
        .iter()
        .map(|x| g.conjugacy_class(x, limits.enumeration_cap))
        .collect::<Result<Vec<_>>>()?;
    Search::new(g, limits, budget).run(tuple, &classes)
}

/// The same test for class representatives whose classes are already known.
pub(crate) fn invariably_generates_classes(
    g: &PermGroup,
    classes: &[&ConjClass],
    limits: &Limits,
    budget: &mut Budget,
) -> Result<bool> {
    let tuple: Vec<Permutation> = classes.iter().map(|c| c.representative.clone()).collect();
    let owned: Vec<ConjClass> = classes.iter().map(|&c| c.clone()).collect();
    Ok(Search::new(g, limits, budget).run(&tuple, &owned)?.generates)
}

struct Search<'a> {
    g: &'a PermGroup,
    limits: &'a Limits,
    budget: &'a mut Budget,
    /// `(depth, elements)` of subgroups whose every completion generates.
    memo: HashSet<(usize, Vec<Permutation>)>,
}

/// Subgroups at most this large are memoized by element set.
const MEMO_ORDER: u64 = 512;

impl<'a> Search<'a> {
    fn new(g: &'a PermGroup, limits: &'a Limits, budget: &'a mut Budget) -> Self {
        Search {
            g,
            limits,
            budget,
            memo: HashSet::new(),
        }
    }

    fn run(&mut self, tuple: &[Permutation], classes: &[ConjClass]) -> Result<InvgenResult> {
        let g = self.g;
        if g.is_trivial() {
            return Ok(InvgenResult { generates: true, witness: None });
        }
        let mut live: Vec<usize> = (0..tuple.len()).filter(|&i| !tuple[i].is_identity()).collect();
        if live.is_empty() {
            return Ok(InvgenResult {
                generates: false,
                witness: Some(tuple.to_vec()),
            });
        }
        // Fix the entry with the largest class; walk the rest smallest first.
        let first_pos = (0..live.len())
            .max_by_key(|&k| (classes[live[k]].size(), std::cmp::Reverse(k)))
            .unwrap();
        let first = live.remove(first_pos);
        live.sort_by_key(|&i| classes[i].size());
        let order: Vec<usize> = std::iter::once(first).chain(live).collect();

        let mut chosen = vec![tuple[first].clone()];
        let mut chain = StabChain::new(g.degree(), &[]);
        chain.insert(&tuple[first]);
        self.budget.tick()?;
        let failure = if chain.order() == *g.order() {
            None
        } else if order.len() == 1 {
            Some(chosen)
        } else {
            // The second entry only matters up to conjugation by C_G(first).
            let cent = g.centralizer(&tuple[first], self.limits.enumeration_cap)?;
            let reps = orbit_representatives(&classes[order[1]], cent.generators());
            let mut fail = None;
            for r in reps {
                chosen.push(r.clone());
                let mut next = chain.clone();
                next.insert(&r);
                self.budget.tick()?;
                if self.descend(2, &next, &order, classes, &mut chosen)? {
                    fail = Some(chosen.clone());
                    break;
                }
                chosen.pop();
            }
            fail
        };
        Ok(match failure {
            None => InvgenResult { generates: true, witness: None },
            Some(found) => {
                let mut witness = tuple.to_vec();
                for (k, &i) in order.iter().enumerate() {
                    witness[i] = found[k].clone();
                }
                InvgenResult {
                    generates: false,
                    witness: Some(witness),
                }
            }
        })
    }

    /// Returns true when some completion fails to generate; `chosen` then
    /// holds the failing tuple.
    fn descend(
        &mut self,
        depth: usize,
        chain: &StabChain,
        order: &[usize],
        classes: &[ConjClass],
        chosen: &mut Vec<Permutation>,
    ) -> Result<bool> {
        let target = self.g.order();
        if chain.order() == *target {
            return Ok(false);
        }
        if depth == order.len() {
            return Ok(true);
        }
        let key = if chain.order() <= MEMO_ORDER.into() {
            let mut elems = Vec::new();
            chain.for_each_element(|x| elems.push(x.clone()));
            elems.sort_unstable();
            let key = (depth, elems);
            if self.memo.contains(&key) {
                return Ok(false);
            }
            Some(key)
        } else {
            None
        };
        for x in &classes[order[depth]].elements {
            chosen.push(x.clone());
            let mut next = chain.clone();
            next.insert(x);
            self.budget.tick()?;
            if self.descend(depth + 1, &next, order, classes, chosen)? {
                return Ok(true);
            }
            chosen.pop();
        }
        if let Some(key) = key {
            self.memo.insert(key);
        }
        Ok(false)
    }
}

/// One element from each orbit of `⟨gens⟩` acting on the class by conjugation.
fn orbit_representatives(class: &ConjClass, gens: &[Permutation]) -> Vec<Permutation> {
    let n = class.elements.len();
    let mut seen = vec![false; n];
    let mut reps = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        reps.push(class.elements[start].clone());
        seen[start] = true;
        let mut stack = vec![start];
        while let Some(i) = stack.pop() {
            for c in gens {
                let y = class.elements[i].conjugate_by(c);
                let j = class.elements.binary_search(&y).expect("class is closed");
                if !seen[j] {
                    seen[j] = true;
                    stack.push(j);
                }
            }
        }
    }
    reps
}

/// Nontrivial classes of `g`, in the canonical order.
fn nontrivial_classes(g: &PermGroup, limits: &Limits) -> Result<Vec<ConjClass>> {
    Ok(g.conjugacy_classes(limits.enumeration_cap)?
        .into_iter()
        .filter(|c| !c.representative.is_identity())
        .collect())
}

/// Smallest size of an invariably generating set, with a witness of that
/// size made of class representatives.
pub fn d_i(g: &PermGroup, limits: &Limits) -> Result<(usize, Vec<Permutation>)> {
    let mut budget = Budget::new(limits.search_budget);
    d_i_with(g, limits, &mut budget)
}

pub fn d_i_with(g: &PermGroup, limits: &Limits, budget: &mut Budget) -> Result<(usize, Vec<Permutation>)> {
    if g.is_trivial() {
        return Ok((0, Vec::new()));
    }
    let classes = nontrivial_classes(g, limits)?;
    for d in 1..=classes.len() {
        let mut pick = vec![0usize; d];
        loop {
            let cs: Vec<&ConjClass> = pick.iter().map(|&i| &classes[i]).collect();
            if invariably_generates_classes(g, &cs, limits, budget)? {
                return Ok((d, cs.iter().map(|c| c.representative.clone()).collect()));
            }
            if !next_multiset(&mut pick, classes.len()) {
                break;
            }
        }
    }
    unreachable!("a full set of class representatives invariably generates")
}

/// Advances a non-decreasing index sequence; false when exhausted.
fn next_multiset(pick: &mut [usize], n: usize) -> bool {
    let d = pick.len();
    let mut i = d;
    while i > 0 {
        i -= 1;
        if pick[i] + 1 < n {
            let v = pick[i] + 1;
            for x in &mut pick[i..] {
                *x = v;
            }
            return true;
        }
    }
    false
}

/// Kind of coprime witness searched for.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Coprime {
    /// Pairwise coprime orders.
    Plain,
    /// Pairwise coprime prime-power orders.
    PrimePower,
}

/// A coprime invariably generating set of class representatives, or none.
///
/// Witnesses are saturated: every prime divisor of `|G|` divides the order
/// of some entry. Adding elements never breaks invariable generation, so a
/// saturated witness exists whenever any coprime witness does; among
/// saturated sets the fewest entries are tried first.
pub fn find_coprime_set(g: &PermGroup, kind: Coprime, limits: &Limits) -> Result<Option<GenTuple>> {
    let mut budget = Budget::new(limits.search_budget);
    find_coprime_set_with(g, kind, limits, &mut budget)
}

pub fn find_coprime_set_with(
    g: &PermGroup,
    kind: Coprime,
    limits: &Limits,
    budget: &mut Budget,
) -> Result<Option<GenTuple>> {
    if g.is_trivial() {
        return Ok(Some(GenTuple::new(Vec::new())));
    }
    let classes = nontrivial_classes(g, limits)?;
    let primes = prime_factors(g.order_u64().expect("enumerable group"));
    let usable: Vec<usize> = (0..classes.len())
        .filter(|&i| kind == Coprime::Plain || prime_power_base(classes[i].element_order).is_some())
        .collect();
    for d in 1..=primes.len() {
        let mut sets = Vec::new();
        saturated_sets(&classes, &usable, &primes, d, 0, &mut Vec::new(), &mut sets);
        for set in sets {
            let cs: Vec<&ConjClass> = set.iter().map(|&i| &classes[i]).collect();
            if invariably_generates_classes(g, &cs, limits, budget)? {
                return Ok(Some(GenTuple::new(
                    cs.iter().map(|c| c.representative.clone()).collect(),
                )));
            }
        }
    }
    Ok(None)
}

/// Every saturated coprime invariably generating set of class representatives.
pub fn all_coprime_sets(g: &PermGroup, kind: Coprime, limits: &Limits) -> Result<Vec<GenTuple>> {
    if g.is_trivial() {
        return Ok(vec![GenTuple::new(Vec::new())]);
    }
    let mut budget = Budget::new(limits.search_budget);
    let classes = nontrivial_classes(g, limits)?;
    let primes = prime_factors(g.order_u64().expect("enumerable group"));
    let usable: Vec<usize> = (0..classes.len())
        .filter(|&i| kind == Coprime::Plain || prime_power_base(classes[i].element_order).is_some())
        .collect();
    let mut out = Vec::new();
    for d in 1..=primes.len() {
        let mut sets = Vec::new();
        saturated_sets(&classes, &usable, &primes, d, 0, &mut Vec::new(), &mut sets);
        for set in sets {
            let cs: Vec<&ConjClass> = set.iter().map(|&i| &classes[i]).collect();
            if invariably_generates_classes(g, &cs, limits, &mut budget)? {
                out.push(GenTuple::new(cs.iter().map(|c| c.representative.clone()).collect()));
            }
        }
    }
    Ok(out)
}

fn saturated_sets(
    classes: &[ConjClass],
    usable: &[usize],
    primes: &[u64],
    d: usize,
    from: usize,
    cur: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    if cur.len() == d {
        let covered = primes
            .iter()
            .all(|&q| cur.iter().any(|&i| classes[i].element_order % q == 0));
        if covered {
            out.push(cur.clone());
        }
        return;
    }
    for k in from..usable.len() {
        let i = usable[k];
        let o = classes[i].element_order;
        if cur.iter().all(|&j| classes[j].element_order.gcd(&o) == 1) {
            cur.push(i);
            saturated_sets(classes, usable, primes, d, k + 1, cur, out);
            cur.pop();
        }
    }
}

pub fn find_cig_set(g: &PermGroup, limits: &Limits) -> Result<Option<GenTuple>> {
    find_coprime_set(g, Coprime::Plain, limits)
}

pub fn find_pcig_set(g: &PermGroup, limits: &Limits) -> Result<Option<GenTuple>> {
    find_coprime_set(g, Coprime::PrimePower, limits)
}

/// CIG / PCIG decision with the Frattini shortcut: `G` has the property
/// exactly when `G / Frat(G)` has it. The shortcut is used whenever the
/// lattice is within its caps.
pub fn is_coprime_ig(g: &PermGroup, kind: Coprime, limits: &Limits) -> Result<bool> {
    let reduced = match frattini_quotient(g, limits) {
        Ok(q) => q,
        Err(Error::CapExceeded { .. }) => g.clone(),
        Err(e) => return Err(e),
    };
    Ok(find_coprime_set(&reduced, kind, limits)?.is_some())
}

pub fn is_cig(g: &PermGroup, limits: &Limits) -> Result<bool> {
    is_coprime_ig(g, Coprime::Plain, limits)
}

pub fn is_pcig(g: &PermGroup, limits: &Limits) -> Result<bool> {
    is_coprime_ig(g, Coprime::PrimePower, limits)
}

/// `G / Frat(G)`, or `G` itself when the Frattini subgroup is trivial.
pub fn frattini_quotient(g: &PermGroup, limits: &Limits) -> Result<PermGroup> {
    let f = lattice::frattini(g, limits)?;
    if f.is_trivial() {
        Ok(g.clone())
    } else {
        lattice::quotient(g, &f, limits)
    }
}

/// Splits each entry into its prime-power parts `g^k`, with the `k` the
/// idempotents of the Chinese remainder decomposition of `Z/|g|`.
/// Identity entries disappear.
pub fn coprime_refinement(tuple: &[Permutation]) -> Result<Vec<Permutation>> {
    let orders: Vec<u64> = tuple.iter().map(Permutation::order).collect();
    if !pairwise_coprime(&orders) {
        return Err(Error::Precondition("orders are not pairwise coprime".into()));
    }
    let mut out = Vec::new();
    for (g, &n) in tuple.iter().zip(&orders) {
        for q in prime_factors(n) {
            let mut qa = 1;
            while n % (qa * q) == 0 {
                qa *= q;
            }
            let m = n / qa;
            let k = m * mod_inverse(m % qa, qa);
            out.push(g.pow((k % n) as i64));
        }
    }
    Ok(out)
}

fn mod_inverse(a: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let e = (a as i64).extended_gcd(&(m as i64));
    debug_assert_eq!(e.gcd, 1);
    e.x.rem_euclid(m as i64) as u64
}

/// Whether the prime-power refinement of a coprime invariably generating
/// tuple of a soluble group still invariably generates.
pub fn check_cig_refinement(g: &PermGroup, tuple: &[Permutation], limits: &Limits) -> Result<bool> {
    if !g.is_soluble() {
        return Err(Error::Precondition("group is not soluble".into()));
    }
    let refined = coprime_refinement(tuple)?;
    Ok(invariably_generates(g, &refined, limits)?.generates)
}

/// Class-set enumeration for the lifting bounds: for each class of `H`
/// (identity included), whether it is the distinguished entry `h_1` of some
/// coprime invariably generating set `{h_1, ..., h_d}` whose other entries
/// have order prime to `p`. Returns the admissible representatives.
pub fn distinguished_entries(
    h: &PermGroup,
    p: u64,
    kind: Coprime,
    limits: &Limits,
) -> Result<Vec<Permutation>> {
    let mut budget = Budget::new(limits.search_budget);
    let all = h.conjugacy_classes(limits.enumeration_cap)?;
    let order = h.order_u64().expect("enumerable group");
    let primes = prime_factors(order);
    let admissible = |o: u64| kind == Coprime::Plain || o == 1 || prime_power_base(o).is_some();
    let others: Vec<usize> = (0..all.len())
        .filter(|&i| {
            let o = all[i].element_order;
            o != 1 && o % p != 0 && admissible(o)
        })
        .collect();
    let mut out = Vec::new();
    for (ci, c) in all.iter().enumerate() {
        if !admissible(c.element_order) {
            continue;
        }
        // Maximal completions cover every prime except p when p is unused.
        let need: Vec<u64> = primes
            .iter()
            .copied()
            .filter(|&q| c.element_order % q != 0 && q != p)
            .collect();
        let mut found = false;
        let mut stack: Vec<(Vec<usize>, usize)> = vec![(Vec::new(), 0)];
        'search: while let Some((cur, from)) = stack.pop() {
            let covered = need
                .iter()
                .all(|&q| cur.iter().any(|&i| all[i].element_order % q == 0));
            if covered {
                let mut cs: Vec<&ConjClass> = vec![&all[ci]];
                cs.extend(cur.iter().map(|&i| &all[i]));
                if invariably_generates_classes(h, &cs, limits, &mut budget)? {
                    found = true;
                    break 'search;
                }
                continue;
            }
            for k in (from..others.len()).rev() {
                let i = others[k];
                let o = all[i].element_order;
                let coprime = o.gcd(&c.element_order) == 1
                    && cur.iter().all(|&j| all[j].element_order.gcd(&o) == 1);
                if coprime {
                    let mut next = cur.clone();
                    next.push(i);
                    stack.push((next, k + 1));
                }
            }
        }
        if found {
            out.push(c.representative.clone());
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn perm(s: &str, n: usize) -> Permutation {
        Permutation::parse(s, Some(n)).unwrap()
    }

    fn lim() -> Limits {
        Limits::default()
    }

    #[test]
    fn sym7_pair() {
        let g = PermGroup::symmetric(7);
        let t = [perm("(1,2,3,4,5)", 7), perm("(1,2,3)(4,5,6,7)", 7)];
        assert!(invariably_generates(&g, &t, &lim()).unwrap().generates);
    }

    #[test]
    fn alt5_examples() {
        let g = PermGroup::alternating(5);
        let t = [perm("(1,2,3,4,5)", 5), perm("(1,2,3)", 5), perm("(1,2)(3,4)", 5)];
        assert!(invariably_generates(&g, &t, &lim()).unwrap().generates);
        let r = invariably_generates(&g, &[perm("(1,2,3,4,5)", 5)], &lim()).unwrap();
        assert!(!r.generates);
        let w = r.witness.unwrap();
        assert_eq!(crate::oracle::closure_size(&w, 5), 5);
    }

    #[test]
    fn witness_keeps_input_order() {
        let g = PermGroup::alternating(5);
        let t = [perm("(1,2)(3,4)", 5), perm("()", 5), perm("(1,2,3)", 5)];
        let r = invariably_generates(&g, &t, &lim()).unwrap();
        assert!(!r.generates);
        let w = r.witness.unwrap();
        assert_eq!(w[0].order(), 2);
        assert!(w[1].is_identity());
        assert_eq!(w[2].order(), 3);
        assert!(crate::oracle::closure_size(&w, 5) < 60);
    }

    #[test]
    fn budget_is_a_third_state() {
        let g = PermGroup::symmetric(7);
        let t = [perm("(1,2,3,4,5)", 7), perm("(1,2,3)(4,5,6,7)", 7)];
        let e = invariably_generates(&g, &t, &lim().with_budget(1)).unwrap_err();
        assert!(matches!(e, Error::BudgetExhausted { .. }));
    }

    #[test]
    fn d_i_values() {
        assert_eq!(d_i(&PermGroup::cyclic(6), &lim()).unwrap().0, 1);
        assert_eq!(d_i(&PermGroup::alternating(5), &lim()).unwrap().0, 2);
        assert_eq!(d_i(&PermGroup::symmetric(3), &lim()).unwrap().0, 2);
        let klein = PermGroup::direct_product(&[PermGroup::cyclic(2), PermGroup::cyclic(2)]);
        assert_eq!(d_i(&klein, &lim()).unwrap().0, 2);
    }

    #[test]
    fn coprime_sets() {
        let orders = |g: &PermGroup| {
            let mut o = find_pcig_set(g, &lim()).unwrap().unwrap().orders();
            o.sort();
            o
        };
        assert_eq!(orders(&PermGroup::alternating(5)), vec![2, 3, 5]);
        assert_eq!(orders(&PermGroup::alternating(6)), vec![3, 4, 5]);
        let klein = PermGroup::direct_product(&[PermGroup::cyclic(2), PermGroup::cyclic(2)]);
        assert!(find_cig_set(&klein, &lim()).unwrap().is_none());
        assert!(is_pcig(&PermGroup::symmetric(4), &lim()).unwrap());
        assert!(is_cig(&PermGroup::cyclic(12), &lim()).unwrap());
    }

    #[test]
    fn refinement() {
        let g = perm("(1,2,3)(4,5,6,7)", 7);
        let parts = coprime_refinement(&[g.clone()]).unwrap();
        assert_eq!(parts, vec![g.pow(9), g.pow(4)]);
        assert_eq!(parts[0].order(), 4);
        assert_eq!(parts[1].order(), 3);
        let c = perm("(1,2,3,4,5)", 7);
        assert_eq!(coprime_refinement(&[c.clone()]).unwrap(), vec![c.clone()]);
        assert!(coprime_refinement(&[perm("()", 7)]).unwrap().is_empty());
        assert!(coprime_refinement(&[g.clone(), perm("(1,2)", 7)]).is_err());
        let c6 = PermGroup::cyclic(6);
        assert!(check_cig_refinement(&c6, &[c6.generators()[0].clone()], &lim()).unwrap());
        assert!(check_cig_refinement(&PermGroup::alternating(5), &[], &lim()).is_err());
    }

    #[test]
    fn multisets() {
        let mut pick = vec![0, 0];
        let mut count = 1;
        while next_multiset(&mut pick, 3) {
            count += 1;
        }
        assert_eq!(count, 6);
    }
}
