//! Brute-force references for cross-checking the structural algorithms.
//! Nothing here uses stabilizer chains or the pruned search.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::lattice::ElementTable;
use crate::limits::Limits;
use crate::perm::{PermGroup, Permutation};
use crate::semidirect::{SdElement, SdGroup};

/// Size of the group generated by `gens`, by closing the element set.
pub fn closure_size(gens: &[Permutation], degree: usize) -> usize {
    let id = Permutation::identity(degree);
    let mut seen: HashSet<Permutation> = HashSet::from([id.clone()]);
    let mut stack = vec![id];
    while let Some(x) = stack.pop() {
        for g in gens {
            let y = x.compose(g);
            if seen.insert(y.clone()) {
                stack.push(y);
            }
        }
    }
    seen.len()
}

/// Every tuple of conjugates `(g_1^{x_1}, ..., g_d^{x_d})` is checked by
/// closure in the multiplication table.
pub fn brute_invariably_generates(g: &PermGroup, tuple: &[Permutation], limits: &Limits) -> Result<bool> {
    let table = ElementTable::new(g, limits.enumeration_cap)?;
    brute_invariably_generates_in(&table, tuple, limits)
}

/// [`brute_invariably_generates`] with a prebuilt table.
pub fn brute_invariably_generates_in(table: &ElementTable, tuple: &[Permutation], limits: &Limits) -> Result<bool> {
    let n = table.len();
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for x in tuple {
        let a = table.index_of(x).ok_or(Error::NotMember)?;
        let mut c: Vec<usize> = (0..n).map(|g| table.conj(a, g)).collect();
        c.sort_unstable();
        c.dedup();
        classes.push(c);
    }
    let total: u128 = classes.iter().map(|c| c.len() as u128).product();
    if total > limits.enumeration_cap as u128 {
        return Err(Error::cap("conjugate tuples", total, limits.enumeration_cap));
    }
    let mut pos = vec![0usize; classes.len()];
    loop {
        let gens: Vec<usize> = pos.iter().zip(&classes).map(|(&k, c)| c[k]).collect();
        if table.closure(&gens).count() != n {
            return Ok(false);
        }
        let Some(k) = (0..pos.len()).rev().find(|&k| pos[k] + 1 < classes[k].len()) else {
            return Ok(true);
        };
        pos[k] += 1;
        pos[k + 1..].iter_mut().for_each(|x| *x = 0);
    }
}

/// Smallest `d` with some `d`-tuple of class representatives passing
/// [`brute_invariably_generates_in`], trying every multiset of classes.
pub fn brute_d_i(g: &PermGroup, max_d: usize, limits: &Limits) -> Result<Option<usize>> {
    if g.is_trivial() {
        return Ok(Some(0));
    }
    let table = ElementTable::new(g, limits.enumeration_cap)?;
    let reps: Vec<Permutation> = g
        .conjugacy_classes(limits.enumeration_cap)?
        .into_iter()
        .map(|c| c.representative)
        .filter(|r| !r.is_identity())
        .collect();
    for d in 1..=max_d {
        let mut idx = vec![0usize; d];
        loop {
            let tuple: Vec<Permutation> = idx.iter().map(|&i| reps[i].clone()).collect();
            if brute_invariably_generates_in(&table, &tuple, limits)? {
                return Ok(Some(d));
            }
            let Some(pos) = (0..d).rev().find(|&k| idx[k] + 1 < reps.len()) else {
                break;
            };
            let v = idx[pos] + 1;
            idx[pos..].iter_mut().for_each(|x| *x = v);
        }
    }
    Ok(None)
}

/// Generation in `V^u ⋊ H`, by closing the affine images.
pub fn sd_generates(g: &SdGroup, elements: &[SdElement], limits: &Limits) -> Result<bool> {
    let degree = g.affine_degree(limits)?;
    let images = elements
        .iter()
        .map(|x| g.affine_image(x, limits))
        .collect::<Result<Vec<_>>>()?;
    Ok(num_bigint::BigUint::from(closure_size(&images, degree)) == g.order())
}

/// Invariable generation in `V^u ⋊ H` over all conjugate tuples.
pub fn sd_invariably_generates(g: &SdGroup, elements: &[SdElement], limits: &Limits) -> Result<bool> {
    let affine = g.to_affine_perm(limits)?;
    let images = elements
        .iter()
        .map(|x| g.affine_image(x, limits))
        .collect::<Result<Vec<_>>>()?;
    brute_invariably_generates(&affine, &images, limits)
}
