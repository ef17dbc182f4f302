//! Builders for the concrete groups, modules and tuples used throughout.

mod spec;

pub use spec::{build, parse_spec, Built, GroupSpec, SpecArg};


use crate::error::{Error, Result};
use crate::gf::is_prime;
use crate::limits::Limits;
use crate::modrep::{deleted_perm_module, HModule};
use crate::perm::{PermGroup, Permutation};
use crate::semidirect::SdGroup;

/// The Sylow `p`-subgroup `P_m` of `Sym(p^m)` with its distinguished
/// generators `y_1, ..., y_m`.
#[derive(Clone, Debug)]
pub struct IteratedWreath {
    pub p: u32,
    pub m: u32,
    pub group: PermGroup,
    pub y: Vec<Permutation>,
}

/// Digits of a point in base `p`, least significant first.
fn digits(mut x: usize, p: usize, m: usize) -> Vec<usize> {
    (0..m)
        .map(|_| {
            let d = x % p;
            x /= p;
            d
        })
        .collect()
}

fn undigits(d: &[usize], p: usize) -> usize {
    d.iter().rev().fold(0, |acc, &x| acc * p + x)
}

/// Points are `0..p^m` read as digit strings `d_0 ... d_{m-1}`. The
/// generator `y_i` adds one to digit `d_{m-i}` on the points whose higher
/// digits are all zero, so `y_1` permutes the top blocks and `y_m` is a
/// `p`-cycle inside the first block of size `p`.
pub fn iterated_wreath(p: u32, m: u32, limits: &Limits) -> Result<IteratedWreath> {
    if !is_prime(p as u64) {
        return Err(Error::InvalidArgument(format!("{p} is not prime")));
    }
    if m == 0 {
        return Err(Error::InvalidArgument("depth must be at least 1".into()));
    }
    let degree = (p as u64)
        .checked_pow(m)
        .filter(|&d| d <= limits.degree_cap)
        .ok_or_else(|| Error::cap("wreath degree", format!("{p}^{m}"), limits.degree_cap))?
        as usize;
    let (pu, mu) = (p as usize, m as usize);
    let y: Vec<Permutation> = (1..=mu)
        .map(|i| {
            let pos = mu - i;
            let images = (0..degree)
                .map(|x| {
                    let mut d = digits(x, pu, mu);
                    if d[pos + 1..].iter().all(|&c| c == 0) {
                        d[pos] = (d[pos] + 1) % pu;
                    }
                    undigits(&d, pu) as u32
                })
                .collect();
            Permutation::from_images(images)
        })
        .collect::<Result<_>>()?;
    let group = PermGroup::new(degree, y.clone())?;
    Ok(IteratedWreath { p, m, group, y })
}

/// The element scaling digit `d_{m-i}` by `betas[i-1]`, so that
/// `y_i^h = y_i^{beta_i}` for each `i`.
pub fn scalar_action(p: u32, m: u32, betas: &[u32], distinct: bool, limits: &Limits) -> Result<Permutation> {
    if betas.len() != m as usize {
        return Err(Error::InvalidArgument(format!("expected {m} scalars, got {}", betas.len())));
    }
    if m > p.saturating_sub(1) && distinct {
        return Err(Error::InvalidArgument("need m <= p - 1 for distinct scalars".into()));
    }
    let reduced: Vec<usize> = betas.iter().map(|&b| (b % p) as usize).collect();
    if reduced.contains(&0) {
        return Err(Error::InvalidArgument("scalars must be nonzero mod p".into()));
    }
    if distinct && (1..reduced.len()).any(|i| reduced[..i].contains(&reduced[i])) {
        return Err(Error::InvalidArgument("scalars must be pairwise distinct".into()));
    }
    let w = iterated_wreath(p, m, limits)?;
    let (pu, mu) = (p as usize, m as usize);
    let degree = w.group.degree();
    let images = (0..degree)
        .map(|x| {
            let mut d = digits(x, pu, mu);
            for (i, b) in reduced.iter().enumerate() {
                let pos = mu - 1 - i;
                d[pos] = d[pos] * b % pu;
            }
            undigits(&d, pu) as u32
        })
        .collect();
    let h = Permutation::from_images(images)?;
    for (i, y) in w.y.iter().enumerate() {
        if y.conjugate_by(&h) != y.pow(reduced[i] as i64) {
            return Err(Error::Precondition("scalar action check failed".into()));
        }
    }
    Ok(h)
}

/// `P_{p-1} ⋊ <h>` with `h` inducing the distinct scalars `1, ..., p-1`.
pub fn cor12_group(p: u32, limits: &Limits) -> Result<PermGroup> {
    if !is_prime(p as u64) {
        return Err(Error::InvalidArgument(format!("{p} is not prime")));
    }
    if p > 3 {
        // order (p-1) p^{(p^{p-1}-1)/(p-1)}: already 4 * 5^156 for p = 5
        return Err(Error::cap("cor12 prime", p, 3));
    }
    let m = p - 1;
    let betas: Vec<u32> = (1..=m).collect();
    let w = iterated_wreath(p, m, limits)?;
    let h = scalar_action(p, m, &betas, true, limits)?;
    w.group.extended(&h)
}

/// `(C3 x C3) ⋊ C2`, the involution centralizing the first factor and
/// inverting the second.
pub fn intro_group() -> PermGroup {
    let gens = ["(1,2,3)", "(4,5,6)", "(5,6)"]
        .iter()
        .map(|s| Permutation::parse(s, Some(6)).unwrap())
        .collect();
    PermGroup::new(6, gens).unwrap()
}

/// `(C2 x C2) ⋊ D12`, with the dihedral group `K` of order 12 acting
/// through `K / Z(K) ≅ GL(2,2)`. Points 1..6 carry the hexagon action of
/// `K`, points 7..10 the affine action on `F_2^2` (in the order
/// `0, e1, e2, e1+e2`).
pub fn klein_d12() -> PermGroup {
    let gens = [
        "(1,2,3,4,5,6)(8,9,10)",
        "(2,6)(3,5)(8,9)",
        "(7,8)(9,10)",
    ]
    .iter()
    .map(|s| Permutation::parse(s, Some(10)).unwrap())
    .collect();
    PermGroup::new(10, gens).unwrap()
}

/// `V^u ⋊ Sym(3)` with `V` the natural module of `GL(2,2) ≅ Sym(3)`.
pub fn gl22(u: usize) -> Result<SdGroup> {
    SdGroup::new(deleted_perm_module(3, 2)?, u)
}

/// The `Sym(7)` module of dimension 5 over `F_7`.
pub fn s7_module() -> HModule {
    deleted_perm_module(7, 7).expect("valid parameters")
}

/// `σ = (1,2,3,4,5)`, `ρ = (1,2,3)`, `τ = (1,2)(3,4)` in `Alt(5)`.
pub fn alt5_elements() -> (Permutation, Permutation, Permutation) {
    let p = |s: &str| Permutation::parse(s, Some(5)).unwrap();
    (p("(1,2,3,4,5)"), p("(1,2,3)"), p("(1,2)(3,4)"))
}

/// The columns `(σ,σ)`, `(ρ,ρ)`, `(τ,1)` of `Alt(5)^2`, in the direct
/// product on 10 points.
pub fn alt5_power_tuples() -> Vec<Permutation> {
    let (s, r, t) = alt5_elements();
    let id = Permutation::identity(5);
    vec![pair(&s, &s), pair(&r, &r), pair(&t, &id)]
}

/// `(a, b)` in a direct product of two groups of the same degree.
pub fn pair(a: &Permutation, b: &Permutation) -> Permutation {
    tuple_element(&[a.clone(), b.clone()])
}

/// `(a_1, ..., a_t)` acting on disjoint consecutive blocks.
pub fn tuple_element(parts: &[Permutation]) -> Permutation {
    let degree: usize = parts.iter().map(Permutation::degree).sum();
    let mut images = Vec::with_capacity(degree);
    let mut offset = 0;
    for a in parts {
        images.extend(a.images().iter().map(|&i| i + offset as u32));
        offset += a.degree();
    }
    Permutation::from_images(images).expect("block permutation")
}

/// `G^t` acting on `t` disjoint copies of the points of `G`.
pub fn power(g: &PermGroup, t: usize) -> Result<PermGroup> {
    if t == 0 {
        return Err(Error::InvalidArgument("power must be at least 1".into()));
    }
    Ok(PermGroup::direct_product(&vec![g.clone(); t]))
}

/// The invariable generating tuple of `Alt(n)` with pairwise coprime
/// prime-power orders: a `p`-cycle for a prime `n/2 < p < n-2` together
/// with, for each prime power `q^a` exactly dividing `n`, a product of
/// `n/q^a` disjoint `q^a`-cycles (`2^{a-1}`-cycles when `q = 2`). For
/// `n = 5, 6` the special sets of orders `{5,3,2}` and `{5,3,4}`.
pub fn alt_invgen_tuple(n: usize) -> Result<Vec<Permutation>> {
    let parse = |s: &str| Permutation::parse(s, Some(n));
    match n {
        5 => return ["(1,2,3,4,5)", "(1,2,3)", "(1,2)(3,4)"].iter().map(|s| parse(s)).collect(),
        6 => return ["(1,2,3,4,5)", "(1,2,3)", "(1,2,3,4)(5,6)"].iter().map(|s| parse(s)).collect(),
        _ => {}
    }
    if !(7..=64).contains(&n) {
        return Err(Error::InvalidArgument(format!("degree {n} outside 5..=64")));
    }
    let p = (n / 2 + 1..n.saturating_sub(2))
        .find(|&q| 2 * q > n && is_prime(q as u64))
        .ok_or_else(|| Error::Precondition(format!("no prime strictly between {n}/2 and {}", n - 2)))?;
    let mut out = vec![Permutation::from_cycles(n, &[(1..=p).collect()])?];
    let mut m = n;
    let mut q = 2;
    while m > 1 {
        if m % q == 0 {
            let mut qa = 1;
            while m % q == 0 {
                m /= q;
                qa *= q;
            }
            let len = if q == 2 { qa / 2 } else { qa };
            let cycles: Vec<Vec<usize>> = if len > 1 {
                (0..n / len).map(|k| (k * len + 1..=(k + 1) * len).collect()).collect()
            } else {
                Vec::new()
            };
            out.push(Permutation::from_cycles(n, &cycles)?);
        }
        q += 1;
    }
    debug_assert!(out.iter().all(Permutation::is_even));
    Ok(out)
}

/// Orders `p^{(p^m - 1)/(p - 1)}` of `P_m`, as a check on builders.
pub fn wreath_order_exponent(p: u64, m: u32) -> u64 {
    (p.pow(m) - 1) / (p - 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::invgen::invariably_generates;
    use crate::lattice;
    use num_bigint::BigUint;

    fn lim() -> Limits {
        Limits::default()
    }

    #[test]
    fn wreath_orders() {
        let w = iterated_wreath(3, 1, &lim()).unwrap();
        assert_eq!((w.group.degree(), w.group.order_u64()), (3, Some(3)));
        let w = iterated_wreath(3, 2, &lim()).unwrap();
        assert_eq!(w.group.order_u64(), Some(81));
        assert_eq!(w.group.exponent(1000).unwrap(), 9);
        let w = iterated_wreath(2, 3, &lim()).unwrap();
        assert_eq!((w.group.degree(), w.group.order_u64()), (8, Some(128)));
        for (p, m) in [(2u32, 2u32), (2, 4), (3, 3), (5, 2)] {
            let w = iterated_wreath(p, m, &lim()).unwrap();
            let expected = BigUint::from(p).pow(wreath_order_exponent(p as u64, m) as u32);
            assert_eq!(w.group.order(), &expected);
        }
    }

    #[test]
    fn scalar_actions() {
        let h = scalar_action(3, 2, &[1, 2], true, &lim()).unwrap();
        assert_eq!(h.order(), 2);
        let w = iterated_wreath(3, 2, &lim()).unwrap();
        assert_eq!(w.y[0].conjugate_by(&h), w.y[0]);
        assert_eq!(w.y[1].conjugate_by(&h), w.y[1].inverse());
        for y in w.group.generators() {
            assert!(w.group.contains(&y.conjugate_by(&h)).unwrap());
        }
        assert!(scalar_action(3, 2, &[1, 1], false, &lim()).unwrap().is_identity());
        assert!(scalar_action(3, 2, &[2, 2], true, &lim()).is_err());
        assert!(scalar_action(3, 2, &[0, 1], false, &lim()).is_err());
    }

    #[test]
    fn cor12() {
        let g = cor12_group(3, &lim()).unwrap();
        assert_eq!(g.order_u64(), Some(162));
        assert_eq!(g.exponent(1000).unwrap(), 18);
        assert!(matches!(cor12_group(5, &lim()), Err(Error::CapExceeded { .. })));
    }

    #[test]
    fn named_groups() {
        let g = intro_group();
        assert_eq!(g.order_u64(), Some(18));
        let k = klein_d12();
        assert_eq!(k.order_u64(), Some(48));
        assert_eq!(k.exponent(1000).unwrap(), 12);
        assert!(!lattice::is_minimal_exponent(&k, &lim()).unwrap());
        assert_eq!(gl22(2).unwrap().order(), BigUint::from(96u32));
        let t = alt5_power_tuples();
        assert_eq!(t.len(), 3);
        assert_eq!(t[2].images()[5..], [5u32, 6, 7, 8, 9]);
    }

    #[test]
    fn klein_d12_splits_off_its_centre() {
        // D12 = Sym(3) x Z(D12), and Z(D12) acts trivially on the Klein
        // group, so the whole group is Sym(4) x C2 with trivial Frattini
        // subgroup.
        let g = klein_d12();
        let k = PermGroup::new(10, g.generators()[..2].to_vec()).unwrap();
        assert_eq!(k.order_u64(), Some(12));
        assert!(!k.is_abelian());
        let els = g.elements(100).unwrap();
        let centre: Vec<&Permutation> = els
            .iter()
            .filter(|x| g.generators().iter().all(|y| x.compose(y) == y.compose(x)))
            .collect();
        assert_eq!(centre.len(), 2);
        let z = centre[1];
        assert!(k.contains(z).unwrap());
        assert!(lattice::frattini(&g, &lim()).unwrap().is_trivial());
        let lat = lattice::all_subgroups(&g, &lim()).unwrap();
        let s4 = lattice::fingerprint(&PermGroup::symmetric(4), &lim()).unwrap();
        let complement = lat
            .subgroups()
            .into_iter()
            .find(|s| s.order_u64() == Some(24) && !s.contains(z).unwrap())
            .unwrap();
        assert_eq!(lattice::fingerprint(&complement, &lim()).unwrap(), s4);
        assert!(lattice::is_minimal_exponent(&complement, &lim()).unwrap());
    }

    #[test]
    fn alternating_tuples() {
        let orders = |n| {
            let mut o: Vec<u64> = alt_invgen_tuple(n).unwrap().iter().map(Permutation::order).collect();
            o.sort();
            o
        };
        assert_eq!(orders(5), vec![2, 3, 5]);
        assert_eq!(orders(6), vec![3, 4, 5]);
        assert_eq!(orders(8), vec![4, 5]);
        assert!(alt_invgen_tuple(7).is_err());
        for n in [5, 6, 8, 9] {
            let t = alt_invgen_tuple(n).unwrap();
            let g = PermGroup::alternating(n);
            assert!(invariably_generates(&g, &t, &lim()).unwrap().generates, "n = {n}");
        }
    }
}
