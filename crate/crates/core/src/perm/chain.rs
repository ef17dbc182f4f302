//! Deterministic Schreier–Sims.
//!
//! Each level stores a base point, the generators of the level's group and
//! a transversal `u_b` (with `base^u_b = b`) for every point `b` of the
//! base orbit. Level `i + 1` is the point stabilizer of level `i`; this is
//! maintained by sifting every Schreier generator `u_b s u_{b^s}^-1` into
//! the deeper levels whenever a level grows.

use num_bigint::BigUint;
use rand::Rng;

use super::Permutation;

#[derive(Clone, Debug)]
struct Level {
    base: usize,
    gens: Vec<Permutation>,
    orbit: Vec<usize>,
    /// `(u_b, u_b^-1)` indexed by point.
    transversal: Vec<Option<(Permutation, Permutation)>>,
}

impl Level {
    fn new(base: usize, degree: usize) -> Self {
        let mut transversal = vec![None; degree];
        let id = Permutation::identity(degree);
        transversal[base] = Some((id.clone(), id));
        Level {
            base,
            gens: Vec::new(),
            orbit: vec![base],
            transversal,
        }
    }

    fn rep(&self, point: usize) -> &(Permutation, Permutation) {
        self.transversal[point]
            .as_ref()
            .expect("point outside base orbit")
    }
}

#[derive(Clone, Debug)]
pub struct StabChain {
    degree: usize,
    levels: Vec<Level>,
}

impl StabChain {
    pub fn new(degree: usize, gens: &[Permutation]) -> Self {
        let mut chain = StabChain {
            degree,
            levels: Vec::new(),
        };
        for g in gens {
            chain.insert(g);
        }
        chain
    }

    /// Adds an element to the group, returning whether the group grew.
    pub fn insert(&mut self, g: &Permutation) -> bool {
        let (residue, _) = self.sift(g, 0);
        if residue.is_identity() {
            return false;
        }
        // The top level must contain every element, so the new element
        // enters there even when its residue fails deeper down.
        self.add_gen(0, g.clone());
        true
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.base).collect()
    }

    pub fn strong_generators(&self) -> Vec<Permutation> {
        let mut out: Vec<Permutation> = Vec::new();
        for l in &self.levels {
            for g in &l.gens {
                if !out.contains(g) {
                    out.push(g.clone());
                }
            }
        }
        out
    }

    pub fn order(&self) -> BigUint {
        self.levels
            .iter()
            .fold(BigUint::from(1u32), |acc, l| acc * BigUint::from(l.orbit.len()))
    }

    /// Strips `g` through the levels starting at `start`. Returns the
    /// residue and the first level where stripping failed (or the chain
    /// length when it ran through).
    fn sift(&self, g: &Permutation, start: usize) -> (Permutation, usize) {
        let mut h = g.clone();
        for (i, level) in self.levels.iter().enumerate().skip(start) {
            let b = h.image(level.base);
            match &level.transversal[b] {
                None => return (h, i),
                Some((_, u_inv)) => h = h.compose(u_inv),
            }
        }
        (h, self.levels.len())
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        self.sift(g, 0).0.is_identity()
    }

    fn add_gen(&mut self, i: usize, g: Permutation) {
        if i == self.levels.len() {
            let base = g
                .first_moved_point()
                .expect("identity never reaches add_gen");
            self.levels.push(Level::new(base, self.degree));
        }
        let new_gen = self.levels[i].gens.len();
        self.levels[i].gens.push(g);
        let old_len = self.levels[i].orbit.len();

        // Extend the orbit: old points only need the new generator.
        {
            let level = &mut self.levels[i];
            let mut idx = 0;
            while idx < level.orbit.len() {
                let b = level.orbit[idx];
                let first = if idx < old_len { new_gen } else { 0 };
                for k in first..level.gens.len() {
                    let c = level.gens[k].image(b);
                    if level.transversal[c].is_none() {
                        let u = level.rep(b).0.compose(&level.gens[k]);
                        let u_inv = u.inverse();
                        level.transversal[c] = Some((u, u_inv));
                        level.orbit.push(c);
                    }
                }
                idx += 1;
            }
        }

        // Schreier generators not tested before: (new point, any gen) and
        // (old point, new gen).
        let level = &self.levels[i];
        let mut pairs = Vec::new();
        for (idx, &b) in level.orbit.iter().enumerate() {
            let first = if idx < old_len { new_gen } else { 0 };
            for k in first..level.gens.len() {
                pairs.push((b, k));
            }
        }
        for (b, k) in pairs {
            let schreier = {
                let level = &self.levels[i];
                let s = &level.gens[k];
                let c = s.image(b);
                level.rep(b).0.compose(s).compose(&level.rep(c).1)
            };
            if schreier.is_identity() {
                continue;
            }
            let (residue, _) = self.sift(&schreier, i + 1);
            if !residue.is_identity() {
                self.add_gen(i + 1, residue);
            }
        }
    }

    /// Calls `f` on every element, each exactly once, in a fixed order.
    pub fn for_each_element(&self, mut f: impl FnMut(&Permutation)) {
        fn rec(
            levels: &[Level],
            depth: usize,
            acc: &Permutation,
            f: &mut dyn FnMut(&Permutation),
        ) {
            if depth == 0 {
                f(acc);
                return;
            }
            let level = &levels[depth - 1];
            for &b in &level.orbit {
                let next = acc.compose(&level.rep(b).0);
                rec(levels, depth - 1, &next, f);
            }
        }
        let id = Permutation::identity(self.degree);
        rec(&self.levels, self.levels.len(), &id, &mut f);
    }

    /// Uniformly random element.
    pub fn random_element<R: Rng + ?Sized>(&self, rng: &mut R) -> Permutation {
        let mut acc = Permutation::identity(self.degree);
        for level in self.levels.iter().rev() {
            let b = level.orbit[rng.gen_range(0..level.orbit.len())];
            acc = acc.compose(&level.rep(b).0);
        }
        acc
    }

    /// Orbit of the first base point, for diagnostics.
    pub fn base_orbit_lengths(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.orbit.len()).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    fn p(s: &str, n: usize) -> Permutation {
        Permutation::parse(s, Some(n)).unwrap()
    }

    fn closure_size(gens: &[Permutation], n: usize) -> usize {
        let mut seen = HashSet::new();
        let id = Permutation::identity(n);
        let mut stack = vec![id.clone()];
        seen.insert(id);
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

    #[test]
    fn orders_match_closure() {
        let cases = vec![
            (vec![p("(1,2,3,4,5)", 5), p("(1,2,3)", 5)], 5),
            (vec![p("(1,2)", 6), p("(1,2,3,4,5,6)", 6)], 6),
            (vec![p("(1,2)(3,4)", 4), p("(1,3)(2,4)", 4)], 4),
            (vec![p("(1,2,3)(4,5)", 7), p("(2,6,7)", 7)], 7),
        ];
        for (gens, n) in cases {
            let chain = StabChain::new(n, &gens);
            assert_eq!(chain.order(), BigUint::from(closure_size(&gens, n)));
        }
    }

    #[test]
    fn membership_and_enumeration() {
        let gens = vec![p("(1,2,3,4,5)", 5), p("(1,2,3)", 5)];
        let chain = StabChain::new(5, &gens);
        assert!(chain.contains(&p("(1,2,3)", 5)));
        assert!(!chain.contains(&p("(1,2)", 5)));
        let mut all = HashSet::new();
        chain.for_each_element(|g| {
            assert!(g.is_even());
            all.insert(g.clone());
        });
        assert_eq!(all.len(), 60);
    }

    #[test]
    fn insert_reports_growth() {
        let mut chain = StabChain::new(4, &[]);
        assert_eq!(chain.order(), BigUint::from(1u32));
        assert!(chain.insert(&p("(1,2)", 4)));
        assert!(!chain.insert(&p("(1,2)", 4)));
        assert!(chain.insert(&p("(1,2,3,4)", 4)));
        assert_eq!(chain.order(), BigUint::from(24u32));
    }
}
