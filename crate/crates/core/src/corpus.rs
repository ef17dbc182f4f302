//! Named test groups and lifting modules used by the acceptance suite.

use crate::constructions::{build, parse_spec};
use crate::criteria::CrownDatum;
use crate::error::Result;
use crate::gf::GfMatrix;
use crate::limits::Limits;
use crate::modrep::{deleted_perm_module, HModule};
use crate::perm::{PermGroup, Permutation};

#[derive(Clone, Debug)]
pub struct CorpusGroup {
    pub name: &'static str,
    pub spec: &'static str,
    /// `(δ, r)` for each crown, derived by hand from a chief series.
    pub crowns: Option<&'static [(u64, u64)]>,
}

impl CorpusGroup {
    pub fn build(&self, limits: &Limits) -> Result<PermGroup> {
        let spec = parse_spec(self.spec)?;
        build(&spec, limits)?.perm_group(limits)
    }

    pub fn crown_data(&self) -> Option<Vec<CrownDatum>> {
        self.crowns.map(|cs| {
            cs.iter()
                .map(|&(d, r)| CrownDatum::new(d, r).expect("positive crown data"))
                .collect()
        })
    }
}

const fn entry(name: &'static str, spec: &'static str) -> CorpusGroup {
    CorpusGroup {
        name,
        spec,
        crowns: None,
    }
}

const fn crowned(name: &'static str, spec: &'static str, crowns: &'static [(u64, u64)]) -> CorpusGroup {
    CorpusGroup {
        name,
        spec,
        crowns: Some(crowns),
    }
}

const Q8: &str = "perm(8; (1,2,3,4)(5,6,7,8), (1,5,3,7)(2,8,4,6))";

pub fn corpus() -> Vec<CorpusGroup> {
    vec![
        crowned("C2", "cyclic(2)", &[(1, 1)]),
        entry("C3", "cyclic(3)"),
        crowned("C4", "cyclic(4)", &[(1, 1)]),
        crowned("C6", "cyclic(6)", &[(1, 1), (1, 1)]),
        entry("C8", "cyclic(8)"),
        entry("C9", "cyclic(9)"),
        crowned("C12", "cyclic(12)", &[(1, 1), (1, 1)]),
        entry("C30", "cyclic(30)"),
        crowned("C2xC2", "product(cyclic(2), cyclic(2))", &[(2, 1)]),
        entry("C2xC4", "product(cyclic(2), cyclic(4))"),
        crowned("C3xC3", "product(cyclic(3), cyclic(3))", &[(2, 1)]),
        entry("C2^3", "power(cyclic(2), 3)"),
        entry("C4xC4", "product(cyclic(4), cyclic(4))"),
        entry("C2xC6", "product(cyclic(2), cyclic(6))"),
        entry("C5xC5", "product(cyclic(5), cyclic(5))"),
        crowned("D8", "dihedral(4)", &[(2, 1)]),
        crowned("Q8", Q8, &[(2, 1)]),
        entry("D16", "dihedral(8)"),
        entry("D8xC2", "product(dihedral(4), cyclic(2))"),
        entry("Q8xC3", "product(perm(8; (1,2,3,4)(5,6,7,8), (1,5,3,7)(2,8,4,6)), cyclic(3))"),
        entry("P3(2)", "wreath_p(2, 3)"),
        entry("P2(3)", "wreath_p(3, 2)"),
        crowned("S3", "sym(3)", &[(1, 1), (1, 1)]),
        crowned("A4", "alt(4)", &[(1, 1), (1, 1)]),
        crowned("S4", "sym(4)", &[(1, 2), (1, 1), (1, 1)]),
        entry("D10", "dihedral(5)"),
        crowned("D12", "dihedral(6)", &[(1, 1), (2, 1)]),
        crowned("S3xS3", "product(sym(3), sym(3))", &[(1, 1), (1, 1), (2, 1)]),
        crowned("intro", "intro()", &[(1, 1), (1, 1), (1, 1)]),
        entry("klein_d12", "klein_d12()"),
        entry("cor12(2)", "cor12(2)"),
        entry("cor12(3)", "cor12(3)"),
        crowned("V:Sym(3)", "gl22(1)", &[(1, 2), (1, 1), (1, 1)]),
        crowned("V^2:Sym(3)", "gl22(2)", &[(2, 2), (1, 1), (1, 1)]),
        entry("A5", "alt(5)"),
        entry("S5", "sym(5)"),
    ]
}

/// A module for lifting checks, with the sufficient condition for
/// `H^1(H, V) = 0` that applies to it.
#[derive(Clone, Debug)]
pub struct CorpusModule {
    pub name: &'static str,
    pub module: HModule,
    pub h1: &'static str,
}

fn perm(s: &str, n: usize) -> Permutation {
    Permutation::parse(s, Some(n)).expect("valid cycle")
}

fn matrix(p: u32, rows: &[&[u32]]) -> GfMatrix {
    let rows: Vec<Vec<u32>> = rows.iter().map(|r| r.to_vec()).collect();
    GfMatrix::from_rows(p, &rows).expect("square rows")
}

pub fn lift_modules() -> Vec<CorpusModule> {
    let c3_f4 = HModule::new(2, 2, 3, vec![(perm("(1,2,3)", 3), matrix(2, &[&[0, 1], &[1, 1]]))])
        .expect("order-3 matrix");
    let c2_sign = HModule::new(3, 1, 2, vec![(perm("(1,2)", 2), matrix(3, &[&[2]]))]).expect("sign");
    let c5_f16 = HModule::new(
        2,
        4,
        5,
        vec![(
            perm("(1,2,3,4,5)", 5),
            matrix(2, &[&[0, 1, 0, 0], &[0, 0, 1, 0], &[0, 0, 0, 1], &[1, 1, 1, 1]]),
        )],
    )
    .expect("order-5 matrix");
    vec![
        CorpusModule {
            name: "Sym(3) on F_2^2",
            module: deleted_perm_module(3, 2).expect("valid parameters"),
            h1: "soluble_faithful_irreducible",
        },
        CorpusModule {
            name: "C3 on F_4",
            module: c3_f4,
            h1: "coprime_order",
        },
        CorpusModule {
            name: "C2 on F_3 by -1",
            module: c2_sign,
            h1: "coprime_order",
        },
        CorpusModule {
            name: "C5 on F_16",
            module: c5_f16,
            h1: "coprime_order",
        },
        CorpusModule {
            name: "C3 on F_2 trivially",
            module: HModule::trivial(2, PermGroup::cyclic(3)).expect("trivial module"),
            h1: "coprime_order",
        },
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corpus_builds() {
        let lim = Limits::default();
        for c in corpus() {
            let g = c.build(&lim).unwrap_or_else(|e| panic!("{}: {e}", c.name));
            assert!(!g.is_trivial(), "{}", c.name);
        }
    }

    #[test]
    fn quaternion() {
        let lim = Limits::default();
        let q = corpus().into_iter().find(|c| c.name == "Q8").unwrap().build(&lim).unwrap();
        assert_eq!(q.order_u64(), Some(8));
        assert!(!q.is_abelian());
        let involutions = q.elements(8).unwrap().iter().filter(|g| g.order() == 2).count();
        assert_eq!(involutions, 1);
    }

    #[test]
    fn modules_are_irreducible_or_trivial() {
        let lim = Limits::default();
        for m in lift_modules() {
            assert!(m.module.is_irreducible(&lim).unwrap(), "{}", m.name);
            assert!(m.module.h1_vanishing(&lim).is_some(), "{}", m.name);
        }
        let e: Vec<usize> = lift_modules().iter().map(|m| m.module.commutant().e()).collect();
        assert_eq!(e, vec![1, 2, 1, 4, 1]);
    }
}
