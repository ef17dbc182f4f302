use std::sync::OnceLock;

use cig_core::criteria::{self, LiftProblem};
use cig_core::gf::{self, GfMatrix, GfSubspace};
use cig_core::modrep::{self, HModule};
use cig_core::{invgen, Limits, PermGroup, Permutation};
use proptest::prelude::*;

fn limits() -> Limits {
    Limits::default()
}

fn matrix(p: u32, rows: usize, cols: usize) -> impl Strategy<Value = GfMatrix> {
    prop::collection::vec(prop::collection::vec(0..p, cols), rows)
        .prop_map(move |r| GfMatrix::from_rows(p, &r).unwrap())
}

/// A matrix over one of the small primes, biased towards low rank.
fn any_matrix() -> impl Strategy<Value = GfMatrix> {
    (prop::sample::select(vec![2u32, 3, 5, 7]), 1..=12usize, 1..=12usize, 1..=12usize)
        .prop_flat_map(|(p, r, k, c)| (matrix(p, r, k), matrix(p, k, c)))
        .prop_map(|(a, b)| a.mul(&b))
}

fn alt5() -> &'static (PermGroup, PermGroup, Vec<Permutation>) {
    static G: OnceLock<(PermGroup, PermGroup, Vec<Permutation>)> = OnceLock::new();
    G.get_or_init(|| {
        let s = PermGroup::alternating(5);
        let els = s.elements(1000).unwrap();
        (s, PermGroup::symmetric(5), els)
    })
}

fn modules() -> &'static [HModule] {
    static M: OnceLock<Vec<HModule>> = OnceLock::new();
    M.get_or_init(|| {
        vec![
            modrep::deleted_perm_module(5, 5).unwrap(),
            modrep::deleted_perm_module(4, 3).unwrap(),
            modrep::deleted_perm_module(3, 2).unwrap(),
        ]
    })
}

/// Sym(3) on F_2^2 with the generating pair `(1,2,3), (1,2)`.
fn gl22() -> &'static (HModule, Vec<Permutation>) {
    static M: OnceLock<(HModule, Vec<Permutation>)> = OnceLock::new();
    M.get_or_init(|| {
        let m = modrep::deleted_perm_module(3, 2).unwrap();
        let h = vec![
            Permutation::from_cycles(3, &[vec![1, 2, 3]]).unwrap(),
            Permutation::from_cycles(3, &[vec![1, 2]]).unwrap(),
        ];
        (m, h)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn rank_nullity(m in any_matrix()) {
        let rank = gf::rank(&m);
        prop_assert_eq!(rank + gf::kernel(&m).dim(), m.nrows());
        prop_assert_eq!(gf::image(&m).dim(), rank);
        prop_assert_eq!(gf::rank(&m.transpose()), rank);
    }

    #[test]
    fn commutator_space_of_a_power_is_contained(which in 0..3usize, seed in any::<u64>(), k in -30i64..30) {
        use rand::SeedableRng;
        let m = &modules()[which];
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let h = m.group().random_element(&mut rng);
        let big = m.commutator_space(&h).unwrap();
        prop_assert!(big.contains_subspace(&m.commutator_space(&h.pow(k)).unwrap()));
        prop_assert_eq!(big.dim() + m.fixed_space(&h).unwrap().dim(), m.dim());
    }

    #[test]
    fn row_equivalence_is_an_equivalence(
        x in prop::collection::vec(0..60usize, 3),
        conj in prop::collection::vec(0..60usize, 3),
        outer in any::<bool>(),
        z in prop::collection::vec(0..60usize, 3),
    ) {
        let (s, a, els) = alt5();
        let lim = limits();
        let x: Vec<Permutation> = x.iter().map(|&i| els[i].clone()).collect();
        let z: Vec<Permutation> = z.iter().map(|&i| els[i].clone()).collect();
        let t = Permutation::from_cycles(5, &[vec![1, 2]]).unwrap();
        let y: Vec<Permutation> = x
            .iter()
            .zip(&conj)
            .map(|(e, &c)| {
                let e = e.conjugate_by(&els[c]);
                if outer { e.conjugate_by(&t) } else { e }
            })
            .collect();
        let eq = |p: &[Permutation], q: &[Permutation]| criteria::row_equivalent(p, q, s, a, &lim).unwrap();
        prop_assert!(eq(&x, &x));
        prop_assert!(eq(&x, &y));
        prop_assert_eq!(eq(&x, &z), eq(&z, &x));
        prop_assert_eq!(eq(&y, &z), eq(&x, &z));
    }

    #[test]
    fn diagonal_reduce_finds_the_first_unit_vector(
        p in prop::sample::select(vec![5u32, 7, 11, 13]),
        seed in any::<u64>(),
    ) {
        use rand::{seq::SliceRandom, Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let m = rng.gen_range(1..p as usize);
        let mut scalars: Vec<u32> = (1..p).collect();
        scalars.shuffle(&mut rng);
        let betas = &scalars[..m];
        // Spans of coordinate vectors are exactly the diag(betas)-invariant subspaces.
        let mut vecs: Vec<Vec<u32>> = Vec::new();
        for i in 0..m {
            if rng.gen_bool(0.5) {
                let mut v = vec![0; m];
                v[i] = rng.gen_range(1..p);
                vecs.push(v);
            }
        }
        let w = GfSubspace::span(p, m, vecs);
        prop_assert!(w.is_invariant(&GfMatrix::diagonal(p, betas)));
        let got = modrep::diagonal_reduce(betas, &w).unwrap();
        if w.contains(&gf::unit_vector(m, 0)) {
            prop_assert_eq!(got, Some(gf::unit_vector(m, 0)));
        } else {
            prop_assert_eq!(got, None);
        }
    }

    #[test]
    fn lifting_criterion_matches_affine_generation(
        u in 1..=2usize,
        entries in prop::collection::vec(0..2u32, 8),
    ) {
        let (m, h) = gl22();
        let lim = limits();
        let w: Vec<Vec<u32>> = entries.chunks(4).map(|c| c[..2 * u].to_vec()).collect();
        let problem = LiftProblem::new(m.clone(), u, h.clone(), w).unwrap();
        let (sd, els) = problem.elements().unwrap();
        prop_assert_eq!(criteria::crit_generates(&problem).unwrap(), sd.generates(&els, &lim).unwrap());
        let affine = sd.to_affine_perm(&lim).unwrap();
        let images: Vec<Permutation> = els.iter().map(|x| sd.affine_image(x, &lim).unwrap()).collect();
        prop_assert_eq!(
            criteria::matrici_test_asserted(&problem).unwrap(),
            invgen::invariably_generates(&affine, &images, &lim).unwrap().generates
        );
    }
}

#[test]
fn matrici_optimum_is_2d_minus_3() {
    let (m, _) = gl22();
    for d in 2..=4 {
        let (u, h) = criteria::matrici_optimum(m, d, &limits()).unwrap().unwrap();
        assert_eq!(u, 2 * d - 3);
        assert_eq!(criteria::matrici_max_u(m, &h).unwrap(), u);
    }
}

#[test]
fn frattini_shortcut_agrees_on_small_groups() {
    let lim = limits();
    for spec in ["cyclic(8)", "dihedral(4)", "gl22(1)", "gl22(2)", "cor12(2)", "alt(4)", "wreath_p(2,3)"] {
        let g = cig_core::corpus::corpus()
            .into_iter()
            .find(|c| c.spec == spec)
            .map(|c| c.build(&lim).unwrap())
            .unwrap_or_else(|| {
                let s = cig_core::constructions::parse_spec(spec).unwrap();
                cig_core::constructions::build(&s, &lim).unwrap().perm_group(&lim).unwrap()
            });
        let q = invgen::frattini_quotient(&g, &lim).unwrap();
        let direct = invgen::find_pcig_set(&g, &lim).unwrap().is_some();
        let reduced = invgen::find_pcig_set(&q, &lim).unwrap().is_some();
        assert_eq!(direct, reduced, "{spec}");
        assert_eq!(invgen::is_pcig(&g, &lim).unwrap(), direct, "{spec}");
    }
}
