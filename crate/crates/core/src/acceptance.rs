//! The acceptance suite: twelve checks, each reported as data.

use std::time::Instant;

use num_bigint::BigUint;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::constructions::{alt5_elements, cor12_group, gl22, klein_d12, power, s7_module};
use crate::corpus::{corpus, lift_modules};
use crate::criteria::{self, LiftProblem, RowSystem};
use crate::error::Result;
use crate::gf::{self, GfMatrix, GfSubspace};
use crate::invgen::{self, Coprime};
use crate::lattice::{self, ElementTable};
use crate::limits::Limits;
use crate::modrep::{self, HModule};
use crate::oracle;
use crate::perm::{PermGroup, Permutation};
use crate::semidirect::SdGroup;

#[derive(Clone, Debug, Serialize)]
pub struct Outcome {
    pub id: u32,
    pub title: &'static str,
    pub pass: bool,
    pub detail: String,
    /// Machine-readable code when the check stopped on an error.
    pub error_code: Option<&'static str>,
    pub millis: u128,
}

/// Seed of the randomized checks when none is given.
pub const DEFAULT_SEED: u64 = 12;

pub const TITLES: [&str; 12] = [
    "Sym(7) invariable pair",
    "Sym(7) module: PCIG bound versus CIG witness",
    "GL(2,2) family",
    "Alt(5) powers",
    "order-162 minimal-exponent group",
    "(C2xC2):D12",
    "exponents of Alt(7) and Alt(8)",
    "coprime refinement of CIG tuples",
    "crown bound versus d_I",
    "nilpotent groups: CIG iff cyclic",
    "oracle equivalence",
    "property suites",
];

type Check = fn(&Limits, u64) -> Result<(bool, String)>;

const CHECKS: [Check; 12] = [c1, c2, c3, c4, c5, c6, c7, c8, c9, c10, c11, c12];

/// Runs criterion `id` (1-based) with the default seed.
pub fn run(id: u32, limits: &Limits) -> Outcome {
    run_seeded(id, limits, DEFAULT_SEED)
}

pub fn run_seeded(id: u32, limits: &Limits, seed: u64) -> Outcome {
    let start = Instant::now();
    let (pass, detail, error_code) = match CHECKS[id as usize - 1](limits, seed) {
        Ok((pass, detail)) => (pass, detail, None),
        Err(e) => (false, format!("error: {e}"), Some(e.code())),
    };
    Outcome {
        id,
        title: TITLES[id as usize - 1],
        pass,
        detail,
        error_code,
        millis: start.elapsed().as_millis(),
    }
}

pub fn run_all(limits: &Limits, seed: u64) -> Vec<Outcome> {
    (1..=12).map(|i| run_seeded(i, limits, seed)).collect()
}

fn perm(s: &str, n: usize) -> Permutation {
    Permutation::parse(s, Some(n)).expect("valid cycle")
}

fn c1(limits: &Limits, _seed: u64) -> Result<(bool, String)> {
    let g = PermGroup::symmetric(7);
    let t = [perm("(1,2,3,4,5)", 7), perm("(1,2,3)(4,5,6,7)", 7)];
    let start = Instant::now();
    let r = invgen::invariably_generates(&g, &t, limits)?;
    let secs = start.elapsed().as_secs_f64();
    let sizes: Vec<usize> = t
        .iter()
        .map(|x| g.conjugacy_class(x, limits.enumeration_cap).map(|c| c.size()))
        .collect::<Result<_>>()?;
    Ok((
        r.generates && secs < 60.0,
        format!("generates={} in {secs:.2}s, class sizes {sizes:?}", r.generates),
    ))
}

fn c2(limits: &Limits, _seed: u64) -> Result<(bool, String)> {
    let m = s7_module();
    let lambda_p = criteria::abcase_lambda(&m, Coprime::PrimePower, limits)?;
    let bound_p = criteria::abcase_bound(&m, &lambda_p)?;
    let lambda = criteria::abcase_lambda(&m, Coprime::Plain, limits)?;
    let bound = criteria::abcase_bound(&m, &lambda)?;
    let e = Permutation::identity(7);
    let h = vec![e, perm("(1,2,3,4,5)", 7), perm("(1,2,3)(4,5,6,7)", 7)];
    let mut v = vec![0; 25];
    for j in 0..5 {
        v[j * 5 + j] = 1;
    }
    let lt = criteria::ltcase_test(&m, 5, &h, &v, limits)?;
    let rows: Vec<Vec<u32>> = (0..5)
        .map(|j| {
            let mut r = vec![0; 15];
            r[j] = 1;
            r
        })
        .collect();
    let mt = criteria::matrici_test(&LiftProblem::from_rows(m, h, &rows)?, limits)?;
    Ok((
        bound_p <= 4 && lt && mt,
        format!(
            "prime-power bound {bound_p} over {} classes, plain bound {bound}, ltcase={lt}, matrici={mt}",
            lambda_p.len()
        ),
    ))
}

fn c3(limits: &Limits, _seed: u64) -> Result<(bool, String)> {
    let m = modrep::deleted_perm_module(3, 2)?;
    let mut optima = Vec::new();
    for d in 2..=4 {
        optima.push(criteria::matrici_optimum(&m, d, limits)?.map(|o| o.0));
    }
    let optimum_ok = optima.iter().zip(2..).all(|(o, d)| *o == Some(2 * d - 3));
    let g = gl22(2)?.to_affine_perm(limits)?;
    let (di, _) = invgen::d_i(&g, limits)?;
    let brute = oracle::brute_d_i(&g, 3, limits)?;
    let cig = invgen::is_cig(&g, limits)?;
    Ok((
        optimum_ok && di == 3 && brute == Some(3) && !cig,
        format!("optima {optima:?}, d_I={di}, brute d_I={brute:?}, is_cig={cig}"),
    ))
}

fn c4(limits: &Limits, _seed: u64) -> Result<(bool, String)> {
    let a5 = PermGroup::alternating(5);
    let s5 = PermGroup::symmetric(5);
    let set = invgen::find_pcig_set(&a5, limits)?;
    let mut orders = set.as_ref().map(|t| t.orders()).unwrap_or_default();
    orders.sort_unstable();
    let (s, r, t) = alt5_elements();
    let id = Permutation::identity(5);
    let sys = RowSystem::new(a5.clone(), s5.clone(), vec![vec![s.clone(), r.clone(), t.clone()], vec![s.clone(), r.clone(), id]])?;
    let cols = criteria::columns_invgen(&sys, limits)?;
    let direct = invgen::invariably_generates(&power(&a5, 2)?, &sys.columns(), limits)?.generates;
    let twin = RowSystem::new(a5.clone(), s5.clone(), vec![vec![s.clone(), r.clone(), t.clone()]; 2])?;
    let twin_cols = criteria::columns_invgen(&twin, limits)?;
    let twin_direct = invgen::invariably_generates(&power(&a5, 2)?, &twin.columns(), limits)?.generates;
    let (t_max, _) = criteria::max_cig_power(&a5, &s5, limits)?;
    Ok((
        orders == [2, 3, 5] && cols && direct == cols && twin_cols == twin_direct && t_max == 2,
        format!(
            "pcig orders {orders:?}, columns={cols}, direct={direct}, repeated rows {twin_cols}/{twin_direct}, max power {t_max}"
        ),
    ))
}

fn c5(limits: &Limits, _seed: u64) -> Result<(bool, String)> {
    let g = cor12_group(3, limits)?;
    let q = invgen::frattini_quotient(&g, limits)?;
    let gv = (g.order_u64(), g.exponent(limits.enumeration_cap)?, lattice::is_minimal_exponent(&g, limits)?);
    let qv = (q.order_u64(), q.exponent(limits.enumeration_cap)?, lattice::is_minimal_exponent(&q, limits)?);
    Ok((
        gv == (Some(162), 18, true) && qv == (Some(18), 6, false),
        format!("G {gv:?}, G/Frat(G) {qv:?}"),
    ))
}

fn c6(limits: &Limits, _seed: u64) -> Result<(bool, String)> {
    let g = klein_d12();
    let frat = lattice::frattini(&g, limits)?.order_u64();
    let q = invgen::frattini_quotient(&g, limits)?;
    let gv = (g.order_u64(), g.exponent(limits.enumeration_cap)?, lattice::is_minimal_exponent(&g, limits)?);
    let qv = (q.order_u64(), q.exponent(limits.enumeration_cap)?, lattice::is_minimal_exponent(&q, limits)?);
    let same = lattice::fingerprint(&q, limits)? == lattice::fingerprint(&PermGroup::symmetric(4), limits)?;
    Ok((
        gv == (Some(48), 12, false) && qv == (Some(24), 12, true) && same,
        format!("G {gv:?}, |Frat(G)| {frat:?}, G/Frat(G) {qv:?}, Sym(4) fingerprint {same}"),
    ))
}

fn c7(limits: &Limits, _seed: u64) -> Result<(bool, String)> {
    let a7 = PermGroup::alternating(7).exponent(limits.enumeration_cap)?;
    let a8 = PermGroup::alternating(8).exponent(limits.enumeration_cap)?;
    Ok((a7 == 420 && a8 == 420, format!("Alt(7): {a7}, Alt(8): {a8}")))
}

fn small(g: &PermGroup, cap: u64) -> bool {
    g.order_u64().is_some_and(|o| o <= cap)
}

fn c8(limits: &Limits, _seed: u64) -> Result<(bool, String)> {
    let mut tuples = 0;
    let mut groups = 0;
    let mut bad = Vec::new();
    for c in corpus() {
        let g = c.build(limits)?;
        if !small(&g, 200) || !g.is_soluble() {
            continue;
        }
        groups += 1;
        for t in invgen::all_coprime_sets(&g, Coprime::Plain, limits)? {
            tuples += 1;
            if !invgen::check_cig_refinement(&g, &t.elements, limits)? {
                bad.push(c.name);
            }
        }
    }
    Ok((
        bad.is_empty() && tuples > 0,
        format!("{tuples} tuples over {groups} groups, falsifications {bad:?}"),
    ))
}

fn c9(limits: &Limits, _seed: u64) -> Result<(bool, String)> {
    let mut rows = Vec::new();
    let mut ok = true;
    let mut equality = false;
    for c in corpus() {
        let Some(data) = c.crown_data() else { continue };
        let g = c.build(limits)?;
        let eta = criteria::sol_eta(&data);
        let (di, _) = invgen::d_i(&g, limits)?;
        ok &= eta >= di as u64;
        if c.name == "V^2:Sym(3)" {
            equality = eta == 3 && di == 3;
        }
        rows.push(format!("{} {eta}>={di}", c.name));
    }
    Ok((ok && equality && rows.len() >= 10, rows.join(", ")))
}

fn c10(limits: &Limits, _seed: u64) -> Result<(bool, String)> {
    let mut n = 0;
    let mut bad = Vec::new();
    for c in corpus() {
        let g = c.build(limits)?;
        if !small(&g, 128) || !g.is_nilpotent() {
            continue;
        }
        n += 1;
        if invgen::is_cig(&g, limits)? != g.is_cyclic(limits.enumeration_cap)? {
            bad.push(c.name);
        }
    }
    Ok((bad.is_empty() && n >= 15, format!("{n} nilpotent groups, disagreements {bad:?}")))
}

/// Structural versus brute-force invariable generation on one group.
fn group_oracle_checks(g: &PermGroup, limits: &Limits) -> Result<(usize, usize)> {
    let table = ElementTable::new(g, limits.enumeration_cap)?;
    let reps: Vec<Permutation> = g
        .conjugacy_classes(limits.enumeration_cap)?
        .into_iter()
        .map(|c| c.representative)
        .filter(|r| !r.is_identity())
        .collect();
    let mut tuples: Vec<Vec<Permutation>> = Vec::new();
    for i in 0..reps.len() {
        tuples.push(vec![reps[i].clone()]);
        for j in i..reps.len() {
            tuples.push(vec![reps[i].clone(), reps[j].clone()]);
        }
    }
    for kind in [Coprime::Plain, Coprime::PrimePower] {
        tuples.extend(invgen::all_coprime_sets(g, kind, limits)?.into_iter().map(|t| t.elements));
    }
    tuples.push(invgen::d_i(g, limits)?.1);
    let mut mismatches = 0;
    for t in &tuples {
        let fast = invgen::invariably_generates(g, t, limits)?.generates;
        if fast != oracle::brute_invariably_generates_in(&table, t, limits)? {
            mismatches += 1;
        }
    }
    Ok((tuples.len(), mismatches))
}

/// Multisets of `k` entries of `items`.
fn multisets<T: Clone>(items: &[T], k: usize) -> Vec<Vec<T>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        for mut rest in multisets(&items[i..], k - 1) {
            rest.insert(0, items[i].clone());
            out.push(rest);
        }
    }
    out
}

#[derive(Default)]
struct LiftTally {
    crit: usize,
    matrici: usize,
    ltcase: usize,
    mismatches: Vec<String>,
}

const LIFT_ORDER_CAP: u64 = 100_000;

fn random_vec<R: Rng>(rng: &mut R, p: u32, len: usize) -> Vec<u32> {
    (0..len).map(|_| rng.gen_range(0..p)).collect()
}

fn lift_checks(name: &str, m: &HModule, limits: &Limits, seed: u64, tally: &mut LiftTally) -> Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let h_order = m.group().order_u64().expect("small top group");
    let p = m.prime();
    let n = m.dim();
    let reps: Vec<Permutation> = m
        .group()
        .conjugacy_classes(limits.enumeration_cap)?
        .into_iter()
        .map(|c| c.representative)
        .collect();
    for u in 1.. {
        let base = (p as u64).pow((n * u) as u32);
        if base * h_order > LIFT_ORDER_CAP || base > limits.degree_cap {
            break;
        }
        let sd = SdGroup::new(m.clone(), u)?;
        let affine = sd.to_affine_perm(limits)?;
        let total = base * h_order;
        let samples = if total <= 2_000 { 6 } else { 2 };
        let max_d = match total {
            0..=2_000 => 3,
            2_001..=10_000 => 2,
            _ => 1,
        };
        for d in 1..=max_d {
            for h in multisets(&reps, d) {
                let gen_h = PermGroup::new(m.group().degree(), h.clone())?.order() == m.group().order();
                if !gen_h {
                    continue;
                }
                let inv_h = invgen::invariably_generates(m.group(), &h, limits)?.generates;
                for s in 0..samples {
                    let w: Vec<Vec<u32>> = if s == 0 {
                        vec![vec![0; n * u]; d]
                    } else {
                        (0..d).map(|_| random_vec(&mut rng, p, n * u)).collect()
                    };
                    let pr = LiftProblem::new(m.clone(), u, h.clone(), w)?;
                    let (_, els) = pr.elements()?;
                    let images = els
                        .iter()
                        .map(|x| sd.affine_image(x, limits))
                        .collect::<Result<Vec<_>>>()?;
                    let crit = criteria::crit_generates(&pr)?;
                    let mut truth = sd.generates(&els, limits)?;
                    if total <= 2_000 {
                        let closed = oracle::closure_size(&images, affine.degree());
                        truth &= BigUint::from(closed) == sd.order();
                    }
                    tally.crit += 1;
                    if crit != truth {
                        tally.mismatches.push(format!("crit {name} u={u} {h:?}"));
                    }
                    if inv_h {
                        let fast = criteria::matrici_test_asserted(&pr)?;
                        let truth = if total <= 200 {
                            oracle::brute_invariably_generates(&affine, &images, limits)?
                        } else {
                            invgen::invariably_generates(&affine, &images, limits)?.generates
                        };
                        tally.matrici += 1;
                        if fast != truth {
                            tally.mismatches.push(format!("matrici {name} u={u} {h:?}"));
                        }
                    }
                }
                let orders: Vec<u64> = h.iter().map(Permutation::order).collect();
                if inv_h && invgen::pairwise_coprime(&orders) {
                    let mut hh = h.clone();
                    if let Some(k) = orders.iter().position(|o| o % p as u64 == 0) {
                        hh.swap(0, k);
                    }
                    for s in 0..samples {
                        let v = if s == 0 { vec![0; n * u] } else { random_vec(&mut rng, p, n * u) };
                        let fast = criteria::ltcase_test_asserted(m, u, &hh, &v)?;
                        let mut els = vec![sd.element(v.clone(), hh[0].clone())?];
                        for x in &hh[1..] {
                            els.push(sd.lift(x)?);
                        }
                        let images = els
                            .iter()
                            .map(|x| sd.affine_image(x, limits))
                            .collect::<Result<Vec<_>>>()?;
                        let truth = invgen::invariably_generates(&affine, &images, limits)?.generates;
                        tally.ltcase += 1;
                        if fast != truth {
                            tally.mismatches.push(format!("ltcase {name} u={u} {hh:?}"));
                        }
                    }
                }
            }
        }
    }
    Ok(())
}

fn c11(limits: &Limits, seed: u64) -> Result<(bool, String)> {
    let start = Instant::now();
    let mut groups = 0;
    let mut tuples = 0;
    let mut bad_groups = Vec::new();
    for c in corpus() {
        let g = c.build(limits)?;
        if !small(&g, 200) {
            continue;
        }
        groups += 1;
        let (k, bad) = group_oracle_checks(&g, limits)?;
        tuples += k;
        if bad > 0 {
            bad_groups.push(c.name);
        }
    }
    let group_secs = start.elapsed().as_secs_f64();
    let mut tally = LiftTally::default();
    for cm in lift_modules() {
        lift_checks(cm.name, &cm.module, limits, seed, &mut tally)?;
    }
    Ok((
        bad_groups.is_empty() && tally.mismatches.is_empty(),
        format!(
            "{tuples} tuples over {groups} groups in {group_secs:.1}s (disagreeing: {bad_groups:?}); lift checks crit {} / matrici {} / ltcase {} (disagreeing: {:?})",
            tally.crit, tally.matrici, tally.ltcase, tally.mismatches
        ),
    ))
}

fn random_matrix<R: Rng>(rng: &mut R, p: u32, rows: usize, cols: usize) -> GfMatrix {
    let rows: Vec<Vec<u32>> = (0..rows).map(|_| random_vec(rng, p, cols)).collect();
    GfMatrix::from_rows(p, &rows).expect("rectangular")
}

fn rank_nullity(rng: &mut ChaCha8Rng) -> bool {
    (0..300).all(|_| {
        let p = *[2u32, 3, 5, 7].choose(rng).unwrap();
        let r = rng.gen_range(1..=12);
        let c = rng.gen_range(1..=12);
        // Low-rank products exercise dependent rows.
        let k = rng.gen_range(1..=12);
        let m = random_matrix(rng, p, r, k).mul(&random_matrix(rng, p, k, c));
        let rank = gf::rank(&m);
        rank + gf::kernel(&m).dim() == r && gf::image(&m).dim() == rank
    })
}

fn commutator_powers(rng: &mut ChaCha8Rng) -> Result<bool> {
    let modules = [s7_module(), modrep::deleted_perm_module(5, 5)?, modrep::deleted_perm_module(4, 3)?];
    for m in &modules {
        for _ in 0..40 {
            let h = m.group().random_element(rng);
            let k = rng.gen_range(0..=h.order() as i64 * 2);
            let big = m.commutator_space(&h)?;
            if !big.contains_subspace(&m.commutator_space(&h.pow(k))?) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// A random row of `S`, or a row equivalent to `base` when one is given.
fn random_row<R: Rng>(rng: &mut R, s: &PermGroup, a: &PermGroup, base: Option<&[Permutation]>) -> Vec<Permutation> {
    match base {
        None => (0..3).map(|_| s.random_element(rng)).collect(),
        Some(b) => {
            let alpha = a.random_element(rng);
            b.iter()
                .map(|x| x.conjugate_by(&s.random_element(rng)).conjugate_by(&alpha))
                .collect()
        }
    }
}

fn equivalence_laws(rng: &mut ChaCha8Rng, limits: &Limits) -> Result<bool> {
    let s = PermGroup::alternating(5);
    let a = PermGroup::symmetric(5);
    let eq = |x: &[Permutation], y: &[Permutation]| criteria::row_equivalent(x, y, &s, &a, limits);
    for i in 0..500 {
        let x = random_row(rng, &s, &a, None);
        let y = random_row(rng, &s, &a, (i % 2 == 0).then_some(&x[..]));
        let z = random_row(rng, &s, &a, (i % 3 != 0).then_some(&y[..]));
        if !eq(&x, &x)? || eq(&x, &y)? != eq(&y, &x)? {
            return Ok(false);
        }
        if eq(&x, &y)? && eq(&y, &z)? && !eq(&x, &z)? {
            return Ok(false);
        }
        if i % 2 == 0 && !eq(&x, &y)? {
            return Ok(false);
        }
    }
    Ok(true)
}

fn diagonal_reductions(rng: &mut ChaCha8Rng) -> Result<bool> {
    for _ in 0..500 {
        let p = *[5u32, 7, 11, 13].choose(rng).unwrap();
        let m = rng.gen_range(1..p as usize);
        let mut scalars: Vec<u32> = (1..p).collect();
        scalars.shuffle(rng);
        let betas = &scalars[..m];
        let support: Vec<usize> = (0..m).filter(|_| rng.gen_bool(0.5)).collect();
        // Random vectors supported on the chosen coordinates span a
        // diag(betas)-invariant subspace when they span the coordinate space.
        let vecs: Vec<Vec<u32>> = (0..support.len())
            .map(|_| {
                let mut v = vec![0; m];
                for &i in &support {
                    v[i] = rng.gen_range(0..p);
                }
                v
            })
            .collect();
        let w = GfSubspace::span(p, m, vecs);
        if !w.is_invariant(&GfMatrix::diagonal(p, betas)) {
            continue;
        }
        let got = modrep::diagonal_reduce(betas, &w)?;
        let has_first = w.basis().iter().any(|b| b[0] != 0);
        match got {
            Some(e1) if has_first => {
                if e1 != gf::unit_vector(m, 0) || !w.contains(&e1) {
                    return Ok(false);
                }
            }
            None if !has_first => {}
            _ => return Ok(false),
        }
    }
    Ok(true)
}

fn frattini_shortcut(limits: &Limits) -> Result<(usize, bool)> {
    let mut n = 0;
    for c in corpus() {
        let g = c.build(limits)?;
        let q = match invgen::frattini_quotient(&g, limits) {
            Ok(q) => q,
            Err(crate::Error::CapExceeded { .. }) => continue,
            Err(e) => return Err(e),
        };
        n += 1;
        let direct = invgen::find_pcig_set(&g, limits)?.is_some();
        let reduced = invgen::find_pcig_set(&q, limits)?.is_some();
        if direct != reduced || invgen::is_pcig(&g, limits)? != direct {
            return Ok((n, false));
        }
    }
    Ok((n, true))
}

fn c12(limits: &Limits, seed: u64) -> Result<(bool, String)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let rn = rank_nullity(&mut rng);
    let cp = commutator_powers(&mut rng)?;
    let eq = equivalence_laws(&mut rng, limits)?;
    let dr = diagonal_reductions(&mut rng)?;
    let (groups, fs) = frattini_shortcut(limits)?;
    Ok((
        rn && cp && eq && dr && fs,
        format!(
            "rank-nullity {rn}, commutator powers {cp}, row equivalence {eq}, diagonal reduction {dr}, Frattini shortcut {fs} on {groups} groups"
        ),
    ))
}
