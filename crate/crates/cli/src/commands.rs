//! One function per subcommand. Each returns the `result` and `witnesses`
//! parts of the report, plus the search budget used when a search ran.

use std::collections::BTreeMap;

use cig_core::constructions::{build, parse_spec, Built};
use cig_core::criteria::{self, CrownDatum, LiftProblem};
use cig_core::invgen::{self, Budget, Coprime};
use cig_core::modrep::HModule;
use cig_core::perm::parse_tuple;
use cig_core::{lattice, Error, Limits, PermGroup, Permutation, Result};
use num_bigint::BigUint;
use serde_json::{json, Value};

pub struct Report {
    pub result: Value,
    pub witnesses: Value,
    pub budget_used: Option<u64>,
}

impl Report {
    fn plain(result: Value) -> Self {
        Report {
            result,
            witnesses: Value::Null,
            budget_used: None,
        }
    }
}

/// Integers above `2^53` are rendered as strings so they survive any JSON reader.
pub fn big(n: &BigUint) -> Value {
    if *n <= BigUint::from(1u64 << 53) {
        json!(n.iter_u64_digits().next().unwrap_or(0))
    } else {
        json!(n.to_string())
    }
}

fn elements(xs: &[Permutation]) -> Value {
    json!(xs.iter().map(ToString::to_string).collect::<Vec<_>>())
}

fn tuple_value(xs: &[Permutation]) -> Value {
    json!({
        "elements": elements(xs),
        "orders": xs.iter().map(Permutation::order).collect::<Vec<_>>(),
    })
}

pub fn built(spec: &str, limits: &Limits) -> Result<Built> {
    build(&parse_spec(spec)?, limits)
}

pub fn group(spec: &str, limits: &Limits) -> Result<PermGroup> {
    built(spec, limits)?.perm_group(limits)
}

/// `Ok(None)` when a cap stops the computation.
fn capped<T>(r: Result<T>) -> Result<Option<T>> {
    match r {
        Ok(v) => Ok(Some(v)),
        Err(Error::CapExceeded { .. }) => Ok(None),
        Err(e) => Err(e),
    }
}

fn group_summary(g: &PermGroup, limits: &Limits) -> Result<Value> {
    let cap = limits.enumeration_cap;
    let supersoluble = match lattice::chief_factor_data(g, limits) {
        Ok(_) => Some(true),
        Err(Error::NotSupersoluble) => Some(false),
        Err(Error::CapExceeded { .. }) => None,
        Err(e) => return Err(e),
    };
    let classes = capped(g.conjugacy_classes(cap))?;
    Ok(json!({
        "order": big(g.order()),
        "degree": g.degree(),
        "generators": elements(g.generators()),
        "exponent": capped(g.exponent(cap))?,
        "abelian": g.is_abelian(),
        "cyclic": capped(g.is_cyclic(cap))?,
        "nilpotent": g.is_nilpotent(),
        "soluble": g.is_soluble(),
        "supersoluble": supersoluble,
        "classes": classes.as_ref().map(Vec::len),
        "frattini_order": capped(lattice::frattini(g, limits))?.map(|f| big(f.order())),
    }))
}

fn module_summary(m: &HModule, limits: &Limits) -> Result<Value> {
    Ok(json!({
        "prime": m.prime(),
        "dim": m.dim(),
        "group_order": big(m.group().order()),
        "commutant_dim": m.commutant().e(),
        "trivial_action": m.is_trivial_action(),
        "faithful": m.is_faithful(),
        "irreducible": capped(m.is_irreducible(limits))?,
        "h1_vanishing": m.h1_vanishing(limits),
    }))
}

pub fn analyze(spec: &str, limits: &Limits) -> Result<Report> {
    let result = match built(spec, limits)? {
        Built::Group(g) => json!({ "kind": "group", "group": group_summary(&g, limits)? }),
        Built::Module(m) => json!({ "kind": "module", "module": module_summary(&m, limits)? }),
        Built::Semidirect(sd) => {
            let affine = capped(sd.to_affine_perm(limits))?;
            json!({
                "kind": "semidirect",
                "order": big(&sd.order()),
                "multiplicity": sd.multiplicity(),
                "module": module_summary(sd.module(), limits)?,
                "group": affine.map(|g| group_summary(&g, limits)).transpose()?,
            })
        }
    };
    Ok(Report::plain(result))
}

pub fn invgen(spec: &str, tuple: &str, limits: &Limits) -> Result<Report> {
    let g = group(spec, limits)?;
    let t = parse_tuple(tuple, g.degree())?;
    let mut budget = Budget::new(limits.search_budget);
    let r = invgen::invariably_generates_with(&g, &t, limits, &mut budget)?;
    Ok(Report {
        result: json!(r.generates),
        witnesses: json!({ "failing_tuple": r.witness.as_deref().map(elements) }),
        budget_used: Some(budget.used()),
    })
}

pub fn coprime(spec: &str, kind: Coprime, limits: &Limits) -> Result<Report> {
    let g = group(spec, limits)?;
    let mut budget = Budget::new(limits.search_budget);
    let found = invgen::find_coprime_set_with(&g, kind, limits, &mut budget)?;
    Ok(Report {
        result: json!(found.is_some()),
        witnesses: json!({ "generating_tuple": found.as_ref().map(|t| tuple_value(&t.elements)) }),
        budget_used: Some(budget.used()),
    })
}

pub fn di(spec: &str, limits: &Limits) -> Result<Report> {
    let g = group(spec, limits)?;
    let mut budget = Budget::new(limits.search_budget);
    let (d, w) = invgen::d_i_with(&g, limits, &mut budget)?;
    Ok(Report {
        result: json!({ "d_I": d }),
        witnesses: json!({ "generating_tuple": tuple_value(&w) }),
        budget_used: Some(budget.used()),
    })
}

pub fn minexp(spec: &str, limits: &Limits) -> Result<Report> {
    let g = group(spec, limits)?;
    Ok(Report::plain(json!({
        "order": big(g.order()),
        "exponent": g.exponent(limits.enumeration_cap)?,
        "minimal_exponent": lattice::is_minimal_exponent(&g, limits)?,
    })))
}

pub fn frattini(spec: &str, limits: &Limits) -> Result<Report> {
    let g = group(spec, limits)?;
    let f = lattice::frattini(&g, limits)?;
    let q = invgen::frattini_quotient(&g, limits)?;
    Ok(Report::plain(json!({
        "order": big(g.order()),
        "frattini_order": big(f.order()),
        "frattini_generators": elements(f.generators()),
        "quotient": {
            "order": big(q.order()),
            "degree": q.degree(),
            "exponent": q.exponent(limits.enumeration_cap)?,
            "minimal_exponent": lattice::is_minimal_exponent(&q, limits)?,
            "fingerprint": lattice::fingerprint(&q, limits)?,
        },
    })))
}

pub fn lattice_report(spec: &str, limits: &Limits) -> Result<Report> {
    let g = group(spec, limits)?;
    let lat = lattice::all_subgroups(&g, limits)?;
    let mut by_order: BTreeMap<usize, usize> = BTreeMap::new();
    for i in 0..lat.len() {
        *by_order.entry(lat.order_of(i)).or_default() += 1;
    }
    let normal = (0..lat.len()).filter(|&i| lat.is_normal(i)).count();
    let maximal: Vec<usize> = lat.maximal_indices().iter().map(|&i| lat.order_of(i)).collect();
    Ok(Report::plain(json!({
        "order": big(g.order()),
        "subgroups": lat.len(),
        "normal_subgroups": normal,
        "subgroups_by_order": by_order.iter().map(|(k, v)| (k.to_string(), json!(v))).collect::<serde_json::Map<_, _>>(),
        "maximal_subgroup_orders": maximal,
        "frattini_order": lat.frattini_bits().count(),
    })))
}

fn parse_vectors(text: &str) -> Result<Vec<Vec<u32>>> {
    text.split('|')
        .map(|part| {
            part.split(',')
                .map(str::trim)
                .filter(|s| !s.is_empty())
                .map(|s| {
                    s.parse::<u32>()
                        .map_err(|_| Error::InvalidArgument(format!("not a field element: '{s}'")))
                })
                .collect()
        })
        .collect()
}

/// A criterion verdict, or the error code of its failed precondition.
fn verdict(r: Result<bool>) -> Result<Value> {
    match r {
        Ok(b) => Ok(json!(b)),
        Err(e @ (Error::BudgetExhausted { .. } | Error::CapExceeded { .. })) => Err(e),
        Err(e) => Ok(json!({ "not_applicable": e.code(), "reason": e.to_string() })),
    }
}

pub fn lift_check(
    module_spec: &str,
    tuple: &str,
    lifts: &str,
    multiplicity: Option<usize>,
    verify: bool,
    limits: &Limits,
) -> Result<Report> {
    let (m, u_spec) = match built(module_spec, limits)? {
        Built::Module(m) => (m, None),
        Built::Semidirect(sd) => (sd.module().clone(), Some(sd.multiplicity())),
        Built::Group(_) => return Err(Error::InvalidArgument("lift-check needs a module or semidirect spec".into())),
    };
    let h = parse_tuple(tuple, m.group().degree())?;
    let w = parse_vectors(lifts)?;
    let n = m.dim().max(1);
    let u = multiplicity
        .or(u_spec)
        .unwrap_or_else(|| w.first().map_or(1, |x| x.len() / n).max(1));
    let problem = LiftProblem::new(m.clone(), u, h.clone(), w.clone())?;
    let mut budget = Budget::new(limits.search_budget);
    let top = m.group();
    let generates_h = PermGroup::new(top.degree(), h.clone())?.order() == top.order();
    let inv_h = invgen::invariably_generates_with(top, &h, limits, &mut budget)?.generates;
    let d = h.len();
    let matrici = if inv_h {
        verdict(criteria::matrici_test_asserted(&problem))?
    } else {
        json!({ "not_applicable": "precondition", "reason": "the tuple does not invariably generate H" })
    };
    let ltcase = if !inv_h {
        json!({ "not_applicable": "precondition", "reason": "the tuple does not invariably generate H" })
    } else if w.iter().skip(1).any(|x| x.iter().any(|&c| c % m.prime() != 0)) {
        json!({ "not_applicable": "precondition", "reason": "only the first entry may carry a lift" })
    } else {
        verdict(criteria::ltcase_test_asserted(&m, u, &h, &w[0]))?
    };
    let mut result = json!({
        "d": d,
        "multiplicity": u,
        "h1_vanishing": m.h1_vanishing(limits),
        "generates_h": generates_h,
        "invariably_generates_h": inv_h,
        "crit_generates": verdict(criteria::crit_generates(&problem))?,
        "crit_max_u": criteria::crit_max_u(&m, d),
        "matrici": matrici,
        "matrici_max_u": criteria::matrici_max_u(&m, &h)?,
        "ltcase": ltcase,
    });
    if verify {
        let (sd, els) = problem.elements()?;
        let affine = sd.to_affine_perm(limits)?;
        let images = els
            .iter()
            .map(|x| sd.affine_image(x, limits))
            .collect::<Result<Vec<_>>>()?;
        result["affine_generates"] = json!(sd.generates(&els, limits)?);
        result["affine_invariably_generates"] =
            json!(invgen::invariably_generates_with(&affine, &images, limits, &mut budget)?.generates);
    }
    Ok(Report {
        result,
        witnesses: json!({ "rows": problem.rows() }),
        budget_used: Some(budget.used()),
    })
}

fn parse_crowns(text: &str) -> Result<Vec<CrownDatum>> {
    text.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| {
            let bad = || Error::InvalidArgument(format!("expected delta/r, found '{s}'"));
            let (a, b) = s.split_once('/').ok_or_else(bad)?;
            let a = a.trim().parse().map_err(|_| bad())?;
            let b = b.trim().parse().map_err(|_| bad())?;
            CrownDatum::new(a, b)
        })
        .collect()
}

pub fn eta(crowns: &str, spec: Option<&str>, limits: &Limits) -> Result<Report> {
    let data = parse_crowns(crowns)?;
    let eta = criteria::sol_eta(&data);
    let mut result = json!({ "eta": eta, "crowns": data });
    let mut budget_used = None;
    if let Some(spec) = spec {
        let g = group(spec, limits)?;
        let mut budget = Budget::new(limits.search_budget);
        let (d, _) = invgen::d_i_with(&g, limits, &mut budget)?;
        result["d_I"] = json!(d);
        result["bound_holds"] = json!(eta >= d as u64);
        budget_used = Some(budget.used());
    }
    Ok(Report {
        result,
        witnesses: Value::Null,
        budget_used,
    })
}

pub fn super_cig(spec: &str, limits: &Limits) -> Result<Report> {
    let g = group(spec, limits)?;
    let cig = criteria::supersoluble_cig(&g, limits)?;
    let factors = lattice::chief_factor_data(&g, limits)?;
    Ok(Report {
        result: json!(cig),
        witnesses: json!({
            "chief_factors": factors,
            "sylow_ranks": criteria::sylow_ranks(&g, limits)?,
        }),
        budget_used: None,
    })
}

/// `Sym(n)` for `Alt(n)` on `n >= 5` points, otherwise the group itself.
fn default_automorphisms(s: &PermGroup) -> PermGroup {
    let alt = PermGroup::alternating(s.degree());
    if s.degree() >= 5 && s.same_group(&alt) {
        PermGroup::symmetric(s.degree())
    } else {
        s.clone()
    }
}

pub fn power_cig(spec: &str, aut: Option<&str>, limits: &Limits) -> Result<Report> {
    let s = group(spec, limits)?;
    let a = match aut {
        Some(t) => group(t, limits)?,
        None => default_automorphisms(&s),
    };
    let (t, rows) = criteria::max_cig_power(&s, &a, limits)?;
    Ok(Report {
        result: json!({ "max_power": t }),
        witnesses: json!({ "rows": rows.iter().map(|r| elements(r)).collect::<Vec<_>>() }),
        budget_used: None,
    })
}
