use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use cig_core::acceptance::{self, DEFAULT_SEED};
use cig_core::invgen::Coprime;
use cig_core::{Error, Limits};
use serde_json::{json, Value};

mod commands;

/// Invariable generation by elements of coprime order: decisions,
/// lifting criteria and the acceptance corpus.
///
/// Group specs: sym(n), alt(n), cyclic(n), dihedral(n), power(G, t),
/// product(G, H, ...), wreath_p(p, m), cor12(p), intro(), klein_d12(),
/// gl22(u), perm(n; g1, g2, ...); modules: deleted(n, p),
/// semidirect(module, u). Tuples separate elements with `|`; the identity
/// is `()`.
#[derive(Parser)]
#[command(name = "cig", version)]
struct Cli {
    #[command(flatten)]
    opts: Options,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Options {
    /// Subgroup-generation steps allowed per search.
    #[arg(long, global = true, env = "CIG_SEARCH_BUDGET")]
    budget: Option<u64>,
    /// Largest group whose elements may be listed.
    #[arg(long, global = true, env = "CIG_ENUMERATION_CAP")]
    enumeration_cap: Option<u64>,
    /// Largest group whose subgroup lattice may be built.
    #[arg(long, global = true, env = "CIG_LATTICE_CAP")]
    lattice_cap: Option<u64>,
    /// Largest number of subgroups in a lattice.
    #[arg(long, global = true, env = "CIG_MAX_SUBGROUPS")]
    max_subgroups: Option<u64>,
    /// Largest degree for affine and coset images.
    #[arg(long, global = true, env = "CIG_DEGREE_CAP")]
    degree_cap: Option<u64>,
    /// Largest p^n for exhaustive irreducibility tests.
    #[arg(long, global = true, env = "CIG_SPIN_CAP")]
    spin_cap: Option<u64>,
    /// Seed for the randomized checks of `corpus`.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Leave timings out, making output byte-identical across runs.
    #[arg(long, global = true)]
    no_timings: bool,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Structural summary of a group, module or semidirect product.
    Analyze { spec: String },
    /// Whether a tuple invariably generates the group.
    Invgen {
        spec: String,
        #[arg(long)]
        tuple: String,
    },
    /// Search for an invariably generating set with pairwise coprime orders.
    Cig { spec: String },
    /// The same with prime-power orders.
    Pcig { spec: String },
    /// Smallest size of an invariably generating set.
    Di { spec: String },
    /// Order, exponent and whether no proper subgroup has the same exponent.
    Minexp { spec: String },
    /// Frattini subgroup and quotient.
    Frattini { spec: String },
    /// Subgroup lattice statistics.
    Lattice { spec: String },
    /// Lifting criteria for `h_i w_i` in `V^u ⋊ H`.
    LiftCheck {
        /// `deleted(n, p)` or `semidirect(module, u)`.
        module: String,
        /// Elements `h_1 | ... | h_d` of H.
        #[arg(long)]
        tuple: String,
        /// Vectors `w_1 | ... | w_d` of V^u, comma-separated entries.
        #[arg(long)]
        lift: String,
        #[arg(long, short = 'u')]
        multiplicity: Option<usize>,
        /// Also decide through the affine embedding.
        #[arg(long)]
        verify: bool,
    },
    /// Crown bound `Σ ceil(δ/r)` on d_I of a soluble group.
    Eta {
        /// Crown data `δ/r, δ/r, ...`.
        #[arg(long)]
        crowns: String,
        /// Group to compare d_I against.
        #[arg(long)]
        spec: Option<String>,
    },
    /// Chief-factor test for supersoluble groups.
    SuperCig { spec: String },
    /// Largest t with S^t coprimely invariably generated, S simple.
    PowerCig {
        spec: String,
        /// Automorphism carrier containing S; defaults to Sym(n) for Alt(n).
        #[arg(long)]
        aut: Option<String>,
    },
    /// Runs the acceptance suite.
    Corpus {
        /// Run a single criterion.
        #[arg(long)]
        only: Option<u32>,
    },
}

impl Options {
    fn limits(&self) -> Limits {
        let d = Limits::default();
        Limits {
            enumeration_cap: self.enumeration_cap.unwrap_or(d.enumeration_cap),
            lattice_cap: self.lattice_cap.unwrap_or(d.lattice_cap),
            max_subgroups: self.max_subgroups.unwrap_or(d.max_subgroups),
            degree_cap: self.degree_cap.unwrap_or(d.degree_cap),
            spin_cap: self.spin_cap.unwrap_or(d.spin_cap),
            search_budget: self.budget.unwrap_or(d.search_budget),
        }
    }
}

fn spec_of(c: &Command) -> Option<&str> {
    match c {
        Command::Analyze { spec }
        | Command::Invgen { spec, .. }
        | Command::Cig { spec }
        | Command::Pcig { spec }
        | Command::Di { spec }
        | Command::Minexp { spec }
        | Command::Frattini { spec }
        | Command::Lattice { spec }
        | Command::SuperCig { spec }
        | Command::PowerCig { spec, .. } => Some(spec),
        Command::LiftCheck { module, .. } => Some(module),
        Command::Eta { spec, .. } => spec.as_deref(),
        Command::Corpus { .. } => None,
    }
}

fn dispatch(c: &Command, limits: &Limits) -> Result<commands::Report, Error> {
    match c {
        Command::Analyze { spec } => commands::analyze(spec, limits),
        Command::Invgen { spec, tuple } => commands::invgen(spec, tuple, limits),
        Command::Cig { spec } => commands::coprime(spec, Coprime::Plain, limits),
        Command::Pcig { spec } => commands::coprime(spec, Coprime::PrimePower, limits),
        Command::Di { spec } => commands::di(spec, limits),
        Command::Minexp { spec } => commands::minexp(spec, limits),
        Command::Frattini { spec } => commands::frattini(spec, limits),
        Command::Lattice { spec } => commands::lattice_report(spec, limits),
        Command::LiftCheck {
            module,
            tuple,
            lift,
            multiplicity,
            verify,
        } => commands::lift_check(module, tuple, lift, *multiplicity, *verify, limits),
        Command::Eta { crowns, spec } => commands::eta(crowns, spec.as_deref(), limits),
        Command::SuperCig { spec } => commands::super_cig(spec, limits),
        Command::PowerCig { spec, aut } => commands::power_cig(spec, aut.as_deref(), limits),
        Command::Corpus { .. } => unreachable!("handled separately"),
    }
}

fn caps_value(l: &Limits) -> Value {
    json!({
        "enumeration_cap": l.enumeration_cap,
        "lattice_cap": l.lattice_cap,
        "max_subgroups": l.max_subgroups,
        "degree_cap": l.degree_cap,
        "spin_cap": l.spin_cap,
        "search_budget": l.search_budget,
    })
}

fn exit_code_for(e: &Error) -> u8 {
    if matches!(e, Error::BudgetExhausted { .. }) {
        2
    } else {
        1
    }
}

fn corpus(only: Option<u32>, opts: &Options, limits: &Limits) -> (Value, u8) {
    let ids: Vec<u32> = match only {
        Some(i) => vec![i],
        None => (1..=12).collect(),
    };
    let start = Instant::now();
    let outcomes: Vec<_> = ids
        .iter()
        .filter(|&&i| (1..=12).contains(&i))
        .map(|&i| acceptance::run_seeded(i, limits, opts.seed))
        .collect();
    let exhausted = outcomes.iter().any(|o| o.error_code == Some("budget_exhausted"));
    let records: Vec<Value> = outcomes
        .iter()
        .map(|o| {
            let mut v = json!({
                "id": o.id,
                "title": o.title,
                "pass": o.pass,
                "detail": o.detail,
                "error_code": o.error_code,
            });
            if !opts.no_timings {
                v["millis"] = json!(o.millis as u64);
            }
            v
        })
        .collect();
    let doc = json!({
        "spec": Value::Null,
        "result": {
            "criteria": records,
            "passed": outcomes.iter().filter(|o| o.pass).count(),
            "total": outcomes.len(),
        },
        "witnesses": Value::Null,
        "timings": timings(opts, start),
        "budget_used": Value::Null,
        "caps": caps_value(limits),
    });
    (doc, if exhausted { 2 } else { 0 })
}

fn timings(opts: &Options, start: Instant) -> Value {
    if opts.no_timings {
        Value::Null
    } else {
        json!({ "total_ms": start.elapsed().as_millis() as u64 })
    }
}

fn render_text(doc: &Value, out: &mut String, prefix: &str) {
    match doc {
        Value::Object(map) => {
            for (k, v) in map {
                let key = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                render_text(v, out, &key);
            }
        }
        Value::Null => {}
        Value::String(s) => out.push_str(&format!("{prefix}: {s}\n")),
        other => out.push_str(&format!("{prefix}: {other}\n")),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let limits = cli.opts.limits();
    let start = Instant::now();
    let (doc, code) = match &cli.command {
        Command::Corpus { only } => corpus(*only, &cli.opts, &limits),
        c => match dispatch(c, &limits) {
            Ok(r) => (
                json!({
                    "spec": spec_of(c),
                    "result": r.result,
                    "witnesses": r.witnesses,
                    "timings": timings(&cli.opts, start),
                    "budget_used": r.budget_used,
                    "caps": caps_value(&limits),
                }),
                0,
            ),
            Err(e) => (
                json!({
                    "spec": spec_of(c),
                    "error": { "code": e.code(), "message": e.to_string() },
                    "caps": caps_value(&limits),
                }),
                exit_code_for(&e),
            ),
        },
    };
    match cli.opts.format {
        Format::Json => println!("{}", serde_json::to_string_pretty(&doc).expect("serializable")),
        Format::Text => {
            let mut s = String::new();
            render_text(&doc, &mut s, "");
            print!("{s}");
        }
    }
    ExitCode::from(code)
}
