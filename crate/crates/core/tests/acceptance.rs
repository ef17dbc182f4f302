use cig_core::acceptance;
use cig_core::Limits;

/// Criteria that cannot hold as stated. The `(C2xC2):D12` group of
/// criterion 6 is `Sym(4) x C2` (the centre of `D12` is a direct factor
/// acting trivially), so its Frattini subgroup is trivial and the quotient
/// has order 48, not 24. The check still runs and must keep failing.
const KNOWN_FAILURES: &[u32] = &[6];

// Runs without the libtest harness so the PASS/FAIL lines are never captured.
fn main() {
    let limits = Limits::default();
    let only: Option<u32> = std::env::var("CIG_ONLY").ok().and_then(|s| s.parse().ok());
    let mut failed = Vec::new();
    for id in (1..=12).filter(|i| only.is_none_or(|o| o == *i)) {
        let o = acceptance::run(id, &limits);
        let verdict = if o.pass { "PASS" } else { "FAIL" };
        println!("{verdict} {:>2} {} ({} ms): {}", o.id, o.title, o.millis, o.detail);
        if !o.pass {
            failed.push(o.id);
        }
    }
    let expected: Vec<u32> = KNOWN_FAILURES
        .iter()
        .copied()
        .filter(|i| only.is_none_or(|o| o == *i))
        .collect();
    if failed != expected {
        eprintln!("failing criteria {failed:?} differ from the documented set {expected:?}");
        std::process::exit(1);
    }
    println!("acceptance: failing set {failed:?} matches the documented set");
}
