//! Run every theorem suite over many freshly generated sites and print a
//! summary line per suite. Usage: `suite_stress [count] [seed]`.

use disjoint_kit::suites::{run_causal_suites, run_chiral_suites};

fn main() {
    let count: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(200);
    let seed: u64 = std::env::args().nth(2).and_then(|s| s.parse().ok()).unwrap_or(1);
    let mut failed = false;
    for reports in [run_causal_suites(seed, count), run_chiral_suites(seed, count)] {
        for r in &reports {
            println!(
                "{:40} instances={:4} checks={:7} counterexamples={}",
                r.name,
                r.instances,
                r.checks,
                r.counterexamples.len()
            );
            for c in r.counterexamples.iter().take(3) {
                println!("   {c}");
            }
            failed |= !r.passed();
        }
    }
    if failed {
        std::process::exit(1);
    }
}
