//! Runs every verification suite on its default corpus.
//!
//! Pass suite names as arguments to run a subset.

use skewsort::verify::{run_suite, SuiteParams, SUITES};

fn main() -> skewsort::Result<()> {
    let only: Vec<String> = std::env::args().skip(1).collect();
    for name in SUITES.iter().filter(|n| only.is_empty() || only.iter().any(|o| o == *n)) {
        let r = run_suite(name, &SuiteParams::default())?;
        println!("{:<18} {:<11} {:>7} instances  {} violations", r.suite, r.verdict.to_string(), r.instances, r.violations.len());
        for e in &r.extrema {
            println!("    {:<40} {:>12.6}  at {}", e.name, e.value_approx, e.at);
        }
    }
    Ok(())
}
