//! Runs one seeded corpus suite and prints its JSON-lines report.

use univgraph::corpus::{run_suite, RunConfig, Suite};

fn main() {
    let suite: Suite = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(Suite::Tutte);
    let report = run_suite(
        suite,
        &RunConfig {
            seed: 7,
            ..RunConfig::default()
        },
    );
    print!("{}", report.to_jsonl());
    eprintln!("{suite}: {}/{} passed", report.summary.passed, report.summary.instances);
}
