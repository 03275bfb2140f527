//! Batch scenarios with expectations, and the built-in suites.
//!
//! $ cargo run --example scenario

use lim1::scenario::{run_scenarios, run_suite, Scenario};

fn main() -> lim1::Result<()> {
    let scenarios = Scenario::parse_many(include_str!("../data/scenarios.json"))?;
    let report = run_scenarios(&scenarios)?;
    println!("{report}");

    let suite = run_suite("paper-examples", 0)?;
    println!("{suite}");
    println!("{}", report.to_json().lines().take(12).collect::<Vec<_>>().join("\n"));
    Ok(())
}
