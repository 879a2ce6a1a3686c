//! Shows the dispatcher dominating individual machines: its table
//! stays above each machine's table scaled by the machine's weight,
//! with the machine tabulated at a codeword-shortened budget.

use sololab::mixture::dominance_check;
use sololab::semimeasure::Budget;

fn main() {
    let budget = Budget::new(7, 48);
    for j in [0u64, 2, 3, 5, 6, 14] {
        let report = dominance_check(j, 2, budget).unwrap();
        println!(
            "machine {j}: constant {} -> {}",
            report.constant,
            if report.passed {
                "dominated"
            } else {
                "VIOLATED"
            },
        );
    }

    let report = dominance_check(3, 2, budget).unwrap();
    println!("\nrows for machine 3 (emits 0, halts):");
    for row in &report.rows {
        println!(
            "  {:>2}  dispatcher {:<8} scaled machine {}",
            row.x.display_or_epsilon(),
            row.dominant.to_string(),
            row.scaled,
        );
    }

    println!("\nmachines whose codeword is over the cap are rejected:");
    println!("  {}", dominance_check(40, 2, budget).unwrap_err());
}
