//! Tabulates a machine's budgeted semimeasure: minimal programs for
//! one target, single values, a whole table as CSV, and growth of the
//! approximation as the budget rises.

use sololab::bits::BitString;
use sololab::samples::copier;
use sololab::semimeasure::{approx_value, minimal_programs, tabulate, Budget};

fn main() {
    let echo = copier();
    let budget = Budget::new(6, 48);

    let target: BitString = "01".parse().unwrap();
    println!("minimal programs of the copier reaching {target}:");
    for p in minimal_programs(&echo, &target, budget) {
        println!("  {}", p.display_or_epsilon());
    }

    println!("\nvalue on 01: {}", approx_value(&echo, &target, budget));

    println!("\nfull table to depth 2:");
    print!("{}", tabulate(&echo, 2, budget).to_csv());

    println!("\nroot-to-leaf mass never grows as budgets shrink:");
    for (max_len, fuel) in [(1u64, 2u64), (2, 4), (3, 6)] {
        let v = approx_value(&echo, &"011".parse().unwrap(), Budget::new(max_len, fuel));
        println!("  max_len {max_len} fuel {fuel}: value(011) = {v}");
    }
}
