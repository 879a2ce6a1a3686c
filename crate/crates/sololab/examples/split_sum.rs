//! Checks that the dispatcher's table equals, exactly, the weighted
//! sum of the tables of every machine whose codeword fits the budget.

use sololab::enumeration::machine_count_for_code_len;
use sololab::mixture::split_sum_check;
use sololab::semimeasure::Budget;

fn main() {
    let budget = Budget::new(7, 48);
    let count = machine_count_for_code_len(budget.max_len) as usize;
    println!(
        "budget: max_len {}, fuel {}; {count} machines fit",
        budget.max_len, budget.fuel
    );

    let report = split_sum_check(3, budget, count);
    for row in &report.rows {
        println!(
            "  {:>3}  dispatcher {:<12} mixture {:<12} {}",
            row.x.display_or_epsilon(),
            row.left.to_string(),
            row.right.to_string(),
            if row.equal { "equal" } else { "DIFFER" },
        );
    }
    println!("identity {}", if report.passed { "holds" } else { "fails" });
}
