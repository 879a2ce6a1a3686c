//! Builds the halved-root transform over a small mixture: it still
//! dominates every covered machine at half the constant, yet its root
//! gap is exactly zero, so no gap floor admits it as a mixture.

use num_bigint::BigUint;
use sololab::bits::BitString;
use sololab::dyadic::DyadicRational;
use sololab::enumeration::{index_code_len, machine_count_for_code_len};
use sololab::gap::{delta_prime_dominance_check, gap_report, make_delta_prime};
use sololab::mixture::{mixture_table, WeightScheme};
use sololab::semimeasure::Budget;

fn main() {
    let budget = Budget::new(7, 48);
    let count = machine_count_for_code_len(budget.max_len) as usize;
    let scheme = WeightScheme::dispatcher_default(count);
    let base = mixture_table(&scheme, 3, budget);
    println!(
        "base mixture over {count} machines: root gap {}",
        base.gap(&BitString::new())
    );

    let delta_prime = make_delta_prime(&base);
    println!(
        "after the transform:            root gap {}",
        delta_prime.gap(&BitString::new())
    );

    let c: DyadicRational = "1/4".parse().unwrap();
    let report = gap_report(&delta_prime, &c);
    for row in report.flagged() {
        println!(
            "  flagged {:>2}: value {} gap {} floor {}",
            row.x.display_or_epsilon(),
            row.value,
            row.gap,
            row.bound,
        );
    }
    println!(
        "not a universal mixture: {}",
        report.not_a_universal_mixture()
    );

    println!("\nhalved constants still dominate every covered machine:");
    for j in 0..count as u64 {
        if index_code_len(&BigUint::from(j)) > budget.max_len {
            continue;
        }
        let dominance = delta_prime_dominance_check(&scheme, j, 3, budget).unwrap();
        assert!(dominance.passed, "machine {j}");
    }
    println!("  all {count} pass at depth 3");
}
