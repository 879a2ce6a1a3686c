//! Cross-module identities beyond the acceptance gate: the split-sum
//! equality under budgets that reach input-reading machines, synthesis
//! exactness across budgets, and agreement between the streaming
//! dispatcher and a dispatcher synthesized from its own weights.

use sololab::bits::BitString;
use sololab::dyadic::DyadicRational;
use sololab::enumeration::{kraft_partial_sum, machine_count_for_code_len, UniversalMachine};
use sololab::kraft::{synthesize_universal, verify_synthesis};
use sololab::mixture::{mixture_value, split_sum_check, IdentityReport, WeightScheme};
use sololab::semimeasure::{tabulate, Budget};

fn dy(text: &str) -> DyadicRational {
    text.parse().unwrap()
}

#[test]
fn split_sum_holds_once_reading_machines_get_usable_budgets() {
    // max_len 13 covers 127 machines; the input readers starting at
    // index 27 keep 2 to 4 bits of program after their codewords.
    let budget = Budget::new(13, 96);
    let count = machine_count_for_code_len(budget.max_len) as usize;
    assert_eq!(count, 127);
    let report = split_sum_check(3, budget, count);
    assert!(
        report.passed,
        "discrepancies: {:?}",
        report.discrepancies().collect::<Vec<_>>()
    );
}

#[test]
fn synthesis_identity_is_exact_at_unrelated_budgets() {
    let scheme = WeightScheme::new(vec![dy("3/4"), dy("1/8"), dy("1/16"), dy("1/32")]).unwrap();
    for budget in [Budget::new(9, 64), Budget::new(6, 24), Budget::new(2, 10)] {
        let report = verify_synthesis(&scheme, 3, budget).unwrap();
        assert!(report.passed, "budget {budget:?}");
    }
}

#[test]
fn synthesized_default_dispatcher_equals_the_streaming_one() {
    // Codeword lengths are odd, so caps 7 and 8 cover the same 15
    // machines and the two dispatchers accept identical programs.
    let scheme = WeightScheme::dispatcher_default(15);
    let synthesized = synthesize_universal(&scheme).unwrap();
    for max_len in [7, 8] {
        let budget = Budget::new(max_len, 48);
        let report = IdentityReport::from_tables(
            &tabulate(&synthesized, 3, budget),
            &tabulate(&UniversalMachine, 3, budget),
        );
        assert!(report.passed, "max_len {max_len}");
    }

    // At cap 9 the streaming dispatcher reaches machines 15..30 that
    // the 15-entry table cannot, so it weakly exceeds it everywhere.
    let budget = Budget::new(9, 48);
    let small = tabulate(&synthesized, 3, budget);
    let full = tabulate(&UniversalMachine, 3, budget);
    for (x, value) in small.iter() {
        assert!(value <= full.value(x));
    }
    let report = IdentityReport::from_tables(&small, &full);
    assert!(!report.passed);
}

#[test]
fn root_mixture_mass_is_the_covered_kraft_sum() {
    for max_len in [1u64, 3, 5, 7, 11] {
        let count = machine_count_for_code_len(max_len);
        let scheme = WeightScheme::dispatcher_default(count as usize);
        let value = mixture_value(&scheme, &BitString::new(), Budget::new(max_len, 16));
        assert_eq!(value, kraft_partial_sum(count), "max_len {max_len}");
    }
}
