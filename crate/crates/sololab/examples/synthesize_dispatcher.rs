//! Turns a weight scheme into a working dispatcher: weights decompose
//! into codeword lengths, lengths become a prefix-free dispatch table,
//! and the dispatcher's semimeasure equals the weighted mixture.

use sololab::bits::BitString;
use sololab::dyadic::DyadicRational;
use sololab::kraft::{decompose_weights, synthesize_universal, verify_synthesis};
use sololab::mixture::WeightScheme;
use sololab::semimeasure::Budget;

fn parse(text: &str) -> DyadicRational {
    text.parse().unwrap()
}

fn main() {
    let scheme = WeightScheme::new(vec![
        parse("1/2"),
        parse("5/64"),
        parse("1/4"),
        parse("3/128"),
    ])
    .unwrap();

    println!("weights split into powers of two:");
    let decomposition = decompose_weights(&scheme);
    for (i, lengths) in decomposition.lengths().iter().enumerate() {
        println!(
            "  machine {i}: weight {:<6} lengths {lengths:?}",
            scheme.weight(i).to_string()
        );
    }

    let dispatcher = synthesize_universal(&scheme).unwrap();
    println!("\ndispatch table:");
    for entry in dispatcher.dispatch_table() {
        println!(
            "  {:<7} -> machine {}",
            entry.codeword.to_string(),
            entry.machine
        );
    }

    let input: BitString = "0".parse().unwrap();
    println!("\nrunning the dispatcher on 0 (machine 0 never emits):");
    println!("  {}", dispatcher.run(&input, 10));

    let budget = Budget::new(8, 48);
    let report = verify_synthesis(&scheme, 3, budget).unwrap();
    println!(
        "\ntabulated dispatcher vs mixture at depth 3: {}",
        if report.passed {
            "equal on every nonempty string"
        } else {
            "DIFFER"
        },
    );
}
