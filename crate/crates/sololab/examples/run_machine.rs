//! Runs a hand-built machine and a hand-written machine file on
//! input prefixes under different fuel budgets, showing how output
//! grows with input and fuel.

use sololab::bits::BitString;
use sololab::format::{parse_machine, render_machine};
use sololab::samples::copier;
use sololab::tm::run;

fn main() {
    let echo = copier();
    println!("the copier reads a bit, then replays it:");
    for (input, fuel) in [("", 8), ("101", 3), ("101", 8), ("101", 64)] {
        let bits: BitString = input.parse().unwrap();
        let result = run(&echo, &bits, fuel);
        println!(
            "  input {:<3} fuel {:>2} -> {result}",
            bits.display_or_epsilon(),
            fuel
        );
    }

    let text = "\
states 2
0 0 -> noread (B S 0 1)
0 1 -> noread (B S 0 1)
0 B -> noread (B S 0 1)
1 0 -> noread (B S 1 H)
1 1 -> noread (B S 1 H)
1 B -> noread (B S 1 H)
";
    let two_shot = parse_machine(text).unwrap();
    println!("\na machine file that emits 01 and halts, reading nothing:");
    print!("{}", render_machine(&two_shot));
    println!("  -> {}", run(&two_shot, &BitString::new(), 16));
}
