//! Compares the branching program-tree search against brute-force
//! enumeration of every input, and shows why minimal programs form a
//! prefix-free set.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use sololab::bits::BitString;
use sololab::oracle::{naive_minimal_programs, naive_value};
use sololab::samples::{copier, random_spec};
use sololab::semimeasure::{approx_value, minimal_programs, Budget};

fn main() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let budget = Budget::new(8, 40);
    let target: BitString = "10".parse().unwrap();

    println!("the copier reaches 10 on exactly one minimal program:");
    for p in minimal_programs(&copier(), &target, budget) {
        println!(
            "  {} with mass {}",
            p,
            approx_value(&copier(), &target, budget)
        );
    }

    println!("\ntree search vs all 2^8 inputs, on five random machines:");
    for case in 0..5 {
        let spec = random_spec(&mut rng, 3);
        let fast = minimal_programs(&spec, &target, budget);
        let slow = naive_minimal_programs(&spec, &target, budget.max_len, budget.fuel);
        assert_eq!(fast, slow);
        println!(
            "  machine {case}: {} minimal programs, value(10) = {}",
            fast.len(),
            approx_value(&spec, &target, budget),
        );
        assert_eq!(
            approx_value(&spec, &target, budget),
            naive_value(&spec, &target, budget.max_len, budget.fuel),
        );
        for (a, p) in fast.iter().enumerate() {
            for q in fast.iter().skip(a + 1) {
                assert!(!p.is_prefix_of(q) && !q.is_prefix_of(p));
            }
        }
    }
    println!("searches agree and every program set is prefix-free");
}
