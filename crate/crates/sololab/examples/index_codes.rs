//! Shows the self-delimiting index code, its Kraft mass, and how many
//! machines fit under a codeword-length cap.

use num_bigint::BigUint;
use sololab::enumeration::{
    index_code, index_code_len, kraft_partial_sum, machine_count_for_code_len, read_index_code,
};

fn main() {
    println!("codewords are 1^k 0 s where binary(i+1) = 1s:");
    for i in [0u32, 1, 2, 3, 7, 15, 62] {
        let index = BigUint::from(i);
        println!(
            "  code({i}) = {} ({} bits)",
            index_code(&index),
            index_code_len(&index)
        );
    }

    let word = "11000110".parse().unwrap();
    let (index, used) = read_index_code(&word).unwrap();
    println!("\nreading {word} consumes {used} bits and yields index {index}");

    println!("\nKraft mass of all codewords below each count:");
    for count in [1u64, 10, 100, 1000] {
        println!("  first {count:>4}: {}", kraft_partial_sum(count));
    }

    println!("\nmachines whose codeword fits under a length cap:");
    for cap in [1u64, 3, 7, 11] {
        println!(
            "  len <= {cap:>2}: {} machines",
            machine_count_for_code_len(cap)
        );
    }
}
