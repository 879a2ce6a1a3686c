//! Walks the canonical machine enumeration: decodes small indexes,
//! runs them, and round-trips a machine back to its index.

use num_bigint::BigUint;
use sololab::bits::BitString;
use sololab::enumeration::{decode_machine, encode_machine};
use sololab::tm::run;

fn main() {
    println!("the first six machines, run with no input and fuel 6:");
    for i in 0u32..6 {
        let spec = decode_machine(&BigUint::from(i));
        let result = run(&spec, &BitString::new(), 6);
        println!("  machine {i}: {} state(s), {result}", spec.num_states());
    }

    println!("\nmachine 50 writes a blank, stays, emits 0, loops:");
    let spec = decode_machine(&BigUint::from(50u32));
    println!("  {}", run(&spec, &BitString::new(), 5));

    let index = encode_machine(&spec);
    println!("  encoding it back gives index {index}");

    println!("\nlevel sizes: 1-state machines occupy indexes 0..2970,");
    let first_two_state = decode_machine(&BigUint::from(2970u32));
    println!(
        "  machine 2970 is the first with {} states",
        first_two_state.num_states()
    );
}
