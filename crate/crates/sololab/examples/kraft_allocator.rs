//! Issues prefix-free codewords online with the interval allocator,
//! watching the free intervals evolve and exhausting the code space.

use sololab::kraft::KraftAllocator;

fn main() {
    let mut allocator = KraftAllocator::new();
    println!("requesting lengths 1, 2, 4, 4, 3:");
    for len in [1u64, 2, 4, 4, 3] {
        let word = allocator.request(len).unwrap();
        let free: Vec<String> = allocator
            .free_intervals()
            .iter()
            .map(|w| w.to_string())
            .collect();
        println!("  got {word:<5} free intervals: [{}]", free.join(", "));
    }
    println!(
        "issued mass {}  free mass {}",
        allocator.issued_mass(),
        allocator.free_mass()
    );

    println!("\noverfilling fails at the first infeasible request:");
    let mut tight = KraftAllocator::new();
    for len in [1u64, 1, 1] {
        match tight.request(len) {
            Ok(word) => println!("  got {word}"),
            Err(e) => println!("  {e}"),
        }
    }
}
