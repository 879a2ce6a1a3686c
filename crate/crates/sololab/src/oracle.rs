//! Brute-force reference implementations. These favor obviousness
//! over speed and share no code paths with the engine they check:
//! program search by running every input string, and prefix-code
//! feasibility by exhaustive tree placement.

use std::collections::HashMap;

use crate::bits::BitString;
use crate::dyadic::DyadicRational;
use crate::tm::{run, Machine};

/// Minimal programs by exhaustive enumeration: run the machine on
/// every input of length up to `max_len`, keep those whose output
/// extends `target`, and drop any with a shorter kept prefix.
pub fn naive_minimal_programs<M: Machine>(
    machine: &M,
    target: &BitString,
    max_len: u64,
    fuel: u64,
) -> Vec<BitString> {
    let limit = usize::try_from(max_len).unwrap_or(usize::MAX);
    let mut hits: Vec<BitString> = Vec::new();
    for p in BitString::all_up_to_len(limit) {
        if target.is_prefix_of(&run(machine, &p, fuel).output) {
            hits.push(p);
        }
    }
    hits.iter()
        .filter(|p| !hits.iter().any(|q| q.len() < p.len() && q.is_prefix_of(p)))
        .cloned()
        .collect()
}

/// Brute-force output weight: the mass `2^-len` of each naive minimal
/// program, summed exactly.
pub fn naive_value<M: Machine>(
    machine: &M,
    target: &BitString,
    max_len: u64,
    fuel: u64,
) -> DyadicRational {
    naive_minimal_programs(machine, target, max_len, fuel)
        .iter()
        .map(|p| DyadicRational::pow2_neg(p.len() as u64))
        .sum()
}

fn strip_root(counts: &[u32]) -> Vec<u32> {
    let mut shifted: Vec<u32> = counts[1..].to_vec();
    while shifted.last() == Some(&0) {
        shifted.pop();
    }
    shifted
}

fn fits(depth: usize, counts: &[u32], memo: &mut HashMap<(usize, Vec<u32>), bool>) -> bool {
    if counts.iter().all(|&c| c == 0) {
        return true;
    }
    if counts.first().is_some_and(|&c| c > 0) {
        return counts[0] == 1 && counts.iter().skip(1).all(|&c| c == 0);
    }
    if depth == 0 {
        return false;
    }
    let key = (depth, counts.to_vec());
    if let Some(&known) = memo.get(&key) {
        return known;
    }
    // Split every length class between the two subtrees; each length
    // drops by one below the root.
    let mut left = vec![0u32; counts.len()];
    let answer = loop {
        let right: Vec<u32> = counts.iter().zip(&left).map(|(c, l)| c - l).collect();
        if fits(depth - 1, &strip_root(&left), memo) && fits(depth - 1, &strip_root(&right), memo) {
            break true;
        }
        let mut pos = 0;
        loop {
            if pos == counts.len() {
                break;
            }
            if left[pos] < counts[pos] {
                left[pos] += 1;
                break;
            }
            left[pos] = 0;
            pos += 1;
        }
        if pos == counts.len() {
            break false;
        }
    };
    memo.insert(key, answer);
    answer
}

/// Whether prefix-free codewords with exactly these lengths exist, by
/// exhaustively trying every placement in the code tree.
pub fn kraft_feasible(lengths: &[u64]) -> bool {
    let Some(&max) = lengths.iter().max() else {
        return true;
    };
    let max = usize::try_from(max).expect("oracle lengths stay small");
    let mut counts = vec![0u32; max + 1];
    for &l in lengths {
        counts[l as usize] += 1;
    }
    fits(max, &counts, &mut HashMap::new())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::samples::{copier, emitter_of};
    use proptest::prelude::*;

    fn bs(text: &str) -> BitString {
        text.parse().unwrap()
    }

    #[test]
    fn copier_needs_exact_bits_and_fuel() {
        let m = copier();
        assert_eq!(naive_minimal_programs(&m, &bs("10"), 5, 4), vec![bs("10")]);
        assert_eq!(
            naive_minimal_programs(&m, &bs("10"), 5, 3),
            Vec::<BitString>::new()
        );
        assert_eq!(
            naive_minimal_programs(&m, &bs("10"), 1, 100),
            Vec::<BitString>::new()
        );
        assert_eq!(naive_value(&m, &bs("10"), 5, 4), "1/4".parse().unwrap());
    }

    #[test]
    fn emitter_has_the_empty_minimal_program() {
        let m = emitter_of(false);
        assert_eq!(
            naive_minimal_programs(&m, &bs("00"), 3, 10),
            vec![BitString::new()]
        );
        assert_eq!(
            naive_minimal_programs(&m, &bs("1"), 3, 10),
            Vec::<BitString>::new()
        );
        assert_eq!(naive_value(&m, &bs("00"), 3, 10), DyadicRational::one());
    }

    #[test]
    fn empty_target_is_reached_by_the_empty_program() {
        for fuel in [0, 5] {
            let programs = naive_minimal_programs(&copier(), &BitString::new(), 4, fuel);
            assert_eq!(programs, vec![BitString::new()]);
        }
    }

    #[test]
    fn feasibility_matches_hand_checked_multisets() {
        let yes: &[&[u64]] = &[
            &[],
            &[0],
            &[1, 1],
            &[1, 2, 3, 3],
            &[1, 2, 2],
            &[2, 2, 2, 2],
            &[3, 3, 3, 3, 3, 3, 3, 3],
            &[5],
        ];
        let no: &[&[u64]] = &[
            &[0, 5],
            &[0, 0],
            &[1, 1, 1],
            &[1, 2, 2, 2],
            &[2, 2, 2, 2, 2],
            &[1, 1, 5],
        ];
        for lengths in yes {
            assert!(kraft_feasible(lengths), "{lengths:?} should fit");
        }
        for lengths in no {
            assert!(!kraft_feasible(lengths), "{lengths:?} should not fit");
        }
    }

    proptest! {
        #[test]
        fn feasibility_is_exactly_the_mass_bound(
            lengths in prop::collection::vec(1u64..=5, 0..=10)
        ) {
            let mass: DyadicRational =
                lengths.iter().map(|&k| DyadicRational::pow2_neg(k)).sum();
            prop_assert_eq!(kraft_feasible(&lengths), mass <= DyadicRational::one());
        }
    }
}
