//! Online prefix-code allocation, exact decomposition of dyadic
//! weights into codeword lengths, and synthesis of a dispatcher that
//! realizes any valid weight scheme.
//!
//! The allocator views a codeword of length `k` as the dyadic interval
//! of size `2^-k` it spans in `[0, 1)`. Free space is a list of
//! disjoint intervals kept in position order; a request takes the
//! leftmost free interval large enough and splits it, which keeps the
//! free sizes strictly increasing to the right. The sizes are then
//! distinct powers of two, so when no free interval is large enough
//! the whole free mass is still below the requested size: a request
//! fails exactly when granting it would push the issued mass past 1.
//! Issued codewords never move, so the protocol is online.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigUint;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::bits::BitString;
use crate::dyadic::DyadicRational;
use crate::enumeration::decode_machine;
use crate::mixture::{IdentityReport, WeightScheme};
use crate::semimeasure::{sum_value_maps, tabulate, ApproxTable, Budget};
use crate::tm::{Machine, MachineSpec, RunResult, SpecState, Step};

#[derive(Debug, Error, PartialEq, Eq)]
#[error("no room for a {requested}-bit codeword; free mass is {free_mass}")]
pub struct KraftExhausted {
    pub requested: u64,
    pub free_mass: DyadicRational,
}

/// Issues prefix-free codewords of requested lengths until the unit
/// of code space runs out.
#[derive(Clone, Debug, Default)]
pub struct KraftAllocator {
    free: Vec<BitString>,
    issued: Vec<BitString>,
}

impl KraftAllocator {
    pub fn new() -> Self {
        KraftAllocator {
            free: vec![BitString::new()],
            issued: Vec::new(),
        }
    }

    /// Issues a codeword of exactly `len` bits, prefix-free against
    /// everything issued before. Fails exactly when the requested
    /// masses so far would exceed 1. A length of 0 claims all of code
    /// space and so succeeds only on a fresh allocator.
    pub fn request(&mut self, len: u64) -> Result<BitString, KraftExhausted> {
        let Some(idx) = self.free.iter().position(|iv| iv.len() as u64 <= len) else {
            return Err(KraftExhausted {
                requested: len,
                free_mass: self.free_mass(),
            });
        };
        let base = self.free.remove(idx);
        let pad = len - base.len() as u64;
        let mut word = base.clone();
        let mut pieces = Vec::with_capacity(pad as usize);
        for j in (0..pad).rev() {
            word.push(false);
            let mut piece = base.clone();
            for _ in 0..j {
                piece.push(false);
            }
            piece.push(true);
            pieces.push(piece);
        }
        self.free.splice(idx..idx, pieces);
        self.issued.push(word.clone());
        Ok(word)
    }

    pub fn issued(&self) -> &[BitString] {
        &self.issued
    }

    pub fn free_intervals(&self) -> &[BitString] {
        &self.free
    }

    pub fn issued_mass(&self) -> DyadicRational {
        self.issued
            .iter()
            .map(|w| DyadicRational::pow2_neg(w.len() as u64))
            .sum()
    }

    pub fn free_mass(&self) -> DyadicRational {
        self.free
            .iter()
            .map(|w| DyadicRational::pow2_neg(w.len() as u64))
            .sum()
    }
}

/// Each weight written as a finite sum of powers of two: the set bits
/// of its binary expansion, as codeword lengths in ascending order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightDecomposition {
    lengths: Vec<Vec<u64>>,
}

impl WeightDecomposition {
    pub fn machine_lengths(&self, i: usize) -> &[u64] {
        &self.lengths[i]
    }

    pub fn lengths(&self) -> &[Vec<u64>] {
        &self.lengths
    }
}

/// Splits every weight into its binary expansion. Exact: summing
/// `2^-k` over a machine's lengths returns its weight. A weight of 1
/// yields the single length 0.
pub fn decompose_weights(scheme: &WeightScheme) -> WeightDecomposition {
    let lengths = scheme
        .weights()
        .iter()
        .map(|w| {
            let mantissa = w.mantissa().magnitude();
            let mut ks: Vec<u64> = (0..mantissa.bits())
                .filter(|&b| mantissa.bit(b))
                .map(|b| w.exponent() - b)
                .collect();
            ks.sort_unstable();
            ks
        })
        .collect();
    WeightDecomposition { lengths }
}

/// One dispatch rule: inputs starting with `codeword` run the machine
/// with that enumeration index.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DispatchEntry {
    pub codeword: BitString,
    pub machine: u64,
}

/// A dispatcher built from a weight scheme: a prefix-free dispatch
/// table maps codewords to machines, decoding costs no fuel, and
/// inputs extending no codeword halt without output.
#[derive(Clone, Debug)]
pub struct SynthesizedUniversal {
    entries: Vec<(BitString, u64, Arc<MachineSpec>)>,
}

/// Requests a codeword for every term of every weight's decomposition,
/// in machine order with each machine's lengths ascending. Cannot fail
/// for a valid scheme, whose total mass is at most 1.
pub fn synthesize_universal(scheme: &WeightScheme) -> Result<SynthesizedUniversal, KraftExhausted> {
    let decomposition = decompose_weights(scheme);
    let mut allocator = KraftAllocator::new();
    let mut entries = Vec::new();
    for (i, ks) in decomposition.lengths().iter().enumerate() {
        let spec = Arc::new(decode_machine(&BigUint::from(i)));
        for &k in ks {
            let codeword = allocator.request(k)?;
            entries.push((codeword, i as u64, Arc::clone(&spec)));
        }
    }
    Ok(SynthesizedUniversal { entries })
}

impl SynthesizedUniversal {
    pub fn dispatch_table(&self) -> Vec<DispatchEntry> {
        self.entries
            .iter()
            .map(|(codeword, machine, _)| DispatchEntry {
                codeword: codeword.clone(),
                machine: *machine,
            })
            .collect()
    }

    pub fn run(&self, input: &BitString, fuel: u64) -> RunResult {
        crate::tm::run(self, input, fuel)
    }
}

#[derive(Clone, Debug)]
pub enum SynthState {
    Matching {
        acc: BitString,
        fuel: u64,
        pending: Option<bool>,
    },
    Running {
        spec: Arc<MachineSpec>,
        inner: SpecState,
    },
    Dead,
}

impl Machine for SynthesizedUniversal {
    type State = SynthState;

    fn boot(&self, fuel: u64) -> SynthState {
        SynthState::Matching {
            acc: BitString::new(),
            fuel,
            pending: None,
        }
    }

    fn advance(&self, st: &mut SynthState) -> Step {
        loop {
            match st {
                SynthState::Matching { acc, fuel, pending } => {
                    if let Some((_, _, spec)) = self.entries.iter().find(|(w, _, _)| w == acc) {
                        let inner = spec.boot(*fuel);
                        *st = SynthState::Running {
                            spec: Arc::clone(spec),
                            inner,
                        };
                        continue;
                    }
                    if !self.entries.iter().any(|(w, _, _)| acc.is_prefix_of(w)) {
                        *st = SynthState::Dead;
                        continue;
                    }
                    match pending.take() {
                        None => return Step::NeedInput,
                        Some(bit) => acc.push(bit),
                    }
                }
                SynthState::Running { spec, inner } => return spec.advance(inner),
                SynthState::Dead => return Step::Halted,
            }
        }
    }

    fn feed(&self, st: &mut SynthState, bit: bool) {
        match st {
            SynthState::Matching { pending, .. } => *pending = Some(bit),
            SynthState::Running { spec, inner } => {
                let spec = Arc::clone(spec);
                spec.feed(inner, bit);
            }
            SynthState::Dead => {}
        }
    }
}

/// The mixture the dispatcher realizes, tabulated term by term: each
/// decomposition length `k` of machine `i` contributes
/// `2^-k * table(machine i, L - k)`. For single-term weights this is
/// the plain mixture table.
pub fn decomposition_mixture_table(
    scheme: &WeightScheme,
    depth: usize,
    budget: Budget,
) -> ApproxTable {
    let decomposition = decompose_weights(scheme);
    let terms: Vec<(u64, u64)> = decomposition
        .lengths()
        .iter()
        .enumerate()
        .flat_map(|(i, ks)| ks.iter().map(move |&k| (i as u64, k)))
        .collect();
    let parts: Vec<BTreeMap<BitString, DyadicRational>> = terms
        .into_par_iter()
        .filter_map(|(i, k)| {
            let max_len = budget.max_len.checked_sub(k)?;
            let machine = decode_machine(&BigUint::from(i));
            let table = tabulate(&machine, depth, Budget::new(max_len, budget.fuel));
            let scale = DyadicRational::pow2_neg(k);
            Some(table.iter().map(|(x, v)| (x.clone(), &scale * v)).collect())
        })
        .collect();
    let values = sum_value_maps(depth, parts);
    ApproxTable::from_values(depth, budget, values).expect("domain is complete by construction")
}

/// Checks that the synthesized dispatcher's table equals the mixture
/// it was built from, term-exactly, on every nonempty string.
pub fn verify_synthesis(
    scheme: &WeightScheme,
    depth: usize,
    budget: Budget,
) -> Result<IdentityReport, KraftExhausted> {
    let dispatcher = synthesize_universal(scheme)?;
    let left = tabulate(&dispatcher, depth, budget);
    let right = decomposition_mixture_table(scheme, depth, budget);
    Ok(IdentityReport::from_tables(&left, &right))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumeration::index_code;
    use crate::mixture::mixture_table;
    use crate::oracle::kraft_feasible;
    use crate::tm::RunStatus;
    use proptest::prelude::*;

    fn bs(text: &str) -> BitString {
        text.parse().unwrap()
    }

    fn dy(text: &str) -> DyadicRational {
        text.parse().unwrap()
    }

    fn assert_invariants(alloc: &KraftAllocator) {
        assert_eq!(
            alloc.issued_mass() + alloc.free_mass(),
            DyadicRational::one()
        );
        for pair in alloc.free_intervals().windows(2) {
            assert!(
                pair[0].len() > pair[1].len(),
                "free sizes must grow rightward"
            );
        }
        let issued = alloc.issued();
        for (a, w) in issued.iter().enumerate() {
            for v in &issued[a + 1..] {
                assert!(!w.is_prefix_of(v) && !v.is_prefix_of(w), "{w:?} vs {v:?}");
            }
        }
    }

    #[test]
    fn the_frozen_request_sequences() {
        let mut alloc = KraftAllocator::new();
        let words: Vec<BitString> = [1, 2, 3, 3]
            .iter()
            .map(|&k| alloc.request(k).unwrap())
            .collect();
        assert_eq!(words, vec![bs("0"), bs("10"), bs("110"), bs("111")]);
        assert_invariants(&alloc);

        let mut alloc = KraftAllocator::new();
        assert_eq!(alloc.request(1).unwrap(), bs("0"));
        assert_eq!(alloc.request(1).unwrap(), bs("1"));
        let err = alloc.request(3).unwrap_err();
        assert_eq!(err.requested, 3);
        assert_eq!(err.free_mass, DyadicRational::zero());
        assert_invariants(&alloc);
    }

    #[test]
    fn zero_length_takes_everything() {
        let mut alloc = KraftAllocator::new();
        assert_eq!(alloc.request(0).unwrap(), BitString::new());
        assert_invariants(&alloc);
        assert!(alloc.request(5).is_err());

        let mut alloc = KraftAllocator::new();
        alloc.request(4).unwrap();
        assert!(alloc.request(0).is_err());
    }

    #[test]
    fn decompositions_are_frozen_and_exact() {
        let scheme =
            WeightScheme::new(vec![dy("1/2"), dy("5/8"), dy("3/128"), dy("1/4")]).unwrap_err();
        assert!(matches!(
            scheme,
            crate::mixture::WeightError::SumAboveOne { .. }
        ));

        let scheme =
            WeightScheme::new(vec![dy("1/2"), dy("5/64"), dy("3/128"), dy("1/4")]).unwrap();
        let decomposition = decompose_weights(&scheme);
        assert_eq!(
            decomposition.lengths(),
            &[vec![1], vec![4, 6], vec![6, 7], vec![2]]
        );
        for (i, ks) in decomposition.lengths().iter().enumerate() {
            let mass: DyadicRational = ks.iter().map(|&k| DyadicRational::pow2_neg(k)).sum();
            assert_eq!(&mass, scheme.weight(i));
        }

        let unit = WeightScheme::new(vec![dy("1")]).unwrap();
        assert_eq!(decompose_weights(&unit).lengths(), &[vec![0]]);
    }

    #[test]
    fn default_scheme_synthesis_reproduces_the_index_code() {
        let scheme = WeightScheme::dispatcher_default(63);
        let dispatcher = synthesize_universal(&scheme).unwrap();
        let table = dispatcher.dispatch_table();
        assert_eq!(table.len(), 63);
        for (i, entry) in table.iter().enumerate() {
            assert_eq!(entry.machine, i as u64);
            assert_eq!(entry.codeword, index_code(&BigUint::from(i)), "machine {i}");
        }
    }

    #[test]
    fn unit_weight_dispatcher_is_the_machine_itself() {
        let scheme = WeightScheme::new(vec![dy("1")]).unwrap();
        let dispatcher = synthesize_universal(&scheme).unwrap();
        assert_eq!(
            dispatcher.dispatch_table(),
            vec![DispatchEntry {
                codeword: BitString::new(),
                machine: 0
            }]
        );
        // Machine 0 reads nothing and never halts or emits.
        let r = dispatcher.run(&bs("101"), 9);
        assert_eq!(r.output, BitString::new());
        assert_eq!(r.consumed, 0);
        assert_eq!(r.status, RunStatus::FuelExhausted);
    }

    #[test]
    fn unmatched_inputs_halt_without_output() {
        // 3/4 = 1/2 + 1/4 over one machine: codewords "0" and "10".
        let scheme = WeightScheme::new(vec![dy("3/4")]).unwrap();
        let dispatcher = synthesize_universal(&scheme).unwrap();
        let r = dispatcher.run(&bs("11"), 50);
        assert_eq!(r.output, BitString::new());
        assert_eq!(r.status, RunStatus::Halted);
        assert_eq!(r.consumed, 2);
    }

    #[test]
    fn synthesis_matches_its_mixture_for_the_default_scheme() {
        let budget = Budget::new(7, 32);
        let scheme = WeightScheme::dispatcher_default(15);
        let report = verify_synthesis(&scheme, 2, budget).unwrap();
        assert!(report.passed);
        // Single-term weights: the decomposition mixture is the plain one.
        let plain = mixture_table(&scheme, 2, budget);
        let decomposed = decomposition_mixture_table(&scheme, 2, budget);
        assert_eq!(plain, decomposed);
    }

    #[test]
    fn synthesis_matches_its_mixture_for_a_multi_term_scheme() {
        let scheme = WeightScheme::new(vec![
            dy("1/2"),
            dy("1/8"),
            dy("1/8"),
            dy("1/16"),
            dy("1/32"),
            dy("5/64"),
            dy("3/128"),
            dy("3/128"),
        ])
        .unwrap();
        let report = verify_synthesis(&scheme, 2, Budget::new(7, 32)).unwrap();
        assert!(
            report.passed,
            "discrepancies: {:?}",
            report.discrepancies().collect::<Vec<_>>()
        );
    }

    proptest! {
        #[test]
        fn random_request_sequences_succeed_exactly_when_feasible(
            lengths in prop::collection::vec(0u64..=6, 1..=20)
        ) {
            let mut alloc = KraftAllocator::new();
            let mut asked: Vec<u64> = Vec::new();
            for &k in &lengths {
                asked.push(k);
                let outcome = alloc.request(k);
                assert_invariants(&alloc);
                let feasible = kraft_feasible(&asked);
                prop_assert_eq!(outcome.is_ok(), feasible);
                if let Ok(word) = outcome {
                    prop_assert_eq!(word.len() as u64, k);
                } else {
                    asked.pop();
                }
            }
        }
    }
}
