//! A total enumeration of machine tables and the self-delimiting index
//! code that lets a single dispatcher run all of them.
//!
//! Machines are numbered level by level: every one-state machine, then
//! every two-state machine, and so on. Within a level the transition
//! table is read as a number in a mixed radix over its entries, so
//! indices and tables are in exact bijection both ways.
//!
//! The index code writes `i` as `1^k 0 s`, where the binary form of
//! `i + 1` is `1 s` and `k` is the length of `s`. The code is prefix
//! free, has length `2k + 1`, and its weights `2^-len` sum to exactly
//! 1 over all indices.
//!
//! The dispatcher decodes an index code from its input without
//! spending any fuel, then runs the decoded machine with the whole
//! budget. Charging nothing for the decode keeps budget accounting
//! exact: a dispatcher program of length at most `L` for machine `i`
//! is precisely an `i`-program of length at most `L - len(code(i))`
//! run with the same fuel.

use std::sync::Arc;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::bits::BitString;
use crate::dyadic::DyadicRational;
use crate::tm::{
    Action, Machine, MachineSpec, Move, Next, RunResult, SpecState, Step, SubAction, WorkSym,
};

/// Sub actions available per table entry of an `n`-state machine:
/// 3 writes, 3 moves, 3 emits, `n + 1` continuations.
fn sub_count(n: u32) -> u64 {
    27 * (n as u64 + 1)
}

/// Actions per table entry: one `NoRead` per sub action plus one
/// `Read` per ordered pair of sub actions.
fn action_count(n: u32) -> u128 {
    let s = sub_count(n) as u128;
    s + s * s
}

/// Number of `n`-state machines: one action per table entry.
fn level_count(n: u32) -> BigUint {
    BigUint::from(action_count(n)).pow(3 * n)
}

fn sub_from_index(idx: u64, n: u32) -> SubAction {
    let next_mod = n as u64 + 1;
    let next = idx % next_mod;
    let rest = idx / next_mod;
    let emit = match rest % 3 {
        0 => None,
        1 => Some(false),
        _ => Some(true),
    };
    let rest = rest / 3;
    let mv = Move::ALL[(rest % 3) as usize];
    let write = WorkSym::ALL[(rest / 3) as usize];
    let next = if next == n as u64 {
        Next::Halt
    } else {
        Next::State(next as u32)
    };
    SubAction {
        write,
        mv,
        emit,
        next,
    }
}

fn sub_to_index(sub: &SubAction, n: u32) -> u64 {
    let next = match sub.next {
        Next::State(s) => s as u64,
        Next::Halt => n as u64,
    };
    let emit = match sub.emit {
        None => 0,
        Some(false) => 1,
        Some(true) => 2,
    };
    let packed = (sub.write.index() as u64 * 3 + sub.mv.index() as u64) * 3 + emit;
    packed * (n as u64 + 1) + next
}

fn action_from_digit(digit: u128, n: u32) -> Action {
    let s = sub_count(n) as u128;
    if digit < s {
        Action::NoRead(sub_from_index(digit as u64, n))
    } else {
        let e = digit - s;
        Action::Read {
            on_zero: sub_from_index((e / s) as u64, n),
            on_one: sub_from_index((e % s) as u64, n),
        }
    }
}

fn action_to_digit(action: &Action, n: u32) -> u128 {
    let s = sub_count(n) as u128;
    match action {
        Action::NoRead(sub) => sub_to_index(sub, n) as u128,
        Action::Read { on_zero, on_one } => {
            s + sub_to_index(on_zero, n) as u128 * s + sub_to_index(on_one, n) as u128
        }
    }
}

/// Returns machine number `index`. Total: every natural number names a
/// machine, and `encode_machine` inverts this exactly.
pub fn decode_machine(index: &BigUint) -> MachineSpec {
    let mut rest = index.clone();
    let mut n: u32 = 1;
    loop {
        let count = level_count(n);
        if rest < count {
            break;
        }
        rest -= count;
        n += 1;
    }
    let radix = BigUint::from(action_count(n));
    let entries = 3 * n as usize;
    let mut digits = vec![0u128; entries];
    for d in digits.iter_mut().rev() {
        let (q, r) = rest.div_rem(&radix);
        *d = u128::try_from(&r).expect("digit below the level radix");
        rest = q;
    }
    let actions = digits.iter().map(|&d| action_from_digit(d, n)).collect();
    MachineSpec::new(n, actions).expect("enumeration yields well formed tables")
}

/// Returns the machine's number in the enumeration.
pub fn encode_machine(spec: &MachineSpec) -> BigUint {
    let n = spec.num_states();
    let mut offset = BigUint::zero();
    for level in 1..n {
        offset += level_count(level);
    }
    let radix = BigUint::from(action_count(n));
    let mut within = BigUint::zero();
    for action in spec.actions() {
        within = within * &radix + BigUint::from(action_to_digit(action, n));
    }
    offset + within
}

/// Self-delimiting code for a machine index: `1^k 0 s` with
/// `binary(index + 1) = 1 s`.
pub fn index_code(index: &BigUint) -> BitString {
    let succ = index + 1u32;
    let k = succ.bits() - 1;
    let mut out = BitString::new();
    for _ in 0..k {
        out.push(true);
    }
    out.push(false);
    for pos in (0..k).rev() {
        out.push(succ.bit(pos));
    }
    out
}

/// Length of `index_code(index)` without building it: `2k + 1`.
pub fn index_code_len(index: &BigUint) -> u64 {
    2 * ((index + 1u32).bits() - 1) + 1
}

/// Reads one index code off the front of `bits`. Returns the index and
/// the number of bits consumed, or `None` if `bits` is a proper prefix
/// of a codeword.
pub fn read_index_code(bits: &BitString) -> Option<(BigUint, usize)> {
    let mut k = 0usize;
    while k < bits.len() && bits.bit(k) {
        k += 1;
    }
    if k == bits.len() || bits.len() < 2 * k + 1 {
        return None;
    }
    let mut succ = BigUint::one();
    for j in 0..k {
        succ = succ * 2u32 + BigUint::from(bits.bit(k + 1 + j) as u32);
    }
    Some((succ - 1u32, 2 * k + 1))
}

/// How many indices have a code of length at most `max_len`:
/// `2^(floor((max_len - 1) / 2) + 1) - 1`, saturating at `u64::MAX`.
pub fn machine_count_for_code_len(max_len: u64) -> u64 {
    if max_len == 0 {
        return 0;
    }
    let k_max = (max_len - 1) / 2;
    if k_max >= 63 {
        u64::MAX
    } else {
        (1u64 << (k_max + 1)) - 1
    }
}

/// Exact partial Kraft sum of the index code over indices `0..count`.
/// Grows to 1 as `count` grows; never exceeds it.
pub fn kraft_partial_sum(count: u64) -> DyadicRational {
    if count == 0 {
        return DyadicRational::zero();
    }
    let c = count as u128 + 1;
    let m = c.ilog2() as u64;
    let full = DyadicRational::one() - DyadicRational::pow2_neg(m);
    let partial_count = c - (1u128 << m);
    full + DyadicRational::new(partial_count.into(), 2 * m + 1)
}

/// The dispatcher: decodes an index code from its input for free, then
/// behaves as the decoded machine on the rest of the input with the
/// whole fuel budget.
#[derive(Clone, Copy, Debug, Default)]
pub struct UniversalMachine;

#[derive(Clone, Debug)]
enum Phase {
    Counting {
        ones: u64,
        fuel: u64,
        pending: Option<bool>,
    },
    Payload {
        succ: BigUint,
        left: u64,
        fuel: u64,
        pending: Option<bool>,
    },
    Running {
        spec: Arc<MachineSpec>,
        inner: SpecState,
    },
}

#[derive(Clone, Debug)]
pub struct UniversalState {
    phase: Phase,
}

fn start_running(index: &BigUint, fuel: u64) -> Phase {
    let spec = Arc::new(decode_machine(index));
    let inner = spec.boot(fuel);
    Phase::Running { spec, inner }
}

impl Machine for UniversalMachine {
    type State = UniversalState;

    fn boot(&self, fuel: u64) -> UniversalState {
        UniversalState {
            phase: Phase::Counting {
                ones: 0,
                fuel,
                pending: None,
            },
        }
    }

    fn advance(&self, st: &mut UniversalState) -> Step {
        loop {
            match &mut st.phase {
                Phase::Counting {
                    ones,
                    fuel,
                    pending,
                } => match pending.take() {
                    None => return Step::NeedInput,
                    Some(true) => *ones += 1,
                    Some(false) => {
                        if *ones == 0 {
                            st.phase = start_running(&BigUint::zero(), *fuel);
                        } else {
                            st.phase = Phase::Payload {
                                succ: One::one(),
                                left: *ones,
                                fuel: *fuel,
                                pending: None,
                            };
                        }
                    }
                },
                Phase::Payload {
                    succ,
                    left,
                    fuel,
                    pending,
                } => match pending.take() {
                    None => return Step::NeedInput,
                    Some(bit) => {
                        *succ = &*succ * 2u32 + BigUint::from(bit as u32);
                        *left -= 1;
                        if *left == 0 {
                            let index = &*succ - 1u32;
                            st.phase = start_running(&index, *fuel);
                        }
                    }
                },
                Phase::Running { spec, inner } => return spec.advance(inner),
            }
        }
    }

    fn feed(&self, st: &mut UniversalState, bit: bool) {
        match &mut st.phase {
            Phase::Counting { pending, .. } | Phase::Payload { pending, .. } => {
                *pending = Some(bit)
            }
            Phase::Running { spec, inner } => spec.feed(inner, bit),
        }
    }
}

impl UniversalMachine {
    pub fn run(&self, input: &BitString, fuel: u64) -> RunResult {
        crate::tm::run(self, input, fuel)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::samples::random_spec;
    use crate::tm::{run, RunStatus};
    use proptest::prelude::*;
    use rand::SeedableRng;

    fn idx(i: u64) -> BigUint {
        BigUint::from(i)
    }

    #[test]
    fn machine_zero_is_the_all_zero_table() {
        let sub = SubAction {
            write: WorkSym::Zero,
            mv: Move::Left,
            emit: None,
            next: Next::State(0),
        };
        let expected = MachineSpec::new(1, vec![Action::NoRead(sub); 3]).unwrap();
        assert_eq!(decode_machine(&idx(0)), expected);
    }

    #[test]
    fn first_indices_behave_as_expected() {
        let fuel = 20;
        let empty = BitString::new();
        let cases: &[(u64, &str, RunStatus)] = &[
            (0, "", RunStatus::FuelExhausted),
            (1, "", RunStatus::Halted),
            (2, &"0".repeat(20), RunStatus::FuelExhausted),
            (3, "0", RunStatus::Halted),
            (4, &"1".repeat(20), RunStatus::FuelExhausted),
            (5, "1", RunStatus::Halted),
            (50, &"0".repeat(20), RunStatus::FuelExhausted),
        ];
        for (i, output, status) in cases {
            let r = run(&decode_machine(&idx(*i)), &empty, fuel);
            assert_eq!(r.output, output.parse().unwrap(), "machine {i}");
            assert_eq!(r.status, *status, "machine {i}");
            assert_eq!(r.consumed, 0, "machine {i}");
        }
    }

    #[test]
    fn encode_inverts_decode_on_small_indices() {
        for i in 0..600u64 {
            assert_eq!(encode_machine(&decode_machine(&idx(i))), idx(i));
        }
    }

    #[test]
    fn level_boundary_is_exact() {
        let last_one_state = level_count(1) - 1u32;
        assert_eq!(decode_machine(&last_one_state).num_states(), 1);
        let first_two_state = level_count(1);
        let spec = decode_machine(&first_two_state);
        assert_eq!(spec.num_states(), 2);
        assert_eq!(encode_machine(&spec), first_two_state);
        assert_eq!(level_count(1), BigUint::from(2970u32).pow(3));
    }

    #[test]
    fn codes_are_frozen_and_prefix_free_per_index() {
        assert_eq!(index_code(&idx(0)), "0".parse().unwrap());
        assert_eq!(index_code(&idx(3)), "11000".parse().unwrap());
        for i in 0..200u64 {
            let code = index_code(&idx(i));
            assert_eq!(code.len() as u64, index_code_len(&idx(i)));
            let (back, used) = read_index_code(&code).unwrap();
            assert_eq!(back, idx(i));
            assert_eq!(used, code.len());
            let mut extended = code.clone();
            extended.push(true);
            let (again, used_again) = read_index_code(&extended).unwrap();
            assert_eq!(again, idx(i));
            assert_eq!(used_again, code.len());
        }
    }

    #[test]
    fn incomplete_codes_are_detected() {
        for text in ["1", "11", "1111", "110", "1101"] {
            assert_eq!(read_index_code(&text.parse().unwrap()), None);
        }
        assert_eq!(read_index_code(&BitString::new()), None);
    }

    #[test]
    fn kraft_partial_sums_match_the_frozen_values() {
        let expect = [
            (1u64, "1/2"),
            (10, "115/128"),
            (100, "8101/8192"),
            (1000, "523753/524288"),
        ];
        for (count, want) in expect {
            assert_eq!(kraft_partial_sum(count), want.parse().unwrap());
        }
        assert_eq!(kraft_partial_sum(0), DyadicRational::zero());
    }

    #[test]
    fn kraft_closed_form_matches_direct_summation() {
        let mut direct = DyadicRational::zero();
        for i in 0..1000u64 {
            direct = direct + DyadicRational::pow2_neg(index_code_len(&idx(i)));
            assert_eq!(kraft_partial_sum(i + 1), direct, "count {}", i + 1);
        }
        assert!(direct < DyadicRational::one());
    }

    #[test]
    fn machine_count_per_code_budget() {
        assert_eq!(machine_count_for_code_len(0), 0);
        assert_eq!(machine_count_for_code_len(1), 1);
        assert_eq!(machine_count_for_code_len(2), 1);
        assert_eq!(machine_count_for_code_len(3), 3);
        assert_eq!(machine_count_for_code_len(11), 63);
        for l in 1..30u64 {
            let count = machine_count_for_code_len(l);
            assert!(index_code_len(&idx(count - 1)) <= l);
            assert!(index_code_len(&idx(count)) > l);
        }
    }

    #[test]
    fn dispatcher_stalls_on_incomplete_codewords() {
        let r = UniversalMachine.run(&"1111".parse().unwrap(), 1_000);
        assert_eq!(r.output, BitString::new());
        assert_eq!(r.consumed, 4);
        assert_eq!(r.status, RunStatus::AwaitingInput);
    }

    #[test]
    fn dispatcher_runs_the_indexed_machine() {
        // Index 5 emits a single 1 and halts; its code is 11010.
        let r = UniversalMachine.run(&"11010".parse().unwrap(), 7);
        assert_eq!(r.output, "1".parse().unwrap());
        assert_eq!(r.consumed, 5);
        assert_eq!(r.status, RunStatus::Halted);
    }

    proptest! {
        #[test]
        fn roundtrip_holds_for_random_tables(seed in any::<u64>()) {
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let spec = random_spec(&mut rng, 3);
            prop_assert_eq!(decode_machine(&encode_machine(&spec)), spec);
        }

        #[test]
        fn dispatch_agrees_with_the_bare_machine(
            i in 0u64..10_000,
            p in prop::collection::vec(any::<bool>(), 0..6),
            fuel in 0u64..48,
        ) {
            let index = idx(i);
            let spec = decode_machine(&index);
            let code = index_code(&index);
            let program = BitString::from_bits(p);
            let direct = run(&spec, &program, fuel);
            let via_u = UniversalMachine.run(&code.concat(&program), fuel);
            prop_assert_eq!(&via_u.output, &direct.output);
            prop_assert_eq!(via_u.status, direct.status);
            prop_assert_eq!(via_u.consumed, direct.consumed + code.len());
        }
    }
}
