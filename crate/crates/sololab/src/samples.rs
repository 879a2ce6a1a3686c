//! Small machines used throughout the tests and examples, plus a
//! generator of random well-formed machines.

use rand::Rng;

use crate::tm::{Action, MachineSpec, Move, Next, SubAction, WorkSym};

/// One state, never reads: emits `bit` on every step, forever.
pub fn emitter_of(bit: bool) -> MachineSpec {
    let sub = SubAction {
        write: WorkSym::Blank,
        mv: Move::Stay,
        emit: Some(bit),
        next: Next::State(0),
    };
    MachineSpec::new(1, vec![Action::NoRead(sub); 3]).unwrap()
}

/// Two states, two steps per echoed bit: state 0 reads a bit and parks
/// it on the work tape, state 1 emits it and rewinds to state 0.
pub fn copier() -> MachineSpec {
    let park = |sym: WorkSym| SubAction {
        write: sym,
        mv: Move::Stay,
        emit: None,
        next: Next::State(1),
    };
    let replay = |emit: Option<bool>| SubAction {
        write: WorkSym::Blank,
        mv: Move::Stay,
        emit,
        next: Next::State(0),
    };
    let read = Action::Read {
        on_zero: park(WorkSym::Zero),
        on_one: park(WorkSym::One),
    };
    let actions = vec![
        read,
        read,
        read,
        Action::NoRead(replay(Some(false))),
        Action::NoRead(replay(Some(true))),
        Action::NoRead(replay(None)),
    ];
    MachineSpec::new(2, actions).unwrap()
}

fn random_sub<R: Rng + ?Sized>(rng: &mut R, num_states: u32) -> SubAction {
    SubAction {
        write: WorkSym::ALL[rng.random_range(0..3)],
        mv: Move::ALL[rng.random_range(0..3)],
        emit: match rng.random_range(0..3) {
            0 => None,
            1 => Some(false),
            _ => Some(true),
        },
        next: if rng.random_range(0..=num_states) == num_states {
            Next::Halt
        } else {
            Next::State(rng.random_range(0..num_states))
        },
    }
}

/// A uniform-ish random total machine with 1 to `max_states` states.
/// Roughly a third of the table entries read input.
pub fn random_spec<R: Rng + ?Sized>(rng: &mut R, max_states: u32) -> MachineSpec {
    let num_states = rng.random_range(1..=max_states);
    let actions = (0..num_states as usize * 3)
        .map(|_| {
            if rng.random_range(0..3) == 0 {
                Action::Read {
                    on_zero: random_sub(rng, num_states),
                    on_one: random_sub(rng, num_states),
                }
            } else {
                Action::NoRead(random_sub(rng, num_states))
            }
        })
        .collect();
    MachineSpec::new(num_states, actions).unwrap()
}
