//! Monotone Turing machines: finite transition tables over a one-way
//! read-only input tape, a one-way write-only output tape, and a
//! bidirectional binary work tape.
//!
//! The interpreter is fuel-bounded and consumes input lazily: execution
//! pauses at a read request instead of demanding the whole input up
//! front. That pause point is where the program-tree search branches.
//!
//! Monotonicity is structural. Output is append-only, so for any inputs
//! `p ⊑ q` and fuels `t ≤ t'`, the output under `(p, t)` is a prefix of
//! the output under `(q, t')`.

use std::fmt;

use thiserror::Error;

use crate::bits::BitString;

/// Work tape alphabet. The tape starts blank everywhere.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum WorkSym {
    Zero,
    One,
    Blank,
}

impl WorkSym {
    /// Canonical order used by the machine enumeration.
    pub const ALL: [WorkSym; 3] = [WorkSym::Zero, WorkSym::One, WorkSym::Blank];

    pub fn index(self) -> usize {
        match self {
            WorkSym::Zero => 0,
            WorkSym::One => 1,
            WorkSym::Blank => 2,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Move {
    Left,
    Right,
    Stay,
}

impl Move {
    pub const ALL: [Move; 3] = [Move::Left, Move::Right, Move::Stay];

    pub fn index(self) -> usize {
        match self {
            Move::Left => 0,
            Move::Right => 1,
            Move::Stay => 2,
        }
    }
}

/// Where control goes after a transition.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Next {
    State(u32),
    Halt,
}

/// One transition: rewrite the work cell, move the work head, emit at
/// most one output bit, then change state.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SubAction {
    pub write: WorkSym,
    pub mv: Move,
    pub emit: Option<bool>,
    pub next: Next,
}

/// Table entry for a `(state, work symbol)` pair. A reading action
/// consumes one input bit and branches on it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Action {
    NoRead(SubAction),
    Read {
        on_zero: SubAction,
        on_one: SubAction,
    },
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MachineSpecError {
    #[error("a machine needs at least one state")]
    NoStates,
    #[error("expected {expected} table entries, got {got}")]
    WrongTableSize { expected: usize, got: usize },
    #[error("transition targets state {target} but there are only {num_states} states")]
    BadStateRef { target: u32, num_states: u32 },
}

/// A complete monotone Turing machine: `num_states` states with a total
/// transition table over `{0, 1, B}`. State 0 is the start state.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MachineSpec {
    num_states: u32,
    /// Row-major: entry for `(state s, symbol y)` at `s * 3 + y.index()`.
    actions: Vec<Action>,
}

impl MachineSpec {
    pub fn new(num_states: u32, actions: Vec<Action>) -> Result<Self, MachineSpecError> {
        if num_states == 0 {
            return Err(MachineSpecError::NoStates);
        }
        let expected = num_states as usize * 3;
        if actions.len() != expected {
            return Err(MachineSpecError::WrongTableSize {
                expected,
                got: actions.len(),
            });
        }
        let check = |sub: &SubAction| match sub.next {
            Next::State(s) if s >= num_states => Err(MachineSpecError::BadStateRef {
                target: s,
                num_states,
            }),
            _ => Ok(()),
        };
        for action in &actions {
            match action {
                Action::NoRead(sub) => check(sub)?,
                Action::Read { on_zero, on_one } => {
                    check(on_zero)?;
                    check(on_one)?;
                }
            }
        }
        Ok(MachineSpec {
            num_states,
            actions,
        })
    }

    pub fn num_states(&self) -> u32 {
        self.num_states
    }

    pub fn action(&self, state: u32, sym: WorkSym) -> &Action {
        &self.actions[state as usize * 3 + sym.index()]
    }

    pub fn actions(&self) -> &[Action] {
        &self.actions
    }

    /// Runs this machine on `input` with a step budget.
    pub fn run(&self, input: &BitString, fuel: u64) -> RunResult {
        run(self, input, fuel)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RunStatus {
    /// A transition with `next = Halt` was applied.
    Halted,
    /// The step budget ran out before halting.
    FuelExhausted,
    /// The machine requested an input bit beyond the supplied input.
    AwaitingInput,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunResult {
    pub output: BitString,
    /// Input bits consumed, including any self-delimiting prefix a
    /// dispatcher decodes.
    pub consumed: usize,
    pub status: RunStatus,
}

impl fmt::Display for RunResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "output {} consumed {} status {:?}",
            self.output.display_or_epsilon(),
            self.consumed,
            self.status
        )
    }
}

/// One observable event of a machine execution.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Step {
    /// An output bit was appended.
    Emit(bool),
    /// The machine wants the next input bit; supply it with `feed`.
    /// Repeated `advance` calls without feeding return this again.
    NeedInput,
    Halted,
    OutOfFuel,
}

/// Anything that can be driven one event at a time with lazy input:
/// plain transition tables, the index-code dispatcher, and synthesized
/// dispatch-table machines. States clone cheaply enough to branch the
/// program-tree search at read points.
pub trait Machine {
    type State: Clone;

    fn boot(&self, fuel: u64) -> Self::State;

    /// Advances until the next observable event. Never consumes fuel
    /// for a pending read.
    fn advance(&self, st: &mut Self::State) -> Step;

    /// Supplies the input bit requested by a `NeedInput` event.
    fn feed(&self, st: &mut Self::State, bit: bool);
}

/// Work tape, unbounded in both directions, blank by default.
#[derive(Clone, Debug, Default)]
struct Tape {
    nonneg: Vec<WorkSym>,
    neg: Vec<WorkSym>,
}

impl Tape {
    fn read(&self, pos: i64) -> WorkSym {
        let cell = if pos >= 0 {
            self.nonneg.get(pos as usize)
        } else {
            self.neg.get((-pos - 1) as usize)
        };
        cell.copied().unwrap_or(WorkSym::Blank)
    }

    fn write(&mut self, pos: i64, sym: WorkSym) {
        let (vec, idx) = if pos >= 0 {
            (&mut self.nonneg, pos as usize)
        } else {
            (&mut self.neg, (-pos - 1) as usize)
        };
        if idx >= vec.len() {
            vec.resize(idx + 1, WorkSym::Blank);
        }
        vec[idx] = sym;
    }
}

/// Execution state of a `MachineSpec`.
#[derive(Clone, Debug)]
pub struct SpecState {
    tape: Tape,
    head: i64,
    control: Next,
    fuel_left: u64,
    pending_input: Option<bool>,
}

impl Machine for MachineSpec {
    type State = SpecState;

    fn boot(&self, fuel: u64) -> SpecState {
        SpecState {
            tape: Tape::default(),
            head: 0,
            control: Next::State(0),
            fuel_left: fuel,
            pending_input: None,
        }
    }

    fn advance(&self, st: &mut SpecState) -> Step {
        loop {
            let state = match st.control {
                Next::Halt => return Step::Halted,
                Next::State(s) => s,
            };
            if st.fuel_left == 0 {
                return Step::OutOfFuel;
            }
            let sub = match self.action(state, st.tape.read(st.head)) {
                Action::NoRead(sub) => *sub,
                Action::Read { on_zero, on_one } => match st.pending_input.take() {
                    None => return Step::NeedInput,
                    Some(false) => *on_zero,
                    Some(true) => *on_one,
                },
            };
            st.fuel_left -= 1;
            st.tape.write(st.head, sub.write);
            match sub.mv {
                Move::Left => st.head -= 1,
                Move::Right => st.head += 1,
                Move::Stay => {}
            }
            st.control = sub.next;
            if let Some(bit) = sub.emit {
                return Step::Emit(bit);
            }
        }
    }

    fn feed(&self, st: &mut SpecState, bit: bool) {
        st.pending_input = Some(bit);
    }
}

/// Drives a machine on a concrete input until it halts, exhausts fuel,
/// or requests a bit beyond the input. Deterministic in its arguments.
pub fn run<M: Machine>(machine: &M, input: &BitString, fuel: u64) -> RunResult {
    let mut st = machine.boot(fuel);
    let mut output = BitString::new();
    let mut consumed = 0usize;
    loop {
        match machine.advance(&mut st) {
            Step::Emit(bit) => output.push(bit),
            Step::NeedInput => {
                if consumed < input.len() {
                    machine.feed(&mut st, input.bit(consumed));
                    consumed += 1;
                } else {
                    return RunResult {
                        output,
                        consumed,
                        status: RunStatus::AwaitingInput,
                    };
                }
            }
            Step::Halted => {
                return RunResult {
                    output,
                    consumed,
                    status: RunStatus::Halted,
                }
            }
            Step::OutOfFuel => {
                return RunResult {
                    output,
                    consumed,
                    status: RunStatus::FuelExhausted,
                }
            }
        }
    }
}
