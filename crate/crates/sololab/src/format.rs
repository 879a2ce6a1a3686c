//! Plain-text machine tables.
//!
//! ```text
//! # a two-state copier
//! states 2
//! 0 0 -> read (0 S _ 1) (1 S _ 1)
//! 0 1 -> read (0 S _ 1) (1 S _ 1)
//! 0 B -> read (0 S _ 1) (1 S _ 1)
//! 1 0 -> noread (B S 0 0)
//! 1 1 -> noread (B S 1 0)
//! 1 B -> noread (B S _ 0)
//! ```
//!
//! The header fixes the number of states; state 0 starts. Each row
//! gives the action for one `(state, work symbol)` pair and every pair
//! must appear exactly once. A sub action `(write move emit next)`
//! writes `0`, `1`, or `B`, moves `L`, `R`, or `S`, emits `_` (no
//! output), `0`, or `1`, and continues in state `next`, with `H` for
//! halt. A `read` action consumes one input bit and picks its first
//! sub action on 0, its second on 1. `#` starts a comment.

use std::fmt::Write as _;

use thiserror::Error;

use crate::tm::{Action, MachineSpec, Move, Next, SubAction, WorkSym};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MachineFormatError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("no action given for state {state}, symbol {sym}")]
    NonTotal { state: u32, sym: char },
    #[error("line {line}: state {target} out of range, table has {num_states} states")]
    BadStateRef {
        line: usize,
        target: u32,
        num_states: u32,
    },
}

fn syntax(line: usize, msg: impl Into<String>) -> MachineFormatError {
    MachineFormatError::Syntax {
        line,
        msg: msg.into(),
    }
}

fn sym_char(sym: WorkSym) -> char {
    match sym {
        WorkSym::Zero => '0',
        WorkSym::One => '1',
        WorkSym::Blank => 'B',
    }
}

fn parse_sym(tok: &str, line: usize) -> Result<WorkSym, MachineFormatError> {
    match tok {
        "0" => Ok(WorkSym::Zero),
        "1" => Ok(WorkSym::One),
        "B" => Ok(WorkSym::Blank),
        _ => Err(syntax(
            line,
            format!("expected work symbol 0, 1 or B, got `{tok}`"),
        )),
    }
}

fn parse_sub(toks: &[&str], line: usize, num_states: u32) -> Result<SubAction, MachineFormatError> {
    let [open, w, m, e, n, close] = toks else {
        return Err(syntax(line, "expected sub action `(write move emit next)`"));
    };
    if *open != "(" || *close != ")" {
        return Err(syntax(line, "expected sub action `(write move emit next)`"));
    }
    let write = parse_sym(w, line)?;
    let mv = match *m {
        "L" => Move::Left,
        "R" => Move::Right,
        "S" => Move::Stay,
        _ => return Err(syntax(line, format!("expected move L, R or S, got `{m}`"))),
    };
    let emit = match *e {
        "_" => None,
        "0" => Some(false),
        "1" => Some(true),
        _ => return Err(syntax(line, format!("expected emit _, 0 or 1, got `{e}`"))),
    };
    let next = if *n == "H" {
        Next::Halt
    } else {
        let target: u32 = n
            .parse()
            .map_err(|_| syntax(line, format!("expected next state or H, got `{n}`")))?;
        if target >= num_states {
            return Err(MachineFormatError::BadStateRef {
                line,
                target,
                num_states,
            });
        }
        Next::State(target)
    };
    Ok(SubAction {
        write,
        mv,
        emit,
        next,
    })
}

/// Parses the text format into a machine, reporting the first problem
/// with its 1-based line number.
pub fn parse_machine(text: &str) -> Result<MachineSpec, MachineFormatError> {
    let mut num_states: Option<(u32, usize)> = None;
    let mut table: Vec<Option<Action>> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let spaced = content.replace('(', " ( ").replace(')', " ) ");
        let toks: Vec<&str> = spaced.split_whitespace().collect();
        let Some((n, _)) = num_states else {
            let [kw, count] = toks.as_slice() else {
                return Err(syntax(line, "expected header `states N`"));
            };
            if *kw != "states" {
                return Err(syntax(line, "expected header `states N`"));
            }
            let n: u32 = count
                .parse()
                .map_err(|_| syntax(line, format!("expected state count, got `{count}`")))?;
            if n == 0 {
                return Err(syntax(line, "a machine needs at least one state"));
            }
            num_states = Some((n, line));
            table = vec![None; n as usize * 3];
            continue;
        };
        if toks.first() == Some(&"states") {
            return Err(syntax(line, "duplicate `states` header"));
        }
        if toks.len() < 4 {
            return Err(syntax(
                line,
                "expected row `state symbol -> read|noread ...`",
            ));
        }
        let state: u32 = toks[0]
            .parse()
            .map_err(|_| syntax(line, format!("expected state number, got `{}`", toks[0])))?;
        if state >= n {
            return Err(MachineFormatError::BadStateRef {
                line,
                target: state,
                num_states: n,
            });
        }
        let sym = parse_sym(toks[1], line)?;
        if toks[2] != "->" {
            return Err(syntax(line, format!("expected `->`, got `{}`", toks[2])));
        }
        let action = match (toks[3], toks.len() - 4) {
            ("noread", 6) => Action::NoRead(parse_sub(&toks[4..10], line, n)?),
            ("read", 12) => Action::Read {
                on_zero: parse_sub(&toks[4..10], line, n)?,
                on_one: parse_sub(&toks[10..16], line, n)?,
            },
            ("noread", _) => return Err(syntax(line, "noread takes one sub action")),
            ("read", _) => return Err(syntax(line, "read takes two sub actions")),
            (other, _) => {
                return Err(syntax(
                    line,
                    format!("expected `read` or `noread`, got `{other}`"),
                ))
            }
        };
        let slot = &mut table[state as usize * 3 + sym.index()];
        if slot.is_some() {
            return Err(syntax(
                line,
                format!(
                    "duplicate action for state {state}, symbol {}",
                    sym_char(sym)
                ),
            ));
        }
        *slot = Some(action);
    }
    let Some((n, _)) = num_states else {
        return Err(syntax(1, "expected header `states N`"));
    };
    let mut actions = Vec::with_capacity(table.len());
    for (slot_idx, slot) in table.into_iter().enumerate() {
        match slot {
            Some(action) => actions.push(action),
            None => {
                return Err(MachineFormatError::NonTotal {
                    state: (slot_idx / 3) as u32,
                    sym: sym_char(WorkSym::ALL[slot_idx % 3]),
                })
            }
        }
    }
    Ok(MachineSpec::new(n, actions).expect("validated while parsing"))
}

fn render_sub(out: &mut String, sub: &SubAction) {
    let emit = match sub.emit {
        None => '_',
        Some(false) => '0',
        Some(true) => '1',
    };
    let mv = match sub.mv {
        Move::Left => 'L',
        Move::Right => 'R',
        Move::Stay => 'S',
    };
    match sub.next {
        Next::State(s) => {
            let _ = write!(out, "({} {} {} {})", sym_char(sub.write), mv, emit, s);
        }
        Next::Halt => {
            let _ = write!(out, "({} {} {} H)", sym_char(sub.write), mv, emit);
        }
    }
}

/// Renders a machine in the canonical row order; `parse_machine`
/// inverts it exactly.
pub fn render_machine(spec: &MachineSpec) -> String {
    let mut out = format!("states {}\n", spec.num_states());
    for state in 0..spec.num_states() {
        for sym in WorkSym::ALL {
            let _ = write!(out, "{} {} -> ", state, sym_char(sym));
            match spec.action(state, sym) {
                Action::NoRead(sub) => {
                    out.push_str("noread ");
                    render_sub(&mut out, sub);
                }
                Action::Read { on_zero, on_one } => {
                    out.push_str("read ");
                    render_sub(&mut out, on_zero);
                    out.push(' ');
                    render_sub(&mut out, on_one);
                }
            }
            out.push('\n');
        }
    }
    out
}
