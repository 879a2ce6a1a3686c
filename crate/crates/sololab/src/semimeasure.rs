//! Budgeted lower approximations of the output weight a machine puts
//! on each finite string.
//!
//! The weight of `x` is the summed mass `2^-len(p)` of the minimal
//! input prefixes `p` on which the machine emits an output extending
//! `x`. Under a budget (program length cap `L`, fuel `t`) the set of
//! such prefixes is finite and the weight is computed exactly.
//!
//! The search walks the tree of input prefixes, branching only where
//! the machine actually reads a bit. Runs between reads are shared by
//! every extension, which is what makes the walk cheap compared to
//! running all `2^L` inputs; an oracle test keeps the two honest.
//! Searches for different targets and different machines never share
//! state, so callers may run them concurrently.

use std::collections::BTreeMap;

use serde::Serialize;
use thiserror::Error;

use crate::bits::BitString;
use crate::dyadic::DyadicRational;
use crate::tm::{Machine, Step};

/// Caps on the program search: inputs of at most `max_len` bits, runs
/// of at most `fuel` transitions. Raising either only adds programs,
/// so approximations grow monotonically toward the unbudgeted value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Budget {
    pub max_len: u64,
    pub fuel: u64,
}

impl Budget {
    pub const fn new(max_len: u64, fuel: u64) -> Self {
        Budget { max_len, fuel }
    }
}

enum Drive {
    /// Stopped at a read request; the tree branches here.
    Branch,
    /// Output now extends the target; the fed bits are a minimal
    /// program and this branch is done.
    Success,
    /// Halted, ran out of fuel, or contradicted the target.
    Dead,
}

fn drive<M: Machine>(
    machine: &M,
    st: &mut M::State,
    target: &BitString,
    matched: &mut usize,
) -> Drive {
    if *matched == target.len() {
        return Drive::Success;
    }
    loop {
        match machine.advance(st) {
            Step::Emit(bit) => {
                if bit != target.bit(*matched) {
                    return Drive::Dead;
                }
                *matched += 1;
                if *matched == target.len() {
                    return Drive::Success;
                }
            }
            Step::NeedInput => return Drive::Branch,
            Step::Halted | Step::OutOfFuel => return Drive::Dead,
        }
    }
}

/// All minimal programs for `target` within the budget: input prefixes
/// `p` with `len(p) <= max_len` such that the machine, run with the
/// budget's fuel, emits an output extending `target` at the moment it
/// has consumed exactly `p`. The result is prefix-free and sorted
/// shortlex. The empty target is reached by the empty program alone.
pub fn minimal_programs<M: Machine>(
    machine: &M,
    target: &BitString,
    budget: Budget,
) -> Vec<BitString> {
    let mut found = Vec::new();
    let mut stack: Vec<(M::State, usize, BitString)> = Vec::new();
    let mut root = machine.boot(budget.fuel);
    let mut matched = 0usize;
    match drive(machine, &mut root, target, &mut matched) {
        Drive::Success => return vec![BitString::new()],
        Drive::Dead => return Vec::new(),
        Drive::Branch => stack.push((root, matched, BitString::new())),
    }
    while let Some((st, matched, path)) = stack.pop() {
        if path.len() as u64 == budget.max_len {
            continue;
        }
        for bit in [false, true] {
            let mut child = st.clone();
            machine.feed(&mut child, bit);
            let mut child_matched = matched;
            match drive(machine, &mut child, target, &mut child_matched) {
                Drive::Success => found.push(path.child(bit)),
                Drive::Dead => {}
                Drive::Branch => stack.push((child, child_matched, path.child(bit))),
            }
        }
    }
    found.sort();
    found
}

/// The budgeted weight of `target`: exact sum of `2^-len(p)` over
/// `minimal_programs`. Always 1 at the empty string.
pub fn approx_value<M: Machine>(machine: &M, target: &BitString, budget: Budget) -> DyadicRational {
    minimal_programs(machine, target, budget)
        .iter()
        .map(|p| DyadicRational::pow2_neg(p.len() as u64))
        .sum()
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TableError {
    #[error("missing value for {0:?}")]
    MissingEntry(BitString),
    #[error("value given for {0:?}, which is deeper than the table")]
    EntryBeyondDepth(BitString),
}

/// Ways a value table can fail to be a semimeasure.
#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum SemimeasureViolation {
    #[error("value at the empty string is {value}, above 1")]
    RootAboveOne { value: DyadicRational },
    #[error("negative value {value} at {x:?}")]
    NegativeValue { x: BitString, value: DyadicRational },
    #[error("children of {parent:?} sum to {children}, above the parent's {value}")]
    ChildrenExceedParent {
        parent: BitString,
        value: DyadicRational,
        children: DyadicRational,
    },
}

/// Exact values for every string up to a depth, in shortlex order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ApproxTable {
    depth: usize,
    budget: Budget,
    values: BTreeMap<BitString, DyadicRational>,
}

impl ApproxTable {
    /// Builds a table from explicit values; the map must cover exactly
    /// the strings of length up to `depth`.
    pub fn from_values(
        depth: usize,
        budget: Budget,
        values: BTreeMap<BitString, DyadicRational>,
    ) -> Result<Self, TableError> {
        for x in BitString::all_up_to_len(depth) {
            if !values.contains_key(&x) {
                return Err(TableError::MissingEntry(x));
            }
        }
        if let Some(deep) = values.keys().find(|x| x.len() > depth) {
            return Err(TableError::EntryBeyondDepth(deep.clone()));
        }
        Ok(ApproxTable {
            depth,
            budget,
            values,
        })
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn budget(&self) -> Budget {
        self.budget
    }

    /// Value at `x`; panics if `x` is longer than the table depth.
    pub fn value(&self, x: &BitString) -> &DyadicRational {
        self.values
            .get(x)
            .expect("string no longer than the table depth")
    }

    pub fn iter(&self) -> impl Iterator<Item = (&BitString, &DyadicRational)> {
        self.values.iter()
    }

    /// CSV rendering, one shortlex-ordered row per string; the empty
    /// string serializes as an empty first field.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("x,value_mantissa,value_exponent\n");
        for (x, v) in &self.values {
            out.push_str(&format!("{},{},{}\n", x, v.mantissa(), v.exponent()));
        }
        out
    }

    /// Checks the semimeasure inequalities; empty means the table is a
    /// semimeasure down to its depth.
    pub fn check_semimeasure(&self) -> Vec<SemimeasureViolation> {
        let mut violations = Vec::new();
        let root = self.value(&BitString::new());
        if *root > DyadicRational::one() {
            violations.push(SemimeasureViolation::RootAboveOne {
                value: root.clone(),
            });
        }
        for (x, v) in &self.values {
            if v.is_negative() {
                violations.push(SemimeasureViolation::NegativeValue {
                    x: x.clone(),
                    value: v.clone(),
                });
            }
            if x.len() == self.depth {
                continue;
            }
            let children = self.value(&x.child(false)) + self.value(&x.child(true));
            if children > *v {
                violations.push(SemimeasureViolation::ChildrenExceedParent {
                    parent: x.clone(),
                    value: v.clone(),
                    children,
                });
            }
        }
        violations
    }

    /// The defect `value(x) - value(x0) - value(x1)`; panics if `x`
    /// has no children in the table.
    pub fn gap(&self, x: &BitString) -> DyadicRational {
        self.value(x) - &(self.value(&x.child(false)) + self.value(&x.child(true)))
    }
}

/// Sums value maps over the full domain of depth `depth`; parts may
/// cover any subset of it.
pub(crate) fn sum_value_maps(
    depth: usize,
    parts: Vec<BTreeMap<BitString, DyadicRational>>,
) -> BTreeMap<BitString, DyadicRational> {
    let mut values: BTreeMap<BitString, DyadicRational> = BitString::all_up_to_len(depth)
        .into_iter()
        .map(|x| (x, DyadicRational::zero()))
        .collect();
    for part in parts {
        for (x, v) in part {
            let slot = values
                .get_mut(&x)
                .expect("parts stay within the table domain");
            *slot = &*slot + &v;
        }
    }
    values
}

enum Walk {
    Branch,
    Dead,
}

fn drive_recording<M: Machine>(
    machine: &M,
    st: &mut M::State,
    out: &mut BitString,
    depth: usize,
    path_len: u64,
    values: &mut BTreeMap<BitString, DyadicRational>,
) -> Walk {
    loop {
        if out.len() == depth {
            return Walk::Dead;
        }
        match machine.advance(st) {
            Step::Emit(bit) => {
                out.push(bit);
                let slot = values
                    .get_mut(out)
                    .expect("outputs within depth are tabulated");
                *slot = &*slot + &DyadicRational::pow2_neg(path_len);
            }
            Step::NeedInput => return Walk::Branch,
            Step::Halted | Step::OutOfFuel => return Walk::Dead,
        }
    }
}

/// Tabulates the budgeted weights of every string of length up to
/// `depth` in one shared walk of the program tree. Each entry equals
/// `approx_value` for that string at the same budget.
pub fn tabulate<M: Machine>(machine: &M, depth: usize, budget: Budget) -> ApproxTable {
    let mut values: BTreeMap<BitString, DyadicRational> = BitString::all_up_to_len(depth)
        .into_iter()
        .map(|x| (x, DyadicRational::zero()))
        .collect();
    let root_value = values
        .get_mut(&BitString::new())
        .expect("root is tabulated");
    *root_value = DyadicRational::one();

    let mut stack: Vec<(M::State, BitString, u64)> = Vec::new();
    let mut root = machine.boot(budget.fuel);
    let mut out = BitString::new();
    if let Walk::Branch = drive_recording(machine, &mut root, &mut out, depth, 0, &mut values) {
        stack.push((root, out, 0));
    }
    while let Some((st, out, path_len)) = stack.pop() {
        if path_len == budget.max_len {
            continue;
        }
        for bit in [false, true] {
            let mut child = st.clone();
            machine.feed(&mut child, bit);
            let mut child_out = out.clone();
            if let Walk::Branch = drive_recording(
                machine,
                &mut child,
                &mut child_out,
                depth,
                path_len + 1,
                &mut values,
            ) {
                stack.push((child, child_out, path_len + 1));
            }
        }
    }
    ApproxTable {
        depth,
        budget,
        values,
    }
}
