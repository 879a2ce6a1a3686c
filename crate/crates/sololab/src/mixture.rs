//! Truncated weighted mixtures over the machine enumeration, the
//! split-sum identity for the dispatcher, and dominance checks with
//! explicit budget-independent constants.
//!
//! A scheme assigns positive dyadic weights summing to at most 1 to
//! machines `0..N`. Mixture values are computed machine by machine at
//! the reduced budget `L - len(code(i))`, mirroring how a dispatcher
//! program spends `len(code(i))` bits before the machine's own program
//! starts; machines whose codeword alone overflows the budget drop
//! out, which is why a truncated mixture gives the empty string less
//! than weight 1 while the dispatcher itself always gives it 1.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::bits::BitString;
use crate::dyadic::DyadicRational;
use crate::enumeration::{decode_machine, index_code_len, UniversalMachine};
use crate::semimeasure::{approx_value, tabulate, ApproxTable, Budget};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum WeightError {
    #[error("weight {index} is {value}; weights must be positive")]
    NonPositive { index: usize, value: DyadicRational },
    #[error("weights sum to {total}, above 1")]
    SumAboveOne { total: DyadicRational },
}

/// Positive dyadic weights for machines `0..N` with total at most 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightScheme {
    weights: Vec<DyadicRational>,
}

impl WeightScheme {
    pub fn new(weights: Vec<DyadicRational>) -> Result<Self, WeightError> {
        for (index, value) in weights.iter().enumerate() {
            if value.is_zero() || value.is_negative() {
                return Err(WeightError::NonPositive {
                    index,
                    value: value.clone(),
                });
            }
        }
        let total: DyadicRational = weights.iter().cloned().sum();
        if total > DyadicRational::one() {
            return Err(WeightError::SumAboveOne { total });
        }
        Ok(WeightScheme { weights })
    }

    /// The dispatcher's own weights: `w_i = 2^-len(code(i))`. Their
    /// total is the partial Kraft sum, so any count is valid.
    pub fn dispatcher_default(count: usize) -> Self {
        let weights = (0..count)
            .map(|i| DyadicRational::pow2_neg(index_code_len(&BigUint::from(i))))
            .collect();
        WeightScheme { weights }
    }

    pub fn machine_count(&self) -> usize {
        self.weights.len()
    }

    pub fn weight(&self, i: usize) -> &DyadicRational {
        &self.weights[i]
    }

    pub fn weights(&self) -> &[DyadicRational] {
        &self.weights
    }

    pub fn total(&self) -> DyadicRational {
        self.weights.iter().cloned().sum()
    }
}

/// The budget left for machine `i`'s own program once its codeword is
/// spent; `None` when the codeword alone exceeds the cap.
pub fn inner_budget(budget: Budget, index: u64) -> Option<Budget> {
    let code_len = index_code_len(&BigUint::from(index));
    budget
        .max_len
        .checked_sub(code_len)
        .map(|max_len| Budget::new(max_len, budget.fuel))
}

/// Exact truncated mixture value at `x`: each covered machine
/// contributes its weight times its budgeted value at the reduced
/// budget.
pub fn mixture_value(scheme: &WeightScheme, x: &BitString, budget: Budget) -> DyadicRational {
    (0..scheme.machine_count() as u64)
        .into_par_iter()
        .filter_map(|i| {
            let inner = inner_budget(budget, i)?;
            let machine = decode_machine(&BigUint::from(i));
            Some(scheme.weight(i as usize) * &approx_value(&machine, x, inner))
        })
        .reduce(DyadicRational::zero, |a, b| a + b)
}

/// Tabulates the truncated mixture for every string up to `depth`.
/// The table's budget records the dispatcher-level budget; machines
/// run at their reduced budgets.
pub fn mixture_table(scheme: &WeightScheme, depth: usize, budget: Budget) -> ApproxTable {
    let scaled: Vec<BTreeMap<BitString, DyadicRational>> = (0..scheme.machine_count() as u64)
        .into_par_iter()
        .filter_map(|i| {
            let inner = inner_budget(budget, i)?;
            let machine = decode_machine(&BigUint::from(i));
            let table = tabulate(&machine, depth, inner);
            let w = scheme.weight(i as usize);
            Some(table.iter().map(|(x, v)| (x.clone(), w * v)).collect())
        })
        .collect();
    let values = crate::semimeasure::sum_value_maps(depth, scaled);
    ApproxTable::from_values(depth, budget, values).expect("domain is complete by construction")
}

#[derive(Clone, Debug, Serialize)]
pub struct IdentityRow {
    pub x: BitString,
    pub left: DyadicRational,
    pub right: DyadicRational,
    pub equal: bool,
}

/// Row-by-row comparison of two tables over all nonempty strings.
#[derive(Clone, Debug, Serialize)]
pub struct IdentityReport {
    pub depth: usize,
    pub budget: Budget,
    pub rows: Vec<IdentityRow>,
    pub passed: bool,
}

impl IdentityReport {
    /// Compares tables of equal depth on every nonempty string; the
    /// empty string is excluded because the two sides give it
    /// different mass by construction.
    pub fn from_tables(left: &ApproxTable, right: &ApproxTable) -> Self {
        assert_eq!(left.depth(), right.depth(), "tables must share a depth");
        let rows: Vec<IdentityRow> = left
            .iter()
            .filter(|(x, _)| !x.is_empty())
            .map(|(x, l)| {
                let r = right.value(x);
                IdentityRow {
                    x: x.clone(),
                    left: l.clone(),
                    right: r.clone(),
                    equal: l == r,
                }
            })
            .collect();
        let passed = rows.iter().all(|row| row.equal);
        IdentityReport {
            depth: left.depth(),
            budget: left.budget(),
            rows,
            passed,
        }
    }

    pub fn discrepancies(&self) -> impl Iterator<Item = &IdentityRow> {
        self.rows.iter().filter(|row| !row.equal)
    }
}

/// Checks the split-sum identity at matched budgets: the dispatcher's
/// table must equal the default-weight mixture over `count` machines,
/// exactly, on every nonempty string up to `depth`. `count` must reach
/// every machine whose codeword fits the budget or the identity will
/// honestly fail.
pub fn split_sum_check(depth: usize, budget: Budget, count: usize) -> IdentityReport {
    let dispatcher = tabulate(&UniversalMachine, depth, budget);
    let mixture = mixture_table(&WeightScheme::dispatcher_default(count), depth, budget);
    IdentityReport::from_tables(&dispatcher, &mixture)
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CoverageError {
    #[error("machine {index} needs a {code_len}-bit codeword, over the {max_len}-bit cap")]
    BudgetTooSmall {
        index: u64,
        code_len: u64,
        max_len: u64,
    },
    #[error("machine {index} is outside the scheme's {count} machines")]
    NotInScheme { index: u64, count: usize },
}

#[derive(Clone, Debug, Serialize)]
pub struct DominanceRow {
    pub x: BitString,
    pub dominant: DyadicRational,
    pub dominated: DyadicRational,
    pub scaled: DyadicRational,
    pub ok: bool,
}

/// Outcome of checking `dominant(x) >= constant * dominated(x)` on
/// every nonempty string of two equal-depth tables.
#[derive(Clone, Debug, Serialize)]
pub struct DominanceReport {
    pub index: u64,
    pub constant: DyadicRational,
    pub depth: usize,
    pub budget: Budget,
    pub rows: Vec<DominanceRow>,
    pub passed: bool,
}

impl DominanceReport {
    pub fn compare(
        index: u64,
        constant: DyadicRational,
        dominant: &ApproxTable,
        dominated: &ApproxTable,
    ) -> Self {
        assert_eq!(
            dominant.depth(),
            dominated.depth(),
            "tables must share a depth"
        );
        let rows: Vec<DominanceRow> = dominant
            .iter()
            .filter(|(x, _)| !x.is_empty())
            .map(|(x, big)| {
                let small = dominated.value(x);
                let scaled = &constant * small;
                DominanceRow {
                    x: x.clone(),
                    dominant: big.clone(),
                    dominated: small.clone(),
                    ok: *big >= scaled,
                    scaled,
                }
            })
            .collect();
        let passed = rows.iter().all(|row| row.ok);
        DominanceReport {
            index,
            constant,
            depth: dominant.depth(),
            budget: dominant.budget(),
            rows,
            passed,
        }
    }
}

/// Verifies that the dispatcher dominates machine `j` with the
/// constant `2^-len(code(j))`, comparing the dispatcher's table
/// against machine `j`'s table at the reduced budget. The constant
/// does not depend on the budget.
pub fn dominance_check(
    j: u64,
    depth: usize,
    budget: Budget,
) -> Result<DominanceReport, CoverageError> {
    let code_len = index_code_len(&BigUint::from(j));
    let inner = inner_budget(budget, j).ok_or(CoverageError::BudgetTooSmall {
        index: j,
        code_len,
        max_len: budget.max_len,
    })?;
    let dispatcher = tabulate(&UniversalMachine, depth, budget);
    let machine = tabulate(&decode_machine(&BigUint::from(j)), depth, inner);
    let constant = DyadicRational::pow2_neg(code_len);
    Ok(DominanceReport::compare(j, constant, &dispatcher, &machine))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumeration::{kraft_partial_sum, machine_count_for_code_len};

    fn bs(text: &str) -> BitString {
        text.parse().unwrap()
    }

    fn dy(text: &str) -> DyadicRational {
        text.parse().unwrap()
    }

    #[test]
    fn default_weights_total_the_partial_kraft_sum() {
        for count in [1usize, 10, 63] {
            let scheme = WeightScheme::dispatcher_default(count);
            assert_eq!(scheme.total(), kraft_partial_sum(count as u64));
        }
    }

    #[test]
    fn invalid_schemes_are_rejected() {
        let zero = WeightScheme::new(vec![dy("1/2"), dy("0")]).unwrap_err();
        assert!(matches!(zero, WeightError::NonPositive { index: 1, .. }));
        let heavy = WeightScheme::new(vec![dy("3/4"), dy("1/2")]).unwrap_err();
        assert_eq!(heavy, WeightError::SumAboveOne { total: dy("5/4") });
    }

    #[test]
    fn mixture_value_matches_hand_derivation() {
        // Machines 0 and 1 never emit; machine 2 emits zeros forever.
        let scheme = WeightScheme::new(vec![dy("1/4"), dy("1/4"), dy("1/4")]).unwrap();
        let budget = Budget::new(4, 16);
        assert_eq!(mixture_value(&scheme, &bs("00"), budget), dy("1/4"));
        assert_eq!(
            mixture_value(&scheme, &bs("1"), budget),
            DyadicRational::zero()
        );
    }

    #[test]
    fn empty_string_gets_the_covered_weight_only() {
        let budget = Budget::new(11, 16);
        let covered = machine_count_for_code_len(budget.max_len);
        assert_eq!(covered, 63);
        for count in [63usize, 100] {
            let scheme = WeightScheme::dispatcher_default(count);
            let value = mixture_value(&scheme, &BitString::new(), budget);
            assert_eq!(value, kraft_partial_sum(covered));
            assert!(value < DyadicRational::one());
        }
    }

    #[test]
    fn single_machine_mixture_is_one_scaled_term() {
        let scheme = WeightScheme::new(vec![dy("1/2")]).unwrap();
        let budget = Budget::new(6, 16);
        // Machine 0 never emits, so only the empty string has mass.
        assert_eq!(mixture_value(&scheme, &BitString::new(), budget), dy("1/2"));
        assert_eq!(
            mixture_value(&scheme, &bs("0"), budget),
            DyadicRational::zero()
        );
    }

    #[test]
    fn mixture_tables_agree_with_pointwise_values_and_are_semimeasures() {
        let scheme = WeightScheme::dispatcher_default(15);
        let budget = Budget::new(7, 32);
        let table = mixture_table(&scheme, 2, budget);
        for x in BitString::all_up_to_len(2) {
            assert_eq!(table.value(&x), &mixture_value(&scheme, &x, budget));
        }
        assert!(table.check_semimeasure().is_empty());
    }

    #[test]
    fn split_sum_holds_at_a_small_budget() {
        let budget = Budget::new(7, 32);
        let count = machine_count_for_code_len(budget.max_len) as usize;
        let report = split_sum_check(2, budget, count);
        assert!(
            report.passed,
            "discrepancies: {:?}",
            report.discrepancies().collect::<Vec<_>>()
        );
        assert_eq!(report.rows.len(), 6);
    }

    #[test]
    fn split_sum_fails_honestly_when_machines_are_missing() {
        let budget = Budget::new(7, 32);
        let report = split_sum_check(2, budget, 3);
        assert!(!report.passed);
    }

    #[test]
    fn dominance_constant_is_frozen_for_machine_zero() {
        let report = dominance_check(0, 2, Budget::new(7, 32)).unwrap();
        assert_eq!(report.constant, dy("1/2"));
        assert!(report.passed);
    }

    #[test]
    fn dominance_holds_with_one_constant_across_budgets() {
        for j in [2u64, 4, 5] {
            let constant = DyadicRational::pow2_neg(index_code_len(&BigUint::from(j)));
            for budget in [Budget::new(5, 8), Budget::new(7, 32), Budget::new(9, 64)] {
                let report = dominance_check(j, 2, budget).unwrap();
                assert_eq!(report.constant, constant);
                assert!(report.passed, "machine {j} at {budget:?}");
            }
        }
    }

    #[test]
    fn dominance_needs_the_codeword_to_fit() {
        let err = dominance_check(63, 2, Budget::new(11, 16)).unwrap_err();
        assert_eq!(
            err,
            CoverageError::BudgetTooSmall {
                index: 63,
                code_len: 13,
                max_len: 11
            }
        );
    }
}
