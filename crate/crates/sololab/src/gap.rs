//! Splitting gaps of tabulated semimeasures, and a transform that
//! erases a table's root gap while keeping its dominance properties.
//!
//! The gap of `x` is `v(x) - v(x0) - v(x1)`, the mass that stops at
//! `x` instead of continuing. A mixture over a dispatcher always
//! leaves a positive share of each reached string's mass on programs
//! that halt there, so its relative gap `gap(x)/v(x)` has a positive
//! floor of the shape `c * 2^-len(code(|x|))`. Reports flag strings
//! whose relative gap falls under that floor for a caller-chosen `c`.
//! The `delta-prime` transform pins the root and the two length-one
//! values to `1, 1/2, 1/2` and halves everything deeper: the result
//! still dominates every machine the base mixture covered (at half
//! the constant), yet its root gap is exactly zero, so no choice of
//! `c` admits it as a mixture.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::Zero;
use serde::Serialize;

use crate::bits::BitString;
use crate::dyadic::DyadicRational;
use crate::enumeration::{decode_machine, index_code_len};
use crate::mixture::{inner_budget, mixture_table, CoverageError, DominanceReport, WeightScheme};
use crate::semimeasure::{tabulate, ApproxTable, Budget};

/// An exact ratio in lowest terms, for reporting `gap(x)/v(x)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelativeGap {
    numerator: BigInt,
    denominator: BigInt,
}

impl RelativeGap {
    fn new(gap: &DyadicRational, value: &DyadicRational) -> Self {
        let mut numerator: BigInt = gap.mantissa() << value.exponent();
        let mut denominator: BigInt = value.mantissa() << gap.exponent();
        let common = numerator.gcd(&denominator);
        if !common.is_zero() {
            numerator /= &common;
            denominator /= &common;
        }
        RelativeGap {
            numerator,
            denominator,
        }
    }

    pub fn numerator(&self) -> &BigInt {
        &self.numerator
    }

    pub fn denominator(&self) -> &BigInt {
        &self.denominator
    }
}

impl fmt::Display for RelativeGap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.numerator, self.denominator)
    }
}

impl Serialize for RelativeGap {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = serializer.serialize_struct("RelativeGap", 2)?;
        st.serialize_field("numerator", &self.numerator.to_string())?;
        st.serialize_field("denominator", &self.denominator.to_string())?;
        st.end()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct GapRow {
    pub x: BitString,
    pub value: DyadicRational,
    pub gap: DyadicRational,
    /// `gap/value` in lowest terms; absent when the value is zero.
    pub relative: Option<RelativeGap>,
    pub bound: DyadicRational,
    pub flagged: bool,
}

/// Gaps, relative gaps, and floor comparisons for every string
/// strictly inside a table's depth, in shortlex order.
#[derive(Clone, Debug, Serialize)]
pub struct GapReport {
    pub c: DyadicRational,
    pub depth: usize,
    pub budget: Budget,
    pub rows: Vec<GapRow>,
}

impl GapReport {
    pub fn flagged(&self) -> impl Iterator<Item = &GapRow> {
        self.rows.iter().filter(|row| row.flagged)
    }

    /// True when some string carries positive value but a zero gap.
    /// That violates the relative-gap floor for every positive
    /// constant, so no mixture over a dispatcher tabulates to this
    /// table at its stated budget.
    pub fn not_a_universal_mixture(&self) -> bool {
        self.rows
            .iter()
            .any(|row| !row.value.is_zero() && row.gap.is_zero())
    }
}

/// Compares each relative gap against the floor
/// `c * 2^-len(code(|x|))`, flagging strings with positive value
/// whose gap falls short. Gaps here are exact properties of the
/// table at its budget, which only bounds the unbudgeted values
/// from below.
pub fn gap_report(table: &ApproxTable, c: &DyadicRational) -> GapReport {
    let rows = table
        .iter()
        .filter(|(x, _)| x.len() < table.depth())
        .map(|(x, value)| {
            let gap = table.gap(x);
            let bound = c * &DyadicRational::pow2_neg(index_code_len(&BigUint::from(x.len())));
            let relative = (!value.is_zero()).then(|| RelativeGap::new(&gap, value));
            let flagged = !value.is_zero() && gap < &bound * value;
            GapRow {
                x: x.clone(),
                value: value.clone(),
                gap,
                relative,
                bound,
                flagged,
            }
        })
        .collect();
    GapReport {
        c: c.clone(),
        depth: table.depth(),
        budget: table.budget(),
        rows,
    }
}

/// Rebuilds a table with the root pinned to 1, both length-one
/// strings pinned to 1/2, and every deeper value halved. The root
/// gap of the result is exactly zero; everything the base table
/// dominated stays dominated at half the constant.
pub fn make_delta_prime(base: &ApproxTable) -> ApproxTable {
    let values = BitString::all_up_to_len(base.depth())
        .into_iter()
        .map(|x| {
            let v = match x.len() {
                0 => DyadicRational::one(),
                1 => DyadicRational::pow2_neg(1),
                _ => base.value(&x).halve(),
            };
            (x, v)
        })
        .collect();
    ApproxTable::from_values(base.depth(), base.budget(), values)
        .expect("domain is complete by construction")
}

/// Checks that the halved-root transform of the scheme's mixture
/// still dominates machine `j` on nonempty strings, with the
/// mixture's constant for `j` cut in half and `j` tabulated at its
/// reduced budget.
pub fn delta_prime_dominance_check(
    scheme: &WeightScheme,
    j: u64,
    depth: usize,
    budget: Budget,
) -> Result<DominanceReport, CoverageError> {
    if j as usize >= scheme.machine_count() {
        return Err(CoverageError::NotInScheme {
            index: j,
            count: scheme.machine_count(),
        });
    }
    let inner = inner_budget(budget, j).ok_or(CoverageError::BudgetTooSmall {
        index: j,
        code_len: index_code_len(&BigUint::from(j)),
        max_len: budget.max_len,
    })?;
    let delta_prime = make_delta_prime(&mixture_table(scheme, depth, budget));
    let machine = tabulate(&decode_machine(&BigUint::from(j)), depth, inner);
    let constant = scheme.weight(j as usize).halve();
    Ok(DominanceReport::compare(
        j,
        constant,
        &delta_prime,
        &machine,
    ))
}
