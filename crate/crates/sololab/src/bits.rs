//! Finite binary strings.
//!
//! Used for machine inputs, emitted outputs, codewords, and the cylinder
//! identifiers that semimeasure tables are keyed by. Ordering is shortlex
//! (by length, then lexicographically) so that table iteration visits
//! ε, 0, 1, 00, 01, ... in order.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct BitString(Vec<bool>);

impl BitString {
    pub fn new() -> Self {
        BitString(Vec::new())
    }

    pub fn from_bits(bits: Vec<bool>) -> Self {
        BitString(bits)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn bit(&self, i: usize) -> bool {
        self.0[i]
    }

    pub fn push(&mut self, bit: bool) {
        self.0.push(bit);
    }

    pub fn bits(&self) -> &[bool] {
        &self.0
    }

    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        self.0.iter().copied()
    }

    /// Child string `self` followed by `bit`.
    pub fn child(&self, bit: bool) -> BitString {
        let mut v = self.0.clone();
        v.push(bit);
        BitString(v)
    }

    pub fn concat(&self, other: &BitString) -> BitString {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        BitString(v)
    }

    /// True when `self` is a (not necessarily proper) prefix of `other`.
    pub fn is_prefix_of(&self, other: &BitString) -> bool {
        self.len() <= other.len() && other.0[..self.len()] == self.0[..]
    }

    /// All strings of length `len` in lexicographic order.
    pub fn all_of_len(len: usize) -> Vec<BitString> {
        let mut out = vec![BitString::new()];
        for _ in 0..len {
            let mut next = Vec::with_capacity(out.len() * 2);
            for s in &out {
                next.push(s.child(false));
                next.push(s.child(true));
            }
            out = next;
        }
        out
    }

    /// All strings of length at most `max_len`, in shortlex order.
    pub fn all_up_to_len(max_len: usize) -> Vec<BitString> {
        let mut out = Vec::new();
        for len in 0..=max_len {
            out.extend(BitString::all_of_len(len));
        }
        out
    }

    /// Renders ε for the empty string; otherwise the raw bits.
    pub fn display_or_epsilon(&self) -> String {
        if self.is_empty() {
            "ε".to_string()
        } else {
            self.to_string()
        }
    }
}

impl Ord for BitString {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for BitString {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.0 {
            write!(f, "{}", if b { '1' } else { '0' })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "\"{self}\"")
    }
}

impl serde::Serialize for BitString {
    /// Serializes as the raw bit string; ε becomes `""`.
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
#[error("bit strings may only contain 0 and 1, got {0:?}")]
pub struct BitStringParseError(pub char);

impl FromStr for BitString {
    type Err = BitStringParseError;

    /// Accepts a run of `0`/`1` characters; `ε` and `eps` denote the
    /// empty string.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s == "ε" || s == "eps" {
            return Ok(BitString::new());
        }
        let mut bits = Vec::with_capacity(s.len());
        for c in s.chars() {
            match c {
                '0' => bits.push(false),
                '1' => bits.push(true),
                other => return Err(BitStringParseError(other)),
            }
        }
        Ok(BitString(bits))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shortlex_order() {
        let all = BitString::all_up_to_len(2);
        let mut sorted = all.clone();
        sorted.sort();
        assert_eq!(all, sorted, "enumeration is already shortlex sorted");
        let strings: Vec<String> = all.iter().map(|s| s.to_string()).collect();
        assert_eq!(strings, vec!["", "0", "1", "00", "01", "10", "11"]);
    }

    #[test]
    fn prefix_relation() {
        let p: BitString = "10".parse().unwrap();
        let q: BitString = "101".parse().unwrap();
        assert!(p.is_prefix_of(&q));
        assert!(!q.is_prefix_of(&p));
        assert!(BitString::new().is_prefix_of(&p));
    }

    #[test]
    fn parse_rejects_non_bits() {
        assert_eq!("1012".parse::<BitString>(), Err(BitStringParseError('2')));
        assert_eq!("eps".parse::<BitString>(), Ok(BitString::new()));
    }
}
