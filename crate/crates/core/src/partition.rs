//! Integer partitions: the cycle-type / valence datum used everywhere.
//!
//! Text grammar: comma-separated positive integers, each optionally raised to
//! a repetition exponent (`2^5` means five 2s), optionally wrapped in `[...]`
//! or `(...)`. Parsing canonicalizes to weakly decreasing order.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

/// A weakly decreasing sequence of positive integers together with its sum.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    parts: Vec<usize>,
    sum: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PartitionError {
    #[error("a partition needs at least one part")]
    Empty,
    #[error("parts must be positive")]
    ZeroPart,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{kind} at position {position}")]
pub struct ParsePartitionError {
    /// Byte offset into the input where the problem was found.
    pub position: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("empty partition")]
    Empty,
    #[error("empty part")]
    EmptyPart,
    #[error("parts must be positive integers")]
    NonPositive,
    #[error("expected a positive integer")]
    NotANumber,
    #[error("malformed exponent")]
    MalformedExponent,
    #[error("unbalanced brackets")]
    Brackets,
}

impl Partition {
    /// Builds a partition from parts in any order.
    pub fn new(mut parts: Vec<usize>) -> Result<Self, PartitionError> {
        if parts.is_empty() {
            return Err(PartitionError::Empty);
        }
        if parts.contains(&0) {
            return Err(PartitionError::ZeroPart);
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        let sum = parts.iter().sum();
        Ok(Partition { parts, sum })
    }

    /// `[value; count]`, e.g. the `[2,…,2]` of a fixed-point-free involution.
    pub fn repeated(value: usize, count: usize) -> Result<Self, PartitionError> {
        Self::new(vec![value; count])
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn sum(&self) -> usize {
        self.sum
    }

    /// Number of parts, ℓ.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    /// Always false: partitions have at least one part.
    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn contains(&self, value: usize) -> bool {
        self.parts.contains(&value)
    }

    pub fn largest(&self) -> usize {
        self.parts[0]
    }

    pub fn smallest(&self) -> usize {
        self.parts[self.parts.len() - 1]
    }

    /// `(length, multiplicity)` pairs with lengths in decreasing order.
    pub fn multiplicities(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> = Vec::new();
        for &p in &self.parts {
            match out.last_mut() {
                Some((v, m)) if *v == p => *m += 1,
                _ => out.push((p, 1)),
            }
        }
        out
    }

    /// The tuple form `(14,1,1)` used in printed tables.
    pub fn to_tuple_string(&self) -> String {
        format!("({})", self.join())
    }

    fn join(&self) -> String {
        self.parts
            .iter()
            .map(|p| p.to_string())
            .collect::<Vec<_>>()
            .join(",")
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.join())
    }
}

impl FromStr for Partition {
    type Err = ParsePartitionError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_partition(s)
    }
}

/// Parses the partition grammar described in the module docs.
pub fn parse_partition(text: &str) -> Result<Partition, ParsePartitionError> {
    let err = |position, kind| ParsePartitionError { position, kind };

    let trimmed_start = text.len() - text.trim_start().len();
    let body = text.trim();
    let (inner, offset) = match (body.chars().next(), body.chars().last()) {
        (Some('['), Some(']')) | (Some('('), Some(')')) if body.len() >= 2 => {
            (&body[1..body.len() - 1], trimmed_start + 1)
        }
        (Some('[' | '('), _) => return Err(err(trimmed_start, ParseErrorKind::Brackets)),
        (_, Some(']' | ')')) => {
            return Err(err(trimmed_start + body.len() - 1, ParseErrorKind::Brackets))
        }
        _ => (body, trimmed_start),
    };
    if inner.trim().is_empty() {
        return Err(err(offset, ParseErrorKind::Empty));
    }

    let mut parts = Vec::new();
    let mut start = 0;
    for token in inner.split(',') {
        let position = offset + start;
        start += token.len() + 1;
        let lead = token.len() - token.trim_start().len();
        let token = token.trim();
        if token.is_empty() {
            return Err(err(position, ParseErrorKind::EmptyPart));
        }
        let (base, exponent) = match token.split_once('^') {
            Some((b, e)) => (b.trim(), Some((e.trim(), position + lead + b.len() + 1))),
            None => (token, None),
        };
        let value = parse_positive(base, position + lead)?;
        let count = match exponent {
            Some((e, epos)) => {
                if e.is_empty() || !e.bytes().all(|c| c.is_ascii_digit()) {
                    return Err(err(epos, ParseErrorKind::MalformedExponent));
                }
                match e.parse::<usize>() {
                    Ok(n) if n > 0 => n,
                    _ => return Err(err(epos, ParseErrorKind::MalformedExponent)),
                }
            }
            None => 1,
        };
        parts.extend(std::iter::repeat_n(value, count));
    }
    Partition::new(parts).map_err(|_| err(offset, ParseErrorKind::NonPositive))
}

fn parse_positive(token: &str, position: usize) -> Result<usize, ParsePartitionError> {
    let err = |kind| ParsePartitionError { position, kind };
    if let Some(rest) = token.strip_prefix('-') {
        if !rest.is_empty() && rest.bytes().all(|c| c.is_ascii_digit()) {
            return Err(err(ParseErrorKind::NonPositive));
        }
        return Err(err(ParseErrorKind::NotANumber));
    }
    if token.is_empty() || !token.bytes().all(|c| c.is_ascii_digit()) {
        return Err(err(ParseErrorKind::NotANumber));
    }
    match token.parse::<usize>() {
        Ok(0) => Err(err(ParseErrorKind::NonPositive)),
        Ok(v) => Ok(v),
        Err(_) => Err(err(ParseErrorKind::NotANumber)),
    }
}

/// All partitions of `n` into exactly `len` parts, in reverse-lexicographic
/// order (largest first part first).
pub fn partitions_with_len(n: usize, len: usize) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(len);
    fill(n, len, n, &mut current, &mut out);
    out
}

/// All partitions of `n` in reverse-lexicographic order.
pub fn partitions_of(n: usize) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut current = Vec::new();
    fill_any(n, n, &mut current, &mut out);
    out
}

fn fill(rest: usize, slots: usize, cap: usize, current: &mut Vec<usize>, out: &mut Vec<Partition>) {
    if slots == 0 {
        if rest == 0 && !current.is_empty() {
            out.push(Partition {
                parts: current.clone(),
                sum: current.iter().sum(),
            });
        }
        return;
    }
    if rest < slots {
        return;
    }
    let hi = cap.min(rest - (slots - 1));
    for part in (1..=hi).rev() {
        if part * slots < rest {
            break;
        }
        current.push(part);
        fill(rest - part, slots - 1, part, current, out);
        current.pop();
    }
}

fn fill_any(rest: usize, cap: usize, current: &mut Vec<usize>, out: &mut Vec<Partition>) {
    if rest == 0 {
        if !current.is_empty() {
            out.push(Partition {
                parts: current.clone(),
                sum: current.iter().sum(),
            });
        }
        return;
    }
    for part in (1..=cap.min(rest)).rev() {
        current.push(part);
        fill_any(rest - part, part, current, out);
        current.pop();
    }
}

impl Serialize for Partition {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.parts.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Partition {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let parts = Vec::<usize>::deserialize(deserializer)?;
        Partition::new(parts).map_err(serde::de::Error::custom)
    }
}
