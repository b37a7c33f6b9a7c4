//! Closed-form weak Hurwitz numbers for the family
//! `[2,…,2], [2h+1,3,2,…,2], π` in degree 2k.
//!
//! Covered: genus 0 with h ∈ {0,1,2}, genus 1 with h ∈ {1,2}, genus 2 with
//! h = 3. Bracketed quantities in the closed forms are integer floors. All
//! arithmetic is exact; 64-bit overflow is reported, never wrapped.

mod genus0;
mod genus1;
mod genus2;

use std::fmt;

use num_rational::Ratio;
use serde::Serialize;
use thiserror::Error;

use crate::partition::Partition;

pub use genus0::{classify_sphere_h1, classify_sphere_h2, nu_genus0, k_is_pair_sum, Pattern, SphereH1Case};
pub use genus1::{nu_genus1, nu_genus1_with, TorusH1Formula};
pub use genus2::{nu_genus2, x_closed_form, x_sum, z_count};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormulaError {
    #[error("no closed form for genus {g}, h = {h}")]
    Unsupported { g: usize, h: usize },
    #[error("π has {len} parts, expected {expected}")]
    WrongLength { len: usize, expected: usize },
    #[error("π sums to {sum}, expected 2k = {expected}")]
    WrongSum { sum: usize, expected: usize },
    #[error("k = {k} is below the range of this formula (k ≥ {min})")]
    KBelowRange { k: usize, min: usize },
    #[error("arithmetic overflow evaluating the closed form at k = {k}")]
    Overflow { k: usize },
    #[error("internal identity failed: {0}")]
    Inconsistent(&'static str),
}

/// Table-style case label for the genus-0 families.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CaseLabel {
    SphereH1 { case: SphereH1Case },
    SphereH2 { pattern: Pattern, k_in_pi: bool, k_pair_sum: bool },
}

impl fmt::Display for CaseLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CaseLabel::SphereH1 { case } => case.fmt(f),
            CaseLabel::SphereH2 {
                pattern,
                k_in_pi,
                k_pair_sum,
            } => {
                write!(f, "{pattern}")?;
                if *k_in_pi {
                    write!(f, " k-in-pi")?;
                }
                if *k_pair_sum {
                    write!(f, " k-pair-sum")?;
                }
                Ok(())
            }
        }
    }
}

/// A named exact quantity from a derivation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Intermediate {
    pub name: &'static str,
    pub value: Ratio<i64>,
}

impl Intermediate {
    fn int(name: &'static str, value: i64) -> Self {
        Intermediate {
            name,
            value: Ratio::from_integer(value),
        }
    }
}

impl fmt::Display for Intermediate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}={}", self.name, self.value)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FormulaResult {
    pub nu: u64,
    pub label: Option<CaseLabel>,
    /// Which closed form produced `nu`.
    pub formula: &'static str,
    pub intermediates: Vec<Intermediate>,
}

impl FormulaResult {
    pub fn intermediate(&self, name: &str) -> Option<Ratio<i64>> {
        self.intermediates
            .iter()
            .find(|i| i.name == name)
            .map(|i| i.value)
    }
}

/// The (g, h) pairs with a closed form.
pub const SUPPORTED: [(usize, usize); 6] = [(0, 0), (0, 1), (0, 2), (1, 1), (1, 2), (2, 3)];

pub fn is_supported(g: usize, h: usize) -> bool {
    SUPPORTED.contains(&(g, h))
}

/// Dispatches to the closed form for `(g, h)`.
pub fn formula_nu(g: usize, h: usize, k: usize, pi: &Partition) -> Result<FormulaResult, FormulaError> {
    match g {
        0 => nu_genus0(h, k, pi),
        1 => nu_genus1(h, k, pi),
        2 if h == 3 => {
            check_shape(k, pi, 1)?;
            nu_genus2(k)
        }
        _ => Err(FormulaError::Unsupported { g, h }),
    }
}

fn check_shape(k: usize, pi: &Partition, len: usize) -> Result<(), FormulaError> {
    if pi.sum() != 2 * k {
        return Err(FormulaError::WrongSum {
            sum: pi.sum(),
            expected: 2 * k,
        });
    }
    if pi.len() != len {
        return Err(FormulaError::WrongLength {
            len: pi.len(),
            expected: len,
        });
    }
    Ok(())
}
