//! Pick the weak convention that reproduces a suite of known values.

use std::sync::OnceLock;

use serde::Serialize;
use thiserror::Error;

use super::{oracle_counts, OracleError, OracleOptions, WeakConvention};
use crate::branch::{make_heart, BranchDatum};
use crate::partition::parse_partition;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CalibrationError {
    #[error("no convention fits: {datum} expects {expected}, oracle gives {got:?} by convention")]
    NoFit { datum: String, expected: u64, got: [u64; 4] },
    #[error("suite does not single out a convention: {candidates:?}")]
    Ambiguous { candidates: Vec<WeakConvention> },
    #[error(transparent)]
    Oracle(#[from] OracleError),
}

/// The unique convention matching every `(datum, ν)` pair.
pub fn calibrate_convention(suite: &[(BranchDatum, u64)], opts: &OracleOptions) -> Result<WeakConvention, CalibrationError> {
    let mut candidates = WeakConvention::ALL.to_vec();
    for (datum, expected) in suite {
        let counts = oracle_counts(datum, opts)?;
        candidates.retain(|&c| counts.weak(c) == *expected);
        if candidates.is_empty() {
            return Err(CalibrationError::NoFit {
                datum: datum.to_string(),
                expected: *expected,
                got: counts.weak,
            });
        }
    }
    match candidates.as_slice() {
        [only] => Ok(*only),
        _ => Err(CalibrationError::Ambiguous { candidates }),
    }
}

/// Reference values for family data up to degree 12.
pub fn default_suite() -> Vec<(BranchDatum, u64)> {
    let rows: [(usize, usize, usize, &str, u64); 10] = [
        (0, 2, 5, "4,3,2,1", 2),
        (0, 1, 5, "8,1,1", 1),
        (0, 1, 5, "5,4,1", 0),
        (1, 2, 5, "9,1", 4),
        (1, 2, 4, "5,3", 1),
        (2, 3, 5, "10", 6),
        (2, 3, 6, "12", 20),
        (0, 2, 6, "5,3,2,2", 3),
        (0, 1, 3, "2,2,2", 1),
        (0, 0, 2, "2,2", 0),
    ];
    rows.iter()
        .map(|&(g, h, k, pi, nu)| {
            let pi = parse_partition(pi).expect("valid suite entry");
            (make_heart(g, h, k, &pi).expect("valid suite entry"), nu)
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConventionChoice {
    pub convention: WeakConvention,
    /// Every convention consistent with the suite.
    pub candidates: Vec<WeakConvention>,
    /// Set when the suite alone left more than one candidate.
    pub tie_break: Option<&'static str>,
}

const TIE_BREAK: &str = "slot exchanges between equal partitions kept: they are among the generating moves of weak equivalence";

fn resolve(opts: &OracleOptions) -> Result<ConventionChoice, CalibrationError> {
    match calibrate_convention(&default_suite(), opts) {
        Ok(c) => Ok(ConventionChoice {
            convention: c,
            candidates: vec![c],
            tie_break: None,
        }),
        Err(CalibrationError::Ambiguous { candidates }) if candidates.contains(&WeakConvention::REFLECTION_AND_SLOTS) => {
            Ok(ConventionChoice {
                convention: WeakConvention::REFLECTION_AND_SLOTS,
                candidates,
                tie_break: Some(TIE_BREAK),
            })
        }
        Err(e) => Err(e),
    }
}

/// Calibrates on [`default_suite`] once per process.
pub fn auto_convention(opts: &OracleOptions) -> Result<ConventionChoice, CalibrationError> {
    static CHOICE: OnceLock<ConventionChoice> = OnceLock::new();
    if let Some(c) = CHOICE.get() {
        return Ok(c.clone());
    }
    let c = resolve(opts)?;
    Ok(CHOICE.get_or_init(|| c).clone())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_suite_is_ambiguous() {
        let err = calibrate_convention(&[], &OracleOptions::default()).unwrap_err();
        assert_eq!(
            err,
            CalibrationError::Ambiguous {
                candidates: WeakConvention::ALL.to_vec()
            }
        );
    }

    #[test]
    fn wrong_value_is_no_fit() {
        let mut suite = default_suite();
        suite.truncate(1);
        suite[0].1 = 5;
        assert!(matches!(
            calibrate_convention(&suite, &OracleOptions::default()),
            Err(CalibrationError::NoFit { expected: 5, .. })
        ));
    }

    #[test]
    fn default_suite_needs_reflection() {
        let err = calibrate_convention(&default_suite(), &OracleOptions::default()).unwrap_err();
        assert_eq!(
            err,
            CalibrationError::Ambiguous {
                candidates: vec![WeakConvention::REFLECTION, WeakConvention::REFLECTION_AND_SLOTS]
            }
        );
        let choice = auto_convention(&OracleOptions::default()).unwrap();
        assert_eq!(choice.convention, WeakConvention::REFLECTION_AND_SLOTS);
        assert!(choice.tie_break.is_some());
    }
}
