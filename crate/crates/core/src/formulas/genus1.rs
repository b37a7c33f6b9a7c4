use std::fmt;

use serde::Serialize;

use super::{check_shape, FormulaError, FormulaResult, Intermediate};
use crate::partition::Partition;

/// Candidate closed forms for the torus, h = 1, π = [2k].
///
/// The count is over triples `a + b + c = k` taken up to permutation. The two
/// quadratic forms are kept for comparison; the monodromy oracle gives
/// 1, 1, 2, 3 at k = 3, 4, 5, 6, which only `UnorderedTriples` reproduces.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TorusH1Formula {
    /// k(k−1)/2
    HalfKKMinusOne,
    /// binom(k−1, 2)
    BinomKMinusOneTwo,
    /// partitions of k into three positive parts, round(k²/12)
    UnorderedTriples,
}

impl TorusH1Formula {
    pub const ALL: [TorusH1Formula; 3] = [
        TorusH1Formula::HalfKKMinusOne,
        TorusH1Formula::BinomKMinusOneTwo,
        TorusH1Formula::UnorderedTriples,
    ];

    /// The oracle-confirmed candidate used by default.
    pub const DEFAULT: TorusH1Formula = TorusH1Formula::UnorderedTriples;

    pub fn evaluate(self, k: u64) -> u64 {
        match self {
            TorusH1Formula::HalfKKMinusOne => k * (k - 1) / 2,
            TorusH1Formula::BinomKMinusOneTwo => (k - 1) * (k - 2) / 2,
            TorusH1Formula::UnorderedTriples => (k * k + 6) / 12,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            TorusH1Formula::HalfKKMinusOne => "half_k_k_minus_1",
            TorusH1Formula::BinomKMinusOneTwo => "binom_k_minus_1_2",
            TorusH1Formula::UnorderedTriples => "unordered_triples",
        }
    }
}

impl fmt::Display for TorusH1Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

pub fn nu_genus1(h: usize, k: usize, pi: &Partition) -> Result<FormulaResult, FormulaError> {
    nu_genus1_with(h, k, pi, TorusH1Formula::DEFAULT)
}

/// Like [`nu_genus1`] with an explicit choice of the h = 1 candidate.
pub fn nu_genus1_with(
    h: usize,
    k: usize,
    pi: &Partition,
    h1: TorusH1Formula,
) -> Result<FormulaResult, FormulaError> {
    match h {
        1 => {
            if k < 3 {
                return Err(FormulaError::KBelowRange { k, min: 3 });
            }
            check_shape(k, pi, 1)?;
            let k64 = k as u64;
            let intermediates = TorusH1Formula::ALL
                .iter()
                .map(|c| Intermediate::int(c.name(), c.evaluate(k64) as i64))
                .collect();
            Ok(FormulaResult {
                nu: h1.evaluate(k64),
                label: None,
                formula: match h1 {
                    TorusH1Formula::HalfKKMinusOne => "genus1-h1:half_k_k_minus_1",
                    TorusH1Formula::BinomKMinusOneTwo => "genus1-h1:binom_k_minus_1_2",
                    TorusH1Formula::UnorderedTriples => "genus1-h1:unordered_triples",
                },
                intermediates,
            })
        }
        2 => {
            if k < 4 {
                return Err(FormulaError::KBelowRange { k, min: 4 });
            }
            check_shape(k, pi, 2)?;
            let p = pi.smallest() as i64;
            let k = k as i64;
            if p == k {
                return Ok(FormulaResult {
                    nu: 0,
                    label: None,
                    formula: "genus1-h2",
                    intermediates: vec![Intermediate::int("p", p)],
                });
            }
            // contributions of the four embedded graphs
            let m = k - p - 1;
            let one = m * m / 4;
            let three = (p / 2) * m;
            let four = (p - 1) * (p - 1) / 4;
            let nu = 2 * one + three + four;
            Ok(FormulaResult {
                nu: nu as u64,
                label: None,
                formula: "genus1-h2",
                intermediates: vec![
                    Intermediate::int("p", p),
                    Intermediate::int("family_I", one),
                    Intermediate::int("family_II", one),
                    Intermediate::int("family_III", three),
                    Intermediate::int("family_IV", four),
                ],
            })
        }
        _ => Err(FormulaError::Unsupported { g: 1, h }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partition::parse_partition;

    fn p(s: &str) -> Partition {
        parse_partition(s).unwrap()
    }

    fn g1h2(k: usize, small: usize) -> u64 {
        let pi = Partition::new(vec![2 * k - small, small]).unwrap();
        nu_genus1(2, k, &pi).unwrap().nu
    }

    #[test]
    fn h1_candidates() {
        let with = |k, c| nu_genus1_with(1, k, &Partition::new(vec![2 * k]).unwrap(), c).unwrap().nu;
        assert_eq!(with(3, TorusH1Formula::HalfKKMinusOne), 3);
        assert_eq!(with(5, TorusH1Formula::HalfKKMinusOne), 10);
        assert_eq!(with(3, TorusH1Formula::BinomKMinusOneTwo), 1);
        assert_eq!(with(5, TorusH1Formula::BinomKMinusOneTwo), 6);
        let defaults: Vec<u64> = (3..=8).map(|k| nu_genus1(1, k, &Partition::new(vec![2 * k]).unwrap()).unwrap().nu).collect();
        assert_eq!(defaults, [1, 1, 2, 3, 4, 5]);
    }

    /// Brute-force count of partitions of k into three positive parts.
    #[test]
    fn unordered_triples_matches_enumeration() {
        for k in 3..=60u64 {
            let brute = (1..=k)
                .flat_map(|a| (1..=a).map(move |b| (a, b)))
                .filter(|&(a, b)| a + b < k && k - a - b <= b)
                .count() as u64;
            assert_eq!(TorusH1Formula::UnorderedTriples.evaluate(k), brute, "k={k}");
        }
    }

    #[test]
    fn h2_examples() {
        assert_eq!(g1h2(4, 1), 2);
        assert_eq!(g1h2(4, 2), 1);
        assert_eq!(g1h2(4, 4), 0);
        assert_eq!(g1h2(5, 1), 4);
    }

    #[test]
    fn h2_floor_brackets_match_sums() {
        // the bracketed closed forms equal the sums they come from
        for k in 4..=30i64 {
            for p in 1..k {
                let one: i64 = (1..=k - p - 2).map(|b| (k - p - b) / 2).sum();
                assert_eq!(one, (k - p - 1).pow(2) / 4);
                let four: i64 = (1..=p - 2).map(|a| (p - a) / 2).sum();
                assert_eq!(four, (p - 1).pow(2) / 4);
            }
        }
    }

    #[test]
    fn errors() {
        assert_eq!(
            nu_genus1(1, 2, &p("4")).unwrap_err(),
            FormulaError::KBelowRange { k: 2, min: 3 }
        );
        assert_eq!(
            nu_genus1(1, 4, &p("5,3")).unwrap_err(),
            FormulaError::WrongLength { len: 2, expected: 1 }
        );
        assert_eq!(
            nu_genus1(2, 4, &p("8")).unwrap_err(),
            FormulaError::WrongLength { len: 1, expected: 2 }
        );
        assert_eq!(
            nu_genus1(3, 5, &p("10")).unwrap_err(),
            FormulaError::Unsupported { g: 1, h: 3 }
        );
    }
}
