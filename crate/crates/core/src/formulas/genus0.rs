use std::fmt;

use serde::Serialize;

use super::{check_shape, CaseLabel, FormulaError, FormulaResult, Intermediate};
use crate::partition::Partition;

/// Case of a three-part π for genus 0, h = 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum SphereH1Case {
    /// π contains k.
    #[serde(rename = "i")]
    I,
    /// π = [2k−2q, q, q] with q < k/2.
    #[serde(rename = "ii-a")]
    IIa,
    /// π = [2k−2q, q, q] with k/2 < q < k.
    #[serde(rename = "ii-b")]
    IIb,
    /// distinct, r < k/2 and q < k − r.
    #[serde(rename = "iii-a")]
    IIIa,
    /// distinct, r < k/2 and k − r < q.
    #[serde(rename = "iii-b")]
    IIIb,
    /// distinct, r ≥ k/2.
    #[serde(rename = "iii-c")]
    IIIc,
}

impl fmt::Display for SphereH1Case {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SphereH1Case::I => "i",
            SphereH1Case::IIa => "ii-a",
            SphereH1Case::IIb => "ii-b",
            SphereH1Case::IIIa => "iii-a",
            SphereH1Case::IIIb => "iii-b",
            SphereH1Case::IIIc => "iii-c",
        })
    }
}

/// Multiplicity pattern of a four-part π.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Pattern {
    Pppp,
    Ppqq,
    /// three equal entries, either [p,p,p,q] or [p,q,q,q]
    Pppq,
    /// exactly one repeated pair
    Ppqr,
    Pqrs,
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Pattern::Pppp => "pppp",
            Pattern::Ppqq => "ppqq",
            Pattern::Pppq => "pppq/pqqq",
            Pattern::Ppqr => "ppqr/pqqr/pqrr",
            Pattern::Pqrs => "pqrs",
        })
    }
}

/// Classifies π = [x, y, z] (x ≥ y ≥ z, sum 2k).
pub fn classify_sphere_h1(k: usize, pi: &Partition) -> Result<SphereH1Case, FormulaError> {
    check_shape(k, pi, 3)?;
    if pi.contains(k) {
        return Ok(SphereH1Case::I);
    }
    let (x, y, z) = (pi.parts()[0], pi.parts()[1], pi.parts()[2]);
    if x == y || y == z {
        // the repeated value; 2q = k would put k in π
        let q = y;
        return Ok(if 2 * q < k {
            SphereH1Case::IIa
        } else {
            SphereH1Case::IIb
        });
    }
    let (q, r) = (y, z);
    if 2 * r < k {
        if q + r < k {
            Ok(SphereH1Case::IIIa)
        } else {
            Ok(SphereH1Case::IIIb)
        }
    } else {
        Ok(SphereH1Case::IIIc)
    }
}

/// Whether some two entries of π sum to k (checked over all pairs).
pub fn k_is_pair_sum(k: usize, pi: &Partition) -> bool {
    let parts = pi.parts();
    (0..parts.len()).any(|i| (i + 1..parts.len()).any(|j| parts[i] + parts[j] == k))
}

pub fn classify_sphere_h2(k: usize, pi: &Partition) -> Result<CaseLabel, FormulaError> {
    check_shape(k, pi, 4)?;
    let mut mults: Vec<usize> = pi.multiplicities().into_iter().map(|(_, m)| m).collect();
    mults.sort_unstable_by(|a, b| b.cmp(a));
    let pattern = match mults.as_slice() {
        [4] => Pattern::Pppp,
        [2, 2] => Pattern::Ppqq,
        [3, 1] => Pattern::Pppq,
        [2, 1, 1] => Pattern::Ppqr,
        _ => Pattern::Pqrs,
    };
    let k_pair_sum = k_is_pair_sum(k, pi);
    // on the sorted array the pair test reduces to largest + smallest = k
    if k_pair_sum != (pi.largest() + pi.smallest() == k) {
        return Err(FormulaError::Inconsistent("pair-sum reduction p + s = k"));
    }
    Ok(CaseLabel::SphereH2 {
        pattern,
        k_in_pi: pi.contains(k),
        k_pair_sum,
    })
}

pub fn nu_genus0(h: usize, k: usize, pi: &Partition) -> Result<FormulaResult, FormulaError> {
    if h > 2 {
        return Err(FormulaError::Unsupported { g: 0, h });
    }
    if k < h + 2 {
        return Err(FormulaError::KBelowRange { k, min: h + 2 });
    }
    match h {
        0 => {
            check_shape(k, pi, 2)?;
            Ok(FormulaResult {
                nu: u64::from(!pi.contains(k)),
                label: None,
                formula: "genus0-h0",
                intermediates: vec![],
            })
        }
        1 => {
            let case = classify_sphere_h1(k, pi)?;
            Ok(FormulaResult {
                nu: u64::from(case != SphereH1Case::I),
                label: Some(CaseLabel::SphereH1 { case }),
                formula: "genus0-h1",
                intermediates: vec![],
            })
        }
        _ => {
            let label = classify_sphere_h2(k, pi)?;
            let CaseLabel::SphereH2 {
                pattern,
                k_in_pi,
                k_pair_sum,
            } = label
            else {
                unreachable!()
            };
            let nu = match pattern {
                Pattern::Pppp | Pattern::Ppqq => 0,
                Pattern::Pppq => u64::from(!k_in_pi),
                Pattern::Ppqr => {
                    if k_in_pi || k_pair_sum {
                        1
                    } else {
                        3
                    }
                }
                Pattern::Pqrs => {
                    if k_pair_sum {
                        2
                    } else if k_in_pi {
                        3
                    } else {
                        6
                    }
                }
            };
            Ok(FormulaResult {
                nu,
                label: Some(label),
                formula: "genus0-h2",
                intermediates: vec![
                    Intermediate::int("k_in_pi", i64::from(k_in_pi)),
                    Intermediate::int("k_pair_sum", i64::from(k_pair_sum)),
                ],
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partition::{parse_partition, partitions_with_len};

    fn p(s: &str) -> Partition {
        parse_partition(s).unwrap()
    }

    #[test]
    fn sphere_h1_examples() {
        let r = nu_genus0(1, 8, &p("14,1,1")).unwrap();
        assert_eq!(r.nu, 1);
        assert_eq!(r.label.unwrap().to_string(), "ii-a");
        let r = nu_genus0(1, 8, &p("8,4,4")).unwrap();
        assert_eq!((r.nu, r.label.unwrap().to_string()), (0, "i".to_string()));
    }

    #[test]
    fn sphere_h2_examples() {
        assert_eq!(nu_genus0(2, 6, &p("5,4,2,1")).unwrap().nu, 2);
        assert_eq!(nu_genus0(2, 6, &p("4,4,3,1")).unwrap().nu, 3);
        assert_eq!(nu_genus0(2, 4, &p("2,2,2,2")).unwrap().nu, 0);
        assert_eq!(nu_genus0(2, 6, &p("6,3,2,1")).unwrap().nu, 3);
        assert_eq!(nu_genus0(2, 6, &p("7,2,2,1")).unwrap().nu, 3);
        assert_eq!(nu_genus0(2, 6, &p("6,4,1,1")).unwrap().nu, 1);
        assert_eq!(nu_genus0(2, 5, &p("3,3,3,1")).unwrap().nu, 1);
        assert_eq!(nu_genus0(2, 6, &p("6,2,2,2")).unwrap().nu, 0);
        assert_eq!(nu_genus0(2, 7, &p("5,4,3,2")).unwrap().nu, 2);
        assert_eq!(nu_genus0(2, 8, &p("9,4,2,1")).unwrap().nu, 6);
    }

    #[test]
    fn sphere_h0_examples() {
        assert_eq!(nu_genus0(0, 2, &p("3,1")).unwrap().nu, 1);
        assert_eq!(nu_genus0(0, 3, &p("3,3")).unwrap().nu, 0);
    }

    #[test]
    fn errors() {
        assert_eq!(
            nu_genus0(1, 8, &p("8,8")).unwrap_err(),
            FormulaError::WrongLength { len: 2, expected: 3 }
        );
        assert_eq!(
            nu_genus0(1, 8, &p("8,4,3")).unwrap_err(),
            FormulaError::WrongSum { sum: 15, expected: 16 }
        );
        assert_eq!(
            nu_genus0(3, 8, &p("8,4,4")).unwrap_err(),
            FormulaError::Unsupported { g: 0, h: 3 }
        );
        assert_eq!(
            nu_genus0(2, 3, &p("3,1,1,1")).unwrap_err(),
            FormulaError::KBelowRange { k: 3, min: 4 }
        );
    }

    #[test]
    fn pair_sum_reduction_holds() {
        for k in 4..=30 {
            for pi in partitions_with_len(2 * k, 4) {
                let full = k_is_pair_sum(k, &pi);
                assert_eq!(full, pi.largest() + pi.smallest() == k, "{pi} k={k}");
                assert!(classify_sphere_h2(k, &pi).is_ok());
            }
        }
    }

    #[test]
    fn h1_classification_is_total_and_consistent() {
        for k in 3..=30 {
            for pi in partitions_with_len(2 * k, 3) {
                let case = classify_sphere_h1(k, &pi).unwrap();
                let (x, y, z) = (pi.parts()[0], pi.parts()[1], pi.parts()[2]);
                match case {
                    SphereH1Case::I => assert!(pi.contains(k)),
                    SphereH1Case::IIa | SphereH1Case::IIb => assert!(x == y || y == z),
                    _ => {
                        assert!(x > y && y > z);
                        // (r < 2k/3 and q < k − r/2 follow from x > y > z)
                        assert!(3 * z < 2 * k && 2 * y < 2 * k - z);
                    }
                }
            }
        }
    }
}
