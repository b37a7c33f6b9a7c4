//! Branch data for covers of the sphere with three branching points.
//!
//! Only orientable sources are modeled. The target is always the sphere and
//! n = 3, so Riemann–Hurwitz reads `(2 − 2g) − (ℓ₁ + ℓ₂ + ℓ₃) = −d`.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::partition::Partition;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DatumError {
    #[error("malformed datum: partition {slot} sums to {sum}, expected degree {degree}")]
    Malformed { slot: usize, sum: usize, degree: usize },
    #[error("degree must be positive")]
    ZeroDegree,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HeartError {
    #[error("h = {h} is below the compatibility window h ≥ 2g − 1 for g = {g}")]
    BelowWindow { g: usize, h: usize },
    #[error("k = {k} is too small: need k ≥ h + 2 = {min}")]
    DegreeTooSmall { k: usize, min: usize },
    #[error("π sums to {sum}, expected 2k = {expected}")]
    WrongSum { sum: usize, expected: usize },
    #[error("π has {len} parts, expected ℓ = h − 2g + 2 = {expected}")]
    WrongLength { len: usize, expected: usize },
}

/// `(g, d, π₁, π₂, π₃)`: a three-point branch datum over the sphere.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "DatumJson", into = "DatumJson")]
pub struct BranchDatum {
    genus: usize,
    degree: usize,
    partitions: [Partition; 3],
}

/// Wire form: `{"g": 0, "d": 6, "partitions": [[2,2,2],[3,3],[4,2]]}`.
#[derive(Serialize, Deserialize)]
struct DatumJson {
    g: usize,
    d: usize,
    partitions: [Partition; 3],
}

impl TryFrom<DatumJson> for BranchDatum {
    type Error = DatumError;
    fn try_from(j: DatumJson) -> Result<Self, DatumError> {
        BranchDatum::new(j.g, j.d, j.partitions)
    }
}

impl From<BranchDatum> for DatumJson {
    fn from(b: BranchDatum) -> Self {
        DatumJson {
            g: b.genus,
            d: b.degree,
            partitions: b.partitions,
        }
    }
}

impl BranchDatum {
    /// Checks that every partition sums to `degree`. Riemann–Hurwitz is not
    /// enforced here; see [`BranchDatum::rh_compatible`].
    pub fn new(genus: usize, degree: usize, partitions: [Partition; 3]) -> Result<Self, DatumError> {
        if degree == 0 {
            return Err(DatumError::ZeroDegree);
        }
        for (slot, p) in partitions.iter().enumerate() {
            if p.sum() != degree {
                return Err(DatumError::Malformed {
                    slot: slot + 1,
                    sum: p.sum(),
                    degree,
                });
            }
        }
        Ok(BranchDatum {
            genus,
            degree,
            partitions,
        })
    }

    /// Builds the datum with the genus forced by Riemann–Hurwitz, if that
    /// genus is a non-negative integer.
    pub fn from_partitions(partitions: [Partition; 3]) -> Result<Option<Self>, DatumError> {
        let degree = partitions[0].sum();
        let lengths: usize = partitions.iter().map(Partition::len).sum();
        // 2 − 2g = ℓ₁ + ℓ₂ + ℓ₃ − d
        let two_minus_2g = lengths as i64 - degree as i64;
        let genus = if two_minus_2g <= 2 && two_minus_2g % 2 == 0 {
            Some(((2 - two_minus_2g) / 2) as usize)
        } else {
            None
        };
        match genus {
            Some(g) => Self::new(g, degree, partitions).map(Some),
            None => Self::new(0, degree, partitions).map(|_| None),
        }
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn partitions(&self) -> &[Partition; 3] {
        &self.partitions
    }

    pub fn lengths(&self) -> [usize; 3] {
        [
            self.partitions[0].len(),
            self.partitions[1].len(),
            self.partitions[2].len(),
        ]
    }

    /// χ(Σ̃) = 2 − 2g.
    pub fn source_euler_characteristic(&self) -> i64 {
        2 - 2 * self.genus as i64
    }

    /// χ(Σ̃) − (ℓ₁ + ℓ₂ + ℓ₃) = d·(χ(S) − 3) with χ(S) = 2.
    pub fn rh_compatible(&self) -> bool {
        let lengths: i64 = self.lengths().iter().map(|&l| l as i64).sum();
        self.source_euler_characteristic() - lengths == -(self.degree as i64)
    }

    /// Slot pairs `(i, j)` (0-based, i < j) whose partitions coincide.
    pub fn equal_slots(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..3 {
            for j in i + 1..3 {
                if self.partitions[i] == self.partitions[j] {
                    out.push((i, j));
                }
            }
        }
        out
    }

    pub fn has_repeated_partitions(&self) -> bool {
        !self.equal_slots().is_empty()
    }

    /// Canonical key used by caches: `g=…;d=…;[…];[…];[…]`.
    pub fn canonical_key(&self) -> String {
        format!(
            "g={};d={};{};{};{}",
            self.genus, self.degree, self.partitions[0], self.partitions[1], self.partitions[2]
        )
    }
}

impl fmt::Display for BranchDatum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "(g={}, d={}, {}, {}, {})",
            self.genus, self.degree, self.partitions[0], self.partitions[1], self.partitions[2]
        )
    }
}

/// Parameters of the family `[2,…,2], [2h+1,3,2,…,2], π` in degree 2k.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct HeartParams {
    pub g: usize,
    pub h: usize,
    pub k: usize,
    pub pi: Partition,
}

impl HeartParams {
    /// ℓ(π) = h − 2g + 2, or `None` outside the window h ≥ 2g − 1.
    pub fn expected_len(g: usize, h: usize) -> Option<usize> {
        (h + 2).checked_sub(2 * g).filter(|&l| l >= 1)
    }

    pub fn datum(&self) -> Result<BranchDatum, HeartError> {
        make_heart(self.g, self.h, self.k, &self.pi)
    }
}

/// `[2h+1, 3, 2^{k−h−2}]`, the second partition of the family.
pub fn heart_second_partition(h: usize, k: usize) -> Partition {
    let mut parts = vec![2 * h + 1, 3];
    parts.extend(std::iter::repeat_n(2, k - h - 2));
    Partition::new(parts).expect("positive parts")
}

/// Constructs the family datum with π₁ = [2]ᵏ, π₂ = [2h+1, 3, 2^{k−h−2}], π₃ = π.
pub fn make_heart(g: usize, h: usize, k: usize, pi: &Partition) -> Result<BranchDatum, HeartError> {
    let expected = HeartParams::expected_len(g, h).ok_or(HeartError::BelowWindow { g, h })?;
    if k < h + 2 {
        return Err(HeartError::DegreeTooSmall { k, min: h + 2 });
    }
    if pi.sum() != 2 * k {
        return Err(HeartError::WrongSum {
            sum: pi.sum(),
            expected: 2 * k,
        });
    }
    if pi.len() != expected {
        return Err(HeartError::WrongLength {
            len: pi.len(),
            expected,
        });
    }
    let first = Partition::repeated(2, k).expect("k > 0");
    let second = heart_second_partition(h, k);
    let datum = BranchDatum::new(g, 2 * k, [first, second, pi.clone()])
        .expect("all three partitions sum to 2k");
    debug_assert!(datum.rh_compatible());
    Ok(datum)
}

/// Which coincidences between the family's partitions are possible at
/// `(g, h, k)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Coincidence {
    None,
    /// g = 0, k = h + 2: π₁ = π₃ = [2,…,2] when π is all 2s.
    Case1,
    /// k = 2h + 2 − 2g: π₂ = π₃ when π equals the second partition.
    Case2,
    /// Both at once (only g = 0, h = 0, k = 2).
    Both,
}

impl Coincidence {
    pub fn case1(self) -> bool {
        matches!(self, Coincidence::Case1 | Coincidence::Both)
    }

    pub fn case2(self) -> bool {
        matches!(self, Coincidence::Case2 | Coincidence::Both)
    }
}

impl fmt::Display for Coincidence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Coincidence::None => "none",
            Coincidence::Case1 => "case1",
            Coincidence::Case2 => "case2",
            Coincidence::Both => "case1+case2",
        };
        f.write_str(s)
    }
}

pub fn coincident_partitions(g: usize, h: usize, k: usize) -> Coincidence {
    let case1 = g == 0 && k == h + 2;
    let case2 = (2 * h + 2).checked_sub(2 * g) == Some(k);
    match (case1, case2) {
        (false, false) => Coincidence::None,
        (true, false) => Coincidence::Case1,
        (false, true) => Coincidence::Case2,
        (true, true) => Coincidence::Both,
    }
}

/// The coincidence a concrete π actually realizes at `(g, h, k)`.
pub fn realized_coincidence(g: usize, h: usize, k: usize, pi: &Partition) -> Coincidence {
    let possible = coincident_partitions(g, h, k);
    let case1 = possible.case1() && pi.parts().iter().all(|&p| p == 2);
    let case2 = possible.case2() && *pi == heart_second_partition(h, k);
    match (case1, case2) {
        (false, false) => Coincidence::None,
        (true, false) => Coincidence::Case1,
        (false, true) => Coincidence::Case2,
        (true, true) => Coincidence::Both,
    }
}
