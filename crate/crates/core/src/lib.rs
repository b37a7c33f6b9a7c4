//! Weak and strong Hurwitz numbers for three-point covers of the sphere:
//! closed forms, dessin witnesses and a monodromy oracle.

pub mod branch;
pub mod formulas;
pub mod oracle;
pub mod partition;
pub mod perm;
pub mod stream;
pub mod witnesses;

pub use branch::{make_heart, BranchDatum, Coincidence, HeartParams};
pub use formulas::{formula_nu, FormulaError, FormulaResult};
pub use oracle::{OracleCounts, OracleError, OracleOptions, WeakConvention};
pub use partition::{parse_partition, Partition};
pub use perm::{CycleType, Permutation};
pub use witnesses::{enumerate_witnesses, realized_partition, DessinWitness};
