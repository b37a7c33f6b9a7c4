//! Dessin witnesses: a graph family tag plus positive edge decorations.
//!
//! Genus 0 witnesses come from solving each family's linear system against
//! every arrangement of π; higher genus witnesses are found by enumerating
//! decorations and filtering on the realized partition.

use std::fmt;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::branch::BranchDatum;
use crate::partition::{parse_partition, Partition};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WitnessError {
    #[error("no witness families for genus {g}, h = {h}")]
    Unsupported { g: usize, h: usize },
    #[error("family {family} does not occur for genus {g}, h = {h}")]
    FamilyNotInContext { family: Family, g: usize, h: usize },
    #[error("family {family} takes {expected} parameters, got {got}")]
    Arity { family: Family, expected: usize, got: usize },
    #[error("parameters must be positive")]
    ZeroParam,
    #[error("parameters sum to {sum}, expected k = {k}")]
    ParamSum { sum: usize, k: usize },
    #[error("π sums to {sum}, expected 2k = {expected}")]
    WrongSum { sum: usize, expected: usize },
    #[error("π has {len} parts, expected {expected}")]
    WrongLength { len: usize, expected: usize },
}

/// The (g, h) pairs carrying witness families.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Context {
    G0H0,
    G0H1,
    G0H2,
    G1H1,
    G1H2,
    G2H3,
}

impl Context {
    pub fn new(g: usize, h: usize) -> Result<Self, WitnessError> {
        Ok(match (g, h) {
            (0, 0) => Context::G0H0,
            (0, 1) => Context::G0H1,
            (0, 2) => Context::G0H2,
            (1, 1) => Context::G1H1,
            (1, 2) => Context::G1H2,
            (2, 3) => Context::G2H3,
            _ => return Err(WitnessError::Unsupported { g, h }),
        })
    }

    pub fn genus(self) -> usize {
        match self {
            Context::G0H0 | Context::G0H1 | Context::G0H2 => 0,
            Context::G1H1 | Context::G1H2 => 1,
            Context::G2H3 => 2,
        }
    }

    pub fn h(self) -> usize {
        match self {
            Context::G0H0 => 0,
            Context::G0H1 | Context::G1H1 => 1,
            Context::G0H2 | Context::G1H2 => 2,
            Context::G2H3 => 3,
        }
    }

    pub fn arity(self) -> usize {
        match self {
            Context::G0H0 => 2,
            Context::G0H1 | Context::G1H1 => 3,
            Context::G0H2 | Context::G1H2 => 4,
            Context::G2H3 => 5,
        }
    }

    /// Number of parts of the partitions realized in this context.
    pub fn pi_len(self) -> usize {
        self.h() + 2 - 2 * self.genus()
    }

    pub fn families(self) -> &'static [Family] {
        use Family::*;
        match self {
            Context::G0H0 => &[I],
            Context::G0H1 => &[I, II],
            Context::G0H2 => &[I, II, III],
            Context::G1H1 => &[II],
            Context::G1H2 => &[I, II, III, IV],
            Context::G2H3 => &[F1, F2, F3, F4, F5, F6],
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    I,
    II,
    III,
    IV,
    F1,
    F2,
    F3,
    F4,
    F5,
    F6,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::I => "I",
            Family::II => "II",
            Family::III => "III",
            Family::IV => "IV",
            Family::F1 => "F1",
            Family::F2 => "F2",
            Family::F3 => "F3",
            Family::F4 => "F4",
            Family::F5 => "F5",
            Family::F6 => "F6",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl Serialize for Family {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

/// A family tag with canonical edge decorations, e.g. `I(5,2,1)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DessinWitness {
    context: Context,
    family: Family,
    params: Vec<usize>,
}

impl DessinWitness {
    /// Validates and canonicalizes.
    pub fn new(context: Context, family: Family, params: Vec<usize>) -> Result<Self, WitnessError> {
        if !context.families().contains(&family) {
            return Err(WitnessError::FamilyNotInContext {
                family,
                g: context.genus(),
                h: context.h(),
            });
        }
        if params.len() != context.arity() {
            return Err(WitnessError::Arity {
                family,
                expected: context.arity(),
                got: params.len(),
            });
        }
        if params.contains(&0) {
            return Err(WitnessError::ZeroParam);
        }
        Ok(DessinWitness {
            params: canonical_params(context, family, params),
            context,
            family,
        })
    }

    pub fn context(&self) -> Context {
        self.context
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn params(&self) -> &[usize] {
        &self.params
    }
}

impl fmt::Display for DessinWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}(", self.family)?;
        for (i, p) in self.params.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
        }
        f.write_str(")")
    }
}

impl Serialize for DessinWitness {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("DessinWitness", 2)?;
        st.serialize_field("family", &self.family)?;
        st.serialize_field("params", &self.params)?;
        st.end()
    }
}

fn sort_desc(xs: &mut [usize]) {
    xs.sort_unstable_by(|a, b| b.cmp(a));
}

/// Picks the representative of `params` under the family's symmetry.
fn canonical_params(context: Context, family: Family, mut p: Vec<usize>) -> Vec<usize> {
    use Family::*;
    match (context, family) {
        (Context::G0H1, I) => sort_desc(&mut p[1..3]),
        (Context::G0H1, II) | (Context::G1H1, _) => sort_desc(&mut p),
        (Context::G0H2, I) | (Context::G0H2, III) | (Context::G1H2, _) => sort_desc(&mut p[2..4]),
        (Context::G2H3, F6) => {}
        (Context::G2H3, _) => {
            let swapped = vec![p[0], p[2], p[1], p[4], p[3]];
            if swapped > p {
                p = swapped;
            }
        }
        _ => {}
    }
    p
}

/// Integer coefficients of the realized parts as linear forms in the params,
/// for the genus 0 families.
fn genus0_forms(context: Context, family: Family) -> &'static [&'static [i64]] {
    use Family::*;
    match (context, family) {
        // [2a+b, b]
        (Context::G0H0, I) => &[&[2, 1], &[0, 1]],
        // [2a+b+c, b, c]
        (Context::G0H1, I) => &[&[2, 1, 1], &[0, 1, 0], &[0, 0, 1]],
        // [a+b, a+c, b+c]
        (Context::G0H1, II) => &[&[1, 1, 0], &[1, 0, 1], &[0, 1, 1]],
        // [2a+b+c+d, b, c, d]
        (Context::G0H2, I) => &[&[2, 1, 1, 1], &[0, 1, 0, 0], &[0, 0, 1, 0], &[0, 0, 0, 1]],
        // [2a+b+c, c+d, b, d]
        (Context::G0H2, II) => &[&[2, 1, 1, 0], &[0, 0, 1, 1], &[0, 1, 0, 0], &[0, 0, 0, 1]],
        // [a+c+d, b+c, b+d, a]
        (Context::G0H2, III) => &[&[1, 0, 1, 1], &[0, 1, 1, 0], &[0, 1, 0, 1], &[1, 0, 0, 0]],
        _ => &[],
    }
}

fn realized_parts(w: &DessinWitness) -> Vec<usize> {
    use Family::*;
    let p = &w.params;
    let forms = genus0_forms(w.context, w.family);
    if !forms.is_empty() {
        return forms
            .iter()
            .map(|row| row.iter().zip(p).map(|(&c, &x)| c as usize * x).sum())
            .collect();
    }
    match (w.context, w.family) {
        (Context::G1H2, I) | (Context::G1H2, II) => {
            vec![p[0] + 2 * (p[1] + p[2] + p[3]), p[0]]
        }
        (Context::G1H2, III) => vec![2 * (p[0] + p[1]) + p[2] + p[3], p[2] + p[3]],
        (Context::G1H2, IV) => vec![p[0] + 2 * p[1] + p[2] + p[3], p[0] + p[2] + p[3]],
        // a single region
        _ => vec![2 * p.iter().sum::<usize>()],
    }
}

/// The partition π of 2k realized by `w`.
pub fn realized_partition(w: &DessinWitness, k: usize) -> Result<Partition, WitnessError> {
    let sum: usize = w.params.iter().sum();
    if sum != k {
        return Err(WitnessError::ParamSum { sum, k });
    }
    Ok(Partition::new(realized_parts(w)).expect("positive params give positive parts"))
}

fn det(m: &[Vec<i64>]) -> i64 {
    match m.len() {
        0 => 1,
        1 => m[0][0],
        2 => m[0][0] * m[1][1] - m[0][1] * m[1][0],
        n => (0..n)
            .filter(|&j| m[0][j] != 0)
            .map(|j| {
                let minor: Vec<Vec<i64>> = m[1..]
                    .iter()
                    .map(|row| row.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, &v)| v).collect())
                    .collect();
                let sign = if j % 2 == 0 { 1 } else { -1 };
                sign * m[0][j] * det(&minor)
            })
            .sum(),
    }
}

/// Positive integer solution of `forms · x = rhs`, by Cramer's rule.
fn solve_positive(forms: &[&[i64]], rhs: &[usize]) -> Option<Vec<usize>> {
    let n = forms.len();
    let m: Vec<Vec<i64>> = forms.iter().map(|r| r.to_vec()).collect();
    let d = det(&m);
    if d == 0 {
        return None;
    }
    let mut out = Vec::with_capacity(n);
    for col in 0..n {
        let mut mi = m.clone();
        for (row, &v) in mi.iter_mut().zip(rhs) {
            row[col] = v as i64;
        }
        let num = det(&mi);
        if num % d != 0 || num / d <= 0 {
            return None;
        }
        out.push((num / d) as usize);
    }
    Some(out)
}

/// All distinct orderings of `xs`, in lexicographic order.
fn distinct_arrangements(xs: &[usize]) -> Vec<Vec<usize>> {
    let mut cur = xs.to_vec();
    cur.sort_unstable();
    let mut out = vec![cur.clone()];
    loop {
        let Some(i) = (1..cur.len()).rev().find(|&i| cur[i - 1] < cur[i]) else {
            return out;
        };
        let j = (i..cur.len()).rev().find(|&j| cur[j] > cur[i - 1]).unwrap();
        cur.swap(i - 1, j);
        cur[i..].reverse();
        out.push(cur.clone());
    }
}

/// Compositions of `n` into `len` positive parts.
fn compositions(n: usize, len: usize) -> Vec<Vec<usize>> {
    fn go(n: usize, len: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if len == 1 {
            if n >= 1 {
                prefix.push(n);
                out.push(prefix.clone());
                prefix.pop();
            }
            return;
        }
        for first in 1..n.saturating_sub(len - 2) {
            prefix.push(first);
            go(n - first, len - 1, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if len > 0 && n >= len {
        go(n, len, &mut Vec::with_capacity(len), &mut out);
    }
    out
}

/// Every canonical witness realizing π, ordered by family then params.
pub fn enumerate_witnesses(g: usize, h: usize, k: usize, pi: &Partition) -> Result<Vec<DessinWitness>, WitnessError> {
    let context = Context::new(g, h)?;
    if pi.sum() != 2 * k {
        return Err(WitnessError::WrongSum {
            sum: pi.sum(),
            expected: 2 * k,
        });
    }
    if pi.len() != context.pi_len() {
        return Err(WitnessError::WrongLength {
            len: pi.len(),
            expected: context.pi_len(),
        });
    }
    let mut out = Vec::new();
    if g == 0 {
        let arrangements = distinct_arrangements(pi.parts());
        for &family in context.families() {
            let forms = genus0_forms(context, family);
            for rhs in &arrangements {
                if let Some(params) = solve_positive(forms, rhs) {
                    out.push(DessinWitness::new(context, family, params)?);
                }
            }
        }
    } else {
        let candidates = compositions(k, context.arity());
        for &family in context.families() {
            for params in &candidates {
                if canonical_params(context, family, params.clone()) != *params {
                    continue;
                }
                let w = DessinWitness {
                    context,
                    family,
                    params: params.clone(),
                };
                if Partition::new(realized_parts(&w)).ok().as_ref() == Some(pi) {
                    out.push(w);
                }
            }
        }
    }
    out.sort();
    out.dedup();
    Ok(out)
}

/// The family data with two equal partitions, with their weak Hurwitz
/// numbers as (g, h, k, π, ν). Witnesses only see the identity colouring;
/// these values account for the extra equivalences and are confirmed by the
/// monodromy oracle.
pub const COINCIDENT_RESOLUTIONS: [(usize, usize, usize, &str, u64); 7] = [
    (0, 0, 2, "2,2", 0),
    (0, 1, 3, "2,2,2", 1),
    (0, 2, 4, "2,2,2,2", 0),
    (0, 0, 2, "3,1", 1),
    (0, 1, 4, "3,3,2", 1),
    (0, 2, 6, "5,3,2,2", 3),
    (1, 2, 4, "5,3", 1),
];

/// The tabulated ν if `datum` is one of [`COINCIDENT_RESOLUTIONS`].
pub fn coincident_resolution(datum: &BranchDatum) -> Option<u64> {
    COINCIDENT_RESOLUTIONS.iter().find_map(|&(g, h, k, pi, nu)| {
        let pi = parse_partition(pi).expect("valid table entry");
        let d = crate::branch::make_heart(g, h, k, &pi).expect("valid table entry");
        (d == *datum).then_some(nu)
    })
}
