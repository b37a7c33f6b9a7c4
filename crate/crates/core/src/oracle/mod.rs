//! Strong and weak Hurwitz numbers by enumerating monodromy triples.
//!
//! A triple `(s1, s2, s3)` has `s1 ∘ s2 ∘ s3 = id` (with `(p ∘ q)(x) = p(q(x))`),
//! slot-wise cycle types given by the datum and a transitive group. One slot
//! (the anchor) is pinned to a class representative r, a second slot is
//! streamed through its whole class and the third is forced. Survivors are
//! reduced to one representative per orbit of the centralizer Z(r).

mod calibrate;
mod exhaustive;

use std::collections::{BTreeSet, HashSet};
use std::fmt;
use std::ops::Range;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::branch::BranchDatum;
use crate::partition::Partition;
use crate::perm::{centralizer_generators, conjugator, transitive_images, CycleType, Permutation};
use crate::stream::{ClassStream, InvolutionStream};

pub use calibrate::{auto_convention, calibrate_convention, default_suite, CalibrationError, ConventionChoice};
pub use exhaustive::{exhaustive_counts, EXHAUSTIVE_MAX_DEGREE};

pub const DEFAULT_MAX_DEGREE: usize = 16;
/// Never enumerate above this degree, whatever the configured bound.
pub const HARD_DEGREE_LIMIT: usize = 24;
/// Largest centralizer that is materialized for canonical forms.
pub const CENTRALIZER_LIMIT: u128 = 5_000_000;

const BLOCKS: u128 = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("datum {0} violates Riemann–Hurwitz")]
    Incompatible(String),
    #[error("degree {degree} exceeds the oracle bound {max}")]
    Infeasible { degree: usize, max: usize },
    #[error("degree {degree} exceeds the hard limit {HARD_DEGREE_LIMIT}")]
    HardLimit { degree: usize },
    #[error("anchor centralizer of order {order} is too large to materialize")]
    CentralizerTooLarge { order: u128 },
    #[error("invalid slot choice: stream {stream}, anchor {anchor}")]
    BadSlots { stream: usize, anchor: usize },
    #[error("thread pool: {0}")]
    ThreadPool(String),
}

/// Which extra moves generate weak equivalence beyond conjugation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct WeakConvention {
    pub include_reflection: bool,
    /// Applied only between slots carrying equal partitions.
    pub include_slot_permutations: bool,
}

impl WeakConvention {
    pub const NONE: Self = Self::new(false, false);
    pub const SLOTS: Self = Self::new(false, true);
    pub const REFLECTION: Self = Self::new(true, false);
    pub const REFLECTION_AND_SLOTS: Self = Self::new(true, true);
    pub const ALL: [Self; 4] = [Self::NONE, Self::SLOTS, Self::REFLECTION, Self::REFLECTION_AND_SLOTS];

    pub const fn new(include_reflection: bool, include_slot_permutations: bool) -> Self {
        WeakConvention {
            include_reflection,
            include_slot_permutations,
        }
    }

    fn index(self) -> usize {
        usize::from(self.include_reflection) * 2 + usize::from(self.include_slot_permutations)
    }

    pub fn name(self) -> &'static str {
        match (self.include_reflection, self.include_slot_permutations) {
            (false, false) => "conjugation",
            (false, true) => "slots",
            (true, false) => "reflection",
            (true, true) => "reflection+slots",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|c| c.name() == s)
    }
}

impl fmt::Display for WeakConvention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SlotChoice {
    pub stream: usize,
    pub anchor: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleOptions {
    /// `None` uses the global rayon pool.
    pub threads: Option<usize>,
    pub max_degree: usize,
    /// Overrides the automatic stream/anchor selection.
    pub slots: Option<SlotChoice>,
}

impl Default for OracleOptions {
    fn default() -> Self {
        OracleOptions {
            threads: None,
            max_degree: DEFAULT_MAX_DEGREE,
            slots: None,
        }
    }
}

impl OracleOptions {
    pub fn with_threads(threads: usize) -> Self {
        OracleOptions {
            threads: Some(threads),
            ..Self::default()
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MonodromyTriple {
    pub s1: Permutation,
    pub s2: Permutation,
    pub s3: Permutation,
}

impl MonodromyTriple {
    pub fn slots(&self) -> [&Permutation; 3] {
        [&self.s1, &self.s2, &self.s3]
    }

    pub fn product_is_identity(&self) -> bool {
        let images = compose(self.s1.images(), &compose(self.s2.images(), self.s3.images()));
        images.iter().enumerate().all(|(i, &x)| i == x)
    }

    pub fn is_transitive(&self) -> bool {
        transitive_images(&[self.s1.images(), self.s2.images()], self.s1.degree())
    }

    /// Product identity, slot-wise cycle types and transitivity.
    pub fn is_valid_for(&self, datum: &BranchDatum) -> bool {
        self.slots().iter().all(|s| s.degree() == datum.degree())
            && self.product_is_identity()
            && self
                .slots()
                .iter()
                .zip(datum.partitions())
                .all(|(s, p)| s.cycle_type().partition() == p)
            && self.is_transitive()
    }
}

/// Strong count and the weak count under every convention.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct OracleCounts {
    pub strong: u64,
    /// Indexed in [`WeakConvention::ALL`] order.
    pub weak: [u64; 4],
}

impl OracleCounts {
    pub fn weak(&self, conv: WeakConvention) -> u64 {
        self.weak[conv.index()]
    }
}

pub(crate) fn compose(p: &[usize], q: &[usize]) -> Vec<usize> {
    q.iter().map(|&x| p[x]).collect()
}

pub(crate) fn inverse(p: &[usize]) -> Vec<usize> {
    let mut out = vec![0; p.len()];
    for (i, &x) in p.iter().enumerate() {
        out[x] = i;
    }
    out
}

/// t · p · t⁻¹
pub(crate) fn conj(p: &[usize], t: &[usize]) -> Vec<usize> {
    let mut out = vec![0; p.len()];
    for (x, &y) in p.iter().enumerate() {
        out[t[x]] = t[y];
    }
    out
}

/// The missing slot of a triple from the other two.
pub(crate) fn forced_third(missing: usize, a: &[usize], b: &[usize]) -> Vec<usize> {
    // slots in order; a, b are the two known ones in increasing slot order
    match missing {
        // s1 = s3⁻¹ s2⁻¹
        0 => compose(&inverse(b), &inverse(a)),
        // s2 = s1⁻¹ s3⁻¹
        1 => compose(&inverse(a), &inverse(b)),
        // s3 = s2⁻¹ s1⁻¹
        _ => compose(&inverse(b), &inverse(a)),
    }
}

/// Images of the moves enabled by `conv` applied to `t`.
pub(crate) fn weak_moves(t: &[Vec<usize>; 3], conv: WeakConvention, equal: &[(usize, usize)]) -> Vec<[Vec<usize>; 3]> {
    let [s1, s2, s3] = t;
    let mut out = Vec::new();
    if conv.include_reflection {
        let s1i = inverse(s1);
        let s12 = compose(s1, s2);
        out.push([s1i.clone(), conj(&inverse(s2), s1), conj(&inverse(s3), &s12)]);
    }
    if conv.include_slot_permutations {
        for &pair in equal {
            let moved = match pair {
                (0, 1) => [s2.clone(), conj(s1, &inverse(s2)), s3.clone()],
                (1, 2) => [s1.clone(), s3.clone(), conj(s2, &inverse(s3))],
                _ => [s3.clone(), conj(s2, &inverse(s3)), s1.clone()],
            };
            out.push(moved);
        }
    }
    out
}

fn cycle_counts_into(p: &[usize], seen: &mut [bool], counts: &mut [u32]) {
    seen.iter_mut().for_each(|s| *s = false);
    counts.iter_mut().for_each(|c| *c = 0);
    for start in 0..p.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            x = p[x];
            len += 1;
        }
        counts[len] += 1;
    }
}

fn target_counts(p: &Partition, d: usize) -> Vec<u32> {
    let mut counts = vec![0u32; d + 1];
    for &x in p.parts() {
        counts[x] += 1;
    }
    counts
}

enum Stream {
    Involutions(InvolutionStream),
    Class(ClassStream),
}

impl Stream {
    fn next_into(&mut self, out: &mut [usize]) -> bool {
        match self {
            Stream::Involutions(s) => s.next_into(out),
            Stream::Class(s) => s.next_into(out),
        }
    }
}

type Key = Vec<u8>;

/// Everything fixed once per datum.
struct Plan {
    d: usize,
    stream: usize,
    anchor: usize,
    third: usize,
    stream_part: Partition,
    involutions: bool,
    r: Vec<usize>,
    z: Vec<Vec<usize>>,
    third_counts: Vec<u32>,
    equal: Vec<(usize, usize)>,
}

fn choose_slots(datum: &BranchDatum) -> SlotChoice {
    let types: Vec<CycleType> = datum.partitions().iter().cloned().map(CycleType).collect();
    let all_twos = |i: usize| types[i].partition().parts().iter().all(|&x| x == 2);
    let stream = (0..3)
        .min_by_key(|&i| (types[i].class_size(), !all_twos(i), i))
        .expect("three slots");
    let anchor = (0..3)
        .filter(|&i| i != stream)
        .min_by_key(|&i| (types[i].centralizer_order(), i))
        .expect("two slots left");
    SlotChoice { stream, anchor }
}

fn materialize_group(gens: &[Permutation], d: usize) -> Vec<Vec<usize>> {
    let id: Vec<usize> = (0..d).collect();
    let mut seen: HashSet<Vec<usize>> = HashSet::from([id.clone()]);
    let mut frontier = vec![id];
    while let Some(x) = frontier.pop() {
        for g in gens {
            let y = compose(g.images(), &x);
            if seen.insert(y.clone()) {
                frontier.push(y);
            }
        }
    }
    let mut out: Vec<Vec<usize>> = seen.into_iter().collect();
    out.sort();
    out
}

impl Plan {
    fn new(datum: &BranchDatum, opts: &OracleOptions) -> Result<Self, OracleError> {
        let d = datum.degree();
        if !datum.rh_compatible() {
            return Err(OracleError::Incompatible(datum.to_string()));
        }
        if d > HARD_DEGREE_LIMIT {
            return Err(OracleError::HardLimit { degree: d });
        }
        if d > opts.max_degree {
            return Err(OracleError::Infeasible {
                degree: d,
                max: opts.max_degree,
            });
        }
        let choice = opts.slots.unwrap_or_else(|| choose_slots(datum));
        let SlotChoice { stream, anchor } = choice;
        if stream > 2 || anchor > 2 || stream == anchor {
            return Err(OracleError::BadSlots { stream, anchor });
        }
        let third = 3 - stream - anchor;
        let parts = datum.partitions();
        let anchor_type = CycleType(parts[anchor].clone());
        let order = anchor_type.centralizer_order();
        if order > CENTRALIZER_LIMIT {
            return Err(OracleError::CentralizerTooLarge { order });
        }
        let r = Permutation::class_representative(&anchor_type);
        let z = materialize_group(&centralizer_generators(&r), d);
        debug_assert_eq!(z.len() as u128, order);
        Ok(Plan {
            d,
            stream,
            anchor,
            third,
            stream_part: parts[stream].clone(),
            involutions: parts[stream].parts().iter().all(|&x| x == 2),
            r: r.images().to_vec(),
            z,
            third_counts: target_counts(&parts[third], d),
            equal: datum.equal_slots(),
        })
    }

    fn stream_len(&self) -> u128 {
        if self.involutions {
            InvolutionStream::total_len(self.d).expect("even degree")
        } else {
            ClassStream::total_len(&self.stream_part)
        }
    }

    fn open(&self, range: Range<u128>) -> Stream {
        if self.involutions {
            Stream::Involutions(InvolutionStream::block(self.d, range).expect("range within stream"))
        } else {
            Stream::Class(ClassStream::block(&self.stream_part, range).expect("range within stream"))
        }
    }

    /// Fills the third slot from a stream element with the anchor at r.
    fn third_from(&self, s: &[usize]) -> Vec<usize> {
        let (a, b) = if self.stream < self.anchor {
            (s, self.r.as_slice())
        } else {
            (self.r.as_slice(), s)
        };
        forced_third(self.third, a, b)
    }

    /// Lexicographically least `z s z⁻¹` over z ∈ Z(r).
    fn canonical_key(&self, s: &[usize]) -> Key {
        let mut best: Option<Key> = None;
        let mut cand = vec![0u8; self.d];
        for z in &self.z {
            for (x, &y) in s.iter().enumerate() {
                cand[z[x]] = z[y] as u8;
            }
            if best.as_ref().is_none_or(|b| cand < *b) {
                best = Some(cand.clone());
            }
        }
        best.expect("centralizer contains the identity")
    }

    /// Canonical key of an arbitrary valid triple.
    fn canonical_of_triple(&self, t: &[Vec<usize>; 3]) -> Key {
        let from = Permutation::from_images(t[self.anchor].clone()).expect("valid permutation");
        let to = Permutation::from_images(self.r.clone()).expect("valid permutation");
        let c = conjugator(&from, &to).expect("anchor slot keeps its cycle type");
        self.canonical_key(&conj(&t[self.stream], c.images()))
    }

    fn triple_of(&self, key: &Key) -> [Vec<usize>; 3] {
        let s: Vec<usize> = key.iter().map(|&x| x as usize).collect();
        let third = self.third_from(&s);
        let mut t: [Vec<usize>; 3] = Default::default();
        t[self.stream] = s;
        t[self.anchor] = self.r.clone();
        t[self.third] = third;
        t
    }

    fn scan(&self, range: Range<u128>) -> BTreeSet<Key> {
        let d = self.d;
        let mut out = BTreeSet::new();
        let mut s = vec![0usize; d];
        let mut seen = vec![false; d];
        let mut counts = vec![0u32; d + 1];
        let mut stream = self.open(range);
        while stream.next_into(&mut s) {
            let third = self.third_from(&s);
            cycle_counts_into(&third, &mut seen, &mut counts);
            if counts != self.third_counts {
                continue;
            }
            if !transitive_images(&[&s, &self.r], d) {
                continue;
            }
            out.insert(self.canonical_key(&s));
        }
        out
    }

    fn representatives(&self, opts: &OracleOptions) -> Result<Vec<Key>, OracleError> {
        let total = self.stream_len();
        let blocks = total.clamp(1, BLOCKS);
        let ranges: Vec<Range<u128>> = (0..blocks)
            .map(|i| i * total / blocks..(i + 1) * total / blocks)
            .collect();
        let run = || {
            ranges
                .par_iter()
                .map(|r| self.scan(r.clone()))
                .reduce(BTreeSet::new, |mut a, mut b| {
                    if a.len() < b.len() {
                        std::mem::swap(&mut a, &mut b);
                    }
                    a.append(&mut b);
                    a
                })
        };
        let set = match opts.threads {
            Some(n) => rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .map_err(|e| OracleError::ThreadPool(e.to_string()))?
                .install(run),
            None => run(),
        };
        Ok(set.into_iter().collect())
    }

    /// Orbits of the representatives under the moves of `conv`.
    fn weak_count(&self, reps: &[Key], conv: WeakConvention, datum: &BranchDatum) -> u64 {
        if !conv.include_reflection && !(conv.include_slot_permutations && !self.equal.is_empty()) {
            return reps.len() as u64;
        }
        let mut parent: Vec<usize> = (0..reps.len()).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        let mut components = reps.len();
        for (i, key) in reps.iter().enumerate() {
            let t = self.triple_of(key);
            for moved in weak_moves(&t, conv, &self.equal) {
                debug_assert!(triple_from_raw(&moved).is_valid_for(datum), "move broke a triple invariant");
                let k = self.canonical_of_triple(&moved);
                let j = reps.binary_search(&k).expect("moves map valid triples to valid triples");
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                if a != b {
                    parent[a] = b;
                    components -= 1;
                }
            }
        }
        components as u64
    }
}

fn triple_from_raw(t: &[Vec<usize>; 3]) -> MonodromyTriple {
    let p = |v: &Vec<usize>| Permutation::from_images(v.clone()).expect("valid permutation");
    MonodromyTriple {
        s1: p(&t[0]),
        s2: p(&t[1]),
        s3: p(&t[2]),
    }
}

/// One representative per simultaneous-conjugation orbit, ordered by the
/// canonical key.
pub fn enumerate_triples(datum: &BranchDatum, opts: &OracleOptions) -> Result<Vec<MonodromyTriple>, OracleError> {
    let plan = Plan::new(datum, opts)?;
    let reps = plan.representatives(opts)?;
    Ok(reps.iter().map(|k| triple_from_raw(&plan.triple_of(k))).collect())
}

pub fn strong_hurwitz(datum: &BranchDatum, opts: &OracleOptions) -> Result<u64, OracleError> {
    let plan = Plan::new(datum, opts)?;
    Ok(plan.representatives(opts)?.len() as u64)
}

pub fn weak_hurwitz(datum: &BranchDatum, conv: WeakConvention, opts: &OracleOptions) -> Result<u64, OracleError> {
    let plan = Plan::new(datum, opts)?;
    let reps = plan.representatives(opts)?;
    Ok(plan.weak_count(&reps, conv, datum))
}

/// Strong and all four weak counts from a single enumeration.
pub fn oracle_counts(datum: &BranchDatum, opts: &OracleOptions) -> Result<OracleCounts, OracleError> {
    let plan = Plan::new(datum, opts)?;
    let reps = plan.representatives(opts)?;
    let mut weak = [0; 4];
    for conv in WeakConvention::ALL {
        weak[conv.index()] = plan.weak_count(&reps, conv, datum);
    }
    Ok(OracleCounts {
        strong: reps.len() as u64,
        weak,
    })
}
