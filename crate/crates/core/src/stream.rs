//! Deterministic enumeration of conjugacy classes.
//!
//! Both streams are indexable: every element has a rank in `0..len`, and a
//! stream can be opened on any contiguous rank range. Parallel callers split
//! the index space into blocks instead of sharing one iterator.
//!
//! Order: the smallest unused point anchors the next cycle. For a general class
//! the cycle length is chosen first (longest first), then the remaining points
//! of the cycle in lexicographic order.

use std::ops::Range;

use thiserror::Error;

use crate::partition::Partition;
use crate::perm::{factorial, CycleType, Permutation};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StreamError {
    #[error("fixed-point-free involutions need an even positive degree, got {0}")]
    OddDegree(usize),
    #[error("rank range {start}..{end} exceeds stream length {len}")]
    RangeOutOfBounds { start: u128, end: u128, len: u128 },
}

/// (d−1)!! = (d−1)(d−3)⋯1 for even d.
pub fn double_factorial_odd(d: usize) -> u128 {
    (1..d).step_by(2).map(|x| x as u128).product()
}

/// Ordered selections of `r` items out of `m`: m!/(m−r)!.
fn arrangements(m: usize, r: usize) -> u128 {
    ((m - r + 1)..=m).map(|x| x as u128).product()
}

/// Size of the class with the given (length, multiplicity) profile.
fn class_size_of(profile: &[(usize, usize)]) -> u128 {
    let n: usize = profile.iter().map(|(l, m)| l * m).sum();
    let denom: u128 = profile
        .iter()
        .map(|&(l, m)| (l as u128).pow(m as u32) * factorial(m))
        .product();
    factorial(n) / denom
}

/// Every permutation of a given cycle type, each exactly once.
#[derive(Clone, Debug)]
pub struct ClassStream {
    profile: Vec<(usize, usize)>,
    degree: usize,
    next: u128,
    end: u128,
}

pub fn class_stream(cycle_type: &CycleType) -> ClassStream {
    ClassStream::new(cycle_type.partition())
}

impl ClassStream {
    pub fn new(partition: &Partition) -> Self {
        let profile = partition.multiplicities();
        let end = class_size_of(&profile);
        ClassStream {
            profile,
            degree: partition.sum(),
            next: 0,
            end,
        }
    }

    /// The sub-stream of elements with rank in `range`.
    pub fn block(partition: &Partition, range: Range<u128>) -> Result<Self, StreamError> {
        let mut s = Self::new(partition);
        check_range(&range, s.end)?;
        s.next = range.start;
        s.end = range.end;
        Ok(s)
    }

    pub fn total_len(partition: &Partition) -> u128 {
        class_size_of(&partition.multiplicities())
    }

    /// Writes the next element into `out` (length = degree); false when done.
    pub fn next_into(&mut self, out: &mut [usize]) -> bool {
        if self.next >= self.end {
            return false;
        }
        unrank_class(&self.profile, self.degree, self.next, out);
        self.next += 1;
        true
    }
}

impl Iterator for ClassStream {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        let mut out = vec![0; self.degree];
        self.next_into(&mut out)
            .then(|| Permutation::from_images_unchecked(out))
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = usize::try_from(self.end - self.next).unwrap_or(usize::MAX);
        (n, Some(n))
    }
}

fn check_range(range: &Range<u128>, len: u128) -> Result<(), StreamError> {
    if range.start > range.end || range.end > len {
        return Err(StreamError::RangeOutOfBounds {
            start: range.start,
            end: range.end,
            len,
        });
    }
    Ok(())
}

fn unrank_class(profile: &[(usize, usize)], degree: usize, mut rank: u128, out: &mut [usize]) {
    let mut remaining: Vec<(usize, usize)> = profile.to_vec();
    let mut unused: Vec<usize> = (0..degree).collect();
    while !unused.is_empty() {
        let anchor = unused.remove(0);
        let n = unused.len() + 1;
        let mut chosen = None;
        for idx in 0..remaining.len() {
            let (len, mult) = remaining[idx];
            if mult == 0 {
                continue;
            }
            remaining[idx].1 -= 1;
            let rest = class_size_of(&remaining);
            let block = arrangements(n - 1, len - 1) * rest;
            if rank < block {
                chosen = Some((len, rank / rest));
                rank %= rest;
                break;
            }
            remaining[idx].1 += 1;
            rank -= block;
        }
        let (len, mut arrangement) = chosen.expect("rank within class size");

        let mut prev = anchor;
        for j in 0..len - 1 {
            let sub = arrangements(n - 2 - j, len - 2 - j);
            let pick = (arrangement / sub) as usize;
            arrangement %= sub;
            let x = unused.remove(pick);
            out[prev] = x;
            prev = x;
        }
        out[prev] = anchor;
    }
}

/// Fixed-point-free involutions of even degree d, (d−1)!! in total. Rank
/// digits are the partner choices of successive smallest unused points.
#[derive(Clone, Debug)]
pub struct InvolutionStream {
    degree: usize,
    digits: Vec<usize>,
    next: u128,
    end: u128,
}

pub fn involution_stream(degree: usize) -> Result<InvolutionStream, StreamError> {
    InvolutionStream::block(degree, 0..InvolutionStream::total_len(degree)?)
}

impl InvolutionStream {
    pub fn total_len(degree: usize) -> Result<u128, StreamError> {
        if degree == 0 || degree % 2 == 1 {
            return Err(StreamError::OddDegree(degree));
        }
        Ok(double_factorial_odd(degree))
    }

    pub fn block(degree: usize, range: Range<u128>) -> Result<Self, StreamError> {
        let len = Self::total_len(degree)?;
        check_range(&range, len)?;
        let pairs = degree / 2;
        // mixed radix, most significant digit first: radices d−1, d−3, …, 1
        let mut digits = vec![0; pairs];
        let mut r = range.start;
        for i in (0..pairs).rev() {
            let radix = (degree - 1 - 2 * i) as u128;
            digits[i] = (r % radix) as usize;
            r /= radix;
        }
        Ok(InvolutionStream {
            degree,
            digits,
            next: range.start,
            end: range.end,
        })
    }

    pub fn next_into(&mut self, out: &mut [usize]) -> bool {
        if self.next >= self.end {
            return false;
        }
        let mut unused: [usize; 64] = [0; 64];
        let mut count = self.degree;
        debug_assert!(count <= 64);
        for (i, slot) in unused.iter_mut().enumerate().take(count) {
            *slot = i;
        }
        for &digit in &self.digits {
            let a = unused[0];
            let b = unused[1 + digit];
            out[a] = b;
            out[b] = a;
            // remove positions 0 and 1+digit, preserving order
            let mut w = 0;
            for r in 1..count {
                if r != 1 + digit {
                    unused[w] = unused[r];
                    w += 1;
                }
            }
            count -= 2;
        }
        self.next += 1;
        // odometer increment
        for i in (0..self.digits.len()).rev() {
            let radix = self.degree - 1 - 2 * i;
            self.digits[i] += 1;
            if self.digits[i] < radix {
                break;
            }
            self.digits[i] = 0;
        }
        true
    }
}

impl Iterator for InvolutionStream {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        let mut out = vec![0; self.degree];
        self.next_into(&mut out)
            .then(|| Permutation::from_images_unchecked(out))
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = usize::try_from(self.end - self.next).unwrap_or(usize::MAX);
        (n, Some(n))
    }
}
