//! Unanchored enumeration for small degrees: every valid triple is listed and
//! orbits are formed under conjugation by generators of the full symmetric
//! group. Shares no code path with the anchored scan beyond the move set.

use std::collections::HashMap;

use super::{OracleCounts, OracleError, WeakConvention};
use crate::branch::BranchDatum;

pub const EXHAUSTIVE_MAX_DEGREE: usize = 7;

/// Degree-≤7 permutation, padded with fixed points.
type P = [u8; 8];
type Triple = [P; 3];

const ID: P = [0, 1, 2, 3, 4, 5, 6, 7];

fn all_permutations(d: usize) -> Vec<P> {
    fn rec(prefix: &mut P, len: usize, d: usize, used: &mut [bool; 8], out: &mut Vec<P>) {
        if len == d {
            out.push(*prefix);
            return;
        }
        for x in 0..d {
            if !used[x] {
                used[x] = true;
                prefix[len] = x as u8;
                rec(prefix, len + 1, d, used, out);
                used[x] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut ID.clone(), 0, d, &mut [false; 8], &mut out);
    out
}

/// Number of cycles of each length on the first `d` points.
fn cycle_counts(p: &P, d: usize) -> [u8; 8] {
    let mut seen = [false; 8];
    let mut counts = [0u8; 8];
    for i in 0..d {
        let (mut j, mut len) = (i, 0);
        while !seen[j] {
            seen[j] = true;
            j = p[j] as usize;
            len += 1;
        }
        if len > 0 {
            counts[len] += 1;
        }
    }
    counts
}

/// (p ∘ q)(x) = p(q(x))
fn mul(p: &P, q: &P) -> P {
    q.map(|x| p[x as usize])
}

fn inv(p: &P) -> P {
    let mut out = ID;
    for (i, &x) in p.iter().enumerate() {
        out[x as usize] = i as u8;
    }
    out
}

fn transitive(a: &P, b: &P, d: usize) -> bool {
    let mut reached = [false; 8];
    let mut stack = [0usize; 8];
    let mut top = 1;
    reached[0] = true;
    let mut count = 1;
    while top > 0 {
        top -= 1;
        let x = stack[top];
        for y in [a[x] as usize, b[x] as usize] {
            if !reached[y] {
                reached[y] = true;
                stack[top] = y;
                top += 1;
                count += 1;
            }
        }
    }
    count == d
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

fn union_all(parent: &mut [usize], pairs: impl Iterator<Item = (usize, usize)>) {
    for (a, b) in pairs {
        let (ra, rb) = (find(parent, a), find(parent, b));
        if ra != rb {
            parent[ra] = rb;
        }
    }
}

fn components(parent: &mut [usize]) -> u64 {
    (0..parent.len()).filter(|&i| find(parent, i) == i).count() as u64
}

fn moves(t: &Triple, conv: WeakConvention, equal: &[(usize, usize)]) -> Vec<Triple> {
    let [a, b, c] = t;
    let mut out = Vec::new();
    if conv.include_reflection {
        let ab = mul(a, b);
        out.push([inv(a), mul(&mul(a, &inv(b)), &inv(a)), mul(&mul(&ab, &inv(c)), &inv(&ab))]);
    }
    if conv.include_slot_permutations {
        for &pair in equal {
            out.push(match pair {
                (0, 1) => [*b, mul(&mul(&inv(b), a), b), *c],
                (1, 2) => [*a, *c, mul(&mul(&inv(c), b), c)],
                _ => [*c, mul(&mul(&inv(c), b), c), *a],
            });
        }
    }
    out
}

/// Strong and weak counts with no anchoring, for `d ≤ 7`.
pub fn exhaustive_counts(datum: &BranchDatum) -> Result<OracleCounts, OracleError> {
    let d = datum.degree();
    if !datum.rh_compatible() {
        return Err(OracleError::Incompatible(datum.to_string()));
    }
    if d > EXHAUSTIVE_MAX_DEGREE {
        return Err(OracleError::Infeasible {
            degree: d,
            max: EXHAUSTIVE_MAX_DEGREE,
        });
    }
    let mut targets = [[0u8; 8]; 3];
    for (t, p) in targets.iter_mut().zip(datum.partitions()) {
        for &x in p.parts() {
            t[x] += 1;
        }
    }
    let perms = all_permutations(d);
    let class = |i: usize| -> Vec<P> { perms.iter().filter(|p| cycle_counts(p, d) == targets[i]).copied().collect() };
    let classes = [class(0), class(1), class(2)];
    // loop over the two smallest classes; the remaining slot is forced
    let forced = (0..3).max_by_key(|&i| (classes[i].len(), i)).expect("three slots");
    let (i, j) = match forced {
        0 => (1, 2),
        1 => (0, 2),
        _ => (0, 1),
    };
    let inverses: Vec<P> = classes[j].iter().map(inv).collect();

    let mut triples: Vec<Triple> = Vec::new();
    for a in &classes[i] {
        let ai = inv(a);
        for (b, bi) in classes[j].iter().zip(&inverses) {
            // s1 = s3⁻¹s2⁻¹, s2 = s1⁻¹s3⁻¹, s3 = s2⁻¹s1⁻¹
            let third = match forced {
                1 => mul(&ai, bi),
                _ => mul(bi, &ai),
            };
            if cycle_counts(&third, d) != targets[forced] || !transitive(a, b, d) {
                continue;
            }
            let mut t: Triple = [ID; 3];
            t[i] = *a;
            t[j] = *b;
            t[forced] = third;
            triples.push(t);
        }
    }
    let index: HashMap<Triple, usize> = triples.iter().enumerate().map(|(i, &t)| (t, i)).collect();

    // (0 1) and (0 1 … d−1) generate S_d
    let mut gens: Vec<P> = Vec::new();
    if d >= 2 {
        let mut swap = ID;
        swap.swap(0, 1);
        gens.push(swap);
        let mut cycle = ID;
        for (x, c) in cycle.iter_mut().enumerate().take(d) {
            *c = ((x + 1) % d) as u8;
        }
        gens.push(cycle);
    }
    let mut parent: Vec<usize> = (0..triples.len()).collect();
    for g in &gens {
        let gi = inv(g);
        let edges = triples.iter().enumerate().map(|(i, t)| {
            let moved: Triple = t.map(|s| mul(&mul(g, &s), &gi));
            (i, index[&moved])
        });
        union_all(&mut parent, edges.collect::<Vec<_>>().into_iter());
    }
    let strong_parent = parent.clone();
    let strong = components(&mut parent);

    let equal = datum.equal_slots();
    let mut weak = [0u64; 4];
    for (slot, conv) in WeakConvention::ALL.into_iter().enumerate() {
        let mut parent = strong_parent.clone();
        let edges: Vec<(usize, usize)> = triples
            .iter()
            .enumerate()
            .flat_map(|(i, t)| moves(t, conv, &equal).into_iter().map(move |m| (i, m)))
            .map(|(i, m)| (i, *index.get(&m).expect("moves preserve validity")))
            .collect();
        union_all(&mut parent, edges.into_iter());
        weak[slot] = components(&mut parent);
    }
    Ok(OracleCounts { strong, weak })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partition::parse_partition;

    #[test]
    fn small_cases() {
        let p = |s: &str| parse_partition(s).unwrap();
        let d = BranchDatum::new(0, 2, [p("2"), p("2"), p("1,1")]).unwrap();
        assert_eq!(exhaustive_counts(&d).unwrap().strong, 1);
        let d = BranchDatum::new(0, 4, [p("2,2"), p("3,1"), p("3,1")]).unwrap();
        let c = exhaustive_counts(&d).unwrap();
        assert!(c.strong > 0);
        assert_eq!(c.weak(WeakConvention::REFLECTION_AND_SLOTS), 1);
        let big = BranchDatum::new(0, 8, [p("2,2,2,2"), p("5,3"), p("2,2,2,2")]).unwrap();
        assert!(exhaustive_counts(&big).is_err());
    }
}
