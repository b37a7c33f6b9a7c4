//! Dense permutations of `{0, …, d−1}` and the conjugacy machinery the
//! oracle needs.
//!
//! Composition follows function notation: `p.compose(&q)` maps `x` to
//! `p(q(x))`. Cycle notation in text is 1-indexed with fixed points omitted,
//! e.g. `(1,2,3)(4,5)`; the identity prints as `()`.

use std::fmt;

use thiserror::Error;

use crate::partition::Partition;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PermError {
    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },
    #[error("images do not form a bijection on 0..{degree}")]
    NotABijection { degree: usize },
    #[error("degree must be positive")]
    ZeroDegree,
    #[error("malformed cycle notation at position {position}")]
    Notation { position: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

/// The multiset of cycle lengths of a permutation, fixed points included.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CycleType(pub Partition);

impl CycleType {
    pub fn partition(&self) -> &Partition {
        &self.0
    }

    pub fn degree(&self) -> usize {
        self.0.sum()
    }

    /// Order of the centralizer of any permutation of this type:
    /// ∏ cᵢ^{mᵢ}·mᵢ!.
    pub fn centralizer_order(&self) -> u128 {
        self.0
            .multiplicities()
            .into_iter()
            .map(|(len, mult)| (len as u128).pow(mult as u32) * factorial(mult))
            .product()
    }

    /// Size of the conjugacy class, d!/∏ cᵢ^{mᵢ}·mᵢ!.
    pub fn class_size(&self) -> u128 {
        factorial(self.degree()) / self.centralizer_order()
    }
}

impl fmt::Display for CycleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// n! in 128 bits; panics beyond 34!, far past any degree the oracle accepts.
pub fn factorial(n: usize) -> u128 {
    (1..=n as u128).fold(1u128, |acc, x| {
        acc.checked_mul(x).expect("factorial overflows u128")
    })
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation {
            images: (0..degree).collect(),
        }
    }

    pub fn from_images(images: Vec<usize>) -> Result<Self, PermError> {
        let degree = images.len();
        if degree == 0 {
            return Err(PermError::ZeroDegree);
        }
        let mut seen = vec![false; degree];
        for &x in &images {
            if x >= degree || seen[x] {
                return Err(PermError::NotABijection { degree });
            }
            seen[x] = true;
        }
        Ok(Permutation { images })
    }

    /// Caller guarantees `images` is a bijection on `0..images.len()`.
    pub(crate) fn from_images_unchecked(images: Vec<usize>) -> Self {
        debug_assert!(Permutation::from_images(images.clone()).is_ok());
        Permutation { images }
    }

    /// Builds a permutation of the given degree from 0-indexed cycles.
    pub fn from_cycles(degree: usize, cycles: &[&[usize]]) -> Result<Self, PermError> {
        if degree == 0 {
            return Err(PermError::ZeroDegree);
        }
        let mut images: Vec<usize> = (0..degree).collect();
        let mut touched = vec![false; degree];
        for cycle in cycles {
            for (i, &x) in cycle.iter().enumerate() {
                if x >= degree || touched[x] {
                    return Err(PermError::NotABijection { degree });
                }
                touched[x] = true;
                images[x] = cycle[(i + 1) % cycle.len()];
            }
        }
        Ok(Permutation { images })
    }

    /// The standard representative of a cycle type: cycles on consecutive
    /// points, longest first, e.g. `[3,2]` ↦ `(1,2,3)(4,5)`.
    pub fn class_representative(cycle_type: &CycleType) -> Self {
        let mut images = Vec::with_capacity(cycle_type.degree());
        let mut start = 0;
        for &len in cycle_type.partition().parts() {
            for i in 0..len {
                images.push(start + (i + 1) % len);
            }
            start += len;
        }
        Permutation { images }
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn apply(&self, x: usize) -> usize {
        self.images[x]
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x)
    }

    fn check_degree(&self, other: &Permutation) -> Result<(), PermError> {
        if self.degree() != other.degree() {
            return Err(PermError::DegreeMismatch {
                left: self.degree(),
                right: other.degree(),
            });
        }
        Ok(())
    }

    /// `x ↦ self(other(x))`.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation, PermError> {
        self.check_degree(other)?;
        Ok(Permutation {
            images: other.images.iter().map(|&x| self.images[x]).collect(),
        })
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.degree()];
        for (i, &x) in self.images.iter().enumerate() {
            images[x] = i;
        }
        Permutation { images }
    }

    /// `t · self · t⁻¹`, which sends `t(x)` to `t(self(x))`.
    pub fn conjugate(&self, t: &Permutation) -> Result<Permutation, PermError> {
        self.check_degree(t)?;
        let mut images = vec![0; self.degree()];
        for (x, &y) in self.images.iter().enumerate() {
            images[t.images[x]] = t.images[y];
        }
        Ok(Permutation { images })
    }

    /// Cycles as 0-indexed point lists, each starting at its smallest point,
    /// ordered by that point. Fixed points are included.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let d = self.degree();
        let mut seen = vec![false; d];
        let mut out = Vec::new();
        for start in 0..d {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cycle.push(x);
                x = self.images[x];
            }
            out.push(cycle);
        }
        out
    }

    pub fn cycle_type(&self) -> CycleType {
        CycleType(cycle_type_of(&self.images))
    }

    /// Parses 1-indexed cycle notation such as `(1,2,3)(4,5)`.
    pub fn parse_cycles(degree: usize, text: &str) -> Result<Permutation, PermError> {
        let bytes = text.as_bytes();
        let mut cycles: Vec<Vec<usize>> = Vec::new();
        let mut i = 0;
        while i < bytes.len() {
            match bytes[i] {
                b' ' => i += 1,
                b'(' => {
                    let close = text[i..]
                        .find(')')
                        .map(|off| i + off)
                        .ok_or(PermError::Notation { position: i })?;
                    let inner = &text[i + 1..close];
                    let mut cycle = Vec::new();
                    if !inner.trim().is_empty() {
                        for tok in inner.split(',') {
                            let v: usize = tok
                                .trim()
                                .parse()
                                .map_err(|_| PermError::Notation { position: i })?;
                            if v == 0 {
                                return Err(PermError::Notation { position: i });
                            }
                            cycle.push(v - 1);
                        }
                    }
                    cycles.push(cycle);
                    i = close + 1;
                }
                _ => return Err(PermError::Notation { position: i }),
            }
        }
        let refs: Vec<&[usize]> = cycles.iter().map(|c| c.as_slice()).collect();
        Permutation::from_cycles(degree, &refs)
    }
}

/// Cycle type straight from an image slice, used by hot loops that avoid
/// allocating a `Permutation`.
pub(crate) fn cycle_type_of(images: &[usize]) -> Partition {
    let mut lengths = cycle_lengths(images);
    lengths.sort_unstable_by(|a, b| b.cmp(a));
    Partition::new(lengths).expect("a permutation of positive degree has cycles")
}

pub(crate) fn cycle_lengths(images: &[usize]) -> Vec<usize> {
    let d = images.len();
    let mut seen = vec![false; d];
    let mut lengths = Vec::new();
    for start in 0..d {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            x = images[x];
            len += 1;
        }
        lengths.push(len);
    }
    lengths
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut any = false;
        for cycle in self.cycles().into_iter().filter(|c| c.len() > 1) {
            any = true;
            let pts: Vec<String> = cycle.iter().map(|x| (x + 1).to_string()).collect();
            write!(f, "({})", pts.join(","))?;
        }
        if !any {
            write!(f, "()")?;
        }
        Ok(())
    }
}

/// Generators of the centralizer of `p` in the full symmetric group: one
/// rotation per nontrivial cycle, plus a pointwise swap of each pair of
/// consecutive cycles of equal length. These generate ∏ (C_L ≀ S_m).
pub fn centralizer_generators(p: &Permutation) -> Vec<Permutation> {
    let d = p.degree();
    let mut cycles = p.cycles();
    cycles.sort_by(|a, b| b.len().cmp(&a.len()).then(a[0].cmp(&b[0])));
    let mut gens = Vec::new();
    for cycle in cycles.iter().filter(|c| c.len() > 1) {
        let mut images: Vec<usize> = (0..d).collect();
        for (i, &x) in cycle.iter().enumerate() {
            images[x] = cycle[(i + 1) % cycle.len()];
        }
        gens.push(Permutation { images });
    }
    for pair in cycles.windows(2) {
        if pair[0].len() != pair[1].len() {
            continue;
        }
        let mut images: Vec<usize> = (0..d).collect();
        for (&x, &y) in pair[0].iter().zip(&pair[1]) {
            images[x] = y;
            images[y] = x;
        }
        gens.push(Permutation { images });
    }
    gens
}

/// A permutation `c` with `c · from · c⁻¹ = to`, or `None` if the cycle
/// types differ.
pub fn conjugator(from: &Permutation, to: &Permutation) -> Option<Permutation> {
    if from.degree() != to.degree() {
        return None;
    }
    let by_len = |p: &Permutation| {
        let mut cs = p.cycles();
        cs.sort_by(|a, b| b.len().cmp(&a.len()).then(a[0].cmp(&b[0])));
        cs
    };
    let (src, dst) = (by_len(from), by_len(to));
    if src.len() != dst.len() {
        return None;
    }
    let mut images = vec![0; from.degree()];
    for (a, b) in src.iter().zip(&dst) {
        if a.len() != b.len() {
            return None;
        }
        for (&x, &y) in a.iter().zip(b) {
            images[x] = y;
        }
    }
    Some(Permutation { images })
}

/// Whether the group generated by `gens` acts transitively on `0..degree`.
pub fn is_transitive(gens: &[Permutation], degree: usize) -> Result<bool, PermError> {
    for g in gens {
        if g.degree() != degree {
            return Err(PermError::DegreeMismatch {
                left: degree,
                right: g.degree(),
            });
        }
    }
    let slices: Vec<&[usize]> = gens.iter().map(|g| g.images()).collect();
    Ok(transitive_images(&slices, degree))
}

/// Union-find transitivity test over raw image slices.
pub(crate) fn transitive_images(gens: &[&[usize]], degree: usize) -> bool {
    if degree <= 1 {
        return true;
    }
    let mut parent: Vec<usize> = (0..degree).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    let mut components = degree;
    for g in gens {
        for (x, &y) in g.iter().enumerate() {
            let (a, b) = (find(&mut parent, x), find(&mut parent, y));
            if a != b {
                parent[a] = b;
                components -= 1;
                if components == 1 {
                    return true;
                }
            }
        }
    }
    components == 1
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::rngs::StdRng;
    use rand::seq::SliceRandom;
    use rand::SeedableRng;
    use std::collections::{BTreeSet, HashSet};

    fn perm(d: usize, cycles: &[&[usize]]) -> Permutation {
        Permutation::from_cycles(d, cycles).unwrap()
    }

    fn random_perm(rng: &mut StdRng, d: usize) -> Permutation {
        let mut images: Vec<usize> = (0..d).collect();
        images.shuffle(rng);
        Permutation::from_images(images).unwrap()
    }

    fn all_perms(d: usize) -> Vec<Permutation> {
        fn rec(prefix: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Permutation>) {
            let d = used.len();
            if prefix.len() == d {
                out.push(Permutation::from_images(prefix.clone()).unwrap());
                return;
            }
            for x in 0..d {
                if !used[x] {
                    used[x] = true;
                    prefix.push(x);
                    rec(prefix, used, out);
                    prefix.pop();
                    used[x] = false;
                }
            }
        }
        let mut out = Vec::new();
        rec(&mut Vec::new(), &mut vec![false; d], &mut out);
        out
    }

    /// Closure of a generating set under composition.
    fn generated(gens: &[Permutation], d: usize) -> HashSet<Permutation> {
        let id = Permutation::identity(d);
        let mut group = HashSet::from([id.clone()]);
        let mut frontier = vec![id];
        while let Some(x) = frontier.pop() {
            for g in gens {
                let y = g.compose(&x).unwrap();
                if group.insert(y.clone()) {
                    frontier.push(y);
                }
            }
        }
        group
    }

    #[test]
    fn compose_examples() {
        let p = perm(4, &[&[0, 2, 1, 3]]);
        assert_eq!(Permutation::identity(4).compose(&p).unwrap(), p);
        let t = perm(2, &[&[0, 1]]);
        assert!(t.compose(&t).unwrap().is_identity());
        // (012)∘(01): 0→1→2, 1→0→1, 2→2→0
        let c = perm(3, &[&[0, 1, 2]]);
        let s = perm(3, &[&[0, 1]]);
        assert_eq!(c.compose(&s).unwrap(), perm(3, &[&[0, 2]]));
        assert_eq!(
            c.compose(&Permutation::identity(4)),
            Err(PermError::DegreeMismatch { left: 3, right: 4 })
        );
    }

    #[test]
    fn inverse_examples() {
        assert!(Permutation::identity(5).inverse().is_identity());
        assert_eq!(perm(3, &[&[0, 1, 2]]).inverse(), perm(3, &[&[0, 2, 1]]));
        let inv = perm(6, &[&[0, 3], &[1, 5], &[2, 4]]);
        assert_eq!(inv.inverse(), inv);
    }

    #[test]
    fn cycle_type_examples() {
        assert_eq!(Permutation::identity(4).cycle_type().0.parts(), &[1, 1, 1, 1]);
        let long: Vec<usize> = (0..14).collect();
        let p = perm(16, &[&long]);
        assert_eq!(p.cycle_type().0.parts(), &[14, 1, 1]);
    }

    /// Second cycle scan: follow orbits by repeated powering.
    fn cycle_type_by_orbits(p: &Permutation) -> Vec<usize> {
        let d = p.degree();
        let mut counted = vec![false; d];
        let mut lengths = Vec::new();
        for x in 0..d {
            if counted[x] {
                continue;
            }
            let orbit: BTreeSet<usize> =
                std::iter::successors(Some(x), |&y| Some(p.apply(y)))
                    .take(d)
                    .collect();
            for &y in &orbit {
                counted[y] = true;
            }
            lengths.push(orbit.len());
        }
        lengths.sort_unstable_by(|a, b| b.cmp(a));
        lengths
    }

    #[test]
    fn cycle_type_of_product_matches_orbit_scan() {
        let mut rng = StdRng::seed_from_u64(7);
        let s1 = perm(16, &[&[0, 1], &[2, 3], &[4, 5], &[6, 7], &[8, 9], &[10, 11], &[12, 13], &[14, 15]]);
        for _ in 0..200 {
            let s2 = random_perm(&mut rng, 16);
            let prod = s1.compose(&s2).unwrap();
            assert_eq!(prod.cycle_type().0.parts(), cycle_type_by_orbits(&prod).as_slice());
        }
    }

    #[test]
    fn conjugate_examples() {
        let p = perm(5, &[&[0, 3, 1], &[2, 4]]);
        assert_eq!(p.conjugate(&Permutation::identity(5)).unwrap(), p);
        // (12)·(01)·(12) = (02)
        let c = perm(3, &[&[0, 1]]).conjugate(&perm(3, &[&[1, 2]])).unwrap();
        assert_eq!(c, perm(3, &[&[0, 2]]));
        let t = perm(3, &[&[0, 2, 1]]);
        let direct = t
            .compose(&perm(3, &[&[0, 1]]))
            .unwrap()
            .compose(&t.inverse())
            .unwrap();
        assert_eq!(perm(3, &[&[0, 1]]).conjugate(&t).unwrap(), direct);
    }

    #[test]
    fn conjugation_preserves_cycle_type() {
        let mut rng = StdRng::seed_from_u64(11);
        for trial in 0..10_000 {
            let d = 1 + trial % 16;
            let p = random_perm(&mut rng, d);
            let t = random_perm(&mut rng, d);
            assert_eq!(p.conjugate(&t).unwrap().cycle_type(), p.cycle_type());
        }
    }

    #[test]
    fn compose_with_inverse_is_identity() {
        let mut rng = StdRng::seed_from_u64(3);
        for d in 1..=12 {
            let p = random_perm(&mut rng, d);
            assert!(p.compose(&p.inverse()).unwrap().is_identity());
            assert!(p.inverse().compose(&p).unwrap().is_identity());
        }
    }

    #[test]
    fn compose_is_associative() {
        let mut rng = StdRng::seed_from_u64(5);
        for _ in 0..100 {
            let (a, b, c) = (random_perm(&mut rng, 9), random_perm(&mut rng, 9), random_perm(&mut rng, 9));
            let left = a.compose(&b).unwrap().compose(&c).unwrap();
            let right = a.compose(&b.compose(&c).unwrap()).unwrap();
            assert_eq!(left, right);
        }
    }

    #[test]
    fn centralizer_small_cases() {
        assert_eq!(generated(&centralizer_generators(&Permutation::identity(3)), 3).len(), 6);
        let long = perm(7, &[&[0, 1, 2, 3, 4, 5, 6]]);
        let group = generated(&centralizer_generators(&long), 7);
        assert_eq!(group.len(), 7);
        let pp = perm(4, &[&[0, 1], &[2, 3]]);
        let brute = all_perms(4)
            .into_iter()
            .filter(|t| pp.conjugate(t).unwrap() == pp)
            .count();
        assert_eq!(brute, 8);
        assert_eq!(generated(&centralizer_generators(&pp), 4).len(), 8);
    }

    #[test]
    fn centralizer_exhaustive_up_to_degree_7() {
        for d in 1..=7 {
            let everything = all_perms(d);
            let mut seen_types = HashSet::new();
            for p in &everything {
                let ct = p.cycle_type();
                if !seen_types.insert(ct.clone()) {
                    continue;
                }
                let group = generated(&centralizer_generators(p), d);
                assert_eq!(group.len() as u128, ct.centralizer_order(), "{p} in degree {d}");
                assert!(group.iter().all(|z| p.conjugate(z).unwrap() == *p));
                let brute = everything.iter().filter(|t| p.conjugate(t).unwrap() == *p).count();
                assert_eq!(brute, group.len());
            }
        }
    }

    #[test]
    fn conjugator_maps_between_equal_types() {
        let mut rng = StdRng::seed_from_u64(17);
        for _ in 0..500 {
            let p = random_perm(&mut rng, 10);
            let t = random_perm(&mut rng, 10);
            let q = p.conjugate(&t).unwrap();
            let c = conjugator(&p, &q).unwrap();
            assert_eq!(p.conjugate(&c).unwrap(), q);
        }
        assert!(conjugator(&perm(3, &[&[0, 1]]), &perm(3, &[&[0, 1, 2]])).is_none());
    }

    #[test]
    fn transitivity_examples() {
        let cyc = perm(6, &[&[0, 1, 2, 3, 4, 5]]);
        assert!(is_transitive(&[cyc], 6).unwrap());
        let two = [perm(4, &[&[0, 1]]), perm(4, &[&[2, 3]])];
        assert!(!is_transitive(&two, 4).unwrap());
        assert!(is_transitive(&[perm(3, &[&[0, 1]])], 4).is_err());
    }

    /// Orbit of 0 by repeated closure, the slow way.
    fn transitive_by_closure(gens: &[Permutation], d: usize) -> bool {
        let mut orbit = BTreeSet::from([0]);
        loop {
            let next: BTreeSet<usize> = orbit
                .iter()
                .flat_map(|&x| gens.iter().map(move |g| g.apply(x)))
                .chain(orbit.iter().copied())
                .collect();
            if next == orbit {
                return orbit.len() == d;
            }
            orbit = next;
        }
    }

    #[test]
    fn transitivity_matches_closure() {
        let mut rng = StdRng::seed_from_u64(23);
        for trial in 0..3000 {
            let d = 1 + trial % 8;
            // bias towards sparse permutations so both outcomes occur
            let mk = |rng: &mut StdRng| {
                let mut images: Vec<usize> = (0..d).collect();
                let k = (trial % 3) + 1;
                images[..k.min(d)].shuffle(rng);
                images.shuffle(rng);
                Permutation::from_images(images).unwrap()
            };
            let gens = [mk(&mut rng), mk(&mut rng), random_perm(&mut rng, d)];
            let gens = &gens[..1 + trial % 3];
            assert_eq!(is_transitive(gens, d).unwrap(), transitive_by_closure(gens, d));
        }
    }

    #[test]
    fn class_sizes() {
        let ct = |v: Vec<usize>| CycleType(Partition::new(v).unwrap());
        assert_eq!(ct(vec![2, 1]).class_size(), 3);
        assert_eq!(ct(vec![2; 8]).class_size(), 2_027_025);
        assert_eq!(ct(vec![5]).class_size(), 24);
    }

    #[test]
    fn cycle_notation_round_trip() {
        let p = perm(6, &[&[0, 4, 2], &[1, 5]]);
        assert_eq!(p.to_string(), "(1,5,3)(2,6)");
        assert_eq!(Permutation::parse_cycles(6, "(1,5,3)(2,6)").unwrap(), p);
        assert_eq!(Permutation::identity(3).to_string(), "()");
        assert!(Permutation::parse_cycles(3, "(1,2").is_err());
        assert!(Permutation::parse_cycles(3, "(1,4)").is_err());
    }

    #[test]
    fn rejects_non_bijections() {
        assert!(Permutation::from_images(vec![0, 0, 1]).is_err());
        assert!(Permutation::from_images(vec![]).is_err());
        assert!(Permutation::from_images(vec![1, 2]).is_err());
    }
}
