//! Permutations of `[n]` in canonical cycle form, cycle-intersection tests
//! and exhaustive enumeration of `S_n`.
//!
//! A permutation is stored as its cycle decomposition with every cycle
//! rotated to start at its least element and cycles sorted by that element.
//! Two permutations are equal exactly when these encodings coincide, so the
//! derived `Ord`/`Hash` give a canonical order and exact membership tests.
//! A cycle is an orbit *with* its cyclic order: `(1 2 3)` and `(1 3 2)` are
//! different cycles.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::sets::SubsetMask;

/// Largest `n` for which [`enumerate_sn`] runs without an explicit bound.
pub const DEFAULT_ENUMERATION_BOUND: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    n: usize,
    cycles: Vec<Vec<usize>>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation { n, cycles: (1..=n).map(|x| vec![x]).collect() }
    }

    /// Builds the canonical cycle form of the map `i -> one_line[i - 1]`.
    pub fn from_one_line(one_line: &[usize]) -> Result<Self> {
        let n = one_line.len();
        let mut seen = vec![false; n + 1];
        for &y in one_line {
            if y == 0 || y > n || seen[y] {
                return Err(Error::MalformedPermutation(format!("{one_line:?} is not a bijection on [{n}]")));
            }
            seen[y] = true;
        }
        let mut visited = vec![false; n + 1];
        let mut cycles = Vec::new();
        for start in 1..=n {
            if visited[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut x = start;
            while !visited[x] {
                visited[x] = true;
                cycle.push(x);
                x = one_line[x - 1];
            }
            cycles.push(cycle);
        }
        // Starting each walk at the least unvisited point already yields canonical form.
        Ok(Permutation { n, cycles })
    }

    /// Builds a permutation from disjoint cycles; points not mentioned are fixed.
    pub fn from_cycles(n: usize, cycles: &[Vec<usize>]) -> Result<Self> {
        let mut one_line: Vec<usize> = (1..=n).collect();
        let mut used = vec![false; n + 1];
        for cycle in cycles {
            for (k, &x) in cycle.iter().enumerate() {
                if x == 0 || x > n || used[x] {
                    return Err(Error::MalformedPermutation(format!(
                        "cycles {cycles:?} are not disjoint cycles on [{n}]"
                    )));
                }
                used[x] = true;
                one_line[x - 1] = cycle[(k + 1) % cycle.len()];
            }
        }
        Self::from_one_line(&one_line)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn cycles(&self) -> &[Vec<usize>] {
        &self.cycles
    }

    pub fn cycle_count(&self) -> usize {
        self.cycles.len()
    }

    /// Image of the point `x` (1-based).
    pub fn apply(&self, x: usize) -> usize {
        let cycle = self.cycle_of(x);
        let k = cycle.iter().position(|&y| y == x).expect("point lies in its cycle");
        cycle[(k + 1) % cycle.len()]
    }

    pub fn one_line(&self) -> Vec<usize> {
        let mut out = vec![0; self.n];
        for cycle in &self.cycles {
            for (k, &x) in cycle.iter().enumerate() {
                out[x - 1] = cycle[(k + 1) % cycle.len()];
            }
        }
        out
    }

    /// The cycle containing `x`.
    pub fn cycle_of(&self, x: usize) -> &[usize] {
        assert!(x >= 1 && x <= self.n, "point {x} outside [{}]", self.n);
        self.cycles
            .iter()
            .find(|c| c.contains(&x))
            .expect("cycles partition [n]")
    }

    pub fn is_fixed(&self, x: usize) -> bool {
        self.cycle_of(x).len() == 1
    }

    /// The set of points lying in singleton cycles.
    pub fn fixed_points(&self) -> SubsetMask {
        SubsetMask::from_elements(self.n, self.cycles.iter().filter(|c| c.len() == 1).map(|c| c[0]))
            .expect("fixed points lie in [n]")
    }

    pub fn fixed_point_count(&self) -> usize {
        self.cycles.iter().filter(|c| c.len() == 1).count()
    }

    /// Rebuilds canonical form from arbitrary disjoint cycles covering `[n]`.
    pub(crate) fn from_raw_cycles(n: usize, mut cycles: Vec<Vec<usize>>) -> Self {
        for c in cycles.iter_mut() {
            let k = c.iter().enumerate().min_by_key(|(_, &x)| x).map(|(k, _)| k).unwrap_or(0);
            c.rotate_left(k);
        }
        cycles.sort_by_key(|c| c[0]);
        Permutation { n, cycles }
    }
}

/// Canonical cycle decomposition of a one-line map; see [`Permutation::from_one_line`].
pub fn canonicalize(one_line: &[usize]) -> Result<Permutation> {
    Permutation::from_one_line(one_line)
}

pub fn fixed_points(p: &Permutation) -> SubsetMask {
    p.fixed_points()
}

/// Number of cycles (singletons included) present in both decompositions.
pub fn common_cycle_count(p1: &Permutation, p2: &Permutation) -> Result<usize> {
    if p1.n != p2.n {
        return Err(Error::DomainMismatch { left: p1.n, right: p2.n });
    }
    Ok(common_cycles_unchecked(p1, p2))
}

fn common_cycles_unchecked(p1: &Permutation, p2: &Permutation) -> usize {
    // Both lists are sorted by leading element, so a merge finds every match.
    let (mut a, mut b, mut count) = (0, 0, 0);
    while a < p1.cycles.len() && b < p2.cycles.len() {
        let (x, y) = (&p1.cycles[a], &p2.cycles[b]);
        match x[0].cmp(&y[0]) {
            std::cmp::Ordering::Less => a += 1,
            std::cmp::Ordering::Greater => b += 1,
            std::cmp::Ordering::Equal => {
                if x == y {
                    count += 1;
                }
                a += 1;
                b += 1;
            }
        }
    }
    count
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for cycle in &self.cycles {
            f.write_str("(")?;
            for (k, x) in cycle.iter().enumerate() {
                if k > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{x}")?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

impl FromStr for Permutation {
    type Err = Error;

    /// Parses the full text form, e.g. `"(1 2 3)(4)"`; every point must appear.
    fn from_str(s: &str) -> Result<Self> {
        let mut cycles = Vec::new();
        let mut rest = s.trim();
        while !rest.is_empty() {
            let body = rest
                .strip_prefix('(')
                .ok_or_else(|| Error::Parse(format!("expected '(' in {s:?}")))?;
            let close = body.find(')').ok_or_else(|| Error::Parse(format!("unclosed cycle in {s:?}")))?;
            let cycle = body[..close]
                .split_whitespace()
                .map(|tok| tok.parse::<usize>().map_err(|e| Error::Parse(format!("{tok:?}: {e}"))))
                .collect::<Result<Vec<_>>>()?;
            if cycle.is_empty() {
                return Err(Error::Parse(format!("empty cycle in {s:?}")));
            }
            cycles.push(cycle);
            rest = body[close + 1..].trim_start();
        }
        let n: usize = cycles.iter().map(Vec::len).sum();
        if cycles.iter().flatten().any(|&x| x > n) {
            return Err(Error::MalformedPermutation(format!("{s:?} does not list every point of [{n}]")));
        }
        Permutation::from_cycles(n, &cycles)
    }
}

/// A duplicate-free set of permutations of a common `[n]`, iterated in
/// canonical order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PermFamily {
    n: usize,
    members: BTreeSet<Permutation>,
}

impl PermFamily {
    pub fn new(n: usize) -> Self {
        PermFamily { n, members: BTreeSet::new() }
    }

    pub fn from_perms<I: IntoIterator<Item = Permutation>>(n: usize, perms: I) -> Result<Self> {
        let mut family = PermFamily::new(n);
        for p in perms {
            family.insert(p)?;
        }
        Ok(family)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Returns whether the permutation was new.
    pub fn insert(&mut self, p: Permutation) -> Result<bool> {
        if p.n != self.n {
            return Err(Error::DomainMismatch { left: self.n, right: p.n });
        }
        Ok(self.members.insert(p))
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        self.members.contains(p)
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Permutation> {
        self.members.iter()
    }

    /// Points fixed by every member; `None` for the empty family.
    pub fn common_fixed_points(&self) -> Option<SubsetMask> {
        let mut it = self.members.iter();
        let first = it.next()?.fixed_points();
        Some(it.fold(first, |acc, p| acc.intersection(&p.fixed_points())))
    }

    /// Text form: one permutation per line.
    pub fn to_text(&self) -> String {
        self.members.iter().map(|p| format!("{p}\n")).collect()
    }
}

impl<'a> IntoIterator for &'a PermFamily {
    type Item = &'a Permutation;
    type IntoIter = std::collections::btree_set::Iter<'a, Permutation>;

    fn into_iter(self) -> Self::IntoIter {
        self.members.iter()
    }
}

/// Every unordered pair of distinct members shares at least `t` cycles.
/// Vacuously true for families of size at most one.
pub fn is_t_intersecting_family(family: &PermFamily, t: usize) -> bool {
    let members: Vec<_> = family.members.iter().collect();
    members.iter().enumerate().all(|(a, p)| {
        members[a + 1..]
            .iter()
            .all(|q| common_cycles_unchecked(p, q) >= t)
    })
}

/// Number of cycles present in every member.
pub fn family_common_cycles(family: &PermFamily) -> Result<usize> {
    let mut it = family.members.iter();
    let first = it.next().ok_or(Error::EmptyFamily)?;
    let mut common: Vec<&Vec<usize>> = first.cycles.iter().collect();
    for p in it {
        common.retain(|c| p.cycles.iter().any(|d| d == *c));
    }
    Ok(common.len())
}

/// `t`-intersecting, yet fewer than `t` cycles are common to the whole family.
pub fn is_nontrivial(family: &PermFamily, t: usize) -> Result<bool> {
    let common = family_common_cycles(family)?;
    Ok(common < t && is_t_intersecting_family(family, t))
}

/// Iterator over `S_n` in lexicographic order of the one-line form.
#[derive(Debug, Clone)]
pub struct SnIter {
    current: Option<Vec<usize>>,
}

impl Iterator for SnIter {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        let line = self.current.take()?;
        let out = Permutation::from_one_line(&line).expect("enumeration yields bijections");
        let mut next = line;
        // Standard next-permutation step.
        let mut k = next.len();
        while k >= 2 && next[k - 2] >= next[k - 1] {
            k -= 1;
        }
        if k >= 2 {
            let pivot = k - 2;
            let mut j = next.len() - 1;
            while next[j] <= next[pivot] {
                j -= 1;
            }
            next.swap(pivot, j);
            next[pivot + 1..].reverse();
            self.current = Some(next);
        }
        Some(out)
    }
}

/// All `n!` permutations of `[n]`, each exactly once, for `n <= 8`.
pub fn enumerate_sn(n: usize) -> Result<SnIter> {
    enumerate_sn_bounded(n, DEFAULT_ENUMERATION_BOUND)
}

pub fn enumerate_sn_bounded(n: usize, bound: usize) -> Result<SnIter> {
    if n == 0 {
        return Err(Error::OutOfRange("n must be positive".into()));
    }
    if n > bound {
        return Err(Error::ResourceGuard(format!("enumerating S_{n} exceeds the bound n <= {bound}")));
    }
    Ok(SnIter { current: Some((1..=n).collect()) })
}
