//! Subset-lattice machinery over `[n]`: bit-mask subsets, set families,
//! upsets and their minimal elements, the two-block generating families
//! `H_i`, and left-compression of set systems.

pub mod cited;

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Largest ground set a [`SubsetMask`] can describe.
pub const MAX_GROUND: usize = 64;

/// A subset of `[n]` (1-based) packed into a `u64`; bit `x - 1` marks element `x`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SubsetMask {
    n: usize,
    bits: u64,
}

fn ground_bits(n: usize) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

impl SubsetMask {
    pub fn empty(n: usize) -> Self {
        assert!(n <= MAX_GROUND, "ground set [{n}] exceeds {MAX_GROUND}");
        SubsetMask { n, bits: 0 }
    }

    pub fn full(n: usize) -> Self {
        assert!(n <= MAX_GROUND, "ground set [{n}] exceeds {MAX_GROUND}");
        SubsetMask { n, bits: ground_bits(n) }
    }

    /// `[a, b]` as a subset of `[n]`; empty when `a > b`.
    pub fn interval(n: usize, a: usize, b: usize) -> Result<Self> {
        Self::from_elements(n, a..=b)
    }

    pub fn from_bits(n: usize, bits: u64) -> Result<Self> {
        if n > MAX_GROUND {
            return Err(Error::OutOfRange(format!("ground set [{n}] exceeds {MAX_GROUND}")));
        }
        if bits & !ground_bits(n) != 0 {
            return Err(Error::Domain(format!("bits {bits:#x} reach outside [{n}]")));
        }
        Ok(SubsetMask { n, bits })
    }

    pub fn from_elements<I: IntoIterator<Item = usize>>(n: usize, elements: I) -> Result<Self> {
        if n > MAX_GROUND {
            return Err(Error::OutOfRange(format!("ground set [{n}] exceeds {MAX_GROUND}")));
        }
        let mut bits = 0u64;
        for x in elements {
            if x == 0 || x > n {
                return Err(Error::Domain(format!("element {x} outside [{n}]")));
            }
            bits |= 1 << (x - 1);
        }
        Ok(SubsetMask { n, bits })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.bits == 0
    }

    pub fn contains(&self, x: usize) -> bool {
        x >= 1 && x <= self.n && self.bits & (1 << (x - 1)) != 0
    }

    pub fn insert(&mut self, x: usize) {
        assert!(x >= 1 && x <= self.n, "element {x} outside [{}]", self.n);
        self.bits |= 1 << (x - 1);
    }

    pub fn remove(&mut self, x: usize) {
        if x >= 1 && x <= self.n {
            self.bits &= !(1 << (x - 1));
        }
    }

    pub fn is_subset(&self, other: &SubsetMask) -> bool {
        self.bits & !other.bits == 0
    }

    pub fn intersection(&self, other: &SubsetMask) -> SubsetMask {
        SubsetMask { n: self.n.max(other.n), bits: self.bits & other.bits }
    }

    pub fn union(&self, other: &SubsetMask) -> SubsetMask {
        SubsetMask { n: self.n.max(other.n), bits: self.bits | other.bits }
    }

    pub fn complement(&self) -> SubsetMask {
        SubsetMask { n: self.n, bits: !self.bits & ground_bits(self.n) }
    }

    pub fn intersection_len(&self, other: &SubsetMask) -> usize {
        (self.bits & other.bits).count_ones() as usize
    }

    /// Largest element, or 0 for the empty set.
    pub fn max_element(&self) -> usize {
        64 - self.bits.leading_zeros() as usize
    }

    /// Elements in increasing order.
    pub fn elements(&self) -> impl Iterator<Item = usize> + '_ {
        let mut rest = self.bits;
        std::iter::from_fn(move || {
            if rest == 0 {
                None
            } else {
                let x = rest.trailing_zeros() as usize + 1;
                rest &= rest - 1;
                Some(x)
            }
        })
    }

    /// The same subset viewed inside a larger ground set `[n]`.
    pub fn widen(&self, n: usize) -> Result<SubsetMask> {
        if n < self.n {
            return Err(Error::Domain(format!("cannot narrow [{}] to [{n}]", self.n)));
        }
        SubsetMask::from_bits(n, self.bits)
    }

    /// Swaps the membership of `v` and `w`.
    pub fn transposed(&self, v: usize, w: usize) -> SubsetMask {
        let (hv, hw) = (self.contains(v), self.contains(w));
        let mut out = *self;
        if hv != hw {
            if hv {
                out.remove(v);
                out.insert(w);
            } else {
                out.remove(w);
                out.insert(v);
            }
        }
        out
    }

    /// Every subset of `[n]` in increasing bit order.
    pub fn all(n: usize) -> impl Iterator<Item = SubsetMask> {
        assert!(n < MAX_GROUND, "refusing to enumerate 2^{n} subsets");
        (0..(1u64 << n)).map(move |bits| SubsetMask { n, bits })
    }

    /// All `k`-subsets of `[n]` in lexicographic order of their sorted element lists.
    pub fn k_subsets(n: usize, k: usize) -> Vec<SubsetMask> {
        fn rec(n: usize, k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<SubsetMask>) {
            if cur.len() == k {
                out.push(SubsetMask::from_elements(n, cur.iter().copied()).expect("in range"));
                return;
            }
            for x in start..=n {
                if n - x + 1 < k - cur.len() {
                    break;
                }
                cur.push(x);
                rec(n, k, x + 1, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        if k <= n {
            rec(n, k, 1, &mut Vec::with_capacity(k), &mut out);
        }
        out
    }
}

impl fmt::Display for SubsetMask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for x in self.elements() {
            if !first {
                f.write_str(" ")?;
            }
            write!(f, "{x}")?;
            first = false;
        }
        Ok(())
    }
}

/// A duplicate-free family of subsets of a common `[n]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SetFamily {
    n: usize,
    members: BTreeSet<SubsetMask>,
}

impl SetFamily {
    pub fn new(n: usize) -> Self {
        assert!(n <= MAX_GROUND, "ground set [{n}] exceeds {MAX_GROUND}");
        SetFamily { n, members: BTreeSet::new() }
    }

    pub fn from_masks<I: IntoIterator<Item = SubsetMask>>(n: usize, masks: I) -> Result<Self> {
        let mut family = SetFamily::new(n);
        for m in masks {
            family.insert(m)?;
        }
        Ok(family)
    }

    /// Convenience constructor from element lists, e.g. `&[&[1, 2], &[1, 3]]`.
    pub fn from_lists(n: usize, lists: &[&[usize]]) -> Result<Self> {
        Self::from_masks(
            n,
            lists
                .iter()
                .map(|l| SubsetMask::from_elements(n, l.iter().copied()))
                .collect::<Result<Vec<_>>>()?,
        )
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn insert(&mut self, mask: SubsetMask) -> Result<bool> {
        let mask = if mask.n() == self.n {
            mask
        } else if mask.max_element() <= self.n {
            SubsetMask::from_bits(self.n, mask.bits())?
        } else {
            return Err(Error::DomainMismatch { left: self.n, right: mask.n() });
        };
        Ok(self.members.insert(mask))
    }

    pub fn contains(&self, mask: &SubsetMask) -> bool {
        self.members.contains(&SubsetMask { n: self.n, bits: mask.bits() })
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &SubsetMask> {
        self.members.iter()
    }

    /// Embeds every member into `[n]` for `n >= self.n()`.
    pub fn widen(&self, n: usize) -> Result<SetFamily> {
        if n < self.n {
            return Err(Error::Domain(format!("cannot narrow [{}] to [{n}]", self.n)));
        }
        SetFamily::from_masks(n, self.members.iter().map(|m| m.widen(n)).collect::<Result<Vec<_>>>()?)
    }

    /// True if some member is contained in `s`, i.e. `s` lies in the upset.
    pub fn generates(&self, s: &SubsetMask) -> bool {
        self.members.iter().any(|g| g.is_subset(s))
    }

    /// The smallest superset-closed family containing every member.
    ///
    /// Enumerates the result explicitly, so it is meant for small `n`.
    pub fn upset(&self) -> SetFamily {
        assert!(self.n <= 24, "explicit upset over [{}] is too large", self.n);
        let mut out = BTreeSet::new();
        for g in self.minimal_elements().iter() {
            let free = g.complement().bits();
            // Walk every submask of the free bits.
            let mut sub = free;
            loop {
                out.insert(SubsetMask { n: self.n, bits: g.bits() | sub });
                if sub == 0 {
                    break;
                }
                sub = (sub - 1) & free;
            }
        }
        SetFamily { n: self.n, members: out }
    }

    pub fn is_upset(&self) -> bool {
        self.members.iter().all(|s| {
            s.complement()
                .elements()
                .all(|x| self.members.contains(&SubsetMask { n: self.n, bits: s.bits() | 1 << (x - 1) }))
        })
    }

    /// Inclusion-minimal members.
    pub fn minimal_elements(&self) -> SetFamily {
        let members: Vec<_> = self.members.iter().copied().collect();
        let minimal = members
            .iter()
            .filter(|s| !members.iter().any(|o| o != *s && o.is_subset(s)))
            .copied()
            .collect();
        SetFamily { n: self.n, members: minimal }
    }

    pub fn is_antichain(&self) -> bool {
        self.minimal_elements().len() == self.len()
    }

    /// Every pair of members (distinct or not) meets in at least `t` points.
    pub fn is_t_intersecting(&self, t: usize) -> bool {
        let members: Vec<_> = self.members.iter().collect();
        members
            .iter()
            .enumerate()
            .all(|(a, s)| members[a + 1..].iter().all(|o| s.intersection_len(o) >= t))
    }

    /// Intersection of all members; `None` for the empty family.
    pub fn common_intersection(&self) -> Option<SubsetMask> {
        let mut it = self.members.iter();
        let first = *it.next()?;
        Some(it.fold(first, |acc, s| acc.intersection(s)))
    }

    /// Elements `x` and `y` are twins when swapping them maps the family onto itself.
    pub fn are_twins(&self, x: usize, y: usize) -> bool {
        self.members
            .iter()
            .all(|s| self.members.contains(&s.transposed(x, y)))
    }

    /// Partition of `[n]` into twin classes, each sorted, ordered by least element.
    pub fn twin_classes(&self) -> Vec<Vec<usize>> {
        let mut classes: Vec<Vec<usize>> = Vec::new();
        for x in 1..=self.n {
            match classes.iter_mut().find(|c| self.are_twins(c[0], x)) {
                Some(class) => class.push(x),
                None => classes.push(vec![x]),
            }
        }
        classes
    }

    /// Applies the `(v, w)` exchange once to every member against the
    /// original snapshot. Returns the image and the number of members moved.
    pub fn exchange(&self, v: usize, w: usize) -> (SetFamily, usize) {
        let mut out = BTreeSet::new();
        let mut moved = 0;
        for s in &self.members {
            if s.contains(w) && !s.contains(v) {
                let image = s.transposed(v, w);
                if !self.members.contains(&image) {
                    out.insert(image);
                    moved += 1;
                    continue;
                }
            }
            out.insert(*s);
        }
        (SetFamily { n: self.n, members: out }, moved)
    }

    /// Left-compresses to a fixpoint: sweeps all `(v, w)` with `v < w` in
    /// lexicographic order until no exchange moves a member.
    pub fn left_compress(&self) -> SetFamily {
        let mut current = self.clone();
        loop {
            let mut changed = false;
            for v in 1..=self.n {
                for w in v + 1..=self.n {
                    let (next, moved) = current.exchange(v, w);
                    if moved > 0 {
                        changed = true;
                        current = next;
                    }
                }
            }
            if !changed {
                return current;
            }
        }
    }

    pub fn is_left_compressed(&self) -> bool {
        (1..=self.n).all(|v| (v + 1..=self.n).all(|w| self.exchange(v, w).1 == 0))
    }

    /// One member per line as a sorted element list; the empty set is written `{}`.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for s in &self.members {
            if s.is_empty() {
                out.push_str("{}");
            } else {
                out.push_str(&s.to_string());
            }
            out.push('\n');
        }
        out
    }

    /// Parses the text form; `#` starts a comment, blank lines are skipped
    /// (write `{}` for the empty set).
    pub fn parse(n: usize, text: &str) -> Result<SetFamily> {
        let mut family = SetFamily::new(n);
        for line in text.lines() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            if line == "{}" {
                family.insert(SubsetMask::empty(n))?;
                continue;
            }
            let elements = line
                .split_whitespace()
                .map(|tok| tok.parse::<usize>().map_err(|e| Error::Parse(format!("{tok:?}: {e}"))))
                .collect::<Result<Vec<_>>>()?;
            family.insert(SubsetMask::from_elements(n, elements)?)?;
        }
        Ok(family)
    }
}

impl fmt::Display for SetFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, s) in self.members.iter().enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{{{s}}}")?;
        }
        f.write_str("}")
    }
}

impl FromStr for SubsetMask {
    type Err = Error;

    /// Parses `"n: a b c"`.
    fn from_str(s: &str) -> Result<Self> {
        let (n, rest) = s
            .split_once(':')
            .ok_or_else(|| Error::Parse(format!("expected `n: elements`, got {s:?}")))?;
        let n = n.trim().parse::<usize>().map_err(|e| Error::Parse(e.to_string()))?;
        let elements = rest
            .split_whitespace()
            .map(|t| t.parse::<usize>().map_err(|e| Error::Parse(e.to_string())))
            .collect::<Result<Vec<_>>>()?;
        SubsetMask::from_elements(n, elements)
    }
}

/// The generating family `H_i` over `[t + i]`: the `(t+1)`-sets containing
/// `[t]`, together with the `(t+i-1)`-sets containing `[t+1, t+i]`.
///
/// `i = 1` is degenerate (the family is a star and, for `t >= 2`, not even
/// `t`-intersecting); it is returned as defined, but only `i >= 2` is used by
/// the counting code.
pub fn h_family(t: usize, i: usize) -> Result<SetFamily> {
    if t == 0 || i == 0 {
        return Err(Error::OutOfRange(format!("h_family needs t >= 1 and i >= 1, got t={t}, i={i}")));
    }
    let m = t + i;
    if m > MAX_GROUND {
        return Err(Error::OutOfRange(format!("ground set [{m}] exceeds {MAX_GROUND}")));
    }
    let base = SubsetMask::interval(m, 1, t)?;
    let tail = SubsetMask::interval(m, t + 1, m)?;
    let mut family = SetFamily::new(m);
    for x in t + 1..=m {
        let mut h = base;
        h.insert(x);
        family.insert(h)?;
    }
    for missing in 1..=t {
        let mut h = tail.union(&base);
        h.remove(missing);
        family.insert(h)?;
    }
    Ok(family)
}
