//! Extremal sizes for t-intersecting families of k-subsets of [n], with an
//! exhaustive search to check them against.

use std::collections::BTreeMap;

use serde::Serialize;

use super::{SetFamily, SubsetMask};
use crate::counting::{binomial_big, BigCount};
use crate::error::{Error, Result};
#[cfg(test)]
use crate::exec::Exec;
use crate::search::Bits;
#[cfg(test)]
use crate::search::{self, Instance, SearchConfig};

/// Largest n for which ν₁ and ν₂ are counted by walking all k-subsets.
pub const ENUMERATION_BOUND: usize = 20;
/// Largest n for the exhaustive family search.
pub const SEARCH_BOUND: usize = 12;

/// Hilton–Milner: the largest nontrivial intersecting k-set family on [n]
/// has C(n−1,k−1) − C(n−k−1,k−1) + 1 members when n > 2k and k ≥ 2.
pub fn hilton_milner(n: usize, k: usize) -> Result<BigCount> {
    if k < 2 || n <= 2 * k {
        return Err(Error::OutOfRange(format!("hilton_milner needs n > 2k and k >= 2, got n={n}, k={k}")));
    }
    let value = binomial_big(n - 1, k - 1) - binomial_big(n - k - 1, k - 1) + 1u8;
    Ok(BigCount::from(value))
}

fn check_nu1(n: usize, k: usize, t: usize) -> Result<()> {
    if !(1 <= t && t <= k && k <= n) {
        return Err(Error::OutOfRange(format!("frankl_nu1 needs 1 <= t <= k <= n, got n={n}, k={k}, t={t}")));
    }
    Ok(())
}

fn check_nu2(n: usize, k: usize, t: usize) -> Result<()> {
    if !(1 <= t && t < k && k < n) {
        return Err(Error::OutOfRange(format!("frankl_nu2 needs 1 <= t < k < n, got n={n}, k={k}, t={t}")));
    }
    Ok(())
}

fn in_nu1(v: &SubsetMask, t: usize) -> bool {
    let head = SubsetMask::interval(v.n(), 1, (t + 2).min(v.n())).expect("interval within [n]");
    v.intersection_len(&head) > t
}

fn in_nu2(v: &SubsetMask, k: usize, t: usize) -> bool {
    let n = v.n();
    let core = SubsetMask::interval(n, 1, t).expect("t < n");
    let window = SubsetMask::interval(n, t + 1, k + 1).expect("k < n");
    let block = SubsetMask::interval(n, 1, k + 1).expect("k < n");
    let first = core.is_subset(v) && v.intersection_len(&window) > 0;
    let second = v.is_subset(&block) && !core.is_subset(v);
    first || second
}

/// The family ν₁(n,k,t) = { V : |[t+2] ∩ V| ≥ t+1 }.
pub fn nu1_family(n: usize, k: usize, t: usize) -> Result<SetFamily> {
    check_nu1(n, k, t)?;
    SetFamily::from_masks(n, SubsetMask::k_subsets(n, k).into_iter().filter(|v| in_nu1(v, t)))
}

/// The family ν₂(n,k,t): k-sets containing [t] and meeting [t+1,k+1],
/// together with the t sets [k+1] ∖ {i}, i ∈ [t].
pub fn nu2_family(n: usize, k: usize, t: usize) -> Result<SetFamily> {
    check_nu2(n, k, t)?;
    SetFamily::from_masks(n, SubsetMask::k_subsets(n, k).into_iter().filter(|v| in_nu2(v, k, t)))
}

/// |ν₁(n,k,t)| by walking every k-subset of [n].
pub fn frankl_nu1_enumerated(n: usize, k: usize, t: usize) -> Result<BigCount> {
    check_nu1(n, k, t)?;
    guard_enumeration(n)?;
    let count = SubsetMask::k_subsets(n, k).iter().filter(|v| in_nu1(v, t)).count();
    Ok(BigCount::from(count as u64))
}

/// |ν₁(n,k,t)| = Σ_{s ≥ t+1} C(t+2,s)·C(n−t−2,k−s).
pub fn frankl_nu1_closed(n: usize, k: usize, t: usize) -> Result<BigCount> {
    check_nu1(n, k, t)?;
    let head = (t + 2).min(n);
    let total: num_bigint::BigUint = (t + 1..=head.min(k))
        .filter(|&s| k - s <= n - head)
        .map(|s| binomial_big(head, s) * binomial_big(n - head, k - s))
        .sum();
    Ok(BigCount::from(total))
}

/// |ν₁(n,k,t)|: enumerated when n ≤ [`ENUMERATION_BOUND`], closed form beyond.
pub fn frankl_nu1(n: usize, k: usize, t: usize) -> Result<BigCount> {
    if n <= ENUMERATION_BOUND {
        frankl_nu1_enumerated(n, k, t)
    } else {
        frankl_nu1_closed(n, k, t)
    }
}

pub fn frankl_nu2_enumerated(n: usize, k: usize, t: usize) -> Result<BigCount> {
    check_nu2(n, k, t)?;
    guard_enumeration(n)?;
    let count = SubsetMask::k_subsets(n, k).iter().filter(|v| in_nu2(v, k, t)).count();
    Ok(BigCount::from(count as u64))
}

/// |ν₂(n,k,t)| = C(n−t,k−t) − C(n−k−1,k−t) + t.
pub fn frankl_nu2_closed(n: usize, k: usize, t: usize) -> Result<BigCount> {
    check_nu2(n, k, t)?;
    let value = binomial_big(n - t, k - t) - binomial_big(n - k - 1, k - t) + t;
    Ok(BigCount::from(value))
}

pub fn frankl_nu2(n: usize, k: usize, t: usize) -> Result<BigCount> {
    if n <= ENUMERATION_BOUND {
        frankl_nu2_enumerated(n, k, t)
    } else {
        frankl_nu2_closed(n, k, t)
    }
}

fn guard_enumeration(n: usize) -> Result<()> {
    if n > ENUMERATION_BOUND {
        return Err(Error::ResourceGuard(format!("k-subset enumeration is limited to n <= {ENUMERATION_BOUND}, got n={n}")));
    }
    Ok(())
}

/// Size of the frontier family F_r = { V : |V ∩ [t+2r]| ≥ t+r }.
pub fn ak_frontier(n: usize, k: usize, t: usize, r: usize) -> Result<BigCount> {
    if !(1 <= t && t <= k && k <= n) || t + 2 * r > n {
        return Err(Error::OutOfRange(format!("ak_frontier needs 1 <= t <= k <= n and t+2r <= n, got n={n}, k={k}, t={t}, r={r}")));
    }
    let head = t + 2 * r;
    let total: num_bigint::BigUint = (t + r..=head.min(k))
        .filter(|&i| k - i <= n - head)
        .map(|i| binomial_big(head, i) * binomial_big(n - head, k - i))
        .sum();
    Ok(BigCount::from(total))
}

/// Ahlswede–Khachatrian: the largest t-intersecting k-set family on [n] is
/// the largest frontier family F_r.
pub fn ak_m(n: usize, k: usize, t: usize) -> Result<BigCount> {
    if !(1 <= t && t <= k && k <= n) {
        return Err(Error::OutOfRange(format!("ak_m needs 1 <= t <= k <= n, got n={n}, k={k}, t={t}")));
    }
    (0..=(n - t) / 2).map(|r| ak_frontier(n, k, t, r)).try_fold(BigCount::zero(), |best, v| {
        let v = v?;
        Ok(if v > best { v } else { best })
    })
}

/// Largest nontrivial t-intersecting k-set family for n > 2k − t and t < k:
/// M(n,k,t) up to n = (t+1)(k−t+1), then |ν₁| for k ≤ 2t+1 and
/// max(|ν₁|, |ν₂|) for larger k.
pub fn nontrivial_kset_max(n: usize, k: usize, t: usize) -> Result<BigCount> {
    if !(1 <= t && t < k && k < n) || n + t <= 2 * k {
        return Err(Error::OutOfRange(format!(
            "nontrivial_kset_max needs 1 <= t < k < n and n > 2k-t, got n={n}, k={k}, t={t}"
        )));
    }
    if n <= (t + 1) * (k - t + 1) {
        ak_m(n, k, t)
    } else if k <= 2 * t + 1 {
        frankl_nu1(n, k, t)
    } else {
        let (a, b) = (frankl_nu1(n, k, t)?, frankl_nu2(n, k, t)?);
        Ok(if a >= b { a } else { b })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct KSetSearch {
    pub n: usize,
    pub k: usize,
    pub t: usize,
    pub nontrivial: bool,
    pub maximum: usize,
    #[serde(serialize_with = "family_as_text")]
    pub witness: SetFamily,
    pub node_count: u64,
}

fn family_as_text<S: serde::Serializer>(family: &SetFamily, serializer: S) -> std::result::Result<S::Ok, S::Error> {
    serializer.collect_seq(family.iter().map(|s| s.to_string()))
}

fn kset_graph(n: usize, k: usize, t: usize) -> (Vec<SubsetMask>, Vec<Bits>) {
    let sets = SubsetMask::k_subsets(n, k);
    let mut adj = vec![Bits::new(sets.len()); sets.len()];
    for a in 0..sets.len() {
        for b in a + 1..sets.len() {
            if sets[a].intersection_len(&sets[b]) >= t {
                adj[a].set(b);
                adj[b].set(a);
            }
        }
    }
    (sets, adj)
}

/// Branch and bound with orbital branching.
///
/// The members chosen so far cut [n] into atoms (the cells of their Venn
/// diagram); permuting points within atoms fixes every chosen member and
/// maps the candidate set to itself. Candidates in one orbit of that group
/// are interchangeable, so each node branches on one representative per
/// orbit, then drops the whole orbit from later branches.
struct Orbital<'a> {
    sets: &'a [SubsetMask],
    adj: &'a [Bits],
    t: usize,
    nontrivial: bool,
    clique: Vec<usize>,
    best: Vec<usize>,
    nodes: u64,
}

impl Orbital<'_> {
    fn expand(&mut self, common: u64, atoms: &[u64], mut p: Bits) {
        self.nodes += 1;
        let admissible = !self.nontrivial || (common.count_ones() as usize) < self.t;
        if admissible && self.clique.len() > self.best.len() {
            self.best = self.clique.clone();
        }
        if p.is_empty() {
            return;
        }
        let mut branch = p.clone();
        if !admissible {
            let survivors = p.ones().fold(common, |acc, v| acc & self.sets[v].bits());
            if survivors.count_ones() as usize >= self.t {
                return;
            }
            for v in p.ones() {
                if self.sets[v].bits() & common == common {
                    branch.clear(v);
                }
            }
        }
        let mut orbits: BTreeMap<Vec<u32>, Vec<usize>> = BTreeMap::new();
        for v in branch.ones() {
            let key = atoms.iter().map(|a| (a & self.sets[v].bits()).count_ones()).collect();
            orbits.entry(key).or_default().push(v);
        }
        // As in colour-ordered branch and bound: take the orbits reaching the
        // highest colour first; what remains fits in the occupied classes.
        let colour = greedy_colouring(self.adj, &p, self.sets.len());
        let mut occupied = vec![0usize; colour.iter().flatten().max().map_or(0, |c| c + 1)];
        for v in p.ones() {
            occupied[colour[v].expect("coloured")] += 1;
        }
        let mut classes = occupied.iter().filter(|&&c| c > 0).count();
        let mut orbits: Vec<(usize, Vec<usize>)> = orbits
            .into_values()
            .map(|o| (o.iter().map(|&v| colour[v].expect("coloured")).max().expect("orbits are nonempty"), o))
            .collect();
        orbits.sort_by_key(|o| std::cmp::Reverse(o.0));
        for (_, orbit) in orbits {
            if self.clique.len() + classes <= self.best.len() {
                return;
            }
            let rep = orbit[0];
            let bits = self.sets[rep].bits();
            let child_atoms: Vec<u64> = atoms.iter().flat_map(|&a| [a & bits, a & !bits]).filter(|&a| a != 0).collect();
            self.clique.push(rep);
            self.expand(common & bits, &child_atoms, p.and(&self.adj[rep]));
            self.clique.pop();
            for v in orbit {
                p.clear(v);
                let c = colour[v].expect("coloured");
                occupied[c] -= 1;
                if occupied[c] == 0 {
                    classes -= 1;
                }
            }
        }
    }
}

/// Greedy sequential colouring of `p`; `None` outside `p`.
fn greedy_colouring(adj: &[Bits], p: &Bits, len: usize) -> Vec<Option<usize>> {
    let mut colour = vec![None; len];
    let mut uncoloured = p.clone();
    let mut c = 0;
    while !uncoloured.is_empty() {
        let mut q = uncoloured.clone();
        while let Some(v) = q.first() {
            q.clear(v);
            q.and_not_assign(&adj[v]);
            uncoloured.clear(v);
            colour[v] = Some(c);
        }
        c += 1;
    }
    colour
}

/// Exhaustive maximum t-intersecting family of k-subsets of [n]; with
/// `nontrivial`, the members must also have fewer than `t` common elements.
/// Sequential; callers parallelize across instances.
pub fn max_kset_family(n: usize, k: usize, t: usize, nontrivial: bool) -> Result<KSetSearch> {
    if !(1 <= t && t <= k && k <= n) {
        return Err(Error::OutOfRange(format!("k-set search needs 1 <= t <= k <= n, got n={n}, k={k}, t={t}")));
    }
    if n > SEARCH_BOUND {
        return Err(Error::ResourceGuard(format!("k-set search is limited to n <= {SEARCH_BOUND}, got n={n}")));
    }
    let (sets, adj) = kset_graph(n, k, t);
    let full = SubsetMask::full(n).bits();
    let mut search = Orbital { sets: &sets, adj: &adj, t, nontrivial, clique: Vec::new(), best: Vec::new(), nodes: 0 };
    let mut all = Bits::new(sets.len());
    (0..sets.len()).for_each(|v| all.set(v));
    search.expand(full, &[full], all);
    let witness = SetFamily::from_masks(n, search.best.iter().map(|&v| sets[v]))?;
    Ok(KSetSearch { n, k, t, nontrivial, maximum: witness.len(), witness, node_count: search.nodes })
}

/// The same search without symmetry reduction, on the shared clique engine.
#[cfg(test)]
fn max_kset_family_plain(n: usize, k: usize, t: usize, nontrivial: bool) -> usize {
    let (sets, adj) = kset_graph(n, k, t);
    let features: Vec<Bits> = sets
        .iter()
        .map(|s| {
            let mut b = Bits::new(n);
            s.elements().for_each(|x| b.set(x - 1));
            b
        })
        .collect();
    let inst = Instance { adj, weight: vec![1; sets.len()], features, nontrivial_below: nontrivial.then_some(t) };
    let cfg = SearchConfig { exec: Exec::Sequential, budget_nodes: None, unpruned: false };
    search::maximize(&inst, cfg).unwrap().weight as usize
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(c: Result<BigCount>) -> u64 {
        c.unwrap().to_u64().unwrap()
    }

    fn search(n: usize, k: usize, t: usize, nontrivial: bool) -> usize {
        max_kset_family(n, k, t, nontrivial).unwrap().maximum
    }

    #[test]
    fn hilton_milner_examples() {
        assert_eq!(v(hilton_milner(5, 2)), 3);
        assert_eq!(v(hilton_milner(7, 3)), 13);
        assert!(hilton_milner(4, 2).is_err());
        assert!(hilton_milner(6, 3).is_err());
        assert!(hilton_milner(5, 1).is_err());
        assert_eq!(search(5, 2, 1, true), 3);
        assert_eq!(search(7, 3, 1, true), 13);
    }

    #[test]
    fn nu1_examples() {
        assert_eq!(v(frankl_nu1(5, 2, 2)), 0);
        assert_eq!(v(frankl_nu1(6, 3, 1)), 10);
        assert_eq!(v(frankl_nu1(3, 3, 1)), 1);
        assert_eq!(v(frankl_nu1_closed(6, 3, 1)), 10);
    }

    #[test]
    fn nu2_examples() {
        assert_eq!(frankl_nu2(7, 3, 1).unwrap(), frankl_nu2_closed(7, 3, 1).unwrap());
        // n = k+1: every k-set containing [t] meets [t+1,k+1].
        assert_eq!(v(frankl_nu2(5, 4, 2)), 3 + 2);
        assert_eq!(frankl_nu2(6, 3, 2).unwrap(), frankl_nu2_closed(6, 3, 2).unwrap());
        assert!(nu2_family(7, 3, 1).unwrap().is_t_intersecting(1));
    }

    #[test]
    fn ak_examples() {
        assert_eq!(v(ak_m(4, 2, 1)), 3);
        assert_eq!(v(ak_frontier(4, 2, 1, 0)), 3);
        assert_eq!(v(ak_frontier(4, 2, 1, 1)), 3);
        assert_eq!(v(ak_m(7, 3, 1)), 15);
        assert_eq!(v(ak_m(6, 2, 2)), 1);
        assert_eq!(search(6, 2, 1, false), 5);
        assert_eq!(v(ak_m(6, 2, 1)), 5);
    }

    #[test]
    fn orbital_search_matches_plain_search() {
        for n in 1..=8 {
            for k in 1..=n.min(4) {
                for t in 1..=k {
                    for nontrivial in [false, true] {
                        let found = max_kset_family(n, k, t, nontrivial).unwrap();
                        assert_eq!(found.maximum, max_kset_family_plain(n, k, t, nontrivial), "n={n} k={k} t={t} {nontrivial}");
                        assert!(found.witness.is_t_intersecting(t));
                        if nontrivial && found.maximum > 0 {
                            assert!(found.witness.common_intersection().unwrap().len() < t);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn closed_forms_match_enumeration() {
        for n in 1..=10 {
            for k in 1..=n.min(5) {
                for t in 1..=k {
                    assert_eq!(frankl_nu1_enumerated(n, k, t).unwrap(), frankl_nu1_closed(n, k, t).unwrap());
                    assert_eq!(frankl_nu1_enumerated(n, k, t).unwrap().to_u64().unwrap() as usize, nu1_family(n, k, t).unwrap().len());
                    if t < k && k < n {
                        assert_eq!(frankl_nu2_enumerated(n, k, t).unwrap(), frankl_nu2_closed(n, k, t).unwrap());
                    }
                }
            }
        }
    }
}
