//! Exact maximum-weight clique search with an optional nontriviality
//! constraint, shared by the permutation oracle, the structured oracle and
//! the k-set family searches.
//!
//! Every vertex carries a feature set (cycles of a permutation, or elements
//! of a set). In nontrivial mode a clique is admissible only when fewer than
//! `t` features are common to all of its members. Since the common set only
//! shrinks as the clique grows, the search first branches on vertices that
//! remove a common feature ("killers") and switches to plain branch and bound
//! once the clique is admissible.
//!
//! The top level is split into one task per first vertex. Tasks are
//! independent given a starting floor, which makes the maximum, the witness
//! and the node count independent of scheduling.

use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};

use crate::error::{Error, Result};
use crate::exec::Exec;

/// Fixed-width bitset.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub(crate) struct Bits {
    words: Vec<u64>,
}

impl Bits {
    pub fn new(len: usize) -> Self {
        Bits { words: vec![0; len.div_ceil(64).max(1)] }
    }

    pub fn set(&mut self, i: usize) {
        self.words[i / 64] |= 1 << (i % 64);
    }

    pub fn clear(&mut self, i: usize) {
        self.words[i / 64] &= !(1 << (i % 64));
    }

    #[cfg(test)]
    pub fn get(&self, i: usize) -> bool {
        self.words[i / 64] & (1 << (i % 64)) != 0
    }

    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn and(&self, other: &Bits) -> Bits {
        Bits { words: self.words.iter().zip(&other.words).map(|(a, b)| a & b).collect() }
    }

    pub fn and_assign(&mut self, other: &Bits) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= b;
        }
    }

    pub fn and_not_assign(&mut self, other: &Bits) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= !b;
        }
    }

    pub fn is_subset(&self, other: &Bits) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    pub fn first(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(k, w)| k * 64 + w.trailing_zeros() as usize)
    }

    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(k, &w)| {
            let mut rest = w;
            std::iter::from_fn(move || {
                if rest == 0 {
                    None
                } else {
                    let b = rest.trailing_zeros() as usize;
                    rest &= rest - 1;
                    Some(k * 64 + b)
                }
            })
        })
    }
}

/// A clique problem. Vertex indices are the search order.
#[derive(Debug, Clone)]
pub(crate) struct Instance {
    pub adj: Vec<Bits>,
    pub weight: Vec<u64>,
    pub features: Vec<Bits>,
    /// `Some(t)`: admissible cliques have fewer than `t` common features.
    pub nontrivial_below: Option<usize>,
}

impl Instance {
    pub fn len(&self) -> usize {
        self.adj.len()
    }

    /// Builds adjacency from a symmetric predicate on vertex pairs.
    pub fn from_predicate<F>(weight: Vec<u64>, features: Vec<Bits>, nontrivial_below: Option<usize>, adjacent: F) -> Self
    where
        F: Fn(usize, usize) -> bool,
    {
        let n = weight.len();
        let mut adj = vec![Bits::new(n); n];
        for a in 0..n {
            for b in a + 1..n {
                if adjacent(a, b) {
                    adj[a].set(b);
                    adj[b].set(a);
                }
            }
        }
        Instance { adj, weight, features, nontrivial_below }
    }

    fn admissible(&self, common: &Bits) -> bool {
        self.nontrivial_below.is_none_or(|t| common.count() < t)
    }
}

#[derive(Debug, Clone, Copy)]
pub(crate) struct SearchConfig {
    pub exec: Exec,
    pub budget_nodes: Option<u64>,
    /// Disables the colouring bound (for admissibility tests on tiny inputs).
    pub unpruned: bool,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig { exec: Exec::available_parallel(), budget_nodes: None, unpruned: false }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Best {
    pub weight: u64,
    pub clique: Vec<usize>,
    pub nodes: u64,
}

#[derive(Clone, Copy)]
enum Goal {
    /// Find the heaviest admissible clique strictly heavier than the floor.
    Maximize { floor: u64 },
    /// Collect every admissible clique of exactly this weight.
    Enumerate { target: u64 },
}

struct Budget {
    limit: Option<u64>,
    used: AtomicU64,
    exceeded: AtomicBool,
}

struct Task<'a> {
    inst: &'a Instance,
    goal: Goal,
    unpruned: bool,
    budget: &'a Budget,
    nodes: u64,
    pending: u64,
    best: Option<(u64, Vec<usize>)>,
    found: Vec<Vec<usize>>,
    clique: Vec<usize>,
}

impl<'a> Task<'a> {
    fn new(inst: &'a Instance, goal: Goal, unpruned: bool, budget: &'a Budget) -> Self {
        Task { inst, goal, unpruned, budget, nodes: 0, pending: 0, best: None, found: Vec::new(), clique: Vec::new() }
    }

    fn tick(&mut self) -> bool {
        self.nodes += 1;
        self.pending += 1;
        if self.pending >= 1024 {
            self.flush();
        }
        !self.budget.exceeded.load(Ordering::Relaxed)
    }

    fn flush(&mut self) {
        let total = self.budget.used.fetch_add(self.pending, Ordering::Relaxed) + self.pending;
        self.pending = 0;
        if self.budget.limit.is_some_and(|limit| total > limit) {
            self.budget.exceeded.store(true, Ordering::Relaxed);
        }
    }

    /// Weight a branch must beat (maximize) or reach (enumerate) to be explored.
    fn must_exceed(&self) -> u64 {
        match self.goal {
            Goal::Maximize { floor } => self.best.as_ref().map_or(floor, |(w, _)| (*w).max(floor)),
            Goal::Enumerate { target } => target.saturating_sub(1),
        }
    }

    fn record(&mut self, weight: u64) {
        match self.goal {
            Goal::Maximize { .. } => {
                if weight > self.must_exceed() {
                    self.best = Some((weight, self.clique.clone()));
                }
            }
            Goal::Enumerate { target } => {
                if weight == target {
                    self.found.push(self.clique.clone());
                }
            }
        }
    }

    /// Greedy colouring of `p` into independent sets. Returns vertices in
    /// colour order and, per vertex, the weighted bound of all classes up
    /// to and including its own.
    fn colour(&self, p: &Bits) -> (Vec<usize>, Vec<u64>) {
        let mut order = Vec::new();
        let mut bounds = Vec::new();
        let mut uncoloured = p.clone();
        let mut cumulative = 0u64;
        while !uncoloured.is_empty() {
            let mut q = uncoloured.clone();
            let start = order.len();
            let mut heaviest = 0u64;
            while let Some(v) = q.first() {
                q.clear(v);
                q.and_not_assign(&self.inst.adj[v]);
                uncoloured.clear(v);
                order.push(v);
                heaviest = heaviest.max(self.inst.weight[v]);
            }
            cumulative += heaviest;
            bounds.extend(std::iter::repeat_n(cumulative, order.len() - start));
        }
        if self.unpruned {
            let total: u64 = p.ones().map(|v| self.inst.weight[v]).sum();
            bounds.iter_mut().for_each(|b| *b = total);
        }
        (order, bounds)
    }

    fn colour_bound(&self, p: &Bits) -> u64 {
        let (_, bounds) = self.colour(p);
        bounds.last().copied().unwrap_or(0)
    }

    fn run_root(&mut self, v: usize) {
        let n = self.inst.len();
        let mut p = self.inst.adj[v].clone();
        for u in 0..=v.min(n - 1) {
            p.clear(u);
        }
        self.clique.push(v);
        let features = self.inst.features[v].clone();
        self.expand(self.inst.weight[v], &features, p);
        self.clique.pop();
        self.flush();
    }

    fn expand(&mut self, weight: u64, common: &Bits, p: Bits) {
        if !self.tick() {
            return;
        }
        let admissible = self.inst.admissible(common);
        if admissible {
            self.record(weight);
            self.branch_and_bound(weight, p);
        } else {
            self.branch_on_killers(weight, common, p);
        }
    }

    fn branch_on_killers(&mut self, weight: u64, common: &Bits, mut p: Bits) {
        let t = self.inst.nontrivial_below.expect("only reached in nontrivial mode");
        if p.is_empty() {
            return;
        }
        let mut survivors = common.clone();
        for u in p.ones() {
            survivors.and_assign(&self.inst.features[u]);
        }
        if survivors.count() >= t {
            return;
        }
        if weight + self.colour_bound(&p) <= self.must_exceed() {
            return;
        }
        let killers: Vec<usize> = p.ones().filter(|&u| !common.is_subset(&self.inst.features[u])).collect();
        for u in killers {
            let mut next = p.and(&self.inst.adj[u]);
            next.clear(u);
            self.clique.push(u);
            let narrowed = common.and(&self.inst.features[u]);
            self.expand(weight + self.inst.weight[u], &narrowed, next);
            self.clique.pop();
            // Later branches: u is not the first killer used.
            p.clear(u);
        }
    }

    fn branch_and_bound(&mut self, weight: u64, mut p: Bits) {
        if p.is_empty() {
            return;
        }
        let (order, bounds) = self.colour(&p);
        for k in (0..order.len()).rev() {
            if weight + bounds[k] <= self.must_exceed() {
                return;
            }
            let v = order[k];
            let next = p.and(&self.inst.adj[v]);
            self.clique.push(v);
            self.descend_admissible(weight + self.inst.weight[v], next);
            self.clique.pop();
            p.clear(v);
        }
    }

    fn descend_admissible(&mut self, weight: u64, p: Bits) {
        if !self.tick() {
            return;
        }
        self.record(weight);
        self.branch_and_bound(weight, p);
    }
}

fn budget_error(budget: &Budget) -> Error {
    Error::ResourceGuard(format!(
        "search exceeded the node budget of {} before completing",
        budget.limit.unwrap_or_default()
    ))
}

/// Heaviest admissible clique. Among equally heavy cliques the one found by
/// the lowest-numbered first vertex wins, then the first in that task's
/// depth-first order. Returns weight 0 and an empty clique when no vertex set
/// is admissible.
pub(crate) fn maximize(inst: &Instance, cfg: SearchConfig) -> Result<Best> {
    let n = inst.len();
    let budget = Budget { limit: cfg.budget_nodes, used: AtomicU64::new(0), exceeded: AtomicBool::new(false) };
    if n == 0 {
        return Ok(Best { weight: 0, clique: Vec::new(), nodes: 0 });
    }
    // Seed the floor with the first task alone; the rest run independently from it.
    let mut seed = Task::new(inst, Goal::Maximize { floor: 0 }, cfg.unpruned, &budget);
    seed.run_root(0);
    if budget.exceeded.load(Ordering::Relaxed) {
        return Err(budget_error(&budget));
    }
    let floor = seed.best.as_ref().map_or(0, |(w, _)| *w);
    let results = cfg.exec.map_range(1..n, |v| {
        let mut task = Task::new(inst, Goal::Maximize { floor }, cfg.unpruned, &budget);
        task.run_root(v);
        (task.best, task.nodes)
    });
    if budget.exceeded.load(Ordering::Relaxed) {
        return Err(budget_error(&budget));
    }
    let mut nodes = seed.nodes;
    let mut best = seed.best;
    for (candidate, task_nodes) in results {
        nodes += task_nodes;
        if let Some((w, clique)) = candidate {
            if best.as_ref().is_none_or(|(bw, _)| w > *bw) {
                best = Some((w, clique));
            }
        }
    }
    let (weight, mut clique) = best.unwrap_or((0, Vec::new()));
    clique.sort_unstable();
    Ok(Best { weight, clique, nodes })
}

/// Every admissible clique of weight exactly `target`, each sorted, listed
/// in task order. Only meaningful when `target` is the maximum.
pub(crate) fn enumerate(inst: &Instance, target: u64, cfg: SearchConfig) -> Result<(Vec<Vec<usize>>, u64)> {
    let budget = Budget { limit: cfg.budget_nodes, used: AtomicU64::new(0), exceeded: AtomicBool::new(false) };
    if target == 0 {
        return Ok((vec![Vec::new()], 0));
    }
    let results = cfg.exec.map_range(0..inst.len(), |v| {
        let mut task = Task::new(inst, Goal::Enumerate { target }, cfg.unpruned, &budget);
        task.run_root(v);
        (task.found, task.nodes)
    });
    if budget.exceeded.load(Ordering::Relaxed) {
        return Err(budget_error(&budget));
    }
    let mut nodes = 0;
    let mut all = Vec::new();
    for (found, task_nodes) in results {
        nodes += task_nodes;
        for mut c in found {
            c.sort_unstable();
            all.push(c);
        }
    }
    Ok((all, nodes))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn plain(n: usize, edges: &[(usize, usize)]) -> Instance {
        let features = vec![Bits::new(1); n];
        Instance::from_predicate(vec![1; n], features, None, |a, b| edges.contains(&(a, b)) || edges.contains(&(b, a)))
    }

    fn brute_force(inst: &Instance) -> (u64, usize) {
        let n = inst.len();
        let mut best = 0;
        let mut count = 0;
        for mask in 1u32..(1 << n) {
            let vs: Vec<usize> = (0..n).filter(|&v| mask & (1 << v) != 0).collect();
            let clique = vs.iter().enumerate().all(|(k, &a)| vs[k + 1..].iter().all(|&b| inst.adj[a].get(b)));
            if !clique {
                continue;
            }
            let mut common = inst.features[vs[0]].clone();
            for &v in &vs {
                common.and_assign(&inst.features[v]);
            }
            if !inst.admissible(&common) {
                continue;
            }
            let w: u64 = vs.iter().map(|&v| inst.weight[v]).sum();
            match w.cmp(&best) {
                std::cmp::Ordering::Greater => {
                    best = w;
                    count = 1;
                }
                std::cmp::Ordering::Equal => count += 1,
                _ => {}
            }
        }
        (best, count)
    }

    #[test]
    fn bits_ops() {
        let mut b = Bits::new(130);
        b.set(0);
        b.set(64);
        b.set(129);
        assert_eq!(b.ones().collect::<Vec<_>>(), vec![0, 64, 129]);
        assert_eq!(b.count(), 3);
        assert_eq!(b.first(), Some(0));
        b.clear(0);
        assert_eq!(b.first(), Some(64));
        assert!(b.get(129) && !b.get(1));
    }

    #[test]
    fn finds_a_triangle() {
        let inst = plain(5, &[(0, 1), (1, 2), (0, 2), (2, 3), (3, 4)]);
        let best = maximize(&inst, SearchConfig::default()).unwrap();
        assert_eq!((best.weight, best.clique), (3, vec![0, 1, 2]));
        let (all, _) = enumerate(&inst, 3, SearchConfig::default()).unwrap();
        assert_eq!(all, vec![vec![0, 1, 2]]);
    }

    #[test]
    fn random_instances_match_brute_force() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for round in 0..200 {
            let n = rng.gen_range(1..=11);
            let nf = rng.gen_range(1..=5);
            let features: Vec<Bits> = (0..n)
                .map(|_| {
                    let mut b = Bits::new(nf);
                    for f in 0..nf {
                        if rng.gen_bool(0.6) {
                            b.set(f);
                        }
                    }
                    b
                })
                .collect();
            let weight: Vec<u64> = (0..n).map(|_| rng.gen_range(1..=4)).collect();
            let density = rng.gen_range(0.3..0.95);
            let edges: Vec<bool> = (0..n * n).map(|_| rng.gen_bool(density)).collect();
            let t = if round % 2 == 0 { None } else { Some(rng.gen_range(1..=3)) };
            let inst = Instance::from_predicate(weight, features, t, |a, b| edges[a * n + b]);
            let (expected, count) = brute_force(&inst);
            for exec in [Exec::Sequential, Exec::Parallel] {
                for unpruned in [false, true] {
                    let cfg = SearchConfig { exec, budget_nodes: None, unpruned };
                    let best = maximize(&inst, cfg).unwrap();
                    assert_eq!(best.weight, expected, "round {round}");
                    if expected > 0 {
                        let (all, _) = enumerate(&inst, expected, cfg).unwrap();
                        assert_eq!(all.len(), count, "round {round}");
                    }
                }
            }
        }
    }

    #[test]
    fn budget_is_enforced() {
        let n = 40;
        let inst = Instance::from_predicate(vec![1; n], vec![Bits::new(1); n], None, |a, b| (a + b) % 3 != 0);
        let cfg = SearchConfig { exec: Exec::Sequential, budget_nodes: Some(10), unpruned: false };
        assert!(matches!(maximize(&inst, cfg), Err(Error::ResourceGuard(_))));
    }
}
