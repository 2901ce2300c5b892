//! Ground truth by exhaustive search.
//!
//! [`max_clique_exact`] searches S_n directly: vertices are permutations,
//! edges join pairs sharing at least `t` cycles. [`structured_max`] searches
//! the much smaller space of families generated by fixed-point sets.

use std::collections::HashMap;

use serde::{Serialize, Serializer};

use crate::counting::{derangements_big, BigCount};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::perm::{enumerate_sn, enumerate_sn_bounded, is_nontrivial, is_t_intersecting_family, PermFamily, Permutation};
use crate::search::{self, Bits, Instance, SearchConfig};
use crate::sets::{SetFamily, SubsetMask};

/// Largest n searched over S_n without opting in.
pub const CLIQUE_BOUND: usize = 5;
/// Largest n searched over S_n with `allow_n6`.
pub const CLIQUE_BOUND_OPT_IN: usize = 6;
/// Largest n for the structured search.
pub const STRUCTURED_BOUND: usize = 6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    TrivialAllowed,
    NontrivialOnly,
}

impl Mode {
    fn constraint(self, t: usize) -> Option<usize> {
        match self {
            Mode::TrivialAllowed => None,
            Mode::NontrivialOnly => Some(t),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleOptions {
    pub exec: Exec,
    pub budget_nodes: Option<u64>,
    pub allow_n6: bool,
    /// Searches without the colouring bound. Only sensible for n ≤ 4.
    pub unpruned: bool,
}

impl Default for OracleOptions {
    fn default() -> Self {
        OracleOptions { exec: Exec::available_parallel(), budget_nodes: None, allow_n6: false, unpruned: false }
    }
}

impl OracleOptions {
    fn search(&self) -> SearchConfig {
        SearchConfig { exec: self.exec, budget_nodes: self.budget_nodes, unpruned: self.unpruned }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OracleResult {
    pub n: usize,
    pub t: usize,
    pub mode: Mode,
    pub maximum: BigCount,
    #[serde(serialize_with = "witness_as_text")]
    pub witness: PermFamily,
    pub exhaustive: bool,
    pub node_count: u64,
}

fn witness_as_text<S: Serializer>(family: &PermFamily, serializer: S) -> std::result::Result<S::Ok, S::Error> {
    serializer.collect_seq(family.iter().map(|p| p.to_string()))
}

/// Every maximum family, in the search's deterministic order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Maximizers {
    pub n: usize,
    pub t: usize,
    pub mode: Mode,
    pub maximum: usize,
    pub families: Vec<PermFamily>,
    pub node_count: u64,
}

fn check_args(n: usize, t: usize) -> Result<()> {
    if n == 0 || t == 0 || t > n {
        return Err(Error::OutOfRange(format!("oracle needs 1 <= t <= n, got n={n}, t={t}")));
    }
    Ok(())
}

fn check_clique_bound(n: usize, opts: &OracleOptions) -> Result<()> {
    let bound = if opts.allow_n6 { CLIQUE_BOUND_OPT_IN } else { CLIQUE_BOUND };
    if n > bound {
        let hint = if n == CLIQUE_BOUND_OPT_IN { " (pass allow_n6 to opt in)" } else { "" };
        return Err(Error::ResourceGuard(format!("clique oracle is limited to n <= {bound}, got n={n}{hint}")));
    }
    Ok(())
}

/// S_n ordered for the search: more fixed points first, then canonical order.
fn search_order(n: usize) -> Result<Vec<Permutation>> {
    let mut perms: Vec<Permutation> = enumerate_sn(n)?.collect();
    perms.sort_by(|a, b| b.fixed_point_count().cmp(&a.fixed_point_count()).then_with(|| a.cmp(b)));
    Ok(perms)
}

fn cycle_instance(perms: &[Permutation], t: usize, mode: Mode) -> Instance {
    let mut ids: HashMap<&[usize], usize> = HashMap::new();
    for p in perms {
        for c in p.cycles() {
            let next = ids.len();
            ids.entry(c.as_slice()).or_insert(next);
        }
    }
    let features: Vec<Bits> = perms
        .iter()
        .map(|p| {
            let mut b = Bits::new(ids.len());
            for c in p.cycles() {
                b.set(ids[c.as_slice()]);
            }
            b
        })
        .collect();
    let shared = |a: usize, b: usize| features[a].and(&features[b]).count() >= t;
    Instance::from_predicate(vec![1; perms.len()], features.clone(), mode.constraint(t), shared)
}

fn family_of(n: usize, perms: &[Permutation], clique: &[usize]) -> PermFamily {
    PermFamily::from_perms(n, clique.iter().map(|&v| perms[v].clone())).expect("members share the domain")
}

/// Exact M(n,t) or M̃(n,t) by clique search over S_n, with default options.
pub fn max_clique_exact(n: usize, t: usize, mode: Mode) -> Result<OracleResult> {
    max_clique_exact_with(n, t, mode, &OracleOptions::default())
}

/// Exact maximum by clique search over S_n. The witness is the
/// lexicographically least maximizer, comparing sorted member lists.
pub fn max_clique_exact_with(n: usize, t: usize, mode: Mode, opts: &OracleOptions) -> Result<OracleResult> {
    check_args(n, t)?;
    check_clique_bound(n, opts)?;
    let perms = search_order(n)?;
    let inst = cycle_instance(&perms, t, mode);
    let best = search::maximize(&inst, opts.search())?;
    let (cliques, enum_nodes) = search::enumerate(&inst, best.weight, opts.search())?;
    let witness = cliques
        .iter()
        .map(|c| family_of(n, &perms, c))
        .min_by(|a, b| a.iter().cmp(b.iter()))
        .unwrap_or_else(|| PermFamily::new(n));
    debug_assert_eq!(witness.len() as u64, best.weight);
    Ok(OracleResult {
        n,
        t,
        mode,
        maximum: BigCount::from(best.weight),
        witness,
        exhaustive: true,
        node_count: best.nodes + enum_nodes,
    })
}

/// Every maximum family over S_n, each exactly once, with default options.
pub fn enumerate_maximizers(n: usize, t: usize, mode: Mode) -> Result<Maximizers> {
    enumerate_maximizers_with(n, t, mode, &OracleOptions::default())
}

pub fn enumerate_maximizers_with(n: usize, t: usize, mode: Mode, opts: &OracleOptions) -> Result<Maximizers> {
    check_args(n, t)?;
    check_clique_bound(n, opts)?;
    let perms = search_order(n)?;
    let inst = cycle_instance(&perms, t, mode);
    let best = search::maximize(&inst, opts.search())?;
    let (cliques, enum_nodes) = search::enumerate(&inst, best.weight, opts.search())?;
    Ok(Maximizers {
        n,
        t,
        mode,
        maximum: best.weight as usize,
        families: cliques.iter().map(|c| family_of(n, &perms, c)).collect(),
        node_count: best.nodes + enum_nodes,
    })
}

/// All permutations of [n] whose fixed-point set is exactly one of `sets`.
fn generated_family(n: usize, sets: &[SubsetMask]) -> Result<PermFamily> {
    let mut family = PermFamily::new(n);
    for p in enumerate_sn(n)? {
        if sets.contains(&p.fixed_points()) {
            family.insert(p)?;
        }
    }
    Ok(family)
}

/// Maximum over families generated by fixed-point sets, with default options.
pub fn structured_max(n: usize, t: usize, mode: Mode) -> Result<OracleResult> {
    structured_max_with(n, t, mode, &OracleOptions::default())
}

/// Maximizes the number of permutations whose fixed-point set lies in a
/// t-intersecting family of subsets of [n].
///
/// Each subset S with |S| ≥ t stands for the f(n−|S|) permutations fixing
/// exactly S; the search is a weighted clique over these subsets. In
/// nontrivial mode the subsets must have fewer than `t` common elements.
/// A single permutation with fewer than `t` cycles is a nontrivial family
/// that no such subset family generates, so in nontrivial mode the result is
/// at least 1 whenever one exists.
pub fn structured_max_with(n: usize, t: usize, mode: Mode, opts: &OracleOptions) -> Result<OracleResult> {
    check_args(n, t)?;
    if n > STRUCTURED_BOUND {
        return Err(Error::ResourceGuard(format!("structured oracle is limited to n <= {STRUCTURED_BOUND}, got n={n}")));
    }
    // Larger sets first: they carry the fixed-point-rich permutations.
    let mut sets: Vec<SubsetMask> = SubsetMask::all(n)
        .filter(|s| s.len() >= t && derangements_big(n - s.len()) > 0u8.into())
        .collect();
    sets.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
    let weight: Vec<u64> = sets
        .iter()
        .map(|s| u64::try_from(derangements_big(n - s.len())).expect("n <= 6 keeps weights small"))
        .collect();
    let features: Vec<Bits> = sets
        .iter()
        .map(|s| {
            let mut b = Bits::new(n);
            s.elements().for_each(|x| b.set(x - 1));
            b
        })
        .collect();
    let inst = Instance::from_predicate(weight, features, mode.constraint(t), |a, b| sets[a].intersection_len(&sets[b]) >= t);
    let best = search::maximize(&inst, opts.search())?;
    let chosen: Vec<SubsetMask> = best.clique.iter().map(|&v| sets[v]).collect();
    let mut witness = generated_family(n, &chosen)?;
    if mode == Mode::NontrivialOnly && witness.is_empty() {
        if let Some(p) = enumerate_sn(n)?.find(|p| p.cycle_count() < t) {
            witness.insert(p)?;
        }
    }
    debug_assert!(is_t_intersecting_family(&witness, t));
    debug_assert!(mode == Mode::TrivialAllowed || witness.is_empty() || is_nontrivial(&witness, t).unwrap_or(false));
    Ok(OracleResult {
        n,
        t,
        mode,
        maximum: BigCount::from(witness.len() as u64),
        witness,
        exhaustive: true,
        node_count: best.nodes,
    })
}

/// Counts permutations of [n] whose fixed-point set contains a member of
/// `generators`, by walking S_n. Independent of the twin-class formula.
pub fn brute_force_generated_count(generators: &SetFamily, n: usize) -> Result<u64> {
    if generators.n() > n {
        return Err(Error::Domain(format!("generators live on [{}] but n={n}", generators.n())));
    }
    let gens = generators.widen(n)?;
    let mut count = 0;
    for p in enumerate_sn_bounded(n, 8)? {
        if gens.generates(&p.fixed_points()) {
            count += 1;
        }
    }
    Ok(count)
}

/// Brute-force derangement count: permutations of [m] with no fixed point.
pub fn brute_force_derangements(m: usize) -> Result<u64> {
    if m == 0 {
        return Ok(1);
    }
    Ok(enumerate_sn_bounded(m, 10)?.filter(|p| p.fixed_point_count() == 0).count() as u64)
}
