//! The fixing operator `F(i, j, ·)` and the shifting operator `L(v, w, ·)`
//! on permutation families, iteration to a common fixpoint, and the audit
//! of maximum nontrivial families.
//!
//! Family-level operators use snapshot semantics: the membership guard is
//! evaluated against the input family, never a partially updated one, so the
//! per-member maps are independent and the result does not depend on order.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::perm::{family_common_cycles, is_nontrivial, is_t_intersecting_family, PermFamily, Permutation};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Operator {
    Fix,
    Shift,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CompressionStep {
    pub operator: Operator,
    /// `i` for fixing, `v` for shifting.
    pub first: usize,
    /// `j` for fixing, `w` for shifting.
    pub second: usize,
    pub moved: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CompressionTrace {
    pub steps: Vec<CompressionStep>,
    pub sweeps: usize,
    pub initial_size: usize,
    pub final_size: usize,
}

fn check_points(n: usize, a: usize, b: usize) -> Result<()> {
    if a == 0 || b == 0 || a > n || b > n {
        return Err(Error::InvalidArgument(format!("points {a}, {b} must lie in [{n}]")));
    }
    Ok(())
}

/// Splits off `i` as a fixed point when `p(i) = j`; identity otherwise.
/// The rest of `i`'s cycle keeps its cyclic order.
pub fn fix_perm(i: usize, j: usize, p: &Permutation) -> Result<Permutation> {
    if i == j {
        return Err(Error::InvalidArgument(format!("fixing needs i != j, got {i}")));
    }
    check_points(p.n(), i, j)?;
    Ok(fix_unchecked(i, j, p))
}

fn fix_unchecked(i: usize, j: usize, p: &Permutation) -> Permutation {
    if p.apply(i) != j {
        return p.clone();
    }
    let mut cycles = p.cycles().to_vec();
    let at = cycles.iter().position(|c| c.contains(&i)).expect("cycles partition [n]");
    cycles[at].retain(|&x| x != i);
    cycles.push(vec![i]);
    Permutation::from_raw_cycles(p.n(), cycles)
}

/// When `w` is fixed and `v` is not, puts `w` in `v`'s place inside `v`'s
/// cycle and makes `v` a fixed point; identity otherwise.
pub fn shift_perm(v: usize, w: usize, p: &Permutation) -> Result<Permutation> {
    if v >= w {
        return Err(Error::InvalidArgument(format!("shifting needs v < w, got v={v}, w={w}")));
    }
    check_points(p.n(), v, w)?;
    Ok(shift_unchecked(v, w, p))
}

fn shift_unchecked(v: usize, w: usize, p: &Permutation) -> Permutation {
    if !p.is_fixed(w) || p.is_fixed(v) {
        return p.clone();
    }
    let cycles = p
        .cycles()
        .iter()
        .filter(|c| c.as_slice() != [w])
        .map(|c| c.iter().map(|&x| if x == v { w } else { x }).collect())
        .chain(std::iter::once(vec![v]))
        .collect();
    Permutation::from_raw_cycles(p.n(), cycles)
}

fn apply_guarded<F>(family: &PermFamily, exec: Exec, op: F) -> (PermFamily, usize)
where
    F: Fn(&Permutation) -> Permutation + Sync + Send,
{
    let members: Vec<&Permutation> = family.iter().collect();
    let images = exec.map(&members, |p| {
        let image = op(p);
        if image != **p && !family.contains(&image) {
            (image, true)
        } else {
            ((*p).clone(), false)
        }
    });
    let moved = images.iter().filter(|(_, m)| *m).count();
    let out = PermFamily::from_perms(family.n(), images.into_iter().map(|(p, _)| p)).expect("same ground set");
    (out, moved)
}

/// `𝓕(i, j, A)`: each member is replaced by its fixing image unless that
/// image is already in `A`.
pub fn fix_family(i: usize, j: usize, family: &PermFamily) -> Result<PermFamily> {
    fix_family_with(i, j, family, Exec::Sequential).map(|(f, _)| f)
}

pub fn fix_family_with(i: usize, j: usize, family: &PermFamily, exec: Exec) -> Result<(PermFamily, usize)> {
    if i == j {
        return Err(Error::InvalidArgument(format!("fixing needs i != j, got {i}")));
    }
    check_points(family.n(), i, j)?;
    Ok(apply_guarded(family, exec, |p| fix_unchecked(i, j, p)))
}

/// `𝓛(v, w, A)`: each member is replaced by its shifting image unless that
/// image is already in `A`.
pub fn shift_family(v: usize, w: usize, family: &PermFamily) -> Result<PermFamily> {
    shift_family_with(v, w, family, Exec::Sequential).map(|(f, _)| f)
}

pub fn shift_family_with(v: usize, w: usize, family: &PermFamily, exec: Exec) -> Result<(PermFamily, usize)> {
    if v >= w {
        return Err(Error::InvalidArgument(format!("shifting needs v < w, got v={v}, w={w}")));
    }
    check_points(family.n(), v, w)?;
    Ok(apply_guarded(family, exec, |p| shift_unchecked(v, w, p)))
}

/// Repeats sweeps of every fixing operator (lexicographic `(i, j)`) until
/// none moves a member. Returns the applied steps.
pub fn fix_to_fixpoint_with(family: &PermFamily, exec: Exec) -> Result<(PermFamily, Vec<CompressionStep>)> {
    let n = family.n();
    let mut current = family.clone();
    let mut steps = Vec::new();
    loop {
        let mut changed = false;
        for i in 1..=n {
            for j in (1..=n).filter(|&j| j != i) {
                let (next, moved) = fix_family_with(i, j, &current, exec)?;
                if moved > 0 {
                    steps.push(CompressionStep { operator: Operator::Fix, first: i, second: j, moved });
                    current = next;
                    changed = true;
                }
            }
        }
        if !changed {
            return Ok((current, steps));
        }
    }
}

/// Compresses with both operators until neither moves a member.
///
/// The fixing stage runs to its own fixpoint first, and again after every
/// shift that moves something, so each shift acts on a family whose members
/// meet in fixed points. A sweep tries every shift in lexicographic `(v, w)`
/// order; sweeps repeat until one moves nothing. Each move lowers the
/// potential (moved points, then sum of fixed points), so the loop terminates.
pub fn compress_to_fixpoint(family: &PermFamily, t: usize) -> Result<(PermFamily, CompressionTrace)> {
    compress_to_fixpoint_with(family, t, Exec::Sequential)
}

pub fn compress_to_fixpoint_with(family: &PermFamily, t: usize, exec: Exec) -> Result<(PermFamily, CompressionTrace)> {
    if !is_t_intersecting_family(family, t) {
        return Err(Error::Precondition(format!("family is not {t}-cycle-intersecting")));
    }
    let n = family.n();
    let (mut current, steps) = fix_to_fixpoint_with(family, exec)?;
    let mut trace = CompressionTrace { steps, sweeps: 0, initial_size: family.len(), final_size: 0 };
    loop {
        trace.sweeps += 1;
        let mut changed = false;
        for v in 1..=n {
            for w in v + 1..=n {
                let (next, moved) = shift_family_with(v, w, &current, exec)?;
                if moved > 0 {
                    trace.steps.push(CompressionStep { operator: Operator::Shift, first: v, second: w, moved });
                    let (fixed, fix_steps) = fix_to_fixpoint_with(&next, exec)?;
                    trace.steps.extend(fix_steps);
                    current = fixed;
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
    }
    trace.final_size = current.len();
    Ok((current, trace))
}

/// True when no fixing or shifting operator moves a member.
pub fn is_compressed(family: &PermFamily) -> bool {
    let n = family.n();
    let fix_stable = (1..=n).all(|i| {
        (1..=n)
            .filter(|&j| j != i)
            .all(|j| apply_guarded(family, Exec::Sequential, |p| fix_unchecked(i, j, p)).1 == 0)
    });
    let shift_stable = (1..=n).all(|v| {
        (v + 1..=n).all(|w| apply_guarded(family, Exec::Sequential, |p| shift_unchecked(v, w, p)).1 == 0)
    });
    fix_stable && shift_stable
}

/// Minimum, over distinct pairs, of the number of shared fixed points.
/// `None` for families with fewer than two members.
pub fn min_pairwise_fixed_intersection(family: &PermFamily) -> Option<usize> {
    let fixed: Vec<_> = family.iter().map(Permutation::fixed_points).collect();
    (0..fixed.len())
        .flat_map(|a| (a + 1..fixed.len()).map(move |b| (a, b)))
        .map(|(a, b)| fixed[a].intersection_len(&fixed[b]))
        .min()
}

/// Per-family outcome of the Ω₀ audit.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Statement1Instance {
    pub size: usize,
    pub common_cycles: usize,
    pub common_fixed_points: usize,
    pub compressed_common_fixed_points: usize,
    pub compressed_nontrivial: bool,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Statement1Report {
    pub n: usize,
    pub t: usize,
    pub maximum: usize,
    /// How many maximizers were audited (`0` with a note when none is nonempty).
    pub audited: usize,
    pub instances: Vec<Statement1Instance>,
    pub note: Option<String>,
    pub pass: bool,
}

/// Checks that each maximum nontrivial family has no point fixed by all of
/// its members (membership in Ω₀).
///
/// A family passes when its own common fixed-point set is empty and, if its
/// compressed image is still nontrivial, so is the image's. `trials` caps the number
/// of maximizers audited (0 means all).
pub fn audit_statement1(n: usize, t: usize, trials: usize) -> Result<Statement1Report> {
    let maximizers = crate::oracle::enumerate_maximizers(n, t, crate::oracle::Mode::NontrivialOnly)?;
    audit_families(n, t, &maximizers.families, maximizers.maximum, trials)
}

pub(crate) fn audit_families(
    n: usize,
    t: usize,
    families: &[PermFamily],
    maximum: usize,
    trials: usize,
) -> Result<Statement1Report> {
    let take = if trials == 0 { families.len() } else { trials.min(families.len()) };
    let mut instances = Vec::with_capacity(take);
    for family in families.iter().filter(|f| !f.is_empty()).take(take) {
        let common_cycles = family_common_cycles(family)?;
        let common_fixed = family.common_fixed_points().map_or(0, |s| s.len());
        let (compressed, _) = compress_to_fixpoint(family, t)?;
        let compressed_fixed = compressed.common_fixed_points().map_or(0, |s| s.len());
        let compressed_nontrivial = is_nontrivial(&compressed, t)?;
        // Statement 1 only speaks about the image if it is still nontrivial.
        let pass = common_fixed == 0 && (!compressed_nontrivial || compressed_fixed == 0);
        instances.push(Statement1Instance {
            size: family.len(),
            common_cycles,
            common_fixed_points: common_fixed,
            compressed_common_fixed_points: compressed_fixed,
            compressed_nontrivial,
            pass,
        });
    }
    let note = instances.is_empty().then(|| format!("no nonempty nontrivial family exists for n={n}, t={t}"));
    Ok(Statement1Report {
        n,
        t,
        maximum,
        audited: instances.len(),
        pass: instances.iter().all(|i| i.pass),
        instances,
        note,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::enumerate_sn;

    fn perm(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    fn family(n: usize, perms: &[&str]) -> PermFamily {
        PermFamily::from_perms(n, perms.iter().map(|s| perm(s))).unwrap()
    }

    #[test]
    fn fix_perm_examples() {
        assert_eq!(fix_perm(1, 2, &perm("(1 2 3)")).unwrap(), perm("(1)(2 3)"));
        assert_eq!(fix_perm(1, 3, &perm("(1 2 3)")).unwrap(), perm("(1 2 3)"));
        assert_eq!(fix_perm(2, 3, &perm("(1)(2 3)")).unwrap(), Permutation::identity(3));
        // Remaining cycle keeps its order: (1 4 2 5 3) minus 2 is (1 4 5 3).
        assert_eq!(fix_perm(2, 5, &perm("(1 4 2 5 3)")).unwrap(), perm("(1 4 5 3)(2)"));
        assert!(matches!(fix_perm(2, 2, &perm("(1 2 3)")), Err(Error::InvalidArgument(_))));
        assert!(fix_perm(1, 4, &perm("(1 2 3)")).is_err());
    }

    #[test]
    fn fix_family_examples() {
        let single = family(3, &["(1 2 3)"]);
        assert_eq!(fix_family(1, 2, &single).unwrap(), family(3, &["(1)(2 3)"]));
        let collide = family(2, &["(1 2)", "(1)(2)"]);
        assert_eq!(fix_family(1, 2, &collide).unwrap(), collide);
        let closed = family(3, &["(1)(2)(3)", "(1)(2 3)"]);
        assert_eq!(fix_family(2, 3, &closed).unwrap(), closed);
        assert!(fix_family(1, 1, &closed).is_err());
    }

    #[test]
    fn shift_perm_examples() {
        assert_eq!(shift_perm(1, 3, &perm("(1 2)(3)")).unwrap(), perm("(1)(2 3)"));
        assert_eq!(shift_perm(1, 2, &Permutation::identity(3)).unwrap(), Permutation::identity(3));
        assert_eq!(shift_perm(1, 2, &perm("(1 3)(2)")).unwrap(), perm("(1)(2 3)"));
        assert_eq!(shift_perm(1, 3, &perm("(1 2 3)")).unwrap(), perm("(1 2 3)"));
        assert!(matches!(shift_perm(3, 1, &perm("(1 2 3)")), Err(Error::InvalidArgument(_))));
        assert!(shift_perm(2, 2, &perm("(1 2 3)")).is_err());
    }

    #[test]
    fn shift_family_examples() {
        let single = family(3, &["(1 2)(3)"]);
        assert_eq!(shift_family(1, 3, &single).unwrap(), family(3, &["(1)(2 3)"]));
        let stable = family(3, &["(1)(2 3)", "(1)(2)(3)"]);
        assert_eq!(shift_family(1, 2, &stable).unwrap(), stable);
        let guarded = family(3, &["(1 2)(3)", "(1)(2 3)"]);
        assert_eq!(shift_family(1, 3, &guarded).unwrap(), guarded);
    }

    #[test]
    fn star_compresses_to_the_star_of_one() {
        let star4 = PermFamily::from_perms(4, enumerate_sn(4).unwrap().filter(|p| p.is_fixed(4))).unwrap();
        let (out, trace) = compress_to_fixpoint(&star4, 1).unwrap();
        let star1 = PermFamily::from_perms(4, enumerate_sn(4).unwrap().filter(|p| p.is_fixed(1))).unwrap();
        assert_eq!(out, star1);
        assert_eq!((trace.initial_size, trace.final_size), (6, 6));
        assert!(is_compressed(&out));
        assert_eq!(out.common_fixed_points().unwrap().to_string(), "1");
    }

    #[test]
    fn identity_is_already_compressed() {
        let id = PermFamily::from_perms(3, [Permutation::identity(3)]).unwrap();
        let (out, trace) = compress_to_fixpoint(&id, 3).unwrap();
        assert_eq!(out, id);
        assert!(trace.steps.is_empty());
        assert_eq!(trace.sweeps, 1);
    }

    #[test]
    fn rejects_non_intersecting_input() {
        let s3 = PermFamily::from_perms(3, enumerate_sn(3).unwrap()).unwrap();
        assert!(matches!(compress_to_fixpoint(&s3, 1), Err(Error::Precondition(_))));
    }

    #[test]
    fn compressed_family_meets_in_fixed_points() {
        // Families sharing a transposition: the fixing stage splits it.
        let fam = family(5, &["(1 2)(3)(4)(5)", "(1 2)(3 4)(5)", "(1 2)(3 4 5)"]);
        assert!(is_t_intersecting_family(&fam, 1));
        let (out, _) = compress_to_fixpoint(&fam, 1).unwrap();
        assert_eq!(out.len(), 3);
        assert!(min_pairwise_fixed_intersection(&out).unwrap() >= 1);
        let (again, trace) = compress_to_fixpoint(&out, 1).unwrap();
        assert_eq!(again, out);
        assert!(trace.steps.is_empty());
    }
}
