//! Exact evaluation of the counting formulas: factorials, derangements,
//! the upset-to-permutation bridge, the frontier test and its ratio, the
//! frontier sums, the generated-family counts and the regime split for the
//! nontrivial maximum.
//!
//! Everything is big-integer or exact-rational arithmetic; nothing here
//! touches floating point.

use std::cmp::Ordering;
use std::fmt;
use std::sync::{OnceLock, RwLock};

use num_bigint::{BigInt, BigUint};
use num_rational::Ratio;
use num_traits::{ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::sets::{h_family, SetFamily, SubsetMask};

/// Arbitrary-precision nonnegative count. Serializes as a decimal string.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BigCount(BigUint);

impl BigCount {
    pub fn zero() -> Self {
        BigCount(BigUint::zero())
    }

    pub fn as_biguint(&self) -> &BigUint {
        &self.0
    }

    pub fn into_biguint(self) -> BigUint {
        self.0
    }

    pub fn to_u64(&self) -> Option<u64> {
        self.0.to_u64()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
}

impl From<BigUint> for BigCount {
    fn from(v: BigUint) -> Self {
        BigCount(v)
    }
}

impl From<u64> for BigCount {
    fn from(v: u64) -> Self {
        BigCount(BigUint::from(v))
    }
}

impl PartialEq<u64> for BigCount {
    fn eq(&self, other: &u64) -> bool {
        self.0 == BigUint::from(*other)
    }
}

impl fmt::Display for BigCount {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl Serialize for BigCount {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.0.to_str_radix(10))
    }
}

/// Exact nonnegative rational kept in lowest terms.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct ExactRatio(Ratio<BigUint>);

impl ExactRatio {
    pub fn new(numerator: BigUint, denominator: BigUint) -> Result<Self> {
        if denominator.is_zero() {
            return Err(Error::Domain("ratio with zero denominator".into()));
        }
        Ok(ExactRatio(Ratio::new(numerator, denominator)))
    }

    pub fn numerator(&self) -> &BigUint {
        self.0.numer()
    }

    pub fn denominator(&self) -> &BigUint {
        self.0.denom()
    }

    pub fn cmp_integer(&self, k: u64) -> Ordering {
        self.0.numer().cmp(&(self.0.denom() * BigUint::from(k)))
    }

    pub fn scaled(&self, numerator: u64, denominator: u64) -> Result<Self> {
        ExactRatio::new(
            self.0.numer() * BigUint::from(numerator),
            self.0.denom() * BigUint::from(denominator),
        )
    }
}

impl fmt::Display for ExactRatio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.0.numer(), self.0.denom())
    }
}

impl Serialize for ExactRatio {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

// Memo tables grow on demand under a write lock; readers never see a torn vector.
fn memo(table: &'static OnceLock<RwLock<Vec<BigUint>>>, m: usize, next: fn(&[BigUint]) -> BigUint) -> BigUint {
    let lock = table.get_or_init(|| RwLock::new(Vec::new()));
    if let Some(v) = lock.read().expect("memo lock").get(m) {
        return v.clone();
    }
    let mut values = lock.write().expect("memo lock");
    while values.len() <= m {
        let v = next(&values);
        values.push(v);
    }
    values[m].clone()
}

static FACTORIALS: OnceLock<RwLock<Vec<BigUint>>> = OnceLock::new();
static DERANGEMENTS: OnceLock<RwLock<Vec<BigUint>>> = OnceLock::new();

pub(crate) fn factorial_big(m: usize) -> BigUint {
    memo(&FACTORIALS, m, |prev| match prev.last() {
        None => BigUint::from(1u8),
        Some(last) => last * BigUint::from(prev.len()),
    })
}

/// Number of fixed-point-free permutations of `[m]`, via `D(m) = m D(m-1) + (-1)^m`.
pub(crate) fn derangements_big(m: usize) -> BigUint {
    memo(&DERANGEMENTS, m, |prev| {
        let k = prev.len();
        match prev.last() {
            None => BigUint::from(1u8),
            Some(last) => {
                let scaled = last * BigUint::from(k);
                if k % 2 == 0 {
                    scaled + 1u8
                } else {
                    scaled - 1u8
                }
            }
        }
    })
}

pub(crate) fn binomial_big(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    factorial_big(n) / (factorial_big(k) * factorial_big(n - k))
}

pub fn factorial(m: usize) -> BigCount {
    BigCount(factorial_big(m))
}

pub fn binomial(n: usize, k: usize) -> BigCount {
    BigCount(binomial_big(n, k))
}

/// Derangement count of `[m]`. Negative arguments are a caller bug and
/// return a domain error rather than zero.
pub fn f(m: i64) -> Result<BigCount> {
    if m < 0 {
        return Err(Error::Domain(format!("derangement count requested at negative argument {m}")));
    }
    Ok(BigCount(derangements_big(m as usize)))
}

fn d(m: i64) -> Result<BigUint> {
    f(m).map(BigCount::into_biguint)
}

/// `Σ_j C(m, j) · D(base − j)` for `j = 0..=m`: the number of permutations of
/// a `base`-set in which a fixed `(base − m)`-subset has no fixed point.
fn binomial_derangement_sum(m: usize, base: i64) -> Result<BigUint> {
    let mut total = BigUint::zero();
    for j in 0..=m {
        total += binomial_big(m, j) * d(base - j as i64)?;
    }
    Ok(total)
}

/// Number of permutations of `[n]` whose fixed-point set lies in the upset
/// of `generators`, i.e. `Σ_{S ∈ U(g)} D(n − |S|)`.
///
/// The sum runs over count vectors of the generators' twin classes rather
/// than over `2^n` subsets, so `n` up to 64 is cheap for symmetric families.
pub fn perms_from_generators(generators: &SetFamily, n: usize) -> Result<BigCount> {
    if let Some(bad) = generators.iter().find(|g| g.max_element() > n) {
        return Err(Error::Domain(format!("generator {{{bad}}} lies outside [{n}]")));
    }
    if generators.is_empty() {
        return Ok(BigCount::zero());
    }
    let family = SetFamily::from_masks(n, generators.iter().map(|g| SubsetMask::from_bits(n, g.bits())).collect::<Result<Vec<_>>>()?)?;
    let classes = family.twin_classes();
    let mut counts = vec![0usize; classes.len()];
    let mut total = BigUint::zero();
    loop {
        let mut rep = SubsetMask::empty(n);
        for (class, &c) in classes.iter().zip(&counts) {
            for &x in &class[..c] {
                rep.insert(x);
            }
        }
        if family.generates(&rep) {
            let mut weight = derangements_big(n - rep.len());
            for (class, &c) in classes.iter().zip(&counts) {
                weight *= binomial_big(class.len(), c);
            }
            total += weight;
        }
        // Mixed-radix increment over 0..=|class|.
        let mut k = 0;
        loop {
            if k == counts.len() {
                return Ok(BigCount(total));
            }
            if counts[k] < classes[k].len() {
                counts[k] += 1;
                break;
            }
            counts[k] = 0;
            k += 1;
        }
    }
}

fn check_frontier_args(ell: usize, n: usize, t: usize) -> Result<()> {
    if t == 0 || ell < t || ell > n {
        return Err(Error::Domain(format!("need 1 <= t <= ell <= n, got t={t}, ell={ell}, n={n}")));
    }
    if !(ell - t).is_multiple_of(2) {
        return Err(Error::Domain(format!("ell={ell} and t={t} differ in parity")));
    }
    Ok(())
}

/// Numerator and denominator sums of the frontier ratio at `ell`.
fn gamma_parts(ell: usize, n: usize, t: usize) -> Result<(BigUint, BigUint)> {
    check_frontier_args(ell, n, t)?;
    let half = ((ell + t) / 2) as i64;
    let n = n as i64;
    let gap = (n - ell as i64) as usize;
    let numerator = binomial_derangement_sum(gap + 1, n - half + 1)?;
    let denominator = binomial_derangement_sum(gap, n - half)?;
    Ok((numerator, denominator))
}

/// The exact frontier ratio `γ(ℓ)`. Fails with a domain error on the single
/// degenerate point `n = ℓ = t + 2`, where the denominator is `D(1) = 0`.
pub fn gamma(ell: usize, n: usize, t: usize) -> Result<ExactRatio> {
    let (numerator, denominator) = gamma_parts(ell, n, t)?;
    if denominator.is_zero() {
        return Err(Error::Domain(format!("gamma denominator vanishes at n={n}, t={t}, ell={ell}")));
    }
    ExactRatio::new(numerator, denominator)
}

/// Whether `(ℓ − t) / (2(ℓ − 1)) · γ(ℓ) <= 1`, decided by cross-multiplication
/// so that a vanishing denominator (an unbounded ratio) fails the test.
pub fn frontier_condition(ell: usize, n: usize, t: usize) -> Result<bool> {
    let (numerator, denominator) = gamma_parts(ell, n, t)?;
    let lhs = numerator * BigUint::from(ell - t);
    let rhs = denominator * BigUint::from(2 * (ell - 1));
    Ok(lhs <= rhs)
}

/// Largest `ℓ = t + 2r <= n` passing [`frontier_condition`]; at least `t`.
pub fn ell_star(n: usize, t: usize) -> Result<usize> {
    if t == 0 || t > n {
        return Err(Error::OutOfRange(format!("need 1 <= t <= n, got t={t}, n={n}")));
    }
    let mut best = t;
    for ell in (t..=n).step_by(2) {
        if frontier_condition(ell, n, t)? {
            best = ell;
        }
    }
    Ok(best)
}

/// The frontier double sum for parameter `r`:
/// permutations of `[n]` fixing at least `t + r` points of `[t + 2r]`.
pub fn m_theorem1(n: usize, t: usize, r: usize) -> Result<BigCount> {
    let ell = t + 2 * r;
    if t == 0 || ell > n {
        return Err(Error::Domain(format!("need t >= 1 and t + 2r <= n, got n={n}, t={t}, r={r}")));
    }
    let mut total = BigUint::zero();
    for i in t + r..=ell {
        total += binomial_big(ell, i) * binomial_derangement_sum(n - ell, (n - i) as i64)?;
    }
    Ok(BigCount(total))
}

/// Maximum frontier sum over the `r` whose `ℓ = t + 2r` passes the frontier
/// test, with the smallest maximizing `r`.
pub fn m_max(n: usize, t: usize) -> Result<(BigCount, usize)> {
    if t == 0 || t > n {
        return Err(Error::OutOfRange(format!("need 1 <= t <= n, got t={t}, n={n}")));
    }
    let mut best: Option<(BigCount, usize)> = None;
    for r in 0..=(n - t) / 2 {
        if !frontier_condition(t + 2 * r, n, t)? {
            continue;
        }
        let value = m_theorem1(n, t, r)?;
        if best.as_ref().is_none_or(|(b, _)| value > *b) {
            best = Some((value, r));
        }
    }
    Ok(best.expect("r = 0 always passes"))
}

/// Permutations of `[n]` generated by `H_i`, for `2 <= i <= n − t`.
pub fn nu(n: usize, t: usize, i: usize) -> Result<BigCount> {
    if t == 0 || i < 2 || t + i > n {
        return Err(Error::Domain(format!("nu needs t >= 1 and 2 <= i <= n - t, got n={n}, t={t}, i={i}")));
    }
    perms_from_generators(&h_family(t, i)?, n)
}

fn check_s_args(n: usize, t: usize, i: usize) -> Result<()> {
    if t == 0 || i < 2 || t + i > n {
        return Err(Error::Domain(format!("S_i needs t >= 1 and 2 <= i <= n - t, got n={n}, t={t}, i={i}")));
    }
    Ok(())
}

/// The closed form for `S_i` exactly as it is usually printed:
/// `(n−i)! − Σ_j C(n−t−i, j) D(n−t−j) + t Σ_j D(n−t−i−j+1)`.
/// It disagrees with [`nu`]; kept so the discrepancy can be reported.
pub fn s_printed(n: usize, t: usize, i: usize) -> Result<BigInt> {
    check_s_args(n, t, i)?;
    let m = n - t - i;
    let mut plain = BigUint::zero();
    for j in 0..=m {
        plain += d((n - t - i - j + 1) as i64)?;
    }
    let first = BigInt::from(factorial_big(n - i));
    let second = BigInt::from(binomial_derangement_sum(m, (n - t) as i64)?);
    Ok(first - second + BigInt::from(plain * BigUint::from(t)))
}

/// `S_i = |U(H_i)|` counted in permutations, by inclusion–exclusion:
///
/// * fix `[t]` and at least one point of `[t+1, t+i]`:
///   `(n−t)! − Σ_j C(n−t−i, j) D(n−t−j)`;
/// * fix `[t+1, t+i]` and all of `[t]` except one point `m`, which moves:
///   `t · Σ_j C(n−t−i, j) D(n−t−i+1−j)`.
///
/// The two blocks are disjoint, and this agrees with [`nu`] everywhere
/// (the printed form drops the binomial weight in the last sum and
/// writes `(n−i)!` for `(n−t)!`).
pub fn s_closed(n: usize, t: usize, i: usize) -> Result<BigCount> {
    check_s_args(n, t, i)?;
    let m = n - t - i;
    let star = factorial_big(n - t);
    let avoid = binomial_derangement_sum(m, (n - t) as i64)?;
    let swapped = binomial_derangement_sum(m, (n - t - i + 1) as i64)? * BigUint::from(t);
    Ok(BigCount(star - avoid + swapped))
}

/// `(n−t)! − D(n−t) − D(n−t−1) + t`, the large-`n` value of the nontrivial
/// maximum. Equals `S_{n−t−1}`.
pub fn asymptotic_value(n: usize, t: usize) -> Result<BigCount> {
    if t == 0 || n < t + 1 {
        return Err(Error::Domain(format!("asymptotic value needs n >= t + 1, got n={n}, t={t}")));
    }
    let value = factorial_big(n - t) + BigUint::from(t) - d((n - t) as i64)? - d((n - t - 1) as i64)?;
    Ok(BigCount(value))
}

/// Exact check of `Σ_j C(n−ℓ, j) D(n−h+1−j) / Σ_j C(n−ℓ, j) D(n−h−j) >=
/// 1 + (ℓ−t)/2 + (n−ℓ)(ℓ−t)/(ℓ−t+2)` with `h = (ℓ+t)/2`.
/// A vanishing denominator with a positive numerator counts as satisfied.
pub fn ratio_lower_bound_check(n: usize, t: usize, ell: usize) -> Result<bool> {
    check_frontier_args(ell, n, t)?;
    let half = ((ell + t) / 2) as i64;
    let gap = n - ell;
    let q = ell - t;
    let numerator = binomial_derangement_sum(gap, n as i64 - half + 1)?;
    let denominator = binomial_derangement_sum(gap, n as i64 - half)?;
    // bound = [2(q+2) + q(q+2) + 2 gap q] / [2(q+2)]
    let bound_den = BigUint::from(2 * (q + 2));
    let bound_num = BigUint::from(2 * (q + 2) + q * (q + 2) + 2 * gap * q);
    Ok(numerator * bound_den >= denominator * bound_num)
}

/// Which case of the main theorem governs `(n, t)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Regime {
    /// Some frontier `ℓ > t` passes the test; the nontrivial maximum equals `M(n, t)`.
    #[serde(rename = "theorem1-regime")]
    Theorem1,
    /// Only `ℓ = t` passes; the maximum comes from the `H_i` families.
    #[serde(rename = "nu-regime")]
    Nu,
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Regime::Theorem1 => "theorem1-regime",
            Regime::Nu => "nu-regime",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NuValue {
    pub i: usize,
    pub value: BigCount,
}

/// Everything computed on the way to the nontrivial maximum for `(n, t)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExtremalReport {
    pub n: usize,
    pub t: usize,
    pub ell_star: usize,
    pub r_star: usize,
    pub m_value: BigCount,
    pub regime: Regime,
    /// `ν_i` for every `2 <= i <= n − t − 1`.
    pub nu_values: Vec<NuValue>,
    /// Max of `ν_i` over `i ∈ {2, n−t−1}` (the convention used for `m_tilde`).
    pub nu_endpoints: BigCount,
    /// Max of the counts generated by `H_1` and `H_2` (the alternative reading).
    pub nu_h1_h2: BigCount,
    /// 1 when `t >= 2`: a lone permutation with fewer than `t` cycles is a
    /// (vacuously intersecting) nontrivial family; 0 when `t = 1`.
    pub single_member_floor: BigCount,
    pub m_tilde: BigCount,
}

/// The nontrivial maximum `M̃(n, t)` and the data behind it, for `n >= t + 2`.
pub fn m_tilde(n: usize, t: usize) -> Result<ExtremalReport> {
    if t == 0 || n < t + 2 {
        return Err(Error::Domain(format!("m_tilde needs t >= 1 and n >= t + 2, got n={n}, t={t}")));
    }
    let ell = ell_star(n, t)?;
    let (m_value, r_star) = m_max(n, t)?;
    let regime = if ell > t { Regime::Theorem1 } else { Regime::Nu };

    // H_{n-t} generates a trivial family, so candidates stop at n - t - 1.
    let nu_values = (2..n - t)
        .map(|i| nu(n, t, i).map(|value| NuValue { i, value }))
        .collect::<Result<Vec<_>>>()?;
    let nu_endpoints = nu_values
        .iter()
        .filter(|v| v.i == 2 || v.i == n - t - 1)
        .map(|v| v.value.clone())
        .max()
        .unwrap_or_default();
    let h1 = perms_from_generators(&h_family(t, 1)?, n)?;
    let h2 = perms_from_generators(&h_family(t, 2)?, n)?;
    let nu_h1_h2 = h1.max(h2);
    let single_member_floor = BigCount::from(u64::from(t >= 2));

    let value = match regime {
        Regime::Theorem1 => m_value.clone(),
        Regime::Nu => nu_endpoints.clone().max(single_member_floor.clone()),
    };
    Ok(ExtremalReport {
        n,
        t,
        ell_star: ell,
        r_star,
        m_value,
        regime,
        nu_values,
        nu_endpoints,
        nu_h1_h2,
        single_member_floor,
        m_tilde: value,
    })
}

/// One grid point where a closed form for `S_i` was compared with `ν_i`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SClosedMismatch {
    pub n: usize,
    pub t: usize,
    pub i: usize,
    pub closed_form: String,
    pub nu: BigCount,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SClosedValidation {
    pub points: usize,
    pub printed_mismatches: Vec<SClosedMismatch>,
    pub corrected_mismatches: Vec<SClosedMismatch>,
}

/// Compares the printed and corrected closed forms for `S_i` with [`nu`]
/// over `t <= max_t`, `n <= max_n`, `2 <= i <= n − t`.
pub fn validate_s_closed(max_t: usize, max_n: usize) -> Result<SClosedValidation> {
    let mut report = SClosedValidation { points: 0, printed_mismatches: Vec::new(), corrected_mismatches: Vec::new() };
    for t in 1..=max_t {
        for n in t + 2..=max_n {
            for i in 2..=n - t {
                report.points += 1;
                let reference = nu(n, t, i)?;
                let printed = s_printed(n, t, i)?;
                if printed != BigInt::from(reference.as_biguint().clone()) {
                    report.printed_mismatches.push(SClosedMismatch { n, t, i, closed_form: printed.to_string(), nu: reference.clone() });
                }
                let corrected = s_closed(n, t, i)?;
                if corrected != reference {
                    report.corrected_mismatches.push(SClosedMismatch { n, t, i, closed_form: corrected.to_string(), nu: reference });
                }
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: u64) -> BigCount {
        BigCount::from(v)
    }

    #[test]
    fn factorial_values() {
        assert_eq!(factorial(0), 1);
        assert_eq!(factorial(5), 120);
        assert_eq!(factorial(10), 3_628_800);
        assert_eq!(factorial(25).to_string(), "15511210043330985984000000");
    }

    #[test]
    fn derangement_values() {
        assert_eq!(f(0).unwrap(), 1);
        assert_eq!(f(1).unwrap(), 0);
        assert_eq!(f(4).unwrap(), 9);
        assert_eq!(f(6).unwrap(), 265);
        assert!(matches!(f(-1), Err(Error::Domain(_))));
    }

    #[test]
    fn derangement_recurrence_and_partition_identity() {
        for m in 1..=40i64 {
            let lhs = BigInt::from(f(m).unwrap().into_biguint());
            let rhs = BigInt::from(m) * BigInt::from(f(m - 1).unwrap().into_biguint())
                + if m % 2 == 0 { 1 } else { -1 };
            assert_eq!(lhs, rhs, "m={m}");
        }
        for m in 0..=20usize {
            let sum: BigUint = (0..=m).map(|j| binomial_big(m, j) * derangements_big(m - j)).sum();
            assert_eq!(sum, factorial_big(m), "m={m}");
        }
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(6, 2), 15);
        assert_eq!(binomial(3, 5), 0);
        assert_eq!(binomial(40, 20).to_string(), "137846528820");
    }

    #[test]
    fn generated_counts_examples() {
        let empty_set = SetFamily::from_lists(4, &[&[]]).unwrap();
        assert_eq!(perms_from_generators(&empty_set, 4).unwrap(), 24);
        let fix_one = SetFamily::from_lists(4, &[&[1]]).unwrap();
        assert_eq!(perms_from_generators(&fix_one, 4).unwrap(), 6);
        assert_eq!(perms_from_generators(&SetFamily::new(4), 4).unwrap(), 0);
        // Fix at least two of {1, 2, 3} in [4]: 3·2! − 3·1 + 1.
        assert_eq!(perms_from_generators(&h_family(1, 2).unwrap(), 4).unwrap(), 4);
        let outside = SetFamily::from_lists(6, &[&[6]]).unwrap();
        assert!(matches!(perms_from_generators(&outside, 5), Err(Error::Domain(_))));
    }

    #[test]
    fn gamma_examples() {
        // ell = n: numerator D((n−t)/2 + 1) + D((n−t)/2), denominator D((n−t)/2).
        let g = gamma(7, 7, 1).unwrap();
        assert_eq!(g, ExactRatio::new(BigUint::from(9u8 + 2), BigUint::from(2u8)).unwrap());
        // n = 8, t = 2, ell = 4: numerator Σ_{i<=5} C(5,i) D(6−i) = 5!-... = 76 + ... computed exactly.
        let g = gamma(4, 8, 2).unwrap();
        let num: BigUint = (0..=5).map(|i| binomial_big(5, i) * derangements_big(6 - i)).sum();
        let den: BigUint = (0..=4).map(|i| binomial_big(4, i) * derangements_big(5 - i)).sum();
        assert_eq!(g, ExactRatio::new(num, den).unwrap());
        assert!(matches!(gamma(3, 8, 2), Err(Error::Domain(_))));
        assert!(matches!(gamma(9, 8, 1), Err(Error::Domain(_))));
        assert!(matches!(gamma(4, 4, 2), Err(Error::Domain(_))));
    }

    #[test]
    fn ell_star_examples() {
        for t in 1..=4 {
            assert_eq!(ell_star(t, t).unwrap(), t);
            for n in t..=12 {
                assert!(frontier_condition(t, n, t).unwrap());
            }
        }
        for n in 20..=40 {
            assert_eq!(ell_star(n, 2).unwrap(), 2, "n={n}");
        }
        // The frontier test is not monotone in ell.
        assert_eq!(ell_star(7, 3).unwrap(), 7);
        assert!(!frontier_condition(5, 7, 3).unwrap());
        assert!(ell_star(3, 4).is_err());
    }

    #[test]
    fn frontier_sums() {
        for t in 1..=4 {
            for n in t..=12 {
                assert_eq!(m_theorem1(n, t, 0).unwrap(), factorial(n - t));
            }
        }
        for n in 2..=10 {
            assert_eq!(m_max(n, 1).unwrap(), (factorial(n - 1), 0));
        }
        assert_eq!(m_max(3, 3).unwrap(), (big(1), 0));
        assert_eq!(m_max(4, 1).unwrap().0, 6);
        assert!(m_theorem1(4, 1, 2).is_err());
    }

    #[test]
    fn s_closed_matches_nu_and_printed_form_does_not() {
        let report = validate_s_closed(3, 9).unwrap();
        assert!(report.corrected_mismatches.is_empty());
        assert!(!report.printed_mismatches.is_empty());
        assert_eq!(s_closed(6, 1, 2).unwrap(), 60);
        assert_eq!(s_closed(6, 1, 4).unwrap(), 68);
        for t in 1..=3 {
            for n in t + 3..=30 {
                assert_eq!(s_closed(n, t, n - t - 1).unwrap(), asymptotic_value(n, t).unwrap());
            }
        }
    }

    #[test]
    fn m_tilde_regimes() {
        let r = m_tilde(6, 1).unwrap();
        assert_eq!(r.regime, Regime::Nu);
        assert_eq!(r.m_tilde, 68);
        assert_eq!(r.nu_values.iter().map(|v| v.value.to_u64().unwrap()).collect::<Vec<_>>(), vec![60, 60, 68]);
        let r = m_tilde(6, 3).unwrap();
        assert_eq!((r.regime, r.ell_star), (Regime::Theorem1, 5));
        assert_eq!(r.m_tilde, r.m_value);
        let r = m_tilde(3, 1).unwrap();
        assert!(r.nu_values.is_empty());
        assert_eq!(r.m_tilde, 0);
        assert_eq!(m_tilde(4, 2).unwrap().m_tilde, 1);
        assert!(m_tilde(3, 2).is_err());
    }

    #[test]
    fn ratio_bound_points() {
        assert!(ratio_lower_bound_check(8, 2, 2).unwrap());
        assert!(ratio_lower_bound_check(10, 1, 3).unwrap());
        // Fails at ell = n when (n − t)/2 is even.
        assert!(!ratio_lower_bound_check(3, 3, 3).unwrap());
        assert!(!ratio_lower_bound_check(5, 1, 5).unwrap());
        assert!(ratio_lower_bound_check(4, 2, 4).unwrap());
    }

    #[test]
    fn serializes_as_decimal_strings() {
        let json = serde_json::to_string(&factorial(25)).unwrap();
        assert_eq!(json, "\"15511210043330985984000000\"");
        let report = serde_json::to_value(m_tilde(5, 1).unwrap()).unwrap();
        assert_eq!(report["regime"], "nu-regime");
        assert_eq!(report["m_tilde"], "14");
    }
}
