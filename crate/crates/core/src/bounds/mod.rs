//! Exact evaluation of the saturation bound formulas.
//!
//! All integer-valued bounds are computed with big integers so that `n` and
//! `k` may be arbitrarily large. Quantities involving the real `log₂ k` are
//! decided with certified interval enclosures from [`log2`], refined until the
//! comparison at hand is settled.
//!
//! Naming: for the antichain target `A_{k+1}` the parameter `k` is one less
//! than the number of antichain elements.

pub mod log2;

use std::fmt;
use std::sync::OnceLock;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use log2::{log2_interval, Log2Interval};

pub type ExactRational = BigRational;

const MEMO_LEN: usize = 256;
const MAX_FRAC_BITS: u32 = 4096;

fn memo() -> &'static [BigUint] {
    static TABLE: OnceLock<Vec<BigUint>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut out = Vec::with_capacity(MEMO_LEN);
        let mut c = BigUint::one();
        for d in 0..MEMO_LEN as u64 {
            out.push(c.clone());
            c = next_central_binomial(&c, d);
        }
        out
    })
}

/// `C(d+1, ⌊(d+1)/2⌋)` from `C(d, ⌊d/2⌋)`.
fn next_central_binomial(c: &BigUint, d: u64) -> BigUint {
    let next = d + 1;
    if next.is_multiple_of(2) {
        c * 2u32
    } else {
        let m = next / 2;
        (c * next) / (m + 1)
    }
}

/// `C(d, ⌊d/2⌋)`.
pub fn central_binomial(d: u64) -> BigUint {
    let table = memo();
    if (d as usize) < table.len() {
        return table[d as usize].clone();
    }
    let mut c = table[table.len() - 1].clone();
    for t in (table.len() as u64 - 1)..d {
        c = next_central_binomial(&c, t);
    }
    c
}

/// Largest `d` with `C(d, ⌊d/2⌋) ≤ j − 1`; `d*(1)` is taken to be 1.
pub fn d_star(j: &BigUint) -> u64 {
    if j <= &BigUint::one() {
        return 1;
    }
    let limit = j - 1u32;
    let mut d = 0u64;
    while central_binomial(d + 1) <= limit {
        d += 1;
    }
    d
}

/// The values `j ∈ [3, k]` grouped by `d*(j)`: pairs `(d, count)`.
pub fn d_star_groups(k: &BigUint) -> Vec<(u64, BigUint)> {
    let three = BigUint::from(3u32);
    let mut out = Vec::new();
    if k < &three {
        return out;
    }
    let mut d = 2u64;
    loop {
        // d*(j) = d exactly for j ∈ [C(d)+1, C(d+1)]
        let lo = std::cmp::max(central_binomial(d) + 1u32, three.clone());
        if &lo > k {
            break;
        }
        let hi = std::cmp::min(central_binomial(d + 1), k.clone());
        if hi >= lo {
            out.push((d, hi - lo + 1u32));
        }
        d += 1;
    }
    out
}

fn check_antichain_params(k: &BigUint, n: &BigUint) -> Result<()> {
    if k < &BigUint::from(3u32) {
        return Err(Error::NotApplicable(format!("need k ≥ 3, got k = {k}")));
    }
    if n < k {
        return Err(Error::NotApplicable(format!("need n ≥ k, got n = {n} < k = {k}")));
    }
    Ok(())
}

/// `⌊log₂ k⌋ + 1`, the bit length of `k`.
fn floor_log2_plus_one(k: &BigUint) -> BigUint {
    BigUint::from(k.bits())
}

/// `k⌈n / (⌊log₂ k⌋ + 1)⌉ − k + 2`.
pub fn bound_a(k: &BigUint, n: &BigUint) -> Result<BigInt> {
    check_antichain_params(k, n)?;
    Ok(bound_a_formula(k, n))
}

/// The first bound's formula evaluated without its `n ≥ k` hypothesis.
pub fn bound_a_formula(k: &BigUint, n: &BigUint) -> BigInt {
    let q = n.div_ceil(&floor_log2_plus_one(k));
    BigInt::from(k * q) - BigInt::from(k.clone()) + 2
}

/// `2n + Σ_{j=3..k} ⌈n / d*(j)⌉ − k + 2`, summed by groups of constant `d*`.
pub fn bound_b(k: &BigUint, n: &BigUint) -> Result<BigInt> {
    check_antichain_params(k, n)?;
    let sum: BigUint = d_star_groups(k)
        .into_iter()
        .map(|(d, count)| count * n.div_ceil(&BigUint::from(d)))
        .sum();
    Ok(BigInt::from(n * 2u32 + sum) - BigInt::from(k.clone()) + 2)
}

/// Leading coefficient in `n` of the first bound: `k / (⌊log₂ k⌋ + 1)`.
pub fn slope_a(k: &BigUint) -> ExactRational {
    BigRational::new(BigInt::from(k.clone()), BigInt::from(floor_log2_plus_one(k)))
}

/// Leading coefficient in `n` of the second bound: `2 + Σ_{j=3..k} 1/d*(j)`.
pub fn slope_b(k: &BigUint) -> ExactRational {
    let two = BigRational::from_integer(BigInt::from(2));
    d_star_groups(k).into_iter().fold(two, |acc, (d, count)| {
        acc + BigRational::new(BigInt::from(count), BigInt::from(d))
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Winner {
    A,
    B,
    Tie,
}

impl fmt::Display for Winner {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Winner::A => "a",
            Winner::B => "b",
            Winner::Tie => "tie",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SlopeComparison {
    pub k: BigUint,
    pub slope_a: ExactRational,
    pub slope_b: ExactRational,
    pub winner: Winner,
}

/// Which bound grows faster in `n` for this `k` (and so is larger for all
/// sufficiently large `n`).
pub fn slope_compare(k: &BigUint) -> Result<SlopeComparison> {
    if k < &BigUint::from(3u32) {
        return Err(Error::NotApplicable(format!("need k ≥ 3, got k = {k}")));
    }
    let a = slope_a(k);
    let b = slope_b(k);
    let winner = match a.cmp(&b) {
        std::cmp::Ordering::Greater => Winner::A,
        std::cmp::Ordering::Less => Winner::B,
        std::cmp::Ordering::Equal => Winner::Tie,
    };
    Ok(SlopeComparison { k: k.clone(), slope_a: a, slope_b: b, winner })
}

/// Least `k ∈ [3, k_max]` whose first-bound slope strictly exceeds the
/// second's.
///
/// Between consecutive breakpoints (powers of two, and the values
/// `C(d, ⌊d/2⌋) + 1`) both slopes are affine in `k`, so each segment is
/// settled with one exact evaluation.
pub fn crossover(k_max: &BigUint) -> Option<BigUint> {
    let three = BigUint::from(3u32);
    if k_max < &three {
        return None;
    }
    let mut start = three;
    while &start <= k_max {
        let e = start.bits() - 1;
        let d = d_star(&start);
        let pow_end = (BigUint::one() << (e + 1)) - 1u32;
        let dstar_end = central_binomial(d + 1);
        let end = [pow_end, dstar_end, k_max.clone()].into_iter().min().unwrap();

        let diff = slope_a(&start) - slope_b(&start);
        if diff.is_positive() {
            return Some(start);
        }
        // per-step change of slope_a − slope_b inside the segment
        let step = BigRational::new(BigInt::one(), BigInt::from(e + 1))
            - BigRational::new(BigInt::one(), BigInt::from(d));
        if step.is_positive() {
            let needed: BigInt = (-diff / &step).floor().to_integer() + 1;
            let candidate: BigInt = BigInt::from(start.clone()) + needed;
            let candidate = candidate.to_biguint().expect("positive");
            if candidate <= end {
                return Some(candidate);
            }
        }
        start = end + 1u32;
    }
    None
}

/// Same as [`crossover`] by scanning every `k` with running sums.
pub fn crossover_scan(k_max: u64) -> Option<u64> {
    let mut sum_b = BigRational::from_integer(BigInt::from(2));
    for k in 3..=k_max {
        let d = d_star(&BigUint::from(k));
        sum_b += BigRational::new(BigInt::one(), BigInt::from(d));
        let a = BigRational::new(BigInt::from(k), BigInt::from(64 - k.leading_zeros()));
        if a > sum_b {
            return Some(k);
        }
    }
    None
}

fn rat_ceil_to_biguint(x: &BigRational) -> BigUint {
    x.ceil().to_integer().to_biguint().unwrap_or_default()
}

/// `(L − 1)/L²` over an interval of `L ≥ 1`; maximum at `L = 2`.
fn shape_range(iv: &Log2Interval) -> (BigRational, BigRational) {
    let g = |l: &BigRational| (l - BigRational::one()) / (l * l);
    let two = BigRational::from_integer(BigInt::from(2));
    let (glo, ghi) = (g(&iv.lo), g(&iv.hi));
    let min = std::cmp::min(glo.clone(), ghi.clone());
    let max = if iv.lo < two && two < iv.hi {
        BigRational::new(BigInt::one(), BigInt::from(4))
    } else {
        std::cmp::max(glo, ghi)
    };
    (min, max)
}

/// Certified enclosure of `(1 − 1/log₂ k) · k n / log₂ k`.
pub fn main_bound_interval(k: &BigUint, n: &BigUint, frac_bits: u32) -> (BigRational, BigRational) {
    let iv = log2_interval(k, frac_bits);
    let (gmin, gmax) = shape_range(&iv);
    let kn = BigRational::from_integer(BigInt::from(k * n));
    (&kn * gmin, kn * gmax)
}

/// `⌊(1 − 1/log₂ k) · k n / log₂ k⌋`, exact.
pub fn main_bound_floor(k: &BigUint, n: &BigUint) -> BigInt {
    let mut bits = 32;
    loop {
        let (lo, hi) = main_bound_interval(k, n, bits);
        let (flo, fhi) = (lo.floor(), hi.floor());
        if flo == fhi {
            return flo.to_integer();
        }
        assert!(bits < MAX_FRAC_BITS, "main bound floor undecided at {bits} bits");
        bits *= 2;
    }
}

/// `⌈(log₂ k)³⌉`, exact.
pub fn cube_log2_threshold(k: &BigUint) -> BigUint {
    let mut bits = 32;
    loop {
        let iv = log2_interval(k, bits);
        let lo = rat_ceil_to_biguint(&(&iv.lo * &iv.lo * &iv.lo));
        let hi = rat_ceil_to_biguint(&(&iv.hi * &iv.hi * &iv.hi));
        if lo == hi {
            return lo;
        }
        assert!(bits < MAX_FRAC_BITS, "log cube threshold undecided at {bits} bits");
        bits *= 2;
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InequalityCheck {
    pub k: BigUint,
    pub n: BigUint,
    pub threshold: BigUint,
    pub bound_a: BigInt,
    /// Enclosure of the real-valued main bound at the precision that decided
    /// the comparison.
    pub main_lo: BigRational,
    pub main_hi: BigRational,
    pub pass: bool,
}

/// Decides `bound_a(k, n) ≥ (1 − 1/log₂ k) k n / log₂ k` for
/// `n ≥ ⌈(log₂ k)³⌉`.
///
/// The comparison is between formulas, so the first bound is evaluated even
/// when `n < k` (which happens once `⌈log₂³k⌉ < k`, from `k = 984` on).
pub fn verify_inequality_a(k: &BigUint, n: &BigUint) -> Result<InequalityCheck> {
    if k < &BigUint::from(3u32) {
        return Err(Error::NotApplicable(format!("need k ≥ 3, got k = {k}")));
    }
    let threshold = cube_log2_threshold(k);
    if n < &threshold {
        return Err(Error::NotApplicable(format!("need n ≥ ⌈log₂³k⌉ = {threshold}, got n = {n}")));
    }
    let a = bound_a_formula(k, n);
    let a_rat = BigRational::from_integer(a.clone());
    let mut bits = 32;
    loop {
        let (lo, hi) = main_bound_interval(k, n, bits);
        let decided = if a_rat >= hi {
            Some(true)
        } else if a_rat < lo {
            Some(false)
        } else if lo == hi {
            Some(a_rat >= lo)
        } else {
            None
        };
        if let Some(pass) = decided {
            return Ok(InequalityCheck { k: k.clone(), n: n.clone(), threshold, bound_a: a, main_lo: lo, main_hi: hi, pass });
        }
        assert!(bits < MAX_FRAC_BITS, "inequality undecided at {bits} bits");
        bits *= 2;
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BoundKind {
    Lower,
    Upper,
    Exact,
    Approx,
}

impl BoundKind {
    pub fn as_str(self) -> &'static str {
        match self {
            BoundKind::Lower => "lower",
            BoundKind::Upper => "upper",
            BoundKind::Exact => "exact",
            BoundKind::Approx => "approx",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Applicability {
    /// The stated hypotheses hold for these parameters.
    Holds,
    /// The statement is for `n` sufficiently large, without an explicit
    /// threshold.
    Asymptotic,
    NotApplicable,
}

impl Applicability {
    pub fn as_str(self) -> &'static str {
        match self {
            Applicability::Holds => "holds",
            Applicability::Asymptotic => "asymptotic",
            Applicability::NotApplicable => "not_applicable",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum BoundValue {
    Integer(BigInt),
    Real(f64),
}

impl fmt::Display for BoundValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BoundValue::Integer(v) => write!(f, "{v}"),
            BoundValue::Real(v) => write!(f, "{v:.6}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct BoundEntry {
    pub name: String,
    pub kind: BoundKind,
    pub value: BoundValue,
    pub condition: String,
    pub applicability: Applicability,
}

impl BoundEntry {
    fn int(name: &str, kind: BoundKind, value: BigInt, condition: &str, holds: bool) -> BoundEntry {
        BoundEntry {
            name: name.to_string(),
            kind,
            value: BoundValue::Integer(value),
            condition: condition.to_string(),
            applicability: if holds { Applicability::Holds } else { Applicability::NotApplicable },
        }
    }

    fn asymptotic(mut self) -> BoundEntry {
        if self.applicability == Applicability::Holds {
            self.applicability = Applicability::Asymptotic;
        }
        self
    }

    pub fn integer(&self) -> Option<&BigInt> {
        match &self.value {
            BoundValue::Integer(v) => Some(v),
            BoundValue::Real(_) => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct BoundReport {
    pub target: String,
    pub n: BigUint,
    pub k: Option<BigUint>,
    pub entries: Vec<BoundEntry>,
}

impl BoundReport {
    pub fn get(&self, name: &str) -> Option<&BoundEntry> {
        self.entries.iter().find(|e| e.name == name)
    }

    pub fn value(&self, name: &str) -> Option<&BigInt> {
        self.get(name).and_then(|e| e.integer())
    }

    fn integers_where(&self, kinds: &[BoundKind], accept: &[Applicability]) -> impl Iterator<Item = &BigInt> {
        let kinds = kinds.to_vec();
        let accept = accept.to_vec();
        self.entries
            .iter()
            .filter(move |e| kinds.contains(&e.kind) && accept.contains(&e.applicability))
            .filter_map(|e| e.integer())
    }

    /// Largest lower bound whose hypotheses hold outright.
    pub fn best_lower(&self) -> Option<BigInt> {
        self.integers_where(&[BoundKind::Lower, BoundKind::Exact], &[Applicability::Holds]).max().cloned()
    }

    /// Smallest upper bound whose hypotheses hold outright.
    pub fn best_upper(&self) -> Option<BigInt> {
        self.integers_where(&[BoundKind::Upper, BoundKind::Exact], &[Applicability::Holds]).min().cloned()
    }

    /// Every applicable lower (or exact) value is at most every applicable
    /// upper (or exact) value.
    pub fn is_consistent(&self) -> bool {
        let accept = [Applicability::Holds, Applicability::Asymptotic];
        let lower = self.integers_where(&[BoundKind::Lower, BoundKind::Exact], &accept).max();
        let upper = self.integers_where(&[BoundKind::Upper, BoundKind::Exact], &accept).min();
        match (lower, upper) {
            (Some(l), Some(u)) => l <= u,
            _ => true,
        }
    }

    /// How far the largest exact lower bound sits above the approximate
    /// upper bound, if it does (the approximation drops an `O(1)` term).
    pub fn approx_upper_excess(&self) -> Option<f64> {
        let approx = self.entries.iter().find_map(|e| match (e.kind, &e.value) {
            (BoundKind::Approx, BoundValue::Real(v)) => Some(*v),
            _ => None,
        })?;
        let lower = self.best_lower()?.to_f64()?;
        (lower > approx).then_some(lower - approx)
    }
}

/// Every antichain bound for the target `A_{k+1}`; requires `k ≥ 3`, `n ≥ k`.
pub fn antichain_bounds(k: &BigUint, n: &BigUint) -> Result<BoundReport> {
    check_antichain_params(k, n)?;
    let mut entries = vec![
        BoundEntry::int("bound_a", BoundKind::Lower, bound_a(k, n)?, "k ≥ 3, n ≥ k", true),
        BoundEntry::int("bound_b", BoundKind::Lower, bound_b(k, n)?, "k ≥ 3, n ≥ k", true),
        BoundEntry::int(
            "three_n_lower",
            BoundKind::Lower,
            BigInt::from(n * 3u32) - 1,
            "n > k ≥ 3",
            n > k,
        ),
    ];
    let threshold = cube_log2_threshold(k);
    entries.push(BoundEntry::int(
        "main_bound",
        BoundKind::Lower,
        main_bound_floor(k, n),
        &format!("n ≥ ⌈log₂³k⌉ = {threshold}"),
        n >= &threshold,
    ));
    let kf = k.to_f64().unwrap_or(f64::INFINITY);
    let nf = n.to_f64().unwrap_or(f64::INFINITY);
    let lk = kf.log2();
    entries.push(BoundEntry {
        name: "antichain_upper_approx".into(),
        kind: BoundKind::Approx,
        value: BoundValue::Real((nf - 1.0) * kf - (0.5 * lk + 0.5 * lk.log2())),
        condition: "n > k ≥ 3; O(1) term dropped".into(),
        applicability: if n > k { Applicability::Asymptotic } else { Applicability::NotApplicable },
    });
    Ok(BoundReport {
        target: format!("antichain:{}", k + 1u32),
        n: n.clone(),
        k: Some(k.clone()),
        entries,
    })
}

fn ceil_log2(n: &BigUint) -> BigInt {
    if n <= &BigUint::one() {
        BigInt::zero()
    } else {
        BigInt::from((n - 1u32).bits())
    }
}

fn ceil_sqrt(n: &BigUint) -> BigUint {
    let r = n.sqrt();
    if &r * &r == *n { r } else { r + 1u32 }
}

fn ceil_nth_root(x: &BigUint, root: u32) -> BigUint {
    let r = x.nth_root(root);
    if r.pow(root) == *x { r } else { r + 1u32 }
}

/// `⌈2^{k/2 − 1}⌉`.
pub fn chain_lower(k: u64) -> BigUint {
    if k < 2 {
        return BigUint::one();
    }
    ceil_sqrt(&(BigUint::one() << (k - 2)))
}

/// `2^{k − 1}`.
pub fn chain_power_upper(k: u64) -> BigUint {
    BigUint::one() << (k.max(1) - 1)
}

/// `⌈2^{(1 − ε) k}⌉` with `ε = 1 − log₂15 / 4`, i.e. `⌈15^{k/4}⌉`.
pub fn chain_root_upper(k: u64) -> BigUint {
    let k = u32::try_from(k).expect("chain length too large for the root formula");
    ceil_nth_root(&BigUint::from(15u32).pow(k), 4)
}

/// `ε = 1 − log₂15 / 4` as a float, for display.
pub fn chain_root_epsilon() -> f64 {
    1.0 - 15f64.log2() / 4.0
}

enum Target {
    V2,
    Diamond,
    Butterfly,
    Chain(BigUint),
    Antichain(BigUint),
}

fn parse_target(descriptor: &str) -> Result<Target> {
    let bad = || Error::UnknownPoset(descriptor.to_string());
    let size = |arg: &str| -> Result<BigUint> {
        let m: BigUint = arg.parse().map_err(|_| bad())?;
        if m < BigUint::from(2u32) {
            return Err(Error::NotApplicable(format!("{descriptor}: need at least 2 elements")));
        }
        Ok(m - 1u32)
    };
    match descriptor.trim().split_once(':') {
        None => match descriptor.trim() {
            "v2" => Ok(Target::V2),
            "diamond" => Ok(Target::Diamond),
            "butterfly" => Ok(Target::Butterfly),
            _ => Err(bad()),
        },
        Some(("chain", arg)) => Ok(Target::Chain(size(arg)?)),
        Some(("antichain", arg)) => Ok(Target::Antichain(size(arg)?)),
        Some(_) => Err(bad()),
    }
}

/// Known bounds on the saturation number of a named target in `B_n`.
///
/// `chain:m` and `antichain:m` denote the targets with `m` elements, so the
/// formulas see `k = m − 1`.
pub fn reference_bounds(descriptor: &str, n: &BigUint) -> Result<BoundReport> {
    let target = parse_target(descriptor)?;
    let ni = BigInt::from(n.clone());
    let ge = |t: u32| n >= &BigUint::from(t);
    let mut k_out = None;
    let mut entries = Vec::new();
    match target {
        Target::V2 => {
            entries.push(BoundEntry::int("v2_exact", BoundKind::Exact, &ni + 1, "n ≥ 2", ge(2)));
        }
        Target::Butterfly => {
            let pairs = BigInt::from(n * (n.max(&BigUint::one()) - 1u32) / 2u32);
            entries.push(BoundEntry::int("log_lower", BoundKind::Lower, ceil_log2(n), "n ≥ 3", ge(3)));
            entries.push(BoundEntry::int(
                "butterfly_upper",
                BoundKind::Upper,
                pairs + &ni * 2 - 1,
                "n ≥ 3",
                ge(3),
            ));
        }
        Target::Diamond => {
            let log_lower = ceil_log2(n);
            let sqrt_lower = BigInt::from(ceil_sqrt(n));
            let combined = if ge(2) { std::cmp::max(&log_lower, &sqrt_lower).clone() } else { sqrt_lower.clone() };
            entries.push(BoundEntry::int("log_lower", BoundKind::Lower, log_lower, "n ≥ 2", ge(2)));
            entries.push(BoundEntry::int("diamond_sqrt_lower", BoundKind::Lower, sqrt_lower, "n ≥ 1", ge(1)));
            entries.push(BoundEntry::int("diamond_lower", BoundKind::Lower, combined, "n ≥ 1", ge(1)));
            entries.push(BoundEntry::int("diamond_upper", BoundKind::Upper, &ni + 1, "n ≥ 2", ge(2)));
        }
        Target::Chain(k) => {
            let ku = k.to_u64().ok_or_else(|| Error::NotApplicable("chain length too large".into()))?;
            let gl = chain_lower(ku);
            let gu = chain_power_upper(ku);
            let root = chain_root_upper(ku);
            let best = std::cmp::min(gu.clone(), root.clone());
            let cond = "n sufficiently large (weak saturation; coincides with induced for chains)";
            entries.push(BoundEntry::int("chain_lower", BoundKind::Lower, gl.into(), cond, true).asymptotic());
            entries.push(BoundEntry::int("chain_power_upper", BoundKind::Upper, gu.into(), cond, true).asymptotic());
            entries.push(BoundEntry::int("chain_root_upper", BoundKind::Upper, root.into(), cond, true).asymptotic());
            entries.push(BoundEntry::int("chain_upper", BoundKind::Upper, best.into(), cond, true).asymptotic());
            k_out = Some(k);
        }
        Target::Antichain(k) => {
            let one = BigUint::one();
            let two = BigUint::from(2u32);
            if k == one {
                entries.push(BoundEntry::int("antichain2_exact", BoundKind::Exact, &ni + 1, "n ≥ 1", ge(1)));
            } else if k == two {
                entries.push(BoundEntry::int("antichain3_exact", BoundKind::Exact, &ni * 2, "n ≥ 2", ge(2)));
            } else if n >= &k {
                let mut report = antichain_bounds(&k, n)?;
                report.target = descriptor.trim().to_string();
                return Ok(report);
            } else {
                entries.push(BoundEntry::int("bound_a", BoundKind::Lower, BigInt::zero(), "k ≥ 3, n ≥ k", false));
                entries.push(BoundEntry::int("bound_b", BoundKind::Lower, BigInt::zero(), "k ≥ 3, n ≥ k", false));
            }
            k_out = Some(k);
        }
    }
    Ok(BoundReport { target: descriptor.trim().to_string(), n: n.clone(), k: k_out, entries })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: u64) -> BigUint {
        BigUint::from(v)
    }

    /// `C(d, ⌊d/2⌋)` by the multiplicative formula, independent of the memo.
    fn binom(n: u64, r: u64) -> BigUint {
        (0..r).fold(BigUint::one(), |acc, i| acc * (n - i) / (i + 1))
    }

    fn d_star_oracle(j: u64) -> u64 {
        let mut d = 0;
        while binom(d + 1, d.div_ceil(2)) <= big(j - 1) {
            d += 1;
        }
        d
    }

    #[test]
    fn central_binomials() {
        let expect = [1u64, 1, 2, 3, 6, 10, 20, 35, 70, 126, 252];
        for (d, &c) in expect.iter().enumerate() {
            assert_eq!(central_binomial(d as u64), big(c));
        }
        for d in [100u64, 255, 256, 300] {
            assert_eq!(central_binomial(d), binom(d, d / 2));
        }
    }

    #[test]
    fn d_star_examples() {
        assert_eq!(d_star(&big(1)), 1);
        assert_eq!(d_star(&big(2)), 1);
        assert_eq!(d_star(&big(3)), 2);
        assert_eq!(d_star(&big(7)), 4);
        assert_eq!(d_star(&big(21)), 6);
    }

    #[test]
    fn d_star_brackets_central_binomials() {
        let mut prev = 1;
        for j in 2..5000u64 {
            let d = d_star(&big(j));
            assert_eq!(d, d_star_oracle(j));
            assert!(d >= prev);
            assert!(central_binomial(d) <= big(j - 1) && big(j - 1) < central_binomial(d + 1));
            prev = d;
        }
    }

    #[test]
    fn bound_examples() {
        assert_eq!(bound_a(&big(3), &big(12)).unwrap(), BigInt::from(17));
        assert_eq!(bound_b(&big(3), &big(12)).unwrap(), BigInt::from(29));
        assert_eq!(bound_a(&big(4), &big(12)).unwrap(), BigInt::from(14));
        assert_eq!(bound_b(&big(4), &big(12)).unwrap(), BigInt::from(32));
        assert!(bound_a(&big(2), &big(12)).is_err());
        assert!(bound_b(&big(5), &big(4)).is_err());
    }

    #[test]
    fn bounds_nondecreasing_in_n() {
        for k in 3..40u64 {
            let mut prev = (BigInt::zero(), BigInt::zero());
            for n in k..k + 60 {
                let cur = (bound_a(&big(k), &big(n)).unwrap(), bound_b(&big(k), &big(n)).unwrap());
                assert!(cur.0 >= prev.0 && cur.1 >= prev.1);
                prev = cur;
            }
        }
    }

    #[test]
    fn grouped_slope_matches_term_by_term() {
        let mut direct = BigRational::from_integer(BigInt::from(2));
        for k in 3..=3000u64 {
            direct += BigRational::new(BigInt::one(), BigInt::from(d_star_oracle(k)));
            assert_eq!(slope_b(&big(k)), direct, "k={k}");
        }
    }

    #[test]
    fn slope_examples() {
        let c = slope_compare(&big(8)).unwrap();
        assert_eq!(c.slope_a, BigRational::from_integer(BigInt::from(2)));
        assert_eq!(c.slope_b, BigRational::from_integer(BigInt::from(4)));
        assert_eq!(c.winner, Winner::B);

        let c = slope_compare(&big(243)).unwrap();
        assert_eq!(c.slope_a, BigRational::new(BigInt::from(243), BigInt::from(8)));
        assert_eq!(c.slope_b, BigRational::from_integer(BigInt::from(34)));
        assert_eq!(c.winner, Winner::B);

        assert_eq!(slope_compare(&(BigUint::one() << 64u32)).unwrap().winner, Winner::A);
        assert!(slope_compare(&big(2)).is_err());
    }

    #[test]
    fn crossover_breakpoints_match_scan() {
        assert_eq!(crossover(&big(243)), None);
        for k_max in [3u64, 100, 1000, 5000, 20000] {
            assert_eq!(crossover(&big(k_max)).map(|k| k.to_u64().unwrap()), crossover_scan(k_max));
        }
    }

    #[test]
    fn main_bound_example() {
        // (1 − 1/log₂3)·36/log₂3 ≈ 8.38
        assert_eq!(main_bound_floor(&big(3), &big(12)), BigInt::from(8));
        let (lo, hi) = main_bound_interval(&big(3), &big(12), 40);
        assert!(lo.to_f64().unwrap() > 8.37 && hi.to_f64().unwrap() < 8.39);
    }

    #[test]
    fn inequality_examples() {
        let c = verify_inequality_a(&big(4), &big(8)).unwrap();
        assert_eq!(c.threshold, big(8));
        assert_eq!(c.bound_a, BigInt::from(10));
        assert!(c.pass);
        assert_eq!(c.main_lo, BigRational::from_integer(BigInt::from(8)));

        let c = verify_inequality_a(&big(3), &big(4)).unwrap();
        assert_eq!(c.threshold, big(4));
        assert_eq!(c.bound_a, BigInt::from(5));
        assert!(c.pass);

        assert!(verify_inequality_a(&big(3), &big(3)).is_err());
    }

    #[test]
    fn cube_threshold_matches_float() {
        for k in 3u64..2000 {
            let t = cube_log2_threshold(&big(k)).to_u64().unwrap();
            let f = (k as f64).log2().powi(3);
            assert!((t as f64 - f.ceil()).abs() < 1.0 + 1e-9, "k={k}");
            assert!(t as f64 >= f - 1e-9 && (t as f64) < f + 1.0 + 1e-9);
        }
    }

    #[test]
    fn antichain_report_example() {
        let r = antichain_bounds(&big(3), &big(12)).unwrap();
        assert_eq!(r.value("bound_a"), Some(&BigInt::from(17)));
        assert_eq!(r.value("bound_b"), Some(&BigInt::from(29)));
        assert_eq!(r.value("three_n_lower"), Some(&BigInt::from(35)));
        assert_eq!(r.value("main_bound"), Some(&BigInt::from(8)));
        assert_eq!(r.get("antichain_upper_approx").unwrap().kind, BoundKind::Approx);
        assert_eq!(r.best_lower(), Some(BigInt::from(35)));
    }

    #[test]
    fn large_k_is_feasible() {
        let k = BigUint::one() << 70u32;
        let n = &k * 2u32;
        assert!(bound_b(&k, &n).unwrap() > BigInt::zero());
        assert!(bound_a(&k, &n).unwrap() > BigInt::zero());
    }

    #[test]
    fn reference_examples() {
        let r = reference_bounds("v2", &big(5)).unwrap();
        assert_eq!((r.best_lower(), r.best_upper()), (Some(BigInt::from(6)), Some(BigInt::from(6))));

        let r = reference_bounds("butterfly", &big(4)).unwrap();
        assert_eq!((r.best_lower(), r.best_upper()), (Some(BigInt::from(2)), Some(BigInt::from(13))));

        let r = reference_bounds("diamond", &big(16)).unwrap();
        assert_eq!(r.value("diamond_lower"), Some(&BigInt::from(4)));
        assert_eq!(r.best_upper(), Some(BigInt::from(17)));

        let r = reference_bounds("chain:7", &big(100)).unwrap();
        assert_eq!(r.value("chain_lower"), Some(&BigInt::from(4)));
        assert_eq!(r.value("chain_root_upper"), Some(&BigInt::from(59)));
        assert_eq!(r.value("chain_upper"), Some(&BigInt::from(32)));

        assert!(reference_bounds("square", &big(3)).is_err());
        assert!(reference_bounds("antichain:1", &big(3)).is_err());
    }

    #[test]
    fn reference_thresholds() {
        let r = reference_bounds("v2", &big(1)).unwrap();
        assert_eq!(r.best_lower(), None);
        let r = reference_bounds("butterfly", &big(2)).unwrap();
        assert_eq!(r.best_upper(), None);
        let r = reference_bounds("antichain:6", &big(4)).unwrap();
        assert_eq!(r.best_lower(), None);
    }

    #[test]
    fn chain_root_epsilon_value() {
        assert!((chain_root_epsilon() - 0.023277).abs() < 5e-7);
    }

    #[test]
    fn reports_are_consistent() {
        for n in 1..40u64 {
            for d in ["v2", "diamond", "butterfly", "antichain:2", "antichain:3", "antichain:4", "antichain:9"] {
                assert!(reference_bounds(d, &big(n)).unwrap().is_consistent(), "{d} n={n}");
            }
        }
    }
}
