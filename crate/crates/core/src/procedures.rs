//! Constructive arguments about saturated families, as runnable audits.
//!
//! Diamond-saturated families: [`pair_witnesses`], [`diamond_digraph_audit`]
//! and [`extremal_element_audit`]. Antichain-saturated families:
//! [`gap_fullness_audit`], [`eliminate_wide_gaps`], [`max_gap_bound_check`],
//! [`greedy_color`] and [`coloring_gap_check`]. Audits never assume
//! saturation; they report what they find.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::BigUint;
use num_traits::ToPrimitive;

use crate::bounds::{central_binomial, d_star};
use crate::chains::{chain_partition, ChainPartition, Gap};
use crate::error::{Error, Result};
use crate::lattice::{is_chain, open_interval, Family, Subset};

/// A pair `(f, g)` of members with `f − g = {index}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct WitnessPair {
    pub index: u32,
    pub f: Subset,
    pub g: Subset,
}

/// For a fixed member `F*`: for every `i ∈ F*` a pair with `f ⊆ F*`, and for
/// every `j ∉ F*` a pair with `g ⊇ F*`; `None` where no pair exists.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WitnessTable {
    pub fstar: Subset,
    pub inside: Vec<(u32, Option<WitnessPair>)>,
    pub outside: Vec<(u32, Option<WitnessPair>)>,
    pub complete: bool,
}

/// Searches the family for the pairs every diamond-saturated family must
/// hold around `fstar`. The first pair in ascending `(f, g)` mask order is
/// reported.
pub fn pair_witnesses(family: &Family, fstar: Subset) -> Result<WitnessTable> {
    if !family.contains(fstar) {
        return Err(Error::NotMember(fstar));
    }
    let members = family.members();
    let find = |i: u32, admissible: &dyn Fn(Subset, Subset) -> bool| {
        let want = Subset::from_elements([i]);
        members.iter().find_map(|&f| {
            members
                .iter()
                .find(|&&g| f.difference(g) == want && admissible(f, g))
                .map(|&g| WitnessPair { index: i, f, g })
        })
    };
    let ground = 1..=family.n();
    let inside: Vec<_> = ground
        .clone()
        .filter(|&i| fstar.contains(i))
        .map(|i| (i, find(i, &|f, _| f.is_subset_of(fstar))))
        .collect();
    let outside: Vec<_> = ground
        .filter(|&j| !fstar.contains(j))
        .map(|j| (j, find(j, &|_, g| fstar.is_subset_of(g))))
        .collect();
    let complete = inside.iter().chain(&outside).all(|(_, p)| p.is_some());
    Ok(WitnessTable { fstar, inside, outside, complete })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DigraphAudit {
    /// Ordered pairs `(A, B)` of members with `|B − A| = 1`.
    pub arcs: usize,
    /// Unordered pairs realised as an arc in at least one orientation.
    pub linked_pairs: usize,
    pub family_size: usize,
    pub pass: bool,
}

/// Counts the one-new-element arcs on the family. Passes when both the
/// unordered pair count and `|F|(|F|−1)` reach `n`; the ordered count is
/// reported alongside.
pub fn diamond_digraph_audit(family: &Family) -> DigraphAudit {
    let members = family.members();
    let arc = |a: Subset, b: Subset| b.difference(a).len() == 1;
    let mut arcs = 0;
    let mut linked_pairs = 0;
    for (x, &a) in members.iter().enumerate() {
        for &b in &members[x + 1..] {
            let (ab, ba) = (arc(a, b), arc(b, a));
            arcs += ab as usize + ba as usize;
            linked_pairs += (ab || ba) as usize;
        }
    }
    let m = members.len();
    let n = family.n() as usize;
    DigraphAudit { arcs, linked_pairs, family_size: m, pass: linked_pairs >= n && m * m.saturating_sub(1) >= n }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExtremalKind {
    /// `|S| + 1 ≤ |F|` for a minimal member `S`.
    Minimal(Subset),
    /// `n − |U| + 1 ≤ |F|` for a maximal member `U`.
    Maximal(Subset),
    /// `|F| ≥ n + 1` when `∅` or `[n]` is a member.
    HoldsExtreme,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ExtremalCheck {
    pub kind: ExtremalKind,
    pub required: usize,
    pub actual: usize,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtremalAudit {
    pub checks: Vec<ExtremalCheck>,
    pub pass: bool,
}

/// Size requirements forced on a diamond-saturated family by its minimal and
/// maximal members.
pub fn extremal_element_audit(family: &Family) -> ExtremalAudit {
    let n = family.n() as usize;
    let actual = family.len();
    let check = |kind, required| ExtremalCheck { kind, required, actual, pass: required <= actual };
    let mut checks: Vec<ExtremalCheck> = family
        .minimal_members()
        .into_iter()
        .map(|s| check(ExtremalKind::Minimal(s), s.len() as usize + 1))
        .collect();
    checks.extend(
        family.maximal_members().into_iter().map(|u| check(ExtremalKind::Maximal(u), n - u.len() as usize + 1)),
    );
    if family.contains(Subset::EMPTY) || family.contains(family.full_set()) {
        checks.push(check(ExtremalKind::HoldsExtreme, n + 1));
    }
    let pass = checks.iter().all(|c| c.pass);
    ExtremalAudit { checks, pass }
}

fn check_augmented_partition(family: &Family, partition: &ChainPartition) -> Result<()> {
    if !partition.is_augmented() {
        return Err(Error::Precondition("an augmented partition is required".into()));
    }
    if partition.n() != family.n() || !partition.partitions(family.interior().members()) {
        return Err(Error::InvalidPartition("chains do not partition F − {∅,[n]}".into()));
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GapFullness {
    pub pass: bool,
    /// First gap, in chain order, with an interior set outside the family.
    pub failure: Option<(Gap, Subset)>,
}

/// Whether every set strictly inside a gap of the partition is a member.
pub fn gap_fullness_audit(family: &Family, partition: &ChainPartition) -> Result<GapFullness> {
    check_augmented_partition(family, partition)?;
    for gap in partition.gaps() {
        if let Some(z) = open_interval(gap.lower, gap.upper)?.into_iter().find(|&z| !family.contains(z)) {
            return Ok(GapFullness { pass: false, failure: Some((gap, z)) });
        }
    }
    Ok(GapFullness { pass: true, failure: None })
}

/// One relocation: `t` leaves chain `from` and lands in gap `(gap_lower,
/// gap_upper)` of chain `to`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Move {
    pub t: Subset,
    pub from: usize,
    pub to: usize,
    pub gap_lower: Subset,
    pub gap_upper: Subset,
    /// (largest wide-gap size, number of wide gaps of that size) before and
    /// after the move.
    pub measure_before: (u32, usize),
    pub measure_after: (u32, usize),
    /// Sum of squared gap sizes before and after the move.
    pub potential_before: u64,
    pub potential_after: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MoveTrace {
    pub moves: Vec<Move>,
    /// Wide-gap count by size, before the first and after the last move.
    pub initial_histogram: BTreeMap<u32, usize>,
    pub final_histogram: BTreeMap<u32, usize>,
}

impl MoveTrace {
    /// Whether the (largest size, count at that size) measure strictly
    /// decreased lexicographically at every move.
    pub fn measure_strictly_decreasing(&self) -> bool {
        self.moves.iter().all(|m| m.measure_after < m.measure_before)
    }

    pub fn potential_strictly_decreasing(&self) -> bool {
        self.moves.iter().all(|m| m.potential_after < m.potential_before)
    }

    /// One move per line: `T from to X Y`, sets as bitstrings.
    pub fn to_text(&self, n: u32) -> String {
        let mut out = String::new();
        for m in &self.moves {
            let _ = writeln!(
                out,
                "T={} from={} to={} gap={}..{}",
                m.t.to_bitstring(n),
                m.from,
                m.to,
                m.gap_lower.to_bitstring(n),
                m.gap_upper.to_bitstring(n)
            );
        }
        out
    }
}

/// Members of `chain` strictly inside `(lower, upper)`, in chain order.
fn inside<'a>(chain: &'a [Subset], lower: Subset, upper: Subset) -> impl Iterator<Item = (usize, Subset)> + 'a {
    chain
        .iter()
        .copied()
        .enumerate()
        .filter(move |&(_, z)| lower.is_proper_subset_of(z) && z.is_proper_subset_of(upper))
}

/// A wide gap with the smallest donor chain holding at least three sets
/// inside it.
struct WideGap {
    chain: usize,
    pos: usize,
    lower: Subset,
    upper: Subset,
    size: u32,
    donor: usize,
}

fn wide_gaps(chains: &[Vec<Subset>]) -> Vec<WideGap> {
    let mut out = Vec::new();
    for (i, chain) in chains.iter().enumerate() {
        for (pos, w) in chain.windows(2).enumerate() {
            let (lower, upper) = (w[0], w[1]);
            let donor = (0..chains.len()).find(|&j| j != i && inside(&chains[j], lower, upper).nth(2).is_some());
            if let Some(donor) = donor {
                out.push(WideGap { chain: i, pos, lower, upper, size: upper.difference(lower).len(), donor });
            }
        }
    }
    out
}

fn histogram(gaps: &[WideGap]) -> BTreeMap<u32, usize> {
    let mut h = BTreeMap::new();
    for g in gaps {
        *h.entry(g.size).or_insert(0) += 1;
    }
    h
}

fn measure(h: &BTreeMap<u32, usize>) -> (u32, usize) {
    h.iter().next_back().map_or((0, 0), |(&s, &c)| (s, c))
}

fn potential(chains: &[Vec<Subset>]) -> u64 {
    chains
        .iter()
        .flat_map(|c| c.windows(2).map(|w| u64::from(w[1].difference(w[0]).len()).pow(2)))
        .sum()
}

/// Whether any gap has at least three sets of another chain strictly inside.
pub fn has_wide_gap(partition: &ChainPartition) -> bool {
    !wide_gaps(partition.chains()).is_empty()
}

/// Moves middle elements of other chains into wide gaps until none remain.
///
/// Each step takes a wide gap of maximum size (ties: smallest chain index,
/// then smallest lower mask), the smallest donor chain and that donor's
/// lowest three consecutive sets inside the gap, and moves the middle one.
/// A move replaces a gap of size `a+b` by gaps `a`, `b` and merges donor gaps
/// `c`, `e` into `c+e` where `c+e < a+b` and `ce < ab`, so the sum of squared
/// gap sizes strictly drops and the loop terminates. The lexicographic
/// (max size, count) measure drops too on partitions of saturated families,
/// but not in general; both are recorded on the trace.
pub fn eliminate_wide_gaps(partition: &ChainPartition) -> Result<(ChainPartition, MoveTrace)> {
    if !partition.is_augmented() {
        return Err(Error::Precondition("an augmented partition is required".into()));
    }
    let mut chains = partition.chains().to_vec();
    let mut gaps = wide_gaps(&chains);
    let initial_histogram = histogram(&gaps);
    let mut moves = Vec::new();
    while !gaps.is_empty() {
        let hist_before = histogram(&gaps);
        let top = gaps.iter().map(|g| g.size).max().expect("nonempty");
        let pick = gaps
            .iter()
            .filter(|g| g.size == top)
            .min_by_key(|g| (g.chain, g.lower.bits()))
            .expect("nonempty");
        let (to, pos, lower, upper, from) = (pick.chain, pick.pos, pick.lower, pick.upper, pick.donor);
        let (t_idx, t) = inside(&chains[from], lower, upper).nth(1).expect("donor has three sets inside");
        let potential_before = potential(&chains);
        chains[from].remove(t_idx);
        chains[to].insert(pos + 1, t);
        let potential_after = potential(&chains);
        assert!(potential_after < potential_before, "squared gap sum must drop");
        gaps = wide_gaps(&chains);
        moves.push(Move {
            t,
            from,
            to,
            gap_lower: lower,
            gap_upper: upper,
            measure_before: measure(&hist_before),
            measure_after: measure(&histogram(&gaps)),
            potential_before,
            potential_after,
        });
    }
    let out = ChainPartition::from_parts_unchecked(partition.n(), chains, true);
    debug_assert!(out.partitions(&partition.covered()));
    Ok((out, MoveTrace { moves, initial_histogram, final_histogram: BTreeMap::new() }))
}

/// `2(k−1) ≥ 2^d − 2`: the most sets a gap of size `d` can hold when its
/// interior is full and each of the other `k−1` chains meets it at most twice.
pub fn gap_bound_holds(k: u64, d: u32) -> bool {
    let lhs = 2 * u128::from(k.saturating_sub(1));
    let rhs = BigUint::from(1u32) << d;
    BigUint::from(lhs) + 2u32 >= rhs
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GapBoundCheck {
    pub chains: usize,
    pub max_gap: u32,
    pub pass: bool,
}

/// Checks [`gap_bound_holds`] for the largest gap of a wide-gap-free
/// partition whose gaps are full.
pub fn max_gap_bound_check(partition: &ChainPartition, family: &Family) -> Result<GapBoundCheck> {
    check_augmented_partition(family, partition)?;
    if has_wide_gap(partition) {
        return Err(Error::Precondition("partition still has a wide gap".into()));
    }
    if let Some((gap, z)) = gap_fullness_audit(family, partition)?.failure {
        return Err(Error::Precondition(format!(
            "{z:?} lies in gap {:?}..{:?} of chain {} but not in the family",
            gap.lower, gap.upper, gap.chain
        )));
    }
    let k = partition.len();
    let d = (0..k).map(|i| partition.max_gap(i)).max().unwrap_or(0);
    Ok(GapBoundCheck { chains: k, max_gap: d, pass: gap_bound_holds(k as u64, d) })
}

/// A colouring of `F − {∅,[n]}` into chains; `classes[j]` is colour `j + 1`,
/// ascending, without `∅` and `[n]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColoredFamily {
    pub n: u32,
    pub classes: Vec<Vec<Subset>>,
}

impl ColoredFamily {
    /// Colour (1-based) of a member.
    pub fn color_of(&self, s: Subset) -> Option<usize> {
        self.classes.iter().position(|c| c.contains(&s)).map(|j| j + 1)
    }

    /// The classes with `∅` and `[n]` added, as an augmented partition.
    pub fn augmented(&self) -> ChainPartition {
        let full = Subset::full(self.n);
        let chains = self
            .classes
            .iter()
            .map(|c| std::iter::once(Subset::EMPTY).chain(c.iter().copied()).chain([full]).collect())
            .collect();
        ChainPartition::new_augmented(self.n, chains).expect("colour classes are disjoint chains")
    }

    /// Gaps of every augmented class; `Gap::chain` is the 0-based class.
    pub fn gaps(&self) -> Vec<Gap> {
        self.augmented().gaps()
    }
}

/// Builds colour classes from the chains of `partition` in order: class `j`
/// starts as the still-uncoloured part of chain `j`, then absorbs uncoloured
/// members in ascending mask order while it stays a chain.
pub fn greedy_color(family: &Family, partition: &ChainPartition) -> Result<ColoredFamily> {
    if partition.is_augmented() {
        return Err(Error::Precondition("an unaugmented partition is required".into()));
    }
    let interior = family.interior();
    if partition.n() != family.n() || !partition.partitions(interior.members()) {
        return Err(Error::InvalidPartition("chains do not partition F − {∅,[n]}".into()));
    }
    let mut colored = vec![false; interior.len()];
    let idx = |s: Subset| interior.index_of(s).expect("partition covers the interior");
    let mut classes = Vec::with_capacity(partition.len());
    for chain in partition.chains() {
        let mut class: Vec<Subset> = chain.iter().copied().filter(|&s| !colored[idx(s)]).collect();
        for &s in &class {
            colored[idx(s)] = true;
        }
        for (x, &s) in interior.members().iter().enumerate() {
            if colored[x] {
                continue;
            }
            class.push(s);
            if is_chain(&class) {
                colored[x] = true;
            } else {
                class.pop();
            }
        }
        class.sort_unstable_by_key(|s| (s.len(), s.bits()));
        classes.push(class);
    }
    debug_assert!(colored.iter().all(|&c| c));
    Ok(ColoredFamily { n: family.n(), classes })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColoringFailure {
    /// 1-based colour.
    pub class: usize,
    pub detail: ColoringFailureKind,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ColoringFailureKind {
    /// A gap of size `d ≥ 2` with `C(d, ⌊d/2⌋) > class − 1`.
    Gap(Gap),
    /// The augmented class has fewer than `⌈n/d*(class)⌉ + 1` sets.
    Size { actual: usize, required: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColoringCheck {
    pub pass: bool,
    pub failures: Vec<ColoringFailure>,
}

/// Per-class gap and size requirements of a greedy colouring of an
/// antichain-saturated family. Size-1 gaps have empty interiors and pass.
pub fn coloring_gap_check(family: &Family, coloring: &ColoredFamily) -> Result<ColoringCheck> {
    let mut all: Vec<Subset> = coloring.classes.iter().flatten().copied().collect();
    all.sort_unstable();
    if coloring.n != family.n() || all != family.interior().members() {
        return Err(Error::InvalidPartition("colouring does not cover F − {∅,[n]} exactly once".into()));
    }
    let n = u64::from(family.n());
    let mut failures = Vec::new();
    for gap in coloring.gaps() {
        let j = gap.chain + 1;
        if gap.size >= 2 && central_binomial(u64::from(gap.size)) > BigUint::from(j - 1) {
            failures.push(ColoringFailure { class: j, detail: ColoringFailureKind::Gap(gap) });
        }
    }
    for (x, class) in coloring.classes.iter().enumerate() {
        let j = x + 1;
        let ds = d_star(&BigUint::from(j));
        let required = n.div_ceil(ds) + 1;
        let actual = class.len() + 2;
        if (actual as u64) < required {
            failures.push(ColoringFailure { class: j, detail: ColoringFailureKind::Size { actual, required } });
        }
    }
    Ok(ColoringCheck { pass: failures.is_empty(), failures })
}

/// Outcome of one step of an audit pipeline.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PipelineStep {
    pub name: &'static str,
    pub pass: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PipelineReport {
    pub steps: Vec<PipelineStep>,
}

impl PipelineReport {
    pub fn pass(&self) -> bool {
        self.steps.iter().all(|s| s.pass)
    }

    fn push(&mut self, name: &'static str, pass: bool, detail: impl Into<String>) {
        self.steps.push(PipelineStep { name, pass, detail: detail.into() });
    }
}

/// Every diamond audit on one family: witness pairs around each member, the
/// arc count and the extremal-member sizes.
pub fn diamond_pipeline(family: &Family) -> PipelineReport {
    let mut report = PipelineReport { steps: Vec::new() };
    let incomplete: Vec<Subset> = family
        .members()
        .iter()
        .copied()
        .filter(|&s| !pair_witnesses(family, s).expect("member").complete)
        .collect();
    report.push(
        "witness_pairs",
        incomplete.is_empty(),
        if incomplete.is_empty() { "complete for every member".to_string() } else { format!("incomplete at {incomplete:?}") },
    );
    let dg = diamond_digraph_audit(family);
    report.push(
        "digraph",
        dg.pass,
        format!("arcs {} linked pairs {} |F| {}", dg.arcs, dg.linked_pairs, dg.family_size),
    );
    let ex = extremal_element_audit(family);
    let bad = ex.checks.iter().filter(|c| !c.pass).count();
    report.push("extremal", ex.pass, format!("{} checks, {bad} violated", ex.checks.len()));
    report
}

/// Every antichain audit on one family: both extremes present, a minimum
/// chain partition of the interior with full gaps, wide-gap elimination, the
/// largest-gap bound and the greedy colouring checks.
pub fn antichain_pipeline(family: &Family) -> PipelineReport {
    let mut report = PipelineReport { steps: Vec::new() };
    let extremes = family.contains(Subset::EMPTY) && family.contains(family.full_set());
    report.push("extremes", extremes, if extremes { "∅ and [n] present" } else { "∅ or [n] missing" });
    let interior = family.interior();
    if !extremes || interior.is_empty() {
        report.push("partition", false, "no interior to partition");
        return report;
    }
    let partition = chain_partition(&interior).expect("nonempty interior");
    let aug = partition.augmented().expect("interior excludes ∅ and [n]");
    report.push("partition", true, format!("{} chains", partition.len()));

    match gap_fullness_audit(family, &aug) {
        Ok(g) => report.push(
            "gap_fullness",
            g.pass,
            g.failure.map_or("all gap interiors in F".to_string(), |(gap, z)| {
                format!("{z:?} missing from gap {:?}..{:?}", gap.lower, gap.upper)
            }),
        ),
        Err(e) => report.push("gap_fullness", false, e.to_string()),
    }

    let (clean, trace) = eliminate_wide_gaps(&aug).expect("augmented");
    let decreasing = trace.measure_strictly_decreasing() && trace.potential_strictly_decreasing();
    report.push("wide_gaps", decreasing && !has_wide_gap(&clean), format!("{} moves", trace.moves.len()));

    match max_gap_bound_check(&clean, family) {
        Ok(c) => report.push("max_gap_bound", c.pass, format!("k = {}, d = {}", c.chains, c.max_gap)),
        Err(e) => report.push("max_gap_bound", false, e.to_string()),
    }

    let coloring = greedy_color(family, &partition).expect("partition of the interior");
    match coloring_gap_check(family, &coloring) {
        Ok(c) => report.push("coloring", c.pass, format!("{} classes, {} failures", coloring.classes.len(), c.failures.len())),
        Err(e) => report.push("coloring", false, e.to_string()),
    }
    report
}

/// `⌈n / d*(j)⌉ + 1` as a plain integer, for reports.
pub fn class_size_requirement(n: u32, j: usize) -> u64 {
    u64::from(n).div_ceil(d_star(&BigUint::from(j))) + 1
}

/// `C(d, ⌊d/2⌋)` as a plain integer where it fits.
pub fn central_binomial_u64(d: u32) -> Option<u64> {
    central_binomial(u64::from(d)).to_u64()
}
