//! Saturation: verification, greedy completion and exact minimum search.
//!
//! A family is saturated for a target when it holds no copy of the target but
//! adding any outside set creates one. Copies survive additions in both modes,
//! so saturated families are exactly the maximal copy-free ones.
//!
//! [`min_saturated`] finds the minimum size by trying sizes in increasing
//! order. For each size it walks copy-free families in lexicographic order of
//! their sorted mask vectors, extending by ever larger masks; a prefix that
//! already holds a copy or that is not the lexicographically least member of
//! its orbit under permutations of the ground set is cut. Both cuts are
//! hereditary, so the first saturated leaf is the lexicographically least
//! saturated family of that size.

use std::sync::atomic::{AtomicBool, AtomicU64, AtomicUsize, Ordering};
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use rayon::prelude::*;

use crate::bounds;
use crate::containment::{contains_copy, find_embedding, Embedding, Mode};
use crate::error::{Error, Result};
use crate::lattice::{Family, Subset};
use crate::poset::{PosetKind, PosetSpec};

/// Largest ground size [`min_saturated`] accepts.
pub const MAX_SOLVER_GROUND: u32 = 5;

/// Largest ground size for which orbit pruning is applied.
pub const MAX_SYMMETRY_GROUND: u32 = 5;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SaturationVerdict {
    Saturated,
    /// The family itself already holds a copy.
    ContainsCopy(Embedding),
    /// Adding this outside set creates no copy.
    MissingBlocker(Subset),
}

impl SaturationVerdict {
    pub fn is_saturated(&self) -> bool {
        matches!(self, SaturationVerdict::Saturated)
    }
}

/// Checks saturation, pinpointing the first violation in ascending mask order.
pub fn is_saturated(family: &Family, target: &PosetSpec, mode: Mode) -> Result<SaturationVerdict> {
    if contains_copy(family.members(), target, mode, None) {
        let e = find_embedding(family, target, mode, None)?.expect("fast path and search disagree");
        return Ok(SaturationVerdict::ContainsCopy(e));
    }
    Ok(match first_missing_blocker(family.members(), family.n(), target, mode) {
        Some(s) => SaturationVerdict::MissingBlocker(s),
        None => SaturationVerdict::Saturated,
    })
}

/// First outside set whose addition creates no copy; the family is assumed
/// copy-free and sorted.
fn first_missing_blocker(members: &[Subset], n: u32, target: &PosetSpec, mode: Mode) -> Option<Subset> {
    let mut buf = Vec::with_capacity(members.len() + 1);
    buf.extend_from_slice(members);
    buf.push(Subset::EMPTY);
    let last = members.len();
    (0..=Subset::full(n).bits()).map(Subset).find(|&s| {
        if members.binary_search(&s).is_ok() {
            return false;
        }
        buf[last] = s;
        !contains_copy(&buf, target, mode, Some(last))
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ScanOrder {
    Ascending,
    Descending,
}

/// Greedily extends a copy-free family to a saturated one, scanning outside
/// sets in the given mask order and keeping each one that creates no copy.
pub fn complete(family: &Family, target: &PosetSpec, mode: Mode, order: ScanOrder) -> Result<Family> {
    if contains_copy(family.members(), target, mode, None) {
        return Err(Error::ContainsCopy);
    }
    let top = Subset::full(family.n()).bits();
    let scan: Box<dyn Iterator<Item = u32>> = match order {
        ScanOrder::Ascending => Box::new(0..=top),
        ScanOrder::Descending => Box::new((0..=top).rev()),
    };
    let mut members = family.members().to_vec();
    for mask in scan {
        let s = Subset(mask);
        if family.contains(s) {
            continue;
        }
        members.push(s);
        if contains_copy(&members, target, mode, Some(members.len() - 1)) {
            members.pop();
        }
    }
    Family::new(family.n(), members)
}

#[derive(Clone, Debug)]
pub struct SolverOptions {
    /// Maximum number of search nodes before giving up.
    pub budget: Option<u64>,
    /// Cut prefixes that are not least in their orbit under ground-set
    /// permutations.
    pub symmetry: bool,
    /// Start from the best proven lower bound instead of size 0.
    pub seed_lower_bound: bool,
    /// Cut prefixes that already hold a copy (otherwise copy-freeness is only
    /// tested at full size).
    pub incremental_pruning: bool,
    /// Worker threads; 0 lets the runtime decide.
    pub jobs: usize,
}

impl Default for SolverOptions {
    fn default() -> Self {
        SolverOptions { budget: None, symmetry: true, seed_lower_bound: true, incremental_pruning: true, jobs: 0 }
    }
}

impl SolverOptions {
    /// All optional cuts off; the plain exhaustive search.
    pub fn unpruned() -> Self {
        SolverOptions { symmetry: false, seed_lower_bound: false, incremental_pruning: false, ..Default::default() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SolveOutcome {
    Exact {
        min_size: usize,
        /// Lexicographically least saturated family of minimum size.
        witness: Family,
    },
    /// The budget ran out: every size below `lower` was exhausted and
    /// `witness` (of size `upper`) is saturated.
    Inconclusive { lower: usize, upper: usize, witness: Family },
}

#[derive(Clone, Debug)]
pub struct SolveResult {
    pub n: u32,
    pub target: String,
    pub mode: Mode,
    pub outcome: SolveOutcome,
    pub lower_bound_seed: usize,
    pub nodes_explored: u64,
    pub elapsed: Duration,
}

impl SolveResult {
    pub fn min_size(&self) -> Option<usize> {
        match &self.outcome {
            SolveOutcome::Exact { min_size, .. } => Some(*min_size),
            SolveOutcome::Inconclusive { .. } => None,
        }
    }

    pub fn witness(&self) -> &Family {
        match &self.outcome {
            SolveOutcome::Exact { witness, .. } | SolveOutcome::Inconclusive { witness, .. } => witness,
        }
    }

    pub fn is_exact(&self) -> bool {
        self.min_size().is_some()
    }
}

/// Best proven lower bound usable to seed the search.
pub fn search_lower_bound(n: u32, target: &PosetSpec, mode: Mode) -> usize {
    let descriptor = match target.kind() {
        PosetKind::V2 => "v2".to_string(),
        PosetKind::Diamond => "diamond".to_string(),
        PosetKind::Butterfly => "butterfly".to_string(),
        PosetKind::Antichain(k) => format!("antichain:{k}"),
        PosetKind::Chain(k) => format!("chain:{k}"),
        PosetKind::Lambda2 | PosetKind::Custom => return 0,
    };
    let weak_ok = matches!(target.kind(), PosetKind::Chain(_));
    if mode == Mode::Weak && !weak_ok {
        return 0;
    }
    let Ok(report) = bounds::reference_bounds(&descriptor, &BigUint::from(n)) else {
        return 0;
    };
    report.best_lower().and_then(|v| v.to_usize()).unwrap_or(0)
}

struct Aborted;

struct Search<'a> {
    n: u32,
    target: &'a PosetSpec,
    mode: Mode,
    size: usize,
    incremental: bool,
    perms: Vec<Vec<u32>>,
    nodes: &'a AtomicU64,
    budget: u64,
    abort: &'a AtomicBool,
}

impl Search<'_> {
    fn tick(&self) -> std::result::Result<(), Aborted> {
        let seen = self.nodes.fetch_add(1, Ordering::Relaxed) + 1;
        if seen > self.budget || self.abort.load(Ordering::Relaxed) {
            self.abort.store(true, Ordering::Relaxed);
            return Err(Aborted);
        }
        Ok(())
    }

    /// Whether the sorted prefix is least in its permutation orbit.
    fn canonical(&self, members: &[Subset]) -> bool {
        let mut image = Vec::with_capacity(members.len());
        self.perms.iter().all(|map| {
            image.clear();
            image.extend(members.iter().map(|s| map[s.bits() as usize]));
            image.sort_unstable();
            image.iter().map(|&b| Subset(b)).cmp(members.iter().copied()) != std::cmp::Ordering::Less
        })
    }

    /// Whether a freshly pushed last element keeps the prefix admissible.
    fn admissible(&self, members: &[Subset]) -> bool {
        if self.incremental && contains_copy(members, self.target, self.mode, Some(members.len() - 1)) {
            return false;
        }
        self.perms.is_empty() || self.canonical(members)
    }

    fn leaf_ok(&self, members: &[Subset]) -> bool {
        if !self.incremental && contains_copy(members, self.target, self.mode, None) {
            return false;
        }
        first_missing_blocker(members, self.n, self.target, self.mode).is_none()
    }

    fn dfs(&self, members: &mut Vec<Subset>, cancelled: &dyn Fn() -> bool) -> std::result::Result<bool, Aborted> {
        self.tick()?;
        if members.len() == self.size {
            return Ok(self.leaf_ok(members));
        }
        if cancelled() {
            return Ok(false);
        }
        let universe = 1u32 << self.n;
        let next = members.last().map_or(0, |s| s.bits() + 1);
        let need = (self.size - members.len()) as u32;
        for x in next..universe {
            if universe - x < need {
                break;
            }
            members.push(Subset(x));
            if self.admissible(members) && self.dfs(members, cancelled)? {
                return Ok(true);
            }
            members.pop();
        }
        Ok(false)
    }
}

/// Mask maps for every non-identity permutation of `[n]`.
fn permutation_maps(n: u32) -> Vec<Vec<u32>> {
    fn perms(k: usize) -> Vec<Vec<usize>> {
        if k == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for p in perms(k - 1) {
            for pos in 0..=p.len() {
                let mut q = p.clone();
                q.insert(pos, k - 1);
                out.push(q);
            }
        }
        out
    }
    let universe = 1usize << n;
    perms(n as usize)
        .into_iter()
        .filter(|p| p.iter().enumerate().any(|(i, &j)| i != j))
        .map(|p| {
            (0..universe)
                .map(|mask| {
                    (0..n as usize).filter(|&b| mask >> b & 1 == 1).fold(0u32, |acc, b| acc | 1 << p[b])
                })
                .collect()
        })
        .collect()
}

/// Computes the minimum size of a saturated family in `B_n`.
///
/// Top-level branches (the choice of the smallest member) run in parallel;
/// the reported witness is the lexicographically least one regardless of
/// scheduling. `nodes_explored` may vary between runs with several workers.
pub fn min_saturated(n: u32, target: &PosetSpec, mode: Mode, options: &SolverOptions) -> Result<SolveResult> {
    if n == 0 || n > MAX_SOLVER_GROUND {
        return Err(Error::Precondition(format!(
            "exhaustive search supports 1 ≤ n ≤ {MAX_SOLVER_GROUND}, got {n}"
        )));
    }
    let start = Instant::now();
    let greedy = complete(&Family::empty(n)?, target, mode, ScanOrder::Ascending)?;
    let upper = greedy.len();
    let seed = if options.seed_lower_bound { search_lower_bound(n, target, mode) } else { 0 };
    if seed > upper {
        return Err(Error::Precondition(format!(
            "lower bound {seed} exceeds the size {upper} of a saturated family"
        )));
    }
    let perms = if options.symmetry && n <= MAX_SYMMETRY_GROUND { permutation_maps(n) } else { Vec::new() };
    let nodes = AtomicU64::new(0);
    let abort = AtomicBool::new(false);
    let budget = options.budget.unwrap_or(u64::MAX);

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(options.jobs)
        .build()
        .map_err(|e| Error::Precondition(format!("thread pool: {e}")))?;

    let finish = |outcome: SolveOutcome| SolveResult {
        n,
        target: target.label().to_string(),
        mode,
        outcome,
        lower_bound_seed: seed,
        nodes_explored: nodes.load(Ordering::Relaxed),
        elapsed: start.elapsed(),
    };

    for size in seed..=upper {
        let search = Search {
            n,
            target,
            mode,
            size,
            incremental: options.incremental_pruning,
            perms: perms.clone(),
            nodes: &nodes,
            budget,
            abort: &abort,
        };
        let found = if size == 0 {
            search.tick().map(|_| search.leaf_ok(&[]).then(Vec::new))
        } else {
            let best_branch = AtomicUsize::new(usize::MAX);
            let branches: Vec<u32> = (0..1u32 << n).collect();
            let results: Vec<std::result::Result<Option<Vec<Subset>>, Aborted>> = pool.install(|| {
                branches
                    .par_iter()
                    .map(|&first| {
                        let idx = first as usize;
                        let cancelled = || best_branch.load(Ordering::Relaxed) < idx;
                        let mut members = vec![Subset(first)];
                        if cancelled() || !search.admissible(&members) {
                            return Ok(None);
                        }
                        if search.dfs(&mut members, &cancelled)? {
                            best_branch.fetch_min(idx, Ordering::Relaxed);
                            Ok(Some(members))
                        } else {
                            Ok(None)
                        }
                    })
                    .collect()
            });
            // a branch beaten by a smaller successful one may stop early;
            // abort only matters if no smaller branch already succeeded
            let mut found = Ok(None);
            for r in results {
                match r {
                    Ok(Some(members)) => {
                        found = Ok(Some(members));
                        break;
                    }
                    Ok(None) => {}
                    Err(Aborted) => {
                        found = Err(Aborted);
                        break;
                    }
                }
            }
            found
        };
        match found {
            Ok(Some(members)) => {
                let witness = Family::new(n, members)?;
                debug_assert!(is_saturated(&witness, target, mode).map(|v| v.is_saturated()).unwrap_or(false));
                return Ok(finish(SolveOutcome::Exact { min_size: size, witness }));
            }
            Ok(None) => {}
            Err(Aborted) => {
                return Ok(finish(SolveOutcome::Inconclusive { lower: size, upper, witness: greedy }));
            }
        }
    }
    unreachable!("a saturated family of size {upper} exists")
}
