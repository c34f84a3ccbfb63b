//! Width, minimum chain partitions and gaps.
//!
//! A minimum chain cover of a family is read off a maximum matching in the
//! bipartite graph with an edge `A → B` whenever `A ⊂ B`; each matched edge
//! links `A` to its successor in a chain. The number of chains is
//! `|F| − |matching|`, and a maximum antichain of that size is recovered from
//! the König vertex cover of the same matching.

use crate::error::{Error, Result};
use crate::lattice::{is_chain, Family, Subset};

struct Matching {
    /// `succ[i] = Some(j)` when `members[i] ⊂ members[j]` is a matched link.
    succ: Vec<Option<usize>>,
    pred: Vec<Option<usize>>,
    size: usize,
}

fn max_matching(members: &[Subset]) -> Matching {
    let n = members.len();
    let adj: Vec<Vec<usize>> = (0..n)
        .map(|i| (0..n).filter(|&j| members[i].is_proper_subset_of(members[j])).collect())
        .collect();
    let mut succ = vec![None; n];
    let mut pred: Vec<Option<usize>> = vec![None; n];
    let mut size = 0;

    fn augment(
        u: usize,
        adj: &[Vec<usize>],
        seen: &mut [bool],
        succ: &mut [Option<usize>],
        pred: &mut [Option<usize>],
    ) -> bool {
        for &v in &adj[u] {
            if seen[v] {
                continue;
            }
            seen[v] = true;
            let free = match pred[v] {
                None => true,
                Some(w) => augment(w, adj, seen, succ, pred),
            };
            if free {
                succ[u] = Some(v);
                pred[v] = Some(u);
                return true;
            }
        }
        false
    }

    let mut seen = vec![false; n];
    for u in 0..n {
        seen.iter_mut().for_each(|s| *s = false);
        if augment(u, &adj, &mut seen, &mut succ, &mut pred) {
            size += 1;
        }
    }
    Matching { succ, pred, size }
}

/// Width of an arbitrary slice of distinct subsets (0 when empty).
pub fn width_of(members: &[Subset]) -> usize {
    members.len() - max_matching(members).size
}

/// Maximum antichain size together with an antichain attaining it.
pub fn width(family: &Family) -> Result<(usize, Vec<Subset>)> {
    if family.is_empty() {
        return Err(Error::EmptyFamily);
    }
    let members = family.members();
    let m = max_matching(members);
    let n = members.len();

    // alternating reachability from unmatched left vertices
    let mut left_seen = vec![false; n];
    let mut right_seen = vec![false; n];
    let mut stack: Vec<usize> = (0..n).filter(|&u| m.succ[u].is_none()).collect();
    for &u in &stack {
        left_seen[u] = true;
    }
    while let Some(u) = stack.pop() {
        for v in 0..n {
            if right_seen[v] || !members[u].is_proper_subset_of(members[v]) || m.succ[u] == Some(v) {
                continue;
            }
            right_seen[v] = true;
            if let Some(w) = m.pred[v] {
                if !left_seen[w] {
                    left_seen[w] = true;
                    stack.push(w);
                }
            }
        }
    }
    let antichain: Vec<Subset> = (0..n)
        .filter(|&x| left_seen[x] && !right_seen[x])
        .map(|x| members[x])
        .collect();
    let w = n - m.size;
    debug_assert_eq!(antichain.len(), w);
    debug_assert!(crate::lattice::is_antichain(&antichain));
    Ok((w, antichain))
}

/// Decomposition of a family into chains, each listed in ascending order.
///
/// When `augmented`, every chain additionally starts with `∅` and ends with
/// `[n]`, and distinct chains share exactly those two sets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainPartition {
    n: u32,
    chains: Vec<Vec<Subset>>,
    augmented: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Gap {
    pub chain: usize,
    pub lower: Subset,
    pub upper: Subset,
    pub size: u32,
}

impl Gap {
    /// Whether `z` lies strictly inside the gap.
    pub fn contains(&self, z: Subset) -> bool {
        self.lower.is_proper_subset_of(z) && z.is_proper_subset_of(self.upper)
    }
}

impl ChainPartition {
    /// Validates and builds an unaugmented partition.
    pub fn new(n: u32, chains: Vec<Vec<Subset>>) -> Result<ChainPartition> {
        ChainPartition::build(n, chains, false)
    }

    /// Validates and builds an augmented partition; every chain must already
    /// contain `∅` and `[n]`.
    pub fn new_augmented(n: u32, chains: Vec<Vec<Subset>>) -> Result<ChainPartition> {
        ChainPartition::build(n, chains, true)
    }

    fn build(n: u32, mut chains: Vec<Vec<Subset>>, augmented: bool) -> Result<ChainPartition> {
        crate::lattice::check_ground(n)?;
        let full = Subset::full(n);
        let mut seen = std::collections::HashSet::new();
        for (idx, chain) in chains.iter_mut().enumerate() {
            chain.sort_unstable_by_key(|s| (s.len(), s.bits()));
            if let Some(bad) = chain.iter().find(|s| !s.is_subset_of(full)) {
                return Err(Error::MaskOutOfRange { mask: bad.bits(), n });
            }
            if !is_chain(chain) || chain.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::InvalidPartition(format!("chain {idx} is not a chain")));
            }
            if augmented
                && (chain.first() != Some(&Subset::EMPTY) || chain.last() != Some(&full) || chain.len() < 2)
            {
                return Err(Error::InvalidPartition(format!("chain {idx} lacks ∅ or [n]")));
            }
            for &s in chain.iter() {
                if augmented && (s == Subset::EMPTY || s == full) {
                    continue;
                }
                if !seen.insert(s) {
                    return Err(Error::InvalidPartition(format!("{s:?} appears in two chains")));
                }
            }
        }
        Ok(ChainPartition { n, chains, augmented })
    }

    pub(crate) fn from_parts_unchecked(n: u32, chains: Vec<Vec<Subset>>, augmented: bool) -> ChainPartition {
        ChainPartition { n, chains, augmented }
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn chains(&self) -> &[Vec<Subset>] {
        &self.chains
    }

    pub fn len(&self) -> usize {
        self.chains.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chains.is_empty()
    }

    pub fn is_augmented(&self) -> bool {
        self.augmented
    }

    /// Which chain holds `s` (ignoring the shared `∅`, `[n]` of an augmented
    /// partition).
    pub fn chain_of(&self, s: Subset) -> Option<usize> {
        self.chains.iter().position(|c| c.contains(&s))
    }

    /// The sets partitioned, i.e. the union of the chains minus the shared
    /// extremes when augmented; ascending by mask.
    pub fn covered(&self) -> Vec<Subset> {
        let full = Subset::full(self.n);
        let mut out: Vec<Subset> = self
            .chains
            .iter()
            .flatten()
            .copied()
            .filter(|&s| !self.augmented || (s != Subset::EMPTY && s != full))
            .collect();
        out.sort_unstable();
        out
    }

    /// Whether this partitions exactly the given sets.
    pub fn partitions(&self, sets: &[Subset]) -> bool {
        let mut want = sets.to_vec();
        want.sort_unstable();
        self.covered() == want
    }

    /// Gaps between consecutive elements of every chain, chain by chain.
    pub fn gaps(&self) -> Vec<Gap> {
        self.chains
            .iter()
            .enumerate()
            .flat_map(|(idx, chain)| {
                chain.windows(2).map(move |w| Gap {
                    chain: idx,
                    lower: w[0],
                    upper: w[1],
                    size: w[1].difference(w[0]).len(),
                })
            })
            .collect()
    }

    /// Largest gap of chain `idx`.
    pub fn max_gap(&self, idx: usize) -> u32 {
        self.chains[idx].windows(2).map(|w| w[1].difference(w[0]).len()).max().unwrap_or(0)
    }

    /// Adds `∅` and `[n]` to every chain.
    pub fn augmented(&self) -> Result<ChainPartition> {
        if self.augmented {
            return Err(Error::Precondition("partition is already augmented".into()));
        }
        let full = Subset::full(self.n);
        if self.chains.iter().flatten().any(|&s| s == Subset::EMPTY || s == full) {
            return Err(Error::Precondition("∅ or [n] must be stripped before augmenting".into()));
        }
        let chains = self
            .chains
            .iter()
            .map(|c| {
                let mut out = Vec::with_capacity(c.len() + 2);
                out.push(Subset::EMPTY);
                out.extend_from_slice(c);
                out.push(full);
                out
            })
            .collect();
        Ok(ChainPartition { n: self.n, chains, augmented: true })
    }

    /// Removes `∅` and `[n]` from every chain.
    pub fn stripped(&self) -> ChainPartition {
        let full = Subset::full(self.n);
        let chains = self
            .chains
            .iter()
            .map(|c| c.iter().copied().filter(|&s| s != Subset::EMPTY && s != full).collect())
            .collect();
        ChainPartition { n: self.n, chains, augmented: false }
    }
}

/// A minimum chain partition (Dilworth), unaugmented.
///
/// Members are matched in ascending mask order, so the output is
/// deterministic.
pub fn chain_partition(family: &Family) -> Result<ChainPartition> {
    if family.is_empty() {
        return Err(Error::EmptyFamily);
    }
    let members = family.members();
    let m = max_matching(members);
    let mut chains = Vec::new();
    for start in 0..members.len() {
        if m.pred[start].is_some() {
            continue;
        }
        let mut chain = vec![members[start]];
        let mut cur = start;
        while let Some(next) = m.succ[cur] {
            chain.push(members[next]);
            cur = next;
        }
        chains.push(chain);
    }
    Ok(ChainPartition { n: family.n(), chains, augmented: false })
}

/// Adds `∅` and `[n]` to every chain and lists all gaps.
///
/// Every augmented chain whose largest gap has size `d` has at least
/// `⌈n/d⌉ + 1` elements; this is asserted.
pub fn augment_and_gaps(partition: &ChainPartition) -> Result<(ChainPartition, Vec<Gap>)> {
    let aug = partition.augmented()?;
    let gaps = aug.gaps();
    let n = aug.n();
    for (idx, chain) in aug.chains().iter().enumerate() {
        let d = aug.max_gap(idx);
        assert!(
            chain.len() as u32 > n.div_ceil(d),
            "chain {idx} has {} elements but max gap {d} with n = {n}",
            chain.len()
        );
    }
    Ok((aug, gaps))
}
