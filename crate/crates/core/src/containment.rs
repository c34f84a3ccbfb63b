//! Weak and induced copies of a target poset inside a family of subsets.
//!
//! [`find_embedding`] returns the lexicographically least image vector and is
//! used wherever an embedding is reported. [`contains_copy`] only answers
//! yes/no and dispatches to cheaper detectors for antichains, chains and the
//! diamond; it is the hot path of the saturation search.

use std::cmp::Reverse;

use crate::chains;
use crate::error::{Error, Result};
use crate::lattice::{compare, Family, Relation, Subset};
use crate::poset::{Order, PosetKind, PosetSpec};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Mode {
    Induced,
    Weak,
}

impl Mode {
    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Induced => "induced",
            Mode::Weak => "weak",
        }
    }
}

impl std::str::FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "induced" => Ok(Mode::Induced),
            "weak" => Ok(Mode::Weak),
            other => Err(format!("unknown mode `{other}` (expected induced or weak)")),
        }
    }
}

/// `image[u]` is the index (into the family's member list) that target
/// element `u` is mapped to.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Embedding {
    pub image: Vec<usize>,
}

impl Embedding {
    /// The image sets, in target-element order.
    pub fn sets(&self, members: &[Subset]) -> Vec<Subset> {
        self.image.iter().map(|&i| members[i]).collect()
    }
}

#[inline]
fn compatible(mode: Mode, order: Order, rel: Relation) -> bool {
    match (mode, order, rel) {
        (_, _, Relation::Equal) => false,
        (_, Order::Less, Relation::Subset) => true,
        (_, Order::Greater, Relation::Superset) => true,
        (Mode::Induced, Order::Incomparable, Relation::Incomparable) => true,
        (Mode::Weak, Order::Incomparable, _) => true,
        _ => false,
    }
}

/// Checks injectivity and the order conditions of `mode`.
pub fn is_valid_embedding(members: &[Subset], target: &PosetSpec, mode: Mode, image: &[usize]) -> bool {
    let p = target.size();
    if image.len() != p || image.iter().any(|&i| i >= members.len()) {
        return false;
    }
    for u in 0..p {
        for v in u + 1..p {
            if image[u] == image[v] {
                return false;
            }
            if !compatible(mode, target.order(u, v), compare(members[image[u]], members[image[v]])) {
                return false;
            }
        }
    }
    true
}

struct Backtrack<'a> {
    members: &'a [Subset],
    target: &'a PosetSpec,
    mode: Mode,
    order: Vec<usize>,
    image: Vec<usize>,
    used: Vec<bool>,
}

const UNSET: usize = usize::MAX;

impl<'a> Backtrack<'a> {
    fn new(members: &'a [Subset], target: &'a PosetSpec, mode: Mode, order: Vec<usize>) -> Self {
        Backtrack {
            members,
            target,
            mode,
            order,
            image: vec![UNSET; target.size()],
            used: vec![false; members.len()],
        }
    }

    fn fits(&self, u: usize, candidate: usize) -> bool {
        let set = self.members[candidate];
        self.image.iter().enumerate().all(|(v, &img)| {
            img == UNSET || compatible(self.mode, self.target.order(u, v), compare(set, self.members[img]))
        })
    }

    fn run(&mut self, depth: usize) -> bool {
        if depth == self.order.len() {
            return true;
        }
        let u = self.order[depth];
        for candidate in 0..self.members.len() {
            if self.used[candidate] || !self.fits(u, candidate) {
                continue;
            }
            self.image[u] = candidate;
            self.used[candidate] = true;
            if self.run(depth + 1) {
                return true;
            }
            self.used[candidate] = false;
            self.image[u] = UNSET;
        }
        false
    }

    /// Searches with `fixed` pre-assigned; returns the completed image.
    fn search(mut self, fixed: Option<(usize, usize)>) -> Option<Vec<usize>> {
        if let Some((u, idx)) = fixed {
            self.image[u] = idx;
            self.used[idx] = true;
        }
        self.run(0).then_some(self.image)
    }
}

fn search_lex_least(members: &[Subset], target: &PosetSpec, mode: Mode, required: Option<usize>) -> Option<Embedding> {
    let p = target.size();
    if p > members.len() {
        return None;
    }
    match required {
        None => Backtrack::new(members, target, mode, (0..p).collect())
            .search(None)
            .map(|image| Embedding { image }),
        Some(r) => (0..p)
            .filter_map(|t| {
                let order = (0..p).filter(|&u| u != t).collect();
                Backtrack::new(members, target, mode, order).search(Some((t, r)))
            })
            .min()
            .map(|image| Embedding { image }),
    }
}

/// Target elements sorted by height, then by descending comparability degree.
fn heuristic_order(target: &PosetSpec, skip: Option<usize>) -> Vec<usize> {
    let heights = target.heights();
    let mut order: Vec<usize> = (0..target.size()).filter(|&u| Some(u) != skip).collect();
    order.sort_by_key(|&u| (heights[u], Reverse(target.comparability_degree(u)), u));
    order
}

/// Generic existence test, with no fast paths.
pub fn contains_copy_generic(members: &[Subset], target: &PosetSpec, mode: Mode, required: Option<usize>) -> bool {
    let p = target.size();
    if p > members.len() {
        return false;
    }
    match required {
        None => Backtrack::new(members, target, mode, heuristic_order(target, None))
            .search(None)
            .is_some(),
        Some(r) => (0..p).any(|t| {
            Backtrack::new(members, target, mode, heuristic_order(target, Some(t)))
                .search(Some((t, r)))
                .is_some()
        }),
    }
}

/// Whether `members` holds a copy of `target`; when `required` is given the
/// copy must use `members[required]`.
pub fn contains_copy(members: &[Subset], target: &PosetSpec, mode: Mode, required: Option<usize>) -> bool {
    if target.size() > members.len() {
        return false;
    }
    match (target.kind(), mode) {
        (PosetKind::Antichain(k), Mode::Induced) => match required {
            None => chains::width_of(members) >= k,
            Some(r) => {
                let pivot = members[r];
                let rest: Vec<Subset> =
                    members.iter().copied().filter(|&s| !s.is_comparable_to(pivot)).collect();
                k == 1 || (!rest.is_empty() && chains::width_of(&rest) >= k - 1)
            }
        },
        (PosetKind::Antichain(k), Mode::Weak) => members.len() >= k,
        (PosetKind::Chain(k), _) => longest_chain(members, required) >= k,
        (PosetKind::Diamond, Mode::Induced) => has_induced_diamond(members, required),
        _ => contains_copy_generic(members, target, mode, required),
    }
}

/// Length of the longest chain, optionally forced through `members[required]`.
pub fn longest_chain(members: &[Subset], required: Option<usize>) -> usize {
    if members.is_empty() {
        return 0;
    }
    match required {
        Some(r) => {
            let pivot = members[r];
            let below: Vec<Subset> = members.iter().copied().filter(|s| s.is_proper_subset_of(pivot)).collect();
            let above: Vec<Subset> = members.iter().copied().filter(|s| pivot.is_proper_subset_of(*s)).collect();
            1 + longest_chain(&below, None) + longest_chain(&above, None)
        }
        None => {
            let mut sorted = members.to_vec();
            sorted.sort_by_key(|s| (s.len(), s.bits()));
            let mut best = vec![1usize; sorted.len()];
            for i in 0..sorted.len() {
                for j in 0..i {
                    if sorted[j].is_proper_subset_of(sorted[i]) && best[j] + 1 > best[i] {
                        best[i] = best[j] + 1;
                    }
                }
            }
            best.into_iter().max().unwrap_or(0)
        }
    }
}

/// Induced diamond detector: incomparable `T₁, T₂` with some member below
/// `T₁ ∩ T₂` and some member above `T₁ ∪ T₂`.
pub fn has_induced_diamond(members: &[Subset], required: Option<usize>) -> bool {
    let has_below = |m: Subset, skip: Subset| members.iter().any(|&s| s != skip && s.is_subset_of(m));
    let has_above = |m: Subset, skip: Subset| members.iter().any(|&s| s != skip && m.is_subset_of(s));
    let incomparable_pairs = |pred: &dyn Fn(Subset) -> bool| -> Vec<(Subset, Subset)> {
        let cands: Vec<Subset> = members.iter().copied().filter(|&s| pred(s)).collect();
        let mut out = Vec::new();
        for (i, &a) in cands.iter().enumerate() {
            for &b in &cands[i + 1..] {
                if !a.is_comparable_to(b) {
                    out.push((a, b));
                }
            }
        }
        out
    };
    match required {
        None => incomparable_pairs(&|_| true)
            .into_iter()
            .any(|(a, b)| has_below(a.intersection(b), Subset(u32::MAX)) && has_above(a.union(b), Subset(u32::MAX))),
        Some(r) => {
            let pivot = members[r];
            // pivot as the bottom
            let as_bottom = incomparable_pairs(&|s| pivot.is_proper_subset_of(s))
                .into_iter()
                .any(|(a, b)| has_above(a.union(b), pivot));
            // pivot as the top
            let as_top = || {
                incomparable_pairs(&|s| s.is_proper_subset_of(pivot))
                    .into_iter()
                    .any(|(a, b)| has_below(a.intersection(b), pivot))
            };
            // pivot as a side element
            let as_side = || {
                members.iter().any(|&b| {
                    !b.is_comparable_to(pivot)
                        && has_below(b.intersection(pivot), pivot)
                        && has_above(b.union(pivot), pivot)
                })
            };
            as_bottom || as_top() || as_side()
        }
    }
}

fn required_index(family: &Family, required: Option<Subset>) -> Result<Option<usize>> {
    required
        .map(|s| family.index_of(s).ok_or(Error::NotMember(s)))
        .transpose()
}

/// Lexicographically least embedding of `target` in `family`.
pub fn find_embedding(
    family: &Family,
    target: &PosetSpec,
    mode: Mode,
    required: Option<Subset>,
) -> Result<Option<Embedding>> {
    let r = required_index(family, required)?;
    Ok(search_lex_least(family.members(), target, mode, r))
}

/// Lexicographically least induced copy, optionally through `required`.
pub fn find_induced(family: &Family, target: &PosetSpec, required: Option<Subset>) -> Result<Option<Embedding>> {
    find_embedding(family, target, Mode::Induced, required)
}

/// Lexicographically least weak copy.
pub fn find_weak(family: &Family, target: &PosetSpec) -> Option<Embedding> {
    search_lex_least(family.members(), target, Mode::Weak, None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::parse_poset;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn fam(n: u32, masks: &[u32]) -> Family {
        Family::from_masks(n, masks.iter().copied()).unwrap()
    }

    /// Enumerates every injection in lexicographic order.
    fn brute_force(members: &[Subset], target: &PosetSpec, mode: Mode, required: Option<usize>) -> Option<Vec<usize>> {
        fn rec(
            members: &[Subset],
            target: &PosetSpec,
            mode: Mode,
            required: Option<usize>,
            acc: &mut Vec<usize>,
        ) -> Option<Vec<usize>> {
            if acc.len() == target.size() {
                let ok = is_valid_embedding(members, target, mode, acc)
                    && required.is_none_or(|r| acc.contains(&r));
                return ok.then(|| acc.clone());
            }
            for i in 0..members.len() {
                if acc.contains(&i) {
                    continue;
                }
                acc.push(i);
                if let Some(found) = rec(members, target, mode, required, acc) {
                    return Some(found);
                }
                acc.pop();
            }
            None
        }
        rec(members, target, mode, required, &mut Vec::new())
    }

    fn random_family(rng: &mut ChaCha8Rng, n: u32, max_len: usize) -> Family {
        let len = rng.gen_range(0..=max_len);
        Family::from_masks(n, (0..len).map(|_| rng.gen_range(0..1u32 << n))).unwrap()
    }

    #[test]
    fn find_induced_examples() {
        let b2 = Family::whole_lattice(2).unwrap();
        let e = find_induced(&b2, &PosetSpec::diamond(), None).unwrap().unwrap();
        assert_eq!(e.sets(b2.members()), vec![Subset(0), Subset(1), Subset(2), Subset(3)]);

        let chain = fam(2, &[0, 1, 3]);
        assert_eq!(find_induced(&chain, &PosetSpec::v2(), None).unwrap(), None);

        let v = fam(2, &[0, 1, 2]);
        let e = find_induced(&v, &PosetSpec::v2(), None).unwrap().unwrap();
        assert_eq!(e.sets(v.members()), vec![Subset(0), Subset(1), Subset(2)]);
    }

    #[test]
    fn find_weak_examples() {
        let chain = fam(2, &[0, 1, 3]);
        assert!(find_weak(&chain, &PosetSpec::v2()).is_some());
        assert!(find_weak(&chain, &PosetSpec::chain(3).unwrap()).is_some());
        assert!(find_weak(&fam(2, &[1, 2]), &PosetSpec::chain(2).unwrap()).is_none());
    }

    #[test]
    fn required_member_must_belong() {
        let f = fam(2, &[0, 1]);
        assert_eq!(
            find_induced(&f, &PosetSpec::v2(), Some(Subset(3))),
            Err(Error::NotMember(Subset(3)))
        );
    }

    #[test]
    fn required_member_is_used() {
        // {∅,{1},{2},{1,2},{3}} in B3: a V2 through {3} must have {3} as a top
        let f = fam(3, &[0, 1, 2, 3, 4]);
        let e = find_induced(&f, &PosetSpec::v2(), Some(Subset(4))).unwrap().unwrap();
        assert!(e.image.contains(&f.index_of(Subset(4)).unwrap()));
        assert!(is_valid_embedding(f.members(), &PosetSpec::v2(), Mode::Induced, &e.image));
    }

    #[test]
    fn generic_search_matches_exhaustive_oracle_on_b4() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let targets: Vec<PosetSpec> = ["v2", "lambda2", "diamond", "butterfly", "chain:3", "antichain:3"]
            .iter()
            .map(|d| parse_poset(d).unwrap())
            .collect();
        for _ in 0..150 {
            let f = random_family(&mut rng, 4, 10);
            for t in &targets {
                for mode in [Mode::Induced, Mode::Weak] {
                    let expected = brute_force(f.members(), t, mode, None);
                    let got = find_embedding(&f, t, mode, None).unwrap().map(|e| e.image);
                    assert_eq!(got, expected, "{:?} {} {:?}", f, t.label(), mode);
                    assert_eq!(contains_copy_generic(f.members(), t, mode, None), expected.is_some());
                    assert_eq!(contains_copy(f.members(), t, mode, None), expected.is_some());
                    if let Some(&s) = f.members().first() {
                        let r = Some(0);
                        let expected = brute_force(f.members(), t, mode, r);
                        let got = find_embedding(&f, t, mode, Some(s)).unwrap().map(|e| e.image);
                        assert_eq!(got, expected);
                        assert_eq!(contains_copy(f.members(), t, mode, r), expected.is_some());
                    }
                }
            }
        }
    }

    #[test]
    fn diamond_fast_path_agrees_with_backtracking_on_b5() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let diamond = PosetSpec::diamond();
        let mut present = 0;
        for _ in 0..1000 {
            let f = random_family(&mut rng, 5, 12);
            let m = f.members();
            let generic = contains_copy_generic(m, &diamond, Mode::Induced, None);
            assert_eq!(has_induced_diamond(m, None), generic, "{f:?}");
            present += generic as usize;
            for r in 0..m.len() {
                assert_eq!(
                    has_induced_diamond(m, Some(r)),
                    contains_copy_generic(m, &diamond, Mode::Induced, Some(r)),
                    "{f:?} through {:?}",
                    m[r]
                );
            }
        }
        assert!(present > 50 && present < 950, "random sample should mix outcomes: {present}");
    }

    #[test]
    fn chain_and_antichain_fast_paths_agree() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..300 {
            let f = random_family(&mut rng, 5, 14);
            let m = f.members();
            for k in 1..=5 {
                for t in [PosetSpec::chain(k).unwrap(), PosetSpec::antichain(k).unwrap()] {
                    for mode in [Mode::Induced, Mode::Weak] {
                        assert_eq!(contains_copy(m, &t, mode, None), contains_copy_generic(m, &t, mode, None));
                        for r in 0..m.len() {
                            assert_eq!(
                                contains_copy(m, &t, mode, Some(r)),
                                contains_copy_generic(m, &t, mode, Some(r)),
                                "{f:?} {} {mode:?} via {r}",
                                t.label()
                            );
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn induced_copies_survive_additions() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let targets = [PosetSpec::v2(), PosetSpec::diamond(), PosetSpec::butterfly(), PosetSpec::antichain(3).unwrap()];
        for _ in 0..200 {
            let f = random_family(&mut rng, 4, 9);
            let s = Subset(rng.gen_range(0..16));
            let g = f.with(s).unwrap();
            for t in &targets {
                if find_induced(&f, t, None).unwrap().is_some() {
                    assert!(find_induced(&g, t, None).unwrap().is_some());
                }
            }
        }
    }

    #[test]
    fn induced_embeddings_are_weak_embeddings() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..200 {
            let f = random_family(&mut rng, 4, 10);
            for t in [PosetSpec::v2(), PosetSpec::diamond(), PosetSpec::butterfly()] {
                if let Some(e) = find_induced(&f, &t, None).unwrap() {
                    assert!(is_valid_embedding(f.members(), &t, Mode::Weak, &e.image));
                }
            }
        }
    }

    #[test]
    fn antichain_containment_matches_width() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        for _ in 0..200 {
            let f = random_family(&mut rng, 4, 12);
            if f.is_empty() {
                continue;
            }
            let (w, _) = chains::width(&f).unwrap();
            for k in 1..=7 {
                let t = PosetSpec::antichain(k).unwrap();
                assert_eq!(contains_copy_generic(f.members(), &t, Mode::Induced, None), w >= k);
            }
        }
    }
}
