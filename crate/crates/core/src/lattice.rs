//! Boolean lattice primitives.
//!
//! A [`Subset`] of `{1..n}` is stored as a bit mask where bit `i - 1` is set
//! exactly when ground element `i` belongs to the subset. A [`Family`] is a
//! sorted, duplicate-free collection of subsets sharing one ground size.

use std::fmt;

use crate::error::{Error, Result};

/// Largest ground size accepted by enumerative operations.
pub const MAX_GROUND: u32 = 24;

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Subset(pub u32);

impl Subset {
    pub const EMPTY: Subset = Subset(0);

    /// The full ground set `[n]`.
    pub fn full(n: u32) -> Subset {
        Subset(if n >= 32 { u32::MAX } else { (1u32 << n) - 1 })
    }

    /// Builds a subset from 1-based ground elements.
    pub fn from_elements<I: IntoIterator<Item = u32>>(elements: I) -> Subset {
        Subset(elements.into_iter().fold(0, |m, i| m | (1 << (i - 1))))
    }

    #[inline]
    pub fn bits(self) -> u32 {
        self.0
    }

    /// Cardinality.
    #[inline]
    pub fn len(self) -> u32 {
        self.0.count_ones()
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    /// Whether ground element `i` (1-based) is present.
    #[inline]
    pub fn contains(self, i: u32) -> bool {
        self.0 >> (i - 1) & 1 == 1
    }

    #[inline]
    pub fn is_subset_of(self, other: Subset) -> bool {
        self.0 & !other.0 == 0
    }

    #[inline]
    pub fn is_proper_subset_of(self, other: Subset) -> bool {
        self.0 != other.0 && self.is_subset_of(other)
    }

    #[inline]
    pub fn is_comparable_to(self, other: Subset) -> bool {
        self.is_subset_of(other) || other.is_subset_of(self)
    }

    #[inline]
    pub fn union(self, other: Subset) -> Subset {
        Subset(self.0 | other.0)
    }

    #[inline]
    pub fn intersection(self, other: Subset) -> Subset {
        Subset(self.0 & other.0)
    }

    /// Set difference `self − other`.
    #[inline]
    pub fn difference(self, other: Subset) -> Subset {
        Subset(self.0 & !other.0)
    }

    #[inline]
    pub fn with(self, i: u32) -> Subset {
        Subset(self.0 | 1 << (i - 1))
    }

    #[inline]
    pub fn without(self, i: u32) -> Subset {
        Subset(self.0 & !(1 << (i - 1)))
    }

    /// 1-based ground elements in increasing order.
    pub fn elements(self) -> impl Iterator<Item = u32> {
        let bits = self.0;
        (0..32).filter(move |b| bits >> b & 1 == 1).map(|b| b + 1)
    }

    /// Bitstring of length `n` whose leftmost character is ground element 1.
    pub fn to_bitstring(self, n: u32) -> String {
        (0..n)
            .map(|b| if self.0 >> b & 1 == 1 { '1' } else { '0' })
            .collect()
    }

    /// Inverse of [`Subset::to_bitstring`].
    pub fn from_bitstring(s: &str) -> Option<Subset> {
        if s.len() > 32 {
            return None;
        }
        let mut mask = 0u32;
        for (b, c) in s.chars().enumerate() {
            match c {
                '1' => mask |= 1 << b,
                '0' => {}
                _ => return None,
            }
        }
        Some(Subset(mask))
    }
}

impl fmt::Debug for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (idx, e) in self.elements().enumerate() {
            if idx > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "}}")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Relation {
    Equal,
    /// Left side is a proper subset of the right side.
    Subset,
    /// Left side is a proper superset of the right side.
    Superset,
    Incomparable,
}

impl Relation {
    pub fn flip(self) -> Relation {
        match self {
            Relation::Subset => Relation::Superset,
            Relation::Superset => Relation::Subset,
            r => r,
        }
    }
}

#[inline]
pub fn compare(a: Subset, b: Subset) -> Relation {
    if a == b {
        Relation::Equal
    } else if a.is_subset_of(b) {
        Relation::Subset
    } else if b.is_subset_of(a) {
        Relation::Superset
    } else {
        Relation::Incomparable
    }
}

/// `|Y − X|`, the dimension of the cube `[X, Y]`.
pub fn interval_dimension(lower: Subset, upper: Subset) -> Result<u32> {
    if !lower.is_subset_of(upper) {
        return Err(Error::NotProperSubset { lower, upper });
    }
    Ok(upper.difference(lower).len())
}

/// Lazily walks the open interval `(X, Y)` in ascending mask order.
#[derive(Clone, Debug)]
pub struct IntervalIter {
    base: u32,
    free: u32,
    next: u32,
    done: bool,
}

impl Iterator for IntervalIter {
    type Item = Subset;

    fn next(&mut self) -> Option<Subset> {
        if self.done {
            return None;
        }
        let current = self.next;
        if current == self.free {
            self.done = true;
            return None;
        }
        // next submask of `free` in increasing order
        self.next = (current | !self.free).wrapping_add(1) & self.free;
        Some(Subset(self.base | current))
    }
}

pub fn interval_iter(lower: Subset, upper: Subset) -> Result<IntervalIter> {
    if !lower.is_proper_subset_of(upper) {
        return Err(Error::NotProperSubset { lower, upper });
    }
    let free = upper.difference(lower).bits();
    Ok(IntervalIter {
        base: lower.bits(),
        free,
        // skip the empty submask, which is X itself
        next: (!free).wrapping_add(1) & free,
        done: false,
    })
}

/// All `Z` with `X ⊂ Z ⊂ Y`, ascending by mask.
pub fn open_interval(lower: Subset, upper: Subset) -> Result<Vec<Subset>> {
    Ok(interval_iter(lower, upper)?.collect())
}

/// A set of subsets of `[n]`, kept sorted and duplicate-free.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Family {
    n: u32,
    members: Vec<Subset>,
}

impl Family {
    pub fn new<I: IntoIterator<Item = Subset>>(n: u32, members: I) -> Result<Family> {
        check_ground(n)?;
        let full = Subset::full(n);
        let mut members: Vec<Subset> = members.into_iter().collect();
        if let Some(bad) = members.iter().find(|s| !s.is_subset_of(full)) {
            return Err(Error::MaskOutOfRange { mask: bad.bits(), n });
        }
        members.sort_unstable();
        members.dedup();
        Ok(Family { n, members })
    }

    pub fn from_masks<I: IntoIterator<Item = u32>>(n: u32, masks: I) -> Result<Family> {
        Family::new(n, masks.into_iter().map(Subset))
    }

    pub fn empty(n: u32) -> Result<Family> {
        Family::new(n, [])
    }

    /// Every subset of `[n]`.
    pub fn whole_lattice(n: u32) -> Result<Family> {
        check_ground(n)?;
        Ok(Family {
            n,
            members: (0..=Subset::full(n).bits()).map(Subset).collect(),
        })
    }

    #[inline]
    pub fn n(&self) -> u32 {
        self.n
    }

    #[inline]
    pub fn members(&self) -> &[Subset] {
        &self.members
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.members.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, s: Subset) -> bool {
        self.members.binary_search(&s).is_ok()
    }

    pub fn index_of(&self, s: Subset) -> Option<usize> {
        self.members.binary_search(&s).ok()
    }

    pub fn full_set(&self) -> Subset {
        Subset::full(self.n)
    }

    /// Returns a copy with `s` inserted (no-op if already present).
    pub fn with(&self, s: Subset) -> Result<Family> {
        if !s.is_subset_of(self.full_set()) {
            return Err(Error::MaskOutOfRange { mask: s.bits(), n: self.n });
        }
        let mut members = self.members.clone();
        if let Err(pos) = members.binary_search(&s) {
            members.insert(pos, s);
        }
        Ok(Family { n: self.n, members })
    }

    /// The family minus `∅` and `[n]`.
    pub fn interior(&self) -> Family {
        let full = self.full_set();
        Family {
            n: self.n,
            members: self
                .members
                .iter()
                .copied()
                .filter(|&s| s != Subset::EMPTY && s != full)
                .collect(),
        }
    }

    /// Members not strictly above any other member.
    pub fn minimal_members(&self) -> Vec<Subset> {
        self.members
            .iter()
            .copied()
            .filter(|&s| !self.members.iter().any(|&t| t.is_proper_subset_of(s)))
            .collect()
    }

    /// Members not strictly below any other member.
    pub fn maximal_members(&self) -> Vec<Subset> {
        self.members
            .iter()
            .copied()
            .filter(|&s| !self.members.iter().any(|&t| s.is_proper_subset_of(t)))
            .collect()
    }

    /// Subsets of `[n]` not in the family, ascending.
    pub fn outsiders(&self) -> impl Iterator<Item = Subset> + '_ {
        (0..=self.full_set().bits())
            .map(Subset)
            .filter(move |&s| !self.contains(s))
    }
}

impl fmt::Debug for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Family(n={}, ", self.n)?;
        f.debug_list().entries(self.members.iter()).finish()?;
        write!(f, ")")
    }
}

pub(crate) fn check_ground(n: u32) -> Result<()> {
    if n == 0 || n > MAX_GROUND {
        return Err(Error::GroundSize { n, max: MAX_GROUND });
    }
    Ok(())
}

/// Whether the given subsets are pairwise comparable.
pub fn is_chain(sets: &[Subset]) -> bool {
    sets.iter()
        .enumerate()
        .all(|(i, &a)| sets[i + 1..].iter().all(|&b| a.is_comparable_to(b)))
}

/// Whether the given subsets are pairwise incomparable.
pub fn is_antichain(sets: &[Subset]) -> bool {
    sets.iter()
        .enumerate()
        .all(|(i, &a)| sets[i + 1..].iter().all(|&b| !a.is_comparable_to(b)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn compare_examples() {
        assert_eq!(compare(Subset(0b01), Subset(0b11)), Relation::Subset);
        assert_eq!(compare(Subset(0b01), Subset(0b10)), Relation::Incomparable);
        assert_eq!(compare(Subset(0b11), Subset(0b11)), Relation::Equal);
        assert_eq!(compare(Subset(0b11), Subset(0b01)), Relation::Superset);
    }

    #[test]
    fn compare_is_a_partial_order_on_b4() {
        let all: Vec<Subset> = (0..16).map(Subset).collect();
        for &a in &all {
            assert_eq!(compare(a, a), Relation::Equal);
            for &b in &all {
                assert_eq!(compare(a, b), compare(b, a).flip());
                for &c in &all {
                    let ab = matches!(compare(a, b), Relation::Subset | Relation::Equal);
                    let bc = matches!(compare(b, c), Relation::Subset | Relation::Equal);
                    let ac = matches!(compare(a, c), Relation::Subset | Relation::Equal);
                    if ab && bc {
                        assert!(ac, "transitivity fails on {a:?} {b:?} {c:?}");
                    }
                }
            }
        }
    }

    #[test]
    fn open_interval_examples() {
        assert_eq!(
            open_interval(Subset(0b00), Subset(0b11)).unwrap(),
            vec![Subset(0b01), Subset(0b10)]
        );
        assert!(open_interval(Subset(0b001), Subset(0b011)).unwrap().is_empty());
        assert_eq!(open_interval(Subset(0), Subset(0b1111)).unwrap().len(), 14);
    }

    #[test]
    fn open_interval_rejects_bad_endpoints() {
        assert!(open_interval(Subset(0b11), Subset(0b11)).is_err());
        assert!(open_interval(Subset(0b01), Subset(0b10)).is_err());
        assert!(open_interval(Subset(0b11), Subset(0b01)).is_err());
    }

    #[test]
    fn interval_dimension_examples() {
        assert_eq!(interval_dimension(Subset(0b00), Subset(0b11)).unwrap(), 2);
        assert_eq!(interval_dimension(Subset(0b0101), Subset(0b0101)).unwrap(), 0);
        assert_eq!(interval_dimension(Subset(0b0001), Subset(0b1111)).unwrap(), 3);
        assert!(interval_dimension(Subset(0b01), Subset(0b10)).is_err());
    }

    #[test]
    fn bitstrings_put_element_one_first() {
        assert_eq!(Subset::from_elements([1]).to_bitstring(3), "100");
        assert_eq!(Subset::from_bitstring("011"), Some(Subset(0b110)));
        assert_eq!(Subset::from_bitstring("01x"), None);
    }

    #[test]
    fn family_normalizes_and_validates() {
        let f = Family::from_masks(2, [3, 0, 1, 1]).unwrap();
        assert_eq!(f.members(), &[Subset(0), Subset(1), Subset(3)]);
        assert!(Family::from_masks(2, [4]).is_err());
        assert!(Family::from_masks(0, []).is_err());
        assert!(Family::from_masks(25, []).is_err());
        assert_eq!(f.interior().members(), &[Subset(1)]);
        assert_eq!(f.outsiders().collect::<Vec<_>>(), vec![Subset(2)]);
    }

    #[test]
    fn extremal_members() {
        let f = Family::from_masks(3, [0b001, 0b010, 0b011, 0b110]).unwrap();
        assert_eq!(f.minimal_members(), vec![Subset(0b001), Subset(0b010)]);
        assert_eq!(f.maximal_members(), vec![Subset(0b011), Subset(0b110)]);
    }

    proptest! {
        #[test]
        fn interval_has_cube_interior(x in 0u32..(1 << 12), extra in 1u32..(1 << 12)) {
            let lower = Subset(x);
            let upper = Subset(x | extra);
            prop_assume!(lower != upper);
            let d = interval_dimension(lower, upper).unwrap();
            prop_assume!(d <= 10);
            let inside = open_interval(lower, upper).unwrap();
            prop_assert_eq!(inside.len(), (1usize << d) - 2);
            prop_assert!(inside.windows(2).all(|w| w[0] < w[1]));
            for z in inside {
                prop_assert_eq!(compare(lower, z), Relation::Subset);
                prop_assert_eq!(compare(z, upper), Relation::Subset);
            }
        }
    }
}
