//! Target posets: named shapes, custom relation files, validation and duality.

use std::fmt;
use std::path::Path;

use serde::Deserialize;

use crate::error::{Error, Result};

/// Largest supported target size (one `u64` row per element).
pub const MAX_POSET_SIZE: usize = 64;

/// Which named family a spec came from; drives the containment fast paths.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PosetKind {
    Chain(usize),
    Antichain(usize),
    V2,
    /// Dual of `V2`: two incomparable bottoms below one top.
    Lambda2,
    Diamond,
    Butterfly,
    Custom,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AxiomViolation {
    Irreflexive(usize),
    Asymmetric(usize, usize),
    Transitive(usize, usize, usize),
}

impl fmt::Display for AxiomViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            AxiomViolation::Irreflexive(i) => write!(f, "irreflexivity: {i} < {i}"),
            AxiomViolation::Asymmetric(i, j) => {
                write!(f, "asymmetry: both {i} < {j} and {j} < {i}")
            }
            AxiomViolation::Transitive(i, j, k) => {
                write!(f, "transitivity: {i} < {j} and {j} < {k} but not {i} < {k}")
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Order {
    Equal,
    Less,
    Greater,
    Incomparable,
}

/// A finite poset stored as its strict order relation.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PosetSpec {
    label: String,
    kind: PosetKind,
    /// Bit `j` of `above[i]` is set iff `i < j`.
    above: Vec<u64>,
}

impl fmt::Debug for PosetSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PosetSpec")
            .field("label", &self.label)
            .field("size", &self.size())
            .field("relations", &self.relations())
            .finish()
    }
}

#[derive(Deserialize)]
struct CustomPosetFile {
    size: usize,
    #[serde(default)]
    less: Vec<(usize, usize)>,
    #[serde(default)]
    label: Option<String>,
}

impl PosetSpec {
    pub fn chain(k: usize) -> Result<PosetSpec> {
        check_size(k)?;
        let above = (0..k).map(|i| range_mask(i + 1, k)).collect();
        Ok(PosetSpec { label: format!("chain:{k}"), kind: PosetKind::Chain(k), above })
    }

    pub fn antichain(k: usize) -> Result<PosetSpec> {
        check_size(k)?;
        Ok(PosetSpec {
            label: format!("antichain:{k}"),
            kind: PosetKind::Antichain(k),
            above: vec![0; k],
        })
    }

    /// Bottom `0` below incomparable tops `1` and `2`.
    pub fn v2() -> PosetSpec {
        PosetSpec { label: "v2".into(), kind: PosetKind::V2, above: vec![0b110, 0, 0] }
    }

    /// Incomparable bottoms `0` and `1` below top `2`.
    pub fn lambda2() -> PosetSpec {
        PosetSpec::v2().dual()
    }

    /// Bottom `0`, incomparable middles `1` and `2`, top `3`.
    pub fn diamond() -> PosetSpec {
        PosetSpec {
            label: "diamond".into(),
            kind: PosetKind::Diamond,
            above: vec![0b1110, 0b1000, 0b1000, 0],
        }
    }

    /// Bottoms `0`, `1` each below both tops `2`, `3`.
    pub fn butterfly() -> PosetSpec {
        PosetSpec {
            label: "butterfly".into(),
            kind: PosetKind::Butterfly,
            above: vec![0b1100, 0b1100, 0, 0],
        }
    }

    /// Builds a spec from strict relations, closing them transitively first.
    pub fn from_relations(size: usize, less: &[(usize, usize)], label: &str) -> Result<PosetSpec> {
        check_size(size)?;
        let mut above = vec![0u64; size];
        for &(i, j) in less {
            if i >= size || j >= size {
                return Err(Error::RelationOutOfRange(i, j));
            }
            if i == j {
                return Err(Error::OrderAxiom(AxiomViolation::Irreflexive(i)));
            }
            above[i] |= 1 << j;
        }
        // Warshall closure on bit rows
        for k in 0..size {
            for i in 0..size {
                if above[i] >> k & 1 == 1 {
                    above[i] |= above[k];
                }
            }
        }
        let spec = PosetSpec { label: label.to_string(), kind: PosetKind::Custom, above };
        spec.validate().map_err(Error::OrderAxiom)?;
        Ok(spec)
    }

    /// Builds a spec from a full strict-order matrix without closing it.
    pub fn from_matrix(matrix: &[Vec<bool>], label: &str) -> Result<PosetSpec> {
        let size = matrix.len();
        check_size(size)?;
        let mut above = vec![0u64; size];
        for (i, row) in matrix.iter().enumerate() {
            if row.len() != size {
                return Err(Error::PosetSize { size: row.len(), max: MAX_POSET_SIZE });
            }
            for (j, &lt) in row.iter().enumerate() {
                if lt {
                    above[i] |= 1 << j;
                }
            }
        }
        let spec = PosetSpec { label: label.to_string(), kind: PosetKind::Custom, above };
        spec.validate().map_err(Error::OrderAxiom)?;
        Ok(spec)
    }

    pub fn from_file(path: &Path) -> Result<PosetSpec> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::PosetFile(format!("{}: {e}", path.display())))?;
        PosetSpec::from_json(&text)
    }

    /// Parses the custom poset document `{"size": p, "less": [[i, j], ...]}`.
    pub fn from_json(text: &str) -> Result<PosetSpec> {
        let doc: CustomPosetFile =
            serde_json::from_str(text).map_err(|e| Error::PosetFile(e.to_string()))?;
        let label = doc.label.unwrap_or_else(|| "custom".to_string());
        PosetSpec::from_relations(doc.size, &doc.less, &label)
    }

    /// Checks the strict order axioms, returning the first violation found.
    /// Asymmetry is checked before irreflexivity so that a cycle is reported
    /// by one of its pairs.
    pub fn validate(&self) -> std::result::Result<(), AxiomViolation> {
        let p = self.size();
        for i in 0..p {
            for j in i + 1..p {
                if self.less(i, j) && self.less(j, i) {
                    return Err(AxiomViolation::Asymmetric(i, j));
                }
            }
        }
        for i in 0..p {
            if self.less(i, i) {
                return Err(AxiomViolation::Irreflexive(i));
            }
        }
        for i in 0..p {
            for j in 0..p {
                if !self.less(i, j) {
                    continue;
                }
                for k in 0..p {
                    if self.less(j, k) && !self.less(i, k) {
                        return Err(AxiomViolation::Transitive(i, j, k));
                    }
                }
            }
        }
        Ok(())
    }

    #[inline]
    pub fn size(&self) -> usize {
        self.above.len()
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn kind(&self) -> PosetKind {
        self.kind
    }

    #[inline]
    pub fn less(&self, i: usize, j: usize) -> bool {
        self.above[i] >> j & 1 == 1
    }

    #[inline]
    pub fn order(&self, i: usize, j: usize) -> Order {
        if i == j {
            Order::Equal
        } else if self.less(i, j) {
            Order::Less
        } else if self.less(j, i) {
            Order::Greater
        } else {
            Order::Incomparable
        }
    }

    /// Strict relations `(i, j)` with `i < j`, row-major.
    pub fn relations(&self) -> Vec<(usize, usize)> {
        let p = self.size();
        (0..p)
            .flat_map(|i| (0..p).filter(move |&j| self.less(i, j)).map(move |j| (i, j)))
            .collect()
    }

    pub fn strict_matrix(&self) -> Vec<Vec<bool>> {
        let p = self.size();
        (0..p).map(|i| (0..p).map(|j| self.less(i, j)).collect()).collect()
    }

    /// Number of elements strictly below `i`.
    pub fn down_degree(&self, i: usize) -> usize {
        (0..self.size()).filter(|&j| self.less(j, i)).count()
    }

    /// Number of elements comparable to `i`.
    pub fn comparability_degree(&self, i: usize) -> usize {
        (0..self.size()).filter(|&j| j != i && (self.less(i, j) || self.less(j, i))).count()
    }

    /// Length of the longest chain ending at each element, minus one.
    pub fn heights(&self) -> Vec<usize> {
        let p = self.size();
        let mut height = vec![0usize; p];
        // elements ordered by number of predecessors form a linear extension
        let mut order: Vec<usize> = (0..p).collect();
        order.sort_by_key(|&i| self.down_degree(i));
        for &v in &order {
            height[v] = (0..p).filter(|&u| self.less(u, v)).map(|u| height[u] + 1).max().unwrap_or(0);
        }
        height
    }

    /// The order-reversed poset.
    pub fn dual(&self) -> PosetSpec {
        let p = self.size();
        let mut above = vec![0u64; p];
        for i in 0..p {
            for j in 0..p {
                if self.less(j, i) {
                    above[i] |= 1 << j;
                }
            }
        }
        let kind = match self.kind {
            PosetKind::V2 => PosetKind::Lambda2,
            PosetKind::Lambda2 => PosetKind::V2,
            k => k,
        };
        let label = match self.label.as_str() {
            "v2" => "lambda2".to_string(),
            "lambda2" => "v2".to_string(),
            l if l.starts_with("dual(") && l.ends_with(')') => l[5..l.len() - 1].to_string(),
            l if matches!(self.kind, PosetKind::Custom) => format!("dual({l})"),
            // the remaining named shapes are self-dual up to relabelling
            l => l.to_string(),
        };
        PosetSpec { label, kind, above }
    }
}

fn check_size(size: usize) -> Result<()> {
    if size == 0 || size > MAX_POSET_SIZE {
        return Err(Error::PosetSize { size, max: MAX_POSET_SIZE });
    }
    Ok(())
}

fn range_mask(from: usize, to: usize) -> u64 {
    (from..to).fold(0u64, |m, j| m | 1 << j)
}

/// Parses a poset descriptor.
///
/// Accepted forms: `chain:k`, `antichain:k`, `v2`, `lambda2`, `diamond`,
/// `butterfly` and `custom:<path>`. `antichain:m` is the antichain with `m`
/// elements.
pub fn parse_poset(descriptor: &str) -> Result<PosetSpec> {
    let descriptor = descriptor.trim();
    if let Some(path) = descriptor.strip_prefix("custom:") {
        return PosetSpec::from_file(Path::new(path));
    }
    let (name, arg) = match descriptor.split_once(':') {
        Some((name, arg)) => (name, Some(arg)),
        None => (descriptor, None),
    };
    let count = || -> Result<usize> {
        let k: usize = arg
            .and_then(|a| a.parse().ok())
            .ok_or_else(|| Error::UnknownPoset(descriptor.to_string()))?;
        Ok(k)
    };
    match (name.to_ascii_lowercase().as_str(), arg) {
        ("chain", Some(_)) => PosetSpec::chain(count()?),
        ("antichain", Some(_)) => PosetSpec::antichain(count()?),
        ("v2", None) => Ok(PosetSpec::v2()),
        ("lambda2", None) => Ok(PosetSpec::lambda2()),
        ("diamond", None) => Ok(PosetSpec::diamond()),
        ("butterfly", None) => Ok(PosetSpec::butterfly()),
        _ => Err(Error::UnknownPoset(descriptor.to_string())),
    }
}
