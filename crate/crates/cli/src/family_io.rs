//! Family files: `{"n": 3, "sets": [0, "110", ...]}`, each set an integer
//! mask or a bitstring whose leftmost character is ground element 1.

use std::path::Path;

use indsat::chains::ChainPartition;
use indsat::{Family, Subset};
use serde::Deserialize;
use serde_json::{json, Value};

use crate::error::{CliError, CliResult};

#[derive(Deserialize)]
#[serde(untagged)]
enum SetRepr {
    Mask(u32),
    Bits(String),
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct FamilyFile {
    n: u32,
    sets: Vec<SetRepr>,
}

/// Parses one set. Strings of `0`/`1` characters are bitstrings and must
/// have length `n`; other digit strings are masks.
pub fn parse_set(text: &str, n: u32) -> CliResult<Subset> {
    if !text.is_empty() && text.chars().all(|c| c == '0' || c == '1') {
        if text.len() != n as usize {
            return Err(CliError::Input(format!("bitstring {text:?} must have length {n}")));
        }
        return Ok(Subset::from_bitstring(text).expect("checked characters"));
    }
    text.parse::<u32>()
        .map(Subset)
        .map_err(|_| CliError::Input(format!("{text:?} is neither a mask nor a bitstring of length {n}")))
}

pub fn parse_family(text: &str) -> CliResult<Family> {
    let file: FamilyFile =
        serde_json::from_str(text).map_err(|e| CliError::Input(format!("family file: {e}")))?;
    let sets = file.sets.into_iter().map(|s| set_of(s, file.n)).collect::<CliResult<Vec<_>>>()?;
    Ok(Family::new(file.n, sets)?)
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct PartitionFile {
    chains: Vec<Vec<SetRepr>>,
}

fn set_of(repr: SetRepr, n: u32) -> CliResult<Subset> {
    match repr {
        SetRepr::Mask(m) => Ok(Subset(m)),
        SetRepr::Bits(b) => parse_set(&b, n),
    }
}

/// Chain partition file: `{"chains": [[...], ...]}`, sets as in family
/// files, without `∅` and `[n]`.
pub fn parse_partition(text: &str, n: u32) -> CliResult<ChainPartition> {
    let file: PartitionFile =
        serde_json::from_str(text).map_err(|e| CliError::Input(format!("partition file: {e}")))?;
    let chains = file
        .chains
        .into_iter()
        .map(|c| c.into_iter().map(|s| set_of(s, n)).collect::<CliResult<Vec<_>>>())
        .collect::<CliResult<Vec<_>>>()?;
    Ok(ChainPartition::new(n, chains)?)
}

pub fn read_partition(path: &Path, n: u32) -> CliResult<ChainPartition> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.into(), source })?;
    parse_partition(&text, n)
}

pub fn read_family(path: &Path) -> CliResult<Family> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.into(), source })?;
    parse_family(&text)
}

pub fn bits(s: Subset, n: u32) -> String {
    s.to_bitstring(n)
}

pub fn bit_list(sets: &[Subset], n: u32) -> Vec<String> {
    sets.iter().map(|&s| bits(s, n)).collect()
}

/// Canonical form: bitstrings in ascending mask order.
pub fn family_json(family: &Family) -> Value {
    json!({ "n": family.n(), "sets": bit_list(family.members(), family.n()) })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn masks_and_bitstrings_mix() {
        let f = parse_family(r#"{"n": 3, "sets": [0, "100", "110", 7]}"#).unwrap();
        assert_eq!(f.members(), &[Subset(0), Subset(1), Subset(3), Subset(7)]);
        assert_eq!(family_json(&f)["sets"], json!(["000", "100", "110", "111"]));
    }

    #[test]
    fn roundtrip_through_canonical_form() {
        let f = parse_family(r#"{"n": 4, "sets": [15, 0, 6]}"#).unwrap();
        let again = parse_family(&family_json(&f).to_string()).unwrap();
        assert_eq!(f, again);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(parse_family(r#"{"n": 3, "sets": ["10"]}"#).is_err());
        assert!(parse_family(r#"{"n": 2, "sets": [4]}"#).is_err());
        assert!(parse_family(r#"{"n": 2, "sets": ["1x"]}"#).is_err());
        assert!(parse_family(r#"{"n": 2}"#).is_err());
    }

    #[test]
    fn partitions() {
        let p = parse_partition(r#"{"chains": [["100", "110"], [2]]}"#, 3).unwrap();
        assert_eq!(p.chains(), &[vec![Subset(1), Subset(3)], vec![Subset(2)]]);
        assert!(parse_partition(r#"{"chains": [["100", "010"]]}"#, 3).is_err());
    }

    #[test]
    fn single_sets() {
        assert_eq!(parse_set("110", 3).unwrap(), Subset(3));
        assert_eq!(parse_set("5", 3).unwrap(), Subset(5));
        assert!(parse_set("1101", 3).is_err());
    }
}
