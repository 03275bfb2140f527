use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::cnf::OrdinalCNF;
use crate::{Error, Result};

/// A nonempty strictly increasing finite sequence of ordinals, ordered
/// deg-lex: shorter sequences first, equal lengths lexicographically.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct DegLexIndex(Vec<OrdinalCNF>);

impl DegLexIndex {
    pub fn new(entries: Vec<OrdinalCNF>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::InvalidIndex("index must be nonempty".into()));
        }
        if entries.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidIndex(format!(
                "entries must strictly increase: {entries:?}"
            )));
        }
        Ok(DegLexIndex(entries))
    }

    /// Index with finite entries; panics unless strictly increasing.
    pub fn from_finite(entries: &[u64]) -> Self {
        Self::new(entries.iter().map(|&n| OrdinalCNF::finite(n)).collect())
            .expect("finite index entries must strictly increase")
    }

    pub fn single(entry: OrdinalCNF) -> Self {
        DegLexIndex(vec![entry])
    }

    pub fn entries(&self) -> &[OrdinalCNF] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn first(&self) -> &OrdinalCNF {
        &self.0[0]
    }

    pub fn last(&self) -> &OrdinalCNF {
        self.0.last().expect("nonempty")
    }

    /// The index with its first entry dropped, if anything remains.
    pub fn tail(&self) -> Option<DegLexIndex> {
        (self.0.len() >= 2).then(|| DegLexIndex(self.0[1..].to_vec()))
    }

    /// Whether every entry is below `bound`.
    pub fn is_below(&self, bound: &OrdinalCNF) -> bool {
        self.last() < bound
    }

    /// Smallest index of the given length, `(0, 1, ..., n-1)`.
    pub fn minimal(n: usize) -> Self {
        assert!(n >= 1, "indices are nonempty");
        DegLexIndex((0..n as u64).map(OrdinalCNF::finite).collect())
    }
}

impl Ord for DegLexIndex {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for DegLexIndex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

pub fn deglex_compare(s: &DegLexIndex, t: &DegLexIndex) -> Ordering {
    s.cmp(t)
}

impl fmt::Display for DegLexIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|o| o.to_string()).collect();
        write!(f, "[{}]", parts.join(", "))
    }
}

impl fmt::Debug for DegLexIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Serialize for DegLexIndex {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.0.serialize(s)
    }
}

impl<'de> Deserialize<'de> for DegLexIndex {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = Vec::<OrdinalCNF>::deserialize(d)?;
        DegLexIndex::new(v).map_err(serde::de::Error::custom)
    }
}

/// Follows `chooser` from `start` until it signals exhaustion, checking every
/// step strictly descends. Returns the number of chooser calls.
pub fn deglex_descent_probe<F>(start: &DegLexIndex, mut chooser: F, step_cap: usize) -> Result<usize>
where
    F: FnMut(&DegLexIndex) -> Option<DegLexIndex>,
{
    let mut current = start.clone();
    for step in 1..=step_cap {
        match chooser(&current) {
            None => return Ok(step),
            Some(next) => {
                if next >= current {
                    return Err(Error::NotDescending(format!("{current} -> {next}")));
                }
                current = next;
            }
        }
    }
    Err(Error::StepCapExceeded(step_cap))
}
