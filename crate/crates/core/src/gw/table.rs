use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Signed;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::FanoModel;

/// Invariants `N(n; beta)` of one model, keyed by curve class and
/// non-divisor insertion multidegree.
///
/// `complete_c1` is the c1-degree through which every dimensionally
/// allowed key is present (zeros included).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GWTable {
    model: FanoModel,
    complete_c1: u32,
    entries: BTreeMap<(Vec<u32>, Vec<u32>), BigInt>,
}

/// Serialized form of one table entry.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableEntry {
    pub beta: Vec<u32>,
    pub insertions: Vec<u32>,
    pub value: String,
}

impl GWTable {
    pub fn new(model: &FanoModel, complete_c1: u32) -> Self {
        GWTable { model: model.clone(), complete_c1, entries: BTreeMap::new() }
    }

    pub fn model(&self) -> &FanoModel {
        &self.model
    }

    pub fn complete_c1(&self) -> u32 {
        self.complete_c1
    }

    pub fn set_complete_c1(&mut self, c1: u32) {
        self.complete_c1 = c1;
    }

    pub fn insert(&mut self, beta: Vec<u32>, insertions: Vec<u32>, value: BigInt) -> Result<()> {
        let invalid = |reason: &str| Error::InvalidEntry {
            beta: beta.clone(),
            insertions: insertions.clone(),
            reason: reason.to_string(),
        };
        if beta.iter().all(|&d| d == 0) {
            return Err(invalid("zero curve class"));
        }
        if !self.model.is_valid_key(&beta, &insertions) {
            return Err(invalid("dimension condition fails"));
        }
        if value.is_negative() {
            return Err(invalid("negative value"));
        }
        self.entries.insert((beta, insertions), value);
        Ok(())
    }

    pub fn get(&self, beta: &[u32], insertions: &[u32]) -> Option<&BigInt> {
        self.entries.get(&(beta.to_vec(), insertions.to_vec()))
    }

    pub fn lookup(&self, beta: &[u32], insertions: &[u32]) -> Result<BigInt> {
        self.get(beta, insertions).cloned().ok_or_else(|| Error::TableMiss {
            beta: beta.to_vec(),
            insertions: insertions.to_vec(),
        })
    }

    pub fn entries(&self) -> impl Iterator<Item = (&Vec<u32>, &Vec<u32>, &BigInt)> {
        self.entries.iter().map(|((b, n), v)| (b, n, v))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn to_entries(&self) -> Vec<TableEntry> {
        self.entries()
            .map(|(b, n, v)| TableEntry { beta: b.clone(), insertions: n.clone(), value: v.to_string() })
            .collect()
    }

    /// Builds a table from serialized entries, validating each one.
    pub fn from_entries(model: &FanoModel, complete_c1: u32, entries: &[TableEntry]) -> Result<Self> {
        let mut t = GWTable::new(model, complete_c1);
        for e in entries {
            let v: BigInt = e
                .value
                .parse()
                .map_err(|_| Error::Parse(format!("`{}` is not an integer", e.value)))?;
            t.insert(e.beta.clone(), e.insertions.clone(), v)?;
        }
        Ok(t)
    }

    /// Same entries restricted to classes of c1-degree at most `c1`.
    pub fn truncated(&self, c1: u32) -> GWTable {
        let mut t = GWTable::new(&self.model, self.complete_c1.min(c1));
        t.entries = self
            .entries
            .iter()
            .filter(|((b, _), _)| self.model.c1_degree(b) <= c1)
            .map(|(k, v)| (k.clone(), v.clone()))
            .collect();
        t
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::Builtin;

    #[test]
    fn insert_validates() {
        let p2 = FanoModel::builtin(Builtin::P2);
        let mut t = GWTable::new(&p2, 3);
        t.insert(vec![1], vec![2], 1.into()).unwrap();
        assert!(t.insert(vec![1], vec![3], 1.into()).is_err());
        assert!(t.insert(vec![0], vec![0], 1.into()).is_err());
        assert!(t.insert(vec![2], vec![5], (-1).into()).is_err());
        assert_eq!(t.lookup(&[1], &[2]).unwrap(), BigInt::from(1));
        assert!(matches!(t.lookup(&[2], &[5]), Err(Error::TableMiss { .. })));
    }

    #[test]
    fn entries_round_trip() {
        let p2 = FanoModel::builtin(Builtin::P2);
        let mut t = GWTable::new(&p2, 6);
        t.insert(vec![1], vec![2], 1.into()).unwrap();
        t.insert(vec![2], vec![5], 1.into()).unwrap();
        let back = GWTable::from_entries(&p2, 6, &t.to_entries()).unwrap();
        assert_eq!(back, t);
        assert_eq!(t.truncated(3).len(), 1);
    }
}
