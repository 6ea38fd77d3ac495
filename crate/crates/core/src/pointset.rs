//! Subsets of F_q^d as membership bitsets, and the point-set file format.
//!
//! File format (JSON):
//!
//! ```json
//! {"p":5,"k":1,"modulus":null,"d":2,"points":[0,11,22,8,19]}
//! ```
//!
//! `points` holds lexicographic point indices (see [`crate::geometry`]);
//! writers emit them ascending.

use std::path::Path;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::geometry::Space;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PointSet {
    dim: usize,
    universe: usize,
    bits: Vec<u64>,
    card: usize,
}

impl PointSet {
    pub fn empty(space: &Space) -> Self {
        Self::with_universe(space.dim(), space.size())
    }

    fn with_universe(dim: usize, universe: usize) -> Self {
        Self {
            dim,
            universe,
            bits: vec![0; universe.div_ceil(64)],
            card: 0,
        }
    }

    pub fn full(space: &Space) -> Self {
        Self::from_indices(space, 0..space.size()).expect("indices in range")
    }

    pub fn from_indices(space: &Space, indices: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut s = Self::empty(space);
        for i in indices {
            if i >= s.universe {
                return Err(Error::OutOfRange(format!(
                    "point index {i} >= q^d = {}",
                    s.universe
                )));
            }
            s.insert(i);
        }
        Ok(s)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// q^d.
    pub fn universe(&self) -> usize {
        self.universe
    }

    /// |E|.
    pub fn card(&self) -> usize {
        self.card
    }

    pub fn is_empty(&self) -> bool {
        self.card == 0
    }

    #[inline]
    pub fn contains(&self, i: usize) -> bool {
        i < self.universe && self.bits[i / 64] >> (i % 64) & 1 == 1
    }

    /// Returns `true` if the point was newly added.
    pub fn insert(&mut self, i: usize) -> bool {
        assert!(i < self.universe, "point index out of range");
        let (w, b) = (i / 64, i % 64);
        let fresh = self.bits[w] >> b & 1 == 0;
        self.bits[w] |= 1 << b;
        self.card += fresh as usize;
        fresh
    }

    /// Returns `true` if the point was present.
    pub fn remove(&mut self, i: usize) -> bool {
        if !self.contains(i) {
            return false;
        }
        self.bits[i / 64] &= !(1 << (i % 64));
        self.card -= 1;
        true
    }

    /// Member indices in ascending order.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.bits.iter().enumerate().flat_map(|(w, &word)| {
            let mut word = word;
            std::iter::from_fn(move || {
                if word == 0 {
                    return None;
                }
                let b = word.trailing_zeros() as usize;
                word &= word - 1;
                Some(w * 64 + b)
            })
        })
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    pub fn same_space(&self, other: &PointSet) -> Result<()> {
        if self.dim != other.dim || self.universe != other.universe {
            return Err(Error::DimensionMismatch(format!(
                "sets live in spaces of size {} (d={}) and {} (d={})",
                self.universe, self.dim, other.universe, other.dim
            )));
        }
        Ok(())
    }

    pub fn check_space(&self, space: &Space) -> Result<()> {
        if self.dim != space.dim() || self.universe != space.size() {
            return Err(Error::DimensionMismatch(format!(
                "set has d={} and q^d={}, space has d={} and q^d={}",
                self.dim,
                self.universe,
                space.dim(),
                space.size()
            )));
        }
        Ok(())
    }

    pub fn to_file(&self, space: &Space) -> PointSetFile {
        let f = space.field();
        PointSetFile {
            p: f.p() as u64,
            k: f.k(),
            modulus: f.modulus().map(<[u32]>::to_vec),
            d: space.dim(),
            points: self.iter().map(|i| i as u64).collect(),
        }
    }
}

/// On-disk representation of a point set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PointSetFile {
    pub p: u64,
    pub k: u32,
    pub modulus: Option<Vec<u32>>,
    pub d: usize,
    pub points: Vec<u64>,
}

impl PointSetFile {
    /// Rebuilds the field, the space and the set. Duplicate or out-of-range
    /// indices are rejected.
    pub fn into_set(self) -> Result<(Space, PointSet)> {
        let field = Arc::new(FieldSpec::new(self.p, self.k, self.modulus)?);
        let space = Space::new(field, self.d)?;
        let mut set = PointSet::empty(&space);
        for i in self.points {
            let i = usize::try_from(i)
                .ok()
                .filter(|&i| i < space.size())
                .ok_or_else(|| Error::Parse(format!("point index {i} out of range")))?;
            if !set.insert(i) {
                return Err(Error::Parse(format!("duplicate point index {i}")));
            }
        }
        Ok((space, set))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("plain data serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }

    pub fn read(path: &Path) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        crate::report::write_atomic(path, self.to_json().as_bytes())
    }
}

#[cfg(test)]
mod tests {
    use proptest::prelude::*;

    use super::*;

    fn space(p: u64, d: usize) -> Space {
        Space::new(Arc::new(FieldSpec::prime(p).unwrap()), d).unwrap()
    }

    #[test]
    fn basic_ops() {
        let s = space(5, 2);
        let mut e = PointSet::empty(&s);
        assert!(e.is_empty());
        assert!(e.insert(3));
        assert!(!e.insert(3));
        assert!(e.insert(24));
        assert_eq!(e.card(), 2);
        assert_eq!(e.to_vec(), vec![3, 24]);
        assert!(e.remove(3));
        assert!(!e.remove(3));
        assert_eq!(e.card(), 1);
        assert!(PointSet::from_indices(&s, [25]).is_err());
        assert_eq!(PointSet::full(&s).card(), 25);
    }

    #[test]
    fn file_parse_errors() {
        assert!(matches!(PointSetFile::from_json("{"), Err(Error::Parse(_))));
        let dup = r#"{"p":5,"k":1,"modulus":null,"d":2,"points":[1,1]}"#;
        assert!(PointSetFile::from_json(dup).unwrap().into_set().is_err());
        let big = r#"{"p":5,"k":1,"modulus":null,"d":2,"points":[25]}"#;
        assert!(PointSetFile::from_json(big).unwrap().into_set().is_err());
        let even = r#"{"p":2,"k":1,"modulus":null,"d":2,"points":[]}"#;
        assert_eq!(
            PointSetFile::from_json(even).unwrap().into_set().unwrap_err(),
            Error::EvenCharacteristic(2)
        );
    }

    #[test]
    fn documented_example_parses() {
        let s = r#"{"p":5,"k":1,"modulus":null,"d":2,"points":[0,7,14,21,3]}"#;
        let (space, set) = PointSetFile::from_json(s).unwrap().into_set().unwrap();
        assert_eq!(space.size(), 25);
        assert_eq!(set.to_vec(), vec![0, 3, 7, 14, 21]);
    }

    proptest! {
        #[test]
        fn card_matches_popcount_and_file_round_trips(
            idx in proptest::collection::vec(0usize..343, 0..200)
        ) {
            let sp = space(7, 3);
            let set = PointSet::from_indices(&sp, idx.iter().copied()).unwrap();
            let mut uniq = idx.clone();
            uniq.sort_unstable();
            uniq.dedup();
            prop_assert_eq!(set.card(), uniq.len());
            prop_assert_eq!(set.to_vec(), uniq);
            let file = set.to_file(&sp);
            let (sp2, back) = PointSetFile::from_json(&file.to_json()).unwrap().into_set().unwrap();
            prop_assert_eq!(sp2, sp);
            prop_assert_eq!(back, set);
        }
    }
}
