//! Recurrence engines for the counting tables.
//!
//! Every table is keyed by `(n, g2)` with `g2 = 2g`. Lookups with a negative
//! size or genus, or outside a model's support, are zero; an entry inside the
//! support that has not been computed yet is an error rather than a silent
//! zero.

pub mod bipartite;
pub mod maps;
pub mod triangulations;

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::arith::MPoly;
use crate::error::{Error, Result};

/// A table of values indexed by size and doubled genus.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenusTable<V> {
    entries: BTreeMap<(u32, u32), V>,
}

impl<V> Default for GenusTable<V> {
    fn default() -> Self {
        GenusTable { entries: BTreeMap::new() }
    }
}

impl<V> GenusTable<V> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&self, n: u32, g2: u32) -> Option<&V> {
        self.entries.get(&(n, g2))
    }

    pub fn get_mut(&mut self, n: u32, g2: u32) -> Option<&mut V> {
        self.entries.get_mut(&(n, g2))
    }

    pub fn insert(&mut self, n: u32, g2: u32, value: V) {
        self.entries.insert((n, g2), value);
    }

    pub fn contains(&self, n: u32, g2: u32) -> bool {
        self.entries.contains_key(&(n, g2))
    }

    pub fn iter(&self) -> impl Iterator<Item = ((u32, u32), &V)> {
        self.entries.iter().map(|(k, v)| (*k, v))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn n_max(&self) -> u32 {
        self.entries.keys().map(|k| k.0).max().unwrap_or(0)
    }

    /// Keeps only the entries with `n <= n_max` and `g2 <= g2_max`.
    pub fn restrict(&self, n_max: u32, g2_max: u32) -> Self
    where
        V: Clone,
    {
        GenusTable {
            entries: self
                .entries
                .iter()
                .filter(|((n, g2), _)| *n <= n_max && *g2 <= g2_max)
                .map(|(k, v)| (*k, v.clone()))
                .collect(),
        }
    }
}

pub type PolyTable = GenusTable<MPoly>;
pub type IntTable = GenusTable<BigInt>;

/// Checks that every coefficient is an integer.
pub(crate) fn ensure_integral(model: &'static str, n: u32, g2: u32, p: &MPoly) -> Result<()> {
    for (m, c) in p.terms() {
        if !c.is_integer() {
            return Err(Error::NonIntegral { model, n: n as i64, g2: g2 as i64, value: format!("{c} at {m}") });
        }
    }
    Ok(())
}

pub(crate) fn to_integer(model: &'static str, n: u32, g2: u32, c: BigRational) -> Result<BigInt> {
    if c.is_integer() {
        Ok(c.to_integer())
    } else {
        Err(Error::NonIntegral { model, n: n as i64, g2: g2 as i64, value: c.to_string() })
    }
}

pub(crate) fn missing(model: &'static str, n: i64, g2: i64) -> Error {
    Error::MissingEntry { model, n, g2 }
}
