//! Published class counts, embedded from `data/published_counts.txt`.
//!
//! Each data line is `<table> <n> <k> <s> <count>`; lines starting with `#`
//! are comments.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigUint;

use crate::anf::QuotientSpace;
use crate::burnside::count_with_cells;
use crate::conjclasses::Provider;
use crate::error::{Error, Result};

const EMBEDDED: &str = include_str!("../data/published_counts.txt");

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleEntry {
    pub table: String,
    pub space: QuotientSpace,
    pub count: BigUint,
}

impl fmt::Display for OracleEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "table={} n={} k={} s={}",
            self.table,
            self.space.n(),
            self.space.k(),
            self.space.s()
        )
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct OracleTable {
    entries: Vec<OracleEntry>,
}

impl OracleTable {
    /// The table shipped with the library.
    pub fn embedded() -> Self {
        Self::parse(EMBEDDED).expect("embedded oracle data is well formed")
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut entries = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let bad = |what: &str| Error::Parse(format!("oracle line {}: {what}", i + 1));
            let fields: Vec<&str> = line.split_whitespace().collect();
            let [table, n, k, s, count] = fields.as_slice() else {
                return Err(bad("expected `<table> <n> <k> <s> <count>`"));
            };
            let n: usize = n.parse().map_err(|_| bad("bad n"))?;
            let k: i32 = k.parse().map_err(|_| bad("bad k"))?;
            let s: usize = s.parse().map_err(|_| bad("bad s"))?;
            let count: BigUint = count.parse().map_err(|_| bad("bad count"))?;
            entries.push(OracleEntry {
                table: table.to_string(),
                space: QuotientSpace::new(n, s, k)?,
                count,
            });
        }
        Ok(Self { entries })
    }

    pub fn entries(&self) -> &[OracleEntry] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Entries with `n <= max_n`, optionally restricted to one table tag.
    pub fn select(&self, max_n: usize, table: Option<&str>) -> Self {
        Self {
            entries: self
                .entries
                .iter()
                .filter(|e| e.space.n() <= max_n && table.is_none_or(|t| e.table == t))
                .cloned()
                .collect(),
        }
    }

    pub fn tables(&self) -> Vec<&str> {
        let mut tags: Vec<&str> = self.entries.iter().map(|e| e.table.as_str()).collect();
        tags.dedup();
        tags
    }
}

/// One recomputed oracle entry.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub entry: OracleEntry,
    pub computed: BigUint,
}

impl Verdict {
    pub fn passed(&self) -> bool {
        self.entry.count == self.computed
    }
}

/// Recomputes every entry, fetching cells once per `n`.
pub fn verify(table: &OracleTable, provider: &Provider, seed: u64) -> Result<Vec<Verdict>> {
    let mut by_n: BTreeMap<usize, Vec<&OracleEntry>> = BTreeMap::new();
    for e in table.entries() {
        by_n.entry(e.space.n()).or_default().push(e);
    }
    let mut computed: BTreeMap<(String, usize, i32, usize), BigUint> = BTreeMap::new();
    for (n, entries) in by_n {
        let cells = provider.cells(n, seed)?;
        let spaces: Vec<QuotientSpace> = entries.iter().map(|e| e.space).collect();
        for (e, c) in entries.iter().zip(count_with_cells(n, &spaces, &cells)?) {
            computed.insert(key(e), c);
        }
    }
    Ok(table
        .entries()
        .iter()
        .map(|e| Verdict {
            entry: e.clone(),
            computed: computed[&key(e)].clone(),
        })
        .collect())
}

fn key(e: &OracleEntry) -> (String, usize, i32, usize) {
    (e.table.clone(), e.space.n(), e.space.k(), e.space.s())
}
