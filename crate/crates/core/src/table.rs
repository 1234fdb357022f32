//! Bigraded dimension tables `(t, s) ↦ dim`.

use std::collections::BTreeMap;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TableEntry {
    pub dim: u64,
    pub labels: Vec<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TableMeta {
    pub family: String,
    pub rank: usize,
    pub n: usize,
    /// Free-form warnings, e.g. extrapolated closed forms.
    pub flags: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BigradedTable {
    pub entries: BTreeMap<(i64, i64), TableEntry>,
    pub t_min: i64,
    pub t_max: i64,
    pub certified: bool,
    pub meta: TableMeta,
}

/// First `(t, s)` where two tables disagree, with both dimensions.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Mismatch {
    pub t: i64,
    pub s: i64,
    pub left: u64,
    pub right: u64,
}

impl BigradedTable {
    pub fn new(t_min: i64, t_max: i64, meta: TableMeta) -> Self {
        Self {
            entries: BTreeMap::new(),
            t_min,
            t_max,
            certified: true,
            meta,
        }
    }

    pub fn in_window(&self, t: i64) -> bool {
        self.t_min <= t && t <= self.t_max
    }

    /// Adds one class; `label` is recorded only when given.
    pub fn add(&mut self, t: i64, s: i64, label: Option<String>) {
        let e = self.entries.entry((t, s)).or_default();
        e.dim += 1;
        if let Some(l) = label {
            e.labels.push(l);
        }
    }

    pub fn dim(&self, t: i64, s: i64) -> u64 {
        self.entries.get(&(t, s)).map_or(0, |e| e.dim)
    }

    /// Total dimension in degree `t`.
    pub fn dim_t(&self, t: i64) -> u64 {
        self.entries.range((t, i64::MIN)..=(t, i64::MAX)).map(|(_, e)| e.dim).sum()
    }

    pub fn dims(&self) -> BTreeMap<(i64, i64), u64> {
        self.entries.iter().map(|(k, e)| (*k, e.dim)).collect()
    }

    pub fn total(&self) -> u64 {
        self.entries.values().map(|e| e.dim).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Keeps only entries satisfying `keep`.
    pub fn filtered<F: Fn(i64, i64) -> bool>(&self, keep: F) -> Self {
        let mut out = self.clone();
        out.entries.retain(|&(t, s), _| keep(t, s));
        out
    }

    /// Sorts the labels of every entry.
    pub fn sort_labels(&mut self) {
        for e in self.entries.values_mut() {
            e.labels.sort();
        }
    }

    /// Smallest `(t, s)` (lexicographically) with different dimensions.
    pub fn first_mismatch(&self, other: &BigradedTable) -> Option<Mismatch> {
        let mut keys: Vec<(i64, i64)> = self.entries.keys().chain(other.entries.keys()).copied().collect();
        keys.sort();
        keys.dedup();
        keys.into_iter().find_map(|(t, s)| {
            let (a, b) = (self.dim(t, s), other.dim(t, s));
            (a != b).then_some(Mismatch { t, s, left: a, right: b })
        })
    }
}
