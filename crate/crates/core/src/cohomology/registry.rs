//! Published cohomology dimensions of `GC_2` and `GC_3`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::CohomologyTable;
use crate::graphs::Parity;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum KnownTable {
    /// Dimensions of `H^k(GC_2)`.
    Even,
    /// Dimensions of `H^k(GC_3)`.
    Odd,
}

impl KnownTable {
    pub fn n(self) -> u8 {
        match self {
            KnownTable::Even => 2,
            KnownTable::Odd => 3,
        }
    }

    pub fn parity(self) -> Parity {
        match self {
            KnownTable::Even => Parity::Even,
            KnownTable::Odd => Parity::Odd,
        }
    }

    pub fn for_parity(parity: Parity) -> Self {
        match parity {
            Parity::Even => KnownTable::Even,
            Parity::Odd => KnownTable::Odd,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EntryFlag {
    Exact,
    /// Computed with non-certified ranks; an upper bound.
    Uncertain,
    /// Only an upper bound is known.
    UpperBound,
    /// Obtained by other means and listed for completeness.
    External,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct RegistryEntry {
    pub table: KnownTable,
    pub g: usize,
    pub k: i64,
    pub value: usize,
    pub flag: EntryFlag,
    pub note: Option<&'static str>,
}

impl RegistryEntry {
    /// Whether a computed dimension is consistent with this entry. Uncertain
    /// and bound entries only bound the value from above.
    pub fn accepts(&self, h: usize) -> bool {
        match self.flag {
            EntryFlag::Exact | EntryFlag::External => h == self.value,
            EntryFlag::Uncertain | EntryFlag::UpperBound => h <= self.value,
        }
    }
}

/// Read-only map `(n, g, k) -> dimension`.
#[derive(Debug, Clone)]
pub struct KnownValueRegistry {
    entries: BTreeMap<(u8, usize, i64), RegistryEntry>,
}

const GRT_DIMS: [usize; 27] = [
    1, 0, 1, 0, 1, 1, 1, 1, 2, 2, 3, 3, 4, 5, 7, 8, 11, 13, 17, 21, 28, 34, 45, 56, 73, 92, 120,
];

const ODD_TOP: [usize; 13] = [1, 1, 1, 2, 2, 3, 4, 5, 6, 8, 9, 11, 13];

impl KnownValueRegistry {
    pub fn published() -> Self {
        let mut r = KnownValueRegistry {
            entries: BTreeMap::new(),
        };
        use EntryFlag::*;
        use KnownTable::{Even, Odd};

        for (i, &v) in GRT_DIMS.iter().enumerate() {
            r.add(Even, i + 3, 0, v, Exact, None);
        }
        r.add_run(Even, 1, 4..=13, &[0; 10]);
        r.add_run(Even, 2, 5..=13, &[0; 9]);
        r.add_run(Even, 3, 6..=13, &[1, 0, 1, 1, 2, 2, 2, 4]);
        r.add_run(Even, 4, 7..=11, &[0; 5]);
        r.add_run(Even, 5, 8..=11, &[0; 4]);
        r.add_run(Even, 6, 9..=11, &[0, 0, 1]);
        r.add_run(Even, 7, 10..=11, &[1, 0]);
        r.add(Even, 11, 8, 0, Exact, None);
        r.add(Even, 12, 9, 0, Exact, None);
        r.add(Even, 13, 10, 1, UpperBound, None);
        r.add(Even, 14, 11, 1, UpperBound, None);

        for (i, &v) in ODD_TOP.iter().enumerate() {
            r.add(Odd, i + 2, -3, v, Exact, None);
        }
        r.add_run(Odd, -4, 4..=11, &[0; 8]);
        r.add_run(Odd, -5, 5..=11, &[0; 7]);
        r.add_run(Odd, -6, 6..=10, &[1, 1, 2, 3, 5]);
        r.add(Odd, 11, -6, 7, Uncertain, Some("either 7 or 6"));
        r.add_run(Odd, -7, 7..=10, &[0; 4]);
        r.add(Odd, 11, -7, 1, Uncertain, Some("either 1 or 0"));
        r.add_run(Odd, -8, 8..=11, &[0; 4]);
        r.add_run(Odd, -9, 9..=11, &[0, 0, 1]);
        r.add_run(Odd, -10, 10..=11, &[0, 0]);
        r.add(Odd, 11, -11, 0, Exact, None);
        for g in 12..=16 {
            r.add(Odd, g, -(g as i64), 0, External, None);
        }
        r.add(
            Odd,
            17,
            -17,
            0,
            External,
            Some("listed with degree label -16; placed at -17 on the diagonal k = -g"),
        );
        r
    }

    fn add(
        &mut self,
        table: KnownTable,
        g: usize,
        k: i64,
        value: usize,
        flag: EntryFlag,
        note: Option<&'static str>,
    ) {
        let entry = RegistryEntry {
            table,
            g,
            k,
            value,
            flag,
            note,
        };
        let previous = self.entries.insert((table.n(), g, k), entry);
        debug_assert!(
            previous.is_none(),
            "duplicate entry ({}, {g}, {k})",
            table.n()
        );
    }

    fn add_run(
        &mut self,
        table: KnownTable,
        k: i64,
        gs: std::ops::RangeInclusive<usize>,
        values: &[usize],
    ) {
        assert_eq!(gs.clone().count(), values.len());
        for (g, &v) in gs.zip(values) {
            self.add(table, g, k, v, EntryFlag::Exact, None);
        }
    }

    pub fn lookup(&self, n: u8, g: usize, k: i64) -> Option<&RegistryEntry> {
        self.entries.get(&(n, g, k))
    }

    pub fn entries(&self) -> impl Iterator<Item = &RegistryEntry> {
        self.entries.values()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

impl Default for KnownValueRegistry {
    fn default() -> Self {
        KnownValueRegistry::published()
    }
}

/// Degrees where the cohomology is known to vanish: `k < 0` or `k > g - 3`
/// for `GC_2`, `k > -3` or (for `g >= 3`) `k < -g` for `GC_3`.
pub fn vanishes(table: KnownTable, g: usize, k: i64) -> bool {
    let g = g as i64;
    match table {
        KnownTable::Even => k < 0 || k > g - 3,
        KnownTable::Odd => k > -3 || (g >= 3 && k < -g),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ComparisonStatus {
    Match,
    Mismatch,
    /// No published value and no vanishing statement applies.
    Unknown,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComparisonRow {
    pub k: i64,
    pub h: usize,
    pub expected: Option<usize>,
    pub flag: Option<EntryFlag>,
    pub status: ComparisonStatus,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegistryComparison {
    pub rows: Vec<ComparisonRow>,
}

impl RegistryComparison {
    pub fn all_match(&self) -> bool {
        self.rows
            .iter()
            .all(|r| r.status != ComparisonStatus::Mismatch)
    }

    pub fn mismatches(&self) -> impl Iterator<Item = &ComparisonRow> {
        self.rows
            .iter()
            .filter(|r| r.status == ComparisonStatus::Mismatch)
    }

    pub fn matched(&self) -> usize {
        self.rows
            .iter()
            .filter(|r| r.status == ComparisonStatus::Match)
            .count()
    }
}

/// Compares each degree of `table` with the registry, falling back to the
/// vanishing ranges where no entry is listed.
pub fn compare_with_registry(
    table: &CohomologyTable,
    registry: &KnownValueRegistry,
) -> RegistryComparison {
    let known = KnownTable::for_parity(table.spec.parity);
    let g = table.spec.loops;
    let rows = table
        .rows
        .iter()
        .map(|row| {
            let (expected, flag, ok) = match registry.lookup(known.n(), g, row.k) {
                Some(e) => (Some(e.value), Some(e.flag), Some(e.accepts(row.h))),
                None if vanishes(known, g, row.k) => (Some(0), None, Some(row.h == 0)),
                None => (None, None, None),
            };
            let status = match ok {
                Some(true) => ComparisonStatus::Match,
                Some(false) => ComparisonStatus::Mismatch,
                None => ComparisonStatus::Unknown,
            };
            ComparisonRow {
                k: row.k,
                h: row.h,
                expected,
                flag,
                status,
            }
        })
        .collect();
    RegistryComparison { rows }
}
