//! Expected-value tables and multiset diffing.
//!
//! Reference data ships as three CSV files: per-class statistics rows,
//! pair sets, and scalar claims. Row indices in those files follow the
//! source's own labeling, which depends on an ordering this library does
//! not reproduce, so every comparison here is a multiset comparison on
//! invariant keys (element order, nu1, nu2, minus count), never on raw
//! indices. Pair sets are compared as multisets of unordered key pairs,
//! joined through the row file of the same group.

use std::collections::BTreeMap;
use std::fmt;

use serde::Deserialize;

use crate::{Error, Result};

/// Invariant key of one class row: everything the statistics table pins
/// about a class without referencing any ordering.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RowKey {
    pub order: u64,
    pub nu1: u64,
    pub nu2: u64,
    pub minus: u64,
}

impl fmt::Display for RowKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "(order {}, nu1 {}, nu2 {}, minus {})",
            self.order, self.nu1, self.nu2, self.minus
        )
    }
}

/// One expected class row, as transcribed: `row` is the 1-based row label
/// used by the source table and is meaningful only for joining pair sets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExpectedRow {
    pub group: String,
    pub source: String,
    pub row: u32,
    pub order: u64,
    pub nu1: u64,
    pub nu2: u64,
}

impl ExpectedRow {
    pub fn minus(&self) -> u64 {
        self.nu1 - self.nu2
    }

    pub fn key(&self) -> RowKey {
        RowKey {
            order: self.order,
            nu1: self.nu1,
            nu2: self.nu2,
            minus: self.minus(),
        }
    }
}

/// Which expected pair set a pair belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PairSetKind {
    /// Pairs of classes where (st)^2 = (ts)^2 holds throughout.
    SquareCommutative,
    /// Pairs left open by the finiteness criteria.
    Theorem3Open,
}

impl PairSetKind {
    pub fn as_str(self) -> &'static str {
        match self {
            PairSetKind::SquareCommutative => "square_commutative",
            PairSetKind::Theorem3Open => "theorem3_open",
        }
    }

    fn parse(s: &str) -> Result<PairSetKind> {
        match s {
            "square_commutative" => Ok(PairSetKind::SquareCommutative),
            "theorem3_open" => Ok(PairSetKind::Theorem3Open),
            other => Err(Error::input(format!("unknown pair set kind {other:?}"))),
        }
    }
}

/// One expected unordered pair, by the source's row labels (i <= j).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExpectedPair {
    pub group: String,
    pub kind: PairSetKind,
    pub source: String,
    pub i: u32,
    pub j: u32,
}

/// One expected scalar claim, e.g. a class count or a center order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExpectedClaim {
    pub group: String,
    pub claim: String,
    pub source: String,
    pub value: u64,
}

/// All bundled expected data, parsed.
#[derive(Debug, Clone)]
pub struct ExpectedData {
    pub rows: Vec<ExpectedRow>,
    pub pairs: Vec<ExpectedPair>,
    pub claims: Vec<ExpectedClaim>,
}

#[derive(Deserialize)]
struct RawRow {
    group: String,
    source: String,
    row: u32,
    order: u64,
    nu1: u64,
    nu2: u64,
}

#[derive(Deserialize)]
struct RawPair {
    group: String,
    set: String,
    source: String,
    i: u32,
    j: u32,
}

#[derive(Deserialize)]
struct RawClaim {
    group: String,
    claim: String,
    source: String,
    value: u64,
}

fn csv_records<T: serde::de::DeserializeOwned>(name: &str, text: &str) -> Result<Vec<T>> {
    let mut rdr = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let mut out = Vec::new();
    for rec in rdr.deserialize::<T>() {
        out.push(rec.map_err(|e| Error::input(format!("{name}: {e}")))?);
    }
    Ok(out)
}

impl ExpectedData {
    /// Parse the three bundled CSV files. Validates that nu2 <= nu1 on
    /// every row and that pair labels refer to rows that exist.
    pub fn parse(rows_csv: &str, pairs_csv: &str, claims_csv: &str) -> Result<ExpectedData> {
        let rows: Vec<ExpectedRow> = csv_records::<RawRow>("rows", rows_csv)?
            .into_iter()
            .map(|r| {
                if r.nu2 > r.nu1 {
                    return Err(Error::input(format!(
                        "row {}/{}: nu2 {} exceeds nu1 {}",
                        r.group, r.row, r.nu2, r.nu1
                    )));
                }
                Ok(ExpectedRow {
                    group: r.group,
                    source: r.source,
                    row: r.row,
                    order: r.order,
                    nu1: r.nu1,
                    nu2: r.nu2,
                })
            })
            .collect::<Result<_>>()?;

        let pairs: Vec<ExpectedPair> = csv_records::<RawPair>("pairs", pairs_csv)?
            .into_iter()
            .map(|p| {
                Ok(ExpectedPair {
                    kind: PairSetKind::parse(&p.set)?,
                    group: p.group,
                    source: p.source,
                    i: p.i.min(p.j),
                    j: p.i.max(p.j),
                })
            })
            .collect::<Result<_>>()?;

        let claims: Vec<ExpectedClaim> = csv_records::<RawClaim>("claims", claims_csv)?
            .into_iter()
            .map(|c| ExpectedClaim {
                group: c.group,
                claim: c.claim,
                source: c.source,
                value: c.value,
            })
            .collect();

        let data = ExpectedData { rows, pairs, claims };
        for p in &data.pairs {
            for label in [p.i, p.j] {
                if data.row(&p.group, label).is_none() {
                    return Err(Error::input(format!(
                        "pair ({}, {}) in {} references missing row {label} of group {}",
                        p.i,
                        p.j,
                        p.kind.as_str(),
                        p.group
                    )));
                }
            }
        }
        Ok(data)
    }

    pub fn rows_for(&self, group: &str) -> Vec<&ExpectedRow> {
        self.rows.iter().filter(|r| r.group == group).collect()
    }

    pub fn row(&self, group: &str, label: u32) -> Option<&ExpectedRow> {
        self.rows.iter().find(|r| r.group == group && r.row == label)
    }

    pub fn pairs_for(&self, group: &str, kind: PairSetKind) -> Vec<&ExpectedPair> {
        self.pairs
            .iter()
            .filter(|p| p.group == group && p.kind == kind)
            .collect()
    }

    pub fn claim(&self, group: &str, name: &str) -> Option<u64> {
        self.claims
            .iter()
            .find(|c| c.group == group && c.claim == name)
            .map(|c| c.value)
    }

    /// Invariant keys of one group's expected rows.
    pub fn row_keys_for(&self, group: &str) -> Vec<RowKey> {
        self.rows_for(group).iter().map(|r| r.key()).collect()
    }

    /// One group's expected pair set as unordered invariant-key pairs,
    /// joined through the group's rows.
    pub fn pair_keys_for(&self, group: &str, kind: PairSetKind) -> Result<Vec<(RowKey, RowKey)>> {
        self.pairs_for(group, kind)
            .into_iter()
            .map(|p| {
                let a = self
                    .row(group, p.i)
                    .ok_or_else(|| Error::input(format!("{group}: missing row {}", p.i)))?
                    .key();
                let b = self
                    .row(group, p.j)
                    .ok_or_else(|| Error::input(format!("{group}: missing row {}", p.j)))?
                    .key();
                Ok(normalize_pair(a, b))
            })
            .collect()
    }
}

/// Order the two keys of an unordered pair canonically.
pub fn normalize_pair(a: RowKey, b: RowKey) -> (RowKey, RowKey) {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

/// Multiset difference in both directions: keys expected but not computed
/// (missing) and keys computed but not expected (surplus). Exact multiset
/// equality holds iff both are empty.
pub fn diff_multiset<K: Ord + Clone>(expected: &[K], computed: &[K]) -> (Vec<K>, Vec<K>) {
    let mut counts: BTreeMap<K, i64> = BTreeMap::new();
    for k in expected {
        *counts.entry(k.clone()).or_insert(0) += 1;
    }
    for k in computed {
        *counts.entry(k.clone()).or_insert(0) -= 1;
    }
    let mut missing = Vec::new();
    let mut surplus = Vec::new();
    for (k, n) in counts {
        for _ in 0..n.max(0) {
            missing.push(k.clone());
        }
        for _ in 0..(-n).max(0) {
            surplus.push(k.clone());
        }
    }
    (missing, surplus)
}

/// Outcome of one verification item. Skipped marks rows or sets that the
/// current scope could not compute; it is never a pass.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DiffStatus {
    Pass,
    Fail,
    Skipped,
}

impl fmt::Display for DiffStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DiffStatus::Pass => "PASS",
            DiffStatus::Fail => "FAIL",
            DiffStatus::Skipped => "SKIPPED",
        })
    }
}

/// One line of a verification report.
#[derive(Debug, Clone)]
pub struct DiffItem {
    pub name: String,
    pub status: DiffStatus,
    pub detail: String,
}

/// A full verification report for one group.
#[derive(Debug, Clone)]
pub struct DiffReport {
    pub group: String,
    pub items: Vec<DiffItem>,
}

impl DiffReport {
    pub fn new(group: impl Into<String>) -> DiffReport {
        DiffReport { group: group.into(), items: Vec::new() }
    }

    pub fn push(&mut self, name: impl Into<String>, status: DiffStatus, detail: impl Into<String>) {
        self.items.push(DiffItem { name: name.into(), status, detail: detail.into() });
    }

    /// Record a both-directions multiset comparison as one item. When
    /// `skipped` rows were not computed, the comparison passes iff nothing
    /// computed is surplus and the number of unmatched expected keys equals
    /// the number of skipped rows (each skip leaves exactly one expected
    /// key uncovered).
    pub fn push_multiset<K: Ord + Clone + fmt::Display>(
        &mut self,
        name: impl Into<String>,
        expected: &[K],
        computed: &[K],
        skipped: usize,
    ) {
        let (missing, surplus) = diff_multiset(expected, computed);
        let ok = surplus.is_empty() && missing.len() == skipped;
        let status = if !ok {
            DiffStatus::Fail
        } else if skipped > 0 {
            DiffStatus::Skipped
        } else {
            DiffStatus::Pass
        };
        let mut detail = format!(
            "{} expected, {} computed, {} skipped",
            expected.len(),
            computed.len(),
            skipped
        );
        if !missing.is_empty() {
            detail.push_str(&format!(
                "; expected but not computed: [{}]",
                join_keys(&missing)
            ));
        }
        if !surplus.is_empty() {
            detail.push_str(&format!(
                "; computed but not expected: [{}]",
                join_keys(&surplus)
            ));
        }
        self.push(name, status, detail);
    }

    /// Record a scalar equality check as one item.
    pub fn push_value<T: PartialEq + fmt::Display>(
        &mut self,
        name: impl Into<String>,
        expected: T,
        computed: T,
    ) {
        if expected == computed {
            self.push(name, DiffStatus::Pass, format!("{computed}"));
        } else {
            self.push(
                name,
                DiffStatus::Fail,
                format!("expected {expected}, computed {computed}"),
            );
        }
    }

    pub fn count(&self, status: DiffStatus) -> usize {
        self.items.iter().filter(|i| i.status == status).count()
    }

    /// True when nothing failed. Skipped items do not fail a report, but
    /// they keep `all_passed` distinct from `passed`.
    pub fn passed(&self) -> bool {
        self.count(DiffStatus::Fail) == 0
    }

    /// True when everything was computed and matched.
    pub fn all_passed(&self) -> bool {
        self.passed() && self.count(DiffStatus::Skipped) == 0
    }
}

impl fmt::Display for DiffReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for item in &self.items {
            writeln!(f, "{:7} {} :: {} :: {}", item.status, self.group, item.name, item.detail)?;
        }
        write!(
            f,
            "{}: {} pass, {} fail, {} skipped",
            self.group,
            self.count(DiffStatus::Pass),
            self.count(DiffStatus::Fail),
            self.count(DiffStatus::Skipped)
        )
    }
}

fn join_keys<K: fmt::Display>(keys: &[K]) -> String {
    keys.iter().map(|k| k.to_string()).collect::<Vec<_>>().join(", ")
}

/// Display adapter for unordered key pairs in diff details.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct PairKey(pub RowKey, pub RowKey);

impl fmt::Display for PairKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}, {}}}", self.0, self.1)
    }
}
