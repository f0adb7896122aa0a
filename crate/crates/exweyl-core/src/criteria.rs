//! Finiteness verdicts built on the class and character machinery: the
//! minus-one criterion for a single (class, character) pair, per-class
//! counting tables, the central quantum-linear-space report, and the
//! square-commutativity classification of class pairs.
//!
//! Counting routes. The number of irreducible characters rho of a finite
//! group C with a designated central element s satisfying rho(s) = -id can
//! be read off a character table of C, but it also equals
//! k(C/<s^2>) - k(C/<s>), where k counts conjugacy classes: rho factors
//! through C/<s^2> exactly when the central scalar rho(s) is +-1, and
//! through C/<s> exactly when it is +1. Both routes run and are compared
//! whenever a table fits the budget; the quotient route alone needs only
//! class data, which keeps the largest centralizers in reach.
//!
//! Pair relations. Two classes O, O' are square-commutative when
//! (st)^2 = (ts)^2 for every s in O, t in O'. The relation set is invariant
//! under simultaneous conjugation, so fixing s to a class representative
//! and letting t range over the other class loses nothing, and t can be
//! restricted further to orbit representatives of the centralizer of s
//! acting on O'. Exhaustive and reduced-orbit scans prove either sign;
//! random witness draws prove only failures.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::chartab::{table_from_partition, CharacterTable};
use crate::classes::enumerate::{partition_classes, quotient_class_count, Partition};
use crate::classes::ClassData;
use crate::exact::IntCyc;
use crate::perm::{conj_row, mul_rows, seeded_rng, ElementStore, Permutation};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BiOneKind {
    /// The representative has odd order, so no irreducible character of the
    /// centralizer evaluates to minus its degree there.
    InfiniteOddOrder,
    /// chi(s) differs from -chi(1): the central scalar is not -1.
    InfiniteChiNotMinusDeg,
    /// chi(s) = -chi(1) at a real class of even order.
    MinusOneType,
}

#[derive(Debug, Clone)]
pub struct BiOneVerdict {
    pub class_index: usize,
    pub char_row: usize,
    pub kind: BiOneKind,
    /// The evaluated chi(s), kept for reporting.
    pub chi_at_s: IntCyc,
    pub degree: u64,
}

/// Judge one (class, character) pair. `ct` is a character table of the
/// centralizer of the class representative s, `s_col` the column holding s
/// there (a singleton class, since s is central in its own centralizer),
/// and `char_row` the character under judgment.
pub fn bi_one_verdict(
    cd: &ClassData,
    class_index: usize,
    ct: &CharacterTable,
    s_col: usize,
    char_row: usize,
) -> Result<BiOneVerdict> {
    let cls = cd.class(class_index);
    if !cd.is_real_class(class_index) {
        return Err(Error::scope(format!(
            "class {class_index} is not real; the minus-one criterion does not apply"
        )));
    }
    if ct.class_size(s_col) != 1 {
        return Err(Error::input(format!(
            "column {s_col} has class size {}, but the judged element must be central \
             in the table's group",
            ct.class_size(s_col)
        )));
    }
    if ct.class_order(s_col) != cls.order as u64 {
        return Err(Error::mismatch(format!(
            "column {s_col} holds an element of order {}, expected {}",
            ct.class_order(s_col),
            cls.order
        )));
    }
    let degree = ct.degree(char_row);
    let value = ct.value(char_row, s_col).clone();
    let kind = if cls.order % 2 == 1 {
        BiOneKind::InfiniteOddOrder
    } else if value.equals_integer(-(degree as i128)) {
        BiOneKind::MinusOneType
    } else {
        BiOneKind::InfiniteChiNotMinusDeg
    };
    Ok(BiOneVerdict {
        class_index,
        char_row,
        kind,
        chi_at_s: value,
        degree,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum RowRoute {
    /// Odd representative order forces a zero count outright.
    OddOrder,
    /// Quotient class counting only; no table fit the budget.
    QuotientOnly,
    /// Character table and quotient counting, cross-checked.
    TableAndQuotient,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub enum RowEntry {
    Counts {
        /// Number of irreducible characters of the centralizer.
        nu1: u64,
        /// Characters that are not of minus-one type at the class.
        nu2: u64,
        minus_one: u64,
        route: RowRoute,
    },
    Unavailable {
        reason: String,
    },
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TableRow {
    pub class_index: usize,
    pub order: u64,
    pub size: u64,
    pub centralizer_order: u128,
    pub entry: RowEntry,
}

#[derive(Debug, Clone)]
pub struct MinusOneBudget {
    /// Largest group order for which a full character table (and with it
    /// the cross-checking table route) is attempted.
    pub max_table_order: u128,
}

impl Default for MinusOneBudget {
    fn default() -> Self {
        MinusOneBudget {
            max_table_order: 100_000,
        }
    }
}

fn minus_rows(table: &CharacterTable, col: usize) -> Vec<usize> {
    (0..table.num_chars())
        .filter(|&r| {
            table
                .value(r, col)
                .equals_integer(-(table.degree(r) as i128))
        })
        .collect()
}

/// Minus-one count for a central element of an enumerated group, by
/// quotient class counting. `k` is the class count of the group itself.
fn central_minus_by_quotients(part: &Partition, s: &Permutation, k: u64) -> Result<u64> {
    let k2 = if s.pow(2).is_identity() {
        k
    } else {
        quotient_class_count(part, &s.pow(2))? as u64
    };
    let k1 = quotient_class_count(part, s)? as u64;
    if k1 > k2 {
        return Err(Error::mismatch(format!(
            "quotient class counts out of order: k/<s^2> = {k2} < k/<s> = {k1}"
        )));
    }
    Ok(k2 - k1)
}

/// One row per conjugacy class: how many irreducible characters of the
/// centralizer send the representative to minus their degree. Every row
/// that fits the budget is computed by two independent routes and the
/// results compared; rows whose centralizer is too large to enumerate are
/// reported unavailable, except that class counts alone settle the central
/// rows through quotient counting on the already-known class data.
pub fn minus_one_table(
    cd: &ClassData,
    budget: &MinusOneBudget,
    seed: u64,
) -> Result<Vec<TableRow>> {
    minus_one_table_threaded(cd, budget, seed, 1)
}

/// `minus_one_table` with the independent per-class centralizer work
/// spread over `threads` workers. The whole-group cross-check table stays
/// on the calling thread: it is one build that cannot be split.
pub fn minus_one_table_threaded(
    cd: &ClassData,
    budget: &MinusOneBudget,
    seed: u64,
    threads: usize,
) -> Result<Vec<TableRow>> {
    let nc = cd.num_classes();
    let central: Vec<usize> = cd.center();

    // Whole-group table for cross-checking the central rows, when it fits.
    let whole = if cd.group.order() <= budget.max_table_order {
        let marks: Vec<Permutation> = central
            .iter()
            .map(|&c| cd.class(c).representative.clone())
            .collect();
        let part = partition_classes(&cd.group)?;
        let (table, cols, _) = table_from_partition(&part, cd.group.order(), &marks, seed)?;
        if table.num_chars() != nc {
            return Err(Error::mismatch(format!(
                "full-group table has {} characters but class data lists {nc} classes",
                table.num_chars()
            )));
        }
        Some((table, cols))
    } else {
        None
    };

    let mut entries: Vec<Option<RowEntry>> = vec![None; nc];
    let mut pending: Vec<usize> = Vec::new();
    for c in 0..nc {
        let cls = cd.class(c);
        let order = cls.order as u64;
        let s = &cls.representative;

        if cls.size == 1 {
            // Central in the whole group: nu1 is the class count we already
            // hold, and the quotient route runs on the class data directly.
            let nu1 = nc as u64;
            let (minus, mut route) = if order % 2 == 1 {
                (0, RowRoute::OddOrder)
            } else {
                let k2 = if s.pow(2).is_identity() {
                    nu1
                } else {
                    cd.quotient_class_count(&s.pow(2))? as u64
                };
                let k1 = cd.quotient_class_count(s)? as u64;
                if k1 > k2 {
                    return Err(Error::mismatch(format!(
                        "quotient class counts out of order at class {c}: {k2} < {k1}"
                    )));
                }
                (k2 - k1, RowRoute::QuotientOnly)
            };
            if let Some((table, cols)) = &whole {
                let pos = central.iter().position(|&x| x == c).expect("central class");
                let counted = minus_rows(table, cols[pos]).len() as u64;
                if counted != minus {
                    return Err(Error::mismatch(format!(
                        "central class {c}: table route counts {counted}, \
                         quotient route counts {minus}"
                    )));
                }
                if order % 2 == 0 {
                    route = RowRoute::TableAndQuotient;
                }
            }
            entries[c] = Some(RowEntry::Counts {
                nu1,
                nu2: nu1 - minus,
                minus_one: minus,
                route,
            });
        } else if cls.centralizer_order > budget.max_table_order {
            entries[c] = Some(RowEntry::Unavailable {
                reason: format!(
                    "centralizer order {} exceeds the table budget {}",
                    cls.centralizer_order, budget.max_table_order
                ),
            });
        } else {
            pending.push(c);
        }
    }

    if threads <= 1 || pending.len() <= 1 {
        for &c in &pending {
            entries[c] = Some(noncentral_entry(cd, c, seed)?);
        }
    } else {
        let next = std::sync::atomic::AtomicUsize::new(0);
        let computed: Vec<(usize, Result<RowEntry>)> = std::thread::scope(|scope| {
            let handles: Vec<_> = (0..threads.min(pending.len()))
                .map(|_| {
                    scope.spawn(|| {
                        let mut out = Vec::new();
                        loop {
                            let i = next.fetch_add(1, std::sync::atomic::Ordering::Relaxed);
                            let Some(&c) = pending.get(i) else { break };
                            out.push((c, noncentral_entry(cd, c, seed)));
                        }
                        out
                    })
                })
                .collect();
            handles
                .into_iter()
                .flat_map(|h| h.join().expect("table worker panicked"))
                .collect()
        });
        for (c, entry) in computed {
            entries[c] = Some(entry?);
        }
    }

    let mut rows = Vec::with_capacity(nc);
    for (c, entry) in entries.into_iter().enumerate() {
        let cls = cd.class(c);
        rows.push(TableRow {
            class_index: c,
            order: cls.order as u64,
            size: cls.size,
            centralizer_order: cls.centralizer_order,
            entry: entry.expect("every class row is filled"),
        });
    }
    Ok(rows)
}

/// Both counting routes for one non-central class whose centralizer fits
/// the table budget. Independent across classes, so callers may fan out.
fn noncentral_entry(cd: &ClassData, c: usize, seed: u64) -> Result<RowEntry> {
    let cls = cd.class(c);
    let s = &cls.representative;
    let cgroup = cd.centralizer(c)?;
    let part = partition_classes(&cgroup)?;
    let nu1 = part.sizes.len() as u64;
    if cls.order % 2 == 1 {
        return Ok(RowEntry::Counts {
            nu1,
            nu2: nu1,
            minus_one: 0,
            route: RowRoute::OddOrder,
        });
    }
    let minus_q = central_minus_by_quotients(&part, s, nu1)?;
    let (table, cols, _) =
        table_from_partition(&part, cgroup.order(), std::slice::from_ref(s), seed)?;
    if table.num_chars() != nu1 as usize {
        return Err(Error::mismatch(format!(
            "centralizer table of class {c} has {} characters, partition has {nu1}",
            table.num_chars()
        )));
    }
    let minus_t = minus_rows(&table, cols[0]).len() as u64;
    if minus_t != minus_q {
        return Err(Error::mismatch(format!(
            "class {c}: table route counts {minus_t}, quotient route counts {minus_q}"
        )));
    }
    Ok(RowEntry::Counts {
        nu1,
        nu2: nu1 - minus_t,
        minus_one: minus_t,
        route: RowRoute::TableAndQuotient,
    })
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct QlsCharacter {
    pub char_row: usize,
    pub degree: u64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CentralQlsEntry {
    pub class_index: usize,
    pub order: u64,
    /// Number of minus-one-type characters at the class: the admissible
    /// building blocks for a central quantum linear space.
    pub minus_count: u64,
    /// The table rows themselves, when the full-group table fit the budget.
    pub characters: Option<Vec<QlsCharacter>>,
}

/// Report the minus-one-type characters at every non-identity central
/// class. A trivial center yields an empty report.
pub fn central_qls_classification(
    cd: &ClassData,
    budget: &MinusOneBudget,
    seed: u64,
) -> Result<Vec<CentralQlsEntry>> {
    let central: Vec<usize> = cd
        .center()
        .into_iter()
        .filter(|&c| cd.class(c).order > 1)
        .collect();
    if central.is_empty() {
        return Ok(Vec::new());
    }

    let whole = if cd.group.order() <= budget.max_table_order {
        let marks: Vec<Permutation> = central
            .iter()
            .map(|&c| cd.class(c).representative.clone())
            .collect();
        let part = partition_classes(&cd.group)?;
        Some(table_from_partition(&part, cd.group.order(), &marks, seed)?)
    } else {
        None
    };

    let nc = cd.num_classes() as u64;
    let mut entries = Vec::with_capacity(central.len());
    for (pos, &c) in central.iter().enumerate() {
        let cls = cd.class(c);
        let s = &cls.representative;
        let minus_count = if cls.order % 2 == 1 {
            0
        } else {
            let k2 = if s.pow(2).is_identity() {
                nc
            } else {
                cd.quotient_class_count(&s.pow(2))? as u64
            };
            let k1 = cd.quotient_class_count(s)? as u64;
            k2.checked_sub(k1).ok_or_else(|| {
                Error::mismatch("quotient class counts out of order at a central class")
            })?
        };
        let characters = match &whole {
            Some((table, cols, _)) => {
                let rows = minus_rows(table, cols[pos]);
                if rows.len() as u64 != minus_count {
                    return Err(Error::mismatch(format!(
                        "central class {c}: table lists {} minus-one characters, \
                         quotient counting expects {minus_count}",
                        rows.len()
                    )));
                }
                Some(
                    rows.into_iter()
                        .map(|r| QlsCharacter {
                            char_row: r,
                            degree: table.degree(r),
                        })
                        .collect(),
                )
            }
            None => None,
        };
        entries.push(CentralQlsEntry {
            class_index: c,
            order: cls.order as u64,
            minus_count,
            characters,
        });
    }
    Ok(entries)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Answer {
    Yes,
    No,
    Unknown,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ProofMode {
    /// Every pair was tested, or one class is central so the relation holds
    /// identically.
    Exhaustive,
    /// One element per centralizer orbit was tested, with full coverage
    /// certified.
    ReducedOrbit,
    /// Random draws only: failures are proven, the rest stays unknown.
    Witness,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Theorem3 {
    InfiniteNotSqComm,
    InfiniteOddOrder,
    ExcludedCentralOrIdentity,
    Undetermined,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PairVerdict {
    pub i: usize,
    pub j: usize,
    pub commute: Answer,
    pub square_commute: Answer,
    pub proof: ProofMode,
    pub commute_witness: Option<(Permutation, Permutation)>,
    pub square_witness: Option<(Permutation, Permutation)>,
    pub theorem3: Option<Theorem3>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PairMode {
    Exhaustive,
    Reduced,
    Witness,
}

#[derive(Debug, Clone)]
pub struct PairBudget {
    /// Random draws per pair before witness search gives up.
    pub witness_draws: u32,
    /// Largest class a plain exhaustive scan will walk.
    pub max_exhaustive_class: u64,
    /// Largest class the reduced-orbit scan will enumerate.
    pub max_reduced_class: u64,
}

impl Default for PairBudget {
    fn default() -> Self {
        PairBudget {
            witness_draws: 100_000,
            max_exhaustive_class: 150_000,
            max_reduced_class: 3_000_000,
        }
    }
}

fn row_of(p: &Permutation) -> Vec<u8> {
    p.images().iter().map(|&v| v as u8).collect()
}

fn perm_of(row: &[u8]) -> Permutation {
    Permutation::from_images(row.iter().map(|&b| b as u16).collect())
}

/// Tests the fixed anchor s against candidates t, tracking the first
/// refutation of each relation.
struct RelScan {
    srow: Vec<u8>,
    st: Vec<u8>,
    ts: Vec<u8>,
    stst: Vec<u8>,
    tsts: Vec<u8>,
    commute_witness: Option<Vec<u8>>,
    square_witness: Option<Vec<u8>>,
}

impl RelScan {
    fn new(s: &Permutation) -> RelScan {
        let d = s.degree();
        RelScan {
            srow: row_of(s),
            st: vec![0; d],
            ts: vec![0; d],
            stst: vec![0; d],
            tsts: vec![0; d],
            commute_witness: None,
            square_witness: None,
        }
    }

    fn test(&mut self, trow: &[u8]) {
        mul_rows(&self.srow, trow, &mut self.st);
        mul_rows(trow, &self.srow, &mut self.ts);
        if self.st == self.ts {
            return;
        }
        if self.commute_witness.is_none() {
            self.commute_witness = Some(trow.to_vec());
        }
        if self.square_witness.is_none() {
            mul_rows(&self.st, &self.st, &mut self.stst);
            mul_rows(&self.ts, &self.ts, &mut self.tsts);
            if self.stst != self.tsts {
                self.square_witness = Some(trow.to_vec());
            }
        }
    }

    fn both_refuted(&self) -> bool {
        self.commute_witness.is_some() && self.square_witness.is_some()
    }

    /// Verdict under the assumption that every candidate was covered.
    fn conclusive(self, i: usize, j: usize, proof: ProofMode, anchor: &Permutation) -> PairVerdict {
        let wit = |w: &Option<Vec<u8>>| w.as_ref().map(|r| (anchor.clone(), perm_of(r)));
        PairVerdict {
            i,
            j,
            commute: if self.commute_witness.is_some() {
                Answer::No
            } else {
                Answer::Yes
            },
            square_commute: if self.square_witness.is_some() {
                Answer::No
            } else {
                Answer::Yes
            },
            proof,
            commute_witness: wit(&self.commute_witness),
            square_witness: wit(&self.square_witness),
            theorem3: None,
        }
    }

    /// Verdict when only refutations count.
    fn witness_only(self, i: usize, j: usize, anchor: &Permutation) -> PairVerdict {
        let wit = |w: &Option<Vec<u8>>| w.as_ref().map(|r| (anchor.clone(), perm_of(r)));
        PairVerdict {
            i,
            j,
            commute: if self.commute_witness.is_some() {
                Answer::No
            } else {
                Answer::Unknown
            },
            square_commute: if self.square_witness.is_some() {
                Answer::No
            } else {
                Answer::Unknown
            },
            proof: ProofMode::Witness,
            commute_witness: wit(&self.commute_witness),
            square_witness: wit(&self.square_witness),
            theorem3: None,
        }
    }
}

/// Elements of one conjugacy class, either as ids into the group's element
/// store or as materialized rows.
enum ClassElems<'a> {
    Stored { store: &'a ElementStore, ids: Vec<u32> },
    Rows(Vec<Vec<u8>>),
}

impl ClassElems<'_> {
    fn len(&self) -> usize {
        match self {
            ClassElems::Stored { ids, .. } => ids.len(),
            ClassElems::Rows(rows) => rows.len(),
        }
    }

    fn row(&self, idx: usize) -> &[u8] {
        match self {
            ClassElems::Stored { store, ids } => store.row(ids[idx]),
            ClassElems::Rows(rows) => &rows[idx],
        }
    }
}

/// Materialize a class: id scan for enumerated groups, breadth-first
/// closure under conjugation by the group generators otherwise. The count
/// is certified against the recorded class size.
fn class_elems<'a>(cd: &'a ClassData, c: usize, cap: u64) -> Result<ClassElems<'a>> {
    let cls = cd.class(c);
    if cls.size > cap {
        return Err(Error::budget(format!(
            "class {c} has {} elements, over the scan budget {cap}",
            cls.size
        )));
    }
    if let Some(store) = cd.enumerated_store() {
        let ids: Vec<u32> = (0..store.len() as u32)
            .filter(|&id| cd.class_of_store_id(id) == Some(c))
            .collect();
        if ids.len() as u64 != cls.size {
            return Err(Error::mismatch(format!(
                "store scan found {} elements of class {c}, expected {}",
                ids.len(),
                cls.size
            )));
        }
        return Ok(ClassElems::Stored { store, ids });
    }

    let degree = cls.representative.degree();
    let gen_rows: Vec<Vec<u8>> = cd.group.generators.iter().map(row_of).collect();
    let start = row_of(&cls.representative);
    let mut index: HashMap<Vec<u8>, u32> = HashMap::new();
    let mut rows: Vec<Vec<u8>> = Vec::new();
    index.insert(start.clone(), 0);
    rows.push(start);
    let mut head = 0usize;
    let mut out = vec![0u8; degree];
    while head < rows.len() {
        for g in &gen_rows {
            conj_row(&rows[head], g, &mut out);
            if !index.contains_key(out.as_slice()) {
                index.insert(out.clone(), rows.len() as u32);
                rows.push(out.clone());
                if rows.len() as u64 > cls.size {
                    return Err(Error::mismatch(format!(
                        "conjugation closure of class {c} passed its recorded size {}",
                        cls.size
                    )));
                }
            }
        }
        head += 1;
    }
    if rows.len() as u64 != cls.size {
        return Err(Error::mismatch(format!(
            "conjugation closure of class {c} found {} elements, expected {}",
            rows.len(),
            cls.size
        )));
    }
    Ok(ClassElems::Rows(rows))
}

/// Anchor the larger class's representative and walk the smaller class in
/// full. Conclusive in both directions.
fn exhaustive_pair(
    cd: &ClassData,
    i: usize,
    j: usize,
    budget: &PairBudget,
) -> Result<PairVerdict> {
    let (anchor_class, scan_class) = if cd.class(i).size >= cd.class(j).size {
        (i, j)
    } else {
        (j, i)
    };
    let anchor = cd.class(anchor_class).representative.clone();
    let elems = class_elems(cd, scan_class, budget.max_exhaustive_class)?;
    let mut scan = RelScan::new(&anchor);
    for idx in 0..elems.len() {
        scan.test(elems.row(idx));
        if scan.both_refuted() {
            break;
        }
    }
    Ok(scan.conclusive(i, j, ProofMode::Exhaustive, &anchor))
}

/// Anchor one representative s and test one element per orbit of the
/// centralizer of s acting on the other class by conjugation. Coverage is
/// certified by accounting for every element of the scanned class.
fn reduced_pair(cd: &ClassData, i: usize, j: usize, budget: &PairBudget) -> Result<PairVerdict> {
    // With an element store the scanned class costs no extra memory, so
    // walk the larger class there and keep the cheaper centralizer.
    // Without one the scanned class must be materialized: walk the smaller.
    let (anchor_class, scan_class) = if cd.enumerated_store().is_some() {
        if cd.class(i).size <= cd.class(j).size {
            (i, j)
        } else {
            (j, i)
        }
    } else if cd.class(i).size >= cd.class(j).size {
        (i, j)
    } else {
        (j, i)
    };
    let anchor = cd.class(anchor_class).representative.clone();
    let kgens: Vec<Vec<u8>> = cd
        .centralizer(anchor_class)?
        .generators
        .iter()
        .map(row_of)
        .collect();
    let elems = class_elems(cd, scan_class, budget.max_reduced_class)?;
    let n = elems.len();

    // Positions of the scanned class elements for orbit bookkeeping.
    let index_of: HashMap<&[u8], u32> = (0..n).map(|idx| (elems.row(idx), idx as u32)).collect();

    let degree = anchor.degree();
    let mut scan = RelScan::new(&anchor);
    let mut visited = vec![false; n];
    let mut covered = 0usize;
    let mut queue: Vec<u32> = Vec::new();
    let mut out = vec![0u8; degree];
    for start in 0..n {
        if visited[start] {
            continue;
        }
        // One test per centralizer orbit: conjugating t by an element
        // commuting with s moves (s, t) to a simultaneously conjugate pair.
        scan.test(elems.row(start));
        visited[start] = true;
        covered += 1;
        queue.clear();
        queue.push(start as u32);
        let mut head = 0usize;
        while head < queue.len() {
            let cur = queue[head] as usize;
            head += 1;
            for g in &kgens {
                conj_row(elems.row(cur), g, &mut out);
                let idx = *index_of.get(out.as_slice()).ok_or_else(|| {
                    Error::mismatch("centralizer conjugation left the scanned class")
                })? as usize;
                if !visited[idx] {
                    visited[idx] = true;
                    covered += 1;
                    queue.push(idx as u32);
                }
            }
        }
    }
    if covered != n {
        return Err(Error::mismatch(format!(
            "orbit sweep covered {covered} of {n} class elements"
        )));
    }
    Ok(scan.conclusive(i, j, ProofMode::ReducedOrbit, &anchor))
}

/// Random conjugates of one representative against the other. Proves only
/// failures; what survives the draw budget stays unknown.
fn witness_pair(cd: &ClassData, i: usize, j: usize, draws: u32, seed: u64) -> PairVerdict {
    let anchor = cd.class(i).representative.clone();
    let rep_j = &cd.class(j).representative;
    let mut scan = RelScan::new(&anchor);
    scan.test(&row_of(rep_j));
    let mut rng = seeded_rng(pair_seed(seed, i, j));
    for _ in 0..draws {
        if scan.both_refuted() {
            break;
        }
        let g = cd.group.uniform_element(&mut rng);
        scan.test(&row_of(&rep_j.conjugate_by(&g)));
    }
    scan.witness_only(i, j, &anchor)
}

fn pair_seed(seed: u64, i: usize, j: usize) -> u64 {
    seed ^ (i as u64)
        .wrapping_mul(0x9e37_79b9_7f4a_7c15)
        .wrapping_add((j as u64).wrapping_mul(0xbf58_476d_1ce4_e5b9))
}

/// A pair where one class is central holds both relations identically.
fn central_pair(cd: &ClassData, i: usize, j: usize) -> Option<PairVerdict> {
    if cd.class(i).size != 1 && cd.class(j).size != 1 {
        return None;
    }
    Some(PairVerdict {
        i,
        j,
        commute: Answer::Yes,
        square_commute: Answer::Yes,
        proof: ProofMode::Exhaustive,
        commute_witness: None,
        square_witness: None,
        theorem3: None,
    })
}

/// One pair, one method. Exhaustive and reduced modes are conclusive and
/// error out when the class sizes pass their budgets; witness mode never
/// errors but may leave answers unknown.
pub fn pair_commutativity(
    cd: &ClassData,
    i: usize,
    j: usize,
    mode: PairMode,
    budget: &PairBudget,
    seed: u64,
) -> Result<PairVerdict> {
    if let Some(v) = central_pair(cd, i, j) {
        return Ok(v);
    }
    match mode {
        PairMode::Exhaustive => exhaustive_pair(cd, i, j, budget),
        PairMode::Reduced => reduced_pair(cd, i, j, budget),
        PairMode::Witness => Ok(witness_pair(cd, i, j, budget.witness_draws, seed)),
    }
}

/// Verdicts for every unordered pair of classes, with the finiteness
/// classification filled in. Cheap witness draws run first since failures
/// are abundant; survivors escalate to a conclusive scan when either class
/// fits a budget, and to the full witness budget otherwise.
pub fn theorem3_verdicts(
    cd: &ClassData,
    budget: &PairBudget,
    seed: u64,
) -> Result<Vec<PairVerdict>> {
    let nc = cd.num_classes();
    let mut verdicts = Vec::with_capacity(nc * (nc + 1) / 2);
    for i in 0..nc {
        for j in i..nc {
            verdicts.push(resolve_pair(cd, i, j, budget, seed)?);
        }
    }

    let excluded: Vec<bool> = (0..nc).map(|c| cd.class(c).size == 1).collect();
    for v in &mut verdicts {
        v.theorem3 = Some(classify_pair(cd, v, &excluded));
    }
    Ok(verdicts)
}

fn resolve_pair(
    cd: &ClassData,
    i: usize,
    j: usize,
    budget: &PairBudget,
    seed: u64,
) -> Result<PairVerdict> {
    if let Some(v) = central_pair(cd, i, j) {
        return Ok(v);
    }
    let quick = witness_pair(cd, i, j, budget.witness_draws.min(64), seed);
    if quick.commute == Answer::No && quick.square_commute == Answer::No {
        return Ok(quick);
    }
    let min_size = cd.class(i).size.min(cd.class(j).size);
    if min_size <= budget.max_exhaustive_class {
        return exhaustive_pair(cd, i, j, budget);
    }
    if min_size <= budget.max_reduced_class {
        return reduced_pair(cd, i, j, budget);
    }
    Ok(witness_pair(cd, i, j, budget.witness_draws, seed))
}

fn classify_pair(cd: &ClassData, v: &PairVerdict, excluded: &[bool]) -> Theorem3 {
    if excluded[v.i] || excluded[v.j] {
        return Theorem3::ExcludedCentralOrIdentity;
    }
    if v.square_commute == Answer::No {
        return Theorem3::InfiniteNotSqComm;
    }
    // Odd order of either representative rules out minus-one-type
    // characters on its class, independent of the pair relation.
    if cd.class(v.i).order % 2 == 1 || cd.class(v.j).order % 2 == 1 {
        return Theorem3::InfiniteOddOrder;
    }
    Theorem3::Undetermined
}
