//! The three `rows x (2k+1)` label tables and their column/row-sum
//! identities, plus the two-sequence tracing of the five-row bracelet table.
//!
//! Columns are 1-based throughout. Every closed form is split at column
//! `k+1`: the first `k+1` columns follow one progression and the last `k`
//! another.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::TableError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TableKind {
    /// Five rows `uw, vw, xw, xu, xv`; entries `[1, 10k+5]`.
    M1,
    /// Five rows `R1..R5` used for peanuts and bracelets; entries `[1, 10k+5]`.
    Pt,
    /// Eleven rows for `(2k+1)P3 v O3`; entries `[1, 22k+11]`.
    M3,
}

impl TableKind {
    pub fn as_str(self) -> &'static str {
        match self {
            TableKind::M1 => "m1",
            TableKind::Pt => "pt",
            TableKind::M3 => "m3",
        }
    }

    pub fn row_names(self) -> &'static [&'static str] {
        match self {
            TableKind::M1 => &["uw", "vw", "xw", "xu", "xv"],
            TableKind::Pt => &["R1", "R2", "R3", "R4", "R5"],
            TableKind::M3 => &["L", "R", "C1", "C2", "C3", "L1", "L2", "L3", "R1", "R2", "R3"],
        }
    }

    /// Largest entry for parameter `k`.
    pub fn max_entry(self, k: u32) -> u64 {
        let k = u64::from(k);
        match self {
            TableKind::M1 | TableKind::Pt => 10 * k + 5,
            TableKind::M3 => 22 * k + 11,
        }
    }
}

impl std::str::FromStr for TableKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "m1" => Ok(TableKind::M1),
            "pt" => Ok(TableKind::Pt),
            "m3" => Ok(TableKind::M3),
            other => Err(format!("unknown table kind {other:?} (expected m1, pt or m3)")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LabelTable {
    pub kind: TableKind,
    pub k: u32,
    pub entries: Vec<Vec<u32>>,
}

impl LabelTable {
    pub fn columns(&self) -> u32 {
        2 * self.k + 1
    }

    pub fn rows(&self) -> &'static [&'static str] {
        self.kind.row_names()
    }

    /// Entry at 0-based `row`, 1-based `col`.
    pub fn at(&self, row: usize, col: u32) -> u32 {
        self.entries[row][(col - 1) as usize]
    }

    pub fn row(&self, name: &str) -> Option<&[u32]> {
        let idx = self.rows().iter().position(|r| *r == name)?;
        Some(&self.entries[idx])
    }

    fn column_sum(&self, rows: &[usize], col: u32) -> u64 {
        rows.iter().map(|&r| u64::from(self.at(r, col))).sum()
    }

    fn rows_total(&self, rows: &[usize], cols: impl Iterator<Item = u32> + Clone) -> u64 {
        rows.iter()
            .map(|&r| cols.clone().map(|c| u64::from(self.at(r, c))).sum::<u64>())
            .sum()
    }

    /// Entries form a permutation of `[1, max_entry]`.
    pub fn is_bijective(&self) -> bool {
        let max = self.kind.max_entry(self.k) as usize;
        let mut seen = vec![false; max + 1];
        let mut count = 0;
        for &e in self.entries.iter().flatten() {
            let e = e as usize;
            if e == 0 || e > max || seen[e] {
                return false;
            }
            seen[e] = true;
            count += 1;
        }
        count == max
    }

    /// Header `i,1,...,2k+1` then one line per named row.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("i");
        for c in 1..=self.columns() {
            write!(out, ",{c}").unwrap();
        }
        out.push('\n');
        for (name, row) in self.rows().iter().zip(&self.entries) {
            out.push_str(name);
            for e in row {
                write!(out, ",{e}").unwrap();
            }
            out.push('\n');
        }
        out
    }
}

fn check_k(k: u32) -> Result<(), TableError> {
    if k == 0 {
        Err(TableError::InvalidK(0))
    } else {
        Ok(())
    }
}

/// Fill a table row by row; `f(row, i, head)` where `head` is `i <= k+1`.
fn fill(kind: TableKind, k: u32, f: impl Fn(usize, i64, bool) -> i64) -> LabelTable {
    let k64 = i64::from(k);
    let entries = (0..kind.row_names().len())
        .map(|r| {
            (1..=2 * k64 + 1)
                .map(|i| {
                    let v = f(r, i, i <= k64 + 1);
                    debug_assert!(v > 0);
                    v as u32
                })
                .collect()
        })
        .collect();
    LabelTable { kind, k, entries }
}

/// Five-row table for the fan families.
pub fn table_m1(k: u32) -> Result<LabelTable, TableError> {
    check_k(k)?;
    let k_ = i64::from(k);
    Ok(fill(TableKind::M1, k, |r, i, head| match (r, head) {
        (0, true) => 2 * i - 1,
        (0, false) => 2 * i - 2 * k_ - 2,
        (1, true) => 3 * k_ + 3 - i,
        (1, false) => 5 * k_ + 4 - i,
        (2, _) => 6 * k_ + 4 - i,
        (3, true) => 10 * k_ + 7 - 2 * i,
        (3, false) => 12 * k_ + 8 - 2 * i,
        (4, true) => 7 * k_ + 3 + i,
        (4, false) => 5 * k_ + 2 + i,
        _ => unreachable!(),
    }))
}

/// Five-row table for peanuts and bracelets.
pub fn table_pt(k: u32) -> Result<LabelTable, TableError> {
    check_k(k)?;
    let k_ = i64::from(k);
    Ok(fill(TableKind::Pt, k, |r, i, head| match (r, head) {
        (0, true) => 2 * i - 1,
        (0, false) => 2 * i - 2 * k_ - 2,
        (1, _) => 4 * k_ + 3 - i,
        (2, true) => 5 * k_ + 4 - i,
        (2, false) => 7 * k_ + 5 - i,
        (3, _) => 8 * k_ + 5 - i,
        (4, true) => 8 * k_ + 3 + 2 * i,
        (4, false) => 6 * k_ + 2 + 2 * i,
        _ => unreachable!(),
    }))
}

/// Eleven-row table for `(2k+1)P3 v O3`.
pub fn table_m3(k: u32) -> Result<LabelTable, TableError> {
    check_k(k)?;
    let k_ = i64::from(k);
    Ok(fill(TableKind::M3, k, |r, i, head| match (r, head) {
        (0, true) => 2 * i - 1,
        (0, false) => 2 * i - 2 * k_ - 2,
        (1, true) => 3 * k_ + 3 - i,
        (1, false) => 5 * k_ + 4 - i,
        (2, _) => 6 * k_ + 4 - i,
        (3, _) => 10 * k_ + 6 - i,
        (4, _) => 6 * k_ + 3 + i,
        (5, true) => 14 * k_ + 9 - 2 * i,
        (5, false) => 16 * k_ + 10 - 2 * i,
        (6, true) => 18 * k_ + 8 + 2 * i,
        (6, false) => 16 * k_ + 7 + 2 * i,
        (7, true) => 18 * k_ + 11 - 2 * i,
        (7, false) => 20 * k_ + 12 - 2 * i,
        (8, true) => 22 * k_ + 13 - 2 * i,
        (8, false) => 24 * k_ + 14 - 2 * i,
        (9, true) => 11 * k_ + 5 + i,
        (9, false) => 9 * k_ + 4 + i,
        (10, true) => 14 * k_ + 6 + 2 * i,
        (10, false) => 12 * k_ + 5 + 2 * i,
        _ => unreachable!(),
    }))
}

pub fn table(kind: TableKind, k: u32) -> Result<LabelTable, TableError> {
    match kind {
        TableKind::M1 => table_m1(k),
        TableKind::Pt => table_pt(k),
        TableKind::M3 => table_m3(k),
    }
}

/// Names of the identities that held.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ObservationReport {
    pub kind: Option<TableKind>,
    pub k: u32,
    pub checked: Vec<String>,
}

impl ObservationReport {
    fn new(kind: TableKind, k: u32) -> Self {
        ObservationReport {
            kind: Some(kind),
            k,
            checked: Vec::new(),
        }
    }
}

fn expect_kind(t: &LabelTable, kind: TableKind) -> Result<(), TableError> {
    if t.kind == kind {
        Ok(())
    } else {
        Err(TableError::WrongKind {
            expected: kind.as_str(),
            found: t.kind.as_str(),
        })
    }
}

fn violated(index: &str, detail: String) -> TableError {
    TableError::ObservationViolated {
        index: index.to_string(),
        detail,
    }
}

/// Verify the column-sum identities of the five-row fan table. With
/// `blocks = Some((r, s))`, `rs = 2k+1`, also verify the block pairing used
/// for equal-sum merges.
pub fn check_m1_observations(t: &LabelTable, blocks: Option<(u32, u32)>) -> Result<ObservationReport, TableError> {
    expect_kind(t, TableKind::M1)?;
    let k = u64::from(t.k);
    let n = t.columns();
    let mut report = ObservationReport::new(TableKind::M1, t.k);

    if !t.is_bijective() {
        return Err(violated("bijection", format!("entries are not a permutation of [1,{}]", 10 * k + 5)));
    }
    report.checked.push("bijection".into());

    let s1 = 9 * k + 6;
    let s2 = 10 * k + 6;
    for c in 1..=n {
        let got = t.column_sum(&[0, 1, 2], c);
        if got != s1 {
            return Err(violated("1", format!("column {c}: first three rows sum to {got}, not {s1}")));
        }
    }
    report.checked.push("1".into());

    for c in 1..=n {
        for pair in [[0, 3], [1, 4]] {
            let got = t.column_sum(&pair, c);
            if got != s2 {
                return Err(violated("2", format!("column {c}: rows {pair:?} sum to {got}, not {s2}")));
            }
        }
    }
    report.checked.push("2".into());

    for c in 1..=n {
        let got = t.column_sum(&[2, 3, 4], c);
        let want = 23 * k + 12 - 2 * u64::from(c - 1);
        if got != want {
            return Err(violated("3", format!("column {c}: last three rows sum to {got}, not {want}")));
        }
    }
    report.checked.push("3".into());

    for c in 2..=n {
        let prev = t.column_sum(&[3, 4], c - 1);
        let got = t.column_sum(&[3, 4], c);
        if got + 1 != prev {
            return Err(violated("4", format!("columns {}..{c}: rows 4+5 go {prev} -> {got}", c - 1)));
        }
    }
    report.checked.push("4".into());

    let total = t.rows_total(&[2, 3, 4], 1..=n);
    let want = (7 * k + 4) * (6 * k + 3);
    if total != want {
        return Err(violated("5", format!("last three rows total {total}, not {want}")));
    }
    report.checked.push("5".into());

    if let Some((r, s)) = blocks {
        if r == 0 || s == 0 || r * s != n {
            return Err(TableError::InvalidBlocks(format!("{r} x {s} != {n}")));
        }
        let s3 = u64::from(s) * (21 * k + 12);
        let block = |j: u32| ((j - 1) * s + 1)..=(j * s);
        for j in 1..=r {
            let got = t.rows_total(&[2], block(j)) + t.rows_total(&[3, 4], block(r + 1 - j));
            if got != s3 {
                return Err(violated(
                    "6",
                    format!("block {j} row 3 with block {} rows 4-5 sums to {got}, not {s3}", r + 1 - j),
                ));
            }
        }
        let mid = t.rows_total(&[2, 3, 4], block(r.div_ceil(2)));
        if mid != s3 {
            return Err(violated("6", format!("middle block sums to {mid}, not {s3}")));
        }
        report.checked.push(format!("6 ({r}x{s})"));
    }
    Ok(report)
}

/// Verify the row/column identities of the eleven-row table.
pub fn check_m3_observations(t: &LabelTable) -> Result<ObservationReport, TableError> {
    expect_kind(t, TableKind::M3)?;
    let k = u64::from(t.k);
    let n = t.columns();
    let mut report = ObservationReport::new(TableKind::M3, t.k);

    if !t.is_bijective() {
        return Err(violated("bijection", format!("entries are not a permutation of [1,{}]", 22 * k + 11)));
    }
    report.checked.push("bijection".into());

    let a = 25 * k + 15;
    for c in 1..=n {
        let got = t.column_sum(&[0, 1, 2, 3, 4], c);
        if got != a {
            return Err(violated("a", format!("column {c}: first five rows sum to {got}, not {a}")));
        }
    }
    report.checked.push("a".into());

    let b = 50 * k + 27;
    for c in 1..=n {
        for (side, rows) in [("L", [0, 5, 6, 7]), ("R", [1, 8, 9, 10])] {
            let got = t.column_sum(&rows, c);
            if got != b {
                return Err(violated("b", format!("column {c}: {side} rows sum to {got}, not {b}")));
            }
        }
    }
    report.checked.push("b".into());

    let want = (2 * k + 1) * (39 * k + 21);
    for a in 0..3 {
        let got = t.rows_total(&[2 + a, 5 + a, 8 + a], 1..=n);
        if got != want {
            return Err(violated("c", format!("rows C{0}, L{0}, R{0} total {got}, not {want}", a + 1)));
        }
    }
    report.checked.push("c".into());
    Ok(report)
}

/// A table cell: 0-based row, 1-based column.
pub type Cell = (usize, u32);

/// The two sequences traced through the five-row bracelet table. Positions
/// are 1-based in the documentation below; vectors are 0-based as usual.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TracedSequences {
    pub k: u32,
    pub s1: Vec<u32>,
    pub s2: Vec<u32>,
    pub s1_cells: Vec<Cell>,
    pub s2_cells: Vec<Cell>,
    /// Column shared by terms `2j-1, 2j` of both sequences, for `j = 1..=2k+1`;
    /// the row-3 entry of that column closes the pair.
    pub r3_order: Vec<u32>,
}

impl TracedSequences {
    /// Row-3 entries in pair order.
    pub fn rung_labels(&self, t: &LabelTable) -> Vec<u32> {
        self.r3_order.iter().map(|&c| t.at(2, c)).collect()
    }
}

const R1: usize = 0;
const R2: usize = 1;
const R4: usize = 3;
const R5: usize = 4;

fn segment(rows: [usize; 4], i: u32, k: u32) -> [Cell; 8] {
    let [a, b, c, d] = rows;
    [
        (a, i),
        (b, i),
        (c, 2 * k + 2 - i),
        (d, 2 * k + 2 - i),
        (a, k + 1 + i),
        (b, k + 1 + i),
        (c, k + 1 - i),
        (d, k + 1 - i),
    ]
}

fn trace_cells(k: u32, first: [usize; 2], rows: [usize; 4]) -> Vec<Cell> {
    let mut cells = vec![(first[0], k + 1), (first[1], k + 1)];
    let full = if k.is_multiple_of(2) { k / 2 } else { (k - 1) / 2 };
    for i in 1..=full {
        cells.extend(segment(rows, i, k));
    }
    if k % 2 == 1 {
        let (h, t) = (k.div_ceil(2), (3 * k + 3) / 2);
        cells.extend([(rows[0], h), (rows[1], h), (rows[2], t), (rows[3], t)]);
    }
    cells
}

/// Trace the two sequences and verify every identity they are used for.
pub fn trace_sequences(t: &LabelTable) -> Result<TracedSequences, TableError> {
    expect_kind(t, TableKind::Pt)?;
    let k = t.k;
    let s1_cells = trace_cells(k, [R2, R1], [R5, R4, R2, R1]);
    let s2_cells = trace_cells(k, [R4, R5], [R1, R2, R4, R5]);
    let value = |cells: &[Cell]| cells.iter().map(|&(r, c)| t.at(r, c)).collect::<Vec<_>>();
    let seq = TracedSequences {
        k,
        s1: value(&s1_cells),
        s2: value(&s2_cells),
        r3_order: s1_cells.chunks(2).map(|p| p[0].1).collect(),
        s1_cells,
        s2_cells,
    };
    verify_sequences(t, &seq)?;
    Ok(seq)
}

fn scheme(detail: String) -> TableError {
    TableError::SequenceSchemeViolated(detail)
}

fn verify_sequences(t: &LabelTable, seq: &TracedSequences) -> Result<(), TableError> {
    let k = u64::from(t.k);
    let len = 4 * t.k as usize + 2;
    let pair_sum = 10 * k + 6;
    if seq.s1.len() != len || seq.s2.len() != len {
        return Err(scheme(format!("lengths {} and {}, expected {len}", seq.s1.len(), seq.s2.len())));
    }

    // cover rows 1, 2, 4, 5 exactly once, never row 3
    let mut seen = vec![vec![false; t.columns() as usize + 1]; 5];
    for &(r, c) in seq.s1_cells.iter().chain(&seq.s2_cells) {
        if r == 2 || c == 0 || c > t.columns() || seen[r][c as usize] {
            return Err(scheme(format!("cell ({}, {c}) repeated or out of range", r + 1)));
        }
        seen[r][c as usize] = true;
    }

    let ends = [
        ("first", u64::from(seq.s1[0] + seq.s2[0])),
        ("last", u64::from(seq.s1[len - 1] + seq.s2[len - 1])),
    ];
    for (which, got) in ends {
        if got != pair_sum {
            return Err(scheme(format!("(A) {which} terms sum to {got}, not {pair_sum}")));
        }
    }

    for (name, s) in [("S1", &seq.s1), ("S2", &seq.s2)] {
        // 1-based positions 2r, 2r+1 are 0-based 2r-1, 2r
        for r in 1..=2 * t.k as usize {
            let got = u64::from(s[2 * r - 1] + s[2 * r]);
            if got != pair_sum {
                return Err(scheme(format!("(B) {name} terms {} and {} sum to {got}", 2 * r, 2 * r + 1)));
            }
        }
    }

    let low = 9 * k + 6;
    let high = 21 * k + 12;
    for (name, cells) in [("S1", &seq.s1_cells), ("S2", &seq.s2_cells)] {
        for (j, pair) in cells.chunks(2).enumerate() {
            let (a, b) = (pair[0], pair[1]);
            if a.1 != b.1 || a.1 != seq.r3_order[j] {
                return Err(scheme(format!("(C) {name} pair {} spans columns {} and {}", j + 1, a.1, b.1)));
            }
            let sum = u64::from(t.at(a.0, a.1) + t.at(b.0, b.1) + t.at(2, a.1));
            let rows = [a.0.min(b.0), a.0.max(b.0)];
            let want = match rows {
                [R1, R2] => low,
                [R4, R5] => high,
                _ => return Err(scheme(format!("(C) {name} pair {} mixes rows {rows:?}", j + 1))),
            };
            if sum != want {
                return Err(scheme(format!("(C) {name} pair {} with row 3 sums to {sum}, not {want}", j + 1)));
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn m1_k1_golden() {
        let t = table_m1(1).unwrap();
        assert_eq!(
            t.entries,
            vec![
                vec![1, 3, 2],
                vec![5, 4, 6],
                vec![9, 8, 7],
                vec![15, 13, 14],
                vec![11, 12, 10]
            ]
        );
    }

    #[test]
    fn m1_printed_endpoints() {
        // columns 1, k+1, k+2 and 2k+1 of the printed table, as functions of k
        for k in 1..=200u32 {
            let t = table_m1(k).unwrap();
            let c = |col: u32| -> Vec<u32> { (0..5).map(|r| t.at(r, col)).collect() };
            assert_eq!(c(1), vec![1, 3 * k + 2, 6 * k + 3, 10 * k + 5, 7 * k + 4]);
            assert_eq!(c(k + 1), vec![2 * k + 1, 2 * k + 2, 5 * k + 3, 8 * k + 5, 8 * k + 4]);
            assert_eq!(c(k + 2), vec![2, 4 * k + 2, 5 * k + 2, 10 * k + 4, 6 * k + 4]);
            assert_eq!(c(2 * k + 1), vec![2 * k, 3 * k + 3, 4 * k + 3, 8 * k + 6, 7 * k + 3]);
            if k >= 2 {
                assert_eq!(c(2), vec![3, 3 * k + 1, 6 * k + 2, 10 * k + 3, 7 * k + 5]);
                assert_eq!(c(k), vec![2 * k - 1, 2 * k + 3, 5 * k + 4, 8 * k + 7, 8 * k + 3]);
                assert_eq!(c(2 * k), vec![2 * k - 2, 3 * k + 4, 4 * k + 4, 8 * k + 8, 7 * k + 2]);
            }
            if k >= 3 {
                assert_eq!(c(k + 3), vec![4, 4 * k + 1, 5 * k + 1, 10 * k + 2, 6 * k + 5]);
            }
        }
    }

    #[test]
    fn m1_k4_third_observation() {
        let t = table_m1(4).unwrap();
        assert_eq!((t.at(2, 1), t.at(3, 1), t.at(4, 1)), (27, 45, 32));
        assert_eq!(t.column_sum(&[2, 3, 4], 1), 104);
    }

    #[test]
    fn m1_observations_small() {
        let t = table_m1(1).unwrap();
        let rep = check_m1_observations(&t, Some((3, 1))).unwrap();
        assert!(rep.checked.contains(&"5".to_string()));
        assert_eq!(t.rows_total(&[2, 3, 4], 1..=3), 99);
        check_m1_observations(&table_m1(4).unwrap(), Some((3, 3))).unwrap();
        assert!(matches!(
            check_m1_observations(&t, Some((2, 2))),
            Err(TableError::InvalidBlocks(_))
        ));
    }

    #[test]
    fn m1_k4_blocks_pair_to_288() {
        let t = table_m1(4).unwrap();
        for j in 1..=3u32 {
            let block = |j: u32| ((j - 1) * 3 + 1)..=(j * 3);
            let s = t.rows_total(&[2], block(j)) + t.rows_total(&[3, 4], block(4 - j));
            assert_eq!(s, 288);
        }
    }

    #[test]
    fn corrupted_table_is_rejected() {
        let mut t = table_m1(2).unwrap();
        t.entries[0].swap(0, 1);
        t.entries[1].swap(0, 1);
        assert!(matches!(
            check_m1_observations(&t, None),
            Err(TableError::ObservationViolated { .. })
        ));
        assert!(matches!(check_m3_observations(&t), Err(TableError::WrongKind { .. })));
    }

    #[test]
    fn pt_k2_and_k5_golden() {
        let t = table_pt(2).unwrap();
        assert_eq!(
            t.entries,
            vec![
                vec![1, 3, 5, 2, 4],
                vec![10, 9, 8, 7, 6],
                vec![13, 12, 11, 15, 14],
                vec![20, 19, 18, 17, 16],
                vec![21, 23, 25, 22, 24]
            ]
        );
        let t = table_pt(5).unwrap();
        assert_eq!(t.row("R3").unwrap(), &[28, 27, 26, 25, 24, 23, 33, 32, 31, 30, 29]);
        assert_eq!(t.row("R5").unwrap(), &[45, 47, 49, 51, 53, 55, 46, 48, 50, 52, 54]);
    }

    #[test]
    fn pt_printed_endpoints() {
        for k in 1..=200u32 {
            let t = table_pt(k).unwrap();
            assert!(t.is_bijective());
            let c = |col: u32| -> Vec<u32> { (0..5).map(|r| t.at(r, col)).collect() };
            assert_eq!(c(1), vec![1, 4 * k + 2, 5 * k + 3, 8 * k + 4, 8 * k + 5]);
            assert_eq!(c(k + 1), vec![2 * k + 1, 3 * k + 2, 4 * k + 3, 7 * k + 4, 10 * k + 5]);
            assert_eq!(c(k + 2), vec![2, 3 * k + 1, 6 * k + 3, 7 * k + 3, 8 * k + 6]);
            assert_eq!(c(2 * k + 1), vec![2 * k, 2 * k + 2, 5 * k + 4, 6 * k + 4, 10 * k + 4]);
            if k >= 2 {
                assert_eq!(c(k), vec![2 * k - 1, 3 * k + 3, 4 * k + 4, 7 * k + 5, 10 * k + 3]);
                assert_eq!(c(2 * k), vec![2 * k - 2, 2 * k + 3, 5 * k + 5, 6 * k + 5, 10 * k + 2]);
            }
        }
    }

    #[test]
    fn k2_sequences() {
        let seq = trace_sequences(&table_pt(2).unwrap()).unwrap();
        assert_eq!(seq.s1, vec![8, 5, 21, 20, 6, 4, 22, 17, 9, 3]);
        assert_eq!(seq.s2, vec![18, 25, 1, 10, 16, 24, 2, 7, 19, 23]);
    }

    #[test]
    fn k5_sequences_and_rungs() {
        let t = table_pt(5).unwrap();
        let seq = trace_sequences(&t).unwrap();
        assert_eq!(
            seq.s1,
            vec![17, 11, 45, 44, 12, 10, 46, 38, 18, 9, 47, 43, 13, 8, 48, 37, 19, 7, 49, 42, 14, 6]
        );
        assert_eq!(
            seq.s2,
            vec![39, 55, 1, 22, 34, 54, 2, 16, 40, 53, 3, 21, 35, 52, 4, 15, 41, 51, 5, 20, 36, 50]
        );
        assert_eq!(seq.rung_labels(&t), vec![23, 28, 29, 33, 24, 27, 30, 32, 25, 26, 31]);
    }

    #[test]
    fn k1_uses_tail_only() {
        let seq = trace_sequences(&table_pt(1).unwrap()).unwrap();
        assert_eq!(seq.s1.len(), 6);
        assert_eq!(seq.r3_order, vec![2, 1, 3]);
    }

    #[test]
    fn wrong_kind_for_tracing() {
        assert!(matches!(
            trace_sequences(&table_m1(2).unwrap()),
            Err(TableError::WrongKind { .. })
        ));
    }

    #[test]
    fn m3_k1_golden() {
        let t = table_m3(1).unwrap();
        let want: Vec<Vec<u32>> = vec![
            vec![1, 3, 2],
            vec![5, 4, 6],
            vec![9, 8, 7],
            vec![15, 14, 13],
            vec![10, 11, 12],
            vec![21, 19, 20],
            vec![28, 30, 29],
            vec![27, 25, 26],
            vec![33, 31, 32],
            vec![17, 18, 16],
            vec![22, 24, 23],
        ];
        assert_eq!(t.entries, want);
        assert_eq!(t.column_sum(&[0, 1, 2, 3, 4], 1), 40);
        assert_eq!(t.rows_total(&[2, 5, 8], 1..=3), 180);
        check_m3_observations(&t).unwrap();
        check_m3_observations(&table_m3(2).unwrap()).unwrap();
    }

    #[test]
    fn m3_printed_endpoints() {
        for k in 1..=200u32 {
            let t = table_m3(k).unwrap();
            let c = |col: u32| -> Vec<u32> { (0..11).map(|r| t.at(r, col)).collect() };
            assert_eq!(
                c(1),
                vec![
                    1,
                    3 * k + 2,
                    6 * k + 3,
                    10 * k + 5,
                    6 * k + 4,
                    14 * k + 7,
                    18 * k + 10,
                    18 * k + 9,
                    22 * k + 11,
                    11 * k + 6,
                    14 * k + 8
                ]
            );
            assert_eq!(
                c(k + 1),
                vec![
                    2 * k + 1,
                    2 * k + 2,
                    5 * k + 3,
                    9 * k + 5,
                    7 * k + 4,
                    12 * k + 7,
                    20 * k + 10,
                    16 * k + 9,
                    20 * k + 11,
                    12 * k + 6,
                    16 * k + 8
                ]
            );
            assert_eq!(
                c(k + 2),
                vec![
                    2,
                    4 * k + 2,
                    5 * k + 2,
                    9 * k + 4,
                    7 * k + 5,
                    14 * k + 6,
                    18 * k + 11,
                    18 * k + 8,
                    22 * k + 10,
                    10 * k + 6,
                    14 * k + 9
                ]
            );
            assert_eq!(
                c(2 * k + 1),
                vec![
                    2 * k,
                    3 * k + 3,
                    4 * k + 3,
                    8 * k + 5,
                    8 * k + 4,
                    12 * k + 8,
                    20 * k + 9,
                    16 * k + 10,
                    20 * k + 12,
                    11 * k + 5,
                    16 * k + 7
                ]
            );
        }
    }

    #[test]
    fn zero_k_is_rejected() {
        assert_eq!(table_m1(0), Err(TableError::InvalidK(0)));
        assert_eq!(table_pt(0), Err(TableError::InvalidK(0)));
        assert_eq!(table_m3(0), Err(TableError::InvalidK(0)));
    }

    #[test]
    fn csv_layout() {
        let csv = table_m1(1).unwrap().to_csv();
        assert_eq!(csv, "i,1,2,3\nuw,1,3,2\nvw,5,4,6\nxw,9,8,7\nxu,15,13,14\nxv,11,12,10\n");
    }
}
