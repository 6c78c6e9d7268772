//! Marked digit-tables for index sets of `Z_{p^M}`.
//!
//! Rows hold base-`p` digits, least significant first, and are kept sorted
//! lexicographically starting from column 0.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::bounds::SearchBounds;
use crate::error::{Error, Result};
use crate::zn::{digits_base_p, is_prime, IndexSet, Modulus};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "DigitTableRepr", into = "DigitTableRepr")]
pub struct DigitTable {
    p: usize,
    m: usize,
    marked: Vec<usize>,
    rows: Vec<Vec<usize>>,
}

#[derive(Serialize, Deserialize)]
struct DigitTableRepr {
    p: usize,
    m: usize,
    marked: Vec<usize>,
    rows: Vec<Vec<usize>>,
}

impl TryFrom<DigitTableRepr> for DigitTable {
    type Error = Error;

    fn try_from(r: DigitTableRepr) -> Result<Self> {
        DigitTable::new(r.p, r.m, &r.marked, r.rows)
    }
}

impl From<DigitTable> for DigitTableRepr {
    fn from(t: DigitTable) -> Self {
        DigitTableRepr {
            p: t.p,
            m: t.m,
            marked: t.marked,
            rows: t.rows,
        }
    }
}

fn check_prime(p: usize) -> Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(Error::NotPrime(p))
    }
}

/// `p^m`, rejecting anything that does not fit in a `usize`.
fn checked_power(p: usize, m: usize) -> Result<usize> {
    u32::try_from(m)
        .ok()
        .and_then(|e| p.checked_pow(e))
        .ok_or_else(|| Error::InvalidArgument(format!("{p}^{m} does not fit in a machine word")))
}

/// Sorted, deduplicated columns, each below `m`.
pub(crate) fn normalize_columns(columns: &[usize], m: usize) -> Result<Vec<usize>> {
    let mut out = columns.to_vec();
    out.sort_unstable();
    out.dedup();
    if let Some(&column) = out.iter().find(|&&c| c >= m) {
        return Err(Error::ColumnOutOfRange { column, m });
    }
    Ok(out)
}

impl DigitTable {
    /// Validates digits and sorts the rows; duplicate rows are an error.
    pub fn new(p: usize, m: usize, marked: &[usize], mut rows: Vec<Vec<usize>>) -> Result<Self> {
        check_prime(p)?;
        checked_power(p, m)?;
        let marked = normalize_columns(marked, m)?;
        for row in &rows {
            if row.len() != m {
                return Err(Error::InvalidTable(format!(
                    "row {row:?} has {} digits, expected {m}",
                    row.len()
                )));
            }
            if let Some(&z) = row.iter().find(|&&z| z >= p) {
                return Err(Error::DigitRange { z, p, m: 1 });
            }
        }
        rows.sort_unstable();
        if let Some(w) = rows.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::InvalidTable(format!("repeated row {:?}", w[0])));
        }
        Ok(DigitTable { p, m, marked, rows })
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn marked(&self) -> &[usize] {
        &self.marked
    }

    pub fn rows(&self) -> &[Vec<usize>] {
        &self.rows
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// The integers encoded by the rows, ascending.
    pub fn values(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.rows.iter().map(|r| row_value(r, self.p)).collect();
        v.sort_unstable();
        v
    }

    pub fn index_set(&self) -> Result<IndexSet> {
        let modulus = Modulus::prime_power(self.p, self.m as u32)?;
        IndexSet::new(&modulus, self.values())
    }

    /// Columns holding the first difference of some pair of rows. With the
    /// rows sorted, adjacent pairs already produce every such column.
    pub fn pivots(&self) -> Vec<usize> {
        let mut out: Vec<usize> = self
            .rows
            .windows(2)
            .filter_map(|w| w[0].iter().zip(&w[1]).position(|(a, b)| a != b))
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    /// `p^{|L|}` rows and pivots exactly `L`.
    pub fn is_valid(&self) -> bool {
        checked_power(self.p, self.marked.len()).is_ok_and(|size| size == self.rows.len())
            && self.pivots() == self.marked
    }

    /// Same rows under a different marking.
    pub fn with_marked(&self, marked: &[usize]) -> Result<Self> {
        Ok(DigitTable {
            marked: normalize_columns(marked, self.m)?,
            ..self.clone()
        })
    }
}

fn row_value(row: &[usize], p: usize) -> usize {
    row.iter().rev().fold(0, |acc, &d| acc * p + d)
}

impl fmt::Display for DigitTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let labels: Vec<String> = (0..self.m)
            .map(|c| {
                let weight = self.p.pow(c as u32);
                if self.marked.binary_search(&c).is_ok() {
                    format!("[{weight}]")
                } else {
                    weight.to_string()
                }
            })
            .collect();
        let header: Vec<String> = labels
            .iter()
            .map(|l| format!("{l:>w$}", w = l.len().max(1)))
            .collect();
        writeln!(f, "{}", header.join(" ").trim_end())?;
        for row in &self.rows {
            let cells: Vec<String> = row
                .iter()
                .zip(&labels)
                .map(|(d, l)| {
                    let w = l.len().max(1);
                    // centre digits under bracketed labels
                    let pad = if l.starts_with('[') { 1 } else { 0 };
                    format!("{:>w$}", format!("{d}{}", " ".repeat(pad)), w = w)
                })
                .collect();
            writeln!(f, "{}", cells.join(" ").trim_end())?;
        }
        Ok(())
    }
}

/// Digit-table of `I` with marked columns `L`.
pub fn build_table(set: &IndexSet, p: usize, m: usize, columns: &[usize]) -> Result<DigitTable> {
    check_prime(p)?;
    let n = checked_power(p, m)?;
    if set.n() != n {
        return Err(Error::ModulusMismatch(set.n(), n));
    }
    let rows = set
        .elements()
        .iter()
        .map(|&z| digits_base_p(z, p, m))
        .collect::<Result<Vec<_>>>()?;
    DigitTable::new(p, m, columns, rows)
}

pub fn pivots(table: &DigitTable) -> Vec<usize> {
    table.pivots()
}

pub fn is_valid(table: &DigitTable) -> bool {
    table.is_valid()
}

/// `L* = {M - l - 1 : l in L}`.
pub fn dual_markings(columns: &[usize], m: usize) -> Result<Vec<usize>> {
    let cols = normalize_columns(columns, m)?;
    let mut out: Vec<usize> = cols.iter().map(|&l| m - l - 1).collect();
    out.sort_unstable();
    Ok(out)
}

/// Unmarked columns all zero, marked columns running over every digit tuple.
pub fn canonical_valid_table(p: usize, m: usize, columns: &[usize]) -> Result<DigitTable> {
    construct_valid(p, m, columns, &[], &[])
}

/// Values of one unmarked column after the first mark, as a function of the
/// marked digits to its left. Entry `sum_i t_i p^i` is the digit for
/// `t_i` = digit in the `i`-th marked column.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DependenceMap {
    pub column: usize,
    pub values: Vec<usize>,
}

impl DependenceMap {
    pub fn constant(column: usize, inputs: usize, p: usize, digit: usize) -> Self {
        DependenceMap {
            column,
            values: vec![digit; p.pow(inputs as u32)],
        }
    }
}

/// Builds the valid table whose columns before the first mark are `prefix`
/// and whose remaining unmarked columns follow `maps`. Omitted maps mean the
/// constant-zero map; an empty prefix means all zeros.
pub fn construct_valid(
    p: usize,
    m: usize,
    columns: &[usize],
    prefix: &[usize],
    maps: &[DependenceMap],
) -> Result<DigitTable> {
    check_prime(p)?;
    let rows_total = checked_power(p, columns.len())?;
    checked_power(p, m)?;
    let marks = normalize_columns(columns, m)?;
    let first = marks.first().copied().unwrap_or(m);
    let prefix_len = first;
    if !prefix.is_empty() && prefix.len() != prefix_len {
        return Err(Error::InvalidArgument(format!(
            "prefix has {} digits, expected {prefix_len}",
            prefix.len()
        )));
    }
    if let Some(&z) = prefix.iter().find(|&&z| z >= p) {
        return Err(Error::DigitRange { z, p, m: 1 });
    }
    // column -> (number of marks to its left, map values)
    let mut column_maps: Vec<Option<&[usize]>> = vec![None; m];
    for map in maps {
        let c = map.column;
        if c >= m || c <= first || marks.binary_search(&c).is_ok() {
            return Err(Error::InvalidArgument(format!(
                "column {c} is not an unmarked column after the first mark"
            )));
        }
        if column_maps[c].is_some() {
            return Err(Error::InvalidArgument(format!("two maps for column {c}")));
        }
        let inputs = marks.partition_point(|&l| l < c);
        if map.values.len() != p.pow(inputs as u32) {
            return Err(Error::InvalidArgument(format!(
                "map for column {c} has {} entries, expected {}",
                map.values.len(),
                p.pow(inputs as u32)
            )));
        }
        if let Some(&z) = map.values.iter().find(|&&z| z >= p) {
            return Err(Error::DigitRange { z, p, m: 1 });
        }
        column_maps[c] = Some(&map.values);
    }
    let mut rows = Vec::with_capacity(rows_total);
    let mut tuple = vec![0usize; marks.len()];
    for _ in 0..rows_total {
        let mut row = vec![0usize; m];
        row[..prefix.len()].copy_from_slice(prefix);
        for (&l, &t) in marks.iter().zip(&tuple) {
            row[l] = t;
        }
        for c in first + 1..m {
            if let Some(values) = column_maps[c] {
                let inputs = marks.partition_point(|&l| l < c);
                let idx = tuple[..inputs].iter().rev().fold(0, |acc, &t| acc * p + t);
                row[c] = values[idx];
            }
        }
        rows.push(row);
        advance(&mut tuple, p);
    }
    let table = DigitTable::new(p, m, &marks, rows)?;
    debug_assert!(table.is_valid());
    Ok(table)
}

/// Odometer increment, least significant first. Returns `false` on wrap-around.
fn advance(digits: &mut [usize], p: usize) -> bool {
    for d in digits.iter_mut() {
        *d += 1;
        if *d < p {
            return true;
        }
        *d = 0;
    }
    false
}

/// A valid table split at its first marked column `l0`: a constant row `c`
/// (the digits before `l0`) and `p` valid blocks on the `M - l0 - 1` columns
/// after `l0`, block `b` holding the rows with digit `b` at `l0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Decomposition {
    pub p: usize,
    pub m: usize,
    pub l0: usize,
    pub c: Vec<usize>,
    pub blocks: Vec<DigitTable>,
}

pub fn decompose(table: &DigitTable) -> Result<Decomposition> {
    if !table.is_valid() {
        return Err(Error::InvalidTable("decompose needs a valid table".into()));
    }
    let Some(&l0) = table.marked.first() else {
        return Err(Error::InvalidTable(
            "decompose needs at least one marked column".into(),
        ));
    };
    let (p, m) = (table.p, table.m);
    let mut c = vec![0; m];
    c[..l0].copy_from_slice(&table.rows[0][..l0]);
    let marked: Vec<usize> = table.marked[1..].iter().map(|&l| l - l0 - 1).collect();
    let blocks = (0..p)
        .map(|b| {
            let rows = table
                .rows
                .iter()
                .filter(|r| r[l0] == b)
                .map(|r| r[l0 + 1..].to_vec())
                .collect();
            DigitTable::new(p, m - l0 - 1, &marked, rows)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Decomposition {
        p,
        m,
        l0,
        c,
        blocks,
    })
}

/// Inverse of [`decompose`]: stacks `c + b e_{l0} + block_b` for every `b`.
pub fn recompose(d: &Decomposition) -> Result<DigitTable> {
    if d.blocks.len() != d.p || d.l0 >= d.m || d.c.len() != d.m {
        return Err(Error::InvalidArgument("malformed decomposition".into()));
    }
    let width = d.m - d.l0 - 1;
    let block_marks = d.blocks[0].marked.clone();
    let mut rows = Vec::new();
    for (b, block) in d.blocks.iter().enumerate() {
        if block.p != d.p || block.m != width || block.marked != block_marks {
            return Err(Error::InvalidArgument(format!(
                "block {b} has the wrong shape"
            )));
        }
        for r in &block.rows {
            let mut row = d.c.clone();
            row[d.l0] += b;
            for (k, &digit) in r.iter().enumerate() {
                row[d.l0 + 1 + k] += digit;
            }
            rows.push(row);
        }
    }
    let mut marked = vec![d.l0];
    marked.extend(block_marks.iter().map(|&l| l + d.l0 + 1));
    DigitTable::new(d.p, d.m, &marked, rows)
}

/// `r_0 = l_0`, `r_i` = unmarked columns between consecutive marks, the last
/// gap running up to `M`.
pub fn gap_vector(m: usize, columns: &[usize]) -> Result<Vec<usize>> {
    let marks = normalize_columns(columns, m)?;
    let mut gaps = Vec::with_capacity(marks.len() + 1);
    let mut start = 0;
    for &l in &marks {
        gaps.push(l - start);
        start = l + 1;
    }
    gaps.push(m - start);
    Ok(gaps)
}

/// `lambda(r) = sum_i r_i p^i`; the number of valid tables is `p^lambda`.
pub fn lambda(p: usize, m: usize, columns: &[usize]) -> Result<u128> {
    let gaps = gap_vector(m, columns)?;
    let mut total: u128 = 0;
    for (i, &r) in gaps.iter().enumerate() {
        let w = (p as u128).checked_pow(i as u32).unwrap_or(u128::MAX);
        total = total.saturating_add((r as u128).saturating_mul(w));
    }
    Ok(total)
}

/// Every index set whose table with marks `L` is valid, each once.
pub fn enumerate_valid(
    p: usize,
    m: usize,
    columns: &[usize],
    bounds: &SearchBounds,
) -> Result<ValidTables> {
    check_prime(p)?;
    let modulus = Modulus::prime_power(p, m as u32)?;
    let marks = normalize_columns(columns, m)?;
    let lam = lambda(p, m, &marks)?;
    let count = u32::try_from(lam)
        .ok()
        .and_then(|e| (p as u128).checked_pow(e))
        .unwrap_or(u128::MAX);
    SearchBounds::check("valid digit-table enumeration", count, bounds.enumeration)?;
    let first = marks.first().copied().unwrap_or(m);
    // one slot per free parameter: prefix digits, then each map entry
    let mut slots: Vec<Slot> = (0..first).map(|c| Slot::Prefix { column: c }).collect();
    for c in first + 1..m {
        if marks.binary_search(&c).is_err() {
            let inputs = marks.partition_point(|&l| l < c);
            slots.extend((0..p.pow(inputs as u32)).map(|entry| Slot::Map {
                column: c,
                inputs,
                entry,
            }));
        }
    }
    Ok(ValidTables {
        p,
        modulus,
        marks,
        params: vec![0; slots.len()],
        slots,
        done: false,
    })
}

#[derive(Debug, Clone, Copy)]
enum Slot {
    Prefix {
        column: usize,
    },
    Map {
        column: usize,
        inputs: usize,
        entry: usize,
    },
}

/// Iterator returned by [`enumerate_valid`].
#[derive(Debug)]
pub struct ValidTables {
    p: usize,
    modulus: Modulus,
    marks: Vec<usize>,
    slots: Vec<Slot>,
    params: Vec<usize>,
    done: bool,
}

impl ValidTables {
    fn current(&self) -> IndexSet {
        let p = self.p;
        let weight = |c: usize| p.pow(c as u32);
        let mut base = 0;
        // (weight, inputs, first slot) per map column
        let mut maps = Vec::new();
        for (k, (slot, &v)) in self.slots.iter().zip(&self.params).enumerate() {
            match *slot {
                Slot::Prefix { column } => base += v * weight(column),
                Slot::Map {
                    column,
                    inputs,
                    entry: 0,
                } => maps.push((weight(column), inputs, k)),
                Slot::Map { .. } => {}
            }
        }
        let rows = p.pow(self.marks.len() as u32);
        let mut tuple = vec![0usize; self.marks.len()];
        let mut elements = Vec::with_capacity(rows);
        for _ in 0..rows {
            let mut z = base;
            for (&l, &t) in self.marks.iter().zip(&tuple) {
                z += t * weight(l);
            }
            for &(w, inputs, first) in &maps {
                let idx = tuple[..inputs].iter().rev().fold(0, |acc, &t| acc * p + t);
                z += self.params[first + idx] * w;
            }
            elements.push(z);
            advance(&mut tuple, p);
        }
        IndexSet::new(&self.modulus, elements).expect("valid tables have distinct rows")
    }
}

impl Iterator for ValidTables {
    type Item = IndexSet;

    fn next(&mut self) -> Option<IndexSet> {
        if self.done {
            return None;
        }
        let out = self.current();
        self.done = !advance(&mut self.params, self.p);
        Some(out)
    }
}
