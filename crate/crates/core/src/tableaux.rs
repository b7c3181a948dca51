//! Tableau families on shifted skew shapes: enumeration, weights,
//! generating functions, and the explicit one-row map.
//!
//! Entries are half-integers encoded as positive codes: `2i−1` is `i′` and
//! `2i` is `i`, so the order `1′ < 1 < 2′ < 2 < …` is integer order.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use rayon::prelude::*;
use rustc_hash::FxHashMap;
use smallvec::SmallVec;
use thiserror::Error;

use crate::polyring::{BetaInt, BetaPoly, Monomial};
use crate::shapes::{Cell, ShapeError, SkewShape, StrictPartition};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TableauError {
    #[error(transparent)]
    Shape(#[from] ShapeError),
    #[error("unknown tableau family {0:?}")]
    UnknownFamily(String),
    #[error("tableau text {0:?} does not fit the shape")]
    Parse(String),
    #[error("tableau violates {family} rules: {reason}")]
    Invalid { family: Family, reason: String },
    #[error("expected a one-row shape, got {0}")]
    WrongShape(String),
    #[error("{lambda}:{mu} needs nested shapes of equal length")]
    InvalidPair { lambda: String, mu: String },
}

/// A half-integer `i` or `i′` stored as its code.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HalfInt(pub u32);

impl HalfInt {
    pub fn unprimed(i: u32) -> Self {
        HalfInt(2 * i)
    }

    pub fn primed(i: u32) -> Self {
        HalfInt(2 * i - 1)
    }

    pub fn is_primed(self) -> bool {
        self.0 % 2 == 1
    }

    /// The integer `i` underlying `i` or `i′`.
    pub fn value(self) -> u32 {
        self.0.div_ceil(2)
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.value(), if self.is_primed() { "'" } else { "" })
    }
}

/// The eight tableau families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    ShYtP,
    ShYtQ,
    SetShYtP,
    SetShYtQ,
    ShRppP,
    ShRppQ,
    ShBtP,
    ShBtQ,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Kind {
    Single,
    SetValued,
    Rpp,
    Bar,
}

impl Family {
    pub const ALL: [Family; 8] = [
        Family::ShYtP,
        Family::ShYtQ,
        Family::SetShYtP,
        Family::SetShYtQ,
        Family::ShRppP,
        Family::ShRppQ,
        Family::ShBtP,
        Family::ShBtQ,
    ];

    pub fn is_p(self) -> bool {
        matches!(self, Family::ShYtP | Family::SetShYtP | Family::ShRppP | Family::ShBtP)
    }

    fn kind(self) -> Kind {
        match self {
            Family::ShYtP | Family::ShYtQ => Kind::Single,
            Family::SetShYtP | Family::SetShYtQ => Kind::SetValued,
            Family::ShRppP | Family::ShRppQ => Kind::Rpp,
            Family::ShBtP | Family::ShBtQ => Kind::Bar,
        }
    }

    pub fn is_set_valued(self) -> bool {
        self.kind() == Kind::SetValued
    }

    /// RPP and bar families weight terms by powers of `−β`.
    pub fn uses_negative_beta(self) -> bool {
        matches!(self.kind(), Kind::Rpp | Kind::Bar)
    }

    pub fn name(self) -> &'static str {
        match self {
            Family::ShYtP => "shyt-p",
            Family::ShYtQ => "shyt-q",
            Family::SetShYtP => "setshyt-p",
            Family::SetShYtQ => "setshyt-q",
            Family::ShRppP => "shrpp-p",
            Family::ShRppQ => "shrpp-q",
            Family::ShBtP => "shbt-p",
            Family::ShBtQ => "shbt-q",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = TableauError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.to_ascii_lowercase().replace('_', "-");
        Family::ALL
            .iter()
            .copied()
            .find(|f| f.name() == t)
            .ok_or_else(|| TableauError::UnknownFamily(s.to_string()))
    }
}

/// The entries of one cell, increasing codes.
pub type Entry = SmallVec<[u32; 4]>;

/// A filled shape. Cells follow `shape.cells()` order; single-valued
/// families store one-element entries. `blocks` assigns a block number to
/// each cell for bar tableaux and is empty otherwise.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Tableau {
    pub shape: SkewShape,
    pub cells: Vec<Cell>,
    pub entries: Vec<Entry>,
    pub blocks: Vec<u32>,
}

impl Tableau {
    pub fn new(shape: SkewShape, entries: Vec<Entry>) -> Result<Self, TableauError> {
        let cells = shape.cells()?;
        if cells.len() != entries.len() || entries.iter().any(|e| e.is_empty()) {
            return Err(TableauError::Parse(format!("{} entries for {} cells", entries.len(), cells.len())));
        }
        Ok(Tableau { shape, cells, entries, blocks: Vec::new() })
    }

    pub fn with_blocks(mut self, blocks: Vec<u32>) -> Self {
        self.blocks = blocks;
        self
    }

    /// Number of entries `|T|` summed over cells.
    pub fn total_entries(&self) -> u32 {
        self.entries.iter().map(|e| e.len() as u32).sum()
    }

    fn index_of(&self, c: Cell) -> Option<usize> {
        self.cells.binary_search(&c).ok()
    }

    /// Parses the text form, e.g. `"{1}{2'3}|{2}"` for rows from the
    /// bottom. Bar tableaux append ` #b,b,…` with one block id per cell.
    pub fn parse(shape: &SkewShape, text: &str) -> Result<Self, TableauError> {
        let err = || TableauError::Parse(text.to_string());
        let (body, blocks) = match text.split_once('#') {
            Some((b, k)) => {
                let ids: Result<Vec<u32>, _> = k.trim().split(',').map(|s| s.trim().parse::<u32>()).collect();
                (b.trim(), Some(ids.map_err(|_| err())?))
            }
            None => (text.trim(), None),
        };
        let cells = shape.cells()?;
        let nrows = shape.outer.len();
        let rows: Vec<&str> = if nrows == 0 { Vec::new() } else { body.split('|').collect() };
        if rows.len() != nrows {
            return Err(err());
        }
        let mut entries = Vec::new();
        for (r, row) in rows.iter().enumerate() {
            let want = cells.iter().filter(|c| c.row as usize == r + 1).count();
            let mut got = 0;
            let mut rest = row.trim();
            while !rest.is_empty() {
                let inner = rest.strip_prefix('{').ok_or_else(err)?;
                let close = inner.find('}').ok_or_else(err)?;
                entries.push(parse_entry(&inner[..close]).ok_or_else(err)?);
                rest = inner[close + 1..].trim_start();
                got += 1;
            }
            if got != want {
                return Err(err());
            }
        }
        let t = Tableau::new(shape.clone(), entries)?;
        Ok(match blocks {
            Some(b) if b.len() == t.cells.len() => t.with_blocks(b),
            Some(_) => return Err(err()),
            None => t,
        })
    }

    /// Checks the defining conditions of `family`.
    pub fn validate(&self, family: Family) -> Result<(), TableauError> {
        let bad = |reason: String| Err(TableauError::Invalid { family, reason });
        let kind = family.kind();
        for (k, e) in self.entries.iter().enumerate() {
            if e.is_empty() || e.windows(2).any(|w| w[0] >= w[1]) || e[0] == 0 {
                return bad(format!("cell {} has a malformed entry", self.cells[k]));
            }
            if kind != Kind::SetValued && e.len() != 1 {
                return bad(format!("cell {} must hold one entry", self.cells[k]));
            }
            if self.cells[k].is_diagonal() && family.is_p() {
                let primed = e.iter().any(|&c| c % 2 == 1);
                if kind == Kind::Rpp {
                    if !primed {
                        return bad(format!("diagonal cell {} must be primed", self.cells[k]));
                    }
                } else if primed {
                    return bad(format!("diagonal cell {} must be unprimed", self.cells[k]));
                }
            }
        }
        for (k, c) in self.cells.iter().enumerate() {
            let lo = self.entries[k][0];
            let neighbours = [(Cell::new(c.row, c.col.wrapping_sub(1)), true), (Cell::new(c.row.wrapping_sub(1), c.col), false)];
            for (n, is_row) in neighbours {
                let Some(j) = self.index_of(n) else { continue };
                let hi = *self.entries[j].last().unwrap();
                let ok = if kind == Kind::Rpp {
                    hi <= lo
                } else if is_row {
                    hi < lo || (hi == lo && hi % 2 == 0)
                } else {
                    hi < lo || (hi == lo && hi % 2 == 1)
                };
                if !ok {
                    return bad(format!("cells {n} and {c} break the ordering rules"));
                }
            }
        }
        if kind == Kind::Bar {
            if self.blocks.len() != self.cells.len() {
                return bad("missing block assignment".into());
            }
            let mut groups: BTreeMap<u32, Vec<usize>> = BTreeMap::new();
            for (k, &b) in self.blocks.iter().enumerate() {
                groups.entry(b).or_default().push(k);
            }
            for idx in groups.values() {
                let v = self.entries[idx[0]][0];
                if idx.iter().any(|&k| self.entries[k][0] != v) {
                    return bad("a block mixes entries".into());
                }
                let cs: Vec<Cell> = idx.iter().map(|&k| self.cells[k]).collect();
                let same_row = cs.iter().all(|c| c.row == cs[0].row);
                let same_col = cs.iter().all(|c| c.col == cs[0].col);
                let contiguous = if same_row {
                    cs.windows(2).all(|w| w[1].col == w[0].col + 1)
                } else if same_col {
                    cs.windows(2).all(|w| w[1].row == w[0].row + 1)
                } else {
                    false
                };
                if !contiguous {
                    return bad("a block is not a contiguous bar".into());
                }
            }
        }
        Ok(())
    }

    /// Exponent vector (length = largest value used) and size statistic.
    pub fn weight(&self, family: Family) -> (Vec<u32>, u32) {
        let top = self.entries.iter().flat_map(|e| e.iter()).map(|&c| HalfInt(c).value()).max().unwrap_or(0);
        let mut exps = vec![0u32; top as usize];
        match family.kind() {
            Kind::Single | Kind::SetValued => {
                for e in &self.entries {
                    for &c in e {
                        exps[HalfInt(c).value() as usize - 1] += 1;
                    }
                }
                (exps, self.total_entries())
            }
            Kind::Rpp => {
                let mut seen: BTreeSet<(u32, bool, u32)> = BTreeSet::new();
                for (k, e) in self.entries.iter().enumerate() {
                    let h = HalfInt(e[0]);
                    let line = if h.is_primed() { self.cells[k].row } else { self.cells[k].col };
                    seen.insert((h.value(), h.is_primed(), line));
                }
                for (v, _, _) in &seen {
                    exps[*v as usize - 1] += 1;
                }
                (exps, seen.len() as u32)
            }
            Kind::Bar => {
                let mut seen: BTreeSet<(u32, u32)> = BTreeSet::new();
                for (k, e) in self.entries.iter().enumerate() {
                    seen.insert((HalfInt(e[0]).value(), self.blocks[k]));
                }
                for (v, _) in &seen {
                    exps[*v as usize - 1] += 1;
                }
                let nblocks = self.blocks.iter().collect::<BTreeSet<_>>().len() as u32;
                (exps, nblocks)
            }
        }
    }
}

fn parse_entry(s: &str) -> Option<Entry> {
    let mut out: Entry = SmallVec::new();
    let tokens: Vec<String> = if s.contains(',') || s.contains(' ') {
        s.split([',', ' ']).filter(|t| !t.is_empty()).map(str::to_string).collect()
    } else {
        let mut v: Vec<String> = Vec::new();
        for ch in s.chars() {
            if ch == '\'' {
                v.last_mut()?.push('\'');
            } else {
                v.push(ch.to_string());
            }
        }
        v
    };
    for t in tokens {
        let (num, primed) = match t.strip_suffix('\'') {
            Some(n) => (n, true),
            None => (t.as_str(), false),
        };
        let i: u32 = num.parse().ok()?;
        if i == 0 {
            return None;
        }
        out.push(if primed { 2 * i - 1 } else { 2 * i });
    }
    out.sort_unstable();
    if out.is_empty() || out.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    Some(out)
}

impl fmt::Display for Tableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let wide = self.entries.iter().flatten().any(|&c| HalfInt(c).value() >= 10);
        for r in 1..=self.shape.outer.len() as u32 {
            if r > 1 {
                f.write_str("|")?;
            }
            for (k, c) in self.cells.iter().enumerate() {
                if c.row != r {
                    continue;
                }
                let parts: Vec<String> = self.entries[k].iter().map(|&x| HalfInt(x).to_string()).collect();
                write!(f, "{{{}}}", parts.join(if wide { "," } else { "" }))?;
            }
        }
        if !self.blocks.is_empty() {
            let ids: Vec<String> = self.blocks.iter().map(|b| b.to_string()).collect();
            write!(f, " #{}", ids.join(","))?;
        }
        Ok(())
    }
}

/// Per-cell neighbour data used by the backtracking search.
#[derive(Debug, Clone)]
struct CellInfo {
    left: Option<usize>,
    below: Option<usize>,
    diagonal: bool,
}

/// Search state at a leaf: entries per cell, per-value multiplicities and
/// the total number of entries.
#[derive(Debug, Clone)]
pub struct Fill {
    pub entries: Vec<Entry>,
    pub counts: Vec<u32>,
    pub size: u32,
}

/// Backtracking enumerator for one family on one shape.
#[derive(Debug, Clone)]
pub struct Enumerator {
    family: Family,
    shape: SkewShape,
    cells: Vec<Cell>,
    info: Vec<CellInfo>,
    max_value: u32,
    deg_cap: Option<u32>,
    content: Option<Vec<u32>>,
}

impl Enumerator {
    /// Entries are drawn from `{1′,1,…,max_value′,max_value}`. `deg_cap`
    /// bounds `|T| − |shape|` for set-valued families.
    pub fn new(family: Family, shape: &SkewShape, max_value: u32, deg_cap: Option<u32>) -> Result<Self, TableauError> {
        let cells = shape.cells()?;
        let info = cells
            .iter()
            .map(|c| CellInfo {
                left: cells.binary_search(&Cell::new(c.row, c.col.wrapping_sub(1))).ok(),
                below: cells.binary_search(&Cell::new(c.row.wrapping_sub(1), c.col)).ok(),
                diagonal: c.is_diagonal(),
            })
            .collect();
        Ok(Enumerator { family, shape: shape.clone(), cells, info, max_value, deg_cap, content: None })
    }

    /// Restricts single- and set-valued families to tableaux whose value
    /// multiplicities equal `content` exactly (values beyond its length
    /// do not occur).
    pub fn with_content(mut self, content: &[u32]) -> Self {
        assert!(matches!(self.family.kind(), Kind::Single | Kind::SetValued), "content filter needs a semistandard family");
        self.max_value = content.len() as u32;
        self.content = Some(content.to_vec());
        self
    }

    pub fn family(&self) -> Family {
        self.family
    }

    fn lower_bound(&self, k: usize, entries: &[Entry]) -> u32 {
        let rpp = self.family.kind() == Kind::Rpp;
        let mut lo = 1;
        if let Some(l) = self.info[k].left {
            let m = *entries[l].last().unwrap();
            lo = lo.max(if rpp || m % 2 == 0 { m } else { m + 1 });
        }
        if let Some(b) = self.info[k].below {
            let m = *entries[b].last().unwrap();
            lo = lo.max(if rpp || m % 2 == 1 { m } else { m + 1 });
        }
        lo
    }

    fn code_allowed(&self, k: usize, code: u32) -> bool {
        if self.info[k].diagonal && self.family.is_p() {
            let primed = code % 2 == 1;
            if self.family.kind() == Kind::Rpp {
                return primed;
            }
            return !primed;
        }
        true
    }

    fn fresh(&self) -> Fill {
        Fill {
            entries: vec![SmallVec::new(); self.cells.len()],
            counts: vec![0; self.max_value as usize],
            size: 0,
        }
    }

    fn remaining_content(&self, st: &Fill) -> Option<u32> {
        self.content.as_ref().map(|c| c.iter().zip(&st.counts).map(|(a, b)| a - b).sum())
    }

    fn dfs<F: FnMut(&Fill)>(&self, k: usize, st: &mut Fill, f: &mut F) {
        if k == self.cells.len() {
            if let Some(c) = &self.content {
                if c != &st.counts {
                    return;
                }
            }
            f(st);
            return;
        }
        let lo = self.lower_bound(k, &st.entries);
        let mut max_len = 1u32;
        if self.family.kind() == Kind::SetValued {
            if let Some(cap) = self.deg_cap {
                let extra = st.size - k as u32;
                max_len = 1 + cap.saturating_sub(extra);
            } else {
                max_len = u32::MAX;
            }
        }
        if let Some(rem) = self.remaining_content(st) {
            let cells_after = (self.cells.len() - k - 1) as u32;
            if rem < cells_after + 1 {
                return;
            }
            max_len = max_len.min(rem - cells_after);
        }
        self.grow(k, lo, max_len, st, f);
    }

    fn grow<F: FnMut(&Fill)>(&self, k: usize, start: u32, room: u32, st: &mut Fill, f: &mut F) {
        for code in start..=2 * self.max_value {
            if !self.code_allowed(k, code) {
                continue;
            }
            let v = HalfInt(code).value() as usize - 1;
            if let Some(c) = &self.content {
                if st.counts[v] >= c[v] {
                    continue;
                }
            }
            st.entries[k].push(code);
            st.counts[v] += 1;
            st.size += 1;
            self.dfs(k + 1, st, f);
            if room > 1 {
                self.grow(k, code + 1, room - 1, st, f);
            }
            st.entries[k].pop();
            st.counts[v] -= 1;
            st.size -= 1;
        }
    }

    /// Entries allowed in the first cell; each choice seeds one chunk of
    /// the search, so chunks can be explored independently.
    pub fn chunks(&self) -> Vec<Entry> {
        if self.cells.is_empty() {
            return vec![Entry::new()];
        }
        let mut st = self.fresh();
        let first_only = Enumerator { cells: self.cells[..1].to_vec(), info: self.info[..1].to_vec(), content: None, ..self.clone() };
        let mut out = Vec::new();
        first_only.dfs(0, &mut st, &mut |s: &Fill| {
            let fits = self.content.as_ref().is_none_or(|c| s.counts.iter().zip(c).all(|(a, b)| a <= b));
            if fits {
                out.push(s.entries[0].clone());
            }
        });
        out
    }

    pub fn chunk_count(&self) -> usize {
        self.chunks().len()
    }

    /// Visits the raw fillings whose first cell is `first` (every filling
    /// when the shape is empty).
    pub fn for_each_fill_from<F: FnMut(&Fill)>(&self, first: &Entry, mut f: F) {
        let mut st = self.fresh();
        if self.cells.is_empty() {
            self.dfs(0, &mut st, &mut f);
            return;
        }
        for &code in first {
            let v = HalfInt(code).value() as usize - 1;
            st.counts[v] += 1;
            st.size += 1;
        }
        st.entries[0] = first.clone();
        self.dfs(1, &mut st, &mut f);
    }

    /// Visits the raw fillings of one chunk.
    pub fn for_each_fill_in_chunk<F: FnMut(&Fill)>(&self, chunk: usize, f: F) {
        if let Some(e) = self.chunks().get(chunk) {
            self.for_each_fill_from(e, f);
        }
    }

    /// Visits every raw filling in deterministic order.
    pub fn for_each_fill<F: FnMut(&Fill)>(&self, mut f: F) {
        let mut st = self.fresh();
        self.dfs(0, &mut st, &mut f);
    }

    fn tableau_of(&self, entries: &[Entry], blocks: Vec<u32>) -> Tableau {
        Tableau { shape: self.shape.clone(), cells: self.cells.clone(), entries: entries.to_vec(), blocks }
    }

    /// Visits every tableau; bar families expand each filling into all of
    /// its block refinements.
    pub fn for_each<F: FnMut(&Tableau)>(&self, mut f: F) {
        self.for_each_fill(|st| {
            if self.family.kind() == Kind::Bar {
                for_each_refinement(&self.cells, &st.entries, |b| f(&self.tableau_of(&st.entries, b.to_vec())));
            } else {
                f(&self.tableau_of(&st.entries, Vec::new()));
            }
        });
    }

    pub fn collect(&self) -> Vec<Tableau> {
        let mut v = Vec::new();
        self.for_each(|t| v.push(t.clone()));
        v
    }

    /// Number of tableaux (bar families count refinements).
    pub fn count(&self) -> u64 {
        self.chunks()
            .par_iter()
            .map(|first| {
                let mut n = 0u64;
                self.for_each_fill_from(first, |st| {
                    n += if self.family.kind() == Kind::Bar { refinement_count(&self.cells, &st.entries) } else { 1 };
                });
                n
            })
            .sum()
    }
}

/// Maximal runs of a filling that bar blocks may subdivide: horizontal runs
/// of an unprimed value and vertical runs of a primed value, as lists of
/// cell indices in order.
fn maximal_runs(cells: &[Cell], entries: &[Entry]) -> Vec<Vec<usize>> {
    let mut runs = Vec::new();
    let mut used = vec![false; cells.len()];
    for k in 0..cells.len() {
        if used[k] {
            continue;
        }
        let v = entries[k][0];
        let mut run = vec![k];
        used[k] = true;
        let mut cur = cells[k];
        loop {
            let next = if v % 2 == 0 { Cell::new(cur.row, cur.col + 1) } else { Cell::new(cur.row + 1, cur.col) };
            match cells.binary_search(&next) {
                Ok(j) if entries[j][0] == v => {
                    run.push(j);
                    used[j] = true;
                    cur = next;
                }
                _ => break,
            }
        }
        runs.push(run);
    }
    runs
}

fn refinement_count(cells: &[Cell], entries: &[Entry]) -> u64 {
    maximal_runs(cells, entries).iter().map(|r| 1u64 << (r.len() - 1)).product()
}

/// Calls `f` with a block id per cell for every way of cutting each maximal
/// run into contiguous pieces. Block ids are numbered in cell order.
fn for_each_refinement<F: FnMut(&[u32])>(cells: &[Cell], entries: &[Entry], mut f: F) {
    let runs = maximal_runs(cells, entries);
    let gaps: Vec<(usize, usize)> =
        runs.iter().flat_map(|r| r.windows(2).map(|w| (w[0], w[1]))).collect();
    let mut labels = vec![0u32; cells.len()];
    for mask in 0u64..(1u64 << gaps.len()) {
        // Union cells joined by uncut gaps, then number blocks by first cell.
        let mut parent: Vec<usize> = (0..cells.len()).collect();
        fn root(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for (g, &(a, b)) in gaps.iter().enumerate() {
            if (mask >> g) & 1 == 0 {
                let (ra, rb) = (root(&mut parent, a), root(&mut parent, b));
                parent[ra.max(rb)] = ra.min(rb);
            }
        }
        let mut ids: FxHashMap<usize, u32> = FxHashMap::default();
        for (k, label) in labels.iter_mut().enumerate() {
            let r = root(&mut parent, k);
            let next = ids.len() as u32;
            *label = *ids.entry(r).or_insert(next);
        }
        f(&labels);
    }
}

fn push_term(acc: &mut FxHashMap<(Monomial, u32), i64>, exps: Monomial, bdeg: u32, sign: i64) {
    *acc.entry((exps, bdeg)).or_insert(0) += sign;
}

/// Generating function `Σ_T β^{|T|−|shape|} x^T` (set-valued and
/// single-valued families) or `Σ_T (−β)^{|shape|−size} x^{wt}` (RPP and bar
/// families) in `nvars` variables, truncated at `max_deg`.
pub fn genfun_from_tableaux(
    family: Family,
    shape: &SkewShape,
    nvars: usize,
    max_deg: Option<u32>,
) -> Result<BetaPoly, TableauError> {
    let n = shape.size();
    let cap = match (family.kind(), max_deg) {
        (Kind::SetValued, Some(d)) if d < n => return Ok(BetaPoly::zero(nvars, max_deg)),
        (Kind::SetValued, Some(d)) => Some(d - n),
        _ => None,
    };
    if matches!(family.kind(), Kind::Single) && max_deg.is_some_and(|d| d < n) {
        return Ok(BetaPoly::zero(nvars, max_deg));
    }
    let en = Enumerator::new(family, shape, nvars as u32, cap)?;
    let kind = family.kind();
    let cells = &en.cells;
    let acc = en
        .chunks()
        .par_iter()
        .map(|first| {
            let mut acc: FxHashMap<(Monomial, u32), i64> = FxHashMap::default();
            en.for_each_fill_from(first, |st| match kind {
                Kind::Single | Kind::SetValued => {
                    let m: Monomial = st.counts.iter().map(|&c| c as u16).collect();
                    push_term(&mut acc, m, st.size - n, 1);
                }
                Kind::Rpp => {
                    let (m, size) = rpp_weight(cells, &st.entries, nvars);
                    let k = n - size;
                    push_term(&mut acc, m, k, if k % 2 == 0 { 1 } else { -1 });
                }
                Kind::Bar => for_each_refinement(cells, &st.entries, |blocks| {
                    let (m, size) = bar_weight(&st.entries, blocks, nvars);
                    let k = n - size;
                    push_term(&mut acc, m, k, if k % 2 == 0 { 1 } else { -1 });
                }),
            });
            acc
        })
        .reduce(FxHashMap::default, |mut a, b| {
            for (k, v) in b {
                *a.entry(k).or_insert(0) += v;
            }
            a
        });
    let mut p = BetaPoly::zero(nvars, max_deg);
    for ((m, k), c) in acc {
        if c != 0 {
            p.add_term(m, &BetaInt::monomial(BigInt::from(c), k));
        }
    }
    Ok(p)
}

fn rpp_weight(cells: &[Cell], entries: &[Entry], nvars: usize) -> (Monomial, u32) {
    let mut lines: Vec<(u32, u32)> = Vec::with_capacity(cells.len());
    for (k, e) in entries.iter().enumerate() {
        let h = HalfInt(e[0]);
        let line = if h.is_primed() { cells[k].row } else { cells[k].col };
        lines.push((h.0, line));
    }
    lines.sort_unstable();
    lines.dedup();
    let mut m: Monomial = SmallVec::from_elem(0, nvars);
    for (code, _) in &lines {
        m[HalfInt(*code).value() as usize - 1] += 1;
    }
    (m, lines.len() as u32)
}

fn bar_weight(entries: &[Entry], blocks: &[u32], nvars: usize) -> (Monomial, u32) {
    let nblocks = blocks.iter().copied().max().map_or(0, |b| b + 1);
    let mut m: Monomial = SmallVec::from_elem(0, nvars);
    let mut seen = vec![false; nblocks as usize];
    for (k, e) in entries.iter().enumerate() {
        let b = blocks[k] as usize;
        if !seen[b] {
            seen[b] = true;
            m[HalfInt(e[0]).value() as usize - 1] += 1;
        }
    }
    (m, nblocks)
}

/// Number of tableaux in a single- or set-valued family with value
/// multiplicities exactly `content`. For set-valued families the matching
/// coefficient of `x^content` is this count times `β^{|content|−|shape|}`.
pub fn count_with_content(family: Family, shape: &SkewShape, content: &[u32]) -> Result<u64, TableauError> {
    let en = Enumerator::new(family, shape, content.len() as u32, None)?.with_content(content);
    Ok(en
        .chunks()
        .par_iter()
        .map(|first| {
            let mut n = 0u64;
            en.for_each_fill_from(first, |_| n += 1);
            n
        })
        .sum())
}

/// Outcome of the one-row map.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OneRowImage {
    /// The tableau lies in `SetShYT_P(n:n)` and maps to itself.
    Fixed(Tableau),
    /// The image in `SetShYT_P((n+1))`.
    Mapped(Tableau),
}

/// Whether the first cell of a one-row tableau has no primes, or a single
/// prime on its largest element.
fn first_cell_restricted(e: &Entry) -> bool {
    let primes = e.iter().filter(|&&c| c % 2 == 1).count();
    primes == 0 || (primes == 1 && e.last().unwrap() % 2 == 1)
}

/// The weight-preserving bijection `SetShYT_Q(n) → SetShYT_P(n:n) ⊔
/// SetShYT_P((n+1))`: tableaux already in `SetShYT_P(n:n)` are fixed;
/// otherwise the smallest primed `i′` in the first cell becomes `i`, that
/// cell keeps the entries below `i′` together with the new `i`, and the
/// entries above `i′` move to a new second cell.
pub fn onerow_map(t: &Tableau) -> Result<OneRowImage, TableauError> {
    if t.shape.inner != StrictPartition::empty() || t.shape.outer.len() != 1 {
        return Err(TableauError::WrongShape(t.shape.to_string()));
    }
    t.validate(Family::SetShYtQ)?;
    let first = &t.entries[0];
    if first_cell_restricted(first) {
        return Ok(OneRowImage::Fixed(t.clone()));
    }
    let p = *first.iter().find(|&&c| c % 2 == 1).unwrap();
    let mut a: Entry = first.iter().copied().filter(|&c| c < p).collect();
    a.push(p + 1);
    let b: Entry = first.iter().copied().filter(|&c| c > p).collect();
    let mut entries = vec![a, b];
    entries.extend(t.entries[1..].iter().cloned());
    let n = t.shape.outer.largest_part();
    let shape = SkewShape::straight(StrictPartition::new(vec![n + 1]).expect("one row"));
    Ok(OneRowImage::Mapped(Tableau::new(shape, entries)?))
}

/// `SetShYT_P(λ:μ)`: tableaux `T ∈ SetShYT_Q(λ)` whose diagonal cells in
/// rows with `λ_i = μ_i` have no primes or only a primed largest element,
/// and whose other diagonal cells have no primes.
#[derive(Debug, Clone)]
pub struct RestrictedFamily {
    pub lambda: StrictPartition,
    pub mu: StrictPartition,
}

impl RestrictedFamily {
    pub fn new(lambda: StrictPartition, mu: StrictPartition) -> Result<Self, TableauError> {
        if lambda.len() != mu.len() || !mu.is_contained_in(&lambda) {
            return Err(TableauError::InvalidPair { lambda: lambda.to_string(), mu: mu.to_string() });
        }
        Ok(RestrictedFamily { lambda, mu })
    }

    fn row_allows_prime(&self, row: u32) -> bool {
        self.lambda.part(row as usize) == self.mu.part(row as usize)
    }

    pub fn contains(&self, t: &Tableau) -> bool {
        if t.shape != SkewShape::straight(self.lambda.clone()) || t.validate(Family::SetShYtQ).is_err() {
            return false;
        }
        t.cells.iter().zip(&t.entries).all(|(c, e)| {
            if !c.is_diagonal() {
                return true;
            }
            let primes = e.iter().any(|&x| x % 2 == 1);
            if self.row_allows_prime(c.row) {
                first_cell_restricted(e)
            } else {
                !primes
            }
        })
    }

    /// Members with entries at most `max_value` and `|T| − |λ| ≤ deg_cap`.
    pub fn enumerate(&self, max_value: u32, deg_cap: Option<u32>) -> Result<Vec<Tableau>, TableauError> {
        let en = Enumerator::new(Family::SetShYtQ, &SkewShape::straight(self.lambda.clone()), max_value, deg_cap)?;
        let mut out = Vec::new();
        en.for_each(|t| {
            if self.contains(t) {
                out.push(t.clone());
            }
        });
        Ok(out)
    }

    /// `Σ x^T` over members, truncated at `max_deg` (β set to 1).
    pub fn genfun(&self, nvars: usize, max_deg: u32) -> Result<BetaPoly, TableauError> {
        let n = self.lambda.size();
        let mut p = BetaPoly::zero(nvars, Some(max_deg));
        if max_deg < n {
            return Ok(p);
        }
        for t in self.enumerate(nvars as u32, Some(max_deg - n))? {
            let (w, _) = t.weight(Family::SetShYtQ);
            let mut m: Monomial = SmallVec::from_elem(0, nvars);
            for (i, e) in w.iter().enumerate() {
                m[i] = *e as u16;
            }
            p.add_term(m, &BetaInt::one());
        }
        Ok(p)
    }
}
