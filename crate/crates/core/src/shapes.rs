//! Strict partitions, shifted (skew) diagrams and the shape statistics used
//! throughout the crate.
//!
//! Cells are `(row, column)` pairs with rows counted from the bottom, so the
//! shifted diagram of `λ` is `{(i, j) : 0 < i ≤ j < i + λ_i}`.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

/// Errors raised while building or manipulating shapes.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ShapeError {
    #[error("cannot parse partition {0:?}")]
    Parse(String),
    #[error("parts {0:?} are not strictly decreasing positive integers")]
    NotStrict(Vec<u32>),
    #[error("parts {0:?} are not weakly decreasing positive integers")]
    NotPartition(Vec<u32>),
    #[error("inner shape {inner} is not contained in outer shape {outer}")]
    NotContained { outer: String, inner: String },
    #[error("shapes {outer} and {inner} must have the same length")]
    LengthMismatch { outer: String, inner: String },
}

/// A cell of a shifted diagram, rows counted from the bottom.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Cell {
    pub row: u32,
    pub col: u32,
}

impl Cell {
    pub fn new(row: u32, col: u32) -> Self {
        Cell { row, col }
    }

    pub fn is_diagonal(&self) -> bool {
        self.row == self.col
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.row, self.col)
    }
}

fn graded_cmp(a: &[u32], b: &[u32]) -> Ordering {
    let sa: u64 = a.iter().map(|&x| x as u64).sum();
    let sb: u64 = b.iter().map(|&x| x as u64).sum();
    sa.cmp(&sb).then_with(|| b.cmp(a))
}

fn parse_parts(s: &str) -> Result<Vec<u32>, ShapeError> {
    let t = s.trim();
    if t.is_empty() || t == "∅" {
        return Ok(Vec::new());
    }
    t.split(',')
        .map(|p| p.trim().parse::<u32>().map_err(|_| ShapeError::Parse(s.to_string())))
        .collect()
}

fn write_parts(f: &mut fmt::Formatter<'_>, parts: &[u32]) -> fmt::Result {
    for (k, p) in parts.iter().enumerate() {
        if k > 0 {
            f.write_str(",")?;
        }
        write!(f, "{p}")?;
    }
    Ok(())
}

/// A strictly decreasing sequence of positive integers.
///
/// Ordering is graded: first by size, then reverse-lexicographically, so
/// `(3)` precedes `(2,1)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct StrictPartition(Vec<u32>);

impl StrictPartition {
    pub fn new(parts: Vec<u32>) -> Result<Self, ShapeError> {
        let ok = parts.iter().all(|&p| p > 0) && parts.windows(2).all(|w| w[0] > w[1]);
        if ok {
            Ok(StrictPartition(parts))
        } else {
            Err(ShapeError::NotStrict(parts))
        }
    }

    pub fn empty() -> Self {
        StrictPartition(Vec::new())
    }

    /// The staircase `δ_m = (m, m−1, …, 1)`.
    pub fn staircase(m: u32) -> Self {
        StrictPartition((1..=m).rev().collect())
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn size(&self) -> u32 {
        self.0.iter().sum()
    }

    /// Part `i` (1-based); zero beyond the length.
    pub fn part(&self, i: usize) -> u32 {
        if i == 0 {
            return 0;
        }
        self.0.get(i - 1).copied().unwrap_or(0)
    }

    pub fn largest_part(&self) -> u32 {
        self.0.first().copied().unwrap_or(0)
    }

    /// `self ⊆ other`, comparing parts with missing parts read as zero.
    pub fn is_contained_in(&self, other: &StrictPartition) -> bool {
        contains(self, other)
    }

    /// Cells of the shifted diagram, row-major from the bottom row.
    pub fn cells(&self) -> Vec<Cell> {
        let mut out = Vec::with_capacity(self.size() as usize);
        for (k, &p) in self.0.iter().enumerate() {
            let i = k as u32 + 1;
            for j in i..i + p {
                out.push(Cell::new(i, j));
            }
        }
        out
    }

    pub fn to_partition(&self) -> Partition {
        Partition(self.0.clone())
    }

    /// True when consecutive parts differ by at least two.
    pub fn parts_differ_by_two(&self) -> bool {
        self.0.windows(2).all(|w| w[0] - w[1] >= 2)
    }
}

impl PartialOrd for StrictPartition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for StrictPartition {
    fn cmp(&self, other: &Self) -> Ordering {
        graded_cmp(&self.0, &other.0)
    }
}

impl fmt::Display for StrictPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_parts(f, &self.0)
    }
}

impl FromStr for StrictPartition {
    type Err = ShapeError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        StrictPartition::new(parse_parts(s)?)
    }
}

impl Serialize for StrictPartition {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for StrictPartition {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// An ordinary (weakly decreasing) partition, used for Schur indices and as
/// the exponent pattern of a sorted monomial.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Partition(Vec<u32>);

impl Partition {
    pub fn new(parts: Vec<u32>) -> Result<Self, ShapeError> {
        let ok = parts.iter().all(|&p| p > 0) && parts.windows(2).all(|w| w[0] >= w[1]);
        if ok {
            Ok(Partition(parts))
        } else {
            Err(ShapeError::NotPartition(parts))
        }
    }

    /// Sorts an exponent vector decreasingly and drops zeros.
    pub fn from_exponents(exps: &[u32]) -> Self {
        let mut v: Vec<u32> = exps.iter().copied().filter(|&e| e > 0).collect();
        v.sort_unstable_by(|a, b| b.cmp(a));
        Partition(v)
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn size(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_strict(&self) -> bool {
        self.0.windows(2).all(|w| w[0] > w[1])
    }

    pub fn to_strict(&self) -> Option<StrictPartition> {
        StrictPartition::new(self.0.clone()).ok()
    }

    pub fn transpose(&self) -> Partition {
        let n = self.0.first().copied().unwrap_or(0);
        Partition((1..=n).map(|c| self.0.iter().filter(|&&p| p >= c).count() as u32).collect())
    }

    /// Dominance order `self ⊵ other` for partitions of equal size.
    pub fn dominates(&self, other: &Partition) -> bool {
        if self.size() != other.size() {
            return false;
        }
        let (mut a, mut b) = (0u32, 0u32);
        for k in 0..self.len().max(other.len()) {
            a += self.0.get(k).copied().unwrap_or(0);
            b += other.0.get(k).copied().unwrap_or(0);
            if a < b {
                return false;
            }
        }
        true
    }

    /// All partitions of `n`, in decreasing lexicographic order.
    pub fn all_of_size(n: u32) -> Vec<Partition> {
        fn rec(rem: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
            if rem == 0 {
                out.push(Partition(cur.clone()));
                return;
            }
            for p in (1..=rem.min(max)).rev() {
                cur.push(p);
                rec(rem - p, p, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(n, n, &mut Vec::new(), &mut out);
        out
    }

    /// All partitions of size at most `n` with at most `max_len` parts, in
    /// graded order.
    pub fn all_up_to(n: u32, max_len: Option<usize>) -> Vec<Partition> {
        let mut out = Vec::new();
        for d in 0..=n {
            let mut level = Partition::all_of_size(d);
            if let Some(m) = max_len {
                level.retain(|p| p.len() <= m);
            }
            level.sort();
            out.extend(level);
        }
        out
    }
}

impl PartialOrd for Partition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Partition {
    fn cmp(&self, other: &Self) -> Ordering {
        graded_cmp(&self.0, &other.0)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_parts(f, &self.0)
    }
}

impl FromStr for Partition {
    type Err = ShapeError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Partition::new(parse_parts(s)?)
    }
}

impl Serialize for Partition {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Partition {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

impl From<&StrictPartition> for Partition {
    fn from(p: &StrictPartition) -> Self {
        p.to_partition()
    }
}

/// `μ ⊆ λ` componentwise.
pub fn contains(mu: &StrictPartition, lambda: &StrictPartition) -> bool {
    mu.len() <= lambda.len() && mu.parts().iter().zip(lambda.parts()).all(|(a, b)| a <= b)
}

/// Shape statistics of a skew shifted diagram.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ShapeStats {
    pub size: u32,
    pub cols: u32,
    pub rows: u32,
    pub overlap: u32,
    pub is_vertical_strip: bool,
}

/// A skew shape `outer/inner`. The pair is stored as given; shapes whose
/// inner partition is not contained in the outer one are representable but
/// report themselves invalid.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SkewShape {
    pub outer: StrictPartition,
    pub inner: StrictPartition,
}

impl SkewShape {
    pub fn new(outer: StrictPartition, inner: StrictPartition) -> Self {
        SkewShape { outer, inner }
    }

    /// Builds a shape and rejects non-nested pairs.
    pub fn checked(outer: StrictPartition, inner: StrictPartition) -> Result<Self, ShapeError> {
        let s = SkewShape { outer, inner };
        s.validate()?;
        Ok(s)
    }

    pub fn straight(outer: StrictPartition) -> Self {
        SkewShape { outer, inner: StrictPartition::empty() }
    }

    pub fn is_valid(&self) -> bool {
        contains(&self.inner, &self.outer)
    }

    pub fn validate(&self) -> Result<(), ShapeError> {
        if self.is_valid() {
            Ok(())
        } else {
            Err(ShapeError::NotContained {
                outer: self.outer.to_string(),
                inner: self.inner.to_string(),
            })
        }
    }

    pub fn size(&self) -> u32 {
        self.outer.size().saturating_sub(self.inner.size())
    }

    /// Cells of `SD_outer \ SD_inner`, row-major from the bottom row.
    pub fn cells(&self) -> Result<Vec<Cell>, ShapeError> {
        self.validate()?;
        let mut out = Vec::with_capacity(self.size() as usize);
        for (k, &p) in self.outer.parts().iter().enumerate() {
            let i = k as u32 + 1;
            let start = i + self.inner.part(k + 1);
            for j in start..i + p {
                out.push(Cell::new(i, j));
            }
        }
        Ok(out)
    }

    /// Removes leading rows where outer and inner agree, translating the
    /// remaining cells down the diagonal. The cell set is unchanged up to
    /// that translation.
    pub fn normalized(&self) -> SkewShape {
        let mut k = 0;
        while k < self.outer.len() && self.outer.part(k + 1) == self.inner.part(k + 1) {
            k += 1;
        }
        if k == self.outer.len() {
            return SkewShape::new(StrictPartition::empty(), StrictPartition::empty());
        }
        SkewShape::new(
            StrictPartition(self.outer.parts()[k..].to_vec()),
            StrictPartition(self.inner.parts().get(k..).map(|s| s.to_vec()).unwrap_or_default()),
        )
    }
}

impl fmt::Display for SkewShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.outer, self.inner)
    }
}

impl FromStr for SkewShape {
    type Err = ShapeError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.split_once('/') {
            Some((o, i)) => SkewShape::checked(o.parse()?, i.parse()?),
            None => Ok(SkewShape::straight(s.parse()?)),
        }
    }
}

/// Column count, overlap and vertical-strip flag of a skew shape.
pub fn shape_stats(s: &SkewShape) -> Result<ShapeStats, ShapeError> {
    let cells = s.cells()?;
    let set: BTreeSet<Cell> = cells.iter().copied().collect();
    let cols: BTreeSet<u32> = cells.iter().map(|c| c.col).collect();
    let rows: BTreeSet<u32> = cells.iter().map(|c| c.row).collect();
    let overlap = cells
        .iter()
        .filter(|c| c.row > 1 && set.contains(&Cell::new(c.row - 1, c.col)))
        .count() as u32;
    let per_row_ok = rows.len() == cells.len();
    Ok(ShapeStats {
        size: cells.len() as u32,
        cols: cols.len() as u32,
        rows: rows.len() as u32,
        overlap,
        is_vertical_strip: per_row_ok,
    })
}

/// Column count of `outer/inner`; panics on an invalid shape.
pub fn cols_of(outer: &StrictPartition, inner: &StrictPartition) -> u32 {
    shape_stats(&SkewShape::new(outer.clone(), inner.clone())).expect("nested shapes").cols
}

/// Overlap statistic of `outer/inner`; panics on an invalid shape.
pub fn overlap_of(outer: &StrictPartition, inner: &StrictPartition) -> u32 {
    shape_stats(&SkewShape::new(outer.clone(), inner.clone())).expect("nested shapes").overlap
}

fn sorted(mut v: Vec<StrictPartition>) -> Vec<StrictPartition> {
    v.sort();
    v.dedup();
    v
}

/// All strict `λ ⊇ μ` of the same length with `λ/μ` a vertical strip.
pub fn vertical_strip_extensions(mu: &StrictPartition) -> Vec<StrictPartition> {
    let l = mu.len();
    let mut out = Vec::new();
    for mask in 0u32..(1 << l) {
        let parts: Vec<u32> = (0..l).map(|k| mu.parts()[k] + ((mask >> k) & 1)).collect();
        if let Ok(p) = StrictPartition::new(parts) {
            out.push(p);
        }
    }
    sorted(out)
}

/// The sign split `(Λ⁺, Λ⁻)` of [`vertical_strip_extensions`] by the parity
/// of `cols(λ/μ) + |λ/μ|`.
pub fn signed_extensions(mu: &StrictPartition) -> (Vec<StrictPartition>, Vec<StrictPartition>) {
    vertical_strip_extensions(mu).into_iter().partition(|lam| {
        let c = cols_of(lam, mu);
        (c + lam.size() - mu.size()) % 2 == 0
    })
}

/// All strict `μ ⊆ λ` of the same length with `λ/μ` a vertical strip.
pub fn vertical_strip_subsets(lambda: &StrictPartition) -> Vec<StrictPartition> {
    let l = lambda.len();
    let mut out = Vec::new();
    for mask in 0u32..(1 << l) {
        let parts: Vec<u32> = (0..l).map(|k| lambda.parts()[k] - ((mask >> k) & 1)).collect();
        if let Ok(p) = StrictPartition::new(parts) {
            out.push(p);
        }
    }
    sorted(out)
}

/// Cells whose removal leaves the diagram of a strict partition.
pub fn removable_boxes(mu: &StrictPartition) -> BTreeSet<Cell> {
    let p = mu.parts();
    (0..p.len())
        .filter(|&k| p[k] - 1 > p.get(k + 1).copied().unwrap_or(0) || (k + 1 == p.len()))
        .map(|k| {
            let i = k as u32 + 1;
            Cell::new(i, i + p[k] - 1)
        })
        .collect()
}

/// Strict `ν ⊆ μ` with `SD_{μ/ν}` inside the removable boxes of `μ`.
pub fn doubleslash_inners(mu: &StrictPartition) -> Vec<StrictPartition> {
    let rows: Vec<usize> = removable_boxes(mu).iter().map(|c| c.row as usize - 1).collect();
    let mut out = Vec::new();
    for mask in 0u32..(1 << rows.len()) {
        let mut parts = mu.parts().to_vec();
        for (b, &r) in rows.iter().enumerate() {
            if (mask >> b) & 1 == 1 {
                parts[r] -= 1;
            }
        }
        while parts.last() == Some(&0) {
            parts.pop();
        }
        if let Ok(p) = StrictPartition::new(parts) {
            out.push(p);
        }
    }
    sorted(out)
}

fn complement_in(n: u32, p: &StrictPartition) -> StrictPartition {
    StrictPartition((1..=n).rev().filter(|v| !p.parts().contains(v)).collect())
}

/// Reflects a skew shape across the line perpendicular to the main
/// diagonal, so the bottom row becomes the rightmost column.
///
/// Inside the staircase `δ_N` with `N = λ_1`, the reflection
/// `(i, j) ↦ (N+1−j, N+1−i)` sends `SD_λ` to the complement of `SD_{λ^∨}`,
/// where `λ^∨` has parts `{1..N} \ λ`. Hence `λ/μ ↦ μ^∨/λ^∨`.
pub fn flip(s: &SkewShape) -> Result<SkewShape, ShapeError> {
    s.validate()?;
    let n = s.outer.largest_part();
    Ok(SkewShape::new(complement_in(n, &s.inner), complement_in(n, &s.outer)))
}

/// Optional restrictions for [`enumerate_strict_partitions`].
#[derive(Debug, Clone, Copy, Default)]
pub struct PartitionConstraints {
    pub max_len: Option<usize>,
    pub max_part: Option<u32>,
}

/// All strict partitions of size at most `max_size`, in graded order.
pub fn enumerate_strict_partitions(max_size: u32, c: PartitionConstraints) -> Vec<StrictPartition> {
    fn rec(rem: u32, below: u32, cur: &mut Vec<u32>, c: &PartitionConstraints, out: &mut Vec<StrictPartition>) {
        out.push(StrictPartition(cur.clone()));
        if c.max_len.is_some_and(|m| cur.len() >= m) {
            return;
        }
        for p in 1..=rem.min(below.saturating_sub(1)) {
            cur.push(p);
            rec(rem - p, p, cur, c, out);
            cur.pop();
        }
    }
    let top = c.max_part.unwrap_or(max_size).saturating_add(1);
    let mut out = Vec::new();
    rec(max_size, top, &mut Vec::new(), &c, &mut out);
    sorted(out)
}

/// All strict partitions contained in `lambda`, in graded order.
pub fn strict_subpartitions(lambda: &StrictPartition) -> Vec<StrictPartition> {
    enumerate_strict_partitions(
        lambda.size(),
        PartitionConstraints { max_len: Some(lambda.len()), max_part: Some(lambda.largest_part()) },
    )
    .into_iter()
    .filter(|m| contains(m, lambda))
    .collect()
}
