//! Integer partitions, standard Young tableaux, contents, hook-length
//! dimensions, and the first-row / first-column tail maps used by the
//! partition classes of the limit experiments.

use num_bigint::BigUint;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A partition `λ_1 ≥ λ_2 ≥ … ≥ λ_l ≥ 1`. The empty partition is allowed.
///
/// Serializes as a bare JSON array of parts.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Partition {
    parts: Vec<usize>,
}

impl TryFrom<Vec<usize>> for Partition {
    type Error = Error;
    fn try_from(parts: Vec<usize>) -> Result<Self> {
        Partition::new(parts)
    }
}

impl From<Partition> for Vec<usize> {
    fn from(p: Partition) -> Self {
        p.parts
    }
}

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.windows(2).any(|w| w[0] < w[1]) || parts.last() == Some(&0) {
            return Err(Error::InvalidPartition);
        }
        Ok(Partition { parts })
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    pub fn single_row(n: usize) -> Self {
        if n == 0 {
            Partition::empty()
        } else {
            Partition { parts: vec![n] }
        }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn rows(&self) -> usize {
        self.parts.len()
    }

    /// Number of cells `|λ|`.
    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn first_part(&self) -> usize {
        self.parts.first().copied().unwrap_or(0)
    }

    /// The conjugate partition: rows become columns.
    pub fn transpose(&self) -> Partition {
        let cols = self.first_part();
        let parts = (1..=cols)
            .map(|c| self.parts.iter().filter(|&&p| p >= c).count())
            .collect();
        Partition { parts }
    }

    /// Drops the first row: `(λ_2, λ_3, …)`.
    pub fn strip_first_row(&self) -> Partition {
        Partition {
            parts: self.parts.iter().skip(1).copied().collect(),
        }
    }

    /// Removes the first column: every part decremented, zero parts dropped.
    pub fn strip_first_column(&self) -> Partition {
        Partition {
            parts: self
                .parts
                .iter()
                .map(|&p| p - 1)
                .filter(|&p| p > 0)
                .collect(),
        }
    }

    /// Exact dimension of the irreducible representation indexed by the
    /// partition, by the hook-length formula.
    pub fn dimension(&self) -> BigUint {
        let n = self.size();
        let transpose = self.transpose();
        let mut numerator = BigUint::one();
        for k in 1..=n as u64 {
            numerator *= k;
        }
        let mut hooks = BigUint::one();
        for (r, &row_len) in self.parts.iter().enumerate() {
            for c in 0..row_len {
                let hook = (row_len - c) + (transpose.parts[c] - r) - 1;
                hooks *= hook as u64;
            }
        }
        numerator / hooks
    }

    /// All standard Young tableaux of this shape, sorted lexicographically by
    /// row-reading word. Errors when the count would exceed `cap`.
    pub fn standard_tableaux(&self, cap: u64) -> Result<Vec<Tableau>> {
        let dim = self.dimension();
        if dim > BigUint::from(cap) {
            let needed = u64::try_from(&dim).unwrap_or(u64::MAX);
            return Err(Error::CapExceeded {
                what: "tableau count",
                needed,
                cap,
            });
        }
        let mut out: Vec<Tableau> = row_words(self)
            .into_iter()
            .map(|rw| Tableau::from_row_word(self.clone(), &rw))
            .collect();
        out.sort_by(|a, b| a.reading_word().cmp(&b.reading_word()));
        Ok(out)
    }
}

impl std::fmt::Display for Partition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

/// Row assignment (0-indexed row per entry `1..=N`) of every standard tableau
/// of the shape, in generation order. A standard tableau is determined by its
/// row word: entries of a row appear left to right in increasing order.
fn row_words(shape: &Partition) -> Vec<Vec<u8>> {
    let n = shape.size();
    let rows = shape.rows();
    let mut fill = vec![0usize; rows];
    let mut current = vec![0u8; n];
    let mut out = Vec::new();
    fn rec(
        shape: &Partition,
        entry: usize,
        n: usize,
        fill: &mut Vec<usize>,
        current: &mut Vec<u8>,
        out: &mut Vec<Vec<u8>>,
    ) {
        if entry > n {
            out.push(current.clone());
            return;
        }
        for r in 0..fill.len() {
            let c = fill[r];
            if c >= shape.parts()[r] {
                continue;
            }
            // The cell above must already be filled for column growth.
            if r > 0 && fill[r - 1] <= c {
                continue;
            }
            fill[r] += 1;
            current[entry - 1] = r as u8;
            rec(shape, entry + 1, n, fill, current, out);
            fill[r] -= 1;
        }
    }
    rec(shape, 1, n, &mut fill, &mut current, &mut out);
    out
}

/// A standard Young tableau: the shape plus, for each entry `1..=N`, its cell.
///
/// Serializes as a bare JSON array of rows.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<usize>>", into = "Vec<Vec<usize>>")]
pub struct Tableau {
    shape: Partition,
    /// 0-indexed (row, column) of entry `i` at index `i-1`.
    positions: Vec<(u32, u32)>,
}

impl TryFrom<Vec<Vec<usize>>> for Tableau {
    type Error = Error;
    fn try_from(rows: Vec<Vec<usize>>) -> Result<Self> {
        Tableau::from_rows(rows)
    }
}

impl From<Tableau> for Vec<Vec<usize>> {
    fn from(t: Tableau) -> Self {
        t.rows()
    }
}

impl Tableau {
    fn from_row_word(shape: Partition, row_word: &[u8]) -> Tableau {
        let mut fill = vec![0u32; shape.rows()];
        let positions = row_word
            .iter()
            .map(|&r| {
                let c = fill[r as usize];
                fill[r as usize] += 1;
                (r as u32, c)
            })
            .collect();
        Tableau { shape, positions }
    }

    /// Builds a tableau from rows of entries, checking standardness.
    pub fn from_rows(rows: Vec<Vec<usize>>) -> Result<Tableau> {
        let shape = Partition::new(rows.iter().map(|r| r.len()).collect())?;
        let n = shape.size();
        let mut positions = vec![(0u32, 0u32); n];
        let mut seen = vec![false; n];
        for (r, row) in rows.iter().enumerate() {
            for (c, &e) in row.iter().enumerate() {
                if e == 0 || e > n || seen[e - 1] {
                    return Err(Error::InvalidInput(format!(
                        "entries must be a permutation of 1..={n}"
                    )));
                }
                seen[e - 1] = true;
                positions[e - 1] = (r as u32, c as u32);
                let row_ok = c == 0 || rows[r][c - 1] < e;
                let col_ok = r == 0 || rows[r - 1][c] < e;
                if !row_ok || !col_ok {
                    return Err(Error::InvalidInput(
                        "rows and columns must increase".to_string(),
                    ));
                }
            }
        }
        Ok(Tableau { shape, positions })
    }

    pub fn shape(&self) -> &Partition {
        &self.shape
    }

    pub fn size(&self) -> usize {
        self.positions.len()
    }

    /// Content `q - p`, row and column (1-indexed) of the cell holding `entry`.
    pub fn entry_info(&self, entry: usize) -> Result<(i64, usize, usize)> {
        if entry == 0 || entry > self.size() {
            return Err(Error::EntryOutOfRange {
                entry,
                max: self.size(),
            });
        }
        let (r, c) = self.positions[entry - 1];
        Ok((c as i64 - r as i64, r as usize + 1, c as usize + 1))
    }

    /// Content of the cell holding `entry` (0-indexed internals, no checks).
    pub(crate) fn content(&self, entry: usize) -> i64 {
        let (r, c) = self.positions[entry - 1];
        c as i64 - r as i64
    }

    pub(crate) fn row_col(&self, entry: usize) -> (u32, u32) {
        self.positions[entry - 1]
    }

    /// 0-indexed row of each entry `1..=N`.
    pub fn row_word(&self) -> Vec<u8> {
        self.positions.iter().map(|&(r, _)| r as u8).collect()
    }

    /// Entries read row by row.
    pub fn reading_word(&self) -> Vec<usize> {
        let mut rows = self.rows();
        let mut word = Vec::with_capacity(self.size());
        for row in rows.iter_mut() {
            word.append(row);
        }
        word
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        let mut rows: Vec<Vec<usize>> = self
            .shape
            .parts()
            .iter()
            .map(|&len| vec![0; len])
            .collect();
        for (e, &(r, c)) in self.positions.iter().enumerate() {
            rows[r as usize][c as usize] = e + 1;
        }
        rows
    }

    /// Swaps entries `i` and `i+1`; `None` when the swap breaks standardness
    /// (adjacent entries in the same row or column).
    pub fn swap_adjacent(&self, i: usize) -> Option<Tableau> {
        let (r1, c1) = self.positions[i - 1];
        let (r2, c2) = self.positions[i];
        if r1 == r2 || c1 == c2 {
            return None;
        }
        let mut positions = self.positions.clone();
        positions.swap(i - 1, i);
        Some(Tableau {
            shape: self.shape.clone(),
            positions,
        })
    }
}

/// All partitions of `n` in descending lexicographic order; `n = 0` yields
/// the empty partition.
pub fn partitions_of(n: usize) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut stack = Vec::new();
    fn rec(remaining: usize, max_part: usize, stack: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if remaining == 0 {
            out.push(Partition {
                parts: stack.clone(),
            });
            return;
        }
        for part in (1..=remaining.min(max_part)).rev() {
            stack.push(part);
            rec(remaining - part, part, stack, out);
            stack.pop();
        }
    }
    rec(n, n.max(1), &mut stack, &mut out);
    out
}

/// The `n`-cell shape `(n - |μ|, μ_1, μ_2, …)` whose first-row tail is `μ`.
pub fn near_row_shape(mu: &Partition, n: usize) -> Result<Partition> {
    let tail = mu.size();
    if n < tail || n - tail < mu.first_part() {
        return Err(Error::TailTooLarge {
            n,
            tail,
            first: mu.first_part(),
        });
    }
    let mut parts = Vec::with_capacity(mu.rows() + 1);
    parts.push(n - tail);
    parts.extend_from_slice(mu.parts());
    Partition::new(parts)
}
