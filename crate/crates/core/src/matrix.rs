//! Dense c-ary coloring matrices.
//!
//! A [`ColorMatrix`] with `t` rows and `s` columns over the colors
//! `{0, ..., c-1}` encodes a c-edge-coloring of `K_{s,t}`: row `i` is the
//! `i`-th vertex of the part of size `t`, column `j` the `j`-th vertex of the
//! part of size `s`, and entry `(i, j)` is the color of the edge between them.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::count;

/// Largest supported color count.
pub const MAX_COLORS: u32 = 1 << 16;

/// Upper bound on `rows * cols` for any matrix this crate materialises.
pub const MAX_CELLS: usize = 100_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MatrixError {
    #[error("color count {0} outside 2..={MAX_COLORS}")]
    BadColorCount(u64),
    #[error("entry {value} at ({row}, {col}) is not a color below {colors}")]
    EntryOutOfRange {
        row: usize,
        col: usize,
        value: u64,
        colors: u32,
    },
    #[error("expected {expected} entries for a {rows}x{cols} matrix, got {got}")]
    ShapeMismatch {
        rows: usize,
        cols: usize,
        expected: usize,
        got: usize,
    },
    #[error("column {index} out of range for {cols} columns")]
    ColumnOutOfRange { index: usize, cols: usize },
    #[error("matrix has duplicate rows, complement is undefined")]
    DuplicateRows,
    #[error("matrices differ in color count or column count")]
    DimensionMismatch,
    #[error("block B_(u,v) needs 1 <= u <= v, got u={u}, v={v}")]
    BadBlockShape { u: usize, v: usize },
    #[error("{rows}x{cols} matrix exceeds the {MAX_CELLS}-cell limit")]
    TooLarge { rows: u128, cols: u128 },
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

/// Color frequencies of one column: `counts[i]` is the number of entries equal to `i`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DegreeTuple(Vec<usize>);

impl DegreeTuple {
    pub fn new(counts: Vec<usize>) -> Self {
        DegreeTuple(counts)
    }

    pub fn counts(&self) -> &[usize] {
        &self.0
    }

    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }
}

impl fmt::Display for DegreeTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ColorMatrix {
    colors: u32,
    rows: usize,
    cols: usize,
    entries: Vec<u16>,
}

fn check_colors(colors: u64) -> Result<u32, MatrixError> {
    if (2..=MAX_COLORS as u64).contains(&colors) {
        Ok(colors as u32)
    } else {
        Err(MatrixError::BadColorCount(colors))
    }
}

fn check_cells(rows: usize, cols: usize) -> Result<usize, MatrixError> {
    match rows.checked_mul(cols) {
        Some(n) if n <= MAX_CELLS => Ok(n),
        _ => Err(MatrixError::TooLarge {
            rows: rows as u128,
            cols: cols as u128,
        }),
    }
}

impl ColorMatrix {
    /// Builds a matrix from row-major entries, validating every entry.
    pub fn new(
        colors: u64,
        rows: usize,
        cols: usize,
        entries: Vec<u16>,
    ) -> Result<Self, MatrixError> {
        let colors = check_colors(colors)?;
        let expected = check_cells(rows, cols)?;
        if entries.len() != expected {
            return Err(MatrixError::ShapeMismatch {
                rows,
                cols,
                expected,
                got: entries.len(),
            });
        }
        if let Some(pos) = entries.iter().position(|&e| u32::from(e) >= colors) {
            return Err(MatrixError::EntryOutOfRange {
                row: pos / cols,
                col: pos % cols,
                value: u64::from(entries[pos]),
                colors,
            });
        }
        Ok(ColorMatrix {
            colors,
            rows,
            cols,
            entries,
        })
    }

    /// Builds a matrix from explicit rows; `cols` fixes the width so empty inputs are typed.
    pub fn from_rows<R: AsRef<[u16]>>(
        colors: u64,
        cols: usize,
        rows: &[R],
    ) -> Result<Self, MatrixError> {
        let mut entries = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            let r = r.as_ref();
            if r.len() != cols {
                return Err(MatrixError::ShapeMismatch {
                    rows: rows.len(),
                    cols,
                    expected: rows.len() * cols,
                    got: entries.len() + r.len(),
                });
            }
            entries.extend_from_slice(r);
        }
        ColorMatrix::new(colors, rows.len(), cols, entries)
    }

    pub fn zeros(colors: u64, rows: usize, cols: usize) -> Result<Self, MatrixError> {
        let n = check_cells(rows, cols)?;
        ColorMatrix::new(colors, rows, cols, vec![0; n])
    }

    /// Entries are assumed valid; only for internal builders that already checked them.
    pub(crate) fn from_parts_unchecked(
        colors: u32,
        rows: usize,
        cols: usize,
        entries: Vec<u16>,
    ) -> Self {
        debug_assert_eq!(entries.len(), rows * cols);
        debug_assert!(entries.iter().all(|&e| u32::from(e) < colors));
        ColorMatrix {
            colors,
            rows,
            cols,
            entries,
        }
    }

    pub fn colors(&self) -> u32 {
        self.colors
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[u16] {
        &self.entries
    }

    pub fn get(&self, row: usize, col: usize) -> u16 {
        self.entries[row * self.cols + col]
    }

    pub fn row(&self, row: usize) -> &[u16] {
        &self.entries[row * self.cols..(row + 1) * self.cols]
    }

    pub fn iter_rows(&self) -> impl Iterator<Item = &[u16]> + '_ {
        (0..self.rows).map(move |r| self.row(r))
    }

    pub fn column(&self, col: usize) -> impl Iterator<Item = u16> + '_ {
        (0..self.rows).map(move |r| self.get(r, col))
    }

    pub fn column_degree(&self, col: usize) -> Result<DegreeTuple, MatrixError> {
        if col >= self.cols {
            return Err(MatrixError::ColumnOutOfRange {
                index: col,
                cols: self.cols,
            });
        }
        let mut counts = vec![0usize; self.colors as usize];
        for e in self.column(col) {
            counts[e as usize] += 1;
        }
        Ok(DegreeTuple(counts))
    }

    pub fn column_degrees(&self) -> Vec<DegreeTuple> {
        (0..self.cols)
            .map(|j| self.column_degree(j).expect("index in range"))
            .collect()
    }

    /// Degree tuples of the rows, i.e. the column degrees of the transpose.
    pub fn row_degrees(&self) -> Vec<DegreeTuple> {
        self.iter_rows()
            .map(|r| {
                let mut counts = vec![0usize; self.colors as usize];
                for &e in r {
                    counts[e as usize] += 1;
                }
                DegreeTuple(counts)
            })
            .collect()
    }

    /// First pair `(i, j)`, `i < j`, of equal rows in lexicographic order of `(i, j)`.
    pub fn first_duplicate_rows(&self) -> Option<(usize, usize)> {
        let mut order: Vec<usize> = (0..self.rows).collect();
        order.sort_by(|&a, &b| self.row(a).cmp(self.row(b)).then(a.cmp(&b)));
        let mut best: Option<(usize, usize)> = None;
        let mut k = 0;
        while k < order.len() {
            let mut end = k + 1;
            while end < order.len() && self.row(order[end]) == self.row(order[k]) {
                end += 1;
            }
            if end - k >= 2 {
                // Within a run the indices are ascending.
                let pair = (order[k], order[k + 1]);
                if best.is_none_or(|b| pair < b) {
                    best = Some(pair);
                }
            }
            k = end;
        }
        best
    }

    pub fn has_distinct_rows(&self) -> bool {
        self.first_duplicate_rows().is_none()
    }

    /// True iff the rows are exactly the `c^s` distinct c-ary s-tuples.
    pub fn is_full(&self) -> bool {
        match count::pow_usize(u64::from(self.colors), self.cols as u64) {
            Some(n) if n == self.rows => self.has_distinct_rows(),
            _ => false,
        }
    }

    pub fn transpose(&self) -> ColorMatrix {
        let mut entries = Vec::with_capacity(self.entries.len());
        for j in 0..self.cols {
            entries.extend(self.column(j));
        }
        ColorMatrix {
            colors: self.colors,
            rows: self.cols,
            cols: self.rows,
            entries,
        }
    }

    /// The `(c^s - t) x s` matrix of all c-ary s-tuples that are not rows of `self`,
    /// in lexicographic order.
    pub fn complement(&self) -> Result<ColorMatrix, MatrixError> {
        if !self.has_distinct_rows() {
            return Err(MatrixError::DuplicateRows);
        }
        let c = u64::from(self.colors);
        let total = count::pow_usize(c, self.cols as u64)
            .filter(|&n| {
                n.checked_mul(self.cols)
                    .is_some_and(|cells| cells <= MAX_CELLS)
            })
            .ok_or(MatrixError::TooLarge {
                rows: count::pow_u64(c, self.cols as u64).map_or(u128::MAX, u128::from),
                cols: self.cols as u128,
            })?;
        let present: HashSet<&[u16]> = self.iter_rows().collect();
        let out_rows = total - self.rows;
        let mut entries = Vec::with_capacity(out_rows * self.cols);
        let mut tuple = vec![0u16; self.cols];
        for _ in 0..total {
            if !present.contains(tuple.as_slice()) {
                entries.extend_from_slice(&tuple);
            }
            odometer_step(&mut tuple, self.colors);
        }
        Ok(ColorMatrix {
            colors: self.colors,
            rows: out_rows,
            cols: self.cols,
            entries,
        })
    }

    /// Same color count, same width, and equal row multisets.
    pub fn row_multiset_equal(&self, other: &ColorMatrix) -> Result<bool, MatrixError> {
        if self.colors != other.colors || self.cols != other.cols {
            return Err(MatrixError::DimensionMismatch);
        }
        if self.rows != other.rows {
            return Ok(false);
        }
        let mut a: Vec<&[u16]> = self.iter_rows().collect();
        let mut b: Vec<&[u16]> = other.iter_rows().collect();
        a.sort_unstable();
        b.sort_unstable();
        Ok(a == b)
    }

    /// Rows permuted so that output row `i` is input row `perm[i]`.
    pub fn permute_rows(&self, perm: &[usize]) -> ColorMatrix {
        assert_eq!(perm.len(), self.rows);
        let mut entries = Vec::with_capacity(self.entries.len());
        for &p in perm {
            entries.extend_from_slice(self.row(p));
        }
        ColorMatrix {
            colors: self.colors,
            rows: self.rows,
            cols: self.cols,
            entries,
        }
    }

    /// Columns permuted so that output column `j` is input column `perm[j]`.
    pub fn permute_cols(&self, perm: &[usize]) -> ColorMatrix {
        assert_eq!(perm.len(), self.cols);
        let mut entries = Vec::with_capacity(self.entries.len());
        for r in self.iter_rows() {
            entries.extend(perm.iter().map(|&p| r[p]));
        }
        ColorMatrix {
            colors: self.colors,
            rows: self.rows,
            cols: self.cols,
            entries,
        }
    }

    /// Appends a constant column of `value` on the right.
    pub(crate) fn with_constant_column(&self, value: u16) -> ColorMatrix {
        debug_assert!(u32::from(value) < self.colors);
        let mut entries = Vec::with_capacity(self.rows * (self.cols + 1));
        for r in self.iter_rows() {
            entries.extend_from_slice(r);
            entries.push(value);
        }
        ColorMatrix {
            colors: self.colors,
            rows: self.rows,
            cols: self.cols + 1,
            entries,
        }
    }

    /// Stacks blocks vertically. All blocks must share width; colors is the maximum.
    pub(crate) fn vstack(colors: u32, cols: usize, blocks: &[&ColorMatrix]) -> ColorMatrix {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let mut entries = Vec::with_capacity(rows * cols);
        for b in blocks {
            debug_assert_eq!(b.cols, cols);
            entries.extend_from_slice(&b.entries);
        }
        ColorMatrix {
            colors,
            rows,
            cols,
            entries,
        }
    }
}

/// Advances a c-ary tuple to its lexicographic successor, wrapping to all zeros.
pub(crate) fn odometer_step(tuple: &mut [u16], colors: u32) {
    for slot in tuple.iter_mut().rev() {
        if u32::from(*slot) + 1 < colors {
            *slot += 1;
            return;
        }
        *slot = 0;
    }
}

/// The 0/1 block `B_{u,v}`: rows `1..u-1` are unit vectors `e_i`, row `u` has
/// `u-1` leading zeros followed by ones.
pub fn b_matrix(colors: u64, u: usize, v: usize) -> Result<ColorMatrix, MatrixError> {
    if u < 1 || u > v {
        return Err(MatrixError::BadBlockShape { u, v });
    }
    let mut m = ColorMatrix::zeros(colors, u, v)?;
    for i in 0..u - 1 {
        m.entries[i * v + i] = 1;
    }
    for j in u - 1..v {
        m.entries[(u - 1) * v + j] = 1;
    }
    Ok(m)
}

impl fmt::Display for ColorMatrix {
    /// Matrix text format: a `c t s` header then one line of `s` entries per row.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} {} {}", self.colors, self.rows, self.cols)?;
        for r in self.iter_rows() {
            let mut first = true;
            for e in r {
                if !first {
                    f.write_str(" ")?;
                }
                first = false;
                write!(f, "{e}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

fn parse_err(line: usize, msg: impl Into<String>) -> MatrixError {
    MatrixError::Parse {
        line,
        msg: msg.into(),
    }
}

fn parse_number(tok: &str, line: usize) -> Result<u64, MatrixError> {
    if tok.is_empty() || !tok.bytes().all(|b| b.is_ascii_digit()) {
        return Err(parse_err(line, format!("`{tok}` is not a base-10 integer")));
    }
    tok.parse::<u64>()
        .map_err(|_| parse_err(line, format!("`{tok}` does not fit in 64 bits")))
}

impl FromStr for ColorMatrix {
    type Err = MatrixError;

    /// Reads the matrix text format. Blank lines after the last row are ignored;
    /// anything else after it is an error.
    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l));
        let (hline, header) = lines.next().ok_or_else(|| parse_err(1, "missing header"))?;
        let fields: Vec<&str> = header.split_whitespace().collect();
        if fields.len() != 3 {
            return Err(parse_err(hline, "header must be `c t s`"));
        }
        let colors = parse_number(fields[0], hline)?;
        let colors = check_colors(colors)?;
        let rows = parse_number(fields[1], hline)?;
        let cols = parse_number(fields[2], hline)?;
        let too_large = || MatrixError::TooLarge {
            rows: u128::from(rows),
            cols: u128::from(cols),
        };
        let rows = usize::try_from(rows).map_err(|_| too_large())?;
        let cols = usize::try_from(cols).map_err(|_| too_large())?;
        check_cells(rows, cols)?;

        let mut entries = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            let (lno, line) = lines.next().ok_or_else(|| {
                parse_err(hline + r + 1, format!("expected {rows} rows, found {r}"))
            })?;
            let mut n = 0;
            for tok in line.split_whitespace() {
                if n == cols {
                    return Err(parse_err(lno, format!("more than {cols} entries")));
                }
                let v = parse_number(tok, lno)?;
                if v >= u64::from(colors) {
                    return Err(MatrixError::EntryOutOfRange {
                        row: r,
                        col: n,
                        value: v,
                        colors,
                    });
                }
                entries.push(v as u16);
                n += 1;
            }
            if n != cols {
                return Err(parse_err(
                    lno,
                    format!("expected {cols} entries, found {n}"),
                ));
            }
        }
        for (lno, line) in lines {
            if !line.trim().is_empty() {
                return Err(parse_err(lno, "unexpected content after last row"));
            }
        }
        Ok(ColorMatrix {
            colors,
            rows,
            cols,
            entries,
        })
    }
}
