//! Explicit identity colorings for every feasible `(c, s, t)`.
//!
//! The square case uses fixed small matrices plus an upper-triangular family.
//! Rectangles come from [`distinct_degree_matrix`], an inductive construction
//! of `t x s` matrices with distinct rows and pairwise distinct column degrees,
//! and the remaining shapes are reached by transposing or complementing.

use std::collections::{HashMap, HashSet};

use serde::Serialize;
use thiserror::Error;

use crate::count::{self, BigCount};
use crate::decide;
use crate::matrix::{b_matrix, odometer_step, ColorMatrix, MatrixError, MAX_CELLS};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConstructError {
    #[error("K_({s},{t}) has no identity {c}-edge-coloring")]
    Infeasible { c: u64, s: u64, t: u64 },
    #[error("no square identity {c}-coloring exists for s={s}")]
    ExcludedSquare { c: u64, s: usize },
    #[error("t={t} outside [{lo}, c^s - {lo}] for c={c}, s={s}")]
    RowsOutOfRange { c: u64, s: usize, t: usize, lo: u64 },
    #[error("{rows}x{cols} construction exceeds the {MAX_CELLS}-cell limit")]
    TooLarge { rows: u64, cols: u64 },
    #[error(transparent)]
    Matrix(#[from] MatrixError),
}

impl ConstructError {
    fn from_matrix(e: MatrixError) -> ConstructError {
        match e {
            MatrixError::TooLarge { rows, cols } => ConstructError::TooLarge {
                rows: u64::try_from(rows).unwrap_or(u64::MAX),
                cols: u64::try_from(cols).unwrap_or(u64::MAX),
            },
            other => ConstructError::Matrix(other),
        }
    }
}

/// One branch of the construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Step {
    #[serde(rename = "square-base")]
    SquareBase,
    #[serde(rename = "s1-base")]
    SingleColumn,
    #[serde(rename = "s2-base")]
    TwoColumns,
    #[serde(rename = "l4-complement")]
    DegreeComplement,
    #[serde(rename = "l4-case1")]
    FreshColumn,
    #[serde(rename = "l4-case2-c2")]
    BinaryBlock,
    #[serde(rename = "l4-case2")]
    BlockBelow,
    #[serde(rename = "l4-case3")]
    BlockAbove,
    #[serde(rename = "l4-case4")]
    BlockBetween,
    #[serde(rename = "transpose-recursion")]
    Transpose,
    #[serde(rename = "complement-reduction")]
    Complement,
}

impl Step {
    pub fn label(self) -> &'static str {
        match self {
            Step::SquareBase => "square-base",
            Step::SingleColumn => "s1-base",
            Step::TwoColumns => "s2-base",
            Step::DegreeComplement => "l4-complement",
            Step::FreshColumn => "l4-case1",
            Step::BinaryBlock => "l4-case2-c2",
            Step::BlockBelow => "l4-case2",
            Step::BlockAbove => "l4-case3",
            Step::BlockBetween => "l4-case4",
            Step::Transpose => "transpose-recursion",
            Step::Complement => "complement-reduction",
        }
    }
}

/// Branches taken, outermost first.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
#[serde(transparent)]
pub struct ConstructionTrace {
    steps: Vec<Step>,
}

impl ConstructionTrace {
    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    pub fn labels(&self) -> Vec<&'static str> {
        self.steps.iter().map(|s| s.label()).collect()
    }
}

/// Identity c-coloring of `K_{s,s}`; none exists for `s = 1` or for `c = 2, s ∈ {2, 3}`.
pub fn square_identity(c: u64, s: usize) -> Result<ColorMatrix, ConstructError> {
    if s <= 1 || (c == 2 && (s == 2 || s == 3)) {
        return Err(ConstructError::ExcludedSquare { c, s });
    }
    match s {
        2 => Ok(ColorMatrix::from_rows(c, 2, &[[0, 1], [0, 2]])?),
        3 => Ok(ColorMatrix::from_rows(
            c,
            3,
            &[[0, 1, 2], [0, 1, 0], [0, 0, 1]],
        )?),
        _ => {
            if s.checked_mul(s).is_none_or(|n| n > MAX_CELLS) {
                return Err(ConstructError::TooLarge {
                    rows: s as u64,
                    cols: s as u64,
                });
            }
            const BLOCK: [[u16; 4]; 4] = [[0, 1, 0, 1], [0, 1, 0, 0], [0, 0, 1, 1], [0, 0, 0, 1]];
            let mut entries = vec![0u16; s * s];
            for i in 0..s {
                for j in i + 1..s {
                    entries[i * s + j] = 1;
                }
            }
            for (i, row) in BLOCK.iter().enumerate() {
                entries[i * s..i * s + 4].copy_from_slice(row);
            }
            Ok(ColorMatrix::new(c, s, s, entries)?)
        }
    }
}

/// A `t x s` matrix with distinct rows and pairwise distinct column degrees,
/// for `r <= t <= c^s - r` where `r` is [`decide::r_of`].
pub fn distinct_degree_matrix(c: u64, s: usize, t: usize) -> Result<ColorMatrix, ConstructError> {
    let mut b = Builder::new(c)?;
    b.check_range(s, t)?;
    Ok(b.degree_matrix(s, t)?.0)
}

/// Like [`distinct_degree_matrix`] but also returns the branches taken.
pub fn distinct_degree_matrix_traced(
    c: u64,
    s: usize,
    t: usize,
) -> Result<(ColorMatrix, ConstructionTrace), ConstructError> {
    let mut b = Builder::new(c)?;
    b.check_range(s, t)?;
    let (m, steps) = b.degree_matrix(s, t)?;
    Ok((m, ConstructionTrace { steps }))
}

/// An identity c-edge-coloring of `K_{s,t}` as a `t x s` matrix.
pub fn identity_coloring(
    c: u64,
    s: u64,
    t: u64,
) -> Result<(ColorMatrix, ConstructionTrace), ConstructError> {
    let feasible = decide::has_identity_coloring(c, s, &BigCount::from(t))
        .map(|v| v.exists)
        .unwrap_or(false);
    if !feasible {
        return Err(ConstructError::Infeasible { c, s, t });
    }
    let too_large = ConstructError::TooLarge { rows: t, cols: s };
    let (su, tu) = match (usize::try_from(s), usize::try_from(t)) {
        (Ok(su), Ok(tu)) if su.checked_mul(tu).is_some_and(|n| n <= MAX_CELLS) => (su, tu),
        _ => return Err(too_large),
    };
    let mut b = Builder::new(c)?;
    let (m, steps) = b.identity(su, tu)?;
    Ok((m, ConstructionTrace { steps }))
}

type Built = (ColorMatrix, Vec<Step>);

/// Per-call construction state; memo tables live only as long as one top-level call.
struct Builder {
    c: u64,
    colors: u32,
    degree_memo: HashMap<(usize, usize), Built>,
    identity_memo: HashMap<(usize, usize), Built>,
}

impl Builder {
    fn new(c: u64) -> Result<Self, ConstructError> {
        // Validates the color count once.
        let probe = ColorMatrix::zeros(c, 0, 0)?;
        Ok(Builder {
            c,
            colors: probe.colors(),
            degree_memo: HashMap::new(),
            identity_memo: HashMap::new(),
        })
    }

    /// `c^s` if it is small enough to matter for a materialisable `t`.
    fn power(&self, s: usize) -> Option<usize> {
        count::pow_usize(self.c, s as u64)
    }

    fn check_range(&self, s: usize, t: usize) -> Result<(), ConstructError> {
        let r = decide::r_of(self.c, s as u64);
        let lo = usize::try_from(r).unwrap_or(usize::MAX);
        let upper_ok = self
            .power(s)
            .is_none_or(|p| t.checked_add(lo).is_some_and(|x| x <= p));
        if s == 0 || t < lo || !upper_ok {
            return Err(ConstructError::RowsOutOfRange {
                c: self.c,
                s,
                t,
                lo: r,
            });
        }
        if s.checked_mul(t).is_none_or(|n| n > MAX_CELLS) {
            return Err(ConstructError::TooLarge {
                rows: t as u64,
                cols: s as u64,
            });
        }
        Ok(())
    }

    fn identity(&mut self, s: usize, t: usize) -> Result<Built, ConstructError> {
        if let Some(hit) = self.identity_memo.get(&(s, t)) {
            return Ok(hit.clone());
        }
        let built = self.identity_uncached(s, t)?;
        self.identity_memo.insert((s, t), built.clone());
        Ok(built)
    }

    fn identity_uncached(&mut self, s: usize, t: usize) -> Result<Built, ConstructError> {
        if s == 1 {
            let rows: Vec<[u16; 1]> = (0..t).map(|i| [i as u16]).collect();
            return Ok((
                ColorMatrix::from_rows(self.c, 1, &rows)?,
                vec![Step::SingleColumn],
            ));
        }
        if s == t {
            return Ok((square_identity(self.c, s)?, vec![Step::SquareBase]));
        }
        let power = self.power(s);
        if s < t && power.is_none_or(|p| t + s <= p) {
            return self.degree_matrix(s, t);
        }
        if s < t {
            let p = power.expect("t + s > c^s, so c^s is small");
            let (inner, mut steps) = self.identity(s, p - t)?;
            let m = inner.complement().map_err(ConstructError::from_matrix)?;
            steps.insert(0, Step::Complement);
            return Ok((m, steps));
        }
        let (inner, mut steps) = self.identity(t, s)?;
        steps.insert(0, Step::Transpose);
        Ok((inner.transpose(), steps))
    }

    fn degree_matrix(&mut self, s: usize, t: usize) -> Result<Built, ConstructError> {
        if let Some(hit) = self.degree_memo.get(&(s, t)) {
            return Ok(hit.clone());
        }
        let built = self.degree_matrix_uncached(s, t)?;
        debug_assert_eq!((built.0.rows(), built.0.cols()), (t, s));
        self.degree_memo.insert((s, t), built.clone());
        Ok(built)
    }

    fn degree_matrix_uncached(&mut self, s: usize, t: usize) -> Result<Built, ConstructError> {
        let c = self.c as usize;
        if s == 1 {
            let rows: Vec<[u16; 1]> = (0..t).map(|i| [i as u16]).collect();
            return Ok((
                ColorMatrix::from_rows(self.c, 1, &rows)?,
                vec![Step::SingleColumn],
            ));
        }
        if s == 2 {
            // Row i (1-based) is [j, c - k] where i = j*c + k, 1 <= k <= c.
            let rows: Vec<[u16; 2]> = (1..=t)
                .map(|i| {
                    let j = (i - 1) / c;
                    let k = i - j * c;
                    [j as u16, (c - k) as u16]
                })
                .collect();
            return Ok((
                ColorMatrix::from_rows(self.c, 2, &rows)?,
                vec![Step::TwoColumns],
            ));
        }

        if let Some(p) = self.power(s) {
            if 2 * t > p {
                let (inner, mut steps) = self.degree_matrix(s, p - t)?;
                let m = inner.complement().map_err(ConstructError::from_matrix)?;
                steps.insert(0, Step::DegreeComplement);
                return Ok((m, steps));
            }
        }

        let r = decide::r_of(self.c, s as u64) as usize;
        let n = self.power(s - 1);
        // Below c^{s-1} - r: extend a narrower solution by one fresh column.
        if n.is_none_or(|n| t + r <= n) {
            return self.fresh_column(s, t);
        }
        let n = n.expect("checked above");
        let k = t.div_ceil(n);
        if t + r > k * n {
            let a = k - 1;
            let u = t + r - (a + 1) * n;
            return self.block_below(s, t, a, u, r, n);
        }
        let a = k - 2;
        let u = t - (a + 1) * n;
        if u <= r {
            self.block_above(s, a, u, r)
        } else {
            self.block_between(s, a, u)
        }
    }

    fn fresh_column(&mut self, s: usize, t: usize) -> Result<Built, ConstructError> {
        let (inner, mut steps) = self.degree_matrix(s - 1, t)?;
        let used: HashSet<Vec<usize>> = inner
            .column_degrees()
            .into_iter()
            .map(|d| d.counts().to_vec())
            .collect();
        let fresh = first_unused_composition(t, self.colors as usize, &used);
        let mut column = Vec::with_capacity(t);
        for (color, &n) in fresh.iter().enumerate() {
            column.extend(std::iter::repeat_n(color as u16, n));
        }
        let mut entries = Vec::with_capacity(t * s);
        for (row, &e) in inner.iter_rows().zip(&column) {
            entries.extend_from_slice(row);
            entries.push(e);
        }
        steps.insert(0, Step::FreshColumn);
        Ok((
            ColorMatrix::from_parts_unchecked(self.colors, t, s, entries),
            steps,
        ))
    }

    /// All c-ary s-tuples whose last entry lies in `lo..=hi`, grouped by last entry.
    fn last_entry_block(
        &self,
        s: usize,
        lo: usize,
        hi: usize,
    ) -> Result<ColorMatrix, ConstructError> {
        let n = self.power(s - 1).expect("block fits because t does");
        let count = if hi >= lo { (hi - lo + 1) * n } else { 0 };
        if count.checked_mul(s).is_none_or(|cells| cells > MAX_CELLS) {
            return Err(ConstructError::TooLarge {
                rows: count as u64,
                cols: s as u64,
            });
        }
        let mut entries = Vec::with_capacity(count * s);
        let mut prefix = vec![0u16; s - 1];
        for last in lo..=hi {
            for _ in 0..n {
                entries.extend_from_slice(&prefix);
                entries.push(last as u16);
                odometer_step(&mut prefix, self.colors);
            }
        }
        Ok(ColorMatrix::from_parts_unchecked(
            self.colors,
            count,
            s,
            entries,
        ))
    }

    fn block_below(
        &mut self,
        s: usize,
        t: usize,
        a: usize,
        u: usize,
        r: usize,
        n: usize,
    ) -> Result<Built, ConstructError> {
        let b = b_matrix(self.c, u, s - 1)?;
        if self.c == 2 {
            debug_assert_eq!(a, 0);
            if s == 3 {
                // Small enough to list: one-counts (0,1,2) and (1,2,3).
                let m = match t {
                    3 => ColorMatrix::from_rows(2, 3, &[[0, 0, 0], [0, 0, 1], [0, 1, 1]])?,
                    4 => {
                        ColorMatrix::from_rows(2, 3, &[[0, 0, 0], [0, 0, 1], [0, 1, 1], [1, 1, 1]])?
                    }
                    _ => unreachable!("c=2, s=3 reaches this branch only for t in {{3, 4}}"),
                };
                return Ok((m, vec![Step::BinaryBlock]));
            }
            // Lower-triangular ones (diagonal included), then its complement.
            let v = s - 1;
            let mut tri = vec![0u16; v * v];
            for i in 0..v {
                for j in 0..=i {
                    tri[i * v + j] = 1;
                }
            }
            let tri = ColorMatrix::from_parts_unchecked(2, v, v, tri);
            let tri_c = tri.complement().map_err(ConstructError::from_matrix)?;
            let m = ColorMatrix::vstack(
                2,
                s,
                &[&b.with_constant_column(0), &tri_c.with_constant_column(1)],
            );
            return Ok((m, vec![Step::BinaryBlock]));
        }

        let (inner, mut steps) = self.degree_matrix(s - 1, n - r)?;
        let m = if a == 0 {
            ColorMatrix::vstack(
                self.colors,
                s,
                &[&inner.with_constant_column(0), &b.with_constant_column(2)],
            )
        } else {
            let d = self.last_entry_block(s, 2, a + 1)?;
            ColorMatrix::vstack(
                self.colors,
                s,
                &[
                    &d,
                    &b.with_constant_column(0),
                    &inner.with_constant_column(1),
                ],
            )
        };
        steps.insert(0, Step::BlockBelow);
        Ok((m, steps))
    }

    fn block_above(
        &mut self,
        s: usize,
        a: usize,
        u: usize,
        r: usize,
    ) -> Result<Built, ConstructError> {
        debug_assert!(self.c >= 3);
        let (inner, mut steps) = self.degree_matrix(s - 1, u + r)?;
        let b_comp = b_matrix(self.c, r, s - 1)?
            .complement()
            .map_err(ConstructError::from_matrix)?;
        let d = self.last_entry_block(s, 2, a + 1)?;
        let top = (self.c - 1) as u16;
        let m = ColorMatrix::vstack(
            self.colors,
            s,
            &[
                &d,
                &b_comp.with_constant_column(0),
                &inner.with_constant_column(top),
            ],
        );
        steps.insert(0, Step::BlockAbove);
        Ok((m, steps))
    }

    fn block_between(&mut self, s: usize, a: usize, u: usize) -> Result<Built, ConstructError> {
        debug_assert!(self.c >= 3);
        let (inner, mut steps) = self.degree_matrix(s - 1, u)?;
        let d = self.last_entry_block(s, 2, a + 2)?;
        let m = ColorMatrix::vstack(self.colors, s, &[&d, &inner.with_constant_column(0)]);
        steps.insert(0, Step::BlockBetween);
        Ok((m, steps))
    }
}

/// Lexicographically smallest `(x_0, ..., x_{parts-1})` summing to `total` that is not in `used`.
fn first_unused_composition(total: usize, parts: usize, used: &HashSet<Vec<usize>>) -> Vec<usize> {
    let mut x = vec![0usize; parts];
    x[parts - 1] = total;
    loop {
        if !used.contains(&x) {
            return x;
        }
        // Successor: bump the rightmost slot (before the last) with a nonzero tail.
        let mut tail = x[parts - 1];
        let mut i = parts - 1;
        loop {
            assert!(
                i > 0,
                "ran out of compositions of {total} into {parts} parts"
            );
            i -= 1;
            if tail > 0 {
                break;
            }
            tail += x[i];
        }
        x[i] += 1;
        for slot in &mut x[i + 1..parts - 1] {
            *slot = 0;
        }
        x[parts - 1] = tail - 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::autocheck::{distinct_degree_certificate, is_identity_coloring};

    fn m(c: u64, rows: &[&[u16]]) -> ColorMatrix {
        let cols = rows.first().map_or(0, |r| r.len());
        ColorMatrix::from_rows(c, cols, rows).unwrap()
    }

    fn distinct_col_degrees(a: &ColorMatrix) -> bool {
        let mut d = a.column_degrees();
        d.sort();
        d.windows(2).all(|w| w[0] != w[1])
    }

    #[test]
    fn square_examples() {
        assert_eq!(square_identity(3, 2).unwrap(), m(3, &[&[0, 1], &[0, 2]]));
        assert_eq!(
            square_identity(2, 4).unwrap(),
            m(
                2,
                &[&[0, 1, 0, 1], &[0, 1, 0, 0], &[0, 0, 1, 1], &[0, 0, 0, 1]]
            )
        );
        assert!(matches!(
            square_identity(2, 3),
            Err(ConstructError::ExcludedSquare { c: 2, s: 3 })
        ));
        assert!(square_identity(5, 1).is_err());
        for c in 2..=4 {
            for s in 2..=12 {
                if let Ok(a) = square_identity(c, s) {
                    assert!(is_identity_coloring(&a).unwrap(), "c={c} s={s}");
                }
            }
        }
    }

    #[test]
    fn degree_matrix_examples() {
        assert_eq!(
            distinct_degree_matrix(2, 2, 3).unwrap(),
            m(2, &[&[0, 1], &[0, 0], &[1, 1]])
        );
        assert_eq!(
            distinct_degree_matrix(3, 1, 3).unwrap(),
            m(3, &[&[0], &[1], &[2]])
        );
        let a = distinct_degree_matrix(2, 5, 4).unwrap();
        assert_eq!((a.rows(), a.cols()), (4, 5));
        assert!(a.has_distinct_rows() && distinct_col_degrees(&a));
        assert!(matches!(
            distinct_degree_matrix(2, 5, 3),
            Err(ConstructError::RowsOutOfRange { lo: 4, .. })
        ));
        assert!(distinct_degree_matrix(2, 5, 29).is_err());
    }

    #[test]
    fn every_branch_is_exercised() {
        let mut seen = HashSet::new();
        for c in 2..=5u64 {
            for s in 1..=6usize {
                let r = decide::r_of(c, s as u64) as usize;
                let p = count::pow_usize(c, s as u64).unwrap();
                for t in r..=(p - r).min(700) {
                    let (a, trace) = distinct_degree_matrix_traced(c, s, t).unwrap();
                    assert!(a.has_distinct_rows(), "c={c} s={s} t={t}");
                    assert!(distinct_col_degrees(&a), "c={c} s={s} t={t}");
                    seen.extend(trace.steps().iter().copied());
                }
            }
        }
        for step in [
            Step::SingleColumn,
            Step::TwoColumns,
            Step::DegreeComplement,
            Step::FreshColumn,
            Step::BinaryBlock,
            Step::BlockBelow,
            Step::BlockAbove,
            Step::BlockBetween,
        ] {
            assert!(seen.contains(&step), "{step:?} never taken");
        }
    }

    #[test]
    fn identity_examples() {
        let (a, tr) = identity_coloring(2, 1, 2).unwrap();
        assert_eq!(a, m(2, &[&[0], &[1]]));
        assert_eq!(tr.labels(), vec!["s1-base"]);

        let (a, tr) = identity_coloring(3, 26, 3).unwrap();
        assert_eq!((a.rows(), a.cols()), (3, 26));
        assert_eq!(tr.steps()[0], Step::Transpose);
        assert!(is_identity_coloring(&a).unwrap());

        let (a, _) = identity_coloring(2, 2, 3).unwrap();
        assert!(distinct_degree_certificate(&a));
        let (one, _) = identity_coloring(2, 2, 1).unwrap();
        let other = one.complement().unwrap();
        assert_eq!((other.rows(), other.cols()), (3, 2));
        assert!(is_identity_coloring(&other).unwrap());

        assert!(matches!(
            identity_coloring(2, 2, 2),
            Err(ConstructError::Infeasible { .. })
        ));
    }

    #[test]
    fn deterministic_replay() {
        let a = identity_coloring(3, 7, 40).unwrap();
        let b = identity_coloring(3, 7, 40).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn size_guard() {
        assert!(matches!(
            identity_coloring(3, 79, 3u64.pow(30)),
            Err(ConstructError::TooLarge { .. })
        ));
    }

    #[test]
    fn composition_order() {
        let none = HashSet::new();
        assert_eq!(first_unused_composition(2, 3, &none), vec![0, 0, 2]);
        let used: HashSet<Vec<usize>> = [vec![0, 0, 2], vec![0, 1, 1], vec![0, 2, 0]]
            .into_iter()
            .collect();
        assert_eq!(first_unused_composition(2, 3, &used), vec![1, 0, 1]);
    }
}
