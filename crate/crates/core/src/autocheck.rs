//! Deciding whether a coloring matrix has only the trivial automorphism.
//!
//! An automorphism of the colored `K_{s,t}` either preserves the two parts,
//! in which case it is a pair of permutations with `A[ρ(i)][τ(j)] = A[i][j]`,
//! or (only when `A` is square) swaps them, sending row vertex `i` to column
//! vertex `α(i)` and column vertex `j` to row vertex `β(j)` with
//! `A[β(j)][α(i)] = A[i][j]`.
//!
//! Two cheap facts settle most inputs: equal rows always give a row
//! transposition, and distinct rows plus distinct column degrees (with the
//! square-case multiset condition) rule out every non-trivial automorphism.
//! Everything else goes to [`find_nontrivial_automorphism`], which enumerates
//! degree-preserving column permutations and refines row prefixes as it goes.
//! With distinct rows the row permutation is forced by the column permutation,
//! so rows are matched rather than searched.

use std::collections::HashMap;

use serde::Serialize;
use thiserror::Error;

use crate::matrix::{ColorMatrix, DegreeTuple};

/// Exhaustive search refuses inputs whose degree classes allow more column
/// permutations than this.
pub const SEARCH_LIMIT: u128 = 1_000_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AutoError {
    #[error("inconclusive: {candidates} candidate column permutations exceed the search limit of {SEARCH_LIMIT}")]
    TooLarge { candidates: u128 },
}

/// A color-preserving automorphism of the colored `K_{s,t}` encoded by a matrix.
///
/// Without `part_swap`, row `i` maps to row `row_perm[i]` and column `j` to
/// column `col_perm[j]`. With `part_swap`, row `i` maps to column `row_perm[i]`
/// and column `j` to row `col_perm[j]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Automorphism {
    pub row_perm: Vec<usize>,
    pub col_perm: Vec<usize>,
    pub part_swap: bool,
}

impl Automorphism {
    pub fn is_identity(&self) -> bool {
        !self.part_swap
            && self.row_perm.iter().enumerate().all(|(i, &p)| i == p)
            && self.col_perm.iter().enumerate().all(|(j, &p)| j == p)
    }

    /// Checks mechanically that applying the map reproduces `a`.
    pub fn preserves(&self, a: &ColorMatrix) -> bool {
        let (t, s) = (a.rows(), a.cols());
        if self.part_swap {
            if t != s || !is_permutation(&self.row_perm, t) || !is_permutation(&self.col_perm, s) {
                return false;
            }
            (0..t).all(|i| (0..s).all(|j| a.get(self.col_perm[j], self.row_perm[i]) == a.get(i, j)))
        } else {
            if !is_permutation(&self.row_perm, t) || !is_permutation(&self.col_perm, s) {
                return false;
            }
            (0..t).all(|i| (0..s).all(|j| a.get(self.row_perm[i], self.col_perm[j]) == a.get(i, j)))
        }
    }

    /// Turns an automorphism of `aᵀ` into the same automorphism of `a`.
    fn untransposed(self) -> Automorphism {
        Automorphism {
            row_perm: self.col_perm,
            col_perm: self.row_perm,
            part_swap: self.part_swap,
        }
    }
}

fn is_permutation(p: &[usize], n: usize) -> bool {
    if p.len() != n {
        return false;
    }
    let mut seen = vec![false; n];
    p.iter()
        .all(|&x| x < n && !std::mem::replace(&mut seen[x], true))
}

fn identity(n: usize) -> Vec<usize> {
    (0..n).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "result", rename_all = "snake_case")]
pub enum AutoReport {
    TrivialOnly,
    Witness(Automorphism),
}

impl AutoReport {
    pub fn trivial_only(&self) -> bool {
        matches!(self, AutoReport::TrivialOnly)
    }

    pub fn witness(&self) -> Option<&Automorphism> {
        match self {
            AutoReport::TrivialOnly => None,
            AutoReport::Witness(w) => Some(w),
        }
    }
}

pub fn has_duplicate_rows(a: &ColorMatrix) -> bool {
    !a.has_distinct_rows()
}

fn pairwise_distinct(degrees: &[DegreeTuple]) -> bool {
    let mut sorted: Vec<&DegreeTuple> = degrees.iter().collect();
    sorted.sort_unstable();
    sorted.windows(2).all(|w| w[0] != w[1])
}

fn sorted_degrees(mut d: Vec<DegreeTuple>) -> Vec<DegreeTuple> {
    d.sort_unstable();
    d
}

/// Sufficient condition for an identity coloring: distinct rows, pairwise
/// distinct column degrees, and for square matrices a column-degree multiset
/// that differs from the row-degree multiset. `false` is inconclusive.
pub fn distinct_degree_certificate(a: &ColorMatrix) -> bool {
    if !a.has_distinct_rows() {
        return false;
    }
    let cols = a.column_degrees();
    if !pairwise_distinct(&cols) {
        return false;
    }
    if a.is_square() {
        return sorted_degrees(cols) != sorted_degrees(a.row_degrees());
    }
    true
}

/// Product of factorials of the class sizes of equal degree tuples, saturating.
fn class_permutation_count(degrees: &[DegreeTuple]) -> u128 {
    let mut sizes: HashMap<&DegreeTuple, u32> = HashMap::new();
    for d in degrees {
        *sizes.entry(d).or_default() += 1;
    }
    let mut total: u128 = 1;
    for &n in sizes.values() {
        for k in 2..=u128::from(n) {
            total = total.saturating_mul(k);
        }
    }
    total
}

/// Complete search for a non-trivial automorphism of `a`.
///
/// Part-preserving automorphisms are tried first, then (if `allow_part_swap`
/// and `a` is square) part-swapping ones. Column permutations are enumerated
/// in lexicographic order and the first witness found is returned.
pub fn find_nontrivial_automorphism(
    a: &ColorMatrix,
    allow_part_swap: bool,
) -> Result<AutoReport, AutoError> {
    if let Some((i, j)) = a.first_duplicate_rows() {
        let mut row_perm = identity(a.rows());
        row_perm.swap(i, j);
        return Ok(AutoReport::Witness(Automorphism {
            row_perm,
            col_perm: identity(a.cols()),
            part_swap: false,
        }));
    }

    let col_degrees = a.column_degrees();
    let candidates = class_permutation_count(&col_degrees);
    if candidates > SEARCH_LIMIT {
        return Err(AutoError::TooLarge { candidates });
    }
    if let Some((sigma, rho)) = ColumnSearch::new(a, a, &col_degrees, &col_degrees, true).run() {
        return Ok(AutoReport::Witness(Automorphism {
            row_perm: rho,
            col_perm: invert(&sigma),
            part_swap: false,
        }));
    }

    if allow_part_swap && a.is_square() {
        let row_degrees = a.row_degrees();
        if sorted_degrees(row_degrees.clone()) == sorted_degrees(col_degrees.clone()) {
            let at = a.transpose();
            if let Some((sigma, rho)) =
                ColumnSearch::new(&at, a, &row_degrees, &col_degrees, false).run()
            {
                return Ok(AutoReport::Witness(Automorphism {
                    row_perm: invert(&sigma),
                    col_perm: rho,
                    part_swap: true,
                }));
            }
        }
    }
    Ok(AutoReport::TrivialOnly)
}

fn invert(p: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; p.len()];
    for (i, &x) in p.iter().enumerate() {
        inv[x] = i;
    }
    inv
}

/// Full decision with a witness reported in the orientation of `a`.
pub fn analyze(a: &ColorMatrix) -> Result<AutoReport, AutoError> {
    if has_duplicate_rows(a) {
        return find_nontrivial_automorphism(a, false);
    }
    let at = a.transpose();
    if has_duplicate_rows(&at) {
        return Ok(lift(find_nontrivial_automorphism(&at, false)?));
    }
    if distinct_degree_certificate(a) || distinct_degree_certificate(&at) {
        return Ok(AutoReport::TrivialOnly);
    }
    let square = a.is_square();
    // Search whichever orientation has fewer degree-preserving column permutations.
    let direct = class_permutation_count(&a.column_degrees());
    let flipped = class_permutation_count(&at.column_degrees());
    if flipped < direct {
        Ok(lift(find_nontrivial_automorphism(&at, square)?))
    } else {
        find_nontrivial_automorphism(a, square)
    }
}

fn lift(report: AutoReport) -> AutoReport {
    match report {
        AutoReport::TrivialOnly => AutoReport::TrivialOnly,
        AutoReport::Witness(w) => AutoReport::Witness(w.untransposed()),
    }
}

/// True iff the only color-preserving automorphism is the identity
/// (part swaps included when `a` is square).
pub fn is_identity_coloring(a: &ColorMatrix) -> Result<bool, AutoError> {
    Ok(analyze(a)?.trivial_only())
}

/// Backtracking over column permutations `σ` such that the matrix whose
/// column `k` is `source` column `σ(k)` has the same row set as `target`.
///
/// Rows of `target` are interned level by level as prefix ids; a partial `σ`
/// survives only if the multiset of candidate row prefixes equals that of
/// `target`, which the final level turns into exact row-set equality.
struct ColumnSearch<'a> {
    source: &'a ColorMatrix,
    choices: Vec<Vec<usize>>,
    levels: Vec<HashMap<(u32, u16), u32>>,
    counts: Vec<Vec<u32>>,
    row_of_final_id: Vec<usize>,
    skip_identity: bool,
}

impl<'a> ColumnSearch<'a> {
    fn new(
        source: &'a ColorMatrix,
        target: &ColorMatrix,
        source_degrees: &[DegreeTuple],
        target_degrees: &[DegreeTuple],
        skip_identity: bool,
    ) -> Self {
        let choices = target_degrees
            .iter()
            .map(|d| {
                source_degrees
                    .iter()
                    .enumerate()
                    .filter(|(_, e)| *e == d)
                    .map(|(j, _)| j)
                    .collect()
            })
            .collect();

        let rows = target.rows();
        let mut ids = vec![0u32; rows];
        let mut levels = Vec::with_capacity(target.cols());
        let mut counts = Vec::with_capacity(target.cols());
        for k in 0..target.cols() {
            let mut table: HashMap<(u32, u16), u32> = HashMap::new();
            let mut tally: Vec<u32> = Vec::new();
            for (i, id) in ids.iter_mut().enumerate() {
                let key = (*id, target.get(i, k));
                let next = table.len() as u32;
                let new_id = *table.entry(key).or_insert(next);
                if new_id as usize == tally.len() {
                    tally.push(0);
                }
                tally[new_id as usize] += 1;
                *id = new_id;
            }
            levels.push(table);
            counts.push(tally);
        }
        let mut row_of_final_id = vec![0; rows];
        for (i, &id) in ids.iter().enumerate() {
            row_of_final_id[id as usize] = i;
        }

        ColumnSearch {
            source,
            choices,
            levels,
            counts,
            row_of_final_id,
            skip_identity,
        }
    }

    /// Returns `(σ, ρ)` where candidate row `i` equals `target` row `ρ(i)`.
    fn run(&self) -> Option<(Vec<usize>, Vec<usize>)> {
        let cols = self.choices.len();
        let rows = self.source.rows();
        if cols == 0 {
            return if self.skip_identity {
                None
            } else {
                Some((Vec::new(), identity(rows)))
            };
        }
        let mut used = vec![false; cols];
        let mut sigma = Vec::with_capacity(cols);
        let mut scratch = Vec::new();
        let ids = vec![0u32; rows];
        self.descend(&ids, &mut used, &mut sigma, &mut scratch)
            .map(|final_ids| {
                let rho = final_ids
                    .iter()
                    .map(|&id| self.row_of_final_id[id as usize])
                    .collect();
                (sigma, rho)
            })
    }

    fn descend(
        &self,
        ids: &[u32],
        used: &mut [bool],
        sigma: &mut Vec<usize>,
        scratch: &mut Vec<u32>,
    ) -> Option<Vec<u32>> {
        let k = sigma.len();
        let table = &self.levels[k];
        let want = &self.counts[k];
        for &col in &self.choices[k] {
            if used[col] {
                continue;
            }
            scratch.clear();
            scratch.resize(want.len(), 0);
            let mut next = Vec::with_capacity(ids.len());
            let mut ok = true;
            for (i, &id) in ids.iter().enumerate() {
                match table.get(&(id, self.source.get(i, col))) {
                    Some(&nid) => {
                        scratch[nid as usize] += 1;
                        if scratch[nid as usize] > want[nid as usize] {
                            ok = false;
                            break;
                        }
                        next.push(nid);
                    }
                    None => {
                        ok = false;
                        break;
                    }
                }
            }
            if !ok {
                continue;
            }
            sigma.push(col);
            if k + 1 == self.choices.len() {
                let trivial = self.skip_identity && sigma.iter().enumerate().all(|(j, &c)| j == c);
                if !trivial {
                    return Some(next);
                }
            } else {
                used[col] = true;
                if let Some(found) = self.descend(&next, used, sigma, scratch) {
                    return Some(found);
                }
                used[col] = false;
            }
            sigma.pop();
        }
        None
    }
}
